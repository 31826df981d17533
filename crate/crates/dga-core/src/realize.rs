//! Degreewise realization of a presentation as a truncated dga: monomial
//! bases, two-sided ideal spans, induced differential and multiplication
//! tables, plus the verifier shared by every constructor that produces a
//! truncated dga by hand.

use std::collections::BTreeMap;
use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::complex::{ChainComplex, HomologySpot};
use crate::error::{DgaError, Result};
use crate::limits::Limits;
use crate::matrix::{column_echelon, Mat};
use crate::poly::{monomials_of_degree, NcPoly, Word};
use crate::presentation::DgaPresentation;
use crate::quotient::{quotient_structure, QuotientStructure};
use crate::scalar::ScalarDomain;

/// A dga known through degree `validity`: one quotient module per degree,
/// a degree-lowering differential, full multiplication tables for all
/// products that stay inside the window, the unit, and a printable label
/// per basis coordinate.
#[derive(Clone, Debug)]
pub struct TruncatedDga {
    pub dom: ScalarDomain,
    pub validity: usize,
    pub comps: Vec<QuotientStructure>,
    pub diffs: Vec<Mat>,
    /// mu[(a,b)][i * rank_b + j] = coordinates of (basis i of degree a) *
    /// (basis j of degree b) in degree a+b, canonical form.
    pub mu: BTreeMap<(usize, usize), Vec<Vec<BigInt>>>,
    /// Unit coordinates in degree 0.
    pub unit: Vec<BigInt>,
    pub labels: Vec<Vec<String>>,
}

impl TruncatedDga {
    pub fn rank_at(&self, d: usize) -> usize {
        if d > self.validity {
            0
        } else {
            self.comps[d].rank()
        }
    }

    pub fn mul_basis(&self, a: usize, b: usize, i: usize, j: usize) -> &[BigInt] {
        let rb = self.rank_at(b);
        &self.mu[&(a, b)][i * rb + j]
    }

    /// Product of coordinate vectors, canonical in degree a+b.
    pub fn mul_at(&self, a: usize, b: usize, x: &[BigInt], y: &[BigInt]) -> Vec<BigInt> {
        assert!(a + b <= self.validity, "product escapes the validity window");
        let mut out = vec![BigInt::zero(); self.rank_at(a + b)];
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                for (k, m) in self.mul_basis(a, b, i, j).iter().enumerate() {
                    out[k] += xi * yj * m;
                }
            }
        }
        self.comps[a + b].reduce_coords(&mut out);
        out
    }

    /// Differential applied to coordinates at degree n, canonical at n-1.
    pub fn d_apply(&self, n: usize, x: &[BigInt]) -> Vec<BigInt> {
        if n == 0 || n > self.validity {
            return Vec::new();
        }
        let mut out = self.diffs[n].mul_vec(x, self.dom);
        self.comps[n - 1].reduce_coords(&mut out);
        out
    }

    /// k-fold power of a degree-a element; degree a*k must stay in window.
    pub fn power(&self, a: usize, x: &[BigInt], k: usize) -> Vec<BigInt> {
        assert!(k >= 1);
        let mut acc = x.to_vec();
        for i in 1..k {
            acc = self.mul_at(a * i, a, &acc, x);
        }
        acc
    }

    pub fn as_complex(&self) -> ChainComplex {
        ChainComplex::new(self.dom, 0, self.comps.clone(), self.diffs.clone())
    }

    /// Homology of the truncated complex at degree d. Certified only for
    /// d < validity: the top degree misses boundaries from above.
    pub fn homology(&self, d: usize) -> HomologySpot {
        self.as_complex().homology_at(d as i64)
    }

    pub fn certified_homology(&self, d: usize) -> HomologySpot {
        assert!(
            d + 1 <= self.validity,
            "homology at degree {d} needs validity at least {}",
            d + 1
        );
        self.homology(d)
    }
}

/// Full structural verification: complex axioms, unit, torsion
/// well-definedness of the product, Leibniz on all basis pairs, and
/// associativity on all basis triples inside the window.
pub fn verify_dga(t: &TruncatedDga) -> Result<()> {
    let n = t.validity;
    if t.comps.len() != n + 1 || t.diffs.len() != n + 1 || t.labels.len() != n + 1 {
        return Err(DgaError::Inconsistent("component table length mismatch".into()));
    }
    for d in 0..=n {
        if t.labels[d].len() != t.rank_at(d) {
            return Err(DgaError::Inconsistent(format!("label count mismatch at degree {d}")));
        }
    }
    t.as_complex().verify()?;

    if t.unit.len() != t.rank_at(0) {
        return Err(DgaError::Inconsistent("unit length mismatch".into()));
    }
    for d in 0..=n {
        for i in 0..t.rank_at(d) {
            let mut e = vec![BigInt::zero(); t.rank_at(d)];
            e[i] = BigInt::one();
            t.comps[d].reduce_coords(&mut e);
            let left = t.mul_at(0, d, &t.unit, &e);
            let right = t.mul_at(d, 0, &e, &t.unit);
            if left != e || right != e {
                return Err(DgaError::Inconsistent(format!(
                    "unit fails on basis {i} of degree {d}"
                )));
            }
        }
    }

    // The product must kill torsion coordinates: f_i * e_i = 0 forces
    // f_i * (e_i x) = 0 for every x.
    for (&(a, b), table) in &t.mu {
        let (ra, rb) = (t.rank_at(a), t.rank_at(b));
        if table.len() != ra * rb {
            return Err(DgaError::Inconsistent(format!("mu table shape mismatch at ({a},{b})")));
        }
        for i in 0..ra {
            for j in 0..rb {
                let prod = &table[i * rb + j];
                for (side, f) in
                    [(0, &t.comps[a].factors[i]), (1, &t.comps[b].factors[j])]
                {
                    if f.is_zero() {
                        continue;
                    }
                    let mut scaled: Vec<BigInt> = prod.iter().map(|c| c * *&f).collect();
                    t.comps[a + b].reduce_coords(&mut scaled);
                    if scaled.iter().any(|c| !c.is_zero()) {
                        return Err(DgaError::Inconsistent(format!(
                            "product not defined on torsion coordinate (side {side}) at ({a},{b},{i},{j})"
                        )));
                    }
                }
            }
        }
    }

    // Leibniz on basis pairs.
    for a in 0..=n {
        for b in 0..=(n - a) {
            if a + b == 0 {
                continue;
            }
            for i in 0..t.rank_at(a) {
                for j in 0..t.rank_at(b) {
                    let mut ea = vec![BigInt::zero(); t.rank_at(a)];
                    ea[i] = BigInt::one();
                    let mut eb = vec![BigInt::zero(); t.rank_at(b)];
                    eb[j] = BigInt::one();
                    let lhs = t.d_apply(a + b, t.mul_basis(a, b, i, j));
                    let mut rhs = vec![BigInt::zero(); t.rank_at(a + b - 1)];
                    if a >= 1 {
                        let da = t.d_apply(a, &ea);
                        for (k, v) in t.mul_at(a - 1, b, &da, &eb).into_iter().enumerate() {
                            rhs[k] += v;
                        }
                    }
                    if b >= 1 {
                        let db = t.d_apply(b, &eb);
                        let s = if a % 2 == 0 { BigInt::one() } else { -BigInt::one() };
                        for (k, v) in t.mul_at(a, b - 1, &ea, &db).into_iter().enumerate() {
                            rhs[k] += v * &s;
                        }
                    }
                    t.comps[a + b - 1].reduce_coords(&mut rhs);
                    if lhs != rhs {
                        return Err(DgaError::Inconsistent(format!(
                            "Leibniz fails on basis pair ({a},{b},{i},{j})"
                        )));
                    }
                }
            }
        }
    }

    // Associativity on basis triples.
    for a in 0..=n {
        for b in 0..=(n - a) {
            for c in 0..=(n - a - b) {
                for i in 0..t.rank_at(a) {
                    for j in 0..t.rank_at(b) {
                        for k in 0..t.rank_at(c) {
                            let mut ec = vec![BigInt::zero(); t.rank_at(c)];
                            ec[k] = BigInt::one();
                            let mut ea = vec![BigInt::zero(); t.rank_at(a)];
                            ea[i] = BigInt::one();
                            let ab = t.mul_basis(a, b, i, j).to_vec();
                            let bc = t.mul_basis(b, c, j, k).to_vec();
                            let left = t.mul_at(a + b, c, &ab, &ec);
                            let right = t.mul_at(a, b + c, &ea, &bc);
                            if left != right {
                                return Err(DgaError::Inconsistent(format!(
                                    "associativity fails on ({a},{b},{c},{i},{j},{k})"
                                )));
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(())
}

/// A realized presentation: the truncated dga together with the monomial
/// bases that tie coordinates back to polynomials.
#[derive(Clone, Debug)]
pub struct RealizedDga {
    pub pres: DgaPresentation,
    pub dga: TruncatedDga,
    pub monos: Vec<Vec<Word>>,
    pub mono_index: Vec<BTreeMap<Word, usize>>,
}

impl RealizedDga {
    /// Canonical class coordinates of a homogeneous polynomial; Ok(None)
    /// for zero. Degrees above the window are a validity error.
    pub fn express_poly(&self, p: &NcPoly) -> Result<Option<(usize, Vec<BigInt>)>> {
        let degs = self.pres.degs();
        match p.homogeneous_degree(&degs) {
            None => Err(DgaError::Usage("polynomial is not homogeneous".into())),
            Some(None) => Ok(None),
            Some(Some(d)) => {
                if d > self.dga.validity {
                    return Err(DgaError::Validity(format!(
                        "degree {d} exceeds validity {}",
                        self.dga.validity
                    )));
                }
                let v = p
                    .to_vec(&self.mono_index[d], self.monos[d].len())
                    .expect("full monomial basis");
                Ok(Some((d, self.dga.comps[d].project(&v))))
            }
        }
    }

    /// Polynomial representative of class coordinates at a degree.
    pub fn lift_poly(&self, d: usize, coords: &[BigInt]) -> NcPoly {
        let ambient = self.dga.comps[d].rep(coords);
        let mut p = NcPoly::from_vec(&self.monos[d], &ambient);
        p.reduce(self.dga.dom);
        p
    }

    /// Degree and class of one generator; None when it lies above the
    /// window.
    pub fn gen_class(&self, g: usize) -> Option<(usize, Vec<BigInt>)> {
        let d = self.pres.gens[g].degree;
        if d > self.dga.validity {
            return None;
        }
        let v = NcPoly::gen(g)
            .to_vec(&self.mono_index[d], self.monos[d].len())
            .expect("generator monomial present");
        Some((d, self.dga.comps[d].project(&v)))
    }
}

/// Columns spanning the two-sided relation ideal in one degree: every
/// product m * r * m' with m, m' monomials (empty words included).
fn ideal_span(
    pres: &DgaPresentation,
    d: usize,
    monos: &[Vec<Word>],
    mono_index: &[BTreeMap<Word, usize>],
) -> Mat {
    let degs = pres.degs();
    let k = monos[d].len();
    let mut cols: BTreeSet<Vec<BigInt>> = BTreeSet::new();
    for r in &pres.rels {
        let dr = match r.homogeneous_degree(&degs) {
            Some(Some(dr)) => dr,
            _ => continue,
        };
        if dr > d {
            continue;
        }
        for a in 0..=(d - dr) {
            let b = d - dr - a;
            for m in &monos[a] {
                let left = NcPoly::monomial(m.clone(), BigInt::one());
                let lr = left.mul(r);
                for m2 in &monos[b] {
                    let right = NcPoly::monomial(m2.clone(), BigInt::one());
                    let mut p = lr.mul(&right);
                    p.reduce(pres.ground);
                    if p.is_zero() {
                        continue;
                    }
                    let v = p.to_vec(&mono_index[d], k).expect("full monomial basis");
                    cols.insert(v);
                }
            }
        }
    }
    Mat::from_columns(k, &cols.into_iter().collect::<Vec<_>>())
}

/// Realizes a presentation degreewise through degree n and verifies every
/// dga axiom on the result.
pub fn realize(pres: &DgaPresentation, n: usize, limits: &Limits) -> Result<RealizedDga> {
    pres.check_structure()?;
    let dom = pres.ground;
    let degs = pres.degs();
    let names = pres.names();

    let monos: Vec<Vec<Word>> = (0..=n)
        .map(|d| monomials_of_degree(&degs, d, limits.monomial_cap))
        .collect::<Result<_>>()?;
    let mono_index: Vec<BTreeMap<Word, usize>> = monos
        .iter()
        .map(|ms| ms.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect())
        .collect();

    let ideal: Vec<Mat> = (0..=n).map(|d| ideal_span(pres, d, &monos, &mono_index)).collect();

    // The induced differential exists iff d(r) stays in the ideal for each
    // relation; products m*r*m' then follow by Leibniz.
    for r in &pres.rels {
        let dr = match r.homogeneous_degree(&degs) {
            Some(Some(dr)) => dr,
            _ => continue,
        };
        if dr < 1 || dr > n {
            continue;
        }
        let mut drp = pres.d_poly(r);
        drp.reduce(dom);
        if drp.is_zero() {
            continue;
        }
        let v = drp
            .to_vec(&mono_index[dr - 1], monos[dr - 1].len())
            .expect("full monomial basis");
        let ech = column_echelon(&ideal[dr - 1], dom);
        let res = ech.canonical_residue(&v, dom);
        if res.iter().any(|c| !c.is_zero()) {
            let witness = NcPoly::from_vec(&monos[dr - 1], &res).render(&names, &degs);
            return Err(DgaError::Inconsistent(format!(
                "d({}) escapes the relation ideal in degree {}: witness {}",
                r.render(&names, &degs),
                dr - 1,
                witness
            )));
        }
    }

    let comps: Vec<QuotientStructure> =
        (0..=n).map(|d| quotient_structure(monos[d].len(), &ideal[d], dom)).collect();

    let mut diffs: Vec<Mat> = Vec::with_capacity(n + 1);
    diffs.push(Mat::zero(0, comps[0].rank()));
    for d in 1..=n {
        let kprev = monos[d - 1].len();
        let mut dmono = Mat::zero(kprev, monos[d].len());
        for (j, w) in monos[d].iter().enumerate() {
            let mut dp = pres.d_poly(&NcPoly::monomial(w.clone(), BigInt::one()));
            dp.reduce(dom);
            let v = dp.to_vec(&mono_index[d - 1], kprev).expect("full monomial basis");
            for (i, c) in v.into_iter().enumerate() {
                dmono.set(i, j, c);
            }
        }
        let mut induced = Mat::zero(comps[d - 1].rank(), comps[d].rank());
        for j in 0..comps[d].rank() {
            let ambient = dmono.mul_vec(&comps[d].lift.col(j), dom);
            let col = comps[d - 1].project(&ambient);
            for (i, c) in col.into_iter().enumerate() {
                induced.set(i, j, c);
            }
        }
        diffs.push(induced);
    }

    // Lift polynomials once per degree; products induce mu.
    let lift_polys: Vec<Vec<NcPoly>> = (0..=n)
        .map(|d| {
            (0..comps[d].rank())
                .map(|k| {
                    let mut p = NcPoly::from_vec(&monos[d], &comps[d].lift.col(k));
                    p.reduce(dom);
                    p
                })
                .collect()
        })
        .collect();

    let mut mu = BTreeMap::new();
    for a in 0..=n {
        for b in 0..=(n - a) {
            let (ra, rb) = (comps[a].rank(), comps[b].rank());
            let mut table = Vec::with_capacity(ra * rb);
            for i in 0..ra {
                for j in 0..rb {
                    let mut p = lift_polys[a][i].mul(&lift_polys[b][j]);
                    p.reduce(dom);
                    let v = p
                        .to_vec(&mono_index[a + b], monos[a + b].len())
                        .expect("full monomial basis");
                    table.push(comps[a + b].project(&v));
                }
            }
            mu.insert((a, b), table);
        }
    }

    let unit_vec = NcPoly::one()
        .to_vec(&mono_index[0], monos[0].len())
        .expect("empty word present");
    let unit = comps[0].project(&unit_vec);

    let labels: Vec<Vec<String>> = lift_polys
        .iter()
        .map(|ps| ps.iter().map(|p| p.render(&names, &degs)).collect())
        .collect();

    let dga = TruncatedDga { dom, validity: n, comps, diffs, mu, unit, labels };
    verify_dga(&dga)?;
    Ok(RealizedDga { pres: pres.clone(), dga, monos, mono_index })
}

#[derive(Clone, Debug)]
pub struct ValidationFailure {
    pub what: String,
    pub witness: String,
}

#[derive(Clone, Debug)]
pub struct ValidationReport {
    pub name: String,
    pub failures: Vec<ValidationFailure>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Checks a presentation without realizing it fully: structural axioms,
/// d^2 = 0 on generators (modulo the ideal where the window allows), and
/// d(relation) inside the ideal degree by degree up to n. Failures are
/// report entries, not errors.
pub fn validate(pres: &DgaPresentation, n: usize, limits: &Limits) -> Result<ValidationReport> {
    let mut failures = Vec::new();
    if let Err(e) = pres.check_structure() {
        failures.push(ValidationFailure { what: "structure".into(), witness: e.to_string() });
        return Ok(ValidationReport { name: pres.name.clone(), failures });
    }
    let dom = pres.ground;
    let degs = pres.degs();
    let names = pres.names();
    let monos: Vec<Vec<Word>> = (0..=n)
        .map(|d| monomials_of_degree(&degs, d, limits.monomial_cap))
        .collect::<Result<_>>()?;
    let mono_index: Vec<BTreeMap<Word, usize>> = monos
        .iter()
        .map(|ms| ms.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect())
        .collect();

    let residue_in_degree = |p: &NcPoly, d: usize| -> Option<String> {
        let mut p = p.clone();
        p.reduce(dom);
        if p.is_zero() {
            return None;
        }
        if d > n {
            return Some(p.render(&names, &degs));
        }
        let ideal = ideal_span(pres, d, &monos, &mono_index);
        let ech = column_echelon(&ideal, dom);
        let v = p.to_vec(&mono_index[d], monos[d].len()).expect("full monomial basis");
        let res = ech.canonical_residue(&v, dom);
        if res.iter().all(|c| c.is_zero()) {
            None
        } else {
            Some(NcPoly::from_vec(&monos[d], &res).render(&names, &degs))
        }
    };

    for (g, decl) in pres.gens.iter().enumerate() {
        let dd = pres.d_poly(&pres.diffs[g]);
        if decl.degree >= 2 {
            if let Some(w) = residue_in_degree(&dd, decl.degree - 2) {
                failures.push(ValidationFailure {
                    what: format!("d^2({}) is nonzero", decl.name),
                    witness: w,
                });
            }
        }
    }
    for r in &pres.rels {
        let dr = match r.homogeneous_degree(&degs) {
            Some(Some(dr)) => dr,
            _ => continue,
        };
        if dr < 1 || dr > n {
            continue;
        }
        let drp = pres.d_poly(r);
        if let Some(w) = residue_in_degree(&drp, dr - 1) {
            failures.push(ValidationFailure {
                what: format!("d({}) escapes the ideal in degree {}", r.render(&names, &degs), dr - 1),
                witness: w,
            });
        }
    }
    Ok(ValidationReport { name: pres.name.clone(), failures })
}
