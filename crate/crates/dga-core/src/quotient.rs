//! Finitely generated quotients Z^n / (relation lattice), or F_p^n / span,
//! presented by invariant factors together with explicit projection and
//! lift maps between ambient and quotient coordinates.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{DgaError, Result};
use crate::matrix::{column_echelon, smith_normal_form, Mat};
use crate::scalar::ScalarDomain;

/// A quotient of a free module by a relation lattice. `factors[i]` is the
/// annihilator of the i-th quotient coordinate: d > 1 for a torsion summand
/// Z/d, 0 for a free summand (a full F_p line when the domain is a field).
/// Unit factors are dropped. Coordinates keep the order the reduction
/// produces (torsion ascending, then free); direct sums concatenate without
/// renormalizing, so coordinates of a sum stay separable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientStructure {
    pub dom: ScalarDomain,
    pub ambient: usize,
    pub factors: Vec<BigInt>,
    /// rank() x ambient: ambient coordinates to quotient coordinates.
    pub proj: Mat,
    /// ambient x rank(): representative of each quotient coordinate.
    pub lift: Mat,
}

/// Reduces the presentation ngens / column-span(rels). The projection is
/// exact on classes: proj(v) = proj(w) in canonical form iff v - w lies in
/// the relation lattice, and proj∘lift is the identity modulo factors.
pub fn quotient_structure(ngens: usize, rels: &Mat, dom: ScalarDomain) -> QuotientStructure {
    assert_eq!(rels.rows, ngens, "relation matrix must have one row per generator");
    let snf = smith_normal_form(rels, dom);
    let n = ngens.min(rels.cols);
    let mut kept: Vec<usize> = Vec::new();
    let mut factors: Vec<BigInt> = Vec::new();
    for i in 0..ngens {
        let d = if i < n { snf.d.get(i, i).clone() } else { BigInt::zero() };
        if d.is_one() {
            continue;
        }
        kept.push(i);
        factors.push(d);
    }
    let mut proj = Mat::zero(kept.len(), ngens);
    for (k, &i) in kept.iter().enumerate() {
        for j in 0..ngens {
            proj.set(k, j, snf.u.get(i, j).clone());
        }
    }
    let mut lift = Mat::zero(ngens, kept.len());
    for (k, &i) in kept.iter().enumerate() {
        for j in 0..ngens {
            lift.set(j, k, snf.uinv.get(j, i).clone());
        }
    }
    // Canonicalize representatives modulo the relation lattice so that equal
    // classes get byte-equal lift output downstream.
    if kept.len() > 0 && rels.cols > 0 {
        let ech = column_echelon(rels, dom);
        for k in 0..kept.len() {
            let canon = ech.canonical_residue(&lift.col(k), dom);
            for j in 0..ngens {
                lift.set(j, k, canon[j].clone());
            }
        }
    }
    QuotientStructure { dom, ambient: ngens, factors, proj, lift }
}

impl QuotientStructure {
    /// Quotient with no relations: every generator survives freely.
    pub fn free(ngens: usize, dom: ScalarDomain) -> Self {
        quotient_structure(ngens, &Mat::zero(ngens, 0), dom)
    }

    /// Quotient presented directly in diagonal coordinates: ambient rank
    /// equals quotient rank, projection and lift are identities, and the
    /// given factors (any order, units not allowed) annihilate coordinates.
    pub fn diagonal(factors: Vec<BigInt>, dom: ScalarDomain) -> Self {
        assert!(factors.iter().all(|f| !f.is_one()), "unit factor in diagonal quotient");
        let n = factors.len();
        QuotientStructure {
            dom,
            ambient: n,
            factors,
            proj: Mat::identity(n),
            lift: Mat::identity(n),
        }
    }

    pub fn trivial(dom: ScalarDomain) -> Self {
        quotient_structure(0, &Mat::zero(0, 0), dom)
    }

    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.factors.is_empty()
    }

    /// Canonical form of quotient coordinates: torsion entries into
    /// [0, factor), free entries reduced only by the ground domain.
    pub fn reduce_coords(&self, coords: &mut [BigInt]) {
        assert_eq!(coords.len(), self.rank(), "coordinate length mismatch");
        for (c, f) in coords.iter_mut().zip(&self.factors) {
            if !f.is_zero() {
                *c = c.mod_floor(f);
            }
            self.dom.reduce_in_place(c);
        }
    }

    /// Class of an ambient vector, in canonical coordinates.
    pub fn project(&self, v: &[BigInt]) -> Vec<BigInt> {
        let mut c = self.proj.mul_vec(v, self.dom);
        self.reduce_coords(&mut c);
        c
    }

    /// Ambient representative of a class given by quotient coordinates.
    pub fn rep(&self, coords: &[BigInt]) -> Vec<BigInt> {
        self.lift.mul_vec(coords, self.dom)
    }

    pub fn is_zero_class(&self, coords: &[BigInt]) -> bool {
        let mut c = coords.to_vec();
        self.reduce_coords(&mut c);
        c.iter().all(|v| v.is_zero())
    }

    /// Diagonal relation matrix in quotient coordinates (free summands get a
    /// zero column). Feeding this to further reductions realizes iterated
    /// subquotients.
    pub fn rel_diag(&self) -> Mat {
        let n = self.rank();
        let mut m = Mat::zero(n, n);
        for i in 0..n {
            m.set(i, i, self.factors[i].clone());
        }
        m
    }

    /// Concatenates two quotients coordinate-wise. Factors are NOT merged
    /// into invariant-factor form: a summand Z/2 + Z/3 keeps both
    /// coordinates so block structure survives.
    pub fn direct_sum(&self, other: &QuotientStructure) -> QuotientStructure {
        assert_eq!(self.dom, other.dom, "direct sum over mixed domains");
        let ambient = self.ambient + other.ambient;
        let rank = self.rank() + other.rank();
        let mut proj = Mat::zero(rank, ambient);
        let mut lift = Mat::zero(ambient, rank);
        for i in 0..self.rank() {
            for j in 0..self.ambient {
                proj.set(i, j, self.proj.get(i, j).clone());
            }
        }
        for i in 0..other.rank() {
            for j in 0..other.ambient {
                proj.set(self.rank() + i, self.ambient + j, other.proj.get(i, j).clone());
            }
        }
        for i in 0..self.ambient {
            for j in 0..self.rank() {
                lift.set(i, j, self.lift.get(i, j).clone());
            }
        }
        for i in 0..other.ambient {
            for j in 0..other.rank() {
                lift.set(self.ambient + i, self.rank() + j, other.lift.get(i, j).clone());
            }
        }
        let mut factors = self.factors.clone();
        factors.extend(other.factors.iter().cloned());
        QuotientStructure { dom: self.dom, ambient, factors, proj, lift }
    }

    /// Invariant factors in canonical ascending form (units dropped, torsion
    /// then zeros), independent of coordinate packaging. Use this to compare
    /// groups computed along different routes.
    pub fn canonical_factors(&self) -> Vec<BigInt> {
        let snf = smith_normal_form(&self.rel_diag(), self.dom);
        let mut out: Vec<BigInt> = snf.diag().into_iter().filter(|d| !d.is_one()).collect();
        let frees = self.rank().saturating_sub(snf.diag().len());
        out.extend(std::iter::repeat(BigInt::zero()).take(frees));
        out
    }

    /// Number of elements; None when infinite.
    pub fn order(&self) -> Option<BigInt> {
        let mut n = BigInt::one();
        for f in &self.factors {
            if f.is_zero() {
                match self.dom {
                    ScalarDomain::Int => return None,
                    ScalarDomain::Fp(p) => n *= BigInt::from(p),
                }
            } else {
                n *= f.abs();
            }
        }
        Some(n)
    }

    /// All canonical coordinate tuples, in lexicographic order. Errors with
    /// InfiniteSearch on a free Z summand and Resource when the count
    /// exceeds `cap`.
    pub fn enumerate(&self, cap: u64) -> Result<Vec<Vec<BigInt>>> {
        let mut radii: Vec<u64> = Vec::with_capacity(self.rank());
        for f in &self.factors {
            if f.is_zero() {
                match self.dom {
                    ScalarDomain::Int => {
                        return Err(DgaError::InfiniteSearch(
                            "cannot enumerate a quotient with a free summand over Z".into(),
                        ))
                    }
                    ScalarDomain::Fp(p) => radii.push(p),
                }
            } else {
                let f64v: u64 = f
                    .abs()
                    .try_into()
                    .map_err(|_| DgaError::Resource("torsion factor exceeds u64".into()))?;
                radii.push(f64v);
            }
        }
        let mut total: u128 = 1;
        for r in &radii {
            total = total.saturating_mul(*r as u128);
            if total > cap as u128 {
                return Err(DgaError::Resource(format!(
                    "enumeration of {total}+ elements exceeds cap {cap}"
                )));
            }
        }
        let mut out = Vec::with_capacity(total as usize);
        let mut cur = vec![0u64; radii.len()];
        loop {
            out.push(cur.iter().map(|&x| BigInt::from(x)).collect());
            let mut k = radii.len();
            loop {
                if k == 0 {
                    return Ok(out);
                }
                k -= 1;
                cur[k] += 1;
                if cur[k] < radii[k] {
                    break;
                }
                cur[k] = 0;
            }
        }
    }

    /// Human-readable shape, e.g. "Z/2 + Z" over Z or "F2^2" over F_2.
    pub fn display(&self) -> String {
        if self.is_trivial() {
            return "0".to_string();
        }
        match self.dom {
            ScalarDomain::Int => self
                .factors
                .iter()
                .map(|f| if f.is_zero() { "Z".to_string() } else { format!("Z/{f}") })
                .collect::<Vec<_>>()
                .join(" + "),
            ScalarDomain::Fp(p) => {
                if self.rank() == 1 {
                    format!("F{p}")
                } else {
                    format!("F{p}^{}", self.rank())
                }
            }
        }
    }
}
