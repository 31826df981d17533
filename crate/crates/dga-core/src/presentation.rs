//! Finite dga presentations: graded generators, their differentials, and
//! two-sided relations, with structural validation and the Leibniz
//! extension of the differential to arbitrary polynomials.

use num_traits::One;

use crate::error::{DgaError, Result};
use crate::poly::{word_degree, NcPoly};
use crate::scalar::ScalarDomain;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenDecl {
    pub name: String,
    pub degree: usize,
    /// Optional stage annotation, used when serializing cell attachments.
    pub stage: Option<usize>,
}

/// A finitely presented dga over Z or F_p. Differentials are indexed
/// parallel to `gens` (zero when absent from the source text).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DgaPresentation {
    pub name: String,
    pub ground: ScalarDomain,
    pub gens: Vec<GenDecl>,
    pub diffs: Vec<NcPoly>,
    pub rels: Vec<NcPoly>,
}

impl DgaPresentation {
    pub fn new(name: &str, ground: ScalarDomain) -> Self {
        DgaPresentation {
            name: name.to_string(),
            ground,
            gens: Vec::new(),
            diffs: Vec::new(),
            rels: Vec::new(),
        }
    }

    pub fn add_gen(&mut self, name: &str, degree: usize) -> usize {
        self.gens.push(GenDecl { name: name.to_string(), degree, stage: None });
        self.diffs.push(NcPoly::zero());
        self.gens.len() - 1
    }

    pub fn set_diff(&mut self, g: usize, d: NcPoly) {
        self.diffs[g] = d;
    }

    pub fn add_rel(&mut self, r: NcPoly) {
        self.rels.push(r);
    }

    pub fn degs(&self) -> Vec<usize> {
        self.gens.iter().map(|g| g.degree).collect()
    }

    pub fn names(&self) -> Vec<String> {
        self.gens.iter().map(|g| g.name.clone()).collect()
    }

    pub fn gen_index(&self, name: &str) -> Option<usize> {
        self.gens.iter().position(|g| g.name == name)
    }

    /// Leibniz extension of the generator differentials to any polynomial:
    /// d(x1...xk) = sum over i of (-1)^(deg of the prefix) x1...d(xi)...xk.
    pub fn d_poly(&self, p: &NcPoly) -> NcPoly {
        let degs = self.degs();
        let mut out = NcPoly::zero();
        for (w, c) in &p.terms {
            for i in 0..w.len() {
                let dgi = &self.diffs[w[i]];
                if dgi.is_zero() {
                    continue;
                }
                let prefix_deg = word_degree(&w[..i], &degs);
                let sign = if prefix_deg % 2 == 0 { c.clone() } else { -c.clone() };
                let left = NcPoly::monomial(w[..i].to_vec(), sign);
                let right = NcPoly::monomial(w[i + 1..].to_vec(), num_bigint::BigInt::one());
                out = out.add(&left.mul(dgi).mul(&right));
            }
        }
        out.reduce(self.ground);
        out
    }

    /// Structural invariants: unique names, positive degrees, homogeneous
    /// differentials of degree exactly one less, homogeneous relations.
    pub fn check_structure(&self) -> Result<()> {
        self.ground.validate()?;
        let degs = self.degs();
        for (i, g) in self.gens.iter().enumerate() {
            if g.degree == 0 {
                return Err(DgaError::Usage(format!(
                    "generator {} must have positive degree",
                    g.name
                )));
            }
            for h in &self.gens[..i] {
                if h.name == g.name {
                    return Err(DgaError::Usage(format!("duplicate generator {}", g.name)));
                }
            }
        }
        for (i, d) in self.diffs.iter().enumerate() {
            match d.homogeneous_degree(&degs) {
                Some(None) => {}
                Some(Some(dd)) if dd + 1 == self.gens[i].degree => {}
                Some(Some(dd)) => {
                    return Err(DgaError::Usage(format!(
                        "differential degree mismatch for {}: got degree {}, need {}",
                        self.gens[i].name,
                        dd,
                        self.gens[i].degree - 1
                    )))
                }
                None => {
                    return Err(DgaError::Usage(format!(
                        "differential of {} is not homogeneous",
                        self.gens[i].name
                    )))
                }
            }
        }
        for (k, r) in self.rels.iter().enumerate() {
            if r.homogeneous_degree(&degs).is_none() {
                return Err(DgaError::Usage(format!("relation {k} is not homogeneous")));
            }
        }
        Ok(())
    }

    /// The same presentation as a dga over Z: an F_p ground becomes the
    /// scalar relation p. Realizations agree degreewise.
    pub fn as_z_presentation(&self) -> DgaPresentation {
        match self.ground {
            ScalarDomain::Int => self.clone(),
            ScalarDomain::Fp(p) => {
                let mut out = self.clone();
                out.ground = ScalarDomain::Int;
                out.rels.insert(0, NcPoly::scalar(num_bigint::BigInt::from(p)));
                out
            }
        }
    }

    /// Renders back to the presentation language; the result re-parses to a
    /// structurally equal presentation.
    pub fn pretty_print(&self) -> String {
        let names = self.names();
        let degs = self.degs();
        let mut out = format!("dga \"{}\" over {} {{\n", self.name, self.ground);
        for g in &self.gens {
            match g.stage {
                None => out.push_str(&format!("  gen {}:{};\n", g.name, g.degree)),
                Some(s) => out.push_str(&format!("  gen {}:{} @{};\n", g.name, g.degree, s)),
            }
        }
        for (i, d) in self.diffs.iter().enumerate() {
            if !d.is_zero() {
                out.push_str(&format!(
                    "  diff {} = {};\n",
                    self.gens[i].name,
                    d.render(&names, &degs)
                ));
            }
        }
        for r in &self.rels {
            out.push_str(&format!("  rel {};\n", r.render(&names, &degs)));
        }
        out.push_str("}\n");
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn c_p2() -> DgaPresentation {
        // Z[e; de=2]/(e^4)
        let mut p = DgaPresentation::new("C", ScalarDomain::Int);
        let e = p.add_gen("e", 1);
        p.set_diff(e, NcPoly::scalar(BigInt::from(2)));
        p.add_rel(NcPoly::monomial(vec![e; 4], BigInt::one()));
        p
    }

    #[test]
    fn leibniz_on_powers_of_an_odd_generator() {
        // With |e| = 1 and de = 2: d(e^n) = 2e^(n-1) for odd n, 0 for even.
        let p = c_p2();
        for n in 1..=6usize {
            let en = NcPoly::monomial(vec![0; n], BigInt::one());
            let d = p.d_poly(&en);
            if n % 2 == 1 {
                let expect = NcPoly::monomial(vec![0; n - 1], BigInt::from(2));
                assert_eq!(d, expect, "d(e^{n})");
            } else {
                assert!(d.is_zero(), "d(e^{n}) must telescope to zero");
            }
        }
    }

    #[test]
    fn leibniz_is_a_derivation() {
        // d(ab) = d(a)b + (-1)^|a| a d(b) on homogeneous inputs.
        let mut p = DgaPresentation::new("T", ScalarDomain::Int);
        let e = p.add_gen("e", 1);
        let f = p.add_gen("f", 3);
        p.set_diff(e, NcPoly::scalar(BigInt::from(2)));
        p.set_diff(f, NcPoly::monomial(vec![e, e], BigInt::one()));
        let degs = p.degs();
        let samples = vec![
            NcPoly::gen(e),
            NcPoly::gen(f),
            NcPoly::monomial(vec![e, f], BigInt::from(3)),
            NcPoly::monomial(vec![f, e, e], BigInt::one()),
        ];
        for a in &samples {
            for b in &samples {
                let lhs = p.d_poly(&a.mul(b));
                let da_b = p.d_poly(a).mul(b);
                let dega = a.homogeneous_degree(&degs).unwrap().unwrap_or(0);
                let sign = if dega % 2 == 0 { BigInt::one() } else { BigInt::from(-1) };
                let a_db = a.mul(&p.d_poly(b)).scale(&sign);
                assert_eq!(lhs, da_b.add(&a_db));
            }
        }
        // d^2 = 0 on both generators.
        assert!(p.d_poly(&p.diffs[e].clone()).is_zero());
        assert!(p.d_poly(&p.diffs[f].clone()).is_zero());
    }

    #[test]
    fn structure_checks() {
        let p = c_p2();
        p.check_structure().unwrap();

        let mut bad = DgaPresentation::new("X", ScalarDomain::Int);
        let e = bad.add_gen("e", 1);
        bad.set_diff(e, NcPoly::monomial(vec![e, e], BigInt::one()));
        assert!(matches!(bad.check_structure(), Err(DgaError::Usage(m)) if m.contains("degree mismatch")));

        let mut dup = DgaPresentation::new("X", ScalarDomain::Int);
        dup.add_gen("e", 1);
        dup.add_gen("e", 2);
        assert!(bad_msg(&dup).contains("duplicate"));

        let mut zero = DgaPresentation::new("X", ScalarDomain::Int);
        zero.add_gen("e", 0);
        assert!(bad_msg(&zero).contains("positive degree"));

        let mut mixed = DgaPresentation::new("X", ScalarDomain::Int);
        let e = mixed.add_gen("e", 1);
        mixed.add_rel(NcPoly::gen(e).add(&NcPoly::monomial(vec![e, e], BigInt::one())));
        assert!(bad_msg(&mixed).contains("homogeneous"));
    }

    fn bad_msg(p: &DgaPresentation) -> String {
        match p.check_structure() {
            Err(e) => e.to_string(),
            Ok(()) => panic!("expected a structural error"),
        }
    }

    #[test]
    fn pretty_print_shape() {
        let p = c_p2();
        let text = p.pretty_print();
        assert!(text.contains("dga \"C\" over Z {"));
        assert!(text.contains("gen e:1;"));
        assert!(text.contains("diff e = 2;"));
        assert!(text.contains("rel e^4;"));
    }
}
