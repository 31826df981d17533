//! Bounded chain complexes of finitely generated modules with a
//! degree-lowering differential, and homology with certified generators:
//! each homology class carries a canonical cycle representative and can be
//! re-expressed from any representing cycle.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{DgaError, Result};
use crate::matrix::{column_echelon, kernel_basis, Echelon, Mat};
use crate::quotient::{quotient_structure, QuotientStructure};
use crate::scalar::ScalarDomain;

/// Components live at degrees lo, lo+1, ...; everything outside the window
/// is zero. `diffs[i]` maps the component at degree lo+i to the one at
/// degree lo+i-1 (a matrix with 0 rows at the bottom edge).
#[derive(Clone, Debug)]
pub struct ChainComplex {
    pub dom: ScalarDomain,
    pub lo: i64,
    pub comps: Vec<QuotientStructure>,
    pub diffs: Vec<Mat>,
}

impl ChainComplex {
    pub fn new(dom: ScalarDomain, lo: i64, comps: Vec<QuotientStructure>, diffs: Vec<Mat>) -> Self {
        assert_eq!(comps.len(), diffs.len(), "one differential per component");
        for (i, d) in diffs.iter().enumerate() {
            assert_eq!(d.cols, comps[i].rank(), "differential domain mismatch at index {i}");
            let target = if i == 0 { 0 } else { comps[i - 1].rank() };
            assert_eq!(d.rows, target, "differential target mismatch at index {i}");
        }
        ChainComplex { dom, lo, comps, diffs }
    }

    pub fn hi(&self) -> i64 {
        self.lo + self.comps.len() as i64 - 1
    }

    fn index(&self, deg: i64) -> Option<usize> {
        if deg < self.lo || deg > self.hi() {
            None
        } else {
            Some((deg - self.lo) as usize)
        }
    }

    pub fn comp_at(&self, deg: i64) -> Option<&QuotientStructure> {
        self.index(deg).map(|i| &self.comps[i])
    }

    pub fn rank_at(&self, deg: i64) -> usize {
        self.comp_at(deg).map_or(0, |c| c.rank())
    }

    /// Differential matrix from degree `deg` to `deg - 1`; zero-shaped when
    /// either side is out of the window.
    pub fn diff_at(&self, deg: i64) -> Mat {
        match self.index(deg) {
            None => Mat::zero(self.rank_at(deg - 1), 0),
            Some(i) => {
                if deg - 1 < self.lo {
                    Mat::zero(0, self.comps[i].rank())
                } else {
                    self.diffs[i].clone()
                }
            }
        }
    }

    /// Relation lattice of the component at `deg` as a diagonal matrix
    /// (empty when out of window).
    pub fn rel_at(&self, deg: i64) -> Mat {
        match self.comp_at(deg) {
            None => Mat::zero(0, 0),
            Some(c) => c.rel_diag(),
        }
    }

    /// Checks that the differentials are well defined on torsion coordinates
    /// and compose to zero modulo the target relation lattice.
    pub fn verify(&self) -> Result<()> {
        for deg in self.lo..=self.hi() {
            let d = self.diff_at(deg);
            let below = deg - 1;
            if self.rank_at(below) > 0 {
                let rel_ech = column_echelon(&self.rel_at(below), self.dom);
                if let Some(c) = self.comp_at(deg) {
                    for (j, f) in c.factors.iter().enumerate() {
                        if f.is_zero() {
                            continue;
                        }
                        let mut col = d.col(j);
                        for v in &mut col {
                            *v = self.dom.reduce(&(std::mem::take(v) * f));
                        }
                        if !rel_ech.contains(&col, self.dom) {
                            return Err(DgaError::Inconsistent(format!(
                                "differential not well defined on torsion coordinate {j} at degree {deg}"
                            )));
                        }
                    }
                }
            }
            if deg - 2 >= self.lo && self.rank_at(deg - 2) > 0 {
                let dd = self.diff_at(deg - 1).mul(&d, self.dom);
                let rel_ech = column_echelon(&self.rel_at(deg - 2), self.dom);
                for j in 0..dd.cols {
                    if !rel_ech.contains(&dd.col(j), self.dom) {
                        return Err(DgaError::Inconsistent(format!(
                            "d^2 nonzero at degree {deg}, column {j}"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// Homology at one degree, with explicit cycle and boundary structure.
    pub fn homology_at(&self, deg: i64) -> HomologySpot {
        let k = self.rank_at(deg);
        let dom = self.dom;
        // Cycles: v with d(v) = 0 in the (possibly torsion) target, i.e.
        // d·v lands in the target's relation lattice. Solve jointly and keep
        // the v-block of the kernel.
        let d = self.diff_at(deg);
        let rel_below = self.rel_at(deg - 1);
        let joint = d.hstack(&rel_below);
        let ker = kernel_basis(&joint, dom);
        let mut vpart = Mat::zero(k, ker.cols);
        for i in 0..k {
            for j in 0..ker.cols {
                vpart.set(i, j, ker.get(i, j).clone());
            }
        }
        let cycle_ech = column_echelon(&vpart, dom);

        // Boundaries: the factor lattice of this degree plus the image of
        // the differential from above, expressed in cycle coordinates.
        let rel_here = self.rel_at(deg);
        let d_above = self.diff_at(deg + 1);
        let bounds_ambient = rel_here.hstack(&d_above);
        let bound_ech = column_echelon(&bounds_ambient, dom);
        let mut bound_cols: Vec<Vec<BigInt>> = Vec::new();
        for j in 0..bounds_ambient.cols {
            let col = bounds_ambient.col(j);
            if col.iter().all(|v| v.is_zero()) {
                continue;
            }
            let coords = cycle_ech
                .express(&col, dom)
                .expect("boundary or torsion relation must be a cycle");
            bound_cols.push(coords);
        }
        let bounds_in_cycles = Mat::from_columns(cycle_ech.rank(), &bound_cols);
        let group = quotient_structure(cycle_ech.rank(), &bounds_in_cycles, dom);

        let mut reps = Vec::with_capacity(group.rank());
        for t in 0..group.rank() {
            let mut coords = vec![BigInt::zero(); group.rank()];
            coords[t] = BigInt::one();
            let cyc = group.rep(&coords);
            let ambient = cycle_ech.basis.mul_vec(&cyc, dom);
            reps.push(bound_ech.canonical_residue(&ambient, dom));
        }

        HomologySpot { dom, deg, group, cycle_ech, bound_ech, reps }
    }

    pub fn homology_group(&self, deg: i64) -> QuotientStructure {
        self.homology_at(deg).group
    }
}

/// Homology at one degree: the abstract group, the cycle lattice inside the
/// degree component, the boundary lattice, and a canonical ambient
/// representative for each generator.
#[derive(Clone, Debug)]
pub struct HomologySpot {
    pub dom: ScalarDomain,
    pub deg: i64,
    pub group: QuotientStructure,
    pub cycle_ech: Echelon,
    pub bound_ech: Echelon,
    /// Canonical ambient representative of each quotient coordinate.
    pub reps: Vec<Vec<BigInt>>,
}

impl HomologySpot {
    /// Class of an ambient chain; None when the chain is not a cycle.
    pub fn express(&self, ambient: &[BigInt]) -> Option<Vec<BigInt>> {
        let coords = self.cycle_ech.express(ambient, self.dom)?;
        Some(self.group.project(&coords))
    }

    /// Canonical ambient representative of a class.
    pub fn rep_of(&self, class: &[BigInt]) -> Vec<BigInt> {
        let cyc = self.group.rep(class);
        let ambient = self.cycle_ech.basis.mul_vec(&cyc, self.dom);
        self.bound_ech.canonical_residue(&ambient, self.dom)
    }

    pub fn is_boundary(&self, ambient: &[BigInt]) -> bool {
        self.bound_ech.contains(ambient, self.dom)
    }
}
