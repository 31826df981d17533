//! Tensor products of truncated dgas with Koszul signs, and the opposite
//! algebra. The tensor components are built pairwise: Z/f tensor Z/g is
//! Z/gcd(f,g), with gcd 1 pairs dropped.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::matrix::Mat;
use crate::quotient::QuotientStructure;
use crate::realize::{verify_dga, TruncatedDga};

/// Per degree, the kept coordinate pairs (left degree, left index, right
/// index) in lexicographic order, aligned with the tensor's coordinates.
pub type TensorPairs = Vec<Vec<(usize, usize, usize)>>;

fn pair_factor(f: &BigInt, g: &BigInt) -> BigInt {
    // Z/f tensor Z/g = Z/gcd(f,g) with the convention Z/0 = Z.
    if f.is_zero() {
        g.clone()
    } else if g.is_zero() {
        f.clone()
    } else {
        f.gcd(g)
    }
}

/// The tensor product dga through degree n, with the pair table tying its
/// coordinates back to the factors. Signs follow the Koszul convention:
/// d(a@b) = da@b + (-1)^|a| a@db and (a@b)(a'@b') = (-1)^(|b||a'|) aa'@bb'.
pub fn tensor_dga(a: &TruncatedDga, b: &TruncatedDga, n: usize) -> (TruncatedDga, TensorPairs) {
    assert_eq!(a.dom, b.dom, "tensor over mixed ground domains");
    assert!(n <= a.validity && n <= b.validity, "tensor exceeds validity of a factor");
    let dom = a.dom;

    let mut pairs: TensorPairs = Vec::with_capacity(n + 1);
    let mut index: Vec<BTreeMap<(usize, usize, usize), usize>> = Vec::with_capacity(n + 1);
    let mut comps: Vec<QuotientStructure> = Vec::with_capacity(n + 1);
    let mut labels: Vec<Vec<String>> = Vec::with_capacity(n + 1);
    for d in 0..=n {
        let mut here = Vec::new();
        let mut factors = Vec::new();
        let mut labs = Vec::new();
        for p in 0..=d {
            let q = d - p;
            for i in 0..a.rank_at(p) {
                for j in 0..b.rank_at(q) {
                    let f = pair_factor(&a.comps[p].factors[i], &b.comps[q].factors[j]);
                    if f.is_one() {
                        continue;
                    }
                    here.push((p, i, j));
                    factors.push(f);
                    labs.push(format!("{}⊗{}", a.labels[p][i], b.labels[q][j]));
                }
            }
        }
        index.push(here.iter().cloned().enumerate().map(|(k, t)| (t, k)).collect());
        pairs.push(here);
        comps.push(QuotientStructure::diagonal(factors, dom));
        labels.push(labs);
    }

    let mut diffs: Vec<Mat> = Vec::with_capacity(n + 1);
    diffs.push(Mat::zero(0, comps[0].rank()));
    for d in 1..=n {
        let mut m = Mat::zero(comps[d - 1].rank(), comps[d].rank());
        for (col, &(p, i, j)) in pairs[d].iter().enumerate() {
            let q = d - p;
            if p >= 1 {
                let da = a.diffs[p].col(i);
                for (i2, c) in da.iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    if let Some(&row) = index[d - 1].get(&(p - 1, i2, j)) {
                        let v = m.get(row, col) + c;
                        m.set(row, col, v);
                    }
                }
            }
            if q >= 1 {
                let db = b.diffs[q].col(j);
                let sign = if p % 2 == 0 { BigInt::one() } else { -BigInt::one() };
                for (j2, c) in db.iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    if let Some(&row) = index[d - 1].get(&(p, i, j2)) {
                        let v = m.get(row, col) + c * &sign;
                        m.set(row, col, v);
                    }
                }
            }
        }
        // Canonical columns.
        for col in 0..m.cols {
            let mut v = m.col(col);
            comps[d - 1].reduce_coords(&mut v);
            for (row, c) in v.into_iter().enumerate() {
                m.set(row, col, c);
            }
        }
        diffs.push(m);
    }

    let mut mu = BTreeMap::new();
    for d1 in 0..=n {
        for d2 in 0..=(n - d1) {
            let (r1, r2) = (comps[d1].rank(), comps[d2].rank());
            let mut table = Vec::with_capacity(r1 * r2);
            for &(p1, i1, j1) in &pairs[d1] {
                let q1 = d1 - p1;
                for &(p2, i2, j2) in &pairs[d2] {
                    let q2 = d2 - p2;
                    let mut out = vec![BigInt::zero(); comps[d1 + d2].rank()];
                    let aa = a.mul_basis(p1, p2, i1, i2);
                    let bb = b.mul_basis(q1, q2, j1, j2);
                    let sign = if (q1 * p2) % 2 == 0 { BigInt::one() } else { -BigInt::one() };
                    for (i3, ca) in aa.iter().enumerate() {
                        if ca.is_zero() {
                            continue;
                        }
                        for (j3, cb) in bb.iter().enumerate() {
                            if cb.is_zero() {
                                continue;
                            }
                            if let Some(&k) = index[d1 + d2].get(&(p1 + p2, i3, j3)) {
                                out[k] += ca * cb * &sign;
                            }
                        }
                    }
                    comps[d1 + d2].reduce_coords(&mut out);
                    table.push(out);
                }
            }
            mu.insert((d1, d2), table);
        }
    }

    let mut unit = vec![BigInt::zero(); comps[0].rank()];
    for (i, ua) in a.unit.iter().enumerate() {
        if ua.is_zero() {
            continue;
        }
        for (j, ub) in b.unit.iter().enumerate() {
            if ub.is_zero() {
                continue;
            }
            if let Some(&k) = index[0].get(&(0, i, j)) {
                unit[k] += ua * ub;
            }
        }
    }
    comps[0].reduce_coords(&mut unit);

    let t = TruncatedDga { dom, validity: n, comps, diffs, mu, unit, labels };
    (t, pairs)
}

/// The opposite dga: same underlying complex, multiplication reversed with
/// the Koszul sign mu_op(x, y) = (-1)^(|x||y|) mu(y, x).
pub fn opposite(a: &TruncatedDga) -> TruncatedDga {
    let mut mu = BTreeMap::new();
    for (&(d1, d2), _) in &a.mu {
        let (r1, r2) = (a.rank_at(d1), a.rank_at(d2));
        let mut table = Vec::with_capacity(r1 * r2);
        let sign = if (d1 * d2) % 2 == 0 { BigInt::one() } else { -BigInt::one() };
        for i in 0..r1 {
            for j in 0..r2 {
                let mut v: Vec<BigInt> =
                    a.mul_basis(d2, d1, j, i).iter().map(|c| c * &sign).collect();
                a.comps[d1 + d2].reduce_coords(&mut v);
                table.push(v);
            }
        }
        mu.insert((d1, d2), table);
    }
    TruncatedDga {
        dom: a.dom,
        validity: a.validity,
        comps: a.comps.clone(),
        diffs: a.diffs.clone(),
        mu,
        unit: a.unit.clone(),
        labels: a.labels.clone(),
    }
}

/// Verification wrapper used by tests and callers that build tensors of
/// hand-made dgas.
pub fn tensor_dga_checked(
    a: &TruncatedDga,
    b: &TruncatedDga,
    n: usize,
) -> crate::error::Result<(TruncatedDga, TensorPairs)> {
    let (t, pairs) = tensor_dga(a, b, n);
    verify_dga(&t)?;
    Ok((t, pairs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::limits::Limits;
    use crate::parse::parse;
    use crate::realize::realize;

    fn get(text: &str, n: usize) -> TruncatedDga {
        realize(&parse(text).unwrap(), n, &Limits::default()).unwrap().dga
    }

    #[test]
    fn exterior_tensor_exterior() {
        let a = get("dga \"A\" over F2 { gen e:1; rel e^2; }", 4);
        let b = get("dga \"B\" over F2 { gen f:1; rel f^2; }", 4);
        let (t, pairs) = tensor_dga_checked(&a, &b, 4).unwrap();
        let ranks: Vec<usize> = (0..=4).map(|d| t.rank_at(d)).collect();
        assert_eq!(ranks, vec![1, 2, 1, 0, 0]);
        assert_eq!(pairs[1], vec![(0, 0, 0), (1, 0, 0)]);
        // Zero differentials: homology equals the algebra.
        assert_eq!(t.certified_homology(1).group.rank(), 2);
        assert_eq!(t.certified_homology(2).group.rank(), 1);
    }

    #[test]
    fn koszul_sign_in_products() {
        // Over Z with e, f exterior degree 1: (1@f)(e@1) = -(e@f) while
        // (e@1)(1@f) = e@f.
        let a = get("dga \"A\" over Z { gen e:1; rel e^2; }", 3);
        let b = get("dga \"B\" over Z { gen f:1; rel f^2; }", 3);
        let (t, pairs) = tensor_dga_checked(&a, &b, 3).unwrap();
        let i_e1 = pairs[1].iter().position(|&p| p == (1, 0, 0)).unwrap();
        let i_1f = pairs[1].iter().position(|&p| p == (0, 0, 0)).unwrap();
        let k_ef = pairs[2].iter().position(|&p| p == (1, 0, 0)).unwrap();
        let forward = t.mul_basis(1, 1, i_e1, i_1f);
        let backward = t.mul_basis(1, 1, i_1f, i_e1);
        assert_eq!(forward[k_ef], BigInt::one());
        assert_eq!(backward[k_ef], BigInt::from(-1));
    }

    #[test]
    fn tensor_with_scalar_quotient_reduces_mod_p() {
        // C = Z[e; de=2]/(e^4) tensor F_2 (as the dga Z/(2) in degree 0):
        // every component becomes Z/2 and every differential vanishes.
        let c = get("dga \"C\" over Z { gen e:1; diff e = 2; rel e^4; }", 5);
        let f2 = get("dga \"F2\" over Z { rel 2; }", 5);
        let (t, _) = tensor_dga_checked(&c, &f2, 5).unwrap();
        let ranks: Vec<usize> = (0..=5).map(|d| t.rank_at(d)).collect();
        assert_eq!(ranks, vec![1, 1, 1, 1, 0, 0]);
        for d in 0..=3usize {
            assert_eq!(t.comps[d].factors, vec![BigInt::from(2)]);
            let dm = &t.diffs[d];
            assert!(dm.is_zero(), "differential at degree {d} should vanish mod 2");
        }
        for d in 0..=3usize {
            assert_eq!(t.homology(d).group.factors, vec![BigInt::from(2)]);
        }
    }

    #[test]
    fn differential_signs_on_the_tensor() {
        // A = B = Z[e; de=2]/(e^2): d(e@e) = 2(1@e) - 2(e@1).
        let a = get("dga \"A\" over Z { gen e:1; diff e = 2; rel e^2; }", 3);
        let (t, pairs) = tensor_dga_checked(&a, &a, 3).unwrap();
        let col = pairs[2].iter().position(|&p| p == (1, 0, 0)).unwrap();
        let r_1e = pairs[1].iter().position(|&p| p == (0, 0, 0)).unwrap();
        let r_e1 = pairs[1].iter().position(|&p| p == (1, 0, 0)).unwrap();
        let d = &t.diffs[2];
        assert_eq!(*d.get(r_1e, col), BigInt::from(2));
        assert_eq!(*d.get(r_e1, col), BigInt::from(-2));
    }

    #[test]
    fn opposite_involution_and_signs() {
        let p = parse(
            "dga \"T3\" over Z { gen e:1; gen f:3; diff e = 2; diff f = e^2; }",
        )
        .unwrap();
        let a = realize(&p, 5, &Limits::default()).unwrap().dga;
        let op = opposite(&a);
        verify_dga(&op).unwrap();
        // Double opposite returns the original tables.
        let opop = opposite(&op);
        for (k, table) in &a.mu {
            assert_eq!(&opop.mu[k], table, "mu mismatch at {k:?}");
        }
        // Odd-degree squares flip sign; for ef vs fe the sign is (-1)^3.
        let e = {
            let mut v = vec![BigInt::zero(); a.rank_at(1)];
            v[0] = BigInt::one();
            v
        };
        let f = {
            let mut v = vec![BigInt::zero(); a.rank_at(3)];
            v[0] = BigInt::one();
            v
        };
        let ef_fwd = a.mul_at(1, 3, &e, &f);
        let fe_fwd = a.mul_at(3, 1, &f, &e);
        let ef_op = op.mul_at(1, 3, &e, &f);
        let neg_fe: Vec<BigInt> = fe_fwd.iter().map(|c| -c.clone()).collect();
        assert_eq!(ef_op, neg_fe);
        assert_ne!(ef_op, ef_fwd);
    }
}
