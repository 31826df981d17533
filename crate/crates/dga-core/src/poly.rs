//! Noncommutative polynomials: words in positively graded generators with
//! exact coefficients, the canonical monomial order (degree, then length,
//! then lexicographic in declaration order), and per-degree monomial
//! enumeration under a hard cap.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{DgaError, Result};
use crate::scalar::ScalarDomain;

/// A word in generator indices; the empty word is the unit.
pub type Word = Vec<usize>;

pub fn word_degree(w: &[usize], degs: &[usize]) -> usize {
    w.iter().map(|&g| degs[g]).sum()
}

/// Canonical order: degree, then length, then lexicographic in declaration
/// order. Every basis, label, and structure-constant table uses it.
pub fn cmp_words(a: &[usize], b: &[usize], degs: &[usize]) -> Ordering {
    word_degree(a, degs)
        .cmp(&word_degree(b, degs))
        .then(a.len().cmp(&b.len()))
        .then(a.cmp(b))
}

/// All words of exact degree `d`, in canonical order. Generators all have
/// positive degree so the list is finite; exceeding `cap` is a resource
/// error.
pub fn monomials_of_degree(degs: &[usize], d: usize, cap: usize) -> Result<Vec<Word>> {
    for (g, &dg) in degs.iter().enumerate() {
        assert!(dg >= 1, "generator {g} must have positive degree");
    }
    let mut out: Vec<Word> = Vec::new();
    let mut stack: Vec<(Word, usize)> = vec![(Vec::new(), 0)];
    // Depth-first in lex order; sort by length afterwards (stable, so lex
    // order survives within each length).
    while let Some((word, deg)) = stack.pop() {
        if deg == d {
            out.push(word);
            if out.len() > cap {
                return Err(DgaError::Resource(format!(
                    "more than {cap} monomials in degree {d}"
                )));
            }
            continue;
        }
        for g in (0..degs.len()).rev() {
            if deg + degs[g] <= d {
                let mut w = word.clone();
                w.push(g);
                stack.push((w, deg + degs[g]));
            }
        }
    }
    out.sort_by(|a, b| a.len().cmp(&b.len()).then(a.cmp(b)));
    Ok(out)
}

/// Sign of reversing a word under the Koszul convention: the product of
/// (-1)^{|x||y|} over every transposed pair.
pub fn reverse_sign(w: &[usize], degs: &[usize]) -> i64 {
    let mut exp = 0usize;
    for i in 0..w.len() {
        for j in i + 1..w.len() {
            exp += degs[w[i]] * degs[w[j]];
        }
    }
    if exp % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Exact noncommutative polynomial: finitely many words with nonzero
/// coefficients. The map keyed directly by words gives deterministic
/// iteration; canonical degree order is applied where it matters (bases,
/// rendering).
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct NcPoly {
    pub terms: BTreeMap<Word, BigInt>,
}

impl NcPoly {
    pub fn zero() -> Self {
        NcPoly { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        NcPoly::monomial(Vec::new(), BigInt::one())
    }

    pub fn gen(g: usize) -> Self {
        NcPoly::monomial(vec![g], BigInt::one())
    }

    pub fn scalar(c: BigInt) -> Self {
        NcPoly::monomial(Vec::new(), c)
    }

    pub fn monomial(word: Word, coeff: BigInt) -> Self {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(word, coeff);
        }
        NcPoly { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, word: Word, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(word).or_insert_with(BigInt::zero);
        *entry += coeff;
        if entry.is_zero() {
            let key: Vec<Word> = self
                .terms
                .iter()
                .filter(|(_, c)| c.is_zero())
                .map(|(w, _)| w.clone())
                .collect();
            for k in key {
                self.terms.remove(&k);
            }
        }
    }

    pub fn add(&self, other: &NcPoly) -> NcPoly {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> NcPoly {
        NcPoly { terms: self.terms.iter().map(|(w, c)| (w.clone(), -c.clone())).collect() }
    }

    pub fn sub(&self, other: &NcPoly) -> NcPoly {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &BigInt) -> NcPoly {
        if c.is_zero() {
            return NcPoly::zero();
        }
        NcPoly { terms: self.terms.iter().map(|(w, k)| (w.clone(), k * c)).collect() }
    }

    pub fn mul(&self, other: &NcPoly) -> NcPoly {
        let mut out = NcPoly::zero();
        for (w1, c1) in &self.terms {
            for (w2, c2) in &other.terms {
                let mut w = w1.clone();
                w.extend_from_slice(w2);
                out.add_term(w, c1 * c2);
            }
        }
        out
    }

    pub fn reduce(&mut self, dom: ScalarDomain) {
        if !dom.is_field() {
            return;
        }
        let words: Vec<Word> = self.terms.keys().cloned().collect();
        for w in words {
            let c = self.terms.get_mut(&w).unwrap();
            dom.reduce_in_place(c);
            if c.is_zero() {
                self.terms.remove(&w);
            }
        }
    }

    /// Replaces each generator by its image and extends multiplicatively.
    /// Degree-preserving maps need no sign corrections.
    pub fn substitute(&self, images: &[NcPoly]) -> NcPoly {
        let mut out = NcPoly::zero();
        for (w, c) in &self.terms {
            let mut prod = NcPoly::scalar(c.clone());
            for &g in w {
                prod = prod.mul(&images[g]);
            }
            out = out.add(&prod);
        }
        out
    }

    /// Some(None) for the zero polynomial (homogeneous of every degree),
    /// Some(Some(d)) when homogeneous of degree d, None when mixed.
    pub fn homogeneous_degree(&self, degs: &[usize]) -> Option<Option<usize>> {
        let mut deg: Option<usize> = None;
        for w in self.terms.keys() {
            let d = word_degree(w, degs);
            match deg {
                None => deg = Some(d),
                Some(d0) if d0 != d => return None,
                _ => {}
            }
        }
        Some(deg)
    }

    /// Coordinates against an in-order monomial basis; None if some word is
    /// missing from the index.
    pub fn to_vec(&self, index: &BTreeMap<Word, usize>, len: usize) -> Option<Vec<BigInt>> {
        let mut v = vec![BigInt::zero(); len];
        for (w, c) in &self.terms {
            let &i = index.get(w)?;
            v[i] = c.clone();
        }
        Some(v)
    }

    pub fn from_vec(basis: &[Word], v: &[BigInt]) -> NcPoly {
        assert_eq!(basis.len(), v.len(), "basis/vector length mismatch");
        let mut out = NcPoly::zero();
        for (w, c) in basis.iter().zip(v) {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    /// Renders in canonical term order with powers collapsed, e.g.
    /// "2*e^2*f - g". The zero polynomial renders as "0".
    pub fn render(&self, names: &[String], degs: &[usize]) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut words: Vec<&Word> = self.terms.keys().collect();
        words.sort_by(|a, b| cmp_words(a, b, degs));
        let mut out = String::new();
        for (k, w) in words.iter().enumerate() {
            let c = &self.terms[*w];
            let mag = c.abs();
            if k == 0 {
                if c.is_negative() {
                    out.push('-');
                }
            } else if c.is_negative() {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            let word_str = render_word(w, names);
            if mag.is_one() && !w.is_empty() {
                out.push_str(&word_str);
            } else if w.is_empty() {
                out.push_str(&mag.to_string());
            } else {
                out.push_str(&format!("{mag}*{word_str}"));
            }
        }
        out
    }
}

fn render_word(w: &[usize], names: &[String]) -> String {
    let mut runs: Vec<(usize, usize)> = Vec::new();
    for &g in w {
        match runs.last_mut() {
            Some((h, n)) if *h == g => *n += 1,
            _ => runs.push((g, 1)),
        }
    }
    runs.iter()
        .map(|&(g, n)| if n == 1 { names[g].clone() } else { format!("{}^{}", names[g], n) })
        .collect::<Vec<_>>()
        .join("*")
}
