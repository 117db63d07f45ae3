//! Free-algebra arithmetic: words in declared generators with exact
//! parametric coefficients.
//!
//! Words carry their letters as precedence ordinals (0 = lowest), so the
//! derived ordering is degree-lexicographic: total degree first, then
//! letterwise with higher-precedence generators winning. This is the order
//! every rewrite system in the crate orients against.

pub mod rewrite;

use crate::scalars::{ParamRing, ParamScalar};
use smallvec::SmallVec;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

/// Generator table: names ordered as declared, a precedence permutation,
/// and multidegrees in Z^r.
#[derive(Debug, Clone, PartialEq)]
pub struct GenSet {
    names: Vec<String>,
    multidegrees: Vec<Vec<i32>>,
    rank: usize,
    /// declaration index -> precedence ordinal (0 = lowest precedence)
    ordinal_of: Vec<u8>,
    /// precedence ordinal -> declaration index
    decl_of: Vec<u8>,
}

impl GenSet {
    /// `precedence` lists generator names from highest to lowest.
    pub fn new(
        gens: &[(&str, Vec<i32>)],
        precedence: &[&str],
    ) -> Arc<GenSet> {
        assert!(!gens.is_empty() && gens.len() <= 250);
        let rank = gens[0].1.len();
        assert!(gens.iter().all(|(_, d)| d.len() == rank));
        assert!(
            gens.iter()
                .all(|(_, d)| d.iter().map(|&x| x as i64).sum::<i64>() > 0),
            "generators must have positive total degree"
        );
        let names: Vec<String> = gens.iter().map(|(n, _)| n.to_string()).collect();
        assert_eq!(precedence.len(), names.len());
        let n = names.len();
        let mut ordinal_of = vec![0u8; n];
        let mut decl_of = vec![0u8; n];
        for (rank_from_top, name) in precedence.iter().enumerate() {
            let decl = names
                .iter()
                .position(|m| m == name)
                .expect("precedence names a declared generator");
            let ordinal = (n - 1 - rank_from_top) as u8;
            ordinal_of[decl] = ordinal;
            decl_of[ordinal as usize] = decl as u8;
        }
        Arc::new(GenSet {
            multidegrees: gens.iter().map(|(_, d)| d.clone()).collect(),
            names,
            rank,
            ordinal_of,
            decl_of,
        })
    }

    /// Default precedence: later-declared generators are higher.
    pub fn ascending(gens: &[(&str, Vec<i32>)]) -> Arc<GenSet> {
        let prec: Vec<&str> = gens.iter().rev().map(|(n, _)| *n).collect();
        GenSet::new(gens, &prec)
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn multidegree(&self, decl_idx: usize) -> &[i32] {
        &self.multidegrees[decl_idx]
    }

    pub fn total_degree(&self, decl_idx: usize) -> u32 {
        self.multidegrees[decl_idx]
            .iter()
            .map(|&x| x as i64)
            .sum::<i64>() as u32
    }

    fn tdeg_of_ordinal(&self, ordinal: u8) -> u32 {
        self.total_degree(self.decl_of[ordinal as usize] as usize)
    }

    pub fn decl_of_ordinal(&self, ordinal: u8) -> usize {
        self.decl_of[ordinal as usize] as usize
    }

    pub fn ordinal_of_decl(&self, decl_idx: usize) -> u8 {
        self.ordinal_of[decl_idx]
    }

    /// Empty word (the identity).
    pub fn empty_word(&self) -> Word {
        Word {
            tdeg: 0,
            letters: SmallVec::new(),
        }
    }

    /// Word from declaration indices.
    pub fn word(&self, decl_indices: &[usize]) -> Word {
        let letters: SmallVec<[u8; 12]> = decl_indices
            .iter()
            .map(|&i| self.ordinal_of[i])
            .collect();
        let tdeg = letters.iter().map(|&o| self.tdeg_of_ordinal(o)).sum();
        Word { tdeg, letters }
    }

    pub fn gen_word(&self, decl_idx: usize) -> Word {
        self.word(&[decl_idx])
    }

    pub fn word_multidegree(&self, w: &Word) -> Vec<i32> {
        let mut d = vec![0i32; self.rank];
        for &o in &w.letters {
            let g = self.decl_of[o as usize] as usize;
            for (k, &x) in self.multidegrees[g].iter().enumerate() {
                d[k] += x;
            }
        }
        d
    }

    pub fn format_word(&self, w: &Word) -> String {
        if w.letters.is_empty() {
            return "1".to_string();
        }
        let mut parts: Vec<String> = Vec::new();
        let mut run_gen: Option<usize> = None;
        let mut run_len = 0usize;
        let flush = |parts: &mut Vec<String>, g: usize, n: usize, names: &[String]| {
            if n == 1 {
                parts.push(names[g].clone());
            } else {
                parts.push(format!("{}^{}", names[g], n));
            }
        };
        for &o in &w.letters {
            let g = self.decl_of[o as usize] as usize;
            match run_gen {
                Some(cur) if cur == g => run_len += 1,
                Some(cur) => {
                    flush(&mut parts, cur, run_len, &self.names);
                    run_gen = Some(g);
                    run_len = 1;
                }
                None => {
                    run_gen = Some(g);
                    run_len = 1;
                }
            }
        }
        if let Some(cur) = run_gen {
            flush(&mut parts, cur, run_len, &self.names);
        }
        parts.join("*")
    }
}

/// A word in the free monoid on the generators. Ordering: total degree,
/// then letterwise by precedence ordinal.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Word {
    tdeg: u32,
    letters: SmallVec<[u8; 12]>,
}

impl Word {
    pub fn tdeg(&self) -> u32 {
        self.tdeg
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn letters(&self) -> &[u8] {
        &self.letters
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Word {
            tdeg: self.tdeg + other.tdeg,
            letters,
        }
    }

    /// Slice self.letters[a..b] as a word; tdeg recomputed via genset.
    pub fn slice(&self, a: usize, b: usize, gens: &GenSet) -> Word {
        let letters: SmallVec<[u8; 12]> = SmallVec::from_slice(&self.letters[a..b]);
        let tdeg = letters.iter().map(|&o| gens.tdeg_of_ordinal(o)).sum();
        Word { tdeg, letters }
    }

    /// Leftmost position where `pat` occurs as a factor.
    pub fn find(&self, pat: &Word) -> Option<usize> {
        let (n, m) = (self.letters.len(), pat.letters.len());
        if m == 0 || m > n {
            return None;
        }
        (0..=n - m).find(|&i| self.letters[i..i + m] == pat.letters[..])
    }

    pub fn contains_factor(&self, pat: &Word) -> bool {
        self.find(pat).is_some()
    }

    pub fn ends_with(&self, pat: &Word) -> bool {
        let (n, m) = (self.letters.len(), pat.letters.len());
        m <= n && self.letters[n - m..] == pat.letters[..]
    }
}

/// Finitely supported scalar combination of words; no zero coefficients
/// are ever stored.
#[derive(Clone, Debug)]
pub struct NcPoly {
    pub terms: BTreeMap<Word, ParamScalar>,
}

impl NcPoly {
    pub fn zero() -> Self {
        NcPoly {
            terms: BTreeMap::new(),
        }
    }

    pub fn one(gens: &GenSet, ring: &Arc<ParamRing>) -> Self {
        let mut p = NcPoly::zero();
        p.add_term(gens.empty_word(), ParamScalar::one(ring));
        p
    }

    pub fn term(w: Word, c: ParamScalar) -> Self {
        let mut p = NcPoly::zero();
        p.add_term(w, c);
        p
    }

    pub fn gen(gens: &GenSet, ring: &Arc<ParamRing>, decl_idx: usize) -> Self {
        NcPoly::term(gens.gen_word(decl_idx), ParamScalar::one(ring))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, w: Word, c: ParamScalar) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(w) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                let sum = e.get().add(&c);
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
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

    pub fn sub(&self, other: &NcPoly) -> NcPoly {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.neg());
        }
        out
    }

    pub fn neg(&self) -> NcPoly {
        NcPoly {
            terms: self
                .terms
                .iter()
                .map(|(w, c)| (w.clone(), c.neg()))
                .collect(),
        }
    }

    pub fn scale(&self, c: &ParamScalar) -> NcPoly {
        if c.is_zero() {
            return NcPoly::zero();
        }
        let mut out = NcPoly::zero();
        for (w, k) in &self.terms {
            out.add_term(w.clone(), k.mul(c));
        }
        out
    }

    /// Free (unreduced) product.
    pub fn mul(&self, other: &NcPoly) -> NcPoly {
        let mut out = NcPoly::zero();
        for (w1, c1) in &self.terms {
            for (w2, c2) in &other.terms {
                out.add_term(w1.concat(w2), c1.mul(c2));
            }
        }
        out
    }

    /// u * self * v with monomial factors.
    pub fn sandwich(&self, u: &Word, v: &Word) -> NcPoly {
        let mut out = NcPoly::zero();
        for (w, c) in &self.terms {
            out.add_term(u.concat(w).concat(v), c.clone());
        }
        out
    }

    pub fn leading(&self) -> Option<(&Word, &ParamScalar)> {
        self.terms.iter().next_back()
    }

    pub fn tdeg(&self) -> u32 {
        self.leading().map_or(0, |(w, _)| w.tdeg())
    }

    /// All words share one total degree (zero counts as homogeneous).
    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(|w| w.tdeg());
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    /// All words share one multidegree; returns it.
    pub fn multidegree(&self, gens: &GenSet) -> Option<Vec<i32>> {
        let mut it = self.terms.keys();
        let first = it.next()?;
        let d = gens.word_multidegree(first);
        for w in it {
            if gens.word_multidegree(w) != d {
                return None;
            }
        }
        Some(d)
    }

    /// The degree-d homogeneous component.
    pub fn component(&self, d: u32) -> NcPoly {
        NcPoly {
            terms: self
                .terms
                .iter()
                .filter(|(w, _)| w.tdeg() == d)
                .map(|(w, c)| (w.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn format(&self, gens: &GenSet) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (w, c)) in self.terms.iter().rev().enumerate() {
            let s = crate::scalars::format_scalar(c);
            let (neg, abs) = match s.strip_prefix('-') {
                Some(rest) => (true, rest.to_string()),
                None => (false, s),
            };
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let wrapped = if abs.contains(' ') {
                format!("({})", abs)
            } else {
                abs.clone()
            };
            if w.is_empty() {
                out.push_str(&wrapped);
            } else if abs == "1" {
                out.push_str(&gens.format_word(w));
            } else {
                out.push_str(&format!("{}*{}", wrapped, gens.format_word(w)));
            }
        }
        out
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "w{:?}", self.letters.as_slice())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t3() -> (Arc<GenSet>, Arc<ParamRing>) {
        let gens = GenSet::new(
            &[("t1", vec![1]), ("t2", vec![1]), ("t3", vec![1])],
            &["t3", "t2", "t1"],
        );
        (gens, ParamRing::new(&["p"]))
    }

    #[test]
    fn word_order_prefers_precedence() {
        let (g, _) = t3();
        let t2t1 = g.word(&[1, 0]);
        let t1t2 = g.word(&[0, 1]);
        let t1sq = g.word(&[0, 0]);
        assert!(t2t1 > t1t2);
        assert!(t1t2 > t1sq);
        // degree dominates
        assert!(g.word(&[0, 0, 0]) > g.word(&[2, 2]));
    }

    #[test]
    fn mul_concatenates() {
        let (g, r) = t3();
        let a = NcPoly::gen(&g, &r, 0);
        let b = NcPoly::gen(&g, &r, 1);
        let ab = a.mul(&b);
        assert_eq!(ab.terms.len(), 1);
        let (w, _) = ab.leading().unwrap();
        assert_eq!(w, &g.word(&[0, 1]));
    }

    #[test]
    fn cancellation_drops_terms() {
        let (g, r) = t3();
        let a = NcPoly::gen(&g, &r, 0);
        assert!(a.sub(&a).is_zero());
    }

    #[test]
    fn formatting_collapses_powers() {
        let (g, r) = t3();
        let w = g.word(&[0, 0, 1]);
        let p = NcPoly::term(w, ParamScalar::int(&r, -1));
        assert_eq!(p.format(&g), "-t1^2*t2");
    }

    #[test]
    fn find_factor() {
        let (g, _) = t3();
        let w = g.word(&[0, 1, 2, 1]);
        assert_eq!(w.find(&g.word(&[1, 2])), Some(1));
        assert_eq!(w.find(&g.word(&[2, 2])), None);
        assert!(w.ends_with(&g.word(&[2, 1])));
    }
}
