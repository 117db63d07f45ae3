//! Degree-bounded diamond-lemma completion and normal forms.
//!
//! A rewrite system orients homogeneous relations into rules
//! `leading word -> tail` against the degree-lexicographic order and
//! resolves every overlap ambiguity among leading words up to a total
//! degree bound. Within that bound normal forms are unique, so equality
//! in the quotient algebra is decidable by reduction.

use super::{GenSet, NcPoly, Word};
use crate::scalars::{ParamRing, ParamScalar, ScalarError};
use std::collections::BTreeSet;
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error, Clone)]
pub enum RewriteError {
    #[error("degree {degree} exceeds the completed budget {budget}")]
    DegreeBudgetExceeded { degree: u32, budget: u32 },
    #[error("leading coefficient `{0}` needs a nonzero assumption to invert")]
    NonInvertibleLeadingCoefficient(String),
    #[error("completion exceeded the rule cap {cap}")]
    RuleCapExceeded { cap: usize },
    #[error("relation {index} is not homogeneous")]
    NonHomogeneousRelation { index: usize },
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

/// Where a rule came from: an input relation or an overlap resolution.
#[derive(Debug, Clone, PartialEq)]
pub enum RuleOrigin {
    Input(usize),
    Overlap(Word),
    Derived,
}

#[derive(Debug, Clone)]
pub struct Rule {
    pub lead: Word,
    pub tail: NcPoly,
    pub origin: RuleOrigin,
}

impl Rule {
    /// lead - tail, the relation this rule encodes.
    pub fn as_poly(&self, ring: &Arc<ParamRing>) -> NcPoly {
        let mut p = self.tail.neg();
        p.add_term(self.lead.clone(), ParamScalar::one(ring));
        p
    }
}

pub const DEFAULT_RULE_CAP: usize = 64;

#[derive(Debug, Clone)]
pub struct RewriteSystem {
    gens: Arc<GenSet>,
    ring: Arc<ParamRing>,
    rules: Vec<Rule>,
    completed_to: u32,
    required_nonzero: Vec<ParamScalar>,
}

impl RewriteSystem {
    pub fn gens(&self) -> &Arc<GenSet> {
        &self.gens
    }

    pub fn ring(&self) -> &Arc<ParamRing> {
        &self.ring
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    pub fn completed_to(&self) -> u32 {
        self.completed_to
    }

    /// Scalars completion had to invert; they encode the genericity
    /// hypotheses under which the system is valid.
    pub fn required_nonzero(&self) -> &[ParamScalar] {
        &self.required_nonzero
    }

    /// Same rule set (lead words and tails agree exactly)?
    pub fn same_rules(&self, other: &RewriteSystem) -> bool {
        if self.rules.len() != other.rules.len() {
            return false;
        }
        let mut a: Vec<&Rule> = self.rules.iter().collect();
        let mut b: Vec<&Rule> = other.rules.iter().collect();
        a.sort_by(|x, y| x.lead.cmp(&y.lead));
        b.sort_by(|x, y| x.lead.cmp(&y.lead));
        a.iter()
            .zip(&b)
            .all(|(x, y)| x.lead == y.lead && x.tail.sub(&y.tail).is_zero())
    }

    /// Normal form with the budget contract: confluence is only certified
    /// up to `completed_to`.
    pub fn normal_form(&self, f: &NcPoly) -> Result<NcPoly, RewriteError> {
        let degree = f.tdeg();
        if degree > self.completed_to {
            return Err(RewriteError::DegreeBudgetExceeded {
                degree,
                budget: self.completed_to,
            });
        }
        Ok(self.reduce_full(f))
    }

    /// Reduction without the budget check (used internally by completion,
    /// where the budget is being established).
    pub(crate) fn reduce_full(&self, f: &NcPoly) -> NcPoly {
        let mut work = f.clone();
        loop {
            // largest reducible word, then leftmost occurrence
            let mut target: Option<(Word, ParamScalar, usize, usize)> = None;
            for (w, c) in work.terms.iter().rev() {
                let mut best: Option<(usize, usize)> = None;
                for (ri, rule) in self.rules.iter().enumerate() {
                    if let Some(pos) = w.find(&rule.lead) {
                        best = match best {
                            None => Some((pos, ri)),
                            Some((bp, _)) if pos < bp => Some((pos, ri)),
                            keep => keep,
                        };
                    }
                }
                if let Some((pos, ri)) = best {
                    target = Some((w.clone(), c.clone(), ri, pos));
                    break;
                }
            }
            let (w, c, ri, pos) = match target {
                None => return work,
                Some(t) => t,
            };
            work.terms.remove(&w);
            let rule = &self.rules[ri];
            let u = w.slice(0, pos, &self.gens);
            let v = w.slice(pos + rule.lead.len(), w.len(), &self.gens);
            for (tw, tc) in rule.tail.sandwich(&u, &v).terms {
                work.add_term(tw, tc.mul(&c));
            }
        }
    }

    /// Irreducible-word counts per total degree 0..=d.
    pub fn hilbert_coeffs(&self, d: u32) -> Result<Vec<usize>, RewriteError> {
        if d > self.completed_to {
            return Err(RewriteError::DegreeBudgetExceeded {
                degree: d,
                budget: self.completed_to,
            });
        }
        let mut counts = vec![0usize; d as usize + 1];
        counts[0] = 1; // the empty word
        let mut frontier: Vec<Word> = vec![self.gens.empty_word()];
        while let Some(w) = frontier.pop() {
            for g in 0..self.gens.len() {
                let ext = w.concat(&self.gens.gen_word(g));
                if ext.tdeg() > d {
                    continue;
                }
                // w is irreducible, so a new occurrence must be a suffix
                if self.rules.iter().any(|r| ext.ends_with(&r.lead)) {
                    continue;
                }
                counts[ext.tdeg() as usize] += 1;
                frontier.push(ext);
            }
        }
        Ok(counts)
    }
}

/// Completion state while building a system.
struct Completion {
    gens: Arc<GenSet>,
    ring: Arc<ParamRing>,
    rules: Vec<Rule>,
    required_nonzero: Vec<ParamScalar>,
    cap: usize,
}

impl Completion {
    fn as_system(&self, completed_to: u32) -> RewriteSystem {
        RewriteSystem {
            gens: self.gens.clone(),
            ring: self.ring.clone(),
            rules: self.rules.clone(),
            completed_to,
            required_nonzero: self.required_nonzero.clone(),
        }
    }

    fn reduce(&self, f: &NcPoly) -> NcPoly {
        self.as_system(u32::MAX).reduce_full(f)
    }

    /// Orient a (already reduced, nonzero) polynomial into a rule.
    fn orient(&mut self, p: NcPoly, origin: RuleOrigin) -> Result<Rule, RewriteError> {
        let (lead, coeff) = {
            let (w, c) = p.leading().expect("nonzero polynomial");
            (w.clone(), c.clone())
        };
        if !coeff.as_rational().is_some() {
            self.required_nonzero.push(coeff.clone());
        }
        let inv = coeff.inv().map_err(|_| {
            RewriteError::NonInvertibleLeadingCoefficient(format!("{}", coeff))
        })?;
        let mut rest = p;
        rest.terms.remove(&lead);
        let tail = rest.neg().scale(&inv);
        Ok(Rule {
            lead,
            tail,
            origin,
        })
    }

    /// Insert a polynomial as a rule, maintaining inter-reducedness.
    fn add_poly(&mut self, p: NcPoly, origin: RuleOrigin) -> Result<bool, RewriteError> {
        let mut queue: Vec<(NcPoly, RuleOrigin)> = vec![(p, origin)];
        let mut added = false;
        while let Some((q, origin)) = queue.pop() {
            let q = self.reduce(&q);
            if q.is_zero() {
                continue;
            }
            let rule = self.orient(q, origin)?;
            // retire rules whose lead contains the new lead as a factor
            let mut kept = Vec::with_capacity(self.rules.len());
            for r in self.rules.drain(..) {
                if r.lead.contains_factor(&rule.lead) {
                    queue.push((r.as_poly(&self.ring), RuleOrigin::Derived));
                } else {
                    kept.push(r);
                }
            }
            self.rules = kept;
            self.rules.push(rule);
            added = true;
            if self.rules.len() > self.cap {
                return Err(RewriteError::RuleCapExceeded { cap: self.cap });
            }
            // re-reduce every tail against the updated rule set
            let snapshot = self.as_system(u32::MAX);
            for r in &mut self.rules {
                r.tail = snapshot.reduce_full(&r.tail);
            }
            self.rules.sort_by(|a, b| a.lead.cmp(&b.lead));
        }
        Ok(added)
    }

    /// Proper overlaps among current leads, ascending by overlap word.
    fn overlaps(&self, budget: u32) -> BTreeSet<(Word, usize, usize, usize)> {
        let mut out = BTreeSet::new();
        for (i, a) in self.rules.iter().enumerate() {
            for (j, b) in self.rules.iter().enumerate() {
                let (la, lb) = (a.lead.len(), b.lead.len());
                for k in 1..la.min(lb) {
                    // suffix of a.lead of length k == prefix of b.lead
                    if a.lead.letters()[la - k..] == b.lead.letters()[..k] {
                        let rest =
                            b.lead.slice(k, lb, &self.gens);
                        let w = a.lead.concat(&rest);
                        if w.tdeg() <= budget {
                            out.insert((w, i, j, k));
                        }
                    }
                }
            }
        }
        out
    }
}

/// Diamond-lemma completion of homogeneous relations up to total degree
/// `budget`. All overlap ambiguities among leading words of degree <=
/// budget resolve to zero in the result.
pub fn complete(
    gens: &Arc<GenSet>,
    ring: &Arc<ParamRing>,
    relations: &[NcPoly],
    budget: u32,
    cap: usize,
) -> Result<RewriteSystem, RewriteError> {
    for (index, r) in relations.iter().enumerate() {
        if r.multidegree(gens).is_none() && !r.is_zero() {
            return Err(RewriteError::NonHomogeneousRelation { index });
        }
    }
    let mut st = Completion {
        gens: gens.clone(),
        ring: ring.clone(),
        rules: Vec::new(),
        required_nonzero: Vec::new(),
        cap,
    };
    for (i, r) in relations.iter().enumerate() {
        if !r.is_zero() {
            st.add_poly(r.clone(), RuleOrigin::Input(i))?;
        }
    }
    // resolve overlaps to a fixpoint, smallest overlap word first
    'sweep: loop {
        let pending = st.overlaps(budget);
        for (w, i, j, k) in pending {
            let la = st.rules[i].lead.len();
            // path 1: rewrite the prefix occurrence (rule i at position 0)
            let suffix = w.slice(la, w.len(), &st.gens);
            let left = st.rules[i]
                .tail
                .sandwich(&st.gens.empty_word(), &suffix);
            // path 2: rewrite the suffix occurrence (rule j at la - k)
            let prefix = w.slice(0, la - k, &st.gens);
            let right = st.rules[j]
                .tail
                .sandwich(&prefix, &st.gens.empty_word());
            let s = st.reduce(&left.sub(&right));
            if !s.is_zero() {
                st.add_poly(s, RuleOrigin::Overlap(w))?;
                continue 'sweep;
            }
        }
        break;
    }
    Ok(st.as_system(budget))
}

/// Extend the budget of an existing system: re-runs overlap resolution up
/// to the new bound (no-op when the system is already confluent there).
pub fn extend_budget(
    rs: &RewriteSystem,
    budget: u32,
    cap: usize,
) -> Result<RewriteSystem, RewriteError> {
    if budget <= rs.completed_to {
        let mut out = rs.clone();
        out.completed_to = budget.max(rs.completed_to);
        return Ok(out);
    }
    let relations: Vec<NcPoly> = rs
        .rules
        .iter()
        .map(|r| r.as_poly(&rs.ring))
        .collect();
    complete(&rs.gens, &rs.ring, &relations, budget, cap)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::ParamScalar;

    fn ring_p() -> Arc<ParamRing> {
        ParamRing::new(&["p12", "p13", "p23"])
    }

    fn gens3() -> Arc<GenSet> {
        GenSet::new(
            &[("t1", vec![1]), ("t2", vec![1]), ("t3", vec![1])],
            &["t3", "t2", "t1"],
        )
    }

    /// Skew polynomial relations t_j t_i - p_ij t_i t_j for i < j.
    fn skew_relations(g: &Arc<GenSet>, r: &Arc<ParamRing>) -> Vec<NcPoly> {
        let p = |n: &str| ParamScalar::param(r, n).unwrap();
        let rel = |j: usize, i: usize, c: ParamScalar| {
            NcPoly::term(g.word(&[j, i]), ParamScalar::one(r))
                .sub(&NcPoly::term(g.word(&[i, j]), c))
        };
        vec![
            rel(1, 0, p("p12")),
            rel(2, 0, p("p13")),
            rel(2, 1, p("p23")),
        ]
    }

    #[test]
    fn skew_ring_completes_without_new_rules() {
        let (g, r) = (gens3(), ring_p());
        let rs = complete(&g, &r, &skew_relations(&g, &r), 6, 64).unwrap();
        assert_eq!(rs.rules().len(), 3, "overlap t3 t2 t1 must resolve");
    }

    #[test]
    fn skew_normal_form_example() {
        // t2*t1 -> p12 * t1*t2
        let (g, r) = (gens3(), ring_p());
        let rs = complete(&g, &r, &skew_relations(&g, &r), 6, 64).unwrap();
        let f = NcPoly::term(g.word(&[1, 0]), ParamScalar::one(&r));
        let nf = rs.normal_form(&f).unwrap();
        assert_eq!(nf.format(&g), "p12*t1*t2");
    }

    #[test]
    fn commutative_relations_complete_as_given() {
        let g = gens3();
        let r = ParamRing::new(&[]);
        let rel = |j: usize, i: usize| {
            NcPoly::term(g.word(&[j, i]), ParamScalar::one(&r))
                .sub(&NcPoly::term(g.word(&[i, j]), ParamScalar::one(&r)))
        };
        let rs = complete(&g, &r, &[rel(1, 0), rel(2, 0), rel(2, 1)], 6, 64).unwrap();
        assert_eq!(rs.rules().len(), 3);
        let h = rs.hilbert_coeffs(4).unwrap();
        assert_eq!(h, vec![1, 3, 6, 10, 15]);
    }

    #[test]
    fn budget_is_enforced() {
        let (g, r) = (gens3(), ring_p());
        let rs = complete(&g, &r, &skew_relations(&g, &r), 3, 64).unwrap();
        let w = g.word(&[1, 0, 0, 0]);
        let f = NcPoly::term(w, ParamScalar::one(&r));
        assert!(matches!(
            rs.normal_form(&f),
            Err(RewriteError::DegreeBudgetExceeded { .. })
        ));
    }

    #[test]
    fn relations_reduce_to_zero() {
        let (g, r) = (gens3(), ring_p());
        let rels = skew_relations(&g, &r);
        let rs = complete(&g, &r, &rels, 6, 64).unwrap();
        for rel in &rels {
            assert!(rs.normal_form(rel).unwrap().is_zero());
        }
    }

    #[test]
    fn nonhomogeneous_rejected() {
        let (g, r) = (gens3(), ring_p());
        let bad = NcPoly::term(g.word(&[1, 0]), ParamScalar::one(&r)).sub(
            &NcPoly::term(g.word(&[0]), ParamScalar::one(&r)),
        );
        assert!(matches!(
            complete(&g, &r, &[bad], 6, 64),
            Err(RewriteError::NonHomogeneousRelation { .. })
        ));
    }

    #[test]
    fn down_up_counts_match_series() {
        // x^2 y - a xyx - b yx^2 and xy^2 - a yxy - b y^2 x with x > y:
        // irreducible-word counts must match 1/((1-t)^2 (1-t^2))
        let g = GenSet::new(&[("x", vec![1]), ("y", vec![1])], &["x", "y"]);
        let r = ParamRing::new(&["a", "b"]);
        let a = ParamScalar::param(&r, "a").unwrap();
        let b = ParamScalar::param(&r, "b").unwrap();
        let one = ParamScalar::one(&r);
        let rel1 = NcPoly::term(g.word(&[0, 0, 1]), one.clone())
            .sub(&NcPoly::term(g.word(&[0, 1, 0]), a.clone()))
            .sub(&NcPoly::term(g.word(&[1, 0, 0]), b.clone()));
        let rel2 = NcPoly::term(g.word(&[0, 1, 1]), one.clone())
            .sub(&NcPoly::term(g.word(&[1, 0, 1]), a.clone()))
            .sub(&NcPoly::term(g.word(&[1, 1, 0]), b.clone()));
        let rs = complete(&g, &r, &[rel1, rel2], 8, 64).unwrap();
        let h = rs.hilbert_coeffs(8).unwrap();
        // 1/((1-t)^2(1-t^2)) = sum of coefficients 1,2,4,6,9,12,16,20,25
        assert_eq!(h, vec![1, 2, 4, 6, 9, 12, 16, 20, 25]);
    }

    #[test]
    fn completion_is_degree_monotone() {
        let (g, r) = (gens3(), ring_p());
        let rels = skew_relations(&g, &r);
        let rs4 = complete(&g, &r, &rels, 4, 64).unwrap();
        let rs6 = complete(&g, &r, &rels, 6, 64).unwrap();
        let low: Vec<_> = rs6
            .rules()
            .iter()
            .filter(|ru| ru.lead.tdeg() <= 4)
            .collect();
        assert_eq!(low.len(), rs4.rules().len());
    }
}
