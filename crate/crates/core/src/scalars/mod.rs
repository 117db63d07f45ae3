//! Exact parametric coefficient field: rational functions in named
//! parameters, optionally modulo a constraint ideal, together with an
//! assumption registry for genericity hypotheses.
//!
//! With an empty constraint ideal every scalar is kept in canonical form
//! (gcd-reduced, monic denominator). With a nonempty ideal the fraction is
//! kept unreduced; numerator and denominator are normal forms modulo the
//! completed reduction basis and equality is decided by cross-multiplication.
//! Constraint ideals are assumed prime; this is a documented precondition,
//! not something the ring verifies.

pub mod mpoly;

use mpoly::{buchberger, divide_exact, gcd, rat, rat_int, reduce, MPoly, Mono, Rat};
use num_traits::{One, Signed};
use std::fmt;
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ScalarError {
    #[error("zero denominator (reduces to 0 modulo the constraint ideal)")]
    ZeroDenominator,
    #[error("operands belong to different parameter rings")]
    MixedRings,
    #[error("zero scalar where a nonzero one is required")]
    ZeroScalar,
    #[error("unknown parameter `{0}`")]
    UnknownParameter(String),
    #[error("constraint completion failed: {0}")]
    ConstraintCompletion(String),
    #[error("assumptions may not be placed on the zero scalar")]
    AssumptionOnZero,
}

/// Polynomial ring data shared by every scalar: parameter names in
/// precedence order (earlier = higher precedence in the monomial order),
/// per-parameter weights, and a completed reduction basis for the
/// constraint ideal.
#[derive(Debug)]
pub struct ParamRing {
    params: Vec<String>,
    weights: Vec<u32>,
    constraint_gens: Vec<MPoly>,
    constraint_basis: Vec<MPoly>,
    /// Variable indices in the order they should be printed (printing is
    /// cosmetic; the monomial order always follows declaration order).
    display_order: Vec<usize>,
}

impl PartialEq for ParamRing {
    fn eq(&self, other: &Self) -> bool {
        self.params == other.params
            && self.weights == other.weights
            && self.constraint_basis == other.constraint_basis
    }
}

impl ParamRing {
    pub fn new(params: &[&str]) -> Arc<ParamRing> {
        let weighted: Vec<(&str, u32)> = params.iter().map(|p| (*p, 1)).collect();
        Self::weighted(&weighted)
    }

    pub fn weighted(params: &[(&str, u32)]) -> Arc<ParamRing> {
        Arc::new(ParamRing {
            params: params.iter().map(|(p, _)| p.to_string()).collect(),
            weights: params.iter().map(|(_, w)| *w).collect(),
            constraint_gens: Vec::new(),
            constraint_basis: Vec::new(),
            display_order: (0..params.len()).collect(),
        })
    }

    /// Ring with constraint polynomials; the ideal is completed to a
    /// reduction basis up front so normal forms are canonical.
    pub fn constrained(
        params: &[(&str, u32)],
        constraints: Vec<MPoly>,
    ) -> Result<Arc<ParamRing>, ScalarError> {
        let weights: Vec<u32> = params.iter().map(|(_, w)| *w).collect();
        for c in &constraints {
            if c.is_zero() {
                return Err(ScalarError::ConstraintCompletion(
                    "the zero polynomial is not a constraint".into(),
                ));
            }
        }
        let basis = buchberger(&constraints, &weights, 64)
            .map_err(ScalarError::ConstraintCompletion)?;
        if basis.iter().any(|b| b.is_constant()) {
            return Err(ScalarError::ConstraintCompletion(
                "constraint ideal is the unit ideal".into(),
            ));
        }
        Ok(Arc::new(ParamRing {
            params: params.iter().map(|(p, _)| p.to_string()).collect(),
            weights,
            constraint_gens: constraints,
            constraint_basis: basis,
            display_order: (0..params.len()).collect(),
        }))
    }

    pub fn params(&self) -> &[String] {
        &self.params
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn nvars(&self) -> usize {
        self.params.len()
    }

    pub fn has_constraints(&self) -> bool {
        !self.constraint_basis.is_empty()
    }

    pub fn constraint_basis(&self) -> &[MPoly] {
        &self.constraint_basis
    }

    pub fn param_index(&self, name: &str) -> Option<usize> {
        self.params.iter().position(|p| p == name)
    }

    pub fn reduce_mod_ideal(&self, f: &MPoly) -> MPoly {
        if self.constraint_basis.is_empty() {
            f.clone()
        } else {
            reduce(f, &self.constraint_basis)
        }
    }

    /// Ring with the same constraints and extra parameters appended (weight
    /// 1, lower precedence than all existing parameters).
    pub fn extend(self: &Arc<Self>, extra: &[&str]) -> Arc<ParamRing> {
        let mut params = self.params.clone();
        let mut weights = self.weights.clone();
        for p in extra {
            assert!(
                !params.iter().any(|q| q == p),
                "parameter `{}` already declared",
                p
            );
            params.push(p.to_string());
            weights.push(1);
        }
        let lift = |f: &MPoly| lift_poly(f, self, &params, &weights);
        let mut display_order = self.display_order.clone();
        display_order.extend(self.params.len()..params.len());
        Arc::new(ParamRing {
            constraint_gens: self.constraint_gens.iter().map(lift).collect(),
            constraint_basis: self.constraint_basis.iter().map(lift).collect(),
            params,
            weights,
            display_order,
        })
    }

    /// Override the printing order of parameters (by name).
    pub fn with_display_order(self: &Arc<Self>, names: &[&str]) -> Arc<ParamRing> {
        assert_eq!(names.len(), self.params.len());
        let display_order = names
            .iter()
            .map(|n| self.param_index(n).expect("unknown parameter"))
            .collect();
        Arc::new(ParamRing {
            params: self.params.clone(),
            weights: self.weights.clone(),
            constraint_gens: self.constraint_gens.clone(),
            constraint_basis: self.constraint_basis.clone(),
            display_order,
        })
    }

    pub fn display_order(&self) -> &[usize] {
        &self.display_order
    }
}

fn lift_poly(
    f: &MPoly,
    from: &ParamRing,
    to_params: &[String],
    to_weights: &[u32],
) -> MPoly {
    let index: Vec<usize> = from
        .params
        .iter()
        .map(|p| {
            to_params
                .iter()
                .position(|q| q == p)
                .expect("target ring must contain all source parameters")
        })
        .collect();
    let mut out = MPoly::zero();
    for (m, c) in &f.terms {
        let mut exps = vec![0u16; to_params.len()];
        for (i, &e) in m.exps().iter().enumerate() {
            exps[index[i]] = e;
        }
        out.add_term(Mono::new(&exps, to_weights), c.clone());
    }
    out
}

fn same_ring(a: &Arc<ParamRing>, b: &Arc<ParamRing>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

/// Element of the fraction field of the parameter ring (modulo the
/// constraint ideal when present).
#[derive(Clone, Debug)]
pub struct ParamScalar {
    ring: Arc<ParamRing>,
    num: MPoly,
    den: MPoly,
}

impl ParamScalar {
    fn make(ring: &Arc<ParamRing>, num: MPoly, den: MPoly) -> Result<Self, ScalarError> {
        let mut s = ParamScalar {
            ring: ring.clone(),
            num,
            den,
        };
        s.canonicalize()?;
        Ok(s)
    }

    /// Canonical form. Empty ideal: gcd-reduced with monic denominator.
    /// Nonempty ideal: numerator and denominator replaced by their normal
    /// forms (fraction left unreduced otherwise).
    fn canonicalize(&mut self) -> Result<(), ScalarError> {
        if self.ring.has_constraints() {
            self.num = self.ring.reduce_mod_ideal(&self.num);
            self.den = self.ring.reduce_mod_ideal(&self.den);
            if self.den.is_zero() {
                return Err(ScalarError::ZeroDenominator);
            }
            if self.num.is_zero() {
                self.den = MPoly::constant(Rat::one(), self.ring.nvars());
            }
            return Ok(());
        }
        if self.den.is_zero() {
            return Err(ScalarError::ZeroDenominator);
        }
        if self.num.is_zero() {
            self.den = MPoly::constant(Rat::one(), self.ring.nvars());
            return Ok(());
        }
        let g = gcd(&self.num, &self.den, self.ring.weights());
        if !g.is_one() {
            if let (Some(n), Some(d)) = (
                divide_exact(&self.num, &g),
                divide_exact(&self.den, &g),
            ) {
                self.num = n;
                self.den = d;
            }
        }
        // monic denominator makes the representative unique
        let lc = self.den.leading().unwrap().1.clone();
        if !lc.is_one() {
            let inv = Rat::one() / lc;
            self.num = self.num.scale(&inv);
            self.den = self.den.scale(&inv);
        }
        Ok(())
    }

    pub fn ring(&self) -> &Arc<ParamRing> {
        &self.ring
    }

    pub fn numerator(&self) -> &MPoly {
        &self.num
    }

    pub fn denominator(&self) -> &MPoly {
        &self.den
    }

    pub fn zero(ring: &Arc<ParamRing>) -> Self {
        ParamScalar {
            ring: ring.clone(),
            num: MPoly::zero(),
            den: MPoly::constant(Rat::one(), ring.nvars()),
        }
    }

    pub fn one(ring: &Arc<ParamRing>) -> Self {
        Self::from_rat(ring, Rat::one())
    }

    pub fn int(ring: &Arc<ParamRing>, n: i64) -> Self {
        Self::from_rat(ring, rat_int(n))
    }

    pub fn rational(ring: &Arc<ParamRing>, n: i64, d: i64) -> Self {
        Self::from_rat(ring, rat(n, d))
    }

    pub fn from_rat(ring: &Arc<ParamRing>, c: Rat) -> Self {
        ParamScalar {
            ring: ring.clone(),
            num: MPoly::constant(c, ring.nvars()),
            den: MPoly::constant(Rat::one(), ring.nvars()),
        }
    }

    pub fn param(ring: &Arc<ParamRing>, name: &str) -> Result<Self, ScalarError> {
        let i = ring
            .param_index(name)
            .ok_or_else(|| ScalarError::UnknownParameter(name.to_string()))?;
        Ok(ParamScalar {
            ring: ring.clone(),
            num: MPoly::var(i, ring.nvars(), ring.weights()),
            den: MPoly::constant(Rat::one(), ring.nvars()),
        })
    }

    pub fn param_pow(
        ring: &Arc<ParamRing>,
        name: &str,
        e: i64,
    ) -> Result<Self, ScalarError> {
        Self::param(ring, name)?.pow(e)
    }

    pub fn from_poly(ring: &Arc<ParamRing>, num: MPoly) -> Result<Self, ScalarError> {
        Self::make(ring, num, MPoly::constant(Rat::one(), ring.nvars()))
    }

    pub fn from_fraction(
        ring: &Arc<ParamRing>,
        num: MPoly,
        den: MPoly,
    ) -> Result<Self, ScalarError> {
        Self::make(ring, num, den)
    }

    pub fn is_zero(&self) -> bool {
        self.ring.reduce_mod_ideal(&self.num).is_zero()
    }

    pub fn is_one(&self) -> bool {
        if self.ring.has_constraints() {
            self.ring
                .reduce_mod_ideal(&self.num.sub(&self.den))
                .is_zero()
        } else {
            self.num == self.den
        }
    }

    fn assert_same_ring(&self, other: &ParamScalar) {
        assert!(
            same_ring(&self.ring, &other.ring),
            "scalar arithmetic across different parameter rings"
        );
    }

    pub fn add(&self, other: &ParamScalar) -> ParamScalar {
        self.assert_same_ring(other);
        let num = self.num.mul(&other.den).add(&other.num.mul(&self.den));
        let den = self.den.mul(&other.den);
        ParamScalar::make(&self.ring, num, den).expect("denominator product of units")
    }

    pub fn sub(&self, other: &ParamScalar) -> ParamScalar {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> ParamScalar {
        ParamScalar {
            ring: self.ring.clone(),
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn mul(&self, other: &ParamScalar) -> ParamScalar {
        self.assert_same_ring(other);
        let num = self.num.mul(&other.num);
        let den = self.den.mul(&other.den);
        ParamScalar::make(&self.ring, num, den).expect("denominator product of units")
    }

    pub fn div(&self, other: &ParamScalar) -> Result<ParamScalar, ScalarError> {
        self.assert_same_ring(other);
        if other.is_zero() {
            return Err(ScalarError::ZeroDenominator);
        }
        ParamScalar::make(
            &self.ring,
            self.num.mul(&other.den),
            self.den.mul(&other.num),
        )
    }

    pub fn inv(&self) -> Result<ParamScalar, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::ZeroDenominator);
        }
        ParamScalar::make(&self.ring, self.den.clone(), self.num.clone())
    }

    pub fn pow(&self, e: i64) -> Result<ParamScalar, ScalarError> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut out = ParamScalar::one(&self.ring);
        for _ in 0..e.unsigned_abs() {
            out = out.mul(&base);
        }
        Ok(out)
    }

    /// Canonical representative (idempotent: the internal form is already
    /// canonical, so this is a checked identity).
    pub fn normalize(&self) -> Result<ParamScalar, ScalarError> {
        ParamScalar::make(&self.ring, self.num.clone(), self.den.clone())
    }

    /// Exact equality in the fraction field modulo the constraint ideal.
    pub fn eq_checked(&self, other: &ParamScalar) -> Result<bool, ScalarError> {
        if !same_ring(&self.ring, &other.ring) {
            return Err(ScalarError::MixedRings);
        }
        let cross = self.num.mul(&other.den).sub(&other.num.mul(&self.den));
        Ok(self.ring.reduce_mod_ideal(&cross).is_zero())
    }

    pub fn as_rational(&self) -> Option<Rat> {
        let n = self.num.as_constant()?;
        let d = self.den.as_constant()?;
        Some(n / d)
    }

    /// Laurent-monomial view: `Some((c, exps))` when the scalar equals
    /// c * prod(param_i ^ exps_i).
    pub fn as_laurent_monomial(&self) -> Option<(Rat, Vec<i64>)> {
        let (mn, cn) = self.num.as_monomial()?;
        let (md, cd) = self.den.as_monomial()?;
        let exps: Vec<i64> = mn
            .exps()
            .iter()
            .zip(md.exps())
            .map(|(a, b)| *a as i64 - *b as i64)
            .collect();
        Some((cn / cd, exps))
    }

    /// Re-express this scalar in a larger ring that contains all of this
    /// ring's parameters by name.
    pub fn lift_to(&self, target: &Arc<ParamRing>) -> ParamScalar {
        ParamScalar::make(
            target,
            lift_poly(&self.num, &self.ring, &target.params, &target.weights),
            lift_poly(&self.den, &self.ring, &target.params, &target.weights),
        )
        .expect("lift keeps denominators nonzero")
    }

    /// Substitute scalars (from `target`'s ring) for every parameter.
    pub fn substitute(
        &self,
        target: &Arc<ParamRing>,
        map: &[ParamScalar],
    ) -> Result<ParamScalar, ScalarError> {
        assert_eq!(map.len(), self.ring.nvars());
        let eval = |p: &MPoly| -> ParamScalar {
            let mut out = ParamScalar::zero(target);
            for (m, c) in &p.terms {
                let mut term = ParamScalar::from_rat(target, c.clone());
                for (i, &e) in m.exps().iter().enumerate() {
                    for _ in 0..e {
                        term = term.mul(&map[i]);
                    }
                }
                out = out.add(&term);
            }
            out
        };
        let n = eval(&self.num);
        let d = eval(&self.den);
        n.div(&d)
    }
}

impl fmt::Display for ParamScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", format_scalar(self))
    }
}

fn format_poly(p: &MPoly, names: &[String], order: &[usize]) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, (m, c)) in p.terms.iter().rev().enumerate() {
        let neg = c.is_negative();
        let abs = if neg { -c.clone() } else { c.clone() };
        if i == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let mut factors: Vec<String> = Vec::new();
        if !abs.is_one() || m.is_one() {
            factors.push(format_rat(&abs));
        }
        for &v in order {
            let e = m.exps()[v];
            if e == 0 {
                continue;
            }
            if e == 1 {
                factors.push(names[v].clone());
            } else {
                factors.push(format!("{}^{}", names[v], e));
            }
        }
        out.push_str(&factors.join("*"));
    }
    out
}

fn format_rat(c: &Rat) -> String {
    if c.denom().is_one() {
        format!("{}", c.numer())
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

/// Canonical printing: Laurent style (`2*p^2*q^-1`) whenever the
/// denominator is a single monomial, fraction style otherwise.
pub fn format_scalar(s: &ParamScalar) -> String {
    let names: Vec<String> = s.ring().params().to_vec();
    let order: Vec<usize> = s.ring().display_order().to_vec();
    if let Some((md, cd)) = s.den.as_monomial() {
        // fold the denominator monomial into negative exponents
        let mut parts: Vec<String> = Vec::new();
        let mut pending: Vec<(usize, i64)> = Vec::new();
        for (v, &e) in md.exps().iter().enumerate() {
            if e > 0 {
                pending.push((v, -(e as i64)));
            }
        }
        if s.num.terms.len() == 1 {
            let (mn, cn) = s.num.as_monomial().unwrap();
            let c = cn / cd;
            let neg = c.is_negative();
            let abs = if neg { -c.clone() } else { c };
            let mut exps: Vec<i64> = mn.exps().iter().map(|&e| e as i64).collect();
            for (v, d) in &pending {
                exps[*v] += d;
            }
            let mut factors: Vec<String> = Vec::new();
            if !abs.is_one() || exps.iter().all(|&e| e == 0) {
                factors.push(format_rat(&abs));
            }
            for &v in &order {
                let e = exps[v];
                if e == 0 {
                    continue;
                }
                if e == 1 {
                    factors.push(names[v].clone());
                } else {
                    factors.push(format!("{}^{}", names[v], e));
                }
            }
            let body = factors.join("*");
            return if neg { format!("-{}", body) } else { body };
        }
        // multi-term numerator over a monomial denominator
        let num_str = format_poly(&s.num, &names, &order);
        if md.is_one() && cd.is_one() {
            return num_str;
        }
        for &v in &order {
            let e = md.exps()[v];
            if e > 0 {
                parts.push(format!("{}^{}", names[v], -(e as i64)));
            }
        }
        let mut out = format!("({})", num_str);
        if !cd.is_one() {
            out = format!("{}/{}", out, format_rat(cd));
        }
        if !parts.is_empty() {
            out = format!("{}*{}", out, parts.join("*"));
        }
        return out;
    }
    format!(
        "({})/({})",
        format_poly(&s.num, &names, &order),
        format_poly(&s.den, &names, &order)
    )
}

/// Hypotheses on parameters, registered per presentation.
#[derive(Clone, Debug)]
pub enum Assumption {
    Nonzero(ParamScalar),
    NotRootOfUnity(ParamScalar),
    NotEqualOne(ParamScalar),
    /// Named parameters with no multiplicative relation among them.
    MultiplicativelyIndependent(Vec<String>),
}

impl Assumption {
    pub fn validate(&self) -> Result<(), ScalarError> {
        match self {
            Assumption::Nonzero(s)
            | Assumption::NotRootOfUnity(s)
            | Assumption::NotEqualOne(s) => {
                if s.is_zero() {
                    Err(ScalarError::AssumptionOnZero)
                } else {
                    Ok(())
                }
            }
            Assumption::MultiplicativelyIndependent(_) => Ok(()),
        }
    }

    pub fn describe(&self) -> String {
        match self {
            Assumption::Nonzero(s) => format!("{} nonzero", s),
            Assumption::NotRootOfUnity(s) => format!("{} not a root of unity", s),
            Assumption::NotEqualOne(s) => format!("{} != 1", s),
            Assumption::MultiplicativelyIndependent(ps) => {
                format!("{{{}}} multiplicatively independent", ps.join(", "))
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RootOfUnityStatus {
    Yes(u32),
    No,
    Unknown,
}

/// Decide whether `x` is a root of unity under the registered assumptions.
///
/// Sound rules only: rational constants are decided outright; a Laurent
/// monomial (+-1) * prod(p^e) is ruled out when the parameters carrying
/// nonzero exponents are covered by a not-root-of-unity assumption (single
/// parameter) or jointly by a multiplicatively-independent set. A direct
/// assumption on x itself (or on x^-1, or on s with x a power of s) also
/// applies. Everything else is Unknown.
pub fn root_of_unity_status(
    x: &ParamScalar,
    registry: &[Assumption],
) -> Result<RootOfUnityStatus, ScalarError> {
    if x.is_zero() {
        return Err(ScalarError::ZeroScalar);
    }
    if let Some(c) = x.as_rational() {
        if c.is_one() {
            return Ok(RootOfUnityStatus::Yes(1));
        }
        if (-c.clone()).is_one() {
            return Ok(RootOfUnityStatus::Yes(2));
        }
        // the only rational roots of unity are +-1
        return Ok(RootOfUnityStatus::No);
    }

    // direct subject matches first
    for a in registry {
        if let Assumption::NotRootOfUnity(s) = a {
            if x.eq_checked(s).unwrap_or(false) {
                return Ok(RootOfUnityStatus::No);
            }
            if let Ok(b) = x.mul(s).eq_checked(&ParamScalar::one(x.ring())) {
                if b {
                    return Ok(RootOfUnityStatus::No);
                }
            }
        }
    }

    if let Some((c, exps)) = x.as_laurent_monomial() {
        let unit_coeff = c.is_one() || (-c.clone()).is_one();
        if unit_coeff {
            let support: Vec<usize> = exps
                .iter()
                .enumerate()
                .filter(|(_, &e)| e != 0)
                .map(|(i, _)| i)
                .collect();
            if support.len() == 1 {
                let pname = &x.ring().params()[support[0]];
                for a in registry {
                    match a {
                        Assumption::NotRootOfUnity(s) => {
                            if let Some((cs, es)) = s.as_laurent_monomial() {
                                let s_unit = cs.is_one() || (-cs).is_one();
                                if s_unit && is_power_of(&exps, &es) {
                                    return Ok(RootOfUnityStatus::No);
                                }
                            }
                        }
                        Assumption::MultiplicativelyIndependent(ps) => {
                            if ps.contains(pname) {
                                return Ok(RootOfUnityStatus::No);
                            }
                        }
                        _ => {}
                    }
                }
            } else if !support.is_empty() {
                let names: Vec<&String> =
                    support.iter().map(|&i| &x.ring().params()[i]).collect();
                for a in registry {
                    if let Assumption::MultiplicativelyIndependent(ps) = a {
                        if names.iter().all(|n| ps.contains(n)) {
                            return Ok(RootOfUnityStatus::No);
                        }
                    }
                }
                // power-of-subject match for multi-parameter monomials
                for a in registry {
                    if let Assumption::NotRootOfUnity(s) = a {
                        if let Some((cs, es)) = s.as_laurent_monomial() {
                            let s_unit = cs.is_one() || (-cs).is_one();
                            if s_unit && is_power_of(&exps, &es) {
                                return Ok(RootOfUnityStatus::No);
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(RootOfUnityStatus::Unknown)
}

/// exps = k * base for a nonzero integer k?
fn is_power_of(exps: &[i64], base: &[i64]) -> bool {
    if base.iter().all(|&e| e == 0) {
        return false;
    }
    let mut k: Option<(i64, i64)> = None; // ratio as fraction (num, den)
    for (&e, &b) in exps.iter().zip(base) {
        match (e, b) {
            (0, 0) => {}
            (_, 0) | (0, _) => return false,
            (e, b) => match k {
                None => k = Some((e, b)),
                Some((kn, kd)) => {
                    if e as i128 * kd as i128 != kn as i128 * b as i128 {
                        return false;
                    }
                }
            },
        }
    }
    // ratio must be a (possibly negative) integer: e = k*b exactly for all
    match k {
        Some((kn, kd)) => kd != 0 && kn % kd == 0,
        None => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn plain_ring() -> Arc<ParamRing> {
        ParamRing::new(&["p", "q"])
    }

    /// Ring for the degree-five family with constraint 2p^4 - p^2 q + q^2,
    /// weighted so the constraint is homogeneous and q^2 leads.
    fn d_ring() -> Arc<ParamRing> {
        let params = [("q", 2u32), ("p", 1u32)];
        let tmp = ParamRing::weighted(&params);
        let p = ParamScalar::param(&tmp, "p").unwrap();
        let q = ParamScalar::param(&tmp, "q").unwrap();
        let c = p
            .pow(4)
            .unwrap()
            .mul(&ParamScalar::int(&tmp, 2))
            .sub(&p.pow(2).unwrap().mul(&q))
            .add(&q.pow(2).unwrap());
        ParamRing::constrained(&params, vec![c.numerator().clone()])
            .unwrap()
            .with_display_order(&["p", "q"])
    }

    #[test]
    fn normalize_cancels_common_factor() {
        // (p^2 - 1)/(p - 1) -> p + 1
        let r = plain_ring();
        let p = ParamScalar::param(&r, "p").unwrap();
        let one = ParamScalar::one(&r);
        let x = p
            .pow(2)
            .unwrap()
            .sub(&one)
            .div(&p.sub(&one))
            .unwrap();
        assert!(x.eq_checked(&p.add(&one)).unwrap());
        assert_eq!(format_scalar(&x), "p + 1");
    }

    #[test]
    fn normalize_reduces_modulo_constraint() {
        // q^2 == p^2 q - 2 p^4 in the constrained ring
        let r = d_ring();
        let p = ParamScalar::param(&r, "p").unwrap();
        let q = ParamScalar::param(&r, "q").unwrap();
        let lhs = q.pow(2).unwrap();
        let rhs = p
            .pow(2)
            .unwrap()
            .mul(&q)
            .sub(&p.pow(4).unwrap().mul(&ParamScalar::int(&r, 2)));
        assert!(lhs.eq_checked(&rhs).unwrap());
        // and the canonical printed form of q^2 is the reduced one
        let nf = lhs.normalize().unwrap();
        assert_eq!(format_scalar(&nf), "p^2*q - 2*p^4");
    }

    #[test]
    fn zero_over_param_is_zero() {
        let r = plain_ring();
        let p = ParamScalar::param(&r, "p").unwrap();
        let x = ParamScalar::zero(&r).div(&p).unwrap();
        assert!(x.is_zero());
    }

    #[test]
    fn eq_inverse_cancels() {
        let r = plain_ring();
        let p = ParamScalar::param(&r, "p").unwrap();
        let x = p.mul(&p.inv().unwrap());
        assert!(x.eq_checked(&ParamScalar::one(&r)).unwrap());
        // p vs q with empty ideal: distinct
        let q = ParamScalar::param(&r, "q").unwrap();
        assert!(!p.eq_checked(&q).unwrap());
    }

    #[test]
    fn eq_modulo_constraint_fourth_power() {
        // q^4 == (p^2 q - 2 p^4)^2 in the constrained ring
        let r = d_ring();
        let p = ParamScalar::param(&r, "p").unwrap();
        let q = ParamScalar::param(&r, "q").unwrap();
        let lhs = q.pow(4).unwrap();
        let rhs = p
            .pow(2)
            .unwrap()
            .mul(&q)
            .sub(&p.pow(4).unwrap().mul(&ParamScalar::int(&r, 2)))
            .pow(2)
            .unwrap();
        assert!(lhs.eq_checked(&rhs).unwrap());
    }

    #[test]
    fn mixed_rings_rejected() {
        let r1 = plain_ring();
        let r2 = ParamRing::new(&["a"]);
        let p = ParamScalar::param(&r1, "p").unwrap();
        let a = ParamScalar::param(&r2, "a").unwrap();
        assert_eq!(p.eq_checked(&a), Err(ScalarError::MixedRings));
    }

    #[test]
    fn zero_denominator_detected() {
        let r = d_ring();
        let p = ParamScalar::param(&r, "p").unwrap();
        let q = ParamScalar::param(&r, "q").unwrap();
        // 2p^4 - p^2 q + q^2 reduces to zero: not a legal denominator
        let c = p
            .pow(4)
            .unwrap()
            .mul(&ParamScalar::int(&r, 2))
            .sub(&p.pow(2).unwrap().mul(&q))
            .add(&q.pow(2).unwrap());
        assert!(c.is_zero());
        assert!(matches!(
            ParamScalar::one(&r).div(&c),
            Err(ScalarError::ZeroDenominator)
        ));
    }

    #[test]
    fn root_of_unity_constants() {
        let r = plain_ring();
        assert_eq!(
            root_of_unity_status(&ParamScalar::int(&r, -1), &[]).unwrap(),
            RootOfUnityStatus::Yes(2)
        );
        assert_eq!(
            root_of_unity_status(&ParamScalar::one(&r), &[]).unwrap(),
            RootOfUnityStatus::Yes(1)
        );
        assert_eq!(
            root_of_unity_status(&ParamScalar::int(&r, 2), &[]).unwrap(),
            RootOfUnityStatus::No
        );
        assert!(root_of_unity_status(&ParamScalar::zero(&r), &[]).is_err());
    }

    #[test]
    fn root_of_unity_power_of_assumed() {
        let r = plain_ring();
        let p = ParamScalar::param(&r, "p").unwrap();
        let reg = [Assumption::NotRootOfUnity(p.clone())];
        let x = p.pow(2).unwrap();
        assert_eq!(
            root_of_unity_status(&x, &reg).unwrap(),
            RootOfUnityStatus::No
        );
        // without the assumption: Unknown
        assert_eq!(
            root_of_unity_status(&x, &[]).unwrap(),
            RootOfUnityStatus::Unknown
        );
    }

    #[test]
    fn root_of_unity_multiplicative_independence() {
        let r = ParamRing::new(&["p12", "p13", "p23"]);
        let p12 = ParamScalar::param(&r, "p12").unwrap();
        let p13 = ParamScalar::param(&r, "p13").unwrap();
        let p23 = ParamScalar::param(&r, "p23").unwrap();
        // p12^-2 * p23 * p31 with p31 = p13^-1
        let x = p12
            .pow(-2)
            .unwrap()
            .mul(&p23)
            .mul(&p13.pow(-1).unwrap());
        let reg = [Assumption::MultiplicativelyIndependent(vec![
            "p12".into(),
            "p13".into(),
            "p23".into(),
        ])];
        assert_eq!(
            root_of_unity_status(&x, &reg).unwrap(),
            RootOfUnityStatus::No
        );
        assert_eq!(
            root_of_unity_status(&x, &[]).unwrap(),
            RootOfUnityStatus::Unknown
        );
    }

    #[test]
    fn assumption_on_zero_rejected() {
        let r = plain_ring();
        let a = Assumption::Nonzero(ParamScalar::zero(&r));
        assert_eq!(a.validate(), Err(ScalarError::AssumptionOnZero));
    }

    #[test]
    fn laurent_printing() {
        let r = plain_ring();
        let p = ParamScalar::param(&r, "p").unwrap();
        let q = ParamScalar::param(&r, "q").unwrap();
        let x = p.pow(-3).unwrap().mul(&q.pow(4).unwrap());
        assert_eq!(format_scalar(&x), "p^-3*q^4");
        let y = ParamScalar::int(&r, -2).mul(&q.pow(-1).unwrap());
        assert_eq!(format_scalar(&y), "-2*q^-1");
    }
}
