//! Dense-map multivariate polynomials over the rationals.
//!
//! These back the coefficient field: parameters are commuting
//! indeterminates with optional positive integer weights. Monomials are
//! ordered by weighted total degree first, then lexicographically with
//! earlier-declared parameters taking precedence.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use smallvec::SmallVec;
use std::collections::BTreeMap;
use std::fmt;

pub type Rat = BigRational;

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i64) -> Rat {
    Rat::from(BigInt::from(n))
}

/// Exponent vector with cached weighted degree. The `Ord` instance is the
/// monomial order: weighted degree, then exponents lexicographically
/// (position 0 is the highest-precedence parameter).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Mono {
    wdeg: u64,
    exps: SmallVec<[u16; 6]>,
}

impl Mono {
    pub fn new(exps: &[u16], weights: &[u32]) -> Self {
        debug_assert_eq!(exps.len(), weights.len());
        let wdeg = exps
            .iter()
            .zip(weights)
            .map(|(&e, &w)| e as u64 * w as u64)
            .sum();
        Mono {
            wdeg,
            exps: SmallVec::from_slice(exps),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Mono {
            wdeg: 0,
            exps: SmallVec::from_elem(0, nvars),
        }
    }

    pub fn wdeg(&self) -> u64 {
        self.wdeg
    }

    pub fn exps(&self) -> &[u16] {
        &self.exps
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Mono) -> Mono {
        let exps: SmallVec<[u16; 6]> = self
            .exps
            .iter()
            .zip(&other.exps)
            .map(|(a, b)| a + b)
            .collect();
        Mono {
            wdeg: self.wdeg + other.wdeg,
            exps,
        }
    }

    pub fn divides(&self, other: &Mono) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// other / self; caller must ensure divisibility.
    pub fn div_into(&self, other: &Mono) -> Mono {
        debug_assert!(self.divides(other));
        let exps: SmallVec<[u16; 6]> = other
            .exps
            .iter()
            .zip(&self.exps)
            .map(|(b, a)| b - a)
            .collect();
        Mono {
            wdeg: other.wdeg - self.wdeg,
            exps,
        }
    }

    pub fn lcm(&self, other: &Mono, weights: &[u32]) -> Mono {
        let exps: SmallVec<[u16; 6]> = self
            .exps
            .iter()
            .zip(&other.exps)
            .map(|(a, b)| *a.max(b))
            .collect();
        Mono::new(&exps, weights)
    }

    pub fn coprime(&self, other: &Mono) -> bool {
        self.exps
            .iter()
            .zip(&other.exps)
            .all(|(a, b)| *a == 0 || *b == 0)
    }
}

/// A polynomial: monomial -> nonzero rational coefficient.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct MPoly {
    pub terms: BTreeMap<Mono, Rat>,
}

impl MPoly {
    pub fn zero() -> Self {
        MPoly {
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: Rat, nvars: usize) -> Self {
        let mut p = MPoly::zero();
        if !c.is_zero() {
            p.terms.insert(Mono::one(nvars), c);
        }
        p
    }

    pub fn var(i: usize, nvars: usize, weights: &[u32]) -> Self {
        let mut exps = vec![0u16; nvars];
        exps[i] = 1;
        let mut p = MPoly::zero();
        p.terms.insert(Mono::new(&exps, weights), Rat::one());
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.len() <= 1 && self.terms.keys().all(|m| m.is_one())
    }

    pub fn as_constant(&self) -> Option<Rat> {
        if self.is_zero() {
            return Some(Rat::zero());
        }
        if self.terms.len() == 1 {
            let (m, c) = self.terms.iter().next().unwrap();
            if m.is_one() {
                return Some(c.clone());
            }
        }
        None
    }

    pub fn is_one(&self) -> bool {
        self.as_constant().map_or(false, |c| c.is_one())
    }

    /// Single-term view (used for Laurent-monomial detection).
    pub fn as_monomial(&self) -> Option<(&Mono, &Rat)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }

    pub fn leading(&self) -> Option<(&Mono, &Rat)> {
        self.terms.iter().next_back()
    }

    pub fn wdeg(&self) -> u64 {
        self.leading().map_or(0, |(m, _)| m.wdeg())
    }

    pub fn add_term(&mut self, m: Mono, c: Rat) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                let sum = e.get() + &c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, other: &MPoly) -> MPoly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &MPoly) -> MPoly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }

    pub fn neg(&self) -> MPoly {
        MPoly {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), -c.clone()))
                .collect(),
        }
    }

    pub fn mul(&self, other: &MPoly) -> MPoly {
        let mut out = MPoly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }

    pub fn scale(&self, c: &Rat) -> MPoly {
        if c.is_zero() {
            return MPoly::zero();
        }
        MPoly {
            terms: self
                .terms
                .iter()
                .map(|(m, k)| (m.clone(), k * c))
                .collect(),
        }
    }

    pub fn mul_mono(&self, m: &Mono) -> MPoly {
        MPoly {
            terms: self
                .terms
                .iter()
                .map(|(k, c)| (k.mul(m), c.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, n: u32, nvars: usize) -> MPoly {
        let mut out = MPoly::constant(Rat::one(), nvars);
        for _ in 0..n {
            out = out.mul(self);
        }
        out
    }

    pub fn degree_in(&self, var: usize) -> u16 {
        self.terms.keys().map(|m| m.exps[var]).max().unwrap_or(0)
    }

    pub fn involves(&self, var: usize) -> bool {
        self.terms.keys().any(|m| m.exps[var] > 0)
    }

    /// Substitute polynomials for variables (all at once). `subs[i]` replaces
    /// variable i; the result lives in the ambient ring of the substitutes.
    pub fn substitute(&self, subs: &[MPoly], out_nvars: usize) -> MPoly {
        let mut out = MPoly::zero();
        for (m, c) in &self.terms {
            let mut term = MPoly::constant(c.clone(), out_nvars);
            for (i, &e) in m.exps.iter().enumerate() {
                if e > 0 {
                    term = term.mul(&subs[i].pow(e as u32, out_nvars));
                }
            }
            out = out.add(&term);
        }
        out
    }

    /// Scale so the leading coefficient is 1.
    pub fn monic(&self) -> MPoly {
        match self.leading() {
            None => self.clone(),
            Some((_, c)) => {
                let inv = Rat::one() / c.clone();
                self.scale(&inv)
            }
        }
    }

    /// Denominator-free form with coprime integer coefficients and positive
    /// leading coefficient.
    pub fn primitive(&self) -> MPoly {
        if self.is_zero() {
            return self.clone();
        }
        let mut denom_lcm = BigInt::one();
        for c in self.terms.values() {
            denom_lcm = num_integer::lcm(denom_lcm, c.denom().clone());
        }
        let mut num_gcd = BigInt::zero();
        for c in self.terms.values() {
            let n = c.numer() * &denom_lcm / c.denom();
            num_gcd = num_integer::gcd(num_gcd, n);
        }
        if num_gcd.is_zero() {
            num_gcd = BigInt::one();
        }
        let scale = Rat::new(denom_lcm, num_gcd);
        let mut out = self.scale(&scale);
        if let Some((_, c)) = out.leading() {
            if c.is_negative() {
                out = out.neg();
            }
        }
        out
    }
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = if neg { -c.clone() } else { c.clone() };
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if m.is_one() {
                write!(f, "{}", abs)?;
            } else {
                if !abs.is_one() {
                    write!(f, "{}*", abs)?;
                }
                let mut first = true;
                for (v, &e) in m.exps().iter().enumerate() {
                    if e == 0 {
                        continue;
                    }
                    if !first {
                        write!(f, "*")?;
                    }
                    first = false;
                    if e == 1 {
                        write!(f, "x{}", v)?;
                    } else {
                        write!(f, "x{}^{}", v, e)?;
                    }
                }
            }
        }
        Ok(())
    }
}

/// Reduce `f` by a set of monic reducers: repeatedly rewrite any term
/// divisible by a reducer's lead. Deterministic: attacks the largest
/// reducible term, with the first matching reducer in basis order.
pub fn reduce(f: &MPoly, basis: &[MPoly]) -> MPoly {
    let mut work = f.clone();
    let mut out = MPoly::zero();
    while let Some((m, c)) = work.leading().map(|(m, c)| (m.clone(), c.clone())) {
        let mut hit = None;
        for g in basis {
            if let Some((lm, lc)) = g.leading() {
                if lm.divides(&m) {
                    hit = Some((g.clone(), lm.clone(), lc.clone()));
                    break;
                }
            }
        }
        match hit {
            Some((g, lm, lc)) => {
                let q = lm.div_into(&m);
                let factor = c / lc;
                for (gm, gc) in &g.terms {
                    work.add_term(gm.mul(&q), -(gc * &factor));
                }
            }
            None => {
                work.terms.remove(&m);
                out.add_term(m, c);
            }
        }
    }
    out
}

/// Buchberger completion; returns the reduced monic basis. `max_basis`
/// aborts runaway growth.
pub fn buchberger(
    gens: &[MPoly],
    weights: &[u32],
    max_basis: usize,
) -> Result<Vec<MPoly>, String> {
    let mut basis: Vec<MPoly> = gens
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| g.monic())
        .collect();
    if basis.is_empty() {
        return Ok(basis);
    }
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for i in 0..basis.len() {
        for j in (i + 1)..basis.len() {
            pairs.push((i, j));
        }
    }
    while let Some((i, j)) = pairs.pop() {
        let (li, lj) = (
            basis[i].leading().unwrap().0.clone(),
            basis[j].leading().unwrap().0.clone(),
        );
        if li.coprime(&lj) {
            continue;
        }
        let l = li.lcm(&lj, weights);
        let s = {
            let qi = li.div_into(&l);
            let qj = lj.div_into(&l);
            basis[i].mul_mono(&qi).sub(&basis[j].mul_mono(&qj))
        };
        let r = reduce(&s, &basis);
        if !r.is_zero() {
            basis.push(r.monic());
            let k = basis.len() - 1;
            if basis.len() > max_basis {
                return Err(format!(
                    "constraint completion exceeded basis cap {}",
                    max_basis
                ));
            }
            for t in 0..k {
                pairs.push((t, k));
            }
        }
    }
    let mut reduced: Vec<MPoly> = Vec::new();
    for i in 0..basis.len() {
        let others: Vec<MPoly> = basis
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, g)| g.clone())
            .collect();
        let r = reduce(&basis[i], &others);
        if !r.is_zero() {
            reduced.push(r.monic());
        }
    }
    reduced.sort();
    reduced.dedup();
    Ok(reduced)
}

/// GCD of multivariate polynomials over the rationals, by recursive
/// primitive-PRS on the last variable that actually occurs. Desk-scale
/// inputs only; returns a primitive-normalized result.
pub fn gcd(a: &MPoly, b: &MPoly, weights: &[u32]) -> MPoly {
    if a.is_zero() {
        return b.primitive();
    }
    if b.is_zero() {
        return a.primitive();
    }
    let nvars = weights.len();
    let main = (0..nvars)
        .rev()
        .find(|&v| a.involves(v) || b.involves(v));
    let main = match main {
        Some(v) => v,
        None => return MPoly::constant(Rat::one(), nvars), // both constants
    };
    if !a.involves(main) || !b.involves(main) {
        // main variable occurs in only one input: gcd divides the other's
        // coefficients w.r.t. main
        let (with_var, without) = if a.involves(main) { (a, b) } else { (b, a) };
        let coeffs = coeffs_in(with_var, main, weights);
        let mut g = without.primitive();
        for c in coeffs {
            g = gcd(&g, &c, weights);
            if g.is_one() {
                return g;
            }
        }
        return g;
    }
    // primitive Euclidean loop in `main`
    let ca = content_in(a, main, weights);
    let cb = content_in(b, main, weights);
    let cont = gcd(&ca, &cb, weights);
    let mut f = divide_exact(a, &ca).unwrap_or_else(|| a.clone());
    let mut g = divide_exact(b, &cb).unwrap_or_else(|| b.clone());
    loop {
        if g.is_zero() {
            let res = cont.mul(&f.primitive());
            return res.primitive();
        }
        let r = prem(&f, &g, main, weights);
        f = g;
        g = match r {
            Some(r) if !r.is_zero() => {
                divide_exact(&r, &content_in(&r, main, weights)).unwrap_or(r)
            }
            _ => MPoly::zero(),
        };
    }
}

/// Coefficients of f as a polynomial in `var` (constant in var).
fn coeffs_in(f: &MPoly, var: usize, weights: &[u32]) -> Vec<MPoly> {
    let mut by_deg: BTreeMap<u16, MPoly> = BTreeMap::new();
    for (m, c) in &f.terms {
        let e = m.exps()[var];
        let mut stripped = m.exps().to_vec();
        stripped[var] = 0;
        by_deg
            .entry(e)
            .or_insert_with(MPoly::zero)
            .add_term(Mono::new(&stripped, weights), c.clone());
    }
    by_deg.into_values().collect()
}

/// Content of f w.r.t. `var`: gcd of its coefficients.
fn content_in(f: &MPoly, var: usize, weights: &[u32]) -> MPoly {
    let coeffs = coeffs_in(f, var, weights);
    let mut g = MPoly::zero();
    for c in coeffs {
        g = gcd(&g, &c, weights);
        if g.is_one() {
            return g;
        }
    }
    if g.is_zero() {
        MPoly::constant(Rat::one(), weights.len())
    } else {
        g
    }
}

/// Pseudo-remainder of f by g in `var`.
fn prem(f: &MPoly, g: &MPoly, var: usize, weights: &[u32]) -> Option<MPoly> {
    let dg = g.degree_in(var);
    let lg = leading_coeff_in(g, var, weights);
    let mut r = f.clone();
    let mut guard = 0;
    while !r.is_zero() && r.degree_in(var) >= dg {
        let dr = r.degree_in(var);
        let lr = leading_coeff_in(&r, var, weights);
        // r = lg * r - lr * x^(dr-dg) * g
        let shift = var_power(var, dr - dg, weights);
        r = r.mul(&lg).sub(&lr.mul(&shift).mul(g));
        guard += 1;
        if guard > 10_000 {
            return None;
        }
    }
    Some(r)
}

fn var_power(var: usize, e: u16, weights: &[u32]) -> MPoly {
    let mut exps = vec![0u16; weights.len()];
    exps[var] = e;
    let mut p = MPoly::zero();
    p.terms.insert(Mono::new(&exps, weights), Rat::one());
    p
}

fn leading_coeff_in(f: &MPoly, var: usize, weights: &[u32]) -> MPoly {
    let d = f.degree_in(var);
    let mut out = MPoly::zero();
    for (m, c) in &f.terms {
        if m.exps()[var] == d {
            let mut stripped = m.exps().to_vec();
            stripped[var] = 0;
            out.add_term(Mono::new(&stripped, weights), c.clone());
        }
    }
    out
}

/// Exact division a / b, or None if b does not divide a.
pub fn divide_exact(a: &MPoly, b: &MPoly) -> Option<MPoly> {
    if b.is_zero() {
        return None;
    }
    if a.is_zero() {
        return Some(MPoly::zero());
    }
    let mut rem = a.clone();
    let mut quo = MPoly::zero();
    let (lb, cb) = {
        let (m, c) = b.leading().unwrap();
        (m.clone(), c.clone())
    };
    while let Some((lm, lc)) = rem.leading().map(|(m, c)| (m.clone(), c.clone())) {
        if !lb.divides(&lm) {
            return None;
        }
        let qm = lb.div_into(&lm);
        let qc = lc / &cb;
        quo.add_term(qm.clone(), qc.clone());
        for (bm, bc) in &b.terms {
            rem.add_term(bm.mul(&qm), -(bc * &qc));
        }
    }
    Some(quo)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vars2() -> (MPoly, MPoly) {
        let w = &[1u32, 1];
        (MPoly::var(0, 2, w), MPoly::var(1, 2, w))
    }

    #[test]
    fn arithmetic_basics() {
        let (x, y) = vars2();
        let f = x.mul(&x).sub(&y);
        let g = f.add(&y);
        assert_eq!(g, x.mul(&x));
        assert!(f.sub(&f).is_zero());
    }

    #[test]
    fn reduce_principal() {
        // ideal <x^2 - y>: x^3 reduces to x*y
        let (x, y) = vars2();
        let g = x.mul(&x).sub(&y);
        let basis = buchberger(&[g], &[1, 1], 16).unwrap();
        let f = x.mul(&x).mul(&x);
        let r = reduce(&f, &basis);
        assert_eq!(r, x.mul(&y));
    }

    #[test]
    fn buchberger_finds_syzygy() {
        // <x^2 - 1, x*y - 1>: x - y lies in the ideal
        let (x, y) = vars2();
        let one = MPoly::constant(Rat::one(), 2);
        let g1 = x.mul(&x).sub(&one);
        let g2 = x.mul(&y).sub(&one);
        let basis = buchberger(&[g1, g2], &[1, 1], 16).unwrap();
        let diff = reduce(&x.sub(&y), &basis);
        assert!(diff.is_zero(), "x - y should reduce to 0, got {}", diff);
    }

    #[test]
    fn gcd_univariate() {
        // gcd(x^2 - 1, x^2 - 2x + 1) = x - 1
        let (x, _) = vars2();
        let one = MPoly::constant(Rat::one(), 2);
        let f = x.mul(&x).sub(&one);
        let g = x.mul(&x).sub(&x.scale(&rat_int(2))).add(&one);
        let d = gcd(&f, &g, &[1, 1]);
        let expect = x.sub(&one).primitive();
        assert_eq!(d, expect);
    }

    #[test]
    fn gcd_multivariate() {
        // gcd((x+y)*x, (x+y)*y) = x + y
        let (x, y) = vars2();
        let s = x.add(&y);
        let d = gcd(&s.mul(&x), &s.mul(&y), &[1, 1]);
        assert_eq!(d, s.primitive());
    }

    #[test]
    fn exact_division() {
        let (x, y) = vars2();
        let s = x.add(&y);
        let p = s.mul(&s);
        assert_eq!(divide_exact(&p, &s), Some(s.clone()));
        assert_eq!(divide_exact(&p, &x.sub(&y)), None);
    }
}
