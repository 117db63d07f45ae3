//! The conjugation action on formal coaction coefficients and the
//! vanishing patterns it forces.
//!
//! A degree-one matrix M acts on the n^2 formal symbols y_ij by
//! conjugation with its transpose; in coefficient-matrix form the action
//! is C -> M C M^{-1}. When the action has finite order (or is the
//! identity), unboundedly growing unipotent contributions and
//! non-root-of-unity eigenvalue ratios force entries to vanish, and the
//! primitive-element rule clears what remains.

use crate::linalg::{LinalgError, Matrix, PivotLog};
use crate::scalars::{
    root_of_unity_status, Assumption, ParamRing, ParamScalar, RootOfUnityStatus,
    ScalarError,
};
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum HopfError {
    #[error("matrix is singular over the scalar field")]
    SingularMatrix,
    #[error("matrix must be triangular in the given basis")]
    NotTriangular,
    #[error("cannot decide eigenvalue equality for the pair ({0}, {1})")]
    UndecidedEigenvalueEquality(String, String),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// Conjugation action of a degree-one matrix on the symbol space.
#[derive(Debug, Clone)]
pub struct ConjugationMap {
    ring: Arc<ParamRing>,
    n: usize,
    m: Matrix,
    w: Matrix,
    pub required_nonzero: Vec<ParamScalar>,
}

pub fn conjugation_map(m: Matrix) -> Result<ConjugationMap, HopfError> {
    let n = m.rows;
    assert_eq!(m.rows, m.cols);
    let ring = m.ring().clone();
    let mut log = PivotLog::default();
    let w = m.inverse(&mut log).map_err(|e| match e {
        LinalgError::SingularMatrix => HopfError::SingularMatrix,
        other => HopfError::Linalg(other),
    })?;
    Ok(ConjugationMap {
        ring,
        n,
        m,
        w,
        required_nonzero: log.pivots,
    })
}

impl ConjugationMap {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn ring(&self) -> &Arc<ParamRing> {
        &self.ring
    }

    pub fn matrix(&self) -> &Matrix {
        &self.m
    }

    /// Action on an element written as a coefficient matrix.
    pub fn act(&self, c: &Matrix) -> Matrix {
        self.m.mul(c).mul(&self.w)
    }

    /// Image of the basis symbol y_ij as a coefficient matrix.
    pub fn act_symbol(&self, i: usize, j: usize) -> Matrix {
        let mut e = Matrix::zero(&self.ring, self.n, self.n);
        e.set(i, j, ParamScalar::one(&self.ring));
        self.act(&e)
    }

    /// Commuting diagonal and unipotent factors M = D U; fails when a
    /// unipotent entry connects distinct eigenvalues.
    fn du_factorization(&self) -> Result<(Vec<ParamScalar>, Matrix), HopfError> {
        if !self.m.is_lower_triangular() && !self.m.is_upper_triangular() {
            return Err(HopfError::NotTriangular);
        }
        let n = self.n;
        let diag: Vec<ParamScalar> =
            (0..n).map(|i| self.m.get(i, i).clone()).collect();
        let mut u = Matrix::zero(&self.ring, n, n);
        for i in 0..n {
            let dinv = diag[i].inv().map_err(|_| HopfError::SingularMatrix)?;
            for j in 0..n {
                u.set(i, j, self.m.get(i, j).mul(&dinv));
            }
        }
        for i in 0..n {
            for j in 0..n {
                if i != j
                    && !u.get(i, j).is_zero()
                    && !diag[i].eq_checked(&diag[j])?
                {
                    return Err(HopfError::UndecidedEigenvalueEquality(
                        format!("{}", diag[i]),
                        format!("{}", diag[j]),
                    ));
                }
            }
        }
        Ok((diag, u))
    }
}

/// A polynomial in the formal exponent with scalar coefficients
/// (coefficient k belongs to n^k).
pub type NPoly = Vec<ParamScalar>;

fn npoly_is_zero(p: &NPoly) -> bool {
    p.iter().all(|c| c.is_zero())
}

fn npoly_add(a: &NPoly, b: &NPoly, ring: &Arc<ParamRing>) -> NPoly {
    let len = a.len().max(b.len());
    (0..len)
        .map(|k| {
            let x = a.get(k).cloned().unwrap_or_else(|| ParamScalar::zero(ring));
            let y = b.get(k).cloned().unwrap_or_else(|| ParamScalar::zero(ring));
            x.add(&y)
        })
        .collect()
}

fn npoly_mul(a: &NPoly, b: &NPoly, ring: &Arc<ParamRing>) -> NPoly {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![ParamScalar::zero(ring); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] = out[i + j].add(&x.mul(y));
        }
    }
    out
}

/// Evaluate at a scalar value of the exponent.
fn npoly_eval(p: &NPoly, v: &ParamScalar, ring: &Arc<ParamRing>) -> ParamScalar {
    let mut out = ParamScalar::zero(ring);
    let mut pw = ParamScalar::one(ring);
    for c in p {
        out = out.add(&c.mul(&pw));
        pw = pw.mul(v);
    }
    out
}

/// The binomial coefficient C(n, k) as a polynomial in n.
fn binomial_poly(k: usize, ring: &Arc<ParamRing>) -> NPoly {
    // prod_{i=0..k-1} (n - i) / k!
    let mut p: NPoly = vec![ParamScalar::one(ring)];
    for i in 0..k {
        let shift = ParamScalar::int(ring, -(i as i64));
        // multiply by (n - i)
        let mut next = vec![ParamScalar::zero(ring); p.len() + 1];
        for (d, c) in p.iter().enumerate() {
            next[d] = next[d].add(&c.mul(&shift));
            next[d + 1] = next[d + 1].add(c);
        }
        p = next;
    }
    let mut fact = 1i64;
    for i in 1..=k as i64 {
        fact *= i;
    }
    let inv = ParamScalar::rational(ring, 1, fact);
    p.iter().map(|c| c.mul(&inv)).collect()
}

/// One group of terms of a symbolic power: ratio^n times polynomial
/// coefficients on each target symbol.
#[derive(Debug, Clone)]
pub struct ClosedFormGroup {
    pub ratio: ParamScalar,
    /// coefficients[s][t] is the n-polynomial on target symbol y_st
    pub coefficients: Vec<Vec<NPoly>>,
}

/// eta^n applied to one symbol, as a sum over eigenvalue-ratio groups.
#[derive(Debug, Clone)]
pub struct ClosedForm {
    pub entry: (usize, usize),
    pub groups: Vec<ClosedFormGroup>,
}

impl ClosedForm {
    pub fn format(&self) -> String {
        let mut parts: Vec<String> = Vec::new();
        for g in &self.groups {
            let ratio_is_one = g.ratio.is_one();
            for (s, row) in g.coefficients.iter().enumerate() {
                for (t, p) in row.iter().enumerate() {
                    if npoly_is_zero(p) {
                        continue;
                    }
                    let mut coeff_parts: Vec<String> = Vec::new();
                    for (k, c) in p.iter().enumerate() {
                        if c.is_zero() {
                            continue;
                        }
                        let cs = crate::scalars::format_scalar(c);
                        let body = match k {
                            0 => cs,
                            1 if cs == "1" => "n".to_string(),
                            1 => format!("n*{}", cs),
                            _ if cs == "1" => format!("n^{}", k),
                            _ => format!("n^{}*{}", k, cs),
                        };
                        coeff_parts.push(body);
                    }
                    let coeff = if coeff_parts.len() == 1 {
                        coeff_parts.pop().unwrap()
                    } else {
                        format!("({})", coeff_parts.join(" + "))
                    };
                    let prefix = if ratio_is_one {
                        String::new()
                    } else {
                        format!("({})^n*", crate::scalars::format_scalar(&g.ratio))
                    };
                    let body = if coeff == "1" {
                        format!("{}y{}{}", prefix, s + 1, t + 1)
                    } else {
                        format!("{}{}*y{}{}", prefix, coeff, s + 1, t + 1)
                    };
                    parts.push(body);
                }
            }
        }
        if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join(" + ")
        }
    }
}

/// Closed form of eta^n on y_(i,j) from the commuting diagonal-unipotent
/// factorization, verified by the inductive identity with the exponent
/// adjoined as a fresh parameter.
pub fn power_closed_form(
    c: &ConjugationMap,
    entry: (usize, usize),
) -> Result<ClosedForm, HopfError> {
    let (diag, u) = c.du_factorization()?;
    let n = c.n;
    let ring = &c.ring;
    // nilpotent part and its powers
    let mut npowers: Vec<Matrix> = vec![Matrix::identity(ring, n)];
    let mut nil = u.clone();
    for i in 0..n {
        nil.set(i, i, ParamScalar::zero(ring));
    }
    let mut acc = Matrix::identity(ring, n);
    for _ in 1..n {
        acc = acc.mul(&nil);
        npowers.push(acc.clone());
    }
    // U^n = sum_k C(n,k) N^k ; U^{-n} = sum_k C(-n,k) N^k
    let zero_poly = || vec![ParamScalar::zero(ring)];
    let mut upow: Vec<Vec<NPoly>> = vec![vec![zero_poly(); n]; n];
    let mut uneg: Vec<Vec<NPoly>> = vec![vec![zero_poly(); n]; n];
    for (k, nk) in npowers.iter().enumerate() {
        let cnk = binomial_poly(k, ring);
        // C(-n,k) = (-1)^k C(n+k-1, k): substitute n -> -n in C(n,k)
        let cneg: NPoly = cnk
            .iter()
            .enumerate()
            .map(|(d, coeff)| {
                if d % 2 == 1 {
                    coeff.neg()
                } else {
                    coeff.clone()
                }
            })
            .collect();
        for s in 0..n {
            for t in 0..n {
                if nk.get(s, t).is_zero() {
                    continue;
                }
                let term: NPoly = cnk.iter().map(|x| x.mul(nk.get(s, t))).collect();
                upow[s][t] = npoly_add(&upow[s][t], &term, ring);
                let termn: NPoly =
                    cneg.iter().map(|x| x.mul(nk.get(s, t))).collect();
                uneg[s][t] = npoly_add(&uneg[s][t], &termn, ring);
            }
        }
    }
    let (i, j) = entry;
    // eta^n(y_ij) = sum_{s,t} (d_s/d_t)^n (U^n)_{s i} (U^{-n})_{j t} y_st
    let mut groups: Vec<ClosedFormGroup> = Vec::new();
    for s in 0..n {
        for t in 0..n {
            let p = npoly_mul(&upow[s][i], &uneg[j][t], ring);
            if npoly_is_zero(&p) {
                continue;
            }
            let ratio = diag[s].div(&diag[t])?;
            let slot = groups
                .iter_mut()
                .find(|g| g.ratio.eq_checked(&ratio).unwrap_or(false));
            let g = match slot {
                Some(g) => g,
                None => {
                    groups.push(ClosedFormGroup {
                        ratio,
                        coefficients: vec![vec![vec![]; n]; n],
                    });
                    groups.last_mut().unwrap()
                }
            };
            g.coefficients[s][t] = p;
        }
    }
    let cf = ClosedForm { entry, groups };
    if !verify_closed_form(c, &cf)? {
        // the factorization argument guarantees this; a failure means the
        // inputs violated a precondition
        return Err(HopfError::NotTriangular);
    }
    Ok(cf)
}

/// Inductive check eta(expr(n)) = expr(n+1), with the exponent adjoined
/// as a fresh commuting parameter and one identity per ratio group.
pub fn verify_closed_form(
    c: &ConjugationMap,
    cf: &ClosedForm,
) -> Result<bool, HopfError> {
    let ring = &c.ring;
    let ext = ring.extend(&["n_exp"]);
    let nu = ParamScalar::param(&ext, "n_exp")?;
    let nu1 = nu.add(&ParamScalar::one(&ext));
    let n = c.n;
    let m_ext = {
        let mut m = Matrix::zero(&ext, n, n);
        for i in 0..n {
            for j in 0..n {
                m.set(i, j, c.m.get(i, j).lift_to(&ext));
            }
        }
        m
    };
    let mut log = PivotLog::default();
    let w_ext = m_ext.inverse(&mut log)?;
    for g in &cf.groups {
        // V_r(nu) as a coefficient matrix over the extended ring
        let mut v_nu = Matrix::zero(&ext, n, n);
        let mut v_nu1 = Matrix::zero(&ext, n, n);
        for s in 0..n {
            for t in 0..n {
                let p: NPoly = g.coefficients[s][t]
                    .iter()
                    .map(|x| x.lift_to(&ext))
                    .collect();
                v_nu.set(s, t, npoly_eval(&p, &nu, &ext));
                v_nu1.set(s, t, npoly_eval(&p, &nu1, &ext));
            }
        }
        let lhs = m_ext.mul(&v_nu).mul(&w_ext);
        let r_ext = g.ratio.lift_to(&ext);
        for s in 0..n {
            for t in 0..n {
                let rhs = r_ext.mul(v_nu1.get(s, t));
                if !lhs.get(s, t).eq_checked(&rhs)? {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// Pattern-derivation mode: finite order of the conjugation action, or
/// the action being the identity outright.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PatternMode {
    FiniteOrder,
    Identity,
}

/// State of one coaction-matrix entry.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EntryState {
    Zero,
    Grouplike(usize),
    Free,
}

/// The derived vanishing pattern of the coaction matrix.
#[derive(Debug, Clone)]
pub struct CoactionPattern {
    pub n: usize,
    pub states: Vec<Vec<EntryState>>,
    /// Entries whose eigenvalue-ratio status stayed Unknown.
    pub undecided: Vec<(usize, usize)>,
    pub assumptions_used: Vec<String>,
}

impl CoactionPattern {
    pub fn grid_strings(&self) -> Vec<Vec<String>> {
        self.states
            .iter()
            .map(|row| {
                row.iter()
                    .map(|s| match s {
                        EntryState::Zero => "0".to_string(),
                        EntryState::Grouplike(c) => format!("g{}", c),
                        EntryState::Free => "?".to_string(),
                    })
                    .collect()
            })
            .collect()
    }

    pub fn is_zero(&self, i: usize, j: usize) -> bool {
        self.states[i][j] == EntryState::Zero
    }

    pub fn off_diagonal_all_zero(&self) -> bool {
        (0..self.n).all(|i| {
            (0..self.n).all(|j| i == j || self.is_zero(i, j))
        })
    }

    pub fn diagonal_class(&self, i: usize) -> Option<usize> {
        match self.states[i][i] {
            EntryState::Grouplike(c) => Some(c),
            _ => None,
        }
    }
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind((0..n).collect())
    }
    fn find(&mut self, i: usize) -> usize {
        if self.0[i] != i {
            let r = self.find(self.0[i]);
            self.0[i] = r;
        }
        self.0[i]
    }
    fn union(&mut self, i: usize, j: usize) {
        let (a, b) = (self.find(i), self.find(j));
        if a != b {
            self.0[a.max(b)] = a.min(b);
        }
    }
}

/// Derive the vanishing pattern forced by the mode.
///
/// Rule 1: with finite order, the unipotent factor must act trivially in
/// the quotient, so the whole image of (conj_U - id) vanishes (for the
/// identity mode, the image of (eta - id) vanishes). Rule 2: entries whose
/// eigenvalue ratio is certified not a root of unity (finite-order mode)
/// vanish. Rule 3: once an off-diagonal entry is primitive-shaped between
/// equal grouplikes, it vanishes. Rules iterate to a fixpoint.
pub fn derive_pattern(
    c: &ConjugationMap,
    mode: PatternMode,
    assumptions: &[Assumption],
) -> Result<CoactionPattern, HopfError> {
    let n = c.n;
    let ring = &c.ring;
    let (diag, u) = c.du_factorization()?;
    let mut zero = vec![vec![false; n]; n];
    let mut classes = UnionFind::new(n);
    let mut undecided = Vec::new();
    let mut assumptions_used: Vec<String> = Vec::new();

    // Rule 1: vanishing linear combinations from the unipotent part
    let mut relations: Vec<Vec<ParamScalar>> = Vec::new();
    let source = match mode {
        PatternMode::FiniteOrder => {
            // conj by U only
            let cu = conjugation_map(u.clone())?;
            cu
        }
        PatternMode::Identity => c.clone(),
    };
    for i in 0..n {
        for j in 0..n {
            let img = source.act_symbol(i, j);
            let mut row = vec![ParamScalar::zero(ring); n * n];
            for s in 0..n {
                for t in 0..n {
                    let mut v = img.get(s, t).clone();
                    if s == i && t == j {
                        v = v.sub(&ParamScalar::one(ring));
                    }
                    row[s * n + t] = v;
                }
            }
            if row.iter().any(|x| !x.is_zero()) {
                relations.push(row);
            }
        }
    }

    // Rule 2: eigenvalue ratios
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let ratio = diag[i].div(&diag[j])?;
            match mode {
                PatternMode::FiniteOrder => {
                    match root_of_unity_status(&ratio, assumptions)? {
                        RootOfUnityStatus::No => {
                            zero[i][j] = true;
                            assumptions_used.push(format!(
                                "{} not a root of unity",
                                ratio
                            ));
                        }
                        RootOfUnityStatus::Yes(_) => {}
                        RootOfUnityStatus::Unknown => {
                            if !ratio.is_one() {
                                undecided.push((i, j));
                            }
                        }
                    }
                }
                PatternMode::Identity => {
                    if !ratio.is_one() {
                        zero[i][j] = true;
                    }
                }
            }
        }
    }

    // iterate: extract zeros and diagonal equalities from the relation
    // space, certify grouplikes, apply the primitive rule
    let mut grouplike = vec![false; n];
    loop {
        let mut changed = false;
        // substitute known zeros into relations
        for row in relations.iter_mut() {
            for (idx, v) in row.iter_mut().enumerate() {
                if zero[idx / n][idx % n] && !v.is_zero() {
                    *v = ParamScalar::zero(ring);
                    changed = true;
                }
            }
        }
        relations.retain(|row| row.iter().any(|x| !x.is_zero()));
        // row-reduce the relation space
        if !relations.is_empty() {
            let mat = Matrix::from_rows(ring, relations.clone());
            let mut log = PivotLog::default();
            let reduced = row_reduce(&mat, &mut log);
            relations = reduced;
        }
        for row in &relations {
            let support: Vec<usize> = row
                .iter()
                .enumerate()
                .filter(|(_, v)| !v.is_zero())
                .map(|(k, _)| k)
                .collect();
            match support.as_slice() {
                [k] => {
                    let (i, j) = (k / n, k % n);
                    if i != j && !zero[i][j] {
                        zero[i][j] = true;
                        changed = true;
                    }
                }
                [k1, k2] => {
                    let (i1, j1) = (k1 / n, k1 % n);
                    let (i2, j2) = (k2 / n, k2 % n);
                    // c*(y_aa - y_bb) = 0 merges diagonal classes
                    if i1 == j1 && i2 == j2 {
                        let sum = row[*k1].add(&row[*k2]);
                        if sum.is_zero() && classes.find(i1) != classes.find(i2)
                        {
                            classes.union(i1, i2);
                            changed = true;
                        }
                    }
                }
                _ => {}
            }
        }
        // grouplike certification
        for i in 0..n {
            if !grouplike[i] {
                let ok = (0..n)
                    .all(|k| k == i || zero[i][k] || zero[k][i]);
                if ok {
                    grouplike[i] = true;
                    changed = true;
                }
            }
        }
        // primitive rule
        for i in 0..n {
            for j in 0..n {
                if i == j || zero[i][j] {
                    continue;
                }
                let middle_clear = (0..n)
                    .filter(|k| *k != i && *k != j)
                    .all(|k| zero[i][k] || zero[k][j]);
                if middle_clear
                    && grouplike[i]
                    && grouplike[j]
                    && classes.find(i) == classes.find(j)
                {
                    zero[i][j] = true;
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }

    let mut states = vec![vec![EntryState::Free; n]; n];
    for i in 0..n {
        for j in 0..n {
            if i == j {
                states[i][j] = if grouplike[i] {
                    EntryState::Grouplike(classes.find(i))
                } else {
                    EntryState::Free
                };
            } else if zero[i][j] {
                states[i][j] = EntryState::Zero;
            }
        }
    }
    undecided.retain(|&(i, j)| !zero[i][j]);
    assumptions_used.sort();
    assumptions_used.dedup();
    Ok(CoactionPattern {
        n,
        states,
        undecided,
        assumptions_used,
    })
}

/// Row-reduced copies of the nonzero rows.
fn row_reduce(m: &Matrix, log: &mut PivotLog) -> Vec<Vec<ParamScalar>> {
    let (rows, cols) = (m.rows, m.cols);
    let ring = m.ring().clone();
    let mut a: Vec<Vec<ParamScalar>> = (0..rows)
        .map(|i| (0..cols).map(|j| m.get(i, j).clone()).collect())
        .collect();
    let mut row = 0usize;
    for col in 0..cols {
        let pr = (row..rows).find(|&r| !a[r][col].is_zero());
        let pr = match pr {
            Some(r) => r,
            None => continue,
        };
        a.swap(row, pr);
        let p = a[row][col].clone();
        log.record(&p);
        let pinv = p.inv().expect("pivot nonzero");
        for v in a[row].iter_mut() {
            *v = v.mul(&pinv);
        }
        for r in 0..rows {
            if r == row || a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col].clone();
            for j in 0..cols {
                let v = a[r][j].sub(&f.mul(&a[row][j]));
                a[r][j] = v;
            }
        }
        row += 1;
        if row == rows {
            break;
        }
    }
    a.into_iter()
        .filter(|r| r.iter().any(|v| !v.is_zero()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    /// M for a map t1 -> a t1, t2 -> a t2 + b t1, t3 -> a^-2 t3.
    fn shear_matrix(ring: &Arc<ParamRing>) -> Matrix {
        let a = ParamScalar::param(ring, "a").unwrap();
        let b = ParamScalar::param(ring, "b").unwrap();
        let mut m = Matrix::zero(ring, 3, 3);
        m.set(0, 0, a.clone());
        m.set(1, 0, b);
        m.set(1, 1, a.clone());
        m.set(2, 2, a.pow(-2).unwrap());
        m
    }

    /// M for the full unipotent map t1 -> t1, t2 -> t2 + a t1,
    /// t3 -> t3 + a t2 + a^2 t1.
    fn unipotent_matrix(ring: &Arc<ParamRing>) -> Matrix {
        let a = ParamScalar::param(ring, "a").unwrap();
        let one = ParamScalar::one(ring);
        let mut m = Matrix::identity(ring, 3);
        m.set(1, 0, a.clone());
        m.set(2, 0, a.mul(&a));
        m.set(2, 1, a);
        let _ = one;
        m
    }

    #[test]
    fn identity_matrix_acts_trivially() {
        let ring = ParamRing::new(&["a", "b"]);
        let c = conjugation_map(Matrix::identity(&ring, 3)).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                let img = c.act_symbol(i, j);
                for s in 0..3 {
                    for t in 0..3 {
                        let expect = (s, t) == (i, j);
                        assert_eq!(!img.get(s, t).is_zero(), expect);
                    }
                }
            }
        }
    }

    #[test]
    fn shear_images_match_known_table() {
        // y11 -> y11 + a^-1 b y21 and y32 -> -a^-4 b y31 + a^-3 y32
        let ring = ParamRing::new(&["a", "b"]);
        let a = ParamScalar::param(&ring, "a").unwrap();
        let b = ParamScalar::param(&ring, "b").unwrap();
        let c = conjugation_map(shear_matrix(&ring)).unwrap();
        let img = c.act_symbol(0, 0);
        assert!(img.get(0, 0).is_one());
        assert!(img
            .get(1, 0)
            .eq_checked(&b.div(&a).unwrap())
            .unwrap());
        let img32 = c.act_symbol(2, 1);
        assert!(img32
            .get(2, 0)
            .eq_checked(&b.mul(&a.pow(-4).unwrap()).neg())
            .unwrap());
        assert!(img32
            .get(2, 1)
            .eq_checked(&a.pow(-3).unwrap())
            .unwrap());
    }

    #[test]
    fn diagonal_power_closed_form() {
        let ring = ParamRing::new(&["l1", "l2"]);
        let l1 = ParamScalar::param(&ring, "l1").unwrap();
        let l2 = ParamScalar::param(&ring, "l2").unwrap();
        let mut m = Matrix::zero(&ring, 2, 2);
        m.set(0, 0, l1.clone());
        m.set(1, 1, l2.clone());
        let c = conjugation_map(m).unwrap();
        let cf = power_closed_form(&c, (0, 1)).unwrap();
        assert_eq!(cf.groups.len(), 1);
        assert!(cf.groups[0]
            .ratio
            .eq_checked(&l1.div(&l2).unwrap())
            .unwrap());
        assert_eq!(cf.format(), "(l1*l2^-1)^n*y12");
    }

    #[test]
    fn shear_power_of_y11() {
        // eta^n(y11) = y11 + n a^-1 b y21
        let ring = ParamRing::new(&["a", "b"]);
        let c = conjugation_map(shear_matrix(&ring)).unwrap();
        let cf = power_closed_form(&c, (0, 0)).unwrap();
        assert_eq!(cf.format(), "y11 + n*a^-1*b*y21");
    }

    #[test]
    fn unipotent_power_of_y32() {
        // eta^n(y32) = y32 - n a y31
        let ring = ParamRing::new(&["a"]);
        let c = conjugation_map(unipotent_matrix(&ring)).unwrap();
        let cf = power_closed_form(&c, (2, 1)).unwrap();
        assert_eq!(cf.format(), "-n*a*y31 + y32");
    }

    #[test]
    fn pattern_diagonal_generic() {
        let ring = ParamRing::new(&["l1", "l2", "l3"]);
        let ls: Vec<ParamScalar> = (1..=3)
            .map(|i| ParamScalar::param(&ring, &format!("l{}", i)).unwrap())
            .collect();
        let mut m = Matrix::zero(&ring, 3, 3);
        for i in 0..3 {
            m.set(i, i, ls[i].clone());
        }
        let c = conjugation_map(m).unwrap();
        let reg = [Assumption::MultiplicativelyIndependent(vec![
            "l1".into(),
            "l2".into(),
            "l3".into(),
        ])];
        let pat = derive_pattern(&c, PatternMode::FiniteOrder, &reg).unwrap();
        assert!(pat.off_diagonal_all_zero());
        // three distinct grouplike classes
        let classes: Vec<usize> =
            (0..3).map(|i| pat.diagonal_class(i).unwrap()).collect();
        assert_eq!(classes, vec![0, 1, 2]);
    }

    #[test]
    fn pattern_shear_not_root_of_unity() {
        // off-diagonal zero and y11 = y22
        let ring = ParamRing::new(&["a", "b"]);
        let a = ParamScalar::param(&ring, "a").unwrap();
        let c = conjugation_map(shear_matrix(&ring)).unwrap();
        let reg = [Assumption::NotRootOfUnity(a)];
        let pat = derive_pattern(&c, PatternMode::FiniteOrder, &reg).unwrap();
        assert!(pat.off_diagonal_all_zero());
        assert_eq!(pat.diagonal_class(0), pat.diagonal_class(1));
        assert_ne!(pat.diagonal_class(0), pat.diagonal_class(2));
    }

    #[test]
    fn pattern_unipotent_full_merge() {
        // off-diagonal zero, all diagonal entries equal
        let ring = ParamRing::new(&["a"]);
        let c = conjugation_map(unipotent_matrix(&ring)).unwrap();
        let pat = derive_pattern(&c, PatternMode::FiniteOrder, &[]).unwrap();
        assert!(pat.off_diagonal_all_zero());
        assert_eq!(pat.diagonal_class(0), Some(0));
        assert_eq!(pat.diagonal_class(1), Some(0));
        assert_eq!(pat.diagonal_class(2), Some(0));
    }

    #[test]
    fn pattern_identity_mode_with_cube_not_one() {
        // shear matrix, identity mode: ratios a^3 and a^-3 appear; when
        // a^3 != 1 symbolically every off-diagonal entry dies
        let ring = ParamRing::new(&["a", "b"]);
        let c = conjugation_map(shear_matrix(&ring)).unwrap();
        let pat = derive_pattern(&c, PatternMode::Identity, &[]).unwrap();
        assert!(pat.off_diagonal_all_zero());
    }

    #[test]
    fn monotone_in_assumptions() {
        // without assumptions the shear pattern leaves ratio-a^3 entries
        // free; adding the assumption only turns Free into Zero
        let ring = ParamRing::new(&["a", "b"]);
        let a = ParamScalar::param(&ring, "a").unwrap();
        let c = conjugation_map(shear_matrix(&ring)).unwrap();
        let without = derive_pattern(&c, PatternMode::FiniteOrder, &[]).unwrap();
        let with = derive_pattern(
            &c,
            PatternMode::FiniteOrder,
            &[Assumption::NotRootOfUnity(a)],
        )
        .unwrap();
        for i in 0..3 {
            for j in 0..3 {
                if without.is_zero(i, j) {
                    assert!(with.is_zero(i, j), "({}, {}) regressed", i, j);
                }
            }
        }
        assert!(!without.off_diagonal_all_zero());
        assert!(with.off_diagonal_all_zero());
    }

    #[test]
    fn multiplicativity_on_random_triangular_pairs() {
        use rand::rngs::StdRng;
        use rand::{Rng, SeedableRng};
        let ring = ParamRing::new(&[]);
        let mut rng = StdRng::seed_from_u64(7);
        for _ in 0..10 {
            let mut m1 = Matrix::identity(&ring, 3);
            let mut m2 = Matrix::identity(&ring, 3);
            for m in [&mut m1, &mut m2] {
                for i in 0..3 {
                    for j in 0..=i {
                        let v = if i == j {
                            rng.gen_range(1..5)
                        } else {
                            rng.gen_range(-3..4)
                        };
                        m.set(i, j, ParamScalar::int(&ring, v));
                    }
                }
            }
            let c1 = conjugation_map(m1.clone()).unwrap();
            let c2 = conjugation_map(m2.clone()).unwrap();
            let c12 = conjugation_map(m1.mul(&m2)).unwrap();
            for i in 0..3 {
                for j in 0..3 {
                    let lhs = c12.act_symbol(i, j);
                    let rhs = c1.act(&c2.act_symbol(i, j));
                    for s in 0..3 {
                        for t in 0..3 {
                            assert!(lhs
                                .get(s, t)
                                .eq_checked(rhs.get(s, t))
                                .unwrap());
                        }
                    }
                }
            }
        }
    }
}
