//! Graded twists (Z and Z^2 twisting systems, left and right
//! conventions), the twist identity for distinguished automorphisms of
//! twisted algebras, and the quotient rule for passing such automorphisms
//! to quotients by normal elements.

use crate::algebras::{
    check_morphism, is_graded_automorphism, normalizing_map, AlgebraError, GradedMap,
    Normality, Presentation,
};
use crate::linalg::PivotLog;
use crate::ncpoly::rewrite::RewriteError;
use crate::ncpoly::NcPoly;
use crate::scalars::{ParamScalar, ScalarError};
use std::collections::BTreeMap;
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum TwistError {
    #[error("a scaling-vector entry is zero")]
    ZeroHdetEntry,
    #[error("element is not normal")]
    NotNormal,
    #[error("element is not an eigenvector of the given automorphism")]
    NotMuEigenvector,
    #[error("twisting system needs {expected} maps (one per grading coordinate), got {got}")]
    SystemRankMismatch { expected: usize, got: usize },
    #[error("twisting map {0} is not a graded automorphism")]
    NotAutomorphism(usize),
    #[error("twisting maps {0} and {1} do not commute")]
    NonCommutingSystem(usize, usize),
    #[error("degree-one determinant is only meaningful over a commutative polynomial source")]
    HdetNeedsCommutativeSource,
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Rewrite(#[from] RewriteError),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

/// Which side the twisting automorphism acts on in the deformed product.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TwistConvention {
    Left,
    Right,
}

/// A twisting system: one graded automorphism per grading coordinate,
/// pairwise commuting.
#[derive(Debug, Clone)]
pub struct TwistData {
    source: Arc<Presentation>,
    system: Vec<GradedMap>,
    convention: TwistConvention,
}

impl TwistData {
    pub fn new(
        source: &Arc<Presentation>,
        system: Vec<GradedMap>,
        convention: TwistConvention,
    ) -> Result<TwistData, TwistError> {
        let rank = source.gens().rank();
        if system.len() != rank {
            return Err(TwistError::SystemRankMismatch {
                expected: rank,
                got: system.len(),
            });
        }
        for (i, s) in system.iter().enumerate() {
            if is_graded_automorphism(s)?.is_none() {
                return Err(TwistError::NotAutomorphism(i));
            }
        }
        for i in 0..system.len() {
            for j in (i + 1)..system.len() {
                if !system[i].commutes_with(&system[j])? {
                    return Err(TwistError::NonCommutingSystem(i, j));
                }
            }
        }
        Ok(TwistData {
            source: source.clone(),
            system,
            convention,
        })
    }

    pub fn source(&self) -> &Arc<Presentation> {
        &self.source
    }

    pub fn system(&self) -> &[GradedMap] {
        &self.system
    }

    pub fn convention(&self) -> TwistConvention {
        self.convention
    }

    /// The product map sigma_1^{v_1} ... sigma_r^{v_r}.
    pub fn power(&self, v: &[i32]) -> Result<GradedMap, TwistError> {
        let mut out = GradedMap::identity(&self.source);
        for (s, &e) in self.system.iter().zip(v) {
            out = out.compose(&s.pow(e as i64)?)?;
        }
        Ok(out)
    }
}

/// Relations of the graded twist. Each relation word is transformed
/// letterwise: under the right convention letter k picks up
/// sigma^{-(multidegree of the prefix before it)}, under the left
/// convention sigma^{-(multidegree of the suffix after it)}; the result is
/// expanded multilinearly and completed to the source's budget.
pub fn twist_presentation(
    t: &TwistData,
    label: &str,
) -> Result<Arc<Presentation>, TwistError> {
    let src = t.source();
    let gens = src.gens();
    let rank = gens.rank();
    let mut cache: BTreeMap<Vec<i32>, GradedMap> = BTreeMap::new();
    let mut power = |v: Vec<i32>,
                     t: &TwistData|
     -> Result<GradedMap, TwistError> {
        if let Some(m) = cache.get(&v) {
            return Ok(m.clone());
        }
        let m = t.power(&v)?;
        cache.insert(v, m.clone());
        Ok(m)
    };
    let mut new_relations = Vec::new();
    for rel in src.relations() {
        let mut out = NcPoly::zero();
        for (w, c) in &rel.terms {
            let letters: Vec<usize> = w
                .letters()
                .iter()
                .map(|&o| gens.decl_of_ordinal(o))
                .collect();
            let mut transformed = NcPoly::term(gens.empty_word(), c.clone());
            for (k, &g) in letters.iter().enumerate() {
                let context: Vec<i32> = match t.convention() {
                    TwistConvention::Right => {
                        let mut d = vec![0i32; rank];
                        for &h in &letters[..k] {
                            for (x, &dx) in gens.multidegree(h).iter().enumerate() {
                                d[x] += dx;
                            }
                        }
                        d
                    }
                    TwistConvention::Left => {
                        let mut d = vec![0i32; rank];
                        for &h in &letters[k + 1..] {
                            for (x, &dx) in gens.multidegree(h).iter().enumerate() {
                                d[x] += dx;
                            }
                        }
                        d
                    }
                };
                let neg: Vec<i32> = context.iter().map(|&x| -x).collect();
                let sigma = power(neg, t)?;
                transformed = transformed.mul(&sigma.images()[g]);
            }
            out = out.add(&transformed);
        }
        new_relations.push(out);
    }
    Ok(Presentation::new(
        label,
        src.ring(),
        gens,
        new_relations,
        src.assumptions().to_vec(),
        src.budget(),
    )?)
}

/// Determinant of the degree-one matrix of each twisting map; only valid
/// when the source is a commutative polynomial ring.
pub fn hdet_degree_one(t: &TwistData) -> Result<Vec<ParamScalar>, TwistError> {
    if !is_commutative_polynomial(t.source()) {
        return Err(TwistError::HdetNeedsCommutativeSource);
    }
    let mut out = Vec::new();
    for s in t.system() {
        let m = s
            .degree_one_matrix()
            .ok_or(TwistError::HdetNeedsCommutativeSource)?;
        out.push(m.determinant());
    }
    Ok(out)
}

/// All completed rules are plain commutations t_j t_i -> t_i t_j.
pub fn is_commutative_polynomial(p: &Arc<Presentation>) -> bool {
    let gens = p.gens();
    let one = ParamScalar::one(p.ring());
    p.rewrite().rules().iter().all(|r| {
        if r.lead.len() != 2 {
            return false;
        }
        let l = r.lead.letters();
        let swapped = gens.word(&[
            gens.decl_of_ordinal(l[1]),
            gens.decl_of_ordinal(l[0]),
        ]);
        r.tail
            .sub(&NcPoly::term(swapped, one.clone()))
            .is_zero()
    })
}

/// The twist identity: the distinguished automorphism of the twisted
/// algebra is mu_source composed with sigma^l composed with the inverse
/// multidegree scaling by the hdet vector. The returned map lives on
/// `target` (which must share the source's generators and ring).
pub fn twist_nakayama(
    mu_source: &GradedMap,
    t: &TwistData,
    l: &[i32],
    hdet: &[ParamScalar],
    target: &Arc<Presentation>,
) -> Result<GradedMap, TwistError> {
    if hdet.iter().any(|v| v.is_zero()) {
        return Err(TwistError::ZeroHdetEntry);
    }
    let inv: Result<Vec<ParamScalar>, ScalarError> =
        hdet.iter().map(|v| v.inv()).collect();
    let xi_inv = GradedMap::multigraded_scaling(t.source(), &inv?)?;
    let sl = t.power(l)?;
    let composed = mu_source.compose(&sl)?.compose(&xi_inv)?;
    Ok(GradedMap::new(target, target, composed.images().to_vec())?)
}

/// Quotient rule: for z normal with mu(z) = c z, the distinguished
/// automorphism of A/(z) is mu composed with z's normalizing
/// automorphism. Returns the quotient presentation and the induced map.
pub fn quotient_nakayama(
    mu: &GradedMap,
    z: &NcPoly,
    a: &Arc<Presentation>,
    label: &str,
) -> Result<(Arc<Presentation>, GradedMap, GradedMap), TwistError> {
    let tau = match normalizing_map(z, a)? {
        Normality::Normal(tau) => tau,
        Normality::NotNormal => return Err(TwistError::NotNormal),
    };
    // mu(z) must be a scalar multiple of z
    let mz = mu.apply(z)?;
    let znf = a.nf(z)?;
    let (zw, zc) = znf.leading().ok_or(TwistError::NotNormal)?;
    let c = match mz.terms.get(zw) {
        Some(k) => k.div(zc)?,
        None => return Err(TwistError::NotMuEigenvector),
    };
    if !mz.sub(&znf.scale(&c)).is_zero() {
        return Err(TwistError::NotMuEigenvector);
    }
    let mut relations = a.relations().to_vec();
    relations.push(znf);
    let quotient = Presentation::new(
        label,
        a.ring(),
        a.gens(),
        relations,
        a.assumptions().to_vec(),
        a.budget(),
    )?;
    let composed = mu.compose(&tau)?;
    let on_quotient =
        GradedMap::new(&quotient, &quotient, composed.images().to_vec())?;
    Ok((quotient, on_quotient, tau))
}

/// Bounded regularity certificate: left and right multiplication by z are
/// injective on every homogeneous component reachable within the budget.
pub fn regularity_certificate(
    z: &NcPoly,
    a: &Arc<Presentation>,
    through_degree: u32,
) -> Result<bool, TwistError> {
    let znf = a.nf(z)?;
    if znf.is_zero() {
        return Ok(false);
    }
    let dz = znf.tdeg();
    let mut d = 1u32;
    while d + dz <= through_degree {
        let words = a.normal_words(d);
        let target = a.normal_words(d + dz);
        for left in [true, false] {
            let mut rows: Vec<Vec<ParamScalar>> = Vec::new();
            let mut cols = Vec::new();
            for w in &words {
                let wp = NcPoly::term(w.clone(), ParamScalar::one(a.ring()));
                let prod = if left {
                    a.nf(&znf.mul(&wp))?
                } else {
                    a.nf(&wp.mul(&znf))?
                };
                cols.push(
                    a.coeff_vector(&prod, &target)
                        .expect("normal form lives on normal words"),
                );
            }
            for r in 0..target.len() {
                rows.push(cols.iter().map(|c| c[r].clone()).collect());
            }
            let m = crate::linalg::Matrix::from_rows(a.ring(), rows);
            let mut log = PivotLog::default();
            if !m.null_space(&mut log).is_empty() {
                return Ok(false);
            }
        }
        d += 1;
    }
    Ok(true)
}

/// Where a catalog automorphism record comes from.
#[derive(Debug, Clone, PartialEq)]
pub enum Provenance {
    /// Shipped as a known closed-form formula.
    ClosedForm,
    /// Derived through the twist identity from a commutative source.
    TwistIdentity,
    /// Derived through the quotient rule along a normal element.
    QuotientRule,
}

/// Catalog record: the distinguished graded automorphism of an algebra,
/// its index vector and degree-one determinant data, and how it was
/// obtained.
#[derive(Debug, Clone)]
pub struct NakayamaRecord {
    pub algebra: String,
    pub mu: GradedMap,
    pub as_index: Vec<i32>,
    pub hdet: Vec<ParamScalar>,
    pub provenance: Provenance,
    /// Eigenvalues when the degree-one matrix is diagonal.
    pub eigenvalues: Option<Vec<ParamScalar>>,
}

impl NakayamaRecord {
    pub fn new(
        algebra: &str,
        mu: GradedMap,
        as_index: Vec<i32>,
        hdet: Vec<ParamScalar>,
        provenance: Provenance,
    ) -> Result<NakayamaRecord, TwistError> {
        if check_morphism(&mu)?.is_well_defined()
            && is_graded_automorphism(&mu)?.is_some()
        {
            let eigenvalues = mu.degree_one_matrix().and_then(|m| {
                if m.is_diagonal() {
                    Some((0..m.rows).map(|i| m.get(i, i).clone()).collect())
                } else {
                    None
                }
            });
            Ok(NakayamaRecord {
                algebra: algebra.to_string(),
                mu,
                as_index,
                hdet,
                provenance,
                eigenvalues,
            })
        } else {
            Err(TwistError::NotAutomorphism(0))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ncpoly::GenSet;
    use crate::scalars::ParamRing;

    fn poly3(ring: &Arc<ParamRing>) -> Arc<Presentation> {
        let gens = GenSet::new(
            &[("t1", vec![1]), ("t2", vec![1]), ("t3", vec![1])],
            &["t3", "t2", "t1"],
        );
        let one = ParamScalar::one(ring);
        let rel = |j: usize, i: usize| {
            NcPoly::term(gens.word(&[j, i]), one.clone())
                .sub(&NcPoly::term(gens.word(&[i, j]), one.clone()))
        };
        Presentation::new(
            "poly3",
            ring,
            &gens,
            vec![rel(1, 0), rel(2, 0), rel(2, 1)],
            vec![],
            8,
        )
        .unwrap()
    }

    #[test]
    fn identity_twist_returns_source_rules() {
        let ring = ParamRing::new(&[]);
        let b = poly3(&ring);
        let t = TwistData::new(
            &b,
            vec![GradedMap::identity(&b)],
            TwistConvention::Right,
        )
        .unwrap();
        let tw = twist_presentation(&t, "same").unwrap();
        assert!(tw.rewrite().same_rules(b.rewrite()));
    }

    #[test]
    fn unipotent_right_twist_gives_cubic_relations() {
        // sigma: t_i -> sum_{j <= i} t_j, right convention: the twisted
        // relations are t_i(t_j - t_{j-1}) = t_j(t_i - t_{i-1})
        let ring = ParamRing::new(&[]);
        let b = poly3(&ring);
        let one = ParamScalar::one(&ring);
        let g = b.gens().clone();
        let img = |ids: &[usize]| {
            let mut f = NcPoly::zero();
            for &i in ids {
                f.add_term(g.gen_word(i), one.clone());
            }
            f
        };
        let sigma = GradedMap::new(
            &b,
            &b,
            vec![img(&[0]), img(&[0, 1]), img(&[0, 1, 2])],
        )
        .unwrap();
        let t = TwistData::new(&b, vec![sigma], TwistConvention::Right).unwrap();
        let tw = twist_presentation(&t, "twisted").unwrap();
        // expected relation t1*(t2 - t1) - t2*t1 = 0, i.e. rule
        // t2*t1 -> t1*t2 - t1^2
        let nf = tw
            .nf(&NcPoly::term(g.word(&[1, 0]), one.clone()))
            .unwrap();
        assert_eq!(nf.format(&g), "t1*t2 - t1^2");
        // Hilbert coefficients preserved by twisting
        assert_eq!(
            tw.rewrite().hilbert_coeffs(6).unwrap(),
            vec![1, 3, 6, 10, 15, 21, 28]
        );
    }

    #[test]
    fn hdet_of_diagonal_map() {
        let ring = ParamRing::new(&["q"]);
        let b = poly3(&ring);
        let q = ParamScalar::param(&ring, "q").unwrap();
        let sigma = GradedMap::new(
            &b,
            &b,
            vec![
                b.gen_poly(0),
                b.gen_poly(1).sub(&b.gen_poly(0)),
                b.gen_poly(2).scale(&q),
            ],
        )
        .unwrap();
        let t = TwistData::new(&b, vec![sigma], TwistConvention::Left).unwrap();
        let h = hdet_degree_one(&t).unwrap();
        assert_eq!(h.len(), 1);
        assert!(h[0].eq_checked(&q).unwrap());
    }

    #[test]
    fn regularity_of_variable_in_polynomial_ring() {
        let ring = ParamRing::new(&[]);
        let b = poly3(&ring);
        let t1 = b.gen_poly(0);
        assert!(regularity_certificate(&t1, &b, 5).unwrap());
    }
}
