//! Presentations of connected graded algebras, algebra morphisms given by
//! generator images, and the bounded-degree linear searches built on the
//! rewrite engine: centers, normalizing automorphisms, eigenvectors.

pub mod catalog;

use crate::linalg::{LinalgError, Matrix, PivotLog};
use crate::ncpoly::rewrite::{
    complete, extend_budget, RewriteError, RewriteSystem, DEFAULT_RULE_CAP,
};
use crate::ncpoly::{GenSet, NcPoly, Word};
use crate::scalars::{Assumption, ParamRing, ParamScalar, ScalarError};
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum AlgebraError {
    #[error(transparent)]
    Rewrite(#[from] RewriteError),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error("map images must live in the declared target algebra")]
    ImageOutsideTarget,
    #[error("graded map image {index} is not homogeneous of the generator degree")]
    NotGradedImage { index: usize },
    #[error("operation requires an endomorphism (source = target)")]
    NotEndomorphism,
    #[error("zero element where a nonzero one is required")]
    ZeroElement,
}

/// A connected graded algebra given by generators and homogeneous
/// relations, together with its completed rewrite system and the default
/// assumptions under which the catalog statements hold.
#[derive(Debug, Clone)]
pub struct Presentation {
    label: String,
    ring: Arc<ParamRing>,
    gens: Arc<GenSet>,
    relations: Vec<NcPoly>,
    rewrite: RewriteSystem,
    assumptions: Vec<Assumption>,
}

impl Presentation {
    pub fn new(
        label: &str,
        ring: &Arc<ParamRing>,
        gens: &Arc<GenSet>,
        relations: Vec<NcPoly>,
        assumptions: Vec<Assumption>,
        budget: u32,
    ) -> Result<Arc<Presentation>, AlgebraError> {
        for a in &assumptions {
            a.validate()?;
        }
        let rewrite = complete(gens, ring, &relations, budget, DEFAULT_RULE_CAP)?;
        Ok(Arc::new(Presentation {
            label: label.to_string(),
            ring: ring.clone(),
            gens: gens.clone(),
            relations,
            rewrite,
            assumptions,
        }))
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn ring(&self) -> &Arc<ParamRing> {
        &self.ring
    }

    pub fn gens(&self) -> &Arc<GenSet> {
        &self.gens
    }

    pub fn relations(&self) -> &[NcPoly] {
        &self.relations
    }

    pub fn rewrite(&self) -> &RewriteSystem {
        &self.rewrite
    }

    pub fn assumptions(&self) -> &[Assumption] {
        &self.assumptions
    }

    pub fn budget(&self) -> u32 {
        self.rewrite.completed_to()
    }

    /// Same algebra with the rewrite budget extended.
    pub fn with_budget(
        self: &Arc<Self>,
        budget: u32,
    ) -> Result<Arc<Presentation>, AlgebraError> {
        if budget <= self.budget() {
            return Ok(self.clone());
        }
        let rewrite = extend_budget(&self.rewrite, budget, DEFAULT_RULE_CAP)?;
        Ok(Arc::new(Presentation {
            label: self.label.clone(),
            ring: self.ring.clone(),
            gens: self.gens.clone(),
            relations: self.relations.clone(),
            rewrite,
            assumptions: self.assumptions.clone(),
        }))
    }

    /// Substitute scalars for every ring parameter, producing a
    /// presentation over the target ring (relations re-completed).
    pub fn specialize(
        self: &Arc<Self>,
        label: &str,
        target: &Arc<ParamRing>,
        map: &[ParamScalar],
    ) -> Result<Arc<Presentation>, AlgebraError> {
        let subst = |p: &NcPoly| -> Result<NcPoly, ScalarError> {
            let mut out = NcPoly::zero();
            for (w, c) in &p.terms {
                out.add_term(w.clone(), c.substitute(target, map)?);
            }
            Ok(out)
        };
        let relations: Result<Vec<NcPoly>, ScalarError> =
            self.relations.iter().map(subst).collect();
        Presentation::new(
            label,
            target,
            &self.gens,
            relations?,
            Vec::new(),
            self.budget(),
        )
    }

    pub fn nf(&self, f: &NcPoly) -> Result<NcPoly, RewriteError> {
        self.rewrite.normal_form(f)
    }

    pub fn gen_poly(&self, idx: usize) -> NcPoly {
        NcPoly::gen(&self.gens, &self.ring, idx)
    }

    pub fn gen_by_name(&self, name: &str) -> Option<NcPoly> {
        self.gens.index_of(name).map(|i| self.gen_poly(i))
    }

    /// Irreducible words of total degree exactly d, ascending.
    pub fn normal_words(&self, d: u32) -> Vec<Word> {
        let mut out = Vec::new();
        let mut frontier: Vec<Word> = vec![self.gens.empty_word()];
        if d == 0 {
            return frontier;
        }
        while let Some(w) = frontier.pop() {
            for g in 0..self.gens.len() {
                let ext = w.concat(&self.gens.gen_word(g));
                if ext.tdeg() > d {
                    continue;
                }
                if self
                    .rewrite
                    .rules()
                    .iter()
                    .any(|r| ext.ends_with(&r.lead))
                {
                    continue;
                }
                if ext.tdeg() == d {
                    out.push(ext);
                } else {
                    frontier.push(ext);
                }
            }
        }
        out.sort();
        out
    }

    /// Express a normal-form element as a coefficient vector over the
    /// degree-d normal words; None if any word falls outside.
    pub fn coeff_vector(&self, f: &NcPoly, words: &[Word]) -> Option<Vec<ParamScalar>> {
        let mut v = vec![ParamScalar::zero(&self.ring); words.len()];
        for (w, c) in &f.terms {
            let i = words.iter().position(|x| x == w)?;
            v[i] = c.clone();
        }
        Some(v)
    }
}

/// Result of substituting a morphism into the source relations.
#[derive(Debug, Clone)]
pub enum MorphismCheck {
    WellDefined,
    Fails { relation: usize, residue: NcPoly },
}

impl MorphismCheck {
    pub fn is_well_defined(&self) -> bool {
        matches!(self, MorphismCheck::WellDefined)
    }
}

/// Algebra morphism given by generator images (in the target's normal
/// form). `graded` is inferred: every image homogeneous of the matching
/// multidegree.
#[derive(Debug, Clone)]
pub struct GradedMap {
    source: Arc<Presentation>,
    target: Arc<Presentation>,
    images: Vec<NcPoly>,
    graded: bool,
}

impl GradedMap {
    pub fn new(
        source: &Arc<Presentation>,
        target: &Arc<Presentation>,
        images: Vec<NcPoly>,
    ) -> Result<GradedMap, AlgebraError> {
        assert_eq!(images.len(), source.gens().len());
        let images: Result<Vec<NcPoly>, RewriteError> =
            images.iter().map(|f| target.nf(f)).collect();
        let images = images?;
        let graded = images.iter().enumerate().all(|(i, f)| {
            !f.is_zero()
                && f.multidegree(target.gens())
                    .map_or(false, |d| d == source.gens().multidegree(i))
        });
        Ok(GradedMap {
            source: source.clone(),
            target: target.clone(),
            images,
            graded,
        })
    }

    pub fn identity(p: &Arc<Presentation>) -> GradedMap {
        let images = (0..p.gens().len()).map(|i| p.gen_poly(i)).collect();
        GradedMap {
            source: p.clone(),
            target: p.clone(),
            images,
            graded: true,
        }
    }

    /// Scaling map xi_c: multiplies a degree-d element by c^d.
    pub fn scaling(p: &Arc<Presentation>, c: &ParamScalar) -> Result<GradedMap, AlgebraError> {
        if c.is_zero() {
            return Err(AlgebraError::ZeroElement);
        }
        let mut images = Vec::new();
        for i in 0..p.gens().len() {
            let d: i64 = p.gens().total_degree(i) as i64;
            images.push(p.gen_poly(i).scale(&c.pow(d)?));
        }
        GradedMap::new(p, p, images)
    }

    /// Multidegree scaling map: multiplies a multidegree-(d1..dr) element
    /// by prod(v_k ^ d_k).
    pub fn multigraded_scaling(
        p: &Arc<Presentation>,
        v: &[ParamScalar],
    ) -> Result<GradedMap, AlgebraError> {
        assert_eq!(v.len(), p.gens().rank());
        let mut images = Vec::new();
        for i in 0..p.gens().len() {
            let mut c = ParamScalar::one(p.ring());
            for (k, &dk) in p.gens().multidegree(i).iter().enumerate() {
                if v[k].is_zero() {
                    return Err(AlgebraError::ZeroElement);
                }
                c = c.mul(&v[k].pow(dk as i64)?);
            }
            images.push(p.gen_poly(i).scale(&c));
        }
        GradedMap::new(p, p, images)
    }

    pub fn source(&self) -> &Arc<Presentation> {
        &self.source
    }

    pub fn target(&self) -> &Arc<Presentation> {
        &self.target
    }

    pub fn images(&self) -> &[NcPoly] {
        &self.images
    }

    pub fn is_graded(&self) -> bool {
        self.graded
    }

    pub fn is_endo(&self) -> bool {
        Arc::ptr_eq(&self.source, &self.target)
            || (self.source.label() == self.target.label()
                && self.source.gens() == self.target.gens())
    }

    /// Apply to an element of the source; the result is a target normal
    /// form. Letters are substituted one at a time with intermediate
    /// reduction to keep the degree of raw products down.
    pub fn apply(&self, f: &NcPoly) -> Result<NcPoly, RewriteError> {
        let mut out = NcPoly::zero();
        for (w, c) in &f.terms {
            let mut acc = NcPoly::term(
                self.target.gens().empty_word(),
                c.clone(),
            );
            for &o in w.letters() {
                let g = self.source.gens().decl_of_ordinal(o);
                acc = self
                    .target
                    .rewrite()
                    .normal_form(&acc.mul(&self.images[g]))?;
            }
            out = out.add(&acc);
        }
        self.target.nf(&out)
    }

    /// self after other: (self.compose(other))(x) = self(other(x)).
    pub fn compose(&self, other: &GradedMap) -> Result<GradedMap, AlgebraError> {
        let images: Result<Vec<NcPoly>, RewriteError> = other
            .images
            .iter()
            .map(|f| self.apply(f))
            .collect();
        GradedMap::new(&other.source, &self.target, images?)
    }

    /// Matrix of the degree-one restriction: entry (i, j) is the
    /// coefficient of generator j in the image of generator i. None when
    /// some image is not linear.
    pub fn degree_one_matrix(&self) -> Option<Matrix> {
        let n = self.source.gens().len();
        let mut m = Matrix::zero(self.target.ring(), n, n);
        for (i, f) in self.images.iter().enumerate() {
            for (w, c) in &f.terms {
                if w.len() != 1 {
                    return None;
                }
                let j = self.target.gens().decl_of_ordinal(w.letters()[0]);
                m.set(i, j, c.clone());
            }
        }
        Some(m)
    }

    /// Build an endomorphism from a degree-one matrix (row i = image of
    /// generator i).
    pub fn from_matrix(
        p: &Arc<Presentation>,
        m: &Matrix,
    ) -> Result<GradedMap, AlgebraError> {
        let n = p.gens().len();
        assert_eq!((m.rows, m.cols), (n, n));
        let mut images = Vec::new();
        for i in 0..n {
            let mut f = NcPoly::zero();
            for j in 0..n {
                f.add_term(p.gens().gen_word(j), m.get(i, j).clone());
            }
            images.push(f);
        }
        GradedMap::new(p, p, images)
    }

    /// Iterated composition; negative powers require a linear graded map
    /// with invertible degree-one matrix.
    pub fn pow(&self, e: i64) -> Result<GradedMap, AlgebraError> {
        if !self.is_endo() {
            return Err(AlgebraError::NotEndomorphism);
        }
        let base = if e < 0 {
            let m = self
                .degree_one_matrix()
                .ok_or(AlgebraError::NotEndomorphism)?;
            let mut log = PivotLog::default();
            GradedMap::from_matrix(&self.source, &m.inverse(&mut log)?)?
        } else {
            self.clone()
        };
        let mut out = GradedMap::identity(&self.source);
        for _ in 0..e.unsigned_abs() {
            out = base.compose(&out)?;
        }
        Ok(out)
    }

    /// Images agree in normal form?
    pub fn equals(&self, other: &GradedMap) -> bool {
        self.images.len() == other.images.len()
            && self
                .images
                .iter()
                .zip(&other.images)
                .all(|(a, b)| a.sub(b).is_zero())
    }

    /// mu . self = self . mu on every generator.
    pub fn commutes_with(&self, other: &GradedMap) -> Result<bool, AlgebraError> {
        let a = self.compose(other)?;
        let b = other.compose(self)?;
        Ok(a.equals(&b))
    }
}

/// Substitute the map into each source relation and reduce.
pub fn check_morphism(phi: &GradedMap) -> Result<MorphismCheck, AlgebraError> {
    for (i, rel) in phi.source().relations().iter().enumerate() {
        let image = phi.apply(rel)?;
        if !image.is_zero() {
            return Ok(MorphismCheck::Fails {
                relation: i,
                residue: image,
            });
        }
    }
    Ok(MorphismCheck::WellDefined)
}

/// Witness for a graded automorphism: the inverse of its degree-one
/// matrix and the pivots inverted along the way.
#[derive(Debug, Clone)]
pub struct AutomorphismWitness {
    pub inverse_degree_one: Matrix,
    pub required_nonzero: Vec<ParamScalar>,
}

/// A graded endomorphism is an automorphism iff it is well defined and
/// its degree-one matrix is invertible.
pub fn is_graded_automorphism(
    phi: &GradedMap,
) -> Result<Option<AutomorphismWitness>, AlgebraError> {
    if !phi.is_endo() || !phi.is_graded() {
        return Ok(None);
    }
    if !check_morphism(phi)?.is_well_defined() {
        return Ok(None);
    }
    let m = match phi.degree_one_matrix() {
        Some(m) => m,
        None => return Ok(None),
    };
    let mut log = PivotLog::default();
    match m.inverse(&mut log) {
        Ok(inv) => Ok(Some(AutomorphismWitness {
            inverse_degree_one: inv,
            required_nonzero: log.pivots,
        })),
        Err(LinalgError::SingularMatrix) => Ok(None),
        Err(e) => Err(e.into()),
    }
}

/// Basis of central elements in each degree 1..=d.
pub fn center_bounded(
    a: &Arc<Presentation>,
    d: u32,
) -> Result<Vec<Vec<NcPoly>>, AlgebraError> {
    let mut out = Vec::new();
    for deg in 1..=d {
        let words = a.normal_words(deg);
        if words.is_empty() {
            out.push(Vec::new());
            continue;
        }
        let mut rows: Vec<Vec<ParamScalar>> = Vec::new();
        for g in 0..a.gens().len() {
            let gp = a.gen_poly(g);
            let target_deg = deg + a.gens().total_degree(g);
            let target_words = a.normal_words(target_deg);
            // commutator of each basis word with the generator
            let mut cols: Vec<Vec<ParamScalar>> = Vec::new();
            for w in &words {
                let wp = NcPoly::term(w.clone(), ParamScalar::one(a.ring()));
                let comm = a.nf(&wp.mul(&gp).sub(&gp.mul(&wp)))?;
                let v = a
                    .coeff_vector(&comm, &target_words)
                    .expect("normal form lives on normal words");
                cols.push(v);
            }
            for r in 0..target_words.len() {
                rows.push(cols.iter().map(|col| col[r].clone()).collect());
            }
        }
        let mat = Matrix::from_rows(a.ring(), rows);
        let mut log = PivotLog::default();
        let basis = mat.null_space(&mut log);
        let polys = basis
            .into_iter()
            .map(|v| {
                let mut f = NcPoly::zero();
                for (w, c) in words.iter().zip(v) {
                    f.add_term(w.clone(), c);
                }
                f
            })
            .collect();
        out.push(polys);
    }
    Ok(out)
}

/// Outcome of the normality test for a homogeneous element.
#[derive(Debug, Clone)]
pub enum Normality {
    Normal(GradedMap),
    NotNormal,
}

/// Find tau with f * x = tau(x) * f for all generators x (tau linear on
/// generators), then certify tau is a morphism.
pub fn normalizing_map(
    f: &NcPoly,
    a: &Arc<Presentation>,
) -> Result<Normality, AlgebraError> {
    if f.is_zero() {
        return Err(AlgebraError::ZeroElement);
    }
    let f = a.nf(f)?;
    let n = a.gens().len();
    let mut images = Vec::new();
    for i in 0..n {
        let gi = a.gen_poly(i);
        let deg = f.tdeg() + a.gens().total_degree(i);
        let words = a.normal_words(deg);
        let rhs_poly = a.nf(&f.mul(&gi))?;
        let rhs = a
            .coeff_vector(&rhs_poly, &words)
            .expect("normal form lives on normal words");
        // columns: g_j * f for each candidate generator j
        let mut cols = Vec::new();
        for j in 0..n {
            let gj = a.gen_poly(j);
            let col_poly = a.nf(&gj.mul(&f))?;
            cols.push(
                a.coeff_vector(&col_poly, &words)
                    .expect("normal form lives on normal words"),
            );
        }
        let mut rows = Vec::new();
        for r in 0..words.len() {
            rows.push(cols.iter().map(|c| c[r].clone()).collect());
        }
        let mat = Matrix::from_rows(a.ring(), rows);
        let mut log = PivotLog::default();
        match mat.solve(&rhs, &mut log) {
            None => return Ok(Normality::NotNormal),
            Some(sol) => {
                let mut img = NcPoly::zero();
                for (j, c) in sol.into_iter().enumerate() {
                    img.add_term(a.gens().gen_word(j), c);
                }
                if img.is_zero() {
                    return Ok(Normality::NotNormal);
                }
                images.push(img);
            }
        }
    }
    let tau = GradedMap::new(a, a, images)?;
    if check_morphism(&tau)?.is_well_defined() {
        Ok(Normality::Normal(tau))
    } else {
        Ok(Normality::NotNormal)
    }
}

/// Matrix of phi restricted to the degree-d component, in the normal-word
/// basis: column w holds the coefficients of phi(w).
pub fn map_matrix_on_degree(
    phi: &GradedMap,
    d: u32,
) -> Result<(Vec<Word>, Matrix), AlgebraError> {
    let a = phi.source();
    let words = a.normal_words(d);
    let mut cols = Vec::new();
    for w in &words {
        let img = phi.apply(&NcPoly::term(w.clone(), ParamScalar::one(a.ring())))?;
        cols.push(
            phi.target()
                .coeff_vector(&img, &words)
                .expect("graded image lives in the same degree"),
        );
    }
    let mut m = Matrix::zero(a.ring(), words.len(), words.len());
    for (j, col) in cols.iter().enumerate() {
        for (i, v) in col.iter().enumerate() {
            m.set(i, j, v.clone());
        }
    }
    Ok((words, m))
}

/// Basis of ker(phi - lambda id) on each degree 1..=d.
pub fn eigenvectors_bounded(
    phi: &GradedMap,
    lambda: &ParamScalar,
    d: u32,
) -> Result<Vec<Vec<NcPoly>>, AlgebraError> {
    let a = phi.source();
    let mut out = Vec::new();
    for deg in 1..=d {
        let (words, mut m) = map_matrix_on_degree(phi, deg)?;
        for i in 0..words.len() {
            let v = m.get(i, i).sub(lambda);
            m.set(i, i, v);
        }
        let mut log = PivotLog::default();
        let basis = m.null_space(&mut log);
        out.push(
            basis
                .into_iter()
                .map(|v| {
                    let mut f = NcPoly::zero();
                    for (w, c) in words.iter().zip(v) {
                        f.add_term(w.clone(), c);
                    }
                    f
                })
                .collect(),
        );
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::ParamRing;

    /// Commutative k[t1,t2,t3].
    fn poly3() -> Arc<Presentation> {
        let ring = ParamRing::new(&[]);
        let gens = GenSet::new(
            &[("t1", vec![1]), ("t2", vec![1]), ("t3", vec![1])],
            &["t3", "t2", "t1"],
        );
        let one = ParamScalar::one(&ring);
        let rel = |j: usize, i: usize| {
            NcPoly::term(gens.word(&[j, i]), one.clone())
                .sub(&NcPoly::term(gens.word(&[i, j]), one.clone()))
        };
        Presentation::new(
            "poly3",
            &ring,
            &gens,
            vec![rel(1, 0), rel(2, 0), rel(2, 1)],
            vec![],
            8,
        )
        .unwrap()
    }

    #[test]
    fn identity_is_automorphism() {
        let p = poly3();
        let id = GradedMap::identity(&p);
        assert!(check_morphism(&id).unwrap().is_well_defined());
        assert!(is_graded_automorphism(&id).unwrap().is_some());
    }

    #[test]
    fn swap_is_automorphism_of_poly_ring() {
        let p = poly3();
        let phi = GradedMap::new(
            &p,
            &p,
            vec![p.gen_poly(1), p.gen_poly(0), p.gen_poly(2)],
        )
        .unwrap();
        assert!(is_graded_automorphism(&phi).unwrap().is_some());
    }

    #[test]
    fn center_of_commutative_ring_is_everything() {
        let p = poly3();
        let c = center_bounded(&p, 3).unwrap();
        assert_eq!(c[0].len(), 3);
        assert_eq!(c[1].len(), 6);
        assert_eq!(c[2].len(), 10);
    }

    #[test]
    fn central_generator_is_normal_with_identity() {
        let p = poly3();
        let t1 = p.gen_poly(0);
        match normalizing_map(&t1, &p).unwrap() {
            Normality::Normal(tau) => {
                assert!(tau.equals(&GradedMap::identity(&p)));
            }
            Normality::NotNormal => panic!("t1 is central, hence normal"),
        }
    }

    #[test]
    fn eigenvectors_of_identity() {
        let p = poly3();
        let id = GradedMap::identity(&p);
        let one = ParamScalar::one(p.ring());
        let e = eigenvectors_bounded(&id, &one, 2).unwrap();
        assert_eq!(e[0].len(), 3);
        assert_eq!(e[1].len(), 6);
    }

    #[test]
    fn scaling_map_behaves() {
        let ring = ParamRing::new(&["c"]);
        let gens = GenSet::new(
            &[("t1", vec![1]), ("t2", vec![1]), ("t3", vec![1])],
            &["t3", "t2", "t1"],
        );
        let one = ParamScalar::one(&ring);
        let rel = |j: usize, i: usize| {
            NcPoly::term(gens.word(&[j, i]), one.clone())
                .sub(&NcPoly::term(gens.word(&[i, j]), one.clone()))
        };
        let p = Presentation::new(
            "poly3c",
            &ring,
            &gens,
            vec![rel(1, 0), rel(2, 0), rel(2, 1)],
            vec![],
            6,
        )
        .unwrap();
        let c = ParamScalar::param(&ring, "c").unwrap();
        let xi = GradedMap::scaling(&p, &c).unwrap();
        // on a degree-2 word, xi multiplies by c^2
        let w = NcPoly::term(gens.word(&[0, 1]), one.clone());
        let img = xi.apply(&w).unwrap();
        let expect = p.nf(&w.scale(&c.pow(2).unwrap())).unwrap();
        assert!(img.sub(&expect).is_zero());
    }
}
