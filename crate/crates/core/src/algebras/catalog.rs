//! The algebra catalog: every presentation ships as an embedded file in
//! the standard format, together with its distinguished graded
//! automorphism, index/determinant data, default assumptions, and (where
//! applicable) the twist construction that derives it from a commutative
//! polynomial ring.

use crate::algebras::{GradedMap, Presentation};
use crate::ncpoly::NcPoly;
use crate::presentation::{parse_expr, parse_presentation, ExprContext, ParseError};
use crate::scalars::{ParamScalar, ScalarError};
use crate::twistnak::{
    NakayamaRecord, Provenance, TwistConvention, TwistData, TwistError,
};
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CatalogError {
    #[error("unknown catalog id `{0}`")]
    UnknownId(String),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Twist(#[from] TwistError),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error(transparent)]
    Algebra(#[from] crate::algebras::AlgebraError),
}

pub const DEFAULT_BUDGET: u32 = 8;

pub const CATALOG_IDS: &[&str] = &[
    "a1", "a2", "a3", "a4", "a5", "a6", "a7", "d5", "g5", "poly1", "poly2",
    "poly3", "poly4", "jordan", "c27",
];

const A1: &str = r#"
[label]
a1
[params]
p12 p13 p23
[assume]
p12 nonzero
p13 nonzero
p23 nonzero
{p12, p13, p23} multiplicatively-independent
[generators]
t1 : 1
t2 : 1
t3 : 1
[precedence]
t3 > t2 > t1
[relations]
t2*t1 - p12*t1*t2
t3*t1 - p13*t1*t3
t3*t2 - p23*t2*t3
"#;

const A2: &str = r#"
[label]
a2
[params]
p
[assume]
p nonzero
p not-root-of-unity
[generators]
t1 : 1
t2 : 1
t3 : 1
[precedence]
t3 > t2 > t1
[relations]
t1*t2 - t2*t1
t1*t3 - t3*t1
t3*t2 - p*t2*t3 - t1^2
"#;

const A3: &str = r#"
[label]
a3
[params]
q
[assume]
q nonzero
q not-root-of-unity
[generators]
t1 : 1
t2 : 1
t3 : 1
[precedence]
t3 > t2 > t1
[relations]
(t2 + t1)*t1 - t1*t2
t3*t1 - q*t1*t3
t3*t2 - q*(t2 + t1)*t3
"#;

const A4: &str = r#"
[label]
a4
[params]
p
[assume]
p nonzero
p not-root-of-unity
[generators]
t1 : 1
t2 : 1
t3 : 1
[precedence]
t3 > t2 > t1
[relations]
(t2 + t1)*t1 - t1*t2
t3*t1 - p*t1*t3
t3*t2 - p*t2*t3
"#;

const A5: &str = r#"
[label]
a5
[generators]
t1 : 1
t2 : 1
t3 : 1
[precedence]
t3 > t2 > t1
[relations]
(t2 + t1)*t1 - t1*t2
(t3 + t2 + t1)*t1 - t1*t3
(t3 + t2 + t1)*t2 - (t2 + t1)*t3
"#;

const A6: &str = r#"
[label]
a6
[params]
alpha beta
[assume]
beta nonzero
beta not-root-of-unity
[generators]
x : 1
y : 1
[precedence]
x > y
[relations]
x^2*y - alpha*x*y*x - beta*y*x^2
x*y^2 - alpha*y*x*y - beta*y^2*x
"#;

const A7: &str = r#"
[label]
a7
[params]
p
[assume]
p nonzero
p not-root-of-unity
[generators]
x : 1
y : 1
[precedence]
x > y
[relations]
x^2*y - p*y*x^2
x*y^2 + p*y^2*x
"#;

const D5: &str = r#"
[label]
d5
[params]
q:2 p:1
display p q
[assume]
p nonzero
q nonzero
p^-3*q^4 not-root-of-unity
[constraints]
2*p^4 - p^2*q + q^2
[generators]
x : 1
y : 1
[precedence]
x > y
[relations]
x^3*y + p*x^2*y*x + q*x*y*x^2 - p*(2*p^2 + q)*y*x^3
x^2*y^2 - p*(p^2 + q)*y*x*y*x - q^2*y^2*x^2 + (q - p^2)*x*y^2*x + (q - p^2)*y*x^2*y
x*y^3 + p*y*x*y^2 + q*y^2*x*y - p*(2*p^2 + q)*y^3*x
"#;

// The quartic coefficients are the catalog fractions cleared of
// denominators by the unit q*g*s^2*(q*s + g). The constraint list is the
// saturation of the two defining constraints by the nonvanishing
// conditions below; the unsaturated pair admits zero divisors.
const G5: &str = r#"
[label]
g5
[params]
q s g p
display p q s g
[assume]
p nonzero
q nonzero
s nonzero
g nonzero
q*s + g nonzero
p*s - q^2 nonzero
q^2*s^2 - g^2 nonzero
p*s^2 + q*g nonzero
g not-root-of-unity
[constraints]
p^3*s - q^3
g^3 + g^2*q*s + g*p*s^3 + s^5
g^2*p^2 + g*p^2*q*s - g*q^2*s + p*q*s^3
g^2*p*q - g*p^2*s^2 + g*p*q^2*s + q^2*s^3
g^2*q^2 - g*p*q*s^2 + g*q^3*s + p^2*s^4
g^2*p^4 - g*p^2*q^2*s + g*p*q^4 + q^4*s^2
g^2*p^7 + g*p^4*q^4 - g*p^2*q^5 + q^7*s
[generators]
x : 1
y : 1
[precedence]
x > y
[relations]
x^3*y + p*x^2*y*x + q*x*y*x^2 + s*y*x^3
q*g*s^2*(q*s + g)*x^2*y^2 - q*s^4*(q*s - g)*x*y*x*y + (q*g*s^3*(q*s + g) - p*g^2*s^2*(p*s - q^2))*y*x*y*x - q*g^3*(q*s + g)*y^2*x^2 + q*g*s^2*(p*s^2 + q*g)*x*y^2*x + q*g*s^2*(p*s^2 + q*g)*y*x^2*y
x*y^3 + p*y*x*y^2 + q*y^2*x*y + s*y^3*x
[budget]
6
"#;

const POLY1: &str = r#"
[label]
poly1
[generators]
t1 : 1
"#;

const POLY2: &str = r#"
[label]
poly2
[generators]
t1 : 1
t2 : 1
[precedence]
t2 > t1
[relations]
t2*t1 - t1*t2
"#;

const POLY3: &str = r#"
[label]
poly3
[generators]
t1 : 1
t2 : 1
t3 : 1
[precedence]
t3 > t2 > t1
[relations]
t2*t1 - t1*t2
t3*t1 - t1*t3
t3*t2 - t2*t3
"#;

const POLY4: &str = r#"
[label]
poly4
[generators]
t1 : 1
t2 : 1
t3 : 1
t4 : 1
[precedence]
t4 > t3 > t2 > t1
[relations]
t2*t1 - t1*t2
t3*t1 - t1*t3
t4*t1 - t1*t4
t3*t2 - t2*t3
t4*t2 - t2*t4
t4*t3 - t3*t4
"#;

const JORDAN: &str = r#"
[label]
jordan
[generators]
t1 : 1
t2 : 1
[precedence]
t2 > t1
[relations]
(t2 + t1)*t1 - t1*t2
"#;

const C27: &str = r#"
[label]
c27
[params]
p
[assume]
p nonzero
p not-root-of-unity
[generators]
t1 : 1
t2 : 1
t3 : 1
t4 : 1
[precedence]
t4 > t3 > t2 > t1
[relations]
t2*t1 - t1*t2
t3*t1 - t1*t3
t4*t1 - t1*t4
t3*t2 - t2*t3
t4*t2 - t2*t4
t4*t3 - p*t3*t4 - t1^2 - t2^2
"#;

pub fn source_text(id: &str) -> Result<&'static str, CatalogError> {
    Ok(match id {
        "a1" => A1,
        "a2" => A2,
        "a3" => A3,
        "a4" => A4,
        "a5" => A5,
        "a6" => A6,
        "a7" => A7,
        "d5" => D5,
        "g5" => G5,
        "poly1" => POLY1,
        "poly2" => POLY2,
        "poly3" => POLY3,
        "poly4" => POLY4,
        "jordan" => JORDAN,
        "c27" => C27,
        other => return Err(CatalogError::UnknownId(other.to_string())),
    })
}

/// Catalog presentation, completed to the requested degree budget.
pub fn presentation(id: &str, budget: u32) -> Result<Arc<Presentation>, CatalogError> {
    let text = source_text(id)?;
    Ok(parse_presentation(text, budget)?.presentation)
}

/// Generator-image strings for the distinguished automorphism.
fn mu_image_strings(id: &str) -> Option<Vec<&'static str>> {
    Some(match id {
        "a1" => vec!["p12^-1*p13^-1*t1", "p12*p23^-1*t2", "p13*p23*t3"],
        "a2" => vec!["t1", "p^-1*t2", "p*t3"],
        "a3" => vec!["q^-1*t1", "q^-1*t2 - 3*q^-1*t1", "q^2*t3"],
        "a4" => vec!["p^-1*t1", "p^-1*t2 - 2*p^-1*t1", "p^2*t3"],
        "a5" => vec!["t1", "t2 - 3*t1", "t3 - 3*t2 + 3*t1"],
        "a6" => vec!["-beta*x", "-beta^-1*y"],
        "a7" => vec!["p*x", "-p^-1*y"],
        "d5" => vec!["p^-3*q^4*x", "p^3*q^-4*y"],
        "g5" => vec!["g*x", "g^-1*y"],
        "poly1" => vec!["t1"],
        "poly2" => vec!["t1", "t2"],
        "poly3" => vec!["t1", "t2", "t3"],
        "poly4" => vec!["t1", "t2", "t3", "t4"],
        "jordan" => vec!["t1", "t2 - 2*t1"],
        "c27" => vec!["t1", "t2", "p^-1*t3", "p*t4"],
        _ => return None,
    })
}

fn provenance_of(id: &str) -> Provenance {
    match id {
        "a3" | "a4" | "a5" | "jordan" => Provenance::TwistIdentity,
        "a2" | "a6" | "a7" => Provenance::QuotientRule,
        _ => Provenance::ClosedForm,
    }
}

fn as_index_of(id: &str) -> Vec<i32> {
    match id {
        "a1" | "a2" | "a3" | "a5" | "poly3" => vec![3],
        "a4" => vec![2, 1],
        "poly1" => vec![1],
        "poly2" | "jordan" => vec![2],
        "poly4" | "c27" | "a6" | "a7" => vec![4],
        // index not recorded for the degree-five families
        _ => vec![],
    }
}

fn hdet_strings(id: &str) -> Vec<&'static str> {
    match id {
        "a3" => vec!["q"],
        "a4" => vec!["1", "p^-2"],
        "a5" | "jordan" => vec!["1"],
        _ => vec![],
    }
}

/// Build a map on `p` from expression strings.
pub fn map_from_strings(
    p: &Arc<Presentation>,
    images: &[&str],
) -> Result<GradedMap, CatalogError> {
    let ctx = ExprContext {
        ring: p.ring(),
        gens: Some(p.gens()),
    };
    let polys: Result<Vec<NcPoly>, ParseError> =
        images.iter().map(|s| parse_expr(&ctx, s, 1)).collect();
    Ok(GradedMap::new(p, p, polys?)?)
}

/// The distinguished graded automorphism of a catalog algebra, certified
/// at construction.
pub fn nakayama(id: &str, budget: u32) -> Result<NakayamaRecord, CatalogError> {
    let p = presentation(id, budget)?;
    let images =
        mu_image_strings(id).ok_or_else(|| CatalogError::UnknownId(id.to_string()))?;
    let mu = map_from_strings(&p, &images)?;
    let hdet = hdet_strings(id)
        .into_iter()
        .map(|s| crate::presentation::parse_scalar(p.ring(), s))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(NakayamaRecord::new(
        id,
        mu,
        as_index_of(id),
        hdet,
        provenance_of(id),
    )?)
}

/// A twist construction deriving a catalog algebra from a commutative
/// polynomial source.
pub struct TwistSetup {
    pub source: Arc<Presentation>,
    pub data: TwistData,
    pub l: Vec<i32>,
    pub hdet: Vec<ParamScalar>,
    pub mu_source: GradedMap,
}

/// Commutative polynomial source over the same ring as the catalog entry.
fn commutative_source(
    id: &str,
    budget: u32,
) -> Result<Arc<Presentation>, CatalogError> {
    let text = match id {
        "a3" => {
            "[label]\nb3\n[params]\nq\n[generators]\nt1 : 1\nt2 : 1\nt3 : 1\n\
             [precedence]\nt3 > t2 > t1\n[relations]\nt2*t1 - t1*t2\n\
             t3*t1 - t1*t3\nt3*t2 - t2*t3\n"
        }
        "a4" => {
            "[label]\nb4\n[params]\np\n[grading]\nrank 2\n[generators]\n\
             t1 : (1,0)\nt2 : (1,0)\nt3 : (0,1)\n[precedence]\nt3 > t2 > t1\n\
             [relations]\nt2*t1 - t1*t2\nt3*t1 - t1*t3\nt3*t2 - t2*t3\n"
        }
        "a5" => {
            "[label]\nb5\n[generators]\nt1 : 1\nt2 : 1\nt3 : 1\n\
             [precedence]\nt3 > t2 > t1\n[relations]\nt2*t1 - t1*t2\n\
             t3*t1 - t1*t3\nt3*t2 - t2*t3\n"
        }
        "jordan" => {
            "[label]\nb2\n[generators]\nt1 : 1\nt2 : 1\n[precedence]\n\
             t2 > t1\n[relations]\nt2*t1 - t1*t2\n"
        }
        other => return Err(CatalogError::UnknownId(other.to_string())),
    };
    Ok(parse_presentation(text, budget)?.presentation)
}

/// The twist construction for a3, a4, a5 and the Jordan plane (left
/// convention throughout).
pub fn twist_setup(id: &str, budget: u32) -> Result<Option<TwistSetup>, CatalogError> {
    let (sigma_strings, conv, l): (Vec<Vec<&str>>, TwistConvention, Vec<i32>) =
        match id {
            "a3" => (
                vec![vec!["t1", "t2 - t1", "q*t3"]],
                TwistConvention::Left,
                vec![3],
            ),
            "a4" => (
                vec![
                    vec!["t1", "t2 - t1", "t3"],
                    vec!["p^-1*t1", "p^-1*t2", "t3"],
                ],
                TwistConvention::Left,
                vec![2, 1],
            ),
            "a5" => (
                vec![vec!["t1", "t2 - t1", "t3 - t2"]],
                TwistConvention::Left,
                vec![3],
            ),
            "jordan" => (
                vec![vec!["t1", "t2 - t1"]],
                TwistConvention::Left,
                vec![2],
            ),
            _ => return Ok(None),
        };
    let source = commutative_source(id, budget)?;
    let system: Result<Vec<GradedMap>, CatalogError> = sigma_strings
        .iter()
        .map(|imgs| map_from_strings(&source, imgs))
        .collect();
    let data = TwistData::new(&source, system?, conv)?;
    let hdet = crate::twistnak::hdet_degree_one(&data)?;
    let mu_source = GradedMap::identity(&source);
    Ok(Some(TwistSetup {
        source,
        data,
        l,
        hdet,
        mu_source,
    }))
}

/// The unipotent summation twist of the commutative polynomial ring in
/// three variables (right convention): t_i -> t_1 + ... + t_i.
pub fn summation_twist(budget: u32) -> Result<TwistSetup, CatalogError> {
    let source = commutative_source("a5", budget)?;
    let sigma = map_from_strings(&source, &["t1", "t2 + t1", "t3 + t2 + t1"])?;
    let data = TwistData::new(&source, vec![sigma], TwistConvention::Right)?;
    let hdet = crate::twistnak::hdet_degree_one(&data)?;
    let mu_source = GradedMap::identity(&source);
    Ok(TwistSetup {
        source,
        data,
        l: vec![3],
        hdet,
        mu_source,
    })
}

/// The graded-automorphism family of each catalog algebra, over the ring
/// extended by the family's free parameters. Returns the extended
/// presentation, the distinguished automorphism lifted to it, and the
/// family map.
pub fn automorphism_family(
    id: &str,
    budget: u32,
) -> Result<(Arc<Presentation>, GradedMap, GradedMap), CatalogError> {
    let (extra, images): (Vec<&str>, Vec<&str>) = match id {
        "a1" | "poly3" => (
            vec!["c1", "c2", "c3"],
            vec!["c1*t1", "c2*t2", "c3*t3"],
        ),
        "a2" => (
            vec!["c1", "c2"],
            vec!["c1*t1", "c2*t2", "c1^2*c2^-1*t3"],
        ),
        "a3" | "a4" => (
            vec!["c1", "c2", "c3"],
            vec!["c1*t1", "c1*t2 + c2*t1", "c3*t3"],
        ),
        "a5" => (
            vec!["c0", "c1", "c2"],
            vec!["c0*t1", "c0*t2 + c1*t1", "c0*t3 + c1*t2 + c2*t1"],
        ),
        "a6" | "a7" | "d5" | "g5" => (vec!["c1", "c2"], vec!["c1*x", "c2*y"]),
        "jordan" => (vec!["c1", "c2"], vec!["c1*t1", "c1*t2 + c2*t1"]),
        "poly1" => (vec!["c1"], vec!["c1*t1"]),
        "poly2" => (vec!["c1", "c2"], vec!["c1*t1", "c2*t2"]),
        "poly4" => (
            vec!["c1", "c2", "c3", "c4"],
            vec!["c1*t1", "c2*t2", "c3*t3", "c4*t4"],
        ),
        "c27" => (
            vec!["c1", "c3"],
            vec!["c1*t1", "c1*t2", "c3*t3", "c1^2*c3^-1*t4"],
        ),
        other => return Err(CatalogError::UnknownId(other.to_string())),
    };
    let base = presentation(id, budget)?;
    let ext = extend_presentation(&base, &extra)?;
    let mu_images =
        mu_image_strings(id).ok_or_else(|| CatalogError::UnknownId(id.into()))?;
    let mu = map_from_strings(&ext, &mu_images)?;
    let family = map_from_strings(&ext, &images)?;
    Ok((ext, mu, family))
}

/// Same algebra over a ring extended with fresh parameters.
pub fn extend_presentation(
    p: &Arc<Presentation>,
    extra: &[&str],
) -> Result<Arc<Presentation>, CatalogError> {
    let ring2 = p.ring().extend(extra);
    let relations: Vec<NcPoly> = p
        .relations()
        .iter()
        .map(|r| {
            let mut out = NcPoly::zero();
            for (w, c) in &r.terms {
                out.add_term(w.clone(), c.lift_to(&ring2));
            }
            out
        })
        .collect();
    Ok(Presentation::new(
        p.label(),
        &ring2,
        p.gens(),
        relations,
        Vec::new(),
        p.budget(),
    )?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebras::{check_morphism, is_graded_automorphism};

    #[test]
    fn every_catalog_entry_builds() {
        for id in CATALOG_IDS {
            let p = presentation(id, 6)
                .unwrap_or_else(|e| panic!("catalog `{}` failed to build: {}", id, e));
            assert_eq!(p.label(), *id);
        }
    }

    #[test]
    fn every_nakayama_is_certified() {
        for id in CATALOG_IDS {
            let rec = nakayama(id, 6)
                .unwrap_or_else(|e| panic!("nakayama `{}` failed: {}", id, e));
            assert!(check_morphism(&rec.mu).unwrap().is_well_defined());
            assert!(is_graded_automorphism(&rec.mu).unwrap().is_some());
        }
    }

    #[test]
    fn families_commute_with_distinguished_automorphism() {
        for id in CATALOG_IDS {
            let (_, mu, family) = automorphism_family(id, 6).unwrap();
            assert!(
                check_morphism(&family).unwrap().is_well_defined(),
                "family of `{}` must be well defined",
                id
            );
            assert!(
                mu.commutes_with(&family).unwrap(),
                "family of `{}` must commute with the distinguished map",
                id
            );
        }
    }

    #[test]
    fn hilbert_of_cubic_algebras_matches_polynomial_ring() {
        for id in ["a1", "a2", "a3", "a4", "a5"] {
            let p = presentation(id, 8).unwrap();
            let h = p.rewrite().hilbert_coeffs(8).unwrap();
            let expect: Vec<usize> = (0..=8u32)
                .map(|d| ((d + 1) * (d + 2) / 2) as usize)
                .collect();
            assert_eq!(h, expect, "algebra {}", id);
        }
    }

    #[test]
    fn a5_normal_form_example() {
        let p = presentation("a5", 6).unwrap();
        let g = p.gens().clone();
        let f = NcPoly::term(g.word(&[1, 0]), ParamScalar::one(p.ring()));
        assert_eq!(p.nf(&f).unwrap().format(&g), "t1*t2 - t1^2");
    }

    #[test]
    fn degree_five_families_complete() {
        let d = presentation("d5", 8).unwrap();
        assert!(d.rewrite().rules().len() >= 3);
        let g = presentation("g5", 6).unwrap();
        assert!(g.rewrite().rules().len() >= 3);
        assert_eq!(g.budget(), 6, "file budget caps the symbolic locus");
    }
}
