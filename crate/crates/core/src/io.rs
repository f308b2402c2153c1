//! JSON file formats for posets, maps, elements, involutions and reports.
//!
//! * poset: `{"elements": ["0","a","b","1"], "covers": [["0","a"], ...]}`
//! * poset map: `{"map": {"0": "1", "1": "0", "a": "a", "b": "b"}}`
//! * element / cocycle: `{"entries": [{"from": "0", "to": "a", "value": "3/5+2/7i"}, ...]}`
//! * involution: a `"poset"` object plus either `{"lambda": {...}, "epsilon": {...}}`
//!   (the `ε`-form) or `{"basis_images": [{"from", "to", "image"}], "i_image": ...}`,
//!   optionally `"field"` (a descriptor) and `"twist"` (an element `u`, giving
//!   `Ψ_u∘ρ`).

use std::collections::BTreeMap;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use thiserror::Error;

use crate::algebra::{AlgebraElement, Cocycle, IncidenceAlgebra};
use crate::classify::{EquivalenceReport, Obstruction, Verdict};
use crate::field::{FieldDescriptor, InvolutiveField};
use crate::involution::{build_rho_epsilon, twist, Decomposition, EpsilonMap, InvolutionMap, ScalarAction};
use crate::poset::{FinitePoset, LambdaDecomposition, MapKind, PosetMap};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum IoError {
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("invalid input: {0}")]
    Invalid(String),
}

fn invalid(e: impl std::fmt::Display) -> IoError {
    IoError::Invalid(e.to_string())
}

/// Deserialises `text`, reporting the position of syntax and shape errors.
pub fn parse_json<T: DeserializeOwned>(text: &str) -> Result<T, IoError> {
    serde_json::from_str(text).map_err(|e| IoError::Parse { line: e.line(), column: e.column(), message: e.to_string() })
}

/// Line (1-based) of the first occurrence of `"needle"` in `text`, for
/// pointing semantic errors at the source.
fn line_of(text: &str, needle: &str) -> usize {
    let quoted = format!("\"{needle}\"");
    text.lines().position(|l| l.contains(&quoted)).map_or(1, |i| i + 1)
}

/// `qi` or `gf:p`.
pub fn parse_field_flag(s: &str) -> Result<FieldDescriptor, IoError> {
    match s {
        "qi" => Ok(FieldDescriptor::GaussianRational),
        _ => {
            let p = s
                .strip_prefix("gf:")
                .and_then(|p| p.parse::<u64>().ok())
                .ok_or_else(|| IoError::Invalid(format!("field must be `qi` or `gf:p`, got `{s}`")))?;
            Ok(FieldDescriptor::GfP2 { p })
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PosetFile {
    pub elements: Vec<String>,
    pub covers: Vec<(String, String)>,
}

impl PosetFile {
    pub fn from_poset(poset: &FinitePoset) -> Self {
        PosetFile {
            elements: poset.labels().to_vec(),
            covers: poset
                .cover_pairs()
                .into_iter()
                .map(|(x, y)| (poset.label(x).to_string(), poset.label(y).to_string()))
                .collect(),
        }
    }

    pub fn build(&self) -> Result<FinitePoset, IoError> {
        FinitePoset::from_covers(&self.elements, &self.covers).map_err(invalid)
    }
}

/// Parses a poset file; semantic errors (unknown labels, cycles) are located
/// at the first line mentioning the offending label.
pub fn read_poset(text: &str) -> Result<FinitePoset, IoError> {
    let file: PosetFile = parse_json(text)?;
    file.build().map_err(|e| {
        let message = e.to_string();
        let label = message.split('`').nth(1).unwrap_or("covers").to_string();
        let line = line_of(text, &label);
        IoError::Parse { line, column: 1, message }
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapFile {
    pub map: BTreeMap<String, String>,
}

pub fn map_from_labels(poset: &FinitePoset, map: &BTreeMap<String, String>, kind: MapKind) -> Result<PosetMap, IoError> {
    if map.len() != poset.len() {
        return Err(IoError::Invalid(format!("map has {} entries, poset has {} elements", map.len(), poset.len())));
    }
    PosetMap::from_labels(poset, map.iter().map(|(a, b)| (a.as_str(), b.as_str())), kind).map_err(invalid)
}

pub fn map_to_labels(poset: &FinitePoset, map: &PosetMap) -> BTreeMap<String, String> {
    map.to_labels(poset).into_iter().collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EntryFile {
    pub from: String,
    pub to: String,
    pub value: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ElementFile {
    pub entries: Vec<EntryFile>,
}

fn pair_of<F: InvolutiveField>(alg: &IncidenceAlgebra<F>, from: &str, to: &str) -> Result<usize, IoError> {
    let p = alg.poset();
    let x = p.index_of(from).ok_or_else(|| IoError::Invalid(format!("unknown element `{from}`")))?;
    let y = p.index_of(to).ok_or_else(|| IoError::Invalid(format!("unknown element `{to}`")))?;
    alg.pair_index(x, y).ok_or_else(|| IoError::Invalid(format!("`{from}` ≰ `{to}`")))
}

impl ElementFile {
    /// Nonzero entries in pair order.
    pub fn from_element<F: InvolutiveField>(alg: &IncidenceAlgebra<F>, f: &AlgebraElement<F::Elem>) -> Self {
        Self::from_coeffs(alg, f.coeffs())
    }

    pub fn from_cocycle<F: InvolutiveField>(alg: &IncidenceAlgebra<F>, sigma: &Cocycle<F::Elem>) -> Self {
        Self::from_coeffs(alg, sigma.values())
    }

    fn from_coeffs<F: InvolutiveField>(alg: &IncidenceAlgebra<F>, coeffs: &[F::Elem]) -> Self {
        let field = alg.field();
        let p = alg.poset();
        ElementFile {
            entries: alg
                .pairs()
                .iter()
                .zip(coeffs)
                .filter(|(_, c)| !field.is_zero(c))
                .map(|(&(x, y), c)| EntryFile {
                    from: p.label(x).to_string(),
                    to: p.label(y).to_string(),
                    value: field.format(c),
                })
                .collect(),
        }
    }

    /// Repeated pairs are rejected; missing pairs are zero.
    pub fn build<F: InvolutiveField>(&self, alg: &IncidenceAlgebra<F>) -> Result<AlgebraElement<F::Elem>, IoError> {
        let field = alg.field();
        let mut coeffs = vec![None; alg.dimension()];
        for e in &self.entries {
            let k = pair_of(alg, &e.from, &e.to)?;
            if coeffs[k].is_some() {
                return Err(IoError::Invalid(format!("entry ({}, {}) given twice", e.from, e.to)));
            }
            coeffs[k] = Some(field.parse(&e.value).map_err(invalid)?);
        }
        alg.from_coeffs(coeffs.into_iter().map(|c| c.unwrap_or_else(|| field.zero())).collect()).map_err(invalid)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ScalarOrElement {
    /// `c`, meaning `c·δ`.
    Scalar(String),
    Element(ElementFile),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BasisImage {
    pub from: String,
    pub to: String,
    pub image: ElementFile,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InvolutionFile {
    pub poset: PosetFile,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub field: Option<FieldDescriptor>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambda: Option<BTreeMap<String, String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub epsilon: Option<BTreeMap<String, String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub basis_images: Option<Vec<BasisImage>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub i_image: Option<ScalarOrElement>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub twist: Option<ElementFile>,
}

impl InvolutionFile {
    /// The general (basis-image) form of an explicit map.
    pub fn from_map<F: InvolutiveField>(alg: &IncidenceAlgebra<F>, rho: &InvolutionMap<F::Elem>) -> Self {
        let p = alg.poset();
        InvolutionFile {
            poset: PosetFile::from_poset(p),
            field: Some(alg.field().descriptor()),
            lambda: None,
            epsilon: None,
            basis_images: Some(
                alg.pairs()
                    .iter()
                    .zip(rho.images())
                    .map(|(&(x, y), img)| BasisImage {
                        from: p.label(x).to_string(),
                        to: p.label(y).to_string(),
                        image: ElementFile::from_element(alg, img),
                    })
                    .collect(),
            ),
            i_image: Some(ScalarOrElement::Element(ElementFile::from_element(alg, rho.i_image()))),
            twist: None,
        }
    }

    /// The `ε`-form.
    pub fn from_epsilon<F: InvolutiveField>(
        alg: &IncidenceAlgebra<F>,
        lambda: &PosetMap,
        epsilon: &EpsilonMap<F::Elem>,
    ) -> Self {
        let p = alg.poset();
        InvolutionFile {
            poset: PosetFile::from_poset(p),
            field: Some(alg.field().descriptor()),
            lambda: Some(map_to_labels(p, lambda)),
            epsilon: Some(
                epsilon.values().iter().map(|(&x, v)| (p.label(x).to_string(), alg.field().format(v))).collect(),
            ),
            basis_images: None,
            i_image: None,
            twist: None,
        }
    }

    /// Builds the map. The file's algebra must be `alg` (same poset).
    pub fn build<F: InvolutiveField>(&self, alg: &IncidenceAlgebra<F>) -> Result<InvolutionMap<F::Elem>, IoError> {
        let p = alg.poset();
        let field = alg.field();
        let base = match (&self.lambda, &self.basis_images) {
            (Some(lambda), None) => {
                if self.i_image.is_some() {
                    return Err(IoError::Invalid("`i_image` belongs to the basis-image form".into()));
                }
                let lambda = map_from_labels(p, lambda, MapKind::Involution)?;
                let mut values = BTreeMap::new();
                for (label, v) in self.epsilon.iter().flatten() {
                    let x = p.index_of(label).ok_or_else(|| IoError::Invalid(format!("unknown element `{label}`")))?;
                    values.insert(x, field.parse(v).map_err(invalid)?);
                }
                let epsilon = EpsilonMap::new(alg, &lambda, values).map_err(invalid)?;
                build_rho_epsilon(alg, &lambda, &epsilon).map_err(invalid)?
            }
            (None, Some(images)) => {
                if self.epsilon.is_some() {
                    return Err(IoError::Invalid("`epsilon` belongs to the ε-form".into()));
                }
                let mut slots = vec![None; alg.dimension()];
                for b in images {
                    let k = pair_of(alg, &b.from, &b.to)?;
                    if slots[k].is_some() {
                        return Err(IoError::Invalid(format!("image of e({}, {}) given twice", b.from, b.to)));
                    }
                    slots[k] = Some(b.image.build(alg)?);
                }
                let images = slots
                    .into_iter()
                    .enumerate()
                    .map(|(k, s)| {
                        s.ok_or_else(|| {
                            let (x, y) = alg.pairs()[k];
                            IoError::Invalid(format!("missing image of e({}, {})", p.label(x), p.label(y)))
                        })
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                let i_image = match &self.i_image {
                    Some(ScalarOrElement::Scalar(c)) => alg.scalar(field.parse(c).map_err(invalid)?),
                    Some(ScalarOrElement::Element(e)) => e.build(alg)?,
                    None => return Err(IoError::Invalid("the basis-image form needs `i_image`".into())),
                };
                InvolutionMap::from_images(alg, images, i_image).map_err(invalid)?
            }
            _ => return Err(IoError::Invalid("give exactly one of `lambda` (ε-form) or `basis_images`".into())),
        };
        match &self.twist {
            None => Ok(base),
            Some(u) => Ok(twist(alg, &base, &u.build(alg)?).map_err(invalid)?.0),
        }
    }
}

pub fn lambda_decomposition_json(poset: &FinitePoset, sides: &LambdaDecomposition) -> Value {
    let names = |xs: Vec<usize>| xs.into_iter().map(|x| poset.label(x).to_string()).collect::<Vec<_>>();
    json!({"x1": names(sides.x1()), "x2": names(sides.x2()), "x3": names(sides.x3())})
}

pub fn decomposition_json<F: InvolutiveField>(alg: &IncidenceAlgebra<F>, d: &Decomposition<F::Elem>) -> Value {
    json!({
        "lambda": map_to_labels(alg.poset(), &d.lambda),
        "scalar_action": match d.action {
            ScalarAction::Conjugation => "conjugation",
            ScalarAction::Identity => "identity",
        },
        "f": ElementFile::from_element(alg, &d.f),
        "sigma": ElementFile::from_cocycle(alg, &d.sigma),
    })
}

pub fn report_json<F: InvolutiveField>(alg: &IncidenceAlgebra<F>, report: &EquivalenceReport<F::Elem>) -> Value {
    let p = alg.poset();
    match report.verdict {
        Verdict::Equivalent => {
            let w = report.witness.as_ref().expect("equivalent verdicts carry a witness");
            json!({
                "verdict": "equivalent",
                "witness": {
                    "alpha": MapFile { map: map_to_labels(p, &w.alpha) },
                    "u": ElementFile::from_element(alg, &w.u),
                },
                "checked": report.checked,
            })
        }
        Verdict::NotEquivalent => {
            let obstruction = match report.obstruction.as_ref().expect("negative verdicts carry a reason") {
                Obstruction::DifferentLambdaClass => json!({"kind": "different_lambda_class"}),
                Obstruction::DifferentScalarAction => json!({"kind": "different_scalar_action"}),
                Obstruction::CosetMismatch { at, ratio } => json!({
                    "kind": "coset_mismatch",
                    "at": p.label(*at),
                    "ratio": alg.field().format(ratio),
                }),
            };
            json!({"verdict": "not_equivalent", "obstruction": obstruction})
        }
    }
}
