//! JSON file formats.
//!
//! Paths are lists of arrow ids in traversal order. Matrices are row-major
//! lists of rows; scalars are written as strings (`"-2/3"`, `"5"`) and may be
//! given as strings or integers on input. Missing blocks and maps are zero.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::quiver::{ArrowSpec, SigmaSpec, TauSpec};
use crate::scalar::{FieldSpec, Scalar};

pub const FORMAT_VERSION: u32 = 1;

/// A scalar as written in a file.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ScalarText {
    Int(i64),
    Text(String),
}

impl ScalarText {
    pub fn parse<S: Scalar>(&self) -> Result<S> {
        match self {
            ScalarText::Int(v) => Ok(S::from_i64(*v)),
            ScalarText::Text(s) => S::parse(s),
        }
    }

    pub fn of<S: Scalar>(x: &S) -> Self {
        ScalarText::Text(x.to_string())
    }
}

pub type MatrixText = Vec<Vec<ScalarText>>;

pub fn parse_matrix<S: Scalar>(rows: &MatrixText, r: usize, c: usize, what: &str) -> Result<Matrix<S>> {
    if (r == 0 || c == 0)
        && rows.iter().all(Vec::is_empty) && (rows.is_empty() || rows.len() == r) {
            return Ok(Matrix::zeros(r, c));
        }
    if rows.len() != r || rows.iter().any(|row| row.len() != c) {
        return Err(Error::Shape(format!("{what}: expected a {r}x{c} matrix")));
    }
    let data = rows
        .iter()
        .flatten()
        .map(ScalarText::parse)
        .collect::<Result<Vec<S>>>()?;
    Matrix::from_vec(r, c, data)
}

pub fn matrix_text<S: Scalar>(m: &Matrix<S>) -> MatrixText {
    (0..m.rows())
        .map(|i| m.row(i).iter().map(ScalarText::of).collect())
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuiverText {
    pub vertices: Vec<String>,
    pub arrows: Vec<ArrowSpec>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermText {
    pub coef: ScalarText,
    pub path: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationText {
    pub terms: Vec<TermText>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraFile {
    #[serde(default = "default_version")]
    pub format_version: u32,
    pub field: FieldSpec,
    pub quiver: QuiverText,
    #[serde(default)]
    pub relations: Vec<RelationText>,
}

fn default_version() -> u32 {
    FORMAT_VERSION
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuleText {
    pub id: String,
    #[serde(default)]
    pub dims: BTreeMap<String, usize>,
    #[serde(default)]
    pub maps: BTreeMap<String, MatrixText>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentFile {
    #[serde(default = "default_version")]
    pub format_version: u32,
    pub modules: Vec<ModuleText>,
    pub arrows: Vec<ArrowSpec>,
    #[serde(default)]
    pub tau: Vec<TauSpec>,
    #[serde(default)]
    pub projectives: Vec<String>,
    #[serde(default)]
    pub injectives: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub sigma: Vec<SigmaSpec>,
}

/// Blocks keyed by algebra vertex id; missing vertices are zero.
pub type BlocksText = BTreeMap<String, MatrixText>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FunctorFile {
    #[serde(default = "default_version")]
    pub format_version: u32,
    pub field: FieldSpec,
    pub chosen: BTreeMap<String, BlocksText>,
    pub seed: u64,
    pub search_level: u8,
}

/// A morphism between component modules, either as explicit blocks or as
/// a linear combination of paths evaluated through a functor.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MorphismFile {
    #[serde(default = "default_version")]
    pub format_version: u32,
    pub source: String,
    pub target: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub blocks: Option<BlocksText>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub terms: Option<Vec<TermText>>,
}

pub fn from_json<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}

/// Reads only the field of an algebra file.
pub fn algebra_field(text: &str) -> Result<FieldSpec> {
    #[derive(Deserialize)]
    struct Head {
        field: FieldSpec,
    }
    let head: Head = from_json(text)?;
    if let FieldSpec::Prime { p } = head.field {
        FieldSpec::prime(p)?;
    }
    Ok(head.field)
}
