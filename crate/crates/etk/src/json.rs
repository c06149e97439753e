//! JSON file formats: rationals, matrices, groups, tensors and model input.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

use etk_core::group::GroupSpec;
use etk_core::parallelism::ParallelismData;
use etk_core::rational::{self, Rational};
use etk_core::tensor::{Constraint, TensorElement, TensorSpec, Valence, INDEX_CONVENTION};
use etk_core::RatMatrix;
use num_traits::ToPrimitive;
use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("cannot read {path}: {source}")]
    Read { path: String, source: std::io::Error },
    #[error("malformed JSON in {path}: {source}")]
    Json { path: String, source: serde_json::Error },
    #[error("{0}")]
    Invalid(String),
    #[error(transparent)]
    Core(#[from] etk_core::Error),
}

/// A rational in files: a JSON integer, or a string `"p"` / `"p/q"`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rat(pub Rational);

impl Serialize for Rat {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let r = &self.0;
        if r.is_integer() {
            if let Some(i) = r.numer().to_i64() {
                return s.serialize_i64(i);
            }
            return s.serialize_str(&r.numer().to_string());
        }
        s.serialize_str(&format!("{}/{}", r.numer(), r.denom()))
    }
}

impl<'de> Deserialize<'de> for Rat {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct RatVisitor;
        impl Visitor<'_> for RatVisitor {
            type Value = Rat;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("an integer or a string \"p/q\"")
            }
            fn visit_i64<E: de::Error>(self, v: i64) -> Result<Rat, E> {
                Ok(Rat(rational::int(v)))
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> Result<Rat, E> {
                Ok(Rat(Rational::from_integer(v.into())))
            }
            fn visit_str<E: de::Error>(self, v: &str) -> Result<Rat, E> {
                rational::parse(v).map(Rat).ok_or_else(|| E::custom(format!("not a rational: {v:?}")))
            }
        }
        d.deserialize_any(RatVisitor)
    }
}

pub fn rats(v: &[Rational]) -> Vec<Rat> {
    v.iter().cloned().map(Rat).collect()
}

pub fn unrats(v: Vec<Rat>) -> Vec<Rational> {
    v.into_iter().map(|r| r.0).collect()
}

pub fn matrix_to_json(m: &RatMatrix) -> Vec<Vec<Rat>> {
    m.row_vectors().map(rats).collect()
}

pub fn matrix_from_json(rows: Vec<Vec<Rat>>) -> Result<RatMatrix, FormatError> {
    Ok(RatMatrix::from_rows(rows.into_iter().map(unrats).collect())?)
}

pub fn read_text(path: &Path) -> Result<String, FormatError> {
    std::fs::read_to_string(path).map_err(|source| FormatError::Read { path: path.display().to_string(), source })
}

fn parse_file<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T, FormatError> {
    let text = read_text(path)?;
    serde_json::from_str(&text).map_err(|source| FormatError::Json { path: path.display().to_string(), source })
}

#[derive(Debug, Serialize, Deserialize)]
pub struct GroupFile {
    pub name: String,
    pub n: usize,
    #[serde(default)]
    pub lie_algebra: Vec<Vec<Vec<Rat>>>,
    #[serde(default)]
    pub component_reps: Vec<Vec<Vec<Rat>>>,
}

impl GroupFile {
    pub fn from_group(g: &GroupSpec) -> Self {
        Self {
            name: g.name.clone(),
            n: g.n,
            lie_algebra: g.lie_algebra_basis.iter().map(matrix_to_json).collect(),
            component_reps: g.component_reps.iter().map(matrix_to_json).collect(),
        }
    }

    /// Builds the group without validating it; shape problems surface as
    /// violations.
    pub fn into_group(self) -> Result<GroupSpec, FormatError> {
        let convert = |ms: Vec<Vec<Vec<Rat>>>| ms.into_iter().map(matrix_from_json).collect::<Result<Vec<_>, _>>();
        Ok(GroupSpec {
            name: self.name,
            n: self.n,
            lie_algebra_basis: convert(self.lie_algebra)?,
            component_reps: convert(self.component_reps)?,
            builtin: None,
        })
    }
}

pub fn read_group(path: &Path) -> Result<GroupSpec, FormatError> {
    parse_file::<GroupFile>(path)?.into_group()
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct SpecJson {
    pub n: usize,
    pub valence: String,
    #[serde(default)]
    pub constraints: Vec<String>,
}

impl SpecJson {
    pub fn from_spec(s: &TensorSpec) -> Self {
        Self {
            n: s.n(),
            valence: s.valence().label().to_string(),
            constraints: s.constraints().iter().map(|c| c.label().to_string()).collect(),
        }
    }

    pub fn to_spec(&self) -> Result<TensorSpec, FormatError> {
        let valence = Valence::parse(&self.valence)
            .ok_or_else(|| FormatError::Invalid(format!("unknown valence {:?}", self.valence)))?;
        let constraints = self
            .constraints
            .iter()
            .map(|c| Constraint::parse(c).ok_or_else(|| FormatError::Invalid(format!("unknown constraint {c:?}"))))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(TensorSpec::new(self.n, valence, &constraints)?)
    }
}

#[derive(Debug, Serialize, Deserialize)]
pub struct TensorJson {
    pub convention: String,
    pub spec: SpecJson,
    pub coords: Vec<Rat>,
}

impl TensorJson {
    pub fn from_tensor(t: &TensorElement) -> Self {
        Self { convention: INDEX_CONVENTION.to_string(), spec: SpecJson::from_spec(t.spec()), coords: rats(t.coords()) }
    }

    pub fn into_tensor(self) -> Result<TensorElement, FormatError> {
        if self.convention != INDEX_CONVENTION {
            return Err(FormatError::Invalid(format!(
                "unsupported index convention {:?}, expected {INDEX_CONVENTION:?}",
                self.convention
            )));
        }
        Ok(TensorElement::new(self.spec.to_spec()?, unrats(self.coords))?)
    }
}

pub fn read_tensor(path: &Path) -> Result<TensorElement, FormatError> {
    parse_file::<TensorJson>(path)?.into_tensor()
}

/// Model input. Keys are 1-based index triples, written `"123"` or `"1,2,3"`.
#[derive(Debug, Serialize, Deserialize)]
pub struct ModelFile {
    pub n: usize,
    #[serde(default)]
    pub lambda: BTreeMap<String, Rat>,
    #[serde(default)]
    pub gamma: BTreeMap<String, Rat>,
}

fn parse_key(key: &str, n: usize) -> Result<[usize; 3], FormatError> {
    let parts: Vec<&str> = if key.contains(',') {
        key.split(',').map(str::trim).collect()
    } else {
        key.char_indices().map(|(i, c)| &key[i..i + c.len_utf8()]).collect()
    };
    let bad = || FormatError::Invalid(format!("bad index key {key:?}: expected three 1-based indices in 1..={n}"));
    if parts.len() != 3 {
        return Err(bad());
    }
    let mut out = [0; 3];
    for (slot, p) in out.iter_mut().zip(parts) {
        let v: usize = p.parse().map_err(|_| bad())?;
        if v == 0 || v > n {
            return Err(bad());
        }
        *slot = v - 1;
    }
    Ok(out)
}

impl ModelFile {
    pub fn into_data(self) -> Result<ParallelismData, FormatError> {
        let n = self.n;
        let entries = |m: BTreeMap<String, Rat>| {
            m.into_iter().map(|(k, v)| Ok((parse_key(&k, n)?, v.0))).collect::<Result<Vec<_>, FormatError>>()
        };
        Ok(ParallelismData::from_entries(n, &entries(self.lambda)?, &entries(self.gamma)?)?)
    }
}

pub fn read_model(path: &Path) -> Result<ParallelismData, FormatError> {
    parse_file::<ModelFile>(path)?.into_data()
}
