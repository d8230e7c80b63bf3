//! Input schemas: lattices, models, vectors, and exact numbers, parsed from
//! inline JSON or files. Integers round-trip through `serde_json`'s
//! arbitrary-precision numbers so nothing is ever squeezed through a float.

use std::fs;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use k3lat::lattice::standard;
use k3lat::{IntegralLattice, K3Model, MukaiVector};

use crate::CliError;

/// Arbitrary-precision integer carried as a JSON number.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Big(pub BigInt);

impl From<BigInt> for Big {
    fn from(x: BigInt) -> Self {
        Big(x)
    }
}

impl From<i64> for Big {
    fn from(x: i64) -> Self {
        Big(BigInt::from(x))
    }
}

impl Serialize for Big {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let n = serde_json::Number::from_str(&self.0.to_string())
            .map_err(serde::ser::Error::custom)?;
        n.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Big {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let n = serde_json::Number::deserialize(d)?;
        let parsed = BigInt::from_str(&n.to_string())
            .map_err(|_| D::Error::custom("expected an integer"))?;
        Ok(Big(parsed))
    }
}

pub fn bigs(xs: &[BigInt]) -> Vec<Big> {
    xs.iter().cloned().map(Big).collect()
}

pub fn gram_json(m: &k3lat::mat::IntMat) -> Vec<Vec<Big>> {
    m.to_rows().into_iter().map(|r| r.into_iter().map(Big).collect()).collect()
}

/// A rational given either as an integer or as a `"p/q"` string.
#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum RationalSpec {
    Int(Big),
    Text(String),
}

impl RationalSpec {
    pub fn to_rational(&self) -> Result<BigRational, CliError> {
        match self {
            RationalSpec::Int(b) => Ok(BigRational::from(b.0.clone())),
            RationalSpec::Text(s) => parse_rational(s),
        }
    }
}

pub fn parse_rational(s: &str) -> Result<BigRational, CliError> {
    let bad = || CliError::Parse(format!("invalid rational {s:?}; expected \"p/q\" or an integer"));
    match s.split_once('/') {
        Some((p, q)) => {
            let p = BigInt::from_str(p.trim()).map_err(|_| bad())?;
            let q = BigInt::from_str(q.trim()).map_err(|_| bad())?;
            if q == BigInt::from(0) {
                return Err(bad());
            }
            Ok(BigRational::new(p, q))
        }
        None => Ok(BigRational::from(BigInt::from_str(s.trim()).map_err(|_| bad())?)),
    }
}

/// A lattice description: an explicit Gram matrix, a named lattice, a
/// direct sum, a rescaling, or a rank-one lattice.
#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum LatticeSpec {
    Gram {
        gram: Vec<Vec<Big>>,
        #[serde(default)]
        label: Option<String>,
    },
    Standard {
        standard: String,
        #[serde(default)]
        n: Option<i64>,
    },
    Sum {
        sum: Vec<LatticeSpec>,
    },
    Rescale {
        rescale: RescaleSpec,
    },
    Disc {
        disc: DiscSpec,
    },
}

#[derive(Clone, Debug, Deserialize)]
pub struct RescaleSpec {
    pub of: Box<LatticeSpec>,
    pub by: Big,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum DiscSpec {
    Int(Big),
    Text(String),
}

impl LatticeSpec {
    pub fn build(&self) -> Result<IntegralLattice, CliError> {
        match self {
            LatticeSpec::Gram { gram, label } => {
                let rows = gram.iter().map(|r| r.iter().map(|b| b.0.clone()).collect()).collect();
                let l = IntegralLattice::new(rows).map_err(CliError::from)?;
                Ok(match label {
                    Some(s) => l.with_label(s.clone()),
                    None => l,
                })
            }
            LatticeSpec::Standard { standard, n } => match standard.as_str() {
                "U" => Ok(k3lat::lattice::standard::u()),
                "E8" => Ok(standard::e8()),
                "E8-" => Ok(standard::e8_neg()),
                "K3" => Ok(standard::k3()),
                "Mukai" => Ok(standard::mukai()),
                "K3n" => {
                    let n = n.ok_or_else(|| {
                        CliError::Parse("standard: \"K3n\" requires a field \"n\"".into())
                    })?;
                    standard::k3n(n).map_err(CliError::from)
                }
                other => Err(CliError::Parse(format!(
                    "standard: unknown lattice {other:?} (expected U, E8, E8-, K3, Mukai, K3n)"
                ))),
            },
            LatticeSpec::Sum { sum } => {
                if sum.is_empty() {
                    return Err(CliError::Parse("sum: needs at least one summand".into()));
                }
                let mut total = sum[0].build()?;
                for part in &sum[1..] {
                    total = total.direct_sum(&part.build()?);
                }
                Ok(total)
            }
            LatticeSpec::Rescale { rescale } => {
                let base = rescale.of.build()?;
                base.rescale(&rescale.by.0).map_err(CliError::from)
            }
            LatticeSpec::Disc { disc } => {
                let m = match disc {
                    DiscSpec::Int(b) => b.0.clone(),
                    DiscSpec::Text(s) => BigInt::from_str(s.trim()).map_err(|_| {
                        CliError::Parse(format!("disc: invalid integer {s:?}"))
                    })?,
                };
                let m_i64: i64 = (&m).try_into().map_err(|_| {
                    CliError::Parse("disc: value out of range".into())
                })?;
                standard::rank_one(m_i64).map_err(CliError::from)
            }
        }
    }
}

#[derive(Clone, Debug, Deserialize)]
pub struct K3ModelSpec {
    pub ns_gram: Vec<Vec<Big>>,
    #[serde(default)]
    pub ample: Option<Vec<Big>>,
}

impl K3ModelSpec {
    pub fn build(&self) -> Result<K3Model, CliError> {
        let rows = self.ns_gram.iter().map(|r| r.iter().map(|b| b.0.clone()).collect()).collect();
        let ns = IntegralLattice::new(rows).map_err(CliError::from)?;
        let ample = self.ample.as_ref().map(|a| a.iter().map(|b| b.0.clone()).collect());
        K3Model::new(ns, ample).map_err(CliError::from)
    }
}

#[derive(Clone, Debug, Deserialize)]
pub struct BmConfigSpec {
    pub ns_gram: Vec<Vec<Big>>,
    #[serde(rename = "H")]
    pub h: Vec<Big>,
    #[serde(default)]
    pub ample: Option<Vec<Big>>,
}

#[derive(Clone, Debug, Deserialize)]
pub struct MukaiVectorSpec {
    pub r: Big,
    #[serde(rename = "E")]
    pub e: Vec<Big>,
    pub s: Big,
}

impl MukaiVectorSpec {
    pub fn build(&self) -> MukaiVector {
        MukaiVector::new(
            self.r.0.clone(),
            self.e.iter().map(|b| b.0.clone()).collect(),
            self.s.0.clone(),
        )
    }
}

/// Inline JSON (first non-space character `{` or `[`) or a file path.
pub fn resolve_input(raw: &str) -> Result<String, CliError> {
    let trimmed = raw.trim_start();
    if trimmed.starts_with('{') || trimmed.starts_with('[') {
        return Ok(raw.to_string());
    }
    fs::read_to_string(raw)
        .map_err(|e| CliError::Parse(format!("cannot read input file {raw:?}: {e}")))
}

pub fn parse_json<T: for<'de> Deserialize<'de>>(flag: &str, raw: &str) -> Result<T, CliError> {
    let text = resolve_input(raw)?;
    serde_json::from_str(&text)
        .map_err(|e| CliError::Parse(format!("--{flag}: {e}")))
}

pub fn parse_int_vector(flag: &str, raw: &str) -> Result<Vec<BigInt>, CliError> {
    let v: Vec<Big> = parse_json(flag, raw)?;
    Ok(v.into_iter().map(|b| b.0).collect())
}

pub fn parse_int_matrix(flag: &str, raw: &str) -> Result<Vec<Vec<BigInt>>, CliError> {
    let v: Vec<Vec<Big>> = parse_json(flag, raw)?;
    Ok(v.into_iter().map(|r| r.into_iter().map(|b| b.0).collect()).collect())
}

pub fn parse_rational_vector(flag: &str, raw: &str) -> Result<Vec<BigRational>, CliError> {
    let v: Vec<RationalSpec> = parse_json(flag, raw)?;
    v.iter().map(|r| r.to_rational()).collect()
}
