//! JSON sequence specs.
//!
//! ```json
//! {"family":"gencheb","alpha":"1/2","beta":"-1/4"}
//! {"family":"custom","prefix":["1/4","1/4"],"tail":{"kind":"constant","value":"1/2"}}
//! {"family":"sieved2","base":{"family":"constant-half"}}
//! ```
//!
//! Scalars given as strings (`"p/q"` or decimals) are exact. Bare JSON
//! numbers are accepted on the float backend only.

use serde::{Deserialize, Serialize};

use super::{gencheb_sequence, jacobi_recurrence, sieve2, CoefficientSequence, NonSymmetricSequence, Tail};
use crate::error::{Error, Result};
use crate::scalar::{parse_rational, Backend, Rational, Scalar};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ScalarSpec {
    Text(String),
    Number(f64),
}

impl ScalarSpec {
    fn resolve<T: Scalar>(&self, field: &str) -> Result<T> {
        match self {
            ScalarSpec::Text(s) => parse_rational(s)
                .map(|q| T::from_rational(&q))
                .map_err(|e| Error::Spec(format!("field `{field}`: {e}"))),
            ScalarSpec::Number(v) => {
                if T::is_exact() {
                    Err(Error::Spec(format!(
                        "field `{field}`: bare number {v} is not an exact rational; \
                         quote it as a \"p/q\" or decimal string, or use the float backend"
                    )))
                } else {
                    Ok(T::from_rational(
                        &Rational::from_float(*v)
                            .ok_or_else(|| Error::Spec(format!("field `{field}`: non-finite value")))?,
                    ))
                }
            }
        }
    }

    fn is_exact(&self) -> bool {
        matches!(self, ScalarSpec::Text(_))
    }
}

impl From<&str> for ScalarSpec {
    fn from(s: &str) -> Self {
        ScalarSpec::Text(s.to_string())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum TailSpec {
    Constant { value: ScalarSpec },
    Periodic { block: Vec<ScalarSpec> },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family")]
pub enum SequenceSpec {
    #[serde(rename = "gencheb")]
    GenCheb { alpha: ScalarSpec, beta: ScalarSpec },
    #[serde(rename = "custom")]
    Custom {
        #[serde(default)]
        prefix: Vec<ScalarSpec>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        tail: Option<TailSpec>,
    },
    #[serde(rename = "sieved2")]
    Sieved2 { base: Box<SequenceSpec> },
    #[serde(rename = "sieved3-ultra-quarter")]
    Sieved3UltraQuarter,
    #[serde(rename = "jacobi")]
    Jacobi { alpha: ScalarSpec, beta: ScalarSpec },
    #[serde(rename = "constant-half")]
    ConstantHalf,
}

/// A resolved spec: symmetric families or the Jacobi recurrence.
#[derive(Debug, Clone, PartialEq)]
pub enum Resolved<T> {
    Symmetric(CoefficientSequence<T>),
    Jacobi(NonSymmetricSequence<T>),
}

impl SequenceSpec {
    pub fn parse(text: &str) -> Result<Self> {
        // serde_json reports the position itself when it has one.
        serde_json::from_str(text).map_err(|e| Error::Spec(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("sequence spec serializes")
    }

    /// `true` when every scalar is given as an exact string.
    pub fn is_exact(&self) -> bool {
        match self {
            SequenceSpec::GenCheb { alpha, beta } | SequenceSpec::Jacobi { alpha, beta } => {
                alpha.is_exact() && beta.is_exact()
            }
            SequenceSpec::Custom { prefix, tail } => {
                prefix.iter().all(ScalarSpec::is_exact)
                    && match tail {
                        Some(TailSpec::Constant { value }) => value.is_exact(),
                        Some(TailSpec::Periodic { block }) => block.iter().all(ScalarSpec::is_exact),
                        None => true,
                    }
            }
            SequenceSpec::Sieved2 { base } => base.is_exact(),
            SequenceSpec::Sieved3UltraQuarter | SequenceSpec::ConstantHalf => true,
        }
    }

    pub fn check_backend(&self, backend: Backend) -> Result<()> {
        if backend == Backend::Exact && !self.is_exact() {
            return Err(Error::Spec("exact backend rejected: spec contains non-rational scalars".into()));
        }
        Ok(())
    }

    pub fn resolve<T: Scalar>(&self) -> Result<Resolved<T>> {
        match self {
            SequenceSpec::Jacobi { alpha, beta } => {
                Ok(Resolved::Jacobi(jacobi_recurrence(alpha.resolve("alpha")?, beta.resolve("beta")?)?))
            }
            other => other.resolve_symmetric().map(Resolved::Symmetric),
        }
    }

    pub fn resolve_symmetric<T: Scalar>(&self) -> Result<CoefficientSequence<T>> {
        match self {
            SequenceSpec::GenCheb { alpha, beta } => {
                gencheb_sequence(alpha.resolve("alpha")?, beta.resolve("beta")?)
            }
            SequenceSpec::Custom { prefix, tail } => {
                let prefix = prefix
                    .iter()
                    .enumerate()
                    .map(|(i, v)| v.resolve(&format!("prefix[{i}]")))
                    .collect::<Result<Vec<T>>>()?;
                let tail = match tail {
                    Some(TailSpec::Constant { value }) => Some(Tail::Constant(value.resolve("tail.value")?)),
                    Some(TailSpec::Periodic { block }) => Some(Tail::Periodic(
                        block
                            .iter()
                            .enumerate()
                            .map(|(i, v)| v.resolve(&format!("tail.block[{i}]")))
                            .collect::<Result<Vec<T>>>()?,
                    )),
                    None => None,
                };
                CoefficientSequence::custom(prefix, tail)
            }
            SequenceSpec::Sieved2 { base } => Ok(sieve2(base.resolve_symmetric()?)),
            SequenceSpec::Sieved3UltraQuarter => Ok(CoefficientSequence::sieved3_example()),
            SequenceSpec::ConstantHalf => Ok(CoefficientSequence::constant_half()),
            SequenceSpec::Jacobi { .. } => {
                Err(Error::Spec("the jacobi family is non-symmetric and not supported here".into()))
            }
        }
    }
}
