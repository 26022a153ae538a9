//! Recurrence coefficient families.
//!
//! A symmetric random walk polynomial sequence is determined by `c_n ∈ (0, 1)`
//! for `n >= 1`, with `c_0 = 0` and `a_n = 1 - c_n`. The families here cover
//! generalized Chebyshev coefficients, 2-sieving, a 3-sieved ultraspherical
//! example, the Chebyshev case `c_n = 1/2`, and custom prefixes with an
//! eventually simple tail. [`NonSymmetricSequence`] carries the normalized
//! Jacobi recurrence.

use crate::error::{Error, Result};
use crate::scalar::{in_open_unit, Rational, Scalar};

pub mod spec;

/// How a custom sequence continues past its explicit prefix.
#[derive(Debug, Clone, PartialEq)]
pub enum Tail<T> {
    Constant(T),
    /// The block repeats forever: `c_{p+1+i} = block[i mod len]`.
    Periodic(Vec<T>),
}

#[derive(Debug, Clone, PartialEq)]
pub enum SequenceKind<T> {
    /// `prefix[i]` is `c_{i+1}`.
    Custom {
        prefix: Vec<T>,
        tail: Option<Tail<T>>,
    },
    GenCheb {
        alpha: T,
        beta: T,
    },
    Sieved2(Box<CoefficientSequence<T>>),
    /// `c_n = 2n/(4n+3)` when `3 | n`, `1/2` otherwise.
    Sieved3UltraQuarter,
    ConstantHalf,
}

/// The rule `n ↦ c_n` of a symmetric random walk polynomial sequence.
#[derive(Debug, Clone, PartialEq)]
pub struct CoefficientSequence<T> {
    kind: SequenceKind<T>,
}

impl<T: Scalar> CoefficientSequence<T> {
    pub fn kind(&self) -> &SequenceKind<T> {
        &self.kind
    }

    pub fn constant_half() -> Self {
        Self { kind: SequenceKind::ConstantHalf }
    }

    /// Constant sequence `c_n = value` for all `n >= 1`.
    pub fn constant(value: T) -> Result<Self> {
        Self::custom(Vec::new(), Some(Tail::Constant(value)))
    }

    pub fn custom(prefix: Vec<T>, tail: Option<Tail<T>>) -> Result<Self> {
        for (i, c) in prefix.iter().enumerate() {
            check_unit(i + 1, c)?;
        }
        match &tail {
            Some(Tail::Constant(v)) => check_unit(prefix.len() + 1, v)?,
            Some(Tail::Periodic(block)) => {
                if block.is_empty() {
                    return Err(Error::Spec("periodic tail needs a non-empty block".into()));
                }
                for (i, c) in block.iter().enumerate() {
                    check_unit(prefix.len() + 1 + i, c)?;
                }
            }
            None => {}
        }
        Ok(Self { kind: SequenceKind::Custom { prefix, tail } })
    }

    pub fn sieved3_example() -> Self {
        Self { kind: SequenceKind::Sieved3UltraQuarter }
    }

    /// `c_n`; zero for `n = 0`.
    pub fn coeff(&self, n: usize) -> Result<T> {
        if n == 0 {
            return Ok(T::zero());
        }
        match &self.kind {
            SequenceKind::ConstantHalf => Ok(T::half()),
            SequenceKind::Custom { prefix, tail } => {
                if n <= prefix.len() {
                    return Ok(prefix[n - 1].clone());
                }
                match tail {
                    Some(Tail::Constant(v)) => Ok(v.clone()),
                    Some(Tail::Periodic(block)) => Ok(block[(n - prefix.len() - 1) % block.len()].clone()),
                    None => Err(Error::SequenceExhausted { index: n }),
                }
            }
            SequenceKind::GenCheb { alpha, beta } => Ok(gencheb_coeff(alpha, beta, n)),
            SequenceKind::Sieved2(base) => {
                if n.is_multiple_of(2) {
                    base.coeff(n / 2)
                } else {
                    Ok(T::half())
                }
            }
            SequenceKind::Sieved3UltraQuarter => {
                if n.is_multiple_of(3) {
                    let n = n as i64;
                    Ok(T::from_ratio(2 * n, 4 * n + 3))
                } else {
                    Ok(T::half())
                }
            }
        }
    }

    /// `a_n = 1 - c_n`.
    pub fn a(&self, n: usize) -> Result<T> {
        Ok(T::one() - self.coeff(n)?)
    }

    /// `[c_0, ..., c_len-1]`.
    pub fn coeffs(&self, len: usize) -> Result<Vec<T>> {
        (0..len).map(|n| self.coeff(n)).collect()
    }

    /// Generalized Chebyshev parameters, if this is that family.
    pub fn gencheb_params(&self) -> Option<(&T, &T)> {
        match &self.kind {
            SequenceKind::GenCheb { alpha, beta } => Some((alpha, beta)),
            _ => None,
        }
    }

    /// Convert every stored value to another backend.
    pub fn map_backend<U: Scalar>(&self, f: &impl Fn(&T) -> U) -> CoefficientSequence<U> {
        let kind = match &self.kind {
            SequenceKind::Custom { prefix, tail } => SequenceKind::Custom {
                prefix: prefix.iter().map(f).collect(),
                tail: tail.as_ref().map(|t| match t {
                    Tail::Constant(v) => Tail::Constant(f(v)),
                    Tail::Periodic(b) => Tail::Periodic(b.iter().map(f).collect()),
                }),
            },
            SequenceKind::GenCheb { alpha, beta } => SequenceKind::GenCheb { alpha: f(alpha), beta: f(beta) },
            SequenceKind::Sieved2(base) => SequenceKind::Sieved2(Box::new(base.map_backend(f))),
            SequenceKind::Sieved3UltraQuarter => SequenceKind::Sieved3UltraQuarter,
            SequenceKind::ConstantHalf => SequenceKind::ConstantHalf,
        };
        CoefficientSequence { kind }
    }

    pub fn to_f64(&self) -> CoefficientSequence<f64> {
        self.map_backend(&|v: &T| v.to_f64())
    }
}

impl CoefficientSequence<Rational> {
    pub fn to_backend<U: Scalar>(&self) -> CoefficientSequence<U> {
        self.map_backend(&U::from_rational)
    }
}

fn check_unit<T: Scalar>(index: usize, value: &T) -> Result<()> {
    if in_open_unit(value) {
        Ok(())
    } else {
        Err(Error::InvalidCoefficient { index, value: format!("{value:?}") })
    }
}

fn check_jacobi_domain<T: Scalar>(alpha: &T, beta: &T) -> Result<()> {
    let minus_one = -T::one();
    if alpha <= &minus_one || beta <= &minus_one {
        return Err(Error::ParameterDomain(format!(
            "alpha and beta must exceed -1 (got alpha = {alpha:?}, beta = {beta:?})"
        )));
    }
    Ok(())
}

/// `c_{2k-1} = (k+β)/(2k+α+β)`, `c_{2k} = k/(2k+α+β+1)`.
pub(crate) fn gencheb_coeff<T: Scalar>(alpha: &T, beta: &T, n: usize) -> T {
    if n == 0 {
        return T::zero();
    }
    let k = T::from_i64(n.div_ceil(2) as i64);
    let two_k = k.clone() + k.clone();
    let ab = alpha.clone() + beta.clone();
    if n % 2 == 1 {
        (k + beta.clone()) / (two_k + ab)
    } else {
        k / (two_k + ab + T::one())
    }
}

/// Generalized Chebyshev polynomials `T_n^{(α,β)}`; `β = -1/2` gives the
/// ultraspherical family.
pub fn gencheb_sequence<T: Scalar>(alpha: T, beta: T) -> Result<CoefficientSequence<T>> {
    check_jacobi_domain(&alpha, &beta)?;
    Ok(CoefficientSequence { kind: SequenceKind::GenCheb { alpha, beta } })
}

/// 2-sieving: `c(n;2) = c_{n/2}` for even `n`, `1/2` for odd `n`.
///
/// The Chebyshev sequence is a fixed point and is returned unchanged.
pub fn sieve2<T: Scalar>(base: CoefficientSequence<T>) -> CoefficientSequence<T> {
    if matches!(base.kind, SequenceKind::ConstantHalf) {
        return base;
    }
    CoefficientSequence { kind: SequenceKind::Sieved2(Box::new(base)) }
}

pub fn sieved3_example<T: Scalar>() -> CoefficientSequence<T> {
    CoefficientSequence::sieved3_example()
}

pub fn coeff<T: Scalar>(seq: &CoefficientSequence<T>, n: usize) -> Result<T> {
    seq.coeff(n)
}

/// Recurrence `y R_n = a_n R_{n+1} + b_n R_n + c_n R_{n-1}` with `R_n(1) = 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct NonSymmetricSequence<T> {
    alpha: T,
    beta: T,
}

impl<T: Scalar> NonSymmetricSequence<T> {
    pub fn alpha(&self) -> &T {
        &self.alpha
    }

    pub fn beta(&self) -> &T {
        &self.beta
    }

    /// `(a_n, b_n, c_n)` for the normalized Jacobi polynomials.
    pub fn coeffs(&self, n: usize) -> (T, T, T) {
        let (alpha, beta) = (&self.alpha, &self.beta);
        let two = T::from_i64(2);
        let nn = T::from_i64(n as i64);
        let ab = alpha.clone() + beta.clone();
        let (a, c) = if n == 0 {
            // The general a_n formula has a removable (α+β+1)/(α+β+1) at n = 0.
            (two * (alpha.clone() + T::one()) / (ab + two_t()), T::zero())
        } else {
            let s = nn.clone() + nn.clone() + ab.clone();
            let a =
                two.clone() * (nn.clone() + alpha.clone() + T::one()) * (nn.clone() + ab.clone() + T::one())
                    / ((s.clone() + T::one()) * (s.clone() + two.clone()));
            let c = two * nn.clone() * (nn + beta.clone()) / (s.clone() * (s + T::one()));
            (a, c)
        };
        let b = T::one() - a.clone() - c.clone();
        (a, b, c)
    }
}

fn two_t<T: Scalar>() -> T {
    T::from_i64(2)
}

/// Normalized Jacobi recurrence for weight `(1-y)^α (1+y)^β` on `(-1, 1)`.
pub fn jacobi_recurrence<T: Scalar>(alpha: T, beta: T) -> Result<NonSymmetricSequence<T>> {
    check_jacobi_domain(&alpha, &beta)?;
    Ok(NonSymmetricSequence { alpha, beta })
}

/// Built-in family names understood by the JSON sequence spec.
pub const FAMILIES: &[(&str, &str)] = &[
    ("constant-half", "c_n = 1/2 (Chebyshev polynomials of the first kind)"),
    ("gencheb", "generalized Chebyshev T_n^(alpha,beta), alpha, beta > -1"),
    ("custom", "explicit prefix with a constant or periodic tail"),
    ("sieved2", "2-sieved version of a base sequence"),
    ("sieved3-ultra-quarter", "c_n = 2n/(4n+3) if 3 | n, else 1/2"),
    ("jacobi", "normalized Jacobi recurrence (non-symmetric), alpha, beta > -1"),
];
