//! Evaluation of `P_n(x)`, Turán determinants and the Jacobi recurrence.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::scalar::Scalar;
use crate::sequences::{CoefficientSequence, NonSymmetricSequence};

/// `[P_0(x), ..., P_N(x)]` at one point.
#[derive(Debug, Clone, PartialEq)]
pub struct EvaluationTrace<T> {
    pub x: T,
    pub values: Vec<T>,
}

impl<T: Scalar> EvaluationTrace<T> {
    /// `P_n(x)`.
    pub fn p(&self, n: usize) -> &T {
        &self.values[n]
    }

    pub fn max_degree(&self) -> usize {
        self.values.len() - 1
    }

    /// `Δ_n(x) = P_n² - P_{n+1} P_{n-1}` for `1 <= n < N`.
    pub fn delta(&self, n: usize) -> T {
        let v = &self.values;
        v[n].square() - v[n + 1].clone() * v[n - 1].clone()
    }
}

/// `[Δ_1(x), ..., Δ_{N-1}(x)]` at one point.
#[derive(Debug, Clone, PartialEq)]
pub struct TuranValues<T> {
    pub x: T,
    pub values: Vec<T>,
}

impl<T: Scalar> TuranValues<T> {
    /// `Δ_n(x)` for `n >= 1`.
    pub fn delta(&self, n: usize) -> &T {
        &self.values[n - 1]
    }
}

/// Forward recurrence `P_{n+1} = (x P_n - c_n P_{n-1}) / a_n` driven by an
/// arbitrary coefficient accessor. `coeff(n)` must return `c_n`.
pub fn recurrence_trace<T: Scalar>(
    coeff: impl Fn(usize) -> Result<T>,
    x: &T,
    degree: usize,
) -> Result<EvaluationTrace<T>> {
    let mut values = Vec::with_capacity(degree + 1);
    values.push(T::one());
    if degree >= 1 {
        values.push(x.clone());
    }
    for n in 1..degree {
        let c = coeff(n)?;
        let a = T::one() - c.clone();
        let next = (x.clone() * values[n].clone() - c * values[n - 1].clone()) / a;
        values.push(next);
    }
    Ok(EvaluationTrace { x: x.clone(), values })
}

/// `P_0(x), ..., P_N(x)`.
pub fn eval_p<T: Scalar>(seq: &CoefficientSequence<T>, x: &T, degree: usize) -> Result<EvaluationTrace<T>> {
    recurrence_trace(|n| seq.coeff(n), x, degree)
}

/// Monomial coefficients of `P_0, ..., P_N`. Exact backend only.
pub fn poly_coeffs<T: Scalar>(seq: &CoefficientSequence<T>, degree: usize) -> Result<Vec<Polynomial<T>>> {
    if !T::is_exact() {
        return Err(Error::ExactBackendRequired);
    }
    let mut polys = Vec::with_capacity(degree + 1);
    polys.push(Polynomial::constant(T::one()));
    if degree >= 1 {
        polys.push(Polynomial::x());
    }
    for n in 1..degree {
        let c = seq.coeff(n)?;
        let inv_a = T::one() / (T::one() - c.clone());
        let next = &polys[n].shift() - &polys[n - 1].scale(&c);
        polys.push(next.scale(&inv_a));
    }
    Ok(polys)
}

/// `Δ_1(x), ..., Δ_{N-1}(x)` from one shared trace of length `N + 1`.
pub fn turan<T: Scalar>(seq: &CoefficientSequence<T>, x: &T, degree: usize) -> Result<TuranValues<T>> {
    if degree < 2 {
        return Err(Error::InvalidArgument(format!("Turán determinants need N >= 2, got {degree}")));
    }
    let trace = eval_p(seq, x, degree)?;
    Ok(turan_from_trace(&trace))
}

pub fn turan_from_trace<T: Scalar>(trace: &EvaluationTrace<T>) -> TuranValues<T> {
    let values = (1..trace.max_degree()).map(|n| trace.delta(n)).collect();
    TuranValues { x: trace.x.clone(), values }
}

/// `Δ_n(x)` alone.
pub fn delta_at<T: Scalar>(seq: &CoefficientSequence<T>, n: usize, x: &T) -> Result<T> {
    Ok(eval_p(seq, x, n + 1)?.delta(n))
}

/// `Δ_n` on a batch of points; each point is computed independently.
pub fn delta_on_points<T: Scalar>(seq: &CoefficientSequence<T>, n: usize, xs: &[T]) -> Result<Vec<T>> {
    xs.par_iter().map(|x| delta_at(seq, n, x)).collect()
}

/// `R_{n+1} = ((y - b_n) R_n - c_n R_{n-1}) / a_n` with `R_0 = 1`.
pub fn eval_nonsym<T: Scalar>(seq: &NonSymmetricSequence<T>, y: &T, degree: usize) -> EvaluationTrace<T> {
    let mut values = Vec::with_capacity(degree + 1);
    values.push(T::one());
    for n in 0..degree {
        let (a, b, c) = seq.coeffs(n);
        let prev = if n == 0 { T::zero() } else { values[n - 1].clone() };
        let next = ((y.clone() - b) * values[n].clone() - c * prev) / a;
        values.push(next);
    }
    EvaluationTrace { x: y.clone(), values }
}

/// Monomial coefficients of `R_0, ..., R_N` for the non-symmetric recurrence.
pub fn nonsym_poly_coeffs<T: Scalar>(
    seq: &NonSymmetricSequence<T>,
    degree: usize,
) -> Result<Vec<Polynomial<T>>> {
    if !T::is_exact() {
        return Err(Error::ExactBackendRequired);
    }
    let mut polys = vec![Polynomial::constant(T::one())];
    for n in 0..degree {
        let (a, b, c) = seq.coeffs(n);
        let mut next = &polys[n].shift() - &polys[n].scale(&b);
        if n > 0 {
            next = &next - &polys[n - 1].scale(&c);
        }
        polys.push(next.scale(&(T::one() / a)));
    }
    Ok(polys)
}

/// Absolute tolerance for zeros.
pub const ZERO_TOLERANCE: f64 = 1e-13;
/// Bisection step cap per zero.
pub const MAX_BISECTION_STEPS: usize = 200;

/// The `n` zeros of `P_n`, increasing.
///
/// Zeros of `P_k` are bracketed by the zeros of `P_{k-1}` together with `±1`
/// (strict interlacing), so each bracket holds exactly one sign change. The
/// result is made exactly symmetric: `x_k + x_{n+1-k} = 0`.
pub fn zeros(seq: &CoefficientSequence<f64>, n: usize) -> Result<Vec<f64>> {
    if n == 0 {
        return Err(Error::InvalidArgument("P_0 has no zeros".into()));
    }
    let mut previous: Vec<f64> = Vec::new();
    for degree in 1..=n {
        let mut edges = Vec::with_capacity(degree + 1);
        edges.push(-1.0);
        edges.extend(previous.iter().copied());
        edges.push(1.0);
        let p = |x: f64| -> Result<f64> { Ok(*eval_p(seq, &x, degree)?.p(degree)) };
        let mut current = Vec::with_capacity(degree);
        for w in edges.windows(2) {
            current.push(bisect(&p, w[0], w[1], degree)?);
        }
        symmetrize(&mut current);
        previous = current;
    }
    Ok(previous)
}

fn bisect(p: &impl Fn(f64) -> Result<f64>, lo: f64, hi: f64, degree: usize) -> Result<f64> {
    let (mut lo, mut hi) = (lo, hi);
    let mut f_lo = p(lo)?;
    let f_hi = p(hi)?;
    if f_lo == 0.0 {
        return Ok(lo);
    }
    if f_hi == 0.0 {
        return Ok(hi);
    }
    if f_lo.signum() == f_hi.signum() {
        return Err(Error::NoConvergence {
            degree,
            lo,
            hi,
            reason: format!("no sign change (P = {f_lo:e} and {f_hi:e})"),
        });
    }
    for _ in 0..MAX_BISECTION_STEPS {
        let mid = 0.5 * (lo + hi);
        if hi - lo <= ZERO_TOLERANCE || mid == lo || mid == hi {
            return Ok(mid);
        }
        let f_mid = p(mid)?;
        if f_mid == 0.0 {
            return Ok(mid);
        }
        if f_mid.signum() == f_lo.signum() {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    Err(Error::NoConvergence {
        degree,
        lo,
        hi,
        reason: format!("bracket width {:e} after {MAX_BISECTION_STEPS} steps", hi - lo),
    })
}

fn symmetrize(zs: &mut [f64]) {
    let n = zs.len();
    for k in 0..n / 2 {
        let r = 0.5 * (zs[n - 1 - k] - zs[k]);
        zs[k] = -r;
        zs[n - 1 - k] = r;
    }
    if n % 2 == 1 {
        zs[n / 2] = 0.0;
    }
}
