//! Grid scans of `Δ_n`, lower-bound estimates for `Δ_n/(1-x²)` and limits at
//! the endpoint.
//!
//! Grid minima are estimates at the sampled points only.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::float::FloatCore;
use num_traits::One;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::evaluation::{delta_at, eval_nonsym, nonsym_poly_coeffs, poly_coeffs};
use crate::poly::Polynomial;
use crate::scalar::{rational_from_f64, Rational, Scalar};
use crate::sequences::{jacobi_recurrence, CoefficientSequence};

/// Sample points on `[-1, 1]`, always including both endpoints.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum Grid {
    /// `cos(jπ/(points-1))` for `j = 0..points`; clusters near `±1`.
    Chebyshev { points: usize },
    /// `j/den` for `-den <= j <= den`; exact on the rational backend.
    Rational { den: usize },
}

impl Default for Grid {
    fn default() -> Self {
        Grid::Chebyshev { points: 2001 }
    }
}

impl Grid {
    pub fn len(&self) -> usize {
        match *self {
            Grid::Chebyshev { points } => points,
            Grid::Rational { den } => 2 * den + 1,
        }
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn name(&self) -> &'static str {
        match self {
            Grid::Chebyshev { .. } => "chebyshev",
            Grid::Rational { .. } => "rational",
        }
    }

    fn check(&self) -> Result<()> {
        match *self {
            Grid::Chebyshev { points } if points < 3 => {
                Err(Error::InvalidArgument(format!("grid needs at least 3 points, got {points}")))
            }
            Grid::Rational { den: 0 } => {
                Err(Error::InvalidArgument("rational grid needs a positive denominator".into()))
            }
            _ => Ok(()),
        }
    }

    /// Points in increasing order. Chebyshev nodes are mirrored so the grid is
    /// exactly symmetric, with exact endpoints and an exact 0 for odd counts.
    pub fn points_f64(&self) -> Vec<f64> {
        match *self {
            Grid::Chebyshev { points } => {
                let last = points - 1;
                let mut xs = vec![0.0; points];
                for j in 0..=last / 2 {
                    let v = if 2 * j == last {
                        0.0
                    } else if j == 0 {
                        1.0
                    } else {
                        (j as f64 * std::f64::consts::PI / last as f64).cos()
                    };
                    xs[last - j] = v;
                    xs[j] = -v;
                }
                xs
            }
            Grid::Rational { den } => {
                let d = den as i64;
                (-d..=d).map(|j| j as f64 / d as f64).collect()
            }
        }
    }

    /// Points in the given backend; Chebyshev nodes become the dyadic
    /// rationals of their `f64` values on the exact backend.
    pub fn points<T: Scalar>(&self) -> Vec<T> {
        match *self {
            Grid::Chebyshev { .. } => self
                .points_f64()
                .into_iter()
                .map(|v| T::from_rational(&rational_from_f64(v).expect("grid points are finite")))
                .collect(),
            Grid::Rational { den } => {
                let d = den as i64;
                (-d..=d).map(|j| T::from_ratio(j, d)).collect()
            }
        }
    }
}

/// Minimum of a sampled function on a grid.
#[derive(Debug, Clone, PartialEq)]
pub struct ScanResult<T> {
    pub n: usize,
    pub grid: Grid,
    pub min: T,
    /// Smallest grid point attaining `min`.
    pub argmin: T,
    /// Minimum over the grid without `±1`.
    pub interior_min: T,
    /// `min` of `Δ_n/(1-x²)` when it was estimated.
    pub k_estimate: Option<T>,
}

/// Text form of a [`ScanResult`] for CSV and JSON output.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanRecord {
    pub n: usize,
    pub grid: String,
    pub grid_points: usize,
    pub min: String,
    pub argmin: String,
    pub interior_min: String,
    #[serde(rename = "K_estimate")]
    pub k_estimate: String,
}

impl<T: Scalar> ScanResult<T> {
    pub fn record(&self) -> ScanRecord {
        ScanRecord {
            n: self.n,
            grid: self.grid.name().to_string(),
            grid_points: self.grid.len(),
            min: self.min.to_text(),
            argmin: self.argmin.to_text(),
            interior_min: self.interior_min.to_text(),
            k_estimate: self.k_estimate.as_ref().map(Scalar::to_text).unwrap_or_default(),
        }
    }

    /// `K_n` estimate is strictly positive.
    pub fn k_positive(&self) -> Option<bool> {
        self.k_estimate.as_ref().map(|k| k > &T::zero())
    }
}

/// Deterministic minimum over `(x, value)` pairs sorted by `x`; ties keep the
/// smaller `x`.
fn reduce<T: Scalar>(n: usize, grid: Grid, xs: &[T], values: Vec<T>) -> ScanResult<T> {
    let last = xs.len() - 1;
    let mut best = 0;
    let mut interior = 1;
    for i in 1..xs.len() {
        if values[i] < values[best] {
            best = i;
        }
        if i < last && values[i] < values[interior] {
            interior = i;
        }
    }
    ScanResult {
        n,
        grid,
        min: values[best].clone(),
        argmin: xs[best].clone(),
        interior_min: values[interior].clone(),
        k_estimate: None,
    }
}

/// Minimum of `Δ_n` over the grid.
pub fn scan_min<T: Scalar>(seq: &CoefficientSequence<T>, n: usize, grid: &Grid) -> Result<ScanResult<T>> {
    grid.check()?;
    if n < 1 {
        return Err(Error::InvalidArgument("Δ_n needs n >= 1".into()));
    }
    let xs = grid.points::<T>();
    let values = xs.par_iter().map(|x| delta_at(seq, n, x)).collect::<Result<Vec<_>>>()?;
    Ok(reduce(n, *grid, &xs, values))
}

/// Monomial coefficients of `Δ_n`. Exact backend only.
pub fn delta_poly<T: Scalar>(seq: &CoefficientSequence<T>, n: usize) -> Result<Polynomial<T>> {
    if n < 1 {
        return Err(Error::InvalidArgument("Δ_n needs n >= 1".into()));
    }
    let p = poly_coeffs(seq, n + 1)?;
    Ok(&(&p[n] * &p[n]) - &(&p[n + 1] * &p[n - 1]))
}

/// Exact quotient of `p` by `1 - x²`.
pub fn divide_by_one_minus_x2<T: Scalar>(p: &Polynomial<T>) -> Result<Polynomial<T>> {
    p.divide_by_one_minus_x2()
}

/// `Q_n(1)` for a quotient `Q_n = Δ_n/(1-x²)`.
pub fn limit_at_one<T: Scalar>(quotient: &Polynomial<T>) -> T {
    quotient.eval(&T::one())
}

/// `Q_n = Δ_n/(1-x²)` as an exact polynomial.
pub fn delta_quotient(seq: &CoefficientSequence<Rational>, n: usize) -> Result<Polynomial<Rational>> {
    divide_by_one_minus_x2(&delta_poly(seq, n)?)
}

/// `Q` over a common denominator, for evaluation without rational
/// normalization.
struct IntegerPoly {
    numerators: Vec<BigInt>,
    denominator: BigInt,
}

impl IntegerPoly {
    fn new(p: &Polynomial<Rational>) -> Self {
        let denominator = p.coeffs().iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let numerators = p.coeffs().iter().map(|c| c.numer() * (&denominator / c.denom())).collect();
        Self { numerators, denominator }
    }

    /// `Q(num/den)` rounded once to `f64`.
    fn eval_ratio(&self, num: &BigInt, den: &BigInt) -> f64 {
        let Some((top, rest)) = self.numerators.split_last() else {
            return 0.0;
        };
        // Σ N_i num^i den^{d-i}, by homogeneous Horner.
        let mut acc = top.clone();
        let mut den_pow = BigInt::one();
        for coeff in rest.iter().rev() {
            den_pow *= den;
            acc = acc * num + coeff * &den_pow;
        }
        let scale = &self.denominator * den_pow;
        Rational::new_raw(acc, scale).to_f64()
    }

    fn eval_f64(&self, x: f64) -> f64 {
        let (mantissa, exponent, sign) = x.integer_decode();
        let mut num = BigInt::from(mantissa) * BigInt::from(sign);
        let mut den = BigInt::one();
        if exponent >= 0 {
            num <<= exponent as usize;
        } else {
            den <<= (-exponent) as usize;
        }
        self.eval_ratio(&num, &den)
    }
}

/// Estimate of the largest `K_n` with `Δ_n(x) >= K_n (1-x²)`: the minimum of
/// `Q_n = Δ_n/(1-x²)` over the grid.
///
/// `Q_n` is computed exactly and evaluated exactly at each grid point (Chebyshev
/// nodes are taken at their `f64` values); only the final value is rounded.
pub fn estimate_kn(seq: &CoefficientSequence<Rational>, n: usize, grid: &Grid) -> Result<ScanResult<f64>> {
    grid.check()?;
    let quotient = IntegerPoly::new(&delta_quotient(seq, n)?);
    let xs = grid.points_f64();
    let values: Vec<f64> = match *grid {
        Grid::Rational { den } => {
            let d = den as i64;
            let den = BigInt::from(d);
            (-d..=d).into_par_iter().map(|j| quotient.eval_ratio(&BigInt::from(j), &den)).collect()
        }
        Grid::Chebyshev { .. } => xs.par_iter().map(|&x| quotient.eval_f64(x)).collect(),
    };
    let mut result = reduce(n, *grid, &xs, values);
    result.k_estimate = Some(result.min);
    Ok(result)
}

/// `Δ_n` minimum together with the `K_n` estimate.
pub fn scan(seq: &CoefficientSequence<Rational>, n: usize, grid: &Grid) -> Result<ScanResult<f64>> {
    let k = estimate_kn(seq, n, grid)?;
    let mut result = match grid {
        Grid::Rational { .. } => {
            let exact = scan_min(seq, n, grid)?;
            ScanResult {
                n,
                grid: *grid,
                min: exact.min.to_f64(),
                argmin: exact.argmin.to_f64(),
                interior_min: exact.interior_min.to_f64(),
                k_estimate: None,
            }
        }
        Grid::Chebyshev { .. } => scan_min(&seq.to_f64(), n, grid)?,
    };
    result.k_estimate = k.k_estimate;
    Ok(result)
}

/// `Δ_n(y) = R_n² - R_{n+1} R_{n-1}` for the normalized Jacobi recurrence, as
/// an exact polynomial.
pub fn jacobi_delta_poly(alpha: &Rational, beta: &Rational, n: usize) -> Result<Polynomial<Rational>> {
    if n < 1 {
        return Err(Error::InvalidArgument("Δ_n needs n >= 1".into()));
    }
    let seq = jacobi_recurrence(alpha.clone(), beta.clone())?;
    let r = nonsym_poly_coeffs(&seq, n + 1)?;
    Ok(&(&r[n] * &r[n]) - &(&r[n + 1] * &r[n - 1]))
}

/// `lim_{y→1} Δ_n(y)/(1-y²)` for Jacobi polynomials, exactly: the quotient
/// by `1 - y` evaluated at 1, halved. `Δ_n` need not vanish at `-1` here.
pub fn jacobi_limit_exact(alpha: &Rational, beta: &Rational, n: usize) -> Result<Rational> {
    let quotient = jacobi_delta_poly(alpha, beta, n)?.divide_by_one_minus_x()?;
    Ok(quotient.eval(&Rational::from_i64(1)) / Rational::from_i64(2))
}

/// Step exponents of the difference quotient: `y = 1 - 2^{-k}`.
pub const RICHARDSON_STEPS: std::ops::RangeInclusive<i32> = 10..=20;
/// Agreement required between the last two extrapolated values.
pub const RICHARDSON_TOLERANCE: f64 = 1e-10;

/// The same limit in floating point by Richardson extrapolation of
/// `Δ_n(1-h)/(1-(1-h)²)` over `h = 2^{-k}`.
///
/// Each sample is exact to first order in `h`; the table eliminates the
/// powers of `h` one by one. Returns the most refined value and the gap to
/// the previous diagonal entry.
pub fn jacobi_limit_richardson(alpha: f64, beta: f64, n: usize) -> Result<(f64, f64)> {
    if n < 1 {
        return Err(Error::InvalidArgument("Δ_n needs n >= 1".into()));
    }
    let seq = jacobi_recurrence(alpha, beta)?;
    let sample = |k: i32| {
        let h = (2.0f64).powi(-k);
        let y = 1.0 - h;
        let r = eval_nonsym(&seq, &y, n + 1);
        r.delta(n) / (h * (2.0 - h))
    };
    // Coarse steps first; the tableau extrapolates towards h -> 0.
    let mut row: Vec<f64> = Vec::new();
    let mut best = (f64::NAN, f64::INFINITY);
    for k in RICHARDSON_STEPS {
        let mut next = vec![sample(k)];
        for (j, prev) in row.iter().enumerate() {
            let factor = (2.0f64).powi(j as i32 + 1);
            let v = next[j] + (next[j] - prev) / (factor - 1.0);
            next.push(v);
        }
        let depth = next.len();
        if depth >= 2 {
            let gap = (next[depth - 1] - next[depth - 2]).abs();
            if gap < best.1 {
                best = (next[depth - 1], gap);
            }
        }
        row = next;
    }
    if best.1.is_nan() || best.1 >= RICHARDSON_TOLERANCE {
        return Err(Error::Extrapolation { degree: n, gap: best.1 });
    }
    Ok(best)
}

/// Rows of `x, Δ_{n_1}(x), Δ_{n_2}(x), ...` over the grid.
pub fn plot_data<T: Scalar>(
    seq: &CoefficientSequence<T>,
    ns: &[usize],
    grid: &Grid,
) -> Result<Vec<(T, Vec<T>)>> {
    grid.check()?;
    if ns.contains(&0) {
        return Err(Error::InvalidArgument("Δ_n needs n >= 1".into()));
    }
    let top = ns.iter().copied().max().unwrap_or(0);
    grid.points::<T>()
        .into_par_iter()
        .map(|x| {
            let trace = crate::evaluation::eval_p(seq, &x, top + 1)?;
            let row = ns.iter().map(|&n| trace.delta(n)).collect();
            Ok((x, row))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::q;
    use crate::sequences::{gencheb_sequence, sieve2, Tail};

    fn one_minus_x2() -> Polynomial<Rational> {
        Polynomial::new(vec![q(1, 1), q(0, 1), q(-1, 1)])
    }

    #[test]
    fn grids() {
        let g = Grid::Chebyshev { points: 5 };
        let xs = g.points_f64();
        assert_eq!(xs.len(), 5);
        assert_eq!((xs[0], xs[2], xs[4]), (-1.0, 0.0, 1.0));
        assert_eq!(xs[1], -xs[3]);
        assert!(xs.windows(2).all(|w| w[0] < w[1]));
        let r = Grid::Rational { den: 4 }.points::<Rational>();
        assert_eq!(r.len(), 9);
        assert_eq!(r[1], q(-3, 4));
        assert!(Grid::Chebyshev { points: 2 }.check().is_err());
        assert_eq!(Grid::default().len(), 2001);
    }

    #[test]
    fn delta_polys() {
        let half = CoefficientSequence::<Rational>::constant_half();
        for n in 1..10 {
            assert_eq!(delta_poly(&half, n).unwrap(), one_minus_x2());
        }
        let legendre = gencheb_sequence(q(0, 1), q(-1, 2)).unwrap();
        let d2 = delta_poly(&legendre, 2).unwrap();
        assert_eq!(d2, Polynomial::new(vec![q(1, 4), q(0, 1), q(0, 1), q(0, 1), q(-1, 4)]));
        assert_eq!(divide_by_one_minus_x2(&d2).unwrap(), Polynomial::new(vec![q(1, 4), q(0, 1), q(1, 4)]));
        let seq = CoefficientSequence::custom(vec![q(2, 9)], Some(Tail::Constant(q(1, 2)))).unwrap();
        let d1 = delta_poly(&seq, 1).unwrap();
        assert_eq!(d1, one_minus_x2().scale(&q(2, 7)));
        assert!(delta_poly(&CoefficientSequence::<f64>::constant_half(), 2).is_err());
    }

    #[test]
    fn division() {
        assert_eq!(divide_by_one_minus_x2(&one_minus_x2()).unwrap(), Polynomial::constant(q(1, 1)));
        let bad = Polynomial::new(vec![q(1, 1), q(1, 1)]);
        assert!(matches!(divide_by_one_minus_x2(&bad), Err(Error::NotDivisible)));
        for alpha in [q(0, 1), q(1, 1), q(5, 2)] {
            let seq = gencheb_sequence(alpha, q(0, 1)).unwrap();
            let q2 = delta_quotient(&seq, 2).unwrap();
            assert_eq!(limit_at_one(&q2), q(0, 1));
        }
    }

    #[test]
    fn kn_estimates() {
        let half = CoefficientSequence::<Rational>::constant_half();
        let r = estimate_kn(&half, 7, &Grid::Chebyshev { points: 101 }).unwrap();
        assert_eq!(r.k_estimate, Some(1.0));
        assert_eq!(limit_at_one(&delta_quotient(&half, 7).unwrap()), q(1, 1));

        let seq = gencheb_sequence(q(1, 1), q(0, 1)).unwrap();
        let r = estimate_kn(&seq, 4, &Grid::Chebyshev { points: 101 }).unwrap();
        assert_eq!(r.k_estimate, Some(0.0));
        assert_eq!(r.argmin, -1.0);

        let seq = gencheb_sequence(q(1, 2), q(-1, 4)).unwrap();
        for grid in [Grid::Chebyshev { points: 201 }, Grid::Rational { den: 50 }] {
            let r = estimate_kn(&seq, 6, &grid).unwrap();
            assert_eq!(r.k_positive(), Some(true));
        }

        let seq = CoefficientSequence::custom(vec![q(3, 7)], Some(Tail::Constant(q(1, 2)))).unwrap();
        let r = estimate_kn(&seq, 1, &Grid::Rational { den: 10 }).unwrap();
        assert_eq!(r.k_estimate, Some(0.75));
    }

    #[test]
    fn sieved_scan_finds_negatives() {
        let third = sieve2(CoefficientSequence::constant(q(1, 3)).unwrap());
        let r = scan_min(&third, 4, &Grid::Rational { den: 100 }).unwrap();
        assert!(r.min < q(0, 1));
        assert!(r.interior_min < q(0, 1));
        let four_fifths = sieve2(CoefficientSequence::constant(q(4, 5)).unwrap());
        let v = delta_at(&four_fifths, 4, &q(9, 10)).unwrap().to_f64();
        assert!((v + 0.632).abs() < 5e-4, "{v}");
    }

    #[test]
    fn scan_combines_min_and_k() {
        let seq = gencheb_sequence(q(1, 2), q(-1, 4)).unwrap();
        let r = scan(&seq, 5, &Grid::Chebyshev { points: 101 }).unwrap();
        assert!(r.interior_min > 0.0);
        assert_eq!(r.min, 0.0);
        assert!(r.k_estimate.unwrap() > 0.0);
        let rec = r.record();
        assert_eq!(rec.grid_points, 101);
        assert!(!rec.k_estimate.is_empty());
    }

    #[test]
    fn jacobi_limits() {
        for (a, b) in [((0, 1), (0, 1)), ((1, 2), (1, 1)), ((1, 1), (-1, 2))] {
            let (alpha, beta) = (q(a.0, a.1), q(b.0, b.1));
            let expect = q(1, 1) / (q(2, 1) * alpha.clone() + q(2, 1));
            for n in 1..=6 {
                assert_eq!(jacobi_limit_exact(&alpha, &beta, n).unwrap(), expect);
            }
        }
    }

    #[test]
    fn jacobi_limit_float_route() {
        for (alpha, beta) in [(0.0, 0.0), (0.5, 1.0), (1.0, -0.5)] {
            for n in 1..=4 {
                match jacobi_limit_richardson(alpha, beta, n) {
                    Ok((v, _)) => assert!((v - 1.0 / (2.0 * alpha + 2.0)).abs() < 1e-8, "{v}"),
                    Err(e) => panic!("alpha={alpha} beta={beta} n={n}: {e}"),
                }
            }
        }
    }

    #[test]
    fn plot_rows() {
        let rows =
            plot_data(&CoefficientSequence::<f64>::constant_half(), &[1, 3], &Grid::Chebyshev { points: 11 })
                .unwrap();
        assert_eq!(rows.len(), 11);
        for (x, vals) in rows {
            for v in vals {
                assert!((v - (1.0 - x * x)).abs() < 1e-14);
            }
        }
    }
}
