//! Identities and nonnegative representations of `Δ_n`.
//!
//! Every representation is evaluated term by term and compared against the
//! determinant computed directly from the recurrence.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::chain::{full_table, DerivedTable};
use crate::criteria::criterion_triple;
use crate::error::{Error, Result};
use crate::evaluation::{eval_nonsym, eval_p, recurrence_trace, zeros, EvaluationTrace};
use crate::scalar::Scalar;
use crate::sequences::{gencheb_coeff, jacobi_recurrence, CoefficientSequence};

/// `(a)_n = a (a+1) ... (a+n-1)`, with `(a)_0 = 1`.
pub fn pochhammer<T: Scalar>(a: &T, n: usize) -> T {
    (0..n).fold(T::one(), |acc, k| acc * (a.clone() + T::from_i64(k as i64)))
}

#[derive(Debug, Clone, PartialEq)]
pub struct Term<T> {
    pub label: String,
    pub value: T,
}

/// A representation of `Δ_n(x)` as a list of summands.
#[derive(Debug, Clone, PartialEq)]
pub struct RepresentationResult<T> {
    /// Short name of the representation.
    pub identity: String,
    /// Index of the determinant represented.
    pub n: usize,
    pub x: T,
    pub total: T,
    /// `Δ_n(x)` from the recurrence.
    pub direct: T,
    pub terms: Vec<Term<T>>,
    /// `total - direct`.
    pub residual: T,
    /// Set when the parameters lie outside the range where the summands are
    /// known to be nonnegative.
    pub outside_domain: bool,
}

impl<T: Scalar> RepresentationResult<T> {
    fn build(identity: &str, n: usize, x: &T, direct: T, terms: Vec<Term<T>>) -> Self {
        let total = terms.iter().fold(T::zero(), |acc, t| acc + t.value.clone());
        let residual = total.clone() - direct.clone();
        Self {
            identity: identity.to_string(),
            n,
            x: x.clone(),
            total,
            direct,
            terms,
            residual,
            outside_domain: false,
        }
    }

    /// `|total - direct| / (1 + |total| + |direct|)`.
    pub fn relative_residual(&self) -> f64 {
        relative_gap(&self.total, &self.direct)
    }

    pub fn terms_nonneg(&self, tol: f64) -> bool {
        self.terms.iter().all(|t| t.value.ge_tol(&T::zero(), tol))
    }

    pub fn record(&self) -> RepresentationRecord {
        RepresentationRecord {
            identity: self.identity.clone(),
            n: self.n,
            x: self.x.to_text(),
            total: self.total.to_text(),
            direct: self.direct.to_text(),
            residual: self.residual.to_text(),
            outside_domain: self.outside_domain,
            terms: self
                .terms
                .iter()
                .map(|t| TermRecord {
                    label: t.label.clone(),
                    value: t.value.to_text(),
                    nonneg: t.value >= T::zero(),
                })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermRecord {
    pub label: String,
    pub value: String,
    pub nonneg: bool,
}

/// Serializable form of a [`RepresentationResult`]; scalars are text.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RepresentationRecord {
    pub identity: String,
    pub n: usize,
    pub x: String,
    pub total: String,
    pub direct: String,
    pub residual: String,
    pub outside_domain: bool,
    pub terms: Vec<TermRecord>,
}

pub(crate) fn relative_gap<T: Scalar>(lhs: &T, rhs: &T) -> f64 {
    let (l, r) = (lhs.to_f64(), rhs.to_f64());
    if T::is_exact() {
        let diff = (lhs.clone() - rhs.clone()).abs().to_f64();
        return diff / (1.0 + l.abs() + r.abs());
    }
    (l - r).abs() / (1.0 + l.abs() + r.abs())
}

fn term<T>(label: impl Into<String>, value: T) -> Term<T> {
    Term { label: label.into(), value }
}

fn idx<T: Scalar>(k: usize) -> T {
    T::from_i64(k as i64)
}

/// The universal identities relating neighbouring determinants.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Identity {
    /// `Δ_n = (a_n/c_n) P_{n+1}² - (x/c_n) P_{n+1} P_n + P_n²`.
    Expansion,
    /// `Δ_{n+2}` in terms of `P_{n+1}` and `P_n`.
    DoubleStep,
    /// The combination of `Δ_{n+2}` and `Δ_n` weighted by the triple `A, B, C`.
    Combined,
    /// `Δ_{n+1} = s_n (1-x²) P_{1,n}² + t_n (1-x²) Δ_{1,n}`.
    DerivedStep,
}

impl Identity {
    pub const ALL: [Identity; 4] =
        [Identity::Expansion, Identity::DoubleStep, Identity::Combined, Identity::DerivedStep];

    pub fn name(self) -> &'static str {
        match self {
            Identity::Expansion => "expansion",
            Identity::DoubleStep => "double-step",
            Identity::Combined => "combined",
            Identity::DerivedStep => "derived-step",
        }
    }
}

/// `lhs - rhs` of each identity at index `n >= 1`. Builds a depth-one derived
/// table; use [`identity_residuals_with`] to reuse one across calls.
pub fn identity_residuals<T: Scalar>(
    seq: &CoefficientSequence<T>,
    x: &T,
    n: usize,
) -> Result<Vec<(Identity, T)>> {
    let table = full_table(seq, 1, n + 1)?;
    identity_residuals_with(seq, &table, x, n)
}

/// As [`identity_residuals`], with a table whose row 1 reaches column `n + 1`.
pub fn identity_residuals_with<T: Scalar>(
    seq: &CoefficientSequence<T>,
    table: &DerivedTable<T>,
    x: &T,
    n: usize,
) -> Result<Vec<(Identity, T)>> {
    if n < 1 {
        return Err(Error::InvalidArgument("identities are stated for n >= 1".into()));
    }
    let one = T::one();
    let p = eval_p(seq, x, n + 3)?;
    let c = |k: usize| seq.coeff(k);
    let (pn, pn1) = (p.p(n).clone(), p.p(n + 1).clone());
    let (cn, cn1, cn2) = (c(n)?, c(n + 1)?, c(n + 2)?);
    let (an, an1, an2) = (one.clone() - cn.clone(), one.clone() - cn1.clone(), one.clone() - cn2.clone());
    let x2 = x.square();
    let one_minus_x2 = one.clone() - x2.clone();

    let expansion = p.delta(n)
        - (an.clone() / cn.clone() * pn1.square() - x.clone() / cn.clone() * pn1.clone() * pn.clone()
            + pn.square());

    let an1_sq = an1.square();
    let double_step = p.delta(n + 2)
        - ((((an2.clone() - an1.clone()) * x2.clone() + an1_sq.clone() * cn2.clone()) * pn1.square()
            + (an1.clone() - T::from_i64(2) * an2.clone())
                * cn1.clone()
                * x.clone()
                * pn1.clone()
                * pn.clone())
            / (an1_sq.clone() * an2.clone())
            + cn1.square() / an1_sq.clone() * pn.square());

    let tr = criterion_triple(seq, n)?;
    let combined = an1_sq * an2 * tr.c.clone() * p.delta(n + 2)
        - an1.clone() * cn1.clone() * cn2.clone() * tr.a.clone() * p.delta(n)
        - an1 * cn2.clone() * (tr.c - tr.b.clone()) * one_minus_x2.clone() * pn1.square()
        - cn1 * cn2 * (tr.b - tr.a) * (x.clone() * pn1 - pn).square();

    let row1 = recurrence_trace(table.row_coeff(1), x, n + 1)?;
    let derived = p.delta(n + 1)
        - (table.s(0, n)?.clone() * one_minus_x2.clone() * row1.p(n).square()
            + table.t(0, n)?.clone() * one_minus_x2 * row1.delta(n));

    Ok(vec![
        (Identity::Expansion, expansion),
        (Identity::DoubleStep, double_step),
        (Identity::Combined, combined),
        (Identity::DerivedStep, derived),
    ])
}

/// `Δ_n(x) = Σ_{k=1}^n (1-x²)^k P_{k,n-k}² s_{k-1,n-k} ∏_{j=1}^{k-1} t_{j-1,n-j}`.
pub fn nonneg_rep<T: Scalar>(
    seq: &CoefficientSequence<T>,
    n: usize,
    x: &T,
) -> Result<RepresentationResult<T>> {
    nonneg_rep_shifted(seq, 0, n, x)
}

/// The same expansion for `Δ_{m,n}`, the determinant of derived row `m`.
pub fn nonneg_rep_shifted<T: Scalar>(
    seq: &CoefficientSequence<T>,
    m: usize,
    n: usize,
    x: &T,
) -> Result<RepresentationResult<T>> {
    if n < 1 {
        return Err(Error::InvalidArgument("the expansion is stated for n >= 1".into()));
    }
    let table = full_table(seq, m + n, 1)?;
    let traces = RowTraces::new(&table, x, m + n, n)?;
    nonneg_rep_with(&table, &traces, m, n)
}

/// Traces of `P_{k,·}(x)` for rows `0..=rows`, each to degree `degree + 1`.
pub struct RowTraces<T> {
    traces: Vec<EvaluationTrace<T>>,
    x: T,
}

impl<T: Scalar> RowTraces<T> {
    pub fn new(table: &DerivedTable<T>, x: &T, rows: usize, degree: usize) -> Result<Self> {
        let traces = (0..=rows)
            .map(|k| {
                let deg = (degree + 1).min(table.extent(k) + 1);
                recurrence_trace(table.row_coeff(k), x, deg)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { traces, x: x.clone() })
    }

    pub fn row(&self, k: usize) -> &EvaluationTrace<T> {
        &self.traces[k]
    }
}

/// Expansion of `Δ_{m,n}` from a prepared table and row traces.
pub fn nonneg_rep_with<T: Scalar>(
    table: &DerivedTable<T>,
    traces: &RowTraces<T>,
    m: usize,
    n: usize,
) -> Result<RepresentationResult<T>> {
    let x = &traces.x;
    let one_minus_x2 = T::one() - x.square();
    let mut terms = Vec::with_capacity(n);
    let mut weight = T::one();
    let mut power = T::one();
    for k in 1..=n {
        if k > 1 {
            weight = weight * table.t(m + k - 2, n - k + 1)?.clone();
        }
        power = power * one_minus_x2.clone();
        let p = traces.row(m + k).p(n - k).square();
        let s = table.s(m + k - 1, n - k)?.clone();
        terms.push(term(format!("k={k}"), power.clone() * p * s * weight.clone()));
    }
    let direct = traces.row(m).delta(n);
    let name = if m == 0 { "chain-expansion".to_string() } else { format!("chain-expansion-m{m}") };
    Ok(RepresentationResult::build(&name, n, x, direct, terms))
}

/// The four explicit expansions for `T_n^{(α,β)}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GenchebVariant {
    /// `Δ_{2n-1}` through `T^{(α,β)}` at lower degrees.
    Odd1,
    /// `Δ_{2n-1}` through `T` at shifted `α`.
    Odd2,
    /// `Δ_{2n}` through `T^{(α,β)}` at lower degrees.
    Even1,
    /// `Δ_{2n}` through `T` at shifted `α`.
    Even2,
}

impl GenchebVariant {
    pub const ALL: [GenchebVariant; 4] =
        [GenchebVariant::Odd1, GenchebVariant::Odd2, GenchebVariant::Even1, GenchebVariant::Even2];

    pub fn name(self) -> &'static str {
        match self {
            GenchebVariant::Odd1 => "odd-1",
            GenchebVariant::Odd2 => "odd-2",
            GenchebVariant::Even1 => "even-1",
            GenchebVariant::Even2 => "even-2",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|v| v.name() == name)
    }

    /// Index of the determinant represented for parameter `n`.
    pub fn delta_index(self, n: usize) -> usize {
        match self {
            GenchebVariant::Odd1 | GenchebVariant::Odd2 => 2 * n - 1,
            GenchebVariant::Even1 | GenchebVariant::Even2 => 2 * n,
        }
    }
}

/// Values `T_k^{(α+shift,β)}(x)` at one point, memoized per shift.
pub struct GenchebEvaluator<T> {
    alpha: T,
    beta: T,
    x: T,
    traces: HashMap<usize, Vec<T>>,
}

impl<T: Scalar> GenchebEvaluator<T> {
    pub fn new(alpha: T, beta: T, x: T) -> Result<Self> {
        let minus_one = -T::one();
        if alpha <= minus_one || beta <= minus_one {
            return Err(Error::ParameterDomain("alpha and beta must exceed -1".into()));
        }
        Ok(Self { alpha, beta, x, traces: HashMap::new() })
    }

    pub fn x(&self) -> &T {
        &self.x
    }

    /// `T_degree^{(α+shift,β)}(x)`.
    pub fn value(&mut self, shift: usize, degree: usize) -> T {
        let alpha = self.alpha.clone() + idx::<T>(shift);
        let (beta, x) = (&self.beta, &self.x);
        let trace = self.traces.entry(shift).or_insert_with(|| vec![T::one(), x.clone()]);
        while trace.len() <= degree {
            let k = trace.len() - 1;
            let c = gencheb_coeff(&alpha, beta, k);
            let a = T::one() - c.clone();
            let next = (x.clone() * trace[k].clone() - c * trace[k - 1].clone()) / a;
            trace.push(next);
        }
        trace[degree].clone()
    }

    /// `Δ_n(x)` of the unshifted sequence.
    pub fn delta(&mut self, n: usize) -> T {
        let (p_prev, p, p_next) = (self.value(0, n - 1), self.value(0, n), self.value(0, n + 1));
        p.square() - p_next * p_prev
    }
}

/// The `x`-dependent factor of one summand.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Factor {
    Unit,
    /// `T_degree^{(α+shift,β)}(x)²`.
    Square {
        shift: usize,
        degree: usize,
    },
    /// `(x T_degree(x) - T_{degree-1}(x))²` at the unshifted parameters.
    Gap {
        degree: usize,
    },
}

#[derive(Debug, Clone, PartialEq)]
struct Piece<T> {
    label: String,
    coef: T,
    factor: Factor,
    /// Exponent of `1 - x²`.
    power: usize,
}

/// One explicit expansion with its `x`-independent coefficients computed
/// once; evaluate it at many points with [`GenchebExpansion::evaluate`].
#[derive(Debug, Clone, PartialEq)]
pub struct GenchebExpansion<T> {
    alpha: T,
    beta: T,
    n: usize,
    variant: GenchebVariant,
    pieces: Vec<Piece<T>>,
}

impl<T: Scalar> GenchebExpansion<T> {
    pub fn new(alpha: &T, beta: &T, n: usize, variant: GenchebVariant) -> Result<Self> {
        if n < 1 {
            return Err(Error::InvalidArgument("explicit expansions are stated for n >= 1".into()));
        }
        let minus_one = -T::one();
        if alpha <= &minus_one || beta <= &minus_one {
            return Err(Error::ParameterDomain("alpha and beta must exceed -1".into()));
        }
        let (alpha, beta) = (alpha.clone(), beta.clone());
        let one = T::one();
        let bp1 = beta.clone() + one.clone();
        let neg_beta = -beta.clone();
        let ab = alpha.clone() + beta.clone();
        let poch = |a: T, k: usize| pochhammer(&a, k);
        let mut pieces = Vec::new();
        let mut push = |label: String, coef: T, factor: Factor, power: usize| {
            pieces.push(Piece { label, coef, factor, power });
        };

        match variant {
            GenchebVariant::Odd1 => {
                let lead = bp1.clone() * poch(one.clone(), n - 1) * poch(bp1.clone(), n - 1)
                    / (poch(alpha.clone() + one.clone(), n) * poch(ab.clone() + idx(2), n - 1));
                push("lead".into(), lead, Factor::Unit, 1);
                for k in 1..n {
                    let kk: T = idx(k);
                    let kab1 = kk.clone() + ab.clone() + one.clone();
                    let coef = (idx::<T>(2 * k) + ab.clone() + one.clone())
                        * poch(kk.clone() + bp1.clone(), n - 1 - k)
                        * poch(kk.clone() + one.clone(), n - 1 - k)
                        / (kab1.clone()
                            * poch(kk.clone() + alpha.clone() + one.clone(), n - k)
                            * poch(kab1.clone(), n - k));
                    push(
                        format!("k={k}:a"),
                        coef.clone() * bp1.clone() * kab1,
                        Factor::Square { shift: 0, degree: 2 * k },
                        1,
                    );
                    push(format!("k={k}:b"), coef * neg_beta.clone() * kk, Factor::Gap { degree: 2 * k }, 0);
                }
            }
            GenchebVariant::Odd2 => {
                push(
                    "lead".into(),
                    bp1.clone() / (alpha.clone() + one.clone()),
                    Factor::Square { shift: 1, degree: 2 * n - 2 },
                    1,
                );
                for k in 1..n {
                    let kk: T = idx(k);
                    let shift = 2 * n - 2 * k;
                    let sh: T = idx(shift);
                    let coef = poch(idx::<T>(n) + ab.clone() + one.clone(), n - k)
                        * poch(idx::<T>(n) + alpha.clone() + one.clone(), n - 1 - k)
                        * poch(kk.clone() + bp1.clone(), n - 1 - k)
                        * poch(kk.clone(), n - k)
                        / ((sh.clone() + alpha.clone() + one.clone())
                            * poch(alpha.clone() + one.clone(), shift).square());
                    push(
                        format!("k={k}:a"),
                        coef.clone()
                            * bp1.clone()
                            * (idx::<T>(2 * n - k) + alpha.clone())
                            * (kk + beta.clone()),
                        Factor::Square { shift: shift + 1, degree: 2 * k - 2 },
                        shift + 1,
                    );
                    push(
                        format!("k={k}:b"),
                        coef * neg_beta.clone()
                            * (sh.clone() + alpha.clone() + one.clone())
                            * (sh + alpha.clone()),
                        Factor::Square { shift, degree: 2 * k - 1 },
                        shift,
                    );
                }
            }
            GenchebVariant::Even1 => {
                for k in 0..n {
                    let kk: T = idx(k);
                    let ka1 = kk.clone() + alpha.clone() + one.clone();
                    let coef = (idx::<T>(2 * k) + ab.clone() + idx(2))
                        * poch(kk.clone() + beta.clone() + idx(2), n - 1 - k)
                        * poch(kk.clone() + one.clone(), n - 1 - k)
                        / (ka1.clone()
                            * poch(ka1.clone(), n - k)
                            * poch(kk.clone() + ab.clone() + idx(2), n - k));
                    push(
                        format!("k={k}:a"),
                        coef.clone() * neg_beta.clone() * ka1,
                        Factor::Square { shift: 0, degree: 2 * k + 1 },
                        1,
                    );
                    push(
                        format!("k={k}:b"),
                        coef * bp1.clone() * (kk + bp1.clone()),
                        Factor::Gap { degree: 2 * k + 1 },
                        0,
                    );
                }
            }
            GenchebVariant::Even2 => {
                for k in 0..n {
                    let kk: T = idx(k);
                    let shift = 2 * n - 2 * k;
                    let sh: T = idx(shift);
                    let m = n - 1 - k;
                    let coef = poch(idx::<T>(n) + ab.clone() + idx(2), m)
                        * poch(idx::<T>(n) + alpha.clone() + one.clone(), m)
                        * poch(kk.clone() + beta.clone() + idx(2), m)
                        * poch(kk.clone() + one.clone(), m)
                        / ((sh.clone() + alpha.clone())
                            * poch(alpha.clone() + one.clone(), shift - 1).square());
                    push(
                        format!("k={k}:a"),
                        coef.clone()
                            * neg_beta.clone()
                            * (sh.clone() + alpha.clone())
                            * (sh + alpha.clone() - one.clone()),
                        Factor::Square { shift: shift - 1, degree: 2 * k + 1 },
                        shift - 1,
                    );
                    push(
                        format!("k={k}:b"),
                        coef * bp1.clone() * (idx::<T>(2 * n - k) + alpha.clone()) * (kk + bp1.clone()),
                        Factor::Square { shift, degree: 2 * k },
                        shift,
                    );
                }
            }
        }
        Ok(Self { alpha, beta, n, variant, pieces })
    }

    pub fn variant(&self) -> GenchebVariant {
        self.variant
    }

    /// Index of the determinant represented.
    pub fn delta_index(&self) -> usize {
        self.variant.delta_index(self.n)
    }

    /// Summands at the evaluator's point, compared with the direct `Δ`.
    pub fn evaluate(&self, eval: &mut GenchebEvaluator<T>) -> Result<RepresentationResult<T>> {
        if eval.alpha != self.alpha || eval.beta != self.beta {
            return Err(Error::InvalidArgument("evaluator parameters differ from the expansion".into()));
        }
        let x = eval.x.clone();
        let omx = T::one() - x.square();
        let top = self.pieces.iter().map(|p| p.power).max().unwrap_or(0);
        let mut powers = vec![T::one()];
        for i in 0..top {
            let next = powers[i].clone() * omx.clone();
            powers.push(next);
        }
        let terms = self
            .pieces
            .iter()
            .map(|piece| {
                let factor = match piece.factor {
                    Factor::Unit => T::one(),
                    Factor::Square { shift, degree } => eval.value(shift, degree).square(),
                    Factor::Gap { degree } => {
                        (x.clone() * eval.value(0, degree) - eval.value(0, degree - 1)).square()
                    }
                };
                term(piece.label.clone(), piece.coef.clone() * factor * powers[piece.power].clone())
            })
            .collect();
        let index = self.delta_index();
        let direct = eval.delta(index);
        let mut result = RepresentationResult::build(self.variant.name(), index, &x, direct, terms);
        result.outside_domain = self.beta > T::zero();
        Ok(result)
    }
}

/// One explicit expansion of `Δ_{2n-1}` (odd variants) or `Δ_{2n}` (even
/// variants). Parameters with `β > 0` are evaluated and flagged as outside the
/// nonnegative domain.
pub fn gencheb_rep_explicit<T: Scalar>(
    alpha: &T,
    beta: &T,
    n: usize,
    x: &T,
    variant: GenchebVariant,
) -> Result<RepresentationResult<T>> {
    let mut eval = GenchebEvaluator::new(alpha.clone(), beta.clone(), x.clone())?;
    gencheb_rep_explicit_with(&mut eval, n, variant)
}

pub fn gencheb_rep_explicit_with<T: Scalar>(
    eval: &mut GenchebEvaluator<T>,
    n: usize,
    variant: GenchebVariant,
) -> Result<RepresentationResult<T>> {
    GenchebExpansion::new(&eval.alpha.clone(), &eval.beta.clone(), n, variant)?.evaluate(eval)
}

/// One step of the paired determinant recurrences for `T_n^{(α,β)}`:
/// `(Δ_{2n-1}, Δ_{2n}) -> (Δ_{2n+1}, Δ_{2n+2})`.
pub fn delta_recurrence_step<T: Scalar>(
    alpha: &T,
    beta: &T,
    n: usize,
    x: &T,
    delta_odd: &T,
    delta_even: &T,
) -> Result<(T, T)> {
    if n < 1 {
        return Err(Error::InvalidArgument("the recurrence starts at n = 1".into()));
    }
    let seq = crate::sequences::gencheb_sequence(alpha.clone(), beta.clone())?;
    let p = eval_p(&seq, x, 2 * n + 1)?;
    let one = T::one();
    let nn: T = idx(n);
    let omx = one.clone() - x.square();
    let na1 = nn.clone() + alpha.clone() + one.clone();
    let nab1 = na1.clone() + beta.clone();
    let nab2 = nab1.clone() + one.clone();
    let two_n_ab1 = nn.clone() + nab1.clone();
    let two_n_ab2 = two_n_ab1.clone() + one.clone();
    let bp1 = beta.clone() + one.clone();
    let (p2n1, p2n, p2n_1) = (p.p(2 * n + 1).clone(), p.p(2 * n).clone(), p.p(2 * n - 1).clone());

    let odd = nn.clone() * (nn.clone() + beta.clone()) / (na1.clone() * nab1.clone()) * delta_odd.clone()
        + bp1.clone() * two_n_ab1.clone() / (na1.clone() * nab1.clone()) * omx.clone() * p2n.square()
        + -beta.clone() * nn.clone() * two_n_ab1 / (na1.clone() * nab1.square())
            * (x.clone() * p2n.clone() - p2n_1).square();
    let nb1 = nn.clone() + bp1.clone();
    let even = nn * nb1.clone() / (na1.clone() * nab2.clone()) * delta_even.clone()
        + -beta.clone() * two_n_ab2.clone() / (na1.clone() * nab2.clone()) * omx * p2n1.square()
        + bp1 * nb1 * two_n_ab2 / (na1.square() * nab2) * (x.clone() * p2n1 - p2n).square();
    Ok((odd, even))
}

/// Minimum allowed `|x² - x_k²|` in the zero-based expansion.
pub const POLE_EXCLUSION: f64 = 1e-10;

/// `Δ_{2n}(x)` as a sum over the positive zeros `x_k` of `P_{2n}`:
/// `(1-x²)/(n(n+α+β+1)) Σ_k (-β(1-x_k²)x² + (β+1)x_k²(1-x²)) P_{2n}²/(x²-x_k²)²`.
pub fn zero_based_rep(alpha: f64, beta: f64, n: usize, x: f64) -> Result<RepresentationResult<f64>> {
    if n < 1 {
        return Err(Error::InvalidArgument("the zero expansion is stated for n >= 1".into()));
    }
    let seq = crate::sequences::gencheb_sequence(alpha, beta)?;
    let all = zeros(&seq, 2 * n)?;
    let positive = &all[n..];
    zero_based_rep_with(&seq, positive, n, x)
}

/// As [`zero_based_rep`] with precomputed positive zeros of `P_{2n}`.
pub fn zero_based_rep_with(
    seq: &CoefficientSequence<f64>,
    positive_zeros: &[f64],
    n: usize,
    x: f64,
) -> Result<RepresentationResult<f64>> {
    let (alpha, beta) = match seq.gencheb_params() {
        Some((a, b)) => (*a, *b),
        None => return Err(Error::InvalidArgument("zero expansion needs a gencheb sequence".into())),
    };
    let x2 = x * x;
    for &z in positive_zeros {
        let gap = (x2 - z * z).abs();
        if gap < POLE_EXCLUSION {
            return Err(Error::PoleProximity { x, zero: z, gap });
        }
    }
    let trace = eval_p(seq, &x, 2 * n + 1)?;
    let p2 = trace.p(2 * n).powi(2);
    let nf = n as f64;
    let prefactor = (1.0 - x2) / (nf * (nf + alpha + beta + 1.0));
    let mut terms = Vec::with_capacity(2 * n);
    for (i, &z) in positive_zeros.iter().enumerate() {
        let z2 = z * z;
        let denom = (x2 - z2).powi(2);
        let first = prefactor * -beta * (1.0 - z2) * x2 * p2 / denom;
        let second = prefactor * (beta + 1.0) * z2 * (1.0 - x2) * p2 / denom;
        terms.push(term(format!("k={}:a", i + 1), first));
        terms.push(term(format!("k={}:b", i + 1), second));
    }
    let direct = trace.delta(2 * n);
    let mut result = RepresentationResult::build("zero-expansion", 2 * n, &x, direct, terms);
    result.outside_domain = beta > 0.0;
    Ok(result)
}

/// The three expansions for the 3-sieved example sequence:
/// `Δ_{3n-2}`, `Δ_{3n-1}` and `Δ_{3n}`.
pub fn sieved3_reps<T: Scalar>(n: usize, x: &T) -> Result<[RepresentationResult<T>; 3]> {
    if n < 1 {
        return Err(Error::InvalidArgument("the sieved expansions start at n = 1".into()));
    }
    let seq = CoefficientSequence::<T>::sieved3_example();
    let p = eval_p(&seq, x, 3 * n + 1)?;
    let one = T::one();
    let x2 = x.square();
    let omx = one.clone() - x2.clone();

    let short = |k: usize| {
        vec![
            term("square", (p.p(k + 1).clone() - x.clone() * p.p(k).clone()).square()),
            term("edge", omx.clone() * p.p(k).square()),
        ]
    };
    let r1 = RepresentationResult::build("sieved3-a", 3 * n - 2, x, p.delta(3 * n - 2), short(3 * n - 2));
    let r2 = RepresentationResult::build("sieved3-b", 3 * n - 1, x, p.delta(3 * n - 1), short(3 * n - 1));

    let three_halves = T::from_ratio(3, 2);
    let x2p1 = x2 + one.clone();
    let pref = pochhammer(&one, n - 1) / (pochhammer(&three_halves, n) * x2p1.clone());
    let two_x3 = T::from_i64(2) * x.clone() * x.square();
    let mut terms = Vec::with_capacity(2 * n);
    for k in 0..n {
        let w = pref.clone() * pochhammer(&three_halves, k) / pochhammer(&one, k);
        let (p3k, p3k1) = (p.p(3 * k).clone(), p.p(3 * k + 1).clone());
        let first = w.clone() * (x2p1.clone() * p3k - two_x3.clone() * p3k1.clone()).square();
        let second = w * omx.square() * p3k1.square();
        terms.push(term(format!("k={k}:a"), first));
        terms.push(term(format!("k={k}:b"), second));
    }
    let r3 = RepresentationResult::build("sieved3-c", 3 * n, x, p.delta(3 * n), terms);
    Ok([r1, r2, r3])
}

/// Residuals of `T_{2n}(x) = R_n^{(α,β)}(2x²-1)` and
/// `T_{2n+1}(x) = x R_n^{(α,β+1)}(2x²-1)`, in relative form.
pub fn quadratic_transform_residuals<T: Scalar>(alpha: &T, beta: &T, n: usize, x: &T) -> Result<(f64, f64)> {
    let seq = crate::sequences::gencheb_sequence(alpha.clone(), beta.clone())?;
    let t = eval_p(&seq, x, 2 * n + 1)?;
    let y = T::from_i64(2) * x.square() - T::one();
    let even = eval_nonsym(&jacobi_recurrence(alpha.clone(), beta.clone())?, &y, n);
    let odd = eval_nonsym(&jacobi_recurrence(alpha.clone(), beta.clone() + T::one())?, &y, n);
    Ok((relative_gap(t.p(2 * n), even.p(n)), relative_gap(t.p(2 * n + 1), &(x.clone() * odd.p(n).clone()))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::evaluation::delta_at;
    use crate::scalar::{q, Rational};
    use crate::sequences::{gencheb_sequence, Tail};

    #[test]
    fn pochhammer_values() {
        assert_eq!(pochhammer(&q(5, 3), 0), q(1, 1));
        assert_eq!(pochhammer(&q(3, 2), 2), q(15, 4));
        assert_eq!(pochhammer(&q(1, 1), 2), q(2, 1));
        assert_eq!(pochhammer(&q(1, 1), 5), q(120, 1));
    }

    #[test]
    fn identities_vanish_for_chebyshev() {
        let seq = CoefficientSequence::<Rational>::constant_half();
        for n in 1..8 {
            for x in [q(0, 1), q(1, 3), q(-7, 9), q(1, 1)] {
                for (id, r) in identity_residuals(&seq, &x, n).unwrap() {
                    assert_eq!(r, q(0, 1), "{id:?} n={n} x={x}");
                }
            }
        }
    }

    #[test]
    fn identities_vanish_for_mixed_sequence() {
        let seq = CoefficientSequence::custom(
            vec![q(1, 7), q(5, 7), q(2, 7), q(3, 7), q(6, 7), q(4, 7)],
            Some(Tail::Periodic(vec![q(1, 7), q(6, 7), q(2, 7)])),
        )
        .unwrap();
        for n in 1..=12 {
            for (_, r) in identity_residuals(&seq, &q(3, 5), n).unwrap() {
                assert_eq!(r, q(0, 1));
            }
        }
        assert!(identity_residuals(&seq, &q(3, 5), 0).is_err());
    }

    #[test]
    fn chain_expansion_small_cases() {
        let seq = CoefficientSequence::custom(vec![q(2, 5), q(3, 4)], Some(Tail::Constant(q(1, 3)))).unwrap();
        let x = q(2, 7);
        let r = nonneg_rep(&seq, 1, &x).unwrap();
        let c1 = q(2, 5);
        assert_eq!(r.total, c1.clone() / (q(1, 1) - c1) * (q(1, 1) - x.square()));
        assert_eq!(r.residual, q(0, 1));

        let legendre = gencheb_sequence(q(0, 1), q(-1, 2)).unwrap();
        let r = nonneg_rep(&legendre, 2, &q(0, 1)).unwrap();
        assert_eq!(r.total, q(1, 4));

        for n in 1..6 {
            assert_eq!(nonneg_rep(&seq, n, &q(1, 1)).unwrap().total, q(0, 1));
            assert_eq!(nonneg_rep(&seq, n, &x).unwrap().residual, q(0, 1));
            assert_eq!(nonneg_rep_shifted(&seq, 2, n, &x).unwrap().residual, q(0, 1));
        }
    }

    #[test]
    fn explicit_variants_agree() {
        let (alpha, beta, x) = (q(1, 2), q(-1, 4), q(2, 5));
        let mut totals = Vec::new();
        for v in GenchebVariant::ALL {
            let r = gencheb_rep_explicit(&alpha, &beta, 3, &x, v).unwrap();
            assert_eq!(r.residual, q(0, 1), "{}", v.name());
            assert!(r.terms_nonneg(0.0));
            totals.push((v.delta_index(3), r.total));
        }
        assert_eq!(totals[0], totals[1]);
        assert_eq!(totals[2], totals[3]);
    }

    #[test]
    fn explicit_first_odd_case() {
        let (alpha, beta, x) = (q(3, 2), q(-1, 3), q(1, 4));
        let r = gencheb_rep_explicit(&alpha, &beta, 1, &x, GenchebVariant::Odd1).unwrap();
        let expect = (beta.clone() + q(1, 1)) / (alpha + q(1, 1)) * (q(1, 1) - x.square());
        assert_eq!(r.total, expect);
        assert_eq!(r.terms.len(), 1);
    }

    #[test]
    fn explicit_zero_beta_drops_terms() {
        let r = gencheb_rep_explicit(&q(1, 1), &q(0, 1), 4, &q(1, 3), GenchebVariant::Odd1).unwrap();
        for t in r.terms.iter().filter(|t| t.label.ends_with(":b")) {
            assert_eq!(t.value, q(0, 1));
        }
        assert_eq!(r.residual, q(0, 1));
    }

    #[test]
    fn explicit_positive_beta_is_flagged() {
        let r = gencheb_rep_explicit(&q(0, 1), &q(1, 2), 2, &q(1, 3), GenchebVariant::Even1).unwrap();
        assert!(r.outside_domain);
        assert!(gencheb_rep_explicit(&q(-1, 1), &q(0, 1), 2, &q(0, 1), GenchebVariant::Even1).is_err());
    }

    #[test]
    fn recurrence_step_matches_direct() {
        let (alpha, beta, x) = (q(1, 1), q(-1, 2), q(3, 7));
        let seq = gencheb_sequence(alpha.clone(), beta.clone()).unwrap();
        let (mut odd, mut even) = (delta_at(&seq, 1, &x).unwrap(), delta_at(&seq, 2, &x).unwrap());
        for n in 1..=4 {
            (odd, even) = delta_recurrence_step(&alpha, &beta, n, &x, &odd, &even).unwrap();
            assert_eq!(odd, delta_at(&seq, 2 * n + 1, &x).unwrap());
            assert_eq!(even, delta_at(&seq, 2 * n + 2, &x).unwrap());
        }
        let (o, e) = delta_recurrence_step(&alpha, &beta, 2, &q(1, 1), &q(0, 1), &q(0, 1)).unwrap();
        assert_eq!((o, e), (q(0, 1), q(0, 1)));
    }

    #[test]
    fn zero_expansion() {
        let r = zero_based_rep(0.0, -0.5, 2, 0.0).unwrap();
        assert!(r.relative_residual() < 1e-8);
        for t in r.terms.iter().filter(|t| t.label.ends_with(":a")) {
            assert_eq!(t.value, 0.0);
        }
        assert_eq!(zero_based_rep(1.0, -0.25, 3, 1.0).unwrap().total, 0.0);
        for n in 1..=6 {
            for i in 0..25 {
                let x = -0.97 + 0.08 * i as f64;
                match zero_based_rep(0.0, -0.25, n, x) {
                    Ok(r) => assert!(r.relative_residual() < 1e-8, "n={n} x={x}"),
                    Err(Error::PoleProximity { .. }) => {}
                    Err(e) => panic!("{e}"),
                }
            }
        }
    }

    #[test]
    fn zero_expansion_rejects_poles() {
        let seq = gencheb_sequence(0.0, -0.5).unwrap();
        let z = zeros(&seq, 4).unwrap();
        assert!(matches!(zero_based_rep(0.0, -0.5, 2, z[3]), Err(Error::PoleProximity { .. })));
    }

    #[test]
    fn sieved_expansions() {
        let [r1, _, _] = sieved3_reps(1, &q(1, 3)).unwrap();
        assert_eq!(r1.total, q(8, 9));
        for n in 1..=3 {
            for x in [q(3, 5), q(-1, 1), q(0, 1)] {
                for r in sieved3_reps(n, &x).unwrap() {
                    assert_eq!(r.residual, q(0, 1), "{} n={n} x={x}", r.identity);
                }
            }
        }
    }

    #[test]
    fn quadratic_transform() {
        for n in 0..8 {
            let (e, o) = quadratic_transform_residuals(&q(1, 2), &q(-1, 4), n, &q(2, 3)).unwrap();
            assert_eq!((e, o), (0.0, 0.0));
            let (e, o) = quadratic_transform_residuals(&0.5, &-0.25, n, &0.3).unwrap();
            assert!(e < 1e-12 && o < 1e-12);
        }
    }

    #[test]
    fn record_serializes() {
        let r = gencheb_rep_explicit(&q(0, 1), &q(-1, 2), 2, &q(1, 2), GenchebVariant::Even2).unwrap();
        let rec = r.record();
        let json = serde_json::to_string(&rec).unwrap();
        let back: RepresentationRecord = serde_json::from_str(&json).unwrap();
        assert_eq!(back, rec);
        assert_eq!(rec.residual, "0/1");
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn rational_seq() -> impl Strategy<Value = CoefficientSequence<Rational>> {
            proptest::collection::vec(1i64..7, 20).prop_map(|ks| {
                CoefficientSequence::custom(ks.into_iter().map(|k| q(k, 7)).collect(), None).unwrap()
            })
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(24))]

            #[test]
            fn chain_expansion_is_universal(seq in rational_seq(), xn in -9i64..=9, n in 1usize..7) {
                let x = q(xn, 9);
                let r = nonneg_rep(&seq, n, &x).unwrap();
                prop_assert_eq!(r.residual, q(0, 1));
            }

            #[test]
            fn identities_hold(seq in rational_seq(), xn in -9i64..=9, n in 1usize..8) {
                for (_, r) in identity_residuals(&seq, &q(xn, 9), n).unwrap() {
                    prop_assert_eq!(r, q(0, 1));
                }
            }
        }
    }
}
