//! Sufficient conditions for Turán's inequality, checked over finite index
//! ranges.
//!
//! A passing report is a prefix certificate: the hypotheses were verified for
//! every index up to the stated bound, not for all `n`. For generalized
//! Chebyshev sequences the checkers also attach a whole-sequence verdict
//! obtained from the sign structure of the closed forms.

use serde::{Deserialize, Serialize};

use crate::chain::{full_table, DerivedTable};
use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::sequences::CoefficientSequence;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CriterionId {
    /// Monotone coefficients inside `(0, 1/2]` or `[1/2, 1)`.
    Szwarc,
    /// Ordered `A_n, B_n, C_n` triples plus the `c_2` gate.
    Abc,
    /// `a_{m,n+1} c_{m,n+1} >= a_{m+1,n} c_{m+1,n}` on the derived table.
    ChainProduct,
    /// `c_{m+1,n} <= c_{m,n+1}` on the derived table.
    ChainMonotone,
    /// Bounds on a base sequence that make its 2-sieved version pass.
    Sieved2,
}

impl CriterionId {
    pub const ALL: [CriterionId; 5] = [
        CriterionId::Szwarc,
        CriterionId::Abc,
        CriterionId::ChainProduct,
        CriterionId::ChainMonotone,
        CriterionId::Sieved2,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CriterionId::Szwarc => "szwarc",
            CriterionId::Abc => "abc",
            CriterionId::ChainProduct => "chain-product",
            CriterionId::ChainMonotone => "chain-monotone",
            CriterionId::Sieved2 => "sieved2",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|c| c.name() == name)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Overall {
    Pass,
    Fail,
    /// Passed, and every strictness flag holds as well.
    PassWithStrictness,
}

impl Overall {
    pub fn passed(self) -> bool {
        self != Overall::Fail
    }
}

/// Index of one checked condition; `m` is set for derived-table criteria.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Location {
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub m: Option<usize>,
    pub n: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IndexVerdict {
    #[serde(flatten)]
    pub at: Location,
    pub pass: bool,
    /// Which alternative or branch holds at this index, if any.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub alternative: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StrictFlag {
    pub name: String,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GateResult {
    pub name: String,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CriterionReport {
    pub criterion: CriterionId,
    /// Inclusive index range `[start, N]`.
    pub range: (usize, usize),
    pub overall: Overall,
    pub branch: Option<String>,
    pub first_failure: Option<Location>,
    pub strict_flags: Vec<StrictFlag>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub gate: Option<GateResult>,
    /// Whether a single alternative holds across the whole range, per alternative.
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub uniform: Vec<StrictFlag>,
    /// Whole-sequence verdict from closed forms, when the family has them.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub symbolic: Option<bool>,
    pub per_n: Vec<IndexVerdict>,
}

impl CriterionReport {
    fn assemble(
        criterion: CriterionId,
        range: (usize, usize),
        branch: Option<String>,
        gate: Option<GateResult>,
        strict_flags: Vec<StrictFlag>,
        per_n: Vec<IndexVerdict>,
    ) -> Self {
        let first_failure = per_n.iter().find(|v| !v.pass).map(|v| v.at);
        let gate_ok = gate.as_ref().is_none_or(|g| g.holds);
        let overall = if first_failure.is_some() || !gate_ok {
            Overall::Fail
        } else if !strict_flags.is_empty() && strict_flags.iter().all(|f| f.holds) {
            Overall::PassWithStrictness
        } else {
            Overall::Pass
        };
        Self {
            criterion,
            range,
            overall,
            branch,
            first_failure,
            strict_flags,
            gate,
            uniform: Vec::new(),
            symbolic: None,
            per_n,
        }
    }

    pub fn passed(&self) -> bool {
        self.overall.passed()
    }

    /// The overall verdict and first failure agree with the per-index list.
    pub fn is_consistent(&self) -> bool {
        let first = self.per_n.iter().find(|v| !v.pass).map(|v| v.at);
        let gate_ok = self.gate.as_ref().is_none_or(|g| g.holds);
        first == self.first_failure && self.passed() == (first.is_none() && gate_ok)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }
}

/// Comparison tolerance for the float backend and the first index for the
/// triple criterion.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CheckOptions {
    pub tolerance: f64,
    /// First index of the per-index triple checks (default 1). A later start
    /// mirrors the shifted variant that takes the early determinants as given.
    pub start: usize,
}

impl Default for CheckOptions {
    fn default() -> Self {
        Self { tolerance: 0.0, start: 1 }
    }
}

fn flag(name: impl Into<String>, holds: bool) -> StrictFlag {
    StrictFlag { name: name.into(), holds }
}

/// Picks the branch that holds everywhere, or else the one that fails last.
fn select_branch(holds: &[(bool, bool)], names: (&str, &str)) -> (Option<String>, Vec<bool>) {
    let first_fail =
        |pick: fn(&(bool, bool)) -> bool| holds.iter().position(|h| !pick(h)).unwrap_or(usize::MAX);
    let fail_i = first_fail(|h| h.0);
    let fail_ii = first_fail(|h| h.1);
    let use_first = fail_i >= fail_ii;
    let verdicts = holds.iter().map(|h| if use_first { h.0 } else { h.1 }).collect();
    let name = if fail_i == usize::MAX || fail_ii == usize::MAX || !holds.is_empty() {
        Some(if use_first { names.0 } else { names.1 }.to_string())
    } else {
        None
    };
    (name, verdicts)
}

fn branch_label(h: (bool, bool), names: (&str, &str)) -> Option<String> {
    match h {
        (true, true) => Some(format!("{},{}", names.0, names.1)),
        (true, false) => Some(names.0.to_string()),
        (false, true) => Some(names.1.to_string()),
        (false, false) => None,
    }
}

/// Branch (i): `c_n ∈ (0, 1/2]` nondecreasing; branch (ii): `c_n ∈ [1/2, 1)`
/// nonincreasing; both checked for `1 <= n <= N`.
pub fn check_szwarc<T: Scalar>(
    seq: &CoefficientSequence<T>,
    n_max: usize,
    opts: &CheckOptions,
) -> Result<CriterionReport> {
    if n_max < 2 {
        return Err(Error::InvalidArgument("the monotonicity criterion needs N >= 2".into()));
    }
    let tol = opts.tolerance;
    let half = T::half();
    let c = seq.coeffs(n_max + 2)?;
    let holds: Vec<(bool, bool)> = (1..=n_max)
        .map(|n| {
            let (cur, next) = (&c[n], &c[n + 1]);
            let first = cur.le_tol(&half, tol) && next.le_tol(&half, tol) && next.ge_tol(cur, tol);
            let second = cur.ge_tol(&half, tol) && next.ge_tol(&half, tol) && next.le_tol(cur, tol);
            (first, second)
        })
        .collect();
    let names = ("i", "ii");
    let (branch, verdicts) = select_branch(&holds, names);
    let per_n = holds
        .iter()
        .zip(verdicts)
        .enumerate()
        .map(|(i, (h, pass))| IndexVerdict {
            at: Location { m: None, n: i + 1 },
            pass,
            alternative: branch_label(*h, names),
        })
        .collect();
    let mut report =
        CriterionReport::assemble(CriterionId::Szwarc, (1, n_max), branch, None, Vec::new(), per_n);
    report.uniform = vec![flag("i", holds.iter().all(|h| h.0)), flag("ii", holds.iter().all(|h| h.1))];
    Ok(report)
}

/// `A_n = c_n(a_{n+2} - c_{n+2})`, `B_n = (a_n - c_{n+2}) c_{n+1}`,
/// `C_n = (a_n - c_n) c_{n+2}`.
#[derive(Debug, Clone, PartialEq)]
pub struct CriterionTriple<T> {
    pub a: T,
    pub b: T,
    pub c: T,
}

impl<T: Scalar> CriterionTriple<T> {
    /// `0 <= A <= B <= C`.
    pub fn first_alternative(&self, tol: f64) -> bool {
        let zero = T::zero();
        self.a.ge_tol(&zero, tol) && self.a.le_tol(&self.b, tol) && self.b.le_tol(&self.c, tol)
    }

    /// `0 >= A >= B >= C`.
    pub fn second_alternative(&self, tol: f64) -> bool {
        let zero = T::zero();
        self.a.le_tol(&zero, tol) && self.a.ge_tol(&self.b, tol) && self.b.ge_tol(&self.c, tol)
    }
}

pub fn criterion_triple<T: Scalar>(seq: &CoefficientSequence<T>, n: usize) -> Result<CriterionTriple<T>> {
    if n < 1 {
        return Err(Error::InvalidArgument("triples start at n = 1".into()));
    }
    let (c0, c1, c2) = (seq.coeff(n)?, seq.coeff(n + 1)?, seq.coeff(n + 2)?);
    let (a0, a2) = (T::one() - c0.clone(), T::one() - c2.clone());
    Ok(CriterionTriple {
        a: c0.clone() * (a2 - c2.clone()),
        b: (a0.clone() - c2.clone()) * c1,
        c: (a0 - c0) * c2,
    })
}

/// Gate `c_2 >= c_1/(1 + c_1)` and, for each `n` in `[start, N]`, one of the
/// two ordered alternatives. Alternatives may differ from index to index.
pub fn check_abc<T: Scalar>(
    seq: &CoefficientSequence<T>,
    n_max: usize,
    opts: &CheckOptions,
) -> Result<CriterionReport> {
    let start = opts.start.max(1);
    if n_max < start {
        return Err(Error::InvalidArgument(format!("empty index range [{start}, {n_max}]")));
    }
    let tol = opts.tolerance;
    let (c1, c2) = (seq.coeff(1)?, seq.coeff(2)?);
    let threshold = c1.clone() / (T::one() + c1);
    let gate = GateResult { name: "c2 >= c1/(1+c1)".into(), holds: c2.ge_tol(&threshold, tol) };
    let strict = vec![flag("c2 > c1/(1+c1)", c2 > threshold)];

    let mut holds = Vec::with_capacity(n_max);
    for n in start..=n_max {
        let triple = criterion_triple(seq, n)?;
        holds.push((triple.first_alternative(tol), triple.second_alternative(tol)));
    }
    let names = ("first", "second");
    let per_n = holds
        .iter()
        .enumerate()
        .map(|(i, h)| IndexVerdict {
            at: Location { m: None, n: start + i },
            pass: h.0 || h.1,
            alternative: branch_label(*h, names),
        })
        .collect();
    let uniform_first = holds.iter().all(|h| h.0);
    let uniform_second = holds.iter().all(|h| h.1);
    let branch = Some(
        match (uniform_first, uniform_second) {
            (true, _) => "first",
            (false, true) => "second",
            _ => "per-index",
        }
        .to_string(),
    );
    let mut report =
        CriterionReport::assemble(CriterionId::Abc, (start, n_max), branch, Some(gate), strict, per_n);
    report.uniform = vec![flag("first", uniform_first), flag("second", uniform_second)];
    report.symbolic = seq.gencheb_params().map(|(a, b)| gencheb_abc_symbolic(a, b));
    Ok(report)
}

/// Sign analysis of the closed-form gate and triples for `T_n^{(α,β)}`.
///
/// The gate difference is `-β(α+β+2)/((α+β+3)(α+2β+3))`; odd triples are
/// `(α-β)/D · (n+β, n, n+β+1)` and even triples `(α+β+1)/D' · (n, n+β+1, n+1)`
/// with positive denominators, so all of them are ordered exactly when the
/// three middle inequalities hold.
pub fn gencheb_abc_symbolic<T: Scalar>(alpha: &T, beta: &T) -> bool {
    let zero = T::zero();
    let gate = -beta.clone() * (alpha.clone() + beta.clone() + T::from_i64(2)) >= zero;
    // n + β <= n <= n + β + 1 and n <= n + β + 1 <= n + 1.
    let odd_ordered = beta <= &zero && beta.clone() + T::one() >= zero;
    gate && odd_ordered
}

/// Derived-table criterion on products: `a_{m,n+1} c_{m,n+1} >= a_{m+1,n} c_{m+1,n}`
/// for `0 <= m < M`, `1 <= n <= N`.
pub fn check_chain_product<T: Scalar>(
    seq: &CoefficientSequence<T>,
    depth: usize,
    n_max: usize,
    opts: &CheckOptions,
) -> Result<CriterionReport> {
    let table = full_table(seq, depth.max(1), n_max)?;
    check_chain_product_table(&table, depth, n_max, opts)
}

pub fn check_chain_product_table<T: Scalar>(
    table: &DerivedTable<T>,
    depth: usize,
    n_max: usize,
    opts: &CheckOptions,
) -> Result<CriterionReport> {
    let product = |m: usize, n: usize| -> Result<T> { Ok(table.a(m, n)? * table.c(m, n)?.clone()) };
    let mut per_n = Vec::new();
    for m in 0..depth {
        for n in 1..=n_max {
            let pass = product(m, n + 1)?.ge_tol(&product(m + 1, n)?, opts.tolerance);
            per_n.push(IndexVerdict { at: Location { m: Some(m), n }, pass, alternative: None });
        }
    }
    let mut strict = true;
    for n in 1..=n_max {
        strict &= product(0, n + 1)? > product(1, n)?;
    }
    Ok(CriterionReport::assemble(
        CriterionId::ChainProduct,
        (1, n_max),
        None,
        None,
        vec![flag("a_{n+1}c_{n+1} > a_{1,n}c_{1,n}", strict)],
        per_n,
    ))
}

/// Derived-table criterion `c_{m+1,n} <= c_{m,n+1}` for `0 <= m < M`,
/// `1 <= n <= N`.
pub fn check_chain_monotone<T: Scalar>(
    seq: &CoefficientSequence<T>,
    depth: usize,
    n_max: usize,
    opts: &CheckOptions,
) -> Result<CriterionReport> {
    let table = full_table(seq, depth.max(1), n_max)?;
    let mut report = check_chain_monotone_table(&table, depth, n_max, opts)?;
    report.symbolic = seq.gencheb_params().map(|(_, b)| {
        // c_{m,2n} - c_{m+1,2n-1} = -β/(…) and c_{m,2n+1} - c_{m+1,2n} = (β+1)/(…).
        b <= &T::zero()
    });
    Ok(report)
}

pub fn check_chain_monotone_table<T: Scalar>(
    table: &DerivedTable<T>,
    depth: usize,
    n_max: usize,
    opts: &CheckOptions,
) -> Result<CriterionReport> {
    let mut per_n = Vec::new();
    for m in 0..depth {
        for n in 1..=n_max {
            let pass = table.c(m + 1, n)?.le_tol(table.c(m, n + 1)?, opts.tolerance);
            per_n.push(IndexVerdict { at: Location { m: Some(m), n }, pass, alternative: None });
        }
    }
    let mut strict = true;
    for n in 1..=n_max {
        strict &= table.c(1, n)? < table.c(0, n + 1)?;
    }
    Ok(CriterionReport::assemble(
        CriterionId::ChainMonotone,
        (1, n_max),
        None,
        None,
        vec![flag("c_{1,n} < c_{n+1}", strict)],
        per_n,
    ))
}

/// Conditions on the base sequence under which its 2-sieved version passes.
///
/// Branch (i): `c_n ∈ [1/3, 1/2]` and `c_{n+1} >= (1-c_n)/(3-4c_n)`;
/// branch (ii): `c_n ∈ [1/2, 1)` and `c_{n+1} <= (3c_n-1)/(4c_n-1)`.
pub fn check_sieved2<T: Scalar>(
    base: &CoefficientSequence<T>,
    n_max: usize,
    opts: &CheckOptions,
) -> Result<CriterionReport> {
    if n_max < 2 {
        return Err(Error::InvalidArgument("the sieved criterion needs N >= 2".into()));
    }
    let tol = opts.tolerance;
    let (third, half) = (T::from_ratio(1, 3), T::half());
    let one = T::one();
    let c = base.coeffs(n_max + 2)?;
    let in_lower = |v: &T| v.ge_tol(&third, tol) && v.le_tol(&half, tol);
    let in_upper = |v: &T| v.ge_tol(&half, tol) && v < &one;
    let holds: Vec<(bool, bool)> = (1..=n_max)
        .map(|n| {
            let (cur, next) = (&c[n], &c[n + 1]);
            let four_c = T::from_i64(4) * cur.clone();
            let first = in_lower(cur)
                && in_lower(next)
                && next.ge_tol(&((one.clone() - cur.clone()) / (T::from_i64(3) - four_c.clone())), tol);
            let second = in_upper(cur)
                && in_upper(next)
                && next.le_tol(&((T::from_i64(3) * cur.clone() - one.clone()) / (four_c - one.clone())), tol);
            (first, second)
        })
        .collect();
    let names = ("i", "ii");
    let (branch, verdicts) = select_branch(&holds, names);
    let per_n = holds
        .iter()
        .zip(verdicts)
        .enumerate()
        .map(|(i, (h, pass))| IndexVerdict {
            at: Location { m: None, n: i + 1 },
            pass,
            alternative: branch_label(*h, names),
        })
        .collect();
    // Branch (ii) already yields the K_n bound; branch (i) needs c_1 > 1/3.
    let strict = match branch.as_deref() {
        Some("ii") => vec![flag("branch ii", true)],
        _ => vec![flag("c1 > 1/3", c[1] > third)],
    };
    let mut report = CriterionReport::assemble(CriterionId::Sieved2, (1, n_max), branch, None, strict, per_n);
    report.uniform = vec![flag("i", holds.iter().all(|h| h.0)), flag("ii", holds.iter().all(|h| h.1))];
    Ok(report)
}

/// Closed-form classification for `T_n^{(α,β)}`: Turán's inequality holds
/// iff `β <= 0`, and the `K_n (1-x²)` lower bound iff `β < 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenchebVerdict {
    pub turan: bool,
    pub strict_k: bool,
}

pub fn gencheb_verdict<T: Scalar>(alpha: &T, beta: &T) -> Result<GenchebVerdict> {
    let minus_one = -T::one();
    if alpha <= &minus_one || beta <= &minus_one {
        return Err(Error::ParameterDomain("alpha and beta must exceed -1".into()));
    }
    let zero = T::zero();
    Ok(GenchebVerdict { turan: beta <= &zero, strict_k: beta < &zero })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{q, Rational};
    use crate::sequences::{gencheb_sequence, Tail};

    fn opts() -> CheckOptions {
        CheckOptions::default()
    }

    fn custom(prefix: Vec<Rational>, tail: Rational) -> CoefficientSequence<Rational> {
        CoefficientSequence::custom(prefix, Some(Tail::Constant(tail))).unwrap()
    }

    #[test]
    fn szwarc_on_ultraspherical() {
        for (a, expect) in [((1, 1), "i"), ((-1, 2), "i"), ((-3, 4), "ii"), ((0, 1), "i")] {
            let s = gencheb_sequence(q(a.0, a.1), q(-1, 2)).unwrap();
            let r = check_szwarc(&s, 60, &opts()).unwrap();
            assert!(r.passed(), "alpha={a:?}");
            assert!(r.uniform.iter().any(|f| f.name == expect && f.holds));
            assert!(r.is_consistent());
        }
    }

    #[test]
    fn szwarc_fails_for_gencheb_zero_zero() {
        let s = gencheb_sequence(q(0, 1), q(0, 1)).unwrap();
        let r = check_szwarc(&s, 10, &opts()).unwrap();
        assert_eq!(r.overall, Overall::Fail);
        assert_eq!(r.first_failure, Some(Location { m: None, n: 1 }));
        assert!(r.uniform.iter().all(|f| !f.holds));
    }

    #[test]
    fn szwarc_constant_half_both_branches() {
        let r = check_szwarc(&CoefficientSequence::<Rational>::constant_half(), 10, &opts()).unwrap();
        assert!(r.passed());
        assert!(r.uniform.iter().all(|f| f.holds));
        assert!(check_szwarc(&CoefficientSequence::<Rational>::constant_half(), 1, &opts()).is_err());
    }

    #[test]
    fn triples() {
        let t = criterion_triple(&CoefficientSequence::<Rational>::constant_half(), 3).unwrap();
        assert_eq!((t.a, t.b, t.c), (q(0, 1), q(0, 1), q(0, 1)));

        let (alpha, beta) = (q(3, 2), q(-1, 3));
        let s = gencheb_sequence(alpha.clone(), beta.clone()).unwrap();
        for n in 1..10i64 {
            let odd = criterion_triple(&s, (2 * n - 1) as usize).unwrap();
            let two_n = q(2 * n, 1);
            let d = (two_n.clone() + alpha.clone() + beta.clone())
                * (two_n + alpha.clone() + beta.clone() + q(2, 1));
            let expect = (alpha.clone() - beta.clone()) * (q(n, 1) + beta.clone()) / d;
            assert_eq!(odd.a, expect);
        }

        let c1 = q(1, 5);
        let c2 = q(2, 7);
        let ex = custom(vec![c1.clone(), c2.clone()], q(1, 2));
        let t = criterion_triple(&ex, 1).unwrap();
        assert_eq!(t.a, q(0, 1));
        assert_eq!(t.b, (q(1, 2) - c1.clone()) * c2);
        assert_eq!(t.c, q(1, 2) - c1);
    }

    #[test]
    fn abc_passes_for_gencheb_negative_beta() {
        let s = gencheb_sequence(q(1, 2), q(-1, 4)).unwrap();
        let r = check_abc(&s, 200, &opts()).unwrap();
        assert_eq!(r.overall, Overall::PassWithStrictness);
        assert_eq!(r.symbolic, Some(true));
        assert!(r.is_consistent());
    }

    #[test]
    fn abc_gate_fails_for_positive_beta() {
        for (a, b) in [(q(0, 1), q(1, 4)), (q(2, 1), q(1, 2)), (q(-1, 2), q(3, 1))] {
            let s = gencheb_sequence(a.clone(), b.clone()).unwrap();
            let r = check_abc(&s, 20, &opts()).unwrap();
            assert!(!r.gate.as_ref().unwrap().holds);
            assert_eq!(r.overall, Overall::Fail);
            assert_eq!(r.symbolic, Some(false));
            let c1 = s.coeff(1).unwrap();
            let diff = s.coeff(2).unwrap() - c1.clone() / (q(1, 1) + c1);
            let expect = -b.clone() * (a.clone() + b.clone() + q(2, 1))
                / ((a.clone() + b.clone() + q(3, 1)) * (a + q(2, 1) * b + q(3, 1)));
            assert_eq!(diff, expect);
        }
    }

    #[test]
    fn second_example_fails_at_one_and_passes_shifted() {
        let (c1, c2) = (q(1, 2), q(7, 20));
        assert!(c2 > c1.clone() / (q(1, 1) + c1.clone()));
        let s = custom(vec![c1.clone()], c2.clone());
        let t = criterion_triple(&s, 1).unwrap();
        assert!(t.a > q(0, 1) && t.b < t.a);
        assert_eq!(t.a, c1.clone() * (q(1, 1) - q(2, 1) * c2.clone()));
        assert_eq!(t.b.clone() - t.a.clone(), (q(1, 1) - c2.clone()) * (c2 - c1));
        let r = check_abc(&s, 30, &opts()).unwrap();
        assert_eq!(r.first_failure, Some(Location { m: None, n: 1 }));
        let shifted = check_abc(&s, 30, &CheckOptions { start: 2, ..opts() }).unwrap();
        assert!(shifted.passed());
        assert_eq!(shifted.range, (2, 30));
    }

    #[test]
    fn chain_criteria_on_gencheb() {
        let legendre = gencheb_sequence(q(0, 1), q(-1, 2)).unwrap();
        assert!(check_chain_product(&legendre, 10, 10, &opts()).unwrap().passed());
        assert!(check_chain_monotone(&legendre, 10, 10, &opts()).unwrap().passed());

        let bad = gencheb_sequence(q(0, 1), q(1, 2)).unwrap();
        let r = check_chain_product(&bad, 3, 4, &opts()).unwrap();
        assert_eq!(r.overall, Overall::Fail);
        let r = check_chain_monotone(&bad, 3, 4, &opts()).unwrap();
        assert_eq!(r.overall, Overall::Fail);
        assert_eq!(r.symbolic, Some(false));
    }

    #[test]
    fn chain_product_on_constant_half() {
        let r =
            check_chain_product(&CoefficientSequence::<Rational>::constant_half(), 5, 10, &opts()).unwrap();
        assert!(r.passed());
    }

    #[test]
    fn chain_monotone_counterexamples() {
        let s = custom(vec![q(1, 4), q(1, 4)], q(1, 2));
        let r = check_chain_monotone(&s, 3, 4, &opts()).unwrap();
        assert_eq!(r.first_failure, Some(Location { m: Some(1), n: 1 }));

        let s = custom(vec![q(4, 5), q(4, 5), q(4, 5)], q(1, 2));
        let r = check_chain_monotone(&s, 3, 4, &opts()).unwrap();
        assert_eq!(r.first_failure, Some(Location { m: Some(2), n: 1 }));
    }

    #[test]
    fn sieved_branches() {
        let half = CoefficientSequence::<Rational>::constant_half();
        let r = check_sieved2(&half, 10, &opts()).unwrap();
        assert!(r.passed() && r.uniform.iter().all(|f| f.holds));

        let third = CoefficientSequence::constant(q(1, 3)).unwrap();
        let r = check_sieved2(&third, 10, &opts()).unwrap();
        assert!(!r.passed());
        assert!(r.uniform.iter().all(|f| !f.holds));

        let four_fifths = CoefficientSequence::constant(q(4, 5)).unwrap();
        let r = check_sieved2(&four_fifths, 10, &opts()).unwrap();
        assert!(!r.passed());

        let ultra = gencheb_sequence(q(1, 1), q(-1, 2)).unwrap();
        let r = check_sieved2(&ultra, 50, &opts()).unwrap();
        assert_eq!(r.branch.as_deref(), Some("i"));
    }

    #[test]
    fn verdicts() {
        assert_eq!(
            gencheb_verdict(&q(1, 1), &q(0, 1)).unwrap(),
            GenchebVerdict { turan: true, strict_k: false }
        );
        assert!(!gencheb_verdict(&q(0, 1), &q(1, 4)).unwrap().turan);
        assert_eq!(
            gencheb_verdict(&q(-1, 2), &q(-1, 2)).unwrap(),
            GenchebVerdict { turan: true, strict_k: true }
        );
        assert!(gencheb_verdict(&q(-1, 1), &q(0, 1)).is_err());
    }

    #[test]
    fn report_json_round_trip() {
        let s = custom(vec![q(1, 4), q(1, 4)], q(1, 2));
        let r = check_chain_monotone(&s, 3, 4, &opts()).unwrap();
        let json = r.to_json();
        assert!(json.contains("\"criterion\":\"chain-monotone\""));
        let back: CriterionReport = serde_json::from_str(&json).unwrap();
        assert_eq!(back, r);
    }
}
