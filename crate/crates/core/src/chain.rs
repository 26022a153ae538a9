//! Derived coefficient tables.
//!
//! Row `m` holds the recurrence coefficients `c_{m,n}` of the polynomials
//! orthogonal with respect to `(1-x²)^m dμ`. Row `m+1` is the minimal
//! parameter sequence of the chain sequence `a_{m,n+1} c_{m,n}`:
//!
//! ```text
//! c_{m+1,0} = 0,   c_{m+1,n} = a_{m,n+1} c_{m,n} / a_{m+1,n-1}
//! ```
//!
//! The connection constants satisfy `C_{m,0} = -a_{m,1}` and
//! `C_{m,n} = C_{m,n-1} c_{m+1,n} / c_{m,n}`, and feed the `s`/`t`
//! coefficients of the nonnegative representation.
//!
//! Row `m` is stored up to column `N + 2(M - m)`, so every row has at least
//! the `N + 1` requested columns and the base sequence is read up to
//! `N + 2M`.

use crate::error::{Error, Result};
use crate::scalar::{in_open_unit, Scalar};
use crate::sequences::{gencheb_coeff, CoefficientSequence};

#[derive(Debug, Clone, PartialEq)]
pub struct DerivedTable<T> {
    depth: usize,
    width: usize,
    c: Vec<Vec<T>>,
    conn: Vec<Vec<T>>,
    s: Vec<Vec<T>>,
    t: Vec<Vec<T>>,
}

/// One flattened table cell, as used for CSV dumps.
#[derive(Debug, Clone, PartialEq)]
pub struct TableCell<T> {
    pub m: usize,
    pub n: usize,
    pub c: T,
    pub a: T,
    pub conn: Option<T>,
    pub s: Option<T>,
    pub t: Option<T>,
}

impl<T: Scalar> DerivedTable<T> {
    /// `M`, the deepest row index.
    pub fn depth(&self) -> usize {
        self.depth
    }

    /// `N`, the column count guaranteed in every row.
    pub fn width(&self) -> usize {
        self.width
    }

    /// Last valid column of row `m`.
    pub fn extent(&self, m: usize) -> usize {
        self.width + 2 * (self.depth - m)
    }

    pub fn row(&self, m: usize) -> &[T] {
        &self.c[m]
    }

    pub fn c(&self, m: usize, n: usize) -> Result<&T> {
        self.c.get(m).and_then(|r| r.get(n)).ok_or(Error::TableIndex { m, n })
    }

    pub fn a(&self, m: usize, n: usize) -> Result<T> {
        Ok(T::one() - self.c(m, n)?.clone())
    }

    pub fn conn(&self, m: usize, n: usize) -> Result<&T> {
        self.conn.get(m).and_then(|r| r.get(n)).ok_or(Error::TableIndex { m, n })
    }

    pub fn s(&self, m: usize, n: usize) -> Result<&T> {
        self.s.get(m).and_then(|r| r.get(n)).ok_or(Error::TableIndex { m, n })
    }

    pub fn t(&self, m: usize, n: usize) -> Result<&T> {
        self.t.get(m).and_then(|r| r.get(n)).ok_or(Error::TableIndex { m, n })
    }

    pub fn has_connection_constants(&self) -> bool {
        !self.conn.is_empty()
    }

    pub fn has_st(&self) -> bool {
        !self.s.is_empty()
    }

    /// `c_{m,n}` accessor for driving the recurrence of row `m`.
    pub fn row_coeff(&self, m: usize) -> impl Fn(usize) -> Result<T> + '_ {
        move |n| self.c(m, n).cloned()
    }

    /// Row-major list of every stored cell.
    pub fn cells(&self) -> Vec<TableCell<T>> {
        let mut out = Vec::new();
        for (m, row) in self.c.iter().enumerate() {
            for (n, c) in row.iter().enumerate() {
                out.push(TableCell {
                    m,
                    n,
                    c: c.clone(),
                    a: T::one() - c.clone(),
                    conn: self.conn.get(m).and_then(|r| r.get(n)).cloned(),
                    s: self.s.get(m).and_then(|r| r.get(n)).cloned(),
                    t: self.t.get(m).and_then(|r| r.get(n)).cloned(),
                });
            }
        }
        out
    }
}

fn check_bounds(depth: usize, width: usize) -> Result<()> {
    if width < 1 {
        return Err(Error::InvalidArgument("derived table needs N >= 1".into()));
    }
    depth
        .checked_mul(2)
        .and_then(|d| d.checked_add(width))
        .map(|_| ())
        .ok_or_else(|| Error::InvalidArgument("derived table bounds overflow".into()))
}

/// Rows `0..=M` of `c_{m,n}` by the minimal-parameter recursion.
pub fn derived_table<T: Scalar>(
    seq: &CoefficientSequence<T>,
    depth: usize,
    width: usize,
) -> Result<DerivedTable<T>> {
    check_bounds(depth, width)?;
    let extent0 = width + 2 * depth;
    let row0 = seq.coeffs(extent0 + 1)?;
    for (n, c) in row0.iter().enumerate().skip(1) {
        if !in_open_unit(c) {
            return Err(Error::TableConstruction {
                m: 0,
                n,
                reason: format!("c_{n} = {c:?} is outside (0, 1)"),
            });
        }
    }
    let mut rows = vec![row0];
    for m in 0..depth {
        let prev = &rows[m];
        let extent = width + 2 * (depth - m - 1);
        let mut next = Vec::with_capacity(extent + 1);
        next.push(T::zero());
        for n in 1..=extent {
            let a_prev_row = T::one() - prev[n + 1].clone();
            let a_below = T::one() - next[n - 1].clone();
            if a_below.is_zero() {
                return Err(Error::TableConstruction {
                    m: m + 1,
                    n,
                    reason: format!("division by zero: a_{{{},{}}} = 0", m + 1, n - 1),
                });
            }
            let value = a_prev_row * prev[n].clone() / a_below;
            if !in_open_unit(&value) {
                return Err(Error::TableConstruction {
                    m: m + 1,
                    n,
                    reason: format!("entry {value:?} is outside (0, 1)"),
                });
            }
            next.push(value);
        }
        rows.push(next);
    }
    Ok(DerivedTable { depth, width, c: rows, conn: Vec::new(), s: Vec::new(), t: Vec::new() })
}

/// Fills `C_{m,n}` for `m < M` over the extent of row `m + 1`.
pub fn connection_constants<T: Scalar>(mut table: DerivedTable<T>) -> Result<DerivedTable<T>> {
    let mut conn = Vec::with_capacity(table.depth);
    for m in 0..table.depth {
        let extent = table.extent(m + 1);
        let mut row = Vec::with_capacity(extent + 1);
        row.push(-table.a(m, 1)?);
        for n in 1..=extent {
            let value = row[n - 1].clone() * table.c[m + 1][n].clone() / table.c[m][n].clone();
            row.push(value);
        }
        conn.push(row);
    }
    table.conn = conn;
    Ok(table)
}

/// Fills `s_{m,n}` and `t_{m,n}`; computes the connection constants first if
/// they are missing.
pub fn st_coefficients<T: Scalar>(table: DerivedTable<T>) -> Result<DerivedTable<T>> {
    let mut table = if table.has_connection_constants() { table } else { connection_constants(table)? };
    let mut s_rows = Vec::with_capacity(table.depth);
    let mut t_rows = Vec::with_capacity(table.depth);
    for m in 0..table.depth {
        let extent = table.extent(m + 1);
        let mut s_row = Vec::with_capacity(extent + 1);
        let mut t_row = Vec::with_capacity(extent + 1);
        for n in 0..=extent {
            let conn_sq = table.conn[m][n].square();
            let upper = table.a(m, n + 1)? * table.c[m][n + 1].clone();
            let lower = table.a(m + 1, n)? * table.c[m + 1][n].clone();
            s_row.push((upper - lower.clone()) / conn_sq.clone());
            t_row.push(lower / conn_sq);
        }
        s_rows.push(s_row);
        t_rows.push(t_row);
    }
    table.s = s_rows;
    table.t = t_rows;
    Ok(table)
}

/// Table with `c`, `C`, `s` and `t` all filled.
pub fn full_table<T: Scalar>(
    seq: &CoefficientSequence<T>,
    depth: usize,
    width: usize,
) -> Result<DerivedTable<T>> {
    st_coefficients(derived_table(seq, depth, width)?)
}

/// The same table for `T_n^{(α,β)}` filled straight from closed forms: row
/// `m` is the coefficient sequence at `α + m`, and
/// `C_{m,n} = -(m+α+1)/(m+n+α+β+2)`.
pub fn gencheb_closed_forms<T: Scalar>(
    alpha: &T,
    beta: &T,
    depth: usize,
    width: usize,
) -> Result<DerivedTable<T>> {
    check_bounds(depth, width)?;
    let minus_one = -T::one();
    if alpha <= &minus_one || beta <= &minus_one {
        return Err(Error::ParameterDomain("alpha and beta must exceed -1".into()));
    }
    let shifted = |m: usize| alpha.clone() + T::from_i64(m as i64);
    let extent = |m: usize| width + 2 * (depth - m);
    let c =
        (0..=depth).map(|m| (0..=extent(m)).map(|n| gencheb_coeff(&shifted(m), beta, n)).collect()).collect();
    let mut conn = Vec::with_capacity(depth);
    let mut s = Vec::with_capacity(depth);
    let mut t = Vec::with_capacity(depth);
    for m in 0..depth {
        let am1 = shifted(m) + T::one();
        let am1_sq = am1.square();
        let mut conn_row = Vec::new();
        let mut s_row = Vec::new();
        let mut t_row = Vec::new();
        for n in 0..=extent(m + 1) {
            let nn = T::from_i64(n as i64);
            conn_row.push(-am1.clone() / (shifted(m) + nn + beta.clone() + T::from_i64(2)));
            let k = T::from_i64((n / 2) as i64);
            if n % 2 == 0 {
                s_row.push((beta.clone() + T::one()) / am1.clone());
                t_row.push((shifted(m) + k.clone() + beta.clone() + T::from_i64(2)) * k / am1_sq.clone());
            } else {
                s_row.push(-beta.clone() / am1.clone());
                t_row.push(
                    (shifted(m) + k.clone() + T::from_i64(2)) * (k + beta.clone() + T::one())
                        / am1_sq.clone(),
                );
            }
        }
        conn.push(conn_row);
        s.push(s_row);
        t.push(t_row);
    }
    Ok(DerivedTable { depth, width, c, conn, s, t })
}
