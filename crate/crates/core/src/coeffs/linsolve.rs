//! Exact linear systems over the fraction field of `Q[x, c]`.
//!
//! Elimination is fraction free: a pivot step replaces `row_i` by
//! `p * row_i - a * row_k` and then strips the rational and monomial content
//! of the new row. Rows without an entry in the pivot column are left alone,
//! which keeps the sparse systems produced by the product tables cheap.

use std::collections::BTreeMap;

use thiserror::Error;

use num_integer::Integer;
use num_traits::{One, Signed};

use super::poly::{Coefficient, Rational};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("matrix has {rows} rows but the right-hand side has {rhs} entries")]
    DimensionMismatch { rows: usize, rhs: usize },
    #[error("row {row} has {len} entries, expected {cols}")]
    RaggedRow { row: usize, len: usize, cols: usize },
}

/// `numerator / denominator` with both in `Q[x, c]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fraction {
    pub numerator: Coefficient,
    pub denominator: Coefficient,
}

impl Fraction {
    fn new(numerator: Coefficient, denominator: Coefficient) -> Self {
        if numerator.is_zero() {
            return Fraction {
                numerator,
                denominator: Coefficient::one(),
            };
        }
        if let Some(q) = numerator.exact_div(&denominator) {
            return Fraction {
                numerator: q,
                denominator: Coefficient::one(),
            };
        }
        // strip shared monomial content; the rational factor goes to the
        // denominator so the numerator is primitive
        let (cn, pn) = numerator.split_content();
        let (cd, pd) = denominator.split_content();
        let mn = cn.monomial_content();
        let md = cd.monomial_content();
        let common_x = mn.x.min(md.x);
        let common_c = mn.c.min(md.c);
        let qn = cn.leading_term().map(|(_, v)| v.clone()).unwrap();
        let qd = cd.leading_term().map(|(_, v)| v.clone()).unwrap();
        let num = pn.shift(mn.x - common_x, mn.c - common_c);
        let den = pd.shift(md.x - common_x, md.c - common_c).scale(&(qd / qn));
        Fraction {
            numerator: num,
            denominator: den,
        }
    }

    pub fn as_polynomial(&self) -> Option<&Coefficient> {
        self.denominator.is_one().then_some(&self.numerator)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SolveOutcome {
    /// Every unknown is a polynomial. When `unique` is false this is the
    /// particular solution with all free unknowns set to zero.
    Polynomial { solution: Vec<Coefficient>, unique: bool },
    /// A solution exists over the fraction field but some unknown has a
    /// nontrivial denominator. When `unique` is true this certifies that no
    /// polynomial solution exists; `obstruction` is the first offending
    /// unknown.
    NonPolynomial {
        solution: Vec<Fraction>,
        unique: bool,
        obstruction: usize,
    },
    /// `multipliers^T * matrix == 0` while `multipliers^T * rhs == residual != 0`.
    Inconsistent {
        multipliers: Vec<Coefficient>,
        residual: Coefficient,
    },
}

type SparseRow = BTreeMap<usize, Coefficient>;

struct Echelon {
    /// Pivot rows in pivot order, with their pivot column.
    pivots: Vec<(usize, SparseRow)>,
    /// Rows whose coefficient part vanished.
    leftovers: Vec<SparseRow>,
}

fn normalize(row: &mut SparseRow) {
    row.retain(|_, v| !v.is_zero());
    if row.is_empty() {
        return;
    }
    let mut q: Option<Rational> = None;
    let mut mx = u32::MAX;
    let mut mc = u32::MAX;
    for v in row.values() {
        let m = v.monomial_content();
        mx = mx.min(m.x);
        mc = mc.min(m.c);
        let content = v.rational_content().abs();
        q = Some(match q {
            None => content,
            Some(prev) => Rational::new(prev.numer().gcd(content.numer()), prev.denom().lcm(content.denom())),
        });
    }
    let inv = q.expect("row is nonempty").recip();
    if inv.is_one() && mx == 0 && mc == 0 {
        return;
    }
    let monomial = Coefficient::one().shift(mx, mc);
    for v in row.values_mut() {
        let mut scaled = v.scale(&inv);
        if mx > 0 || mc > 0 {
            scaled = scaled.exact_div(&monomial).expect("monomial content divides");
        }
        *v = scaled;
    }
}

/// Gauss-Jordan reduction of `rows` on the columns `0..ncols`. Entries at
/// column indices `>= ncols` ride along (used for right-hand sides).
fn reduce(mut rows: Vec<SparseRow>, ncols: usize) -> Echelon {
    for r in rows.iter_mut() {
        normalize(r);
    }
    let mut pivots: Vec<(usize, SparseRow)> = Vec::new();
    for col in 0..ncols {
        // smallest entry in this column wins
        let best = rows
            .iter()
            .enumerate()
            .filter_map(|(i, r)| r.get(&col).map(|v| (i, v.weight())))
            .min_by_key(|&(_, w)| w)
            .map(|(i, _)| i);
        let Some(idx) = best else { continue };
        let prow = rows.swap_remove(idx);
        let p = prow[&col].clone();
        let eliminate = |row: &mut SparseRow| {
            let Some(a) = row.get(&col).cloned() else {
                return;
            };
            let mut next = SparseRow::new();
            for (j, v) in row.iter() {
                let t = &p * v;
                if !t.is_zero() {
                    next.insert(*j, t);
                }
            }
            for (j, v) in prow.iter() {
                let t = &a * v;
                let e = next.entry(*j).or_insert_with(Coefficient::zero);
                *e -= &t;
            }
            next.remove(&col);
            normalize(&mut next);
            *row = next;
        };
        for r in rows.iter_mut() {
            eliminate(r);
        }
        for (_, r) in pivots.iter_mut() {
            eliminate(r);
        }
        pivots.push((col, prow));
    }
    rows.retain(|r| !r.is_empty());
    Echelon {
        pivots,
        leftovers: rows,
    }
}

fn check_shape(matrix: &[Vec<Coefficient>], rhs_len: Option<usize>) -> Result<usize, LinalgError> {
    if let Some(len) = rhs_len {
        if len != matrix.len() {
            return Err(LinalgError::DimensionMismatch {
                rows: matrix.len(),
                rhs: len,
            });
        }
    }
    let ncols = matrix.first().map_or(0, Vec::len);
    for (i, row) in matrix.iter().enumerate() {
        if row.len() != ncols {
            return Err(LinalgError::RaggedRow {
                row: i,
                len: row.len(),
                cols: ncols,
            });
        }
    }
    Ok(ncols)
}

fn to_sparse(row: &[Coefficient]) -> SparseRow {
    row.iter()
        .enumerate()
        .filter(|(_, v)| !v.is_zero())
        .map(|(j, v)| (j, v.clone()))
        .collect()
}

/// Solve `matrix * y = rhs` over `Q(x, c)`, certifying polynomiality.
pub fn solve_linear_system(matrix: &[Vec<Coefficient>], rhs: &[Coefficient]) -> Result<SolveOutcome, LinalgError> {
    let ncols = check_shape(matrix, Some(rhs.len()))?;
    let rows: Vec<SparseRow> = matrix
        .iter()
        .zip(rhs)
        .map(|(row, b)| {
            let mut r = to_sparse(row);
            if !b.is_zero() {
                r.insert(ncols, b.clone());
            }
            r
        })
        .collect();
    solve_sparse(rows, ncols, || transpose_witness(matrix, rhs, ncols))
}

/// Sparse entry point; `rows[i][ncols]` holds the right-hand side.
pub(crate) fn solve_sparse_rows(rows: Vec<SparseRow>, ncols: usize) -> SolveOutcome {
    let witness_rows = rows.clone();
    solve_sparse(rows, ncols, move || {
        let dense: Vec<Vec<Coefficient>> = witness_rows
            .iter()
            .map(|r| (0..ncols).map(|j| r.get(&j).cloned().unwrap_or_default()).collect())
            .collect();
        let rhs: Vec<Coefficient> = witness_rows
            .iter()
            .map(|r| r.get(&ncols).cloned().unwrap_or_default())
            .collect();
        transpose_witness(&dense, &rhs, ncols)
    })
    .expect("sparse rows are well formed")
}

fn solve_sparse(
    rows: Vec<SparseRow>,
    ncols: usize,
    witness: impl FnOnce() -> SolveOutcome,
) -> Result<SolveOutcome, LinalgError> {
    let ech = reduce(rows, ncols);
    if !ech.leftovers.is_empty() {
        return Ok(witness());
    }
    let unique = ech.pivots.len() == ncols;
    let mut solution = vec![Fraction::new(Coefficient::zero(), Coefficient::one()); ncols];
    for (col, row) in &ech.pivots {
        let b = row.get(&ncols).cloned().unwrap_or_default();
        solution[*col] = Fraction::new(b, row[col].clone());
    }
    match solution.iter().position(|f| f.as_polynomial().is_none()) {
        None => Ok(SolveOutcome::Polynomial {
            solution: solution.into_iter().map(|f| f.numerator).collect(),
            unique,
        }),
        Some(obstruction) => Ok(SolveOutcome::NonPolynomial {
            solution,
            unique,
            obstruction,
        }),
    }
}

/// For an inconsistent system find `lambda` with `lambda^T A = 0`,
/// `lambda^T b = 1`, then clear denominators.
fn transpose_witness(matrix: &[Vec<Coefficient>], rhs: &[Coefficient], ncols: usize) -> SolveOutcome {
    let m = matrix.len();
    let mut rows: Vec<SparseRow> = (0..ncols)
        .map(|j| {
            (0..m)
                .filter(|&i| !matrix[i][j].is_zero())
                .map(|i| (i, matrix[i][j].clone()))
                .collect()
        })
        .collect();
    let mut last: SparseRow = (0..m)
        .filter(|&i| !rhs[i].is_zero())
        .map(|i| (i, rhs[i].clone()))
        .collect();
    last.insert(m, Coefficient::one());
    rows.push(last);
    let ech = reduce(rows, m);
    assert!(
        ech.leftovers.is_empty(),
        "inconsistent system must have a consistent dual"
    );
    let mut lambda = vec![Fraction::new(Coefficient::zero(), Coefficient::one()); m];
    for (col, row) in &ech.pivots {
        let b = row.get(&m).cloned().unwrap_or_default();
        lambda[*col] = Fraction::new(b, row[col].clone());
    }
    // clear denominators with their product
    let mut den = Coefficient::one();
    for f in &lambda {
        if !f.denominator.is_one() && den.exact_div(&f.denominator).is_none() {
            den = &den * &f.denominator;
        }
    }
    let multipliers: Vec<Coefficient> = lambda
        .iter()
        .map(|f| (&f.numerator * &den).exact_div(&f.denominator).expect("cleared"))
        .collect();
    let residual = multipliers
        .iter()
        .zip(rhs)
        .fold(Coefficient::zero(), |acc, (l, b)| &acc + &(l * b));
    SolveOutcome::Inconsistent { multipliers, residual }
}

/// A polynomial basis of the right kernel of `matrix` over `Q(x, c)`.
pub fn nullspace(matrix: &[Vec<Coefficient>], ncols: usize) -> Result<Vec<Vec<Coefficient>>, LinalgError> {
    if !matrix.is_empty() {
        let n = check_shape(matrix, None)?;
        if n != ncols {
            return Err(LinalgError::RaggedRow {
                row: 0,
                len: n,
                cols: ncols,
            });
        }
    }
    let rows: Vec<SparseRow> = matrix.iter().map(|r| to_sparse(r)).collect();
    Ok(nullspace_sparse(rows, ncols))
}

pub(crate) fn nullspace_sparse(rows: Vec<SparseRow>, ncols: usize) -> Vec<Vec<Coefficient>> {
    let ech = reduce(rows, ncols);
    let pivot_cols: Vec<usize> = ech.pivots.iter().map(|(c, _)| *c).collect();
    let mut basis = Vec::new();
    for free in (0..ncols).filter(|j| !pivot_cols.contains(j)) {
        // y_free = L, y_pivot = -a_{i,free} * L / p_i
        let mut scale = Coefficient::one();
        for (col, row) in &ech.pivots {
            if row.contains_key(&free) {
                let p = &row[col];
                if scale.exact_div(p).is_none() {
                    scale = &scale * p;
                }
            }
        }
        let mut v = vec![Coefficient::zero(); ncols];
        v[free] = scale.clone();
        for (col, row) in &ech.pivots {
            if let Some(a) = row.get(&free) {
                let num = -&(a * &scale);
                v[*col] = num.exact_div(&row[col]).expect("scale clears pivots");
            }
        }
        let mut sparse = to_sparse(&v);
        normalize(&mut sparse);
        basis.push((0..ncols).map(|j| sparse.remove(&j).unwrap_or_default()).collect());
    }
    basis
}

/// Rank over `Q(x, c)`.
pub fn rank(matrix: &[Vec<Coefficient>]) -> usize {
    let ncols = matrix.first().map_or(0, Vec::len);
    let rows: Vec<SparseRow> = matrix.iter().map(|r| to_sparse(r)).collect();
    reduce(rows, ncols).pivots.len()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeffs::rat;

    fn c(n: i64) -> Coefficient {
        Coefficient::from_int(n)
    }

    #[test]
    fn identity_system() {
        let out = solve_linear_system(&[vec![c(1)]], &[Coefficient::x()]).unwrap();
        assert_eq!(
            out,
            SolveOutcome::Polynomial {
                solution: vec![Coefficient::x()],
                unique: true
            }
        );
    }

    #[test]
    fn two_x_is_not_invertible() {
        let two_x = Coefficient::x().scale(&rat(2, 1));
        let out = solve_linear_system(&[vec![two_x.clone()]], &[c(1)]).unwrap();
        match out {
            SolveOutcome::NonPolynomial {
                solution,
                unique,
                obstruction,
            } => {
                assert!(unique);
                assert_eq!(obstruction, 0);
                assert_eq!(solution[0].numerator, c(1));
                assert_eq!(solution[0].denominator, two_x);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn zero_matrix_is_inconsistent() {
        let out = solve_linear_system(&[vec![c(0)]], &[c(1)]).unwrap();
        match out {
            SolveOutcome::Inconsistent { multipliers, residual } => {
                assert_eq!(multipliers.len(), 1);
                assert!(!residual.is_zero());
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn inconsistent_witness_combines_rows() {
        // y1 + y2 = 1, 2y1 + 2y2 = x
        let m = vec![vec![c(1), c(1)], vec![c(2), c(2)]];
        let out = solve_linear_system(&m, &[c(1), Coefficient::x()]).unwrap();
        let SolveOutcome::Inconsistent { multipliers, residual } = out else {
            panic!("expected inconsistency");
        };
        for j in 0..2 {
            let s = multipliers
                .iter()
                .zip(&m)
                .fold(Coefficient::zero(), |acc, (y, row)| &acc + &(y * &row[j]));
            assert!(s.is_zero());
        }
        assert!(!residual.is_zero());
    }

    #[test]
    fn dimension_mismatch() {
        assert_eq!(
            solve_linear_system(&[vec![c(1)]], &[c(1), c(2)]),
            Err(LinalgError::DimensionMismatch { rows: 1, rhs: 2 })
        );
    }

    #[test]
    fn underdetermined_reports_particular_solution() {
        let out = solve_linear_system(&[vec![c(1), c(1)]], &[c(3)]).unwrap();
        match out {
            SolveOutcome::Polynomial { solution, unique } => {
                assert!(!unique);
                assert_eq!(&solution[0] + &solution[1], c(3));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn kernel_of_rank_one_matrix() {
        let x = Coefficient::x();
        let m = vec![vec![x.clone(), c(1)], vec![&x * &x, x.clone()]];
        let ker = nullspace(&m, 2).unwrap();
        assert_eq!(ker.len(), 1);
        for row in &m {
            let s = &(&row[0] * &ker[0][0]) + &(&row[1] * &ker[0][1]);
            assert!(s.is_zero());
        }
        assert_eq!(rank(&m), 1);
    }
}
