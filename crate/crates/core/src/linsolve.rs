//! Fraction-free (Bareiss) elimination for square integer systems with
//! integral solutions.
//!
//! The elimination is done once; afterwards any number of right-hand sides
//! can be solved by replaying the recorded row operations and
//! back-substituting. Rows whose multiplier is zero are left untouched when
//! the pivot equals the previous pivot, so systems that are already
//! triangular in the given order cost only a back-substitution.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use crate::error::{Error, Result};

struct Step {
    /// Row exchanged with the pivot row before this step, if any.
    swap: Option<usize>,
    pivot: BigInt,
    prev: BigInt,
    /// (row, multiplier) for rows below the pivot with nonzero entries.
    multipliers: Vec<(usize, BigInt)>,
}

pub struct FractionFreeSolver {
    size: usize,
    steps: Vec<Step>,
    /// Upper triangular reduced matrix, stored by rows as sparse (col, value).
    upper: Vec<Vec<(usize, BigInt)>>,
}

impl FractionFreeSolver {
    /// Eliminates the dense square matrix `a` (rows of equal length).
    #[allow(clippy::needless_range_loop)]
    pub fn new(mut a: Vec<Vec<BigInt>>) -> Result<Self> {
        let size = a.len();
        if a.iter().any(|r| r.len() != size) {
            return Err(Error::InvariantViolation("matrix is not square".into()));
        }
        let mut steps = Vec::with_capacity(size);
        let mut prev = BigInt::from(1);
        for k in 0..size {
            let pivot_row = (k..size).find(|&i| !a[i][k].is_zero()).ok_or_else(|| {
                Error::InvariantViolation(format!("singular system at column {k}"))
            })?;
            let swap = (pivot_row != k).then(|| {
                a.swap(k, pivot_row);
                pivot_row
            });
            let pivot = a[k][k].clone();
            let mut multipliers = Vec::new();
            let unchanged_rows_ok = pivot == prev;
            for i in k + 1..size {
                let m = a[i][k].clone();
                if m.is_zero() {
                    if !unchanged_rows_ok {
                        for j in k + 1..size {
                            if !a[i][j].is_zero() {
                                a[i][j] = exact(&(&pivot * &a[i][j]), &prev)?;
                            }
                        }
                    }
                    continue;
                }
                for j in k + 1..size {
                    let v = &pivot * &a[i][j] - &m * &a[k][j];
                    a[i][j] = exact(&v, &prev)?;
                }
                a[i][k] = BigInt::zero();
                multipliers.push((i, m));
            }
            steps.push(Step {
                swap,
                pivot: pivot.clone(),
                prev: prev.clone(),
                multipliers,
            });
            prev = pivot;
        }
        let upper = a
            .into_iter()
            .enumerate()
            .map(|(i, row)| {
                row.into_iter()
                    .enumerate()
                    .skip(i)
                    .filter(|(_, v)| !v.is_zero())
                    .collect()
            })
            .collect();
        Ok(FractionFreeSolver {
            size,
            steps,
            upper,
        })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    /// Solves A x = b, failing if the solution is not integral.
    pub fn solve(&self, b: &[BigInt]) -> Result<Vec<BigInt>> {
        if b.len() != self.size {
            return Err(Error::InvariantViolation("right-hand side has wrong length".into()));
        }
        let mut y = b.to_vec();
        for (k, step) in self.steps.iter().enumerate() {
            if let Some(r) = step.swap {
                y.swap(k, r);
            }
            if step.pivot == step.prev {
                for (i, m) in &step.multipliers {
                    let v = &step.pivot * &y[*i] - m * &y[k];
                    y[*i] = exact(&v, &step.prev)?;
                }
            } else {
                let mut mult = step.multipliers.iter().peekable();
                for i in k + 1..self.size {
                    let m = match mult.peek() {
                        Some((row, m)) if *row == i => {
                            mult.next();
                            m.clone()
                        }
                        _ => BigInt::zero(),
                    };
                    let v = &step.pivot * &y[i] - m * &y[k];
                    y[i] = exact(&v, &step.prev)?;
                }
            }
        }
        let mut x = vec![BigInt::zero(); self.size];
        for k in (0..self.size).rev() {
            let row = &self.upper[k];
            let mut acc = y[k].clone();
            let mut diag = None;
            for (j, v) in row {
                if *j == k {
                    diag = Some(v);
                } else if !x[*j].is_zero() {
                    acc -= v * &x[*j];
                }
            }
            let diag = diag.expect("nonzero pivot");
            let (q, r) = acc.div_rem(diag);
            if !r.is_zero() {
                return Err(Error::InvariantViolation(format!(
                    "system has no integral solution (row {k})"
                )));
            }
            x[k] = q;
        }
        Ok(x)
    }
}

fn exact(v: &BigInt, d: &BigInt) -> Result<BigInt> {
    let (q, r) = v.div_rem(d);
    if r.is_zero() {
        Ok(q)
    } else {
        Err(Error::InvariantViolation(format!(
            "Bareiss step {v} / {d} is not exact"
        )))
    }
}
