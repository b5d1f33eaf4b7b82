//! Exact linear algebra over the field of rational functions in the parameters.
//!
//! Pivot rule: scan columns left to right; in each column take the first row
//! holding a constant nonzero entry, else the first nonzero row. A non-constant
//! pivot contributes its monic numerator to the genericity conditions.

use std::collections::HashMap;

use crate::scalar::{Context, Scalar};

pub type Matrix = Vec<Vec<Scalar>>;

#[derive(Debug, Clone, PartialEq)]
pub struct Rref {
    pub rows: Matrix,
    pub pivots: Vec<usize>,
    /// Monic numerators assumed nonzero, in the order they were divided by.
    pub conditions: Vec<Scalar>,
    pub ncols: usize,
}

impl Rref {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Basis of `{x : A x = 0}`, one vector per free column.
    pub fn nullspace(&self, ctx: &Context) -> Matrix {
        let free: Vec<usize> = (0..self.ncols).filter(|c| !self.pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![Scalar::zero(ctx); self.ncols];
                v[f] = Scalar::one(ctx);
                for (row, &p) in self.rows.iter().zip(&self.pivots) {
                    v[p] = -&row[f];
                }
                v
            })
            .collect()
    }

    /// Pivot columns, when every reduced row has a single nonzero entry
    /// (the solution space is cut out by vanishing of exactly those unknowns).
    pub fn forced_zero(&self) -> Option<Vec<usize>> {
        let single = self
            .rows
            .iter()
            .all(|r| r.iter().filter(|v| !v.is_zero()).count() == 1);
        single.then(|| self.pivots.clone())
    }
}

pub fn rref(ctx: &Context, mut m: Matrix, ncols: usize) -> Rref {
    m.retain(|r| r.iter().any(|v| !v.is_zero()));
    let mut pivots = Vec::new();
    let mut conditions: Vec<Scalar> = Vec::new();
    let mut top = 0;
    for col in 0..ncols {
        if top == m.len() {
            break;
        }
        let candidates: Vec<usize> = (top..m.len()).filter(|&r| !m[r][col].is_zero()).collect();
        let Some(&pick) = candidates
            .iter()
            .find(|&&r| m[r][col].is_constant())
            .or(candidates.first())
        else {
            continue;
        };
        m.swap(top, pick);
        let p = m[top][col].clone();
        if !p.is_constant() {
            let cond = Scalar::from_polynomial(ctx, p.numerator().monic());
            if !conditions.contains(&cond) {
                conditions.push(cond);
            }
        }
        let inv = p.inv().expect("pivot nonzero");
        m[top] = m[top].iter().map(|v| v * &inv).collect();
        for r in 0..m.len() {
            if r != top && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                let pivot_row = m[top].clone();
                for (dst, src) in m[r].iter_mut().zip(&pivot_row) {
                    if !src.is_zero() {
                        *dst = &*dst - &(&f * src);
                    }
                }
            }
        }
        pivots.push(col);
        top += 1;
    }
    m.truncate(top);
    Rref {
        rows: m,
        pivots,
        conditions,
        ncols,
    }
}

/// Laplace expansion along rows, memoized on the set of remaining columns.
pub fn determinant(ctx: &Context, m: &Matrix) -> Scalar {
    let n = m.len();
    if n == 0 {
        return Scalar::one(ctx);
    }
    assert!(n <= 24 && m.iter().all(|r| r.len() == n), "square matrix of moderate size");
    let mut memo: HashMap<u32, Scalar> = HashMap::new();
    minor(ctx, m, 0, (1u32 << n) - 1, &mut memo)
}

fn minor(ctx: &Context, m: &Matrix, row: usize, cols: u32, memo: &mut HashMap<u32, Scalar>) -> Scalar {
    if row == m.len() {
        return Scalar::one(ctx);
    }
    if let Some(v) = memo.get(&cols) {
        return v.clone();
    }
    let mut acc = Scalar::zero(ctx);
    let mut sign_odd = false;
    for c in 0..m.len() {
        if cols & (1 << c) == 0 {
            continue;
        }
        let e = &m[row][c];
        if !e.is_zero() {
            let sub = minor(ctx, m, row + 1, cols & !(1 << c), memo);
            let term = e * &sub;
            acc = if sign_odd { &acc - &term } else { &acc + &term };
        }
        sign_odd = !sign_odd;
    }
    memo.insert(cols, acc.clone());
    acc
}
