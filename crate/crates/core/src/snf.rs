//! Smith normal form over the integers with unimodular transforms.

use crate::matrix::Matrix;
use crate::scalar::IntScalar;

/// `left * a * right = diag`, with `diag` diagonal, non-negative and each
/// entry dividing the next.
#[derive(Clone, Debug)]
pub struct Smith<T> {
    pub diag: Matrix<T>,
    pub left: Matrix<T>,
    pub right: Matrix<T>,
}

impl<T: IntScalar> Smith<T> {
    pub fn invariant_factors(&self) -> Vec<T> {
        (0..self.diag.rows().min(self.diag.cols())).map(|i| self.diag[(i, i)].clone()).collect()
    }
}

fn add_row<T: IntScalar>(m: &mut Matrix<T>, src: usize, dst: usize, k: &T) {
    for j in 0..m.cols() {
        let v = m[(dst, j)].clone() + k.clone() * m[(src, j)].clone();
        m[(dst, j)] = v;
    }
}

fn add_col<T: IntScalar>(m: &mut Matrix<T>, src: usize, dst: usize, k: &T) {
    for i in 0..m.rows() {
        let v = m[(i, dst)].clone() + k.clone() * m[(i, src)].clone();
        m[(i, dst)] = v;
    }
}

fn negate_row<T: IntScalar>(m: &mut Matrix<T>, r: usize) {
    for j in 0..m.cols() {
        m[(r, j)] = -m[(r, j)].clone();
    }
}

pub fn smith_normal_form<T: IntScalar>(a: &Matrix<T>) -> Smith<T> {
    let (rows, cols) = (a.rows(), a.cols());
    let mut d = a.clone();
    let mut left = Matrix::<T>::identity(rows);
    let mut right = Matrix::<T>::identity(cols);

    for t in 0..rows.min(cols) {
        // smallest nonzero entry in the remaining block
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if !d[(i, j)].is_zero() && best.is_none_or(|(bi, bj)| d[(i, j)].abs() < d[(bi, bj)].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        d.swap_rows(t, pi);
        left.swap_rows(t, pi);
        d.swap_cols(t, pj);
        right.swap_cols(t, pj);

        loop {
            let mut dirty = false;
            for i in t + 1..rows {
                if d[(i, t)].is_zero() {
                    continue;
                }
                let q = -d[(i, t)].div_floor(&d[(t, t)]);
                add_row(&mut d, t, i, &q);
                add_row(&mut left, t, i, &q);
                if !d[(i, t)].is_zero() {
                    d.swap_rows(t, i);
                    left.swap_rows(t, i);
                    dirty = true;
                }
            }
            for j in t + 1..cols {
                if d[(t, j)].is_zero() {
                    continue;
                }
                let q = -d[(t, j)].div_floor(&d[(t, t)]);
                add_col(&mut d, t, j, &q);
                add_col(&mut right, t, j, &q);
                if !d[(t, j)].is_zero() {
                    d.swap_cols(t, j);
                    right.swap_cols(t, j);
                    dirty = true;
                }
            }
            if dirty {
                continue;
            }
            // divisibility of the rest of the block
            let bad = (t + 1..rows).flat_map(|i| (t + 1..cols).map(move |j| (i, j))).find(|&(i, j)| !(d[(i, j)].clone() % d[(t, t)].clone()).is_zero());
            match bad {
                Some((i, _)) => {
                    let one = T::one();
                    add_row(&mut d, i, t, &one);
                    add_row(&mut left, i, t, &one);
                }
                None => break,
            }
        }
        if d[(t, t)].is_negative() {
            negate_row(&mut d, t);
            negate_row(&mut left, t);
        }
    }
    Smith { diag: d, left, right }
}
