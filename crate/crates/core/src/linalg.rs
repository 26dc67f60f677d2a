//! Dense row reduction over an exact field.

use crate::field::Field;

/// A dense matrix, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix<E> {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<E>,
}

impl<E: Clone> Matrix<E> {
    pub fn from_rows(rows: Vec<Vec<E>>, cols: usize) -> Self {
        let n = rows.len();
        let data: Vec<E> = rows.into_iter().flatten().collect();
        assert_eq!(data.len(), n * cols);
        Matrix { rows: n, cols, data }
    }

    pub fn get(&self, r: usize, c: usize) -> &E {
        &self.data[r * self.cols + c]
    }

    pub fn row(&self, r: usize) -> &[E] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }
}

/// Reduced row echelon form in place; returns the pivot columns.
pub fn row_reduce<F: Field>(field: &F, m: &mut Matrix<F::Elem>) -> Vec<usize> {
    let (rows, cols) = (m.rows, m.cols);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !field.is_zero(m.get(i, c))) else {
            continue;
        };
        if p != r {
            for k in 0..cols {
                m.data.swap(p * cols + k, r * cols + k);
            }
        }
        let inv = field.inv(m.get(r, c));
        for k in c..cols {
            let v = field.mul(&m.data[r * cols + k], &inv);
            m.data[r * cols + k] = v;
        }
        for i in 0..rows {
            if i == r || field.is_zero(m.get(i, c)) {
                continue;
            }
            let factor = m.get(i, c).clone();
            for k in c..cols {
                let v = field.sub(&m.data[i * cols + k], &field.mul(&factor, &m.data[r * cols + k]));
                m.data[i * cols + k] = v;
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank<F: Field>(field: &F, m: &Matrix<F::Elem>) -> usize {
    let mut m = m.clone();
    row_reduce(field, &mut m).len()
}

/// Basis of `{x : m x = 0}`.
pub fn kernel<F: Field>(field: &F, m: &Matrix<F::Elem>) -> Vec<Vec<F::Elem>> {
    let mut r = m.clone();
    let pivots = row_reduce(field, &mut r);
    let free: Vec<usize> = (0..m.cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![field.zero(); m.cols];
            v[f] = field.one();
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = field.neg(r.get(i, f));
            }
            v
        })
        .collect()
}

/// One solution of `m x = b` together with a kernel basis, or `None` when inconsistent.
pub fn solve<F: Field>(field: &F, m: &Matrix<F::Elem>, b: &[F::Elem]) -> Option<(Vec<F::Elem>, Vec<Vec<F::Elem>>)> {
    assert_eq!(b.len(), m.rows);
    let mut aug = Matrix {
        rows: m.rows,
        cols: m.cols + 1,
        data: (0..m.rows).flat_map(|i| m.row(i).iter().cloned().chain([b[i].clone()])).collect(),
    };
    let pivots = row_reduce(field, &mut aug);
    if pivots.last() == Some(&m.cols) {
        return None;
    }
    let mut x = vec![field.zero(); m.cols];
    for (i, &p) in pivots.iter().enumerate() {
        x[p] = aug.get(i, m.cols).clone();
    }
    Some((x, kernel(field, m)))
}
