//! Small dense matrices over a noncommutative coefficient algebra.

use super::{Coeff, Rational, SparseMatrix};

/// Coefficient algebras that contain the rationals as scalars.
pub trait Scalarish: Coeff {
    fn as_scalar(&self) -> Option<Rational>;
    fn scalar_like(&self, r: &Rational) -> Self;
}

impl Scalarish for Rational {
    fn as_scalar(&self) -> Option<Rational> {
        Some(self.clone())
    }
    fn scalar_like(&self, r: &Rational) -> Self {
        r.clone()
    }
}

/// Row-major dense matrix with entries in `T`. Products keep the factor order.
#[derive(Clone, PartialEq, Debug)]
pub struct DenseMatrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Scalarish> DenseMatrix<T> {
    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        DenseMatrix { rows, cols, data }
    }

    /// Zero matrix whose entries share the shape of `proto`.
    pub fn zeros(rows: usize, cols: usize, proto: &T) -> Self {
        let z = proto.zero_like();
        Self::from_fn(rows, cols, |_, _| z.clone())
    }

    pub fn identity(n: usize, proto: &T) -> Self {
        let z = proto.zero_like();
        let o = proto.one_like();
        Self::from_fn(n, n, |r, c| if r == c { o.clone() } else { z.clone() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &T {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: T) {
        self.data[r * self.cols + c] = v;
    }

    pub fn block(&self, rows: std::ops::Range<usize>, cols: std::ops::Range<usize>) -> Self {
        Self::from_fn(rows.len(), cols.len(), |r, c| self.get(rows.start + r, cols.start + c).clone())
    }

    /// Assembles [[a, b], [c, d]].
    pub fn from_blocks(a: &Self, b: &Self, c: &Self, d: &Self) -> Self {
        let (n, l) = (a.rows, d.rows);
        Self::from_fn(n + l, n + l, |r, col| match (r < n, col < n) {
            (true, true) => a.get(r, col).clone(),
            (true, false) => b.get(r, col - n).clone(),
            (false, true) => c.get(r - n, col).clone(),
            (false, false) => d.get(r - n, col - n).clone(),
        })
    }

    pub fn to_sparse(&self) -> Option<SparseMatrix> {
        let mut m = SparseMatrix::zeros(self.rows, self.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                m.set(r, c, self.get(r, c).as_scalar()?);
            }
        }
        Some(m)
    }
}

impl<T: Scalarish> Coeff for DenseMatrix<T> {
    fn zero_like(&self) -> Self {
        Self::zeros(self.rows, self.cols, &self.data[0])
    }
    fn one_like(&self) -> Self {
        Self::identity(self.rows, &self.data[0])
    }
    fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }
    fn add(&self, o: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        DenseMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a.add(b)).collect(),
        }
    }
    fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.cols, o.rows);
        let proto = self.data[0].zero_like();
        Self::from_fn(self.rows, o.cols, |r, c| {
            let mut acc = proto.clone();
            for k in 0..self.cols {
                let (a, b) = (self.get(r, k), o.get(k, c));
                if !a.is_zero() && !b.is_zero() {
                    acc = acc.add(&a.mul(b));
                }
            }
            acc
        })
    }
    fn scale(&self, r: &Rational) -> Self {
        DenseMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x.scale(r)).collect() }
    }
    fn composes_with(&self, o: &Self) -> bool {
        self.cols == o.rows
    }
    /// Only matrices with scalar entries are inverted.
    fn try_inverse(&self) -> Option<Self> {
        let inv = self.to_sparse()?.inverse().ok()?;
        let p = &self.data[0];
        Some(Self::from_fn(self.rows, self.cols, |r, c| p.scalar_like(&inv.get(r, c))))
    }
}
