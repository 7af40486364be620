//! Sparse exact matrices and row reduction.

use std::collections::BTreeMap;
use std::fmt;

use serde::ser::SerializeStruct;
use serde::{Deserialize, Serialize, Serializer};

use super::{ExactError, Rational};

type Row = BTreeMap<usize, Rational>;

/// Sparse rational matrix. Zero entries are never stored.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SparseMatrix {
    rows: usize,
    cols: usize,
    entries: BTreeMap<(usize, usize), Rational>,
}

impl SparseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        SparseMatrix { rows, cols, entries: BTreeMap::new() }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.entries.insert((i, i), Rational::one());
        }
        m
    }

    pub fn scalar(n: usize, c: &Rational) -> Self {
        Self::identity(n).scale(c)
    }

    pub fn from_dense(rows: &[Vec<Rational>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut m = Self::zeros(r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged dense matrix");
            for (j, v) in row.iter().enumerate() {
                m.set(i, j, v.clone());
            }
        }
        m
    }

    pub fn from_ints(rows: &[&[i64]]) -> Self {
        let dense: Vec<Vec<Rational>> =
            rows.iter().map(|r| r.iter().map(|&x| Rational::from_int(x)).collect()).collect();
        Self::from_dense(&dense)
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(rows: usize, cols: &[Vec<Rational>]) -> Self {
        let mut m = Self::zeros(rows, cols.len());
        for (j, v) in cols.iter().enumerate() {
            assert_eq!(v.len(), rows);
            for (i, x) in v.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> Rational {
        self.entries.get(&(r, c)).cloned().unwrap_or_default()
    }

    pub fn set(&mut self, r: usize, c: usize, v: Rational) {
        assert!(r < self.rows && c < self.cols, "index ({r},{c}) out of bounds");
        if v.is_zero() {
            self.entries.remove(&(r, c));
        } else {
            self.entries.insert((r, c), v);
        }
    }

    pub fn add_at(&mut self, r: usize, c: usize, v: &Rational) {
        if v.is_zero() {
            return;
        }
        assert!(r < self.rows && c < self.cols, "index ({r},{c}) out of bounds");
        let e = self.entries.entry((r, c)).or_default();
        *e += v;
        if e.is_zero() {
            self.entries.remove(&(r, c));
        }
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &Rational)> {
        self.entries.iter().map(|(&(r, c), v)| (r, c, v))
    }

    pub fn column(&self, c: usize) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); self.rows];
        for (&(r, cc), x) in &self.entries {
            if cc == c {
                v[r] = x.clone();
            }
        }
        v
    }

    pub fn to_dense(&self) -> Vec<Vec<Rational>> {
        let mut d = vec![vec![Rational::zero(); self.cols]; self.rows];
        for (&(r, c), x) in &self.entries {
            d[r][c] = x.clone();
        }
        d
    }

    fn row_lists(&self) -> Vec<Vec<(usize, &Rational)>> {
        let mut out = vec![Vec::new(); self.rows];
        for (&(r, c), v) in &self.entries {
            out[r].push((c, v));
        }
        out
    }

    pub fn transpose(&self) -> Self {
        let mut m = Self::zeros(self.cols, self.rows);
        for (&(r, c), v) in &self.entries {
            m.entries.insert((c, r), v.clone());
        }
        m
    }

    pub fn scale(&self, s: &Rational) -> Self {
        if s.is_zero() {
            return Self::zeros(self.rows, self.cols);
        }
        let mut m = self.clone();
        for v in m.entries.values_mut() {
            *v *= s;
        }
        m
    }

    pub fn neg(&self) -> Self {
        let mut m = self.clone();
        for v in m.entries.values_mut() {
            *v = -&*v;
        }
        m
    }

    fn check_same_shape(&self, o: &Self) -> Result<(), ExactError> {
        if self.rows != o.rows || self.cols != o.cols {
            return Err(ExactError::DimensionMismatch { left: (self.rows, self.cols), right: (o.rows, o.cols) });
        }
        Ok(())
    }

    pub fn try_add(&self, o: &Self) -> Result<Self, ExactError> {
        self.check_same_shape(o)?;
        let mut m = self.clone();
        for (&(r, c), v) in &o.entries {
            m.add_at(r, c, v);
        }
        Ok(m)
    }

    pub fn try_sub(&self, o: &Self) -> Result<Self, ExactError> {
        self.try_add(&o.neg())
    }

    pub fn try_mul(&self, o: &Self) -> Result<Self, ExactError> {
        if self.cols != o.rows {
            return Err(ExactError::DimensionMismatch { left: (self.rows, self.cols), right: (o.rows, o.cols) });
        }
        let orows = o.row_lists();
        let mut acc: Vec<Row> = vec![Row::new(); self.rows];
        for (&(r, k), a) in &self.entries {
            for &(c, b) in &orows[k] {
                let e = acc[r].entry(c).or_default();
                *e += &(a * b);
            }
        }
        let mut m = Self::zeros(self.rows, o.cols);
        for (r, row) in acc.into_iter().enumerate() {
            for (c, v) in row {
                if !v.is_zero() {
                    m.entries.insert((r, c), v);
                }
            }
        }
        Ok(m)
    }

    /// Panicking sum; shapes are assumed to agree.
    pub fn add(&self, o: &Self) -> Self {
        self.try_add(o).expect("matrix shapes differ")
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.try_sub(o).expect("matrix shapes differ")
    }

    pub fn mul(&self, o: &Self) -> Self {
        self.try_mul(o).expect("matrix shapes do not compose")
    }

    /// `self * o - o * self`.
    pub fn commutator(&self, o: &Self) -> Self {
        self.mul(o).sub(&o.mul(self))
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.cols);
        let mut out = vec![Rational::zero(); self.rows];
        for (&(r, c), a) in &self.entries {
            if !v[c].is_zero() {
                out[r] += &(a * &v[c]);
            }
        }
        out
    }

    /// Kronecker product; the left factor index is major.
    pub fn kron(&self, o: &Self) -> Self {
        let mut m = Self::zeros(self.rows * o.rows, self.cols * o.cols);
        for (&(r1, c1), a) in &self.entries {
            for (&(r2, c2), b) in &o.entries {
                m.entries.insert((r1 * o.rows + r2, c1 * o.cols + c2), a * b);
            }
        }
        m
    }

    pub fn submatrix(&self, rows: std::ops::Range<usize>, cols: std::ops::Range<usize>) -> Self {
        let mut m = Self::zeros(rows.len(), cols.len());
        for (&(r, c), v) in &self.entries {
            if rows.contains(&r) && cols.contains(&c) {
                m.entries.insert((r - rows.start, c - cols.start), v.clone());
            }
        }
        m
    }

    /// Copies `block` into `self` with its top-left corner at (r0, c0).
    pub fn place(&mut self, r0: usize, c0: usize, block: &Self) {
        for (&(r, c), v) in &block.entries {
            self.set(r0 + r, c0 + c, v.clone());
        }
    }

    /// Keeps the listed columns, in the given order.
    pub fn select_columns(&self, cols: &[usize]) -> Self {
        let pos: BTreeMap<usize, usize> = cols.iter().enumerate().map(|(i, &c)| (c, i)).collect();
        let mut m = Self::zeros(self.rows, cols.len());
        for (&(r, c), v) in &self.entries {
            if let Some(&j) = pos.get(&c) {
                m.entries.insert((r, j), v.clone());
            }
        }
        m
    }

    /// Reduced row echelon form: (pivot columns, reduced matrix).
    pub fn rref(&self) -> (Vec<usize>, SparseMatrix) {
        let mut rows: Vec<Row> = vec![Row::new(); self.rows];
        for (&(r, c), v) in &self.entries {
            rows[r].insert(c, v.clone());
        }
        let mut pivots = Vec::new();
        let mut next = 0usize;
        for col in 0..self.cols {
            if next == rows.len() {
                break;
            }
            let Some(p) = (next..rows.len()).find(|&i| rows[i].contains_key(&col)) else {
                continue;
            };
            rows.swap(next, p);
            let inv = rows[next][&col].recip().expect("nonzero pivot");
            for v in rows[next].values_mut() {
                *v *= &inv;
            }
            let prow = rows[next].clone();
            for (i, row) in rows.iter_mut().enumerate() {
                if i == next {
                    continue;
                }
                if let Some(f) = row.get(&col).cloned() {
                    for (c, v) in &prow {
                        let e = row.entry(*c).or_default();
                        *e -= &(&f * v);
                        if e.is_zero() {
                            row.remove(c);
                        }
                    }
                }
            }
            pivots.push(col);
            next += 1;
        }
        let mut m = Self::zeros(self.rows, self.cols);
        for (r, row) in rows.into_iter().enumerate() {
            for (c, v) in row {
                m.entries.insert((r, c), v);
            }
        }
        (pivots, m)
    }

    pub fn rank(&self) -> usize {
        self.rref().0.len()
    }

    /// Basis of the right kernel, one vector per free column, echelonized.
    pub fn kernel_basis(&self) -> Vec<Vec<Rational>> {
        let (pivots, red) = self.rref();
        let piv_set: BTreeMap<usize, usize> = pivots.iter().enumerate().map(|(i, &c)| (c, i)).collect();
        let mut out = Vec::new();
        for free in (0..self.cols).filter(|c| !piv_set.contains_key(c)) {
            let mut v = vec![Rational::zero(); self.cols];
            v[free] = Rational::one();
            for (&pc, &row) in &piv_set {
                v[pc] = -red.get(row, free);
            }
            out.push(v);
        }
        out
    }

    pub fn inverse(&self) -> Result<SparseMatrix, ExactError> {
        if !self.is_square() {
            return Err(ExactError::NotInvertible);
        }
        let n = self.rows;
        let mut aug = Self::zeros(n, 2 * n);
        aug.place(0, 0, self);
        aug.place(0, n, &Self::identity(n));
        let (piv, red) = aug.rref();
        if piv.len() < n || piv[n - 1] >= n {
            return Err(ExactError::NotInvertible);
        }
        Ok(red.submatrix(0..n, n..2 * n))
    }

    /// Solves `self * X = rhs` when the columns of `self` are independent and
    /// every column of `rhs` lies in their span; `None` otherwise.
    pub fn solve_in_span(&self, rhs: &SparseMatrix) -> Option<SparseMatrix> {
        assert_eq!(self.rows, rhs.rows);
        let k = self.cols;
        let mut aug = Self::zeros(self.rows, k + rhs.cols);
        aug.place(0, 0, self);
        aug.place(0, k, rhs);
        let (piv, red) = aug.rref();
        if piv.len() < k || piv.iter().take(k).enumerate().any(|(i, &c)| c != i) {
            return None;
        }
        if piv.len() > k {
            return None;
        }
        Some(red.submatrix(0..k, k..k + rhs.cols))
    }

    /// Checks that `self` and `o` agree on the given columns; returns the first
    /// differing entry.
    pub fn first_difference(&self, o: &Self) -> Option<(usize, usize, Rational, Rational)> {
        let keys: std::collections::BTreeSet<(usize, usize)> =
            self.entries.keys().chain(o.entries.keys()).cloned().collect();
        for (r, c) in keys {
            let a = self.get(r, c);
            let b = o.get(r, c);
            if a != b {
                return Some((r, c, a, b));
            }
        }
        None
    }
}

impl fmt::Debug for SparseMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SparseMatrix {}x{} [", self.rows, self.cols)?;
        for (i, ((r, c), v)) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "({r},{c})={v}")?;
        }
        write!(f, "]")
    }
}

impl Serialize for SparseMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let entries: Vec<(usize, usize, String)> =
            self.entries.iter().map(|(&(r, c), v)| (r, c, v.to_string())).collect();
        let mut st = s.serialize_struct("SparseMatrix", 3)?;
        st.serialize_field("rows", &self.rows)?;
        st.serialize_field("cols", &self.cols)?;
        st.serialize_field("entries", &entries)?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for SparseMatrix {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            rows: usize,
            cols: usize,
            entries: Vec<(usize, usize, Rational)>,
        }
        let raw = Raw::deserialize(d)?;
        let mut m = SparseMatrix::zeros(raw.rows, raw.cols);
        for (r, c, v) in raw.entries {
            if r >= raw.rows || c >= raw.cols {
                return Err(serde::de::Error::custom("matrix entry out of bounds"));
            }
            m.set(r, c, v);
        }
        Ok(m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Rational {
        Rational::from_int(n)
    }

    #[test]
    fn rref_examples() {
        let id = SparseMatrix::identity(3);
        assert_eq!(id.rref(), (vec![0, 1, 2], id.clone()));
        let z = SparseMatrix::zeros(2, 3);
        assert_eq!(z.rref(), (vec![], z.clone()));
        let m = SparseMatrix::from_ints(&[&[1, 2], &[2, 4]]);
        let (p, r) = m.rref();
        assert_eq!(p, vec![0]);
        assert_eq!(r, SparseMatrix::from_ints(&[&[1, 2], &[0, 0]]));
    }

    #[test]
    fn kernels() {
        assert!(SparseMatrix::identity(4).kernel_basis().is_empty());
        let k = SparseMatrix::from_ints(&[&[1, -1]]).kernel_basis();
        assert_eq!(k, vec![vec![q(1), q(1)]]);
        let k = SparseMatrix::from_ints(&[&[1, 2], &[2, 4]]).kernel_basis();
        assert_eq!(k.len(), 1);
        // proportional to (-2, 1)
        assert_eq!(&k[0][0] * &q(1), &k[0][1] * &q(-2));
    }

    #[test]
    fn inverse_and_solve() {
        let m = SparseMatrix::from_ints(&[&[2, 1], &[1, 1]]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), SparseMatrix::identity(2));
        assert!(SparseMatrix::from_ints(&[&[1, 2], &[2, 4]]).inverse().is_err());
        let b = SparseMatrix::from_ints(&[&[1], &[1], &[0]]);
        let rhs = SparseMatrix::from_ints(&[&[3], &[3], &[0]]);
        assert_eq!(b.solve_in_span(&rhs).unwrap(), SparseMatrix::from_ints(&[&[3]]));
        let off = SparseMatrix::from_ints(&[&[1], &[0], &[0]]);
        assert!(b.solve_in_span(&off).is_none());
    }

    #[test]
    fn json_form() {
        let m = SparseMatrix::from_dense(&[vec![Rational::new(1, 2), q(0)], vec![q(0), q(-3)]]);
        let s = serde_json::to_string(&m).unwrap();
        assert_eq!(s, r#"{"rows":2,"cols":2,"entries":[[0,0,"1/2"],[1,1,"-3"]]}"#);
        let back: SparseMatrix = serde_json::from_str(&s).unwrap();
        assert_eq!(back, m);
    }

    #[test]
    fn kron_shape() {
        let a = SparseMatrix::from_ints(&[&[0, 1], &[1, 0]]);
        let k = a.kron(&SparseMatrix::identity(2));
        assert_eq!(k.get(0, 2), q(1));
        assert_eq!(k.get(3, 1), q(1));
        assert_eq!(k.nnz(), 4);
    }
}
