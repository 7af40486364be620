//! Truncated formal series Σ_{s≤K} c_s u^{-s}.

use super::{binomial, ExactError, Rational, SparseMatrix};

/// Coefficient space of a truncated series: a unital algebra over the rationals.
pub trait Coeff: Clone + PartialEq + std::fmt::Debug {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn scale(&self, r: &Rational) -> Self;
    /// Whether `self * o` is defined.
    fn composes_with(&self, _o: &Self) -> bool {
        true
    }
    fn try_inverse(&self) -> Option<Self>;

    fn neg(&self) -> Self {
        self.scale(&Rational::from_int(-1))
    }
    fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }
}

impl Coeff for Rational {
    fn zero_like(&self) -> Self {
        Rational::zero()
    }
    fn one_like(&self) -> Self {
        Rational::one()
    }
    fn is_zero(&self) -> bool {
        Rational::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn scale(&self, r: &Rational) -> Self {
        self * r
    }
    fn try_inverse(&self) -> Option<Self> {
        self.recip()
    }
}

impl Coeff for SparseMatrix {
    fn zero_like(&self) -> Self {
        SparseMatrix::zeros(self.rows(), self.cols())
    }
    fn one_like(&self) -> Self {
        SparseMatrix::identity(self.rows())
    }
    fn is_zero(&self) -> bool {
        SparseMatrix::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        SparseMatrix::add(self, o)
    }
    fn mul(&self, o: &Self) -> Self {
        SparseMatrix::mul(self, o)
    }
    fn scale(&self, r: &Rational) -> Self {
        SparseMatrix::scale(self, r)
    }
    fn composes_with(&self, o: &Self) -> bool {
        self.cols() == o.rows()
    }
    fn try_inverse(&self) -> Option<Self> {
        self.inverse().ok()
    }
}

#[derive(Clone, PartialEq, Debug)]
pub struct TruncatedSeries<T> {
    coeffs: Vec<T>,
}

impl<T: Coeff> TruncatedSeries<T> {
    pub fn new(coeffs: Vec<T>) -> Self {
        assert!(!coeffs.is_empty(), "series needs at least c_0");
        TruncatedSeries { coeffs }
    }

    /// The constant series `c` of order `k`.
    pub fn constant(c: T, k: usize) -> Self {
        let z = c.zero_like();
        let mut coeffs = vec![z; k + 1];
        coeffs[0] = c;
        TruncatedSeries { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, s: usize) -> &T {
        &self.coeffs[s]
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn truncate(&self, k: usize) -> Self {
        TruncatedSeries { coeffs: self.coeffs[..=k.min(self.order())].to_vec() }
    }

    pub fn map<U: Coeff>(&self, f: impl Fn(&T) -> U) -> TruncatedSeries<U> {
        TruncatedSeries { coeffs: self.coeffs.iter().map(f).collect() }
    }

    pub fn add(&self, o: &Self) -> Self {
        let k = self.order().min(o.order());
        TruncatedSeries { coeffs: (0..=k).map(|s| self.coeffs[s].add(&o.coeffs[s])).collect() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        let k = self.order().min(o.order());
        TruncatedSeries { coeffs: (0..=k).map(|s| self.coeffs[s].sub(&o.coeffs[s])).collect() }
    }

    pub fn scale(&self, r: &Rational) -> Self {
        self.map(|c| c.scale(r))
    }

    /// Multiplies by u^{-k}, dropping terms past the order.
    pub fn shift(&self, k: usize) -> Self {
        let z = self.coeffs[0].zero_like();
        let n = self.coeffs.len();
        let coeffs = (0..n).map(|s| if s < k { z.clone() } else { self.coeffs[s - k].clone() }).collect();
        TruncatedSeries { coeffs }
    }

    /// c_s ↦ (-1)^s c_s, i.e. u ↦ -u.
    pub fn negate_variable(&self) -> Self {
        let m1 = Rational::from_int(-1);
        TruncatedSeries {
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(s, c)| if s % 2 == 1 { c.scale(&m1) } else { c.clone() })
                .collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }
}

/// Cauchy product to order `min(k, order A, order B)`.
pub fn series_mul<T: Coeff>(
    a: &TruncatedSeries<T>,
    b: &TruncatedSeries<T>,
    k: usize,
) -> Result<TruncatedSeries<T>, ExactError> {
    if !a.coeffs[0].composes_with(&b.coeffs[0]) {
        return Err(ExactError::CoefficientMismatch);
    }
    let k = k.min(a.order()).min(b.order());
    let zero = a.coeffs[0].mul(&b.coeffs[0]).zero_like();
    let mut out = Vec::with_capacity(k + 1);
    for s in 0..=k {
        let mut acc = zero.clone();
        for r in 0..=s {
            if a.coeffs[r].is_zero() || b.coeffs[s - r].is_zero() {
                continue;
            }
            acc = acc.add(&a.coeffs[r].mul(&b.coeffs[s - r]));
        }
        out.push(acc);
    }
    Ok(TruncatedSeries { coeffs: out })
}

/// Two-sided inverse to order `k`; requires an invertible leading coefficient.
pub fn series_inverse<T: Coeff>(s: &TruncatedSeries<T>, k: usize) -> Result<TruncatedSeries<T>, ExactError> {
    let k = k.min(s.order());
    let inv0 = s.coeffs[0].try_inverse().ok_or(ExactError::NotInvertible)?;
    // b_t = -c_0^{-1} Σ_{r=1}^{t} c_r b_{t-r}
    let mut b: Vec<T> = vec![inv0.clone()];
    for t in 1..=k {
        let mut acc = inv0.zero_like();
        for r in 1..=t {
            if s.coeffs[r].is_zero() {
                continue;
            }
            acc = acc.add(&s.coeffs[r].mul(&b[t - r]));
        }
        b.push(inv0.mul(&acc).neg());
    }
    Ok(TruncatedSeries { coeffs: b })
}

/// Rewrites Σ c_s (u-z)^{-s} as a series in u^{-1} to order `k`, using
/// (u-z)^{-s} = Σ_{r≥s} C(r-1, s-1) z^{r-s} u^{-r}.
pub fn series_reexpand<T: Coeff>(s: &TruncatedSeries<T>, z: &Rational, k: usize) -> TruncatedSeries<T> {
    let k = k.min(s.order());
    let mut out = vec![s.coeffs[0].clone()];
    for r in 1..=k {
        let mut acc = s.coeffs[0].zero_like();
        for t in 1..=r {
            let f = binomial((r - 1) as u64, (t - 1) as u64) * z.pow((r - t) as u32);
            if f.is_zero() || s.coeffs[t].is_zero() {
                continue;
            }
            acc = acc.add(&s.coeffs[t].scale(&f));
        }
        out.push(acc);
    }
    TruncatedSeries { coeffs: out }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Rational {
        Rational::from_int(n)
    }

    fn ser(v: &[i64]) -> TruncatedSeries<Rational> {
        TruncatedSeries::new(v.iter().map(|&x| q(x)).collect())
    }

    #[test]
    fn mul_basic() {
        let one = ser(&[1, 0, 0]);
        let b = ser(&[2, 3, 5]);
        assert_eq!(series_mul(&one, &b, 2).unwrap(), b);
        // (1 + x u^-1)(1 - x u^-1) = 1 - x^2 u^-2 with x = 3
        let p = series_mul(&ser(&[1, 3, 0]), &ser(&[1, -3, 0]), 2).unwrap();
        assert_eq!(p, ser(&[1, 0, -9]));
        // mixing orders takes the minimum
        assert_eq!(series_mul(&ser(&[1, 1]), &ser(&[1, 1, 1]), 5).unwrap().order(), 1);
    }

    #[test]
    fn mul_dimension_mismatch() {
        let a = TruncatedSeries::constant(SparseMatrix::identity(2), 1);
        let b = TruncatedSeries::constant(SparseMatrix::identity(3), 1);
        assert_eq!(series_mul(&a, &b, 1), Err(ExactError::CoefficientMismatch));
    }

    #[test]
    fn geometric_inverse() {
        let e = SparseMatrix::from_ints(&[&[1, 2], &[0, 3]]);
        let k = 4;
        let mut c = vec![SparseMatrix::zeros(2, 2); k + 1];
        c[0] = SparseMatrix::identity(2);
        c[1] = e.neg();
        let s = TruncatedSeries::new(c);
        let inv = series_inverse(&s, k).unwrap();
        let mut pw = SparseMatrix::identity(2);
        for t in 0..=k {
            assert_eq!(inv.coeff(t), &pw);
            pw = pw.mul(&e);
        }
        assert!(series_inverse(&ser(&[0, 1]), 1).is_err());
        assert_eq!(series_inverse(&ser(&[1, 0, 0]), 2).unwrap(), ser(&[1, 0, 0]));
    }

    #[test]
    fn reexpand() {
        let s = ser(&[0, 1, 0, 0]);
        assert_eq!(series_reexpand(&s, &q(0), 3), s);
        let z = q(5);
        assert_eq!(series_reexpand(&s, &z, 3), ser(&[0, 1, 5, 25]));
        // z = 1: the u^{-2} coefficient picks up the u^{-1} one
        let t = ser(&[1, 7, 11]);
        assert_eq!(series_reexpand(&t, &q(1), 2), ser(&[1, 7, 18]));
    }
}
