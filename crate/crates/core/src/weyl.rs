//! Differential operators with polynomial coefficients on C^m⊗C^n.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exact::{binomial, factorial, Rational};

/// Coordinate x_ai, 1-based.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct VarIndex {
    pub a: usize,
    pub i: usize,
}

impl VarIndex {
    pub fn new(a: usize, i: usize) -> Self {
        assert!(a >= 1 && i >= 1, "variable indices are 1-based");
        VarIndex { a, i }
    }
}

/// Sparse exponent vector, sorted by variable, no zero exponents.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct MultiIndex(Vec<(VarIndex, u32)>);

impl MultiIndex {
    pub fn one() -> Self {
        MultiIndex(Vec::new())
    }

    pub fn var(v: VarIndex) -> Self {
        MultiIndex(vec![(v, 1)])
    }

    pub fn from_pairs(pairs: &[(VarIndex, u32)]) -> Self {
        let mut m = Self::one();
        for &(v, e) in pairs {
            m = m.with(v, e as i64);
        }
        m
    }

    pub fn entries(&self) -> &[(VarIndex, u32)] {
        &self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, v: VarIndex) -> u32 {
        self.0.binary_search_by(|p| p.0.cmp(&v)).map_or(0, |i| self.0[i].1)
    }

    /// Exponent of `v` shifted by `delta`; panics if it would go negative.
    pub fn with(&self, v: VarIndex, delta: i64) -> Self {
        let mut e = self.0.clone();
        match e.binary_search_by(|p| p.0.cmp(&v)) {
            Ok(i) => {
                let ne = e[i].1 as i64 + delta;
                assert!(ne >= 0, "negative exponent");
                if ne == 0 {
                    e.remove(i);
                } else {
                    e[i].1 = ne as u32;
                }
            }
            Err(i) => {
                assert!(delta >= 0, "negative exponent");
                if delta > 0 {
                    e.insert(i, (v, delta as u32));
                }
            }
        }
        MultiIndex(e)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|p| p.1).sum()
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut r = self.clone();
        for &(v, e) in &o.0 {
            r = r.with(v, e as i64);
        }
        r
    }

    /// Row sums: the gl_m weight of the monomial.
    pub fn row_degrees(&self, m: usize) -> Vec<i64> {
        let mut w = vec![0; m];
        for (v, e) in &self.0 {
            w[v.a - 1] += *e as i64;
        }
        w
    }

    /// Column sums: the gl_n weight of the monomial.
    pub fn col_degrees(&self, n: usize) -> Vec<i64> {
        let mut w = vec![0; n];
        for (v, e) in &self.0 {
            w[v.i - 1] += *e as i64;
        }
        w
    }

    pub fn map_vars(&self, f: impl Fn(VarIndex) -> VarIndex) -> Self {
        let mut r = Self::one();
        for &(v, e) in &self.0 {
            r = r.with(f(v), e as i64);
        }
        r
    }

    fn descriptor(&self) -> Vec<[usize; 3]> {
        self.0.iter().map(|(v, e)| [v.a, v.i, *e as usize]).collect()
    }
}

impl fmt::Debug for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (v, e) in &self.0 {
            write!(f, "x{}{}", v.a, v.i)?;
            if *e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

/// All monomials in the given variables whose row sums equal `rows`.
pub fn monomials_with_row_degrees(rows: &[i64], n: usize) -> Vec<MultiIndex> {
    if rows.iter().any(|&r| r < 0) {
        return Vec::new();
    }
    let mut out = vec![MultiIndex::one()];
    for (a, &d) in rows.iter().enumerate() {
        let mut next = Vec::new();
        for comp in compositions(d as u32, n) {
            for base in &out {
                let mut m = base.clone();
                for (i, &e) in comp.iter().enumerate() {
                    m = m.with(VarIndex::new(a + 1, i + 1), e as i64);
                }
                next.push(m);
            }
        }
        out = next;
    }
    out.sort();
    out
}

/// Weak compositions of `d` into `parts` parts, in lexicographic order.
pub fn compositions(d: u32, parts: usize) -> Vec<Vec<u32>> {
    if parts == 0 {
        return if d == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in (0..=d).rev() {
        for mut rest in compositions(d - first, parts - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Normally ordered monomial x^x ∂^d.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct WeylMonomial {
    pub x: MultiIndex,
    pub d: MultiIndex,
}

impl WeylMonomial {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn degree(&self) -> (u32, u32) {
        (self.x.degree(), self.d.degree())
    }
}

impl fmt::Debug for WeylMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.x)?;
        for (v, e) in &self.d.0 {
            write!(f, "d{}{}", v.a, v.i)?;
            if *e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

fn add_to<K: Ord + Clone>(t: &mut BTreeMap<K, Rational>, k: K, c: &Rational) {
    if c.is_zero() {
        return;
    }
    match t.get_mut(&k) {
        Some(v) => {
            *v += c;
            if v.is_zero() {
                t.remove(&k);
            }
        }
        None => {
            t.insert(k, c.clone());
        }
    }
}

/// ∂^β x^γ = Σ_κ Π_v C(β_v,κ_v) C(γ_v,κ_v) κ_v! x^{γ-κ} ∂^{β-κ}.
fn reorder(beta: &MultiIndex, gamma: &MultiIndex) -> Vec<(MultiIndex, MultiIndex, Rational)> {
    let mut out = vec![(gamma.clone(), beta.clone(), Rational::one())];
    for &(v, b) in &beta.0 {
        let g = gamma.get(v);
        if g == 0 {
            continue;
        }
        let mut next = Vec::new();
        for (x, d, c) in &out {
            for k in 0..=b.min(g) {
                let f = binomial(b as u64, k as u64) * binomial(g as u64, k as u64) * factorial(k as u64);
                next.push((x.with(v, -(k as i64)), d.with(v, -(k as i64)), c * &f));
            }
        }
        out = next;
    }
    out
}

/// Element of PD(C^m⊗C^n).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct WeylElement {
    m: usize,
    n: usize,
    terms: BTreeMap<WeylMonomial, Rational>,
}

impl WeylElement {
    pub fn zero(m: usize, n: usize) -> Self {
        WeylElement { m, n, terms: BTreeMap::new() }
    }

    pub fn scalar(m: usize, n: usize, c: &Rational) -> Self {
        let mut e = Self::zero(m, n);
        add_to(&mut e.terms, WeylMonomial::one(), c);
        e
    }

    pub fn one(m: usize, n: usize) -> Self {
        Self::scalar(m, n, &Rational::one())
    }

    pub fn monomial(m: usize, n: usize, mono: WeylMonomial, c: Rational) -> Self {
        let mut e = Self::zero(m, n);
        add_to(&mut e.terms, mono, &c);
        e
    }

    pub fn x(m: usize, n: usize, a: usize, i: usize) -> Self {
        Self::monomial(
            m,
            n,
            WeylMonomial { x: MultiIndex::var(VarIndex::new(a, i)), d: MultiIndex::one() },
            Rational::one(),
        )
    }

    pub fn d(m: usize, n: usize, a: usize, i: usize) -> Self {
        Self::monomial(
            m,
            n,
            WeylMonomial { x: MultiIndex::one(), d: MultiIndex::var(VarIndex::new(a, i)) },
            Rational::one(),
        )
    }

    /// The operator x_ai ∂_bj.
    pub fn xd(m: usize, n: usize, a: usize, i: usize, b: usize, j: usize) -> Self {
        Self::monomial(
            m,
            n,
            WeylMonomial { x: MultiIndex::var(VarIndex::new(a, i)), d: MultiIndex::var(VarIndex::new(b, j)) },
            Rational::one(),
        )
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.m, self.n)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&WeylMonomial, &Rational)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!(self.dims(), o.dims());
        let mut t = self.terms.clone();
        for (k, c) in &o.terms {
            add_to(&mut t, k.clone(), c);
        }
        WeylElement { m: self.m, n: self.n, terms: t }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.m, self.n);
        }
        WeylElement { m: self.m, n: self.n, terms: self.terms.iter().map(|(k, v)| (k.clone(), v * c)).collect() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&Rational::from_int(-1)))
    }

    pub fn commutator(&self, o: &Self) -> Self {
        weyl_mul(self, o).sub(&weyl_mul(o, self))
    }
}

impl fmt::Debug for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (mo, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})·{mo:?}")?;
        }
        Ok(())
    }
}

impl Serialize for WeylElement {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let v: Vec<_> = self.terms.iter().map(|(k, c)| (k.x.descriptor(), k.d.descriptor(), c.to_string())).collect();
        v.serialize(s)
    }
}

/// Product of two normally ordered monomials.
pub fn weyl_mul_monomials(p: &WeylMonomial, q: &WeylMonomial) -> Vec<(WeylMonomial, Rational)> {
    reorder(&p.d, &q.x).into_iter().map(|(x, d, c)| (WeylMonomial { x: p.x.mul(&x), d: d.mul(&q.d) }, c)).collect()
}

pub fn weyl_mul(p: &WeylElement, q: &WeylElement) -> WeylElement {
    assert_eq!(p.dims(), q.dims());
    let mut t = BTreeMap::new();
    for (pm, pc) in &p.terms {
        for (qm, qc) in &q.terms {
            let pq = pc * qc;
            for (mo, c) in weyl_mul_monomials(pm, qm) {
                add_to(&mut t, mo, &(&pq * &c));
            }
        }
    }
    WeylElement { m: p.m, n: p.n, terms: t }
}

/// σ acts on row indices: x_ak ↦ x_{σ(a)k}, ∂_bk ↦ ∂_{σ(b)k}.
pub fn sym_permute(sigma: &[usize], p: &WeylElement) -> WeylElement {
    assert_eq!(sigma.len(), p.m);
    let f = |v: VarIndex| VarIndex::new(sigma[v.a - 1], v.i);
    let terms =
        p.terms.iter().map(|(k, c)| (WeylMonomial { x: k.x.map_vars(f), d: k.d.map_vars(f) }, c.clone())).collect();
    WeylElement { m: p.m, n: p.n, terms }
}

/// Polynomial in the x_ai.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Polynomial {
    terms: BTreeMap<MultiIndex, Rational>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: &Rational) -> Self {
        let mut p = Self::zero();
        add_to(&mut p.terms, MultiIndex::one(), c);
        p
    }

    pub fn monomial(m: MultiIndex, c: Rational) -> Self {
        let mut p = Self::zero();
        add_to(&mut p.terms, m, &c);
        p
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &Rational)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.terms.keys().map(|m| m.degree()).max().unwrap_or(0)
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut t = self.terms.clone();
        for (k, c) in &o.terms {
            add_to(&mut t, k.clone(), c);
        }
        Polynomial { terms: t }
    }

    pub fn coeff(&self, m: &MultiIndex) -> Rational {
        self.terms.get(m).cloned().unwrap_or_default()
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (mo, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})·{mo:?}")?;
        }
        Ok(())
    }
}

/// x^α ∂^β applied to the monomial x^γ.
pub fn apply_monomial(w: &WeylMonomial, f: &MultiIndex) -> Option<(MultiIndex, Rational)> {
    let mut c = Rational::one();
    let mut g = f.clone();
    for &(v, b) in w.d.entries() {
        let e = g.get(v);
        if e < b {
            return None;
        }
        for t in 0..b {
            c *= &Rational::from_int((e - t) as i64);
        }
        g = g.with(v, -(b as i64));
    }
    Some((g.mul(&w.x), c))
}

pub fn weyl_apply(p: &WeylElement, f: &Polynomial) -> Polynomial {
    let mut t = BTreeMap::new();
    for (w, wc) in &p.terms {
        for (mo, fc) in &f.terms {
            if let Some((g, c)) = apply_monomial(w, mo) {
                add_to(&mut t, g, &(&(wc * fc) * &c));
            }
        }
    }
    Polynomial { terms: t }
}

/// `weyl_apply` that refuses results above degree `cap`.
pub fn weyl_apply_capped(p: &WeylElement, f: &Polynomial, cap: u32) -> Result<Polynomial> {
    let r = weyl_apply(p, f);
    if r.degree() > cap {
        return Err(Error::CapExceeded(format!("polynomial degree {} > {}", r.degree(), cap)));
    }
    Ok(r)
}

/// γ(E_ab) = Σ_k x_ak ∂_bk.
pub fn gamma(a: usize, b: usize, m: usize, n: usize) -> WeylElement {
    let mut acc = WeylElement::zero(m, n);
    for k in 1..=n {
        acc = acc.add(&WeylElement::xd(m, n, a, k, b, k));
    }
    acc
}

/// E_ij of gl_n acting as Σ_c x_ci ∂_cj.
pub fn gl_n_operator(i: usize, j: usize, m: usize, n: usize) -> WeylElement {
    let mut acc = WeylElement::zero(m, n);
    for c in 1..=m {
        acc = acc.add(&WeylElement::xd(m, n, c, i, c, j));
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64) -> Rational {
        Rational::from_int(n)
    }

    fn xpow(a: usize, i: usize, e: u32) -> MultiIndex {
        MultiIndex::from_pairs(&[(VarIndex::new(a, i), e)])
    }

    #[test]
    fn leibniz_examples() {
        let (m, n) = (2, 1);
        let d11 = WeylElement::d(m, n, 1, 1);
        let x11 = WeylElement::x(m, n, 1, 1);
        assert_eq!(weyl_mul(&d11, &x11), WeylElement::xd(m, n, 1, 1, 1, 1).add(&WeylElement::one(m, n)));
        let x21 = WeylElement::x(m, n, 2, 1);
        let p = weyl_mul(&x11, &x21);
        assert_eq!(p.terms().count(), 1);
        let x11sq = weyl_mul(&x11, &x11);
        let expect = weyl_mul(&x11sq, &d11).add(&x11.scale(&q(2)));
        assert_eq!(weyl_mul(&d11, &x11sq), expect);
    }

    #[test]
    fn apply_examples() {
        let e = WeylElement::xd(1, 1, 1, 1, 1, 1);
        let f = Polynomial::monomial(xpow(1, 1, 4), q(1));
        assert_eq!(weyl_apply(&e, &f), Polynomial::monomial(xpow(1, 1, 4), q(4)));
        assert!(weyl_apply(&WeylElement::d(1, 1, 1, 1), &Polynomial::constant(&q(3))).is_zero());
        let g12 = gamma(1, 2, 2, 2);
        let f =
            Polynomial::monomial(MultiIndex::from_pairs(&[(VarIndex::new(2, 1), 1), (VarIndex::new(2, 2), 1)]), q(1));
        let expect =
            Polynomial::monomial(MultiIndex::from_pairs(&[(VarIndex::new(1, 1), 1), (VarIndex::new(2, 2), 1)]), q(1))
                .add(&Polynomial::monomial(
                    MultiIndex::from_pairs(&[(VarIndex::new(1, 2), 1), (VarIndex::new(2, 1), 1)]),
                    q(1),
                ));
        assert_eq!(weyl_apply(&g12, &f), expect);
        assert!(weyl_apply_capped(&WeylElement::x(1, 1, 1, 1), &f, 2).is_err());
    }

    #[test]
    fn permute_examples() {
        let p = WeylElement::xd(2, 1, 1, 1, 2, 1);
        assert_eq!(sym_permute(&[1, 2], &p), p);
        assert_eq!(sym_permute(&[2, 1], &p), WeylElement::xd(2, 1, 2, 1, 1, 1));
    }

    #[test]
    fn gl_actions_commute_and_represent() {
        let (m, n) = (2, 3);
        for a in 1..=m {
            for b in 1..=m {
                for i in 1..=n {
                    for j in 1..=n {
                        assert!(gamma(a, b, m, n).commutator(&gl_n_operator(i, j, m, n)).is_zero());
                    }
                }
                for c in 1..=m {
                    for d in 1..=m {
                        let lhs = gamma(a, b, m, n).commutator(&gamma(c, d, m, n));
                        let mut rhs = WeylElement::zero(m, n);
                        if b == c {
                            rhs = rhs.add(&gamma(a, d, m, n));
                        }
                        if d == a {
                            rhs = rhs.sub(&gamma(c, b, m, n));
                        }
                        assert_eq!(lhs, rhs);
                    }
                }
            }
        }
        for i in 1..=n {
            for j in 1..=n {
                for k in 1..=n {
                    for l in 1..=n {
                        let lhs = gl_n_operator(i, j, m, n).commutator(&gl_n_operator(k, l, m, n));
                        let mut rhs = WeylElement::zero(m, n);
                        if j == k {
                            rhs = rhs.add(&gl_n_operator(i, l, m, n));
                        }
                        if l == i {
                            rhs = rhs.sub(&gl_n_operator(k, j, m, n));
                        }
                        assert_eq!(lhs, rhs);
                    }
                }
            }
        }
    }

    #[test]
    fn row_degree_enumeration() {
        let ms = monomials_with_row_degrees(&[2, 1], 2);
        // 3 monomials of degree 2 in row 1 times 2 of degree 1 in row 2
        assert_eq!(ms.len(), 6);
        assert!(ms.iter().all(|m| m.row_degrees(2) == vec![2, 1]));
        assert_eq!(compositions(2, 3).len(), 6);
    }

    fn arb_elem(m: usize, n: usize) -> impl Strategy<Value = WeylElement> {
        let var = (1..=m, 1..=n).prop_map(|(a, i)| VarIndex::new(a, i));
        let mono =
            (prop::collection::vec((var.clone(), 1..=2u32), 0..=2), prop::collection::vec((var, 1..=2u32), 0..=2))
                .prop_map(|(x, d)| WeylMonomial { x: MultiIndex::from_pairs(&x), d: MultiIndex::from_pairs(&d) });
        prop::collection::vec((mono, -3i64..=3), 1..=3).prop_map(move |ts| {
            let mut e = WeylElement::zero(m, n);
            for (mo, c) in ts {
                e = e.add(&WeylElement::monomial(m, n, mo, Rational::from_int(c)));
            }
            e
        })
    }

    fn arb_poly(m: usize, n: usize) -> impl Strategy<Value = Polynomial> {
        let var = (1..=m, 1..=n).prop_map(|(a, i)| VarIndex::new(a, i));
        prop::collection::vec((prop::collection::vec((var, 1..=3u32), 0..=3), 1i64..=4), 1..=3).prop_map(|ts| {
            let mut p = Polynomial::zero();
            for (mo, c) in ts {
                p = p.add(&Polynomial::monomial(MultiIndex::from_pairs(&mo), Rational::from_int(c)));
            }
            p
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn mul_associative(p in arb_elem(2, 2), q in arb_elem(2, 2), r in arb_elem(2, 2)) {
            prop_assert_eq!(weyl_mul(&weyl_mul(&p, &q), &r), weyl_mul(&p, &weyl_mul(&q, &r)));
        }

        #[test]
        fn apply_is_action(p in arb_elem(2, 2), q in arb_elem(2, 2), f in arb_poly(2, 2)) {
            prop_assert_eq!(weyl_apply(&weyl_mul(&p, &q), &f), weyl_apply(&p, &weyl_apply(&q, &f)));
        }

        #[test]
        fn permute_multiplicative(p in arb_elem(3, 1), q in arb_elem(3, 1), s in 0..6usize) {
            let perms = [[1, 2, 3], [2, 1, 3], [1, 3, 2], [3, 2, 1], [2, 3, 1], [3, 1, 2]];
            let sg = perms[s];
            prop_assert_eq!(sym_permute(&sg, &weyl_mul(&p, &q)), weyl_mul(&sym_permute(&sg, &p), &sym_permute(&sg, &q)));
            let t = [2, 1, 3];
            prop_assert_eq!(sym_permute(&t, &sym_permute(&t, &p)), p);
        }
    }
}
