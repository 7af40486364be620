//! The universal enveloping algebra U(gl_k) in PBW normal form.

use std::cell::RefCell;
use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::rc::Rc;

use serde::{Serialize, Serializer};
use serde_json::json;

use crate::exact::{series_inverse, series_mul, Coeff, DenseMatrix, ExactError, Rational, Scalarish, TruncatedSeries};
use crate::report::{Mutations, Outcome};

/// Matrix unit E_ab of gl_k, 1-based.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct GlGenerator {
    pub a: usize,
    pub b: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum GenKind {
    Lowering,
    Cartan,
    Raising,
}

impl GlGenerator {
    pub fn new(a: usize, b: usize) -> Self {
        assert!(a >= 1 && b >= 1, "generator indices are 1-based");
        GlGenerator { a, b }
    }

    pub fn kind(&self) -> GenKind {
        match self.a.cmp(&self.b) {
            Ordering::Greater => GenKind::Lowering,
            Ordering::Equal => GenKind::Cartan,
            Ordering::Less => GenKind::Raising,
        }
    }

    /// E_c = E_{c,c+1}.
    pub fn e(c: usize) -> Self {
        Self::new(c, c + 1)
    }

    /// F_c = E_{c+1,c}.
    pub fn f(c: usize) -> Self {
        Self::new(c + 1, c)
    }

    /// Weight as a vector of length k: ε_a - ε_b.
    pub fn weight(&self, k: usize) -> Vec<i64> {
        let mut w = vec![0; k];
        w[self.a - 1] += 1;
        w[self.b - 1] -= 1;
        w
    }

    /// [E_ab, E_cd] = δ_bc E_ad - δ_da E_cb.
    pub fn bracket(&self, o: &GlGenerator) -> Vec<(GlGenerator, i64)> {
        let mut out = Vec::new();
        if self.b == o.a {
            out.push((GlGenerator::new(self.a, o.b), 1));
        }
        if o.b == self.a {
            out.push((GlGenerator::new(o.a, self.b), -1));
        }
        if out.len() == 2 && out[0].0 == out[1].0 {
            out.clear();
        }
        out
    }

    fn key(&self) -> (GenKind, usize, usize) {
        (self.kind(), self.a, self.b)
    }
}

impl PartialOrd for GlGenerator {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl Ord for GlGenerator {
    fn cmp(&self, o: &Self) -> Ordering {
        self.key().cmp(&o.key())
    }
}

impl fmt::Debug for GlGenerator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "E{}{}", self.a, self.b)
    }
}

/// Ordered product of generator powers, strictly increasing in the PBW order.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct PbwMonomial(Vec<(GlGenerator, u32)>);

impl PbwMonomial {
    pub fn one() -> Self {
        PbwMonomial(Vec::new())
    }

    /// Builds a monomial from factors already in PBW order.
    pub fn from_sorted(factors: Vec<(GlGenerator, u32)>) -> Self {
        assert!(factors.windows(2).all(|w| w[0].0 < w[1].0), "factors out of PBW order");
        assert!(factors.iter().all(|f| f.1 > 0));
        PbwMonomial(factors)
    }

    pub fn factors(&self) -> &[(GlGenerator, u32)] {
        &self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|f| f.1).sum()
    }

    /// The generators with multiplicity, left to right.
    pub fn word(&self) -> Vec<GlGenerator> {
        self.0.iter().flat_map(|&(g, p)| std::iter::repeat_n(g, p as usize)).collect()
    }

    pub fn power_of(&self, g: GlGenerator) -> u32 {
        self.0.iter().find(|f| f.0 == g).map_or(0, |f| f.1)
    }

    pub fn max_index(&self) -> usize {
        self.0.iter().map(|f| f.0.a.max(f.0.b)).max().unwrap_or(0)
    }
}

impl fmt::Debug for PbwMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (i, (g, p)) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, "·")?;
            }
            if *p == 1 {
                write!(f, "{g:?}")?;
            } else {
                write!(f, "{g:?}^{p}")?;
            }
        }
        Ok(())
    }
}

type Terms = BTreeMap<PbwMonomial, Rational>;

fn add_term(t: &mut Terms, m: PbwMonomial, c: &Rational) {
    if c.is_zero() {
        return;
    }
    match t.get_mut(&m) {
        Some(v) => {
            *v += c;
            if v.is_zero() {
                t.remove(&m);
            }
        }
        None => {
            t.insert(m, c.clone());
        }
    }
}

const MEMO_LIMIT: usize = 400_000;

thread_local! {
    static MEMO: RefCell<HashMap<(GlGenerator, PbwMonomial), Rc<Terms>>> = RefCell::new(HashMap::new());
}

/// g · m rewritten into normal form.
fn left_mul_gen(g: GlGenerator, m: &PbwMonomial) -> Rc<Terms> {
    let key = (g, m.clone());
    if let Some(hit) = MEMO.with(|c| c.borrow().get(&key).cloned()) {
        return hit;
    }
    let res = Rc::new(left_mul_gen_raw(g, m));
    MEMO.with(|c| {
        let mut c = c.borrow_mut();
        if c.len() > MEMO_LIMIT {
            c.clear();
        }
        c.insert(key, res.clone());
    });
    res
}

fn left_mul_gen_raw(g: GlGenerator, m: &PbwMonomial) -> Terms {
    let mut out = Terms::new();
    let Some(&(h, p)) = m.0.first() else {
        out.insert(PbwMonomial(vec![(g, 1)]), Rational::one());
        return out;
    };
    match g.cmp(&h) {
        Ordering::Less => {
            let mut f = vec![(g, 1)];
            f.extend_from_slice(&m.0);
            out.insert(PbwMonomial(f), Rational::one());
        }
        Ordering::Equal => {
            let mut f = m.0.clone();
            f[0].1 += 1;
            out.insert(PbwMonomial(f), Rational::one());
        }
        Ordering::Greater => {
            // g h^p R = h (g h^{p-1} R) + [g,h] h^{p-1} R
            let mut rest = m.0.clone();
            if p == 1 {
                rest.remove(0);
            } else {
                rest[0].1 -= 1;
            }
            let rest = PbwMonomial(rest);
            for (mm, c) in left_mul_gen(g, &rest).iter() {
                for (m2, c2) in left_mul_gen(h, mm).iter() {
                    add_term(&mut out, m2.clone(), &(c * c2));
                }
            }
            for (gg, s) in g.bracket(&h) {
                let s = Rational::from_int(s);
                for (m2, c2) in left_mul_gen(gg, &rest).iter() {
                    add_term(&mut out, m2.clone(), &(&s * c2));
                }
            }
        }
    }
    out
}

/// Element of U(gl_k): rational combination of PBW monomials.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct EnvElement {
    k: usize,
    terms: Terms,
}

impl EnvElement {
    pub fn zero(k: usize) -> Self {
        EnvElement { k, terms: Terms::new() }
    }

    pub fn scalar(k: usize, c: &Rational) -> Self {
        let mut t = Terms::new();
        add_term(&mut t, PbwMonomial::one(), c);
        EnvElement { k, terms: t }
    }

    pub fn one(k: usize) -> Self {
        Self::scalar(k, &Rational::one())
    }

    pub fn gen(k: usize, g: GlGenerator) -> Self {
        assert!(g.a <= k && g.b <= k, "generator {g:?} outside gl_{k}");
        let mut t = Terms::new();
        t.insert(PbwMonomial(vec![(g, 1)]), Rational::one());
        EnvElement { k, terms: t }
    }

    pub fn e(k: usize, a: usize, b: usize) -> Self {
        Self::gen(k, GlGenerator::new(a, b))
    }

    /// H_c = E_cc - E_{c+1,c+1}.
    pub fn h(k: usize, c: usize) -> Self {
        Self::e(k, c, c).sub(&Self::e(k, c + 1, c + 1))
    }

    pub fn from_monomial(k: usize, m: PbwMonomial, c: Rational) -> Self {
        let mut t = Terms::new();
        add_term(&mut t, m, &c);
        EnvElement { k, terms: t }
    }

    pub fn rank(&self) -> usize {
        self.k
    }

    pub fn terms(&self) -> impl Iterator<Item = (&PbwMonomial, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, m: &PbwMonomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn as_scalar(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&PbwMonomial::one()).cloned(),
            _ => None,
        }
    }

    fn same_k(&self, o: &Self) {
        assert_eq!(self.k, o.k, "elements of different gl_k");
    }

    pub fn add(&self, o: &Self) -> Self {
        self.same_k(o);
        let mut t = self.terms.clone();
        for (m, c) in &o.terms {
            add_term(&mut t, m.clone(), c);
        }
        EnvElement { k: self.k, terms: t }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&Rational::from_int(-1)))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.k);
        }
        EnvElement { k: self.k, terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect() }
    }

    /// g · self.
    pub fn left_mul_gen(&self, g: GlGenerator) -> Self {
        let mut t = Terms::new();
        for (m, c) in &self.terms {
            for (m2, c2) in left_mul_gen(g, m).iter() {
                add_term(&mut t, m2.clone(), &(c * c2));
            }
        }
        EnvElement { k: self.k, terms: t }
    }

    /// Product of a word (left to right) times `self`.
    pub fn left_mul_word(&self, word: &[GlGenerator]) -> Self {
        let mut acc = self.clone();
        for &g in word.iter().rev() {
            acc = acc.left_mul_gen(g);
        }
        acc
    }

    pub fn mul(&self, o: &Self) -> Self {
        self.same_k(o);
        let mut t = Terms::new();
        for (m1, c1) in &self.terms {
            let prod = o.left_mul_word(&m1.word());
            for (m, c) in prod.terms {
                add_term(&mut t, m, &(c1 * &c));
            }
        }
        EnvElement { k: self.k, terms: t }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.k);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn commutator(&self, o: &Self) -> Self {
        self.mul(o).sub(&o.mul(self))
    }

    /// Relabels E_ab ↦ E_{a+offset, b+offset} inside gl_{new_k}. The PBW order
    /// is invariant under a uniform shift, so no rewriting is needed.
    pub fn relabel(&self, offset: usize, new_k: usize) -> Self {
        assert!(self.k + offset <= new_k);
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let f = m.0.iter().map(|&(g, p)| (GlGenerator::new(g.a + offset, g.b + offset), p)).collect();
                (PbwMonomial(f), c.clone())
            })
            .collect();
        EnvElement { k: new_k, terms }
    }

    /// E_ab ↦ E_{σ(a)σ(b)}; σ is given in one-line notation, 1-based.
    pub fn permute(&self, sigma: &[usize]) -> Self {
        assert_eq!(sigma.len(), self.k);
        let mut acc = Self::zero(self.k);
        for (m, c) in &self.terms {
            let word: Vec<GlGenerator> =
                m.word().iter().map(|g| GlGenerator::new(sigma[g.a - 1], sigma[g.b - 1])).collect();
            acc = acc.add(&pbw_normal_form(self.k, &word).scale(c));
        }
        acc
    }

    /// Largest total degree among the terms.
    pub fn degree(&self) -> u32 {
        self.terms.keys().map(|m| m.degree()).max().unwrap_or(0)
    }
}

/// The product of a word of generators, in PBW normal form.
pub fn pbw_normal_form(k: usize, word: &[GlGenerator]) -> EnvElement {
    for g in word {
        assert!(g.a <= k && g.b <= k, "generator {g:?} outside gl_{k}");
    }
    EnvElement::one(k).left_mul_word(word)
}

/// g·Y − Y·g.
pub fn adjoint(g: GlGenerator, y: &EnvElement) -> EnvElement {
    let ge = EnvElement::gen(y.k, g);
    ge.mul(y).sub(&y.mul(&ge))
}

impl fmt::Debug for EnvElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})·{m:?}")?;
        }
        Ok(())
    }
}

impl Serialize for EnvElement {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let v: Vec<(Vec<[usize; 3]>, String)> = self
            .terms
            .iter()
            .map(|(m, c)| (m.0.iter().map(|&(g, p)| [g.a, g.b, p as usize]).collect(), c.to_string()))
            .collect();
        v.serialize(s)
    }
}

impl Coeff for EnvElement {
    fn zero_like(&self) -> Self {
        Self::zero(self.k)
    }
    fn one_like(&self) -> Self {
        Self::one(self.k)
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn add(&self, o: &Self) -> Self {
        EnvElement::add(self, o)
    }
    fn mul(&self, o: &Self) -> Self {
        EnvElement::mul(self, o)
    }
    fn scale(&self, r: &Rational) -> Self {
        EnvElement::scale(self, r)
    }
    fn composes_with(&self, o: &Self) -> bool {
        self.k == o.k
    }
    fn try_inverse(&self) -> Option<Self> {
        let c = EnvElement::as_scalar(self)?.recip()?;
        Some(Self::scalar(self.k, &c))
    }
}

impl Scalarish for EnvElement {
    fn as_scalar(&self) -> Option<Rational> {
        EnvElement::as_scalar(self)
    }
    fn scalar_like(&self, r: &Rational) -> Self {
        Self::scalar(self.k, r)
    }
}

pub type EnvMatrix = DenseMatrix<EnvElement>;
pub type EnvSeries = TruncatedSeries<EnvElement>;

/// E′ with entries E′_ab = E_ba, inside gl_k.
pub fn e_prime(m: usize, k: usize) -> EnvMatrix {
    DenseMatrix::from_fn(m, m, |a, b| EnvElement::e(k, b + 1, a + 1))
}

/// The matrix series X(u) = (u + E′)^{-1} of gl_m, to order K.
pub fn x_matrix_series(m: usize, order: usize) -> TruncatedSeries<EnvMatrix> {
    let ep = e_prime(m, m);
    let mut c = vec![ep.zero_like(); order + 1];
    c[0] = ep.one_like();
    if order >= 1 {
        c[1] = ep.clone();
    }
    // (u + E′)^{-1} = u^{-1} (1 + E′u^{-1})^{-1}
    let inv = series_inverse(&TruncatedSeries::new(c), order).expect("unit leading coefficient");
    inv.shift(1)
}

fn entry_series(s: &TruncatedSeries<EnvMatrix>, r: usize, c: usize) -> EnvSeries {
    TruncatedSeries::new(s.coeffs().iter().map(|m| m.get(r, c).clone()).collect())
}

/// X_ab(u), the (a,b) entry of (u + E′)^{-1}.
pub fn x_series(a: usize, b: usize, m: usize, order: usize) -> EnvSeries {
    entry_series(&x_matrix_series(m, order), a - 1, b - 1)
}

/// Z(u) = Σ_c X_cc(u).
pub fn z_series(m: usize, order: usize) -> EnvSeries {
    let x = x_matrix_series(m, order);
    let mut acc = entry_series(&x, 0, 0);
    for c in 1..m {
        acc = acc.add(&entry_series(&x, c, c));
    }
    acc
}

/// Y_ij(u), the (i,j) entry of (1 − E u^{-1})^{-1} in gl_k.
pub fn y_series(i: usize, j: usize, k: usize, order: usize) -> EnvSeries {
    let e = DenseMatrix::from_fn(k, k, |a, b| EnvElement::e(k, a + 1, b + 1));
    let mut c = vec![e.zero_like(); order + 1];
    c[0] = e.one_like();
    if order >= 1 {
        c[1] = e.scale(&Rational::from_int(-1));
    }
    let inv = series_inverse(&TruncatedSeries::new(c), order).expect("unit leading coefficient");
    entry_series(&inv, i - 1, j - 1)
}

/// Blockwise inverse of [[A, B], [C, D]] per the Schur complement formulas:
/// returns ((A−BD⁻¹C)⁻¹, −A⁻¹B(D−CA⁻¹B)⁻¹, −D⁻¹C(A−BD⁻¹C)⁻¹, (D−CA⁻¹B)⁻¹).
#[allow(clippy::type_complexity)]
pub fn block_inverse<T: Coeff>(
    a: &TruncatedSeries<T>,
    b: &TruncatedSeries<T>,
    c: &TruncatedSeries<T>,
    d: &TruncatedSeries<T>,
    order: usize,
) -> Result<(TruncatedSeries<T>, TruncatedSeries<T>, TruncatedSeries<T>, TruncatedSeries<T>), ExactError> {
    let ai = series_inverse(a, order)?;
    let di = series_inverse(d, order)?;
    let sa = a.sub(&series_mul(&series_mul(b, &di, order)?, c, order)?);
    let sd = d.sub(&series_mul(&series_mul(c, &ai, order)?, b, order)?);
    let sai = series_inverse(&sa, order)?;
    let sdi = series_inverse(&sd, order)?;
    let tr = series_mul(&series_mul(&ai, b, order)?, &sdi, order)?.scale(&Rational::from_int(-1));
    let bl = series_mul(&series_mul(&di, c, order)?, &sai, order)?.scale(&Rational::from_int(-1));
    Ok((sai, tr, bl, sdi))
}

/// Checks Σ_b E_{m+d,b} X_ab(u) = Σ_b X_ab(u) E_{m+d,b} (1 − Z(u)) in U(gl_{m+l}).
pub fn check_xe_identity(m: usize, l: usize, order: usize, mutations: Mutations) -> Outcome {
    let k = m + l;
    let mut out = Outcome::new();
    let x = x_matrix_series(m, order);
    let z = z_series(m, order).map(|c| c.relabel(0, k));
    let one_minus_z = if mutations.omit_one_minus_z {
        TruncatedSeries::constant(EnvElement::one(k), order)
    } else {
        TruncatedSeries::constant(EnvElement::one(k), order).sub(&z)
    };
    let mut checked = 0usize;
    for a in 1..=m {
        for d in 1..=l {
            let mut lhs = TruncatedSeries::constant(EnvElement::zero(k), order);
            let mut rhs = lhs.clone();
            for b in 1..=m {
                let xab = entry_series(&x, a - 1, b - 1).map(|c| c.relabel(0, k));
                let e = TruncatedSeries::constant(EnvElement::e(k, m + d, b), order);
                lhs = lhs.add(&series_mul(&e, &xab, order).unwrap());
                let t = series_mul(&xab, &e, order).unwrap();
                rhs = rhs.add(&series_mul(&t, &one_minus_z, order).unwrap());
            }
            for s in 0..=order {
                checked += 1;
                let diff = lhs.coeff(s).sub(rhs.coeff(s));
                out.require(diff.is_zero(), || {
                    json!({"violation": "xe-identity", "a": a, "d": d, "order": s,
                           "lhs_minus_rhs": serde_json::to_value(&diff).unwrap()})
                });
            }
        }
    }
    out.info(json!({"coefficients_checked": checked, "m": m, "l": l, "order": order}));
    out
}
