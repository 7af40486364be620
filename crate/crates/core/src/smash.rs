//! The algebra A ≅ U(gl_m) ⊗ PD(C^m⊗C^n).
//!
//! Elements are stored in the tensor picture, where multiplication is
//! componentwise. The copy of gl_m inside A is `diagonal_embed`, E_ab ↦
//! E_ab⊗1 + 1⊗γ(E_ab); the cross relation [X, Y] = [γ(X), Y] then holds
//! automatically.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Serialize, Serializer};

use crate::envelope::{EnvElement, GlGenerator, PbwMonomial};
use crate::exact::{Coeff, Rational, Scalarish};
use crate::weyl::{gamma, sym_permute, weyl_mul_monomials, MultiIndex, VarIndex, WeylElement, WeylMonomial};

type Key = (PbwMonomial, WeylMonomial);

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SmashElement {
    m: usize,
    n: usize,
    terms: BTreeMap<Key, Rational>,
}

fn add_term(t: &mut BTreeMap<Key, Rational>, k: Key, c: &Rational) {
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

impl SmashElement {
    pub fn zero(m: usize, n: usize) -> Self {
        SmashElement { m, n, terms: BTreeMap::new() }
    }

    pub fn scalar(m: usize, n: usize, c: &Rational) -> Self {
        let mut t = BTreeMap::new();
        add_term(&mut t, (PbwMonomial::one(), WeylMonomial::one()), c);
        SmashElement { m, n, terms: t }
    }

    pub fn one(m: usize, n: usize) -> Self {
        Self::scalar(m, n, &Rational::one())
    }

    /// X ⊗ Y.
    pub fn tensor(x: &EnvElement, y: &WeylElement) -> Self {
        let (m, n) = y.dims();
        assert_eq!(x.rank(), m);
        let mut t = BTreeMap::new();
        for (pm, pc) in x.terms() {
            for (wm, wc) in y.terms() {
                add_term(&mut t, (pm.clone(), wm.clone()), &(pc * wc));
            }
        }
        SmashElement { m, n, terms: t }
    }

    pub fn from_env(x: &EnvElement, n: usize) -> Self {
        Self::tensor(x, &WeylElement::one(x.rank(), n))
    }

    pub fn from_weyl(y: &WeylElement) -> Self {
        let (m, _) = y.dims();
        Self::tensor(&EnvElement::one(m), y)
    }

    /// The pure tensor L ⊗ x^f.
    pub fn basis_lift(m: usize, n: usize, l: &PbwMonomial, f: &MultiIndex) -> Self {
        let mut t = BTreeMap::new();
        t.insert((l.clone(), WeylMonomial { x: f.clone(), d: MultiIndex::one() }), Rational::one());
        SmashElement { m, n, terms: t }
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.m, self.n)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&PbwMonomial, &WeylMonomial, &Rational)> {
        self.terms.iter().map(|((p, w), c)| (p, w, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!(self.dims(), o.dims());
        let mut t = self.terms.clone();
        for (k, c) in &o.terms {
            add_term(&mut t, k.clone(), c);
        }
        SmashElement { m: self.m, n: self.n, terms: t }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.m, self.n);
        }
        SmashElement { m: self.m, n: self.n, terms: self.terms.iter().map(|(k, v)| (k.clone(), v * c)).collect() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&Rational::from_int(-1)))
    }

    pub fn commutator(&self, o: &Self) -> Self {
        smash_mul(self, o).sub(&smash_mul(o, self))
    }

    /// Simultaneous S_m action on gl_m indices and Weyl row indices.
    pub fn permute(&self, sigma: &[usize]) -> Self {
        let mut acc = Self::zero(self.m, self.n);
        for ((p, w), c) in &self.terms {
            let x = EnvElement::from_monomial(self.m, p.clone(), c.clone()).permute(sigma);
            let y = sym_permute(sigma, &WeylElement::monomial(self.m, self.n, w.clone(), Rational::one()));
            acc = acc.add(&Self::tensor(&x, &y));
        }
        acc
    }
}

pub fn smash_mul(p: &SmashElement, q: &SmashElement) -> SmashElement {
    assert_eq!(p.dims(), q.dims());
    let (m, n) = p.dims();
    let mut t = BTreeMap::new();
    let mut env_cache: BTreeMap<(PbwMonomial, PbwMonomial), EnvElement> = BTreeMap::new();
    for ((pp, pw), pc) in &p.terms {
        for ((qp, qw), qc) in &q.terms {
            let env = env_cache
                .entry((pp.clone(), qp.clone()))
                .or_insert_with(|| {
                    EnvElement::from_monomial(m, pp.clone(), Rational::one()).mul(&EnvElement::from_monomial(
                        m,
                        qp.clone(),
                        Rational::one(),
                    ))
                })
                .clone();
            let weyl = weyl_mul_monomials(pw, qw);
            let c0 = pc * qc;
            for (em, ec) in env.terms() {
                for (wm, wc) in &weyl {
                    add_term(&mut t, (em.clone(), wm.clone()), &(&(&c0 * ec) * wc));
                }
            }
        }
    }
    SmashElement { m, n, terms: t }
}

/// E_ab ⊗ 1 + 1 ⊗ γ(E_ab).
pub fn diagonal_embed(g: GlGenerator, m: usize, n: usize) -> SmashElement {
    SmashElement::from_env(&EnvElement::gen(m, g), n).add(&SmashElement::from_weyl(&gamma(g.a, g.b, m, n)))
}

/// Image of an element of U(gl_m) under the diagonal embedding.
pub fn embed_env(x: &EnvElement, n: usize) -> SmashElement {
    let m = x.rank();
    let mut acc = SmashElement::zero(m, n);
    for (mono, c) in x.terms() {
        let mut prod = SmashElement::one(m, n);
        for g in mono.word() {
            prod = smash_mul(&prod, &diagonal_embed(g, m, n));
        }
        acc = acc.add(&prod.scale(c));
    }
    acc
}

/// Σ_{c_0..c_s} ε E_{c1 c0} E_{c2 c1} … E_{cs c_{s-1}} ⊗ x_{c0 i} ∂_{cs j}, where ε = (-1)^s,
/// or (-1)^{s+1} when `flip_sign` is set.
pub fn combact_element(i: usize, j: usize, s: usize, m: usize, n: usize, flip_sign: bool) -> SmashElement {
    let mut acc = SmashElement::zero(m, n);
    let mut chain = vec![1usize; s + 1];
    loop {
        let word: Vec<GlGenerator> = chain.windows(2).map(|w| GlGenerator::new(w[1], w[0])).collect();
        let x = EnvElement::one(m).left_mul_word(&word);
        let y = WeylElement::monomial(
            m,
            n,
            WeylMonomial {
                x: MultiIndex::var(VarIndex::new(chain[0], i)),
                d: MultiIndex::var(VarIndex::new(chain[s], j)),
            },
            Rational::one(),
        );
        acc = acc.add(&SmashElement::tensor(&x, &y));
        let mut p = 0;
        loop {
            if p == chain.len() {
                let odd = (s % 2 == 1) != flip_sign;
                return if odd { acc.scale(&Rational::from_int(-1)) } else { acc };
            }
            chain[p] += 1;
            if chain[p] <= m {
                break;
            }
            chain[p] = 1;
            p += 1;
        }
    }
}

impl fmt::Debug for SmashElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, ((p, w), c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})·{p:?}⊗{w:?}")?;
        }
        Ok(())
    }
}

impl Serialize for SmashElement {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let v: Vec<_> = self
            .terms
            .iter()
            .map(|((p, w), c)| {
                let env = EnvElement::from_monomial(self.m, p.clone(), Rational::one());
                let weyl = WeylElement::monomial(self.m, self.n, w.clone(), Rational::one());
                (serde_json::to_value(&env).unwrap(), serde_json::to_value(&weyl).unwrap(), c.to_string())
            })
            .collect();
        v.serialize(s)
    }
}

impl Coeff for SmashElement {
    fn zero_like(&self) -> Self {
        Self::zero(self.m, self.n)
    }
    fn one_like(&self) -> Self {
        Self::one(self.m, self.n)
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn add(&self, o: &Self) -> Self {
        SmashElement::add(self, o)
    }
    fn mul(&self, o: &Self) -> Self {
        smash_mul(self, o)
    }
    fn scale(&self, r: &Rational) -> Self {
        SmashElement::scale(self, r)
    }
    fn composes_with(&self, o: &Self) -> bool {
        self.dims() == o.dims()
    }
    fn try_inverse(&self) -> Option<Self> {
        let c = self.as_scalar()?.recip()?;
        Some(Self::scalar(self.m, self.n, &c))
    }
}

impl Scalarish for SmashElement {
    fn as_scalar(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&(PbwMonomial::one(), WeylMonomial::one())).cloned(),
            _ => None,
        }
    }
    fn scalar_like(&self, r: &Rational) -> Self {
        Self::scalar(self.m, self.n, r)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::envelope::x_matrix_series;
    use crate::weyl::gl_n_operator;

    fn q(n: i64) -> Rational {
        Rational::from_int(n)
    }

    #[test]
    fn cross_relation() {
        let (m, n) = (2, 1);
        let e12 = diagonal_embed(GlGenerator::new(1, 2), m, n);
        let x11 = SmashElement::from_weyl(&WeylElement::x(m, n, 1, 1));
        assert!(e12.commutator(&x11).is_zero());
        let x21 = SmashElement::from_weyl(&WeylElement::x(m, n, 2, 1));
        assert_eq!(e12.commutator(&x21), x11);
        // a pure enveloping factor commutes with the Weyl part
        let pure = SmashElement::from_env(&EnvElement::e(m, 1, 2), n);
        assert!(pure.commutator(&x21).is_zero());
    }

    #[test]
    fn units_and_subalgebras() {
        let (m, n) = (2, 2);
        let p = combact_element(1, 2, 2, m, n, false);
        assert_eq!(smash_mul(&SmashElement::one(m, n), &p), p);
        let a = WeylElement::d(m, n, 1, 1);
        let b = WeylElement::x(m, n, 1, 1);
        let ab = smash_mul(&SmashElement::from_weyl(&a), &SmashElement::from_weyl(&b));
        assert_eq!(ab, SmashElement::from_weyl(&crate::weyl::weyl_mul(&a, &b)));
    }

    #[test]
    fn diagonal_embedding_is_homomorphism() {
        let (m, n) = (2, 2);
        for a in 1..=m {
            for b in 1..=m {
                for c in 1..=m {
                    for d in 1..=m {
                        let g = GlGenerator::new(a, b);
                        let h = GlGenerator::new(c, d);
                        let lhs = diagonal_embed(g, m, n).commutator(&diagonal_embed(h, m, n));
                        let mut rhs = SmashElement::zero(m, n);
                        for (k, s) in g.bracket(&h) {
                            rhs = rhs.add(&diagonal_embed(k, m, n).scale(&q(s)));
                        }
                        assert_eq!(lhs, rhs);
                    }
                }
            }
        }
    }

    #[test]
    fn combact_low_orders() {
        let (m, n) = (2, 2);
        assert_eq!(combact_element(1, 2, 0, m, n, false), SmashElement::from_weyl(&gl_n_operator(1, 2, m, n)));
        let s1 = combact_element(1, 2, 1, 1, n, false);
        let expect = SmashElement::tensor(&EnvElement::e(1, 1, 1), &WeylElement::xd(1, n, 1, 1, 1, 2)).scale(&q(-1));
        assert_eq!(s1, expect);
    }

    #[test]
    fn combact_matches_x_series() {
        let (m, n, order) = (2, 2, 4);
        let x = x_matrix_series(m, order);
        for i in 1..=n {
            for j in 1..=n {
                for s in 0..order {
                    let mut acc = SmashElement::zero(m, n);
                    for a in 1..=m {
                        for b in 1..=m {
                            let y = WeylElement::xd(m, n, a, i, b, j);
                            acc = acc.add(&SmashElement::tensor(x.coeff(s + 1).get(a - 1, b - 1), &y));
                        }
                    }
                    assert_eq!(acc, combact_element(i, j, s, m, n, false));
                }
            }
        }
    }

    #[test]
    fn embeds_commute_with_combact() {
        for (m, n) in [(1, 1), (1, 2), (2, 1), (2, 2)] {
            for s in 0..=3 {
                for i in 1..=n {
                    for j in 1..=n {
                        let t = combact_element(i, j, s, m, n, false);
                        for a in 1..=m {
                            for b in 1..=m {
                                let e = diagonal_embed(GlGenerator::new(a, b), m, n);
                                assert!(e.commutator(&t).is_zero(), "m={m} n={n} s={s}");
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn combact_is_symmetric() {
        let (m, n) = (3, 1);
        for s in 0..=3 {
            let t = combact_element(1, 1, s, m, n, false);
            for sigma in [[2, 1, 3], [1, 3, 2], [3, 1, 2]] {
                assert_eq!(t.permute(&sigma), t);
            }
        }
    }

    #[test]
    fn gamma_equivariant() {
        let (m, n) = (3, 2);
        let sigma = [2, 3, 1];
        for a in 1..=m {
            for b in 1..=m {
                assert_eq!(sym_permute(&sigma, &gamma(a, b, m, n)), gamma(sigma[a - 1], sigma[b - 1], m, n));
            }
        }
    }
}
