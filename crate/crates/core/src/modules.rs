//! gl-modules realized through finite weight blocks.
//!
//! Every module hands out complete weight blocks: if a block cannot be built
//! within the configured caps the call fails with `CapExceeded` instead of
//! returning a truncated basis.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use serde_json::{json, Value};

use crate::envelope::{EnvElement, GenKind, GlGenerator, PbwMonomial};
use crate::error::{Error, Result};
use crate::exact::{Rational, SparseMatrix};
use crate::perm::Permutation;
use crate::weyl::{apply_monomial, compositions, monomials_with_row_degrees, MultiIndex, VarIndex, WeylMonomial};

pub type Weight = Vec<Rational>;

/// Basis vector label. Composite modules nest labels with `Pair`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Label {
    Unit,
    Index(usize),
    Pbw(PbwMonomial),
    Mono(MultiIndex),
    Slots(Vec<usize>),
    Pair(Box<Label>, Box<Label>),
}

impl Label {
    pub fn pair(a: Label, b: Label) -> Label {
        Label::Pair(Box::new(a), Box::new(b))
    }

    pub fn split(&self) -> (&Label, &Label) {
        match self {
            Label::Pair(a, b) => (a, b),
            other => panic!("label {other:?} is not a pair"),
        }
    }
}

impl fmt::Debug for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Unit => write!(f, "1"),
            Label::Index(i) => write!(f, "e{i}"),
            Label::Pbw(p) => write!(f, "{p:?}"),
            Label::Mono(m) => write!(f, "{m:?}"),
            Label::Slots(s) => write!(f, "{s:?}"),
            Label::Pair(a, b) => write!(f, "{a:?}⊗{b:?}"),
        }
    }
}

/// Sparse vector over labels.
pub type LVec = BTreeMap<Label, Rational>;

pub fn lvec_add(acc: &mut LVec, l: Label, c: &Rational) {
    if c.is_zero() {
        return;
    }
    match acc.get_mut(&l) {
        Some(v) => {
            *v += c;
            if v.is_zero() {
                acc.remove(&l);
            }
        }
        None => {
            acc.insert(l, c.clone());
        }
    }
}

pub fn lvec_axpy(acc: &mut LVec, c: &Rational, x: &LVec) {
    for (l, v) in x {
        lvec_add(acc, l.clone(), &(c * v));
    }
}

pub fn q(n: i64) -> Rational {
    Rational::from_int(n)
}

pub fn weight_from_ints(v: &[i64]) -> Weight {
    v.iter().map(|&x| q(x)).collect()
}

pub fn weight_add(a: &[Rational], b: &[Rational]) -> Weight {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn weight_sub(a: &[Rational], b: &[Rational]) -> Weight {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn weight_sum(w: &[Rational]) -> Rational {
    w.iter().cloned().sum()
}

/// λ + ε_ab, the weight after applying E_ab.
pub fn shift_by(w: &[Rational], g: GlGenerator) -> Weight {
    let mut r = w.to_vec();
    r[g.a - 1] += &q(1);
    r[g.b - 1] -= &q(1);
    r
}

/// ρ = (0, -1, …, 1-m).
pub fn rho(m: usize) -> Weight {
    (0..m).map(|a| q(-(a as i64))).collect()
}

/// σ(μ)_a = μ_{σ^{-1}(a)}.
pub fn permute_weight(sigma: &Permutation, w: &[Rational]) -> Weight {
    let inv = sigma.inverse();
    (1..=w.len()).map(|a| w[inv.apply(a) - 1].clone()).collect()
}

/// σ∘μ = σ(μ + ρ) − ρ.
pub fn shifted_action(sigma: &Permutation, mu: &[Rational]) -> Weight {
    let r = rho(mu.len());
    weight_sub(&permute_weight(sigma, &weight_add(mu, &r)), &r)
}

/// μ_a = a/(m+1): all differences are non-integral.
pub fn generic_weight(m: usize) -> Weight {
    (1..=m).map(|a| Rational::new(a as i64, m as i64 + 1)).collect()
}

/// μ_a − μ_b ∉ Z for all a ≠ b.
pub fn is_generic(mu: &[Rational]) -> bool {
    (0..mu.len()).all(|a| (a + 1..mu.len()).all(|b| !(&mu[a] - &mu[b]).is_integer()))
}

/// Weights top − Σ simple roots using at most `depth` simple roots.
pub fn lowered_weights(top: &[Rational], depth: usize) -> Vec<Weight> {
    let mut layer: std::collections::BTreeSet<Weight> = std::collections::BTreeSet::from([top.to_vec()]);
    let mut all = layer.clone();
    for _ in 0..depth {
        let mut next = std::collections::BTreeSet::new();
        for w in &layer {
            for c in 1..w.len() {
                let mut u = w.clone();
                u[c - 1] -= &q(1);
                u[c] += &q(1);
                next.insert(u);
            }
        }
        all.extend(next.iter().cloned());
        layer = next;
    }
    all.into_iter().collect()
}

fn int_vec(w: &[Rational]) -> Option<Vec<i64>> {
    w.iter().map(|x| x.to_i64()).collect()
}

/// A gl_k-module presented by its weight blocks and generator actions.
pub trait GlModule: Send + Sync {
    fn rank(&self) -> usize;
    /// Complete basis of the weight-`w` block (possibly empty).
    fn block(&self, w: &[Rational]) -> Result<Vec<Label>>;
    fn weight_of(&self, v: &Label) -> Weight;
    fn act(&self, g: GlGenerator, v: &Label) -> Result<LVec>;
    /// The common label sum of all weights, when there is one.
    fn weight_sum(&self) -> Option<Rational>;
    /// All weights with integral label sum `s`, for modules with finitely many.
    fn weights_with_sum(&self, _s: i64) -> Option<Vec<Weight>> {
        None
    }
    fn descriptor(&self) -> Value;
}

pub type ModuleRef = Arc<dyn GlModule>;

pub fn act_vec(m: &dyn GlModule, g: GlGenerator, v: &LVec) -> Result<LVec> {
    let mut acc = LVec::new();
    for (l, c) in v {
        lvec_axpy(&mut acc, c, &m.act(g, l)?);
    }
    Ok(acc)
}

/// Applies a word of generators (left to right as written) to `v`.
pub fn act_word(m: &dyn GlModule, word: &[GlGenerator], v: &LVec) -> Result<LVec> {
    let mut cur = v.clone();
    for &g in word.iter().rev() {
        cur = act_vec(m, g, &cur)?;
        if cur.is_empty() {
            break;
        }
    }
    Ok(cur)
}

pub fn act_env(m: &dyn GlModule, x: &EnvElement, v: &LVec) -> Result<LVec> {
    let mut acc = LVec::new();
    for (mono, c) in x.terms() {
        lvec_axpy(&mut acc, c, &act_word(m, &mono.word(), v)?);
    }
    Ok(acc)
}

/// A weight block with its basis order fixed.
#[derive(Clone, Debug)]
pub struct Block {
    pub weight: Weight,
    pub basis: Vec<Label>,
    index: HashMap<Label, usize>,
}

impl Block {
    pub fn new(weight: Weight, basis: Vec<Label>) -> Self {
        let index = basis.iter().enumerate().map(|(i, l)| (l.clone(), i)).collect();
        Block { weight, basis, index }
    }

    pub fn of(m: &dyn GlModule, w: &[Rational]) -> Result<Self> {
        Ok(Self::new(w.to_vec(), m.block(w)?))
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn position(&self, l: &Label) -> Option<usize> {
        self.index.get(l).copied()
    }

    pub fn to_dense(&self, v: &LVec) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.dim()];
        for (l, c) in v {
            let i = self.position(l).unwrap_or_else(|| panic!("{l:?} outside block {:?}", self.weight));
            out[i] = c.clone();
        }
        out
    }

    pub fn to_lvec(&self, v: &[Rational]) -> LVec {
        let mut out = LVec::new();
        for (i, c) in v.iter().enumerate() {
            lvec_add(&mut out, self.basis[i].clone(), c);
        }
        out
    }

    pub fn unit(&self, i: usize) -> LVec {
        let mut v = LVec::new();
        v.insert(self.basis[i].clone(), Rational::one());
        v
    }
}

/// Matrix of a linear map given on basis vectors, from `src` to `dst`.
pub fn matrix_of(src: &Block, dst: &Block, mut f: impl FnMut(&Label) -> Result<LVec>) -> Result<SparseMatrix> {
    let mut m = SparseMatrix::zeros(dst.dim(), src.dim());
    for (j, l) in src.basis.iter().enumerate() {
        for (t, c) in f(l)? {
            let i = dst.position(&t).unwrap_or_else(|| panic!("{t:?} outside block {:?}", dst.weight));
            m.set(i, j, c);
        }
    }
    Ok(m)
}

/// Matrix of E_g from the block `src` to the block of weight src + ε_g.
pub fn generator_matrix(m: &dyn GlModule, g: GlGenerator, src: &Block) -> Result<(Block, SparseMatrix)> {
    let dst = Block::of(m, &shift_by(&src.weight, g))?;
    let mat = matrix_of(src, &dst, |l| m.act(g, l))?;
    Ok((dst, mat))
}

/// C^k with E_ab e_c = δ_bc e_a.
pub struct Natural {
    pub k: usize,
}

impl GlModule for Natural {
    fn rank(&self) -> usize {
        self.k
    }
    fn block(&self, w: &[Rational]) -> Result<Vec<Label>> {
        let Some(iw) = int_vec(w) else { return Ok(vec![]) };
        let ones: Vec<usize> = (0..self.k).filter(|&i| iw[i] == 1).collect();
        if ones.len() == 1 && iw.iter().filter(|&&x| x != 0).count() == 1 {
            Ok(vec![Label::Index(ones[0] + 1)])
        } else {
            Ok(vec![])
        }
    }
    fn weight_of(&self, v: &Label) -> Weight {
        let Label::Index(c) = v else { panic!("bad label {v:?}") };
        (1..=self.k).map(|a| q((a == *c) as i64)).collect()
    }
    fn act(&self, g: GlGenerator, v: &Label) -> Result<LVec> {
        let Label::Index(c) = v else { panic!("bad label {v:?}") };
        let mut out = LVec::new();
        if g.b == *c {
            out.insert(Label::Index(g.a), q(1));
        }
        Ok(out)
    }
    fn weight_sum(&self) -> Option<Rational> {
        Some(q(1))
    }
    fn weights_with_sum(&self, s: i64) -> Option<Vec<Weight>> {
        if s != 1 {
            return Some(vec![]);
        }
        Some((1..=self.k).map(|c| self.weight_of(&Label::Index(c))).collect())
    }
    fn descriptor(&self) -> Value {
        json!({"type": "natural", "k": self.k})
    }
}

/// One-dimensional module of weight 0 on which gl_k acts by zero.
pub struct Trivial {
    pub k: usize,
}

impl GlModule for Trivial {
    fn rank(&self) -> usize {
        self.k
    }
    fn block(&self, w: &[Rational]) -> Result<Vec<Label>> {
        Ok(if w.iter().all(|x| x.is_zero()) { vec![Label::Unit] } else { vec![] })
    }
    fn weight_of(&self, _v: &Label) -> Weight {
        vec![q(0); self.k]
    }
    fn act(&self, _g: GlGenerator, _v: &Label) -> Result<LVec> {
        Ok(LVec::new())
    }
    fn weight_sum(&self) -> Option<Rational> {
        Some(q(0))
    }
    fn weights_with_sum(&self, s: i64) -> Option<Vec<Weight>> {
        Some(if s == 0 { vec![vec![q(0); self.k]] } else { vec![] })
    }
    fn descriptor(&self) -> Value {
        json!({"type": "trivial", "k": self.k})
    }
}

/// Verma module M_μ with lowering-degree cap D.
pub struct Verma {
    mu: Weight,
    cap: u32,
}

impl Verma {
    pub fn new(mu: Weight, cap: u32) -> Self {
        Verma { mu, cap }
    }

    pub fn mu(&self) -> &Weight {
        &self.mu
    }

    /// Value of a PBW monomial on 1_μ: `None` when a raising factor kills it.
    pub fn eval_on_highest(&self, mono: &PbwMonomial) -> Result<Option<(Label, Rational)>> {
        let mut low = Vec::new();
        let mut c = q(1);
        for &(g, p) in mono.factors() {
            match g.kind() {
                GenKind::Lowering => low.push((g, p)),
                GenKind::Cartan => c *= &self.mu[g.a - 1].pow(p),
                GenKind::Raising => return Ok(None),
            }
        }
        let l = PbwMonomial::from_sorted(low);
        if l.degree() > self.cap {
            return Err(Error::CapExceeded(format!("Verma lowering degree {} > {}", l.degree(), self.cap)));
        }
        Ok(Some((Label::Pbw(l), c)))
    }

    /// X · v for v a basis label, by normal ordering X·L and evaluating on 1_μ.
    pub fn act_env_label(&self, x: &EnvElement, v: &Label) -> Result<LVec> {
        let Label::Pbw(l) = v else { panic!("bad Verma label {v:?}") };
        let k = self.mu.len();
        let prod = x.mul(&EnvElement::from_monomial(k, l.clone(), q(1)));
        let mut out = LVec::new();
        for (mono, c) in prod.terms() {
            if let Some((t, f)) = self.eval_on_highest(mono)? {
                lvec_add(&mut out, t, &(c * &f));
            }
        }
        Ok(out)
    }
}

/// Multisets of positive roots ε_ab (a<b) summing to β, as lowering monomials.
pub fn kostant_monomials(beta: &[i64]) -> Vec<PbwMonomial> {
    let m = beta.len();
    let roots: Vec<(usize, usize)> = (1..=m).flat_map(|a| (a + 1..=m).map(move |b| (a, b))).collect();
    let mut out = Vec::new();
    fn rec(i: usize, roots: &[(usize, usize)], rem: &mut Vec<i64>, chosen: &mut Vec<u32>, out: &mut Vec<PbwMonomial>) {
        if i == roots.len() {
            if rem.iter().all(|&x| x == 0) {
                let mut f: Vec<(GlGenerator, u32)> = roots
                    .iter()
                    .zip(chosen.iter())
                    .filter(|(_, &k)| k > 0)
                    .map(|(&(a, b), &k)| (GlGenerator::new(b, a), k))
                    .collect();
                f.sort();
                out.push(PbwMonomial::from_sorted(f));
            }
            return;
        }
        let (a, b) = roots[i];
        let mut k = 0u32;
        loop {
            // partial sums of the remainder must stay nonnegative
            let mut ok = true;
            let mut h = 0;
            for &x in rem.iter().take(rem.len() - 1) {
                h += x;
                if h < 0 {
                    ok = false;
                    break;
                }
            }
            if !ok {
                break;
            }
            chosen.push(k);
            rec(i + 1, roots, rem, chosen, out);
            chosen.pop();
            rem[a - 1] -= 1;
            rem[b - 1] += 1;
            k += 1;
        }
        rem[a - 1] += k as i64;
        rem[b - 1] -= k as i64;
    }
    let mut rem = beta.to_vec();
    if rem.iter().sum::<i64>() != 0 {
        return out;
    }
    rec(0, &roots, &mut rem, &mut Vec::new(), &mut out);
    out.sort();
    out
}

impl GlModule for Verma {
    fn rank(&self) -> usize {
        self.mu.len()
    }
    fn block(&self, w: &[Rational]) -> Result<Vec<Label>> {
        let Some(beta) = int_vec(&weight_sub(&self.mu, w)) else { return Ok(vec![]) };
        let monos = kostant_monomials(&beta);
        if let Some(big) = monos.iter().find(|m| m.degree() > self.cap) {
            return Err(Error::CapExceeded(format!("Verma block needs degree {} > {}", big.degree(), self.cap)));
        }
        Ok(monos.into_iter().map(Label::Pbw).collect())
    }
    fn weight_of(&self, v: &Label) -> Weight {
        let Label::Pbw(l) = v else { panic!("bad Verma label {v:?}") };
        let mut w = self.mu.clone();
        for &(g, p) in l.factors() {
            w[g.a - 1] += &q(p as i64);
            w[g.b - 1] -= &q(p as i64);
        }
        w
    }
    fn act(&self, g: GlGenerator, v: &Label) -> Result<LVec> {
        self.act_env_label(&EnvElement::gen(self.mu.len(), g), v)
    }
    fn weight_sum(&self) -> Option<Rational> {
        Some(weight_sum(&self.mu))
    }
    fn descriptor(&self) -> Value {
        json!({"type": "verma", "mu": self.mu.iter().map(|x| x.to_string()).collect::<Vec<_>>(), "cap": self.cap})
    }
}

/// P(C^k⊗C^n) with gl_k acting by E_ab ↦ Σ_j x_aj ∂_bj, up to degree `cap`.
pub struct Poly {
    pub k: usize,
    pub n: usize,
    pub cap: u32,
}

impl GlModule for Poly {
    fn rank(&self) -> usize {
        self.k
    }
    fn block(&self, w: &[Rational]) -> Result<Vec<Label>> {
        let Some(iw) = int_vec(w) else { return Ok(vec![]) };
        if iw.iter().any(|&x| x < 0) {
            return Ok(vec![]);
        }
        let d: i64 = iw.iter().sum();
        if d > self.cap as i64 {
            return Err(Error::CapExceeded(format!("polynomial degree {d} > {}", self.cap)));
        }
        Ok(monomials_with_row_degrees(&iw, self.n).into_iter().map(Label::Mono).collect())
    }
    fn weight_of(&self, v: &Label) -> Weight {
        let Label::Mono(f) = v else { panic!("bad polynomial label {v:?}") };
        weight_from_ints(&f.row_degrees(self.k))
    }
    fn act(&self, g: GlGenerator, v: &Label) -> Result<LVec> {
        let Label::Mono(f) = v else { panic!("bad polynomial label {v:?}") };
        let mut out = LVec::new();
        for j in 1..=self.n {
            let w =
                WeylMonomial { x: MultiIndex::var(VarIndex::new(g.a, j)), d: MultiIndex::var(VarIndex::new(g.b, j)) };
            if let Some((t, c)) = apply_monomial(&w, f) {
                lvec_add(&mut out, Label::Mono(t), &c);
            }
        }
        Ok(out)
    }
    fn weight_sum(&self) -> Option<Rational> {
        None
    }
    fn weights_with_sum(&self, s: i64) -> Option<Vec<Weight>> {
        if s < 0 {
            return Some(vec![]);
        }
        Some(compositions(s as u32, self.k).into_iter().map(|c| c.iter().map(|&x| q(x as i64)).collect()).collect())
    }
    fn descriptor(&self) -> Value {
        json!({"type": "polynomial", "k": self.k, "n": self.n, "cap": self.cap})
    }
}

/// (C^k)^{⊗N} with the diagonal action; tensor slots are 1..N.
pub struct Slots {
    pub k: usize,
    pub count: usize,
}

impl GlModule for Slots {
    fn rank(&self) -> usize {
        self.k
    }
    fn block(&self, w: &[Rational]) -> Result<Vec<Label>> {
        let Some(iw) = int_vec(w) else { return Ok(vec![]) };
        if iw.iter().any(|&x| x < 0) || iw.iter().sum::<i64>() != self.count as i64 {
            return Ok(vec![]);
        }
        let mut out = Vec::new();
        let mut t = vec![1usize; self.count];
        loop {
            let mut content = vec![0i64; self.k];
            for &c in &t {
                content[c - 1] += 1;
            }
            if content == iw {
                out.push(Label::Slots(t.clone()));
            }
            let mut p = self.count;
            loop {
                if p == 0 {
                    return Ok(out);
                }
                p -= 1;
                t[p] += 1;
                if t[p] <= self.k {
                    break;
                }
                t[p] = 1;
            }
        }
    }
    fn weight_of(&self, v: &Label) -> Weight {
        let Label::Slots(t) = v else { panic!("bad slot label {v:?}") };
        let mut w = vec![0i64; self.k];
        for &c in t {
            w[c - 1] += 1;
        }
        weight_from_ints(&w)
    }
    fn act(&self, g: GlGenerator, v: &Label) -> Result<LVec> {
        let Label::Slots(t) = v else { panic!("bad slot label {v:?}") };
        let mut out = LVec::new();
        for p in 0..t.len() {
            if t[p] == g.b {
                let mut u = t.clone();
                u[p] = g.a;
                lvec_add(&mut out, Label::Slots(u), &q(1));
            }
        }
        Ok(out)
    }
    fn weight_sum(&self) -> Option<Rational> {
        Some(q(self.count as i64))
    }
    fn weights_with_sum(&self, s: i64) -> Option<Vec<Weight>> {
        if s != self.count as i64 {
            return Some(vec![]);
        }
        Some(compositions(s as u32, self.k).into_iter().map(|c| c.iter().map(|&x| q(x as i64)).collect()).collect())
    }
    fn descriptor(&self) -> Value {
        json!({"type": "slots", "k": self.k, "N": self.count})
    }
}

/// V ⊗ U with the Leibniz action. Blocks are assembled by running over the
/// finitely many weights of the right factor.
pub struct Tensor {
    pub left: ModuleRef,
    pub right: ModuleRef,
}

impl Tensor {
    pub fn new(left: ModuleRef, right: ModuleRef) -> Self {
        assert_eq!(left.rank(), right.rank(), "tensor factors of different rank");
        Tensor { left, right }
    }

    fn right_weights(&self, total: &Rational) -> Result<Vec<Weight>> {
        let none = || Error::Config("tensor block needs a right factor with finitely many weights".into());
        match self.left.weight_sum() {
            Some(c) => {
                let s = total - &c;
                match s.to_i64() {
                    Some(s) => self.right.weights_with_sum(s).ok_or_else(none),
                    None => Ok(vec![]),
                }
            }
            None => {
                let Some(t) = total.to_i64() else { return Ok(vec![]) };
                let mut out = Vec::new();
                for s in 0..=t.max(0) {
                    out.extend(self.right.weights_with_sum(s).ok_or_else(none)?);
                }
                Ok(out)
            }
        }
    }
}

impl GlModule for Tensor {
    fn rank(&self) -> usize {
        self.left.rank()
    }
    fn block(&self, w: &[Rational]) -> Result<Vec<Label>> {
        let mut out = Vec::new();
        for wr in self.right_weights(&weight_sum(w))? {
            let rb = self.right.block(&wr)?;
            if rb.is_empty() {
                continue;
            }
            let lb = self.left.block(&weight_sub(w, &wr))?;
            for a in &lb {
                for b in &rb {
                    out.push(Label::pair(a.clone(), b.clone()));
                }
            }
        }
        out.sort();
        Ok(out)
    }
    fn weight_of(&self, v: &Label) -> Weight {
        let (a, b) = v.split();
        weight_add(&self.left.weight_of(a), &self.right.weight_of(b))
    }
    fn act(&self, g: GlGenerator, v: &Label) -> Result<LVec> {
        let (a, b) = v.split();
        let mut out = LVec::new();
        for (t, c) in self.left.act(g, a)? {
            lvec_add(&mut out, Label::pair(t, b.clone()), &c);
        }
        for (t, c) in self.right.act(g, b)? {
            lvec_add(&mut out, Label::pair(a.clone(), t), &c);
        }
        Ok(out)
    }
    fn weight_sum(&self) -> Option<Rational> {
        Some(self.left.weight_sum()? + self.right.weight_sum()?)
    }
    fn descriptor(&self) -> Value {
        json!({"type": "tensor", "left": self.left.descriptor(), "right": self.right.descriptor()})
    }
}

/// Parabolic induction V ⊠ U = U(gl_{m+l}) ⊗_{U(p)} (V ⊗ U), realized as
/// U(q) ⊗ V ⊗ U with q = span{E_ba : a ≤ m < b}.
pub struct Induced {
    pub m: usize,
    pub l: usize,
    pub v: ModuleRef,
    pub u: ModuleRef,
    pub qcap: u32,
}

enum Part {
    Q,
    QPrime,
    Left,
    Right,
}

impl Induced {
    pub fn new(v: ModuleRef, u: ModuleRef, qcap: u32) -> Self {
        Induced { m: v.rank(), l: u.rank(), v, u, qcap }
    }

    fn part(&self, g: GlGenerator) -> Part {
        let m = self.m;
        match (g.a <= m, g.b <= m) {
            (false, true) => Part::Q,
            (true, false) => Part::QPrime,
            (true, true) => Part::Left,
            (false, false) => Part::Right,
        }
    }

    fn q_label(word: &[GlGenerator]) -> Label {
        let mut w = word.to_vec();
        w.sort();
        let mut f: Vec<(GlGenerator, u32)> = Vec::new();
        for g in w {
            match f.last_mut() {
                Some((h, p)) if *h == g => *p += 1,
                _ => f.push((g, 1)),
            }
        }
        Label::Pbw(PbwMonomial::from_sorted(f))
    }

    /// g · (q_1 ⋯ q_r ⊗ v ⊗ u) via g q_1 = q_1 g + [g, q_1].
    fn act_rec(
        &self,
        g: GlGenerator,
        qw: &[GlGenerator],
        v: &Label,
        u: &Label,
    ) -> Result<Vec<(Vec<GlGenerator>, Label, Label, Rational)>> {
        let Some((&q1, rest)) = qw.split_first() else {
            return Ok(match self.part(g) {
                Part::Q => vec![(vec![g], v.clone(), u.clone(), q(1))],
                Part::QPrime => vec![],
                Part::Left => self.v.act(g, v)?.into_iter().map(|(t, c)| (vec![], t, u.clone(), c)).collect(),
                Part::Right => {
                    let gs = GlGenerator::new(g.a - self.m, g.b - self.m);
                    self.u.act(gs, u)?.into_iter().map(|(t, c)| (vec![], v.clone(), t, c)).collect()
                }
            });
        };
        let mut out = Vec::new();
        for (mut w, a, b, c) in self.act_rec(g, rest, v, u)? {
            w.push(q1);
            out.push((w, a, b, c));
        }
        for (h, s) in g.bracket(&q1) {
            for (w, a, b, c) in self.act_rec(h, rest, v, u)? {
                out.push((w, a, b, &c * &q(s)));
            }
        }
        Ok(out)
    }
}

impl GlModule for Induced {
    fn rank(&self) -> usize {
        self.m + self.l
    }
    fn block(&self, w: &[Rational]) -> Result<Vec<Label>> {
        let (m, l) = (self.m, self.l);
        let sv = self.v.weight_sum().ok_or_else(|| Error::Config("induction needs constant weight sums".into()))?;
        let deg = &sv - &weight_sum(&w[..m]);
        let Some(deg) = deg.to_i64() else { return Ok(vec![]) };
        if deg < 0 {
            return Ok(vec![]);
        }
        if deg > self.qcap as i64 {
            return Err(Error::CapExceeded(format!("U(q) degree {deg} > {}", self.qcap)));
        }
        let qgens: Vec<GlGenerator> =
            (m + 1..=m + l).flat_map(|b| (1..=m).map(move |a| GlGenerator::new(b, a))).collect();
        let mut out = Vec::new();
        for counts in compositions(deg as u32, qgens.len()) {
            let mut wq = vec![q(0); m + l];
            let mut word = Vec::new();
            for (g, &c) in qgens.iter().zip(&counts) {
                wq[g.a - 1] += &q(c as i64);
                wq[g.b - 1] -= &q(c as i64);
                word.extend(std::iter::repeat_n(*g, c as usize));
            }
            let rest = weight_sub(w, &wq);
            let vb = self.v.block(&rest[..m])?;
            if vb.is_empty() {
                continue;
            }
            let ub = self.u.block(&rest[m..])?;
            let ql = Self::q_label(&word);
            for a in &vb {
                for b in &ub {
                    out.push(Label::pair(ql.clone(), Label::pair(a.clone(), b.clone())));
                }
            }
        }
        out.sort();
        Ok(out)
    }
    fn weight_of(&self, x: &Label) -> Weight {
        let (ql, vu) = x.split();
        let (v, u) = vu.split();
        let mut w = self.v.weight_of(v);
        w.extend(self.u.weight_of(u));
        if let Label::Pbw(p) = ql {
            for &(g, e) in p.factors() {
                w[g.a - 1] += &q(e as i64);
                w[g.b - 1] -= &q(e as i64);
            }
        }
        w
    }
    fn act(&self, g: GlGenerator, x: &Label) -> Result<LVec> {
        let (ql, vu) = x.split();
        let (v, u) = vu.split();
        let Label::Pbw(p) = ql else { panic!("bad induced label {x:?}") };
        let mut out = LVec::new();
        for (w, a, b, c) in self.act_rec(g, &p.word(), v, u)? {
            if w.len() as u32 > self.qcap {
                return Err(Error::CapExceeded(format!("U(q) degree {} > {}", w.len(), self.qcap)));
            }
            lvec_add(&mut out, Label::pair(Self::q_label(&w), Label::pair(a, b)), &c);
        }
        Ok(out)
    }
    fn weight_sum(&self) -> Option<Rational> {
        Some(self.v.weight_sum()? + self.u.weight_sum()?)
    }
    fn descriptor(&self) -> Value {
        json!({"type": "induced", "m": self.m, "l": self.l, "V": self.v.descriptor(),
               "U": self.u.descriptor(), "qcap": self.qcap})
    }
}

/// Named subalgebras of gl_k spanned by matrix units.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LieBasisSelector {
    /// Lowering E_ba, a < b.
    N {
        k: usize,
    },
    /// Raising E_ab, a < b.
    NPrime {
        k: usize,
    },
    H {
        k: usize,
    },
    /// E_ba with a ≤ m < b.
    Q {
        m: usize,
        l: usize,
    },
    /// E_ab with a ≤ m < b.
    QPrime {
        m: usize,
        l: usize,
    },
    /// gl_m ⊕ gl_l ⊕ q′.
    P {
        m: usize,
        l: usize,
    },
}

impl LieBasisSelector {
    pub fn generators(&self) -> Vec<GlGenerator> {
        let all = |k: usize| -> Vec<GlGenerator> {
            (1..=k).flat_map(|a| (1..=k).map(move |b| GlGenerator::new(a, b))).collect()
        };
        match *self {
            LieBasisSelector::N { k } => all(k).into_iter().filter(|g| g.a > g.b).collect(),
            LieBasisSelector::NPrime { k } => all(k).into_iter().filter(|g| g.a < g.b).collect(),
            LieBasisSelector::H { k } => (1..=k).map(|a| GlGenerator::new(a, a)).collect(),
            LieBasisSelector::Q { m, l } => all(m + l).into_iter().filter(|g| g.b <= m && g.a > m).collect(),
            LieBasisSelector::QPrime { m, l } => all(m + l).into_iter().filter(|g| g.a <= m && g.b > m).collect(),
            LieBasisSelector::P { m, l } => all(m + l).into_iter().filter(|g| !(g.b <= m && g.a > m)).collect(),
        }
    }
}

/// One weight block of W / S·W with echelon-pivot representatives.
#[derive(Clone, Debug)]
pub struct CoinvariantSpace {
    pub block: Block,
    /// Indices (in `block`) of the basis vectors kept as quotient representatives.
    pub reps: Vec<usize>,
    /// dim_quotient × dim_block.
    pub projection: SparseMatrix,
    /// dim_block × dim_quotient.
    pub section: SparseMatrix,
}

impl CoinvariantSpace {
    pub fn dim(&self) -> usize {
        self.reps.len()
    }

    pub fn project(&self, v: &LVec) -> Vec<Rational> {
        self.projection.mul_vec(&self.block.to_dense(v))
    }

    /// Representative label of quotient basis vector `i`.
    pub fn rep_label(&self, i: usize) -> &Label {
        &self.block.basis[self.reps[i]]
    }

    /// Matrix of an operator on the block, pushed to the quotient.
    pub fn descend(&self, op: &SparseMatrix) -> SparseMatrix {
        self.projection.mul(op).mul(&self.section)
    }
}

/// The λ-block of W / S·W, where S·W is spanned by g·W^{λ-ε_g}.
pub fn coinvariants(w: &dyn GlModule, lambda: &[Rational], sel: LieBasisSelector) -> Result<CoinvariantSpace> {
    let block = Block::of(w, lambda)?;
    let d = block.dim();
    let mut rows: Vec<Vec<Rational>> = Vec::new();
    for g in sel.generators() {
        let src_w = shift_by(lambda, GlGenerator::new(g.b, g.a));
        let src = Block::of(w, &src_w)?;
        for l in &src.basis {
            let img = w.act(g, l)?;
            if !img.is_empty() {
                rows.push(block.to_dense(&img));
            }
        }
    }
    let image = if rows.is_empty() { SparseMatrix::zeros(0, d) } else { SparseMatrix::from_dense(&rows) };
    let (pivots, red) = image.rref();
    let is_pivot: BTreeMap<usize, usize> = pivots.iter().enumerate().map(|(r, &c)| (c, r)).collect();
    let reps: Vec<usize> = (0..d).filter(|c| !is_pivot.contains_key(c)).collect();
    let rep_pos: BTreeMap<usize, usize> = reps.iter().enumerate().map(|(i, &c)| (c, i)).collect();
    let mut projection = SparseMatrix::zeros(reps.len(), d);
    let mut section = SparseMatrix::zeros(d, reps.len());
    for (i, &c) in reps.iter().enumerate() {
        projection.set(i, c, q(1));
        section.set(c, i, q(1));
    }
    // e_p ≡ -Σ_{free c} R[row(p), c] e_c modulo the image
    for (&p, &r) in &is_pivot {
        for (&c, &i) in &rep_pos {
            let v = red.get(r, c);
            if !v.is_zero() {
                projection.set(i, p, -v);
            }
        }
    }
    Ok(CoinvariantSpace { block, reps, projection, section })
}

/// Basis of the vectors fixed by all the given matrices (generators of a group action).
pub fn symmetric_invariants(dim: usize, generators: &[SparseMatrix]) -> Vec<Vec<Rational>> {
    if generators.is_empty() {
        return (0..dim).map(|i| (0..dim).map(|j| q((i == j) as i64)).collect()).collect();
    }
    let id = SparseMatrix::identity(dim);
    let mut stacked = SparseMatrix::zeros(dim * generators.len(), dim);
    for (k, g) in generators.iter().enumerate() {
        stacked.place(k * dim, 0, &g.sub(&id));
    }
    stacked.kernel_basis()
}

/// A subspace given by a kernel-style basis: basis vector k has a 1 in
/// coordinate `free[k]` and 0 in the other free coordinates.
#[derive(Clone, Debug)]
pub struct Subspace {
    pub ambient: usize,
    pub basis: Vec<Vec<Rational>>,
    pub free: Vec<usize>,
}

impl Subspace {
    pub fn from_kernel(ambient: usize, basis: Vec<Vec<Rational>>) -> Self {
        let free = basis
            .iter()
            .map(|v| {
                (0..ambient)
                    .rev()
                    .find(|&i| v[i].is_one() && basis.iter().filter(|u| !u[i].is_zero()).count() == 1)
                    .expect("kernel basis has a free coordinate")
            })
            .collect();
        Subspace { ambient, basis, free }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Columns are the basis vectors.
    pub fn inclusion(&self) -> SparseMatrix {
        SparseMatrix::from_columns(self.ambient, &self.basis)
    }

    /// Coordinates of a vector assumed to lie in the subspace.
    pub fn coords(&self, v: &[Rational]) -> Vec<Rational> {
        self.free.iter().map(|&i| v[i].clone()).collect()
    }

    /// Matrix of `op` restricted to the subspace, or `None` if `op` leaves it.
    pub fn restrict(&self, op: &SparseMatrix) -> Option<SparseMatrix> {
        let inc = self.inclusion();
        let img = op.mul(&inc);
        let mut x = SparseMatrix::zeros(self.dim(), self.dim());
        for (r, c, v) in img.entries() {
            if let Some(k) = self.free.iter().position(|&f| f == r) {
                x.set(k, c, v.clone());
            }
        }
        (inc.mul(&x) == img).then_some(x)
    }
}

/// Basis of {v ∈ W^λ : E_ab v = 0 for a < b}, in block coordinates.
pub fn singular_vectors(w: &dyn GlModule, lambda: &[Rational]) -> Result<(Block, Vec<Vec<Rational>>)> {
    let block = Block::of(w, lambda)?;
    let k = w.rank();
    let mut mats = Vec::new();
    for g in (LieBasisSelector::NPrime { k }).generators() {
        mats.push(generator_matrix(w, g, &block)?.1);
    }
    let total: usize = mats.iter().map(|m| m.rows()).sum();
    let mut stacked = SparseMatrix::zeros(total, block.dim());
    let mut r = 0;
    for m in &mats {
        stacked.place(r, 0, m);
        r += m.rows();
    }
    let ker = stacked.kernel_basis();
    Ok((block, ker))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weyl::gl_n_operator;

    fn g(a: usize, b: usize) -> GlGenerator {
        GlGenerator::new(a, b)
    }

    fn w(v: &[i64]) -> Weight {
        weight_from_ints(v)
    }

    fn check_relations(md: &dyn GlModule, lambda: &[Rational]) {
        let k = md.rank();
        let src = Block::of(md, lambda).unwrap();
        for a in 1..=k {
            for b in 1..=k {
                for c in 1..=k {
                    for d in 1..=k {
                        let (mid1, m1) = generator_matrix(md, g(c, d), &src).unwrap();
                        let (_, m2) = generator_matrix(md, g(a, b), &mid1).unwrap();
                        let (mid2, m3) = generator_matrix(md, g(a, b), &src).unwrap();
                        let (dst, m4) = generator_matrix(md, g(c, d), &mid2).unwrap();
                        let lhs = m2.mul(&m1).neg().add(&m4.mul(&m3)).neg();
                        let mut rhs = SparseMatrix::zeros(dst.dim(), src.dim());
                        for (h, s) in g(a, b).bracket(&g(c, d)) {
                            rhs = rhs.add(&generator_matrix(md, h, &src).unwrap().1.scale(&q(s)));
                        }
                        assert!(lhs.sub(&rhs).is_zero(), "E{a}{b},E{c}{d} at {lambda:?}");
                    }
                }
            }
        }
    }

    #[test]
    fn verma_blocks() {
        let mu = vec![Rational::new(1, 3), Rational::new(2, 3)];
        let v = Verma::new(mu.clone(), 10);
        for k in 0..5 {
            let wt = vec![&mu[0] - &q(k), &mu[1] + &q(k)];
            assert_eq!(v.block(&wt).unwrap().len(), 1);
        }
        let mu3 = generic_weight(3);
        let v3 = Verma::new(mu3.clone(), 10);
        // μ − ε_12 − ε_23 = μ − ε_13
        let wt = weight_sub(&mu3, &w(&[1, 0, -1]));
        assert_eq!(v3.block(&wt).unwrap().len(), 2);
        let one = Verma::new(vec![Rational::new(5, 7)], 3);
        let b = one.block(&[Rational::new(5, 7)]).unwrap();
        assert_eq!(b.len(), 1);
        assert_eq!(one.act(g(1, 1), &b[0]).unwrap()[&b[0]], Rational::new(5, 7));
        let small = Verma::new(mu, 2);
        let deep = vec![&small.mu()[0] - &q(3), &small.mu()[1] + &q(3)];
        assert!(matches!(small.block(&deep), Err(Error::CapExceeded(_))));
    }

    #[test]
    fn verma_relations() {
        let mu = generic_weight(3);
        let v = Verma::new(mu.clone(), 8);
        check_relations(&v, &weight_sub(&mu, &w(&[1, 0, -1])));
        check_relations(&v, &weight_sub(&mu, &w(&[1, 1, -2])));
    }

    #[test]
    fn polynomial_blocks() {
        let p = Poly { k: 2, n: 3, cap: 6 };
        assert_eq!(p.block(&w(&[1, 0])).unwrap().len(), 3);
        // S^N(C^m⊗C^n) = binom(mn+N-1, N)
        let n_deg = 3;
        let total: usize = p.weights_with_sum(n_deg).unwrap().iter().map(|wt| p.block(wt).unwrap().len()).sum();
        assert_eq!(Rational::from(total), crate::exact::binomial(6 + 3 - 1, 3));
        check_relations(&p, &w(&[2, 1]));
        assert!(p.block(&w(&[-1, 2])).unwrap().is_empty());
    }

    #[test]
    fn gl_n_commutes_with_gl_m_on_blocks() {
        let p = Poly { k: 2, n: 2, cap: 4 };
        let blk = Block::of(&p, &w(&[1, 1])).unwrap();
        for i in 1..=2 {
            for j in 1..=2 {
                let op = gl_n_operator(i, j, 2, 2);
                let apply = |l: &Label| -> Result<LVec> {
                    let Label::Mono(f) = l else { unreachable!() };
                    let mut out = LVec::new();
                    for (wm, c) in op.terms() {
                        if let Some((t, cc)) = apply_monomial(wm, f) {
                            lvec_add(&mut out, Label::Mono(t), &(c * &cc));
                        }
                    }
                    Ok(out)
                };
                let e = matrix_of(&blk, &blk, apply).unwrap();
                for a in 1..=2 {
                    let h = generator_matrix(&p, g(a, a), &blk).unwrap().1;
                    assert!(e.commutator(&h).is_zero());
                }
                let (dst, up) = generator_matrix(&p, g(1, 2), &blk).unwrap();
                let e_dst = matrix_of(&dst, &dst, apply).unwrap();
                assert!(e_dst.mul(&up).sub(&up.mul(&e)).is_zero());
            }
        }
    }

    #[test]
    fn tensor_dimensions() {
        let mu = generic_weight(2);
        let v: ModuleRef = Arc::new(Verma::new(mu.clone(), 8));
        let p: ModuleRef = Arc::new(Poly { k: 2, n: 2, cap: 4 });
        let t = Tensor::new(v, p);
        // λ = μ + (1,1): Verma parts μ, μ-ε_12 with poly weights (1,1), (2,0)
        let lam = weight_add(&mu, &w(&[1, 1]));
        assert_eq!(t.block(&lam).unwrap().len(), 4 + 3);
        check_relations(&t, &lam);
        let triv: ModuleRef = Arc::new(Trivial { k: 2 });
        let tt = Tensor::new(Arc::new(Poly { k: 2, n: 1, cap: 3 }), triv);
        let _ = tt;
    }

    #[test]
    fn induced_module() {
        let (t, s) = (Rational::new(1, 3), Rational::new(1, 5));
        let v: ModuleRef = Arc::new(Verma::new(vec![t.clone()], 0));
        let u: ModuleRef = Arc::new(Verma::new(vec![s.clone()], 0));
        let ind = Induced::new(v, u, 4);
        let b0 = ind.block(&[t.clone(), s.clone()]).unwrap();
        assert_eq!(b0.len(), 1);
        assert_eq!(ind.act(g(1, 1), &b0[0]).unwrap()[&b0[0]], t);
        assert_eq!(ind.act(g(2, 2), &b0[0]).unwrap()[&b0[0]], s);
        assert!(ind.act(g(1, 2), &b0[0]).unwrap().is_empty());
        for k in 0..3 {
            let wk = vec![&t - &q(k), &s + &q(k)];
            let blk = Block::of(&ind, &wk).unwrap();
            let (dst, m) = generator_matrix(&ind, g(2, 1), &blk).unwrap();
            assert_eq!((blk.dim(), dst.dim(), m.rank()), (1, 1, 1));
        }
        // with m = l = 1 the induced module is the gl_2 Verma module
        check_relations(&ind, &[&t - &q(2), &s + &q(2)]);
        let verma = Verma::new(vec![t.clone(), s.clone()], 4);
        let blk = Block::of(&ind, &[&t - &q(1), &s + &q(1)]).unwrap();
        let vb = Block::of(&verma, &[&t - &q(1), &s + &q(1)]).unwrap();
        let (_, a) = generator_matrix(&ind, g(1, 2), &blk).unwrap();
        let (_, b) = generator_matrix(&verma, g(1, 2), &vb).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn induced_relations_rank_three() {
        let v: ModuleRef = Arc::new(Verma::new(generic_weight(2), 6));
        let u: ModuleRef = Arc::new(Verma::new(vec![Rational::new(1, 7)], 0));
        let ind = Induced::new(v, u, 4);
        let mut lam = generic_weight(2);
        lam.push(Rational::new(1, 7));
        let lam = weight_add(&lam, &w(&[-1, 0, 1]));
        check_relations(&ind, &lam);
    }

    #[test]
    fn coinvariant_examples() {
        // m = 1: nothing to quotient by
        let v: ModuleRef = Arc::new(Verma::new(vec![Rational::new(1, 2)], 0));
        let t = Tensor::new(v, Arc::new(Poly { k: 1, n: 2, cap: 3 }));
        let lam = [Rational::new(1, 2) + q(2)];
        let c = coinvariants(&t, &lam, LieBasisSelector::N { k: 1 }).unwrap();
        assert_eq!(c.dim(), 3);
        // m = 2, ν = (1,1): P^1(C^2) ⊗ P^1(C^2) has dimension 4
        let mu = generic_weight(2);
        let t2 = Tensor::new(Arc::new(Verma::new(mu.clone(), 8)), Arc::new(Poly { k: 2, n: 2, cap: 4 }));
        let lam = weight_add(&mu, &w(&[1, 1]));
        let c = coinvariants(&t2, &lam, LieBasisSelector::N { k: 2 }).unwrap();
        assert_eq!(c.dim(), 4);
        assert_eq!(c.projection.mul(&c.section), SparseMatrix::identity(4));
        // every image vector projects to zero
        let src = Block::of(&t2, &weight_add(&mu, &w(&[2, 0]))).unwrap();
        for l in &src.basis {
            let img = t2.act(g(2, 1), l).unwrap();
            assert!(c.project(&img).iter().all(|x| x.is_zero()));
        }
    }

    #[test]
    fn singular_vector_examples() {
        let p = Poly { k: 2, n: 2, cap: 4 };
        let (blk, ker) = singular_vectors(&p, &w(&[1, 1])).unwrap();
        assert_eq!(ker.len(), 1);
        let v = blk.to_lvec(&ker[0]);
        let x = |a, i| VarIndex::new(a, i);
        let det1 = Label::Mono(MultiIndex::from_pairs(&[(x(1, 1), 1), (x(2, 2), 1)]));
        let det2 = Label::Mono(MultiIndex::from_pairs(&[(x(1, 2), 1), (x(2, 1), 1)]));
        assert_eq!(&v[&det1], &-&v[&det2]);
        let p1 = Poly { k: 2, n: 1, cap: 4 };
        assert_eq!(singular_vectors(&p1, &w(&[3, 0])).unwrap().1.len(), 1);
        assert!(singular_vectors(&p1, &w(&[-1, 1])).unwrap().1.is_empty());
    }

    #[test]
    fn slots_and_invariants() {
        let s = Slots { k: 2, count: 2 };
        assert_eq!(s.block(&w(&[1, 1])).unwrap().len(), 2);
        // N=2, m=n=1: one invariant
        let swap = SparseMatrix::identity(1);
        assert_eq!(symmetric_invariants(1, &[swap]).len(), 1);
    }

    #[test]
    fn shifted_action_examples() {
        let mu = vec![Rational::new(1, 3), q(0)];
        let s1 = Permutation::adjacent(1, 2);
        assert_eq!(shifted_action(&s1, &mu), vec![q(-1), Rational::new(4, 3)]);
        assert_eq!(rho(3), w(&[0, -1, -2]));
        assert!(is_generic(&generic_weight(4)));
    }
}
