//! The centralizer construction: the Yangian acting on P(C^m ⊗ C^{n+l}) through
//! U(gl_{n+l}), compared with the fused action on E_m(P(C^m ⊗ C^l)).

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::envelope::{block_inverse, GlGenerator};
use crate::error::{Error, Result};
use crate::exact::{series_inverse, Rational, SparseMatrix, TruncatedSeries};
use crate::modules::{weight_from_ints, Block, GlModule, Label, ModuleRef, Poly, Subspace, Tensor, Weight};
use crate::report::{Mutations, Outcome};
use crate::weyl::{apply_monomial, compositions, MultiIndex, VarIndex, WeylMonomial};
use crate::yangian::{check_intertwiner, check_rtt, fused_action, YangianAction};

/// A partition with trailing zeros removed.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Partition(Vec<u32>);

impl Partition {
    pub fn new(parts: &[u32]) -> Result<Self> {
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Config(format!("{parts:?} is not non-increasing")));
        }
        let mut v = parts.to_vec();
        while v.last() == Some(&0) {
            v.pop();
        }
        Ok(Partition(v))
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    /// ℓ(λ).
    pub fn length(&self) -> usize {
        self.0.len()
    }

    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    /// a-th part, 1-based, zero beyond the length.
    pub fn part(&self, a: usize) -> u32 {
        self.0.get(a - 1).copied().unwrap_or(0)
    }

    pub fn conjugate(&self) -> Partition {
        let top = self.part(1);
        Partition((1..=top).map(|b| self.0.iter().filter(|&&p| p >= b).count() as u32).collect())
    }

    /// As a gl_k weight padded with zeros.
    pub fn weight(&self, k: usize) -> Weight {
        weight_from_ints(&(1..=k).map(|a| self.part(a) as i64).collect::<Vec<_>>())
    }
}

/// Σ_c x_ci ∂_cj on a block of P(C^m ⊗ C^cols).
fn column_operator(m: usize, i: usize, j: usize, block: &Block) -> SparseMatrix {
    let d = block.dim();
    let mut out = SparseMatrix::zeros(d, d);
    for (col, l) in block.basis.iter().enumerate() {
        let Label::Mono(f) = l else { panic!("bad polynomial label {l:?}") };
        for c in 1..=m {
            let w = WeylMonomial { x: MultiIndex::var(VarIndex::new(c, i)), d: MultiIndex::var(VarIndex::new(c, j)) };
            if let Some((g, x)) = apply_monomial(&w, f) {
                let row = block.position(&Label::Mono(g)).expect("column operators preserve row degrees");
                out.add_at(row, col, &x);
            }
        }
    }
    out
}

/// Row-degree block of P(C^m ⊗ C^cols).
pub fn poly_block(m: usize, cols: usize, w: &[Rational]) -> Result<Block> {
    let cap = w.iter().map(|x| x.to_i64().unwrap_or(0).max(0) as u32).sum();
    Block::of(&Poly { k: m, n: cols, cap }, w)
}

/// The Yangian action through β_l on one block of P(C^m ⊗ C^{n+l}).
#[derive(Clone, Debug)]
pub struct CentralizerAction {
    pub m: usize,
    pub n: usize,
    pub l: usize,
    pub block: Block,
    pub action: YangianAction,
}

impl CentralizerAction {
    /// Matrix of E_{n+k, n+k'} ∈ gl_l.
    pub fn gl_l(&self, k: usize, kp: usize) -> SparseMatrix {
        column_operator(self.m, self.n + k, self.n + kp, &self.block)
    }
}

/// T(u) ↦ Ã⁻¹, where Ã is the top-left n×n block of the inverse of
/// 1 + (u−l)⁻¹ [Σ_c x_ci ∂_cj]_{i,j ≤ n+l}; `order` layers T^{(1..order)}.
pub fn beta_action(m: usize, n: usize, l: usize, w: &[Rational], order: usize) -> Result<CentralizerAction> {
    let block = poly_block(m, n + l, w)?;
    let d = block.dim();
    let k = n + l;
    let g: Vec<Vec<SparseMatrix>> =
        (1..=k).map(|i| (1..=k).map(|j| column_operator(m, i, j, &block)).collect()).collect();
    // (u−l)⁻¹ = Σ_{r≥1} l^{r−1} u^{−r}
    let lq = Rational::from_int(l as i64);
    let piece = |rows: std::ops::Range<usize>, cols: std::ops::Range<usize>| -> TruncatedSeries<SparseMatrix> {
        let (nr, nc) = (rows.len(), cols.len());
        let mut gm = SparseMatrix::zeros(nr * d, nc * d);
        for (bi, i) in rows.clone().enumerate() {
            for (bj, j) in cols.clone().enumerate() {
                gm.place(bi * d, bj * d, &g[i][j]);
            }
        }
        let mut coeffs = Vec::with_capacity(order + 1);
        coeffs.push(if rows == cols { SparseMatrix::identity(nr * d) } else { SparseMatrix::zeros(nr * d, nc * d) });
        for r in 1..=order {
            coeffs.push(gm.scale(&lq.pow(r as u32 - 1)));
        }
        TruncatedSeries::new(coeffs)
    };
    let a = piece(0..n, 0..n);
    let t = if l == 0 {
        a
    } else {
        let (at, _, _, _) = block_inverse(&a, &piece(0..n, n..k), &piece(n..k, 0..n), &piece(n..k, n..k), order)?;
        series_inverse(&at, order)?
    };
    let desc = json!({"beta": {"m": m, "n": n, "l": l}, "weight": crate::yangian::weight_json(w), "dim": d});
    Ok(CentralizerAction { m, n, l, block: block.clone(), action: YangianAction::from_matrix_series(n, d, &t, desc) })
}

/// E_m(V) with V = P(C^m ⊗ C^l) on columns n+1..n+l.
fn e_module_of_columns(m: usize, n: usize, l: usize, cap: u32) -> (ModuleRef, Tensor) {
    let v: ModuleRef = Arc::new(Poly { k: m, n: l, cap });
    (v.clone(), Tensor::new(v, Arc::new(Poly { k: m, n, cap })))
}

/// x^f ↦ x^{f over columns n+1..} ⊗ x^{f over columns ..n}, as a matrix from `src` to `dst`.
fn splitting_matrix(n: usize, src: &Block, dst: &Block) -> SparseMatrix {
    let mut p = SparseMatrix::zeros(dst.dim(), src.dim());
    for (col, l) in src.basis.iter().enumerate() {
        let Label::Mono(f) = l else { panic!("bad polynomial label {l:?}") };
        let (mut hi, mut lo) = (Vec::new(), Vec::new());
        for &(v, e) in f.entries() {
            if v.i > n {
                hi.push((VarIndex::new(v.a, v.i - n), e));
            } else {
                lo.push((v, e));
            }
        }
        let t = Label::pair(Label::Mono(MultiIndex::from_pairs(&hi)), Label::Mono(MultiIndex::from_pairs(&lo)));
        let row = dst.position(&t).unwrap_or_else(|| panic!("{t:?} missing from the tensor block"));
        p.set(row, col, Rational::one());
    }
    p
}

fn row_weights(m: usize, deg: u32) -> Vec<Weight> {
    (0..=deg)
        .flat_map(|d| compositions(d, m))
        .map(|c| weight_from_ints(&c.iter().map(|&x| x as i64).collect::<Vec<_>>()))
        .collect()
}

/// β_l equals the fused action of E_m(P(C^m ⊗ C^l)) on every row-degree block up to `deg`.
pub fn check_arol(m: usize, n: usize, l: usize, deg: u32, k: usize, mutations: Mutations) -> Result<Outcome> {
    let mut out = Outcome::new();
    let (v, e) = e_module_of_columns(m, n, l, deg);
    for w in row_weights(m, deg) {
        let beta = beta_action(m, n, l, &w, k + 1)?;
        let eb = Block::of(&e, &w)?;
        let fused = fused_action(&v, n, &eb, k + 1, mutations)?;
        let p = splitting_matrix(n, &beta.block, &eb);
        let o = check_intertwiner(&p, &beta.action, &fused, k + 1);
        if !o.pass {
            out.info(json!({"weight": crate::yangian::weight_json(&w)}));
            out.absorb(o);
            return Ok(out);
        }
        for kk in 1..=l {
            for kp in 1..=l {
                let x = beta.gl_l(kk, kp);
                for r in 1..=k + 1 {
                    for i in 1..=n {
                        for j in 1..=n {
                            out.require_equal(
                                &x.mul(beta.action.t_ref(r, i, j)),
                                &beta.action.t_ref(r, i, j).mul(&x),
                                || json!({"relation": "centralizer", "gl_l": [kk, kp], "s": r - 1, "i": i, "j": j}),
                            );
                        }
                    }
                }
            }
        }
        out.absorb(check_rtt(&beta.action, k));
        out.info(json!({"weight": crate::yangian::weight_json(&w), "dim": beta.block.dim()}));
    }
    Ok(out)
}

/// β_l restricted to polynomials free of column n+l equals β_{l−1}.
pub fn check_stability(m: usize, n: usize, l: usize, deg: u32, k: usize) -> Result<Outcome> {
    if l == 0 {
        return Err(Error::Config("stability needs l ≥ 1".into()));
    }
    let mut out = Outcome::new();
    for w in row_weights(m, deg) {
        let big = beta_action(m, n, l, &w, k + 1)?;
        let small = beta_action(m, n, l - 1, &w, k + 1)?;
        let last = n + l;
        let keep: Vec<usize> = (0..big.block.dim())
            .filter(|&p| {
                let Label::Mono(f) = &big.block.basis[p] else { unreachable!() };
                f.entries().iter().all(|(v, _)| v.i != last)
            })
            .collect();
        // big index → small index on the kept part
        let to_small: Vec<Option<usize>> = (0..big.block.dim())
            .map(|p| {
                keep.contains(&p).then(|| small.block.position(&big.block.basis[p]).expect("kept label in small block"))
            })
            .collect();
        for r in 1..=k + 1 {
            for i in 1..=n {
                for j in 1..=n {
                    let bm = big.action.t_ref(r, i, j);
                    let mut restricted = SparseMatrix::zeros(small.block.dim(), small.block.dim());
                    for (row, col, x) in bm.entries() {
                        let Some(c) = to_small[col] else { continue };
                        match to_small[row] {
                            Some(rr) => restricted.set(rr, c, x.clone()),
                            None => out.fail(
                                json!({"violation": "leaves the column-free subspace", "s": r - 1, "i": i, "j": j,
                                                     "row": format!("{:?}", big.block.basis[row])}),
                            ),
                        }
                    }
                    out.require_equal(&restricted, small.action.t_ref(r, i, j), || {
                        json!({"relation": "stability", "l": l, "s": r - 1, "i": i, "j": j,
                               "weight": crate::yangian::weight_json(&w)})
                    });
                }
            }
        }
        if !out.pass {
            return Ok(out);
        }
        out.info(json!({"weight": crate::yangian::weight_json(&w), "dims": [big.block.dim(), small.block.dim()]}));
    }
    Ok(out)
}

/// Vectors of P(C^m ⊗ C^{n+l}) of row weight λ and gl_l weight μ killed by the
/// raising operators of gl_m and gl_l.
fn joint_singular(
    m: usize,
    n: usize,
    l: usize,
    lambda: &Partition,
    mu: &Partition,
) -> Result<(Block, Vec<usize>, Subspace)> {
    let block = poly_block(m, n + l, &lambda.weight(m))?;
    let sel: Vec<usize> = (0..block.dim())
        .filter(|&p| {
            let Label::Mono(f) = &block.basis[p] else { unreachable!() };
            let cd = f.col_degrees(n + l);
            (1..=l).all(|kk| cd[n + kk - 1] == mu.part(kk) as i64)
        })
        .collect();
    // constraint rows indexed by image labels
    let poly = Poly { k: m, n: n + l, cap: u32::MAX };
    let mut ops: Vec<GlGenerator> = Vec::new();
    for a in 1..=m {
        for b in a + 1..=m {
            ops.push(GlGenerator::new(a, b));
        }
    }
    let mut images: std::collections::BTreeMap<(usize, Label), Vec<Rational>> = std::collections::BTreeMap::new();
    for (pos, &p) in sel.iter().enumerate() {
        let Label::Mono(f) = &block.basis[p] else { unreachable!() };
        let mut add = |tag: usize, t: Label, x: Rational| {
            images.entry((tag, t)).or_insert_with(|| vec![Rational::zero(); sel.len()])[pos] += &x;
        };
        for (tag, &g) in ops.iter().enumerate() {
            for (t, x) in poly.act(g, &block.basis[p])? {
                add(tag, t, x);
            }
        }
        for kk in 1..=l {
            for kp in kk + 1..=l {
                let tag = ops.len() + kk * (l + 1) + kp;
                for c in 1..=m {
                    let w = WeylMonomial {
                        x: MultiIndex::var(VarIndex::new(c, n + kk)),
                        d: MultiIndex::var(VarIndex::new(c, n + kp)),
                    };
                    if let Some((g, x)) = apply_monomial(&w, f) {
                        add(tag, Label::Mono(g), x);
                    }
                }
            }
        }
    }
    let rows: Vec<Vec<Rational>> = images.into_values().filter(|v| v.iter().any(|x| !x.is_zero())).collect();
    let sm = if rows.is_empty() { SparseMatrix::zeros(0, sel.len()) } else { SparseMatrix::from_dense(&rows) };
    let ker = if sel.is_empty() { vec![] } else { sm.kernel_basis() };
    // embed kernel vectors back into the whole block
    let basis: Vec<Vec<Rational>> = ker
        .into_iter()
        .map(|v| {
            let mut full = vec![Rational::zero(); block.dim()];
            for (x, &c) in v.into_iter().zip(&sel) {
                full[c] = x;
            }
            full
        })
        .collect();
    let sub = Subspace::from_kernel(block.dim(), basis);
    Ok((block, sel, sub))
}

/// Hom_{gl_m}(L_λ, L_μ ⊗ S(C^m ⊗ C^n)) as joint singular vectors, with the Yangian
/// action of E_m(L_μ) (L_μ ⊂ P(C^m ⊗ C^l)) restricted to it.
pub fn hom_space_action(
    lambda: &Partition,
    mu: &Partition,
    m: usize,
    n: usize,
    l: usize,
    k: usize,
) -> Result<(Subspace, YangianAction)> {
    if lambda.length() > m.min(n + l) || mu.length() > m.min(l) {
        return Err(Error::Config(format!("need ℓ(λ) ≤ min(m, n+l) and ℓ(μ) ≤ min(m, l); got {lambda:?}, {mu:?}")));
    }
    let (block, _, sub) = joint_singular(m, n, l, lambda, mu)?;
    let w = lambda.weight(m);
    let (v, e) = e_module_of_columns(m, n, l, lambda.size());
    let eb = Block::of(&e, &w)?;
    let fused = fused_action(&v, n, &eb, k + 1, Mutations::none())?;
    // pull the fused matrices back to the polynomial basis
    let p = splitting_matrix(n, &block, &eb);
    let pt = p.transpose();
    let pulled = fused.map(block.dim(), |t| pt.mul(t).mul(&p));
    let layers_ok = std::cell::Cell::new(true);
    let restricted = pulled.map(sub.dim(), |t| {
        sub.restrict(t).unwrap_or_else(|| {
            layers_ok.set(false);
            SparseMatrix::zeros(sub.dim(), sub.dim())
        })
    });
    if !layers_ok.get() {
        return Err(Error::Config("the Hom space is not preserved by the Yangian action".into()));
    }
    Ok((sub, restricted))
}

/// λ_a ≥ μ_a and λ*_a − μ*_a ≤ n for every a.
pub fn nonvanishing_criterion(lambda: &Partition, mu: &Partition, n: usize) -> bool {
    let top = lambda.length().max(mu.length()).max(lambda.part(1) as usize).max(mu.part(1) as usize);
    let (ls, ms) = (lambda.conjugate(), mu.conjugate());
    (1..=top).all(|a| lambda.part(a) >= mu.part(a) && ls.part(a) as i64 - ms.part(a) as i64 <= n as i64)
}

/// Criterion against the dimension of the Hom space computed as a kernel.
pub fn check_nonvanishing(lambda: &Partition, mu: &Partition, n: usize) -> Result<Outcome> {
    let mut out = Outcome::new();
    let crit = nonvanishing_criterion(lambda, mu, n);
    let m = lambda.length().max(mu.length()).max(1);
    let l = mu.length().max(lambda.length().saturating_sub(n));
    let dim = if lambda.size() < mu.size() { 0 } else { joint_singular(m, n, l, lambda, mu)?.2.dim() };
    out.require(crit == (dim > 0), || {
        json!({"violation": "criterion disagrees with the kernel", "lambda": lambda.parts(), "mu": mu.parts(),
               "n": n, "criterion": crit, "dim": dim})
    });
    out.info(
        json!({"lambda": lambda.parts(), "mu": mu.parts(), "n": n, "m": m, "l": l, "criterion": crit, "dim": dim}),
    );
    Ok(out)
}

fn random_partition(rng: &mut ChaCha8Rng, max_len: usize, max_part: u32) -> Partition {
    let mut parts: Vec<u32> = (0..max_len).map(|_| rng.gen_range(0..=max_part)).collect();
    parts.sort_unstable_by(|a, b| b.cmp(a));
    Partition::new(&parts).expect("sorted")
}

/// `count` random small (λ, μ, n), always including a nonvanishing and a vanishing case.
pub fn check_nonvanishing_random(count: usize, seed: u64) -> Result<Outcome> {
    let mut out = Outcome::new();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cases = vec![
        (Partition::new(&[2, 1])?, Partition::new(&[1])?, 1),
        (Partition::new(&[3, 3])?, Partition::new(&[2, 2])?, 1),
    ];
    while cases.len() < count.max(2) {
        let mu = random_partition(&mut rng, 2, 2);
        let extra = random_partition(&mut rng, 2, 2);
        let lam_parts: Vec<u32> = (1..=2).map(|a| mu.part(a) + extra.part(a)).collect();
        let mut sorted = lam_parts.clone();
        sorted.sort_unstable_by(|a, b| b.cmp(a));
        cases.push((Partition::new(&sorted)?, mu, rng.gen_range(1..=2)));
    }
    for (lambda, mu, n) in &cases {
        out.absorb(check_nonvanishing(lambda, mu, *n)?);
    }
    Ok(out)
}

pub fn partition_json(p: &Partition) -> Value {
    json!(p.parts())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modules::q;

    fn part(p: &[u32]) -> Partition {
        Partition::new(p).unwrap()
    }

    #[test]
    fn partitions() {
        assert_eq!(part(&[2, 1, 0]).parts(), &[2, 1]);
        assert_eq!(part(&[3, 1]).conjugate(), part(&[2, 1, 1]));
        assert_eq!(part(&[2, 1]).conjugate(), part(&[2, 1]));
        assert!(Partition::new(&[1, 2]).is_err());
        assert_eq!(part(&[]).length(), 0);
    }

    #[test]
    fn leading_layer_is_gl_n() {
        let beta = beta_action(2, 2, 1, &[q(2), q(1)], 2).unwrap();
        for i in 1..=2 {
            for j in 1..=2 {
                assert_eq!(beta.action.t(1, i, j), column_operator(2, i, j, &beta.block));
            }
        }
    }

    #[test]
    fn l_zero_is_evaluation() {
        let beta = beta_action(1, 2, 0, &[q(2)], 3).unwrap();
        for i in 1..=2 {
            for j in 1..=2 {
                assert!(beta.action.t(2, i, j).is_zero());
                assert!(beta.action.t(3, i, j).is_zero());
            }
        }
    }

    #[test]
    fn arol_small() {
        let o = check_arol(1, 1, 1, 3, 3, Mutations::none()).unwrap();
        assert!(o.pass, "{:?}", o.witnesses);
        let o = check_arol(2, 2, 1, 3, 3, Mutations::none()).unwrap();
        assert!(o.pass, "{:?}", o.witnesses);
    }

    #[test]
    fn arol_detects_sign_flip() {
        let o = check_arol(1, 1, 1, 2, 2, Mutations { flip_combact_sign: true, ..Mutations::none() }).unwrap();
        assert!(!o.pass);
    }

    #[test]
    fn stability() {
        for l in 1..=2 {
            let o = check_stability(1, 2, l, 3, 2).unwrap();
            assert!(o.pass, "l={l} {:?}", o.witnesses);
        }
        let o = check_stability(2, 2, 1, 3, 3).unwrap();
        assert!(o.pass, "{:?}", o.witnesses);
    }

    #[test]
    fn nonvanishing_examples() {
        assert!(nonvanishing_criterion(&part(&[2, 1]), &part(&[1]), 1));
        assert!(!nonvanishing_criterion(&part(&[1]), &part(&[2]), 3));
        assert!(nonvanishing_criterion(&part(&[2, 2]), &part(&[2, 2]), 1));
        // fails only at a = 3 > m
        assert!(!nonvanishing_criterion(&part(&[3, 3]), &part(&[2, 2]), 1));
        for (l, m, n) in [(&[2u32, 1][..], &[1u32][..], 1), (&[3, 3], &[2, 2], 1), (&[2], &[], 2), (&[1, 1], &[], 1)] {
            let o = check_nonvanishing(&part(l), &part(m), n).unwrap();
            assert!(o.pass, "{:?}", o.witnesses);
        }
        assert!(check_nonvanishing_random(10, 3).unwrap().pass);
    }

    #[test]
    fn hom_space_rank_one() {
        // λ=(1), μ=∅, m=n=1: spanned by x_11, T_11(u) = 1 + u⁻¹
        let (sub, y) = hom_space_action(&part(&[1]), &part(&[]), 1, 1, 0, 2).unwrap();
        assert_eq!(sub.dim(), 1);
        assert_eq!(y.t(1, 1, 1), SparseMatrix::identity(1));
        assert!(y.t(2, 1, 1).is_zero());
        let (sub, y) = hom_space_action(&part(&[2, 1]), &part(&[1]), 2, 1, 1, 3).unwrap();
        assert_eq!(sub.dim(), 1);
        assert!(check_rtt(&y, 2).pass);
        let (sub, _) = hom_space_action(&part(&[2]), &part(&[2]), 1, 2, 1, 1).unwrap();
        assert_eq!(sub.dim(), 1);
    }
}
