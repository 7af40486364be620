//! The degenerate affine Hecke algebra acting on V ⊗ (C^m)^{⊗N}.

use std::collections::BTreeSet;
use std::sync::Arc;

use serde_json::{json, Value};

use crate::envelope::GlGenerator;
use crate::error::Result;
use crate::exact::{Rational, SparseMatrix};
use crate::modules::{
    generator_matrix, lowered_weights, lvec_add, matrix_of, q, weight_add, Block, GlModule, LVec, Label, ModuleRef,
    Slots, Tensor, Weight,
};
use crate::perm::Permutation;
use crate::report::{Mutations, Outcome};
use crate::weyl::compositions;

/// y_p = Σ_ab E_ba ⊗ E_ab^{(p)} on the label v ⊗ e_t.
pub fn y_on_label(v_mod: &dyn GlModule, p: usize, label: &Label) -> Result<LVec> {
    let (v, t) = label.split();
    let Label::Slots(t) = t else { panic!("bad slot label {t:?}") };
    let b = t[p - 1];
    let mut out = LVec::new();
    for a in 1..=v_mod.rank() {
        let mut u = t.clone();
        u[p - 1] = a;
        for (w, c) in v_mod.act(GlGenerator::new(b, a), v)? {
            lvec_add(&mut out, Label::pair(w, Label::Slots(u.clone())), &c);
        }
    }
    Ok(out)
}

/// Moves the tensor factor in slot p to slot σ(p).
pub fn permute_slots(sigma: &Permutation, t: &[usize]) -> Vec<usize> {
    let mut u = vec![0; t.len()];
    for (p, &c) in t.iter().enumerate() {
        u[sigma.apply(p + 1) - 1] = c;
    }
    u
}

/// V ⊗ (C^m)^{⊗N} as a gl_m-module.
pub fn hecke_module(v: ModuleRef, count: usize) -> Tensor {
    let m = v.rank();
    Tensor::new(v, Arc::new(Slots { k: m, count }))
}

/// The operators y_1..y_N and the S_N action on one weight block.
pub struct HeckeOperatorSet {
    pub v: ModuleRef,
    pub count: usize,
    pub block: Block,
    pub y: Vec<SparseMatrix>,
}

impl HeckeOperatorSet {
    pub fn dim(&self) -> usize {
        self.block.dim()
    }

    pub fn perm_matrix(&self, sigma: &Permutation) -> SparseMatrix {
        matrix_of(&self.block, &self.block, |l| {
            let (v, t) = l.split();
            let Label::Slots(t) = t else { unreachable!() };
            let mut out = LVec::new();
            out.insert(Label::pair(v.clone(), Label::Slots(permute_slots(sigma, t))), q(1));
            Ok(out)
        })
        .expect("permutations stay in the block")
    }

    pub fn transposition(&self, p: usize, r: usize) -> SparseMatrix {
        self.perm_matrix(&Permutation::transposition(p, r, self.count))
    }

    /// x_p = y_p + σ_1p + … + σ_{p-1,p}.
    pub fn x(&self, p: usize) -> SparseMatrix {
        let mut acc = self.y[p - 1].clone();
        for r in 1..p {
            acc = acc.add(&self.transposition(r, p));
        }
        acc
    }

    pub fn descriptor(&self) -> Value {
        json!({"V": self.v.descriptor(), "N": self.count,
               "weight": self.block.weight.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
               "dim": self.dim()})
    }
}

pub fn build_hecke_action(v: ModuleRef, count: usize, lambda: &[Rational]) -> Result<HeckeOperatorSet> {
    let module = hecke_module(v.clone(), count);
    let block = Block::of(&module, lambda)?;
    let mut y = Vec::with_capacity(count);
    for p in 1..=count {
        y.push(matrix_of(&block, &block, |l| y_on_label(v.as_ref(), p, l))?);
    }
    Ok(HeckeOperatorSet { v, count, block, y })
}

/// Weights of V ⊗ (C^m)^{⊗N} reached from `top` (the highest weight of V)
/// by at most `depth` simple lowerings, plus every slot content.
pub fn hecke_test_weights(top: &[Rational], count: usize, depth: usize) -> Vec<Weight> {
    let m = top.len();
    let mut out = BTreeSet::new();
    for w in &lowered_weights(top, depth) {
        for eta in compositions(count as u32, m) {
            let e: Weight = eta.iter().map(|&x| q(x as i64)).collect();
            out.insert(weight_add(w, &e));
        }
    }
    out.into_iter().collect()
}

/// σ y_p σ⁻¹ = y_{σ(p)}, [y_p, y_q] = σ_pq (y_p − y_q) and the cross
/// relations of the x_p.
pub fn check_hecke_relations(h: &HeckeOperatorSet, mutations: Mutations) -> Outcome {
    let mut out = Outcome::new();
    let n = h.count;
    let w = || h.block.weight.iter().map(|x| x.to_string()).collect::<Vec<_>>();
    for c in 1..n {
        let s = h.transposition(c, c + 1);
        for p in 1..=n {
            let sp = Permutation::adjacent(c, n).apply(p);
            out.require_equal(
                &s.mul(&h.y[p - 1]).mul(&s),
                &h.y[sp - 1],
                || json!({"relation": "sigma y_p sigma^-1 = y_sigma(p)", "c": c, "p": p, "weight": w()}),
            );
        }
    }
    for p in 1..=n {
        for r in 1..=n {
            if p == r {
                continue;
            }
            let lhs = h.y[p - 1].commutator(&h.y[r - 1]);
            let rhs = h.transposition(p, r).mul(&h.y[p - 1].sub(&h.y[r - 1]));
            out.require_equal(
                &lhs,
                &rhs,
                || json!({"relation": "[y_p,y_q] = sigma_pq (y_p - y_q)", "p": p, "q": r, "weight": w()}),
            );
        }
    }
    let xs: Vec<SparseMatrix> = (1..=n).map(|p| h.x(p)).collect();
    let id = SparseMatrix::identity(h.dim());
    for p in 1..=n {
        for r in p + 1..=n {
            out.require(
                xs[p - 1].commutator(&xs[r - 1]).is_zero(),
                || json!({"violation": {"relation": "[x_p,x_q] = 0", "p": p, "q": r, "weight": w()}}),
            );
        }
    }
    for c in 1..n {
        let s = h.transposition(c, c + 1);
        for r in (1..=n).filter(|&r| r != c && r != c + 1) {
            out.require_equal(
                &s.mul(&xs[r - 1]),
                &xs[r - 1].mul(&s),
                || json!({"relation": "sigma_p x_q = x_q sigma_p", "p": c, "q": r, "weight": w()}),
            );
        }
        let mut rhs = xs[c].mul(&s);
        if !mutations.drop_hecke_unit {
            rhs = rhs.sub(&id);
        }
        out.require_equal(
            &s.mul(&xs[c - 1]),
            &rhs,
            || json!({"relation": "sigma_p x_p = x_{p+1} sigma_p - 1", "p": c, "weight": w()}),
        );
    }
    // the slot action is a homomorphism on sampled pairs
    for a in 1..n {
        for b in 1..n {
            let (sa, sb) = (Permutation::adjacent(a, n), Permutation::adjacent(b, n));
            let lhs = h.perm_matrix(&sa.compose(&sb));
            out.require_equal(
                &lhs,
                &h.perm_matrix(&sa).mul(&h.perm_matrix(&sb)),
                || json!({"relation": "perm(st) = perm(s) perm(t)", "s": a, "t": b}),
            );
        }
    }
    out
}

/// Each y_p and each slot permutation commutes with the diagonal E_cd.
pub fn check_glm_commutation(v: ModuleRef, count: usize, lambda: &[Rational]) -> Result<Outcome> {
    let mut out = Outcome::new();
    let m = v.rank();
    let module = hecke_module(v.clone(), count);
    let src = build_hecke_action(v.clone(), count, lambda)?;
    for c in 1..=m {
        for d in 1..=m {
            let g = GlGenerator::new(c, d);
            let (dst_block, e) = generator_matrix(&module, g, &src.block)?;
            let dst = build_hecke_action(v.clone(), count, &dst_block.weight)?;
            for p in 1..=count {
                out.require_equal(&e.mul(&src.y[p - 1]), &dst.y[p - 1].mul(&e), || {
                    json!({"relation": "[E_cd, y_p] = 0", "c": c, "d": d, "p": p,
                           "weight": lambda.iter().map(|x| x.to_string()).collect::<Vec<_>>()})
                });
            }
            for a in 1..count {
                let s = Permutation::adjacent(a, count);
                out.require_equal(
                    &e.mul(&src.perm_matrix(&s)),
                    &dst.perm_matrix(&s).mul(&e),
                    || json!({"relation": "[E_cd, sigma] = 0", "c": c, "d": d, "sigma": a}),
                );
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modules::{generic_weight, weight_from_ints, Natural, Trivial, Verma};

    fn natural(m: usize) -> ModuleRef {
        Arc::new(Natural { k: m })
    }

    #[test]
    fn rank_one_natural_gives_identity() {
        for n in 1..=3 {
            let h = build_hecke_action(natural(1), n, &weight_from_ints(&[n as i64 + 1])).unwrap();
            assert_eq!(h.dim(), 1);
            for y in &h.y {
                assert_eq!(*y, SparseMatrix::identity(1));
            }
        }
        let h = build_hecke_action(Arc::new(Trivial { k: 1 }), 2, &weight_from_ints(&[2])).unwrap();
        assert!(h.y.iter().all(|y| y.is_zero()));
    }

    #[test]
    fn one_slot_is_split_casimir() {
        // N = 1, V = C^2: y_1 = Σ E_ba ⊗ E_ab is the flip on C^2 ⊗ C^2
        let h = build_hecke_action(natural(2), 1, &weight_from_ints(&[1, 1])).unwrap();
        assert_eq!(h.dim(), 2);
        assert_eq!(h.y[0], SparseMatrix::from_ints(&[&[0, 1], &[1, 0]]));
        let h = build_hecke_action(natural(2), 1, &weight_from_ints(&[2, 0])).unwrap();
        assert_eq!(h.y[0], SparseMatrix::identity(1));
    }

    #[test]
    fn trivial_v_gives_group_algebra_image() {
        // y_p = 0, so x_p is the Jucys-Murphy element σ_1p + … + σ_{p-1,p}
        let h = build_hecke_action(Arc::new(Trivial { k: 2 }), 3, &weight_from_ints(&[2, 1])).unwrap();
        assert!(h.y.iter().all(|y| y.is_zero()));
        let jm = h.transposition(1, 3).add(&h.transposition(2, 3));
        assert_eq!(h.x(3), jm);
        assert!(check_hecke_relations(&h, Mutations::none()).pass);
    }

    #[test]
    fn relations_on_natural_and_verma() {
        for (m, n) in [(1, 3), (2, 2), (2, 3)] {
            let mut top = vec![q(0); m];
            top[0] = q(1);
            for w in hecke_test_weights(&top, n, m) {
                let h = build_hecke_action(natural(m), n, &w).unwrap();
                if h.dim() == 0 {
                    continue;
                }
                let o = check_hecke_relations(&h, Mutations::none());
                assert!(o.pass, "{:?}", o.witnesses);
                assert!(check_glm_commutation(natural(m), n, &w).unwrap().pass);
            }
        }
        let mu = generic_weight(2);
        let v: ModuleRef = Arc::new(Verma::new(mu.clone(), 6));
        for w in hecke_test_weights(&mu, 2, 2) {
            let h = build_hecke_action(v.clone(), 2, &w).unwrap();
            assert!(check_hecke_relations(&h, Mutations::none()).pass);
            assert!(check_glm_commutation(v.clone(), 2, &w).unwrap().pass);
        }
    }

    #[test]
    fn dropping_the_unit_is_detected() {
        let h = build_hecke_action(natural(2), 2, &weight_from_ints(&[2, 1])).unwrap();
        let o = check_hecke_relations(&h, Mutations::parse("drop-hecke-unit").unwrap());
        assert!(!o.pass);
        assert!(o.witnesses[0].get("row").is_some());
    }

    #[test]
    fn slot_permutation_convention() {
        let s = Permutation::new(vec![2, 3, 1]).unwrap();
        assert_eq!(permute_slots(&s, &[1, 2, 3]), vec![3, 1, 2]);
    }
}
