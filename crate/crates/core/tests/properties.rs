use mickelsson::exact::Rational;
use mickelsson::modules::{is_generic, q, shifted_action, Weight};
use mickelsson::olshanski::{nonvanishing_criterion, Partition};
use mickelsson::perm::Permutation;
use mickelsson::zhelobenko::{check_isis, isim_scalar, phi_product, phi_sum};
use proptest::prelude::*;

fn rational() -> impl Strategy<Value = Rational> {
    (-40i64..40, 1i64..12).prop_map(|(p, d)| Rational::new(p, d))
}

fn permutation(m: usize) -> impl Strategy<Value = Permutation> {
    Just((1..=m).collect::<Vec<usize>>()).prop_shuffle().prop_map(|v| Permutation::new(v).unwrap())
}

fn partition() -> impl Strategy<Value = Partition> {
    prop::collection::vec(0u32..5, 0..4).prop_map(|mut v| {
        v.sort_unstable_by(|a, b| b.cmp(a));
        Partition::new(&v).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rational_field_laws(a in rational(), b in rational(), c in rational()) {
        prop_assert_eq!(&(&a + &b) - &b, a.clone());
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        if let Some(inv) = b.recip() {
            prop_assert_eq!(&(&a * &b) * &inv, a.clone());
        }
        let s = a.to_string();
        prop_assert_eq!(s.parse::<Rational>().unwrap(), a);
    }

    #[test]
    fn reduced_words_rebuild_the_permutation(s in permutation(4), smallest in any::<bool>()) {
        let word = s.reduced_word(smallest);
        prop_assert_eq!(word.len(), s.length());
        let mut acc = Permutation::identity(4);
        for &c in &word {
            acc = acc.compose(&Permutation::adjacent(c, 4));
        }
        prop_assert_eq!(acc, s.clone());
        prop_assert!(s.compose(&s.inverse()).is_identity());
    }

    #[test]
    fn shifted_action_is_an_action(s in permutation(3), t in permutation(3), mu in prop::collection::vec(rational(), 3)) {
        let lhs = shifted_action(&s, &shifted_action(&t, &mu));
        prop_assert_eq!(lhs, shifted_action(&s.compose(&t), &mu));
        prop_assert_eq!(shifted_action(&Permutation::identity(3), &mu), mu);
    }

    #[test]
    fn conjugation_is_an_involution(p in partition()) {
        prop_assert_eq!(p.conjugate().conjugate(), p.clone());
        prop_assert_eq!(p.conjugate().size(), p.size());
    }

    #[test]
    fn criterion_needs_containment(l in partition(), m in partition(), n in 1usize..3) {
        if nonvanishing_criterion(&l, &m, n) {
            for a in 1..=4 {
                prop_assert!(l.part(a) >= m.part(a));
            }
        }
    }

    #[test]
    fn phi_sum_equals_product(d in 0u32..5, x in rational(), t in rational()) {
        if let (Some(a), Some(b)) = (phi_sum(d, &x, &t), phi_product(d, &x, &t)) {
            prop_assert_eq!(a, b);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(6))]

    #[test]
    fn isis_matches_closed_form(a in 1i64..6, b in 1i64..6, nu0 in 0u32..2, nu1 in 0u32..3) {
        let mu: Weight = vec![Rational::new(a, 7), Rational::new(-b, 5)];
        prop_assume!(is_generic(&mu));
        let s = Permutation::new(vec![2, 1]).unwrap();
        let nu = [nu0, nu1];
        if isim_scalar(&s, &mu, &nu).is_ok() {
            let out = check_isis(&s, &mu, &nu, 1).unwrap();
            prop_assert!(out.pass, "{:?}", out.witnesses);
        }
    }
}

#[test]
fn worked_scalar() {
    let s = Permutation::new(vec![2, 1]).unwrap();
    let mu = vec![Rational::new(1, 3), q(0)];
    assert_eq!(isim_scalar(&s, &mu, &[0, 1]).unwrap(), Rational::new(1, 4));
    assert_eq!(isim_scalar(&Permutation::identity(2), &mu, &[0, 1]).unwrap(), q(1));
}
