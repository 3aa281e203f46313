use mwlink::braid::{delta, BraidWord};
use mwlink::closure::{
    describe_closure, invariant_signature, lift, rp3_doubled_linking_matrix,
    s3_doubled_linking_matrix,
};
use mwlink::lines::{dlk_lines, random_chart, ProjLine};
use mwlink::mw::{expected_invariants, model_braid, verify_model, ModelParams};
use mwlink::torus::{component_count, torus_braid, TorusParams};
use mwlink::Rational;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn word(max_strands: usize, max_len: usize) -> impl Strategy<Value = BraidWord> {
    (2..=max_strands).prop_flat_map(move |n| {
        let letter = (1..n as i32, any::<bool>()).prop_map(|(g, pos)| if pos { g } else { -g });
        prop::collection::vec(letter, 0..=max_len).prop_map(move |l| BraidWord::new(n, l).unwrap())
    })
}

fn word_pair(max_strands: usize, max_len: usize) -> impl Strategy<Value = (BraidWord, BraidWord)> {
    (2..=max_strands).prop_flat_map(move |n| {
        let letter = (1..n as i32, any::<bool>()).prop_map(|(g, pos)| if pos { g } else { -g });
        let w = prop::collection::vec(letter.clone(), 0..=max_len);
        let u = prop::collection::vec(letter, 0..=max_len);
        (w, u)
            .prop_map(move |(w, u)| (BraidWord::new(n, w).unwrap(), BraidWord::new(n, u).unwrap()))
    })
}

fn parts() -> impl Strategy<Value = Vec<usize>> {
    prop::collection::vec(1..=3usize, 1..=4)
}

proptest! {
    #[test]
    fn lift_permutation_squares_the_closure_permutation(w in word(8, 30)) {
        let closure = w.concat(&delta(w.strands()).unwrap()).permutation();
        let lifted = lift(&w);
        prop_assert_eq!(lifted.permutation(), closure.then(&closure));
        prop_assert_eq!(lifted.exponent_sum(), 2 * w.exponent_sum());
        prop_assert_eq!(lifted.strands(), w.strands());
    }

    #[test]
    fn exponent_sum_respects_inverse_and_mirror(w in word(8, 30)) {
        prop_assert_eq!(w.inverse().exponent_sum(), -w.exponent_sum());
        prop_assert_eq!(w.mirror().exponent_sum(), -w.exponent_sum());
        prop_assert_eq!(w.tau().exponent_sum(), w.exponent_sum());
    }

    #[test]
    fn signature_is_invariant_under_twisted_conjugation((w, u) in word_pair(6, 12)) {
        let conj = u.concat(&w).concat(&u.tau().inverse());
        prop_assert_eq!(invariant_signature(&conj), invariant_signature(&w));
    }

    #[test]
    fn lifted_linking_entries_are_even(w in word(7, 30)) {
        let m = s3_doubled_linking_matrix(&lift(&w));
        prop_assert!(m.is_valid());
        prop_assert!(m.off_diagonal().iter().all(|x| x % 2 == 0));
    }

    #[test]
    fn projective_linking_parity_matches_classes(w in word(7, 30)) {
        let c = describe_closure(&w);
        let m = rp3_doubled_linking_matrix(&w);
        prop_assert!(m.is_valid());
        for i in 0..m.size() {
            for j in i + 1..m.size() {
                let both_odd = c.component_lengths[i] % 2 == 1 && c.component_lengths[j] % 2 == 1;
                prop_assert_eq!(m.get(i, j).rem_euclid(2) == 1, both_odd);
            }
        }
    }

    #[test]
    fn torus_braids_agree_after_swapping_parameters(p in 1usize..=9, q in 1usize..=9) {
        prop_assume!((p + q) % 2 == 0);
        let a = torus_braid(p, q as i64).unwrap();
        let b = torus_braid(q, p as i64).unwrap();
        prop_assert_eq!(invariant_signature(&a), invariant_signature(&b));
        let t = TorusParams::new(p as i64, q as i64).unwrap();
        prop_assert_eq!(describe_closure(&a).component_count() as i64, component_count(t));
    }

    #[test]
    fn model_links_do_not_depend_on_part_order(parts in parts(), rot in 0usize..4) {
        let mut turned = parts.clone();
        let k = rot % turned.len();
        turned.rotate_left(k);
        let a = verify_model(&ModelParams::new(parts.clone()).unwrap()).unwrap();
        let b = verify_model(&ModelParams::new(turned.clone()).unwrap()).unwrap();
        prop_assert_eq!(&a.actual, &b.actual);
        let (ea, eb) = (expected_invariants(&a.params), expected_invariants(&b.params));
        prop_assert_eq!(ea.total_cr, eb.total_cr);
        let n = parts.len();
        for i in 0..n {
            for j in 0..n {
                prop_assert_eq!(ea.dlk_matrix.get((i + k) % n, (j + k) % n), eb.dlk_matrix.get(i, j));
            }
        }
    }

    #[test]
    fn mirroring_negates_model_linking(parts in parts()) {
        let w = model_braid(&ModelParams::new(parts).unwrap());
        let (m, mm) = (rp3_doubled_linking_matrix(&w), rp3_doubled_linking_matrix(&w.mirror()));
        for (r, s) in m.rows().iter().zip(mm.rows()) {
            for (x, y) in r.iter().zip(s) {
                prop_assert_eq!(*x, -*y);
            }
        }
    }

    #[test]
    fn line_linking_is_symmetric_and_orientation_odd(a in -20i64..20, b in -20i64..20, dy in -5i64..5) {
        prop_assume!(a != b);
        let q = |n: i64| Rational::from_integer(n.into());
        let l1: ProjLine<Rational> = ProjLine::standard(q(a));
        let l2 = ProjLine::affine([q(1), q(dy), q(b)], [q(1), q(b), q(1)]).unwrap();
        match (dlk_lines(&l1, &l2), dlk_lines(&l2, &l1)) {
            (Ok(x), Ok(y)) => {
                prop_assert_eq!(x, y);
                prop_assert_eq!(dlk_lines(&l1.reversed(), &l2).unwrap(), -x);
            }
            (Err(_), Err(_)) => {}
            other => prop_assert!(false, "asymmetric outcome {:?}", other),
        }
    }

    #[test]
    fn positive_charts_preserve_line_linking(seed in any::<u64>(), a in -9i64..9, b in -9i64..9) {
        prop_assume!(a != b);
        let q = |n: i64| Rational::from_integer(n.into());
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let chart = random_chart::<Rational, _>(&mut rng);
        let move_line = |l: &ProjLine<Rational>| {
            l.homogeneous().transformed(&chart).to_proj()
        };
        let (l1, l2) = (ProjLine::standard(q(a)), ProjLine::standard(q(b)));
        let before = dlk_lines(&l1, &l2).unwrap();
        prop_assert_eq!(dlk_lines(&move_line(&l1), &move_line(&l2)).unwrap(), before);
    }
}
