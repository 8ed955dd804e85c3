use proptest::prelude::*;

use ribbontutte::format::{
    parse_ribbon, parse_rpg, parse_vld, serialize_ribbon, serialize_rpg, serialize_vld,
};
use ribbontutte::poly::{subs, Monomial, Polynomial, Var};
use ribbontutte::verify::{random_link, random_ribbon, random_rpg};

const NAMES: [&str; 4] = ["X", "Y", "t", "x_e"];

fn monomial() -> impl Strategy<Value = Monomial> {
    // x_e only gets nonnegative integer powers so it can take any value
    (-8i64..=8, -8i64..=8, -8i64..=8, 0i64..=2).prop_map(|(a, b, c, e)| {
        Monomial::from_factors([
            (Var::new(NAMES[0]), a),
            (Var::new(NAMES[1]), b),
            (Var::new(NAMES[2]), c),
            (Var::new(NAMES[3]), 4 * e),
        ])
    })
}

fn polynomial() -> impl Strategy<Value = Polynomial> {
    prop::collection::vec((-5i64..=5, monomial()), 0..5)
        .prop_map(|terms| terms.into_iter().map(|(c, m)| Polynomial::term(c, m)).sum())
}

proptest! {
    #[test]
    fn ring_axioms(p in polynomial(), q in polynomial(), r in polynomial()) {
        prop_assert_eq!(&(&p + &q) + &r, &p + &(&q + &r));
        prop_assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
        prop_assert_eq!(&p + &q, &q + &p);
        prop_assert_eq!(&p * &q, &q * &p);
        prop_assert_eq!(&p * &(&q + &r), &(&p * &q) + &(&p * &r));
        prop_assert_eq!(&p - &p, Polynomial::zero());
        prop_assert_eq!(&p * &Polynomial::one(), p.clone());
    }

    #[test]
    fn normalized_after_arithmetic(p in polynomial(), q in polynomial()) {
        prop_assert!((&p * &q).is_normalized());
        prop_assert!((&p - &q).is_normalized());
        prop_assert!((&p + &(-&p)).is_zero());
    }

    #[test]
    fn substitution_is_a_ring_map(p in polynomial(), q in polynomial(), k in -3i64..=3) {
        let map = subs(&[
            ("X", Polynomial::var_pow("Y", 2, 1) * Polynomial::var_pow("t", -1, 1)),
            ("Y", Polynomial::var_pow("X", k, 1)),
            ("x_e", "2*Y + t - 1".parse().unwrap()),
        ]);
        let s = |a: &Polynomial| a.substitute_all(&map).unwrap();
        prop_assert_eq!(s(&(&p * &q)), &s(&p) * &s(&q));
        prop_assert_eq!(s(&(&p + &q)), &s(&p) + &s(&q));
    }

    #[test]
    fn print_parse_round_trip(p in polynomial()) {
        let text = p.to_string();
        let back: Polynomial = text.parse().unwrap();
        prop_assert_eq!(back, p);
    }
}

#[test]
fn file_formats_round_trip() {
    for seed in 0..50 {
        let size = seed as usize % 8;
        let r = random_ribbon(seed, size);
        assert_eq!(parse_ribbon(&serialize_ribbon(&r)).unwrap(), r, "ribbon seed {seed}");
        let g = random_rpg(seed, size);
        assert_eq!(parse_rpg(&serialize_rpg(&g)).unwrap(), g, "rpg seed {seed}");
        let l = random_link(seed, size % 6);
        assert_eq!(parse_vld(&serialize_vld(&l)).unwrap(), l, "link seed {seed}");
    }
}

#[test]
fn writhe_ignores_global_reversal() {
    for seed in 0..40 {
        let l = random_link(seed, 1 + seed as usize % 6);
        assert_eq!(l.writhe().unwrap(), l.reversed().writhe().unwrap());
    }
}

#[test]
fn realizations_of_one_code_agree() {
    for seed in 0..30 {
        let code = ribbontutte::verify::random_gauss_code(seed, 1 + seed as usize % 6);
        let a = ribbontutte::links::realize_gauss_code(&code).unwrap();
        let b = ribbontutte::links::realize_gauss_code_with(&code, Some(seed + 100)).unwrap();
        assert_eq!(a.kauffman_bracket().unwrap(), b.kauffman_bracket().unwrap(), "{code}");
        assert_eq!(a.writhe().unwrap(), b.writhe().unwrap(), "{code}");
    }
}
