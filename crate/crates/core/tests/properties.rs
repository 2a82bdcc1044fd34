use diophantine_lab::asymptotics::{predicted_exponent, Exponent};
use diophantine_lab::counting::{applicable_engines, count_brute, count_with, Budget, CountMode, Hypercube};
use diophantine_lab::transforms::{
    apply_transform, compose_rotations, pythagorean_rotation, verify_count_preservation, IntegerAffine, MatrixEntry,
};
use diophantine_lab::{classify, parse_equation, render, EquationClass, EquationKind, Polynomial};
use diophantine_lab::poly::Parity;
use proptest::prelude::*;

fn small_poly(k: usize) -> impl Strategy<Value = Polynomial> {
    let term = (-6i128..=6, prop::collection::vec(0u32..=3, k));
    prop::collection::vec(term, 1..6).prop_map(move |terms| Polynomial::from_terms(k, terms).unwrap())
}

fn diagonal_poly() -> impl Strategy<Value = Polynomial> {
    (2usize..=4, 1u32..=3, -20i128..=20).prop_flat_map(|(k, d, c)| {
        prop::collection::vec(prop_oneof![-3i128..=-1, 1i128..=3], k).prop_map(move |coeffs| {
            let mut terms: Vec<(i128, Vec<u32>)> = coeffs
                .iter()
                .enumerate()
                .map(|(i, &a)| {
                    let mut e = vec![0; k];
                    e[i] = d;
                    (a, e)
                })
                .collect();
            terms.push((c, vec![0; k]));
            Polynomial::from_terms(k, terms).unwrap()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn render_parse_round_trip(p in small_poly(3)) {
        prop_assume!(!p.is_zero());
        let text = render(&p);
        let back = parse_equation(&text).unwrap().with_var_count(3).unwrap();
        prop_assert_eq!(back, p);
    }

    #[test]
    fn parser_is_total(s in "[x0-9^*+= ()a-z-]{0,24}") {
        let _ = parse_equation(&s);
    }

    #[test]
    fn evaluation_is_linear(p in small_poly(3), q in small_poly(3), x in prop::collection::vec(-5i64..=5, 3)) {
        let sum = p.checked_add(&q).unwrap();
        prop_assert_eq!(sum.evaluate(&x).unwrap(), p.evaluate(&x).unwrap() + q.evaluate(&x).unwrap());
        let prod = p.checked_mul(&q).unwrap();
        prop_assert_eq!(prod.evaluate(&x).unwrap(), p.evaluate(&x).unwrap() * q.evaluate(&x).unwrap());
    }

    #[test]
    fn classification_ignores_sign_and_order(p in diagonal_poly()) {
        let neg = p.checked_neg().unwrap();
        prop_assert_eq!(classify(&p).unwrap(), classify(&neg).unwrap());
        let reordered = Polynomial::from_terms(p.var_count(), p.terms().map(|t| (t.coeff, t.exponents)).collect::<Vec<_>>().into_iter().rev()).unwrap();
        prop_assert_eq!(classify(&reordered).unwrap(), classify(&p).unwrap());
        for mode in [CountMode::IntegerBox, CountMode::NaturalOrthant] {
            let a = predicted_exponent(&classify(&p).unwrap(), mode).unwrap();
            let b = predicted_exponent(&classify(&neg).unwrap(), mode).unwrap();
            prop_assert_eq!(a.exponent, b.exponent);
        }
    }

    #[test]
    fn thue_exponent_symmetry(k in 2usize..=12, m in 0usize..=12, half in 1u32..=3, c in prop_oneof![-50i128..=-1, 1i128..=50]) {
        prop_assume!(m <= k);
        let d = 2 * half;
        let cls = |m| EquationClass {
            kind: EquationKind::DiagonalThue,
            degree: d,
            var_count: k,
            pos_count: m,
            constant: c,
            parity: Parity::Even,
        };
        if 0 < m && m < k {
            let a = predicted_exponent(&cls(m), CountMode::IntegerBox).unwrap().exponent;
            let b = predicted_exponent(&cls(k - m), CountMode::IntegerBox).unwrap().exponent;
            prop_assert_eq!(a, b);
            if let Exponent::Value(v) = a {
                prop_assert!(v <= num_rational::Ratio::from_integer((k / 2) as i64));
            }
        }
    }

    #[test]
    fn engines_agree(p in diagonal_poly(), n in 0u64..=6, natural in any::<bool>()) {
        let cube = if natural { Hypercube::natural(n) } else { Hypercube::integer(n) };
        let b = Budget::default();
        let reference = count_brute(&p, cube, &b).unwrap().count;
        for e in applicable_engines(&p) {
            prop_assert_eq!(count_with(&p, cube, e, &b).unwrap().count, reference, "engine {}", e);
        }
    }

    #[test]
    fn counts_are_monotone(p in small_poly(3), n in 0u64..=5) {
        prop_assume!(!p.is_zero());
        let b = Budget::default();
        let small = count_brute(&p, Hypercube::integer(n), &b).unwrap().count;
        let large = count_brute(&p, Hypercube::integer(n + 1), &b).unwrap().count;
        let natural = count_brute(&p, Hypercube::natural(n), &b).unwrap().count;
        prop_assert!(small <= large);
        prop_assert!(natural <= small);
    }

    #[test]
    fn unimodular_maps_biject(p in small_poly(2), a in -2i128..=2, b in -2i128..=2, t in prop::collection::vec(-2i128..=2, 2)) {
        prop_assume!(!p.is_zero() && p.degree() <= 3);
        // [[1, a], [0, 1]] * [[1, 0], [b, 1]] has determinant 1.
        let m = vec![vec![1 + a * b, a], vec![b, 1]];
        let map = IntegerAffine::new(m, t).unwrap();
        let r = verify_count_preservation(&p, &map, Hypercube::integer(4), &Budget::default()).unwrap();
        prop_assert_eq!(r.violations(), 0);
        prop_assert!(r.inflation_bound_holds);
        let back = apply_transform(&p, &map, false).unwrap().polynomial;
        prop_assert_eq!(back.degree(), p.degree());
    }

    #[test]
    fn composed_rotations_stay_proper(specs in prop::collection::vec((0usize..4, 1usize..4, 2u64..=9, 1u64..=8), 0..5)) {
        let blocks: Vec<_> = specs
            .iter()
            .filter(|s| s.3 < s.2)
            .map(|&(i, off, u, v)| ((i, (i + off) % 4), pythagorean_rotation(u, v).unwrap()))
            .collect();
        let m = compose_rotations(&blocks, 4).unwrap();
        prop_assert!(m.is_rational());
        prop_assert!(m.is_proper_rotation().unwrap());
        prop_assert!(m.entries.iter().flatten().all(MatrixEntry::abs_le_one));
    }
}
