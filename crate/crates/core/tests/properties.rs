use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use num_integer::Integer;
use qplane_core::algebra::{analyze, StructureAlgebra};
use qplane_core::cyclotomic::numeric::embed;
use qplane_core::cyclotomic::{ComplexApprox, CycNum, CycloLevel};
use qplane_core::lifting::{classify_sector, random_datum, sectors};
use qplane_core::reps::{build_sector, c_closed, c_recursive, iso_classes, NumericOptions};

fn literal(terms: &[(i64, i64, i64)]) -> String {
    if terms.is_empty() {
        return "0".into();
    }
    let mut out = String::new();
    for (a, b, k) in terms {
        let sign = if *a < 0 {
            "-"
        } else if out.is_empty() {
            ""
        } else {
            "+"
        };
        out.push_str(&format!("{sign}{}/{b}*z^{k}", a.abs()));
    }
    out
}

fn cyc(n: u64) -> impl Strategy<Value = CycNum> {
    prop::collection::vec((-20i64..=20, 1i64..=6, 0i64..(2 * n as i64)), 0..5)
        .prop_map(move |t| CycNum::parse(&CycloLevel::get(n), &literal(&t)).unwrap())
}

fn level_and_pair() -> impl Strategy<Value = (u64, CycNum, CycNum)> {
    (1u64..=24).prop_flat_map(|n| (Just(n), cyc(n), cyc(n)))
}

fn close(a: &ComplexApprox, b: &ComplexApprox) -> bool {
    a.sub(b).abs() < 1e-30
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 1000, ..ProptestConfig::default() })]

    #[test]
    fn embedding_is_a_ring_homomorphism((_n, a, b) in level_and_pair()) {
        let bits = 128;
        let (ea, eb) = (embed(&a, bits), embed(&b, bits));
        prop_assert!(close(&embed(&(&a * &b), bits), &ea.mul(&eb)));
        prop_assert!(close(&embed(&(&a + &b), bits), &ea.add(&eb)));
        prop_assert!(close(&embed(&(&a - &b), bits), &ea.sub(&eb)));
        if let Some(inv) = a.inv() {
            prop_assert!((&inv * &a).is_one());
            let one = embed(&CycNum::one(a.level()), bits);
            prop_assert!(close(&embed(&inv, bits).mul(&ea), &one));
        } else {
            prop_assert!(a.is_zero());
        }
    }
}

fn q_and_scalars() -> impl Strategy<Value = (u64, u64, CycNum, CycNum, CycNum)> {
    (2u64..=12).prop_flat_map(|r| {
        let units: Vec<u64> = (1..r).filter(|k| k.gcd(&r) == 1).collect();
        (Just(r), prop::sample::select(units), cyc(r), cyc(r), cyc(r))
    })
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 300, ..ProptestConfig::default() })]

    #[test]
    fn c_sequence_recursion_closed_form_and_period((r, k, nu, eta12, c0) in q_and_scalars()) {
        let q = CycNum::zeta_pow(&CycloLevel::get(r), k as i64);
        let len = 4 * r as usize;
        let seq = c_recursive(&q, &nu, &eta12, &c0, len);
        for i in 0..=3 * r {
            prop_assert_eq!(&seq[i as usize], &c_closed(&q, &nu, &eta12, &c0, i));
            prop_assert_eq!(&seq[(i + r) as usize], &seq[i as usize]);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 16, ..ProptestConfig::default() })]

    /// `x_i ↦ λ_i x_i` is an isomorphism, so cases, class dimensions and the
    /// oracle's radical are unchanged.
    #[test]
    fn rescaling_preserves_the_decomposition(seed in any::<u64>(), ks in (0i64..24, 0i64..24, 1i64..4, 1i64..4)) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let d = random_datum(&mut rng, 16);
        let lvl = d.level().clone();
        let lambdas = [CycNum::int_zeta(&lvl, ks.2, ks.0), CycNum::int_zeta(&lvl, ks.3, ks.1)];
        let e = d.rescaled(&lambdas).unwrap();
        let opts = NumericOptions::default();
        for (s, t) in sectors(&d).unwrap().iter().zip(sectors(&e).unwrap().iter()) {
            prop_assert_eq!(&s.xi, &t.xi);
            let (sd, td) = (classify_sector(&d, s).unwrap(), classify_sector(&e, t).unwrap());
            prop_assert_eq!(sd.case, td.case);
            let dims = |sd| -> Vec<usize> {
                let sr = build_sector(sd, opts).unwrap();
                let mut v: Vec<usize> = iso_classes(&sr, opts).unwrap().classes.iter().map(|c| c.dim).collect();
                v.sort();
                v
            };
            prop_assert_eq!(dims(&sd), dims(&td));
            if s.dim <= 48 {
                let a = analyze(&StructureAlgebra::build(&d, &s.xi).unwrap()).unwrap();
                let b = analyze(&StructureAlgebra::build(&e, &t.xi).unwrap()).unwrap();
                prop_assert_eq!(a.radical_dim, b.radical_dim);
                prop_assert_eq!(a.simple_count, b.simple_count);
            }
        }
    }
}
