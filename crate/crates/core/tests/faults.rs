//! A module with one entry perturbed must fail the relation check.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use qplane_core::algebra::verify_relations;
use qplane_core::cyclotomic::{ComplexApprox, CycNum};
use qplane_core::fixtures;
use qplane_core::lifting::{classify_sector, sectors, LiftingDatum};
use qplane_core::linalg::{CycField, Field, Matrix, MatrixRep};
use qplane_core::reps::{build_sector, NumericOptions};

fn fixture_data() -> Vec<(&'static str, LiftingDatum)> {
    vec![
        ("case_ii", fixtures::z8_case_ii()),
        ("case_iii", fixtures::z8_case_iii()),
        ("case_v", fixtures::z8_case_v()),
        ("case_vi", fixtures::z8_case_vi()),
        ("swap", fixtures::z8_swap()),
        ("z4", fixtures::z4_case_iv()),
        ("repeated", fixtures::z8_repeated_root()),
    ]
}

fn perturb<E: Clone>(rep: &MatrixRep<E>, rng: &mut ChaCha8Rng, bump: impl Fn(&E) -> E) -> MatrixRep<E> {
    let mut out = rep.clone();
    let n = rep.xs.len() + rep.hs.len();
    let k = rng.gen_range(0..n);
    let m: &mut Matrix<E> = if k < rep.xs.len() { &mut out.xs[k] } else { &mut out.hs[k - rep.xs.len()] };
    let (i, j) = (rng.gen_range(0..m.rows()), rng.gen_range(0..m.cols()));
    let v = bump(m.get(i, j));
    m.set(i, j, v);
    out
}

#[test]
fn perturbed_modules_fail() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let opts = NumericOptions::default();
    let nf = opts.field();
    let mut injected = 0;
    for (name, d) in fixture_data() {
        let f = CycField::new(d.group().exponent());
        let one = f.one();
        for s in sectors(&d).unwrap() {
            let sd = classify_sector(&d, &s).unwrap();
            let sr = build_sector(&sd, opts).unwrap();
            for (desc, rep) in &sr.exact {
                assert!(verify_relations(&f, rep, &d, &s.xi).pass);
                for _ in 0..10 {
                    let bad = perturb(rep, &mut rng, |e: &CycNum| e + &one);
                    let r = verify_relations(&f, &bad, &d, &s.xi);
                    assert!(!r.pass, "{name} sector {} eta={}: fault not detected", s.index, desc.eta);
                    injected += 1;
                }
            }
            for fam in &sr.families {
                for root in &fam.roots {
                    let rep = fam.specialize(root);
                    assert!(verify_relations(&nf, &rep, &d, &s.xi).pass);
                    for _ in 0..5 {
                        let eps = ComplexApprox::from_f64(1e-12, 0.0, opts.bits);
                        let bad = perturb(&rep, &mut rng, |e: &ComplexApprox| e.add(&eps));
                        let r = verify_relations(&nf, &bad, &d, &s.xi);
                        assert!(!r.pass, "{name} sector {} family eta={}: fault not detected", s.index, fam.eta);
                        assert!(r.max_residual > 1e-25);
                        injected += 1;
                    }
                }
            }
        }
    }
    assert!(injected > 300);
}

#[test]
fn wrong_sector_character_is_detected() {
    // modules of one sector do not satisfy the other sector's relations
    let d = fixtures::z8_case_iii();
    let secs = sectors(&d).unwrap();
    let f = CycField::new(8);
    let sd = classify_sector(&d, &secs[0]).unwrap();
    let sr = build_sector(&sd, NumericOptions::default()).unwrap();
    for (_, rep) in &sr.exact {
        assert!(!verify_relations(&f, rep, &d, &secs[1].xi).pass);
    }
}
