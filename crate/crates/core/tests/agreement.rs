//! Builders against the oracle on random data: every check of the pipeline
//! must pass in every sector small enough for the oracle.

use std::collections::BTreeSet;

use qplane_core::lifting::{random_datum, sectors};
use qplane_core::pipeline::{analyze_sector, PipelineOptions};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn random_sectors_pass_every_check() {
    let opts =
        PipelineOptions { exhaustive_associativity: 0, associativity_samples: 300, ..PipelineOptions::default() };
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut seen = BTreeSet::new();
    let mut checked = 0;
    for _ in 0..300 {
        let d = random_datum(&mut rng, 24);
        for s in sectors(&d).unwrap() {
            if s.dim > 100 {
                continue;
            }
            let r = analyze_sector(&d, &s, &opts).unwrap();
            let failures: Vec<_> = r.checks.all().into_iter().filter(|(_, c)| c.failed()).collect();
            assert!(
                failures.is_empty(),
                "group {:?} g {} {} chi {} {} sector {}: {failures:?}",
                d.group().invariant_factors(),
                d.g(0),
                d.g(1),
                d.chi(0),
                d.chi(1),
                s.index
            );
            seen.insert(r.case.unwrap().name());
            checked += 1;
        }
    }
    assert!(checked >= 100, "only {checked} sectors checked");
    assert_eq!(seen.len(), 6, "cases covered: {seen:?}");
}
