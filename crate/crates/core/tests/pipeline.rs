//! The full pipeline on the reference data, with exhaustive associativity.

use qplane_core::fixtures;
use qplane_core::lifting::Case;
use qplane_core::pipeline::{run, Check, PipelineOptions};

fn opts(cap: usize) -> PipelineOptions {
    PipelineOptions { exhaustive_associativity: cap, ..PipelineOptions::default() }
}

#[test]
fn all_fixtures_pass_every_check() {
    let data = [
        ("case_i", fixtures::z8_case_i()),
        ("case_ii", fixtures::z8_case_ii()),
        ("case_iii", fixtures::z8_case_iii()),
        ("case_v", fixtures::z8_case_v()),
        ("case_vi", fixtures::z8_case_vi()),
        ("swap", fixtures::z8_swap()),
        ("z4", fixtures::z4_case_iv()),
        ("repeated", fixtures::z8_repeated_root()),
        ("rank_one", fixtures::z8_rank_one()),
    ];
    for (name, d) in data {
        let rep = run(&d, &opts(80)).unwrap();
        assert!(!rep.failed(), "{name}: {rep:#?}");
        assert_eq!(rep.idempotents, Check::Pass);
    }
}

#[test]
fn repeated_root_sector_is_exceptional() {
    let rep = run(&fixtures::z8_repeated_root(), &opts(0)).unwrap();
    let vi: Vec<_> = rep.sectors.iter().filter(|s| s.case == Some(Case::VI)).collect();
    assert_eq!(vi.len(), 2);
    for s in vi {
        assert!(s.exceptional);
        assert!(matches!(s.checks.completeness, Check::Skipped(_)));
        assert!(!s.oracle.as_ref().unwrap().semisimple());
    }
}
