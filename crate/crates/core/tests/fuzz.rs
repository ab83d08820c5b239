//! Single-entry rational perturbations of corpus tables never validate.

use chartab::checks::validate;
use chartab::fixtures;
use rand::rngs::StdRng;
use rand::SeedableRng;

mod common;
use common::perturb;

#[test]
fn perturbations_are_rejected() {
    let mut rng = StdRng::seed_from_u64(0x5eed);
    for t in fixtures::corpus() {
        for trial in 0..1000 {
            let bad = perturb(&t, &mut rng);
            let report = validate(&bad);
            assert!(!report.passed, "{} trial {trial} accepted", t.name);
        }
    }
}
