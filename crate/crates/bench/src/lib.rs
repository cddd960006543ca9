//! Fixtures shared by the `rotshield` criterion benches.

use rotshield_core::evaluate::synthetic::non_gaussian_sources;
use rotshield_core::evaluate::{cell_key, known_indices};
use rotshield_core::{perturb, Dataset};

/// Built-in benchmark data: `d` alternating uniform/Laplace attributes.
pub fn sources(d: usize, records: usize) -> Dataset {
    non_gaussian_sources(d, records, 0).expect("synthetic data")
}

/// A release of `x` under `n` parts plus the attacker's known records.
pub struct AttackFixture {
    pub truth: Dataset,
    pub released: Dataset,
    pub known: Dataset,
    pub known_indices: Vec<usize>,
}

pub fn attack_fixture(d: usize, records: usize, n: usize, fraction: f64) -> AttackFixture {
    let truth = sources(d, records);
    let key = cell_key(0, n, records, d, false).expect("key");
    let released = perturb(&truth, &key).expect("perturb");
    let known_indices = known_indices(records, fraction, 0);
    let known = truth.select_records(&known_indices).expect("known records");
    AttackFixture {
        truth,
        released,
        known,
        known_indices,
    }
}
