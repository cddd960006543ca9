use rotshield_core::assignment::max_weight_assignment;
use rotshield_core::attack::Bounds;
use rotshield_core::evaluate::synthetic::non_gaussian_sources;
use rotshield_core::evaluate::{cell_attack_config, cell_key, known_indices, run_sweep_cell};
use rotshield_core::{
    ak_ica_attack, fast_ica, mat_mul, perturb, random_orthogonal, run_figure1_sweep, AttackConfig, Dataset,
    IcaConfig, Matrix, SweepConfig,
};

fn corr(a: &[f64], b: &[f64]) -> f64 {
    let n = a.len() as f64;
    let (ma, mb) = (a.iter().sum::<f64>() / n, b.iter().sum::<f64>() / n);
    let cov: f64 = a.iter().zip(b).map(|(x, y)| (x - ma) * (y - mb)).sum();
    let va: f64 = a.iter().map(|x| (x - ma).powi(2)).sum();
    let vb: f64 = b.iter().map(|y| (y - mb).powi(2)).sum();
    cov / (va * vb).sqrt()
}

fn std_dev(a: &[f64]) -> f64 {
    let n = a.len() as f64;
    let m = a.iter().sum::<f64>() / n;
    (a.iter().map(|x| (x - m).powi(2)).sum::<f64>() / n).sqrt()
}

fn attack_accuracy(x: &Dataset, n: usize, fraction: f64, seed: u64) -> f64 {
    let key = cell_key(seed, n, x.num_records(), x.num_attributes(), false).unwrap();
    let y = perturb(x, &key).unwrap();
    let known = known_indices(x.num_records(), fraction, seed);
    let cfg = cell_attack_config(&AttackConfig::default(), seed);
    let mut report = ak_ica_attack(&y, &x.select_records(&known).unwrap(), &known, &Bounds::from_dataset(x), &cfg).unwrap();
    report.score(x).unwrap()
}

#[test]
fn ica_recovers_rotated_sources() {
    for seed in 0..10u64 {
        let s = non_gaussian_sources(3, 5000, seed).unwrap();
        let mix = random_orthogonal(3, seed + 100).unwrap();
        let y = s.with_values(mix.apply(s.matrix()).unwrap()).unwrap();
        let res = fast_ica(&y, &IcaConfig { seed, ..IcaConfig::default() }).unwrap();
        assert!(res.converged);
        let c = Matrix::from_fn(3, 3, |i, j| corr(s.attribute(i), res.components.row(j)).abs());
        let (perm, _) = max_weight_assignment(&c).unwrap();
        for (i, &j) in perm.iter().enumerate() {
            assert!(c[(i, j)] >= 0.95, "seed {seed}: source {i} corr {}", c[(i, j)]);
        }
        // Unmixing times the true mixing, on unit-variance sources, is a
        // signed permutation.
        let sd: Vec<f64> = (0..3).map(|j| std_dev(s.attribute(j))).collect();
        let p = mat_mul(&res.unmixing, mix.matrix()).unwrap();
        for (i, &j) in perm.iter().enumerate() {
            for r in 0..3 {
                let v = p[(j, r)] * sd[r];
                let target = if r == i { v.signum() } else { 0.0 };
                assert!((v - target).abs() <= 0.05, "seed {seed}: entry ({j}, {r}) = {v}");
            }
        }
    }
}

#[test]
fn rbt_attack_is_effective() {
    let x = non_gaussian_sources(3, 5000, 0).unwrap();
    let mean = (0..10).map(|s| attack_accuracy(&x, 1, 0.1, s)).sum::<f64>() / 10.0;
    assert!(mean >= 0.80, "mean accuracy {mean}");
}

#[test]
fn unrotated_release_is_no_harder() {
    let x = non_gaussian_sources(3, 3000, 5).unwrap();
    for seed in 0..5u64 {
        let known = known_indices(3000, 0.1, seed);
        let cfg = cell_attack_config(&AttackConfig::default(), seed);
        let bounds = Bounds::from_dataset(&x);
        let known_x = x.select_records(&known).unwrap();
        let mut plain = ak_ica_attack(&x, &known_x, &known, &bounds, &cfg).unwrap();
        let plain_acc = plain.score(&x).unwrap();
        let rotated = attack_accuracy(&x, 1, 0.1, seed);
        // Equal up to the ICA stopping tolerance.
        assert!(plain_acc >= rotated - 1e-4, "seed {seed}: {plain_acc} < {rotated}");
    }
}

#[test]
fn sweep_cell_matches_direct_attack_and_is_deterministic() {
    let x = non_gaussian_sources(3, 2000, 3).unwrap();
    let cfg = SweepConfig::new(vec![1, 4], vec![0.1], vec![0, 1]);
    let report = run_figure1_sweep(&x, &cfg).unwrap();
    assert_eq!(report.cells.len(), 4);
    let direct = attack_accuracy(&x, 1, 0.1, 1);
    let cell = report.cells.iter().find(|c| c.n == 1 && c.seed == 1).unwrap();
    assert_eq!(cell.accuracy, direct);
    let cell_again = run_sweep_cell(&x, &Bounds::from_dataset(&x), 1, 0.1, 1, &cfg.attack);
    assert_eq!(&cell_again, cell);

    let again = run_figure1_sweep(&x, &cfg).unwrap();
    assert_eq!(report.to_csv(), again.to_csv());
    assert_eq!(report.summary_json(), again.summary_json());
    assert!(report.to_csv().starts_with("n,fraction,seed,accuracy,converged\n"));
}
