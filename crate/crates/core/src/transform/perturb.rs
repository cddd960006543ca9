use crate::error::{Error, Result};
use crate::linalg::{Matrix, RotationMatrix};

use super::{Dataset, Partitioning, PerturbationKey};

/// Rotates each part of `x` with the rotation the key derives for it.
///
/// The dataset's unit-normalized flag must agree with the key: a key created
/// for normalized data refuses raw data and vice versa.
pub fn perturb(x: &Dataset, key: &PerturbationKey) -> Result<Dataset> {
    check_key(x, key)?;
    perturb_with(x, key.partitioning(), |i| key.rotation(i))
}

/// Applies `rotation_for(part)` to every record in that part.
pub fn perturb_with(
    x: &Dataset,
    partitioning: &Partitioning,
    mut rotation_for: impl FnMut(usize) -> Result<RotationMatrix>,
) -> Result<Dataset> {
    if partitioning.num_records() != x.num_records() {
        return Err(Error::PartitionMismatch(format!(
            "partitioning covers {} records, dataset has {}",
            partitioning.num_records(),
            x.num_records()
        )));
    }
    let mut out = Matrix::zeros(x.num_attributes(), x.num_records());
    for (i, range) in partitioning.parts().enumerate() {
        let rotation = rotation_for(i)?;
        if rotation.dim() != x.num_attributes() {
            return Err(Error::DimensionMismatch {
                op: "perturb",
                left: (rotation.dim(), rotation.dim()),
                right: x.shape(),
            });
        }
        let start = range.start;
        let block = rotation.apply(&x.matrix().columns(range))?;
        out.set_columns(start, &block);
    }
    Ok(x.with_values(out)?.with_flag(x.is_unit_normalized()))
}

/// Owner-side inverse of [`perturb`]: applies each part's transposed rotation.
pub fn invert(y: &Dataset, key: &PerturbationKey) -> Result<Dataset> {
    check_key(y, key)?;
    perturb_with(y, key.partitioning(), |i| Ok(key.rotation(i)?.transpose()))
}

fn check_key(x: &Dataset, key: &PerturbationKey) -> Result<()> {
    if key.dim() != x.num_attributes() {
        return Err(Error::DimensionMismatch {
            op: "perturb",
            left: (key.dim(), key.dim()),
            right: x.shape(),
        });
    }
    if key.partitioning().num_records() != x.num_records() {
        return Err(Error::PartitionMismatch(format!(
            "key covers {} records, dataset has {}",
            key.partitioning().num_records(),
            x.num_records()
        )));
    }
    if key.normalization_applied() != x.is_unit_normalized() {
        return Err(Error::InvalidInput(format!(
            "key expects normalization_applied = {}, dataset unit flag is {}",
            key.normalization_applied(),
            x.is_unit_normalized()
        )));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::seeded_rng;
    use crate::transform::{make_partitioning, normalize_to_unit};
    use rand_distr::{Distribution, StandardNormal};

    fn unit_data(d: usize, n: usize, seed: u64) -> Dataset {
        let mut rng = seeded_rng(seed);
        let m = Matrix::from_fn(d, n, |_, _| StandardNormal.sample(&mut rng));
        normalize_to_unit(&Dataset::new(m).unwrap()).unwrap().0
    }

    fn pairwise(x: &Dataset) -> Matrix {
        let n = x.num_records();
        Matrix::from_fn(n, n, |a, b| {
            let (ra, rb) = (x.record(a), x.record(b));
            ra.iter().zip(&rb).map(|(u, v)| (u - v).powi(2)).sum::<f64>().sqrt()
        })
    }

    #[test]
    fn identity_rotation_is_noop() {
        let x = unit_data(4, 30, 1);
        let p = make_partitioning(30, 1).unwrap();
        let y = perturb_with(&x, &p, |_| Ok(RotationMatrix::identity(4))).unwrap();
        assert_eq!(y, x);
    }

    #[test]
    fn outputs_stay_unit() {
        let x = unit_data(5, 101, 2);
        let key = PerturbationKey::new(3, make_partitioning(101, 4).unwrap(), 5, true).unwrap();
        let y = perturb(&x, &key).unwrap();
        assert!(y.is_unit_normalized());
        for j in 0..y.num_records() {
            assert!((y.record_norm(j) - 1.0).abs() <= 1e-10);
        }
    }

    #[test]
    fn single_part_preserves_distance_matrix() {
        let x = unit_data(3, 60, 3);
        let key = PerturbationKey::new(11, make_partitioning(60, 1).unwrap(), 3, true).unwrap();
        let y = perturb(&x, &key).unwrap();
        let diff = pairwise(&y).sub(&pairwise(&x)).unwrap().max_abs();
        assert!(diff <= 1e-10, "max deviation {diff}");
    }

    #[test]
    fn inversion_round_trip() {
        let x = unit_data(6, 77, 4);
        let key = PerturbationKey::new(5, make_partitioning(77, 5).unwrap(), 6, true).unwrap();
        let back = invert(&perturb(&x, &key).unwrap(), &key).unwrap();
        assert!(back.matrix().sub(x.matrix()).unwrap().max_abs() <= 1e-10);
    }

    #[test]
    fn key_mismatches() {
        let x = unit_data(3, 10, 5);
        let wrong_dim = PerturbationKey::new(1, make_partitioning(10, 2).unwrap(), 4, true).unwrap();
        assert!(matches!(perturb(&x, &wrong_dim), Err(Error::DimensionMismatch { .. })));
        let wrong_n = PerturbationKey::new(1, make_partitioning(12, 2).unwrap(), 3, true).unwrap();
        assert!(matches!(perturb(&x, &wrong_n), Err(Error::PartitionMismatch(_))));
        let raw_key = PerturbationKey::new(1, make_partitioning(10, 2).unwrap(), 3, false).unwrap();
        assert!(perturb(&x, &raw_key).is_err());
    }

    #[test]
    fn deterministic_in_key() {
        let x = unit_data(3, 40, 6);
        let key = PerturbationKey::new(42, make_partitioning(40, 3).unwrap(), 3, true).unwrap();
        let a = perturb(&x, &key).unwrap();
        let b = perturb(&x, &key).unwrap();
        assert_eq!(a.matrix().as_slice(), b.matrix().as_slice());
    }
}
