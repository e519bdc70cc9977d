//! Shared fixtures for the solver benchmarks.

use threatval::rational::rat;
use threatval::{PayoffTensor, Rational};

/// The fully mixed 2x2x2 game (minmax 3/4, maxmin 1/2).
pub fn mixed_two() -> PayoffTensor {
    PayoffTensor::from_ints(vec![2, 2, 2], &[0, 1, 1, 1, 1, 1, 1, 0]).unwrap()
}

/// The 3x2x2 game whose minmax value is (3 - sqrt 5)/2.
pub fn golden_three() -> PayoffTensor {
    PayoffTensor::from_ints(vec![3, 2, 2], &[1, 0, 0, 0, 0, 0, 1, 1, 0, 1, 0, 1]).unwrap()
}

/// Deterministic dense 4x10 rational matrix for the zero-sum solver.
pub fn zs_matrix() -> Vec<Vec<Rational>> {
    (0..4)
        .map(|i| {
            (0..10)
                .map(|j| rat((i * 7 + j * 3) % 11 - 5, (i + j) % 3 + 1))
                .collect()
        })
        .collect()
}

/// Deterministic 0-1 4x2x4 game for the coarse-lattice threat solver.
pub fn wide_bully() -> PayoffTensor {
    let data: Vec<i64> = (0..32).map(|i| ((i * 5 + 3) % 7 < 3) as i64).collect();
    PayoffTensor::from_ints(vec![4, 2, 4], &data).unwrap()
}
