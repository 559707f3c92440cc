//! Inputs shared by the benchmarks.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use reflexa::{Field, Matrix};

/// A seeded random `rows x cols` matrix with entries in `0..modulus`.
pub fn random_matrix(field: Field, rows: usize, cols: usize, modulus: i64, seed: u64) -> Matrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut m = Matrix::zeros(field, rows, cols);
    for i in 0..rows {
        for j in 0..cols {
            m.set(i, j, field.from_i64(rng.gen_range(0..modulus)));
        }
    }
    m
}
