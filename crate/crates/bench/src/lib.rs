//! Inputs shared by the benchmarks.

use filiform_core::{Rational, RationalMatrix};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Sparse integer matrix with entries in `-3..=3` at the given density.
pub fn random_matrix(seed: u64, rows: usize, cols: usize, density: f64) -> RationalMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let rows: Vec<Vec<(usize, Rational)>> = (0..rows)
        .map(|_| {
            let mut row = Vec::new();
            for c in 0..cols {
                let v = rng.gen_range(-3..=3);
                if v != 0 && rng.gen_bool(density) {
                    row.push((c, Rational::from_integer(v)));
                }
            }
            row
        })
        .collect();
    RationalMatrix::from_sparse_rows(cols, rows)
}
