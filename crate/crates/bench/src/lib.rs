//! Fixed benchmark inputs shared by the criterion suites.

use cmpcc::fmatrix::{generate, Generator};
use cmpcc::FunctionMatrix;

/// Named matrices at the given arity, in a stable order.
pub fn named_matrices(n: u32) -> Vec<(&'static str, FunctionMatrix)> {
    Generator::ALL
        .into_iter()
        .map(|g| (g.name(), generate(g, n).expect("arity in range")))
        .collect()
}
