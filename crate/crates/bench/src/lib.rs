//! Fixtures shared by the benchmarks.

use koszulsg::NumericalSemigroup;

/// Quadratic but not Koszul; the Betti table of `K` needs `i = 4`.
pub const NON_KOSZUL: &[u64] = &[12, 14, 15, 16, 18, 19];

/// Quadratic almost complete intersection, not Koszul.
pub const ALMOST_CI: &[u64] = &[11, 13, 14, 15, 19];

/// Not quadratic; `I*` has two quartic generators.
pub const GLUED_QUARTIC: &[u64] = &[10, 12, 18, 21, 27];

pub fn semigroup(gens: &[u64]) -> NumericalSemigroup {
    NumericalSemigroup::new(gens).expect("fixture generators are valid")
}
