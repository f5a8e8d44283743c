//! Shared inputs for the benchmarks.

use qtoric_core::quasitoric::builders::{cp, cube};
use qtoric_core::quasitoric::sum::add_cobordism;
use qtoric_core::{HPolytope, OmniQT, Result};

/// `Iʳ × Δ(s)`, the polytope families used for vertex enumeration timings.
pub fn prism(r: usize, s: usize) -> Result<HPolytope> {
    HPolytope::cube(r).product(&HPolytope::simplex(s))
}

/// `r[ℂP²] + s[(S²)²]` by repeated box sums.
pub fn m_rs(r: usize, s: usize) -> Result<OmniQT> {
    let mut parts = std::iter::repeat_n(cp(2)?, r).chain(std::iter::repeat_n(cube(2)?, s));
    let first = parts.next().expect("r + s >= 1");
    parts.try_fold(first, |acc, m| add_cobordism(&acc, &m))
}
