//! The moment-angle complex `Z_P` as the intersection of `m - n` real
//! quadrics in `ℂ^m`, with numerical verification of samples.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::analogous::c_matrix;
use crate::error::{Error, Result};
use crate::polytope::HPolytope;
use crate::rational::{self, Rational};

pub const RESIDUAL_TOLERANCE: f64 = 1e-9;
pub const SINGULAR_VALUE_CUTOFF: f64 = 1e-8;

/// `Σ_k coeffs[k] |z_k|² = constant`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quadric {
    pub coeffs: Vec<Rational>,
    pub constant: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadraticSystem {
    pub num_complex_vars: usize,
    pub equations: Vec<Quadric>,
}

impl QuadraticSystem {
    /// Real dimension of the solution set: `2m - (m - n)`.
    pub fn dimension(&self) -> usize {
        2 * self.num_complex_vars - self.equations.len()
    }

    /// Largest relative residual over all equations.
    pub fn residual(&self, z: &[Complex64]) -> f64 {
        self.equations
            .iter()
            .map(|eq| {
                let coeffs: Vec<f64> = eq.coeffs.iter().map(rational::to_f64).collect();
                let lhs: f64 = coeffs.iter().zip(z).map(|(c, zk)| c * zk.norm_sqr()).sum();
                let scale: f64 = coeffs.iter().zip(z).map(|(c, zk)| c.abs() * zk.norm_sqr()).sum();
                let k = rational::to_f64(&eq.constant);
                (lhs - k).abs() / 1f64.max(k.abs()).max(scale)
            })
            .fold(0.0, f64::max)
    }

    /// Gradient rows `2(c_{j,1} q_1, c_{j,1} r_1, …)` in `ℝ^{2m}`.
    pub fn gradient(&self, z: &[Complex64]) -> DMatrix<f64> {
        let m = self.num_complex_vars;
        DMatrix::from_fn(self.equations.len(), 2 * m, |j, col| {
            let c = rational::to_f64(&self.equations[j].coeffs[col / 2]);
            let coord = if col % 2 == 0 { z[col / 2].re } else { z[col / 2].im };
            2.0 * c * coord
        })
    }
}

pub fn quadratic_system(p: &HPolytope) -> Result<QuadraticSystem> {
    let c = c_matrix(p)?;
    let b = p.offsets();
    let equations = c.entries.into_iter().map(|coeffs| Quadric { constant: rational::dot(&coeffs, &b), coeffs }).collect();
    Ok(QuadraticSystem { num_complex_vars: p.num_facets(), equations })
}

/// The point `z_k = sqrt(y_k) e^{iθ_k}` over `x`, where `y = A_P x + b_P`.
pub fn sample_point(p: &HPolytope, x: &[Rational], angles: &[f64]) -> Result<Vec<Complex64>> {
    if !p.contains(x) {
        return Err(Error::NotInPolytope);
    }
    if angles.len() != p.num_facets() {
        return Err(Error::DimensionMismatch(format!("{} angles for {} coordinates", angles.len(), p.num_facets())));
    }
    Ok(p.embed(x).iter().zip(angles).map(|(y, &t)| Complex64::from_polar(rational::to_f64(y).sqrt(), t)).collect())
}

#[derive(Clone, Debug, PartialEq)]
pub struct RankReport {
    pub rank: usize,
    pub expected: usize,
    pub residual: f64,
    pub singular_values: Vec<f64>,
}

impl RankReport {
    pub fn full(&self) -> bool {
        self.rank == self.expected
    }
}

pub fn jacobian_rank(system: &QuadraticSystem, z: &[Complex64]) -> Result<RankReport> {
    if z.len() != system.num_complex_vars {
        return Err(Error::DimensionMismatch(format!("point has {} coordinates, expected {}", z.len(), system.num_complex_vars)));
    }
    let residual = system.residual(z);
    if residual.is_nan() || residual >= RESIDUAL_TOLERANCE {
        return Err(Error::NotOnVariety(residual));
    }
    let mut singular_values: Vec<f64> = system.gradient(z).singular_values().iter().copied().collect();
    singular_values.sort_by(|a, b| b.total_cmp(a));
    let rank = singular_values.iter().filter(|&&s| s > SINGULAR_VALUE_CUTOFF).count();
    Ok(RankReport { rank, expected: system.equations.len(), residual, singular_values })
}

/// Uniformly random points of `P` on a grid of step `2^-20` in the vertex
/// bounding box, by rejection. Small denominators keep the exact containment
/// test cheap.
pub fn random_points(p: &HPolytope, count: usize, rng: &mut ChaCha8Rng) -> Vec<Vec<Rational>> {
    const GRID: i64 = 1 << 20;
    let (lo, hi) = p.bounding_box();
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let x: Vec<Rational> = lo
            .iter()
            .zip(&hi)
            .map(|(a, b)| a + (b - a) * rational::ratio(rng.random_range(0..=GRID), GRID))
            .collect();
        if p.contains(&x) {
            out.push(x);
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq)]
pub struct SampleReport {
    pub samples: usize,
    pub max_residual: f64,
    pub min_rank: usize,
    pub expected_rank: usize,
    pub failures: usize,
}

impl SampleReport {
    pub fn passed(&self) -> bool {
        self.failures == 0 && self.min_rank == self.expected_rank && self.max_residual < RESIDUAL_TOLERANCE
    }
}

/// Samples `count` random points of `Z_P` (plus one point over every vertex)
/// and checks residuals and the rank of the gradient matrix.
pub fn verify_samples(p: &HPolytope, count: usize, seed: u64) -> Result<SampleReport> {
    let system = quadratic_system(p)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut points = random_points(p, count, &mut rng);
    points.extend(p.vertices().iter().map(|v| v.point.clone()));
    let expected_rank = system.equations.len();
    let mut report = SampleReport { samples: points.len(), max_residual: 0.0, min_rank: expected_rank, expected_rank, failures: 0 };
    for x in points {
        let angles: Vec<f64> = (0..p.num_facets()).map(|_| rng.random_range(0.0..std::f64::consts::TAU)).collect();
        let z = sample_point(p, &x, &angles)?;
        match jacobian_rank(&system, &z) {
            Ok(r) => {
                report.max_residual = report.max_residual.max(r.residual);
                report.min_rank = report.min_rank.min(r.rank);
                if !r.full() {
                    report.failures += 1;
                }
            }
            Err(Error::NotOnVariety(res)) => {
                report.max_residual = report.max_residual.max(res);
                report.failures += 1;
            }
            Err(e) => return Err(e),
        }
    }
    Ok(report)
}
