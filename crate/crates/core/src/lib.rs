//! Exact computations with simple polytopes, moment-angle manifolds and
//! omnioriented quasitoric manifolds.

pub mod analogous;
pub mod cohomology;
pub mod error;
pub mod integer;
pub mod io;
pub mod moment_angle;
pub mod polytope;
pub mod quasitoric;
pub mod rational;

pub use analogous::{CMatrix, ShiftClass};
pub use cohomology::{ChernNumbers, RingPresentation};
pub use error::{Error, Result};
pub use moment_angle::QuadraticSystem;
pub use polytope::{CombPolytope, HPolytope, HalfSpace, Orientation, Sign, Vertex};
pub use quasitoric::{CharMatrix, KernelLattice, OmniQT};
pub use rational::Rational;
