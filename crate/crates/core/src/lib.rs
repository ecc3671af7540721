//! Relativistic kinematics, dynamics and free wave equations for a world
//! with an invariant maximum speed `c_m` above the speed of light `c`.
//!
//! Boosts and velocity composition keep the Lorentz form with `c` replaced by
//! `c_m`; a particle is labelled by its characteristic mass `m_c = m(c)`;
//! energy and momentum satisfy `E² - p²c_m² = m_c²c_m⁴`. The same relation
//! fixes the dispersion of the Klein–Gordon and Dirac-form wave equations
//! solved in [`wave`].

// `!(x < y)` also rejects NaN
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod collision;
pub mod context;
pub mod dynamics;
pub mod error;
pub mod kinematics;
pub mod particle;
pub mod vector;
pub mod wave;
pub mod xform;

pub use context::{classify_regime, make_context, InvariantSpeedContext, RegimeTag};
pub use error::{Error, Result};
pub use particle::ParticleState;
pub use vector::{FourVector, Vec3, Velocity3};
