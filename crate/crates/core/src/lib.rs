//! Integrable abelian vortices on constant-curvature Riemann surfaces as
//! flat Cartan connections, lifted to vortex configurations on the 3D group
//! manifolds H¹_λ, with numerical verification of every defining identity.
//!
//! The crate is organised bottom-up:
//!
//! * [`scalar`] — forward-mode dual numbers and complex arithmetic;
//! * [`liealg`] — the Lie algebra family Lie(H¹_λ);
//! * [`forms`] — exterior calculus as evaluation procedures (d, ∧, pullback,
//!   curvature);
//! * [`quad`] — adaptive quadrature for fluxes, energies and holonomies;
//! * [`surface`] — constant-curvature surface geometry and the flat Cartan
//!   connection encoding the structure and Gauss equations;
//! * [`group`] — the group manifolds H¹_λ, their left-invariant frame and
//!   Maurer–Cartan structure equations;
//! * [`poly`] — complex polynomials and rational maps;
//! * [`vortex2d`] — the six integrable vortex families built from rational
//!   maps, their residuals, fluxes and energies;
//! * [`vortex3d`] — lifts to the group manifold: bundle maps, flat
//!   connections, extraction, holonomy and descent;
//! * [`extensions`] — the magnetic-mode identity, the symmetric instanton
//!   connection with its anti-self-duality check, and the family duality;
//! * [`report`] — residual bookkeeping shared by the library and the CLI;
//! * [`sample`] — seeded, excision-aware point sampling.

pub mod extensions;
pub mod forms;
pub mod group;
pub mod liealg;
pub mod poly;
pub mod quad;
pub mod report;
pub mod sample;
pub mod scalar;
pub mod surface;
pub mod vortex2d;
pub mod vortex3d;

pub use report::{ResidualEntry, ResidualReport};
