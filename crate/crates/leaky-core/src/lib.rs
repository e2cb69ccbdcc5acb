//! Spectral solvers for two-dimensional Schrödinger operators with singular
//! attractive interactions: −Δ − α δ(x − Γ) for curves and graphs Γ ("leaky
//! wires"), point-interaction Hamiltonians in ℝ² and ℝ³, and the exactly
//! solvable line-plus-points model.
//!
//! The crate is organized around four spectral methods that cross-validate
//! each other:
//!
//! * [`bs_core`] — Birman–Schwinger reduction: −κ² is an eigenvalue of the
//!   Hamiltonian iff the integral operator with kernel
//!   (α/2π)·K₀(κ|γ(s)−γ(s′)|) on Γ has eigenvalue 1. Discretized by a Nyström
//!   scheme with product integration for the logarithmic singularity.
//! * [`krein_points`] — point interactions via the Krein matrix Γ_{α,Y}(iκ);
//!   includes polymer thresholds, polygon isoperimetry, and the point-array
//!   approximation of leaky curves.
//! * [`comparison`] — one-dimensional strong-coupling comparison operators
//!   S_Γ = −d²/ds² − k(s)²/4 with periodic/Dirichlet/Neumann/Floquet/flux
//!   boundary conditions; band structure and magnetic-flux dispersion.
//! * [`line_defect`] — a straight δ-line plus finitely many 2D point
//!   interactions, reduced to an n×n algebraic spectral condition through the
//!   explicit resolvent of the line.
//!
//! Supporting modules: [`greens`] (Macdonald/Bessel kernels, point-interaction
//! thresholds), [`geometry`] (arc-length curves, star graphs, point arrays),
//! [`quad`] (Gauss–Legendre panels and log-singular product integration),
//! [`linalg`] (dense symmetric eigensolver), and [`experiments`] (scripted
//! benchmark anchors with machine-readable reports).
//!
//! Conventions: energies are E = −κ² with κ > 0; `delta-alpha` (α > 0) is the
//! coupling of a codimension-1 δ-interaction, stronger α meaning stronger
//! attraction; `point-alpha` is the 2D/3D point-interaction parameter, where
//! *larger* values mean *weaker* binding.

pub mod bs_core;
pub mod comparison;
pub mod experiments;
pub mod geometry;
pub mod greens;
pub mod krein_points;
pub mod linalg;
pub mod line_defect;
pub mod quad;

pub use bs_core::{BSDiscretization, BoundState, MeshPolicy, SpectralResult};
pub use experiments::{run_anchor, ExperimentReport};
pub use geometry::{ArcCurve, LeakyGraph, PointArray, StarConfig};
pub use greens::Dim;
pub use line_defect::LineDefectConfig;
