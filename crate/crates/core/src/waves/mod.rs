//! Fundamental and generalized solutions of the biwave, KGFSh and
//! Maxwell–Dirac equations: cone-layer kernels, retarded potentials,
//! Kirchhoff formulas, time-harmonic solutions and shock-front conditions.

mod harmonic;
mod homogeneous;
mod kernel;
mod kirchhoff;
mod shock;
mod testfn;

#[cfg(test)]
mod tests;

use serde::{Deserialize, Serialize};

pub use harmonic::{harmonic_md_solve, harmonic_residual, spatial_convolve, spatial_convolve_with, HarmonicKernel};
pub use homogeneous::{admits_homogeneous_solutions, homogeneous_solution, HomogeneousField, HomogeneousKind};
pub use kernel::{
    fundamental_biwave, fundamental_biwave_check, kgfsh_distributional_pair, kgfsh_fundamental_pair, pair_cone,
    pair_cone_many, pair_wave_fundamental, retarded_convolve, sphere_potential, wave_distributional_pair,
    ConeLayerKernel,
};
pub use kirchhoff::{
    biwave_potential, biwave_residual, biwave_solve, kirchhoff_maxwell, maxwell_solution_residual, md_residual,
    md_solve, ClosureField, ScaledField,
};
pub use shock::{project_gap, random_admissible_gap, shock_constraint_kernel, shock_gap_check, ShockCheck, ShockGap};
pub use testfn::{Bump, BumpField, SpatialBump, SpatialBumpField, SpatialDensity, TestFunction};

use crate::diffops::DEFAULT_FD_STEP;
use crate::quadrature::QuadratureSpec;

/// How the outer operator reaches the retarded potential.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DerivativeRoute {
    /// Central differences of the evaluated potential.
    #[default]
    FiniteDifference,
    /// Derivatives of the source inside the integral, plus the layer produced
    /// by the moving upper limit `r = τ`.
    UnderIntegral,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolveOptions {
    pub quad: QuadratureSpec,
    pub fd_step: f64,
    pub route: DerivativeRoute,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions { quad: QuadratureSpec::default(), fd_step: DEFAULT_FD_STEP, route: DerivativeRoute::default() }
    }
}

impl SolveOptions {
    pub fn new(quad: QuadratureSpec) -> Self {
        SolveOptions { quad, ..Default::default() }
    }

    pub fn with_route(self, route: DerivativeRoute) -> Self {
        SolveOptions { route, ..self }
    }

    pub fn with_fd_step(self, fd_step: f64) -> Self {
        SolveOptions { fd_step, ..self }
    }
}
