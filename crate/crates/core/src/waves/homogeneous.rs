//! Superpositions of plane waves solving the homogeneous wave and KGFSh equations.

use super::testfn::SpatialDensity;
use crate::algebra::{real, Complex, I};
use crate::diffops::{ScalarField, Sign};
use crate::quadrature::QuadratureSpec;
use crate::{Error, Result, SpacetimePoint};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum HomogeneousKind {
    /// `□ψ₀ = 0`.
    Wave,
    /// `□u + 2m∂τu + m²u = 0`; non-trivial plane-wave solutions need `Re m = 0`.
    Kgfsh { mass: Complex },
}

/// Whether the KGFSh operator with this mass has non-trivial bounded
/// homogeneous solutions; for `Re m ≠ 0` it has only the zero solution.
pub fn admits_homogeneous_solutions(mass: Complex) -> bool {
    mass.re == 0.0
}

/// `e^{−mτ}∫φ(ξ) exp(i((ξ,x) ± ‖ξ‖τ)) dV(ξ)` (`m = 0` for the wave kind).
pub fn homogeneous_solution(
    kind: HomogeneousKind,
    density: &dyn SpatialDensity,
    sign: Sign,
    p: &SpacetimePoint,
    q: &QuadratureSpec,
) -> Result<Complex> {
    let mass = match kind {
        HomogeneousKind::Wave => Complex::new(0.0, 0.0),
        HomogeneousKind::Kgfsh { mass } => {
            if !admits_homogeneous_solutions(mass) {
                return Err(Error::UnsupportedMass {
                    re: mass.re,
                    im: mass.im,
                    reason: "Re m != 0 admits only the trivial homogeneous solution",
                });
            }
            mass
        }
    };
    let (center, radius) = density.support();
    let eval = |q: &QuadratureSpec| -> Result<Complex> {
        let ball = q.ball(radius)?;
        let mut acc = Complex::new(0.0, 0.0);
        for n in &ball.nodes {
            let xi = real::add(center, real::scale(n.dir, n.r));
            let phase = real::dot(xi, p.x) + sign.as_f64() * real::norm(xi) * p.tau;
            acc += density.eval(xi) * (I * phase).exp() * n.weight;
        }
        Ok(acc * (-mass * p.tau).exp())
    };
    let fine = eval(q)?;
    if q.tolerance.is_some() {
        q.check_budget((fine - eval(&q.coarser())?).norm())?;
    }
    Ok(fine)
}

/// [`homogeneous_solution`] as a scalar field, for residual checks.
pub struct HomogeneousField<'a> {
    pub kind: HomogeneousKind,
    pub density: &'a dyn SpatialDensity,
    pub sign: Sign,
    pub quad: QuadratureSpec,
}

impl ScalarField for HomogeneousField<'_> {
    fn eval(&self, p: &SpacetimePoint) -> Result<Complex> {
        homogeneous_solution(self.kind, self.density, self.sign, p, &self.quad)
    }
}
