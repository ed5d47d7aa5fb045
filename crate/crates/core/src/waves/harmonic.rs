//! Time-harmonic (gradiental) Maxwell–Dirac equation `(κ ± ∇)∘B = F`, `κ = ω + ρ`.

use std::f64::consts::PI;

use super::{DerivativeRoute, SolveOptions};
use crate::algebra::{real, Biquaternion, Complex, I};
use crate::diffops::{gradiental_apply, spatial_derivatives, Sign, SpatialField};
use crate::quadrature::QuadratureSpec;
use crate::{Error, Result};

/// `χ = −[a e^{−ikr} + (1−a) e^{ikr}]/(4πr)`, a fundamental solution of `Δ + k²`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HarmonicKernel {
    pub k: f64,
    /// Weight of the outgoing wave `e^{−ikr}`.
    pub weight: Complex,
}

impl HarmonicKernel {
    pub fn new(k: f64, weight: Complex) -> Result<Self> {
        if k == 0.0 || !k.is_finite() {
            return Err(Error::ZeroWaveNumber);
        }
        Ok(HarmonicKernel { k: k.abs(), weight })
    }

    pub fn value(&self, r: f64) -> Complex {
        let out = (-I * self.k * r).exp();
        let inc = (I * self.k * r).exp();
        -(self.weight * out + (Complex::new(1.0, 0.0) - self.weight) * inc) / (4.0 * PI * r)
    }
}

/// `(χ ∗ g)(x) = ∫χ(‖y‖) g(x − y) dV(y)` for `g` supported in the ball `(c, R)`.
pub fn spatial_convolve_with(
    kernel: &HarmonicKernel,
    support: ([f64; 3], f64),
    x: [f64; 3],
    q: &QuadratureSpec,
    g: &dyn Fn([f64; 3]) -> Result<Biquaternion>,
) -> Result<Biquaternion> {
    let (c, radius) = support;
    let d = real::norm(real::sub(x, c));
    let eval = |q: &QuadratureSpec| -> Result<Biquaternion> {
        let mut acc = Biquaternion::ZERO;
        if d <= 2.0 * radius {
            // Centred on the singularity so that r² cancels 1/r.
            let rule = q.shell((d - radius).max(0.0), d + radius)?;
            for n in &rule.nodes {
                let y = real::scale(n.dir, n.r);
                acc += g(real::sub(x, y))? * (kernel.value(n.r) * n.weight);
            }
        } else {
            // Smooth integrand over the source ball.
            let rule = q.ball(radius)?;
            for n in &rule.nodes {
                let z = real::add(c, real::scale(n.dir, n.r));
                let r = real::norm(real::sub(x, z));
                acc += g(z)? * (kernel.value(r) * n.weight);
            }
        }
        Ok(acc)
    };
    let fine = eval(q)?;
    if q.tolerance.is_some() {
        q.check_budget(fine.distance(&eval(&q.coarser())?))?;
    }
    Ok(fine)
}

pub fn spatial_convolve(
    kernel: &HarmonicKernel,
    f: &dyn SpatialField,
    x: [f64; 3],
    q: &QuadratureSpec,
) -> Result<Biquaternion> {
    let support = f.support().ok_or(Error::UnboundedSupport)?;
    spatial_convolve_with(kernel, support, x, q, &|y| f.eval(y))
}

/// The potential `χ ∗ F` as a spatial field.
struct Potential<'a> {
    kernel: HarmonicKernel,
    f: &'a dyn SpatialField,
    quad: QuadratureSpec,
}

impl SpatialField for Potential<'_> {
    fn eval(&self, x: [f64; 3]) -> Result<Biquaternion> {
        spatial_convolve(&self.kernel, self.f, x, &self.quad)
    }
}

/// `B = ∇^{∓}_κ(χ ∗ F)` with `κ = ω + ρ`, `k = |κ|`, solving `(κ ± ∇)∘B = F`.
/// `ω = 0` is the static equation.
#[allow(clippy::too_many_arguments)]
pub fn harmonic_md_solve(
    omega: f64,
    rho: f64,
    sign: Sign,
    f: &dyn SpatialField,
    x: [f64; 3],
    weight: Complex,
    opts: &SolveOptions,
) -> Result<Biquaternion> {
    let kappa = omega + rho;
    let kernel = HarmonicKernel::new(kappa, weight)?;
    let outer = sign.flip();
    let h = opts.fd_step;
    match opts.route {
        DerivativeRoute::FiniteDifference => {
            let pot = Potential { kernel, f, quad: opts.quad };
            gradiental_apply(kappa, outer, &pot, x, h)
        }
        DerivativeRoute::UnderIntegral => {
            let support = f.support().ok_or(Error::UnboundedSupport)?;
            let inside = |y: [f64; 3]| -> Result<Biquaternion> {
                let d = spatial_derivatives(f, y, h)?;
                let mut grad = Biquaternion::ZERO;
                for j in 0..3 {
                    grad += Biquaternion::basis(j + 1) * d.0[j];
                }
                Ok(f.eval(y)? * kappa + grad * outer.as_f64())
            };
            spatial_convolve_with(&kernel, support, x, &opts.quad, &inside)
        }
    }
}

/// `(κ ± ∇)∘B − F` at `x` for the solution of [`harmonic_md_solve`].
#[allow(clippy::too_many_arguments)]
pub fn harmonic_residual(
    omega: f64,
    rho: f64,
    sign: Sign,
    f: &dyn SpatialField,
    x: [f64; 3],
    weight: Complex,
    opts: &SolveOptions,
    h: f64,
) -> Result<Biquaternion> {
    struct Solution<'a> {
        omega: f64,
        rho: f64,
        sign: Sign,
        f: &'a dyn SpatialField,
        weight: Complex,
        opts: SolveOptions,
    }
    impl SpatialField for Solution<'_> {
        fn eval(&self, x: [f64; 3]) -> Result<Biquaternion> {
            harmonic_md_solve(self.omega, self.rho, self.sign, self.f, x, self.weight, &self.opts)
        }
    }
    let b = Solution { omega, rho, sign, f, weight, opts: *opts };
    Ok(gradiental_apply(omega + rho, sign, &b, x, h)? - f.eval(x)?)
}
