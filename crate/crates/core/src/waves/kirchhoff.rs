//! Generalized Kirchhoff formulas for the biwave, Maxwell and Maxwell–Dirac
//! equations, as retarded potentials differentiated by a bigradient.

use super::kernel::{retarded_integral, sphere_potential, ConeLayerKernel};
use super::{DerivativeRoute, SolveOptions};
use crate::algebra::{Biquaternion, Complex};
use crate::diffops::{bigradient, bigradient_from_partials, derivatives, BqField, Sign};
use crate::{Result, SpacetimePoint};

/// A field given by a fallible closure, e.g. a solver evaluated pointwise.
pub struct ClosureField<F>(pub F);

impl<F> BqField for ClosureField<F>
where
    F: Fn(&SpacetimePoint) -> Result<Biquaternion> + Sync,
{
    fn eval(&self, p: &SpacetimePoint) -> Result<Biquaternion> {
        (self.0)(p)
    }
}

/// `factor·F`.
pub struct ScaledField<'a> {
    pub inner: &'a dyn BqField,
    pub factor: Complex,
}

impl BqField for ScaledField<'_> {
    fn eval(&self, p: &SpacetimePoint) -> Result<Biquaternion> {
        Ok(self.inner.eval(p)? * self.factor)
    }
    fn partials(&self, p: &SpacetimePoint) -> Option<Result<crate::diffops::Partials>> {
        self.inner
            .partials(p)
            .map(|r| r.map(|d| crate::diffops::Partials(d.0.map(|b| b * self.factor))))
    }
    fn support(&self) -> Option<crate::diffops::Support> {
        self.inner.support()
    }
}

/// `W = ∫_{r≤τ} e^{−mr}G(τ−r, x−y)/(4πr) dV + (1/4πτ)∫_{r=τ}K⁰ dS`.
pub fn biwave_potential(
    kernel: &ConeLayerKernel,
    g: &dyn BqField,
    k0: Option<&dyn BqField>,
    p: &SpacetimePoint,
    opts: &SolveOptions,
) -> Result<Biquaternion> {
    let mut w = retarded_integral(kernel, g.support(), p, &opts.quad, &|s| g.eval(s))?;
    if let Some(k0) = k0 {
        w += sphere_potential(k0, p, &opts.quad)?;
    }
    Ok(w)
}

/// `K` solving `∇^sign K = G` for `τ > 0` with `K(0, ·) = K⁰`:
/// `K = ∇^{−sign} W` with `W` from [`biwave_potential`].
pub fn biwave_solve(
    sign: Sign,
    g: &dyn BqField,
    k0: Option<&dyn BqField>,
    p: &SpacetimePoint,
    opts: &SolveOptions,
) -> Result<Biquaternion> {
    md_solve_with_data(Complex::new(0.0, 0.0), sign, g, k0, p, opts)
}

/// `A` solving `∇⁺A + Θ = 0` with `A(0, ·) = A⁰`.
pub fn kirchhoff_maxwell(
    theta: &dyn BqField,
    a0: Option<&dyn BqField>,
    p: &SpacetimePoint,
    opts: &SolveOptions,
) -> Result<Biquaternion> {
    let g = ScaledField { inner: theta, factor: Complex::new(-1.0, 0.0) };
    biwave_solve(Sign::Plus, &g, a0, p, opts)
}

/// `B = (∇^{∓} + m)(ψ_m ∗ F)`, the retarded solution of `(∇^± + m)B = F`.
pub fn md_solve(mass: Complex, sign: Sign, f: &dyn BqField, p: &SpacetimePoint, opts: &SolveOptions) -> Result<Biquaternion> {
    md_solve_with_data(mass, sign, f, None, p, opts)
}

fn md_solve_with_data(
    mass: Complex,
    sign: Sign,
    f: &dyn BqField,
    k0: Option<&dyn BqField>,
    p: &SpacetimePoint,
    opts: &SolveOptions,
) -> Result<Biquaternion> {
    let kernel = ConeLayerKernel::kgfsh(mass);
    let outer = sign.flip();
    let h = opts.fd_step;
    match opts.route {
        DerivativeRoute::FiniteDifference => {
            let potential = ClosureField(|s: &SpacetimePoint| biwave_potential(&kernel, f, k0, s, opts));
            Ok(bigradient(outer, &potential, p, h)? + potential.eval(p)? * mass)
        }
        DerivativeRoute::UnderIntegral => {
            let inside = |s: &SpacetimePoint| -> Result<Biquaternion> {
                let d = derivatives(f, s, h)?;
                Ok(bigradient_from_partials(outer, &d) + f.eval(s)? * mass)
            };
            let mut b = retarded_integral(&kernel, f.support(), p, &opts.quad, &inside)?;
            // Moving the upper limit r = τ contributes the layer at source time 0.
            b += sphere_potential(f, p, &opts.quad)? * (-mass * p.tau).exp();
            if let Some(k0) = k0 {
                let free = ClosureField(|s: &SpacetimePoint| sphere_potential(k0, s, &opts.quad));
                b += bigradient(outer, &free, p, h)? + free.eval(p)? * mass;
            }
            Ok(b)
        }
    }
}

/// `∇^sign K − G` at `p` for the solution of [`biwave_solve`], differentiated with step `h`.
pub fn biwave_residual(
    sign: Sign,
    g: &dyn BqField,
    k0: Option<&dyn BqField>,
    p: &SpacetimePoint,
    opts: &SolveOptions,
    h: f64,
) -> Result<Biquaternion> {
    let k = ClosureField(|s: &SpacetimePoint| biwave_solve(sign, g, k0, s, opts));
    Ok(bigradient(sign, &k, p, h)? - g.eval(p)?)
}

/// `∇⁺A + Θ` at `p` for the solution of [`kirchhoff_maxwell`].
pub fn maxwell_solution_residual(
    theta: &dyn BqField,
    a0: Option<&dyn BqField>,
    p: &SpacetimePoint,
    opts: &SolveOptions,
    h: f64,
) -> Result<Biquaternion> {
    let a = ClosureField(|s: &SpacetimePoint| kirchhoff_maxwell(theta, a0, s, opts));
    Ok(bigradient(Sign::Plus, &a, p, h)? + theta.eval(p)?)
}

/// `(∇^sign + m)B − F` at `p` for the solution of [`md_solve`].
pub fn md_residual(
    mass: Complex,
    sign: Sign,
    f: &dyn BqField,
    p: &SpacetimePoint,
    opts: &SolveOptions,
    h: f64,
) -> Result<Biquaternion> {
    let b = ClosureField(|s: &SpacetimePoint| md_solve(mass, sign, f, s, opts));
    Ok(bigradient(sign, &b, p, h)? + b.eval(p)? * mass - f.eval(p)?)
}
