//! Simple layers on the light cone and their pairings and convolutions.

use std::f64::consts::PI;

use super::testfn::TestFunction;
use crate::algebra::{real, Biquaternion, Complex, I};
use crate::diffops::{BqField, Sign, Support};
use crate::quadrature::QuadratureSpec;
use crate::{Error, Result, SpacetimePoint};

const ZERO: Complex = Complex::new(0.0, 0.0);
const ONE: Complex = Complex::new(1.0, 0.0);

/// `a·e^{−mr}δ(τ−r)/(4πr) + (1−a)·e^{mr}δ(τ+r)/(4πr)`, `r = ‖x‖`.
///
/// This is a fundamental solution of `□ + 2m∂τ + m²` for every `a`; `m = 0`
/// gives the wave-equation kernel.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConeLayerKernel {
    pub mass: Complex,
    /// Weight of the retarded layer.
    pub weight: Complex,
}

impl ConeLayerKernel {
    pub fn wave() -> Self {
        ConeLayerKernel { mass: ZERO, weight: ONE }
    }

    pub fn kgfsh(mass: Complex) -> Self {
        ConeLayerKernel { mass, weight: ONE }
    }

    /// `m = iρ`.
    pub fn oscillating(rho: f64) -> Self {
        Self::kgfsh(Complex::new(0.0, rho))
    }

    pub fn with_weight(self, weight: Complex) -> Self {
        ConeLayerKernel { weight, ..self }
    }

    pub fn is_retarded(&self) -> bool {
        self.weight == ONE
    }

    /// Radial density `e^{−mr}/(4πr)` of the retarded layer.
    pub fn retarded_density(&self, r: f64) -> Complex {
        (-self.mass * r).exp() / (4.0 * PI * r)
    }

    /// Radial density `e^{mr}/(4πr)` of the advanced layer.
    pub fn advanced_density(&self, r: f64) -> Complex {
        (self.mass * r).exp() / (4.0 * PI * r)
    }
}

fn intersect(a: (f64, f64), b: (f64, f64)) -> Option<(f64, f64)> {
    let lo = a.0.max(b.0);
    let hi = a.1.min(b.1);
    (hi > lo).then_some((lo, hi))
}

/// Radii `‖y‖` at which the spatial ball `(center, radius)` can be met.
fn radial_window(center: [f64; 3], radius: f64) -> (f64, f64) {
    let d = real::norm(center);
    ((d - radius).max(0.0), d + radius)
}

/// `Σ_nodes w·g(r, ω)` over the shell `lo ≤ r ≤ hi`, for a vector of outputs.
fn shell_sum(
    q: &QuadratureSpec,
    window: (f64, f64),
    n_out: usize,
    g: &mut dyn FnMut(f64, [f64; 3], &mut [Complex]) -> Result<()>,
) -> Result<Vec<Complex>> {
    let rule = q.shell(window.0, window.1)?;
    let mut acc = vec![ZERO; n_out];
    let mut buf = vec![ZERO; n_out];
    for node in &rule.nodes {
        buf.iter_mut().for_each(|b| *b = ZERO);
        g(node.r, node.dir, &mut buf)?;
        for (a, b) in acc.iter_mut().zip(buf.iter()) {
            *a += b * node.weight;
        }
    }
    Ok(acc)
}

fn max_diff(a: &[Complex], b: &[Complex]) -> f64 {
    a.iter().zip(b.iter()).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

/// Runs `eval` with `q`, and with its coarsening when a tolerance is set.
fn with_budget(
    q: &QuadratureSpec,
    mut eval: impl FnMut(&QuadratureSpec) -> Result<Vec<Complex>>,
) -> Result<Vec<Complex>> {
    let fine = eval(q)?;
    if q.tolerance.is_some() {
        let coarse = eval(&q.coarser())?;
        q.check_budget(max_diff(&fine, &coarse))?;
    }
    Ok(fine)
}

/// `⟨ψ, f⟩` for a vector of scalar functions `f` supported in `support`.
pub fn pair_cone_many(
    kernel: &ConeLayerKernel,
    n_out: usize,
    f: &dyn Fn(&SpacetimePoint, &mut [Complex]),
    support: &Support,
    q: &QuadratureSpec,
) -> Result<Vec<Complex>> {
    let space = radial_window(support.center, support.radius);
    let a = kernel.weight;
    let b = ONE - a;
    with_budget(q, |q| {
        let mut total = vec![ZERO; n_out];
        let mut tmp = vec![ZERO; n_out];
        if a != ZERO {
            if let Some(w) = intersect(space, (support.tau.0, support.tau.1)) {
                let part = shell_sum(q, w, n_out, &mut |r, d, out| {
                    f(&SpacetimePoint::new(r, real::scale(d, r)), &mut tmp);
                    let k = kernel.retarded_density(r);
                    for (o, t) in out.iter_mut().zip(tmp.iter()) {
                        *o = t * k;
                    }
                    Ok(())
                })?;
                total.iter_mut().zip(part).for_each(|(t, p)| *t += a * p);
            }
        }
        if b != ZERO {
            if let Some(w) = intersect(space, (-support.tau.1, -support.tau.0)) {
                let part = shell_sum(q, w, n_out, &mut |r, d, out| {
                    f(&SpacetimePoint::new(-r, real::scale(d, r)), &mut tmp);
                    let k = kernel.advanced_density(r);
                    for (o, t) in out.iter_mut().zip(tmp.iter()) {
                        *o = t * k;
                    }
                    Ok(())
                })?;
                total.iter_mut().zip(part).for_each(|(t, p)| *t += b * p);
            }
        }
        Ok(total)
    })
}

/// `⟨ψ, f⟩` for one scalar function.
pub fn pair_cone(
    kernel: &ConeLayerKernel,
    f: &dyn Fn(&SpacetimePoint) -> Complex,
    support: &Support,
    q: &QuadratureSpec,
) -> Result<Complex> {
    let v = pair_cone_many(kernel, 1, &|p, out| out[0] = f(p), support, q)?;
    Ok(v[0])
}

/// `⟨ψ, φ⟩ = ∫ φ(‖y‖, y)/(4π‖y‖) dV(y)` for the wave kernel.
pub fn pair_wave_fundamental(phi: &dyn TestFunction, q: &QuadratureSpec) -> Result<Complex> {
    kgfsh_fundamental_pair(&ConeLayerKernel::wave(), phi, q)
}

/// `⟨ψ, φ⟩` for any member of the kernel family.
pub fn kgfsh_fundamental_pair(kernel: &ConeLayerKernel, phi: &dyn TestFunction, q: &QuadratureSpec) -> Result<Complex> {
    pair_cone(kernel, &|p| Complex::new(phi.value(p), 0.0), &phi.support(), q)
}

/// `⟨(□ + 2m∂τ + m²)ψ, φ⟩ = ⟨ψ, (□ − 2m∂τ + m²)φ⟩`, which should equal `φ(0)`.
pub fn kgfsh_distributional_pair(kernel: &ConeLayerKernel, phi: &dyn TestFunction, q: &QuadratureSpec) -> Result<Complex> {
    let m = kernel.mass;
    let adjoint = |p: &SpacetimePoint| {
        let h = phi.hessian(p);
        let box_phi = h[0][0] - h[1][1] - h[2][2] - h[3][3];
        let dt = phi.gradient(p)[0];
        Complex::new(box_phi, 0.0) - m * (2.0 * dt) + m * m * phi.value(p)
    };
    pair_cone(kernel, &adjoint, &phi.support(), q)
}

/// `⟨□ψ, φ⟩` for the wave kernel.
pub fn wave_distributional_pair(phi: &dyn TestFunction, q: &QuadratureSpec) -> Result<Complex> {
    kgfsh_distributional_pair(&ConeLayerKernel::wave(), phi, q)
}

/// `⟨Ψ, φ⟩` for `Ψ = ∂τψ ± i grad ψ`, by moving the derivatives onto `φ`.
pub fn fundamental_biwave(sign: Sign, phi: &dyn TestFunction, q: &QuadratureSpec) -> Result<Biquaternion> {
    let m = pair_cone_many(
        &ConeLayerKernel::wave(),
        4,
        &|p, out| {
            let g = phi.gradient(p);
            for (o, v) in out.iter_mut().zip(g) {
                *o = Complex::new(v, 0.0);
            }
        },
        &phi.support(),
        q,
    )?;
    let s = I * sign.as_f64();
    Ok(Biquaternion::from_components([-m[0], -s * m[1], -s * m[2], -s * m[3]]))
}

/// `⟨∇∓Ψ, φ⟩`, which equals `φ(0)` because `∇∓Ψ = □ψ = δ`.
pub fn fundamental_biwave_check(sign: Sign, phi: &dyn TestFunction, q: &QuadratureSpec) -> Result<Biquaternion> {
    // H[a][b] = ⟨ψ, ∂a∂bφ⟩.
    let flat = pair_cone_many(
        &ConeLayerKernel::wave(),
        16,
        &|p, out| {
            let h = phi.hessian(p);
            for a in 0..4 {
                for b in 0..4 {
                    out[4 * a + b] = Complex::new(h[a][b], 0.0);
                }
            }
        },
        &phi.support(),
        q,
    )?;
    let s = I * sign.as_f64();
    // ⟨Ψ, ∂bφ⟩ as a biquaternion.
    let psi_pair = |b: usize| {
        Biquaternion::from_components([
            -flat[b],
            -s * flat[4 + b],
            -s * flat[8 + b],
            -s * flat[12 + b],
        ])
    };
    let mut acc = -psi_pair(0);
    for j in 1..4 {
        acc += (Biquaternion::basis(j) * psi_pair(j)) * s;
    }
    Ok(acc)
}

/// `∫_{r≤τ} e^{−mr} F(τ − r, x − y)/(4πr) dV(y)` at `p = (τ, x)`.
pub fn retarded_convolve(
    kernel: &ConeLayerKernel,
    field: &dyn BqField,
    p: &SpacetimePoint,
    q: &QuadratureSpec,
) -> Result<Biquaternion> {
    retarded_integral(kernel, field.support(), p, q, &|s| field.eval(s))
}

/// Retarded integral of an arbitrary integrand `g(τ − r, x − y)`, restricted
/// to the source support when known.
pub(crate) fn retarded_integral(
    kernel: &ConeLayerKernel,
    support: Option<Support>,
    p: &SpacetimePoint,
    q: &QuadratureSpec,
    g: &dyn Fn(&SpacetimePoint) -> Result<Biquaternion>,
) -> Result<Biquaternion> {
    if !kernel.is_retarded() {
        return Err(Error::UnsupportedBranch { re: kernel.weight.re, im: kernel.weight.im });
    }
    if !(p.tau > 0.0) {
        return Err(Error::NegativeTime(p.tau));
    }
    let mut window = Some((0.0, p.tau));
    if let Some(s) = support {
        let rel = real::sub(p.x, s.center);
        window = window
            .and_then(|w| intersect(w, radial_window(rel, s.radius)))
            .and_then(|w| intersect(w, (p.tau - s.tau.1, p.tau - s.tau.0)));
    }
    let Some(window) = window else {
        return Ok(Biquaternion::ZERO);
    };
    let v = with_budget(q, |q| {
        shell_sum(q, window, 4, &mut |r, d, out| {
            let src = SpacetimePoint::new(p.tau - r, real::sub(p.x, real::scale(d, r)));
            let val = g(&src)? * kernel.retarded_density(r);
            out.copy_from_slice(&val.components());
            Ok(())
        })
    })?;
    Ok(Biquaternion::from_components([v[0], v[1], v[2], v[3]]))
}

/// `(1/4πτ)∫_{‖y‖=τ} F(0, x + y) dS(y) = τ·M_τ[F(0,·)](x)`.
pub fn sphere_potential(field: &dyn BqField, p: &SpacetimePoint, q: &QuadratureSpec) -> Result<Biquaternion> {
    if !(p.tau > 0.0) {
        return Err(Error::NegativeTime(p.tau));
    }
    let rule = q.sphere_rule()?;
    let eval = |rule: &crate::quadrature::SphereRule| -> Result<Biquaternion> {
        let mut acc = Biquaternion::ZERO;
        for (d, w) in rule.points.iter().zip(rule.weights.iter()) {
            let y = real::add(p.x, real::scale(*d, p.tau));
            acc += field.eval(&SpacetimePoint::new(0.0, y))? * *w;
        }
        Ok(acc * (p.tau / (4.0 * PI)))
    };
    let fine = eval(&rule)?;
    if q.tolerance.is_some() {
        let coarse = eval(&q.coarser().sphere_rule()?)?;
        q.check_budget(fine.distance(&coarse))?;
    }
    Ok(fine)
}
