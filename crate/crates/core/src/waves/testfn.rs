//! Smooth compactly supported test functions and mollified deltas.

use std::f64::consts::PI;
use std::sync::OnceLock;

use crate::algebra::{Biquaternion, Complex};
use crate::diffops::{BqField, Partials, SpatialField, SpatialPartials, Support};
use crate::quadrature::gauss_legendre_interval;
use crate::{Error, Result, SpacetimePoint};

/// `b(s) = exp(−1/(1−s))` for `s < 1`, else 0, with its first two derivatives.
fn profile(s: f64) -> (f64, f64, f64) {
    if s >= 1.0 {
        return (0.0, 0.0, 0.0);
    }
    let u = 1.0 / (1.0 - s);
    let b = (-u).exp();
    let u2 = u * u;
    (b, -b * u2, b * (u2 * u2 - 2.0 * u2 * u))
}

/// `∫₀¹ r^k b(r²) dr`, by composite Gauss–Legendre.
fn radial_moment(k: i32) -> f64 {
    let panels = 40;
    let mut acc = 0.0;
    for i in 0..panels {
        let a = i as f64 / panels as f64;
        let b = (i + 1) as f64 / panels as f64;
        for (r, w) in gauss_legendre_interval(20, a, b) {
            acc += w * r.powi(k) * profile(r * r).0;
        }
    }
    acc
}

fn unit_ball_mass_3d() -> f64 {
    static M: OnceLock<f64> = OnceLock::new();
    *M.get_or_init(|| 4.0 * PI * radial_moment(2))
}

fn unit_ball_mass_4d() -> f64 {
    static M: OnceLock<f64> = OnceLock::new();
    *M.get_or_init(|| 2.0 * PI * PI * radial_moment(3))
}

/// A real test function on spacetime with analytic derivatives.
pub trait TestFunction: Sync {
    fn value(&self, p: &SpacetimePoint) -> f64;
    /// `[∂τ, ∂₁, ∂₂, ∂₃]`.
    fn gradient(&self, p: &SpacetimePoint) -> [f64; 4];
    fn hessian(&self, p: &SpacetimePoint) -> [[f64; 4]; 4];
    fn support(&self) -> Support;
}

/// `A·b((τ−τ₀)²/R_t² + ‖x−x₀‖²/R_x²)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bump {
    pub tau0: f64,
    pub x0: [f64; 3],
    pub rt: f64,
    pub rx: f64,
    pub amplitude: f64,
}

impl Bump {
    pub fn new(tau0: f64, x0: [f64; 3], rt: f64, rx: f64, amplitude: f64) -> Result<Self> {
        if !(rt > 0.0 && rx > 0.0 && rt.is_finite() && rx.is_finite()) {
            return Err(Error::invalid("bump radii must be positive and finite"));
        }
        if !(tau0.is_finite() && x0.iter().all(|v| v.is_finite()) && amplitude.is_finite()) {
            return Err(Error::invalid("bump parameters must be finite"));
        }
        Ok(Bump { tau0, x0, rt, rx, amplitude })
    }

    /// Unit spacetime integral: a mollified `δ(τ − τ₀)δ(x − x₀)`.
    pub fn normalized(tau0: f64, x0: [f64; 3], rt: f64, rx: f64) -> Result<Self> {
        let mass = unit_ball_mass_4d() * rt * rx.powi(3);
        Bump::new(tau0, x0, rt, rx, 1.0 / mass)
    }

    fn offsets(&self, p: &SpacetimePoint) -> ([f64; 4], [f64; 4]) {
        let c = p.coords();
        let w = [1.0 / (self.rt * self.rt), 1.0 / (self.rx * self.rx), 1.0 / (self.rx * self.rx), 1.0 / (self.rx * self.rx)];
        let center = [self.tau0, self.x0[0], self.x0[1], self.x0[2]];
        (std::array::from_fn(|a| c[a] - center[a]), w)
    }

    fn s(&self, d: &[f64; 4], w: &[f64; 4]) -> f64 {
        (0..4).map(|a| w[a] * d[a] * d[a]).sum()
    }

    /// `∫ φ dτ dV`.
    pub fn integral(&self) -> f64 {
        self.amplitude * unit_ball_mass_4d() * self.rt * self.rx.powi(3)
    }
}

impl TestFunction for Bump {
    fn value(&self, p: &SpacetimePoint) -> f64 {
        let (d, w) = self.offsets(p);
        self.amplitude * profile(self.s(&d, &w)).0
    }

    fn gradient(&self, p: &SpacetimePoint) -> [f64; 4] {
        let (d, w) = self.offsets(p);
        let (_, b1, _) = profile(self.s(&d, &w));
        std::array::from_fn(|a| self.amplitude * b1 * 2.0 * w[a] * d[a])
    }

    fn hessian(&self, p: &SpacetimePoint) -> [[f64; 4]; 4] {
        let (d, w) = self.offsets(p);
        let (_, b1, b2) = profile(self.s(&d, &w));
        std::array::from_fn(|a| {
            std::array::from_fn(|b| {
                let diag = if a == b { 2.0 * w[a] * b1 } else { 0.0 };
                self.amplitude * (b2 * 4.0 * w[a] * d[a] * w[b] * d[b] + diag)
            })
        })
    }

    fn support(&self) -> Support {
        Support { tau: (self.tau0 - self.rt, self.tau0 + self.rt), center: self.x0, radius: self.rx }
    }
}

/// The biquaternion field `C·φ` for a bump `φ`, with exact partials.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BumpField {
    pub bump: Bump,
    pub coeff: Biquaternion,
}

impl BqField for BumpField {
    fn eval(&self, p: &SpacetimePoint) -> Result<Biquaternion> {
        Ok(self.coeff * self.bump.value(p))
    }
    fn partials(&self, p: &SpacetimePoint) -> Option<Result<Partials>> {
        let g = self.bump.gradient(p);
        Some(Ok(Partials(g.map(|v| self.coeff * v))))
    }
    fn support(&self) -> Option<Support> {
        Some(self.bump.support())
    }
}

/// `A·b(‖x−c‖²/R²)` on R³.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpatialBump {
    pub center: [f64; 3],
    pub radius: f64,
    pub amplitude: f64,
}

impl SpatialBump {
    pub fn new(center: [f64; 3], radius: f64, amplitude: f64) -> Result<Self> {
        if !(radius > 0.0 && radius.is_finite()) {
            return Err(Error::invalid("bump radius must be positive and finite"));
        }
        if !(center.iter().all(|v| v.is_finite()) && amplitude.is_finite()) {
            return Err(Error::invalid("bump parameters must be finite"));
        }
        Ok(SpatialBump { center, radius, amplitude })
    }

    /// Unit integral: a mollified `δ(x − c)`.
    pub fn normalized(center: [f64; 3], radius: f64) -> Result<Self> {
        SpatialBump::new(center, radius, 1.0 / (unit_ball_mass_3d() * radius.powi(3)))
    }

    pub fn integral(&self) -> f64 {
        self.amplitude * unit_ball_mass_3d() * self.radius.powi(3)
    }

    fn parts(&self, x: [f64; 3]) -> ([f64; 3], f64, f64) {
        let d = [x[0] - self.center[0], x[1] - self.center[1], x[2] - self.center[2]];
        let w = 1.0 / (self.radius * self.radius);
        (d, w, w * (d[0] * d[0] + d[1] * d[1] + d[2] * d[2]))
    }

    pub fn value(&self, x: [f64; 3]) -> f64 {
        let (_, _, s) = self.parts(x);
        self.amplitude * profile(s).0
    }

    pub fn gradient(&self, x: [f64; 3]) -> [f64; 3] {
        let (d, w, s) = self.parts(x);
        let b1 = profile(s).1;
        d.map(|v| self.amplitude * b1 * 2.0 * w * v)
    }

    pub fn laplacian(&self, x: [f64; 3]) -> f64 {
        let (d, w, s) = self.parts(x);
        let (_, b1, b2) = profile(s);
        let r2 = d[0] * d[0] + d[1] * d[1] + d[2] * d[2];
        self.amplitude * (b2 * 4.0 * w * w * r2 + 6.0 * w * b1)
    }
}

/// The spatial field `C·φ(x)` for a spatial bump `φ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpatialBumpField {
    pub bump: SpatialBump,
    pub coeff: Biquaternion,
}

impl SpatialField for SpatialBumpField {
    fn eval(&self, x: [f64; 3]) -> Result<Biquaternion> {
        Ok(self.coeff * self.bump.value(x))
    }
    fn partials(&self, x: [f64; 3]) -> Option<Result<SpatialPartials>> {
        let g = self.bump.gradient(x);
        Some(Ok(SpatialPartials(g.map(|v| self.coeff * v))))
    }
    fn support(&self) -> Option<([f64; 3], f64)> {
        Some((self.bump.center, self.bump.radius))
    }
}

/// A complex density on R³ with bounded support, used for plane-wave superpositions.
pub trait SpatialDensity: Sync {
    fn eval(&self, xi: [f64; 3]) -> Complex;
    /// `(center, radius)` of a ball containing the support.
    fn support(&self) -> ([f64; 3], f64);
}

impl SpatialDensity for SpatialBump {
    fn eval(&self, xi: [f64; 3]) -> Complex {
        Complex::new(self.value(xi), 0.0)
    }
    fn support(&self) -> ([f64; 3], f64) {
        (self.center, self.radius)
    }
}
