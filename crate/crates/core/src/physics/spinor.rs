//! Elementary harmonic spinors and spinor fields built from them by
//! convolution and by superposition over directions.

use std::f64::consts::SQRT_2;

use serde::{Deserialize, Serialize};

use crate::algebra::{real, Biquaternion, CVec3, Complex, I};
use crate::diffops::{gradiental_apply, md_operator, BqField, Partials, Sign, SpatialField, SpatialPartials};
use crate::quadrature::{gauss_legendre_interval, QuadratureSpec};
use crate::{Error, Result, SpacetimePoint};

/// Classification of a phase speed against the unit wave speed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SpeedRegime {
    Subsonic,
    Sonic,
    Supersonic,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseSpeed {
    pub value: f64,
    pub regime: SpeedRegime,
}

/// `Sp(τ, x) = e^{i((ξ,x) − ρτ ± ‖ξ‖τ)}(i + ξ̂)/√2`, annihilated by `∇^± + iρ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct XiSpinor {
    pub xi: [f64; 3],
    pub rho: f64,
    pub sign: Sign,
}

impl XiSpinor {
    pub fn new(xi: [f64; 3], rho: f64, sign: Sign) -> Result<Self> {
        if !xi.iter().all(|v| v.is_finite()) || real::norm(xi) == 0.0 {
            return Err(Error::ZeroWaveVector);
        }
        if !rho.is_finite() {
            return Err(Error::invalid("rho must be finite"));
        }
        Ok(XiSpinor { xi, rho, sign })
    }

    fn unit(&self) -> [f64; 3] {
        real::scale(self.xi, 1.0 / real::norm(self.xi))
    }

    /// Coefficient of `τ` in the phase.
    pub fn frequency(&self) -> f64 {
        self.sign.as_f64() * real::norm(self.xi) - self.rho
    }

    /// `(i + ξ̂)/√2`.
    pub fn amplitude(&self) -> Biquaternion {
        Biquaternion::new(I, CVec3::from_real(self.unit())) / SQRT_2
    }

    pub fn at(&self, p: &SpacetimePoint) -> Biquaternion {
        let phase = real::dot(self.xi, p.x) + self.frequency() * p.tau;
        self.amplitude() * (I * phase).exp()
    }

    /// `V = 1 ± ρ/‖ξ‖`.
    pub fn phase_speed(&self) -> PhaseSpeed {
        let value = 1.0 + self.sign.as_f64() * self.rho / real::norm(self.xi);
        let regime = if value < 1.0 {
            SpeedRegime::Subsonic
        } else if value > 1.0 {
            SpeedRegime::Supersonic
        } else {
            SpeedRegime::Sonic
        };
        PhaseSpeed { value, regime }
    }

    /// `Sp∘Sp* = 1 − iξ̂`, the same at every point.
    pub fn energy_impulse(&self) -> Biquaternion {
        let a = self.amplitude();
        a * a.conj()
    }

    /// `(∇^± + iρ)Sp`.
    pub fn dirac_residual(&self, p: &SpacetimePoint, h: f64) -> Result<Biquaternion> {
        md_operator(I * self.rho, self.sign, self, p, h)
    }
}

impl BqField for XiSpinor {
    fn eval(&self, p: &SpacetimePoint) -> Result<Biquaternion> {
        Ok(self.at(p))
    }
    fn partials(&self, p: &SpacetimePoint) -> Option<Result<Partials>> {
        let s = self.at(p);
        let k = [self.frequency(), self.xi[0], self.xi[1], self.xi[2]];
        Some(Ok(Partials(k.map(|k| s * (I * k)))))
    }
}

/// `Ψ₀(x, e) = (κ − ik e)e^{−ik(e,x)}/(k√2)` with `κ = ω + ρ`, `k = |κ|`;
/// annihilated by `∇ − κ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OmegaSpinor {
    pub omega: f64,
    pub rho: f64,
    pub e: [f64; 3],
}

impl OmegaSpinor {
    pub fn new(omega: f64, rho: f64, e: [f64; 3]) -> Result<Self> {
        if !(omega + rho).is_finite() {
            return Err(Error::invalid("omega and rho must be finite"));
        }
        if omega + rho == 0.0 {
            return Err(Error::ZeroWaveNumber);
        }
        if !e.iter().all(|v| v.is_finite()) {
            return Err(Error::InvalidAxis);
        }
        let e = real::normalize(e).ok_or(Error::InvalidAxis)?;
        Ok(OmegaSpinor { omega, rho, e })
    }

    pub fn kappa(&self) -> f64 {
        self.omega + self.rho
    }

    pub fn wave_number(&self) -> f64 {
        self.kappa().abs()
    }

    pub fn amplitude(&self) -> Biquaternion {
        let k = self.wave_number();
        Biquaternion::new(Complex::new(self.kappa(), 0.0), CVec3::from_real(self.e) * (-I * k)) / (k * SQRT_2)
    }

    pub fn at(&self, x: [f64; 3]) -> Biquaternion {
        self.amplitude() * (-I * (self.wave_number() * real::dot(self.e, x))).exp()
    }

    /// `1 − i e sign(ω + ρ)`.
    pub fn energy_impulse(&self) -> Biquaternion {
        let a = self.amplitude();
        a * a.conj()
    }

    /// `(∇ − κ)Ψ₀`.
    pub fn gradiental_residual(&self, x: [f64; 3], h: f64) -> Result<Biquaternion> {
        gradiental_apply(-self.kappa(), Sign::Plus, self, x, h)
    }
}

impl SpatialField for OmegaSpinor {
    fn eval(&self, x: [f64; 3]) -> Result<Biquaternion> {
        Ok(self.at(x))
    }
    fn partials(&self, x: [f64; 3]) -> Option<Result<SpatialPartials>> {
        let s = self.at(x);
        let k = self.wave_number();
        Some(Ok(SpatialPartials(self.e.map(|ej| s * (-I * k * ej)))))
    }
}

fn with_budget(q: &QuadratureSpec, eval: impl Fn(&QuadratureSpec) -> Result<Biquaternion>) -> Result<Biquaternion> {
    let fine = eval(q)?;
    if q.tolerance.is_some() {
        q.check_budget(fine.distance(&eval(&q.coarser())?))?;
    }
    Ok(fine)
}

/// `∫ f(y) dy` over the ball `‖y − center‖ ≤ radius`.
fn ball_integral(
    center: [f64; 3],
    radius: f64,
    q: &QuadratureSpec,
    f: &dyn Fn([f64; 3]) -> Result<Biquaternion>,
) -> Result<Biquaternion> {
    with_budget(q, |q| {
        let mut acc = Biquaternion::ZERO;
        for n in &q.ball(radius)?.nodes {
            acc += f(real::add(center, real::scale(n.dir, n.r)))? * n.weight;
        }
        Ok(acc)
    })
}

/// `(Sp ∗ C)(p) = ∫ Sp(p − y)∘C(y) dy` over the support of `C`.
pub fn spinor_field_convolve(
    c: &dyn BqField,
    base: &XiSpinor,
    p: &SpacetimePoint,
    q: &QuadratureSpec,
) -> Result<Biquaternion> {
    let s = c.support().ok_or(Error::UnboundedSupport)?;
    with_budget(q, |q| {
        let rule = q.ball(s.radius)?;
        let mut acc = Biquaternion::ZERO;
        for (t, wt) in gauss_legendre_interval(q.n_r, s.tau.0, s.tau.1) {
            for n in &rule.nodes {
                let y = SpacetimePoint::new(t, real::add(s.center, real::scale(n.dir, n.r)));
                let shifted = SpacetimePoint::new(p.tau - t, real::sub(p.x, y.x));
                acc += base.at(&shifted) * c.eval(&y)? * (wt * n.weight);
            }
        }
        Ok(acc)
    })
}

/// `(Ψ₀ ∗ C)(x) = ∫ Ψ₀(x − y)∘C(y) dy` over the support of `C`.
pub fn harmonic_spinor_convolve(
    c: &dyn SpatialField,
    base: &OmegaSpinor,
    x: [f64; 3],
    q: &QuadratureSpec,
) -> Result<Biquaternion> {
    let (center, radius) = c.support().ok_or(Error::UnboundedSupport)?;
    ball_integral(center, radius, q, &|y| Ok(base.at(real::sub(x, y)) * c.eval(y)?))
}

/// `N(x) = ∫_{‖e‖=1} p(e)Ψ₀^{ω+ρ}(x, e) dS(e)`, convolved with `C` when given.
/// `ω = 0` gives the static fields.
pub fn nonoriented_spinor_field(
    density: &(dyn Fn([f64; 3]) -> f64 + Sync),
    omega: f64,
    rho: f64,
    c: Option<&dyn SpatialField>,
    x: [f64; 3],
    q: &QuadratureSpec,
) -> Result<Biquaternion> {
    OmegaSpinor::new(omega, rho, [1.0, 0.0, 0.0])?;
    let rule = q.sphere_rule()?;
    let superposed = |x: [f64; 3]| -> Result<Biquaternion> {
        let mut acc = Biquaternion::ZERO;
        for (e, w) in rule.points.iter().zip(&rule.weights) {
            let pe = density(*e);
            if pe != 0.0 {
                acc += OmegaSpinor { omega, rho, e: *e }.at(x) * (pe * w);
            }
        }
        Ok(acc)
    };
    match c {
        None => superposed(x),
        Some(c) => {
            let (center, radius) = c.support().ok_or(Error::UnboundedSupport)?;
            ball_integral(center, radius, q, &|y| Ok(superposed(real::sub(x, y))? * c.eval(y)?))
        }
    }
}

/// Direction-superposed spinor as a spatial field.
pub struct NonorientedField<'a> {
    pub density: &'a (dyn Fn([f64; 3]) -> f64 + Sync),
    pub omega: f64,
    pub rho: f64,
    pub quad: QuadratureSpec,
}

impl SpatialField for NonorientedField<'_> {
    fn eval(&self, x: [f64; 3]) -> Result<Biquaternion> {
        nonoriented_spinor_field(self.density, self.omega, self.rho, None, x, &self.quad)
    }
}
