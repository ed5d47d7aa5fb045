//! Maxwell's equations in biquaternionic form: `∇⁺A + Θ = 0` with the
//! intensity `A = √ε E + i√μ H` and charge-current `Θ = iρ + J`.

use rand::Rng;

use crate::algebra::{real, Biquaternion, CVec3, Complex, I};
use crate::diffops::{bigradient, BqField, ScalarAsBq, ScalarField, Sign};
use crate::waves::shock_constraint_kernel;
use crate::{Error, Result, SpacetimePoint};

pub type VectorFn<'a> = Box<dyn Fn(&SpacetimePoint) -> [f64; 3] + Send + Sync + 'a>;
pub type ScalarFn<'a> = Box<dyn Fn(&SpacetimePoint) -> f64 + Send + Sync + 'a>;

/// Constant permittivity and permeability.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Medium {
    pub eps: f64,
    pub mu: f64,
}

impl Medium {
    pub const VACUUM: Medium = Medium { eps: 1.0, mu: 1.0 };

    pub fn new(eps: f64, mu: f64) -> Result<Self> {
        let ok = |v: f64| v.is_finite() && v > 0.0;
        if !ok(eps) || !ok(mu) {
            return Err(Error::invalid(format!("medium needs finite eps, mu > 0 (got {eps}, {mu})")));
        }
        Ok(Medium { eps, mu })
    }

    /// `c = 1/√(εμ)`.
    pub fn speed(&self) -> f64 {
        1.0 / (self.eps * self.mu).sqrt()
    }
}

/// `√ε E + i√μ H` for real field values.
pub fn intensity_from_values(e: [f64; 3], h: [f64; 3], medium: &Medium) -> Biquaternion {
    let (se, sm) = (medium.eps.sqrt(), medium.mu.sqrt());
    Biquaternion::from_vector(CVec3::from_parts(real::scale(e, se), real::scale(h, sm)))
}

/// `(E, H)` recovered from an intensity (or a gap of one): `Re/√ε`, `Im/√μ`.
pub fn fields_from_intensity(a: &Biquaternion, medium: &Medium) -> ([f64; 3], [f64; 3]) {
    (
        real::scale(a.vector.re(), 1.0 / medium.eps.sqrt()),
        real::scale(a.vector.im(), 1.0 / medium.mu.sqrt()),
    )
}

/// Real electric and magnetic fields in a medium.
pub struct EMField<'a> {
    e: VectorFn<'a>,
    h: VectorFn<'a>,
    pub medium: Medium,
}

impl<'a> EMField<'a> {
    pub fn new(
        e: impl Fn(&SpacetimePoint) -> [f64; 3] + Send + Sync + 'a,
        h: impl Fn(&SpacetimePoint) -> [f64; 3] + Send + Sync + 'a,
        medium: Medium,
    ) -> Self {
        EMField { e: Box::new(e), h: Box::new(h), medium }
    }

    pub fn e(&self, p: &SpacetimePoint) -> [f64; 3] {
        (self.e)(p)
    }

    pub fn h(&self, p: &SpacetimePoint) -> [f64; 3] {
        (self.h)(p)
    }

    pub fn energy(&self, p: &SpacetimePoint) -> Result<EmEnergy> {
        Ok(em_energy(&intensity_bq(self, p)?, &self.medium))
    }
}

/// `A(p) = √ε E + i√μ H`; non-finite field values are rejected.
pub fn intensity_bq(em: &EMField<'_>, p: &SpacetimePoint) -> Result<Biquaternion> {
    let a = intensity_from_values(em.e(p), em.h(p), &em.medium);
    if !a.is_finite() {
        return Err(Error::invalid(format!("non-finite EM field at {p:?}")));
    }
    Ok(a)
}

impl BqField for EMField<'_> {
    fn eval(&self, p: &SpacetimePoint) -> Result<Biquaternion> {
        intensity_bq(self, p)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EmEnergy {
    /// `½(ε‖E‖² + μ‖H‖²)`.
    pub energy: f64,
    /// `c⁻¹ E×H`, read off as `Im ½[Ā, A]`.
    pub poynting: [f64; 3],
}

pub fn em_energy(a: &Biquaternion, _medium: &Medium) -> EmEnergy {
    // The ring commutator is twice the vector product.
    let cross = a.complex_conj().commutator(a) * 0.5;
    EmEnergy { energy: a.energy_impulse().energy, poynting: (cross * 0.5).vector.im() }
}

/// Charge density `ρ_E` and current density `j_E`.
pub struct ChargeCurrent<'a> {
    rho: ScalarFn<'a>,
    j: VectorFn<'a>,
}

impl<'a> ChargeCurrent<'a> {
    pub fn new(
        rho: impl Fn(&SpacetimePoint) -> f64 + Send + Sync + 'a,
        j: impl Fn(&SpacetimePoint) -> [f64; 3] + Send + Sync + 'a,
    ) -> Self {
        ChargeCurrent { rho: Box::new(rho), j: Box::new(j) }
    }

    pub fn vacuum() -> Self {
        ChargeCurrent::new(|_| 0.0, |_| [0.0; 3])
    }
}

/// `Θ = iρ_E/√ε + √μ j_E`.
pub fn charge_current_bq(cc: &ChargeCurrent<'_>, medium: &Medium, p: &SpacetimePoint) -> Biquaternion {
    let rho = (cc.rho)(p) / medium.eps.sqrt();
    let j = real::scale((cc.j)(p), medium.mu.sqrt());
    Biquaternion::new(I * rho, CVec3::from_real(j))
}

/// `Θ` as a field.
pub struct ChargeCurrentField<'a> {
    pub cc: ChargeCurrent<'a>,
    pub medium: Medium,
}

impl BqField for ChargeCurrentField<'_> {
    fn eval(&self, p: &SpacetimePoint) -> Result<Biquaternion> {
        Ok(charge_current_bq(&self.cc, &self.medium, p))
    }
}

/// Scalar and vector parts of a Maxwell residual.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MaxwellResidual {
    pub scalar: Complex,
    pub vector: CVec3,
}

/// The four real equations hidden in a Maxwell residual.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HamiltonSplit {
    /// `√μ div H`.
    pub magnetic_gauss: f64,
    /// `ρ − √ε div E`.
    pub electric_gauss: f64,
    /// `√ε ∂τE − √μ rot H + √μ j`.
    pub ampere: [f64; 3],
    /// `√μ ∂τH + √ε rot E`.
    pub faraday: [f64; 3],
}

impl MaxwellResidual {
    fn from_bq(b: Biquaternion) -> Self {
        MaxwellResidual { scalar: b.scalar, vector: b.vector }
    }

    pub fn to_bq(&self) -> Biquaternion {
        Biquaternion::new(self.scalar, self.vector)
    }

    pub fn max_abs(&self) -> f64 {
        (0..3).map(|j| self.vector[j].norm()).fold(self.scalar.norm(), f64::max)
    }

    pub fn split(&self) -> HamiltonSplit {
        HamiltonSplit {
            magnetic_gauss: self.scalar.re,
            electric_gauss: self.scalar.im,
            ampere: self.vector.re(),
            faraday: self.vector.im(),
        }
    }
}

/// `∇⁺A + Θ`, or with a given scalar field `a` the residual of the modified
/// system `∂τA + i rot A + J = grad a`, `ρ = div A − ∂τa`.
pub fn maxwell_residual(
    a: &dyn BqField,
    theta: &dyn BqField,
    p: &SpacetimePoint,
    modified_a: Option<&dyn ScalarField>,
    h: f64,
) -> Result<MaxwellResidual> {
    let mut r = bigradient(Sign::Plus, a, p, h)? + theta.eval(p)?;
    if let Some(s) = modified_a {
        // i∇⁺a = i∂τa − grad a
        r += bigradient(Sign::Plus, &ScalarAsBq(s), p, h)? * I;
    }
    Ok(MaxwellResidual::from_bq(r))
}

/// `∂τρ + div J`, read off the scalar part of `∇⁻Θ = i(∂τρ + div J) + …`.
pub fn charge_conservation(theta: &dyn BqField, p: &SpacetimePoint, h: f64) -> Result<Complex> {
    Ok(-I * bigradient(Sign::Minus, theta, p, h)?.scalar)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EmShockCheck {
    /// `[E] − c[[B], m]`.
    pub e_condition: [f64; 3],
    /// `[H] − c[m, [D]]`.
    pub h_condition: [f64; 3],
    /// `[D] − c⁻¹[[H], m]`.
    pub d_condition: [f64; 3],
    /// `[B] − c⁻¹[m, [E]]`.
    pub b_condition: [f64; 3],
    /// `max(|(m,[E])|, |(m,[H])|)`.
    pub longitudinal: f64,
    pub transversal: bool,
}

impl EmShockCheck {
    pub fn max_abs(&self) -> f64 {
        [self.e_condition, self.h_condition, self.d_condition, self.b_condition]
            .iter()
            .flatten()
            .fold(self.longitudinal, |m, v| m.max(v.abs()))
    }
}

/// Front conditions for EM gaps `[E]`, `[H]` across a front with normal `m̂`.
pub fn em_shock_check(gap_e: [f64; 3], gap_h: [f64; 3], normal: [f64; 3], medium: &Medium) -> Result<EmShockCheck> {
    let m = real::normalize(normal).filter(|m| m.iter().all(|v| v.is_finite())).ok_or(Error::InvalidAxis)?;
    let c = medium.speed();
    let d = real::scale(gap_e, medium.eps);
    let b = real::scale(gap_h, medium.mu);
    let longitudinal = real::dot(m, gap_e).abs().max(real::dot(m, gap_h).abs());
    let scale = real::norm(gap_e).max(real::norm(gap_h)).max(1.0);
    Ok(EmShockCheck {
        e_condition: real::sub(gap_e, real::scale(real::cross(b, m), c)),
        h_condition: real::sub(gap_h, real::scale(real::cross(m, d), c)),
        d_condition: real::sub(d, real::scale(real::cross(gap_h, m), 1.0 / c)),
        b_condition: real::sub(b, real::scale(real::cross(m, gap_e), 1.0 / c)),
        longitudinal,
        transversal: longitudinal <= 1e-12 * scale,
    })
}

/// Random admissible EM gaps `([E], [H])`: a constraint-kernel element with
/// its scalar part `k` removed along the kernel direction `k(1 + i m̂)`.
pub fn random_em_gap(normal: [f64; 3], medium: &Medium, rng: &mut impl Rng) -> Result<([f64; 3], [f64; 3])> {
    let m = real::normalize(normal).ok_or(Error::InvalidAxis)?;
    let basis = shock_constraint_kernel(m)?;
    let mut gap: Biquaternion = basis.iter().map(|b| *b * rng.random_range(-1.0..1.0)).sum();
    let k = gap.scalar;
    gap -= Biquaternion::new(k, CVec3::from_real(m) * (I * k));
    Ok(fields_from_intensity(&gap, medium))
}
