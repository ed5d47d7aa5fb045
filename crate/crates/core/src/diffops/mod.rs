//! Bigradient operators `∇± = ∂τ ± i∇` acting by quaternionic product,
//! their matrix (Dirac) representation, and the Maxwell–Dirac, KGFSh and
//! gradiental operators built from them.
//!
//! Derivatives come from a field's exact partials when it provides them,
//! otherwise from central differences with a caller-chosen step `h`.

mod dirac;
mod field;
mod grid;
mod scalar;
mod spatial;


pub use dirac::{
    dirac_matrices, matrix_apply, matrix_apply_from_partials,
    operator_product_symbol, DiracMatrix, QuadraticSymbol,
};
pub use field::{
    derivatives, BqField, FnField, MdOperatorField, Partials, ScalarAsBq, Support, ZeroField,
};
pub use grid::{GridBqField, GridHeader};
pub use scalar::{kgfsh_apply, kgfsh_via_dirac, FnScalarField, ScalarDerivatives, ScalarField};
pub use spatial::{
    gradiental_apply, spatial_derivatives, FnSpatialField, GradientalField, SpatialField,
    SpatialPartials,
};

use crate::algebra::{Biquaternion, Complex, I};
use crate::{Result, SpacetimePoint};

/// Default finite-difference step relative to the characteristic length.
pub const DEFAULT_FD_STEP: f64 = 1e-3;

/// Which of the two mutual bigradients: `∇⁺ = ∂τ + i∇` or `∇⁻ = ∂τ − i∇`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    #[inline]
    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    #[inline]
    pub fn as_f64(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }

    pub fn parse(s: &str) -> Option<Sign> {
        match s {
            "+" | "plus" => Some(Sign::Plus),
            "-" | "minus" => Some(Sign::Minus),
            _ => None,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        }
    }
}

/// `∇±F = ∂τF ± i Σⱼ eⱼ∘∂ⱼF`, evaluated through the quaternionic product.
pub fn bigradient_from_partials(sign: Sign, d: &Partials) -> Biquaternion {
    let iv = I * sign.as_f64();
    let mut acc = d.0[0];
    for j in 1..4 {
        acc += (Biquaternion::basis(j) * d.0[j]) * iv;
    }
    acc
}

/// `∇±F` at `p`.
pub fn bigradient(sign: Sign, field: &dyn BqField, p: &SpacetimePoint, h: f64) -> Result<Biquaternion> {
    let d = derivatives(field, p, h)?;
    Ok(bigradient_from_partials(sign, &d))
}

/// `(∇± + m)∘F` at `p`.
pub fn md_operator(
    mass: Complex,
    sign: Sign,
    field: &dyn BqField,
    p: &SpacetimePoint,
    h: f64,
) -> Result<Biquaternion> {
    Ok(bigradient(sign, field, p, h)? + field.eval(p)? * mass)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Factorization {
    /// `∇⁻(∇⁺F)` by nested application.
    pub lhs: Biquaternion,
    /// `(∂τ² − Δ)F` component-wise.
    pub rhs: Biquaternion,
}

/// Both sides of `∇⁻∘∇⁺ = □` at `p`.
///
/// The left side nests two first-order central differences (a 5-point-wide
/// stencil per axis); the right side uses 3-point second differences. Both
/// are exact on quadratic polynomials.
pub fn dalembert_factorization_check(field: &dyn BqField, p: &SpacetimePoint, h: f64) -> Result<Factorization> {
    let inner = MdOperatorField::new(Sign::Plus, Complex::new(0.0, 0.0), field, h);
    let lhs = bigradient(Sign::Minus, &inner, p, h)?;
    let rhs = dalembertian_fd(field, p, h)?;
    Ok(Factorization { lhs, rhs })
}

/// `(∂τ² − Δ)F` by 3-point second differences.
pub fn dalembertian_fd(field: &dyn BqField, p: &SpacetimePoint, h: f64) -> Result<Biquaternion> {
    let center = field.eval(p)?;
    let mut acc = Biquaternion::ZERO;
    for axis in 0..4 {
        let fp = field.eval(&p.shifted(axis, h))?;
        let fm = field.eval(&p.shifted(axis, -h))?;
        let second = (fp + fm - center * 2.0) / (h * h);
        if axis == 0 {
            acc += second;
        } else {
            acc -= second;
        }
    }
    Ok(acc)
}
