//! Biquaternion arithmetic.

mod biquaternion;
mod json;
mod vec3;

pub use biquaternion::{linear_combine, Biquaternion, Conjugations, EnergyImpulse, Side};
pub use vec3::{real, CVec3};

pub type Complex = num_complex::Complex64;

/// Imaginary unit.
pub const I: Complex = Complex::new(0.0, 1.0);

#[inline]
pub fn c(re: f64, im: f64) -> Complex {
    Complex::new(re, im)
}
