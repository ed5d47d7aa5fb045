//! Conditions on the fronts of shock waves of the biwave equation.

use nalgebra::SMatrix;
use rand::Rng;

use crate::algebra::{real, Biquaternion, CVec3, Complex, I};
use crate::{Error, Result};

/// The jump `[K]` of a solution across a front with spatial unit normal `m̂`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShockGap {
    pub normal: [f64; 3],
    pub gap: Biquaternion,
}

impl ShockGap {
    /// The normal is normalized; a zero normal is rejected.
    pub fn new(normal: [f64; 3], gap: Biquaternion) -> Result<Self> {
        if !normal.iter().all(|v| v.is_finite()) {
            return Err(Error::InvalidAxis);
        }
        let normal = real::normalize(normal).ok_or(Error::InvalidAxis)?;
        Ok(ShockGap { normal, gap })
    }

    fn m(&self) -> Biquaternion {
        Biquaternion::from_vector(CVec3::from_real(self.normal))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShockCheck {
    /// `[K] − i m̂∘[K]`.
    pub residual: Biquaternion,
    /// `[k] + i(m̂, [K])`.
    pub longitudinal: Complex,
    /// `([K] − m̂(m̂,[K])) − i[m̂, [K]]`.
    pub transversal: CVec3,
}

impl ShockCheck {
    pub fn max_abs(&self) -> f64 {
        let t = (0..3).map(|j| self.transversal[j].norm()).fold(0.0, f64::max);
        self.residual.norm().max(self.longitudinal.norm()).max(t)
    }
}

pub fn shock_gap_check(gap: &ShockGap) -> ShockCheck {
    let k = gap.gap;
    let m = CVec3::from_real(gap.normal);
    let mk = m.dot(&k.vector);
    ShockCheck {
        residual: k - gap.m() * k * I,
        longitudinal: k.scalar + I * mk,
        transversal: k.vector - m * mk - m.cross(&k.vector) * I,
    }
}

/// `½(Y + i m̂∘Y)`, the projection of any `Y` onto admissible gaps.
pub fn project_gap(normal: [f64; 3], y: &Biquaternion) -> Result<ShockGap> {
    let g = ShockGap::new(normal, Biquaternion::ZERO)?;
    let gap = (*y + g.m() * *y * I) * 0.5;
    Ok(ShockGap { gap, ..g })
}

/// Real basis of the solution set of the longitudinal and transversal front
/// conditions, from the null space of their 8×8 real matrix.
pub fn shock_constraint_kernel(normal: [f64; 3]) -> Result<Vec<Biquaternion>> {
    let probe = ShockGap::new(normal, Biquaternion::ZERO)?;
    let mut a = SMatrix::<f64, 8, 8>::zeros();
    for col in 0..8 {
        let mut comps = [Complex::new(0.0, 0.0); 4];
        comps[col % 4] = if col < 4 { Complex::new(1.0, 0.0) } else { I };
        let c = shock_gap_check(&ShockGap { gap: Biquaternion::from_components(comps), ..probe });
        let out = [c.longitudinal, c.transversal[0], c.transversal[1], c.transversal[2]];
        for (row, v) in out.iter().enumerate() {
            a[(row, col)] = v.re;
            a[(row + 4, col)] = v.im;
        }
    }
    let svd = a.svd(false, true);
    let v_t = svd.v_t.expect("requested V^T");
    let smax = svd.singular_values.max();
    let mut basis = Vec::new();
    for (i, s) in svd.singular_values.iter().enumerate() {
        if *s <= 1e-10 * smax.max(1.0) {
            let v = v_t.row(i);
            basis.push(Biquaternion::from_components(std::array::from_fn(|j| Complex::new(v[j], v[j + 4]))));
        }
    }
    Ok(basis)
}

/// A random admissible gap: a random real combination of the constraint kernel.
pub fn random_admissible_gap(normal: [f64; 3], rng: &mut impl Rng) -> Result<ShockGap> {
    let basis = shock_constraint_kernel(normal)?;
    let gap = basis.iter().map(|b| *b * rng.random_range(-1.0..1.0)).sum();
    ShockGap::new(normal, gap)
}
