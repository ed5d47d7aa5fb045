use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};

use super::{CVec3, Complex};
use crate::{Error, Result};

/// Biquaternion `f + F`: complex scalar part and complex 3-vector part.
///
/// Multiplication is the quaternionic product
/// `(f + F)∘(g + G) = (fg − (F,G)) + (fG + gF + [F,G])`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Biquaternion {
    pub scalar: Complex,
    pub vector: CVec3,
}

/// Which side the unknown sits on in `F∘G = B` / `G∘F = B`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    /// `F∘G = B`, solved by `G = F⁻¹∘B`.
    Left,
    /// `G∘F = B`, solved by `G = B∘F⁻¹`.
    Right,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Conjugations {
    /// `f − F`
    pub mutual: Biquaternion,
    /// `f̄ + F̄`
    pub complex_conj: Biquaternion,
    /// `f̄ − F̄`
    pub conj: Biquaternion,
}

/// `Ξ = ½ F∘F* = W + iP`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnergyImpulse {
    pub xi: Biquaternion,
    /// Energy density `W = (|f|² + ‖F‖²)/2`.
    pub energy: f64,
    /// Momentum density `P = Im(f̄F) + [Re F, Im F]`.
    pub momentum: [f64; 3],
    /// `⟨⟨Ξ⟩⟩² = W² − ‖P‖²`.
    pub interval: f64,
}

impl Biquaternion {
    pub const ZERO: Biquaternion = Biquaternion {
        scalar: Complex::new(0.0, 0.0),
        vector: CVec3::ZERO,
    };
    pub const ONE: Biquaternion = Biquaternion {
        scalar: Complex::new(1.0, 0.0),
        vector: CVec3::ZERO,
    };

    #[inline]
    pub const fn new(scalar: Complex, vector: CVec3) -> Self {
        Biquaternion { scalar, vector }
    }

    /// Checked constructor: rejects NaN / infinite components.
    pub fn try_new(scalar: Complex, vector: CVec3) -> Result<Self> {
        let b = Biquaternion { scalar, vector };
        if b.is_finite() {
            Ok(b)
        } else {
            Err(Error::invalid("biquaternion components must be finite"))
        }
    }

    #[inline]
    pub fn from_scalar(s: Complex) -> Self {
        Biquaternion::new(s, CVec3::ZERO)
    }

    #[inline]
    pub fn real(s: f64) -> Self {
        Biquaternion::from_scalar(Complex::new(s, 0.0))
    }

    #[inline]
    pub fn from_vector(v: CVec3) -> Self {
        Biquaternion::new(Complex::new(0.0, 0.0), v)
    }

    /// Basis element `e_j`, with `e_0 = 1`.
    pub fn basis(j: usize) -> Self {
        assert!(j < 4, "basis index out of range: {j}");
        let mut c = [Complex::new(0.0, 0.0); 4];
        c[j] = Complex::new(1.0, 0.0);
        Biquaternion::from_components(c)
    }

    /// Real quaternion `a + b·e`.
    pub fn from_real_parts(a: f64, b: [f64; 3]) -> Self {
        Biquaternion::new(Complex::new(a, 0.0), CVec3::from_real(b))
    }

    /// `(b₀, b₁, b₂, b₃) = (f, F₁, F₂, F₃)`.
    #[inline]
    pub fn components(&self) -> [Complex; 4] {
        [self.scalar, self.vector.0[0], self.vector.0[1], self.vector.0[2]]
    }

    #[inline]
    pub fn from_components(c: [Complex; 4]) -> Self {
        Biquaternion::new(c[0], CVec3([c[1], c[2], c[3]]))
    }

    pub fn is_finite(&self) -> bool {
        self.scalar.re.is_finite() && self.scalar.im.is_finite() && self.vector.is_finite()
    }

    /// `F⁻ = f − F`.
    #[inline]
    pub fn mutual(&self) -> Self {
        Biquaternion::new(self.scalar, -self.vector)
    }

    /// `F̄ = f̄ + F̄`.
    #[inline]
    pub fn complex_conj(&self) -> Self {
        Biquaternion::new(self.scalar.conj(), self.vector.conj())
    }

    /// `F* = f̄ − F̄`.
    #[inline]
    pub fn conj(&self) -> Self {
        Biquaternion::new(self.scalar.conj(), -self.vector.conj())
    }

    pub fn conjugations(&self) -> Conjugations {
        Conjugations {
            mutual: self.mutual(),
            complex_conj: self.complex_conj(),
            conj: self.conj(),
        }
    }

    /// Bilinear scalar product `f₁f₂ + (F₁, F₂)`, no conjugation.
    #[inline]
    pub fn scalar_product(&self, other: &Biquaternion) -> Complex {
        self.scalar * other.scalar + self.vector.dot(&other.vector)
    }

    /// `|f|² + ‖F‖²`.
    #[inline]
    pub fn norm_sqr(&self) -> f64 {
        self.scalar.norm_sqr() + self.vector.norm_sqr()
    }

    #[inline]
    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    /// `|f|² − ‖F‖²`; always real.
    #[inline]
    pub fn pseudonorm_sqr(&self) -> f64 {
        self.scalar.norm_sqr() - self.vector.norm_sqr()
    }

    /// Square root of the pseudonorm radicand on the branch `Re ≥ 0`:
    /// real for a non-negative radicand, `i·√(−radicand)` otherwise.
    pub fn pseudonorm(&self) -> Complex {
        let r = self.pseudonorm_sqr();
        if r >= 0.0 {
            Complex::new(r.sqrt(), 0.0)
        } else {
            Complex::new(0.0, (-r).sqrt())
        }
    }

    /// `F∘G − G∘F`, which equals `2[F, G]`.
    pub fn commutator(&self, other: &Biquaternion) -> Biquaternion {
        *self * *other - *other * *self
    }

    /// Cutoff below which `(F, F)` counts as zero: `1e-12 · max(1, ‖F‖²)`.
    pub fn invertibility_threshold(&self) -> f64 {
        1e-12 * self.norm_sqr().max(1.0)
    }

    /// `F⁻¹ = F⁻ / (F, F)`; left and right inverses coincide.
    pub fn inverse(&self) -> Result<Biquaternion> {
        let ff = self.scalar_product(self);
        let threshold = self.invertibility_threshold();
        if ff.norm() <= threshold {
            return Err(Error::NonInvertible {
                scalar_square: ff.norm(),
                threshold,
            });
        }
        Ok(self.mutual() / ff)
    }

    /// Solves `F∘G = B` (left) or `G∘F = B` (right) for `G`.
    pub fn solve(&self, rhs: &Biquaternion, side: Side) -> Result<Biquaternion> {
        let inv = self.inverse()?;
        Ok(match side {
            Side::Left => inv * *rhs,
            Side::Right => *rhs * inv,
        })
    }

    pub fn is_selfconjugated(&self, tol: f64) -> bool {
        self.conj().distance(self) <= tol
    }

    /// `F∘F̄ = F̄∘F = 1`.
    pub fn is_unitary(&self, tol: f64) -> bool {
        let bar = self.complex_conj();
        (*self * bar).distance(&Biquaternion::ONE) <= tol
            && (bar * *self).distance(&Biquaternion::ONE) <= tol
    }

    /// `F∘F⁻ = 1`, the condition satisfied by Lorentz and Poincaré elements.
    pub fn is_mutually_unitary(&self, tol: f64) -> bool {
        (*self * self.mutual()).distance(&Biquaternion::ONE) <= tol
    }

    pub fn energy_impulse(&self) -> EnergyImpulse {
        let xi = (*self * self.conj()) * 0.5;
        let energy = xi.scalar.re;
        let momentum = xi.vector.im();
        let p2: f64 = momentum.iter().map(|p| p * p).sum();
        EnergyImpulse {
            xi,
            energy,
            momentum,
            interval: energy * energy - p2,
        }
    }

    /// `‖self − other‖`.
    #[inline]
    pub fn distance(&self, other: &Biquaternion) -> f64 {
        (*self - *other).norm()
    }

    /// Component-wise `|a − b| ≤ atol + rtol·max(|a|, |b|)`.
    pub fn approx_eq(&self, other: &Biquaternion, atol: f64, rtol: f64) -> bool {
        self.components()
            .iter()
            .zip(other.components().iter())
            .all(|(a, b)| (a - b).norm() <= atol + rtol * a.norm().max(b.norm()))
    }
}

/// `aF + bG`.
pub fn linear_combine(a: Complex, f: &Biquaternion, b: Complex, g: &Biquaternion) -> Biquaternion {
    *f * a + *g * b
}

impl Mul for Biquaternion {
    type Output = Biquaternion;
    #[inline]
    fn mul(self, g: Biquaternion) -> Biquaternion {
        let (f, fv) = (self.scalar, self.vector);
        let (gs, gv) = (g.scalar, g.vector);
        Biquaternion {
            scalar: f * gs - fv.dot(&gv),
            vector: gv * f + fv * gs + fv.cross(&gv),
        }
    }
}

impl Mul<Complex> for Biquaternion {
    type Output = Biquaternion;
    #[inline]
    fn mul(self, k: Complex) -> Biquaternion {
        Biquaternion::new(self.scalar * k, self.vector * k)
    }
}

impl Mul<f64> for Biquaternion {
    type Output = Biquaternion;
    #[inline]
    fn mul(self, k: f64) -> Biquaternion {
        Biquaternion::new(self.scalar * k, self.vector * k)
    }
}

impl Div<Complex> for Biquaternion {
    type Output = Biquaternion;
    #[inline]
    fn div(self, k: Complex) -> Biquaternion {
        self * (Complex::new(1.0, 0.0) / k)
    }
}

impl Div<f64> for Biquaternion {
    type Output = Biquaternion;
    #[inline]
    fn div(self, k: f64) -> Biquaternion {
        self * (1.0 / k)
    }
}

impl Add for Biquaternion {
    type Output = Biquaternion;
    #[inline]
    fn add(self, o: Biquaternion) -> Biquaternion {
        Biquaternion::new(self.scalar + o.scalar, self.vector + o.vector)
    }
}

impl AddAssign for Biquaternion {
    fn add_assign(&mut self, o: Biquaternion) {
        *self = *self + o;
    }
}

impl Sub for Biquaternion {
    type Output = Biquaternion;
    #[inline]
    fn sub(self, o: Biquaternion) -> Biquaternion {
        Biquaternion::new(self.scalar - o.scalar, self.vector - o.vector)
    }
}

impl SubAssign for Biquaternion {
    fn sub_assign(&mut self, o: Biquaternion) {
        *self = *self - o;
    }
}

impl Neg for Biquaternion {
    type Output = Biquaternion;
    #[inline]
    fn neg(self) -> Biquaternion {
        Biquaternion::new(-self.scalar, -self.vector)
    }
}

impl Sum for Biquaternion {
    fn sum<I: Iterator<Item = Biquaternion>>(iter: I) -> Biquaternion {
        iter.fold(Biquaternion::ZERO, |a, b| a + b)
    }
}

impl From<Complex> for Biquaternion {
    fn from(s: Complex) -> Self {
        Biquaternion::from_scalar(s)
    }
}

impl fmt::Display for Biquaternion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.scalar)?;
        for (j, c) in self.vector.0.iter().enumerate() {
            write!(f, " + ({})e{}", c, j + 1)?;
        }
        Ok(())
    }
}
