use std::ops::{Add, AddAssign, Index, IndexMut, Mul, Neg, Sub, SubAssign};

use super::Complex;

/// Three-vector with complex components.
///
/// `dot` is the bilinear sum `Σ Fⱼ Gⱼ` (no conjugation); `cross` is the
/// complex cross product `Σ ε_jkl Fⱼ Gₖ e_l`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct CVec3(pub [Complex; 3]);

impl CVec3 {
    pub const ZERO: CVec3 = CVec3([Complex::new(0.0, 0.0); 3]);

    #[inline]
    pub fn new(c1: Complex, c2: Complex, c3: Complex) -> Self {
        CVec3([c1, c2, c3])
    }

    #[inline]
    pub fn from_real(v: [f64; 3]) -> Self {
        CVec3(v.map(|x| Complex::new(x, 0.0)))
    }

    /// `re + i·im` component-wise.
    #[inline]
    pub fn from_parts(re: [f64; 3], im: [f64; 3]) -> Self {
        CVec3([0, 1, 2].map(|j| Complex::new(re[j], im[j])))
    }

    #[inline]
    pub fn dot(&self, other: &CVec3) -> Complex {
        self.0[0] * other.0[0] + self.0[1] * other.0[1] + self.0[2] * other.0[2]
    }

    #[inline]
    pub fn cross(&self, other: &CVec3) -> CVec3 {
        let [a1, a2, a3] = self.0;
        let [b1, b2, b3] = other.0;
        CVec3([a2 * b3 - a3 * b2, a3 * b1 - a1 * b3, a1 * b2 - a2 * b1])
    }

    #[inline]
    pub fn conj(&self) -> CVec3 {
        CVec3(self.0.map(|c| c.conj()))
    }

    /// `Σ |Fⱼ|²`.
    #[inline]
    pub fn norm_sqr(&self) -> f64 {
        self.0.iter().map(|c| c.norm_sqr()).sum()
    }

    #[inline]
    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    #[inline]
    pub fn re(&self) -> [f64; 3] {
        self.0.map(|c| c.re)
    }

    #[inline]
    pub fn im(&self) -> [f64; 3] {
        self.0.map(|c| c.im)
    }

    #[inline]
    pub fn scale(&self, k: Complex) -> CVec3 {
        CVec3(self.0.map(|c| c * k))
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|c| c.re.is_finite() && c.im.is_finite())
    }
}

impl Index<usize> for CVec3 {
    type Output = Complex;
    fn index(&self, j: usize) -> &Complex {
        &self.0[j]
    }
}

impl IndexMut<usize> for CVec3 {
    fn index_mut(&mut self, j: usize) -> &mut Complex {
        &mut self.0[j]
    }
}

impl Add for CVec3 {
    type Output = CVec3;
    #[inline]
    fn add(self, o: CVec3) -> CVec3 {
        CVec3([self.0[0] + o.0[0], self.0[1] + o.0[1], self.0[2] + o.0[2]])
    }
}

impl AddAssign for CVec3 {
    fn add_assign(&mut self, o: CVec3) {
        *self = *self + o;
    }
}

impl Sub for CVec3 {
    type Output = CVec3;
    #[inline]
    fn sub(self, o: CVec3) -> CVec3 {
        CVec3([self.0[0] - o.0[0], self.0[1] - o.0[1], self.0[2] - o.0[2]])
    }
}

impl SubAssign for CVec3 {
    fn sub_assign(&mut self, o: CVec3) {
        *self = *self - o;
    }
}

impl Neg for CVec3 {
    type Output = CVec3;
    #[inline]
    fn neg(self) -> CVec3 {
        CVec3(self.0.map(|c| -c))
    }
}

impl Mul<Complex> for CVec3 {
    type Output = CVec3;
    #[inline]
    fn mul(self, k: Complex) -> CVec3 {
        self.scale(k)
    }
}

impl Mul<f64> for CVec3 {
    type Output = CVec3;
    #[inline]
    fn mul(self, k: f64) -> CVec3 {
        CVec3(self.0.map(|c| c * k))
    }
}

/// Plain real 3-vector helpers used across the crate.
pub mod real {
    #[inline]
    pub fn dot(a: [f64; 3], b: [f64; 3]) -> f64 {
        a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
    }

    #[inline]
    pub fn cross(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
        [
            a[1] * b[2] - a[2] * b[1],
            a[2] * b[0] - a[0] * b[2],
            a[0] * b[1] - a[1] * b[0],
        ]
    }

    #[inline]
    pub fn norm(a: [f64; 3]) -> f64 {
        dot(a, a).sqrt()
    }

    #[inline]
    pub fn scale(a: [f64; 3], k: f64) -> [f64; 3] {
        a.map(|x| x * k)
    }

    #[inline]
    pub fn add(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
        [a[0] + b[0], a[1] + b[1], a[2] + b[2]]
    }

    #[inline]
    pub fn sub(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
        [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
    }

    /// Unit vector along `a`, or `None` for a zero / non-finite input.
    pub fn normalize(a: [f64; 3]) -> Option<[f64; 3]> {
        let n = norm(a);
        if n > 0.0 && n.is_finite() {
            Some(scale(a, 1.0 / n))
        } else {
            None
        }
    }
}
