//! Rotations, Lorentz boosts and Poincaré maps of Minkowski space, all acting
//! on the quaternized point `Z = τ + ix` by biquaternion sandwiches.

use serde::{Deserialize, Serialize};

use crate::algebra::{real, Biquaternion, CVec3, Complex};
use crate::diffops::{BqField, Sign};
use crate::{Error, Result};

/// A point `(τ, x)` of Minkowski space.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpacetimePoint {
    pub tau: f64,
    pub x: [f64; 3],
}

impl SpacetimePoint {
    pub const ORIGIN: SpacetimePoint = SpacetimePoint { tau: 0.0, x: [0.0; 3] };

    pub fn new(tau: f64, x: [f64; 3]) -> Self {
        SpacetimePoint { tau, x }
    }

    pub fn from_coords(c: [f64; 4]) -> Self {
        SpacetimePoint { tau: c[0], x: [c[1], c[2], c[3]] }
    }

    /// `[τ, x₁, x₂, x₃]`.
    pub fn coords(&self) -> [f64; 4] {
        [self.tau, self.x[0], self.x[1], self.x[2]]
    }

    /// The point moved by `h` along coordinate `axis` (0 = τ).
    pub fn shifted(&self, axis: usize, h: f64) -> Self {
        let mut c = self.coords();
        c[axis] += h;
        Self::from_coords(c)
    }

    pub fn is_finite(&self) -> bool {
        self.coords().iter().all(|v| v.is_finite())
    }

    /// `Z = τ + ix`.
    pub fn to_bq(&self) -> Biquaternion {
        Biquaternion::new(Complex::new(self.tau, 0.0), CVec3::from_parts([0.0; 3], self.x))
    }

    /// Inverse of [`SpacetimePoint::to_bq`]; the anti-selfconjugated part is dropped.
    pub fn from_bq(z: &Biquaternion) -> Self {
        SpacetimePoint { tau: z.scalar.re, x: z.vector.im() }
    }

    /// `τ² − ‖x‖²`.
    pub fn interval(&self) -> f64 {
        self.tau * self.tau - real::dot(self.x, self.x)
    }

    pub fn distance(&self, other: &SpacetimePoint) -> f64 {
        let a = self.coords();
        let b = other.coords();
        a.iter().zip(b.iter()).map(|(u, v)| (u - v) * (u - v)).sum::<f64>().sqrt()
    }
}

fn unit_axis(e: [f64; 3]) -> Result<[f64; 3]> {
    if !e.iter().all(|v| v.is_finite()) {
        return Err(Error::InvalidAxis);
    }
    real::normalize(e).ok_or(Error::InvalidAxis)
}

/// `U(φ, e) = cos φ + e sin φ`; acts on points as a rotation through `2φ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Rotor {
    pub angle: f64,
    pub axis: [f64; 3],
}

impl Rotor {
    pub const IDENTITY: Rotor = Rotor { angle: 0.0, axis: [1.0, 0.0, 0.0] };

    /// The axis is normalized; a zero axis is rejected.
    pub fn new(angle: f64, axis: [f64; 3]) -> Result<Self> {
        if !angle.is_finite() {
            return Err(Error::invalid("rotor angle must be finite"));
        }
        Ok(Rotor { angle, axis: unit_axis(axis)? })
    }

    pub fn to_bq(&self) -> Biquaternion {
        let (s, c) = self.angle.sin_cos();
        Biquaternion::from_real_parts(c, real::scale(self.axis, s))
    }

    /// `U∘Z∘U*`.
    pub fn apply(&self, z: &SpacetimePoint) -> SpacetimePoint {
        let u = self.to_bq();
        SpacetimePoint::from_bq(&(u * z.to_bq() * u.conj()))
    }

    /// Closed form `x' = e(e,x) + (x − e(e,x))cos 2φ + [e,x] sin 2φ`.
    pub fn apply_closed_form(&self, z: &SpacetimePoint) -> SpacetimePoint {
        let e = self.axis;
        let (s2, c2) = (2.0 * self.angle).sin_cos();
        let par = real::scale(e, real::dot(e, z.x));
        let perp = real::sub(z.x, par);
        let x = real::add(real::add(par, real::scale(perp, c2)), real::scale(real::cross(e, z.x), s2));
        SpacetimePoint { tau: z.tau, x }
    }
}

/// Result of composing two rotors.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RotorComposition {
    pub rotor: Rotor,
    /// The product has no vector part, so the axis is arbitrary (`e₁`).
    pub degenerate: bool,
}

/// `U₃ = U₁∘U₂`, which acts as "apply `U₂`, then `U₁`".
pub fn compose_rotors(u1: &Rotor, u2: &Rotor) -> RotorComposition {
    let q = u1.to_bq() * u2.to_bq();
    let v = q.vector.re();
    let vn = real::norm(v);
    let cos = q.scalar.re.clamp(-1.0, 1.0);
    if vn < 1e-12 {
        let angle = if cos >= 0.0 { 0.0 } else { std::f64::consts::PI };
        return RotorComposition {
            rotor: Rotor { angle, axis: [1.0, 0.0, 0.0] },
            degenerate: true,
        };
    }
    // atan2 is better conditioned than arccos near 0 and π; both give [0, π].
    let angle = vn.atan2(q.scalar.re);
    debug_assert!((angle.cos() - cos).abs() < 1e-9);
    RotorComposition {
        rotor: Rotor { angle, axis: real::scale(v, 1.0 / vn) },
        degenerate: false,
    }
}

/// `L(θ, e) = ch θ + ie sh θ`; acts on points by `Z' = L∘Z∘L`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Boost {
    pub rapidity: f64,
    pub axis: [f64; 3],
}

impl Boost {
    pub fn new(rapidity: f64, axis: [f64; 3]) -> Result<Self> {
        if !rapidity.is_finite() {
            return Err(Error::invalid("boost rapidity must be finite"));
        }
        Ok(Boost { rapidity, axis: unit_axis(axis)? })
    }

    /// `θ = ½ artanh v`, so that `ch 2θ = (1 − v²)^(−1/2)`.
    pub fn from_velocity(v: f64, axis: [f64; 3]) -> Result<Self> {
        if !(v.abs() < 1.0) {
            return Err(Error::InvalidVelocity(v));
        }
        Boost::new(0.5 * v.atanh(), axis)
    }

    pub fn velocity(&self) -> f64 {
        (2.0 * self.rapidity).tanh()
    }

    pub fn to_bq(&self) -> Biquaternion {
        let (s, c) = (self.rapidity.sinh(), self.rapidity.cosh());
        Biquaternion::new(Complex::new(c, 0.0), CVec3::from_parts([0.0; 3], real::scale(self.axis, s)))
    }

    pub fn apply(&self, z: &SpacetimePoint) -> SpacetimePoint {
        let l = self.to_bq();
        SpacetimePoint::from_bq(&(l * z.to_bq() * l))
    }
}

/// Closed-form relativistic map for velocity `v` along unit `e`:
/// `τ' = (τ + v(e,x))/√(1−v²)`, `x' = x + e[(γ − 1)(e,x) + γvτ]`.
pub fn relativistic_map(v: f64, e: [f64; 3], z: &SpacetimePoint) -> Result<SpacetimePoint> {
    if !(v.abs() < 1.0) {
        return Err(Error::InvalidVelocity(v));
    }
    let e = unit_axis(e)?;
    let gamma = 1.0 / (1.0 - v * v).sqrt();
    let ex = real::dot(e, z.x);
    let tau = gamma * (z.tau + v * ex);
    let x = real::add(z.x, real::scale(e, (gamma - 1.0) * ex + gamma * v * z.tau));
    Ok(SpacetimePoint { tau, x })
}

/// Inverse of [`relativistic_map`].
pub fn relativistic_map_inverse(v: f64, e: [f64; 3], z: &SpacetimePoint) -> Result<SpacetimePoint> {
    relativistic_map(-v, e, z)
}

/// A general proper Lorentz map `Z' = Q∘Z∘Q*` with `Q∘Q⁻ = 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LorentzMap {
    pub q: Biquaternion,
}

impl LorentzMap {
    /// Rejects `Q` that is not mutually unitary.
    pub fn new(q: Biquaternion) -> Result<Self> {
        if !q.is_finite() || !q.is_mutually_unitary(1e-9) {
            return Err(Error::invalid("Lorentz biquaternion must satisfy Q∘Q⁻ = 1"));
        }
        Ok(LorentzMap { q })
    }

    pub fn identity() -> Self {
        LorentzMap { q: Biquaternion::ONE }
    }

    pub fn apply(&self, z: &SpacetimePoint) -> SpacetimePoint {
        SpacetimePoint::from_bq(&(self.q * z.to_bq() * self.q.conj()))
    }

    /// `Z = Q⁻∘Z'∘(Q*)⁻`.
    pub fn apply_inverse(&self, z: &SpacetimePoint) -> SpacetimePoint {
        let qi = self.q.mutual();
        SpacetimePoint::from_bq(&(qi * z.to_bq() * qi.conj()))
    }

    pub fn then(&self, outer: &LorentzMap) -> LorentzMap {
        LorentzMap { q: outer.q * self.q }
    }
}

/// `P = U∘L = cos(φ + iθ) + e sin(φ + iθ)`, a rotation and a boost sharing one axis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PoincareOp {
    pub phi: f64,
    pub theta: f64,
    pub axis: [f64; 3],
}

impl PoincareOp {
    pub fn new(phi: f64, theta: f64, axis: [f64; 3]) -> Result<Self> {
        if !phi.is_finite() || !theta.is_finite() {
            return Err(Error::invalid("Poincaré angles must be finite"));
        }
        Ok(PoincareOp { phi, theta, axis: unit_axis(axis)? })
    }

    pub fn identity() -> Self {
        PoincareOp { phi: 0.0, theta: 0.0, axis: [1.0, 0.0, 0.0] }
    }

    pub fn rotor(&self) -> Rotor {
        Rotor { angle: self.phi, axis: self.axis }
    }

    pub fn boost(&self) -> Boost {
        Boost { rapidity: self.theta, axis: self.axis }
    }

    pub fn to_bq(&self) -> Biquaternion {
        let w = Complex::new(self.phi, self.theta);
        Biquaternion::new(w.cos(), CVec3::from_real(self.axis) * w.sin())
    }

    pub fn as_map(&self) -> LorentzMap {
        LorentzMap { q: self.to_bq() }
    }

    pub fn apply(&self, z: &SpacetimePoint) -> SpacetimePoint {
        self.as_map().apply(z)
    }

    pub fn apply_inverse(&self, z: &SpacetimePoint) -> SpacetimePoint {
        self.as_map().apply_inverse(z)
    }
}

/// Result of composing two Poincaré operators.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PoincareComposition {
    /// Parallel axes: the angles add.
    Closed(PoincareOp),
    /// Non-parallel axes: the product is still a Lorentz map but not of the
    /// single-axis form.
    Raw {
        map: LorentzMap,
        /// The vector part of the product has a real component even though
        /// both factors were pure boosts.
        boosts_mix_rotation: bool,
    },
}

impl PoincareComposition {
    pub fn map(&self) -> LorentzMap {
        match self {
            PoincareComposition::Closed(p) => p.as_map(),
            PoincareComposition::Raw { map, .. } => *map,
        }
    }

    pub fn is_closed(&self) -> bool {
        matches!(self, PoincareComposition::Closed(_))
    }
}

/// `P₁∘P₂` (apply `P₂` first). Parallel axes are detected automatically.
pub fn compose_poincare(p1: &PoincareOp, p2: &PoincareOp) -> PoincareComposition {
    let cross = real::norm(real::cross(p1.axis, p2.axis));
    if cross < 1e-12 {
        let s = real::dot(p1.axis, p2.axis).signum();
        return PoincareComposition::Closed(PoincareOp {
            phi: p1.phi + s * p2.phi,
            theta: p1.theta + s * p2.theta,
            axis: p1.axis,
        });
    }
    let q = p1.to_bq() * p2.to_bq();
    let pure_boosts = p1.phi == 0.0 && p2.phi == 0.0;
    let real_vec = real::norm(q.vector.re()) > 1e-12;
    PoincareComposition::Raw {
        map: LorentzMap { q },
        boosts_mix_rotation: pure_boosts && real_vec,
    }
}

/// Transformed data of `∇^sign K = G` under `Z' = Q∘Z∘Q*`.
///
/// With `K' = A∘K∘Q*` and `G' = B∘G∘Q*` the equation `∇'^sign K' = G'` holds,
/// where `(A, B) = (Q, Q̄)` for `+` and `(Q̄, Q)` for `−`.
pub fn transform_biwave_data(
    map: &LorentzMap,
    sign: Sign,
    k: &Biquaternion,
    g: &Biquaternion,
) -> (Biquaternion, Biquaternion) {
    let (a, b) = covariant_factors(map, sign);
    let qs = map.q.conj();
    (a * *k * qs, b * *g * qs)
}

fn covariant_factors(map: &LorentzMap, sign: Sign) -> (Biquaternion, Biquaternion) {
    let q = map.q;
    let qb = q.complex_conj();
    match sign {
        Sign::Plus => (q, qb),
        Sign::Minus => (qb, q),
    }
}

/// Which side of the biwave equation a transformed field plays.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldRole {
    Potential,
    Source,
}

/// A field pulled through a Lorentz map: `F'(Z') = A∘F(Q⁻Z'(Q*)⁻)∘Q*`.
pub struct TransformedField<'a> {
    map: LorentzMap,
    left: Biquaternion,
    right: Biquaternion,
    inner: &'a dyn BqField,
}

impl<'a> TransformedField<'a> {
    pub fn new(map: LorentzMap, sign: Sign, role: FieldRole, inner: &'a dyn BqField) -> Self {
        let (a, b) = covariant_factors(&map, sign);
        let left = match role {
            FieldRole::Potential => a,
            FieldRole::Source => b,
        };
        TransformedField { map, left, right: map.q.conj(), inner }
    }
}

impl BqField for TransformedField<'_> {
    fn eval(&self, p: &SpacetimePoint) -> Result<Biquaternion> {
        let z = self.map.apply_inverse(p);
        Ok(self.left * self.inner.eval(&z)? * self.right)
    }
}

/// JSON form `{"rotor":{"phi":..,"e":[..]},"boost":{"v":..,"e":[..]},"poincare":{"phi":..,"theta":..,"e":[..]}}`;
/// every part is optional.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TransformConfig {
    #[serde(default)]
    pub rotor: Option<RotorConfig>,
    #[serde(default)]
    pub boost: Option<BoostConfig>,
    #[serde(default)]
    pub poincare: Option<PoincareConfig>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RotorConfig {
    pub phi: f64,
    pub e: [f64; 3],
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BoostConfig {
    pub v: f64,
    pub e: [f64; 3],
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PoincareConfig {
    pub phi: f64,
    pub theta: f64,
    pub e: [f64; 3],
}

impl TransformConfig {
    /// The boost acts first, then the rotation, then the Poincaré map: `Q = P∘U∘L`.
    pub fn to_map(&self) -> Result<LorentzMap> {
        let mut q = Biquaternion::ONE;
        if let Some(b) = self.boost {
            q = Boost::from_velocity(b.v, b.e)?.to_bq();
        }
        if let Some(r) = self.rotor {
            q = Rotor::new(r.phi, r.e)?.to_bq() * q;
        }
        if let Some(p) = self.poincare {
            q = PoincareOp::new(p.phi, p.theta, p.e)?.to_bq() * q;
        }
        Ok(LorentzMap { q })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::I;
    use crate::diffops::{bigradient, FnField, Partials};
    use proptest::prelude::*;
    use std::f64::consts::PI;

    fn pt(tau: f64, x: [f64; 3]) -> SpacetimePoint {
        SpacetimePoint::new(tau, x)
    }

    fn close(a: &SpacetimePoint, b: &SpacetimePoint, tol: f64) -> bool {
        a.distance(b) < tol
    }

    #[test]
    fn quarter_rotor_turns_e1_into_e2() {
        let u = Rotor::new(PI / 4.0, [0.0, 0.0, 1.0]).unwrap();
        let z = u.apply(&pt(3.0, [1.0, 0.0, 0.0]));
        assert!(close(&z, &pt(3.0, [0.0, 1.0, 0.0]), 1e-15));
    }

    #[test]
    fn zero_rotor_and_axis_vector_are_fixed() {
        let z = pt(0.5, [0.3, -0.2, 0.9]);
        assert!(close(&Rotor::new(0.0, [1.0, 2.0, 3.0]).unwrap().apply(&z), &z, 1e-15));
        let u = Rotor::new(1.1, [0.0, 0.0, 2.0]).unwrap();
        let on_axis = pt(1.0, [0.0, 0.0, 4.0]);
        assert!(close(&u.apply(&on_axis), &on_axis, 1e-14));
    }

    #[test]
    fn zero_axis_is_rejected() {
        assert_eq!(Rotor::new(1.0, [0.0; 3]), Err(Error::InvalidAxis));
        assert_eq!(Boost::new(1.0, [f64::NAN, 0.0, 0.0]), Err(Error::InvalidAxis));
    }

    #[test]
    fn same_axis_rotors_add_angles() {
        let e = [0.0, 1.0, 0.0];
        let c = compose_rotors(&Rotor::new(0.3, e).unwrap(), &Rotor::new(0.5, e).unwrap());
        assert!(!c.degenerate);
        assert!((c.rotor.angle - 0.8).abs() < 1e-14);
        assert!(real::norm(real::sub(c.rotor.axis, e)) < 1e-14);
    }

    #[test]
    fn identity_rotor_composes_trivially() {
        let u = Rotor::new(0.7, [1.0, 1.0, 0.0]).unwrap();
        let c = compose_rotors(&u, &Rotor::IDENTITY);
        assert!((c.rotor.angle - 0.7).abs() < 1e-14);
        assert!(real::norm(real::sub(c.rotor.axis, u.axis)) < 1e-14);
    }

    #[test]
    fn inverse_rotors_compose_to_flagged_identity() {
        let u = Rotor::new(0.4, [0.0, 0.0, 1.0]).unwrap();
        let v = Rotor::new(-0.4, [0.0, 0.0, 1.0]).unwrap();
        let c = compose_rotors(&u, &v);
        assert!(c.degenerate);
        assert_eq!(c.rotor.angle, 0.0);
        let half = compose_rotors(&Rotor::new(PI / 2.0, [1.0, 0.0, 0.0]).unwrap(), &Rotor::new(PI / 2.0, [1.0, 0.0, 0.0]).unwrap());
        assert!(half.degenerate);
        assert_eq!(half.rotor.angle, PI);
    }

    #[test]
    fn orthogonal_quarter_turns_compose_by_action() {
        let u1 = Rotor::new(PI / 2.0, [1.0, 0.0, 0.0]).unwrap();
        let u2 = Rotor::new(PI / 2.0, [0.0, 1.0, 0.0]).unwrap();
        let c = compose_rotors(&u1, &u2);
        assert!(!c.degenerate);
        let z = pt(0.2, [0.3, -0.7, 0.5]);
        assert!(close(&c.rotor.apply(&z), &u1.apply(&u2.apply(&z)), 1e-12));
    }

    #[test]
    fn boost_of_unit_time_vector() {
        let l = Boost::from_velocity(0.6, [1.0, 0.0, 0.0]).unwrap();
        let z = l.apply(&pt(1.0, [0.0; 3]));
        assert!((z.tau - 1.25).abs() < 1e-14);
        assert!((z.x[0] - 0.75).abs() < 1e-14);
        assert!(z.x[1].abs() < 1e-14 && z.x[2].abs() < 1e-14);
        let r = relativistic_map(0.6, [1.0, 0.0, 0.0], &pt(1.0, [0.0; 3])).unwrap();
        assert!(close(&r, &pt(1.25, [0.75, 0.0, 0.0]), 1e-14));
    }

    #[test]
    fn zero_boost_is_identity_and_light_cone_is_invariant() {
        let z = pt(0.4, [1.0, -2.0, 0.5]);
        assert!(close(&Boost::new(0.0, [0.0, 1.0, 0.0]).unwrap().apply(&z), &z, 1e-15));
        let l = Boost::new(0.8, [0.3, 0.4, 0.5]).unwrap();
        let w = l.apply(&pt(1.0, [1.0, 0.0, 0.0]));
        assert!(w.interval().abs() < 1e-12);
    }

    #[test]
    fn velocity_bounds() {
        assert_eq!(Boost::from_velocity(1.0, [1.0, 0.0, 0.0]), Err(Error::InvalidVelocity(1.0)));
        assert!(relativistic_map(-1.5, [1.0, 0.0, 0.0], &SpacetimePoint::ORIGIN).is_err());
        let z = pt(0.3, [0.1, 0.2, 0.3]);
        assert_eq!(relativistic_map(0.0, [0.0, 0.0, 1.0], &z).unwrap(), z);
    }

    #[test]
    fn poincare_reduces_to_boost_and_rotation() {
        let e = [0.0, 0.6, 0.8];
        let z = pt(0.7, [0.2, -0.4, 1.1]);
        let p = PoincareOp::new(0.0, 0.35, e).unwrap();
        assert!(close(&p.apply(&z), &Boost::new(0.35, e).unwrap().apply(&z), 1e-14));
        let p = PoincareOp::new(0.9, 0.0, e).unwrap();
        assert!(close(&p.apply(&z), &Rotor::new(0.9, e).unwrap().apply(&z), 1e-14));
    }

    #[test]
    fn poincare_equals_rotor_after_boost() {
        let e = [1.0, 2.0, -1.0];
        let p = PoincareOp::new(0.4, -0.3, e).unwrap();
        let prod = p.rotor().to_bq() * p.boost().to_bq();
        assert!(prod.approx_eq(&p.to_bq(), 1e-14, 0.0));
        assert!(p.to_bq().is_mutually_unitary(1e-12));
        assert!(p.to_bq().conj().is_mutually_unitary(1e-12));
    }

    #[test]
    fn poincare_composition_same_axis() {
        let e = [0.0, 0.0, 1.0];
        let p1 = PoincareOp::new(0.2, 0.1, e).unwrap();
        let p2 = PoincareOp::new(-0.5, 0.3, e).unwrap();
        let c = compose_poincare(&p1, &p2);
        let PoincareComposition::Closed(p3) = c else { panic!("expected closure") };
        assert!((p3.phi + 0.3).abs() < 1e-15 && (p3.theta - 0.4).abs() < 1e-15);
        let z = pt(0.5, [0.1, 0.9, -0.3]);
        assert!(close(&p3.apply(&z), &p1.apply(&p2.apply(&z)), 1e-12));
        let c = compose_poincare(&p1, &PoincareOp::identity());
        assert!(close(&c.map().apply(&z), &p1.apply(&z), 1e-14));
    }

    #[test]
    fn nonparallel_boosts_are_flagged() {
        let b1 = PoincareOp::new(0.0, 0.4, [1.0, 0.0, 0.0]).unwrap();
        let b2 = PoincareOp::new(0.0, 0.4, [0.0, 1.0, 0.0]).unwrap();
        let c = compose_poincare(&b1, &b2);
        assert!(matches!(c, PoincareComposition::Raw { boosts_mix_rotation: true, .. }));
        let z = pt(0.5, [0.1, 0.9, -0.3]);
        assert!(close(&c.map().apply(&z), &b1.apply(&b2.apply(&z)), 1e-12));
    }

    #[test]
    fn transform_config_builds_boost_then_rotation() {
        let cfg: TransformConfig = serde_json::from_str(
            r#"{"rotor":{"phi":0.7853981633974483,"e":[0,0,1]},"boost":{"v":0.6,"e":[1,0,0]}}"#,
        )
        .unwrap();
        let z = cfg.to_map().unwrap().apply(&pt(1.0, [0.0; 3]));
        assert!(close(&z, &pt(1.25, [0.0, 0.75, 0.0]), 1e-14));
        assert!(serde_json::from_str::<TransformConfig>(r#"{"shear":1}"#).is_err());
        let id = TransformConfig::default().to_map().unwrap();
        assert_eq!(id.q, Biquaternion::ONE);
    }

    #[test]
    fn biwave_data_identity_and_zero_source() {
        let k = Biquaternion::from_components([
            Complex::new(0.1, 0.2),
            Complex::new(-0.3, 0.0),
            Complex::new(0.0, 0.5),
            Complex::new(0.7, -0.1),
        ]);
        let (k2, g2) = transform_biwave_data(&LorentzMap::identity(), Sign::Plus, &k, &Biquaternion::ZERO);
        assert_eq!(k2, k);
        assert_eq!(g2, Biquaternion::ZERO);
    }

    /// Plane wave `K = c e^{i(ξ,x) + iωτ}` with exact partials and its source `∇^s K`.
    fn plane_wave_pair(sign: Sign) -> (FnField<'static>, FnField<'static>) {
        let xi = [0.7, -0.4, 0.9];
        let omega = 0.3;
        let c = Biquaternion::from_components([
            Complex::new(0.2, -0.1),
            Complex::new(0.5, 0.3),
            Complex::new(-0.4, 0.0),
            Complex::new(0.1, 0.6),
        ]);
        let phase = move |p: &SpacetimePoint| (I * (real::dot(xi, p.x) + omega * p.tau)).exp();
        let partials = move |p: &SpacetimePoint| {
            let k = c * phase(p);
            Partials([k * (I * omega), k * (I * xi[0]), k * (I * xi[1]), k * (I * xi[2])])
        };
        let k = FnField::new(move |p| c * phase(p)).with_partials(partials);
        let g = FnField::new(move |p| crate::diffops::bigradient_from_partials(sign, &partials(p)));
        (k, g)
    }

    #[test]
    fn biwave_equation_is_covariant() {
        for sign in [Sign::Plus, Sign::Minus] {
            let (k, g) = plane_wave_pair(sign);
            let map = PoincareOp::new(0.6, 0.45, [0.3, -0.5, 0.8]).unwrap().as_map();
            let general = LorentzMap {
                q: Boost::new(0.3, [1.0, 0.0, 0.0]).unwrap().to_bq()
                    * Rotor::new(0.5, [0.0, 1.0, 1.0]).unwrap().to_bq()
                    * Boost::new(-0.2, [0.0, 0.0, 1.0]).unwrap().to_bq(),
            };
            for m in [map, general] {
                let kp = TransformedField::new(m, sign, FieldRole::Potential, &k);
                let gp = TransformedField::new(m, sign, FieldRole::Source, &g);
                for p in [pt(0.3, [0.1, 0.2, -0.4]), pt(-1.0, [0.5, 0.0, 0.9])] {
                    let lhs = bigradient(sign, &kp, &p, 1e-3).unwrap();
                    let rhs = gp.eval(&p).unwrap();
                    assert!(lhs.distance(&rhs) < 1e-5, "{sign:?}: {}", lhs.distance(&rhs));
                }
            }
        }
    }

    prop_compose! {
        fn unit_vec()(v in prop::array::uniform3(-1.0f64..1.0)
            .prop_filter("nonzero", |v| real::norm(*v) > 1e-3)) -> [f64; 3] {
            real::normalize(v).unwrap()
        }
    }

    prop_compose! {
        fn point()(tau in -1.0f64..1.0, x in prop::array::uniform3(-1.0f64..1.0)) -> SpacetimePoint {
            SpacetimePoint::new(tau, x)
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn rotor_is_unitary_and_matches_closed_form(phi in -7.0f64..7.0, e in unit_vec(), z in point()) {
            let u = Rotor { angle: phi, axis: e };
            let b = u.to_bq();
            prop_assert!((b * b.conj()).approx_eq(&Biquaternion::ONE, 1e-12, 0.0));
            let a = u.apply(&z);
            prop_assert!(close(&a, &u.apply_closed_form(&z), 1e-12));
            prop_assert!((a.tau - z.tau).abs() < 1e-12);
            prop_assert!((real::norm(a.x) - real::norm(z.x)).abs() < 1e-12);
        }

        #[test]
        fn boost_preserves_interval_and_matches_formulas(v in -0.95f64..0.95, e in unit_vec(), z in point()) {
            let l = Boost::from_velocity(v, e).unwrap();
            let b = l.to_bq();
            prop_assert!((b * b.mutual()).approx_eq(&Biquaternion::ONE, 1e-12, 0.0));
            let a = l.apply(&z);
            prop_assert!((a.interval() - z.interval()).abs() < 1e-12 * (1.0 + a.tau * a.tau));
            let r = relativistic_map(v, e, &z).unwrap();
            prop_assert!(close(&a, &r, 1e-12 * (1.0 + r.tau.abs())));
            let back = relativistic_map_inverse(v, e, &r).unwrap();
            prop_assert!(close(&back, &z, 1e-12 * (1.0 + r.tau.abs())));
        }

        #[test]
        fn poincare_preserves_interval_and_inverts(phi in -3.2f64..3.2, theta in -1.0f64..1.0, e in unit_vec(), z in point()) {
            let p = PoincareOp { phi, theta, axis: e };
            let a = p.apply(&z);
            prop_assert!((a.interval() - z.interval()).abs() < 1e-12);
            prop_assert!(close(&p.apply_inverse(&a), &z, 1e-12));
        }

        #[test]
        fn rotor_composition_matches_action(
            p1 in -3.2f64..3.2, e1 in unit_vec(), p2 in -3.2f64..3.2, e2 in unit_vec(), z in point()
        ) {
            let (u1, u2) = (Rotor { angle: p1, axis: e1 }, Rotor { angle: p2, axis: e2 });
            let c = compose_rotors(&u1, &u2);
            prop_assert!(close(&c.rotor.apply(&z), &u1.apply(&u2.apply(&z)), 1e-12));
        }
    }
}
