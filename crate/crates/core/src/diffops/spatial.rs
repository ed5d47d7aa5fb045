//! Time-independent (harmonic-amplitude) fields on R³ and the gradiental
//! operator `∇_κ^± = κ ± ∇`, with `∇ = grad` acting by quaternionic product.

use crate::algebra::Biquaternion;
use crate::Result;

/// `[∂₁B, ∂₂B, ∂₃B]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpatialPartials(pub [Biquaternion; 3]);

pub trait SpatialField: Sync {
    fn eval(&self, x: [f64; 3]) -> Result<Biquaternion>;

    fn partials(&self, _x: [f64; 3]) -> Option<Result<SpatialPartials>> {
        None
    }

    /// `(center, radius)` of a ball containing the support.
    fn support(&self) -> Option<([f64; 3], f64)> {
        None
    }
}

impl<T: SpatialField + ?Sized> SpatialField for &T {
    fn eval(&self, x: [f64; 3]) -> Result<Biquaternion> {
        (**self).eval(x)
    }
    fn partials(&self, x: [f64; 3]) -> Option<Result<SpatialPartials>> {
        (**self).partials(x)
    }
    fn support(&self) -> Option<([f64; 3], f64)> {
        (**self).support()
    }
}

impl<T: SpatialField + ?Sized> SpatialField for Box<T> {
    fn eval(&self, x: [f64; 3]) -> Result<Biquaternion> {
        (**self).eval(x)
    }
    fn partials(&self, x: [f64; 3]) -> Option<Result<SpatialPartials>> {
        (**self).partials(x)
    }
    fn support(&self) -> Option<([f64; 3], f64)> {
        (**self).support()
    }
}

type SpatialFn<'a> = Box<dyn Fn([f64; 3]) -> Biquaternion + Send + Sync + 'a>;
type SpatialPartialsFn<'a> = Box<dyn Fn([f64; 3]) -> SpatialPartials + Send + Sync + 'a>;

pub struct FnSpatialField<'a> {
    eval: SpatialFn<'a>,
    partials: Option<SpatialPartialsFn<'a>>,
    support: Option<([f64; 3], f64)>,
}

impl<'a> FnSpatialField<'a> {
    pub fn new(eval: impl Fn([f64; 3]) -> Biquaternion + Send + Sync + 'a) -> Self {
        FnSpatialField {
            eval: Box::new(eval),
            partials: None,
            support: None,
        }
    }

    pub fn with_partials(mut self, d: impl Fn([f64; 3]) -> SpatialPartials + Send + Sync + 'a) -> Self {
        self.partials = Some(Box::new(d));
        self
    }

    pub fn with_support(mut self, center: [f64; 3], radius: f64) -> Self {
        self.support = Some((center, radius));
        self
    }
}

impl SpatialField for FnSpatialField<'_> {
    fn eval(&self, x: [f64; 3]) -> Result<Biquaternion> {
        Ok((self.eval)(x))
    }
    fn partials(&self, x: [f64; 3]) -> Option<Result<SpatialPartials>> {
        self.partials.as_ref().map(|d| Ok(d(x)))
    }
    fn support(&self) -> Option<([f64; 3], f64)> {
        self.support
    }
}

pub fn spatial_derivatives(field: &dyn SpatialField, x: [f64; 3], h: f64) -> Result<SpatialPartials> {
    if let Some(exact) = field.partials(x) {
        return exact;
    }
    let mut d = [Biquaternion::ZERO; 3];
    for (a, slot) in d.iter_mut().enumerate() {
        let mut xp = x;
        let mut xm = x;
        xp[a] += h;
        xm[a] -= h;
        *slot = (field.eval(xp)? - field.eval(xm)?) / (2.0 * h);
    }
    Ok(SpatialPartials(d))
}

/// `κB ± Σⱼ eⱼ∘∂ⱼB`.
pub fn gradiental_apply(
    kappa: f64,
    sign: super::Sign,
    field: &dyn SpatialField,
    x: [f64; 3],
    h: f64,
) -> Result<Biquaternion> {
    let d = spatial_derivatives(field, x, h)?;
    let mut grad = Biquaternion::ZERO;
    for j in 0..3 {
        grad += Biquaternion::basis(j + 1) * d.0[j];
    }
    Ok(field.eval(x)? * kappa + grad * sign.as_f64())
}

/// The field `(κ ± ∇)∘B`, for nested gradiental operators.
pub struct GradientalField<'a> {
    pub kappa: f64,
    pub sign: super::Sign,
    pub inner: &'a dyn SpatialField,
    pub h: f64,
}

impl SpatialField for GradientalField<'_> {
    fn eval(&self, x: [f64; 3]) -> Result<Biquaternion> {
        gradiental_apply(self.kappa, self.sign, self.inner, x, self.h)
    }
}

