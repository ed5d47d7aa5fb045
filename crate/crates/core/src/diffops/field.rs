use super::{bigradient, ScalarField, Sign};
use crate::algebra::{Biquaternion, Complex};
use crate::{Result, SpacetimePoint};

/// `[∂τF, ∂₁F, ∂₂F, ∂₃F]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Partials(pub [Biquaternion; 4]);

/// Compact support of a field: a τ-interval times a spatial ball.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Support {
    pub tau: (f64, f64),
    pub center: [f64; 3],
    pub radius: f64,
}

/// A biquaternion-valued function of spacetime.
pub trait BqField: Sync {
    fn eval(&self, p: &SpacetimePoint) -> Result<Biquaternion>;

    /// Exact partial derivatives, when the field knows them.
    fn partials(&self, _p: &SpacetimePoint) -> Option<Result<Partials>> {
        None
    }

    /// Compact support, when the field has one.
    fn support(&self) -> Option<Support> {
        None
    }
}

impl<T: BqField + ?Sized> BqField for &T {
    fn eval(&self, p: &SpacetimePoint) -> Result<Biquaternion> {
        (**self).eval(p)
    }
    fn partials(&self, p: &SpacetimePoint) -> Option<Result<Partials>> {
        (**self).partials(p)
    }
    fn support(&self) -> Option<Support> {
        (**self).support()
    }
}

impl<T: BqField + ?Sized> BqField for Box<T> {
    fn eval(&self, p: &SpacetimePoint) -> Result<Biquaternion> {
        (**self).eval(p)
    }
    fn partials(&self, p: &SpacetimePoint) -> Option<Result<Partials>> {
        (**self).partials(p)
    }
    fn support(&self) -> Option<Support> {
        (**self).support()
    }
}

/// Exact partials if the field provides them, else central differences.
pub fn derivatives(field: &dyn BqField, p: &SpacetimePoint, h: f64) -> Result<Partials> {
    if let Some(exact) = field.partials(p) {
        return exact;
    }
    let mut d = [Biquaternion::ZERO; 4];
    for (axis, slot) in d.iter_mut().enumerate() {
        let fp = field.eval(&p.shifted(axis, h))?;
        let fm = field.eval(&p.shifted(axis, -h))?;
        *slot = (fp - fm) / (2.0 * h);
    }
    Ok(Partials(d))
}

pub struct ZeroField;

impl BqField for ZeroField {
    fn eval(&self, _p: &SpacetimePoint) -> Result<Biquaternion> {
        Ok(Biquaternion::ZERO)
    }
    fn partials(&self, _p: &SpacetimePoint) -> Option<Result<Partials>> {
        Some(Ok(Partials([Biquaternion::ZERO; 4])))
    }
}

type EvalFn<'a> = Box<dyn Fn(&SpacetimePoint) -> Biquaternion + Send + Sync + 'a>;
type PartialsFn<'a> = Box<dyn Fn(&SpacetimePoint) -> Partials + Send + Sync + 'a>;

/// Closure-backed analytic field with optional exact partials.
pub struct FnField<'a> {
    eval: EvalFn<'a>,
    partials: Option<PartialsFn<'a>>,
    support: Option<Support>,
}

impl<'a> FnField<'a> {
    pub fn new(eval: impl Fn(&SpacetimePoint) -> Biquaternion + Send + Sync + 'a) -> Self {
        FnField {
            eval: Box::new(eval),
            partials: None,
            support: None,
        }
    }

    pub fn with_partials(mut self, partials: impl Fn(&SpacetimePoint) -> Partials + Send + Sync + 'a) -> Self {
        self.partials = Some(Box::new(partials));
        self
    }

    pub fn with_support(mut self, support: Support) -> Self {
        self.support = Some(support);
        self
    }
}

impl BqField for FnField<'_> {
    fn eval(&self, p: &SpacetimePoint) -> Result<Biquaternion> {
        Ok((self.eval)(p))
    }
    fn partials(&self, p: &SpacetimePoint) -> Option<Result<Partials>> {
        self.partials.as_ref().map(|f| Ok(f(p)))
    }
    fn support(&self) -> Option<Support> {
        self.support
    }
}

/// The field `(∇± + m)∘F`, evaluated lazily; used for nested operators.
pub struct MdOperatorField<'a> {
    sign: Sign,
    mass: Complex,
    inner: &'a dyn BqField,
    h: f64,
}

impl<'a> MdOperatorField<'a> {
    pub fn new(sign: Sign, mass: Complex, inner: &'a dyn BqField, h: f64) -> Self {
        MdOperatorField { sign, mass, inner, h }
    }
}

impl BqField for MdOperatorField<'_> {
    fn eval(&self, p: &SpacetimePoint) -> Result<Biquaternion> {
        let b = bigradient(self.sign, self.inner, p, self.h)?;
        if self.mass == Complex::new(0.0, 0.0) {
            Ok(b)
        } else {
            Ok(b + self.inner.eval(p)? * self.mass)
        }
    }
}

/// A scalar field viewed as a biquaternion field with zero vector part.
pub struct ScalarAsBq<'a>(pub &'a dyn ScalarField);

impl BqField for ScalarAsBq<'_> {
    fn eval(&self, p: &SpacetimePoint) -> Result<Biquaternion> {
        Ok(Biquaternion::from_scalar(self.0.eval(p)?))
    }
    fn partials(&self, p: &SpacetimePoint) -> Option<Result<Partials>> {
        let d = self.0.derivatives(p)?;
        Some(d.map(|d| {
            Partials([
                Biquaternion::from_scalar(d.dtau),
                Biquaternion::from_scalar(d.grad[0]),
                Biquaternion::from_scalar(d.grad[1]),
                Biquaternion::from_scalar(d.grad[2]),
            ])
        }))
    }
}
