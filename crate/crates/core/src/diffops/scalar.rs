use super::{md_operator, MdOperatorField, ScalarAsBq, Sign};
use crate::algebra::{Biquaternion, Complex};
use crate::{Result, SpacetimePoint};

/// First and second derivatives of a complex scalar field.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScalarDerivatives {
    pub dtau: Complex,
    pub grad: [Complex; 3],
    pub dtau2: Complex,
    pub laplacian: Complex,
}

pub trait ScalarField: Sync {
    fn eval(&self, p: &SpacetimePoint) -> Result<Complex>;

    fn derivatives(&self, _p: &SpacetimePoint) -> Option<Result<ScalarDerivatives>> {
        None
    }
}

type ScalarFn<'a> = Box<dyn Fn(&SpacetimePoint) -> Complex + Send + Sync + 'a>;
type ScalarDerivFn<'a> = Box<dyn Fn(&SpacetimePoint) -> ScalarDerivatives + Send + Sync + 'a>;

pub struct FnScalarField<'a> {
    eval: ScalarFn<'a>,
    derivatives: Option<ScalarDerivFn<'a>>,
}

impl<'a> FnScalarField<'a> {
    pub fn new(eval: impl Fn(&SpacetimePoint) -> Complex + Send + Sync + 'a) -> Self {
        FnScalarField {
            eval: Box::new(eval),
            derivatives: None,
        }
    }

    pub fn with_derivatives(
        mut self,
        d: impl Fn(&SpacetimePoint) -> ScalarDerivatives + Send + Sync + 'a,
    ) -> Self {
        self.derivatives = Some(Box::new(d));
        self
    }
}

impl ScalarField for FnScalarField<'_> {
    fn eval(&self, p: &SpacetimePoint) -> Result<Complex> {
        Ok((self.eval)(p))
    }
    fn derivatives(&self, p: &SpacetimePoint) -> Option<Result<ScalarDerivatives>> {
        self.derivatives.as_ref().map(|d| Ok(d(p)))
    }
}

fn fd_derivatives(u: &dyn ScalarField, p: &SpacetimePoint, h: f64) -> Result<ScalarDerivatives> {
    let c = u.eval(p)?;
    let mut first = [Complex::new(0.0, 0.0); 4];
    let mut second = [Complex::new(0.0, 0.0); 4];
    for a in 0..4 {
        let fp = u.eval(&p.shifted(a, h))?;
        let fm = u.eval(&p.shifted(a, -h))?;
        first[a] = (fp - fm) / (2.0 * h);
        second[a] = (fp + fm - c * 2.0) / (h * h);
    }
    Ok(ScalarDerivatives {
        dtau: first[0],
        grad: [first[1], first[2], first[3]],
        dtau2: second[0],
        laplacian: second[1] + second[2] + second[3],
    })
}

/// KGFSh operator `□u + 2m∂τu + m²u` at `p`.
pub fn kgfsh_apply(mass: Complex, u: &dyn ScalarField, p: &SpacetimePoint, h: f64) -> Result<Complex> {
    let d = match u.derivatives(p) {
        Some(d) => d?,
        None => fd_derivatives(u, p, h)?,
    };
    let value = u.eval(p)?;
    Ok(d.dtau2 - d.laplacian + mass * d.dtau * 2.0 + mass * mass * value)
}

/// `D_m⁺∘D_m⁻ u` by nested application of the biquaternion operators.
pub fn kgfsh_via_dirac(mass: Complex, u: &dyn ScalarField, p: &SpacetimePoint, h: f64) -> Result<Biquaternion> {
    let lifted = ScalarAsBq(u);
    let inner = MdOperatorField::new(Sign::Minus, mass, &lifted, h);
    md_operator(mass, Sign::Plus, &inner, p, h)
}
