//! Source and data fields described in JSON:
//! `{"type":"gaussian|bump|plane|table|zero", ...}`.

use std::fs::File;
use std::io::BufReader;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::algebra::{real, Biquaternion, CVec3, I};
use crate::diffops::{BqField, GridBqField, Partials, Sign, SpatialField, SpatialPartials, Support};
use crate::waves::{Bump, BumpField, SpatialBump, SpatialBumpField};
use crate::{Error, Result, SpacetimePoint};

fn unit() -> Biquaternion {
    Biquaternion::ONE
}

fn default_cutoff() -> f64 {
    8.0
}

fn default_sign() -> String {
    "+".into()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase", deny_unknown_fields)]
pub enum SourceSpec {
    /// `C·exp(−((τ−τ₀)² + ‖x−c‖²)/(2w²))`, truncated at `cutoff·w`.
    Gaussian {
        #[serde(default)]
        tau0: f64,
        #[serde(default)]
        center: [f64; 3],
        width: f64,
        #[serde(default = "unit")]
        coeff: Biquaternion,
        #[serde(default = "default_cutoff")]
        cutoff: f64,
    },
    /// Smooth compactly supported bump; `normalized` rescales to unit mass.
    Bump {
        #[serde(default)]
        tau0: f64,
        #[serde(default)]
        center: [f64; 3],
        rt: f64,
        rx: f64,
        #[serde(default = "unit")]
        coeff: Biquaternion,
        #[serde(default)]
        normalized: bool,
    },
    /// Free wave `C e^{i((ξ,x) ± ‖ξ‖τ)}` with `C = ½(Y − iξ̂∘Y)`, solving `∇^±K = 0`.
    Plane {
        xi: [f64; 3],
        #[serde(default = "unit")]
        coeff: Biquaternion,
        #[serde(default = "default_sign")]
        sign: String,
    },
    /// Sampled grid file, zero outside its box.
    Table { path: String },
    Zero,
}

impl SourceSpec {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse { line: e.line(), message: e.to_string() })
    }

    /// Spacetime field; relative table paths resolve against `base`.
    pub fn to_field(&self, base: &Path) -> Result<Box<dyn BqField>> {
        Ok(match self {
            SourceSpec::Gaussian { tau0, center, width, coeff, cutoff } => {
                Box::new(Gaussian::new(*tau0, *center, *width, *coeff, *cutoff)?)
            }
            SourceSpec::Bump { tau0, center, rt, rx, coeff, normalized } => {
                let bump = if *normalized {
                    Bump::normalized(*tau0, *center, *rt, *rx)?
                } else {
                    Bump::new(*tau0, *center, *rt, *rx, 1.0)?
                };
                Box::new(BumpField { bump, coeff: *coeff })
            }
            SourceSpec::Plane { xi, coeff, sign } => Box::new(PlaneWave::new(*xi, *coeff, parse_sign(sign)?)?),
            SourceSpec::Table { path } => {
                let full = base.join(path);
                let file = File::open(&full)
                    .map_err(|e| Error::invalid(format!("cannot open table {}: {e}", full.display())))?;
                Box::new(Table(GridBqField::read_from(BufReader::new(file))?))
            }
            SourceSpec::Zero => Box::new(crate::diffops::ZeroField),
        })
    }

    /// Time-independent field on R³ (the `τ` parameters are ignored).
    pub fn to_spatial_field(&self) -> Result<Box<dyn SpatialField>> {
        Ok(match self {
            SourceSpec::Gaussian { center, width, coeff, cutoff, .. } => {
                Box::new(Gaussian::new(0.0, *center, *width, *coeff, *cutoff)?)
            }
            SourceSpec::Bump { center, rx, coeff, normalized, .. } => {
                let bump =
                    if *normalized { SpatialBump::normalized(*center, *rx)? } else { SpatialBump::new(*center, *rx, 1.0)? };
                Box::new(SpatialBumpField { bump, coeff: *coeff })
            }
            SourceSpec::Zero => Box::new(ZeroSpatial),
            other => {
                return Err(Error::invalid(format!("source type {} has no time-independent form", other.type_name())))
            }
        })
    }

    pub fn type_name(&self) -> &'static str {
        match self {
            SourceSpec::Gaussian { .. } => "gaussian",
            SourceSpec::Bump { .. } => "bump",
            SourceSpec::Plane { .. } => "plane",
            SourceSpec::Table { .. } => "table",
            SourceSpec::Zero => "zero",
        }
    }
}

pub fn parse_sign(s: &str) -> Result<Sign> {
    Sign::parse(s).ok_or_else(|| Error::invalid(format!("sign must be \"+\" or \"-\", got {s:?}")))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Gaussian {
    pub tau0: f64,
    pub center: [f64; 3],
    pub width: f64,
    pub coeff: Biquaternion,
    pub cutoff: f64,
}

impl Gaussian {
    pub fn new(tau0: f64, center: [f64; 3], width: f64, coeff: Biquaternion, cutoff: f64) -> Result<Self> {
        if !(width > 0.0 && width.is_finite() && cutoff > 0.0 && cutoff.is_finite()) {
            return Err(Error::invalid("gaussian needs finite width > 0 and cutoff > 0"));
        }
        if !tau0.is_finite() || !center.iter().all(|c| c.is_finite()) || !coeff.is_finite() {
            return Err(Error::invalid("gaussian parameters must be finite"));
        }
        Ok(Gaussian { tau0, center, width, coeff, cutoff })
    }

    /// `(g, [∂τg, ∂₁g, ∂₂g, ∂₃g])` with `τ` included.
    fn profile(&self, tau: f64, x: [f64; 3], with_time: bool) -> (f64, [f64; 4]) {
        let dt = if with_time { tau - self.tau0 } else { 0.0 };
        let d = real::sub(x, self.center);
        let r2 = dt * dt + real::dot(d, d);
        if r2.sqrt() > self.cutoff * self.width {
            return (0.0, [0.0; 4]);
        }
        let w2 = self.width * self.width;
        let g = (-r2 / (2.0 * w2)).exp();
        (g, [dt, d[0], d[1], d[2]].map(|v| -g * v / w2))
    }

    fn reach(&self) -> f64 {
        self.cutoff * self.width
    }
}

impl BqField for Gaussian {
    fn eval(&self, p: &SpacetimePoint) -> Result<Biquaternion> {
        Ok(self.coeff * self.profile(p.tau, p.x, true).0)
    }
    fn partials(&self, p: &SpacetimePoint) -> Option<Result<Partials>> {
        let (_, d) = self.profile(p.tau, p.x, true);
        Some(Ok(Partials(d.map(|v| self.coeff * v))))
    }
    fn support(&self) -> Option<Support> {
        let r = self.reach();
        Some(Support { tau: (self.tau0 - r, self.tau0 + r), center: self.center, radius: r })
    }
}

impl SpatialField for Gaussian {
    fn eval(&self, x: [f64; 3]) -> Result<Biquaternion> {
        Ok(self.coeff * self.profile(0.0, x, false).0)
    }
    fn partials(&self, x: [f64; 3]) -> Option<Result<SpatialPartials>> {
        let (_, d) = self.profile(0.0, x, false);
        Some(Ok(SpatialPartials([d[1], d[2], d[3]].map(|v| self.coeff * v))))
    }
    fn support(&self) -> Option<([f64; 3], f64)> {
        Some((self.center, self.reach()))
    }
}

/// Free wave `C e^{i((ξ,x) ± ‖ξ‖τ)}` with `ξ̂∘C = iC`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlaneWave {
    pub xi: [f64; 3],
    pub amplitude: Biquaternion,
    pub sign: Sign,
}

impl PlaneWave {
    /// Projects `y` onto the admissible amplitudes.
    pub fn new(xi: [f64; 3], y: Biquaternion, sign: Sign) -> Result<Self> {
        if !xi.iter().all(|v| v.is_finite()) {
            return Err(Error::ZeroWaveVector);
        }
        let n = real::normalize(xi).ok_or(Error::ZeroWaveVector)?;
        let nb = Biquaternion::from_vector(CVec3::from_real(n));
        Ok(PlaneWave { xi, amplitude: (y - nb * y * I) * 0.5, sign })
    }

    fn omega(&self) -> f64 {
        self.sign.as_f64() * real::norm(self.xi)
    }

    pub fn at(&self, p: &SpacetimePoint) -> Biquaternion {
        self.amplitude * (I * (real::dot(self.xi, p.x) + self.omega() * p.tau)).exp()
    }
}

impl BqField for PlaneWave {
    fn eval(&self, p: &SpacetimePoint) -> Result<Biquaternion> {
        Ok(self.at(p))
    }
    fn partials(&self, p: &SpacetimePoint) -> Option<Result<Partials>> {
        let k = self.at(p);
        let w = [self.omega(), self.xi[0], self.xi[1], self.xi[2]];
        Some(Ok(Partials(w.map(|v| k * (I * v)))))
    }
}

/// Grid samples extended by zero outside the sampled box.
pub struct Table(pub GridBqField);

impl BqField for Table {
    fn eval(&self, p: &SpacetimePoint) -> Result<Biquaternion> {
        match self.0.eval(p) {
            Err(Error::OutOfDomain { .. }) => Ok(Biquaternion::ZERO),
            other => other,
        }
    }
    fn support(&self) -> Option<Support> {
        self.0.support()
    }
}

struct ZeroSpatial;

impl SpatialField for ZeroSpatial {
    fn eval(&self, _x: [f64; 3]) -> Result<Biquaternion> {
        Ok(Biquaternion::ZERO)
    }
    fn partials(&self, _x: [f64; 3]) -> Option<Result<SpatialPartials>> {
        Some(Ok(SpatialPartials([Biquaternion::ZERO; 3])))
    }
    fn support(&self) -> Option<([f64; 3], f64)> {
        Some(([0.0; 3], 0.0))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::c;
    use crate::diffops::{bigradient, derivatives, GridHeader};

    #[test]
    fn parses_each_type() {
        let g = SourceSpec::from_json(r#"{"type":"gaussian","width":0.5}"#).unwrap();
        assert!(matches!(g, SourceSpec::Gaussian { cutoff, .. } if cutoff == 8.0));
        let b = SourceSpec::from_json(r#"{"type":"bump","rt":1,"rx":2,"normalized":true}"#).unwrap();
        assert!(matches!(b, SourceSpec::Bump { normalized: true, .. }));
        let p = SourceSpec::from_json(r#"{"type":"plane","xi":[0,0,1],"sign":"-"}"#).unwrap();
        assert_eq!(p.type_name(), "plane");
        assert_eq!(SourceSpec::from_json(r#"{"type":"zero"}"#).unwrap(), SourceSpec::Zero);
    }

    #[test]
    fn rejects_malformed_specs() {
        assert!(SourceSpec::from_json(r#"{"type":"gaussian"}"#).is_err());
        assert!(SourceSpec::from_json(r#"{"type":"gaussian","width":1,"bogus":2}"#).is_err());
        assert!(SourceSpec::from_json(r#"{"type":"laser"}"#).is_err());
        let err = SourceSpec::from_json("{\n\"type\":\"bump\",\n\"rt\":\"x\"}").unwrap_err();
        assert!(matches!(err, Error::Parse { .. }));
        let bad = SourceSpec::Gaussian { tau0: 0.0, center: [0.0; 3], width: -1.0, coeff: unit(), cutoff: 8.0 };
        assert!(bad.to_field(Path::new(".")).is_err());
        let plane = SourceSpec::Plane { xi: [0.0; 3], coeff: unit(), sign: "+".into() };
        assert_eq!(plane.to_field(Path::new(".")).err(), Some(Error::ZeroWaveVector));
        let plane = SourceSpec::Plane { xi: [1.0, 0.0, 0.0], coeff: unit(), sign: "*".into() };
        assert!(plane.to_field(Path::new(".")).is_err());
        assert!(plane.to_spatial_field().is_err());
    }

    #[test]
    fn gaussian_partials_match_differences() {
        let g = Gaussian::new(0.2, [0.1, -0.3, 0.0], 0.7, Biquaternion::from_components([c(1.0, 2.0), c(0.0, 1.0), c(0.5, 0.0), c(0.0, 0.0)]), 8.0).unwrap();
        let p = SpacetimePoint::new(0.5, [0.3, 0.1, -0.4]);
        let exact = BqField::partials(&g, &p).unwrap().unwrap();
        let fd = derivatives(&crate::diffops::FnField::new(|p| BqField::eval(&g, p).unwrap()), &p, 1e-5).unwrap();
        for a in 0..4 {
            assert!(exact.0[a].distance(&fd.0[a]) < 1e-9);
        }
        assert_eq!(BqField::eval(&g, &SpacetimePoint::new(0.2, [10.0, 0.0, 0.0])).unwrap(), Biquaternion::ZERO);
        let s = SpatialField::eval(&g, [0.1, -0.3, 0.0]).unwrap();
        assert_eq!(s, g.coeff);
    }

    #[test]
    fn plane_source_is_a_free_wave() {
        for sign in ["+", "-"] {
            let spec = SourceSpec::Plane { xi: [0.3, -0.4, 1.2], coeff: unit(), sign: sign.into() };
            let f = spec.to_field(Path::new(".")).unwrap();
            let g = bigradient(parse_sign(sign).unwrap(), f.as_ref(), &SpacetimePoint::new(0.3, [0.1, 0.2, 0.3]), 1e-3);
            assert!(g.unwrap().norm() < 1e-14);
        }
    }

    #[test]
    fn table_source_round_trip() {
        let header = GridHeader { origin: [0.0; 4], spacing: [0.5; 4], extents: [2, 2, 2, 2] };
        let field = crate::diffops::FnField::new(|p| Biquaternion::real(p.tau + p.x[0]));
        let grid = GridBqField::sample(header, &field).unwrap();
        let dir = tempfile::tempdir().unwrap();
        let mut buf = Vec::new();
        grid.write_to(&mut buf).unwrap();
        std::fs::write(dir.path().join("g.jsonl"), buf).unwrap();
        let spec = SourceSpec::from_json(r#"{"type":"table","path":"g.jsonl"}"#).unwrap();
        let f = spec.to_field(dir.path()).unwrap();
        let v = f.eval(&SpacetimePoint::new(0.25, [0.25, 0.0, 0.0])).unwrap();
        assert!(v.distance(&Biquaternion::real(0.5)) < 1e-15);
        assert_eq!(f.eval(&SpacetimePoint::new(5.0, [0.0; 3])).unwrap(), Biquaternion::ZERO);
        let missing = SourceSpec::Table { path: "nope.jsonl".into() };
        assert!(missing.to_field(dir.path()).is_err());
    }
}
