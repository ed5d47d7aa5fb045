//! Gauss–Legendre, sphere and ball quadrature rules.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Gauss–Legendre nodes and weights on `[−1, 1]`, by Newton iteration on `Pₙ`.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut x = vec![0.0; n];
    let mut w = vec![0.0; n];
    let m = n.div_ceil(2);
    for i in 0..m {
        let mut z = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 1.0;
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(n, z);
            dp = d;
            let dz = p / d;
            z -= dz;
            if dz.abs() < 1e-16 {
                break;
            }
        }
        let (_, d) = legendre_with_derivative(n, z);
        if d != 0.0 {
            dp = d;
        }
        let wi = 2.0 / ((1.0 - z * z) * dp * dp);
        x[i] = -z;
        x[n - 1 - i] = z;
        w[i] = wi;
        w[n - 1 - i] = wi;
    }
    if n % 2 == 1 {
        x[n / 2] = 0.0;
    }
    (x, w)
}

fn legendre_with_derivative(n: usize, z: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, z);
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let k = k as f64;
        let p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    let nf = n as f64;
    (p1, nf * (z * p1 - p0) / (z * z - 1.0))
}

/// Gauss–Legendre rule mapped to `[a, b]`.
pub fn gauss_legendre_interval(n: usize, a: f64, b: f64) -> Vec<(f64, f64)> {
    let (x, w) = gauss_legendre(n);
    let half = 0.5 * (b - a);
    let mid = 0.5 * (a + b);
    x.iter().zip(w.iter()).map(|(xi, wi)| (mid + half * xi, half * wi)).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SphereScheme {
    /// Gauss–Legendre in `cos θ` times a `2n`-point trapezoid in `φ`.
    Product,
    /// Octahedrally symmetric rules with 6, 14 or 26 points.
    Lebedev,
}

/// Nodes on the unit sphere with weights summing to `4π`.
#[derive(Debug, Clone, PartialEq)]
pub struct SphereRule {
    pub points: Vec<[f64; 3]>,
    pub weights: Vec<f64>,
}

impl SphereRule {
    /// Exact for spherical polynomials of degree `≤ 2n − 1`.
    pub fn product(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::invalid("product sphere rule needs n >= 1"));
        }
        let (ct, wt) = gauss_legendre(n);
        let nphi = 2 * n;
        let dphi = 2.0 * PI / nphi as f64;
        let mut points = Vec::with_capacity(n * nphi);
        let mut weights = Vec::with_capacity(n * nphi);
        for (c, w) in ct.iter().zip(wt.iter()) {
            let s = (1.0 - c * c).max(0.0).sqrt();
            for k in 0..nphi {
                // Offset by half a step so no node sits on a coordinate plane.
                let phi = (k as f64 + 0.5) * dphi;
                points.push([s * phi.cos(), s * phi.sin(), *c]);
                weights.push(w * dphi);
            }
        }
        Ok(SphereRule { points, weights })
    }

    /// Lebedev rules: 6 points (degree 3), 14 (degree 5), 26 (degree 7).
    pub fn lebedev(n: usize) -> Result<Self> {
        let mut points = Vec::new();
        let mut weights = Vec::new();
        let mut push = |set: Vec<[f64; 3]>, w: f64| {
            for p in set {
                points.push(p);
                weights.push(4.0 * PI * w);
            }
        };
        match n {
            6 => push(axes(), 1.0 / 6.0),
            14 => {
                push(axes(), 1.0 / 15.0);
                push(vertices(), 3.0 / 40.0);
            }
            26 => {
                push(axes(), 1.0 / 21.0);
                push(edges(), 4.0 / 105.0);
                push(vertices(), 9.0 / 280.0);
            }
            _ => return Err(Error::invalid(format!("no Lebedev rule with {n} points (use 6, 14 or 26)"))),
        }
        Ok(SphereRule { points, weights })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

fn axes() -> Vec<[f64; 3]> {
    let mut v = Vec::new();
    for a in 0..3 {
        for s in [1.0, -1.0] {
            let mut p = [0.0; 3];
            p[a] = s;
            v.push(p);
        }
    }
    v
}

fn vertices() -> Vec<[f64; 3]> {
    let c = 1.0 / 3f64.sqrt();
    let mut v = Vec::new();
    for sx in [1.0, -1.0] {
        for sy in [1.0, -1.0] {
            for sz in [1.0, -1.0] {
                v.push([sx * c, sy * c, sz * c]);
            }
        }
    }
    v
}

fn edges() -> Vec<[f64; 3]> {
    let c = std::f64::consts::FRAC_1_SQRT_2;
    let mut v = Vec::new();
    for (a, b) in [(0, 1), (0, 2), (1, 2)] {
        for sa in [1.0, -1.0] {
            for sb in [1.0, -1.0] {
                let mut p = [0.0; 3];
                p[a] = sa * c;
                p[b] = sb * c;
                v.push(p);
            }
        }
    }
    v
}

/// Node counts and scheme for ball and sphere integration.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuadratureSpec {
    /// Radial Gauss–Legendre nodes.
    pub n_r: usize,
    /// Product rule: `cos θ` nodes (`2n_s²` sphere points). Lebedev: point count.
    pub n_s: usize,
    #[serde(default = "default_scheme")]
    pub scheme: SphereScheme,
    /// When set, solvers compare against a coarser rule and fail if the
    /// difference exceeds this.
    #[serde(default)]
    pub tolerance: Option<f64>,
}

fn default_scheme() -> SphereScheme {
    SphereScheme::Product
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        QuadratureSpec { n_r: 48, n_s: 24, scheme: SphereScheme::Product, tolerance: None }
    }
}

impl QuadratureSpec {
    pub fn new(n_r: usize, n_s: usize) -> Self {
        QuadratureSpec { n_r, n_s, ..Default::default() }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_r == 0 || self.n_s == 0 {
            return Err(Error::invalid("quadrature node counts must be positive"));
        }
        self.sphere_rule().map(|_| ())
    }

    pub fn sphere_rule(&self) -> Result<SphereRule> {
        match self.scheme {
            SphereScheme::Product => SphereRule::product(self.n_s),
            SphereScheme::Lebedev => SphereRule::lebedev(self.n_s),
        }
    }

    /// Roughly half the nodes in every direction, used for error estimates.
    pub fn coarser(&self) -> QuadratureSpec {
        let n_s = match self.scheme {
            SphereScheme::Product => (self.n_s / 2).max(1),
            SphereScheme::Lebedev => match self.n_s {
                26 => 14,
                _ => 6,
            },
        };
        QuadratureSpec { n_r: (self.n_r / 2).max(1), n_s, ..*self }
    }

    /// Ball rule of the given radius centred at the origin.
    pub fn ball(&self, radius: f64) -> Result<BallRule> {
        BallRule::new(self, 0.0, radius)
    }

    /// Rule on the spherical shell `a ≤ r ≤ b`.
    pub fn shell(&self, a: f64, b: f64) -> Result<BallRule> {
        BallRule::new(self, a, b)
    }

    /// Fails when `|fine − coarse|` exceeds the configured tolerance.
    pub fn check_budget(&self, estimate: f64) -> Result<()> {
        match self.tolerance {
            Some(tol) if !(estimate <= tol) => Err(Error::QuadratureBudgetExceeded { estimate, tolerance: tol }),
            _ => Ok(()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BallNode {
    pub r: f64,
    pub dir: [f64; 3],
    /// Includes the `r²` Jacobian.
    pub weight: f64,
}

/// Tensor product of radial Gauss–Legendre and a sphere rule.
#[derive(Debug, Clone, PartialEq)]
pub struct BallRule {
    pub nodes: Vec<BallNode>,
}

impl BallRule {
    fn new(spec: &QuadratureSpec, a: f64, b: f64) -> Result<Self> {
        if spec.n_r == 0 {
            return Err(Error::invalid("quadrature needs n_r >= 1"));
        }
        if !(a >= 0.0 && b >= a && b.is_finite()) {
            return Err(Error::invalid(format!("invalid radial interval [{a}, {b}]")));
        }
        let sphere = spec.sphere_rule()?;
        let radial = gauss_legendre_interval(spec.n_r, a, b);
        let mut nodes = Vec::with_capacity(radial.len() * sphere.len());
        for (r, wr) in radial {
            for (dir, ws) in sphere.points.iter().zip(sphere.weights.iter()) {
                nodes.push(BallNode { r, dir: *dir, weight: wr * ws * r * r });
            }
        }
        Ok(BallRule { nodes })
    }

    /// `∫ f dV` for a real integrand.
    pub fn integrate(&self, f: impl Fn(f64, [f64; 3]) -> f64) -> f64 {
        self.nodes.iter().map(|n| n.weight * f(n.r, n.dir)).sum()
    }
}
