//! Uniformly sampled biquaternion fields.
//!
//! Serialized form (UTF-8, `\n` line endings):
//!
//! ```text
//! {"origin":[t0,x0,y0,z0],"spacing":[ht,h1,h2,h3],"extents":[nt,n1,n2,n3]}
//! {"s":[re,im],"v":[[re,im],[re,im],[re,im]]}
//! ...
//! ```
//!
//! The header is followed by exactly `nt·n1·n2·n3` biquaternion records in
//! row-major order: `τ` slowest, `x₃` fastest.

use std::io::{BufRead, Write};

use serde::{Deserialize, Serialize};

use super::dirac::signed_matrices;
use super::{BqField, Partials, Sign, Support};
use crate::algebra::Biquaternion;
use crate::{Error, Result, SpacetimePoint};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridHeader {
    pub origin: [f64; 4],
    pub spacing: [f64; 4],
    pub extents: [usize; 4],
}

impl GridHeader {
    pub fn len(&self) -> usize {
        self.extents.iter().product()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn validate(&self) -> Result<()> {
        if self.spacing.iter().any(|h| !(h.is_finite() && *h > 0.0)) {
            return Err(Error::invalid("grid spacing must be positive and finite"));
        }
        if self.origin.iter().any(|o| !o.is_finite()) {
            return Err(Error::invalid("grid origin must be finite"));
        }
        if self.extents.contains(&0) {
            return Err(Error::invalid("grid extents must be non-zero"));
        }
        Ok(())
    }

    pub fn point(&self, idx: [usize; 4]) -> SpacetimePoint {
        let c = |a: usize| self.origin[a] + idx[a] as f64 * self.spacing[a];
        SpacetimePoint::new(c(0), [c(1), c(2), c(3)])
    }

    pub fn linear(&self, idx: [usize; 4]) -> usize {
        let [_, n1, n2, n3] = self.extents;
        ((idx[0] * n1 + idx[1]) * n2 + idx[2]) * n3 + idx[3]
    }

    /// All grid indices in storage order.
    pub fn indices(&self) -> impl Iterator<Item = [usize; 4]> + '_ {
        let [n0, n1, n2, n3] = self.extents;
        (0..n0).flat_map(move |a| {
            (0..n1).flat_map(move |b| (0..n2).flat_map(move |c| (0..n3).map(move |d| [a, b, c, d])))
        })
    }

    /// Index of the node at `p`, if `p` sits on one (within `1e-9` of a spacing).
    pub fn node_index(&self, p: &SpacetimePoint) -> Option<[usize; 4]> {
        let coords = p.coords();
        let mut idx = [0usize; 4];
        for a in 0..4 {
            let t = (coords[a] - self.origin[a]) / self.spacing[a];
            let r = t.round();
            if (t - r).abs() > 1e-9 || r < 0.0 || r as usize >= self.extents[a] {
                return None;
            }
            idx[a] = r as usize;
        }
        Some(idx)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GridBqField {
    header: GridHeader,
    samples: Vec<Biquaternion>,
}

impl GridBqField {
    pub fn new(header: GridHeader, samples: Vec<Biquaternion>) -> Result<Self> {
        header.validate()?;
        if samples.len() != header.len() {
            return Err(Error::invalid(format!(
                "grid expects {} samples, got {}",
                header.len(),
                samples.len()
            )));
        }
        if samples.iter().any(|b| !b.is_finite()) {
            return Err(Error::invalid("grid samples must be finite"));
        }
        Ok(GridBqField { header, samples })
    }

    pub fn sample(header: GridHeader, field: &dyn BqField) -> Result<Self> {
        header.validate()?;
        let samples = header
            .indices()
            .map(|idx| field.eval(&header.point(idx)))
            .collect::<Result<Vec<_>>>()?;
        GridBqField::new(header, samples)
    }

    pub fn header(&self) -> &GridHeader {
        &self.header
    }

    pub fn samples(&self) -> &[Biquaternion] {
        &self.samples
    }

    pub fn at(&self, idx: [usize; 4]) -> Biquaternion {
        self.samples[self.header.linear(idx)]
    }

    fn out_of_domain(p: &SpacetimePoint) -> Error {
        Error::OutOfDomain { tau: p.tau, x: p.x }
    }

    fn interior_node(&self, p: &SpacetimePoint, reach: usize) -> Result<[usize; 4]> {
        let idx = self.header.node_index(p).ok_or_else(|| Self::out_of_domain(p))?;
        for a in 0..4 {
            if idx[a] < reach || idx[a] + reach >= self.header.extents[a] {
                return Err(Self::out_of_domain(p));
            }
        }
        Ok(idx)
    }

    fn offset(idx: [usize; 4], axis: usize, delta: isize) -> [usize; 4] {
        let mut out = idx;
        out[axis] = (idx[axis] as isize + delta) as usize;
        out
    }

    /// Mixed or pure second difference `∂_a∂_b F` at an interior node.
    fn second_difference(&self, idx: [usize; 4], a: usize, b: usize) -> Biquaternion {
        let h = self.header.spacing;
        if a == b {
            let fp = self.at(Self::offset(idx, a, 1));
            let fm = self.at(Self::offset(idx, a, -1));
            (fp + fm - self.at(idx) * 2.0) / (h[a] * h[a])
        } else {
            let pp = self.at(Self::offset(Self::offset(idx, a, 1), b, 1));
            let pm = self.at(Self::offset(Self::offset(idx, a, 1), b, -1));
            let mp = self.at(Self::offset(Self::offset(idx, a, -1), b, 1));
            let mm = self.at(Self::offset(Self::offset(idx, a, -1), b, -1));
            (pp - pm - mp + mm) / (4.0 * h[a] * h[b])
        }
    }

    /// `∇^outer(∇^inner F)` at a node through one combined second-order stencil.
    pub fn nested_bigradient(&self, outer: Sign, inner: Sign, p: &SpacetimePoint) -> Result<Biquaternion> {
        let idx = self.interior_node(p, 1)?;
        let mo = signed_matrices(outer);
        let mi = signed_matrices(inner);
        let mut acc = [crate::algebra::Complex::new(0.0, 0.0); 4];
        for a in 0..4 {
            for b in 0..4 {
                let prod = mo[a] * mi[b];
                let v = prod.apply(&self.second_difference(idx, a, b).components());
                for (slot, x) in acc.iter_mut().zip(v) {
                    *slot += x;
                }
            }
        }
        Ok(Biquaternion::from_components(acc))
    }

    /// `(∂τ² − Δ)F` at an interior node by 3-point second differences.
    pub fn dalembertian(&self, p: &SpacetimePoint) -> Result<Biquaternion> {
        let idx = self.interior_node(p, 1)?;
        let mut acc = self.second_difference(idx, 0, 0);
        for a in 1..4 {
            acc -= self.second_difference(idx, a, a);
        }
        Ok(acc)
    }

    pub fn write_to(&self, mut w: impl Write) -> std::io::Result<()> {
        writeln!(w, "{}", serde_json::to_string(&self.header).expect("header serializes"))?;
        for b in &self.samples {
            writeln!(w, "{}", b.to_json())?;
        }
        Ok(())
    }

    pub fn read_from(r: impl BufRead) -> Result<Self> {
        let mut lines = r.lines().enumerate();
        let (_, first) = lines.next().ok_or(Error::Parse {
            line: 1,
            message: "missing grid header".into(),
        })?;
        let first = first.map_err(|e| Error::Parse { line: 1, message: e.to_string() })?;
        let header: GridHeader = serde_json::from_str(&first).map_err(|e| Error::Parse {
            line: 1,
            message: e.to_string(),
        })?;
        header.validate()?;
        let mut samples = Vec::with_capacity(header.len());
        for (n, line) in lines {
            let line = line.map_err(|e| Error::Parse { line: n + 1, message: e.to_string() })?;
            if line.is_empty() {
                continue;
            }
            let b = Biquaternion::from_json(&line).map_err(|e| match e {
                Error::Parse { message, .. } => Error::Parse { line: n + 1, message },
                other => other,
            })?;
            samples.push(b);
        }
        GridBqField::new(header, samples)
    }
}

impl BqField for GridBqField {
    /// Multilinear interpolation inside the sampled box.
    fn eval(&self, p: &SpacetimePoint) -> Result<Biquaternion> {
        let coords = p.coords();
        let mut base = [0usize; 4];
        let mut frac = [0.0f64; 4];
        for a in 0..4 {
            let n = self.header.extents[a];
            let t = (coords[a] - self.header.origin[a]) / self.header.spacing[a];
            if !(-1e-9..=(n - 1) as f64 + 1e-9).contains(&t) {
                return Err(Self::out_of_domain(p));
            }
            if n == 1 {
                continue;
            }
            let t = t.clamp(0.0, (n - 1) as f64);
            let i = (t.floor() as usize).min(n - 2);
            base[a] = i;
            frac[a] = t - i as f64;
        }
        let mut acc = Biquaternion::ZERO;
        for corner in 0..16usize {
            let mut w = 1.0;
            let mut idx = base;
            for a in 0..4 {
                let bit = (corner >> a) & 1;
                if self.header.extents[a] == 1 {
                    if bit == 1 {
                        w = 0.0;
                    }
                    continue;
                }
                idx[a] += bit;
                w *= if bit == 1 { frac[a] } else { 1.0 - frac[a] };
            }
            if w != 0.0 {
                acc += self.at(idx) * w;
            }
        }
        Ok(acc)
    }

    /// Central differences at grid nodes; boundary nodes lack stencil support.
    fn partials(&self, p: &SpacetimePoint) -> Option<Result<Partials>> {
        self.header.node_index(p)?;
        Some(self.interior_node(p, 1).map(|idx| {
            let mut d = [Biquaternion::ZERO; 4];
            for (a, slot) in d.iter_mut().enumerate() {
                let fp = self.at(Self::offset(idx, a, 1));
                let fm = self.at(Self::offset(idx, a, -1));
                *slot = (fp - fm) / (2.0 * self.header.spacing[a]);
            }
            Partials(d)
        }))
    }

    fn support(&self) -> Option<Support> {
        let h = &self.header;
        let lo = h.origin;
        let hi: [f64; 4] = std::array::from_fn(|a| h.origin[a] + (h.extents[a] - 1) as f64 * h.spacing[a]);
        let center = [1, 2, 3].map(|a| 0.5 * (lo[a] + hi[a]));
        let radius = [1, 2, 3]
            .iter()
            .map(|&a| (0.5 * (hi[a] - lo[a])).powi(2))
            .sum::<f64>()
            .sqrt();
        Some(Support {
            tau: (lo[0], hi[0]),
            center,
            radius,
        })
    }
}
