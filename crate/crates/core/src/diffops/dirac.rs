//! Matrix form of the bigradients: `∇⁺ ↔ D = Σ_a Dᵃ ∂_a`, `∇⁻ ↔ D̄`.
//!
//! Slot ordering is `(b₀, b₁, b₂, b₃) = (f, F₁, F₂, F₃)`.

use std::ops::Mul;

use super::{derivatives, BqField, Partials, Sign};
use crate::algebra::Complex;
use crate::{Result, SpacetimePoint};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiracMatrix(pub [[Complex; 4]; 4]);

const O: Complex = Complex::new(0.0, 0.0);
const P: Complex = Complex::new(0.0, 1.0);
const N: Complex = Complex::new(0.0, -1.0);

impl DiracMatrix {
    pub fn identity() -> Self {
        let mut m = [[O; 4]; 4];
        for (j, row) in m.iter_mut().enumerate() {
            row[j] = Complex::new(1.0, 0.0);
        }
        DiracMatrix(m)
    }

    pub fn conj(&self) -> Self {
        DiracMatrix(self.0.map(|row| row.map(|c| c.conj())))
    }

    pub fn adjoint(&self) -> Self {
        let mut m = [[O; 4]; 4];
        for (r, row) in m.iter_mut().enumerate() {
            for (c, slot) in row.iter_mut().enumerate() {
                *slot = self.0[c][r].conj();
            }
        }
        DiracMatrix(m)
    }

    pub fn apply(&self, v: &[Complex; 4]) -> [Complex; 4] {
        let mut out = [O; 4];
        for (r, slot) in out.iter_mut().enumerate() {
            *slot = (0..4).map(|c| self.0[r][c] * v[c]).sum();
        }
        out
    }

    pub fn max_abs_diff(&self, other: &DiracMatrix) -> f64 {
        let mut m: f64 = 0.0;
        for r in 0..4 {
            for c in 0..4 {
                m = m.max((self.0[r][c] - other.0[r][c]).norm());
            }
        }
        m
    }
}

impl Mul for DiracMatrix {
    type Output = DiracMatrix;
    fn mul(self, o: DiracMatrix) -> DiracMatrix {
        let mut m = [[O; 4]; 4];
        for (r, row) in m.iter_mut().enumerate() {
            for (c, slot) in row.iter_mut().enumerate() {
                *slot = (0..4).map(|k| self.0[r][k] * o.0[k][c]).sum();
            }
        }
        DiracMatrix(m)
    }
}

/// `[D⁰, D¹, D², D³]` with `∇⁺ = Σ_a Dᵃ ∂_a` in slot form.
///
/// Every entry follows from expanding `(∂τ + i∇)∘(f + F)`; `D⁰ = I` and the
/// spatial matrices are Hermitian with entries in `{0, ±i}`.
pub fn dirac_matrices() -> [DiracMatrix; 4] {
    let d1 = DiracMatrix([
        [O, N, O, O],
        [P, O, O, O],
        [O, O, O, N],
        [O, O, P, O],
    ]);
    let d2 = DiracMatrix([
        [O, O, N, O],
        [O, O, O, P],
        [P, O, O, O],
        [O, N, O, O],
    ]);
    let d3 = DiracMatrix([
        [O, O, O, N],
        [O, O, N, O],
        [O, P, O, O],
        [P, O, O, O],
    ]);
    [DiracMatrix::identity(), d1, d2, d3]
}

/// Matrices of `∇±`; the minus operator is the complex conjugate.
pub fn signed_matrices(sign: Sign) -> [DiracMatrix; 4] {
    let m = dirac_matrices();
    match sign {
        Sign::Plus => m,
        Sign::Minus => m.map(|d| d.conj()),
    }
}

pub fn matrix_apply_from_partials(sign: Sign, d: &Partials) -> [Complex; 4] {
    let mats = signed_matrices(sign);
    let mut out = [O; 4];
    for (a, m) in mats.iter().enumerate() {
        let v = m.apply(&d.0[a].components());
        for (slot, x) in out.iter_mut().zip(v) {
            *slot += x;
        }
    }
    out
}

/// `D± b` as a slot 4-vector, sharing the derivative values used by `bigradient`.
pub fn matrix_apply(sign: Sign, field: &dyn BqField, p: &SpacetimePoint, h: f64) -> Result<[Complex; 4]> {
    let d = derivatives(field, p, h)?;
    Ok(matrix_apply_from_partials(sign, &d))
}

/// Quadratic form `Σ_{a≤b} c_ab σ_a σ_b` in the derivative symbols
/// `(σ₀..σ₃) = (∂τ, ∂₁, ∂₂, ∂₃)`. Only the upper triangle is populated.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct QuadraticSymbol(pub [[Complex; 4]; 4]);

impl QuadraticSymbol {
    /// `δ_ml·(σ₀² − σ₁² − σ₂² − σ₃²)` when `diag` is set, else zero.
    pub fn dalembertian(diag: bool) -> Self {
        let mut q = QuadraticSymbol::default();
        if diag {
            q.0[0][0] = Complex::new(1.0, 0.0);
            for a in 1..4 {
                q.0[a][a] = Complex::new(-1.0, 0.0);
            }
        }
        q
    }

    pub fn max_abs_diff(&self, other: &QuadraticSymbol) -> f64 {
        let mut m: f64 = 0.0;
        for a in 0..4 {
            for b in a..4 {
                m = m.max((self.0[a][b] - other.0[a][b]).norm());
            }
        }
        m
    }
}

/// Symbol of the composed matrix operator `D^outer · D^inner`, entry by entry.
pub fn operator_product_symbol(outer: Sign, inner: Sign) -> [[QuadraticSymbol; 4]; 4] {
    let mo = signed_matrices(outer);
    let mi = signed_matrices(inner);
    let mut out = [[QuadraticSymbol::default(); 4]; 4];
    for a in 0..4 {
        for b in 0..4 {
            let prod = mo[a] * mi[b];
            let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
            for m in 0..4 {
                for l in 0..4 {
                    out[m][l].0[lo][hi] += prod.0[m][l];
                }
            }
        }
    }
    out
}
