//! Python module `biwave`.

use pyo3::exceptions::{PyTypeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

use biwave::algebra::{Biquaternion, CVec3, Complex};
use biwave::diffops::Sign;
use biwave::physics::{self, Medium};
use biwave::transforms::{Boost, PoincareOp, Rotor};
use biwave::SpacetimePoint;

fn err(e: biwave::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn sign(s: &str) -> PyResult<Sign> {
    Sign::parse(s).ok_or_else(|| PyValueError::new_err(format!("sign must be '+' or '-', got {s:?}")))
}

fn medium(eps: f64, mu: f64) -> PyResult<Medium> {
    Medium::new(eps, mu).map_err(err)
}

type PointTuple = (f64, [f64; 3]);

fn point((tau, x): PointTuple) -> SpacetimePoint {
    SpacetimePoint::new(tau, x)
}

fn tuple(p: SpacetimePoint) -> PointTuple {
    (p.tau, p.x)
}

/// Complex biquaternion `s + v₁e₁ + v₂e₂ + v₃e₃`.
#[pyclass(name = "Biquaternion", module = "biwave", frozen, eq, from_py_object)]
#[derive(Clone, Copy, PartialEq)]
struct PyBq(Biquaternion);

#[pymethods]
impl PyBq {
    #[new]
    #[pyo3(signature = (scalar = Complex::new(0.0, 0.0), vector = [Complex::new(0.0, 0.0); 3]))]
    fn new(scalar: Complex, vector: [Complex; 3]) -> PyResult<Self> {
        Biquaternion::try_new(scalar, CVec3(vector)).map(PyBq).map_err(err)
    }

    #[staticmethod]
    fn basis(j: usize) -> PyResult<Self> {
        if j > 3 {
            return Err(PyValueError::new_err("basis index must be 0..=3"));
        }
        Ok(PyBq(Biquaternion::basis(j)))
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Biquaternion::from_json(text).map(PyBq).map_err(err)
    }

    fn to_json(&self) -> String {
        self.0.to_json()
    }

    #[getter]
    fn scalar(&self) -> Complex {
        self.0.scalar
    }

    #[getter]
    fn vector(&self) -> [Complex; 3] {
        self.0.vector.0
    }

    fn components(&self) -> [Complex; 4] {
        self.0.components()
    }

    fn mutual(&self) -> Self {
        PyBq(self.0.mutual())
    }

    fn complex_conj(&self) -> Self {
        PyBq(self.0.complex_conj())
    }

    fn conj(&self) -> Self {
        PyBq(self.0.conj())
    }

    fn norm(&self) -> f64 {
        self.0.norm()
    }

    fn pseudonorm_sqr(&self) -> f64 {
        self.0.pseudonorm_sqr()
    }

    fn pseudonorm(&self) -> Complex {
        self.0.pseudonorm()
    }

    fn scalar_product(&self, other: &PyBq) -> Complex {
        self.0.scalar_product(&other.0)
    }

    fn commutator(&self, other: &PyBq) -> Self {
        PyBq(self.0.commutator(&other.0))
    }

    fn inverse(&self) -> PyResult<Self> {
        self.0.inverse().map(PyBq).map_err(err)
    }

    /// `(energy density, momentum density)`.
    fn energy_impulse(&self) -> (f64, [f64; 3]) {
        let e = self.0.energy_impulse();
        (e.energy, e.momentum)
    }

    fn distance(&self, other: &PyBq) -> f64 {
        self.0.distance(&other.0)
    }

    fn __add__(&self, other: &PyBq) -> Self {
        PyBq(self.0 + other.0)
    }

    fn __sub__(&self, other: &PyBq) -> Self {
        PyBq(self.0 - other.0)
    }

    fn __neg__(&self) -> Self {
        PyBq(-self.0)
    }

    fn __mul__(&self, other: &Bound<'_, PyAny>) -> PyResult<Self> {
        if let Ok(b) = other.extract::<PyBq>() {
            return Ok(PyBq(self.0 * b.0));
        }
        if let Ok(z) = other.extract::<Complex>() {
            return Ok(PyBq(self.0 * z));
        }
        Err(PyTypeError::new_err("expected Biquaternion or number"))
    }

    fn __rmul__(&self, other: Complex) -> Self {
        PyBq(self.0 * other)
    }

    fn __repr__(&self) -> String {
        format!("Biquaternion({})", self.0)
    }
}

/// `(τ', x')` after a boost with velocity `v` along `axis`.
#[pyfunction]
fn boost(v: f64, axis: [f64; 3], p: PointTuple) -> PyResult<PointTuple> {
    Ok(tuple(Boost::from_velocity(v, axis).map_err(err)?.apply(&point(p))))
}

/// `(τ', x')` under the rotor `cos φ + e sin φ`, a rotation through `2φ` about `e`.
#[pyfunction]
fn rotate(phi: f64, axis: [f64; 3], p: PointTuple) -> PyResult<PointTuple> {
    Ok(tuple(Rotor::new(phi, axis).map_err(err)?.apply(&point(p))))
}

/// `(τ', x')` under the rotation-plus-boost about one axis.
#[pyfunction]
fn poincare(phi: f64, theta: f64, axis: [f64; 3], p: PointTuple) -> PyResult<PointTuple> {
    Ok(tuple(PoincareOp::new(phi, theta, axis).map_err(err)?.apply(&point(p))))
}

/// `τ² − ‖x‖²`.
#[pyfunction]
fn interval(p: PointTuple) -> f64 {
    point(p).interval()
}

#[pyclass(name = "XiSpinor", module = "biwave", frozen)]
struct PyXiSpinor(physics::XiSpinor);

#[pymethods]
impl PyXiSpinor {
    #[new]
    #[pyo3(signature = (xi, rho = 0.0, sign = "+"))]
    fn new(xi: [f64; 3], rho: f64, sign: &str) -> PyResult<Self> {
        physics::XiSpinor::new(xi, rho, self::sign(sign)?).map(PyXiSpinor).map_err(err)
    }

    fn at(&self, p: PointTuple) -> PyBq {
        PyBq(self.0.at(&point(p)))
    }

    /// `(value, regime)` with regime one of `subsonic`, `sonic`, `supersonic`.
    fn phase_speed(&self) -> (f64, String) {
        let s = self.0.phase_speed();
        (s.value, format!("{:?}", s.regime).to_lowercase())
    }

    fn energy_impulse(&self) -> PyBq {
        PyBq(self.0.energy_impulse())
    }

    #[pyo3(signature = (p, h = 1e-3))]
    fn dirac_residual(&self, p: PointTuple, h: f64) -> PyResult<f64> {
        self.0.dirac_residual(&point(p), h).map(|r| r.norm()).map_err(err)
    }
}

#[pyclass(name = "OmegaSpinor", module = "biwave", frozen)]
struct PyOmegaSpinor(physics::OmegaSpinor);

#[pymethods]
impl PyOmegaSpinor {
    #[new]
    #[pyo3(signature = (omega, e, rho = 0.0))]
    fn new(omega: f64, e: [f64; 3], rho: f64) -> PyResult<Self> {
        physics::OmegaSpinor::new(omega, rho, e).map(PyOmegaSpinor).map_err(err)
    }

    fn at(&self, x: [f64; 3]) -> PyBq {
        PyBq(self.0.at(x))
    }

    fn energy_impulse(&self) -> PyBq {
        PyBq(self.0.energy_impulse())
    }

    #[pyo3(signature = (x, h = 1e-3))]
    fn residual(&self, x: [f64; 3], h: f64) -> PyResult<f64> {
        self.0.gradiental_residual(x, h).map(|r| r.norm()).map_err(err)
    }
}

/// `√ε E + i√μ H`.
#[pyfunction]
#[pyo3(signature = (e, h, eps = 1.0, mu = 1.0))]
fn intensity(e: [f64; 3], h: [f64; 3], eps: f64, mu: f64) -> PyResult<PyBq> {
    Ok(PyBq(physics::intensity_from_values(e, h, &medium(eps, mu)?)))
}

/// `(energy density, Poynting vector)` of an intensity.
#[pyfunction]
#[pyo3(signature = (a, eps = 1.0, mu = 1.0))]
fn em_energy(a: &PyBq, eps: f64, mu: f64) -> PyResult<(f64, [f64; 3])> {
    let e = physics::em_energy(&a.0, &medium(eps, mu)?);
    Ok((e.energy, e.poynting))
}

/// Front conditions for EM gaps; returns a dict with the worst residual and
/// the transversality flag.
#[pyfunction]
#[pyo3(signature = (gap_e, gap_h, normal, eps = 1.0, mu = 1.0))]
fn em_shock_check<'py>(
    py: Python<'py>,
    gap_e: [f64; 3],
    gap_h: [f64; 3],
    normal: [f64; 3],
    eps: f64,
    mu: f64,
) -> PyResult<Bound<'py, PyDict>> {
    let c = physics::em_shock_check(gap_e, gap_h, normal, &medium(eps, mu)?).map_err(err)?;
    let d = PyDict::new(py);
    d.set_item("max_abs", c.max_abs())?;
    d.set_item("longitudinal", c.longitudinal)?;
    d.set_item("transversal", c.transversal)?;
    Ok(d)
}

/// JSON report of a verification suite.
#[pyfunction]
#[pyo3(signature = (suite = "all", n = 100, seed = 7, tol = None))]
fn verify(suite: &str, n: usize, seed: u64, tol: Option<f64>) -> PyResult<String> {
    use clap::ValueEnum;
    let s = biwave::cli::Suite::from_str(suite, true).map_err(PyValueError::new_err)?;
    let report = biwave::cli::run_verify(s, n, seed, tol);
    serde_json::to_string(&report).map_err(|e| PyValueError::new_err(e.to_string()))
}

/// Runs the command line with `args` (without the program name) and returns
/// `(exit code, stdout, stderr)`.
#[pyfunction]
fn run_cli(args: Vec<String>) -> (i32, String, String) {
    let (mut out, mut errs) = (Vec::new(), Vec::new());
    let argv = std::iter::once("biwave".to_owned()).chain(args);
    let code = biwave::cli::run_with(argv, &mut out, &mut errs);
    (code, String::from_utf8_lossy(&out).into_owned(), String::from_utf8_lossy(&errs).into_owned())
}

#[pymodule]
#[pyo3(name = "biwave")]
fn biwave_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyBq>()?;
    m.add_class::<PyXiSpinor>()?;
    m.add_class::<PyOmegaSpinor>()?;
    m.add_function(wrap_pyfunction!(boost, m)?)?;
    m.add_function(wrap_pyfunction!(rotate, m)?)?;
    m.add_function(wrap_pyfunction!(poincare, m)?)?;
    m.add_function(wrap_pyfunction!(interval, m)?)?;
    m.add_function(wrap_pyfunction!(intensity, m)?)?;
    m.add_function(wrap_pyfunction!(em_energy, m)?)?;
    m.add_function(wrap_pyfunction!(em_shock_check, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add_function(wrap_pyfunction!(run_cli, m)?)?;
    Ok(())
}
