//! Python module `casimir`.
//!
//! ```python
//! import casimir
//! pair = casimir.Stack([casimir.Material.graphene()] * 2)
//! pair.energy().ratio   # 0.00538...
//! ```

use casimir_core as core;
use casimir_core::{MethodChoice, QuadratureSpec};
use num_complex::Complex64;
use pyo3::create_exception;
use pyo3::exceptions::PyException;
use pyo3::prelude::*;

create_exception!(casimir, CasimirError, PyException, "Invalid input or numerical failure.");

fn err(e: core::Error) -> PyErr {
    CasimirError::new_err(e.to_string())
}

#[pyclass(eq, eq_int, from_py_object)]
#[derive(Clone, Copy, PartialEq)]
pub enum Polarization {
    TM,
    TE,
}

impl From<Polarization> for core::Polarization {
    fn from(p: Polarization) -> Self {
        match p {
            Polarization::TM => core::Polarization::TM,
            Polarization::TE => core::Polarization::TE,
        }
    }
}

/// Optical model of one plate.
#[pyclass(eq, frozen, from_py_object)]
#[derive(Clone, Copy, PartialEq)]
pub struct Material {
    inner: core::Material,
}

#[pymethods]
impl Material {
    /// Frequency-independent conductivity σ (dimensionless, σ ≥ 0).
    #[staticmethod]
    fn conductivity(sigma: f64) -> PyResult<Self> {
        core::Material::conductivity(sigma).map(|inner| Material { inner }).map_err(err)
    }

    #[staticmethod]
    fn graphene() -> Self {
        Material { inner: core::Material::graphene() }
    }

    /// Generic δ-plate with electric and magnetic couplings.
    #[staticmethod]
    fn delta_plate(lambda_e: f64, lambda_g: f64) -> PyResult<Self> {
        core::Material::delta_plate(lambda_e, lambda_g).map(|inner| Material { inner }).map_err(err)
    }

    #[staticmethod]
    fn perfect_electric() -> Self {
        Material { inner: core::Material::PerfectElectric }
    }

    #[staticmethod]
    fn perfect_magnetic() -> Self {
        Material { inner: core::Material::PerfectMagnetic }
    }

    #[staticmethod]
    fn transparent() -> Self {
        Material { inner: core::Material::Transparent }
    }

    fn reflection(&self, pol: Polarization, t: f64) -> PyResult<f64> {
        let node = core::AngularNode::new(t).map_err(err)?;
        core::reflection(&self.inner, pol.into(), node).map_err(err)
    }

    fn transmission(&self, pol: Polarization, t: f64) -> PyResult<f64> {
        let node = core::AngularNode::new(t).map_err(err)?;
        core::transmission(&self.inner, pol.into(), node).map_err(err)
    }

    #[getter]
    fn is_ideal(&self) -> bool {
        self.inner.is_ideal()
    }

    fn __repr__(&self) -> String {
        match self.inner {
            core::Material::ConstantConductivity { sigma } => format!("Material.conductivity({sigma})"),
            core::Material::GenericDeltaPlate { lambda_e, lambda_g } => {
                format!("Material.delta_plate({lambda_e}, {lambda_g})")
            }
            core::Material::PerfectElectric => "Material.perfect_electric()".into(),
            core::Material::PerfectMagnetic => "Material.perfect_magnetic()".into(),
            core::Material::Transparent => "Material.transparent()".into(),
        }
    }
}

#[pyclass(frozen, from_py_object)]
#[derive(Clone, Copy)]
pub struct EnergyResult {
    inner: core::EnergyResult,
}

#[pymethods]
impl EnergyResult {
    /// Energy relative to the perfect-conductor pair at the reference gap.
    #[getter]
    fn ratio(&self) -> f64 {
        self.inner.ratio
    }

    #[getter]
    fn per_plate(&self) -> f64 {
        self.inner.per_plate
    }

    #[getter]
    fn method(&self) -> String {
        self.inner.method.to_string()
    }

    #[getter]
    fn error_estimate(&self) -> f64 {
        self.inner.error_estimate
    }

    /// Energy in joules for reference gap `a` (m) and plate area (m²).
    fn absolute(&self, a: f64, area: f64) -> PyResult<f64> {
        core::absolute_energy(&self.inner, a, area).map_err(err)
    }

    fn __repr__(&self) -> String {
        format!(
            "EnergyResult(ratio={}, per_plate={}, method='{}', error_estimate={:e})",
            self.inner.ratio, self.inner.per_plate, self.inner.method, self.inner.error_estimate
        )
    }
}

fn method_choice(method: &str) -> PyResult<MethodChoice> {
    method.parse().map_err(CasimirError::new_err)
}

fn quadrature(rel_tol: f64, abs_tol: f64) -> PyResult<QuadratureSpec> {
    QuadratureSpec::new(rel_tol, abs_tol, QuadratureSpec::default().max_subdivisions).map_err(err)
}

/// Ordered plates with the gaps between them (default: all 1).
#[pyclass(frozen)]
pub struct Stack {
    inner: core::StackSpec,
}

#[pymethods]
impl Stack {
    #[new]
    #[pyo3(signature = (plates, gaps=None))]
    fn new(plates: Vec<Material>, gaps: Option<Vec<f64>>) -> PyResult<Self> {
        let plates: Vec<core::Material> = plates.into_iter().map(|m| m.inner).collect();
        let inner = match gaps {
            Some(g) => core::StackSpec::new(plates, g),
            None => core::StackSpec::uniform(plates),
        }
        .map_err(err)?;
        Ok(Stack { inner })
    }

    #[getter]
    fn plates(&self) -> Vec<Material> {
        self.inner.plates().iter().map(|&inner| Material { inner }).collect()
    }

    #[getter]
    fn gaps(&self) -> Vec<f64> {
        self.inner.geometry().gaps().to_vec()
    }

    fn __len__(&self) -> usize {
        self.inner.plate_count()
    }

    fn reversed(&self) -> Self {
        Stack { inner: self.inner.reversed() }
    }

    /// `method` is one of auto, polylog, quadrature, ideal.
    #[pyo3(signature = (method="auto", rel_tol=1e-9, abs_tol=1e-12))]
    fn energy(&self, py: Python<'_>, method: &str, rel_tol: f64, abs_tol: f64) -> PyResult<EnergyResult> {
        let choice = method_choice(method)?;
        let spec = quadrature(rel_tol, abs_tol)?;
        let stack = &self.inner;
        py.detach(|| core::energy_ratio(stack, choice, &spec))
            .map(|inner| EnergyResult { inner })
            .map_err(err)
    }

    /// Exact ratio of an all-ideal uniform stack as a `fractions.Fraction`.
    fn ideal_ratio<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        let r = core::ideal_stack_ratio(&self.inner).map_err(err)?;
        py.import("fractions")?.getattr("Fraction")?.call1((*r.numer(), *r.denom()))
    }
}

/// Evaluate a stack over a σ grid. `slots` holds a `Material` per plate or
/// `None` for plates whose conductivity takes the grid value.
#[pyfunction]
#[pyo3(signature = (slots, sigma_grid, gaps=None, method="auto", rel_tol=1e-9))]
fn sweep(
    py: Python<'_>,
    slots: Vec<Option<Material>>,
    sigma_grid: Vec<f64>,
    gaps: Option<Vec<f64>>,
    method: &str,
    rel_tol: f64,
) -> PyResult<Vec<(f64, EnergyResult)>> {
    let slots: Vec<core::Slot> = slots
        .into_iter()
        .map(|s| s.map_or(core::Slot::FreeSigma, |m| core::Slot::Fixed(m.inner)))
        .collect();
    let template = match gaps {
        Some(g) => core::StackTemplate::new(slots, g),
        None => core::StackTemplate::uniform(slots),
    }
    .map_err(err)?;
    let choice = method_choice(method)?;
    let spec = quadrature(rel_tol, QuadratureSpec::default().abs_tol)?;
    let rows = py.detach(|| core::sweep(&template, &sigma_grid, choice, &spec)).map_err(err)?;
    Ok(rows
        .into_iter()
        .map(|r| (r.sigma, EnergyResult { inner: r.result }))
        .collect())
}

/// Ordered compositions of `n`, lexicographic.
#[pyfunction]
fn compositions(n: usize) -> PyResult<Vec<Vec<usize>>> {
    Ok(core::compositions(n)
        .map_err(err)?
        .into_iter()
        .map(|c| c.parts().to_vec())
        .collect())
}

fn node(r: Vec<f64>, t: Vec<f64>, gaps: Vec<f64>) -> PyResult<(core::NodeCoefficients, core::StackGeometry)> {
    Ok((
        core::NodeCoefficients::new(r, t).map_err(err)?,
        core::StackGeometry::new(gaps).map_err(err)?,
    ))
}

/// Scattering parameter Δ from the composition expansion.
#[pyfunction]
fn delta_total(r: Vec<f64>, t: Vec<f64>, gaps: Vec<f64>, s: f64) -> PyResult<f64> {
    let (c, g) = node(r, t, gaps)?;
    core::delta_total(&c, &g, s).map_err(err)
}

/// Scattering parameter Δ from the effective-mirror recursion.
#[pyfunction]
fn delta_oracle(r: Vec<f64>, t: Vec<f64>, gaps: Vec<f64>, s: f64) -> PyResult<f64> {
    let (c, g) = node(r, t, gaps)?;
    core::delta_oracle(&c, &g, s).map_err(err)
}

/// Polylogarithm of order four on the closed unit disk.
#[pyfunction]
fn li4(z: Complex64) -> PyResult<Complex64> {
    core::li4(z).map_err(err)
}

/// `∫₀^∞ s² ln(1 - c e^{-s}) ds`.
#[pyfunction]
fn s_integral(c: Complex64) -> PyResult<Complex64> {
    core::s_integral(c).map_err(err)
}

/// Register the module contents on `m`.
pub fn register(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Polarization>()?;
    m.add_class::<Material>()?;
    m.add_class::<EnergyResult>()?;
    m.add_class::<Stack>()?;
    m.add_function(wrap_pyfunction!(sweep, m)?)?;
    m.add_function(wrap_pyfunction!(compositions, m)?)?;
    m.add_function(wrap_pyfunction!(delta_total, m)?)?;
    m.add_function(wrap_pyfunction!(delta_oracle, m)?)?;
    m.add_function(wrap_pyfunction!(li4, m)?)?;
    m.add_function(wrap_pyfunction!(s_integral, m)?)?;
    m.add("GRAPHENE_SIGMA", core::GRAPHENE_SIGMA)?;
    m.add("CasimirError", m.py().get_type::<CasimirError>())?;
    Ok(())
}

#[pymodule(name = "casimir")]
fn casimir_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    register(m)
}
