//! Casimir energy of a plate stack, as a ratio to the perfect-conductor pair
//! energy `ΔE^c/A = -π²/(720 a³)` at the reference gap `a`.
//!
//! Three routes:
//!
//! * [`energy_ratio_quadrature`]: brute-force 2-D integral of `ln Δ^TM + ln Δ^TE`
//!   over `(t, s)`, any gaps and materials.
//! * [`energy_ratio_polylog`]: uniform gaps only. Δ factors as `∏ (1 - c_j x)`,
//!   the `s` integral is `-2 Σ Li₄(c_j)`, and only the angular integral is numeric.
//! * [`ideal_stack_ratio`]: exact rational sum over adjacent pairs for
//!   stacks of perfect electric/magnetic plates.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use num_rational::Ratio;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::optics::{Material, Polarization};
use crate::scattering::{round_trip_roots, Expansion, NodeCoefficients, StackGeometry};
use crate::special::{li4, try_integrate_2d, try_integrate_t, QuadratureSpec, ZETA4};

/// Reduced Planck constant, J·s.
pub const HBAR: f64 = 1.054_571_817e-34;
/// Speed of light in vacuum, m/s.
pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;

/// Roots this close to the unit circle are treated as lying on it.
const ROOT_SLACK: f64 = 1e-9;
/// Largest tolerated imaginary part of a node's Li₄ sum.
const IMAGINARY_TOLERANCE: f64 = 1e-10;

/// Ordered plates and the gaps between them (in units of the reference gap).
#[derive(Debug, Clone, PartialEq)]
pub struct StackSpec {
    plates: Vec<Material>,
    geometry: StackGeometry,
}

impl StackSpec {
    pub fn new(plates: Vec<Material>, gaps: Vec<f64>) -> Result<Self> {
        if plates.len() < 2 {
            return Err(Error::InvalidStack(format!(
                "a stack needs at least two plates, got {}",
                plates.len()
            )));
        }
        for m in &plates {
            m.validate()?;
        }
        let geometry = StackGeometry::new(gaps)?;
        if geometry.plate_count() != plates.len() {
            return Err(Error::SizeMismatch {
                what: "gap list",
                got: geometry.gaps().len(),
                expected: plates.len() - 1,
            });
        }
        Ok(StackSpec { plates, geometry })
    }

    /// All gaps equal to the reference gap.
    pub fn uniform(plates: Vec<Material>) -> Result<Self> {
        let gaps = vec![1.0; plates.len().saturating_sub(1)];
        Self::new(plates, gaps)
    }

    pub fn plates(&self) -> &[Material] {
        &self.plates
    }

    pub fn geometry(&self) -> &StackGeometry {
        &self.geometry
    }

    pub fn plate_count(&self) -> usize {
        self.plates.len()
    }

    pub fn is_uniform(&self) -> bool {
        self.geometry.is_uniform()
    }

    pub fn reversed(&self) -> Self {
        StackSpec {
            plates: self.plates.iter().rev().copied().collect(),
            geometry: self.geometry.reversed(),
        }
    }

    pub fn is_all_ideal(&self) -> bool {
        self.plates.iter().all(Material::is_ideal)
    }

    /// Per-plate coefficients for one polarization at `t ∈ [0, 1]`.
    pub fn node_coefficients(&self, pol: Polarization, t: f64) -> NodeCoefficients {
        let (r, tc) = self
            .plates
            .iter()
            .map(|m| {
                let c = m.coefficients_unchecked(pol, t);
                (c.r, c.t_coef)
            })
            .unzip();
        NodeCoefficients::from_parts_unchecked(r, tc)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    Polylog,
    Quadrature,
    Ideal,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Polylog => "polylog",
            Method::Quadrature => "quadrature",
            Method::Ideal => "ideal",
        })
    }
}

/// Requested evaluation route; `Auto` picks one per stack.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum MethodChoice {
    #[default]
    Auto,
    Polylog,
    Quadrature,
    Ideal,
}

impl fmt::Display for MethodChoice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MethodChoice::Auto => "auto",
            MethodChoice::Polylog => "polylog",
            MethodChoice::Quadrature => "quadrature",
            MethodChoice::Ideal => "ideal",
        })
    }
}

impl FromStr for MethodChoice {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "auto" => Ok(MethodChoice::Auto),
            "polylog" => Ok(MethodChoice::Polylog),
            "quadrature" => Ok(MethodChoice::Quadrature),
            "ideal" => Ok(MethodChoice::Ideal),
            other => Err(format!(
                "unknown method '{other}' (expected auto, polylog, quadrature or ideal)"
            )),
        }
    }
}

/// Energy of a stack relative to the perfect-conductor pair.
///
/// `ratio > 0` means net attraction, since the reference energy is negative.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnergyResult {
    pub ratio: f64,
    /// `ratio / N`.
    pub per_plate: f64,
    pub method: Method,
    /// Estimated absolute error of `ratio`.
    pub error_estimate: f64,
}

impl EnergyResult {
    fn new(ratio: f64, plates: usize, method: Method, error_estimate: f64) -> Self {
        EnergyResult {
            ratio,
            per_plate: ratio / plates as f64,
            method,
            error_estimate: error_estimate.abs(),
        }
    }
}

/// `-(45 / 2π⁴) ∫₀¹ dt ∫₀^∞ s² [ln Δ^TM + ln Δ^TE] ds` by nested quadrature.
pub fn energy_ratio_quadrature(stack: &StackSpec, spec: &QuadratureSpec) -> Result<EnergyResult> {
    let expansion = Expansion::new(stack.plate_count())?;
    let gaps = stack.geometry().gaps();
    let mut table = Vec::new();
    let mut node: Option<(f64, [NodeCoefficients; 2])> = None;
    let integral = try_integrate_2d(
        |t, s| {
            // coefficients depend on t only; the inner s loop reuses them
            if node.as_ref().map(|(nt, _)| *nt) != Some(t) {
                node = Some((
                    t,
                    [
                        stack.node_coefficients(Polarization::TM, t),
                        stack.node_coefficients(Polarization::TE, t),
                    ],
                ));
            }
            let (_, coeffs) = node.as_ref().unwrap();
            let mut sum = 0.0;
            for c in coeffs {
                let delta = expansion.eval(c, gaps, s, &mut table);
                if !(delta > 0.0) {
                    return Err(Error::NonPositiveDelta { value: delta, t, s });
                }
                sum += delta.ln();
            }
            Ok(sum)
        },
        spec,
    )?;
    let scale = -45.0 / (2.0 * PI.powi(4));
    Ok(EnergyResult::new(
        scale * integral.value,
        stack.plate_count(),
        Method::Quadrature,
        scale * integral.error,
    ))
}

/// `Li₄(c)` for a reciprocal root, with roots on the unit circle near ±1
/// mapped to the exact values.
fn li4_root(c: Complex64, t: f64) -> Result<Complex64> {
    let modulus = c.norm();
    if modulus > 1.0 + ROOT_SLACK {
        return Err(Error::RootOutsideDisk { modulus, t });
    }
    if (modulus - 1.0).abs() <= ROOT_SLACK {
        if (c - 1.0).norm() <= 2.0 * ROOT_SLACK {
            return Ok(Complex64::new(ZETA4, 0.0));
        }
        if (c + 1.0).norm() <= 2.0 * ROOT_SLACK {
            return Ok(Complex64::new(-7.0 / 8.0 * ZETA4, 0.0));
        }
        return li4(c / modulus);
    }
    li4(c)
}

/// The angular integrand of the polylog route at node `t`:
/// `(45/π⁴) Σ_pol Σ_j Li₄(c_j)`.
pub fn polylog_node_value(stack: &StackSpec, t: f64) -> Result<f64> {
    let mut sum = Complex64::new(0.0, 0.0);
    for pol in Polarization::BOTH {
        let coeffs = stack.node_coefficients(pol, t);
        for c in round_trip_roots(&coeffs)? {
            sum += li4_root(c, t)?;
        }
    }
    if sum.im.abs() > IMAGINARY_TOLERANCE {
        return Err(Error::ImaginaryResidue { imag: sum.im, t });
    }
    Ok(45.0 / PI.powi(4) * sum.re)
}

/// Closed-form `s` integral with a numeric angular integral; uniform gaps only.
pub fn energy_ratio_polylog(stack: &StackSpec, spec: &QuadratureSpec) -> Result<EnergyResult> {
    if !stack.is_uniform() {
        return Err(Error::NonUniformGaps);
    }
    let integral = try_integrate_t(|t| polylog_node_value(stack, t), spec)?;
    Ok(EnergyResult::new(
        integral.value,
        stack.plate_count(),
        Method::Polylog,
        integral.error,
    ))
}

/// Exact energy ratio of a uniform stack of ideal plates: each adjacent pair
/// contributes 1 when both plates are the same kind and -7/8 otherwise.
pub fn ideal_stack_ratio(stack: &StackSpec) -> Result<Ratio<i64>> {
    if let Some(i) = stack.plates().iter().position(|m| !m.is_ideal()) {
        return Err(Error::NonIdealPlate(i));
    }
    if !stack.is_uniform() {
        return Err(Error::NonUniformGaps);
    }
    Ok(stack
        .plates()
        .windows(2)
        .map(|pair| {
            if pair[0] == pair[1] {
                Ratio::from_integer(1)
            } else {
                Ratio::new(-7, 8)
            }
        })
        .sum())
}

pub fn ideal_stack_result(stack: &StackSpec) -> Result<EnergyResult> {
    let exact = ideal_stack_ratio(stack)?;
    let ratio = *exact.numer() as f64 / *exact.denom() as f64;
    Ok(EnergyResult::new(ratio, stack.plate_count(), Method::Ideal, 0.0))
}

fn polylog_safe(stack: &StackSpec) -> bool {
    stack.is_uniform()
        && !stack
            .plates()
            .iter()
            .any(|m| matches!(m, Material::GenericDeltaPlate { .. }))
}

/// Dispatch on the requested method. `Auto` uses the polylog route for
/// uniform stacks without generic δ-plates and falls back to quadrature if
/// the root analysis fails; everything else goes to quadrature.
pub fn energy_ratio(stack: &StackSpec, choice: MethodChoice, spec: &QuadratureSpec) -> Result<EnergyResult> {
    match choice {
        MethodChoice::Polylog => energy_ratio_polylog(stack, spec),
        MethodChoice::Quadrature => energy_ratio_quadrature(stack, spec),
        MethodChoice::Ideal => ideal_stack_result(stack),
        MethodChoice::Auto if polylog_safe(stack) => match energy_ratio_polylog(stack, spec) {
            Err(Error::RootOutsideDisk { .. } | Error::ImaginaryResidue { .. } | Error::RootFinding) => {
                energy_ratio_quadrature(stack, spec)
            }
            other => other,
        },
        MethodChoice::Auto => energy_ratio_quadrature(stack, spec),
    }
}

/// One position in a sweep template.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Slot {
    Fixed(Material),
    /// Constant-conductivity plate whose σ takes the sweep value.
    FreeSigma,
}

/// A stack with one or more plates sharing a free conductivity.
#[derive(Debug, Clone, PartialEq)]
pub struct StackTemplate {
    slots: Vec<Slot>,
    gaps: Vec<f64>,
}

impl StackTemplate {
    pub fn new(slots: Vec<Slot>, gaps: Vec<f64>) -> Result<Self> {
        if !slots.contains(&Slot::FreeSigma) {
            return Err(Error::InvalidStack("sweep template has no free sigma slot".into()));
        }
        let template = StackTemplate { slots, gaps };
        template.instantiate(1.0)?;
        Ok(template)
    }

    pub fn uniform(slots: Vec<Slot>) -> Result<Self> {
        let gaps = vec![1.0; slots.len().saturating_sub(1)];
        Self::new(slots, gaps)
    }

    pub fn slots(&self) -> &[Slot] {
        &self.slots
    }

    pub fn gaps(&self) -> &[f64] {
        &self.gaps
    }

    pub fn instantiate(&self, sigma: f64) -> Result<StackSpec> {
        let plates = self
            .slots
            .iter()
            .map(|slot| match *slot {
                Slot::Fixed(m) => Ok(m),
                Slot::FreeSigma => Material::conductivity(sigma),
            })
            .collect::<Result<Vec<_>>>()?;
        StackSpec::new(plates, self.gaps.clone())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRow {
    pub sigma: f64,
    pub result: EnergyResult,
}

/// Evaluate the template at every σ of a strictly increasing grid.
///
/// Points run in parallel; each is an independent, deterministic
/// computation, so the table does not depend on the worker count.
pub fn sweep(
    template: &StackTemplate,
    sigma_grid: &[f64],
    choice: MethodChoice,
    spec: &QuadratureSpec,
) -> Result<Vec<SweepRow>> {
    if sigma_grid.is_empty() {
        return Err(Error::InvalidGrid("sigma grid is empty".into()));
    }
    if let Some(bad) = sigma_grid.iter().find(|s| !(s.is_finite() && **s >= 0.0)) {
        return Err(Error::InvalidGrid(format!("sigma must be finite and non-negative, got {bad}")));
    }
    if sigma_grid.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::InvalidGrid("sigma grid must be strictly increasing".into()));
    }
    let rows: Vec<Result<SweepRow>> = sigma_grid
        .par_iter()
        .map(|&sigma| {
            template
                .instantiate(sigma)
                .and_then(|stack| energy_ratio(&stack, choice, spec))
                .map(|result| SweepRow { sigma, result })
                .map_err(|e| Error::SweepPoint {
                    sigma,
                    source: Box::new(e),
                })
        })
        .collect();
    rows.into_iter().collect()
}

/// `points` values from `start` to `stop` inclusive, evenly spaced in log σ.
pub fn log_grid(start: f64, stop: f64, points: usize) -> Result<Vec<f64>> {
    if !(start > 0.0 && stop > start && points >= 2) {
        return Err(Error::InvalidGrid(format!(
            "log grid needs 0 < start < stop and at least two points, got {start}..{stop} x{points}"
        )));
    }
    let (a, b) = (start.log10(), stop.log10());
    let step = (b - a) / (points - 1) as f64;
    Ok((0..points)
        .map(|i| {
            if i == points - 1 {
                stop
            } else {
                10f64.powf(a + step * i as f64)
            }
        })
        .collect())
}

/// `points` values from `start` to `stop` inclusive, evenly spaced.
pub fn linear_grid(start: f64, stop: f64, points: usize) -> Result<Vec<f64>> {
    if !(start >= 0.0 && stop > start && points >= 2) {
        return Err(Error::InvalidGrid(format!(
            "linear grid needs 0 <= start < stop and at least two points, got {start}..{stop} x{points}"
        )));
    }
    let step = (stop - start) / (points - 1) as f64;
    Ok((0..points)
        .map(|i| if i == points - 1 { stop } else { start + step * i as f64 })
        .collect())
}

/// SI energy in joules for plates of `area` (m²) at reference gap `a` (m):
/// `ratio · (-π² ħ c / 720 a³) · area`.
pub fn absolute_energy(result: &EnergyResult, a: f64, area: f64) -> Result<f64> {
    if !(a > 0.0) {
        return Err(Error::NonPositiveDimension("gap"));
    }
    if !(area > 0.0) {
        return Err(Error::NonPositiveDimension("area"));
    }
    let pair = -PI * PI * HBAR * SPEED_OF_LIGHT / (720.0 * a.powi(3));
    Ok(result.ratio * pair * area)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use Material::{PerfectElectric as PE, PerfectMagnetic as PM};

    #[test]
    fn stack_validation() {
        assert!(StackSpec::uniform(vec![PE]).is_err());
        assert!(StackSpec::new(vec![PE, PM], vec![1.0, 1.0]).is_err());
        assert!(StackSpec::new(vec![PE, PM], vec![-1.0]).is_err());
        assert!(StackSpec::uniform(vec![PE, Material::ConstantConductivity { sigma: -1.0 }]).is_err());
    }

    #[test]
    fn ideal_ratios_are_exact() {
        for n in 2..=8 {
            let s = StackSpec::uniform(vec![PE; n]).unwrap();
            assert_eq!(ideal_stack_ratio(&s).unwrap(), Ratio::from_integer(n as i64 - 1));
            let alt: Vec<_> = (0..n).map(|i| if i % 2 == 0 { PE } else { PM }).collect();
            let s = StackSpec::uniform(alt).unwrap();
            assert_eq!(ideal_stack_ratio(&s).unwrap(), Ratio::new(-7 * (n as i64 - 1), 8));
        }
        let edge = StackSpec::uniform(vec![PM, PE, PE, PE]).unwrap();
        assert_eq!(ideal_stack_ratio(&edge).unwrap() / 4, Ratio::new(9, 32));
        assert_eq!(ideal_stack_result(&edge).unwrap().per_plate, 0.28125);
        let middle = StackSpec::uniform(vec![PE, PM, PE, PE]).unwrap();
        assert_eq!(ideal_stack_result(&middle).unwrap().per_plate, -0.1875);
    }

    #[test]
    fn ideal_rejections() {
        let s = StackSpec::uniform(vec![PE, Material::graphene()]).unwrap();
        assert_eq!(ideal_stack_ratio(&s).unwrap_err(), Error::NonIdealPlate(1));
        let s = StackSpec::new(vec![PE, PE, PE], vec![1.0, 2.0]).unwrap();
        assert_eq!(ideal_stack_ratio(&s).unwrap_err(), Error::NonUniformGaps);
    }

    #[test]
    fn polylog_rejects_non_uniform_gaps() {
        let s = StackSpec::new(vec![PE, PE, PE], vec![1.0, 2.0]).unwrap();
        assert_eq!(
            energy_ratio_polylog(&s, &QuadratureSpec::default()).unwrap_err(),
            Error::NonUniformGaps
        );
    }

    #[test]
    fn perfect_pair_normalization() {
        let s = StackSpec::uniform(vec![PE, PE]).unwrap();
        let spec = QuadratureSpec::default();
        assert_relative_eq!(energy_ratio_polylog(&s, &spec).unwrap().ratio, 1.0, epsilon = 1e-12);
        assert_relative_eq!(energy_ratio_quadrature(&s, &spec).unwrap().ratio, 1.0, epsilon = 1e-8);
    }

    #[test]
    fn absolute_energy_scaling() {
        // ħc = 3.16152677e-26 J·m, π²/720 = 0.0137077838; at a = 1 µm, A = 1 cm²:
        // 0.0137077838 · 3.16152677e-26 / 1e-18 · 1e-4 = 4.333752575e-14 J
        let unit = EnergyResult::new(1.0, 2, Method::Ideal, 0.0);
        let e = absolute_energy(&unit, 1e-6, 1e-4).unwrap();
        assert_relative_eq!(e, -4.333_752_575e-14, max_relative = 1e-9);
        let zero = EnergyResult::new(0.0, 2, Method::Ideal, 0.0);
        assert_eq!(absolute_energy(&zero, 1e-6, 1e-4).unwrap(), 0.0);
        let boyer = EnergyResult::new(-0.875, 2, Method::Ideal, 0.0);
        assert_relative_eq!(absolute_energy(&boyer, 1e-6, 1e-4).unwrap(), -0.875 * e, max_relative = 1e-15);
        assert!(absolute_energy(&unit, 0.0, 1.0).is_err());
        assert!(absolute_energy(&unit, 1.0, -1.0).is_err());
    }

    #[test]
    fn grids() {
        let g = log_grid(1e-2, 1e3, 6).unwrap();
        assert_eq!(g.len(), 6);
        assert_eq!(g[0], 1e-2);
        assert_eq!(g[5], 1e3);
        assert_relative_eq!(g[2], 1.0, max_relative = 1e-14);
        assert!(log_grid(0.0, 1.0, 3).is_err());
        assert_eq!(linear_grid(0.0, 1.0, 3).unwrap(), vec![0.0, 0.5, 1.0]);
    }

    #[test]
    fn sweep_validation() {
        let spec = QuadratureSpec::default();
        let tpl = StackTemplate::uniform(vec![Slot::FreeSigma, Slot::FreeSigma]).unwrap();
        assert!(sweep(&tpl, &[], MethodChoice::Auto, &spec).is_err());
        assert!(sweep(&tpl, &[1.0, 1.0], MethodChoice::Auto, &spec).is_err());
        assert!(sweep(&tpl, &[-1.0, 1.0], MethodChoice::Auto, &spec).is_err());
        assert!(StackTemplate::uniform(vec![Slot::Fixed(PE), Slot::Fixed(PE)]).is_err());
        let rows = sweep(&tpl, &[0.0], MethodChoice::Auto, &spec).unwrap();
        assert_eq!(rows[0].result.ratio, 0.0);
    }

    #[test]
    fn sweep_failure_names_sigma() {
        let spec = QuadratureSpec::default();
        let tpl = StackTemplate::uniform(vec![Slot::FreeSigma, Slot::Fixed(PE)]).unwrap();
        let err = sweep(&tpl, &[0.5], MethodChoice::Ideal, &spec).unwrap_err();
        assert!(matches!(err, Error::SweepPoint { sigma, .. } if sigma == 0.5));
    }

    #[test]
    fn method_names_round_trip() {
        for m in [MethodChoice::Auto, MethodChoice::Polylog, MethodChoice::Quadrature, MethodChoice::Ideal] {
            assert_eq!(m.to_string().parse::<MethodChoice>().unwrap(), m);
        }
        assert!("fast".parse::<MethodChoice>().is_err());
    }
}
