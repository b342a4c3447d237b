//! The multiple-scattering parameter Δ of an N-plate stack.
//!
//! Δ is expanded as a sum over the compositions of `N - 1`. A composition
//! `(c_1, …, c_k)` selects boundary plates `p_0 = 0, p_j = p_{j-1} + c_j`
//! and contributes the product of the factors `Δ_{p_{j-1} p_j}`: a nearest
//! neighbour factor for parts of size one and a beyond-nearest factor
//! (which carries its own minus sign) otherwise.
//!
//! All propagation is written in the scaled variable `s = 2κ·a_ref`, so a
//! round trip across gap `m` costs `exp(-s·g_m)`.
//!
//! Plate indices are 0-based throughout.

mod compositions;
mod roots;

use std::sync::Arc;

pub use compositions::{
    compositions, compositions_iter, Composition, Compositions, MAX_COMPOSITION_SIZE,
};
pub use roots::{round_trip_operator, round_trip_roots, DeltaPolynomial};

use crate::error::{Error, Result};

/// Dimensionless gaps `g_i = l_{i,i+1} / a_ref` of a stack.
#[derive(Debug, Clone, PartialEq)]
pub struct StackGeometry {
    gaps: Vec<f64>,
}

impl StackGeometry {
    pub fn new(gaps: Vec<f64>) -> Result<Self> {
        if gaps.is_empty() {
            return Err(Error::InvalidGeometry("a stack needs at least one gap".into()));
        }
        if let Some(g) = gaps.iter().find(|g| !(g.is_finite() && **g > 0.0)) {
            return Err(Error::InvalidGeometry(format!(
                "gaps must be finite and positive, got {g}"
            )));
        }
        Ok(StackGeometry { gaps })
    }

    /// All gaps equal to the reference gap.
    pub fn uniform(plates: usize) -> Result<Self> {
        if plates < 2 {
            return Err(Error::InvalidGeometry(format!(
                "a stack needs at least two plates, got {plates}"
            )));
        }
        Ok(StackGeometry {
            gaps: vec![1.0; plates - 1],
        })
    }

    pub fn gaps(&self) -> &[f64] {
        &self.gaps
    }

    pub fn plate_count(&self) -> usize {
        self.gaps.len() + 1
    }

    pub fn is_uniform(&self) -> bool {
        self.gaps.iter().all(|&g| g == 1.0)
    }

    pub fn reversed(&self) -> Self {
        StackGeometry {
            gaps: self.gaps.iter().rev().copied().collect(),
        }
    }
}

/// Reflection and transmission amplitudes of every plate for one
/// polarization at one angular node.
#[derive(Debug, Clone, PartialEq)]
pub struct NodeCoefficients {
    r: Vec<f64>,
    t: Vec<f64>,
}

impl NodeCoefficients {
    pub fn new(r: Vec<f64>, t: Vec<f64>) -> Result<Self> {
        if r.len() != t.len() {
            return Err(Error::SizeMismatch {
                what: "transmission list",
                got: t.len(),
                expected: r.len(),
            });
        }
        if r.len() < 2 {
            return Err(Error::InvalidStack("need at least two plates".into()));
        }
        if let Some(v) = r.iter().chain(&t).find(|v| !(v.abs() <= 1.0)) {
            return Err(Error::InvalidStack(format!("coefficient {v} outside [-1, 1]")));
        }
        Ok(NodeCoefficients { r, t })
    }

    pub(crate) fn from_parts_unchecked(r: Vec<f64>, t: Vec<f64>) -> Self {
        NodeCoefficients { r, t }
    }

    pub fn r(&self) -> &[f64] {
        &self.r
    }

    pub fn t(&self) -> &[f64] {
        &self.t
    }

    pub fn len(&self) -> usize {
        self.r.len()
    }

    pub fn is_empty(&self) -> bool {
        self.r.is_empty()
    }

    pub fn reversed(&self) -> Self {
        NodeCoefficients {
            r: self.r.iter().rev().copied().collect(),
            t: self.t.iter().rev().copied().collect(),
        }
    }

    fn check_against(&self, geometry: &StackGeometry) -> Result<()> {
        if self.len() != geometry.plate_count() {
            return Err(Error::SizeMismatch {
                what: "coefficient list",
                got: self.len(),
                expected: geometry.plate_count(),
            });
        }
        Ok(())
    }
}

/// Nearest-neighbour factor `1 - r_i r_j y` with `y = exp(-2κ l_ij)`.
pub fn delta_nn(r_i: f64, r_j: f64, y: f64) -> f64 {
    1.0 - r_i * r_j * y
}

/// Beyond-nearest factor between non-adjacent plates `i` and `k`:
/// `-r_i r_k ∏_{i<m<k} t_m² · exp(-s Σ_{m=i}^{k-1} g_m)`.
pub fn delta_beyond(
    coeffs: &NodeCoefficients,
    i: usize,
    k: usize,
    geometry: &StackGeometry,
    s: f64,
) -> Result<f64> {
    coeffs.check_against(geometry)?;
    let plates = coeffs.len();
    if k >= plates {
        return Err(Error::PlateIndex { i, k, plates, reason: "index out of range" });
    }
    if k < i + 2 {
        return Err(Error::PlateIndex { i, k, plates, reason: "plates must not be adjacent" });
    }
    let through: f64 = coeffs.t[i + 1..k].iter().map(|t| t * t).product();
    let path: f64 = geometry.gaps[i..k].iter().sum();
    Ok(-coeffs.r[i] * coeffs.r[k] * through * (-s * path).exp())
}

/// Composition expansion of Δ for a fixed plate count.
///
/// Holds the (shared, cached) composition list so repeated evaluation across
/// quadrature nodes does not regenerate it.
#[derive(Debug, Clone)]
pub struct Expansion {
    plates: usize,
    terms: Arc<[Composition]>,
}

impl Expansion {
    pub fn new(plates: usize) -> Result<Self> {
        if plates < 2 {
            return Err(Error::InvalidStack(format!(
                "need at least two plates, got {plates}"
            )));
        }
        Ok(Expansion {
            plates,
            terms: compositions::cached_compositions(plates - 1)?,
        })
    }

    pub fn plates(&self) -> usize {
        self.plates
    }

    /// Number of composition products summed, `2^(N-2)`.
    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> &[Composition] {
        &self.terms
    }

    pub fn delta_total(&self, coeffs: &NodeCoefficients, geometry: &StackGeometry, s: f64) -> Result<f64> {
        coeffs.check_against(geometry)?;
        if coeffs.len() != self.plates {
            return Err(Error::SizeMismatch {
                what: "coefficient list",
                got: coeffs.len(),
                expected: self.plates,
            });
        }
        let mut table = Vec::new();
        Ok(self.eval(coeffs, geometry.gaps(), s, &mut table))
    }

    /// Δ at one node. `table` is scratch space for the `N×N` factor table.
    pub(crate) fn eval(&self, coeffs: &NodeCoefficients, gaps: &[f64], s: f64, table: &mut Vec<f64>) -> f64 {
        let n = self.plates;
        fill_factor_table(coeffs, gaps, s, table);
        self.terms
            .iter()
            .map(|c| {
                c.boundaries()
                    .fold(1.0, |acc, (i, k)| acc * table[i * n + k])
            })
            .sum()
    }
}

/// `table[i*N + k]` for `k > i` holds the factor `Δ_ik` at scaled frequency `s`.
fn fill_factor_table(coeffs: &NodeCoefficients, gaps: &[f64], s: f64, table: &mut Vec<f64>) {
    let n = coeffs.len();
    table.clear();
    table.resize(n * n, 0.0);
    let (r, t) = (&coeffs.r, &coeffs.t);
    for i in 0..n - 1 {
        table[i * n + i + 1] = delta_nn(r[i], r[i + 1], (-s * gaps[i]).exp());
        let mut through = 1.0;
        let mut path = gaps[i];
        for k in i + 2..n {
            through *= t[k - 1] * t[k - 1];
            path += gaps[k - 1];
            table[i * n + k] = -r[i] * r[k] * through * (-s * path).exp();
        }
    }
}

/// Δ summed over all compositions of `N - 1`.
pub fn delta_total(coeffs: &NodeCoefficients, geometry: &StackGeometry, s: f64) -> Result<f64> {
    Expansion::new(coeffs.len())?.delta_total(coeffs, geometry, s)
}

/// Δ from the dressed-mirror recursion, independent of the composition sum.
///
/// `R_{N-1} = r_{N-1}`, then walking left
/// `D_k = 1 - r_k R_{k+1} y_k`, `R_k = r_k + t_k² R_{k+1} y_k / D_k`,
/// and `Δ = ∏ D_k`.
pub fn delta_oracle(coeffs: &NodeCoefficients, geometry: &StackGeometry, s: f64) -> Result<f64> {
    coeffs.check_against(geometry)?;
    let (r, t) = (&coeffs.r, &coeffs.t);
    let n = r.len();
    let mut dressed = r[n - 1];
    let mut delta = 1.0;
    for k in (0..n - 1).rev() {
        let y = (-s * geometry.gaps[k]).exp();
        let d = 1.0 - r[k] * dressed * y;
        delta *= d;
        if k > 0 {
            if d == 0.0 {
                return Err(Error::SingularRecursion { plate: k });
            }
            dressed = r[k] + t[k] * t[k] * dressed * y / d;
        }
    }
    Ok(delta)
}

/// Coefficients of Δ as a polynomial in `x = exp(-s)`; needs uniform gaps.
pub fn delta_polynomial(coeffs: &NodeCoefficients, geometry: &StackGeometry) -> Result<DeltaPolynomial> {
    coeffs.check_against(geometry)?;
    if !geometry.is_uniform() {
        return Err(Error::NonUniformGaps);
    }
    let expansion = Expansion::new(coeffs.len())?;
    Ok(DeltaPolynomial::from_expansion(&expansion, coeffs))
}
