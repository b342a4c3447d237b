//! Plate materials and their reflection/transmission amplitudes.
//!
//! Every coefficient is expressed through the angular variable `t = ζ/κ`,
//! the cosine of the polar angle in the (ζ, k⊥) space. Ideal materials are
//! kept symbolic so that products of coefficients stay exact.

use std::f64::consts::PI;

use crate::error::{Error, Result};

/// Inverse fine-structure constant (CODATA 2018).
pub const INVERSE_FINE_STRUCTURE: f64 = 137.035_999_084;

/// Universal sheet conductivity of graphene in Heaviside–Lorentz natural units, `σ = πα`.
pub const GRAPHENE_SIGMA: f64 = PI / INVERSE_FINE_STRUCTURE;

/// Electromagnetic response of one δ-function plate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Material {
    /// Frequency-independent conductivity `σ ≥ 0`.
    ConstantConductivity { sigma: f64 },
    /// General δ-plate with electric and magnetic responses. Both are the
    /// dimensionless products `λ⊥·κ` at the node and are held constant.
    GenericDeltaPlate { lambda_e: f64, lambda_g: f64 },
    /// `λe → ∞`: r = +1 (TM), −1 (TE), t = 0.
    PerfectElectric,
    /// `λg → ∞`: r = −1 (TM), +1 (TE), t = 0.
    PerfectMagnetic,
    /// No plate at all: r = 0, t = 1.
    Transparent,
}

impl Material {
    pub fn conductivity(sigma: f64) -> Result<Self> {
        let m = Material::ConstantConductivity { sigma };
        m.validate()?;
        Ok(m)
    }

    pub fn graphene() -> Self {
        Material::ConstantConductivity {
            sigma: GRAPHENE_SIGMA,
        }
    }

    pub fn delta_plate(lambda_e: f64, lambda_g: f64) -> Result<Self> {
        let m = Material::GenericDeltaPlate { lambda_e, lambda_g };
        m.validate()?;
        Ok(m)
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            Material::ConstantConductivity { sigma } => {
                if !(sigma.is_finite() && sigma >= 0.0) {
                    return Err(Error::InvalidMaterial(format!(
                        "conductivity must be finite and non-negative, got {sigma}"
                    )));
                }
            }
            Material::GenericDeltaPlate { lambda_e, lambda_g } => {
                for (name, v) in [("lambda_e", lambda_e), ("lambda_g", lambda_g)] {
                    if !(v.is_finite() && v >= 0.0) {
                        return Err(Error::InvalidMaterial(format!(
                            "{name} must be finite and non-negative, got {v}"
                        )));
                    }
                }
            }
            _ => {}
        }
        Ok(())
    }

    /// Perfect electric or perfect magnetic conductor.
    pub fn is_ideal(&self) -> bool {
        matches!(self, Material::PerfectElectric | Material::PerfectMagnetic)
    }

    /// The material has exactly zero transmission in both polarizations.
    pub fn is_opaque(&self) -> bool {
        self.is_ideal()
    }

    /// Both coefficients at once. The caller guarantees a valid material and
    /// `t ∈ [0, 1]`; the energy integrands go through here.
    pub(crate) fn coefficients_unchecked(&self, pol: Polarization, t: f64) -> Coefficients {
        match (*self, pol) {
            (Material::ConstantConductivity { sigma }, _) if sigma == 0.0 => Coefficients::TRANSPARENT,
            (Material::ConstantConductivity { sigma }, Polarization::TM) => {
                let r = sigma / (sigma + 2.0 * t);
                Coefficients { r, t_coef: 1.0 - r }
            }
            (Material::ConstantConductivity { sigma }, Polarization::TE) => {
                let r = -sigma * t / (sigma * t + 2.0);
                Coefficients { r, t_coef: 1.0 + r }
            }
            (Material::GenericDeltaPlate { lambda_e, lambda_g }, pol) => {
                // TE follows from TM by exchanging the electric and magnetic responses.
                let (along, across) = match pol {
                    Polarization::TM => (lambda_e, lambda_g),
                    Polarization::TE => (lambda_g, lambda_e),
                };
                let t2 = t * t;
                let tangential = across * t2 / (across * t2 + 2.0);
                let normal = along / (along + 2.0);
                Coefficients {
                    r: normal - tangential,
                    t_coef: 1.0 - tangential - normal,
                }
            }
            (Material::PerfectElectric, Polarization::TM) => Coefficients { r: 1.0, t_coef: 0.0 },
            (Material::PerfectElectric, Polarization::TE) => Coefficients { r: -1.0, t_coef: 0.0 },
            (Material::PerfectMagnetic, Polarization::TM) => Coefficients { r: -1.0, t_coef: 0.0 },
            (Material::PerfectMagnetic, Polarization::TE) => Coefficients { r: 1.0, t_coef: 0.0 },
            (Material::Transparent, _) => Coefficients::TRANSPARENT,
        }
    }

    pub fn coefficients(&self, pol: Polarization, node: AngularNode) -> Result<Coefficients> {
        self.validate()?;
        Ok(self.coefficients_unchecked(pol, node.t()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Polarization {
    /// Transverse magnetic (H).
    TM,
    /// Transverse electric (E).
    TE,
}

impl Polarization {
    pub const BOTH: [Polarization; 2] = [Polarization::TM, Polarization::TE];
}

/// `t = ζ/κ ∈ [0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct AngularNode(f64);

impl AngularNode {
    pub fn new(t: f64) -> Result<Self> {
        if (0.0..=1.0).contains(&t) {
            Ok(AngularNode(t))
        } else {
            Err(Error::NodeOutOfRange(t))
        }
    }

    pub fn t(self) -> f64 {
        self.0
    }
}

/// Reflection and transmission amplitude of one plate, one polarization.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Coefficients {
    pub r: f64,
    pub t_coef: f64,
}

impl Coefficients {
    pub const TRANSPARENT: Coefficients = Coefficients { r: 0.0, t_coef: 1.0 };
}

pub fn reflection(m: &Material, pol: Polarization, node: AngularNode) -> Result<f64> {
    m.coefficients(pol, node).map(|c| c.r)
}

pub fn transmission(m: &Material, pol: Polarization, node: AngularNode) -> Result<f64> {
    m.coefficients(pol, node).map(|c| c.t_coef)
}
