//! Casimir interaction energy of N parallel δ-function plates.
//!
//! The multiple-scattering parameter Δ of the stack is expanded over the
//! compositions of `N - 1` into nearest-neighbour and beyond-nearest
//! factors ([`scattering`]). Plate responses come from [`optics`]: constant
//! conductivity (graphene-like), generic electric/magnetic δ-plates, and
//! symbolic perfect electric/magnetic conductors. [`energy`] assembles the
//! energy ratio to the perfect-conductor pair either with a closed-form
//! polylogarithm for the frequency integral or with brute-force quadrature.
//!
//! ```
//! use casimir_core::{energy_ratio_polylog, Material, QuadratureSpec, StackSpec};
//!
//! let pair = StackSpec::uniform(vec![Material::graphene(); 2]).unwrap();
//! let e = energy_ratio_polylog(&pair, &QuadratureSpec::default()).unwrap();
//! assert!((e.ratio - 0.00538).abs() < 5e-5);
//! ```

pub mod energy;
pub mod error;
pub mod optics;
pub mod scattering;
pub mod special;

pub use energy::{
    absolute_energy, energy_ratio, energy_ratio_polylog, energy_ratio_quadrature,
    ideal_stack_ratio, ideal_stack_result, log_grid, linear_grid, sweep, EnergyResult, Method,
    MethodChoice, Slot, StackSpec, StackTemplate, SweepRow,
};
pub use error::{Error, Result};
pub use optics::{
    reflection, transmission, AngularNode, Coefficients, Material, Polarization, GRAPHENE_SIGMA,
};
pub use scattering::{
    compositions, delta_beyond, delta_nn, delta_oracle, delta_polynomial, delta_total,
    Composition, DeltaPolynomial, NodeCoefficients, StackGeometry,
};
pub use special::{li4, s_integral, QuadratureResult, QuadratureSpec};
