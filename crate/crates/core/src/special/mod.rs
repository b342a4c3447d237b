//! Special functions and quadrature.

mod polylog;
mod quadrature;

pub use polylog::{
    li4, li4_real, li4_series, li4_series_remainder_bound, s_integral, UNIT_DISK_SLACK, ZETA2,
    ZETA3, ZETA4,
};
pub use quadrature::{
    integrate_2d, integrate_2d_truncated, integrate_t, try_integrate, try_integrate_2d,
    try_integrate_s_truncated, try_integrate_s_weighted, try_integrate_t, QuadratureResult,
    QuadratureSpec,
};
