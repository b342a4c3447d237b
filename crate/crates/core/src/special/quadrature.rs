//! Adaptive Gauss–Kronrod (7/15) integration on finite intervals, the
//! `s²`-weighted semi-infinite integral, and the nested 2-D rule over `(t, s)`.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::{Error, Result};

/// Tolerances and work limit for the adaptive rules.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSpec {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_subdivisions: usize,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        QuadratureSpec {
            rel_tol: 1e-9,
            abs_tol: 1e-12,
            max_subdivisions: 2000,
        }
    }
}

impl QuadratureSpec {
    pub fn new(rel_tol: f64, abs_tol: f64, max_subdivisions: usize) -> Result<Self> {
        let spec = QuadratureSpec {
            rel_tol,
            abs_tol,
            max_subdivisions,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.rel_tol > 0.0 && self.abs_tol > 0.0 && self.rel_tol.is_finite() && self.abs_tol.is_finite()) {
            return Err(Error::InvalidStack(format!(
                "quadrature tolerances must be positive, got rel {} abs {}",
                self.rel_tol, self.abs_tol
            )));
        }
        if self.max_subdivisions == 0 {
            return Err(Error::InvalidStack("max_subdivisions must be positive".into()));
        }
        Ok(())
    }

    fn tightened(&self, factor: f64) -> Self {
        QuadratureSpec {
            rel_tol: self.rel_tol * factor,
            abs_tol: self.abs_tol * factor,
            max_subdivisions: self.max_subdivisions,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureResult {
    pub value: f64,
    /// Estimated absolute error.
    pub error: f64,
    pub evaluations: usize,
}

// Kronrod abscissae on [-1, 1] (non-negative half) and weights; every other
// abscissa, starting at index 1, is a Gauss node.
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

/// Bisections that leave value and error unchanged before giving up on the tolerance.
const ROUNDOFF_STALLS: usize = 10;

#[derive(Debug, Clone, Copy)]
struct Segment {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}
impl Eq for Segment {}
impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Segment {
    // largest error first; ties broken by position for a fixed refinement order
    fn cmp(&self, other: &Self) -> Ordering {
        self.error
            .total_cmp(&other.error)
            .then(other.a.total_cmp(&self.a))
    }
}

fn gauss_kronrod<F>(f: &mut F, a: f64, b: f64) -> Result<Segment>
where
    F: FnMut(f64) -> Result<f64>,
{
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let mut eval = |x: f64| -> Result<f64> {
        let v = f(x)?;
        if v.is_finite() {
            Ok(v)
        } else {
            Err(Error::NonFiniteIntegrand { at: x, value: v })
        }
    };
    let fc = eval(center)?;
    let mut kronrod = WGK[7] * fc;
    let mut gauss = WG[3] * fc;
    for j in 0..7 {
        let dx = half * XGK[j];
        let pair = eval(center - dx)? + eval(center + dx)?;
        kronrod += WGK[j] * pair;
        if j % 2 == 1 {
            gauss += WG[j / 2] * pair;
        }
    }
    Ok(Segment {
        a,
        b,
        value: kronrod * half,
        error: ((kronrod - gauss) * half).abs(),
    })
}

/// Adaptive integral of a fallible integrand over `[a, b]`.
///
/// Globally adaptive: the segment with the largest error estimate is bisected
/// until the summed error drops below `max(abs_tol, rel_tol·|value|)`. The
/// returned value is summed in left-to-right order, so it is a deterministic
/// function of the integrand and the tolerances.
///
/// If repeated bisections stop reducing the error (the integrand's own
/// rounding noise sets the floor), the loop ends early and the returned
/// `error` is the floor actually reached.
pub fn try_integrate<F>(mut f: F, a: f64, b: f64, spec: &QuadratureSpec) -> Result<QuadratureResult>
where
    F: FnMut(f64) -> Result<f64>,
{
    spec.validate()?;
    let first = gauss_kronrod(&mut f, a, b)?;
    let mut evaluations = 15;
    let mut heap = BinaryHeap::from([first]);
    let mut value = first.value;
    let mut error = first.error;
    let mut subdivisions = 0;
    let mut stalled = 0;
    loop {
        if error <= spec.abs_tol.max(spec.rel_tol * value.abs()) {
            break;
        }
        let worst = heap.pop().expect("heap is never empty");
        let mid = 0.5 * (worst.a + worst.b);
        if subdivisions >= spec.max_subdivisions || mid <= worst.a || mid >= worst.b {
            heap.push(worst);
            let (value, error) = summed(&heap);
            return Err(Error::Quadrature {
                estimate: value,
                error,
                subdivisions,
            });
        }
        let left = gauss_kronrod(&mut f, worst.a, mid)?;
        let right = gauss_kronrod(&mut f, mid, worst.b)?;
        evaluations += 30;
        subdivisions += 1;
        let refined = left.value + right.value;
        if (refined - worst.value).abs() <= 1e-5 * refined.abs() && left.error + right.error >= 0.99 * worst.error {
            stalled += 1;
        }
        value += refined - worst.value;
        error += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
        if stalled >= ROUNDOFF_STALLS {
            break;
        }
    }
    let (value, error) = summed(&heap);
    Ok(QuadratureResult {
        value,
        error,
        evaluations,
    })
}

fn summed(heap: &BinaryHeap<Segment>) -> (f64, f64) {
    let mut segments: Vec<&Segment> = heap.iter().collect();
    segments.sort_by(|x, y| x.a.total_cmp(&y.a));
    segments
        .iter()
        .fold((0.0, 0.0), |(v, e), s| (v + s.value, e + s.error))
}

/// `∫₀¹ f(t) dt`, the outer angular integral.
pub fn integrate_t<F>(mut f: F, spec: &QuadratureSpec) -> Result<QuadratureResult>
where
    F: FnMut(f64) -> f64,
{
    try_integrate(|t| Ok(f(t)), 0.0, 1.0, spec)
}

/// Fallible variant of [`integrate_t`].
pub fn try_integrate_t<F>(f: F, spec: &QuadratureSpec) -> Result<QuadratureResult>
where
    F: FnMut(f64) -> Result<f64>,
{
    try_integrate(f, 0.0, 1.0, spec)
}

/// `∫₀^∞ s² g(s) ds` through `u = e^{-s}`: `∫₀¹ ln²(u) g(-ln u) / u du`.
pub fn try_integrate_s_weighted<G>(mut g: G, spec: &QuadratureSpec) -> Result<QuadratureResult>
where
    G: FnMut(f64) -> Result<f64>,
{
    try_integrate(
        |u| {
            let s = -u.ln();
            if s == 0.0 {
                return Ok(0.0);
            }
            Ok(s * s * g(s)? / u)
        },
        0.0,
        1.0,
        spec,
    )
}

/// `∫₀^{s_max} s² g(s) ds`, the truncated alternative to the `u` substitution.
pub fn try_integrate_s_truncated<G>(mut g: G, s_max: f64, spec: &QuadratureSpec) -> Result<QuadratureResult>
where
    G: FnMut(f64) -> Result<f64>,
{
    try_integrate(|s| Ok(s * s * g(s)?), 0.0, s_max, spec)
}

/// Nested rule for `∫₀¹ dt ∫₀^∞ s² f(t, s) ds`. The inner integrals run at a
/// tenth of the outer tolerances; the returned error adds the outer estimate
/// and the largest inner one.
pub fn try_integrate_2d<F>(mut f: F, spec: &QuadratureSpec) -> Result<QuadratureResult>
where
    F: FnMut(f64, f64) -> Result<f64>,
{
    let inner_spec = spec.tightened(0.1);
    let mut inner_error: f64 = 0.0;
    let mut inner_evals = 0;
    let outer = try_integrate_t(
        |t| {
            let inner = try_integrate_s_weighted(|s| f(t, s), &inner_spec)?;
            inner_error = inner_error.max(inner.error);
            inner_evals += inner.evaluations;
            Ok(inner.value)
        },
        spec,
    )?;
    Ok(QuadratureResult {
        value: outer.value,
        error: outer.error + inner_error,
        evaluations: inner_evals,
    })
}

pub fn integrate_2d<F>(mut f: F, spec: &QuadratureSpec) -> Result<QuadratureResult>
where
    F: FnMut(f64, f64) -> f64,
{
    try_integrate_2d(|t, s| Ok(f(t, s)), spec)
}

/// Same as [`integrate_2d`] with the `s` range cut at `s_max`. Kept for
/// diagnostics; the tail beyond `s_max` is the caller's responsibility.
pub fn integrate_2d_truncated<F>(mut f: F, s_max: f64, spec: &QuadratureSpec) -> Result<QuadratureResult>
where
    F: FnMut(f64, f64) -> f64,
{
    let inner_spec = spec.tightened(0.1);
    let mut inner_error: f64 = 0.0;
    let outer = try_integrate_t(
        |t| {
            let inner = try_integrate_s_truncated(|s| Ok(f(t, s)), s_max, &inner_spec)?;
            inner_error = inner_error.max(inner.error);
            Ok(inner.value)
        },
        spec,
    )?;
    Ok(QuadratureResult {
        value: outer.value,
        error: outer.error + inner_error,
        evaluations: outer.evaluations,
    })
}
