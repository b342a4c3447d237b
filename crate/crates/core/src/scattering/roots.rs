//! Δ as a polynomial in `x = exp(-s)` and its reciprocal roots.
//!
//! With `c_0 = 1` the polynomial factors as `Δ(x) = ∏_j (1 - c_j x)`, and
//! the closed-form s-integral needs exactly the `c_j` (the reciprocals of the
//! roots `x_j`). Two independent routes produce them:
//!
//! * companion-matrix eigenvalues of the monic reversed polynomial, and
//! * eigenvalues of the gap round-trip operator built straight from `(r, t)`.
//!
//! The second route stays well conditioned when the plates approach ideal
//! mirrors and the roots cluster at ±1, where the coefficient route loses
//! roughly `eps^(1/m)` for an `m`-fold cluster.

use nalgebra::{DMatrix, Schur};
use num_complex::Complex64;

use super::{Expansion, NodeCoefficients};
use crate::error::{Error, Result};

/// Deflation thresholds tried in turn. The Francis iteration can stall on
/// nearly diagonal operators (near-ideal plates at grazing `t`); a looser
/// threshold deflates them at an eigenvalue cost of the same order.
const SCHUR_EPS: [f64; 3] = [f64::EPSILON, 1e-14, 1e-12];
const SCHUR_MAX_ITER: usize = 1000;

/// `Δ(x) = Σ_k c_k x^k` with `c_0 = 1` and degree at most `N - 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct DeltaPolynomial {
    coeffs: Vec<f64>,
}

impl DeltaPolynomial {
    pub(super) fn from_expansion(expansion: &Expansion, c: &NodeCoefficients) -> Self {
        let n = expansion.plates();
        let (r, t) = (c.r(), c.t());
        let mut total = vec![0.0; n];
        let mut term = Vec::with_capacity(n);
        let mut next = Vec::with_capacity(n);
        for comp in expansion.terms() {
            term.clear();
            term.push(1.0);
            for (i, k) in comp.boundaries() {
                next.clear();
                next.resize(term.len() + (k - i), 0.0);
                if k == i + 1 {
                    let a = -r[i] * r[k];
                    for (d, &v) in term.iter().enumerate() {
                        next[d] += v;
                        next[d + 1] += v * a;
                    }
                } else {
                    let through: f64 = t[i + 1..k].iter().map(|v| v * v).product();
                    let a = -r[i] * r[k] * through;
                    for (d, &v) in term.iter().enumerate() {
                        next[d + k - i] += v * a;
                    }
                }
                std::mem::swap(&mut term, &mut next);
            }
            for (acc, v) in total.iter_mut().zip(&term) {
                *acc += v;
            }
        }
        // the all-ones composition is the only source of x^0
        total[0] = 1.0;
        DeltaPolynomial { coeffs: total }
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    /// Highest power with a non-zero coefficient.
    pub fn degree(&self) -> usize {
        self.coeffs.iter().rposition(|&c| c != 0.0).unwrap_or(0)
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, &c| acc * x + c)
    }

    /// `q(z) = z^d + c_1 z^{d-1} + … + c_d` and `q'(z)`, with `d = N - 1`.
    fn reversed_eval(&self, z: Complex64) -> (Complex64, Complex64) {
        let mut q = Complex64::new(1.0, 0.0);
        let mut dq = Complex64::new(0.0, 0.0);
        for &c in &self.coeffs[1..] {
            dq = dq * z + q;
            q = q * z + c;
        }
        (q, dq)
    }

    /// The `c_j` with `Δ(x) = ∏ (1 - c_j x)`, from the companion matrix of
    /// the monic reversed polynomial followed by one guarded Newton step each.
    /// Zero coefficients at the top give roots `c_j = 0`.
    pub fn reciprocal_roots(&self) -> Result<Vec<Complex64>> {
        let d = self.coeffs.len() - 1;
        if d == 0 {
            return Ok(Vec::new());
        }
        let companion = DMatrix::from_fn(d, d, |i, j| {
            if i == 0 {
                -self.coeffs[j + 1]
            } else if j + 1 == i {
                1.0
            } else {
                0.0
            }
        });
        let mut roots = eigenvalues(companion)?;
        for z in roots.iter_mut() {
            let (q, dq) = self.reversed_eval(*z);
            if dq.norm() == 0.0 {
                continue;
            }
            let candidate = *z - q / dq;
            if self.reversed_eval(candidate).0.norm() < q.norm() {
                *z = candidate;
            }
        }
        sort_roots(&mut roots);
        Ok(roots)
    }
}

/// The round-trip operator `K` of a uniform stack, `Δ(x) = det(I - x K)`.
///
/// Each gap carries a right-moving amplitude `a_g` (leaving plate `g`) and a
/// left-moving amplitude `b_g` (leaving plate `g + 1`):
/// `a_g = r_g b_g + t_g a_{g-1}`, `b_g = r_{g+1} a_g + t_{g+1} b_{g+1}`.
/// One-way propagation `√x` per traversal gives the operator `√x M`. `M`
/// is bipartite between `{a_g, b_{g+1}}` for even `g` and the rest, so
/// `det(I - √x M) = det(I - x K)` with `K` the even block of `M²`.
pub fn round_trip_operator(coeffs: &NodeCoefficients) -> DMatrix<f64> {
    let (r, t) = (coeffs.r(), coeffs.t());
    let gaps = r.len() - 1;
    let a = |g: usize| 2 * g;
    let b = |g: usize| 2 * g + 1;
    let mut m = DMatrix::zeros(2 * gaps, 2 * gaps);
    for g in 0..gaps {
        m[(a(g), b(g))] = r[g];
        if g > 0 {
            m[(a(g), a(g - 1))] = t[g];
        }
        m[(b(g), a(g))] = r[g + 1];
        if g + 1 < gaps {
            m[(b(g), b(g + 1))] = t[g + 1];
        }
    }
    // even class: a_g with g even, b_g with g odd
    let even: Vec<usize> = (0..gaps)
        .map(|g| if g % 2 == 0 { a(g) } else { b(g) })
        .collect();
    let m2 = &m * &m;
    DMatrix::from_fn(gaps, gaps, |i, j| m2[(even[i], even[j])])
}

/// Reciprocal roots `c_j` of Δ from the eigenvalues of the round-trip operator.
pub fn round_trip_roots(coeffs: &NodeCoefficients) -> Result<Vec<Complex64>> {
    let mut roots = eigenvalues(round_trip_operator(coeffs))?;
    sort_roots(&mut roots);
    Ok(roots)
}

/// Eigenvalues of `m`, computed for `(m - μI) / scale` with `μ` the mean
/// diagonal. Near-ideal stacks give operators close to `μI` whose spread is
/// many orders below `μ`; shifting and rescaling first keeps the iteration
/// working on O(1) entries.
fn eigenvalues(m: DMatrix<f64>) -> Result<Vec<Complex64>> {
    let n = m.nrows();
    let shift = m.trace() / n as f64;
    let centered = m - DMatrix::identity(n, n) * shift;
    let scale = centered.amax();
    if scale == 0.0 {
        return Ok(vec![Complex64::new(shift, 0.0); n]);
    }
    let scaled = centered / scale;
    for eps in SCHUR_EPS {
        if let Some(schur) = Schur::try_new(scaled.clone(), eps, SCHUR_MAX_ITER) {
            return Ok(schur
                .complex_eigenvalues()
                .iter()
                .map(|z| z * scale + shift)
                .collect());
        }
    }
    Err(Error::RootFinding)
}

/// Deterministic order: by real part, then imaginary part.
fn sort_roots(roots: &mut [Complex64]) {
    roots.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
}

#[cfg(test)]
mod tests {
    use super::super::{delta_oracle, delta_polynomial, delta_total, StackGeometry};
    use super::*;
    use approx::assert_relative_eq;
    use rand::{rngs::StdRng, Rng, SeedableRng};

    fn coeffs(r: &[f64], t: &[f64]) -> NodeCoefficients {
        NodeCoefficients::new(r.to_vec(), t.to_vec()).unwrap()
    }

    fn random_coeffs(rng: &mut StdRng, n: usize) -> NodeCoefficients {
        coeffs(
            &(0..n).map(|_| rng.gen_range(-1.0..=1.0)).collect::<Vec<_>>(),
            &(0..n).map(|_| rng.gen_range(0.0..=1.0)).collect::<Vec<_>>(),
        )
    }

    fn product_form(roots: &[Complex64], x: f64) -> Complex64 {
        roots.iter().map(|c| 1.0 - c * x).product()
    }

    #[test]
    fn two_plates() {
        let r = 0.37;
        let p = delta_polynomial(&coeffs(&[r, r], &[0.5, 0.5]), &StackGeometry::uniform(2).unwrap()).unwrap();
        assert_eq!(p.coeffs(), &[1.0, -r * r]);
    }

    #[test]
    fn three_equal_plates() {
        let (r, t) = (0.6, 0.4);
        let p = delta_polynomial(&coeffs(&[r; 3], &[t; 3]), &StackGeometry::uniform(3).unwrap()).unwrap();
        assert_relative_eq!(p.coeffs()[0], 1.0);
        assert_relative_eq!(p.coeffs()[1], -2.0 * r * r, max_relative = 1e-15);
        assert_relative_eq!(p.coeffs()[2], r.powi(4) - r * r * t * t, max_relative = 1e-15);
    }

    #[test]
    fn polynomial_matches_oracle() {
        let mut rng = StdRng::seed_from_u64(6);
        for n in 2..=8 {
            let g = StackGeometry::uniform(n).unwrap();
            let c = random_coeffs(&mut rng, n);
            let p = delta_polynomial(&c, &g).unwrap();
            assert_eq!(p.coeffs()[0], 1.0);
            assert!(p.degree() < n);
            for _ in 0..20 {
                let x: f64 = rng.gen_range(0.0..1.0);
                let want = delta_oracle(&c, &g, -x.ln()).unwrap();
                assert!((p.eval(x) - want).abs() <= 1e-12 * want.abs().max(1.0));
            }
        }
    }

    #[test]
    fn non_uniform_gaps_rejected() {
        let g = StackGeometry::new(vec![1.0, 2.0]).unwrap();
        let c = coeffs(&[0.1; 3], &[0.9; 3]);
        assert_eq!(delta_polynomial(&c, &g).unwrap_err(), Error::NonUniformGaps);
    }

    #[test]
    fn round_trip_determinant_reproduces_delta() {
        let mut rng = StdRng::seed_from_u64(21);
        for n in 2..=8 {
            let g = StackGeometry::uniform(n).unwrap();
            for _ in 0..25 {
                let c = random_coeffs(&mut rng, n);
                let k = round_trip_operator(&c);
                assert_eq!(k.nrows(), n - 1);
                let x: f64 = rng.gen_range(0.0..1.0);
                let det = (DMatrix::identity(n - 1, n - 1) - k * x).determinant();
                let want = delta_total(&c, &g, -x.ln()).unwrap();
                assert!((det - want).abs() <= 1e-12, "n={n}: det {det} vs Δ {want}");
            }
        }
    }

    #[test]
    fn both_root_routes_agree_on_generic_input() {
        let mut rng = StdRng::seed_from_u64(44);
        for n in 2..=7 {
            let g = StackGeometry::uniform(n).unwrap();
            let c = random_coeffs(&mut rng, n);
            let p = delta_polynomial(&c, &g).unwrap();
            let a = p.reciprocal_roots().unwrap();
            let b = round_trip_roots(&c).unwrap();
            assert_eq!(a.len(), n - 1);
            assert_eq!(b.len(), n - 1);
            for x in [0.1, 0.5, 0.9] {
                let want = p.eval(x);
                assert!((product_form(&a, x).re - want).abs() < 1e-10);
                assert!((product_form(&b, x).re - want).abs() < 1e-10);
                assert!(product_form(&b, x).im.abs() < 1e-10);
            }
        }
    }

    #[test]
    fn ideal_mirrors_give_unit_roots() {
        let n = 6;
        let pe = coeffs(&[1.0; 6], &[0.0; 6]);
        for c in round_trip_roots(&pe).unwrap() {
            assert!((c - 1.0).norm() < 1e-14, "{c}");
        }
        let alternating = coeffs(&[1.0, -1.0, 1.0, -1.0, 1.0, -1.0], &[0.0; 6]);
        let roots = round_trip_roots(&alternating).unwrap();
        assert_eq!(roots.len(), n - 1);
        for c in roots {
            assert!((c + 1.0).norm() < 1e-14, "{c}");
        }
    }
}
