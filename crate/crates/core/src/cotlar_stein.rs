//! Floating-point validation of two analytic estimates at desk scale:
//!
//! * almost orthogonality: for a finite family `A_α` of matrices,
//!   `‖Σ A_α‖ <= max(R1, R2)` with `R1 = max_α Σ_β ‖A_α* A_β‖^{1/2}` and
//!   `R2 = max_α Σ_β ‖A_α A_β*‖^{1/2}`;
//! * non-stationary phase: `∫ e^{iS(x)/ħ} a(x) dx` decays faster than any
//!   power of `ħ` when `S'` does not vanish on the support of `a`, but only
//!   like `ħ^{1/2}` at a non-degenerate stationary point.
//!
//! This is the only module that uses floating point. All tolerances live in
//! [`Tolerances`].

use std::f64::consts::PI;

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::Serialize;

use crate::error::{Error, Result};

pub type CMatrix = DMatrix<Complex64>;

/// Builds a `rows × cols` matrix from row-major real and imaginary parts.
pub fn complex_matrix(rows: usize, cols: usize, re: &[f64], im: &[f64]) -> Result<CMatrix> {
    let len = rows * cols;
    if re.len() != len || im.len() != len {
        return Err(Error::ShapeMismatch(format!(
            "{rows}x{cols} matrix needs {len} entries, got {} real and {} imaginary",
            re.len(),
            im.len()
        )));
    }
    let m = CMatrix::from_fn(rows, cols, |i, j| {
        Complex64::new(re[i * cols + j], im[i * cols + j])
    });
    check_finite(&m)?;
    Ok(m)
}

/// Default seed of the validation suite.
pub const DEFAULT_SEED: u64 = 20_090_515;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Tolerances {
    /// Relative residual at which power iteration stops.
    pub norm_rel_tol: f64,
    /// Multiplicative slack on the almost-orthogonality bound.
    pub bound_slack: f64,
    /// Tolerance for the analytic equality cases of the bound.
    pub equality_tol: f64,
    /// Lower bound on the fitted decay slope in the non-stationary case.
    pub slope_floor: f64,
    /// Expected slope at a non-degenerate stationary point.
    pub stationary_slope: f64,
    pub stationary_window: f64,
    /// Minimum grid points per period of the fastest oscillation.
    pub points_per_period: f64,
    pub max_power_iterations: usize,
    /// Largest Gram dimension for which a dense eigen-solve backs up power
    /// iteration.
    pub dense_fallback_dim: usize,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            norm_rel_tol: 1e-10,
            bound_slack: 1e-8,
            equality_tol: 1e-9,
            slope_floor: 2.0,
            stationary_slope: 0.5,
            stationary_window: 0.1,
            points_per_period: 20.0,
            max_power_iterations: 20_000,
            dense_fallback_dim: 32,
        }
    }
}

fn check_finite(m: &CMatrix) -> Result<()> {
    for c in 0..m.ncols() {
        for r in 0..m.nrows() {
            let z = m[(r, c)];
            if !z.re.is_finite() || !z.im.is_finite() {
                return Err(Error::NonFinite { row: r, col: c });
            }
        }
    }
    Ok(())
}

/// Largest singular value of `m`.
pub fn operator_norm(m: &CMatrix) -> Result<f64> {
    operator_norm_with(m, &Tolerances::default())
}

/// Power iteration on the smaller Gram matrix from the fixed start vector
/// `v_k = 1 + k/d`, stopping once `‖Gv - λv‖ <= tol·λ`. Falls back to a dense
/// Hermitian eigen-solve if the iteration budget runs out.
pub fn operator_norm_with(m: &CMatrix, tol: &Tolerances) -> Result<f64> {
    check_finite(m)?;
    if m.is_empty() {
        return Ok(0.0);
    }
    let gram = if m.ncols() <= m.nrows() {
        m.adjoint() * m
    } else {
        m * m.adjoint()
    };
    let d = gram.nrows();
    let mut v = nalgebra::DVector::<Complex64>::from_fn(d, |k, _| {
        Complex64::new(1.0 + k as f64 / d as f64, 0.0)
    });
    v /= Complex64::new(v.norm(), 0.0);
    for _ in 0..tol.max_power_iterations {
        let w = &gram * &v;
        let lambda = v.dotc(&w).re;
        if lambda <= 0.0 {
            // v is in the kernel; the whole Gram matrix is (numerically) zero
            // only if w vanishes too
            if w.norm() == 0.0 {
                return Ok(0.0);
            }
        } else {
            let residual = (&w - &v * Complex64::new(lambda, 0.0)).norm();
            if residual <= tol.norm_rel_tol * lambda {
                return Ok(lambda.sqrt());
            }
        }
        let norm = w.norm();
        if norm == 0.0 {
            return Ok(0.0);
        }
        v = w / Complex64::new(norm, 0.0);
    }
    if d <= tol.dense_fallback_dim {
        let eig = gram.symmetric_eigen();
        let top = eig.eigenvalues.iter().cloned().fold(0.0_f64, f64::max);
        return Ok(top.max(0.0).sqrt());
    }
    Err(Error::Validation(format!(
        "power iteration did not converge on a {d}x{d} Gram matrix"
    )))
}

/// A nonempty family of equally shaped complex matrices.
#[derive(Debug, Clone, PartialEq)]
pub struct MatrixFamily {
    members: Vec<CMatrix>,
    seed: Option<u64>,
}

impl MatrixFamily {
    pub fn new(members: Vec<CMatrix>) -> Result<Self> {
        let Some(first) = members.first() else {
            return Err(Error::ShapeMismatch("matrix family is empty".into()));
        };
        let shape = first.shape();
        if let Some(bad) = members.iter().position(|m| m.shape() != shape) {
            return Err(Error::ShapeMismatch(format!(
                "member {bad} has shape {:?}, expected {shape:?}",
                members[bad].shape()
            )));
        }
        Ok(MatrixFamily {
            members,
            seed: None,
        })
    }

    /// `count` matrices with i.i.d. standard complex Gaussian entries.
    pub fn random_gaussian(seed: u64, count: usize, rows: usize, cols: usize) -> Result<Self> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let members = (0..count)
            .map(|_| {
                CMatrix::from_fn(rows, cols, |_, _| {
                    let re: f64 = rng.sample(StandardNormal);
                    let im: f64 = rng.sample(StandardNormal);
                    Complex64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
                })
            })
            .collect();
        let mut family = Self::new(members)?;
        family.seed = Some(seed);
        Ok(family)
    }

    /// Coordinate projectors onto consecutive blocks of the given sizes.
    pub fn orthogonal_projectors(block_sizes: &[usize]) -> Result<Self> {
        let dim: usize = block_sizes.iter().sum();
        let mut start = 0;
        let members = block_sizes
            .iter()
            .map(|&size| {
                let m = CMatrix::from_fn(dim, dim, |r, c| {
                    if r == c && (start..start + size).contains(&r) {
                        Complex64::new(1.0, 0.0)
                    } else {
                        Complex64::new(0.0, 0.0)
                    }
                });
                start += size;
                m
            })
            .collect();
        Self::new(members)
    }

    pub fn members(&self) -> &[CMatrix] {
        &self.members
    }

    pub fn seed(&self) -> Option<u64> {
        self.seed
    }

    pub fn shape(&self) -> (usize, usize) {
        self.members[0].shape()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CotlarReport {
    pub members: usize,
    pub rows: usize,
    pub cols: usize,
    pub r1: f64,
    pub r2: f64,
    /// `‖Σ_α A_α‖`.
    pub lhs: f64,
    /// `Σ_α ‖A_α‖`, the bound without almost orthogonality.
    pub trivial_bound: f64,
    pub holds: bool,
}

pub fn cotlar_bound_check(family: &MatrixFamily) -> Result<CotlarReport> {
    cotlar_bound_check_with(family, &Tolerances::default())
}

pub fn cotlar_bound_check_with(family: &MatrixFamily, tol: &Tolerances) -> Result<CotlarReport> {
    let ms = family.members();
    let adjoints: Vec<CMatrix> = ms.iter().map(|m| m.adjoint()).collect();
    let mut r1 = 0.0_f64;
    let mut r2 = 0.0_f64;
    for (a, a_adj) in ms.iter().zip(&adjoints) {
        let mut s1 = 0.0;
        let mut s2 = 0.0;
        for (b, b_adj) in ms.iter().zip(&adjoints) {
            s1 += operator_norm_with(&(a_adj * b), tol)?.sqrt();
            s2 += operator_norm_with(&(a * b_adj), tol)?.sqrt();
        }
        r1 = r1.max(s1);
        r2 = r2.max(s2);
    }
    let (rows, cols) = family.shape();
    let sum = ms
        .iter()
        .fold(CMatrix::zeros(rows, cols), |acc, m| acc + m);
    let lhs = operator_norm_with(&sum, tol)?;
    let trivial_bound = ms
        .iter()
        .map(|m| operator_norm_with(m, tol))
        .sum::<Result<f64>>()?;
    Ok(CotlarReport {
        members: ms.len(),
        rows,
        cols,
        r1,
        r2,
        lhs,
        trivial_bound,
        holds: lhs <= r1.max(r2) * (1.0 + tol.bound_slack),
    })
}

/// An oscillatory integral `∫ e^{iS(x)/ħ} a(x) dx` sampled on a uniform grid.
#[derive(Debug, Clone, PartialEq)]
pub struct OscillatoryProblem {
    lo: f64,
    hi: f64,
    phase: Vec<f64>,
    amplitude: Vec<f64>,
    hbar_values: Vec<f64>,
}

impl OscillatoryProblem {
    /// Samples `phase` and `amplitude` at `points` equally spaced nodes of
    /// `[lo, hi]`. `points` must be odd (composite Simpson).
    pub fn sample(
        lo: f64,
        hi: f64,
        points: usize,
        phase: impl Fn(f64) -> f64,
        amplitude: impl Fn(f64) -> f64,
        hbar_values: Vec<f64>,
    ) -> Result<Self> {
        if !(lo < hi) || !lo.is_finite() || !hi.is_finite() {
            return Err(Error::InvalidInput(format!("bad interval [{lo}, {hi}]")));
        }
        if points < 3 || points.is_multiple_of(2) {
            return Err(Error::InvalidInput(format!(
                "Simpson's rule needs an odd number of points >= 3, got {points}"
            )));
        }
        let h = (hi - lo) / (points - 1) as f64;
        let xs: Vec<f64> = (0..points).map(|k| lo + k as f64 * h).collect();
        Self::from_samples(
            lo,
            hi,
            xs.iter().map(|&x| phase(x)).collect(),
            xs.iter().map(|&x| amplitude(x)).collect(),
            hbar_values,
        )
    }

    pub fn from_samples(
        lo: f64,
        hi: f64,
        phase: Vec<f64>,
        amplitude: Vec<f64>,
        hbar_values: Vec<f64>,
    ) -> Result<Self> {
        if phase.len() != amplitude.len() || phase.len() < 3 || phase.len().is_multiple_of(2) {
            return Err(Error::ShapeMismatch(format!(
                "phase has {} samples, amplitude {}; need equal odd counts >= 3",
                phase.len(),
                amplitude.len()
            )));
        }
        if phase.iter().chain(&amplitude).any(|v| !v.is_finite()) {
            return Err(Error::InvalidInput("non-finite sample".into()));
        }
        let scale = amplitude.iter().fold(0.0_f64, |m, a| m.max(a.abs()));
        let ends = amplitude[0].abs().max(amplitude[amplitude.len() - 1].abs());
        if ends > 1e-12 * scale.max(1.0) {
            return Err(Error::InvalidInput(format!(
                "amplitude must vanish at the interval ends, found {ends:e}"
            )));
        }
        if hbar_values.is_empty()
            || hbar_values.iter().any(|h| !(*h > 0.0) || !h.is_finite())
            || hbar_values.windows(2).any(|w| w[1] >= w[0])
        {
            return Err(Error::InvalidInput(
                "hbar values must be positive and strictly decreasing".into(),
            ));
        }
        Ok(OscillatoryProblem {
            lo,
            hi,
            phase,
            amplitude,
            hbar_values,
        })
    }

    /// `S(x) = x` with a smooth bump on `[-1, 1]`; no stationary point.
    pub fn non_stationary() -> Self {
        Self::sample(-1.0, 1.0, 16_001, |x| x, bump, default_hbars())
            .expect("fixed problem is well formed")
    }

    /// `S(x) = x²/2` with the same bump; stationary at `x = 0`.
    pub fn stationary() -> Self {
        Self::sample(-1.0, 1.0, 16_001, |x| 0.5 * x * x, bump, default_hbars())
            .expect("fixed problem is well formed")
    }

    pub fn hbar_values(&self) -> &[f64] {
        &self.hbar_values
    }

    fn step(&self) -> f64 {
        (self.hi - self.lo) / (self.phase.len() - 1) as f64
    }

    /// Grid points per period of `e^{iS/ħ}` at the smallest `ħ`, estimated
    /// from the largest phase increment between neighbouring nodes.
    pub fn points_per_period(&self) -> f64 {
        let max_step = self
            .phase
            .windows(2)
            .map(|w| (w[1] - w[0]).abs())
            .fold(0.0_f64, f64::max);
        let hbar_min = *self.hbar_values.last().expect("nonempty");
        if max_step == 0.0 {
            f64::INFINITY
        } else {
            2.0 * PI * hbar_min / max_step
        }
    }

    /// `min |S'|` over nodes where the amplitude is nonzero (finite
    /// differences); `None` if the amplitude vanishes identically.
    pub fn min_phase_derivative_on_support(&self) -> Option<f64> {
        let h = self.step();
        let n = self.phase.len();
        (0..n)
            .filter(|&k| self.amplitude[k] != 0.0)
            .map(|k| {
                let d = if k == 0 {
                    (self.phase[1] - self.phase[0]) / h
                } else if k == n - 1 {
                    (self.phase[n - 1] - self.phase[n - 2]) / h
                } else {
                    (self.phase[k + 1] - self.phase[k - 1]) / (2.0 * h)
                };
                d.abs()
            })
            .reduce(f64::min)
    }

    /// Composite Simpson approximation of the integral at one `ħ`.
    pub fn integral(&self, hbar: f64) -> Complex64 {
        let n = self.phase.len();
        let h = self.step();
        let mut acc = Complex64::new(0.0, 0.0);
        for k in 0..n {
            if self.amplitude[k] == 0.0 {
                continue;
            }
            let w = if k == 0 || k == n - 1 {
                1.0
            } else if k % 2 == 1 {
                4.0
            } else {
                2.0
            };
            acc += Complex64::from_polar(w * self.amplitude[k], self.phase[k] / hbar);
        }
        acc * (h / 3.0)
    }
}

/// `exp(-1/(1-x²))` on `(-1, 1)`, zero elsewhere.
pub fn bump(x: f64) -> f64 {
    if x.abs() < 1.0 {
        (-1.0 / (1.0 - x * x)).exp()
    } else {
        0.0
    }
}

/// Nine logarithmically spaced values from `1e-1` down to `1e-3`.
pub fn default_hbars() -> Vec<f64> {
    (0..9).map(|k| 10f64.powf(-1.0 - k as f64 / 4.0)).collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DecayReport {
    pub hbar_values: Vec<f64>,
    pub magnitudes: Vec<f64>,
    /// Least-squares slope of `log|I_ħ|` against `log ħ`, over the `ħ` with
    /// nonzero integral; `None` when fewer than two remain.
    pub fitted_slope: Option<f64>,
    pub points_per_period: f64,
}

pub fn oscillatory_decay(p: &OscillatoryProblem) -> Result<DecayReport> {
    oscillatory_decay_with(p, &Tolerances::default())
}

pub fn oscillatory_decay_with(p: &OscillatoryProblem, tol: &Tolerances) -> Result<DecayReport> {
    let ppp = p.points_per_period();
    if ppp < tol.points_per_period {
        return Err(Error::UnderResolved {
            points_per_period: ppp,
            required: tol.points_per_period,
        });
    }
    let magnitudes: Vec<f64> = p.hbar_values.iter().map(|&h| p.integral(h).norm()).collect();
    let pts: Vec<(f64, f64)> = p
        .hbar_values
        .iter()
        .zip(&magnitudes)
        .filter(|(_, m)| **m > 0.0)
        .map(|(h, m)| (h.ln(), m.ln()))
        .collect();
    Ok(DecayReport {
        hbar_values: p.hbar_values.clone(),
        magnitudes,
        fitted_slope: least_squares_slope(&pts),
        points_per_period: ppp,
    })
}

fn least_squares_slope(pts: &[(f64, f64)]) -> Option<f64> {
    if pts.len() < 2 {
        return None;
    }
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    (sxx > 0.0).then(|| sxy / sxx)
}

/// Shapes of the seeded random families: `(members, rows, cols)` with
/// members in `1..=12` and dimensions in `1..=16`.
pub fn random_family_shapes(seed: u64, count: usize) -> Vec<(u64, usize, usize, usize)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            (
                rng.random::<u64>(),
                rng.random_range(1..=12),
                rng.random_range(1..=16),
                rng.random_range(1..=16),
            )
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckLine {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ValidationReport {
    pub seed: u64,
    pub tolerances: Tolerances,
    pub families: Vec<CotlarReport>,
    pub non_stationary: DecayReport,
    pub stationary: DecayReport,
    pub checks: Vec<CheckLine>,
    pub passed: bool,
}

/// Runs the almost-orthogonality checks on 50 seeded random families and
/// the two analytic equality cases, then the oscillatory decay pair.
pub fn validation_suite(seed: u64, tol: &Tolerances) -> Result<ValidationReport> {
    let mut checks = Vec::new();
    let mut families = Vec::new();
    for (family_seed, k, rows, cols) in random_family_shapes(seed, 50) {
        let family = MatrixFamily::random_gaussian(family_seed, k, rows, cols)?;
        families.push(cotlar_bound_check_with(&family, tol)?);
    }
    let violations = families.iter().filter(|r| !r.holds).count();
    checks.push(CheckLine {
        name: "almost-orthogonality bound on 50 random families".into(),
        passed: violations == 0,
        detail: format!("{violations} violations"),
    });
    let trivial_ok = families
        .iter()
        .all(|r| r.lhs <= r.trivial_bound * (1.0 + tol.bound_slack));
    checks.push(CheckLine {
        name: "triangle bound on 50 random families".into(),
        passed: trivial_ok,
        detail: String::new(),
    });

    let single = MatrixFamily::random_gaussian(seed ^ 0x5eed, 1, 7, 5)?;
    let r = cotlar_bound_check_with(&single, tol)?;
    let eq = |a: f64, b: f64| (a - b).abs() <= tol.equality_tol * a.abs().max(b.abs()).max(1.0);
    checks.push(CheckLine {
        name: "single member: R1 = R2 = lhs".into(),
        passed: r.holds && eq(r.r1, r.lhs) && eq(r.r2, r.lhs),
        detail: format!("R1={} R2={} lhs={}", r.r1, r.r2, r.lhs),
    });
    let proj = MatrixFamily::orthogonal_projectors(&[3, 2, 4, 1])?;
    let r = cotlar_bound_check_with(&proj, tol)?;
    checks.push(CheckLine {
        name: "orthogonal projectors: R1 = R2 = lhs = 1".into(),
        passed: r.holds && eq(r.r1, 1.0) && eq(r.r2, 1.0) && eq(r.lhs, 1.0),
        detail: format!("R1={} R2={} lhs={}", r.r1, r.r2, r.lhs),
    });

    let non_stationary = oscillatory_decay_with(&OscillatoryProblem::non_stationary(), tol)?;
    let stationary = oscillatory_decay_with(&OscillatoryProblem::stationary(), tol)?;
    let ns = non_stationary.fitted_slope.unwrap_or(f64::NAN);
    let st = stationary.fitted_slope.unwrap_or(f64::NAN);
    checks.push(CheckLine {
        name: "non-stationary phase decay slope".into(),
        passed: ns >= tol.slope_floor,
        detail: format!("slope {ns:.4} (floor {})", tol.slope_floor),
    });
    checks.push(CheckLine {
        name: "stationary phase control slope".into(),
        passed: (st - tol.stationary_slope).abs() <= tol.stationary_window,
        detail: format!(
            "slope {st:.4} (expected {}±{})",
            tol.stationary_slope, tol.stationary_window
        ),
    });
    checks.push(CheckLine {
        name: "non-stationary decays faster than stationary".into(),
        passed: ns > st,
        detail: String::new(),
    });

    let passed = checks.iter().all(|c| c.passed);
    Ok(ValidationReport {
        seed,
        tolerances: *tol,
        families,
        non_stationary,
        stationary,
        checks,
        passed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn norm_of_identity_and_diagonal() {
        let id = CMatrix::identity(3, 3);
        assert!((operator_norm(&id).unwrap() - 1.0).abs() < 1e-12);
        let d = CMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![
            c(2.0, 0.0),
            c(-5.0, 0.0),
            c(1.0, 0.0),
        ]));
        assert!((operator_norm(&d).unwrap() - 5.0).abs() < 1e-9);
        assert_eq!(operator_norm(&CMatrix::zeros(4, 2)).unwrap(), 0.0);
        assert_eq!(operator_norm(&CMatrix::zeros(0, 0)).unwrap(), 0.0);
    }

    #[test]
    fn non_finite_rejected() {
        let mut m = CMatrix::identity(2, 2);
        m[(1, 0)] = c(f64::NAN, 0.0);
        assert_eq!(operator_norm(&m), Err(Error::NonFinite { row: 1, col: 0 }));
    }

    #[test]
    fn family_shape_checks() {
        assert!(MatrixFamily::new(vec![]).is_err());
        let r = MatrixFamily::new(vec![CMatrix::zeros(2, 2), CMatrix::zeros(2, 3)]);
        assert!(matches!(r, Err(Error::ShapeMismatch(_))));
    }

    #[test]
    fn dense_fallback_agrees() {
        let fam = MatrixFamily::random_gaussian(3, 1, 6, 6).unwrap();
        let m = &fam.members()[0];
        let strict = Tolerances {
            max_power_iterations: 1,
            ..Tolerances::default()
        };
        let a = operator_norm_with(m, &strict).unwrap();
        let b = operator_norm(m).unwrap();
        assert!((a - b).abs() <= 1e-8 * b);
    }

    #[test]
    fn single_member_family() {
        let fam = MatrixFamily::random_gaussian(11, 1, 5, 8).unwrap();
        let r = cotlar_bound_check(&fam).unwrap();
        assert!(r.holds);
        assert!((r.r1 - r.lhs).abs() < 1e-9 * r.lhs);
        assert!((r.r2 - r.lhs).abs() < 1e-9 * r.lhs);
    }

    #[test]
    fn projector_family() {
        let fam = MatrixFamily::orthogonal_projectors(&[2, 3, 1]).unwrap();
        let r = cotlar_bound_check(&fam).unwrap();
        assert!(r.holds);
        for v in [r.r1, r.r2, r.lhs] {
            assert!((v - 1.0).abs() < 1e-9, "{r:?}");
        }
        assert!((r.trivial_bound - 3.0).abs() < 1e-9);
    }

    #[test]
    fn zero_amplitude_gives_zero() {
        let p = OscillatoryProblem::sample(-1.0, 1.0, 16_001, |x| x, |_| 0.0, default_hbars()).unwrap();
        let r = oscillatory_decay(&p).unwrap();
        assert!(r.magnitudes.iter().all(|m| *m == 0.0));
        assert_eq!(r.fitted_slope, None);
        assert_eq!(p.min_phase_derivative_on_support(), None);
    }

    #[test]
    fn under_resolved_grid_is_refused() {
        let p = OscillatoryProblem::sample(-1.0, 1.0, 101, |x| x, bump, default_hbars()).unwrap();
        assert!(matches!(oscillatory_decay(&p), Err(Error::UnderResolved { .. })));
    }

    #[test]
    fn problem_invariants() {
        let h = default_hbars();
        assert!(OscillatoryProblem::sample(-1.0, 1.0, 100, |x| x, bump, h.clone()).is_err());
        assert!(OscillatoryProblem::sample(-1.0, 1.0, 101, |x| x, |_| 1.0, h.clone()).is_err());
        assert!(OscillatoryProblem::sample(-1.0, 1.0, 101, |x| x, bump, vec![1e-3, 1e-2]).is_err());
        assert!(OscillatoryProblem::sample(1.0, -1.0, 101, |x| x, bump, h).is_err());
    }

    #[test]
    fn phase_derivative_margin() {
        let p = OscillatoryProblem::non_stationary();
        let d = p.min_phase_derivative_on_support().unwrap();
        assert!((d - 1.0).abs() < 1e-9);
        let p = OscillatoryProblem::stationary();
        assert!(p.min_phase_derivative_on_support().unwrap() < 1e-3);
    }

    #[test]
    fn slope_fit_on_exact_power_law() {
        let pts: Vec<(f64, f64)> = (1..6).map(|k| (k as f64, 1.5 * k as f64 - 2.0)).collect();
        assert!((least_squares_slope(&pts).unwrap() - 1.5).abs() < 1e-12);
        assert_eq!(least_squares_slope(&pts[..1]), None);
    }
}
