//! Lyapunov spectra and exact entropy quantities of the Weyl-chamber flow
//! `e^{tX}`.
//!
//! All quantities are exact rationals. Functions that are stated for dominant
//! directions ([`lyapunov_spectrum`], [`entropy_lower_bound`],
//! [`fast_slow_split`], [`dispersive_exponent`]) replace `X` by its dominant
//! representative first. [`component_entropy_cap`] and [`haar_entropy`] are
//! evaluated at `X` as given; the latter is Weyl invariant anyway.
//!
//! The dispersive exponent is the power of `ħ` left after each fast
//! direction with exponent `χ` contributes `ħ^{Kχ - 1/2}`. The multiplicative
//! constant and the `-cε` slack of the underlying norm estimate have no
//! numeric values and are not represented here.

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{pos, Rational};
use crate::root_system::{CartanElement, RootSystem};
use crate::supports::SupportSet;

/// Positive-root values `α(X)` of the dominant representative, each repeated
/// `m_α` times, sorted non-decreasingly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LyapunovSpectrum {
    pub values: Vec<Rational>,
    pub chi_max: Rational,
    pub direction: CartanElement,
}

impl LyapunovSpectrum {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// Slow/fast partition of the positive roots against the threshold `1/(2K)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FastSlowSplit {
    pub threshold: Rational,
    /// Positions in [`LyapunovSpectrum::values`] with value `< threshold`.
    pub slow_indices: Vec<usize>,
    /// Positions in [`LyapunovSpectrum::values`] with value `>= threshold`.
    pub fast_indices: Vec<usize>,
    /// Slow dimension (with multiplicity).
    pub j0: usize,
    /// Total number of positive roots (with multiplicity).
    pub j: usize,
}

/// The time-horizon constant `K` together with a flow direction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DispersiveQuery {
    k: Rational,
    pub direction: CartanElement,
}

impl DispersiveQuery {
    pub fn new(k: Rational, direction: CartanElement) -> Result<Self> {
        check_k(&k)?;
        Ok(DispersiveQuery { k, direction })
    }

    pub fn k(&self) -> &Rational {
        &self.k
    }
}

fn check_k(k: &Rational) -> Result<()> {
    if !k.is_positive() {
        return Err(Error::InvalidInput(format!(
            "time-horizon constant K must be positive, got {k}"
        )));
    }
    Ok(())
}

pub fn lyapunov_spectrum(rs: &RootSystem, x: &CartanElement) -> Result<LyapunovSpectrum> {
    rs.validate(x)?;
    let direction = x.dominant_representative();
    let all = rs.evaluate_all(&direction)?;
    let mut values = Vec::with_capacity(rs.num_positive_with_multiplicity());
    for &a in rs.positive_roots() {
        for _ in 0..rs.multiplicity(a) {
            values.push(all[a].clone());
        }
    }
    values.sort();
    let chi_max = values.last().cloned().unwrap_or_else(Rational::zero);
    Ok(LyapunovSpectrum {
        values,
        chi_max,
        direction,
    })
}

/// Entropy of Haar measure: `Σ_α m_α (α(X))⁺` over all roots.
pub fn haar_entropy(rs: &RootSystem, x: &CartanElement) -> Result<Rational> {
    let values = rs.evaluate_all(x)?;
    Ok(values
        .iter()
        .enumerate()
        .map(|(a, v)| pos(v) * Rational::from_integer(rs.multiplicity(a).into()))
        .sum())
}

/// `Σ m_α (α(X) - α_max(X)/2)` over positive roots with `α(X) >= α_max(X)/2`,
/// for the dominant representative of `X`.
pub fn entropy_lower_bound(rs: &RootSystem, x: &CartanElement) -> Result<Rational> {
    let spectrum = lyapunov_spectrum(rs, x)?;
    let half = &spectrum.chi_max / Rational::from_integer(2.into());
    Ok(spectrum
        .values
        .iter()
        .filter(|v| **v >= half)
        .map(|v| v - &half)
        .sum())
}

/// The conjectured bound `½ Σ_{α>0} m_α α(X)`, equal to half the Haar entropy.
pub fn conjectured_bound(rs: &RootSystem, x: &CartanElement) -> Result<Rational> {
    Ok(haar_entropy(rs, x)? / Rational::from_integer(2.into()))
}

/// Entropy cap of an ergodic component supported on `support`:
/// `Σ_{α∈R} m_α (α(X))⁺`, evaluated at `X` without dominantizing.
pub fn component_entropy_cap(
    rs: &RootSystem,
    support: &SupportSet,
    x: &CartanElement,
) -> Result<Rational> {
    let values = rs.evaluate_all(x)?;
    cap_from_values(rs, support, &values)
}

/// [`component_entropy_cap`] with the root values `α(X)` (in root order)
/// already computed.
pub fn cap_from_values(rs: &RootSystem, support: &SupportSet, values: &[Rational]) -> Result<Rational> {
    if support.universe() != rs.len() || values.len() != rs.len() {
        return Err(Error::RootIndexOutOfRange {
            index: support.universe().max(values.len()).saturating_sub(1),
            len: rs.len(),
        });
    }
    let mut total = Rational::zero();
    for a in support.indices() {
        if values[a].is_positive() {
            match rs.multiplicity(a) {
                1 => total += &values[a],
                m => total += &values[a] * Rational::from_integer(m.into()),
            }
        }
    }
    Ok(total)
}

pub fn fast_slow_split(rs: &RootSystem, x: &CartanElement, k: &Rational) -> Result<FastSlowSplit> {
    check_k(k)?;
    let spectrum = lyapunov_spectrum(rs, x)?;
    let threshold = (Rational::from_integer(2.into()) * k).recip();
    let (slow_indices, fast_indices): (Vec<usize>, Vec<usize>) =
        (0..spectrum.len()).partition(|&p| spectrum.values[p] < threshold);
    Ok(FastSlowSplit {
        threshold,
        j0: slow_indices.len(),
        j: spectrum.len(),
        slow_indices,
        fast_indices,
    })
}

/// `E = Σ_{χ >= 1/(2K)} (Kχ - 1/2)` over the fast exponents, with multiplicity.
pub fn dispersive_exponent(q: &DispersiveQuery, rs: &RootSystem) -> Result<Rational> {
    let spectrum = lyapunov_spectrum(rs, &q.direction)?;
    let split = fast_slow_split(rs, &q.direction, &q.k)?;
    let half = Rational::one() / Rational::from_integer(2.into());
    Ok(split
        .fast_indices
        .iter()
        .map(|&p| &q.k * &spectrum.values[p] - &half)
        .sum())
}
