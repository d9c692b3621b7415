//! The entropy game: how little Haar weight can a measure carry and still
//! have enough entropy in every test direction?
//!
//! A measure is modelled by weights `w_R >= 0`, one per admissible support
//! `R`, summing to one. Its entropy in direction `X` is at most
//! `Σ_R w_R cap(R, X)`, so every test direction contributes the row
//! `Σ_R w_R cap(R, X) >= LB(X)`. Minimising `w_Δ` over this polytope gives
//! the smallest Haar component compatible with the entropy lower bound.

use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::entropy::{cap_from_values, entropy_lower_bound, haar_entropy};
use crate::error::{Error, Result};
use crate::lp::{self, LinearConstraint, LpModel, LpSolution, LpStatus, Relation};
use crate::rational::{int, rat, Rational};
use crate::root_system::{CartanElement, RootSystem};
use crate::supports::{
    enumerate_block_partitions, enumerate_symmetric_closed, SupportKind, SupportSet,
};

/// Largest `n` for which generic supports are enumerated.
pub const MAX_GENERIC_N: usize = 6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Lattice {
    /// Any cocompact lattice: every symmetric closed support is allowed.
    Generic,
    /// Lattices from division algebras: equal-size block supports only.
    Inner,
}

impl fmt::Display for Lattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Lattice::Generic => "generic",
            Lattice::Inner => "inner",
        })
    }
}

/// How the entropy lower bound `LB(X)` of each test direction is obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum BoundMode {
    /// `LB(X) = β · h_Haar(X)`.
    #[serde(rename = "haar-fraction")]
    FractionOfHaar,
    /// `LB(X)` is the half-maximal-exponent bound of
    /// [`entropy_lower_bound`]; `β` is ignored.
    #[serde(rename = "thm14")]
    HalfMaximal,
}

impl fmt::Display for BoundMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BoundMode::FractionOfHaar => "haar-fraction",
            BoundMode::HalfMaximal => "thm14",
        })
    }
}

#[derive(Debug, Clone)]
pub struct RigidityProblem {
    rs: RootSystem,
    supports: Vec<SupportSet>,
    test_directions: Vec<CartanElement>,
    beta: Rational,
    bound_mode: BoundMode,
    haar_index: usize,
}

impl RigidityProblem {
    pub fn new(
        rs: RootSystem,
        supports: Vec<SupportSet>,
        test_directions: Vec<CartanElement>,
        beta: Rational,
        bound_mode: BoundMode,
    ) -> Result<Self> {
        if beta.is_negative() || beta > Rational::one() {
            return Err(Error::InvalidInput(format!(
                "entropy fraction beta must lie in [0, 1], got {beta}"
            )));
        }
        if test_directions.is_empty() {
            return Err(Error::InvalidInput("no test directions".into()));
        }
        for x in &test_directions {
            rs.validate(x)?;
            if x.is_zero() {
                return Err(Error::InvalidInput("test directions must be nonzero".into()));
            }
        }
        for s in &supports {
            if s.universe() != rs.len() {
                return Err(Error::ShapeMismatch(format!(
                    "support {} is over {} roots, root system has {}",
                    s.label(),
                    s.universe(),
                    rs.len()
                )));
            }
        }
        let full: Vec<usize> = (0..supports.len())
            .filter(|&k| supports[k].is_full())
            .collect();
        let haar_index = match full.as_slice() {
            [k] => *k,
            [] => return Err(Error::InvalidInput("support family must contain Δ".into())),
            _ => {
                return Err(Error::InvalidInput(
                    "support family contains Δ more than once".into(),
                ))
            }
        };
        Ok(RigidityProblem {
            rs,
            supports,
            test_directions,
            beta,
            bound_mode,
            haar_index,
        })
    }

    /// Supports for `lattice`, the Weyl orbit of `diag(n-1, -1, ..., -1)` as
    /// test directions.
    pub fn standard(n: usize, lattice: Lattice, beta: Rational, bound_mode: BoundMode) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidInput(format!(
                "Haar-weight problems need n >= 3, got {n}"
            )));
        }
        let rs = RootSystem::type_a(n)?;
        let supports = match lattice {
            Lattice::Generic => {
                if n > MAX_GENERIC_N {
                    return Err(Error::Capacity {
                        what: "n for generic support enumeration",
                        value: n,
                        limit: MAX_GENERIC_N,
                    });
                }
                enumerate_symmetric_closed(&rs)?
            }
            Lattice::Inner => enumerate_block_partitions(n)?,
        };
        let directions = CartanElement::extremely_irregular(n).weyl_orbit();
        Self::new(rs, supports, directions, beta, bound_mode)
    }

    pub fn root_system(&self) -> &RootSystem {
        &self.rs
    }

    pub fn supports(&self) -> &[SupportSet] {
        &self.supports
    }

    pub fn test_directions(&self) -> &[CartanElement] {
        &self.test_directions
    }

    pub fn beta(&self) -> &Rational {
        &self.beta
    }

    pub fn bound_mode(&self) -> BoundMode {
        self.bound_mode
    }

    /// Position of `Δ` among the supports (and among the LP variables).
    pub fn haar_index(&self) -> usize {
        self.haar_index
    }

    /// Entropy lower bound required in direction `x`.
    pub fn lower_bound(&self, x: &CartanElement) -> Result<Rational> {
        match self.bound_mode {
            BoundMode::FractionOfHaar => Ok(&self.beta * haar_entropy(&self.rs, x)?),
            BoundMode::HalfMaximal => entropy_lower_bound(&self.rs, x),
        }
    }
}

/// Variables are the support weights in support order; the objective is
/// `w_Δ`; one `>=` row per test direction followed by the mass row.
pub fn build_lp(p: &RigidityProblem) -> Result<LpModel> {
    let variables = p.supports.iter().map(|s| format!("w[{}]", s.label())).collect();
    let mut objective = vec![Rational::zero(); p.supports.len()];
    objective[p.haar_index] = Rational::one();
    let mut constraints = Vec::with_capacity(p.test_directions.len() + 1);
    for x in &p.test_directions {
        let values = p.rs.evaluate_all(x)?;
        let coeffs = p
            .supports
            .iter()
            .map(|s| cap_from_values(&p.rs, s, &values))
            .collect::<Result<Vec<_>>>()?;
        constraints.push(LinearConstraint {
            name: format!("entropy at X={x}"),
            coeffs,
            relation: Relation::Ge,
            rhs: p.lower_bound(x)?,
        });
    }
    constraints.push(LinearConstraint {
        name: "total mass".into(),
        coeffs: vec![Rational::one(); p.supports.len()],
        relation: Relation::Eq,
        rhs: Rational::one(),
    });
    Ok(LpModel {
        variables,
        objective,
        constraints,
    })
}

pub fn solve_lp(model: &LpModel) -> Result<LpSolution> {
    lp::solve(model)
}

/// A solved rigidity problem.
#[derive(Debug, Clone)]
pub struct RigidityOutcome {
    pub problem: RigidityProblem,
    pub model: LpModel,
    pub solution: LpSolution,
}

impl RigidityOutcome {
    pub fn min_haar_weight(&self) -> Result<Rational> {
        match (&self.solution.status, &self.solution.optimum) {
            (LpStatus::Optimal, Some(v)) => Ok(v.clone()),
            (status, _) => Err(Error::Validation(format!(
                "rigidity model is not optimal: {status:?}"
            ))),
        }
    }
}

pub fn solve_problem(problem: RigidityProblem) -> Result<RigidityOutcome> {
    let model = build_lp(&problem)?;
    let solution = solve_lp(&model)?;
    if solution.status == LpStatus::Optimal && !solution.verify(&model) {
        return Err(Error::Validation(
            "simplex vertex failed exact re-substitution".into(),
        ));
    }
    Ok(RigidityOutcome {
        problem,
        model,
        solution,
    })
}

/// Smallest Haar weight compatible with `LB = β·h_Haar` on the extremely
/// irregular directions.
pub fn min_haar_weight(n: usize, lattice: Lattice, beta: &Rational) -> Result<Rational> {
    let problem = RigidityProblem::standard(n, lattice, beta.clone(), BoundMode::FractionOfHaar)?;
    solve_problem(problem)?.min_haar_weight()
}

/// Largest proper divisor of `n` (1 for primes).
pub fn largest_proper_divisor(n: usize) -> usize {
    (1..n).rev().find(|d| n.is_multiple_of(*d)).unwrap_or(1)
}

/// `((n+1)/2 - t) / (n - t)`, `t` the largest proper divisor of `n`.
pub fn inner_type_bound(n: usize) -> Rational {
    let t = largest_proper_divisor(n) as i64;
    let n = n as i64;
    (rat(n + 1, 2) - int(t)) / int(n - t)
}

/// Closed-form minimal Haar weight at `β = 1/2`, where one is known: `1/4`
/// for `SL_3`, `0` for `SL_4` (generic lattices), and [`inner_type_bound`]
/// for inner-type lattices.
pub fn closed_form_min_haar_weight(n: usize, lattice: Lattice) -> Option<Rational> {
    match (lattice, n) {
        (Lattice::Generic, 3) => Some(rat(1, 4)),
        (Lattice::Generic, 4) => Some(int(0)),
        (Lattice::Inner, n) if n >= 3 => Some(inner_type_bound(n)),
        _ => None,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VertexEntry {
    pub label: String,
    pub kind: SupportKind,
    #[serde(serialize_with = "crate::cli::ser_rational")]
    pub weight: Rational,
}

/// Supports carrying positive weight at the vertex the solver returned.
///
/// Optimal vertices need not be unique; this reports one of them.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VertexReport {
    #[serde(serialize_with = "crate::cli::ser_rational")]
    pub optimum: Rational,
    #[serde(serialize_with = "crate::cli::ser_rational")]
    pub haar_weight: Rational,
    pub entries: Vec<VertexEntry>,
    pub unique: bool,
}

pub fn extremal_vertex_report(
    problem: &RigidityProblem,
    solution: &LpSolution,
) -> Result<VertexReport> {
    let optimum = match (&solution.status, &solution.optimum) {
        (LpStatus::Optimal, Some(v)) => v.clone(),
        (status, _) => {
            return Err(Error::InvalidInput(format!(
                "no vertex to report for a {status:?} model"
            )))
        }
    };
    if solution.values.len() != problem.supports.len() {
        return Err(Error::ShapeMismatch(format!(
            "solution has {} weights for {} supports",
            solution.values.len(),
            problem.supports.len()
        )));
    }
    let entries = problem
        .supports
        .iter()
        .zip(&solution.values)
        .filter(|(_, w)| w.is_positive())
        .map(|(s, w)| VertexEntry {
            label: s.label().to_string(),
            kind: s.kind(),
            weight: w.clone(),
        })
        .collect();
    Ok(VertexReport {
        optimum,
        haar_weight: solution.values[problem.haar_index].clone(),
        entries,
        unique: false,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn standard(n: usize, lattice: Lattice, beta: Rational) -> RigidityProblem {
        RigidityProblem::standard(n, lattice, beta, BoundMode::FractionOfHaar).unwrap()
    }

    #[test]
    fn sl3_model_shape() {
        let p = standard(3, Lattice::Generic, rat(1, 2));
        let m = build_lp(&p).unwrap();
        assert_eq!(m.num_variables(), 5);
        assert_eq!(m.constraints.len(), 4);
        // at X = (2,-1,-1): ∅ 0, ±α_12 3, ±α_13 3, ±α_23 0, Δ 6; rhs 3
        let first = &m.constraints[0];
        assert_eq!(first.coeffs, vec![int(0), int(3), int(3), int(0), int(6)]);
        assert_eq!(first.rhs, int(3));
        assert_eq!(m.variables[4], "w[Δ]");
    }

    #[test]
    fn zero_beta_is_free() {
        let p = standard(3, Lattice::Generic, int(0));
        let m = build_lp(&p).unwrap();
        assert!(m.constraints[..3].iter().all(|c| c.rhs.is_zero()));
        assert_eq!(solve_problem(p).unwrap().min_haar_weight().unwrap(), int(0));
    }

    #[test]
    fn half_maximal_mode_matches_half_haar_on_irregular_orbit() {
        for n in 3..=6 {
            let a = build_lp(&standard(n, Lattice::Inner, rat(1, 2))).unwrap();
            let p = RigidityProblem::standard(n, Lattice::Inner, int(0), BoundMode::HalfMaximal).unwrap();
            let b = build_lp(&p).unwrap();
            assert_eq!(a, b);
        }
    }

    #[test]
    fn sl3_optimum_and_vertex() {
        let out = solve_problem(standard(3, Lattice::Generic, rat(1, 2))).unwrap();
        assert_eq!(out.min_haar_weight().unwrap(), rat(1, 4));
        assert_eq!(
            out.solution.values,
            vec![int(0), rat(1, 4), rat(1, 4), rat(1, 4), rat(1, 4)]
        );
        let report = extremal_vertex_report(&out.problem, &out.solution).unwrap();
        assert_eq!(report.entries.len(), 4);
        assert!(!report.unique);
    }

    #[test]
    fn full_support_only() {
        let rs = RootSystem::type_a(3).unwrap();
        let dirs = CartanElement::extremely_irregular(3).weyl_orbit();
        let p = RigidityProblem::new(
            rs.clone(),
            vec![SupportSet::full(&rs)],
            dirs,
            rat(1, 2),
            BoundMode::FractionOfHaar,
        )
        .unwrap();
        let out = solve_problem(p).unwrap();
        // the mass row pins w_Δ = 1
        assert_eq!(out.min_haar_weight().unwrap(), int(1));
        let report = extremal_vertex_report(&out.problem, &out.solution).unwrap();
        assert_eq!(report.entries.len(), 1);
        assert_eq!(report.entries[0].label, "Δ");
    }

    #[test]
    fn problem_validation() {
        let rs = RootSystem::type_a(3).unwrap();
        let dirs = CartanElement::extremely_irregular(3).weyl_orbit();
        let empty = SupportSet::empty(&rs);
        let full = SupportSet::full(&rs);
        let new = |supports: Vec<SupportSet>, dirs: Vec<CartanElement>, beta| {
            RigidityProblem::new(rs.clone(), supports, dirs, beta, BoundMode::FractionOfHaar)
        };
        assert!(new(vec![empty.clone()], dirs.clone(), rat(1, 2)).is_err());
        assert!(new(vec![full.clone(), full.clone()], dirs.clone(), rat(1, 2)).is_err());
        assert!(new(vec![full.clone()], vec![], rat(1, 2)).is_err());
        assert!(new(vec![full.clone()], vec![CartanElement::zero(3)], rat(1, 2)).is_err());
        assert!(new(vec![full.clone()], dirs.clone(), rat(3, 2)).is_err());
        assert!(new(vec![full.clone()], dirs.clone(), rat(-1, 2)).is_err());
        assert!(new(vec![full], vec![CartanElement::extremely_irregular(4)], rat(1, 2)).is_err());
    }

    #[test]
    fn capacity_and_dimension_errors() {
        assert!(matches!(
            min_haar_weight(7, Lattice::Generic, &rat(1, 2)),
            Err(Error::Capacity { .. })
        ));
        assert!(matches!(
            min_haar_weight(13, Lattice::Inner, &rat(1, 2)),
            Err(Error::Capacity { .. })
        ));
        assert!(min_haar_weight(2, Lattice::Inner, &rat(1, 2)).is_err());
    }

    #[test]
    fn divisors_and_closed_form() {
        let t: Vec<usize> = (3..=12).map(largest_proper_divisor).collect();
        assert_eq!(t, vec![1, 2, 1, 3, 1, 4, 3, 5, 1, 6]);
        assert_eq!(inner_type_bound(6), rat(1, 6));
        assert_eq!(inner_type_bound(9), rat(1, 3));
        assert_eq!(closed_form_min_haar_weight(5, Lattice::Generic), None);
    }
}
