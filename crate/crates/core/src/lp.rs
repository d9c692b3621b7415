//! Exact rational linear programming.
//!
//! [`solve`] minimises `c·x` subject to linear rows (`>=`, `<=`, `=`) and
//! `x >= 0` with a two-phase revised simplex method. The basis inverse is
//! kept as a dense rational matrix; entering and leaving variables follow
//! Bland's rule, so degenerate models terminate and the returned vertex is a
//! deterministic function of the model.
//!
//! Columns that agree in cost and in every row are merged before solving and
//! the merged weight is put on the first of them. The rigidity models have
//! many such columns (every equal-block partition has the same entropy caps
//! at the extremely irregular directions).

use std::collections::HashMap;
use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::rational::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Relation {
    #[serde(rename = ">=")]
    Ge,
    #[serde(rename = "<=")]
    Le,
    #[serde(rename = "=")]
    Eq,
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Relation::Ge => ">=",
            Relation::Le => "<=",
            Relation::Eq => "=",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearConstraint {
    pub name: String,
    pub coeffs: Vec<Rational>,
    pub relation: Relation,
    pub rhs: Rational,
}

impl LinearConstraint {
    pub fn lhs(&self, x: &[Rational]) -> Rational {
        self.coeffs.iter().zip(x).map(|(a, v)| a * v).sum()
    }

    pub fn is_satisfied(&self, x: &[Rational]) -> bool {
        let lhs = self.lhs(x);
        match self.relation {
            Relation::Ge => lhs >= self.rhs,
            Relation::Le => lhs <= self.rhs,
            Relation::Eq => lhs == self.rhs,
        }
    }
}

/// Minimise `objective · x` subject to `constraints` and `x >= 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LpModel {
    pub variables: Vec<String>,
    pub objective: Vec<Rational>,
    pub constraints: Vec<LinearConstraint>,
}

impl LpModel {
    pub fn num_variables(&self) -> usize {
        self.variables.len()
    }

    pub fn objective_value(&self, x: &[Rational]) -> Rational {
        self.objective.iter().zip(x).map(|(c, v)| c * v).sum()
    }

    /// Nonnegativity plus every row, checked by exact substitution.
    pub fn is_feasible(&self, x: &[Rational]) -> bool {
        x.len() == self.num_variables()
            && x.iter().all(|v| !v.is_negative())
            && self.constraints.iter().all(|c| c.is_satisfied(x))
    }

    fn check_shape(&self) -> Result<()> {
        let n = self.variables.len();
        if self.objective.len() != n {
            return Err(Error::ShapeMismatch(format!(
                "objective has {} coefficients for {n} variables",
                self.objective.len()
            )));
        }
        for c in &self.constraints {
            if c.coeffs.len() != n {
                return Err(Error::ShapeMismatch(format!(
                    "constraint {:?} has {} coefficients for {n} variables",
                    c.name,
                    c.coeffs.len()
                )));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LpSolution {
    pub status: LpStatus,
    /// Optimal objective value; `None` unless `status` is optimal.
    pub optimum: Option<Rational>,
    /// Values of the model variables at the returned vertex (all zero when
    /// not optimal).
    pub values: Vec<Rational>,
    /// Model variables that are basic at the returned vertex.
    pub basis: Vec<usize>,
    pub iterations: usize,
}

impl LpSolution {
    /// `(variable name, value)` for every model variable.
    pub fn named_values<'a>(&'a self, model: &'a LpModel) -> impl Iterator<Item = (&'a str, &'a Rational)> {
        model
            .variables
            .iter()
            .map(String::as_str)
            .zip(self.values.iter())
    }

    /// Re-checks the vertex against the model by exact substitution.
    pub fn verify(&self, model: &LpModel) -> bool {
        match (&self.status, &self.optimum) {
            (LpStatus::Optimal, Some(opt)) => {
                model.is_feasible(&self.values) && model.objective_value(&self.values) == *opt
            }
            _ => false,
        }
    }
}

/// Column kinds in the standard-form tableau.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Col {
    Structural(usize),
    Slack,
    Artificial,
}

struct StandardForm {
    // sparse columns: (row, coefficient)
    columns: Vec<Vec<(usize, Rational)>>,
    kinds: Vec<Col>,
    cost: Vec<Rational>,
    rhs: Vec<Rational>,
    initial_basis: Vec<usize>,
}

fn standard_form(model: &LpModel, reps: &[usize]) -> StandardForm {
    let m = model.constraints.len();
    let mut columns: Vec<Vec<(usize, Rational)>> = Vec::new();
    let mut kinds = Vec::new();
    let mut cost = Vec::new();
    let mut rhs = Vec::with_capacity(m);
    let mut flip = Vec::with_capacity(m);
    let mut relations = Vec::with_capacity(m);

    for c in &model.constraints {
        let negate = c.rhs.is_negative();
        flip.push(negate);
        rhs.push(if negate { -&c.rhs } else { c.rhs.clone() });
        relations.push(match (c.relation, negate) {
            (Relation::Eq, _) => Relation::Eq,
            (Relation::Ge, false) | (Relation::Le, true) => Relation::Ge,
            (Relation::Le, false) | (Relation::Ge, true) => Relation::Le,
        });
    }

    for &v in reps {
        let col = model
            .constraints
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.coeffs[v].is_zero())
            .map(|(r, c)| (r, if flip[r] { -&c.coeffs[v] } else { c.coeffs[v].clone() }))
            .collect();
        columns.push(col);
        kinds.push(Col::Structural(v));
        cost.push(model.objective[v].clone());
    }

    let mut initial_basis = vec![usize::MAX; m];
    for (r, rel) in relations.iter().enumerate() {
        match rel {
            Relation::Le => {
                initial_basis[r] = columns.len();
                columns.push(vec![(r, Rational::one())]);
                kinds.push(Col::Slack);
                cost.push(Rational::zero());
            }
            Relation::Ge => {
                columns.push(vec![(r, -Rational::one())]);
                kinds.push(Col::Slack);
                cost.push(Rational::zero());
            }
            Relation::Eq => {}
        }
    }
    for (r, rel) in relations.iter().enumerate() {
        if *rel != Relation::Le {
            initial_basis[r] = columns.len();
            columns.push(vec![(r, Rational::one())]);
            kinds.push(Col::Artificial);
            cost.push(Rational::zero());
        }
    }

    StandardForm {
        columns,
        kinds,
        cost,
        rhs,
        initial_basis,
    }
}

enum Outcome {
    Optimal,
    Unbounded,
}

struct Simplex<'a> {
    sf: &'a StandardForm,
    m: usize,
    basis: Vec<usize>,
    is_basic: Vec<bool>,
    binv: Vec<Vec<Rational>>,
    xb: Vec<Rational>,
    iterations: usize,
}

impl<'a> Simplex<'a> {
    fn new(sf: &'a StandardForm) -> Self {
        let m = sf.rhs.len();
        let mut is_basic = vec![false; sf.columns.len()];
        for &b in &sf.initial_basis {
            is_basic[b] = true;
        }
        // every initial basic column is a unit vector, so B = I
        let binv = (0..m)
            .map(|r| {
                (0..m)
                    .map(|c| if r == c { Rational::one() } else { Rational::zero() })
                    .collect()
            })
            .collect();
        Simplex {
            sf,
            m,
            basis: sf.initial_basis.clone(),
            is_basic,
            binv,
            xb: sf.rhs.clone(),
            iterations: 0,
        }
    }

    fn duals(&self, cost: &[Rational]) -> Vec<Rational> {
        let mut y = vec![Rational::zero(); self.m];
        for (r, &b) in self.basis.iter().enumerate() {
            if cost[b].is_zero() {
                continue;
            }
            for (yc, bv) in y.iter_mut().zip(&self.binv[r]) {
                if !bv.is_zero() {
                    *yc += &cost[b] * bv;
                }
            }
        }
        y
    }

    fn reduced_cost(&self, j: usize, cost: &[Rational], y: &[Rational]) -> Rational {
        let mut d = cost[j].clone();
        for (r, a) in &self.sf.columns[j] {
            if !y[*r].is_zero() {
                d -= &y[*r] * a;
            }
        }
        d
    }

    fn direction(&self, j: usize) -> Vec<Rational> {
        let col = &self.sf.columns[j];
        self.binv
            .iter()
            .map(|row| {
                col.iter()
                    .filter(|(r, _)| !row[*r].is_zero())
                    .map(|(r, a)| &row[*r] * a)
                    .sum()
            })
            .collect()
    }

    fn pivot(&mut self, row: usize, entering: usize, u: &[Rational]) {
        let pivot = u[row].clone();
        for v in self.binv[row].iter_mut() {
            *v /= &pivot;
        }
        self.xb[row] /= &pivot;
        let pivot_row = self.binv[row].clone();
        let pivot_x = self.xb[row].clone();
        for (r, factor) in u.iter().enumerate() {
            if r == row || factor.is_zero() {
                continue;
            }
            for (v, p) in self.binv[r].iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *v -= factor * p;
                }
            }
            self.xb[r] -= factor * &pivot_x;
        }
        self.is_basic[self.basis[row]] = false;
        self.is_basic[entering] = true;
        self.basis[row] = entering;
        self.iterations += 1;
    }

    /// Runs simplex iterations for `cost` over the columns allowed by
    /// `eligible`, using Bland's rule throughout.
    fn run(&mut self, cost: &[Rational], eligible: impl Fn(usize) -> bool) -> Outcome {
        loop {
            let y = self.duals(cost);
            let entering = (0..self.sf.columns.len()).find(|&j| {
                !self.is_basic[j] && eligible(j) && self.reduced_cost(j, cost, &y).is_negative()
            });
            let Some(j) = entering else {
                return Outcome::Optimal;
            };
            let u = self.direction(j);
            let mut leave: Option<(usize, Rational)> = None;
            for (r, ur) in u.iter().enumerate() {
                if !ur.is_positive() {
                    continue;
                }
                let ratio = &self.xb[r] / ur;
                let better = match &leave {
                    None => true,
                    Some((lr, best)) => {
                        ratio < *best || (ratio == *best && self.basis[r] < self.basis[*lr])
                    }
                };
                if better {
                    leave = Some((r, ratio));
                }
            }
            let Some((row, _)) = leave else {
                return Outcome::Unbounded;
            };
            self.pivot(row, j, &u);
        }
    }

    fn objective(&self, cost: &[Rational]) -> Rational {
        self.basis
            .iter()
            .zip(&self.xb)
            .map(|(&b, x)| &cost[b] * x)
            .sum()
    }
}

/// Indices of the first column of each class of identical (cost, column)
/// pairs, and for every variable the index of its class representative.
fn merge_duplicate_columns(model: &LpModel) -> (Vec<usize>, Vec<usize>) {
    let mut seen: HashMap<Vec<&Rational>, usize> = HashMap::new();
    let mut reps = Vec::new();
    let mut rep_of = Vec::with_capacity(model.num_variables());
    for v in 0..model.num_variables() {
        let key: Vec<&Rational> = std::iter::once(&model.objective[v])
            .chain(model.constraints.iter().map(|c| &c.coeffs[v]))
            .collect();
        let rep = *seen.entry(key).or_insert_with(|| {
            reps.push(v);
            v
        });
        rep_of.push(rep);
    }
    (reps, rep_of)
}

/// Solves `model` exactly.
pub fn solve(model: &LpModel) -> Result<LpSolution> {
    model.check_shape()?;
    let n = model.num_variables();
    let (reps, _) = merge_duplicate_columns(model);
    let sf = standard_form(model, &reps);
    let mut simplex = Simplex::new(&sf);

    let not_optimal = |status, simplex: &Simplex| LpSolution {
        status,
        optimum: None,
        values: vec![Rational::zero(); n],
        basis: Vec::new(),
        iterations: simplex.iterations,
    };

    // phase 1: drive the artificials to zero
    let phase1_cost: Vec<Rational> = sf
        .kinds
        .iter()
        .map(|k| match k {
            Col::Artificial => Rational::one(),
            _ => Rational::zero(),
        })
        .collect();
    if sf.kinds.contains(&Col::Artificial) {
        simplex.run(&phase1_cost, |_| true);
        if simplex.objective(&phase1_cost).is_positive() {
            return Ok(not_optimal(LpStatus::Infeasible, &simplex));
        }
        // pivot remaining zero-level artificials out where possible; rows
        // where that is impossible are redundant and stay inert
        for row in 0..simplex.m {
            if sf.kinds[simplex.basis[row]] != Col::Artificial {
                continue;
            }
            let replacement = (0..sf.columns.len()).find_map(|j| {
                if simplex.is_basic[j] || sf.kinds[j] == Col::Artificial {
                    return None;
                }
                let u = simplex.direction(j);
                (!u[row].is_zero()).then_some((j, u))
            });
            if let Some((j, u)) = replacement {
                simplex.pivot(row, j, &u);
            }
        }
    }

    // phase 2
    let kinds = &sf.kinds;
    match simplex.run(&sf.cost, |j| kinds[j] != Col::Artificial) {
        Outcome::Unbounded => Ok(not_optimal(LpStatus::Unbounded, &simplex)),
        Outcome::Optimal => {
            let mut values = vec![Rational::zero(); n];
            let mut basis = Vec::new();
            for (&b, x) in simplex.basis.iter().zip(&simplex.xb) {
                if let Col::Structural(v) = sf.kinds[b] {
                    values[v] = x.clone();
                    basis.push(v);
                }
            }
            basis.sort_unstable();
            let optimum = model.objective_value(&values);
            Ok(LpSolution {
                status: LpStatus::Optimal,
                optimum: Some(optimum),
                values,
                basis,
                iterations: simplex.iterations,
            })
        }
    }
}
