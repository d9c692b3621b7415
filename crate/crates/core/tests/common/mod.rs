//! Independent reference computations used by the integration tests. Nothing
//! here calls into the library's own algorithms beyond reading its data
//! structures.
#![allow(dead_code)]

use std::collections::BTreeSet;

use haargap::lp::{LpModel, Relation};
use haargap::Rational;
use num_traits::{Signed, Zero};
use rand::Rng;

pub fn r(p: i64, q: i64) -> Rational {
    Rational::new(p.into(), q.into())
}

/// Random trace-zero rational vector with small numerators and denominators.
/// Roughly one draw in ten has repeated coordinates.
pub fn random_trace_zero(rng: &mut impl Rng, n: usize) -> Vec<Rational> {
    let mut v: Vec<Rational> = (0..n - 1)
        .map(|_| r(rng.random_range(-24..=24), rng.random_range(1..=7)))
        .collect();
    if rng.random_range(0..10) == 0 && n >= 3 {
        v[1] = v[0].clone();
    }
    let s: Rational = v.iter().sum();
    v.push(-s);
    v
}

/// Positive Lyapunov exponents `x_i - x_j` (i < j after sorting descending).
pub fn exponents(x: &[Rational]) -> Vec<Rational> {
    let mut d = x.to_vec();
    d.sort_by(|a, b| b.cmp(a));
    let mut out = Vec::new();
    for i in 0..d.len() {
        for j in i + 1..d.len() {
            out.push(&d[i] - &d[j]);
        }
    }
    out
}

pub fn lower_bound_oracle(x: &[Rational]) -> Rational {
    let e = exponents(x);
    let max = e.iter().max().cloned().unwrap_or_else(Rational::zero);
    let half = max / r(2, 1);
    e.iter().filter(|v| **v >= half).map(|v| v - &half).sum()
}

pub fn haar_oracle(x: &[Rational]) -> Rational {
    let mut total = Rational::zero();
    for a in x {
        for b in x {
            if a > b {
                total += a - b;
            }
        }
    }
    total
}

/// Symmetric sets of type-A roots (as ordered pairs `(i, j)` for `e_i - e_j`)
/// closed under vector addition, found by testing every symmetric mask.
pub fn brute_force_closed_sets(n: usize) -> Vec<BTreeSet<(usize, usize)>> {
    let positive: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect();
    let vec_of = |(i, j): (usize, usize)| {
        let mut v = vec![0i64; n];
        v[i] += 1;
        v[j] -= 1;
        v
    };
    let as_root = |v: &[i64]| -> Option<(usize, usize)> {
        let plus: Vec<usize> = (0..n).filter(|&k| v[k] == 1).collect();
        let minus: Vec<usize> = (0..n).filter(|&k| v[k] == -1).collect();
        let zero = v.iter().filter(|&&c| c == 0).count();
        (plus.len() == 1 && minus.len() == 1 && zero == n - 2).then(|| (plus[0], minus[0]))
    };
    let mut out = Vec::new();
    for bits in 0u32..(1 << positive.len()) {
        let mut set = BTreeSet::new();
        for (p, &(i, j)) in positive.iter().enumerate() {
            if bits >> p & 1 == 1 {
                set.insert((i, j));
                set.insert((j, i));
            }
        }
        let closed = set.iter().all(|&a| {
            set.iter().all(|&b| {
                let s: Vec<i64> = vec_of(a).iter().zip(vec_of(b)).map(|(x, y)| x + y).collect();
                as_root(&s).is_none_or(|c| set.contains(&c))
            })
        });
        if closed {
            out.push(set);
        }
    }
    out
}

/// Number of partitions of an `n`-set into `n/k` blocks of size `k`:
/// `n! / ((k!)^l · l!)`.
pub fn equal_partition_count(n: usize, k: usize) -> u128 {
    let fact = |m: usize| (1..=m as u128).product::<u128>();
    let l = n / k;
    fact(n) / (fact(k).pow(l as u32) * fact(l))
}

fn solve_square(mut a: Vec<Vec<Rational>>, mut b: Vec<Rational>) -> Option<Vec<Rational>> {
    let n = b.len();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, piv);
        b.swap(col, piv);
        for row in 0..n {
            if row != col && !a[row][col].is_zero() {
                let f = &a[row][col] / &a[col][col];
                for c in col..n {
                    let t = &f * &a[col][c];
                    a[row][c] -= t;
                }
                let t = &f * &b[col];
                b[row] -= t;
            }
        }
    }
    Some((0..n).map(|i| &b[i] / &a[i][i]).collect())
}

fn subsets(pool: usize, size: usize, start: usize, cur: &mut Vec<usize>, visit: &mut dyn FnMut(&[usize])) {
    if cur.len() == size {
        visit(cur);
        return;
    }
    for k in start..pool {
        if pool - k < size - cur.len() {
            break;
        }
        cur.push(k);
        subsets(pool, size, k + 1, cur, visit);
        cur.pop();
    }
}

/// Minimum of a bounded LP over `x >= 0` by visiting every basic solution:
/// choose which inequalities (rows or sign constraints) are tight, solve the
/// square system and keep the feasible ones. `None` if infeasible.
pub fn vertex_enumeration_min(model: &LpModel) -> Option<Rational> {
    let nv = model.variables.len();
    let mut hyper: Vec<(Vec<Rational>, Rational)> = Vec::new();
    let mut forced = Vec::new();
    for c in &model.constraints {
        if c.relation == Relation::Eq {
            forced.push(hyper.len());
        }
        hyper.push((c.coeffs.clone(), c.rhs.clone()));
    }
    for v in 0..nv {
        let mut e = vec![Rational::zero(); nv];
        e[v] = r(1, 1);
        hyper.push((e, Rational::zero()));
    }
    let feasible = |x: &[Rational]| {
        x.iter().all(|v| !v.is_negative())
            && model.constraints.iter().all(|c| {
                let lhs: Rational = c.coeffs.iter().zip(x).map(|(a, v)| a * v).sum();
                match c.relation {
                    Relation::Ge => lhs >= c.rhs,
                    Relation::Le => lhs <= c.rhs,
                    Relation::Eq => lhs == c.rhs,
                }
            })
    };
    let mut best: Option<Rational> = None;
    subsets(hyper.len(), nv, 0, &mut Vec::new(), &mut |pick| {
        if !forced.iter().all(|f| pick.contains(f)) {
            return;
        }
        let a = pick.iter().map(|&h| hyper[h].0.clone()).collect();
        let b = pick.iter().map(|&h| hyper[h].1.clone()).collect();
        if let Some(x) = solve_square(a, b) {
            if feasible(&x) {
                let obj: Rational = model.objective.iter().zip(&x).map(|(c, v)| c * v).sum();
                if best.as_ref().is_none_or(|b| obj < *b) {
                    best = Some(obj);
                }
            }
        }
    });
    best
}

/// Largest singular value from a full SVD.
pub fn svd_norm(m: &haargap::cotlar_stein::CMatrix) -> f64 {
    m.clone()
        .svd(false, false)
        .singular_values
        .iter()
        .cloned()
        .fold(0.0, f64::max)
}
