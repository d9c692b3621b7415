//! Type `A_{n-1}` root data, Cartan elements and the Weyl group action.
//!
//! Roots are stored as explicit rational vectors together with their index
//! pair, so the [`RootSystem`] type itself does not depend on the type-A
//! structure; only [`RootSystem::type_a`] does. Roots are ordered
//! lexicographically on `(i, j)` and this order is what every support mask
//! in [`crate::supports`] refers to.

use std::collections::HashMap;
use std::fmt;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{fmt_rational, Rational};

/// A root `e_i - e_j` (indices are zero-based; labels print them one-based).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Root {
    pub i: usize,
    pub j: usize,
    pub vector: Vec<Rational>,
}

impl Root {
    fn type_a(n: usize, i: usize, j: usize) -> Root {
        let mut vector = vec![Rational::zero(); n];
        vector[i] = Rational::from_integer(1.into());
        vector[j] = Rational::from_integer((-1).into());
        Root { i, j, vector }
    }

    pub fn is_positive(&self) -> bool {
        self.i < self.j
    }

    /// `α_ij` with one-based indices, e.g. `α_12`.
    pub fn label(&self) -> String {
        format!("α_{}{}", self.i + 1, self.j + 1)
    }
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

/// A trace-zero diagonal element of the Cartan subalgebra.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CartanElement {
    coords: Vec<Rational>,
}

impl CartanElement {
    /// Rejects vectors whose coordinates do not sum to zero.
    pub fn new(coords: Vec<Rational>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::InvalidInput("empty Cartan element".into()));
        }
        let trace: Rational = coords.iter().sum();
        if !trace.is_zero() {
            return Err(Error::NonZeroTrace {
                trace: fmt_rational(&trace),
            });
        }
        Ok(CartanElement { coords })
    }

    pub fn from_ints(coords: &[i64]) -> Result<Self> {
        Self::new(
            coords
                .iter()
                .map(|&c| Rational::from_integer(c.into()))
                .collect(),
        )
    }

    pub fn zero(n: usize) -> Self {
        CartanElement {
            coords: vec![Rational::zero(); n],
        }
    }

    /// `diag(n-1, -1, ..., -1)`, the extremely irregular direction.
    pub fn extremely_irregular(n: usize) -> Self {
        let mut coords = vec![Rational::from_integer((-1).into()); n];
        coords[0] = Rational::from_integer((n as i64 - 1).into());
        CartanElement { coords }
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    /// Weyl action: coordinate `k` of the result is coordinate `perm^{-1}(k)`
    /// of `self`, i.e. the entry at position `k` moves to `perm[k]`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        let mut coords = vec![Rational::zero(); self.coords.len()];
        for (k, &target) in perm.iter().enumerate() {
            coords[target] = self.coords[k].clone();
        }
        CartanElement { coords }
    }

    pub fn scaled(&self, c: &Rational) -> Self {
        CartanElement {
            coords: self.coords.iter().map(|x| x * c).collect(),
        }
    }

    pub fn negated(&self) -> Self {
        CartanElement {
            coords: self.coords.iter().map(|x| -x).collect(),
        }
    }

    /// Sorted into non-increasing order: every positive root is `>= 0` on the
    /// result.
    pub fn dominant_representative(&self) -> Self {
        let mut coords = self.coords.clone();
        coords.sort_by(|a, b| b.cmp(a));
        CartanElement { coords }
    }

    pub fn is_dominant(&self) -> bool {
        self.coords.windows(2).all(|w| w[0] >= w[1])
    }

    /// True iff no non-trivial permutation fixes the element.
    pub fn is_regular(&self) -> bool {
        let d = self.dominant_representative();
        d.coords.windows(2).all(|w| w[0] != w[1])
    }

    /// All distinct coordinate permutations, starting from the dominant
    /// representative and walking down in lexicographic order. For
    /// `(n-1, -1, ..., -1)` element `k` carries `n-1` in position `k`.
    pub fn weyl_orbit(&self) -> Vec<CartanElement> {
        let mut current = self.dominant_representative().coords;
        let mut orbit = vec![CartanElement {
            coords: current.clone(),
        }];
        while prev_permutation(&mut current) {
            orbit.push(CartanElement {
                coords: current.clone(),
            });
        }
        orbit
    }

    /// Size of the Weyl orbit: `n! / Π (multiplicity of each value)!`.
    pub fn weyl_orbit_size(&self) -> u128 {
        let d = self.dominant_representative();
        let mut size: u128 = 1;
        let mut run = 0u128;
        for (k, w) in d.coords.iter().enumerate() {
            if k > 0 && *w == d.coords[k - 1] {
                run += 1;
            } else {
                run = 1;
            }
            // multiply by (k+1) and divide by the current run length keeps the
            // partial product an integer multinomial at every step
            size = size * (k as u128 + 1) / run;
        }
        size
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.coords.iter().map(fmt_rational).collect()
    }
}

impl fmt::Display for CartanElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.to_strings().join(","))
    }
}

/// Steps to the previous permutation in lexicographic order. Returns `false`
/// once the sequence is already the smallest (non-decreasing).
fn prev_permutation<T: Ord>(v: &mut [T]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] <= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] >= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// A finite root system with multiplicities and a root-addition table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootSystem {
    n: usize,
    roots: Vec<Root>,
    positive: Vec<usize>,
    multiplicities: Vec<u32>,
    negation: Vec<usize>,
    // sums[a * len + b] = index of roots[a] + roots[b] when that is a root
    sums: Vec<Option<usize>>,
}

impl RootSystem {
    /// The `A_{n-1}` root system of `SL_n`.
    pub fn type_a(n: usize) -> Result<RootSystem> {
        if n < 2 {
            return Err(Error::InvalidDimension(n));
        }
        let roots: Vec<Root> = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| Root::type_a(n, i, j))
            .collect();
        Ok(Self::from_roots(n, roots, None))
    }

    fn from_roots(n: usize, roots: Vec<Root>, multiplicities: Option<Vec<u32>>) -> RootSystem {
        let len = roots.len();
        let positive = (0..len).filter(|&a| roots[a].is_positive()).collect();
        let lookup: HashMap<&[Rational], usize> = roots
            .iter()
            .enumerate()
            .map(|(k, r)| (r.vector.as_slice(), k))
            .collect();
        let find = |v: &[Rational]| lookup.get(v).copied();
        let negation = roots
            .iter()
            .map(|r| {
                let neg: Vec<Rational> = r.vector.iter().map(|x| -x).collect();
                find(&neg).expect("root systems are closed under negation")
            })
            .collect();
        let mut sums = Vec::with_capacity(len * len);
        for a in &roots {
            for b in &roots {
                let s: Vec<Rational> = a.vector.iter().zip(&b.vector).map(|(x, y)| x + y).collect();
                sums.push(find(&s));
            }
        }
        RootSystem {
            n,
            multiplicities: multiplicities.unwrap_or_else(|| vec![1; len]),
            roots,
            positive,
            negation,
            sums,
        }
    }

    /// Ambient dimension `n` of `SL_n`.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rank(&self) -> usize {
        self.n - 1
    }

    pub fn roots(&self) -> &[Root] {
        &self.roots
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn root(&self, index: usize) -> Result<&Root> {
        self.roots.get(index).ok_or(Error::RootIndexOutOfRange {
            index,
            len: self.roots.len(),
        })
    }

    /// Indices of positive roots, in root order.
    pub fn positive_roots(&self) -> &[usize] {
        &self.positive
    }

    /// Number of positive roots counted with multiplicity.
    pub fn num_positive_with_multiplicity(&self) -> usize {
        self.positive
            .iter()
            .map(|&a| self.multiplicities[a] as usize)
            .sum()
    }

    pub fn multiplicity(&self, index: usize) -> u32 {
        self.multiplicities[index]
    }

    /// Index of `-roots[index]`.
    pub fn negation(&self, index: usize) -> usize {
        self.negation[index]
    }

    /// Index of `roots[a] + roots[b]`, if that sum is a root.
    pub fn sum(&self, a: usize, b: usize) -> Option<usize> {
        self.sums[a * self.roots.len() + b]
    }

    /// Index of `α_ij` (zero-based `i != j`).
    pub fn index_of(&self, i: usize, j: usize) -> Option<usize> {
        if i >= self.n || j >= self.n || i == j {
            return None;
        }
        Some(i * (self.n - 1) + if j < i { j } else { j - 1 })
    }

    fn check_dim(&self, x: &CartanElement) -> Result<()> {
        if x.dim() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: x.dim(),
            });
        }
        Ok(())
    }

    /// `α(X)` for the root at `index`.
    pub fn evaluate(&self, index: usize, x: &CartanElement) -> Result<Rational> {
        self.check_dim(x)?;
        let root = self.root(index)?;
        Ok(dot(&root.vector, x.coords()))
    }

    /// `α(X)` for an explicit root, which must belong to this system.
    pub fn evaluate_root(&self, root: &Root, x: &CartanElement) -> Result<Rational> {
        self.check_dim(x)?;
        if !self.roots.contains(root) {
            return Err(Error::InvalidInput(format!("{root} is not a root of this system")));
        }
        Ok(dot(&root.vector, x.coords()))
    }

    /// Values `α(X)` of all roots in root order.
    pub fn evaluate_all(&self, x: &CartanElement) -> Result<Vec<Rational>> {
        self.check_dim(x)?;
        Ok(self
            .roots
            .iter()
            .map(|r| dot(&r.vector, x.coords()))
            .collect())
    }

    /// Checks that `X` has the ambient dimension of this system.
    pub fn validate(&self, x: &CartanElement) -> Result<()> {
        self.check_dim(x)
    }

    /// Largest positive-root value `α_max(X)` after dominantizing.
    pub fn alpha_max(&self, x: &CartanElement) -> Result<Rational> {
        self.check_dim(x)?;
        let d = x.dominant_representative();
        Ok(&d.coords()[0] - &d.coords()[self.n - 1])
    }
}

fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter()
        .zip(b)
        .filter(|(c, _)| !c.is_zero())
        .map(|(c, x)| c * x)
        .sum()
}

/// True iff every positive root is nonnegative on `x`.
pub fn all_positive_nonnegative(rs: &RootSystem, x: &CartanElement) -> Result<bool> {
    let values = rs.evaluate_all(x)?;
    Ok(rs
        .positive_roots()
        .iter()
        .all(|&a| !values[a].is_negative()))
}
