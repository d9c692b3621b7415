//! Admissible supports of ergodic components.
//!
//! A support is a subset `R` of the roots. Admissible supports are symmetric
//! (`α ∈ R ⟺ -α ∈ R`) and closed under root addition. For type `A` such a set
//! is exactly the relation "`i` and `j` lie in the same block" of some set
//! partition of `{1..n}`; the inner-type lattices only allow partitions into
//! blocks of one common size.

use std::cmp::Ordering;
use std::fmt;

use bitvec::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::root_system::RootSystem;

/// Largest number of positive roots accepted by [`enumerate_symmetric_closed`]
/// (`A_5`).
pub const MAX_GENERIC_POSITIVE_ROOTS: usize = 15;

/// Default largest `n` accepted by [`enumerate_block_partitions`].
pub const DEFAULT_MAX_INNER_N: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SupportKind {
    Empty,
    Pair,
    BlockPartition,
    Full,
    Other,
}

impl fmt::Display for SupportKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SupportKind::Empty => "empty",
            SupportKind::Pair => "pair",
            SupportKind::BlockPartition => "block-partition",
            SupportKind::Full => "full",
            SupportKind::Other => "other",
        })
    }
}

/// A subset of the roots of a [`RootSystem`], as a bitmask over root indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SupportSet {
    mask: BitVec<u64, Lsb0>,
    label: String,
    kind: SupportKind,
}

impl SupportSet {
    /// Builds a support from a mask and derives its label and kind.
    pub fn from_mask(rs: &RootSystem, mask: BitVec<u64, Lsb0>) -> Result<Self> {
        if mask.len() != rs.len() {
            return Err(Error::ShapeMismatch(format!(
                "support mask has {} bits, root system has {} roots",
                mask.len(),
                rs.len()
            )));
        }
        let (label, kind) = describe(rs, &mask);
        Ok(SupportSet { mask, label, kind })
    }

    pub fn from_indices(rs: &RootSystem, indices: &[usize]) -> Result<Self> {
        let mut mask = bitvec![u64, Lsb0; 0; rs.len()];
        for &a in indices {
            rs.root(a)?;
            mask.set(a, true);
        }
        Self::from_mask(rs, mask)
    }

    /// `{±α_ij}` for each zero-based pair `(i, j)`.
    pub fn from_pairs(rs: &RootSystem, pairs: &[(usize, usize)]) -> Result<Self> {
        let mut indices = Vec::with_capacity(2 * pairs.len());
        for &(i, j) in pairs {
            let a = rs
                .index_of(i, j)
                .ok_or_else(|| Error::InvalidInput(format!("no root α_{}{}", i + 1, j + 1)))?;
            indices.push(a);
            indices.push(rs.negation(a));
        }
        Self::from_indices(rs, &indices)
    }

    /// `{α_ij : i, j in a common block}` for a partition of `0..n` (zero-based).
    pub fn from_blocks(rs: &RootSystem, blocks: &[Vec<usize>]) -> Result<Self> {
        let mut seen = vec![false; rs.n()];
        for &i in blocks.iter().flatten() {
            if i >= rs.n() || std::mem::replace(&mut seen[i], true) {
                return Err(Error::InvalidInput(format!(
                    "blocks do not partition 1..{}",
                    rs.n()
                )));
            }
        }
        if seen.iter().any(|s| !s) {
            return Err(Error::InvalidInput(format!(
                "blocks do not partition 1..{}",
                rs.n()
            )));
        }
        let mut mask = bitvec![u64, Lsb0; 0; rs.len()];
        for block in blocks {
            for &i in block {
                for &j in block {
                    if let Some(a) = rs.index_of(i, j) {
                        mask.set(a, true);
                    }
                }
            }
        }
        let mut sorted: Vec<Vec<usize>> = blocks.to_vec();
        for b in sorted.iter_mut() {
            b.sort_unstable();
        }
        sorted.retain(|b| !b.is_empty());
        sorted.sort_unstable();
        let (label, kind) = describe_blocks(&sorted, &mask);
        Ok(SupportSet { mask, label, kind })
    }

    pub fn empty(rs: &RootSystem) -> Self {
        Self::from_mask(rs, bitvec![u64, Lsb0; 0; rs.len()]).expect("mask length matches")
    }

    pub fn full(rs: &RootSystem) -> Self {
        Self::from_mask(rs, bitvec![u64, Lsb0; 1; rs.len()]).expect("mask length matches")
    }

    pub fn mask(&self) -> &BitSlice<u64, Lsb0> {
        &self.mask
    }

    /// Number of roots the mask ranges over.
    pub fn universe(&self) -> usize {
        self.mask.len()
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn kind(&self) -> SupportKind {
        self.kind
    }

    pub fn len(&self) -> usize {
        self.mask.count_ones()
    }

    pub fn is_empty(&self) -> bool {
        self.mask.not_any()
    }

    pub fn is_full(&self) -> bool {
        self.mask.all()
    }

    pub fn contains(&self, index: usize) -> bool {
        self.mask.get(index).is_some_and(|b| *b)
    }

    pub fn indices(&self) -> impl Iterator<Item = usize> + '_ {
        self.mask.iter_ones()
    }

    /// Mask as a binary string, most significant (highest root index) first.
    pub fn mask_string(&self) -> String {
        self.mask
            .iter()
            .rev()
            .map(|b| if *b { '1' } else { '0' })
            .collect()
    }

    pub fn is_symmetric(&self, rs: &RootSystem) -> bool {
        self.indices().all(|a| self.contains(rs.negation(a)))
    }

    pub fn is_closed(&self, rs: &RootSystem) -> bool {
        let members: Vec<usize> = self.indices().collect();
        members.iter().all(|&a| {
            members
                .iter()
                .all(|&b| rs.sum(a, b).is_none_or(|c| self.contains(c)))
        })
    }

    /// Smallest addition-closed superset.
    pub fn closure(&self, rs: &RootSystem) -> Result<SupportSet> {
        let mut mask = self.mask.clone();
        loop {
            let members: Vec<usize> = mask.iter_ones().collect();
            let mut grew = false;
            for &a in &members {
                for &b in &members {
                    if let Some(c) = rs.sum(a, b) {
                        if !mask[c] {
                            mask.set(c, true);
                            grew = true;
                        }
                    }
                }
            }
            if !grew {
                return Self::from_mask(rs, mask);
            }
        }
    }
}

impl Ord for SupportSet {
    /// Popcount first, then the mask read as an integer.
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.mask.len().cmp(&other.mask.len()))
            .then_with(|| self.mask.iter().by_vals().rev().cmp(other.mask.iter().by_vals().rev()))
    }
}

impl PartialOrd for SupportSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for SupportSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label)
    }
}

/// True iff `support` is symmetric and addition-closed in `rs`.
pub fn is_admissible(rs: &RootSystem, support: &SupportSet) -> bool {
    support.universe() == rs.len() && support.is_symmetric(rs) && support.is_closed(rs)
}

/// Blocks of the partition `support` induces, when it is a block support.
pub fn blocks_of(rs: &RootSystem, support: &SupportSet) -> Option<Vec<Vec<usize>>> {
    let n = rs.n();
    let mut block_of: Vec<usize> = (0..n).collect();
    for a in support.indices() {
        let r = &rs.roots()[a];
        let (lo, hi) = (block_of[r.i].min(block_of[r.j]), block_of[r.i].max(block_of[r.j]));
        for b in block_of.iter_mut() {
            if *b == hi {
                *b = lo;
            }
        }
    }
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    for i in 0..n {
        match blocks.iter_mut().find(|blk| block_of[blk[0]] == block_of[i]) {
            Some(blk) => blk.push(i),
            None => blocks.push(vec![i]),
        }
    }
    // the support is a block support iff it contains every same-block root
    let complete = blocks.iter().all(|blk| {
        blk.iter().all(|&i| {
            blk.iter()
                .all(|&j| i == j || support.contains(rs.index_of(i, j).expect("i != j")))
        })
    });
    complete.then_some(blocks)
}

fn describe(rs: &RootSystem, mask: &BitSlice<u64, Lsb0>) -> (String, SupportKind) {
    if mask.not_any() {
        return ("∅".into(), SupportKind::Empty);
    }
    if mask.all() {
        return ("Δ".into(), SupportKind::Full);
    }
    let tmp = SupportSet {
        mask: mask.to_bitvec(),
        label: String::new(),
        kind: SupportKind::Other,
    };
    if let Some(blocks) = blocks_of(rs, &tmp) {
        return describe_blocks(&blocks, mask);
    }
    let roots: Vec<String> = mask.iter_ones().map(|a| rs.roots()[a].label()).collect();
    (format!("{{{}}}", roots.join(", ")), SupportKind::Other)
}

// `blocks` sorted, each block increasing
fn describe_blocks(blocks: &[Vec<usize>], mask: &BitSlice<u64, Lsb0>) -> (String, SupportKind) {
    if mask.not_any() {
        return ("∅".into(), SupportKind::Empty);
    }
    if mask.all() {
        return ("Δ".into(), SupportKind::Full);
    }
    let big: Vec<&Vec<usize>> = blocks.iter().filter(|b| b.len() > 1).collect();
    if big.len() == 1 && big[0].len() == 2 {
        return (
            format!("±α_{}{}", big[0][0] + 1, big[0][1] + 1),
            SupportKind::Pair,
        );
    }
    let text: String = blocks
        .iter()
        .map(|b| {
            let inner: Vec<String> = b.iter().map(|i| (i + 1).to_string()).collect();
            format!("{{{}}}", inner.join(","))
        })
        .collect();
    (format!("blocks {text}"), SupportKind::BlockPartition)
}

/// Every symmetric, addition-closed subset of the roots, ordered by popcount
/// then mask. Candidates are the `2^{|Δ⁺|}` symmetric masks.
pub fn enumerate_symmetric_closed(rs: &RootSystem) -> Result<Vec<SupportSet>> {
    let positive = rs.positive_roots();
    if positive.len() > MAX_GENERIC_POSITIVE_ROOTS {
        return Err(Error::Capacity {
            what: "number of positive roots for generic support enumeration",
            value: positive.len(),
            limit: MAX_GENERIC_POSITIVE_ROOTS,
        });
    }
    let mut out = Vec::new();
    for bits in 0u32..(1u32 << positive.len()) {
        let mut mask = bitvec![u64, Lsb0; 0; rs.len()];
        for (p, &a) in positive.iter().enumerate() {
            if bits >> p & 1 == 1 {
                mask.set(a, true);
                mask.set(rs.negation(a), true);
            }
        }
        let candidate = SupportSet::from_mask(rs, mask)?;
        if candidate.is_closed(rs) {
            out.push(candidate);
        }
    }
    out.sort();
    Ok(out)
}

/// Block supports for every partition of `{1..n}` into blocks of one common
/// size `k`, for each divisor `k` of `n`, with the default size limit.
pub fn enumerate_block_partitions(n: usize) -> Result<Vec<SupportSet>> {
    enumerate_block_partitions_with_limit(n, DEFAULT_MAX_INNER_N)
}

/// Same as [`enumerate_block_partitions`] with an explicit limit on `n`.
/// Output is grouped by increasing block size; `k = 1` gives `∅` and `k = n`
/// gives `Δ`.
pub fn enumerate_block_partitions_with_limit(n: usize, max_n: usize) -> Result<Vec<SupportSet>> {
    if n < 2 {
        return Err(Error::InvalidDimension(n));
    }
    if n > max_n {
        return Err(Error::Capacity {
            what: "n for block-partition enumeration",
            value: n,
            limit: max_n,
        });
    }
    let rs = RootSystem::type_a(n)?;
    let mut out = Vec::new();
    for k in (1..=n).filter(|k| n.is_multiple_of(*k)) {
        for blocks in equal_block_partitions(n, k) {
            out.push(SupportSet::from_blocks(&rs, &blocks)?);
        }
    }
    Ok(out)
}

/// All partitions of `0..n` into blocks of size `k` (`k | n`). Each block is
/// increasing and blocks are ordered by their smallest element.
pub fn equal_block_partitions(n: usize, k: usize) -> Vec<Vec<Vec<usize>>> {
    fn extend(
        remaining: &[usize],
        k: usize,
        current: &mut Vec<Vec<usize>>,
        out: &mut Vec<Vec<Vec<usize>>>,
    ) {
        let Some((&first, rest)) = remaining.split_first() else {
            out.push(current.clone());
            return;
        };
        let mut chosen = Vec::with_capacity(k - 1);
        choose(rest, k - 1, 0, &mut chosen, &mut |picked| {
            let mut block = vec![first];
            block.extend(picked.iter().map(|&p| rest[p]));
            let left: Vec<usize> = rest
                .iter()
                .enumerate()
                .filter(|(p, _)| !picked.contains(p))
                .map(|(_, &v)| v)
                .collect();
            current.push(block);
            extend(&left, k, current, out);
            current.pop();
        });
    }

    // visits every increasing `size`-subset of positions of `pool`
    fn choose(
        pool: &[usize],
        size: usize,
        start: usize,
        chosen: &mut Vec<usize>,
        visit: &mut dyn FnMut(&[usize]),
    ) {
        if chosen.len() == size {
            visit(chosen);
            return;
        }
        for p in start..pool.len() {
            if pool.len() - p < size - chosen.len() {
                break;
            }
            chosen.push(p);
            choose(pool, size, p + 1, chosen, visit);
            chosen.pop();
        }
    }

    if k == 0 || !n.is_multiple_of(k) {
        return Vec::new();
    }
    let elements: Vec<usize> = (0..n).collect();
    let mut out = Vec::new();
    extend(&elements, k, &mut Vec::new(), &mut out);
    out
}
