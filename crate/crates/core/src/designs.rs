//! Block sets extracted from principal minors and exhaustive design
//! verification by subset counting.
//!
//! Verification is counting, never algebra: a t-design report means every
//! level-i subset count for i = 1..t was computed and found constant. The
//! closed-form predictions live in `predictor` and are reconciled against
//! these reports, not the other way round.
//!
//! Counting uses one pass over the blocks, incrementing a dense counter
//! indexed by the colex rank of each contained subset. Witnesses are
//! colex-minimal: the reported subset is the first, in colex order, whose
//! count differs from the count of the very first subset.

use std::collections::{BTreeMap, HashSet};

use crate::error::{Error, Result};
use crate::matrix::ExactMatrix;
use crate::par::par_fold_subsets;
use crate::scalar::Scalar;
use crate::schemes::AssociationScheme;
use crate::subsets::{binomial, colex_rank, colex_unrank, for_each_colex};

/// A hypergraph on `[v]`, stored flat. Blocks keep the colex order of the
/// extraction that produced them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockSet {
    v: usize,
    sizes: BlockSizes,
    flat: Vec<u16>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum BlockSizes {
    Uniform(usize),
    /// Offsets into `flat`, one past each block; length = block count.
    Mixed(Vec<u32>),
}

impl BlockSet {
    pub fn empty_uniform(v: usize, k: usize) -> Self {
        BlockSet {
            v,
            sizes: BlockSizes::Uniform(k),
            flat: Vec::new(),
        }
    }

    /// Build from explicit blocks; each must be strictly increasing and
    /// within range.
    pub fn from_blocks(v: usize, k_hint: Option<usize>, blocks: &[Vec<usize>]) -> Result<Self> {
        if v > u16::MAX as usize {
            return Err(Error::invalid("point count exceeds supported range"));
        }
        let mut flat = Vec::new();
        let mut offsets = Vec::with_capacity(blocks.len());
        let mut uniform: Option<usize> = k_hint;
        let mut mixed = false;
        for block in blocks {
            if block.is_empty() {
                return Err(Error::invalid("empty block"));
            }
            for w in block.windows(2) {
                if w[0] >= w[1] {
                    return Err(Error::invalid("block indices must be strictly increasing"));
                }
            }
            if *block.last().unwrap() >= v {
                return Err(Error::IndexOutOfRange(format!(
                    "block point {} exceeds v={v}",
                    block.last().unwrap() + 1
                )));
            }
            match uniform {
                None => uniform = Some(block.len()),
                Some(k) if k != block.len() => mixed = true,
                _ => {}
            }
            flat.extend(block.iter().map(|&p| p as u16));
            offsets.push(flat.len() as u32);
        }
        let sizes = if mixed {
            BlockSizes::Mixed(offsets)
        } else {
            BlockSizes::Uniform(uniform.ok_or_else(|| Error::invalid("no blocks and no size hint"))?)
        };
        Ok(BlockSet { v, sizes, flat })
    }

    pub fn v(&self) -> usize {
        self.v
    }

    pub fn len(&self) -> usize {
        match &self.sizes {
            BlockSizes::Uniform(k) => {
                if *k == 0 {
                    0
                } else {
                    self.flat.len() / k
                }
            }
            BlockSizes::Mixed(offsets) => offsets.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.flat.is_empty()
    }

    /// Block size when uniform (defined even for an empty set).
    pub fn uniform_k(&self) -> Option<usize> {
        match &self.sizes {
            BlockSizes::Uniform(k) => Some(*k),
            BlockSizes::Mixed(_) => None,
        }
    }

    pub fn block(&self, i: usize) -> &[u16] {
        match &self.sizes {
            BlockSizes::Uniform(k) => &self.flat[i * k..(i + 1) * k],
            BlockSizes::Mixed(offsets) => {
                let start = if i == 0 { 0 } else { offsets[i - 1] as usize };
                &self.flat[start..offsets[i] as usize]
            }
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = &[u16]> + '_ {
        (0..self.len()).map(move |i| self.block(i))
    }

    /// Distinct block sizes present, ascending.
    pub fn sizes_present(&self) -> Vec<usize> {
        match &self.sizes {
            BlockSizes::Uniform(k) => {
                if self.is_empty() && *k == 0 {
                    vec![]
                } else {
                    vec![*k]
                }
            }
            BlockSizes::Mixed(_) => {
                let mut sizes: Vec<usize> = self.iter().map(<[u16]>::len).collect();
                sizes.sort_unstable();
                sizes.dedup();
                sizes
            }
        }
    }

    /// Concatenate block sets on a common point set, in argument order.
    pub fn union(sets: &[&BlockSet]) -> Result<BlockSet> {
        let Some(first) = sets.first() else {
            return Err(Error::invalid("empty union"));
        };
        let v = first.v;
        if sets.iter().any(|s| s.v != v) {
            return Err(Error::invalid("union over different point counts"));
        }
        let mut flat = Vec::new();
        let mut offsets = Vec::new();
        for set in sets {
            for block in set.iter() {
                flat.extend_from_slice(block);
                offsets.push(flat.len() as u32);
            }
        }
        Ok(BlockSet {
            v,
            sizes: BlockSizes::Mixed(offsets),
            flat,
        })
    }
}

/// All k-subsets whose principal minor equals `value`, in colex order.
pub fn extract_blocks(a: &ExactMatrix, k: usize, value: &Scalar) -> Result<BlockSet> {
    let n = a.order();
    if k == 0 || k > n {
        return Err(Error::invalid(format!("block size {k} out of range")));
    }
    if n > u16::MAX as usize {
        return Err(Error::invalid("matrix order exceeds supported range"));
    }
    let flat = par_fold_subsets(
        n,
        k,
        Vec::new,
        |acc: &mut Vec<u16>, subset| {
            let d = a.principal_minor(subset).expect("indices in range");
            if d == *value {
                acc.extend(subset.iter().map(|&p| p as u16));
            }
        },
        |mut left, right| {
            left.extend(right);
            left
        },
    );
    Ok(BlockSet {
        v: n,
        sizes: BlockSizes::Uniform(k),
        flat,
    })
}

/// One pass that splits every k-subset by its minor value. Returns the
/// block sets keyed by value in the deterministic scalar order.
pub fn blocks_by_minor(a: &ExactMatrix, k: usize) -> Result<Vec<(Scalar, BlockSet)>> {
    let n = a.order();
    if k == 0 || k > n {
        return Err(Error::invalid(format!("block size {k} out of range")));
    }
    if n > u16::MAX as usize {
        return Err(Error::invalid("matrix order exceeds supported range"));
    }
    let map = par_fold_subsets(
        n,
        k,
        BTreeMap::new,
        |acc: &mut BTreeMap<Scalar, Vec<u16>>, subset| {
            let d = a.principal_minor(subset).expect("indices in range");
            acc.entry(d)
                .or_default()
                .extend(subset.iter().map(|&p| p as u16));
        },
        |mut left, right| {
            for (key, flat) in right {
                left.entry(key).or_default().extend(flat);
            }
            left
        },
    );
    Ok(map
        .into_iter()
        .map(|(value, flat)| {
            (
                value,
                BlockSet {
                    v: n,
                    sizes: BlockSizes::Uniform(k),
                    flat,
                },
            )
        })
        .collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DesignKind {
    TDesign,
    Pbibd,
    RegularPbd,
    NotADesign,
}

impl DesignKind {
    pub fn tag(self) -> &'static str {
        match self {
            DesignKind::TDesign => "t_design",
            DesignKind::Pbibd => "pbibd",
            DesignKind::RegularPbd => "regular_pbd",
            DesignKind::NotADesign => "not_a_design",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Degeneracy {
    /// No blocks at all; verifies vacuously with every lambda zero.
    Empty,
    /// The block set is all of C([v], k).
    Trivial,
}

impl Degeneracy {
    pub fn tag(self) -> &'static str {
        match self {
            Degeneracy::Empty => "empty",
            Degeneracy::Trivial => "trivial",
        }
    }
}

/// Counterexample subset pair: the colex-first subset at the failing level
/// and the colex-first subset whose count disagrees with it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub level: usize,
    pub class: Option<String>,
    pub base: Vec<usize>,
    pub base_count: u64,
    pub other: Vec<usize>,
    pub other_count: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DesignReport {
    pub kind: DesignKind,
    pub v: usize,
    /// Distinct block sizes; a single entry for uniform designs.
    pub block_sizes: Vec<usize>,
    pub t: Option<usize>,
    pub lambda: Option<u64>,
    /// Per-class pair counts `(label, lambda_j)` for scheme verifications.
    pub lambda_classes: Option<Vec<(String, u64)>>,
    pub replication: Option<u64>,
    pub block_count: u64,
    pub degenerate: Option<Degeneracy>,
    pub witness: Option<Witness>,
}

impl DesignReport {
    pub fn is_design(&self) -> bool {
        self.kind != DesignKind::NotADesign
    }
}

/// Dense per-subset counters for level `i` over `[v]`.
fn level_counts(bs: &BlockSet, i: usize) -> Result<Vec<u64>> {
    let slots = binomial(bs.v, i);
    if slots > 1 << 24 {
        return Err(Error::invalid(format!(
            "level {i} counting at v={} is out of supported range",
            bs.v
        )));
    }
    let mut counts = vec![0u64; slots as usize];
    let mut scratch = vec![0usize; i];
    for block in bs.iter() {
        let k = block.len();
        if i > k {
            continue;
        }
        // Enumerate i-subsets of the block by index combination.
        let mut pick: Vec<usize> = (0..i).collect();
        loop {
            for (slot, &p) in scratch.iter_mut().zip(pick.iter()) {
                *slot = block[p] as usize;
            }
            counts[colex_rank(&scratch) as usize] += 1;
            // lexicographic successor of pick within 0..k
            let mut pos = i;
            loop {
                if pos == 0 {
                    pick.clear();
                    break;
                }
                pos -= 1;
                if pick[pos] < k - (i - pos) {
                    pick[pos] += 1;
                    for later in pos + 1..i {
                        pick[later] = pick[later - 1] + 1;
                    }
                    break;
                }
            }
            if pick.is_empty() {
                break;
            }
        }
    }
    Ok(counts)
}

/// Scan a counter array for constancy; returns the constant or a
/// colex-minimal witness pair.
fn constancy(counts: &[u64], i: usize, v: usize, level: usize) -> std::result::Result<u64, Witness> {
    let base = counts[0];
    match counts.iter().position(|&c| c != base) {
        None => Ok(base),
        Some(idx) => Err(Witness {
            level,
            class: None,
            base: colex_unrank(i, 0, v),
            base_count: base,
            other: colex_unrank(i, idx as u128, v),
            other_count: counts[idx],
        }),
    }
}

/// Exhaustive t-design verification, level by level from 1 up to t.
pub fn verify_t_design(bs: &BlockSet, t: usize) -> Result<DesignReport> {
    let Some(k) = bs.uniform_k() else {
        return Err(Error::invalid("t-design verification needs a uniform block set"));
    };
    if t == 0 || t > k {
        return Err(Error::invalid(format!("need 1 <= t <= k, got t={t}, k={k}")));
    }
    let v = bs.v();
    let block_count = bs.len() as u64;
    let mut report = DesignReport {
        kind: DesignKind::TDesign,
        v,
        block_sizes: vec![k],
        t: Some(t),
        lambda: None,
        lambda_classes: None,
        replication: None,
        block_count,
        degenerate: None,
        witness: None,
    };
    if block_count == 0 {
        report.lambda = Some(0);
        report.replication = Some(0);
        report.degenerate = Some(Degeneracy::Empty);
        return Ok(report);
    }
    if u128::from(block_count) == binomial(v, k) {
        report.degenerate = Some(Degeneracy::Trivial);
    }
    for i in 1..=t {
        let counts = level_counts(bs, i)?;
        match constancy(&counts, i, v, i) {
            Ok(value) => {
                if i == 1 {
                    report.replication = Some(value);
                }
                if i == t {
                    report.lambda = Some(value);
                }
            }
            Err(witness) => {
                report.kind = DesignKind::NotADesign;
                report.witness = Some(witness);
                report.lambda = None;
                report.degenerate = None;
                return Ok(report);
            }
        }
    }
    Ok(report)
}

/// Partially balanced verification against an association scheme:
/// constant replication plus constant per-class pair counts.
pub fn verify_pbibd(bs: &BlockSet, scheme: &AssociationScheme) -> Result<DesignReport> {
    let Some(k) = bs.uniform_k() else {
        return Err(Error::invalid("pbibd verification needs a uniform block set"));
    };
    let v = bs.v();
    if scheme.points() != v {
        return Err(Error::SchemeMismatch(format!(
            "scheme on {} points, blocks on {v}",
            scheme.points()
        )));
    }
    let block_count = bs.len() as u64;
    let mut report = DesignReport {
        kind: DesignKind::Pbibd,
        v,
        block_sizes: vec![k],
        t: None,
        lambda: None,
        lambda_classes: None,
        replication: None,
        block_count,
        degenerate: None,
        witness: None,
    };
    let labels = scheme.labels().to_vec();
    if block_count == 0 {
        report.replication = Some(0);
        report.lambda_classes = Some(labels.into_iter().map(|l| (l, 0)).collect());
        report.degenerate = Some(Degeneracy::Empty);
        return Ok(report);
    }
    if u128::from(block_count) == binomial(v, k) {
        report.degenerate = Some(Degeneracy::Trivial);
    }
    let point_counts = level_counts(bs, 1)?;
    match constancy(&point_counts, 1, v, 1) {
        Ok(r) => report.replication = Some(r),
        Err(witness) => {
            report.kind = DesignKind::NotADesign;
            report.witness = Some(witness);
            report.degenerate = None;
            return Ok(report);
        }
    }
    let pair_counts = level_counts(bs, 2)?;
    // Per-class constancy over pairs in colex order.
    let d = scheme.classes();
    let mut class_state: Vec<Option<(Vec<usize>, u64)>> = vec![None; d];
    let mut lambdas = vec![0u64; d];
    for (rank, &count) in pair_counts.iter().enumerate() {
        let pair = colex_unrank(2, rank as u128, v);
        let class = scheme.classify_pair(pair[0], pair[1]);
        match &class_state[class - 1] {
            None => {
                class_state[class - 1] = Some((pair, count));
                lambdas[class - 1] = count;
            }
            Some((base, base_count)) => {
                if *base_count != count {
                    report.kind = DesignKind::NotADesign;
                    report.witness = Some(Witness {
                        level: 2,
                        class: Some(labels[class - 1].clone()),
                        base: base.clone(),
                        base_count: *base_count,
                        other: pair,
                        other_count: count,
                    });
                    report.degenerate = None;
                    return Ok(report);
                }
            }
        }
    }
    report.lambda_classes = Some(labels.into_iter().zip(lambdas.iter().copied()).collect());
    // Equal pair counts across every class make the block set a 2-design.
    if lambdas.windows(2).all(|w| w[0] == w[1]) && !lambdas.is_empty() {
        report.kind = DesignKind::TDesign;
        report.t = Some(2);
        report.lambda = Some(lambdas[0]);
    }
    Ok(report)
}

/// Regular pairwise balanced design verification over a union of block
/// sets: constant replication and constant pair coverage.
pub fn verify_regular_pbd(sets: &[&BlockSet]) -> Result<DesignReport> {
    let union = BlockSet::union(sets)?;
    let v = union.v();
    let block_count = union.len() as u64;
    let mut report = DesignReport {
        kind: DesignKind::RegularPbd,
        v,
        block_sizes: union.sizes_present(),
        t: None,
        lambda: None,
        lambda_classes: None,
        replication: None,
        block_count,
        degenerate: None,
        witness: None,
    };
    if block_count == 0 {
        report.lambda = Some(0);
        report.replication = Some(0);
        report.degenerate = Some(Degeneracy::Empty);
        return Ok(report);
    }
    if let [k] = report.block_sizes.as_slice() {
        if u128::from(block_count) == binomial(v, *k) {
            report.degenerate = Some(Degeneracy::Trivial);
        }
    }
    let point_counts = level_counts(&union, 1)?;
    match constancy(&point_counts, 1, v, 1) {
        Ok(r) => report.replication = Some(r),
        Err(witness) => {
            report.kind = DesignKind::NotADesign;
            report.witness = Some(witness);
            return Ok(report);
        }
    }
    let pair_counts = level_counts(&union, 2)?;
    match constancy(&pair_counts, 2, v, 2) {
        Ok(lambda) => report.lambda = Some(lambda),
        Err(witness) => {
            report.kind = DesignKind::NotADesign;
            report.witness = Some(witness);
        }
    }
    Ok(report)
}

/// The 0-or-2 property: every 5-subset of the point set contains either 0
/// or 2 of the blocks. Returns the colex-first violating 5-subset.
pub fn five_subset_property(bs: &BlockSet) -> Result<Option<Witness>> {
    if bs.uniform_k() != Some(4) {
        return Err(Error::invalid("the five-subset property needs block size 4"));
    }
    let v = bs.v();
    if v < 5 {
        return Err(Error::invalid("need at least 5 points"));
    }
    let members: HashSet<u128> = bs
        .iter()
        .map(|block| {
            let points: Vec<usize> = block.iter().map(|&p| p as usize).collect();
            colex_rank(&points)
        })
        .collect();
    let mut violation: Option<Witness> = None;
    let mut quad = [0usize; 4];
    for_each_colex(v, 5, |five| {
        if violation.is_some() {
            return;
        }
        let mut inside = 0u64;
        for drop in 0..5 {
            let mut w = 0;
            for (idx, &p) in five.iter().enumerate() {
                if idx != drop {
                    quad[w] = p;
                    w += 1;
                }
            }
            if members.contains(&colex_rank(&quad)) {
                inside += 1;
            }
        }
        if inside != 0 && inside != 2 {
            violation = Some(Witness {
                level: 5,
                class: None,
                base: five.to_vec(),
                base_count: inside,
                other: five.to_vec(),
                other_count: inside,
            });
        }
    });
    Ok(violation)
}

/// Double-count identity `b * C(k, t) = lambda * C(v, t)` for a verified
/// uniform t-design report.
pub fn double_count_holds(report: &DesignReport) -> bool {
    let (Some(t), Some(lambda), [k]) = (report.t, report.lambda, report.block_sizes.as_slice())
    else {
        return false;
    };
    u128::from(report.block_count) * binomial(*k, t)
        == u128::from(lambda) * binomial(report.v, t)
}

/// Inclusion-exclusion identity between containment and avoidance counts:
/// for every subset `beta` with `|beta| <= t`,
/// `lambda(beta) = sum over gamma subset of beta of (-1)^|gamma| mu(gamma)`.
pub fn inclusion_exclusion_holds(bs: &BlockSet, t: usize) -> bool {
    let v = bs.v();
    for i in 0..=t {
        let mut ok = true;
        for_each_colex(v, i, |beta| {
            if !ok {
                return;
            }
            let lambda = bs
                .iter()
                .filter(|block| beta.iter().all(|p| block.contains(&(*p as u16))))
                .count() as i128;
            let mut rhs = 0i128;
            for mask in 0..(1u32 << i) {
                let gamma: Vec<usize> = (0..i).filter(|&b| mask >> b & 1 == 1).map(|b| beta[b]).collect();
                let mu = bs
                    .iter()
                    .filter(|block| gamma.iter().all(|p| !block.contains(&(*p as u16))))
                    .count() as i128;
                if gamma.len() % 2 == 0 {
                    rhs += mu;
                } else {
                    rhs -= mu;
                }
            }
            ok = lambda == rhs;
        });
        if !ok {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn full_blocks(v: usize, k: usize) -> BlockSet {
        let mut blocks = Vec::new();
        for_each_colex(v, k, |s| blocks.push(s.to_vec()));
        BlockSet::from_blocks(v, Some(k), &blocks).unwrap()
    }

    #[test]
    fn trivial_design_has_full_lambda() {
        let bs = full_blocks(6, 3);
        for t in 1..=3 {
            let report = verify_t_design(&bs, t).unwrap();
            assert_eq!(report.kind, DesignKind::TDesign);
            assert_eq!(report.degenerate, Some(Degeneracy::Trivial));
            assert_eq!(
                u128::from(report.lambda.unwrap()),
                binomial(6 - t, 3 - t),
                "t={t}"
            );
            assert!(double_count_holds(&report));
        }
    }

    #[test]
    fn empty_set_is_degenerate_zero_design() {
        let bs = BlockSet::empty_uniform(6, 4);
        let report = verify_t_design(&bs, 3).unwrap();
        assert_eq!(report.kind, DesignKind::TDesign);
        assert_eq!(report.lambda, Some(0));
        assert_eq!(report.degenerate, Some(Degeneracy::Empty));
    }

    #[test]
    fn near_design_yields_colex_minimal_witness() {
        // Full C(5,2) minus one block is not a 1-design.
        let mut blocks = Vec::new();
        for_each_colex(5, 2, |s| blocks.push(s.to_vec()));
        blocks.pop();
        let bs = BlockSet::from_blocks(5, Some(2), &blocks).unwrap();
        let report = verify_t_design(&bs, 1).unwrap();
        assert_eq!(report.kind, DesignKind::NotADesign);
        let w = report.witness.unwrap();
        assert_eq!(w.level, 1);
        assert_eq!(w.base, vec![0]);
    }

    #[test]
    fn extraction_matches_minor_values() {
        // 4-cycle adjacency: exactly the 4 edges have 2x2 minor -1.
        let c4 = ExactMatrix::from_int_fn(4, |i, j| {
            i64::from((i + 1) % 4 == j || (j + 1) % 4 == i)
        });
        let edges = extract_blocks(&c4, 2, &Scalar::from_int(-1)).unwrap();
        assert_eq!(edges.len(), 4);
        let split = blocks_by_minor(&c4, 2).unwrap();
        let total: usize = split.iter().map(|(_, b)| b.len()).sum();
        assert_eq!(total as u128, binomial(4, 2));
        let missing = extract_blocks(&c4, 2, &Scalar::from_int(7)).unwrap();
        assert!(missing.is_empty());
    }

    #[test]
    fn five_subset_property_rejects_full_set() {
        let full = full_blocks(8, 4);
        let witness = five_subset_property(&full).unwrap().unwrap();
        assert_eq!(witness.base, vec![0, 1, 2, 3, 4]);
        assert_eq!(witness.base_count, 5);
        let not4 = full_blocks(8, 3);
        assert!(five_subset_property(&not4).is_err());
    }

    #[test]
    fn union_keeps_order_and_sizes() {
        let a = full_blocks(5, 2);
        let b = full_blocks(5, 3);
        let u = BlockSet::union(&[&a, &b]).unwrap();
        assert_eq!(u.len(), a.len() + b.len());
        assert_eq!(u.sizes_present(), vec![2, 3]);
        assert_eq!(u.block(0), a.block(0));
        // Full 2-subsets and full 3-subsets form a regular PBD.
        let report = verify_regular_pbd(&[&a, &b]).unwrap();
        assert_eq!(report.kind, DesignKind::RegularPbd);
        assert_eq!(report.lambda, Some(1 + 3));
        assert!(report.replication.is_some());
    }

    #[test]
    fn inclusion_exclusion_on_small_sets() {
        assert!(inclusion_exclusion_holds(&full_blocks(6, 3), 3));
        let mut blocks = Vec::new();
        for_each_colex(5, 2, |s| blocks.push(s.to_vec()));
        blocks.pop();
        let ragged = BlockSet::from_blocks(5, Some(2), &blocks).unwrap();
        // The identity holds for arbitrary block families.
        assert!(inclusion_exclusion_holds(&ragged, 2));
    }
}
