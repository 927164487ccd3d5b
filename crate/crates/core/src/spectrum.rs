//! Principal minor spectra and characteristic-coefficient functionals.
//!
//! `minor_spectrum` counts every k-by-k principal minor value of a matrix
//! over the colex subset stream. `coeff_of` evaluates the coefficient of
//! `x^(n-k-|alpha|)` in the characteristic polynomial of the complementary
//! principal submatrix; the constancy reports aggregate it over all index
//! sets of a fixed size, or over the pair classes of an association
//! scheme. Subset streams are partitioned into colex ranges per worker and
//! merged in range order, so every report is identical for any worker
//! count.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::matrix::ExactMatrix;
use crate::par::par_fold_subsets;
use crate::poly::charpoly;
use crate::scalar::Scalar;
use crate::schemes::AssociationScheme;

/// Exact census of the k-by-k principal minors of one matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinorSpectrum {
    pub k: usize,
    pub counts: BTreeMap<Scalar, u64>,
}

impl MinorSpectrum {
    pub fn total(&self) -> u128 {
        self.counts.values().map(|&c| u128::from(c)).sum()
    }

    /// The distinct minor values in the deterministic scalar order.
    pub fn values(&self) -> Vec<Scalar> {
        self.counts.keys().cloned().collect()
    }
}

/// Count every k-by-k principal minor value of `a`.
pub fn minor_spectrum(a: &ExactMatrix, k: usize) -> Result<MinorSpectrum> {
    let n = a.order();
    if k == 0 || k > n {
        return Err(Error::invalid(format!(
            "minor order {k} out of range for matrix order {n}"
        )));
    }
    let counts = par_fold_subsets(
        n,
        k,
        BTreeMap::new,
        |acc: &mut BTreeMap<Scalar, u64>, subset| {
            let d = a.principal_minor(subset).expect("subset indices in range");
            *acc.entry(d).or_insert(0) += 1;
        },
        |mut left, right| {
            for (key, count) in right {
                *left.entry(key).or_insert(0) += count;
            }
            left
        },
    );
    Ok(MinorSpectrum { k, counts })
}

/// Matrix powers A^1 .. A^k shared across many coefficient evaluations.
pub struct PowerCache {
    n: usize,
    /// `powers[j]` is A^(j+1).
    powers: Vec<ExactMatrix>,
    /// `traces[j]` is tr(A^(j+1)).
    traces: Vec<Scalar>,
}

impl PowerCache {
    pub fn new(a: &ExactMatrix, k: usize) -> PowerCache {
        let mut powers = vec![a.clone()];
        for _ in 1..k.max(1) {
            let next = powers.last().unwrap().matmul(a);
            powers.push(next);
        }
        let traces = powers.iter().map(ExactMatrix::trace).collect();
        PowerCache {
            n: a.order(),
            powers,
            traces,
        }
    }

    /// tr(B^j) for B the principal submatrix avoiding `alpha`, computed by
    /// expanding the rank-|alpha| column deletion: with P the coordinate
    /// projector killing alpha, tr((AP)^j) counts exactly the closed
    /// j-walks avoiding alpha, and every word with a deletion factor
    /// collapses to a product of |alpha|-by-|alpha| blocks of the cached
    /// powers.
    fn restricted_trace(&self, alpha: &[usize], j: usize) -> Scalar {
        let mut total = self.traces[j - 1].clone();
        if alpha.is_empty() {
            return total;
        }
        let r_max = j;
        let s = alpha.len();
        // Block of A^(g+1) on the alpha indices.
        let block = |g: usize| -> Vec<Scalar> {
            let power = &self.powers[g];
            let mut out = Vec::with_capacity(s * s);
            for &u in alpha {
                for &w in alpha {
                    out.push(power.at(u, w).clone());
                }
            }
            out
        };
        for word in 1u32..(1 << r_max) {
            let positions: Vec<usize> = (0..j).filter(|&p| word >> p & 1 == 1).collect();
            let r = positions.len();
            // Cyclic gaps of A-factors between deletion factors.
            let mut gaps = Vec::with_capacity(r);
            for (idx, &p) in positions.iter().enumerate() {
                let next = if idx + 1 < r { positions[idx + 1] } else { positions[0] + j };
                gaps.push(next - p - 1);
            }
            // Product of the alpha-blocks of A^(gap+1), traced.
            let mut prod = block(gaps[0]);
            for &g in &gaps[1..] {
                let rhs = block(g);
                let mut next = vec![Scalar::zero(); s * s];
                for x in 0..s {
                    for y in 0..s {
                        let mut acc = Scalar::zero();
                        for z in 0..s {
                            let lhs = &prod[x * s + z];
                            if lhs.is_zero() {
                                continue;
                            }
                            acc = &acc + &(lhs * &rhs[z * s + y]);
                        }
                        next[x * s + y] = acc;
                    }
                }
                prod = next;
            }
            let mut tr = Scalar::zero();
            for x in 0..s {
                tr = &tr + &prod[x * s + x];
            }
            if r % 2 == 1 {
                total = &total - &tr;
            } else {
                total = &total + &tr;
            }
        }
        total
    }

    /// Characteristic coefficient of `x^(m-k)` for the submatrix avoiding
    /// `alpha` (m = n - |alpha|), via the Newton identities on the
    /// restricted power traces.
    pub fn coeff(&self, alpha: &[usize], k: usize) -> Result<Scalar> {
        if alpha.len() + k > self.n {
            return Err(Error::IndexOutOfRange(format!(
                "|alpha| + k = {} exceeds order {}",
                alpha.len() + k,
                self.n
            )));
        }
        if k == 0 {
            return Ok(Scalar::one());
        }
        debug_assert!(k <= self.powers.len());
        let mut power_sums = Vec::with_capacity(k);
        for j in 1..=k {
            power_sums.push(self.restricted_trace(alpha, j));
        }
        let mut elem = vec![Scalar::one()];
        for j in 1..=k {
            let mut acc = Scalar::zero();
            for i in 1..=j {
                let term = &elem[j - i] * &power_sums[i - 1];
                acc = if i % 2 == 1 { &acc + &term } else { &acc - &term };
            }
            elem.push(acc.div(&Scalar::from_int(j as i64)).expect("j is nonzero"));
        }
        let mut out = elem.pop().expect("k >= 1");
        if k % 2 == 1 {
            out = -out;
        }
        Ok(out)
    }
}

/// The coefficient functional: coefficient of `x^(n-k-|alpha|)` in
/// `det(xI - A[complement of alpha])`.
pub fn coeff_of(a: &ExactMatrix, alpha: &[usize], k: usize) -> Result<Scalar> {
    let n = a.order();
    let mut sorted = alpha.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != alpha.len() {
        return Err(Error::IndexOutOfRange("repeated index in alpha".into()));
    }
    if sorted.iter().any(|&i| i >= n) {
        return Err(Error::IndexOutOfRange(format!(
            "alpha exceeds matrix order {n}"
        )));
    }
    if sorted.len() + k > n {
        return Err(Error::IndexOutOfRange(format!(
            "|alpha| + k = {} exceeds order {n}",
            sorted.len() + k
        )));
    }
    if k == 0 {
        return Ok(Scalar::one());
    }
    if k <= 5 {
        return PowerCache::new(a, k).coeff(&sorted, k);
    }
    let sub = if sorted.is_empty() {
        a.clone()
    } else {
        a.submatrix_complement(&sorted)?
    };
    let m = sub.order();
    Ok(charpoly(&sub).coeff(m - k))
}

/// Outcome of a constancy scan at one level.
#[derive(Clone, Debug)]
pub enum LevelOutcome {
    Constant(Scalar),
    Mismatch {
        base: Vec<usize>,
        base_value: Scalar,
        other: Vec<usize>,
        other_value: Scalar,
    },
}

impl LevelOutcome {
    pub fn constant(&self) -> Option<&Scalar> {
        match self {
            LevelOutcome::Constant(c) => Some(c),
            LevelOutcome::Mismatch { .. } => None,
        }
    }
}

/// Per-level constancy report for the coefficient functional.
#[derive(Clone, Debug)]
pub struct ConstancyReport {
    pub k: usize,
    /// Entry `i` covers index sets of size `i`, for `i` in `0..=t`.
    pub levels: Vec<LevelOutcome>,
}

impl ConstancyReport {
    pub fn all_constant(&self) -> bool {
        self.levels.iter().all(|l| l.constant().is_some())
    }

    pub fn constants(&self) -> Option<Vec<Scalar>> {
        self.levels.iter().map(|l| l.constant().cloned()).collect()
    }

    /// The lowest level with a mismatch, if any.
    pub fn first_violation(&self) -> Option<(usize, &LevelOutcome)> {
        self.levels
            .iter()
            .enumerate()
            .find(|(_, l)| l.constant().is_none())
    }
}

/// Running constancy state for one subset stream chunk. Merging keeps the
/// colex-earliest baseline and the colex-earliest mismatch against it.
#[derive(Clone, Debug)]
struct ConstScan {
    first: Option<(Vec<usize>, Scalar)>,
    mismatch: Option<(Vec<usize>, Scalar)>,
}

impl ConstScan {
    fn new() -> Self {
        ConstScan {
            first: None,
            mismatch: None,
        }
    }

    fn feed(&mut self, subset: &[usize], value: Scalar) {
        match &self.first {
            None => self.first = Some((subset.to_vec(), value)),
            Some((_, base)) => {
                if self.mismatch.is_none() && *base != value {
                    self.mismatch = Some((subset.to_vec(), value));
                }
            }
        }
    }

    fn merge(mut self, right: ConstScan) -> ConstScan {
        match (&self.first, right.first) {
            (None, first) => ConstScan {
                first,
                mismatch: right.mismatch,
            },
            (Some((_, base)), Some((subset, value))) => {
                if self.mismatch.is_none() {
                    if *base != value {
                        self.mismatch = Some((subset, value));
                    } else {
                        self.mismatch = right.mismatch;
                    }
                }
                self
            }
            (Some(_), None) => self,
        }
    }

    fn outcome(self) -> LevelOutcome {
        let (base, base_value) = self.first.expect("level stream was empty");
        match self.mismatch {
            None => LevelOutcome::Constant(base_value),
            Some((other, other_value)) => LevelOutcome::Mismatch {
                base,
                base_value,
                other,
                other_value,
            },
        }
    }
}

/// Scan the coefficient functional over all index sets of sizes `0..=t`.
pub fn coeff_constancy(a: &ExactMatrix, k: usize, t: usize) -> Result<ConstancyReport> {
    let n = a.order();
    if t + k > n {
        return Err(Error::invalid(format!(
            "t + k = {} exceeds matrix order {n}",
            t + k
        )));
    }
    let cache = PowerCache::new(a, k);
    let mut levels = Vec::with_capacity(t + 1);
    levels.push(LevelOutcome::Constant(cache.coeff(&[], k)?));
    for i in 1..=t {
        let scan = par_fold_subsets(
            n,
            i,
            ConstScan::new,
            |acc: &mut ConstScan, subset| {
                let value = cache.coeff(subset, k).expect("subset indices in range");
                acc.feed(subset, value);
            },
            ConstScan::merge,
        );
        levels.push(scan.outcome());
    }
    Ok(ConstancyReport { k, levels })
}

/// Per-class constancy report used by the scheme-aware predictor.
#[derive(Clone, Debug)]
pub struct ClassConstancyReport {
    pub k: usize,
    pub level0: LevelOutcome,
    pub level1: LevelOutcome,
    /// Entry `j-1` covers the pairs of scheme class `j`.
    pub per_class: Vec<LevelOutcome>,
}

impl ClassConstancyReport {
    pub fn all_constant(&self) -> bool {
        self.level0.constant().is_some()
            && self.level1.constant().is_some()
            && self.per_class.iter().all(|l| l.constant().is_some())
    }

    /// `(c0, c1, [c2(1), .., c2(d)])` when every scan was constant.
    pub fn constants(&self) -> Option<(Scalar, Scalar, Vec<Scalar>)> {
        let c0 = self.level0.constant()?.clone();
        let c1 = self.level1.constant()?.clone();
        let c2: Option<Vec<Scalar>> = self
            .per_class
            .iter()
            .map(|l| l.constant().cloned())
            .collect();
        Some((c0, c1, c2?))
    }
}

/// Scan the coefficient functional at levels 0 and 1 and over each pair
/// class of `scheme`.
pub fn coeff_by_class(
    a: &ExactMatrix,
    k: usize,
    scheme: &AssociationScheme,
) -> Result<ClassConstancyReport> {
    let n = a.order();
    if scheme.points() != n {
        return Err(Error::SchemeMismatch(format!(
            "scheme on {} points, matrix of order {n}",
            scheme.points()
        )));
    }
    if k + 2 > n {
        return Err(Error::invalid(format!(
            "k + 2 = {} exceeds matrix order {n}",
            k + 2
        )));
    }
    let cache = PowerCache::new(a, k);
    let level0 = LevelOutcome::Constant(cache.coeff(&[], k)?);
    let level1 = par_fold_subsets(
        n,
        1,
        ConstScan::new,
        |acc: &mut ConstScan, subset| {
            let value = cache.coeff(subset, k).expect("subset indices in range");
            acc.feed(subset, value);
        },
        ConstScan::merge,
    )
    .outcome();
    let d = scheme.classes();
    let scans = par_fold_subsets(
        n,
        2,
        || vec![ConstScan::new(); d],
        |acc: &mut Vec<ConstScan>, subset| {
            let class = scheme.classify_pair(subset[0], subset[1]);
            let value = cache.coeff(subset, k).expect("subset indices in range");
            acc[class - 1].feed(subset, value);
        },
        |left, right| {
            left.into_iter()
                .zip(right)
                .map(|(l, r)| l.merge(r))
                .collect()
        },
    );
    Ok(ClassConstancyReport {
        k,
        level0,
        level1,
        per_class: scans.into_iter().map(ConstScan::outcome).collect(),
    })
}

/// Brute-force sum of `det(A[beta])` over the k-subsets of the complement
/// of `alpha`, signed by `(-1)^k`. This is the independent route against
/// which `coeff_of` is pinned; the two must agree everywhere.
pub fn signed_minor_sum(a: &ExactMatrix, alpha: &[usize], k: usize) -> Result<Scalar> {
    let n = a.order();
    let free: Vec<usize> = (0..n).filter(|i| !alpha.contains(i)).collect();
    if k > free.len() {
        return Err(Error::invalid("k exceeds complement size"));
    }
    let acc = par_fold_subsets(
        free.len(),
        k,
        Scalar::zero,
        |acc: &mut Scalar, subset| {
            let mapped: Vec<usize> = subset.iter().map(|&i| free[i]).collect();
            let d = a.principal_minor(&mapped).expect("indices in range");
            *acc = &*acc + &d;
        },
        |left, right| &left + &right,
    );
    if k % 2 == 1 {
        Ok(-acc)
    } else {
        Ok(acc)
    }
}

/// Spectrum restricted to subsets disjoint from `beta`: the counts
/// `mu(beta, k, d)` for every minor value `d`.
pub fn disjoint_spectrum(a: &ExactMatrix, beta: &[usize], k: usize) -> Result<MinorSpectrum> {
    let n = a.order();
    let free: Vec<usize> = (0..n).filter(|i| !beta.contains(i)).collect();
    if k == 0 || k > free.len() {
        return Err(Error::invalid("k out of range for complement"));
    }
    let counts = par_fold_subsets(
        free.len(),
        k,
        BTreeMap::new,
        |acc: &mut BTreeMap<Scalar, u64>, subset| {
            let mapped: Vec<usize> = subset.iter().map(|&i| free[i]).collect();
            let d = a.principal_minor(&mapped).expect("indices in range");
            *acc.entry(d).or_insert(0) += 1;
        },
        |mut left, right| {
            for (key, count) in right {
                *left.entry(key).or_insert(0) += count;
            }
            left
        },
    );
    Ok(MinorSpectrum { k, counts })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::par::with_workers;
    use crate::subsets::binomial;

    /// Adjacency matrix of the 4-cycle; a small walk-regular graph.
    fn c4() -> ExactMatrix {
        ExactMatrix::from_int_fn(4, |i, j| i64::from((i + 1) % 4 == j || (j + 1) % 4 == i))
    }

    #[test]
    fn spectrum_totals_and_keys() {
        let s = minor_spectrum(&c4(), 3).unwrap();
        assert_eq!(s.total(), binomial(4, 3));
        // C4 is triangle-free: every 3x3 principal minor vanishes.
        assert_eq!(s.values(), vec![Scalar::zero()]);
        let s2 = minor_spectrum(&c4(), 2).unwrap();
        assert_eq!(
            s2.counts.get(&Scalar::from_int(-1)).copied(),
            Some(4),
            "one -1 minor per edge"
        );
    }

    #[test]
    fn degenerate_full_order_spectrum() {
        let m = ExactMatrix::identity(4);
        let s = minor_spectrum(&m, 4).unwrap();
        assert_eq!(s.total(), 1);
        assert_eq!(s.values(), vec![Scalar::one()]);
        assert!(minor_spectrum(&m, 5).is_err());
        assert!(minor_spectrum(&m, 0).is_err());
    }

    #[test]
    fn coeff_of_monic_leading() {
        let m = c4();
        assert_eq!(coeff_of(&m, &[], 0).unwrap(), Scalar::one());
        assert!(coeff_of(&m, &[0, 0], 1).is_err());
        assert!(coeff_of(&m, &[9], 1).is_err());
        assert!(coeff_of(&m, &[0, 1], 3).is_err());
    }

    #[test]
    fn coeff_of_matches_minor_sum() {
        let m = c4();
        for k in 0..=3 {
            for alpha in [vec![], vec![1], vec![0, 2]] {
                if alpha.len() + k > 4 {
                    continue;
                }
                if k == 0 {
                    assert_eq!(coeff_of(&m, &alpha, 0).unwrap(), Scalar::one());
                    continue;
                }
                assert_eq!(
                    coeff_of(&m, &alpha, k).unwrap(),
                    signed_minor_sum(&m, &alpha, k).unwrap(),
                    "alpha={alpha:?} k={k}"
                );
            }
        }
    }

    #[test]
    fn constancy_on_walk_regular_graph() {
        // C4 is vertex-transitive, hence walk-regular: level 1 constant.
        let report = coeff_constancy(&c4(), 2, 1).unwrap();
        assert!(report.all_constant());
        // An asymmetric graph fails: the path P4 has non-constant level 1.
        let path = ExactMatrix::from_int_fn(4, |i, j| i64::from(i.abs_diff(j) == 1));
        let report = coeff_constancy(&path, 2, 1).unwrap();
        assert!(!report.all_constant());
        let (level, _) = report.first_violation().unwrap();
        assert_eq!(level, 1);
    }

    #[test]
    fn spectrum_is_worker_count_independent() {
        let m = c4();
        let baseline = with_workers(1, || minor_spectrum(&m, 2).unwrap());
        for w in [2, 5] {
            assert_eq!(with_workers(w, || minor_spectrum(&m, 2).unwrap()), baseline);
        }
    }

    #[test]
    fn restricted_traces_match_submatrix_charpoly() {
        // The rank-update trace route must give the same coefficients as
        // the Faddeev-LeVerrier recursion on the actual submatrix.
        let mut state = 4242u64;
        let mut next = move || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1);
            ((state >> 33) % 5) as i64 - 2
        };
        let n = 9;
        let m = ExactMatrix::from_int_fn(n, |_, _| next());
        let cache = PowerCache::new(&m, 5);
        for alpha in [vec![], vec![3], vec![0, 7], vec![1, 4]] {
            let sub = if alpha.is_empty() {
                m.clone()
            } else {
                m.submatrix_complement(&alpha).unwrap()
            };
            let p = charpoly(&sub);
            for k in 1..=5usize.min(n - alpha.len()) {
                assert_eq!(
                    cache.coeff(&alpha, k).unwrap(),
                    p.coeff(sub.order() - k),
                    "alpha={alpha:?} k={k}"
                );
            }
        }
    }

    #[test]
    fn disjoint_spectrum_totals() {
        let m = c4();
        let s = disjoint_spectrum(&m, &[0], 2).unwrap();
        assert_eq!(s.total(), binomial(3, 2));
    }
}
