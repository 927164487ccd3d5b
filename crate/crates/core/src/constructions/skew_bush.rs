//! Backtracking search for skew-Bush type Hadamard matrices of order n^2:
//! block form H = (H_ij) with H_ii = J, zero row and column sums in every
//! off-diagonal block, H_ji = -H_ij^T, and H*H^T = n^2 I.
//!
//! The free unknowns are the blocks above the diagonal, each drawn from
//! the +-1 matrices with zero line sums. Orthogonality conditions are
//! checked as soon as every block they mention is placed. The search is
//! deterministic: candidates are tried in a fixed order, so the first
//! solution found is reproducible.

use crate::error::{Error, Result};
use crate::matrix::ExactMatrix;
use crate::scalar::Scalar;

type Block = Vec<i64>; // row-major n x n

fn mat_get(b: &Block, n: usize, i: usize, j: usize) -> i64 {
    b[i * n + j]
}

/// a * b^T for n x n sign blocks.
fn mul_bt(a: &Block, b: &Block, n: usize) -> Block {
    let mut out = vec![0i64; n * n];
    for i in 0..n {
        for j in 0..n {
            let mut acc = 0;
            for k in 0..n {
                acc += mat_get(a, n, i, k) * mat_get(b, n, j, k);
            }
            out[i * n + j] = acc;
        }
    }
    out
}

fn neg_transpose(b: &Block, n: usize) -> Block {
    let mut out = vec![0i64; n * n];
    for i in 0..n {
        for j in 0..n {
            out[i * n + j] = -mat_get(b, n, j, i);
        }
    }
    out
}

/// All +-1 blocks with zero row and column sums, in mask order.
fn zero_sum_blocks(n: usize) -> Vec<Block> {
    let cells = n * n;
    let mut out = Vec::new();
    'mask: for mask in 0u32..(1 << cells) {
        if mask.count_ones() as usize != cells / 2 {
            continue;
        }
        for i in 0..n {
            let row_ones = (0..n).filter(|&j| mask >> (i * n + j) & 1 == 1).count();
            if row_ones != n / 2 {
                continue 'mask;
            }
            let col_ones = (0..n).filter(|&j| mask >> (j * n + i) & 1 == 1).count();
            if col_ones != n / 2 {
                continue 'mask;
            }
        }
        out.push(
            (0..cells)
                .map(|c| if mask >> c & 1 == 1 { 1 } else { -1 })
                .collect(),
        );
    }
    out
}

struct Search {
    n: usize,
    pairs: Vec<(usize, usize)>,
    candidates: Vec<Block>,
    assignment: Vec<usize>,
    /// Constraints keyed by the last pair slot they need.
    checks_at: Vec<Vec<Constraint>>,
    nodes: u64,
    budget: u64,
}

#[derive(Clone, Copy)]
enum Constraint {
    Diag(usize),
    Off(usize, usize),
}

impl Search {
    fn slot(&self, i: usize, j: usize) -> usize {
        let (i, j) = (i.min(j), i.max(j));
        self.pairs.iter().position(|&p| p == (i, j)).expect("pair slot")
    }

    fn block(&self, i: usize, k: usize, depth: usize) -> Option<Block> {
        if i == k {
            return Some(vec![1; self.n * self.n]);
        }
        let slot = self.slot(i, k);
        if slot >= depth {
            return None;
        }
        let raw = &self.candidates[self.assignment[slot]];
        Some(if i < k {
            raw.clone()
        } else {
            neg_transpose(raw, self.n)
        })
    }

    fn holds(&self, constraint: Constraint, depth: usize) -> bool {
        let n = self.n;
        match constraint {
            Constraint::Diag(i) => {
                let mut sum = vec![0i64; n * n];
                for k in 0..n {
                    if k == i {
                        continue;
                    }
                    let b = self.block(i, k, depth).expect("constraint scheduled too early");
                    let prod = mul_bt(&b, &b, n);
                    for (s, p) in sum.iter_mut().zip(prod) {
                        *s += p;
                    }
                }
                let square = (n * n) as i64;
                let line = n as i64;
                (0..n).all(|r| {
                    (0..n).all(|c| {
                        let expect = if r == c { square - line } else { -line };
                        sum[r * n + c] == expect
                    })
                })
            }
            Constraint::Off(i, j) => {
                let mut sum = vec![0i64; n * n];
                for k in 0..n {
                    if k == i || k == j {
                        continue;
                    }
                    let bi = self.block(i, k, depth).expect("constraint scheduled too early");
                    let bj = self.block(j, k, depth).expect("constraint scheduled too early");
                    let prod = mul_bt(&bi, &bj, n);
                    for (s, p) in sum.iter_mut().zip(prod) {
                        *s += p;
                    }
                }
                sum.iter().all(|&x| x == 0)
            }
        }
    }

    fn run(&mut self, depth: usize) -> Result<bool> {
        if depth == self.pairs.len() {
            return Ok(true);
        }
        for cand in 0..self.candidates.len() {
            self.nodes += 1;
            if self.nodes > self.budget {
                return Err(Error::SearchExhausted(format!(
                    "skew-Bush search exceeded {} nodes",
                    self.budget
                )));
            }
            self.assignment[depth] = cand;
            let ok = self.checks_at[depth]
                .clone()
                .iter()
                .all(|&c| self.holds(c, depth + 1));
            if ok && self.run(depth + 1)? {
                return Ok(true);
            }
        }
        Ok(false)
    }
}

/// Search for a skew-Bush type Hadamard matrix of order n^2. The built-in
/// search covers n in {2, 4}; larger orders come in through matrix files.
pub fn skew_bush_search(n: usize) -> Result<ExactMatrix> {
    if n != 2 && n != 4 {
        return Err(Error::invalid(
            "built-in skew-Bush search supports n = 2 and n = 4",
        ));
    }
    let mut pairs = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            pairs.push((i, j));
        }
    }
    let candidates = zero_sum_blocks(n);
    let slots = pairs.len();
    let mut search = Search {
        n,
        pairs: pairs.clone(),
        candidates,
        assignment: vec![0; slots],
        checks_at: vec![Vec::new(); slots],
        nodes: 0,
        budget: 50_000_000,
    };
    // Schedule each constraint at the last slot among the pairs it reads.
    let mut schedule = |constraint: Constraint, members: Vec<(usize, usize)>| {
        let last = members
            .into_iter()
            .map(|(i, j)| search.slot(i, j))
            .max()
            .expect("nonempty constraint");
        search.checks_at[last].push(constraint);
    };
    for i in 0..n {
        let members: Vec<(usize, usize)> = (0..n).filter(|&k| k != i).map(|k| (i.min(k), i.max(k))).collect();
        schedule(Constraint::Diag(i), members);
    }
    for i in 0..n {
        for j in i + 1..n {
            let mut members = Vec::new();
            for k in 0..n {
                if k != i && k != j {
                    members.push((i.min(k), i.max(k)));
                    members.push((j.min(k), j.max(k)));
                }
            }
            if !members.is_empty() {
                schedule(Constraint::Off(i, j), members);
            }
        }
    }
    if !search.run(0)? {
        return Err(Error::SearchExhausted(format!(
            "no skew-Bush matrix of order {} found",
            n * n
        )));
    }
    // Assemble and revalidate the full matrix from the assignment.
    let order = n * n;
    let assignment = search.assignment.clone();
    let candidates = &search.candidates;
    let block_at = |bi: usize, bj: usize| -> Block {
        if bi == bj {
            vec![1; n * n]
        } else {
            let slot = pairs
                .iter()
                .position(|&p| p == (bi.min(bj), bi.max(bj)))
                .expect("pair slot");
            let raw = &candidates[assignment[slot]];
            if bi < bj {
                raw.clone()
            } else {
                neg_transpose(raw, n)
            }
        }
    };
    let h = ExactMatrix::from_int_fn(order, |r, c| {
        let (bi, i) = (r / n, r % n);
        let (bj, j) = (c / n, c % n);
        mat_get(&block_at(bi, bj), n, i, j)
    });
    validate_skew_bush(&h, n)?;
    Ok(h)
}

/// The full contract: H_ii = J, zero line sums and skew pairing in the
/// off-diagonal blocks, and H*H^T = n^2 I.
pub fn validate_skew_bush(h: &ExactMatrix, n: usize) -> Result<()> {
    let order = n * n;
    if h.order() != order {
        return Err(Error::validator("skew_bush: wrong order"));
    }
    let one = Scalar::one();
    for bi in 0..n {
        for bj in 0..n {
            if bi == bj {
                for i in 0..n {
                    for j in 0..n {
                        if *h.at(bi * n + i, bj * n + j) != one {
                            return Err(Error::validator(
                                "skew_bush: diagonal block is not all-ones",
                            ));
                        }
                    }
                }
                continue;
            }
            for i in 0..n {
                let mut row_sum = Scalar::zero();
                let mut col_sum = Scalar::zero();
                for j in 0..n {
                    row_sum = &row_sum + h.at(bi * n + i, bj * n + j);
                    col_sum = &col_sum + h.at(bi * n + j, bj * n + i);
                }
                if !row_sum.is_zero() || !col_sum.is_zero() {
                    return Err(Error::validator(
                        "skew_bush: off-diagonal block has a nonzero line sum",
                    ));
                }
            }
            for i in 0..n {
                for j in 0..n {
                    let a = h.at(bi * n + i, bj * n + j);
                    let b = h.at(bj * n + j, bi * n + i);
                    if *a != -b {
                        return Err(Error::validator(
                            "skew_bush: blocks are not skew-paired",
                        ));
                    }
                }
            }
        }
    }
    if !super::gram_is(h, order as i64, 0) {
        return Err(Error::validator(format!("skew_bush: H*H^T != {order}I")));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_sum_block_counts() {
        assert_eq!(zero_sum_blocks(2).len(), 2);
        assert_eq!(zero_sum_blocks(4).len(), 90);
    }

    #[test]
    fn order_four_search_succeeds() {
        let h = skew_bush_search(2).unwrap();
        assert_eq!(h.order(), 4);
    }

    #[test]
    fn unsupported_orders_are_rejected() {
        assert!(skew_bush_search(3).is_err());
        assert!(skew_bush_search(6).is_err());
    }
}
