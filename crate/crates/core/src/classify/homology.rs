//! Simplicial homology over prime fields via boundary-matrix ranks.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::complex::{Complex, Face};
use crate::error::{Error, Result};
use crate::par;

/// Above this many columns the rank is computed by sparse column reduction.
pub const DENSE_COLUMN_LIMIT: usize = 2000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BettiVector {
    pub field_char: u32,
    pub betti: Vec<u64>,
}

impl BettiVector {
    /// `Σ (−1)ⁱ βᵢ`.
    pub fn euler_characteristic(&self) -> i64 {
        self.betti
            .iter()
            .enumerate()
            .map(|(i, &b)| if i % 2 == 0 { b as i64 } else { -(b as i64) })
            .sum()
    }
}

pub fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= p as u64 {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

pub(crate) fn require_prime(p: u32) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(Error::parameter(format!("field characteristic {p} is not prime")))
    }
}

fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

/// A matrix over GF(p) stored by sparse columns, each sorted by row.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix {
    pub rows: usize,
    pub columns: Vec<Vec<(usize, u32)>>,
    pub p: u32,
}

impl SparseMatrix {
    pub fn cols(&self) -> usize {
        self.columns.len()
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(Vec::is_empty)
    }

    pub fn rank(&self) -> usize {
        if self.cols() < DENSE_COLUMN_LIMIT {
            self.rank_dense()
        } else {
            self.rank_sparse()
        }
    }

    /// Row reduction on a dense copy.
    pub fn rank_dense(&self) -> usize {
        let p = self.p as u64;
        let (rows, cols) = (self.rows, self.cols());
        if rows == 0 || cols == 0 {
            return 0;
        }
        let mut m = vec![vec![0u64; cols]; rows];
        for (j, col) in self.columns.iter().enumerate() {
            for &(i, v) in col {
                m[i][j] = v as u64;
            }
        }
        let mut rank = 0;
        for col in 0..cols {
            let Some(pivot) = (rank..rows).find(|&r| m[r][col] != 0) else {
                continue;
            };
            m.swap(rank, pivot);
            let inv = inv_mod(m[rank][col], p);
            for x in m[rank][col..].iter_mut() {
                *x = *x * inv % p;
            }
            let pivot_row = m[rank].clone();
            for (r, row) in m.iter_mut().enumerate() {
                if r == rank || row[col] == 0 {
                    continue;
                }
                let factor = row[col];
                for (x, &y) in row[col..].iter_mut().zip(&pivot_row[col..]) {
                    *x = (*x + p - factor * y % p) % p;
                }
            }
            rank += 1;
            if rank == rows {
                break;
            }
        }
        rank
    }

    /// Column reduction keyed by the lowest nonzero row of each column.
    pub fn rank_sparse(&self) -> usize {
        let p = self.p as u64;
        let mut pivots: HashMap<usize, Vec<(usize, u32)>> = HashMap::new();
        for col in &self.columns {
            let mut col = col.clone();
            while let Some(&(low, v)) = col.last() {
                let Some(other) = pivots.get(&low) else {
                    break;
                };
                let (_, w) = *other.last().unwrap();
                // col ← col − (v / w) · other
                let factor = v as u64 * inv_mod(w as u64, p) % p;
                col = axpy(&col, other, (p - factor) % p, p);
            }
            if let Some(&(low, _)) = col.last() {
                pivots.insert(low, col);
            }
        }
        pivots.len()
    }

    /// `self · other` over GF(p).
    pub fn compose(&self, other: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.cols(), other.rows, "dimension mismatch");
        let p = self.p as u64;
        let columns = other
            .columns
            .iter()
            .map(|ocol| {
                let mut acc: Vec<(usize, u32)> = Vec::new();
                for &(k, v) in ocol {
                    acc = axpy(&acc, &self.columns[k], v as u64, p);
                }
                acc
            })
            .collect();
        SparseMatrix {
            rows: self.rows,
            columns,
            p: self.p,
        }
    }
}

/// `a + factor · b` for sorted sparse vectors.
fn axpy(a: &[(usize, u32)], b: &[(usize, u32)], factor: u64, p: u64) -> Vec<(usize, u32)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let take_a = j >= b.len() || (i < a.len() && a[i].0 < b[j].0);
        let take_b = i >= a.len() || (j < b.len() && b[j].0 < a[i].0);
        let (row, val) = if take_a {
            i += 1;
            (a[i - 1].0, a[i - 1].1 as u64)
        } else if take_b {
            j += 1;
            (b[j - 1].0, factor * b[j - 1].1 as u64 % p)
        } else {
            i += 1;
            j += 1;
            (a[i - 1].0, (a[i - 1].1 as u64 + factor * b[j - 1].1 as u64) % p)
        };
        if val != 0 {
            out.push((row, val as u32));
        }
    }
    out
}

/// `∂_k : C_k → C_{k−1}` with faces in canonical order and the sign of
/// removing the vertex at position `i` equal to `(−1)ⁱ`. Requires `k ≥ 1`.
pub fn boundary_matrix(c: &Complex, k: isize, p: u32) -> Result<SparseMatrix> {
    require_prime(p)?;
    if k < 1 {
        return Err(Error::parameter("boundary matrices are defined for k >= 1"));
    }
    let lower = c.faces_of_dim(k - 1);
    let upper = c.faces_of_dim(k);
    let index: HashMap<&Face, usize> = lower.iter().enumerate().map(|(i, f)| (f, i)).collect();
    let minus_one = p - 1;
    let columns = par::map(upper, |f| {
        let mut col: Vec<(usize, u32)> = f
            .vertices()
            .iter()
            .enumerate()
            .map(|(i, &v)| {
                let row = index[&f.without(v)];
                let sign = if i % 2 == 0 { 1 } else { minus_one };
                (row, sign)
            })
            .collect();
        col.sort_unstable();
        if p == 2 {
            col.iter_mut().for_each(|e| e.1 = 1);
        }
        col
    });
    Ok(SparseMatrix {
        rows: lower.len(),
        columns,
        p,
    })
}

/// Unreduced Betti numbers `β₀, …, β_dim` over GF(p).
pub fn betti_numbers(c: &Complex, p: u32) -> Result<BettiVector> {
    require_prime(p)?;
    let top = c.dim();
    if top < 0 {
        return Ok(BettiVector {
            field_char: p,
            betti: Vec::new(),
        });
    }
    // ranks[k] = rank ∂_k for 1 ≤ k ≤ top; ∂_0 is zero in unreduced homology
    let mut ranks = vec![0usize; top as usize + 2];
    for k in 1..=top {
        ranks[k as usize] = boundary_matrix(c, k, p)?.rank();
    }
    let betti = (0..=top)
        .map(|k| {
            let fk = c.faces_of_dim(k).len();
            (fk - ranks[k as usize] - ranks[k as usize + 1]) as u64
        })
        .collect();
    Ok(BettiVector {
        field_char: p,
        betti,
    })
}

/// Unreduced Betti numbers of the `k`-sphere; `k = −1` is `{∅}`.
pub fn sphere_betti(k: isize) -> Vec<u64> {
    match k {
        k if k < 0 => Vec::new(),
        0 => vec![2],
        k => {
            let mut b = vec![0; k as usize + 1];
            b[0] = 1;
            b[k as usize] = 1;
            b
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(facets: &[&[u32]]) -> Complex {
        Complex::from_facets(facets.iter().map(|f| f.iter().copied())).unwrap()
    }

    #[test]
    fn primes() {
        assert!(is_prime(2) && is_prime(3) && is_prime(65521));
        assert!(!is_prime(0) && !is_prime(1) && !is_prime(4) && !is_prime(91));
    }

    #[test]
    fn small_bettis() {
        let sq = c(&[&[0, 1], &[1, 2], &[2, 3], &[3, 0]]);
        assert_eq!(betti_numbers(&sq, 2).unwrap().betti, vec![1, 1]);
        let oct = sq.suspension();
        assert_eq!(betti_numbers(&oct, 2).unwrap().betti, vec![1, 0, 1]);
        assert_eq!(betti_numbers(&oct, 3).unwrap().betti, vec![1, 0, 1]);
        let disk = c(&[&[0, 1, 2]]);
        assert_eq!(betti_numbers(&disk, 5).unwrap().betti, vec![1, 0, 0]);
        assert!(betti_numbers(&sq, 4).is_err());
    }

    #[test]
    fn projective_plane_depends_on_field() {
        // six-vertex RP²
        let rp2 = c(&[
            &[0, 1, 2], &[0, 2, 3], &[0, 3, 4], &[0, 4, 5], &[0, 5, 1],
            &[1, 2, 4], &[2, 3, 5], &[3, 4, 1], &[4, 5, 2], &[5, 1, 3],
        ]);
        assert_eq!(betti_numbers(&rp2, 2).unwrap().betti, vec![1, 1, 1]);
        assert_eq!(betti_numbers(&rp2, 3).unwrap().betti, vec![1, 0, 0]);
    }

    #[test]
    fn dense_and_sparse_ranks_agree() {
        let sq = c(&[&[0, 1], &[1, 2], &[2, 3], &[3, 0]]);
        let big = sq.join(&sq).join(&sq);
        for p in [2, 3, 7] {
            for k in 1..=big.dim() {
                let m = boundary_matrix(&big, k, p).unwrap();
                assert_eq!(m.rank_dense(), m.rank_sparse(), "k={k} p={p}");
            }
        }
    }

    #[test]
    fn boundary_squares_to_zero() {
        let sq = c(&[&[0, 1], &[1, 2], &[2, 3], &[3, 0]]);
        let x = sq.join(&sq).suspension();
        for p in [2, 3, 5] {
            for k in 2..=x.dim() {
                let a = boundary_matrix(&x, k - 1, p).unwrap();
                let b = boundary_matrix(&x, k, p).unwrap();
                assert!(a.compose(&b).is_zero());
            }
        }
    }

    #[test]
    fn sphere_patterns() {
        assert_eq!(sphere_betti(-1), Vec::<u64>::new());
        assert_eq!(sphere_betti(0), vec![2]);
        assert_eq!(sphere_betti(3), vec![1, 0, 0, 1]);
    }
}
