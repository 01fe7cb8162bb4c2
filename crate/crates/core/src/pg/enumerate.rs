//! Deterministic enumeration of subspaces in canonical (RREF) form.
//!
//! Without a fixed subspace, subspaces come out in lexicographic order of
//! their canonical matrices read row-major by element code. Each pivot
//! pattern is an odometer over its free entries, which is already sorted,
//! and the patterns are merged through a heap.
//!
//! With a fixed subspace `W`, the subspaces through `W` are in bijection
//! with subspaces of the quotient, realised on the non-pivot columns of
//! `W`; those quotient matrices are enumerated in the same order and
//! lifted, so the stream is ordered by quotient representative.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use super::{ProjSpace, Subspace};
use crate::gf::Elem;

/// Number of `k`-dimensional subspaces of an `m`-dimensional vector space
/// over `GF(q)`; saturates at `u128::MAX`.
pub fn gaussian_binomial(m: usize, k: usize, q: u64) -> u128 {
    if k > m {
        return 0;
    }
    let k = k.min(m - k);
    let q = q as u128;
    let mut acc: u128 = 1;
    for i in 0..k {
        let num = q.checked_pow((m - i) as u32).map(|x| x - 1);
        let den = q.pow(i as u32 + 1) - 1;
        match num.and_then(|n| acc.checked_mul(n)) {
            Some(v) => acc = v / den,
            None => return u128::MAX,
        }
    }
    acc
}

struct Pattern {
    free: Vec<usize>,
    mat: Vec<Elem>,
    done: bool,
}

impl Pattern {
    fn new(pivots: &[usize], ncols: usize) -> Self {
        let r = pivots.len();
        let mut mat = vec![0; r * ncols];
        let mut free = Vec::new();
        for (i, &p) in pivots.iter().enumerate() {
            mat[i * ncols + p] = 1;
            for c in p + 1..ncols {
                if !pivots.contains(&c) {
                    free.push(i * ncols + c);
                }
            }
        }
        Pattern { free, mat, done: false }
    }

    fn advance(&mut self, q: u32) {
        for &pos in self.free.iter().rev() {
            self.mat[pos] += 1;
            if self.mat[pos] < q {
                return;
            }
            self.mat[pos] = 0;
        }
        self.done = true;
    }
}

/// Full-rank RREF matrices of shape `rank × ncols`, in lexicographic order.
pub(crate) struct RrefStream {
    q: u32,
    patterns: Vec<Pattern>,
    heap: BinaryHeap<Reverse<(Vec<Elem>, usize)>>,
}

impl RrefStream {
    pub(crate) fn new(rank: usize, ncols: usize, q: u32) -> Self {
        let mut patterns = Vec::new();
        if rank <= ncols {
            let mut piv: Vec<usize> = (0..rank).collect();
            loop {
                patterns.push(Pattern::new(&piv, ncols));
                // next combination
                let mut i = rank;
                loop {
                    if i == 0 {
                        break;
                    }
                    i -= 1;
                    if piv[i] < ncols - rank + i {
                        piv[i] += 1;
                        for j in i + 1..rank {
                            piv[j] = piv[j - 1] + 1;
                        }
                        i = usize::MAX;
                        break;
                    }
                }
                if i != usize::MAX {
                    break;
                }
            }
        }
        let heap = patterns.iter().enumerate().map(|(i, p)| Reverse((p.mat.clone(), i))).collect();
        RrefStream { q, patterns, heap }
    }
}

impl Iterator for RrefStream {
    type Item = Vec<Elem>;

    fn next(&mut self) -> Option<Vec<Elem>> {
        let Reverse((mat, idx)) = self.heap.pop()?;
        let pat = &mut self.patterns[idx];
        pat.advance(self.q);
        if !pat.done {
            self.heap.push(Reverse((pat.mat.clone(), idx)));
        }
        Some(mat)
    }
}

/// Stream of [`Subspace`]s of a fixed rank, optionally through a fixed
/// subspace. Built by [`ProjSpace::subspaces`].
pub struct SubspaceIter {
    space: ProjSpace,
    inner: RrefStream,
    lift: Option<(Subspace, Vec<usize>)>,
    rank: usize,
}

impl SubspaceIter {
    pub(crate) fn new(space: &ProjSpace, rank: usize, through: Option<&Subspace>) -> Self {
        let q = space.q();
        let n = space.ncols();
        match through {
            None => SubspaceIter {
                space: space.clone(),
                inner: RrefStream::new(rank, n, q),
                lift: None,
                rank,
            },
            Some(w) => {
                let free: Vec<usize> = (0..n).filter(|c| !w.pivots().contains(c)).collect();
                SubspaceIter {
                    space: space.clone(),
                    inner: RrefStream::new(rank - w.rank(), free.len(), q),
                    lift: Some((w.clone(), free)),
                    rank,
                }
            }
        }
    }
}

impl Iterator for SubspaceIter {
    type Item = Subspace;

    fn next(&mut self) -> Option<Subspace> {
        let mat = self.inner.next()?;
        let n = self.space.ncols();
        match &self.lift {
            None => {
                let pivots = (0..self.rank)
                    .map(|i| mat[i * n..(i + 1) * n].iter().position(|&x| x != 0).unwrap())
                    .collect();
                Some(Subspace::from_canonical(n, mat, pivots))
            }
            Some((w, free)) => {
                let k = free.len();
                let mut rows = w.rows().to_vec();
                for row in mat.chunks(k.max(1)).take(self.rank - w.rank()) {
                    let mut v = vec![0; n];
                    for (j, &c) in free.iter().enumerate() {
                        v[c] = row[j];
                    }
                    rows.extend(v);
                }
                Some(self.space.subspace_from_rows(rows))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gaussian_values() {
        assert_eq!(gaussian_binomial(6, 4, 2), 651);
        assert_eq!(gaussian_binomial(3, 1, 4), 21);
        assert_eq!(gaussian_binomial(5, 5, 7), 1);
        assert_eq!(gaussian_binomial(5, 0, 7), 1);
        assert_eq!(gaussian_binomial(3, 4, 2), 0);
        assert_eq!(gaussian_binomial(3, 2, 256), 65793);
        assert_eq!(gaussian_binomial(200, 100, 1 << 16), u128::MAX);
    }

    #[test]
    fn stream_is_sorted_and_counted() {
        for (r, n, q) in [(2, 3, 2), (2, 4, 3), (3, 6, 2), (1, 4, 4), (0, 3, 2), (3, 3, 5)] {
            let all: Vec<_> = RrefStream::new(r, n, q).collect();
            assert_eq!(all.len() as u128, gaussian_binomial(n, r, q as u64), "{r} {n} {q}");
            assert!(all.windows(2).all(|w| w[0] < w[1]), "not strictly increasing");
        }
    }
}
