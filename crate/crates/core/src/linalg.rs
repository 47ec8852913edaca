//! Exact sparse elimination.
//!
//! Vectors are sorted lists of `(index, value)` pairs. An [`Echelon`] holds
//! rows in echelon form keyed by their leading index; reducing a vector
//! against it walks the touched indices in increasing order with a dense
//! scratch buffer, so the remainder comes out sorted and has no entry at any
//! pivot position. The remainder is therefore canonical modulo the row space.
//!
//! Kernels are computed by elimination on augmented vectors: coordinates at
//! or above `pivot_limit` are never used as pivots and act as tags recording
//! the combination that produced a row.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use crate::field::Field;

pub type SparseVec<E> = Vec<(u32, E)>;

const NO_ROW: u32 = u32::MAX;

pub struct Echelon<F: Field> {
    field: F,
    pivot_limit: usize,
    rows: Vec<SparseVec<F::Elem>>,
    pivot_row: Vec<u32>,
    scratch: Vec<F::Elem>,
    active: Vec<bool>,
    heap: BinaryHeap<Reverse<u32>>,
}

impl<F: Field> Echelon<F> {
    /// Echelon form for vectors of length `dim`, every coordinate a potential pivot.
    pub fn new(field: F, dim: usize) -> Self {
        Self::with_tags(field, dim, 0)
    }

    /// Vectors have `dim` pivot coordinates followed by `tags` tag coordinates.
    pub fn with_tags(field: F, dim: usize, tags: usize) -> Self {
        let total = dim + tags;
        Echelon {
            pivot_limit: dim,
            rows: Vec::new(),
            pivot_row: vec![NO_ROW; dim],
            scratch: vec![field.zero(); total],
            active: vec![false; total],
            heap: BinaryHeap::new(),
            field,
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn dim(&self) -> usize {
        self.pivot_limit
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.pivot_limit
    }

    pub fn rows(&self) -> &[SparseVec<F::Elem>] {
        &self.rows
    }

    pub fn pivots(&self) -> impl Iterator<Item = u32> + '_ {
        self.rows.iter().map(|r| r[0].0)
    }

    pub fn is_pivot(&self, i: u32) -> bool {
        (i as usize) < self.pivot_limit && self.pivot_row[i as usize] != NO_ROW
    }

    /// Remainder of `v` modulo the row space, fully reduced.
    pub fn reduce(&mut self, v: &[(u32, F::Elem)]) -> SparseVec<F::Elem> {
        let Echelon { field, pivot_limit, rows, pivot_row, scratch, active, heap } = self;
        for (i, c) in v {
            let iu = *i as usize;
            if field.is_zero(c) {
                continue;
            }
            if active[iu] {
                scratch[iu] = field.add(&scratch[iu], c);
            } else {
                scratch[iu] = c.clone();
                active[iu] = true;
                heap.push(Reverse(*i));
            }
        }
        let mut out = Vec::new();
        while let Some(Reverse(i)) = heap.pop() {
            let iu = i as usize;
            active[iu] = false;
            let c = std::mem::replace(&mut scratch[iu], field.zero());
            if field.is_zero(&c) {
                continue;
            }
            let r = if iu < *pivot_limit { pivot_row[iu] } else { NO_ROW };
            if r == NO_ROW {
                out.push((i, c));
                continue;
            }
            for (j, a) in &rows[r as usize][1..] {
                let ju = *j as usize;
                if active[ju] {
                    scratch[ju] = field.mul_sub(&scratch[ju], &c, a);
                } else {
                    scratch[ju] = field.neg(&field.mul(&c, a));
                    active[ju] = true;
                    heap.push(Reverse(*j));
                }
            }
        }
        out
    }

    fn push_normalized(&mut self, mut rem: SparseVec<F::Elem>) {
        let inv = self.field.inv(&rem[0].1).expect("leading entry is nonzero");
        for e in rem.iter_mut() {
            e.1 = self.field.mul(&e.1, &inv);
        }
        self.pivot_row[rem[0].0 as usize] = self.rows.len() as u32;
        self.rows.push(rem);
    }

    /// Adds `v` to the row space. Returns `true` when it was independent.
    pub fn insert(&mut self, v: &[(u32, F::Elem)]) -> bool {
        let rem = self.reduce(v);
        match rem.first() {
            Some((i, _)) if (*i as usize) < self.pivot_limit => {
                self.push_normalized(rem);
                true
            }
            _ => false,
        }
    }

    /// Adds `v`; if its pivot part reduces to zero, returns the remaining
    /// tag part instead (shifted to start at 0).
    pub fn insert_or_tag(&mut self, v: &[(u32, F::Elem)]) -> Option<SparseVec<F::Elem>> {
        let rem = self.reduce(v);
        match rem.first() {
            Some((i, _)) if (*i as usize) < self.pivot_limit => {
                self.push_normalized(rem);
                None
            }
            _ => {
                let shift = self.pivot_limit as u32;
                Some(rem.into_iter().map(|(i, c)| (i - shift, c)).collect())
            }
        }
    }

    pub fn contains(&mut self, v: &[(u32, F::Elem)]) -> bool {
        self.reduce(v).is_empty()
    }
}

/// Kernel of the linear map sending the `k`-th domain basis vector to
/// `images[k]` (vectors in a codomain of dimension `codim`). Returns the rank
/// and a kernel basis in domain coordinates.
pub fn kernel<F: Field>(field: &F, codim: usize, images: &[SparseVec<F::Elem>]) -> (usize, Vec<SparseVec<F::Elem>>) {
    let mut ech = Echelon::with_tags(field.clone(), codim, images.len());
    let mut ker = Vec::new();
    let mut aug = Vec::new();
    for (k, img) in images.iter().enumerate() {
        aug.clear();
        aug.extend(img.iter().cloned());
        aug.push(((codim + k) as u32, field.one()));
        if let Some(tag) = ech.insert_or_tag(&aug) {
            ker.push(tag);
        }
    }
    (ech.rank(), ker)
}

/// Rank of a list of vectors of length `dim`.
pub fn rank<F: Field>(field: &F, dim: usize, vectors: &[SparseVec<F::Elem>]) -> usize {
    let mut ech = Echelon::new(field.clone(), dim);
    for v in vectors {
        if ech.is_full() {
            break;
        }
        ech.insert(v);
    }
    ech.rank()
}

/// Applies a sparse matrix given by columns: `cols[k]` is the image of the
/// `k`-th basis vector.
pub fn apply<F: Field>(field: &F, cols: &[SparseVec<F::Elem>], v: &[(u32, F::Elem)]) -> SparseVec<F::Elem> {
    let mut acc: Vec<(u32, F::Elem)> = Vec::new();
    for (k, c) in v {
        for (i, a) in &cols[*k as usize] {
            acc.push((*i, field.mul(c, a)));
        }
    }
    collect_sparse(field, acc)
}

/// Sorts and merges duplicate indices, dropping zeros.
pub fn collect_sparse<F: Field>(field: &F, mut entries: Vec<(u32, F::Elem)>) -> SparseVec<F::Elem> {
    entries.sort_by_key(|e| e.0);
    let mut out: SparseVec<F::Elem> = Vec::with_capacity(entries.len());
    for (i, c) in entries {
        match out.last_mut() {
            Some(last) if last.0 == i => last.1 = field.add(&last.1, &c),
            _ => out.push((i, c)),
        }
    }
    out.retain(|e| !field.is_zero(&e.1));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};
    use proptest::prelude::*;

    fn dense_rank(f: &PrimeField, mut m: Vec<Vec<u32>>) -> usize {
        let cols = m.first().map_or(0, |r| r.len());
        let mut r = 0;
        for c in 0..cols {
            let Some(p) = (r..m.len()).find(|&i| m[i][c] != 0) else { continue };
            m.swap(r, p);
            let inv = f.inv(&m[r][c]).unwrap();
            for i in 0..m.len() {
                if i != r && m[i][c] != 0 {
                    let factor = f.mul(&m[i][c], &inv);
                    for k in 0..cols {
                        m[i][k] = f.mul_sub(&m[i][k], &factor, &m[r][k]);
                    }
                }
            }
            r += 1;
        }
        r
    }

    fn to_sparse(row: &[u32]) -> SparseVec<u32> {
        row.iter().enumerate().filter(|(_, &c)| c != 0).map(|(i, &c)| (i as u32, c)).collect()
    }

    #[test]
    fn small_kernel() {
        // Columns (1,1), (1,1), (0,1): kernel spanned by e0 - e1.
        let q = Rationals;
        let one = q.one();
        let images = vec![
            vec![(0, one.clone()), (1, one.clone())],
            vec![(0, one.clone()), (1, one.clone())],
            vec![(1, one.clone())],
        ];
        let (rank, ker) = kernel(&q, 2, &images);
        assert_eq!(rank, 2);
        assert_eq!(ker, vec![vec![(0, q.from_i64(-1)), (1, q.one())]]);
    }

    proptest! {
        #[test]
        fn rank_matches_dense(rows in proptest::collection::vec(proptest::collection::vec(0u32..5, 7), 0..9)) {
            let f = PrimeField::new(5).unwrap();
            let sparse: Vec<_> = rows.iter().map(|r| to_sparse(r)).collect();
            prop_assert_eq!(rank(&f, 7, &sparse), dense_rank(&f, rows.clone()));
        }

        #[test]
        fn kernel_vectors_are_killed(cols in proptest::collection::vec(proptest::collection::vec(0u32..3, 5), 1..10)) {
            let f = PrimeField::new(3).unwrap();
            let images: Vec<_> = cols.iter().map(|c| to_sparse(c)).collect();
            let (r, ker) = kernel(&f, 5, &images);
            prop_assert_eq!(r + ker.len(), images.len());
            prop_assert_eq!(r, dense_rank(&f, cols.clone()));
            for v in &ker {
                prop_assert!(apply(&f, &images, v).is_empty());
            }
            prop_assert_eq!(rank(&f, images.len(), &ker), ker.len());
        }

        #[test]
        fn remainder_is_canonical(rows in proptest::collection::vec(proptest::collection::vec(0u32..7, 6), 1..6),
                                  v in proptest::collection::vec(0u32..7, 6),
                                  coeffs in proptest::collection::vec(0u32..7, 6)) {
            let f = PrimeField::new(7).unwrap();
            let mut ech = Echelon::new(f, 6);
            for r in &rows {
                ech.insert(&to_sparse(r));
            }
            // v and v + (combination of rows) have the same remainder.
            let mut w = v.clone();
            for (r, c) in rows.iter().zip(&coeffs) {
                for k in 0..6 {
                    w[k] = f.add(&w[k], &f.mul(c, &r[k]));
                }
            }
            let a = ech.reduce(&to_sparse(&v));
            let b = ech.reduce(&to_sparse(&w));
            prop_assert_eq!(&a, &b);
            prop_assert!(a.iter().all(|(i, _)| !ech.is_pivot(*i)));
        }
    }
}
