//! Sparse linear algebra over the coefficient field: incremental echelon
//! forms, ranks and kernels of linear maps given by column images.

use std::collections::BTreeMap;

use crate::scalar::{Field, Scalar};

/// A sparse vector with coordinates indexed by `K`.
pub type SparseVec<K> = BTreeMap<K, Scalar>;

pub(crate) fn axpy<K: Ord + Clone>(y: &mut SparseVec<K>, a: &Scalar, x: &SparseVec<K>) {
    for (k, v) in x {
        let add = a * v;
        match y.get_mut(k) {
            Some(c) => {
                let s = &*c + &add;
                if s.is_zero() {
                    y.remove(k);
                } else {
                    *c = s;
                }
            }
            None => {
                if !add.is_zero() {
                    y.insert(k.clone(), add);
                }
            }
        }
    }
}

/// Row echelon form built one vector at a time. Each stored row carries the
/// combination of inserted vectors that produced it.
pub struct Echelon<K: Ord + Clone> {
    field: Field,
    // pivot -> (row with pivot coefficient 1, combination of inputs)
    rows: BTreeMap<K, (SparseVec<K>, SparseVec<usize>)>,
    inserted: usize,
}

impl<K: Ord + Clone> Echelon<K> {
    pub fn new(field: Field) -> Self {
        Echelon { field, rows: BTreeMap::new(), inserted: 0 }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduce `v` against the stored rows. Returns the remainder and the
    /// combination (over inserted inputs) that was subtracted.
    fn reduce(&self, v: &SparseVec<K>) -> (SparseVec<K>, SparseVec<usize>) {
        let mut r = v.clone();
        let mut combo: SparseVec<usize> = BTreeMap::new();
        // pivots are the smallest key of each row; sweep in increasing key order
        let mut cursor: Option<K> = None;
        loop {
            let next = match &cursor {
                None => r.keys().find(|k| self.rows.contains_key(*k)).cloned(),
                Some(c) => r.range(c.clone()..).map(|(k, _)| k).find(|k| self.rows.contains_key(*k)).cloned(),
            };
            let Some(k) = next else { break };
            let c = r[&k].clone();
            let (row, rc) = &self.rows[&k];
            let neg = -&c;
            axpy(&mut r, &neg, row);
            axpy(&mut combo, &c, rc);
            cursor = Some(k);
        }
        (r, combo)
    }

    pub fn is_in_span(&self, v: &SparseVec<K>) -> bool {
        self.reduce(v).0.is_empty()
    }

    /// Insert `v`. Returns `None` if it was independent, otherwise the
    /// dependency: coefficients `c_j` with `v = Σ c_j · input_j`.
    pub fn insert(&mut self, v: &SparseVec<K>) -> Option<SparseVec<usize>> {
        let idx = self.inserted;
        self.inserted += 1;
        let (r, combo) = self.reduce(v);
        if r.is_empty() {
            return Some(combo);
        }
        let (pivot, lead) = r.iter().next().map(|(k, c)| (k.clone(), c.clone())).unwrap();
        let inv = lead.inv();
        let row: SparseVec<K> = r.iter().map(|(k, c)| (k.clone(), c * &inv)).collect();
        // row = (v - combo) / lead
        let mut rc: SparseVec<usize> = BTreeMap::new();
        rc.insert(idx, inv.clone());
        let neg_inv = -&inv;
        axpy(&mut rc, &neg_inv, &combo);
        self.rows.insert(pivot, (row, rc));
        let _ = &self.field;
        None
    }
}

/// Rank of a family of sparse vectors.
pub fn rank<K: Ord + Clone>(field: Field, vectors: &[SparseVec<K>]) -> usize {
    let mut e = Echelon::new(field);
    for v in vectors {
        e.insert(v);
    }
    e.rank()
}

/// A basis of the kernel of the linear map sending basis vector `j` to
/// `images[j]`, as coefficient vectors over the domain indices.
pub fn kernel<K: Ord + Clone>(field: Field, images: &[SparseVec<K>]) -> Vec<SparseVec<usize>> {
    let mut e = Echelon::new(field);
    let mut out = Vec::new();
    for (j, v) in images.iter().enumerate() {
        if let Some(dep) = e.insert(v) {
            // image_j - Σ dep_i image_i = 0
            let mut k: SparseVec<usize> = BTreeMap::new();
            k.insert(j, field.one());
            axpy(&mut k, &field.from_i64(-1), &dep);
            out.push(k);
        }
    }
    out
}

/// Solve `Σ x_j images[j] = target`, if possible.
pub fn solve<K: Ord + Clone>(field: Field, images: &[SparseVec<K>], target: &SparseVec<K>) -> Option<SparseVec<usize>> {
    let mut e = Echelon::new(field);
    for v in images {
        e.insert(v);
    }
    e.insert(target).map(|dep| dep.into_iter().filter(|(j, _)| *j < images.len()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(field: Field, entries: &[(u32, i64)]) -> SparseVec<u32> {
        entries.iter().filter(|(_, c)| *c != 0).map(|&(k, c)| (k, field.from_i64(c))).collect()
    }

    #[test]
    fn rank_and_kernel() {
        let f = Field::Q;
        let imgs = vec![v(f, &[(0, 1), (1, 2)]), v(f, &[(0, 2), (1, 4)]), v(f, &[(1, 1)]), v(f, &[(0, 1)])];
        assert_eq!(rank(f, &imgs), 2);
        let ker = kernel(f, &imgs);
        assert_eq!(ker.len(), 2);
        for k in &ker {
            let mut acc: SparseVec<u32> = BTreeMap::new();
            for (j, c) in k {
                axpy(&mut acc, c, &imgs[*j]);
            }
            assert!(acc.is_empty());
        }
    }

    #[test]
    fn solving() {
        let f = Field::fp(7).unwrap();
        let imgs = vec![v(f, &[(0, 1), (1, 1)]), v(f, &[(1, 3)])];
        let t = v(f, &[(0, 2), (1, 0)]);
        let x = solve(f, &imgs, &t).unwrap();
        let mut acc: SparseVec<u32> = BTreeMap::new();
        for (j, c) in &x {
            axpy(&mut acc, c, &imgs[*j]);
        }
        assert_eq!(acc, t);
        assert!(solve(f, &imgs[..1], &v(f, &[(1, 1)])).is_none());
    }

    #[test]
    fn zero_vectors_are_dependent() {
        let f = Field::Q;
        let ker = kernel::<u32>(f, &[BTreeMap::new()]);
        assert_eq!(ker.len(), 1);
    }
}
