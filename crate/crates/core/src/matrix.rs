//! Sparse matrices over the scalar field, sized for Yang-Baxter checks.

use std::collections::BTreeMap;

use crate::scalar::RatFunc;

/// Column-sparse square matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix {
    dim: usize,
    cols: Vec<BTreeMap<usize, RatFunc>>,
}

impl SparseMatrix {
    pub fn new(dim: usize) -> Self {
        SparseMatrix {
            dim,
            cols: vec![BTreeMap::new(); dim],
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn add_entry(&mut self, row: usize, col: usize, v: RatFunc) {
        if v.is_zero() {
            return;
        }
        match self.cols[col].entry(row) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(v);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get().add(&v);
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn get(&self, row: usize, col: usize) -> RatFunc {
        self.cols[col]
            .get(&row)
            .cloned()
            .unwrap_or_else(RatFunc::zero)
    }

    pub fn column(&self, col: usize) -> impl Iterator<Item = (usize, &RatFunc)> {
        self.cols[col].iter().map(|(r, v)| (*r, v))
    }

    /// Apply the matrix to the two tensor positions `(p, q)` of a sparse
    /// vector over triple indices.
    fn apply_pair(
        &self,
        v: &BTreeMap<[usize; 3], RatFunc>,
        p: usize,
        q: usize,
    ) -> BTreeMap<[usize; 3], RatFunc> {
        let mut out: BTreeMap<[usize; 3], RatFunc> = BTreeMap::new();
        for (idx, c) in v {
            let col = idx[p] * self.dim_factor() + idx[q];
            for (row, m) in self.column(col) {
                let mut nidx = *idx;
                nidx[p] = row / self.dim_factor();
                nidx[q] = row % self.dim_factor();
                let val = c.mul(m);
                let e = out.entry(nidx).or_insert_with(RatFunc::zero);
                *e = e.add(&val);
            }
        }
        out.retain(|_, c| !c.is_zero());
        out
    }

    /// Side length of the underlying tensor factor; the matrix acts on the
    /// square of that space.
    fn dim_factor(&self) -> usize {
        let d = (self.dim as f64).sqrt().round() as usize;
        debug_assert_eq!(d * d, self.dim);
        d
    }

    /// Quantum Yang-Baxter equation `R12 R13 R23 = R23 R13 R12` on the triple
    /// tensor space, checked column by column.
    pub fn qybe_holds(&self) -> bool {
        let d = self.dim_factor();
        for a in 0..d {
            for b in 0..d {
                for c in 0..d {
                    let mut start = BTreeMap::new();
                    start.insert([a, b, c], RatFunc::one());
                    // left: R23 first, then R13, then R12
                    let lhs =
                        self.apply_pair(&self.apply_pair(&self.apply_pair(&start, 1, 2), 0, 2), 0, 1);
                    // right: R12 first, then R13, then R23
                    let rhs =
                        self.apply_pair(&self.apply_pair(&self.apply_pair(&start, 0, 1), 0, 2), 1, 2);
                    if lhs != rhs {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Braid relation `(c x 1)(1 x c)(c x 1) = (1 x c)(c x 1)(1 x c)`.
    pub fn braid_holds(&self) -> bool {
        let d = self.dim_factor();
        for a in 0..d {
            for b in 0..d {
                for c in 0..d {
                    let mut start = BTreeMap::new();
                    start.insert([a, b, c], RatFunc::one());
                    let lhs =
                        self.apply_pair(&self.apply_pair(&self.apply_pair(&start, 0, 1), 1, 2), 0, 1);
                    let rhs =
                        self.apply_pair(&self.apply_pair(&self.apply_pair(&start, 1, 2), 0, 1), 1, 2);
                    if lhs != rhs {
                        return false;
                    }
                }
            }
        }
        true
    }
}
