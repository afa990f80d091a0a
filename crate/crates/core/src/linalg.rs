//! Sparse exact row reduction.
//!
//! Vectors are maps from column index to nonzero scalar. An [`Echelon`]
//! keeps its rows in reduced row echelon form: every row has pivot
//! coefficient one at its smallest column, and no other row has an entry
//! in that column. Rows may carry a tag vector that is transformed along
//! with them, which is how kernels and coordinates are recovered.

use std::collections::BTreeMap;

use crate::coeffs::{Field, Scalar};

pub type SparseVec = BTreeMap<usize, Scalar>;

pub fn axpy(dst: &mut SparseVec, c: &Scalar, src: &SparseVec) {
    if c.is_zero() {
        return;
    }
    for (&i, a) in src {
        let prod = c * a;
        match dst.get_mut(&i) {
            Some(existing) => {
                let sum = &*existing + &prod;
                if sum.is_zero() {
                    dst.remove(&i);
                } else {
                    *existing = sum;
                }
            }
            None => {
                dst.insert(i, prod);
            }
        }
    }
}

pub fn scale(v: &SparseVec, c: &Scalar) -> SparseVec {
    if c.is_zero() {
        return SparseVec::new();
    }
    v.iter().map(|(&i, a)| (i, a * c)).collect()
}

pub fn unit(field: Field, i: usize) -> SparseVec {
    let mut v = SparseVec::new();
    v.insert(i, field.one());
    v
}

#[derive(Debug, Clone)]
struct Row {
    vec: SparseVec,
    tag: SparseVec,
}

/// Outcome of inserting a vector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Insertion {
    /// The vector was independent and now owns this pivot column.
    Added(usize),
    /// The vector was in the span. The tag is `given_tag − Σ c_r tag_r`
    /// where `vector = Σ c_r row_r`; with unit tags this is a kernel vector.
    Dependent(SparseVec),
}

#[derive(Debug, Clone)]
pub struct Echelon {
    field: Field,
    rows: BTreeMap<usize, Row>,
}

impl Echelon {
    pub fn new(field: Field) -> Self {
        Echelon { field, rows: BTreeMap::new() }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        self.rows.contains_key(&col)
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.keys().copied()
    }

    /// Rows in pivot order.
    pub fn rows(&self) -> impl Iterator<Item = &SparseVec> {
        self.rows.values().map(|r| &r.vec)
    }

    pub fn row(&self, pivot: usize) -> Option<&SparseVec> {
        self.rows.get(&pivot).map(|r| &r.vec)
    }

    /// Reduces `v` against the rows. Returns the residual (no entries in
    /// pivot columns) and `Σ c_r tag_r` for the subtracted multiples.
    pub fn reduce_tagged(&self, v: &SparseVec) -> (SparseVec, SparseVec) {
        let mut res = v.clone();
        let mut tag = SparseVec::new();
        let hits: Vec<(usize, Scalar)> =
            v.iter().filter(|(c, _)| self.rows.contains_key(c)).map(|(&c, a)| (c, a.clone())).collect();
        for (col, _) in hits {
            // Rows are fully reduced, so subtracting one never creates an
            // entry in another pivot column; the coefficient is read live.
            let Some(c) = res.get(&col).cloned() else { continue };
            let row = &self.rows[&col];
            axpy(&mut res, &-&c, &row.vec);
            axpy(&mut tag, &c, &row.tag);
        }
        (res, tag)
    }

    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        let mut res = v.clone();
        let hits: Vec<usize> = v.keys().copied().filter(|c| self.rows.contains_key(c)).collect();
        for col in hits {
            let Some(c) = res.get(&col).cloned() else { continue };
            axpy(&mut res, &-&c, &self.rows[&col].vec);
        }
        res
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).is_empty()
    }

    pub fn insert(&mut self, v: &SparseVec) -> bool {
        matches!(self.insert_tagged(v, SparseVec::new()), Insertion::Added(_))
    }

    pub fn insert_tagged(&mut self, v: &SparseVec, tag: SparseVec) -> Insertion {
        let (res, sub) = self.reduce_tagged(v);
        let mut tag = tag;
        axpy(&mut tag, &self.field.from_i64(-1), &sub);
        let Some((&pivot, lead)) = res.iter().next() else {
            return Insertion::Dependent(tag);
        };
        let inv = lead.inv().expect("nonzero pivot");
        let vec = scale(&res, &inv);
        let tag = scale(&tag, &inv);
        // Clear the new pivot column from existing rows.
        for row in self.rows.values_mut() {
            if let Some(c) = row.vec.get(&pivot).cloned() {
                let neg = -&c;
                axpy(&mut row.vec, &neg, &vec);
                axpy(&mut row.tag, &neg, &tag);
            }
        }
        self.rows.insert(pivot, Row { vec, tag });
        Insertion::Added(pivot)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(field: Field, entries: &[(usize, i64)]) -> SparseVec {
        entries.iter().map(|&(i, c)| (i, field.from_i64(c))).filter(|(_, c)| !c.is_zero()).collect()
    }

    #[test]
    fn rank_and_kernel() {
        let f = Field::Rationals;
        let mut e = Echelon::new(f);
        let rows = [v(f, &[(0, 1), (1, 2)]), v(f, &[(1, 1), (2, 1)]), v(f, &[(0, 1), (1, 3), (2, 1)])];
        let mut kernel = Vec::new();
        for (i, r) in rows.iter().enumerate() {
            if let Insertion::Dependent(k) = e.insert_tagged(r, unit(f, i)) {
                kernel.push(k);
            }
        }
        assert_eq!(e.rank(), 2);
        assert_eq!(kernel.len(), 1);
        // r0 + r1 - r2 = 0
        let k = &kernel[0];
        let mut sum = SparseVec::new();
        for (&i, c) in k {
            axpy(&mut sum, c, &rows[i]);
        }
        assert!(sum.is_empty());
    }

    #[test]
    fn rows_stay_reduced() {
        let f = Field::Prime(7);
        let mut e = Echelon::new(f);
        e.insert(&v(f, &[(0, 1), (1, 1), (2, 1)]));
        e.insert(&v(f, &[(1, 1), (2, 3)]));
        for row in e.rows() {
            for p in e.pivots() {
                if row.keys().next() != Some(&p) {
                    assert!(!row.contains_key(&p));
                }
            }
        }
        assert!(e.contains(&v(f, &[(0, 1), (1, 2), (2, 4)])));
        assert!(!e.contains(&v(f, &[(2, 1)])));
    }
}
