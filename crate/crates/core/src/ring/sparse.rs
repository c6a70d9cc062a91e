use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{LaurentPoly, RationalFunction};

/// The ring operations the sparse operator needs.
pub trait RingElem: Clone + PartialEq {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
}

impl RingElem for LaurentPoly {
    fn zero() -> Self {
        LaurentPoly::zero()
    }
    fn one() -> Self {
        LaurentPoly::one()
    }
    fn is_zero(&self) -> bool {
        LaurentPoly::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
}

impl RingElem for RationalFunction {
    fn zero() -> Self {
        RationalFunction::zero()
    }
    fn one() -> Self {
        RationalFunction::one()
    }
    fn is_zero(&self) -> bool {
        RationalFunction::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
}

/// Sparse matrix with `rows x cols` shape; entry `(i, j)` maps basis vector
/// `j` to a multiple of basis vector `i`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SparseOperator<T> {
    rows: usize,
    cols: usize,
    entries: BTreeMap<(usize, usize), T>,
}

impl<T: RingElem> SparseOperator<T> {
    pub fn new(rows: usize, cols: usize) -> Self {
        SparseOperator { rows, cols, entries: BTreeMap::new() }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::new(n, n);
        for i in 0..n {
            m.set(i, i, T::one());
        }
        m
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn get(&self, i: usize, j: usize) -> T {
        self.entries.get(&(i, j)).cloned().unwrap_or_else(T::zero)
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        assert!(i < self.rows && j < self.cols, "index ({i},{j}) outside {}x{}", self.rows, self.cols);
        if v.is_zero() {
            self.entries.remove(&(i, j));
        } else {
            self.entries.insert((i, j), v);
        }
    }

    pub fn add_to(&mut self, i: usize, j: usize, v: &T) {
        let cur = self.get(i, j);
        self.set(i, j, cur.add(v));
    }

    pub fn entries(&self) -> impl Iterator<Item = (&(usize, usize), &T)> {
        self.entries.iter()
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    /// Matrix product `self * rhs`.
    pub fn compose(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.rows);
        let mut by_row: BTreeMap<usize, Vec<(usize, &T)>> = BTreeMap::new();
        for (&(i, j), v) in &rhs.entries {
            by_row.entry(i).or_default().push((j, v));
        }
        let mut out = Self::new(self.rows, rhs.cols);
        for (&(i, k), a) in &self.entries {
            if let Some(row) = by_row.get(&k) {
                for &(j, b) in row {
                    out.add_to(i, j, &a.mul(b));
                }
            }
        }
        out
    }

    pub fn plus(&self, rhs: &Self) -> Self {
        assert_eq!(self.shape(), rhs.shape());
        let mut out = self.clone();
        for (&(i, j), v) in &rhs.entries {
            out.add_to(i, j, v);
        }
        out
    }

    pub fn scaled(&self, c: &T) -> Self {
        let mut out = Self::new(self.rows, self.cols);
        for (&(i, j), v) in &self.entries {
            out.set(i, j, v.mul(c));
        }
        out
    }

    pub fn minus(&self, rhs: &Self) -> Self {
        self.plus(&rhs.scaled(&T::one().neg()))
    }

    /// Kronecker product; the index of `(a, b)` is `a * dim(rhs) + b`.
    pub fn kron(&self, rhs: &Self) -> Self {
        let mut out = Self::new(self.rows * rhs.rows, self.cols * rhs.cols);
        for (&(i, j), a) in &self.entries {
            for (&(k, l), b) in &rhs.entries {
                out.set(i * rhs.rows + k, j * rhs.cols + l, a.mul(b));
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compose_and_kron() {
        let q = LaurentPoly::q();
        let mut a = SparseOperator::<LaurentPoly>::new(2, 2);
        a.set(0, 1, q.clone());
        a.set(1, 0, LaurentPoly::one());
        let a2 = a.compose(&a);
        assert_eq!(a2, SparseOperator::identity(2).scaled(&q));
        let k = a.kron(&SparseOperator::identity(2));
        assert_eq!(k.shape(), (4, 4));
        assert_eq!(k.get(0, 2), q);
        assert_eq!(k.compose(&k), SparseOperator::identity(4).scaled(&q));
        assert!(a.minus(&a).is_zero());
    }
}
