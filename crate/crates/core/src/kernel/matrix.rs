//! Sparse exact matrices and row reduction over Q.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::element::Element;
use super::poly::{Poly, Rational, Ring, Scalar};
use super::KernelError;

/// Sparse column vector indexed by position.
pub type SparseVec = Element<usize>;

/// Row-major sparse matrix with polynomial entries in a tagged ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix {
    pub ring: Ring,
    nrows: usize,
    ncols: usize,
    rows: Vec<BTreeMap<usize, Poly>>,
}

impl SparseMatrix {
    pub fn zeros(ring: Ring, nrows: usize, ncols: usize) -> Self {
        SparseMatrix {
            ring,
            nrows,
            ncols,
            rows: vec![BTreeMap::new(); nrows],
        }
    }

    pub fn identity(ring: Ring, n: usize) -> Self {
        let mut m = Self::zeros(ring, n, n);
        for i in 0..n {
            m.set(i, i, Poly::one());
        }
        m
    }

    pub fn from_dense(ring: Ring, rows: Vec<Vec<Poly>>) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.len());
        let mut m = Self::zeros(ring, nrows, ncols);
        for (i, r) in rows.into_iter().enumerate() {
            assert_eq!(r.len(), ncols, "ragged matrix");
            for (j, v) in r.into_iter().enumerate() {
                m.set(i, j, v);
            }
        }
        m
    }

    pub fn from_rationals(rows: &[Vec<Rational>]) -> Self {
        Self::from_dense(
            Ring::Q,
            rows.iter()
                .map(|r| r.iter().cloned().map(Poly::constant).collect())
                .collect(),
        )
    }

    /// Build from ring-tagged scalars; every entry must share one ring
    /// (rationals embed in any polynomial ring).
    pub fn from_scalars(rows: Vec<Vec<Scalar>>) -> Result<Self, KernelError> {
        let mut ring = Ring::Q;
        for s in rows.iter().flatten() {
            ring = ring.join(&s.ring).ok_or_else(|| KernelError::MixedRings {
                left: ring.to_string(),
                right: s.ring.to_string(),
            })?;
        }
        let ncols = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != ncols) {
            return Err(KernelError::Shape("ragged rows".into()));
        }
        Ok(Self::from_dense(
            ring,
            rows.into_iter()
                .map(|r| r.into_iter().map(|s| s.value).collect())
                .collect(),
        ))
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn get(&self, i: usize, j: usize) -> Poly {
        self.rows[i].get(&j).cloned().unwrap_or_default()
    }

    pub fn set(&mut self, i: usize, j: usize, v: Poly) {
        assert!(i < self.nrows && j < self.ncols, "index out of range");
        if v.is_zero() {
            self.rows[i].remove(&j);
        } else {
            self.rows[i].insert(j, v);
        }
    }

    pub fn add_to(&mut self, i: usize, j: usize, v: &Poly) {
        if v.is_zero() {
            return;
        }
        let e = self.rows[i].entry(j).or_default();
        *e += v;
        if e.is_zero() {
            self.rows[i].remove(&j);
        }
    }

    pub fn row(&self, i: usize) -> &BTreeMap<usize, Poly> {
        &self.rows[i]
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(|r| r.is_empty())
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(|r| r.len()).sum()
    }

    /// All nonzero entries as (row, col, value), row-major.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &Poly)> {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(i, r)| r.iter().map(move |(j, v)| (i, *j, v)))
    }

    pub fn transpose(&self) -> SparseMatrix {
        let mut t = SparseMatrix::zeros(self.ring.clone(), self.ncols, self.nrows);
        for (i, j, v) in self.entries() {
            t.rows[j].insert(i, v.clone());
        }
        t
    }

    pub fn column(&self, j: usize) -> SparseVec {
        let mut v = SparseVec::zero();
        for (i, r) in self.rows.iter().enumerate() {
            if let Some(x) = r.get(&j) {
                v.add_term(i, x.clone());
            }
        }
        v
    }

    pub fn mul(&self, other: &SparseMatrix) -> Result<SparseMatrix, KernelError> {
        if self.ncols != other.nrows {
            return Err(KernelError::Shape(format!(
                "cannot compose {}x{} with {}x{}",
                self.nrows, self.ncols, other.nrows, other.ncols
            )));
        }
        let ring = self
            .ring
            .join(&other.ring)
            .ok_or_else(|| KernelError::MixedRings {
                left: self.ring.to_string(),
                right: other.ring.to_string(),
            })?;
        let mut out = SparseMatrix::zeros(ring, self.nrows, other.ncols);
        for (i, r) in self.rows.iter().enumerate() {
            let mut acc: BTreeMap<usize, Poly> = BTreeMap::new();
            for (k, a) in r {
                for (j, b) in &other.rows[*k] {
                    *acc.entry(*j).or_default() += &(a * b);
                }
            }
            acc.retain(|_, v| !v.is_zero());
            out.rows[i] = acc;
        }
        Ok(out)
    }

    pub fn apply(&self, v: &SparseVec) -> SparseVec {
        let mut out = SparseVec::zero();
        for (i, r) in self.rows.iter().enumerate() {
            let mut acc = Poly::zero();
            for (j, a) in r {
                let x = v.coeff(j);
                if !x.is_zero() {
                    acc += &(a * &x);
                }
            }
            out.add_term(i, acc);
        }
        out
    }

    /// Substitute a value for the ring variable.
    pub fn eval(&self, x: &Rational) -> SparseMatrix {
        let mut out = SparseMatrix::zeros(Ring::Q, self.nrows, self.ncols);
        for (i, j, v) in self.entries() {
            out.set(i, j, Poly::constant(v.eval(x)));
        }
        out
    }

    pub fn map_entries(&self, ring: Ring, f: impl Fn(&Poly) -> Poly) -> SparseMatrix {
        let mut out = SparseMatrix::zeros(ring, self.nrows, self.ncols);
        for (i, j, v) in self.entries() {
            out.set(i, j, f(v));
        }
        out
    }

    /// Rows as rational sparse maps; fails when an entry is not constant.
    pub fn rational_rows(&self) -> Result<Vec<BTreeMap<usize, Rational>>, KernelError> {
        self.rows
            .iter()
            .enumerate()
            .map(|(i, r)| {
                r.iter()
                    .map(|(j, v)| {
                        v.as_constant()
                            .map(|c| (*j, c))
                            .ok_or(KernelError::NonConstantEntry { row: i, col: *j })
                    })
                    .collect()
            })
            .collect()
    }

    /// Block-stack horizontally: [self | other].
    pub fn hstack(&self, other: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.nrows, other.nrows);
        let ring = self.ring.join(&other.ring).expect("mixed rings in hstack");
        let mut out = SparseMatrix::zeros(ring, self.nrows, self.ncols + other.ncols);
        for (i, j, v) in self.entries() {
            out.set(i, j, v.clone());
        }
        for (i, j, v) in other.entries() {
            out.set(i, self.ncols + j, v.clone());
        }
        out
    }

    /// Copy `block` into position (r0, c0).
    pub fn put_block(&mut self, r0: usize, c0: usize, block: &SparseMatrix) {
        for (i, j, v) in block.entries() {
            self.set(r0 + i, c0 + j, v.clone());
        }
    }
}

/// Incremental echelon basis of a subspace of Q^n.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    /// pivot column -> row normalized so the pivot entry is 1
    rows: BTreeMap<usize, BTreeMap<usize, Rational>>,
}

impl Echelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.keys().copied()
    }

    /// Reduce a vector against the current basis.
    pub fn reduce(&self, mut v: BTreeMap<usize, Rational>) -> BTreeMap<usize, Rational> {
        let mut cursor = 0usize;
        loop {
            let next = v
                .range(cursor..)
                .find(|(k, _)| self.rows.contains_key(k))
                .map(|(k, c)| (*k, c.clone()));
            let Some((k, c)) = next else { break };
            let prow = &self.rows[&k];
            for (j, a) in prow {
                let e = v.entry(*j).or_insert_with(Rational::zero);
                *e -= &c * a;
                if e.is_zero() {
                    v.remove(j);
                }
            }
            cursor = k + 1;
        }
        v
    }

    /// Insert a vector; returns true if it enlarged the span.
    pub fn insert(&mut self, v: BTreeMap<usize, Rational>) -> bool {
        let r = self.reduce(v);
        let Some((&p, lead)) = r.iter().next() else {
            return false;
        };
        let inv = Rational::one() / lead;
        let r: BTreeMap<usize, Rational> = r.into_iter().map(|(j, a)| (j, a * &inv)).collect();
        self.rows.insert(p, r);
        true
    }

    pub fn contains(&self, v: BTreeMap<usize, Rational>) -> bool {
        self.reduce(v).is_empty()
    }

    /// Fully reduce every row (reduced row echelon form).
    fn back_substitute(&mut self) {
        let pivots: Vec<usize> = self.rows.keys().rev().copied().collect();
        for p in pivots {
            let prow = self.rows[&p].clone();
            for (_, row) in self.rows.range_mut(..p) {
                if let Some(c) = row.get(&p).cloned() {
                    for (j, a) in &prow {
                        let e = row.entry(*j).or_insert_with(Rational::zero);
                        *e -= &c * a;
                        if e.is_zero() {
                            row.remove(j);
                        }
                    }
                }
            }
        }
    }
}

/// Result of exact row reduction over Q.
#[derive(Clone, Debug)]
pub struct QSolution {
    pub rank: usize,
    /// basis of the null space (vectors in the column space of the source)
    pub kernel: Vec<SparseVec>,
    /// basis of the column space (the pivot columns of the input)
    pub image: Vec<SparseVec>,
    pub pivot_columns: Vec<usize>,
}

/// Rank, kernel and image of a matrix over Q by sparse Gaussian elimination.
pub fn solve_rational(m: &SparseMatrix) -> Result<QSolution, KernelError> {
    let rows = m.rational_rows()?;
    let mut ech = Echelon::new();
    for r in rows {
        ech.insert(r);
    }
    ech.back_substitute();
    let pivots: Vec<usize> = ech.pivots().collect();
    let mut kernel = Vec::new();
    for f in 0..m.ncols() {
        if ech.rows.contains_key(&f) {
            continue;
        }
        let mut v = SparseVec::basis(f);
        for (p, row) in &ech.rows {
            if let Some(c) = row.get(&f) {
                v.add_term(*p, Poly::constant(-c.clone()));
            }
        }
        kernel.push(v);
    }
    let image = pivots.iter().map(|&j| m.column(j)).collect();
    Ok(QSolution {
        rank: pivots.len(),
        kernel,
        image,
        pivot_columns: pivots,
    })
}

pub fn rank_rational(m: &SparseMatrix) -> Result<usize, KernelError> {
    let mut ech = Echelon::new();
    for r in m.rational_rows()? {
        ech.insert(r);
    }
    Ok(ech.rank())
}

pub fn to_rational_map(v: &SparseVec) -> Result<BTreeMap<usize, Rational>, KernelError> {
    v.iter()
        .map(|(k, c)| {
            c.as_constant()
                .map(|x| (*k, x))
                .ok_or(KernelError::NonConstantEntry { row: *k, col: 0 })
        })
        .collect()
}
