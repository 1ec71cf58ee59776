//! Smith normal form over Q[x], general and graded.

use std::collections::BTreeMap;

use num_traits::Zero;

use super::matrix::{SparseMatrix, SparseVec};
use super::poly::{Poly, Rational};

/// Invariant factors of a matrix over Q[x], monic and ordered by divisibility.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    pub factors: Vec<Poly>,
    /// invertible column transform V; the trailing columns span the kernel
    pub transform: Vec<Vec<Poly>>,
}

impl SmithForm {
    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    /// Factors that are not units: the torsion of the cokernel.
    pub fn torsion(&self) -> Vec<Poly> {
        self.factors
            .iter()
            .filter(|f| !f.is_one())
            .cloned()
            .collect()
    }

    /// Column `j` of the transform as a sparse vector.
    pub fn transform_column(&self, j: usize) -> SparseVec {
        self.transform
            .iter()
            .enumerate()
            .map(|(i, row)| (i, row[j].clone()))
            .collect()
    }

    /// A basis of the kernel over the polynomial ring.
    pub fn kernel_basis(&self) -> Vec<SparseVec> {
        (self.rank()..self.transform.len())
            .map(|j| self.transform_column(j))
            .collect()
    }
}

/// Euclidean Smith normal form over Q[x] on a dense copy of the matrix.
pub fn smith_form(m: &SparseMatrix) -> SmithForm {
    let mut a: Vec<Vec<Poly>> = (0..m.nrows())
        .map(|i| (0..m.ncols()).map(|j| m.get(i, j)).collect())
        .collect();
    let nr = m.nrows();
    let nc = m.ncols();
    let mut v: Vec<Vec<Poly>> = (0..nc)
        .map(|i| {
            (0..nc)
                .map(|j| if i == j { Poly::one() } else { Poly::zero() })
                .collect()
        })
        .collect();
    let mut factors = Vec::new();
    let mut t = 0;
    while t < nr.min(nc) {
        let Some((pi, pj)) = min_degree_entry(&a, t) else {
            break;
        };
        a.swap(t, pi);
        for row in a.iter_mut().chain(v.iter_mut()) {
            row.swap(t, pj);
        }
        loop {
            let mut dirty = false;
            for i in t + 1..nr {
                if a[i][t].is_zero() {
                    continue;
                }
                let (q, r) = a[i][t].div_rem(&a[t][t]);
                for j in t..nc {
                    let s = &q * &a[t][j];
                    a[i][j] -= &s;
                }
                if !r.is_zero() {
                    a.swap(t, i);
                    dirty = true;
                }
            }
            for j in t + 1..nc {
                if a[t][j].is_zero() {
                    continue;
                }
                let (q, r) = a[t][j].div_rem(&a[t][t]);
                for row in a.iter_mut().skip(t).chain(v.iter_mut()) {
                    let s = &q * &row[t];
                    row[j] -= &s;
                }
                if !r.is_zero() {
                    for row in a.iter_mut().chain(v.iter_mut()) {
                        row.swap(t, j);
                    }
                    dirty = true;
                }
            }
            if dirty {
                continue;
            }
            // pivot must divide the remaining block
            let bad = (t + 1..nr)
                .flat_map(|i| (t + 1..nc).map(move |j| (i, j)))
                .find(|&(i, j)| !a[t][t].divides(&a[i][j]));
            match bad {
                Some((i, _)) => {
                    for j in t..nc {
                        let v = a[i][j].clone();
                        a[t][j] += &v;
                    }
                }
                None => break,
            }
        }
        factors.push(a[t][t].monic());
        t += 1;
    }
    SmithForm {
        factors,
        transform: v,
    }
}

fn min_degree_entry(a: &[Vec<Poly>], t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, usize)> = None;
    for (i, row) in a.iter().enumerate().skip(t) {
        for (j, v) in row.iter().enumerate().skip(t) {
            if let Some(d) = v.degree() {
                if best.is_none_or(|b| d < b.0) {
                    best = Some((d, i, j));
                }
            }
        }
    }
    best.map(|(_, i, j)| (i, j))
}

/// A homogeneous matrix over a graded polynomial ring: entry (i, j) is
/// `c_ij · x^(row_weight[i] - col_weight[j])`, measured in powers of x.
#[derive(Clone, Debug)]
pub struct GradedMatrix {
    pub row_weight: Vec<i64>,
    pub col_weight: Vec<i64>,
    pub rows: Vec<BTreeMap<usize, Rational>>,
}

/// Outcome of graded elimination.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedSmith {
    /// (pivot row, pivot column, exponent k) for each factor x^k
    pub pivots: Vec<(usize, usize, i64)>,
}

impl GradedSmith {
    pub fn exponents(&self) -> Vec<i64> {
        let mut e: Vec<i64> = self.pivots.iter().map(|p| p.2).collect();
        e.sort();
        e
    }
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
#[error("entry ({row}, {col}) would need a negative power of the variable")]
pub struct NotHomogeneous {
    pub row: usize,
    pub col: usize,
}

impl GradedMatrix {
    /// Build from polynomial entries, checking each is a monomial of the
    /// exponent dictated by the weights.
    pub fn from_sparse(
        m: &SparseMatrix,
        row_weight: Vec<i64>,
        col_weight: Vec<i64>,
    ) -> Result<Self, NotHomogeneous> {
        let mut rows = vec![BTreeMap::new(); m.nrows()];
        for (i, j, v) in m.entries() {
            let e = row_weight[i] - col_weight[j];
            let ok = e >= 0 && v.is_monomial() && v.degree() == Some(e as usize);
            if !ok {
                return Err(NotHomogeneous { row: i, col: j });
            }
            rows[i].insert(j, v.coeff(e as usize));
        }
        Ok(GradedMatrix {
            row_weight,
            col_weight,
            rows,
        })
    }
}

/// Smith form of a homogeneous matrix: each pivot is chosen with minimal
/// exponent so that elimination never needs division by the variable.
pub fn graded_smith(m: &GradedMatrix) -> GradedSmith {
    let mut rows: Vec<Option<BTreeMap<usize, Rational>>> =
        m.rows.iter().cloned().map(Some).collect();
    let mut pivots = Vec::new();
    loop {
        let mut best: Option<(i64, usize, usize)> = None;
        for (i, r) in rows.iter().enumerate() {
            let Some(r) = r else { continue };
            for j in r.keys() {
                let e = m.row_weight[i] - m.col_weight[*j];
                if best.is_none_or(|b| e < b.0) {
                    best = Some((e, i, *j));
                }
            }
        }
        let Some((e, pi, pj)) = best else { break };
        let prow = rows[pi].take().expect("pivot row present");
        let pc = prow[&pj].clone();
        for r in rows.iter_mut().flatten() {
            let Some(c) = r.get(&pj).cloned() else {
                continue;
            };
            let f = c / &pc;
            for (j, v) in &prow {
                let entry = r.entry(*j).or_insert_with(Rational::zero);
                *entry -= &f * v;
                if entry.is_zero() {
                    r.remove(j);
                }
            }
        }
        pivots.push((pi, pj, e));
    }
    GradedSmith { pivots }
}
