//! Finite cochain complexes and their cohomology.

use super::matrix::{solve_rational, to_rational_map, Echelon, SparseMatrix, SparseVec};
use super::poly::{Poly, Rational, Ring};
use super::smith::smith_form;
use super::KernelError;

/// A bounded cochain complex `C^lo -> ... -> C^hi` of free modules.
#[derive(Clone, Debug)]
pub struct FiniteComplex {
    pub ring: Ring,
    lo: i64,
    dims: Vec<usize>,
    /// `diffs[k]` maps degree `lo + k` to `lo + k + 1`
    diffs: Vec<SparseMatrix>,
}

/// Cohomology in one degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeCohomology {
    pub degree: i64,
    pub free_rank: usize,
    /// monic non-unit invariant factors (empty over Q)
    pub torsion: Vec<Poly>,
    /// cocycles independent modulo coboundaries (computed over Q only)
    pub representatives: Vec<SparseVec>,
}

impl FiniteComplex {
    /// Components have dimensions `dims` starting at degree `lo`; `diffs`
    /// must hold one matrix per consecutive pair.
    pub fn new(
        ring: Ring,
        lo: i64,
        dims: Vec<usize>,
        diffs: Vec<SparseMatrix>,
    ) -> Result<Self, KernelError> {
        if diffs.len() + 1 != dims.len().max(1) {
            return Err(KernelError::Shape(format!(
                "{} components need {} differentials, got {}",
                dims.len(),
                dims.len().saturating_sub(1),
                diffs.len()
            )));
        }
        for (k, d) in diffs.iter().enumerate() {
            if d.nrows() != dims[k + 1] || d.ncols() != dims[k] {
                return Err(KernelError::Shape(format!(
                    "differential out of degree {} is {}x{}, expected {}x{}",
                    lo + k as i64,
                    d.nrows(),
                    d.ncols(),
                    dims[k + 1],
                    dims[k]
                )));
            }
            if ring.join(&d.ring).as_ref() != Some(&ring) {
                return Err(KernelError::MixedRings {
                    left: ring.to_string(),
                    right: d.ring.to_string(),
                });
            }
            if ring.is_field() && d.rational_rows().is_err() {
                return Err(KernelError::Shape(
                    "polynomial entry in a complex over Q".into(),
                ));
            }
        }
        for k in 1..diffs.len() {
            let sq = diffs[k].mul(&diffs[k - 1])?;
            if !sq.is_zero() {
                return Err(KernelError::DSquaredNonzero {
                    degree: lo + k as i64 - 1,
                });
            }
        }
        Ok(FiniteComplex {
            ring,
            lo,
            dims,
            diffs,
        })
    }

    pub fn lowest_degree(&self) -> i64 {
        self.lo
    }

    pub fn degrees(&self) -> impl Iterator<Item = i64> + '_ {
        (0..self.dims.len()).map(move |k| self.lo + k as i64)
    }

    pub fn dim(&self, degree: i64) -> usize {
        self.index(degree).map_or(0, |k| self.dims[k])
    }

    pub fn differential(&self, degree: i64) -> Option<&SparseMatrix> {
        self.index(degree).and_then(|k| self.diffs.get(k))
    }

    fn index(&self, degree: i64) -> Option<usize> {
        let k = degree - self.lo;
        (k >= 0 && (k as usize) < self.dims.len()).then_some(k as usize)
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.degrees().map(|d| sign(d) * self.dim(d) as i64).sum()
    }

    /// Substitute a value for the ring variable.
    pub fn specialize(&self, x: &Rational) -> FiniteComplex {
        FiniteComplex {
            ring: Ring::Q,
            lo: self.lo,
            dims: self.dims.clone(),
            diffs: self.diffs.iter().map(|d| d.eval(x)).collect(),
        }
    }

    /// Reorder the basis of one component: new basis vector `i` is old `perm[i]`.
    pub fn permute_basis(&self, degree: i64, perm: &[usize]) -> FiniteComplex {
        let mut out = self.clone();
        let Some(k) = self.index(degree) else {
            return out;
        };
        assert_eq!(perm.len(), self.dims[k]);
        let mut inv = vec![0; perm.len()];
        for (new, &old) in perm.iter().enumerate() {
            inv[old] = new;
        }
        if k < self.diffs.len() {
            let d = &self.diffs[k];
            let mut nd = SparseMatrix::zeros(d.ring.clone(), d.nrows(), d.ncols());
            for (i, j, v) in d.entries() {
                nd.set(i, inv[j], v.clone());
            }
            out.diffs[k] = nd;
        }
        if k > 0 {
            let d = &self.diffs[k - 1];
            let mut nd = SparseMatrix::zeros(d.ring.clone(), d.nrows(), d.ncols());
            for (i, j, v) in d.entries() {
                nd.set(inv[i], j, v.clone());
            }
            out.diffs[k - 1] = nd;
        }
        out
    }
}

fn sign(d: i64) -> i64 {
    if d.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// Per-degree cohomology. Over Q the result carries representative cocycles;
/// over a polynomial ring it reports the free rank and the torsion factors.
pub fn cohomology(c: &FiniteComplex) -> Result<Vec<DegreeCohomology>, KernelError> {
    if c.ring.is_field() {
        rational_cohomology(c)
    } else {
        Ok(polynomial_cohomology(c))
    }
}

fn rational_cohomology(c: &FiniteComplex) -> Result<Vec<DegreeCohomology>, KernelError> {
    let sols: Vec<_> = c
        .diffs
        .iter()
        .map(solve_rational)
        .collect::<Result<_, _>>()?;
    let mut out = Vec::new();
    for (k, &n) in c.dims.iter().enumerate() {
        let degree = c.lo + k as i64;
        let kernel: Vec<SparseVec> = match sols.get(k) {
            Some(s) => s.kernel.clone(),
            None => (0..n).map(SparseVec::basis).collect(),
        };
        let mut ech = Echelon::new();
        if k > 0 {
            for v in &sols[k - 1].image {
                ech.insert(to_rational_map(v)?);
            }
        }
        let mut reps = Vec::new();
        for v in kernel {
            if ech.insert(to_rational_map(&v)?) {
                reps.push(v);
            }
        }
        out.push(DegreeCohomology {
            degree,
            free_rank: reps.len(),
            torsion: Vec::new(),
            representatives: reps,
        });
    }
    Ok(out)
}

fn polynomial_cohomology(c: &FiniteComplex) -> Vec<DegreeCohomology> {
    let forms: Vec<_> = c.diffs.iter().map(smith_form).collect();
    c.dims
        .iter()
        .enumerate()
        .map(|(k, &n)| {
            let out_rank = forms.get(k).map_or(0, |f| f.rank());
            let in_rank = if k > 0 { forms[k - 1].rank() } else { 0 };
            DegreeCohomology {
                degree: c.lo + k as i64,
                free_rank: n - out_rank - in_rank,
                torsion: if k > 0 {
                    forms[k - 1].torsion()
                } else {
                    Vec::new()
                },
                representatives: Vec::new(),
            }
        })
        .collect()
}

/// Dimension over Q of the fibre at `x = a` predicted by a decomposition over
/// Q[x]: free part plus one copy per torsion factor vanishing at `a`, in the
/// factor's degree and the degree below.
pub fn fibre_dimensions(h: &[DegreeCohomology], a: &Rational) -> Vec<(i64, usize)> {
    let vanishes = |f: &Poly| f.eval(a) == Rational::from_integer(0.into());
    h.iter()
        .enumerate()
        .map(|(k, dc)| {
            let here = dc.torsion.iter().filter(|f| vanishes(f)).count();
            let above = h
                .get(k + 1)
                .map_or(0, |n| n.torsion.iter().filter(|f| vanishes(f)).count());
            (dc.degree, dc.free_rank + here + above)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::poly::int;

    #[test]
    fn zero_differential_two_lines() {
        let c = FiniteComplex::new(
            Ring::Q,
            0,
            vec![1, 1],
            vec![SparseMatrix::zeros(Ring::Q, 1, 1)],
        )
        .unwrap();
        let h = cohomology(&c).unwrap();
        assert_eq!(h[0].free_rank, 1);
        assert_eq!(h[1].free_rank, 1);
    }

    #[test]
    fn multiplication_by_u_gives_torsion_in_target() {
        let c = FiniteComplex::new(
            Ring::U,
            0,
            vec![1, 1],
            vec![SparseMatrix::from_dense(Ring::U, vec![vec![Poly::var()]])],
        )
        .unwrap();
        let h = cohomology(&c).unwrap();
        assert_eq!(h[0].free_rank, 0);
        assert!(h[0].torsion.is_empty());
        assert_eq!(h[1].free_rank, 0);
        assert_eq!(h[1].torsion, vec![Poly::var()]);
        let fib = fibre_dimensions(&h, &int(0));
        let direct = cohomology(&c.specialize(&int(0))).unwrap();
        assert_eq!(
            fib,
            direct
                .iter()
                .map(|d| (d.degree, d.free_rank))
                .collect::<Vec<_>>()
        );
    }

    #[test]
    fn nonzero_square_names_degree() {
        let one = SparseMatrix::identity(Ring::Q, 1);
        let err =
            FiniteComplex::new(Ring::Q, 3, vec![1, 1, 1], vec![one.clone(), one]).unwrap_err();
        assert_eq!(err, KernelError::DSquaredNonzero { degree: 3 });
    }
}
