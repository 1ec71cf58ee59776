//! Mixed complexes (modules over Λ = H_•(T)), free complexes over
//! Q[u_1..u_n], the Koszul functors between them, Cartan models of linear
//! torus actions and localization checks.
//!
//! Degrees are cohomological: d has degree +1, each h_i degree −1 and each
//! u_i degree 2.

mod cartan;
mod localize;
#[cfg(test)]
mod tests;

use std::collections::BTreeMap;
use std::fmt;

use crate::kernel::matrix::rank_rational;
use crate::kernel::{
    cohomology, graded_smith, FiniteComplex, GradedMatrix, KernelError, Poly, Rational, Ring,
    SparseMatrix,
};

pub use cartan::{cartan_model, CartanModel};
pub use localize::{cone, localize_check, LocalizationVerdict};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EquivariantError {
    #[error(transparent)]
    Kernel(#[from] KernelError),
    #[error("{op} maps {from} (degree {from_degree}) to {to} (degree {to_degree})")]
    Degree {
        op: String,
        from: String,
        to: String,
        from_degree: i64,
        to_degree: i64,
    },
    #[error("{relation} fails on {witness}")]
    Relation { relation: String, witness: String },
    #[error("the differential is not u-linear: it has a term of u-degree {0}")]
    NotULinear(u32),
    #[error("only one torus variable is supported here, got {0}")]
    MultiVariable(usize),
    #[error("{0}")]
    Invalid(String),
}

/// Group basis indices by degree.
pub(crate) fn by_degree(degrees: &[i64]) -> BTreeMap<i64, Vec<usize>> {
    let mut out: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
    for (i, d) in degrees.iter().enumerate() {
        out.entry(*d).or_default().push(i);
    }
    out
}

fn restrict(m: &SparseMatrix, rows: &[usize], cols: &[usize]) -> SparseMatrix {
    let mut out = SparseMatrix::zeros(m.ring.clone(), rows.len(), cols.len());
    for (r, &i) in rows.iter().enumerate() {
        for (c, &j) in cols.iter().enumerate() {
            let v = m.get(i, j);
            if !v.is_zero() {
                out.set(r, c, v);
            }
        }
    }
    out
}

fn square_matrix(n: usize) -> SparseMatrix {
    SparseMatrix::zeros(Ring::Q, n, n)
}

fn add(a: &SparseMatrix, b: &SparseMatrix) -> SparseMatrix {
    let mut out = a.clone();
    for (i, j, v) in b.entries() {
        out.add_to(i, j, v);
    }
    out
}

/// Check that every entry of `m` moves degree by `shift`.
fn check_degree(
    names: &[String],
    degrees: &[i64],
    m: &SparseMatrix,
    shift: i64,
    op: &str,
) -> Result<(), EquivariantError> {
    if m.nrows() != degrees.len() || m.ncols() != degrees.len() {
        return Err(EquivariantError::Invalid(format!(
            "{op} must be {0}x{0}",
            degrees.len()
        )));
    }
    for (i, j, _) in m.entries() {
        if degrees[i] != degrees[j] + shift {
            return Err(EquivariantError::Degree {
                op: op.to_string(),
                from: names[j].clone(),
                to: names[i].clone(),
                from_degree: degrees[j],
                to_degree: degrees[i],
            });
        }
    }
    Ok(())
}

fn first_nonzero(names: &[String], m: &SparseMatrix) -> Option<String> {
    m.entries()
        .next()
        .map(|(i, j, v)| format!("{} -> {} {}", names[j], v.render(""), names[i]))
}

/// A graded Q-vector space with d of degree +1 and anticommuting h_i of
/// degree −1 satisfying d² = 0, h_i h_j + h_j h_i = 0, d h_i + h_i d = 0.
/// Matrices act on column vectors: entry (i, j) is the coefficient of
/// basis vector i in the image of basis vector j.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MixedComplex {
    pub names: Vec<String>,
    pub degrees: Vec<i64>,
    pub d: SparseMatrix,
    pub h: Vec<SparseMatrix>,
}

impl MixedComplex {
    pub fn new(
        names: Vec<String>,
        degrees: Vec<i64>,
        d: SparseMatrix,
        h: Vec<SparseMatrix>,
    ) -> Result<Self, EquivariantError> {
        if names.len() != degrees.len() {
            return Err(EquivariantError::Invalid(
                "one degree per basis element".into(),
            ));
        }
        for (m, shift, op) in std::iter::once((&d, 1, "d".to_string())).chain(
            h.iter()
                .enumerate()
                .map(|(i, m)| (m, -1, format!("h{}", i + 1))),
        ) {
            if m.ring != Ring::Q {
                return Err(EquivariantError::Invalid(format!(
                    "{op} must have rational entries"
                )));
            }
            check_degree(&names, &degrees, m, shift, &op)?;
        }
        let c = MixedComplex {
            names,
            degrees,
            d,
            h,
        };
        c.check_relations()?;
        Ok(c)
    }

    fn check_relations(&self) -> Result<(), EquivariantError> {
        let fail = |relation: String, m: &SparseMatrix| -> Result<(), EquivariantError> {
            match first_nonzero(&self.names, m) {
                Some(witness) => Err(EquivariantError::Relation { relation, witness }),
                None => Ok(()),
            }
        };
        fail("d∘d = 0".into(), &self.d.mul(&self.d)?)?;
        for (i, hi) in self.h.iter().enumerate() {
            fail(
                format!("d h{0} + h{0} d = 0", i + 1),
                &add(&self.d.mul(hi)?, &hi.mul(&self.d)?),
            )?;
            for (j, hj) in self.h.iter().enumerate().skip(i) {
                fail(
                    format!("h{} h{} + h{} h{} = 0", i + 1, j + 1, j + 1, i + 1),
                    &add(&hi.mul(hj)?, &hj.mul(hi)?),
                )?;
            }
        }
        Ok(())
    }

    /// Zero differential, no h, generators in the given degrees.
    pub fn trivial(
        names: Vec<String>,
        degrees: Vec<i64>,
        rank: usize,
    ) -> Result<Self, EquivariantError> {
        let n = degrees.len();
        MixedComplex::new(
            names,
            degrees,
            square_matrix(n),
            vec![square_matrix(n); rank],
        )
    }

    pub fn len(&self) -> usize {
        self.degrees.len()
    }

    pub fn is_empty(&self) -> bool {
        self.degrees.is_empty()
    }

    pub fn rank(&self) -> usize {
        self.h.len()
    }

    /// (degree, dim H^degree(N, d)) for degrees with nonzero cohomology.
    pub fn cohomology(&self) -> Result<Vec<(i64, usize)>, EquivariantError> {
        Ok(d_cohomology(&self.degrees, &self.d)?)
    }
}

fn d_cohomology(degrees: &[i64], d: &SparseMatrix) -> Result<Vec<(i64, usize)>, KernelError> {
    let blocks = by_degree(degrees);
    let (Some(&lo), Some(&hi)) = (blocks.keys().next(), blocks.keys().last()) else {
        return Ok(Vec::new());
    };
    let empty = Vec::new();
    let idx = |k: i64| blocks.get(&k).unwrap_or(&empty);
    let dims = (lo..=hi).map(|k| idx(k).len()).collect();
    let diffs = (lo..hi).map(|k| restrict(d, idx(k + 1), idx(k))).collect();
    let c = FiniteComplex::new(Ring::Q, lo, dims, diffs)?;
    Ok(cohomology(&c)?
        .into_iter()
        .filter(|h| h.free_rank > 0)
        .map(|h| (h.degree, h.free_rank))
        .collect())
}

/// A free graded module over Q[u_1..u_n] on generators of the given degrees
/// with differential D = Σ_α u^α D_α of degree +1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UComplex {
    pub names: Vec<String>,
    pub degrees: Vec<i64>,
    pub nvars: usize,
    /// exponent vector α ↦ D_α
    pub terms: BTreeMap<Vec<u32>, SparseMatrix>,
}

/// A finitely generated graded Q[u]-module: free generators by degree and
/// cyclic torsion Q[u]/(u^e) generated in a degree.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GradedModule {
    pub free: Vec<i64>,
    /// (degree, exponent e)
    pub torsion: Vec<(i64, u32)>,
}

impl GradedModule {
    pub fn is_zero(&self) -> bool {
        self.free.is_empty() && self.torsion.is_empty()
    }

    pub fn is_torsion(&self) -> bool {
        self.free.is_empty()
    }

    /// u^e for the largest torsion exponent.
    pub fn annihilator(&self) -> Option<Poly> {
        if !self.free.is_empty() {
            return None;
        }
        let e = self.torsion.iter().map(|t| t.1).max().unwrap_or(0);
        Some(Poly::monomial(Rational::from_integer(1.into()), e as usize))
    }

    /// dim_Q of the degree-k part.
    pub fn dim(&self, k: i64) -> usize {
        let free = self
            .free
            .iter()
            .filter(|&&d| d <= k && (k - d) % 2 == 0)
            .count();
        let tors = self
            .torsion
            .iter()
            .filter(|&&(d, e)| d <= k && (k - d) % 2 == 0 && (k - d) / 2 < e as i64)
            .count();
        free + tors
    }
}

impl fmt::Display for GradedModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut parts: Vec<String> = self
            .free
            .iter()
            .map(|d| format!("Q[u] in degree {d}"))
            .collect();
        for (d, e) in &self.torsion {
            parts.push(match e {
                1 => format!("Q in degree {d}"),
                e => format!("Q[u]/(u^{e}) in degree {d}"),
            });
        }
        write!(f, "{}", parts.join(" ⊕ "))
    }
}

fn multi_binomial_exponents(n: usize, total: u32) -> Vec<Vec<u32>> {
    if n == 0 {
        return if total == 0 {
            vec![Vec::new()]
        } else {
            Vec::new()
        };
    }
    let mut out = Vec::new();
    for first in (0..=total).rev() {
        for mut rest in multi_binomial_exponents(n - 1, total - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

impl UComplex {
    pub fn new(
        names: Vec<String>,
        degrees: Vec<i64>,
        nvars: usize,
        terms: BTreeMap<Vec<u32>, SparseMatrix>,
    ) -> Result<Self, EquivariantError> {
        if names.len() != degrees.len() {
            return Err(EquivariantError::Invalid("one degree per generator".into()));
        }
        for (alpha, m) in &terms {
            if alpha.len() != nvars {
                return Err(EquivariantError::Invalid(format!(
                    "exponent {alpha:?} needs {nvars} entries"
                )));
            }
            let shift = 1 - 2 * alpha.iter().map(|&a| a as i64).sum::<i64>();
            check_degree(&names, &degrees, m, shift, &format!("D{alpha:?}"))?;
        }
        let mut c = UComplex {
            names,
            degrees,
            nvars,
            terms,
        };
        c.terms.retain(|_, m| !m.is_zero());
        for (alpha, m) in c.square()? {
            if let Some(w) = first_nonzero(&c.names, &m) {
                return Err(EquivariantError::Relation {
                    relation: format!("D∘D = 0 at u^{alpha:?}"),
                    witness: w,
                });
            }
        }
        Ok(c)
    }

    /// The u^α coefficients of D∘D.
    pub fn square(&self) -> Result<BTreeMap<Vec<u32>, SparseMatrix>, KernelError> {
        let mut out: BTreeMap<Vec<u32>, SparseMatrix> = BTreeMap::new();
        for (a, ma) in &self.terms {
            for (b, mb) in &self.terms {
                let key: Vec<u32> = a.iter().zip(b).map(|(x, y)| x + y).collect();
                let p = ma.mul(mb)?;
                let e = out.entry(key).or_insert_with(|| square_matrix(self.len()));
                *e = add(e, &p);
            }
        }
        out.retain(|_, m| !m.is_zero());
        Ok(out)
    }

    pub fn len(&self) -> usize {
        self.degrees.len()
    }

    pub fn is_empty(&self) -> bool {
        self.degrees.is_empty()
    }

    /// Set every u_i to 0, leaving (generators, D_0).
    pub fn at_zero(&self) -> Result<Vec<(i64, usize)>, EquivariantError> {
        let zero = vec![0; self.nvars];
        let d0 = self
            .terms
            .get(&zero)
            .cloned()
            .unwrap_or_else(|| square_matrix(self.len()));
        Ok(d_cohomology(&self.degrees, &d0)?)
    }

    /// Basis of the degree-k part: (generator, exponent vector).
    fn graded_piece(&self, k: i64) -> Vec<(usize, Vec<u32>)> {
        let mut out = Vec::new();
        for (g, &d) in self.degrees.iter().enumerate() {
            if d > k || (k - d) % 2 != 0 {
                continue;
            }
            for alpha in multi_binomial_exponents(self.nvars, ((k - d) / 2) as u32) {
                out.push((g, alpha));
            }
        }
        out
    }

    fn piece_map(&self, k: i64) -> Result<SparseMatrix, KernelError> {
        let src = self.graded_piece(k);
        let dst = self.graded_piece(k + 1);
        let pos: BTreeMap<&(usize, Vec<u32>), usize> =
            dst.iter().enumerate().map(|(i, x)| (x, i)).collect();
        let mut m = SparseMatrix::zeros(Ring::Q, dst.len(), src.len());
        for (c, (g, alpha)) in src.iter().enumerate() {
            for (beta, db) in &self.terms {
                for (t, v) in db.column(*g).iter() {
                    let key = (
                        *t,
                        alpha
                            .iter()
                            .zip(beta)
                            .map(|(x, y)| x + y)
                            .collect::<Vec<u32>>(),
                    );
                    let r = pos[&key];
                    m.add_to(r, c, v);
                }
            }
        }
        Ok(m)
    }

    /// dim_Q H^k.
    pub fn hilbert(&self, k: i64) -> Result<usize, EquivariantError> {
        let dim = self.graded_piece(k).len();
        let out_rank = rank_rational(&self.piece_map(k)?)?;
        let in_rank = rank_rational(&self.piece_map(k - 1)?)?;
        Ok(dim - out_rank - in_rank)
    }

    /// The cohomology as a graded Q[u]-module (one variable only).
    pub fn module(&self) -> Result<GradedModule, EquivariantError> {
        if self.nvars != 1 {
            return Err(EquivariantError::MultiVariable(self.nvars));
        }
        let n = self.len();
        let mut rows = vec![BTreeMap::new(); n];
        for m in self.terms.values() {
            for (i, j, v) in m.entries() {
                let c = v.as_constant().expect("rational entries");
                rows[i].insert(j, c);
            }
        }
        let gm = GradedMatrix {
            row_weight: self.degrees.iter().map(|d| -d).collect(),
            col_weight: self.degrees.iter().map(|d| -(d + 1)).collect(),
            rows,
        };
        let mut module = GradedModule::default();
        for (row, _, e) in graded_smith(&gm).pivots {
            if e > 0 {
                module.torsion.push((self.degrees[row], (e / 2) as u32));
            }
        }
        module.torsion.sort();
        let (Some(&lo), Some(&hi)) = (self.degrees.iter().min(), self.degrees.iter().max()) else {
            return Ok(module);
        };
        let mut free_upto: BTreeMap<i64, usize> = BTreeMap::new();
        for k in lo..=hi + 2 {
            let tors = GradedModule {
                free: Vec::new(),
                torsion: module.torsion.clone(),
            }
            .dim(k);
            let f = self.hilbert(k)? - tors;
            let below = free_upto.get(&(k - 2)).copied().unwrap_or(0);
            if k <= hi {
                module.free.extend(std::iter::repeat_n(k, f - below));
            } else if f != below {
                return Err(EquivariantError::Invalid(
                    "inconsistent Hilbert function".into(),
                ));
            }
            free_upto.insert(k, f);
        }
        Ok(module)
    }
}

/// t(N): the free Q[u_1..u_n]-module on N with D = d + Σ u_i h_i.
pub fn koszul_t(n: &MixedComplex) -> Result<UComplex, EquivariantError> {
    let r = n.rank();
    let mut terms = BTreeMap::new();
    terms.insert(vec![0; r], n.d.clone());
    for (i, h) in n.h.iter().enumerate() {
        let mut e = vec![0; r];
        e[i] = 1;
        terms.insert(e, h.clone());
    }
    UComplex::new(n.names.clone(), n.degrees.clone(), r, terms)
}

/// h(M) = M/(u_1..u_n)M with d = D_0 and h_i = D_{e_i}; needs D to be
/// u-linear.
pub fn koszul_h(m: &UComplex) -> Result<MixedComplex, EquivariantError> {
    let len = m.len();
    let mut d = square_matrix(len);
    let mut h = vec![square_matrix(len); m.nvars];
    for (alpha, mat) in &m.terms {
        let total: u32 = alpha.iter().sum();
        match total {
            0 => d = mat.clone(),
            1 => {
                let i = alpha.iter().position(|&a| a == 1).expect("unit exponent");
                h[i] = mat.clone();
            }
            t => return Err(EquivariantError::NotULinear(t)),
        }
    }
    MixedComplex::new(m.names.clone(), m.degrees.clone(), d, h)
}

/// Build a rational matrix from (row, col, value) triples.
pub fn matrix(n: usize, entries: &[(usize, usize, Rational)]) -> SparseMatrix {
    let mut m = square_matrix(n);
    for (i, j, v) in entries {
        m.set(*i, *j, Poly::constant(v.clone()));
    }
    m
}

/// The regular Λ-module: 1 in degree 0, θ in degree 1, h(θ) = 1.
pub fn regular_lambda() -> MixedComplex {
    let one = Rational::from_integer(1.into());
    MixedComplex::new(
        vec!["1".into(), "theta".into()],
        vec![0, 1],
        square_matrix(2),
        vec![matrix(2, &[(0, 1, one)])],
    )
    .expect("regular module is mixed")
}
