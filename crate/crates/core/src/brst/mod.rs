//! BRST reduction of a matter vertex algebra carrying currents for a finite
//! dimensional Lie algebra g.
//!
//! The complex is A ⊗ Cl where Cl is generated by odd pairs ψ_i (weight 1,
//! ghost −1) and ψ*^i (weight 0, ghost +1) with ψ_i(z)ψ*^j(w) ~ δ_ij/(z−w).
//! The charge is
//! Q = Σ_i :J^i ψ*^i: − ½ Σ c^{ij}_k :ψ*^i ψ*^j ψ_k:
//! and d = Q_(0).

mod matter;

use std::collections::{BTreeMap, HashMap};
use std::sync::Mutex;

use num_traits::Zero;

use crate::kernel::{
    cohomology, int, rat, FiniteComplex, KernelError, Poly, Rational, Ring, Scalar, SparseMatrix,
};
use crate::vertex::{build_envelope, Mode, Monomial, State, VertexAlgebra, VertexError};
use crate::vla::{weyl_pair_with, LieAlgebra, VertexLieData, VlaError};

pub use matter::{fundamental_sl2, Matter, MatterTerm};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BrstError {
    #[error(transparent)]
    Vertex(#[from] VertexError),
    #[error(transparent)]
    Vla(#[from] VlaError),
    #[error(transparent)]
    Kernel(#[from] KernelError),
    #[error("currents do not realize [{a}, {b}]: got {got}, expected {expected}")]
    CurrentBracket {
        a: String,
        b: String,
        got: String,
        expected: String,
    },
    #[error("current J^{0} is not a weight-1 state with scalar double pole: {1}")]
    NotACurrent(String, String),
    #[error("d∘d is nonzero on {state}: {value}")]
    DSquaredNonzero { state: String, value: String },
    #[error("cohomology needs a numeric level, the coefficient ring is {0}")]
    SymbolicLevel(String),
    #[error("{0}")]
    Invalid(String),
}

/// The odd Weyl pairs ψ_i, ψ*^i for a basis of g, named `psi_<x>` and
/// `psi*_<x>`.
pub fn ghost_lie(g: &LieAlgebra) -> Result<VertexLieData, VlaError> {
    let n = g.dim();
    if n == 0 {
        return VertexLieData::new(Ring::Q, Vec::new(), true);
    }
    let id: Vec<Vec<Rational>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { int(1) } else { int(0) })
                .collect()
        })
        .collect();
    let mut l = weyl_pair_with(n, true, (int(1), int(0)), &id)?;
    for (i, x) in g.names.iter().enumerate() {
        l.generators[i].name = format!("psi_{x}");
        l.generators[n + i].name = format!("psi*_{x}");
    }
    Ok(l)
}

/// The ghost vertex algebra through weight `cutoff`.
pub fn build_ghosts(g: &LieAlgebra, cutoff: Rational) -> Result<VertexAlgebra, BrstError> {
    Ok(build_envelope(
        &ghost_lie(g)?,
        &Scalar::rational(int(1)),
        cutoff,
    )?)
}

/// η^i = Σ_{j,k} c^{ij}_k :ψ_k ψ*^j:, the adjoint action on the ψ.
pub fn ghost_currents(v: &VertexAlgebra, g: &LieAlgebra) -> Result<Vec<State>, BrstError> {
    let n = g.dim();
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let mut eta = State::zero();
        for j in 0..n {
            for k in 0..n {
                let c = &g.c[i][j][k];
                if c.is_zero() {
                    continue;
                }
                let s = v.state_from_modes(&[
                    (format!("psi_{}", g.names[k]), -1),
                    (format!("psi*_{}", g.names[j]), -1),
                ])?;
                eta.add_scaled(&s, &Poly::constant(c.clone()));
            }
        }
        out.push(eta);
    }
    Ok(out)
}

/// Check `J^i_(0)J^j = Σ_k c^{ij}_k J^k` and return the level matrix
/// `J^i_(1)J^j = κ(i,j)Ω`.
pub fn current_level(
    v: &VertexAlgebra,
    g: &LieAlgebra,
    j: &[State],
) -> Result<Vec<Vec<Poly>>, BrstError> {
    let n = g.dim();
    if j.len() != n {
        return Err(BrstError::Invalid(format!(
            "{} currents for a Lie algebra of dimension {n}",
            j.len()
        )));
    }
    for (i, s) in j.iter().enumerate() {
        if s.keys().any(|m| v.weight(m) != int(1)) {
            return Err(BrstError::NotACurrent(g.names[i].clone(), v.render(s)));
        }
    }
    let mut kappa = vec![vec![Poly::zero(); n]; n];
    for a in 0..n {
        for b in 0..n {
            let got = v.nth_product(&j[a], 0, &j[b])?;
            let mut expected = State::zero();
            for (k, jk) in j.iter().enumerate() {
                expected.add_scaled(jk, &Poly::constant(g.c[a][b][k].clone()));
            }
            if got != expected {
                return Err(BrstError::CurrentBracket {
                    a: g.names[a].clone(),
                    b: g.names[b].clone(),
                    got: v.render(&got),
                    expected: v.render(&expected),
                });
            }
            let second = v.nth_product(&j[a], 1, &j[b])?;
            let omega = Monomial::vacuum();
            if second.keys().any(|m| *m != omega) {
                return Err(BrstError::NotACurrent(
                    g.names[a].clone(),
                    v.render(&second),
                ));
            }
            kappa[a][b] = second.coeff(&omega);
        }
    }
    Ok(kappa)
}

/// Matter, currents, ghosts and charge on A ⊗ Cl truncated in weight.
pub struct BrstComplex {
    pub lie: LieAlgebra,
    pub algebra: VertexAlgebra,
    pub currents: Vec<State>,
    pub ghost_currents: Vec<State>,
    pub matter_level: Vec<Vec<Poly>>,
    pub ghost_level: Vec<Vec<Poly>>,
    pub charge: State,
    d_cache: Mutex<HashMap<Monomial, State>>,
}

/// One (weight, ghost) cell of the cohomology table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BrstCell {
    pub weight: Rational,
    pub ghost: i32,
    pub chain_dim: usize,
    pub cohomology_dim: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DSquaredReport {
    pub max_weight: Rational,
    /// first basis state with d²≠0 and its image
    pub witness: Option<(String, String)>,
    /// every nonzero coefficient of d² on basis states
    pub entries: Vec<Poly>,
}

impl DSquaredReport {
    pub fn is_zero(&self) -> bool {
        self.witness.is_none()
    }

    /// gcd of all entries of d², a polynomial in the level.
    pub fn level_polynomial(&self) -> Poly {
        self.entries
            .iter()
            .fold(Poly::zero(), |g, e| Poly::gcd(&g, e))
    }

    /// The levels at which d² vanishes through the checked weight, or None
    /// when it vanishes identically.
    pub fn critical_levels(&self) -> Option<Vec<Rational>> {
        if self.is_zero() {
            return None;
        }
        let p = self.level_polynomial();
        Some(if p.is_constant() {
            Vec::new()
        } else {
            p.rational_roots()
        })
    }
}

impl BrstComplex {
    pub fn new(g: &LieAlgebra, matter: &Matter, cutoff: Rational) -> Result<Self, BrstError> {
        g.validate()?;
        if cutoff < int(1) {
            return Err(BrstError::Invalid(
                "the cutoff must be at least 1 to hold the charge".into(),
            ));
        }
        let lie = matter.lie.direct_sum(&ghost_lie(g)?)?;
        let algebra = build_envelope(&lie, &Scalar::rational(int(1)), cutoff)?;
        let currents = matter
            .currents
            .iter()
            .map(|terms| {
                let mut s = State::zero();
                for t in terms {
                    s.add_scaled(&algebra.state_from_modes(&t.modes)?, &t.coeff);
                }
                Ok(s)
            })
            .collect::<Result<Vec<_>, BrstError>>()?;
        let matter_level = current_level(&algebra, g, &currents)?;
        let ghost_currents = ghost_currents(&algebra, g)?;
        let ghost_level = current_level(&algebra, g, &ghost_currents)?;
        let charge = Self::charge(&algebra, g, &currents)?;
        Ok(BrstComplex {
            lie: g.clone(),
            algebra,
            currents,
            ghost_currents,
            matter_level,
            ghost_level,
            charge,
            d_cache: Mutex::new(HashMap::new()),
        })
    }

    fn charge(v: &VertexAlgebra, g: &LieAlgebra, j: &[State]) -> Result<State, BrstError> {
        let n = g.dim();
        let star = |i: usize| v.lie.index(&format!("psi*_{}", g.names[i]));
        let mut q = State::zero();
        for (i, ji) in j.iter().enumerate() {
            let ps = State::basis(Monomial(vec![Mode {
                index: -1,
                gen: star(i)?,
            }]));
            q.add_assign(&v.nth_product(ji, -1, &ps)?);
        }
        let half = Poly::constant(rat(-1, 2));
        for i in 0..n {
            for jj in 0..n {
                for k in 0..n {
                    let c = &g.c[i][jj][k];
                    if c.is_zero() {
                        continue;
                    }
                    let psi = v.lie.index(&format!("psi_{}", g.names[k]))?;
                    let word = [
                        Mode {
                            index: -1,
                            gen: star(i)?,
                        },
                        Mode {
                            index: -1,
                            gen: star(jj)?,
                        },
                        Mode {
                            index: -1,
                            gen: psi,
                        },
                    ];
                    let s = v.apply_word(&word, &v.vacuum());
                    q.add_scaled(&s, &half.scale(c));
                }
            }
        }
        Ok(q)
    }

    /// Q_(0) applied to a basis monomial.
    pub fn d(&self, m: &Monomial) -> State {
        if let Some(s) = self.d_cache.lock().unwrap().get(m) {
            return s.clone();
        }
        let s = self
            .algebra
            .nth_product(&self.charge, 0, &State::basis(m.clone()));
        let s = s.expect("Q_(0) preserves weight");
        self.d_cache.lock().unwrap().insert(m.clone(), s.clone());
        s
    }

    pub fn apply_d(&self, s: &State) -> State {
        let mut out = State::zero();
        for (m, c) in s.iter() {
            out.add_scaled(&self.d(m), c);
        }
        out
    }

    /// Weights through `w` that occur, in increasing order.
    pub fn weights(&self, w: &Rational) -> Vec<Rational> {
        self.algebra
            .basis()
            .keys()
            .filter(|x| *x <= w)
            .cloned()
            .collect()
    }

    /// The basis of weight `w` split by ghost number.
    pub fn block(&self, w: &Rational) -> BTreeMap<i32, Vec<Monomial>> {
        let mut out: BTreeMap<i32, Vec<Monomial>> = BTreeMap::new();
        for m in self.algebra.basis_of_weight(w) {
            out.entry(self.algebra.degree(m))
                .or_default()
                .push(m.clone());
        }
        out
    }

    /// The matrix of d from ghost `gh` to `gh + 1` at weight `w`.
    pub fn d_matrix(&self, w: &Rational, gh: i32) -> SparseMatrix {
        let block = self.block(w);
        let empty = Vec::new();
        let src = block.get(&gh).unwrap_or(&empty);
        let dst = block.get(&(gh + 1)).unwrap_or(&empty);
        let pos: HashMap<&Monomial, usize> = dst.iter().enumerate().map(|(i, m)| (m, i)).collect();
        let mut out = SparseMatrix::zeros(self.algebra.ring.clone(), dst.len(), src.len());
        for (c, m) in src.iter().enumerate() {
            for (t, x) in self.d(m).iter() {
                let r = pos[t];
                out.set(r, c, x.clone());
            }
        }
        out
    }

    pub fn check_d_squared(&self, w: &Rational) -> DSquaredReport {
        let mut report = DSquaredReport {
            max_weight: w.clone(),
            witness: None,
            entries: Vec::new(),
        };
        for wt in self.weights(w) {
            for m in self.algebra.basis_of_weight(&wt) {
                let dd = self.apply_d(&self.d(m));
                if dd.is_zero() {
                    continue;
                }
                if report.witness.is_none() {
                    report.witness =
                        Some((self.algebra.render_monomial(m), self.algebra.render(&dd)));
                }
                report.entries.extend(dd.iter().map(|(_, c)| c.clone()));
            }
        }
        report
    }

    /// dim H^{(w, gh)} for every weight through `w`.
    pub fn cohomology(&self, w: &Rational) -> Result<Vec<BrstCell>, BrstError> {
        if self.algebra.ring != Ring::Q {
            return Err(BrstError::SymbolicLevel(self.algebra.ring.to_string()));
        }
        let report = self.check_d_squared(w);
        if let Some((state, value)) = report.witness {
            return Err(BrstError::DSquaredNonzero { state, value });
        }
        let mut cells = Vec::new();
        for wt in self.weights(w) {
            let block = self.block(&wt);
            let (lo, hi) = match (block.keys().next(), block.keys().last()) {
                (Some(&lo), Some(&hi)) => (lo, hi),
                _ => continue,
            };
            let dims: Vec<usize> = (lo..=hi)
                .map(|g| block.get(&g).map_or(0, Vec::len))
                .collect();
            let diffs = (lo..hi).map(|g| self.d_matrix(&wt, g)).collect();
            let complex = FiniteComplex::new(Ring::Q, lo as i64, dims.clone(), diffs)?;
            for h in cohomology(&complex)? {
                let gh = h.degree as i32;
                cells.push(BrstCell {
                    weight: wt.clone(),
                    ghost: gh,
                    chain_dim: dims[(gh - lo) as usize],
                    cohomology_dim: h.free_rank,
                });
            }
        }
        Ok(cells)
    }
}

/// Σ(−1)^gh dim per weight, for chains and for cohomology.
pub fn euler_characteristics(cells: &[BrstCell]) -> BTreeMap<Rational, (i64, i64)> {
    let mut out: BTreeMap<Rational, (i64, i64)> = BTreeMap::new();
    for c in cells {
        let s = if c.ghost.rem_euclid(2) == 0 { 1 } else { -1 };
        let e = out.entry(c.weight.clone()).or_default();
        e.0 += s * c.chain_dim as i64;
        e.1 += s * c.cohomology_dim as i64;
    }
    out
}
