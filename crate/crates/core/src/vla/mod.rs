//! Vertex Lie algebras presented by generators and singular brackets.

mod checks;
pub mod json;
mod presets;

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{Signed, Zero};

use crate::kernel::{int, Element, Parity, Poly, Rational, Ring};

pub use checks::{check_all, check_jacobi, check_sesquilinearity, check_skew_symmetry, Violation};
pub use presets::{heisenberg, kac_moody, virasoro, weyl_pair, weyl_pair_with, LieAlgebra};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum VlaError {
    #[error("unknown generator {0}")]
    UnknownGenerator(String),
    #[error("duplicate generator {0}")]
    DuplicateGenerator(String),
    #[error("negative conformal weight for {0}")]
    NegativeWeight(String),
    #[error("bracket mentions the central generator but none is declared")]
    NoCentral,
    #[error("invariant form fails on ({0}, {1}, {2})")]
    NotInvariant(String, String, String),
    #[error("form is not symmetric on ({0}, {1})")]
    NotSymmetric(String, String),
    #[error("structure constants not antisymmetric on ({0}, {1})")]
    NotAntisymmetric(String, String),
    #[error("Jacobi identity fails on ({0}, {1}, {2})")]
    LieJacobi(String, String, String),
    #[error("central fibre not commutative: {a}_({n}){b} has an ħ-free term")]
    NotCommutativeFibre { a: String, b: String, n: u32 },
    #[error("poisson limit needs a bracket over Q[ħ], got {0}")]
    WrongRing(String),
    #[error("coefficient {0} is not in ring {1}")]
    BadCoefficient(String, String),
    #[error("{0}")]
    Invalid(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub name: String,
    pub weight: Rational,
    pub parity: Parity,
    /// cohomological (ghost) degree
    pub degree: i32,
}

/// Basis of the K[∂]-module spanned by generators: `∂^dpow gen`, or the
/// central element 1♭.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum LBasis {
    Gen { gen: usize, dpow: u32 },
    Central,
}

impl LBasis {
    pub fn gen(gen: usize) -> Self {
        LBasis::Gen { gen, dpow: 0 }
    }
}

pub type LElem = Element<LBasis>;

/// Apply ∂ to a K[∂]-combination; ∂1♭ = 0.
pub fn derivative(x: &LElem) -> LElem {
    let mut out = LElem::zero();
    for (b, c) in x.iter() {
        if let LBasis::Gen { gen, dpow } = b {
            out.add_term(
                LBasis::Gen {
                    gen: *gen,
                    dpow: dpow + 1,
                },
                c.clone(),
            );
        }
    }
    out
}

fn derivative_pow(x: &LElem, k: u32) -> LElem {
    let mut out = x.clone();
    for _ in 0..k {
        out = derivative(&out);
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexLieData {
    pub ring: Ring,
    pub generators: Vec<Generator>,
    pub central: bool,
    /// (a, b, n) ↦ a_(n)b for generators a, b
    pub brackets: BTreeMap<(usize, usize, u32), LElem>,
}

impl VertexLieData {
    pub fn new(ring: Ring, generators: Vec<Generator>, central: bool) -> Result<Self, VlaError> {
        for (i, g) in generators.iter().enumerate() {
            if g.weight.is_negative() {
                return Err(VlaError::NegativeWeight(g.name.clone()));
            }
            if generators[..i].iter().any(|h| h.name == g.name) {
                return Err(VlaError::DuplicateGenerator(g.name.clone()));
            }
        }
        Ok(VertexLieData {
            ring,
            generators,
            central,
            brackets: BTreeMap::new(),
        })
    }

    pub fn index(&self, name: &str) -> Result<usize, VlaError> {
        self.generators
            .iter()
            .position(|g| g.name == name)
            .ok_or_else(|| VlaError::UnknownGenerator(name.to_string()))
    }

    pub fn name(&self, i: usize) -> &str {
        &self.generators[i].name
    }

    /// Set a_(n)b; zero values are removed from the table.
    pub fn set_bracket(
        &mut self,
        a: usize,
        b: usize,
        n: u32,
        value: LElem,
    ) -> Result<(), VlaError> {
        if !self.central && value.keys().any(|k| *k == LBasis::Central) {
            return Err(VlaError::NoCentral);
        }
        if value.is_zero() {
            self.brackets.remove(&(a, b, n));
        } else {
            self.brackets.insert((a, b, n), value);
        }
        Ok(())
    }

    /// a_(n)b between generators, zero when absent from the table.
    pub fn gen_bracket(&self, a: usize, b: usize, n: u32) -> LElem {
        self.brackets.get(&(a, b, n)).cloned().unwrap_or_default()
    }

    /// Largest n with a possibly nonzero a_(n)b, namely ⌊Δa + Δb⌋.
    pub fn pole_bound(&self, a: usize, b: usize) -> u32 {
        let w = &self.generators[a].weight + &self.generators[b].weight;
        w.floor().to_integer().try_into().unwrap_or(0)
    }

    /// Largest pole bound over all pairs, and over the table.
    pub fn max_pole(&self) -> u32 {
        let declared = self.brackets.keys().map(|k| k.2).max().unwrap_or(0);
        let n = self.generators.len();
        (0..n)
            .flat_map(|a| (0..n).map(move |b| (a, b)))
            .map(|(a, b)| self.pole_bound(a, b))
            .max()
            .unwrap_or(0)
            .max(declared)
    }

    pub fn weight_of(&self, b: &LBasis) -> Rational {
        match b {
            LBasis::Gen { gen, dpow } => &self.generators[*gen].weight + int(*dpow as i64),
            LBasis::Central => Rational::zero(),
        }
    }

    pub fn parity_of(&self, b: &LBasis) -> Parity {
        match b {
            LBasis::Gen { gen, .. } => self.generators[*gen].parity,
            LBasis::Central => Parity::Even,
        }
    }

    pub fn degree_of(&self, b: &LBasis) -> i32 {
        match b {
            LBasis::Gen { gen, .. } => self.generators[*gen].degree,
            LBasis::Central => 0,
        }
    }

    /// x_(n)y for arbitrary basis elements, derived from the generator table
    /// by sesquilinearity: (∂a)_(n)b = −n a_(n−1)b and
    /// a_(n)∂b = ∂(a_(n)b) + n a_(n−1)b.
    pub fn bracket(&self, x: &LBasis, n: u32, y: &LBasis) -> LElem {
        let (LBasis::Gen { gen: a, dpow: i }, LBasis::Gen { gen: b, dpow: j }) = (x, y) else {
            return LElem::zero();
        };
        if *i > n {
            return LElem::zero();
        }
        // (∂^i a)_(n) = (−1)^i n(n−1)…(n−i+1) a_(n−i)
        let left = crate::kernel::poly::falling(n as i64, *i);
        let left = if i % 2 == 1 { -left } else { left };
        let m = n - i;
        let mut out = LElem::zero();
        for k in 0..=(*j).min(m) {
            let c = crate::kernel::poly::binomial(*j as i64, k as i64)
                * Rational::from_integer(crate::kernel::poly::falling(m as i64, k));
            let inner = derivative_pow(&self.gen_bracket(*a, *b, m - k), j - k);
            out.add_scaled(&inner, &Poly::constant(c));
        }
        out.scale_rational(&Rational::from_integer(left))
    }

    /// x_(n)Y extended linearly in both slots.
    pub fn bracket_elems(&self, x: &LElem, n: u32, y: &LElem) -> LElem {
        let mut out = LElem::zero();
        for (bx, cx) in x.iter() {
            for (by, cy) in y.iter() {
                out.add_scaled(&self.bracket(bx, n, by), &(cx * cy));
            }
        }
        out
    }

    /// Direct sum sharing one central generator; generator names must be
    /// distinct.
    pub fn direct_sum(&self, other: &VertexLieData) -> Result<VertexLieData, VlaError> {
        let ring = self.ring.join(&other.ring).ok_or_else(|| {
            VlaError::Invalid(format!(
                "cannot combine rings {} and {}",
                self.ring, other.ring
            ))
        })?;
        let mut gens = self.generators.clone();
        gens.extend(other.generators.iter().cloned());
        let mut out = VertexLieData::new(ring, gens, self.central || other.central)?;
        out.brackets = self.brackets.clone();
        let off = self.generators.len();
        for (&(a, b, n), v) in &other.brackets {
            let shifted = v
                .iter()
                .map(|(k, c)| {
                    let k = match k {
                        LBasis::Gen { gen, dpow } => LBasis::Gen {
                            gen: gen + off,
                            dpow: *dpow,
                        },
                        LBasis::Central => LBasis::Central,
                    };
                    (k, c.clone())
                })
                .collect();
            out.brackets.insert((a + off, b + off, n), shifted);
        }
        Ok(out)
    }

    /// Render a K[∂]-combination, e.g. `2l + ∂l + (c/2)1♭`.
    pub fn render(&self, x: &LElem) -> String {
        if x.is_zero() {
            return "0".into();
        }
        let var = self.ring.var_name();
        let parts: Vec<String> = x
            .iter()
            .map(|(b, c)| {
                let base = match b {
                    LBasis::Gen { gen, dpow: 0 } => self.name(*gen).to_string(),
                    LBasis::Gen { gen, dpow: 1 } => format!("∂{}", self.name(*gen)),
                    LBasis::Gen { gen, dpow } => format!("∂^{dpow}{}", self.name(*gen)),
                    LBasis::Central => "1♭".to_string(),
                };
                coefficient_prefix(c, var) + &base
            })
            .collect();
        parts.join(" + ")
    }
}

pub(crate) fn coefficient_prefix(c: &Poly, var: &str) -> String {
    if c.is_one() {
        String::new()
    } else if c == &Poly::from_int(-1) {
        "-".into()
    } else if c.is_constant() && c.constant_term().is_integer() {
        c.render(var)
    } else {
        format!("({})", c.render(var))
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (Δ={}, {:?})", self.name, self.weight, self.parity)
    }
}

/// The classical limit over Q of a bracket over Q[ħ]: divide by ħ and set ħ=0.
pub fn poisson_limit(l: &VertexLieData) -> Result<VertexLieData, VlaError> {
    if l.ring != Ring::Hbar {
        return Err(VlaError::WrongRing(l.ring.to_string()));
    }
    let mut out = VertexLieData::new(Ring::Q, l.generators.clone(), l.central)?;
    for (&(a, b, n), v) in &l.brackets {
        let mut lim = LElem::zero();
        for (k, c) in v.iter() {
            if !c.constant_term().is_zero() {
                return Err(VlaError::NotCommutativeFibre {
                    a: l.name(a).into(),
                    b: l.name(b).into(),
                    n,
                });
            }
            lim.add_term(*k, Poly::constant(c.coeff(1)));
        }
        out.set_bracket(a, b, n, lim)?;
    }
    Ok(out)
}
