//! Matter systems with currents for a Lie algebra.

use num_traits::Zero;

use crate::kernel::{int, rat, Poly, Rational, Ring, Scalar};
use crate::vla::{heisenberg, kac_moody, weyl_pair_with, LieAlgebra, VertexLieData, VlaError};

/// `coeff · x1_(n1) x2_(n2) … Ω`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatterTerm {
    pub coeff: Poly,
    pub modes: Vec<(String, i64)>,
}

/// A vertex Lie algebra together with one current per basis element of g,
/// each a sum of mode words.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matter {
    pub lie: VertexLieData,
    pub currents: Vec<Vec<MatterTerm>>,
}

fn single(name: &str) -> Vec<MatterTerm> {
    vec![MatterTerm {
        coeff: Poly::one(),
        modes: vec![(name.to_string(), -1)],
    }]
}

impl Matter {
    /// No matter fields; all currents vanish.
    pub fn none(g: &LieAlgebra) -> Matter {
        Matter {
            lie: VertexLieData::new(Ring::Q, Vec::new(), true).expect("empty generator list"),
            currents: vec![Vec::new(); g.dim()],
        }
    }

    /// One Heisenberg field per basis element, J^i = a_i; only an abelian g
    /// passes the current check.
    pub fn heisenberg(g: &LieAlgebra, level: &Scalar) -> Result<Matter, VlaError> {
        let lie = heisenberg(g.dim(), level)?;
        let currents = (0..g.dim()).map(|i| single(lie.name(i))).collect();
        Ok(Matter { lie, currents })
    }

    /// The affine currents J^x of g at `level` times the form κ.
    pub fn kac_moody(
        g: &LieAlgebra,
        kappa: &[Vec<Rational>],
        level: &Scalar,
    ) -> Result<Matter, VlaError> {
        let lie = kac_moody(g, kappa, level)?;
        let currents = (0..g.dim()).map(|i| single(lie.name(i))).collect();
        Ok(Matter { lie, currents })
    }

    /// βγ pairs (weights ½, ½) on a representation ρ of g, with currents
    /// J^x = −Σ ρ(x)_ab :φ_a φ*_b:.
    pub fn beta_gamma(g: &LieAlgebra, rep: &[Vec<Vec<Rational>>]) -> Result<Matter, VlaError> {
        if rep.len() != g.dim() {
            return Err(VlaError::Invalid(format!(
                "need {} representation matrices",
                g.dim()
            )));
        }
        let n = rep.first().map_or(0, Vec::len);
        if n == 0 {
            return Err(VlaError::Invalid("representation must be nonzero".into()));
        }
        let id: Vec<Vec<Rational>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| if i == j { int(1) } else { int(0) })
                    .collect()
            })
            .collect();
        let lie = weyl_pair_with(n, false, (rat(1, 2), rat(1, 2)), &id)?;
        let mut currents = Vec::new();
        for x in rep {
            if x.len() != n || x.iter().any(|r| r.len() != n) {
                return Err(VlaError::Invalid(format!(
                    "representation matrices must be {n}x{n}"
                )));
            }
            let mut terms = Vec::new();
            for (a, row) in x.iter().enumerate() {
                for (b, c) in row.iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    terms.push(MatterTerm {
                        coeff: Poly::constant(-c.clone()),
                        modes: vec![
                            (lie.name(a).to_string(), -1),
                            (lie.name(n + b).to_string(), -1),
                        ],
                    });
                }
            }
            currents.push(terms);
        }
        Ok(Matter { lie, currents })
    }

    /// Tensor product: generators side by side, currents added.
    pub fn sum(&self, other: &Matter) -> Result<Matter, VlaError> {
        if self.currents.len() != other.currents.len() {
            return Err(VlaError::Invalid(
                "matter summands carry currents for different algebras".into(),
            ));
        }
        let lie = self.lie.direct_sum(&other.lie)?;
        let currents = self
            .currents
            .iter()
            .zip(&other.currents)
            .map(|(a, b)| a.iter().chain(b).cloned().collect())
            .collect();
        Ok(Matter { lie, currents })
    }
}

/// The defining representation of sl₂ on the basis (e, h, f).
pub fn fundamental_sl2() -> Vec<Vec<Vec<Rational>>> {
    let z = || int(0);
    vec![
        vec![vec![z(), int(1)], vec![z(), z()]],
        vec![vec![int(1), z()], vec![z(), int(-1)]],
        vec![vec![z(), z()], vec![int(1), z()]],
    ]
}
