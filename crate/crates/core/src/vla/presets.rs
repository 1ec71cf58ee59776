//! Constructors for the standard vertex Lie algebras.

use num_traits::{One, Zero};

use super::{Generator, LBasis, LElem, VertexLieData, VlaError};
use crate::kernel::{int, rat, Parity, Poly, Rational, Ring, Scalar};

/// A finite-dimensional Lie algebra by structure constants
/// `[x_i, x_j] = Σ_k c[i][j][k] x_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieAlgebra {
    pub names: Vec<String>,
    pub c: Vec<Vec<Vec<Rational>>>,
}

impl LieAlgebra {
    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn abelian(n: usize) -> Self {
        let names = if n == 1 {
            vec!["a".to_string()]
        } else {
            (1..=n).map(|i| format!("a{i}")).collect()
        };
        LieAlgebra {
            names,
            c: vec![vec![vec![Rational::zero(); n]; n]; n],
        }
    }

    /// sl₂ on the basis (e, h, f): [e,f]=h, [h,e]=2e, [h,f]=−2f.
    pub fn sl2() -> Self {
        let mut c = vec![vec![vec![Rational::zero(); 3]; 3]; 3];
        let (e, h, f) = (0, 1, 2);
        c[e][f][h] = int(1);
        c[f][e][h] = int(-1);
        c[h][e][e] = int(2);
        c[e][h][e] = int(-2);
        c[h][f][f] = int(-2);
        c[f][h][f] = int(2);
        LieAlgebra {
            names: vec!["e".into(), "h".into(), "f".into()],
            c,
        }
    }

    /// The trace form of the defining representation, normalized so that
    /// long roots have square length 2: κ(e,f)=1, κ(h,h)=2.
    pub fn sl2_form() -> Vec<Vec<Rational>> {
        let mut k = vec![vec![Rational::zero(); 3]; 3];
        k[0][2] = int(1);
        k[2][0] = int(1);
        k[1][1] = int(2);
        k
    }

    pub fn bracket(&self, x: &[Rational], y: &[Rational]) -> Vec<Rational> {
        let n = self.dim();
        let mut out = vec![Rational::zero(); n];
        for i in 0..n {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..n {
                if y[j].is_zero() {
                    continue;
                }
                for (k, o) in out.iter_mut().enumerate() {
                    *o += &x[i] * &y[j] * &self.c[i][j][k];
                }
            }
        }
        out
    }

    fn unit(&self, i: usize) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); self.dim()];
        v[i] = Rational::one();
        v
    }

    /// Antisymmetry and the Jacobi identity, naming the first bad pair/triple.
    pub fn validate(&self) -> Result<(), VlaError> {
        let n = self.dim();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    if self.c[i][j][k] != -self.c[j][i][k].clone() {
                        return Err(VlaError::NotAntisymmetric(
                            self.names[i].clone(),
                            self.names[j].clone(),
                        ));
                    }
                }
            }
        }
        for i in 0..n {
            for j in i..n {
                for k in j..n {
                    let (a, b, c) = (self.unit(i), self.unit(j), self.unit(k));
                    let t1 = self.bracket(&self.bracket(&a, &b), &c);
                    let t2 = self.bracket(&self.bracket(&b, &c), &a);
                    let t3 = self.bracket(&self.bracket(&c, &a), &b);
                    if (0..n).any(|m| !(&t1[m] + &t2[m] + &t3[m]).is_zero()) {
                        return Err(VlaError::LieJacobi(
                            self.names[i].clone(),
                            self.names[j].clone(),
                            self.names[k].clone(),
                        ));
                    }
                }
            }
        }
        Ok(())
    }

    /// Symmetry and ad-invariance κ([a,b],c) = κ(a,[b,c]) of a bilinear form.
    pub fn validate_form(&self, kappa: &[Vec<Rational>]) -> Result<(), VlaError> {
        let n = self.dim();
        let form = |x: &[Rational], y: &[Rational]| -> Rational {
            let mut s = Rational::zero();
            for i in 0..n {
                for j in 0..n {
                    s += &x[i] * &y[j] * &kappa[i][j];
                }
            }
            s
        };
        if kappa.len() != n || kappa.iter().any(|r| r.len() != n) {
            return Err(VlaError::Invalid(format!("form must be {n}x{n}")));
        }
        for i in 0..n {
            for j in 0..n {
                if kappa[i][j] != kappa[j][i] {
                    return Err(VlaError::NotSymmetric(
                        self.names[i].clone(),
                        self.names[j].clone(),
                    ));
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let (a, b, c) = (self.unit(i), self.unit(j), self.unit(k));
                    if form(&self.bracket(&a, &b), &c) != form(&a, &self.bracket(&b, &c)) {
                        return Err(VlaError::NotInvariant(
                            self.names[i].clone(),
                            self.names[j].clone(),
                            self.names[k].clone(),
                        ));
                    }
                }
            }
        }
        Ok(())
    }
}

fn gen(name: String, weight: Rational, parity: Parity, degree: i32) -> Generator {
    Generator {
        name,
        weight,
        parity,
        degree,
    }
}

/// Currents J^a of weight 1 with J^a_(0)J^b = J^{[a,b]} and
/// J^a_(1)J^b = c κ(a,b) 1♭.
pub fn kac_moody(
    g: &LieAlgebra,
    kappa: &[Vec<Rational>],
    level: &Scalar,
) -> Result<VertexLieData, VlaError> {
    g.validate()?;
    g.validate_form(kappa)?;
    let gens = g
        .names
        .iter()
        .map(|n| gen(format!("J^{n}"), int(1), Parity::Even, 0))
        .collect();
    let mut l = VertexLieData::new(level.ring.clone(), gens, true)?;
    let n = g.dim();
    for a in 0..n {
        for b in 0..n {
            let zeroth: LElem = (0..n)
                .map(|k| (LBasis::gen(k), Poly::constant(g.c[a][b][k].clone())))
                .collect();
            l.set_bracket(a, b, 0, zeroth)?;
            let first = LElem::term(LBasis::Central, level.value.scale(&kappa[a][b]));
            l.set_bracket(a, b, 1, first)?;
        }
    }
    Ok(l)
}

/// Abelian currents with J^a_(1)J^b = c δ_ab 1♭.
pub fn heisenberg(n: usize, level: &Scalar) -> Result<VertexLieData, VlaError> {
    let g = LieAlgebra::abelian(n);
    let kappa: Vec<Vec<Rational>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { int(1) } else { int(0) })
                .collect()
        })
        .collect();
    let mut l = kac_moody(&g, &kappa, level)?;
    for (i, gname) in g.names.iter().enumerate() {
        l.generators[i].name = gname.clone();
    }
    Ok(l)
}

/// l of weight 2: l_(0)l = ∂l, l_(1)l = 2l, l_(3)l = (c/2)1♭.
pub fn virasoro(c: &Scalar) -> Result<VertexLieData, VlaError> {
    let mut l = VertexLieData::new(
        c.ring.clone(),
        vec![gen("l".into(), int(2), Parity::Even, 0)],
        true,
    )?;
    l.set_bracket(0, 0, 0, LElem::basis(LBasis::Gen { gen: 0, dpow: 1 }))?;
    l.set_bracket(0, 0, 1, LElem::term(LBasis::gen(0), Poly::from_int(2)))?;
    l.set_bracket(
        0,
        0,
        3,
        LElem::term(LBasis::Central, c.value.scale(&rat(1, 2))),
    )?;
    Ok(l)
}

/// N pairs (φ_i, φ*_i), even (βγ) or odd (bc), with the weights (1, 0) and
/// the identity pairing.
pub fn weyl_pair(n: usize, odd: bool) -> Result<VertexLieData, VlaError> {
    let id: Vec<Vec<Rational>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { int(1) } else { int(0) })
                .collect()
        })
        .collect();
    weyl_pair_with(n, odd, (int(1), int(0)), &id)
}

/// Weyl pair with chosen weights and pairing: φ_i(0)φ*_j = ξ_ij 1♭ and
/// φ*_j(0)φ_i = ∓ξ_ij 1♭, the sign fixed by skew-symmetry. Odd pairs get
/// cohomological degrees −1 (ψ) and +1 (ψ*).
pub fn weyl_pair_with(
    n: usize,
    odd: bool,
    weights: (Rational, Rational),
    pairing: &[Vec<Rational>],
) -> Result<VertexLieData, VlaError> {
    if n == 0 {
        return Err(VlaError::Invalid("a Weyl pair needs N >= 1".into()));
    }
    if pairing.len() != n || pairing.iter().any(|r| r.len() != n) {
        return Err(VlaError::Invalid(format!("pairing must be {n}x{n}")));
    }
    if &weights.0 + &weights.1 != int(1) {
        return Err(VlaError::Invalid("weights of a pair must sum to 1".into()));
    }
    let (stem, parity, deg) = if odd {
        ("psi", Parity::Odd, (-1, 1))
    } else {
        ("phi", Parity::Even, (0, 0))
    };
    let label = |i: usize| {
        if n == 1 {
            String::new()
        } else {
            (i + 1).to_string()
        }
    };
    let mut gens = Vec::new();
    for i in 0..n {
        gens.push(gen(
            format!("{stem}{}", label(i)),
            weights.0.clone(),
            parity,
            deg.0,
        ));
    }
    for i in 0..n {
        gens.push(gen(
            format!("{stem}*{}", label(i)),
            weights.1.clone(),
            parity,
            deg.1,
        ));
    }
    let mut l = VertexLieData::new(Ring::Q, gens, true)?;
    let back = if odd { int(1) } else { int(-1) };
    for i in 0..n {
        for j in 0..n {
            let x = &pairing[i][j];
            l.set_bracket(
                i,
                n + j,
                0,
                LElem::term(LBasis::Central, Poly::constant(x.clone())),
            )?;
            l.set_bracket(
                n + j,
                i,
                0,
                LElem::term(LBasis::Central, Poly::constant(x * &back)),
            )?;
        }
    }
    Ok(l)
}
