//! Small algebras used by the presets command and the tests.

use super::{AlgebraInstance, Binary, Vect};
use crate::kernel::{Parity, Poly, Ring};

fn term(i: usize, c: i64) -> Vect {
    Vect::term(i, Poly::from_int(c))
}

/// Q[x]/(x^n) with zero bracket; basis 1, x, ..., x^{n-1} in degree 0.
pub fn truncated_polynomial(n: usize) -> AlgebraInstance {
    let names = (0..n)
        .map(|i| match i {
            0 => "1".to_string(),
            1 => "x".to_string(),
            i => format!("x^{i}"),
        })
        .collect();
    let mut a = AlgebraInstance::new(Ring::Q, names, vec![0; n]);
    let mut m = Binary::new();
    for i in 0..n {
        for j in 0..n - i {
            m.insert((i, j), term(i + j, 1));
        }
    }
    a.m = Some(m);
    a.pi = Some(Binary::new());
    a
}

/// 2x2 matrices over Q in the basis E11, E12, E21, E22.
pub fn matrix_algebra() -> AlgebraInstance {
    let names = ["E11", "E12", "E21", "E22"].map(String::from).to_vec();
    let mut a = AlgebraInstance::new(Ring::Q, names, vec![0; 4]);
    let idx = |i: usize, j: usize| 2 * i + j;
    let mut m = Binary::new();
    for i in 0..2 {
        for j in 0..2 {
            for l in 0..2 {
                m.insert((idx(i, j), idx(j, l)), term(idx(i, l), 1));
            }
        }
    }
    a.m = Some(m);
    a
}

/// Basis 1, x, y, z over Q[ħ]: xy = ħz/2, yx = -ħz/2, every other product
/// of two non-units zero, bracket {x, y} = z.
pub fn heisenberg_bd1() -> AlgebraInstance {
    let names = ["1", "x", "y", "z"].map(String::from).to_vec();
    let mut a = AlgebraInstance::new(Ring::Hbar, names, vec![0; 4]);
    let half_h = Poly::var().scale(&crate::kernel::rat(1, 2));
    let mut m = Binary::new();
    for i in 0..4 {
        m.insert((0, i), term(i, 1));
        m.insert((i, 0), term(i, 1));
    }
    m.insert((1, 2), Vect::term(3, half_h.clone()));
    m.insert((2, 1), Vect::term(3, -half_h));
    let mut pi = Binary::new();
    pi.insert((1, 2), term(3, 1));
    pi.insert((2, 1), term(3, -1));
    a.m = Some(m);
    a.pi = Some(pi);
    a
}

/// The exterior algebra on odd generators with the given degrees, basis
/// indexed by subsets in order of size then bitmask.
struct Exterior {
    masks: Vec<u32>,
    degrees: Vec<i64>,
}

impl Exterior {
    fn new(degrees: &[i64]) -> Self {
        let g = degrees.len();
        let mut masks: Vec<u32> = (0..1u32 << g).collect();
        masks.sort_by_key(|m| (m.count_ones(), *m));
        Exterior {
            masks,
            degrees: degrees.to_vec(),
        }
    }

    fn index(&self, mask: u32) -> usize {
        self.masks.iter().position(|&m| m == mask).expect("subset")
    }

    fn name(&self, mask: u32) -> String {
        if mask == 0 {
            return "1".into();
        }
        (0..self.degrees.len())
            .filter(|k| mask & (1 << k) != 0)
            .map(|k| format!("θ{}", k + 1))
            .collect()
    }

    fn instance(&self, ring: Ring) -> AlgebraInstance {
        let names = self.masks.iter().map(|&m| self.name(m)).collect();
        let degrees = self
            .masks
            .iter()
            .map(|&m| {
                (0..self.degrees.len())
                    .filter(|k| m & (1 << k) != 0)
                    .map(|k| self.degrees[k])
                    .sum()
            })
            .collect();
        let mut a = AlgebraInstance::new(ring, names, degrees);
        a.parities = self
            .masks
            .iter()
            .map(|m| Parity::from_bit(i64::from(m.count_ones() % 2)))
            .collect();
        a
    }

    /// e_A e_B, reordering odd generators.
    fn product(&self, a: u32, b: u32) -> Vect {
        if a & b != 0 {
            return Vect::zero();
        }
        let mut swaps = 0;
        for i in 0..32 {
            if a & (1 << i) != 0 {
                swaps += (b & ((1u32 << i) - 1)).count_ones();
            }
        }
        term(self.index(a | b), if swaps % 2 == 0 { 1 } else { -1 })
    }

    /// The odd left derivation ∂/∂θ_k.
    fn partial(&self, k: usize, a: u32) -> Vect {
        if a & (1 << k) == 0 {
            return Vect::zero();
        }
        let before = (a & ((1u32 << k) - 1)).count_ones();
        term(
            self.index(a & !(1 << k)),
            if before.is_multiple_of(2) { 1 } else { -1 },
        )
    }

    fn linear(&self, v: &Vect, f: impl Fn(u32) -> Vect) -> Vect {
        v.linear_map(|i| f(self.masks[*i]))
    }

    fn mul_v(&self, x: &Vect, y: &Vect) -> Vect {
        let mut out = Vect::zero();
        for (i, ci) in x.iter() {
            for (j, cj) in y.iter() {
                out.add_scaled(&self.product(self.masks[*i], self.masks[*j]), &(ci * cj));
            }
        }
        out
    }

    fn m_table(&self) -> Binary {
        let mut m = Binary::new();
        for (i, &a) in self.masks.iter().enumerate() {
            for (j, &b) in self.masks.iter().enumerate() {
                let v = self.product(a, b);
                if !v.is_zero() {
                    m.insert((i, j), v);
                }
            }
        }
        m
    }

    /// ∂_1 ∂_2
    fn laplacian(&self, a: u32) -> Vect {
        self.linear(&self.partial(1, a), |b| self.partial(0, b))
    }

    /// (-1)^{|a|} (∂_1 a ∂_2 b - ∂_2 a ∂_1 b)
    fn cross(&self, a: u32, b: u32) -> Vect {
        let p = |k, m| self.partial(k, m);
        let v = self
            .mul_v(&p(0, a), &p(1, b))
            .sub(&self.mul_v(&p(1, a), &p(0, b)));
        if a.count_ones() % 2 == 1 {
            v.neg()
        } else {
            v
        }
    }

    fn binary(&self, f: impl Fn(u32, u32) -> Vect) -> Binary {
        let mut t = Binary::new();
        for (i, &a) in self.masks.iter().enumerate() {
            for (j, &b) in self.masks.iter().enumerate() {
                let v = f(a, b);
                if !v.is_zero() {
                    t.insert((i, j), v);
                }
            }
        }
        t
    }
}

/// Λ[θ1, θ2] with θ1, θ2 odd of degree 1, Δ = ∂²/∂θ1∂θ2 of degree -2, and
/// the bracket (-1)^{|a|}(∂1a ∂2b - ∂2a ∂1b) computed from the derivations.
pub fn bv_exterior() -> AlgebraInstance {
    let ext = Exterior::new(&[1, 1]);
    let mut a = ext.instance(Ring::Q);
    a.m = Some(ext.m_table());
    a.delta = Some(ext.masks.iter().map(|&m| ext.laplacian(m)).collect());
    a.delta_degree = -2;
    a.pi = Some(ext.binary(|x, y| ext.cross(x, y)));
    a.pi_degree = -2;
    a
}

fn deformed_exterior(degrees: &[i64], ring: Ring, pi_degree: i64) -> AlgebraInstance {
    let ext = Exterior::new(degrees);
    let theta3 = term(ext.index(0b100), 1);
    let mut a = ext.instance(ring);
    a.m = Some(ext.m_table());
    a.d = Some(
        ext.masks
            .iter()
            .map(|&m| ext.mul_v(&theta3, &ext.laplacian(m)).scale(&Poly::var()))
            .collect(),
    );
    a.pi = Some(ext.binary(|x, y| ext.mul_v(&theta3, &ext.cross(x, y))));
    a.pi_degree = pi_degree;
    a
}

/// Λ[θ1, θ2, θ3] over Q[ħ] with degrees 1, 1, 3, d = ħ θ3 ∂²/∂θ1∂θ2 of
/// degree 1, and the bracket θ3 (-1)^{|a|}(∂1a ∂2b - ∂2a ∂1b).
pub fn bd0_exterior() -> AlgebraInstance {
    deformed_exterior(&[1, 1, 3], Ring::Hbar, 1)
}

/// The same construction over Q[u] with all θ of degree 1, so that the
/// bracket has degree -1.
pub fn bd0u_exterior() -> AlgebraInstance {
    deformed_exterior(&[1, 1, 1], Ring::U, -1)
}
