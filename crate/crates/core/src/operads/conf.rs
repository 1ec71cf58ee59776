//! The cohomology ring of the configuration space of n points in R^d.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::OperadError;
use crate::kernel::{Echelon, Rational};

/// Generated by ω_ij (i < j) of degree d - 1 with ω_ji = (-1)^d ω_ij,
/// ω_ij² = 0 and the Arnold relations ω_ij ω_jk + ω_jk ω_ki + ω_ki ω_ij = 0.
/// Monomials are squarefree products of generators in increasing order.
#[derive(Clone, Debug)]
pub struct ConfRing {
    pub n: usize,
    pub d: usize,
    /// (i, j) with 1 <= i < j <= n
    pub generators: Vec<(usize, usize)>,
    /// monomials of each word length p, indexed as columns of `relations[p]`
    monomials: Vec<Vec<Vec<usize>>>,
    relations: Vec<Echelon>,
}

type Poly = BTreeMap<Vec<usize>, Rational>;

fn subsets(n: usize, p: usize) -> Vec<Vec<usize>> {
    if p == 0 {
        return vec![Vec::new()];
    }
    if p > n {
        return Vec::new();
    }
    let mut out = Vec::new();
    for last in p - 1..n {
        for mut s in subsets(last, p - 1) {
            s.push(last);
            out.push(s);
        }
    }
    out.sort();
    out
}

impl ConfRing {
    fn odd(&self) -> bool {
        self.d.is_multiple_of(2)
    }

    pub fn generator_degree(&self) -> usize {
        self.d - 1
    }

    fn generator(&self, i: usize, j: usize) -> (usize, Rational) {
        let (a, b, s) = if i < j {
            (i, j, 1)
        } else {
            (j, i, if self.d.is_multiple_of(2) { 1 } else { -1 })
        };
        let idx = self
            .generators
            .iter()
            .position(|g| *g == (a, b))
            .expect("generator");
        (idx, Rational::from_integer(s.into()))
    }

    /// The product of two monomials, sorted with Koszul signs.
    fn mul(&self, x: &[usize], y: &[usize]) -> Option<(Vec<usize>, Rational)> {
        let mut word: Vec<usize> = x.iter().chain(y).copied().collect();
        let mut swaps = 0usize;
        for i in 0..word.len() {
            for j in 0..word.len() - 1 - i {
                if word[j] == word[j + 1] {
                    return None;
                }
                if word[j] > word[j + 1] {
                    word.swap(j, j + 1);
                    swaps += 1;
                }
            }
        }
        if word.windows(2).any(|w| w[0] == w[1]) {
            return None;
        }
        let s = if self.odd() && swaps % 2 == 1 {
            -Rational::one()
        } else {
            Rational::one()
        };
        Some((word, s))
    }

    fn arnold(&self, i: usize, j: usize, k: usize) -> Poly {
        let mut out = Poly::new();
        for (a, b) in [((i, j), (j, k)), ((j, k), (k, i)), ((k, i), (i, j))] {
            let (ga, sa) = self.generator(a.0, a.1);
            let (gb, sb) = self.generator(b.0, b.1);
            if let Some((m, s)) = self.mul(&[ga], &[gb]) {
                *out.entry(m).or_insert_with(Rational::zero) += s * sa * sb;
            }
        }
        out.retain(|_, c| !c.is_zero());
        out
    }

    /// ω_ji = s ω_ij
    pub fn swap_sign(&self, i: usize, j: usize) -> i64 {
        let (_, s) = self.generator(j, i);
        if s.is_one() {
            1
        } else {
            -1
        }
    }

    pub fn dims(&self) -> Vec<usize> {
        self.monomials
            .iter()
            .zip(&self.relations)
            .map(|(m, r)| m.len() - r.rank())
            .collect()
    }

    /// (cohomological degree, dimension), zero degrees omitted.
    pub fn poincare(&self) -> Vec<(usize, usize)> {
        self.dims()
            .into_iter()
            .enumerate()
            .filter(|(_, k)| *k > 0)
            .map(|(p, k)| (p * (self.d - 1), k))
            .collect()
    }

    pub fn total_dim(&self) -> usize {
        self.dims().iter().sum()
    }

    pub fn poincare_string(&self) -> String {
        self.poincare()
            .into_iter()
            .map(|(deg, k)| match deg {
                0 => k.to_string(),
                1 if k == 1 => "t".into(),
                1 => format!("{k}t"),
                _ if k == 1 => format!("t^{deg}"),
                _ => format!("{k}t^{deg}"),
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }

    fn render(&self, m: &[usize]) -> String {
        if m.is_empty() {
            return "1".into();
        }
        m.iter()
            .map(|&g| format!("ω{}{}", self.generators[g].0, self.generators[g].1))
            .collect::<Vec<_>>()
            .join(" ")
    }

    /// Normal-form basis: monomials that are not pivots of the relations.
    pub fn basis(&self, p: usize) -> Vec<String> {
        let Some(mons) = self.monomials.get(p) else {
            return Vec::new();
        };
        let pivots: Vec<usize> = self.relations[p].pivots().collect();
        mons.iter()
            .enumerate()
            .filter(|(i, _)| !pivots.contains(i))
            .map(|(_, m)| self.render(m))
            .collect()
    }

    /// Whether a product of generators ω_{i j}, given as ordered pairs, is
    /// zero in the ring.
    pub fn product_vanishes(&self, pairs: &[(usize, usize)]) -> bool {
        let mut word = Vec::new();
        let mut coeff = Rational::one();
        for &(i, j) in pairs {
            let (g, s) = self.generator(i, j);
            coeff *= s;
            match self.mul(&word, &[g]) {
                Some((w, s)) => {
                    word = w;
                    coeff *= s;
                }
                None => return true,
            }
        }
        let p = word.len();
        let Some(mons) = self.monomials.get(p) else {
            return true;
        };
        let col = mons.iter().position(|m| *m == word).expect("monomial");
        self.relations[p].contains(BTreeMap::from([(col, coeff)]))
    }
}

/// Computed degree by degree until the quotient vanishes.
pub fn conf_ring(n: usize, d: usize) -> Result<ConfRing, OperadError> {
    if n == 0 || n > 6 || d < 2 {
        return Err(OperadError::OutOfRange { n, d });
    }
    let generators: Vec<(usize, usize)> = (1..=n)
        .flat_map(|i| (i + 1..=n).map(move |j| (i, j)))
        .collect();
    let ngen = generators.len();
    let mut ring = ConfRing {
        n,
        d,
        generators,
        monomials: Vec::new(),
        relations: Vec::new(),
    };
    let triples: Vec<(usize, usize, usize)> = (1..=n)
        .flat_map(|i| (i + 1..=n).flat_map(move |j| (j + 1..=n).map(move |k| (i, j, k))))
        .collect();
    let arnold: Vec<Poly> = triples
        .iter()
        .map(|&(i, j, k)| ring.arnold(i, j, k))
        .collect();
    for p in 0..=ngen {
        let mons = subsets(ngen, p);
        let index: BTreeMap<&Vec<usize>, usize> =
            mons.iter().enumerate().map(|(i, m)| (m, i)).collect();
        let mut ech = Echelon::new();
        if p >= 2 {
            for rel in &arnold {
                for m in subsets(ngen, p - 2) {
                    let mut v = BTreeMap::new();
                    for (r, c) in rel {
                        if let Some((w, s)) = ring.mul(r, &m) {
                            *v.entry(index[&w]).or_insert_with(Rational::zero) += s * c;
                        }
                    }
                    v.retain(|_, c: &mut Rational| !c.is_zero());
                    ech.insert(v);
                }
            }
        }
        let empty = mons.len() == ech.rank();
        ring.monomials.push(mons);
        ring.relations.push(ech);
        if empty {
            break;
        }
    }
    Ok(ring)
}
