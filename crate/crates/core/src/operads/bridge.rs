//! Compare the cohomology of configuration spaces with the operations of
//! the P_d operad in low arity.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::{conf_ring, OperadError};
use crate::kernel::{Echelon, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BridgeReport {
    pub d: usize,
    /// degrees of H*(Conf_2(R^d)) and of the arity-2 operations m, π
    pub conf_degrees: Vec<usize>,
    pub operation_degrees: Vec<usize>,
    /// action of the transposition on the top class and on π(x1, x2)
    pub conf_sign: i64,
    pub bracket_sign: i64,
    pub conf_dim_3: usize,
    pub operad_dim_3: usize,
}

impl BridgeReport {
    pub fn matches(&self) -> bool {
        self.conf_degrees == self.operation_degrees
            && self.conf_sign == self.bracket_sign
            && self.conf_dim_3 == self.operad_dim_3
    }
}

/// Multisets of words; a word is a Lie monomial expanded in the tensor
/// algebra and a multiset is a product in Sym(T(V)) ⊃ Sym(Lie(V)).
type Model = BTreeMap<Vec<Vec<u8>>, Rational>;

fn add(out: &mut Model, mut key: Vec<Vec<u8>>, c: Rational) {
    key.sort();
    let e = out.entry(key).or_insert_with(Rational::zero);
    *e += c;
}

fn product(x: &Model, y: &Model) -> Model {
    let mut out = Model::new();
    for (a, ca) in x {
        for (b, cb) in y {
            add(&mut out, a.iter().chain(b).cloned().collect(), ca * cb);
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// The biderivation extending the commutator of words.
fn bracket(x: &Model, y: &Model) -> Model {
    let mut out = Model::new();
    for (a, ca) in x {
        for (b, cb) in y {
            for i in 0..a.len() {
                for j in 0..b.len() {
                    let rest: Vec<Vec<u8>> = a
                        .iter()
                        .enumerate()
                        .filter(|(k, _)| *k != i)
                        .map(|(_, w)| w.clone())
                        .chain(
                            b.iter()
                                .enumerate()
                                .filter(|(k, _)| *k != j)
                                .map(|(_, w)| w.clone()),
                        )
                        .collect();
                    let c = ca * cb;
                    for (w, s) in [
                        ([&a[i][..], &b[j][..]].concat(), 1),
                        ([&b[j][..], &a[i][..]].concat(), -1),
                    ] {
                        let mut key = rest.clone();
                        key.push(w);
                        add(&mut out, key, &c * Rational::from_integer(s.into()));
                    }
                }
            }
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

fn expressions(leaves: &[u8], memo: &mut BTreeMap<Vec<u8>, Vec<Model>>) -> Vec<Model> {
    if let Some(v) = memo.get(leaves) {
        return v.clone();
    }
    let out = if leaves.len() == 1 {
        vec![Model::from([(vec![vec![leaves[0]]], Rational::one())])]
    } else {
        let mut out = Vec::new();
        let n = leaves.len();
        for mask in 1..(1u32 << n) - 1 {
            let left: Vec<u8> = (0..n)
                .filter(|i| mask & (1 << i) != 0)
                .map(|i| leaves[i])
                .collect();
            let right: Vec<u8> = (0..n)
                .filter(|i| mask & (1 << i) == 0)
                .map(|i| leaves[i])
                .collect();
            let ls = expressions(&left, memo);
            let rs = expressions(&right, memo);
            for l in &ls {
                for r in &rs {
                    out.push(product(l, r));
                    out.push(bracket(l, r));
                }
            }
        }
        out
    };
    memo.insert(leaves.to_vec(), out.clone());
    out
}

/// dim P(n) for the Poisson operad, by spanning all composites of m and
/// π on x1..xn inside Sym(T(V)). Graded signs permute the basis up to
/// sign, so the dimension is the same for every P_d.
pub fn arity_dimension(n: usize) -> usize {
    let leaves: Vec<u8> = (1..=n as u8).collect();
    let exprs = expressions(&leaves, &mut BTreeMap::new());
    let mut index: BTreeMap<Vec<Vec<u8>>, usize> = BTreeMap::new();
    let mut ech = Echelon::new();
    for e in exprs {
        let v = e
            .into_iter()
            .map(|(k, c)| {
                let next = index.len();
                (*index.entry(k).or_insert(next), c)
            })
            .collect();
        ech.insert(v);
    }
    ech.rank()
}

pub fn bridge(d: usize) -> Result<BridgeReport, OperadError> {
    let two = conf_ring(2, d)?;
    let three = conf_ring(3, d)?;
    let conf_sign = two.swap_sign(1, 2);
    // skew-symmetry with the bracket of degree 1 - d on inputs of degree 0
    let s = 1 - d as i64;
    let bracket_sign = -(if (s * s) % 2 == 0 { 1 } else { -1 });
    Ok(BridgeReport {
        d,
        conf_degrees: two.poincare().into_iter().map(|(deg, _)| deg).collect(),
        operation_degrees: vec![0, d - 1],
        conf_sign,
        bracket_sign,
        conf_dim_3: three.total_dim(),
        operad_dim_3: arity_dimension(3),
    })
}
