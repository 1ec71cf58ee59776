//! Vertex algebra axiom checks and topological structure.

use std::fmt::Debug;

use num_traits::{Signed, Zero};

use super::{Monomial, State, VertexAlgebra, VertexError};
use crate::kernel::poly::{binomial, factorial};
use crate::kernel::{int, Element, Parity, Poly, Rational};

/// Anything with a vacuum, translation and n-th products on a finite
/// weight-truncated basis.
pub trait VertexStructure {
    type B: Ord + Clone + Debug;

    /// All basis states through the weight cutoff.
    fn states(&self) -> Vec<Self::B>;
    fn weight(&self, b: &Self::B) -> Rational;
    fn parity(&self, b: &Self::B) -> Parity;
    fn vacuum(&self) -> Self::B;
    fn generators(&self) -> Vec<Self::B>;
    fn product(&self, a: &Self::B, n: i64, b: &Self::B) -> Element<Self::B>;
    fn translation(&self, a: &Self::B) -> Element<Self::B>;
    fn cutoff(&self) -> Rational;
    fn describe(&self, e: &Element<Self::B>) -> String {
        format!("{e:?}")
    }
}

impl VertexStructure for VertexAlgebra {
    type B = Monomial;

    fn states(&self) -> Vec<Monomial> {
        self.basis().values().flatten().cloned().collect()
    }
    fn weight(&self, b: &Monomial) -> Rational {
        VertexAlgebra::weight(self, b)
    }
    fn parity(&self, b: &Monomial) -> Parity {
        VertexAlgebra::parity(self, b)
    }
    fn vacuum(&self) -> Monomial {
        Monomial::vacuum()
    }
    fn generators(&self) -> Vec<Monomial> {
        self.generator_states()
    }
    fn product(&self, a: &Monomial, n: i64, b: &Monomial) -> State {
        self.product_unchecked(&State::basis(a.clone()), n, &State::basis(b.clone()))
    }
    fn translation(&self, a: &Monomial) -> State {
        VertexAlgebra::translation(self, &State::basis(a.clone()))
    }
    fn cutoff(&self) -> Rational {
        self.cutoff.clone()
    }
    fn describe(&self, e: &State) -> String {
        self.render(e)
    }
}

/// Outcome of a battery of checks: each entry is (name, witness on failure).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomReport {
    pub checks: Vec<(String, Option<String>)>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.1.is_none())
    }

    pub fn failures(&self) -> Vec<&(String, Option<String>)> {
        self.checks.iter().filter(|c| c.1.is_some()).collect()
    }
}

fn prod_elem<V: VertexStructure>(
    v: &V,
    a: &Element<V::B>,
    n: i64,
    b: &Element<V::B>,
) -> Element<V::B> {
    let mut out = Element::zero();
    for (x, cx) in a.iter() {
        for (y, cy) in b.iter() {
            out.add_scaled(&v.product(x, n, y), &(cx * cy));
        }
    }
    out
}

fn trans_elem<V: VertexStructure>(v: &V, a: &Element<V::B>) -> Element<V::B> {
    let mut out = Element::zero();
    for (x, c) in a.iter() {
        out.add_scaled(&v.translation(x), c);
    }
    out
}

fn parity_sign(p: Parity, q: Parity) -> Poly {
    Poly::from_int(p.koszul(q))
}

/// Vacuum axioms, TΩ = 0, a_(−2)Ω = Ta, translation covariance, skew-symmetry
/// (states of weight ≤ 3), and the mode commutator identity on generator
/// modes with |index| ≤ cutoff.
pub fn check_vertex_axioms<V: VertexStructure>(v: &V, cutoff: i64) -> AxiomReport {
    let w = v.cutoff();
    let states = v.states();
    let small: Vec<V::B> = states
        .iter()
        .filter(|s| v.weight(s) <= int(3).min(w.clone()))
        .cloned()
        .collect();
    let omega = v.vacuum();
    let basis = |b: &V::B| Element::basis(b.clone());
    let mut checks = Vec::new();

    let mut witness = None;
    'vac: for b in &states {
        if v.product(&omega, -1, b) != basis(b) || v.product(b, -1, &omega) != basis(b) {
            witness = Some(format!("vacuum identity fails on {:?}", b));
            break;
        }
        for n in 0..=cutoff {
            if !v.product(&omega, n, b).is_zero() || !v.product(b, n, &omega).is_zero() {
                witness = Some(format!(
                    "nonnegative mode of or on vacuum nonzero for {:?} at n={n}",
                    b
                ));
                break 'vac;
            }
        }
    }
    checks.push(("vacuum".to_string(), witness));

    let mut witness = (!v.translation(&omega).is_zero()).then(|| "TΩ ≠ 0".to_string());
    if witness.is_none() {
        for b in &states {
            if v.weight(b) + int(1) > w {
                continue;
            }
            let lhs = v.product(b, -2, &omega);
            let rhs = v.translation(b);
            if lhs != rhs {
                witness = Some(format!(
                    "a_(-2)Ω = {} but Ta = {}",
                    v.describe(&lhs),
                    v.describe(&rhs)
                ));
                break;
            }
        }
    }
    checks.push(("translation of vacuum".to_string(), witness));

    let mut witness = None;
    'cov: for a in &small {
        let ta = v.translation(a);
        for b in &small {
            for n in -1..=cutoff {
                let wres = v.weight(a) + v.weight(b) - int(n);
                if wres > w || wres.is_negative() {
                    continue;
                }
                let lhs = prod_elem(v, &ta, n, &basis(b));
                let rhs = v.product(a, n - 1, b).scale(&Poly::from_int(-n));
                if lhs != rhs {
                    witness = Some(format!(
                        "(Ta)_({n})b ≠ −n a_({})b for a={a:?}, b={b:?}: {} vs {}",
                        n - 1,
                        v.describe(&lhs),
                        v.describe(&rhs)
                    ));
                    break 'cov;
                }
            }
        }
    }
    checks.push(("translation covariance".to_string(), witness));

    let mut witness = None;
    'skew: for a in &small {
        for b in &small {
            let wab = v.weight(a) + v.weight(b);
            let sign = parity_sign(v.parity(a), v.parity(b));
            for n in -1..=cutoff {
                if wab.clone() - int(n + 1) > w {
                    continue;
                }
                let lhs = v.product(a, n, b);
                let mut rhs = Element::zero();
                let top: i64 = wab.floor().to_integer().try_into().unwrap_or(0);
                for j in 0..=(top - n).max(0) {
                    let mut t = v.product(b, n + j, a);
                    for _ in 0..j {
                        t = trans_elem(v, &t);
                    }
                    let s = if (n + j + 1) % 2 == 0 { 1 } else { -1 };
                    let c = Rational::from_integer(factorial(j as u32)).recip() * int(s);
                    rhs.add_scaled(&t, &sign.scale(&c));
                }
                if lhs != rhs {
                    witness = Some(format!(
                        "a_({n})b ≠ skew expansion for a={a:?}, b={b:?}: {} vs {}",
                        v.describe(&lhs),
                        v.describe(&rhs)
                    ));
                    break 'skew;
                }
            }
        }
    }
    checks.push(("skew-symmetry".to_string(), witness));

    let mut witness = None;
    let gens = v.generators();
    'comm: for a in &gens {
        for b in &gens {
            let sign = parity_sign(v.parity(a), v.parity(b));
            let wab = v.weight(a) + v.weight(b);
            let top: i64 = wab.floor().to_integer().try_into().unwrap_or(0);
            for c in &states {
                let wc = v.weight(c);
                for m in -cutoff..=cutoff {
                    let wac = v.weight(a) + wc.clone() - int(m + 1);
                    for k in -cutoff..=cutoff {
                        let wbc = v.weight(b) + wc.clone() - int(k + 1);
                        let wres = wab.clone() + wc.clone() - int(m + k + 2);
                        if wac > w || wbc > w || wres > w || wres.is_negative() {
                            continue;
                        }
                        let bc = v.product(b, k, c);
                        let mut lhs = prod_elem(v, &basis(a), m, &bc);
                        let ac = v.product(a, m, c);
                        let back = prod_elem(v, &basis(b), k, &ac);
                        lhs.add_scaled(&back, &-sign.clone());
                        let mut rhs = Element::zero();
                        for j in 0..=top.max(0) {
                            let cj = binomial(m, j);
                            if cj.is_zero() {
                                continue;
                            }
                            let abj = v.product(a, j, b);
                            if abj.is_zero() {
                                continue;
                            }
                            let t = prod_elem(v, &abj, m + k - j, &basis(c));
                            rhs.add_scaled(&t, &Poly::constant(cj));
                        }
                        if lhs != rhs {
                            witness = Some(format!(
                                "[a_({m}), b_({k})]c mismatch for a={a:?}, b={b:?}, c={c:?}: {} vs {}",
                                v.describe(&lhs),
                                v.describe(&rhs)
                            ));
                            break 'comm;
                        }
                    }
                }
            }
        }
    }
    checks.push(("mode commutator".to_string(), witness));

    AxiomReport { checks }
}

/// True iff every product a_(n)b with n ≥ 0 vanishes for basis states of
/// weight ≤ `max_weight`.
pub fn is_commutative<V: VertexStructure>(v: &V, max_weight: &Rational) -> bool {
    let states: Vec<V::B> = v
        .states()
        .into_iter()
        .filter(|s| &v.weight(s) <= max_weight)
        .collect();
    for a in &states {
        for b in &states {
            let wab = v.weight(a) + v.weight(b);
            let top: i64 = wab.floor().to_integer().try_into().unwrap_or(0);
            for n in 0..=top {
                if wab.clone() - int(n + 1) > v.cutoff() {
                    continue;
                }
                if !v.product(a, n, b).is_zero() {
                    return false;
                }
            }
        }
    }
    true
}

/// An operator on the envelope given by its values on generators, extended
/// as a derivation: [O, x_(m)] = (Ox)_(m), plus (Gx)_(m+1) when twisted by G.
#[derive(Clone, Debug)]
pub struct Operator {
    pub parity: Parity,
    /// value on each generator state, by generator index
    pub on_generators: Vec<State>,
    pub twist: Option<Box<Operator>>,
}

impl Operator {
    pub fn zero(v: &VertexAlgebra, parity: Parity) -> Self {
        Operator {
            parity,
            on_generators: vec![State::zero(); v.lie.generators.len()],
            twist: None,
        }
    }

    pub fn apply(&self, v: &VertexAlgebra, s: &State) -> State {
        let mut out = State::zero();
        for (m, c) in s.iter() {
            out.add_scaled(&self.apply_mono(v, m), c);
        }
        out
    }

    fn apply_mono(&self, v: &VertexAlgebra, m: &Monomial) -> State {
        let Some(&first) = m.0.first() else {
            return State::zero();
        };
        let rest = State::basis(Monomial(m.0[1..].to_vec()));
        let mut out = v.product_unchecked(&self.on_generators[first.gen], first.index, &rest);
        if let Some(g) = &self.twist {
            out.add_assign(&v.product_unchecked(
                &g.on_generators[first.gen],
                first.index + 1,
                &rest,
            ));
        }
        let px = v.lie.generators[first.gen].parity;
        let inner = self.apply(v, &rest);
        let moved = v.act(first, &inner);
        out.add_scaled(&moved, &Poly::from_int(self.parity.koszul(px)));
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TopologicalReport {
    pub checks: Vec<(String, Option<String>)>,
}

impl TopologicalReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.1.is_none())
    }
}

/// d² = 0 (an error otherwise), [d, g_{−1}] = T, optionally [d, g_0] = L_0
/// and [T, g_0] = −g_{−1}, and g_{−1} a derivation of all n-th products.
pub fn check_topological(
    v: &VertexAlgebra,
    d: &Operator,
    g: &Operator,
    g0: Option<&Operator>,
) -> Result<TopologicalReport, VertexError> {
    let states = v.states();
    for m in &states {
        let s = State::basis(m.clone());
        let dd = d.apply(v, &d.apply(v, &s));
        if !dd.is_zero() {
            return Err(VertexError::DSquaredNonzero(format!(
                "d²({}) = {}",
                v.render_monomial(m),
                v.render(&dd)
            )));
        }
    }
    let anticomm = |x: &Operator, y: &Operator, s: &State| {
        let mut r = x.apply(v, &y.apply(v, s));
        let k = x.parity.koszul(y.parity);
        r.add_scaled(&y.apply(v, &x.apply(v, s)), &Poly::from_int(-k));
        r
    };
    let mut checks = Vec::new();
    let find = |f: &dyn Fn(&State) -> (State, State)| -> Option<String> {
        states.iter().find_map(|m| {
            let s = State::basis(m.clone());
            let (l, r) = f(&s);
            (l != r).then(|| {
                format!(
                    "on {}: {} vs {}",
                    v.render_monomial(m),
                    v.render(&l),
                    v.render(&r)
                )
            })
        })
    };
    checks.push((
        "[d, g_-1] = T".to_string(),
        find(&|s| (anticomm(d, g, s), v.translation(s))),
    ));
    if let Some(g0) = g0 {
        checks.push((
            "[d, g_0] = L_0".to_string(),
            find(&|s| (anticomm(d, g0, s), v.weight_operator(s))),
        ));
        checks.push((
            "[T, g_0] = -g_-1".to_string(),
            find(&|s| {
                let mut l = v.translation(&g0.apply(v, s));
                l.add_scaled(&g0.apply(v, &v.translation(s)), &Poly::from_int(-1));
                (l, g.apply(v, s).neg())
            }),
        ));
    }
    let mut witness = None;
    'der: for a in &states {
        let sa = State::basis(a.clone());
        let ga = g.apply(v, &sa);
        let sign = Poly::from_int(g.parity.koszul(v.parity(a)));
        for b in &states {
            let sb = State::basis(b.clone());
            let gb = g.apply(v, &sb);
            let wab = v.weight(a) + v.weight(b);
            let top: i64 = wab.floor().to_integer().try_into().unwrap_or(0);
            for n in -1..=top {
                if wab.clone() - int(n + 1) > v.cutoff {
                    continue;
                }
                let lhs = g.apply(v, &v.product_unchecked(&sa, n, &sb));
                let mut rhs = v.product_unchecked(&ga, n, &sb);
                rhs.add_scaled(&v.product_unchecked(&sa, n, &gb), &sign);
                if lhs != rhs {
                    witness = Some(format!(
                        "g_-1({}_({n}){}) = {} but the Leibniz rule gives {}",
                        v.render_monomial(a),
                        v.render_monomial(b),
                        v.render(&lhs),
                        v.render(&rhs)
                    ));
                    break 'der;
                }
            }
        }
    }
    checks.push(("g_-1 derivation".to_string(), witness));
    Ok(TopologicalReport { checks })
}
