//! Enveloping vertex algebras of vertex Lie algebras, truncated in weight.
//!
//! States are normally ordered monomials of creation modes applied to the
//! vacuum. Everything is computed through the mode algebra
//! [a_(m), b_(n)] = Σ_k C(m,k) (a_(k)b)_(m+n−k), with 1♭ acting as a scalar.

mod checks;
mod table;

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Mutex;

use num_traits::{Signed, Zero};

use crate::kernel::poly::{binomial, falling};
use crate::kernel::{int, rat, Element, Parity, Poly, Rational, Ring, Scalar};
use crate::vla::{check_all, LBasis, VertexLieData, VlaError};

pub use checks::{
    check_topological, check_vertex_axioms, is_commutative, AxiomReport, Operator,
    TopologicalReport, VertexStructure,
};
pub use table::TableVertex;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum VertexError {
    #[error("vertex Lie algebra rejected: {0}")]
    Axiom(String),
    #[error(transparent)]
    Vla(#[from] VlaError),
    #[error("even generator {0} has weight 0, so weight spaces are infinite")]
    InfiniteWeightSpace(String),
    #[error("product has weight {required}, above the cutoff {cutoff}; rebuild with cutoff >= {required}")]
    CutoffExceeded {
        required: Rational,
        cutoff: Rational,
    },
    #[error("coefficient rings {0} and {1} cannot be combined")]
    MixedRings(String, String),
    #[error("unknown generator {0}")]
    UnknownGenerator(String),
    #[error("d∘d is nonzero: {0}")]
    DSquaredNonzero(String),
    #[error("{0}")]
    Invalid(String),
}

/// The mode x_(index) of generator `gen`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Mode {
    pub index: i64,
    pub gen: usize,
}

/// Creation modes in ascending (index, generator) order, applied to the vacuum
/// right to left.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(pub Vec<Mode>);

impl Monomial {
    pub fn vacuum() -> Self {
        Monomial(Vec::new())
    }

    pub fn is_vacuum(&self) -> bool {
        self.0.is_empty()
    }
}

pub type State = Element<Monomial>;

/// A linear combination of modes plus a scalar (the central term).
type ModeSum = (Vec<(Mode, Poly)>, Poly);

pub struct VertexAlgebra {
    pub lie: VertexLieData,
    pub ring: Ring,
    /// the scalar 1♭ acts by
    pub central_value: Poly,
    pub cutoff: Rational,
    basis: BTreeMap<Rational, Vec<Monomial>>,
    mode_cache: Mutex<HashMap<(Mode, Monomial), State>>,
    product_cache: Mutex<HashMap<(Monomial, i64, Monomial), State>>,
}

impl fmt::Debug for VertexAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("VertexAlgebra")
            .field("generators", &self.lie.generators.len())
            .field("cutoff", &self.cutoff)
            .field("dims", &self.dims())
            .finish()
    }
}

/// The enveloping vertex algebra with 1♭ acting as `c`, with basis enumerated
/// through weight `cutoff`.
pub fn build_envelope(
    l: &VertexLieData,
    c: &Scalar,
    cutoff: Rational,
) -> Result<VertexAlgebra, VertexError> {
    for (_, r) in check_all(l, l.max_pole() + 1) {
        r.map_err(|v| VertexError::Axiom(v.to_string()))?;
    }
    VertexAlgebra::new_unchecked(l.clone(), c, cutoff)
}

impl VertexAlgebra {
    /// Build without running the axiom checkers (used for broken fixtures).
    pub fn new_unchecked(
        l: VertexLieData,
        c: &Scalar,
        cutoff: Rational,
    ) -> Result<Self, VertexError> {
        let ring = l
            .ring
            .join(&c.ring)
            .ok_or_else(|| VertexError::MixedRings(l.ring.to_string(), c.ring.to_string()))?;
        if cutoff.is_negative() {
            return Err(VertexError::Invalid("weight cutoff must be >= 0".into()));
        }
        for g in &l.generators {
            if g.weight.is_zero() && g.parity == Parity::Even {
                return Err(VertexError::InfiniteWeightSpace(g.name.clone()));
            }
        }
        let mut v = VertexAlgebra {
            lie: l,
            ring,
            central_value: c.value.clone(),
            cutoff,
            basis: BTreeMap::new(),
            mode_cache: Mutex::new(HashMap::new()),
            product_cache: Mutex::new(HashMap::new()),
        };
        v.enumerate_basis();
        Ok(v)
    }

    fn enumerate_basis(&mut self) {
        let mut modes = Vec::new();
        for (g, gen) in self.lie.generators.iter().enumerate() {
            let mut k = 0i64;
            while &gen.weight + int(k) <= self.cutoff {
                modes.push(Mode {
                    index: -1 - k,
                    gen: g,
                });
                k += 1;
            }
        }
        modes.sort();
        let mut out: BTreeMap<Rational, Vec<Monomial>> = BTreeMap::new();
        let mut cur = Vec::new();
        self.dfs(&modes, 0, &mut cur, Rational::zero(), &mut out);
        for v in out.values_mut() {
            v.sort();
        }
        self.basis = out;
    }

    fn dfs(
        &self,
        modes: &[Mode],
        start: usize,
        cur: &mut Vec<Mode>,
        w: Rational,
        out: &mut BTreeMap<Rational, Vec<Monomial>>,
    ) {
        out.entry(w.clone())
            .or_default()
            .push(Monomial(cur.clone()));
        for i in start..modes.len() {
            let m = modes[i];
            let nw = &w + self.mode_weight(m);
            if nw > self.cutoff {
                continue;
            }
            cur.push(m);
            let next = if self.lie.generators[m.gen].parity.is_odd() {
                i + 1
            } else {
                i
            };
            self.dfs(modes, next, cur, nw, out);
            cur.pop();
        }
    }

    /// Weight change of a mode: Δ − m − 1.
    pub fn mode_weight(&self, m: Mode) -> Rational {
        &self.lie.generators[m.gen].weight - int(m.index + 1)
    }

    pub fn weight(&self, m: &Monomial) -> Rational {
        m.0.iter()
            .map(|x| self.mode_weight(*x))
            .fold(Rational::zero(), |a, b| a + b)
    }

    pub fn parity(&self, m: &Monomial) -> Parity {
        m.0.iter().fold(Parity::Even, |p, x| {
            p.add(self.lie.generators[x.gen].parity)
        })
    }

    /// Sum of generator cohomological degrees.
    pub fn degree(&self, m: &Monomial) -> i32 {
        m.0.iter().map(|x| self.lie.generators[x.gen].degree).sum()
    }

    pub fn basis(&self) -> &BTreeMap<Rational, Vec<Monomial>> {
        &self.basis
    }

    pub fn basis_of_weight(&self, w: &Rational) -> &[Monomial] {
        self.basis.get(w).map_or(&[], |v| v.as_slice())
    }

    /// (weight, dimension) for every weight through the cutoff that occurs.
    pub fn dims(&self) -> Vec<(Rational, usize)> {
        self.basis
            .iter()
            .map(|(w, v)| (w.clone(), v.len()))
            .collect()
    }

    /// Dimensions at integer weights 0..=cutoff.
    pub fn integer_dims(&self) -> Vec<usize> {
        let top = self.cutoff.floor().to_integer().try_into().unwrap_or(0i64);
        (0..=top)
            .map(|w| self.basis_of_weight(&int(w)).len())
            .collect()
    }

    pub fn vacuum(&self) -> State {
        State::basis(Monomial::vacuum())
    }

    pub fn generator(&self, name: &str) -> Result<State, VertexError> {
        let g = self
            .lie
            .index(name)
            .map_err(|_| VertexError::UnknownGenerator(name.to_string()))?;
        Ok(State::basis(Monomial(vec![Mode { index: -1, gen: g }])))
    }

    pub fn generator_states(&self) -> Vec<Monomial> {
        (0..self.lie.generators.len())
            .map(|g| Monomial(vec![Mode { index: -1, gen: g }]))
            .collect()
    }

    fn state_weight(&self, s: &State) -> Option<Rational> {
        s.keys().map(|m| self.weight(m)).max()
    }

    /// [a_(m), b_(n)] for generator modes.
    fn commutator(&self, a: Mode, b: Mode) -> ModeSum {
        let mut modes: BTreeMap<Mode, Poly> = BTreeMap::new();
        let mut scalar = Poly::zero();
        let bound = self.lie.pole_bound(a.gen, b.gen).max(self.lie.max_pole());
        for k in 0..=bound {
            let ab = self.lie.gen_bracket(a.gen, b.gen, k);
            if ab.is_zero() {
                continue;
            }
            let ck = binomial(a.index, k as i64);
            if ck.is_zero() {
                continue;
            }
            let p = a.index + b.index - k as i64;
            for (basis, coeff) in ab.iter() {
                let c = coeff.scale(&ck);
                match basis {
                    LBasis::Central => {
                        if p == -1 {
                            scalar += &(&c * &self.central_value);
                        }
                    }
                    LBasis::Gen { gen, dpow } => {
                        // (∂^j g)_(p) = (−1)^j p(p−1)…(p−j+1) g_(p−j)
                        let f = Rational::from_integer(falling(p, *dpow));
                        if f.is_zero() {
                            continue;
                        }
                        let f = if dpow % 2 == 1 { -f } else { f };
                        let e = modes
                            .entry(Mode {
                                index: p - *dpow as i64,
                                gen: *gen,
                            })
                            .or_default();
                        *e += &c.scale(&f);
                    }
                }
            }
        }
        (
            modes.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
            scalar,
        )
    }

    fn apply_sum(&self, sum: &ModeSum, s: &State) -> State {
        let mut out = s.scale(&sum.1);
        for (m, c) in &sum.0 {
            out.add_scaled(&self.act(*m, s), c);
        }
        out
    }

    /// A single mode acting on a state.
    pub fn act(&self, mode: Mode, s: &State) -> State {
        let mut out = State::zero();
        for (m, c) in s.iter() {
            out.add_scaled(&self.act_mono(mode, m), c);
        }
        out
    }

    fn act_mono(&self, mode: Mode, mono: &Monomial) -> State {
        if (self.weight(mono) + self.mode_weight(mode)).is_negative() {
            return State::zero();
        }
        let key = (mode, mono.clone());
        if let Some(r) = self.mode_cache.lock().expect("cache").get(&key) {
            return r.clone();
        }
        let r = self.act_mono_uncached(mode, mono);
        self.mode_cache
            .lock()
            .expect("cache")
            .insert(key, r.clone());
        r
    }

    fn act_mono_uncached(&self, mode: Mode, mono: &Monomial) -> State {
        let Some(&first) = mono.0.first() else {
            return if mode.index >= 0 {
                State::zero()
            } else {
                State::basis(Monomial(vec![mode]))
            };
        };
        let rest = State::basis(Monomial(mono.0[1..].to_vec()));
        let prepend = || {
            let mut v = Vec::with_capacity(mono.0.len() + 1);
            v.push(mode);
            v.extend_from_slice(&mono.0);
            State::basis(Monomial(v))
        };
        let pm = self.lie.generators[mode.gen].parity;
        match mode.cmp(&first) {
            std::cmp::Ordering::Less => prepend(),
            std::cmp::Ordering::Equal if !pm.is_odd() => prepend(),
            std::cmp::Ordering::Equal => {
                let half = self.commutator(mode, mode);
                self.apply_sum(&half, &rest).scale_rational(&rat(1, 2))
            }
            std::cmp::Ordering::Greater => {
                let pf = self.lie.generators[first.gen].parity;
                let mut out = self.apply_sum(&self.commutator(mode, first), &rest);
                let inner = self.act(mode, &rest);
                let moved = self.act(first, &inner);
                out.add_scaled(&moved, &Poly::from_int(pm.koszul(pf)));
                out
            }
        }
    }

    /// Apply a word of modes, rightmost first.
    pub fn apply_word(&self, word: &[Mode], s: &State) -> State {
        word.iter()
            .rev()
            .fold(s.clone(), |acc, m| self.act(*m, &acc))
    }

    /// a_(n)b with the weight guard.
    pub fn nth_product(&self, a: &State, n: i64, b: &State) -> Result<State, VertexError> {
        if let (Some(wa), Some(wb)) = (self.state_weight(a), self.state_weight(b)) {
            let w = wa + wb - int(n + 1);
            if w > self.cutoff {
                return Err(VertexError::CutoffExceeded {
                    required: w,
                    cutoff: self.cutoff.clone(),
                });
            }
        }
        Ok(self.product_unchecked(a, n, b))
    }

    pub(crate) fn product_unchecked(&self, a: &State, n: i64, b: &State) -> State {
        let mut out = State::zero();
        for (ma, ca) in a.iter() {
            for (mb, cb) in b.iter() {
                out.add_scaled(&self.product_mono(ma, n, mb), &(ca * cb));
            }
        }
        out
    }

    fn product_state(&self, ma: &Monomial, n: i64, b: &State) -> State {
        let mut out = State::zero();
        for (mb, cb) in b.iter() {
            out.add_scaled(&self.product_mono(ma, n, mb), cb);
        }
        out
    }

    fn product_mono(&self, ma: &Monomial, n: i64, mb: &Monomial) -> State {
        if (self.weight(ma) + self.weight(mb) - int(n + 1)).is_negative() {
            return State::zero();
        }
        if ma.is_vacuum() {
            return if n == -1 {
                State::basis(mb.clone())
            } else {
                State::zero()
            };
        }
        if mb.is_vacuum() && n == -1 {
            return State::basis(ma.clone());
        }
        if mb.is_vacuum() && n >= 0 {
            return State::zero();
        }
        if ma.0.len() == 1 && ma.0[0].index == -1 {
            return self.act_mono(
                Mode {
                    index: n,
                    gen: ma.0[0].gen,
                },
                mb,
            );
        }
        let key = (ma.clone(), n, mb.clone());
        if let Some(r) = self.product_cache.lock().expect("cache").get(&key) {
            return r.clone();
        }
        let r = self.borcherds(ma, n, mb);
        self.product_cache
            .lock()
            .expect("cache")
            .insert(key, r.clone());
        r
    }

    /// (x_(m)R)_(n)c = Σ_j (−1)^j C(m,j) [x_(m−j)(R_(n+j)c)
    ///                 − (−1)^m (−1)^{p_x p_R} R_(m+n−j)(x_(j)c)].
    fn borcherds(&self, ma: &Monomial, n: i64, mb: &Monomial) -> State {
        let x = ma.0[0];
        let r = Monomial(ma.0[1..].to_vec());
        let m = x.index;
        let c = State::basis(mb.clone());
        let px = self.lie.generators[x.gen].parity;
        let pr = self.parity(&r);
        let dx = &self.lie.generators[x.gen].weight;
        let wc = self.weight(mb);
        let wr = self.weight(&r);
        let floor = |q: Rational| -> i64 { q.floor().to_integer().try_into().unwrap_or(i64::MAX) };
        let j1 = floor(&wr + &wc - int(n + 1));
        let j2 = floor(dx + &wc - int(1));
        let sign2 = if m.rem_euclid(2) == 1 {
            -px.koszul(pr)
        } else {
            px.koszul(pr)
        };
        let mut out = State::zero();
        for j in 0..=j1.max(j2).max(-1) {
            let cj = binomial(m, j);
            if cj.is_zero() {
                continue;
            }
            let cj = if j % 2 == 1 { -cj } else { cj };
            let cj = Poly::constant(cj);
            if j <= j1 {
                let inner = self.product_state(&r, n + j, &c);
                if !inner.is_zero() {
                    let t = self.act(
                        Mode {
                            index: m - j,
                            gen: x.gen,
                        },
                        &inner,
                    );
                    out.add_scaled(&t, &cj);
                }
            }
            if j <= j2 {
                let inner = self.act(
                    Mode {
                        index: j,
                        gen: x.gen,
                    },
                    &c,
                );
                if !inner.is_zero() {
                    let t = self.product_state(&r, m + n - j, &inner);
                    out.add_scaled(&t, &cj.scale(&int(-sign2)));
                }
            }
        }
        out
    }

    /// The translation operator T, a derivation with [T, x_(m)] = −m x_(m−1).
    pub fn translation(&self, s: &State) -> State {
        let mut out = State::zero();
        for (mono, c) in s.iter() {
            for i in 0..mono.0.len() {
                let m = mono.0[i];
                if m.index == 0 {
                    continue;
                }
                let mut word = mono.0.clone();
                word[i] = Mode {
                    index: m.index - 1,
                    gen: m.gen,
                };
                let t = self.apply_word(&word, &self.vacuum());
                out.add_scaled(&t, &c.scale(&int(-m.index)));
            }
        }
        out
    }

    /// n ↦ a_(n)b for n ≥ 0, zeros omitted.
    pub fn singular_ope(&self, a: &State, b: &State) -> Result<BTreeMap<i64, State>, VertexError> {
        let (Some(wa), Some(wb)) = (self.state_weight(a), self.state_weight(b)) else {
            return Ok(BTreeMap::new());
        };
        let top: i64 = (wa + wb).floor().to_integer().try_into().unwrap_or(0);
        let mut out = BTreeMap::new();
        for n in 0..=top {
            let p = self.nth_product(a, n, b)?;
            if !p.is_zero() {
                out.insert(n, p);
            }
        }
        Ok(out)
    }

    /// Human-readable state: `x` for x_(−1)Ω, `Tx` for x_(−2)Ω,
    /// `T^(k)x` for the divided power x_(−k−1)Ω, `:a b:` for products.
    pub fn render(&self, s: &State) -> String {
        if s.is_zero() {
            return "0".into();
        }
        let var = self.ring.var_name();
        let parts: Vec<String> = s
            .iter()
            .map(|(m, c)| crate::vla::coefficient_prefix(c, var) + &self.render_monomial(m))
            .collect();
        parts.join(" + ").replace("+ -", "- ")
    }

    pub fn render_monomial(&self, m: &Monomial) -> String {
        if m.is_vacuum() {
            return "Ω".into();
        }
        let factors: Vec<String> =
            m.0.iter()
                .map(|x| {
                    let name = self.lie.name(x.gen);
                    match -x.index - 1 {
                        0 => name.to_string(),
                        1 => format!("T{name}"),
                        k if k > 1 => format!("T^({k}){name}"),
                        _ => format!("{name}_({})", x.index),
                    }
                })
                .collect();
        if factors.len() == 1 {
            factors[0].clone()
        } else {
            format!(":{}:", factors.join(" "))
        }
    }

    /// Parse a mode list such as `[["J^e", -1], ["J^f", -2]]` into a state.
    pub fn state_from_modes(&self, modes: &[(String, i64)]) -> Result<State, VertexError> {
        let mut word = Vec::new();
        for (name, idx) in modes {
            let g = self
                .lie
                .index(name)
                .map_err(|_| VertexError::UnknownGenerator(name.clone()))?;
            word.push(Mode {
                index: *idx,
                gen: g,
            });
        }
        Ok(self.apply_word(&word, &self.vacuum()))
    }

    /// Multiply every monomial by its weight (the operator L_0 on homogeneous states).
    pub fn weight_operator(&self, s: &State) -> State {
        let mut out = State::zero();
        for (m, c) in s.iter() {
            out.add_term(m.clone(), c.scale(&self.weight(m)));
        }
        out
    }
}

/// The coefficient of the single-term element `x`, or None.
pub fn single_coefficient(s: &State) -> Option<(&Monomial, &Poly)> {
    if s.len() == 1 {
        s.iter().next()
    } else {
        None
    }
}
