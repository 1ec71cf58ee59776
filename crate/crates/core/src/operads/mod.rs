//! Algebras given by finite operation tables, checked against the relation
//! suites of Ass, Comm, Lie, P_d, BD_0, BD_0^u, BD_1 and BV; cohomology
//! rings of configuration spaces.

mod bridge;
mod conf;
mod fixtures;

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use crate::kernel::{Element, Parity, Poly, Rational, Ring};

pub use bridge::{arity_dimension, bridge, BridgeReport};
pub use conf::{conf_ring, ConfRing};
pub use fixtures::{
    bd0_exterior, bd0u_exterior, bv_exterior, heisenberg_bd1, matrix_algebra, truncated_polynomial,
};

pub type Vect = Element<usize>;
/// (a, b) ↦ op(e_a, e_b); missing pairs are zero.
pub type Binary = BTreeMap<(usize, usize), Vect>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OperadError {
    #[error("preset {preset} needs the {table} table")]
    MissingTable { preset: String, table: String },
    #[error("preset {preset} needs coefficients in {expected}, the instance uses {found}")]
    WrongRing {
        preset: String,
        expected: String,
        found: String,
    },
    #[error("{op}({args}) has a term {term} of the wrong degree or parity")]
    Inhomogeneous {
        op: String,
        args: String,
        term: String,
    },
    #[error("unknown preset {0}")]
    UnknownPreset(String),
    #[error("configuration rings are computed for 1 <= n <= 6 and d >= 2, got n = {n}, d = {d}")]
    OutOfRange { n: usize, d: usize },
    #[error("{0}")]
    Invalid(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Preset {
    Ass,
    Comm,
    Lie,
    Pd(i64),
    Bd0,
    Bd0u,
    Bd1,
    Bv,
}

impl Preset {
    /// "Ass", "Comm", "Lie", "P_d" with an integer d, "BD_0", "BD_0^u",
    /// "BD_1", "BV".
    pub fn parse(s: &str) -> Result<Preset, OperadError> {
        Ok(match s {
            "Ass" => Preset::Ass,
            "Comm" => Preset::Comm,
            "Lie" => Preset::Lie,
            "BD_0" => Preset::Bd0,
            "BD_0^u" => Preset::Bd0u,
            "BD_1" => Preset::Bd1,
            "BV" => Preset::Bv,
            other => match other.strip_prefix("P_").and_then(|d| d.parse().ok()) {
                Some(d) => Preset::Pd(d),
                None => return Err(OperadError::UnknownPreset(s.to_string())),
            },
        })
    }
}

impl fmt::Display for Preset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Preset::Ass => write!(f, "Ass"),
            Preset::Comm => write!(f, "Comm"),
            Preset::Lie => write!(f, "Lie"),
            Preset::Pd(d) => write!(f, "P_{d}"),
            Preset::Bd0 => write!(f, "BD_0"),
            Preset::Bd0u => write!(f, "BD_0^u"),
            Preset::Bd1 => write!(f, "BD_1"),
            Preset::Bv => write!(f, "BV"),
        }
    }
}

/// A graded algebra with some of the operations m, π, Δ, d given by tables.
/// The coefficient ring is Q, Q[ħ] (ħ of degree 0) or Q[u] (u of degree 2).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraInstance {
    pub ring: Ring,
    pub names: Vec<String>,
    pub degrees: Vec<i64>,
    pub parities: Vec<Parity>,
    pub m: Option<Binary>,
    pub pi: Option<Binary>,
    pub pi_degree: i64,
    pub delta: Option<Vec<Vect>>,
    pub delta_degree: i64,
    /// degree +1
    pub d: Option<Vec<Vect>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationResult {
    pub name: String,
    pub witness: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationReport {
    pub preset: String,
    pub relations: Vec<RelationResult>,
    pub notes: Vec<String>,
}

impl RelationReport {
    pub fn passed(&self) -> bool {
        self.relations.iter().all(|r| r.witness.is_none())
    }

    pub fn failures(&self) -> Vec<&RelationResult> {
        self.relations
            .iter()
            .filter(|r| r.witness.is_some())
            .collect()
    }
}

const BD0U_NOTE: &str =
    "BD_0^u convention: d(ab) = d(a)b + (-1)^|a| a d(b) + u{a,b} with a bracket of degree -1";

fn sign(odd: bool) -> Poly {
    if odd {
        Poly::from_int(-1)
    } else {
        Poly::one()
    }
}

impl AlgebraInstance {
    /// An instance with no tables; parities default to degree mod 2.
    pub fn new(ring: Ring, names: Vec<String>, degrees: Vec<i64>) -> Self {
        let parities = degrees
            .iter()
            .map(|d| Parity::from_bit(d.rem_euclid(2)))
            .collect();
        AlgebraInstance {
            ring,
            names,
            degrees,
            parities,
            m: None,
            pi: None,
            pi_degree: 0,
            delta: None,
            delta_degree: 0,
            d: None,
        }
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn basis(&self, i: usize) -> Vect {
        Vect::basis(i)
    }

    fn odd(&self, i: usize) -> bool {
        self.parities[i].is_odd()
    }

    fn binary(table: &Binary, x: &Vect, y: &Vect) -> Vect {
        let mut out = Vect::zero();
        for (a, ca) in x.iter() {
            for (b, cb) in y.iter() {
                if let Some(v) = table.get(&(*a, *b)) {
                    out.add_scaled(v, &(ca * cb));
                }
            }
        }
        out
    }

    fn unary(table: &[Vect], x: &Vect) -> Vect {
        let mut out = Vect::zero();
        for (a, c) in x.iter() {
            out.add_scaled(&table[*a], c);
        }
        out
    }

    pub fn mul(&self, x: &Vect, y: &Vect) -> Vect {
        self.m
            .as_ref()
            .map_or_else(Vect::zero, |t| Self::binary(t, x, y))
    }

    pub fn bracket(&self, x: &Vect, y: &Vect) -> Vect {
        self.pi
            .as_ref()
            .map_or_else(Vect::zero, |t| Self::binary(t, x, y))
    }

    pub fn apply_delta(&self, x: &Vect) -> Vect {
        self.delta
            .as_ref()
            .map_or_else(Vect::zero, |t| Self::unary(t, x))
    }

    pub fn apply_d(&self, x: &Vect) -> Vect {
        self.d
            .as_ref()
            .map_or_else(Vect::zero, |t| Self::unary(t, x))
    }

    pub fn render(&self, v: &Vect) -> String {
        if v.is_zero() {
            return "0".into();
        }
        let var = self.ring.var_name();
        let parts: Vec<String> = v
            .iter()
            .map(|(i, c)| crate::vla::coefficient_prefix(c, var) + &self.names[*i])
            .collect();
        parts.join(" + ").replace("+ -", "- ")
    }

    /// Degree and parity of every table entry, counting u as degree 2.
    pub fn validate(&self) -> Result<(), OperadError> {
        let n = self.dim();
        if self.degrees.len() != n || self.parities.len() != n {
            return Err(OperadError::Invalid(
                "one degree and parity per basis element".into(),
            ));
        }
        let var_degree = i64::from(self.ring.var_degree());
        let check =
            |op: &str, args: String, deg: i64, par: Parity, v: &Vect| -> Result<(), OperadError> {
                for (k, c) in v.iter() {
                    if *k >= n {
                        return Err(OperadError::Invalid(format!(
                            "{op}({args}) names basis index {k}"
                        )));
                    }
                    let shifts: Vec<i64> = if var_degree == 0 {
                        vec![0]
                    } else {
                        (0..=c.degree().unwrap_or(0))
                            .filter(|e| !c.coeff(*e).is_zero())
                            .map(|e| var_degree * e as i64)
                            .collect()
                    };
                    if shifts.iter().any(|s| self.degrees[*k] + s != deg)
                        || self.parities[*k] != par
                    {
                        return Err(OperadError::Inhomogeneous {
                            op: op.to_string(),
                            args,
                            term: self.names[*k].clone(),
                        });
                    }
                }
                Ok(())
            };
        for (name, table, shift) in [("m", &self.m, 0), ("π", &self.pi, self.pi_degree)] {
            let Some(t) = table else { continue };
            for (&(a, b), v) in t {
                if a >= n || b >= n {
                    return Err(OperadError::Invalid(format!(
                        "{name} table names basis index outside 0..{n}"
                    )));
                }
                let par = self.parities[a]
                    .add(self.parities[b])
                    .add(Parity::from_bit(shift.rem_euclid(2)));
                check(
                    name,
                    format!("{}, {}", self.names[a], self.names[b]),
                    self.degrees[a] + self.degrees[b] + shift,
                    par,
                    v,
                )?;
            }
        }
        for (name, table, shift) in [("Δ", &self.delta, self.delta_degree), ("d", &self.d, 1)] {
            let Some(t) = table else { continue };
            if t.len() != n {
                return Err(OperadError::Invalid(format!(
                    "{name} table needs {n} entries"
                )));
            }
            for (a, v) in t.iter().enumerate() {
                let par = self.parities[a].add(Parity::from_bit(shift.rem_euclid(2)));
                check(name, self.names[a].clone(), self.degrees[a] + shift, par, v)?;
            }
        }
        Ok(())
    }

    /// Substitute a rational value for ħ (or u), giving an instance over Q.
    pub fn specialize(&self, value: &Rational) -> AlgebraInstance {
        let ev = |v: &Vect| v.map_coeffs(|c| Poly::constant(c.eval(value)));
        let bin = |t: &Binary| t.iter().map(|(k, v)| (*k, ev(v))).collect::<Binary>();
        AlgebraInstance {
            ring: Ring::Q,
            m: self.m.as_ref().map(bin),
            pi: self.pi.as_ref().map(bin),
            delta: self.delta.as_ref().map(|t| t.iter().map(ev).collect()),
            d: self.d.as_ref().map(|t| t.iter().map(ev).collect()),
            ..self.clone()
        }
    }

    fn pairs(&self, name: &str, f: impl Fn(usize, usize) -> Vect) -> RelationResult {
        for a in 0..self.dim() {
            for b in 0..self.dim() {
                let r = f(a, b);
                if !r.is_zero() {
                    return RelationResult {
                        name: name.into(),
                        witness: Some(format!(
                            "({}, {}): {}",
                            self.names[a],
                            self.names[b],
                            self.render(&r)
                        )),
                    };
                }
            }
        }
        RelationResult {
            name: name.into(),
            witness: None,
        }
    }

    fn triples(&self, name: &str, f: impl Fn(usize, usize, usize) -> Vect) -> RelationResult {
        for a in 0..self.dim() {
            for b in 0..self.dim() {
                for c in 0..self.dim() {
                    let r = f(a, b, c);
                    if !r.is_zero() {
                        return RelationResult {
                            name: name.into(),
                            witness: Some(format!(
                                "({}, {}, {}): {}",
                                self.names[a],
                                self.names[b],
                                self.names[c],
                                self.render(&r)
                            )),
                        };
                    }
                }
            }
        }
        RelationResult {
            name: name.into(),
            witness: None,
        }
    }

    fn singles(&self, name: &str, f: impl Fn(usize) -> Vect) -> RelationResult {
        for a in 0..self.dim() {
            let r = f(a);
            if !r.is_zero() {
                return RelationResult {
                    name: name.into(),
                    witness: Some(format!("{}: {}", self.names[a], self.render(&r))),
                };
            }
        }
        RelationResult {
            name: name.into(),
            witness: None,
        }
    }

    fn e(&self, i: usize) -> Vect {
        Vect::basis(i)
    }

    fn associativity(&self) -> RelationResult {
        self.triples("associativity", |a, b, c| {
            let (x, y, z) = (self.e(a), self.e(b), self.e(c));
            self.mul(&self.mul(&x, &y), &z)
                .sub(&self.mul(&x, &self.mul(&y, &z)))
        })
    }

    fn commutativity(&self) -> RelationResult {
        self.pairs("commutativity", |a, b| {
            let (x, y) = (self.e(a), self.e(b));
            let s = sign(self.odd(a) && self.odd(b));
            self.mul(&x, &y).sub(&self.mul(&y, &x).scale(&s))
        })
    }

    fn shifted(&self, a: usize) -> bool {
        self.odd(a) ^ (self.pi_degree.rem_euclid(2) == 1)
    }

    /// The bracket with its symbol moved to the front: (-1)^{|π||x|} π(x, y).
    /// The symmetry relations are stated for this form.
    pub fn prefix_bracket(&self, x: &Vect, y: &Vect) -> Vect {
        let odd_pi = self.pi_degree.rem_euclid(2) == 1;
        let mut out = Vect::zero();
        for (a, c) in x.iter() {
            let s = sign(odd_pi && self.odd(*a));
            out.add_assign(&self.bracket(&Vect::term(*a, c * &s), y));
        }
        out
    }

    fn skew(&self) -> RelationResult {
        self.pairs("skew-symmetry", |a, b| {
            let (x, y) = (self.e(a), self.e(b));
            let s = sign(self.shifted(a) && self.shifted(b));
            self.prefix_bracket(&x, &y)
                .plus(&self.prefix_bracket(&y, &x).scale(&s))
        })
    }

    fn jacobi(&self) -> RelationResult {
        self.triples("Jacobi", |a, b, c| {
            let (x, y, z) = (self.e(a), self.e(b), self.e(c));
            let g = |p: &Vect, q: &Vect| self.prefix_bracket(p, q);
            let s = sign(self.shifted(a) && self.shifted(b));
            let lhs = g(&x, &g(&y, &z));
            let r1 = g(&g(&x, &y), &z);
            let r2 = g(&y, &g(&x, &z)).scale(&s);
            lhs.sub(&r1).sub(&r2)
        })
    }

    fn leibniz(&self) -> RelationResult {
        self.triples("Leibniz", |a, b, c| {
            let (x, y, z) = (self.e(a), self.e(b), self.e(c));
            let g = |p: &Vect, q: &Vect| self.prefix_bracket(p, q);
            let s = sign(self.shifted(a) && self.odd(b));
            let lhs = g(&x, &self.mul(&y, &z));
            let r1 = self.mul(&g(&x, &y), &z);
            let r2 = self.mul(&y, &g(&x, &z)).scale(&s);
            lhs.sub(&r1).sub(&r2)
        })
    }

    fn bd1_commutator(&self) -> RelationResult {
        self.pairs("ab - (-1)^{|a||b|} ba = ħ{a,b}", |a, b| {
            let (x, y) = (self.e(a), self.e(b));
            let s = sign(self.odd(a) && self.odd(b));
            let comm = self.mul(&x, &y).sub(&self.mul(&y, &x).scale(&s));
            comm.sub(&self.bracket(&x, &y).scale(&Poly::var()))
        })
    }

    fn d_squared(&self) -> RelationResult {
        self.singles("d∘d = 0", |a| self.apply_d(&self.apply_d(&self.e(a))))
    }

    fn deformed_leibniz(&self, var: &str) -> RelationResult {
        let name = format!("d(ab) = d(a)b + (-1)^|a| a d(b) + {var}{{a,b}}");
        self.pairs(&name, |a, b| {
            let (x, y) = (self.e(a), self.e(b));
            let lhs = self.apply_d(&self.mul(&x, &y));
            let r1 = self.mul(&self.apply_d(&x), &y);
            let r2 = self.mul(&x, &self.apply_d(&y)).scale(&sign(self.odd(a)));
            let r3 = self.bracket(&x, &y).scale(&Poly::var());
            lhs.sub(&r1).sub(&r2).sub(&r3)
        })
    }

    fn d_derives_bracket(&self) -> RelationResult {
        self.pairs("d{a,b} = {da,b} + (-1)^{|a|+|π|} {a,db}", |a, b| {
            let (x, y) = (self.e(a), self.e(b));
            let g = |p: &Vect, q: &Vect| self.prefix_bracket(p, q);
            let lhs = self.apply_d(&g(&x, &y));
            let r1 = g(&self.apply_d(&x), &y);
            let r2 = g(&x, &self.apply_d(&y)).scale(&sign(self.shifted(a)));
            lhs.sub(&r1).sub(&r2)
        })
    }

    fn bv(&self) -> RelationResult {
        let odd_delta = self.delta_degree.rem_euclid(2) == 1;
        self.pairs("Δ(ab) - Δ(a)b - (-1)^{|Δ||a|} aΔ(b) = {a,b}", |a, b| {
            let (x, y) = (self.e(a), self.e(b));
            let lhs = self.apply_delta(&self.mul(&x, &y));
            let r1 = self.mul(&self.apply_delta(&x), &y);
            let r2 = self
                .mul(&x, &self.apply_delta(&y))
                .scale(&sign(odd_delta && self.odd(a)));
            lhs.sub(&r1).sub(&r2).sub(&self.bracket(&x, &y))
        })
    }

    fn delta_squared(&self) -> RelationResult {
        self.singles("Δ∘Δ = 0", |a| {
            self.apply_delta(&self.apply_delta(&self.e(a)))
        })
    }

    fn degree_result(&self, expected: i64) -> RelationResult {
        RelationResult {
            name: format!("bracket degree {expected}"),
            witness: (self.pi_degree != expected)
                .then(|| format!("declared degree {}", self.pi_degree)),
        }
    }

    fn require(&self, preset: Preset, tables: &[&str]) -> Result<(), OperadError> {
        for t in tables {
            let present = match *t {
                "m" => self.m.is_some(),
                "π" => self.pi.is_some(),
                "Δ" => self.delta.is_some(),
                _ => self.d.is_some(),
            };
            if !present {
                return Err(OperadError::MissingTable {
                    preset: preset.to_string(),
                    table: t.to_string(),
                });
            }
        }
        Ok(())
    }

    fn require_ring(&self, preset: Preset, ring: Ring) -> Result<(), OperadError> {
        if self.ring != ring {
            return Err(OperadError::WrongRing {
                preset: preset.to_string(),
                expected: ring.to_string(),
                found: self.ring.to_string(),
            });
        }
        Ok(())
    }

    /// Evaluate every relation of `preset` on all basis pairs and triples.
    pub fn check(&self, preset: Preset) -> Result<RelationReport, OperadError> {
        self.validate()?;
        let mut rel = Vec::new();
        let mut notes = Vec::new();
        match preset {
            Preset::Ass => {
                self.require(preset, &["m"])?;
                rel.push(self.associativity());
            }
            Preset::Comm => {
                self.require(preset, &["m"])?;
                rel.extend([self.associativity(), self.commutativity()]);
            }
            Preset::Lie => {
                self.require(preset, &["π"])?;
                rel.extend([self.skew(), self.jacobi()]);
            }
            Preset::Pd(d) => {
                self.require(preset, &["m", "π"])?;
                rel.extend([
                    self.degree_result(1 - d),
                    self.associativity(),
                    self.commutativity(),
                    self.skew(),
                    self.jacobi(),
                    self.leibniz(),
                ]);
            }
            Preset::Bd0 | Preset::Bd0u => {
                let (ring, deg, var) = if preset == Preset::Bd0 {
                    (Ring::Hbar, 1, "ħ")
                } else {
                    notes.push(BD0U_NOTE.to_string());
                    (Ring::U, -1, "u")
                };
                self.require(preset, &["m", "π", "d"])?;
                self.require_ring(preset, ring)?;
                rel.extend([
                    self.degree_result(deg),
                    self.associativity(),
                    self.commutativity(),
                    self.skew(),
                    self.jacobi(),
                    self.leibniz(),
                    self.d_squared(),
                    self.deformed_leibniz(var),
                    self.d_derives_bracket(),
                ]);
            }
            Preset::Bd1 => {
                self.require(preset, &["m", "π"])?;
                self.require_ring(preset, Ring::Hbar)?;
                rel.extend([
                    self.degree_result(0),
                    self.associativity(),
                    self.bd1_commutator(),
                    self.skew(),
                    self.jacobi(),
                    self.leibniz(),
                ]);
            }
            Preset::Bv => {
                self.require(preset, &["m", "π", "Δ"])?;
                rel.extend([
                    self.associativity(),
                    self.commutativity(),
                    self.delta_squared(),
                    self.bv(),
                ]);
            }
        }
        Ok(RelationReport {
            preset: preset.to_string(),
            relations: rel,
            notes,
        })
    }
}
