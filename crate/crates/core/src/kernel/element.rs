//! Sparse linear combinations over opaque basis identifiers.

use std::collections::BTreeMap;
use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use super::poly::{Poly, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub enum Parity {
    #[default]
    Even,
    Odd,
}

impl Parity {
    pub fn is_odd(self) -> bool {
        self == Parity::Odd
    }

    pub fn bit(self) -> u8 {
        self as u8
    }

    pub fn from_bit(b: impl Into<i64>) -> Parity {
        if b.into().rem_euclid(2) == 1 {
            Parity::Odd
        } else {
            Parity::Even
        }
    }

    pub fn add(self, other: Parity) -> Parity {
        Parity::from_bit(self.bit() as i64 + other.bit() as i64)
    }

    /// Koszul sign (-1)^{p q}.
    pub fn koszul(self, other: Parity) -> i64 {
        if self.is_odd() && other.is_odd() {
            -1
        } else {
            1
        }
    }
}

/// A finite linear combination `Σ c_b · b` with no stored zeros.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Element<B: Ord> {
    terms: BTreeMap<B, Poly>,
}

impl<B: Ord> Default for Element<B> {
    fn default() -> Self {
        Element {
            terms: BTreeMap::new(),
        }
    }
}

impl<B: Ord + Clone> Element<B> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(b: B) -> Self {
        Self::term(b, Poly::one())
    }

    pub fn term(b: B, c: Poly) -> Self {
        let mut e = Self::zero();
        e.add_term(b, c);
        e
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, b: &B) -> Poly {
        self.terms.get(b).cloned().unwrap_or_default()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&B, &Poly)> {
        self.terms.iter()
    }

    pub fn keys(&self) -> impl Iterator<Item = &B> {
        self.terms.keys()
    }

    pub fn add_term(&mut self, b: B, c: Poly) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(b) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += &c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &Element<B>, c: &Poly) {
        if c.is_zero() {
            return;
        }
        for (b, v) in &other.terms {
            self.add_term(b.clone(), v * c);
        }
    }

    pub fn add_assign(&mut self, other: &Element<B>) {
        for (b, v) in &other.terms {
            self.add_term(b.clone(), v.clone());
        }
    }

    pub fn scale(&self, c: &Poly) -> Self {
        let mut out = Self::zero();
        out.add_scaled(self, c);
        out
    }

    pub fn scale_rational(&self, c: &Rational) -> Self {
        self.scale(&Poly::constant(c.clone()))
    }

    pub fn neg(&self) -> Self {
        self.scale(&Poly::from_int(-1))
    }

    pub fn sub(&self, other: &Element<B>) -> Self {
        let mut out = self.clone();
        out.add_scaled(other, &Poly::from_int(-1));
        out
    }

    pub fn plus(&self, other: &Element<B>) -> Self {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    /// Apply a coefficient map (e.g. evaluation of the ring variable).
    pub fn map_coeffs(&self, f: impl Fn(&Poly) -> Poly) -> Self {
        let mut out = Self::zero();
        for (b, v) in &self.terms {
            out.add_term(b.clone(), f(v));
        }
        out
    }

    /// Linear extension of a map on basis elements.
    pub fn linear_map<C: Ord + Clone>(&self, mut f: impl FnMut(&B) -> Element<C>) -> Element<C> {
        let mut out = Element::zero();
        for (b, v) in &self.terms {
            out.add_scaled(&f(b), v);
        }
        out
    }

    pub fn into_terms(self) -> BTreeMap<B, Poly> {
        self.terms
    }
}

impl<B: Ord + Clone> FromIterator<(B, Poly)> for Element<B> {
    fn from_iter<I: IntoIterator<Item = (B, Poly)>>(iter: I) -> Self {
        let mut out = Element::zero();
        for (b, c) in iter {
            out.add_term(b, c);
        }
        out
    }
}

impl<B: Ord + fmt::Debug> fmt::Debug for Element<B> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(b, c)| format!("({c:?})·{b:?}"))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Attributes carried by an interned basis token.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TokenInfo {
    pub name: Arc<str>,
    pub degree: i32,
    pub parity: Parity,
    pub weight: i64,
}

/// An interned basis identifier. Gradings live on the token's table entry.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Token(pub u32);

/// The declared module a set of tokens belongs to.
#[derive(Clone, Debug, Default)]
pub struct TokenTable {
    infos: Vec<TokenInfo>,
    index: HashMap<Arc<str>, Token>,
}

impl TokenTable {
    pub fn new() -> Self {
        Self::default()
    }

    /// Intern a name; re-interning returns the existing token unchanged.
    pub fn intern(&mut self, name: &str, degree: i32, parity: Parity, weight: i64) -> Token {
        if let Some(t) = self.index.get(name) {
            return *t;
        }
        let name: Arc<str> = Arc::from(name);
        let t = Token(self.infos.len() as u32);
        self.infos.push(TokenInfo {
            name: name.clone(),
            degree,
            parity,
            weight,
        });
        self.index.insert(name, t);
        t
    }

    pub fn get(&self, name: &str) -> Option<Token> {
        self.index.get(name).copied()
    }

    pub fn info(&self, t: Token) -> &TokenInfo {
        &self.infos[t.0 as usize]
    }

    pub fn len(&self) -> usize {
        self.infos.len()
    }

    pub fn is_empty(&self) -> bool {
        self.infos.is_empty()
    }

    pub fn tokens(&self) -> impl Iterator<Item = Token> + '_ {
        (0..self.infos.len() as u32).map(Token)
    }
}

/// Sparse element over interned tokens.
pub type GradedElement = Element<Token>;

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zeros_are_not_stored() {
        let mut e: Element<u32> = Element::basis(1);
        e.add_term(1, Poly::from_int(-1));
        assert!(e.is_zero());
        e.add_term(2, Poly::zero());
        assert_eq!(e.len(), 0);
    }

    #[test]
    fn tokens_intern_once() {
        let mut t = TokenTable::new();
        let a = t.intern("a", 0, Parity::Even, 0);
        let b = t.intern("a", 5, Parity::Odd, 3);
        assert_eq!(a, b);
        assert_eq!(t.info(a).degree, 0);
    }
}
