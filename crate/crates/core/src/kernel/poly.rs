//! Univariate polynomials with exact rational coefficients.
//!
//! A `Poly` is the one arithmetic type used for every scalar in the crate:
//! a rational number is a constant polynomial, and the coefficient rings
//! Q[ħ], Q[u] and the symbolic-level ring Q[c] all share this representation.
//! Which variable the polynomial is in is recorded by a [`Ring`] tag on the
//! container (matrix, complex, bracket table), never on the scalar itself.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Rational = BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    BigRational::from_integer(BigInt::from(n))
}

/// Parse `"3"`, `"-1/2"` or `"0.25"` into an exact rational.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().ok()?;
        let d: BigInt = d.trim().parse().ok()?;
        if d.is_zero() {
            return None;
        }
        return Some(BigRational::new(n, d));
    }
    if let Some((whole, frac)) = s.split_once('.') {
        if frac.is_empty() || !frac.chars().all(|c| c.is_ascii_digit()) {
            return None;
        }
        let neg = whole.starts_with('-');
        let w: BigInt = if whole.is_empty() || whole == "-" {
            BigInt::zero()
        } else {
            whole.parse().ok()?
        };
        let f: BigInt = frac.parse().ok()?;
        let scale = num_traits::pow(BigInt::from(10), frac.len());
        let mag = w.abs() * &scale + f;
        let num = if neg { -mag } else { mag };
        return Some(BigRational::new(num, scale));
    }
    s.parse::<BigInt>().ok().map(BigRational::from_integer)
}

/// Coefficient ring of a container.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Ring {
    Q,
    /// Q[ħ]; ħ has cohomological degree 0 and weight 1.
    Hbar,
    /// Q[u]; u has cohomological degree 2.
    U,
    /// Q[name] for a symbolic level such as a central charge.
    Level(String),
}

impl Ring {
    pub fn var_name(&self) -> &str {
        match self {
            Ring::Q => "",
            Ring::Hbar => "ħ",
            Ring::U => "u",
            Ring::Level(s) => s,
        }
    }

    /// Parse a scalar written in this ring's variable (`h`/`hbar` alias ħ).
    pub fn parse_value(&self, s: &str) -> Option<Poly> {
        match self {
            Ring::Hbar => parse_poly(&s.replace("hbar", "ħ").replace('h', "ħ"), "ħ"),
            r => parse_poly(s, r.var_name()),
        }
    }

    /// Cohomological degree of the ring variable.
    pub fn var_degree(&self) -> i32 {
        match self {
            Ring::U => 2,
            _ => 0,
        }
    }

    pub fn is_field(&self) -> bool {
        matches!(self, Ring::Q)
    }

    /// The smallest ring containing both, if one exists. Q embeds everywhere.
    pub fn join(&self, other: &Ring) -> Option<Ring> {
        match (self, other) {
            (Ring::Q, r) | (r, Ring::Q) => Some(r.clone()),
            (a, b) if a == b => Some(a.clone()),
            _ => None,
        }
    }

    pub fn parse(s: &str) -> Option<Ring> {
        match s {
            "Q" => Some(Ring::Q),
            "Q[h]" | "Q[hbar]" | "Q[ħ]" => Some(Ring::Hbar),
            "Q[u]" => Some(Ring::U),
            other => {
                let inner = other.strip_prefix("Q[")?.strip_suffix(']')?;
                if inner.is_empty() || !inner.chars().all(|c| c.is_alphanumeric() || c == '_') {
                    None
                } else {
                    Some(Ring::Level(inner.to_string()))
                }
            }
        }
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ring::Q => write!(f, "Q"),
            r => write!(f, "Q[{}]", r.var_name()),
        }
    }
}

/// A polynomial in one variable over Q, coefficients in ascending degree.
/// The vector never has a trailing zero; the zero polynomial is empty.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<Rational>,
}

impl Poly {
    fn normalize(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        if c.is_zero() {
            Poly::zero()
        } else {
            Poly { coeffs: vec![c] }
        }
    }

    pub fn from_int(n: i64) -> Self {
        Poly::constant(int(n))
    }

    pub fn var() -> Self {
        Poly::monomial(Rational::one(), 1)
    }

    pub fn monomial(c: Rational, deg: usize) -> Self {
        if c.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![Rational::zero(); deg + 1];
        coeffs[deg] = c;
        Poly { coeffs }
    }

    pub fn from_coeffs(coeffs: Vec<Rational>) -> Self {
        let mut p = Poly { coeffs };
        p.normalize();
        p
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// The constant term, or the value when the polynomial is constant.
    pub fn constant_term(&self) -> Rational {
        self.coeffs.first().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn as_constant(&self) -> Option<Rational> {
        self.is_constant().then(|| self.constant_term())
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    /// Lowest exponent with a nonzero coefficient (the u-adic valuation).
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// True when the polynomial is `c·x^k` for a single k.
    pub fn is_monomial(&self) -> bool {
        self.coeffs.iter().filter(|c| !c.is_zero()).count() == 1
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn shift(&self, k: usize) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![Rational::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Poly { coeffs }
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut out = Poly::one();
        for _ in 0..e {
            out = &out * self;
        }
        out
    }

    /// Divide by a nonzero polynomial: returns (quotient, remainder).
    pub fn div_rem(&self, d: &Poly) -> (Poly, Poly) {
        let dd = d.degree().expect("division by the zero polynomial");
        let lead = d.leading().unwrap().clone();
        let mut rem = self.coeffs.clone();
        let n = self.coeffs.len();
        if n <= dd {
            return (Poly::zero(), self.clone());
        }
        let mut q = vec![Rational::zero(); n - dd];
        for i in (0..n - dd).rev() {
            let c = &rem[i + dd] / &lead;
            if !c.is_zero() {
                for (j, dc) in d.coeffs.iter().enumerate() {
                    rem[i + j] -= &c * dc;
                }
            }
            q[i] = c;
        }
        rem.truncate(dd);
        (Poly::from_coeffs(q), Poly::from_coeffs(rem))
    }

    pub fn divides(&self, other: &Poly) -> bool {
        if self.is_zero() {
            return other.is_zero();
        }
        other.div_rem(self).1.is_zero()
    }

    /// Exact quotient, if `d` divides `self`.
    pub fn exact_div(&self, d: &Poly) -> Option<Poly> {
        if d.is_zero() {
            return None;
        }
        let (q, r) = self.div_rem(d);
        r.is_zero().then_some(q)
    }

    pub fn monic(&self) -> Poly {
        match self.leading() {
            None => Poly::zero(),
            Some(l) => self.scale(&(Rational::one() / l)),
        }
    }

    pub fn gcd(a: &Poly, b: &Poly) -> Poly {
        let (mut x, mut y) = (a.clone(), b.clone());
        while !y.is_zero() {
            let r = x.div_rem(&y).1;
            x = y;
            y = r;
        }
        x.monic()
    }

    /// Rational roots of a polynomial with rational coefficients
    /// (candidates from the rational root theorem), sorted and deduplicated.
    pub fn rational_roots(&self) -> Vec<Rational> {
        if self.degree().unwrap_or(0) == 0 {
            return Vec::new();
        }
        // clear denominators
        let lcm = self.coeffs.iter().fold(BigInt::one(), |acc, c| {
            num_integer::Integer::lcm(&acc, c.denom())
        });
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| (c * BigRational::from_integer(lcm.clone())).to_integer())
            .collect();
        let mut roots = Vec::new();
        let v = self.valuation().unwrap_or(0);
        if v > 0 {
            roots.push(Rational::zero());
        }
        let a0 = ints[v].abs();
        let an = ints.last().unwrap().abs();
        let divs = |n: &BigInt| -> Vec<BigInt> {
            let mut out = Vec::new();
            let mut i = BigInt::one();
            while &i * &i <= *n {
                if (n % &i).is_zero() {
                    out.push(i.clone());
                    out.push(n / &i);
                }
                i += 1;
            }
            out
        };
        for p in divs(&a0) {
            for q in divs(&an) {
                for s in [1i64, -1] {
                    let r = BigRational::new(&p * BigInt::from(s), q.clone());
                    if self.eval(&r).is_zero() && !roots.contains(&r) {
                        roots.push(r);
                    }
                }
            }
        }
        roots.sort();
        roots
    }

    /// Render with the given variable name, e.g. `c/2`, `3ħ^2 - 1`.
    pub fn render(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let num = mag.numer().clone();
            let den = mag.denom().clone();
            let mono = match i {
                0 => String::new(),
                1 => var.to_string(),
                k => format!("{var}^{k}"),
            };
            let head = if i == 0 {
                num.to_string()
            } else if num.is_one() {
                mono
            } else {
                format!("{num}{mono}")
            };
            if den.is_one() {
                out.push_str(&head);
            } else {
                out.push_str(&format!("{head}/{den}"));
            }
        }
        out
    }
}

/// Parse the output of [`Poly::render`] back, e.g. `"c/2"`, `"3u^2 - 1"`,
/// `"2*c + 1"`. Constants are accepted in any ring.
pub fn parse_poly(s: &str, var: &str) -> Option<Poly> {
    let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return None;
    }
    let bytes: Vec<char> = s.chars().collect();
    let mut terms = Vec::new();
    let mut start = 0;
    for i in 1..bytes.len() {
        if (bytes[i] == '+' || bytes[i] == '-') && !matches!(bytes[i - 1], '^' | '/' | '*') {
            terms.push(bytes[start..i].iter().collect::<String>());
            start = i;
        }
    }
    terms.push(bytes[start..].iter().collect::<String>());
    let mut out = Poly::zero();
    for t in terms {
        let (neg, body) = match t.strip_prefix('-') {
            Some(b) => (true, b.to_string()),
            None => (false, t.trim_start_matches('+').to_string()),
        };
        let mut term = parse_term(&body, var)?;
        if neg {
            term = -term;
        }
        out += &term;
    }
    Some(out)
}

fn parse_term(t: &str, var: &str) -> Option<Poly> {
    if t.is_empty() {
        return None;
    }
    let Some(pos) = (!var.is_empty()).then(|| t.find(var)).flatten() else {
        return parse_rational(t).map(Poly::constant);
    };
    let head = t[..pos].trim_end_matches('*');
    let mut rest = &t[pos + var.len()..];
    let mut exp = 1usize;
    if let Some(r) = rest.strip_prefix('^') {
        let end = r.find(|c: char| !c.is_ascii_digit()).unwrap_or(r.len());
        exp = r[..end].parse().ok()?;
        rest = &r[end..];
    }
    let mut coeff = if head.is_empty() {
        Rational::one()
    } else {
        parse_rational(head)?
    };
    if let Some(d) = rest.strip_prefix('/') {
        coeff /= parse_rational(d)?;
    } else if !rest.is_empty() {
        return None;
    }
    Some(Poly::monomial(coeff, exp))
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render("x"))
    }
}

impl PartialOrd for Poly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Poly {
    fn cmp(&self, other: &Self) -> Ordering {
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| self.coeffs.iter().rev().cmp(other.coeffs.iter().rev()))
    }
}

impl From<Rational> for Poly {
    fn from(c: Rational) -> Self {
        Poly::constant(c)
    }
}

impl From<i64> for Poly {
    fn from(n: i64) -> Self {
        Poly::from_int(n)
    }
}

impl<'a> Add<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(mut self, rhs: Poly) -> Poly {
        self += &rhs;
        self
    }
}

impl AddAssign<&Poly> for Poly {
    fn add_assign(&mut self, rhs: &Poly) {
        if self.coeffs.len() < rhs.coeffs.len() {
            self.coeffs.resize(rhs.coeffs.len(), Rational::zero());
        }
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a += b;
        }
        self.normalize();
    }
}

impl SubAssign<&Poly> for Poly {
    fn sub_assign(&mut self, rhs: &Poly) {
        if self.coeffs.len() < rhs.coeffs.len() {
            self.coeffs.resize(rhs.coeffs.len(), Rational::zero());
        }
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a -= b;
        }
        self.normalize();
    }
}

impl<'a> Sub<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for Poly {
    type Output = Poly;
    fn sub(mut self, rhs: Poly) -> Poly {
        self -= &rhs;
        self
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            coeffs: self.coeffs.into_iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -self.clone()
    }
}

impl<'a> Mul<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        if rhs.coeffs.len() == 1 {
            return self.scale(&rhs.coeffs[0]);
        }
        if self.coeffs.len() == 1 {
            return rhs.scale(&self.coeffs[0]);
        }
        let mut coeffs = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Poly::from_coeffs(coeffs)
    }
}

impl Mul for Poly {
    type Output = Poly;
    fn mul(self, rhs: Poly) -> Poly {
        &self * &rhs
    }
}

/// A scalar together with the ring it lives in.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Scalar {
    pub ring: Ring,
    pub value: Poly,
}

impl Scalar {
    pub fn new(ring: Ring, value: Poly) -> Self {
        Scalar { ring, value }
    }

    pub fn rational(c: Rational) -> Self {
        Scalar {
            ring: Ring::Q,
            value: Poly::constant(c),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value.render(self.ring.var_name()))
    }
}

/// Binomial coefficient C(m, k) for any integer m (generalized for m < 0).
pub fn binomial(m: i64, k: i64) -> Rational {
    if k < 0 {
        return Rational::zero();
    }
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..k {
        num *= BigInt::from(m - i);
        den *= BigInt::from(i + 1);
    }
    BigRational::new(num, den)
}

/// Falling factorial p (p-1) ... (p-j+1).
pub fn falling(p: i64, j: u32) -> BigInt {
    let mut out = BigInt::one();
    for i in 0..j as i64 {
        out *= BigInt::from(p - i);
    }
    out
}

pub fn factorial(n: u32) -> BigInt {
    (1..=n as i64).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}
