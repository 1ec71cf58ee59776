//! Axiom checkers for vertex Lie algebras.

use std::fmt;

use super::{derivative, LBasis, LElem, VertexLieData};
use crate::kernel::poly::{binomial, factorial};
use crate::kernel::{int, Poly, Rational};

/// A failed axiom instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub axiom: &'static str,
    pub a: String,
    pub b: String,
    pub n: u32,
    pub detail: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} fails for ({}, {}) at n={}: {}",
            self.axiom, self.a, self.b, self.n, self.detail
        )
    }
}

fn violation(
    l: &VertexLieData,
    axiom: &'static str,
    a: usize,
    b: usize,
    n: u32,
    detail: String,
) -> Violation {
    Violation {
        axiom,
        a: l.name(a).to_string(),
        b: l.name(b).to_string(),
        n,
        detail,
    }
}

fn pairs(l: &VertexLieData) -> impl Iterator<Item = (usize, usize)> {
    let n = l.generators.len();
    (0..n).flat_map(move |a| (0..n).map(move |b| (a, b)))
}

/// The finite expansion of the singular part of e^{zT} Y(b, −z) a, read off
/// at the coefficient of z^{−n−1}: sign Σ_j (−1)^{n+j+1} T^j/j! (b_(n+j) a).
fn skew_rhs(l: &VertexLieData, b: &LElem, a: &LElem, n: u32, sign: i64, bound: u32) -> LElem {
    let mut out = LElem::zero();
    for j in 0..=bound.saturating_sub(n) + 1 {
        let mut t = l.bracket_elems(b, n + j, a);
        for _ in 0..j {
            t = derivative(&t);
        }
        let s = if (n + j + 1).is_multiple_of(2) { sign } else { -sign };
        let c = Rational::from_integer(factorial(j)).recip() * int(s);
        out.add_scaled(&t, &Poly::constant(c));
    }
    out
}

fn elem(b: LBasis) -> LElem {
    LElem::basis(b)
}

/// Weight homogeneity, finiteness of poles, and (Ta)_(n)b = −n a_(n−1)b,
/// the last compared against the value forced by skew-symmetry from the
/// opposite order.
pub fn check_sesquilinearity(l: &VertexLieData) -> Result<(), Violation> {
    for (&(a, b, n), v) in &l.brackets {
        if n > l.pole_bound(a, b) {
            return Err(violation(
                l,
                "sesquilinearity",
                a,
                b,
                n,
                "pole beyond Δa+Δb".into(),
            ));
        }
        let expect = &l.generators[a].weight + &l.generators[b].weight - int(n as i64 + 1);
        let parity = l.generators[a].parity.add(l.generators[b].parity);
        for k in v.keys() {
            if l.weight_of(k) != expect {
                return Err(violation(
                    l,
                    "sesquilinearity",
                    a,
                    b,
                    n,
                    format!(
                        "term {} has weight {}, expected {}",
                        l.render(&elem(*k)),
                        l.weight_of(k),
                        expect
                    ),
                ));
            }
            if *k != LBasis::Central && l.parity_of(k) != parity {
                return Err(violation(
                    l,
                    "sesquilinearity",
                    a,
                    b,
                    n,
                    "parity not additive".into(),
                ));
            }
        }
    }
    for (a, b) in pairs(l) {
        let bound = l.pole_bound(a, b) + 1;
        let ta = elem(LBasis::Gen { gen: a, dpow: 1 });
        let eb = elem(LBasis::gen(b));
        let sign = l.generators[a].parity.koszul(l.generators[b].parity);
        for n in 0..=bound {
            let direct = if n == 0 {
                LElem::zero()
            } else {
                l.gen_bracket(a, b, n - 1).scale_rational(&int(-(n as i64)))
            };
            let derived = l.bracket_elems(&ta, n, &eb);
            let via_skew = skew_rhs(l, &eb, &ta, n, sign, bound);
            if direct != derived || direct != via_skew {
                return Err(violation(
                    l,
                    "sesquilinearity",
                    a,
                    b,
                    n,
                    format!(
                        "(Ta)_({n})b = {} but skew route gives {}",
                        l.render(&direct),
                        l.render(&via_skew)
                    ),
                ));
            }
        }
    }
    Ok(())
}

/// a_(n)b = (−1)^{p_a p_b} Σ_j (−1)^{n+j+1} T^j/j! (b_(n+j)a) for all
/// generator pairs.
pub fn check_skew_symmetry(l: &VertexLieData) -> Result<(), Violation> {
    for (a, b) in pairs(l) {
        let bound = l.pole_bound(a, b).max(l.max_pole());
        let sign = l.generators[a].parity.koszul(l.generators[b].parity);
        let (ea, eb) = (elem(LBasis::gen(a)), elem(LBasis::gen(b)));
        for n in 0..=bound {
            let lhs = l.gen_bracket(a, b, n);
            let rhs = skew_rhs(l, &eb, &ea, n, sign, bound);
            if lhs != rhs {
                return Err(violation(
                    l,
                    "skew-symmetry",
                    a,
                    b,
                    n,
                    format!("{} vs {}", l.render(&lhs), l.render(&rhs)),
                ));
            }
        }
    }
    Ok(())
}

/// [a_(m), b_(k)]c = Σ_n C(m,n) (a_(n)b)_(m+k−n)c for generators a, b, c and
/// 0 ≤ m, k ≤ cutoff.
pub fn check_jacobi(l: &VertexLieData, cutoff: u32) -> Result<(), Violation> {
    let g = l.generators.len();
    for (a, b) in pairs(l) {
        let sign = l.generators[a].parity.koszul(l.generators[b].parity);
        let (ea, eb) = (elem(LBasis::gen(a)), elem(LBasis::gen(b)));
        for c in 0..g {
            let ec = elem(LBasis::gen(c));
            for m in 0..=cutoff {
                let ac = l.bracket_elems(&ea, m, &ec);
                for k in 0..=cutoff {
                    let mut lhs = l.bracket_elems(&ea, m, &l.bracket_elems(&eb, k, &ec));
                    let back = l.bracket_elems(&eb, k, &ac);
                    lhs.add_scaled(&back, &Poly::from_int(-sign));
                    let mut rhs = LElem::zero();
                    for n in 0..=m {
                        let ab = l.gen_bracket(a, b, n);
                        if ab.is_zero() {
                            continue;
                        }
                        let t = l.bracket_elems(&ab, m + k - n, &ec);
                        rhs.add_scaled(&t, &Poly::constant(binomial(m as i64, n as i64)));
                    }
                    if lhs != rhs {
                        return Err(Violation {
                            axiom: "Jacobi",
                            a: l.name(a).into(),
                            b: l.name(b).into(),
                            n: m,
                            detail: format!(
                                "on {} with k={k}: {} vs {}",
                                l.name(c),
                                l.render(&lhs),
                                l.render(&rhs)
                            ),
                        });
                    }
                }
            }
        }
    }
    Ok(())
}

/// Run all three checkers, with Jacobi at the given cutoff.
pub fn check_all(l: &VertexLieData, cutoff: u32) -> Vec<(&'static str, Result<(), Violation>)> {
    vec![
        ("sesquilinearity", check_sesquilinearity(l)),
        ("skew_symmetry", check_skew_symmetry(l)),
        ("jacobi", check_jacobi(l, cutoff)),
    ]
}
