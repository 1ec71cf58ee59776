//! Invariant polynomial forms on affine space with a diagonal torus action.

use super::{koszul_t, matrix, EquivariantError, MixedComplex, UComplex};
use crate::kernel::{int, Rational};

/// The invariant forms as a mixed complex (d_dR, ι_{ξ_i}) and its Koszul
/// complex. Forms are kept up to total x-degree `cutoff`, counting dx_a
/// like x_a; d and ι preserve it, so the truncation is a subcomplex.
#[derive(Clone, Debug)]
pub struct CartanModel {
    pub forms: MixedComplex,
    pub complex: UComplex,
    pub cutoff: usize,
    /// true when an invariant form of x-degree `cutoff` + 1 or + 2 exists,
    /// so classes may be missing above the horizon
    pub truncated: bool,
}

/// x^α dx_I as (α, sorted I).
type Form = (Vec<usize>, Vec<usize>);

fn exponents(m: usize, total: usize) -> Vec<Vec<usize>> {
    if m == 0 {
        return if total == 0 {
            vec![Vec::new()]
        } else {
            Vec::new()
        };
    }
    let mut out = Vec::new();
    for first in 0..=total {
        for mut rest in exponents(m - 1, total - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

fn subsets(m: usize) -> Vec<Vec<usize>> {
    (0u32..1 << m)
        .map(|mask| (0..m).filter(|a| mask & (1 << a) != 0).collect())
        .collect()
}

fn invariant(weights: &[Vec<i64>], f: &Form) -> bool {
    weights.iter().all(|w| {
        let s: i64 = (0..w.len())
            .map(|a| w[a] * (f.0[a] as i64 + i64::from(f.1.contains(&a))))
            .sum();
        s == 0
    })
}

fn forms_of_degree(weights: &[Vec<i64>], m: usize, total: usize) -> Vec<Form> {
    let mut out = Vec::new();
    for sub in subsets(m) {
        if sub.len() > total {
            continue;
        }
        for alpha in exponents(m, total - sub.len()) {
            let f = (alpha, sub.clone());
            if invariant(weights, &f) {
                out.push(f);
            }
        }
    }
    out
}

fn render(m: usize, f: &Form) -> String {
    let var = |a: usize| {
        if m == 1 {
            "x".to_string()
        } else {
            format!("x{}", a + 1)
        }
    };
    let mut parts = Vec::new();
    for (a, &e) in f.0.iter().enumerate() {
        match e {
            0 => {}
            1 => parts.push(var(a)),
            e => parts.push(format!("{}^{e}", var(a))),
        }
    }
    for &a in &f.1 {
        parts.push(format!("d{}", var(a)));
    }
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join(" ")
    }
}

/// `weights[i][a]` is the weight of torus factor i on coordinate x_a.
pub fn cartan_model(weights: &[Vec<i64>], cutoff: usize) -> Result<CartanModel, EquivariantError> {
    let m = weights.first().map_or(0, Vec::len);
    if weights.iter().any(|w| w.len() != m) {
        return Err(EquivariantError::Invalid(
            "every torus factor needs one weight per coordinate".into(),
        ));
    }
    if cutoff < 1 {
        return Err(EquivariantError::Invalid(
            "the polynomial cutoff must be at least 1".into(),
        ));
    }
    let basis: Vec<Form> = (0..=cutoff)
        .flat_map(|t| forms_of_degree(weights, m, t))
        .collect();
    let index = |f: &Form| {
        basis
            .iter()
            .position(|g| g == f)
            .expect("truncation is closed")
    };
    let n = basis.len();
    let mut d = Vec::new();
    let mut h: Vec<Vec<(usize, usize, Rational)>> = vec![Vec::new(); weights.len()];
    for (j, f) in basis.iter().enumerate() {
        for a in 0..m {
            if f.0[a] == 0 || f.1.contains(&a) {
                continue;
            }
            let mut alpha = f.0.clone();
            alpha[a] -= 1;
            let before = f.1.iter().filter(|&&b| b < a).count();
            let mut set = f.1.clone();
            set.insert(before, a);
            let sign = if before % 2 == 0 { 1 } else { -1 };
            d.push((index(&(alpha, set)), j, int(sign * f.0[a] as i64)));
        }
        for (p, &a) in f.1.iter().enumerate() {
            let mut alpha = f.0.clone();
            alpha[a] += 1;
            let mut set = f.1.clone();
            set.remove(p);
            let sign = if p % 2 == 0 { 1 } else { -1 };
            let target = index(&(alpha, set));
            for (i, w) in weights.iter().enumerate() {
                if w[a] != 0 {
                    h[i].push((target, j, int(sign * w[a])));
                }
            }
        }
    }
    let names = basis.iter().map(|f| render(m, f)).collect();
    let degrees = basis.iter().map(|f| f.1.len() as i64).collect();
    let forms = MixedComplex::new(
        names,
        degrees,
        matrix(n, &d),
        h.iter().map(|e| matrix(n, e)).collect(),
    )?;
    let complex = koszul_t(&forms)?;
    let truncated = (cutoff + 1..=cutoff + 2).any(|t| !forms_of_degree(weights, m, t).is_empty());
    Ok(CartanModel {
        forms,
        complex,
        cutoff,
        truncated,
    })
}
