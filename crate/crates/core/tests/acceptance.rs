//! Acceptance suite: one PASS/FAIL line per criterion, written straight to
//! stdout so it shows up even when test output is captured.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::{Duration, Instant};

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

use chiralg::brst::{euler_characteristics, fundamental_sl2, BrstComplex, Matter};
use chiralg::equivariant::{
    cartan_model, koszul_h, koszul_t, matrix, regular_lambda, MixedComplex, UComplex,
};
use chiralg::kernel::{int, rat, Element, Parity, Poly, Rational, Ring, Scalar};
use chiralg::operads::{bd0_exterior, bridge, bv_exterior, conf_ring, heisenberg_bd1, Preset};
use chiralg::vertex::{build_envelope, check_vertex_axioms, State, TableVertex, VertexAlgebra};
use chiralg::vla::{
    check_all, check_skew_symmetry, heisenberg, kac_moody, virasoro, weyl_pair, weyl_pair_with,
    LBasis, LElem, LieAlgebra, VertexLieData,
};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn symbol(name: &str) -> Scalar {
    Scalar::new(Ring::Level(name.into()), Poly::var())
}

fn one() -> Scalar {
    Scalar::rational(int(1))
}

fn envelope(l: &VertexLieData, cutoff: i64) -> Result<VertexAlgebra, String> {
    build_envelope(l, &one(), int(cutoff)).map_err(|e| e.to_string())
}

// ---------------------------------------------------------------- OPEs

/// Compare singular_ope(a, b) with an expected pole table {n ↦ a_(n)b}.
fn compare_ope(
    v: &VertexAlgebra,
    a: &str,
    b: &str,
    expected: BTreeMap<i64, State>,
) -> Result<(), String> {
    let (sa, sb) = (
        v.generator(a).map_err(|e| e.to_string())?,
        v.generator(b).map_err(|e| e.to_string())?,
    );
    let got = v.singular_ope(&sa, &sb).map_err(|e| e.to_string())?;
    let expected: BTreeMap<i64, State> =
        expected.into_iter().filter(|(_, s)| !s.is_zero()).collect();
    ensure(got == expected, || {
        let show = |m: &BTreeMap<i64, State>| {
            m.iter()
                .map(|(n, s)| format!("{n}: {}", v.render(s)))
                .collect::<Vec<_>>()
                .join(", ")
        };
        format!(
            "{a}(z){b}(w): got {{{}}}, expected {{{}}}",
            show(&got),
            show(&expected)
        )
    })
}

type Mat2 = [[Rational; 2]; 2];

fn sl2_matrices() -> [Mat2; 3] {
    let m = |a: i64, b: i64, c: i64, d: i64| [[int(a), int(b)], [int(c), int(d)]];
    [m(0, 1, 0, 0), m(1, 0, 0, -1), m(0, 0, 1, 0)]
}

fn mat_mul(x: &Mat2, y: &Mat2) -> Mat2 {
    let e = |i: usize, j: usize| &x[i][0] * &y[0][j] + &x[i][1] * &y[1][j];
    [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]]
}

/// J^{[a,b]}/z + cκ(a,b)/z² with [a, b] and κ = tr(ab) computed from 2x2
/// matrices.
fn criterion_1() -> Outcome {
    let mut lines = Vec::new();
    let c = Poly::var();

    let km = kac_moody(&LieAlgebra::sl2(), &LieAlgebra::sl2_form(), &symbol("c"))
        .map_err(|e| e.to_string())?;
    let v = envelope(&km, 2)?;
    let mats = sl2_matrices();
    let names = ["e", "h", "f"];
    for a in 0..3 {
        for b in 0..3 {
            let (ab, ba) = (mat_mul(&mats[a], &mats[b]), mat_mul(&mats[b], &mats[a]));
            let comm = |i: usize, j: usize| &ab[i][j] - &ba[i][j];
            // traceless [[p, q], [r, −p]] = q e + p h + r f
            let coords = [comm(0, 1), comm(0, 0), comm(1, 0)];
            let mut simple = State::zero();
            for (k, x) in coords.iter().enumerate() {
                let g = v
                    .generator(&format!("J^{}", names[k]))
                    .map_err(|e| e.to_string())?;
                simple.add_scaled(&g, &Poly::constant(x.clone()));
            }
            let trace = &ab[0][0] + &ab[1][1];
            let double = v.vacuum().scale(&c.scale(&trace));
            compare_ope(
                &v,
                &format!("J^{}", names[a]),
                &format!("J^{}", names[b]),
                BTreeMap::from([(0, simple), (1, double)]),
            )?;
        }
    }
    lines.push("sl2 currents (9 pairs)");

    let h = envelope(&heisenberg(1, &symbol("c")).map_err(|e| e.to_string())?, 2)?;
    compare_ope(&h, "a", "a", BTreeMap::from([(1, h.vacuum().scale(&c))]))?;
    lines.push("Heisenberg");

    let vir = envelope(&virasoro(&symbol("c")).map_err(|e| e.to_string())?, 4)?;
    let l = vir.generator("l").map_err(|e| e.to_string())?;
    compare_ope(
        &vir,
        "l",
        "l",
        BTreeMap::from([
            (0, vir.translation(&l)),
            (1, l.scale(&Poly::from_int(2))),
            (3, vir.vacuum().scale(&c.scale(&rat(1, 2)))),
        ]),
    )?;
    lines.push("Virasoro");

    // even pair: φ(z)φ*(w) ~ 1/(z−w), φ*(z)φ(w) ~ −1/(z−w)
    let bg = envelope(
        &weyl_pair_with(1, false, (rat(1, 2), rat(1, 2)), &[vec![int(1)]])
            .map_err(|e| e.to_string())?,
        2,
    )?;
    compare_ope(&bg, "phi", "phi*", BTreeMap::from([(0, bg.vacuum())]))?;
    compare_ope(&bg, "phi*", "phi", BTreeMap::from([(0, bg.vacuum().neg())]))?;
    compare_ope(&bg, "phi", "phi", BTreeMap::new())?;
    lines.push("βγ");

    // odd pair: both orders carry +1/(z−w)
    let bc = envelope(&weyl_pair(1, true).map_err(|e| e.to_string())?, 2)?;
    compare_ope(&bc, "psi", "psi*", BTreeMap::from([(0, bc.vacuum())]))?;
    compare_ope(&bc, "psi*", "psi", BTreeMap::from([(0, bc.vacuum())]))?;
    compare_ope(&bc, "psi", "psi", BTreeMap::new())?;
    lines.push("bc");

    Ok(format!("exact singular parts for {}", lines.join(", ")))
}

// ---------------------------------------------------------------- dimensions

/// Coefficients of Π_gens Π_{n≥1} (1 − q^{n+Δ−1})^{−1} through q^top.
fn partition_oracle(weights: &[i64], top: usize) -> Vec<usize> {
    let mut coeffs = vec![0usize; top + 1];
    coeffs[0] = 1;
    for &w in weights {
        for n in 1.. {
            let part = (n + w - 1) as usize;
            if part > top {
                break;
            }
            for k in part..=top {
                coeffs[k] += coeffs[k - part];
            }
        }
    }
    coeffs
}

fn criterion_2() -> Outcome {
    let cases: Vec<(&str, VertexLieData, Vec<i64>, usize)> = vec![
        (
            "Virasoro",
            virasoro(&symbol("c")).map_err(|e| e.to_string())?,
            vec![2],
            6,
        ),
        (
            "sl2",
            kac_moody(&LieAlgebra::sl2(), &LieAlgebra::sl2_form(), &symbol("k"))
                .map_err(|e| e.to_string())?,
            vec![1, 1, 1],
            3,
        ),
        (
            "Heisenberg",
            heisenberg(1, &symbol("c")).map_err(|e| e.to_string())?,
            vec![1],
            4,
        ),
    ];
    let mut out = Vec::new();
    for (name, l, weights, top) in cases {
        let dims = envelope(&l, top as i64)?.integer_dims();
        let oracle = partition_oracle(&weights, top);
        ensure(dims == oracle, || {
            format!("{name}: {dims:?} vs oracle {oracle:?}")
        })?;
        out.push(format!("{name} {dims:?}"));
    }
    Ok(out.join(", "))
}

// ---------------------------------------------------------------- axioms

fn criterion_3() -> Outcome {
    let shipped: Vec<(&str, VertexLieData, i64)> = vec![
        ("Heisenberg", heisenberg(1, &symbol("c")).unwrap(), 4),
        ("Virasoro", virasoro(&symbol("c")).unwrap(), 4),
        (
            "sl2 currents",
            kac_moody(&LieAlgebra::sl2(), &LieAlgebra::sl2_form(), &symbol("k")).unwrap(),
            2,
        ),
        (
            "βγ",
            weyl_pair_with(1, false, (rat(1, 2), rat(1, 2)), &[vec![int(1)]]).unwrap(),
            2,
        ),
        ("bc", weyl_pair(1, true).unwrap(), 2),
    ];
    for (name, l, _) in &shipped {
        for (axiom, r) in check_all(l, 6) {
            r.map_err(|v| format!("{name} fails {axiom}: {v}"))?;
        }
    }
    // βγ with the odd-order sign of the pairing broken
    let mut broken = weyl_pair(1, false).unwrap();
    broken
        .set_bracket(1, 0, 0, LElem::term(LBasis::Central, Poly::one()))
        .map_err(|e| e.to_string())?;
    let witness = match check_skew_symmetry(&broken) {
        Ok(()) => return Err("broken βγ passes skew-symmetry".into()),
        Err(v) => v.to_string(),
    };

    for (name, l, w) in &shipped {
        let v = envelope(l, *w)?;
        let r = check_vertex_axioms(&v, 4);
        ensure(r.passed(), || {
            format!("{name} envelope: {:?}", r.failures())
        })?;
    }
    let mut t = TableVertex::trivial();
    let a = t.add_state("a", int(1), Parity::Even);
    let b = t.add_state("b", int(1), Parity::Even);
    let p = t.add_state("p", int(2), Parity::Even);
    t.generators = vec![a, b];
    t.products.insert((a, 0, b), Element::basis(b));
    t.products.insert((b, -1, b), Element::basis(p));
    let r = check_vertex_axioms(&t, 4);
    let table_witness = r
        .failures()
        .first()
        .map(|f| format!("{}: {}", f.0, f.1.clone().unwrap_or_default()))
        .ok_or("broken table vertex algebra passes")?;
    Ok(format!(
        "{} shipped data and envelopes pass; broken βγ: {witness}; broken table: {table_witness}",
        shipped.len()
    ))
}

// ---------------------------------------------------------------- BRST

/// Free fields for the Wick oracle, with simple-pole contractions
/// ⟨X(z)Y(w)⟩ = c/(z−w).
struct FreeFields {
    odd: Vec<bool>,
    contraction: Vec<Vec<Rational>>,
}

/// Double pole of Σ x :A B: against Σ y :C D: from full contractions.
fn wick_double_pole(
    f: &FreeFields,
    x: &[(Rational, usize, usize)],
    y: &[(Rational, usize, usize)],
) -> Rational {
    let sign = |odd: bool| if odd { int(-1) } else { int(1) };
    let mut total = Rational::zero();
    for (cx, a, b) in x {
        for (cy, c, d) in y {
            let (pb, pc, pd) = (f.odd[*b], f.odd[*c], f.odd[*d]);
            let t1 = &f.contraction[*a][*d] * &f.contraction[*b][*c] * sign(pd && (pb ^ pc));
            let t2 = &f.contraction[*a][*c] * &f.contraction[*b][*d] * sign(pb && pc);
            total += cx * cy * (t1 + t2);
        }
    }
    total
}

fn pair_fields(n: usize, odd: bool) -> FreeFields {
    let mut c = vec![vec![int(0); 2 * n]; 2 * n];
    for i in 0..n {
        c[i][n + i] = int(1);
        c[n + i][i] = if odd { int(1) } else { int(-1) };
    }
    FreeFields {
        odd: vec![odd; 2 * n],
        contraction: c,
    }
}

/// η^i = Σ c^{ij}_k :ψ_k ψ*^j:
fn ghost_bilinears(g: &LieAlgebra, i: usize) -> Vec<(Rational, usize, usize)> {
    let n = g.dim();
    let mut out = Vec::new();
    for j in 0..n {
        for k in 0..n {
            if !g.c[i][j][k].is_zero() {
                out.push((g.c[i][j][k].clone(), k, n + j));
            }
        }
    }
    out
}

/// J_X = −Σ X_ab :φ_a φ*_b:
fn boson_bilinears(x: &[Vec<Rational>]) -> Vec<(Rational, usize, usize)> {
    let n = x.len();
    let mut out = Vec::new();
    for a in 0..n {
        for b in 0..n {
            if !x[a][b].is_zero() {
                out.push((-x[a][b].clone(), a, n + b));
            }
        }
    }
    out
}

/// The auxiliary current level at which βγ + currents + ghosts cancel.
fn oracle_critical_level() -> Rational {
    let g = LieAlgebra::sl2();
    let rep = fundamental_sl2();
    let (e, f) = (0, 2);
    let bg = wick_double_pole(
        &pair_fields(2, false),
        &boson_bilinears(&rep[e]),
        &boson_bilinears(&rep[f]),
    );
    let gh = wick_double_pole(
        &pair_fields(3, true),
        &ghost_bilinears(&g, e),
        &ghost_bilinears(&g, f),
    );
    -(bg + gh) / &LieAlgebra::sl2_form()[e][f]
}

/// Returns (criterion holds, detail). Part (a) does not hold: the abelian
/// charge squares to k·Tψ*, see the decisions ledger.
fn criterion_4() -> (bool, String) {
    let mut parts = Vec::new();
    let mut ok = true;

    let g = LieAlgebra::abelian(1);
    let c = BrstComplex::new(&g, &Matter::heisenberg(&g, &symbol("k")).unwrap(), int(4)).unwrap();
    let r = c.check_d_squared(&int(4));
    if r.is_zero() {
        parts.push("(a) d² = 0 through weight 4 at symbolic k".to_string());
    } else {
        ok = false;
        let (state, image) = r.witness.clone().unwrap();
        parts.push(format!(
            "(a) d²({state}) = {image} through weight 4, vanishing only at k ∈ {:?}",
            r.critical_levels()
                .unwrap_or_default()
                .iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>()
        ));
    }

    let pure = BrstComplex::new(&g, &Matter::none(&g), int(3)).unwrap();
    let zero_d = pure.charge.is_zero()
        && pure
            .algebra
            .basis()
            .values()
            .flatten()
            .all(|m| pure.d(m).is_zero());
    ok &= zero_d;
    parts.push(format!("(b) pure ghosts: d = 0 is {zero_d}"));

    let sl2 = LieAlgebra::sl2();
    let form = LieAlgebra::sl2_form();
    let bg = Matter::beta_gamma(&sl2, &fundamental_sl2()).unwrap();
    let scan = BrstComplex::new(
        &sl2,
        &bg.sum(&Matter::kac_moody(&sl2, &form, &symbol("k")).unwrap())
            .unwrap(),
        int(2),
    )
    .unwrap();
    let report = scan.check_d_squared(&int(2));
    let roots = report.critical_levels().unwrap_or_default();
    let oracle = oracle_critical_level();
    let unique = roots == vec![oracle.clone()];
    ok &= unique;
    parts.push(format!(
        "(c) d² through weight 2 ∝ {}, roots {:?}, Wick oracle {oracle}",
        report.level_polynomial().render("k"),
        roots.iter().map(ToString::to_string).collect::<Vec<_>>()
    ));
    if unique {
        let m = bg
            .sum(&Matter::kac_moody(&sl2, &form, &Scalar::rational(oracle)).unwrap())
            .unwrap();
        let c = BrstComplex::new(&sl2, &m, int(3)).unwrap();
        let d2 = c.check_d_squared(&int(3)).is_zero();
        let cells = c.cohomology(&int(3));
        let euler = match &cells {
            Ok(cells) => euler_characteristics(cells).values().all(|(a, b)| a == b),
            Err(_) => false,
        };
        ok &= d2 && euler;
        parts.push(format!(
            "at the root d² = 0 through weight 3 is {d2}, Euler characteristics agree is {euler}"
        ));
    }
    (ok, parts.join("; "))
}

// ---------------------------------------------------------------- Koszul

fn one_var(
    degrees: Vec<i64>,
    terms: &[(u32, Vec<(usize, usize, Rational)>)],
) -> Result<UComplex, String> {
    let n = degrees.len();
    let names = (0..n).map(|i| format!("x{i}")).collect();
    let t = terms
        .iter()
        .map(|(e, m)| (vec![*e], matrix(n, m)))
        .collect();
    UComplex::new(names, degrees, 1, t).map_err(|e| e.to_string())
}

/// Three free generators: x0 ↦ a u^e x1 and x2 a cycle, in random degrees.
fn random_free_complex(rng: &mut ChaCha8Rng) -> Result<UComplex, String> {
    let e: u32 = rng.gen_range(0..2);
    let p: i64 = rng.gen_range(-3..4);
    let q: i64 = rng.gen_range(-3..4);
    let mut a = rat(rng.gen_range(1..7), rng.gen_range(1..5));
    if rng.gen_bool(0.5) {
        a = -a;
    }
    // D has degree +1 and u degree 2
    let degrees = vec![p, p + 1 - 2 * e as i64, q];
    one_var(degrees, &[(e, vec![(1, 0, a)])])
}

fn criterion_5() -> Outcome {
    let reg = koszul_t(&regular_lambda())
        .map_err(|e| e.to_string())?
        .module()
        .map_err(|e| e.to_string())?;
    ensure(reg.to_string() == "Q in degree 0", || {
        format!("t(regular Λ) gives {reg}")
    })?;

    let triv = MixedComplex::trivial(vec!["1".into(), "w".into()], vec![0, 2], 1)
        .map_err(|e| e.to_string())?;
    let free = koszul_t(&triv)
        .map_err(|e| e.to_string())?
        .module()
        .map_err(|e| e.to_string())?;
    ensure(free.torsion.is_empty() && free.free == vec![0, 2], || {
        format!("trivial h gives {free}")
    })?;

    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut inputs = vec![
        ("Q[u]", one_var(vec![0], &[])?),
        ("Q[u]/u", one_var(vec![1, 0], &[(1, vec![(1, 0, int(1))])])?),
    ];
    for i in 0..5 {
        inputs.push((
            if i == 0 { "random 3-term" } else { "" },
            random_free_complex(&mut rng)?,
        ));
    }
    for (name, m) in &inputs {
        let h = koszul_h(m).map_err(|e| format!("{name}: {e}"))?;
        let back = koszul_t(&h)
            .map_err(|e| e.to_string())?
            .module()
            .map_err(|e| e.to_string())?;
        let orig = m.module().map_err(|e| e.to_string())?;
        ensure(back == orig, || {
            format!("{name}: H(t(h(M))) = {back} but H(M) = {orig}")
        })?;
    }
    Ok(format!(
        "t(regular Λ) = {reg}; trivial h gives {free}; H(t(h(M))) = H(M) for Q[u], Q[u]/u and 5 random 3-term free complexes"
    ))
}

// ---------------------------------------------------------------- Cartan

/// dim of Q[u_1..u_r] in degree k, |u_i| = 2, by counting monomials.
fn polynomial_dims(r: usize, k: i64) -> usize {
    if k < 0 || k % 2 != 0 {
        return 0;
    }
    fn count(r: usize, total: i64) -> usize {
        if r == 1 {
            return 1;
        }
        (0..=total).map(|first| count(r - 1, total - first)).sum()
    }
    count(r, k / 2)
}

fn criterion_6() -> Outcome {
    let line = cartan_model(&[vec![1]], 6).map_err(|e| e.to_string())?;
    let m = line.complex.module().map_err(|e| e.to_string())?;
    ensure(m.free == vec![0] && m.torsion.is_empty(), || {
        format!("line gives {m}")
    })?;
    for k in 0..=12 {
        let got = line.complex.hilbert(k).map_err(|e| e.to_string())?;
        ensure(got == polynomial_dims(1, k), || {
            format!("line: degree {k} has dim {got}")
        })?;
    }
    let plane = cartan_model(&[vec![1, 0], vec![0, 1]], 4).map_err(|e| e.to_string())?;
    for k in 0..=8 {
        let got = plane.complex.hilbert(k).map_err(|e| e.to_string())?;
        ensure(got == polynomial_dims(2, k), || {
            format!("plane: degree {k} has dim {got}")
        })?;
    }
    Ok(format!(
        "line: {m}; two-torus plane: dims of Q[u1,u2] through degree 8"
    ))
}

// ---------------------------------------------------------------- CLI helpers

fn fixtures() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures")
}

fn cli_json(args: &[&str]) -> Result<(i32, Value), String> {
    let mut full = vec!["chiralg".to_string()];
    full.extend(args.iter().map(|s| s.to_string()));
    let (code, out, err) = chiralg::cli::run(full);
    let v = serde_json::from_str(&out).map_err(|e| format!("{args:?}: {e}: {out}{err}"))?;
    Ok((code, v))
}

// ---------------------------------------------------------------- localization

fn criterion_7() -> Outcome {
    let mut out = Vec::new();
    for (file, expect) in [
        ("p1-fixed-points.json", true),
        ("free-action.json", true),
        ("p1-missing-point.json", false),
    ] {
        let path = fixtures().join(file);
        let (code, v) = cli_json(&["localize", "--input", path.to_str().unwrap()])?;
        let verdict = v["iso_after_localization"].as_bool();
        ensure(verdict == Some(expect), || {
            format!("{file}: verdict {verdict:?}")
        })?;
        ensure(code == if expect { 0 } else { 1 }, || {
            format!("{file}: exit {code}")
        })?;
        let ann = v["annihilator"].as_str().unwrap_or("none").to_string();
        if expect {
            let u_power = ann == "u"
                || ann == "1"
                || ann
                    .strip_prefix("u^")
                    .is_some_and(|e| e.parse::<u32>().is_ok());
            ensure(u_power, || format!("{file}: annihilator {ann}"))?;
        }
        out.push(format!("{file} → {expect} (annihilator {ann})"));
    }
    Ok(out.join(", "))
}

// ---------------------------------------------------------------- operads

fn criterion_8() -> Outcome {
    let check =
        |name: &str, r: Result<chiralg::operads::RelationReport, chiralg::operads::OperadError>| {
            let r = r.map_err(|e| format!("{name}: {e}"))?;
            ensure(r.passed(), || format!("{name}: {:?}", r.failures()))?;
            Ok::<_, String>(r)
        };
    check("BV exterior", bv_exterior().check(Preset::Bv))?;
    let h = heisenberg_bd1();
    check("Heisenberg BD_1", h.check(Preset::Bd1))?;
    check(
        "Heisenberg at ħ=0",
        h.specialize(&int(0)).check(Preset::Pd(1)),
    )?;
    check(
        "Heisenberg at ħ=1",
        h.specialize(&int(1)).check(Preset::Ass),
    )?;
    let bd0 = check("BD_0 exterior", bd0_exterior().check(Preset::Bd0))?;
    let leibniz = bd0
        .relations
        .iter()
        .find(|r| r.name.starts_with("d(ab)"))
        .ok_or("BD_0 report has no deformed Leibniz relation")?;
    Ok(format!(
        "BV relation holds; Heisenberg passes BD_1, P_1 at ħ=0, Ass at ħ=1; BD_0 \"{}\" holds",
        leibniz.name
    ))
}

// ---------------------------------------------------------------- configuration spaces

fn criterion_9() -> Outcome {
    for n in 1..=4usize {
        for d in 2..=3usize {
            let total = conf_ring(n, d).map_err(|e| e.to_string())?.total_dim();
            let fact: usize = (1..=n).product();
            ensure(total == fact, || {
                format!("Conf_{n}(R^{d}) has total dimension {total}")
            })?;
        }
    }
    let p = conf_ring(3, 2).map_err(|e| e.to_string())?;
    // Π_{k<n} (1 + k t^{d−1})
    let mut oracle = vec![1usize];
    for k in 1..3 {
        let mut next = vec![0; oracle.len() + 1];
        for (i, c) in oracle.iter().enumerate() {
            next[i] += c;
            next[i + 1] += k * c;
        }
        oracle = next;
    }
    let dims: Vec<usize> = p.poincare().iter().map(|x| x.1).collect();
    ensure(dims == oracle, || {
        format!("n=3 d=2 dims {:?} vs {oracle:?}", dims)
    })?;
    let poly = p.poincare_string();
    ensure(poly == "1 + 3t + 2t^2", || {
        format!("n=3 d=2 Poincaré polynomial {poly}")
    })?;
    for d in 2..=4usize {
        let b = bridge(d).map_err(|e| e.to_string())?;
        // Conf_2(R^d) ≃ S^{d−1}; the swap is the antipodal map, of degree det(−I_d)
        let antipodal: i64 = (0..d).map(|_| -1i64).product();
        ensure(b.conf_degrees == vec![0, d - 1], || {
            format!("d={d}: degrees {:?}", b.conf_degrees)
        })?;
        ensure(b.matches() && b.conf_sign == antipodal, || {
            format!("d={d}: {b:?}")
        })?;
    }
    Ok(format!("totals n! for n ≤ 4, d ∈ {{2,3}}; Poincaré {poly}; arity 2 degrees and swap signs match for d = 2..4"))
}

// ---------------------------------------------------------------- determinism

fn invocations() -> Vec<Vec<String>> {
    let own = |v: &[&str]| v.iter().map(|s| s.to_string()).collect::<Vec<_>>();
    let mut runs: Vec<Vec<String>> = Vec::new();
    for (preset, level) in [
        ("heisenberg", "c"),
        ("virasoro", "c"),
        ("kacmoody-sl2", "k"),
        ("betagamma", "1"),
        ("bc", "1"),
    ] {
        runs.push(own(&["vla-check", "--preset", preset, "--level", level]));
        runs.push(own(&["ope", "--preset", preset, "--level", level]));
        runs.push(own(&[
            "envelope-dims",
            "--preset",
            preset,
            "--level",
            level,
            "--cutoff",
            "4",
        ]));
    }
    runs.push(own(&[
        "--format",
        "table",
        "envelope-dims",
        "--preset",
        "virasoro",
        "--cutoff",
        "6",
    ]));
    runs.push(own(&[
        "brst",
        "--lie",
        "abelian",
        "--matter",
        "heisenberg",
        "--cutoff",
        "2",
    ]));
    runs.push(own(&[
        "brst", "--lie", "abelian", "--matter", "none", "--cutoff", "2",
    ]));
    runs.push(own(&[
        "brst",
        "--lie",
        "sl2",
        "--matter",
        "betagamma+kacmoody",
        "--level",
        "-3",
        "--cutoff",
        "2",
    ]));
    runs.push(own(&["cartan", "--weights", "1,0;0,1", "--cutoff", "4"]));
    for (n, d) in [(3, 2), (4, 3), (2, 5)] {
        runs.push(vec![
            "conf".into(),
            "--n".into(),
            n.to_string(),
            "--d".into(),
            d.to_string(),
        ]);
    }
    for fixture in [
        "truncated-poly",
        "matrices",
        "heisenberg-bd1",
        "bv-exterior",
        "bd0-exterior",
        "bd0u-exterior",
    ] {
        runs.push(own(&["operad-check", "--fixture", fixture]));
    }
    runs.push(own(&["presets"]));
    runs.push(own(&["--format", "table", "presets"]));

    let mut files: Vec<PathBuf> = std::fs::read_dir(fixtures())
        .expect("fixtures directory")
        .map(|e| e.expect("entry").path())
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    files.sort();
    for f in files {
        let path = f.to_str().unwrap().to_string();
        let schema = std::fs::read_to_string(&f)
            .ok()
            .and_then(|t| serde_json::from_str::<Value>(&t).ok())
            .and_then(|v| v["schema"].as_str().map(String::from));
        let verbs: Vec<Vec<&str>> = match schema.as_deref() {
            Some("vla.v1") => vec![
                vec!["vla-check"],
                vec!["ope"],
                vec!["envelope-dims", "--cutoff", "4"],
            ],
            Some("lie.v1") => vec![vec!["brst", "--lie"]],
            Some("mixed.v1") => vec![vec!["koszul"]],
            Some("cartan.v1") => vec![vec!["cartan"]],
            Some("localize.v1") => vec![vec!["localize"]],
            Some("alg.v1") => vec![vec!["operad-check"], vec!["operad-check", "--emit"]],
            _ => vec![
                vec!["koszul"],
                vec!["localize"],
                vec!["cartan"],
                vec!["operad-check"],
                vec!["vla-check"],
            ],
        };
        for verb in verbs {
            let mut args = own(&verb);
            if verb[0] != "brst" {
                args.push("--input".into());
            }
            args.push(path.clone());
            runs.push(args);
        }
    }
    runs
}

fn criterion_10() -> Outcome {
    let bin = env!("CARGO_BIN_EXE_chiralg");
    let runs = invocations();
    let mut codes = BTreeMap::new();
    for args in &runs {
        let first = Command::new(bin)
            .args(args)
            .output()
            .map_err(|e| e.to_string())?;
        let second = Command::new(bin)
            .args(args)
            .output()
            .map_err(|e| e.to_string())?;
        ensure(
            first.stdout == second.stdout
                && first.stderr == second.stderr
                && first.status == second.status,
            || format!("`chiralg {}` differs between runs", args.join(" ")),
        )?;
        *codes.entry(first.status.code().unwrap_or(-1)).or_insert(0) += 1;
    }
    Ok(format!(
        "{} invocations byte-identical across two runs (exit codes {})",
        runs.len(),
        codes
            .iter()
            .map(|(c, n)| format!("{c}×{n}"))
            .collect::<Vec<_>>()
            .join(", ")
    ))
}

// ---------------------------------------------------------------- driver

struct Criterion {
    number: usize,
    title: &'static str,
    budget: Duration,
    /// false for criteria that are known not to hold
    expected: bool,
    /// fragments the detail must contain, pinning down why a known failure
    /// fails and that the remaining parts still hold
    detail_has: &'static [&'static str],
    run: fn() -> (bool, String),
}

fn wrap(f: fn() -> Outcome) -> (bool, String) {
    match f() {
        Ok(s) => (true, s),
        Err(s) => (false, s),
    }
}

#[test]
fn acceptance_criteria() {
    let secs = Duration::from_secs;
    let criteria = [
        Criterion {
            number: 1,
            title: "OPE tables",
            budget: secs(1),
            expected: true,
            detail_has: &[],
            run: || wrap(criterion_1),
        },
        Criterion {
            number: 2,
            title: "graded dimensions",
            budget: secs(5),
            expected: true,
            detail_has: &[],
            run: || wrap(criterion_2),
        },
        Criterion {
            number: 3,
            title: "axiom suites",
            budget: secs(30),
            expected: true,
            detail_has: &[],
            run: || wrap(criterion_3),
        },
        Criterion {
            number: 4,
            title: "BRST",
            budget: secs(120),
            expected: false,
            detail_has: &[
                "(a) d²(psi_a) = (k)Tpsi*_a",
                "(b) pure ghosts: d = 0 is true",
                "d² = 0 through weight 3 is true, Euler characteristics agree is true",
            ],
            run: criterion_4,
        },
        Criterion {
            number: 5,
            title: "Koszul duality",
            budget: secs(1),
            expected: true,
            detail_has: &[],
            run: || wrap(criterion_5),
        },
        Criterion {
            number: 6,
            title: "Cartan model",
            budget: secs(10),
            expected: true,
            detail_has: &[],
            run: || wrap(criterion_6),
        },
        Criterion {
            number: 7,
            title: "localization",
            budget: secs(1),
            expected: true,
            detail_has: &[],
            run: || wrap(criterion_7),
        },
        Criterion {
            number: 8,
            title: "operad relation suites",
            budget: secs(1),
            expected: true,
            detail_has: &[],
            run: || wrap(criterion_8),
        },
        Criterion {
            number: 9,
            title: "configuration cohomology",
            budget: secs(30),
            expected: true,
            detail_has: &[],
            run: || wrap(criterion_9),
        },
        Criterion {
            number: 10,
            title: "CLI determinism",
            budget: secs(300),
            expected: true,
            detail_has: &[],
            run: || wrap(criterion_10),
        },
    ];
    let mut unexpected = Vec::new();
    std::io::stdout().lock().write_all(b"\n").unwrap();
    for c in &criteria {
        let start = Instant::now();
        let (ok, detail) = (c.run)();
        let elapsed = start.elapsed();
        let in_time = elapsed <= c.budget;
        let pass = ok && in_time;
        let timing = format!("{:.2}s of {}s", elapsed.as_secs_f64(), c.budget.as_secs());
        let line = format!(
            "{} criterion {} ({}, {timing}){}: {detail}\n",
            if pass { "PASS" } else { "FAIL" },
            c.number,
            c.title,
            if ok && !in_time {
                " over time budget"
            } else {
                ""
            }
        );
        std::io::stdout().lock().write_all(line.as_bytes()).unwrap();
        if ok != c.expected || !c.detail_has.iter().all(|f| detail.contains(f)) {
            unexpected.push(line);
        }
    }
    assert!(
        unexpected.is_empty(),
        "unexpected outcomes:\n{}",
        unexpected.concat()
    );
}

#[test]
fn abelian_charge_fails_only_through_the_level() {
    // the known failure of criterion 4(a): d²(ψ) = k·Tψ*, zero exactly at k = 0
    let g = LieAlgebra::abelian(1);
    let c = BrstComplex::new(&g, &Matter::heisenberg(&g, &symbol("k")).unwrap(), int(4)).unwrap();
    let r = c.check_d_squared(&int(4));
    assert_eq!(
        r.witness,
        Some(("psi_a".to_string(), "(k)Tpsi*_a".to_string()))
    );
    assert_eq!(r.critical_levels(), Some(vec![int(0)]));
    let at_zero = BrstComplex::new(
        &g,
        &Matter::heisenberg(&g, &Scalar::rational(int(0))).unwrap(),
        int(4),
    )
    .unwrap();
    assert!(at_zero.check_d_squared(&int(4)).is_zero());
}
