use num_traits::Zero;
use serde_json::{json, Value};

use super::input::read;
use super::schemas::{AlgSpec, CartanSpec, LieSpec, LocalizeSpec, MixedSpec};
use super::{cutoff, CliError, Command, Report, Source};
use crate::brst::{euler_characteristics, fundamental_sl2, BrstComplex, Matter};
use crate::equivariant::{cartan_model, koszul_t, localize_check, GradedModule, MixedComplex};
use crate::kernel::{int, parse_rational, rat, Poly, Rational, Ring, Scalar};
use crate::operads::{
    bd0_exterior, bd0u_exterior, bv_exterior, conf_ring, heisenberg_bd1, matrix_algebra,
    truncated_polynomial, AlgebraInstance, Preset,
};
use crate::vertex::build_envelope;
use crate::vla::json::VlaSpec;
use crate::vla::{
    check_all, heisenberg, kac_moody, virasoro, weyl_pair, weyl_pair_with, LieAlgebra,
    VertexLieData,
};

const VLA_PRESETS: &[(&str, &str)] = &[
    ("heisenberg", "one free boson a with a_(1)a = k"),
    ("virasoro", "l of weight 2 with central charge c"),
    (
        "kacmoody-sl2",
        "affine sl2 currents J^e, J^h, J^f at level k",
    ),
    ("betagamma", "one βγ pair phi, phi* of weights 1/2, 1/2"),
    ("bc", "one bc pair psi, psi* of weights 1, 0"),
];

const LIE_PRESETS: &[(&str, &str)] = &[
    ("sl2", "basis e, h, f"),
    (
        "abelian",
        "one-dimensional abelian; abelianN for dimension N",
    ),
];

const MATTER_PRESETS: &[(&str, &str)] = &[
    ("none", "no matter fields"),
    (
        "heisenberg",
        "one free boson per basis element (abelian algebras)",
    ),
    (
        "kacmoody",
        "affine currents at level k for the standard invariant form",
    ),
    (
        "betagamma",
        "βγ pairs on the defining representation (sl2, abelian)",
    ),
];

const OPERAD_PRESETS: &[(&str, &str)] = &[
    ("Ass", "associative product"),
    ("Comm", "graded-commutative associative product"),
    ("Lie", "bracket with its declared degree"),
    (
        "P_d",
        "commutative product and a Leibniz bracket of degree 1-d",
    ),
    (
        "BD_0",
        "over Q[h]: d(ab) = d(a)b + (-1)^|a| a d(b) + h{a,b}, bracket of degree 1",
    ),
    (
        "BD_0^u",
        "over Q[u]: the same relation with u, bracket of degree -1",
    ),
    ("BD_1", "over Q[h]: ab - (-1)^{|a||b|} ba = h{a,b}"),
    (
        "BV",
        "Δ^2 = 0 and Δ(ab) - Δ(a)b - (-1)^{|Δ||a|} aΔ(b) = {a,b}",
    ),
];

const ALG_FIXTURES: &[(&str, &str, &str)] = &[
    ("truncated-poly", "P_1", "Q[x]/(x^3) with zero bracket"),
    ("matrices", "Comm", "2x2 matrices over Q"),
    (
        "heisenberg-bd1",
        "BD_1",
        "basis 1, x, y, z over Q[h] with xy - yx = hz",
    ),
    ("bv-exterior", "BV", "Λ[θ1, θ2] with Δ = ∂²/∂θ1∂θ2"),
    (
        "bd0-exterior",
        "BD_0",
        "Λ[θ1, θ2, θ3] over Q[h] with d = h θ3 ∂²/∂θ1∂θ2",
    ),
    (
        "bd0u-exterior",
        "BD_0^u",
        "Λ[θ1, θ2, θ3] over Q[u] with d = u θ3 ∂²/∂θ1∂θ2",
    ),
];

pub fn dispatch(cmd: &Command) -> Result<Report, CliError> {
    match cmd {
        Command::VlaCheck { source, cutoff: c } => vla_check(source, cutoff("cutoff", *c)?),
        Command::Ope { source, a, b } => ope(source, a.as_deref(), b.as_deref()),
        Command::EnvelopeDims { source, cutoff: c } => envelope_dims(source, cutoff("cutoff", *c)?),
        Command::Brst {
            lie,
            matter,
            level,
            cutoff: c,
        } => brst(lie, matter, level.as_deref(), cutoff("cutoff", *c)?),
        Command::Koszul { input } => koszul(input),
        Command::Cartan {
            input,
            weights,
            cutoff: c,
        } => cartan(input.as_deref(), weights.as_deref(), *c),
        Command::Localize { input } => localize(input),
        Command::OperadCheck {
            input,
            fixture,
            preset,
            specialize,
            emit,
        } => operad_check(
            input.as_deref(),
            fixture.as_deref(),
            preset.as_deref(),
            specialize.as_deref(),
            *emit,
        ),
        Command::Conf { n, d } => conf(cutoff("n", *n)?, cutoff("d", *d)?),
        Command::Presets => Ok(presets()),
    }
}

fn ok(value: Value) -> Result<Report, CliError> {
    Ok(Report { ok: true, value })
}

fn level(s: Option<&str>, default: &str) -> Result<Scalar, CliError> {
    let s = s.unwrap_or(default);
    if let Some(q) = parse_rational(s) {
        return Ok(Scalar::rational(q));
    }
    let mut chars = s.chars();
    let symbol = chars.next().is_some_and(char::is_alphabetic)
        && chars.all(|c| c.is_alphanumeric() || c == '_');
    if !symbol {
        return Err(CliError::Usage(format!(
            "--level must be a rational number or a symbol, got {s}"
        )));
    }
    Ok(Scalar::new(Ring::Level(s.to_string()), Poly::var()))
}

fn vla_preset(name: &str, lvl: Option<&str>) -> Result<VertexLieData, CliError> {
    let id = vec![vec![int(1)]];
    Ok(match name {
        "heisenberg" => heisenberg(1, &level(lvl, "k")?)?,
        "virasoro" => virasoro(&level(lvl, "c")?)?,
        "kacmoody-sl2" => kac_moody(
            &LieAlgebra::sl2(),
            &LieAlgebra::sl2_form(),
            &level(lvl, "k")?,
        )?,
        "betagamma" => weyl_pair_with(1, false, (rat(1, 2), rat(1, 2)), &id)?,
        "bc" => weyl_pair(1, true)?,
        other => {
            return Err(CliError::Usage(format!(
                "unknown --preset {other}; run `presets` for the list"
            )))
        }
    })
}

fn load_vla(source: &Source) -> Result<VertexLieData, CliError> {
    match (&source.preset, &source.input) {
        (Some(p), _) => vla_preset(p, source.level.as_deref()),
        (None, Some(path)) => Ok(read::<VlaSpec>(path)?.build()?),
        (None, None) => Err(CliError::Usage(
            "one of --preset or --input is required".into(),
        )),
    }
}

fn vla_check(source: &Source, cutoff: usize) -> Result<Report, CliError> {
    let l = load_vla(source)?;
    let cutoff =
        u32::try_from(cutoff).map_err(|_| CliError::Usage("--cutoff is too large".into()))?;
    let checks: Vec<Value> = check_all(&l, cutoff)
        .into_iter()
        .map(|(name, r)| {
            json!({
                "axiom": name,
                "passed": r.is_ok(),
                "witness": r.err().map(|v| v.to_string()),
            })
        })
        .collect();
    let passed = checks.iter().all(|c| c["passed"] == json!(true));
    Ok(Report {
        ok: passed,
        value: json!({
            "schema": "vla-check.v1",
            "ring": l.ring.to_string(),
            "symbolic": matches!(l.ring, Ring::Level(_)),
            "generators": l.generators.iter().map(|g| g.name.clone()).collect::<Vec<_>>(),
            "checks": checks,
            "passed": passed,
        }),
    })
}

fn find_generator(l: &VertexLieData, name: &str) -> Result<usize, CliError> {
    let plain = |s: &str| s.replace('^', "");
    l.generators
        .iter()
        .position(|g| g.name == name)
        .or_else(|| {
            l.generators
                .iter()
                .position(|g| plain(&g.name) == plain(name))
        })
        .ok_or_else(|| CliError::Input(format!("unknown generator {name}")))
}

fn ope(source: &Source, a: Option<&str>, b: Option<&str>) -> Result<Report, CliError> {
    let l = load_vla(source)?;
    let first = l
        .generators
        .first()
        .map(|g| g.name.clone())
        .ok_or_else(|| CliError::Input("no generators".into()))?;
    let ia = find_generator(&l, a.unwrap_or(&first))?;
    let ib = find_generator(&l, b.unwrap_or(&first))?;
    let cutoff = &l.generators[ia].weight + &l.generators[ib].weight;
    let v = build_envelope(&l, &Scalar::rational(int(1)), cutoff)?;
    let sa = v.generator(&l.generators[ia].name)?;
    let sb = v.generator(&l.generators[ib].name)?;
    let poles: serde_json::Map<String, Value> = v
        .singular_ope(&sa, &sb)?
        .iter()
        .map(|(n, s)| ((n + 1).to_string(), Value::String(v.render(s))))
        .collect();
    ok(json!({ "poles": poles }))
}

fn envelope_dims(source: &Source, cutoff: usize) -> Result<Report, CliError> {
    let l = load_vla(source)?;
    let v = build_envelope(&l, &Scalar::rational(int(1)), int(cutoff as i64))?;
    let dims: Vec<Value> = v
        .dims()
        .into_iter()
        .map(|(w, d)| json!({ "weight": w.to_string(), "dim": d }))
        .collect();
    ok(json!({ "schema": "voa.v1", "cutoff": cutoff, "dims": dims }))
}

fn killing(g: &LieAlgebra) -> Vec<Vec<Rational>> {
    let n = g.dim();
    let mut k = vec![vec![Rational::zero(); n]; n];
    for (a, row) in k.iter_mut().enumerate() {
        for (b, entry) in row.iter_mut().enumerate() {
            // tr(ad a ad b) = Σ_{i,j} c[b][i][j] c[a][j][i]
            for i in 0..n {
                for j in 0..n {
                    *entry += &g.c[b][i][j] * &g.c[a][j][i];
                }
            }
        }
    }
    k
}

fn identity(n: usize) -> Vec<Vec<Rational>> {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { int(1) } else { int(0) })
                .collect()
        })
        .collect()
}

enum LieKind {
    Sl2,
    Abelian(usize),
    Custom,
}

fn load_lie(spec: &str) -> Result<(LieAlgebra, LieKind), CliError> {
    if spec == "sl2" {
        return Ok((LieAlgebra::sl2(), LieKind::Sl2));
    }
    if let Some(rest) = spec.strip_prefix("abelian") {
        let n = if rest.is_empty() {
            Some(1)
        } else {
            rest.parse().ok()
        };
        if let Some(n) = n {
            return Ok((LieAlgebra::abelian(n), LieKind::Abelian(n)));
        }
    }
    if std::path::Path::new(spec).exists() {
        return Ok((read::<LieSpec>(spec)?.build()?, LieKind::Custom));
    }
    Err(CliError::Usage(format!(
        "--lie {spec} is neither a file nor one of sl2, abelian, abelianN"
    )))
}

fn matter(g: &LieAlgebra, kind: &LieKind, spec: &str, lvl: &Scalar) -> Result<Matter, CliError> {
    let mut total: Option<Matter> = None;
    for part in spec.split('+') {
        let m = match part {
            "none" => Matter::none(g),
            "heisenberg" => Matter::heisenberg(g, lvl)?,
            "kacmoody" => {
                let form = match kind {
                    LieKind::Sl2 => LieAlgebra::sl2_form(),
                    LieKind::Abelian(n) => identity(*n),
                    LieKind::Custom => killing(g),
                };
                Matter::kac_moody(g, &form, lvl)?
            }
            "betagamma" => {
                let rep = match kind {
                    LieKind::Sl2 => fundamental_sl2(),
                    LieKind::Abelian(n) => (0..*n)
                        .map(|i| {
                            let mut m = vec![vec![int(0); *n]; *n];
                            m[i][i] = int(1);
                            m
                        })
                        .collect(),
                    LieKind::Custom => {
                        return Err(CliError::Input(
                            "betagamma matter is available for sl2 and abelian algebras".into(),
                        ))
                    }
                };
                Matter::beta_gamma(g, &rep)?
            }
            other => {
                return Err(CliError::Usage(format!(
                    "unknown --matter {other}; run `presets` for the list"
                )))
            }
        };
        total = Some(match total {
            None => m,
            Some(t) => t.sum(&m)?,
        });
    }
    total.ok_or_else(|| CliError::Usage("--matter is empty".into()))
}

fn poly_text(p: &Poly, ring: &Ring) -> String {
    p.render(ring.var_name())
}

fn brst(
    lie: &str,
    matter_spec: &str,
    lvl: Option<&str>,
    cutoff: usize,
) -> Result<Report, CliError> {
    let (g, kind) = load_lie(lie)?;
    let lvl = level(lvl, "k")?;
    let m = matter(&g, &kind, matter_spec, &lvl)?;
    let w = int(cutoff as i64);
    let c = BrstComplex::new(&g, &m, w.clone())?;
    let ring = c.algebra.ring.clone();
    let levels = |k: &[Vec<Poly>]| -> Vec<Vec<String>> {
        k.iter()
            .map(|row| row.iter().map(|p| poly_text(p, &ring)).collect())
            .collect()
    };
    let report = c.check_d_squared(&w);
    let zero = report.is_zero();
    let d_squared = json!({
        "max_weight": report.max_weight.to_string(),
        "zero": zero,
        "witness": report.witness.as_ref().map(|(s, v)| json!({ "state": s, "value": v })),
        "level_polynomial": (!zero).then(|| poly_text(&report.level_polynomial(), &ring)),
        "critical_levels": report.critical_levels().map(|r| r.iter().map(|q| q.to_string()).collect::<Vec<_>>()),
    });
    let (cohomology, euler) = if zero && ring == Ring::Q {
        let cells = c.cohomology(&w)?;
        let cells_json: Vec<Value> = cells
            .iter()
            .map(|x| {
                json!({
                    "weight": x.weight.to_string(),
                    "ghost": x.ghost,
                    "chain_dim": x.chain_dim,
                    "cohomology_dim": x.cohomology_dim,
                })
            })
            .collect();
        let euler: Vec<Value> = euler_characteristics(&cells)
            .into_iter()
            .map(|(w, (chains, h))| json!({ "weight": w.to_string(), "chains": chains, "cohomology": h }))
            .collect();
        (Value::Array(cells_json), Value::Array(euler))
    } else {
        (Value::Null, Value::Null)
    };
    Ok(Report {
        ok: zero,
        value: json!({
            "schema": "brst.v1",
            "lie": g.names,
            "matter": matter_spec,
            "ring": ring.to_string(),
            "cutoff": cutoff,
            "charge": c.algebra.render(&c.charge),
            "matter_level": levels(&c.matter_level),
            "ghost_level": levels(&c.ghost_level),
            "d_squared": d_squared,
            "cohomology": cohomology,
            "euler": euler,
        }),
    })
}

fn module_json(m: &GradedModule) -> Value {
    json!({
        "cohomology": m.to_string(),
        "free": m.free,
        "torsion": m.torsion.iter().map(|(d, e)| json!({ "degree": d, "exponent": e })).collect::<Vec<_>>(),
        "annihilator": m.annihilator().map(|p| p.render("u")),
    })
}

fn dims_json(list: &[(i64, usize)]) -> Value {
    Value::Array(
        list.iter()
            .map(|(d, k)| json!({ "degree": d, "dim": k }))
            .collect(),
    )
}

fn hilbert(t: &crate::equivariant::UComplex, lo: i64, hi: i64) -> Result<Value, CliError> {
    let mut out = Vec::new();
    for k in lo..=hi {
        out.push(json!({ "degree": k, "dim": t.hilbert(k)? }));
    }
    Ok(Value::Array(out))
}

fn degree_window(n: &MixedComplex) -> (i64, i64) {
    let lo = n.degrees.iter().min().copied().unwrap_or(0);
    let hi = n.degrees.iter().max().copied().unwrap_or(0);
    (lo - 1, hi + 4)
}

fn koszul(path: &str) -> Result<Report, CliError> {
    let n = read::<MixedSpec>(path)?.build()?;
    let t = koszul_t(&n)?;
    let (lo, hi) = degree_window(&n);
    let mut value = json!({
        "schema": "koszul.v1",
        "variables": n.rank(),
        "mixed_cohomology": dims_json(&n.cohomology()?),
        "at_u_zero": dims_json(&t.at_zero()?),
        "hilbert": hilbert(&t, lo, hi)?,
    });
    let module = if n.rank() == 1 {
        module_json(&t.module()?)
    } else {
        json!({ "cohomology": Value::Null })
    };
    if let (Value::Object(v), Value::Object(m)) = (&mut value, module) {
        v.extend(m);
    }
    ok(value)
}

fn parse_weights(s: &str) -> Result<Vec<Vec<i64>>, CliError> {
    s.split(';')
        .map(|row| {
            row.split(',')
                .map(|x| x.trim().parse::<i64>())
                .collect::<Result<Vec<_>, _>>()
                .map_err(|_| {
                    CliError::Usage(format!("--weights must look like \"1,0;0,1\", got {s}"))
                })
        })
        .collect()
}

fn cartan(input: Option<&str>, weights: Option<&str>, c: i64) -> Result<Report, CliError> {
    let (weights, cut) = match (input, weights) {
        (Some(path), _) => {
            let spec = read::<CartanSpec>(path)?;
            if let Some(s) = &spec.schema {
                if s != "cartan.v1" {
                    return Err(CliError::Input(format!(
                        "expected schema cartan.v1, found {s}"
                    )));
                }
            }
            (spec.weights, spec.cutoff)
        }
        (None, Some(w)) => (parse_weights(w)?, cutoff("cutoff", c)?),
        (None, None) => {
            return Err(CliError::Usage(
                "one of --input or --weights is required".into(),
            ))
        }
    };
    let model = cartan_model(&weights, cut)?;
    let mut value = json!({
        "schema": "cartan.v1",
        "weights": weights,
        "cutoff": cut,
        "forms": model.forms.len(),
        "truncated": model.truncated,
        "hilbert": hilbert(&model.complex, 0, cut as i64)?,
    });
    if model.forms.rank() == 1 {
        if let (Value::Object(v), Value::Object(m)) =
            (&mut value, module_json(&model.complex.module()?))
        {
            v.extend(m);
        }
    }
    ok(value)
}

fn localize(path: &str) -> Result<Report, CliError> {
    let (z, x, iota, inverted) = read::<LocalizeSpec>(path)?.build()?;
    let v = localize_check(&z, &x, &iota, &inverted)?;
    Ok(Report {
        ok: v.iso_after_localization,
        value: json!({
            "schema": "localize.v1",
            "iso_after_localization": v.iso_after_localization,
            "cone_cohomology": v.cone_cohomology.to_string(),
            "annihilator": v.annihilator.map(|p| p.render("u")),
        }),
    })
}

fn alg_fixture(name: &str) -> Result<(AlgebraInstance, Preset), CliError> {
    let (_, preset, _) = ALG_FIXTURES.iter().find(|f| f.0 == name).ok_or_else(|| {
        CliError::Usage(format!(
            "unknown --fixture {name}; run `presets` for the list"
        ))
    })?;
    let a = match name {
        "truncated-poly" => truncated_polynomial(3),
        "matrices" => matrix_algebra(),
        "heisenberg-bd1" => heisenberg_bd1(),
        "bv-exterior" => bv_exterior(),
        "bd0-exterior" => bd0_exterior(),
        _ => bd0u_exterior(),
    };
    Ok((a, Preset::parse(preset)?))
}

fn operad_check(
    input: Option<&str>,
    fixture: Option<&str>,
    preset: Option<&str>,
    specialize: Option<&str>,
    emit: bool,
) -> Result<Report, CliError> {
    let flag = preset
        .map(|p| {
            Preset::parse(p).map_err(|_| {
                CliError::Usage(format!("unknown --preset {p}; run `presets` for the list"))
            })
        })
        .transpose()?;
    let (mut a, default) = match (input, fixture) {
        (Some(path), _) => {
            let spec = read::<AlgSpec>(path)?;
            (spec.build()?, spec.preset()?)
        }
        (None, Some(f)) => {
            let (a, p) = alg_fixture(f)?;
            (a, Some(p))
        }
        (None, None) => {
            return Err(CliError::Usage(
                "one of --input or --fixture is required".into(),
            ))
        }
    };
    if let Some(s) = specialize {
        if a.ring == Ring::Q {
            return Err(CliError::Input(
                "--specialize needs an instance over Q[h] or Q[u]".into(),
            ));
        }
        let q = parse_rational(s)
            .ok_or_else(|| CliError::Usage(format!("--specialize must be rational, got {s}")))?;
        a = a.specialize(&q);
    }
    let preset = flag.or(default);
    if emit {
        return ok(serde_json::to_value(AlgSpec::from_instance(&a, preset)).expect("serializable"));
    }
    let preset = preset.ok_or_else(|| {
        CliError::Usage("no preset: pass --preset or set it in the document".into())
    })?;
    let r = a.check(preset)?;
    let relations: Vec<Value> = r
        .relations
        .iter()
        .map(|x| json!({ "relation": x.name, "passed": x.witness.is_none(), "witness": x.witness }))
        .collect();
    Ok(Report {
        ok: r.passed(),
        value: json!({
            "schema": "alg-report.v1",
            "preset": r.preset,
            "ring": a.ring.to_string(),
            "passed": r.passed(),
            "relations": relations,
            "notes": r.notes,
        }),
    })
}

fn conf(n: usize, d: usize) -> Result<Report, CliError> {
    let c = conf_ring(n, d)?;
    let basis: Vec<Value> = c
        .dims()
        .iter()
        .enumerate()
        .filter(|(_, k)| **k > 0)
        .map(|(p, _)| json!({ "degree": p * (d - 1), "monomials": c.basis(p) }))
        .collect();
    ok(json!({
        "n": n,
        "d": d,
        "poincare": c.poincare_string(),
        "total": c.total_dim(),
        "basis": basis,
    }))
}

fn presets() -> Report {
    let list = |items: &[(&str, &str)]| -> Value {
        items
            .iter()
            .map(|(n, d)| json!({ "name": n, "description": d }))
            .collect()
    };
    let fixtures: Value = ALG_FIXTURES
        .iter()
        .map(|(n, p, d)| json!({ "name": n, "preset": p, "description": d }))
        .collect();
    Report {
        ok: true,
        value: json!({
            "vla": list(VLA_PRESETS),
            "lie": list(LIE_PRESETS),
            "matter": list(MATTER_PRESETS),
            "operads": list(OPERAD_PRESETS),
            "algebra_fixtures": fixtures,
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_listed_preset_resolves() {
        for (name, _) in VLA_PRESETS {
            vla_preset(name, None).unwrap();
        }
        for (name, _) in LIE_PRESETS {
            load_lie(name).unwrap();
        }
        let (g, kind) = load_lie("sl2").unwrap();
        for (name, _) in MATTER_PRESETS {
            if *name != "heisenberg" {
                matter(&g, &kind, name, &Scalar::rational(int(1))).unwrap();
            }
        }
        let (a, kind) = load_lie("abelian").unwrap();
        matter(&a, &kind, "heisenberg", &Scalar::rational(int(1))).unwrap();
        for (name, _) in OPERAD_PRESETS {
            Preset::parse(&name.replace("P_d", "P_2")).unwrap();
        }
        for (name, _, _) in ALG_FIXTURES {
            let (a, p) = alg_fixture(name).unwrap();
            assert_eq!(a.check(p).unwrap().passed(), *name != "matrices", "{name}");
        }
    }

    #[test]
    fn killing_form_of_sl2() {
        // κ(e, f) = 4, κ(h, h) = 8
        let k = killing(&LieAlgebra::sl2());
        assert_eq!(k[0][2], int(4));
        assert_eq!(k[1][1], int(8));
    }
}
