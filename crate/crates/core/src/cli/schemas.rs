//! Input documents for the lie, mixed.v1, cartan.v1 and alg.v1 formats.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::CliError;
use crate::equivariant::{matrix, MixedComplex};
use crate::kernel::{Parity, Poly, Rational, Ring};
use crate::operads::{AlgebraInstance, Binary, Preset, Vect};
use crate::vla::json::{Num, ParitySpec};
use crate::vla::LieAlgebra;

fn check_schema(found: &Option<String>, expected: &str) -> Result<(), CliError> {
    match found {
        Some(s) if s != expected => Err(CliError::Input(format!(
            "expected schema {expected}, found {s}"
        ))),
        _ => Ok(()),
    }
}

fn rational(n: &Num, what: &str) -> Result<Rational, CliError> {
    n.rational()
        .ok_or_else(|| CliError::Input(format!("{what}: {n:?} is not a rational number")))
}

/// A Lie algebra by basis names and nonzero brackets [a, b] = Σ c_k x_k.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LieSpec {
    #[serde(default)]
    pub schema: Option<String>,
    pub basis: Vec<String>,
    #[serde(default)]
    pub brackets: Vec<LieBracket>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LieBracket {
    pub a: String,
    pub b: String,
    pub value: BTreeMap<String, Num>,
}

impl LieSpec {
    /// Brackets are given for one order; the other follows by antisymmetry.
    pub fn build(&self) -> Result<LieAlgebra, CliError> {
        check_schema(&self.schema, "lie.v1")?;
        let n = self.basis.len();
        let idx = |s: &str| {
            self.basis
                .iter()
                .position(|b| b == s)
                .ok_or_else(|| CliError::Input(format!("unknown basis element {s}")))
        };
        let mut c = vec![vec![vec![Rational::from_integer(0.into()); n]; n]; n];
        for br in &self.brackets {
            let (a, b) = (idx(&br.a)?, idx(&br.b)?);
            for (k, v) in &br.value {
                let k = idx(k)?;
                let x = rational(v, "bracket coefficient")?;
                c[a][b][k] = x.clone();
                c[b][a][k] = -x;
            }
        }
        let g = LieAlgebra {
            names: self.basis.clone(),
            c,
        };
        g.validate().map_err(|e| CliError::Input(e.to_string()))?;
        Ok(g)
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BasisSpec {
    pub name: String,
    pub degree: i64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub parity: Option<ParitySpec>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EntrySpec {
    pub from: String,
    pub to: String,
    pub coeff: Num,
}

/// A mixed complex: d of degree +1 and one h of degree −1 per torus factor.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MixedSpec {
    #[serde(default)]
    pub schema: Option<String>,
    pub basis: Vec<BasisSpec>,
    #[serde(default)]
    pub d: Vec<EntrySpec>,
    /// one list of entries per torus factor
    #[serde(default)]
    pub h: Vec<Vec<EntrySpec>>,
    /// number of torus factors when `h` is shorter; defaults to max(1, |h|)
    #[serde(default)]
    pub rank: Option<usize>,
}

fn entries(
    names: &[String],
    list: &[EntrySpec],
) -> Result<Vec<(usize, usize, Rational)>, CliError> {
    let idx = |s: &str| {
        names
            .iter()
            .position(|b| b == s)
            .ok_or_else(|| CliError::Input(format!("unknown basis element {s}")))
    };
    list.iter()
        .map(|e| {
            Ok((
                idx(&e.to)?,
                idx(&e.from)?,
                rational(&e.coeff, "matrix entry")?,
            ))
        })
        .collect()
}

impl MixedSpec {
    pub fn build(&self) -> Result<MixedComplex, CliError> {
        check_schema(&self.schema, "mixed.v1")?;
        let names: Vec<String> = self.basis.iter().map(|b| b.name.clone()).collect();
        let degrees = self.basis.iter().map(|b| b.degree).collect();
        let n = names.len();
        let rank = self.rank.unwrap_or(self.h.len().max(1));
        if rank < self.h.len() {
            return Err(CliError::Input(format!(
                "rank {rank} is smaller than the {} h operators given",
                self.h.len()
            )));
        }
        let d = matrix(n, &entries(&names, &self.d)?);
        let mut h = Vec::new();
        for i in 0..rank {
            let list = self.h.get(i).map_or(&[][..], Vec::as_slice);
            h.push(matrix(n, &entries(&names, list)?));
        }
        Ok(MixedComplex::new(names, degrees, d, h)?)
    }
}

/// A map of mixed complexes ι: source → target and the polynomials in u to
/// invert.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LocalizeSpec {
    #[serde(default)]
    pub schema: Option<String>,
    pub source: MixedSpec,
    pub target: MixedSpec,
    #[serde(default)]
    pub map: Vec<EntrySpec>,
    #[serde(default)]
    pub invert: Vec<String>,
}

impl LocalizeSpec {
    pub fn build(
        &self,
    ) -> Result<
        (
            MixedComplex,
            MixedComplex,
            crate::kernel::SparseMatrix,
            Vec<Poly>,
        ),
        CliError,
    > {
        check_schema(&self.schema, "localize.v1")?;
        let z = self.source.build()?;
        let x = self.target.build()?;
        let mut iota = crate::kernel::SparseMatrix::zeros(Ring::Q, x.len(), z.len());
        for e in &self.map {
            let j = z.names.iter().position(|s| *s == e.from);
            let i = x.names.iter().position(|s| *s == e.to);
            let (Some(i), Some(j)) = (i, j) else {
                return Err(CliError::Input(format!(
                    "map entry {} -> {} names an unknown element",
                    e.from, e.to
                )));
            };
            iota.set(i, j, Poly::constant(rational(&e.coeff, "map entry")?));
        }
        let inverted = self
            .invert
            .iter()
            .map(|s| {
                Ring::U
                    .parse_value(s)
                    .ok_or_else(|| CliError::Input(format!("cannot read {s} as a polynomial in u")))
            })
            .collect::<Result<_, _>>()?;
        Ok((z, x, iota, inverted))
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CartanSpec {
    #[serde(default)]
    pub schema: Option<String>,
    /// weights[i][a]: weight of torus factor i on coordinate a
    pub weights: Vec<Vec<i64>>,
    pub cutoff: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BinaryEntry {
    pub a: String,
    pub b: String,
    pub value: BTreeMap<String, Num>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct UnaryEntry {
    pub a: String,
    pub value: BTreeMap<String, Num>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BracketTable {
    pub degree: i64,
    #[serde(default)]
    pub table: Vec<BinaryEntry>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DeltaTable {
    pub degree: i64,
    #[serde(default)]
    pub table: Vec<UnaryEntry>,
}

/// An algebra instance; missing pairs in a table are zero, a missing table
/// is absent.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgSpec {
    #[serde(default)]
    pub schema: Option<String>,
    pub ring: String,
    pub basis: Vec<BasisSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub preset: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<Vec<BinaryEntry>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pi: Option<BracketTable>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub delta: Option<DeltaTable>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d: Option<Vec<UnaryEntry>>,
}

impl AlgSpec {
    pub fn preset(&self) -> Result<Option<Preset>, CliError> {
        self.preset
            .as_deref()
            .map(Preset::parse)
            .transpose()
            .map_err(CliError::from)
    }

    pub fn build(&self) -> Result<AlgebraInstance, CliError> {
        check_schema(&self.schema, "alg.v1")?;
        let ring = match self.ring.as_str() {
            "Q" => Ring::Q,
            "Q[h]" | "Q[hbar]" | "Q[ħ]" => Ring::Hbar,
            "Q[u]" => Ring::U,
            other => {
                return Err(CliError::Input(format!(
                    "ring must be Q, Q[h] or Q[u], got {other}"
                )))
            }
        };
        let names: Vec<String> = self.basis.iter().map(|b| b.name.clone()).collect();
        let mut a = AlgebraInstance::new(
            ring.clone(),
            names.clone(),
            self.basis.iter().map(|b| b.degree).collect(),
        );
        for (i, b) in self.basis.iter().enumerate() {
            if let Some(p) = b.parity {
                a.parities[i] = p.into();
            }
        }
        let idx = |s: &str| {
            names
                .iter()
                .position(|b| b == s)
                .ok_or_else(|| CliError::Input(format!("unknown basis element {s}")))
        };
        let vect = |v: &BTreeMap<String, Num>| -> Result<Vect, CliError> {
            let mut out = Vect::zero();
            for (k, c) in v {
                let c = c.in_ring(&ring).ok_or_else(|| {
                    CliError::Input(format!("cannot read coefficient {c:?} in {ring}"))
                })?;
                out.add_term(idx(k)?, c);
            }
            Ok(out)
        };
        let binary = |t: &[BinaryEntry]| -> Result<Binary, CliError> {
            let mut out = Binary::new();
            for e in t {
                out.insert((idx(&e.a)?, idx(&e.b)?), vect(&e.value)?);
            }
            Ok(out)
        };
        let unary = |t: &[UnaryEntry]| -> Result<Vec<Vect>, CliError> {
            let mut out = vec![Vect::zero(); names.len()];
            for e in t {
                out[idx(&e.a)?] = vect(&e.value)?;
            }
            Ok(out)
        };
        a.m = self.m.as_deref().map(binary).transpose()?;
        if let Some(p) = &self.pi {
            a.pi = Some(binary(&p.table)?);
            a.pi_degree = p.degree;
        }
        if let Some(t) = &self.delta {
            a.delta = Some(unary(&t.table)?);
            a.delta_degree = t.degree;
        }
        a.d = self.d.as_deref().map(unary).transpose()?;
        a.validate()?;
        Ok(a)
    }

    pub fn from_instance(a: &AlgebraInstance, preset: Option<Preset>) -> AlgSpec {
        let render = |c: &Poly| match c.as_constant() {
            Some(q) if q.is_integer() => match q.to_integer().try_into() {
                Ok(i) => Num::Int(i),
                Err(_) => Num::Text(q.to_string()),
            },
            _ => Num::Text(c.render(a.ring.var_name()).replace('ħ', "h")),
        };
        let value = |v: &Vect| {
            v.iter()
                .map(|(k, c)| (a.names[*k].clone(), render(c)))
                .collect()
        };
        let binary = |t: &Binary| {
            t.iter()
                .filter(|(_, v)| !v.is_zero())
                .map(|(&(x, y), v)| BinaryEntry {
                    a: a.names[x].clone(),
                    b: a.names[y].clone(),
                    value: value(v),
                })
                .collect::<Vec<_>>()
        };
        let unary = |t: &[Vect]| {
            t.iter()
                .enumerate()
                .filter(|(_, v)| !v.is_zero())
                .map(|(i, v)| UnaryEntry {
                    a: a.names[i].clone(),
                    value: value(v),
                })
                .collect::<Vec<_>>()
        };
        let ring = match a.ring {
            Ring::Hbar => "Q[h]".to_string(),
            ref r => r.to_string(),
        };
        AlgSpec {
            schema: Some("alg.v1".into()),
            ring,
            basis: a
                .names
                .iter()
                .zip(&a.degrees)
                .zip(&a.parities)
                .map(|((n, d), p)| BasisSpec {
                    name: n.clone(),
                    degree: *d,
                    parity: (*p != Parity::from_bit(d.rem_euclid(2))).then_some((*p).into()),
                })
                .collect(),
            preset: preset.map(|p| p.to_string()),
            m: a.m.as_ref().map(binary),
            pi: a.pi.as_ref().map(|t| BracketTable {
                degree: a.pi_degree,
                table: binary(t),
            }),
            delta: a.delta.as_ref().map(|t| DeltaTable {
                degree: a.delta_degree,
                table: unary(t),
            }),
            d: a.d.as_deref().map(unary),
        }
    }
}
