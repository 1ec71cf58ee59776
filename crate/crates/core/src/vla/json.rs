//! The `vla.v1` interchange format.

use serde::{Deserialize, Serialize};

use super::{Generator, LBasis, VertexLieData, VlaError};
use crate::kernel::{parse_rational, Parity, Poly, Rational, Ring};

/// A number given either as a JSON integer or as a string such as `"1/2"`
/// or `"c/2"`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Num {
    Int(i64),
    Text(String),
}

impl Num {
    pub fn rational(&self) -> Option<Rational> {
        match self {
            Num::Int(i) => Some(Rational::from_integer((*i).into())),
            Num::Text(s) => parse_rational(s),
        }
    }

    pub fn in_ring(&self, ring: &Ring) -> Option<Poly> {
        match self {
            Num::Int(i) => Some(Poly::from_int(*i)),
            Num::Text(s) => ring.parse_value(s),
        }
    }

    fn render(p: &Poly, ring: &Ring) -> Num {
        match p.as_constant() {
            Some(c) if c.is_integer() => match c.to_integer().try_into() {
                Ok(i) => Num::Int(i),
                Err(_) => Num::Text(c.to_string()),
            },
            _ => Num::Text(p.render(ring.var_name())),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ParitySpec {
    Even,
    Odd,
}

impl From<ParitySpec> for Parity {
    fn from(p: ParitySpec) -> Parity {
        match p {
            ParitySpec::Even => Parity::Even,
            ParitySpec::Odd => Parity::Odd,
        }
    }
}

impl From<Parity> for ParitySpec {
    fn from(p: Parity) -> ParitySpec {
        match p {
            Parity::Even => ParitySpec::Even,
            Parity::Odd => ParitySpec::Odd,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratorSpec {
    pub name: String,
    pub weight: Num,
    pub parity: ParitySpec,
    #[serde(default, skip_serializing_if = "is_zero")]
    pub degree: i32,
}

fn is_zero(d: &i32) -> bool {
    *d == 0
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermSpec {
    pub gen: String,
    #[serde(default)]
    pub dpow: u32,
    pub coeff: Num,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BracketSpec {
    pub a: String,
    pub b: String,
    pub n: u32,
    #[serde(default)]
    pub value: Vec<TermSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub central_coeff: Option<Num>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VlaSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub schema: Option<String>,
    pub ring: String,
    pub generators: Vec<GeneratorSpec>,
    #[serde(default)]
    pub central: bool,
    #[serde(default)]
    pub brackets: Vec<BracketSpec>,
}

impl VlaSpec {
    pub fn build(&self) -> Result<VertexLieData, VlaError> {
        if let Some(s) = &self.schema {
            if s != "vla.v1" {
                return Err(VlaError::Invalid(format!("unsupported schema {s}")));
            }
        }
        let ring = Ring::parse(&self.ring)
            .ok_or_else(|| VlaError::Invalid(format!("unknown ring {}", self.ring)))?;
        let gens = self
            .generators
            .iter()
            .map(|g| {
                let weight = g
                    .weight
                    .rational()
                    .ok_or_else(|| VlaError::Invalid(format!("bad weight for {}", g.name)))?;
                Ok(Generator {
                    name: g.name.clone(),
                    weight,
                    parity: g.parity.into(),
                    degree: g.degree,
                })
            })
            .collect::<Result<Vec<_>, VlaError>>()?;
        let mut l = VertexLieData::new(ring.clone(), gens, self.central)?;
        let coeff = |n: &Num| {
            n.in_ring(&ring)
                .ok_or_else(|| VlaError::BadCoefficient(format!("{n:?}"), ring.to_string()))
        };
        for br in &self.brackets {
            let a = l.index(&br.a)?;
            let b = l.index(&br.b)?;
            let mut v = l.gen_bracket(a, b, br.n);
            for t in &br.value {
                let g = l.index(&t.gen)?;
                v.add_term(
                    LBasis::Gen {
                        gen: g,
                        dpow: t.dpow,
                    },
                    coeff(&t.coeff)?,
                );
            }
            if let Some(c) = &br.central_coeff {
                v.add_term(LBasis::Central, coeff(c)?);
            }
            l.set_bracket(a, b, br.n, v)?;
        }
        Ok(l)
    }

    pub fn from_data(l: &VertexLieData) -> VlaSpec {
        let generators = l
            .generators
            .iter()
            .map(|g| GeneratorSpec {
                name: g.name.clone(),
                weight: if g.weight.is_integer() {
                    Num::Int(g.weight.to_integer().try_into().unwrap_or(0))
                } else {
                    Num::Text(g.weight.to_string())
                },
                parity: g.parity.into(),
                degree: g.degree,
            })
            .collect();
        let brackets = l
            .brackets
            .iter()
            .map(|(&(a, b, n), v)| {
                let mut value = Vec::new();
                let mut central_coeff = None;
                for (k, c) in v.iter() {
                    match k {
                        LBasis::Gen { gen, dpow } => value.push(TermSpec {
                            gen: l.name(*gen).to_string(),
                            dpow: *dpow,
                            coeff: Num::render(c, &l.ring),
                        }),
                        LBasis::Central => central_coeff = Some(Num::render(c, &l.ring)),
                    }
                }
                BracketSpec {
                    a: l.name(a).to_string(),
                    b: l.name(b).to_string(),
                    n,
                    value,
                    central_coeff,
                }
            })
            .collect();
        VlaSpec {
            schema: Some("vla.v1".into()),
            ring: l.ring.to_string(),
            generators,
            central: l.central,
            brackets,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::Scalar;
    use crate::vla::{virasoro, weyl_pair};

    #[test]
    fn round_trip_through_json() {
        for l in [
            virasoro(&Scalar::new(Ring::Level("c".into()), Poly::var())).unwrap(),
            weyl_pair(2, true).unwrap(),
        ] {
            let text = serde_json::to_string(&VlaSpec::from_data(&l)).unwrap();
            let back: VlaSpec = serde_json::from_str(&text).unwrap();
            assert_eq!(back.build().unwrap(), l);
        }
    }

    #[test]
    fn unknown_generator_rejected() {
        let s = r#"{"ring":"Q","generators":[{"name":"a","weight":1,"parity":"even"}],
                    "brackets":[{"a":"a","b":"z","n":0}]}"#;
        let spec: VlaSpec = serde_json::from_str(s).unwrap();
        assert_eq!(spec.build(), Err(VlaError::UnknownGenerator("z".into())));
    }
}
