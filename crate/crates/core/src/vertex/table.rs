//! A vertex structure given by an explicit finite multiplication table.

use std::collections::BTreeMap;

use super::checks::VertexStructure;
use crate::kernel::{Element, Parity, Rational};

/// States are indices; index 0 is the vacuum. Products not listed are zero,
/// except the vacuum rules Ω_(−1)b = b, a_(−1)Ω = a, a_(n≥0)Ω = 0 and
/// a_(−2)Ω = Ta, which are supplied automatically.
#[derive(Clone, Debug)]
pub struct TableVertex {
    pub names: Vec<String>,
    pub weights: Vec<Rational>,
    pub parities: Vec<Parity>,
    pub generators: Vec<usize>,
    pub cutoff: Rational,
    pub products: BTreeMap<(usize, i64, usize), Element<usize>>,
    pub translations: BTreeMap<usize, Element<usize>>,
}

impl TableVertex {
    /// The algebra spanned by the vacuum alone.
    pub fn trivial() -> Self {
        TableVertex {
            names: vec!["Ω".into()],
            weights: vec![Rational::from_integer(0.into())],
            parities: vec![Parity::Even],
            generators: Vec::new(),
            cutoff: Rational::from_integer(0.into()),
            products: BTreeMap::new(),
            translations: BTreeMap::new(),
        }
    }

    /// Append a state; returns its index.
    pub fn add_state(&mut self, name: &str, weight: Rational, parity: Parity) -> usize {
        self.names.push(name.to_string());
        if weight > self.cutoff {
            self.cutoff = weight.clone();
        }
        self.weights.push(weight);
        self.parities.push(parity);
        self.names.len() - 1
    }
}

impl VertexStructure for TableVertex {
    type B = usize;

    fn states(&self) -> Vec<usize> {
        (0..self.names.len()).collect()
    }
    fn weight(&self, b: &usize) -> Rational {
        self.weights[*b].clone()
    }
    fn parity(&self, b: &usize) -> Parity {
        self.parities[*b]
    }
    fn vacuum(&self) -> usize {
        0
    }
    fn generators(&self) -> Vec<usize> {
        self.generators.clone()
    }
    fn product(&self, a: &usize, n: i64, b: &usize) -> Element<usize> {
        if *a == 0 {
            return if n == -1 {
                Element::basis(*b)
            } else {
                Element::zero()
            };
        }
        if *b == 0 {
            return match n {
                -1 => Element::basis(*a),
                -2 => self.translation(a),
                n if n >= 0 => Element::zero(),
                _ => self.products.get(&(*a, n, *b)).cloned().unwrap_or_default(),
            };
        }
        self.products.get(&(*a, n, *b)).cloned().unwrap_or_default()
    }
    fn translation(&self, a: &usize) -> Element<usize> {
        self.translations.get(a).cloned().unwrap_or_default()
    }
    fn cutoff(&self) -> Rational {
        self.cutoff.clone()
    }
    fn describe(&self, e: &Element<usize>) -> String {
        if e.is_zero() {
            return "0".into();
        }
        e.iter()
            .map(|(b, c)| format!("({}){}", c.render(""), self.names[*b]))
            .collect::<Vec<_>>()
            .join(" + ")
    }
}
