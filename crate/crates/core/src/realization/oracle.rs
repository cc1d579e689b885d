use std::fmt::{self, Debug};
use std::hash::Hash;

use crate::homeo::PlHomeo;
use crate::order::StandardOrdering;
use crate::sign::Sign;

/// A generator or its inverse.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub generator: usize,
    pub inverse: bool,
}

impl Letter {
    pub fn new(generator: usize, inverse: bool) -> Letter {
        Letter { generator, inverse }
    }

    pub fn inverted(self) -> Letter {
        Letter { generator: self.generator, inverse: !self.inverse }
    }
}

/// A word in the generators, read left to right as a product.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Word(pub Vec<Letter>);

impl Word {
    pub fn identity() -> Word {
        Word(Vec::new())
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `self · letter`.
    pub fn then(&self, letter: Letter) -> Word {
        let mut letters = self.0.clone();
        letters.push(letter);
        Word(letters)
    }

    /// Renders with run-length exponents, e.g. `a^2 b^-1`; the empty word is `1`.
    pub fn render(&self, names: &[String]) -> String {
        if self.0.is_empty() {
            return "1".to_string();
        }
        let mut runs: Vec<(usize, i64)> = Vec::new();
        for l in &self.0 {
            let step = if l.inverse { -1 } else { 1 };
            match runs.last_mut() {
                Some((g, e)) if *g == l.generator && (*e > 0) == (step > 0) => *e += step,
                _ => runs.push((l.generator, step)),
            }
        }
        runs.iter()
            .map(|(g, e)| if *e == 1 { names[*g].clone() } else { format!("{}^{}", names[*g], e) })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

/// A finitely generated group with solvable word problem and a left order.
pub trait GroupOracle {
    /// Normal form of an element; equal elements have equal normal forms.
    type Element: Clone + Eq + Hash + Debug;

    fn generator_names(&self) -> Vec<String>;

    fn identity(&self) -> Self::Element;

    fn letter(&self, letter: Letter) -> Self::Element;

    fn multiply(&self, a: &Self::Element, b: &Self::Element) -> Self::Element;

    /// Sign of `b⁻¹a` in the left order: `Positive` iff `a ≻ b`.
    fn compare(&self, a: &Self::Element, b: &Self::Element) -> Sign;

    fn normalize(&self, word: &Word) -> Self::Element {
        word.0.iter().fold(self.identity(), |acc, l| self.multiply(&acc, &self.letter(*l)))
    }
}

/// `ℤ^d` ordered lexicographically, the first coordinate dominating.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZLex {
    pub dimension: usize,
}

impl ZLex {
    pub fn new(dimension: usize) -> ZLex {
        ZLex { dimension }
    }
}

impl GroupOracle for ZLex {
    type Element = Vec<i64>;

    fn generator_names(&self) -> Vec<String> {
        (0..self.dimension).map(generator_name).collect()
    }

    fn identity(&self) -> Vec<i64> {
        vec![0; self.dimension]
    }

    fn letter(&self, letter: Letter) -> Vec<i64> {
        let mut v = self.identity();
        v[letter.generator] = if letter.inverse { -1 } else { 1 };
        v
    }

    fn multiply(&self, a: &Vec<i64>, b: &Vec<i64>) -> Vec<i64> {
        a.iter().zip(b).map(|(x, y)| x + y).collect()
    }

    fn compare(&self, a: &Vec<i64>, b: &Vec<i64>) -> Sign {
        a.cmp(b).into()
    }
}

/// The subgroup of PL homeomorphisms generated by given maps, ordered by a
/// standard ordering.
#[derive(Clone, Debug)]
pub struct PlSubgroup {
    pub generators: Vec<PlHomeo>,
    pub ordering: StandardOrdering,
    names: Vec<String>,
}

impl PlSubgroup {
    pub fn new(generators: Vec<PlHomeo>, ordering: StandardOrdering) -> PlSubgroup {
        let names = (0..generators.len()).map(generator_name).collect();
        PlSubgroup { generators, ordering, names }
    }
}

impl GroupOracle for PlSubgroup {
    type Element = PlHomeo;

    fn generator_names(&self) -> Vec<String> {
        self.names.clone()
    }

    fn identity(&self) -> PlHomeo {
        PlHomeo::identity()
    }

    fn letter(&self, letter: Letter) -> PlHomeo {
        let g = &self.generators[letter.generator];
        if letter.inverse {
            g.invert()
        } else {
            g.clone()
        }
    }

    fn multiply(&self, a: &PlHomeo, b: &PlHomeo) -> PlHomeo {
        a.compose(b)
    }

    fn compare(&self, a: &PlHomeo, b: &PlHomeo) -> Sign {
        self.ordering.compare(a, b).sign
    }
}

/// `a, b, …, z, g26, g27, …`.
fn generator_name(i: usize) -> String {
    if i < 26 {
        ((b'a' + i as u8) as char).to_string()
    } else {
        format!("g{i}")
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", generator_name(self.generator), if self.inverse { "^-1" } else { "" })
    }
}
