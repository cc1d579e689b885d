use std::collections::HashMap;

use serde::Serialize;

use crate::error::Error;
use crate::homeo::PlHomeo;
use crate::rational::{self, int, Rational};
use crate::realization::oracle::{GroupOracle, Letter, Word};
use crate::sign::Sign;

/// Elements of word length at most `radius`, breadth-first: the identity,
/// then each word of the previous layer extended on the right by
/// `s₁, s₁⁻¹, s₂, s₂⁻¹, …`, skipping elements already seen.
pub fn enumerate_ball<G: GroupOracle>(oracle: &G, radius: usize) -> Vec<(Word, G::Element)> {
    let letters: Vec<Letter> =
        (0..oracle.generator_names().len()).flat_map(|g| [Letter::new(g, false), Letter::new(g, true)]).collect();
    let mut seen: HashMap<G::Element, ()> = HashMap::new();
    let identity = oracle.identity();
    seen.insert(identity.clone(), ());
    let mut out = vec![(Word::identity(), identity)];
    let mut layer_start = 0;
    for _ in 0..radius {
        let layer_end = out.len();
        for i in layer_start..layer_end {
            for &l in &letters {
                let element = oracle.multiply(&out[i].1, &oracle.letter(l));
                if seen.insert(element.clone(), ()).is_none() {
                    out.push((out[i].0.then(l), element));
                }
            }
        }
        layer_start = layer_end;
    }
    out
}

/// The `t`-map on an enumeration starting with the identity: `t(g₁) = 0`; a
/// new maximum goes one past the current maximum, a new minimum one below
/// the minimum, anything else halfway between its order-neighbours.
pub fn build_tmap<G: GroupOracle>(oracle: &G, elements: &[G::Element]) -> Result<Vec<Rational>, Error> {
    let mut t: Vec<Rational> = Vec::with_capacity(elements.len());
    // Indices into `elements`, sorted by the order.
    let mut sorted: Vec<usize> = Vec::with_capacity(elements.len());
    for (n, e) in elements.iter().enumerate() {
        let mut lo = 0;
        let mut hi = sorted.len();
        while lo < hi {
            let mid = (lo + hi) / 2;
            match oracle.compare(e, &elements[sorted[mid]]) {
                Sign::Positive => lo = mid + 1,
                Sign::Negative => hi = mid,
                Sign::Zero => {
                    return Err(Error::InvalidOrdering(format!(
                        "elements {} and {n} of the enumeration are equal",
                        sorted[mid]
                    )))
                }
            }
        }
        let value = if sorted.is_empty() {
            rational::zero()
        } else if lo == sorted.len() {
            &t[sorted[lo - 1]] + int(1)
        } else if lo == 0 {
            &t[sorted[0]] - int(1)
        } else {
            rational::midpoint(&t[sorted[lo - 1]], &t[sorted[lo]])
        };
        t.push(value);
        sorted.insert(lo, n);
    }
    Ok(t)
}

/// A realized ball: enumeration, `t`-values, and one PL map per generator.
#[derive(Clone, Debug, Serialize)]
pub struct RealizationResult {
    pub generator_names: Vec<String>,
    pub words: Vec<String>,
    #[serde(with = "crate::rational::serde_str::vec")]
    pub t: Vec<Rational>,
    pub rho: Vec<PlHomeo>,
    #[serde(skip)]
    pub word_list: Vec<Word>,
}

impl RealizationResult {
    /// Position in the enumeration of the element with `t`-value `x`.
    pub fn index_of_t(&self, x: &Rational) -> Option<usize> {
        self.t.iter().position(|v| v == x)
    }

    /// `g · t(h) = t(gh)` through the interpolated action.
    pub fn act(&self, letter: Letter, x: &Rational) -> Rational {
        let rho = &self.rho[letter.generator];
        if letter.inverse {
            rho.evaluate_inverse(x)
        } else {
            rho.evaluate(x)
        }
    }
}

/// Enumerates the ball, builds the `t`-map, and interpolates each generator
/// through the pairs `(t(h), t(sh))` with both ends in the ball, extended by
/// slope-one tails.
pub fn realize<G: GroupOracle>(oracle: &G, radius: usize) -> Result<RealizationResult, Error> {
    let ball = enumerate_ball(oracle, radius);
    let (words, elements): (Vec<Word>, Vec<G::Element>) = ball.into_iter().unzip();
    let t = build_tmap(oracle, &elements)?;
    let index: HashMap<&G::Element, usize> = elements.iter().enumerate().map(|(i, e)| (e, i)).collect();
    let names = oracle.generator_names();
    let mut rho = Vec::with_capacity(names.len());
    for (g, name) in names.iter().enumerate() {
        let s = oracle.letter(Letter::new(g, false));
        let mut pairs: Vec<(Rational, Rational)> = elements
            .iter()
            .enumerate()
            .filter_map(|(h, e)| index.get(&oracle.multiply(&s, e)).map(|&sh| (t[h].clone(), t[sh].clone())))
            .collect();
        if pairs.len() < 2 {
            return Err(Error::BallTooSmall { generator: name.clone(), pairs: pairs.len() });
        }
        pairs.sort();
        let map = PlHomeo::new(pairs, int(1), int(1))
            .map_err(|e| Error::InvalidOrdering(format!("action of {name} is not monotone on the ball: {e}")))?;
        rho.push(map);
    }
    Ok(RealizationResult {
        words: words.iter().map(|w| w.render(&names)).collect(),
        generator_names: names,
        t,
        rho,
        word_list: words,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum RecoveryViolation {
    /// `compare(u, v)` disagrees with the order of `t(u)` and `t(v)`.
    Order { u: usize, v: usize },
    /// The sign of `t(g)` disagrees with the sign of `g`.
    Sign { g: usize },
    /// `ρ(s^±1)(t(h)) ≠ t(s^±1 h)`.
    Action { generator: usize, inverse: bool, h: usize },
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct RecoveryReport {
    pub pairs_checked: usize,
    pub actions_checked: usize,
    pub violations: Vec<RecoveryViolation>,
}

impl RecoveryReport {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks that the realization recovers the order: `t` is order-preserving,
/// `g ≻ 1` exactly when `t(g) > 0`, and the interpolated generators act on
/// the ball as left multiplication.
pub fn check_recovery<G: GroupOracle>(result: &RealizationResult, oracle: &G) -> RecoveryReport {
    let elements: Vec<G::Element> = result.word_list.iter().map(|w| oracle.normalize(w)).collect();
    let index: HashMap<&G::Element, usize> = elements.iter().enumerate().map(|(i, e)| (e, i)).collect();
    let identity = oracle.identity();
    let mut report = RecoveryReport::default();
    for (u, eu) in elements.iter().enumerate() {
        if Sign::of(&result.t[u], &rational::zero()) != oracle.compare(eu, &identity) {
            report.violations.push(RecoveryViolation::Sign { g: u });
        }
        for (v, ev) in elements.iter().enumerate().skip(u + 1) {
            report.pairs_checked += 1;
            let by_t: Sign = result.t[u].cmp(&result.t[v]).into();
            if by_t != oracle.compare(eu, ev) {
                report.violations.push(RecoveryViolation::Order { u, v });
            }
        }
    }
    for generator in 0..result.rho.len() {
        for inverse in [false, true] {
            let letter = Letter::new(generator, inverse);
            let s = oracle.letter(letter);
            for (h, e) in elements.iter().enumerate() {
                let Some(&sh) = index.get(&oracle.multiply(&s, e)) else { continue };
                report.actions_checked += 1;
                if result.act(letter, &result.t[h]) != result.t[sh] {
                    report.violations.push(RecoveryViolation::Action { generator, inverse, h });
                }
            }
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homeo::pl_bump;
    use crate::order::StandardOrdering;
    use crate::rational::frac;
    use crate::realization::oracle::{PlSubgroup, ZLex};

    fn words<G: GroupOracle>(oracle: &G, radius: usize) -> Vec<String> {
        let names = oracle.generator_names();
        enumerate_ball(oracle, radius).iter().map(|(w, _)| w.render(&names)).collect()
    }

    #[test]
    fn ball_enumeration() {
        assert_eq!(words(&ZLex::new(1), 2), ["1", "a", "a^-1", "a^2", "a^-2"]);
        assert_eq!(words(&ZLex::new(1), 0), ["1"]);
        assert_eq!(words(&ZLex::new(2), 1), ["1", "a", "a^-1", "b", "b^-1"]);
        // Ball of radius r in ℤ² has 2r² + 2r + 1 elements.
        assert_eq!(enumerate_ball(&ZLex::new(2), 4).len(), 41);
    }

    #[test]
    fn tmap_examples() {
        let z = ZLex::new(1);
        let elements: Vec<_> = enumerate_ball(&z, 2).into_iter().map(|(_, e)| e).collect();
        assert_eq!(build_tmap(&z, &elements).unwrap(), vec![int(0), int(1), int(-1), int(2), int(-2)]);
        assert_eq!(build_tmap(&z, &elements[..1]).unwrap(), vec![int(0)]);
        let z2 = ZLex::new(2);
        let elements: Vec<_> = enumerate_ball(&z2, 1).into_iter().map(|(_, e)| e).collect();
        assert_eq!(build_tmap(&z2, &elements).unwrap(), vec![int(0), int(1), int(-1), frac(1, 2), frac(-1, 2)]);
    }

    #[test]
    fn z_realization_is_translation_on_ball() {
        let z = ZLex::new(1);
        let result = realize(&z, 2).unwrap();
        for k in -2..=1 {
            assert_eq!(result.rho[0].evaluate(&int(k)), int(k + 1));
        }
        assert!(check_recovery(&result, &z).is_clean());
        assert!(matches!(realize(&z, 0), Err(Error::BallTooSmall { .. })));
    }

    #[test]
    fn z2_recovery() {
        let z2 = ZLex::new(2);
        let report = check_recovery(&realize(&z2, 3).unwrap(), &z2);
        assert!(report.is_clean(), "{:?}", report.violations);
    }

    #[test]
    fn pl_subgroup_rerealization() {
        let shift = PlHomeo::translation(int(1));
        let group = PlSubgroup::new(vec![shift.clone()], StandardOrdering::canonical());
        let result = realize(&group, 3).unwrap();
        for (x, _) in result.rho[0].breaks() {
            assert_eq!(result.rho[0].evaluate(x), shift.evaluate(x));
        }
        let bump = pl_bump(&int(0), &int(1), &frac(1, 4)).unwrap();
        let group = PlSubgroup::new(vec![shift, bump], StandardOrdering::canonical());
        assert!(check_recovery(&realize(&group, 2).unwrap(), &group).is_clean());
    }

    #[test]
    fn shuffled_tmap_is_caught() {
        let z = ZLex::new(1);
        let mut result = realize(&z, 3).unwrap();
        result.t.swap(1, 2);
        let report = check_recovery(&result, &z);
        assert!(report.violations.iter().any(|v| matches!(v, RecoveryViolation::Sign { .. })));
        assert!(report.violations.iter().any(|v| matches!(v, RecoveryViolation::Order { .. })));
    }
}
