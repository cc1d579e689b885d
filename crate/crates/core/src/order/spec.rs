//! JSON description of an ordering.
//!
//! ```json
//! {"kind":"standard","prefix":["0","1/2"],"signs":{"0":"+","1":"-"},"default":"+"}
//! {"kind":"staged","stages":[{"region":[["0","inf"]],"prefix":[],"signs":{},"default":"+"}, ...]}
//! {"kind":"composite","germ":{"variant":"eval_lex","points":["1","0"]},"interior":{...}}
//! ```

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::homeo::PlHomeo;
use crate::interval::IntervalSet;
use crate::order::germ::{CompositeDecision, CompositeOrdering, GermOrdering};
use crate::order::lex::{Decision, Stage, StagedOrdering, StandardOrdering};
use crate::order::stream::{PointStream, SignAssignment};
use crate::rational::{self, Rational};
use crate::sign::Sign;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "SpecWire", into = "SpecWire")]
pub enum OrderingSpec {
    Standard(StandardOrdering),
    Staged(StagedOrdering),
    Composite(CompositeOrdering),
}

/// Result of [`OrderingSpec::decide`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OrderingDecision {
    Lex(Decision),
    Composite(CompositeDecision),
}

impl OrderingDecision {
    pub fn sign(&self) -> Sign {
        match self {
            OrderingDecision::Lex(d) => d.sign,
            OrderingDecision::Composite(d) => d.sign(),
        }
    }
}

impl OrderingSpec {
    /// Sign of `f` against the identity, with the deciding data.
    pub fn decide(&self, f: &PlHomeo) -> Result<OrderingDecision, Error> {
        self.decide_pair(f, &PlHomeo::identity())
    }

    /// Compares `f` with `g`; lexicographic orderings report the point where
    /// `f` and `g` first differ, composite ones decide `g⁻¹f`.
    pub fn decide_pair(&self, f: &PlHomeo, g: &PlHomeo) -> Result<OrderingDecision, Error> {
        Ok(match self {
            OrderingSpec::Standard(o) => OrderingDecision::Lex(o.compare(f, g)),
            OrderingSpec::Staged(o) => OrderingDecision::Lex(o.compare(f, g)),
            OrderingSpec::Composite(o) => OrderingDecision::Composite(o.decide(&g.invert().compose(f))?),
        })
    }

    pub fn sign(&self, f: &PlHomeo) -> Result<Sign, Error> {
        self.decide(f).map(|d| d.sign())
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
enum SpecWire {
    Standard(StandardWire),
    Staged { stages: Vec<StageWire> },
    Composite { germ: GermWire, interior: StandardWire },
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct StandardWire {
    #[serde(default, with = "rational::serde_str::vec")]
    prefix: Vec<Rational>,
    #[serde(default)]
    signs: BTreeMap<String, Sign>,
    #[serde(default = "plus")]
    default: Sign,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct StageWire {
    region: IntervalSet,
    #[serde(default, with = "rational::serde_str::vec")]
    prefix: Vec<Rational>,
    #[serde(default)]
    signs: BTreeMap<String, Sign>,
    #[serde(default = "plus")]
    default: Sign,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct GermWire {
    variant: String,
    #[serde(default, with = "rational::serde_str::vec", skip_serializing_if = "Vec::is_empty")]
    points: Vec<Rational>,
}

fn plus() -> Sign {
    Sign::Positive
}

fn decode_signs(signs: &BTreeMap<String, Sign>, default: Sign) -> Result<SignAssignment, Error> {
    let table = signs
        .iter()
        .map(|(k, s)| {
            k.parse::<usize>().map(|i| (i, *s)).map_err(|_| Error::Parse(format!("invalid sign index {k:?}")))
        })
        .collect::<Result<BTreeMap<_, _>, _>>()?;
    SignAssignment::new(table, default)
}

fn encode_signs(signs: &SignAssignment) -> BTreeMap<String, Sign> {
    signs.table().iter().map(|(k, s)| (k.to_string(), *s)).collect()
}

impl StandardWire {
    fn decode(self) -> Result<StandardOrdering, Error> {
        StandardOrdering::new(self.prefix, decode_signs(&self.signs, self.default)?)
    }

    fn encode(ord: &StandardOrdering) -> StandardWire {
        StandardWire {
            prefix: ord.stream().prefix().to_vec(),
            signs: encode_signs(ord.signs()),
            default: ord.signs().default_sign(),
        }
    }
}

impl TryFrom<SpecWire> for OrderingSpec {
    type Error = Error;

    fn try_from(wire: SpecWire) -> Result<OrderingSpec, Error> {
        Ok(match wire {
            SpecWire::Standard(s) => OrderingSpec::Standard(s.decode()?),
            SpecWire::Staged { stages } => {
                let stages = stages
                    .into_iter()
                    .map(|s| Ok(Stage::new(PointStream::new(s.prefix, s.region)?, decode_signs(&s.signs, s.default)?)))
                    .collect::<Result<Vec<_>, Error>>()?;
                OrderingSpec::Staged(StagedOrdering::new(stages)?)
            }
            SpecWire::Composite { germ, interior } => {
                let germ = match germ.variant.as_str() {
                    "eventually_above" => GermOrdering::EventuallyAbove,
                    "eval_lex" => GermOrdering::eval_lex(germ.points)?,
                    other => return Err(Error::Parse(format!("unknown germ variant {other:?}"))),
                };
                OrderingSpec::Composite(CompositeOrdering::new(germ, interior.decode()?))
            }
        })
    }
}

impl From<OrderingSpec> for SpecWire {
    fn from(spec: OrderingSpec) -> SpecWire {
        match spec {
            OrderingSpec::Standard(o) => SpecWire::Standard(StandardWire::encode(&o)),
            OrderingSpec::Staged(o) => SpecWire::Staged {
                stages: o
                    .stages()
                    .iter()
                    .map(|s| StageWire {
                        region: s.region().clone(),
                        prefix: s.stream.prefix().to_vec(),
                        signs: encode_signs(&s.signs),
                        default: s.signs.default_sign(),
                    })
                    .collect(),
            },
            OrderingSpec::Composite(o) => SpecWire::Composite {
                germ: match &o.germ {
                    GermOrdering::EventuallyAbove => {
                        GermWire { variant: "eventually_above".into(), points: Vec::new() }
                    }
                    GermOrdering::EvalLex(points) => GermWire { variant: "eval_lex".into(), points: points.clone() },
                },
                interior: StandardWire::encode(&o.interior),
            },
        }
    }
}
