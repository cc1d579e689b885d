//! Three worked examples, each showing one class of orderings is strictly
//! smaller than the next.

use std::fmt::Write as _;

use serde_json::{json, Value};

use homeo_order::order::{
    typicality_probe, CompositeOrdering, GermOrdering, PointStream, SignAssignment, Stage, StagedOrdering,
    StandardOrdering,
};
use homeo_order::rational::{frac, int};
use homeo_order::sampling::{rng, small_rational};
use homeo_order::witness::{same_germ_pair, separating_pair};
use homeo_order::{pl_bump, IntervalSet, PlHomeo, Rational, Sign};

use crate::{CliError, Report};

struct Section {
    name: &'static str,
    ok: bool,
    json: Value,
    summary: String,
}

/// A staged ordering with a relevant point outside the closure of the first
/// stage's region, so no single dense stream reproduces it.
fn staged_not_standard() -> Result<Section, CliError> {
    let ord = StagedOrdering::positives_then_negatives();
    let stage_one = IntervalSet::above(int(0));
    let prefix: Vec<Value> = ord
        .relevant_prefix(6)
        .iter()
        .map(|p| {
            json!({
                "point": p.point.to_string(),
                "stage": p.stage,
                "stream_index": p.stream_index,
                "sign": p.sign,
                "relevant": p.relevant,
                "in_closure_of_stage_one": stage_one.closure_contains(&p.point),
            })
        })
        .collect();
    let outside = ord
        .relevant_prefix(6)
        .into_iter()
        .find(|p| p.stage == 1 && p.relevant && !stage_one.closure_contains(&p.point));
    let test = pl_bump(&int(-2), &int(-1), &frac(-1, 4))?;
    let decision = ord.compare(&test, &PlHomeo::identity());
    let stage = decision.witness.as_ref().map(|w| w.stage);
    let ok = outside.is_some() && stage == Some(1);
    let summary = match (&outside, stage) {
        (Some(p), Some(s)) => {
            format!("relevant point {} lies outside [0, ∞); a bump on (-2, -1) is decided at stage {}", p.point, s + 1)
        }
        _ => "no relevant point outside the first stage".into(),
    };
    Ok(Section {
        name: "staged_not_standard",
        ok,
        json: json!({
            "relevant_prefix": prefix,
            "outside_point": outside.map(|p| p.point.to_string()),
            "test": test,
            "test_sign": decision.sign,
            "decided_at_stage": stage,
        }),
        summary,
    })
}

/// Pairs with the same germ and the same above/below sets near a point are
/// both positive under a germ-first ordering, while staged orderings that
/// start at that point (five per sample) separate them.
fn typical_not_staged(seed: u64, samples: usize) -> Result<Section, CliError> {
    let ord = CompositeOrdering::new(GermOrdering::EventuallyAbove, StandardOrdering::canonical());
    let mut r = rng(seed);
    let mut rows = Vec::with_capacity(samples);
    let mut ok = true;
    for _ in 0..samples {
        let x: Rational = small_rational(&mut r, 50, 7);
        let (f_up, f_down) = same_germ_pair(&x);
        let signs = (ord.sign(&f_up)?, ord.sign(&f_down)?);
        let regions = [
            IntervalSet::full(),
            IntervalSet::above(&x - int(1)),
            IntervalSet::below(&x + int(3)),
            IntervalSet::interval(&x - int(1), &x + int(1)),
            IntervalSet::above(&x - frac(1, 2)),
        ];
        let mut staged_signs = Vec::with_capacity(regions.len());
        for (k, region) in regions.into_iter().enumerate() {
            let omega = if k % 2 == 0 { Sign::Positive } else { Sign::Negative };
            let first = Stage::new(PointStream::new(vec![x.clone()], region)?, SignAssignment::constant(omega));
            let rest = Stage::new(PointStream::canonical(), SignAssignment::constant(Sign::Positive));
            let staged = StagedOrdering::new(vec![first, rest])?;
            staged_signs.push([staged.sign(&f_up), staged.sign(&f_down)]);
        }
        let row_ok = signs == (Sign::Positive, Sign::Positive) && staged_signs.iter().all(|[a, b]| *a == -*b);
        ok &= row_ok;
        rows.push(json!({
            "x": x.to_string(),
            "germ_first_signs": [signs.0, signs.1],
            "staged_signs": staged_signs,
            "ok": row_ok,
        }));
    }
    let summary =
        format!("{samples} germ pairs: both positive under the germ-first ordering, split by staged orderings");
    Ok(Section { name: "typical_not_staged", ok, json: json!({ "seed": seed, "pairs": rows }), summary })
}

/// Two maps with `A = ℝ` and `B = ∅` that a germ ordering evaluated at
/// chosen points signs differently, so the ordering is not typical.
fn not_typical() -> Result<Section, CliError> {
    let (f, g) = separating_pair();
    let ord = CompositeOrdering::new(GermOrdering::eval_lex(vec![int(1), int(0)])?, StandardOrdering::canonical());
    let signs = (ord.sign(&f)?, ord.sign(&g)?);
    let sets_match =
        f.above_set().is_full() && g.above_set().is_full() && f.below_set().is_empty() && g.below_set().is_empty();
    let report = typicality_probe(|h: &PlHomeo| ord.sign(h), &[(f.clone(), g.clone())])?;
    let mismatches: Vec<Value> =
        report.mismatches.iter().map(|m| json!({ "pair": m.index, "first": m.first, "second": m.second })).collect();
    let ok = signs == (Sign::Positive, Sign::Negative) && sets_match && mismatches.len() == 1;
    Ok(Section {
        name: "not_typical",
        ok,
        json: json!({
            "f": f,
            "g": g,
            "signs": [signs.0, signs.1],
            "above_sets_full": sets_match,
            "mismatches": mismatches,
        }),
        summary: format!("f is {}, g is {} although both have A = ℝ and B = ∅", signs.0, signs.1),
    })
}

pub fn hierarchy(seed: u64, samples: usize) -> Result<Report, CliError> {
    let sections = [staged_not_standard()?, typical_not_staged(seed, samples)?, not_typical()?];
    let mut text = String::new();
    let mut json = json!({});
    for s in &sections {
        let _ = writeln!(text, "[{}] {}: {}", if s.ok { "ok" } else { "FAILED" }, s.name, s.summary);
        let mut body = s.json.clone();
        body["ok"] = json!(s.ok);
        json[s.name] = body;
    }
    let failed: Vec<&str> = sections.iter().filter(|s| !s.ok).map(|s| s.name).collect();
    if !failed.is_empty() {
        return Err(CliError::Failed(format!("sections failed: {}", failed.join(", "))));
    }
    Ok(Report { json, text })
}
