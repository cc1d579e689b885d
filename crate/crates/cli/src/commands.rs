use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use serde::de::DeserializeOwned;
use serde_json::{json, Value};

use homeo_order::limits::{limit_prefix, stabilization_probe, LimitEntry, OrderingSequence};
use homeo_order::order::{
    CompositeDecision, Decision, OrderingDecision, OrderingSpec, StagedOrdering, StandardOrdering,
};
use homeo_order::realization::{
    check_recovery, realize as realize_ball, GroupOracle, PlSubgroup, RealizationResult, ZLex,
};
use homeo_order::witness::{approximate_typical, construct_anb_with, AnbOptions};
use homeo_order::{PlHomeo, Sign};

use crate::{CliError, Group, Report};

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    let raw = fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&raw).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn load_ordering(path: Option<&Path>) -> Result<OrderingSpec, CliError> {
    match path {
        Some(p) => read_json(p),
        None => Ok(OrderingSpec::Standard(StandardOrdering::canonical())),
    }
}

fn to_json<T: serde::Serialize>(value: &T) -> Value {
    serde_json::to_value(value).expect("library types serialize")
}

/// Stream indices can exceed `u64`; those are written as strings.
fn index_json<T: ToString>(index: Option<&T>) -> Value {
    match index {
        None => Value::Null,
        Some(i) => {
            let s = i.to_string();
            s.parse::<u64>().map(Value::from).unwrap_or(Value::String(s))
        }
    }
}

fn lex_json(d: &Decision) -> Value {
    match &d.witness {
        None => json!({ "sign": d.sign, "witness_index": null }),
        Some(w) => json!({
            "sign": d.sign,
            "witness_index": index_json(w.stream_index.as_ref()),
            "stage": w.stage,
            "point": w.point.to_string(),
        }),
    }
}

fn decision_json(d: &OrderingDecision) -> Value {
    match d {
        OrderingDecision::Lex(d) => lex_json(d),
        OrderingDecision::Composite(CompositeDecision::Interior(d)) => {
            let mut v = lex_json(d);
            v["decided_by"] = json!("interior");
            v
        }
        OrderingDecision::Composite(CompositeDecision::Germ { germ, sign }) => {
            json!({ "sign": sign, "witness_index": null, "decided_by": "germ", "germ": germ })
        }
    }
}

fn decision_text(d: &OrderingDecision) -> String {
    let v = decision_json(d);
    let mut out = format!("sign {}", d.sign());
    if let Some(point) = v.get("point").and_then(Value::as_str) {
        let _ = write!(out, ", decided at {point} (stage {}, index {})", v["stage"], v["witness_index"]);
    } else if let Some(germ) = v.get("germ") {
        let _ = write!(
            out,
            ", decided by the germ x ↦ {}·x + {}",
            germ["a"].as_str().unwrap_or("?"),
            germ["b"].as_str().unwrap_or("?")
        );
    }
    out.push('\n');
    out
}

pub fn sign(ordering: Option<&Path>, function: &Path) -> Result<Report, CliError> {
    let spec = load_ordering(ordering)?;
    let f: PlHomeo = read_json(function)?;
    let d = spec.decide(&f)?;
    Ok(Report { json: decision_json(&d), text: decision_text(&d) })
}

pub fn compare(ordering: Option<&Path>, f: &Path, g: &Path) -> Result<Report, CliError> {
    let spec = load_ordering(ordering)?;
    let (f, g): (PlHomeo, PlHomeo) = (read_json(f)?, read_json(g)?);
    let d = spec.decide_pair(&f, &g)?;
    let relation = match d.sign() {
        Sign::Positive => "f ≻ g",
        Sign::Negative => "f ≺ g",
        Sign::Zero => "f = g",
    };
    Ok(Report { json: decision_json(&d), text: format!("{relation}: {}", decision_text(&d)) })
}

pub fn absets(function: &Path) -> Result<Report, CliError> {
    let f: PlHomeo = read_json(function)?;
    let (above, below, germ) = (f.above_set(), f.below_set(), f.germ_at_infinity());
    let text = format!("A = {above}\nB = {below}\ngerm at +∞: x ↦ {}·x + {}\n", germ.a, germ.b);
    let json = json!({ "above": above, "below": below, "support": f.support(), "germ": germ });
    Ok(Report { json, text })
}

pub fn anb(inputs: &Path, max_rounds: usize) -> Result<Report, CliError> {
    let fs: Vec<PlHomeo> = read_json(inputs)?;
    let result = construct_anb_with(&fs, &AnbOptions { max_rounds })?;
    let failures = result.certificate.failures();
    let mut json = to_json(&result);
    json["certificate_holds"] = json!(failures.is_empty());
    let c = &result.certificate;
    let mut text = format!("region A = {}\n", c.region);
    let _ = writeln!(text, "g: A_g = {}, B_g = {}", c.g.above, c.g.below);
    let _ = writeln!(text, "h: A_h = {}, B_h = {}", c.h.above, c.h.below);
    let _ = writeln!(text, "refinement rounds: {}", result.rounds);
    for f in &failures {
        let _ = writeln!(text, "FAILED: {f}");
    }
    if !failures.is_empty() {
        return Err(CliError::Failed(failures.join("; ")));
    }
    Ok(Report { json, text })
}

pub fn approximate(inputs: &Path, ordering: Option<&Path>) -> Result<Report, CliError> {
    let mut fs: Vec<PlHomeo> = read_json(inputs)?;
    let mut inverted = Vec::new();
    if let Some(path) = ordering {
        let spec: OrderingSpec = read_json(path)?;
        for (i, f) in fs.iter_mut().enumerate() {
            if spec.sign(f)? == Sign::Negative {
                *f = f.invert();
                inverted.push(i);
            }
        }
    }
    let approx = approximate_typical(&fs)?;
    let mut text = String::new();
    for (k, s) in approx.stages.iter().enumerate() {
        let _ = writeln!(text, "point {k}: {} with sign {}, decides inputs {:?}", s.point, s.sign, s.decided);
    }
    let json = json!({
        "ordering": OrderingSpec::Standard(approx.ordering),
        "stages": approx.stages,
        "inverted": inverted,
    });
    Ok(Report { json, text })
}

fn realization_report<G: GroupOracle>(oracle: &G, radius: usize) -> Result<Report, CliError> {
    let result: RealizationResult = realize_ball(oracle, radius)?;
    let recovery = check_recovery(&result, oracle);
    let mut text = String::new();
    for (word, t) in result.words.iter().zip(&result.t) {
        let _ = writeln!(text, "t({word}) = {t}");
    }
    for (name, rho) in result.generator_names.iter().zip(&result.rho) {
        let _ = writeln!(text, "rho({name}) = {rho}");
    }
    let _ = writeln!(
        text,
        "recovery: {} pairs, {} actions, {} violations",
        recovery.pairs_checked,
        recovery.actions_checked,
        recovery.violations.len()
    );
    let mut json = to_json(&result);
    json["recovery"] = to_json(&recovery);
    if !recovery.is_clean() {
        return Err(CliError::Failed(format!("{} recovery violations", recovery.violations.len())));
    }
    Ok(Report { json, text })
}

pub fn realize(
    group: Group,
    radius: usize,
    generators: Option<&Path>,
    ordering: Option<&Path>,
) -> Result<Report, CliError> {
    match group {
        Group::Z => realization_report(&ZLex::new(1), radius),
        Group::Z2lex => realization_report(&ZLex::new(2), radius),
        Group::Pl => {
            let path = generators.ok_or_else(|| CliError::Input("--generators is required for --group pl".into()))?;
            let gens: Vec<PlHomeo> = read_json(path)?;
            let ord = match load_ordering(ordering)? {
                OrderingSpec::Standard(o) => o,
                _ => return Err(CliError::Input("realization needs a standard ordering".into())),
            };
            realization_report(&PlSubgroup::new(gens, ord), radius)
        }
    }
}

fn as_staged(spec: OrderingSpec) -> Result<StagedOrdering, CliError> {
    match spec {
        OrderingSpec::Standard(o) => Ok(StagedOrdering::from_standard(&o)),
        OrderingSpec::Staged(o) => Ok(o),
        OrderingSpec::Composite(_) => {
            Err(CliError::Input("approximating sequences need a lexicographic target".into()))
        }
    }
}

/// `{"kind":"approximating","target":<spec>}` or
/// `{"kind":"terms","terms":[<standard spec>, ...]}` (the last term repeats).
fn load_sequence(path: &Path, budget: usize) -> Result<OrderingSequence, CliError> {
    let raw: Value = read_json(path)?;
    let bad = |m: &str| CliError::Input(format!("{}: {m}", path.display()));
    match raw.get("kind").and_then(Value::as_str) {
        Some("approximating") => {
            let target = raw.get("target").ok_or_else(|| bad("missing target"))?;
            let spec: OrderingSpec = serde_json::from_value(target.clone()).map_err(|e| bad(&e.to_string()))?;
            Ok(OrderingSequence::approximating(as_staged(spec)?, budget))
        }
        Some("terms") => {
            let terms = raw.get("terms").and_then(Value::as_array).ok_or_else(|| bad("missing terms"))?;
            let mut out = Vec::with_capacity(terms.len());
            for t in terms {
                match serde_json::from_value(t.clone()).map_err(|e| bad(&e.to_string()))? {
                    OrderingSpec::Standard(o) => out.push(o),
                    _ => return Err(bad("terms must be standard orderings")),
                }
            }
            let last = out.last().cloned().ok_or_else(|| bad("no terms"))?;
            while out.len() < budget {
                out.push(last.clone());
            }
            out.truncate(budget);
            Ok(OrderingSequence::from_terms(out))
        }
        _ => Err(bad("kind must be \"approximating\" or \"terms\"")),
    }
}

pub fn limits_probe(sequence: &Path, tests: &Path, budget: usize, prefix: usize) -> Result<Report, CliError> {
    if budget == 0 {
        return Err(CliError::Input("--budget must be at least 1".into()));
    }
    let seq = load_sequence(sequence, budget)?;
    let tests: Vec<PlHomeo> = read_json(tests)?;
    let traces = stabilization_probe(&seq, &tests);
    let limit = limit_prefix(&seq, prefix);
    let mut text = String::new();
    for (i, t) in traces.iter().enumerate() {
        let signs: String = t.signs.iter().map(|s| s.to_string()).collect();
        let verdict = match (t.limit, t.stable_from) {
            (Some(s), Some(from)) => format!("stable at {s} from index {from}"),
            _ => "not stabilized within budget".to_string(),
        };
        let _ = writeln!(text, "test {i}: {signs}  {verdict}");
    }
    for (i, e) in limit.iter().enumerate() {
        let _ = match e {
            LimitEntry::Stable { point, sign, from } => {
                writeln!(text, "position {i}: {point} ({sign}) from index {from}")
            }
            LimitEntry::NotStabilized => writeln!(text, "position {i}: not stabilized"),
        };
    }
    let json = json!({ "budget": budget, "traces": traces, "limit_prefix": limit });
    Ok(Report { json, text })
}
