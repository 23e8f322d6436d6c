//! The four commands. Each returns a [`Outcome`]: one JSON record plus the
//! process exit code. The human rendering is produced from the same record.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};
use wreathcc_core::oracle::enumerate_class;
use wreathcc_core::witness::{
    verify_finite_certificate, verify_infinite_certificate, witness, FiniteClassCertificate, InfiniteFamilyCertificate,
};
use wreathcc_core::{
    decide_icc, decide_icc_free, Certificate, IccVerdict, Tri, WreathClassStatus, WreathElement, WreathGroup,
};

use crate::error::CliError;
use crate::instance::{Budgets, InstanceSpec};

pub const EXIT_OK: u8 = 0;
pub const EXIT_FAIL: u8 = 1;
pub const EXIT_UNKNOWN: u8 = 2;
pub const EXIT_USAGE: u8 = 3;

/// Members listed in a record; certificates may be much larger.
pub const MEMBER_LIST_LIMIT: usize = 256;
/// Members of an icc family shown by `witness`.
pub const DEFAULT_FAMILY_MEMBERS: usize = 10;
/// Prefix length checked for icc families by `verify`.
pub const FAMILY_PREFIX: usize = 100;
/// Conjugator radius for sampled invariance checks.
pub const SAMPLE_RADIUS: usize = 3;
/// Word radius used when drawing random elements to certify.
pub const ELEMENT_RADIUS: usize = 3;
/// Sampled elements also explored by the oracle in `verify`.
pub const ORACLE_SAMPLES: usize = 20;

#[derive(Debug, Clone, Serialize)]
pub struct ErrorRecord {
    pub code: String,
    pub message: String,
}

impl From<&CliError> for ErrorRecord {
    fn from(e: &CliError) -> Self {
        ErrorRecord {
            code: e.code().to_string(),
            message: e.to_string(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Record {
    pub command: String,
    pub instance_hash: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub result: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<ErrorRecord>,
    pub budgets: Option<Budgets>,
    pub seed: Option<u64>,
}

#[derive(Debug, Clone)]
pub struct Outcome {
    pub record: Record,
    pub exit_code: u8,
}

impl Outcome {
    pub fn error(command: &str, instance_hash: Option<String>, e: &CliError) -> Outcome {
        Outcome {
            record: Record {
                command: command.to_string(),
                instance_hash,
                result: None,
                error: Some(e.into()),
                budgets: None,
                seed: None,
            },
            exit_code: if e.is_input_error() { EXIT_USAGE } else { EXIT_FAIL },
        }
    }

    fn ok(
        command: &str,
        spec: &InstanceSpec,
        result: Value,
        budgets: Option<Budgets>,
        seed: Option<u64>,
        exit_code: u8,
    ) -> Outcome {
        Outcome {
            record: Record {
                command: command.to_string(),
                instance_hash: Some(spec.hash.clone()),
                result: Some(result),
                error: None,
                budgets,
                seed,
            },
            exit_code,
        }
    }

    pub fn json(&self) -> String {
        serde_json::to_string(&self.record).expect("records serialize")
    }

    pub fn human(&self) -> String {
        let value = serde_json::to_value(&self.record).expect("records serialize");
        let mut out = String::new();
        render(&value, 0, &mut out);
        out
    }
}

fn render(v: &Value, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                match x {
                    Value::Null => {}
                    Value::Object(_) => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        render(x, indent + 1, out);
                    }
                    Value::Array(items) if items.iter().any(|i| i.is_object()) => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        render(x, indent + 1, out);
                    }
                    _ => out.push_str(&format!("{pad}{k}: {}\n", scalar(x))),
                }
            }
        }
        Value::Array(items) => {
            for item in items {
                if item.is_object() {
                    let mut inner = String::new();
                    render(item, indent + 1, &mut inner);
                    let inner = inner.trim_start();
                    out.push_str(&format!("{pad}- {inner}"));
                } else {
                    out.push_str(&format!("{pad}- {}\n", scalar(item)));
                }
            }
        }
        _ => out.push_str(&format!("{pad}{}\n", scalar(v))),
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Array(items) => items.iter().map(scalar).collect::<Vec<_>>().join(", "),
        other => other.to_string(),
    }
}

fn core_err(context: &str) -> impl Fn(wreathcc_core::Error) -> CliError + '_ {
    move |e| CliError::Core {
        context: context.to_string(),
        source: e,
    }
}

pub fn parse_element(g: &WreathGroup, literal: &str) -> Result<WreathElement, CliError> {
    g.parse_element(literal).map_err(|e| match e {
        wreathcc_core::Error::Parse { reason, .. } => CliError::MalformedLiteral {
            field: "element".into(),
            literal: literal.into(),
            reason,
        },
        other => CliError::MalformedLiteral {
            field: "element".into(),
            literal: literal.into(),
            reason: other.to_string(),
        },
    })
}

fn verdict_json(v: &IccVerdict) -> Value {
    json!({
        "answer": v.answer,
        "cond_i": v.cond_i,
        "cond_ii": v.cond_ii,
        "cond_iii": v.cond_iii,
        "reason": v.reason,
        "corollary_used": v.corollary_used,
        "q0": v.q0.as_ref().map(|q| q.to_string()),
    })
}

fn verdict_exit(v: &IccVerdict) -> u8 {
    if v.answer == Tri::Unknown {
        EXIT_UNKNOWN
    } else {
        EXIT_OK
    }
}

pub fn cmd_decide(spec: &InstanceSpec) -> Outcome {
    let g = &spec.group;
    let verdict = match decide_icc(g) {
        Ok(v) => v,
        Err(e) => return Outcome::error("decide", Some(spec.hash.clone()), &CliError::core("decide", e)),
    };
    let free = g.omega().is_free_action();
    let mut result = json!({
        "instance": g.to_string(),
        "verdict": verdict_json(&verdict),
        "free_action": free,
    });
    if free == Tri::Yes {
        if let Ok(c) = decide_icc_free(g) {
            result["corollary"] = verdict_json(&c);
        }
    }
    Outcome::ok("decide", spec, result, None, None, verdict_exit(&verdict))
}

fn finite_json(c: &FiniteClassCertificate) -> Value {
    json!({
        "type": "finite",
        "provenance": c.provenance,
        "base": c.base.to_string(),
        "size": c.len(),
        "predicted_size": c.predicted_size,
        "formula": c.formula,
        "members": c.members.iter().take(MEMBER_LIST_LIMIT).map(|m| m.to_string()).collect::<Vec<_>>(),
        "members_truncated": c.len() > MEMBER_LIST_LIMIT,
    })
}

fn family_json(g: &WreathGroup, c: &InfiniteFamilyCertificate, count: usize) -> Result<Value, CliError> {
    let members = c.members(g, count).map_err(core_err("family"))?;
    Ok(json!({
        "type": "infinite",
        "kind": c.kind,
        "base": c.base.to_string(),
        "dedup": c.dedup(),
        "seed_conjugator": c.seed().map(|s| s.to_string()),
        "members": members.iter().map(|m| json!({
            "index": m.index,
            "conjugator": m.conjugator.to_string(),
            "conjugate": m.conjugate.to_string(),
        })).collect::<Vec<_>>(),
    }))
}

fn certificate_json(g: &WreathGroup, cert: &Certificate, count: usize) -> Result<Value, CliError> {
    match cert {
        Certificate::Finite(c) => Ok(finite_json(c)),
        Certificate::Infinite(c) => family_json(g, c, count),
    }
}

/// `element` is required for icc verdicts unless certificates for every
/// generator of G are wanted, which is what `None` produces.
pub fn cmd_witness(spec: &InstanceSpec, element: Option<&str>, members: usize) -> Outcome {
    let g = &spec.group;
    let hash = Some(spec.hash.clone());
    let x = match element.map(|s| parse_element(g, s)).transpose() {
        Ok(x) => x,
        Err(e) => return Outcome::error("witness", hash, &e),
    };
    let run = || -> Result<(Value, u8), CliError> {
        let verdict = decide_icc(g).map_err(core_err("decide"))?;
        let mut result = json!({ "verdict": verdict_json(&verdict) });
        match verdict.answer {
            Tri::Unknown => return Ok((result, EXIT_UNKNOWN)),
            Tri::No => {
                let cert = witness(g, &verdict, x.as_ref()).map_err(core_err("witness"))?;
                result["certificate"] = certificate_json(g, &cert, members)?;
            }
            Tri::Yes => {
                let targets: Vec<WreathElement> = match &x {
                    Some(x) => vec![x.clone()],
                    None => g.generators().iter().filter(|s| !g.is_identity(s)).cloned().collect(),
                };
                let mut certs = Vec::new();
                for t in &targets {
                    let cert = witness(g, &verdict, Some(t)).map_err(core_err("witness"))?;
                    certs.push(certificate_json(g, &cert, members)?);
                }
                if x.is_some() {
                    result["certificate"] = certs.pop().expect("one target");
                } else {
                    result["certificates"] = Value::Array(certs);
                }
            }
        }
        Ok((result, EXIT_OK))
    };
    match run() {
        Ok((result, code)) => Outcome::ok("witness", spec, result, None, None, code),
        Err(e) => Outcome::error("witness", hash, &e),
    }
}

pub fn cmd_class(spec: &InstanceSpec, element: &str, radius: usize, max_size: usize) -> Outcome {
    let g = &spec.group;
    let hash = Some(spec.hash.clone());
    let x = match parse_element(g, element) {
        Ok(x) => x,
        Err(e) => return Outcome::error("class", hash, &e),
    };
    let report = match enumerate_class(g, &x, radius, max_size) {
        Ok(r) => r,
        Err(e) => return Outcome::error("class", hash, &CliError::core("class", e)),
    };
    let result = json!({
        "element": x.to_string(),
        "status": report.status,
        "count": report.count(),
        "rounds_used": report.rounds_used,
        "window": report.window.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
        "elements": report.elements.iter().take(MEMBER_LIST_LIMIT).map(|e| e.to_string()).collect::<Vec<_>>(),
        "elements_truncated": report.count() > MEMBER_LIST_LIMIT,
    });
    let budgets = Budgets {
        radius,
        max_size,
        ..spec.budgets
    };
    Outcome::ok("class", spec, result, Some(budgets), None, EXIT_OK)
}

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    pub status: &'static str,
    pub detail: String,
}

impl Check {
    fn new(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Check {
        Check {
            name: name.into(),
            status: if passed { "PASS" } else { "FAIL" },
            detail: detail.into(),
        }
    }

    fn from_result(name: impl Into<String>, r: Result<(bool, String), wreathcc_core::Error>) -> Check {
        match r {
            Ok((passed, detail)) => Check::new(name, passed, detail),
            Err(e) => Check::new(name, false, format!("{}: {e}", e.code())),
        }
    }

    pub fn passed(&self) -> bool {
        self.status == "PASS"
    }
}

/// Draws `count` nontrivial elements of G from a seeded stream.
pub fn sample_elements(g: &WreathGroup, seed: u64, count: usize) -> Vec<WreathElement> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let x = g.random_element(&mut rng, ELEMENT_RADIUS, ELEMENT_RADIUS);
        if !g.is_identity(&x) {
            out.push(x);
        }
    }
    out
}

/// Full cross-check: decide, certify, verify the certificates, and compare
/// with the brute-force class explorer.
///
/// For non-icc verdicts `samples` is the number of sampled conjugators; for
/// icc verdicts it is the number of sampled elements, each certified with a
/// 100-member prefix; the first [`ORACLE_SAMPLES`] are also explored by the
/// oracle.
pub fn cmd_verify(spec: &InstanceSpec, seed: u64, samples: usize) -> Outcome {
    let g = &spec.group;
    let budgets = Budgets {
        seed,
        samples,
        ..spec.budgets
    };
    let verdict = match decide_icc(g) {
        Ok(v) => v,
        Err(e) => return Outcome::error("verify", Some(spec.hash.clone()), &CliError::core("decide", e)),
    };
    let mut checks = vec![Check::new(
        "decide",
        verdict.answer != Tri::Unknown,
        format!("answer {}: {}", verdict.answer, verdict.reason),
    )];
    if g.omega().is_free_action() == Tri::Yes {
        checks.push(Check::from_result(
            "free-action corollary",
            decide_icc_free(g).map(|c| (c.answer == verdict.answer, format!("corollary answer {}", c.answer))),
        ));
    }
    match verdict.answer {
        Tri::Unknown => {}
        Tri::No => verify_non_icc(g, &verdict, &budgets, &mut checks),
        Tri::Yes => verify_icc(g, &verdict, &budgets, &mut checks),
    }
    let all_pass = checks.iter().all(Check::passed);
    let exit_code = if verdict.answer == Tri::Unknown {
        EXIT_UNKNOWN
    } else if all_pass {
        EXIT_OK
    } else {
        EXIT_FAIL
    };
    let result = json!({
        "status": if all_pass { "PASS" } else { "FAIL" },
        "verdict": verdict_json(&verdict),
        "checks": checks,
    });
    Outcome::ok("verify", spec, result, Some(budgets), Some(seed), exit_code)
}

fn verify_non_icc(g: &WreathGroup, verdict: &IccVerdict, b: &Budgets, checks: &mut Vec<Check>) {
    let cert = match witness(g, verdict, None) {
        Ok(Certificate::Finite(c)) => c,
        Ok(Certificate::Infinite(_)) => {
            checks.push(Check::new(
                "certificate",
                false,
                "non-icc verdict produced an infinite family",
            ));
            return;
        }
        Err(e) => {
            checks.push(Check::new("certificate", false, format!("{}: {e}", e.code())));
            return;
        }
    };
    checks.push(Check::new(
        "certificate size",
        cert.len() == cert.predicted_size,
        format!("size {}, predicted {}", cert.len(), cert.formula),
    ));
    checks.push(Check::from_result(
        "certificate invariance",
        verify_finite_certificate(g, &cert, SAMPLE_RADIUS, b.samples, b.seed).map(|v| {
            let detail = match &v.failure {
                Some(f) => f.clone(),
                None => format!("{} conjugators at radius {SAMPLE_RADIUS}", v.samples_checked),
            };
            (v.passed, detail)
        }),
    ));
    checks.push(Check::from_result(
        "oracle",
        enumerate_class(g, &cert.base, b.radius, b.max_size).map(|r| {
            let closed = r.status == WreathClassStatus::ExactFiniteUnderGens;
            let inside = r.elements.iter().all(|e| cert.members.contains(e));
            (
                closed && inside,
                format!(
                    "class of {} closed: {closed}, {} elements, inside certificate: {inside}",
                    cert.base,
                    r.count()
                ),
            )
        }),
    ));
}

fn verify_icc(g: &WreathGroup, verdict: &IccVerdict, b: &Budgets, checks: &mut Vec<Check>) {
    let elements = sample_elements(g, b.seed, b.samples);
    let mut families = 0;
    let mut family_failure = None;
    let mut oracle_min = usize::MAX;
    let mut oracle_failure = None;
    for (i, x) in elements.iter().enumerate() {
        if family_failure.is_none() {
            let r = witness(g, verdict, Some(x)).and_then(|c| match c {
                Certificate::Infinite(c) => verify_infinite_certificate(g, &c, FAMILY_PREFIX).map(|v| (c.kind, v)),
                Certificate::Finite(_) => Err(wreathcc_core::Error::Precondition(
                    "icc verdict produced a finite set".into(),
                )),
            });
            match r {
                Ok((_, v)) if v.passed => families += 1,
                Ok((kind, v)) => family_failure = Some(format!("{x} ({kind:?}): {}", v.failure.unwrap_or_default())),
                Err(e) => family_failure = Some(format!("{x}: {}: {e}", e.code())),
            }
        }
        if oracle_failure.is_none() && i < ORACLE_SAMPLES {
            match enumerate_class(g, x, b.radius, b.max_size) {
                Ok(r) if r.status == WreathClassStatus::AtLeast => oracle_min = oracle_min.min(r.count()),
                Ok(r) => {
                    oracle_failure = Some(format!(
                        "class of {x} closed with {} elements in an icc group",
                        r.count()
                    ))
                }
                Err(e) => oracle_failure = Some(format!("{x}: {}: {e}", e.code())),
            }
        }
    }
    checks.push(Check::new(
        "families",
        family_failure.is_none(),
        family_failure.unwrap_or_else(|| {
            format!("{families} sampled elements, first {FAMILY_PREFIX} members distinct and re-verified")
        }),
    ));
    let oracle_detail = if elements.is_empty() {
        "no elements sampled".to_string()
    } else {
        format!(
            "{} classes still growing, smallest lower bound {oracle_min}",
            elements.len().min(ORACLE_SAMPLES)
        )
    };
    checks.push(Check::new(
        "oracle",
        oracle_failure.is_none(),
        oracle_failure.unwrap_or(oracle_detail),
    ));
}
