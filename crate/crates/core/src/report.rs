//! Per-instance verification reports for the command line and the C ABI.
//!
//! JSON output is deterministic: struct fields serialize in declaration
//! order and free-form `data` objects use sorted keys. Timing lives only in
//! the top-level `elapsed_ms` field.

use std::fmt::Write as _;
use std::time::Instant;

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::cohomology::pushforward_vanishing;
use crate::crepancy::{canonical_of_total_space, explore_discrepancy};
use crate::error::Result;
use crate::group_rep::{covariant_hilbert, is_gorenstein, molien_series, CyclicAction, GorensteinCertificate, HilbertSeries};
use crate::quotient::ScalarQuotient;
use crate::sod::kuznetsov_sod_check;
use crate::tilting::tilting_check;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");
pub const INSTANCE_SCHEMA: &str = "crepant-kit/instance-report/v1";
pub const MOLIEN_SCHEMA: &str = "crepant-kit/molien-report/v1";
pub const THREADS_ENV: &str = "CREPANT_KIT_THREADS";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

impl Status {
    fn label(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skip => "SKIP",
        }
    }

    fn from_bool(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Pass,
    Fail,
    HypothesisViolated,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::HypothesisViolated => "hypothesis-violated",
        }
    }

    /// 0 on pass, 1 otherwise.
    pub fn exit_code(self) -> i32 {
        match self {
            Verdict::Pass => 0,
            Verdict::Fail | Verdict::HypothesisViolated => 1,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
    pub data: Value,
    #[serde(skip)]
    pub summary: String,
}

impl Check {
    fn new(name: &'static str, status: Status, summary: impl Into<String>, data: Value) -> Self {
        Self {
            name,
            status,
            reason: None,
            witness: None,
            data,
            summary: summary.into(),
        }
    }

    fn skipped(name: &'static str, reason: impl Into<String>, data: Value) -> Self {
        let reason = reason.into();
        Self {
            name,
            status: Status::Skip,
            summary: reason.clone(),
            reason: Some(reason),
            witness: None,
            data,
        }
    }

    fn with_witness(mut self, witness: Option<Value>) -> Self {
        self.witness = witness;
        self
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct InstanceInput {
    pub n: u32,
    pub d: u32,
    pub weights: Vec<u32>,
    pub max_degree: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct InstanceReport {
    pub schema: &'static str,
    pub version: &'static str,
    pub input: InstanceInput,
    pub checks: Vec<Check>,
    pub verdict: Verdict,
    pub elapsed_ms: u64,
}

fn big(x: &BigUint) -> Value {
    match x.to_u64() {
        Some(v) => json!(v),
        None => json!(x.to_string()),
    }
}

fn series_json(s: &HilbertSeries) -> Value {
    Value::Array(s.coefficients().iter().map(big).collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum CheckKind {
    Gorenstein,
    Canonical,
    Discrepancy,
    Descent,
    Vanishing,
    Tilting,
    Sod,
    CrossConsistency,
}

const ALL_CHECKS: [CheckKind; 8] = [
    CheckKind::Gorenstein,
    CheckKind::Canonical,
    CheckKind::Discrepancy,
    CheckKind::Descent,
    CheckKind::Vanishing,
    CheckKind::Tilting,
    CheckKind::Sod,
    CheckKind::CrossConsistency,
];

const NEEDS_DIVISIBILITY: &str = "requires d | n";

fn run_check(kind: CheckKind, q: ScalarQuotient, max_degree: usize) -> Result<Check> {
    let (n, d) = (q.n(), q.d());
    let gorenstein = q.is_gorenstein();
    Ok(match kind {
        CheckKind::Gorenstein => {
            let cert = is_gorenstein(&q.action());
            let summary = if cert.gorenstein {
                format!("d={d} divides n={n}")
            } else {
                format!("d={d} does not divide n={n}")
            };
            Check::new("gorenstein", Status::from_bool(cert.gorenstein), summary, certificate_json(&cert))
        }
        CheckKind::Canonical => match canonical_of_total_space(q) {
            Ok(twist) => Check::new(
                "canonical_bundle",
                Status::Pass,
                format!("omega_X~ = t*O({twist}); trivial iff d = n"),
                json!({ "omega_twist": twist, "trivial": twist == 0 }),
            ),
            Err(e) => Check::skipped("canonical_bundle", e.to_string(), json!({})),
        },
        CheckKind::Discrepancy => match explore_discrepancy(q) {
            Ok(disc) => {
                let data = json!({
                    "value": disc.value.to_string(),
                    "gorenstein": disc.gorenstein,
                    "crepant": disc.gorenstein && disc.is_zero(),
                    "canonical_twist": disc.canonical_twist,
                    "divisor_twist": disc.divisor_twist,
                    "trace": disc.trace,
                });
                if gorenstein {
                    let expected = (n / d) as i64 - 1;
                    let ok = disc.value.is_integer() && disc.value.to_integer() == expected;
                    Check::new(
                        "discrepancy",
                        Status::from_bool(ok),
                        format!("a = {} (crepant: {})", disc.value, disc.is_zero()),
                        data,
                    )
                } else {
                    Check::skipped(
                        "discrepancy",
                        format!("{NEEDS_DIVISIBILITY}; exploratory value {} is fractional", disc.value),
                        data,
                    )
                }
            }
            Err(e) => Check::skipped("discrepancy", e.to_string(), json!({})),
        },
        CheckKind::Descent => {
            if !gorenstein {
                return Ok(Check::skipped("descent", NEEDS_DIVISIBILITY, json!({})));
            }
            let data = crate::tilting::descent_line_bundles(q)?;
            let mut twists: Vec<i64> = data.iter().map(|x| x.image_twist).collect();
            twists.sort_unstable();
            let expected: Vec<i64> = (1 - d as i64..=0).collect();
            Check::new(
                "descent",
                Status::from_bool(twists == expected),
                format!("chi_j -> t*O(-j) for j = 0..{}", d - 1),
                json!({
                    "pairs": data.iter().map(|x| json!({
                        "character": x.character.index(),
                        "twist": x.image_twist,
                    })).collect::<Vec<_>>(),
                }),
            )
        }
        CheckKind::Vanishing => {
            let range = d as i64 - 1;
            let mut failures = Vec::new();
            for j in -range..=range {
                let w = pushforward_vanishing(n, d, j)?;
                if let Some((i, m)) = w.offending {
                    failures.push(json!({ "twist": j, "i": i, "m": m }));
                }
            }
            let ok = failures.is_empty();
            Check::new(
                "pushforward_vanishing",
                Status::from_bool(ok),
                format!("R^i q_* t*O(j) = 0 for i > 0, |j| <= {range}"),
                json!({ "twists": [-range, range], "vanishing": ok }),
            )
            .with_witness(failures.into_iter().next())
        }
        CheckKind::Tilting => {
            if !gorenstein {
                return Ok(Check::skipped("tilting", NEEDS_DIVISIBILITY, json!({})));
            }
            let r = tilting_check(q, max_degree)?;
            let witness = r
                .ext_failure
                .as_ref()
                .map(|f| json!({ "kind": "ext", "a": f.a, "b": f.b, "twist": f.twist, "offending": f.witness.offending }))
                .or_else(|| {
                    r.hilbert_mismatch.as_ref().map(|m| {
                        json!({
                            "kind": "hilbert",
                            "a": m.a, "b": m.b, "fiber_degree": m.fiber_degree,
                            "geometric": series_json(&m.geometric),
                            "algebraic": series_json(&m.algebraic),
                        })
                    })
                })
                .or_else(|| (!r.k0_generation).then(|| json!({ "kind": "k0", "summands": r.summands })));
            Check::new(
                "tilting",
                Status::from_bool(r.passed()),
                format!(
                    "ext vanishing {}, Hilbert match up to degree {max_degree} {}, K0 {} = {}",
                    yes(r.ext_vanishing),
                    yes(r.hilbert_match),
                    r.summands,
                    r.representation_rank
                ),
                json!({
                    "ext_vanishing": r.ext_vanishing,
                    "hilbert_match": r.hilbert_match,
                    "k0_generation": r.k0_generation,
                    "summands": r.summands,
                    "representation_rank": r.representation_rank,
                    "max_fiber_degree": max_degree,
                    "notes": r.notes(),
                }),
            )
            .with_witness(witness)
        }
        CheckKind::Sod => {
            if !gorenstein {
                return Ok(Check::skipped("sod", NEEDS_DIVISIBILITY, json!({})));
            }
            let r = kuznetsov_sod_check(q)?;
            let witness = r
                .semi_failure
                .as_ref()
                .map(|f| json!({ "kind": "semi-orthogonality", "left": f.left_twist, "right": f.right_twist, "degree": f.degree, "dim": big(&f.dim) }))
                .or_else(|| {
                    r.t0_failure.as_ref().map(|f| {
                        json!({ "kind": "t0", "j": f.j, "block_twist": f.block_twist, "degree": f.degree, "dim": big(&f.dim) })
                    })
                });
            Check::new(
                "sod",
                Status::from_bool(r.passed()),
                format!("{}; K0: {} = {}*{} + {}", r.statement(), n, r.k0.block_count, d, r.k0.residual),
                json!({
                    "statement": r.statement(),
                    "blocks": r.blocks.iter().map(|b| json!({
                        "k": b.level,
                        "members": b.members.iter().map(|m| json!({ "l": m.l, "twist": m.twist })).collect::<Vec<_>>(),
                    })).collect::<Vec<_>>(),
                    "block_collection_exceptional": r.block_collection.exceptional,
                    "semi_orthogonal": r.semi_orthogonal,
                    "reversed_members_semi_orthogonal": r.reversed_members_semi_orthogonal,
                    "member_order": r.member_order(),
                    "t0_orthogonal": r.t0_orthogonal,
                    "t0_equals_db": r.t0_is_everything,
                    "k0": {
                        "n": r.k0.n,
                        "blocks": r.k0.block_count,
                        "block_size": r.k0.block_size,
                        "residual": r.k0.residual,
                        "representation_rank": r.k0.representation_rank,
                        "holds": r.k0.holds,
                    },
                }),
            )
            .with_witness(witness)
        }
        CheckKind::CrossConsistency => {
            if !gorenstein {
                return Ok(Check::skipped("discrepancy_matches_blocks", NEEDS_DIVISIBILITY, json!({})));
            }
            if n < 2 {
                return Ok(Check::skipped("discrepancy_matches_blocks", "requires n >= 2", json!({})));
            }
            let disc = explore_discrepancy(q)?;
            let blocks = kuznetsov_sod_check(q)?.blocks.len() as i64;
            let ok = disc.value.is_integer() && disc.value.to_integer() == blocks;
            Check::new(
                "discrepancy_matches_blocks",
                Status::from_bool(ok),
                format!("discrepancy {} vs {blocks} SOD block(s)", disc.value),
                json!({ "discrepancy": disc.value.to_string(), "blocks": blocks }),
            )
        }
    })
}

fn yes(b: bool) -> &'static str {
    if b {
        "ok"
    } else {
        "FAILED"
    }
}

fn certificate_json(cert: &GorensteinCertificate) -> Value {
    json!({
        "gorenstein": cert.gorenstein,
        "criterion": cert.branch.label(),
        "weight_sum_mod_d": cert.weight_sum_mod_d,
        "pseudo_reflection": cert.pseudo_reflection,
    })
}

/// Runs every check on `C^n/Z_d` with the scalar action. Checks run on the
/// current rayon pool; the result order is fixed.
pub fn analyze(n: u32, d: u32, max_degree: usize) -> Result<InstanceReport> {
    let start = Instant::now();
    let q = ScalarQuotient::new(n, d)?;
    let checks = ALL_CHECKS
        .par_iter()
        .map(|&kind| run_check(kind, q, max_degree))
        .collect::<Result<Vec<_>>>()?;

    let verdict = if !q.is_gorenstein() {
        Verdict::HypothesisViolated
    } else if checks.iter().any(|c| c.status == Status::Fail) {
        Verdict::Fail
    } else {
        Verdict::Pass
    };
    Ok(InstanceReport {
        schema: INSTANCE_SCHEMA,
        version: VERSION,
        input: InstanceInput {
            n,
            d,
            weights: q.action().weights().to_vec(),
            max_degree,
        },
        checks,
        verdict,
        elapsed_ms: start.elapsed().as_millis() as u64,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct MolienInput {
    pub d: u32,
    pub weights: Vec<u32>,
    pub max_degree: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct CharacterSeries {
    pub character: u32,
    pub covariant: Value,
    pub molien: Value,
    pub agree: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct MolienReport {
    pub schema: &'static str,
    pub version: &'static str,
    pub input: MolienInput,
    pub series: Vec<CharacterSeries>,
    pub agreement: bool,
    pub gorenstein: Value,
    pub elapsed_ms: u64,
}

impl MolienReport {
    pub fn exit_code(&self) -> i32 {
        if self.agreement {
            0
        } else {
            1
        }
    }
}

pub fn molien(action: &CyclicAction, max_degree: usize) -> Result<MolienReport> {
    let start = Instant::now();
    let chars: Vec<_> = action.characters().collect();
    let series = chars
        .par_iter()
        .map(|&chi| -> Result<CharacterSeries> {
            let cov = covariant_hilbert(action, chi, max_degree)?;
            let mol = molien_series(action, chi, max_degree)?;
            Ok(CharacterSeries {
                character: chi.index(),
                agree: cov == mol,
                covariant: series_json(&cov),
                molien: series_json(&mol),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let cert = is_gorenstein(action);
    Ok(MolienReport {
        schema: MOLIEN_SCHEMA,
        version: VERSION,
        input: MolienInput {
            d: action.order(),
            weights: action.weights().to_vec(),
            max_degree,
        },
        agreement: series.iter().all(|s| s.agree),
        series,
        gorenstein: certificate_json(&cert),
        elapsed_ms: start.elapsed().as_millis() as u64,
    })
}

fn ansi(status: Status, color: bool) -> String {
    if !color {
        return status.label().to_string();
    }
    let code = match status {
        Status::Pass => "32",
        Status::Fail => "31",
        Status::Skip => "33",
    };
    format!("\x1b[{code}m{}\x1b[0m", status.label())
}

impl InstanceReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn exit_code(&self) -> i32 {
        self.verdict.exit_code()
    }

    pub fn to_text(&self, color: bool) -> String {
        let mut out = String::new();
        let w: Vec<String> = self.input.weights.iter().map(ToString::to_string).collect();
        let _ = writeln!(
            out,
            "crepant-kit {}  C^{}/Z_{}  weights ({})  max-degree {}",
            self.version,
            self.input.n,
            self.input.d,
            w.join(","),
            self.input.max_degree
        );
        let _ = writeln!(out, "{:<28} {:<6} DETAIL", "CHECK", "STATUS");
        for c in &self.checks {
            // Pad on the plain label so colored output keeps its columns.
            let pad = " ".repeat(6 - c.status.label().len());
            let _ = writeln!(out, "{:<28} {}{} {}", c.name, ansi(c.status, color), pad, c.summary);
        }
        let _ = writeln!(out, "verdict: {}", self.verdict.as_str());
        let _ = writeln!(out, "elapsed: {} ms", self.elapsed_ms);
        out
    }
}

impl MolienReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self, color: bool) -> String {
        let mut out = String::new();
        let w: Vec<String> = self.input.weights.iter().map(ToString::to_string).collect();
        let _ = writeln!(
            out,
            "crepant-kit {}  Z/{} weights ({})  max-degree {}",
            self.version,
            self.input.d,
            w.join(","),
            self.input.max_degree
        );
        let _ = writeln!(out, "{:<10} {:<6} SERIES", "CHARACTER", "MOLIEN");
        for s in &self.series {
            let status = ansi(Status::from_bool(s.agree), color);
            let _ = writeln!(out, "{:<10} {}   {}", format!("chi_{}", s.character), status, compact(&s.covariant));
        }
        let _ = writeln!(out, "agreement: {}", if self.agreement { "ok" } else { "MISMATCH" });
        let g = &self.gorenstein;
        let _ = writeln!(
            out,
            "gorenstein: {} ({}; sum w = {} mod {}{})",
            g["gorenstein"],
            g["criterion"].as_str().unwrap_or_default(),
            g["weight_sum_mod_d"],
            self.input.d,
            match g["pseudo_reflection"].as_u64() {
                Some(j) => format!("; g^{j} is a pseudo-reflection, criterion not claimed"),
                None => String::new(),
            }
        );
        out
    }
}

fn compact(v: &Value) -> String {
    match v {
        Value::Array(items) => {
            let parts: Vec<String> = items
                .iter()
                .map(|x| x.as_str().map_or_else(|| x.to_string(), str::to_string))
                .collect();
            format!("({})", parts.join(","))
        }
        other => other.to_string(),
    }
}

/// Builds a rayon pool capped by `CREPANT_KIT_THREADS` when it is set to a
/// positive integer.
pub fn thread_pool_from_env() -> rayon::ThreadPool {
    let threads = std::env::var(THREADS_ENV)
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .filter(|&t| t > 0)
        .unwrap_or(0);
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .expect("thread pool")
}

/// `analyze` with `elapsed_ms` zeroed, for byte-level comparisons.
pub fn analyze_json_without_timing(n: u32, d: u32, max_degree: usize) -> Result<String> {
    let mut r = analyze(n, d, max_degree)?;
    r.elapsed_ms = 0;
    Ok(r.to_json())
}
