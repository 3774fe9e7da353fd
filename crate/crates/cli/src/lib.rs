//! Command-line front end: argument parsing, input loading and report
//! rendering around `satcheck-core`.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use satcheck_core::abelian::{from_presentation, smith_normal_form, Character, Subgroup};
use satcheck_core::covers::{cover_matrix, homology_and_lifts};
use satcheck_core::io::{
    element_strings, parse_form, parse_front, parse_matrix, parse_profile, parse_seifert,
    subgroup_json, FormJson,
};
use satcheck_core::linking::{enumerate_metabolizers, rational_string};
use satcheck_core::obstruction::{
    check_strong_obstruction_with, check_theorem_a, full_exponent, sweep_modulus_with, CgPatternProfile,
    ObstructionCertificate, StrongOutcome, TheoremAStatus,
};
use satcheck_core::signature::{rho0, sigma_at, signature_function, JumpAngle, Rho0};
use satcheck_core::tau::{
    census_verdicts, embedded_census, legendrian_tb_rot, ng_traynor, plamenevskaya_bound, tau_standard,
    EvidenceDb, StandardKind, TauProfile,
};

#[derive(Parser, Debug)]
#[command(
    name = "satcheck",
    version,
    about = "Exact obstructions to satellite patterns inducing concordance homomorphisms",
    arg_required_else_help = true
)]
pub struct Cli {
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Render the report as text instead of JSON.
    #[arg(long, global = true)]
    pub text: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Smith normal form and cokernel of an integer matrix.
    Snf {
        #[arg(long)]
        matrix: PathBuf,
    },
    /// Metabolizers of a torsion linking form.
    Metabolizers {
        #[arg(long)]
        form: PathBuf,
        /// Keep only deck-invariant metabolizers.
        #[arg(long)]
        invariant_only: bool,
    },
    /// Casson-Gordon style obstruction for a pattern profile.
    ObstructCg {
        #[arg(long)]
        profile: PathBuf,
        /// Try the moduli q^1 .. q^(6k) in turn, stopping at the first that obstructs.
        #[arg(long)]
        sweep_modulus: bool,
        #[arg(long)]
        invariant_only: bool,
    },
    /// Circulant linking matrix of a cyclic branched cover.
    CoverMatrix(CoverArgs),
    /// Tristram-Levine signature at exp(2 pi i k/N).
    TlSignature {
        #[arg(long)]
        seifert: PathBuf,
        /// Root of unity as k/N.
        #[arg(long)]
        omega: String,
        /// Report the averaged value at a jump instead of failing.
        #[arg(long)]
        allow_jump: bool,
    },
    /// Integral of the signature function, with its jumps.
    Rho0 {
        #[arg(long)]
        seifert: PathBuf,
    },
    /// tau of a standard satellite of a companion with known (tau, epsilon).
    Tau(TauArgs),
    /// tb, rot and the slice-Bennequin bound of a Legendrian front.
    Legendrian {
        #[arg(long)]
        front: PathBuf,
        /// Front of a companion with tb = 0, for the satellite formula.
        #[arg(long, requires = "winding")]
        companion: Option<PathBuf>,
        #[arg(long, allow_hyphen_values = true)]
        winding: Option<i64>,
    },
    /// Verdict table for the pattern census.
    Census {
        /// Evidence database; the bundled census when omitted.
        #[arg(long)]
        db: Option<PathBuf>,
    },
}

#[derive(Args, Debug)]
pub struct CoverArgs {
    #[arg(long)]
    pub p: usize,
    #[arg(long, allow_hyphen_values = true)]
    pub framing: String,
    /// Linking numbers by cyclic offset, `d=v,...`.
    #[arg(long, allow_hyphen_values = true, default_value = "")]
    pub offdiag: String,
}

#[derive(Args, Debug)]
pub struct TauArgs {
    /// core, cable, mazur, whitehead, or a name such as C3,-1.
    #[arg(long)]
    pub kind: String,
    #[arg(long)]
    pub p: Option<i64>,
    #[arg(long, allow_hyphen_values = true, default_value_t = 1)]
    pub q: i64,
    #[arg(long, allow_hyphen_values = true)]
    pub tau: i64,
    #[arg(long, allow_hyphen_values = true)]
    pub eps: i8,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Ok,
    Error,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReportError {
    pub kind: String,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunReport {
    pub command: String,
    /// SHA-256 over the command, its parameters and the input file contents.
    pub inputs_digest: String,
    pub status: Status,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verdict: Option<String>,
    pub result: Value,
    pub certificates: Vec<Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<ReportError>,
    pub timing_ms: String,
}

impl RunReport {
    pub fn exit_code(&self) -> i32 {
        match self.status {
            Status::Ok => 0,
            Status::Error => 2,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }

    /// Every value of the JSON rendering, one per line, plus any table the
    /// command carries.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "command: {}", self.command);
        let _ = writeln!(s, "status: {}", if self.status == Status::Ok { "ok" } else { "error" });
        if let Some(v) = &self.verdict {
            let _ = writeln!(s, "verdict: {v}");
        }
        if let Some(e) = &self.error {
            let _ = writeln!(s, "error ({}): {}", e.kind, e.message);
        }
        if let Some(Value::String(table)) = self.result.get("table") {
            s.push('\n');
            s.push_str(table);
            s.push('\n');
        }
        flatten("result", &self.result, &mut s);
        for (i, c) in self.certificates.iter().enumerate() {
            flatten(&format!("certificates[{i}]"), c, &mut s);
        }
        let _ = writeln!(s, "inputs_digest: {}", self.inputs_digest);
        let _ = writeln!(s, "timing_ms: {}", self.timing_ms);
        s
    }
}

fn flatten(prefix: &str, v: &Value, out: &mut String) {
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                if prefix == "result" && k == "table" {
                    continue;
                }
                flatten(&format!("{prefix}.{k}"), x, out);
            }
        }
        Value::Array(a) if a.iter().all(|x| !x.is_object() && !x.is_array()) => {
            let items: Vec<String> = a.iter().map(scalar).collect();
            let _ = writeln!(out, "{prefix}: [{}]", items.join(", "));
        }
        Value::Array(a) => {
            for (i, x) in a.iter().enumerate() {
                flatten(&format!("{prefix}[{i}]"), x, out);
            }
        }
        _ => {
            let _ = writeln!(out, "{prefix}: {}", scalar(v));
        }
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

/// A failure, named by kind in the report.
#[derive(Debug)]
pub struct Failure {
    pub kind: &'static str,
    pub message: String,
}

impl Failure {
    fn new(kind: &'static str, message: impl Into<String>) -> Self {
        Failure { kind, message: message.into() }
    }
}

impl From<satcheck_core::Error> for Failure {
    fn from(e: satcheck_core::Error) -> Self {
        use satcheck_core::Error as E;
        let kind = match &e {
            E::Input(_) => "schema",
            E::TooLarge(_) | E::SelfCheck(_) => "computation",
            E::AtJump { .. } => "at_jump",
            _ => "invalid_input",
        };
        Failure::new(kind, e.to_string())
    }
}

type Outcome = std::result::Result<Computed, Failure>;

struct Computed {
    verdict: Option<String>,
    result: Value,
    certificates: Vec<Value>,
}

impl Computed {
    fn values(result: Value) -> Self {
        Computed { verdict: None, result, certificates: Vec::new() }
    }
}

/// Collects the command parameters and input file contents for the digest.
struct Inputs {
    hasher: Sha256,
}

impl Inputs {
    fn new(command: &str, params: &Value) -> Self {
        let mut hasher = Sha256::new();
        hasher.update(command.as_bytes());
        hasher.update([0]);
        hasher.update(params.to_string().as_bytes());
        Inputs { hasher }
    }

    /// Reads a JSON input, distinguishing unreadable files and malformed JSON
    /// from schema violations found later.
    fn read(&mut self, path: &Path) -> std::result::Result<String, Failure> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Failure::new("io", format!("{}: {e}", path.display())))?;
        serde_json::from_str::<Value>(&text)
            .map_err(|e| Failure::new("malformed_json", format!("{}: {e}", path.display())))?;
        self.hasher.update([0]);
        self.hasher.update(text.as_bytes());
        Ok(text)
    }

    fn digest(&self) -> String {
        self.hasher.clone().finalize().iter().map(|b| format!("{b:02x}")).collect()
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Snf { .. } => "snf",
        Command::Metabolizers { .. } => "metabolizers",
        Command::ObstructCg { .. } => "obstruct-cg",
        Command::CoverMatrix(_) => "cover-matrix",
        Command::TlSignature { .. } => "tl-signature",
        Command::Rho0 { .. } => "rho0",
        Command::Tau(_) => "tau",
        Command::Legendrian { .. } => "legendrian",
        Command::Census { .. } => "census",
    }
}

/// Parameters that enter the digest; file paths are replaced by contents.
fn params(c: &Command) -> Value {
    match c {
        Command::Snf { .. } | Command::Rho0 { .. } => json!({}),
        Command::Metabolizers { invariant_only, .. } => json!({ "invariant_only": invariant_only }),
        Command::ObstructCg { sweep_modulus, invariant_only, .. } => {
            json!({ "sweep_modulus": sweep_modulus, "invariant_only": invariant_only })
        }
        Command::CoverMatrix(a) => json!({ "p": a.p, "framing": a.framing, "offdiag": a.offdiag }),
        Command::TlSignature { omega, allow_jump, .. } => json!({ "omega": omega, "allow_jump": allow_jump }),
        Command::Tau(a) => json!({ "kind": a.kind, "p": a.p, "q": a.q, "tau": a.tau, "eps": a.eps }),
        Command::Legendrian { companion, winding, .. } => {
            json!({ "companion": companion.is_some(), "winding": winding })
        }
        Command::Census { db } => json!({ "bundled": db.is_none() }),
    }
}

/// Runs one parsed command line.
pub fn execute(cli: &Cli) -> RunReport {
    let start = Instant::now();
    let name = command_name(&cli.command);
    let mut inputs = Inputs::new(name, &params(&cli.command));
    let outcome = run(&cli.command, &mut inputs);
    let timing_ms = start.elapsed().as_millis().to_string();
    let inputs_digest = inputs.digest();
    match outcome {
        Ok(c) => RunReport {
            command: name.into(),
            inputs_digest,
            status: Status::Ok,
            verdict: c.verdict,
            result: c.result,
            certificates: c.certificates,
            error: None,
            timing_ms,
        },
        Err(f) => RunReport {
            command: name.into(),
            inputs_digest,
            status: Status::Error,
            verdict: None,
            result: Value::Null,
            certificates: Vec::new(),
            error: Some(ReportError { kind: f.kind.into(), message: f.message }),
            timing_ms,
        },
    }
}

fn run(c: &Command, inputs: &mut Inputs) -> Outcome {
    match c {
        Command::Snf { matrix } => snf(&inputs.read(matrix)?),
        Command::Metabolizers { form, invariant_only } => metabolizers(&inputs.read(form)?, *invariant_only),
        Command::ObstructCg { profile, sweep_modulus, invariant_only } => {
            obstruct(&inputs.read(profile)?, *sweep_modulus, *invariant_only)
        }
        Command::CoverMatrix(a) => cover(a),
        Command::TlSignature { seifert, omega, allow_jump } => {
            tl_signature(&inputs.read(seifert)?, omega, *allow_jump)
        }
        Command::Rho0 { seifert } => rho0_cmd(&inputs.read(seifert)?),
        Command::Tau(a) => tau(a),
        Command::Legendrian { front, companion, winding } => {
            let front = inputs.read(front)?;
            let companion = match companion {
                Some(p) => Some(inputs.read(p)?),
                None => None,
            };
            legendrian(&front, companion.as_deref(), *winding)
        }
        Command::Census { db } => {
            let db = match db {
                Some(p) => EvidenceDb::from_json(&inputs.read(p)?)?,
                None => embedded_census(),
            };
            census(&db)
        }
    }
}

fn strings(v: &[BigInt]) -> Vec<String> {
    v.iter().map(ToString::to_string).collect()
}

fn matrix_strings(m: &[Vec<BigInt>]) -> Vec<Vec<String>> {
    m.iter().map(|r| strings(r)).collect()
}

fn snf(text: &str) -> Outcome {
    let m = parse_matrix(text)?;
    let s = smith_normal_form(&m);
    let pres = from_presentation(&m)?;
    Ok(Computed::values(json!({
        "diagonal": strings(&s.diag),
        "u": matrix_strings(&s.u),
        "v": matrix_strings(&s.v),
        "v_inv": matrix_strings(&s.v_inv),
        "cokernel": {
            "invariant_factors": strings(pres.group.factors()),
            "free_rank": pres.free_rank.to_string(),
            "order": if pres.free_rank == 0 { pres.group.order().to_string() } else { "infinite".into() },
        },
    })))
}

fn metabolizers(text: &str, invariant_only: bool) -> Outcome {
    let form = parse_form(text)?;
    let list: Vec<Subgroup> = enumerate_metabolizers(&form, invariant_only)?.collect();
    Ok(Computed::values(json!({
        "group": strings(form.group().factors()),
        "count": list.len().to_string(),
        "metabolizers": list.iter().map(subgroup_json).collect::<Vec<_>>(),
    })))
}

fn character_json(chi: &Character) -> Value {
    json!({ "modulus": chi.modulus().to_string(), "values": strings(chi.values()) })
}

fn certificate_json(c: &ObstructionCertificate) -> Value {
    json!({
        "metabolizer": subgroup_json(&c.metabolizer),
        "character": character_json(&c.character),
        "components": c.components.iter().map(|v| strings(v)).collect::<Vec<_>>(),
        "multisets": c.multisets.iter().map(|v| strings(v)).collect::<Vec<_>>(),
    })
}

fn outcome_json(o: &StrongOutcome) -> (String, Value) {
    match o {
        StrongOutcome::Obstructed { certificates } => (
            "OBSTRUCTED".into(),
            json!({ "metabolizers": certificates.len().to_string() }),
        ),
        StrongOutcome::Inconclusive { metabolizer, metabolizers_checked } => (
            "INCONCLUSIVE".into(),
            json!({
                "unobstructed_metabolizer": subgroup_json(metabolizer),
                "metabolizers_checked": metabolizers_checked.to_string(),
            }),
        ),
    }
}

fn certificates_of(o: &StrongOutcome) -> Vec<Value> {
    match o {
        StrongOutcome::Obstructed { certificates } => certificates.iter().map(certificate_json).collect(),
        StrongOutcome::Inconclusive { .. } => Vec::new(),
    }
}

fn theorem_a_json(profile: &CgPatternProfile) -> std::result::Result<Value, Failure> {
    let a = check_theorem_a(profile)?;
    Ok(json!({
        "status": match a.status {
            TheoremAStatus::Obstructed => "OBSTRUCTED",
            TheoremAStatus::NotApplicable => "NOT_APPLICABLE",
        },
        "reason": a.reason,
        "generated_order": a.generated.order().to_string(),
    }))
}

fn obstruct(text: &str, sweep: bool, invariant_only: bool) -> Outcome {
    let profile = parse_profile(text)?;
    let quick = theorem_a_json(&profile)?;
    if !sweep {
        let o = check_strong_obstruction_with(&profile, invariant_only)?;
        let (verdict, detail) = outcome_json(&o);
        return Ok(Computed {
            verdict: Some(verdict),
            result: json!({
                "modulus": profile.character_modulus.to_string(),
                "group": strings(profile.form.group().factors()),
                "strong": detail,
                "quick_test": quick,
            }),
            certificates: certificates_of(&o),
        });
    }
    let q = profile.character_modulus.clone();
    let e = full_exponent(&profile.form, &q)?;
    let per_modulus = sweep_modulus_with(&profile, e, invariant_only)?.results;
    let rows: Vec<Value> = per_modulus
        .iter()
        .map(|(m, o)| {
            let (v, d) = outcome_json(o);
            json!({ "modulus": m.to_string(), "verdict": v, "detail": d })
        })
        .collect();
    let first = per_modulus.iter().find(|(_, o)| o.is_obstructed());
    Ok(Computed {
        verdict: Some(if first.is_some() { "OBSTRUCTED" } else { "INCONCLUSIVE" }.into()),
        result: json!({
            "base_modulus": q.to_string(),
            "max_exponent": e.to_string(),
            "group": strings(profile.form.group().factors()),
            "sweep": rows,
            "obstructing_modulus": first.map(|(m, _)| m.to_string()),
            "quick_test": quick,
        }),
        certificates: first.map(|(_, o)| certificates_of(o)).unwrap_or_default(),
    })
}

fn parse_int(s: &str, what: &str) -> std::result::Result<BigInt, Failure> {
    s.trim()
        .parse()
        .map_err(|_| Failure::new("invalid_argument", format!("{what}: not an integer: {s:?}")))
}

fn parse_offdiag(s: &str) -> std::result::Result<BTreeMap<usize, BigInt>, Failure> {
    let mut out = BTreeMap::new();
    for item in s.split(',').map(str::trim).filter(|x| !x.is_empty()) {
        let (d, v) = item
            .split_once('=')
            .ok_or_else(|| Failure::new("invalid_argument", format!("offdiag entry {item:?} is not d=v")))?;
        let d: usize = d
            .trim()
            .parse()
            .map_err(|_| Failure::new("invalid_argument", format!("offdiag offset {d:?}")))?;
        if out.insert(d, parse_int(v, "offdiag value")?).is_some() {
            return Err(Failure::new("invalid_argument", format!("offdiag offset {d} given twice")));
        }
    }
    Ok(out)
}

fn cover(a: &CoverArgs) -> Outcome {
    let f = parse_int(&a.framing, "framing")?;
    let m = cover_matrix(a.p, &f, &parse_offdiag(&a.offdiag)?)?;
    let det = satcheck_core::abelian::determinant(&m.matrix);
    let snf = smith_normal_form(&m.matrix);
    let mut result = json!({
        "p": a.p.to_string(),
        "matrix": matrix_strings(&m.matrix),
        "determinant": det.to_string(),
        "smith_diagonal": strings(&snf.diag),
        "wraparound_doubled": m.wraparound_doubled,
    });
    if det != BigInt::from(0) {
        let h = homology_and_lifts(&m)?;
        result["homology"] = json!({
            "invariant_factors": strings(h.group.factors()),
            "order": h.group.order().to_string(),
            "lifts": h.lifts.iter().map(element_strings).collect::<Vec<_>>(),
            "is_cyclic_module": h.is_cyclic_module,
            "linking_form": serde_json::to_value(FormJson::from_form(&h.form)).expect("form serializes"),
        });
    }
    Ok(Computed::values(result))
}

fn parse_omega(s: &str) -> std::result::Result<(u64, u64), Failure> {
    let bad = || Failure::new("invalid_argument", format!("omega must be k/N with 0 <= k < N, got {s:?}"));
    let (k, n) = s.split_once('/').ok_or_else(bad)?;
    let k: u64 = k.trim().parse().map_err(|_| bad())?;
    let n: u64 = n.trim().parse().map_err(|_| bad())?;
    if n == 0 || k >= n {
        return Err(bad());
    }
    Ok((k, n))
}

fn tl_signature(text: &str, omega: &str, allow_jump: bool) -> Outcome {
    let v = parse_seifert(text)?;
    let (k, n) = parse_omega(omega)?;
    let s = sigma_at(&v, k, n)?;
    if s.at_jump && !allow_jump {
        return Err(satcheck_core::Error::AtJump { k, n }.into());
    }
    Ok(Computed::values(json!({
        "omega": format!("{k}/{n}"),
        "signature": s.value.to_string(),
        "at_jump": s.at_jump,
        "alexander": strings(&v.alexander()),
    })))
}

fn angle_json(a: &JumpAngle) -> Value {
    match a {
        JumpAngle::Exact(x) => json!({ "exact": rational_string(x) }),
        JumpAngle::Interval { lo, hi } => json!({ "lo": rational_string(lo), "hi": rational_string(hi) }),
    }
}

fn rho0_cmd(text: &str) -> Outcome {
    let v = parse_seifert(text)?;
    let f = signature_function(&v)?;
    let r = match rho0(&v)? {
        Rho0::Exact(x) => json!({ "exact": rational_string(&x) }),
        Rho0::Interval { lo, hi } => json!({ "lo": rational_string(&lo), "hi": rational_string(&hi) }),
    };
    Ok(Computed::values(json!({
        "rho0": r,
        "alexander": strings(&f.alexander),
        "jumps": f.jumps.iter().map(|j| angle_json(&j.angle)).collect::<Vec<_>>(),
        "plateaus": f.plateaus.iter().map(ToString::to_string).collect::<Vec<_>>(),
    })))
}

fn standard_kind(a: &TauArgs) -> std::result::Result<StandardKind, Failure> {
    let kind = match a.kind.to_ascii_lowercase().as_str() {
        "cable" => {
            let p = a
                .p
                .ok_or_else(|| Failure::new("invalid_argument", "--kind cable needs --p"))?;
            Some(StandardKind::Cable { p, q: a.q })
        }
        "core" => Some(StandardKind::Core),
        "mazur" => Some(StandardKind::Mazur),
        "whitehead" => Some(StandardKind::Whitehead),
        _ => StandardKind::parse(&a.kind),
    };
    kind.ok_or_else(|| Failure::new("invalid_argument", format!("unknown pattern kind {:?}", a.kind)))
}

fn tau(a: &TauArgs) -> Outcome {
    let kind = standard_kind(a)?;
    let k = TauProfile::new(a.tau, a.eps)?;
    let value = tau_standard(kind, &k)?;
    let mirror = tau_standard(kind, &k.mirror())?;
    Ok(Computed::values(json!({
        "pattern": kind.to_string(),
        "winding_number": kind.winding_number().to_string(),
        "companion": { "tau": a.tau.to_string(), "epsilon": a.eps.to_string() },
        "tau": value.to_string(),
        "tau_of_mirror_companion": mirror.to_string(),
        "sum": (value + mirror).to_string(),
    })))
}

fn legendrian(front: &str, companion: Option<&str>, winding: Option<i64>) -> Outcome {
    let f = parse_front(front)?;
    let (tb, rot) = legendrian_tb_rot(&f)?;
    let mut result = json!({
        "tb": tb.to_string(),
        "rot": rot.to_string(),
        "tau_lower_bound": plamenevskaya_bound(tb, rot).to_string(),
    });
    if let (Some(c), Some(w)) = (companion, winding) {
        let (tb_j, rot_j) = legendrian_tb_rot(&parse_front(c)?)?;
        let (tb_s, rot_s) = ng_traynor(w, tb_j, rot_j, tb, rot)?;
        result["satellite"] = json!({
            "winding_number": w.to_string(),
            "companion_tb": tb_j.to_string(),
            "companion_rot": rot_j.to_string(),
            "tb": tb_s.to_string(),
            "rot": rot_s.to_string(),
            "tau_lower_bound": plamenevskaya_bound(tb_s, rot_s).to_string(),
        });
    }
    Ok(Computed::values(result))
}

fn census(db: &EvidenceDb) -> Outcome {
    use satcheck_core::tau::Verdict;
    let c = census_verdicts(db)?;
    let rows: Vec<Value> = c
        .rows
        .iter()
        .map(|r| {
            json!({
                "pattern": r.pattern,
                "winding_number": r.winding_number.to_string(),
                "verdict": r.verdict.to_string(),
                "rule": r.rule.to_string(),
                "detail": r.detail,
            })
        })
        .collect();
    let counts: BTreeMap<String, String> = [
        Verdict::Standard,
        Verdict::NotPseudoHom,
        Verdict::PseudoHomNotHom,
        Verdict::Open,
        Verdict::InsufficientEvidence,
    ]
    .into_iter()
    .map(|v| (v.to_string(), c.count(v).to_string()))
    .collect();
    Ok(Computed::values(json!({ "counts": counts, "rows": rows, "table": c.to_text() })))
}

/// Applies `SATCHECK_THREADS` to the global worker pool.
pub fn configure_threads() -> std::result::Result<(), String> {
    if let Ok(v) = std::env::var("SATCHECK_THREADS") {
        let n: usize = v
            .trim()
            .parse()
            .ok()
            .filter(|&n| n > 0)
            .ok_or_else(|| format!("SATCHECK_THREADS must be a positive integer, got {v:?}"))?;
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| e.to_string())?;
    }
    Ok(())
}
