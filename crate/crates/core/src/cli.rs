//! JSON batch interface: input documents, command dispatch and reports.
//!
//! Every rational in a report is a canonical `"p/q"` string. Reports are
//! `serde_json::Value` trees whose maps are ordered, so identical inputs give
//! byte-identical output.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::Error;
use crate::exact::{parse_rational, primitivize, LatticeVector, Rational};
use crate::fan::Fan;
use crate::gallery;
use crate::invariants::{default_delta_radius, default_radius, Polarised, TORIC_DELTA_CAVEAT};
use crate::oracle::verify_df_equals_beta;
use crate::polytope::{Threshold, ToricDivisor};

pub const VERSION: &str = concat!("torstab ", env!("CARGO_PKG_VERSION"));
pub const DEFAULT_KMAX: u64 = 8;

/// A fan with per-ray divisor coefficients, as read from disk.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InputDocument {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub dim: usize,
    pub rays: Vec<Vec<i64>>,
    pub max_cones: Vec<Vec<usize>>,
    pub divisor: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Invariants,
    Beta,
    Futaki,
    Delta,
    Destabilize,
    Criterion,
    Oracle,
    Examples,
}

impl Command {
    pub const ALL: [Command; 8] = [
        Command::Invariants,
        Command::Beta,
        Command::Futaki,
        Command::Delta,
        Command::Destabilize,
        Command::Criterion,
        Command::Oracle,
        Command::Examples,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Command::Invariants => "invariants",
            Command::Beta => "beta",
            Command::Futaki => "futaki",
            Command::Delta => "delta",
            Command::Destabilize => "destabilize",
            Command::Criterion => "criterion",
            Command::Oracle => "oracle",
            Command::Examples => "examples",
        }
    }
}

impl FromStr for Command {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        Command::ALL
            .into_iter()
            .find(|c| c.as_str() == s)
            .ok_or_else(|| {
                let names: Vec<_> = Command::ALL.iter().map(|c| c.as_str()).collect();
                CliError::Input(format!("unknown command {s:?}; expected one of {}", names.join(", ")))
            })
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Flags {
    pub nu: Option<Vec<i64>>,
    pub radius: Option<i64>,
    pub kmax: Option<u64>,
    pub verbose: bool,
}

/// Input errors exit with 1, mathematical rejections with 2.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CliError {
    Input(String),
    Math(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 1,
            CliError::Math(_) => 2,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Input(m) => write!(f, "input error: {m}"),
            CliError::Math(m) => write!(f, "rejected: {m}"),
        }
    }
}

impl std::error::Error for CliError {}

fn classify(e: Error) -> CliError {
    match e {
        Error::EmptyPolytope
        | Error::NotFullDimensional
        | Error::NotAmple
        | Error::NeverEffective
        | Error::NotLatticePolytope
        | Error::NotPolynomial(_)
        | Error::DimensionTooLarge { .. } => CliError::Math(e.to_string()),
        _ => CliError::Input(e.to_string()),
    }
}

fn fan_error(e: Error) -> CliError {
    let msg = match &e {
        Error::NonPrimitiveRay(i) | Error::DuplicateRay(i) => format!("rays[{i}]: {e}"),
        Error::InvalidConeIndex { cone, .. } => format!("max_cones[{cone}]: {e}"),
        Error::DegenerateCone(c) | Error::Incomplete { cone: c, .. } => {
            format!("max_cones[{c}]: {e}")
        }
        Error::OverlappingCones(a, _) => format!("max_cones[{a}]: {e}"),
        _ => e.to_string(),
    };
    CliError::Input(msg)
}

/// Validates a document into a fan and a divisor.
pub fn validate_document(doc: &InputDocument) -> Result<(Fan, ToricDivisor), CliError> {
    if doc.dim == 0 {
        return Err(CliError::Input("dim: must be positive".into()));
    }
    for (i, r) in doc.rays.iter().enumerate() {
        if r.len() != doc.dim {
            return Err(CliError::Input(format!(
                "rays[{i}]: dimension mismatch: expected {}, found {}",
                doc.dim,
                r.len()
            )));
        }
    }
    if doc.divisor.len() != doc.rays.len() {
        return Err(CliError::Input(format!(
            "divisor: {} coefficients for {} rays",
            doc.divisor.len(),
            doc.rays.len()
        )));
    }
    if let Some(labels) = &doc.labels {
        if labels.len() != doc.rays.len() {
            return Err(CliError::Input(format!(
                "labels: {} labels for {} rays",
                labels.len(),
                doc.rays.len()
            )));
        }
    }
    let coeffs = doc
        .divisor
        .iter()
        .enumerate()
        .map(|(i, c)| parse_rational(c).map_err(|e| CliError::Input(format!("divisor[{i}]: {e}"))))
        .collect::<Result<Vec<_>, _>>()?;
    let rays = doc.rays.iter().map(|r| LatticeVector(r.clone())).collect();
    let fan = Fan::new(doc.dim, rays, doc.max_cones.clone()).map_err(fan_error)?;
    Ok((fan, ToricDivisor::new(coeffs)))
}

/// Parses JSON text into a document and its validated fan and divisor.
pub fn parse_input(text: &str) -> Result<(InputDocument, Fan, ToricDivisor), CliError> {
    let doc: InputDocument =
        serde_json::from_str(text).map_err(|e| CliError::Input(format!("malformed JSON: {e}")))?;
    let (fan, divisor) = validate_document(&doc)?;
    Ok((doc, fan, divisor))
}

fn q(r: &Rational) -> Value {
    Value::String(r.to_string())
}

fn qs(v: &[Rational]) -> Value {
    Value::Array(v.iter().map(q).collect())
}

fn threshold(t: &Threshold) -> Value {
    Value::String(t.to_string())
}

struct Context {
    pol: Polarised,
    caveats: Vec<String>,
}

impl Context {
    fn nu(&mut self, flags: &Flags, command: Command) -> Result<Option<LatticeVector>, CliError> {
        let Some(raw) = &flags.nu else {
            return Ok(None);
        };
        let v = LatticeVector(raw.clone());
        if v.dim() != self.pol.dim() {
            return Err(CliError::Input(format!(
                "--nu: expected {} coordinates, found {}",
                self.pol.dim(),
                v.dim()
            )));
        }
        let (prim, g) =
            primitivize(&v).map_err(|e| CliError::Input(format!("--nu: {e}")))?;
        if g != 1 {
            self.caveats
                .push(format!("{}: nu {v} is not primitive; using {prim}", command.as_str()));
        }
        Ok(Some(prim))
    }

    fn require_nu(&mut self, flags: &Flags, command: Command) -> Result<LatticeVector, CliError> {
        self.nu(flags, command)?
            .ok_or_else(|| CliError::Input(format!("{} requires --nu", command.as_str())))
    }

    fn valuation(&self, nu: &LatticeVector) -> Result<Value, CliError> {
        let data = self.pol.fan().minimal_cone_containing(nu).map_err(classify)?;
        let norms = self.pol.tau_s_j(nu).map_err(classify)?;
        let beta_hat = self.pol.beta_integral(nu).map_err(classify)?;
        let beta_bary = self.pol.beta_barycentre(nu).map_err(classify)?;
        let nf = crate::invariants::factorial(self.pol.dim());
        Ok(json!({
            "nu": nu.coords(),
            "minimal_cone": data.minimal_cone,
            "cone_coefficients": qs(&data.coefficients),
            "log_discrepancy": q(&data.log_discrepancy),
            "is_ray": data.is_ray,
            "tau": q(&norms.tau),
            "s": q(&norms.s),
            "j": q(&norms.j),
            "beta": q(&(&nf * &beta_hat)),
            "beta_hat": q(&beta_hat),
            "beta_hat_barycentre": q(&beta_bary),
            "routes_agree": beta_hat == beta_bary,
            "futaki_pairing": q(&self.pol.futaki(nu)),
        }))
    }

    fn summary(&self) -> Result<Value, CliError> {
        let pol = &self.pol;
        let (delta, ray) = pol.delta_toric().map_err(classify)?;
        let (alpha, alpha_applies) = pol.alpha_lower_bound_constant();
        let facets: Vec<Value> = pol
            .boundary()
            .facets
            .iter()
            .map(|f| json!({"ray": f.ray, "volume": q(&f.volume)}))
            .collect();
        Ok(json!({
            "dim": pol.dim(),
            "mu": q(&pol.slope()),
            "vol": q(&pol.volume()),
            "vol_m": q(pol.lattice_volume()),
            "boundary_volume": q(&pol.boundary().total),
            "facets": facets,
            "barycentre": qs(pol.barycentre()),
            "boundary_barycentre": qs(pol.boundary_barycentre()),
            "vertices": pol.polytope().vertices().iter().map(|v| qs(v)).collect::<Vec<_>>(),
            "lattice_polytope": pol.polytope().is_lattice(),
            "futaki_vanishes": pol.futaki_vanishes(),
            "delta_toric": q(&delta),
            "delta_ray": ray,
            "alpha_lower_bound": q(&alpha),
            "alpha_bound_applies": alpha_applies,
        }))
    }
}

/// Runs a command on a parsed document.
pub fn run(command: Command, doc: &InputDocument, flags: &Flags) -> Result<Value, CliError> {
    if command == Command::Examples {
        return Err(CliError::Input("examples takes a gallery name, not a document".into()));
    }
    let (fan, divisor) = validate_document(doc)?;
    let pol = Polarised::new(fan, divisor).map_err(classify)?;
    let mut ctx = Context {
        pol,
        caveats: Vec::new(),
    };
    let result = match command {
        Command::Invariants => {
            let mut out = ctx.summary()?;
            if let Some(nu) = ctx.nu(flags, command)? {
                out["valuation"] = ctx.valuation(&nu)?;
            }
            ctx.caveats.push(TORIC_DELTA_CAVEAT.to_string());
            out
        }
        Command::Beta => {
            let nu = ctx.require_nu(flags, command)?;
            let mut out = ctx.valuation(&nu)?;
            if flags.verbose {
                let hat = ctx.pol.beta_with_discrepancy_term(&nu).map_err(classify)?;
                let nf = crate::invariants::factorial(ctx.pol.dim());
                out["with_discrepancy_term"] = json!({
                    "label": "barycentre formula plus (A - 1) Vol_M; differs when A != 1",
                    "beta_hat": q(&hat),
                    "beta": q(&(nf * hat)),
                });
            }
            out
        }
        Command::Futaki => {
            let pol = &ctx.pol;
            let diff: Vec<Rational> = pol
                .boundary_barycentre()
                .iter()
                .zip(pol.barycentre())
                .map(|(b, p)| b - p)
                .collect();
            let rays: Vec<Value> = pol
                .fan()
                .rays()
                .iter()
                .map(|u| {
                    let beta_hat = pol.beta_barycentre(u).map_err(classify)?;
                    Ok(json!({"ray": u.coords(), "pairing": q(&pol.futaki(u)), "beta_hat": q(&beta_hat)}))
                })
                .collect::<Result<_, CliError>>()?;
            let mut out = json!({
                "difference": qs(&diff),
                "futaki_vanishes": pol.futaki_vanishes(),
                "rays": rays,
            });
            if let Some(nu) = ctx.nu(flags, command)? {
                out["nu"] = json!(nu.coords());
                out["pairing"] = q(&ctx.pol.futaki(&nu));
            }
            out
        }
        Command::Delta => {
            let radius = flags.radius.unwrap_or_else(|| default_delta_radius(ctx.pol.dim()));
            let (delta, ray) = ctx.pol.delta_toric().map_err(classify)?;
            let brute = ctx.pol.delta_toric_brute(radius).map_err(classify)?;
            ctx.caveats.push(TORIC_DELTA_CAVEAT.to_string());
            json!({
                "delta_toric": q(&delta),
                "minimising_ray": ray,
                "minimising_ray_vector": ctx.pol.fan().ray(ray).coords(),
                "radius": radius,
                "delta_brute": q(&brute),
                "agree": delta == brute,
            })
        }
        Command::Destabilize => {
            let radius = flags.radius.unwrap_or_else(|| default_radius(ctx.pol.dim()));
            let search = ctx.pol.destabilizer_search(radius).map_err(classify)?;
            let best = match &search.best {
                Some(c) => json!({
                    "nu": c.nu.coords(),
                    "beta_hat": q(&c.beta_hat),
                    "ratio": q(&c.ratio),
                }),
                None => Value::Null,
            };
            json!({
                "radius": search.radius,
                "best": best,
                "any_negative": search.any_negative,
                "consistent_with_futaki": search.consistent,
            })
        }
        Command::Criterion => {
            let report = ctx.pol.sufficient_criterion().map_err(classify)?;
            ctx.caveats.extend(report.caveats.iter().cloned());
            json!({
                "mu": q(&report.mu),
                "delta_toric": q(&report.delta_toric),
                "gamma": q(&report.gamma),
                "target": q(&report.target),
                "t_min": threshold(&report.t_min),
                "verdict": report.verdict.as_str(),
            })
        }
        Command::Oracle => {
            let nu = ctx.require_nu(flags, command)?;
            let kmax = flags.kmax.unwrap_or(DEFAULT_KMAX);
            let v = verify_df_equals_beta(&ctx.pol, &nu, kmax).map_err(classify)?;
            json!({
                "nu": v.nu.coords(),
                "kmax": kmax,
                "df": q(&v.df),
                "df_times_volume": q(&v.df_times_volume),
                "beta": q(&v.beta),
                "weight_extremes_ok": v.weight_extremes_ok,
                "df_routes_agree": v.df_routes_agree,
                "verify": if v.pass { "pass" } else { "fail" },
            })
        }
        Command::Examples => unreachable!(),
    };
    Ok(report(command, Some(doc), flags, result, ctx.caveats))
}

fn flags_value(flags: &Flags) -> Value {
    let mut m = serde_json::Map::new();
    if let Some(nu) = &flags.nu {
        m.insert("nu".into(), json!(nu));
    }
    if let Some(r) = flags.radius {
        m.insert("radius".into(), json!(r));
    }
    if let Some(k) = flags.kmax {
        m.insert("kmax".into(), json!(k));
    }
    if flags.verbose {
        m.insert("verbose".into(), json!(true));
    }
    Value::Object(m)
}

fn report(
    command: Command,
    doc: Option<&InputDocument>,
    flags: &Flags,
    result: Value,
    caveats: Vec<String>,
) -> Value {
    json!({
        "version": VERSION,
        "command": command.as_str(),
        "input": doc.map_or(Value::Null, |d| serde_json::to_value(d).expect("document serialises")),
        "flags": flags_value(flags),
        "result": result,
        "caveats": caveats,
    })
}

/// The `examples` command: `"list"` or a gallery name.
pub fn examples(name: &str) -> Result<Value, CliError> {
    if name == "list" {
        return Ok(json!({
            "version": VERSION,
            "names": gallery::NAMES,
            "instances": gallery::DEFAULT_INSTANCES,
        }));
    }
    let doc = gallery::example(name).map_err(CliError::Input)?;
    Ok(serde_json::to_value(doc).expect("document serialises"))
}

/// Full command-line dispatch: `target` is a file path, or a gallery name
/// for `examples`.
pub fn dispatch(command: &str, target: &str, flags: &Flags) -> Result<Value, CliError> {
    let command: Command = command.parse()?;
    if command == Command::Examples {
        return examples(target);
    }
    let text = std::fs::read_to_string(target)
        .map_err(|e| CliError::Input(format!("{target}: {e}")))?;
    let (doc, _, _) = parse_input(&text)?;
    run(command, &doc, flags)
}

/// Canonical output text for a report.
pub fn render(value: &Value) -> String {
    serde_json::to_string_pretty(value).expect("report serialises")
}
