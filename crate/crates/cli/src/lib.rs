//! Command-line front end: argument grammar, dispatch and JSON records.
//!
//! Every invocation writes one JSON record `{command, inputs, outputs,
//! branch, warnings}` to standard output and a short human-readable summary
//! to standard error. Failures write `{command, error: {code, message}}` to
//! standard error instead.

use std::ffi::OsString;
use std::io::Write;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use elliptic_spectra::exact::{parse_rational, ExactChristoffel};
use elliptic_spectra::{
    body_class, christoffel_to_eigenvalues, classify_metric, compare_spectra, covering_volume,
    curvature_profile, eigenvalues_to_christoffel, group_order, heat_invariants,
    invert_spectrum, isometry_group_descriptor, lens_diffeomorphic, moments_to_eigenvalues,
    quotient_structure, recover_from_curvature_and_volume, rotational_invariants,
    unique_degenerate_metric, ChristoffelTriple, EllipticGroup, Error, GroupOrder, HeatInvariants,
    MetricClass, MetricEigenvalues, MomentsOfInertia, Tolerances,
};
use serde_json::{json, Map, Value};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_DOMAIN: i32 = 3;

/// A finite number that remembers how it was written, for `--exact`.
#[derive(Clone, Debug, PartialEq)]
pub struct Num {
    raw: String,
    value: f64,
}

impl FromStr for Num {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let value = match s.parse::<f64>() {
            Ok(v) => v,
            Err(_) => parse_rational(s)
                .and_then(|r| num_traits::ToPrimitive::to_f64(&r))
                .ok_or_else(|| format!("`{s}` is not a number"))?,
        };
        if !value.is_finite() {
            return Err(format!("`{s}` is not a finite number"));
        }
        Ok(Num { raw: s.to_string(), value })
    }
}

#[derive(Parser, Debug)]
#[command(
    name = "elliptic-spectra",
    version,
    about = "Curvature, heat invariants and their inversion for left-invariant metrics on S^3 and its quotients"
)]
pub struct Cli {
    #[command(flatten)]
    tolerances: ToleranceArgs,

    /// Print volumes and heat invariants as exact rational multiples of pi^2
    /// when the inputs are exact.
    #[arg(long, global = true)]
    exact: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct ToleranceArgs {
    /// Relative tolerance for multiset equality.
    #[arg(long, global = true, allow_hyphen_values = true, value_name = "TOL")]
    tol_eq: Option<f64>,
    /// Relative q2 residual accepted for a root in the ambiguous case.
    #[arg(long, global = true, allow_hyphen_values = true, value_name = "TOL")]
    tol_root: Option<f64>,
    /// Relative tolerance on discriminants.
    #[arg(long, global = true, allow_hyphen_values = true, value_name = "TOL")]
    tol_disc: Option<f64>,
}

impl ToleranceArgs {
    fn resolve(&self) -> Result<Tolerances, String> {
        let mut tol = Tolerances::default();
        for (name, given, slot) in [
            ("--tol-eq", self.tol_eq, &mut tol.eq),
            ("--tol-root", self.tol_root, &mut tol.root),
            ("--tol-disc", self.tol_disc, &mut tol.disc),
        ] {
            if let Some(v) = given {
                if !(v.is_finite() && v >= 0.0) {
                    return Err(format!("{name} must be a nonnegative number"));
                }
                *slot = v;
            }
        }
        Ok(tol)
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Heat invariants, curvature and classification of a metric.
    #[command(allow_negative_numbers = true)]
    Forward {
        /// Metric eigenvalues relative to the round metric of radius 2.
        #[arg(long, allow_hyphen_values = true, num_args = 3, value_names = ["E1", "E2", "E3"], conflicts_with = "mu", required_unless_present = "mu")]
        eigenvalues: Option<Vec<Num>>,
        /// Christoffel symbols of a Milnor frame.
        #[arg(long, allow_hyphen_values = true, num_args = 3, value_names = ["MU1", "MU2", "MU3"])]
        mu: Option<Vec<Num>>,
        /// Order of the fundamental group.
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
        order: u64,
    },
    /// Recover the metric from the first four heat invariants.
    #[command(allow_negative_numbers = true)]
    Invert {
        #[arg(long, allow_hyphen_values = true)]
        a0: Num,
        #[arg(long, allow_hyphen_values = true)]
        a1: Num,
        #[arg(long, allow_hyphen_values = true)]
        a2: Num,
        #[arg(long, allow_hyphen_values = true)]
        a3: Num,
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
        order: u64,
    },
    /// Isometry classes on a quotient, or lens space diffeomorphism.
    #[command(allow_negative_numbers = true)]
    Classify {
        /// Group as TYPE:params, e.g. I:5,2  II:3,3,1  III:2,1  IV:1,1  V:1  VI:7.
        #[arg(long, requires = "metric_class", conflicts_with = "lens", required_unless_present = "lens")]
        group: Option<String>,
        #[arg(long, value_enum)]
        metric_class: Option<ClassArg>,
        /// Decide whether L(q;1,p1) and L(q;1,p2) are diffeomorphic.
        #[arg(long, num_args = 3, value_names = ["Q", "P1", "P2"])]
        lens: Option<Vec<u64>>,
    },
    /// Recover a metric from principal curvatures and volume.
    #[command(allow_negative_numbers = true)]
    Isocurved {
        /// Principal curvatures K12 K13 K23.
        #[arg(long = "K", allow_hyphen_values = true, alias = "k", num_args = 3, value_names = ["K1", "K2", "K3"], conflicts_with = "degenerate", required_unless_present = "degenerate")]
        k: Option<Vec<Num>>,
        /// Use the degenerate-Ricci construction from scalar curvature and volume.
        #[arg(long, requires = "sc")]
        degenerate: bool,
        /// Scalar curvature, with --degenerate.
        #[arg(long, allow_hyphen_values = true)]
        sc: Option<Num>,
        /// Volume of the quotient.
        #[arg(long, allow_hyphen_values = true)]
        vol: Num,
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
        order: u64,
    },
    /// Moments of inertia and the rotational heat invariants of SO(3).
    #[command(allow_negative_numbers = true)]
    Molecule {
        #[arg(long, allow_hyphen_values = true, num_args = 3, value_names = ["I1", "I2", "I3"], conflicts_with = "invert", required_unless_present = "invert")]
        moments: Option<Vec<Num>>,
        /// Recover moments from the invariants a0 a1 a2 a3.
        #[arg(long, allow_hyphen_values = true, num_args = 4, value_names = ["A0", "A1", "A2", "A3"])]
        invert: Option<Vec<Num>>,
    },
    /// Decide whether two spectra come from locally isometric metrics.
    #[command(allow_negative_numbers = true)]
    Compare {
        /// First record's a0 a1 a2 a3.
        #[arg(long, allow_hyphen_values = true, num_args = 4, value_names = ["A0", "A1", "A2", "A3"])]
        h1: Vec<Num>,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        n1: u64,
        /// Second record's a0 a1 a2 a3.
        #[arg(long, allow_hyphen_values = true, num_args = 4, value_names = ["A0", "A1", "A2", "A3"])]
        h2: Vec<Num>,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        n2: u64,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ClassArg {
    #[value(alias = "constant-curvature", alias = "round")]
    Constant,
    #[value(alias = "berger-non-constant")]
    Berger,
    Generic,
}

impl From<ClassArg> for MetricClass {
    fn from(c: ClassArg) -> Self {
        match c {
            ClassArg::Constant => MetricClass::ConstantCurvature,
            ClassArg::Berger => MetricClass::BergerNonConstant,
            ClassArg::Generic => MetricClass::Generic,
        }
    }
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Forward { .. } => "forward",
            Command::Invert { .. } => "invert",
            Command::Classify { .. } => "classify",
            Command::Isocurved { .. } => "isocurved",
            Command::Molecule { .. } => "molecule",
            Command::Compare { .. } => "compare",
        }
    }
}

/// Why a command did not produce a record.
enum Failure {
    Usage(String),
    Domain(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

/// A successful command's record and summary.
struct Record {
    inputs: Value,
    outputs: Value,
    branch: Option<String>,
    warnings: Vec<String>,
    summary: String,
}

fn values(nums: &[Num]) -> Vec<f64> {
    nums.iter().map(|n| n.value).collect()
}

fn triple_of(nums: &[Num]) -> [f64; 3] {
    [nums[0].value, nums[1].value, nums[2].value]
}

fn order(n: u64) -> GroupOrder {
    GroupOrder::new(n).expect("clap enforces order >= 1")
}

fn heat_of(nums: &[Num]) -> HeatInvariants {
    HeatInvariants { a0: nums[0].value, a1: nums[1].value, a2: nums[2].value, a3: nums[3].value }
}

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("library types serialize to JSON")
}

fn class_name(m: MetricClass) -> String {
    to_value(&m).as_str().unwrap_or_default().to_string()
}

/// Parses `TYPE:params`.
fn parse_group(s: &str) -> Result<EllipticGroup, String> {
    let (tag, params) = s
        .split_once(':')
        .ok_or_else(|| format!("group `{s}` must look like TYPE:params, e.g. I:5,2"))?;
    let params: Vec<u64> = params
        .split(',')
        .map(|p| p.trim().parse::<u64>())
        .collect::<Result<_, _>>()
        .map_err(|_| format!("group parameters in `{s}` must be nonnegative integers"))?;
    let want = |k: usize| -> Result<(), String> {
        if params.len() == k {
            Ok(())
        } else {
            Err(format!("group type {tag} takes {k} parameters, got {}", params.len()))
        }
    };
    let small = |x: u64| u32::try_from(x).map_err(|_| format!("exponent {x} is too large"));
    match tag.trim().to_ascii_uppercase().as_str() {
        "I" => want(2).map(|_| EllipticGroup::TypeI { q: params[0], p: params[1] }),
        "II" => {
            want(3)?;
            Ok(EllipticGroup::TypeII { n: params[0], k: small(params[1])?, q: params[2] })
        }
        "III" => want(2).map(|_| EllipticGroup::TypeIII { n: params[0], q: params[1] }),
        "IV" => {
            want(2)?;
            Ok(EllipticGroup::TypeIV { k: small(params[0])?, q: params[1] })
        }
        "V" => want(1).map(|_| EllipticGroup::TypeV { q: params[0] }),
        "VI" => want(1).map(|_| EllipticGroup::TypeVI { q: params[0] }),
        other => Err(format!("unknown group type `{other}`; expected I, II, III, IV, V or VI")),
    }
}

fn christoffel_json(c: &ChristoffelTriple) -> Value {
    json!({ "mu": c.mu(), "p": c.symmetric() })
}

fn heat_json(h: &HeatInvariants) -> Value {
    json!({ "a0": h.a0, "a1": h.a1, "a2": h.a2, "a3": h.a3 })
}

fn metric_json(c: &ChristoffelTriple, n: GroupOrder, tol: &Tolerances) -> Value {
    let e = christoffel_to_eigenvalues(c);
    let class = classify_metric(&e, tol);
    let cover = covering_volume(c);
    json!({
        "eigenvalues": e.values(),
        "christoffel": christoffel_json(c),
        "metric_class": class,
        "isometry_group": isometry_group_descriptor(class),
        "covering_volume": cover,
        "volume": cover / n.as_f64(),
    })
}

fn exact_forward(
    eigenvalues: &Option<Vec<Num>>,
    mu: &Option<Vec<Num>>,
    n: GroupOrder,
    warnings: &mut Vec<String>,
) -> Option<Value> {
    let parse = |nums: &Vec<Num>| -> Option<[num_rational::BigRational; 3]> {
        let v: Vec<_> = nums.iter().map(|x| parse_rational(&x.raw)).collect::<Option<_>>()?;
        v.try_into().ok()
    };
    let exact = match (eigenvalues, mu) {
        (_, Some(m)) => parse(m).and_then(|m| ExactChristoffel::new(m).ok()),
        (Some(e), None) => match parse(e).map(ExactChristoffel::from_eigenvalues) {
            Some(Ok(Some(c))) => Some(c),
            Some(Ok(None)) => {
                warnings.push(
                    "exact mode needs a rational square root of the eigenvalue product; printed floating point only"
                        .into(),
                );
                return None;
            }
            _ => None,
        },
        (None, None) => None,
    };
    let Some(c) = exact else {
        warnings.push("exact mode needs rational inputs; printed floating point only".into());
        return None;
    };
    let h = c.heat_invariants(n);
    let k = c.curvature();
    let s = |x: &num_rational::BigRational| x.to_string();
    Some(json!({
        "mu": c.mu().iter().map(s).collect::<Vec<_>>(),
        "eigenvalues": c.eigenvalues().iter().map(s).collect::<Vec<_>>(),
        "covering_volume": c.covering_volume().to_string(),
        "heat_invariants": h,
        "curvature": {
            "principal": k.principal.iter().map(s).collect::<Vec<_>>(),
            "ricci": k.ricci.iter().map(s).collect::<Vec<_>>(),
            "sc": s(&k.sc),
            "r2": s(&k.r2),
            "ric2": s(&k.ric2),
            "grad_r2": s(&k.grad_r2),
            "grad_ric2": s(&k.grad_ric2),
        },
    }))
}

fn execute(cmd: &Command, tol: &Tolerances, exact: bool) -> Result<Record, Failure> {
    match cmd {
        Command::Forward { eigenvalues, mu, order: n } => {
            let n = order(*n);
            let (c, inputs) = match (eigenvalues, mu) {
                (Some(e), _) => {
                    let e = MetricEigenvalues::new(triple_of(e))?;
                    (eigenvalues_to_christoffel(&e), json!({ "eigenvalues": e.values(), "order": n.get() }))
                }
                (None, Some(m)) => {
                    let c = ChristoffelTriple::new(triple_of(m), tol)?;
                    (c, json!({ "mu": values(m), "order": n.get() }))
                }
                (None, None) => unreachable!("clap requires --eigenvalues or --mu"),
            };
            let h = heat_invariants(&c, n);
            let mut outputs = metric_json(&c, n, tol);
            let fields = outputs.as_object_mut().expect("object");
            fields.insert("heat_invariants".into(), heat_json(&h));
            fields.insert("curvature".into(), to_value(&curvature_profile(&c)));
            let mut warnings = Vec::new();
            if exact {
                if let Some(x) = exact_forward(eigenvalues, mu, n, &mut warnings) {
                    fields.insert("exact".into(), x);
                }
            }
            let class = class_name(classify_metric(&christoffel_to_eigenvalues(&c), tol));
            Ok(Record {
                summary: format!("{class} metric, a0 = {:e}, Sc = {:e}", h.a0, 2.0 * c.p2()),
                inputs,
                outputs,
                branch: None,
                warnings,
            })
        }
        Command::Invert { a0, a1, a2, a3, order: n } => {
            let n = order(*n);
            let h = heat_of(&[a0.clone(), a1.clone(), a2.clone(), a3.clone()]);
            let r = invert_spectrum(&h, n, tol)?;
            let branch = to_value(&r.branch).as_str().unwrap_or_default().to_string();
            let mut outputs = metric_json(&r.christoffel, n, tol);
            let fields = outputs.as_object_mut().expect("object");
            fields.insert("a3_required".into(), r.a3_required.into());
            fields.insert("degenerate_ricci".into(), r.degenerate_ricci.into());
            fields.insert("forward_residual".into(), r.forward_residual.into());
            Ok(Record {
                summary: format!("recovered eigenvalues {:?} via {branch}", r.eigenvalues.values()),
                inputs: json!({ "heat_invariants": heat_json(&h), "order": n.get() }),
                outputs,
                branch: Some(branch),
                warnings: r.warnings,
            })
        }
        Command::Classify { group, metric_class, lens } => {
            if let Some(l) = lens {
                let (q, p1, p2) = (l[0], l[1], l[2]);
                let same = lens_diffeomorphic(q, p1, p2)?;
                return Ok(Record {
                    summary: format!(
                        "L({q};1,{p1}) and L({q};1,{p2}) are {}diffeomorphic",
                        if same { "" } else { "not " }
                    ),
                    inputs: json!({ "lens": { "q": q, "p1": p1, "p2": p2 } }),
                    outputs: json!({ "diffeomorphic": same }),
                    branch: None,
                    warnings: Vec::new(),
                });
            }
            let text = group.as_deref().expect("clap requires --group or --lens");
            let g = parse_group(text).map_err(Failure::Usage)?;
            let m: MetricClass = metric_class.expect("clap requires --metric-class").into();
            let g = g.validated()?;
            let s = quotient_structure(&g, m)?;
            let mut outputs = to_value(&s);
            let fields = outputs.as_object_mut().expect("object");
            fields.insert("group_order".into(), group_order(&g)?.into());
            fields.insert("table_row".into(), to_value(&elliptic_spectra::classify::table_row(&g)?));
            fields.insert("isometry_group".into(), to_value(&isometry_group_descriptor(m)));
            if let Some(key) = g.lens_key() {
                fields.insert("lens_key".into(), key.into());
            }
            Ok(Record {
                summary: format!("{} isometry class(es), homogeneous {:?}", s.class_count, s.homogeneous_flags),
                inputs: json!({ "group": to_value(&g), "metric_class": m }),
                outputs,
                branch: None,
                warnings: Vec::new(),
            })
        }
        Command::Isocurved { k, degenerate, sc, vol, order: n } => {
            let n = order(*n);
            let (c, inputs) = if *degenerate {
                let s = sc.as_ref().expect("clap requires --sc with --degenerate");
                let c = unique_degenerate_metric(s.value, vol.value, n, tol)?;
                (c, json!({ "degenerate": true, "sc": s.value, "vol": vol.value, "order": n.get() }))
            } else {
                let k = k.as_ref().expect("clap requires --K or --degenerate");
                let c = recover_from_curvature_and_volume(triple_of(k), vol.value, n, tol)?;
                (c, json!({ "K": values(k), "vol": vol.value, "order": n.get() }))
            };
            let mut outputs = metric_json(&c, n, tol);
            outputs
                .as_object_mut()
                .expect("object")
                .insert("curvature".into(), to_value(&curvature_profile(&c)));
            Ok(Record {
                summary: format!("recovered Christoffel symbols {:?}", c.mu()),
                inputs,
                outputs,
                branch: None,
                warnings: Vec::new(),
            })
        }
        Command::Molecule { moments, invert } => {
            if let Some(m) = moments {
                let m = MomentsOfInertia::new(triple_of(m))?;
                let e = moments_to_eigenvalues(&m);
                let h = rotational_invariants(&m);
                let body = body_class(&m, tol);
                return Ok(Record {
                    summary: format!("{} body, a0 = {:e}", class_name_body(body), h.a0),
                    inputs: json!({ "moments": m.values() }),
                    outputs: json!({
                        "eigenvalues": e.values(),
                        "body_class": body,
                        "metric_class": body.metric_class(),
                        "heat_invariants": heat_json(&h),
                    }),
                    branch: None,
                    warnings: Vec::new(),
                });
            }
            let h = heat_of(invert.as_ref().expect("clap requires --moments or --invert"));
            let (m, r) = elliptic_spectra::molecule::recover_moments_with_report(&h, tol)?;
            let body = body_class(&m, tol);
            let branch = to_value(&r.branch).as_str().unwrap_or_default().to_string();
            Ok(Record {
                summary: format!("recovered moments {:?}", m.values()),
                inputs: json!({ "heat_invariants": heat_json(&h) }),
                outputs: json!({
                    "moments": m.values(),
                    "body_class": body,
                    "eigenvalues": r.eigenvalues.values(),
                    "a3_required": r.a3_required,
                }),
                branch: Some(branch),
                warnings: r.warnings,
            })
        }
        Command::Compare { h1, n1, h2, n2 } => {
            let (h1, h2) = (heat_of(h1), heat_of(h2));
            let (n1, n2) = (order(*n1), order(*n2));
            let c = compare_spectra(&h1, n1, &h2, n2, tol)?;
            Ok(Record {
                summary: to_value(&c.verdict).as_str().unwrap_or_default().to_string(),
                inputs: json!({
                    "first": { "heat_invariants": heat_json(&h1), "order": n1.get() },
                    "second": { "heat_invariants": heat_json(&h2), "order": n2.get() },
                }),
                outputs: json!({
                    "verdict": c.verdict,
                    "invariant_discrepancy": c.invariant_discrepancy,
                    "eigenvalues": [
                        c.eigenvalues[0].as_ref().map(|e| e.values()),
                        c.eigenvalues[1].as_ref().map(|e| e.values()),
                    ],
                }),
                branch: None,
                warnings: c.diagnostics,
            })
        }
    }
}

fn class_name_body(b: elliptic_spectra::BodyClass) -> String {
    to_value(&b).as_str().unwrap_or_default().to_lowercase()
}

/// Rewrites every non-integer number with 17 significant digits.
fn fix_floats(v: &mut Value) {
    match v {
        Value::Number(n) if !(n.is_i64() || n.is_u64()) => {
            if let Some(x) = n.as_f64() {
                *n = serde_json::Number::from_str(&format!("{x:.16e}")).expect("valid number");
            }
        }
        Value::Array(items) => items.iter_mut().for_each(fix_floats),
        Value::Object(map) => map.values_mut().for_each(fix_floats),
        _ => {}
    }
}

fn render(mut v: Value) -> String {
    fix_floats(&mut v);
    serde_json::to_string_pretty(&v).expect("JSON values render")
}

fn error_record(command: &str, code: &str, message: &str) -> String {
    render(json!({ "command": command, "error": { "code": code, "message": message } }))
}

/// Runs one invocation and returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            let _ = if code == 0 { write!(out, "{text}") } else { write!(err, "{text}") };
            return code;
        }
    };
    let name = cli.command.name();
    let tol = match cli.tolerances.resolve() {
        Ok(t) => t,
        Err(msg) => {
            let _ = writeln!(err, "{}", error_record(name, "BAD_ARGUMENTS", &msg));
            return EXIT_USAGE;
        }
    };
    match execute(&cli.command, &tol, cli.exact) {
        Ok(rec) => {
            let mut record = Map::new();
            record.insert("command".into(), name.into());
            record.insert("inputs".into(), rec.inputs);
            record.insert("outputs".into(), rec.outputs);
            record.insert("branch".into(), rec.branch.map(Value::from).unwrap_or(Value::Null));
            record.insert("warnings".into(), rec.warnings.to_vec().into());
            let _ = writeln!(out, "{}", render(Value::Object(record)));
            let _ = writeln!(err, "{name}: {}", rec.summary);
            for w in &rec.warnings {
                let _ = writeln!(err, "warning: {w}");
            }
            EXIT_OK
        }
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "{}", error_record(name, "BAD_ARGUMENTS", &msg));
            EXIT_USAGE
        }
        Err(Failure::Domain(e)) => {
            let _ = writeln!(err, "{}", error_record(name, e.code(), &e.to_string()));
            EXIT_DOMAIN
        }
    }
}
