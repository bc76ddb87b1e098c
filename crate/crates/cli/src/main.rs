//! Command-line front end: quivers, cluster characters, oracle counts, basis expansions
//! and the verification suites. Results go to stdout, diagnostics to stderr.

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use clusterkit::basis::{delta_multiple, BasisCatalog, Flavor};
use clusterkit::oracle::{counting_polynomial, KindFamily, ModuleKind, OracleConfig};
use clusterkit::quiver::BUILTIN_NAMES;
use clusterkit::report::Suite;
use clusterkit::verify::{run_suite, VerifyConfig, SUITES};
use clusterkit::{
    builtin, BasisError, ClusterError, ClusterObject, Context, LaurentError, OracleError, Quiver, QuiverError, TubeError,
};

#[derive(Parser, Debug)]
#[command(name = "clusterkit", version, about = "Cluster characters of tame quivers")]
struct Cli {
    /// Builtin name, inline JSON `{"vertices": n, "arrows": [[s,t],...]}` or a path to such a file.
    #[arg(long, global = true, default_value = "kronecker")]
    quiver: String,
    /// Seed for every randomized step; CLUSTERKIT_SEED takes precedence.
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,
    /// Comma-separated primes replacing the automatic ladder.
    #[arg(long, global = true, value_delimiter = ',')]
    primes: Option<Vec<u64>>,
    /// Catalog box as a multiple of δ.
    #[arg(long = "box", global = true, default_value_t = 2)]
    box_multiple: i64,
    /// Number of knitted preprojective and preinjective slices, when larger than needed.
    #[arg(long, global = true)]
    horizon: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Human)]
    format: Format,
    /// Largest total dimension the brute-force oracle enumerates.
    #[arg(long, global = true)]
    max_enum_dim: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Human,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Quiver data.
    Quiver {
        #[arg(value_enum)]
        what: QuiverView,
    },
    /// Cluster character of an object, e.g. "tau^-1 P(2) + shift(1)".
    Ccvar { object: String },
    /// Point counts and Euler characteristic of `Gr_e(M)` for the rigid or generic module of dimension `dims`.
    Oracle { dims: String, e: String },
    /// Expansion of an object, or a product "A * B", in the integral basis.
    Expand { expr: String },
    /// Runs a verification suite.
    Verify { suite: String },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum QuiverView {
    Show,
    Roots,
    Tubes,
}

/// Failure with its exit code: 1 verification, 2 usage, 3 internal.
struct Failure {
    code: u8,
    kind: &'static str,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure { code: 2, kind: "usage", message: message.into() }
    }
    fn internal(message: impl Into<String>) -> Self {
        Failure { code: 3, kind: "internal", message: message.into() }
    }
    fn verification(message: impl Into<String>) -> Self {
        Failure { code: 1, kind: "verification", message: message.into() }
    }
}

impl From<QuiverError> for Failure {
    fn from(e: QuiverError) -> Self {
        Failure::usage(e.to_string())
    }
}

impl From<OracleError> for Failure {
    fn from(e: OracleError) -> Self {
        match e {
            OracleError::NegativeDim
            | OracleError::BadDims { .. }
            | OracleError::TooLarge { .. }
            | OracleError::NotSchurRoot(_)
            | OracleError::NotEnoughPrimes { .. }
            | OracleError::Quiver(_) => Failure::usage(e.to_string()),
            _ => Failure::internal(e.to_string()),
        }
    }
}

impl From<LaurentError> for Failure {
    fn from(e: LaurentError) -> Self {
        Failure::internal(e.to_string())
    }
}

impl From<ClusterError> for Failure {
    fn from(e: ClusterError) -> Self {
        match e {
            ClusterError::Parse(_) | ClusterError::UnknownTube(_) | ClusterError::HorizonTooSmall(_) => {
                Failure::usage(e.to_string())
            }
            ClusterError::Quiver(q) => q.into(),
            ClusterError::Oracle(o) => o.into(),
            _ => Failure::internal(e.to_string()),
        }
    }
}

impl From<BasisError> for Failure {
    fn from(e: BasisError) -> Self {
        match e {
            BasisError::NotInSpan(_) | BasisError::NonIntegerLeading { .. } | BasisError::NotTriangular(_) => {
                Failure::verification(e.to_string())
            }
            BasisError::OutOfBox(_) | BasisError::NotGraded => Failure::usage(e.to_string()),
            BasisError::Cluster(c) => c.into(),
            _ => Failure::internal(e.to_string()),
        }
    }
}

impl From<TubeError> for Failure {
    fn from(e: TubeError) -> Self {
        match e {
            TubeError::BadParameters(_) | TubeError::BadLength(_) => Failure::usage(e.to_string()),
            TubeError::IdentityFailed { .. } => Failure::verification(e.to_string()),
            TubeError::Cluster(c) => c.into(),
            TubeError::Basis(b) => b.into(),
        }
    }
}

fn load_quiver(source: &str) -> Result<Quiver, Failure> {
    if let Some(q) = builtin(source) {
        return Ok(q);
    }
    let text = if source.trim_start().starts_with('{') {
        source.to_string()
    } else {
        std::fs::read_to_string(source).map_err(|e| {
            Failure::usage(format!("{source} is neither a builtin ({}) nor a readable file: {e}", BUILTIN_NAMES.join(", ")))
        })?
    };
    Ok(Quiver::from_json(&text)?)
}

fn parse_vector(text: &str, n: usize) -> Result<Vec<i64>, Failure> {
    let inner = text.trim().trim_start_matches('[').trim_end_matches(']');
    let v: Vec<i64> = inner
        .split(',')
        .map(|s| s.trim().parse::<i64>())
        .collect::<Result<_, _>>()
        .map_err(|_| Failure::usage(format!("cannot parse vector {text}")))?;
    if v.len() != n {
        return Err(Failure::usage(format!("vector {text} has {} entries, the quiver has {n} vertices", v.len())));
    }
    Ok(v)
}

struct Run {
    cli: Cli,
    quiver: Quiver,
    cfg: OracleConfig,
}

impl Run {
    fn context_for(&self, objects: &[&ClusterObject]) -> Result<Context, Failure> {
        let need = objects.iter().map(|o| Context::required_slices(o)).max().unwrap_or(1);
        Ok(Context::new(&self.quiver, need.max(self.cli.horizon.unwrap_or(0)), &self.cfg)?)
    }

    fn parse_object(&self, text: &str) -> Result<ClusterObject, Failure> {
        let probe = Context::new(&self.quiver, 1, &self.cfg)?;
        Ok(probe.parse_object(text)?)
    }

    fn quiver(&self, view: QuiverView) -> Result<(Value, String), Failure> {
        let q = &self.quiver;
        let one_based: Vec<[usize; 2]> = q.arrows().iter().map(|&(s, t)| [s + 1, t + 1]).collect();
        Ok(match view {
            QuiverView::Show => {
                let delta = q.delta().ok().cloned();
                let j = json!({
                    "vertices": q.vertex_count(),
                    "arrows": one_based,
                    "class": q.affine_class().to_string(),
                    "alternating": q.is_alternating(),
                    "delta": delta,
                    "r_matrix": q.r_matrix(),
                });
                let h = format!(
                    "vertices: {}\narrows: {}\nclass: {}\nalternating: {}\ndelta: {}",
                    q.vertex_count(),
                    one_based.iter().map(|[s, t]| format!("{s}->{t}")).collect::<Vec<_>>().join(" "),
                    q.affine_class(),
                    q.is_alternating(),
                    delta.map_or("none".into(), |d| format!("{d:?}")),
                );
                (j, h)
            }
            QuiverView::Roots => {
                let roots = q.real_roots_below_delta()?;
                let h = roots.iter().map(|r| format!("{r:?}")).collect::<Vec<_>>().join("\n");
                (json!(roots), h)
            }
            QuiverView::Tubes => {
                let tubes = q.regular_simple_orbits()?;
                let h = tubes
                    .iter()
                    .map(|t| format!("{} rank {}: {:?}", t.label, t.rank, t.simples))
                    .collect::<Vec<_>>()
                    .join("\n");
                (json!(tubes), h)
            }
        })
    }

    fn ccvar(&self, text: &str) -> Result<(Value, String), Failure> {
        let obj = self.parse_object(text)?;
        let ctx = self.context_for(&[&obj])?;
        let x = ctx.x_of(&obj)?;
        let j = json!({
            "object": obj.to_string(),
            "dim": ctx.dim_vector_of(&obj),
            "value": x.to_string(),
            "terms": x.to_json_terms(),
        });
        Ok((j, x.to_string()))
    }

    fn oracle(&self, dims: &str, e: &str) -> Result<(Value, String), Failure> {
        let q = &self.quiver;
        let n = q.vertex_count();
        let d = parse_vector(dims, n)?;
        let e = parse_vector(e, n)?;
        let delta = q.delta().ok().cloned();
        let multiple = delta.as_ref().and_then(|delta| {
            let k = d.iter().zip(delta).find(|(_, &y)| y != 0).map(|(&x, &y)| x / y)?;
            (k >= 1 && d.iter().zip(delta).all(|(&x, &y)| x == k * y)).then_some(k as usize)
        });
        let kind = match multiple {
            Some(1) => ModuleKind::GenericDelta,
            Some(k) => ModuleKind::Homogeneous(k),
            None if q.tits_form(&d) == 1 => ModuleKind::Exceptional(d.clone()),
            None => return Err(Failure::usage(format!("{d:?} is neither a real Schur root nor a multiple of delta"))),
        };
        let fam = KindFamily::new(q, kind.clone(), self.cfg.seed);
        let poly = counting_polynomial(&fam, &e, &self.cfg)?;
        let chi = poly.euler_characteristic();
        let coefficients: Vec<String> = poly.coefficients.iter().map(|c| c.to_string()).collect();
        let j = json!({
            "module": format!("{kind:?}"),
            "dims": d,
            "e": e,
            "counts": poly.samples.iter().map(|&(p, c)| json!({"prime": p, "count": c})).collect::<Vec<_>>(),
            "polynomial": coefficients,
            "chi": chi.to_string(),
        });
        let mut h = format!("module: {kind:?}\n");
        for &(p, c) in &poly.samples {
            h.push_str(&format!("p = {p}: {c}\n"));
        }
        h.push_str(&format!("polynomial (ascending): {}\nchi: {chi}", coefficients.join(" ")));
        Ok((j, h))
    }

    fn expand(&self, expr: &str) -> Result<(Value, String), Failure> {
        let factors: Vec<ClusterObject> =
            expr.split('*').map(|s| self.parse_object(s)).collect::<Result<_, _>>()?;
        if factors.is_empty() || factors.len() > 2 {
            return Err(Failure::usage("expected `A` or `A * B`"));
        }
        let delta = self.quiver.delta()?.clone();
        let probe = self.context_for(&factors.iter().collect::<Vec<_>>())?;
        let mut top = vec![0i64; delta.len()];
        for f in &factors {
            for (t, d) in top.iter_mut().zip(probe.dim_vector_of(f)) {
                *t += d.max(0);
            }
        }
        let k = (0..delta.len())
            .filter(|&i| delta[i] > 0)
            .map(|i| (top[i] + delta[i] - 1) / delta[i])
            .max()
            .unwrap_or(1)
            .max(self.cli.box_multiple)
            .max(1);
        let bound = delta_multiple(&delta, k);
        let ctx = Context::for_box(&self.quiver, &bound, &self.cfg)?;
        let ctx = if ctx.slices() < probe.slices() { probe } else { ctx };
        let cat = BasisCatalog::build(&ctx, &bound, Flavor::Bprime)?;
        let mut f = ctx.x_of(&factors[0])?;
        if let Some(g) = factors.get(1) {
            f = &f * &ctx.x_of(g)?;
        }
        let e = cat.expand(&f)?;
        let h = e
            .terms
            .iter()
            .map(|(d, c)| format!("{c} * X{d:?}"))
            .collect::<Vec<_>>()
            .join("\n");
        Ok((e.to_json(), h))
    }

    fn verify(&self, name: &str) -> Result<(Value, String, bool), Failure> {
        if !SUITES.contains(&name) {
            return Err(Failure::usage(format!("unknown suite {name}; expected one of {}", SUITES.join(", "))));
        }
        let v = VerifyConfig {
            box_multiple: self.cli.box_multiple,
            seed: self.cfg.seed,
            mode: self.cfg.mode,
            ..VerifyConfig::default()
        };
        let suites = run_suite(name, &self.quiver, &self.cfg, &v)?;
        let pass = suites.iter().all(Suite::pass);
        Ok((json!({"pass": pass, "suites": suites}), table(&suites), pass))
    }
}

/// One row per suite and identity: passed, total, verdict; then the failing parameter sets.
fn table(suites: &[Suite]) -> String {
    let mut out = String::new();
    for s in suites {
        let mut groups: Vec<(&str, usize, usize)> = Vec::new();
        for r in &s.reports {
            match groups.iter_mut().find(|g| g.0 == r.identity) {
                Some(g) => {
                    g.1 += usize::from(r.pass);
                    g.2 += 1;
                }
                None => groups.push((&r.identity, usize::from(r.pass), 1)),
            }
        }
        for (id, ok, total) in groups {
            let verdict = if ok == total { "PASS" } else { "FAIL" };
            out.push_str(&format!("{:<12} {:<36} {:>5}/{:<5} {verdict}\n", s.name, id, ok, total));
        }
        for r in s.failures().take(10) {
            out.push_str(&format!("  failed {} {}\n", r.identity, r.params));
        }
    }
    out.push_str(if suites.iter().all(Suite::pass) { "all passed" } else { "some checks failed" });
    out
}

fn emit(format: Format, j: &Value, h: &str) {
    match format {
        Format::Json => println!("{}", serde_json::to_string_pretty(j).expect("serializable")),
        Format::Human => println!("{h}"),
    }
}

fn run(cli: Cli) -> Result<bool, Failure> {
    let seed = match std::env::var("CLUSTERKIT_SEED") {
        Ok(s) => s.trim().parse().map_err(|_| Failure::usage(format!("CLUSTERKIT_SEED={s} is not an integer")))?,
        Err(_) => cli.seed,
    };
    let mut cfg = OracleConfig { seed, primes: cli.primes.clone(), ..OracleConfig::default() };
    if let Some(n) = cli.max_enum_dim {
        cfg.cap.total = n;
    }
    let quiver = load_quiver(&cli.quiver)?;
    let run = Run { cli, quiver, cfg };
    let format = run.cli.format;
    let (j, h, pass) = match &run.cli.command {
        Command::Quiver { what } => run.quiver(*what).map(|(j, h)| (j, h, true))?,
        Command::Ccvar { object } => run.ccvar(object).map(|(j, h)| (j, h, true))?,
        Command::Oracle { dims, e } => run.oracle(dims, e).map(|(j, h)| (j, h, true))?,
        Command::Expand { expr } => run.expand(expr).map(|(j, h)| (j, h, true))?,
        Command::Verify { suite } => run.verify(suite)?,
    };
    emit(format, &j, &h);
    Ok(pass)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return ExitCode::SUCCESS;
            }
            eprint!("{e}");
            let f = Failure::usage(e.kind().to_string());
            println!("{}", json!({"error": {"kind": f.kind, "message": f.message}}));
            return ExitCode::from(f.code);
        }
    };
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(f) => {
            eprintln!("error: {}", f.message);
            println!("{}", json!({"error": {"kind": f.kind, "message": f.message}}));
            ExitCode::from(f.code)
        }
    }
}
