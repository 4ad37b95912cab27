use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use meshlab::analysis::{
    arrow_degrees, component_report, composition_verdict, kernel_path_witness, stabilization_bound_report, Arrowed,
    SearchSummary, Side, Standardness,
};
use meshlab::component::{
    blocks_text, load_component, validate_component, ArComponent, ValidationCertificate, DEFAULT_CAP,
};
use meshlab::decomposition::{decompose, principal_secondary};
use meshlab::format::{self, algebra_field, FunctorFile, MorphismFile, FORMAT_VERSION};
use meshlab::mesh::GradedHomTable;
use meshlab::riedtmann::{
    find_mesh_comparison, parse_arrow_map, table_for, theorem_b_table, verify_mesh_comparison, RiedtmannFunctor,
    SearchConfig, SearchOutcome, DEFAULT_BUDGET,
};
use meshlab::{Error, FieldSpec, Gf101, Gf11, Gf13, Gf2, Gf3, Gf32003, Gf5, Gf7, Rational, Result, Scalar};

#[derive(Parser)]
#[command(name = "meshlab", version, about = "Exact analysis of Auslander-Reiten components")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check that the supplied modules and arrows form an AR component.
    Validate(Common),
    /// Dimensions of the graded slices of the mesh category.
    MeshCat(MeshCatArgs),
    /// Search for a mesh-comparison and write it as a functor file.
    #[command(name = "find-F")]
    FindF(FindArgs),
    /// Check a functor file and the graded bijection it induces.
    #[command(name = "verify-F")]
    VerifyF(VerifyArgs),
    /// Split a morphism into its radical-graded parts.
    Decompose(DecomposeArgs),
    /// Decide whether a composite drops into a higher radical power.
    Compose(ComposeArgs),
    /// Left and right degrees of the chosen morphisms, with kernel paths.
    Degrees(DegreesArgs),
    /// Stabilization index against longest nonzero chosen path, per pair.
    Bounds(FunctorArgs),
    /// Every analysis in one certificate.
    Report(FunctorArgs),
}

#[derive(Args, Clone)]
struct Common {
    algebra: PathBuf,
    component: PathBuf,
    /// Override the field of the algebra file: `Q` or a prime such as `3`.
    #[arg(long)]
    field: Option<String>,
    #[arg(long, env = "MESHLAB_SEED", default_value_t = 0)]
    seed: u64,
    /// Bound on the radical filtration length.
    #[arg(long, default_value_t = DEFAULT_CAP)]
    cap: usize,
    #[arg(short, long)]
    output: Option<PathBuf>,
    /// Human-readable table instead of JSON where one exists.
    #[arg(long)]
    pretty: bool,
}

#[derive(Args, Clone)]
struct SearchArgs {
    /// 1 tries irreducible representatives only, 2 adds rad^2 corrections.
    #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u8).range(1..=2))]
    level: u8,
    /// Comma separated nonzero scalars tried per free parameter.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    grid: Option<Vec<String>>,
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: usize,
}

#[derive(Args)]
struct MeshCatArgs {
    #[command(flatten)]
    common: Common,
    #[arg(long, default_value_t = 8)]
    degree_cap: usize,
}

#[derive(Args)]
struct FindArgs {
    #[command(flatten)]
    common: Common,
    #[command(flatten)]
    search: SearchArgs,
    /// JSON object mapping arrow ids to prescribed blocks.
    #[arg(long)]
    pins: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    common: Common,
    functor: PathBuf,
}

#[derive(Args, Clone)]
struct FunctorArgs {
    #[command(flatten)]
    common: Common,
    /// Functor file; searched for when absent.
    #[arg(long)]
    functor: Option<PathBuf>,
    #[command(flatten)]
    search: SearchArgs,
}

#[derive(Args)]
struct DecomposeArgs {
    #[command(flatten)]
    f: FunctorArgs,
    #[arg(long, conflicts_with = "path", required_unless_present = "path")]
    morphism: Option<PathBuf>,
    /// Comma separated arrow ids, composed through the functor.
    #[arg(long)]
    path: Option<String>,
    /// Seed for recombining graded bases before solving.
    #[arg(long)]
    tie_break: Option<u64>,
}

#[derive(Args)]
struct ComposeArgs {
    #[command(flatten)]
    f: FunctorArgs,
    /// Morphism files, first applied first.
    #[arg(long, conflicts_with = "path", required_unless_present = "path")]
    morphism: Vec<PathBuf>,
    /// Chosen paths, first applied first.
    #[arg(long)]
    path: Vec<String>,
}

#[derive(Args)]
struct DegreesArgs {
    #[command(flatten)]
    f: FunctorArgs,
    #[arg(long)]
    arrow: Option<String>,
}

/// What a subcommand prints and how it exits.
struct Output {
    value: Value,
    table: Option<String>,
    code: u8,
}

impl Output {
    fn new(value: impl Serialize, code: u8) -> Result<Self> {
        Ok(Output {
            value: serde_json::to_value(value)?,
            table: None,
            code,
        })
    }

    fn with_table(mut self, table: String) -> Self {
        self.table = Some(table);
        self
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let common = cli.command.common().clone();
    match run(&cli.command) {
        Ok(out) => match emit(&common, &out) {
            Ok(()) => ExitCode::from(out.code),
            Err(e) => fail(&e),
        },
        Err(e) => fail(&e),
    }
}

fn fail(e: &Error) -> ExitCode {
    eprintln!("{}", json!({ "error": e.kind(), "message": e.to_string() }));
    ExitCode::from(match e {
        Error::Inconclusive(_) => 3,
        Error::Internal(_) => 1,
        _ => 2,
    })
}

fn emit(common: &Common, out: &Output) -> Result<()> {
    let text = match (&out.table, common.pretty) {
        (Some(t), true) => t.clone(),
        _ => serde_json::to_string_pretty(&out.value)? + "\n",
    };
    match &common.output {
        Some(p) => fs::write(p, text).map_err(|e| io_error(p, e)),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

impl Command {
    fn common(&self) -> &Common {
        match self {
            Command::Validate(c) => c,
            Command::MeshCat(a) => &a.common,
            Command::FindF(a) => &a.common,
            Command::VerifyF(a) => &a.common,
            Command::Decompose(a) => &a.f.common,
            Command::Compose(a) => &a.f.common,
            Command::Degrees(a) => &a.f.common,
            Command::Bounds(a) | Command::Report(a) => &a.common,
        }
    }
}

fn io_error(p: &Path, e: std::io::Error) -> Error {
    Error::Parse(format!("{}: {e}", p.display()))
}

fn read(p: &Path) -> Result<String> {
    fs::read_to_string(p).map_err(|e| io_error(p, e))
}

fn parse_field(s: &str) -> Result<FieldSpec> {
    let t = s.trim();
    if matches!(t, "Q" | "q" | "rational") {
        return Ok(FieldSpec::Rational);
    }
    let digits = t.strip_prefix("GF(").and_then(|r| r.strip_suffix(')')).unwrap_or(t);
    let p = digits
        .parse()
        .map_err(|_| Error::InvalidField(format!("cannot read field {s:?}")))?;
    FieldSpec::prime(p)
}

/// The algebra text with the field replaced, if overridden.
fn algebra_text(common: &Common) -> Result<(String, FieldSpec)> {
    let text = read(&common.algebra)?;
    let Some(over) = &common.field else {
        let field = algebra_field(&text)?;
        return Ok((text, field));
    };
    let field = parse_field(over)?;
    let mut v: Value = format::from_json(&text)?;
    v["field"] = serde_json::to_value(field)?;
    Ok((serde_json::to_string(&v)?, field))
}

fn run(cmd: &Command) -> Result<Output> {
    let common = cmd.common();
    let (alg, field) = algebra_text(common)?;
    let comp = read(&common.component)?;
    macro_rules! dispatch {
        ($($p:literal => $t:ty),*) => {
            match field {
                FieldSpec::Rational => execute::<Rational>(cmd, &alg, &comp),
                $(FieldSpec::Prime { p: $p } => execute::<$t>(cmd, &alg, &comp),)*
                FieldSpec::Prime { p } => Err(Error::InvalidField(format!(
                    "GF({p}) is not built in; supported primes are 2, 3, 5, 7, 11, 13, 101, 32003"
                ))),
            }
        };
    }
    dispatch!(2 => Gf2, 3 => Gf3, 5 => Gf5, 7 => Gf7, 11 => Gf11, 13 => Gf13, 101 => Gf101, 32003 => Gf32003)
}

fn execute<S: Scalar>(cmd: &Command, alg: &str, comp: &str) -> Result<Output> {
    let common = cmd.common();
    let loaded = load_component::<S>(alg, comp)?;
    if let Command::MeshCat(a) = cmd {
        return mesh_cat(&loaded.spec, a.degree_cap);
    }
    let validation = validate_component(&loaded, common.seed, common.cap);
    let cert = validation.certificate;
    let Some(c) = validation.component else {
        let table = verdict_table(&cert);
        return Ok(Output::new(&cert, 1)?.with_table(table));
    };
    match cmd {
        Command::Validate(_) => {
            let table = verdict_table(&cert);
            Ok(Output::new(&cert, 0)?.with_table(table))
        }
        Command::MeshCat(_) => unreachable!(),
        Command::FindF(a) => find(&c, a),
        Command::VerifyF(a) => verify(&c, a),
        Command::Decompose(a) => with_functor(&c, &a.f, |f, t| decompose_cmd(&c, f, t, a)),
        Command::Compose(a) => with_functor(&c, &a.f, |f, t| compose_cmd(&c, f, t, a)),
        Command::Degrees(a) => with_functor(&c, &a.f, |f, t| degrees_cmd(&c, f, t, a)),
        Command::Bounds(a) => with_functor(&c, a, |f, t| bounds_cmd(&c, f, t)),
        Command::Report(a) => report(&c, cert, a),
    }
}

fn verdict_table(cert: &ValidationCertificate) -> String {
    let mut s = format!("valid: {}\n", cert.valid);
    for v in &cert.verdicts {
        let mark = if v.pass { "pass" } else { "FAIL" };
        s += &format!("{mark:4}  {:14} {:24} {}\n", v.check, v.subject, v.detail);
    }
    s
}

fn mesh_cat(spec: &meshlab::quiver::TranslationQuiverSpec, cap: usize) -> Result<Output> {
    let tq = meshlab::TranslationQuiver::new(spec)?;
    let table = GradedHomTable::<Rational>::build(&tq, cap);
    let q = tq.quiver();
    let mut rows = Vec::new();
    let mut text = String::new();
    for x in 0..tq.vertex_count() {
        for y in 0..tq.vertex_count() {
            for n in 0..=cap {
                let dim = table.dim(x, y, n)?;
                if dim > 0 {
                    rows.push(json!({ "source": q.vertex_id(x), "target": q.vertex_id(y), "degree": n, "dim": dim }));
                    text += &format!("{:>8} -> {:<8} {n:>3} {dim:>3}\n", q.vertex_id(x), q.vertex_id(y));
                }
            }
        }
    }
    let value = json!({ "format_version": FORMAT_VERSION, "cap": cap, "slices": rows });
    Ok(Output::new(value, 0)?.with_table(text))
}

fn search_config<S: Scalar>(c: &ArComponent<S>, a: &SearchArgs, pins: Option<&Path>) -> Result<SearchConfig<S>> {
    let grid = match &a.grid {
        Some(g) => Some(g.iter().map(|s| S::parse(s)).collect::<Result<Vec<S>>>()?),
        None => None,
    };
    let mut cfg = SearchConfig {
        max_level: a.level,
        grid,
        budget: a.budget,
        ..SearchConfig::default()
    };
    if let Some(p) = pins {
        let map = format::from_json(&read(p)?)?;
        for (arrow, m) in parse_arrow_map(c, &map)?.into_iter().enumerate() {
            if let Some(m) = m {
                cfg.pins.insert(arrow, m);
            }
        }
    }
    Ok(cfg)
}

fn outcome_output<S: Scalar>(outcome: &SearchOutcome<S>) -> Result<Output> {
    let code = match outcome {
        SearchOutcome::Found(..) => 0,
        SearchOutcome::NotMeshComparable(_) => 1,
        SearchOutcome::Unknown(..) => 3,
    };
    let mut v = serde_json::to_value(SearchSummary::of(outcome))?;
    v["format_version"] = json!(FORMAT_VERSION);
    Output::new(v, code)
}

fn find<S: Scalar>(c: &ArComponent<S>, a: &FindArgs) -> Result<Output> {
    let cfg = search_config(c, &a.search, a.pins.as_deref())?;
    let outcome = find_mesh_comparison(c, &cfg)?;
    match &outcome {
        SearchOutcome::Found(f, _) => Output::new(f.to_file(c), 0),
        _ => outcome_output(&outcome),
    }
}

fn load_functor<S: Scalar>(c: &ArComponent<S>, p: &Path) -> Result<RiedtmannFunctor<S>> {
    let file: FunctorFile = format::from_json(&read(p)?)?;
    if file.field != S::field_spec() {
        return Err(Error::InvalidField(format!(
            "functor file is over {}, component over {}",
            file.field,
            S::field_spec()
        )));
    }
    RiedtmannFunctor::from_file(c, &file)
}

fn verify<S: Scalar>(c: &ArComponent<S>, a: &VerifyArgs) -> Result<Output> {
    let f = load_functor(c, &a.functor)?;
    let report = verify_mesh_comparison(c, &f);
    let mut rows = Vec::new();
    if report.passed() {
        rows = theorem_b_table(c, &f, &table_for(c))?;
    }
    let valid = report.passed() && rows.iter().all(|r| r.holds);
    let mut table = format!("valid: {valid}\n");
    for v in &report.verdicts {
        let mark = if v.pass { "pass" } else { "FAIL" };
        table += &format!("{mark:4}  {:14} {:24} {}\n", v.check, v.subject, v.detail);
    }
    let value = json!({
        "format_version": FORMAT_VERSION,
        "seed": c.seed,
        "valid": valid,
        "verdicts": report.verdicts,
        "theorem_b": rows,
    });
    Ok(Output::new(value, if valid { 0 } else { 1 })?.with_table(table))
}

/// Runs `body` with a verified functor: loaded from `--functor`, otherwise
/// searched for. Failures become the command's output.
fn with_functor<S: Scalar>(
    c: &ArComponent<S>,
    a: &FunctorArgs,
    body: impl FnOnce(&RiedtmannFunctor<S>, &GradedHomTable<S>) -> Result<Output>,
) -> Result<Output> {
    let f = match &a.functor {
        Some(p) => {
            let f = load_functor(c, p)?;
            let report = verify_mesh_comparison(c, &f);
            if !report.passed() {
                let value = json!({ "format_version": FORMAT_VERSION, "valid": false, "verdicts": report.verdicts });
                return Output::new(value, 1);
            }
            f
        }
        None => {
            let outcome = find_mesh_comparison(c, &search_config(c, &a.search, None)?)?;
            match outcome {
                SearchOutcome::Found(f, _) => f,
                _ => return outcome_output(&outcome),
            }
        }
    };
    body(&f, &table_for(c))
}

/// A morphism with endpoints, from a file or a comma separated path.
fn morphism<S: Scalar>(
    c: &ArComponent<S>,
    f: &RiedtmannFunctor<S>,
    file: Option<&Path>,
    path: Option<&str>,
) -> Result<Arrowed<S>> {
    let q = c.tq.quiver();
    if let Some(spec) = path {
        let ids: Vec<&str> = spec.split(',').map(str::trim).filter(|s| !s.is_empty()).collect();
        let p = q.path(None, &ids)?;
        let end = p.end(q);
        return Ok(Arrowed::new(p.start, end, f.evaluate_path(c, &p)));
    }
    let file: MorphismFile = format::from_json(&read(file.expect("file or path"))?)?;
    let (x, y) = (c.vertex(&file.source)?, c.vertex(&file.target)?);
    let map = match (&file.blocks, &file.terms) {
        (Some(b), None) => c.parse_morphism(x, y, b)?,
        (None, Some(terms)) => {
            let mut ts = Vec::with_capacity(terms.len());
            for t in terms {
                let ids: Vec<&str> = t.path.iter().map(String::as_str).collect();
                ts.push((t.coef.parse::<S>()?, q.path(Some(&file.source), &ids)?));
            }
            f.evaluate(c, &ts)?
        }
        _ => {
            return Err(Error::Parse(
                "morphism file needs exactly one of \"blocks\" and \"terms\"".into(),
            ))
        }
    };
    Ok(Arrowed::new(x, y, map))
}

fn decompose_cmd<S: Scalar>(
    c: &ArComponent<S>,
    f: &RiedtmannFunctor<S>,
    t: &GradedHomTable<S>,
    a: &DecomposeArgs,
) -> Result<Output> {
    let m = morphism(c, f, a.morphism.as_deref(), a.path.as_deref())?;
    let parts = decompose(c, f, t, m.source, m.target, &m.map, a.tie_break)?;
    let q = c.algebra.quiver();
    let mut v = serde_json::to_value(parts.to_text(c))?;
    v["format_version"] = json!(FORMAT_VERSION);
    v["seed"] = json!(c.seed);
    let mut table = format!(
        "{} -> {}  depth {}\n",
        c.name(m.source),
        c.name(m.target),
        parts.depth()
    );
    if let Ok((p, s)) = principal_secondary(&parts) {
        v["principal"] = serde_json::to_value(blocks_text(q, &p))?;
        v["secondary"] = serde_json::to_value(blocks_text(q, &s))?;
    }
    for (n, p) in &parts.parts {
        table += &format!("part {n}: {}\n", serde_json::to_string(&blocks_text(q, p))?);
    }
    if !parts.infinite_part.is_zero() {
        table += &format!(
            "part inf: {}\n",
            serde_json::to_string(&blocks_text(q, &parts.infinite_part))?
        );
    }
    Ok(Output::new(v, 0)?.with_table(table))
}

fn compose_cmd<S: Scalar>(
    c: &ArComponent<S>,
    f: &RiedtmannFunctor<S>,
    t: &GradedHomTable<S>,
    a: &ComposeArgs,
) -> Result<Output> {
    let chain = if a.path.is_empty() {
        a.morphism
            .iter()
            .map(|p| morphism(c, f, Some(p), None))
            .collect::<Result<Vec<_>>>()?
    } else {
        a.path
            .iter()
            .map(|p| morphism(c, f, None, Some(p)))
            .collect::<Result<Vec<_>>>()?
    };
    let v = composition_verdict(c, f, t, &chain)?;
    let q = c.algebra.quiver();
    let value = json!({
        "format_version": FORMAT_VERSION,
        "depths": v.depths,
        "total": v.total,
        "principal_product": blocks_text(q, &v.principal_product),
        "principal_product_zero": v.principal_product.is_zero(),
        "in_rad_n_plus_1": v.in_rad_n_plus_1,
        "composite_depth": v.composite_depth,
        "consistent": v.consistent(),
    });
    Output::new(value, if v.consistent() { 0 } else { 1 })
}

fn degrees_cmd<S: Scalar>(
    c: &ArComponent<S>,
    f: &RiedtmannFunctor<S>,
    t: &GradedHomTable<S>,
    a: &DegreesArgs,
) -> Result<Output> {
    let q = c.tq.quiver();
    let arrows: Vec<usize> = match &a.arrow {
        Some(id) => vec![q.arrow_by_id(id)?],
        None => (0..q.arrow_count()).collect(),
    };
    let mut degrees = Vec::new();
    let mut kernels = Vec::new();
    let mut table = String::new();
    for &arrow in &arrows {
        let d = arrow_degrees(c, f, arrow)?;
        table += &format!("{:10} left {:>4}  right {:>4}\n", q.arrow(arrow).id, d.left, d.right);
        for (side, deg) in [(Side::Left, d.left), (Side::Right, d.right)] {
            if deg.finite().is_some() {
                let w = kernel_path_witness(c, f, t, arrow, side)?;
                let killed = match side {
                    Side::Left => f.chosen(arrow).after(&w.composite),
                    Side::Right => w.composite.after(f.chosen(arrow)),
                };
                kernels.push(json!({
                    "arrow": q.arrow(arrow).id,
                    "side": side,
                    "vertex": c.name(w.vertex),
                    "degree": w.degree,
                    "path": w.path.arrow_ids(q),
                    "composite_nonzero": !w.composite.is_zero(),
                    "killed": killed.is_zero(),
                }));
            }
        }
        degrees.push(d.to_text(c));
    }
    let value = json!({
        "format_version": FORMAT_VERSION,
        "scope": "relative to supplied modules",
        "degrees": degrees,
        "kernel_paths": kernels,
    });
    Ok(Output::new(value, 0)?.with_table(table))
}

fn bounds_cmd<S: Scalar>(c: &ArComponent<S>, f: &RiedtmannFunctor<S>, t: &GradedHomTable<S>) -> Result<Output> {
    let mut rows = Vec::new();
    let mut table = String::new();
    for x in 0..c.len() {
        for y in 0..c.len() {
            let r = stabilization_bound_report(c, f, t, x, y)?;
            let longest = r.longest_nonzero_path.map_or("-".to_string(), |l| l.to_string());
            table += &format!(
                "{:>8} -> {:<8} m {:>2}  longest {:>2}  {}\n",
                r.source, r.target, r.m, longest, r.consistent
            );
            rows.push(r);
        }
    }
    let ok = rows.iter().all(|r| r.consistent);
    let value = json!({ "format_version": FORMAT_VERSION, "consistent": ok, "pairs": rows });
    Ok(Output::new(value, if ok { 0 } else { 1 })?.with_table(table))
}

fn report<S: Scalar>(c: &ArComponent<S>, cert: ValidationCertificate, a: &FunctorArgs) -> Result<Output> {
    let outcome = match &a.functor {
        Some(p) => {
            let f = load_functor(c, p)?;
            if !verify_mesh_comparison(c, &f).passed() {
                return Err(Error::Precondition(
                    "supplied functor is not a mesh-comparison; run verify-F".into(),
                ));
            }
            SearchOutcome::Found(f, Default::default())
        }
        None => find_mesh_comparison(c, &search_config(c, &a.search, None)?)?,
    };
    let r = component_report(c, cert, &outcome, &table_for(c))?;
    let code = if matches!(outcome, SearchOutcome::Unknown(..)) {
        3
    } else if r.theorem_b.iter().all(|x| x.holds)
        && r.bounds.iter().all(|x| x.consistent)
        && r.standardness.verdict != Standardness::Inconclusive
    {
        0
    } else {
        1
    };
    let mut v = serde_json::to_value(r)?;
    v["format_version"] = json!(FORMAT_VERSION);
    Output::new(v, code)
}
