//! `gpd`: command-line front end for the finite-groupoid toolkit.
//!
//! Exit codes: 0 — all checks passed; 1 — a mathematical check failed
//! (counterexample in the output); 2 — input error; 3 — resource cap.

mod spec;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use groupoids::algebra::{
    characteristic_of_bisection, convolve, invariance_under_substitution, involution,
    is_positive_definite, unit_function,
};
use groupoids::bisections::{bisection_group, enumerate_bisections, reconstruct, Bisection};
use groupoids::groupoid::{verify_groupoid_axioms, FiniteGroupoid};
use groupoids::morphisms::{decompose, Variance};
use groupoids::symmetroid::{
    canonical_little_symmetroid, canonical_symmetroid, reversibility_symmetroid,
    verify_two_groupoid, TripleCell, TwoGroupoid,
};
use groupoids::symmetry::{
    compute_cocycle, flat_bisection_group, inner_symmetry_group, wigner_embedding,
    SymmetroidBisection,
};
use groupoids::{GroupoidError, Limits};

#[derive(Parser)]
#[command(
    name = "gpd",
    version,
    about = "Finite groupoid and 2-groupoid computations"
)]
struct Cli {
    /// Emit a machine-readable JSON report instead of text
    #[arg(long, global = true)]
    json: bool,
    /// Override the default enumeration caps (a single multiplier)
    #[arg(long, global = true)]
    exhaustive: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum LabelMode {
    Index,
    Paper,
}

#[derive(Clone, Copy, ValueEnum)]
enum SymmetroidKind {
    Little,
    Canonical,
    Reversibility,
}

/// A symmetroid argument: a `.smd` file with declared cells, or a `.gpd`
/// file over which a canonical construction is built.
#[derive(Args)]
struct SymmetroidArg {
    /// Input file (.smd for declared cells, .gpd for a canonical build)
    spec: PathBuf,
    /// Construction used when the input is a groupoid file
    #[arg(long, value_enum, default_value = "canonical")]
    kind: SymmetroidKind,
}

#[derive(Subcommand)]
enum Command {
    /// Check the groupoid axioms of a .gpd spec
    Verify { spec: PathBuf },
    /// Enumerate the bisections of a groupoid
    Bisections { spec: PathBuf },
    /// Print the multiplication table of the bisection group
    Table {
        spec: PathBuf,
        #[arg(long, value_enum, default_value = "index")]
        labels: LabelMode,
    },
    /// Reconstruct the groupoid from its bisection action (kernel, quotient,
    /// isomorphism witness)
    Reconstruct { spec: PathBuf },
    /// Build a canonical symmetroid over a groupoid and verify the
    /// 2-groupoid axioms and the exchange identity
    Symmetroid {
        #[arg(value_enum)]
        kind: SymmetroidKind,
        spec: PathBuf,
    },
    /// Compute the group of flat bisections of a symmetroid
    Flat {
        #[command(flatten)]
        arg: SymmetroidArg,
    },
    /// Compute the inner symmetry group of a symmetroid
    Inner {
        #[command(flatten)]
        arg: SymmetroidArg,
    },
    /// Factor every inner symmetry inside the canonical symmetroid
    Wigner {
        #[command(flatten)]
        arg: SymmetroidArg,
    },
    /// Print the cocycle table of a bisection of the canonical symmetroid
    Cocycle {
        spec: PathBuf,
        /// Per-object arrow labels defining a left translation bisection
        /// b^L_Φ (comma-separated, in object order); identity when omitted
        #[arg(long)]
        left: Option<String>,
    },
    /// Groupoid algebra operations
    Algebra {
        #[command(subcommand)]
        op: AlgebraOp,
    },
    /// Decompose a groupoid into pair groupoids times isotropy groups
    Decompose { spec: PathBuf },
}

#[derive(Subcommand)]
enum AlgebraOp {
    /// Convolve two functions over a groupoid
    Convolve {
        spec: PathBuf,
        f: PathBuf,
        g: PathBuf,
    },
    /// Check positive-definiteness of a function (per-source Gram matrices)
    PdCheck { spec: PathBuf, phi: PathBuf },
    /// Check invariance of a function under the cells of a symmetroid
    Invariance {
        #[command(flatten)]
        arg: SymmetroidArg,
        f: PathBuf,
    },
    /// Verify that characteristic functions of bisections represent the
    /// bisection group unitarily
    RepCheck { spec: PathBuf },
}

/// Outcome of a command: text lines, JSON fields, and a pass verdict.
struct Output {
    lines: Vec<String>,
    results: Value,
    pass: bool,
    counterexamples: Vec<String>,
}

impl Output {
    fn new() -> Self {
        Output {
            lines: Vec::new(),
            results: json!({}),
            pass: true,
            counterexamples: Vec::new(),
        }
    }

    fn line(&mut self, s: impl Into<String>) {
        self.lines.push(s.into());
    }

    fn set(&mut self, key: &str, value: Value) {
        self.results[key] = value;
    }

    fn fail(&mut self, counterexample: impl Into<String>) {
        self.pass = false;
        self.counterexamples.push(counterexample.into());
    }
}

#[derive(Debug)]
enum CliError {
    Input(String),
    Math(String),
    Cap(String),
}

impl From<GroupoidError> for CliError {
    fn from(e: GroupoidError) -> Self {
        match e {
            GroupoidError::CapExceeded(m) => CliError::Cap(m),
            other => CliError::Math(other.to_string()),
        }
    }
}

impl From<spec::ParseError> for CliError {
    fn from(e: spec::ParseError) -> Self {
        CliError::Input(e.0)
    }
}

type CliResult<T> = Result<T, CliError>;

fn read(path: &Path) -> CliResult<String> {
    std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn load_groupoid(path: &Path) -> CliResult<FiniteGroupoid> {
    let g = spec::parse_groupoid(&read(path)?)?;
    Ok(g)
}

fn load_symmetroid(arg: &SymmetroidArg, limits: &Limits) -> CliResult<TwoGroupoid> {
    if arg.spec.extension().is_some_and(|e| e == "smd") {
        return Ok(spec::parse_symmetroid(&read(&arg.spec)?, limits)?);
    }
    let g = load_groupoid(&arg.spec)?;
    let s = match arg.kind {
        SymmetroidKind::Little => canonical_little_symmetroid(&g, limits)?,
        SymmetroidKind::Canonical => canonical_symmetroid(&g, limits)?,
        SymmetroidKind::Reversibility => reversibility_symmetroid(&g, limits)?,
    };
    Ok(s)
}

fn report_into(out: &mut Output, key: &str, report: &groupoids::Report) {
    for line in report.to_string().lines() {
        out.line(line);
    }
    out.set(key, json!(report.to_string()));
    if !report.all_pass() {
        out.fail(
            report
                .first_failure()
                .map(|l| l.to_string())
                .unwrap_or_else(|| "unspecified failure".into()),
        );
    }
}

fn cmd_verify(path: &Path, limits: &Limits) -> CliResult<Output> {
    let g = load_groupoid(path)?;
    let mut out = Output::new();
    out.line(format!(
        "groupoid: {} objects, {} arrows",
        g.n_objects(),
        g.n_arrows()
    ));
    out.set("objects", json!(g.n_objects()));
    out.set("arrows", json!(g.n_arrows()));
    report_into(&mut out, "axioms", &verify_groupoid_axioms(&g, limits));
    Ok(out)
}

fn cmd_bisections(path: &Path, limits: &Limits) -> CliResult<Output> {
    let g = load_groupoid(path)?;
    let bs = enumerate_bisections(&g, limits)?;
    let mut out = Output::new();
    out.line(format!("{} bisections", bs.len()));
    let labels: Vec<String> = bs.iter().map(|b| b.label(&g)).collect();
    for l in &labels {
        out.line(l.clone());
    }
    out.set("count", json!(bs.len()));
    out.set("bisections", json!(labels));
    Ok(out)
}

/// The published element order b_e, b_+, b_-, b_g, b_1…b_4 for the C₂(4)
/// bisection group, resolved through arrow labels.
fn paper_permutation(
    g: &FiniteGroupoid,
    bg: &groupoids::bisections::BisectionGroup,
) -> Option<Vec<usize>> {
    let pairs = [
        ("1_+", "1_-"),
        ("σ_+", "1_-"),
        ("1_+", "σ_-"),
        ("σ_+", "σ_-"),
        ("β_1", "α_1"),
        ("β_2", "α_1"),
        ("β_1", "α_2"),
        ("β_2", "α_2"),
    ];
    pairs
        .iter()
        .map(|&(plus, minus)| {
            let b =
                Bisection::new(g, vec![g.arrow_by_label(plus)?, g.arrow_by_label(minus)?]).ok()?;
            bg.index_of(&b)
        })
        .collect()
}

fn cmd_table(path: &Path, labels: LabelMode, limits: &Limits) -> CliResult<Output> {
    let g = load_groupoid(path)?;
    let bg = bisection_group(&g, limits)?;
    let n = bg.elements.len();
    let (order, names): (Vec<usize>, Vec<String>) = match labels {
        LabelMode::Index => (
            (0..n).collect(),
            bg.elements.iter().map(|b| b.label(&g)).collect(),
        ),
        LabelMode::Paper => {
            let perm = paper_permutation(&g, &bg)
                .ok_or_else(|| CliError::Input("--labels paper requires the C₂(4) spec".into()))?;
            let names = ["b_e", "b_+", "b_-", "b_g", "b_1", "b_2", "b_3", "b_4"];
            (perm, names.iter().map(|s| s.to_string()).collect())
        }
    };
    let back: Vec<usize> = {
        let mut v = vec![0; n];
        for (i, &e) in order.iter().enumerate() {
            v[e] = i;
        }
        v
    };
    let width = names.iter().map(|s| s.chars().count()).max().unwrap_or(1) + 2;
    let pad = |s: &str| {
        let mut t = s.to_string();
        while t.chars().count() < width {
            t.push(' ');
        }
        t
    };
    let mut out = Output::new();
    let mut header = pad("∘");
    for name in &names {
        header.push_str(&pad(name));
    }
    out.line(header.trim_end().to_string());
    let mut rows_json = Vec::new();
    for (r, &re) in order.iter().enumerate() {
        let mut row = pad(&names[r]);
        let mut row_json = Vec::new();
        for &ce in &order {
            let prod = back[bg.group.mul(re, ce)];
            row.push_str(&pad(&names[prod]));
            row_json.push(names[prod].clone());
        }
        out.line(row.trim_end().to_string());
        rows_json.push(json!(row_json));
    }
    out.set("order", json!(names));
    out.set("table", json!(rows_json));
    Ok(out)
}

fn cmd_reconstruct(path: &Path, limits: &Limits) -> CliResult<Output> {
    let g = load_groupoid(path)?;
    let rec = reconstruct(&g, limits)?;
    let mut out = Output::new();
    out.line(format!(
        "bisections: {}; action groupoid: {} arrows; kernel: {} arrows; quotient: {} classes",
        rec.bisections.elements.len(),
        rec.action.n_arrows(),
        rec.kernel.arrows().len(),
        rec.quotient.classes.len()
    ));
    out.set("bisections", json!(rec.bisections.elements.len()));
    out.set("kernel_size", json!(rec.kernel.arrows().len()));
    out.set("classes", json!(rec.quotient.classes.len()));
    out.set("isomorphic", json!(rec.iso.is_some()));
    if rec.iso.is_some() {
        out.line("quotient is isomorphic to the input groupoid".to_string());
    } else {
        out.fail("no isomorphism between the quotient and the input");
    }
    report_into(&mut out, "report", &rec.report);
    Ok(out)
}

fn cmd_symmetroid(kind: SymmetroidKind, path: &Path, limits: &Limits) -> CliResult<Output> {
    let arg = SymmetroidArg {
        spec: path.to_path_buf(),
        kind,
    };
    let s = load_symmetroid(&arg, limits)?;
    let mut out = Output::new();
    out.line(format!(
        "{} cells over {} arrows",
        s.n_cells(),
        s.groupoid.n_arrows()
    ));
    out.set("cells", json!(s.n_cells()));
    report_into(&mut out, "axioms", &verify_two_groupoid(&s, limits));
    Ok(out)
}

fn cmd_flat(arg: &SymmetroidArg, limits: &Limits) -> CliResult<Output> {
    let s = load_symmetroid(arg, limits)?;
    let flats = flat_bisection_group(&s, limits)?;
    let mut out = Output::new();
    out.line(format!(
        "flat bisection group of order {}",
        flats.group.order()
    ));
    let tags: Vec<String> = flats
        .variances
        .iter()
        .map(|v| {
            match v {
                Variance::Covariant => "homomorphic",
                Variance::Contravariant => "antihomomorphic",
            }
            .to_string()
        })
        .collect();
    for (i, tag) in tags.iter().enumerate() {
        out.line(format!("b[{i}]: {tag}"));
    }
    if !flats.excluded.is_empty() {
        out.line(format!(
            "{} antihomomorphic flats excluded from the group carrier (product not flat)",
            flats.excluded.len()
        ));
    }
    let table: Vec<Vec<usize>> = (0..flats.group.order())
        .map(|i| {
            (0..flats.group.order())
                .map(|j| flats.group.mul(i, j))
                .collect()
        })
        .collect();
    for (i, row) in table.iter().enumerate() {
        out.line(format!(
            "{i}: {}",
            row.iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join(" ")
        ));
    }
    out.set("order", json!(flats.group.order()));
    out.set("variances", json!(tags));
    out.set("excluded", json!(flats.excluded.len()));
    out.set("table", json!(table));
    Ok(out)
}

fn cmd_inner(arg: &SymmetroidArg, limits: &Limits) -> CliResult<Output> {
    let s = load_symmetroid(arg, limits)?;
    let inner = inner_symmetry_group(&s, limits)?;
    let mut out = Output::new();
    out.line(format!(
        "inner symmetry group of order {} (flat group order {})",
        inner.group.order(),
        inner.flats.group.order()
    ));
    let witnesses: Vec<Vec<String>> = inner
        .witnesses
        .iter()
        .map(|w| {
            s.groupoid
                .objects()
                .map(|x| s.groupoid.arrow_label(w.component(x)).to_string())
                .collect()
        })
        .collect();
    for (k, &i) in inner.inner.iter().enumerate() {
        out.line(format!("inner b[{i}]: Φ components {:?}", witnesses[k]));
    }
    out.set("order", json!(inner.group.order()));
    out.set("flat_order", json!(inner.flats.group.order()));
    out.set("inner", json!(inner.inner));
    out.set("witnesses", json!(witnesses));
    report_into(&mut out, "report", &inner.report);
    Ok(out)
}

fn cmd_wigner(arg: &SymmetroidArg, limits: &Limits) -> CliResult<Output> {
    let s = load_symmetroid(arg, limits)?;
    let inner = inner_symmetry_group(&s, limits)?;
    let mut out = Output::new();
    let mut certs = Vec::new();
    for &i in &inner.inner {
        let fact = wigner_embedding(&s, &inner.flats.elements[i], limits)?;
        out.line(format!("inner b[{i}]:"));
        for line in fact.report.to_string().lines() {
            out.line(format!("  {line}"));
        }
        let cells = |b: &SymmetroidBisection| -> Vec<String> {
            b.cells()
                .iter()
                .map(|&c| fact.canonical.cell_label(c))
                .collect()
        };
        certs.push(json!({
            "bisection": i,
            "b_phi": cells(&fact.b_phi),
            "left": cells(&fact.left),
            "right": cells(&fact.right),
            "verified": fact.report.all_pass(),
        }));
        if !fact.report.all_pass() {
            out.fail(format!("factorization of inner bisection {i} failed"));
        }
    }
    out.line(format!("{} inner symmetries factored", inner.inner.len()));
    out.set("certificates", json!(certs));
    Ok(out)
}

fn cmd_cocycle(path: &Path, left: Option<&str>, limits: &Limits) -> CliResult<Output> {
    let g = load_groupoid(path)?;
    let s = canonical_symmetroid(&g, limits)?;
    let b = match left {
        None => SymmetroidBisection::identity(&s)?,
        Some(labels) => {
            let per_object: Vec<&str> = labels.split(',').map(str::trim).collect();
            if per_object.len() != g.n_objects() {
                return Err(CliError::Input(format!(
                    "--left needs {} arrow labels",
                    g.n_objects()
                )));
            }
            let mut s_map = Vec::new();
            for a in g.arrows() {
                let y = g.target(a);
                let delta_label = per_object[y.0];
                let delta = g
                    .arrow_by_label(delta_label)
                    .ok_or_else(|| CliError::Input(format!("unknown arrow '{delta_label}'")))?;
                if g.source(delta) != y {
                    return Err(CliError::Input(format!(
                        "arrow '{delta_label}' does not start at object {}",
                        g.object_label(y)
                    )));
                }
                let cell = s
                    .find_triple(&TripleCell {
                        base: a,
                        left: delta,
                        right: g.unit(g.source(a)),
                        parity: groupoids::symmetroid::Parity::Plus,
                    })
                    .ok_or_else(|| {
                        CliError::Math("left translation cell missing from S(G)".into())
                    })?;
                s_map.push(cell);
            }
            SymmetroidBisection::new(&s, s_map)?
        }
    };
    let mut out = Output::new();
    let mut entries = Vec::new();
    let mut trivial = true;
    for (after, first) in g.composable_pairs() {
        let comp = g.compose(after, first).expect("composable");
        let line = match compute_cocycle(&s, &b, after, first) {
            Ok(gamma) => {
                let is_unit = Some(gamma) == s.v_unit(comp);
                trivial &= is_unit;
                format!(
                    "γ({}, {}) = {}{}",
                    g.arrow_label(after),
                    g.arrow_label(first),
                    s.cell_label(gamma),
                    if is_unit { "" } else { "   [nontrivial]" }
                )
            }
            Err(e) => {
                trivial = false;
                format!(
                    "γ({}, {}): undefined ({e})",
                    g.arrow_label(after),
                    g.arrow_label(first)
                )
            }
        };
        entries.push(line.clone());
        out.line(line);
    }
    out.set("entries", json!(entries));
    out.set("trivial", json!(trivial));
    if trivial {
        out.line("cocycle trivial: the bisection is flat (covariant)".to_string());
    } else {
        out.fail("nontrivial cocycle: the bisection is not flat");
    }
    Ok(out)
}

fn function_lines(g: &FiniteGroupoid, f: &groupoids::algebra::GroupoidFunction) -> Vec<String> {
    g.arrows()
        .filter(|&a| f.value(a).norm() > 0.0)
        .map(|a| {
            let v = f.value(a);
            if v.im == 0.0 {
                format!("{} = {}", g.arrow_label(a), v.re)
            } else {
                format!("{} = {} {}", g.arrow_label(a), v.re, v.im)
            }
        })
        .collect()
}

fn cmd_algebra(op: &AlgebraOp, limits: &Limits) -> CliResult<Output> {
    match op {
        AlgebraOp::Convolve { spec, f, g } => {
            let gpd = load_groupoid(spec)?;
            let ff = spec::parse_function(&read(f)?, &gpd)?;
            let gg = spec::parse_function(&read(g)?, &gpd)?;
            let prod = convolve(&gpd, &ff, &gg)?;
            let mut out = Output::new();
            let lines = function_lines(&gpd, &prod);
            if lines.is_empty() {
                out.line("0".to_string());
            }
            for l in &lines {
                out.line(l.clone());
            }
            out.set("result", json!(lines));
            Ok(out)
        }
        AlgebraOp::PdCheck { spec, phi } => {
            let gpd = load_groupoid(spec)?;
            let f = spec::parse_function(&read(phi)?, &gpd)?;
            let report = is_positive_definite(&gpd, &f);
            let mut out = Output::new();
            let mut objects = Vec::new();
            for v in &report.per_object {
                out.line(format!(
                    "object {}: min eigenvalue {:.6e}{}",
                    gpd.object_label(v.object),
                    v.min_eigenvalue,
                    if v.psd { "" } else { "   [not PSD]" }
                ));
                objects.push(json!({
                    "object": gpd.object_label(v.object),
                    "min_eigenvalue": v.min_eigenvalue,
                    "hermitian": v.hermitian,
                    "psd": v.psd,
                }));
            }
            out.set("per_object", json!(objects));
            out.set("positive", json!(report.positive));
            if !report.positive {
                out.fail("function is not positive definite");
            }
            Ok(out)
        }
        AlgebraOp::Invariance { arg, f } => {
            let s = load_symmetroid(arg, limits)?;
            let gpd = s.groupoid.clone();
            let func = spec::parse_function(&read(f)?, &gpd)?;
            let violations = invariance_under_substitution(&gpd, &func, &s)?;
            let mut out = Output::new();
            let labels: Vec<String> = violations.iter().map(|&c| s.cell_label(c)).collect();
            out.line(format!("{} violating cells", violations.len()));
            for l in &labels {
                out.line(l.clone());
            }
            out.set("violations", json!(labels));
            if !violations.is_empty() {
                out.fail(format!("not invariant: {}", labels[0]));
            }
            Ok(out)
        }
        AlgebraOp::RepCheck { spec } => {
            let gpd = load_groupoid(spec)?;
            let bg = bisection_group(&gpd, limits)?;
            let chi: Vec<_> = bg
                .elements
                .iter()
                .map(|b| characteristic_of_bisection(&gpd, b))
                .collect();
            let u = unit_function(&gpd);
            let mut out = Output::new();
            for i in 0..chi.len() {
                for j in 0..chi.len() {
                    let prod = convolve(&gpd, &chi[i], &chi[j])?;
                    if prod != chi[bg.group.mul(i, j)] {
                        out.fail(format!("χ[{i}]∗χ[{j}] ≠ χ[{i}∘{j}]"));
                    }
                }
                if convolve(&gpd, &involution(&gpd, &chi[i]), &chi[i])? != u {
                    out.fail(format!("χ[{i}]*∗χ[{i}] ≠ u"));
                }
            }
            out.line(format!(
                "χ represents the bisection group of order {}: {}",
                bg.elements.len(),
                if out.pass { "pass" } else { "FAIL" }
            ));
            out.set("order", json!(bg.elements.len()));
            Ok(out)
        }
    }
}

fn cmd_decompose(path: &Path) -> CliResult<Output> {
    let g = load_groupoid(path)?;
    let parts = decompose(&g)?;
    let mut out = Output::new();
    let mut components = Vec::new();
    for (objects, dec) in &parts {
        let labels: Vec<String> = objects
            .iter()
            .map(|&x| g.object_label(x).to_string())
            .collect();
        out.line(format!(
            "component {{{}}}: G(Ω_{}) × isotropy of order {}",
            labels.join(", "),
            objects.len(),
            dec.isotropy.order()
        ));
        components.push(json!({
            "objects": labels,
            "isotropy_order": dec.isotropy.order(),
        }));
    }
    out.set("components", json!(components));
    Ok(out)
}

fn run(cli: &Cli) -> CliResult<Output> {
    let limits = if cli.exhaustive {
        Limits::exhaustive()
    } else {
        Limits::default()
    };
    match &cli.command {
        Command::Verify { spec } => cmd_verify(spec, &limits),
        Command::Bisections { spec } => cmd_bisections(spec, &limits),
        Command::Table { spec, labels } => cmd_table(spec, *labels, &limits),
        Command::Reconstruct { spec } => cmd_reconstruct(spec, &limits),
        Command::Symmetroid { kind, spec } => cmd_symmetroid(*kind, spec, &limits),
        Command::Flat { arg } => cmd_flat(arg, &limits),
        Command::Inner { arg } => cmd_inner(arg, &limits),
        Command::Wigner { arg } => cmd_wigner(arg, &limits),
        Command::Cocycle { spec, left } => cmd_cocycle(spec, left.as_deref(), &limits),
        Command::Algebra { op } => cmd_algebra(op, &limits),
        Command::Decompose { spec } => cmd_decompose(spec),
    }
}

fn command_name(cli: &Cli) -> &'static str {
    match &cli.command {
        Command::Verify { .. } => "verify",
        Command::Bisections { .. } => "bisections",
        Command::Table { .. } => "table",
        Command::Reconstruct { .. } => "reconstruct",
        Command::Symmetroid { .. } => "symmetroid",
        Command::Flat { .. } => "flat",
        Command::Inner { .. } => "inner",
        Command::Wigner { .. } => "wigner",
        Command::Cocycle { .. } => "cocycle",
        Command::Algebra { .. } => "algebra",
        Command::Decompose { .. } => "decompose",
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            if cli.json {
                let doc = json!({
                    "schema_version": 1,
                    "command": command_name(&cli),
                    "pass": out.pass,
                    "results": out.results,
                    "counterexamples": out.counterexamples,
                });
                println!(
                    "{}",
                    serde_json::to_string_pretty(&doc).expect("serializable")
                );
            } else {
                for line in &out.lines {
                    println!("{line}");
                }
                if !out.pass {
                    for c in &out.counterexamples {
                        eprintln!("check failed: {c}");
                    }
                }
            }
            if out.pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(CliError::Input(m)) => {
            eprintln!("input error: {m}");
            ExitCode::from(2)
        }
        Err(CliError::Math(m)) => {
            eprintln!("check failed: {m}");
            ExitCode::from(1)
        }
        Err(CliError::Cap(m)) => {
            eprintln!("resource cap exceeded: {m}");
            ExitCode::from(3)
        }
    }
}
