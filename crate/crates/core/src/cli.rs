//! Command-line front end.
//!
//! [`run`] parses arguments, executes one command and returns the exit code
//! together with the rendered output, so the binary is a thin wrapper and the
//! whole interface can be exercised in-process.
//!
//! Exit codes: 0 success (for `decide`: unirational), 10 not unirational,
//! 2 invalid input, 1 failed table cross-check or internal error.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use indexmap::IndexMap;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::classify::{
    c22_type, c32_type, carter_class, decide_group, involution_kind, reproduce_table, validate_action,
    ClassifyError, DecisionReport, TableReport,
};
use crate::cyclo::{lcm, parse_rational, CycNum};
use crate::families::{evaluate_word, family, FamilyError, FamilyParams, FamilySpec};
use crate::fixedlocus::{eigen_decompose, fixed_points_on_surface, FixedPointReport};
use crate::geometry::{SparsePoly, SurfaceKind, SurfaceModel};
use crate::groups::{generate_in, GroupTag, ProjElement, ProjGroup, DEFAULT_CAP};
use crate::linalg::Matrix;
use crate::lines::{fermat_lines, invariant_picard_rank, invariant_picard_rank_echelon};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_NOT_UNIRATIONAL: i32 = 10;

/// Result of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(code: i32, stdout: String) -> Self {
        Self {
            code,
            stdout,
            stderr: String::new(),
        }
    }

    fn invalid(msg: impl Into<String>) -> Self {
        Self {
            code: EXIT_INVALID,
            stdout: String::new(),
            stderr: format!("error: {}\n", msg.into()),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Parser, Debug)]
#[command(name = "delpezzo", version, about = "Equivariant unirationality of del Pezzo surfaces of degree at least 3")]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Worker threads for independent subgroup checks.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Maximum group order accepted by the closure.
    #[arg(long, global = true, default_value_t = DEFAULT_CAP)]
    pub cap: usize,
    /// Seed for randomized checks.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Decide whether the surface is G-unirational.
    Decide(Source),
    /// Fixed locus of an abelian group and its intersection with the surface.
    Fixed(Source),
    /// Structure, element classes and subgroup type of a group.
    Classify(Source),
    /// Reproduce a classification table (dp4-c22 or dp3-c32).
    Tables { which: String },
    /// Print a built-in family in the surface input format.
    Family {
        name: String,
        #[command(flatten)]
        params: ParamArgs,
    },
    /// The 27 lines of the Fermat cubic and invariant Picard ranks.
    Lines {
        /// Preset group of the Fermat family (default: trivial group).
        #[arg(long)]
        group: Option<String>,
        /// Random subgroups compared by both rank computations.
        #[arg(long, default_value_t = 10)]
        samples: usize,
    },
}

#[derive(Args, Debug, Clone, Default)]
pub struct ParamArgs {
    /// Coefficient alpha of cyclic_cubic.
    #[arg(long)]
    pub alpha: Option<String>,
    /// Comma-separated a_1..a_5 of diagonal_quartic.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub a: Option<Vec<String>>,
    /// Comma-separated a,b,c of a4_cubic.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub abc: Option<Vec<String>>,
}

#[derive(Args, Debug, Clone)]
pub struct Source {
    /// Surface input JSON file.
    pub input: Option<PathBuf>,
    /// Built-in family instead of an input file.
    #[arg(long)]
    pub family: Option<String>,
    #[command(flatten)]
    pub params: ParamArgs,
    /// Preset group name.
    #[arg(long)]
    pub group: Option<String>,
    /// Comma-separated generator words, such as d1,d2*d3^2.
    #[arg(long, value_delimiter = ',')]
    pub generators: Option<Vec<String>>,
}

/// Surface input document.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SurfaceInput {
    pub cyclotomic_order: u32,
    pub model: SurfaceKind,
    pub equations: Vec<SparsePoly>,
    pub generators: IndexMap<String, Matrix>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub presets: Option<PresetRef>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PresetRef {
    pub family: String,
    #[serde(default)]
    pub parameters: IndexMap<String, Vec<CycNum>>,
    #[serde(default)]
    pub groups: IndexMap<String, Vec<String>>,
}

/// A validated input: surface, named generators and preset words.
pub struct Resolved {
    pub surface: SurfaceModel,
    pub generators: IndexMap<String, ProjElement>,
    pub presets: IndexMap<String, Vec<String>>,
}

impl SurfaceInput {
    pub fn from_family(spec: &FamilySpec) -> Self {
        let mut order = spec.surface.order();
        for g in spec.named_generators.values() {
            order = lcm(order, g.lift().order());
        }
        SurfaceInput {
            cyclotomic_order: order,
            model: spec.surface.kind(),
            equations: spec.surface.equations().to_vec(),
            generators: spec
                .named_generators
                .iter()
                .map(|(k, g)| (k.clone(), g.lift().clone()))
                .collect(),
            presets: Some(PresetRef {
                family: spec.name.clone(),
                parameters: spec.parameters.clone(),
                groups: spec.presets.clone(),
            }),
        }
    }

    /// Parse a document; errors name the offending field.
    pub fn parse(text: &str) -> Result<Self, String> {
        let value: serde_json::Value = serde_json::from_str(text).map_err(|e| e.to_string())?;
        let obj = value.as_object().ok_or("expected a JSON object")?;
        const FIELDS: [&str; 5] = ["cyclotomic_order", "model", "equations", "generators", "presets"];
        if let Some(k) = obj.keys().find(|k| !FIELDS.contains(&k.as_str())) {
            return Err(format!("{k}: unknown field, expected one of {}", FIELDS.join(", ")));
        }
        fn field<T: serde::de::DeserializeOwned>(v: Option<&serde_json::Value>, path: &str) -> Result<T, String> {
            let v = v.ok_or_else(|| format!("{path}: missing field"))?;
            T::deserialize(v).map_err(|e| format!("{path}: {e}"))
        }
        let equations = match obj.get("equations") {
            Some(serde_json::Value::Array(items)) => items
                .iter()
                .enumerate()
                .map(|(i, v)| field(Some(v), &format!("equations[{i}]")))
                .collect::<Result<_, _>>()?,
            other => field(other, "equations")?,
        };
        let generators = match obj.get("generators") {
            Some(serde_json::Value::Object(items)) => items
                .iter()
                .map(|(k, v)| Ok((k.clone(), field(Some(v), &format!("generators.{k}"))?)))
                .collect::<Result<_, String>>()?,
            other => field(other, "generators")?,
        };
        Ok(SurfaceInput {
            cyclotomic_order: field(obj.get("cyclotomic_order"), "cyclotomic_order")?,
            model: field(obj.get("model"), "model")?,
            equations,
            generators,
            presets: obj.get("presets").map(|v| field(Some(v), "presets")).transpose()?,
        })
    }

    /// Check the document and build the surface and generators; errors name the offending field.
    pub fn resolve(&self) -> Result<Resolved, String> {
        let n = self.cyclotomic_order;
        if n == 0 {
            return Err("cyclotomic_order: must be positive".into());
        }
        for (i, eq) in self.equations.iter().enumerate() {
            for (exps, c) in eq.terms() {
                if !fits(c, n) {
                    return Err(format!(
                        "equations[{i}]: coefficient of {exps:?} lies outside Q(zeta_{n})"
                    ));
                }
            }
        }
        let surface = SurfaceModel::new(self.model, self.equations.clone()).map_err(|e| format!("equations: {e}"))?;
        let dim = surface.nvars();
        let mut generators = IndexMap::new();
        for (name, m) in &self.generators {
            if m.rows() != dim || m.cols() != dim {
                return Err(format!(
                    "generators.{name}: expected a {dim}x{dim} matrix, got {}x{}",
                    m.rows(),
                    m.cols()
                ));
            }
            if m.entries().iter().any(|c| !fits(c, n)) {
                return Err(format!("generators.{name}: entries lie outside Q(zeta_{n})"));
            }
            let g = ProjElement::new(m.clone()).map_err(|e| format!("generators.{name}: {e}"))?;
            generators.insert(name.clone(), g);
        }
        let presets = self.presets.as_ref().map(|p| p.groups.clone()).unwrap_or_default();
        Ok(Resolved {
            surface,
            generators,
            presets,
        })
    }
}

// Entries carry their own field order, which must divide the declared one unless the value is rational.
fn fits(c: &CycNum, n: u32) -> bool {
    n.is_multiple_of(c.order()) || c.is_rational()
}

fn parse_cyc(s: &str, what: &str) -> Result<CycNum, String> {
    parse_rational(s)
        .map(|r| CycNum::from_rational(r, 1))
        .map_err(|_| format!("--{what}: not a rational number: {s:?}"))
}

fn family_params(p: &ParamArgs) -> Result<FamilyParams, String> {
    let list = |v: &Option<Vec<String>>, what: &str| -> Result<Option<Vec<CycNum>>, String> {
        v.as_ref()
            .map(|xs| xs.iter().map(|s| parse_cyc(s, what)).collect())
            .transpose()
    };
    Ok(FamilyParams {
        alpha: p.alpha.as_deref().map(|s| parse_cyc(s, "alpha")).transpose()?,
        a: list(&p.a, "a")?,
        abc: list(&p.abc, "abc")?,
    })
}

fn load(source: &Source) -> Result<Resolved, String> {
    match (&source.input, &source.family) {
        (Some(_), Some(_)) => Err("give either an input file or --family, not both".into()),
        (None, None) => Err("missing input: give an input file or --family".into()),
        (Some(path), None) => load_file(path),
        (None, Some(name)) => {
            let spec = family(name, &family_params(&source.params)?).map_err(|e| e.to_string())?;
            SurfaceInput::from_family(&spec).resolve()
        }
    }
}

fn load_file(path: &Path) -> Result<Resolved, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    let input = SurfaceInput::parse(&text).map_err(|e| format!("{}: {e}", path.display()))?;
    input.resolve().map_err(|e| format!("{}: {e}", path.display()))
}

/// Generator names or words selected by `--group`/`--generators` (all named generators by default).
fn selected_words(source: &Source, r: &Resolved) -> Result<Vec<String>, String> {
    match (&source.group, &source.generators) {
        (Some(_), Some(_)) => Err("give either --group or --generators, not both".into()),
        (Some(p), None) => r
            .presets
            .get(p)
            .cloned()
            .ok_or_else(|| format!("unknown preset group {p:?}")),
        (None, Some(words)) => Ok(words.clone()),
        (None, None) => Ok(r.generators.keys().cloned().collect()),
    }
}

fn selected(source: &Source, r: &Resolved) -> Result<Vec<(String, ProjElement)>, String> {
    let n = r.surface.nvars();
    selected_words(source, r)?
        .into_iter()
        .map(|w| {
            let g = evaluate_word(&r.generators, n, &w).map_err(|e| e.to_string())?;
            Ok((w, g))
        })
        .collect()
}

/// Parse arguments and run one command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    code: EXIT_INVALID,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Outcome::ok(EXIT_OK, text)
            };
        }
    };
    let threads = cli.threads.unwrap_or(0);
    match rayon::ThreadPoolBuilder::new().num_threads(threads).build() {
        Ok(pool) => pool.install(|| execute(&cli)),
        Err(e) => Outcome::invalid(format!("--threads: {e}")),
    }
}

fn execute(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Decide(source) => cmd_decide(cli, source),
        Command::Fixed(source) => cmd_fixed(cli, source),
        Command::Classify(source) => cmd_classify(cli, source),
        Command::Tables { which } => cmd_tables(cli, which),
        Command::Family { name, params } => cmd_family(name, params),
        Command::Lines { group, samples } => cmd_lines(cli, group.as_deref(), *samples),
    }
}

fn render<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

fn group_of(cli: &Cli, r: &Resolved, gens: &[(String, ProjElement)]) -> Result<ProjGroup, String> {
    let elems: Vec<ProjElement> = gens.iter().map(|(_, g)| g.clone()).collect();
    validate_action(&r.surface, &elems).map_err(|e| match e {
        ClassifyError::ActionDoesNotPreserveSurface(i) => {
            format!("generator {} does not preserve the surface", gens[i].0)
        }
        other => other.to_string(),
    })?;
    generate_in(r.surface.nvars(), &elems, cli.cap).map_err(|e| e.to_string())
}

fn cmd_decide(cli: &Cli, source: &Source) -> Outcome {
    let prepared = load(source).and_then(|r| {
        let gens = selected(source, &r)?;
        let g = group_of(cli, &r, &gens)?;
        Ok((r, g))
    });
    let (r, g) = match prepared {
        Ok(v) => v,
        Err(e) => return Outcome::invalid(e),
    };
    let report = match decide_group(&r.surface, &g) {
        Ok(rep) => rep,
        Err(e) => return Outcome::invalid(e.to_string()),
    };
    let code = if report.unirational { EXIT_OK } else { EXIT_NOT_UNIRATIONAL };
    let out = match cli.format {
        Format::Json => render(&report),
        Format::Text => decision_text(&r.surface, &report),
    };
    Outcome::ok(code, out)
}

fn decision_text(x: &SurfaceModel, report: &DecisionReport) -> String {
    let mut s = String::new();
    writeln!(s, "surface: {} (degree {})", x.kind(), x.kind().del_pezzo_degree()).unwrap();
    writeln!(s, "group order: {}", report.group_order).unwrap();
    writeln!(s, "maximal abelian subgroups up to conjugacy: {}", report.checked.len()).unwrap();
    for c in &report.checked {
        let verdict = if c.has_fixed_point { "has fixed points" } else { "no fixed points" };
        writeln!(s, "  order {:>3} {:<12} {}", c.order, c.structure, verdict).unwrap();
    }
    writeln!(s, "unirational: {}", report.unirational).unwrap();
    if !report.witnesses.is_empty() {
        writeln!(s, "witnesses:").unwrap();
        for w in &report.witnesses {
            writeln!(
                s,
                "  obstruction {}: {} of order {}, elements {:?}",
                w.obstruction, w.structure, w.order, w.subgroup
            )
            .unwrap();
        }
    }
    s
}

fn cmd_fixed(cli: &Cli, source: &Source) -> Outcome {
    let prepared = load(source).and_then(|r| {
        let gens = selected(source, &r)?;
        let g = group_of(cli, &r, &gens)?;
        Ok((r, g))
    });
    let (r, g) = match prepared {
        Ok(v) => v,
        Err(e) => return Outcome::invalid(e),
    };
    let report = match fixed_points_on_surface(&g, &r.surface) {
        Ok(rep) => rep,
        Err(e) => return Outcome::invalid(e.to_string()),
    };
    let out = match cli.format {
        Format::Json => render(&report),
        Format::Text => fixed_text(&g, &report),
    };
    Outcome::ok(EXIT_OK, out)
}

fn fixed_text(g: &ProjGroup, report: &FixedPointReport) -> String {
    let mut s = String::new();
    writeln!(s, "group: {} of order {}", g.tag(), g.order()).unwrap();
    if report.components.is_empty() {
        writeln!(s, "fixed locus in projective space: empty").unwrap();
    }
    for c in &report.components {
        let pdim = c.subspace.dim() - 1;
        let kind = match pdim {
            0 => "point".to_string(),
            1 => "line".to_string(),
            2 => "plane".to_string(),
            d => format!("{d}-plane"),
        };
        let span: Vec<String> = (0..c.subspace.dim())
            .map(|i| {
                let row: Vec<String> = c.subspace.basis().row(i).iter().map(|v| v.to_string()).collect();
                format!("({})", row.join(":"))
            })
            .collect();
        writeln!(s, "{kind} spanned by {}: meets the surface in {} points", span.join(", "), c.meet.count).unwrap();
    }
    if report.has_fixed_point {
        writeln!(s, "has fixed points: true").unwrap();
    } else {
        writeln!(s, "no fixed points").unwrap();
    }
    s
}

fn cmd_classify(cli: &Cli, source: &Source) -> Outcome {
    let prepared = load(source).and_then(|r| {
        let gens = selected(source, &r)?;
        let g = group_of(cli, &r, &gens)?;
        Ok((r, g, gens))
    });
    let (_, g, gens) = match prepared {
        Ok(v) => v,
        Err(e) => return Outcome::invalid(e),
    };
    let mut elements = Vec::new();
    for (word, e) in &gens {
        let eig = match eigen_decompose(e) {
            Ok(eig) => eig,
            Err(err) => return Outcome::invalid(format!("{word}: {err}")),
        };
        let class = match (g.n(), eig.normalized_lift_order) {
            (4, 3) => carter_class(e).ok().map(|c| c.to_string()),
            (5, 2) => involution_kind(e).ok().map(|k| format!("{k:?}")),
            _ => None,
        };
        elements.push(json!({
            "generator": word,
            "order": eig.normalized_lift_order,
            "eigenspace_dimensions": eig.profile(),
            "class": class,
        }));
    }
    let tag = g.tag();
    let subgroup_type = if tag == GroupTag::ElementaryAbelian(2, 2) {
        c22_type(&g).ok().map(|(t, c)| json!({"type": t.to_string(), "counts": c, "labels": ["first", "second"]}))
    } else if tag == GroupTag::ElementaryAbelian(3, 2) && g.n() == 4 {
        c32_type(&g).ok().map(|(t, c)| json!({"type": t.to_string(), "counts": c, "labels": ["3A2", "2A2", "A2"]}))
    } else {
        None
    };
    let value = json!({
        "order": g.order(),
        "structure": tag.to_string(),
        "abelian": g.is_abelian(),
        "generators": elements,
        "subgroup_type": subgroup_type,
    });
    let out = match cli.format {
        Format::Json => render(&value),
        Format::Text => {
            let mut s = String::new();
            writeln!(s, "group: {} of order {}", tag, g.order()).unwrap();
            for e in &elements {
                writeln!(
                    s,
                    "  {}: order {}, eigenspace dimensions {}, class {}",
                    e["generator"].as_str().unwrap_or_default(),
                    e["order"],
                    e["eigenspace_dimensions"],
                    e["class"].as_str().unwrap_or("-"),
                )
                .unwrap();
            }
            if let Some(t) = &value["subgroup_type"].as_object() {
                writeln!(s, "type {} with counts {} ({})", t["type"].as_str().unwrap_or_default(), t["counts"], t["labels"]).unwrap();
            }
            s
        }
    };
    Outcome::ok(EXIT_OK, out)
}

fn cmd_tables(cli: &Cli, which: &str) -> Outcome {
    let report = match reproduce_table(which) {
        Ok(r) => r,
        Err(ClassifyError::UnknownTable(t)) => {
            return Outcome::invalid(format!("unknown table {t:?}; expected dp4-c22 or dp3-c32"))
        }
        Err(e) => return Outcome::invalid(e.to_string()),
    };
    let code = if report.cross_check { EXIT_OK } else { EXIT_FAILURE };
    let out = match cli.format {
        Format::Json => render(&report),
        Format::Text => table_text(&report),
    };
    Outcome::ok(code, out)
}

fn table_text(t: &TableReport) -> String {
    let mut s = String::new();
    writeln!(s, "table {}: {} subgroups", t.table, t.rows.len()).unwrap();
    writeln!(s, "{:>3}  {:<5} {:<14} {:<7} generators", "#", "type", t.count_labels.join("/"), "fixed").unwrap();
    for (i, r) in t.rows.iter().enumerate() {
        let counts: Vec<String> = r.counts.iter().map(|c| c.to_string()).collect();
        writeln!(
            s,
            "{:>3}  {:<5} {:<14} {:<7} {}",
            i + 1,
            r.kind.to_string(),
            counts.join("/"),
            r.has_fixed_point,
            r.generators.join("; ")
        )
        .unwrap();
    }
    let totals: Vec<String> = t.totals.iter().map(|(k, v)| format!("{k}:{v}")).collect();
    writeln!(s, "totals: {}", totals.join(", ")).unwrap();
    for (k, sizes) in &t.orbit_sizes {
        let counts: Vec<String> = t.type_counts[k].iter().map(|c| c.to_string()).collect();
        writeln!(s, "type {k}: counts ({}), orbit sizes {sizes:?}", counts.join(",")).unwrap();
    }
    writeln!(s, "cross-check (type I iff fixed points): {}", if t.cross_check { "ok" } else { "FAILED" }).unwrap();
    s
}

fn cmd_family(name: &str, params: &ParamArgs) -> Outcome {
    let spec = match family_params(params).and_then(|p| family(name, &p).map_err(|e| e.to_string())) {
        Ok(s) => s,
        Err(e) => return Outcome::invalid(e),
    };
    Outcome::ok(EXIT_OK, render(&SurfaceInput::from_family(&spec)))
}

fn cmd_lines(cli: &Cli, group: Option<&str>, samples: usize) -> Outcome {
    let lines = fermat_lines();
    let spec = match family("fermat", &FamilyParams::default()) {
        Ok(s) => s,
        Err(e) => return Outcome::invalid(e.to_string()),
    };
    let g = match group {
        None => ProjGroup::trivial(4),
        Some(p) => match spec.preset_group(p, cli.cap) {
            Ok(g) => g,
            Err(FamilyError::UnknownPreset(p)) => return Outcome::invalid(format!("unknown preset group {p:?}")),
            Err(e) => return Outcome::invalid(e.to_string()),
        },
    };
    let rank = |h: &ProjGroup| -> Result<(usize, usize), String> {
        let a = invariant_picard_rank(h, &lines).map_err(|e| e.to_string())?;
        let b = invariant_picard_rank_echelon(h, &lines).map_err(|e| e.to_string())?;
        Ok((a, b))
    };
    let (trace_rank, echelon_rank) = match rank(&g) {
        Ok(v) => v,
        Err(e) => return Outcome::invalid(e),
    };
    let full = match spec.preset_group("full", cli.cap) {
        Ok(f) => f,
        Err(e) => return Outcome::invalid(e.to_string()),
    };
    let mut rng = ChaCha8Rng::seed_from_u64(cli.seed.unwrap_or(0));
    let mut checks = Vec::new();
    let indices: Vec<usize> = (0..full.order()).collect();
    for _ in 0..samples {
        let k = rng.gen_range(1..=2);
        let picks: Vec<usize> = indices.choose_multiple(&mut rng, k).copied().collect();
        let gens: Vec<ProjElement> = picks.iter().map(|&i| full.element(i).clone()).collect();
        let h = match generate_in(4, &gens, cli.cap) {
            Ok(h) => h,
            Err(e) => return Outcome::invalid(e.to_string()),
        };
        match rank(&h) {
            Ok((a, b)) => checks.push(json!({"elements": picks, "order": h.order(), "trace_rank": a, "echelon_rank": b})),
            Err(e) => return Outcome::invalid(e),
        }
    }
    let agree = trace_rank == echelon_rank && checks.iter().all(|c| c["trace_rank"] == c["echelon_rank"]);
    let code = if agree { EXIT_OK } else { EXIT_FAILURE };
    let value = json!({
        "surface": "fermat",
        "line_count": lines.len(),
        "picard_rank": lines.picard_rank(),
        "group": group.unwrap_or("trivial"),
        "group_order": g.order(),
        "invariant_picard_rank": trace_rank,
        "invariant_picard_rank_echelon": echelon_rank,
        "random_subgroups": checks,
        "lines": lines,
    });
    let out = match cli.format {
        Format::Json => render(&value),
        Format::Text => {
            let mut s = String::new();
            writeln!(s, "Fermat cubic: {} lines, Picard rank {}", lines.len(), lines.picard_rank()).unwrap();
            writeln!(
                s,
                "group {} of order {}: invariant Picard rank {} (trace), {} (echelon)",
                group.unwrap_or("trivial"),
                g.order(),
                trace_rank,
                echelon_rank
            )
            .unwrap();
            for c in &checks {
                writeln!(
                    s,
                    "  random subgroup of order {:>3}: trace {} echelon {}",
                    c["order"], c["trace_rank"], c["echelon_rank"]
                )
                .unwrap();
            }
            writeln!(s, "ranks agree: {agree}").unwrap();
            s
        }
    };
    Outcome::ok(code, out)
}

