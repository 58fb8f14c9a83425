use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use finconv::axioms::{verify_axioms, AxiomOptions, AxiomSample, Suite};
use finconv::builders::{from_finite_topology, from_graph, from_hypergraph, from_scaled_metric, HypergraphMode, Orientation};
use finconv::cells::{attach_cell, default_models, presentation_from_value, serre_check, weak_equivalence_check, CellModel, SerreOptions, WeqOptions};
use finconv::codec::{
    assignment_to_value, chain_to_value, map_between, map_from_value, map_to_value, pretty, read_distance_csv, read_edge_list,
    read_hypergraph, read_json, read_space, read_space_dir, read_topology, space_to_value,
};
use finconv::cofibration::{factorize, hep_solve_with_budget, is_cofibration_with_budget, End};
use finconv::compactness::{adherence, finite_subcover, interior, is_closed, is_covering_system, is_open, CoveringSystem};
use finconv::constructions::{coproduct, function_space_with_cap, product, pushout, quotient, subspace, DEFAULT_EXPONENTIAL_CAP};
use finconv::homotopy::{are_homotopic_within, homotopy_classes_with_cap, is_homotopy_equivalence_with_cap, Homotopy, DEFAULT_MAX_VISITED};
use finconv::invariants::{pi0, pi_n, suspension, winding_oracle, BasedSpace, PiNOptions};
use finconv::search::DEFAULT_NODE_BUDGET;
use finconv::{Error, Space, SpaceMap, Subset};

const VERSION: &str = concat!(env!("CARGO_PKG_VERSION"), " (schema 1)");

#[derive(Parser)]
#[command(name = "finconv", version = VERSION, about = "Finite convergence spaces: constructions, homotopy and cofibrations")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Global {
    /// Emit JSON (default).
    #[arg(long, global = true)]
    json: bool,
    /// Emit an indented plain-text rendering instead of JSON.
    #[arg(long, global = true, conflicts_with = "json")]
    text: bool,
    /// Seed for randomized sampling; without it sampling is evenly spaced.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Retry cofibration checks with cylinders up to this length.
    #[arg(long, global = true, default_value_t = 1)]
    max_cyl: usize,
    /// Node budget for backtracking searches.
    #[arg(long, global = true, default_value_t = DEFAULT_NODE_BUDGET)]
    budget: u64,
    /// Cap on |Y|^|X| for enumerations of maps X → Y.
    #[arg(long, global = true, default_value_t = DEFAULT_EXPONENTIAL_CAP)]
    cap: u128,
    /// Cap on maps visited by shortest-chain searches.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_VISITED)]
    max_visited: usize,
    /// Write the result to a file instead of standard output.
    #[arg(long, short = 'o', global = true)]
    output: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Build a space from a graph, hypergraph, metric or topology.
    #[command(subcommand)]
    Build(Build),
    /// Predicates on spaces and maps.
    #[command(subcommand)]
    Check(Check),
    /// Products, coproducts, subspaces, quotients, pushouts and function spaces.
    #[command(subcommand)]
    Construct(Construct),
    /// Homotopy classes, equivalences and chains.
    #[command(subcommand)]
    Homotopy(HomotopyCmd),
    /// Cofibrations, extension problems, factorizations and axiom suites.
    #[command(subcommand)]
    Cofib(Cofib),
    /// Components, budgeted homotopy groups, suspensions and winding numbers.
    #[command(subcommand)]
    Invariants(Invariants),
    /// Cell attachment, presentations, lifting and weak-equivalence checks.
    #[command(subcommand)]
    Cells(Cells),
}

#[derive(Subcommand)]
enum Build {
    /// Edge list, one `u v` pair per line.
    Graph { file: PathBuf },
    /// Hypergraph JSON.
    Hypergraph {
        file: PathBuf,
        /// Overrides the orientation stored in the file.
        #[arg(long, value_enum)]
        mode: Option<Mode>,
    },
    /// CSV distance matrix.
    Metric {
        file: PathBuf,
        #[arg(long, default_value_t = 1.0)]
        scale: f64,
    },
    /// Finite topology JSON.
    Topology { file: PathBuf },
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Skeleton,
    Faces,
    Cofaces,
}

#[derive(Subcommand)]
enum Check {
    /// Whether a map document is continuous.
    Continuity { map: PathBuf },
    /// Position in the convergence hierarchy.
    Classify { space: PathBuf },
    /// Adherence of a set and whether it is closed or open.
    Closure {
        space: PathBuf,
        /// Comma-separated labels.
        #[arg(long)]
        set: String,
    },
    /// Points at which a family is a covering system.
    Interior {
        space: PathBuf,
        /// Comma-separated labels; repeat for several sets.
        #[arg(long = "set", required = true)]
        sets: Vec<String>,
    },
    /// Covering-system test with an optional minimal subcover.
    Cover {
        space: PathBuf,
        #[arg(long = "set", required = true)]
        sets: Vec<String>,
        /// Comma-separated labels; the whole carrier by default.
        #[arg(long)]
        scope: Option<String>,
        #[arg(long)]
        subcover: bool,
    },
}

#[derive(Subcommand)]
enum Construct {
    Product { left: PathBuf, right: PathBuf },
    Coproduct { left: PathBuf, right: PathBuf },
    Subspace {
        space: PathBuf,
        #[arg(long)]
        set: String,
    },
    /// Classes as `a,b;c,d`; unlisted points stay alone.
    Quotient {
        space: PathBuf,
        #[arg(long)]
        classes: String,
    },
    /// Pushout of two map documents with a common domain.
    Pushout { i: PathBuf, f: PathBuf },
    /// The function space of continuous maps.
    Expspace { domain: PathBuf, codomain: PathBuf },
}

#[derive(Subcommand)]
enum HomotopyCmd {
    /// Homotopy classes of maps between two spaces.
    Classes { domain: PathBuf, codomain: PathBuf },
    /// Whether a map is a homotopy equivalence.
    Equiv { map: PathBuf },
    /// A shortest chain of one-step homotopies between two maps.
    Chain { f: PathBuf, g: PathBuf },
}

#[derive(Subcommand)]
enum Cofib {
    /// Retract test for an inclusion.
    Check {
        map: PathBuf,
        #[arg(long, default_value_t = 1)]
        length: usize,
    },
    /// Extend a homotopy given as a chain of maps on the subspace.
    Hep {
        i: PathBuf,
        f: PathBuf,
        /// Stages of the homotopy, starting at `f ∘ i`.
        #[arg(required = true)]
        chain: Vec<PathBuf>,
    },
    /// Mapping-cylinder factorization with its verification.
    Factorize {
        map: PathBuf,
        #[arg(long, default_value_t = 1)]
        length: usize,
    },
    /// Run an axiom suite over every space JSON in a directory.
    Axioms {
        dir: PathBuf,
        #[arg(long, value_enum, default_value_t = SuiteArg::ICategory)]
        suite: SuiteArg,
        #[arg(long, default_value_t = 1)]
        length: usize,
        /// Maps sampled per ordered pair of spaces.
        #[arg(long, default_value_t = 2)]
        per_pair: usize,
        #[arg(long, default_value_t = 20)]
        factorizations: usize,
        #[arg(long, default_value_t = 10)]
        squares: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    ICategory,
    CofibrationCategory,
}

#[derive(Subcommand)]
enum Invariants {
    Pi0 { space: PathBuf },
    /// Based homotopy classes out of sphere models, per interval length.
    Pin {
        space: PathBuf,
        #[arg(long)]
        base: String,
        #[arg(long, default_value_t = 1)]
        n: usize,
        /// Increasing comma-separated interval lengths.
        #[arg(long, default_value = "4,5,6")]
        budgets: String,
        /// Exit with a budget error unless the last two budgets agree.
        #[arg(long)]
        require_stable: bool,
    },
    Suspend {
        space: PathBuf,
        #[arg(long)]
        base: String,
        #[arg(long, default_value_t = 2)]
        length: usize,
    },
    /// Winding number of a closed walk in a cycle.
    Winding { map: PathBuf },
}

#[derive(Subcommand)]
enum Cells {
    /// Attach one cell along a map given as a JSON object from sphere labels.
    Attach {
        space: PathBuf,
        #[arg(long)]
        dim: usize,
        #[arg(long, default_value_t = 2)]
        length: usize,
        #[arg(long, default_value = "{}")]
        map: String,
    },
    /// Assemble a presentation document.
    Present { file: PathBuf },
    /// Lifting check against disk models.
    Serre {
        map: PathBuf,
        #[arg(long, default_value_t = 2)]
        max_dim: usize,
        #[arg(long, default_value_t = 2)]
        length: usize,
    },
    /// π₀ and budgeted πₙ comparison.
    Weq {
        map: PathBuf,
        #[arg(long, default_value_t = 1)]
        n_max: usize,
        #[arg(long, default_value = "4,5,6")]
        budgets: String,
    },
}

/// A result and the exit code it carries.
struct Outcome {
    value: Value,
    code: u8,
}

impl From<Value> for Outcome {
    fn from(value: Value) -> Self {
        Outcome { value, code: 0 }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => match emit(&cli.global, &out.value) {
            Ok(()) => ExitCode::from(out.code),
            Err(e) => {
                eprintln!("error: {e:#}");
                ExitCode::from(2)
            }
        },
        Err(e) => {
            eprintln!("error: {e:#}");
            let budget = e.chain().any(|c| c.downcast_ref::<Error>().is_some_and(Error::is_budget));
            ExitCode::from(if budget { 3 } else { 2 })
        }
    }
}

fn emit(g: &Global, v: &Value) -> anyhow::Result<()> {
    let text = if g.text {
        let mut out = String::new();
        render_text(v, 0, &mut out);
        out
    } else {
        pretty(v)
    };
    match &g.output {
        Some(path) => std::fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => match std::io::stdout().lock().write_all(text.as_bytes()) {
            Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(e.into()),
            _ => Ok(()),
        },
    }
}

fn render_text(v: &Value, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(map) => {
            for (k, val) in map {
                if is_scalar_list(val) {
                    out.push_str(&format!("{pad}{k}: {}\n", scalar_line(val)));
                } else if val.is_object() || val.is_array() {
                    out.push_str(&format!("{pad}{k}:\n"));
                    render_text(val, indent + 1, out);
                } else {
                    out.push_str(&format!("{pad}{k}: {}\n", scalar_line(val)));
                }
            }
        }
        Value::Array(items) => {
            for item in items {
                if is_scalar_list(item) || !(item.is_object() || item.is_array()) {
                    out.push_str(&format!("{pad}- {}\n", scalar_line(item)));
                } else {
                    out.push_str(&format!("{pad}-\n"));
                    render_text(item, indent + 1, out);
                }
            }
        }
        other => out.push_str(&format!("{pad}{}\n", scalar_line(other))),
    }
}

fn is_scalar_list(v: &Value) -> bool {
    v.as_array().is_some_and(|a| a.iter().all(|x| !(x.is_object() || x.is_array())))
}

fn scalar_line(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Array(a) => a.iter().map(scalar_line).collect::<Vec<_>>().join(" "),
        other => other.to_string(),
    }
}

fn read_text(path: &Path) -> anyhow::Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn load_space(path: &Path) -> anyhow::Result<Arc<Space>> {
    let text = read_text(path)?;
    Ok(Arc::new(read_space(&text).with_context(|| path.display().to_string())?))
}

fn load_map(path: &Path) -> anyhow::Result<SpaceMap> {
    let doc = read_json(&read_text(path)?).with_context(|| path.display().to_string())?;
    map_from_value(&doc).with_context(|| path.display().to_string())
}

fn labels_subset(s: &Space, list: &str) -> anyhow::Result<Subset> {
    let names: Vec<&str> = list.split(',').map(str::trim).filter(|t| !t.is_empty()).collect();
    Ok(s.points().subset(names)?)
}

fn label_list(s: &Space, set: &Subset) -> Value {
    json!(s.points().labels_of(set))
}

fn parse_budgets(text: &str) -> anyhow::Result<Vec<usize>> {
    text.split(',')
        .map(|t| t.trim().parse::<usize>().map_err(|e| anyhow!(Error::InvalidArgument(format!("budget {t:?}: {e}")))))
        .collect()
}

fn run(cli: &Cli) -> anyhow::Result<Outcome> {
    let g = &cli.global;
    if g.max_cyl == 0 {
        bail!(Error::InvalidArgument("--max-cyl must be positive".into()));
    }
    Ok(match &cli.command {
        Command::Build(b) => build(b)?.into(),
        Command::Check(c) => check(c)?.into(),
        Command::Construct(c) => construct(g, c)?.into(),
        Command::Homotopy(h) => homotopy(g, h)?.into(),
        Command::Cofib(c) => return cofib(g, c),
        Command::Invariants(i) => invariants(g, i)?.into(),
        Command::Cells(c) => cells(g, c)?.into(),
    })
}

fn build(b: &Build) -> anyhow::Result<Value> {
    let space = match b {
        Build::Graph { file } => from_graph(&read_edge_list(&read_text(file)?).with_context(|| file.display().to_string())?),
        Build::Hypergraph { file, mode } => {
            let (h, stored) = read_hypergraph(&read_text(file)?).with_context(|| file.display().to_string())?;
            let mode = match mode {
                Some(Mode::Skeleton) => HypergraphMode::Skeleton,
                Some(Mode::Faces) => HypergraphMode::Alexandrov(Orientation::Faces),
                Some(Mode::Cofaces) => HypergraphMode::Alexandrov(Orientation::Cofaces),
                None => stored.map(HypergraphMode::Alexandrov).unwrap_or(HypergraphMode::Skeleton),
            };
            from_hypergraph(&h, mode)?
        }
        Build::Metric { file, scale } => {
            from_scaled_metric(&read_distance_csv(&read_text(file)?, *scale).with_context(|| file.display().to_string())?)
        }
        Build::Topology { file } => {
            from_finite_topology(&read_topology(&read_text(file)?).with_context(|| file.display().to_string())?)?
        }
    };
    Ok(space_to_value(&space))
}

fn check(c: &Check) -> anyhow::Result<Value> {
    Ok(match c {
        Check::Continuity { map } => {
            let f = load_map(map)?;
            let mut out = json!({"continuous": f.is_continuous()});
            if let finconv::Continuity::Violation { generator, limit } = f.continuity() {
                out["violation"] = json!({
                    "filter": label_list(f.domain(), generator),
                    "limit": f.domain().label(*limit),
                });
            }
            out
        }
        Check::Classify { space } => serde_json::to_value(load_space(space)?.classify())?,
        Check::Closure { space, set } => {
            let s = load_space(space)?;
            let a = labels_subset(&s, set)?;
            json!({
                "set": label_list(&s, &a),
                "adherence": label_list(&s, &adherence(&s, &a)),
                "closed": is_closed(&s, &a),
                "open": is_open(&s, &a),
            })
        }
        Check::Interior { space, sets } => {
            let s = load_space(space)?;
            let family = sets.iter().map(|t| labels_subset(&s, t)).collect::<anyhow::Result<Vec<_>>>()?;
            json!({"interior": label_list(&s, &interior(&s, &family))})
        }
        Check::Cover { space, sets, scope, subcover } => {
            let s = load_space(space)?;
            let family = sets.iter().map(|t| labels_subset(&s, t)).collect::<anyhow::Result<Vec<_>>>()?;
            let scope = match scope {
                Some(t) => labels_subset(&s, t)?,
                None => Subset::full(s.len()),
            };
            let cs = CoveringSystem { sets: family, scope };
            let cert = is_covering_system(&s, &cs);
            let mut out = json!({
                "covering": cert.holds,
                "failures": cert.failures.iter().map(|&x| s.label(x)).collect::<Vec<_>>(),
                "witnesses": cert.witnesses.iter().map(|&(x, w)| json!({"point": s.label(x), "set": w})).collect::<Vec<_>>(),
            });
            if *subcover {
                let sub = finite_subcover(&s, &cs)?;
                out["subcover"] = json!({
                    "indices": sub.indices,
                    "sets": sub.sets.iter().map(|x| label_list(&s, x)).collect::<Vec<_>>(),
                    "minimal": sub.minimal,
                });
            }
            out
        }
    })
}

fn construct(g: &Global, c: &Construct) -> anyhow::Result<Value> {
    let space = match c {
        Construct::Product { left, right } => product(&load_space(left)?, &load_space(right)?)?.space,
        Construct::Coproduct { left, right } => coproduct(&load_space(left)?, &load_space(right)?)?.space,
        Construct::Subspace { space, set } => {
            let s = load_space(space)?;
            subspace(&s, &labels_subset(&s, set)?)?.0
        }
        Construct::Quotient { space, classes } => {
            let s = load_space(space)?;
            let mut seen = vec![false; s.len()];
            let mut parts = Vec::new();
            for part in classes.split(';').filter(|p| !p.trim().is_empty()) {
                let members: Vec<usize> = labels_subset(&s, part)?.iter().collect();
                for &m in &members {
                    seen[m] = true;
                }
                parts.push(members);
            }
            parts.extend((0..s.len()).filter(|&x| !seen[x]).map(|x| vec![x]));
            quotient(&s, &parts)?.space
        }
        Construct::Pushout { i, f } => pushout(&load_map(i)?, &load_map(f)?)?.apex,
        Construct::Expspace { domain, codomain } => {
            function_space_with_cap(&load_space(domain)?, &load_space(codomain)?, g.cap)?.space
        }
    };
    Ok(space_to_value(&space))
}

fn homotopy(g: &Global, h: &HomotopyCmd) -> anyhow::Result<Value> {
    Ok(match h {
        HomotopyCmd::Classes { domain, codomain } => {
            let hc = homotopy_classes_with_cap(&load_space(domain)?, &load_space(codomain)?, g.cap)?;
            let classes: Vec<Value> = hc
                .classes
                .iter()
                .zip(hc.representatives())
                .map(|(members, rep)| json!({"size": members.len(), "representative": assignment_to_value(&rep)}))
                .collect();
            json!({"maps": hc.maps.len(), "count": hc.len(), "classes": classes})
        }
        HomotopyCmd::Equiv { map } => {
            let f = load_map(map)?;
            match is_homotopy_equivalence_with_cap(&f, g.cap)? {
                Some(w) => json!({
                    "equivalence": true,
                    "inverse": assignment_to_value(&w.inverse),
                    "chainGf": chain_to_value(&w.chain_gf),
                    "chainFg": chain_to_value(&w.chain_fg),
                }),
                None => json!({"equivalence": false}),
            }
        }
        HomotopyCmd::Chain { f, g: other } => {
            let (f, h) = (load_map(f)?, load_map(other)?);
            let h = h.retarget(f.domain().clone(), f.codomain().clone())?;
            match are_homotopic_within(&f, &h, g.max_visited)? {
                Some(chain) => json!({"homotopic": true, "length": chain.len() - 1, "chain": chain_to_value(&chain)}),
                None => json!({"homotopic": false}),
            }
        }
    })
}

fn cofib(g: &Global, c: &Cofib) -> anyhow::Result<Outcome> {
    Ok(match c {
        Cofib::Check { map, length } => {
            let i = load_map(map)?;
            let mut tried = Vec::new();
            let mut found = None;
            for n in *length..=g.max_cyl.max(*length) {
                tried.push(n);
                let r = is_cofibration_with_budget(&i, n, g.budget)?;
                if let Some(sol) = r.solution {
                    found = Some((n, sol));
                    break;
                }
            }
            match found {
                Some((n, r)) => json!({
                    "cofibration": true,
                    "lengthsTried": tried,
                    "length": n,
                    "retraction": map_to_value(&r),
                }),
                None => json!({"cofibration": false, "lengthsTried": tried}),
            }
            .into()
        }
        Cofib::Hep { i, f, chain } => {
            let (i, f) = (load_map(i)?, load_map(f)?);
            let stages = chain.iter().map(|p| load_map(p)).collect::<anyhow::Result<Vec<_>>>()?;
            let stages = stages
                .iter()
                .map(|s| s.retarget(i.domain().clone(), f.codomain().clone()))
                .collect::<Result<Vec<_>, _>>()?;
            let f = f.retarget(i.codomain().clone(), f.codomain().clone())?;
            let gh = Homotopy::from_chain(&stages)?;
            match hep_solve_with_budget(&i, &f, &gh, End::Zero, g.budget)? {
                Some(h) => json!({"extended": true, "stages": chain_to_value(&h.stages())}),
                None => json!({"extended": false}),
            }
            .into()
        }
        Cofib::Factorize { map, length } => {
            let f = load_map(map)?;
            let fac = factorize(&f, *length)?;
            let report = fac.verify(g.budget)?;
            json!({
                "cylinder": space_to_value(fac.space()),
                "i": assignment_to_value(&fac.i),
                "g": assignment_to_value(&fac.g),
                "report": report,
            })
            .into()
        }
        Cofib::Axioms {
            dir,
            suite,
            length,
            per_pair,
            factorizations,
            squares,
        } => {
            let spaces: Vec<(String, Arc<Space>)> = read_space_dir(dir)?.into_iter().map(|(n, s)| (n, Arc::new(s))).collect();
            if spaces.is_empty() {
                bail!(Error::InvalidArgument(format!("no space documents in {}", dir.display())));
            }
            let opts = AxiomOptions {
                cylinder_length: *length,
                max_cylinder_length: g.max_cyl.max(*length),
                budget: g.budget,
                map_cap: g.cap,
                maps_per_pair: *per_pair,
                factorizations: *factorizations,
                pushout_squares: *squares,
                ..AxiomOptions::default()
            };
            let sample = match g.seed {
                None => AxiomSample::new(spaces, *per_pair, g.cap)?,
                Some(seed) => {
                    let mut rng = ChaCha8Rng::seed_from_u64(seed);
                    AxiomSample::with_picker(spaces, g.cap, |len| {
                        let mut picked = sample(&mut rng, len, (*per_pair).min(len)).into_vec();
                        picked.sort_unstable();
                        picked
                    })?
                }
            };
            let suite = match suite {
                SuiteArg::ICategory => Suite::ICategory,
                SuiteArg::CofibrationCategory => Suite::CofibrationCategory,
            };
            let report = verify_axioms(&sample, suite, &opts)?;
            let mut value = serde_json::to_value(&report)?;
            value["limits"] = json!({
                "budget": g.budget,
                "cap": g.cap.to_string(),
                "maxCylinderLength": opts.max_cylinder_length,
                "mapsPerPair": per_pair,
                "seed": g.seed,
            });
            Outcome {
                value,
                code: report.exit_code() as u8,
            }
        }
    })
}

fn based(path: &Path, base: &str) -> anyhow::Result<BasedSpace> {
    let s = load_space(path)?;
    let b = s.points().require(base)?;
    Ok(BasedSpace::new(s, b)?)
}

fn invariants(g: &Global, i: &Invariants) -> anyhow::Result<Value> {
    Ok(match i {
        Invariants::Pi0 { space } => {
            let s = load_space(space)?;
            let comps = pi0(&s);
            json!({
                "count": comps.len(),
                "components": comps.iter().map(|c| c.iter().map(|&x| s.label(x)).collect::<Vec<_>>()).collect::<Vec<_>>(),
            })
        }
        Invariants::Pin {
            space,
            base,
            n,
            budgets,
            require_stable,
        } => {
            let x = based(space, base)?;
            let opts = PiNOptions {
                budget: g.budget,
                require_stable: *require_stable,
                ..PiNOptions::default()
            };
            serde_json::to_value(pi_n(&x, *n, &parse_budgets(budgets)?, &opts)?)?
        }
        Invariants::Suspend { space, base, length } => {
            let s = suspension(&based(space, base)?, *length)?;
            json!({
                "space": space_to_value(&s.result.space),
                "base": s.result.space.label(s.result.base),
            })
        }
        Invariants::Winding { map } => json!({"winding": winding_oracle(&load_map(map)?)?}),
    })
}

fn cells(g: &Global, c: &Cells) -> anyhow::Result<Value> {
    Ok(match c {
        Cells::Attach { space, dim, length, map } => {
            let x = load_space(space)?;
            let model = CellModel::new(*dim, *length)?;
            let doc = read_json(map).context("--map")?;
            let h = map_between(model.sphere.clone(), x.clone(), &doc, "--map")?;
            let a = attach_cell(&x, &model, &h)?.relabeled("e.")?;
            space_to_value(&a.result)
        }
        Cells::Present { file } => {
            let doc = read_json(&read_text(file)?).with_context(|| file.display().to_string())?;
            presentation_from_value(&doc).with_context(|| file.display().to_string())?.to_value()
        }
        Cells::Serre { map, max_dim, length } => {
            let p = load_map(map)?;
            let opts = SerreOptions {
                budget: g.budget,
                ..SerreOptions::default()
            };
            serde_json::to_value(serre_check(&p, &default_models(*max_dim, *length)?, &opts)?)?
        }
        Cells::Weq { map, n_max, budgets } => {
            let f = load_map(map)?;
            let opts = WeqOptions {
                n_max: *n_max,
                budgets: parse_budgets(budgets)?,
                pi: PiNOptions {
                    budget: g.budget,
                    ..PiNOptions::default()
                },
            };
            serde_json::to_value(weak_equivalence_check(&f, &opts)?)?
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use finconv::codec::SCHEMA_VERSION;

    #[test]
    fn version_names_the_schema() {
        assert!(VERSION.ends_with(&format!("(schema {SCHEMA_VERSION})")));
    }

    #[test]
    fn arguments_parse() {
        Cli::try_parse_from(["finconv", "--text", "cofib", "axioms", "samples", "--suite", "cofibration-category"]).unwrap();
        assert!(Cli::try_parse_from(["finconv", "--json", "--text", "check", "classify", "x"]).is_err());
    }

    #[test]
    fn text_rendering_is_flat_for_scalars() {
        let mut out = String::new();
        render_text(&json!({"a": [1, 2], "b": {"c": "d"}}), 0, &mut out);
        assert_eq!(out, "a: 1 2\nb:\n  c: d\n");
    }
}
