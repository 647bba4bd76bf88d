use std::collections::BTreeSet;
use std::fs;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use skeleta::io::{
    divisor_from_value, function_from_value, function_to_value, graph_from_value, graph_to_value,
    laplacian_report_to_value, lemma_report_to_value, locus_from_value, locus_to_value, pretty,
    witness_to_value,
};
use skeleta::model_ops::BlowUp;
use skeleta::potential::{
    check_bridge_lemma, check_min_locus_lemma, maximal_bridge_chains, solve_poisson, GraphDivisor,
};
use skeleta::skeleton::{
    canonical_form_locus, essential_skeleton, minimality_lint, witness_bridge_chain, witness_cycle,
    witness_union_locus,
};
use skeleta::weight::{
    apply_blow_up_with_data, ks_skeleton, verify_laplacian_theorem, PluricanonicalModelData,
};
use skeleta::{fixtures, Error, Graph, GraphPoint, MetricKind, Rational, Scalar};

#[derive(Parser)]
#[command(
    name = "skeleta",
    version,
    about = "Weight functions and skeleta on dual graphs of curve models"
)]
struct Cli {
    /// Edge-length formula for edges without an explicit length.
    #[arg(long, global = true, value_enum)]
    metric: Option<Metric>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Metric {
    Model,
    Stable,
}

#[derive(Subcommand)]
enum Command {
    /// Print a named example graph.
    Fixture {
        /// kodaira-II, kodaira-In-star, cycle, theta, dumbbell or path.
        name: String,
        #[arg(long)]
        n: Option<usize>,
    },
    /// Run a verification and print a JSON report.
    Verify {
        subject: Subject,
        #[arg(long)]
        graph: PathBuf,
        /// Model data for laplacian and ks; a lemma instance for min-locus and bridge.
        #[arg(long)]
        data: Option<PathBuf>,
    },
    /// Print the graph in DOT format.
    ExportDot {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        locus: Option<PathBuf>,
    },
    /// Solve for a function whose Laplacian is the given divisor.
    Solve {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        divisor: PathBuf,
        /// Vertex id where the solution vanishes.
        #[arg(long)]
        anchor: String,
        /// JSON object mapping ray labels to slopes.
        #[arg(long)]
        ray_slopes: Option<PathBuf>,
    },
    /// Build and print a witness function for a cycle or a bridge chain.
    Witness {
        kind: WitnessKind,
        #[arg(long)]
        graph: PathBuf,
        /// Comma-separated edge indices: one non-bridge edge, or a bridge chain.
        #[arg(long, value_delimiter = ',', required = true)]
        edges: Vec<usize>,
    },
    /// Apply a list of blow-ups, carrying model data along when given.
    BlowUp {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        ops: PathBuf,
        #[arg(long)]
        data: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Subject {
    Laplacian,
    Ks,
    Essential,
    MinLocus,
    Bridge,
    Nonbridge,
}

#[derive(Clone, Copy, ValueEnum)]
enum WitnessKind {
    Cycle,
    Bridge,
}

enum Failure {
    /// Unreadable or invalid input; exit code 2.
    Input(String),
    /// A verification did not hold; exit code 1.
    Verification(Value),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Internal(msg) => Failure::Verification(json!({"passed": false, "error": msg})),
            other => Failure::Input(other.to_string()),
        }
    }
}

type Outcome = Result<String, Failure>;

fn read_json(path: &Path) -> Result<Value, Failure> {
    let text = if path == Path::new("-") {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Failure::Input(format!("stdin: {e}")))?;
        s
    } else {
        fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?
    };
    serde_json::from_str(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn load_graph(path: &Path, metric: Option<Metric>) -> Result<Graph, Failure> {
    let g: Graph = graph_from_value(read_json(path)?)?;
    Ok(match metric {
        Some(Metric::Model) => g.with_metric(MetricKind::Model),
        Some(Metric::Stable) => g.with_metric(MetricKind::Stable),
        None => g,
    })
}

fn load_data(path: Option<&PathBuf>) -> Result<PluricanonicalModelData, Failure> {
    let path = path.ok_or_else(|| Failure::Input("--data is required for this subject".into()))?;
    serde_json::from_value(read_json(path)?).map_err(|e| Failure::Input(format!("model data: {e}")))
}

fn field(v: &Value, key: &str) -> Result<Value, Failure> {
    v.get(key)
        .cloned()
        .ok_or_else(|| Failure::Input(format!("lemma instance lacks `{key}`")))
}

fn indices(v: Value, key: &str) -> Result<Vec<usize>, Failure> {
    serde_json::from_value(v).map_err(|e| Failure::Input(format!("`{key}`: {e}")))
}

fn verdict(passed: bool, report: Value) -> Outcome {
    if passed {
        Ok(pretty(&report))
    } else {
        Err(Failure::Verification(report))
    }
}

fn verify(subject: Subject, graph: &Graph, data: Option<&PathBuf>) -> Outcome {
    let name = graph.name().unwrap_or("graph");
    match subject {
        Subject::Laplacian => {
            let report = verify_laplacian_theorem(graph, &load_data(data)?)?;
            let mut v = laplacian_report_to_value(graph, &report);
            v["graph"] = json!(name);
            v["passed"] = json!(report.holds());
            verdict(report.holds(), v)
        }
        Subject::Ks => {
            let locus = ks_skeleton(graph, &load_data(data)?)?;
            verdict(
                true,
                json!({"graph": name, "passed": true, "locus": locus_to_value(graph, &locus)}),
            )
        }
        Subject::Essential => {
            let sk = essential_skeleton(graph)?;
            let ids: Vec<&str> = sk.vertices().iter().map(|v| v.id.as_str()).collect();
            verdict(
                true,
                json!({
                    "graph": name,
                    "passed": true,
                    "vertices": ids,
                    "skeleton": graph_to_value(&sk),
                    "lint": minimality_lint(graph),
                }),
            )
        }
        Subject::MinLocus => match data {
            Some(path) => {
                let inst = read_json(path)?;
                let tree: BTreeSet<usize> = indices(field(&inst, "tree")?, "tree")?
                    .into_iter()
                    .collect();
                let e: usize = serde_json::from_value(field(&inst, "edge")?)
                    .map_err(|err| Failure::Input(format!("`edge`: {err}")))?;
                let d = divisor_from_value(graph, field(&inst, "divisor")?)?;
                let f = function_from_value(graph, field(&inst, "function")?)?;
                let report = check_min_locus_lemma(graph, &tree, e, &d, &f)?;
                let mut v = lemma_report_to_value(graph, &report);
                v["graph"] = json!(name);
                verdict(report.passed(), v)
            }
            None => {
                let br = skeleta::potential::bridges(graph);
                let mut out = Vec::new();
                for e in (0..graph.num_edges()).filter(|e| !br.contains(e)) {
                    out.push(json!({"edge": e, "witness": witness_to_value(graph, &witness_cycle(graph, e)?)}));
                }
                verdict(
                    true,
                    json!({"graph": name, "passed": true, "witnesses": out}),
                )
            }
        },
        Subject::Bridge => match data {
            Some(path) => {
                let inst = read_json(path)?;
                let chain = indices(field(&inst, "chain")?, "chain")?;
                let tree: BTreeSet<usize> = indices(field(&inst, "tree")?, "tree")?
                    .into_iter()
                    .collect();
                let d = divisor_from_value(graph, field(&inst, "divisor")?)?;
                let f = function_from_value(graph, field(&inst, "function")?)?;
                let report = check_bridge_lemma(graph, &chain, &tree, &d, &f)?;
                let mut v = lemma_report_to_value(graph, &report);
                v["graph"] = json!(name);
                verdict(report.passed(), v)
            }
            None => {
                let mut out = Vec::new();
                for chain in maximal_bridge_chains(graph) {
                    let w = witness_bridge_chain(graph, &chain.edges)?;
                    out.push(json!({"chain": chain.edges, "witness": witness_to_value(graph, &w)}));
                }
                verdict(
                    true,
                    json!({"graph": name, "passed": true, "witnesses": out}),
                )
            }
        },
        Subject::Nonbridge => {
            let expected = canonical_form_locus(graph)?;
            let found = witness_union_locus(graph)?;
            let passed = expected == found;
            verdict(
                passed,
                json!({
                    "graph": name,
                    "passed": passed,
                    "locus": locus_to_value(graph, &expected),
                    "witness_union": locus_to_value(graph, &found),
                }),
            )
        }
    }
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Fixture { name, n } => {
            let g: Graph = fixtures::by_name(&name, n)?;
            let g = match cli.metric {
                Some(Metric::Stable) => g.with_metric(MetricKind::Stable),
                _ => g,
            };
            Ok(pretty(&graph_to_value(&g)))
        }
        Command::Verify {
            subject,
            graph,
            data,
        } => {
            let g = load_graph(&graph, cli.metric)?;
            verify(subject, &g, data.as_ref())
        }
        Command::ExportDot { graph, locus } => {
            let g = load_graph(&graph, cli.metric)?;
            let l = match locus {
                Some(path) => Some(locus_from_value(&g, read_json(&path)?)?),
                None => None,
            };
            Ok(skeleta::dot::to_dot(&g, l.as_ref()).trim_end().to_string())
        }
        Command::Solve {
            graph,
            divisor,
            anchor,
            ray_slopes,
        } => {
            let g = load_graph(&graph, cli.metric)?;
            let d: GraphDivisor<Rational> = divisor_from_value(&g, read_json(&divisor)?)?;
            let mut slopes = vec![Rational::from_int(0); g.rays().len()];
            if let Some(path) = ray_slopes {
                let map: std::collections::BTreeMap<String, Value> =
                    serde_json::from_value(read_json(&path)?)
                        .map_err(|e| Failure::Input(format!("ray slopes: {e}")))?;
                for (label, v) in map {
                    let text = match v {
                        Value::String(s) => s,
                        other => other.to_string(),
                    };
                    slopes[g.ray_index(&label)?] = Rational::parse_canonical(&text)
                        .ok_or_else(|| Failure::Input(format!("not a rational: `{text}`")))?;
                }
            }
            let anchor = GraphPoint::Vertex(g.vertex_index(&anchor)?);
            let f = solve_poisson(&g, &d, &slopes, &anchor)?;
            Ok(pretty(&function_to_value(&g, &f)))
        }
        Command::Witness { kind, graph, edges } => {
            let g = load_graph(&graph, cli.metric)?;
            let w = match kind {
                WitnessKind::Cycle => {
                    if edges.len() != 1 {
                        return Err(Failure::Input(
                            "a cycle witness takes exactly one edge".into(),
                        ));
                    }
                    witness_cycle(&g, edges[0])?
                }
                WitnessKind::Bridge => witness_bridge_chain(&g, &edges)?,
            };
            Ok(pretty(&witness_to_value(&g, &w)))
        }
        Command::BlowUp { graph, ops, data } => {
            let mut g = load_graph(&graph, cli.metric)?;
            let ops: Vec<BlowUp> = serde_json::from_value(read_json(&ops)?)
                .map_err(|e| Failure::Input(format!("blow-ups: {e}")))?;
            match data {
                Some(path) => {
                    let mut d = load_data(Some(&path))?;
                    for op in &ops {
                        (g, d) = apply_blow_up_with_data(&g, &d, op)?;
                    }
                    Ok(pretty(&json!({"graph": graph_to_value(&g), "data": d})))
                }
                None => {
                    for op in &ops {
                        g = skeleta::model_ops::apply_blow_up(&g, op)?;
                    }
                    Ok(pretty(&graph_to_value(&g)))
                }
            }
        }
    }
}

/// Writes to stdout, ignoring a closed pipe.
fn emit(text: &str) {
    let _ = writeln!(std::io::stdout(), "{text}");
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(out) => {
            emit(&out);
            ExitCode::SUCCESS
        }
        Err(Failure::Verification(report)) => {
            emit(&pretty(&report));
            ExitCode::from(1)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
