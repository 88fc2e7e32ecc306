//! The `spread` command line. Each subcommand parses its inputs, calls one
//! library operation and prints one JSON document.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use spread_core::closed_form::{blue_perimeter, conjecture_probe, grid_sigma, grid_witness, sigma_closed_form, Cell};
use spread_core::engine::{check_spreading_sequence, closure_scheduled, Canonical};
use spread_core::gadgets::{build_gprime, build_gstar, certify_gprime, certify_gstar};
use spread_core::solver::{ExactSolver, SolveError};
use spread_core::tree::{check_property_pnp, pq_partition, property_pnp_search, sigma_tree, tree_lower_bound, tree_upper_extremal};
use spread_core::{Error, FamilySpec, Graph, Limit, SigmaResult, SpreadParams, Status, VertexSet};

use crate::json::{self, *};
use crate::{edgelist, Parallel, RandomScheduler};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;
pub const EXIT_OPEN: i32 = 4;

/// Result of one invocation: exit code and the two output streams.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn json<T: Serialize>(code: i32, value: &T) -> Self {
        Outcome { code, stdout: json::to_string(value) + "\n", stderr: String::new() }
    }

    fn invalid(message: impl Into<String>) -> Self {
        let message = message.into();
        Outcome {
            code: EXIT_INVALID,
            stdout: json::to_string(&ErrorJson { status: "invalid", message: &message }) + "\n",
            stderr: format!("error: {message}\n"),
        }
    }
}

#[derive(Serialize)]
struct ErrorJson<'a> {
    status: &'static str,
    message: &'a str,
}

#[derive(Debug, Parser)]
#[command(name = "spread", version, about = "(p,q)-spreading on graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct GraphInput {
    /// Edge-list file.
    #[arg(long, value_name = "FILE", conflicts_with = "family")]
    edges: Option<PathBuf>,
    /// Named family, e.g. `path 5`, `grid 3 4`, `product path 3 x cycle 4`.
    #[arg(long, num_args = 1.., value_name = "NAME ARGS")]
    family: Option<Vec<String>>,
}

#[derive(Debug, Args)]
struct ParamInput {
    #[arg(long)]
    p: usize,
    /// Positive integer or `inf`.
    #[arg(long, value_parser = parse_limit)]
    q: Limit,
}

#[derive(Debug, Args)]
struct GridInput {
    #[arg(long)]
    p: usize,
    #[arg(long, value_parser = parse_limit)]
    q: Limit,
    /// Number of columns.
    #[arg(long)]
    m: usize,
    /// Number of rows.
    #[arg(long)]
    n: usize,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum GadgetKind {
    Gstar,
    Gprime,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Closure of a seed set, with its trace.
    Closure {
        #[command(flatten)]
        graph: GraphInput,
        #[command(flatten)]
        params: ParamInput,
        /// Seed vertices, comma separated.
        #[arg(long, default_value = "")]
        set: String,
        /// Color eligible vertices in a random order drawn from this seed.
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Whether a set spreads, optionally along a given sequence.
    Check {
        #[command(flatten)]
        graph: GraphInput,
        #[command(flatten)]
        params: ParamInput,
        #[arg(long, default_value = "")]
        set: String,
        #[arg(long)]
        sequence: Option<String>,
    },
    /// Exact spreading number by exhaustive search.
    Solve {
        #[command(flatten)]
        graph: GraphInput,
        #[command(flatten)]
        params: ParamInput,
        /// Maximum number of closure evaluations.
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Spreading number of a tree with its bounds.
    Tree {
        #[command(flatten)]
        graph: GraphInput,
        #[command(flatten)]
        params: ParamInput,
    },
    /// Minimum partition of a tree into subtrees of max degree q+1.
    Partition {
        #[command(flatten)]
        graph: GraphInput,
        #[arg(long)]
        q: usize,
    },
    /// Closed-form value for a named family.
    Formula {
        #[command(flatten)]
        graph: GraphInput,
        #[command(flatten)]
        params: ParamInput,
    },
    /// Spreading number of the m x n grid.
    Grid {
        #[command(flatten)]
        grid: GridInput,
    },
    /// Explicit minimum spreading set of the m x n grid as [col,row] cells.
    Witness {
        #[command(flatten)]
        grid: GridInput,
    },
    /// Perimeter of the union of the given grid cells.
    Perimeter {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        /// Cells as `col,row` pairs separated by `;` or spaces.
        #[arg(long, default_value = "")]
        cells: String,
    },
    /// Build a reduction graph.
    Gadget {
        kind: GadgetKind,
        #[command(flatten)]
        graph: GraphInput,
        #[arg(long)]
        p: Option<usize>,
        #[arg(long)]
        q: Option<usize>,
    },
    /// Check a reduction equality by exact search.
    Certify {
        kind: GadgetKind,
        #[command(flatten)]
        graph: GraphInput,
        #[arg(long)]
        p: Option<usize>,
        #[arg(long)]
        q: Option<usize>,
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Compare sigma(3,3) and sigma(3,4) on a small grid.
    ProbeConjecture {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Evaluate, or search for, the tree property certifying sigma = f(n,p).
    PropertyPnp {
        #[command(flatten)]
        graph: GraphInput,
        #[arg(long)]
        p: usize,
        #[arg(long)]
        set: Option<String>,
        #[arg(long, requires = "set")]
        sequence: Option<String>,
    },
}

fn parse_limit(s: &str) -> Result<Limit, String> {
    if s.eq_ignore_ascii_case("inf") {
        return Ok(Limit::Infinite);
    }
    match s.parse::<usize>() {
        Ok(q) if q >= 1 => Ok(Limit::Finite(q)),
        _ => Err(format!("expected a positive integer or `inf`, found {s:?}")),
    }
}

/// Runs one invocation; `args` includes the program name.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome { code: EXIT_INVALID, stdout: String::new(), stderr: text }
            } else {
                Outcome { code: EXIT_OK, stdout: text, stderr: String::new() }
            };
        }
    };
    dispatch(cli.command).unwrap_or_else(Outcome::invalid)
}

fn dispatch(command: Command) -> Result<Outcome, String> {
    match command {
        Command::Closure { graph, params, set, seed } => {
            let g = load(&graph)?;
            let params = spread_params(&params)?;
            let set = parse_set(&set, g.order())?;
            let trace = match seed {
                Some(seed) => closure_scheduled(&g, params, &set, &mut RandomScheduler::new(seed)),
                None => closure_scheduled(&g, params, &set, &mut Canonical),
            };
            Ok(Outcome::json(EXIT_OK, &TraceJson::from(&trace)))
        }
        Command::Check { graph, params, set, sequence } => {
            let g = load(&graph)?;
            let params = spread_params(&params)?;
            let set = parse_set(&set, g.order())?;
            let trace = spread_core::closure(&g, params, &set);
            let sequence_valid = match sequence {
                Some(s) => Some(check_spreading_sequence(&g, params, &set, &parse_ids(&s)?).map_err(text)?),
                None => None,
            };
            Ok(Outcome::json(
                EXIT_OK,
                &CheckJson {
                    spreading: trace.final_set.is_full(),
                    size: set.len(),
                    blue: trace.final_set.len(),
                    order: g.order(),
                    sequence_valid,
                    trace: TraceJson::from(&trace),
                },
            ))
        }
        Command::Solve { graph, params, budget } => {
            let g = load(&graph)?;
            let params = spread_params(&params)?;
            let result = ExactSolver::new(&g, params).budget(budget).solve_using(&mut Parallel::default());
            solved(result)
        }
        Command::Tree { graph, params } => {
            let g = load(&graph)?;
            let params = spread_params(&params)?;
            if !g.is_tree() {
                return Err(Error::NotATree.to_string());
            }
            let sigma = match sigma_tree(&g, params) {
                Ok(r) => r,
                Err(e) => return solved(Err(e)),
            };
            let n = g.order();
            let p = params.p();
            let lower_bound = (p >= 2).then(|| tree_lower_bound(n, p)).transpose().map_err(text)?;
            let upper_bound = (p >= 2 && n >= 5)
                .then(|| tree_upper_extremal(&g, params))
                .transpose()
                .map_err(text)?;
            Ok(Outcome::json(
                EXIT_OK,
                &TreeJson {
                    n,
                    p,
                    q: params.q().into(),
                    lower_bound,
                    upper_bound: upper_bound.as_ref().map(ExtremalJson::from),
                    sigma: SigmaJson::from(&sigma),
                },
            ))
        }
        Command::Partition { graph, q } => {
            let g = load(&graph)?;
            let partition = pq_partition(&g, q).map_err(text)?;
            Ok(Outcome::json(EXIT_OK, &PartitionJson::new(q, &partition)))
        }
        Command::Formula { graph, params } => {
            let Some(tokens) = &graph.family else {
                return Err("formula needs --family".into());
            };
            let spec = parse_family(tokens)?;
            let params = spread_params(&params)?;
            Ok(sigma_outcome(&sigma_closed_form(&spec, params).map_err(text)?))
        }
        Command::Grid { grid } => {
            let (params, m, n) = grid_params(&grid)?;
            Ok(sigma_outcome(&grid_sigma(params, m, n)))
        }
        Command::Witness { grid } => {
            let (params, m, n) = grid_params(&grid)?;
            match grid_witness(params, m, n) {
                Ok(cells) => Ok(Outcome::json(EXIT_OK, &cells_json(&cells))),
                Err(Error::Open(_)) => Ok(sigma_outcome(&SigmaResult::open())),
                Err(e) => Err(e.to_string()),
            }
        }
        Command::Perimeter { m, n, cells } => {
            let cells = parse_cells(&cells)?;
            let perimeter = blue_perimeter(m, n, &cells).map_err(text)?;
            Ok(Outcome::json(EXIT_OK, &PerimeterJson { m, n, cells: cells.len(), perimeter }))
        }
        Command::Gadget { kind, graph, p, q } => {
            let g = load(&graph)?;
            let built = match kind {
                GadgetKind::Gstar => build_gstar(&g, q.ok_or("gstar needs --q")?),
                GadgetKind::Gprime => build_gprime(&g, p.ok_or("gprime needs --p")?),
            }
            .map_err(text)?;
            Ok(Outcome::json(EXIT_OK, &GadgetJson::from(&built)))
        }
        Command::Certify { kind, graph, p, q, budget } => {
            let g = load(&graph)?;
            let q = q.ok_or("certify needs --q")?;
            match kind {
                GadgetKind::Gstar => {
                    let c = certify_gstar(&g, q, budget).map_err(text)?;
                    let code = if c.equal.is_some() { EXIT_OK } else { EXIT_BUDGET };
                    Ok(Outcome::json(code, &GstarJson::from(&c)))
                }
                GadgetKind::Gprime => {
                    let p = p.ok_or("certify gprime needs --p")?;
                    let c = certify_gprime(&g, p, q, budget).map_err(text)?;
                    let code = if c.equal.is_some() { EXIT_OK } else { EXIT_BUDGET };
                    Ok(Outcome::json(code, &GprimeJson::from(&c)))
                }
            }
        }
        Command::ProbeConjecture { m, n, budget } => {
            let probe = conjecture_probe(m, n, budget).map_err(text)?;
            let code = if probe.equal.is_some() { EXIT_OK } else { EXIT_BUDGET };
            Ok(Outcome::json(code, &ProbeJson::from(&probe)))
        }
        Command::PropertyPnp { graph, p, set, sequence } => {
            let g = load(&graph)?;
            match set {
                Some(set) => {
                    let set = parse_set(&set, g.order())?;
                    let ordering = match sequence {
                        Some(s) => parse_ids(&s)?,
                        None => return Err("property-pnp with --set also needs --sequence".into()),
                    };
                    let report = check_property_pnp(&g, p, &set, &ordering).map_err(text)?;
                    Ok(Outcome::json(EXIT_OK, &PnpReportJson::from(&report)))
                }
                None => {
                    let found = property_pnp_search(&g, p).map_err(text)?;
                    Ok(Outcome::json(EXIT_OK, &PnpSearchJson::from(found.as_ref())))
                }
            }
        }
    }
}

fn text(e: impl ToString) -> String {
    e.to_string()
}

fn sigma_outcome(r: &SigmaResult) -> Outcome {
    let code = if r.status == Status::Open { EXIT_OPEN } else { EXIT_OK };
    Outcome::json(code, &SigmaJson::from(r))
}

fn solved(result: Result<SigmaResult, SolveError>) -> Result<Outcome, String> {
    match result {
        Ok(r) => Ok(sigma_outcome(&r)),
        Err(SolveError::BudgetExhausted { lower, upper, evaluations }) => Ok(Outcome::json(
            EXIT_BUDGET,
            &BudgetJson { status: "budget_exhausted", lower, upper, evaluations },
        )),
        Err(e) => Err(e.to_string()),
    }
}

fn spread_params(input: &ParamInput) -> Result<SpreadParams, String> {
    SpreadParams::new(input.p, input.q).map_err(text)
}

fn grid_params(input: &GridInput) -> Result<(SpreadParams, usize, usize), String> {
    if input.m == 0 || input.n == 0 {
        return Err("grid sides must be at least 1".into());
    }
    Ok((SpreadParams::new(input.p, input.q).map_err(text)?, input.m, input.n))
}

fn load(input: &GraphInput) -> Result<Graph, String> {
    match (&input.edges, &input.family) {
        (Some(path), None) => edgelist::read(path).map_err(text),
        (None, Some(tokens)) => parse_family(tokens)?.build().map_err(text),
        _ => Err("give exactly one of --edges FILE or --family NAME ARGS".into()),
    }
}

/// `path N`, `cycle N`, `complete N`, `bipartite R S`, `star N`, `grid M N`,
/// and `product A x B` over any of these.
pub fn parse_family(tokens: &[String]) -> Result<FamilySpec, String> {
    let tokens: Vec<&str> = tokens.iter().flat_map(|t| t.split_whitespace()).collect();
    let (head, rest) = tokens.split_first().ok_or("empty family")?;
    if *head == "product" {
        let mut factors = rest.split(|t| *t == "x");
        let first = factors.next().ok_or("product needs factors")?;
        let mut spec = simple_family(first)?;
        let mut count = 1;
        for factor in factors {
            spec = FamilySpec::CartesianProduct(Box::new(spec), Box::new(simple_family(factor)?));
            count += 1;
        }
        if count < 2 {
            return Err("product needs at least two factors separated by `x`".into());
        }
        spec.validate().map_err(text)?;
        return Ok(spec);
    }
    let spec = simple_family(&tokens)?;
    spec.validate().map_err(text)?;
    Ok(spec)
}

fn simple_family(tokens: &[&str]) -> Result<FamilySpec, String> {
    let (name, args) = tokens.split_first().ok_or("missing family name")?;
    let nums: Vec<usize> = args
        .iter()
        .map(|a| a.parse::<usize>().map_err(|_| format!("family {name}: expected an integer, found {a:?}")))
        .collect::<Result<_, _>>()?;
    let arity = |k: usize| {
        if nums.len() == k {
            Ok(())
        } else {
            Err(format!("family {name} takes {k} argument(s), got {}", nums.len()))
        }
    };
    match *name {
        "path" => arity(1).map(|_| FamilySpec::Path(nums[0])),
        "cycle" => arity(1).map(|_| FamilySpec::Cycle(nums[0])),
        "complete" => arity(1).map(|_| FamilySpec::Complete(nums[0])),
        "bipartite" | "complete_bipartite" => arity(2).map(|_| FamilySpec::CompleteBipartite(nums[0], nums[1])),
        "star" => arity(1).map(|_| FamilySpec::Star(nums[0])),
        "grid" => arity(2).map(|_| FamilySpec::Grid(nums[0], nums[1])),
        other => Err(format!("unknown family {other:?}")),
    }
}

fn parse_ids(s: &str) -> Result<Vec<usize>, String> {
    s.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<usize>().map_err(|_| format!("expected a vertex id, found {t:?}")))
        .collect()
}

fn parse_set(s: &str, order: usize) -> Result<VertexSet, String> {
    let ids = parse_ids(s)?;
    if let Some(&v) = ids.iter().find(|&&v| v >= order) {
        return Err(Error::VertexOutOfRange { vertex: v, order }.to_string());
    }
    Ok(VertexSet::from_vertices(order, ids))
}

fn parse_cells(s: &str) -> Result<Vec<Cell>, String> {
    s.split(|c: char| c == ';' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| {
            let (c, r) = t.split_once(',').ok_or_else(|| format!("expected col,row, found {t:?}"))?;
            let num = |x: &str| x.parse::<usize>().map_err(|_| format!("expected col,row, found {t:?}"));
            Ok((num(c)?, num(r)?))
        })
        .collect()
}
