//! Command-line front end: solve, decompose, check, gen, oracle, bench.
//!
//! Exit codes: 0 success, 2 graph outside the structural class, 3 twins
//! present, 4 parse error, 5 quotient width cap exceeded, 1 anything else.
//! Vertex indices in files and in all output are 1-based.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use biclique_core::decompose::{build_canonical_tree, build_lozin_tree};
use biclique_core::generate::{gen_from_spec, gen_random, TreeClass, TreeSpec};
use biclique_core::graph::{parse_graph, write_graph, BipartiteGraph};
use biclique_core::maxbisize::{reduce_objective, Bisize, MaxbisizeSet, Objective};
use biclique_core::oracle::oracle_maxbisizes_with_witnesses;
use biclique_core::shapes::{co_path, cycle, path};
use biclique_core::solver::solve_tree;
use biclique_core::tree::{bimodularwidth, BaseShape, DecompositionTree};
use biclique_core::witness::{reconstruct, verify_witness, Witness};
use biclique_core::Error;

#[derive(Parser)]
#[command(
    name = "biclique",
    about = "Maxbisize sets of twin-free bipartite graphs via decomposition trees",
    version
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Compute the maxbisize set and objective reductions of a graph file.
    Solve {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = TreeKind::Canonical)]
        tree: TreeKind,
        #[arg(long, value_enum, default_value_t = ObjectiveArg::All)]
        objective: ObjectiveArg,
        /// Also reconstruct and verify a biclique realizing the objective.
        #[arg(long)]
        witness: bool,
        #[arg(long)]
        json: bool,
    },
    /// Emit the decomposition tree of a graph file.
    Decompose {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = TreeKind::Canonical)]
        tree: TreeKind,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Report structural predicates of a graph file.
    Check {
        file: PathBuf,
        /// Only report whether the graph is twin-free.
        #[arg(long)]
        twin_free: bool,
        /// Only report whether the graph avoids the 7-vertex obstruction.
        #[arg(long)]
        star123_free: bool,
        /// Only report the largest Prime arity of the canonical tree.
        #[arg(long)]
        bimodularwidth: bool,
    },
    /// Generate a random twin-free instance with its intended tree.
    Gen {
        /// Approximate vertex count.
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = ClassArg::Canonical)]
        class: ClassArg,
        /// Largest Prime quotient a generated tree may use.
        #[arg(long, default_value_t = 8)]
        max_width: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Graph file to write; the intended tree goes to <out>.json.
        #[arg(long)]
        out: PathBuf,
    },
    /// Solve a small graph exhaustively, bypassing decomposition.
    Oracle {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = ObjectiveArg::All)]
        objective: ObjectiveArg,
        #[arg(long)]
        witness: bool,
        #[arg(long)]
        json: bool,
    },
    /// Time tree construction and the DP separately over a size sweep.
    Bench {
        #[arg(long, value_enum, default_value_t = Family::Sp)]
        family: Family,
        /// Comma-separated vertex counts.
        #[arg(long, value_delimiter = ',', default_value = "1024,2048,4096,8192")]
        sizes: Vec<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Write the CSV here as well as to stdout.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
}

#[derive(ValueEnum, Clone, Copy, PartialEq, Eq)]
enum TreeKind {
    Lozin,
    Canonical,
}

#[derive(ValueEnum, Clone, Copy, PartialEq, Eq)]
enum ObjectiveArg {
    Vertex,
    Edge,
    Balanced,
    NontrivialVertex,
    All,
}

impl ObjectiveArg {
    fn primary(self) -> Objective {
        match self {
            ObjectiveArg::Vertex | ObjectiveArg::All => Objective::VertexMax,
            ObjectiveArg::Edge => Objective::EdgeMax,
            ObjectiveArg::Balanced => Objective::Balanced,
            ObjectiveArg::NontrivialVertex => Objective::NontrivialVertexMax,
        }
    }
}

#[derive(ValueEnum, Clone, Copy)]
enum Format {
    Json,
    Dot,
}

#[derive(ValueEnum, Clone, Copy)]
enum ClassArg {
    Lozin,
    Canonical,
}

#[derive(ValueEnum, Clone, Copy, PartialEq, Eq)]
enum Family {
    /// Series over parallel and chain joins of co-paths.
    Sp,
    Path,
    Cycle,
    Copath,
    Cocycle,
}

fn main() -> ExitCode {
    // die silently when the read end of a pipe closes (e.g. `biclique ... | head`)
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    // deep trees recurse in the builders and the witness walk
    let result = std::thread::Builder::new()
        .stack_size(256 << 20)
        .spawn(move || run(cli))
        .expect("spawn worker")
        .join()
        .expect("worker panicked");
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Error::NotInClass { .. } => 2,
                Error::TwinsPresent { .. } | Error::TwinsProduced { .. } => 3,
                Error::Parse { .. } => 4,
                Error::WidthExceeded { .. } => 5,
                _ => 1,
            })
        }
    }
}

fn run(cli: Cli) -> Result<(), Error> {
    match cli.cmd {
        Cmd::Solve { file, tree, objective, witness, json } => {
            cmd_solve(&file, tree, objective, witness, json)
        }
        Cmd::Decompose { file, tree, format } => cmd_decompose(&file, tree, format),
        Cmd::Check { file, twin_free, star123_free, bimodularwidth } => {
            cmd_check(&file, twin_free, star123_free, bimodularwidth)
        }
        Cmd::Gen { n, class, max_width, seed, out } => cmd_gen(n, class, max_width, seed, &out),
        Cmd::Oracle { file, objective, witness, json } => {
            cmd_oracle(&file, objective, witness, json)
        }
        Cmd::Bench { family, sizes, seed, csv } => cmd_bench(family, &sizes, seed, csv.as_deref()),
    }
}

fn load(file: &PathBuf) -> Result<BipartiteGraph, Error> {
    let text = fs::read_to_string(file)
        .map_err(|e| Error::PreconditionViolated(format!("cannot read {}: {e}", file.display())))?;
    parse_graph(&text)
}

fn build(g: &BipartiteGraph, kind: TreeKind) -> Result<DecompositionTree, Error> {
    match kind {
        TreeKind::Lozin => build_lozin_tree(g),
        TreeKind::Canonical => build_canonical_tree(g),
    }
}

fn format_set(d: &MaxbisizeSet) -> String {
    let body: Vec<String> =
        d.items().iter().map(|e| format!("({}, {})", e.black, e.white)).collect();
    format!("{{{}}}", body.join(", "))
}

fn one_based(xs: &[usize]) -> Vec<usize> {
    xs.iter().map(|&i| i + 1).collect()
}

/// All four reductions; the nontrivial one is None when no biclique uses
/// both colors.
fn objective_table(d: &MaxbisizeSet) -> Vec<(Objective, Option<(usize, Bisize)>)> {
    Objective::ALL
        .iter()
        .map(|&o| {
            let r = match reduce_objective(d, o) {
                Ok(v) => Some(v),
                Err(Error::NoNontrivialBiclique) => None,
                Err(e) => panic!("objective reduction failed unexpectedly: {e}"),
            };
            (o, r)
        })
        .collect()
}

fn result_json(
    d: &MaxbisizeSet,
    table: &[(Objective, Option<(usize, Bisize)>)],
    witness: Option<&Witness>,
) -> Value {
    let mut objectives = serde_json::Map::new();
    for (o, r) in table {
        objectives.insert(
            o.name().to_string(),
            match r {
                Some((v, _)) => json!(v),
                None => Value::Null,
            },
        );
    }
    let mut out = json!({
        "maxbisizes": d.items().iter().map(|e| json!([e.black, e.white])).collect::<Vec<_>>(),
        "objectives": Value::Object(objectives),
    });
    if let Some(w) = witness {
        out["witness"] = json!({
            "blacks": one_based(&w.blacks),
            "whites": one_based(&w.whites),
        });
    }
    out
}

fn print_result(
    d: &MaxbisizeSet,
    table: &[(Objective, Option<(usize, Bisize)>)],
    objective: ObjectiveArg,
    witness: Option<&Witness>,
    as_json: bool,
) {
    if as_json {
        println!("{}", serde_json::to_string_pretty(&result_json(d, table, witness)).unwrap());
        return;
    }
    println!("maxbisizes: {}", format_set(d));
    for (o, r) in table {
        if objective != ObjectiveArg::All && *o != objective.primary() {
            continue;
        }
        match r {
            Some((v, e)) => println!("{} = {} at ({}, {})", o.name(), v, e.black, e.white),
            None => println!("{} = none", o.name()),
        }
    }
    if let Some(w) = witness {
        println!(
            "witness: blacks {:?} whites {:?}",
            one_based(&w.blacks),
            one_based(&w.whites)
        );
    }
}

fn cmd_solve(
    file: &PathBuf,
    tree: TreeKind,
    objective: ObjectiveArg,
    want_witness: bool,
    as_json: bool,
) -> Result<(), Error> {
    let g = load(file)?;
    let t = build(&g, tree)?;
    let ev = solve_tree(&g, &t)?;
    let table = objective_table(ev.set());
    let witness = if want_witness {
        let (_, elem) = reduce_objective(ev.set(), objective.primary())?;
        let w = reconstruct(&g, &ev, elem)?;
        assert!(
            verify_witness(&g, elem, &w),
            "internal error: reconstructed witness failed verification"
        );
        Some(w)
    } else {
        None
    };
    print_result(ev.set(), &table, objective, witness.as_ref(), as_json);
    Ok(())
}

fn cmd_decompose(file: &PathBuf, tree: TreeKind, format: Format) -> Result<(), Error> {
    let g = load(file)?;
    let t = build(&g, tree)?;
    match format {
        Format::Json => println!("{}", serde_json::to_string_pretty(&t.to_json()).unwrap()),
        Format::Dot => print!("{}", t.to_dot()),
    }
    Ok(())
}

fn cmd_check(
    file: &PathBuf,
    twin_free: bool,
    star123_free: bool,
    width: bool,
) -> Result<(), Error> {
    let g = load(file)?;
    let all = !(twin_free || star123_free || width);

    if twin_free || all {
        println!("twin-free: {}", if g.is_twin_free() { "yes" } else { "no" });
    }

    if star123_free || all {
        let by_builder = match build_lozin_tree(&g) {
            Ok(_) => Some(true),
            Err(Error::NotInClass { .. }) => Some(false),
            Err(_) => None, // twins block the builder without deciding this
        };
        let by_finder = if g.n_vertices() <= 64 {
            Some(g.find_induced_star123()?.is_none())
        } else {
            None
        };
        if let (Some(a), Some(b)) = (by_builder, by_finder) {
            assert_eq!(a, b, "internal error: builder and exhaustive finder disagree");
        }
        match by_builder.or(by_finder) {
            Some(yes) => println!("star123-free: {}", if yes { "yes" } else { "no" }),
            None => println!("star123-free: unknown (graph has twins and exceeds the exhaustive limit)"),
        }
    }

    if width || all {
        let t = build_canonical_tree(&g)?;
        println!("bimodularwidth: {}", bimodularwidth(&t));
    }
    Ok(())
}

fn cmd_gen(
    n: usize,
    class: ClassArg,
    max_width: usize,
    seed: u64,
    out: &PathBuf,
) -> Result<(), Error> {
    let class = match class {
        ClassArg::Lozin => TreeClass::Lozin,
        ClassArg::Canonical => TreeClass::Canonical,
    };
    let inst = gen_random(n, class, max_width, seed)?;
    let sidecar_path = {
        let mut s = out.as_os_str().to_owned();
        s.push(".json");
        PathBuf::from(s)
    };
    let sidecar = json!({
        "seed": inst.seed,
        "class": match class { TreeClass::Lozin => "lozin", TreeClass::Canonical => "canonical" },
        "max_width": max_width,
        "tree": inst.tree.to_json(),
    });
    fs::write(out, write_graph(&inst.graph))
        .map_err(|e| Error::PreconditionViolated(format!("cannot write {}: {e}", out.display())))?;
    fs::write(&sidecar_path, serde_json::to_string_pretty(&sidecar).unwrap()).map_err(|e| {
        Error::PreconditionViolated(format!("cannot write {}: {e}", sidecar_path.display()))
    })?;
    println!(
        "wrote {} ({} black + {} white, {} edges) and {}",
        out.display(),
        inst.graph.n_black(),
        inst.graph.n_white(),
        inst.graph.edge_count(),
        sidecar_path.display()
    );
    Ok(())
}

fn cmd_oracle(
    file: &PathBuf,
    objective: ObjectiveArg,
    want_witness: bool,
    as_json: bool,
) -> Result<(), Error> {
    let g = load(file)?;
    let ow = oracle_maxbisizes_with_witnesses(&g)?;
    let table = objective_table(&ow.set);
    let witness = if want_witness {
        let (_, elem) = reduce_objective(&ow.set, objective.primary())?;
        let idx = ow.set.items().iter().position(|e| *e == elem).expect("element of own set");
        let mut blacks: Vec<usize> = ow.witnesses[idx].blacks.iter().collect();
        let mut whites: Vec<usize> = ow.witnesses[idx].whites.iter().collect();
        blacks.sort_unstable();
        whites.sort_unstable();
        let w = Witness { blacks, whites };
        assert!(verify_witness(&g, elem, &w), "internal error: oracle witness failed verification");
        Some(w)
    } else {
        None
    };
    print_result(&ow.set, &table, objective, witness.as_ref(), as_json);
    Ok(())
}

/// Deterministic bench instance. The `sp` family joins eight co-paths with
/// one series, one parallel and two chain nodes, which keeps the tree
/// shallow while the series sums still do quadratic work.
fn bench_graph(family: Family, n: usize, seed: u64) -> Result<BipartiteGraph, Error> {
    let even = |x: usize| if x % 2 == 0 { x } else { x + 1 };
    Ok(match family {
        Family::Path => path(n.max(2)),
        Family::Cycle => cycle(even(n.max(4))),
        Family::Copath => co_path(n.max(7)),
        Family::Cocycle => biclique_core::shapes::co_cycle(even(n.max(8))),
        Family::Sp => {
            if n < 64 {
                return Err(Error::BadParameter(format!(
                    "sp family needs at least 64 vertices, got {n}"
                )));
            }
            let q = n / 8 + (seed as usize % 3);
            let cp = || TreeSpec::Base(BaseShape::CoPath, q);
            let spec = TreeSpec::Series(vec![
                TreeSpec::Ks(vec![cp(), cp()]),
                TreeSpec::Parallel(vec![cp(), cp()]),
                TreeSpec::Ks(vec![cp(), cp()]),
                TreeSpec::Parallel(vec![cp(), cp()]),
            ]);
            gen_from_spec(&spec)?.0
        }
    })
}

fn cmd_bench(
    family: Family,
    sizes: &[usize],
    seed: u64,
    csv: Option<&std::path::Path>,
) -> Result<(), Error> {
    let name = match family {
        Family::Sp => "sp",
        Family::Path => "path",
        Family::Cycle => "cycle",
        Family::Copath => "copath",
        Family::Cocycle => "cocycle",
    };
    let mut out = String::from("family,n,m,build_ms,dp_ms,d_size\n");
    for &n in sizes {
        let g = bench_graph(family, n, seed)?;
        let mut build_ms = f64::INFINITY;
        let mut t = None;
        for _ in 0..2 {
            let start = Instant::now();
            let built = build_lozin_tree(&g)?;
            build_ms = build_ms.min(start.elapsed().as_secs_f64() * 1e3);
            t = Some(built);
        }
        let t = t.expect("at least one build");
        let mut dp_ms = f64::INFINITY;
        let mut d_size = 0;
        for _ in 0..3 {
            let start = Instant::now();
            let ev = solve_tree(&g, &t)?;
            dp_ms = dp_ms.min(start.elapsed().as_secs_f64() * 1e3);
            d_size = ev.set().len();
        }
        out.push_str(&format!(
            "{name},{},{},{build_ms:.3},{dp_ms:.3},{d_size}\n",
            g.n_vertices(),
            g.edge_count()
        ));
    }
    print!("{out}");
    if let Some(p) = csv {
        fs::write(p, &out).map_err(|e| {
            Error::PreconditionViolated(format!("cannot write {}: {e}", p.display()))
        })?;
    }
    Ok(())
}
