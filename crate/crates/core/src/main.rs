use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};

use fgc::compression::{
    compress_step, replay_trace, solve_fgc_with, FgcInstance, SolveOutcome, SolverConfig,
};
use fgc::dot::{reduced_to_dot, to_dot, DotStyle};
use fgc::io::{from_json, parse_graph, to_json_pretty, write_edge_list};
use fgc::matcher::{MatchMode, Pattern};
use fgc::reduction::{
    gen_hardness_instance, gen_random_graph, gen_xc3, generator, solve_xc3_bruteforce, xc3_to_fgc,
    HardnessVariant, Xc3Instance,
};
use fgc::report::{Answer, RunReport};
use fgc::verify::{run_batch, verify_instance, BatchSpec};
use fgc::{Error, Graph};

const EXIT_VALIDATION: u8 = 1;
const EXIT_DISAGREEMENT: u8 = 2;
const EXIT_INCONCLUSIVE: u8 = 3;

#[derive(Parser)]
#[command(name = "fgc", version, about = "Familial graph compression toolkit")]
struct Cli {
    /// Output format for graphs.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Seed for every generator.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Directory that receives every intermediate graph.
    #[arg(long, global = true, value_name = "DIR")]
    emit_steps: Option<PathBuf>,

    /// Override the matching mode of patterns (reduce defaults to graphlet).
    #[arg(long, global = true, value_enum)]
    mode: Option<ModeArg>,

    /// Solver budget; exceeding it reports "inconclusive" (exit 3).
    #[arg(long, global = true, value_name = "N")]
    max_states: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Edgelist,
    Dot,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Motif,
    Graphlet,
}

impl From<ModeArg> for MatchMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Motif => MatchMode::Motif,
            ModeArg::Graphlet => MatchMode::Graphlet,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Apply one compression step of PATTERN to GRAPH.
    Compress { graph: PathBuf, pattern: PathBuf },
    /// Decide a compression instance.
    Solve { instance: PathBuf },
    /// Reduce an exact-cover instance to a compression instance bundle.
    Reduce {
        xc3: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Solve an exact-cover instance by brute force.
    Xc3 { xc3: PathBuf },
    /// Check the reduction on one instance or a generated batch.
    Verify {
        xc3: Option<PathBuf>,
        /// Batch parameters, e.g. `--gen k=2 count=100 sets=8 seed=1`.
        #[arg(long, num_args = 1.., value_name = "KEY=VALUE")]
        gen: Vec<String>,
    },
    /// Generate an instance.
    Gen {
        kind: GenKind,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        sets: Option<usize>,
        #[arg(long)]
        planted: bool,
        #[arg(long)]
        n: Option<usize>,
        /// Edge probability for random graphs.
        #[arg(long, default_value_t = 0.5)]
        p: f64,
    },
    /// Apply a list of family indices to an instance's graph.
    Replay {
        instance: PathBuf,
        #[arg(long, value_delimiter = ',')]
        steps: Vec<usize>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum GenKind {
    Xc3,
    Hamilton,
    Triangles,
    RandomGraph,
}

enum Failure {
    Validation(String),
    Exit(u8),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Validation(e.to_string())
    }
}

type CmdResult = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(EXIT_VALIDATION)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Validation(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_VALIDATION)
        }
        Err(Failure::Exit(code)) => ExitCode::from(code),
    }
}

fn run(cli: &Cli) -> CmdResult {
    match &cli.command {
        Command::Compress { graph, pattern } => cmd_compress(cli, graph, pattern),
        Command::Solve { instance } => cmd_solve(cli, instance),
        Command::Reduce { xc3, output } => cmd_reduce(cli, xc3, output.as_deref()),
        Command::Xc3 { xc3 } => cmd_xc3(xc3),
        Command::Verify { xc3, gen } => cmd_verify(cli, xc3.as_deref(), gen),
        Command::Gen {
            kind,
            k,
            sets,
            planted,
            n,
            p,
        } => cmd_gen(cli, *kind, *k, *sets, *planted, *n, *p),
        Command::Replay { instance, steps } => cmd_replay(cli, instance, steps),
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Validation(format!("{}: {e}", path.display())))
}

fn in_file<T>(path: &Path, r: fgc::Result<T>) -> Result<T, Failure> {
    r.map_err(|e| Failure::Validation(format!("{}: {e}", path.display())))
}

fn render_graph(format: Format, g: &Graph) -> String {
    match format {
        Format::Json => to_json_pretty(g),
        Format::Edgelist => write_edge_list(g),
        Format::Dot => to_dot("g", g, &DotStyle::default()),
    }
}

fn load_instance(cli: &Cli, path: &Path) -> Result<FgcInstance, Failure> {
    let mut inst: FgcInstance = in_file(path, from_json(&read(path)?))?;
    if let Some(mode) = cli.mode {
        for f in &mut inst.family {
            f.mode = mode.into();
        }
    }
    inst.validate()?;
    Ok(inst)
}

fn emit_steps(cli: &Cli, trace: &[Graph]) -> CmdResult {
    let Some(dir) = &cli.emit_steps else {
        return Ok(());
    };
    fs::create_dir_all(dir).map_err(|e| Failure::Validation(format!("{}: {e}", dir.display())))?;
    let ext = match cli.format {
        Format::Json => "json",
        Format::Edgelist => "txt",
        Format::Dot => "dot",
    };
    for (i, g) in trace.iter().enumerate() {
        let path = dir.join(format!("step_{i:03}.{ext}"));
        write_atomic(&path, &render_graph(cli.format, g))?;
    }
    Ok(())
}

/// Writes through a temporary sibling and renames it into place.
fn write_atomic(path: &Path, contents: &str) -> CmdResult {
    let tmp = path.with_extension("tmp");
    fs::write(&tmp, contents)
        .and_then(|()| fs::rename(&tmp, path))
        .map_err(|e| Failure::Validation(format!("{}: {e}", path.display())))
}

fn cmd_compress(cli: &Cli, graph_path: &Path, pattern_path: &Path) -> CmdResult {
    let g = in_file(graph_path, parse_graph(&read(graph_path)?))?;
    let mut pattern: Pattern = in_file(pattern_path, from_json(&read(pattern_path)?))?;
    if let Some(mode) = cli.mode {
        pattern.mode = mode.into();
    }
    pattern.check_family_member(0)?;
    let (q, partition) = compress_step(&g, &pattern)?;
    let changed = q.node_count() < g.node_count();
    emit_steps(cli, &[g.clone(), q.clone()])?;

    let out = match cli.format {
        Format::Json => to_json_pretty(&serde_json::json!({
            "changed": changed,
            "graph": q,
            "class_of": partition.class_map(),
        })),
        Format::Edgelist => {
            let classes: Vec<String> = partition.class_map().iter().map(usize::to_string).collect();
            format!(
                "{}# changed={changed}\n# class_of {}\n",
                write_edge_list(&q),
                classes.join(" ")
            )
        }
        Format::Dot => {
            let labels: Vec<String> = g
                .nodes()
                .map(|u| format!("{u}/{}", partition.class_of(u)))
                .collect();
            let style = DotStyle {
                classes: Some(&partition),
                labels: Some(&labels),
            };
            format!(
                "// changed={changed}; quotient has {} node(s), {} edge(s)\n{}",
                q.node_count(),
                q.edge_count(),
                to_dot("classes", &g, &style)
            )
        }
    };
    print!("{out}");
    Ok(())
}

fn finish_report(report: &RunReport, started: Instant) -> CmdResult {
    print!("{}", to_json_pretty(report));
    eprintln!("wall_time_ms={}", started.elapsed().as_millis());
    if report.answer == Answer::Inconclusive {
        eprintln!("inconclusive: state budget exhausted");
        return Err(Failure::Exit(EXIT_INCONCLUSIVE));
    }
    Ok(())
}

fn cmd_solve(cli: &Cli, path: &Path) -> CmdResult {
    let inst = load_instance(cli, path)?;
    let started = Instant::now();
    let config = SolverConfig {
        max_states: cli.max_states,
    };
    let (outcome, stats) = solve_fgc_with(&inst, config)?;
    let report = RunReport::from_fgc(&inst, &outcome, stats)?;
    if report.empty_sequence {
        eprintln!("note: the input graph is already isomorphic to the target (empty compression sequence)");
    }
    if let SolveOutcome::Yes(w) = &outcome {
        emit_steps(cli, &replay_trace(&inst.graph, &inst.family, &w.steps)?)?;
    }
    finish_report(&report, started)
}

fn load_xc3(path: &Path) -> Result<Xc3Instance, Failure> {
    let x: Xc3Instance = in_file(path, from_json(&read(path)?))?;
    for w in x.warnings() {
        eprintln!("warning: {w}");
    }
    Ok(x)
}

fn cmd_reduce(cli: &Cli, path: &Path, output: Option<&Path>) -> CmdResult {
    let x = load_xc3(path)?;
    let mode = cli.mode.map(MatchMode::from).unwrap_or_default();
    let reduced = xc3_to_fgc(&x, mode)?;
    let text = match cli.format {
        Format::Dot => reduced_to_dot(&reduced),
        _ => to_json_pretty(&reduced),
    };
    match output {
        Some(out) => write_atomic(out, &text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn cmd_xc3(path: &Path) -> CmdResult {
    let x = load_xc3(path)?;
    let started = Instant::now();
    let cover = solve_xc3_bruteforce(&x);
    finish_report(&RunReport::from_xc3(cover.as_ref()), started)
}

fn modes(cli: &Cli) -> Vec<MatchMode> {
    match cli.mode {
        Some(m) => vec![m.into()],
        None => vec![MatchMode::Graphlet, MatchMode::Motif],
    }
}

fn parse_batch(cli: &Cli, params: &[String]) -> Result<BatchSpec, Failure> {
    let mut spec = BatchSpec {
        k: 2,
        count: 100,
        max_sets: 8,
        seed: cli.seed,
    };
    for kv in params {
        let (key, value) = kv
            .split_once('=')
            .ok_or_else(|| Failure::Validation(format!("--gen expects KEY=VALUE, got {kv:?}")))?;
        let bad = || {
            Failure::Validation(format!(
                "--gen {key}: {value:?} is not a non-negative integer"
            ))
        };
        match key {
            "k" => spec.k = value.parse().map_err(|_| bad())?,
            "count" => spec.count = value.parse().map_err(|_| bad())?,
            "sets" => spec.max_sets = value.parse().map_err(|_| bad())?,
            "seed" => spec.seed = value.parse().map_err(|_| bad())?,
            _ => {
                return Err(Failure::Validation(format!(
                    "--gen: unknown key {key:?} (k, count, sets, seed)"
                )))
            }
        }
    }
    if spec.k == 0 {
        return Err(Failure::Validation("--gen k must be positive".into()));
    }
    spec.max_sets = spec.max_sets.max(spec.k);
    Ok(spec)
}

fn cmd_verify(cli: &Cli, path: Option<&Path>, gen: &[String]) -> CmdResult {
    let config = SolverConfig {
        max_states: cli.max_states,
    };
    let started = Instant::now();
    let ok = match (path, gen.is_empty()) {
        (Some(path), true) => {
            let x = load_xc3(path)?;
            let check = verify_instance(&x, &modes(cli), config)?;
            println!("{check}");
            check.ok()
        }
        (None, false) => {
            let report = run_batch(parse_batch(cli, gen)?, &modes(cli), config)?;
            print!("{report}");
            report.ok()
        }
        _ => {
            return Err(Failure::Validation(
                "verify takes either an instance file or --gen parameters".into(),
            ))
        }
    };
    eprintln!("wall_time_ms={}", started.elapsed().as_millis());
    if ok {
        Ok(())
    } else {
        Err(Failure::Exit(EXIT_DISAGREEMENT))
    }
}

fn required(name: &str, v: Option<usize>) -> Result<usize, Failure> {
    v.ok_or_else(|| Failure::Validation(format!("--{name} is required for this kind")))
}

fn cmd_gen(
    cli: &Cli,
    kind: GenKind,
    k: Option<usize>,
    sets: Option<usize>,
    planted: bool,
    n: Option<usize>,
    p: f64,
) -> CmdResult {
    if !(0.0..=1.0).contains(&p) {
        return Err(Failure::Validation(format!(
            "--p must lie in [0, 1], got {p}"
        )));
    }
    let out = match kind {
        GenKind::Xc3 => {
            let k = required("k", k)?;
            let x = gen_xc3(k, sets.unwrap_or(2 * k + 2), cli.seed, planted)?;
            to_json_pretty(&x)
        }
        GenKind::Hamilton => {
            let n = required("n", n)?;
            let g = gen_random_graph(n, p, &mut generator(cli.seed));
            to_json_pretty(&gen_hardness_instance(
                HardnessVariant::HamiltonCycle(n),
                g,
            )?)
        }
        GenKind::Triangles => {
            let k = required("k", k)?;
            let g = gen_random_graph(3 * k, p, &mut generator(cli.seed));
            to_json_pretty(&gen_hardness_instance(
                HardnessVariant::TrianglePartition(k),
                g,
            )?)
        }
        GenKind::RandomGraph => {
            let n = required("n", n)?;
            render_graph(
                cli.format,
                &gen_random_graph(n, p, &mut generator(cli.seed)),
            )
        }
    };
    print!("{out}");
    Ok(())
}

fn cmd_replay(cli: &Cli, path: &Path, steps: &[usize]) -> CmdResult {
    let inst = load_instance(cli, path)?;
    let trace = replay_trace(&inst.graph, &inst.family, steps)?;
    emit_steps(cli, &trace)?;
    let sizes: Vec<String> = trace.iter().map(|g| g.node_count().to_string()).collect();
    eprintln!("intermediate_sizes={}", sizes.join(","));
    print!(
        "{}",
        render_graph(cli.format, trace.last().expect("non-empty"))
    );
    Ok(())
}
