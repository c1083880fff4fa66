//! `centered`: command-line front end for the p-centered coloring toolkit.
//!
//! Exit codes: 0 on success or YES, 1 when a verification fails or the
//! answer is NO, 2 on usage and input errors.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use centered::coloring::{genus_bound, planar_bound, treewidth_bound};
use centered::embedding::{Embedding, Rotation};
use centered::io::{self, EdgeList, Labels};
use centered::lifting::planar_centered_coloring;
use centered::planar::planar_geodesic_partition;
use centered::subiso::{subgraph_isomorphism, FamilyMode, SubisoOptions};
use centered::surface::{cut_graph, genus_centered_coloring, max_component_genus};
use centered::treedecomp::{min_degree_decomposition, treewidth_centered_coloring};
use centered::verify::{check_p_centered, min_p_centered_colors};
use centered::{generators, Coloring, Graph, TreeDecomposition};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[derive(Parser)]
#[command(name = "centered", version, about = "p-centered colorings of sparse graphs")]
struct Cli {
    /// Worker threads (defaults to all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute a p-centered coloring.
    #[command(subcommand)]
    Color(ColorCommand),
    /// Compute a vertex partition.
    #[command(subcommand)]
    Partition(PartitionCommand),
    /// Cut graph of an embedding of positive genus.
    Cutgraph {
        graph: PathBuf,
        rotation: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Check a coloring.
    #[command(subcommand)]
    Verify(VerifyCommand),
    /// Decide whether PATTERN is a subgraph of HOST.
    Subiso(SubisoArgs),
    /// Exact reference computations for small graphs.
    #[command(subcommand)]
    Oracle(OracleCommand),
    /// Time the planar pipeline on random triangulations.
    Bench {
        #[arg(long, value_delimiter = ',', default_value = "250,500,1000,2000")]
        sizes: Vec<usize>,
        #[arg(short, default_value_t = 1)]
        p: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Write generated instances.
    #[command(subcommand)]
    Gen(GenCommand),
}

#[derive(Args)]
struct ColorOutput {
    /// Coloring file to write; stdout when absent.
    #[arg(short, long)]
    output: Option<PathBuf>,
    /// Check the result with the exact verifier.
    #[arg(long)]
    verify: bool,
    /// Print `colors=<k> bound=<B> p=<p> n=<n> ms=<t>`.
    #[arg(long)]
    stats: bool,
}

#[derive(Subcommand)]
enum ColorCommand {
    /// Planar graph with a genus-0 rotation system.
    Planar {
        #[arg(short)]
        p: usize,
        graph: PathBuf,
        rotation: PathBuf,
        #[command(flatten)]
        out: ColorOutput,
    },
    /// Graph with a tree decomposition (min-degree heuristic when absent).
    Treewidth {
        #[arg(short)]
        p: usize,
        graph: PathBuf,
        #[arg(long)]
        td: Option<PathBuf>,
        #[command(flatten)]
        out: ColorOutput,
    },
    /// Graph with a rotation system of any orientable genus.
    Genus {
        #[arg(short)]
        p: usize,
        graph: PathBuf,
        rotation: PathBuf,
        #[command(flatten)]
        out: ColorOutput,
    },
}

#[derive(Subcommand)]
enum PartitionCommand {
    /// Geodesic partition with a quotient of treewidth at most 8.
    Planar {
        graph: PathBuf,
        rotation: PathBuf,
        /// Partition file to write.
        #[arg(short, long)]
        output: PathBuf,
        /// Quotient decomposition; defaults to OUTPUT with extension `.td`.
        #[arg(long)]
        td: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum VerifyCommand {
    /// Exit 0 when COLORING is p-centered, 1 otherwise.
    Centered {
        #[arg(short)]
        p: usize,
        graph: PathBuf,
        coloring: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Exhaustive,
    Randomized,
}

#[derive(Args)]
struct SubisoArgs {
    pattern: PathBuf,
    host: PathBuf,
    /// Rotation system of the host; without it the host is colored through
    /// a min-degree tree decomposition.
    #[arg(long)]
    embedding: Option<PathBuf>,
    /// `auto` or a number at least the pattern size.
    #[arg(short, default_value = "auto")]
    p: String,
    #[arg(long, value_enum, default_value = "randomized")]
    mode: Mode,
    #[arg(long, default_value_t = 20)]
    trials: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Verify the host coloring before searching.
    #[arg(long)]
    verify_coloring: bool,
}

#[derive(Subcommand)]
enum OracleCommand {
    /// Minimum number of colors of a p-centered coloring (n <= 12).
    Mincolors {
        #[arg(short)]
        p: usize,
        graph: PathBuf,
    },
}

#[derive(Subcommand)]
enum GenCommand {
    /// rows x cols grid; writes PREFIX.el and PREFIX.rot.
    Grid { rows: usize, cols: usize, #[arg(short, long)] output: PathBuf },
    /// Toroidal grid; writes PREFIX.el and PREFIX.rot.
    Torus { rows: usize, cols: usize, #[arg(short, long)] output: PathBuf },
    /// Random triangulation; writes PREFIX.el and PREFIX.rot.
    Triangulation {
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Random partial k-tree; writes PREFIX.el and PREFIX.td.
    Ktree {
        n: usize,
        k: usize,
        #[arg(long, default_value_t = 0.7)]
        keep: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(short, long)]
        output: PathBuf,
    },
}

type Outcome = Result<ExitCode, String>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(threads) = cli.threads {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global();
    }
    match run(cli.command) {
        Ok(code) => code,
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command) -> Outcome {
    match command {
        Command::Color(c) => color(c),
        Command::Partition(PartitionCommand::Planar {
            graph,
            rotation,
            output,
            td,
        }) => partition_planar(&graph, &rotation, &output, td),
        Command::Cutgraph {
            graph,
            rotation,
            output,
        } => cutgraph(&graph, &rotation, output),
        Command::Verify(VerifyCommand::Centered { p, graph, coloring }) => verify(p, &graph, &coloring),
        Command::Subiso(args) => subiso(args),
        Command::Oracle(OracleCommand::Mincolors { p, graph }) => {
            let input = read_graph(&graph)?;
            let k = min_p_centered_colors(&input.graph, p).map_err(err)?;
            println!("{k}");
            Ok(ExitCode::SUCCESS)
        }
        Command::Bench { sizes, p, seed } => bench(&sizes, p, seed),
        Command::Gen(g) => generate(g),
    }
}

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn read(path: &Path) -> Result<String, String> {
    fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
}

fn write(path: &Path, text: &str) -> Result<(), String> {
    fs::write(path, text).map_err(|e| format!("{}: {e}", path.display()))
}

fn read_graph(path: &Path) -> Result<EdgeList, String> {
    io::parse_edge_list(&read(path)?).map_err(|e| format!("{}: {e}", path.display()))
}

fn read_rotation(path: &Path, input: &EdgeList) -> Result<Rotation, String> {
    io::parse_rotation(&read(path)?, &input.graph, &input.labels).map_err(|e| format!("{}: {e}", path.display()))
}

fn read_td(path: &Path) -> Result<TreeDecomposition, String> {
    io::parse_td(&read(path)?).map_err(|e| format!("{}: {e}", path.display()))
}

fn color(command: ColorCommand) -> Outcome {
    let start = Instant::now();
    let (p, input, out, result, bound) = match command {
        ColorCommand::Planar {
            p,
            graph,
            rotation,
            out,
        } => {
            let input = read_graph(&graph)?;
            let rot = read_rotation(&rotation, &input)?;
            let c = planar_centered_coloring(&input.graph, &rot, p);
            (p, input, out, c, planar_bound(p))
        }
        ColorCommand::Treewidth { p, graph, td, out } => {
            let input = read_graph(&graph)?;
            let td = match td {
                Some(path) => read_td(&path)?,
                None => min_degree_decomposition(&input.graph),
            };
            let c = treewidth_centered_coloring(&input.graph, &td, p);
            let bound = treewidth_bound(p, td.width());
            (p, input, out, c, bound)
        }
        ColorCommand::Genus {
            p,
            graph,
            rotation,
            out,
        } => {
            let input = read_graph(&graph)?;
            let rot = read_rotation(&rotation, &input)?;
            let genus = max_component_genus(&input.graph, &rot).map_err(err)?;
            let c = genus_centered_coloring(&input.graph, &rot, p);
            (p, input, out, c, genus_bound(p, genus))
        }
    };
    let coloring = result.map_err(err)?;
    let ms = start.elapsed().as_millis();
    emit(&out.output, &io::write_coloring(&coloring, p, &input.labels))?;
    if out.stats {
        println!(
            "colors={} bound={bound} p={p} n={} ms={ms}",
            coloring.distinct(),
            input.graph.n()
        );
    }
    if out.verify {
        return Ok(report_verdict(&input, &coloring, p)?);
    }
    Ok(ExitCode::SUCCESS)
}

fn emit(output: &Option<PathBuf>, text: &str) -> Result<(), String> {
    match output {
        Some(path) => write(path, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn report_verdict(input: &EdgeList, coloring: &Coloring, p: usize) -> Result<ExitCode, String> {
    let verdict = check_p_centered(&input.graph, coloring, p).map_err(err)?;
    if verdict.ok {
        eprintln!("verified: {p}-centered");
        return Ok(ExitCode::SUCCESS);
    }
    let names: Vec<&str> = verdict
        .counterexample
        .iter()
        .map(|&v| input.labels.name(v))
        .collect();
    println!("counterexample: {}", names.join(" "));
    Ok(ExitCode::from(1))
}

fn verify(p: usize, graph: &Path, coloring: &Path) -> Outcome {
    let input = read_graph(graph)?;
    let parsed = io::parse_coloring(&read(coloring)?, &input.labels).map_err(|e| format!("{}: {e}", coloring.display()))?;
    let code = report_verdict(&input, &parsed.coloring, p)?;
    if code == ExitCode::SUCCESS {
        println!("ok");
    }
    Ok(code)
}

fn partition_planar(graph: &Path, rotation: &Path, output: &Path, td: Option<PathBuf>) -> Outcome {
    let input = read_graph(graph)?;
    let rot = read_rotation(rotation, &input)?;
    let gp = planar_geodesic_partition(&input.graph, &rot).map_err(err)?;
    write(output, &io::write_partition(&gp.partition, &input.labels))?;
    let td_path = td.unwrap_or_else(|| output.with_extension("td"));
    write(&td_path, &io::write_td(&gp.decomposition))?;
    Ok(ExitCode::SUCCESS)
}

fn cutgraph(graph: &Path, rotation: &Path, output: Option<PathBuf>) -> Outcome {
    let input = read_graph(graph)?;
    let rot = read_rotation(rotation, &input)?;
    let e = Embedding::new(&input.graph, rot).map_err(err)?;
    let cut = cut_graph(&e).map_err(err)?;
    let name = |v: usize| input.labels.name(v);
    let mut text = format!("c genus={} vertices={} edges={}\n", cut.genus, cut.vertices.len(), cut.edges.len());
    for &(u, v) in &cut.extra_edges {
        text.push_str(&format!("x {} {}\n", name(u), name(v)));
    }
    for (i, part) in cut.parts.iter().enumerate() {
        let names: Vec<&str> = part.vertices.iter().map(|&v| name(v)).collect();
        text.push_str(&format!("{i}: {}\n", names.join(" ")));
    }
    emit(&output, &text)?;
    Ok(ExitCode::SUCCESS)
}

fn subiso(args: SubisoArgs) -> Outcome {
    let pattern = read_graph(&args.pattern)?;
    let host = read_graph(&args.host)?;
    let p = match args.p.as_str() {
        "auto" => None,
        s => Some(s.parse::<usize>().map_err(|_| format!("-p expects `auto` or a number, got {s:?}"))?),
    };
    let rotation = match &args.embedding {
        Some(path) => Some(read_rotation(path, &host)?),
        None => None,
    };
    let colorer = |g: &Graph, p: usize| match &rotation {
        Some(rot) => genus_centered_coloring(g, rot, p),
        None => treewidth_centered_coloring(g, &min_degree_decomposition(g), p),
    };
    let mode = match args.mode {
        Mode::Exhaustive => FamilyMode::Exhaustive,
        Mode::Randomized => FamilyMode::Randomized {
            seed: args.seed,
            trials: args.trials,
        },
    };
    let options = SubisoOptions {
        p,
        mode,
        verify_coloring: args.verify_coloring,
        instrument: false,
    };
    let outcome = subgraph_isomorphism(&pattern.graph, &host.graph, &colorer, options).map_err(err)?;
    match outcome.embedding {
        Some(eta) => {
            println!("YES");
            for (u, &x) in eta.iter().enumerate() {
                println!("{} -> {}", pattern.labels.name(u), host.labels.name(x));
            }
            Ok(ExitCode::SUCCESS)
        }
        None => {
            println!("NO");
            Ok(ExitCode::from(1))
        }
    }
}

fn bench(sizes: &[usize], p: usize, seed: u64) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for &n in sizes {
        if n < 3 {
            return Err(format!("size {n} is below 3"));
        }
        let t = generators::random_triangulation(n, &mut rng);
        let start = Instant::now();
        let gp = planar_geodesic_partition(&t.graph, &t.rotation).map_err(err)?;
        let partition_ms = start.elapsed().as_secs_f64() * 1e3;
        let start = Instant::now();
        let c = planar_centered_coloring(&t.graph, &t.rotation, p).map_err(err)?;
        let coloring_ms = start.elapsed().as_secs_f64() * 1e3;
        println!(
            "n={n} parts={} width={} partition_ms={partition_ms:.1} colors={} coloring_ms={coloring_ms:.1}",
            gp.partition.len(),
            gp.decomposition.width(),
            c.distinct()
        );
    }
    Ok(ExitCode::SUCCESS)
}

fn with_suffix(prefix: &Path, extension: &str) -> PathBuf {
    let mut name = prefix.as_os_str().to_owned();
    name.push(".");
    name.push(extension);
    PathBuf::from(name)
}

fn write_embedded(e: &generators::EmbeddedGraph, prefix: &Path) -> Result<(), String> {
    let labels = Labels::identity(e.graph.n());
    write(&with_suffix(prefix, "el"), &io::write_edge_list(&e.graph, &labels))?;
    write(&with_suffix(prefix, "rot"), &io::write_rotation(&e.rotation, &labels))
}

fn generate(command: GenCommand) -> Outcome {
    match command {
        GenCommand::Grid { rows, cols, output } => {
            if rows == 0 || cols == 0 {
                return Err("grid needs positive dimensions".into());
            }
            write_embedded(&generators::grid(rows, cols), &output)?;
        }
        GenCommand::Torus { rows, cols, output } => {
            if rows < 3 || cols < 3 {
                return Err("toroidal grids need at least 3 rows and 3 columns".into());
            }
            write_embedded(&generators::toroidal_grid(rows, cols), &output)?;
        }
        GenCommand::Triangulation { n, seed, output } => {
            if n < 3 {
                return Err("a triangulation needs at least three vertices".into());
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            write_embedded(&generators::random_triangulation(n, &mut rng), &output)?;
        }
        GenCommand::Ktree {
            n,
            k,
            keep,
            seed,
            output,
        } => {
            if n == 0 || !(0.0..=1.0).contains(&keep) {
                return Err("ktree needs n >= 1 and keep in [0, 1]".into());
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let (g, td) = generators::random_partial_ktree(n, k, keep, &mut rng);
            let labels = Labels::identity(n);
            write(&with_suffix(&output, "el"), &io::write_edge_list(&g, &labels))?;
            write(&with_suffix(&output, "td"), &io::write_td(&td))?;
        }
    }
    Ok(ExitCode::SUCCESS)
}
