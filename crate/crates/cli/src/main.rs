mod report;

use std::fs;
use std::io::{self, Read as _};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use tmdd::graph::{
    compute_frontiers, complete_bipartite_graph, complete_graph, king_graph, parse_edge_list, reorder_edges,
    EdgeOrder, Graph,
};
use tmdd::mdd::{Mdd, MddStore};
use tmdd::oracle::{backtrack_enumerate, mask_edges, planar_predicate, tm_free_predicate};
use tmdd::pipeline::{ftm_subgraphs_with_stats, tm_embeddings_in, EmbeddingStats, GraphClass, ProfileChoice, Query};
use tmdd::profiles::NamedQuery;

use report::{DdSummary, HostSummary, ProfileSummary, RunReport};

#[derive(Parser)]
#[command(name = "tmdd", version, about = "Topological-minor embeddings and graph-class subgraphs via decision diagrams")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a generated host graph as an edge list
    Gen {
        #[command(subcommand)]
        kind: GenKind,
        /// Output file (stdout when omitted)
        #[arg(short, long, global = true)]
        out: Option<PathBuf>,
    },
    /// Subgraphs of a host that are subdivisions of a query graph
    Tm {
        #[command(flatten)]
        host: HostArgs,
        /// k3, k4, k4e, k5, k23, k33, or a path to an edge-list file
        #[arg(long)]
        query: String,
        #[arg(long, value_enum, default_value = "vertex")]
        profile: ProfileArg,
        #[command(flatten)]
        mode: ModeArgs,
    },
    /// Subgraphs of a host belonging to a graph class
    Class {
        #[command(flatten)]
        host: HostArgs,
        #[arg(long = "class", value_enum)]
        class: ClassArg,
        #[arg(long, value_enum, default_value = "special")]
        profile: ProfileArg,
        #[command(flatten)]
        mode: ModeArgs,
    },
    /// Count class members by plain backtracking
    Oracle {
        #[command(flatten)]
        host: HostArgs,
        #[arg(long = "class", value_enum, default_value = "planar")]
        class: ClassArg,
        /// Refuse hosts with more edges than this
        #[arg(long, default_value_t = 40)]
        max_edges: usize,
        #[command(flatten)]
        mode: ModeArgs,
    },
    /// Write the diagram of a tm or class run in the text export format.
    /// Levels follow the processing order of the host's edges.
    ExportDd {
        #[command(flatten)]
        host: HostArgs,
        #[arg(long, conflicts_with = "class", required_unless_present = "class")]
        query: Option<String>,
        #[arg(long = "class", value_enum)]
        class: Option<ClassArg>,
        #[arg(long, value_enum)]
        profile: Option<ProfileArg>,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum GenKind {
    /// Complete graph K_a
    Complete { a: usize },
    /// Complete bipartite graph K_{a,b}
    CompleteBipartite { a: usize, b: usize },
    /// King graph with the given rows and columns
    King { rows: usize, cols: usize },
}

#[derive(Args)]
struct HostArgs {
    /// Host edge-list file, `-` for stdin
    host: PathBuf,
    /// Edge processing order
    #[arg(long, value_enum, default_value = "given")]
    order: OrderArg,
}

#[derive(Args)]
struct ModeArgs {
    /// Print up to N members as 1-based edge indices
    #[arg(long, value_name = "N", conflicts_with = "stats")]
    enumerate: Option<usize>,
    /// Also print per-level node counts
    #[arg(long)]
    stats: bool,
    /// Print the report as JSON
    #[arg(long)]
    json: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum ProfileArg {
    Vertex,
    Edge,
    Special,
}

impl From<ProfileArg> for ProfileChoice {
    fn from(p: ProfileArg) -> Self {
        match p {
            ProfileArg::Vertex => ProfileChoice::Vertex,
            ProfileArg::Edge => ProfileChoice::Edge,
            ProfileArg::Special => ProfileChoice::Special,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ClassArg {
    Planar,
    Outerplanar,
    SeriesParallel,
    Cactus,
}

impl From<ClassArg> for GraphClass {
    fn from(c: ClassArg) -> Self {
        match c {
            ClassArg::Planar => GraphClass::Planar,
            ClassArg::Outerplanar => GraphClass::Outerplanar,
            ClassArg::SeriesParallel => GraphClass::SeriesParallel,
            ClassArg::Cactus => GraphClass::Cactus,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum OrderArg {
    Given,
    Bfs,
}

enum Failure {
    Usage(String),
    Lib(tmdd::Error),
}

impl From<tmdd::Error> for Failure {
    fn from(e: tmdd::Error) -> Self {
        Failure::Lib(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli.command) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Lib(e @ tmdd::Error::TooLarge { .. })) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        Err(Failure::Lib(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

/// A host as read, plus the order it is processed in.
struct Host {
    work: Graph,
    /// `to_input[i]` is the input index of processed edge `i`.
    to_input: Vec<usize>,
}

impl Host {
    fn load(args: &HostArgs) -> Result<Self, Failure> {
        let text = read_input(&args.host)?;
        let input = parse_edge_list(&text)?;
        let work = match args.order {
            OrderArg::Given => input.clone(),
            OrderArg::Bfs => reorder_edges(&input, EdgeOrder::Bfs),
        };
        let to_input = work
            .edges()
            .iter()
            .map(|e| input.edges().iter().position(|x| x == e).expect("same edge set"))
            .collect();
        Ok(Self { work, to_input })
    }

    fn summary(&self) -> HostSummary {
        HostSummary {
            n: self.work.vertex_count(),
            m: self.work.edge_count(),
            frontier_width: compute_frontiers(&self.work).width,
        }
    }

    fn to_input_sets(&self, sets: Vec<Vec<usize>>) -> Vec<Vec<usize>> {
        sets.into_iter()
            .map(|s| {
                let mut v: Vec<usize> = s.into_iter().map(|i| self.to_input[i]).collect();
                v.sort_unstable();
                v
            })
            .collect()
    }
}

fn read_input(path: &Path) -> Result<String, Failure> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
    }
}

fn parse_query(q: &str) -> Result<Query, Failure> {
    if let Ok(named) = q.parse::<NamedQuery>() {
        return Ok(Query::Named(named));
    }
    let text = read_input(Path::new(q))?;
    Ok(Query::Graph(parse_edge_list(&text)?))
}

fn profile_summary(s: &EmbeddingStats) -> ProfileSummary {
    ProfileSummary {
        query: s.query.clone(),
        colors: s.colors,
        s: s.s_len,
        t: s.t_len,
    }
}

fn finish(mut report: RunReport, mdd: Option<&Mdd>, host: &Host, mode: &ModeArgs) -> String {
    if let Some(d) = mdd {
        report.dd = Some(DdSummary {
            nodes: d.size(),
            width: d.width(),
            levels: d.level_counts(),
        });
        if let Some(n) = mode.enumerate {
            report.members = host.to_input_sets(d.enumerate_sets(n));
        }
    }
    report.show_levels = mode.stats;
    if mode.json {
        report.to_json() + "\n"
    } else {
        report.to_text()
    }
}

fn run(cmd: Command) -> Result<String, Failure> {
    match cmd {
        Command::Gen { kind, out } => {
            let g = match kind {
                GenKind::Complete { a } if a >= 2 => complete_graph(a),
                GenKind::CompleteBipartite { a, b } if a >= 1 && b >= 1 => complete_bipartite_graph(a, b),
                GenKind::King { rows, cols } if rows >= 1 && cols >= 1 && rows * cols >= 2 => king_graph(rows, cols),
                _ => return Err(Failure::Usage("generator parameters too small".into())),
            };
            let text = g.to_edge_list();
            match out {
                Some(path) => {
                    fs::write(&path, text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
                    Ok(String::new())
                }
                None => Ok(text),
            }
        }
        Command::Tm {
            host,
            query,
            profile,
            mode,
        } => {
            let host = Host::load(&host)?;
            let query = parse_query(&query)?;
            let profile = query.profile(profile.into())?;
            let start = Instant::now();
            let mut store = MddStore::new(2, host.work.edge_count());
            let (root, stats) = tm_embeddings_in(&host.work, &profile, &mut store);
            let mdd = Mdd::new(store, root);
            let count = mdd.count();
            let mut report = RunReport::new("tm", host.summary(), &count, start.elapsed().as_secs_f64());
            report.profiles.push(profile_summary(&stats));
            Ok(finish(report, Some(&mdd), &host, &mode))
        }
        Command::Class {
            host,
            class,
            profile,
            mode,
        } => {
            let host = Host::load(&host)?;
            let spec = GraphClass::from(class).spec(profile.into());
            let start = Instant::now();
            let (mdd, stats) = ftm_subgraphs_with_stats(&host.work, &spec);
            let count = mdd.count();
            let mut report = RunReport::new("class", host.summary(), &count, start.elapsed().as_secs_f64());
            report.profiles = stats.iter().map(profile_summary).collect();
            Ok(finish(report, Some(&mdd), &host, &mode))
        }
        Command::Oracle {
            host,
            class,
            max_edges,
            mode,
        } => {
            let host = Host::load(&host)?;
            let m = host.work.edge_count();
            if m > max_edges {
                return Err(tmdd::Error::TooLarge {
                    edges: m,
                    limit: max_edges,
                }
                .into());
            }
            let start = Instant::now();
            let collect = mode.enumerate.is_some();
            let result = match GraphClass::from(class) {
                GraphClass::Planar => backtrack_enumerate(&host.work, planar_predicate(&host.work), collect)?,
                cls => {
                    let forbidden: Vec<Graph> = cls.forbidden().iter().map(|q| q.graph()).collect();
                    let pred = tm_free_predicate(&host.work, &forbidden)?;
                    backtrack_enumerate(&host.work, pred, collect)?
                }
            };
            let mut report = RunReport::new("oracle", host.summary(), &result.count, start.elapsed().as_secs_f64());
            if let (Some(n), Some(members)) = (mode.enumerate, result.members) {
                let mut sets: Vec<Vec<usize>> = members.into_iter().map(mask_edges).collect();
                sets.sort();
                sets.truncate(n);
                report.members = host.to_input_sets(sets);
            }
            Ok(finish(report, None, &host, &mode))
        }
        Command::ExportDd {
            host,
            query,
            class,
            profile,
            out,
        } => {
            let host = Host::load(&host)?;
            let mdd = match (query, class) {
                (Some(q), _) => {
                    let query = parse_query(&q)?;
                    let profile = query.profile(profile.unwrap_or(ProfileArg::Vertex).into())?;
                    let mut store = MddStore::new(2, host.work.edge_count());
                    let (root, _) = tm_embeddings_in(&host.work, &profile, &mut store);
                    Mdd::new(store, root)
                }
                (None, Some(c)) => {
                    let spec = GraphClass::from(c).spec(profile.unwrap_or(ProfileArg::Special).into());
                    ftm_subgraphs_with_stats(&host.work, &spec).0
                }
                (None, None) => return Err(Failure::Usage("give --query or --class".into())),
            };
            let text = mdd.export();
            match out {
                Some(path) => {
                    fs::write(&path, text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
                    Ok(String::new())
                }
                None => Ok(text),
            }
        }
    }
}
