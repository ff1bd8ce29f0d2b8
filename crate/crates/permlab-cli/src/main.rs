//! `permlab`: permutation statistics, pattern avoidance, Dyck paths and
//! the 321/132 bijections from the command line.
//!
//! Exit codes: 0 on success, 1 for parse or domain errors, 2 for usage
//! errors (clap rejections, unknown statistics, bad variable maps).

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use permlab_core::bijections::{gamma_with_trace, theta_inverse, theta_with_trace};
use permlab_core::dist::{
    catalan_qp, cfrac_series, default_vars, distribution_with_vars, wilf_partition, CfracSpec,
    Stat,
};
use permlab_core::dyck::{phi_inv, steps_to_string, DyckPath};
use permlab_core::perm::Permutation;
use permlab_core::poly::MultiPoly;
use permlab_core::stats::{arc_pairs, statistics, ArcKind};
use permlab_core::tableaux::{psi, rsk};
use permlab_core::verify;

#[derive(Parser)]
#[command(name = "permlab", version, about = "Exact permutation combinatorics")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
enum Format {
    #[default]
    Json,
    Csv,
}

#[derive(Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
enum VerifyFormat {
    #[default]
    Table,
    Json,
    Csv,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MapName {
    Theta,
    ThetaInv,
    Gamma,
    R,
    C,
    I,
    Rc,
    Rci,
    Psi,
    PhiInv,
}

#[derive(Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
enum CatalanMode {
    #[default]
    Recurrence,
    Cfrac,
    Enumerate,
}

#[derive(Subcommand)]
enum Command {
    /// Print all statistics and arc pairs of a permutation
    Stats {
        perm: String,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Apply a bijection or trivial involution to a permutation (or, for
    /// phi-inv, to a Dyck word)
    Apply {
        #[arg(value_enum)]
        map: MapName,
        input: String,
        /// Emit the construction trace where the map has one
        #[arg(long)]
        trace: bool,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Joint distribution polynomial over S_n or an avoidance class
    Dist {
        #[arg(long)]
        n: usize,
        /// Comma-separated patterns in compact digit form, e.g. 123,132
        #[arg(long)]
        avoid: Option<String>,
        /// Comma-separated statistics from fp,exc,crs,nes,inv,maj
        #[arg(long, default_value = "")]
        stats: String,
        /// Explicit variable names, e.g. crs=x,nes=y
        #[arg(long)]
        vars: Option<String>,
        /// Print the human-readable polynomial only
        #[arg(long)]
        pretty: bool,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
        #[arg(long)]
        jobs: Option<usize>,
    },
    /// Partition patterns into Wilf classes modulo a statistic set
    Wilf {
        #[arg(long = "n-max")]
        n_max: usize,
        #[arg(long)]
        patterns: String,
        #[arg(long)]
        stats: String,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// The two-variable Catalan polynomial C_n(q,p)
    Catalan {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t)]
        mode: CatalanMode,
        #[arg(long)]
        pretty: bool,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Dyck path operations
    Dyck {
        #[command(subcommand)]
        command: DyckCommand,
    },
    /// Run the identity suite and print a pass/fail table
    Verify {
        #[arg(long = "n-max", default_value_t = 7)]
        n_max: usize,
        #[arg(long, value_enum, default_value_t)]
        format: VerifyFormat,
        #[arg(long)]
        jobs: Option<usize>,
    },
}

#[derive(Subcommand)]
enum DyckCommand {
    /// Tunnels of a Dyck word with left/centered/right counts
    Tunnels {
        word: String,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// The 132-avoiding permutation read off a Dyck word
    ToPerm {
        word: String,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// The Dyck word of a 321-avoiding permutation
    FromPerm {
        perm: String,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Centered multitunnel decompositions of a Dyck word
    Multitunnels {
        word: String,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
}

/// A failure with the exit code it should produce.
#[derive(Debug)]
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn domain(message: impl Into<String>) -> Self {
        Failure {
            code: 1,
            message: message.into(),
        }
    }

    fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: 2,
            message: message.into(),
        }
    }
}

impl From<permlab_core::Error> for Failure {
    fn from(err: permlab_core::Error) -> Self {
        use permlab_core::Error;
        match err {
            Error::UnknownStatistic(_) | Error::BadVarMapping(_) => Failure::usage(err.to_string()),
            _ => Failure::domain(err.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(output) => {
            println!("{output}");
            ExitCode::SUCCESS
        }
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            ExitCode::from(failure.code)
        }
    }
}

fn parse_perm(text: &str) -> Result<Permutation, Failure> {
    text.parse::<Permutation>().map_err(Failure::from)
}

fn parse_dyck(text: &str) -> Result<DyckPath, Failure> {
    text.parse::<DyckPath>().map_err(Failure::from)
}

fn parse_patterns(list: &str) -> Result<Vec<Permutation>, Failure> {
    list.split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|t| parse_perm(t.trim()))
        .collect()
}

fn parse_stats(list: &str) -> Result<Vec<Stat>, Failure> {
    list.split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|t| t.trim().parse::<Stat>().map_err(Failure::from))
        .collect()
}

/// Statistic-to-variable assignment: explicit `stat=var` entries first,
/// defaults (dodging the reserved names) for the rest.
fn resolve_vars(stats: &[Stat], explicit: Option<&str>) -> Result<Vec<(Stat, String)>, Failure> {
    let mut overrides: Vec<(Stat, String)> = Vec::new();
    if let Some(text) = explicit {
        for item in text.split(',').filter(|t| !t.trim().is_empty()) {
            let (stat, var) = item
                .split_once('=')
                .ok_or_else(|| permlab_core::Error::BadVarMapping(item.to_string()))?;
            let stat = stat.trim().parse::<Stat>()?;
            let var = var.trim();
            if var.is_empty() || overrides.iter().any(|(s, v)| *s == stat || v == var) {
                return Err(permlab_core::Error::BadVarMapping(item.to_string()).into());
            }
            if !stats.contains(&stat) {
                return Err(Failure::usage(format!(
                    "variable mapping names `{stat}`, which is not in --stats"
                )));
            }
            overrides.push((stat, var.to_string()));
        }
    }
    let defaults = default_vars(stats);
    let mut out = Vec::with_capacity(stats.len());
    let mut taken: Vec<String> = overrides.iter().map(|(_, v)| v.clone()).collect();
    for (stat, default_name) in defaults {
        if let Some((_, name)) = overrides.iter().find(|(s, _)| *s == stat) {
            out.push((stat, name.clone()));
            continue;
        }
        let name = if taken.contains(&default_name) {
            ["x", "y", "q", "p", "z", "w"]
                .into_iter()
                .find(|c| !taken.iter().any(|t| t == c))
                .expect("six names cover five statistics")
                .to_string()
        } else {
            default_name
        };
        taken.push(name.clone());
        out.push((stat, name));
    }
    Ok(out)
}

fn resolve_jobs(flag: Option<usize>) -> Result<usize, Failure> {
    let jobs = match flag {
        Some(j) => j,
        None => match std::env::var("PERMLAB_JOBS") {
            Ok(text) => text
                .parse::<usize>()
                .map_err(|_| Failure::usage(format!("PERMLAB_JOBS=`{text}` is not a number")))?,
            Err(_) => std::thread::available_parallelism().map_or(1, |p| p.get().min(8)),
        },
    };
    if jobs == 0 {
        return Err(Failure::usage("--jobs must be at least 1"));
    }
    Ok(jobs)
}

fn to_json(value: &impl Serialize) -> String {
    serde_json::to_string(value).expect("serializable output")
}

fn poly_output(poly: &MultiPoly, wrap: impl FnOnce(&MultiPoly) -> serde_json::Value, pretty: bool, format: Format) -> String {
    if pretty {
        return poly.pretty();
    }
    match format {
        Format::Json => wrap(poly).to_string(),
        Format::Csv => poly.to_csv().trim_end().to_string(),
    }
}

fn run(command: Command) -> Result<String, Failure> {
    match command {
        Command::Stats { perm, format } => {
            let sigma = parse_perm(&perm)?;
            let s = statistics(&sigma);
            match format {
                Format::Json => {
                    let mut arcs = [Vec::new(), Vec::new(), Vec::new(), Vec::new()];
                    for pair in arc_pairs(&sigma) {
                        let bucket = match pair.kind {
                            ArcKind::UpperCrossing => 0,
                            ArcKind::LowerCrossing => 1,
                            ArcKind::UpperNesting => 2,
                            ArcKind::LowerNesting => 3,
                        };
                        arcs[bucket].push(json!([pair.i, pair.j]));
                    }
                    Ok(json!({
                        "perm": sigma,
                        "n": sigma.len(),
                        "fp": s.fp, "exc": s.exc, "crs": s.crs,
                        "nes": s.nes, "inv": s.inv, "maj": s.maj,
                        "arcs": {
                            "upper_crossings": arcs[0],
                            "lower_crossings": arcs[1],
                            "upper_nestings": arcs[2],
                            "lower_nestings": arcs[3],
                        },
                    })
                    .to_string())
                }
                Format::Csv => Ok(format!(
                    "fp,exc,crs,nes,inv,maj\n{},{},{},{},{},{}",
                    s.fp, s.exc, s.crs, s.nes, s.inv, s.maj
                )),
            }
        }

        Command::Apply {
            map,
            input,
            trace,
            format,
        } => {
            let (output, trace_json): (String, Option<serde_json::Value>) = match map {
                MapName::Theta => {
                    let sigma = parse_perm(&input)?;
                    let (image, t) = theta_with_trace(&sigma)?;
                    (
                        image.to_string(),
                        trace.then(|| serde_json::to_value(&t).unwrap()),
                    )
                }
                MapName::ThetaInv => {
                    let alpha = parse_perm(&input)?;
                    (theta_inverse(&alpha)?.to_string(), None)
                }
                MapName::Gamma => {
                    let sigma = parse_perm(&input)?;
                    let (image, t) = gamma_with_trace(&sigma)?;
                    (
                        image.to_string(),
                        trace.then(|| serde_json::to_value(&t).unwrap()),
                    )
                }
                MapName::R => (parse_perm(&input)?.reverse().to_string(), None),
                MapName::C => (parse_perm(&input)?.complement().to_string(), None),
                MapName::I => (parse_perm(&input)?.inverse().to_string(), None),
                MapName::Rc => (parse_perm(&input)?.reverse_complement().to_string(), None),
                MapName::Rci => (
                    parse_perm(&input)?.reverse_complement_inverse().to_string(),
                    None,
                ),
                MapName::Psi => {
                    let sigma = parse_perm(&input)?;
                    let path = psi(&sigma)?;
                    (
                        path.to_string(),
                        trace.then(|| serde_json::to_value(rsk(&sigma)).unwrap()),
                    )
                }
                MapName::PhiInv => {
                    let path = parse_dyck(&input)?;
                    (phi_inv(&path).to_string(), None)
                }
            };
            let map_name = match map {
                MapName::Theta => "theta",
                MapName::ThetaInv => "theta-inv",
                MapName::Gamma => "gamma",
                MapName::R => "r",
                MapName::C => "c",
                MapName::I => "i",
                MapName::Rc => "rc",
                MapName::Rci => "rci",
                MapName::Psi => "psi",
                MapName::PhiInv => "phi-inv",
            };
            match format {
                Format::Json => {
                    let mut obj = json!({
                        "map": map_name,
                        "input": input,
                        "output": output,
                    });
                    if let Some(t) = trace_json {
                        obj["trace"] = t;
                    }
                    Ok(obj.to_string())
                }
                Format::Csv => Ok(format!("output\n{output}")),
            }
        }

        Command::Dist {
            n,
            avoid,
            stats,
            vars,
            pretty,
            format,
            jobs,
        } => {
            let patterns = parse_patterns(avoid.as_deref().unwrap_or(""))?;
            let stats = parse_stats(&stats)?;
            let assignment = resolve_vars(&stats, vars.as_deref())?;
            let jobs = resolve_jobs(jobs)?;
            let poly = distribution_with_vars(n, &patterns, &assignment, jobs);
            Ok(poly_output(
                &poly,
                |p| {
                    json!({
                        "n": n,
                        "avoid": patterns,
                        "stats": assignment
                            .iter()
                            .map(|(s, v)| json!({"stat": s.name(), "var": v}))
                            .collect::<Vec<_>>(),
                        "poly": p,
                        "pretty": p.pretty(),
                    })
                },
                pretty,
                format,
            ))
        }

        Command::Wilf {
            n_max,
            patterns,
            stats,
            format,
        } => {
            let patterns = parse_patterns(&patterns)?;
            if patterns.is_empty() {
                return Err(Failure::usage("--patterns must name at least one pattern"));
            }
            let stats = parse_stats(&stats)?;
            if stats.is_empty() {
                return Err(Failure::usage("--stats must name at least one statistic"));
            }
            let report = wilf_partition(&patterns, &stats, n_max);
            match format {
                Format::Json => Ok(to_json(&report)),
                Format::Csv => {
                    let mut out = String::from("class,pattern");
                    for (index, class) in report.classes.iter().enumerate() {
                        for pattern in &class.patterns {
                            out.push_str(&format!("\n{},{}", index + 1, pattern));
                        }
                    }
                    Ok(out)
                }
            }
        }

        Command::Catalan {
            n,
            mode,
            pretty,
            format,
        } => {
            let poly = match mode {
                CatalanMode::Recurrence => catalan_qp(n).poly,
                CatalanMode::Cfrac => cfrac_series(&CfracSpec::qp_catalan(), n).pop().unwrap(),
                CatalanMode::Enumerate => {
                    let pattern: Permutation = "321".parse().unwrap();
                    distribution_with_vars(
                        n,
                        &[pattern],
                        &default_vars(&[Stat::Exc, Stat::Crs]),
                        resolve_jobs(None)?,
                    )
                }
            };
            let mode_name = match mode {
                CatalanMode::Recurrence => "recurrence",
                CatalanMode::Cfrac => "cfrac",
                CatalanMode::Enumerate => "enumerate",
            };
            Ok(poly_output(
                &poly,
                |p| json!({"n": n, "mode": mode_name, "poly": p, "pretty": p.pretty()}),
                pretty,
                format,
            ))
        }

        Command::Dyck { command } => run_dyck(command),

        Command::Verify {
            n_max,
            format,
            jobs,
        } => {
            let jobs = resolve_jobs(jobs)?;
            let reports = run_verify(n_max, jobs);
            let failed = reports.iter().filter(|r| !r.pass).count();
            let output = match format {
                VerifyFormat::Table => {
                    let mut lines: Vec<String> = reports
                        .iter()
                        .map(|r| match &r.detail {
                            None => format!("{} {}", if r.pass { "PASS" } else { "FAIL" }, r.name),
                            Some(d) => format!("FAIL {} — {d}", r.name),
                        })
                        .collect();
                    lines.push(format!(
                        "{} checks, {} passed, {failed} failed (n_max={n_max})",
                        reports.len(),
                        reports.len() - failed,
                    ));
                    lines.join("\n")
                }
                VerifyFormat::Json => to_json(&reports),
                VerifyFormat::Csv => {
                    let mut out = String::from("check,pass");
                    for r in &reports {
                        out.push_str(&format!("\n{},{}", r.name, r.pass));
                    }
                    out
                }
            };
            if failed > 0 {
                // the table itself is the diagnostic
                println!("{output}");
                return Err(Failure::domain(format!("{failed} checks failed")));
            }
            Ok(output)
        }
    }
}

fn run_dyck(command: DyckCommand) -> Result<String, Failure> {
    match command {
        DyckCommand::Tunnels { word, format } => {
            let path = parse_dyck(&word)?;
            let (lt, ct, rt) = path.tunnel_counts();
            let tunnels = path.tunnels();
            match format {
                Format::Json => Ok(json!({
                    "word": path,
                    "n": path.semilength(),
                    "counts": {"lt": lt, "ct": ct, "rt": rt},
                    "tunnels": tunnels
                        .iter()
                        .map(|t| {
                            json!({
                                "up": t.up_index,
                                "down": t.down_index,
                                "midpoint_x": t.midpoint_x(),
                                "side": t.side,
                            })
                        })
                        .collect::<Vec<_>>(),
                })
                .to_string()),
                Format::Csv => {
                    let mut out = String::from("up,down,midpoint_x,side");
                    for t in tunnels {
                        out.push_str(&format!(
                            "\n{},{},{},{}",
                            t.up_index,
                            t.down_index,
                            t.midpoint_x(),
                            match t.side {
                                permlab_core::TunnelSide::Left => "left",
                                permlab_core::TunnelSide::Centered => "centered",
                                permlab_core::TunnelSide::Right => "right",
                            }
                        ));
                    }
                    Ok(out)
                }
            }
        }
        DyckCommand::ToPerm { word, format } => {
            let path = parse_dyck(&word)?;
            let sigma = phi_inv(&path);
            match format {
                Format::Json => Ok(json!({"word": path, "perm": sigma}).to_string()),
                Format::Csv => Ok(format!("perm\n{sigma}")),
            }
        }
        DyckCommand::FromPerm { perm, format } => {
            let sigma = parse_perm(&perm)?;
            let path = psi(&sigma)?;
            match format {
                Format::Json => Ok(json!({"perm": sigma, "word": path}).to_string()),
                Format::Csv => Ok(format!("word\n{path}")),
            }
        }
        DyckCommand::Multitunnels { word, format } => {
            let path = parse_dyck(&word)?;
            let splits = path.centered_multitunnels();
            match format {
                Format::Json => Ok(json!({
                    "word": path,
                    "count": splits.len(),
                    "splits": splits
                        .iter()
                        .map(|s| {
                            json!({
                                "a": steps_to_string(&s.a),
                                "b": s.b,
                                "c": steps_to_string(&s.c),
                            })
                        })
                        .collect::<Vec<_>>(),
                })
                .to_string()),
                Format::Csv => {
                    let mut out = String::from("a,b,c");
                    for s in splits {
                        out.push_str(&format!(
                            "\n{},{},{}",
                            steps_to_string(&s.a),
                            s.b,
                            steps_to_string(&s.c)
                        ));
                    }
                    Ok(out)
                }
            }
        }
    }
}

/// Runs the checks, fanned out over `jobs` worker threads; report order
/// matches the registry regardless of scheduling.
fn run_verify(n_max: usize, jobs: usize) -> Vec<verify::CheckReport> {
    let checks = verify::all_checks();
    if jobs <= 1 {
        return verify::run_all(n_max);
    }
    let total = checks.len();
    let slots: Vec<std::sync::Mutex<Option<verify::CheckReport>>> =
        (0..total).map(|_| std::sync::Mutex::new(None)).collect();
    let next = std::sync::atomic::AtomicUsize::new(0);
    std::thread::scope(|scope| {
        for _ in 0..jobs.min(total) {
            scope.spawn(|| loop {
                let index = next.fetch_add(1, std::sync::atomic::Ordering::Relaxed);
                if index >= total {
                    break;
                }
                let check = &checks[index];
                let report = match (check.run)(n_max) {
                    Ok(()) => verify::CheckReport {
                        name: check.name,
                        pass: true,
                        detail: None,
                    },
                    Err(detail) => verify::CheckReport {
                        name: check.name,
                        pass: false,
                        detail: Some(detail),
                    },
                };
                *slots[index].lock().unwrap() = Some(report);
            });
        }
    });
    slots
        .into_iter()
        .map(|slot| slot.into_inner().unwrap().unwrap())
        .collect()
}
