use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use kolam::parallel::{par_brute_distribution, par_enumerate_solutions, with_threads};
use kolam::program_file::read_program;
use kolam::ratio::percent;
use kolam::report::{count_value, ProgramDescriptor, RunReport};
use kolam::svg::{render_svg, SvgStyle};
use kolam_core::engine::DEFAULT_BRUTE_LIMIT;
use kolam_core::{
    component_polynomial, count_infinite_with_peak, evaluate_assignment, evolution_stats, Assignment, CountOptions,
    Mode, MorseProgram,
};

#[derive(Parser)]
#[command(name = "kolam", version, about = "Count, verify, enumerate and draw one-line Kolam drawings")]
struct Cli {
    /// Print a JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,

    /// Worker threads for exhaustive search (default: all cores).
    #[arg(long, global = true, value_name = "K")]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
#[group(required = true, multiple = false)]
struct Source {
    /// Diamond grid with rows 1-3-…-(2N+1)-…-3-1.
    #[arg(long, value_name = "N", value_parser = clap::value_parser!(u32).range(1..=60))]
    diamond: Option<u32>,

    /// Program file.
    #[arg(long, value_name = "FILE")]
    program: Option<PathBuf>,
}

#[derive(Args, Clone)]
struct BruteLimit {
    /// Largest number of sites searched exhaustively.
    #[arg(long, env = "KOLAM_BRUTE_LIMIT", default_value_t = DEFAULT_BRUTE_LIMIT)]
    limit: usize,

    /// Ignore the limit (up to 63 sites).
    #[arg(long)]
    force: bool,
}

impl BruteLimit {
    fn effective(&self) -> usize {
        if self.force {
            63
        } else {
            self.limit
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Exact,
    A0,
}

#[derive(Subcommand)]
enum Command {
    /// Number of single-curve drawings.
    Count {
        #[command(flatten)]
        source: Source,
        #[arg(long, value_enum, default_value = "a0")]
        mode: ModeArg,
        /// Evolve the upper half only and glue it to itself.
        #[arg(long)]
        split: bool,
        /// Remove boundary choices that are forced in every solution.
        #[arg(long)]
        reduce: bool,
    },
    /// Full component polynomial.
    Poly {
        #[command(flatten)]
        source: Source,
    },
    /// Exhaustive component histogram.
    Brute {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        limit: BruteLimit,
    },
    /// Runs every applicable method and checks that they agree.
    Verify {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        limit: BruteLimit,
    },
    /// Writes every single-curve assignment.
    Solutions {
        #[command(flatten)]
        source: Source,
        #[arg(long, value_name = "DIR")]
        out: PathBuf,
        /// Also write one SVG per solution (diamond grids only).
        #[arg(long)]
        render: bool,
        #[command(flatten)]
        limit: BruteLimit,
    },
    /// Upper-half evolution statistics.
    Stats {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        reduce: bool,
    },
    /// Draws one assignment as SVG (diamond grids only).
    Render {
        #[command(flatten)]
        source: Source,
        /// Site choices as hex, first site most significant.
        #[arg(long, value_name = "HEX")]
        assignment: String,
        #[arg(long, value_name = "FILE")]
        out: PathBuf,
        #[command(flatten)]
        style: StyleArgs,
    },
    /// Times the algebraic and exhaustive methods.
    Bench {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        limit: BruteLimit,
        #[arg(long, default_value_t = 3)]
        repeat: u32,
    },
}

#[derive(Args, Clone)]
struct StyleArgs {
    #[arg(long)]
    stroke: Option<String>,
    #[arg(long)]
    stroke_width: Option<f64>,
    #[arg(long)]
    dot_radius: Option<f64>,
    /// Transparent background.
    #[arg(long)]
    transparent: bool,
}

impl StyleArgs {
    fn style(&self) -> SvgStyle {
        let mut style = SvgStyle::default();
        if let Some(s) = &self.stroke {
            style.stroke.clone_from(s);
        }
        if let Some(w) = self.stroke_width {
            style.stroke_width = w;
        }
        if let Some(r) = self.dot_radius {
            style.dot_radius = r;
        }
        if self.transparent {
            style.background = None;
        }
        style
    }
}

struct Loaded {
    program: MorseProgram,
    descriptor: ProgramDescriptor,
}

fn load(source: &Source) -> anyhow::Result<Loaded> {
    if let Some(n) = source.diamond {
        let program = MorseProgram::diamond(n as usize);
        let descriptor =
            ProgramDescriptor::Diamond { n: n as usize, strands: program.strands(), sites: program.site_count() };
        return Ok(Loaded { program, descriptor });
    }
    let path = source.program.as_ref().expect("clap enforces one source");
    let program = read_program(path).with_context(|| format!("reading {}", path.display()))?;
    let descriptor = ProgramDescriptor::File {
        path: path.display().to_string(),
        strands: program.strands(),
        sites: program.site_count(),
    };
    Ok(Loaded { program, descriptor })
}

/// Milliseconds since `start`, to the microsecond.
fn ms(start: Instant) -> f64 {
    (start.elapsed().as_secs_f64() * 1e6).round() / 1e3
}

/// Either prints the JSON report or the text lines.
fn emit(json: bool, report: &RunReport, text: &[String]) {
    if json {
        println!("{}", report.to_json());
    } else {
        for line in text {
            println!("{line}");
        }
    }
}

fn total_assignments(sites: usize) -> Option<u128> {
    1u128.checked_shl(sites as u32).filter(|_| sites < 128)
}

fn run(cli: Cli) -> anyhow::Result<ExitCode> {
    let json = cli.json;
    let threads = cli.threads;
    if threads == Some(0) {
        bail!("--threads must be at least 1");
    }
    match cli.command {
        Command::Count { source, mode, split, reduce } => {
            let Loaded { program, descriptor } = load(&source)?;
            let options = CountOptions {
                split,
                reduce,
                mode: match mode {
                    ModeArg::Exact => Mode::Exact,
                    ModeArg::A0 => Mode::A0,
                },
                ..CountOptions::default()
            };
            let start = Instant::now();
            let (count, peak) = count_infinite_with_peak(&program, &options)?;
            let elapsed = ms(start);
            let sites = program.site_count();
            let ratio = total_assignments(sites).and_then(|total| percent(count, total, 7));
            let mut report = RunReport::new("count", descriptor)
                .option("mode", if options.mode == Mode::Exact { "exact" } else { "a0" })
                .option("split", split)
                .option("reduce", reduce);
            report.result = json!({ "count": count_value(count), "sites": sites, "ratio": ratio });
            report.timings_ms.insert("count".into(), elapsed);
            report.peak_state_size = Some(peak);
            let mut text = vec![count.to_string()];
            if let Some(r) = ratio {
                text.push(format!("ratio {r} of 2^{sites}"));
            }
            emit(json, &report, &text);
        }
        Command::Poly { source } => {
            let Loaded { program, descriptor } = load(&source)?;
            let start = Instant::now();
            let poly = component_polynomial(&program)?;
            let elapsed = ms(start);
            let coeffs: Vec<Value> = poly.coeffs().iter().map(|&c| count_value(c)).collect();
            let mut report = RunReport::new("poly", descriptor);
            report.result = json!({ "coefficients": coeffs, "display": poly.to_string() });
            report.timings_ms.insert("evolve".into(), elapsed);
            let list: Vec<String> = poly.coeffs().iter().map(ToString::to_string).collect();
            emit(json, &report, &[format!("P(a) = {poly}"), format!("coefficients [{}]", list.join(", "))]);
        }
        Command::Brute { source, limit } => {
            let Loaded { program, descriptor } = load(&source)?;
            let start = Instant::now();
            let dist = with_threads(threads, || par_brute_distribution(&program, limit.effective()))?;
            let elapsed = ms(start);
            let histogram: BTreeMap<String, Value> =
                dist.counts.iter().map(|(k, v)| (k.to_string(), count_value(*v))).collect();
            let mut report = RunReport::new("brute", descriptor).option("limit", limit.effective());
            report.result = json!({ "histogram": histogram, "total": count_value(dist.total()), "single": count_value(dist.single()) });
            report.timings_ms.insert("brute".into(), elapsed);
            let mut text = vec!["components count".to_string()];
            text.extend(dist.counts.iter().map(|(k, v)| format!("{k:>10} {v}")));
            text.push(format!("single {} of {}", dist.single(), dist.total()));
            emit(json, &report, &text);
        }
        Command::Verify { source, limit } => {
            let Loaded { program, descriptor } = load(&source)?;
            let mut results: BTreeMap<String, u128> = BTreeMap::new();
            let mut timings = BTreeMap::new();
            let mut peak = 0;
            let mut variants = vec![
                ("a0", CountOptions::default()),
                ("exact", CountOptions { mode: Mode::Exact, ..CountOptions::default() }),
                ("a0_reduced", CountOptions { reduce: true, ..CountOptions::default() }),
            ];
            if program.is_palindromic() {
                variants.push(("a0_split", CountOptions { split: true, ..CountOptions::default() }));
                variants.push(("a0_split_reduced", CountOptions::fastest()));
            }
            for (name, options) in variants {
                let start = Instant::now();
                let (count, p) = count_infinite_with_peak(&program, &options)?;
                timings.insert(name.to_string(), ms(start));
                peak = peak.max(p);
                results.insert(name.into(), count);
            }
            let start = Instant::now();
            let poly = component_polynomial(&program)?;
            timings.insert("polynomial".into(), ms(start));
            results.insert("polynomial".into(), poly.coefficient(1));
            let mut poly_matches_brute = None;
            if program.site_count() <= limit.effective().min(63) {
                let start = Instant::now();
                let dist = with_threads(threads, || par_brute_distribution(&program, limit.effective()))?;
                timings.insert("brute".into(), ms(start));
                results.insert("brute".into(), dist.single());
                poly_matches_brute = Some(dist.to_poly() == poly);
            }
            let first = *results.values().next().expect("at least one method");
            let agree = results.values().all(|&c| c == first) && poly_matches_brute != Some(false);
            let mut report = RunReport::new("verify", descriptor).option("limit", limit.effective());
            let counts: BTreeMap<&String, Value> = results.iter().map(|(k, v)| (k, count_value(*v))).collect();
            report.result = json!({ "agree": agree, "counts": counts, "polynomial_matches_brute": poly_matches_brute });
            report.timings_ms = timings;
            report.peak_state_size = Some(peak);
            let mut text: Vec<String> = results.iter().map(|(k, v)| format!("{k:<18} {v}")).collect();
            if let Some(m) = poly_matches_brute {
                text.push(format!("{:<18} {}", "poly == brute", if m { "yes" } else { "NO" }));
            }
            text.push(if agree { "ok".into() } else { "MISMATCH".into() });
            emit(json, &report, &text);
            if !agree {
                return Ok(ExitCode::from(1));
            }
        }
        Command::Solutions { source, out, render, limit } => {
            let Loaded { program, descriptor } = load(&source)?;
            let n = program.diamond_parameter();
            if render && n.is_none() {
                bail!("--render needs a diamond program");
            }
            let start = Instant::now();
            let solutions = with_threads(threads, || par_enumerate_solutions(&program, limit.effective()))?;
            let search = ms(start);
            std::fs::create_dir_all(&out).with_context(|| format!("creating {}", out.display()))?;
            let listing: String = solutions.iter().map(|a| a.to_hex() + "\n").collect();
            let list_path = out.join("solutions.txt");
            std::fs::write(&list_path, listing).with_context(|| format!("writing {}", list_path.display()))?;
            let mut rendered = 0;
            let start = Instant::now();
            if let (true, Some(n)) = (render, n) {
                let style = SvgStyle::default();
                for a in &solutions {
                    let svg = render_svg(n, a, &style)?;
                    write_file(&out.join(format!("{}.svg", a.to_hex())), &svg)?;
                    rendered += 1;
                }
            }
            let mut report = RunReport::new("solutions", descriptor).option("render", render);
            report.result = json!({
                "count": solutions.len(),
                "listing": list_path.display().to_string(),
                "rendered": rendered,
            });
            report.timings_ms.insert("search".into(), search);
            if render {
                report.timings_ms.insert("render".into(), ms(start));
            }
            emit(json, &report, &[format!("{} solutions written to {}", solutions.len(), list_path.display())]);
        }
        Command::Stats { source, reduce } => {
            let Loaded { program, descriptor } = load(&source)?;
            let start = Instant::now();
            let stats = evolution_stats(&program, reduce)?;
            let elapsed = ms(start);
            let mut report = RunReport::new("stats", descriptor).option("reduce", reduce);
            report.result = json!({
                "surviving_diagram_weight": count_value(stats.surviving_diagram_weight),
                "distinct_basis_states": stats.distinct_basis_states,
                "middle_basis_states": stats.middle_basis_states,
                "tracked_endpoints": stats.tracked_endpoints,
                "row_state_sizes": stats.row_state_sizes,
            });
            report.timings_ms.insert("evolve".into(), elapsed);
            report.peak_state_size = stats.row_state_sizes.iter().copied().max();
            let sizes: Vec<String> = stats.row_state_sizes.iter().map(ToString::to_string).collect();
            emit(
                json,
                &report,
                &[
                    format!("surviving diagram weight {}", stats.surviving_diagram_weight),
                    format!("distinct basis states    {}", stats.distinct_basis_states),
                    format!("after middle row         {}", stats.middle_basis_states),
                    format!("tracked endpoints        {}", stats.tracked_endpoints),
                    format!("states per upper row     {}", sizes.join(" ")),
                ],
            );
        }
        Command::Render { source, assignment, out, style } => {
            let Loaded { program, descriptor } = load(&source)?;
            let Some(n) = program.diamond_parameter() else { bail!("render needs a diamond program") };
            let a = Assignment::from_hex(&assignment, program.site_count())?;
            let components = evaluate_assignment(&program, &a)?;
            let svg = render_svg(n, &a, &style.style())?;
            write_file(&out, &svg)?;
            let mut report = RunReport::new("render", descriptor).option("assignment", a.to_hex());
            report.result = json!({ "components": components, "out": out.display().to_string() });
            emit(json, &report, &[format!("{components} curve(s) written to {}", out.display())]);
        }
        Command::Bench { source, limit, repeat } => {
            let Loaded { program, descriptor } = load(&source)?;
            let repeat = repeat.max(1);
            let mut timings = BTreeMap::new();
            let mut counts = BTreeMap::new();
            let mut methods: Vec<(&str, CountOptions)> = vec![
                ("a0", CountOptions::default()),
                ("exact", CountOptions { mode: Mode::Exact, ..CountOptions::default() }),
            ];
            if program.is_palindromic() {
                methods.push(("a0_split_reduced", CountOptions::fastest()));
            }
            for (name, options) in methods {
                let mut best = f64::INFINITY;
                for _ in 0..repeat {
                    let start = Instant::now();
                    let (count, _) = count_infinite_with_peak(&program, &options)?;
                    best = best.min(ms(start));
                    counts.insert(name.to_string(), count);
                }
                timings.insert(name.to_string(), best);
            }
            if program.site_count() <= limit.effective().min(63) {
                let start = Instant::now();
                let dist = with_threads(threads, || par_brute_distribution(&program, limit.effective()))?;
                timings.insert("brute".into(), ms(start));
                counts.insert("brute".into(), dist.single());
            }
            let mut report = RunReport::new("bench", descriptor).option("repeat", repeat);
            let values: BTreeMap<&String, Value> = counts.iter().map(|(k, v)| (k, count_value(*v))).collect();
            report.result = json!({ "counts": values });
            report.timings_ms = timings.clone();
            let text: Vec<String> =
                timings.iter().map(|(k, t)| format!("{k:<18} {t:>12.3} ms  count {}", counts[k])).collect();
            emit(json, &report, &text);
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn write_file(path: &Path, contents: &str) -> anyhow::Result<()> {
    std::fs::write(path, contents).with_context(|| format!("writing {}", path.display()))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
