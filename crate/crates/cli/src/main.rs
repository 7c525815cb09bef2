//! Command-line front door: group validation, measure-table emission,
//! consistency/coherency/character checks, sampling runs, and correlation
//! grids. Every command is scripted and reproducible; `--manifest` drops a
//! JSON run manifest next to each output file.
//!
//! Exit codes: 0 success, 1 check failure (with the defect location),
//! 2 usage errors, 3 computational errors.

mod output;

use std::collections::HashMap;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use bigwreath_core::group::ValidationReport;
use bigwreath_core::measures::{self, MeasureTable};
use bigwreath_core::multipartition::{self, enumerate_multipartitions};
use bigwreath_core::sampler::{self, RngStream};
use bigwreath_core::scalar::{parse_scalar_vec, Backend, Scalar, FLOAT_TOL};
use bigwreath_core::wreath::{self, WreathEnumeration};
use bigwreath_core::{characters, FiniteGroup, WreathElement};
use bigwreath_whittaker::{mixed_correlation, WhittakerKernel};

use output::{quote_csv, write_output, RunManifest};

#[derive(Parser)]
#[command(
    name = "bigwreath",
    version,
    about = "Exact and Monte Carlo computations for harmonic analysis on wreath products G~S(n)"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Validate a group-spec document.
    Group {
        #[command(subcommand)]
        action: GroupAction,
    },
    /// Emit a measure table on multiple partitions as JSON.
    Measure {
        #[arg(value_enum)]
        kind: MeasureKind,
        /// Group spec file (bundled names like z2 / s3 also work).
        #[arg(long)]
        group: Option<String>,
        #[arg(long)]
        n: usize,
        /// Comma-separated scalars: t-vector (ewens) or z-vector.
        #[arg(long)]
        params: String,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        manifest: bool,
    },
    /// Run a consistency / coherency / character defect check.
    Check {
        #[arg(value_enum)]
        kind: CheckKind,
        #[arg(long)]
        group: String,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        params: Option<String>,
        /// Measure family for mps / coherency (defaults to the family the
        /// check is a theorem for: mps <- ewens, coherency <- multiz).
        #[arg(long, value_enum)]
        family: Option<Family>,
    },
    /// Export the character table of G~S(n) as CSV.
    Chartab {
        #[arg(long)]
        group: String,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        manifest: bool,
    },
    /// Seeded sampling runs, dumped as CSV.
    Sample {
        #[arg(value_enum)]
        kind: SampleKind,
        #[arg(long)]
        group: String,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        params: String,
        #[arg(long, default_value_t = 1)]
        reps: usize,
        /// Randomness must be seeded explicitly.
        #[arg(long, required = true)]
        seed: Option<u64>,
        #[arg(long, default_value_t = 0)]
        stream: u64,
        /// For ewens: dump the whole projection-compatible trajectory.
        #[arg(long)]
        trajectory: bool,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        manifest: bool,
    },
    /// Correlation functions of the Whittaker determinantal process.
    Corr {
        #[arg(value_enum)]
        kind: CorrKind,
        /// z (whittaker) or comma-separated z-vector (mixed), e.g. "3/2+1/2i".
        #[arg(long)]
        z: String,
        /// Points: "x1,x2,..." (whittaker) or colors separated by '|' (mixed).
        #[arg(long)]
        points: Option<String>,
        /// Density grid "start:stop:count" for the one-point function.
        #[arg(long)]
        grid: Option<String>,
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
        /// Group spec, required for mixed correlations.
        #[arg(long)]
        group: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        manifest: bool,
    },
}

#[derive(Subcommand)]
enum GroupAction {
    Validate { spec: String },
}

#[derive(Clone, Copy, ValueEnum)]
enum MeasureKind {
    Ewens,
    Zmeasure,
    Multizmeasure,
}

#[derive(Clone, Copy, ValueEnum)]
enum CheckKind {
    Mps,
    Coherency,
    Zexpansion,
    Classsizes,
    Projection,
}

#[derive(Clone, Copy, ValueEnum, PartialEq)]
enum Family {
    Ewens,
    Multiz,
}

#[derive(Clone, Copy, ValueEnum)]
enum SampleKind {
    Ewens,
    Mpd,
}

#[derive(Clone, Copy, ValueEnum)]
enum CorrKind {
    Whittaker,
    Mixed,
}

/// Errors carrying the process exit code.
enum CliError {
    /// Malformed user input beyond clap's reach (exit 2).
    Usage(String),
    /// Failed computation or I/O (exit 3).
    Computation(String),
}

type CliResult<T> = Result<T, CliError>;

impl From<bigwreath_core::Error> for CliError {
    fn from(e: bigwreath_core::Error) -> Self {
        CliError::Computation(e.to_string())
    }
}

impl From<bigwreath_whittaker::WhittakerError> for CliError {
    fn from(e: bigwreath_whittaker::WhittakerError) -> Self {
        CliError::Computation(e.to_string())
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Computation(format!("i/o: {e}"))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(CliError::Usage(msg)) => {
            eprintln!("usage error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Computation(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}

const BUNDLED: &[(&str, &str)] = &[
    ("trivial", bigwreath_core::group::bundled::TRIVIAL),
    ("z2", bigwreath_core::group::bundled::Z2),
    ("z3", bigwreath_core::group::bundled::Z3),
    ("z2xz2", bigwreath_core::group::bundled::Z2XZ2),
    ("s3", bigwreath_core::group::bundled::S3),
];

fn load_group(spec: &str) -> CliResult<(FiniteGroup, ValidationReport)> {
    let text = if std::path::Path::new(spec).exists() {
        std::fs::read_to_string(spec)?
    } else {
        let name = spec.trim_end_matches(".group").to_ascii_lowercase();
        match BUNDLED.iter().find(|(n, _)| *n == name) {
            Some((_, text)) => text.to_string(),
            None => {
                let fallback = PathBuf::from("groups").join(spec);
                if fallback.exists() {
                    std::fs::read_to_string(fallback)?
                } else {
                    return Err(CliError::Computation(format!(
                        "group spec {spec:?} not found (no such file and not a bundled name)"
                    )));
                }
            }
        }
    };
    FiniteGroup::load_from_str(&text).map_err(Into::into)
}

fn parse_params(s: &str) -> CliResult<Vec<Scalar>> {
    parse_scalar_vec(s).map_err(|e| {
        CliError::Usage(format!(
            "{e}; parameters are comma-separated scalars: integers, p/q rationals, \
             decimals, or complex a+bi with rational components (e.g. \"3/2+1/2i\")"
        ))
    })
}

fn params_backend(params: &[Scalar]) -> Backend {
    if params.iter().all(Scalar::is_exact) {
        Backend::Exact
    } else {
        Backend::Float
    }
}

fn effective_backend(group: &FiniteGroup, params: &[Scalar]) -> Backend {
    match (group.backend, params_backend(params)) {
        (Backend::Exact, Backend::Exact) => Backend::Exact,
        _ => Backend::Float,
    }
}

fn require_param_count(params: &[Scalar], g: &FiniteGroup) -> CliResult<()> {
    if params.len() != g.k() {
        return Err(CliError::Usage(format!(
            "{} parameters for a group with k={} conjugacy classes",
            params.len(),
            g.k()
        )));
    }
    Ok(())
}

fn positive_f64_params(params: &[Scalar]) -> CliResult<Vec<f64>> {
    let mut out = Vec::with_capacity(params.len());
    for p in params {
        let v = p.re_f64();
        if !(v > 0.0) {
            return Err(CliError::Usage(format!(
                "parameter {p} must be strictly positive"
            )));
        }
        out.push(v);
    }
    Ok(out)
}

fn run(cli: Cli) -> CliResult<u8> {
    let argv: Vec<String> = std::env::args().collect();
    let command_line = argv.join(" ");
    match cli.command {
        Command::Group {
            action: GroupAction::Validate { spec },
        } => cmd_group_validate(&spec),
        Command::Measure {
            kind,
            group,
            n,
            params,
            out,
            manifest,
        } => cmd_measure(kind, group, n, &params, out, manifest, &command_line),
        Command::Check {
            kind,
            group,
            n,
            params,
            family,
        } => cmd_check(kind, &group, n, params.as_deref(), family),
        Command::Chartab {
            group,
            n,
            out,
            manifest,
        } => cmd_chartab(&group, n, out, manifest, &command_line),
        Command::Sample {
            kind,
            group,
            n,
            params,
            reps,
            seed,
            stream,
            trajectory,
            out,
            manifest,
        } => cmd_sample(
            kind,
            &group,
            n,
            &params,
            reps,
            seed.expect("clap enforces --seed"),
            stream,
            trajectory,
            out,
            manifest,
            &command_line,
        ),
        Command::Corr {
            kind,
            z,
            points,
            grid,
            tol,
            group,
            out,
            manifest,
        } => cmd_corr(
            kind,
            &z,
            points.as_deref(),
            grid.as_deref(),
            tol,
            group.as_deref(),
            out,
            manifest,
            &command_line,
        ),
    }
}

fn cmd_group_validate(spec: &str) -> CliResult<u8> {
    match load_group(spec) {
        Ok((_, report)) => {
            println!("group {} valid", report.name);
            println!(
                "  order {} with {} conjugacy classes",
                report.order, report.k
            );
            println!("  class sizes {:?}", report.class_sizes);
            println!("  irreducible dimensions {:?}", report.dims);
            println!(
                "  backend {}{}",
                report.backend,
                if report.downgraded_to_float {
                    " (downgraded: non-rational character entries)"
                } else {
                    ""
                }
            );
            println!(
                "  max orthogonality defect {:.3e}",
                report.max_orthogonality_defect
            );
            for note in &report.notes {
                println!("  note: {note}");
            }
            Ok(0)
        }
        Err(CliError::Computation(msg))
            if msg.contains("not a group table")
                || msg.contains("character table")
                || msg.contains("classes disagree") =>
        {
            println!("group {spec} INVALID: {msg}");
            Ok(1)
        }
        Err(e) => Err(e),
    }
}

fn cmd_measure(
    kind: MeasureKind,
    group_spec: Option<String>,
    n: usize,
    params: &str,
    out: Option<PathBuf>,
    manifest: bool,
    command_line: &str,
) -> CliResult<u8> {
    let params = parse_params(params)?;
    let (table, backend, group_name) = match kind {
        MeasureKind::Zmeasure => {
            if params.len() != 1 {
                return Err(CliError::Usage("zmeasure takes a single z".into()));
            }
            let table = measures::z_measure(n, &params[0])?;
            (table, params_backend(&params), None)
        }
        MeasureKind::Ewens | MeasureKind::Multizmeasure => {
            let spec = group_spec
                .as_deref()
                .ok_or_else(|| CliError::Usage("--group is required".into()))?;
            let (g, _) = load_group(spec)?;
            require_param_count(&params, &g)?;
            let table = match kind {
                MeasureKind::Ewens => measures::ewens_pushforward(&g, n, &params)?,
                _ => measures::multiple_z_measure(&g, n, &params)?,
            };
            (
                table,
                effective_backend(&g, &params),
                Some(spec.to_string()),
            )
        }
    };
    let json = table.to_json_string();
    write_output(out.as_deref(), &json)?;
    if manifest {
        RunManifest::new(
            command_line,
            group_name,
            Some(params_to_string(&params)),
            backend,
            None,
            None,
        )
        .write_next_to(out.as_deref())?;
    }
    Ok(0)
}

fn params_to_string(params: &[Scalar]) -> String {
    params
        .iter()
        .map(|p| p.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

fn report_outcome(name: &str, report: &bigwreath_core::DefectReport, backend: Backend) -> u8 {
    let pass = match backend {
        Backend::Exact => report.exact_zero,
        Backend::Float => report.max_abs <= FLOAT_TOL,
    };
    println!("{name}: {report}");
    if pass {
        println!("{name}: PASS");
        0
    } else {
        println!("{name}: FAIL");
        1
    }
}

fn cmd_check(
    kind: CheckKind,
    group_spec: &str,
    n: usize,
    params: Option<&str>,
    family: Option<Family>,
) -> CliResult<u8> {
    let (g, _) = load_group(group_spec)?;
    match kind {
        CheckKind::Mps | CheckKind::Coherency => {
            let default_family = match kind {
                CheckKind::Mps => Family::Ewens,
                _ => Family::Multiz,
            };
            let family = family.unwrap_or(default_family);
            let params = parse_params(params.ok_or_else(|| {
                CliError::Usage("--params (t-vector or z-vector) required".into())
            })?)?;
            require_param_count(&params, &g)?;
            let backend = effective_backend(&g, &params);
            let tables: Vec<MeasureTable> = (1..=n)
                .map(|m| match family {
                    Family::Ewens => measures::ewens_pushforward(&g, m, &params),
                    Family::Multiz => measures::multiple_z_measure(&g, m, &params),
                })
                .collect::<Result<_, _>>()?;
            let report = match kind {
                CheckKind::Mps => multipartition::check_mps(&tables)?,
                _ => {
                    let mut worst: Option<bigwreath_core::DefectReport> = None;
                    for pair in tables.windows(2) {
                        let r = measures::check_coherency(&pair[0], &pair[1], &g)?;
                        worst = Some(match worst {
                            None => r,
                            Some(w) if r.max_abs > w.max_abs || (w.exact_zero && !r.exact_zero) => {
                                r
                            }
                            Some(mut w) => {
                                w.checked += r.checked;
                                w
                            }
                        });
                    }
                    worst.ok_or_else(|| CliError::Usage("need n >= 2 levels".into()))?
                }
            };
            let name = match kind {
                CheckKind::Mps => "mps consistency",
                _ => "coherency",
            };
            Ok(report_outcome(name, &report, backend))
        }
        CheckKind::Zexpansion => {
            let params = parse_params(
                params.ok_or_else(|| CliError::Usage("--params (z-vector) required".into()))?,
            )?;
            require_param_count(&params, &g)?;
            let backend = effective_backend(&g, &params);
            let report = characters::verify_z_cycle_expansion(&g, n, &params)?;
            Ok(report_outcome("z-cycle expansion", &report, backend))
        }
        CheckKind::Classsizes => cmd_check_classsizes(&g, n),
        CheckKind::Projection => {
            let params = parse_params(
                params.ok_or_else(|| CliError::Usage("--params (t-vector) required".into()))?,
            )?;
            require_param_count(&params, &g)?;
            cmd_check_projection(&g, n, &params)
        }
    }
}

fn cmd_check_classsizes(g: &FiniteGroup, n: usize) -> CliResult<u8> {
    for m in 1..=n {
        let mut counts: HashMap<String, u64> = HashMap::new();
        for x in WreathEnumeration::new(g, m, None)? {
            *counts
                .entry(wreath::cycle_type(g, &x).to_string())
                .or_default() += 1;
        }
        for mp in enumerate_multipartitions(m as u64, g.k()) {
            let formula = wreath::class_size(&mp, g)?;
            let counted = counts.get(&mp.to_string()).copied().unwrap_or(0);
            if formula != counted.into() {
                println!(
                    "class sizes: FAIL at n={m}, class {mp}: formula {formula}, counted {counted}"
                );
                return Ok(1);
            }
        }
        println!("class sizes: n={m} all classes agree with enumeration");
    }
    println!("class sizes: PASS");
    Ok(0)
}

fn cmd_check_projection(g: &FiniteGroup, n: usize, t: &[Scalar]) -> CliResult<u8> {
    let backend = effective_backend(g, t);
    for m in 1..=n {
        let mut sums: HashMap<WreathElement, Scalar> = HashMap::new();
        for x in WreathEnumeration::new(g, m + 1, None)? {
            let p = measures::ewens_element_prob(g, &x, t)?;
            let down = wreath::project(g, &x)?;
            sums.entry(down)
                .and_modify(|acc| *acc = &*acc + &p)
                .or_insert(p);
        }
        for x in WreathEnumeration::new(g, m, None)? {
            let direct = measures::ewens_element_prob(g, &x, t)?;
            let summed = sums.get(&x).cloned().unwrap_or_else(Scalar::zero);
            let ok = match backend {
                Backend::Exact => direct.approx_eq(&summed, 0.0),
                Backend::Float => direct.approx_eq(&summed, FLOAT_TOL),
            };
            if !ok {
                println!(
                    "projection consistency: FAIL at level {m} element {x}: \
                     {direct} vs preimage sum {summed}"
                );
                return Ok(1);
            }
        }
        println!(
            "projection consistency: level {} -> {} exact over {} elements",
            m + 1,
            m,
            wreath::wreath_order(g, m + 1)
        );
    }
    println!("projection consistency: PASS");
    Ok(0)
}

fn cmd_chartab(
    group_spec: &str,
    n: usize,
    out: Option<PathBuf>,
    manifest: bool,
    command_line: &str,
) -> CliResult<u8> {
    let (g, _) = load_group(group_spec)?;
    let (index, table) = characters::wreath_character_table(&g, n)?;
    let mut csv = String::new();
    csv.push_str(&format!(
        "# character table of {}~S({n}), rows = irreducibles, columns = classes\n",
        g.name
    ));
    let header: Vec<String> = std::iter::once("irrep".to_string())
        .chain(index.iter().map(|mp| quote_csv(&mp.to_string())))
        .collect();
    csv.push_str(&header.join(","));
    csv.push('\n');
    let sizes: Vec<String> = std::iter::once("class_size".to_string())
        .chain(
            index
                .iter()
                .map(|mp| wreath::class_size(mp, &g).map(|s| s.to_string()))
                .collect::<Result<Vec<_>, _>>()?,
        )
        .collect();
    csv.push_str(&sizes.join(","));
    csv.push('\n');
    for (row, irrep) in table.iter().zip(index.iter()) {
        let cells: Vec<String> = std::iter::once(quote_csv(&irrep.to_string()))
            .chain(row.iter().map(|v| quote_csv(&v.to_string())))
            .collect();
        csv.push_str(&cells.join(","));
        csv.push('\n');
    }
    write_output(out.as_deref(), &csv)?;
    if manifest {
        RunManifest::new(
            command_line,
            Some(group_spec.to_string()),
            None,
            g.backend,
            None,
            None,
        )
        .write_next_to(out.as_deref())?;
    }
    Ok(0)
}

#[allow(clippy::too_many_arguments)]
fn cmd_sample(
    kind: SampleKind,
    group_spec: &str,
    n: usize,
    params: &str,
    reps: usize,
    seed: u64,
    stream: u64,
    trajectory: bool,
    out: Option<PathBuf>,
    manifest: bool,
    command_line: &str,
) -> CliResult<u8> {
    let (g, _) = load_group(group_spec)?;
    let parsed = parse_params(params)?;
    let t = positive_f64_params(&parsed)?;
    if t.len() != g.k() {
        return Err(CliError::Usage(format!(
            "{} parameters for a group with k={} classes",
            t.len(),
            g.k()
        )));
    }
    let mut rng = RngStream::new(seed, stream);
    let mut csv = String::new();
    csv.push_str(&format!(
        "# seed={seed} stream={stream} group={} n={n} params={params}\n",
        g.name
    ));
    match kind {
        SampleKind::Ewens => {
            csv.push_str("replicate,level,element\n");
            for rep in 0..reps {
                let traj = sampler::sample_ewens_trajectory(&g, n, &t, &mut rng)?;
                if trajectory {
                    for (level, x) in traj.iter().enumerate() {
                        csv.push_str(&format!(
                            "{rep},{},{}\n",
                            level + 1,
                            quote_csv(&x.to_string())
                        ));
                    }
                } else {
                    let x = traj.last().expect("n >= 1");
                    csv.push_str(&format!("{rep},{n},{}\n", quote_csv(&x.to_string())));
                }
            }
        }
        SampleKind::Mpd => {
            csv.push_str("replicate,color,delta,weights\n");
            for rep in 0..reps {
                let s = sampler::sample_multiple_pd(&t, sampler::DEFAULT_STICK_RESIDUAL, &mut rng)?;
                for l in 0..t.len() {
                    let ws: Vec<String> = s.weights[l]
                        .iter()
                        .take(50)
                        .map(|w| format!("{w:.17e}"))
                        .collect();
                    csv.push_str(&format!(
                        "{rep},{},{:.17e},{}\n",
                        l + 1,
                        s.deltas[l],
                        quote_csv(&ws.join(" "))
                    ));
                }
            }
        }
    }
    write_output(out.as_deref(), &csv)?;
    if manifest {
        RunManifest::new(
            command_line,
            Some(group_spec.to_string()),
            Some(params.to_string()),
            Backend::Float,
            Some(seed),
            Some(stream),
        )
        .write_next_to(out.as_deref())?;
    }
    Ok(0)
}

fn parse_point_list(s: &str) -> CliResult<Vec<f64>> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|x| {
            x.trim()
                .parse::<f64>()
                .map_err(|_| CliError::Usage(format!("bad point {x:?}")))
        })
        .collect()
}

#[allow(clippy::too_many_arguments)]
fn cmd_corr(
    kind: CorrKind,
    z_str: &str,
    points: Option<&str>,
    grid: Option<&str>,
    tol: f64,
    group_spec: Option<&str>,
    out: Option<PathBuf>,
    manifest: bool,
    command_line: &str,
) -> CliResult<u8> {
    let z = parse_params(z_str)?;
    let mut csv = String::new();
    match kind {
        CorrKind::Whittaker => {
            if z.len() != 1 {
                return Err(CliError::Usage("whittaker takes a single z".into()));
            }
            let kernel = WhittakerKernel::new(z[0].to_c64())?;
            csv.push_str(&format!("# corr whittaker z={} tol={tol}\n", z[0]));
            match (points, grid) {
                (Some(p), None) => {
                    let pts = parse_point_list(p)?;
                    let value = kernel.correlation(&pts)?;
                    csv.push_str(&format!(
                        "{},value,est_error\n",
                        (1..=pts.len())
                            .map(|i| format!("x{i}"))
                            .collect::<Vec<_>>()
                            .join(",")
                    ));
                    let cols: Vec<String> = pts
                        .iter()
                        .map(|x| x.to_string())
                        .chain([format!("{value:.15e}"), String::from("0")])
                        .collect();
                    csv.push_str(&cols.join(","));
                    csv.push('\n');
                }
                (None, Some(gspec)) => {
                    let parts: Vec<&str> = gspec.split(':').collect();
                    if parts.len() != 3 {
                        return Err(CliError::Usage("grid format is start:stop:count".into()));
                    }
                    let start: f64 = parts[0]
                        .parse()
                        .map_err(|_| CliError::Usage("bad grid start".into()))?;
                    let stop: f64 = parts[1]
                        .parse()
                        .map_err(|_| CliError::Usage("bad grid stop".into()))?;
                    let count: usize = parts[2]
                        .parse()
                        .map_err(|_| CliError::Usage("bad grid count".into()))?;
                    if count < 2 {
                        return Err(CliError::Usage("grid count must be at least 2".into()));
                    }
                    csv.push_str("x,value,est_error\n");
                    for i in 0..count {
                        let x = start + (stop - start) * i as f64 / (count - 1) as f64;
                        if x == 0.0 {
                            continue;
                        }
                        let rho = kernel.rho1(x)?;
                        csv.push_str(&format!("{x},{rho:.15e},0\n"));
                    }
                }
                _ => {
                    return Err(CliError::Usage(
                        "exactly one of --points or --grid is required".into(),
                    ))
                }
            }
        }
        CorrKind::Mixed => {
            let spec = group_spec
                .ok_or_else(|| CliError::Usage("--group is required for mixed".into()))?;
            let (g, _) = load_group(spec)?;
            let p = points.ok_or_else(|| {
                CliError::Usage("--points \"x|y,z|...\" (one block per color) required".into())
            })?;
            let blocks: Vec<Vec<f64>> = p
                .split('|')
                .map(parse_point_list)
                .collect::<CliResult<_>>()?;
            if blocks.len() != g.k() {
                return Err(CliError::Usage(format!(
                    "{} point blocks for a group with k={} classes",
                    blocks.len(),
                    g.k()
                )));
            }
            let result = mixed_correlation(&g, &z, &blocks, tol)?;
            csv.push_str(&format!(
                "# corr mixed group={} z={} points={p} tol={tol}\n",
                g.name,
                params_to_string(&z)
            ));
            let flat: Vec<String> = blocks
                .iter()
                .enumerate()
                .flat_map(|(l, pts)| pts.iter().map(move |x| format!("{}:{x}", l + 1)))
                .collect();
            csv.push_str("points,value,est_error\n");
            csv.push_str(&format!(
                "{},{:.15e},{:.3e}\n",
                quote_csv(&flat.join(" ")),
                result.value,
                result.est_error
            ));
        }
    }
    write_output(out.as_deref(), &csv)?;
    if manifest {
        RunManifest::new(
            command_line,
            group_spec.map(str::to_string),
            Some(z_str.to_string()),
            Backend::Float,
            None,
            None,
        )
        .write_next_to(out.as_deref())?;
    }
    Ok(0)
}
