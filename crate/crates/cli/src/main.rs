mod format;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{ArgGroup, Parser, Subcommand};
use twistvol::bounds::{crossing_threshold, volume_bounds_with_threshold, VolumeBoundReport};
use twistvol::cone::{self, ConeError};
use twistvol::corpus::{self, CorpusError};
use twistvol::diagram::{parse_pd, parse_pd_json, DiagramError, PlanarDiagram};
use twistvol::twist::{gate_with_regions, twist_regions};

use format::{list, sig6, with_err, yes_no};

/// `println!` that exits quietly when stdout is closed (e.g. piped to `head`).
macro_rules! out {
    ($($arg:tt)*) => {{
        use std::io::Write;
        if writeln!(std::io::stdout().lock(), $($arg)*).is_err() {
            std::process::exit(0);
        }
    }};
}

const CORPUS_ENV: &str = "TWISTVOL_CORPUS";

const USAGE: u8 = 1;
const INVALID: u8 = 2;
const INAPPLICABLE: u8 = 3;

/// Twist regions, augmentation and volume bounds for knot and link diagrams.
///
/// Diagram files hold PD text (`X[a,b,c,d]` tokens, optional `O[k]` loops,
/// `#` comments and a `name:` line) or the equivalent JSON object.
#[derive(Debug, Parser)]
#[command(name = "twistvol", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Diagram statistics: crossings, faces, twist regions, primality
    Analyze {
        path: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Lower and upper volume bounds with the constants behind them
    Bounds {
        path: PathBuf,
        #[arg(long)]
        json: bool,
        /// Minimum crossings per twist region (what-if override)
        #[arg(long)]
        threshold: Option<usize>,
    },
    /// Check the hypotheses of the volume bound; exit 3 if any fails
    Check {
        path: PathBuf,
        #[arg(long)]
        json: bool,
        #[arg(long)]
        threshold: Option<usize>,
    },
    /// Volume change integral from a tube parameter, or the worst case for n cusps
    #[command(group(ArgGroup::new("input").required(true).args(["zhat", "worst_case"])))]
    HkIntegral {
        /// Lower integration limit; accepts `tanh(<radius>)`
        #[arg(long, value_parser = parse_zhat, allow_negative_numbers = true)]
        zhat: Option<f64>,
        /// Number of filled cusps, each at the minimal tube radius
        #[arg(long)]
        worst_case: Option<usize>,
    },
    /// Tube radius for a filled core of the given normalized length
    HkRho {
        #[arg(long, allow_negative_numbers = true)]
        lhat: f64,
    },
    /// Run a corpus directory against its expected values
    Corpus {
        /// Defaults to $TWISTVOL_CORPUS, then the bundled corpus
        dir: Option<PathBuf>,
    },
}

fn parse_zhat(s: &str) -> Result<f64, String> {
    let t = s.trim();
    if let Some(inner) = t.strip_prefix("tanh(").and_then(|r| r.strip_suffix(')')) {
        return inner
            .trim()
            .parse::<f64>()
            .map(f64::tanh)
            .map_err(|e| e.to_string());
    }
    t.parse::<f64>().map_err(|e| e.to_string())
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn new(code: u8, message: impl Into<String>) -> Self {
        Failure {
            code,
            message: message.into(),
        }
    }
}

impl From<ConeError> for Failure {
    fn from(e: ConeError) -> Self {
        Failure::new(INAPPLICABLE, e.to_string())
    }
}

impl From<CorpusError> for Failure {
    fn from(e: CorpusError) -> Self {
        Failure::new(INVALID, e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(USAGE)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("twistvol: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(cmd: Command) -> Result<(), Failure> {
    match cmd {
        Command::Analyze { path, json } => analyze(&path, json),
        Command::Bounds {
            path,
            json,
            threshold,
        } => bounds(&path, json, threshold),
        Command::Check {
            path,
            json,
            threshold,
        } => check(&path, json, threshold),
        Command::HkIntegral { zhat, worst_case } => hk_integral(zhat, worst_case),
        Command::HkRho { lhat } => hk_rho(lhat),
        Command::Corpus { dir } => run_corpus(dir),
    }
}

fn load(path: &Path) -> Result<PlanarDiagram, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::new(INVALID, format!("{}: {e}", path.display())))?;
    let is_json =
        path.extension().is_some_and(|x| x == "json") || text.trim_start().starts_with('{');
    let parsed = if is_json {
        // a corpus entry file is accepted too; report the plain PD error otherwise
        parse_pd_json(&text).or_else(|e| {
            serde_json::from_str::<corpus::CorpusEntry>(&text)
                .map_err(|_| e)
                .and_then(|entry| entry.diagram())
        })
    } else {
        parse_pd(&text)
    };
    let d = parsed
        .map_err(|e: DiagramError| Failure::new(INVALID, format!("{}: {e}", path.display())))?;
    Ok(match d.name() {
        Some(_) => d,
        None => {
            let stem = path
                .file_stem()
                .map(|s| s.to_string_lossy().into_owned())
                .unwrap_or_default();
            d.with_name(stem)
        }
    })
}

fn print_json(value: &impl serde::Serialize) -> Result<(), Failure> {
    let text = serde_json::to_string_pretty(value)
        .map_err(|e| Failure::new(INVALID, format!("cannot serialize report: {e}")))?;
    out!("{text}");
    Ok(())
}

fn analyze(path: &Path, json: bool) -> Result<(), Failure> {
    let d = load(path)?;
    let regions = twist_regions(&d);
    let gate = gate_with_regions(&d, &regions, crossing_threshold());
    let counts: Vec<usize> = regions.iter().map(|r| r.crossing_count).collect();
    let bigons = d.faces().iter().filter(|f| f.is_bigon()).count();
    if json {
        return print_json(&serde_json::json!({
            "name": d.name(),
            "crossings": d.crossing_count(),
            "components": d.component_count(),
            "faces": d.faces().len(),
            "bigons": bigons,
            "alternating": d.is_alternating(),
            "twist_regions": regions,
            "gate": gate,
        }));
    }
    let twist_reduced = match gate.is_twist_reduced {
        Some(b) => yes_no(b),
        None => "n/a",
    };
    out!("{}", d.name().unwrap_or("diagram"));
    out!(
        "crossings={}, components={}, faces={}, bigons={}, alternating={}",
        d.crossing_count(),
        d.component_count(),
        d.faces().len(),
        bigons,
        yes_no(d.is_alternating())
    );
    out!(
        "tw={}, regions={}, prime={}, twist-reduced={}",
        regions.len(),
        list(&counts),
        yes_no(gate.is_prime),
        twist_reduced
    );
    Ok(())
}

fn threshold_line(r: &VolumeBoundReport) -> String {
    if r.threshold_is_default {
        format!("threshold: {} crossings per region", r.gate.threshold)
    } else {
        format!(
            "threshold: {} crossings per region (what-if override; published value {})",
            r.gate.threshold,
            crossing_threshold()
        )
    }
}

fn bounds(path: &Path, json: bool, threshold: Option<usize>) -> Result<(), Failure> {
    let d = load(path)?;
    let r = volume_bounds_with_threshold(&d, threshold.unwrap_or_else(crossing_threshold));
    if json {
        return print_json(&r);
    }
    out!("diagram: {}", r.name.as_deref().unwrap_or("?"));
    out!("{}", threshold_line(&r));
    out!(
        "twist regions: {}, crossings per region: {}",
        r.twist_count,
        list(&r.gate.region_crossings)
    );
    out!(
        "hypotheses: {}",
        if r.gate.passed() {
            "satisfied"
        } else {
            "not satisfied"
        }
    );
    for f in &r.gate.failures {
        out!("  - {f}");
    }
    for (i, reg) in r.regions.iter().enumerate() {
        out!(
            "  region {i}: {} crossings, normalized slope length >= {}",
            reg.crossings,
            sig6(reg.normalized_length_floor)
        );
    }
    match (r.augmented_lower, r.volume_change, r.lower) {
        (Some(aug), Some(dv), Some(lower)) => {
            out!("augmented link volume >= {}", sig6(aug));
            out!(
                "filling volume change <= {}",
                with_err(dv.value, dv.error_estimate)
            );
            out!("lower bound: {}", sig6(lower));
        }
        _ if r.gate.passed() => {
            out!(
                "lower bound: n/a (threshold below the certified {})",
                crossing_threshold()
            )
        }
        _ => out!("lower bound: n/a (hypotheses not satisfied)"),
    }
    match r.upper {
        Some(u) => out!("upper bound: {}", sig6(u)),
        None => out!("upper bound: n/a (no twist regions)"),
    }
    let c = &r.constants;
    out!("constants          computed    published");
    for (label, pair) in [
        ("tetrahedron", &c.tetrahedron_volume),
        ("cusp density", &c.cusp_density),
        ("augmented coeff", &c.augmented_coefficient),
        ("per-cusp change", &c.per_cusp_integral),
        ("final coeff", &c.final_coefficient),
    ] {
        out!(
            "  {label:<16} {:<11} {}",
            sig6(pair.computed),
            sig6(pair.published)
        );
    }
    out!(
        "  per-cusp change error estimate: {}",
        format::err(c.per_cusp_integral_error)
    );
    Ok(())
}

fn check(path: &Path, json: bool, threshold: Option<usize>) -> Result<(), Failure> {
    let d = load(path)?;
    let t = threshold.unwrap_or_else(crossing_threshold);
    let regions = twist_regions(&d);
    let gate = gate_with_regions(&d, &regions, t);
    if json {
        print_json(&gate)?;
    } else {
        let note = if t == crossing_threshold() {
            ""
        } else {
            " (what-if threshold)"
        };
        out!(
            "{}: tw={}, regions={}, threshold={t}{note}",
            d.name().unwrap_or("diagram"),
            gate.twist_count,
            list(&gate.region_crossings)
        );
        for f in &gate.failures {
            out!("  - {f}");
        }
        out!(
            "hypotheses {}",
            if gate.passed() {
                "satisfied"
            } else {
                "not satisfied"
            }
        );
    }
    if gate.passed() {
        Ok(())
    } else {
        Err(Failure::new(
            INAPPLICABLE,
            format!("{} hypothesis check(s) failed", gate.failures.len()),
        ))
    }
}

fn hk_integral(zhat: Option<f64>, worst_case: Option<usize>) -> Result<(), Failure> {
    let q = match (zhat, worst_case) {
        (Some(z), None) => cone::delta_v_per_cusp(z)?,
        (None, Some(n)) => cone::delta_v_bound(n, None)?,
        _ => {
            return Err(Failure::new(
                USAGE,
                "give exactly one of --zhat, --worst-case",
            ))
        }
    };
    out!("{}", with_err(q.value, q.error_estimate));
    Ok(())
}

fn hk_rho(lhat: f64) -> Result<(), Failure> {
    let r = cone::solve_rho_hat(lhat)?;
    out!("{}", with_err(r, cone::ROOT_TOLERANCE));
    Ok(())
}

fn run_corpus(dir: Option<PathBuf>) -> Result<(), Failure> {
    let dir = dir
        .or_else(|| std::env::var_os(CORPUS_ENV).map(PathBuf::from))
        .unwrap_or_else(corpus::bundled_dir);
    let outcomes = corpus::run_dir(&dir)?;
    let mut failed = 0;
    for o in &outcomes {
        let file = o
            .file
            .file_name()
            .map(|f| f.to_string_lossy().into_owned())
            .unwrap_or_default();
        if o.passed() {
            out!("PASS  {} ({file})", o.name);
        } else {
            failed += 1;
            out!("FAIL  {} ({file})", o.name);
            for m in &o.mismatches {
                out!("        {m}");
            }
        }
    }
    out!(
        "corpus: {} passed, {failed} failed",
        outcomes.len() - failed
    );
    if failed == 0 {
        Ok(())
    } else {
        Err(Failure::new(
            INVALID,
            format!(
                "{failed} corpus entr{} mismatched",
                if failed == 1 { "y" } else { "ies" }
            ),
        ))
    }
}
