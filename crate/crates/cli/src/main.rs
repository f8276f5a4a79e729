use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use siegel_core::covariants::{parse_poly, resolve, Covariant, CovariantError, SEXTIC};
use siegel_core::modp::{
    char2_action_check, char2_lift_invariant, char3_hasse_check, discriminant_smoothness_check, k1, k3, k4, reduce_mod_p,
    unipotent_invariance, ModpError,
};
use siegel_core::numap::{actual_minimal_chi10_power, nu_normalized, NuError};
use siegel_core::ringlab::{
    named_form_cached, odd_weight_divisibility_check, verify_even_generation, weight_6_8_probe, FormCache, RingError,
};
use siegel_core::theta::chi_6_8;

const CHI68_GOLDEN: &str = include_str!("../golden/chi6_8_N2.txt");

#[derive(Parser, Debug)]
#[command(name = "siegel", version, about = "Siegel modular forms of degree 2 from covariants of binary sextics")]
struct Cli {
    /// Truncation order N: coefficients of q1^n1 q2^n2 with n1, n2 <= N.
    #[arg(long, global = true)]
    order: Option<u32>,
    /// Work over F_p instead of Q (covariant command).
    #[arg(long, global = true)]
    prime: Option<u64>,
    /// Directory of the expansion cache.
    #[arg(long, global = true, env = "SIEGEL_CACHE_DIR")]
    cache: Option<PathBuf>,
    /// Ignore the cache entirely.
    #[arg(long, global = true)]
    no_cache: bool,
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print a catalog covariant, a named invariant, or a parsed polynomial.
    Covariant { input: String },
    /// Fourier expansion of a registered form.
    Expand { name: String },
    /// Run a verification suite.
    Verify {
        suite: Suite,
        /// Largest even weight for the even-ring suite.
        #[arg(long, default_value_t = 30)]
        kmax: u32,
    },
    /// Image of a covariant under the substitution map.
    Nu {
        covariant: String,
        /// Power of chi10 kept; the least workable power when omitted.
        #[arg(long)]
        power: Option<u32>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Suite {
    EvenRing,
    Chi68Block,
    #[value(name = "char2-K")]
    Char2K,
    Char3,
    OddWeight,
    S68Probe,
    Char2Discriminant,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Format {
    Text,
    Json,
}

/// A fully resolved invocation.
#[derive(Debug)]
struct JobSpec {
    command: Command,
    truncation: Option<u32>,
    prime: Option<u64>,
    cache: Option<FormCache>,
    format: Format,
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Compute(String),
}

impl From<RingError> for Failure {
    fn from(e: RingError) -> Self {
        match e {
            RingError::UnknownName(_) | RingError::Covariant(CovariantError::UnknownName(_)) => Failure::Usage(e.to_string()),
            _ => Failure::Compute(e.to_string()),
        }
    }
}

impl From<CovariantError> for Failure {
    fn from(e: CovariantError) -> Self {
        match e {
            CovariantError::UnknownName(_) | CovariantError::Parse { .. } => Failure::Usage(e.to_string()),
            _ => Failure::Compute(e.to_string()),
        }
    }
}

impl From<ModpError> for Failure {
    fn from(e: ModpError) -> Self {
        match e {
            ModpError::Arith(_) => Failure::Usage(e.to_string()),
            _ => Failure::Compute(e.to_string()),
        }
    }
}

impl From<NuError> for Failure {
    fn from(e: NuError) -> Self {
        match e {
            NuError::Covariant(c) => c.into(),
            NuError::OddOrder(_) | NuError::PowerTooLarge { .. } => Failure::Usage(e.to_string()),
            _ => Failure::Compute(e.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let job = JobSpec {
        command: cli.command,
        truncation: cli.order,
        prime: cli.prime,
        cache: if cli.no_cache { None } else { cli.cache.map(FormCache::new) },
        format: if cli.json { Format::Json } else { Format::Text },
    };
    if job.truncation == Some(0) {
        eprintln!("error: --order must be at least 1");
        return ExitCode::from(2);
    }
    match run(&job) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Compute(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

fn run(job: &JobSpec) -> Result<bool, Failure> {
    match &job.command {
        Command::Covariant { input } => covariant(job, input),
        Command::Expand { name } => expand(job, name),
        Command::Verify { suite, kmax } => verify(job, *suite, *kmax),
        Command::Nu { covariant, power } => nu(job, covariant, *power),
    }
}

fn lookup_covariant(input: &str) -> Result<Covariant, Failure> {
    match resolve(input) {
        Ok(c) => Ok(c),
        Err(CovariantError::UnknownName(_)) => Ok(Covariant::from_poly(parse_poly(input, SEXTIC)?)?),
        Err(e) => Err(e.into()),
    }
}

fn covariant(job: &JobSpec, input: &str) -> Result<bool, Failure> {
    let c = lookup_covariant(input)?;
    let (text, value) = match job.prime {
        Some(p) => {
            let r = reduce_mod_p(&c, p)?;
            (r.render(), r.to_json())
        }
        None => (c.render(), c.to_json()),
    };
    match job.format {
        Format::Text => println!("{text}"),
        Format::Json => println!("{value}"),
    }
    Ok(true)
}

fn expand(job: &JobSpec, name: &str) -> Result<bool, Failure> {
    if job.prime.is_some() {
        return Err(Failure::Usage("--prime applies to the covariant command only".into()));
    }
    let n = job.truncation.unwrap_or(2);
    let form = named_form_cached(name, n, job.cache.as_ref())?;
    match job.format {
        Format::Text => print!("{}", form.expansion.render_text(n)),
        Format::Json => println!("{}", json!({ "name": form.name, "normalization": form.normalization, "expansion": form.expansion.to_json() })),
    }
    Ok(true)
}

fn nu(job: &JobSpec, name: &str, power: Option<u32>) -> Result<bool, Failure> {
    let c = lookup_covariant(name)?;
    let n = job.truncation.unwrap_or(2);
    let r = match power {
        Some(m) => nu_normalized(&c, m, (n + 1).saturating_sub(m).max(1))?,
        None => actual_minimal_chi10_power(&c, n + 1)?,
    };
    let f = r.expansion.truncate([n, n]);
    match job.format {
        Format::Text => {
            println!("chi10 power {}, holomorphic: {}", r.chi10_power, r.holomorphic);
            print!("{}", f.render_text(n));
        }
        Format::Json => println!(
            "{}",
            json!({ "covariant": name, "chi10_power": r.chi10_power, "holomorphic": r.holomorphic, "expansion": f.to_json() })
        ),
    }
    Ok(true)
}

/// One line of a verification report.
fn report(job: &JobSpec, check: &str, ok: bool, detail: serde_json::Value) -> bool {
    let status = if ok { "PASS" } else { "FAIL" };
    match job.format {
        Format::Text => println!("{check}: {status} {detail}"),
        Format::Json => println!("{}", json!({ "check": check, "status": status, "detail": detail })),
    }
    ok
}

fn verify(job: &JobSpec, suite: Suite, kmax: u32) -> Result<bool, Failure> {
    match suite {
        Suite::EvenRing => {
            let n = job.truncation.unwrap_or(3);
            let rows = verify_even_generation(kmax, n)?;
            let mut all = true;
            for row in rows {
                let ok = row.rank as u64 == row.expected_dim;
                let detail = json!({ "weight": row.weight, "dim": row.expected_dim, "rank": row.rank, "truncation": row.truncation });
                all &= report(job, &format!("even weight {}", row.weight), ok, detail);
            }
            Ok(all)
        }
        Suite::Chi68Block => {
            let text = chi_6_8(2).map_err(|e| Failure::Compute(e.to_string()))?.render_text(2);
            Ok(report(job, "chi6_8 block at N = 2", text == CHI68_GOLDEN, json!({ "lines": text.lines().count() })))
        }
        Suite::Char2K => {
            let k1 = k1();
            let k2 = char2_lift_invariant("K2", &resolve("A")?)?;
            let k4 = k4()?;
            let mut all = report(job, "K2 = K1^2", k2.poly == k1.poly.pow(2), json!({ "K1": k1.poly.render() }));
            let k3 = k3(&k4);
            all &= report(job, "K1 divides K4", k3.is_ok(), json!({ "K4_terms": k4.poly.len(), "K4_is_K1^4": k4.poly == k1.poly.pow(4) }));
            let mut invariants = vec![k1, k2, k4];
            invariants.extend(k3.ok());
            for k in &invariants {
                let ok = unipotent_invariance(k) && char2_action_check(k, 10, 2024);
                all &= report(job, &format!("{} invariant", k.name), ok, json!({ "degree": k.degree, "terms": k.poly.len() }));
            }
            Ok(all)
        }
        Suite::Char3 => {
            let r = char3_hasse_check()?;
            let ok = r.sign.is_some() && r.degree_two_dimension == 1;
            Ok(report(
                job,
                "A mod 3 = ±(a1*a5 - a2*a4)",
                ok,
                json!({ "reduced": r.reduced, "sign": r.sign, "degree_two_dimension": r.degree_two_dimension }),
            ))
        }
        Suite::OddWeight => {
            let r = odd_weight_divisibility_check(job.truncation.unwrap_or(5))?;
            let ok = r.status == siegel_core::ringlab::Status::Pass;
            Ok(report(job, "chi35 and chi35^2 at weight 70", ok, serde_json::to_value(&r).expect("serializable")))
        }
        Suite::S68Probe => {
            let r = weight_6_8_probe(job.truncation.unwrap_or(2))?;
            let ok = r.status == siegel_core::ringlab::Status::Pass;
            Ok(report(job, "weight (6, 8) probe", ok, serde_json::to_value(&r).expect("serializable")))
        }
        Suite::Char2Discriminant => {
            let (_, samples) = discriminant_smoothness_check(5, 7)?;
            let ok = samples.iter().all(|s| s.smooth == s.invariant_nonzero);
            Ok(report(job, "lifted discriminant detects singular curves", ok, serde_json::to_value(&samples).expect("serializable")))
        }
    }
}
