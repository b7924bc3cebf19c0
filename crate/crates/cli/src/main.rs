mod document;
mod output;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use baltrunc::arrowhead::diagnose_signs_with;
use baltrunc::balance::{balance_with, certify_with, certify_balanced, to_canonical_with, ReductionMethod};
use baltrunc::hinfnorm::frequency_response;
use baltrunc::lti::{check_minimality_with, check_stability, StateSpace};
use baltrunc::numkernel::Tolerances;
use baltrunc::Error;
use clap::{Parser, Subcommand, ValueEnum};
use document::{Lowered, SystemDocument};
use output::{certificate, num, nums, system, text};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "baltrunc", version, about = "Balanced truncation with a-priori error certificates")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Hankel and sign spectra, stability, minimality and per-order certificates.
    Analyze { file: PathBuf },
    /// Reduce to order `r` and certify the result.
    Reduce {
        file: PathBuf,
        #[arg(short = 'r')]
        r: usize,
        #[arg(long, value_enum, default_value_t = Method::Truncation)]
        method: Method,
    },
    /// Frequency response on a logarithmic grid, as CSV.
    Freqresp {
        file: PathBuf,
        #[arg(long, allow_negative_numbers = true)]
        wmin: f64,
        #[arg(long, allow_negative_numbers = true)]
        wmax: f64,
        #[arg(long)]
        points: usize,
    },
    /// Canonical balanced realization with its (σ, s, γ) parameters.
    Canonical { file: PathBuf },
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Truncation,
    Spa,
}

impl From<Method> for ReductionMethod {
    fn from(m: Method) -> Self {
        match m {
            Method::Truncation => ReductionMethod::Truncation,
            Method::Spa => ReductionMethod::SingularPerturbation,
        }
    }
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn new(code: u8, message: impl Into<String>) -> Self {
        Self { code, message: message.into() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::NotStable(_) => 3,
            Error::NotMinimal(_) => 4,
            Error::RepeatedHsv { .. } => 6,
            _ => 1,
        };
        Failure::new(code, e.to_string())
    }
}

type CmdResult = Result<String, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = tolerances().and_then(|tol| match &cli.command {
        Command::Analyze { file } => analyze(file, &tol),
        Command::Reduce { file, r, method } => reduce(file, *r, (*method).into(), &tol),
        Command::Freqresp { file, wmin, wmax, points } => freqresp(file, *wmin, *wmax, *points, &tol),
        Command::Canonical { file } => canonical(file, &tol),
    });
    match result {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(f) => {
            eprintln!("baltrunc: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn tolerances() -> Result<Tolerances, Failure> {
    let mut tol = Tolerances::default();
    if let Ok(spec) = std::env::var("BALTRUNC_TOL") {
        tol.apply_overrides(&spec).map_err(|e| Failure::new(2, format!("BALTRUNC_TOL: {e}")))?;
    }
    Ok(tol)
}

fn load(path: &Path, tol: &Tolerances) -> Result<Lowered, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::new(2, format!("{}: {e}", path.display())))?;
    let doc = SystemDocument::parse(&text).map_err(|m| Failure::new(2, format!("{}: {m}", path.display())))?;
    doc.lower(tol).map_err(|e| match e {
        Error::NotStable(_) => Failure::from(e),
        e => Failure::new(2, format!("{}: {e}", path.display())),
    })
}

/// Stable and minimal, or the matching exit code.
fn admissible(sys: &StateSpace, tol: &Tolerances) -> Result<(), Failure> {
    let report = check_stability(sys)?;
    if !report.stable {
        return Err(Failure::new(3, format!("system is not stable (spectral abscissa {})", text(report.spectral_abscissa))));
    }
    if !check_minimality_with(sys, tol)? {
        return Err(Failure::new(4, "system is not minimal"));
    }
    Ok(())
}

fn render(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("report serializes");
    s.push('\n');
    s
}

fn analyze(file: &Path, tol: &Tolerances) -> CmdResult {
    let Lowered { sys, arrow } = load(file, tol)?;
    admissible(&sys, tol)?;
    let abscissa = check_stability(&sys)?.spectral_abscissa;
    let bal = balance_with(&sys, tol)?;
    let n = sys.order();
    let mut certs = Vec::new();
    for r in 1..n {
        if !bal.sigma.splits_groups_at(r) {
            continue;
        }
        for method in [ReductionMethod::Truncation, ReductionMethod::SingularPerturbation] {
            certs.push(match certify_balanced(&bal, r, method, tol) {
                Ok(c) => certificate(&c),
                Err(e) => json!({ "order_r": r, "method": output::method_name(method), "error": e.to_string() }),
            });
        }
    }
    let mut report = json!({
        "order": n,
        "stable": true,
        "spectral_abscissa": num(abscissa),
        "minimal": true,
        "hankel": {
            "sigmas": nums(&bal.sigma.sigmas),
            "multiplicities": bal.sigma.multiplicities,
        },
        "signs": {
            "signs": bal.signs.signs,
            "lambdas": nums(&bal.signs.lambdas),
        },
        "arrowhead_detected": arrow.is_some() || baltrunc::arrowhead::detect_arrowhead(&sys).is_some(),
        "certificates": certs,
    });
    if let Some(ar) = arrow {
        let diag = diagnose_signs_with(&ar, tol)?;
        let (plus, minus) = diag.counts();
        let dense_plus = bal.signs.signs.iter().filter(|&&s| s > 0).count();
        let ordered = diag.ordered_signs();
        report["arrowhead"] = json!({
            "sign_multiset": { "positive": plus, "negative": minus },
            "hypothesis_ok": diag.hypothesis_ok,
            "hypothesis_note": diag.hypothesis_note,
            "uniform_trailing": diag.uniform_trailing,
            "canonical_permutation": diag.canonical_permutation.map(|p| p.iter().map(|i| i + 1).collect::<Vec<_>>()),
            "ordered_signs": ordered,
            "multiset_agrees": dense_plus == plus,
        });
    }
    Ok(render(&report))
}

fn reduce(file: &Path, r: usize, method: ReductionMethod, tol: &Tolerances) -> CmdResult {
    let Lowered { sys, .. } = load(file, tol)?;
    admissible(&sys, tol)?;
    let n = sys.order();
    if r == 0 || r > n {
        return Err(Failure::new(5, format!("reduced order {r} must lie in 1..={n}")));
    }
    let cert = certify_with(&sys, r, method, tol).map_err(|e| match e {
        Error::SplitsMultiplicityGroup(_) | Error::BadDimension(_) => Failure::new(5, e.to_string()),
        e => Failure::from(e),
    })?;
    Ok(render(&json!({ "system": system(&cert.reduced), "certificate": certificate(&cert) })))
}

fn freqresp(file: &Path, wmin: f64, wmax: f64, points: usize, tol: &Tolerances) -> CmdResult {
    if points == 0 || !wmin.is_finite() || !wmax.is_finite() || wmin < 0.0 || wmax < wmin {
        return Err(Failure::new(2, "need --points >= 1 and 0 <= --wmin <= --wmax"));
    }
    if points > 1 && wmin == 0.0 {
        return Err(Failure::new(2, "log spacing needs --wmin > 0 when --points > 1"));
    }
    let Lowered { sys, .. } = load(file, tol)?;
    let omegas: Vec<f64> = if points == 1 {
        vec![wmin]
    } else {
        let (lo, hi) = (wmin.log10(), wmax.log10());
        (0..points).map(|k| 10f64.powf(lo + (hi - lo) * k as f64 / (points - 1) as f64)).collect()
    };
    let mut out = String::from("omega,re,im,mag\n");
    for (w, z) in frequency_response(&sys, &omegas) {
        let z = z?;
        out.push_str(&format!("{},{},{},{}\n", text(w), text(z.re), text(z.im), text(z.norm())));
    }
    Ok(out)
}

fn canonical(file: &Path, tol: &Tolerances) -> CmdResult {
    let Lowered { sys, .. } = load(file, tol)?;
    admissible(&sys, tol)?;
    let canon = to_canonical_with(&sys, tol)?;
    Ok(render(&json!({
        "system": system(&canon.sys),
        "sigma": nums(&canon.sigma.sigmas),
        "signs": canon.signs.signs,
        "gamma": nums(&canon.gammas()),
    })))
}
