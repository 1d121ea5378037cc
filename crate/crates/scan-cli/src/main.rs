use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};
use exact_oracle::{
    ratio, run_factorization_sweep, run_lemma1_sweep, run_lemma2_sweep, run_lemma3_sweep,
    run_theorem_sweep,
};
use null_sim::{calibrate, NullModel};
use significance_core::{p_alexandreas, p_lampton, CountObservation, RegionGeometry};

use scan_cli::{
    apply_trials_factor, calibration_records, lemma_record, load_map, scan, spot_check,
    threshold_detections, write_csv, ApertureSpec, ScanError,
};

#[derive(Parser)]
#[command(
    name = "scan",
    version,
    about = "Scan a count map for point sources with Poisson-limited significance",
    subcommand_negates_reqs = true,
    args_conflicts_with_subcommands = true
)]
struct Cli {
    /// Input CSV count map: unsigned integers, no header, LF or CRLF.
    #[arg(long, value_name = "PATH", required = true)]
    map: Option<PathBuf>,

    /// Source disk radius in pixels.
    #[arg(long = "r-src", value_name = "PIXELS", required = true)]
    r_src: Option<f64>,

    /// Background annulus inner radius in pixels.
    #[arg(long = "r-in", value_name = "PIXELS", required = true)]
    r_in: Option<f64>,

    /// Background annulus outer radius in pixels.
    #[arg(long = "r-out", value_name = "PIXELS", required = true)]
    r_out: Option<f64>,

    /// Drop pixels whose clipped annulus holds fewer background pixels.
    #[arg(long, value_name = "COUNT", default_value_t = 8)]
    min_bak_pixels: usize,

    /// Keep only records at or above this sigma, sorted strongest first.
    #[arg(long, value_name = "SIGMA")]
    sigma_min: Option<f64>,

    /// Multiply every p-value by this factor, capped at 1.
    #[arg(long, value_name = "FACTOR")]
    trials_factor: Option<u64>,

    /// Write the output CSV here instead of stdout.
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,

    /// Thread pool size (default: all cores). Output does not depend on it.
    #[arg(long, value_name = "COUNT")]
    threads: Option<usize>,

    /// Test mode: spot-check 100 sampled records against the exact oracle,
    /// using this seed to pick them. Mismatch is a verification failure.
    #[arg(long, value_name = "SEED")]
    seed: Option<u64>,

    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Subcommand)]
enum Command {
    /// Price a single observation with both methods.
    Pvalue {
        /// Count in the source region.
        #[arg(long)]
        n: u64,
        /// Count in the background region.
        #[arg(long)]
        b: u64,
        /// Area fraction f = A_src / (A_src + A_bak), in (0, 1).
        #[arg(long)]
        f: f64,
    },
    /// Run the exact-arithmetic lemma, theorem, and factorization sweeps.
    VerifyLemmas,
    /// Monte Carlo calibration of p-value super-uniformity under the null.
    Calibrate {
        /// Expected source-region count under the null.
        #[arg(long)]
        mu: f64,
        /// Area ratio alpha = A_src / A_bak.
        #[arg(long)]
        alpha: f64,
        /// Number of simulated observations.
        #[arg(long)]
        trials: u64,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // Help and version are successful outputs; anything else is a
            // usage error, which this tool reports as exit code 1.
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = match &cli.command {
        Some(Command::Pvalue { n, b, f }) => run_pvalue(*n, *b, *f),
        Some(Command::VerifyLemmas) => run_verify_lemmas(),
        Some(Command::Calibrate { mu, alpha, trials }) => run_calibrate(*mu, *alpha, *trials),
        None => run_scan(&cli),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn run_scan(cli: &Cli) -> Result<(), ScanError> {
    let spec = ApertureSpec::new(
        cli.r_src.expect("required"),
        cli.r_in.expect("required"),
        cli.r_out.expect("required"),
    )?;
    if cli.min_bak_pixels == 0 {
        return Err(ScanError::Usage("--min-bak-pixels must be positive".into()));
    }
    if cli.trials_factor == Some(0) {
        return Err(ScanError::Usage("--trials-factor must be positive".into()));
    }
    if cli.threads == Some(0) {
        return Err(ScanError::Usage("--threads must be positive".into()));
    }

    let map = load_map(cli.map.as_ref().expect("required"))?;
    let mut records = match cli.threads {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| ScanError::Usage(format!("cannot build thread pool: {e}")))?
            .install(|| scan(&map, &spec, cli.min_bak_pixels)),
        None => scan(&map, &spec, cli.min_bak_pixels),
    };

    if let Some(seed) = cli.seed {
        spot_check(&map, &spec, &records, seed, 100)?;
        eprintln!("spot-check: 100 sampled records match the exact oracle");
    }
    if let Some(k) = cli.trials_factor {
        apply_trials_factor(&mut records, k);
    }
    let output = match cli.sigma_min {
        Some(s) => threshold_detections(&records, s),
        None => records,
    };

    match &cli.out {
        Some(path) => {
            let mut w = BufWriter::new(File::create(path)?);
            write_csv(&output, &mut w)?;
            w.flush()?;
        }
        None => {
            let stdout = io::stdout();
            let mut w = BufWriter::new(stdout.lock());
            write_csv(&output, &mut w)?;
            w.flush()?;
        }
    }
    eprintln!(
        "scanned {} pixels, wrote {} records",
        map.width() * map.height(),
        output.len()
    );
    Ok(())
}

fn run_pvalue(n: u64, b: u64, f: f64) -> Result<(), ScanError> {
    if !(f > 0.0 && f < 1.0) {
        return Err(ScanError::Usage(format!("--f must be in (0, 1), got {f}")));
    }
    let geom = RegionGeometry::new(f, 1.0 - f)?;
    let obs = CountObservation::new(n, b);
    let tail = p_lampton(obs, geom);
    let bayes = p_alexandreas(obs, geom, 1e-13)?;
    println!(
        "method=binomial-tail p={:.16e} log_p={:.16e} sigma={:.16e}",
        tail.p, tail.log_p, tail.sigma
    );
    println!(
        "method=bayes-series p={:.16e} log_p={:.16e} sigma={:.16e} truncation_bound={:.16e}",
        bayes.p, bayes.log_p, bayes.sigma, bayes.truncation_bound
    );
    Ok(())
}

fn run_verify_lemmas() -> Result<(), ScanError> {
    let series_fs = [ratio(1, 10), ratio(1, 3), ratio(1, 2), ratio(4, 5)];
    let theorem_fs = [ratio(1, 10), ratio(1, 4), ratio(1, 2), ratio(3, 4)];
    let mus = [ratio(1, 3), ratio(1, 1), ratio(5, 1)];
    let alphas = [ratio(1, 4), ratio(1, 1), ratio(3, 1)];
    let reports = [
        run_lemma1_sweep(300),
        run_lemma2_sweep(10, &series_fs, 200),
        run_lemma3_sweep(60),
        run_theorem_sweep(25, &theorem_fs, &ratio(1, 1_000_000_000_000)),
        run_factorization_sweep(30, &mus, &alphas),
    ];
    let mut all_passed = true;
    for report in &reports {
        println!("{report}");
        println!("{}", lemma_record(report));
        all_passed &= report.all_passed;
    }
    if !all_passed {
        return Err(ScanError::Verification(
            "an exact-arithmetic sweep found a counterexample".into(),
        ));
    }
    Ok(())
}

fn run_calibrate(mu: f64, alpha: f64, trials: u64) -> Result<(), ScanError> {
    if trials == 0 {
        return Err(ScanError::Usage("--trials must be positive".into()));
    }
    let model = NullModel::new(mu, alpha, 0).map_err(|e| ScanError::Usage(e.to_string()))?;
    let thresholds = [0.5, 0.1, 0.01, 0.001];
    let report = calibrate(&model, trials, &thresholds);
    println!("{report}");
    for line in calibration_records(&report) {
        println!("{line}");
    }
    if !report.passed {
        return Err(ScanError::Verification(
            "empirical exceedance rate above the 3-sigma band".into(),
        ));
    }
    Ok(())
}
