//! One binary wiring the twisted-sum libraries to files and the terminal.
//!
//! Exit status: 0 all requested checks pass, 1 a check failed (with a
//! witness), 2 input could not be parsed or validated, 3 an internal
//! invariant broke.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use twistsum::aap::{
    self, auto_panels, evaluate_character, fourier_bohr, kronecker_search, FrequencyBasis,
    SpectrumPoint, TrigPolynomial,
};
use twistsum::fintop::{
    all_continuous_maps, all_topologies, borel_algebra, check_diagram, direct_sum, twisted_sum,
    Subset,
};
use twistsum::json::*;
use twistsum::measures::{
    decompose_measure, haar_integral, inner_regularity_check, translation_action, AapSet,
    AapSumMeasure, AtomicMeasure, TorusMeasure, ZSumMeasure,
};
use twistsum::zline::{Openness, PeriodicSet, TwistedZ, ZSumSet};

#[derive(Parser)]
#[command(name = "twisted-spectra", version, about = "twisted-sum spectra toolkit")]
struct Cli {
    /// Seed for randomized property sweeps; recorded in every output.
    /// The TWISTED_SPECTRA_SEED environment variable overrides this flag.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Finite-space model.
    #[command(subcommand)]
    Fintop(FintopCmd),
    /// Integer line glued to a finite space.
    #[command(subcommand)]
    Zline(ZlineCmd),
    /// Asymptotically almost periodic model.
    #[command(subcommand)]
    Aap(AapCmd),
    /// Direct-sum Borel measures.
    #[command(subcommand)]
    Measures(MeasuresCmd),
}

#[derive(Subcommand)]
enum FintopCmd {
    /// Check the six-statement diagram on one instance or exhaustively.
    Check(FintopCheck),
}

#[derive(Args)]
struct FintopCheck {
    #[arg(long)]
    y: Option<PathBuf>,
    #[arg(long)]
    z: Option<PathBuf>,
    #[arg(long)]
    f: Option<PathBuf>,
    /// Sweep all topologies on ground sets up to the given sizes,
    /// and all continuous maps between them.
    #[arg(long, num_args = 2, value_names = ["N", "M"])]
    exhaustive: Option<Vec<usize>>,
}

#[derive(Subcommand)]
enum ZlineCmd {
    /// Openness, closure, interior and compactness of one set.
    Analyze {
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        set: PathBuf,
    },
    /// Emit the one-point compactification fixture as a model file.
    Onepoint,
    /// Limit points of the arithmetic sequence a, a+d, a+2d, …
    Limits {
        /// Model file; defaults to the one-point fixture.
        #[arg(long)]
        model: Option<PathBuf>,
        #[arg(long, num_args = 2, value_names = ["A", "D"], allow_negative_numbers = true)]
        seq: Vec<i64>,
    },
}

#[derive(Subcommand)]
enum AapCmd {
    /// Evaluate a function at a real time or a character at torus angles.
    Eval {
        #[arg(long)]
        f: PathBuf,
        #[arg(long, allow_negative_numbers = true)]
        at: Option<f64>,
        #[arg(long, num_args = 1.., allow_negative_numbers = true)]
        torus: Option<Vec<f64>>,
    },
    /// Recover almost periodic coefficients by Fourier-Bohr probing.
    Decompose {
        #[arg(long)]
        f: PathBuf,
        #[arg(long, value_name = "K")]
        k: i64,
        #[arg(long, value_name = "T")]
        t: f64,
    },
    /// Find a real time approximating a torus point.
    Kronecker {
        #[arg(long, num_args = 1..)]
        lambda: Vec<f64>,
        #[arg(long, num_args = 1.., allow_negative_numbers = true)]
        theta: Vec<f64>,
        #[arg(long)]
        eps: f64,
        #[arg(long)]
        tmax: f64,
    },
    /// Bohr mean convergence table (CSV).
    Mean {
        #[arg(long)]
        f: PathBuf,
        /// One or more horizons; one CSV row each.
        #[arg(long, num_args = 1.., value_name = "T")]
        t: Vec<f64>,
        /// Probe frequency; 0 gives the plain Bohr mean.
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        mu: f64,
    },
}

#[derive(Subcommand)]
enum MeasuresCmd {
    /// Run the per-model measure property suite on a fixture.
    Verify {
        #[arg(long, value_parser = ["finite", "zline", "aap"])]
        model: String,
        #[arg(long)]
        fixture: PathBuf,
    },
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn input(message: impl Into<String>) -> Self {
        Failure { code: 2, message: message.into() }
    }

    fn internal(message: impl Into<String>) -> Self {
        Failure { code: 3, message: message.into() }
    }
}

impl From<twistsum::Error> for Failure {
    fn from(e: twistsum::Error) -> Self {
        Failure::input(e.to_string())
    }
}

fn read_json<T: serde::de::DeserializeOwned>(path: &PathBuf) -> Result<T, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

fn main() -> ExitCode {
    let mut cli = Cli::parse();
    if let Some(seed) = std::env::var("TWISTED_SPECTRA_SEED")
        .ok()
        .and_then(|s| s.parse().ok())
    {
        cli.seed = seed;
    }
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(cli: &Cli) -> Result<bool, Failure> {
    match &cli.command {
        Command::Fintop(FintopCmd::Check(args)) => fintop_check(cli.seed, args),
        Command::Zline(cmd) => zline_run(cli.seed, cmd),
        Command::Aap(cmd) => aap_run(cli.seed, cmd),
        Command::Measures(MeasuresCmd::Verify { model, fixture }) => {
            measures_verify(cli.seed, model, fixture)
        }
    }
}

fn config_echo(seed: u64, detail: serde_json::Value) -> serde_json::Value {
    json!({ "seed": seed, "args": detail })
}

fn fintop_check(seed: u64, args: &FintopCheck) -> Result<bool, Failure> {
    if let Some(bounds) = &args.exhaustive {
        return fintop_exhaustive(seed, bounds[0], bounds[1]);
    }
    let (Some(ypath), Some(zpath), Some(fpath)) = (&args.y, &args.z, &args.f) else {
        return Err(Failure::input("provide --y --z --f, or --exhaustive"));
    };
    let y = read_json::<TopologyJson>(ypath)?.to_topology()?;
    let z = read_json::<TopologyJson>(zpath)?.to_topology()?;
    let f = read_json::<MapJson>(fpath)?.to_map(&y, &z)?;
    let report = check_diagram(&y, &z, &f)?;

    let out = json!({
        "config": config_echo(seed, json!({
            "y": ypath.display().to_string(),
            "z": zpath.display().to_string(),
            "f": fpath.display().to_string(),
        })),
        "report": report,
        "pass": report.verdicts_hold(),
    });
    println!("{}", serde_json::to_string_pretty(&out).unwrap());
    println!();
    println!("statement  holds");
    for (i, s) in report.statements.iter().enumerate() {
        println!("({})        {}", i + 1, s);
    }
    println!("Z Hausdorff: {}", report.z_hausdorff);
    for v in &report.violations {
        println!("violation: {v}");
    }
    Ok(report.verdicts_hold())
}

fn fintop_exhaustive(seed: u64, n: usize, m: usize) -> Result<bool, Failure> {
    let mut instances = 0usize;
    let mut violations: Vec<String> = Vec::new();
    for yn in 0..=n {
        for zn in 0..=m {
            for y in all_topologies(yn) {
                for z in all_topologies(zn) {
                    for f in all_continuous_maps(&y, &z) {
                        instances += 1;
                        let report = check_diagram(&y, &z, &f)?;
                        if !report.verdicts_hold() {
                            violations.push(format!(
                                "y={:?} z={:?} f={:?}: {:?}",
                                y.opens(),
                                z.opens(),
                                f.values(),
                                report.violations
                            ));
                        }
                    }
                }
            }
        }
    }
    let pass = violations.is_empty();
    let out = json!({
        "config": config_echo(seed, json!({ "exhaustive": [n, m] })),
        "instances": instances,
        "violations": violations,
        "pass": pass,
    });
    println!("{}", serde_json::to_string_pretty(&out).unwrap());
    Ok(pass)
}

fn zline_run(seed: u64, cmd: &ZlineCmd) -> Result<bool, Failure> {
    match cmd {
        ZlineCmd::Analyze { model, set } => {
            let tz = read_json::<ZModelJson>(model)?.to_model()?;
            let sj = read_json::<ZSumSetJsonInput>(set)?;
            let s = sj.to_set(tz.z().n())?;
            let openness = tz.is_open(&s);
            let closure = tz.closure(&s);
            let interior = tz.interior(&s);
            let compact = tz.is_compact(&s);
            let out = json!({
                "config": config_echo(seed, json!({
                    "model": model.display().to_string(),
                    "set": set.display().to_string(),
                })),
                "open": matches!(openness, Openness::Open { .. }),
                "closed": matches!(
                    tz.is_open(&ZSumSet::new(s.ypart.complement(), s.zpart.complement(tz.z().n()))),
                    Openness::Open { .. }
                ),
                "closure": zsum_json(&closure),
                "interior": zsum_json(&interior),
                "compact": compact.compact,
            });
            println!("{}", serde_json::to_string_pretty(&out).unwrap());
            Ok(true)
        }
        ZlineCmd::Onepoint => {
            let out = json!({
                "config": config_echo(seed, json!({})),
                "model": {
                    "z": { "n": 1, "opens": [[], [0]] },
                    "f": { "residue_values": [0], "exceptions": {} },
                },
            });
            println!("{}", serde_json::to_string_pretty(&out).unwrap());
            Ok(true)
        }
        ZlineCmd::Limits { model, seq } => {
            let tz = match model {
                Some(path) => read_json::<ZModelJson>(path)?.to_model()?,
                None => TwistedZ::one_point(),
            };
            let report = tz.limit_points(seq[0], seq[1])?;
            let out = json!({
                "config": config_echo(seed, json!({ "seq": seq })),
                "limit_set": report.limit_set.points().collect::<Vec<_>>(),
                "converges": report.converges,
            });
            println!("{}", serde_json::to_string_pretty(&out).unwrap());
            Ok(true)
        }
    }
}

/// `{"ypart": periodic set, "zpart": [int]}`
#[derive(serde::Deserialize)]
struct ZSumSetJsonInput {
    ypart: PeriodicSetJson,
    #[serde(default)]
    zpart: Vec<usize>,
}

impl ZSumSetJsonInput {
    fn to_set(&self, zn: usize) -> Result<ZSumSet, Failure> {
        for &q in &self.zpart {
            if q >= zn {
                return Err(Failure::input(format!("z point {q} out of range (n = {zn})")));
            }
        }
        Ok(ZSumSet::new(self.ypart.to_set()?, Subset::from_points(self.zpart.iter().copied())))
    }
}

fn zsum_json(s: &ZSumSet) -> serde_json::Value {
    json!({
        "ypart": PeriodicSetJson::from_set(&s.ypart),
        "zpart": s.zpart.points().collect::<Vec<_>>(),
    })
}

fn aap_run(seed: u64, cmd: &AapCmd) -> Result<bool, Failure> {
    match cmd {
        AapCmd::Eval { f, at, torus } => {
            let func = read_json::<AapFunctionJson>(f)?.to_function()?;
            let point = match (at, torus) {
                (Some(t), None) => SpectrumPoint::Real(*t),
                (None, Some(theta)) => SpectrumPoint::torus(theta.iter().copied()),
                _ => return Err(Failure::input("provide exactly one of --at or --torus")),
            };
            let value = evaluate_character(&point, &func)?;
            let out = json!({
                "config": config_echo(seed, json!({
                    "f": f.display().to_string(), "at": at, "torus": torus,
                })),
                "re": value.re,
                "im": value.im,
            });
            println!("{}", serde_json::to_string_pretty(&out).unwrap());
            Ok(true)
        }
        AapCmd::Decompose { f, k, t } => {
            let func = read_json::<AapFunctionJson>(f)?.to_function()?;
            let report = aap::decompose(&func, *k, *t)?;
            let out = json!({
                "config": config_echo(seed, json!({
                    "f": f.display().to_string(), "K": k, "T": t,
                })),
                "recovered": report.recovered.coeffs().map(|(k, c)| json!({
                    "k": k, "re": c.re, "im": c.im,
                })).collect::<Vec<_>>(),
                "windows": report.windows.iter().map(|w| json!({
                    "k": w.k, "re": w.estimate.re, "im": w.estimate.im, "bound": w.bound,
                })).collect::<Vec<_>>(),
                "max_bound": report.max_bound,
                "decisive": report.decisive,
            });
            println!("{}", serde_json::to_string_pretty(&out).unwrap());
            Ok(report.decisive)
        }
        AapCmd::Kronecker { lambda, theta, eps, tmax } => {
            let basis = FrequencyBasis::new(lambda.clone())?;
            let hit = kronecker_search(&basis, theta, *eps, *tmax)?;
            let out = json!({
                "config": config_echo(seed, json!({
                    "lambda": lambda, "theta": theta, "eps": eps, "tmax": tmax,
                })),
                "t": hit,
                "found": hit.is_some(),
            });
            println!("{}", serde_json::to_string_pretty(&out).unwrap());
            Ok(hit.is_some())
        }
        AapCmd::Mean { f, t, mu } => {
            let func = read_json::<AapFunctionJson>(f)?.to_function()?;
            // reference: the exact coefficient sitting at the probe frequency
            let reference = func
                .appart
                .coeffs()
                .find_map(|(k, c)| {
                    (func.appart.basis().pairing(k).unwrap() == *mu).then_some(c)
                })
                .unwrap_or(Complex64::ZERO);
            println!("# seed={seed} f={} mu={mu}", f.display());
            println!("T,estimate_re,estimate_im,bound,abs_error");
            for &horizon in t {
                let panels = auto_panels(&func, *mu, horizon);
                let est = fourier_bohr(&func, *mu, horizon, panels)?;
                let abs_error = (est.value - reference).norm();
                println!(
                    "{horizon},{},{},{},{abs_error}",
                    est.value.re,
                    est.value.im,
                    est.bound()
                );
                if abs_error > est.bound() {
                    return Err(Failure::internal(format!(
                        "error {abs_error} exceeds certified bound {} at T = {horizon}",
                        est.bound()
                    )));
                }
            }
            Ok(true)
        }
    }
}

struct PropertyReport {
    rows: Vec<(String, bool, String)>,
}

impl PropertyReport {
    fn new() -> Self {
        PropertyReport { rows: Vec::new() }
    }

    fn add(&mut self, name: &str, pass: bool, witness: String) {
        self.rows.push((name.to_string(), pass, witness));
    }

    fn finish(self, seed: u64, detail: serde_json::Value) -> bool {
        let pass = self.rows.iter().all(|(_, ok, _)| *ok);
        let out = json!({
            "config": config_echo(seed, detail),
            "properties": self.rows.iter().map(|(name, ok, witness)| json!({
                "property": name, "pass": ok, "witness": witness,
            })).collect::<Vec<_>>(),
            "pass": pass,
        });
        println!("{}", serde_json::to_string_pretty(&out).unwrap());
        pass
    }
}

fn measures_verify(seed: u64, model: &str, fixture: &PathBuf) -> Result<bool, Failure> {
    let fj = read_json::<MeasureFixtureJson>(fixture)?;
    let detail = json!({ "model": model, "fixture": fixture.display().to_string() });
    let mut report = PropertyReport::new();
    match model {
        "finite" => verify_finite(&fj, &mut report)?,
        "zline" => verify_zline(&fj, &mut report)?,
        "aap" => verify_aap(&fj, seed, &mut report)?,
        _ => unreachable!("value_parser limits the choices"),
    }
    Ok(report.finish(seed, detail))
}

/// Finite carrier: charged points index discrete blocks just large enough
/// to hold them, glued by a constant map.
fn verify_finite(fj: &MeasureFixtureJson, report: &mut PropertyReport) -> Result<(), Failure> {
    use twistsum::fintop::{ContinuousFiniteMap, FiniteTopology};
    let y_atoms: Vec<(usize, f64)> =
        fj.y_atoms.iter().map(atom_as_usize).collect::<Result<_, _>>()?;
    let z_atoms: Vec<(usize, f64)> =
        fj.z.atoms.iter().map(atom_as_usize).collect::<Result<_, _>>()?;
    let yn = y_atoms.iter().map(|&(p, _)| p + 1).max().unwrap_or(1);
    let zn = z_atoms.iter().map(|&(p, _)| p + 1).max().unwrap_or(1);
    let y = FiniteTopology::discrete(yn);
    let z = FiniteTopology::discrete(zn);
    let f = ContinuousFiniteMap::constant(y.clone(), z.clone(), 0)?;
    let tw = twisted_sum(&y, &z, &f)?;
    let di = direct_sum(&y, &z)?;

    let same_algebra = borel_algebra(&tw) == borel_algebra(&di);
    report.add(
        "borel_algebra_equality",
        same_algebra,
        format!("{} algebra sets", borel_algebra(&tw).len()),
    );

    let mu_y = AtomicMeasure::new(y_atoms)?;
    let mu_z = AtomicMeasure::new(z_atoms)?;
    let direct_eval = |u: Subset| -> f64 {
        let (a, b) = tw.split(u);
        mu_y.measure_where(|&p| a.contains(p)) + mu_z.measure_where(|&q| b.contains(q))
    };
    match decompose_measure(&tw, &direct_eval) {
        Ok(dec) => {
            let mut worst: Option<Subset> = None;
            for &u in &borel_algebra(&tw) {
                if (dec.recombined(u) - direct_eval(u)).abs() > 1e-12 {
                    worst = Some(u);
                }
            }
            report.add(
                "decompose_recombine_round_trip",
                worst.is_none(),
                match worst {
                    None => format!(
                        "mu_y mass {} + mu_z mass {}",
                        dec.mu_y.mass(),
                        dec.mu_z.mass()
                    ),
                    Some(u) => format!("mismatch at {u:?}"),
                },
            );
            report.add(
                "mass_splits_over_blocks",
                (dec.mu_y.mass() + dec.mu_z.mass() - (mu_y.mass() + mu_z.mass())).abs() < 1e-12,
                format!("total {}", mu_y.mass() + mu_z.mass()),
            );
        }
        Err(e) => report.add("decompose_recombine_round_trip", false, e.to_string()),
    }
    Ok(())
}

/// Integer-line carrier glued to the one-point fixture.
fn verify_zline(fj: &MeasureFixtureJson, report: &mut PropertyReport) -> Result<(), Failure> {
    let tz = TwistedZ::one_point();
    let m = ZSumMeasure {
        mu_y: AtomicMeasure::new(fj.y_atoms.iter().map(atom_as_i64).collect::<Result<_, _>>()?)?,
        mu_z: AtomicMeasure::new(
            fj.z.atoms.iter().map(atom_as_usize).collect::<Result<_, _>>()?,
        )?,
    };
    let sets = [
        ("whole", ZSumSet::whole(tz.z())),
        ("y_block", ZSumSet::y_only(PeriodicSet::all())),
        ("z_block", ZSumSet::new(PeriodicSet::empty(), Subset::full(1))),
        ("evens", ZSumSet::y_only(PeriodicSet::from_residues(2, [0])?)),
    ];
    for (name, s) in &sets {
        let r = inner_regularity_check(&m, &tz, s);
        report.add(
            &format!("inner_regularity_{name}"),
            r.holds,
            format!("mass {} attained on F = {:?} u zpart", r.set_measure, r.witness_ypart),
        );
    }
    let disjoint_additive = {
        let evens = &sets[3].1;
        let odds = ZSumSet::y_only(PeriodicSet::from_residues(2, [1])?);
        let whole_y = &sets[1].1;
        (m.measure_of(evens) + m.measure_of(&odds) - m.measure_of(whole_y)).abs() < 1e-12
    };
    report.add("additivity_even_odd", disjoint_additive, format!("total {}", m.mass()));
    report.add(
        "total_mass",
        (m.measure_of(&sets[0].1) - m.mass()).abs() < 1e-12,
        format!("{}", m.mass()),
    );
    Ok(())
}

/// AAP carrier with the default basis λ = (1, √2).
fn verify_aap(fj: &MeasureFixtureJson, seed: u64, report: &mut PropertyReport) -> Result<(), Failure> {
    let basis = FrequencyBasis::new(vec![1.0, 2f64.sqrt()])?;
    let m = AapSumMeasure {
        mu_y: AtomicMeasure::new(fj.y_atoms.iter().map(atom_as_f64).collect::<Result<_, _>>()?)?,
        mu_z: TorusMeasure::new(
            fj.z.haar,
            AtomicMeasure::new(
                fj.z.atoms.iter().map(atom_as_angles).collect::<Result<_, _>>()?,
            )?,
        )?,
    };

    let half = AapSet {
        intervals: vec![],
        boxes: vec![vec![
            aap::Arc::new(std::f64::consts::FRAC_PI_2, std::f64::consts::FRAC_PI_2)?,
            aap::Arc::new(0.0, std::f64::consts::PI)?,
        ]],
    };
    let half_mass = m.measure_of(&half)?;
    let haar_half_ok = (half_mass
        - (0.5 * fj.z.haar
            + m.mu_z.atoms.measure_where(|theta| {
                theta.len() == 2 && {
                    let a = theta[0].rem_euclid(std::f64::consts::TAU);
                    0.0 < a && a < std::f64::consts::PI
                }
            })))
    .abs()
        < 1e-12;
    report.add("haar_box_measure", haar_half_ok, format!("half torus mass {half_mass}"));

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut invariant = true;
    let mut witness = String::from("100 random (f, s) pairs");
    for _ in 0..100 {
        let mut f = TrigPolynomial::zero(basis.clone());
        for _ in 0..4 {
            let k = vec![rng.gen_range(-3..=3i64), rng.gen_range(-3..=3i64)];
            let c = Complex64::new(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
            let sum = f.coeff(&k) + c;
            f.set_coeff(k, sum)?;
        }
        let s: f64 = rng.gen_range(-50.0..50.0);
        let shifted = translation_action(&f, s);
        if haar_integral(&shifted) != haar_integral(&f) {
            invariant = false;
            witness = format!("violated at s = {s}");
            break;
        }
    }
    report.add("translation_invariance_of_haar", invariant, witness);

    let c0_exact = {
        let f = TrigPolynomial::from_coeffs(
            basis,
            [
                (vec![0, 0], Complex64::new(2.0, 0.0)),
                (vec![1, 0], Complex64::new(3.0, 0.0)),
                (vec![1, 1], Complex64::new(-1.0, 0.0)),
            ],
        )?;
        haar_integral(&f) == Complex64::new(2.0, 0.0)
    };
    report.add("haar_integral_is_c0", c0_exact, "exact coefficient read-off".into());
    report.add(
        "total_mass",
        m.mass().is_finite(),
        format!("{}", m.mass()),
    );
    Ok(())
}
