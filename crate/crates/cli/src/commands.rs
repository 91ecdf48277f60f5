use std::fs::File;
use std::io::BufWriter;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use ird_core::acceptance::{run_suite, SuiteOptions};
use ird_core::analysis::{
    crossover, detect_scars_with, exact_scar_candidates, grid_search, minima_curve, qpt_sweep, range_inclusive,
    scale_curve, scar_fidelity, two_body_entropy, two_body_entropy_major, variance_sweep, AngleGrid, GridSpec,
};
use ird_core::dynamics::{diagonalize, perturbed_scars_from, quench_with, time_average, uniform_times, Loschmidt};
use ird_core::hbuild::{assemble, assemble_reference};
use ird_core::irreps::{distill, scs_amplitudes, special_states, DistilledAmplitudes, DistilledState, SpecialState};
use ird_core::oracle::{build_exact, dicke_vectors, max_abs_diff, min_pair_entropy, symmetry_sectors, ExactState};
use ird_core::{classical_energy, Complex64, CouplingKernel, IrdError, ModelParams};

use crate::args::*;
use crate::output::{config_echo, Table, Writer};
use crate::CliError;

const QUICK_MAX_N: usize = 12;
const QUICK_MAX_GRID: usize = 50;
const PAPER_MAX_N: usize = 4096;
const EXACT_MAX_N: usize = 14;
const VALIDATE_TOL: f64 = 1e-9;

type Out = Result<Vec<Table>, CliError>;

pub fn execute(cli: &Cli) -> Result<(), CliError> {
    let c = &cli.common;
    if c.jobs > 0 {
        // Fails only if a pool already exists, which is harmless.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(c.jobs).build_global();
    }
    let limits = Limits { tier: c.tier };
    let tables = match &cli.command {
        Command::Spectrum(a) => spectrum(c, a, &limits)?,
        Command::Scars(a) => scars(c, a, &limits)?,
        Command::Validate(a) => validate(c, a, &limits)?,
        Command::Loschmidt(a) => loschmidt(c, a, &limits)?,
        Command::Quench(a) => quench(c, a, &limits)?,
        Command::Qpt(a) => qpt(c, a, &limits)?,
        Command::Fssa(a) => fssa(a, c, &limits)?,
        Command::Twobody(a) => twobody(c, a, &limits)?,
    };
    let writer = Writer {
        dir: crate::output_dir(c.out.as_deref()),
        format: c.format,
        header: format!("ird {} {}", env!("CARGO_PKG_VERSION"), config_echo(c, &cli.command)),
    };
    for p in writer.write_all(&tables)? {
        println!("wrote {}", p.display());
    }
    Ok(())
}

struct Limits {
    tier: Tier,
}

impl Tier {
    fn name(self) -> &'static str {
        match self {
            Tier::Quick => "quick",
            Tier::Paper => "paper",
        }
    }
}

impl Limits {
    fn n(&self, n: usize) -> Result<(), CliError> {
        let max = match self.tier {
            Tier::Quick => QUICK_MAX_N,
            Tier::Paper => PAPER_MAX_N,
        };
        if n > max {
            return Err(IrdError::ResourceLimit(format!("N = {n} exceeds {max} for tier {}", self.tier.name())).into());
        }
        Ok(())
    }

    fn exact(&self, n: usize) -> Result<(), CliError> {
        if n > EXACT_MAX_N {
            return Err(IrdError::ResourceLimit(format!("exact comparison needs N <= {EXACT_MAX_N}, got {n}")).into());
        }
        self.n(n)
    }

    fn grid(&self, what: &str, points: usize) -> Result<(), CliError> {
        if points == 0 {
            return Err(CliError::Usage(format!("{what} must be positive")));
        }
        if self.tier == Tier::Quick && points > QUICK_MAX_GRID {
            return Err(
                IrdError::ResourceLimit(format!("{what} = {points} exceeds {QUICK_MAX_GRID} for tier quick")).into()
            );
        }
        Ok(())
    }
}

/// `start:stop:step`, inclusive.
pub fn parse_range(text: &str) -> Result<Vec<f64>, CliError> {
    let parts: Vec<&str> = text.split(':').collect();
    let nums: Vec<f64> = parts
        .iter()
        .map(|p| p.trim().parse::<f64>())
        .collect::<Result<_, _>>()
        .map_err(|_| CliError::Usage(format!("range '{text}' is not start:stop:step")))?;
    match nums[..] {
        [a, b, step] if b > a && step > 0.0 => Ok(range_inclusive(a, b, step)?),
        _ => Err(CliError::Usage(format!("range '{text}' must be start:stop:step with stop > start, step > 0"))),
    }
}

fn setup(c: &Common, limits: &Limits) -> Result<(ModelParams, DistilledAmplitudes), CliError> {
    limits.n(c.n)?;
    let p = ModelParams::new(c.n, c.s, c.alpha)?;
    let a = distill(&CouplingKernel::from_params(&p))?;
    Ok((p, a))
}

fn spectrum(c: &Common, a: &SpectrumArgs, limits: &Limits) -> Out {
    let (p, amps) = setup(c, limits)?;
    let h = assemble(&p, &amps)?;
    let spec = diagonalize(&h)?;
    if a.dump {
        let dir = crate::output_dir(c.out.as_deref());
        std::fs::create_dir_all(&dir).map_err(|e| CliError::Io(e.to_string()))?;
        let path = dir.join("hamiltonian.bin");
        h.write_dump(BufWriter::new(File::create(&path).map_err(|e| CliError::Io(e.to_string()))?))?;
        println!("wrote {}", path.display());
    }
    let mut t = Table::new("spectrum", &["index", "energy", "sym_population", "spin_number", "parity"]);
    for k in 0..spec.len() {
        t.push(vec![k as f64, spec.energy(k), spec.sym_population(k), spec.spin_number(k), spec.parity(k) as f64]);
    }
    println!("dim {} ground {:.10} top {:.10}", spec.dim(), spec.energy(0), spec.energy(spec.len() - 1));
    Ok(vec![t])
}

fn scars(c: &Common, a: &ScarsArgs, limits: &Limits) -> Out {
    limits.grid("theta-points", a.theta_points)?;
    limits.grid("phi-points", a.phi_points)?;
    let (p, amps) = setup(c, limits)?;
    let spec = diagonalize(&assemble(&p, &amps)?)?;
    let grid = AngleGrid { theta_points: a.theta_points, phi_points: a.phi_points };
    let found = detect_scars_with(&spec, grid)?;
    let mut t = Table::new("scars", &["eigenindex", "energy", "sym_population", "spin_number", "scs_overlap_max"]);
    for r in &found {
        t.push(vec![r.eigenindex as f64, r.energy, r.sym_population, r.spin_number, r.scs_overlap_max]);
    }
    println!("{} distilled scars", found.len());
    let mut tables = vec![t];
    if a.exact {
        limits.exact(c.n)?;
        let exact = exact_scar_candidates(c.n, &symmetry_sectors(&build_exact(&p)?)?);
        let report = scar_fidelity(&exact, &dicke_vectors(c.n, &amps)?, &spec)?;
        let mut e = Table::new("scars_exact", &["exact_rank", "exact_energy", "eigenindex", "fidelity"]);
        for &(i, k, f) in &report.pairs {
            e.push(vec![i as f64, exact[i].energy, k as f64, f]);
        }
        println!("{} exact scars, {} pairs, mean fidelity {:.6}", exact.len(), report.pairs.len(), report.mean);
        tables.push(e);
    }
    Ok(tables)
}

fn validate(c: &Common, a: &ValidateArgs, limits: &Limits) -> Out {
    if a.suite {
        return suite(a);
    }
    limits.exact(c.n)?;
    let (p, amps) = setup(c, limits)?;
    let h = assemble(&p, &amps)?;
    let basis = dicke_vectors(c.n, &amps)?;
    let mut t = Table::new("validate", &["item", "max_abs_diff"]);
    let dev = max_abs_diff(&h.to_dense(), &basis.project_hamiltonian(&p)?);
    println!("max |H_D - P H P| = {dev:.3e}");
    t.push(vec![0.0, dev]);
    let mut worst = dev;
    if a.random_states > 0 {
        let exact = build_exact(&p)?;
        let mut rng = ChaCha8Rng::seed_from_u64(a.seed);
        for k in 0..a.random_states {
            let amps: Vec<Complex64> =
                (0..h.dim()).map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect();
            let psi = DistilledState::from_amplitudes(h.layout(), amps)?.normalized()?;
            let full = ExactState::new(c.n, exact.apply(basis.embed(&psi).amplitudes()))?;
            let (back, _) = basis.project(&full);
            let want = h.apply_state(&psi);
            let d = back.amplitudes().iter().zip(want.amplitudes()).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max);
            worst = worst.max(d);
            t.push(vec![(k + 1) as f64, d]);
        }
        println!("{} random states, max |P H P psi - H_D psi| = {:.3e}", a.random_states, worst);
    }
    if worst > VALIDATE_TOL {
        return Err(CliError::Validation(format!("deviation {worst:.3e} above {VALIDATE_TOL:e}")));
    }
    println!("PASS");
    Ok(vec![t])
}

fn suite(a: &ValidateArgs) -> Out {
    let exe = std::env::current_exe().map_err(|e| CliError::Io(e.to_string()))?;
    let opts = SuiteOptions {
        only: (!a.criteria.is_empty()).then(|| a.criteria.clone()),
        determinism: Some(Box::new(move || crate::determinism_probe(&exe).map_err(IrdError::Io))),
    };
    let outcomes = run_suite(&opts);
    let mut t = Table::new("validate_suite", &["criterion", "passed", "seconds"]);
    for o in &outcomes {
        println!("{}", o.line());
        t.push(vec![o.id as f64, o.passed as u8 as f64, (o.seconds * 10.0).round() / 10.0]);
    }
    let failed: Vec<String> = outcomes.iter().filter(|o| !o.passed).map(|o| o.id.to_string()).collect();
    if !failed.is_empty() {
        return Err(CliError::Validation(format!("criteria {} did not pass", failed.join(", "))));
    }
    Ok(vec![t])
}

fn loschmidt(c: &Common, a: &LoschmidtArgs, limits: &Limits) -> Out {
    limits.grid("t-points", a.t_points)?;
    if !(a.t_max > 0.0) {
        return Err(CliError::Usage("t-max must be positive".into()));
    }
    let (p, amps) = setup(c, limits)?;
    let h = assemble(&p, &amps)?;
    let spec = diagonalize(&h)?;
    let scars = perturbed_scars_from(&h, &assemble_reference(&p, &amps)?)?;
    let engine = Loschmidt::new(&spec, &scars)?;
    let times = uniform_times(a.t_max, a.t_points);
    if let (Some(theta), Some(phi)) = (a.theta, a.phi) {
        let echo = engine.echo_scs(theta, phi, &times)?;
        println!("mean echo {:.6}", time_average(&times, &echo)?);
        let mut t = Table::new("loschmidt_trace", &["t", "echo"]);
        for (x, m) in times.iter().zip(echo) {
            t.push(vec![*x, m]);
        }
        return Ok(vec![t]);
    }
    limits.grid("theta-points", a.theta_points)?;
    limits.grid("phi-points", a.phi_points)?;
    let grid = AngleGrid { theta_points: a.theta_points, phi_points: a.phi_points };
    let rows: Vec<ird_core::Result<Vec<f64>>> = ird_core::par_map(grid.points(), |(theta, phi)| {
        let m = time_average(&times, &engine.echo_scs(theta, phi, &times)?)?;
        Ok(vec![theta, phi, m, classical_energy(c.s, theta, phi)])
    });
    let mut t = Table::new("loschmidt", &["theta", "phi", "mean_echo", "classical_energy"]);
    for r in rows {
        t.push(r?);
    }
    if let Some(best) = t.rows.iter().min_by(|x, y| x[2].total_cmp(&y[2])) {
        println!("minimum mean echo {:.6} at theta {:.4} phi {:.4}", best[2], best[0], best[1]);
    }
    Ok(vec![t])
}

fn quench(c: &Common, a: &QuenchArgs, limits: &Limits) -> Out {
    limits.grid("t-points", a.t_points)?;
    let (p, amps) = setup(c, limits)?;
    let psi0 = match a.state {
        InitialState::Z => special_states(c.n, SpecialState::ZPolarized)?,
        InitialState::X => special_states(c.n, SpecialState::XPolarized)?,
        InitialState::Ghz => special_states(c.n, SpecialState::Ghz)?,
        InitialState::Scs => scs_amplitudes(c.n, a.theta, a.phi)?,
    };
    let h = assemble(&p, &amps)?;
    let spec = diagonalize(&h)?;
    let mut t = Table::new("quench", &["t", "x", "y", "z", "r2", "dz2", "energy"]);
    for q in quench_with(&h, &spec, &psi0, &uniform_times(a.t_max, a.t_points)) {
        t.push(vec![q.t, q.x, q.y, q.z, q.r2, q.dz2, q.energy]);
    }
    Ok(vec![t])
}

fn qpt(c: &Common, a: &QptArgs, limits: &Limits) -> Out {
    limits.n(c.n)?;
    let s = parse_range(&a.s_range)?;
    limits.grid("s-range points", s.len())?;
    let mut sweep = qpt_sweep(c.n, c.alpha, &s, a.t_avg)?;
    match a.mode {
        QptMode::Gqpt => sweep.columns.retain(|col| col.0 != "z_bar"),
        QptMode::Dqpt => sweep.columns.retain(|col| col.0 == "z_bar"),
        QptMode::Both => {}
    }
    for name in ["z_g", "z_bar"] {
        if let Some((at, slope)) = crossover(&sweep, name) {
            println!("{name} steepest rise at s = {at:.4} (slope {slope:.3})");
        }
    }
    Ok(vec![Table::from_sweep("qpt", &sweep)])
}

fn fssa(a: &FssaArgs, c: &Common, limits: &Limits) -> Out {
    let s = parse_range(&a.s_range)?;
    if a.sizes.len() < 2 {
        return Err(CliError::Usage("fssa needs at least two sizes".into()));
    }
    let mut raw = Table::new("fssa_raw", &["n", "s", "de_max", "de_mean"]);
    let mut curves = Vec::new();
    for &n in &a.sizes {
        limits.n(n)?;
        let sweep = variance_sweep(n, c.alpha, &s)?;
        let max = sweep.column("de_max").unwrap_or_default();
        let mean = sweep.column("de_mean").unwrap_or_default();
        for (i, &x) in sweep.axis.iter().enumerate() {
            raw.push(vec![n as f64, x, max[i], mean[i]]);
        }
        curves.push(minima_curve(n, &sweep.axis, max));
    }
    let (best, q) = grid_search(&curves, GridSpec::default())?;
    println!("best collapse s_c = {:.3}, zeta = {:.2}, nu = {:.1}, quality {q:.4e}", best.s_c, best.zeta, best.nu);
    let mut minima = Table::new("fssa_minima", &["n", "s", "de_max"]);
    let mut scaled = Table::new("fssa_scaled", &["n", "x", "y", "s_c", "zeta", "nu"]);
    for curve in &curves {
        for (x, y) in curve.s.iter().zip(&curve.y) {
            minima.push(vec![curve.n as f64, *x, *y]);
        }
        let sc = scale_curve(curve, best);
        for (x, y) in sc.s.iter().zip(&sc.y) {
            scaled.push(vec![curve.n as f64, *x, *y, best.s_c, best.zeta, best.nu]);
        }
    }
    Ok(vec![raw, minima, scaled])
}

fn twobody(c: &Common, a: &TwobodyArgs, limits: &Limits) -> Out {
    let (p, amps) = setup(c, limits)?;
    let spec = diagonalize(&assemble(&p, &amps)?)?;
    let scar_idx: Vec<usize> = (0..spec.len()).filter(|&k| spec.sym_population(k) > 0.5).collect();
    if !a.exact {
        let mut t = Table::new("twobody", &["eigenindex", "energy", "s_tb", "s_tb_major"]);
        for k in scar_idx {
            let psi = spec.state(k);
            t.push(vec![k as f64, spec.energy(k), two_body_entropy(&psi)?, two_body_entropy_major(&psi)?]);
        }
        return Ok(vec![t]);
    }
    limits.exact(c.n)?;
    let exact = exact_scar_candidates(c.n, &symmetry_sectors(&build_exact(&p)?)?);
    let report = scar_fidelity(&exact, &dicke_vectors(c.n, &amps)?, &spec)?;
    let mut t = Table::new("twobody", &["eigenindex", "energy", "s_tb", "s_tb_major", "s_min", "fidelity"]);
    let mut pairs = report.pairs.clone();
    pairs.sort_by_key(|x| x.1);
    let mut violations = 0;
    for (i, k, f) in pairs {
        let psi = spec.state(k);
        let stb = two_body_entropy(&psi)?;
        let smin = min_pair_entropy(&ExactState::from_real(c.n, &exact[i].vector)?)?;
        violations += usize::from(stb > smin + 1e-3);
        t.push(vec![k as f64, spec.energy(k), stb, two_body_entropy_major(&psi)?, smin, f]);
    }
    println!("{} paired scars, {violations} with S_TB > S_min + 1e-3", t.rows.len());
    Ok(vec![t])
}
