//! The five experiment drivers. Every run resolves its seeds up front,
//! executes seed sweeps in parallel, sorts rows by seed and writes CSV with
//! 17-significant-digit floats, so identical configurations produce
//! byte-identical files.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use fiqs_core::*;
use rayon::prelude::*;

use crate::config::{CliError, CliResult, RunConfig};

/// Fixed-width scientific formatting; rejects non-finite values so they can
/// never leak into an output table.
fn fmt(x: f64) -> CliResult<String> {
    if !x.is_finite() {
        return Err(CliError::Runtime(format!("non-finite value {x} in output")));
    }
    Ok(format!("{x:.16e}"))
}

fn write_file(dir: &Path, name: &str, contents: &str) -> CliResult<PathBuf> {
    std::fs::create_dir_all(dir)
        .map_err(|e| CliError::Runtime(format!("cannot create {}: {e}", dir.display())))?;
    let path = dir.join(name);
    std::fs::write(&path, contents)
        .map_err(|e| CliError::Runtime(format!("cannot write {}: {e}", path.display())))?;
    println!("wrote {}", path.display());
    Ok(path)
}

fn print_seeds(seeds: &[u64]) {
    let list: Vec<String> = seeds.iter().map(u64::to_string).collect();
    println!("seeds: {}", list.join(" "));
}

fn parse_direction(cfg: &RunConfig) -> CliResult<Direction> {
    match cfg.direction.as_deref().unwrap_or("inverse") {
        "forward" => Ok(Direction::Forward),
        "inverse" => Ok(Direction::Inverse),
        other => Err(CliError::Config(format!(
            "invalid value for direction: {other}"
        ))),
    }
}

fn parse_convention(cfg: &RunConfig) -> CliResult<KineticConvention> {
    match cfg.convention.as_deref().unwrap_or("centered") {
        "centered" => Ok(KineticConvention::Centered),
        "unsigned" => Ok(KineticConvention::UnsignedIndex),
        other => Err(CliError::Config(format!(
            "invalid value for convention: {other}"
        ))),
    }
}

fn parse_backend(cfg: &RunConfig) -> CliResult<QftBackend> {
    match cfg.backend.as_deref().unwrap_or("reference") {
        "reference" => Ok(QftBackend::Reference),
        "pulse" => Ok(QftBackend::PulseOracle),
        other => Err(CliError::Config(format!(
            "invalid value for backend: {other}"
        ))),
    }
}

fn parse_potential(cfg: &RunConfig) -> CliResult<Potential> {
    let mass = cfg.mass.unwrap_or(1.0);
    match cfg.potential.as_deref().unwrap_or("free") {
        "free" => Ok(Potential::Free),
        "linear" => Ok(Potential::Linear {
            f: cfg.f.unwrap_or(1.0),
        }),
        "harmonic" => Ok(Potential::Quadratic {
            mass,
            omega: cfg.omega.unwrap_or(1.0),
        }),
        other => Err(CliError::Config(format!(
            "invalid value for potential: {other}"
        ))),
    }
}

/// Plan fidelity sweep: one row per seed with the mean and minimum basis
/// fidelity against the ideal transform.
pub fn qft_fidelity(cfg: &RunConfig) -> CliResult<()> {
    let l = RunConfig::require(&cfg.l, "l")?;
    let direction = parse_direction(cfg)?;
    let mode_name = cfg.mode.as_deref().unwrap_or("oracle").to_string();
    let model = cfg.build_model()?;
    let lambda = cfg.lambda.unwrap_or(0.0);
    let seeds = cfg.resolve_seeds(1)?;
    print_seeds(&seeds);

    enum PlanSpec {
        Mode(QftMode),
        Approx(f64),
    }
    let spec = match mode_name.as_str() {
        "oracle" => PlanSpec::Mode(QftMode::OracleCompensated),
        "unit-yukawa" => PlanSpec::Mode(QftMode::UnitYukawa),
        "general" => PlanSpec::Mode(QftMode::GeneralDiagonal),
        "approx" => PlanSpec::Approx(RunConfig::require(&cfg.threshold, "threshold")?),
        other => {
            return Err(CliError::Config(format!("invalid value for mode: {other}")))
        }
    };
    if matches!(spec, PlanSpec::Mode(QftMode::UnitYukawa | QftMode::GeneralDiagonal))
        && cfg.lambda.is_none()
    {
        return Err(CliError::Config("missing: lambda".into()));
    }

    let mut rows: Vec<(u64, f64, f64)> = seeds
        .par_iter()
        .map(|&seed| {
            let plan = match &spec {
                PlanSpec::Mode(mode) => build_qft_plan(l, direction, *mode, &model, lambda, seed)?,
                PlanSpec::Approx(threshold) => approximate_qft_plan(l, direction, *threshold)?,
            };
            let mut mean = 0.0;
            let mut min = f64::INFINITY;
            for basis in 0..1usize << l {
                let f = plan.basis_fidelity(basis)?;
                mean += f / (1usize << l) as f64;
                min = min.min(f);
            }
            Ok::<_, Error>((seed, mean, min))
        })
        .collect::<Result<Vec<_>>>()?;
    rows.sort_by_key(|r| r.0);

    let mut csv = String::from("l,mode,lambda,seed,mean_fidelity,min_fidelity\n");
    for (seed, mean, min) in &rows {
        csv.push_str(&format!(
            "{l},{mode_name},{},{seed},{},{}\n",
            fmt(lambda)?,
            fmt(*mean)?,
            fmt(*min)?
        ));
    }
    write_file(&cfg.out_dir(), "qft_fidelity.csv", &csv)?;
    Ok(())
}

/// Extracts constant, linear and quadratic coefficients from an exponent
/// table by inclusion-exclusion; the table of a gate-diagonal schedule is
/// exactly quadratic in the bits, so this is lossless.
fn table_coefficients(theta: &[f64], l: usize) -> (f64, Vec<f64>, BTreeMap<(usize, usize), f64>) {
    let constant = theta[0];
    let linear: Vec<f64> = (0..l).map(|p| theta[1 << p] - constant).collect();
    let mut quads = BTreeMap::new();
    for p in 1..l {
        for q in 0..p {
            quads.insert(
                (p, q),
                theta[(1 << p) | (1 << q)] - linear[p] - linear[q] - constant,
            );
        }
    }
    (constant, linear, quads)
}

/// Decoupling demonstration: measured coefficients of the averaged run
/// exponent against the half/quarter predictions.
pub fn decouple_demo(cfg: &RunConfig) -> CliResult<()> {
    let model = cfg.build_model()?;
    let l = model.num_qubits();
    let (j, k) = cfg.parse_pair()?;
    let lambda = RunConfig::require(&cfg.lambda, "lambda")?;
    let duration = cfg.duration.unwrap_or(1.0);
    let seeds = cfg.resolve_seeds(30)?;
    print_seeds(&seeds);

    let n = 1usize << l;
    let sums: Vec<f64> = seeds
        .par_iter()
        .map(|&seed| {
            let schedule = build_decoupling_schedule(&model, (j, k), lambda, duration, seed)?;
            Ok::<_, Error>(schedule.diagonal_action()?.theta)
        })
        .try_reduce(
            || vec![0.0; n],
            |mut acc, theta| {
                for (a, t) in theta.iter().enumerate() {
                    acc[a] += t;
                }
                Ok(acc)
            },
        )?;
    let mean: Vec<f64> = sums.iter().map(|s| s / seeds.len() as f64).collect();
    let (constant, linear, quads) = table_coefficients(&mean, l);

    let d = |p: usize, q: usize| model.pair_coefficient(p, q).unwrap();
    let spectators: Vec<usize> = (0..l).filter(|&p| p != j && p != k).collect();
    let predicted_linear = |p: usize| -> f64 {
        if p == j || p == k {
            duration / 2.0 * spectators.iter().map(|&s| d(s, p)).sum::<f64>()
        } else {
            0.0
        }
    };
    let mut predicted_constant = 0.0;
    for (i, &p) in spectators.iter().enumerate() {
        for &q in &spectators[..i] {
            predicted_constant += duration / 4.0 * d(p, q);
        }
    }

    let mut csv = String::from("kind,p,q,predicted,measured,abs_error\n");
    let mut push_row = |kind: &str, p: String, q: String, pred: f64, meas: f64| -> CliResult<()> {
        csv.push_str(&format!(
            "{kind},{p},{q},{},{},{}\n",
            fmt(pred)?,
            fmt(meas)?,
            fmt((meas - pred).abs())?
        ));
        Ok(())
    };
    push_row("constant", String::new(), String::new(), predicted_constant, constant)?;
    for p in 0..l {
        push_row("linear", p.to_string(), String::new(), predicted_linear(p), linear[p])?;
    }
    for ((p, q), measured) in quads {
        let predicted = if (p, q) == (j.max(k), j.min(k)) {
            duration * d(j, k)
        } else {
            0.0
        };
        push_row("quadratic", p.to_string(), q.to_string(), predicted, measured)?;
    }
    write_file(&cfg.out_dir(), "decouple_demo.csv", &csv)?;
    Ok(())
}

/// Quadratic phase gate accuracy: target versus achieved coefficients,
/// averaged over seeds.
pub fn phase_gate(cfg: &RunConfig) -> CliResult<()> {
    let model = cfg.build_model()?;
    let l = model.num_qubits();
    let targets = cfg.parse_targets()?;
    let lambda = RunConfig::require(&cfg.lambda, "lambda")?;
    let seeds = cfg.resolve_seeds(30)?;
    print_seeds(&seeds);

    let mut poly = PhasePolynomial::zero(l);
    for &(j, k, c) in &targets {
        if j >= l || k >= l || j == k {
            return Err(CliError::Config(format!(
                "invalid value for targets: pair ({j}, {k})"
            )));
        }
        poly.add_quadratic(j, k, c);
    }

    let n = 1usize << l;
    let sums: Vec<f64> = seeds
        .par_iter()
        .map(|&seed| {
            let schedule = quadratic_phase_gate(&poly, &model, lambda, seed)?;
            let action = schedule.diagonal_action()?;
            Ok::<_, Error>(action.theta)
        })
        .try_reduce(
            || vec![0.0; n],
            |mut acc, theta| {
                for (a, t) in theta.iter().enumerate() {
                    acc[a] += t;
                }
                Ok(acc)
            },
        )?;
    let mean: Vec<f64> = sums.iter().map(|s| s / seeds.len() as f64).collect();
    let (_, _, quads) = table_coefficients(&mean, l);

    let mut csv = String::from("j,k,target,achieved,abs_error\n");
    for &(j, k, c) in &targets {
        let key = (j.max(k), j.min(k));
        let achieved = quads.get(&key).copied().unwrap_or(0.0);
        csv.push_str(&format!(
            "{},{},{},{},{}\n",
            key.0,
            key.1,
            fmt(c)?,
            fmt(achieved)?,
            fmt((achieved - c).abs())?
        ));
    }
    write_file(&cfg.out_dir(), "phase_gate.csv", &csv)?;
    Ok(())
}

fn dump_wavefunction(dir: &Path, index: usize, grid: &WaveGrid, t: f64) -> CliResult<()> {
    let mut out = format!(
        "# l={} delta_q={} t={}\nindex,q,re,im,prob\n",
        grid.l(),
        fmt(grid.delta_q())?,
        fmt(t)?
    );
    let dq = grid.delta_q();
    for (a, s) in grid.samples().iter().enumerate() {
        out.push_str(&format!(
            "{a},{},{},{},{}\n",
            fmt(grid.q(a))?,
            fmt(s.re)?,
            fmt(s.im)?,
            fmt(s.norm_sqr() * dq)?
        ));
    }
    write_file(dir, &format!("psi_{index:03}.csv"), &out)?;
    Ok(())
}

/// Wave-packet evolution: observables table plus wavefunction dumps.
pub fn schrodinger(cfg: &RunConfig) -> CliResult<()> {
    let l = RunConfig::require(&cfg.l, "l")?;
    let potential = parse_potential(cfg)?;
    let mass = cfg.mass.unwrap_or(1.0);
    let sigma = cfg.sigma.unwrap_or(1.0);
    let (q0, p0) = (cfg.q0.unwrap_or(0.0), cfg.p0.unwrap_or(0.0));
    let delta_t = RunConfig::require(&cfg.dt, "dt")?;
    let total_time = RunConfig::require(&cfg.t, "t")?;
    let convention = parse_convention(cfg)?;
    let transform = SpectralTransform::new(parse_backend(cfg)?, l)?;

    let config = TrotterConfig {
        delta_t,
        total_time,
        convention,
    };
    let steps = config.steps()?;
    let sample_every = cfg.sample_every.unwrap_or_else(|| (steps / 64).max(1));
    if sample_every == 0 {
        return Err(CliError::Config(
            "invalid value for sample-every: 0".into(),
        ));
    }

    let mut dump_steps: BTreeMap<usize, f64> = BTreeMap::new();
    if let Some(text) = &cfg.dump_times {
        for t in RunConfig::parse_float_list(text, "dump-times")? {
            let step = t / delta_t;
            if (step - step.round()).abs() > 1e-9 * step.max(1.0) || t < 0.0 || t > total_time {
                return Err(CliError::Config(format!(
                    "invalid value for dump-times: {t} is not a step instant"
                )));
            }
            dump_steps.insert(step.round() as usize, t);
        }
    }

    let dir = cfg.out_dir();
    let mut grid = make_gaussian(l, q0, p0, sigma)?;
    let mut csv = String::from("t,norm,mean_q,mean_q2,mean_p,mean_p2,energy\n");
    let record = |grid: &WaveGrid, t: f64, csv: &mut String| -> CliResult<()> {
        let obs = observables(grid)?;
        let energy = mean_energy(grid, &potential, mass)?;
        csv.push_str(&format!(
            "{},{},{},{},{},{},{}\n",
            fmt(t)?,
            fmt(obs.norm)?,
            fmt(obs.mean_q)?,
            fmt(obs.mean_q2)?,
            fmt(obs.mean_p)?,
            fmt(obs.mean_p2)?,
            fmt(energy)?
        ));
        Ok(())
    };

    record(&grid, 0.0, &mut csv)?;
    let mut dump_index = 0usize;
    if let Some(&t) = dump_steps.get(&0) {
        dump_wavefunction(&dir, dump_index, &grid, t)?;
        dump_index += 1;
    }
    for step in 1..=steps {
        trotter_step(&mut grid, &potential, mass, delta_t, convention, &transform)?;
        let t = step as f64 * delta_t;
        if step % sample_every == 0 || step == steps {
            record(&grid, t, &mut csv)?;
        }
        if let Some(&t_dump) = dump_steps.get(&step) {
            dump_wavefunction(&dir, dump_index, &grid, t_dump)?;
            dump_index += 1;
        }
    }
    write_file(&dir, "observables.csv", &csv)?;
    Ok(())
}

/// Step-size convergence study: final-state error against the analytic
/// solution for each requested step.
pub fn trotter_study(cfg: &RunConfig) -> CliResult<()> {
    let l = RunConfig::require(&cfg.l, "l")?;
    let potential = parse_potential(cfg)?;
    let mass = cfg.mass.unwrap_or(1.0);
    let sigma = cfg.sigma.unwrap_or(1.0);
    let (q0, p0) = (cfg.q0.unwrap_or(0.0), cfg.p0.unwrap_or(0.0));
    let total_time = RunConfig::require(&cfg.t, "t")?;
    let convention = parse_convention(cfg)?;
    let dt_text = RunConfig::require(&cfg.dt_list, "dt-list")?;
    let dt_list = RunConfig::parse_float_list(&dt_text, "dt-list")?;

    let reference = match potential {
        Potential::Free => analytic_free_gaussian(l, total_time, q0, p0, sigma, mass)?,
        Potential::Linear { f } => {
            analytic_linear_gaussian(l, total_time, q0, p0, sigma, mass, f)?
        }
        Potential::Quadratic { .. } => {
            return Err(CliError::Config(
                "invalid value for potential: trotter-study supports free | linear".into(),
            ))
        }
    };
    let transform = SpectralTransform::new(parse_backend(cfg)?, l)?;

    let mut csv = String::from("delta_t,l2_error\n");
    for &delta_t in &dt_list {
        let config = TrotterConfig {
            delta_t,
            total_time,
            convention,
        };
        let mut grid = make_gaussian(l, q0, p0, sigma)?;
        evolve(&mut grid, &potential, mass, &config, &transform)?;
        let error = l2_distance(&grid, &reference)?;
        csv.push_str(&format!("{},{}\n", fmt(delta_t)?, fmt(error)?));
    }
    write_file(&cfg.out_dir(), "trotter_study.csv", &csv)?;
    Ok(())
}
