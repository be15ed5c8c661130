use std::f64::consts::FRAC_1_SQRT_2;

use infoflow::causal::{
    build_network, clock_events, clock_events_reciprocal, coarse_grain, foliate, required_extent,
    Boost, ClockSpec,
};
use infoflow::dispersion::{
    branch_spinor, convergence_report, dispersion as curve, error_ratios, refraction_index,
    wavepacket_speed, zeta as max_speed, zeta_carrier, Branch, ConvergenceSetup,
};
use infoflow::io::{read_field_state, write_field_state};
use infoflow::lattice::{
    evolve as run_evolve, make_wavepacket, zitterbewegung_trace, FieldState, LatticeParams,
    MassCoupling, Mode, WavepacketSpec,
};
use infoflow::num_complex::Complex64;
use infoflow::Error;

use crate::config::{pick, FileConfig, Velocity};
use crate::report::{Cell, Report};
use crate::{
    CliError, ConvergenceArgs, Direction, DispersionArgs, EvolveArgs, Format, Init, LorentzArgs,
    Output, Stepper, ZetaArgs, ZitterArgs,
};

fn one(file: &FileConfig, key: &str) -> Result<Option<f64>, CliError> {
    match file.mu.clone().map(|m| m.into_vec()) {
        None => Ok(None),
        Some(v) if v.len() == 1 => Ok(Some(v[0])),
        Some(_) => Err(CliError::Usage(format!("config key {key} must be a single number here"))),
    }
}

fn done(report: Report, format: Format) -> Output {
    Output {
        main: report.render(format),
        extra: Vec::new(),
    }
}

fn label<T: std::fmt::Debug>(x: T) -> String {
    format!("{x:?}").to_lowercase()
}

pub fn evolve(a: &EvolveArgs, file: &FileConfig, format: Format) -> Result<Output, CliError> {
    let load_path = a.load_state.clone().or(file.load_state.clone());
    let loaded = match &load_path {
        Some(p) => {
            let text = std::fs::read_to_string(p)
                .map_err(|e| CliError::Io(format!("cannot read {}: {e}", p.display())))?;
            Some(read_field_state(&text)?)
        }
        None => None,
    };
    let (ld_sites, ld_chorus, ld_chronon, ld_mu) = match &loaded {
        Some((_, p, m)) => (p.n_sites(), p.chorus(), p.chronon(), m.mu()),
        None => (256, 1.0, 1.0, 0.0),
    };

    let sites = pick(a.sites, file.sites, ld_sites);
    let chorus = pick(a.chorus, file.chorus, ld_chorus);
    let chronon = pick(a.chronon, file.chronon, ld_chronon);
    let mu = pick(a.mu, one(file, "mu")?, ld_mu);
    let steps = pick(a.steps, file.steps, 100);
    let cadence = pick(a.cadence, file.cadence, 1);
    let stepper = pick(a.stepper, file.stepper, Stepper::Unitary);
    let substeps = pick(a.substeps, file.substeps, 16);
    let init = pick(a.init, file.init, Init::Packet);
    let direction = pick(a.direction, file.direction, Direction::Right);
    let width = pick(a.width, file.width, 8.0);
    let k0 = pick(a.k0, file.k0, 0.0);
    let center = pick(a.center, file.center, (sites / 2) as f64);
    let save = a.save_state.clone().or(file.save_state.clone());

    let params = LatticeParams::new(sites, chorus, chronon)?;
    let mass = MassCoupling::new(mu)?;
    let initial: FieldState = match loaded {
        Some((state, _, _)) => state,
        None => match init {
            Init::Delta => {
                if center < 0.0 || center.fract() != 0.0 || center as usize >= sites {
                    return Err(CliError::Usage(format!("delta center {center} is not a site")));
                }
                FieldState::delta(sites, center as usize, direction == Direction::Right)
            }
            Init::Packet => {
                let one = Complex64::new(1.0, 0.0);
                let zero = Complex64::new(0.0, 0.0);
                let weights = match direction {
                    Direction::Right => [one, zero],
                    Direction::Left => [zero, one],
                };
                make_wavepacket(&WavepacketSpec::new(center, width, k0, weights), &params)?
            }
        },
    };
    let mode = match stepper {
        Stepper::Unitary => Mode::Unitary,
        Stepper::Fd => Mode::FiniteDifference { substeps },
    };
    let traj = run_evolve(&initial, &params, &mass, steps, mode, cadence)?;

    let mut r = Report::new(
        "evolve",
        &["step", "t", "x", "re_plus", "im_plus", "re_minus", "im_minus", "density"],
    );
    r.param("sites", sites);
    r.param("chorus", chorus);
    r.param("chronon", chronon);
    r.param("mu", mu);
    r.param("steps", steps);
    r.param("cadence", cadence);
    r.param("stepper", label(stepper));
    r.param("substeps", substeps);
    match &load_path {
        Some(p) => r.param("load_state", p.display().to_string()),
        None => {
            r.param("init", label(init));
            r.param("direction", label(direction));
            r.param("center", center);
            r.param("width", width);
            r.param("k0", k0);
        }
    }
    r.param("format", label(format));

    let last = traj.last();
    r.note("initial_norm", initial.total_norm());
    r.note("final_norm", last.total_norm());
    let mean = |s: &FieldState| match s.position_mean() {
        Ok(m) => Cell::Float(m),
        Err(_) => Cell::Text("undefined".into()),
    };
    r.note("initial_mean", mean(&initial));
    r.note("final_mean", mean(last));

    for (step, state) in &traj.snapshots {
        let t = *step as f64 * chronon;
        let density = state.density();
        for (x, &rho) in density.iter().enumerate() {
            let (p, m) = (state.plus[x], state.minus[x]);
            r.row(vec![
                (*step).into(),
                t.into(),
                x.into(),
                p.re.into(),
                p.im.into(),
                m.re.into(),
                m.im.into(),
                rho.into(),
            ]);
        }
    }
    let mut out = done(r, format);
    if let Some(path) = save {
        out.extra.push((path, write_field_state(last, &params, &mass)?));
    }
    Ok(out)
}

pub fn dispersion(a: &DispersionArgs, file: &FileConfig, format: Format) -> Result<Output, CliError> {
    let mu = pick(a.mu, one(file, "mu")?, 0.5);
    let nk = pick(a.nk, file.nk, 256);
    let mass = MassCoupling::new(mu)?;
    let c = curve(&mass, nk)?;
    let mut r = Report::new("dispersion", &["k", "omega", "group_velocity"]);
    r.param("mu", mu);
    r.param("nk", nk);
    r.param("format", label(format));
    r.note("zeta", max_speed(&mass));
    for s in &c.samples {
        r.row(vec![s.k.into(), s.omega.into(), s.group_velocity.into()]);
    }
    Ok(done(r, format))
}

fn default_mu_grid() -> Vec<f64> {
    (0..=10).map(|i| i as f64 / 10.0).collect()
}

pub fn zeta(a: &ZetaArgs, file: &FileConfig, format: Format) -> Result<Output, CliError> {
    let mus = pick(a.mu.clone(), file.mu.clone().map(|m| m.into_vec()), default_mu_grid());
    if mus.is_empty() {
        return Err(CliError::Usage("empty mu list".into()));
    }
    let measure = a.measure || file.measure.unwrap_or(false);
    let sites = pick(a.sites, file.sites, 2048);
    let width = pick(a.width, file.width, 16.0);
    let steps = pick(a.steps, file.steps, 600);
    let burn_in = pick(a.burn_in, file.burn_in, 50);

    let mut columns = vec!["mu", "zeta", "carrier_k", "refraction_index"];
    if measure {
        columns.push("measured_speed");
    }
    let mut r = Report::new("zeta", &columns);
    let list: Vec<String> = mus.iter().map(|m| m.to_string()).collect();
    r.param("mu", list.join(";"));
    r.param("measure", measure);
    if measure {
        r.param("sites", sites);
        r.param("width", width);
        r.param("steps", steps);
        r.param("burn_in", burn_in);
    }
    r.param("format", label(format));

    let params = LatticeParams::unit(sites)?;
    for &mu in &mus {
        let mass = MassCoupling::new(mu)?;
        let n = match refraction_index(&mass) {
            Ok(n) => n,
            Err(Error::InfiniteIndex) => f64::INFINITY,
            Err(e) => return Err(e.into()),
        };
        let k = zeta_carrier(&mass);
        let mut row: Vec<Cell> = vec![mu.into(), max_speed(&mass).into(), k.into(), n.into()];
        if measure {
            let spec = WavepacketSpec::new(
                (sites / 4) as f64,
                width,
                k,
                branch_spinor(&mass, k, Branch::Positive),
            );
            row.push(wavepacket_speed(&spec, &params, &mass, steps, burn_in)?.speed.into());
        }
        r.row(row);
    }
    Ok(done(r, format))
}

pub fn zitter(a: &ZitterArgs, file: &FileConfig, format: Format) -> Result<Output, CliError> {
    let mu = pick(a.mu, one(file, "mu")?, 0.3);
    let sites = pick(a.sites, file.sites, 2048);
    let width = pick(a.width, file.width, 16.0);
    let k0 = pick(a.k0, file.k0, 0.0);
    let steps = pick(a.steps, file.steps, 2000);
    let floor = pick(a.floor, file.floor, 0.05);

    let params = LatticeParams::unit(sites)?;
    let mass = MassCoupling::new(mu)?;
    let weights = [Complex64::new(FRAC_1_SQRT_2, 0.0), Complex64::new(0.0, FRAC_1_SQRT_2)];
    let spec = WavepacketSpec::new((sites / 2) as f64, width, k0, weights);
    let trace = zitterbewegung_trace(&spec, &params, &mass, steps)?;
    let residual = trace.residual()?;

    let mut r = Report::new("zitter", &["t", "mean", "residual"]);
    r.param("mu", mu);
    r.param("sites", sites);
    r.param("width", width);
    r.param("k0", k0);
    r.param("steps", steps);
    r.param("floor", floor);
    r.param("spinor", "(1,i)/sqrt2");
    r.param("format", label(format));
    r.note("predicted_rest", trace.predicted_rest);
    r.note("predicted_carrier", trace.predicted_carrier);
    r.note("drift", trace.drift()?);
    r.note(
        "measured_frequency",
        match trace.measured_frequency(floor) {
            Ok(w) => Cell::Float(w),
            Err(_) => Cell::Text("undefined".into()),
        },
    );
    let amplitude = residual.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    r.note("residual_amplitude", amplitude);
    for ((t, x), res) in trace.samples.iter().zip(&residual) {
        r.row(vec![(*t).into(), (*x).into(), (*res).into()]);
    }
    Ok(done(r, format))
}

pub fn convergence(a: &ConvergenceArgs, file: &FileConfig, format: Format) -> Result<Output, CliError> {
    let mu = pick(a.mu, one(file, "mu")?, 0.2);
    let sites = pick(a.sites, file.sites, 256);
    let width = pick(a.width, file.width, 8.0);
    let k0 = pick(a.k0, file.k0, 0.0);
    let levels = pick(a.levels, file.levels, 4);
    let time = pick(a.time, file.time, 64.0);

    let setup = ConvergenceSetup {
        domain_length: sites as f64,
        center: (sites / 2) as f64,
        width,
        k0,
        spinor_weights: [Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)],
        coarse_chorus: 1.0,
        coarse_mass: MassCoupling::new(mu)?,
        time,
    };
    let rows = convergence_report(&setup, levels)?;
    let ratios = error_ratios(&rows);

    let mut r = Report::new("convergence", &["level", "a", "sites", "mu", "steps", "error", "ratio"]);
    r.param("mu", mu);
    r.param("sites", sites);
    r.param("width", width);
    r.param("k0", k0);
    r.param("levels", levels);
    r.param("time", time);
    r.param("spinor", "(1,0)");
    r.param("format", label(format));
    for (i, row) in rows.iter().enumerate() {
        let ratio = if i == 0 { Cell::Empty } else { ratios[i - 1].into() };
        r.row(vec![
            i.into(),
            row.a.into(),
            row.n_sites.into(),
            row.mu.into(),
            row.steps.into(),
            row.error.into(),
            ratio,
        ]);
    }
    Ok(done(r, format))
}

fn resolve_beta(text: Option<Velocity>, max_den: i64) -> Result<Boost, CliError> {
    match text {
        None => Ok(Boost::new(3, 5)?),
        Some(Velocity::Number(x)) => Ok(Boost::approximate(x, max_den)?),
        Some(Velocity::Text(s)) => {
            if s.contains('/') || s.trim().parse::<i64>().is_ok() {
                Ok(s.parse::<Boost>()?)
            } else {
                let x: f64 = s
                    .trim()
                    .parse()
                    .map_err(|_| CliError::Usage(format!("bad velocity {s:?}")))?;
                Ok(Boost::approximate(x, max_den)?)
            }
        }
    }
}

pub fn lorentz(a: &LorentzArgs, file: &FileConfig, format: Format) -> Result<Output, CliError> {
    let max_den = pick(a.max_den, file.max_den, 1000);
    let given = a.beta.clone().map(Velocity::Text).or(file.beta.clone());
    let beta = resolve_beta(given, max_den)?;
    let ds = pick(
        a.d.clone(),
        file.d.clone().map(|d| d.into_vec()),
        vec![16, 32, 64, 128, 256],
    );
    if ds.is_empty() {
        return Err(CliError::Usage("empty d list".into()));
    }
    let ticks = pick(a.ticks, file.ticks, 8);
    let phase = pick(a.phase, file.phase, 0);
    let factor = pick(a.factor, file.factor, 1);
    let reciprocal = a.reciprocal || file.reciprocal.unwrap_or(false);

    let mut r = Report::new(
        "lorentz",
        &[
            "beta_num", "beta_den", "d", "n_ticks", "raw_count", "leaf_scale", "wire_count",
            "dilation", "contraction", "factor", "gamma",
        ],
    );
    r.param("beta", beta.to_string());
    r.param("max_den", max_den);
    let list: Vec<String> = ds.iter().map(|d| d.to_string()).collect();
    r.param("d", list.join(";"));
    r.param("ticks", ticks);
    r.param("phase", phase);
    r.param("factor", factor);
    r.param("reciprocal", reciprocal);
    r.param("format", label(format));
    r.note("observer", if reciprocal { beta.to_string() } else { "0/1".into() });

    for &d in &ds {
        let clock = ClockSpec::new(d, ticks)?.with_phase(phase);
        let (observer, moving) = if reciprocal {
            (beta, Boost::rest())
        } else {
            (Boost::rest(), beta)
        };
        let (rows, cols) = required_extent(observer, moving, &clock);
        let net = build_network(rows.max(2), cols.max(2))?;
        let fol = foliate(&net, beta);
        let report = if reciprocal {
            clock_events_reciprocal(&net, &fol, &clock)?
        } else {
            clock_events(&net, &fol, &clock)?
        };
        let report = coarse_grain(&report, factor)?;
        r.row(vec![
            beta.num().into(),
            beta.den().into(),
            d.into(),
            report.n_ticks.into(),
            report.raw_count.into(),
            report.leaf_scale.into(),
            report.wire_count.into(),
            report.dilation_estimate.into(),
            report.contraction_estimate.into(),
            report.coarse_grain_factor.into(),
            beta.gamma().into(),
        ]);
    }
    Ok(done(r, format))
}
