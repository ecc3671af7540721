use std::f64::consts::PI;
use std::path::{Path, PathBuf};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Deserialize;

use super::config::RunConfig;
use super::output::{write_records, OutputFormat, Record};
use super::{BoostArgs, CliError, CollideArgs, ComposeArgs, Equation, NumList, Outcome, TrajectoryArgs, WaveArgs};
use crate::collision::{analyze, CollisionScenario};
use crate::context::InvariantSpeedContext;
use crate::dynamics::{simulate_trajectory, ConstantForce};
use crate::particle::ParticleState;
use crate::vector::{FourVector, Vec3, Velocity3};
use crate::wave::{
    dirac_max_frequency, kg_stable_dt, measure_dirac_mode_observed, measure_kg_mode_observed,
    DiracStepper, KgLeapfrog, ScalarFieldGrid, SolverParams, SpinorFieldGrid,
};
use crate::xform::{
    boost_event, compose_velocity, inverse_boost_event, inverse_compose_velocity,
    light_frame_counter_speed, BoostParameter,
};

fn invalid(msg: impl Into<String>) -> CliError {
    CliError::Validation(msg.into())
}

fn required<T>(v: Option<T>, flag: &str) -> Result<T, CliError> {
    v.ok_or_else(|| invalid(format!("missing required value --{flag}")))
}

/// 1 or 3 components; a single value is taken along x.
fn vec3_arg(v: &[f64], flag: &str) -> Result<Vec3, CliError> {
    match *v {
        [x] => Ok(Vec3::new(x, 0.0, 0.0)),
        [x, y, z] => Ok(Vec3::new(x, y, z)),
        _ => Err(invalid(format!("--{flag} expects 1 or 3 comma-separated values, got {}", v.len()))),
    }
}

fn read_csv<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<Vec<T>, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Io(format!("reading {}: {e}", path.display())))?;
    csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .comment(Some(b'#'))
        .from_reader(text.as_bytes())
        .deserialize()
        .collect::<Result<Vec<T>, _>>()
        .map_err(|e| invalid(format!("{}: {e}", path.display())))
}

fn outcome(records: Vec<Record>, default_format: OutputFormat) -> Outcome {
    Outcome { records, trailer: Vec::new(), default_format, files: Vec::new() }
}

#[derive(Deserialize)]
struct EventRow {
    x: f64,
    y: f64,
    z: f64,
    t: f64,
}

pub(super) fn boost(ctx: &InvariantSpeedContext, cfg: &RunConfig, a: &BoostArgs) -> Result<Outcome, CliError> {
    let b = BoostParameter::new(ctx, required(a.v.or(cfg.boost.v), "v")?)?;
    let inverse = a.inverse || cfg.boost.inverse.unwrap_or(false);

    let mut events: Vec<[f64; 4]> = Vec::new();
    for NumList(e) in &a.event {
        match e.as_slice() {
            &[x, y, z, t] => events.push([x, y, z, t]),
            _ => return Err(invalid(format!("--event expects x,y,z,t, got {} values", e.len()))),
        }
    }
    if let Some(path) = &a.events {
        events.extend(read_csv::<EventRow>(path)?.into_iter().map(|r| [r.x, r.y, r.z, r.t]));
    }
    if events.is_empty() {
        events = cfg.boost.events.clone().unwrap_or_default();
    }
    if events.is_empty() {
        return Err(invalid("no events given (--event, --events or [boost] events)"));
    }

    let mut records = Vec::with_capacity(events.len());
    for [x, y, z, t] in events {
        if ![x, y, z, t].iter().all(|v| v.is_finite()) {
            return Err(invalid("event coordinates must be finite"));
        }
        let e = FourVector::event(ctx, t, x, y, z);
        let out = if inverse { inverse_boost_event(ctx, b, e)? } else { boost_event(ctx, b, e)? };
        records.push(
            Record::new()
                .with("x", out.x)
                .with("y", out.y)
                .with("z", out.z)
                .with("t", out.time(ctx)),
        );
    }
    Ok(outcome(records, OutputFormat::Csv))
}

pub(super) fn compose(ctx: &InvariantSpeedContext, cfg: &RunConfig, a: &ComposeArgs) -> Result<Outcome, CliError> {
    if a.light_frame_check {
        let c = ctx.c();
        let b = BoostParameter::new(ctx, c)?;
        let composed = inverse_compose_velocity(ctx, b, Vec3::new(-c, 0.0, 0.0))?.x;
        let closed_form = light_frame_counter_speed(ctx);
        let rec = Record::new()
            .with("c", c)
            .with("c_m", ctx.c_max())
            .with("u_prime", composed)
            .with("closed_form", closed_form)
            .with("lower", -2.0 * c)
            .with("upper", -c)
            .with("within_bounds", -2.0 * c < composed && composed < -c);
        return Ok(outcome(vec![rec], OutputFormat::Csv));
    }
    let b = BoostParameter::new(ctx, required(a.v.or(cfg.compose.v), "v")?)?;
    let u_list = match &a.u {
        Some(NumList(u)) => u.clone(),
        None => required(cfg.compose.u.clone(), "u")?,
    };
    let u = vec3_arg(&u_list, "u")?;
    if !u.is_finite() {
        return Err(invalid("--u must be finite"));
    }
    let inverse = a.inverse || cfg.compose.inverse.unwrap_or(false);
    let w = if inverse { inverse_compose_velocity(ctx, b, u)? } else { compose_velocity(ctx, b, u)? };
    let rec = Record::new().with("ux", w.x).with("uy", w.y).with("uz", w.z);
    Ok(outcome(vec![rec], OutputFormat::Csv))
}

#[derive(Deserialize)]
struct ScenarioRow {
    m_c1: f64,
    m_c2: f64,
    v_cm: f64,
    v_prime: f64,
}

pub(super) fn collide(
    ctx: &InvariantSpeedContext,
    cfg: &RunConfig,
    a: &CollideArgs,
    seed: u64,
) -> Result<Outcome, CliError> {
    let c = &cfg.collide;
    let mc = a.mc.or(c.mc);
    let mc1 = a.mc1.or(c.mc1).or(mc);
    let mc2 = a.mc2.or(c.mc2).or(mc);
    let batch = a.batch.clone().or_else(|| c.batch.clone());
    let random = a.random.or(c.random);

    let mut scenarios = Vec::new();
    if let Some(path) = batch {
        for row in read_csv::<ScenarioRow>(&path)? {
            scenarios.push(CollisionScenario::new(ctx, row.m_c1, row.m_c2, row.v_cm, row.v_prime)?);
        }
    } else if let Some(count) = random {
        let m = mc.unwrap_or(1.0);
        let cm = ctx.c_max();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut draw = || loop {
            let s: f64 = rng.gen_range(-cm..cm);
            if s.abs() < cm {
                break s;
            }
        };
        for _ in 0..count {
            let (v, vp) = (draw(), draw());
            scenarios.push(CollisionScenario::identical(ctx, m, v, vp)?);
        }
    } else {
        let v = required(a.v.or(c.v), "v")?;
        let vp = required(a.vprime.or(c.vprime), "vprime")?;
        let m1 = required(mc1, "mc")?;
        let m2 = required(mc2, "mc")?;
        scenarios.push(CollisionScenario::new(ctx, m1, m2, v, vp)?);
    }

    let mut records = Vec::with_capacity(scenarios.len());
    for s in &scenarios {
        let r = analyze(ctx, s)?;
        records.push(
            Record::new()
                .with("m_c1", s.m_c1)
                .with("m_c2", s.m_c2)
                .with("v_cm", s.v_cm)
                .with("v_prime", s.v_prime)
                .with("v1", r.v1)
                .with("v2", r.v2)
                .with("m1", r.m1)
                .with("m2", r.m2)
                .with("regime1", r.regime1.as_str())
                .with("regime2", r.regime2.as_str())
                .with("regime_final", r.regime_final.as_str())
                .with("momentum_residual", r.momentum_residual)
                .with("mass_ratio_residual", r.mass_ratio_residual)
                .with("mass_before", r.mass_before)
                .with("mass_after", r.mass_after)
                .with("energy_before", r.energy_before)
                .with("energy_after", r.energy_after),
        );
    }
    Ok(outcome(records, OutputFormat::Jsonl))
}

pub(super) fn trajectory(
    ctx: &InvariantSpeedContext,
    cfg: &RunConfig,
    a: &TrajectoryArgs,
) -> Result<Outcome, CliError> {
    let t = &cfg.trajectory;
    let list = |flag: &Option<NumList>, cfgv: &Option<Vec<f64>>| flag.as_ref().map(|l| l.0.clone()).or_else(|| cfgv.clone());
    let m_c = required(a.mc.or(t.mc), "mc")?;
    let v0 = vec3_arg(&list(&a.v0, &t.v0).unwrap_or_else(|| vec![0.0]), "v0")?;
    let x0 = vec3_arg(&list(&a.x0, &t.x0).unwrap_or_else(|| vec![0.0]), "x0")?;
    let force = vec3_arg(&required(list(&a.force, &t.force), "force")?, "force")?;
    let dt = required(a.dt.or(t.dt), "dt")?;
    let steps = required(a.steps.or(t.steps), "steps")?;
    if !(force.is_finite() && x0.is_finite()) {
        return Err(invalid("--force and --x0 must be finite"));
    }

    let initial = ParticleState::new(ctx, m_c, x0, Velocity3::from_vec(ctx, v0)?)?;
    let rec = simulate_trajectory(ctx, &ConstantForce(force), &initial, dt, steps)?;
    let records = rec
        .samples
        .iter()
        .map(|s| {
            Record::new()
                .with("t", s.t)
                .with("x", s.position.x)
                .with("y", s.position.y)
                .with("z", s.position.z)
                .with("vx", s.velocity.x)
                .with("vy", s.velocity.y)
                .with("vz", s.velocity.z)
                .with("px", s.momentum.x)
                .with("py", s.momentum.y)
                .with("pz", s.momentum.z)
                .with("E", s.energy)
        })
        .collect();
    let residual = super::output::fmt_num(rec.work_energy_residual());
    Ok(Outcome {
        records,
        trailer: vec![format!("# work_energy_residual={residual}")],
        default_format: OutputFormat::Csv,
        files: Vec::new(),
    })
}

#[derive(Deserialize)]
struct ScalarRow {
    x: f64,
    re: f64,
    im: f64,
}

#[derive(Deserialize)]
struct SpinorRow {
    x: f64,
    re_upper: f64,
    im_upper: f64,
    #[serde(default)]
    re_lower: f64,
    #[serde(default)]
    im_lower: f64,
}

struct Snapshots {
    dir: Option<PathBuf>,
    every: usize,
    files: Vec<(PathBuf, Vec<u8>)>,
}

impl Snapshots {
    fn take(&mut self, step: usize, t: f64, dx: f64, fields: &[&[Complex64]]) {
        let dir = match &self.dir {
            Some(d) if self.every > 0 && step.is_multiple_of(self.every) => d,
            _ => return,
        };
        const NAMES: [[&str; 2]; 2] = [["re", "im"], ["re_lower", "im_lower"]];
        let records: Vec<Record> = (0..fields[0].len())
            .map(|j| {
                let mut r = Record::new().with("x", j as f64 * dx);
                for (f, [re, im]) in fields.iter().zip(NAMES) {
                    r = r.with(re, f[j].re).with(im, f[j].im);
                }
                r
            })
            .collect();
        let mut buf = Vec::new();
        write_records(&mut buf, OutputFormat::Csv, &records, &[format!("# t={}", super::output::fmt_num(t))])
            .expect("writing to memory");
        self.files.push((dir.join(format!("snap_{step:08}.csv")), buf));
    }
}

pub(super) fn wave(ctx: &InvariantSpeedContext, cfg: &RunConfig, a: &WaveArgs) -> Result<Outcome, CliError> {
    let w = &cfg.wave;
    let equation = match (a.equation, w.equation.as_deref()) {
        (Some(e), _) => e,
        (None, Some("kg")) => Equation::Kg,
        (None, Some("dirac")) => Equation::Dirac,
        (None, Some(other)) => return Err(invalid(format!("unknown equation `{other}` (kg | dirac)"))),
        (None, None) => return Err(invalid("missing required value --equation")),
    };
    let m_c = required(a.mc.or(w.mc), "mc")?;
    let cfl = a.cfl.or(w.cfl).unwrap_or(0.5);
    let steps = a.steps.or(w.steps).unwrap_or(1000);
    let mode = a.mode.or(w.mode);
    let initial = a.initial.clone().or_else(|| w.initial.clone());
    let snap_every = a.snap_every.or(w.snap_every).unwrap_or(0);
    let snap_dir = a.snapshots.clone().or_else(|| w.snapshots.clone());
    if snap_every > 0 && snap_dir.is_none() {
        return Err(invalid("--snap-every needs a --snapshots directory"));
    }
    let mut snaps = Snapshots { dir: snap_dir, every: snap_every, files: Vec::new() };

    let (n, length, init_field) = match (&initial, mode) {
        (Some(_), Some(_)) => return Err(invalid("give either --mode or --initial, not both")),
        (None, None) => return Err(invalid("missing --mode or --initial")),
        (None, Some(_)) => (a.n.or(w.n).unwrap_or(256), a.length.or(w.length).unwrap_or(2.0 * PI), None),
        (Some(path), None) => {
            let (rows, xs) = match equation {
                Equation::Kg => {
                    let rows: Vec<ScalarRow> = read_csv(path)?;
                    let xs: Vec<f64> = rows.iter().map(|r| r.x).collect();
                    let u = rows.iter().map(|r| Complex64::new(r.re, r.im)).collect::<Vec<_>>();
                    ((u, Vec::new()), xs)
                }
                Equation::Dirac => {
                    let rows: Vec<SpinorRow> = read_csv(path)?;
                    let xs: Vec<f64> = rows.iter().map(|r| r.x).collect();
                    let u = rows.iter().map(|r| Complex64::new(r.re_upper, r.im_upper)).collect();
                    let l = rows.iter().map(|r| Complex64::new(r.re_lower, r.im_lower)).collect();
                    ((u, l), xs)
                }
            };
            if xs.len() < 2 {
                return Err(invalid("initial field needs at least two rows"));
            }
            let length = a.length.or(w.length).unwrap_or((xs[1] - xs[0]) * xs.len() as f64);
            (xs.len(), length, Some(rows))
        }
    };
    if n == 0 || !(length.is_finite() && length > 0.0) {
        return Err(invalid("grid needs n >= 1 and a finite positive --length"));
    }
    let dx = length / n as f64;
    let dt = match a.dt.or(w.dt) {
        Some(dt) => dt,
        None => match equation {
            Equation::Kg => kg_stable_dt(ctx, m_c, dx, cfl),
            Equation::Dirac => cfl / dirac_max_frequency(ctx, m_c, dx),
        },
    };
    let params = SolverParams::new(dt, steps, cfl)?;

    let summary = match (equation, init_field) {
        (Equation::Kg, None) => {
            let mode = mode.expect("mode checked above");
            let m = measure_kg_mode_observed(ctx, m_c, n, length, mode, &params, |i, t, psi| {
                snaps.take(i, t, dx, &[psi])
            })?;
            Record::new()
                .with("equation", "kg")
                .with("mode", mode)
                .with("k", m.k)
                .with("omega_measured", m.omega_measured)
                .with("omega_analytic", m.omega_analytic)
                .with("relative_error", m.relative_error())
                .with("energy_drift", m.energy_drift)
                .with("dt", dt)
                .with("steps", steps)
        }
        (Equation::Dirac, None) => {
            let mode = mode.expect("mode checked above");
            let m = measure_dirac_mode_observed(ctx, m_c, n, length, mode, &params, |i, t, u, l| {
                snaps.take(i, t, dx, &[u, l])
            })?;
            let rel = if m.omega_analytic != 0.0 {
                m.omega_measured / m.omega_analytic - 1.0
            } else {
                m.omega_measured
            };
            Record::new()
                .with("equation", "dirac")
                .with("mode", mode)
                .with("k", m.k)
                .with("omega_measured", m.omega_measured)
                .with("omega_analytic", m.omega_analytic)
                .with("relative_error", rel)
                .with("norm_drift", m.norm_drift)
                .with("dt", dt)
                .with("steps", steps)
        }
        (Equation::Kg, Some((psi, _))) => {
            let zeros = vec![Complex64::new(0.0, 0.0); psi.len()];
            let grid = ScalarFieldGrid::new(psi, zeros, dx, 0.0)?;
            let mut s = KgLeapfrog::new(ctx, &grid, m_c, dt, cfl)?;
            let e0 = s.energy();
            snaps.take(0, s.t(), dx, &[s.psi()]);
            for i in 1..=steps {
                s.step()?;
                snaps.take(i, s.t(), dx, &[s.psi()]);
            }
            let e1 = s.energy();
            let drift = if e0 != 0.0 { (e1 - e0).abs() / e0.abs() } else { (e1 - e0).abs() };
            Record::new()
                .with("equation", "kg")
                .with("t", s.t())
                .with("energy_initial", e0)
                .with("energy_final", e1)
                .with("energy_drift", drift)
                .with("dt", dt)
                .with("steps", steps)
        }
        (Equation::Dirac, Some((u, l))) => {
            let grid = SpinorFieldGrid::new(u, l, dx, 0.0)?;
            let mut s = DiracStepper::new(ctx, &grid, m_c, dt, cfl)?;
            let n0 = s.norm();
            snaps.take(0, s.t(), dx, &[s.upper(), s.lower()]);
            for i in 1..=steps {
                s.step()?;
                snaps.take(i, s.t(), dx, &[s.upper(), s.lower()]);
            }
            let n1 = s.norm();
            let drift = if n0 != 0.0 { (n1 - n0).abs() / n0 } else { n1 };
            Record::new()
                .with("equation", "dirac")
                .with("t", s.t())
                .with("norm_initial", n0)
                .with("norm_final", n1)
                .with("norm_drift", drift)
                .with("dt", dt)
                .with("steps", steps)
        }
    };
    Ok(Outcome {
        records: vec![summary],
        trailer: Vec::new(),
        default_format: OutputFormat::Jsonl,
        files: snaps.files,
    })
}
