//! Plain-text run configuration: one `section.key = value` per line, `#`
//! starts a comment. Unknown keys are rejected.

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::str::FromStr;

use crate::dynamics::{Bump, InitialCondition, IntegratorSettings, Method, Model};
use crate::eos::{AnalysisParams, EosParams, ViscosityParams};
use crate::error::{Error, Result};
use crate::field::{DiscretizationScheme, Grid, Operators, SchemeKind};

#[derive(Debug, Clone, PartialEq)]
pub struct OutputSettings {
    pub dir: Option<PathBuf>,
    /// Emit a diagnostics record every this many steps (and at the end).
    pub record_every: usize,
    pub snapshot_times: Vec<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StudyKind {
    /// Grid refinement with `dt ∝ h^2`.
    Space,
    /// Step-count refinement on a fixed grid.
    Time,
}

/// Parameters of the `convergence` subcommand.
#[derive(Debug, Clone, PartialEq)]
pub struct StudySettings {
    pub kind: StudyKind,
    /// Points per axis (space) or step counts (time).
    pub resolutions: Vec<usize>,
    pub t_end: f64,
}

#[derive(Debug, Clone)]
pub struct SimConfig {
    pub grid: Grid,
    pub scheme: DiscretizationScheme,
    pub eos: EosParams,
    pub visc: ViscosityParams,
    pub analysis: AnalysisParams,
    pub integrator: IntegratorSettings,
    pub ic: InitialCondition,
    pub output: OutputSettings,
    pub seed: u64,
    pub study: StudySettings,
}

impl SimConfig {
    pub fn model(&self) -> Result<Model> {
        Ok(Model {
            eos: self.eos,
            visc: self.visc,
            ops: Operators::new(self.grid, self.scheme)?,
            positivity_floor: self.integrator.positivity_floor,
        })
    }
}

struct Entries {
    values: BTreeMap<String, (usize, String)>,
    errors: Vec<String>,
}

impl Entries {
    fn take_raw(&mut self, key: &str) -> Option<(usize, String)> {
        self.values.remove(key)
    }

    fn parse<T: FromStr>(&mut self, key: &str) -> Option<T>
    where
        T::Err: std::fmt::Display,
    {
        let (line, raw) = self.take_raw(key)?;
        match raw.parse::<T>() {
            Ok(v) => Some(v),
            Err(e) => {
                self.errors.push(format!("line {line}: {key} = {raw}: {e}"));
                None
            }
        }
    }

    fn required<T: FromStr>(&mut self, key: &str) -> Option<T>
    where
        T::Err: std::fmt::Display,
    {
        if !self.values.contains_key(key) {
            self.errors.push(format!("missing required key {key}"));
            return None;
        }
        self.parse(key)
    }

    fn or<T: FromStr>(&mut self, key: &str, default: T) -> T
    where
        T::Err: std::fmt::Display,
    {
        self.parse(key).unwrap_or(default)
    }

    fn list<T: FromStr>(&mut self, key: &str) -> Option<Vec<T>>
    where
        T::Err: std::fmt::Display,
    {
        let (line, raw) = self.take_raw(key)?;
        if raw.trim().is_empty() {
            return Some(Vec::new());
        }
        let mut out = Vec::new();
        for item in raw.split(',') {
            match item.trim().parse::<T>() {
                Ok(v) => out.push(v),
                Err(e) => {
                    self.errors.push(format!("line {line}: {key}: '{}': {e}", item.trim()));
                    return None;
                }
            }
        }
        Some(out)
    }
}

fn tokenize(text: &str) -> Entries {
    let mut entries = Entries {
        values: BTreeMap::new(),
        errors: Vec::new(),
    };
    for (i, raw_line) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw_line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            entries
                .errors
                .push(format!("line {line_no}: expected 'key = value', got '{line}'"));
            continue;
        };
        let key = key.trim().to_string();
        let value = value.trim().trim_matches('"').to_string();
        if key.is_empty() {
            entries.errors.push(format!("line {line_no}: empty key"));
            continue;
        }
        if let Some((first, _)) = entries.values.get(&key) {
            entries
                .errors
                .push(format!("line {line_no}: duplicate key {key} (first set on line {first})"));
            continue;
        }
        entries.values.insert(key, (line_no, value));
    }
    entries
}

/// Parses and validates a configuration, reporting every problem found.
pub fn parse_config(text: &str) -> Result<SimConfig> {
    let mut e = tokenize(text);

    let dim: Option<usize> = e.required("grid.dim");
    let n: Option<usize> = e.required("grid.n");
    let length: Option<f64> = e.required("grid.length");
    let grid = match (dim, n, length) {
        (Some(d), Some(n), Some(l)) => match Grid::new(d, n, l) {
            Ok(g) => Some(g),
            Err(err) => {
                e.errors.push(err.to_string());
                None
            }
        },
        (Some(d), _, _) if d != 1 && d != 3 => {
            e.errors.push(format!("grid.dim must be 1 or 3 (got {d})"));
            None
        }
        _ => None,
    };

    let kind: SchemeKind = e.or("scheme.kind", SchemeKind::Spectral);
    let dealias = e.or("scheme.dealias", kind == SchemeKind::Spectral);
    let scheme = DiscretizationScheme { kind, dealias };
    if let Some(g) = grid {
        if let Err(err) = Operators::new(g, scheme) {
            e.errors.push(err.to_string());
        }
    }

    let eos_vals: Vec<Option<f64>> = ["eos.a_l", "eos.a_g", "eos.rho_l0", "eos.P_l0", "eos.m_tilde", "eos.n_tilde"]
        .iter()
        .map(|k| e.required(k))
        .collect();
    let eos = match eos_vals[..] {
        [Some(a_l), Some(a_g), Some(rho), Some(p0), Some(mt), Some(nt)] => {
            match EosParams::new(a_l, a_g, rho, p0, mt, nt) {
                Ok(p) => Some(p),
                Err(err) => {
                    e.errors.push(err.to_string());
                    None
                }
            }
        }
        _ => None,
    };

    let mu: Option<f64> = e.required("visc.mu");
    let lambda: Option<f64> = e.required("visc.lambda");
    let visc = match (mu, lambda) {
        (Some(mu), Some(lambda)) => match ViscosityParams::new(mu, lambda) {
            Ok(v) => Some(v),
            Err(err) => {
                e.errors.push(err.to_string());
                None
            }
        },
        _ => None,
    };

    let q = e.or("analysis.q", 1.1);
    let theta = e.or("analysis.theta", 0.5);
    let analysis = visc.and_then(|v| match AnalysisParams::new(q, theta, &v) {
        Ok(a) => Some(a),
        Err(err) => {
            e.errors.push(err.to_string());
            None
        }
    });

    let defaults = IntegratorSettings::default();
    let method: Method = e.or("integrator.method", defaults.method);
    let integrator = IntegratorSettings {
        method,
        cfl: e.or("integrator.cfl", defaults.cfl),
        dt_max: e.or("integrator.dt_max", defaults.dt_max),
        t_end: e.required("integrator.t_end").unwrap_or(0.0),
        positivity_floor: e.or("integrator.positivity_floor", defaults.positivity_floor),
    };
    if let Err(problems) = integrator.validate() {
        e.errors.extend(problems);
    }

    let ic = parse_ic(&mut e, grid.map(|g| g.length()).unwrap_or(1.0));

    let output = OutputSettings {
        dir: e.parse::<String>("output.dir").map(PathBuf::from),
        record_every: e.or("output.record_every", 10usize),
        snapshot_times: e.list("output.snapshot_times").unwrap_or_default(),
    };
    if output.record_every == 0 {
        e.errors.push("output.record_every >= 1 violated".to_string());
    }
    if output.snapshot_times.iter().any(|t| !(*t >= 0.0) || !t.is_finite()) {
        e.errors.push("output.snapshot_times must be finite and >= 0".to_string());
    }
    if output.snapshot_times.windows(2).any(|w| w[1] <= w[0]) {
        e.errors.push("output.snapshot_times must be strictly increasing".to_string());
    }

    let seed = e.or("seed", 0u64);

    let study_kind = match e.parse::<String>("study.kind").as_deref() {
        None | Some("space") => StudyKind::Space,
        Some("time") => StudyKind::Time,
        Some(other) => {
            e.errors.push(format!("study.kind must be space or time (got {other})"));
            StudyKind::Space
        }
    };
    let default_res = match study_kind {
        StudyKind::Space => vec![16, 32, 64],
        StudyKind::Time => vec![4, 8, 16],
    };
    let study = StudySettings {
        kind: study_kind,
        resolutions: e.list("study.resolutions").unwrap_or(default_res),
        t_end: e.or("study.t_end", 0.1),
    };
    if study.resolutions.len() < 3 {
        e.errors.push("study.resolutions needs at least 3 entries".to_string());
    }
    if !(study.t_end > 0.0) {
        e.errors.push("study.t_end > 0 violated".to_string());
    }

    for (key, (line, _)) in std::mem::take(&mut e.values) {
        e.errors.push(format!("line {line}: unknown key {key}"));
    }

    match (grid, eos, visc, analysis, ic) {
        (Some(grid), Some(eos), Some(visc), Some(analysis), Some(ic)) if e.errors.is_empty() => {
            Ok(SimConfig {
                grid,
                scheme,
                eos,
                visc,
                analysis,
                integrator,
                ic,
                output,
                seed,
                study,
            })
        }
        _ => Err(Error::Config(e.errors)),
    }
}

fn parse_bump(e: &mut Entries, prefix: &str, length: f64) -> Bump {
    let bump = Bump {
        amp: e.or(&format!("ic.{prefix}_amp"), 0.0),
        width: e.or(&format!("ic.{prefix}_width"), 0.1 * length),
        center: e.or(&format!("ic.{prefix}_center"), 0.5 * length),
    };
    if !(bump.width > 0.0) {
        e.errors.push(format!("ic.{prefix}_width > 0 violated"));
    }
    bump
}

fn parse_ic(e: &mut Entries, length: f64) -> Option<InitialCondition> {
    let recipe = e.parse::<String>("ic.recipe").unwrap_or_else(|| "equilibrium".to_string());
    let ic = match recipe.as_str() {
        "equilibrium" => InitialCondition::Equilibrium,
        "gaussian" => InitialCondition::Gaussian {
            m: parse_bump(e, "m", length),
            n: parse_bump(e, "n", length),
            u: parse_bump(e, "u", length),
        },
        "fourier" => InitialCondition::Fourier {
            mode: e.or("ic.mode", 1u32),
            m_amp: e.or("ic.m_amp", 0.0),
            n_amp: e.or("ic.n_amp", 0.0),
            u_amp: e.or("ic.u_amp", 0.0),
        },
        "ratio_bump" => InitialCondition::RatioBump {
            m: parse_bump(e, "m", length),
            u: parse_bump(e, "u", length),
            s0: e.parse("ic.s0"),
        },
        "random" => InitialCondition::Random {
            amp: e.or("ic.amp", 0.01),
            max_mode: e.or("ic.max_mode", 2u32),
        },
        other => {
            e.errors.push(format!(
                "ic.recipe '{other}' unknown (expected equilibrium, gaussian, fourier, ratio_bump or random)"
            ));
            return None;
        }
    };
    Some(ic)
}

#[cfg(test)]
mod tests {
    use super::*;

    const MINIMAL: &str = "\
# minimal 1D setup
grid.dim = 1
grid.n = 32
grid.length = 10.0
eos.a_l = 2.0
eos.a_g = 1.0
eos.rho_l0 = 1.0
eos.P_l0 = 0.0
eos.m_tilde = 0.6
eos.n_tilde = 0.4
visc.mu = 0.05
visc.lambda = 0.0
integrator.t_end = 1.0
";

    fn errors_of(text: &str) -> Vec<String> {
        match parse_config(text) {
            Err(Error::Config(errs)) => errs,
            other => panic!("expected config errors, got {other:?}"),
        }
    }

    #[test]
    fn minimal_config_fills_defaults() {
        let cfg = parse_config(MINIMAL).unwrap();
        assert_eq!(cfg.output.record_every, 10);
        assert_eq!(cfg.integrator.cfl, 0.4);
        assert_eq!(cfg.integrator.method, Method::Rk4);
        assert_eq!(cfg.scheme, DiscretizationScheme::spectral());
        assert_eq!(cfg.ic, InitialCondition::Equilibrium);
        assert_eq!(cfg.integrator.positivity_floor, 1e-8);
    }

    #[test]
    fn viscosity_constraint_is_reported() {
        let text = MINIMAL
            .replace("visc.mu = 0.05", "visc.mu = 1")
            .replace("visc.lambda = 0.0", "visc.lambda = -1");
        let errs = errors_of(&text);
        assert!(errs.iter().any(|e| e.contains("2*mu+3*lambda >= 0")), "{errs:?}");
    }

    #[test]
    fn q_outside_interval_is_rejected() {
        let errs = errors_of(&format!("{MINIMAL}analysis.q = 1.5\n"));
        assert!(errs.iter().any(|e| e.contains("q in (1, 4/3)")), "{errs:?}");
    }

    #[test]
    fn all_errors_are_collected() {
        let text = format!("{MINIMAL}eos.a_x = 3\nintegrator.cfl = 2\nic.recipe = bogus\n")
            .replace("grid.n = 32", "grid.n = 4");
        let errs = errors_of(&text);
        assert!(errs.iter().any(|e| e.contains("unknown key eos.a_x")), "{errs:?}");
        assert!(errs.iter().any(|e| e.contains("cfl")), "{errs:?}");
        assert!(errs.iter().any(|e| e.contains("bogus")), "{errs:?}");
        assert!(errs.iter().any(|e| e.contains("grid.n >= 8")), "{errs:?}");
    }

    #[test]
    fn keys_of_other_recipes_are_unknown() {
        let errs = errors_of(&format!("{MINIMAL}ic.recipe = fourier\nic.m_width = 2\n"));
        assert!(errs.iter().any(|e| e.contains("unknown key ic.m_width")), "{errs:?}");
    }

    #[test]
    fn missing_and_duplicate_keys() {
        let text = MINIMAL.replace("eos.a_g = 1.0\n", "") + "grid.n = 64\n";
        let errs = errors_of(&text);
        assert!(errs.iter().any(|e| e.contains("missing required key eos.a_g")));
        assert!(errs.iter().any(|e| e.contains("duplicate key grid.n")));
    }

    #[test]
    fn recipes_and_lists() {
        let text = format!(
            "{MINIMAL}ic.recipe = gaussian\nic.m_amp = 0.05\nic.n_width = 0.5\noutput.snapshot_times = 0.25, 0.5\nscheme.kind = central4\n"
        );
        let cfg = parse_config(&text).unwrap();
        assert_eq!(cfg.output.snapshot_times, vec![0.25, 0.5]);
        assert!(!cfg.scheme.dealias);
        match cfg.ic {
            InitialCondition::Gaussian { m, n, u } => {
                assert_eq!(m.amp, 0.05);
                assert_eq!(m.width, 1.0);
                assert_eq!(n.width, 0.5);
                assert_eq!(u.amp, 0.0);
            }
            other => panic!("{other:?}"),
        }
    }
}
