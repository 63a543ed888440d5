//! `key = value` run configuration with `#` comments.

use std::collections::HashSet;
use std::fs;
use std::path::{Path, PathBuf};

use crate::dynamics::{EvolveConfig, RhsForm};
use crate::error::{Error, Result};
use crate::gauge::{GaugeState, RegularityTriple};
use crate::spectral::GridSpec;

use super::data::{rough_data_generate, DataKind};
use super::snapshot::snapshot_read_on;

/// Where the initial state comes from.
#[derive(Debug, Clone, PartialEq)]
pub enum DataSource {
    Generated(DataKind),
    /// A snapshot on the configured grid.
    File(PathBuf),
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub grid: GridSpec,
    pub regularity: RegularityTriple,
    pub evolve: EvolveConfig,
    pub mass: f64,
    pub seed: u64,
    pub data: DataSource,
    pub out_dir: PathBuf,
    pub override_admissibility: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            grid: GridSpec::square(64).expect("valid default grid"),
            regularity: RegularityTriple::default(),
            evolve: EvolveConfig::default(),
            mass: 1.0,
            seed: 0,
            data: DataSource::Generated(DataKind::default()),
            out_dir: PathBuf::from("out"),
            override_admissibility: false,
        }
    }
}

/// Recognized keys and their meaning, for `--help`.
pub const CONFIG_KEYS: &[(&str, &str)] = &[
    ("n", "grid points per axis (sets nx and ny)"),
    ("nx, ny", "grid points along each axis, even and >= 8"),
    ("period", "side length of the periodic square [2 pi]"),
    ("mass", "Klein-Gordon mass m [1]"),
    ("s, r, l", "regularity exponents of the data [1 1 1]"),
    ("eps_tilde", "weight exponent of the curl-free part [0.01]"),
    ("seed", "RNG seed for generated data [0]"),
    ("data", "rough_random | smooth_gaussian | file [smooth_gaussian]"),
    ("amplitude, width", "L^2 size and spectral width of smooth data [1 2]"),
    ("data_file", "snapshot path when data = file"),
    ("dt, t_end", "time step and final time [1e-3 1]"),
    ("rhs", "direct | nullform [direct]"),
    ("integrator", "etd_rk4 | strang [etd_rk4]"),
    ("snapshot_stride, diag_stride", "output cadence in steps [100 10]"),
    ("cfl", "limit on |dt| max <xi> [5]"),
    ("out_dir", "output directory [out]"),
    ("override_admissibility", "true | false: allow inadmissible data [false]"),
];

fn parse_num<T: std::str::FromStr>(key: &str, v: &str) -> Result<T> {
    v.parse()
        .map_err(|_| Error::Config(format!("{key}: cannot parse {v:?}")))
}

fn parse_bool(key: &str, v: &str) -> Result<bool> {
    match v {
        "true" | "yes" | "1" => Ok(true),
        "false" | "no" | "0" => Ok(false),
        _ => Err(Error::Config(format!("{key}: expected true or false, got {v:?}"))),
    }
}

impl RunConfig {
    pub fn parse(text: &str) -> Result<Self> {
        let mut cfg = RunConfig::default();
        let mut seen = HashSet::new();
        let (mut nx, mut ny) = (cfg.grid.nx, cfg.grid.ny);
        let mut period = cfg.grid.period;
        let mut data = "smooth_gaussian".to_string();
        let (mut amplitude, mut width) = (1.0, 2.0);
        let mut data_file: Option<PathBuf> = None;
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| Error::Config(format!("line {}: expected `key = value`", lineno + 1)))?;
            let (key, v) = (key.trim(), value.trim());
            if !seen.insert(key.to_string()) {
                return Err(Error::Config(format!("line {}: duplicate key {key:?}", lineno + 1)));
            }
            match key {
                "n" => {
                    nx = parse_num(key, v)?;
                    ny = nx;
                }
                "nx" => nx = parse_num(key, v)?,
                "ny" => ny = parse_num(key, v)?,
                "period" => period = parse_num(key, v)?,
                "mass" => cfg.mass = parse_num(key, v)?,
                "s" => cfg.regularity.s = parse_num(key, v)?,
                "r" => cfg.regularity.r = parse_num(key, v)?,
                "l" => cfg.regularity.l = parse_num(key, v)?,
                "eps_tilde" => cfg.regularity.eps_tilde = parse_num(key, v)?,
                "seed" => cfg.seed = parse_num(key, v)?,
                "data" => data = v.to_string(),
                "amplitude" => amplitude = parse_num(key, v)?,
                "width" => width = parse_num(key, v)?,
                "data_file" => data_file = Some(PathBuf::from(v)),
                "dt" => cfg.evolve.dt = parse_num(key, v)?,
                "t_end" => cfg.evolve.t_end = parse_num(key, v)?,
                "rhs" => cfg.evolve.rhs_form = v.parse::<RhsForm>().map_err(|e| Error::Config(format!("rhs: {e}")))?,
                "integrator" => cfg.evolve.integrator = v.parse().map_err(|e| Error::Config(format!("integrator: {e}")))?,
                "snapshot_stride" => cfg.evolve.snapshot_stride = parse_num(key, v)?,
                "diag_stride" => cfg.evolve.diag_stride = parse_num(key, v)?,
                "cfl" => cfg.evolve.cfl = parse_num(key, v)?,
                "out_dir" => cfg.out_dir = PathBuf::from(v),
                "override_admissibility" => cfg.override_admissibility = parse_bool(key, v)?,
                other => return Err(Error::Config(format!("line {}: unknown key {other:?}", lineno + 1))),
            }
        }
        cfg.grid = GridSpec::new(nx, ny, period, GridSpec::DEFAULT_DEALIAS)?;
        cfg.data = match data.as_str() {
            "rough_random" => DataSource::Generated(DataKind::RoughRandom),
            "smooth_gaussian" => DataSource::Generated(DataKind::SmoothGaussian { amplitude, width }),
            "file" => DataSource::File(
                data_file.ok_or_else(|| Error::Config("data = file requires data_file".into()))?,
            ),
            other => return Err(Error::Config(format!("unknown data kind {other:?}"))),
        };
        cfg.evolve.diag_regularity = cfg.regularity;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn from_file(path: impl AsRef<Path>) -> Result<Self> {
        let p = path.as_ref();
        let text = fs::read_to_string(p)
            .map_err(|e| Error::Config(format!("cannot read config {}: {e}", p.display())))?;
        Self::parse(&text)
    }

    pub fn validate(&self) -> Result<()> {
        self.grid.validate()?;
        let e = &self.evolve;
        if !(e.dt.is_finite() && e.dt != 0.0) || !(e.t_end.is_finite() && e.t_end >= 0.0) {
            return Err(Error::Config("dt must be nonzero and t_end nonnegative".into()));
        }
        if e.diag_stride == 0 || e.snapshot_stride == 0 {
            return Err(Error::Config("strides must be positive".into()));
        }
        if !(self.mass >= 0.0) {
            return Err(Error::Config(format!("mass = {} must be nonnegative", self.mass)));
        }
        let et = self.regularity.eps_tilde;
        if !(et > 0.0 && et < 0.25) {
            return Err(Error::Config(format!("eps_tilde = {et} must lie in (0, 1/4)")));
        }
        Ok(())
    }

    /// Builds the initial state; generated data is bit-identical for a fixed seed.
    pub fn initial_state(&self) -> Result<GaugeState> {
        match &self.data {
            DataSource::Generated(kind) => rough_data_generate(
                &self.regularity,
                self.grid,
                self.seed,
                *kind,
                self.override_admissibility,
            )?
            .to_state(self.mass, self.regularity.eps_tilde),
            DataSource::File(p) => snapshot_read_on(p, &self.grid),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::Integrator;

    #[test]
    fn parses_keys_and_comments() {
        let text = "# demo\n n = 32\nmass=0   # massless\ns = 0.9\ndata = rough_random\n\ndt = 2e-3\nrhs = nullform\nintegrator = strang\noverride_admissibility = yes\n";
        let c = RunConfig::parse(text).unwrap();
        assert_eq!((c.grid.nx, c.grid.ny), (32, 32));
        assert_eq!(c.mass, 0.0);
        assert_eq!(c.regularity.s, 0.9);
        assert_eq!(c.evolve.diag_regularity.s, 0.9);
        assert_eq!(c.data, DataSource::Generated(DataKind::RoughRandom));
        assert_eq!(c.evolve.dt, 2e-3);
        assert_eq!(c.evolve.rhs_form, RhsForm::Nullform);
        assert_eq!(c.evolve.integrator, Integrator::Strang);
        assert!(c.override_admissibility);
    }

    #[test]
    fn rejects_bad_input() {
        for bad in ["n = 7", "bogus = 1", "n = 16\nn = 32", "dt", "dt = x", "data = file", "eps_tilde = 0.3"] {
            assert!(matches!(RunConfig::parse(bad), Err(Error::Config(_))), "{bad}");
        }
    }

    #[test]
    fn seed_determinism() {
        let c = RunConfig::parse("n = 16\nseed = 9\n").unwrap();
        assert_eq!(c.initial_state().unwrap(), c.initial_state().unwrap());
    }

    #[test]
    fn missing_file_is_a_config_error() {
        assert!(matches!(RunConfig::from_file("/nonexistent/run.cfg"), Err(Error::Config(_))));
    }
}
