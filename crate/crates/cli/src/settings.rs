//! Numerical settings: built-in defaults, then `BESSELHEAT_SEED`, then a
//! `key = value` file, then command-line flags.

use std::path::Path;

use bessel_heat::quadrature::QuadratureSpec;
use clap::Args;

use crate::CliError;

pub const SEED_VAR: &str = "BESSELHEAT_SEED";

#[derive(Debug, Clone, PartialEq)]
pub struct Settings {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_depth: usize,
    pub u_floor: f64,
    pub order: usize,
    pub seed: u64,
    pub paths: u64,
    pub step: f64,
    pub grid_points: usize,
}

impl Default for Settings {
    fn default() -> Self {
        Self {
            rel_tol: 1e-10,
            abs_tol: 1e-300,
            max_depth: 60,
            u_floor: 10.0,
            order: 2,
            seed: 1,
            paths: 100_000,
            step: 1e-3,
            grid_points: 256,
        }
    }
}

/// Overrides accepted by every subcommand.
#[derive(Debug, Clone, Default, Args)]
pub struct Overrides {
    /// key = value file with defaults for the options below
    #[arg(long, global = true)]
    pub config: Option<std::path::PathBuf>,
    #[arg(long, global = true)]
    pub rel_tol: Option<f64>,
    #[arg(long, global = true)]
    pub abs_tol: Option<f64>,
    #[arg(long, global = true)]
    pub max_depth: Option<usize>,
    /// smallest xy/t at which expansions are used
    #[arg(long, global = true)]
    pub u_floor: Option<f64>,
    /// number of terms in the interior expansion
    #[arg(long, global = true)]
    pub order: Option<usize>,
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Monte Carlo paths
    #[arg(long, global = true)]
    pub paths: Option<u64>,
    /// Monte Carlo monitoring step
    #[arg(long, global = true)]
    pub step: Option<f64>,
    /// time points of the bridge estimator
    #[arg(long, global = true)]
    pub grid_points: Option<usize>,
}

fn parse<T: std::str::FromStr>(key: &str, value: &str) -> Result<T, CliError> {
    value
        .parse()
        .map_err(|_| CliError::Spec(format!("bad value for {key}: {value:?}")))
}

impl Settings {
    pub fn resolve(o: &Overrides) -> Result<Self, CliError> {
        let mut s = Settings::default();
        if let Ok(v) = std::env::var(SEED_VAR) {
            s.seed = parse(SEED_VAR, v.trim())?;
        }
        if let Some(path) = &o.config {
            s.apply_file(path)?;
        }
        macro_rules! take {
            ($($f:ident),*) => { $(if let Some(v) = o.$f { s.$f = v; })* };
        }
        take!(rel_tol, abs_tol, max_depth, u_floor, order, seed, paths, step, grid_points);
        s.check()?;
        Ok(s)
    }

    fn apply_file(&mut self, path: &Path) -> Result<(), CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Spec(format!("cannot read {}: {e}", path.display())))?;
        for (n, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| CliError::Spec(format!("{}:{}: expected key = value", path.display(), n + 1)))?;
            let (key, value) = (key.trim(), value.trim());
            match key {
                "rel_tol" => self.rel_tol = parse(key, value)?,
                "abs_tol" => self.abs_tol = parse(key, value)?,
                "max_depth" => self.max_depth = parse(key, value)?,
                "u_floor" => self.u_floor = parse(key, value)?,
                "order" => self.order = parse(key, value)?,
                "seed" => self.seed = parse(key, value)?,
                "paths" => self.paths = parse(key, value)?,
                "step" => self.step = parse(key, value)?,
                "grid_points" => self.grid_points = parse(key, value)?,
                _ => return Err(CliError::Spec(format!("{}:{}: unknown key {key:?}", path.display(), n + 1))),
            }
        }
        Ok(())
    }

    fn check(&self) -> Result<(), CliError> {
        self.quadrature()?;
        if self.order < 1 || self.paths < 1 || !(self.step > 0.0) || self.grid_points < 2 || !(self.u_floor >= 0.0) {
            return Err(CliError::Spec(
                "need order >= 1, paths >= 1, step > 0, grid_points >= 2, u_floor >= 0".into(),
            ));
        }
        Ok(())
    }

    pub fn quadrature(&self) -> Result<QuadratureSpec, CliError> {
        QuadratureSpec::new(self.rel_tol, self.abs_tol, self.max_depth).map_err(|e| CliError::Spec(e.to_string()))
    }
}
