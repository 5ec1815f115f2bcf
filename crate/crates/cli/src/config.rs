//! Command-line arguments and the run configuration recorded in every output.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use lamiq::exactnum::Rational;
use lamiq::lattice::{ae9_family, LaminatedFamily, LatticeSpec};
use lamiq::symmetry::{ae9_group, GroupSpec};
use lamiq::{LamiqError, Result};

#[derive(Debug, Parser)]
#[command(name = "lamiq", version, about = "Exact Voronoi cells, second moments and optimal parameters of laminated lattices")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Relevant vectors grouped into symmetry orbits.
    RelevantVectors,
    /// Vertex classes with orbit sizes and facet incidences.
    Vertices,
    /// Face counts per dimension and congruence class.
    Faces,
    /// Full face and moment catalog.
    Catalog,
    /// Volume, second moment and G at one parameter value.
    G,
    /// Phase boundaries over an interval of a².
    Phases,
    /// Exact moment polynomials for every phase.
    Fit,
    /// Extremum polynomial, roots and the optimal parameter.
    Optimize,
    /// Monte Carlo estimate of G compared with the exact value.
    McCheck {
        /// Number of uniform samples.
        #[arg(long, env = "LAMIQ_SAMPLES", default_value_t = 1_000_000)]
        samples: usize,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Doc,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Builtin {
    Ae9,
}

#[derive(Debug, Args)]
pub struct Common {
    /// Built-in lattice family and its symmetry group.
    #[arg(long, global = true, env = "LAMIQ_GROUP", conflicts_with = "spec")]
    pub group: Option<Builtin>,
    /// Lattice spec file (JSON).
    #[arg(long, global = true, env = "LAMIQ_SPEC")]
    pub spec: Option<PathBuf>,
    /// Parameter a, as p/q.
    #[arg(long, global = true, env = "LAMIQ_A")]
    pub a: Option<Rational>,
    /// Interval of a², as p/q:r/s.
    #[arg(long, global = true, env = "LAMIQ_INTERVAL", value_parser = parse_interval)]
    pub interval: Option<(Rational, Rational)>,
    #[arg(long, global = true, env = "LAMIQ_SEED", default_value_t = 0)]
    pub seed: u64,
    /// Worker threads; results do not depend on this.
    #[arg(long, global = true, env = "LAMIQ_WORKERS", default_value_t = 1,
          value_parser = clap::builder::RangedU64ValueParser::<usize>::new().range(1..=1024))]
    pub workers: usize,
    /// Working precision in bits for irrational outputs.
    #[arg(long, global = true, env = "LAMIQ_PRECISION", default_value_t = lamiq::exactnum::DEFAULT_PRECISION)]
    pub precision: u32,
    /// Write output files into this directory instead of standard output.
    #[arg(long, global = true, env = "LAMIQ_OUT")]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, env = "LAMIQ_FORMAT", value_enum, default_value_t = Format::Doc)]
    pub format: Format,
    /// LP draws without a new vertex orbit before switching to adjacency closure.
    #[arg(long, global = true, env = "LAMIQ_SATURATION", default_value_t = 200)]
    pub saturation: usize,
    #[arg(long, global = true, env = "LAMIQ_ORBIT_CAP", default_value_t = lamiq::symmetry::DEFAULT_ORBIT_CAP)]
    pub orbit_cap: usize,
}

fn parse_interval(s: &str) -> std::result::Result<(Rational, Rational), String> {
    let (lo, hi) = s.split_once(':').ok_or("expected p/q:r/s")?;
    let lo: Rational = lo.trim().parse().map_err(|e: LamiqError| e.to_string())?;
    let hi: Rational = hi.trim().parse().map_err(|e: LamiqError| e.to_string())?;
    Ok((lo, hi))
}

/// The lattice family, its group and where they came from.
pub struct Source {
    pub family: LaminatedFamily,
    pub group: GroupSpec,
    pub spec: Option<LatticeSpec>,
    pub name: String,
}

impl Source {
    pub fn load(c: &Common) -> Result<Self> {
        match (&c.group, &c.spec) {
            (Some(Builtin::Ae9), _) => Ok(Source {
                family: ae9_family(),
                group: ae9_group(),
                spec: None,
                name: "ae9".into(),
            }),
            (None, Some(path)) => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| LamiqError::InvalidInput(format!("cannot read {}: {e}", path.display())))?;
                let spec = LatticeSpec::parse(&text)?;
                Ok(Source {
                    family: spec.family()?,
                    group: spec.group_spec()?,
                    name: path.display().to_string(),
                    spec: Some(spec),
                })
            }
            (None, None) => Err(LamiqError::InvalidInput("choose a lattice with --group ae9 or --spec FILE".into())),
        }
    }

    /// `--a`, else the spec's parameter.
    pub fn parameter(&self, c: &Common) -> Result<Rational> {
        c.a.clone()
            .or_else(|| self.spec.as_ref().and_then(|s| s.value().cloned()))
            .ok_or_else(|| LamiqError::InvalidInput("this command needs --a p/q".into()))
    }

    /// `--interval`, else the spec's interval, else the AE₉ default `[1/10, 3]`.
    pub fn interval(&self, c: &Common) -> Result<(Rational, Rational)> {
        if let Some(i) = &c.interval {
            return Ok(i.clone());
        }
        if let Some([lo, hi]) = self.spec.as_ref().and_then(|s| s.nu_interval()) {
            return Ok((lo, hi));
        }
        if self.spec.is_none() {
            return Ok((Rational::new(1, 10), Rational::from_int(3)));
        }
        Err(LamiqError::InvalidInput("this command needs --interval p/q:r/s".into()))
    }
}

/// Everything that determines the output, embedded in every document.
///
/// The worker count is deliberately absent: outputs are identical for any
/// number of workers.
#[derive(Debug, Serialize)]
pub struct RunConfig {
    pub artifact: &'static str,
    pub version: &'static str,
    pub command: String,
    pub lattice: String,
    pub spec: Option<LatticeSpec>,
    pub a: Option<Rational>,
    pub interval: Option<(Rational, Rational)>,
    pub seed: u64,
    pub precision: u32,
    pub saturation: usize,
    pub orbit_cap: usize,
    pub samples: Option<usize>,
    pub format: Format,
}
