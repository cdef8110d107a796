//! Run configuration: a TOML or JSON file merged with command-line flags.

use std::path::{Path, PathBuf};

use serde::Deserialize;
use zmclab::ck::{InitialCurve, LightlikeSeed};
use zmclab::geometry::SampleBox;
use zmclab::series::{PowerSeries1, PowerSeries2};

use crate::Failure;

pub const DEFAULT_ORDER: usize = 12;
pub const DEFAULT_TOL: f64 = 1e-9;

/// Contents of a config file. Every field is optional; which ones a command
/// needs depends on the command.
#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub u: Option<Vec<f64>>,
    pub v: Option<Vec<f64>>,
    /// Terms `[j, k, c]` of `φ`.
    pub phi: Option<Vec<(usize, usize, f64)>>,
    pub order: Option<usize>,
    /// Name of a built-in example.
    pub gallery: Option<String>,
    /// `f(x, 0)` of a light-like germ, or the graph base of a ruled surface.
    pub psi: Option<Vec<f64>>,
    /// Named curve: "helicoid_null", "ellipse a=2".
    pub curve: Option<String>,
    /// Coefficients of the three components of a null curve.
    pub sigma: Option<[Vec<f64>; 3]>,
    pub branch: Option<String>,
    #[serde(rename = "box")]
    pub sample_box: Option<[f64; 4]>,
    pub grid: Option<[usize; 2]>,
    pub tol: Option<f64>,
}

impl FileConfig {
    pub fn load(path: &Path) -> Result<Self, Failure> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Failure::Config(format!("cannot read {}: {e}", path.display())))?;
        let is_json = path.extension().is_some_and(|e| e == "json") || text.trim_start().starts_with('{');
        if is_json {
            serde_json::from_str(&text).map_err(|e| Failure::Config(format!("{}: {e}", path.display())))
        } else {
            toml::from_str(&text).map_err(|e| Failure::Config(format!("{}: {e}", path.display())))
        }
    }

    pub fn initial_curve(&self) -> Result<Option<InitialCurve>, Failure> {
        match (&self.u, &self.v) {
            (None, None) => Ok(None),
            (Some(u), Some(v)) => InitialCurve::from_coeffs(u, v).map(Some).map_err(|e| Failure::Config(e.to_string())),
            _ => Err(Failure::Config("u and v must be given together".into())),
        }
    }

    pub fn phi(&self) -> PowerSeries2 {
        match &self.phi {
            None => PowerSeries2::zeros(0),
            Some(terms) => {
                let order = terms.iter().map(|&(j, k, _)| j + k).max().unwrap_or(0);
                PowerSeries2::from_terms(order, terms.iter().copied())
            }
        }
    }

    pub fn seed(&self) -> Result<Option<LightlikeSeed>, Failure> {
        let Some(psi) = &self.psi else { return Ok(None) };
        let n = psi.len().max(1) - 1;
        LightlikeSeed::new(PowerSeries1::from_coeffs(psi, n)).map(Some).map_err(|e| Failure::Config(e.to_string()))
    }
}

/// Flags shared by all subcommands.
#[derive(Clone, Debug, clap::Args)]
pub struct CommonArgs {
    /// TOML or JSON config file.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Series order N.
    #[arg(long)]
    pub order: Option<usize>,
    /// Sample box x0,x1,y0,y1.
    #[arg(long = "box", value_delimiter = ',', allow_hyphen_values = true)]
    pub sample_box: Option<Vec<f64>>,
    /// Grid size nx,ny.
    #[arg(long, value_delimiter = ',')]
    pub grid: Option<Vec<usize>>,
    #[arg(long)]
    pub tol: Option<f64>,
    /// Print the report as JSON on stdout.
    #[arg(long)]
    pub json: bool,
    /// Output directory.
    #[arg(long, default_value = "zmclab-out")]
    pub out: PathBuf,
}

/// Resolved settings; flags win over the config file.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub file: FileConfig,
    pub order: usize,
    pub sample_box: SampleBox,
    pub tol: f64,
    pub json: bool,
    pub out: PathBuf,
}

impl RunConfig {
    pub fn resolve(args: &CommonArgs) -> Result<Self, Failure> {
        let file = match &args.config {
            Some(p) => FileConfig::load(p)?,
            None => FileConfig::default(),
        };
        let order = args.order.or(file.order).unwrap_or(DEFAULT_ORDER);
        if order < 4 {
            return Err(Failure::Config(format!("order must be at least 4, got {order}")));
        }
        let tol = args.tol.or(file.tol).unwrap_or(DEFAULT_TOL);
        if !(tol > 0.0 && tol.is_finite()) {
            return Err(Failure::Config(format!("tolerance must be positive, got {tol}")));
        }
        let mut sample_box = SampleBox::default();
        let flag_box = match args.sample_box.as_deref() {
            None => None,
            Some(&[a, b, c, d]) => Some([a, b, c, d]),
            Some(v) => return Err(Failure::Config(format!("--box needs x0,x1,y0,y1, got {} values", v.len()))),
        };
        let flag_grid = match args.grid.as_deref() {
            None => None,
            Some(&[a, b]) => Some([a, b]),
            Some(v) => return Err(Failure::Config(format!("--grid needs nx,ny, got {} values", v.len()))),
        };
        if let Some(b) = flag_box.or(file.sample_box) {
            if !(b.iter().all(|v| v.is_finite()) && b[0] < b[1] && b[2] < b[3]) {
                return Err(Failure::Config(format!("invalid box {b:?}")));
            }
            (sample_box.x0, sample_box.x1, sample_box.y0, sample_box.y1) = (b[0], b[1], b[2], b[3]);
        }
        if let Some(g) = flag_grid.or(file.grid) {
            if g[0] < 2 || g[1] < 2 {
                return Err(Failure::Config(format!("grid needs at least 2 x 2 nodes, got {g:?}")));
            }
            (sample_box.nx, sample_box.ny) = (g[0], g[1]);
        }
        Ok(RunConfig { file, order, sample_box, tol, json: args.json, out: args.out.clone() })
    }

    /// Evenly spaced nodes of the box along x and y.
    pub fn axes(&self) -> (Vec<f64>, Vec<f64>) {
        let b = &self.sample_box;
        let lin = |a: f64, c: f64, n: usize| -> Vec<f64> {
            (0..n).map(|i| a + (c - a) * i as f64 / (n - 1) as f64).collect()
        };
        (lin(b.x0, b.x1, b.nx), lin(b.y0, b.y1, b.ny))
    }
}
