//! Run configuration: built-in defaults, then an optional config file, then
//! command-line flags.
//!
//! The file is flat `key = value` lines plus one `[lattice]` block:
//!
//! ```text
//! cutoff = 3
//! scale = 240
//! format = text
//!
//! [lattice]
//! gram = [[4,-2],[-2,4]]
//! coset M0 = 0, 0
//! coset M1 = 1/3, 2/3
//! coset M2 = 2/3, 1/3
//! ```
//!
//! `#` starts a comment.

use std::path::Path;

use num_traits::{Signed, Zero};
use triality_core::characters::TRIPLE_SCALE;
use triality_core::linalg::Matrix;
use triality_core::scalar::parse_scalar;
use triality_core::vertex::{sqrt2_a2_cosets, Coset, CosetVector, Lattice};
use triality_core::Scalar;

use crate::error::{usage, CliError, CliResult};

/// Environment variable naming the default config file.
pub const CONFIG_ENV: &str = "TRIALITY_CONFIG";

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeConfig {
    pub lattice: Lattice,
    pub cosets: Vec<Coset>,
}

impl LatticeConfig {
    pub fn standard() -> Self {
        LatticeConfig { lattice: Lattice::sqrt2_a2(), cosets: sqrt2_a2_cosets().to_vec() }
    }

    /// Whether this is the `sqrt(2) A_2` lattice with its three standard
    /// cosets, which the conformal and evidence computations assume.
    pub fn is_standard(&self) -> bool {
        *self == Self::standard()
    }

    pub fn coset(&self, name: &str) -> CliResult<&Coset> {
        self.cosets.iter().find(|c| c.name == name).ok_or_else(|| {
            let names: Vec<&str> = self.cosets.iter().map(|c| c.name.as_str()).collect();
            usage(format!("unknown coset `{name}` (known: {})", names.join(", ")))
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunConfig {
    pub cutoff: Scalar,
    pub scale: u64,
    pub format: Format,
    pub lattice: LatticeConfig,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            cutoff: triality_core::pipeline::default_cutoff(),
            scale: TRIPLE_SCALE,
            format: Format::Text,
            lattice: LatticeConfig::standard(),
        }
    }
}

/// Flag values that override the file.
#[derive(Clone, Debug, Default)]
pub struct Overrides {
    pub cutoff: Option<String>,
    pub scale: Option<u64>,
    pub format: Option<Format>,
}

impl RunConfig {
    pub fn load(path: Option<&Path>, overrides: &Overrides) -> CliResult<Self> {
        let mut cfg = match path {
            Some(p) => {
                let text = std::fs::read_to_string(p)
                    .map_err(|source| CliError::Io { path: p.display().to_string(), source })?;
                RunConfig::parse(&text)?
            }
            None => RunConfig::default(),
        };
        if let Some(c) = &overrides.cutoff {
            cfg.cutoff = parse_scalar(c)?;
        }
        if let Some(s) = overrides.scale {
            cfg.scale = s;
        }
        if let Some(f) = overrides.format {
            cfg.format = f;
        }
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn parse(text: &str) -> CliResult<Self> {
        let mut cfg = RunConfig::default();
        let mut in_lattice = false;
        let mut gram: Option<Matrix> = None;
        let mut cosets: Vec<Coset> = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let at = |msg: String| usage(format!("config line {}: {msg}", lineno + 1));
            if line.starts_with('[') {
                if line != "[lattice]" || in_lattice {
                    return Err(at(format!("unexpected section `{line}`")));
                }
                in_lattice = true;
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| at("expected `key = value`".into()))?;
            let (key, value) = (key.trim(), value.trim());
            match (in_lattice, key) {
                (false, "cutoff") => cfg.cutoff = parse_scalar(value).map_err(|e| at(e.to_string()))?,
                (false, "scale") => cfg.scale = value.parse().map_err(|_| at(format!("bad scale `{value}`")))?,
                (false, "format") => {
                    cfg.format = match value {
                        "text" => Format::Text,
                        "json" => Format::Json,
                        _ => return Err(at(format!("unknown format `{value}`"))),
                    }
                }
                (true, "gram") => gram = Some(parse_matrix(value).map_err(at)?),
                (true, k) if k.starts_with("coset ") => {
                    let name = k["coset ".len()..].trim();
                    let coords = value
                        .split(',')
                        .map(|c| parse_scalar(c).map_err(|e| at(e.to_string())))
                        .collect::<CliResult<Vec<_>>>()?;
                    cosets.push(Coset::new(name, CosetVector(coords)));
                }
                _ => return Err(at(format!("unknown key `{key}`"))),
            }
        }
        if in_lattice {
            let gram = gram.ok_or_else(|| usage("lattice block without a gram matrix"))?;
            let lattice = Lattice::new(gram)?;
            if cosets.is_empty() {
                cosets.push(Coset::new("M0", CosetVector::zero(lattice.rank())));
            }
            cfg.lattice = LatticeConfig { lattice, cosets };
        }
        Ok(cfg)
    }

    fn validate(&self) -> CliResult<()> {
        if !self.cutoff.is_positive() {
            return Err(usage(format!("cutoff must be positive, got {}", self.cutoff)));
        }
        if self.scale == 0 {
            return Err(usage("scale must be positive"));
        }
        let lat = &self.lattice.lattice;
        for c in &self.lattice.cosets {
            if c.rep.rank() != lat.rank() {
                return Err(usage(format!(
                    "coset {} has {} coordinates, lattice rank is {}",
                    c.name,
                    c.rep.rank(),
                    lat.rank()
                )));
            }
            if self.lattice.cosets.iter().filter(|d| d.name == c.name).count() > 1 {
                return Err(usage(format!("coset {} is listed twice", c.name)));
            }
            let weight = lat.norm(&c.rep) / Scalar::from_integer(2.into());
            let d: u64 = weight.denom().try_into().map_err(|_| usage("coset weight denominator too large"))?;
            if !self.scale.is_multiple_of(d) {
                return Err(usage(format!(
                    "scale {} is not a multiple of the denominator of the weight {weight} of coset {}",
                    self.scale, c.name
                )));
            }
        }
        Ok(())
    }
}

/// `[[a,b],[c,d]]` with rational entries.
fn parse_matrix(text: &str) -> Result<Matrix, String> {
    let inner = text
        .trim()
        .strip_prefix('[')
        .and_then(|t| t.strip_suffix(']'))
        .ok_or_else(|| format!("bad matrix `{text}`"))?;
    let mut rows = Vec::new();
    for row in inner.split(']') {
        let row = row.trim().trim_start_matches(',').trim();
        if row.is_empty() {
            continue;
        }
        let row = row.strip_prefix('[').ok_or_else(|| format!("bad matrix row `{row}`"))?;
        let entries =
            row.split(',').map(|e| parse_scalar(e).map_err(|e| e.to_string())).collect::<Result<Vec<Scalar>, _>>()?;
        rows.push(entries);
    }
    let n = rows.len();
    if n == 0 || rows.iter().any(|r| r.len() != n) {
        return Err(format!("gram matrix `{text}` is not square"));
    }
    if rows.iter().flatten().all(Zero::is_zero) {
        return Err("gram matrix is zero".into());
    }
    Ok(Matrix::from_rows(rows))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_file_round_trips_to_default() {
        let text = "cutoff = 3\nscale = 240\n\n[lattice]\ngram = [[4,-2],[-2,4]]\n\
                    coset M0 = 0,0\ncoset M1 = 1/3, 2/3\ncoset M2 = 2/3,1/3 # comment\n";
        assert_eq!(RunConfig::parse(text).unwrap(), RunConfig::default());
    }

    #[test]
    fn flags_override_the_file() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("run.cfg");
        std::fs::write(&p, "cutoff = 2\nformat = json\n").unwrap();
        let o = Overrides { cutoff: Some("5/3".into()), ..Default::default() };
        let cfg = RunConfig::load(Some(&p), &o).unwrap();
        assert_eq!(cfg.cutoff, parse_scalar("5/3").unwrap());
        assert_eq!(cfg.format, Format::Json);
    }

    #[test]
    fn bad_values_are_usage_errors() {
        for text in ["cutoff = -1", "scale = 7", "colour = red", "[lattice]\ngram = [[1,2],[2,1]]"] {
            let err = RunConfig::parse(text).and_then(|c| c.validate().map(|_| c)).unwrap_err();
            assert_eq!(err.exit_code(), 2, "{text}: {err}");
        }
    }
}
