//! Flat key=value run configuration files.
//!
//! Lines are `key = value`, `#` starts a comment, blank lines are ignored.
//! Unknown keys are rejected with their line number. Every config
//! round-trips through [`canonical_2d`] / [`canonical_axi`], which is also
//! the text the manifest hashes.

use crate::axisym::{AxiRunConfig, RingSpec};
use crate::error::{Error, Result};
use crate::solver2d::{InitialData, RunConfig};
use crate::spectral::MollifierShape;
use crate::weights::{WeightForm, WeightSpec};
use std::collections::BTreeMap;

fn scan(text: &str) -> Result<Vec<(usize, String, String)>> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let Some((k, v)) = line.split_once('=') else {
            return Err(Error::ConfigLine { line: i + 1, msg: format!("expected key=value, got `{line}`") });
        };
        out.push((i + 1, k.trim().to_string(), v.trim().to_string()));
    }
    Ok(out)
}

struct Parser {
    entries: BTreeMap<String, (usize, String)>,
}

impl Parser {
    fn new(text: &str) -> Result<Self> {
        let mut entries = BTreeMap::new();
        for (line, k, v) in scan(text)? {
            if entries.insert(k.clone(), (line, v)).is_some() {
                return Err(Error::ConfigLine { line, msg: format!("duplicate key `{k}`") });
            }
        }
        Ok(Parser { entries })
    }

    fn take<T: std::str::FromStr>(&mut self, key: &str, default: T) -> Result<T>
    where
        T::Err: std::fmt::Display,
    {
        match self.entries.remove(key) {
            None => Ok(default),
            Some((line, v)) => v.parse::<T>().map_err(|e| Error::ConfigLine {
                line,
                msg: format!("key `{key}`: cannot parse `{v}`: {e}"),
            }),
        }
    }

    fn take_string(&mut self, key: &str) -> Option<(usize, String)> {
        self.entries.remove(key)
    }

    fn finish(self) -> Result<()> {
        if let Some((key, (line, _))) = self.entries.into_iter().next() {
            return Err(Error::ConfigLine { line, msg: format!("unknown key `{key}`") });
        }
        Ok(())
    }
}

fn parse_weight(
    p: &mut Parser,
    family_key: &str,
    gamma_key: &str,
    form_key: &str,
    default: WeightSpec,
    dim: usize,
) -> Result<WeightSpec> {
    let family = p.take_string(family_key);
    let gamma: f64 = p.take(gamma_key, default.gamma)?;
    let form = match p.take_string(form_key) {
        None => default.form,
        Some((line, v)) => match v.as_str() {
            "abs" => WeightForm::OnePlusAbs,
            "sq" => WeightForm::OnePlusSqHalf,
            other => {
                return Err(Error::ConfigLine { line, msg: format!("key `{form_key}`: unknown form `{other}` (abs|sq)") })
            }
        },
    };
    let spec = match family {
        None => WeightSpec { gamma, form, ..default },
        Some((line, v)) => match v.as_str() {
            "constant" => WeightSpec::constant(dim),
            "radial" => WeightSpec::radial(gamma, dim, form),
            "cylindrical" => WeightSpec::cylindrical(gamma, form),
            "pair_member" => WeightSpec::pair_member(gamma, form),
            other => {
                return Err(Error::ConfigLine { line, msg: format!("key `{family_key}`: unknown family `{other}`") })
            }
        }
        .map_err(|e| Error::ConfigLine { line, msg: e.to_string() })?,
    };
    Ok(spec)
}

/// Parse a 2D run config; unspecified keys take the documented defaults.
pub fn parse_config(text: &str) -> Result<RunConfig> {
    let defaults = RunConfig::default();
    let mut p = Parser::new(text)?;
    let n = p.take("n", defaults.n)?;
    let length = p.take("length", defaults.length)?;
    let dt = p.take("dt", defaults.dt)?;
    let t_end = p.take("t_end", defaults.t_end)?;
    let epsilon = p.take("epsilon", defaults.epsilon)?;
    let cadence = p.take("cadence", defaults.cadence)?;
    let seed = p.take("seed", defaults.seed)?;
    let mollifier = match p.take_string("mollifier") {
        None => defaults.mollifier,
        Some((line, v)) => match v.as_str() {
            "compact" => MollifierShape::CompactBump,
            "gaussian" => MollifierShape::GaussianSurrogate,
            other => {
                return Err(Error::ConfigLine { line, msg: format!("key `mollifier`: unknown shape `{other}` (compact|gaussian)") })
            }
        },
    };
    let weight = parse_weight(&mut p, "weight_family", "weight_gamma", "weight_form", defaults.weight, 2)?;
    let init = match p.take_string("init") {
        None => defaults.init.clone(),
        Some((line, v)) => match v.as_str() {
            "taylor_green" => InitialData::TaylorGreen,
            "random" => InitialData::RandomDivFree {
                l2_norm: p.take("init_l2_norm", 1.0)?,
                spectrum_exponent: p.take("init_spectrum_exponent", 2.0)?,
                k_max: p.take("init_k_max", 8)?,
            },
            other => {
                if let Some(path) = other.strip_prefix("file:") {
                    InitialData::File(path.into())
                } else {
                    return Err(Error::ConfigLine { line, msg: format!("key `init`: unknown kind `{other}`") });
                }
            }
        },
    };
    let cutoff_radius = match p.take_string("cutoff_radius") {
        None => None,
        Some((line, v)) => Some(v.parse::<f64>().map_err(|e| Error::ConfigLine {
            line,
            msg: format!("key `cutoff_radius`: {e}"),
        })?),
    };
    p.finish()?;
    let config = RunConfig { n, length, dt, t_end, epsilon, mollifier, weight, init, cadence, seed, cutoff_radius };
    config.validate()?;
    Ok(config)
}

/// Canonical text whose hash identifies a 2D run.
pub fn canonical_2d(c: &RunConfig) -> String {
    let mut s = String::new();
    s.push_str(&format!("n = {}\n", c.n));
    s.push_str(&format!("length = {:e}\n", c.length));
    s.push_str(&format!("dt = {:e}\n", c.dt));
    s.push_str(&format!("t_end = {:e}\n", c.t_end));
    s.push_str(&format!("epsilon = {:e}\n", c.epsilon));
    s.push_str(&format!(
        "mollifier = {}\n",
        match c.mollifier {
            MollifierShape::CompactBump => "compact",
            MollifierShape::GaussianSurrogate => "gaussian",
        }
    ));
    s.push_str(&weight_lines(&c.weight, "weight"));
    match &c.init {
        InitialData::TaylorGreen => s.push_str("init = taylor_green\n"),
        InitialData::RandomDivFree { l2_norm, spectrum_exponent, k_max } => {
            s.push_str("init = random\n");
            s.push_str(&format!("init_l2_norm = {l2_norm:e}\n"));
            s.push_str(&format!("init_spectrum_exponent = {spectrum_exponent:e}\n"));
            s.push_str(&format!("init_k_max = {k_max}\n"));
        }
        InitialData::File(p) => s.push_str(&format!("init = file:{}\n", p.display())),
    }
    if let Some(r) = c.cutoff_radius {
        s.push_str(&format!("cutoff_radius = {r:e}\n"));
    }
    s.push_str(&format!("cadence = {}\n", c.cadence));
    s.push_str(&format!("seed = {}\n", c.seed));
    s
}

fn weight_lines(w: &WeightSpec, prefix: &str) -> String {
    use crate::weights::WeightFamily::*;
    let family = match w.family {
        Constant => "constant",
        RadialPower => "radial",
        CylindricalPower => "cylindrical",
        ProductPairMember => "pair_member",
    };
    let form = match w.form {
        WeightForm::OnePlusAbs => "abs",
        WeightForm::OnePlusSqHalf => "sq",
    };
    format!("{prefix}_family = {family}\n{prefix}_gamma = {:e}\n{prefix}_form = {form}\n", w.gamma)
}

/// Parse an axisymmetric run config.
pub fn parse_axi_config(text: &str) -> Result<AxiRunConfig> {
    let defaults = AxiRunConfig::default();
    let mut p = Parser::new(text)?;
    let config = AxiRunConfig {
        n_r: p.take("n_r", defaults.n_r)?,
        n_z: p.take("n_z", defaults.n_z)?,
        r_extent: p.take("r_extent", defaults.r_extent)?,
        z_extent: p.take("z_extent", defaults.z_extent)?,
        dt: p.take("dt", defaults.dt)?,
        t_end: p.take("t_end", defaults.t_end)?,
        cadence: p.take("cadence", defaults.cadence)?,
        ring: RingSpec {
            r0: p.take("ring_r0", defaults.ring.r0)?,
            z0: p.take("ring_z0", defaults.ring.z0)?,
            radius: p.take("ring_radius", defaults.ring.radius)?,
            amplitude: p.take("ring_amplitude", defaults.ring.amplitude)?,
        },
        phi: parse_weight(&mut p, "phi_family", "phi_gamma", "phi_form", defaults.phi, 3)?,
        psi: parse_weight(&mut p, "psi_family", "psi_gamma", "psi_form", defaults.psi, 3)?,
    };
    p.finish()?;
    config.validate()?;
    Ok(config)
}

/// Canonical text whose hash identifies an axisymmetric run.
pub fn canonical_axi(c: &AxiRunConfig) -> String {
    let mut s = String::new();
    s.push_str(&format!("n_r = {}\n", c.n_r));
    s.push_str(&format!("n_z = {}\n", c.n_z));
    s.push_str(&format!("r_extent = {:e}\n", c.r_extent));
    s.push_str(&format!("z_extent = {:e}\n", c.z_extent));
    s.push_str(&format!("dt = {:e}\n", c.dt));
    s.push_str(&format!("t_end = {:e}\n", c.t_end));
    s.push_str(&format!("cadence = {}\n", c.cadence));
    s.push_str(&format!("ring_r0 = {:e}\n", c.ring.r0));
    s.push_str(&format!("ring_z0 = {:e}\n", c.ring.z0));
    s.push_str(&format!("ring_radius = {:e}\n", c.ring.radius));
    s.push_str(&format!("ring_amplitude = {:e}\n", c.ring.amplitude));
    s.push_str(&weight_lines(&c.phi, "phi"));
    s.push_str(&weight_lines(&c.psi, "psi"));
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_text_gives_defaults() {
        let c = parse_config("").unwrap();
        assert_eq!(c, RunConfig::default());
    }

    #[test]
    fn overrides_apply() {
        let c = parse_config("dt = 1e-3\nn = 128\n# comment\nseed = 7").unwrap();
        assert_eq!(c.n, 128);
        assert_eq!(c.seed, 7);
        assert_eq!(c.dt, 1e-3);
    }

    #[test]
    fn type_errors_cite_the_line() {
        let err = parse_config("dt = frog").unwrap_err();
        match err {
            Error::ConfigLine { line, msg } => {
                assert_eq!(line, 1);
                assert!(msg.contains("dt"));
            }
            other => panic!("wrong error {other}"),
        }
    }

    #[test]
    fn unknown_keys_are_rejected() {
        let err = parse_config("dx = 3").unwrap_err();
        assert!(matches!(err, Error::ConfigLine { line: 1, .. }));
    }

    #[test]
    fn canonical_round_trip_2d() {
        let c = parse_config("n = 128\nweight_gamma = 1.5\ninit = random\ninit_k_max = 6\nepsilon = 0.2").unwrap();
        let text = canonical_2d(&c);
        let c2 = parse_config(&text).unwrap();
        assert_eq!(c, c2);
        assert_eq!(text, canonical_2d(&c2));
    }

    #[test]
    fn canonical_round_trip_axi() {
        let c = parse_axi_config("n_r = 96\nring_amplitude = 0.5\npsi_gamma = 0.75").unwrap();
        let text = canonical_axi(&c);
        let c2 = parse_axi_config(&text).unwrap();
        assert_eq!(c, c2);
    }

    #[test]
    fn duplicate_keys_are_rejected() {
        assert!(parse_config("n = 64\nn = 32").is_err());
    }
}
