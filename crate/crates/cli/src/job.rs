//! Job files: JSON or TOML, validated into a `JobSpec`.

use clap::ValueEnum;
use gqg_core::groupoid::Caps;
use gqg_core::lattice::{Bicharacter, CharacterU0, EtaHom, Weight};
use gqg_core::presets::{preset, PRESET_NAMES};
use gqg_core::scalars::{parse_scalar, Field, Scalar};
use serde::Deserialize;
use std::path::{Path, PathBuf};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum JobError {
    #[error("parse error in {source_name}: {message}")]
    Parse {
        source_name: String,
        message: String,
    },
    #[error("invalid field `{field}`: {message}")]
    Validation { field: String, message: String },
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
}

fn invalid(field: &str, message: impl Into<String>) -> JobError {
    JobError::Validation {
        field: field.into(),
        message: message.into(),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Command {
    Roots,
    Groupoid,
    PbwDims,
    Shapovalov,
    Singular,
    Radical,
    #[value(name = "center-rank1")]
    CenterRank1,
    HcSolve,
    CenterLift,
    VerifyAll,
}

impl Command {
    pub fn name(self) -> String {
        self.to_possible_value()
            .expect("no skipped variants")
            .get_name()
            .to_string()
    }
}

#[derive(Clone, Debug, Deserialize, PartialEq, Eq)]
#[serde(rename_all = "snake_case")]
pub enum FieldSpec {
    Cyclotomic(u32),
    #[serde(alias = "qt", alias = "t")]
    RationalFunction,
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawLambda {
    pub k: Vec<String>,
    pub l: Vec<String>,
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawWindow {
    #[serde(default)]
    pub seeds: Vec<(Vec<i32>, Vec<i32>)>,
    pub radius: Option<i32>,
    pub max_power: Option<u32>,
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawCaps {
    pub roots: Option<usize>,
    pub height: Option<u32>,
}

/// The job as written, before validation.
#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawJob {
    pub command: Option<String>,
    pub preset: Option<String>,
    pub field: Option<FieldSpec>,
    pub q: Option<Vec<Vec<String>>>,
    pub eta: Option<Vec<String>>,
    pub lambda: Option<RawLambda>,
    pub degree: Option<Vec<i32>>,
    pub max_height: Option<u32>,
    /// One-based index of β̇_m for `singular`.
    pub m: Option<usize>,
    pub t: Option<u64>,
    pub window: Option<RawWindow>,
    pub caps: Option<RawCaps>,
    pub seed: Option<u64>,
    pub out: Option<PathBuf>,
    pub cache: Option<PathBuf>,
}

/// Command-line values that override the job file.
#[derive(Clone, Debug, Default)]
pub struct Overrides {
    pub command: Option<Command>,
    pub preset: Option<String>,
    pub out: Option<PathBuf>,
    pub cache: Option<PathBuf>,
    pub cap_roots: Option<usize>,
    pub cap_height: Option<u32>,
    pub box_radius: Option<i32>,
}

#[derive(Clone, Debug)]
pub struct JobSpec {
    pub command: Command,
    pub preset: Option<String>,
    pub field: Field,
    pub chi: Bicharacter,
    pub eta: EtaHom,
    pub lambda: Option<CharacterU0>,
    pub degree: Option<Weight>,
    pub max_height: u32,
    pub m: Option<usize>,
    pub t: Option<u64>,
    pub seeds: Vec<(Weight, Weight)>,
    pub radius: i32,
    pub max_power: u32,
    pub caps: Caps,
    pub seed: u64,
    pub out: Option<PathBuf>,
    pub cache: Option<PathBuf>,
}

pub const DEFAULT_ROOT_CAP: usize = 1024;
pub const DEFAULT_HEIGHT_CAP: u32 = 12;
pub const DEFAULT_BOX: i32 = 4;

/// Reads a job from `path` ("-" is stdin); TOML when the extension says so, JSON otherwise.
pub fn read_job(path: &Path) -> Result<RawJob, JobError> {
    let (name, text) = if path == Path::new("-") {
        let mut s = String::new();
        std::io::Read::read_to_string(&mut std::io::stdin(), &mut s).map_err(|e| JobError::Io {
            path: "stdin".into(),
            message: e.to_string(),
        })?;
        ("stdin".to_string(), s)
    } else {
        let s = std::fs::read_to_string(path).map_err(|e| JobError::Io {
            path: path.display().to_string(),
            message: e.to_string(),
        })?;
        (path.display().to_string(), s)
    };
    let is_toml = path.extension().is_some_and(|e| e == "toml");
    parse_job(&text, is_toml, &name)
}

pub fn parse_job(text: &str, is_toml: bool, source_name: &str) -> Result<RawJob, JobError> {
    let parsed = if is_toml {
        toml::from_str(text).map_err(|e| e.to_string())
    } else {
        serde_json::from_str(text).map_err(|e| e.to_string())
    };
    parsed.map_err(|message| JobError::Parse {
        source_name: source_name.into(),
        message,
    })
}

fn scalar(field_name: &str, s: &str, field: Field) -> Result<Scalar, JobError> {
    parse_scalar(s, field).map_err(|e| invalid(field_name, e.to_string()))
}

fn mentions(s: &str, var: char) -> bool {
    s.chars().any(|c| c == var)
}

fn weight(field_name: &str, c: &[i32], rank: usize) -> Result<Weight, JobError> {
    if c.len() != rank {
        return Err(invalid(
            field_name,
            format!("expected {rank} coordinates, got {}", c.len()),
        ));
    }
    Ok(Weight::from_coords(c))
}

impl JobSpec {
    pub fn validate(raw: RawJob, o: &Overrides) -> Result<JobSpec, JobError> {
        let command = match (o.command, &raw.command) {
            (Some(c), _) => c,
            (None, Some(s)) => Command::from_str(s, false)
                .map_err(|_| invalid("command", format!("unknown command {s:?}")))?,
            (None, None) => return Err(invalid("command", "missing")),
        };
        let preset_name = o.preset.clone().or(raw.preset.clone());
        let (field, chi) = match (&preset_name, &raw.q) {
            (Some(_), Some(_)) => {
                return Err(invalid(
                    "preset",
                    "give either a preset or a q matrix, not both",
                ))
            }
            (Some(name), None) => {
                let chi = preset(name).ok_or_else(|| {
                    invalid(
                        "preset",
                        format!(
                            "unknown preset {name:?}; known: {}",
                            PRESET_NAMES.join(", ")
                        ),
                    )
                })?;
                (chi.field(), chi)
            }
            (None, None) => return Err(invalid("q", "missing q matrix")),
            (None, Some(q)) => {
                let field = match &raw.field {
                    Some(FieldSpec::Cyclotomic(n)) if *n >= 1 => Field::Cyclotomic(*n),
                    Some(FieldSpec::Cyclotomic(_)) => {
                        return Err(invalid("field", "cyclotomic order must be positive"))
                    }
                    Some(FieldSpec::RationalFunction) => Field::RationalFunction,
                    None => return Err(invalid("field", "missing")),
                };
                let all: Vec<&String> = q.iter().flatten().collect();
                if all.iter().any(|s| mentions(s, 'z')) && all.iter().any(|s| mentions(s, 't')) {
                    return Err(invalid("q", "mixes `z` and `t` literals"));
                }
                let n = q.len();
                if n == 0 || q.iter().any(|r| r.len() != n) {
                    return Err(invalid("q", "must be a nonempty square matrix"));
                }
                let mut rows = Vec::new();
                for (i, r) in q.iter().enumerate() {
                    let mut row = Vec::new();
                    for (j, s) in r.iter().enumerate() {
                        row.push(scalar(&format!("q[{i}][{j}]"), s, field)?);
                    }
                    rows.push(row);
                }
                let chi = Bicharacter::new(field, rows).map_err(|e| invalid("q", e.to_string()))?;
                (field, chi)
            }
        };
        let n = chi.rank();
        let eta = match &raw.eta {
            None => EtaHom::trivial(n),
            Some(v) if v.len() == n => EtaHom::new(
                v.iter()
                    .enumerate()
                    .map(|(i, s)| scalar(&format!("eta[{i}]"), s, field))
                    .collect::<Result<_, _>>()?,
            )
            .map_err(|e| invalid("eta", e.to_string()))?,
            Some(v) => {
                return Err(invalid(
                    "eta",
                    format!("expected {n} values, got {}", v.len()),
                ))
            }
        };
        let lambda = match &raw.lambda {
            None => None,
            Some(l) if l.k.len() == n && l.l.len() == n => {
                let k =
                    l.k.iter()
                        .enumerate()
                        .map(|(i, s)| scalar(&format!("lambda.k[{i}]"), s, field));
                let lv =
                    l.l.iter()
                        .enumerate()
                        .map(|(i, s)| scalar(&format!("lambda.l[{i}]"), s, field));
                Some(
                    CharacterU0::new(k.collect::<Result<_, _>>()?, lv.collect::<Result<_, _>>()?)
                        .map_err(|e| invalid("lambda", e.to_string()))?,
                )
            }
            Some(_) => {
                return Err(invalid(
                    "lambda",
                    format!("expected {n} K-values and {n} L-values"),
                ))
            }
        };
        let degree = match &raw.degree {
            None => None,
            Some(c) => {
                let w = weight("degree", c, n)?;
                if !w.is_nonneg() || w.is_zero() {
                    return Err(invalid("degree", "must be a nonzero nonnegative weight"));
                }
                Some(w)
            }
        };
        let window = raw.window.clone().unwrap_or_default();
        let radius = o.box_radius.or(window.radius).unwrap_or(DEFAULT_BOX);
        if radius < 0 {
            return Err(invalid("window.radius", "must be nonnegative"));
        }
        let seeds = if window.seeds.is_empty() {
            let z = Weight::zero(n);
            std::iter::once((z, z))
                .chain((0..n).map(|i| (z, Weight::simple(n, i))))
                .collect()
        } else {
            window
                .seeds
                .iter()
                .enumerate()
                .map(|(i, (l, m))| {
                    Ok((
                        weight(&format!("window.seeds[{i}]"), l, n)?,
                        weight(&format!("window.seeds[{i}]"), m, n)?,
                    ))
                })
                .collect::<Result<_, JobError>>()?
        };
        let caps_raw = raw.caps.clone().unwrap_or_default();
        let caps = Caps {
            roots: o.cap_roots.or(caps_raw.roots).unwrap_or(DEFAULT_ROOT_CAP),
            height: o
                .cap_height
                .or(caps_raw.height)
                .unwrap_or(DEFAULT_HEIGHT_CAP),
            ..Caps::default()
        };
        if caps.roots == 0 || caps.height == 0 {
            return Err(invalid("caps", "caps must be positive"));
        }
        if raw.m == Some(0) {
            return Err(invalid("m", "roots are numbered from 1"));
        }
        Ok(JobSpec {
            command,
            preset: preset_name,
            field,
            chi,
            eta,
            lambda,
            degree,
            max_height: raw.max_height.unwrap_or(4),
            m: raw.m,
            t: raw.t,
            seeds,
            radius,
            max_power: window.max_power.unwrap_or(3),
            caps,
            seed: raw.seed.unwrap_or(0),
            out: o.out.clone().or(raw.out),
            cache: o.cache.clone().or(raw.cache),
        })
    }

    /// q-matrix entries in canonical form.
    pub fn q_strings(&self) -> Vec<Vec<String>> {
        self.chi
            .matrix()
            .iter()
            .map(|r| r.iter().map(|s| s.to_string()).collect())
            .collect()
    }
}
