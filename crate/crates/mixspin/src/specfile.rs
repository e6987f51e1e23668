//! Flat key-value sweep description.
//!
//! ```text
//! file  := line*
//! line  := ws* (comment | entry)? ws* "\n"
//! comment := "#" any*
//! entry := key ws* "=" ws* value (ws* comment)?
//! ```
//!
//! Keys:
//!
//! | key | value |
//! |-----|-------|
//! | `x`, `y` | axis parameter, one of `J`, `B`, `T` |
//! | `x_min`, `x_max`, `y_min`, `y_max` | real numbers |
//! | `x_steps`, `y_steps` | integers ≥ 2 |
//! | `J`, `B`, `T` | value of the parameter not on an axis |
//! | `quantities` | comma-separated subset of `negativity`, `mid`, `mutual_information`, `classical_correlation`, `Z` |
//! | `t0_row`, `raw`, `allow_negative_field` | `true` / `false` |
//!
//! Layers are merged with later layers winning (preset, then file, then
//! command-line overrides). When a layer names a parameter as an axis, fixed
//! values for that parameter from earlier layers are dropped.

use std::collections::BTreeMap;
use std::path::Path;

use mixspin_core::sweep::{Param, Quantity, SweepAxis, SweepSpec};

#[derive(Debug, thiserror::Error)]
pub enum SpecFileError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("unknown key `{0}`")]
    UnknownKey(String),
    #[error("missing key `{0}`")]
    MissingKey(&'static str),
    #[error("key `{key}`: cannot parse `{value}` as {expected}")]
    BadValue {
        key: String,
        value: String,
        expected: &'static str,
    },
    #[error("unknown preset `{0}` (expected fig1, fig2 or fig3)")]
    UnknownPreset(String),
    #[error("`{0}` is an axis and cannot also be fixed")]
    FixedAxis(&'static str),
    #[error("reading {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
}

const KEYS: &[&str] = &[
    "x",
    "x_min",
    "x_max",
    "x_steps",
    "y",
    "y_min",
    "y_max",
    "y_steps",
    "J",
    "B",
    "T",
    "quantities",
    "t0_row",
    "raw",
    "allow_negative_field",
];

pub const PRESETS: &[(&str, &str)] = &[
    ("fig1", include_str!("../specs/fig1.spec")),
    ("fig2", include_str!("../specs/fig2.spec")),
    ("fig3", include_str!("../specs/fig3.spec")),
];

/// Key-value assignments, possibly partial.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct SpecLayer {
    entries: BTreeMap<String, String>,
}

impl SpecLayer {
    pub fn parse(text: &str) -> Result<Self, SpecFileError> {
        let mut layer = SpecLayer::default();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let (key, value) = content
                .split_once('=')
                .ok_or_else(|| SpecFileError::Syntax {
                    line,
                    message: format!("expected `key = value`, found `{content}`"),
                })?;
            let (key, value) = (key.trim(), value.trim());
            if key.is_empty() {
                return Err(SpecFileError::Syntax {
                    line,
                    message: "empty key".into(),
                });
            }
            if layer.entries.contains_key(key) {
                return Err(SpecFileError::Syntax {
                    line,
                    message: format!("duplicate key `{key}`"),
                });
            }
            layer.set(key, value)?;
        }
        Ok(layer)
    }

    pub fn read(path: &Path) -> Result<Self, SpecFileError> {
        let text = std::fs::read_to_string(path).map_err(|source| SpecFileError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::parse(&text)
    }

    pub fn preset(name: &str) -> Result<Self, SpecFileError> {
        let (_, text) = PRESETS
            .iter()
            .find(|(n, _)| *n == name)
            .ok_or_else(|| SpecFileError::UnknownPreset(name.to_string()))?;
        Self::parse(text)
    }

    /// Sets one key, rejecting names outside the grammar.
    pub fn set(&mut self, key: &str, value: &str) -> Result<(), SpecFileError> {
        let key = canonical_key(key).ok_or_else(|| SpecFileError::UnknownKey(key.to_string()))?;
        self.entries.insert(key.to_string(), value.to_string());
        Ok(())
    }

    /// Parses a `key=value` override.
    pub fn set_assignment(&mut self, assignment: &str) -> Result<(), SpecFileError> {
        let (k, v) = assignment
            .split_once('=')
            .ok_or_else(|| SpecFileError::Syntax {
                line: 0,
                message: format!("override `{assignment}` is not `key=value`"),
            })?;
        self.set(k.trim(), v.trim())
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.entries.get(key).map(String::as_str)
    }

    /// Applies `upper` on top of `self`.
    pub fn overlay(&mut self, upper: &SpecLayer) {
        for axis_key in ["x", "y"] {
            if let Some(p) = upper.get(axis_key).and_then(Param::parse) {
                self.entries.remove(p.name());
            }
        }
        for (k, v) in &upper.entries {
            self.entries.insert(k.clone(), v.clone());
        }
    }

    pub fn to_spec(&self) -> Result<SweepSpec, SpecFileError> {
        let x = self.axis("x")?;
        let y = self.axis("y")?;
        for axis in [&x, &y] {
            if self.get(axis.param.name()).is_some() {
                return Err(SpecFileError::FixedAxis(axis.param.name()));
            }
        }
        let fixed = Param::ALL
            .into_iter()
            .find(|p| *p != x.param && *p != y.param)
            // x == y: reported by SweepSpec::validate; any placeholder works.
            .unwrap_or(Param::T);
        let fixed_value = if x.param == y.param {
            self.get(fixed.name())
                .map(|v| parse_f64(fixed.name(), v))
                .transpose()?
                .unwrap_or(1.0)
        } else {
            parse_f64(fixed.name(), self.require(fixed.name())?)?
        };
        let quantities = self
            .require("quantities")?
            .split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(|s| {
                Quantity::parse(s).ok_or_else(|| SpecFileError::BadValue {
                    key: "quantities".into(),
                    value: s.into(),
                    expected: "a quantity name",
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(SweepSpec {
            x,
            y,
            fixed,
            fixed_value,
            quantities,
            t0_row: self.flag("t0_row")?,
            raw: self.flag("raw")?,
            allow_negative_field: self.flag("allow_negative_field")?,
        })
    }

    fn require(&self, key: &'static str) -> Result<&str, SpecFileError> {
        self.get(key).ok_or(SpecFileError::MissingKey(key))
    }

    fn axis(&self, prefix: &'static str) -> Result<SweepAxis, SpecFileError> {
        let (name_key, min_key, max_key, steps_key) = match prefix {
            "x" => ("x", "x_min", "x_max", "x_steps"),
            _ => ("y", "y_min", "y_max", "y_steps"),
        };
        let name = self.require(name_key)?;
        let param = Param::parse(name).ok_or_else(|| SpecFileError::BadValue {
            key: name_key.into(),
            value: name.into(),
            expected: "one of J, B, T",
        })?;
        let steps_raw = self.require(steps_key)?;
        let steps = steps_raw
            .parse::<usize>()
            .map_err(|_| SpecFileError::BadValue {
                key: steps_key.into(),
                value: steps_raw.into(),
                expected: "a non-negative integer",
            })?;
        Ok(SweepAxis::new(
            param,
            parse_f64(min_key, self.require(min_key)?)?,
            parse_f64(max_key, self.require(max_key)?)?,
            steps,
        ))
    }

    fn flag(&self, key: &'static str) -> Result<bool, SpecFileError> {
        match self.get(key) {
            None => Ok(false),
            Some("true") => Ok(true),
            Some("false") => Ok(false),
            Some(other) => Err(SpecFileError::BadValue {
                key: key.into(),
                value: other.into(),
                expected: "true or false",
            }),
        }
    }
}

fn canonical_key(key: &str) -> Option<&'static str> {
    match key {
        "j" => Some("J"),
        "b" => Some("B"),
        "t" => Some("T"),
        _ => KEYS.iter().copied().find(|k| *k == key),
    }
}

fn parse_f64(key: &str, value: &str) -> Result<f64, SpecFileError> {
    value
        .parse::<f64>()
        .ok()
        .filter(|v| v.is_finite())
        .ok_or_else(|| SpecFileError::BadValue {
            key: key.into(),
            value: value.into(),
            expected: "a finite number",
        })
}
