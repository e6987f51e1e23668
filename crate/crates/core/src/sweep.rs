//! Two-dimensional parameter grids and critical-temperature search.
//!
//! Grid points are independent; [`SweepSpec::points`] fixes their order
//! (y-major, then x ascending) and [`assemble`] turns per-point reports back
//! into a table in that order, so any evaluation strategy, serial or
//! parallel, yields the same [`SweepResult`].

use alloc::vec::Vec;
use core::fmt;

use crate::linalg::CLAMP_TOLERANCE;
use crate::measures::{self, CorrelationReport, NEGATIVITY_THRESHOLD};
use crate::model::{thermal_state, ModelParams, ThermalMode};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Param {
    J,
    B,
    T,
}

impl Param {
    pub const ALL: [Param; 3] = [Param::J, Param::B, Param::T];

    pub fn name(self) -> &'static str {
        match self {
            Param::J => "J",
            Param::B => "B",
            Param::T => "T",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "J" | "j" => Some(Param::J),
            "B" | "b" => Some(Param::B),
            "T" | "t" => Some(Param::T),
            _ => None,
        }
    }
}

impl fmt::Display for Param {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Columns a sweep can emit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Quantity {
    Negativity,
    Mid,
    MutualInformation,
    ClassicalCorrelation,
    Z,
}

impl Quantity {
    pub const ALL: [Quantity; 5] = [
        Quantity::Negativity,
        Quantity::Mid,
        Quantity::MutualInformation,
        Quantity::ClassicalCorrelation,
        Quantity::Z,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Quantity::Negativity => "negativity",
            Quantity::Mid => "mid",
            Quantity::MutualInformation => "mutual_information",
            Quantity::ClassicalCorrelation => "classical_correlation",
            Quantity::Z => "Z",
        }
    }

    /// Column name of the unclamped companion, if any.
    pub fn raw_name(self) -> Option<&'static str> {
        match self {
            Quantity::Negativity => Some("negativity_raw"),
            Quantity::Mid => Some("mid_raw"),
            Quantity::MutualInformation => Some("mutual_information_raw"),
            Quantity::ClassicalCorrelation => Some("classical_correlation_raw"),
            Quantity::Z => None,
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Quantity::ALL.into_iter().find(|q| q.name() == s)
    }

    pub fn value(self, r: &CorrelationReport) -> f64 {
        match self {
            Quantity::Negativity => r.negativity,
            Quantity::Mid => r.mid,
            Quantity::MutualInformation => r.mutual_information,
            Quantity::ClassicalCorrelation => r.classical_correlation,
            Quantity::Z => r.z,
        }
    }

    pub fn raw_value(self, r: &CorrelationReport) -> Option<f64> {
        match self {
            Quantity::Negativity => Some(r.negativity_raw),
            Quantity::Mid => Some(r.mid_raw),
            Quantity::MutualInformation => Some(r.mutual_information_raw),
            Quantity::ClassicalCorrelation => Some(r.classical_correlation_raw),
            Quantity::Z => None,
        }
    }
}

impl fmt::Display for Quantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Evenly spaced values `min..=max` with `steps ≥ 2` points.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepAxis {
    pub param: Param,
    pub min: f64,
    pub max: f64,
    pub steps: usize,
}

impl SweepAxis {
    pub fn new(param: Param, min: f64, max: f64, steps: usize) -> Self {
        Self {
            param,
            min,
            max,
            steps,
        }
    }

    pub fn value(&self, i: usize) -> f64 {
        if i + 1 == self.steps {
            self.max
        } else {
            self.min + (self.max - self.min) * (i as f64) / ((self.steps - 1) as f64)
        }
    }

    fn validate(&self, field: &'static str) -> Result<()> {
        if self.steps < 2 {
            return Err(Error::InvalidSpec {
                field,
                reason: "an axis needs at least 2 steps",
            });
        }
        if !(self.min.is_finite() && self.max.is_finite()) {
            return Err(Error::InvalidSpec {
                field,
                reason: "axis bounds must be finite",
            });
        }
        if self.min >= self.max {
            return Err(Error::InvalidSpec {
                field,
                reason: "axis minimum must be below its maximum",
            });
        }
        Ok(())
    }
}

/// A 2-D scan: two axes plus the value of the remaining parameter.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub x: SweepAxis,
    pub y: SweepAxis,
    pub fixed: Param,
    pub fixed_value: f64,
    pub quantities: Vec<Quantity>,
    /// Prepend `T = 0` points evaluated in the zero-temperature limit.
    pub t0_row: bool,
    /// Emit unclamped companion columns.
    pub raw: bool,
    pub allow_negative_field: bool,
}

/// One grid point in evaluation order.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridPoint {
    pub x: f64,
    pub y: f64,
    pub params: ModelParams,
    pub mode: ThermalMode,
}

impl SweepSpec {
    pub fn validate(&self) -> Result<()> {
        self.x.validate("x")?;
        self.y.validate("y")?;
        if self.x.param == self.y.param {
            return Err(Error::InvalidSpec {
                field: "y",
                reason: "x and y must scan different parameters",
            });
        }
        if self.fixed == self.x.param || self.fixed == self.y.param {
            return Err(Error::InvalidSpec {
                field: "fixed",
                reason: "the fixed parameter must be the one not scanned",
            });
        }
        if !self.fixed_value.is_finite() {
            return Err(Error::InvalidSpec {
                field: "fixed",
                reason: "fixed value must be finite",
            });
        }
        if self.quantities.is_empty() {
            return Err(Error::InvalidSpec {
                field: "quantities",
                reason: "at least one quantity is required",
            });
        }
        for (i, q) in self.quantities.iter().enumerate() {
            if self.quantities[..i].contains(q) {
                return Err(Error::InvalidSpec {
                    field: "quantities",
                    reason: "duplicate quantity",
                });
            }
        }
        let t_axis = [self.x, self.y].into_iter().find(|a| a.param == Param::T);
        match t_axis {
            Some(axis) if axis.min <= 0.0 => {
                return Err(Error::InvalidSpec {
                    field: if self.x.param == Param::T { "x" } else { "y" },
                    reason: "temperature axis must start above 0 (use t0_row for T = 0)",
                })
            }
            None if self.fixed_value <= 0.0 => {
                return Err(Error::InvalidSpec {
                    field: "fixed",
                    reason: "fixed temperature must be > 0",
                })
            }
            None if self.t0_row => {
                return Err(Error::InvalidSpec {
                    field: "t0_row",
                    reason: "t0_row needs T on one of the axes",
                })
            }
            _ => {}
        }
        let b_negative = match (self.x.param, self.y.param, self.fixed) {
            (Param::B, _, _) => self.x.min < 0.0,
            (_, Param::B, _) => self.y.min < 0.0,
            _ => self.fixed_value < 0.0,
        };
        if b_negative && !self.allow_negative_field {
            return Err(Error::InvalidSpec {
                field: "B",
                reason: "negative field requires allow_negative_field",
            });
        }
        Ok(())
    }

    fn axis_values(&self, axis: &SweepAxis) -> Vec<f64> {
        let mut v = Vec::with_capacity(axis.steps + 1);
        if axis.param == Param::T && self.t0_row {
            v.push(0.0);
        }
        v.extend((0..axis.steps).map(|i| axis.value(i)));
        v
    }

    pub fn x_values(&self) -> Vec<f64> {
        self.axis_values(&self.x)
    }

    pub fn y_values(&self) -> Vec<f64> {
        self.axis_values(&self.y)
    }

    /// Every grid point, y-major then x ascending.
    pub fn points(&self) -> Vec<GridPoint> {
        let xs = self.x_values();
        let ys = self.y_values();
        let mut out = Vec::with_capacity(xs.len() * ys.len());
        for &y in &ys {
            for &x in &xs {
                let mut vals = [0.0; 3];
                let slot = |p: Param| p as usize;
                vals[slot(self.x.param)] = x;
                vals[slot(self.y.param)] = y;
                vals[slot(self.fixed)] = self.fixed_value;
                let [j, b, t] = vals;
                let mode = if t == 0.0 {
                    ThermalMode::ZeroTemperatureLimit
                } else {
                    ThermalMode::FiniteTemperature
                };
                out.push(GridPoint {
                    x,
                    y,
                    params: ModelParams::new(j, b, t)
                        .with_negative_field(self.allow_negative_field),
                    mode,
                });
            }
        }
        out
    }

    /// Column names after the two axis columns.
    pub fn value_columns(&self) -> Vec<&'static str> {
        let mut cols = Vec::new();
        for q in &self.quantities {
            cols.push(q.name());
            if self.raw {
                if let Some(r) = q.raw_name() {
                    cols.push(r);
                }
            }
        }
        cols
    }
}

/// Tolerances recorded alongside a sweep.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    pub negativity_threshold: f64,
    pub eigenvalue_clamp: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepMetadata {
    pub tool_version: &'static str,
    /// Seconds since the Unix epoch, filled in by callers with a clock.
    pub timestamp: Option<u64>,
    pub tolerances: Tolerances,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub x: f64,
    pub y: f64,
    /// One entry per [`SweepSpec::value_columns`] name.
    pub values: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepResult {
    pub spec: SweepSpec,
    pub rows: Vec<SweepRow>,
    pub metadata: SweepMetadata,
}

impl SweepResult {
    pub fn columns(&self) -> Vec<&'static str> {
        let mut cols = alloc::vec![self.spec.x.param.name(), self.spec.y.param.name()];
        cols.extend(self.spec.value_columns());
        cols
    }
}

/// A finite value escaped at a named grid point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NonFinitePoint {
    pub x: f64,
    pub y: f64,
    pub column: &'static str,
}

/// Full report for one parameter set.
pub fn eval_point(p: &ModelParams, mode: ThermalMode) -> Result<CorrelationReport> {
    measures::mid(p, mode)
}

/// Builds the ordered table from per-point reports (same order as
/// [`SweepSpec::points`]).
pub fn assemble(
    spec: &SweepSpec,
    points: &[GridPoint],
    reports: &[CorrelationReport],
) -> core::result::Result<SweepResult, NonFinitePoint> {
    assert_eq!(points.len(), reports.len());
    let mut rows = Vec::with_capacity(points.len());
    for (pt, r) in points.iter().zip(reports) {
        let mut values = Vec::new();
        for q in &spec.quantities {
            values.push((q.name(), q.value(r)));
            if spec.raw {
                if let (Some(name), Some(v)) = (q.raw_name(), q.raw_value(r)) {
                    values.push((name, v));
                }
            }
        }
        if let Some(&(column, _)) = values.iter().find(|(_, v)| !v.is_finite()) {
            return Err(NonFinitePoint {
                x: pt.x,
                y: pt.y,
                column,
            });
        }
        rows.push(SweepRow {
            x: pt.x,
            y: pt.y,
            values: values.into_iter().map(|(_, v)| v).collect(),
        });
    }
    Ok(SweepResult {
        spec: spec.clone(),
        rows,
        metadata: SweepMetadata {
            tool_version: env!("CARGO_PKG_VERSION"),
            timestamp: None,
            tolerances: Tolerances {
                negativity_threshold: NEGATIVITY_THRESHOLD,
                eigenvalue_clamp: CLAMP_TOLERANCE,
            },
        },
    })
}

/// Evaluates the whole grid on the calling thread.
pub fn run_sweep(spec: &SweepSpec) -> Result<SweepResult> {
    spec.validate()?;
    let points = spec.points();
    let reports = points
        .iter()
        .map(|pt| eval_point(&pt.params, pt.mode))
        .collect::<Result<Vec<_>>>()?;
    assemble(spec, &points, &reports).map_err(|bad| Error::NumericalFailure {
        what: bad.column,
        value: f64::NAN,
    })
}

fn thermal_negativity(j: f64, b: f64, t: f64) -> Result<f64> {
    let st = thermal_state(&ModelParams::new(j, b, t), ThermalMode::FiniteTemperature)?;
    measures::negativity(&st.rho)
}

/// Temperature above which the thermal negativity vanishes, found by
/// bisection on `[t_lo, t_hi]` until the bracket is narrower than `tol`.
///
/// Returns `Ok(None)` unless the state is entangled at `t_lo` and separable
/// at `t_hi`.
pub fn find_critical_temperature(
    j: f64,
    b: f64,
    t_lo: f64,
    t_hi: f64,
    tol: f64,
) -> Result<Option<f64>> {
    if !(t_lo > 0.0 && t_lo < t_hi && t_hi.is_finite()) {
        return Err(Error::InvalidBracket { lo: t_lo, hi: t_hi });
    }
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::InvalidSpec {
            field: "tol",
            reason: "bisection tolerance must be > 0",
        });
    }
    let entangled = |t: f64| thermal_negativity(j, b, t).map(|n| n > NEGATIVITY_THRESHOLD);
    if !entangled(t_lo)? || entangled(t_hi)? {
        return Ok(None);
    }
    let (mut lo, mut hi) = (t_lo, t_hi);
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if entangled(mid)? {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(Some(0.5 * (lo + hi)))
}
