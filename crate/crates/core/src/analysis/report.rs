use serde::{Deserialize, Serialize};
use std::io::{self, Write};

use crate::format::{round_json, sig15};

/// One rung of a scale ladder.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Rung {
    /// Series the rung belongs to when a report carries several ladders.
    pub series: String,
    pub scale: f64,
    pub metric: f64,
    /// Absolute bound the metric must meet at this rung, if any.
    pub tolerance: Option<f64>,
    pub pass: bool,
}

/// A scalar comparison attached to a report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub value: f64,
    pub target: f64,
    pub tolerance: f64,
    pub pass: bool,
    /// Gating checks decide the verdict; the rest are reported only.
    pub gating: bool,
}

impl Check {
    /// `|value - target| <= tolerance`.
    pub fn within(name: impl Into<String>, value: f64, target: f64, tolerance: f64) -> Self {
        Check {
            name: name.into(),
            value,
            target,
            tolerance,
            pass: (value - target).abs() <= tolerance,
            gating: true,
        }
    }

    /// `value <= bound`.
    pub fn at_most(name: impl Into<String>, value: f64, bound: f64) -> Self {
        Check {
            name: name.into(),
            value,
            target: bound,
            tolerance: 0.0,
            pass: value <= bound,
            gating: true,
        }
    }

    /// `value > bound`.
    pub fn above(name: impl Into<String>, value: f64, bound: f64) -> Self {
        Check {
            name: name.into(),
            value,
            target: bound,
            tolerance: 0.0,
            pass: value > bound,
            gating: true,
        }
    }

    pub fn informational(mut self) -> Self {
        self.gating = false;
        self
    }
}

/// Declared shape of a metric sequence along the ladder.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Trend {
    /// Non-increasing, tolerating up to `slack` rungs that go up.
    NonIncreasing {
        slack: usize,
    },
    /// Strictly decreasing, tolerating up to `slack` rungs that do not.
    Decreasing {
        slack: usize,
    },
    None,
}

impl Trend {
    pub fn holds(self, metrics: &[f64]) -> bool {
        let breaks = |bad: fn(f64, f64) -> bool| metrics.windows(2).filter(|w| bad(w[0], w[1])).count();
        match self {
            Trend::NonIncreasing { slack } => breaks(|a, b| b > a) <= slack,
            Trend::Decreasing { slack } => breaks(|a, b| b >= a) <= slack,
            Trend::None => true,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

impl Verdict {
    pub fn is_pass(self) -> bool {
        self == Verdict::Pass
    }
}

/// One row of plot data: an empirical value next to its limit.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PlotRow {
    pub series: String,
    pub x: f64,
    pub empirical: f64,
    pub limit: f64,
}

/// Outcome of one named experiment.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceReport {
    pub name: String,
    pub config: serde_json::Value,
    pub ladder: Vec<Rung>,
    pub trend: Trend,
    pub trend_pass: bool,
    pub checks: Vec<Check>,
    pub notes: Vec<String>,
    pub verdict: Verdict,
    pub seed: Option<u64>,
    pub runtime_seconds: Option<f64>,
    #[serde(skip)]
    pub plot: Vec<PlotRow>,
}

impl ConvergenceReport {
    pub fn new(name: impl Into<String>, config: serde_json::Value, trend: Trend) -> Self {
        ConvergenceReport {
            name: name.into(),
            config,
            ladder: Vec::new(),
            trend,
            trend_pass: true,
            checks: Vec::new(),
            notes: Vec::new(),
            verdict: Verdict::Fail,
            seed: None,
            runtime_seconds: None,
            plot: Vec::new(),
        }
    }

    pub fn push_rung(&mut self, series: impl Into<String>, scale: f64, metric: f64, tolerance: Option<f64>) {
        let pass = tolerance.is_none_or(|t| metric <= t);
        self.ladder.push(Rung {
            series: series.into(),
            scale,
            metric,
            tolerance,
            pass,
        });
    }

    pub fn note(&mut self, text: impl Into<String>) {
        self.notes.push(text.into());
    }

    /// Names of the ladder series in first-appearance order.
    pub fn series(&self) -> Vec<&str> {
        let mut out: Vec<&str> = Vec::new();
        for r in &self.ladder {
            if !out.contains(&r.series.as_str()) {
                out.push(&r.series);
            }
        }
        out
    }

    pub fn metrics(&self, series: &str) -> Vec<f64> {
        self.ladder
            .iter()
            .filter(|r| r.series == series)
            .map(|r| r.metric)
            .collect()
    }

    /// Whether every series satisfies the declared trend.
    pub fn evaluate_trend(&self) -> bool {
        self.series().iter().all(|s| self.trend.holds(&self.metrics(s)))
    }

    /// The verdict as a function of the recorded data alone.
    pub fn evaluate(&self) -> Verdict {
        let ok = self.evaluate_trend()
            && self.ladder.iter().all(|r| r.pass && r.metric >= 0.0)
            && self.checks.iter().filter(|c| c.gating).all(|c| c.pass)
            && self.ladder_increasing();
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }

    /// Each series has strictly increasing scales.
    pub fn ladder_increasing(&self) -> bool {
        self.series().iter().all(|s| {
            let scales: Vec<f64> = self.ladder.iter().filter(|r| r.series == *s).map(|r| r.scale).collect();
            scales.windows(2).all(|w| w[1] > w[0])
        })
    }

    pub fn finalize(mut self) -> Self {
        self.trend_pass = self.evaluate_trend();
        self.verdict = self.evaluate();
        self
    }

    pub fn passed(&self) -> bool {
        self.verdict.is_pass()
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn to_json(&self) -> String {
        let value = round_json(serde_json::to_value(self).expect("report serializes"));
        let mut s = serde_json::to_string_pretty(&value).expect("report serializes");
        s.push('\n');
        s
    }

    /// Plot rows as CSV `series,x,empirical,limit`.
    pub fn write_plot_csv<W: Write>(&self, mut out: W) -> io::Result<()> {
        writeln!(out, "series,x,empirical,limit")?;
        for r in &self.plot {
            writeln!(
                out,
                "{},{},{},{}",
                r.series,
                sig15(r.x),
                sig15(r.empirical),
                sig15(r.limit)
            )?;
        }
        Ok(())
    }
}
