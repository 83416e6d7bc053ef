use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use graph_core::StreamMode;
use serde::{Deserialize, Serialize};

use crate::BenchError;

/// Which computation an experiment runs over the stream.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum Problem {
    Kcore,
    Orient,
    Matching,
    Clique(usize),
    ColorExplicit,
    ColorImplicit,
    StaticExact,
    StaticApprox(f64),
}

impl fmt::Display for Problem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Problem::Kcore => f.write_str("kcore"),
            Problem::Orient => f.write_str("orient"),
            Problem::Matching => f.write_str("matching"),
            Problem::Clique(k) => write!(f, "clique({k})"),
            Problem::ColorExplicit => f.write_str("color-explicit"),
            Problem::ColorImplicit => f.write_str("color-implicit"),
            Problem::StaticExact => f.write_str("static-exact"),
            Problem::StaticApprox(e) => write!(f, "static-approx({e})"),
        }
    }
}

impl FromStr for Problem {
    type Err = String;

    /// Accepts `clique(4)`, `clique:4` or `clique` (k = 3), and likewise `static-approx(ε′)` (default 1).
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim().to_ascii_lowercase();
        let (name, arg) = match s.find(['(', ':', '=']) {
            Some(i) => (&s[..i], Some(s[i + 1..].trim_end_matches(')').trim())),
            None => (s.as_str(), None),
        };
        let bad = || format!("unknown problem {s:?}");
        let no_arg = |p: Problem| if arg.is_none() { Ok(p) } else { Err(bad()) };
        match name {
            "kcore" => no_arg(Problem::Kcore),
            "orient" => no_arg(Problem::Orient),
            "matching" => no_arg(Problem::Matching),
            "color-explicit" => no_arg(Problem::ColorExplicit),
            "color-implicit" => no_arg(Problem::ColorImplicit),
            "static-exact" => no_arg(Problem::StaticExact),
            "clique" => {
                let k = arg.map_or(Ok(3), |a| a.parse::<usize>().map_err(|_| format!("invalid clique size {a:?}")))?;
                if k < 3 {
                    return Err(format!("clique size must be at least 3, got {k}"));
                }
                Ok(Problem::Clique(k))
            }
            "static-approx" => {
                let e = arg.map_or(Ok(1.0), |a| a.parse::<f64>().map_err(|_| format!("invalid eps {a:?}")))?;
                if !(e > 0.0 && e.is_finite()) {
                    return Err(format!("static-approx needs a positive eps, got {e}"));
                }
                Ok(Problem::StaticApprox(e))
            }
            _ => Err(bad()),
        }
    }
}

impl TryFrom<String> for Problem {
    type Error = String;

    fn try_from(s: String) -> Result<Self, Self::Error> {
        s.parse()
    }
}

impl From<Problem> for String {
    fn from(p: Problem) -> String {
        p.to_string()
    }
}

/// One experiment. Defaults: δ = 0.4, λ = 3, divisor 1, one thread, checks on.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct RunConfig {
    pub input: PathBuf,
    pub mode: StreamMode,
    pub batch_size: usize,
    pub delta: f64,
    pub lambda: f64,
    pub divisor: usize,
    pub threads: usize,
    pub seed: u64,
    pub problem: Problem,
    pub out: Option<PathBuf>,
    /// Run the oracle and invariant checks after every batch (not timed).
    pub checks: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            input: PathBuf::new(),
            mode: StreamMode::Ins,
            batch_size: 1000,
            delta: 0.4,
            lambda: 3.0,
            divisor: 1,
            threads: 1,
            seed: 0,
            problem: Problem::Kcore,
            out: None,
            checks: true,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<(), BenchError> {
        let bad = |m: String| Err(BenchError::Config(m));
        if !(self.delta > 0.0 && self.delta.is_finite()) {
            return bad(format!("delta must be positive, got {}", self.delta));
        }
        if !(self.lambda > 0.0 && self.lambda.is_finite()) {
            return bad(format!("lambda must be positive, got {}", self.lambda));
        }
        if self.batch_size == 0 {
            return bad("batch size must be at least 1".into());
        }
        if self.divisor == 0 {
            return bad("divisor must be at least 1".into());
        }
        if self.threads == 0 {
            return bad("threads must be at least 1".into());
        }
        Ok(())
    }
}
