use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

/// `--p` as given: `a/b` keeps the exact rational, a decimal literal is
/// used for simulation only.
#[derive(Clone, Debug, PartialEq)]
pub enum ProbabilityArg {
    Exact(BigRational),
    Decimal { value: f64, text: String },
}

impl ProbabilityArg {
    pub fn value(&self) -> f64 {
        match self {
            ProbabilityArg::Exact(q) => q.to_f64().unwrap_or(f64::NAN),
            ProbabilityArg::Decimal { value, .. } => *value,
        }
    }

    pub fn exact(&self) -> Option<&BigRational> {
        match self {
            ProbabilityArg::Exact(q) => Some(q),
            ProbabilityArg::Decimal { .. } => None,
        }
    }

    pub fn path(&self) -> &'static str {
        match self {
            ProbabilityArg::Exact(_) => "exact",
            ProbabilityArg::Decimal { .. } => "decimal",
        }
    }
}

impl FromStr for ProbabilityArg {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if let Some((a, b)) = s.split_once('/') {
            let a: BigInt = a
                .trim()
                .parse()
                .map_err(|_| format!("bad numerator in {s:?}"))?;
            let b: BigInt = b
                .trim()
                .parse()
                .map_err(|_| format!("bad denominator in {s:?}"))?;
            if b.is_zero() {
                return Err(format!("zero denominator in {s:?}"));
            }
            return Ok(ProbabilityArg::Exact(BigRational::new(a, b)));
        }
        let value: f64 = s
            .parse()
            .map_err(|_| format!("expected a/b or a decimal, got {s:?}"))?;
        Ok(ProbabilityArg::Decimal {
            value,
            text: s.to_string(),
        })
    }
}

impl fmt::Display for ProbabilityArg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProbabilityArg::Exact(q) => write!(f, "{q}"),
            ProbabilityArg::Decimal { text, .. } => write!(f, "{text}"),
        }
    }
}
