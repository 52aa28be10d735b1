//! Balance functions `f` and exact objective values.
//!
//! Every `f` is defined on `[0, 1/2]` and extended to `[0, 1]` by
//! `f(x) = f(1 - x)`.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

pub type Rational = BigRational;

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn rat_int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

/// `p/q` in lowest terms, integers included (`8/1`).
pub fn format_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub fn parse_rational(text: &str) -> Option<Rational> {
    let text = text.trim();
    let (num, den) = match text.split_once('/') {
        Some((a, b)) => (
            a.trim().parse::<BigInt>().ok()?,
            b.trim().parse::<BigInt>().ok()?,
        ),
        None => (text.parse::<BigInt>().ok()?, BigInt::one()),
    };
    if den.is_zero() {
        return None;
    }
    Some(Rational::new(num, den))
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BalanceError {
    #[error("line {line}: expected `x_num/x_den y_num/y_den`")]
    Syntax { line: usize },
    #[error("no breakpoints given")]
    Empty,
    #[error("first breakpoint must have x = 0")]
    FirstNotZero,
    #[error("breakpoint x values must be strictly increasing within [0, 1/2]")]
    BadAbscissa,
    #[error("breakpoint y values must be nonnegative")]
    Negative,
    #[error("function is not nondecreasing on [0, 1/2]")]
    NotMonotone,
    #[error("function is not concave on [0, 1/2]")]
    NotConcave,
    #[error("unknown balance function `{0}`")]
    UnknownKind(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BalanceKind {
    /// `min(x, 1 - x)`: minimum quotient cut.
    Quotient,
    /// `x (1 - x)`: sparsest cut.
    Density,
    /// Same `f` as quotient; edge expansion is the quotient value over `n`.
    Expansion,
    /// Piecewise-linear through the breakpoints, flat after the last one.
    Custom(Vec<(Rational, Rational)>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BalanceFunction {
    kind: BalanceKind,
}

impl BalanceFunction {
    pub fn quotient() -> Self {
        BalanceFunction {
            kind: BalanceKind::Quotient,
        }
    }

    pub fn density() -> Self {
        BalanceFunction {
            kind: BalanceKind::Density,
        }
    }

    pub fn expansion() -> Self {
        BalanceFunction {
            kind: BalanceKind::Expansion,
        }
    }

    pub fn from_name(name: &str) -> Result<Self, BalanceError> {
        match name {
            "quotient" => Ok(Self::quotient()),
            "density" => Ok(Self::density()),
            "expansion" => Ok(Self::expansion()),
            other => Err(BalanceError::UnknownKind(other.to_string())),
        }
    }

    /// Validated piecewise-linear function.
    pub fn custom(breakpoints: Vec<(Rational, Rational)>) -> Result<Self, BalanceError> {
        let half = rat(1, 2);
        let first = breakpoints.first().ok_or(BalanceError::Empty)?;
        if !first.0.is_zero() {
            return Err(BalanceError::FirstNotZero);
        }
        for (x, y) in &breakpoints {
            if x.is_negative() || *x > half {
                return Err(BalanceError::BadAbscissa);
            }
            if y.is_negative() {
                return Err(BalanceError::Negative);
            }
        }
        let mut last_slope: Option<Rational> = None;
        for pair in breakpoints.windows(2) {
            let (x0, y0) = &pair[0];
            let (x1, y1) = &pair[1];
            if x1 <= x0 {
                return Err(BalanceError::BadAbscissa);
            }
            let slope = (y1 - y0) / (x1 - x0);
            if slope.is_negative() {
                return Err(BalanceError::NotMonotone);
            }
            if let Some(prev) = &last_slope {
                if slope > *prev {
                    return Err(BalanceError::NotConcave);
                }
            }
            last_slope = Some(slope);
        }
        Ok(BalanceFunction {
            kind: BalanceKind::Custom(breakpoints),
        })
    }

    /// Parses a breakpoint file: one `x y` pair of rationals per line, `#` comments.
    pub fn parse_custom(text: &str) -> Result<Self, BalanceError> {
        let mut points = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let toks: Vec<&str> = line.split_whitespace().collect();
            let syntax = BalanceError::Syntax { line: idx + 1 };
            if toks.len() != 2 {
                return Err(syntax);
            }
            let x = parse_rational(toks[0]).ok_or_else(|| syntax.clone())?;
            let y = parse_rational(toks[1]).ok_or(syntax)?;
            points.push((x, y));
        }
        Self::custom(points)
    }

    pub fn kind(&self) -> &BalanceKind {
        &self.kind
    }

    pub fn name(&self) -> &'static str {
        match self.kind {
            BalanceKind::Quotient => "quotient",
            BalanceKind::Density => "density",
            BalanceKind::Expansion => "expansion",
            BalanceKind::Custom(_) => "custom",
        }
    }

    /// `f(x)` for `x ∈ [0, 1]`.
    pub fn eval(&self, x: &Rational) -> Rational {
        let one = Rational::one();
        debug_assert!(!x.is_negative() && *x <= one, "balance {x} outside [0, 1]");
        let half = rat(1, 2);
        let x = if *x > half { &one - x } else { x.clone() };
        match &self.kind {
            BalanceKind::Quotient | BalanceKind::Expansion => x,
            BalanceKind::Density => &x * (&one - &x),
            BalanceKind::Custom(points) => {
                let idx = points.partition_point(|(px, _)| *px <= x);
                // idx >= 1 because the first breakpoint is 0
                let (x0, y0) = &points[idx - 1];
                match points.get(idx) {
                    None => y0.clone(),
                    Some((x1, y1)) => y0 + (y1 - y0) * (&x - x0) / (x1 - x0),
                }
            }
        }
    }

    /// `|cut| / f(size / n)`; infinite when `f` vanishes there.
    pub fn objective(&self, cut_size: u64, side_size: u64, n: u64) -> Objective {
        let f = self.eval(&Rational::new(BigInt::from(side_size), BigInt::from(n)));
        Objective::ratio(cut_size, &f)
    }
}

/// An objective value in `[0, ∞]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Objective {
    Finite(Rational),
    Infinite,
}

impl Objective {
    pub fn ratio(numerator: u64, denominator: &Rational) -> Objective {
        if denominator.is_zero() {
            Objective::Infinite
        } else {
            Objective::Finite(rat_int(numerator as i64) / denominator)
        }
    }

    pub fn finite(&self) -> Option<&Rational> {
        match self {
            Objective::Finite(r) => Some(r),
            Objective::Infinite => None,
        }
    }
}

impl Ord for Objective {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Objective::Finite(a), Objective::Finite(b)) => a.cmp(b),
            (Objective::Finite(_), Objective::Infinite) => Ordering::Less,
            (Objective::Infinite, Objective::Finite(_)) => Ordering::Greater,
            (Objective::Infinite, Objective::Infinite) => Ordering::Equal,
        }
    }
}

impl PartialOrd for Objective {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Objective {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Objective::Finite(r) => write!(f, "{}", format_rational(r)),
            Objective::Infinite => write!(f, "inf"),
        }
    }
}
