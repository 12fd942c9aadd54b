use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::BenchError;

/// An exact percentage `num / den` with `den > 0`.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct Gap {
    num: i128,
    den: i128,
}

impl Gap {
    pub fn zero() -> Self {
        Gap { num: 0, den: 1 }
    }

    pub fn is_zero(&self) -> bool {
        self.num == 0
    }

    pub fn numer(&self) -> i128 {
        self.num
    }

    pub fn denom(&self) -> i128 {
        self.den
    }

    pub fn to_f64(&self) -> f64 {
        self.num as f64 / self.den as f64
    }

    /// Value scaled by 10^4, rounded half away from zero.
    fn scaled(&self) -> i128 {
        let twice = 2 * 10_000 * self.num.abs() + self.den;
        let q = twice / (2 * self.den);
        if self.num < 0 {
            -q
        } else {
            q
        }
    }
}

impl PartialEq for Gap {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Gap {}

impl PartialOrd for Gap {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Gap {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.num * other.den).cmp(&(other.num * self.den))
    }
}

/// Four decimals, as in the published tables.
impl fmt::Display for Gap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = self.scaled();
        let sign = if s < 0 { "-" } else { "" };
        let a = s.abs();
        write!(f, "{sign}{}.{:04}", a / 10_000, a % 10_000)
    }
}

/// `100 * (f - f_ref) / f_ref`, exactly. Negative gaps mean `f` beats the
/// reference.
pub fn gap_percent(f: i64, f_ref: i64) -> Result<Gap, BenchError> {
    gap_of_mean(f as i128, 1, f_ref)
}

/// Gap of the mean `sum / count` against `f_ref`.
pub(crate) fn gap_of_mean(sum: i128, count: i128, f_ref: i64) -> Result<Gap, BenchError> {
    if f_ref <= 0 {
        return Err(BenchError::ZeroReference(f_ref));
    }
    let r = f_ref as i128;
    Ok(Gap {
        num: 100 * (sum - count * r),
        den: count * r,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_values() {
        assert_eq!(gap_percent(100, 100).unwrap().to_string(), "0.0000");
        assert_eq!(gap_percent(101, 100).unwrap().to_string(), "1.0000");
        assert_eq!(gap_percent(99, 100).unwrap().to_string(), "-1.0000");
        assert_eq!(gap_percent(1, 3).unwrap().to_string(), "-66.6667");
        assert!(gap_percent(5, 0).is_err());
    }

    #[test]
    fn rounding_half_away() {
        // 100 * 1 / 160000 = 0.000625 -> 0.0006
        assert_eq!(gap_percent(160_001, 160_000).unwrap().to_string(), "0.0006");
        // 100 * 1 / 200000 = 0.0005 -> 0.0005, and 1/2000000 -> 0.00005 -> 0.0001
        assert_eq!(
            gap_percent(2_000_001, 2_000_000).unwrap().to_string(),
            "0.0001"
        );
    }

    #[test]
    fn ordering_is_exact() {
        let a = gap_percent(3, 2).unwrap();
        let b = gap_percent(6, 4).unwrap();
        assert_eq!(a, b);
        assert!(gap_percent(7, 4).unwrap() > b);
    }
}
