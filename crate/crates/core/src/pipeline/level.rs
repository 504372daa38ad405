use serde::{Deserialize, Serialize};

use crate::text::Level;
use crate::{Error, Result};

/// Scoring scales whose scores are converted to levels.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Scale {
    /// 0–20 classroom essay scores.
    Weccl20,
    /// 0–6 analytical writing scores.
    Gre6,
}

impl Scale {
    pub fn as_str(self) -> &'static str {
        match self {
            Scale::Weccl20 => "WECCL20",
            Scale::Gre6 => "GRE6",
        }
    }

    pub fn max(self) -> f64 {
        match self {
            Scale::Weccl20 => 20.0,
            Scale::Gre6 => 6.0,
        }
    }

    /// Lower bounds of the MID and HIGH bands.
    fn bands(self) -> (f64, f64) {
        match self {
            Scale::Weccl20 => (14.0, 18.0),
            Scale::Gre6 => (3.0, 5.0),
        }
    }
}

pub fn level_assign(score: f64, scale: Scale) -> Result<Level> {
    if !score.is_finite() || score < 0.0 || score > scale.max() {
        return Err(Error::OutOfRange { score, scale: scale.as_str() });
    }
    let (mid, high) = scale.bands();
    Ok(if score < mid {
        Level::Low
    } else if score < high {
        Level::Mid
    } else {
        Level::High
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn band_edges() {
        assert_eq!(level_assign(13.0, Scale::Weccl20).unwrap(), Level::Low);
        assert_eq!(level_assign(14.0, Scale::Weccl20).unwrap(), Level::Mid);
        assert_eq!(level_assign(17.0, Scale::Weccl20).unwrap(), Level::Mid);
        assert_eq!(level_assign(18.0, Scale::Weccl20).unwrap(), Level::High);
        assert_eq!(level_assign(2.5, Scale::Gre6).unwrap(), Level::Low);
        assert_eq!(level_assign(3.0, Scale::Gre6).unwrap(), Level::Mid);
        assert_eq!(level_assign(5.0, Scale::Gre6).unwrap(), Level::High);
    }

    #[test]
    fn out_of_range() {
        assert!(matches!(level_assign(21.0, Scale::Weccl20), Err(Error::OutOfRange { .. })));
        assert!(matches!(level_assign(-1.0, Scale::Gre6), Err(Error::OutOfRange { .. })));
        assert!(matches!(level_assign(f64::NAN, Scale::Gre6), Err(Error::OutOfRange { .. })));
    }
}
