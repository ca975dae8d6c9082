use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PeriodVector {
    pub p: i64,
    pub q: i64,
}

impl PeriodVector {
    pub fn new(p: i64, q: i64) -> Result<Self> {
        if p == 0 && q == 0 {
            return Err(Error::Domain("period vector must be nonzero".into()));
        }
        Ok(PeriodVector { p, q })
    }

    pub fn scale(self, m: i64) -> Result<Self> {
        PeriodVector::new(self.p * m, self.q * m)
    }

    /// Sign-normalized form: `p > 0`, or `p = 0` and `q > 0`.
    pub fn canonical(self) -> Self {
        if self.p < 0 || (self.p == 0 && self.q < 0) {
            PeriodVector {
                p: -self.p,
                q: -self.q,
            }
        } else {
            self
        }
    }
}

impl fmt::Display for PeriodVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.p, self.q)
    }
}

/// A direction `q/p` in canonical form; infinity is `1/0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Slope {
    pub numerator: i64,
    pub denominator: i64,
    pub infinite: bool,
}

impl Slope {
    pub const INFINITY: Slope = Slope {
        numerator: 1,
        denominator: 0,
        infinite: true,
    };

    /// The canonical slope `num/den`; a zero denominator gives infinity.
    pub fn new(num: i64, den: i64) -> Result<Self> {
        if den == 0 {
            if num == 0 {
                return Err(Error::Domain("0/0 is not a slope".into()));
            }
            return Ok(Slope::INFINITY);
        }
        let g = gcd(num.unsigned_abs(), den.unsigned_abs()) as i64;
        let s = den.signum();
        Ok(Slope {
            numerator: s * num / g,
            denominator: s * den / g,
            infinite: false,
        })
    }

    /// Smallest vector in this direction with non-negative orientation.
    pub fn base_vector(self) -> PeriodVector {
        if self.infinite {
            PeriodVector { p: 0, q: 1 }
        } else {
            PeriodVector {
                p: self.denominator,
                q: self.numerator,
            }
        }
    }
}

impl fmt::Display for Slope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.infinite {
            write!(f, "inf")
        } else if self.denominator == 1 {
            write!(f, "{}", self.numerator)
        } else {
            write!(f, "{}/{}", self.numerator, self.denominator)
        }
    }
}

pub(crate) fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// The direction `q/p` of a period vector.
pub fn slope_of(v: PeriodVector) -> Result<Slope> {
    Slope::new(v.q, v.p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn v(p: i64, q: i64) -> PeriodVector {
        PeriodVector::new(p, q).unwrap()
    }

    #[test]
    fn examples() {
        assert_eq!(slope_of(v(2, 4)).unwrap(), Slope::new(2, 1).unwrap());
        assert_eq!(slope_of(v(0, 3)).unwrap(), Slope::INFINITY);
        assert_eq!(slope_of(v(-3, -6)).unwrap(), slope_of(v(3, 6)).unwrap());
        assert_eq!(slope_of(v(-2, 1)).unwrap().to_string(), "-1/2");
        assert!(PeriodVector::new(0, 0).is_err());
    }

    #[test]
    fn canonical_orientation() {
        assert_eq!(v(-2, 3).canonical(), v(2, -3));
        assert_eq!(v(0, -5).canonical(), v(0, 5));
        assert_eq!(v(4, -1).canonical(), v(4, -1));
    }

    proptest! {
        #[test]
        fn constant_on_rays(p in -8i64..=8, q in -8i64..=8, k in -8i64..=8) {
            prop_assume!((p, q) != (0, 0) && k != 0);
            let s = slope_of(v(p, q)).unwrap();
            prop_assert_eq!(slope_of(v(k * p, k * q)).unwrap(), s);
            if !s.infinite {
                prop_assert!(s.denominator > 0);
                prop_assert_eq!(gcd(s.numerator.unsigned_abs(), s.denominator as u64), 1);
            }
        }
    }
}
