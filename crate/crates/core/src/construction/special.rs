use crate::error::{Error, Result};
use crate::tiling::{slope_of, Slope, TilingSystem, Transform};
use std::fmt;

/// Slopes the square construction does not reach by a lattice symmetry.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpecialCase {
    Horizontal,
    Vertical,
    Diagonal,
    AntiDiagonal,
}

impl SpecialCase {
    pub fn slope(self) -> Slope {
        match self {
            SpecialCase::Horizontal => Slope::new(0, 1),
            SpecialCase::Vertical => Ok(Slope::INFINITY),
            SpecialCase::Diagonal => Slope::new(1, 1),
            SpecialCase::AntiDiagonal => Slope::new(-1, 1),
        }
        .expect("fixed slopes are valid")
    }

    /// The intended variant, which is not generated.
    pub fn description(self) -> &'static str {
        match self {
            SpecialCase::Horizontal | SpecialCase::Vertical => {
                "grid-aligned variant: squares face one another across straight breaking lines"
            }
            SpecialCase::Diagonal | SpecialCase::AntiDiagonal => {
                "diagonal variant: each square is its neighbour shifted by its full size"
            }
        }
    }
}

impl fmt::Display for SpecialCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "slope {}: {}", self.slope(), self.description())
    }
}

/// How the construction reaches a slope.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SlopePlan {
    /// Build for `base`, a slope in `(0, 1)`, then apply `transform`.
    Quadrant { transform: Transform, base: Slope },
    Special(SpecialCase),
}

/// The plan for a slope.
pub fn plan_slope(s: Slope) -> SlopePlan {
    if s.infinite {
        return SlopePlan::Special(SpecialCase::Vertical);
    }
    let (n, d) = (s.numerator, s.denominator);
    let base = |num: i64, den: i64| Slope::new(num, den).expect("non-zero denominator");
    match (n, d) {
        (0, _) => SlopePlan::Special(SpecialCase::Horizontal),
        _ if n == d => SlopePlan::Special(SpecialCase::Diagonal),
        _ if n == -d => SlopePlan::Special(SpecialCase::AntiDiagonal),
        _ if n > 0 && n < d => SlopePlan::Quadrant {
            transform: Transform::Identity,
            base: s,
        },
        _ if n > d => SlopePlan::Quadrant {
            transform: Transform::Transpose,
            base: base(d, n),
        },
        _ if -n < d => SlopePlan::Quadrant {
            transform: Transform::MirrorY,
            base: base(-n, d),
        },
        _ => SlopePlan::Quadrant {
            transform: Transform::Rot90,
            base: base(d, -n),
        },
    }
}

/// Applies the plan's symmetry to a system built for its base slope.
pub fn transform_for_slope(base_system: &TilingSystem, s: Slope) -> Result<TilingSystem> {
    match plan_slope(s) {
        SlopePlan::Quadrant { transform, .. } => transform.system(base_system),
        SlopePlan::Special(case) => Err(Error::SpecialCase(case.to_string())),
    }
}

/// The slope a plan produces.
pub fn planned_slope(plan: SlopePlan) -> Result<Slope> {
    match plan {
        SlopePlan::Quadrant { transform, base } => slope_of(transform.vector(base.base_vector())),
        SlopePlan::Special(case) => Ok(case.slope()),
    }
}
