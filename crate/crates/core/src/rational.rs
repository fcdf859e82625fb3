//! Small exact rationals with an explicit, non-reduced scale.
//!
//! Every quantity in a derived hazing instance is an integer multiple of
//! `1/r` where `r` is the goal-cycle length. [`ScaledRational`] keeps that
//! representation intact — `num` is the integer numerator and `scale` the
//! fixed denominator — instead of reducing to lowest terms, so solver grids
//! can work directly on the numerators. Comparison and arithmetic are exact;
//! intermediates are widened to `i128` and overflow panics rather than
//! wrapping.

use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;

/// An exact rational `num / scale` with `scale >= 1` kept as constructed.
#[derive(Clone, Copy, Debug)]
pub struct ScaledRational {
    num: i64,
    scale: i64,
}

impl ScaledRational {
    /// Builds `num / scale`. Panics if `scale < 1`.
    pub fn new(num: i64, scale: i64) -> Self {
        assert!(scale >= 1, "scale must be positive, got {scale}");
        ScaledRational { num, scale }
    }

    pub fn from_int(n: i64) -> Self {
        ScaledRational { num: n, scale: 1 }
    }

    pub fn zero() -> Self {
        ScaledRational { num: 0, scale: 1 }
    }

    pub fn num(&self) -> i64 {
        self.num
    }

    pub fn scale(&self) -> i64 {
        self.scale
    }

    /// Exact numerator at a different scale, if one exists.
    pub fn rescale(&self, scale: i64) -> Option<Self> {
        assert!(scale >= 1, "scale must be positive, got {scale}");
        let wide = self.num as i128 * scale as i128;
        if wide % self.scale as i128 != 0 {
            return None;
        }
        Some(ScaledRational::new(narrow(wide / self.scale as i128), scale))
    }

    /// `floor(value * scale)` as an integer, exact.
    pub fn floor_at(&self, scale: i64) -> i64 {
        assert!(scale >= 1, "scale must be positive, got {scale}");
        let wide = self.num as i128 * scale as i128;
        narrow(wide.div_euclid(self.scale as i128))
    }

    pub fn is_negative(&self) -> bool {
        self.num < 0
    }

    pub fn to_big(&self) -> BigRational {
        BigRational::new(BigInt::from(self.num), BigInt::from(self.scale))
    }
}

fn narrow(wide: i128) -> i64 {
    i64::try_from(wide).expect("scaled rational overflow")
}

impl PartialEq for ScaledRational {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for ScaledRational {}

impl PartialOrd for ScaledRational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ScaledRational {
    fn cmp(&self, other: &Self) -> Ordering {
        // Scales are positive, so cross-multiplication preserves order.
        let lhs = self.num as i128 * other.scale as i128;
        let rhs = other.num as i128 * self.scale as i128;
        lhs.cmp(&rhs)
    }
}

impl Add for ScaledRational {
    type Output = ScaledRational;

    fn add(self, other: ScaledRational) -> ScaledRational {
        let scale = self.scale.lcm(&other.scale);
        let lhs = self.num as i128 * (scale / self.scale) as i128;
        let rhs = other.num as i128 * (scale / other.scale) as i128;
        ScaledRational::new(narrow(lhs + rhs), scale)
    }
}

impl Sub for ScaledRational {
    type Output = ScaledRational;

    fn sub(self, other: ScaledRational) -> ScaledRational {
        self + (-other)
    }
}

impl Neg for ScaledRational {
    type Output = ScaledRational;

    fn neg(self) -> ScaledRational {
        ScaledRational::new(-self.num, self.scale)
    }
}

impl fmt::Display for ScaledRational {
    /// Prints in lowest terms: `21`, `47/2`, `-15/2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let g = self.num.gcd(&self.scale).max(1);
        let (n, d) = (self.num / g, self.scale / g);
        if d == 1 {
            write!(f, "{n}")
        } else {
            write!(f, "{n}/{d}")
        }
    }
}
