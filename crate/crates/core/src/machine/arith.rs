use crate::error::{Error, Result};

/// Divides both numbers by `2^z`, `z` being their common number of trailing
/// zero bits.
pub fn reduce_binary_pair(p: u64, q: u64) -> Result<(u64, u64)> {
    if p == 0 || q == 0 {
        return Err(Error::Domain(format!("({p},{q}) must be positive")));
    }
    let z = p.trailing_zeros().min(q.trailing_zeros());
    Ok((p >> z, q >> z))
}

/// `2^⌈log₂ t⌉ · (p,q)`, large enough that the square of side `m` holds a
/// computation of `t` steps.
pub fn scale_for_time(p: u64, q: u64, t: u64) -> Result<(u64, u64)> {
    if !(p > q && q > 0) || t == 0 {
        return Err(Error::Domain(format!("need p > q > 0 and t >= 1, got ({p},{q}), t={t}")));
    }
    let e = t.next_power_of_two().trailing_zeros();
    let f = 1u64 << e;
    match (p.checked_mul(f), q.checked_mul(f)) {
        (Some(m), Some(n)) => Ok((m, n)),
        _ => Err(Error::Overflow(format!("2^{e}·({p},{q})"))),
    }
}

/// The machine input for a pair: `bin(p) # bin(q)`, most significant bit
/// first.
pub fn encode_pair(p: u64, q: u64) -> String {
    format!("{p:b}#{q:b}")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tiling::Slope;

    fn odd_gcd(a: u64, b: u64) -> bool {
        let (mut x, mut y) = (a, b);
        while y != 0 {
            (x, y) = (y, x % y);
        }
        x % 2 == 1
    }

    #[test]
    fn reduce_examples() {
        assert_eq!(reduce_binary_pair(12, 8).unwrap(), (3, 2));
        assert_eq!(reduce_binary_pair(3, 2).unwrap(), (3, 2));
        assert_eq!(reduce_binary_pair(40, 24).unwrap(), (5, 3));
        assert!(odd_gcd(5, 3));
        assert!(reduce_binary_pair(0, 3).is_err());
    }

    #[test]
    fn reduce_preserves_ratio() {
        for p in 1..=256u64 {
            for q in 1..=256u64 {
                let (a, b) = reduce_binary_pair(p, q).unwrap();
                assert_eq!(a * q, b * p);
                assert!(odd_gcd(a, b), "({p},{q})");
                assert_eq!(
                    Slope::new(q as i64, p as i64).unwrap(),
                    Slope::new(b as i64, a as i64).unwrap()
                );
            }
        }
    }

    #[test]
    fn scale_examples() {
        assert_eq!(scale_for_time(2, 1, 5).unwrap(), (16, 8));
        assert_eq!(scale_for_time(3, 2, 1).unwrap(), (3, 2));
        assert_eq!(scale_for_time(5, 3, 9).unwrap(), (80, 48));
        assert_eq!(reduce_binary_pair(80, 48).unwrap(), (5, 3));
        assert!(scale_for_time(1, 2, 3).is_err());
        assert!(scale_for_time(2, 1, 0).is_err());
    }

    #[test]
    fn pair_layout() {
        assert_eq!(encode_pair(2, 1), "10#1");
        assert_eq!(encode_pair(5, 3), "101#11");
    }
}
