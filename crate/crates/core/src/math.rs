//! Exact integer arithmetic for triangular numbers.
//!
//! `t_k = k(k+1)/2` and `u(r) = max { k : t_k <= r }` control every cost
//! formula in the crate. Everything here is pure 64-bit integer code.

use crate::error::{Error, Result};

/// Index of a triangular number.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TriIndex(pub u64);

impl TriIndex {
    pub fn value(self) -> Result<u64> {
        triangular(self.0)
    }
}

/// A pair `(r, u(r))`, with `t_u <= r < t_{u+1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct UValue {
    pub r: u64,
    pub u: u64,
}

impl UValue {
    pub fn of(r: u64) -> Self {
        UValue { r, u: u(r) }
    }
}

/// `k(k+1)/2`, or [`Error::Overflow`] if it does not fit in a `u64`.
pub fn triangular(k: u64) -> Result<u64> {
    if k == u64::MAX {
        return Err(Error::Overflow("triangular"));
    }
    let (a, b) = if k % 2 == 0 { (k / 2, k + 1) } else { (k, (k + 1) / 2) };
    a.checked_mul(b).ok_or(Error::Overflow("triangular"))
}

/// Largest `k` with `t_k <= r`: `floor((sqrt(8r + 1) - 1) / 2)`, exact in
/// integer arithmetic.
pub fn u(r: u64) -> u64 {
    (((8 * r as u128 + 1).isqrt() - 1) / 2) as u64
}

pub fn is_triangular(x: u64) -> bool {
    triangular(u(x)).map_or(false, |t| t == x)
}

/// `s(K_{1,r}) = r + 1 + u(r)`: the cost of a star with `r` leaves.
pub fn star_cost(r: u64) -> u64 {
    r + 1 + u(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triangular_examples() {
        assert_eq!(triangular(0), Ok(0));
        assert_eq!(triangular(3), Ok(6));
        assert_eq!(triangular(4), Ok(10));
    }

    #[test]
    fn triangular_overflow_reported() {
        assert_eq!(triangular(u64::MAX), Err(Error::Overflow("triangular")));
        assert!(triangular(1 << 32).is_ok());
        assert!(triangular(1 << 33).is_err());
        assert!(triangular(1 << 40).is_err());
    }

    #[test]
    fn u_examples() {
        assert_eq!(u(0), 0);
        assert_eq!(u(6), 3);
        assert_eq!(u(9), 3);
        assert_eq!(u(10), 4);
        assert_eq!(u(u64::MAX), 6_074_000_999);
    }

    #[test]
    fn is_triangular_examples() {
        assert!(is_triangular(0));
        assert!(is_triangular(6));
        assert!(!is_triangular(7));
    }

    #[test]
    fn u_brackets_r() {
        for r in 0..=1_000_000u64 {
            let k = u(r);
            assert!(triangular(k).unwrap() <= r);
            assert!(r < triangular(k + 1).unwrap());
        }
    }

    #[test]
    fn u_inverts_triangular() {
        let mut prev = 0;
        for k in 0..=1400u64 {
            assert_eq!(u(triangular(k).unwrap()), k);
        }
        for r in 0..100_000u64 {
            let cur = u(r);
            assert!(cur >= prev);
            prev = cur;
        }
    }
}
