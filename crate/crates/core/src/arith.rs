//! Small exact-integer helpers. Division rounds toward -inf / +inf for every
//! sign combination.

use num_integer::Integer;

pub(crate) fn ceil_div(a: i128, b: i128) -> i128 {
    Integer::div_ceil(&a, &b)
}

pub(crate) fn floor_div(a: i128, b: i128) -> i128 {
    Integer::div_floor(&a, &b)
}

/// Largest k with k^2 <= x (x >= 0).
pub(crate) fn isqrt(x: i128) -> i128 {
    debug_assert!(x >= 0);
    (x as u128).isqrt() as i128
}

/// Least k with k^2 >= x (x >= 0).
pub(crate) fn ceil_sqrt(x: i128) -> i128 {
    let k = isqrt(x);
    if k * k == x {
        k
    } else {
        k + 1
    }
}

pub(crate) fn to_i64(x: i128, what: &str) -> i64 {
    i64::try_from(x).unwrap_or_else(|_| panic!("{what} does not fit in 64 bits: {x}"))
}
