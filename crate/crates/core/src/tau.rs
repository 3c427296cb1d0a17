//! Upper bounds on tau, the regularity index of `Z`.

use num_rational::Ratio;

use crate::arith::{ceil_div, ceil_sqrt, to_i64};
use crate::error::{precondition, Result};
use crate::lattice::FatPointSpec;
use crate::report::{BoundReport, Method, CATALISANO_POINT_COUNT, CHARACTERISTIC_ZERO};
use crate::unload::drop_prefix;

/// Least `d >= 0` with `pred(d)`, for predicates that stay true once true.
fn least_nonneg(pred: impl Fn(i128) -> bool) -> i128 {
    if pred(0) {
        return 0;
    }
    let mut hi = 1i128;
    while !pred(hi) {
        hi *= 2;
    }
    let mut lo = hi / 2;
    // pred(lo) false, pred(hi) true
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if pred(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    hi
}

fn check_nm(n: i64, m: i64) -> Result<()> {
    precondition(n >= 1, format!("need at least one point, got n = {n}"))?;
    precondition(m >= 0, format!("multiplicity must be nonnegative, got {m}"))
}

fn more_than_nine(n: i64, m: i64) -> Result<()> {
    precondition(
        n > 9,
        format!("bound applies only to n > 9 points, got n = {n}"),
    )?;
    precondition(m >= 1, format!("multiplicity must be at least 1, got {m}"))
}

/// `floor(mn/2)`, from specializing to a conic.
pub fn segre_tau(n: i64, m: i64) -> Result<BoundReport> {
    more_than_nine(n, m)?;
    Ok(BoundReport::tau(
        Method::Segre,
        to_i64(n as i128 * m as i128 / 2, "Segre bound"),
    ))
}

/// `floor(mn/3)`, from specializing to a cubic.
pub fn cubic_tau(n: i64, m: i64) -> Result<BoundReport> {
    more_than_nine(n, m)?;
    Ok(BoundReport::tau(
        Method::Cubic,
        to_i64(n as i128 * m as i128 / 3, "cubic bound"),
    ))
}

/// `m1 + ... + md` for the least `d` with `d(d+3) >= 2n`. When the unique
/// curve of that degree through the points is exceptional (the line through
/// 2 points, the conic through 5) it is a fixed component, and `d` moves up.
pub fn gimigliano_tau(z: &FatPointSpec) -> Result<BoundReport> {
    precondition(!z.is_zero(), "the bound needs a nonzero scheme")?;
    let w = z.support_sorted();
    let n = w.len() as i128;
    let mut d = least_nonneg(|d| d * (d + 3) >= 2 * n);
    if d * (d + 3) == 2 * n && d * d == n - 1 {
        d += 1;
    }
    let d = d as usize;
    let value: i64 = w.iter().take(d).sum();
    Ok(BoundReport::tau(Method::Gimigliano, value))
}

/// Least `t >= m1` with `ceil((t+3)/2) ceil((t+2)/2) > sum m_i(m_i+1)/2`.
pub fn hirschowitz_tau(z: &FatPointSpec) -> Result<BoundReport> {
    precondition(!z.is_zero(), "the bound needs a nonzero scheme")?;
    let s = 2 * z.conditions() as i128;
    let m1 = z.max_mult() as i128;
    let t = m1
        + least_nonneg(|k| {
            let t = m1 + k;
            2 * ceil_div(t + 3, 2) * ceil_div(t + 2, 2) > s
        });
    Ok(BoundReport::tau(
        Method::Hirschowitz,
        to_i64(t, "Hirschowitz bound"),
    ))
}

/// `f` largest with `f(f+1) <= 2s`, `r` least with `2r >= 2s - f(f+1)`.
fn triangular_split(s: i128) -> (i128, i128) {
    let f = least_nonneg(|f| f * (f + 1) > 2 * s) - 1;
    (f, s - f * (f + 1) / 2)
}

fn catalisano_uniform(n: i128, m: i128) -> i128 {
    let (f, r) = triangular_split(n);
    let d1 = if r == 0 { f - 1 } else { f };
    let mut t = d1 + (m - 1) * f;
    if 2 * t + 1 < 5 * m {
        t = ceil_div(5 * m - 1, 2);
    }
    t = t.max(2 * m - 1);
    if r == f && n >= 9 {
        t = m * d1 + 1;
    }
    t
}

/// Catalisano's bound for at least five points of uniform multiplicity.
pub fn catalisano_uniform_tau(n: i64, m: i64) -> Result<BoundReport> {
    precondition(
        n >= 5,
        format!("bound needs at least 5 points, got n = {n}"),
    )?;
    precondition(m >= 1, format!("multiplicity must be at least 1, got {m}"))?;
    let t = catalisano_uniform(n as i128, m as i128);
    Ok(BoundReport::tau(
        Method::Catalisano,
        to_i64(t, "Catalisano bound"),
    ))
}

/// Catalisano's bound, for at least five points of positive multiplicity.
/// Uniform schemes use the uniform procedure; otherwise the grouped one,
/// whose special cases test the number of nonzero multiplicities.
pub fn catalisano_tau(z: &FatPointSpec) -> Result<BoundReport> {
    let w = z.support_sorted();
    let n = w.len();
    precondition(
        n >= 5,
        format!("bound needs at least 5 points of positive multiplicity, got {n}"),
    )?;
    if w[0] == w[n - 1] {
        return catalisano_uniform_tau(n as i64, w[0]);
    }
    let wi: Vec<i128> = w.iter().map(|&m| m as i128).collect();
    // group boundaries: cumulative counts and the values of each block
    let mut counts = Vec::new();
    let mut values = Vec::new();
    for i in 0..n - 1 {
        if wi[i] > wi[i + 1] {
            counts.push(i as i128 + 1);
            values.push(wi[i]);
        }
    }
    counts.push(n as i128);
    values.push(wi[n - 1]);
    let steps: Vec<i128> = (0..values.len())
        .map(|i| values[i] - values.get(i + 1).copied().unwrap_or(0))
        .collect();
    let splits: Vec<(i128, i128)> = counts.iter().map(|&s| triangular_split(s)).collect();
    let (f_last, r_last) = *splits.last().unwrap();
    let mut t: i128 = if r_last == 0 { -1 } else { 0 };
    let d1 = t + f_last;
    t += splits
        .iter()
        .zip(&steps)
        .map(|((f, _), v)| f * v)
        .sum::<i128>();
    let five: i128 = wi[..5].iter().sum();
    if 2 * t + 1 < five {
        t = ceil_div(five - 1, 2);
    }
    t = t.max(wi[0] + wi[1] - 1);
    let (f0, r0) = splits[0];
    let nn = n as i128;
    if r0 == f0 && nn >= 9 && wi[0] == wi[n - 1] && wi[0] > 1 {
        t = wi[0] * d1 + 1;
    }
    if r0 == 0 && nn > 9 && wi[0] == wi[n - 2] && wi[n - 1] == 1 {
        t = wi[0] * d1 + 1;
    }
    Ok(
        BoundReport::tau(Method::Catalisano, to_i64(t, "Catalisano bound"))
            .caveat(CATALISANO_POINT_COUNT),
    )
}

/// Least `d` with `d(d+3) - nm(m+1) >= 2d(m-1) - 2`.
pub fn ballico_tau(n: i64, m: i64) -> Result<BoundReport> {
    check_nm(n, m)?;
    let (n, m) = (n as i128, m as i128);
    let d = least_nonneg(|d| d * (d + 3) - n * m * (m + 1) >= 2 * d * (m - 1) - 2);
    Ok(BoundReport::tau(
        Method::Ballico,
        to_i64(d, "Ballico bound"),
    ))
}

/// Least `d` with `3(d+3) > (m+1) sqrt(10n)`, decided as `9(d+3)^2 > 10n(m+1)^2`.
/// Only for `n > 9`; it fails for some smaller `n`.
pub fn xu_tau(n: i64, m: i64) -> Result<BoundReport> {
    check_nm(n, m)?;
    precondition(
        n > 9,
        format!("bound applies only to n > 9 points, got n = {n}"),
    )?;
    let (n, m) = (n as i128, m as i128);
    let d = least_nonneg(|d| 9 * (d + 3) * (d + 3) > 10 * n * (m + 1) * (m + 1));
    Ok(BoundReport::tau(Method::Xu, to_i64(d, "Xu bound")))
}

/// `m c + ceil((c-3)/2)` with `c = ceil(sqrt n)`, for `n >= 9`.
pub fn hhf_tau(n: i64, m: i64) -> Result<BoundReport> {
    check_nm(n, m)?;
    precondition(n >= 9, format!("bound needs n >= 9, got n = {n}"))?;
    let c = ceil_sqrt(n as i128);
    let value = m as i128 * c + ceil_div(c - 3, 2);
    Ok(BoundReport::tau(Method::Hhf, to_i64(value, "HHF bound")))
}

/// Iterated unloading through `E1 - E2 - ... - E(i+1)`; the bound is
/// `m1' + m2' - 1` of the final class (at least 0).
pub fn roe_tau(z: &FatPointSpec) -> Result<BoundReport> {
    precondition(
        z.len() >= 2,
        format!("bound needs at least 2 points, got {}", z.len()),
    )?;
    let mut w = z.support_sorted();
    if w.len() < 2 {
        w.resize(2, 0);
    }
    let len = w.len();
    for i1 in 1..len - 1 {
        loop {
            let tail: i128 = w[1..=i1 + 1].iter().map(|&m| m as i128).sum();
            if w[0] as i128 - tail >= -1 {
                break;
            }
            w[0] += 1;
            drop_prefix(&mut w[1..], i1);
        }
    }
    Ok(BoundReport::tau(Method::Roe, (w[0] + w[1] - 1).max(0)))
}

fn check_rd(r: i64, d: i64, n: usize) -> Result<()> {
    precondition(r >= 1, format!("r must be at least 1, got {r}"))?;
    precondition(
        r as u64 <= n as u64,
        format!("r = {r} exceeds the number of points {n}"),
    )?;
    precondition(d >= 1, format!("d must be at least 1, got {d}"))
}

/// Whether unloading `d E0 - (E1 + ... + Er)` from `F_t` reaches a class
/// with no multiplicities while keeping the restrictions nonspecial.
fn hr_tau_reaches_zero(w: &[i64], r: usize, d: i128, t: i128) -> bool {
    let g = (d - 1) * (d - 2) / 2;
    let mut v = w.to_vec();
    let mut ti = t;
    while v[0] > 0 {
        let dot: i128 = v.iter().take(r).map(|&m| m as i128).sum();
        if ti * d - dot < g - 1 || ti < d - 2 {
            return false;
        }
        ti -= d;
        drop_prefix(&mut v, r);
    }
    true
}

/// Modified unloading for tau: least `t` whose class unloads to `t' E0`.
pub fn hr_tau(z: &FatPointSpec, r: i64, d: i64) -> Result<BoundReport> {
    let w = z.sorted();
    check_rd(r, d, w.len())?;
    let value = if z.is_zero() {
        0
    } else {
        // each step lowers m1 by at most one and needs t' >= d - 2
        let d = d as i128;
        let mut t = (w[0] as i128 * d - 2).max(0);
        while !hr_tau_reaches_zero(&w, r as usize, d, t) {
            t += 1;
        }
        t
    };
    Ok(BoundReport::tau(
        Method::ModifiedUnloading,
        to_i64(value, "modified unloading"),
    )
    .rd(r, d)
    .caveat(CHARACTERISTIC_ZERO))
}

fn check_uniform(n: i64, m: i64, r: i64, d: i64) -> Result<()> {
    check_nm(n, m)?;
    check_rd(r, d, n as usize)
}

/// `(u, rho, g)` with `mn = u r + rho`, `0 < rho <= r`.
fn hr_terms(n: i64, m: i64, r: i64, d: i64) -> (i128, i128, i128) {
    let mn = n as i128 * m as i128;
    let u = ceil_div(mn, r as i128) - 1;
    let d = d as i128;
    (u, mn - u * r as i128, (d - 1) * (d - 2) / 2)
}

/// `max(ceil((mr+g-1)/d), (u+1)d - 2)` when `2r >= n + d^2`.
pub fn hr_tau_formula_a(n: i64, m: i64, r: i64, d: i64) -> Result<BoundReport> {
    check_uniform(n, m, r, d)?;
    precondition(2 * r >= n + d * d, "formula (a) needs 2r >= n + d^2")?;
    let value = if m == 0 {
        0
    } else {
        let (u, _, g) = hr_terms(n, m, r, d);
        let d128 = d as i128;
        ceil_div(m as i128 * r as i128 + g - 1, d128).max((u + 1) * d128 - 2)
    };
    Ok(
        BoundReport::tau(Method::HrFormulaA, to_i64(value, "formula (a)"))
            .rd(r, d)
            .caveat(CHARACTERISTIC_ZERO),
    )
}

/// `max(ceil((rho+g-1)/d) + ud, (u+1)d - 2)` when `r <= d^2`.
pub fn hr_tau_formula_b(n: i64, m: i64, r: i64, d: i64) -> Result<BoundReport> {
    check_uniform(n, m, r, d)?;
    precondition(r <= d * d, "formula (b) needs r <= d^2")?;
    let value = if m == 0 {
        0
    } else {
        let (u, rho, g) = hr_terms(n, m, r, d);
        let d128 = d as i128;
        (ceil_div(rho + g - 1, d128) + u * d128).max((u + 1) * d128 - 2)
    };
    Ok(
        BoundReport::tau(Method::HrFormulaB, to_i64(value, "formula (b)"))
            .rd(r, d)
            .caveat(CHARACTERISTIC_ZERO),
    )
}

/// `-3 + ceil((m+1) max(sqrt n, n/c))`, given a proven `alpha >= c m`.
/// Only for `n > 9`; it undershoots tau for 1 and 4 points.
pub fn ran_tau(n: i64, m: i64, c: Ratio<i64>) -> Result<BoundReport> {
    check_nm(n, m)?;
    precondition(
        n > 9,
        format!("bound applies only to n > 9 points, got n = {n}"),
    )?;
    precondition(c > Ratio::from(0), format!("c must be positive, got {c}"))?;
    let (p, q) = (*c.numer() as i128, *c.denom() as i128);
    let (n128, m1) = (n as i128, m as i128 + 1);
    // (n/c)^2 >= n  iff  n q^2 >= p^2
    let top = if n128 * q * q >= p * p {
        ceil_div(m1 * n128 * q, p)
    } else {
        ceil_sqrt(m1 * m1 * n128)
    };
    let mut rep = BoundReport::tau(Method::Ran, to_i64(top - 3, "Ran bound"));
    rep.params.c = Some(c);
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hilbert::find_tau;

    fn z(m: &[i64]) -> FatPointSpec {
        FatPointSpec::new(m.to_vec()).unwrap()
    }

    fn u(n: usize, m: i64) -> FatPointSpec {
        FatPointSpec::uniform(n, m).unwrap()
    }

    #[test]
    fn least_nonneg_search() {
        assert_eq!(least_nonneg(|d| d >= 0), 0);
        assert_eq!(least_nonneg(|d| d >= 1), 1);
        assert_eq!(least_nonneg(|d| d * d >= 1000), 32);
    }

    #[test]
    fn specialization_bounds() {
        assert_eq!(segre_tau(12, 3).unwrap().value, 18);
        assert_eq!(cubic_tau(12, 3).unwrap().value, 12);
        assert_eq!(segre_tau(10, 1).unwrap().value, 5);
        assert_eq!(cubic_tau(10, 1).unwrap().value, 3);
        assert!(segre_tau(9, 3).is_err());
        assert!(cubic_tau(10, 0).is_err());
    }

    #[test]
    fn gimigliano_and_hirschowitz() {
        assert_eq!(gimigliano_tau(&u(10, 1)).unwrap().value, 4);
        assert_eq!(gimigliano_tau(&u(9, 2)).unwrap().value, 6);
        assert_eq!(gimigliano_tau(&z(&[5])).unwrap().value, 5);
        // line through two points, conic through five
        assert_eq!(gimigliano_tau(&z(&[2, 2])).unwrap().value, 4);
        assert_eq!(gimigliano_tau(&u(5, 2)).unwrap().value, 6);
        assert!(gimigliano_tau(&z(&[0, 0])).is_err());
        assert_eq!(hirschowitz_tau(&u(10, 1)).unwrap().value, 4);
        assert_eq!(hirschowitz_tau(&u(9, 2)).unwrap().value, 8);
        assert_eq!(hirschowitz_tau(&z(&[1])).unwrap().value, 1);
        assert!(hirschowitz_tau(&z(&[])).is_err());
    }

    #[test]
    fn catalisano_examples() {
        assert_eq!(catalisano_tau(&u(10, 2)).unwrap().value, 7);
        assert_eq!(catalisano_tau(&u(15, 1)).unwrap().value, 4);
        assert_eq!(catalisano_tau(&u(9, 3)).unwrap().value, 10);
        assert!(catalisano_tau(&u(4, 3)).is_err());
        let mixed = catalisano_tau(&z(&[3, 3, 2, 2, 1, 1])).unwrap();
        assert_eq!(mixed.validity, vec![CATALISANO_POINT_COUNT.to_string()]);
        assert!(mixed.value >= find_tau(&z(&[3, 3, 2, 2, 1, 1])));
    }

    #[test]
    fn ballico_xu_hhf() {
        assert_eq!(ballico_tau(10, 1).unwrap().value, 3);
        assert_eq!(xu_tau(10, 1).unwrap().value, 4);
        assert_eq!(xu_tau(10, 0).unwrap().value, 1);
        assert!(xu_tau(5, 2).is_err());
        assert_eq!(hhf_tau(10, 1).unwrap().value, 5);
        for m in 1..=10 {
            assert_eq!(hhf_tau(16, m).unwrap().value, 4 * m + 1);
            assert_eq!(hhf_tau(25, m).unwrap().value, 5 * m + 1);
        }
        assert!(hhf_tau(8, 1).is_err());
    }

    #[test]
    fn roe_examples() {
        assert_eq!(roe_tau(&z(&[2, 2])).unwrap().value, 3);
        assert_eq!(roe_tau(&u(10, 0)).unwrap().value, 0);
        assert!(roe_tau(&u(10, 1)).unwrap().value >= find_tau(&u(10, 1)));
        assert!(roe_tau(&z(&[3])).is_err());
        assert_eq!(roe_tau(&z(&[5, 0])).unwrap().value, 4);
    }

    #[test]
    fn modified_unloading_examples() {
        let alg = hr_tau(&u(20, 5), 16, 4).unwrap();
        assert_eq!(alg.value, hr_tau_formula_b(20, 5, 16, 4).unwrap().value);
        assert_eq!(alg.validity, vec![CHARACTERISTIC_ZERO.to_string()]);
        assert_eq!(hr_tau(&z(&[0, 0]), 1, 1).unwrap().value, 0);
        assert!(hr_tau(&u(16, 3), 16, 4).unwrap().value >= 13);
        assert!(hr_tau(&u(3, 3), 4, 1).is_err());
    }

    #[test]
    fn formula_examples() {
        assert_eq!(hr_tau_formula_b(20, 5, 16, 4).unwrap().value, 26);
        assert_eq!(hr_tau_formula_b(20, 0, 16, 4).unwrap().value, 0);
        assert!(hr_tau_formula_b(20, 5, 17, 4).is_err());
        assert!(hr_tau_formula_a(20, 5, 16, 4).is_err());
        assert_eq!(hr_tau_formula_a(20, 0, 20, 4).unwrap().value, 0);
    }

    #[test]
    fn ran_examples() {
        assert_eq!(ran_tau(22, 3, Ratio::new(14, 3)).unwrap().value, 16);
        assert_eq!(ran_tau(16, 2, Ratio::from(4)).unwrap().value, 9);
        assert_eq!(ran_tau(16, 0, Ratio::from(4)).unwrap().value, 1);
        assert!(ran_tau(4, 2, Ratio::from(2)).is_err());
        assert!(ran_tau(16, 2, Ratio::from(0)).is_err());
    }
}
