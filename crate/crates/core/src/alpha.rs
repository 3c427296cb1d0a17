//! Lower bounds on alpha, the least degree of a curve through `Z`.
//!
//! Every bound here is a theorem (some only in characteristic 0, which is
//! recorded in the report); none depends on SHGH.

use num_integer::Integer;
use num_rational::Ratio;
use rayon::prelude::*;

use crate::arith::{ceil_div, ceil_sqrt, isqrt, to_i64};
use crate::error::{precondition, Result};
use crate::hilbert::find_alpha;
use crate::lattice::{DivisorClass, FatPointSpec};
use crate::report::{BoundReport, Method, CHARACTERISTIC_ZERO};
use crate::unload::drop_prefix;

fn check_rd(r: i64, d: i64, n: usize) -> Result<()> {
    precondition(r >= 1, format!("r must be at least 1, got {r}"))?;
    precondition(
        r as u64 <= n as u64,
        format!("r = {r} exceeds the number of points {n}"),
    )?;
    precondition(d >= 1, format!("d must be at least 1, got {d}"))
}

fn sum_first(w: &[i64], k: usize) -> i128 {
    w.iter().take(k).map(|&m| m as i128).sum()
}

/// Test against the nef class `a0 d E0 - sum a_i E_i` for rational weights
/// `a0 >= a1 >= ... >= an >= 0` (missing trailing weights are 0).
pub fn nef_test_bound(
    z: &FatPointSpec,
    weights: &[Ratio<i64>],
    r: i64,
    d: i64,
) -> Result<BoundReport> {
    let w = z.sorted();
    let n = w.len();
    check_rd(r, d, n)?;
    precondition(
        weights.len() <= n + 1,
        format!("{} weights given for {n} points", weights.len()),
    )?;
    precondition(
        weights.iter().any(|a| *a != Ratio::from(0)),
        "weights must not all be zero",
    )?;
    precondition(
        weights.iter().all(|a| *a >= Ratio::from(0)),
        "weights must be nonnegative",
    )?;
    precondition(
        weights.windows(2).all(|p| p[0] >= p[1]),
        "weights must be nonincreasing",
    )?;
    let lcm = weights.iter().fold(1i64, |acc, a| acc.lcm(a.denom()));
    let mut a: Vec<i128> = weights
        .iter()
        .map(|x| (*x * lcm).to_integer() as i128)
        .collect();
    a.resize(n + 1, 0);
    let a0 = a[0];
    let (d, r) = (d as i128, r as usize);
    let head: i128 = a[1..=r].iter().sum();
    let all: i128 = a[1..].iter().sum();
    precondition(a0 * d * d >= head, "a0 d^2 >= a1 + ... + ar")?;
    precondition(r as i128 * a0 >= all, "r a0 >= a1 + ... + an")?;
    let dot: i128 = a[1..].iter().zip(&w).map(|(x, &m)| x * m as i128).sum();
    let value = to_i64(ceil_div(dot, a0 * d), "nef test bound");
    let mut rep = BoundReport::alpha(Method::NefTest, value).rd(r as i64, d as i64);
    rep.params.weights = Some(weights.to_vec());
    Ok(rep)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CorVariant {
    A,
    B,
    C,
    D,
}

impl CorVariant {
    fn method(self) -> Method {
        match self {
            CorVariant::A => Method::CorA,
            CorVariant::B => Method::CorB,
            CorVariant::C => Method::CorC,
            CorVariant::D => Method::CorD,
        }
    }
}

/// The `(d)` family evaluated on sorted nonzero multiplicities; `j` weights
/// are spread evenly past the first `d^2 - j` points.
fn lpa(w: &[i64], r: i64, d: i64, j: i64) -> i128 {
    let n = w.len() as i128;
    let (r, d, j) = (r as i128, d as i128, j as i128);
    let dd = d * d;
    if dd >= r {
        return ceil_div(sum_first(w, r as usize), d);
    }
    if j == 0 {
        return ceil_div(sum_first(w, dd as usize), d);
    }
    let q = r - dd + j;
    let big_m = (r - dd) * q / j;
    let mut head = 0i128;
    let mut spread = 0i128;
    for (i, &m) in w.iter().enumerate() {
        let i = i as i128;
        if i < dd - j {
            head += m as i128;
        } else if i < big_m + r {
            spread += m as i128;
        }
    }
    // everything over the common denominator q
    let mut num = head * q + spread * j;
    if big_m < n - r {
        num += w[(big_m + r) as usize] as i128 * ((r - dd) * q - j * big_m);
    }
    ceil_div(num, q * d)
}

/// The corollary bounds `(a)`..`(d)` for given `r`, `d` (and `j` for `(d)`).
pub fn cor_bound(
    z: &FatPointSpec,
    variant: CorVariant,
    r: i64,
    d: i64,
    j: Option<i64>,
) -> Result<BoundReport> {
    let w = z.support_sorted();
    let n = w.len();
    let method = variant.method();
    if n == 0 {
        return Ok(BoundReport::alpha(method, 0).rd(r, d));
    }
    check_rd(r, d, n)?;
    let (ri, di, ni) = (r as i128, d as i128, n as i128);
    let total = sum_first(&w, n);
    let value = match variant {
        CorVariant::A => {
            precondition(ri * ri >= ni * di * di, "(a) needs r^2 >= n d^2")?;
            ceil_div(total * di, ri)
        }
        CorVariant::B => {
            precondition(ri * ri <= ni * di * di, "(b) needs r^2 <= n d^2")?;
            ceil_div(total * ri, ni * di)
        }
        CorVariant::C => {
            precondition(di * di >= ri, "(c) needs d^2 >= r")?;
            ceil_div(sum_first(&w, r as usize), di)
        }
        CorVariant::D => {
            let j = j.ok_or_else(|| crate::Error::Precondition("(d) needs j".into()))?;
            precondition(di * di < ri, "(d) needs d^2 < r")?;
            precondition(
                (0..=d * d).contains(&j),
                format!("(d) needs 0 <= j <= d^2, got j = {j}"),
            )?;
            lpa(&w, r, d, j)
        }
    };
    let mut rep = BoundReport::alpha(method, to_i64(value, "corollary bound")).rd(r, d);
    rep.params.j = j.filter(|_| variant == CorVariant::D);
    Ok(rep)
}

/// `(r, d)` with `r^2 >= n d^2`, `r <= n`, maximizing `n d / r`.
pub fn best_rd_a(n: i64) -> (i64, i64) {
    assert!(n >= 1, "best_rd_a needs n >= 1");
    let nn = n as i128;
    let root = isqrt(nn);
    let (mut r, mut d) = (ceil_sqrt(nn), 1i128);
    for td in 1..=root {
        let tr = ceil_sqrt(td * td * nn);
        if tr * d < td * r {
            r = tr;
            d = td;
        }
    }
    (r as i64, d as i64)
}

/// `(r, d)` with `r^2 <= n d^2`, `r <= n`, maximizing `r / d`.
pub fn best_rd_b(n: i64) -> (i64, i64) {
    assert!(n >= 1, "best_rd_b needs n >= 1");
    let nn = n as i128;
    let root = ceil_sqrt(nn);
    let (mut r, mut d) = (isqrt(nn), 1i128);
    for td in 1..=root {
        let tr = isqrt(td * td * nn).min(nn);
        if tr * d > td * r {
            r = tr;
            d = td;
        }
    }
    (r as i64, d as i64)
}

/// Best of `(a)` over [`best_rd_a`] for the support size.
pub fn cor_a_best(z: &FatPointSpec) -> Result<BoundReport> {
    let n = z.support_size().max(1) as i64;
    let (r, d) = best_rd_a(n);
    cor_bound(z, CorVariant::A, r, d, None)
}

/// Best of `(b)` over [`best_rd_b`] for the support size.
pub fn cor_b_best(z: &FatPointSpec) -> Result<BoundReport> {
    let n = z.support_size().max(1) as i64;
    let (r, d) = best_rd_b(n);
    cor_bound(z, CorVariant::B, r, d, None)
}

/// Exhaustive search of the `(d)` family: `1 <= r <= n`, `d` up to
/// `ceil(sqrt r)`, `1 <= j <= d^2`; first strict maximum wins.
pub fn cor_d_best(z: &FatPointSpec) -> BoundReport {
    let w = z.support_sorted();
    let n = w.len() as i64;
    let per_r: Vec<(i128, i64, i64, i64)> = (1..=n)
        .into_par_iter()
        .map(|r| {
            let mut best = (0i128, 0, 0, 0);
            let mut d = 0;
            while d * d < r {
                d += 1;
                for j in 1..=d * d {
                    let b = lpa(&w, r, d, j);
                    if b > best.0 {
                        best = (b, r, d, j);
                    }
                }
            }
            best
        })
        .collect();
    let best = per_r
        .into_iter()
        .fold((0i128, 0, 0, 0), |acc, b| if b.0 > acc.0 { b } else { acc });
    let mut rep =
        BoundReport::alpha(Method::CorD, to_i64(best.0, "corollary bound")).rd(best.1, best.2);
    rep.params.j = Some(best.3);
    rep
}

/// Least `t >= 0` whose class is not certified non-effective by `certified`.
fn first_uncertified(w: &[i64], certified: impl Fn(i64) -> bool) -> i64 {
    // every degree below the largest multiplicity is certified by all tests
    let mut t = w.first().copied().unwrap_or(0);
    while certified(t) {
        t += 1;
    }
    t
}

/// Unload `F_t` against `C = d E0 - (E1 + ... + Er)` while `F.C < 0`.
fn unloading_certifies(w: &[i64], r: usize, d: i64, t: i64) -> bool {
    let mut v = w.to_vec();
    let mut ti = t;
    while ti >= v[0] && (ti as i128) * (d as i128) < sum_first(&v, r) {
        ti -= d;
        drop_prefix(&mut v, r);
    }
    ti < v[0]
}

/// Unloading with respect to `d E0 - (E1 + ... + Er)`.
pub fn unloading_alpha(z: &FatPointSpec, r: i64, d: i64) -> Result<BoundReport> {
    let w = z.sorted();
    check_rd(r, d, w.len())?;
    let value = if z.is_zero() {
        0
    } else {
        first_uncertified(&w, |t| unloading_certifies(&w, r as usize, d, t))
    };
    Ok(BoundReport::alpha(Method::Unloading, value).rd(r, d))
}

/// `mn = u r + rho` with `0 < rho <= r`.
fn u_rho(n: i64, m: i64, r: i64) -> (i128, i128) {
    let mn = n as i128 * m as i128;
    let u = ceil_div(mn, r as i128) - 1;
    (u, mn - u * r as i128)
}

fn check_uniform(n: i64, m: i64, r: i64, d: i64) -> Result<()> {
    precondition(n >= 1, format!("need at least one point, got n = {n}"))?;
    precondition(m >= 0, format!("multiplicity must be nonnegative, got {m}"))?;
    check_rd(r, d, n as usize)
}

/// Closed form of unloading for uniform `Z` when `2r >= n + d^2`.
pub fn unloading_alpha_formula(n: i64, m: i64, r: i64, d: i64) -> Result<BoundReport> {
    check_uniform(n, m, r, d)?;
    precondition(2 * r >= n + d * d, "formula needs 2r >= n + d^2")?;
    let value = if m == 0 {
        0
    } else {
        let (u, rho) = u_rho(n, m, r);
        let d = d as i128;
        1 + u * d + (d - 1).min(ceil_div(rho, d) - 1)
    };
    Ok(BoundReport::alpha(Method::UnloadingFormula, to_i64(value, "unloading formula")).rd(r, d))
}

/// Iterated unloading through the specializations `E1 - E2 - ... - Ei`,
/// `i = 3..n`; the bound is the final largest multiplicity.
pub fn roe_alpha(z: &FatPointSpec) -> BoundReport {
    let mut w = z.sorted();
    if w.len() < 3 {
        w.resize(w.len() + 3, 0);
    }
    for i1 in 2..w.len() {
        loop {
            let dot = w[0] as i128 - sum_first(&w[1..], i1);
            if dot >= 0 {
                break;
            }
            w[0] += 1;
            drop_prefix(&mut w[1..], i1);
        }
    }
    BoundReport::alpha(Method::Roe, w[0])
}

/// Modified unloading: `C` may also be removed when the restriction of the
/// class to `C` has no sections, which needs characteristic 0.
fn hr_alpha_certifies(w: &[i64], r: usize, d: i64, t: i64) -> bool {
    let g = (d as i128 - 1) * (d as i128 - 2) / 2;
    let d128 = d as i128;
    let mut v = w.to_vec();
    let mut ti = t as i128;
    loop {
        let dot = sum_first(&v, r);
        let negative_enough = ti * d128 - dot < g && ti >= d128 - 2;
        let too_few_sections = (ti + 1) * (ti + 2) <= 2 * dot && ti < d128 && ti >= 0;
        if !(negative_enough || too_few_sections) {
            break;
        }
        ti -= d128;
        drop_prefix(&mut v, r);
    }
    ti < v[0] as i128
}

pub fn hr_alpha(z: &FatPointSpec, r: i64, d: i64) -> Result<BoundReport> {
    let w = z.sorted();
    check_rd(r, d, w.len())?;
    let value = if z.is_zero() {
        0
    } else {
        first_uncertified(&w, |t| hr_alpha_certifies(&w, r as usize, d, t))
    };
    Ok(BoundReport::alpha(Method::ModifiedUnloading, value)
        .rd(r, d)
        .caveat(CHARACTERISTIC_ZERO))
}

/// Largest `s <= d - 1` with `(s+1)(s+2) <= 2 rho`.
fn hr_s(rho: i128, d: i128) -> i128 {
    let mut s = 0;
    while (s + 2) * (s + 3) <= 2 * rho && s + 1 < d {
        s += 1;
    }
    s
}

/// Modified unloading closed form for `2n >= 2r >= n + d^2`.
pub fn hr_alpha_formula_a(n: i64, m: i64, r: i64, d: i64) -> Result<BoundReport> {
    check_uniform(n, m, r, d)?;
    precondition(2 * r >= n + d * d, "formula (a) needs 2r >= n + d^2")?;
    let value = if m == 0 {
        0
    } else {
        let (u, rho) = u_rho(n, m, r);
        hr_s(rho, d as i128) + u * d as i128 + 1
    };
    Ok(
        BoundReport::alpha(Method::HrFormulaA, to_i64(value, "formula (a)"))
            .rd(r, d)
            .caveat(CHARACTERISTIC_ZERO),
    )
}

/// Modified unloading closed form for `d(d+1)/2 <= r <= min(n, d^2)`.
pub fn hr_alpha_formula_b(n: i64, m: i64, r: i64, d: i64) -> Result<BoundReport> {
    check_uniform(n, m, r, d)?;
    precondition(
        d * (d + 1) / 2 <= r && r <= d * d,
        "formula (b) needs d(d+1)/2 <= r <= d^2",
    )?;
    let value = if m == 0 {
        0
    } else {
        let (u, rho) = u_rho(n, m, r);
        let d = d as i128;
        let g = (d - 1) * (d - 2) / 2;
        let by_genus = crate::arith::floor_div(m as i128 * r as i128 + g - 1, d);
        1 + by_genus.min(hr_s(rho, d) + u * d)
    };
    Ok(
        BoundReport::alpha(Method::HrFormulaB, to_i64(value, "formula (b)"))
            .rd(r, d)
            .caveat(CHARACTERISTIC_ZERO),
    )
}

/// One more than the largest degree, scanning down from the expected alpha,
/// whose class lies outside the semigroup generated by exceptional classes
/// and `-K`.
pub fn psi_alpha_bound(z: &FatPointSpec) -> Result<BoundReport> {
    precondition(!z.is_zero(), "the Psi bound needs a nonzero scheme")?;
    let w = z.support_sorted();
    let mut t = find_alpha(z);
    while DivisorClass::new(t, w.clone()).in_psi() {
        t -= 1;
    }
    Ok(BoundReport::alpha(Method::Psi, t + 1))
}

/// Best unloading bound over all `1 <= r <= n` and `d` up to `ceil(sqrt r)`,
/// ties broken by smallest `r`, then smallest `d`.
pub fn best_search_alpha(z: &FatPointSpec) -> Result<BoundReport> {
    precondition(!z.is_zero(), "the search needs a nonzero scheme")?;
    let w = z.support_sorted();
    let n = w.len() as i64;
    let per_r: Vec<(i64, i64, i64)> = (1..=n)
        .into_par_iter()
        .map(|r| {
            let mut best = (0, 0, 0);
            let mut d = 0;
            while d * d < r {
                d += 1;
                let v = first_uncertified(&w, |t| unloading_certifies(&w, r as usize, d, t));
                if v > best.0 {
                    best = (v, r, d);
                }
            }
            best
        })
        .collect();
    let best = per_r
        .into_iter()
        .fold((0, 0, 0), |acc, b| if b.0 > acc.0 { b } else { acc });
    Ok(BoundReport::alpha(Method::BestUnloading, best.0).rd(best.1, best.2))
}

/// `floor(m sqrt n) + 1`, the value conjectured to bound alpha from below
/// for `n > 9` general points.
pub fn nagata_ref(n: i64, m: i64) -> i64 {
    assert!(n >= 1 && m >= 1, "nagata_ref needs n, m >= 1");
    to_i64(
        isqrt(m as i128 * m as i128 * n as i128) + 1,
        "Nagata reference",
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(m: &[i64]) -> FatPointSpec {
        FatPointSpec::new(m.to_vec()).unwrap()
    }

    fn u(n: usize, m: i64) -> FatPointSpec {
        FatPointSpec::uniform(n, m).unwrap()
    }

    const Z90: [i64; 11] = [90, 80, 70, 60, 50, 40, 40, 40, 30, 20, 10];

    fn q(v: &[i64]) -> Vec<Ratio<i64>> {
        v.iter().map(|&x| Ratio::from(x)).collect()
    }

    #[test]
    fn nef_examples() {
        let b = nef_test_bound(&z(&[5, 4, 3]), &q(&[1, 1, 1, 1]), 3, 2).unwrap();
        assert_eq!(b.value, 6);
        let b = nef_test_bound(&z(&[0, 0, 0]), &q(&[1, 1, 1, 1]), 3, 2).unwrap();
        assert_eq!(b.value, 0);
        let mut wts = vec![Ratio::from(19)];
        wts.extend(vec![Ratio::from(16); 22]);
        assert_eq!(nef_test_bound(&u(22, 3), &wts, 19, 4).unwrap().value, 14);
        // rational weights are cleared
        let half = vec![Ratio::new(1, 2); 4];
        assert_eq!(
            nef_test_bound(&z(&[5, 4, 3]), &half, 3, 2).unwrap().value,
            6
        );
        assert!(nef_test_bound(&z(&[5, 4, 3]), &q(&[1, 2, 1, 1]), 3, 2).is_err());
        assert!(nef_test_bound(&z(&[5, 4, 3]), &q(&[1, 1, 1, 1]), 4, 2).is_err());
        assert!(nef_test_bound(&z(&[5, 4, 3]), &q(&[1, 1, 1, 1]), 3, 1).is_err());
        assert!(nef_test_bound(&z(&[5, 4, 3]), &q(&[0, 0]), 3, 1).is_err());
    }

    #[test]
    fn corollary_examples() {
        assert_eq!(
            cor_bound(&u(22, 3), CorVariant::A, 19, 4, None)
                .unwrap()
                .value,
            14
        );
        assert_eq!(
            cor_bound(&u(22, 3), CorVariant::B, 14, 3, None)
                .unwrap()
                .value,
            14
        );
        assert_eq!(
            cor_bound(&z(&[5, 4, 3]), CorVariant::C, 3, 2, None)
                .unwrap()
                .value,
            6
        );
        assert!(cor_bound(&u(22, 3), CorVariant::A, 14, 3, None).is_err());
        assert!(cor_bound(&u(22, 3), CorVariant::D, 14, 3, None).is_err());
        assert!(cor_bound(&u(22, 3), CorVariant::D, 14, 3, Some(10)).is_err());
        assert_eq!(cor_d_best(&z(&Z90)).value, 173);
    }

    #[test]
    fn corollary_d_reduces_to_c_and_i() {
        let w = [9, 7, 5, 3, 1];
        let zz = z(&w);
        // j = 0 is part (d)(i): first d^2 multiplicities over d
        assert_eq!(
            cor_bound(&zz, CorVariant::D, 5, 2, Some(0)).unwrap().value,
            12
        );
        // j = d^2 spreads evenly: t = r + (r-4)(r)/4
        let b = cor_bound(&zz, CorVariant::D, 5, 2, Some(4)).unwrap().value;
        assert_eq!(b, ceil_div(4 * 25, 5 * 2) as i64);
    }

    #[test]
    fn best_rd() {
        assert_eq!(best_rd_a(22), (19, 4));
        assert_eq!(best_rd_b(22), (14, 3));
        assert_eq!(best_rd_b(16), (4, 1));
        assert_eq!(best_rd_a(16), (4, 1));
        assert_eq!(best_rd_a(1), (1, 1));
        assert_eq!(best_rd_b(1), (1, 1));
    }

    #[test]
    fn unloading_examples() {
        assert_eq!(unloading_alpha(&u(22, 3), 19, 4).unwrap().value, 15);
        assert_eq!(unloading_alpha(&u(22, 3), 14, 3).unwrap().value, 14);
        assert_eq!(unloading_alpha(&z(&[0, 0]), 1, 1).unwrap().value, 0);
        assert!(unloading_alpha(&u(3, 1), 4, 1).is_err());
        assert_eq!(unloading_alpha_formula(22, 3, 19, 4).unwrap().value, 15);
        assert_eq!(unloading_alpha_formula(22, 0, 19, 4).unwrap().value, 0);
        assert!(unloading_alpha_formula(22, 3, 14, 3).is_err());
    }

    #[test]
    fn roe_examples() {
        assert_eq!(roe_alpha(&z(&Z90)).value, 162);
        assert_eq!(roe_alpha(&z(&[4])).value, 4);
        assert_eq!(roe_alpha(&z(&[])).value, 0);
    }

    #[test]
    fn roe_on_simple_points_is_exact() {
        for n in 2..=30 {
            assert_eq!(roe_alpha(&u(n, 1)).value, find_alpha(&u(n, 1)), "n = {n}");
        }
    }

    #[test]
    fn modified_unloading_examples() {
        assert_eq!(hr_alpha(&z(&[0]), 1, 1).unwrap().value, 0);
        let b = hr_alpha(&u(20, 5), 16, 4).unwrap();
        assert!(b.value >= 21);
        assert_eq!(b.validity, vec![CHARACTERISTIC_ZERO.to_string()]);
        assert_eq!(hr_alpha_formula_b(20, 5, 16, 4).unwrap().value, 21);
        assert_eq!(hr_alpha_formula_a(20, 0, 20, 4).unwrap().value, 0);
        assert!(hr_alpha_formula_b(20, 5, 20, 4).is_err());
        assert!(hr_alpha_formula_a(20, 5, 16, 4).is_err());
    }

    #[test]
    fn psi_examples() {
        assert_eq!(psi_alpha_bound(&z(&Z90)).unwrap().value, 179);
        assert_eq!(psi_alpha_bound(&u(10, 2)).unwrap().value, 6);
        assert_eq!(psi_alpha_bound(&z(&[1])).unwrap().value, 1);
        assert!(psi_alpha_bound(&z(&[0])).is_err());
    }

    #[test]
    fn search_examples() {
        let b = best_search_alpha(&u(22, 3)).unwrap();
        assert_eq!((b.value, b.params.r, b.params.d), (15, Some(19), Some(4)));
        assert_eq!(best_search_alpha(&z(&[1])).unwrap().value, 1);
        assert!(best_search_alpha(&z(&Z90)).unwrap().value >= 173);
    }

    #[test]
    fn nagata_examples() {
        assert_eq!(nagata_ref(1000, 13), 412);
        assert_eq!(nagata_ref(9000, 13), 1234);
        assert_eq!(nagata_ref(4, 1), 3);
    }
}
