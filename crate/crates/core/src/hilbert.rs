//! Expected dimensions, Hilbert functions, alpha, beta and tau.
//!
//! For at most nine general points `expected_dim` is the true dimension of
//! the linear system. Beyond nine it is the value predicted by the SHGH
//! conjecture; in that range `find_alpha` is an upper bound and `find_tau`
//! a lower bound for the true values, provided the conjecture holds.

use num_rational::Ratio;

use crate::arith::{ceil_div, to_i64};
use crate::error::{precondition, Error, Result};
use crate::lattice::{psi_decompose, reduce_in_place, DivisorClass, FatPointSpec};

/// Whether computed values are theorems or conjectural predictions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Exactness {
    Exact,
    ShghConjectural,
}

impl Exactness {
    pub fn for_points(n: usize) -> Self {
        if n <= 9 {
            Exactness::Exact
        } else {
            Exactness::ShghConjectural
        }
    }

    /// Exactness for a scheme, counting only points of positive multiplicity.
    pub fn of(z: &FatPointSpec) -> Self {
        Exactness::for_points(z.support_size())
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Exactness::Exact => "exact",
            Exactness::ShghConjectural => "shgh-conjectural",
        }
    }
}

/// `(t^2 + 3t + 2 - sum m_i(m_i+1)) / 2`.
pub fn hilbert_polynomial(z: &FatPointSpec, t: i64) -> i64 {
    let t = t as i128;
    to_i64(
        (t + 1) * (t + 2) / 2 - z.conditions() as i128,
        "Hilbert polynomial",
    )
}

fn chi_numerator(d: i64, mults: &[i64]) -> i128 {
    let d = d as i128;
    let mut acc = (d + 1) * (d + 2);
    for &m in mults {
        let m = m as i128;
        acc -= m * (m + 1);
    }
    acc
}

/// Expected dimension `e(F)` of the linear system of `F`.
pub fn expected_dim(f: &DivisorClass) -> i64 {
    let mut w = f.padded(3);
    reduce_in_place(&mut w);
    if w.degree < 0 {
        return 0;
    }
    let mut w = w.clamp_nonneg();
    reduce_in_place(&mut w);
    if w.degree < 0 {
        return 0;
    }
    let w = w.clamp_nonneg();
    let h = chi_numerator(w.degree, &w.mults) / 2;
    to_i64(h.max(0), "expected dimension")
}

/// `e(F) - chi(F)`, the expected `h^1`.
pub fn h1_dim(f: &DivisorClass) -> Result<i64> {
    precondition(f.degree >= 0, format!("degree of {f} must be nonnegative"))?;
    let chi = to_i64(
        chi_numerator(f.degree, &f.mults) / 2,
        "Euler characteristic",
    );
    let h1 = expected_dim(f) - chi;
    if h1 < 0 {
        return Err(Error::Invariant(format!("negative h1 ({h1}) for {f}")));
    }
    Ok(h1)
}

/// Least `t >= 0` with `e(F_t(Z)) > 0`.
pub fn find_alpha(z: &FatPointSpec) -> i64 {
    let w = z.support_sorted();
    if w.is_empty() {
        return 0;
    }
    // below the largest multiplicity there is nothing
    let mut f = DivisorClass::new(w[0], w);
    while expected_dim(&f) < 1 {
        f.degree += 1;
    }
    f.degree
}

/// Least `t >= 0` with `e(F_t(Z))` equal to the Hilbert polynomial.
pub fn find_tau(z: &FatPointSpec) -> i64 {
    let alpha = find_alpha(z);
    let w = z.support_sorted();
    let zz = FatPointSpec::new(w.clone()).expect("sorted support is nonnegative");
    let mut f = DivisorClass::new((alpha - 1).max(0), w);
    while expected_dim(&f) != hilbert_polynomial(&zz, f.degree) {
        f.degree += 1;
    }
    f.degree
}

const ALPHA_SLOPES: [(i64, i64); 9] = [
    (1, 1),
    (1, 1),
    (3, 2),
    (2, 1),
    (2, 1),
    (12, 5),
    (21, 8),
    (48, 17),
    (3, 1),
];

/// `ceil(c_n m)` for `1 <= n <= 9`.
pub fn uniform_alpha_closed_form(n: usize, m: i64) -> Result<i64> {
    precondition(
        (1..=9).contains(&n),
        format!("closed form needs 1 <= n <= 9, got n = {n}"),
    )?;
    precondition(m >= 0, format!("multiplicity must be nonnegative, got {m}"))?;
    let c = Ratio::new(ALPHA_SLOPES[n - 1].0, ALPHA_SLOPES[n - 1].1);
    Ok((c * m).ceil().to_integer())
}

/// The slope `c_n` with `alpha(n; m) = ceil(c_n m)` for `n <= 9`.
pub fn alpha_slope(n: usize) -> Option<Ratio<i64>> {
    (1..=9)
        .contains(&n)
        .then(|| Ratio::new(ALPHA_SLOPES[n - 1].0, ALPHA_SLOPES[n - 1].1))
}

/// Closed-form tau for `m` uniform points, `1 <= n <= 9`.
pub fn uniform_tau_closed_form(n: usize, m: i64) -> Result<i64> {
    precondition(
        (1..=9).contains(&n),
        format!("closed form needs 1 <= n <= 9, got n = {n}"),
    )?;
    precondition(m >= 0, format!("multiplicity must be nonnegative, got {m}"))?;
    let m = m as i128;
    let t = match n {
        1 => m - 1,
        2 | 3 => 2 * m - 1,
        4 => 2 * m,
        5 | 6 => ceil_div(5 * m - 1, 2),
        7 => ceil_div(8 * m - 1, 3),
        8 => ceil_div(17 * m - 1, 6),
        _ => 3 * m,
    };
    Ok(to_i64(t.max(0), "tau"))
}

/// Least `t >= 0` where `2 P(t)` compared with zero satisfies `accept`.
fn least_quadratic_root(n: usize, m: i64, accept: impl Fn(i128) -> bool) -> i64 {
    let c = n as i128 * m as i128 * (m as i128 + 1);
    let val = |t: i128| (t + 1) * (t + 2) - c;
    let mut t = (crate::arith::isqrt(c) - 2).max(0);
    while t > 0 && accept(val(t - 1)) {
        t -= 1;
    }
    while !accept(val(t)) {
        t += 1;
    }
    to_i64(t, "uniform root")
}

/// Expected alpha for `n` points of multiplicity `m`, without building `Z`.
pub fn uniform_alpha(n: usize, m: i64) -> Result<i64> {
    precondition(m >= 0, format!("multiplicity must be nonnegative, got {m}"))?;
    if n == 0 || m == 0 {
        return Ok(0);
    }
    if n <= 9 {
        return uniform_alpha_closed_form(n, m);
    }
    Ok(least_quadratic_root(n, m, |v| v > 0))
}

/// Expected tau for `n` points of multiplicity `m`, without building `Z`.
pub fn uniform_tau(n: usize, m: i64) -> Result<i64> {
    precondition(m >= 0, format!("multiplicity must be nonnegative, got {m}"))?;
    if n == 0 || m == 0 {
        return Ok(0);
    }
    if n <= 9 {
        return uniform_tau_closed_form(n, m);
    }
    Ok(least_quadratic_root(n, m, |v| v >= 0))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HilbertTable {
    pub alpha: i64,
    pub tau: i64,
    /// `(t, e(F_t(Z)))`, consecutive degrees.
    pub rows: Vec<(i64, i64)>,
    pub exactness: Exactness,
    /// `sum m_i(m_i+1)/2`, so the table can be extended by the polynomial.
    pub conditions: i64,
}

impl HilbertTable {
    /// Value at any degree: the stored row, 0 below `alpha`, the Hilbert
    /// polynomial from `tau` on.
    pub fn value(&self, t: i64) -> Option<i64> {
        if let Some(&(_, v)) = self.rows.iter().find(|(s, _)| *s == t) {
            return Some(v);
        }
        if t < self.alpha {
            Some(0)
        } else if t >= self.tau {
            let tt = t as i128;
            Some(to_i64(
                (tt + 1) * (tt + 2) / 2 - self.conditions as i128,
                "Hilbert polynomial",
            ))
        } else {
            None
        }
    }

    pub fn first_degree(&self) -> Option<i64> {
        self.rows.first().map(|r| r.0)
    }

    pub fn last_degree(&self) -> Option<i64> {
        self.rows.last().map(|r| r.0)
    }
}

/// Expected Hilbert function over `window` (default `[alpha-1, tau+1]`).
pub fn hilbert_table(z: &FatPointSpec, window: Option<(i64, i64)>) -> Result<HilbertTable> {
    let alpha = find_alpha(z);
    let tau = find_tau(z);
    let (lo, hi) = window.unwrap_or((alpha - 1, tau + 1));
    precondition(
        lo <= hi,
        format!("window lower end {lo} exceeds upper end {hi}"),
    )?;
    let rows = (lo..=hi)
        .map(|t| (t, expected_dim(&z.class_at(t))))
        .collect();
    Ok(HilbertTable {
        alpha,
        tau,
        rows,
        exactness: Exactness::of(z),
        conditions: z.conditions(),
    })
}

/// Least `t >= alpha` at which the expected linear system has no fixed
/// curve and moves in at least a pencil, so its base locus is finite.
/// Conditional on SHGH beyond nine points.
pub fn beta_expected(z: &FatPointSpec) -> Result<i64> {
    precondition(!z.is_zero(), "beta needs a nonzero scheme")?;
    let w = z.support_sorted();
    let mut t = find_alpha(z);
    loop {
        let f = DivisorClass::new(t, w.clone());
        if expected_dim(&f) >= 2 && psi_decompose(&f)?.fixed_part_is_empty() {
            return Ok(t);
        }
        t += 1;
    }
}
