//! Graded Betti numbers of fat point ideals at up to eight general points,
//! classical bounds on the number of generators, and the predicted shape
//! of the resolution for quasi-uniform schemes.

use crate::error::{precondition, Error, Result};
use crate::hilbert::{expected_dim, find_alpha, find_tau, hilbert_polynomial, HilbertTable};
use crate::lattice::{DivisorClass, FatPointSpec};

/// `lambda <= Lambda` are min and max of `m_C` and `deg C - m_C`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExcInvariants {
    pub lambda: i64,
    pub big_lambda: i64,
    pub m_c: i64,
}

pub fn exc_invariants(c: &DivisorClass) -> Result<ExcInvariants> {
    if !c.is_exceptional() {
        return Err(Error::NotExceptional(c.to_string()));
    }
    if c.mults.iter().filter(|&&m| m != 0).count() > 8 {
        return Err(Error::Precondition(format!(
            "{c} involves more than 8 points"
        )));
    }
    if c.degree == 0 {
        return Ok(ExcInvariants {
            lambda: 0,
            big_lambda: 0,
            m_c: 0,
        });
    }
    let m_c = c.mults.iter().copied().max().unwrap_or(0);
    let other = c.degree - m_c;
    Ok(ExcInvariants {
        lambda: m_c.min(other),
        big_lambda: m_c.max(other),
        m_c,
    })
}

/// Sorted representatives of the exceptional orbits on eight points, in
/// the order they are tested.
const REPRESENTATIVES: [(i64, [i64; 8]); 6] = [
    (6, [3, 2, 2, 2, 2, 2, 2, 2]),
    (5, [2, 2, 2, 2, 2, 2, 1, 1]),
    (4, [2, 2, 2, 1, 1, 1, 1, 1]),
    (3, [2, 1, 1, 1, 1, 1, 1, 0]),
    (2, [1, 1, 1, 1, 1, 0, 0, 0]),
    (1, [1, 1, 0, 0, 0, 0, 0, 0]),
];

fn representatives() -> Vec<(DivisorClass, i64)> {
    REPRESENTATIVES
        .iter()
        .map(|(d, m)| {
            let c = DivisorClass::new(*d, m.to_vec());
            let lambda = exc_invariants(&c)
                .expect("representatives are exceptional")
                .lambda;
            (c, lambda)
        })
        .collect()
}

fn eight_slots(f: &DivisorClass) -> Result<Vec<i64>> {
    let mut w: Vec<i64> = f
        .mults
        .iter()
        .map(|&m| m.max(0))
        .filter(|&m| m > 0)
        .collect();
    if w.len() > 8 {
        return Err(Error::Precondition(format!(
            "{f} has {} nonzero multiplicities; at most 8 are supported",
            w.len()
        )));
    }
    w.resize(8, 0);
    Ok(w)
}

/// Dimension of the kernel of `mu: H^0(F) (x) H^0(E0) -> H^0(F + E0)` for a
/// class on at most eight general points.
pub fn ker_mu_dim(f: &DivisorClass) -> Result<i64> {
    let reps = representatives();
    let mut w = eight_slots(f)?;
    let mut d = f.degree;
    loop {
        for m in w.iter_mut() {
            *m = (*m).max(0);
        }
        w.sort_by(|a, b| b.cmp(a));
        let cur = DivisorClass::new(d, w.clone());
        if expected_dim(&cur) == 0 {
            return Ok(0);
        }
        // F.C < lambda_C: the kernel does not change when C is removed
        let hit = reps
            .iter()
            .find(|(c, lambda)| cur.intersection(c) < *lambda);
        match hit {
            Some((c, _)) => {
                d -= c.degree;
                for (m, cm) in w.iter_mut().zip(&c.mults) {
                    *m -= cm;
                }
            }
            None => break,
        }
    }
    if d - w[0] - w[1] == 0 {
        let mut a = w.clone();
        a[0] -= 1;
        let mut b = w.clone();
        b[1] -= 1;
        return Ok(
            expected_dim(&DivisorClass::new(d - 1, a)) + expected_dim(&DivisorClass::new(d - 1, b))
        );
    }
    let r = w[7];
    if d == 8 * r + 3 && w[..7].iter().all(|&m| m == 3 * r + 1) {
        return Ok(r + 1);
    }
    let here = expected_dim(&DivisorClass::new(d, w.clone()));
    let next = expected_dim(&DivisorClass::new(d + 1, w));
    Ok((3 * here - next).max(0))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BettiRow {
    pub t: i64,
    /// Hilbert function of the ideal in degree t.
    pub h: i64,
    /// Minimal generators in degree t.
    pub nu: i64,
    /// Minimal first syzygies in degree t.
    pub s: i64,
    /// `dim ker(mu_t)`, multiplication by linear forms out of degree t.
    pub ker: i64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BettiTable {
    pub alpha: i64,
    pub tau: i64,
    pub conditions: i64,
    pub rows: Vec<BettiRow>,
}

fn third_difference(h: impl Fn(i64) -> i64, t: i64) -> i64 {
    h(t) - 3 * h(t - 1) + 3 * h(t - 2) - h(t - 3)
}

impl BettiTable {
    pub fn row(&self, t: i64) -> Option<&BettiRow> {
        self.rows.iter().find(|r| r.t == t)
    }

    /// Hilbert function with the zero / polynomial extension outside the rows.
    pub fn h(&self, t: i64) -> i64 {
        match (self.row(t), self.rows.first()) {
            (Some(r), _) => r.h,
            (None, Some(first)) if t < first.t => 0,
            _ => {
                let tt = t as i128;
                ((tt + 1) * (tt + 2) / 2 - self.conditions as i128) as i64
            }
        }
    }

    pub fn nu(&self, t: i64) -> i64 {
        self.row(t).map_or(0, |r| r.nu)
    }

    pub fn s(&self, t: i64) -> i64 {
        self.row(t).map_or(0, |r| r.s)
    }

    /// `dim cok(mu_t) = nu_{t+1}`.
    pub fn cok(&self, t: i64) -> i64 {
        self.nu(t + 1)
    }

    pub fn total_generators(&self) -> i64 {
        self.rows.iter().map(|r| r.nu).sum()
    }

    /// Check the identities every resolution of a fat point ideal satisfies.
    pub fn check_invariants(&self) -> Result<()> {
        let fail = |what: String| Err(Error::Invariant(format!("Betti table: {what}")));
        for r in &self.rows {
            let d3 = third_difference(|t| self.h(t), r.t);
            if r.nu - r.s != d3 {
                return fail(format!(
                    "nu - s = {} but third difference is {d3} at t = {}",
                    r.nu - r.s,
                    r.t
                ));
            }
            if r.nu < 0 || r.s < 0 {
                return fail(format!("negative entry at t = {}", r.t));
            }
            if r.t > self.tau + 1 && r.nu != 0 {
                return fail(format!("generator in degree {} beyond tau + 1", r.t));
            }
        }
        if self.nu(self.alpha) != self.h(self.alpha) {
            return fail("nu(alpha) differs from h(alpha)".into());
        }
        if self.total_generators() > self.alpha + 1 {
            return fail(format!(
                "{} generators exceed alpha + 1",
                self.total_generators()
            ));
        }
        Ok(())
    }
}

/// Betti numbers of the ideal of `Z` for at most eight general points, over
/// the degrees `alpha-2 ..= tau+2`.
pub fn betti_table(z: &FatPointSpec) -> Result<BettiTable> {
    precondition(
        z.support_size() <= 8,
        format!(
            "resolution needs at most 8 points, got {}",
            z.support_size()
        ),
    )?;
    let alpha = find_alpha(z);
    let tau = find_tau(z);
    let degrees: Vec<i64> = (alpha - 2..=tau + 2).collect();
    let h: Vec<i64> = degrees
        .iter()
        .map(|&t| expected_dim(&z.class_at(t)))
        .collect();
    let mut ker = Vec::with_capacity(degrees.len());
    for &t in &degrees {
        ker.push(if t < alpha {
            0
        } else {
            ker_mu_dim(&z.class_at(t))?
        });
    }
    let hv = |i: isize| if i < 0 { 0 } else { h[i as usize] };
    let mut rows = Vec::with_capacity(degrees.len());
    for (i, &t) in degrees.iter().enumerate() {
        let ii = i as isize;
        let nu = if i < 2 {
            0
        } else {
            h[i] - 3 * h[i - 1] + ker[i - 1]
        };
        let s = if i < 3 {
            0
        } else {
            nu - (hv(ii) - 3 * hv(ii - 1) + 3 * hv(ii - 2) - hv(ii - 3))
        };
        rows.push(BettiRow {
            t,
            h: h[i],
            nu,
            s,
            ker: ker[i],
        });
    }
    Ok(BettiTable {
        alpha,
        tau,
        conditions: z.conditions(),
        rows,
    })
}

/// Predicted resolution `0 -> R[-a-2]^d (+) R[-a-1]^c -> R[-a-1]^b (+) R[-a]^a`
/// shape data for quasi-uniform schemes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QuasiUniformResolution {
    pub alpha: i64,
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub d: i64,
}

/// Numbers of the resolution predicted for quasi-uniform `Z` (at least nine
/// points, the nine largest multiplicities equal), conditional on the
/// maximal rank expectation.
pub fn quasi_uniform_resolution(z: &FatPointSpec) -> Result<QuasiUniformResolution> {
    let w = z.sorted();
    precondition(
        w.len() >= 9,
        format!("quasi-uniform needs at least 9 points, got {}", w.len()),
    )?;
    precondition(
        w[0] == w[8],
        format!("quasi-uniform needs m1 = m9, got {} and {}", w[0], w[8]),
    )?;
    if z.is_zero() {
        return Ok(QuasiUniformResolution {
            alpha: 0,
            a: 1,
            b: 0,
            c: 0,
            d: 0,
        });
    }
    let h = |t: i64| hilbert_polynomial(z, t).max(0);
    let mut alpha = 0;
    while hilbert_polynomial(z, alpha) <= 0 {
        alpha += 1;
    }
    let a = h(alpha);
    let next = h(alpha + 1);
    let b = (next - 3 * a).max(0);
    let c = (3 * a - next).max(0);
    Ok(QuasiUniformResolution {
        alpha,
        a,
        b,
        c,
        d: a + b - c - 1,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NuBounds {
    pub t: i64,
    pub lower: i64,
    pub upper: i64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassicalBounds {
    pub rows: Vec<NuBounds>,
    /// Total number of generators is at most `alpha + 1`.
    pub total_at_most_alpha_plus_one: i64,
    /// ... and at most `alpha + beta - tau`.
    pub total_at_most_alpha_beta_tau: i64,
}

impl ClassicalBounds {
    pub fn at(&self, t: i64) -> Option<NuBounds> {
        self.rows.iter().copied().find(|r| r.t == t)
    }
}

/// Bounds on the generator counts from the Hilbert function and the
/// characters alpha, beta, tau alone.
pub fn classical_nu_bounds(
    table: &HilbertTable,
    alpha: i64,
    beta: i64,
    tau: i64,
) -> Result<ClassicalBounds> {
    precondition(
        alpha == table.alpha,
        format!("alpha {alpha} disagrees with the table ({})", table.alpha),
    )?;
    precondition(
        tau == table.tau,
        format!("tau {tau} disagrees with the table ({})", table.tau),
    )?;
    precondition(
        alpha <= beta && beta <= tau + 1,
        format!("need alpha <= beta <= tau + 1, got {alpha}, {beta}, {tau}"),
    )?;
    let covered = table.first_degree().is_some_and(|lo| lo <= alpha)
        && table.last_degree().is_some_and(|hi| hi >= tau);
    precondition(covered, "table must cover degrees alpha through tau")?;

    let h = |t: i64| {
        table
            .value(t)
            .expect("table covers the gap between alpha and tau")
    };
    let eps = |t: i64| {
        if t < alpha {
            0
        } else if t < beta {
            1
        } else if t <= tau {
            2
        } else {
            0
        }
    };
    let rows = (alpha - 1..=tau + 2)
        .map(|t| {
            let d2 = h(t) - 2 * h(t - 1) + h(t - 2);
            let upper = if t >= alpha { d2 - eps(t - 1) } else { 0 };
            let lower = third_difference(h, t).max(i64::from(t == beta)).max(0);
            NuBounds { t, lower, upper }
        })
        .collect();
    Ok(ClassicalBounds {
        rows,
        total_at_most_alpha_plus_one: alpha + 1,
        total_at_most_alpha_beta_tau: alpha + beta - tau,
    })
}

/// Bounds `(lower, upper)` on `nu_{t+1}(Z)` from comparing `Z` with `Z - p1`
/// and `Z + p1`, where `p1` is a point of largest multiplicity.
pub fn mybound_nu(z: &FatPointSpec, t: i64) -> Result<(i64, i64)> {
    let w = z.sorted();
    precondition(
        w.first().is_some_and(|&m| m > 0),
        "the scheme must have a point of positive multiplicity",
    )?;
    let mut less = w.clone();
    less[0] -= 1;
    let mut more = w.clone();
    more[0] += 1;
    let h = |m: &[i64], t: i64| expected_dim(&DivisorClass::new(t, m.to_vec()));
    let base = h(&w, t + 1) - 3 * h(&w, t) + h(&less, t - 1);
    Ok((base.max(0), base + h(&more, t)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hilbert::{beta_expected, hilbert_table};

    fn z(m: &[i64]) -> FatPointSpec {
        FatPointSpec::new(m.to_vec()).unwrap()
    }

    fn c(d: i64, m: &[i64]) -> DivisorClass {
        DivisorClass::new(d, m.to_vec())
    }

    #[test]
    fn invariants_of_exceptionals() {
        let e = exc_invariants(&DivisorClass::exceptional_curve(2, 8)).unwrap();
        assert_eq!((e.lambda, e.big_lambda), (0, 0));
        let e = exc_invariants(&c(1, &[1, 1])).unwrap();
        assert_eq!((e.lambda, e.big_lambda, e.m_c), (0, 1, 1));
        let e = exc_invariants(&c(6, &[3, 2, 2, 2, 2, 2, 2, 2])).unwrap();
        assert_eq!((e.lambda, e.big_lambda), (3, 3));
        assert!(exc_invariants(&c(1, &[1])).is_err());
    }

    #[test]
    fn representative_thresholds() {
        let lambdas: Vec<i64> = representatives().iter().map(|r| r.1).collect();
        assert_eq!(lambdas, vec![3, 2, 2, 1, 1, 0]);
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(ker_mu_dim(&c(11, &[4, 4, 4, 4, 4, 4, 4, 1])).unwrap(), 2);
        assert_eq!(ker_mu_dim(&c(7, &[3, 3, 3, 3, 3, 0, 0, 0])).unwrap(), 5);
        assert_eq!(ker_mu_dim(&c(1, &[1, 1, 1])).unwrap(), 0);
        // conics through two points: 12 products onto the 8 cubics
        assert_eq!(ker_mu_dim(&c(2, &[1, 1])).unwrap(), 4);
        assert!(ker_mu_dim(&c(20, &[1; 9])).is_err());
        // padding and order do not matter
        assert_eq!(ker_mu_dim(&c(7, &[0, 3, 3, 0, 3, 3, 3])).unwrap(), 5);
    }

    #[test]
    fn five_triple_points() {
        let bt = betti_table(&z(&[3, 3, 3, 3, 3])).unwrap();
        bt.check_invariants().unwrap();
        assert_eq!(bt.alpha, 6);
        assert_eq!(bt.tau, 7);
        assert_eq!(bt.nu(8), 2);
        assert_eq!(bt.nu(6), 1);
        assert_eq!(bt.nu(7), 3);
    }

    #[test]
    fn one_point() {
        let bt = betti_table(&z(&[1])).unwrap();
        bt.check_invariants().unwrap();
        assert_eq!(bt.nu(1), 2);
        assert_eq!(bt.s(2), 1);
        for r in &bt.rows {
            if r.t != 1 {
                assert_eq!(r.nu, 0);
            }
            if r.t != 2 {
                assert_eq!(r.s, 0);
            }
        }
    }

    #[test]
    fn special_eight_point_case() {
        let zz = z(&[4, 4, 4, 4, 4, 4, 4, 1]);
        let bt = betti_table(&zz).unwrap();
        bt.check_invariants().unwrap();
        assert_eq!(bt.row(11).unwrap().ker, 2);
        assert_eq!(bt.cok(11), 1);
        assert_eq!(bt.nu(12), bt.h(12) - 3 * bt.h(11) + 2);
        assert!(betti_table(&FatPointSpec::uniform(9, 1).unwrap()).is_err());
    }

    #[test]
    fn quasi_uniform_examples() {
        let q = quasi_uniform_resolution(&FatPointSpec::uniform(20, 5).unwrap()).unwrap();
        assert_eq!(
            q,
            QuasiUniformResolution {
                alpha: 24,
                a: 25,
                b: 0,
                c: 24,
                d: 0
            }
        );
        let q = quasi_uniform_resolution(&FatPointSpec::uniform(9, 1).unwrap()).unwrap();
        assert_eq!(
            q,
            QuasiUniformResolution {
                alpha: 3,
                a: 1,
                b: 3,
                c: 0,
                d: 3
            }
        );
        let q = quasi_uniform_resolution(&FatPointSpec::uniform(10, 0).unwrap()).unwrap();
        assert_eq!(
            q,
            QuasiUniformResolution {
                alpha: 0,
                a: 1,
                b: 0,
                c: 0,
                d: 0
            }
        );
        assert!(quasi_uniform_resolution(&FatPointSpec::uniform(8, 2).unwrap()).is_err());
        assert!(quasi_uniform_resolution(&z(&[2, 2, 2, 2, 2, 2, 2, 2, 1, 1])).is_err());
    }

    #[test]
    fn classical_bounds_five_triple_points() {
        let zz = z(&[3, 3, 3, 3, 3]);
        let table = hilbert_table(&zz, None).unwrap();
        let beta = beta_expected(&zz).unwrap();
        let b = classical_nu_bounds(&table, table.alpha, beta, table.tau).unwrap();
        let at8 = b.at(8).unwrap();
        assert_eq!((at8.lower, at8.upper), (1, 3));
        assert_eq!(b.total_at_most_alpha_plus_one, 7);
        assert!(classical_nu_bounds(&table, table.alpha, table.tau + 2, table.tau).is_err());
        assert!(classical_nu_bounds(&table, table.alpha + 1, beta, table.tau).is_err());
    }

    #[test]
    fn classical_bounds_one_point() {
        let zz = z(&[1]);
        let table = hilbert_table(&zz, None).unwrap();
        let b = classical_nu_bounds(&table, 1, beta_expected(&zz).unwrap(), table.tau).unwrap();
        let at1 = b.at(1).unwrap();
        assert!(at1.lower <= 2 && 2 <= at1.upper);
        let at2 = b.at(2).unwrap();
        assert!(at2.lower <= 0 && 0 <= at2.upper);
    }

    #[test]
    fn lemma_bounds() {
        assert_eq!(mybound_nu(&z(&[1]), 1).unwrap(), (0, 0));
        let (lo, hi) = mybound_nu(&z(&[3, 3, 3, 3, 3]), 7).unwrap();
        assert!(lo <= 2 && 2 <= hi);
        assert_eq!(mybound_nu(&z(&[5, 5]), 2).unwrap(), (0, 0));
        assert!(mybound_nu(&z(&[0, 0]), 2).is_err());
        assert!(mybound_nu(&z(&[0, 1]), 2).is_ok());
    }
}
