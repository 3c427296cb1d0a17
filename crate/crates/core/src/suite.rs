//! Every applicable bound for a scheme, in a fixed order.
//!
//! Methods run in parallel; the output order never depends on scheduling.
//! Methods whose side conditions fail for the given scheme are left out.

use num_rational::Ratio;
use rayon::prelude::*;

use crate::alpha::{self, best_rd_a, best_rd_b};
use crate::arith::{ceil_sqrt, isqrt};
use crate::error::Result;
use crate::lattice::FatPointSpec;
use crate::report::BoundReport;
use crate::tau;

type Job<'a> = Box<dyn Fn() -> Vec<BoundReport> + Send + Sync + 'a>;

/// `(n, m)` when all positive multiplicities are equal to `m`.
pub fn uniform_shape(z: &FatPointSpec) -> Option<(i64, i64)> {
    let w = z.support_sorted();
    match (w.first(), w.last()) {
        (Some(&a), Some(&b)) if a == b => Some((w.len() as i64, a)),
        _ => None,
    }
}

fn keep(r: Result<BoundReport>) -> Vec<BoundReport> {
    r.into_iter().collect()
}

/// Larger value wins; ties keep the first.
fn best_of(reports: Vec<Result<BoundReport>>, larger: bool) -> Vec<BoundReport> {
    let mut best: Option<BoundReport> = None;
    for rep in reports.into_iter().flatten() {
        let better = match &best {
            None => true,
            Some(b) if larger => rep.value > b.value,
            Some(b) => rep.value < b.value,
        };
        if better {
            best = Some(rep);
        }
    }
    best.into_iter().collect()
}

fn run(jobs: Vec<Job<'_>>) -> Vec<BoundReport> {
    jobs.par_iter()
        .map(|job| job())
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect()
}

/// Parameters used for the uniform closed forms: `d = floor(sqrt n)`,
/// `r` least with `r^2 >= d^2 n`.
pub fn formula_rd(n: i64) -> (i64, i64) {
    let d = isqrt(n as i128);
    (ceil_sqrt(d * d * n as i128) as i64, d as i64)
}

/// All lower bounds on alpha. The exhaustive searches over `(r, d)` run
/// only for non-uniform schemes, where no closed form is available.
pub fn alpha_suite(z: &FatPointSpec) -> Vec<BoundReport> {
    let n = z.support_size() as i64;
    let shape = uniform_shape(z);
    let mut jobs: Vec<Job> = vec![
        Box::new(|| keep(alpha::psi_alpha_bound(z))),
        Box::new(|| vec![alpha::roe_alpha(z)]),
    ];
    if n == 0 {
        return run(jobs);
    }
    let (ra, da) = best_rd_a(n);
    let (rb, db) = best_rd_b(n);
    jobs.push(Box::new(|| keep(alpha::cor_a_best(z))));
    jobs.push(Box::new(|| keep(alpha::cor_b_best(z))));
    if shape.is_none() {
        jobs.push(Box::new(|| vec![alpha::cor_d_best(z)]));
    }
    jobs.push(Box::new(move || keep(alpha::unloading_alpha(z, ra, da))));
    if let Some((n, m)) = shape {
        let (rf, df) = formula_rd(n);
        jobs.push(Box::new(move || {
            keep(alpha::unloading_alpha_formula(n, m, ra, da))
        }));
        jobs.push(Box::new(move || {
            keep(alpha::hr_alpha_formula_a(n, m, rf, df))
        }));
        jobs.push(Box::new(move || {
            keep(alpha::hr_alpha_formula_b(n, m, df * df, df))
        }));
    }
    jobs.push(Box::new(move || {
        best_of(
            vec![alpha::hr_alpha(z, ra, da), alpha::hr_alpha(z, rb, db)],
            true,
        )
    }));
    if shape.is_none() {
        jobs.push(Box::new(|| keep(alpha::best_search_alpha(z))));
    }
    run(jobs)
}

/// All upper bounds on tau.
pub fn tau_suite(z: &FatPointSpec) -> Vec<BoundReport> {
    let n = z.support_size() as i64;
    if n == 0 {
        return Vec::new();
    }
    let shape = uniform_shape(z);
    let padded = if z.len() < 2 {
        FatPointSpec::new(z.sorted().into_iter().chain([0]).collect()).ok()
    } else {
        Some(z.clone())
    };
    let mut jobs: Vec<Job> = vec![
        Box::new(|| keep(tau::hirschowitz_tau(z))),
        Box::new(|| keep(tau::gimigliano_tau(z))),
        Box::new(|| keep(tau::catalisano_tau(z))),
        Box::new(move || {
            padded
                .as_ref()
                .map(|p| keep(tau::roe_tau(p)))
                .unwrap_or_default()
        }),
    ];
    if let Some((n, m)) = shape {
        let (rf, df) = formula_rd(n);
        jobs.push(Box::new(move || keep(tau::ballico_tau(n, m))));
        jobs.push(Box::new(move || keep(tau::xu_tau(n, m))));
        jobs.push(Box::new(move || keep(tau::hhf_tau(n, m))));
        jobs.push(Box::new(move || keep(tau::segre_tau(n, m))));
        jobs.push(Box::new(move || keep(tau::cubic_tau(n, m))));
        jobs.push(Box::new(move || keep(tau::hr_tau_formula_a(n, m, rf, df))));
        jobs.push(Box::new(move || {
            keep(tau::hr_tau_formula_b(n, m, df * df, df))
        }));
    }
    let (ra, da) = best_rd_a(n);
    let (rb, db) = best_rd_b(n);
    jobs.push(Box::new(move || {
        best_of(vec![tau::hr_tau(z, ra, da), tau::hr_tau(z, rb, db)], false)
    }));
    if let Some((n, m)) = shape {
        // alpha >= c m holds with c = n d / r for (a) and c = r / d for (b)
        let ca = Ratio::new(n * da, ra);
        let cb = Ratio::new(rb, db);
        jobs.push(Box::new(move || {
            best_of(vec![tau::ran_tau(n, m, ca), tau::ran_tau(n, m, cb)], false)
        }));
    }
    run(jobs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::report::Method;

    fn value(reports: &[BoundReport], m: Method) -> Option<i64> {
        reports.iter().find(|r| r.method == m).map(|r| r.value)
    }

    #[test]
    fn uniform_suite_contents() {
        let z = FatPointSpec::uniform(22, 3).unwrap();
        let a = alpha_suite(&z);
        assert_eq!(value(&a, Method::Unloading), Some(15));
        assert_eq!(value(&a, Method::CorA), Some(14));
        assert_eq!(value(&a, Method::CorD), None);
        let t = tau_suite(&z);
        assert_eq!(value(&t, Method::Ran), Some(16));
        assert!(value(&t, Method::Segre).is_some());
    }

    #[test]
    fn order_is_stable() {
        let z = FatPointSpec::new(vec![5, 4, 3, 3, 2, 1]).unwrap();
        let first: Vec<Method> = alpha_suite(&z).iter().map(|r| r.method).collect();
        for _ in 0..3 {
            let again: Vec<Method> = alpha_suite(&z).iter().map(|r| r.method).collect();
            assert_eq!(first, again);
        }
        assert_eq!(first[0], Method::Psi);
        assert_eq!(*first.last().unwrap(), Method::BestUnloading);
    }

    #[test]
    fn zero_scheme() {
        let z = FatPointSpec::new(vec![0, 0]).unwrap();
        assert_eq!(alpha_suite(&z).len(), 1);
        assert!(tau_suite(&z).is_empty());
        assert_eq!(uniform_shape(&z), None);
    }
}
