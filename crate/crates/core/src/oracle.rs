//! Brute-force linear algebra over a prime field at pseudorandom points.
//!
//! Vanishing to order `m` at an affine point is imposed through the Hasse
//! derivatives of total order `< m`, so the construction is valid for any
//! prime larger than the degrees involved. Results equal the generic values
//! with high probability; callers wanting certainty vote over seeds.

use std::collections::HashSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{precondition, Error, Result};
use crate::lattice::FatPointSpec;

/// Prime used when none is given.
pub const DEFAULT_PRIME: u64 = 31991;

/// Points in the affine chart `z = 1` over `F_p`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointConfig {
    prime: u64,
    seed: u64,
    points: Vec<(u64, u64)>,
}

fn is_prime(p: u64) -> bool {
    p >= 2
        && (2..)
            .take_while(|k| k * k <= p)
            .all(|k| !p.is_multiple_of(k))
}

impl PointConfig {
    /// `n` distinct points drawn from a ChaCha stream seeded with `seed`.
    pub fn random(n: usize, seed: u64, prime: u64) -> Result<Self> {
        Self::check_prime(prime)?;
        precondition(
            (n as u128) <= (prime as u128) * (prime as u128),
            format!("cannot place {n} distinct points over F_{prime}"),
        )?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut seen = HashSet::with_capacity(n);
        let mut points = Vec::with_capacity(n);
        while points.len() < n {
            let p = (rng.gen_range(0..prime), rng.gen_range(0..prime));
            if seen.insert(p) {
                points.push(p);
            }
        }
        Ok(PointConfig {
            prime,
            seed,
            points,
        })
    }

    /// Explicit points; coordinates are reduced mod `prime`.
    pub fn from_points(prime: u64, points: Vec<(u64, u64)>) -> Result<Self> {
        Self::check_prime(prime)?;
        let points: Vec<(u64, u64)> = points
            .into_iter()
            .map(|(x, y)| (x % prime, y % prime))
            .collect();
        let mut seen = HashSet::with_capacity(points.len());
        for (i, p) in points.iter().enumerate() {
            precondition(
                seen.insert(*p),
                format!("point {i} coincides with an earlier point"),
            )?;
        }
        Ok(PointConfig {
            prime,
            seed: 0,
            points,
        })
    }

    fn check_prime(prime: u64) -> Result<()> {
        precondition(is_prime(prime), format!("{prime} is not prime"))?;
        precondition(prime < 1 << 31, format!("prime {prime} must be below 2^31"))
    }

    pub fn prime(&self) -> u64 {
        self.prime
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn points(&self) -> &[(u64, u64)] {
        &self.points
    }

    /// The same points in a new order: point `i` becomes `points[perm[i]]`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        PointConfig {
            prime: self.prime,
            seed: self.seed,
            points: perm.iter().map(|&i| self.points[i]).collect(),
        }
    }
}

/// Monomials `x^a y^b z^c` of degree `t`, ordered by descending `a`, then `b`.
fn monomial_index(t: usize, a: usize, b: usize) -> usize {
    // monomials with x-exponent above a come first
    let before = (t - a) * (t - a + 1) / 2;
    before + (t - a - b)
}

fn monomials(t: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..=t)
        .rev()
        .flat_map(move |a| (0..=t - a).rev().map(move |b| (a, b)))
}

struct Field {
    p: u64,
}

impl Field {
    fn mul(&self, a: u64, b: u64) -> u64 {
        a * b % self.p
    }

    fn pow(&self, mut a: u64, mut e: u64) -> u64 {
        let mut acc = 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        acc
    }

    fn inv(&self, a: u64) -> u64 {
        self.pow(a, self.p - 2)
    }
}

/// Row-reduces in place to reduced echelon form and returns the pivot
/// columns. Pivots are the first nonzero entry in column order.
fn row_reduce(f: &Field, rows: &mut Vec<Vec<u64>>, cols: usize) -> Vec<usize> {
    let p = f.p;
    let mut pivots = Vec::new();
    let mut rank = 0;
    for c in 0..cols {
        let Some(found) = (rank..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(rank, found);
        let inv = f.inv(rows[rank][c]);
        for x in rows[rank][c..].iter_mut() {
            *x = f.mul(*x, inv);
        }
        let pivot_row = rows[rank].clone();
        let reduce = |row: &mut Vec<u64>| {
            let factor = row[c];
            if factor != 0 {
                let neg = p - factor;
                for (x, &y) in row[c..].iter_mut().zip(&pivot_row[c..]) {
                    *x = (*x + neg * y) % p;
                }
            }
        };
        let (head, tail) = rows.split_at_mut(rank);
        head.iter_mut().for_each(reduce);
        tail[1..].iter_mut().for_each(reduce);
        pivots.push(c);
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rows.truncate(rank);
    pivots
}

fn check_query(cfg: &PointConfig, z: &FatPointSpec, t: i64) -> Result<()> {
    if z.len() != cfg.points.len() {
        return Err(Error::LengthMismatch {
            left: z.len(),
            right: cfg.points.len(),
        });
    }
    precondition(
        (t as i128) < cfg.prime as i128,
        format!("degree {t} must be below the prime {}", cfg.prime),
    )
}

/// Rows of Hasse-derivative evaluations on the degree-`t` monomials.
fn condition_rows(f: &Field, cfg: &PointConfig, z: &FatPointSpec, t: usize) -> Vec<Vec<u64>> {
    let cols = (t + 1) * (t + 2) / 2;
    // binomials mod p up to t
    let mut binom = vec![vec![0u64; t + 1]; t + 1];
    for a in 0..=t {
        binom[a][0] = 1;
        for i in 1..=a {
            binom[a][i] = (binom[a - 1][i - 1] + if i < a { binom[a - 1][i] } else { 0 }) % f.p;
        }
    }
    let mut rows = Vec::new();
    for (&m, &(px, py)) in z.mults().iter().zip(&cfg.points) {
        let xp: Vec<u64> = (0..=t).map(|e| f.pow(px, e as u64)).collect();
        let yp: Vec<u64> = (0..=t).map(|e| f.pow(py, e as u64)).collect();
        for order in 0..m as usize {
            for i in 0..=order {
                let j = order - i;
                let mut row = vec![0u64; cols];
                for (idx, (a, b)) in monomials(t).enumerate() {
                    if i <= a && j <= b {
                        let c = f.mul(binom[a][i], binom[b][j]);
                        row[idx] = f.mul(c, f.mul(xp[a - i], yp[b - j]));
                    }
                }
                rows.push(row);
            }
        }
    }
    rows
}

/// Basis of the degree-`t` part of the ideal, as coefficient vectors.
fn ideal_basis(f: &Field, cfg: &PointConfig, z: &FatPointSpec, t: usize) -> Vec<Vec<u64>> {
    let cols = (t + 1) * (t + 2) / 2;
    let mut rows = condition_rows(f, cfg, z, t);
    let pivots = row_reduce(f, &mut rows, cols);
    let mut is_pivot = vec![false; cols];
    pivots.iter().for_each(|&c| is_pivot[c] = true);
    (0..cols)
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            let mut v = vec![0u64; cols];
            v[free] = 1;
            for (row, &pc) in rows.iter().zip(&pivots) {
                v[pc] = (f.p - row[free]) % f.p;
            }
            v
        })
        .collect()
}

/// Dimension of the degree-`t` part of the ideal of `Z` at the configured
/// points.
pub fn actual_hilbert(cfg: &PointConfig, z: &FatPointSpec, t: i64) -> Result<i64> {
    check_query(cfg, z, t)?;
    if t < 0 {
        return Ok(0);
    }
    let t = t as usize;
    let f = Field { p: cfg.prime };
    let cols = (t + 1) * (t + 2) / 2;
    let mut rows = condition_rows(&f, cfg, z, t);
    let rank = row_reduce(&f, &mut rows, cols).len();
    Ok((cols - rank) as i64)
}

/// Number of minimal generators of the ideal in degree `t`: `dim I_t` minus
/// the rank of `I_{t-1} (x) <x, y, z> -> I_t`.
pub fn actual_nu(cfg: &PointConfig, z: &FatPointSpec, t: i64) -> Result<i64> {
    check_query(cfg, z, t)?;
    if t < 0 {
        return Ok(0);
    }
    let f = Field { p: cfg.prime };
    let t = t as usize;
    let dim_t = actual_hilbert(cfg, z, t as i64)?;
    if t == 0 {
        return Ok(dim_t);
    }
    let cols = (t + 1) * (t + 2) / 2;
    let lower = ideal_basis(&f, cfg, z, t - 1);
    let mut products = Vec::with_capacity(3 * lower.len());
    for v in &lower {
        for shift in [(1, 0), (0, 1), (0, 0)] {
            let mut w = vec![0u64; cols];
            for ((a, b), &coef) in monomials(t - 1).zip(v) {
                if coef != 0 {
                    w[monomial_index(t, a + shift.0, b + shift.1)] = coef;
                }
            }
            products.push(w);
        }
    }
    let rank = row_reduce(&f, &mut products, cols).len() as i64;
    Ok(dim_t - rank)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(m: &[i64]) -> FatPointSpec {
        FatPointSpec::new(m.to_vec()).unwrap()
    }

    fn cfg(n: usize) -> PointConfig {
        PointConfig::random(n, 7, DEFAULT_PRIME).unwrap()
    }

    #[test]
    fn monomial_order() {
        for t in 0..6 {
            for (i, (a, b)) in monomials(t).enumerate() {
                assert_eq!(monomial_index(t, a, b), i);
            }
        }
    }

    #[test]
    fn config_checks() {
        assert!(PointConfig::random(3, 1, 31990).is_err());
        assert!(PointConfig::from_points(7, vec![(1, 2), (8, 2)]).is_err());
        let c = cfg(5);
        assert_eq!(c.points().len(), 5);
        assert_eq!(c, cfg(5));
        assert!(actual_hilbert(&c, &z(&[1, 1]), 2).is_err());
        let small = PointConfig::random(1, 1, 5).unwrap();
        assert!(actual_hilbert(&small, &z(&[1]), 5).is_err());
    }

    #[test]
    fn hilbert_examples() {
        assert_eq!(actual_hilbert(&cfg(1), &z(&[2]), 1).unwrap(), 0);
        assert_eq!(actual_hilbert(&cfg(5), &z(&[1; 5]), 2).unwrap(), 1);
        assert_eq!(actual_hilbert(&cfg(2), &z(&[2, 2]), 3).unwrap(), 4);
        assert_eq!(actual_hilbert(&cfg(2), &z(&[2, 2]), 2).unwrap(), 1);
        assert_eq!(actual_hilbert(&cfg(0), &z(&[]), 2).unwrap(), 6);
        assert_eq!(actual_hilbert(&cfg(1), &z(&[1]), -1).unwrap(), 0);
    }

    #[test]
    fn nu_examples() {
        assert_eq!(actual_nu(&cfg(1), &z(&[1]), 1).unwrap(), 2);
        assert_eq!(actual_nu(&cfg(1), &z(&[1]), 2).unwrap(), 0);
        assert_eq!(actual_nu(&cfg(5), &z(&[3; 5]), 8).unwrap(), 2);
        assert_eq!(actual_nu(&cfg(0), &z(&[]), 0).unwrap(), 1);
    }

    #[test]
    fn labeling_does_not_matter() {
        let c = cfg(4);
        let perm = [2, 0, 3, 1];
        let w = [3, 2, 2, 1];
        let wp: Vec<i64> = perm.iter().map(|&i| w[i]).collect();
        for t in 0..8 {
            assert_eq!(
                actual_hilbert(&c, &z(&w), t).unwrap(),
                actual_hilbert(&c.permuted(&perm), &z(&wp), t).unwrap()
            );
        }
    }
}
