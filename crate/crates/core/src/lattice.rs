//! The class lattice of the plane blown up at n points.
//!
//! A class is stored as `degree * E0 - sum(mults[i] * E_i)`, so the stored
//! multiplicities are the coefficients being subtracted and the intersection
//! form reads `d*d' - sum(m_i*m_i')`. The canonical class is `(-3; -1, ..., -1)`.

use std::fmt;
use std::ops::{Add, Mul, Sub};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DivisorClass {
    pub degree: i64,
    pub mults: Vec<i64>,
}

impl DivisorClass {
    pub fn new(degree: i64, mults: Vec<i64>) -> Self {
        DivisorClass { degree, mults }
    }

    /// The pullback `E0` of a line, on `n` points.
    pub fn line(n: usize) -> Self {
        DivisorClass::new(1, vec![0; n])
    }

    /// The exceptional curve `E_i` (0-based slot `i`) on `n` points.
    pub fn exceptional_curve(i: usize, n: usize) -> Self {
        let mut mults = vec![0; n.max(i + 1)];
        mults[i] = -1;
        DivisorClass::new(0, mults)
    }

    pub fn canonical(n: usize) -> Self {
        DivisorClass::new(-3, vec![-1; n])
    }

    pub fn len(&self) -> usize {
        self.mults.len()
    }

    pub fn is_empty(&self) -> bool {
        self.mults.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.degree == 0 && self.mults.iter().all(|&m| m == 0)
    }

    /// Copy with zero multiplicities appended up to length `len`.
    pub fn padded(&self, len: usize) -> Self {
        let mut out = self.clone();
        if out.mults.len() < len {
            out.mults.resize(len, 0);
        }
        out
    }

    pub fn intersection(&self, other: &DivisorClass) -> i64 {
        intersection(self, other)
    }

    pub fn self_intersection(&self) -> i64 {
        intersection(self, self)
    }

    /// `F . K`, which equals `-3d + sum(m_i)`.
    pub fn dot_canonical(&self) -> i64 {
        intersection(self, &DivisorClass::canonical(self.len()))
    }

    /// Self-intersection -1 and canonical degree -1.
    pub fn is_exceptional(&self) -> bool {
        self.self_intersection() == -1 && self.dot_canonical() == -1
    }

    /// Sum of the three largest multiplicities (missing slots count as 0).
    pub(crate) fn top3(&self) -> i64 {
        self.mults.iter().take(3).sum()
    }

    pub fn clamp_nonneg(&self) -> Self {
        clamp_nonneg(self)
    }

    pub fn cremona_quad(&self) -> Self {
        cremona_quad(self)
    }

    /// Reduction to the fundamental domain without recording the word.
    pub fn reduced(&self) -> Self {
        let mut f = self.padded(3);
        reduce_in_place(&mut f);
        f
    }

    /// Whether the class meets every exceptional class of its reduced form
    /// the way an element of the semigroup generated by exceptionals and -K
    /// must: reduced degree >= 0 and >= largest reduced multiplicity.
    pub fn in_psi(&self) -> bool {
        let r = self.reduced();
        r.degree >= 0 && r.degree >= r.mults[0]
    }
}

impl fmt::Display for DivisorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({};", self.degree)?;
        for (i, m) in self.mults.iter().enumerate() {
            let sep = if i == 0 { " " } else { "," };
            write!(f, "{sep}{m}")?;
        }
        write!(f, ")")
    }
}

fn zip_padded(a: &DivisorClass, b: &DivisorClass, op: impl Fn(i64, i64) -> i64) -> DivisorClass {
    let n = a.len().max(b.len());
    let get = |c: &DivisorClass, i: usize| c.mults.get(i).copied().unwrap_or(0);
    DivisorClass::new(
        op(a.degree, b.degree),
        (0..n).map(|i| op(get(a, i), get(b, i))).collect(),
    )
}

impl Add for &DivisorClass {
    type Output = DivisorClass;
    fn add(self, rhs: &DivisorClass) -> DivisorClass {
        zip_padded(self, rhs, |x, y| x + y)
    }
}

impl Sub for &DivisorClass {
    type Output = DivisorClass;
    fn sub(self, rhs: &DivisorClass) -> DivisorClass {
        zip_padded(self, rhs, |x, y| x - y)
    }
}

impl Mul<&DivisorClass> for i64 {
    type Output = DivisorClass;
    fn mul(self, rhs: &DivisorClass) -> DivisorClass {
        DivisorClass::new(
            self * rhs.degree,
            rhs.mults.iter().map(|m| self * m).collect(),
        )
    }
}

/// A fat point subscheme `Z = m_1 p_1 + ... + m_n p_n` at general points.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FatPointSpec {
    mults: Vec<i64>,
}

impl FatPointSpec {
    pub fn new(mults: Vec<i64>) -> Result<Self> {
        if let Some((index, &value)) = mults.iter().enumerate().find(|(_, &m)| m < 0) {
            return Err(Error::NegativeMultiplicity { index, value });
        }
        Ok(FatPointSpec { mults })
    }

    pub fn uniform(n: usize, m: i64) -> Result<Self> {
        FatPointSpec::new(vec![m; n])
    }

    pub fn mults(&self) -> &[i64] {
        &self.mults
    }

    /// Number of listed points, zero multiplicities included.
    pub fn len(&self) -> usize {
        self.mults.len()
    }

    pub fn is_empty(&self) -> bool {
        self.mults.is_empty()
    }

    /// Number of points that actually carry a condition.
    pub fn support_size(&self) -> usize {
        self.mults.iter().filter(|&&m| m > 0).count()
    }

    pub fn is_zero(&self) -> bool {
        self.mults.iter().all(|&m| m == 0)
    }

    pub fn max_mult(&self) -> i64 {
        self.mults.iter().copied().max().unwrap_or(0)
    }

    pub fn degree_sum(&self) -> i64 {
        self.mults.iter().sum()
    }

    /// Multiplicities sorted nonincreasing, zeros kept.
    pub fn sorted(&self) -> Vec<i64> {
        let mut v = self.mults.clone();
        v.sort_by(|a, b| b.cmp(a));
        v
    }

    /// Nonzero multiplicities sorted nonincreasing.
    pub fn support_sorted(&self) -> Vec<i64> {
        let mut v: Vec<i64> = self.mults.iter().copied().filter(|&m| m > 0).collect();
        v.sort_by(|a, b| b.cmp(a));
        v
    }

    /// Number of linear conditions imposed, `sum m_i(m_i+1)/2`.
    pub fn conditions(&self) -> i64 {
        self.mults.iter().map(|m| m * (m + 1) / 2).sum()
    }

    /// `F_t(Z) = t E0 - sum m_i E_i`.
    pub fn class_at(&self, t: i64) -> DivisorClass {
        DivisorClass::new(t, self.mults.clone())
    }

    /// Same scheme with one more point of multiplicity `m` appended.
    pub fn with_point(&self, m: i64) -> Result<Self> {
        let mut v = self.mults.clone();
        v.push(m);
        FatPointSpec::new(v)
    }
}

impl fmt::Display for FatPointSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.mults.iter().map(|m| m.to_string()).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

/// One generator of the Weyl group action on the lattice.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Move {
    /// `new.mults[i] = old.mults[perm[i]]`.
    Permute(Vec<usize>),
    /// Quadratic transform centred at the first three slots.
    Quad,
}

/// A sequence of moves acting on classes with a fixed number of slots.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeylWord {
    slots: usize,
    moves: Vec<Move>,
}

impl WeylWord {
    pub fn identity(slots: usize) -> Self {
        WeylWord {
            slots,
            moves: Vec::new(),
        }
    }

    pub fn slots(&self) -> usize {
        self.slots
    }

    pub fn moves(&self) -> &[Move] {
        &self.moves
    }

    pub fn is_identity(&self) -> bool {
        self.moves.is_empty()
    }

    fn push(&mut self, mv: Move) {
        self.moves.push(mv);
    }

    fn fit(&self, f: &DivisorClass) -> Result<DivisorClass> {
        if f.len() > self.slots {
            return Err(Error::LengthMismatch {
                left: self.slots,
                right: f.len(),
            });
        }
        Ok(f.padded(self.slots))
    }

    /// Apply the moves in order.
    pub fn apply(&self, f: &DivisorClass) -> Result<DivisorClass> {
        let mut cur = self.fit(f)?;
        for mv in &self.moves {
            cur = apply_move(mv, &cur);
        }
        Ok(cur)
    }

    /// The formal inverse: reversed order, permutations inverted.
    pub fn inverse(&self) -> WeylWord {
        let moves = self
            .moves
            .iter()
            .rev()
            .map(|mv| match mv {
                Move::Quad => Move::Quad,
                Move::Permute(p) => {
                    let mut inv = vec![0; p.len()];
                    for (i, &pi) in p.iter().enumerate() {
                        inv[pi] = i;
                    }
                    Move::Permute(inv)
                }
            })
            .collect();
        WeylWord {
            slots: self.slots,
            moves,
        }
    }
}

fn apply_move(mv: &Move, f: &DivisorClass) -> DivisorClass {
    match mv {
        Move::Quad => cremona_quad(f),
        Move::Permute(p) => DivisorClass::new(f.degree, p.iter().map(|&i| f.mults[i]).collect()),
    }
}

/// `F . G`; the shorter multiplicity list is zero-padded.
pub fn intersection(f: &DivisorClass, g: &DivisorClass) -> i64 {
    let mut acc = f.degree as i128 * g.degree as i128;
    for (a, b) in f.mults.iter().zip(&g.mults) {
        acc -= *a as i128 * *b as i128;
    }
    i64::try_from(acc).expect("intersection number overflows 64 bits")
}

pub fn clamp_nonneg(f: &DivisorClass) -> DivisorClass {
    DivisorClass::new(f.degree, f.mults.iter().map(|&m| m.max(0)).collect())
}

/// The quadratic transform at the first three slots; shorter classes are
/// padded to three slots first.
pub fn cremona_quad(f: &DivisorClass) -> DivisorClass {
    let mut out = f.padded(3);
    quad_in_place(&mut out);
    out
}

fn quad_in_place(f: &mut DivisorClass) {
    let d = f.degree;
    let (m1, m2, m3) = (f.mults[0], f.mults[1], f.mults[2]);
    f.degree = 2 * d - m1 - m2 - m3;
    f.mults[0] = d - m2 - m3;
    f.mults[1] = d - m1 - m3;
    f.mults[2] = d - m1 - m2;
}

fn sort_desc(v: &mut [i64]) {
    // stable merge sort: the vectors here are almost sorted, so this is linear
    v.sort_by(|a, b| b.cmp(a));
}

/// Stable permutation sorting `v` nonincreasing, ties by original index.
fn sorting_permutation(v: &[i64]) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..v.len()).collect();
    idx.sort_by(|&a, &b| v[b].cmp(&v[a]));
    idx
}

/// Sort `primary` nonincreasing and apply the same permutation to `companion`.
pub fn sort_desc_tracked(
    primary: &DivisorClass,
    companion: &DivisorClass,
) -> Result<(DivisorClass, DivisorClass, WeylWord)> {
    if primary.len() != companion.len() {
        return Err(Error::LengthMismatch {
            left: primary.len(),
            right: companion.len(),
        });
    }
    let perm = sorting_permutation(&primary.mults);
    let mut word = WeylWord::identity(primary.len());
    if perm.iter().enumerate().any(|(i, &p)| i != p) {
        word.push(Move::Permute(perm));
    }
    Ok((word.apply(primary)?, word.apply(companion)?, word))
}

pub(crate) fn reduce_in_place(f: &mut DivisorClass) {
    sort_desc(&mut f.mults);
    while f.degree >= 0 && f.degree < f.top3() {
        quad_in_place(f);
        sort_desc(&mut f.mults);
    }
}

/// Sort and apply quadratic transforms until the degree is negative or at
/// least the sum of the three largest multiplicities. Returns the terminal
/// class (padded to three slots) and the word that maps the input to it.
pub fn reduce_fundamental(f: &DivisorClass) -> (DivisorClass, WeylWord) {
    let mut cur = f.padded(3);
    let mut word = WeylWord::identity(cur.len());
    let sort_step = |cur: &mut DivisorClass, word: &mut WeylWord| {
        let perm = sorting_permutation(&cur.mults);
        if perm.iter().enumerate().any(|(i, &p)| i != p) {
            let mv = Move::Permute(perm);
            *cur = apply_move(&mv, cur);
            word.push(mv);
        }
    };
    sort_step(&mut cur, &mut word);
    while cur.degree >= 0 && cur.degree < cur.top3() {
        quad_in_place(&mut cur);
        word.push(Move::Quad);
        sort_step(&mut cur, &mut word);
    }
    (cur, word)
}

/// Undo `word` on `f`: `apply_inverse(w, reduce_fundamental(F).0) == F` (padded).
pub fn apply_inverse(word: &WeylWord, f: &DivisorClass) -> Result<DivisorClass> {
    word.inverse().apply(f)
}

/// `F = H + sum a_i v_i` with the `v_i` pairwise orthogonal exceptional
/// classes orthogonal to `H`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PsiDecomposition {
    pub in_psi: bool,
    pub h_part: DivisorClass,
    pub n_part: Vec<(DivisorClass, i64)>,
}

impl PsiDecomposition {
    pub fn fixed_part_is_empty(&self) -> bool {
        self.n_part.is_empty()
    }

    /// `h_part + sum a_i v_i`.
    pub fn recombine(&self) -> DivisorClass {
        self.n_part
            .iter()
            .fold(self.h_part.clone(), |acc, (v, a)| &acc + &(*a * v))
    }
}

/// Decide membership in the semigroup generated by exceptional classes and
/// `-K`, and split members as `H + N`.
pub fn psi_decompose(f: &DivisorClass) -> Result<PsiDecomposition> {
    let (red, word) = reduce_fundamental(f);
    let slots = red.len();
    if red.degree < 0 || red.degree < red.mults[0] {
        return Ok(PsiDecomposition {
            in_psi: false,
            h_part: f.padded(slots),
            n_part: Vec::new(),
        });
    }

    let mut h = red;
    let mut fixed: Vec<(DivisorClass, i64)> = Vec::new();
    let (d, m1, m2) = (h.degree, h.mults[0], h.mults[1]);
    if d < m1 + m2 {
        // the line through the first two points splits off
        let mut line = DivisorClass::line(slots);
        line.mults[0] = 1;
        line.mults[1] = 1;
        fixed.push((line, m1 + m2 - d));
        h.degree = 2 * d - m1 - m2;
        h.mults[0] = d - m2;
        h.mults[1] = d - m1;
    }
    for i in 0..slots {
        if h.mults[i] < 0 {
            fixed.push((DivisorClass::exceptional_curve(i, slots), -h.mults[i]));
        }
    }
    let h = clamp_nonneg(&h);

    let h_part = apply_inverse(&word, &h)?;
    let mut n_part = Vec::with_capacity(fixed.len());
    for (v, a) in fixed {
        n_part.push((apply_inverse(&word, &v)?, a));
    }
    let out = PsiDecomposition {
        in_psi: true,
        h_part,
        n_part,
    };
    check_decomposition(f, &out)?;
    Ok(out)
}

fn check_decomposition(f: &DivisorClass, dec: &PsiDecomposition) -> Result<()> {
    let fail = |what: String| Err(Error::Invariant(format!("decomposition of {f}: {what}")));
    if dec.recombine() != f.padded(dec.h_part.len()) {
        return fail("H + N does not reconstruct the class".into());
    }
    for (i, (v, a)) in dec.n_part.iter().enumerate() {
        if *a <= 0 {
            return fail(format!("fixed component {v} has multiplicity {a}"));
        }
        if !v.is_exceptional() {
            return fail(format!("fixed component {v} is not exceptional"));
        }
        if v.intersection(&dec.h_part) != 0 {
            return fail(format!("fixed component {v} meets H"));
        }
        for (w, _) in &dec.n_part[i + 1..] {
            if v.intersection(w) != 0 {
                return fail(format!("fixed components {v} and {w} meet"));
            }
        }
    }
    Ok(())
}
