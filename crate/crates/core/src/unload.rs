//! In-place unloading step on a nonincreasing multiplicity vector.

/// Subtract one from each of `w[..k]`, clamp at zero, and restore the
/// nonincreasing order. Equivalent to `sort(clamp(w - 1_k))` in O(k).
pub(crate) fn drop_prefix(w: &mut [i64], k: usize) {
    let k = k.min(w.len());
    if k == 0 {
        return;
    }
    let v = w[k - 1];
    // block of entries equal to v straddling position k
    let mut a = k - 1;
    while a > 0 && w[a - 1] == v {
        a -= 1;
    }
    let mut b = k;
    while b < w.len() && w[b] == v {
        b += 1;
    }
    for x in &mut w[..a] {
        *x -= 1;
    }
    let untouched = b - k;
    for x in &mut w[a..a + untouched] {
        *x = v;
    }
    for x in &mut w[a + untouched..b] {
        *x = (v - 1).max(0);
    }
}
