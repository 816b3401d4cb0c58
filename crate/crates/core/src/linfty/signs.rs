//! Koszul signs and unshuffles.
//!
//! Conventions: `v_1 ∧ ... ∧ v_k = χ(σ, v) v_σ(1) ∧ ... ∧ v_σ(k)`, and an
//! adjacent swap of `a, b` costs `-(-1)^{|a||b|}`. The coefficient ring sits
//! in degree 0, so no coefficient signs appear anywhere.

/// Sign of one adjacent transposition of elements of degrees `a`, `b`.
pub fn swap_sign(a: usize, b: usize) -> i8 {
    if (a * b) % 2 == 1 {
        1
    } else {
        -1
    }
}

/// `χ(σ, v)` for `σ` given 0-based as `σ[p] = index placed at position p`.
///
/// Bubble-sorts `σ` back to the identity, multiplying one [`swap_sign`] per
/// adjacent swap. Panics if `σ` is not a permutation of `0..k`.
pub fn koszul_sign(sigma: &[usize], degrees: &[usize]) -> i8 {
    assert_eq!(sigma.len(), degrees.len(), "permutation and degree list differ in length");
    let mut seen = vec![false; sigma.len()];
    for &s in sigma {
        assert!(s < sigma.len() && !seen[s], "not a permutation");
        seen[s] = true;
    }
    let mut seq: Vec<usize> = sigma.to_vec();
    let mut sign = 1i8;
    let k = seq.len();
    for pass in 0..k {
        for p in 0..k.saturating_sub(1 + pass) {
            if seq[p] > seq[p + 1] {
                sign *= swap_sign(degrees[seq[p]], degrees[seq[p + 1]]);
                seq.swap(p, p + 1);
            }
        }
    }
    sign
}

/// Sign of an explicit sequence of adjacent transpositions (positions `p <-> p+1`)
/// applied to `v`, i.e. `χ` of the resulting arrangement.
pub fn sign_of_swaps(degrees: &[usize], swaps: &[usize]) -> (Vec<usize>, i8) {
    let mut seq: Vec<usize> = (0..degrees.len()).collect();
    let mut sign = 1i8;
    for &p in swaps {
        sign *= swap_sign(degrees[seq[p]], degrees[seq[p + 1]]);
        seq.swap(p, p + 1);
    }
    (seq, sign)
}

/// All `(i, j)`-unshuffles of `0..i+j`, 0-based, in lexicographic order.
pub fn unshuffles(i: usize, j: usize) -> Vec<Vec<usize>> {
    let k = i + j;
    let mut out = Vec::new();
    let mut chosen = Vec::with_capacity(i);
    fn rec(start: usize, i: usize, k: usize, chosen: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if chosen.len() == i {
            let mut sigma = chosen.clone();
            sigma.extend((0..k).filter(|x| !chosen.contains(x)));
            out.push(sigma);
            return;
        }
        for s in start..k {
            if k - s < i - chosen.len() {
                break;
            }
            chosen.push(s);
            rec(s + 1, i, k, chosen, out);
            chosen.pop();
        }
    }
    rec(0, i, k, &mut chosen, &mut out);
    out
}

/// Sorts generator indices ascending, returning the sign `χ` with
/// `v_t1 ∧ ... = χ · (sorted)`, or `None` when a repeated even-degree
/// generator forces the wedge to vanish.
pub fn sort_with_sign(indices: &[usize], degree_of: impl Fn(usize) -> usize) -> Option<(Vec<usize>, i8)> {
    let mut seq = indices.to_vec();
    let mut sign = 1i8;
    let k = seq.len();
    for pass in 0..k {
        for p in 0..k.saturating_sub(1 + pass) {
            if seq[p] > seq[p + 1] {
                sign *= swap_sign(degree_of(seq[p]), degree_of(seq[p + 1]));
                seq.swap(p, p + 1);
            }
        }
    }
    for w in seq.windows(2) {
        if w[0] == w[1] && degree_of(w[0]) % 2 == 0 {
            return None;
        }
    }
    Some((seq, sign))
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}
