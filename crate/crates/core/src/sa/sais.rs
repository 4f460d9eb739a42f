//! Suffix array construction by induced sorting (SA-IS).
//!
//! Input is a slice over `0..k` whose last element is a unique `0`.

const EMPTY: u32 = u32::MAX;

pub fn sais(text: &[u32], k: usize) -> Vec<u32> {
    let n = text.len();
    debug_assert!(n > 0 && text[n - 1] == 0);
    debug_assert!(text[..n - 1].iter().all(|&c| c != 0));
    let mut sa = vec![EMPTY; n];
    if n == 1 {
        sa[0] = 0;
        return sa;
    }
    sais_rec(text, &mut sa, k);
    sa
}

fn classify(text: &[u32]) -> Vec<bool> {
    // true = S-type
    let n = text.len();
    let mut stype = vec![false; n];
    stype[n - 1] = true;
    for i in (0..n - 1).rev() {
        stype[i] = text[i] < text[i + 1] || (text[i] == text[i + 1] && stype[i + 1]);
    }
    stype
}

#[inline]
fn is_lms(stype: &[bool], i: usize) -> bool {
    i > 0 && stype[i] && !stype[i - 1]
}

fn bucket_bounds(text: &[u32], k: usize, ends: bool) -> Vec<u32> {
    let mut count = vec![0u32; k];
    for &c in text {
        count[c as usize] += 1;
    }
    let mut sum = 0u32;
    let mut out = vec![0u32; k];
    for (c, &cnt) in count.iter().enumerate() {
        sum += cnt;
        out[c] = if ends { sum } else { sum - cnt };
    }
    out
}

fn induce(text: &[u32], sa: &mut [u32], stype: &[bool], k: usize) {
    let n = text.len();
    let mut heads = bucket_bounds(text, k, false);
    for i in 0..n {
        let j = sa[i];
        if j != EMPTY && j > 0 {
            let p = (j - 1) as usize;
            if !stype[p] {
                let c = text[p] as usize;
                sa[heads[c] as usize] = p as u32;
                heads[c] += 1;
            }
        }
    }
    let mut tails = bucket_bounds(text, k, true);
    for i in (0..n).rev() {
        let j = sa[i];
        if j != EMPTY && j > 0 {
            let p = (j - 1) as usize;
            if stype[p] {
                let c = text[p] as usize;
                tails[c] -= 1;
                sa[tails[c] as usize] = p as u32;
            }
        }
    }
}

fn sais_rec(text: &[u32], sa: &mut [u32], k: usize) {
    let n = text.len();
    let stype = classify(text);

    // step 1: place LMS suffixes at bucket tails, induce
    sa.iter_mut().for_each(|x| *x = EMPTY);
    let mut tails = bucket_bounds(text, k, true);
    for i in (1..n).rev() {
        if is_lms(&stype, i) {
            let c = text[i] as usize;
            tails[c] -= 1;
            sa[tails[c] as usize] = i as u32;
        }
    }
    induce(text, sa, &stype, k);

    // step 2: compact sorted LMS substrings and name them
    let mut m = 0;
    for i in 0..n {
        let j = sa[i] as usize;
        if is_lms(&stype, j) {
            sa[m] = j as u32;
            m += 1;
        }
    }
    for x in sa[m..].iter_mut() {
        *x = EMPTY;
    }
    let mut name = 0u32;
    let mut prev: Option<usize> = None;
    for i in 0..m {
        let pos = sa[i] as usize;
        let differs = match prev {
            None => true,
            Some(p) => !lms_equal(text, &stype, p, pos),
        };
        if differs {
            name += 1;
        }
        prev = Some(pos);
        sa[m + pos / 2] = name - 1;
    }
    let mut reduced = Vec::with_capacity(m);
    let mut lms_pos = Vec::with_capacity(m);
    for i in 1..n {
        if is_lms(&stype, i) {
            lms_pos.push(i as u32);
        }
    }
    for j in (m..n).filter(|&j| sa[j] != EMPTY) {
        reduced.push(sa[j]);
    }
    debug_assert_eq!(reduced.len(), m);

    // step 3: sort the reduced problem
    let mut reduced_sa = vec![EMPTY; m];
    if (name as usize) < m {
        sais_rec(&reduced, &mut reduced_sa, name as usize);
    } else {
        for (i, &c) in reduced.iter().enumerate() {
            reduced_sa[c as usize] = i as u32;
        }
    }

    // step 4: place sorted LMS suffixes and induce the final order
    sa.iter_mut().for_each(|x| *x = EMPTY);
    let mut tails = bucket_bounds(text, k, true);
    for &r in reduced_sa.iter().rev() {
        let p = lms_pos[r as usize] as usize;
        let c = text[p] as usize;
        tails[c] -= 1;
        sa[tails[c] as usize] = p as u32;
    }
    induce(text, sa, &stype, k);
}

fn lms_equal(text: &[u32], stype: &[bool], a: usize, b: usize) -> bool {
    let n = text.len();
    if a == n - 1 || b == n - 1 {
        return a == b;
    }
    let mut d = 0;
    loop {
        let (ia, ib) = (a + d, b + d);
        if text[ia] != text[ib] || stype[ia] != stype[ib] {
            return false;
        }
        if d > 0 && (is_lms(stype, ia) || is_lms(stype, ib)) {
            return is_lms(stype, ia) && is_lms(stype, ib);
        }
        d += 1;
    }
}
