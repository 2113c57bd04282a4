//! Permutations in one-line notation (`p[i]` is the image of `i`), composed right to left.

pub type Perm = Vec<usize>;

pub fn identity(n: usize) -> Perm {
    (0..n).collect()
}

pub fn is_perm(p: &[usize]) -> bool {
    let mut seen = vec![false; p.len()];
    for &x in p {
        if x >= p.len() || seen[x] {
            return false;
        }
        seen[x] = true;
    }
    true
}

/// `(τσ)(i) = τ(σ(i))`.
pub fn compose(tau: &[usize], sigma: &[usize]) -> Perm {
    sigma.iter().map(|&i| tau[i]).collect()
}

pub fn inverse(p: &[usize]) -> Perm {
    let mut out = vec![0; p.len()];
    for (i, &x) in p.iter().enumerate() {
        out[x] = i;
    }
    out
}

/// +1 or −1 by inversion count.
pub fn sign(p: &[usize]) -> i64 {
    let mut inv = 0usize;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                inv += 1;
            }
        }
    }
    if inv % 2 == 0 { 1 } else { -1 }
}

/// The adjacent transposition `(i i+1)` in `Σ_n`.
pub fn adjacent(n: usize, i: usize) -> Perm {
    let mut p = identity(n);
    p.swap(i, i + 1);
    p
}

/// All permutations of `0..n` in lexicographic order.
pub fn all(n: usize) -> Vec<Perm> {
    let mut out = Vec::new();
    let mut cur = identity(n);
    loop {
        out.push(cur.clone());
        // next lexicographic permutation
        let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| cur[i] < cur[i + 1]) else {
            return out;
        };
        let j = (i + 1..n).rev().find(|&j| cur[j] > cur[i]).unwrap();
        cur.swap(i, j);
        cur[i + 1..].reverse();
    }
}

/// Word `[i₁, …, i_m]` with `p = s_{i₁} ∘ … ∘ s_{i_m}`, from bubble sort.
pub fn coxeter_word(p: &[usize]) -> Vec<usize> {
    let mut a = p.to_vec();
    let mut swaps = Vec::new();
    let n = a.len();
    for pass in 0..n {
        for j in 0..n.saturating_sub(1 + pass) {
            if a[j] > a[j + 1] {
                a.swap(j, j + 1);
                swaps.push(j);
            }
        }
    }
    swaps.reverse();
    swaps
}

/// A second reduced word, built by moving the largest value into place from the right end.
pub fn coxeter_word_alt(p: &[usize]) -> Vec<usize> {
    let mut a = p.to_vec();
    let mut swaps = Vec::new();
    let n = a.len();
    for v in (0..n).rev() {
        let mut pos = a.iter().position(|&x| x == v).unwrap();
        while pos < v {
            a.swap(pos, pos + 1);
            swaps.push(pos);
            pos += 1;
        }
    }
    swaps.reverse();
    swaps
}

pub fn from_word(n: usize, word: &[usize]) -> Perm {
    word.iter().fold(identity(n), |acc, &i| compose(&acc, &adjacent(n, i)))
}

/// Sorts a tuple, returning the sign of the sorting permutation and the sorted tuple.
pub fn sort_with_sign(t: &[usize]) -> (i64, Vec<usize>) {
    let mut a = t.to_vec();
    let mut s = 1;
    for i in 1..a.len() {
        let mut j = i;
        while j > 0 && a[j - 1] > a[j] {
            a.swap(j - 1, j);
            s = -s;
            j -= 1;
        }
    }
    (s, a)
}

/// `(p, q)`-shuffles as the sorted position sets `{σ(1), …, σ(p)}`, with their signs.
pub fn shuffles(p: usize, q: usize) -> Vec<(Vec<usize>, i64)> {
    subsets(p + q, p)
        .into_iter()
        .map(|s| {
            let parity: usize = s.iter().enumerate().map(|(i, &x)| x - i).sum();
            (s, if parity % 2 == 0 { 1 } else { -1 })
        })
        .collect()
}

/// `k`-element subsets of `0..n`, lexicographic.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    go(0, n, k, &mut cur, &mut out);
    out
}

/// Weakly increasing `k`-tuples over `0..n`, lexicographic.
pub fn multisets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i, n, k, cur, out);
            cur.pop();
        }
    }
    go(0, n, k, &mut cur, &mut out);
    out
}

/// All `k`-tuples over `0..n`, lexicographic (most significant first).
pub fn tuples(n: usize, k: usize) -> Vec<Vec<usize>> {
    let total = n.pow(k as u32);
    (0..total).map(|i| index_tuple(i, n, k)).collect()
}

pub fn tuple_index(t: &[usize], n: usize) -> usize {
    t.iter().fold(0, |acc, &x| acc * n + x)
}

pub fn index_tuple(mut i: usize, n: usize, k: usize) -> Vec<usize> {
    let mut t = vec![0; k];
    for slot in (0..k).rev() {
        t[slot] = i % n.max(1);
        i /= n.max(1);
    }
    t
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let mut r: u128 = 1;
    for i in 0..k {
        r = r * (n - i) as u128 / (i + 1) as u128;
    }
    r as usize
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn words_reproduce_permutations() {
        for p in all(4) {
            assert_eq!(from_word(4, &coxeter_word(&p)), p);
            assert_eq!(from_word(4, &coxeter_word_alt(&p)), p);
            assert_eq!(coxeter_word(&p).len() % 2 == 0, sign(&p) == 1);
        }
    }

    #[test]
    fn counts() {
        assert_eq!(all(3).len(), 6);
        assert_eq!(shuffles(2, 2).len(), 6);
        assert_eq!(multisets(2, 2), vec![vec![0, 0], vec![0, 1], vec![1, 1]]);
        assert_eq!(subsets(4, 2).len(), binomial(4, 2));
        assert_eq!(sort_with_sign(&[2, 0, 1]), (1, vec![0, 1, 2]));
        assert_eq!(sort_with_sign(&[1, 0]), (-1, vec![0, 1]));
    }

    #[test]
    fn shuffle_signs() {
        let s = shuffles(1, 1);
        assert_eq!(s, vec![(vec![0], 1), (vec![1], -1)]);
    }
}
