//! Partitions, bipartitions and Murnaghan–Nakayama character values.

use std::collections::HashMap;

pub type Partition = Vec<usize>;

/// All partitions of `n`, reverse lexicographic (so `(n)` first, `(1^n)` last).
pub fn partitions(n: usize) -> Vec<Partition> {
    fn go(n: usize, max: usize, cur: &mut Partition, out: &mut Vec<Partition>) {
        if n == 0 {
            out.push(cur.clone());
            return;
        }
        for k in (1..=n.min(max)).rev() {
            cur.push(k);
            go(n - k, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

/// All pairs `(α, β)` with `|α| + |β| = n`, grouped by `|α|` descending.
pub fn bipartitions(n: usize) -> Vec<(Partition, Partition)> {
    let mut out = Vec::new();
    for k in (0..=n).rev() {
        for a in partitions(k) {
            for b in partitions(n - k) {
                out.push((a.clone(), b));
            }
        }
    }
    out
}

pub fn conjugate(l: &[usize]) -> Partition {
    if l.is_empty() {
        return Vec::new();
    }
    (0..l[0]).map(|j| l.iter().filter(|&&x| x > j).count()).collect()
}

/// `n(λ) = Σ (i-1) λ_i`.
pub fn n_of(l: &[usize]) -> usize {
    l.iter().enumerate().map(|(i, &x)| i * x).sum()
}

pub fn hook_lengths(l: &[usize]) -> Vec<usize> {
    let c = conjugate(l);
    let mut out = Vec::new();
    for (i, &li) in l.iter().enumerate() {
        for j in 0..li {
            out.push(li - j + c[j] - i - 1);
        }
    }
    out
}

/// Centralizer order `z_μ = Π i^{m_i} m_i!` in the symmetric group.
pub fn z_of(mu: &[usize]) -> u128 {
    let mut counts: HashMap<usize, u128> = HashMap::new();
    for &p in mu {
        *counts.entry(p).or_default() += 1;
    }
    counts.iter().map(|(&i, &m)| (i as u128).pow(m as u32) * (1..=m).product::<u128>()).product()
}

pub fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}

/// Ways to remove a rim hook of length `len` from `l`: resulting partition and sign.
pub fn remove_rim_hooks(l: &[usize], len: usize) -> Vec<(Partition, i64)> {
    let k = l.len();
    // beta numbers x_i = l_i + (k - 1 - i), strictly decreasing
    let beta: Vec<usize> = l.iter().enumerate().map(|(i, &x)| x + k - 1 - i).collect();
    let mut out = Vec::new();
    for (idx, &x) in beta.iter().enumerate() {
        if x < len {
            continue;
        }
        let y = x - len;
        if beta.contains(&y) {
            continue;
        }
        let between = beta.iter().filter(|&&b| b > y && b < x).count();
        let mut nb = beta.clone();
        nb[idx] = y;
        nb.sort_unstable_by(|a, b| b.cmp(a));
        let np: Partition = nb.iter().enumerate().map(|(i, &b)| b - (k - 1 - i)).filter(|&p| p > 0).collect();
        out.push((np, if between % 2 == 0 { 1 } else { -1 }));
    }
    out
}

/// Symmetric group character `χ^λ(μ)` by Murnaghan–Nakayama.
pub fn sym_char(lambda: &[usize], mu: &[usize], memo: &mut HashMap<(Partition, Partition), i64>) -> i64 {
    if mu.is_empty() {
        return if lambda.is_empty() { 1 } else { 0 };
    }
    let key = (lambda.to_vec(), mu.to_vec());
    if let Some(&v) = memo.get(&key) {
        return v;
    }
    let (first, rest) = (mu[0], &mu[1..]);
    let v = remove_rim_hooks(lambda, first).into_iter().map(|(p, s)| s * sym_char(&p, rest, memo)).sum();
    memo.insert(key, v);
    v
}

pub type BiKey = (Partition, Partition, Partition, Partition);

/// Hyperoctahedral character `χ^{(α,β)}` on the class with positive cycles `pos` and
/// negative cycles `neg`. `((n),∅)` is trivial; `(∅,(n))` sends sign changes to `-1`.
pub fn hyper_char(alpha: &[usize], beta: &[usize], pos: &[usize], neg: &[usize], memo: &mut HashMap<BiKey, i64>) -> i64 {
    if pos.is_empty() && neg.is_empty() {
        return if alpha.is_empty() && beta.is_empty() { 1 } else { 0 };
    }
    let key = (alpha.to_vec(), beta.to_vec(), pos.to_vec(), neg.to_vec());
    if let Some(&v) = memo.get(&key) {
        return v;
    }
    let (len, sign, p2, n2) = if let Some((&f, r)) = pos.split_first() {
        (f, 1, r.to_vec(), neg.to_vec())
    } else {
        let (&f, r) = neg.split_first().unwrap();
        (f, -1, pos.to_vec(), r.to_vec())
    };
    let mut v = 0;
    for (a2, s) in remove_rim_hooks(alpha, len) {
        v += s * hyper_char(&a2, beta, &p2, &n2, memo);
    }
    for (b2, s) in remove_rim_hooks(beta, len) {
        v += sign * s * hyper_char(alpha, &b2, &p2, &n2, memo);
    }
    memo.insert(key, v);
    v
}

pub fn fmt_partition(l: &[usize]) -> String {
    if l.iter().all(|&x| x < 10) {
        l.iter().map(|x| x.to_string()).collect()
    } else {
        l.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(".")
    }
}

pub fn parse_partition(s: &str) -> Option<Partition> {
    if s.is_empty() || s == "-" {
        return Some(Vec::new());
    }
    let v: Option<Vec<usize>> = if s.contains('.') {
        s.split('.').map(|t| t.parse().ok()).collect()
    } else {
        s.chars().map(|c| c.to_digit(10).map(|d| d as usize)).collect()
    };
    let v = v?;
    (v.windows(2).all(|w| w[0] >= w[1]) && v.iter().all(|&x| x > 0)).then_some(v)
}
