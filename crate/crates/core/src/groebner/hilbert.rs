//! Hilbert series of `S / M` for monomial ideals `M`, via the pivot
//! recursion `N(M) = N(M + (p)) + t^deg(p) N(M : p)`.

use std::collections::HashMap;

use crate::poly::Monomial;

fn minimalize(mut gens: Vec<Monomial>) -> Vec<Monomial> {
    gens.sort_by(|a, b| a.degree().cmp(&b.degree()).then_with(|| a.cmp(b)));
    gens.dedup();
    let mut out: Vec<Monomial> = Vec::with_capacity(gens.len());
    for g in gens {
        if !out.iter().any(|m| m.divides(&g)) {
            out.push(g);
        }
    }
    out.sort();
    out
}

fn poly_mul(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut out = vec![0i64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn poly_add_shifted(a: &mut Vec<i64>, b: &[i64], shift: usize) {
    if a.len() < b.len() + shift {
        a.resize(b.len() + shift, 0);
    }
    for (j, &y) in b.iter().enumerate() {
        a[j + shift] += y;
    }
}

fn trim(mut p: Vec<i64>) -> Vec<i64> {
    while p.len() > 1 && *p.last().unwrap() == 0 {
        p.pop();
    }
    p
}

fn numerator_rec(gens: Vec<Monomial>, memo: &mut HashMap<Vec<Monomial>, Vec<i64>>) -> Vec<i64> {
    let gens = minimalize(gens);
    if gens.is_empty() {
        return vec![1];
    }
    if let Some(hit) = memo.get(&gens) {
        return hit.clone();
    }
    // pairwise coprime generators: product of (1 - t^deg)
    let coprime = gens
        .iter()
        .enumerate()
        .all(|(i, a)| gens[i + 1..].iter().all(|b| a.is_coprime(b)));
    let result = if coprime {
        gens.iter().fold(vec![1i64], |acc, g| {
            let mut f = vec![0i64; g.degree() as usize + 1];
            f[0] = 1;
            f[g.degree() as usize] -= 1;
            poly_mul(&acc, &f)
        })
    } else {
        let nvars = gens[0].nvars();
        // most frequent variable among generators that are not pure powers
        let mut counts = vec![0usize; nvars];
        for g in gens.iter().filter(|g| g.pure_power().is_none()) {
            for v in g.support() {
                counts[v] += 1;
            }
        }
        let var = (0..nvars).max_by_key(|&v| (counts[v], std::cmp::Reverse(v))).unwrap();
        let mut exps: Vec<u32> = gens
            .iter()
            .filter(|g| g.pure_power().is_none())
            .map(|g| g.exp(var))
            .filter(|&e| e > 0)
            .collect();
        exps.sort_unstable();
        let e = exps[(exps.len() - 1) / 2];
        let pivot = Monomial::var_pow(nvars, var, e);
        let mut sum_gens = gens.clone();
        sum_gens.push(pivot.clone());
        let colon: Vec<Monomial> = gens
            .iter()
            .map(|g| g.with_exp(var, g.exp(var).saturating_sub(e)))
            .collect();
        let mut n = numerator_rec(sum_gens, memo);
        let rest = numerator_rec(colon, memo);
        poly_add_shifted(&mut n, &rest, e as usize);
        trim(n)
    };
    memo.insert(gens, result.clone());
    result
}

/// Coefficients of `N(t)` with `HS(S/M) = N(t) / (1-t)^n`.
pub fn hilbert_numerator(gens: &[Monomial]) -> Vec<i64> {
    let mut memo = HashMap::new();
    trim(numerator_rec(gens.to_vec(), &mut memo))
}

fn binomial(n: i64, k: i64) -> u128 {
    if k < 0 || n < k {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

/// `dim (S/M)_d` from the numerator, `n` the number of variables.
pub fn hilbert_function_from_numerator(numerator: &[i64], nvars: usize, d: u64) -> u64 {
    if nvars == 0 {
        return numerator.get(d as usize).copied().unwrap_or(0).max(0) as u64;
    }
    let n = nvars as i64;
    let mut total: i128 = 0;
    for (k, &c) in numerator.iter().enumerate() {
        let k = k as i64;
        if k > d as i64 {
            break;
        }
        total += c as i128 * binomial(n - 1 + d as i64 - k, n - 1) as i128;
    }
    total as u64
}

/// All monomials of total degree `d` in `nvars` variables, in decreasing
/// lexicographic order of exponent vectors.
pub fn monomials_of_degree(nvars: usize, d: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut current = vec![0u32; nvars];
    fn walk(i: usize, rest: u32, current: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if i + 1 == current.len() {
            current[i] = rest;
            out.push(Monomial::new(current));
            return;
        }
        for e in (0..=rest).rev() {
            current[i] = e;
            walk(i + 1, rest - e, current, out);
        }
        current[i] = 0;
    }
    if nvars == 0 {
        if d == 0 {
            out.push(Monomial::one(0));
        }
        return out;
    }
    walk(0, d, &mut current, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn brute_hf(gens: &[Monomial], nvars: usize, d: u32) -> u64 {
        monomials_of_degree(nvars, d)
            .iter()
            .filter(|m| !gens.iter().any(|g| g.divides(m)))
            .count() as u64
    }

    #[test]
    fn zero_ideal() {
        let n = hilbert_numerator(&[]);
        assert_eq!(n, vec![1]);
        for d in 0..6 {
            assert_eq!(hilbert_function_from_numerator(&n, 4, d), binomial(3 + d as i64, 3) as u64);
        }
    }

    #[test]
    fn squares_and_a_product() {
        // (x2^2, x3^2, x4^2, x2*x3) in x2..x4 (three variables)
        let gens = vec![
            Monomial::new(&[2, 0, 0]),
            Monomial::new(&[0, 2, 0]),
            Monomial::new(&[0, 0, 2]),
            Monomial::new(&[1, 1, 0]),
        ];
        let n = hilbert_numerator(&gens);
        let total: u64 = (0..10).map(|d| hilbert_function_from_numerator(&n, 3, d)).sum();
        assert_eq!(total, 6);
        for d in 0..6 {
            assert_eq!(hilbert_function_from_numerator(&n, 3, d), brute_hf(&gens, 3, d as u32));
        }
    }

    proptest! {
        #[test]
        fn matches_brute_force(raw in prop::collection::vec(prop::collection::vec(0u32..4, 4), 0..6)) {
            let gens: Vec<Monomial> = raw.iter().map(|e| Monomial::new(e)).filter(|m| !m.is_one()).collect();
            let n = hilbert_numerator(&gens);
            for d in 0..8 {
                prop_assert_eq!(hilbert_function_from_numerator(&n, 4, d), brute_hf(&gens, 4, d as u32));
            }
        }
    }
}
