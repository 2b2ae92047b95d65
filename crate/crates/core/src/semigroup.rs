//! Numerical semigroups: membership, classical invariants and the order
//! function `ord_H`.
//!
//! The order of `h` is the maximal length of a factorization of `h` into
//! minimal generators. Counting the elements of a fixed order gives the
//! Hilbert function of the tangent cone, which the rest of the crate uses as
//! an independent check on every Gröbner-level computation.

use std::cmp::Reverse;
use std::collections::BinaryHeap;
use std::fmt;
use std::sync::{Arc, OnceLock, RwLock};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

pub(crate) fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub(crate) fn gcd_all(values: &[u64]) -> u64 {
    values.iter().fold(0, |acc, &v| gcd(acc, v))
}

/// Memoized `ord` values; `-1` marks integers outside the semigroup.
#[derive(Debug, Default)]
struct OrderTable {
    ord: Vec<i32>,
}

/// A numerical semigroup, stored through its minimal generating system.
///
/// Generators are kept strictly increasing, so `generators()[0]` is the
/// multiplicity `e(H)` and the variable `x_i` of the toric ring corresponds to
/// the `i`-th smallest generator.
#[derive(Clone)]
pub struct NumericalSemigroup {
    generators: Vec<u64>,
    table: Arc<RwLock<OrderTable>>,
    apery: Arc<OnceLock<Vec<u64>>>,
}

impl NumericalSemigroup {
    /// Builds a semigroup from an arbitrary generating list, dropping
    /// redundant generators.
    pub fn from_generators(raw: &[i64]) -> Result<Self> {
        if raw.is_empty() {
            return Err(Error::EmptyInput);
        }
        if let Some(&bad) = raw.iter().find(|&&a| a <= 0) {
            return Err(Error::NonPositive(bad));
        }
        let mut gens: Vec<u64> = raw.iter().map(|&a| a as u64).collect();
        gens.sort_unstable();
        gens.dedup();
        let g = gcd_all(&gens);
        if g != 1 {
            return Err(Error::NonCoprime(g));
        }
        // Fixed point, largest candidates first.
        loop {
            let mut removed = false;
            for idx in (0..gens.len()).rev() {
                let a = gens[idx];
                let others: Vec<u64> = gens.iter().copied().filter(|&b| b != a).collect();
                if !others.is_empty() && representable(&others, a) {
                    gens.remove(idx);
                    removed = true;
                    break;
                }
            }
            if !removed {
                break;
            }
        }
        Ok(Self::from_minimal_unchecked(gens))
    }

    /// Convenience wrapper over [`from_generators`](Self::from_generators) for
    /// unsigned input.
    pub fn new(raw: &[u64]) -> Result<Self> {
        let signed: Vec<i64> = raw.iter().map(|&a| a as i64).collect();
        Self::from_generators(&signed)
    }

    /// The semigroup `ℕ = ⟨1⟩`.
    pub fn natural() -> Self {
        Self::from_minimal_unchecked(vec![1])
    }

    pub(crate) fn from_minimal_unchecked(generators: Vec<u64>) -> Self {
        NumericalSemigroup {
            generators,
            table: Arc::new(RwLock::new(OrderTable::default())),
            apery: Arc::new(OnceLock::new()),
        }
    }

    pub fn generators(&self) -> &[u64] {
        &self.generators
    }

    pub fn multiplicity(&self) -> u64 {
        self.generators[0]
    }

    pub fn embedding_dimension(&self) -> usize {
        self.generators.len()
    }

    pub fn is_natural(&self) -> bool {
        self.generators == [1]
    }

    pub fn max_generator(&self) -> u64 {
        *self.generators.last().expect("non-empty generator list")
    }

    fn ensure_table(&self, upto: usize) {
        if self.table.read().unwrap().ord.len() > upto {
            return;
        }
        let mut table = self.table.write().unwrap();
        let ord = &mut table.ord;
        if ord.is_empty() {
            ord.push(0);
        }
        let target = upto.max(ord.len() * 2 - 1);
        ord.reserve(target + 1 - ord.len());
        for h in ord.len()..=target {
            let mut best = -1;
            for &a in &self.generators {
                let a = a as usize;
                if a > h {
                    break;
                }
                let prev = ord[h - a];
                if prev >= 0 && prev + 1 > best {
                    best = prev + 1;
                }
            }
            ord.push(best);
        }
    }

    fn raw_order(&self, h: u64) -> i32 {
        self.ensure_table(h as usize);
        self.table.read().unwrap().ord[h as usize]
    }

    /// Membership test; negative integers are never members.
    pub fn contains(&self, h: i64) -> bool {
        if h < 0 {
            return false;
        }
        if h as i128 > self.frobenius_number() as i128 {
            return true;
        }
        self.raw_order(h as u64) >= 0
    }

    /// `ord_H(h)`: the maximal number of generators summing to `h`.
    pub fn order_of(&self, h: i64) -> Result<u32> {
        if h < 0 {
            return Err(Error::NotInSemigroup(h));
        }
        match self.raw_order(h as u64) {
            o if o < 0 => Err(Error::NotInSemigroup(h)),
            o => Ok(o as u32),
        }
    }

    /// Apéry set with respect to the multiplicity, indexed by residue.
    fn apery_multiplicity(&self) -> &[u64] {
        self.apery.get_or_init(|| apery_dijkstra(&self.generators))
    }

    /// Frobenius number `g(H)`; `-1` for `ℕ`.
    pub fn frobenius_number(&self) -> i64 {
        let ap = self.apery_multiplicity();
        *ap.iter().max().unwrap() as i64 - self.multiplicity() as i64
    }

    /// `g(H) + 1`, the smallest integer from which on everything lies in `H`.
    pub fn conductor(&self) -> u64 {
        (self.frobenius_number() + 1) as u64
    }

    pub fn gaps(&self) -> Vec<u64> {
        let f = self.frobenius_number();
        if f < 0 {
            return Vec::new();
        }
        self.ensure_table(f as usize);
        let table = self.table.read().unwrap();
        (1..=f as u64).filter(|&h| table.ord[h as usize] < 0).collect()
    }

    /// `Ap(H, n)`: the least element of `H` in each residue class modulo `n`,
    /// indexed by residue.
    pub fn apery_set(&self, n: i64) -> Result<Vec<u64>> {
        if n <= 0 || !self.contains(n) {
            return Err(Error::NotInSemigroup(n));
        }
        let n = n as u64;
        if n == self.multiplicity() {
            return Ok(self.apery_multiplicity().to_vec());
        }
        let bound = self.conductor() + n;
        self.ensure_table(bound as usize);
        let table = self.table.read().unwrap();
        let mut result = vec![u64::MAX; n as usize];
        let mut missing = n as usize;
        for h in 0..=bound {
            let r = (h % n) as usize;
            if result[r] == u64::MAX && table.ord[h as usize] >= 0 {
                result[r] = h;
                missing -= 1;
                if missing == 0 {
                    break;
                }
            }
        }
        Ok(result)
    }

    /// Pseudo-Frobenius numbers in increasing order.
    pub fn pseudo_frobenius(&self) -> Vec<i64> {
        if self.is_natural() {
            return vec![-1];
        }
        self.gaps()
            .into_iter()
            .filter(|&g| {
                self.generators
                    .iter()
                    .all(|&a| self.contains((g + a) as i64))
            })
            .map(|g| g as i64)
            .collect()
    }

    pub fn is_symmetric(&self) -> bool {
        self.pseudo_frobenius() == [self.frobenius_number()]
    }

    pub fn is_pseudo_symmetric(&self) -> bool {
        let f = self.frobenius_number();
        f > 0 && f % 2 == 0 && self.pseudo_frobenius() == [f / 2, f]
    }

    /// `#{h ∈ H : ord_H(h) = i}`, the Hilbert function of the tangent cone.
    pub fn gr_hilbert_function(&self, i: usize) -> u64 {
        if i == 0 {
            return 1;
        }
        let lo = i as u64 * self.multiplicity();
        let hi = i as u64 * self.max_generator();
        self.ensure_table(hi as usize);
        let table = self.table.read().unwrap();
        (lo..=hi)
            .filter(|&h| table.ord[h as usize] == i as i32)
            .count() as u64
    }

    /// Smallest `r` with `M_{r+1} = e(H) + M_r`, where `M_k = {h : ord_H(h) ≥ k}`.
    /// The tangent cone Hilbert function equals `e(H)` from `r` on.
    pub fn hilbert_stabilization(&self) -> usize {
        let e = self.multiplicity();
        let f = self.frobenius_number().max(0) as u64;
        let mut r = 0usize;
        loop {
            let window = (r as u64 + 2) * self.max_generator() + f + e + 1;
            self.ensure_table(window as usize);
            let table = self.table.read().unwrap();
            let ord = &table.ord;
            let k = r as i32;
            let stable = (0..=window).all(|h| {
                let in_next = ord[h as usize] >= k + 1;
                let in_shift = h >= e && ord[(h - e) as usize] >= k;
                in_next == in_shift
            });
            if stable {
                return r;
            }
            r += 1;
        }
    }

    /// A factorization of `h` of maximal length, choosing the
    /// lexicographically greatest exponent vector among those.
    pub fn max_length_representation(&self, h: i64) -> Result<Vec<u32>> {
        let target = self.order_of(h)?;
        max_length_lex_greatest(&self.generators, h as u64, target)
            .ok_or(Error::NotInSemigroup(h))
    }
}

/// `h ∈ ⟨gens⟩` for an arbitrary (not necessarily coprime) generator list.
pub(crate) fn representable(gens: &[u64], h: u64) -> bool {
    let h = h as usize;
    let mut reach = vec![false; h + 1];
    reach[0] = true;
    for v in 1..=h {
        reach[v] = gens
            .iter()
            .any(|&a| (a as usize) <= v && reach[v - a as usize]);
    }
    reach[h]
}

/// Maximal factorization lengths over `gens`, `-1` when not representable.
pub(crate) fn max_length_table(gens: &[u64], upto: usize) -> Vec<i32> {
    let mut best = vec![-1i32; upto + 1];
    best[0] = 0;
    for v in 1..=upto {
        for &a in gens {
            let a = a as usize;
            if a <= v && best[v - a] >= 0 {
                best[v] = best[v].max(best[v - a] + 1);
            }
        }
    }
    best
}

fn max_length_lex_greatest(gens: &[u64], h: u64, length: u32) -> Option<Vec<u32>> {
    // suffix[j][v]: max length of v over gens[j..]
    let n = gens.len();
    let suffix: Vec<Vec<i32>> = (0..=n)
        .map(|j| max_length_table(&gens[j..], h as usize))
        .collect();
    let mut rest = h;
    let mut remaining = length as i32;
    let mut lambda = vec![0u32; n];
    for j in 0..n {
        let a = gens[j];
        let mut k = rest / a;
        loop {
            let v = (rest - k * a) as usize;
            if suffix[j + 1][v] >= 0 && suffix[j + 1][v] + k as i32 == remaining {
                break;
            }
            if k == 0 {
                return None;
            }
            k -= 1;
        }
        lambda[j] = k as u32;
        rest -= k * a;
        remaining -= k as i32;
    }
    (rest == 0 && remaining == 0).then_some(lambda)
}

fn apery_dijkstra(gens: &[u64]) -> Vec<u64> {
    let e = gens[0] as usize;
    let mut dist = vec![u64::MAX; e];
    dist[0] = 0;
    let mut heap = BinaryHeap::new();
    heap.push(Reverse((0u64, 0usize)));
    while let Some(Reverse((d, r))) = heap.pop() {
        if d > dist[r] {
            continue;
        }
        for &a in &gens[1..] {
            let nr = (r + a as usize) % e;
            let nd = d + a;
            if nd < dist[nr] {
                dist[nr] = nd;
                heap.push(Reverse((nd, nr)));
            }
        }
    }
    dist
}

/// All factorizations of `h` over `gens`, in lexicographically decreasing
/// order of exponent vectors.
pub fn factorizations(gens: &[u64], h: u64) -> Vec<Vec<u32>> {
    let n = gens.len();
    let reach: Vec<Vec<bool>> = (0..=n)
        .map(|j| {
            let t = max_length_table(&gens[j..], h as usize);
            t.into_iter().map(|v| v >= 0).collect()
        })
        .collect();
    let mut out = Vec::new();
    let mut current = vec![0u32; n];
    fn walk(
        j: usize,
        rest: u64,
        gens: &[u64],
        reach: &[Vec<bool>],
        current: &mut Vec<u32>,
        out: &mut Vec<Vec<u32>>,
    ) {
        if j == gens.len() {
            if rest == 0 {
                out.push(current.clone());
            }
            return;
        }
        let a = gens[j];
        let mut k = rest / a;
        loop {
            let v = rest - k * a;
            if reach[j + 1][v as usize] {
                current[j] = k as u32;
                walk(j + 1, v, gens, reach, current, out);
            }
            if k == 0 {
                break;
            }
            k -= 1;
        }
        current[j] = 0;
    }
    if reach[0][h as usize] {
        walk(0, h, gens, &reach, &mut current, &mut out);
    }
    out
}

impl PartialEq for NumericalSemigroup {
    fn eq(&self, other: &Self) -> bool {
        self.generators == other.generators
    }
}

impl Eq for NumericalSemigroup {}

impl std::hash::Hash for NumericalSemigroup {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.generators.hash(state);
    }
}

impl PartialOrd for NumericalSemigroup {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for NumericalSemigroup {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.generators.cmp(&other.generators)
    }
}

impl fmt::Debug for NumericalSemigroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for NumericalSemigroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<")?;
        for (i, a) in self.generators.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, ">")
    }
}

impl Serialize for NumericalSemigroup {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.generators.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for NumericalSemigroup {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw = Vec::<i64>::deserialize(deserializer)?;
        NumericalSemigroup::from_generators(&raw).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sg(g: &[i64]) -> NumericalSemigroup {
        NumericalSemigroup::from_generators(g).unwrap()
    }

    /// Membership by brute force over exponent vectors.
    fn brute_member(gens: &[u64], h: u64) -> bool {
        !factorizations(gens, h).is_empty()
    }

    #[test]
    fn minimalization() {
        assert_eq!(sg(&[12, 14, 15, 16, 18, 19]).generators(), [12, 14, 15, 16, 18, 19]);
        assert_eq!(sg(&[1, 5]).generators(), [1]);
        assert_eq!(sg(&[13, 9, 7, 6, 4]).generators(), [4, 6, 7, 9]);
        assert!(brute_member(&[4, 9], 13));
    }

    #[test]
    fn construction_errors() {
        assert_eq!(NumericalSemigroup::from_generators(&[]), Err(Error::EmptyInput));
        assert_eq!(NumericalSemigroup::from_generators(&[4, 6]), Err(Error::NonCoprime(2)));
        assert_eq!(NumericalSemigroup::from_generators(&[3, 0]), Err(Error::NonPositive(0)));
    }

    #[test]
    fn membership() {
        let h = sg(&[6, 10, 15]);
        assert!(h.contains(20));
        assert!(h.contains(0));
        assert!(!sg(&[2, 3]).contains(1));
        assert!(!h.contains(-3));
        for x in 0..200 {
            assert_eq!(h.contains(x), brute_member(&[6, 10, 15], x as u64));
        }
    }

    #[test]
    fn frobenius_and_gaps() {
        assert_eq!(sg(&[2, 3]).frobenius_number(), 1);
        assert_eq!(sg(&[2, 3]).gaps(), [1]);
        assert_eq!(sg(&[3, 4, 5]).frobenius_number(), 2);
        let n = NumericalSemigroup::natural();
        assert_eq!(n.frobenius_number(), -1);
        assert!(n.gaps().is_empty());
        // two generators: ab - a - b
        assert_eq!(sg(&[7, 11]).frobenius_number(), 77 - 18);
    }

    #[test]
    fn apery_sets() {
        let h = sg(&[4, 6, 7, 9]);
        let ap = h.apery_set(4).unwrap();
        assert_eq!(ap.len(), 4);
        for (r, &w) in ap.iter().enumerate() {
            assert_eq!(w % 4, r as u64);
            assert!(h.contains(w as i64));
            assert!(w < 4 || !h.contains(w as i64 - 4));
        }
        let ap6 = h.apery_set(6).unwrap();
        assert_eq!(ap6.len(), 6);
        assert_eq!(h.apery_set(5), Err(Error::NotInSemigroup(5)));
    }

    #[test]
    fn symmetry() {
        assert!(sg(&[5, 6, 8, 7]).is_symmetric());
        assert!(sg(&[2, 3]).is_symmetric());
        assert_eq!(sg(&[2, 3]).pseudo_frobenius(), [1]);
        let komeda = sg(&[5, 7, 6, 9]);
        assert_eq!(komeda.generators(), [5, 6, 7, 9]);
        assert!(komeda.is_pseudo_symmetric());
        assert!(!komeda.is_symmetric());
    }

    #[test]
    fn orders() {
        assert_eq!(sg(&[4, 6, 7, 9]).order_of(8), Ok(2));
        assert_eq!(sg(&[4, 6, 7, 9]).order_of(10), Ok(2));
        assert_eq!(sg(&[2, 3]).order_of(0), Ok(0));
        assert_eq!(sg(&[2, 3]).order_of(7), Ok(3));
        assert_eq!(sg(&[2, 3]).order_of(1), Err(Error::NotInSemigroup(1)));
        let brute = factorizations(&[2, 3], 7)
            .into_iter()
            .map(|l| l.iter().sum::<u32>())
            .max();
        assert_eq!(brute, Some(3));
    }

    #[test]
    fn hilbert_function_values() {
        let h = sg(&[3, 4, 5]);
        assert_eq!(h.gr_hilbert_function(0), 1);
        assert_eq!(h.gr_hilbert_function(1), 3);
        // ord-2 elements: 6, 7, 8, 9, 10 minus those of higher order
        let brute = (0..=10u64)
            .filter(|&x| {
                factorizations(&[3, 4, 5], x)
                    .iter()
                    .map(|l| l.iter().sum::<u32>())
                    .max()
                    == Some(2)
            })
            .count() as u64;
        assert_eq!(h.gr_hilbert_function(2), brute);
        assert_eq!(brute, 3);
        let r = h.hilbert_stabilization();
        for i in r..r + 5 {
            assert_eq!(h.gr_hilbert_function(i), 3);
        }
    }

    #[test]
    fn lex_greatest_witness() {
        let h = sg(&[4, 6, 7, 9]);
        let w = h.max_length_representation(18).unwrap();
        let ord = h.order_of(18).unwrap();
        assert_eq!(w.iter().sum::<u32>(), ord);
        let all = factorizations(h.generators(), 18);
        let best = all
            .iter()
            .filter(|l| l.iter().sum::<u32>() == ord)
            .max()
            .unwrap();
        assert_eq!(&w, best);
    }
}
