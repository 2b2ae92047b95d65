//! The toric ideal `I_H = ker(x_i ↦ t^{a_i})` of a numerical semigroup.
//!
//! The reduced Gröbner basis is read off the Apéry set: under the order
//! `toric_order` (H-degree first, then reverse lexicographic with `x_1`
//! smallest) the standard monomials are exactly `x_1^k u_w`, where `w` runs
//! over `Ap(H, e(H))` and `u_w` is the smallest `x_1`-free monomial of degree
//! `w`. Elimination of `t` is kept as an independent route.

use std::collections::HashMap;

use crate::field::{Field, PrimeField};
use crate::groebner::{eliminate_from_basis, groebner_basis, IdealPresentation};
use crate::poly::{Monomial, PolyRing, Polynomial, TermOrder};
use crate::semigroup::{factorizations, representable, NumericalSemigroup};

type Poly<F> = Polynomial<<F as Field>::Elem>;

/// H-degree `Σ e_i a_i` of a monomial.
pub fn h_degree(m: &Monomial, gens: &[u64]) -> u64 {
    m.weighted_degree(gens)
}

/// H-graded order used for toric ideals: H-degree, then reverse
/// lexicographic with `x_n > ... > x_1`.
pub fn toric_order(h: &NumericalSemigroup) -> TermOrder {
    let n = h.embedding_dimension();
    TermOrder::weighted(h.generators().to_vec(), (0..n).rev().collect())
}

/// Standard-monomial data behind the Apéry description of `in(I_H)`.
struct AperyData {
    gens: Vec<u64>,
    e: u64,
    /// `apery[r]`: least element of `H` congruent to `r` modulo `e`
    apery: Vec<u64>,
    /// `reach[j][v]`: `v` is a combination of `gens[j..]`
    reach: Vec<Vec<bool>>,
}

impl AperyData {
    fn new(h: &NumericalSemigroup) -> Self {
        let gens = h.generators().to_vec();
        let e = gens[0];
        let apery = h.apery_set(e as i64).expect("multiplicity lies in H");
        let bound = *apery.iter().max().unwrap() + *gens.last().unwrap();
        let n = gens.len();
        let mut reach = vec![vec![false; bound as usize + 1]; n + 1];
        reach[n][0] = true;
        for j in (1..n).rev() {
            let a = gens[j] as usize;
            let (lower, upper) = reach.split_at_mut(j + 1);
            let row = &mut lower[j];
            let next = &upper[0];
            for v in 0..=bound as usize {
                row[v] = next[v] || (v >= a && row[v - a]);
            }
        }
        AperyData {
            gens,
            e,
            apery,
            reach,
        }
    }

    fn nvars(&self) -> usize {
        self.gens.len()
    }

    /// The order-minimal `x_1`-free monomial of degree `w` (maximize the
    /// exponent of `x_2`, then `x_3`, ...).
    fn u(&self, w: u64) -> Monomial {
        let n = self.nvars();
        let mut exps = vec![0u32; n];
        let mut rest = w;
        for j in 1..n {
            let a = self.gens[j];
            let mut k = rest / a;
            while !self.reach[j + 1][(rest - k * a) as usize] {
                k -= 1;
            }
            exps[j] = k as u32;
            rest -= k * a;
        }
        debug_assert_eq!(rest, 0);
        Monomial::new(&exps)
    }

    /// The standard monomial of H-degree `h`.
    fn standard(&self, h: u64) -> Monomial {
        let w = self.apery[(h % self.e) as usize];
        debug_assert!(w <= h);
        let k = ((h - w) / self.e) as u32;
        let u = self.u(w);
        u.with_exp(0, k)
    }

    fn is_standard(&self, m: &Monomial) -> bool {
        self.standard(h_degree(m, &self.gens)) == *m
    }
}

/// Reduced Gröbner basis of `I_H` under [`toric_order`], sorted increasingly
/// by leading monomial. Elements are `m - x_1^k u_w` with coprime monomials.
pub fn toric_groebner_basis<F: Field>(h: &NumericalSemigroup, field: &F) -> Vec<Poly<F>> {
    let n = h.embedding_dimension();
    if n == 1 {
        return Vec::new();
    }
    let data = AperyData::new(h);
    let ring = PolyRing::new(n, field.clone(), toric_order(h));
    let mut leads: Vec<Monomial> = Vec::new();
    for &w in &data.apery {
        let u = data.u(w);
        for i in 1..n {
            let m = u.mul(&Monomial::var(n, i));
            if data.is_standard(&m) || leads.contains(&m) {
                continue;
            }
            let minimal = m
                .support()
                .all(|j| data.is_standard(&m.div(&Monomial::var(n, j)).unwrap()));
            if minimal {
                leads.push(m);
            }
        }
    }
    let mut basis: Vec<Poly<F>> = leads
        .into_iter()
        .map(|m| {
            let tail = data.standard(h_degree(&m, &data.gens));
            ring.binomial(m, tail)
        })
        .collect();
    basis.sort_by(|a, b| ring.compare(a.leading_monomial().unwrap(), b.leading_monomial().unwrap()));
    basis
}

/// `I_H` presented by a minimal binomial generating set, in the ring
/// `F[x_1..x_n]` ordered by [`toric_order`]. The reduced Gröbner basis for
/// that order is cached up front.
pub fn toric_ideal_over<F: Field>(h: &NumericalSemigroup, field: F) -> IdealPresentation<F> {
    let n = h.embedding_dimension();
    let order = toric_order(h);
    let ring = PolyRing::new(n, field.clone(), order.clone());
    let gb = toric_groebner_basis(h, &field);
    let gens = minimal_binomial_generators(h, &ring, &gb);
    let ideal = IdealPresentation::new(ring, gens);
    ideal.seed_groebner_basis(&order, gb);
    ideal
}

/// `I_H` over the default prime field.
pub fn toric_ideal(h: &NumericalSemigroup) -> IdealPresentation<PrimeField> {
    toric_ideal_over(h, PrimeField::default())
}

/// `I_H` by eliminating `t` from `(x_i - t^{a_i})` under a block order.
/// Exponential in the size of the generators; meant for cross-checks.
pub fn toric_ideal_by_elimination<F: Field>(h: &NumericalSemigroup, field: F) -> IdealPresentation<F> {
    let n = h.embedding_dimension();
    let big = PolyRing::new(
        n + 1,
        field.clone(),
        TermOrder::block(vec![n], TermOrder::degrevlex(n + 1)),
    );
    let gens: Vec<Poly<F>> = h
        .generators()
        .iter()
        .enumerate()
        .map(|(i, &a)| big.binomial(Monomial::var(n + 1, i), Monomial::var_pow(n + 1, n, a as u32)))
        .collect();
    let gb = groebner_basis(&big, &gens);
    let kept = eliminate_from_basis(&gb, &[n]);
    let ring = PolyRing::new(n, field, toric_order(h));
    let back: Vec<usize> = (0..=n).map(|v| v.min(n - 1)).collect();
    let gens = kept.iter().map(|g| ring.import_mapped(g, &back)).collect();
    IdealPresentation::new(ring, gens)
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra.max(rb)] = ra.min(rb);
        true
    }
}

/// A minimal generating subset of the binomials `candidates` (which must
/// generate `I_H`): candidates are visited by increasing H-degree and kept
/// when they join two components of their fiber under the moves kept in
/// lower degrees.
pub fn minimal_binomial_generators<F: Field>(
    h: &NumericalSemigroup,
    ring: &PolyRing<F>,
    candidates: &[Poly<F>],
) -> Vec<Poly<F>> {
    let gens = h.generators();
    let mut sorted: Vec<&Poly<F>> = candidates.iter().filter(|g| !g.is_zero()).collect();
    sorted.sort_by(|a, b| {
        let da = h_degree(a.leading_monomial().unwrap(), gens);
        let db = h_degree(b.leading_monomial().unwrap(), gens);
        da.cmp(&db)
            .then_with(|| ring.compare(a.leading_monomial().unwrap(), b.leading_monomial().unwrap()))
    });
    let mut kept: Vec<(u64, Monomial, Monomial)> = Vec::new();
    let mut k = 0;
    while k < sorted.len() {
        let degree = h_degree(sorted[k].leading_monomial().unwrap(), gens);
        let mut end = k;
        while end < sorted.len() && h_degree(sorted[end].leading_monomial().unwrap(), gens) == degree {
            end += 1;
        }
        let fiber: Vec<Monomial> = factorizations(gens, degree)
            .iter()
            .map(|e| Monomial::new(e))
            .collect();
        let index: HashMap<&Monomial, usize> = fiber.iter().enumerate().map(|(i, m)| (m, i)).collect();
        let mut uf = UnionFind::new(fiber.len());
        for (i, m) in fiber.iter().enumerate() {
            for (_, u, v) in &kept {
                for (from, to) in [(u, v), (v, u)] {
                    if let Some(q) = m.div(from) {
                        let target = q.mul(to);
                        uf.union(i, index[&target]);
                    }
                }
            }
        }
        for g in &sorted[k..end] {
            let terms = g.terms();
            debug_assert_eq!(terms.len(), 2, "toric candidates are binomials");
            let a = &terms[0].monomial;
            let b = &terms[1].monomial;
            if uf.union(index[a], index[b]) {
                kept.push((degree, a.clone(), b.clone()));
            }
        }
        k = end;
    }
    kept.into_iter()
        .map(|(_, a, b)| ring.binomial(a, b))
        .collect()
}

/// Critical exponent `c_i` with its possible right-hand sides.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CriticalExponent {
    pub index: usize,
    pub c: u32,
    /// Exponent vectors `r` with `c_i a_i = Σ_{j≠i} r_j a_j`, non-pure
    /// powers first, each group in decreasing lexicographic order.
    pub witnesses: Vec<Vec<u32>>,
}

impl CriticalExponent {
    /// The preferred witness.
    pub fn witness(&self) -> &[u32] {
        &self.witnesses[0]
    }
}

/// For every generator `a_i`, the least `c_i > 0` with `c_i a_i` in the
/// semigroup generated by the other generators.
pub fn critical_exponents(h: &NumericalSemigroup) -> Vec<CriticalExponent> {
    let gens = h.generators();
    let n = gens.len();
    if n < 2 {
        return Vec::new();
    }
    (0..n)
        .map(|i| {
            let others: Vec<u64> = gens.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, &a)| a).collect();
            let c = (1u64..)
                .find(|&c| representable(&others, c * gens[i]))
                .unwrap();
            let reps = factorizations(&others, c * gens[i]);
            let mut witnesses: Vec<Vec<u32>> = reps
                .into_iter()
                .map(|r| {
                    let mut full = r.clone();
                    full.insert(i, 0);
                    full
                })
                .collect();
            let is_pure = |w: &Vec<u32>| w.iter().filter(|&&e| e > 0).count() == 1;
            witnesses.sort_by(|a, b| is_pure(a).cmp(&is_pure(b)).then_with(|| b.cmp(a)));
            CriticalExponent {
                index: i,
                c: c as u32,
                witnesses,
            }
        })
        .collect()
}

/// Substitutes `x_i ↦ t^{a_i}` and tests for zero.
pub fn vanishes_on_curve<F: Field>(field: &F, f: &Poly<F>, gens: &[u64]) -> bool {
    let mut sums: HashMap<u64, F::Elem> = HashMap::new();
    for t in f.terms() {
        let d = h_degree(&t.monomial, gens);
        let entry = sums.entry(d).or_insert_with(|| field.zero());
        *entry = field.add(entry, &t.coeff);
    }
    sums.values().all(|c| field.is_zero(c))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sg(g: &[i64]) -> NumericalSemigroup {
        NumericalSemigroup::from_generators(g).unwrap()
    }

    fn render_sorted(ideal: &IdealPresentation<PrimeField>) -> Vec<String> {
        let mut v = ideal.render_generators();
        v.sort();
        v
    }

    #[test]
    fn two_generators() {
        let h = sg(&[2, 3]);
        let i = toric_ideal(&h);
        assert_eq!(i.generators().len(), 1);
        let r = i.ring();
        assert!(i.equals(&IdealPresentation::new(r.clone(), vec![r.parse("x1^3-x2^2").unwrap()])));
    }

    #[test]
    fn almost_complete_intersection_generators() {
        let h = sg(&[11, 13, 14, 15, 19]);
        let i = toric_ideal(&h);
        let r = i.ring().clone();
        let expected: Vec<_> = ["x1^3-x3*x5", "x2^2-x1*x4", "x3^2-x2*x4", "x4^2-x1*x5", "x5^2-x1*x2*x3"]
            .iter()
            .map(|s| r.parse(s).unwrap())
            .collect();
        let expected = IdealPresentation::new(r, expected);
        assert_eq!(i.generators().len(), 5);
        assert!(i.equals(&expected));
    }

    #[test]
    fn complete_intersection_count() {
        assert_eq!(toric_ideal(&sg(&[6, 10, 15])).generators().len(), 2);
        assert_eq!(toric_ideal(&NumericalSemigroup::natural()).generators().len(), 0);
    }

    #[test]
    fn elimination_agrees() {
        for g in [&[3, 4, 5][..], &[4, 6, 7, 9], &[5, 6, 8, 7], &[7, 8, 20], &[6, 10, 15]] {
            let h = sg(g);
            let direct = toric_ideal(&h);
            let elim = toric_ideal_by_elimination(&h, PrimeField::default());
            assert!(direct.equals(&elim), "{h}");
            // the Apéry basis is the reduced basis for the toric order
            let fresh = groebner_basis(direct.ring(), elim.generators());
            assert_eq!(fresh, *direct.groebner_basis(), "{h}");
        }
    }

    #[test]
    fn generators_vanish_and_fibers() {
        let h = sg(&[5, 7, 9, 11]);
        let i = toric_ideal(&h);
        let f = i.ring().field();
        for g in i.groebner_basis().iter() {
            assert!(vanishes_on_curve(f, g, h.generators()));
        }
        // H-graded Hilbert function of S/I_H is the indicator of H
        let std: Vec<Monomial> = i.leading_monomials();
        for d in 0..=(h.frobenius_number() as u64 + h.max_generator()) {
            let count = factorizations(h.generators(), d)
                .iter()
                .filter(|e| {
                    let m = Monomial::new(e);
                    !std.iter().any(|l| l.divides(&m))
                })
                .count();
            assert_eq!(count, h.contains(d as i64) as usize, "degree {d}");
        }
        let _ = render_sorted(&i);
    }

    #[test]
    fn critical_exponent_examples() {
        let c: Vec<u32> = critical_exponents(&sg(&[2, 3])).iter().map(|c| c.c).collect();
        assert_eq!(c, vec![3, 2]);
        let h = sg(&[6, 7, 8, 9]);
        let crit = critical_exponents(&h);
        let brute: Vec<u32> = (0..4)
            .map(|i| {
                let others: Vec<u64> = h.generators().iter().enumerate().filter(|(j, _)| *j != i).map(|(_, &a)| a).collect();
                (1..).find(|&c| !factorizations(&others, c as u64 * h.generators()[i]).is_empty()).unwrap()
            })
            .collect();
        assert_eq!(crit.iter().map(|c| c.c).collect::<Vec<_>>(), brute);
        assert_eq!(brute, vec![3, 2, 2, 2]);
        // ⟨4, 2c, 2a+c⟩ with c = 3, a = 2
        let crit = critical_exponents(&sg(&[4, 6, 7]));
        assert_eq!((crit[1].c, crit[2].c), (2, 2));
        // non-pure-power witnesses are preferred: 2*14 = 13 + 15
        let crit = critical_exponents(&sg(&[11, 13, 14, 15, 19]));
        assert_eq!(crit[2].witness(), &[0, 1, 0, 1, 0]);
    }
}
