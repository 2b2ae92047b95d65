//! Buchberger's algorithm with the normal selection strategy and the
//! Gebauer–Möller criteria, plus ideal-level operations built on it.

mod hilbert;
mod ideal;
mod linalg;

pub use hilbert::{hilbert_function_from_numerator, hilbert_numerator, monomials_of_degree};
pub use ideal::IdealPresentation;
pub(crate) use linalg::SparseEchelon;

use crate::field::Field;
use crate::poly::{Monomial, PolyRing, Polynomial};

type Poly<F> = Polynomial<<F as Field>::Elem>;

/// Knobs for [`groebner_basis_with`].
#[derive(Clone, Debug, Default)]
pub struct GroebnerOptions {
    /// Divide every new basis element by the largest power of this variable
    /// that divides it. Combined with a reverse-lexicographic order in which
    /// the variable is smallest, the output is a Gröbner basis of the
    /// saturation `(I : x^∞)`.
    pub saturate: Option<usize>,
    /// Skip S-pairs and inputs above this degree.
    pub max_degree: Option<u64>,
}

/// Outcome of a possibly interrupted run.
#[derive(Clone, Debug)]
pub struct GroebnerRun<E> {
    /// Reduced and sorted when `complete`; otherwise the raw partial basis.
    pub basis: Vec<Polynomial<E>>,
    pub complete: bool,
}

#[derive(Clone, Debug)]
enum Item {
    Input(usize),
    Pair(usize, usize),
}

#[derive(Clone, Debug)]
struct Pending {
    degree: u64,
    lcm: Monomial,
    item: Item,
}

struct Engine<'a, F: Field> {
    ring: &'a PolyRing<F>,
    opts: &'a GroebnerOptions,
    basis: Vec<Poly<F>>,
    active: Vec<bool>,
    pending: Vec<Pending>,
}

/// Reduced Gröbner basis of the ideal generated by `gens` under the ring's
/// order, sorted increasingly by leading monomial.
pub fn groebner_basis<F: Field>(ring: &PolyRing<F>, gens: &[Poly<F>]) -> Vec<Poly<F>> {
    groebner_basis_with(ring, gens, &GroebnerOptions::default(), |_, _| false).basis
}

/// Buchberger run that reports after every completed degree. `on_degree`
/// receives the degree and the current (unreduced) basis and returns `true`
/// to stop early. For homogeneous input the partial basis is then a Gröbner
/// basis up to that degree.
pub fn groebner_basis_with<F: Field>(
    ring: &PolyRing<F>,
    gens: &[Poly<F>],
    opts: &GroebnerOptions,
    mut on_degree: impl FnMut(u64, &[Poly<F>]) -> bool,
) -> GroebnerRun<F::Elem> {
    let inputs: Vec<Poly<F>> = gens
        .iter()
        .map(|g| ring.make_monic(&ring.import(g)))
        .filter(|g| !g.is_zero())
        .collect();
    let mut engine = Engine {
        ring,
        opts,
        basis: Vec::new(),
        active: Vec::new(),
        pending: Vec::new(),
    };
    for (k, g) in inputs.iter().enumerate() {
        let lm = g.leading_monomial().unwrap().clone();
        let degree = g
            .monomials()
            .map(|m| ring.order().degree_of(m))
            .max()
            .unwrap();
        engine.pending.push(Pending {
            degree,
            lcm: lm,
            item: Item::Input(k),
        });
    }
    let mut current: Option<u64> = None;
    loop {
        let next = engine.select();
        let next_degree = next.as_ref().map(|p| p.degree);
        if let Some(d) = current {
            if next_degree != Some(d) {
                let stop = on_degree(d, &engine.active_basis());
                if stop {
                    return GroebnerRun {
                        basis: engine.active_basis(),
                        complete: false,
                    };
                }
            }
        }
        let Some(p) = next else { break };
        current = Some(p.degree);
        if opts.max_degree.is_some_and(|m| p.degree > m) {
            continue;
        }
        let f = match p.item {
            Item::Input(k) => inputs[k].clone(),
            Item::Pair(i, j) => ring
                .s_polynomial(&engine.basis[i], &engine.basis[j])
                .expect("basis elements are nonzero"),
        };
        let h = engine.reduce(f);
        if !h.is_zero() {
            engine.insert(h);
        }
    }
    let truncated = opts.max_degree.is_some();
    GroebnerRun {
        basis: reduce_basis(ring, &engine.active_basis()),
        complete: !truncated,
    }
}

impl<F: Field> Engine<'_, F> {
    fn active_basis(&self) -> Vec<Poly<F>> {
        self.basis
            .iter()
            .zip(&self.active)
            .filter(|(_, &a)| a)
            .map(|(g, _)| g.clone())
            .collect()
    }

    fn select(&mut self) -> Option<Pending> {
        let order = self.ring.order();
        let mut best: Option<usize> = None;
        for (k, p) in self.pending.iter().enumerate() {
            best = match best {
                None => Some(k),
                Some(b) => {
                    let q = &self.pending[b];
                    let better = p.degree < q.degree
                        || (p.degree == q.degree && order.cmp(&p.lcm, &q.lcm).is_lt());
                    Some(if better { k } else { b })
                }
            };
        }
        best.map(|k| self.pending.swap_remove(k))
    }

    /// Top-reduction against the active basis, then optional saturation.
    fn reduce(&self, mut f: Poly<F>) -> Poly<F> {
        let field = self.ring.field();
        loop {
            let Some(lead) = f.leading().cloned() else {
                return f;
            };
            let divisor = self
                .basis
                .iter()
                .zip(&self.active)
                .filter(|(_, &a)| a)
                .map(|(g, _)| g)
                .find(|g| g.leading_monomial().unwrap().divides(&lead.monomial));
            match divisor {
                Some(g) => {
                    let gt = g.leading().unwrap();
                    let q = lead.monomial.div(&gt.monomial).unwrap();
                    let c = field.neg(&field.div(&lead.coeff, &gt.coeff));
                    f = self.ring.add_scaled(&f, &c, &q, g);
                }
                None => {
                    if let Some(v) = self.opts.saturate {
                        if lead.monomial.exp(v) > 0 {
                            let stripped = self.ring.strip_variable(&f, v);
                            if stripped != f {
                                f = stripped;
                                continue;
                            }
                        }
                    }
                    return self.ring.make_monic(&f);
                }
            }
        }
    }

    /// Adds `h` and updates the pair set (Gebauer–Möller).
    fn insert(&mut self, h: Poly<F>) {
        let order = self.ring.order();
        let lh = h.leading_monomial().unwrap().clone();
        let new_index = self.basis.len();

        // candidate pairs (g, h) for active g
        let mut candidates: Vec<(usize, Monomial, bool)> = self
            .basis
            .iter()
            .enumerate()
            .filter(|(i, _)| self.active[*i])
            .map(|(i, g)| {
                let lg = g.leading_monomial().unwrap();
                (i, lg.lcm(&lh), lg.is_coprime(&lh))
            })
            .collect();

        // criterion M: drop a pair whose lcm is a proper multiple of another's
        let snapshot = candidates.clone();
        candidates.retain(|(_, l, _)| {
            !snapshot
                .iter()
                .any(|(_, l2, _)| l2 != l && l2.divides(l))
        });
        // criterion F: among pairs with equal lcm keep one, preferring a
        // coprime representative so that the whole class is discarded
        let mut kept: Vec<(usize, Monomial, bool)> = Vec::new();
        for c in candidates {
            match kept.iter_mut().find(|k| k.1 == c.1) {
                Some(k) => {
                    if c.2 && !k.2 {
                        *k = c;
                    }
                }
                None => kept.push(c),
            }
        }
        // product criterion
        kept.retain(|(_, _, coprime)| !coprime);

        // criterion B on old pairs
        let basis = &self.basis;
        self.pending.retain(|p| match p.item {
            Item::Input(_) => true,
            Item::Pair(i, j) => {
                if !lh.divides(&p.lcm) {
                    return true;
                }
                let li = basis[i].leading_monomial().unwrap().lcm(&lh);
                let lj = basis[j].leading_monomial().unwrap().lcm(&lh);
                li == p.lcm || lj == p.lcm
            }
        });

        for (i, l, _) in kept {
            self.pending.push(Pending {
                degree: order.degree_of(&l),
                lcm: l,
                item: Item::Pair(i, new_index),
            });
        }

        for (i, g) in self.basis.iter().enumerate() {
            if self.active[i] && lh.divides(g.leading_monomial().unwrap()) {
                self.active[i] = false;
            }
        }
        self.basis.push(h);
        self.active.push(true);
    }
}

/// Turns a Gröbner basis into the reduced one: minimal leading monomials,
/// monic, fully tail-reduced, sorted increasingly by leading monomial.
pub fn reduce_basis<F: Field>(ring: &PolyRing<F>, basis: &[Poly<F>]) -> Vec<Poly<F>> {
    let mut polys: Vec<Poly<F>> = basis
        .iter()
        .map(|g| ring.make_monic(&ring.import(g)))
        .filter(|g| !g.is_zero())
        .collect();
    polys.sort_by(|a, b| {
        ring.compare(a.leading_monomial().unwrap(), b.leading_monomial().unwrap())
    });
    polys.dedup_by(|a, b| a.leading_monomial() == b.leading_monomial());
    let mut minimal: Vec<Poly<F>> = Vec::with_capacity(polys.len());
    for g in polys {
        let lm = g.leading_monomial().unwrap();
        if !minimal
            .iter()
            .any(|m| m.leading_monomial().unwrap().divides(lm))
        {
            minimal.push(g);
        }
    }
    let mut reduced = Vec::with_capacity(minimal.len());
    for k in 0..minimal.len() {
        let g = &minimal[k];
        let lead = g.leading().unwrap().clone();
        let others: Vec<Poly<F>> = minimal
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != k)
            .map(|(_, p)| p.clone())
            .collect();
        let tail = ring.from_terms(
            g.terms()[1..]
                .iter()
                .map(|t| (t.monomial.clone(), t.coeff.clone()))
                .collect(),
        );
        let tail = ring.normal_form(&tail, &others);
        let mut terms = vec![(lead.monomial, lead.coeff)];
        terms.extend(tail.terms().iter().map(|t| (t.monomial.clone(), t.coeff.clone())));
        reduced.push(ring.make_monic(&ring.from_terms(terms)));
    }
    reduced
}

/// Buchberger's criterion: every S-polynomial reduces to zero.
pub fn is_groebner_basis<F: Field>(ring: &PolyRing<F>, basis: &[Poly<F>]) -> bool {
    let basis: Vec<Poly<F>> = basis.iter().map(|g| ring.import(g)).collect();
    for i in 0..basis.len() {
        for j in i + 1..basis.len() {
            let s = ring.s_polynomial(&basis[i], &basis[j]).unwrap();
            if !ring.normal_form(&s, &basis).is_zero() {
                return false;
            }
        }
    }
    true
}

/// Elements of `basis` free of the given variables; for a Gröbner basis
/// under an elimination order this generates the elimination ideal.
pub fn eliminate_from_basis<E: Clone>(basis: &[Polynomial<E>], vars: &[usize]) -> Vec<Polynomial<E>> {
    basis
        .iter()
        .filter(|g| g.monomials().all(|m| vars.iter().all(|&v| m.exp(v) == 0)))
        .cloned()
        .collect()
}
