use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock, RwLock};

use super::hilbert::{hilbert_function_from_numerator, hilbert_numerator, monomials_of_degree};
use super::linalg::SparseEchelon;
use super::{eliminate_from_basis, groebner_basis};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::poly::{Monomial, PolyRing, Polynomial, TermOrder};

type Poly<F> = Polynomial<<F as Field>::Elem>;
type BasisCache<F> = Arc<RwLock<HashMap<TermOrder, Arc<Vec<Poly<F>>>>>>;

/// An ideal given by generators, with memoized Gröbner bases (one per term
/// order) and, for homogeneous ideals, the Hilbert series of the quotient.
#[derive(Clone)]
pub struct IdealPresentation<F: Field> {
    ring: PolyRing<F>,
    generators: Vec<Poly<F>>,
    bases: BasisCache<F>,
    numerator: Arc<OnceLock<Vec<i64>>>,
}

impl<F: Field> IdealPresentation<F> {
    pub fn new(ring: PolyRing<F>, generators: Vec<Poly<F>>) -> Self {
        let generators = generators
            .iter()
            .filter(|g| !g.is_zero())
            .map(|g| ring.import(g))
            .collect();
        IdealPresentation {
            ring,
            generators,
            bases: Arc::default(),
            numerator: Arc::default(),
        }
    }

    pub fn ring(&self) -> &PolyRing<F> {
        &self.ring
    }

    pub fn nvars(&self) -> usize {
        self.ring.nvars()
    }

    pub fn generators(&self) -> &[Poly<F>] {
        &self.generators
    }

    /// Reduced Gröbner basis under the ring's own order.
    pub fn groebner_basis(&self) -> Arc<Vec<Poly<F>>> {
        self.groebner_basis_for(self.ring.order())
    }

    pub fn groebner_basis_for(&self, order: &TermOrder) -> Arc<Vec<Poly<F>>> {
        if let Some(hit) = self.bases.read().unwrap().get(order) {
            return hit.clone();
        }
        let ring = self.ring.with_order(order.clone());
        let basis = Arc::new(groebner_basis(&ring, &self.generators));
        self.bases
            .write()
            .unwrap()
            .entry(order.clone())
            .or_insert(basis)
            .clone()
    }

    /// Stores a reduced Gröbner basis obtained by other means.
    pub(crate) fn seed_groebner_basis(&self, order: &TermOrder, basis: Vec<Poly<F>>) {
        self.bases
            .write()
            .unwrap()
            .insert(order.clone(), Arc::new(basis));
    }

    pub fn normal_form(&self, f: &Poly<F>) -> Poly<F> {
        self.ring.normal_form(&self.ring.import(f), &self.groebner_basis())
    }

    pub fn contains(&self, f: &Poly<F>) -> bool {
        self.normal_form(f).is_zero()
    }

    pub fn contains_ideal(&self, other: &IdealPresentation<F>) -> bool {
        other.generators.iter().all(|g| self.contains(g))
    }

    /// Equality as ideals, by mutual membership of generators.
    pub fn equals(&self, other: &IdealPresentation<F>) -> bool {
        self.contains_ideal(other) && other.contains_ideal(self)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.generators.iter().all(Polynomial::is_homogeneous)
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.groebner_basis()
            .iter()
            .map(|g| g.leading_monomial().unwrap().clone())
            .collect()
    }

    /// Numerator `N(t)` of the Hilbert series `N(t)/(1-t)^n` of `S/I`.
    pub fn hilbert_numerator(&self) -> Result<Vec<i64>> {
        if !self.is_homogeneous() {
            return Err(Error::NonHomogeneousInput);
        }
        Ok(self
            .numerator
            .get_or_init(|| hilbert_numerator(&self.leading_monomials()))
            .clone())
    }

    /// `dim_K (S/I)_d` for homogeneous `I`.
    pub fn hilbert_function(&self, d: u64) -> Result<u64> {
        let n = self.hilbert_numerator()?;
        Ok(hilbert_function_from_numerator(&n, self.nvars(), d))
    }

    /// `(I : x_i)`.
    pub fn quotient_by_variable(&self, i: usize) -> IdealPresentation<F> {
        if self.is_homogeneous() {
            // in(I : x_i) = in(I) : x_i for revlex orders with x_i smallest
            let mut ranking: Vec<usize> = (0..self.nvars()).filter(|&v| v != i).collect();
            ranking.push(i);
            let order = TermOrder::degrevlex_by(ranking);
            let gens = self
                .groebner_basis_for(&order)
                .iter()
                .map(|g| divide_by_variable(g, i).unwrap_or_else(|| g.clone()))
                .collect();
            return IdealPresentation::new(self.ring.clone(), gens);
        }
        let xi = IdealPresentation::new(self.ring.clone(), vec![self.ring.var(i)]);
        let meet = self.intersect(&xi);
        let gens = meet
            .generators
            .iter()
            .map(|g| divide_by_variable(g, i).expect("elements of (x_i) are divisible by x_i"))
            .collect();
        IdealPresentation::new(self.ring.clone(), gens)
    }

    /// `I ∩ J`, eliminating `y` from `y I + (1 - y) J`.
    pub fn intersect(&self, other: &IdealPresentation<F>) -> IdealPresentation<F> {
        let n = self.nvars();
        let big = PolyRing::new(
            n + 1,
            self.ring.field().clone(),
            TermOrder::block(vec![n], TermOrder::degrevlex(n + 1)),
        );
        let embed: Vec<usize> = (0..n).collect();
        let y = big.var(n);
        let one_minus_y = big.sub(&big.constant(big.field().one()), &y);
        let mut gens = Vec::new();
        for g in &self.generators {
            gens.push(big.mul(&y, &big.import_mapped(g, &embed)));
        }
        for g in &other.generators {
            gens.push(big.mul(&one_minus_y, &big.import_mapped(g, &embed)));
        }
        let gb = groebner_basis(&big, &gens);
        let kept = eliminate_from_basis(&gb, &[n]);
        let back: Vec<usize> = (0..=n).map(|v| v.min(n - 1)).collect();
        let gens = kept
            .iter()
            .map(|g| self.ring.import_mapped(g, &back))
            .collect();
        IdealPresentation::new(self.ring.clone(), gens)
    }

    /// `I ∩ K[x_j : j ∉ vars]`, still presented in the full ring.
    pub fn eliminate(&self, vars: &[usize]) -> IdealPresentation<F> {
        let order = TermOrder::block(vars.to_vec(), TermOrder::degrevlex(self.nvars()));
        let gb = self.groebner_basis_for(&order);
        IdealPresentation::new(self.ring.clone(), eliminate_from_basis(&gb, vars))
    }

    /// A minimal homogeneous generating system, chosen among the reduced
    /// Gröbner basis elements, sorted by degree.
    pub fn minimal_generators(&self) -> Result<Vec<Poly<F>>> {
        let gb = self.groebner_basis();
        let chosen = self.minimal_generating_subset(&gb)?;
        let mut out: Vec<Poly<F>> = chosen.into_iter().map(|k| gb[k].clone()).collect();
        out.sort_by_key(|g| g.degree().unwrap());
        Ok(out)
    }

    /// Indices of a minimal generating subset of `candidates`, which must be
    /// homogeneous elements of `I` generating `I`. Candidates are scanned by
    /// degree, in the given order within a degree.
    pub fn minimal_generating_subset(&self, candidates: &[Poly<F>]) -> Result<Vec<usize>> {
        if !self.is_homogeneous() || !candidates.iter().all(Polynomial::is_homogeneous) {
            return Err(Error::NonHomogeneousInput);
        }
        let mut order: Vec<usize> = (0..candidates.len())
            .filter(|&k| !candidates[k].is_zero())
            .collect();
        order.sort_by_key(|&k| candidates[k].degree().unwrap());
        let (Some(&first), Some(&last)) = (order.first(), order.last()) else {
            return Ok(Vec::new());
        };
        let min_deg = candidates[first].degree().unwrap();
        let max_deg = candidates[last].degree().unwrap();
        let gb = self.groebner_basis();
        let lms: Vec<Monomial> = self.leading_monomials();
        let in_initial = |m: &Monomial| lms.iter().any(|l| l.divides(m));
        let n = self.nvars();
        let ring = &self.ring;
        let mut chosen = Vec::new();
        let mut previous: Vec<Monomial> = Vec::new();
        for d in min_deg..=max_deg {
            let current: Vec<Monomial> = monomials_of_degree(n, d)
                .into_iter()
                .filter(|m| in_initial(m))
                .collect();
            let index: HashMap<&Monomial, usize> =
                current.iter().enumerate().map(|(k, m)| (m, k)).collect();
            let coords = |p: &Poly<F>| -> Vec<(usize, F::Elem)> {
                p.terms()
                    .iter()
                    .filter_map(|t| index.get(&t.monomial).map(|&k| (k, t.coeff.clone())))
                    .collect()
            };
            let mut echelon = SparseEchelon::new(ring.field().clone());
            // I_{d-1} has the basis m - NF(m), m running over in(I)_{d-1}
            for m in &previous {
                let mono = ring.monomial(m.clone());
                let element = ring.sub(&mono, &ring.normal_form(&mono, &gb));
                for v in 0..n {
                    let shifted = ring.mul_term(&element, &ring.field().one(), &Monomial::var(n, v));
                    echelon.insert(coords(&shifted));
                }
            }
            for &k in order.iter().filter(|&&k| candidates[k].degree() == Some(d)) {
                if echelon.rank() == current.len() {
                    break;
                }
                if echelon.insert(coords(&ring.import(&candidates[k]))) {
                    chosen.push(k);
                }
            }
            previous = current;
        }
        Ok(chosen)
    }

    /// Degrees of a minimal homogeneous generating system, increasing.
    pub fn minimal_generator_degrees(&self) -> Result<Vec<u32>> {
        Ok(self
            .minimal_generators()?
            .iter()
            .map(|g| g.degree().unwrap())
            .collect())
    }

    pub fn render_generators(&self) -> Vec<String> {
        self.generators.iter().map(|g| self.ring.render(g)).collect()
    }
}

fn divide_by_variable<E: Clone>(g: &Polynomial<E>, i: usize) -> Option<Polynomial<E>> {
    if g.monomials().any(|m| m.exp(i) == 0) {
        return None;
    }
    let nvars = g.nvars()?;
    let xi = Monomial::var(nvars, i);
    let terms = g
        .terms()
        .iter()
        .map(|t| crate::poly::Term {
            coeff: t.coeff.clone(),
            monomial: t.monomial.div(&xi).unwrap(),
        })
        .collect::<Vec<_>>();
    Some(Polynomial::from_sorted_terms(terms))
}

impl<F: Field> fmt::Debug for IdealPresentation<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.render_generators().join(", "))
    }
}
