//! Sparse multivariate polynomials over a [`Field`], kept sorted by the term
//! order of the ring they belong to.

mod monomial;
mod order;
mod parse;

use std::cmp::Ordering;

pub use monomial::Monomial;
pub use order::{OrderKind, TermOrder};

use crate::error::{Error, Result};
use crate::field::{Field, PrimeField};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Term<E> {
    pub coeff: E,
    pub monomial: Monomial,
}

/// A polynomial as a list of terms with distinct monomials and nonzero
/// coefficients, sorted decreasingly by the ambient order. The zero
/// polynomial has no terms.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Polynomial<E> {
    terms: Vec<Term<E>>,
}

/// Polynomials over the default prime field.
pub type FpPolynomial = Polynomial<u32>;

impl<E: Clone> Polynomial<E> {
    pub fn zero() -> Self {
        Polynomial { terms: Vec::new() }
    }

    /// Wraps terms already sorted by the intended order, distinct and nonzero.
    pub(crate) fn from_sorted_terms(terms: Vec<Term<E>>) -> Self {
        Polynomial { terms }
    }

    pub fn terms(&self) -> &[Term<E>] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<Term<E>> {
        self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn monomials(&self) -> impl Iterator<Item = &Monomial> {
        self.terms.iter().map(|t| &t.monomial)
    }

    /// Largest total degree of a term.
    pub fn degree(&self) -> Option<u32> {
        self.monomials().map(Monomial::degree).max()
    }

    /// Smallest total degree of a term, the degree of the initial form.
    pub fn initial_degree(&self) -> Option<u32> {
        self.monomials().map(Monomial::degree).min()
    }

    /// `f*`: the homogeneous component of least total degree.
    pub fn initial_form(&self) -> Result<Self> {
        let d = self.initial_degree().ok_or(Error::ZeroPolynomial)?;
        Ok(Polynomial {
            terms: self
                .terms
                .iter()
                .filter(|t| t.monomial.degree() == d)
                .cloned()
                .collect(),
        })
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_homogeneous_for(None)
    }

    pub fn is_homogeneous_for(&self, weights: Option<&[u64]>) -> bool {
        let deg = |m: &Monomial| match weights {
            Some(w) => m.weighted_degree(w),
            None => m.degree() as u64,
        };
        let mut it = self.monomials();
        match it.next() {
            None => true,
            Some(first) => {
                let d = deg(first);
                it.all(|m| deg(m) == d)
            }
        }
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    /// The leading term under the order the polynomial is sorted by.
    pub fn leading(&self) -> Option<&Term<E>> {
        self.terms.first()
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|t| &t.monomial)
    }

    pub fn nvars(&self) -> Option<usize> {
        self.terms.first().map(|t| t.monomial.nvars())
    }
}

/// `K[x_1..x_n]` with a fixed term order.
#[derive(Clone, Debug, PartialEq)]
pub struct PolyRing<F: Field> {
    nvars: usize,
    field: F,
    order: TermOrder,
}

/// The default ring: `F_32003[x_1..x_n]` with degrevlex `x_1 > ... > x_n`.
pub fn default_ring(nvars: usize) -> PolyRing<PrimeField> {
    PolyRing::new(nvars, PrimeField::default(), TermOrder::degrevlex(nvars))
}

impl<F: Field> PolyRing<F> {
    pub fn new(nvars: usize, field: F, order: TermOrder) -> Self {
        assert_eq!(order.nvars(), nvars, "order arity must match the ring");
        PolyRing {
            nvars,
            field,
            order,
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn order(&self) -> &TermOrder {
        &self.order
    }

    pub fn with_order(&self, order: TermOrder) -> Self {
        PolyRing::new(self.nvars, self.field.clone(), order)
    }

    pub fn compare(&self, a: &Monomial, b: &Monomial) -> Ordering {
        self.order.cmp(a, b)
    }

    pub fn var(&self, i: usize) -> Polynomial<F::Elem> {
        self.monomial(Monomial::var(self.nvars, i))
    }

    pub fn monomial(&self, m: Monomial) -> Polynomial<F::Elem> {
        debug_assert_eq!(m.nvars(), self.nvars);
        Polynomial {
            terms: vec![Term {
                coeff: self.field.one(),
                monomial: m,
            }],
        }
    }

    pub fn constant(&self, c: F::Elem) -> Polynomial<F::Elem> {
        self.from_terms(vec![(Monomial::one(self.nvars), c)])
    }

    /// `a - b`.
    pub fn binomial(&self, a: Monomial, b: Monomial) -> Polynomial<F::Elem> {
        let minus_one = self.field.neg(&self.field.one());
        self.from_terms(vec![(a, self.field.one()), (b, minus_one)])
    }

    /// Builds a polynomial from arbitrary terms, merging duplicates and
    /// dropping zeros.
    pub fn from_terms(&self, raw: Vec<(Monomial, F::Elem)>) -> Polynomial<F::Elem> {
        let mut raw = raw;
        raw.sort_by(|a, b| self.order.cmp(&b.0, &a.0));
        let mut terms: Vec<Term<F::Elem>> = Vec::with_capacity(raw.len());
        for (m, c) in raw {
            debug_assert_eq!(m.nvars(), self.nvars);
            match terms.last_mut() {
                Some(last) if last.monomial == m => {
                    last.coeff = self.field.add(&last.coeff, &c);
                }
                _ => terms.push(Term { coeff: c, monomial: m }),
            }
        }
        terms.retain(|t| !self.field.is_zero(&t.coeff));
        Polynomial { terms }
    }

    /// Re-sorts a polynomial coming from a ring with another order.
    pub fn import(&self, f: &Polynomial<F::Elem>) -> Polynomial<F::Elem> {
        let mut terms = f.terms.clone();
        terms.sort_by(|a, b| self.order.cmp(&b.monomial, &a.monomial));
        Polynomial { terms }
    }

    /// Moves `f` into this ring, sending variable `i` to `map[i]`.
    pub fn import_mapped(&self, f: &Polynomial<F::Elem>, map: &[usize]) -> Polynomial<F::Elem> {
        self.from_terms(
            f.terms
                .iter()
                .map(|t| (t.monomial.remap(self.nvars, map), t.coeff.clone()))
                .collect(),
        )
    }

    pub fn leading_term<'a>(&self, f: &'a Polynomial<F::Elem>) -> Result<&'a Term<F::Elem>> {
        f.leading().ok_or(Error::ZeroPolynomial)
    }

    pub fn neg(&self, f: &Polynomial<F::Elem>) -> Polynomial<F::Elem> {
        Polynomial {
            terms: f
                .terms
                .iter()
                .map(|t| Term {
                    coeff: self.field.neg(&t.coeff),
                    monomial: t.monomial.clone(),
                })
                .collect(),
        }
    }

    pub fn scale(&self, f: &Polynomial<F::Elem>, c: &F::Elem) -> Polynomial<F::Elem> {
        if self.field.is_zero(c) {
            return Polynomial::zero();
        }
        Polynomial {
            terms: f
                .terms
                .iter()
                .map(|t| Term {
                    coeff: self.field.mul(&t.coeff, c),
                    monomial: t.monomial.clone(),
                })
                .collect(),
        }
    }

    pub fn make_monic(&self, f: &Polynomial<F::Elem>) -> Polynomial<F::Elem> {
        match f.leading() {
            None => Polynomial::zero(),
            Some(t) if self.field.is_one(&t.coeff) => f.clone(),
            Some(t) => self.scale(f, &self.field.inv(&t.coeff).unwrap()),
        }
    }

    /// `f + c * m * g`, merging two sorted term lists.
    pub fn add_scaled(
        &self,
        f: &Polynomial<F::Elem>,
        c: &F::Elem,
        m: &Monomial,
        g: &Polynomial<F::Elem>,
    ) -> Polynomial<F::Elem> {
        if self.field.is_zero(c) || g.is_zero() {
            return f.clone();
        }
        let mut out = Vec::with_capacity(f.terms.len() + g.terms.len());
        let mut fi = f.terms.iter().peekable();
        let mut gi = g.terms.iter().map(|t| Term {
            coeff: self.field.mul(c, &t.coeff),
            monomial: t.monomial.mul(m),
        });
        let mut pending = gi.next();
        loop {
            match (fi.peek(), pending.as_ref()) {
                (None, None) => break,
                (Some(_), None) => out.push(fi.next().unwrap().clone()),
                (None, Some(_)) => {
                    out.push(pending.take().unwrap());
                    pending = gi.next();
                }
                (Some(a), Some(b)) => match self.order.cmp(&a.monomial, &b.monomial) {
                    Ordering::Greater => out.push(fi.next().unwrap().clone()),
                    Ordering::Less => {
                        out.push(pending.take().unwrap());
                        pending = gi.next();
                    }
                    Ordering::Equal => {
                        let s = self.field.add(&a.coeff, &b.coeff);
                        if !self.field.is_zero(&s) {
                            out.push(Term {
                                coeff: s,
                                monomial: a.monomial.clone(),
                            });
                        }
                        fi.next();
                        pending = gi.next();
                    }
                },
            }
        }
        Polynomial { terms: out }
    }

    pub fn add(&self, f: &Polynomial<F::Elem>, g: &Polynomial<F::Elem>) -> Polynomial<F::Elem> {
        self.add_scaled(f, &self.field.one(), &Monomial::one(self.nvars), g)
    }

    pub fn sub(&self, f: &Polynomial<F::Elem>, g: &Polynomial<F::Elem>) -> Polynomial<F::Elem> {
        let minus_one = self.field.neg(&self.field.one());
        self.add_scaled(f, &minus_one, &Monomial::one(self.nvars), g)
    }

    pub fn mul_term(
        &self,
        f: &Polynomial<F::Elem>,
        c: &F::Elem,
        m: &Monomial,
    ) -> Polynomial<F::Elem> {
        self.add_scaled(&Polynomial::zero(), c, m, f)
    }

    pub fn mul(&self, f: &Polynomial<F::Elem>, g: &Polynomial<F::Elem>) -> Polynomial<F::Elem> {
        let mut raw = Vec::with_capacity(f.len() * g.len());
        for a in &f.terms {
            for b in &g.terms {
                raw.push((a.monomial.mul(&b.monomial), self.field.mul(&a.coeff, &b.coeff)));
            }
        }
        self.from_terms(raw)
    }

    pub fn pow(&self, f: &Polynomial<F::Elem>, e: u32) -> Polynomial<F::Elem> {
        let mut acc = self.constant(self.field.one());
        for _ in 0..e {
            acc = self.mul(&acc, f);
        }
        acc
    }

    /// `S(f, g) = (L/lt f) f - (L/lt g) g` with `L` the lcm of the leading
    /// monomials.
    pub fn s_polynomial(
        &self,
        f: &Polynomial<F::Elem>,
        g: &Polynomial<F::Elem>,
    ) -> Result<Polynomial<F::Elem>> {
        let a = self.leading_term(f)?;
        let b = self.leading_term(g)?;
        let l = a.monomial.lcm(&b.monomial);
        let ma = l.div(&a.monomial).unwrap();
        let mb = l.div(&b.monomial).unwrap();
        let left = self.mul_term(f, &self.field.inv(&a.coeff).unwrap(), &ma);
        let cb = self.field.neg(&self.field.inv(&b.coeff).unwrap());
        Ok(self.add_scaled(&left, &cb, &mb, g))
    }

    /// Full remainder of `f` modulo `basis` (every term reduced).
    pub fn normal_form(
        &self,
        f: &Polynomial<F::Elem>,
        basis: &[Polynomial<F::Elem>],
    ) -> Polynomial<F::Elem> {
        let mut rest = f.clone();
        let mut result = Vec::new();
        while let Some(lead) = rest.terms.first().cloned() {
            let divisor = basis
                .iter()
                .find(|g| g.leading_monomial().is_some_and(|m| m.divides(&lead.monomial)));
            match divisor {
                Some(g) => {
                    let gt = g.leading().unwrap();
                    let q = lead.monomial.div(&gt.monomial).unwrap();
                    let c = self.field.neg(&self.field.div(&lead.coeff, &gt.coeff));
                    rest = self.add_scaled(&rest, &c, &q, g);
                }
                None => {
                    result.push(rest.terms.remove(0));
                }
            }
        }
        Polynomial { terms: result }
    }

    /// Substitutes `value` for variable `i`; the variable remains in the
    /// ring with exponent zero.
    pub fn substitute(&self, f: &Polynomial<F::Elem>, i: usize, value: &F::Elem) -> Polynomial<F::Elem> {
        self.from_terms(
            f.terms
                .iter()
                .map(|t| {
                    let mut c = t.coeff.clone();
                    for _ in 0..t.monomial.exp(i) {
                        c = self.field.mul(&c, value);
                    }
                    (t.monomial.with_exp(i, 0), c)
                })
                .collect(),
        )
    }

    /// Divides by the largest power of variable `i` dividing every term.
    pub fn strip_variable(&self, f: &Polynomial<F::Elem>, i: usize) -> Polynomial<F::Elem> {
        let k = f.monomials().map(|m| m.exp(i)).min().unwrap_or(0);
        if k == 0 {
            return f.clone();
        }
        Polynomial {
            terms: f
                .terms
                .iter()
                .map(|t| Term {
                    coeff: t.coeff.clone(),
                    monomial: t.monomial.with_exp(i, t.monomial.exp(i) - k),
                })
                .collect(),
        }
    }

    /// Text form such as `x2^2-x1*x4`, terms in order.
    pub fn render(&self, f: &Polynomial<F::Elem>) -> String {
        if f.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, t) in f.terms.iter().enumerate() {
            let c = self.field.render(&t.coeff);
            let (neg, abs) = match c.strip_prefix('-') {
                Some(rest) => (true, rest.to_string()),
                None => (false, c),
            };
            if neg {
                out.push('-');
            } else if k > 0 {
                out.push('+');
            }
            if t.monomial.is_one() {
                out.push_str(&abs);
            } else {
                if abs != "1" {
                    out.push_str(&abs);
                    out.push('*');
                }
                out.push_str(&t.monomial.to_string());
            }
        }
        out
    }

    pub fn parse(&self, input: &str) -> Result<Polynomial<F::Elem>> {
        let raw = parse::parse_terms(input, self.nvars)?;
        Ok(self.from_terms(
            raw.into_iter()
                .map(|(c, e)| (Monomial::new(&e), self.field.from_i64(c)))
                .collect(),
        ))
    }
}
