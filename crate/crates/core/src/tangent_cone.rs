//! The tangent cone `gr_m K[H] = S / I_H*` and the predicates built on it.
//!
//! `I_H*` is computed through a weighted homogenization of `I_H`: every
//! binomial `x^α - x^β` with `|α| ≤ |β|` becomes `x^α - x^β t^{|β|-|α|}`,
//! which is homogeneous for the weights `(a_i - 1, 1)`. A Buchberger run in
//! which `t` is smallest and stripped from every new element computes the
//! saturation; setting `t = 0` yields initial forms. The run stops as soon as
//! the leading monomials already have the Hilbert series predicted by the
//! semigroup, which both certifies and truncates the computation.

use std::collections::HashMap;
use std::fmt;
use std::sync::OnceLock;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{Field, PrimeField};
use crate::groebner::{
    groebner_basis, groebner_basis_with, hilbert_function_from_numerator, hilbert_numerator,
    is_groebner_basis, monomials_of_degree, reduce_basis, GroebnerOptions, IdealPresentation,
};
use crate::groebner::SparseEchelon;
use crate::poly::{FpPolynomial, Monomial, PolyRing, Polynomial, TermOrder};
use crate::semigroup::NumericalSemigroup;
use crate::toric::{h_degree, toric_ideal_over};

/// Default cap on the embedding dimension for permutation searches.
pub const PERMUTATION_LIMIT: usize = 8;

/// Numerator of the Hilbert series of `gr_m K[H]` written over
/// `(1-t)^{embdim}`, from the semigroup alone.
pub fn gr_hilbert_numerator(h: &NumericalSemigroup) -> Vec<i64> {
    let n = h.embedding_dimension();
    let r = h.hilbert_stabilization();
    let mut p = Vec::with_capacity(r + 1);
    let mut prev = 0i64;
    for d in 0..=r {
        let v = h.gr_hilbert_function(d) as i64;
        p.push(v - prev);
        prev = v;
    }
    for _ in 1..n {
        let mut next = vec![0i64; p.len() + 1];
        for (k, &c) in p.iter().enumerate() {
            next[k] += c;
            next[k + 1] -= c;
        }
        p = next;
    }
    while p.len() > 1 && *p.last().unwrap() == 0 {
        p.pop();
    }
    p
}

/// Membership in `I_H*` for a standard-homogeneous `f`, read off the
/// semigroup: `gr_m K[H]` sends `x^α` to `t^h` when `ord_H(h) = |α|` and to
/// zero otherwise, so `f ∈ I_H*` iff for every H-degree of maximal order
/// the coefficients of that degree sum to zero.
pub fn tangent_cone_contains(h: &NumericalSemigroup, f: &FpPolynomial, field: &PrimeField) -> bool {
    if f.is_zero() {
        return true;
    }
    if !f.is_homogeneous() {
        return false;
    }
    let d = f.degree().unwrap();
    let mut sums: HashMap<u64, u32> = HashMap::new();
    for t in f.terms() {
        let w = h_degree(&t.monomial, h.generators());
        if h.order_of(w as i64).expect("H-degrees lie in H") == d {
            let entry = sums.entry(w).or_insert(0);
            *entry = field.add(entry, &t.coeff);
        }
    }
    sums.values().all(|c| *c == 0)
}

/// Fast necessary conditions for quadraticity on the generators alone.
/// Returns the refutation, if any.
pub fn quadratic_prefilter(h: &NumericalSemigroup) -> Option<QuadraticEvidence> {
    let a = h.generators();
    let n = a.len();
    if n < 2 {
        return None;
    }
    let divisible = (1..n).any(|k| (k..n).any(|l| (a[k] + a[l]) % a[0] == 0));
    if !divisible {
        return Some(QuadraticEvidence::NoDivisibleSum);
    }
    for i in 1..n {
        let others: Vec<u64> = a.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, &x)| x).collect();
        if !crate::semigroup::representable(&others, 2 * a[i]) {
            return Some(QuadraticEvidence::DoubleNotInOthers { index: i + 1 });
        }
    }
    None
}

/// Why a semigroup is or is not quadratic.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum QuadraticEvidence {
    /// `H = ℕ`, `I_H* = 0`.
    Natural,
    /// `I_H*` is minimally generated by `count` quadrics.
    AllQuadrics { count: usize },
    /// No `a_1 | a_k + a_l` with `k, l ≥ 2`.
    NoDivisibleSum,
    /// `2 a_index` is not in the semigroup of the other generators (1-based).
    DoubleNotInOthers { index: usize },
    /// A minimal generator of `I_H*` of degree `degree > 2`.
    HigherDegree { degree: u32, generator: String },
}

impl QuadraticEvidence {
    pub fn is_quadratic(&self) -> bool {
        matches!(self, QuadraticEvidence::Natural | QuadraticEvidence::AllQuadrics { .. })
    }
}

/// Output of [`standard_basis`].
#[derive(Clone, Debug)]
pub struct StandardBasisResult {
    /// Elements of `I_H` (in the toric ring) whose initial forms generate `I_H*`.
    pub basis: Vec<FpPolynomial>,
    /// `I_H*` in `F[x_1..x_n]` with degrevlex.
    pub initial_ideal: IdealPresentation<PrimeField>,
    /// Whether the initial forms of `basis` minimally generate `I_H*`.
    pub minimal: bool,
}

/// Standard basis of the toric ideal `toric` of `h` and the ideal `I_H*`.
/// Fails with [`Error::OracleMismatch`] if the result disagrees with the
/// Hilbert function of `gr_m K[H]` in some degree up to stabilization + 2.
pub fn standard_basis(
    h: &NumericalSemigroup,
    toric: &IdealPresentation<PrimeField>,
) -> Result<StandardBasisResult> {
    let n = h.embedding_dimension();
    if toric.nvars() != n {
        return Err(Error::ArityMismatch {
            expected: n,
            found: toric.nvars(),
        });
    }
    let field = *toric.ring().field();
    let star_ring = PolyRing::new(n, field, TermOrder::degrevlex(n));
    if n == 1 {
        return Ok(StandardBasisResult {
            basis: Vec::new(),
            initial_ideal: IdealPresentation::new(star_ring, Vec::new()),
            minimal: true,
        });
    }
    let gens = h.generators();
    let mut weights: Vec<u64> = gens.iter().map(|&a| a - 1).collect();
    weights.push(1);
    let big = PolyRing::new(n + 1, field, TermOrder::weighted(weights, (0..=n).collect()));
    let homogenized: Vec<FpPolynomial> = toric
        .generators()
        .iter()
        .map(|f| homogenize(&big, f))
        .collect();
    let oracle = gr_hilbert_numerator(h);
    let x_part = |m: &Monomial| Monomial::new(&m.exponents()[..n]);
    let opts = GroebnerOptions {
        saturate: Some(n),
        max_degree: None,
    };
    let run = groebner_basis_with(&big, &homogenized, &opts, |_, partial| {
        let lms: Vec<Monomial> = partial
            .iter()
            .map(|g| x_part(g.leading_monomial().unwrap()))
            .collect();
        hilbert_numerator(&lms) == oracle
    });
    if run.complete {
        let lms: Vec<Monomial> = run
            .basis
            .iter()
            .map(|g| x_part(g.leading_monomial().unwrap()))
            .collect();
        if hilbert_numerator(&lms) != oracle {
            return Err(Error::OracleMismatch(format!(
                "saturated basis of {h} has the wrong Hilbert series"
            )));
        }
    }
    let to_x: Vec<usize> = (0..n).chain([0]).collect();
    let one = field.one();
    let mut basis = Vec::with_capacity(run.basis.len());
    let mut forms = Vec::with_capacity(run.basis.len());
    let tangent_ring = PolyRing::new(n, field, tangent_order(h));
    for g in &run.basis {
        if g.leading_monomial().unwrap().exp(n) != 0 {
            return Err(Error::OracleMismatch(format!(
                "unsaturated element in the homogenized basis of {h}"
            )));
        }
        basis.push(toric.ring().import_mapped(&big.substitute(g, n, &one), &to_x));
        let low = Polynomial::from_sorted_terms(
            g.terms()
                .iter()
                .filter(|t| t.monomial.exp(n) == 0)
                .cloned()
                .collect(),
        );
        forms.push(tangent_ring.import_mapped(&low, &to_x));
    }
    let seeded = reduce_basis(&tangent_ring, &forms);
    let initial_ideal = IdealPresentation::new(star_ring, forms.clone());
    initial_ideal.seed_groebner_basis(tangent_ring.order(), seeded);
    check_oracle(h, &initial_ideal)?;
    let chosen = initial_ideal.minimal_generating_subset(&forms)?;
    Ok(StandardBasisResult {
        minimal: chosen.len() == basis.len(),
        basis,
        initial_ideal,
    })
}

/// The order used on `F[x_1..x_n]` for the initial forms coming out of
/// [`standard_basis`]: weights `a_i - 1`, then reverse lexicographic with
/// `x_n` smallest.
pub fn tangent_order(h: &NumericalSemigroup) -> TermOrder {
    let n = h.embedding_dimension();
    let weights = h.generators().iter().map(|&a| (a - 1).max(1)).collect();
    TermOrder::weighted(weights, (0..n).collect())
}

/// `f(x) ↦ F(x, t)` with `t` at index `n`, each term padded by
/// `t^{deg - ord}` so that the lowest-degree terms carry no `t`.
fn homogenize(big: &PolyRing<PrimeField>, f: &FpPolynomial) -> FpPolynomial {
    let n = big.nvars() - 1;
    let low = f.initial_degree().unwrap();
    big.from_terms(
        f.terms()
            .iter()
            .map(|t| {
                let mut exps = t.monomial.exponents().to_vec();
                exps.push(t.monomial.degree() - low);
                debug_assert_eq!(exps.len(), n + 1);
                (Monomial::new(&exps), t.coeff)
            })
            .collect(),
    )
}

fn check_oracle(h: &NumericalSemigroup, star: &IdealPresentation<PrimeField>) -> Result<()> {
    let bound = h.hilbert_stabilization() + 2;
    for d in 0..=bound {
        let got = star.hilbert_function(d as u64)?;
        let want = h.gr_hilbert_function(d);
        if got != want {
            return Err(Error::OracleMismatch(format!(
                "HF(S/I*, {d}) = {got} but the semigroup gives {want} for {h}"
            )));
        }
    }
    Ok(())
}

/// Classification of an ideal by its number of minimal generators.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CiClass {
    CompleteIntersection,
    AlmostCompleteIntersection,
    Other,
}

impl CiClass {
    fn from_mu(mu: usize, n: usize) -> CiClass {
        if mu + 1 == n {
            CiClass::CompleteIntersection
        } else if mu == n {
            CiClass::AlmostCompleteIntersection
        } else {
            CiClass::Other
        }
    }
}

impl fmt::Display for CiClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CiClass::CompleteIntersection => "CI",
            CiClass::AlmostCompleteIntersection => "almost CI",
            CiClass::Other => "other",
        })
    }
}

/// An order on `F[x_1..x_n]` for which the reduced Gröbner basis of
/// `I_H*` consists of quadrics.
#[derive(Clone, Debug)]
pub struct GQuadraticWitness {
    pub order: TermOrder,
    pub basis: Vec<FpPolynomial>,
}

/// Status of one bound statement.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", content = "detail", rename_all = "snake_case")]
pub enum BoundStatus {
    Satisfied,
    Violated(String),
    NotApplicable(String),
}

impl BoundStatus {
    fn check(ok: bool, detail: impl FnOnce() -> String) -> BoundStatus {
        if ok {
            BoundStatus::Satisfied
        } else {
            BoundStatus::Violated(detail())
        }
    }

    pub fn is_violated(&self) -> bool {
        matches!(self, BoundStatus::Violated(_))
    }
}

/// Multiplicity bounds for quadratic semigroups, evaluated on one `H`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BoundReport {
    pub embdim: usize,
    pub multiplicity: u64,
    /// `n ≤ e ≤ 2^{n-1}`.
    pub range: BoundStatus,
    /// `e = n` iff `I*` has a linear resolution.
    pub minimal_multiplicity: BoundStatus,
    /// `e = 2^{n-1}` iff `I*` is CI iff `I` is CI.
    pub extremal: BoundStatus,
    /// With a Cohen–Macaulay tangent cone: `e ≤ 2^{n-1} - 2^{n-3}` or `e = 2^{n-1}`.
    pub forbidden_gap: BoundStatus,
    /// At `e = 2^{n-1} - 2^{n-3}` (CM case): `I*` is almost CI with a quadratic
    /// Gröbner basis for degrevlex `x_n > ... > x_1`.
    pub gap_boundary: BoundStatus,
    /// A one-line summary such as "minimal multiplicity, linear resolution branch".
    pub branch: String,
}

impl BoundReport {
    pub fn violations(&self) -> Vec<&'static str> {
        let mut out = Vec::new();
        for (name, s) in [
            ("range", &self.range),
            ("minimal_multiplicity", &self.minimal_multiplicity),
            ("extremal", &self.extremal),
            ("forbidden_gap", &self.forbidden_gap),
            ("gap_boundary", &self.gap_boundary),
        ] {
            if s.is_violated() {
                out.push(name);
            }
        }
        out
    }
}

/// `I_H`, `I_H*` and everything derived from them, memoized.
#[derive(Clone)]
pub struct TangentCone {
    semigroup: NumericalSemigroup,
    toric: IdealPresentation<PrimeField>,
    result: StandardBasisResult,
    minimal_generators: OnceLock<Vec<FpPolynomial>>,
    toric_mu: OnceLock<usize>,
    cohen_macaulay: OnceLock<bool>,
}

impl fmt::Debug for TangentCone {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TangentCone({}, I* = {:?})", self.semigroup, self.result.initial_ideal)
    }
}

impl TangentCone {
    pub fn new(h: &NumericalSemigroup) -> Result<Self> {
        Self::with_field(h, PrimeField::default())
    }

    pub fn with_field(h: &NumericalSemigroup, field: PrimeField) -> Result<Self> {
        let toric = toric_ideal_over(h, field);
        let result = standard_basis(h, &toric)?;
        Ok(TangentCone {
            semigroup: h.clone(),
            toric,
            result,
            minimal_generators: OnceLock::new(),
            toric_mu: OnceLock::new(),
            cohen_macaulay: OnceLock::new(),
        })
    }

    pub fn semigroup(&self) -> &NumericalSemigroup {
        &self.semigroup
    }

    pub fn embedding_dimension(&self) -> usize {
        self.semigroup.embedding_dimension()
    }

    pub fn field(&self) -> &PrimeField {
        self.toric.ring().field()
    }

    pub fn toric_ideal(&self) -> &IdealPresentation<PrimeField> {
        &self.toric
    }

    pub fn standard_basis(&self) -> &StandardBasisResult {
        &self.result
    }

    /// `I_H*`.
    pub fn ideal(&self) -> &IdealPresentation<PrimeField> {
        &self.result.initial_ideal
    }

    /// Elements of the standard basis whose initial forms minimally
    /// generate `I_H*`.
    pub fn minimal_standard_basis(&self) -> Vec<FpPolynomial> {
        let forms: Vec<FpPolynomial> = self
            .result
            .basis
            .iter()
            .map(|f| self.ideal().ring().import(&f.initial_form().unwrap()))
            .collect();
        let chosen = self
            .ideal()
            .minimal_generating_subset(&forms)
            .expect("initial forms are homogeneous");
        chosen.into_iter().map(|k| self.result.basis[k].clone()).collect()
    }

    /// Minimal homogeneous generators of `I_H*`, by increasing degree.
    pub fn minimal_generators(&self) -> &[FpPolynomial] {
        self.minimal_generators.get_or_init(|| {
            self.ideal()
                .minimal_generators()
                .expect("I* is homogeneous")
        })
    }

    pub fn minimal_generator_degrees(&self) -> Vec<u32> {
        self.minimal_generators()
            .iter()
            .map(|g| g.degree().unwrap())
            .collect()
    }

    /// `μ(I_H*)`.
    pub fn mu(&self) -> usize {
        self.minimal_generators().len()
    }

    /// `μ(I_H)`.
    pub fn toric_mu(&self) -> usize {
        *self.toric_mu.get_or_init(|| self.toric.generators().len())
    }

    pub fn quadratic_evidence(&self) -> QuadraticEvidence {
        if self.semigroup.is_natural() {
            return QuadraticEvidence::Natural;
        }
        let ring = self.ideal().ring();
        if let Some(g) = self.minimal_generators().iter().find(|g| g.degree() != Some(2)) {
            return QuadraticEvidence::HigherDegree {
                degree: g.degree().unwrap(),
                generator: ring.render(g),
            };
        }
        QuadraticEvidence::AllQuadrics { count: self.mu() }
    }

    pub fn is_quadratic(&self) -> bool {
        self.quadratic_evidence().is_quadratic()
    }

    /// Reduced Gröbner basis of `I_H*` for `order` if it consists of quadrics.
    pub fn quadratic_groebner_basis(&self, order: &TermOrder) -> Option<Vec<FpPolynomial>> {
        if !self.is_quadratic() {
            return None;
        }
        let ring = self.ideal().ring().with_order(order.clone());
        let opts = GroebnerOptions {
            saturate: None,
            max_degree: Some(2),
        };
        let gens = self.minimal_generators();
        let run = groebner_basis_with(&ring, gens, &opts, |_, _| false);
        let basis = run.basis;
        let generates = gens
            .iter()
            .all(|g| ring.normal_form(&ring.import(g), &basis).is_zero());
        (generates && is_groebner_basis(&ring, &basis)).then_some(basis)
    }

    /// First degrevlex, then lex order (over all variable rankings, in
    /// lexicographic order of permutations) with a quadratic Gröbner basis
    /// for `I_H*`. `None` does not refute G-quadraticity: linear changes of
    /// coordinates are not explored.
    pub fn g_quadratic_witness(&self, limit: usize) -> Result<Option<GQuadraticWitness>> {
        let n = self.embedding_dimension();
        if !self.is_quadratic() {
            return Ok(None);
        }
        if n > limit {
            return Err(Error::EmbdimTooLarge { embdim: n, limit });
        }
        let perms: Vec<Vec<usize>> = (0..n).permutations(n).collect();
        let orders = perms
            .iter()
            .map(|p| TermOrder::degrevlex_by(p.clone()))
            .chain(perms.iter().map(|p| TermOrder::lex_by(p.clone())));
        for order in orders {
            if let Some(basis) = self.quadratic_groebner_basis(&order) {
                return Ok(Some(GQuadraticWitness { order, basis }));
            }
        }
        Ok(None)
    }

    /// `I_H` is a complete intersection: `μ(I_H) = n - 1`.
    pub fn is_complete_intersection(&self) -> bool {
        self.toric_class() == CiClass::CompleteIntersection
    }

    /// `μ(I_H) = n`.
    pub fn is_almost_complete_intersection(&self) -> bool {
        self.toric_class() == CiClass::AlmostCompleteIntersection
    }

    pub fn toric_class(&self) -> CiClass {
        CiClass::from_mu(self.toric_mu(), self.embedding_dimension())
    }

    /// Classification of `I_H*`.
    pub fn classify_ci_star(&self) -> CiClass {
        CiClass::from_mu(self.mu(), self.embedding_dimension())
    }

    /// For quadratic `H` a minimal standard basis is a minimal generating
    /// set, so `μ(I_H) = μ(I_H*)`; this checks it.
    pub fn check_mu_agreement(&self) -> Result<()> {
        if self.is_quadratic() && self.toric_mu() != self.mu() {
            return Err(Error::OracleMismatch(format!(
                "quadratic {} has μ(I) = {} but μ(I*) = {}",
                self.semigroup,
                self.toric_mu(),
                self.mu()
            )));
        }
        Ok(())
    }

    /// Whether `x_1` (the variable of `e(H)`) is regular on `S/I_H*`, which
    /// for these one-dimensional rings is Cohen–Macaulayness.
    pub fn is_cohen_macaulay(&self) -> bool {
        *self.cohen_macaulay.get_or_init(|| {
            if self.semigroup.is_natural() {
                return true;
            }
            let colon = self.ideal().quotient_by_variable(0);
            self.ideal().contains_ideal(&colon)
        })
    }

    /// Evaluates the multiplicity bounds for quadratic semigroups.
    pub fn bound_report(&self) -> Result<BoundReport> {
        let n = self.embedding_dimension();
        let e = self.semigroup.multiplicity();
        let na = |why: &str| BoundStatus::NotApplicable(why.to_string());
        let not_quadratic = "H is not quadratic";
        if n < 2 || !self.is_quadratic() {
            let why = if n < 2 { "embedding dimension 1" } else { not_quadratic };
            return Ok(BoundReport {
                embdim: n,
                multiplicity: e,
                range: na(why),
                minimal_multiplicity: na(why),
                extremal: na(why),
                forbidden_gap: na(why),
                gap_boundary: na(why),
                branch: "not applicable".to_string(),
            });
        }
        let top = 1u64 << (n - 1);
        let range = BoundStatus::check(n as u64 <= e && e <= top, || {
            format!("e = {e} outside [{n}, {top}]")
        });
        let linear = crate::homology::has_linear_resolution(self.ideal())?;
        let minimal_multiplicity = BoundStatus::check((e == n as u64) == linear, || {
            format!("e = {e}, n = {n}, linear resolution: {linear}")
        });
        let star = self.classify_ci_star() == CiClass::CompleteIntersection;
        let toric = self.is_complete_intersection();
        let extremal = BoundStatus::check((e == top) == star && star == toric, || {
            format!("e = {e}, I* CI: {star}, I CI: {toric}")
        });
        let cm = self.is_cohen_macaulay();
        let (forbidden_gap, gap_boundary) = if n < 3 {
            (na("needs n ≥ 3"), na("needs n ≥ 3"))
        } else if !cm {
            let why = "tangent cone is not Cohen–Macaulay";
            (na(why), na(why))
        } else {
            let gap = top - (1u64 << (n - 3));
            let forbidden = BoundStatus::check(e <= gap || e == top, || {
                format!("e = {e} lies strictly between {gap} and {top}")
            });
            let boundary = if e == gap {
                let order = TermOrder::degrevlex_by((0..n).rev().collect());
                let aci = self.classify_ci_star() == CiClass::AlmostCompleteIntersection;
                let qgb = self.quadratic_groebner_basis(&order).is_some();
                BoundStatus::check(aci && qgb, || {
                    format!("at e = {gap}: almost CI {aci}, quadratic basis {qgb}")
                })
            } else {
                na("e differs from 2^{n-1} - 2^{n-3}")
            };
            (forbidden, boundary)
        };
        let branch = if e == n as u64 {
            "minimal multiplicity, linear resolution branch".to_string()
        } else if e == top {
            "maximal multiplicity, complete intersection branch".to_string()
        } else if n >= 3 && e == top - (1u64 << (n - 3)) && cm {
            "boundary of the forbidden gap, almost complete intersection branch".to_string()
        } else {
            "intermediate multiplicity".to_string()
        };
        Ok(BoundReport {
            embdim: n,
            multiplicity: e,
            range,
            minimal_multiplicity,
            extremal,
            forbidden_gap,
            gap_boundary,
            branch,
        })
    }
}

/// `I_H*` is generated in degree 2. Runs the prefilter before any
/// Gröbner computation.
pub fn is_quadratic(h: &NumericalSemigroup) -> Result<bool> {
    if quadratic_prefilter(h).is_some() {
        return Ok(false);
    }
    Ok(TangentCone::new(h)?.is_quadratic())
}

/// The lifting criterion modulo `x_1`: `candidates` (elements of the toric
/// ring of `h`) are a standard basis of `I_H` with `x_1` regular on
/// `S/I_H*` iff they generate `I_H`, their images under `x_1 ↦ 0` keep
/// their initial degree, and those images form a standard basis of the
/// image ideal.
pub fn lifting_criterion_check(h: &NumericalSemigroup, candidates: &[FpPolynomial]) -> Result<bool> {
    lifting_criterion_with(&toric_ideal_over(h, PrimeField::default()), candidates)
}

/// [`lifting_criterion_check`] against an explicit toric ideal.
pub fn lifting_criterion_with(
    toric: &IdealPresentation<PrimeField>,
    candidates: &[FpPolynomial],
) -> Result<bool> {
    let n = toric.nvars();
    if n < 2 {
        return Ok(candidates.iter().all(Polynomial::is_zero));
    }
    let ring = toric.ring();
    let field = *ring.field();
    let given = IdealPresentation::new(ring.clone(), candidates.to_vec());
    if !toric.contains_ideal(&given) || !given.contains_ideal(toric) {
        return Ok(false);
    }
    let m = n - 1;
    let bar_ring = PolyRing::new(m, field, TermOrder::degrevlex(m));
    let drop_first: Vec<usize> = std::iter::once(0).chain(0..m).collect();
    let mut images = Vec::new();
    for f in given.generators() {
        let reduced = ring.substitute(f, 0, &field.zero());
        if reduced.is_zero() || reduced.initial_degree() != f.initial_degree() {
            return Ok(false);
        }
        images.push(bar_ring.import_mapped(&reduced, &drop_first));
    }
    // the image ideal is m-primary; find N with m^N inside it
    let gb = groebner_basis(&bar_ring, &images);
    let Some(cap) = artinian_cap(&gb, m) else {
        return Ok(false);
    };
    let n_power = (1..=cap)
        .find(|&d| {
            monomials_of_degree(m, d)
                .into_iter()
                .all(|x| bar_ring.normal_form(&bar_ring.monomial(x), &gb).is_zero())
        })
        .expect("the cap is a power of the maximal ideal inside the ideal");
    // columns: monomials of degree < N, by increasing degree
    let mut columns: Vec<Monomial> = Vec::new();
    let mut starts = Vec::new();
    for d in 0..n_power {
        starts.push(columns.len());
        columns.extend(monomials_of_degree(m, d));
    }
    starts.push(columns.len());
    let index: HashMap<&Monomial, usize> = columns.iter().enumerate().map(|(k, x)| (x, k)).collect();
    let mut echelon = SparseEchelon::new(field);
    for f in &images {
        let ord = f.initial_degree().unwrap();
        for d in 0..n_power.saturating_sub(ord) {
            for x in monomials_of_degree(m, d) {
                let row: Vec<(usize, u32)> = f
                    .terms()
                    .iter()
                    .filter_map(|t| index.get(&t.monomial.mul(&x)).map(|&k| (k, t.coeff)))
                    .collect();
                echelon.insert(row);
            }
        }
    }
    let mut pivots_by_degree = vec![0u64; n_power as usize];
    for col in echelon.pivot_columns() {
        let d = starts.partition_point(|&s| s <= col) - 1;
        pivots_by_degree[d] += 1;
    }
    let forms: Vec<FpPolynomial> = images.iter().map(|f| f.initial_form().unwrap()).collect();
    let star = IdealPresentation::new(bar_ring, forms);
    let numerator = star.hilbert_numerator()?;
    for d in 0..=n_power {
        let expected = if d < n_power {
            (starts[d as usize + 1] - starts[d as usize]) as u64 - pivots_by_degree[d as usize]
        } else {
            0
        };
        if hilbert_function_from_numerator(&numerator, m, d as u64) != expected {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A degree bound `N` with `m^N` inside an ideal with Gröbner basis `gb`,
/// or `None` when some variable has no pure power among the leading terms.
fn artinian_cap(gb: &[FpPolynomial], nvars: usize) -> Option<u32> {
    let mut total = 1;
    for v in 0..nvars {
        let p = gb
            .iter()
            .filter_map(|g| g.leading_monomial().unwrap().pure_power())
            .filter(|&(i, _)| i == v)
            .map(|(_, e)| e)
            .min()?;
        total += p - 1;
    }
    Some(total)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sg(g: &[i64]) -> NumericalSemigroup {
        NumericalSemigroup::from_generators(g).unwrap()
    }

    /// Parses generators written for variables labeled by the given
    /// (unsorted) generator list, relabeling to sorted order.
    fn ideal_in_given_labels(raw: &[i64], gens: &[&str]) -> (TangentCone, IdealPresentation<PrimeField>) {
        let h = sg(raw);
        let n = raw.len();
        let tc = TangentCone::new(&h).unwrap();
        let sorted = h.generators();
        let map: Vec<usize> = raw
            .iter()
            .map(|&a| sorted.iter().position(|&b| b == a as u64).unwrap())
            .collect();
        let plain = PolyRing::new(n, PrimeField::default(), TermOrder::degrevlex(n));
        let ring = tc.ideal().ring().clone();
        let polys = gens
            .iter()
            .map(|s| ring.import_mapped(&plain.parse(s).unwrap(), &map))
            .collect();
        (tc, IdealPresentation::new(ring, polys))
    }

    #[test]
    fn cusp() {
        let tc = TangentCone::new(&sg(&[2, 3])).unwrap();
        assert_eq!(tc.ideal().render_generators(), vec!["x2^2".to_string()]);
        assert!(tc.is_quadratic());
        assert!(tc.standard_basis().minimal);
    }

    #[test]
    fn natural_numbers() {
        let tc = TangentCone::new(&NumericalSemigroup::natural()).unwrap();
        assert_eq!(tc.mu(), 0);
        assert_eq!(tc.quadratic_evidence(), QuadraticEvidence::Natural);
        assert!(tc.is_cohen_macaulay());
        assert_eq!(tc.classify_ci_star(), CiClass::CompleteIntersection);
    }

    #[test]
    fn seven_eight_twenty() {
        let (tc, expected) =
            ideal_in_given_labels(&[7, 8, 20], &["x3^2", "x2*x3", "x1^4*x3", "x2^7"]);
        assert!(tc.ideal().equals(&expected));
        assert!(!tc.is_cohen_macaulay());
        assert_eq!(tc.minimal_generator_degrees(), vec![2, 2, 5, 7]);
    }

    #[test]
    fn non_quadratic_five_generators() {
        let (tc, expected) = ideal_in_given_labels(
            &[12, 18, 21, 27, 10],
            &[
                "x1*x2", "x2^2", "x2*x3-x1*x4", "x3^2", "x2*x4", "x3*x4", "x4^2",
                "x1^3*x3-x4*x5^3", "x1^4-x2*x5^3",
            ],
        );
        assert!(tc.ideal().equals(&expected));
        assert_eq!(tc.minimal_generator_degrees(), vec![2, 2, 2, 2, 2, 2, 2, 4, 4]);
        assert!(!tc.is_quadratic());
    }

    #[test]
    fn quadratic_five_generators() {
        let tc = TangentCone::new(&sg(&[12, 18, 21, 27, 8])).unwrap();
        assert_eq!(tc.minimal_generator_degrees(), vec![2; 7]);
        assert!(tc.is_quadratic());
    }

    #[test]
    fn almost_ci_example() {
        let tc = TangentCone::new(&sg(&[11, 13, 14, 15, 19])).unwrap();
        assert_eq!(tc.minimal_generator_degrees(), vec![2; 5]);
        assert_eq!(tc.classify_ci_star(), CiClass::AlmostCompleteIntersection);
        assert!(tc.is_almost_complete_intersection());
        tc.check_mu_agreement().unwrap();
    }

    #[test]
    fn four_six_seven_nine() {
        let tc = TangentCone::new(&sg(&[4, 6, 7, 9])).unwrap();
        assert_eq!(tc.minimal_generator_degrees(), vec![2; 6]);
        let w = tc.g_quadratic_witness(PERMUTATION_LIMIT).unwrap().unwrap();
        assert_eq!(w.order, TermOrder::degrevlex_by(vec![0, 1, 2, 3]));
        assert!(w.basis.iter().all(|g| g.degree() == Some(2)));
    }

    #[test]
    fn quadratic_examples() {
        for g in [&[3, 4, 5][..], &[4, 5, 6], &[2, 3]] {
            assert!(is_quadratic(&sg(g)).unwrap(), "{g:?}");
        }
        assert!(!is_quadratic(&sg(&[14, 21, 10, 15])).unwrap());
    }

    #[test]
    fn prefilter_agrees_with_degrees() {
        for g in [&[5, 6, 7, 9][..], &[7, 8, 20], &[14, 21, 10, 15], &[5, 7, 9], &[6, 7, 8, 9]] {
            let h = sg(g);
            let tc = TangentCone::new(&h).unwrap();
            if quadratic_prefilter(&h).is_some() {
                assert!(!tc.is_quadratic(), "{g:?}");
            }
        }
    }

    #[test]
    fn ci_classes() {
        let tc = TangentCone::new(&sg(&[6, 10, 15])).unwrap();
        assert!(tc.is_complete_intersection());
        let tc = TangentCone::new(&sg(&[6, 7, 8, 9])).unwrap();
        assert!(tc.is_cohen_macaulay());
        assert_eq!(tc.classify_ci_star(), CiClass::AlmostCompleteIntersection);
    }

    #[test]
    fn minimal_multiplicity_is_cohen_macaulay() {
        for g in [&[3, 4, 5][..], &[4, 5, 6, 7], &[5, 6, 7, 8, 9], &[4, 9, 10, 11]] {
            let tc = TangentCone::new(&sg(g)).unwrap();
            assert_eq!(tc.semigroup().multiplicity() as usize, tc.embedding_dimension());
            assert!(tc.is_cohen_macaulay(), "{g:?}");
        }
    }

    #[test]
    fn standard_basis_vanishes_and_matches_membership() {
        for g in [&[4, 6, 7, 9][..], &[7, 8, 20], &[5, 6, 7, 9], &[11, 13, 14, 15, 19]] {
            let h = sg(g);
            let tc = TangentCone::new(&h).unwrap();
            let field = *tc.field();
            for f in &tc.standard_basis().basis {
                assert!(crate::toric::vanishes_on_curve(&field, f, h.generators()));
                let star = f.initial_form().unwrap();
                assert!(tangent_cone_contains(&h, &star, &field));
            }
            for f in tc.ideal().groebner_basis().iter() {
                assert!(tangent_cone_contains(&h, f, &field));
            }
        }
    }

    #[test]
    fn membership_rejects_outsiders() {
        let h = sg(&[4, 6, 7, 9]);
        let ring = PolyRing::new(4, PrimeField::default(), TermOrder::degrevlex(4));
        let f = PrimeField::default();
        // 12 = 4+4+4 is longer than 6+6, and 13 = 4+9 = 6+7 has order 2
        assert!(tangent_cone_contains(&h, &ring.parse("x2^2").unwrap(), &f));
        assert!(!tangent_cone_contains(&h, &ring.parse("x2*x3").unwrap(), &f));
        assert!(tangent_cone_contains(&h, &ring.parse("x2*x3-x1*x4").unwrap(), &f));
        assert!(!tangent_cone_contains(&h, &ring.parse("x1^3-x2^2").unwrap(), &f));
    }

    #[test]
    fn lifting_accepts_standard_bases_and_rejects_subsets() {
        let h = sg(&[4, 6, 7, 9]);
        let tc = TangentCone::new(&h).unwrap();
        assert!(tc.is_cohen_macaulay());
        assert!(lifting_criterion_check(&h, &tc.standard_basis().basis).unwrap());
        let fewer = &tc.toric_ideal().generators()[1..];
        assert!(!lifting_criterion_check(&h, fewer).unwrap());
        // not CM, so no generating set passes
        let h = sg(&[7, 8, 20]);
        let tc = TangentCone::new(&h).unwrap();
        assert!(!lifting_criterion_check(&h, &tc.standard_basis().basis).unwrap());
    }

    #[test]
    fn bounds_on_gap_boundary() {
        let tc = TangentCone::new(&sg(&[6, 7, 8, 9])).unwrap();
        let report = tc.bound_report().unwrap();
        assert!(report.violations().is_empty(), "{report:?}");
        assert_eq!(report.gap_boundary, BoundStatus::Satisfied);
        let tc = TangentCone::new(&sg(&[7, 8, 20])).unwrap();
        assert!(matches!(tc.bound_report().unwrap().range, BoundStatus::NotApplicable(_)));
    }
}
