//! Named families of numerical semigroups with closed-form descriptions of
//! `I_H`, `I_H*` and of their quadratic (equivalently Koszul) members.
//!
//! Constructors only build the semigroup and the predicted ideals. Each
//! family value has a `verify` method that checks the predictions against a
//! [`TangentCone`] computed by the generic pipeline and reports
//! [`Error::OracleMismatch`] on disagreement.

use std::fmt;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{Field, PrimeField};
use crate::gluing::delorme_decompose;
use crate::groebner::{is_groebner_basis, reduce_basis, IdealPresentation};
use crate::homology::is_gorenstein;
use crate::poly::{FpPolynomial, Monomial, PolyRing, TermOrder};
use crate::semigroup::NumericalSemigroup;
use crate::tangent_cone::{lifting_criterion_with, TangentCone};
use crate::toric::{critical_exponents, toric_order};

/// A member of one of the named families, by its parameters.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum FamilySpec {
    Arithmetic { a1: u64, d: u64, n: usize },
    Compound { a: Vec<u64>, b: Vec<u64> },
    Watanabe { n: u32, a: u64 },
    CoprimeProduct { a: Vec<u64> },
    Bresinsky(BresinskyParams),
    Komeda(KomedaParams),
    /// `⟨4, 2c, 2a + c⟩`.
    ThreeSemigroupQuadratic { a: u64, c: u64 },
    /// `⟨5, 4a + b, 2a + 3b, 3a + 2b⟩`.
    SymmetricFourParam { a: u64, b: u64 },
    /// `⟨5, 3a + b + 1, 3b - a - 2, a + 2b + 2⟩`.
    PseudoSymFourParam { a: u64, b: u64 },
}

impl FamilySpec {
    pub fn semigroup(&self) -> Result<NumericalSemigroup> {
        Ok(self.build()?.semigroup().clone())
    }

    pub fn build(&self) -> Result<FamilyMember> {
        Ok(match self {
            FamilySpec::Arithmetic { a1, d, n } => FamilyMember::Arithmetic(arithmetic_semigroup(*a1, *d, *n)?),
            FamilySpec::Compound { a, b } => FamilyMember::Compound(compound_semigroup(a, b)?),
            FamilySpec::Watanabe { n, a } => FamilyMember::Watanabe(watanabe(*n, *a)?),
            FamilySpec::CoprimeProduct { a } => FamilyMember::CoprimeProduct(coprime_product_semigroup(a)?),
            FamilySpec::Bresinsky(p) => FamilyMember::Bresinsky(bresinsky_symmetric(p)?),
            FamilySpec::Komeda(p) => FamilyMember::Komeda(komeda_pseudosymmetric(p)?),
            FamilySpec::ThreeSemigroupQuadratic { a, c } => {
                FamilyMember::Plain(three_semigroup_quadratic(*a, *c)?)
            }
            FamilySpec::SymmetricFourParam { a, b } => {
                FamilyMember::Bresinsky(bresinsky_symmetric(&BresinskyParams::quadratic(*a, *b)?)?)
            }
            FamilySpec::PseudoSymFourParam { a, b } => {
                FamilyMember::Komeda(komeda_pseudosymmetric(&KomedaParams::quadratic(*a, *b)?)?)
            }
        })
    }

    /// The family's closed-form answer to "is `H` quadratic?", which by the
    /// classification results is also the answer to "is `H` Koszul?".
    pub fn predicted_quadratic(&self) -> Result<bool> {
        Ok(match self {
            FamilySpec::Arithmetic { a1, d, n } => classify_arithmetic(*a1, *d, *n)?,
            FamilySpec::Compound { a, b } => {
                compound_semigroup(a, b)?;
                a.iter().all(|&x| x == 2)
            }
            FamilySpec::Watanabe { .. } => true,
            FamilySpec::CoprimeProduct { .. } => false,
            FamilySpec::Bresinsky(p) => bresinsky_symmetric(p)?.semigroup.multiplicity() == 5,
            FamilySpec::Komeda(p) => {
                let h = komeda_pseudosymmetric(p)?.semigroup;
                classify_pseudosym_4(&h)?.quadratic
            }
            FamilySpec::ThreeSemigroupQuadratic { .. }
            | FamilySpec::SymmetricFourParam { .. }
            | FamilySpec::PseudoSymFourParam { .. } => true,
        })
    }
}

/// The constructed member together with its predicted ideals.
#[derive(Clone, Debug)]
pub enum FamilyMember {
    Arithmetic(ArithmeticSemigroup),
    Compound(CompoundSemigroup),
    Watanabe(WatanabeSemigroup),
    CoprimeProduct(CoprimeProductSemigroup),
    Bresinsky(BresinskySemigroup),
    Komeda(KomedaSemigroup),
    /// No closed-form ideals beyond the semigroup itself.
    Plain(NumericalSemigroup),
}

impl FamilyMember {
    pub fn semigroup(&self) -> &NumericalSemigroup {
        match self {
            FamilyMember::Arithmetic(x) => &x.semigroup,
            FamilyMember::Compound(x) => &x.semigroup,
            FamilyMember::Watanabe(x) => &x.semigroup,
            FamilyMember::CoprimeProduct(x) => &x.semigroup,
            FamilyMember::Bresinsky(x) => &x.semigroup,
            FamilyMember::Komeda(x) => &x.semigroup,
            FamilyMember::Plain(h) => h,
        }
    }

    /// Checks every prediction against `tc`, which must belong to the same
    /// semigroup.
    pub fn verify(&self, tc: &TangentCone) -> Result<()> {
        if tc.semigroup().generators() != self.semigroup().generators() {
            return Err(Error::HypothesisFailed(format!(
                "tangent cone of {} does not belong to {}",
                tc.semigroup(),
                self.semigroup()
            )));
        }
        match self {
            FamilyMember::Arithmetic(x) => x.verify(tc),
            FamilyMember::Compound(x) => x.verify(tc),
            FamilyMember::Watanabe(x) => x.verify(tc),
            FamilyMember::CoprimeProduct(x) => x.verify(tc),
            FamilyMember::Bresinsky(x) => x.verify(tc),
            FamilyMember::Komeda(x) => x.verify(tc),
            FamilyMember::Plain(_) => Ok(()),
        }
    }
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn illegal(msg: impl Into<String>) -> Error {
    Error::IllegalParameters(msg.into())
}

fn mismatch(h: &NumericalSemigroup, what: &str) -> Error {
    Error::OracleMismatch(format!("{h}: {what}"))
}

/// Builds the semigroup and insists that `gens` are exactly its minimal
/// generators.
fn exact_semigroup(gens: &[u64]) -> Result<NumericalSemigroup> {
    let h = NumericalSemigroup::new(gens).map_err(|e| illegal(e.to_string()))?;
    let mut sorted = gens.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if h.generators() != sorted.as_slice() {
        return Err(illegal(format!(
            "{gens:?} do not minimally generate a semigroup of embedding dimension {}",
            gens.len()
        )));
    }
    Ok(h)
}

/// `∏ x_v^e` over the listed (0-based variable, exponent) pairs.
fn mono(n: usize, factors: &[(usize, u32)]) -> Monomial {
    let mut exps = vec![0u32; n];
    for &(v, e) in factors {
        exps[v] += e;
    }
    Monomial::new(&exps)
}

fn binom(ring: &PolyRing<PrimeField>, a: &[(usize, u32)], b: &[(usize, u32)]) -> FpPolynomial {
    let n = ring.nvars();
    ring.binomial(mono(n, a), mono(n, b))
}

fn monomial(ring: &PolyRing<PrimeField>, a: &[(usize, u32)]) -> FpPolynomial {
    ring.monomial(mono(ring.nvars(), a))
}

fn toric_ring(h: &NumericalSemigroup) -> PolyRing<PrimeField> {
    PolyRing::new(h.embedding_dimension(), PrimeField::default(), toric_order(h))
}

fn star_ring(h: &NumericalSemigroup) -> PolyRing<PrimeField> {
    let n = h.embedding_dimension();
    PolyRing::new(n, PrimeField::default(), TermOrder::degrevlex(n))
}

/// `predicted` generates the toric ideal of `tc`.
fn check_toric(tc: &TangentCone, predicted: &[FpPolynomial], what: &str) -> Result<()> {
    let ring = tc.toric_ideal().ring();
    let ideal = IdealPresentation::new(ring.clone(), predicted.iter().map(|f| ring.import(f)).collect());
    if !ideal.equals(tc.toric_ideal()) {
        return Err(mismatch(tc.semigroup(), &format!("predicted I_H ({what}) differs")));
    }
    Ok(())
}

/// `predicted` generates `I_H*` of `tc`.
fn check_star(tc: &TangentCone, predicted: &[FpPolynomial], what: &str) -> Result<()> {
    let ring = tc.ideal().ring();
    let ideal = IdealPresentation::new(ring.clone(), predicted.iter().map(|f| ring.import(f)).collect());
    if !ideal.equals(tc.ideal()) {
        return Err(mismatch(tc.semigroup(), &format!("predicted I_H* ({what}) differs")));
    }
    Ok(())
}

/// Maps the positions of `listed` to variables of the sorted semigroup.
fn relabel(h: &NumericalSemigroup, listed: &[u64]) -> Vec<usize> {
    listed
        .iter()
        .map(|a| h.generators().iter().position(|g| g == a).expect("listed generator"))
        .collect()
}

// ---------------------------------------------------------------------------
// arithmetic sequences

/// `⟨a_1, a_1 + d, ..., a_1 + (n-1)d⟩` with Patil's presentation.
#[derive(Clone, Debug)]
pub struct ArithmeticSemigroup {
    pub semigroup: NumericalSemigroup,
    pub d: u64,
    /// `a_1 = a(n-1) + b` with `1 ≤ b ≤ n-1`.
    pub a: u32,
    pub b: usize,
    /// Generators of `I_H` in the toric ring.
    pub toric: Vec<FpPolynomial>,
    /// Generators of `I_H*`, also its reduced degrevlex `x_1 > ... > x_n`
    /// Gröbner basis up to reduction.
    pub star: Vec<FpPolynomial>,
}

pub fn arithmetic_semigroup(a1: u64, d: u64, n: usize) -> Result<ArithmeticSemigroup> {
    if n < 3 || (a1 as usize) < n || d == 0 || gcd(a1, d) != 1 {
        return Err(illegal(format!(
            "arithmetic sequence needs n ≥ 3, n ≤ a1 and gcd(a1, d) = 1 (a1 = {a1}, d = {d}, n = {n})"
        )));
    }
    let gens: Vec<u64> = (0..n as u64).map(|i| a1 + i * d).collect();
    let h = exact_semigroup(&gens)?;
    let a = ((a1 - 1) / (n as u64 - 1)) as u32;
    let b = (a1 - a as u64 * (n as u64 - 1)) as usize;
    debug_assert!((1..n).contains(&b));
    let tr = toric_ring(&h);
    let sr = star_ring(&h);
    let last = n - 1;
    let mut toric = Vec::new();
    let mut star = Vec::new();
    // 2-minors of the 2 x (n-1) Hankel matrix; 0-based i < j ≤ n-2
    for i in 0..n - 1 {
        for j in i + 1..n - 1 {
            let lhs = [(i, 1), (j + 1, 1)];
            let rhs = [(i + 1, 1), (j, 1)];
            toric.push(binom(&tr, &lhs, &rhs));
            star.push(binom(&sr, &lhs, &rhs));
        }
    }
    for i in 1..=n - b {
        let lhs = [(last, a), (b + i - 1, 1)];
        let rhs = [(0, a + d as u32), (i - 1, 1)];
        toric.push(binom(&tr, &lhs, &rhs));
        star.push(monomial(&sr, &lhs));
    }
    Ok(ArithmeticSemigroup {
        semigroup: h,
        d,
        a,
        b,
        toric,
        star,
    })
}

impl ArithmeticSemigroup {
    pub fn verify(&self, tc: &TangentCone) -> Result<()> {
        let h = &self.semigroup;
        check_toric(tc, &self.toric, "Patil generators")?;
        check_star(tc, &self.star, "Patil initial forms")?;
        let ring = star_ring(h);
        if !is_groebner_basis(&ring, &self.star) {
            return Err(mismatch(h, "Patil initial forms are not a degrevlex Gröbner basis"));
        }
        if reduce_basis(&ring, &self.star).len() != tc.mu() {
            return Err(mismatch(h, "reduced degrevlex basis is not a minimal generating set"));
        }
        Ok(())
    }
}

/// Quadratic (equivalently Koszul, or G-quadratic) iff `n ≤ a_1 ≤ 2n - 2`.
pub fn classify_arithmetic(a1: u64, d: u64, n: usize) -> Result<bool> {
    let fam = arithmetic_semigroup(a1, d, n)?;
    Ok(fam.a == 1)
}

// ---------------------------------------------------------------------------
// compound sequences

/// `⟨q_1, ..., q_{n+1}⟩` with `q_i = b_1⋯b_{i-1} a_i⋯a_n`.
#[derive(Clone, Debug)]
pub struct CompoundSemigroup {
    pub semigroup: NumericalSemigroup,
    pub a: Vec<u64>,
    pub b: Vec<u64>,
    /// `(x_i^{b_i} - x_{i+1}^{a_i})`.
    pub toric: Vec<FpPolynomial>,
    /// `(x_{i+1}^{a_i})`.
    pub star: Vec<FpPolynomial>,
}

pub fn compound_semigroup(a: &[u64], b: &[u64]) -> Result<CompoundSemigroup> {
    let n = a.len();
    if n == 0 || b.len() != n {
        return Err(illegal("compound sequence needs two nonempty lists of equal length"));
    }
    for i in 0..n {
        if !(2 <= a[i] && a[i] < b[i]) {
            return Err(illegal(format!("need 2 ≤ a_{0} < b_{0}", i + 1)));
        }
        let tail = b[i..].iter().try_fold(1u64, |acc, &x| acc.checked_mul(x));
        let tail = tail.ok_or_else(|| illegal("generators overflow"))?;
        if gcd(a[i], tail) != 1 {
            return Err(illegal(format!("gcd(a_{0}, b_{0}⋯b_n) ≠ 1", i + 1)));
        }
    }
    let mut gens = Vec::with_capacity(n + 1);
    for i in 0..=n {
        let q = b[..i]
            .iter()
            .chain(&a[i..])
            .try_fold(1u64, |acc, &x| acc.checked_mul(x))
            .ok_or_else(|| illegal("generators overflow"))?;
        gens.push(q);
    }
    let h = exact_semigroup(&gens)?;
    let tr = toric_ring(&h);
    let sr = star_ring(&h);
    let toric = (0..n)
        .map(|i| binom(&tr, &[(i, b[i] as u32)], &[(i + 1, a[i] as u32)]))
        .collect();
    let star = (0..n).map(|i| monomial(&sr, &[(i + 1, a[i] as u32)])).collect();
    Ok(CompoundSemigroup {
        semigroup: h,
        a: a.to_vec(),
        b: b.to_vec(),
        toric,
        star,
    })
}

impl CompoundSemigroup {
    pub fn verify(&self, tc: &TangentCone) -> Result<()> {
        check_toric(tc, &self.toric, "chain of gluing relations")?;
        check_star(tc, &self.star, "pure powers")?;
        if !tc.is_complete_intersection() {
            return Err(mismatch(&self.semigroup, "compound semigroup is not CI"));
        }
        Ok(())
    }

    /// Quadratic iff Koszul iff every `a_i = 2`.
    pub fn predicted_quadratic(&self) -> bool {
        self.a.iter().all(|&x| x == 2)
    }
}

// ---------------------------------------------------------------------------
// Watanabe's semigroups

/// `W_n(a) = ⟨2^n, 2^n + a, 2^n + 2a, ..., 2^n + 2^{n-1} a⟩`.
#[derive(Clone, Debug)]
pub struct WatanabeSemigroup {
    pub semigroup: NumericalSemigroup,
    pub n: u32,
    pub a: u64,
    /// `(x_1^{2+a} - x_{n+1}^2) + (x_i^2 - x_1 x_{i+1} : 2 ≤ i ≤ n)`.
    pub toric: Vec<FpPolynomial>,
    /// `(x_{n+1}^2) + (x_i^2 - x_1 x_{i+1} : 2 ≤ i ≤ n)`.
    pub star: Vec<FpPolynomial>,
}

pub fn watanabe(n: u32, a: u64) -> Result<WatanabeSemigroup> {
    if n == 0 || a == 0 || a % 2 == 0 {
        return Err(illegal(format!("W_n(a) needs n ≥ 1 and a odd (n = {n}, a = {a})")));
    }
    if n > 40 {
        return Err(illegal("n too large"));
    }
    let p = 1u64 << n;
    let gens: Vec<u64> = std::iter::once(p)
        .chain((0..n).map(|i| p + (a << i)))
        .collect();
    let h = exact_semigroup(&gens)?;
    let tr = toric_ring(&h);
    let sr = star_ring(&h);
    let top = n as usize;
    let mut toric = vec![binom(&tr, &[(0, 2 + a as u32)], &[(top, 2)])];
    let mut star = vec![monomial(&sr, &[(top, 2)])];
    for i in 1..top {
        toric.push(binom(&tr, &[(i, 2)], &[(0, 1), (i + 1, 1)]));
        star.push(binom(&sr, &[(i, 2)], &[(0, 1), (i + 1, 1)]));
    }
    Ok(WatanabeSemigroup {
        semigroup: h,
        n,
        a,
        toric,
        star,
    })
}

impl WatanabeSemigroup {
    pub fn verify(&self, tc: &TangentCone) -> Result<()> {
        check_toric(tc, &self.toric, "Watanabe relations")?;
        check_star(tc, &self.star, "Watanabe initial forms")?;
        if !tc.is_complete_intersection() || self.semigroup.multiplicity() != 1 << self.n {
            return Err(mismatch(&self.semigroup, "W_n(a) is not a CI of multiplicity 2^n"));
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// products of pairwise coprime integers

/// `⟨P/a_1, ..., P/a_n⟩` with `P = ∏ a_i`, labelled so that `a_1 > ... > a_n`.
#[derive(Clone, Debug)]
pub struct CoprimeProductSemigroup {
    pub semigroup: NumericalSemigroup,
    /// The factors, decreasing.
    pub a: Vec<u64>,
    /// `(x_i^{a_i} - x_{i+1}^{a_{i+1}})`.
    pub toric: Vec<FpPolynomial>,
    /// `(x_2^{a_2}, ..., x_n^{a_n})`.
    pub star: Vec<FpPolynomial>,
}

pub fn coprime_product_semigroup(a: &[u64]) -> Result<CoprimeProductSemigroup> {
    if a.len() < 3 {
        return Err(illegal("need at least three factors"));
    }
    if a.iter().any(|&x| x < 2) {
        return Err(illegal("factors must be at least 2"));
    }
    if a.iter().tuple_combinations().any(|(&x, &y)| gcd(x, y) != 1) {
        return Err(Error::NotPairwiseCoprime);
    }
    let mut a = a.to_vec();
    a.sort_unstable_by(|x, y| y.cmp(x));
    let p = a
        .iter()
        .try_fold(1u64, |acc, &x| acc.checked_mul(x))
        .ok_or_else(|| illegal("product overflows"))?;
    let gens: Vec<u64> = a.iter().map(|&x| p / x).collect();
    let h = exact_semigroup(&gens)?;
    let tr = toric_ring(&h);
    let sr = star_ring(&h);
    let n = a.len();
    let toric = (0..n - 1)
        .map(|i| binom(&tr, &[(i, a[i] as u32)], &[(i + 1, a[i + 1] as u32)]))
        .collect();
    let star = (1..n).map(|i| monomial(&sr, &[(i, a[i] as u32)])).collect();
    Ok(CoprimeProductSemigroup {
        semigroup: h,
        a,
        toric,
        star,
    })
}

impl CoprimeProductSemigroup {
    pub fn verify(&self, tc: &TangentCone) -> Result<()> {
        let h = &self.semigroup;
        check_toric(tc, &self.toric, "chain of pure-power differences")?;
        check_star(tc, &self.star, "pure powers")?;
        if delorme_decompose(h).is_none() || !tc.is_complete_intersection() {
            return Err(mismatch(h, "product semigroup is not CI"));
        }
        if tc.is_quadratic() {
            return Err(mismatch(h, "product semigroup is quadratic"));
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// embedding dimension 3

/// `⟨4, 2c, 2a + c⟩` for `a ≥ 1` and odd `c > 1`.
pub fn three_semigroup_quadratic(a: u64, c: u64) -> Result<NumericalSemigroup> {
    if a == 0 || c < 3 || c % 2 == 0 {
        return Err(illegal(format!("need a ≥ 1 and odd c > 1 (a = {a}, c = {c})")));
    }
    exact_semigroup(&[4, 2 * c, 2 * a + c])
}

/// Closed-form verdict for a 3-generated semigroup.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThreeSemigroupClass {
    /// Quadratic, and hence Koszul.
    pub quadratic: bool,
    /// `(a, c)` with `H = ⟨4, 2c, 2a + c⟩` in the multiplicity-4 branch.
    pub normal_form: Option<(u64, u64)>,
}

/// Quadratic iff `e = 3`, or `e = 4` and `H = ⟨4, 2c, 2a + c⟩` with `a ≥ 1`
/// and odd `c > 1`.
pub fn classify_3_semigroup(h: &NumericalSemigroup) -> Result<ThreeSemigroupClass> {
    let g = h.generators();
    if g.len() != 3 {
        return Err(Error::WrongEmbdim {
            expected: 3,
            found: g.len(),
        });
    }
    let none = ThreeSemigroupClass {
        quadratic: false,
        normal_form: None,
    };
    match g[0] {
        3 => Ok(ThreeSemigroupClass {
            quadratic: true,
            normal_form: None,
        }),
        4 => {
            let (even, odd) = if g[1] % 2 == 0 { (g[1], g[2]) } else { (g[2], g[1]) };
            let c = even / 2;
            if even % 2 != 0 || c % 2 == 0 || c < 3 || odd % 2 == 0 || odd <= c {
                return Ok(none);
            }
            Ok(ThreeSemigroupClass {
                quadratic: true,
                normal_form: Some(((odd - c) / 2, c)),
            })
        }
        _ => Ok(none),
    }
}

// ---------------------------------------------------------------------------
// special almost complete intersections

/// The binomials `f_i = x_i^{c_i} - m_i` of a special almost complete
/// intersection, in the toric ring.
#[derive(Clone, Debug)]
pub struct SpecialAci {
    pub exponents: Vec<u32>,
    pub binomials: Vec<FpPolynomial>,
}

/// Cap on the number of witness combinations tried.
const WITNESS_COMBINATIONS: usize = 4096;

/// Looks for `f_i = x_i^{c_i} - m_i` with every `m_i` not a pure power that
/// together generate `I_H`, with `I_H` an almost complete intersection.
pub fn special_aci(h: &NumericalSemigroup) -> Result<Option<SpecialAci>> {
    let n = h.embedding_dimension();
    if n < 3 {
        return Err(Error::WrongEmbdim {
            expected: 3,
            found: n,
        });
    }
    let toric = crate::toric::toric_ideal(h);
    if toric.generators().len() != n {
        return Ok(None);
    }
    let crit = critical_exponents(h);
    let is_pure = |w: &Vec<u32>| w.iter().filter(|&&e| e > 0).count() == 1;
    let choices: Vec<Vec<&Vec<u32>>> = crit
        .iter()
        .map(|c| c.witnesses.iter().filter(|w| !is_pure(w)).collect())
        .collect();
    if choices.iter().any(Vec::is_empty) {
        return Ok(None);
    }
    let ring = toric.ring().clone();
    for pick in choices.iter().map(|c| c.iter()).multi_cartesian_product().take(WITNESS_COMBINATIONS) {
        let binomials: Vec<FpPolynomial> = crit
            .iter()
            .zip(&pick)
            .map(|(c, w)| ring.binomial(Monomial::var_pow(n, c.index, c.c), Monomial::new(w)))
            .collect();
        if !binomials.iter().all_unique() {
            continue;
        }
        let ideal = IdealPresentation::new(ring.clone(), binomials.clone());
        if ideal.contains_ideal(&toric) && toric.contains_ideal(&ideal) {
            return Ok(Some(SpecialAci {
                exponents: crit.iter().map(|c| c.c).collect(),
                binomials,
            }));
        }
    }
    Ok(None)
}

pub fn special_aci_detect(h: &NumericalSemigroup) -> Result<bool> {
    Ok(special_aci(h)?.is_some())
}

/// Both sides of the multiplicity law for quadratic special almost
/// complete intersections.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MultiplicityLaw {
    /// The initial forms `f_i*` are a Gröbner basis for degrevlex
    /// `x_n > ... > x_1`.
    pub degrevlex_quadratic_basis: bool,
    /// `e(H) = 2^{n-1} - 2^{n-3}`.
    pub boundary_multiplicity: bool,
}

pub fn special_aci_multiplicity_law(h: &NumericalSemigroup) -> Result<MultiplicityLaw> {
    let n = h.embedding_dimension();
    if n < 3 {
        return Err(Error::HypothesisFailed(format!("{h} has embedding dimension {n} < 3")));
    }
    let Some(saci) = special_aci(h)? else {
        return Err(Error::HypothesisFailed(format!(
            "{h} is not a special almost complete intersection"
        )));
    };
    let tc = TangentCone::new(h)?;
    if !tc.is_quadratic() {
        return Err(Error::HypothesisFailed(format!("{h} is not quadratic")));
    }
    let ring = PolyRing::new(n, PrimeField::default(), TermOrder::degrevlex_by((0..n).rev().collect()));
    let forms: Vec<FpPolynomial> = saci
        .binomials
        .iter()
        .map(|f| ring.import(&f.initial_form().expect("nonzero binomial")))
        .collect();
    let generates = IdealPresentation::new(ring.clone(), forms.clone()).equals(&IdealPresentation::new(
        ring.clone(),
        tc.minimal_generators().iter().map(|g| ring.import(g)).collect(),
    ));
    if !generates {
        return Err(mismatch(h, "initial forms of the f_i do not generate I_H*"));
    }
    let law = MultiplicityLaw {
        degrevlex_quadratic_basis: is_groebner_basis(&ring, &forms),
        boundary_multiplicity: h.multiplicity() == (1u64 << (n - 1)) - (1u64 << (n - 3)),
    };
    if law.degrevlex_quadratic_basis != law.boundary_multiplicity {
        return Err(mismatch(h, &format!("multiplicity law fails: {law:?}")));
    }
    Ok(law)
}

// ---------------------------------------------------------------------------
// symmetric 4-generated semigroups

/// Bresinsky's parameters `α_{ij}`; `c_1 = α_21 + α_31`,
/// `c_2 = α_32 + α_42`, `c_3 = α_13 + α_43`, `c_4 = α_14 + α_24`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BresinskyParams {
    pub a21: u64,
    pub a31: u64,
    pub a32: u64,
    pub a42: u64,
    pub a13: u64,
    pub a43: u64,
    pub a14: u64,
    pub a24: u64,
}

impl BresinskyParams {
    /// The parameters of `⟨5, 4a + b, 2a + 3b, 3a + 2b⟩`: `α_21 = a`,
    /// `α_31 = b`, all others 1.
    pub fn quadratic(a: u64, b: u64) -> Result<Self> {
        if a == 0 || b == 0 || a.abs_diff(b) % 5 == 0 {
            return Err(illegal(format!("need a, b ≥ 1 with 5 ∤ a - b (a = {a}, b = {b})")));
        }
        Ok(BresinskyParams {
            a21: a,
            a31: b,
            a32: 1,
            a42: 1,
            a13: 1,
            a43: 1,
            a14: 1,
            a24: 1,
        })
    }

    pub fn c(&self) -> [u64; 4] {
        [
            self.a21 + self.a31,
            self.a32 + self.a42,
            self.a13 + self.a43,
            self.a14 + self.a24,
        ]
    }

    /// `(a_1, a_2, a_3, a_4)` in Bresinsky's labelling.
    pub fn generators(&self) -> [u64; 4] {
        let [c1, c2, c3, c4] = self.c();
        let p = self;
        [
            c2 * c3 * p.a14 + p.a32 * p.a13 * p.a24,
            c3 * c4 * p.a21 + p.a31 * p.a43 * p.a24,
            c1 * c4 * p.a32 + p.a14 * p.a42 * p.a31,
            c1 * c2 * p.a43 + p.a42 * p.a21 * p.a13,
        ]
    }
}

/// Which of the three shapes `I_H*` takes for `⟨5, 4a + b, 2a + 3b, 3a + 2b⟩`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SymmetricStarCase {
    /// `a ≠ 1`, `b ≠ 1`: `(x3x4, x2², x3², x4² - x2x3, x2x4)`.
    Generic,
    /// `a = 1`: `(x3x4, x2² - x1x4, x3², x4² - x2x3, x1x3 - x2x4)`.
    AIsOne,
    /// `b = 1`: `(x3x4, x2², x3² - x1x2, x4² - x2x3, x2x4)`.
    BIsOne,
}

impl SymmetricStarCase {
    fn of(a: u64, b: u64) -> Self {
        match (a == 1, b == 1) {
            (true, _) => SymmetricStarCase::AIsOne,
            (false, true) => SymmetricStarCase::BIsOne,
            _ => SymmetricStarCase::Generic,
        }
    }
}

#[derive(Clone, Debug)]
pub struct BresinskySemigroup {
    pub semigroup: NumericalSemigroup,
    pub params: BresinskyParams,
    /// Sorted variable of Bresinsky's `x_1, ..., x_4`.
    pub labels: Vec<usize>,
    /// `f_1, ..., f_5` in the toric ring.
    pub toric: Vec<FpPolynomial>,
}

pub fn bresinsky_symmetric(p: &BresinskyParams) -> Result<BresinskySemigroup> {
    let all = [p.a21, p.a31, p.a32, p.a42, p.a13, p.a43, p.a14, p.a24];
    if all.contains(&0) {
        return Err(illegal("Bresinsky parameters must be positive"));
    }
    if all.iter().any(|&x| x > 1 << 12) {
        return Err(illegal("Bresinsky parameters too large"));
    }
    let gens = p.generators();
    let h = exact_semigroup(&gens)?;
    if !h.is_symmetric() {
        return Err(mismatch(&h, "Bresinsky semigroup is not symmetric"));
    }
    let x = relabel(&h, &gens);
    let [c1, c2, c3, c4] = p.c().map(|c| c as u32);
    let e = |v: u64| v as u32;
    let ring = toric_ring(&h);
    let toric = vec![
        binom(&ring, &[(x[0], c1)], &[(x[2], e(p.a13)), (x[3], e(p.a14))]),
        binom(&ring, &[(x[1], c2)], &[(x[0], e(p.a21)), (x[3], e(p.a24))]),
        binom(&ring, &[(x[2], c3)], &[(x[0], e(p.a31)), (x[1], e(p.a32))]),
        binom(&ring, &[(x[3], c4)], &[(x[1], e(p.a42)), (x[2], e(p.a43))]),
        binom(&ring, &[(x[2], e(p.a43)), (x[0], e(p.a21))], &[(x[1], e(p.a32)), (x[3], e(p.a14))]),
    ];
    Ok(BresinskySemigroup {
        semigroup: h,
        params: *p,
        labels: x,
        toric,
    })
}

impl BresinskySemigroup {
    pub fn verify(&self, tc: &TangentCone) -> Result<()> {
        check_toric(tc, &self.toric, "Bresinsky's f_1..f_5")?;
        if tc.is_complete_intersection() {
            return Err(mismatch(&self.semigroup, "Bresinsky semigroup is CI"));
        }
        let verdict = classify_symmetric_4_with(tc)?;
        verify_symmetric_4(tc, &verdict)
    }
}

/// Closed-form verdict for a symmetric, non-CI, 4-generated semigroup.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymmetricVerdict {
    /// Quadratic, equivalently Koszul, equivalently `e = 5`.
    pub quadratic: bool,
    /// The unique `(a, b)` with `H = ⟨5, 4a + b, 2a + 3b, 3a + 2b⟩`.
    pub params: Option<(u64, u64)>,
    pub star_case: Option<SymmetricStarCase>,
}

/// Solves `H = ⟨5, 4a + b, 2a + 3b, 3a + 2b⟩` for positive `(a, b)` with
/// `5 ∤ a - b`. The three values form an arithmetic progression with
/// difference `b - a`, so only the two monotone matchings need checking.
fn symmetric_params(g: &[u64]) -> Vec<(u64, u64)> {
    if g.len() != 4 || g[0] != 5 {
        return Vec::new();
    }
    let rest = [g[1] as i64, g[2] as i64, g[3] as i64];
    let mut out = Vec::new();
    for (u, v, w) in rest.iter().copied().permutations(3).map(|p| (p[0], p[1], p[2])) {
        // u = 4a + b, v = 2a + 3b, w = 3a + 2b
        let (num_a, num_b) = (3 * u - v, 2 * v - u);
        if num_a % 10 != 0 || num_b % 5 != 0 {
            continue;
        }
        let (a, b) = (num_a / 10, num_b / 5);
        if a < 1 || b < 1 || 3 * a + 2 * b != w || (a - b) % 5 == 0 {
            continue;
        }
        out.push((a as u64, b as u64));
    }
    out.sort_unstable();
    out.dedup();
    out
}

pub fn classify_symmetric_4(h: &NumericalSemigroup) -> Result<SymmetricVerdict> {
    let n = h.embedding_dimension();
    if n != 4 {
        return Err(Error::WrongEmbdim { expected: 4, found: n });
    }
    if !h.is_symmetric() {
        return Err(Error::NotSymmetric);
    }
    if crate::toric::toric_ideal(h).generators().len() == 3 {
        return Err(Error::IsCI);
    }
    symmetric_verdict(h)
}

fn classify_symmetric_4_with(tc: &TangentCone) -> Result<SymmetricVerdict> {
    let h = tc.semigroup();
    if tc.embedding_dimension() != 4 {
        return Err(Error::WrongEmbdim {
            expected: 4,
            found: tc.embedding_dimension(),
        });
    }
    if !h.is_symmetric() {
        return Err(Error::NotSymmetric);
    }
    if tc.is_complete_intersection() {
        return Err(Error::IsCI);
    }
    symmetric_verdict(h)
}

fn symmetric_verdict(h: &NumericalSemigroup) -> Result<SymmetricVerdict> {
    let params = symmetric_params(h.generators());
    if params.len() > 1 {
        return Err(mismatch(h, &format!("parametrization is not unique: {params:?}")));
    }
    let quadratic = h.multiplicity() == 5;
    if quadratic != (params.len() == 1) {
        return Err(mismatch(h, "e = 5 disagrees with the parametrization"));
    }
    let params = params.first().copied();
    Ok(SymmetricVerdict {
        quadratic,
        params,
        star_case: params.map(|(a, b)| SymmetricStarCase::of(a, b)),
    })
}

/// `I_H*` predicted for `⟨5, 4a + b, 2a + 3b, 3a + 2b⟩`, in the degrevlex
/// ring of `h`.
pub fn symmetric_star_prediction(h: &NumericalSemigroup, a: u64, b: u64) -> Vec<FpPolynomial> {
    let x = relabel(h, &[5, 4 * a + b, 2 * a + 3 * b, 3 * a + 2 * b]);
    let ring = star_ring(h);
    let m = |f: &[(usize, u32)]| monomial(&ring, f);
    let bi = |f: &[(usize, u32)], g: &[(usize, u32)]| binom(&ring, f, g);
    let (x1, x2, x3, x4) = (x[0], x[1], x[2], x[3]);
    let x4sq = bi(&[(x4, 2)], &[(x2, 1), (x3, 1)]);
    match SymmetricStarCase::of(a, b) {
        SymmetricStarCase::Generic => vec![
            m(&[(x3, 1), (x4, 1)]),
            m(&[(x2, 2)]),
            m(&[(x3, 2)]),
            x4sq,
            m(&[(x2, 1), (x4, 1)]),
        ],
        SymmetricStarCase::AIsOne => vec![
            m(&[(x3, 1), (x4, 1)]),
            bi(&[(x2, 2)], &[(x1, 1), (x4, 1)]),
            m(&[(x3, 2)]),
            x4sq,
            bi(&[(x3, 1), (x1, 1)], &[(x2, 1), (x4, 1)]),
        ],
        SymmetricStarCase::BIsOne => vec![
            m(&[(x3, 1), (x4, 1)]),
            m(&[(x2, 2)]),
            bi(&[(x3, 2)], &[(x1, 1), (x2, 1)]),
            x4sq,
            m(&[(x2, 1), (x4, 1)]),
        ],
    }
}

/// Checks a symmetric verdict against the pipeline: quadraticity, the
/// predicted `I_H*`, a quadratic Gröbner basis for degrevlex
/// `x4 > x3 > x2 > x1` (in the labelling `⟨5, 4a+b, 2a+3b, 3a+2b⟩`) and
/// Gorensteinness of the tangent cone.
pub fn verify_symmetric_4(tc: &TangentCone, verdict: &SymmetricVerdict) -> Result<()> {
    let h = tc.semigroup();
    if tc.is_quadratic() != verdict.quadratic {
        return Err(mismatch(h, "symmetric classifier disagrees with the quadratic test"));
    }
    let Some((a, b)) = verdict.params else {
        return Ok(());
    };
    check_star(tc, &symmetric_star_prediction(h, a, b), "symmetric case")?;
    let x = relabel(h, &[5, 4 * a + b, 2 * a + 3 * b, 3 * a + 2 * b]);
    let order = TermOrder::degrevlex_by(vec![x[3], x[2], x[1], x[0]]);
    if tc.quadratic_groebner_basis(&order).is_none() {
        return Err(mismatch(h, "no quadratic degrevlex x4 > x3 > x2 > x1 Gröbner basis"));
    }
    if !is_gorenstein(tc)? {
        return Err(mismatch(h, "tangent cone is not Gorenstein"));
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// pseudo-symmetric 4-generated semigroups

/// Komeda's parameters.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KomedaParams {
    pub c1: u64,
    pub c2: u64,
    pub c3: u64,
    pub c4: u64,
    pub a21: u64,
}

impl KomedaParams {
    /// The parameters of `⟨5, 3a + b + 1, 3b - a - 2, a + 2b + 2⟩`:
    /// `c_1 = b`, `α_21 = a`, `c_2 = c_3 = c_4 = 2`.
    pub fn quadratic(a: u64, b: u64) -> Result<Self> {
        if a == 0 || a + 1 >= b || (3 * a + b + 1) % 5 == 0 {
            return Err(illegal(format!("need 0 < a < b - 1 with 5 ∤ 3a + b + 1 (a = {a}, b = {b})")));
        }
        Ok(KomedaParams {
            c1: b,
            c2: 2,
            c3: 2,
            c4: 2,
            a21: a,
        })
    }

    /// `(a_1, a_2, a_3, a_4)` in Komeda's labelling.
    pub fn generators(&self) -> [u64; 4] {
        let KomedaParams { c1, c2, c3, c4, a21 } = *self;
        let r = c1 - a21 - 1;
        [
            c2 * c3 * (c4 - 1) + 1,
            a21 * c3 * c4 + r * (c3 - 1) + c3,
            c1 * c4 + r * (c2 - 1) * (c4 - 1) - c4 + 1,
            c1 * c2 * (c3 - 1) + a21 * (c2 - 1) + c2,
        ]
    }
}

#[derive(Clone, Debug)]
pub struct KomedaSemigroup {
    pub semigroup: NumericalSemigroup,
    pub params: KomedaParams,
    pub labels: Vec<usize>,
    /// `f_1, ..., f_5` in the toric ring.
    pub toric: Vec<FpPolynomial>,
}

pub fn komeda_pseudosymmetric(p: &KomedaParams) -> Result<KomedaSemigroup> {
    let KomedaParams { c1, c2, c3, c4, a21 } = *p;
    if [c1, c2, c3, c4].iter().any(|&c| c < 2) || a21 == 0 || a21 + 1 >= c1 {
        return Err(illegal("need c_i > 1 and 0 < α_21 < c_1 - 1"));
    }
    if [c1, c2, c3, c4].iter().any(|&c| c > 1 << 12) {
        return Err(illegal("Komeda parameters too large"));
    }
    let gens = p.generators();
    if gens.iter().copied().reduce(gcd) != Some(1) {
        return Err(illegal(format!("generators {gens:?} are not coprime")));
    }
    let h = exact_semigroup(&gens)?;
    if !h.is_pseudo_symmetric() {
        return Err(mismatch(&h, "Komeda semigroup is not pseudo-symmetric"));
    }
    let x = relabel(&h, &gens);
    let e = |v: u64| v as u32;
    let ring = toric_ring(&h);
    let toric = vec![
        binom(&ring, &[(x[0], e(c1))], &[(x[2], 1), (x[3], e(c4 - 1))]),
        binom(&ring, &[(x[1], e(c2))], &[(x[0], e(a21)), (x[3], 1)]),
        binom(&ring, &[(x[2], e(c3))], &[(x[0], e(c1 - a21 - 1)), (x[1], 1)]),
        binom(&ring, &[(x[3], e(c4))], &[(x[0], 1), (x[1], e(c2 - 1)), (x[2], e(c3 - 1))]),
        binom(&ring, &[(x[2], e(c3 - 1)), (x[0], e(a21 + 1))], &[(x[1], 1), (x[3], e(c4 - 1))]),
    ];
    Ok(KomedaSemigroup {
        semigroup: h,
        params: *p,
        labels: x,
        toric,
    })
}

impl KomedaSemigroup {
    pub fn verify(&self, tc: &TangentCone) -> Result<()> {
        check_toric(tc, &self.toric, "Komeda's f_1..f_5")?;
        let verdict = classify_pseudosym_4(tc.semigroup())?;
        verify_pseudosym_4(tc, &verdict)
    }
}

/// Closed-form verdict for a pseudo-symmetric 4-generated semigroup.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PseudoSymmetricVerdict {
    /// Quadratic, equivalently Koszul.
    pub quadratic: bool,
    /// `(a, b)` with `H = ⟨5, 3a + b + 1, 3b - a - 2, a + 2b + 2⟩`.
    pub params: Option<(u64, u64)>,
}

fn pseudosym_params(g: &[u64]) -> Vec<(u64, u64)> {
    if g.len() != 4 || g[0] != 5 {
        return Vec::new();
    }
    let rest = [g[1] as i64, g[2] as i64, g[3] as i64];
    let mut out = Vec::new();
    for p in rest.iter().copied().permutations(3) {
        let (u, v, w) = (p[0], p[1], p[2]);
        // u = 3a + b + 1, v = 3b - a - 2, w = a + 2b + 2
        let (num_a, num_b) = (3 * (u - 1) - (v + 2), (u - 1) + 3 * (v + 2));
        if num_a % 10 != 0 || num_b % 10 != 0 {
            continue;
        }
        let (a, b) = (num_a / 10, num_b / 10);
        if a < 1 || a >= b - 1 || a + 2 * b + 2 != w || (3 * a + b + 1) % 5 == 0 {
            continue;
        }
        out.push((a as u64, b as u64));
    }
    out.sort_unstable();
    out.dedup();
    out
}

pub fn classify_pseudosym_4(h: &NumericalSemigroup) -> Result<PseudoSymmetricVerdict> {
    let n = h.embedding_dimension();
    if n != 4 {
        return Err(Error::WrongEmbdim { expected: 4, found: n });
    }
    if !h.is_pseudo_symmetric() {
        return Err(Error::NotPseudoSymmetric);
    }
    let params = pseudosym_params(h.generators());
    if params.len() > 1 {
        return Err(mismatch(h, &format!("parametrization is not unique: {params:?}")));
    }
    Ok(PseudoSymmetricVerdict {
        quadratic: params.len() == 1,
        params: params.first().copied(),
    })
}

/// Checks a pseudo-symmetric verdict against the pipeline. For quadratic
/// members the image of `I_H` under `x_1 ↦ 0` must be
/// `(x3x4, x2², x3², x4², x2x4)` and Komeda's generators must pass the
/// lifting criterion.
pub fn verify_pseudosym_4(tc: &TangentCone, verdict: &PseudoSymmetricVerdict) -> Result<()> {
    let h = tc.semigroup();
    if tc.is_quadratic() != verdict.quadratic {
        return Err(mismatch(h, "pseudo-symmetric classifier disagrees with the quadratic test"));
    }
    let Some((a, b)) = verdict.params else {
        return Ok(());
    };
    let fam = komeda_pseudosymmetric(&KomedaParams::quadratic(a, b)?)?;
    if fam.semigroup.generators() != h.generators() {
        return Err(mismatch(h, "parameters do not reproduce the semigroup"));
    }
    let ring = tc.toric_ideal().ring();
    let field = *ring.field();
    let x = &fam.labels;
    let bar = PolyRing::new(4, field, TermOrder::degrevlex(4));
    let images: Vec<FpPolynomial> = fam
        .toric
        .iter()
        .map(|f| bar.import(&ring.substitute(f, 0, &field.zero())))
        .collect();
    let expected: Vec<FpPolynomial> = [
        vec![(x[2], 1), (x[3], 1)],
        vec![(x[1], 2)],
        vec![(x[2], 2)],
        vec![(x[3], 2)],
        vec![(x[1], 1), (x[3], 1)],
    ]
    .iter()
    .map(|f| monomial(&bar, f))
    .collect();
    if !IdealPresentation::new(bar.clone(), images).equals(&IdealPresentation::new(bar, expected)) {
        return Err(mismatch(h, "image modulo x_1 differs from (x3x4, x2², x3², x4², x2x4)"));
    }
    if !lifting_criterion_with(tc.toric_ideal(), &fam.toric)? {
        return Err(mismatch(h, "Komeda's generators fail the lifting criterion"));
    }
    Ok(())
}

impl fmt::Display for SymmetricStarCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SymmetricStarCase::Generic => "a ≠ 1, b ≠ 1",
            SymmetricStarCase::AIsOne => "a = 1",
            SymmetricStarCase::BIsOne => "b = 1",
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gluing::quadratic_gluing_chain;

    fn sg(g: &[u64]) -> NumericalSemigroup {
        NumericalSemigroup::new(g).unwrap()
    }

    fn checked(member: FamilyMember) -> TangentCone {
        let tc = TangentCone::new(member.semigroup()).unwrap();
        member.verify(&tc).unwrap();
        tc
    }

    #[test]
    fn arithmetic_examples() {
        let fam = arithmetic_semigroup(6, 1, 4).unwrap();
        assert_eq!(fam.semigroup.generators(), &[6, 7, 8, 9]);
        assert_eq!((fam.a, fam.b), (1, 3));
        let tc = checked(FamilyMember::Arithmetic(fam));
        assert!(tc.is_quadratic());
        assert_eq!(tc.mu(), 4);

        assert!(classify_arithmetic(3, 1, 3).unwrap());
        assert!(classify_arithmetic(4, 1, 3).unwrap());
        assert!(!classify_arithmetic(9, 2, 4).unwrap());
        let tc = checked(FamilyMember::Arithmetic(arithmetic_semigroup(9, 2, 4).unwrap()));
        assert!(!tc.is_quadratic());
        for (a1, d, n) in [(2, 1, 3), (6, 3, 4), (5, 1, 2)] {
            assert!(matches!(arithmetic_semigroup(a1, d, n), Err(Error::IllegalParameters(_))));
        }
    }

    #[test]
    fn arithmetic_small_grid_matches_pipeline() {
        for n in 3..=5 {
            for a1 in n as u64..=12 {
                for d in 1..=3 {
                    let Ok(fam) = arithmetic_semigroup(a1, d, n) else { continue };
                    let predicted = fam.a == 1;
                    let tc = checked(FamilyMember::Arithmetic(fam));
                    assert_eq!(tc.is_quadratic(), predicted, "a1={a1} d={d} n={n}");
                    assert_eq!(predicted, a1 <= 2 * n as u64 - 2);
                }
            }
        }
    }

    #[test]
    fn compound_examples() {
        let fam = compound_semigroup(&[2, 2], &[3, 5]).unwrap();
        assert_eq!(fam.semigroup.generators(), &[4, 6, 15]);
        assert!(fam.predicted_quadratic());
        let tc = checked(FamilyMember::Compound(fam));
        assert!(tc.is_quadratic());
        assert_eq!(tc.semigroup().multiplicity(), 4);

        let fam = compound_semigroup(&[3, 2], &[5, 5]).unwrap();
        assert!(!fam.predicted_quadratic());
        assert!(!checked(FamilyMember::Compound(fam)).is_quadratic());

        let fam = compound_semigroup(&[2], &[3]).unwrap();
        assert_eq!(fam.semigroup.generators(), &[2, 3]);

        let fam = compound_semigroup(&[2, 2, 2], &[3, 5, 7]).unwrap();
        assert_eq!(fam.semigroup.multiplicity(), 8);
        assert!(checked(FamilyMember::Compound(fam)).is_quadratic());

        assert!(compound_semigroup(&[2, 2], &[3, 4]).is_err());
        assert!(compound_semigroup(&[3], &[2]).is_err());
    }

    #[test]
    fn watanabe_examples() {
        assert_eq!(watanabe(1, 1).unwrap().semigroup.generators(), &[2, 3]);
        let w = watanabe(3, 3).unwrap();
        assert_eq!(w.semigroup.generators(), &[8, 11, 14, 20]);
        let tc = checked(FamilyMember::Watanabe(w));
        assert!(tc.is_quadratic());
        let w = watanabe(4, 1).unwrap();
        assert_eq!(w.semigroup.multiplicity(), 16);
        assert_eq!(w.semigroup.embedding_dimension(), 5);
        let chain = quadratic_gluing_chain(&w.semigroup).unwrap();
        assert_eq!(chain.len(), 4);
        checked(FamilyMember::Watanabe(w));
        assert!(watanabe(2, 2).is_err());
    }

    #[test]
    fn coprime_products() {
        let fam = coprime_product_semigroup(&[5, 3, 2]).unwrap();
        assert_eq!(fam.semigroup.generators(), &[6, 10, 15]);
        let tc = checked(FamilyMember::CoprimeProduct(fam));
        assert_eq!(tc.minimal_generator_degrees(), vec![2, 3]);
        let fam = coprime_product_semigroup(&[2, 7, 3]).unwrap();
        assert_eq!(fam.semigroup.generators(), &[6, 14, 21]);
        checked(FamilyMember::CoprimeProduct(fam));
        assert_eq!(coprime_product_semigroup(&[6, 3, 5]).unwrap_err(), Error::NotPairwiseCoprime);
        assert!(coprime_product_semigroup(&[3, 2]).is_err());
    }

    #[test]
    fn three_generated() {
        let c = classify_3_semigroup(&sg(&[3, 4, 5])).unwrap();
        assert!(c.quadratic && c.normal_form.is_none());
        let c = classify_3_semigroup(&sg(&[4, 6, 7])).unwrap();
        assert_eq!(c.normal_form, Some((2, 3)));
        assert_eq!(three_semigroup_quadratic(2, 3).unwrap().generators(), &[4, 6, 7]);
        assert!(!classify_3_semigroup(&sg(&[5, 6, 7])).unwrap().quadratic);
        assert!(!classify_3_semigroup(&sg(&[4, 5, 11])).unwrap().quadratic);
        assert!(matches!(classify_3_semigroup(&sg(&[2, 3])), Err(Error::WrongEmbdim { .. })));
    }

    #[test]
    fn special_aci_examples() {
        let h = sg(&[11, 13, 14, 15, 19]);
        let saci = special_aci(&h).unwrap().unwrap();
        let ring = toric_ring(&h);
        let listed: Vec<FpPolynomial> = ["x1^3-x3*x5", "x2^2-x1*x4", "x3^2-x2*x4", "x4^2-x1*x5", "x5^2-x1*x2*x3"]
            .iter()
            .map(|s| ring.parse(s).unwrap())
            .collect();
        for f in &listed {
            let g = ring.neg(f);
            assert!(saci.binomials.contains(f) || saci.binomials.contains(&g), "{}", ring.render(f));
        }
        assert!(special_aci_detect(&sg(&[3, 4, 5])).unwrap());
        assert!(special_aci_detect(&sg(&[5, 6, 7])).unwrap());
        assert!(!special_aci_detect(&sg(&[6, 10, 15])).unwrap());
        assert!(!special_aci_detect(&sg(&[6, 7, 8, 9])).unwrap());
    }

    #[test]
    fn multiplicity_law() {
        let law = special_aci_multiplicity_law(&sg(&[11, 13, 14, 15, 19])).unwrap();
        assert_eq!(law, MultiplicityLaw { degrevlex_quadratic_basis: false, boundary_multiplicity: false });
        let law = special_aci_multiplicity_law(&sg(&[3, 4, 5])).unwrap();
        assert!(law.degrevlex_quadratic_basis && law.boundary_multiplicity);
        // glued from ⟨3,4,5⟩ with the odd element 7
        let law = special_aci_multiplicity_law(&sg(&[6, 7, 8, 10])).unwrap();
        assert!(law.degrevlex_quadratic_basis && law.boundary_multiplicity);
        for g in [&[5u64, 6, 7][..], &[6, 7, 8, 9]] {
            assert!(matches!(special_aci_multiplicity_law(&sg(g)), Err(Error::HypothesisFailed(_))));
        }
    }

    #[test]
    fn bresinsky_examples() {
        let fam = bresinsky_symmetric(&BresinskyParams::quadratic(2, 3).unwrap()).unwrap();
        assert_eq!(fam.params.generators(), [5, 11, 13, 12]);
        assert_eq!(fam.semigroup.generators(), &[5, 11, 12, 13]);
        let tc = checked(FamilyMember::Bresinsky(fam));
        let v = classify_symmetric_4(tc.semigroup()).unwrap();
        assert_eq!(v.params, Some((2, 3)));
        assert_eq!(v.star_case, Some(SymmetricStarCase::Generic));

        let fam = bresinsky_symmetric(&BresinskyParams::quadratic(1, 2).unwrap()).unwrap();
        assert_eq!(fam.params.generators(), [5, 6, 8, 7]);
        let tc = checked(FamilyMember::Bresinsky(fam));
        assert_eq!(classify_symmetric_4(tc.semigroup()).unwrap().star_case, Some(SymmetricStarCase::AIsOne));

        assert!(BresinskyParams::quadratic(1, 1).is_err());
        assert!(BresinskyParams::quadratic(2, 7).is_err());
        assert_eq!(classify_symmetric_4(&sg(&[5, 6, 7])).unwrap_err(), Error::WrongEmbdim { expected: 4, found: 3 });
        assert_eq!(classify_symmetric_4(&sg(&[8, 10, 12, 13])).unwrap_err(), Error::IsCI);
    }

    #[test]
    fn symmetric_parametrization_is_injective() {
        let mut seen = std::collections::HashMap::new();
        for a in 1..=12 {
            for b in 1..=12 {
                let Ok(p) = BresinskyParams::quadratic(a, b) else { continue };
                let h = bresinsky_symmetric(&p).unwrap().semigroup;
                assert_eq!(symmetric_params(h.generators()), vec![(a, b)]);
                assert!(seen.insert(h.generators().to_vec(), (a, b)).is_none());
            }
        }
    }

    #[test]
    fn komeda_examples() {
        let p = KomedaParams::quadratic(1, 3).unwrap();
        let fam = komeda_pseudosymmetric(&p).unwrap();
        assert_eq!(p.generators(), [5, 7, 6, 9]);
        assert_eq!(fam.semigroup.generators(), &[5, 6, 7, 9]);
        let tc = checked(FamilyMember::Komeda(fam));
        assert!(tc.is_quadratic());
        assert_eq!(classify_pseudosym_4(tc.semigroup()).unwrap().params, Some((1, 3)));

        let bad = KomedaParams { c1: 3, c2: 2, c3: 2, c4: 2, a21: 2 };
        assert!(matches!(komeda_pseudosymmetric(&bad), Err(Error::IllegalParameters(_))));
        for a in 1..=6u64 {
            for b in a + 2..=12 {
                let Ok(p) = KomedaParams::quadratic(a, b) else { continue };
                let g = p.generators();
                assert_eq!((3 * g[1]) % 5, g[2] % 5);
                assert_eq!((2 * g[1]) % 5, g[3] % 5);
            }
        }
        assert_eq!(classify_pseudosym_4(&sg(&[5, 11, 12, 13])).unwrap_err(), Error::NotPseudoSymmetric);
    }

    #[test]
    fn general_komeda_member() {
        let p = KomedaParams { c1: 4, c2: 3, c3: 2, c4: 2, a21: 1 };
        let fam = komeda_pseudosymmetric(&p).unwrap();
        let tc = TangentCone::new(&fam.semigroup).unwrap();
        fam.verify(&tc).unwrap();
        assert!(!classify_pseudosym_4(&fam.semigroup).unwrap().quadratic);
    }

    #[test]
    fn family_spec_round_trip() {
        let spec = FamilySpec::Compound { a: vec![2, 2], b: vec![3, 5] };
        let json = serde_json::to_string(&spec).unwrap();
        assert_eq!(json, r#"{"family":"compound","a":[2,2],"b":[3,5]}"#);
        assert_eq!(serde_json::from_str::<FamilySpec>(&json).unwrap(), spec);
        assert!(spec.predicted_quadratic().unwrap());
        let spec = FamilySpec::SymmetricFourParam { a: 2, b: 3 };
        assert_eq!(spec.semigroup().unwrap().generators(), &[5, 11, 12, 13]);
    }
}
