//! Gluings of numerical semigroups.
//!
//! A simple gluing `⟨cL, ℓ⟩` takes `c·G(L) ∪ {ℓ}` as generators, with
//! `c > 1`, `gcd(c, ℓ) = 1` and `ℓ ∈ L ∖ G(L)`; for `c = 2` it is a quadratic
//! gluing. Generators of the glued semigroup are stored sorted, so the
//! variable of `ℓ` is wherever `ℓ` falls in that order; [`GluingData`] keeps
//! track of the positions.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::groebner::IdealPresentation;
use crate::homology::{koszul_verdict, KoszulOptions, KoszulStatus};
use crate::poly::{FpPolynomial, Monomial, PolyRing, TermOrder};
use crate::semigroup::{gcd, gcd_all, NumericalSemigroup};
use crate::tangent_cone::{CiClass, TangentCone};
use crate::toric::toric_ideal;

/// A checked simple gluing `⟨cL, ℓ⟩` with its variable bookkeeping.
#[derive(Clone, Debug)]
pub struct GluingData {
    pub inner: NumericalSemigroup,
    pub c: u64,
    pub ell: u64,
    pub glued: NumericalSemigroup,
    /// `inner_vars[i]`: variable of `c·l_i` in the glued semigroup
    pub inner_vars: Vec<usize>,
    /// variable of `ℓ`
    pub ell_var: usize,
}

impl GluingData {
    pub fn new(l: &NumericalSemigroup, c: u64, ell: u64) -> Result<Self> {
        if c < 2 {
            return Err(Error::IllegalParameters(format!("gluing factor {c} must exceed 1")));
        }
        if gcd(c, ell) != 1 {
            return Err(Error::NotCoprime(c, ell));
        }
        if !l.contains(ell as i64) {
            return Err(Error::NotInSemigroup(ell as i64));
        }
        if l.generators().contains(&ell) {
            return Err(Error::IsGenerator(ell));
        }
        let mut raw: Vec<u64> = l.generators().iter().map(|&a| c * a).collect();
        raw.push(ell);
        let glued = NumericalSemigroup::new(&raw)?;
        if glued.embedding_dimension() != l.embedding_dimension() + 1 {
            return Err(Error::IllegalParameters(format!(
                "{raw:?} is not minimally generated"
            )));
        }
        let position = |v: u64| glued.generators().iter().position(|&g| g == v).unwrap();
        Ok(GluingData {
            inner_vars: l.generators().iter().map(|&a| position(c * a)).collect(),
            ell_var: position(ell),
            inner: l.clone(),
            c,
            ell,
            glued,
        })
    }

    /// `ord_L(ℓ)`.
    pub fn order_of_ell(&self) -> u32 {
        self.inner.order_of(self.ell as i64).unwrap()
    }

    /// Exponents `λ` of the lexicographically greatest maximal-length
    /// factorization of `ℓ` in `L`.
    pub fn lambda(&self) -> Vec<u32> {
        self.inner.max_length_representation(self.ell as i64).unwrap()
    }

    /// `f = x_ℓ^c - ∏ x_{c l_i}^{λ_i}` in the glued toric ring.
    pub fn relation(&self, ring: &PolyRing<PrimeField>) -> FpPolynomial {
        let n = self.glued.embedding_dimension();
        let mut rhs = vec![0u32; n];
        for (i, &l) in self.lambda().iter().enumerate() {
            rhs[self.inner_vars[i]] = l;
        }
        ring.binomial(Monomial::var_pow(n, self.ell_var, self.c as u32), Monomial::new(&rhs))
    }

    /// Moves a polynomial in the variables of `L` into the glued ring.
    pub fn embed(&self, ring: &PolyRing<PrimeField>, f: &FpPolynomial) -> FpPolynomial {
        ring.import_mapped(f, &self.inner_vars)
    }
}

/// `⟨cL, ℓ⟩`.
pub fn simple_glue(l: &NumericalSemigroup, c: u64, ell: u64) -> Result<NumericalSemigroup> {
    Ok(GluingData::new(l, c, ell)?.glued)
}

/// `⟨2L, ℓ⟩` for odd `ℓ`.
pub fn quadratic_glue(l: &NumericalSemigroup, ell: u64) -> Result<NumericalSemigroup> {
    if ell % 2 == 0 {
        return Err(Error::NotCoprime(2, ell));
    }
    simple_glue(l, 2, ell)
}

/// The gluing relation of `⟨cL, ℓ⟩`, in the toric ring of the glued semigroup.
pub fn gluing_relation(l: &NumericalSemigroup, c: u64, ell: u64) -> Result<FpPolynomial> {
    let data = GluingData::new(l, c, ell)?;
    Ok(data.relation(toric_ideal(&data.glued).ring()))
}

/// Checks `I_H = (I_L S, f)` for a simple gluing.
pub fn check_toric_gluing(data: &GluingData) -> bool {
    let toric = toric_ideal(&data.glued);
    let ring = toric.ring();
    let mut gens: Vec<FpPolynomial> = toric_ideal(&data.inner)
        .generators()
        .iter()
        .map(|g| data.embed(ring, g))
        .collect();
    gens.push(data.relation(ring));
    toric.equals(&IdealPresentation::new(ring.clone(), gens))
}

/// Result of [`tangent_cone_of_gluing`].
#[derive(Clone, Debug)]
pub struct GluedTangentCone {
    /// `I_H*` in `F[x_1..x_n]` (degrevlex).
    pub ideal: IdealPresentation<PrimeField>,
    /// Whether `(I_L* S, f*)` was used; otherwise `I_H*` was computed directly.
    pub by_formula: bool,
    pub warning: Option<String>,
}

/// `I_H* = (I_L* S, f*)` when `c ≤ ord_L(ℓ)`, checked against the direct
/// computation. Outside that range the direct result is returned with a warning.
pub fn tangent_cone_of_gluing(l: &NumericalSemigroup, c: u64, ell: u64) -> Result<GluedTangentCone> {
    let data = GluingData::new(l, c, ell)?;
    let direct = TangentCone::new(&data.glued)?;
    let ring = direct.ideal().ring().clone();
    let ord = data.order_of_ell();
    if c as u32 > ord {
        return Ok(GluedTangentCone {
            ideal: direct.ideal().clone(),
            by_formula: false,
            warning: Some(format!(
                "c = {c} exceeds ord_L({ell}) = {ord}; I* computed directly"
            )),
        });
    }
    let inner = TangentCone::new(l)?;
    let mut gens: Vec<FpPolynomial> = inner
        .ideal()
        .generators()
        .iter()
        .map(|g| data.embed(&ring, g))
        .collect();
    gens.push(ring.import(&data.relation(&ring).initial_form()?));
    let formula = IdealPresentation::new(ring, gens);
    if !formula.equals(direct.ideal()) {
        return Err(Error::OracleMismatch(format!(
            "(I_L* S, f*) differs from I* for {}",
            data.glued
        )));
    }
    Ok(GluedTangentCone {
        ideal: formula,
        by_formula: true,
        warning: None,
    })
}

/// Predicates of `L` and `H = ⟨2L, ℓ⟩`, with the claims transferred from
/// `L` and their direct checks on `H`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TransferReport {
    pub inner: Vec<u64>,
    pub ell: u64,
    pub glued: Vec<u64>,
    pub inner_quadratic: bool,
    pub glued_quadratic: bool,
    pub inner_ci: bool,
    pub glued_ci: bool,
    pub inner_star_class: CiClass,
    pub glued_star_class: CiClass,
    pub inner_koszul: Option<KoszulStatus>,
    pub glued_koszul: Option<KoszulStatus>,
    /// Transferred claims that the direct computation contradicts.
    pub violations: Vec<String>,
}

/// Compares `L` and `⟨2L, ℓ⟩`. Koszul verdicts are computed only when
/// `koszul` is given; undecided verdicts are not compared.
pub fn transfer_predicates(
    l: &NumericalSemigroup,
    ell: u64,
    koszul: Option<&KoszulOptions>,
) -> Result<TransferReport> {
    let h = quadratic_glue(l, ell)?;
    let tl = TangentCone::new(l)?;
    let th = TangentCone::new(&h)?;
    let mut violations = Vec::new();
    let (lq, hq) = (tl.is_quadratic(), th.is_quadratic());
    if lq != hq {
        violations.push(format!("quadratic: L {lq}, H {hq}"));
    }
    let (lci, hci) = (tl.is_complete_intersection(), th.is_complete_intersection());
    if lq && lci != hci {
        violations.push(format!("complete intersection: L {lci}, H {hci}"));
    }
    let (ls, hs) = (tl.classify_ci_star(), th.classify_ci_star());
    if lq && ls == CiClass::AlmostCompleteIntersection && hs != ls {
        violations.push(format!("almost CI tangent cone: L {ls}, H {hs}"));
    }
    let (mut lk, mut hk) = (None, None);
    if let Some(opts) = koszul {
        let a = koszul_verdict(l, opts)?.status;
        let b = koszul_verdict(&h, opts)?.status;
        let decided = |s: &KoszulStatus| !matches!(s, KoszulStatus::UndecidedUpTo { .. });
        let yes = |s: &KoszulStatus| matches!(s, KoszulStatus::KoszulCertified);
        if decided(&a) && decided(&b) && yes(&a) != yes(&b) {
            violations.push(format!("Koszul: L {a:?}, H {b:?}"));
        }
        lk = Some(a);
        hk = Some(b);
    }
    Ok(TransferReport {
        inner: l.generators().to_vec(),
        ell,
        glued: h.generators().to_vec(),
        inner_quadratic: lq,
        glued_quadratic: hq,
        inner_ci: lci,
        glued_ci: hci,
        inner_star_class: ls,
        glued_star_class: hs,
        inner_koszul: lk,
        glued_koszul: hk,
        violations,
    })
}

/// `H = ⟨2L, ℓ⟩` for a (unique) odd generator `ℓ`, if `H` has that shape.
pub fn as_quadratic_gluing(h: &NumericalSemigroup) -> Option<(NumericalSemigroup, u64)> {
    let gens = h.generators();
    let odd: Vec<u64> = gens.iter().copied().filter(|a| a % 2 == 1).collect();
    if gens.len() < 2 || odd.len() != 1 {
        return None;
    }
    let ell = odd[0];
    let halves: Vec<u64> = gens.iter().filter(|&&a| a != ell).map(|a| a / 2).collect();
    if gcd_all(&halves) != 1 {
        return None;
    }
    let l = NumericalSemigroup::new(&halves).ok()?;
    GluingData::new(&l, 2, ell).ok().map(|_| (l, ell))
}

/// Why [`quadratic_gluing_chain`] found no chain.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ChainFailure {
    NotCompleteIntersection,
    NotQuadratic,
    /// Peeling failed although `H` is a quadratic complete intersection.
    Inconsistent(String),
}

/// The odd generators `ℓ_1, ..., ℓ_{n-1}` with `H_i = ⟨2H_{i-1}, ℓ_i⟩`,
/// `H_0 = ℕ`, `H_{n-1} = H`, found by peeling off the unique odd generator.
pub fn quadratic_gluing_chain(h: &NumericalSemigroup) -> std::result::Result<Vec<u64>, ChainFailure> {
    let mut chain = Vec::new();
    let mut current = h.clone();
    let mut stuck = None;
    while !current.is_natural() {
        match as_quadratic_gluing(&current) {
            Some((l, ell)) => {
                chain.push(ell);
                current = l;
            }
            None => {
                stuck = Some(current.to_string());
                break;
            }
        }
    }
    let Some(stuck) = stuck else {
        chain.reverse();
        return Ok(chain);
    };
    if delorme_decompose(h).is_none() {
        return Err(ChainFailure::NotCompleteIntersection);
    }
    match crate::tangent_cone::is_quadratic(h) {
        Ok(false) => Err(ChainFailure::NotQuadratic),
        Ok(true) => Err(ChainFailure::Inconsistent(format!("no quadratic gluing for {stuck}"))),
        Err(e) => Err(ChainFailure::Inconsistent(e.to_string())),
    }
}

/// Recursive gluing decomposition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GluingTree {
    Natural,
    Atomic {
        generators: Vec<u64>,
    },
    Simple {
        child: Box<GluingTree>,
        c: u64,
        ell: u64,
        semigroup: Vec<u64>,
    },
    Pair {
        left: Box<GluingTree>,
        right: Box<GluingTree>,
        c1: u64,
        c2: u64,
        semigroup: Vec<u64>,
    },
}

impl GluingTree {
    /// The semigroup recorded at this node.
    pub fn generators(&self) -> Vec<u64> {
        match self {
            GluingTree::Natural => vec![1],
            GluingTree::Atomic { generators } => generators.clone(),
            GluingTree::Simple { semigroup, .. } | GluingTree::Pair { semigroup, .. } => semigroup.clone(),
        }
    }

    /// Recomputes the semigroup from the leaves and gluing data.
    pub fn compose(&self) -> Result<NumericalSemigroup> {
        match self {
            GluingTree::Natural => Ok(NumericalSemigroup::natural()),
            GluingTree::Atomic { generators } => NumericalSemigroup::new(generators),
            GluingTree::Simple { child, c, ell, .. } => simple_glue(&child.compose()?, *c, *ell),
            GluingTree::Pair { left, right, c1, c2, .. } => {
                let mut raw: Vec<u64> = left.compose()?.generators().iter().map(|a| c1 * a).collect();
                raw.extend(right.compose()?.generators().iter().map(|a| c2 * a));
                NumericalSemigroup::new(&raw)
            }
        }
    }

    /// Whether every node recomposes to its recorded semigroup.
    pub fn is_consistent(&self) -> bool {
        let own = self.compose().map(|h| h.generators().to_vec()).ok() == Some(self.generators());
        own && match self {
            GluingTree::Simple { child, .. } => child.is_consistent(),
            GluingTree::Pair { left, right, .. } => left.is_consistent() && right.is_consistent(),
            _ => true,
        }
    }
}

/// A decomposition of `H` into gluings down to copies of `ℕ`; exists iff
/// `K[H]` is a complete intersection.
pub fn delorme_decompose(h: &NumericalSemigroup) -> Option<GluingTree> {
    let mut memo = HashMap::new();
    delorme_rec(h.generators(), &mut memo)
}

fn delorme_rec(gens: &[u64], memo: &mut HashMap<Vec<u64>, Option<GluingTree>>) -> Option<GluingTree> {
    if gens == [1] {
        return Some(GluingTree::Natural);
    }
    if let Some(hit) = memo.get(gens) {
        return hit.clone();
    }
    let n = gens.len();
    let mut found = None;
    // subsets containing the first generator, in increasing bitmask order
    for mask in (1u64..(1 << n) - 1).filter(|m| m & 1 == 1) {
        let (a, b): (Vec<u64>, Vec<u64>) = {
            let mut a = Vec::new();
            let mut b = Vec::new();
            for (k, &g) in gens.iter().enumerate() {
                if mask >> k & 1 == 1 {
                    a.push(g);
                } else {
                    b.push(g);
                }
            }
            (a, b)
        };
        let (c1, c2) = (gcd_all(&a), gcd_all(&b));
        if gcd(c1, c2) != 1 {
            continue;
        }
        let h1 = NumericalSemigroup::new(&a.iter().map(|x| x / c1).collect::<Vec<_>>()).ok()?;
        let h2 = NumericalSemigroup::new(&b.iter().map(|x| x / c2).collect::<Vec<_>>()).ok()?;
        let legal = |c: u64, other: &NumericalSemigroup| {
            other.contains(c as i64) && !other.generators().contains(&c)
        };
        if !legal(c1, &h2) || !legal(c2, &h1) {
            continue;
        }
        let Some(t1) = delorme_rec(h1.generators(), memo) else { continue };
        let Some(t2) = delorme_rec(h2.generators(), memo) else { continue };
        let semigroup = gens.to_vec();
        found = Some(match (&t1, &t2) {
            (_, GluingTree::Natural) => GluingTree::Simple {
                child: Box::new(t1),
                c: c1,
                ell: c2,
                semigroup,
            },
            (GluingTree::Natural, _) => GluingTree::Simple {
                child: Box::new(t2),
                c: c2,
                ell: c1,
                semigroup,
            },
            _ => GluingTree::Pair {
                left: Box::new(t1),
                right: Box::new(t2),
                c1,
                c2,
                semigroup,
            },
        });
        break;
    }
    memo.insert(gens.to_vec(), found.clone());
    found
}

/// `f*` for the gluing relation, in the degrevlex ring of the glued semigroup.
pub fn gluing_relation_initial_form(data: &GluingData) -> Result<FpPolynomial> {
    let n = data.glued.embedding_dimension();
    let ring = PolyRing::new(n, PrimeField::default(), TermOrder::degrevlex(n));
    ring.import(&data.relation(&ring)).initial_form()
}

/// The gluing relation vanishes under `x_i ↦ t^{a_i}`.
pub fn relation_vanishes(data: &GluingData) -> bool {
    let field = PrimeField::default();
    let ring = toric_ideal(&data.glued).ring().clone();
    let f = data.relation(&ring);
    crate::toric::vanishes_on_curve(&field, &f, data.glued.generators())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sg(g: &[i64]) -> NumericalSemigroup {
        NumericalSemigroup::from_generators(g).unwrap()
    }

    #[test]
    fn seven_eight_twenty_is_a_gluing() {
        let h = simple_glue(&sg(&[2, 5]), 4, 7).unwrap();
        assert_eq!(h.generators(), &[7, 8, 20]);
        let data = GluingData::new(&sg(&[2, 5]), 4, 7).unwrap();
        assert!(check_toric_gluing(&data));
        assert!(relation_vanishes(&data));
    }

    #[test]
    fn illegal_gluings() {
        let l = sg(&[2, 5]);
        assert!(matches!(simple_glue(&l, 4, 5), Err(Error::IsGenerator(5))));
        assert!(matches!(simple_glue(&l, 4, 3), Err(Error::NotInSemigroup(3))));
        assert!(matches!(simple_glue(&l, 4, 6), Err(Error::NotCoprime(4, 6))));
        assert!(simple_glue(&l, 1, 7).is_err());
    }

    #[test]
    fn relation_uses_lex_greatest_witness() {
        // ord_{⟨2,3⟩}(7) = 3 with 7 = 2+2+3
        let data = GluingData::new(&sg(&[2, 3]), 2, 7).unwrap();
        assert_eq!(data.order_of_ell(), 3);
        assert_eq!(data.lambda(), vec![2, 1]);
        let f = gluing_relation(&sg(&[2, 3]), 2, 7).unwrap();
        let ring = toric_ideal(&data.glued).ring().clone();
        // H = ⟨4, 6, 7⟩: x3 ↔ 7, x1 ↔ 4, x2 ↔ 6
        assert_eq!(f, ring.parse("x3^2-x1^2*x2").unwrap());
    }

    #[test]
    fn gluing_formula_for_the_cusp() {
        let glued = tangent_cone_of_gluing(&sg(&[2, 3]), 2, 7).unwrap();
        assert!(glued.by_formula);
        let ring = glued.ideal.ring().clone();
        let expected = IdealPresentation::new(
            ring.clone(),
            vec![ring.parse("x2^2").unwrap(), ring.parse("x3^2").unwrap()],
        );
        assert!(glued.ideal.equals(&expected));
    }

    #[test]
    fn formula_out_of_range_falls_back() {
        let glued = tangent_cone_of_gluing(&sg(&[4, 6, 7, 9]), 3, 8).unwrap();
        assert!(!glued.by_formula);
        assert!(glued.warning.is_some());
        let tc = TangentCone::new(&sg(&[12, 18, 21, 27, 8])).unwrap();
        assert!(glued.ideal.equals(tc.ideal()));
        assert_eq!(tc.minimal_generator_degrees(), vec![2; 7]);
    }

    #[test]
    fn delorme_examples() {
        let t = delorme_decompose(&sg(&[14, 21, 10, 15])).unwrap();
        assert!(t.is_consistent());
        assert_eq!(t.compose().unwrap().generators(), &[10, 14, 15, 21]);
        assert!(delorme_decompose(&sg(&[11, 13, 14, 15, 19])).is_none());
        let t = delorme_decompose(&sg(&[2, 3])).unwrap();
        assert!(matches!(t, GluingTree::Simple { .. }));
        assert!(delorme_decompose(&sg(&[6, 10, 15])).unwrap().is_consistent());
    }

    #[test]
    fn chains() {
        assert_eq!(quadratic_gluing_chain(&sg(&[8, 9, 10, 12])), Ok(vec![3, 5, 9]));
        assert_eq!(
            quadratic_gluing_chain(&sg(&[14, 21, 10, 15])),
            Err(ChainFailure::NotQuadratic)
        );
        assert_eq!(
            quadratic_gluing_chain(&sg(&[11, 13, 14, 15, 19])),
            Err(ChainFailure::NotCompleteIntersection)
        );
    }

    #[test]
    fn natural_glues_to_two_generators() {
        let report = transfer_predicates(&NumericalSemigroup::natural(), 5, None).unwrap();
        assert_eq!(report.glued, vec![2, 5]);
        assert!(report.glued_quadratic && report.glued_ci);
        assert!(report.violations.is_empty());
    }
}
