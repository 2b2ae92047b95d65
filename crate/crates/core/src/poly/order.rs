use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::monomial::Monomial;

/// The shape of a term order; the variable ranking lives in [`TermOrder`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum OrderKind {
    Lex,
    DegRevLex,
    /// Weighted degree first, ties broken reverse-lexicographically.
    Weighted { weights: Vec<u64> },
    /// Lex on the listed variables, then `inner` on everything.
    Block { first: Vec<usize>, inner: Box<TermOrder> },
}

/// A global monomial order on `K[x_1..x_n]`.
///
/// `ranking[0]` is the largest variable. For the reverse-lexicographic
/// kinds the last ranked variable is inspected first and a smaller exponent
/// there makes the monomial bigger.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TermOrder {
    kind: OrderKind,
    ranking: Vec<usize>,
}

impl TermOrder {
    /// Degrevlex with `x_1 > x_2 > ... > x_n`.
    pub fn degrevlex(nvars: usize) -> Self {
        Self::degrevlex_by((0..nvars).collect())
    }

    pub fn degrevlex_by(ranking: Vec<usize>) -> Self {
        debug_assert!(is_permutation(&ranking));
        TermOrder {
            kind: OrderKind::DegRevLex,
            ranking,
        }
    }

    /// Lex with `x_1 > x_2 > ... > x_n`.
    pub fn lex(nvars: usize) -> Self {
        Self::lex_by((0..nvars).collect())
    }

    pub fn lex_by(ranking: Vec<usize>) -> Self {
        debug_assert!(is_permutation(&ranking));
        TermOrder {
            kind: OrderKind::Lex,
            ranking,
        }
    }

    pub fn weighted(weights: Vec<u64>, ranking: Vec<usize>) -> Self {
        assert!(weights.iter().all(|&w| w > 0), "weights must be positive");
        assert_eq!(weights.len(), ranking.len());
        TermOrder {
            kind: OrderKind::Weighted { weights },
            ranking,
        }
    }

    /// An elimination order for the variables in `first`.
    pub fn block(first: Vec<usize>, inner: TermOrder) -> Self {
        let ranking = inner.ranking.clone();
        TermOrder {
            kind: OrderKind::Block {
                first,
                inner: Box::new(inner),
            },
            ranking,
        }
    }

    pub fn kind(&self) -> &OrderKind {
        &self.kind
    }

    pub fn ranking(&self) -> &[usize] {
        &self.ranking
    }

    pub fn nvars(&self) -> usize {
        self.ranking.len()
    }

    /// Weights used for the sugar-like degree of S-pairs.
    pub fn grading(&self) -> Option<&[u64]> {
        match &self.kind {
            OrderKind::Weighted { weights } => Some(weights),
            OrderKind::Block { inner, .. } => inner.grading(),
            _ => None,
        }
    }

    pub fn degree_of(&self, m: &Monomial) -> u64 {
        match self.grading() {
            Some(w) => m.weighted_degree(w),
            None => m.degree() as u64,
        }
    }

    fn revlex(&self, a: &Monomial, b: &Monomial) -> Ordering {
        for &v in self.ranking.iter().rev() {
            match a.exp(v).cmp(&b.exp(v)) {
                Ordering::Equal => continue,
                other => return other.reverse(),
            }
        }
        Ordering::Equal
    }

    #[inline]
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match &self.kind {
            OrderKind::Lex => {
                for &v in &self.ranking {
                    match a.exp(v).cmp(&b.exp(v)) {
                        Ordering::Equal => continue,
                        other => return other,
                    }
                }
                Ordering::Equal
            }
            OrderKind::DegRevLex => a
                .degree()
                .cmp(&b.degree())
                .then_with(|| self.revlex(a, b)),
            OrderKind::Weighted { weights } => a
                .weighted_degree(weights)
                .cmp(&b.weighted_degree(weights))
                .then_with(|| self.revlex(a, b)),
            OrderKind::Block { first, inner } => {
                for &v in first {
                    match a.exp(v).cmp(&b.exp(v)) {
                        Ordering::Equal => continue,
                        other => return other,
                    }
                }
                inner.cmp(a, b)
            }
        }
    }
}

fn is_permutation(ranking: &[usize]) -> bool {
    let mut seen = vec![false; ranking.len()];
    ranking.iter().all(|&v| v < seen.len() && !std::mem::replace(&mut seen[v], true))
}

impl fmt::Display for TermOrder {
    /// For instance `degrevlex(x4>x3>x2>x1)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match &self.kind {
            OrderKind::Lex => "lex",
            OrderKind::DegRevLex => "degrevlex",
            OrderKind::Weighted { .. } => "weighted",
            OrderKind::Block { .. } => "block",
        };
        write!(f, "{name}(")?;
        for (i, v) in self.ranking.iter().enumerate() {
            if i > 0 {
                write!(f, ">")?;
            }
            write!(f, "x{}", v + 1)?;
        }
        write!(f, ")")
    }
}
