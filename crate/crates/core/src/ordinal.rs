//! Ordinals below ε₀ in Cantor normal form.
//!
//! These are only ever used as subscripts of ℵ and ℶ, so the arithmetic is
//! limited to what building and dissecting such indices requires: comparison,
//! addition, successor/limit classification and fundamental sequences.

use std::cmp::Ordering;
use std::fmt;

use crate::error::ParseError;

/// One `ω^exponent · coefficient` summand.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CnfTerm {
    pub exponent: Ordinal,
    pub coefficient: u64,
}

/// An ordinal `ω^e₁·c₁ + … + ω^eₖ·cₖ` with `e₁ > … > eₖ` and every `cᵢ ≥ 1`.
/// The empty sum is `0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Ordinal {
    terms: Vec<CnfTerm>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OrdinalKind {
    Zero,
    Successor,
    Limit,
}

impl Ordinal {
    pub fn zero() -> Self {
        Ordinal { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Ordinal::nat(1)
    }

    pub fn nat(n: u64) -> Self {
        if n == 0 {
            Ordinal::zero()
        } else {
            Ordinal::monomial(Ordinal::zero(), n)
        }
    }

    pub fn omega() -> Self {
        Ordinal::monomial(Ordinal::one(), 1)
    }

    /// `ω^exponent · coefficient`.
    pub fn monomial(exponent: Ordinal, coefficient: u64) -> Self {
        if coefficient == 0 {
            return Ordinal::zero();
        }
        Ordinal {
            terms: vec![CnfTerm {
                exponent,
                coefficient,
            }],
        }
    }

    /// Builds an ordinal from arbitrary `(exponent, coefficient)` pairs by
    /// ordinal addition, so the result is always in normal form.
    pub fn from_terms<I: IntoIterator<Item = (Ordinal, u64)>>(terms: I) -> Self {
        terms
            .into_iter()
            .fold(Ordinal::zero(), |acc, (e, c)| acc.add(&Ordinal::monomial(e, c)))
    }

    pub fn terms(&self) -> &[CnfTerm] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `Some(n)` when the ordinal is a natural number.
    pub fn as_nat(&self) -> Option<u64> {
        match self.terms.as_slice() {
            [] => Some(0),
            [t] if t.exponent.is_zero() => Some(t.coefficient),
            _ => None,
        }
    }

    pub fn is_finite(&self) -> bool {
        self.as_nat().is_some()
    }

    pub fn classify(&self) -> OrdinalKind {
        match self.terms.last() {
            None => OrdinalKind::Zero,
            Some(t) if t.exponent.is_zero() => OrdinalKind::Successor,
            Some(_) => OrdinalKind::Limit,
        }
    }

    pub fn is_limit(&self) -> bool {
        self.classify() == OrdinalKind::Limit
    }

    pub fn succ(&self) -> Ordinal {
        self.add(&Ordinal::one())
    }

    /// The immediate predecessor of a successor ordinal.
    pub fn pred(&self) -> Option<Ordinal> {
        if self.classify() != OrdinalKind::Successor {
            return None;
        }
        let mut terms = self.terms.clone();
        let last = terms.last_mut().expect("successor has a last term");
        if last.coefficient == 1 {
            terms.pop();
        } else {
            last.coefficient -= 1;
        }
        Some(Ordinal { terms })
    }

    /// Ordinal addition; left summands absorbed by a larger leading exponent
    /// on the right disappear (`1 + ω = ω`).
    pub fn add(&self, other: &Ordinal) -> Ordinal {
        let Some(lead) = other.terms.first() else {
            return self.clone();
        };
        let mut terms: Vec<CnfTerm> = Vec::with_capacity(self.terms.len() + other.terms.len());
        let mut carry = 0u64;
        for t in &self.terms {
            match t.exponent.cmp(&lead.exponent) {
                Ordering::Greater => terms.push(t.clone()),
                Ordering::Equal => carry = t.coefficient,
                Ordering::Less => break,
            }
        }
        for (i, t) in other.terms.iter().enumerate() {
            let mut t = t.clone();
            if i == 0 {
                t.coefficient = t.coefficient.saturating_add(carry);
            }
            terms.push(t);
        }
        Ordinal { terms }
    }

    /// Cofinality of a limit ordinal. Every limit below ε₀ is countable, so
    /// the answer is always ω.
    pub fn cofinality(&self) -> Option<Ordinal> {
        self.is_limit().then(Ordinal::omega)
    }

    /// The standard fundamental sequence of a limit ordinal.
    pub fn fundamental_sequence(&self) -> Option<FundamentalSequence> {
        self.is_limit().then(|| FundamentalSequence {
            limit: self.clone(),
        })
    }
}

impl Ord for Ordinal {
    fn cmp(&self, other: &Self) -> Ordering {
        for (a, b) in self.terms.iter().zip(&other.terms) {
            let ord = a
                .exponent
                .cmp(&b.exponent)
                .then(a.coefficient.cmp(&b.coefficient));
            if ord != Ordering::Equal {
                return ord;
            }
        }
        self.terms.len().cmp(&other.terms.len())
    }
}

impl PartialOrd for Ordinal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// `n ↦ a[n]`, strictly increasing with supremum `a`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FundamentalSequence {
    limit: Ordinal,
}

impl FundamentalSequence {
    pub fn limit(&self) -> &Ordinal {
        &self.limit
    }

    pub fn term(&self, n: u64) -> Ordinal {
        fundamental_term(&self.limit, n)
    }
}

fn fundamental_term(a: &Ordinal, n: u64) -> Ordinal {
    // a = head + ω^c with c > 0
    let mut head_terms = a.terms.clone();
    let last = head_terms.pop().expect("limit ordinal is nonzero");
    if last.coefficient > 1 {
        head_terms.push(CnfTerm {
            exponent: last.exponent.clone(),
            coefficient: last.coefficient - 1,
        });
    }
    let head = Ordinal { terms: head_terms };
    let c = last.exponent;
    match c.classify() {
        OrdinalKind::Successor => {
            let d = c.pred().expect("successor");
            head.add(&Ordinal::monomial(d, n))
        }
        OrdinalKind::Limit => head.add(&Ordinal::monomial(fundamental_term(&c, n), 1)),
        OrdinalKind::Zero => unreachable!("limit ordinal has a positive last exponent"),
    }
}

impl fmt::Display for Ordinal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, t) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, "+")?;
            }
            if t.exponent.is_zero() {
                write!(f, "{}", t.coefficient)?;
                continue;
            }
            match t.exponent.as_nat() {
                Some(1) => write!(f, "w")?,
                Some(n) => write!(f, "w^{n}")?,
                None if t.exponent == Ordinal::omega() => write!(f, "w^w")?,
                None => write!(f, "w^({})", t.exponent)?,
            }
            if t.coefficient > 1 {
                write!(f, "*{}", t.coefficient)?;
            }
        }
        Ok(())
    }
}

impl std::str::FromStr for Ordinal {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut p = crate::parse::Cursor::new(s);
        let o = p.ordinal()?;
        p.expect_end()?;
        Ok(o)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn o(s: &str) -> Ordinal {
        s.parse().unwrap()
    }

    #[test]
    fn compare_examples() {
        assert_eq!(Ordinal::zero().cmp(&Ordinal::zero()), Ordering::Equal);
        assert_eq!(o("w+1").cmp(&o("w*2")), Ordering::Less);
        assert_eq!(o("w^w").cmp(&o("w^2*3+5")), Ordering::Greater);
    }

    #[test]
    fn add_examples() {
        assert_eq!(Ordinal::one().add(&Ordinal::omega()), Ordinal::omega());
        assert_eq!(Ordinal::omega().add(&Ordinal::one()), o("w+1"));
        assert_eq!(o("w*2+3").add(&o("w+1")), o("w*3+1"));
    }

    #[test]
    fn classify_examples() {
        assert_eq!(o("0").classify(), OrdinalKind::Zero);
        assert_eq!(o("w+2").classify(), OrdinalKind::Successor);
        assert_eq!(o("w^w").classify(), OrdinalKind::Limit);
    }

    #[test]
    fn cofinality_of_limits_is_omega() {
        for s in ["w", "w^w", "w*5"] {
            assert_eq!(o(s).cofinality(), Some(Ordinal::omega()));
        }
        assert_eq!(o("w+1").cofinality(), None);
        assert_eq!(o("0").cofinality(), None);
    }

    #[test]
    fn fundamental_sequence_examples() {
        let w = o("w").fundamental_sequence().unwrap();
        assert_eq!(w.term(3), o("3"));
        let w2 = o("w^2").fundamental_sequence().unwrap();
        assert_eq!(w2.term(4), o("w*4"));
        let ww = o("w^w").fundamental_sequence().unwrap();
        assert_eq!(ww.term(3), o("w^3"));
        assert!(o("w+1").fundamental_sequence().is_none());
    }

    #[test]
    fn display_round_trips() {
        for s in ["0", "7", "w", "w+2", "w*2+3", "w^2*3+5", "w^w", "w^(w+1)*2", "w^(w^w)+w"] {
            assert_eq!(o(s).to_string(), s, "{s}");
        }
    }

    #[test]
    fn pred_and_succ() {
        assert_eq!(o("w+1").pred(), Some(o("w")));
        assert_eq!(o("w*2+3").pred(), Some(o("w*2+2")));
        assert_eq!(o("w").pred(), None);
        assert_eq!(o("w").succ(), o("w+1"));
    }
}
