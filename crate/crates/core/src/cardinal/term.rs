use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};

use crate::ordinal::{Ordinal, OrdinalKind};

/// Subscript of an ℵ or ℶ: either a countable ordinal below ε₀, or `ω₁ + o`
/// for a countable `o`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CardIndex {
    Countable(Ordinal),
    AboveOmegaOne(Ordinal),
}

/// How an index sits in the ordinals, and (for limits) whether its
/// cofinality is ω.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IndexKind {
    Zero,
    Successor,
    Limit { countable_cofinality: bool },
}

impl CardIndex {
    pub fn nat(n: u64) -> Self {
        CardIndex::Countable(Ordinal::nat(n))
    }

    pub fn omega() -> Self {
        CardIndex::Countable(Ordinal::omega())
    }

    pub fn omega_one() -> Self {
        CardIndex::AboveOmegaOne(Ordinal::zero())
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, CardIndex::Countable(o) if o.is_zero())
    }

    pub fn as_nat(&self) -> Option<u64> {
        match self {
            CardIndex::Countable(o) => o.as_nat(),
            CardIndex::AboveOmegaOne(_) => None,
        }
    }

    pub fn kind(&self) -> IndexKind {
        match self {
            CardIndex::Countable(o) => match o.classify() {
                OrdinalKind::Zero => IndexKind::Zero,
                OrdinalKind::Successor => IndexKind::Successor,
                OrdinalKind::Limit => IndexKind::Limit {
                    countable_cofinality: true,
                },
            },
            CardIndex::AboveOmegaOne(o) => match o.classify() {
                OrdinalKind::Zero => IndexKind::Limit {
                    countable_cofinality: false,
                },
                OrdinalKind::Successor => IndexKind::Successor,
                OrdinalKind::Limit => IndexKind::Limit {
                    countable_cofinality: true,
                },
            },
        }
    }

    pub fn succ(&self) -> Self {
        match self {
            CardIndex::Countable(o) => CardIndex::Countable(o.succ()),
            CardIndex::AboveOmegaOne(o) => CardIndex::AboveOmegaOne(o.succ()),
        }
    }

    pub fn pred(&self) -> Option<Self> {
        match self {
            CardIndex::Countable(o) => o.pred().map(CardIndex::Countable),
            CardIndex::AboveOmegaOne(o) => o.pred().map(CardIndex::AboveOmegaOne),
        }
    }

    /// `self + n` for a natural `n`.
    pub fn plus(&self, n: u64) -> Self {
        let n = Ordinal::nat(n);
        match self {
            CardIndex::Countable(o) => CardIndex::Countable(o.add(&n)),
            CardIndex::AboveOmegaOne(o) => CardIndex::AboveOmegaOne(o.add(&n)),
        }
    }

    /// The countable limit ordinal underlying a limit index of countable
    /// cofinality, i.e. the ordinal whose fundamental sequence indexes a
    /// cofinal ω-sequence of the index.
    pub fn countable_limit_part(&self) -> Option<(&Ordinal, bool)> {
        match self {
            CardIndex::Countable(o) if o.is_limit() => Some((o, false)),
            CardIndex::AboveOmegaOne(o) if o.is_limit() => Some((o, true)),
            _ => None,
        }
    }
}

impl fmt::Display for CardIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CardIndex::Countable(o) => write!(f, "{o}"),
            CardIndex::AboveOmegaOne(o) if o.is_zero() => write!(f, "w1"),
            CardIndex::AboveOmegaOne(o) => write!(f, "w1+{o}"),
        }
    }
}

/// Symbolic cardinal expression.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum CardinalTerm {
    Fin(BigUint),
    Aleph(CardIndex),
    Beth(CardIndex),
    /// `2^base`
    Exp2(Box<CardinalTerm>),
    /// `base^ω`
    PowOmega(Box<CardinalTerm>),
    /// Supremum (= maximum) of a nonempty finite list.
    Sup(Vec<CardinalTerm>),
    /// `2^{<base}` = sup{2^μ : μ < base}
    WeakPow(Box<CardinalTerm>),
}

impl CardinalTerm {
    pub fn fin(n: u64) -> Self {
        CardinalTerm::Fin(BigUint::from(n))
    }

    pub fn aleph(n: u64) -> Self {
        CardinalTerm::Aleph(CardIndex::nat(n))
    }

    pub fn beth(n: u64) -> Self {
        CardinalTerm::Beth(CardIndex::nat(n))
    }

    pub fn exp2(t: CardinalTerm) -> Self {
        CardinalTerm::Exp2(Box::new(t))
    }

    pub fn pow_omega(t: CardinalTerm) -> Self {
        CardinalTerm::PowOmega(Box::new(t))
    }

    pub fn weak_pow(t: CardinalTerm) -> Self {
        CardinalTerm::WeakPow(Box::new(t))
    }

    /// 𝔠 = 2^ℵ₀
    pub fn continuum() -> Self {
        CardinalTerm::exp2(CardinalTerm::aleph(0))
    }

    pub fn as_fin(&self) -> Option<&BigUint> {
        match self {
            CardinalTerm::Fin(n) => Some(n),
            _ => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, CardinalTerm::Fin(n) if n.is_zero())
    }

    /// Nesting depth; atoms have depth 1.
    pub fn depth(&self) -> usize {
        match self {
            CardinalTerm::Fin(_) | CardinalTerm::Aleph(_) | CardinalTerm::Beth(_) => 1,
            CardinalTerm::Exp2(t) | CardinalTerm::PowOmega(t) | CardinalTerm::WeakPow(t) => {
                1 + t.depth()
            }
            CardinalTerm::Sup(items) => 1 + items.iter().map(|t| t.depth()).max().unwrap_or(0),
        }
    }

    /// Whether the term syntactically contains an ℵ or ℶ atom (and so
    /// denotes an infinite cardinal).
    pub fn mentions_infinite_atom(&self) -> bool {
        match self {
            CardinalTerm::Fin(_) => false,
            CardinalTerm::Aleph(_) | CardinalTerm::Beth(_) => true,
            CardinalTerm::Exp2(t) | CardinalTerm::PowOmega(t) | CardinalTerm::WeakPow(t) => {
                t.mentions_infinite_atom()
            }
            CardinalTerm::Sup(items) => items.iter().any(|t| t.mentions_infinite_atom()),
        }
    }

    /// Structural order used only to give `Sup` lists a canonical layout.
    pub(crate) fn layout_cmp(&self, other: &Self) -> Ordering {
        self.to_string().cmp(&other.to_string())
    }
}

/// Evaluates `2^n` when it stays below a size guard.
pub(crate) fn pow2_fin(n: &BigUint) -> Option<BigUint> {
    let e = n.to_u32().filter(|e| *e <= 1 << 16)?;
    Some(BigUint::from(1u32) << e)
}

impl fmt::Display for CardinalTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CardinalTerm::Fin(n) => write!(f, "{n}"),
            CardinalTerm::Aleph(i) => write!(f, "aleph({i})"),
            CardinalTerm::Beth(i) => write!(f, "beth({i})"),
            CardinalTerm::Exp2(t) => write!(f, "2^{t}"),
            CardinalTerm::PowOmega(t) => write!(f, "poww({t})"),
            CardinalTerm::WeakPow(t) => write!(f, "weakpow({t})"),
            CardinalTerm::Sup(items) => {
                write!(f, "sup[")?;
                for (i, t) in items.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{t}")?;
                }
                write!(f, "]")
            }
        }
    }
}

impl std::str::FromStr for CardinalTerm {
    type Err = crate::error::ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        crate::parse::parse_term(s)
    }
}
