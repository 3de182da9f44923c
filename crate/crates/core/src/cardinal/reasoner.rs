//! Sound, incomplete reasoning about cardinal terms under an axiom context.
//!
//! Every normalized term gets an *envelope*: the best provable bounds of the
//! form `ℵ_i ≤ t ≤ ℵ_j` and `ℶ_i ≤ t ≤ ℶ_j`. Comparisons combine structural
//! rules (monotonicity of `2^•`, Cantor, suprema) with envelope comparison.
//! Anything not derivable comes back `Unknown`.

use std::cell::{Cell, RefCell};
use std::cmp::Ordering;
use std::collections::{HashMap, HashSet};

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::Serialize;

use super::context::{AxiomContext, BETH_TABLE_LEN};
use super::term::{pow2_fin, CardIndex, CardinalTerm, IndexKind};
use crate::error::{CoreError, Result};
use crate::verdict::{Step, Trace, Truth, Verdict};

use CardinalTerm as T;

const MAX_DEPTH: usize = 96;

/// Rules tried by [`Reasoner::leq`], in a configurable order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LeqRule {
    Reflexive,
    Finite,
    SupLeft,
    SupRight,
    Monotone,
    Cantor,
    Bracket,
    Scales,
}

impl LeqRule {
    pub const ALL: [LeqRule; 8] = [
        LeqRule::Reflexive,
        LeqRule::Finite,
        LeqRule::SupLeft,
        LeqRule::SupRight,
        LeqRule::Monotone,
        LeqRule::Cantor,
        LeqRule::Bracket,
        LeqRule::Scales,
    ];
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum CfClass {
    /// cf = ω
    CofOmega,
    /// cf > ω (cofinalities are always regular)
    CofUncountableRegular,
    Unknown,
}

impl std::fmt::Display for CfClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            CfClass::CofOmega => "cf = w",
            CfClass::CofUncountableRegular => "cf > w",
            CfClass::Unknown => "unknown",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bound {
    pub term: CardinalTerm,
    pub strict: bool,
}

impl Bound {
    pub fn at_least(term: CardinalTerm) -> Self {
        Bound {
            term,
            strict: false,
        }
    }

    pub fn above(term: CardinalTerm) -> Self {
        Bound { term, strict: true }
    }
}

impl std::fmt::Display for Bound {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.strict {
            write!(f, "> {}", self.term)
        } else {
            write!(f, ">= {}", self.term)
        }
    }
}

/// Either an exact value or a bracket of provable bounds.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Value {
    Exact(CardinalTerm),
    Bounds {
        lower: Vec<Bound>,
        upper: Option<CardinalTerm>,
    },
}

impl Value {
    pub fn exact(&self) -> Option<&CardinalTerm> {
        match self {
            Value::Exact(t) => Some(t),
            Value::Bounds { .. } => None,
        }
    }

    /// Best available upper bound (the value itself when exact).
    pub fn upper(&self) -> Option<&CardinalTerm> {
        match self {
            Value::Exact(t) => Some(t),
            Value::Bounds { upper, .. } => upper.as_ref(),
        }
    }

    pub fn lower(&self) -> Vec<Bound> {
        match self {
            Value::Exact(t) => vec![Bound::at_least(t.clone())],
            Value::Bounds { lower, .. } => lower.clone(),
        }
    }
}

impl std::fmt::Display for Value {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Value::Exact(t) => write!(f, "{t}"),
            Value::Bounds { lower, upper } => {
                let lows: Vec<String> = lower.iter().map(|b| b.to_string()).collect();
                write!(f, "[{}", lows.join(", "))?;
                match upper {
                    Some(u) => write!(f, "; <= {u}]"),
                    None => write!(f, "; no upper bound]"),
                }
            }
        }
    }
}

/// A computed value together with its derivation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Derived<V> {
    pub value: V,
    pub trace: Trace,
}

impl<V> Derived<V> {
    pub fn new(value: V, trace: Trace) -> Self {
        Derived { value, trace }
    }
}

/// Provable bounds of a term on the aleph and beth scales. A strict flag on
/// a lower bound means `bound < t`, on an upper bound `t < bound`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
struct Envelope {
    finite: Option<BigUint>,
    lo_aleph: Option<CardIndex>,
    hi_aleph: Option<(CardIndex, bool)>,
    lo_beth: Option<(CardIndex, bool)>,
    hi_beth: Option<(CardIndex, bool)>,
}

fn better_lo(a: Option<(CardIndex, bool)>, b: Option<(CardIndex, bool)>) -> Option<(CardIndex, bool)> {
    match (a, b) {
        (None, x) | (x, None) => x,
        (Some(x), Some(y)) => Some(std::cmp::max(x, y)),
    }
}

fn better_hi(a: Option<(CardIndex, bool)>, b: Option<(CardIndex, bool)>) -> Option<(CardIndex, bool)> {
    match (a, b) {
        (None, x) | (x, None) => x,
        (Some(x), Some(y)) => {
            // smaller index wins; on a tie the strict bound is tighter
            Some(match x.0.cmp(&y.0) {
                Ordering::Less => x,
                Ordering::Greater => y,
                Ordering::Equal => (x.0, x.1 || y.1),
            })
        }
    }
}

fn max_index(a: Option<CardIndex>, b: Option<CardIndex>) -> Option<CardIndex> {
    match (a, b) {
        (None, x) | (x, None) => x,
        (Some(x), Some(y)) => Some(x.max(y)),
    }
}

impl Envelope {
    fn finite(n: BigUint) -> Self {
        Envelope {
            finite: Some(n),
            ..Envelope::default()
        }
    }

    fn is_infinite(&self) -> bool {
        self.lo_aleph.is_some()
    }

    fn take_lower(&mut self, other: &Envelope) {
        self.lo_aleph = max_index(self.lo_aleph.take(), other.lo_aleph.clone());
        self.lo_beth = better_lo(self.lo_beth.take(), other.lo_beth.clone());
    }

    fn take_upper(&mut self, other: &Envelope) {
        self.hi_aleph = better_hi(self.hi_aleph.take(), other.hi_aleph.clone());
        self.hi_beth = better_hi(self.hi_beth.take(), other.hi_beth.clone());
    }

    /// Weakens strict lower bounds to non-strict ones.
    fn loosen_lower(mut self) -> Self {
        if let Some((b, _)) = self.lo_beth.take() {
            self.lo_beth = Some((b, false));
        }
        self
    }
}

pub struct Reasoner<'c> {
    ctx: &'c AxiomContext,
    order: Vec<LeqRule>,
    norm_cache: RefCell<HashMap<CardinalTerm, (CardinalTerm, Vec<Step>)>>,
    leq_cache: RefCell<HashMap<(CardinalTerm, CardinalTerm), Verdict>>,
    env_cache: RefCell<HashMap<CardinalTerm, Envelope>>,
    env_busy: RefCell<HashSet<CardinalTerm>>,
    depth: Cell<usize>,
}

impl<'c> Reasoner<'c> {
    pub fn new(ctx: &'c AxiomContext) -> Self {
        Reasoner::with_order(ctx, LeqRule::ALL.to_vec())
    }

    /// A reasoner that tries comparison rules in the given order. Every rule
    /// is sound, so the order only affects which derivation is reported.
    pub fn with_order(ctx: &'c AxiomContext, order: Vec<LeqRule>) -> Self {
        Reasoner {
            ctx,
            order,
            norm_cache: RefCell::default(),
            leq_cache: RefCell::default(),
            env_cache: RefCell::default(),
            env_busy: RefCell::default(),
            depth: Cell::new(0),
        }
    }

    pub fn context(&self) -> &AxiomContext {
        self.ctx
    }

    fn enter(&self) -> bool {
        let d = self.depth.get();
        if d >= MAX_DEPTH {
            return false;
        }
        self.depth.set(d + 1);
        true
    }

    fn leave(&self) {
        self.depth.set(self.depth.get() - 1);
    }

    // ------------------------------------------------------------------
    // normalization

    pub fn normalize(&self, t: &CardinalTerm) -> CardinalTerm {
        self.normalize_traced(t).0
    }

    /// Normal form of `t` plus the rewrite steps that produced it.
    /// Idempotent: the normal form normalizes to itself with no steps.
    pub fn normalize_traced(&self, t: &CardinalTerm) -> (CardinalTerm, Vec<Step>) {
        if let Some(hit) = self.norm_cache.borrow().get(t) {
            return hit.clone();
        }
        if !self.enter() {
            return (t.clone(), Vec::new());
        }
        let mut steps = Vec::new();
        let mut cur = t.clone();
        for _ in 0..8 {
            let next = self.norm_once(&cur, &mut steps);
            if next == cur {
                break;
            }
            cur = next;
        }
        self.leave();
        let out = (cur.clone(), steps);
        self.norm_cache.borrow_mut().insert(t.clone(), out.clone());
        if !self.norm_cache.borrow().contains_key(&cur) {
            self.norm_cache.borrow_mut().insert(cur, (out.0.clone(), Vec::new()));
        }
        out
    }

    fn norm_once(&self, t: &CardinalTerm, steps: &mut Vec<Step>) -> CardinalTerm {
        let mut rewrite = |rule: &'static str, from: &CardinalTerm, to: CardinalTerm| {
            steps.push(Step::new(rule, vec![], format!("{from} = {to}")));
            to
        };
        let out = match t {
            T::Fin(_) | T::Aleph(_) => t.clone(),
            T::Beth(i) => {
                if i.is_zero() {
                    return rewrite("norm.beth-zero", t, T::aleph(0));
                }
                if self.ctx.is_gch() {
                    return rewrite("norm.gch", t, T::Aleph(i.clone()));
                }
                if let Some(p) = i.pred() {
                    let inner = self.normalize(&T::Beth(p));
                    if let Some(v) = self.context_value(&inner) {
                        return rewrite("norm.context-equality", t, v);
                    }
                }
                t.clone()
            }
            T::Exp2(x) => {
                let x = self.normalize(x);
                if let Some(v) = self.context_value(&x) {
                    return rewrite("norm.context-equality", t, v);
                }
                match &x {
                    T::Fin(n) => match pow2_fin(n) {
                        Some(v) => return rewrite("norm.finite-power", t, T::Fin(v)),
                        None => T::exp2(x),
                    },
                    T::Sup(items) => {
                        let v = T::Sup(items.iter().cloned().map(T::exp2).collect());
                        return rewrite("norm.sup-distributes", t, v);
                    }
                    T::Beth(i) => return rewrite("norm.beth-successor", t, T::Beth(i.succ())),
                    T::Aleph(i) if i.is_zero() => {
                        return rewrite("norm.beth-successor", t, T::beth(1))
                    }
                    T::Aleph(i) if self.ctx.is_gch() => {
                        return rewrite("norm.gch", t, T::Aleph(i.succ()))
                    }
                    _ => T::exp2(x),
                }
            }
            T::PowOmega(x) => {
                let x = self.normalize(x);
                match self.norm_pow_omega(&x) {
                    Some((rule, v)) => return rewrite(rule, t, v),
                    None => T::pow_omega(x),
                }
            }
            T::WeakPow(x) => {
                let x = self.normalize(x);
                match self.norm_weak_pow(&x) {
                    Some((rule, v)) => return rewrite(rule, t, v),
                    None => T::weak_pow(x),
                }
            }
            T::Sup(items) => {
                let v = self.norm_sup(items);
                if &v != t {
                    return rewrite("norm.sup", t, v);
                }
                v
            }
        };
        if let Some(p) = self.pin(&out) {
            if p != out {
                return rewrite("norm.pinned", &out, p);
            }
        }
        out
    }

    /// The value the context assigns to `2^x`, if `x` is literally one of
    /// its equality arguments.
    fn context_value(&self, x: &CardinalTerm) -> Option<CardinalTerm> {
        self.ctx
            .equalities()
            .iter()
            .find(|e| &self.normalize(&e.arg) == x)
            .map(|e| e.value.clone())
    }

    fn norm_pow_omega(&self, x: &CardinalTerm) -> Option<(&'static str, CardinalTerm)> {
        const R: &str = "norm.power-omega";
        match x {
            T::Fin(n) if *n <= BigUint::one() => return Some((R, x.clone())),
            T::Fin(_) => return Some((R, T::beth(1))),
            T::Sup(items) => {
                return Some((
                    "norm.sup-distributes",
                    T::Sup(items.iter().cloned().map(T::pow_omega).collect()),
                ))
            }
            _ => {}
        }
        if self.ctx.is_gch() {
            if let T::Aleph(i) = x {
                let v = match i.kind() {
                    IndexKind::Zero => T::aleph(1),
                    IndexKind::Successor
                    | IndexKind::Limit {
                        countable_cofinality: false,
                    } => x.clone(),
                    IndexKind::Limit {
                        countable_cofinality: true,
                    } => T::Aleph(i.succ()),
                };
                return Some(("norm.gch", v));
            }
        }
        match x {
            T::Exp2(_) => return Some((R, x.clone())),
            T::Beth(i) => {
                return Some(match i.kind() {
                    IndexKind::Limit {
                        countable_cofinality: true,
                    } => (R, T::Beth(i.succ())),
                    _ => (R, x.clone()),
                })
            }
            _ => {}
        }
        if self.is_infinite(x) == Truth::Provable && self.leq(x, &T::continuum()).is_provable() {
            return Some((R, T::beth(1)));
        }
        if let T::Aleph(i) = x {
            if i.as_nat().is_some() {
                return Some((R, T::Sup(vec![x.clone(), T::beth(1)])));
            }
        }
        if self.exponent_witness_inner(x).is_some() {
            return Some((R, x.clone()));
        }
        None
    }

    fn norm_weak_pow(&self, x: &CardinalTerm) -> Option<(&'static str, CardinalTerm)> {
        const R: &str = "norm.weak-power";
        match x {
            T::Fin(n) if n.is_zero() => Some((R, T::fin(0))),
            T::Fin(n) => {
                let e: BigUint = n - 1u32;
                pow2_fin(&e).map(|v| (R, T::Fin(v)))
            }
            T::Sup(items) => Some((
                "norm.sup-distributes",
                T::Sup(items.iter().cloned().map(T::weak_pow).collect()),
            )),
            T::Aleph(i) | T::Beth(i) if i.is_zero() => Some((R, T::aleph(0))),
            T::Aleph(i) => match i.kind() {
                IndexKind::Successor => Some((R, T::exp2(T::Aleph(i.pred().expect("successor"))))),
                IndexKind::Limit { .. } if self.ctx.is_gch() => Some(("norm.gch", x.clone())),
                _ => None,
            },
            T::Beth(i) if matches!(i.kind(), IndexKind::Limit { .. }) => Some((R, x.clone())),
            _ => None,
        }
    }

    fn norm_sup(&self, items: &[CardinalTerm]) -> CardinalTerm {
        let mut flat = Vec::new();
        for it in items {
            match self.normalize(it) {
                T::Sup(inner) => flat.extend(inner),
                other => flat.push(other),
            }
        }
        flat.sort_by(|a, b| a.layout_cmp(b));
        flat.dedup();
        let mut keep = vec![true; flat.len()];
        for i in 0..flat.len() {
            for j in 0..flat.len() {
                if i == j || !keep[j] || !keep[i] {
                    continue;
                }
                if self.leq(&flat[i], &flat[j]).is_provable() {
                    keep[i] = false;
                }
            }
        }
        let mut out: Vec<CardinalTerm> = flat
            .into_iter()
            .zip(keep)
            .filter_map(|(t, k)| k.then_some(t))
            .collect();
        if out.len() == 1 {
            out.pop().expect("one element")
        } else {
            T::Sup(out)
        }
    }

    /// Replaces a term by an atom when its envelope pins it down.
    fn pin(&self, t: &CardinalTerm) -> Option<CardinalTerm> {
        let env = self.envelope(t);
        if let Some(n) = env.finite {
            return Some(T::Fin(n));
        }
        if let (Some(lo), Some((hi, false))) = (&env.lo_aleph, &env.hi_aleph) {
            if lo == hi {
                return Some(T::Aleph(lo.clone()));
            }
        }
        if let (Some((lo, false)), Some((hi, false))) = (&env.lo_beth, &env.hi_beth) {
            if lo == hi && !matches!(t, T::Aleph(_)) {
                return Some(T::Beth(lo.clone()));
            }
        }
        None
    }

    // ------------------------------------------------------------------
    // envelopes

    fn envelope(&self, t: &CardinalTerm) -> Envelope {
        if let Some(e) = self.env_cache.borrow().get(t) {
            return e.clone();
        }
        if self.env_busy.borrow().contains(t) || !self.enter() {
            return Envelope::default();
        }
        self.env_busy.borrow_mut().insert(t.clone());
        let raw = self.raw_envelope(t);
        let env = self.close(raw);
        self.env_busy.borrow_mut().remove(t);
        self.leave();
        self.env_cache.borrow_mut().insert(t.clone(), env.clone());
        env
    }

    fn raw_envelope(&self, t: &CardinalTerm) -> Envelope {
        match t {
            T::Fin(n) => Envelope::finite(n.clone()),
            T::Aleph(i) => Envelope {
                lo_aleph: Some(i.clone()),
                hi_aleph: Some((i.clone(), false)),
                ..Envelope::default()
            },
            T::Beth(i) => {
                let mut e = Envelope {
                    lo_beth: Some((i.clone(), false)),
                    hi_beth: Some((i.clone(), false)),
                    ..Envelope::default()
                };
                e.lo_aleph = Some(i.clone());
                e
            }
            T::Exp2(x) => {
                let x = self.normalize(x);
                let ex = self.envelope(&x);
                let mut e = Envelope::default();
                if ex.is_infinite() {
                    e.lo_beth = Some((CardIndex::nat(1), false));
                }
                if let Some((b, _)) = &ex.lo_beth {
                    e.lo_beth = better_lo(e.lo_beth.take(), Some((b.succ(), false)));
                }
                if let Some(i) = &ex.lo_aleph {
                    e.lo_aleph = Some(i.succ());
                }
                if let Some((b, _)) = &ex.hi_beth {
                    e.hi_beth = Some((b.succ(), false));
                }
                for eq in self.ctx.equalities() {
                    let arg = self.normalize(&eq.arg);
                    let val = self.normalize(&eq.value);
                    let venv = self.envelope(&val);
                    if self.leq(&arg, &x).is_provable() {
                        e.take_lower(&venv);
                    }
                    if self.leq(&x, &arg).is_provable() {
                        e.take_upper(&venv);
                    }
                }
                e
            }
            T::PowOmega(x) => {
                let x = self.normalize(x);
                let mut e = self.envelope(&x).loosen_lower();
                e.hi_aleph = None;
                e.hi_beth = None;
                e.finite = None;
                if e.is_infinite() {
                    e.lo_beth = better_lo(e.lo_beth.take(), Some((CardIndex::nat(1), false)));
                }
                let up = self.envelope(&self.normalize(&T::exp2(x)));
                e.take_upper(&up);
                e
            }
            T::WeakPow(x) => {
                let x = self.normalize(x);
                let ex = self.envelope(&x);
                let mut e = ex.clone().loosen_lower();
                e.hi_aleph = None;
                e.hi_beth = None;
                e.finite = None;
                if !ex.is_infinite() {
                    return Envelope::default();
                }
                if ex.lo_aleph.as_ref().is_some_and(|i| !i.is_zero()) {
                    e.lo_beth = better_lo(e.lo_beth.take(), Some((CardIndex::nat(1), false)));
                }
                for eq in self.ctx.equalities() {
                    let arg = self.normalize(&eq.arg);
                    let val = self.normalize(&eq.value);
                    let venv = self.envelope(&val);
                    if self.leq(&x, &arg).is_provable() {
                        e.take_upper(&venv);
                    }
                    if self.leq(&arg, &x).is_refutable() {
                        e.take_lower(&venv);
                    }
                }
                let up = self.envelope(&self.normalize(&T::exp2(x)));
                e.take_upper(&up);
                e
            }
            T::Sup(items) => {
                let envs: Vec<Envelope> = items.iter().map(|i| self.envelope(&self.normalize(i))).collect();
                let mut e = Envelope::default();
                if envs.iter().all(|x| x.finite.is_some()) {
                    return Envelope::finite(envs.into_iter().filter_map(|x| x.finite).max().unwrap_or_default());
                }
                for x in &envs {
                    e.take_lower(x);
                }
                if envs.iter().all(|x| x.hi_aleph.is_some()) {
                    e.hi_aleph = envs.iter().filter_map(|x| x.hi_aleph.clone()).max();
                }
                if envs.iter().all(|x| x.hi_beth.is_some()) {
                    e.hi_beth = envs.iter().filter_map(|x| x.hi_beth.clone()).max();
                }
                e
            }
        }
    }

    /// Propagates bounds between the two scales.
    fn close(&self, mut e: Envelope) -> Envelope {
        if e.finite.is_some() {
            return e;
        }
        let gch = self.ctx.is_gch();
        if let Some((b, strict)) = e.lo_beth.clone() {
            let base = self.beth_aleph_lower(&b);
            let i = if strict { base.succ() } else { base };
            e.lo_aleph = max_index(e.lo_aleph.take(), Some(i));
        }
        if let Some(i) = e.lo_aleph.clone() {
            let lb = if gch {
                (i.clone(), false)
            } else {
                // ℶ_b ≤ ℵ_i whenever the tabulated upper bound of ℶ_b is ≤ i
                let mut best = (CardIndex::nat(0), !i.is_zero());
                for b in 0..BETH_TABLE_LEN {
                    if let Some(u) = self.ctx.beth_level(b).and_then(|l| l.upper.clone()) {
                        if u <= i {
                            best = std::cmp::max(best, (CardIndex::nat(b), u < i));
                        }
                    }
                }
                best
            };
            e.lo_beth = better_lo(e.lo_beth.take(), Some(lb));
        }
        if let Some((b, strict)) = e.hi_beth.clone() {
            let up = if gch {
                Some(b)
            } else {
                b.as_nat()
                    .and_then(|n| self.ctx.beth_level(n))
                    .and_then(|l| l.upper.clone())
            };
            if let Some(u) = up {
                e.hi_aleph = better_hi(e.hi_aleph.take(), Some((u, strict)));
            }
        }
        if let Some((i, strict)) = e.hi_aleph.clone() {
            let mut hb = Some((i.clone(), strict));
            if !gch {
                for b in 0..BETH_TABLE_LEN {
                    let lower = &self.ctx.beth_level(b).expect("tabulated").lower;
                    if *lower >= i {
                        hb = better_hi(hb, Some((CardIndex::nat(b), strict || *lower > i)));
                        break;
                    }
                }
            }
            e.hi_beth = better_hi(e.hi_beth.take(), hb);
        }
        e
    }

    /// Largest `k` with `ℵ_k ≤ ℶ_b` known from the context.
    fn beth_aleph_lower(&self, b: &CardIndex) -> CardIndex {
        if self.ctx.is_gch() {
            return b.clone();
        }
        if let Some(level) = b.as_nat().and_then(|n| self.ctx.beth_level(n)) {
            return level.lower.clone();
        }
        // infinite b: ℶ_b exceeds every tabulated finite level
        let mut best = b.clone();
        for n in 0..BETH_TABLE_LEN {
            let lower = &self.ctx.beth_level(n).expect("tabulated").lower;
            best = best.max(lower.succ());
        }
        best
    }

    /// Provable `a ≤ b` from envelopes alone; `Some(true)` when strict.
    fn scale_le(&self, a: &Envelope, b: &Envelope) -> Option<bool> {
        let mut best: Option<bool> = None;
        let mut note = |strict: bool| best = Some(best.unwrap_or(false) || strict);
        if let (Some((i, s)), Some(j)) = (&a.hi_aleph, &b.lo_aleph) {
            if i <= j {
                note(*s || i < j);
            }
        }
        if let (Some((i, s)), Some((j, t))) = (&a.hi_beth, &b.lo_beth) {
            if i <= j {
                note(*s || *t || i < j);
            }
        }
        best
    }

    // ------------------------------------------------------------------
    // comparison

    /// Three-valued `a ≤ b`: `Provable` when ZFC + context derives `a ≤ b`,
    /// `Refutable` when it derives `b < a`.
    pub fn leq(&self, a: &CardinalTerm, b: &CardinalTerm) -> Verdict {
        let (na, sa) = self.normalize_traced(a);
        let (nb, sb) = self.normalize_traced(b);
        let key = (na.clone(), nb.clone());
        if let Some(v) = self.leq_cache.borrow().get(&key) {
            return v.clone();
        }
        if !self.enter() {
            return Verdict::unknown();
        }
        let mut result = Verdict::unknown();
        for rule in self.order.clone() {
            if let Some(v) = self.apply_leq(rule, &na, &nb) {
                result = v;
                break;
            }
        }
        self.leave();
        if result.value.is_decided() {
            let mut trace = Trace::new();
            for s in sa.into_iter().chain(sb) {
                trace.push(s);
            }
            trace.extend(result.trace);
            result.trace = trace;
        }
        self.leq_cache.borrow_mut().insert(key, result.clone());
        result
    }

    /// `a = b` is provable when both inequalities are; refutable when either
    /// inequality is.
    pub fn equal(&self, a: &CardinalTerm, b: &CardinalTerm) -> Verdict {
        let x = self.leq(a, b);
        let y = self.leq(b, a);
        let value = x.value.and(y.value);
        let mut trace = Trace::new();
        match value {
            Truth::Refutable => {
                trace.extend(if x.is_refutable() { x.trace } else { y.trace });
            }
            _ => {
                trace.extend(x.trace);
                trace.extend(y.trace);
            }
        }
        Verdict::new(value, trace)
    }

    /// Three-valued `a < b`.
    pub fn lt(&self, a: &CardinalTerm, b: &CardinalTerm) -> Verdict {
        let v = self.leq(b, a);
        Verdict::new(!v.value, v.trace)
    }

    fn apply_leq(&self, rule: LeqRule, a: &CardinalTerm, b: &CardinalTerm) -> Option<Verdict> {
        let le = format!("{a} <= {b}");
        let gt = format!("{b} < {a}");
        match rule {
            LeqRule::Reflexive => (a == b).then(|| {
                Verdict::by(Truth::Provable, Step::new("leq.reflexive", vec![], le.clone()))
            }),
            LeqRule::Finite => {
                let ea = self.envelope(a);
                let eb = self.envelope(b);
                match (&ea.finite, &eb.finite) {
                    (Some(x), Some(y)) => {
                        let t = Truth::from_bool(x <= y);
                        let c = if x <= y { le } else { gt };
                        Some(Verdict::by(t, Step::new("leq.finite", vec![], c)))
                    }
                    (Some(_), None) if eb.is_infinite() => Some(Verdict::by(
                        Truth::Provable,
                        Step::new("leq.finite", vec![format!("{b} is infinite")], le),
                    )),
                    (None, Some(_)) if ea.is_infinite() => Some(Verdict::by(
                        Truth::Refutable,
                        Step::new("leq.finite", vec![format!("{a} is infinite")], gt),
                    )),
                    _ => None,
                }
            }
            LeqRule::SupLeft => {
                let T::Sup(items) = a else { return None };
                let vs: Vec<Verdict> = items.iter().map(|i| self.leq(i, b)).collect();
                if let Some(r) = vs.iter().find(|v| v.is_refutable()) {
                    return Some(r.clone().then(Truth::Refutable, Step::new("leq.sup", vec![], gt)));
                }
                if vs.iter().all(|v| v.is_provable()) {
                    let mut tr = Trace::new();
                    for v in vs {
                        tr.extend(v.trace);
                    }
                    return Some(Verdict::new(Truth::Provable, tr).then(
                        Truth::Provable,
                        Step::new("leq.sup", vec!["every item is <= the bound".into()], le),
                    ));
                }
                None
            }
            LeqRule::SupRight => {
                let T::Sup(items) = b else { return None };
                let vs: Vec<Verdict> = items.iter().map(|i| self.leq(a, i)).collect();
                if let Some(p) = vs.iter().find(|v| v.is_provable()) {
                    return Some(p.clone().then(Truth::Provable, Step::new("leq.sup", vec![], le)));
                }
                if vs.iter().all(|v| v.is_refutable()) {
                    let mut tr = Trace::new();
                    for v in vs {
                        tr.extend(v.trace);
                    }
                    return Some(Verdict::new(Truth::Refutable, tr).then(
                        Truth::Refutable,
                        Step::new("leq.sup", vec!["every item is below".into()], gt),
                    ));
                }
                None
            }
            LeqRule::Monotone => {
                let (x, y) = match (a, b) {
                    (T::Exp2(x), T::Exp2(y))
                    | (T::PowOmega(x), T::PowOmega(y))
                    | (T::WeakPow(x), T::WeakPow(y)) => (x, y),
                    _ => return None,
                };
                let v = self.leq(x, y);
                v.is_provable().then(|| v.then(Truth::Provable, Step::new("leq.monotone", vec![], le)))
            }
            LeqRule::Cantor => {
                if let T::Exp2(y) = b {
                    let v = self.leq(a, y);
                    if v.is_provable() {
                        return Some(v.then(
                            Truth::Provable,
                            Step::new("leq.cantor", vec![format!("{y} < {b}")], format!("{a} < {b}")),
                        ));
                    }
                }
                if let T::Exp2(x) = a {
                    let v = self.leq(b, x);
                    if v.is_provable() {
                        return Some(v.then(
                            Truth::Refutable,
                            Step::new("leq.cantor", vec![format!("{x} < {a}")], gt),
                        ));
                    }
                }
                None
            }
            LeqRule::Bracket => {
                if let T::PowOmega(y) | T::WeakPow(y) = b {
                    let v = self.leq(a, y);
                    if v.is_provable() {
                        return Some(v.then(
                            Truth::Provable,
                            Step::new("leq.bracket", vec![format!("{y} <= {b}")], le),
                        ));
                    }
                    let top = self.normalize(&T::exp2((**y).clone()));
                    let v = self.leq(a, &top);
                    if v.is_refutable() {
                        return Some(v.then(
                            Truth::Refutable,
                            Step::new("leq.bracket", vec![format!("{b} <= {top}")], gt),
                        ));
                    }
                }
                if let T::PowOmega(x) | T::WeakPow(x) = a {
                    let top = self.normalize(&T::exp2((**x).clone()));
                    let v = self.leq(&top, b);
                    if v.is_provable() {
                        return Some(v.then(
                            Truth::Provable,
                            Step::new("leq.bracket", vec![format!("{a} <= {top}")], le),
                        ));
                    }
                    let v = self.leq(x, b);
                    if v.is_refutable() {
                        return Some(v.then(
                            Truth::Refutable,
                            Step::new("leq.bracket", vec![format!("{x} <= {a}")], gt),
                        ));
                    }
                }
                None
            }
            LeqRule::Scales => {
                let ea = self.envelope(a);
                let eb = self.envelope(b);
                if self.scale_le(&ea, &eb).is_some() {
                    return Some(Verdict::by(Truth::Provable, Step::new("leq.scales", vec![], le)));
                }
                if self.scale_le(&eb, &ea) == Some(true) {
                    return Some(Verdict::by(Truth::Refutable, Step::new("leq.scales", vec![], gt)));
                }
                None
            }
        }
    }

    /// Whether `t` is provably infinite (`Refutable` when provably finite).
    pub fn is_infinite(&self, t: &CardinalTerm) -> Truth {
        let n = self.normalize(t);
        let e = self.envelope(&n);
        if e.finite.is_some() || matches!(n, T::Fin(_)) {
            Truth::Refutable
        } else if e.is_infinite() || n.mentions_infinite_atom() {
            Truth::Provable
        } else {
            Truth::Refutable
        }
    }

    fn require_infinite(&self, t: &CardinalTerm) -> Result<CardinalTerm> {
        let n = self.normalize(t);
        if self.is_infinite(&n) != Truth::Provable {
            return Err(CoreError::FiniteCardinal(t.to_string()));
        }
        Ok(n)
    }

    // ------------------------------------------------------------------
    // derived notions

    /// Classifies cf(t) as ω or uncountable.
    pub fn cofinality(&self, t: &CardinalTerm) -> Result<Derived<CfClass>> {
        let n = self.require_infinite(t)?;
        let (class, step) = self.cf_class(&n);
        let trace = step.map(Trace::single).unwrap_or_default();
        Ok(Derived::new(class, trace))
    }

    fn cf_class(&self, n: &CardinalTerm) -> (CfClass, Option<Step>) {
        let say = |c: CfClass, rule: &'static str| {
            let what = match c {
                CfClass::CofOmega => format!("cf({n}) = aleph(0)"),
                CfClass::CofUncountableRegular => format!("cf({n}) > aleph(0)"),
                CfClass::Unknown => format!("cf({n}) undetermined"),
            };
            (c, Some(Step::new(rule, vec![], what)))
        };
        match n {
            // beth(a+1) = 2^beth(a), so König applies
            T::Beth(i) if i.kind() == IndexKind::Successor => say(CfClass::CofUncountableRegular, "cf.koenig"),
            T::Aleph(i) | T::Beth(i) => match i.kind() {
                IndexKind::Zero => say(CfClass::CofOmega, "cf.index"),
                IndexKind::Successor => say(CfClass::CofUncountableRegular, "cf.index"),
                IndexKind::Limit {
                    countable_cofinality: true,
                } => say(CfClass::CofOmega, "cf.index"),
                IndexKind::Limit {
                    countable_cofinality: false,
                } => say(CfClass::CofUncountableRegular, "cf.index"),
            },
            T::Exp2(_) | T::PowOmega(_) => say(CfClass::CofUncountableRegular, "cf.koenig"),
            T::Sup(items) => {
                let classes: Vec<CfClass> = items.iter().map(|i| self.cf_class(i).0).collect();
                match classes.first() {
                    Some(c) if *c != CfClass::Unknown && classes.iter().all(|x| x == c) => say(*c, "cf.sup"),
                    _ => (CfClass::Unknown, None),
                }
            }
            _ => (CfClass::Unknown, None),
        }
    }

    /// log κ = min{σ : κ ≤ 2^σ}.
    pub fn log(&self, t: &CardinalTerm) -> Result<Derived<Value>> {
        let n = self.require_infinite(t)?;
        let exact = |v: CardinalTerm, rule: &'static str, premises: Vec<String>, mut tr: Trace| {
            tr.push(Step::new(rule, premises, format!("log({n}) = {v}")));
            Ok(Derived::new(Value::Exact(v), tr))
        };
        let c = T::continuum();
        let below_c = self.leq(&n, &c);
        if below_c.is_provable() {
            return exact(T::aleph(0), "log.below-continuum", vec![format!("{n} <= c")], below_c.trace);
        }
        if self.ctx.is_gch() {
            if let T::Aleph(i) = &n {
                let v = match i.kind() {
                    IndexKind::Successor => T::Aleph(i.pred().expect("successor")),
                    _ => n.clone(),
                };
                return exact(v, "log.gch", vec![], Trace::new());
            }
        }
        let sl = self.strong_limit_inner(&n);
        if sl.is_provable() {
            return exact(n.clone(), "log.strong-limit", vec![format!("{n} is a strong limit")], sl.trace);
        }
        if let T::Beth(i) = &n {
            if let Some(p) = i.pred() {
                if matches!(p.kind(), IndexKind::Limit { .. }) {
                    return exact(T::Beth(p), "log.beth", vec![], Trace::new());
                }
            }
        }
        self.log_search(&n)
    }

    fn log_search(&self, n: &CardinalTerm) -> Result<Derived<Value>> {
        let mut cands = self.log_candidates(n);
        if let T::Exp2(x) = n {
            cands.push((**x).clone());
        }
        let mut trace = Trace::new();
        // least candidate σ with n ≤ 2^σ
        let mut upper: Option<CardinalTerm> = None;
        for s in &cands {
            let v = self.leq(n, &T::exp2(s.clone()));
            if v.is_provable() && upper.as_ref().is_none_or(|u| self.leq(s, u).is_provable()) {
                upper = Some(self.normalize(s));
            }
        }
        // greatest candidate μ with 2^μ < n
        let mut lower = Bound::at_least(T::aleph(0));
        for m in &cands {
            let v = self.lt(&T::exp2(m.clone()), n);
            if v.is_provable() && self.leq(&lower.term, m).is_provable() {
                lower = Bound::above(self.normalize(m));
            }
        }
        trace.push(Step::new(
            "log.search",
            vec![],
            format!(
                "log({n}) {lower}{}",
                upper.as_ref().map(|u| format!(", <= {u}")).unwrap_or_default()
            ),
        ));
        if let Some(u) = &upper {
            let meets = match (&lower.term, u) {
                (l, u) if !lower.strict && l == u => true,
                (T::Aleph(k), T::Aleph(j)) if lower.strict => &k.succ() == j,
                _ => false,
            };
            if meets {
                trace.push(Step::new("log.search", vec![], format!("log({n}) = {u}")));
                return Ok(Derived::new(Value::Exact(u.clone()), trace));
            }
        }
        Ok(Derived::new(
            Value::Bounds {
                lower: vec![lower],
                upper,
            },
            trace,
        ))
    }

    fn log_candidates(&self, n: &CardinalTerm) -> Vec<CardinalTerm> {
        let mut idx: Vec<CardIndex> = (0..4).map(CardIndex::nat).collect();
        fn collect(t: &CardinalTerm, out: &mut Vec<CardIndex>) {
            match t {
                T::Aleph(i) | T::Beth(i) => {
                    out.push(i.clone());
                    if let Some(p) = i.pred() {
                        out.push(p);
                    }
                }
                T::Exp2(x) | T::PowOmega(x) | T::WeakPow(x) => collect(x, out),
                T::Sup(items) => items.iter().for_each(|x| collect(x, out)),
                T::Fin(_) => {}
            }
        }
        collect(n, &mut idx);
        idx.sort();
        idx.dedup();
        let mut out = Vec::new();
        for i in idx {
            out.push(T::Aleph(i.clone()));
            out.push(T::Beth(i));
        }
        out
    }

    pub fn is_strong_limit(&self, t: &CardinalTerm) -> Result<Verdict> {
        let n = self.require_infinite(t)?;
        Ok(self.strong_limit_inner(&n))
    }

    fn strong_limit_inner(&self, n: &CardinalTerm) -> Verdict {
        let yes = |rule: &'static str| Verdict::by(Truth::Provable, Step::new(rule, vec![], format!("{n} is a strong limit")));
        let no = |rule: &'static str, why: String| {
            Verdict::by(Truth::Refutable, Step::new(rule, vec![why], format!("{n} is not a strong limit")))
        };
        match n {
            T::Aleph(i) if i.is_zero() => return yes("strong-limit.aleph-zero"),
            T::Beth(i) if matches!(i.kind(), IndexKind::Limit { .. }) => return yes("strong-limit.beth-limit"),
            T::Aleph(i) if self.ctx.is_gch() && matches!(i.kind(), IndexKind::Limit { .. }) => {
                return yes("strong-limit.gch")
            }
            T::Aleph(i) | T::Beth(i) if i.kind() == IndexKind::Successor => {
                let p = i.pred().expect("successor");
                let below = if matches!(n, T::Aleph(_)) { T::Aleph(p) } else { T::Beth(p) };
                return no("strong-limit.successor", format!("{n} <= 2^{below}"));
            }
            T::Exp2(x) => return no("strong-limit.exponential", format!("{x} < {n} = 2^{x}")),
            _ => {}
        }
        let c = T::continuum();
        let above_omega = self.lt(&T::aleph(0), n);
        let under_c = self.leq(n, &c);
        if above_omega.is_provable() && under_c.is_provable() {
            let mut v = no("strong-limit.below-continuum", format!("aleph(0) < {n} <= c"));
            let mut tr = under_c.trace;
            tr.extend(v.trace);
            v.trace = tr;
            return v;
        }
        if let Some((w, tr)) = self.exponent_witness_inner(n) {
            let v = no("strong-limit.exponential", format!("{n} = 2^{w}"));
            let mut t = tr;
            t.extend(v.trace);
            return Verdict::new(Truth::Refutable, t);
        }
        Verdict::unknown()
    }

    /// A σ with `2^σ = t`, when one is derivable.
    pub fn exponent_witness(&self, t: &CardinalTerm) -> Option<(CardinalTerm, Trace)> {
        self.exponent_witness_inner(&self.normalize(t))
    }

    fn exponent_witness_inner(&self, n: &CardinalTerm) -> Option<(CardinalTerm, Trace)> {
        let found = |w: CardinalTerm, rule: &'static str, mut tr: Trace| {
            tr.push(Step::new(rule, vec![], format!("{n} = 2^{w}")));
            Some((w, tr))
        };
        match n {
            T::Exp2(x) => return found((**x).clone(), "exp.witness", Trace::new()),
            T::Beth(i) => {
                if let Some(p) = i.pred() {
                    return found(self.normalize(&T::Beth(p)), "exp.witness", Trace::new());
                }
            }
            T::Aleph(i) if self.ctx.is_gch() => {
                if let Some(p) = i.pred() {
                    return found(T::Aleph(p), "exp.witness", Trace::new());
                }
            }
            _ => {}
        }
        for eq in self.ctx.equalities() {
            let v = self.normalize(&eq.value);
            if &v == n {
                let tr = Trace::single(Step::new("norm.context-equality", vec![], eq.source.clone()));
                return found(eq.arg.clone(), "exp.witness", tr);
            }
        }
        // ℶ levels the context pins onto this aleph
        if let T::Aleph(i) = n {
            for b in 1..BETH_TABLE_LEN {
                let level = self.ctx.beth_level(b).expect("tabulated");
                if &level.lower == i && level.upper.as_ref() == Some(i) {
                    return found(self.normalize(&T::beth(b - 1)), "exp.witness", Trace::new());
                }
            }
        }
        None
    }

    pub fn is_exponential(&self, t: &CardinalTerm) -> Verdict {
        let n = self.normalize(t);
        if let T::Fin(k) = &n {
            let pow = !k.is_zero() && (k & (k - 1u32)).is_zero();
            return Verdict::by(
                Truth::from_bool(pow),
                Step::new("exp.finite", vec![], format!("{n} is {}a power of 2", if pow { "" } else { "not " })),
            );
        }
        if let Some((w, mut tr)) = self.exponent_witness_inner(&n) {
            tr.push(Step::new("exp.witness", vec![], format!("{n} is exponential (= 2^{w})")));
            return Verdict::new(Truth::Provable, tr);
        }
        if n == T::aleph(0) {
            return Verdict::by(
                Truth::Refutable,
                Step::new("exp.aleph-zero", vec![], "aleph(0) is not of the form 2^s".to_string()),
            );
        }
        if self.is_infinite(&n) == Truth::Provable {
            let sl = self.strong_limit_inner(&n);
            if sl.is_provable() {
                return sl.then(
                    Truth::Refutable,
                    Step::new("exp.strong-limit", vec![format!("{n} is a strong limit")], format!("{n} is not exponential")),
                );
            }
        }
        Verdict::unknown()
    }

    /// 2^{<t}.
    pub fn weak_power(&self, t: &CardinalTerm) -> Result<Derived<Value>> {
        let n = self.require_infinite(t)?;
        let (w, steps) = self.normalize_traced(&T::weak_pow(n.clone()));
        let mut trace = Trace::new();
        for s in steps {
            trace.push(s);
        }
        if !matches!(w, T::WeakPow(_)) {
            trace.push(Step::new("weak-power.value", vec![], format!("2^<{n} = {w}")));
            return Ok(Derived::new(Value::Exact(w), trace));
        }
        let upper = self.normalize(&T::exp2(n.clone()));
        trace.push(Step::new("weak-power.value", vec![], format!("{n} <= 2^<{n} <= {upper}")));
        Ok(Derived::new(
            Value::Bounds {
                lower: vec![Bound::at_least(n)],
                upper: Some(upper),
            },
            trace,
        ))
    }

    /// Bounds on m(σ), the least size of an ω-dense subset of {0,1}^σ.
    pub fn m_bounds(&self, sigma: &CardinalTerm) -> Result<Derived<Value>> {
        let n = self.require_infinite(sigma)?;
        let lg = self.log(&n)?;
        let mut trace = lg.trace.clone();
        let mut lower = vec![Bound::at_least(self.normalize(&T::continuum()))];
        lower.extend(lg.value.lower());
        let upper_log = lg.value.upper().cloned();
        if let Some(l) = lg.value.exact() {
            if self.cf_class(l).0 == CfClass::CofOmega {
                lower.push(Bound::above(l.clone()));
            }
        }
        lower.dedup();
        let upper = upper_log.map(|u| self.normalize(&T::pow_omega(u)));
        let lows: Vec<String> = lower.iter().map(|b| b.to_string()).collect();
        trace.push(Step::new(
            "m.bounds",
            vec![],
            format!(
                "m({n}) {}{}",
                lows.join(", "),
                upper.as_ref().map(|u| format!(", <= {u}")).unwrap_or_default()
            ),
        ));
        if let Some(u) = &upper {
            for b in &lower {
                let meets = if b.strict {
                    matches!((&b.term, u), (T::Aleph(k), T::Aleph(j)) if &k.succ() == j)
                } else {
                    self.leq(u, &b.term).is_provable()
                };
                if meets {
                    trace.push(Step::new("m.exact", vec![], format!("m({n}) = {u}")));
                    return Ok(Derived::new(Value::Exact(u.clone()), trace));
                }
            }
        }
        Ok(Derived::new(Value::Bounds { lower, upper }, trace))
    }
}
