//! Topologization predicates for free abelian groups F(κ).
//!
//! `Min(κ,σ)` is decided through its closed form
//! `κ ≤ 2^σ ∧ (κ = 2^σ ∨ (cf σ = ω ∧ 2^{<σ} ≤ κ))`, which is equivalent to the
//! existence of a sequence σ_n with sup σ_n = σ and sup 2^{σ_n} ≤ κ ≤ 2^σ:
//! either some σ_n equals σ, forcing κ = 2^σ, or the σ_n are cofinal below σ
//! and every μ < σ lies under some σ_n.

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::cardinal::{AxiomContext, CardIndex, CardinalTerm, CfClass, LeqRule, Reasoner, Value};
use crate::error::{CoreError, Result};
use crate::verdict::{Step, Trace, Truth, Verdict};

use CardinalTerm as T;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TopologyClass {
    Minimal,
    Pseudocompact,
    MinimalPseudocompact,
    ZeroDimMinimalPseudocompact,
    ConnectedMinimal,
    ConnectedMinimalPseudocompact,
    LocallyConnectedMinimal,
}

impl TopologyClass {
    pub const ALL: [TopologyClass; 7] = [
        TopologyClass::Minimal,
        TopologyClass::Pseudocompact,
        TopologyClass::MinimalPseudocompact,
        TopologyClass::ZeroDimMinimalPseudocompact,
        TopologyClass::ConnectedMinimal,
        TopologyClass::ConnectedMinimalPseudocompact,
        TopologyClass::LocallyConnectedMinimal,
    ];

    pub fn name(self) -> &'static str {
        match self {
            TopologyClass::Minimal => "minimal",
            TopologyClass::Pseudocompact => "pseudocompact",
            TopologyClass::MinimalPseudocompact => "minimal-pseudocompact",
            TopologyClass::ZeroDimMinimalPseudocompact => "zero-dim-minimal-pseudocompact",
            TopologyClass::ConnectedMinimal => "connected-minimal",
            TopologyClass::ConnectedMinimalPseudocompact => "connected-minimal-pseudocompact",
            TopologyClass::LocallyConnectedMinimal => "locally-connected-minimal",
        }
    }
}

impl fmt::Display for TopologyClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for TopologyClass {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        TopologyClass::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| format!("unknown topology class '{s}'"))
    }
}

/// "Does F(kappa) admit a group topology of this class (and weight)?"
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TopologyQuery {
    pub kappa: CardinalTerm,
    pub class: TopologyClass,
    pub weight: Option<CardinalTerm>,
}

impl TopologyQuery {
    pub fn new(kappa: CardinalTerm, class: TopologyClass) -> Self {
        TopologyQuery {
            kappa,
            class,
            weight: None,
        }
    }

    pub fn with_weight(mut self, sigma: CardinalTerm) -> Self {
        self.weight = Some(sigma);
        self
    }
}

/// Shape of a witnessing sequence (σ_n) for Min(κ,σ).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WitnessKind {
    /// σ_n = σ for all n
    Constant(CardinalTerm),
    /// σ_n = n, witnessing Min(κ, ℵ₀)
    Naturals,
    /// σ_n = ℵ_{a[n]} along the fundamental sequence of a
    AlephsAlong(CardIndex),
    /// σ_n = ℶ_{a[n]}
    BethsAlong(CardIndex),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessSeq {
    pub kind: WitnessKind,
    pub kappa: CardinalTerm,
    pub sigma: CardinalTerm,
}

fn index_term(a: &CardIndex, n: u64) -> CardIndex {
    let (o, above) = a.countable_limit_part().expect("limit index of countable cofinality");
    let seq = o.fundamental_sequence().expect("limit");
    let t = seq.term(n);
    if above {
        CardIndex::AboveOmegaOne(t)
    } else {
        CardIndex::Countable(t)
    }
}

impl WitnessSeq {
    /// The n-th term σ_n.
    pub fn term(&self, n: u64) -> CardinalTerm {
        match &self.kind {
            WitnessKind::Constant(s) => s.clone(),
            WitnessKind::Naturals => T::fin(n),
            WitnessKind::AlephsAlong(a) => T::Aleph(index_term(a, n)),
            WitnessKind::BethsAlong(a) => T::Beth(index_term(a, n)),
        }
    }

    pub fn prefix(&self, len: u64) -> Vec<CardinalTerm> {
        (0..len).map(|n| self.term(n)).collect()
    }
}

impl fmt::Display for WitnessSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self.prefix(4).iter().map(|t| t.to_string()).collect();
        match &self.kind {
            WitnessKind::Constant(s) => write!(f, "constant({s})")?,
            WitnessKind::Naturals => write!(f, "naturals")?,
            WitnessKind::AlephsAlong(a) => write!(f, "alephs-along({a})")?,
            WitnessKind::BethsAlong(a) => write!(f, "beths-along({a})")?,
        }
        write!(f, " = ({}, ...) for Min({}, {})", terms.join(", "), self.kappa, self.sigma)
    }
}

/// Description of the set of weights σ with Min(κ,σ).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WeightSpectrum {
    /// κ = 2^exponent: the spectrum is {σ : 2^σ = κ} together with the σ of
    /// countable cofinality with 2^{<σ} ≤ κ ≤ 2^σ; membership is decided on
    /// demand.
    Exponential { exponent: CardinalTerm },
    /// {log κ}
    Singleton(CardinalTerm),
    Empty,
    /// Not determined; `members` lists weights known to belong.
    Undetermined { members: Vec<CardinalTerm> },
}

impl fmt::Display for WeightSpectrum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WeightSpectrum::Exponential { exponent } => write!(
                f,
                "{{s : 2^s = 2^{exponent}}} + {{s : cf(s) = w, 2^<s <= k <= 2^s}}"
            ),
            WeightSpectrum::Singleton(s) => write!(f, "{{{s}}}"),
            WeightSpectrum::Empty => write!(f, "{{}}"),
            WeightSpectrum::Undetermined { members } if members.is_empty() => write!(f, "undetermined"),
            WeightSpectrum::Undetermined { members } => {
                let m: Vec<String> = members.iter().map(|t| t.to_string()).collect();
                write!(f, "undetermined, contains {}", m.join(", "))
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Spectrum {
    pub kappa: CardinalTerm,
    pub spectrum: WeightSpectrum,
    pub trace: Trace,
}

/// Shortcut facts about Ps(κ,σ), tried in a configurable order before the
/// general characterization.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum PsRule {
    Continuum,
    Exponential,
    OmegaPower,
    VanDouwen,
    Upper,
    LogMonotone,
    Characterization,
}

const PS_RULES: [PsRule; 7] = [
    PsRule::Continuum,
    PsRule::Exponential,
    PsRule::OmegaPower,
    PsRule::VanDouwen,
    PsRule::Upper,
    PsRule::LogMonotone,
    PsRule::Characterization,
];

pub struct Engine<'c> {
    r: Reasoner<'c>,
    ps_order: Vec<PsRule>,
}

fn chain(mut first: Trace, second: Trace) -> Trace {
    first.extend(second);
    first
}

fn decide(value: Truth, trace: Trace, step: Step) -> Verdict {
    Verdict::new(value, trace).then(value, step)
}

impl<'c> Engine<'c> {
    pub fn new(ctx: &'c AxiomContext) -> Self {
        Engine {
            r: Reasoner::new(ctx),
            ps_order: PS_RULES.to_vec(),
        }
    }

    /// An engine whose rule orders are shuffled by `seed`. All orders are
    /// sound, so verdicts may differ only between decided and `Unknown`.
    pub fn with_seed(ctx: &'c AxiomContext, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut leq = LeqRule::ALL.to_vec();
        leq.shuffle(&mut rng);
        let mut ps = PS_RULES.to_vec();
        ps.shuffle(&mut rng);
        Engine {
            r: Reasoner::with_order(ctx, leq),
            ps_order: ps,
        }
    }

    pub fn reasoner(&self) -> &Reasoner<'c> {
        &self.r
    }

    pub fn context(&self) -> &AxiomContext {
        self.r.context()
    }

    fn infinite(&self, t: &CardinalTerm) -> Result<CardinalTerm> {
        let n = self.r.normalize(t);
        if self.r.is_infinite(&n) != Truth::Provable {
            return Err(CoreError::FiniteCardinal(t.to_string()));
        }
        Ok(n)
    }

    fn continuum(&self) -> CardinalTerm {
        T::continuum()
    }

    // ------------------------------------------------------------------

    /// Min(κ,σ) for infinite κ and σ.
    pub fn min_cond(&self, kappa: &CardinalTerm, sigma: &CardinalTerm) -> Result<Verdict> {
        let k = self.infinite(kappa)?;
        let s = self.infinite(sigma)?;
        let concl = format!("Min({k}, {s})");
        if s == T::aleph(0) {
            let v = self.r.leq(&k, &self.continuum());
            if v.is_provable() {
                return Ok(Verdict::by(
                    Truth::Provable,
                    Step::new("min.below-continuum", vec![format!("aleph(0) <= {k} <= c")], concl),
                ));
            }
        }
        let two_s = T::exp2(s.clone());
        let upper = self.r.leq(&k, &two_s);
        if upper.is_refutable() {
            return Ok(decide(
                Truth::Refutable,
                upper.trace,
                Step::new("min.closed-form", vec![format!("2^{s} < {k}")], format!("not {concl}")),
            ));
        }
        let eq = self.r.equal(&k, &two_s);
        if eq.is_provable() {
            return Ok(decide(
                Truth::Provable,
                eq.trace,
                Step::new("min.exponential", vec![format!("{k} = 2^{s}")], concl),
            ));
        }
        let cf = self.r.cofinality(&s)?;
        let weak = T::weak_pow(s.clone());
        let (second, second_trace) = match cf.value {
            CfClass::CofUncountableRegular => (Truth::Refutable, cf.trace.clone()),
            CfClass::CofOmega => {
                let v = self.r.leq(&weak, &k);
                (v.value, chain(cf.trace.clone(), v.trace))
            }
            CfClass::Unknown => {
                let v = self.r.leq(&weak, &k);
                (v.value.and(Truth::Unknown), v.trace)
            }
        };
        let value = upper.value.and(eq.value.or(second));
        let trace = match value {
            Truth::Refutable if upper.is_refutable() => upper.trace,
            Truth::Refutable => chain(eq.trace, second_trace),
            _ => chain(chain(upper.trace, eq.trace), second_trace),
        };
        let msg = match value {
            Truth::Provable => concl,
            Truth::Refutable => format!("not {concl}"),
            Truth::Unknown => return Ok(Verdict::new(Truth::Unknown, trace)),
        };
        Ok(decide(
            value,
            trace,
            Step::new(
                "min.closed-form",
                vec![format!("cf({s}) {}", match cf.value {
                    CfClass::CofOmega => "= aleph(0)",
                    CfClass::CofUncountableRegular => "> aleph(0)",
                    CfClass::Unknown => "undetermined",
                })],
                msg,
            ),
        ))
    }

    /// Whether κ is a Stoyanov cardinal, i.e. Min(κ,σ) for some σ (all
    /// finite cardinals included).
    pub fn is_stoyanov(&self, kappa: &CardinalTerm) -> Verdict {
        let k = self.r.normalize(kappa);
        if self.r.is_infinite(&k) != Truth::Provable {
            return Verdict::by(
                Truth::Provable,
                Step::new("stoyanov.finite", vec![], format!("{k} is finite, hence Stoyanov")),
            );
        }
        let exp = self.r.is_exponential(&k);
        if exp.is_provable() {
            return decide(
                Truth::Provable,
                exp.trace,
                Step::new("stoyanov.exponential", vec![], format!("{k} is Stoyanov")),
            );
        }
        let Ok(lg) = self.r.log(&k) else {
            return Verdict::unknown();
        };
        let Value::Exact(l) = &lg.value else {
            return Verdict::new(Truth::Unknown, chain(exp.trace, lg.trace));
        };
        let Ok(cf) = self.r.cofinality(l) else {
            return Verdict::unknown();
        };
        match cf.value {
            CfClass::CofOmega => decide(
                Truth::Provable,
                chain(lg.trace, cf.trace),
                Step::new(
                    "stoyanov.log-cofinality",
                    vec![format!("log({k}) = {l}"), format!("cf({l}) = aleph(0)")],
                    format!("Min({k}, {l}), so {k} is Stoyanov"),
                ),
            ),
            CfClass::CofUncountableRegular if exp.is_refutable() => decide(
                Truth::Refutable,
                chain(chain(exp.trace, lg.trace), cf.trace),
                Step::new(
                    "stoyanov.log-cofinality",
                    vec![
                        format!("{k} is not exponential"),
                        format!("log({k}) = {l}"),
                        format!("cf({l}) > aleph(0)"),
                    ],
                    format!("{k} is not Stoyanov"),
                ),
            ),
            _ => Verdict::new(Truth::Unknown, chain(exp.trace, lg.trace)),
        }
    }

    /// Ps(κ,σ): an ω-dense subset of {0,1}^σ of size κ exists.
    pub fn ps_cond(&self, kappa: &CardinalTerm, sigma: &CardinalTerm) -> Result<Verdict> {
        let k = self.infinite(kappa)?;
        let s = self.infinite(sigma)?;
        for rule in &self.ps_order {
            if let Some(v) = self.ps_rule(*rule, &k, &s)? {
                return Ok(v);
            }
        }
        Ok(Verdict::unknown())
    }

    fn ps_rule(&self, rule: PsRule, k: &CardinalTerm, s: &CardinalTerm) -> Result<Option<Verdict>> {
        let yes = format!("Ps({k}, {s})");
        let no = format!("not Ps({k}, {s})");
        let c = self.continuum();
        Ok(match rule {
            PsRule::Continuum => {
                let kc = self.r.equal(k, &c);
                let small = [T::aleph(0), T::aleph(1)]
                    .into_iter()
                    .map(|w| self.r.equal(s, &w))
                    .find(|v| v.is_provable());
                match small {
                    Some(sv) if kc.is_provable() => Some(decide(
                        Truth::Provable,
                        chain(kc.trace, sv.trace),
                        Step::new("ps.continuum", vec![format!("{k} = c")], yes),
                    )),
                    _ => None,
                }
            }
            PsRule::Exponential => {
                let two_s = T::exp2(s.clone());
                let eq = self.r.equal(k, &two_s);
                if eq.is_provable() {
                    return Ok(Some(decide(
                        Truth::Provable,
                        eq.trace,
                        Step::new("ps.exponential", vec![format!("{k} = 2^{s}")], yes),
                    )));
                }
                // Ps(2^m, 2^2^m)
                match self.r.exponent_witness(k) {
                    Some((m, tr)) => {
                        let v = self.r.equal(s, &T::exp2(T::exp2(m.clone())));
                        v.is_provable().then(|| {
                            decide(
                                Truth::Provable,
                                chain(tr, v.trace),
                                Step::new("ps.exponential", vec![format!("{k} = 2^{m}, {s} = 2^{k}")], yes.clone()),
                            )
                        })
                    }
                    None => None,
                }
            }
            PsRule::OmegaPower => {
                let v = self.r.equal(s, &T::exp2(k.clone()));
                let p = self.r.leq(&T::pow_omega(k.clone()), k);
                (v.is_provable() && p.is_provable()).then(|| {
                    decide(
                        Truth::Provable,
                        chain(v.trace, p.trace),
                        Step::new("ps.omega-power", vec![format!("{k}^w = {k}"), format!("{s} = 2^{k}")], yes.clone()),
                    )
                })
            }
            PsRule::VanDouwen => {
                let v = self.r.lt(k, &c);
                v.is_provable().then(|| {
                    decide(
                        Truth::Refutable,
                        v.trace,
                        Step::new("ps.van-douwen", vec![format!("{k} < c")], no.clone()),
                    )
                })
            }
            PsRule::Upper => {
                let v = self.r.leq(k, &T::exp2(s.clone()));
                v.is_refutable().then(|| {
                    decide(
                        Truth::Refutable,
                        v.trace,
                        Step::new("ps.characterization", vec![format!("2^{s} < {k}")], no.clone()),
                    )
                })
            }
            PsRule::LogMonotone => {
                let lg = self.r.log(k)?;
                let base = match &lg.value {
                    Value::Exact(l) => l.clone(),
                    Value::Bounds { lower, .. } => match lower.iter().find(|b| !b.strict) {
                        Some(b) => b.term.clone(),
                        None => return Ok(None),
                    },
                };
                if self.r.is_infinite(&base) != Truth::Provable {
                    return Ok(None);
                }
                let m = self.r.m_bounds(&base)?;
                self.below_m(k, &m.value).map(|(why, tr)| {
                    decide(
                        Truth::Refutable,
                        chain(chain(lg.trace, m.trace), tr),
                        Step::new(
                            "ps.log-monotone",
                            vec![format!("log({k}) >= {base}"), format!("{k} < m({base}): {why}")],
                            no.clone(),
                        ),
                    )
                })
            }
            PsRule::Characterization => {
                let m = self.r.m_bounds(s)?;
                if let Some((why, tr)) = self.below_m(k, &m.value) {
                    return Ok(Some(decide(
                        Truth::Refutable,
                        chain(m.trace, tr),
                        Step::new("ps.characterization", vec![format!("{k} < m({s}): {why}")], no),
                    )));
                }
                let Some(top) = m.value.upper().cloned() else {
                    return Ok(None);
                };
                let lo = self.r.leq(&top, k);
                let hi = self.r.leq(k, &T::exp2(s.clone()));
                (lo.is_provable() && hi.is_provable()).then(|| {
                    decide(
                        Truth::Provable,
                        chain(chain(m.trace, lo.trace), hi.trace),
                        Step::new(
                            "ps.characterization",
                            vec![format!("m({s}) <= {top} <= {k}"), format!("{k} <= 2^{s}")],
                            yes,
                        ),
                    )
                })
            }
        })
    }

    /// A reason why κ lies strictly below every value m could take.
    fn below_m(&self, k: &CardinalTerm, m: &Value) -> Option<(String, Trace)> {
        for b in m.lower() {
            let v = if b.strict {
                self.r.leq(k, &b.term)
            } else {
                self.r.lt(k, &b.term)
            };
            if v.is_provable() {
                let why = if b.strict {
                    format!("{k} <= {} < m", b.term)
                } else {
                    format!("{k} < {} <= m", b.term)
                };
                return Some((why, v.trace));
            }
        }
        None
    }

    // ------------------------------------------------------------------

    /// Does F(κ) admit a group topology of the queried class?
    pub fn admits(&self, q: &TopologyQuery) -> Result<Verdict> {
        let k = self.r.normalize(&q.kappa);
        if k.is_zero() {
            return Err(CoreError::TrivialGroup);
        }
        let weight = match &q.weight {
            Some(w) => Some(self.infinite(w)?),
            None => None,
        };
        let name = match &weight {
            Some(w) => format!("F({k}) admits a {} group topology of weight {w}", q.class),
            None => format!("F({k}) admits a {} group topology", q.class),
        };
        let finite = self.r.is_infinite(&k) != Truth::Provable;
        if q.class == TopologyClass::LocallyConnectedMinimal {
            return Ok(Verdict::by(
                Truth::Refutable,
                Step::new("admits.locally-connected", vec![format!("F({k}) is nontrivial")], format!("not: {name}")),
            ));
        }
        if finite {
            return Ok(self.admits_finite(&k, q.class, weight.is_some(), name));
        }
        match q.class {
            TopologyClass::Minimal => self.admits_minimal(&k, weight.as_ref(), name),
            TopologyClass::Pseudocompact => self.admits_pseudocompact(&k, weight.as_ref(), name),
            TopologyClass::MinimalPseudocompact | TopologyClass::ZeroDimMinimalPseudocompact => {
                self.admits_minimal_pseudocompact(&k, weight.as_ref(), name)
            }
            TopologyClass::ConnectedMinimal | TopologyClass::ConnectedMinimalPseudocompact => {
                self.admits_connected(&k, q.class, weight.as_ref(), name)
            }
            TopologyClass::LocallyConnectedMinimal => unreachable!("handled above"),
        }
    }

    fn admits_finite(&self, k: &CardinalTerm, class: TopologyClass, weighted: bool, name: String) -> Verdict {
        match class {
            TopologyClass::Minimal if !weighted => Verdict::by(
                Truth::Provable,
                Step::new("admits.finite-rank", vec![format!("{k} is finite")], name),
            ),
            TopologyClass::Minimal => Verdict::unknown(),
            TopologyClass::Pseudocompact
            | TopologyClass::MinimalPseudocompact
            | TopologyClass::ZeroDimMinimalPseudocompact
            | TopologyClass::ConnectedMinimalPseudocompact => Verdict::by(
                Truth::Refutable,
                Step::new("ps.van-douwen", vec![format!("F({k}) is countably infinite")], format!("not: {name}")),
            ),
            TopologyClass::ConnectedMinimal | TopologyClass::LocallyConnectedMinimal => Verdict::by(
                Truth::Refutable,
                Step::new("admits.connected-small", vec![format!("F({k}) is countable")], format!("not: {name}")),
            ),
        }
    }

    fn admits_minimal(&self, k: &CardinalTerm, weight: Option<&CardinalTerm>, name: String) -> Result<Verdict> {
        let Some(s) = weight else {
            let v = self.is_stoyanov(k);
            let value = v.value;
            if !value.is_decided() {
                return Ok(v);
            }
            let concl = if value == Truth::Provable { name } else { format!("not: {name}") };
            return Ok(decide(value, v.trace, Step::new("admits.minimal", vec![], concl)));
        };
        let min = self.min_cond(k, s)?;
        if min.is_refutable() {
            return Ok(decide(
                Truth::Refutable,
                min.trace,
                Step::new("admits.minimal-weight", vec![], format!("not: {name}")),
            ));
        }
        // a weight-σ minimal topology is built from Min and Ps together
        if min.is_provable() && self.r.leq(&T::aleph(1), s).is_provable() {
            let ps = self.ps_cond(k, s)?;
            if ps.is_provable() {
                return Ok(decide(
                    Truth::Provable,
                    chain(min.trace, ps.trace),
                    Step::new("admits.embedding", vec![format!("Min({k}, {s})"), format!("Ps({k}, {s})")], name),
                ));
            }
        }
        Ok(Verdict::new(Truth::Unknown, min.trace))
    }

    fn admits_pseudocompact(&self, k: &CardinalTerm, weight: Option<&CardinalTerm>, name: String) -> Result<Verdict> {
        let c = self.continuum();
        let small = self.r.lt(k, &c);
        if small.is_provable() {
            return Ok(decide(
                Truth::Refutable,
                small.trace,
                Step::new("ps.van-douwen", vec![format!("{k} < c")], format!("not: {name}")),
            ));
        }
        if let Some(s) = weight {
            let v = self.ps_cond(k, s)?;
            if !v.value.is_decided() {
                return Ok(v);
            }
            let concl = if v.is_provable() { name } else { format!("not: {name}") };
            return Ok(decide(v.value, v.trace, Step::new("admits.pseudocompact", vec![], concl)));
        }
        let lg = self.r.log(k)?;
        let mut cands: Vec<CardinalTerm> = Vec::new();
        match &lg.value {
            Value::Exact(l) => cands.push(l.clone()),
            Value::Bounds { lower, upper } => {
                cands.extend(lower.iter().map(|b| b.term.clone()));
                cands.extend(upper.iter().cloned());
            }
        }
        cands.extend([k.clone(), T::exp2(k.clone()), T::aleph(0), T::aleph(1)]);
        for s in &cands {
            let s = self.r.normalize(s);
            if self.r.is_infinite(&s) != Truth::Provable {
                continue;
            }
            let v = self.ps_cond(k, &s)?;
            if v.is_provable() {
                return Ok(decide(
                    Truth::Provable,
                    v.trace,
                    Step::new("admits.pseudocompact", vec![format!("Ps({k}, {s})")], name),
                ));
            }
        }
        if let Value::Exact(l) = &lg.value {
            let v = self.ps_cond(k, l)?;
            if v.is_refutable() {
                return Ok(decide(
                    Truth::Refutable,
                    chain(lg.trace, v.trace),
                    Step::new(
                        "admits.least-weight",
                        vec![format!("log({k}) = {l}"), format!("not Ps({k}, {l})")],
                        format!("not: {name}"),
                    ),
                ));
            }
        }
        Ok(Verdict::unknown())
    }

    /// Shared refutations for the minimal pseudocompact classes: κ < 𝔠 and
    /// κ < 2^{ℵ₁}.
    fn small_refutation(&self, k: &CardinalTerm, name: &str) -> Option<Verdict> {
        let c = self.continuum();
        let v = self.r.lt(k, &c);
        if v.is_provable() {
            return Some(decide(
                Truth::Refutable,
                v.trace,
                Step::new("ps.van-douwen", vec![format!("{k} < c")], format!("not: {name}")),
            ));
        }
        let v = self.r.lt(k, &T::exp2(T::aleph(1)));
        if v.is_provable() {
            return Some(decide(
                Truth::Refutable,
                v.trace,
                Step::new("admits.metrizable-small", vec![format!("{k} < 2^aleph(1)")], format!("not: {name}")),
            ));
        }
        None
    }

    /// At κ = 𝔠 every minimal pseudocompact variant is equivalent to
    /// 2^{ℵ₁} = 𝔠.
    fn continuum_case(&self, k: &CardinalTerm, name: &str) -> Option<Verdict> {
        let c = self.continuum();
        let at_c = self.r.equal(k, &c);
        if !at_c.is_provable() {
            return None;
        }
        let lusin = self.r.leq(&T::exp2(T::aleph(1)), &c);
        if !lusin.value.is_decided() {
            return Some(Verdict::new(Truth::Unknown, chain(at_c.trace, lusin.trace)));
        }
        let (premise, concl) = if lusin.is_provable() {
            ("2^aleph(1) = c".to_string(), name.to_string())
        } else {
            ("c < 2^aleph(1)".to_string(), format!("not: {name}"))
        };
        Some(decide(
            lusin.value,
            chain(at_c.trace, lusin.trace),
            Step::new("admits.continuum", vec![format!("{k} = c"), premise], concl),
        ))
    }

    /// Min(κ,σ) ∧ Ps(κ,σ) with σ ≥ ℵ₁ yields a zero-dimensional minimal
    /// pseudocompact topology of weight σ. Without a weight, σ is taken from
    /// κ = 2^σ, where both conditions hold.
    fn embedding(&self, k: &CardinalTerm, weight: Option<&CardinalTerm>, name: &str) -> Result<Option<Verdict>> {
        let (s, pre) = match weight {
            Some(s) => (s.clone(), Trace::new()),
            None => match self.r.exponent_witness(k) {
                Some(found) => found,
                None => return Ok(None),
            },
        };
        if self.r.is_infinite(&s) != Truth::Provable {
            return Ok(None);
        }
        let big = self.r.leq(&T::aleph(1), &s);
        if !big.is_provable() {
            return Ok(None);
        }
        let min = self.min_cond(k, &s)?;
        if !min.is_provable() {
            return Ok(None);
        }
        let ps = self.ps_cond(k, &s)?;
        if !ps.is_provable() {
            return Ok(None);
        }
        Ok(Some(decide(
            Truth::Provable,
            chain(chain(chain(pre, big.trace), min.trace), ps.trace),
            Step::new(
                "admits.embedding",
                vec![format!("Min({k}, {s})"), format!("Ps({k}, {s})"), format!("aleph(1) <= {s}")],
                name.to_string(),
            ),
        )))
    }

    /// κ = 2^σ with σ ≥ ℵ₁ yields a connected minimal pseudocompact
    /// topology of weight σ.
    fn connected_embedding(&self, k: &CardinalTerm, weight: Option<&CardinalTerm>, name: &str) -> Option<Verdict> {
        let (s, pre) = match weight {
            Some(s) => {
                let eq = self.r.equal(k, &T::exp2(s.clone()));
                if !eq.is_provable() {
                    return None;
                }
                (s.clone(), eq.trace)
            }
            None => self.r.exponent_witness(k)?,
        };
        let big = self.r.leq(&T::aleph(1), &s);
        big.is_provable().then(|| {
            decide(
                Truth::Provable,
                chain(pre, big.trace),
                Step::new(
                    "admits.connected-embedding",
                    vec![format!("{k} = 2^{s}"), format!("aleph(1) <= {s}")],
                    name.to_string(),
                ),
            )
        })
    }

    fn admits_minimal_pseudocompact(
        &self,
        k: &CardinalTerm,
        weight: Option<&CardinalTerm>,
        name: String,
    ) -> Result<Verdict> {
        if let Some(v) = self.small_refutation(k, &name) {
            return Ok(v);
        }
        if let Some(v) = self.continuum_case(k, &name) {
            return Ok(v);
        }
        if let Some(v) = self.embedding(k, weight, &name)? {
            return Ok(v);
        }
        let above = self.r.lt(&self.continuum(), k);
        if !above.is_provable() {
            return Ok(Verdict::unknown());
        }
        let (a, b, premises) = match weight {
            Some(s) => (
                self.min_cond(k, s)?,
                self.ps_cond(k, s)?,
                vec![format!("Min({k}, {s})"), format!("Ps({k}, {s})")],
            ),
            None => (
                self.admits(&TopologyQuery::new(k.clone(), TopologyClass::Minimal))?,
                self.admits(&TopologyQuery::new(k.clone(), TopologyClass::Pseudocompact))?,
                vec![
                    format!("F({k}) admits a minimal group topology"),
                    format!("F({k}) admits a pseudocompact group topology"),
                ],
            ),
        };
        let value = a.value.and(b.value);
        let trace = match value {
            Truth::Refutable if a.is_refutable() => a.trace,
            Truth::Refutable => b.trace,
            _ => chain(a.trace, b.trace),
        };
        if !value.is_decided() {
            return Ok(Verdict::new(Truth::Unknown, trace));
        }
        let concl = if value == Truth::Provable { name } else { format!("not: {name}") };
        let mut premises = premises;
        premises.insert(0, format!("c < {k}"));
        Ok(decide(
            value,
            chain(above.trace, trace),
            Step::new("admits.minimal-pseudocompact", premises, concl),
        ))
    }

    fn admits_connected(
        &self,
        k: &CardinalTerm,
        class: TopologyClass,
        weight: Option<&CardinalTerm>,
        name: String,
    ) -> Result<Verdict> {
        let c = self.continuum();
        let small = self.r.lt(k, &c);
        if small.is_provable() {
            return Ok(decide(
                Truth::Refutable,
                small.trace,
                Step::new("admits.connected-small", vec![format!("{k} < c")], format!("not: {name}")),
            ));
        }
        if class == TopologyClass::ConnectedMinimalPseudocompact {
            if let Some(v) = self.small_refutation(k, &name) {
                return Ok(v);
            }
            if weight.is_none() {
                if let Some(v) = self.continuum_case(k, &name) {
                    return Ok(v);
                }
            }
        }
        if let Some(v) = self.connected_embedding(k, weight, &name) {
            return Ok(v);
        }
        let above = self.r.lt(&c, k);
        if !above.is_provable() {
            return Ok(Verdict::unknown());
        }
        let v = match weight {
            Some(s) => self.r.equal(k, &T::exp2(s.clone())),
            None => self.r.is_exponential(k),
        };
        if !v.value.is_decided() {
            return Ok(Verdict::new(Truth::Unknown, v.trace));
        }
        let premise = match weight {
            Some(s) if v.is_provable() => format!("{k} = 2^{s}"),
            Some(s) => format!("{k} != 2^{s}"),
            None if v.is_provable() => format!("{k} is exponential"),
            None => format!("{k} is not exponential"),
        };
        let concl = if v.is_provable() { name } else { format!("not: {name}") };
        Ok(decide(
            v.value,
            chain(above.trace, v.trace),
            Step::new("admits.connected", vec![format!("c < {k}"), premise], concl),
        ))
    }

    // ------------------------------------------------------------------

    /// The set of weights σ with Min(κ,σ), i.e. the possible weights of
    /// minimal group topologies on F(κ).
    pub fn weight_spectrum(&self, kappa: &CardinalTerm) -> Result<Spectrum> {
        let k = self.infinite(kappa)?;
        let done = |spectrum: WeightSpectrum, trace: Trace| {
            Ok(Spectrum {
                kappa: k.clone(),
                spectrum,
                trace,
            })
        };
        if let Some((w, tr)) = self.r.exponent_witness(&k) {
            return done(WeightSpectrum::Exponential { exponent: w }, tr);
        }
        let exp = self.r.is_exponential(&k);
        let lg = self.r.log(&k)?;
        let Value::Exact(l) = lg.value.clone() else {
            return done(WeightSpectrum::Undetermined { members: vec![] }, lg.trace);
        };
        let cf = self.r.cofinality(&l)?;
        let trace = chain(chain(exp.trace.clone(), lg.trace), cf.trace);
        match (exp.value, cf.value) {
            (Truth::Refutable, CfClass::CofOmega) => done(
                WeightSpectrum::Singleton(l.clone()),
                chain(
                    trace,
                    Trace::single(Step::new(
                        "stoyanov.log-cofinality",
                        vec![format!("log({k}) = {l}"), format!("cf({l}) = aleph(0)")],
                        format!("Min({k}, s) iff s = {l}"),
                    )),
                ),
            ),
            (Truth::Refutable, CfClass::CofUncountableRegular) => done(
                WeightSpectrum::Empty,
                chain(
                    trace,
                    Trace::single(Step::new(
                        "stoyanov.log-cofinality",
                        vec![format!("cf({l}) > aleph(0)")],
                        format!("Min({k}, s) fails for every s"),
                    )),
                ),
            ),
            (_, CfClass::CofOmega) => done(WeightSpectrum::Undetermined { members: vec![l] }, trace),
            _ => done(WeightSpectrum::Undetermined { members: vec![] }, trace),
        }
    }

    /// Constructs a sequence witnessing Min(κ,σ); fails unless Min(κ,σ) is
    /// provable.
    pub fn witness_min(&self, kappa: &CardinalTerm, sigma: &CardinalTerm) -> Result<WitnessSeq> {
        let k = self.r.normalize(kappa);
        let s = self.r.normalize(sigma);
        let v = self.min_cond(&k, &s)?;
        let fail = |verdict: Truth| CoreError::NoWitness {
            kappa: k.to_string(),
            sigma: s.to_string(),
            verdict: verdict.to_string(),
        };
        if !v.is_provable() {
            return Err(fail(v.value));
        }
        let mut candidates = Vec::new();
        match &s {
            T::Aleph(i) if i.is_zero() => candidates.push(WitnessKind::Naturals),
            T::Aleph(i) if i.countable_limit_part().is_some() => candidates.push(WitnessKind::AlephsAlong(i.clone())),
            T::Beth(i) if i.countable_limit_part().is_some() => candidates.push(WitnessKind::BethsAlong(i.clone())),
            _ => {}
        }
        candidates.push(WitnessKind::Constant(s.clone()));
        for kind in candidates {
            let w = WitnessSeq {
                kind,
                kappa: k.clone(),
                sigma: s.clone(),
            };
            if self.verify_witness(&w).is_provable() {
                return Ok(w);
            }
        }
        Err(fail(Truth::Unknown))
    }

    /// Checks `sup σ_n = σ` and `sup 2^{σ_n} ≤ κ ≤ 2^σ` with the engine's
    /// own comparisons, plus the first few terms individually.
    pub fn verify_witness(&self, w: &WitnessSeq) -> Verdict {
        let r = &self.r;
        let k = &w.kappa;
        let s = &w.sigma;
        let top = r.leq(k, &T::exp2(s.clone()));
        let (sup_ok, below) = match &w.kind {
            WitnessKind::Constant(c) => (
                r.equal(c, s).value,
                r.leq(&T::exp2(c.clone()), k).value,
            ),
            WitnessKind::Naturals => (
                Truth::from_bool(*s == T::aleph(0)),
                r.is_infinite(k),
            ),
            WitnessKind::AlephsAlong(a) | WitnessKind::BethsAlong(a) => {
                let expected = match &w.kind {
                    WitnessKind::AlephsAlong(_) => T::Aleph(a.clone()),
                    _ => T::Beth(a.clone()),
                };
                let cofinal = Truth::from_bool(r.normalize(&expected) == *s && a.countable_limit_part().is_some());
                // sup 2^{σ_n} = 2^{<σ} for a strictly increasing cofinal sequence
                (cofinal, r.leq(&T::weak_pow(s.clone()), k).value)
            }
        };
        let mut terms_ok = Truth::Provable;
        for n in 0..5 {
            let t = w.term(n);
            terms_ok = terms_ok.and(r.leq(&T::exp2(t.clone()), k).value);
            terms_ok = terms_ok.and(r.leq(&t, s).value);
        }
        let value = top.value.and(sup_ok).and(below).and(terms_ok);
        let concl = match value {
            Truth::Provable => format!("{w} verified"),
            Truth::Refutable => format!("{w} fails"),
            Truth::Unknown => format!("{w} not verified"),
        };
        Verdict::by(value, Step::new("witness.verify", vec![], concl))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::{parse_context_lines, parse_term};

    fn t(s: &str) -> CardinalTerm {
        parse_term(s).unwrap()
    }

    fn big_continuum() -> AxiomContext {
        AxiomContext::from_directives(
            parse_context_lines("2^aleph(0) = aleph(w+2)\n2^aleph(w+1) = aleph(w+2)").unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn min_examples() {
        let zfc = AxiomContext::zfc();
        let e = Engine::new(&zfc);
        assert!(e.min_cond(&t("c"), &t("aleph(0)")).unwrap().is_provable());
        let gch = AxiomContext::gch();
        assert!(Engine::new(&gch).min_cond(&t("aleph(1)"), &t("aleph(2)")).unwrap().is_refutable());
        let ea = big_continuum();
        assert!(Engine::new(&ea).min_cond(&t("aleph(w+2)"), &t("aleph(w)")).unwrap().is_provable());
    }

    #[test]
    fn min_below_continuum_is_a_single_step() {
        let zfc = AxiomContext::zfc();
        let v = Engine::new(&zfc).min_cond(&t("c"), &t("aleph(0)")).unwrap();
        assert_eq!(v.trace.len(), 1);
        assert_eq!(v.trace.steps[0].rule, "min.below-continuum");
    }

    #[test]
    fn stoyanov_examples() {
        let zfc = AxiomContext::zfc();
        let e = Engine::new(&zfc);
        assert!(e.is_stoyanov(&t("beth(w)")).is_provable());
        assert!(e.is_stoyanov(&t("beth(w1)")).is_refutable());
        assert!(e.is_stoyanov(&t("2^aleph(7)")).is_provable());
        assert!(e.is_stoyanov(&t("12")).is_provable());
    }

    #[test]
    fn stoyanov_refutation_trace_mentions_each_stage() {
        let zfc = AxiomContext::zfc();
        let v = Engine::new(&zfc).is_stoyanov(&t("beth(w1)"));
        let rules: Vec<&str> = v.trace.rules().collect();
        assert!(rules.contains(&"exp.strong-limit"));
        assert!(rules.contains(&"log.strong-limit"));
        assert!(rules.contains(&"cf.index"));
        assert_eq!(rules.last(), Some(&"stoyanov.log-cofinality"));
    }

    #[test]
    fn ps_examples() {
        let zfc = AxiomContext::zfc();
        let e = Engine::new(&zfc);
        assert!(e.ps_cond(&t("c"), &t("aleph(0)")).unwrap().is_provable());
        assert!(e.ps_cond(&t("c"), &t("aleph(1)")).unwrap().is_provable());
        assert!(e.ps_cond(&t("2^aleph(3)"), &t("aleph(3)")).unwrap().is_provable());
        assert!(e.ps_cond(&t("beth(w1)"), &t("2^beth(w1)")).unwrap().is_provable());
        for s in ["aleph(0)", "aleph(5)", "beth(w)", "beth(w+1)", "2^beth(w)", "beth(w1)"] {
            assert!(e.ps_cond(&t("beth(w)"), &t(s)).unwrap().is_refutable(), "{s}");
        }
    }

    #[test]
    fn admits_examples() {
        let zfc = AxiomContext::zfc();
        let e = Engine::new(&zfc);
        let q = |k: &str, c| TopologyQuery::new(t(k), c);
        assert!(e.admits(&q("beth(w)", TopologyClass::Minimal)).unwrap().is_provable());
        assert!(e.admits(&q("beth(w)", TopologyClass::Pseudocompact)).unwrap().is_refutable());
        assert!(e.admits(&q("aleph(5)", TopologyClass::LocallyConnectedMinimal)).unwrap().is_refutable());
        assert!(e
            .admits(&q("2^aleph(2)", TopologyClass::ConnectedMinimalPseudocompact).with_weight(t("aleph(2)")))
            .unwrap()
            .is_provable());
        assert!(matches!(e.admits(&q("0", TopologyClass::Minimal)), Err(CoreError::TrivialGroup)));
        let lusin = AxiomContext::from_directives([crate::cardinal::Directive::Lusin]).unwrap();
        assert!(Engine::new(&lusin)
            .admits(&q("c", TopologyClass::MinimalPseudocompact))
            .unwrap()
            .is_provable());
    }

    #[test]
    fn spectrum_examples() {
        let zfc = AxiomContext::zfc();
        let e = Engine::new(&zfc);
        assert_eq!(e.weight_spectrum(&t("beth(w)")).unwrap().spectrum, WeightSpectrum::Singleton(t("beth(w)")));
        assert_eq!(e.weight_spectrum(&t("beth(w1)")).unwrap().spectrum, WeightSpectrum::Empty);
        assert!(matches!(
            e.weight_spectrum(&t("c")).unwrap().spectrum,
            WeightSpectrum::Exponential { .. }
        ));
    }

    #[test]
    fn witness_examples() {
        let zfc = AxiomContext::zfc();
        let e = Engine::new(&zfc);
        let w = e.witness_min(&t("2^aleph(3)"), &t("aleph(3)")).unwrap();
        assert_eq!(w.kind, WitnessKind::Constant(t("aleph(3)")));
        let w = e.witness_min(&t("beth(w)"), &t("beth(w)")).unwrap();
        assert_eq!(w.kind, WitnessKind::BethsAlong(CardIndex::omega()));
        assert_eq!(w.prefix(3), vec![t("beth(0)"), t("beth(1)"), t("beth(2)")]);
        let ea = big_continuum();
        let w = Engine::new(&ea).witness_min(&t("aleph(w+2)"), &t("aleph(w)")).unwrap();
        assert_eq!(w.kind, WitnessKind::AlephsAlong(CardIndex::omega()));
        assert!(matches!(
            e.witness_min(&t("beth(w1)"), &t("beth(w1)")),
            Err(CoreError::NoWitness { .. })
        ));
    }
}
