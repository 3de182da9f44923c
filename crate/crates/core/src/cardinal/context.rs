use std::fmt;

use super::reasoner::Reasoner;
use super::term::{CardIndex, CardinalTerm, IndexKind};
use crate::error::{CoreError, Result};

/// Finite beth levels whose position on the aleph scale is tabulated.
pub(crate) const BETH_TABLE_LEN: u64 = 8;

/// One line of a context file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Directive {
    Gch,
    Ch,
    NotCh,
    Lusin,
    /// `2^arg = value`
    Continuum {
        arg: CardinalTerm,
        value: CardinalTerm,
    },
}

impl fmt::Display for Directive {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Directive::Gch => f.write_str("GCH"),
            Directive::Ch => f.write_str("CH"),
            Directive::NotCh => f.write_str("notCH"),
            Directive::Lusin => f.write_str("lusin"),
            Directive::Continuum { arg, value } => write!(f, "2^{arg} = {value}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContinuumEquality {
    pub arg: CardinalTerm,
    pub value: CardinalTerm,
    /// Directive the equality came from (`CH`, `lusin`, or the literal line).
    pub source: String,
}

/// Aleph-scale bounds `ℵ_lower ≤ ℶ_b ≤ ℵ_upper`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct BethLevel {
    pub lower: CardIndex,
    pub upper: Option<CardIndex>,
}

/// ZFC plus a validated set of assumptions about the continuum function.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomContext {
    gch: bool,
    ch: bool,
    not_ch: bool,
    lusin: bool,
    explicit: Vec<ContinuumEquality>,
    equalities: Vec<ContinuumEquality>,
    beth_table: Vec<BethLevel>,
}

impl Default for AxiomContext {
    fn default() -> Self {
        AxiomContext::zfc()
    }
}

impl AxiomContext {
    pub fn zfc() -> Self {
        let mut ctx = AxiomContext {
            gch: false,
            ch: false,
            not_ch: false,
            lusin: false,
            explicit: Vec::new(),
            equalities: Vec::new(),
            beth_table: Vec::new(),
        };
        ctx.rebuild();
        ctx
    }

    pub fn gch() -> Self {
        AxiomContext::from_directives([Directive::Gch]).expect("GCH alone is consistent")
    }

    /// Builds and validates a context. Contradictions the validator can
    /// detect (flag clashes, Cantor, König, monotonicity of the continuum
    /// function) are rejected.
    pub fn from_directives<I: IntoIterator<Item = Directive>>(directives: I) -> Result<Self> {
        let mut ctx = AxiomContext::zfc();
        let mut pending = Vec::new();
        for d in directives {
            match d {
                Directive::Gch => {
                    ctx.gch = true;
                    ctx.ch = true;
                }
                Directive::Ch => ctx.ch = true,
                Directive::NotCh => ctx.not_ch = true,
                Directive::Lusin => ctx.lusin = true,
                Directive::Continuum { arg, value } => pending.push((arg, value)),
            }
        }
        ctx.check_flags()?;
        ctx.rebuild();
        for (arg, value) in pending {
            let source = format!("2^{arg} = {value}");
            ctx.check_equality(&arg, &value, &source)?;
            if ctx.explicit.iter().any(|e| e.arg == arg && e.value == value) {
                continue;
            }
            ctx.explicit.push(ContinuumEquality { arg, value, source });
        }
        ctx.rebuild();
        ctx.check_pairs()?;
        Ok(ctx)
    }

    /// Adds directives on top of this context, validating the result.
    pub fn extended<I: IntoIterator<Item = Directive>>(&self, more: I) -> Result<Self> {
        AxiomContext::from_directives(self.directives().into_iter().chain(more))
    }

    pub fn directives(&self) -> Vec<Directive> {
        let mut out = Vec::new();
        if self.gch {
            out.push(Directive::Gch);
        } else if self.ch {
            out.push(Directive::Ch);
        }
        if self.not_ch {
            out.push(Directive::NotCh);
        }
        if self.lusin {
            out.push(Directive::Lusin);
        }
        for e in &self.explicit {
            out.push(Directive::Continuum {
                arg: e.arg.clone(),
                value: e.value.clone(),
            });
        }
        out
    }

    pub fn is_gch(&self) -> bool {
        self.gch
    }

    pub fn has_ch(&self) -> bool {
        self.ch
    }

    pub fn has_not_ch(&self) -> bool {
        self.not_ch
    }

    pub fn has_lusin(&self) -> bool {
        self.lusin
    }

    /// Every continuum-function equality in force, including those implied
    /// by `CH` and `lusin`.
    pub fn equalities(&self) -> &[ContinuumEquality] {
        &self.equalities
    }

    pub(crate) fn beth_level(&self, b: u64) -> Option<&BethLevel> {
        self.beth_table.get(b as usize)
    }

    fn check_flags(&self) -> Result<()> {
        if self.ch && self.not_ch {
            return Err(CoreError::InconsistentContext(
                "CH and notCH both asserted".into(),
            ));
        }
        if self.ch && self.lusin {
            return Err(CoreError::InconsistentContext(
                "CH with lusin gives 2^aleph(1) = c = aleph(1), contradicting Cantor".into(),
            ));
        }
        Ok(())
    }

    fn check_equality(&self, arg: &CardinalTerm, value: &CardinalTerm, source: &str) -> Result<()> {
        let bad = |why: &str| Err(CoreError::InconsistentContext(format!("{source}: {why}")));
        if !matches!(arg, CardinalTerm::Aleph(_) | CardinalTerm::Beth(_)) {
            return bad("argument must be an aleph or beth atom");
        }
        if !value.mentions_infinite_atom() {
            return bad("2^k is infinite for infinite k");
        }
        let r = Reasoner::new(self);
        let power = CardinalTerm::exp2(arg.clone());
        if r.leq(value, arg).is_provable() {
            return bad("violates Cantor's theorem 2^k > k");
        }
        if r.leq(value, &power).is_refutable() || r.leq(&power, value).is_refutable() {
            return bad("contradicts what is already derivable in the context");
        }
        // König: cf(2^k) > k
        let value = r.normalize(value);
        let index = match &value {
            CardinalTerm::Aleph(i) | CardinalTerm::Beth(i) => Some(i),
            _ => None,
        };
        if let Some(i) = index {
            match i.kind() {
                IndexKind::Limit {
                    countable_cofinality: true,
                } => return bad("value has countable cofinality, violating Koenig's theorem"),
                IndexKind::Limit {
                    countable_cofinality: false,
                } if r.leq(&CardinalTerm::aleph(1), arg).is_provable() => {
                    return bad("value has cofinality aleph(1) <= argument, violating Koenig's theorem")
                }
                _ => {}
            }
        }
        Ok(())
    }

    fn check_pairs(&self) -> Result<()> {
        let base = AxiomContext {
            explicit: Vec::new(),
            ..self.clone()
        };
        let mut base = base;
        base.rebuild();
        let r = Reasoner::new(&base);
        for (i, a) in self.equalities.iter().enumerate() {
            for b in &self.equalities[i + 1..] {
                for (x, y) in [(a, b), (b, a)] {
                    if r.leq(&x.arg, &y.arg).is_provable() && r.leq(&x.value, &y.value).is_refutable() {
                        return Err(CoreError::InconsistentContext(format!(
                            "'{}' and '{}' violate monotonicity of the continuum function",
                            x.source, y.source
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    fn rebuild(&mut self) {
        let mut eqs = Vec::new();
        if self.ch {
            eqs.push(ContinuumEquality {
                arg: CardinalTerm::aleph(0),
                value: CardinalTerm::aleph(1),
                source: "CH".into(),
            });
        }
        if self.lusin {
            eqs.push(ContinuumEquality {
                arg: CardinalTerm::aleph(1),
                value: CardinalTerm::beth(1),
                source: "lusin".into(),
            });
        }
        eqs.extend(self.explicit.iter().cloned());
        self.equalities = eqs;
        self.beth_table = self.build_beth_table();
    }

    fn build_beth_table(&self) -> Vec<BethLevel> {
        let mut table = vec![BethLevel {
            lower: CardIndex::nat(0),
            upper: Some(CardIndex::nat(0)),
        }];
        for b in 1..BETH_TABLE_LEN {
            if self.gch {
                table.push(BethLevel {
                    lower: CardIndex::nat(b),
                    upper: Some(CardIndex::nat(b)),
                });
                continue;
            }
            let prev = table[(b - 1) as usize].clone();
            let mut lower = std::cmp::max(CardIndex::nat(b), prev.lower.succ());
            let mut upper: Option<CardIndex> = None;
            if b == 1 && self.not_ch {
                lower = lower.max(CardIndex::nat(2));
            }
            for e in &self.equalities {
                let CardinalTerm::Aleph(m) = &e.value else {
                    continue;
                };
                match &e.arg {
                    CardinalTerm::Aleph(k) => {
                        if prev.upper.as_ref().is_some_and(|u| u <= k) {
                            upper = Some(upper.map_or(m.clone(), |u| u.min(m.clone())));
                        }
                        if *k <= prev.lower {
                            lower = lower.max(m.clone());
                        }
                    }
                    CardinalTerm::Beth(j) if j.as_nat() == Some(b - 1) => {
                        lower = lower.max(m.clone());
                        upper = Some(upper.map_or(m.clone(), |u| u.min(m.clone())));
                    }
                    _ => {}
                }
            }
            table.push(BethLevel { lower, upper });
        }
        table
    }
}

impl fmt::Display for AxiomContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ds = self.directives();
        if ds.is_empty() {
            return f.write_str("ZFC");
        }
        write!(f, "ZFC")?;
        for d in ds {
            write!(f, " + {d}")?;
        }
        Ok(())
    }
}
