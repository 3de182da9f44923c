use std::fmt;

use serde::Serialize;

use crate::rules;

/// Outcome of a decision: derivable in ZFC plus the context, refutable
/// there, or not decided by the rule catalog.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Truth {
    Provable,
    Refutable,
    Unknown,
}

impl std::ops::Not for Truth {
    type Output = Truth;

    fn not(self) -> Truth {
        match self {
            Truth::Provable => Truth::Refutable,
            Truth::Refutable => Truth::Provable,
            Truth::Unknown => Truth::Unknown,
        }
    }
}

impl Truth {
    pub fn from_bool(b: bool) -> Self {
        if b {
            Truth::Provable
        } else {
            Truth::Refutable
        }
    }

    /// Kleene conjunction.
    pub fn and(self, other: Truth) -> Truth {
        match (self, other) {
            (Truth::Refutable, _) | (_, Truth::Refutable) => Truth::Refutable,
            (Truth::Provable, Truth::Provable) => Truth::Provable,
            _ => Truth::Unknown,
        }
    }

    /// Kleene disjunction.
    pub fn or(self, other: Truth) -> Truth {
        !(!self).and(!other)
    }

    pub fn is_decided(self) -> bool {
        self != Truth::Unknown
    }

    pub fn label(self) -> &'static str {
        match self {
            Truth::Provable => "PROVABLE",
            Truth::Refutable => "REFUTABLE",
            Truth::Unknown => "UNKNOWN",
        }
    }
}

impl fmt::Display for Truth {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Truth::Provable => "provable",
            Truth::Refutable => "refutable",
            Truth::Unknown => "unknown",
        })
    }
}

/// One rule application.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Step {
    pub rule: &'static str,
    pub citation: &'static str,
    pub premises: Vec<String>,
    pub conclusion: String,
}

impl Step {
    /// Panics if `rule` is not in the catalog; steps can only cite
    /// catalogued rules.
    pub fn new(rule: &'static str, premises: Vec<String>, conclusion: impl Into<String>) -> Self {
        let entry = rules::lookup(rule).unwrap_or_else(|| panic!("rule '{rule}' is not catalogued"));
        Step {
            rule: entry.name,
            citation: entry.citation,
            premises,
            conclusion: conclusion.into(),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct Trace {
    pub steps: Vec<Step>,
}

impl Trace {
    pub fn new() -> Self {
        Trace::default()
    }

    pub fn single(step: Step) -> Self {
        Trace { steps: vec![step] }
    }

    pub fn push(&mut self, step: Step) {
        self.steps.push(step);
    }

    pub fn extend(&mut self, other: Trace) {
        for s in other.steps {
            if !self.steps.contains(&s) {
                self.steps.push(s);
            }
        }
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn rules(&self) -> impl Iterator<Item = &'static str> + '_ {
        self.steps.iter().map(|s| s.rule)
    }
}

impl fmt::Display for Trace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.steps.is_empty() {
            return writeln!(f, " (no steps)");
        }
        for (i, s) in self.steps.iter().enumerate() {
            write!(f, " {}. [{}] {}", i + 1, s.rule, s.conclusion)?;
            if !s.premises.is_empty() {
                write!(f, "  from {}", s.premises.join("; "))?;
            }
            writeln!(f)?;
            writeln!(f, "    ({})", s.citation)?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub value: Truth,
    pub trace: Trace,
}

impl Verdict {
    pub fn new(value: Truth, trace: Trace) -> Self {
        Verdict { value, trace }
    }

    pub fn unknown() -> Self {
        Verdict::new(Truth::Unknown, Trace::new())
    }

    pub fn by(value: Truth, step: Step) -> Self {
        Verdict::new(value, Trace::single(step))
    }

    pub fn is_provable(&self) -> bool {
        self.value == Truth::Provable
    }

    pub fn is_refutable(&self) -> bool {
        self.value == Truth::Refutable
    }

    pub fn is_unknown(&self) -> bool {
        self.value == Truth::Unknown
    }

    /// Appends a concluding step after the supporting derivation.
    pub fn then(mut self, value: Truth, step: Step) -> Self {
        self.value = value;
        self.trace.push(step);
        self
    }
}

/// Human-readable rendering of a verdict's derivation.
pub fn explain(v: &Verdict) -> String {
    format!("{}\n{}", v.value.label(), v.trace)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kleene_tables() {
        use Truth::*;
        assert_eq!(Provable.and(Unknown), Unknown);
        assert_eq!(Refutable.and(Unknown), Refutable);
        assert_eq!(Provable.or(Unknown), Provable);
        assert_eq!(Refutable.or(Unknown), Unknown);
        assert_eq!(!Unknown, Unknown);
    }

    #[test]
    fn empty_trace_renders_sentinel() {
        let s = explain(&Verdict::unknown());
        assert!(s.starts_with("UNKNOWN"));
        assert!(s.contains("no steps"));
    }
}
