use serde::Serialize;

use crate::run::Outcome;

/// Version reported in machine output.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Human,
    Machine,
}

#[derive(Serialize)]
struct MachineStep<'a> {
    rule: &'a str,
    citation: &'a str,
    conclusion: &'a str,
}

#[derive(Serialize)]
struct Machine<'a> {
    verdict: Option<String>,
    value: Option<&'a str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    reason: Option<&'a str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    note: Option<&'a str>,
    trace: Vec<MachineStep<'a>>,
    version: &'a str,
}

/// Renders an outcome. Warnings are not part of either rendering; the
/// caller reports them separately.
pub fn format(out: &Outcome, mode: Mode) -> String {
    match mode {
        Mode::Machine => {
            let m = Machine {
                verdict: out.verdict.map(|v| v.to_string()),
                value: out.value.as_deref(),
                reason: out.reason.as_deref(),
                note: out.note,
                trace: out
                    .trace
                    .steps
                    .iter()
                    .map(|s| MachineStep {
                        rule: s.rule,
                        citation: s.citation,
                        conclusion: &s.conclusion,
                    })
                    .collect(),
                version: VERSION,
            };
            let mut text = serde_json::to_string(&m).expect("plain data serializes");
            text.push('\n');
            text
        }
        Mode::Human => {
            let mut text = String::new();
            text.push_str(out.verdict.map_or("VALUE", |v| v.label()));
            text.push('\n');
            if let Some(v) = &out.value {
                if v.contains('\n') {
                    text.push_str("value:\n");
                    for line in v.lines() {
                        text.push_str("  ");
                        text.push_str(line);
                        text.push('\n');
                    }
                } else {
                    text.push_str(&format!("value: {v}\n"));
                }
            }
            if let Some(r) = &out.reason {
                text.push_str(&format!("reason: {r}\n"));
            }
            if let Some(n) = out.note {
                text.push_str(&format!("note: {n}\n"));
            }
            text.push_str(&out.trace.to_string());
            text
        }
    }
}
