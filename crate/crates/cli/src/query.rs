//! Command-line queries: tokenizing, parsing and canonical rendering.
//!
//! ```text
//! query    := command flag*
//! command  := 'eval' term
//!           | 'check' pred ('kappa=' term) ('sigma=' term)?
//!           | 'admits' 'F(' term ')' class ('weight=' term)?
//!           | 'witness' 'min' 'kappa=' term 'sigma=' term
//!           | 'spectrum' ('kappa=')? term
//!           | 'padic' ('essential'|'dense'|'minimal'|'closure'|'oracle') path
//!           | 'covering' 'verify' path 't=' nat
//!           | 'covering' ('min'|'bound') 's=' nat 't=' nat
//! pred     := 'min' | 'stoyanov' | 'ps' | 'explog' | 'cf' | 'stronglimit'
//! flag     := '--assume' directive | '--context' path | '--json'
//!           | '--seed' int | '--samples' int
//! ```
//!
//! Tokens are separated by whitespace outside brackets, so
//! `sup[aleph(1), beth(2)]` is a single token.

use std::fmt;
use std::path::PathBuf;

use stoyanov_core::cardinal::{CardinalTerm, Directive};
use stoyanov_core::engine::TopologyClass;
use stoyanov_core::parse::{parse_context_lines, parse_term};
use stoyanov_core::ParseError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Predicate {
    Min,
    Stoyanov,
    Ps,
    ExpLog,
    Cf,
    StrongLimit,
}

impl Predicate {
    const ALL: [Predicate; 6] = [
        Predicate::Min,
        Predicate::Stoyanov,
        Predicate::Ps,
        Predicate::ExpLog,
        Predicate::Cf,
        Predicate::StrongLimit,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Predicate::Min => "min",
            Predicate::Stoyanov => "stoyanov",
            Predicate::Ps => "ps",
            Predicate::ExpLog => "explog",
            Predicate::Cf => "cf",
            Predicate::StrongLimit => "stronglimit",
        }
    }

    /// Whether the predicate takes a `sigma=` argument.
    pub fn binary(self) -> bool {
        matches!(self, Predicate::Min | Predicate::Ps)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PadicOp {
    Essential,
    Dense,
    Minimal,
    Closure,
    Oracle,
}

impl PadicOp {
    const ALL: [PadicOp; 5] = [
        PadicOp::Essential,
        PadicOp::Dense,
        PadicOp::Minimal,
        PadicOp::Closure,
        PadicOp::Oracle,
    ];

    pub fn name(self) -> &'static str {
        match self {
            PadicOp::Essential => "essential",
            PadicOp::Dense => "dense",
            PadicOp::Minimal => "minimal",
            PadicOp::Closure => "closure",
            PadicOp::Oracle => "oracle",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CoveringCmd {
    Verify { file: PathBuf, t: usize },
    Min { s: usize, t: usize },
    Bound { s: usize, t: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Command {
    Eval(CardinalTerm),
    Check {
        predicate: Predicate,
        kappa: CardinalTerm,
        sigma: Option<CardinalTerm>,
    },
    Admits {
        kappa: CardinalTerm,
        class: TopologyClass,
        weight: Option<CardinalTerm>,
    },
    WitnessMin {
        kappa: CardinalTerm,
        sigma: CardinalTerm,
    },
    Spectrum(CardinalTerm),
    Padic {
        op: PadicOp,
        file: PathBuf,
    },
    Covering(CoveringCmd),
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Options {
    pub assume: Vec<Directive>,
    pub context: Option<PathBuf>,
    pub json: bool,
    pub seed: Option<u64>,
    pub samples: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Query {
    pub command: Command,
    pub options: Options,
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct Token {
    text: String,
    /// 1-based column of the first character
    column: usize,
}

/// Splits at whitespace outside `()` and `[]`.
fn tokenize(input: &str) -> Result<Vec<Token>, ParseError> {
    let mut tokens = Vec::new();
    let mut depth = 0i32;
    let mut current = String::new();
    let mut start = 0;
    for (i, c) in input.chars().enumerate() {
        let column = i + 1;
        if c == '\n' {
            return Err(ParseError::new(1, column, "queries are a single line"));
        }
        if c.is_whitespace() && depth == 0 {
            if !current.is_empty() {
                tokens.push(Token {
                    text: std::mem::take(&mut current),
                    column: start,
                });
            }
            continue;
        }
        if current.is_empty() {
            start = column;
        }
        match c {
            '(' | '[' => depth += 1,
            ')' | ']' => {
                depth -= 1;
                if depth < 0 {
                    return Err(ParseError::new(1, column, format!("unbalanced '{c}'")));
                }
            }
            _ => {}
        }
        current.push(c);
    }
    if depth != 0 {
        return Err(ParseError::new(1, input.chars().count() + 1, "unclosed bracket"));
    }
    if !current.is_empty() {
        tokens.push(Token { text: current, column: start });
    }
    Ok(tokens)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
    end_column: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn column(&self) -> usize {
        self.peek().map_or(self.end_column, |t| t.column)
    }

    fn error_here(&self, message: impl Into<String>) -> ParseError {
        ParseError::new(1, self.column(), message)
    }

    fn next(&mut self, what: &str) -> Result<Token, ParseError> {
        let t = self.peek().cloned().ok_or_else(|| self.error_here(format!("expected {what}")))?;
        self.pos += 1;
        Ok(t)
    }

    fn word<T: Copy>(&mut self, what: &str, choices: &[(T, &str)]) -> Result<T, ParseError> {
        let t = self.next(what)?;
        choices
            .iter()
            .find(|(_, name)| *name == t.text)
            .map(|(v, _)| *v)
            .ok_or_else(|| {
                let names: Vec<&str> = choices.iter().map(|c| c.1).collect();
                ParseError::new(1, t.column, format!("unknown {what} '{}' (expected one of: {})", t.text, names.join(", ")))
            })
    }

    fn term_at(text: &str, column: usize) -> Result<CardinalTerm, ParseError> {
        parse_term(text).map_err(|e| e.offset(0, column - 1))
    }

    fn term(&mut self) -> Result<CardinalTerm, ParseError> {
        let t = self.next("a cardinal term")?;
        Self::term_at(&t.text, t.column)
    }

    /// `key=value`, returning the value and its column.
    fn keyed(&mut self, key: &str) -> Result<(String, usize), ParseError> {
        let t = self.next(&format!("'{key}='"))?;
        match t.text.split_once('=') {
            Some((k, v)) if k == key => Ok((v.to_string(), t.column + k.len() + 1)),
            _ => Err(ParseError::new(1, t.column, format!("expected '{key}=', found '{}'", t.text))),
        }
    }

    fn keyed_term(&mut self, key: &str) -> Result<CardinalTerm, ParseError> {
        let (v, col) = self.keyed(key)?;
        Self::term_at(&v, col)
    }

    fn keyed_nat(&mut self, key: &str) -> Result<usize, ParseError> {
        let (v, col) = self.keyed(key)?;
        v.parse().map_err(|_| ParseError::new(1, col, format!("expected a natural number, found '{v}'")))
    }

    fn at_flag(&self) -> bool {
        self.peek().is_some_and(|t| t.text.starts_with("--"))
    }

    fn optional_keyed_term(&mut self, key: &str) -> Result<Option<CardinalTerm>, ParseError> {
        let prefix = format!("{key}=");
        if self.peek().is_some_and(|t| t.text.starts_with(&prefix)) {
            self.keyed_term(key).map(Some)
        } else {
            Ok(None)
        }
    }

    fn command(&mut self) -> Result<Command, ParseError> {
        let head = self.next("a subcommand (eval, check, admits, witness, spectrum, padic, covering)")?;
        match head.text.as_str() {
            "eval" => Ok(Command::Eval(self.term()?)),
            "check" => {
                let choices: Vec<(Predicate, &str)> = Predicate::ALL.iter().map(|p| (*p, p.name())).collect();
                let predicate = self.word("predicate", &choices)?;
                let kappa = self.keyed_term("kappa")?;
                let sigma = if predicate.binary() {
                    Some(self.keyed_term("sigma")?)
                } else {
                    None
                };
                Ok(Command::Check { predicate, kappa, sigma })
            }
            "admits" => {
                let t = self.next("'F(<term>)'")?;
                let inner = t
                    .text
                    .strip_prefix("F(")
                    .and_then(|s| s.strip_suffix(')'))
                    .ok_or_else(|| ParseError::new(1, t.column, format!("expected 'F(<term>)', found '{}'", t.text)))?;
                let kappa = Self::term_at(inner, t.column + 2)?;
                let choices: Vec<(TopologyClass, &str)> = TopologyClass::ALL.iter().map(|c| (*c, c.name())).collect();
                let class = self.word("topology class", &choices)?;
                let weight = self.optional_keyed_term("weight")?;
                Ok(Command::Admits { kappa, class, weight })
            }
            "witness" => {
                self.word("witness kind", &[((), "min")])?;
                let kappa = self.keyed_term("kappa")?;
                let sigma = self.keyed_term("sigma")?;
                Ok(Command::WitnessMin { kappa, sigma })
            }
            "spectrum" => match self.optional_keyed_term("kappa")? {
                Some(k) => Ok(Command::Spectrum(k)),
                None => Ok(Command::Spectrum(self.term()?)),
            },
            "padic" => {
                let choices: Vec<(PadicOp, &str)> = PadicOp::ALL.iter().map(|p| (*p, p.name())).collect();
                let op = self.word("padic operation", &choices)?;
                let file = PathBuf::from(self.next("a subgroup file")?.text);
                Ok(Command::Padic { op, file })
            }
            "covering" => {
                #[derive(Clone, Copy)]
                enum Sub {
                    Verify,
                    Min,
                    Bound,
                }
                let sub = self.word("covering operation", &[(Sub::Verify, "verify"), (Sub::Min, "min"), (Sub::Bound, "bound")])?;
                Ok(Command::Covering(match sub {
                    Sub::Verify => {
                        let file = PathBuf::from(self.next("a family file")?.text);
                        CoveringCmd::Verify { file, t: self.keyed_nat("t")? }
                    }
                    Sub::Min => CoveringCmd::Min {
                        s: self.keyed_nat("s")?,
                        t: self.keyed_nat("t")?,
                    },
                    Sub::Bound => CoveringCmd::Bound {
                        s: self.keyed_nat("s")?,
                        t: self.keyed_nat("t")?,
                    },
                }))
            }
            other => Err(ParseError::new(1, head.column, format!("unknown subcommand '{other}'"))),
        }
    }

    fn flags(&mut self) -> Result<Options, ParseError> {
        let mut o = Options::default();
        while let Some(t) = self.peek().cloned() {
            self.pos += 1;
            match t.text.as_str() {
                "--json" => o.json = true,
                "--assume" => {
                    let d = self.next("a directive after --assume")?;
                    let parsed = parse_context_lines(&d.text).map_err(|e| e.offset(0, d.column - 1))?;
                    if parsed.len() != 1 {
                        return Err(ParseError::new(1, d.column, "expected exactly one directive"));
                    }
                    o.assume.extend(parsed);
                }
                "--context" => o.context = Some(PathBuf::from(self.next("a context file after --context")?.text)),
                "--seed" => {
                    let v = self.next("an integer after --seed")?;
                    o.seed = Some(v.text.parse().map_err(|_| ParseError::new(1, v.column, format!("invalid seed '{}'", v.text)))?);
                }
                "--samples" => {
                    let v = self.next("an integer after --samples")?;
                    let n: usize = v
                        .text
                        .parse()
                        .map_err(|_| ParseError::new(1, v.column, format!("invalid sample count '{}'", v.text)))?;
                    if n == 0 {
                        return Err(ParseError::new(1, v.column, "at least one sample is required"));
                    }
                    o.samples = Some(n);
                }
                other if other.starts_with("--") => {
                    return Err(ParseError::new(1, t.column, format!("unknown flag '{other}'")))
                }
                other => return Err(ParseError::new(1, t.column, format!("unexpected '{other}'"))),
            }
        }
        Ok(o)
    }
}

fn parse_tokens(tokens: Vec<Token>, end_column: usize) -> Result<Query, ParseError> {
    let mut p = Parser { tokens, pos: 0, end_column };
    if p.at_flag() {
        return Err(p.error_here("the subcommand comes before flags"));
    }
    let command = p.command()?;
    let options = p.flags()?;
    Ok(Query { command, options })
}

/// Parses a query written on one line.
pub fn parse_query(input: &str) -> Result<Query, ParseError> {
    parse_tokens(tokenize(input)?, input.chars().count() + 1)
}

/// Parses pre-split arguments (as from a shell). Columns refer to the
/// arguments joined by single spaces; an argument is never split further.
pub fn parse_args<S: AsRef<str>>(args: &[S]) -> Result<Query, ParseError> {
    let mut tokens = Vec::new();
    let mut column = 1;
    for a in args {
        let a = a.as_ref();
        if !a.is_empty() {
            tokens.push(Token {
                text: a.to_string(),
                column,
            });
        }
        column += a.chars().count() + 1;
    }
    parse_tokens(tokens, column)
}

fn directive_token(d: &Directive) -> String {
    match d {
        Directive::Continuum { arg, value } => format!("2^{arg}={value}"),
        other => other.to_string(),
    }
}

impl fmt::Display for Query {
    /// The canonical form: `parse_query(q.to_string()) == q`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.command {
            Command::Eval(t) => write!(f, "eval {t}")?,
            Command::Check { predicate, kappa, sigma } => {
                write!(f, "check {} kappa={kappa}", predicate.name())?;
                if let Some(s) = sigma {
                    write!(f, " sigma={s}")?;
                }
            }
            Command::Admits { kappa, class, weight } => {
                write!(f, "admits F({kappa}) {class}")?;
                if let Some(w) = weight {
                    write!(f, " weight={w}")?;
                }
            }
            Command::WitnessMin { kappa, sigma } => write!(f, "witness min kappa={kappa} sigma={sigma}")?,
            Command::Spectrum(k) => write!(f, "spectrum kappa={k}")?,
            Command::Padic { op, file } => write!(f, "padic {} {}", op.name(), file.display())?,
            Command::Covering(CoveringCmd::Verify { file, t }) => write!(f, "covering verify {} t={t}", file.display())?,
            Command::Covering(CoveringCmd::Min { s, t }) => write!(f, "covering min s={s} t={t}")?,
            Command::Covering(CoveringCmd::Bound { s, t }) => write!(f, "covering bound s={s} t={t}")?,
        }
        let o = &self.options;
        if let Some(c) = &o.context {
            write!(f, " --context {}", c.display())?;
        }
        for d in &o.assume {
            write!(f, " --assume {}", directive_token(d))?;
        }
        if o.json {
            write!(f, " --json")?;
        }
        if let Some(s) = o.seed {
            write!(f, " --seed {s}")?;
        }
        if let Some(n) = o.samples {
            write!(f, " --samples {n}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(s: &str) -> CardinalTerm {
        parse_term(s).unwrap()
    }

    #[test]
    fn check_queries() {
        let q = parse_query("check min kappa=beth(w) sigma=beth(w)").unwrap();
        assert_eq!(
            q.command,
            Command::Check {
                predicate: Predicate::Min,
                kappa: t("beth(w)"),
                sigma: Some(t("beth(w)"))
            }
        );
        let q = parse_query("check stoyanov kappa=beth(w1)").unwrap();
        assert_eq!(
            q.command,
            Command::Check {
                predicate: Predicate::Stoyanov,
                kappa: t("beth(w1)"),
                sigma: None
            }
        );
    }

    #[test]
    fn admits_with_assumption() {
        let q = parse_query("admits F(c) minimal-pseudocompact --assume lusin").unwrap();
        assert_eq!(
            q.command,
            Command::Admits {
                kappa: t("c"),
                class: TopologyClass::MinimalPseudocompact,
                weight: None
            }
        );
        assert_eq!(q.options.assume, vec![Directive::Lusin]);
    }

    #[test]
    fn bracketed_terms_stay_whole() {
        let q = parse_query("eval sup[aleph(1), beth(2)] --json").unwrap();
        assert_eq!(q.command, Command::Eval(t("sup[aleph(1), beth(2)]")));
        assert!(q.options.json);
    }

    #[test]
    fn errors_point_at_the_offending_column() {
        let e = parse_query("check min kappa=alef(1) sigma=c").unwrap_err();
        assert_eq!((e.line, e.column), (1, 17));
        let e = parse_query("check mni kappa=c").unwrap_err();
        assert_eq!(e.column, 7);
        let e = parse_query("admits F(c) compact").unwrap_err();
        assert_eq!(e.column, 13);
        let e = parse_query("eval c --bogus").unwrap_err();
        assert_eq!(e.column, 8);
        let e = parse_query("check min kappa=c").unwrap_err();
        assert_eq!(e.column, 18);
    }

    #[test]
    fn canonical_rendering_round_trips() {
        for src in [
            "eval 2^aleph(0)",
            "check ps kappa=beth(w1) sigma=2^beth(w1) --assume GCH --json",
            "admits F(beth(w)) pseudocompact weight=beth(w) --context ctx.txt --seed 7",
            "witness min kappa=aleph(w+2) sigma=aleph(w) --assume 2^aleph(0)=aleph(w+2)",
            "spectrum kappa=beth(w)",
            "padic oracle sub.txt --samples 50 --seed 3",
            "covering verify fam.txt t=2",
            "covering min s=3 t=2",
            "covering bound s=6 t=3",
        ] {
            let q = parse_query(src).unwrap();
            assert_eq!(parse_query(&q.to_string()).unwrap(), q, "{src}");
        }
    }

    #[test]
    fn args_keep_spaced_directives_together() {
        let q = parse_args(&["check", "cf", "kappa=c", "--assume", "2^aleph(1) = aleph(2)"]).unwrap();
        assert_eq!(q.options.assume.len(), 1);
    }
}
