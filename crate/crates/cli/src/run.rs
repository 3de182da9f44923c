use std::fs;
use std::path::{Path, PathBuf};

use stoyanov_core::cardinal::{AxiomContext, CardinalTerm, CfClass, Directive};
use stoyanov_core::covering::{self, BinaryFamily, Caps, ANALOGY_NOTE};
use stoyanov_core::engine::{Engine, TopologyQuery, WeightSpectrum};
use stoyanov_core::padic::{self, Minimality, PadicSubgroup, DEFAULT_SAMPLE_BOUND};
use stoyanov_core::parse::parse_context_lines;
use stoyanov_core::{CoreError, ParseError, Step, Trace, Truth, Verdict};
use thiserror::Error;

use crate::query::{Command, CoveringCmd, PadicOp, Predicate, Query};

/// Oracle sample count when `--samples` is absent.
pub const DEFAULT_SAMPLES: usize = 500;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Parse(#[from] ParseError),
    #[error("{path}: {source}")]
    Context { path: PathBuf, source: ParseError },
    #[error("cannot read {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{0}")]
    Core(#[from] CoreError),
    #[error("invalid STOYANOV_CAPS '{0}': expected s=<n>,t=<n>")]
    Caps(String),
}

/// Result of one query.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    /// `None` for queries that compute a value rather than decide a claim.
    pub verdict: Option<Truth>,
    pub value: Option<String>,
    /// Why a padic subgroup is not minimal.
    pub reason: Option<String>,
    pub note: Option<&'static str>,
    pub trace: Trace,
    pub warnings: Vec<String>,
}

impl Outcome {
    fn decided(v: Verdict) -> Self {
        Outcome {
            verdict: Some(v.value),
            value: None,
            reason: None,
            note: None,
            trace: v.trace,
            warnings: Vec::new(),
        }
    }

    fn valued(value: String, trace: Trace) -> Self {
        Outcome {
            verdict: None,
            value: Some(value),
            reason: None,
            note: None,
            trace,
            warnings: Vec::new(),
        }
    }

    /// 0 for Provable or a computed value, 1 Refutable, 2 Unknown.
    pub fn exit_code(&self) -> i32 {
        match self.verdict {
            None | Some(Truth::Provable) => 0,
            Some(Truth::Refutable) => 1,
            Some(Truth::Unknown) => 2,
        }
    }
}

/// Parses `s=<n>,t=<n>` (either order, either key optional).
pub fn parse_caps(text: &str) -> Result<Caps, CliError> {
    let mut caps = Caps::default();
    for part in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let bad = || CliError::Caps(text.to_string());
        let (k, v) = part.split_once('=').ok_or_else(bad)?;
        let v: usize = v.trim().parse().map_err(|_| bad())?;
        match k.trim() {
            "s" => caps.max_s = v,
            "t" => caps.max_t = v,
            _ => return Err(bad()),
        }
    }
    Ok(caps)
}

/// Whether two directives cannot both hold.
fn clash(a: &Directive, b: &Directive) -> bool {
    use Directive::*;
    match (a, b) {
        (Gch | Ch, NotCh) | (NotCh, Gch | Ch) => true,
        (Gch | Ch, Lusin) | (Lusin, Gch | Ch) => true,
        (Continuum { arg: x, value: v }, Continuum { arg: y, value: w }) => x == y && v != w,
        _ => false,
    }
}

/// Combines context-file directives with `--assume` flags. Flags win on a
/// clash and each dropped file directive produces a warning.
pub fn merge_directives(file: Vec<Directive>, assumed: &[Directive]) -> (Vec<Directive>, Vec<String>) {
    let mut warnings = Vec::new();
    let mut kept: Vec<Directive> = Vec::new();
    for d in file {
        match assumed.iter().find(|a| clash(a, &d)) {
            Some(a) => warnings.push(format!("--assume {a} overrides context directive '{d}'")),
            None => kept.push(d),
        }
    }
    kept.extend(assumed.iter().cloned());
    (kept, warnings)
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// Builds the axiom context of a query from `--context` and `--assume`.
pub fn resolve_context(q: &Query) -> Result<(AxiomContext, Vec<String>), CliError> {
    let file = match &q.options.context {
        Some(path) => parse_context_lines(&read(path)?).map_err(|source| CliError::Context {
            path: path.clone(),
            source,
        })?,
        None => Vec::new(),
    };
    let (directives, warnings) = merge_directives(file, &q.options.assume);
    Ok((AxiomContext::from_directives(directives)?, warnings))
}

/// Resolves the context, reads `STOYANOV_CAPS` and runs the query.
pub fn execute(q: &Query) -> Result<Outcome, CliError> {
    let (ctx, warnings) = resolve_context(q)?;
    let caps = match std::env::var("STOYANOV_CAPS") {
        Ok(text) => parse_caps(&text)?,
        Err(_) => Caps::default(),
    };
    let mut out = run(q, &ctx, caps)?;
    out.warnings.splice(0..0, warnings);
    Ok(out)
}

pub fn run(q: &Query, ctx: &AxiomContext, caps: Caps) -> Result<Outcome, CliError> {
    let engine = match q.options.seed {
        Some(seed) => Engine::with_seed(ctx, seed),
        None => Engine::new(ctx),
    };
    let r = engine.reasoner();
    match &q.command {
        Command::Eval(t) => {
            let (n, steps) = r.normalize_traced(t);
            Ok(Outcome::valued(n.to_string(), Trace { steps }))
        }
        Command::Check { predicate, kappa, sigma } => check(&engine, *predicate, kappa, sigma.as_ref()),
        Command::Admits { kappa, class, weight } => {
            let mut tq = TopologyQuery::new(kappa.clone(), *class);
            if let Some(w) = weight {
                tq = tq.with_weight(w.clone());
            }
            Ok(Outcome::decided(engine.admits(&tq)?))
        }
        Command::WitnessMin { kappa, sigma } => match engine.witness_min(kappa, sigma) {
            Ok(w) => {
                let check = engine.verify_witness(&w);
                let mut out = Outcome::decided(check);
                out.value = Some(w.to_string());
                Ok(out)
            }
            Err(CoreError::NoWitness { .. }) => Ok(Outcome::decided(engine.min_cond(kappa, sigma)?)),
            Err(e) => Err(e.into()),
        },
        Command::Spectrum(k) => {
            let s = engine.weight_spectrum(k)?;
            let mut out = Outcome::valued(s.spectrum.to_string(), s.trace);
            if matches!(s.spectrum, WeightSpectrum::Undetermined { .. }) {
                out.verdict = Some(Truth::Unknown);
            }
            Ok(out)
        }
        Command::Padic { op, file } => {
            let h = PadicSubgroup::parse(&read(file)?)?;
            padic_op(*op, &h, q.options.seed.unwrap_or(0), q.options.samples.unwrap_or(DEFAULT_SAMPLES))
        }
        Command::Covering(c) => covering_op(c, caps),
    }
}

fn check(engine: &Engine<'_>, p: Predicate, kappa: &CardinalTerm, sigma: Option<&CardinalTerm>) -> Result<Outcome, CliError> {
    let r = engine.reasoner();
    let sigma = || sigma.expect("binary predicates carry sigma");
    Ok(match p {
        Predicate::Min => Outcome::decided(engine.min_cond(kappa, sigma())?),
        Predicate::Ps => Outcome::decided(engine.ps_cond(kappa, sigma())?),
        Predicate::Stoyanov => Outcome::decided(engine.is_stoyanov(kappa)),
        Predicate::StrongLimit => Outcome::decided(r.is_strong_limit(kappa)?),
        Predicate::ExpLog => {
            let log = r.log(kappa)?;
            let exp = r.is_exponential(kappa);
            let mut trace = log.trace;
            trace.extend(exp.trace);
            let mut out = Outcome::decided(Verdict::new(exp.value, trace));
            out.value = Some(format!("log = {}", log.value));
            out
        }
        Predicate::Cf => {
            let cf = r.cofinality(kappa)?;
            let mut out = Outcome::valued(cf.value.to_string(), cf.trace);
            if cf.value == CfClass::Unknown {
                out.verdict = Some(Truth::Unknown);
            }
            out
        }
    })
}

fn padic_op(op: PadicOp, h: &PadicSubgroup, seed: u64, samples: usize) -> Result<Outcome, CliError> {
    let mut trace = Trace::new();
    let amb = h.ambient();
    let mut per_component = |rule: &'static str, f: &dyn Fn(u64, usize) -> bool, what: &str| {
        for &(p, n) in amb.components() {
            let ok = f(p, n);
            trace.push(Step::new(
                rule,
                vec![format!("ambient {amb}")],
                format!("{p}-component (rank {n}): {}{what}", if ok { "" } else { "not " }),
            ));
        }
    };
    let essential_at = |p: u64, _: usize| padic::essential_in_component(h, p).expect("ambient prime");
    let dense_at = |p: u64, n: usize| {
        let block: Vec<usize> = amb.block(p).expect("ambient prime").collect();
        let proj: Vec<Vec<_>> = h.generators().iter().map(|g| block.iter().map(|&i| g[i].clone()).collect()).collect();
        let sub = padic::PadicSubgroup::new(
            padic::PadicAmbient::new(vec![(p, n)]).expect("valid component"),
            proj,
        )
        .expect("projection of a valid subgroup");
        padic::dense(&sub)
    };
    Ok(match op {
        PadicOp::Essential => {
            per_component("padic.rank", &essential_at, "full rank");
            Outcome::decided(Verdict::new(Truth::from_bool(padic::essential(h)), trace))
        }
        PadicOp::Dense => {
            per_component("padic.density", &dense_at, "spanning mod p");
            Outcome::decided(Verdict::new(Truth::from_bool(padic::dense(h)), trace))
        }
        PadicOp::Minimal => {
            let m = padic::minimal_check(h);
            per_component("padic.density", &dense_at, "spanning mod p");
            if padic::dense(h) {
                per_component("padic.rank", &essential_at, "full rank");
            }
            trace.push(Step::new("padic.minimality", vec![], match m {
                Minimality::Minimal => "dense and essential, hence minimal".to_string(),
                Minimality::NotMinimal(r) => format!("not minimal: {r}"),
            }));
            let mut out = Outcome::decided(Verdict::new(Truth::from_bool(m == Minimality::Minimal), trace));
            if let Minimality::NotMinimal(r) = m {
                out.reason = Some(r.to_string());
            }
            out
        }
        PadicOp::Closure => {
            let c = padic::essential_closure(h)?;
            let added = c.generators().len() - h.generators().len();
            trace.push(Step::new(
                "padic.closure",
                vec![format!("free rank {}", padic::free_rank(h))],
                format!("added {added} standard basis vector(s)"),
            ));
            Outcome::valued(c.to_text().trim_end().to_string(), trace)
        }
        PadicOp::Oracle => {
            let ok = padic::essential_oracle(h, samples, seed, DEFAULT_SAMPLE_BOUND);
            trace.push(Step::new(
                "padic.oracle",
                vec![format!("{samples} samples, seed {seed}, coordinates in [-{DEFAULT_SAMPLE_BOUND}, {DEFAULT_SAMPLE_BOUND}]")],
                if ok { "every sampled line meets H" } else { "found a sampled line missing H" },
            ));
            Outcome::decided(Verdict::new(Truth::from_bool(ok), trace))
        }
    })
}

fn covering_op(c: &CoveringCmd, caps: Caps) -> Result<Outcome, CliError> {
    let mut out = match c {
        CoveringCmd::Verify { file, t } => {
            let f = BinaryFamily::parse(&read(file)?)?;
            let ok = covering::is_t_dense(&f, *t)?;
            let step = Step::new(
                "covering.density",
                vec![format!("{} rows of width {}", f.len(), f.width())],
                format!("{}{t}-dense", if ok { "" } else { "not " }),
            );
            Outcome::decided(Verdict::by(Truth::from_bool(ok), step))
        }
        CoveringCmd::Min { s, t } => {
            let w = covering::min_family_with_caps(*s, *t, caps)?;
            let step = Step::new("covering.search", vec![format!("s={s}, t={t}")], format!("smallest family: {w}"));
            Outcome::valued(w.len().to_string(), Trace::single(step))
        }
        CoveringCmd::Bound { s, t } => {
            let b = covering::lower_bound(*s, *t)?;
            let step = Step::new("covering.bound", vec![format!("s={s}, t={t}")], format!("m_fin >= {b}"));
            Outcome::valued(b.to_string(), Trace::single(step))
        }
    };
    out.note = Some(ANALOGY_NOTE);
    Ok(out)
}
