//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.
//!
//! Runtime limits are wall-clock limits for the whole criterion, measured
//! in whatever profile the suite is built with.

use std::collections::{BTreeMap, HashSet};
use std::fmt::Write as _;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use stoyanov_core::cardinal::{AxiomContext, CardIndex, CardinalTerm, Reasoner};
use stoyanov_core::covering::{is_t_dense, lower_bound, m_fin, min_family};
use stoyanov_core::engine::{Engine, TopologyClass, TopologyQuery, WeightSpectrum, WitnessKind};
use stoyanov_core::ordinal::Ordinal;
use stoyanov_core::padic::{
    essential, essential_closure, essential_oracle, free_rank, PadicAmbient, PadicSubgroup, DEFAULT_SAMPLE_BOUND,
};
use stoyanov_core::parse::{parse_context_lines, parse_term};
use stoyanov_core::{Truth, Verdict};

type T = CardinalTerm;

fn t(s: &str) -> T {
    parse_term(s).unwrap_or_else(|e| panic!("bad term {s}: {e}"))
}

fn ctx(lines: &str) -> AxiomContext {
    AxiomContext::from_directives(parse_context_lines(lines).unwrap()).unwrap()
}

fn big_continuum() -> AxiomContext {
    ctx("2^aleph(0) = aleph(w+2)\n2^aleph(w+1) = aleph(w+2)")
}

/// Collects failures of one criterion.
#[derive(Default)]
struct Checks {
    total: usize,
    failures: Vec<String>,
}

impl Checks {
    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.total += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    fn expect(&mut self, label: &str, got: &Verdict, want: Truth) {
        self.check(got.value == want, || format!("{label}: expected {want}, got {}", got.value));
    }
}

struct Criterion {
    id: u32,
    name: &'static str,
    limit: Option<Duration>,
    run: fn(&mut Checks) -> String,
}

// 1 -------------------------------------------------------------------------

fn worked_examples(c: &mut Checks) -> String {
    let zfc = AxiomContext::zfc();
    let e = Engine::new(&zfc);
    let r = e.reasoner();

    for k in ["aleph(0)", "aleph(1)", "c"] {
        c.expect(&format!("Min({k}, w)"), &e.min_cond(&t(k), &t("aleph(0)")).unwrap(), Truth::Provable);
    }

    // Min(k, s) <=> k = 2^s whenever cf(s) > w is provable
    let sigmas = ["aleph(1)", "beth(1)", "beth(w+1)", "2^beth(w)", "beth(w1)"];
    let mut instances = 0;
    for s in sigmas {
        let sigma = t(s);
        c.check(
            r.cofinality(&sigma).unwrap().value == stoyanov_core::cardinal::CfClass::CofUncountableRegular,
            || format!("cf({s}) > w not derived"),
        );
        for k in [format!("2^{s}"), s.to_string(), format!("2^2^{s}"), format!("sup[{s}, 2^{s}]")] {
            let kappa = t(&k);
            let min = e.min_cond(&kappa, &sigma).unwrap();
            let eq = r.equal(&kappa, &T::exp2(sigma.clone()));
            c.check(min.value.is_decided() && min.value == eq.value, || {
                format!("Min({k}, {s}) = {} but ({k} = 2^{s}) = {}", min.value, eq.value)
            });
            instances += 1;
        }
    }

    let ec = big_continuum();
    let ee = Engine::new(&ec);
    let log = ee.reasoner().log(&t("aleph(w+2)")).unwrap();
    c.check(log.value.exact() == Some(&t("aleph(0)")), || format!("big continuum log(aleph(w+2)) = {}", log.value));
    c.expect("big continuum Min(aleph(w+2), aleph(w))", &ee.min_cond(&t("aleph(w+2)"), &t("aleph(w)")).unwrap(), Truth::Provable);

    let bw = t("beth(w)");
    c.expect("is_stoyanov(beth(w))", &e.is_stoyanov(&bw), Truth::Provable);
    let w = e.witness_min(&bw, &bw).unwrap();
    c.check(w.kind == WitnessKind::BethsAlong(CardIndex::omega()), || format!("witness for beth(w) is {w}"));
    c.check(w.prefix(3) == vec![t("beth(0)"), t("beth(1)"), t("beth(2)")], || format!("witness prefix {:?}", w.prefix(3)));
    c.expect(
        "admits F(beth(w)) pseudocompact",
        &e.admits(&TopologyQuery::new(bw.clone(), TopologyClass::Pseudocompact)).unwrap(),
        Truth::Refutable,
    );
    let spec = e.weight_spectrum(&bw).unwrap();
    c.check(spec.spectrum == WeightSpectrum::Singleton(bw.clone()), || format!("spectrum(beth(w)) = {}", spec.spectrum));

    let bw1 = t("beth(w1)");
    c.expect("is_stoyanov(beth(w1))", &e.is_stoyanov(&bw1), Truth::Refutable);
    c.expect("Ps(beth(w1), 2^beth(w1))", &e.ps_cond(&bw1, &t("2^beth(w1)")).unwrap(), Truth::Provable);

    let m = r.m_bounds(&t("aleph(0)")).unwrap();
    c.check(m.value.exact().is_some_and(|v| r.equal(v, &t("c")).is_provable()), || format!("m(w) = {}", m.value));
    c.expect("Ps(c, aleph(1))", &e.ps_cond(&t("c"), &t("aleph(1)")).unwrap(), Truth::Provable);

    format!("{instances} generated cf > w instances")
}

// 2 -------------------------------------------------------------------------

fn indices() -> Vec<&'static str> {
    vec![
        "1", "2", "3", "5", "w", "w+1", "w+2", "w*2", "w*2+1", "w^2", "w^2+1", "w^w", "w1", "w1+1", "w1+w", "w1+w+1",
    ]
}

fn above_continuum_corpus() -> Vec<(String, AxiomContext, T)> {
    let contexts = [("ZFC", AxiomContext::zfc()), ("GCH", AxiomContext::gch())];
    let mut out = Vec::new();
    for (name, cx) in &contexts {
        let r = Reasoner::new(cx);
        for i in indices() {
            let shapes = [
                format!("beth({i})"),
                format!("aleph({i})"),
                format!("2^beth({i})"),
                format!("2^aleph({i})"),
                format!("poww(beth({i}))"),
                format!("weakpow(beth({i}))"),
                format!("sup[beth({i}), aleph(2)]"),
                format!("2^2^aleph({i})"),
            ];
            for s in shapes {
                let k = t(&s);
                if r.lt(&t("c"), &k).is_provable() {
                    out.push((name.to_string(), cx.clone(), k));
                }
            }
        }
    }
    out
}

fn mps_equivalence(c: &mut Checks) -> String {
    let corpus = above_continuum_corpus();
    c.check(corpus.len() >= 200, || format!("only {} terms provably above c", corpus.len()));
    for (name, cx, k) in &corpus {
        let e = Engine::new(cx);
        let ask = |class| e.admits(&TopologyQuery::new(k.clone(), class)).unwrap().value;
        let (min, ps) = (ask(TopologyClass::Minimal), ask(TopologyClass::Pseudocompact));
        let both = min.and(ps);
        for class in [TopologyClass::MinimalPseudocompact, TopologyClass::ZeroDimMinimalPseudocompact] {
            let joint = ask(class);
            c.check((both == Truth::Provable) == (joint == Truth::Provable), || {
                format!("{name}: F({k}): minimal {min}, pseudocompact {ps}, {class} {joint}")
            });
            c.check(!(joint == Truth::Provable && both == Truth::Refutable), || {
                format!("{name}: F({k}): {class} provable but minimal/pseudocompact refuted")
            });
            c.check(!(joint == Truth::Refutable && both == Truth::Provable), || {
                format!("{name}: F({k}): {class} refuted but minimal and pseudocompact provable")
            });
        }
    }
    format!("{} terms provably above c", corpus.len())
}

// 3 -------------------------------------------------------------------------

fn continuum_fork(c: &mut Checks) -> String {
    let classes = [
        TopologyClass::MinimalPseudocompact,
        TopologyClass::ConnectedMinimalPseudocompact,
        TopologyClass::ZeroDimMinimalPseudocompact,
    ];
    let cases = [
        ("lusin", ctx("lusin"), Truth::Provable),
        ("2^aleph(1)=aleph(2), 2^aleph(0)=aleph(1)", ctx("2^aleph(1) = aleph(2)\n2^aleph(0) = aleph(1)"), Truth::Refutable),
        ("ZFC", AxiomContext::zfc(), Truth::Unknown),
    ];
    for (name, cx, want) in &cases {
        let e = Engine::new(cx);
        for class in classes {
            let v = e.admits(&TopologyQuery::new(t("c"), class)).unwrap();
            c.expect(&format!("{name}: F(c) {class}"), &v, *want);
        }
    }
    "3 contexts".to_string()
}

// 4 -------------------------------------------------------------------------

fn connected_exponential(c: &mut Checks) -> String {
    let contexts = [AxiomContext::zfc(), AxiomContext::gch()];
    let mut found = 0;
    'outer: for cx in &contexts {
        let e = Engine::new(cx);
        let r = e.reasoner();
        for i in indices() {
            for s in [format!("beth({i})"), format!("aleph({i})")] {
                let sigma = t(&s);
                let kappa = T::exp2(sigma.clone());
                if !r.lt(&t("c"), &kappa).is_provable() {
                    continue;
                }
                let q = TopologyQuery::new(kappa.clone(), TopologyClass::ConnectedMinimalPseudocompact).with_weight(sigma);
                c.expect(&format!("{cx}: F({kappa}) connected-minimal-pseudocompact weight {s}"), &e.admits(&q).unwrap(), Truth::Provable);
                found += 1;
                if found == 20 {
                    break 'outer;
                }
            }
        }
    }
    c.check(found == 20, || format!("only {found} exponential instances above c"));

    let zfc = AxiomContext::zfc();
    let gch = AxiomContext::gch();
    let non_exp = [
        (&zfc, "beth(w)"),
        (&zfc, "beth(w*2)"),
        (&zfc, "beth(w^2)"),
        (&zfc, "beth(w1)"),
        (&gch, "aleph(w)"),
        (&gch, "aleph(w1)"),
    ];
    for (cx, k) in non_exp {
        let e = Engine::new(cx);
        c.expect(&format!("{k} not exponential"), &e.reasoner().is_exponential(&t(k)), Truth::Refutable);
        for class in [TopologyClass::ConnectedMinimal, TopologyClass::ConnectedMinimalPseudocompact] {
            c.expect(&format!("{cx}: F({k}) {class}"), &e.admits(&TopologyQuery::new(t(k), class)).unwrap(), Truth::Refutable);
        }
    }
    format!("{found} exponential and {} non-exponential sizes", non_exp.len())
}

// 5 -------------------------------------------------------------------------

/// Values under GCH: finite numbers or alephs.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
enum GchValue {
    Fin(u64),
    Aleph(CardIndex),
}

/// Evaluates a term under GCH directly from cardinal arithmetic, without
/// the reasoner. Indices stay countable here.
fn gch_eval(term: &T) -> GchValue {
    use GchValue::*;
    let idx_succ = |i: &CardIndex| i.succ();
    let countable_cf = |i: &CardIndex| match i {
        CardIndex::Countable(o) => o.is_zero() || o.is_limit(),
        CardIndex::AboveOmegaOne(o) => o.is_limit(),
    };
    match term {
        T::Fin(n) => Fin(n.try_into().expect("small")),
        T::Aleph(i) | T::Beth(i) => Aleph(i.clone()),
        T::Exp2(b) => match gch_eval(b) {
            Fin(n) => Fin(1 << n),
            Aleph(i) => Aleph(idx_succ(&i)),
        },
        T::PowOmega(b) => match gch_eval(b) {
            Fin(n) if n <= 1 => Fin(n),
            Fin(_) => Aleph(CardIndex::nat(1)),
            Aleph(i) if countable_cf(&i) => Aleph(idx_succ(&i)),
            Aleph(i) => Aleph(i),
        },
        T::WeakPow(b) => match gch_eval(b) {
            Fin(0) => Fin(0),
            Fin(n) => Fin(1 << (n - 1)),
            // 2^<aleph(a) is aleph(a) at limits and 2^aleph(a-1) = aleph(a) at successors
            Aleph(i) => Aleph(i),
        },
        T::Sup(items) => items.iter().map(gch_eval).max().expect("nonempty"),
    }
}

fn gch_oracle_leq(a: &GchValue, b: &GchValue) -> bool {
    a <= b
}

fn gch_corpus() -> Vec<T> {
    let mut idx: Vec<CardIndex> = (0..4).map(CardIndex::nat).collect();
    for n in 0..4 {
        idx.push(CardIndex::Countable(Ordinal::omega().add(&Ordinal::nat(n))));
    }
    let mut atoms: Vec<T> = (0..3).map(T::fin).collect();
    atoms.extend(idx.iter().cloned().map(T::Aleph));
    atoms.extend(idx.iter().cloned().map(T::Beth));
    let unary = |xs: &[T]| -> Vec<T> {
        xs.iter()
            .flat_map(|x| [T::exp2(x.clone()), T::pow_omega(x.clone()), T::weak_pow(x.clone())])
            .collect()
    };
    let infinite: Vec<T> = atoms.iter().filter(|a| a.as_fin().is_none()).cloned().collect();
    let mut level1 = unary(&atoms);
    for (i, a) in infinite.iter().enumerate().step_by(3) {
        for b in infinite.iter().skip(i + 1).step_by(4) {
            level1.push(T::Sup(vec![a.clone(), b.clone()]));
        }
        level1.push(T::Sup(vec![a.clone(), T::fin(2)]));
    }
    let level2 = unary(&level1);
    let level3 = unary(&level2);
    let mut all = atoms;
    all.extend(level1);
    all.extend(level2);
    all.extend(level3);
    all
}

fn gch_completeness(c: &mut Checks) -> String {
    let gch = AxiomContext::gch();
    let e = Engine::new(&gch);
    let r = e.reasoner();
    let corpus = gch_corpus();
    let mut normal: Vec<T> = Vec::new();
    let mut seen = HashSet::new();
    for x in &corpus {
        let n = r.normalize(x);
        c.check(matches!(n, T::Fin(_) | T::Aleph(_)), || format!("{x} normalizes to {n}, not an atom"));
        if seen.insert(n.clone()) {
            normal.push(n);
        }
    }
    let mut pairs = 0usize;
    let mut unknown = 0usize;
    for x in &corpus {
        let gx = gch_eval(x);
        for y in &normal {
            let gy = gch_eval(y);
            for (a, b, ga, gb) in [(x, y, &gx, &gy), (y, x, &gy, &gx)] {
                let v = r.leq(a, b);
                pairs += 1;
                if v.is_unknown() {
                    unknown += 1;
                }
                let want = Truth::from_bool(gch_oracle_leq(ga, gb));
                c.check(v.value == want, || format!("GCH leq({a}, {b}) = {}, oracle {want}", v.value));
            }
        }
    }
    let infinite: Vec<&T> = normal.iter().filter(|n| n.as_fin().is_none()).collect();
    for k in &infinite {
        for s in &infinite {
            let (GchValue::Aleph(ki), GchValue::Aleph(si)) = (gch_eval(k), gch_eval(s)) else {
                unreachable!()
            };
            let min = e.min_cond(k, s).unwrap();
            let ps = e.ps_cond(k, s).unwrap();
            c.check(min.value.is_decided() && ps.value.is_decided(), || {
                format!("GCH Min({k},{s}) = {}, Ps = {}", min.value, ps.value)
            });
            c.check(min.value == Truth::from_bool(gch_min(&ki, &si)), || format!("GCH Min({k},{s}) = {}", min.value));
            c.check(ps.value == Truth::from_bool(gch_ps(&ki, &si)), || format!("GCH Ps({k},{s}) = {}", ps.value));
        }
    }
    format!(
        "{} raw terms, {} normal forms, {pairs} leq pairs ({unknown} unknown), {} Min/Ps pairs",
        corpus.len(),
        normal.len(),
        infinite.len() * infinite.len()
    )
}

fn cf_is_omega(i: &CardIndex) -> bool {
    match i {
        CardIndex::Countable(o) => o.is_zero() || o.is_limit(),
        CardIndex::AboveOmegaOne(o) => o.is_limit(),
    }
}

/// Under GCH, 2^s = s+ and 2^<s = s, so Min(k, s) holds exactly for k = s+
/// and, when cf(s) = w, also for k = s.
fn gch_min(k: &CardIndex, s: &CardIndex) -> bool {
    *k == s.succ() || (*k == *s && cf_is_omega(s))
}

/// Under GCH, m(s) is the least cardinal of uncountable cofinality that is
/// at least max(c, log s) = max(aleph(1), log s); Ps(k, s) iff m(s) <= k <= 2^s.
fn gch_ps(k: &CardIndex, s: &CardIndex) -> bool {
    let log = match s.pred() {
        Some(p) if !s.is_zero() => p,
        _ => s.clone(),
    };
    let floor = std::cmp::max(CardIndex::nat(1), log);
    let m = if cf_is_omega(&floor) { floor.succ() } else { floor };
    m <= *k && *k <= s.succ()
}

// 6 -------------------------------------------------------------------------

enum Q {
    Min(&'static str, &'static str),
    Ps(&'static str, &'static str),
    Stoyanov(&'static str),
    Admits(&'static str, TopologyClass),
}

fn regression_corpus() -> Vec<(&'static str, AxiomContext, Q)> {
    use TopologyClass::*;
    let zfc = AxiomContext::zfc;
    vec![
        ("ZFC", zfc(), Q::Min("aleph(1)", "aleph(0)")),
        ("ZFC", zfc(), Q::Min("c", "aleph(0)")),
        ("ZFC", zfc(), Q::Min("beth(w)", "beth(w)")),
        ("ZFC", zfc(), Q::Min("2^beth(w1)", "beth(w1)")),
        ("ZFC", zfc(), Q::Min("beth(w1)", "beth(w1)")),
        ("ZFC", zfc(), Q::Min("aleph(2)", "aleph(1)")),
        ("ZFC", zfc(), Q::Ps("c", "aleph(1)")),
        ("ZFC", zfc(), Q::Ps("beth(w)", "beth(w)")),
        ("ZFC", zfc(), Q::Ps("beth(w1)", "2^beth(w1)")),
        ("ZFC", zfc(), Q::Ps("aleph(1)", "aleph(0)")),
        ("ZFC", zfc(), Q::Ps("beth(2)", "beth(1)")),
        ("ZFC", zfc(), Q::Stoyanov("beth(w)")),
        ("ZFC", zfc(), Q::Stoyanov("beth(w1)")),
        ("ZFC", zfc(), Q::Stoyanov("aleph(w)")),
        ("ZFC", zfc(), Q::Stoyanov("2^aleph(3)")),
        ("ZFC", zfc(), Q::Admits("beth(w)", Pseudocompact)),
        ("ZFC", zfc(), Q::Admits("beth(w)", Minimal)),
        ("ZFC", zfc(), Q::Admits("beth(w1)", Minimal)),
        ("ZFC", zfc(), Q::Admits("beth(2)", MinimalPseudocompact)),
        ("ZFC", zfc(), Q::Admits("beth(w+1)", ConnectedMinimalPseudocompact)),
        ("ZFC", zfc(), Q::Admits("c", MinimalPseudocompact)),
        ("ZFC", zfc(), Q::Admits("aleph(1)", ConnectedMinimal)),
        ("ZFC", zfc(), Q::Admits("beth(w)", LocallyConnectedMinimal)),
        ("GCH", AxiomContext::gch(), Q::Min("aleph(w)", "aleph(w)")),
        ("GCH", AxiomContext::gch(), Q::Ps("aleph(w+1)", "aleph(w)")),
        ("GCH", AxiomContext::gch(), Q::Admits("aleph(w)", Pseudocompact)),
        ("GCH", AxiomContext::gch(), Q::Admits("aleph(3)", ZeroDimMinimalPseudocompact)),
        ("lusin", ctx("lusin"), Q::Admits("c", MinimalPseudocompact)),
        ("lusin", ctx("lusin"), Q::Admits("c", ConnectedMinimalPseudocompact)),
        ("fork", ctx("2^aleph(1) = aleph(2)\n2^aleph(0) = aleph(1)"), Q::Admits("c", ZeroDimMinimalPseudocompact)),
        ("big continuum", big_continuum(), Q::Min("aleph(w+2)", "aleph(w)")),
        ("big continuum", big_continuum(), Q::Min("aleph(w+2)", "aleph(3)")),
        ("big continuum", big_continuum(), Q::Ps("aleph(w+2)", "aleph(w)")),
        ("big continuum", big_continuum(), Q::Stoyanov("aleph(w+2)")),
    ]
}

fn ask(e: &Engine<'_>, q: &Q) -> Truth {
    match q {
        Q::Min(k, s) => e.min_cond(&t(k), &t(s)).unwrap().value,
        Q::Ps(k, s) => e.ps_cond(&t(k), &t(s)).unwrap().value,
        Q::Stoyanov(k) => e.is_stoyanov(&t(k)).value,
        Q::Admits(k, class) => e.admits(&TopologyQuery::new(t(k), *class)).unwrap().value,
    }
}

fn shuffle_soundness(c: &mut Checks) -> String {
    let corpus = regression_corpus();
    let mut seen: Vec<BTreeMap<&'static str, usize>> = vec![BTreeMap::new(); corpus.len()];
    for seed in 0..1000u64 {
        for (i, (_, cx, q)) in corpus.iter().enumerate() {
            let e = Engine::with_seed(cx, seed);
            *seen[i].entry(ask(&e, q).label()).or_default() += 1;
        }
    }
    let mut varying = 0;
    for (i, (name, _, _)) in corpus.iter().enumerate() {
        let s = &seen[i];
        if s.len() > 1 {
            varying += 1;
        }
        c.check(!(s.contains_key("PROVABLE") && s.contains_key("REFUTABLE")), || format!("query {i} under {name}: {s:?}"));
    }
    format!("{} queries x 1000 seeds, {varying} with order-dependent completeness", corpus.len())
}

// 7 -------------------------------------------------------------------------

fn witness_verification(c: &mut Checks) -> String {
    let contexts = [
        AxiomContext::zfc(),
        AxiomContext::gch(),
        big_continuum(),
        ctx("lusin"),
    ];
    let kappas = [
        "aleph(0)", "aleph(1)", "c", "beth(w)", "beth(w*2)", "2^beth(w1)", "aleph(w+1)", "aleph(w+2)", "beth(w+1)",
        "2^aleph(1)", "aleph(w)", "2^aleph(w)",
    ];
    let sigmas = ["aleph(0)", "aleph(1)", "aleph(w)", "beth(w)", "beth(w*2)", "beth(w1)", "aleph(3)", "beth(1)"];
    let mut emitted = 0;
    for cx in &contexts {
        let e = Engine::new(cx);
        let r = e.reasoner();
        for k in kappas {
            for s in sigmas {
                let Ok(w) = e.witness_min(&t(k), &t(s)) else { continue };
                emitted += 1;
                c.expect(&format!("{cx}: witness {w}"), &e.verify_witness(&w), Truth::Provable);
                let kappa = r.normalize(&t(k));
                let sigma = r.normalize(&t(s));
                c.check(r.leq(&kappa, &T::exp2(sigma.clone())).is_provable(), || format!("{cx}: {k} <= 2^{s} for {w}"));
                for n in 0..6 {
                    let term = w.term(n);
                    c.check(r.leq(&term, &sigma).is_provable(), || format!("{cx}: term {n} of {w} exceeds sigma"));
                    c.check(r.leq(&T::exp2(term.clone()), &kappa).is_provable(), || {
                        format!("{cx}: 2^(term {n}) of {w} exceeds kappa")
                    });
                }
            }
        }
    }
    c.check(emitted >= 30, || format!("only {emitted} witnesses emitted"));
    format!("{emitted} witnesses emitted and verified")
}

// 8 -------------------------------------------------------------------------

fn random_subgroup(rng: &mut ChaCha8Rng) -> PadicSubgroup {
    let mut primes = vec![2u64, 3, 5];
    let k = rng.gen_range(1..=2);
    let mut comps = Vec::new();
    for _ in 0..k {
        let p = primes.remove(rng.gen_range(0..primes.len()));
        comps.push((p, rng.gen_range(1..=3)));
    }
    let amb = PadicAmbient::new(comps).unwrap();
    let width = amb.total_rank();
    let gens = (0..rng.gen_range(0..=3))
        .map(|_| (0..width).map(|_| rng.gen_range(-9..=9)).collect())
        .collect();
    PadicSubgroup::from_integers(amb, gens).unwrap()
}

fn padic_oracle(c: &mut Checks) -> String {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let (mut ess, mut closures) = (0, 0);
    for i in 0..1000u64 {
        let h = random_subgroup(&mut rng);
        let exact = essential(&h);
        let oracle = essential_oracle(&h, 500, i, DEFAULT_SAMPLE_BOUND);
        ess += usize::from(exact);
        c.check(!exact || oracle, || format!("oracle found a counterexample for essential {}", h.to_text()));
        c.check(exact || !oracle, || format!("oracle missed a deficient component of {}", h.to_text()));
        if free_rank(&h) == h.generators().len() {
            closures += 1;
            let cl = essential_closure(&h).unwrap();
            c.check(essential(&cl), || format!("closure of {} not essential", h.to_text()));
            c.check(free_rank(&cl) == cl.generators().len(), || format!("closure of {} not free", h.to_text()));
            c.check(&cl.generators()[..h.generators().len()] == h.generators(), || {
                format!("closure of {} lost the input generators", h.to_text())
            });
        } else {
            c.check(essential_closure(&h).is_err(), || format!("dependent {} accepted", h.to_text()));
        }
    }
    format!("1000 subgroups ({ess} essential), {closures} closures")
}

// 9 -------------------------------------------------------------------------

fn covering_grid(c: &mut Checks) -> String {
    let mut m = BTreeMap::new();
    for s in 1..=6usize {
        for tt in 1..=s.min(3) {
            let v = m_fin(s, tt).unwrap();
            let w = min_family(s, tt).unwrap();
            c.check(w.len() == v && is_t_dense(&w, tt).unwrap(), || format!("witness for m_fin({s},{tt})"));
            c.check(lower_bound(s, tt).unwrap() <= v, || format!("lower_bound({s},{tt}) > {v}"));
            if tt == 1 {
                c.check(v == 2, || format!("m_fin({s},1) = {v}"));
            }
            if tt == s {
                c.check(v == 1 << s, || format!("m_fin({s},{s}) = {v}"));
            }
            m.insert((s, tt), v);
        }
    }
    c.check(m[&(3, 2)] == 4, || format!("m_fin(3,2) = {}", m[&(3, 2)]));
    for (&(s, tt), &v) in &m {
        if let Some(&w) = m.get(&(s + 1, tt)) {
            c.check(v <= w, || format!("m_fin({s},{tt}) > m_fin({},{tt})", s + 1));
        }
        if let Some(&w) = m.get(&(s, tt + 1)) {
            c.check(v <= w, || format!("m_fin({s},{tt}) > m_fin({s},{})", tt + 1));
        }
    }
    let grid: Vec<String> = m.iter().map(|((s, tt), v)| format!("({s},{tt})={v}")).collect();
    grid.join(" ")
}

// 10 ------------------------------------------------------------------------

fn locally_connected(c: &mut Checks) -> String {
    let mut n = 0;
    for cx in [AxiomContext::zfc(), AxiomContext::gch(), big_continuum(), ctx("lusin")] {
        let e = Engine::new(&cx);
        let mut kappas: Vec<T> = (1..5).map(T::fin).collect();
        kappas.extend(["c", "aleph(0)", "aleph(1)", "beth(w)", "beth(w1)", "2^beth(w)", "aleph(w+2)", "poww(aleph(w))"].map(t));
        for k in kappas {
            let v = e.admits(&TopologyQuery::new(k.clone(), TopologyClass::LocallyConnectedMinimal)).unwrap();
            c.expect(&format!("{cx}: F({k}) locally connected minimal"), &v, Truth::Refutable);
            n += 1;
        }
    }
    format!("{n} sizes across 4 contexts")
}

fn main() {
    let secs = |s| Some(Duration::from_secs(s));
    let criteria = [
        Criterion { id: 1, name: "worked examples", limit: secs(5), run: worked_examples },
        Criterion { id: 2, name: "minimal-pseudocompact equivalence above c", limit: None, run: mps_equivalence },
        Criterion { id: 3, name: "continuum fork", limit: None, run: continuum_fork },
        Criterion { id: 4, name: "connected minimal pseudocompact at exponential sizes", limit: None, run: connected_exponential },
        Criterion { id: 5, name: "GCH completeness", limit: secs(60), run: gch_completeness },
        Criterion { id: 6, name: "rule-order shuffles", limit: None, run: shuffle_soundness },
        Criterion { id: 7, name: "witness self-verification", limit: None, run: witness_verification },
        Criterion { id: 8, name: "p-adic oracle equivalence", limit: secs(30), run: padic_oracle },
        Criterion { id: 9, name: "covering grid", limit: secs(60), run: covering_grid },
        Criterion { id: 10, name: "no locally connected minimal topologies", limit: None, run: locally_connected },
    ];
    let mut failed = 0;
    for cr in criteria {
        let mut checks = Checks::default();
        let start = Instant::now();
        let summary = (cr.run)(&mut checks);
        let elapsed = start.elapsed();
        let slow = cr.limit.is_some_and(|l| elapsed > l);
        let ok = checks.failures.is_empty() && !slow;
        let limit = cr.limit.map_or(String::new(), |l| format!(", limit {} s", l.as_secs()));
        let mut line = format!(
            "{} [{}] {}: {}/{} checks, {summary} ({:.2} s{limit})",
            if ok { "PASS" } else { "FAIL" },
            cr.id,
            cr.name,
            checks.total - checks.failures.len(),
            checks.total,
            elapsed.as_secs_f64(),
        );
        if slow {
            line.push_str(" -- over the runtime limit");
        }
        for f in checks.failures.iter().take(5) {
            let _ = write!(line, "\n    {f}");
        }
        println!("{line}");
        failed += usize::from(!ok);
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
