//! The rule catalog. Every derivation step names one of these rules, and
//! the catalog is exposed as data so documentation and traces stay in sync.

use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Rule {
    pub name: &'static str,
    /// Mathematical source of the rule.
    pub citation: &'static str,
    pub statement: &'static str,
}

const fn rule(name: &'static str, citation: &'static str, statement: &'static str) -> Rule {
    Rule {
        name,
        citation,
        statement,
    }
}

pub static RULES: &[Rule] = &[
    // normalization
    rule("norm.beth-zero", "definition of the beth hierarchy", "beth(0) = aleph(0)"),
    rule("norm.beth-successor", "definition of the beth hierarchy", "2^beth(a) = beth(a+1), and 2^aleph(0) = beth(1)"),
    rule("norm.finite-power", "finite cardinal arithmetic", "2^n is evaluated for finite n"),
    rule(
        "norm.gch",
        "cardinal arithmetic under GCH",
        "beth(a) = aleph(a), 2^aleph(a) = aleph(a+1), aleph(a)^w = aleph(a) or aleph(a+1) by cofinality, 2^<aleph(a) = aleph(a) at limits",
    ),
    rule("norm.context-equality", "assumption of the axiom context", "an assumed value of the continuum function"),
    rule("norm.pinned", "antisymmetry of cardinal order", "a term provably between the same two bounds equals that bound"),
    rule("norm.sup", "suprema of finite sets of cardinals", "sup lists are flattened and provably dominated items removed"),
    rule("norm.sup-distributes", "monotonicity of cardinal exponentiation", "2^, ^w and 2^< commute with finite maxima"),
    rule(
        "norm.power-omega",
        "Hausdorff formula and basic exponent laws",
        "k^w = c for w <= k <= c; aleph(n)^w = max(aleph(n), c); (2^l)^w = 2^l; for strong limit l, l^w is l or 2^l by cofinality",
    ),
    rule(
        "norm.weak-power",
        "definition of 2^<k",
        "2^<(m+) = 2^m, 2^<k = k for strong limit k, 2^<n = 2^(n-1) for finite n",
    ),
    // comparison
    rule("leq.reflexive", "reflexivity of cardinal order", "k <= k"),
    rule("leq.finite", "finite cardinals precede infinite ones", "finite values compare numerically and lie below every infinite cardinal"),
    rule("leq.sup", "definition of supremum", "sup S <= b iff every item is <= b; a <= sup S if a is below some item"),
    rule("leq.monotone", "monotonicity of cardinal exponentiation", "a <= b implies 2^a <= 2^b, a^w <= b^w, 2^<a <= 2^<b"),
    rule("leq.cantor", "Cantor's theorem: k < 2^k", "a <= b implies a < 2^b"),
    rule("leq.bracket", "basic bounds k <= k^w <= 2^k and k <= 2^<k <= 2^k", "power terms lie between their base and 2^base"),
    rule(
        "leq.scales",
        "aleph(a) <= beth(a), monotonicity of the aleph and beth sequences",
        "comparison of provable positions on the aleph and beth scales",
    ),
    // cofinality
    rule("cf.index", "cf(aleph(a)) = cf(beth(a)) = cf(a) at limits; successor alephs are regular", "cofinality from the index"),
    rule("cf.koenig", "König's theorem: cf(2^k) > k, and cf(k^w) > w", "powers have uncountable cofinality"),
    rule("cf.sup", "the maximum of a finite set is one of its elements", "all items share the cofinality class"),
    // logarithm
    rule("log.below-continuum", "definition of log: log k = min{s : k <= 2^s}", "log k = aleph(0) for infinite k <= c"),
    rule("log.gch", "cardinal arithmetic under GCH", "log aleph(a+1) = aleph(a), log aleph(l) = aleph(l) at limits"),
    rule("log.strong-limit", "definition of strong limit", "log k = k for a strong limit k"),
    rule("log.beth", "definition of the beth hierarchy", "log beth(l+1) = beth(l) for limit l"),
    rule("log.search", "definition of log: log k = min{s : k <= 2^s}", "bounds on log k from candidate exponents"),
    // strong limits and exponential cardinals
    rule("strong-limit.aleph-zero", "finite powers are finite", "aleph(0) is a strong limit"),
    rule("strong-limit.beth-limit", "definition of the beth hierarchy", "beth(l) is a strong limit for limit l"),
    rule("strong-limit.gch", "cardinal arithmetic under GCH", "limit alephs are strong limits under GCH"),
    rule("strong-limit.successor", "successor cardinals: m+ <= 2^m", "successor alephs and beths are not strong limits"),
    rule("strong-limit.exponential", "Cantor's theorem: k < 2^k", "2^s is not a strong limit"),
    rule("strong-limit.below-continuum", "aleph(0) < k <= c rules out strong limits", "an uncountable k <= 2^aleph(0) is not a strong limit"),
    rule("exp.witness", "definition: k is exponential if k = 2^s", "an explicit s with 2^s = k"),
    rule("exp.finite", "finite cardinal arithmetic", "a finite k is exponential iff it is a power of 2"),
    rule("exp.aleph-zero", "2^s is finite or at least c", "aleph(0) is not exponential"),
    rule("exp.strong-limit", "Cantor's theorem: k < 2^k", "a strong limit is not of the form 2^s"),
    rule("weak-power.value", "definition of 2^<k = sup{2^m : m < k}", "value or bracket of 2^<k"),
    // m(s)
    rule(
        "m.bounds",
        "Comfort-Robertson bounds: m(s) >= c, cf(m(s)) > w, log s <= m(s) <= (log s)^w",
        "bounds on the least size of an w-dense subset of {0,1}^s",
    ),
    rule("m.exact", "antisymmetry of cardinal order", "m(s) is pinned when its bounds meet"),
    // minimality
    rule(
        "min.below-continuum",
        "Stoyanov cardinals: Min(k, w) for every w <= k <= c",
        "Min(k, aleph(0)) holds for infinite k <= c",
    ),
    rule(
        "min.exponential",
        "a constant sequence witnesses Min(2^s, s)",
        "k = 2^s implies Min(k, s)",
    ),
    rule(
        "min.closed-form",
        "Min(k,s) iff k <= 2^s and (k = 2^s or (cf s = w and 2^<s <= k))",
        "closed form of the defining condition sup s_n = s, sup 2^(s_n) <= k <= 2^s",
    ),
    rule("stoyanov.finite", "finite cardinals are Stoyanov by convention", "every finite k is Stoyanov"),
    rule("stoyanov.exponential", "an exponential cardinal is Stoyanov", "k = 2^s is Stoyanov"),
    rule(
        "stoyanov.log-cofinality",
        "Stoyanov: for non-exponential k, Min(k,s) iff s = log k and cf(log k) = w",
        "cf(log k) = w makes k Stoyanov; a non-exponential k with cf(log k) > w is not",
    ),
    // pseudocompactness
    rule("ps.characterization", "Dikranjan-Shakhmatov: Ps(k,s) iff m(s) <= k <= 2^s", "Ps from the bounds on m(s)"),
    rule("ps.continuum", "Dikranjan-Shakhmatov: Ps(c, w) and Ps(c, w1) hold", "Ps(c, aleph(0)) and Ps(c, aleph(1))"),
    rule("ps.exponential", "Dikranjan-Shakhmatov: Ps(2^s, s) and Ps(2^s, 2^2^s) hold", "Ps at exponential sizes"),
    rule("ps.omega-power", "Dikranjan-Shakhmatov: s^w = s implies Ps(s, 2^s)", "Ps(k, 2^k) when k^w = k"),
    rule("ps.van-douwen", "van Douwen: every infinite pseudocompact group has size >= c", "Ps(k, s) fails for k < c"),
    rule(
        "ps.log-monotone",
        "m is monotone and Ps(k,s) forces log k <= s, so m(log k) <= k",
        "k below m(log k) refutes Ps(k, s) for every s",
    ),
    // topologies on free abelian groups
    rule("admits.trivial", "the trivial group is compact", "F(0) is trivially compact"),
    rule("admits.finite-rank", "Prodanov: F(n) admits minimal group topologies for finite n", "finitely generated free groups are minimal"),
    rule(
        "admits.minimal",
        "Stoyanov: F(k) admits a minimal group topology iff k is a Stoyanov cardinal",
        "minimal topologies on F(k)",
    ),
    rule(
        "admits.minimal-weight",
        "a minimal abelian group G satisfies Min(|G|, w(G))",
        "a minimal topology of weight s forces Min(k, s)",
    ),
    rule(
        "admits.pseudocompact",
        "Comfort-Remus, Dikranjan-Shakhmatov: F(k) admits a pseudocompact topology of weight s iff Ps(k, s)",
        "pseudocompact topologies on F(k)",
    ),
    rule(
        "admits.least-weight",
        "if Ps(k, s) for some s then Ps(k, log k)",
        "pseudocompact admissibility reduces to the weight log k",
    ),
    rule(
        "admits.minimal-pseudocompact",
        "for k > c: F(k) has a (zero-dimensional) minimal pseudocompact topology iff it has a minimal one and a pseudocompact one; weights can be matched",
        "simultaneous minimal and pseudocompact topologization above c",
    ),
    rule(
        "admits.continuum",
        "F(c) has a minimal pseudocompact (connected or zero-dimensional) topology iff 2^aleph(1) = c",
        "the case k = c is decided by the Lusin hypothesis",
    ),
    rule(
        "admits.metrizable-small",
        "minimal pseudocompact abelian groups of size < 2^aleph(1) are compact metrizable; free abelian groups admit no compact topology",
        "no minimal pseudocompact topology on F(k) for k < 2^aleph(1)",
    ),
    rule(
        "admits.connected",
        "for k > c: F(k) has a connected minimal (pseudocompact) topology of weight s iff k = 2^s",
        "connected minimal topologies above c",
    ),
    rule(
        "admits.connected-small",
        "a connected Tychonoff space with two points has size >= c",
        "no connected group topology on F(k) for k < c",
    ),
    rule(
        "admits.locally-connected",
        "a locally connected minimal torsion-free abelian group is trivial",
        "no free abelian group admits a locally connected minimal topology",
    ),
    rule(
        "admits.embedding",
        "Min(k,s), Ps(k,s) and s >= aleph(1) give a zero-dimensional minimal pseudocompact topology of weight s",
        "weight-s minimal topology from Min and Ps",
    ),
    rule(
        "admits.connected-embedding",
        "for s >= aleph(1), F(2^s) admits a connected minimal pseudocompact topology of weight s",
        "connected minimal pseudocompact topologies at exponential sizes",
    ),
    // finite-rank p-adic subgroups
    rule(
        "padic.rank",
        "closed subgroups of a product over distinct primes split componentwise; full rank leaves a torsion quotient",
        "H is essential in a block iff its projection has full rational rank",
    ),
    rule("padic.density", "topological Nakayama: a subgroup of Z_p^n is dense iff it spans (Z/p)^n", "density checked modulo each prime"),
    rule(
        "padic.minimality",
        "Prodanov-Stephenson: a dense subgroup of a compact abelian group is minimal iff it is essential",
        "minimality from density and essentiality",
    ),
    rule("padic.closure", "completion of a rational basis by standard vectors", "free essential extension keeping H as a direct summand"),
    rule("padic.oracle", "a line through x meets H iff x is in the rational span of H", "randomized check of essentiality"),
    // finite covering arrays
    rule("covering.density", "definition of t-density (finite analogue of w-density)", "every pattern on every t coordinates occurs"),
    rule("covering.search", "exhaustive column search up to row and column symmetry", "least size of a t-dense binary family"),
    rule("covering.bound", "a t-dense family lists all 2^t patterns on a fixed t-set", "m_fin(s,t) >= 2^t"),
    // witnesses
    rule("witness.verify", "defining condition of Min(k,s): sup s_n = s and sup 2^(s_n) <= k <= 2^s", "a witness sequence checked against the definition"),
];

/// Looks a rule up by name.
pub fn lookup(name: &str) -> Option<&'static Rule> {
    RULES.iter().find(|r| r.name == name)
}
