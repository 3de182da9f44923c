//! Finitely generated subgroups of K = ∏_{p∈S} ℤ_p^{n_p}, handled exactly.
//!
//! Generators are integer vectors, or rational vectors whose p-block
//! entries have denominators prime to p, so they are genuine elements of
//! K. Ranks over ℚ_p then agree with ranks over ℚ and every check is exact
//! linear algebra over [`BigRational`] or ℤ/p.
//!
//! Two notions of essentiality are offered:
//!
//! * [`essential`] is the componentwise rank criterion: the projection of H
//!   onto each block ℤ_p^{n_p} has full rational rank n_p.
//! * [`essential_exact`] decides whether H meets every nonzero closed
//!   subgroup of K. Closed subgroups of K split along the primes, and a
//!   countable subgroup can meet all the uncountably many lines ℤ_p·x of a
//!   block only when n_p = 1, so this holds iff every n_p is 1 and H has
//!   nonzero elements supported on each single block.
//!
//! The criterion implies the exact notion only in special cases; the two
//! agree on one-prime ambients of rank one.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{CoreError, Result};

/// Default coordinate bound for oracle samples.
pub const DEFAULT_SAMPLE_BOUND: i64 = 9;

fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PadicAmbient {
    /// (prime, rank), ascending by prime
    components: Vec<(u64, usize)>,
}

impl PadicAmbient {
    pub fn new(mut components: Vec<(u64, usize)>) -> Result<Self> {
        components.sort();
        for w in components.windows(2) {
            if w[0].0 == w[1].0 {
                return Err(CoreError::MalformedSubgroup(format!("prime {} listed twice", w[0].0)));
            }
        }
        for &(p, n) in &components {
            if !is_prime(p) {
                return Err(CoreError::MalformedSubgroup(format!("{p} is not prime")));
            }
            if n == 0 {
                return Err(CoreError::MalformedSubgroup(format!("rank of the {p}-component must be positive")));
            }
        }
        Ok(PadicAmbient { components })
    }

    pub fn components(&self) -> &[(u64, usize)] {
        &self.components
    }

    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.components.iter().map(|c| c.0)
    }

    pub fn total_rank(&self) -> usize {
        self.components.iter().map(|c| c.1).sum()
    }

    /// Coordinate range of the p-block.
    pub fn block(&self, p: u64) -> Result<std::ops::Range<usize>> {
        let mut start = 0;
        for &(q, n) in &self.components {
            if q == p {
                return Ok(start..start + n);
            }
            start += n;
        }
        Err(CoreError::UnknownPrime(p))
    }
}

impl fmt::Display for PadicAmbient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.components.iter().map(|(p, n)| format!("{p}^{n}")).collect();
        write!(f, "{}", parts.join(" "))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PadicSubgroup {
    ambient: PadicAmbient,
    generators: Vec<Vec<BigRational>>,
}

fn divisible(d: &BigInt, p: u64) -> bool {
    (d % BigInt::from(p)).is_zero()
}

impl PadicSubgroup {
    pub fn new(ambient: PadicAmbient, generators: Vec<Vec<BigRational>>) -> Result<Self> {
        let width = ambient.total_rank();
        for (i, g) in generators.iter().enumerate() {
            if g.len() != width {
                return Err(CoreError::MalformedSubgroup(format!(
                    "generator {} has {} coordinates, ambient has {width}",
                    i + 1,
                    g.len()
                )));
            }
            for &(p, _) in ambient.components() {
                let block = ambient.block(p)?;
                if g[block].iter().any(|x| divisible(x.denom(), p)) {
                    return Err(CoreError::MalformedSubgroup(format!(
                        "generator {} has a denominator divisible by {p} in the {p}-block",
                        i + 1
                    )));
                }
            }
        }
        Ok(PadicSubgroup { ambient, generators })
    }

    pub fn from_integers(ambient: PadicAmbient, generators: Vec<Vec<i64>>) -> Result<Self> {
        let gens = generators
            .into_iter()
            .map(|g| g.into_iter().map(|x| BigRational::from_integer(BigInt::from(x))).collect())
            .collect();
        PadicSubgroup::new(ambient, gens)
    }

    pub fn ambient(&self) -> &PadicAmbient {
        &self.ambient
    }

    pub fn generators(&self) -> &[Vec<BigRational>] {
        &self.generators
    }

    /// Reads the text format: `ambient: 2^2 3^1` then one generator per
    /// line. Entries are integers or fractions `a/b`; `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self> {
        let mut ambient = None;
        let mut gens = Vec::new();
        for (n, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let bad = |msg: String| CoreError::MalformedSubgroup(format!("line {}: {msg}", n + 1));
            if ambient.is_none() {
                let Some(spec) = line.strip_prefix("ambient:") else {
                    return Err(bad("expected 'ambient: p^n ...'".into()));
                };
                let mut comps = Vec::new();
                for part in spec.split_whitespace() {
                    let (p, r) = part.split_once('^').ok_or_else(|| bad(format!("expected p^n, found '{part}'")))?;
                    let p: u64 = p.parse().map_err(|_| bad(format!("bad prime '{p}'")))?;
                    let r: usize = r.parse().map_err(|_| bad(format!("bad rank '{r}'")))?;
                    comps.push((p, r));
                }
                if comps.is_empty() {
                    return Err(bad("ambient lists no components".into()));
                }
                ambient = Some(PadicAmbient::new(comps).map_err(|e| bad(e.to_string()))?);
                continue;
            }
            let mut row = Vec::new();
            for tok in line.split_whitespace() {
                let q: BigRational = match tok.split_once('/') {
                    Some((a, b)) => {
                        let a: BigInt = a.parse().map_err(|_| bad(format!("bad entry '{tok}'")))?;
                        let b: BigInt = b.parse().map_err(|_| bad(format!("bad entry '{tok}'")))?;
                        if b.is_zero() {
                            return Err(bad(format!("zero denominator in '{tok}'")));
                        }
                        BigRational::new(a, b)
                    }
                    None => BigRational::from_integer(tok.parse().map_err(|_| bad(format!("bad entry '{tok}'")))?),
                };
                row.push(q);
            }
            gens.push(row);
        }
        let ambient = ambient.ok_or_else(|| CoreError::MalformedSubgroup("missing 'ambient:' line".into()))?;
        PadicSubgroup::new(ambient, gens)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("ambient: {}\n", self.ambient);
        for g in &self.generators {
            let row: Vec<String> = g.iter().map(|x| x.to_string()).collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
        out
    }

    fn columns(&self, cols: &[usize]) -> Vec<Vec<BigRational>> {
        self.generators
            .iter()
            .map(|g| cols.iter().map(|&c| g[c].clone()).collect())
            .collect()
    }
}

/// Rank over ℚ by Gaussian elimination.
fn rational_rank(mut rows: Vec<Vec<BigRational>>) -> usize {
    let width = rows.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for col in 0..width {
        let Some(pivot) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, pivot);
        let pivot_row = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && !row[col].is_zero() {
                let factor = &row[col] / &pivot_row[col];
                for (x, y) in row[col..width].iter_mut().zip(&pivot_row[col..width]) {
                    *x -= &factor * y;
                }
            }
        }
        rank += 1;
    }
    rank
}

fn mod_p(x: &BigRational, p: u64) -> u64 {
    let pm = BigInt::from(p);
    let num = ((x.numer() % &pm) + &pm) % &pm;
    let den = ((x.denom() % &pm) + &pm) % &pm;
    let num = num.to_u64().expect("reduced");
    let den = den.to_u64().expect("reduced");
    // den is a unit mod p
    let inv = BigUint::from(den).modpow(&BigUint::from(p - 2), &BigUint::from(p));
    (num as u128 * inv.to_u64().expect("reduced") as u128 % p as u128) as u64
}

/// Rank over ℤ/p.
fn rank_mod_p(rows: &[Vec<BigRational>], p: u64) -> usize {
    let mut m: Vec<Vec<u64>> = rows.iter().map(|r| r.iter().map(|x| mod_p(x, p)).collect()).collect();
    let width = m.first().map_or(0, |r| r.len());
    let inv = |a: u64| BigUint::from(a).modpow(&BigUint::from(p - 2), &BigUint::from(p)).to_u64().expect("small");
    let mut rank = 0;
    for col in 0..width {
        let Some(pivot) = (rank..m.len()).find(|&r| m[r][col] != 0) else {
            continue;
        };
        m.swap(rank, pivot);
        let li = inv(m[rank][col]);
        let pivot_row = m[rank].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if r != rank && row[col] != 0 {
                let f = row[col] as u128 * li as u128 % p as u128;
                for (x, &y) in row[col..width].iter_mut().zip(&pivot_row[col..width]) {
                    let sub = f * y as u128 % p as u128;
                    *x = ((*x as u128 + p as u128 - sub) % p as u128) as u64;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Free rank of H (its rank over ℚ).
pub fn free_rank(h: &PadicSubgroup) -> usize {
    rational_rank(h.generators.clone())
}

fn block_rank(h: &PadicSubgroup, p: u64) -> Result<usize> {
    let block: Vec<usize> = h.ambient.block(p)?.collect();
    Ok(rational_rank(h.columns(&block)))
}

/// Rank criterion at p: the projection of H to ℤ_p^{n_p} has rank n_p.
pub fn essential_in_component(h: &PadicSubgroup, p: u64) -> Result<bool> {
    let n = h.ambient.block(p)?.len();
    Ok(block_rank(h, p)? == n)
}

/// Rank criterion at every prime of the ambient.
pub fn essential(h: &PadicSubgroup) -> bool {
    h.ambient
        .primes()
        .all(|p| essential_in_component(h, p).expect("ambient prime"))
}

/// Whether H meets every nonzero closed subgroup of K.
pub fn essential_exact(h: &PadicSubgroup) -> bool {
    let full = free_rank(h);
    let width = h.ambient.total_rank();
    h.ambient.components().iter().all(|&(p, n)| {
        let block = h.ambient.block(p).expect("ambient prime");
        let others: Vec<usize> = (0..width).filter(|c| !block.contains(c)).collect();
        n == 1 && full > rational_rank(h.columns(&others))
    })
}

/// H is dense in K iff its generators span (ℤ/p)^{n_p} modulo every p.
pub fn dense(h: &PadicSubgroup) -> bool {
    h.ambient.components().iter().all(|&(p, n)| {
        let block: Vec<usize> = h.ambient.block(p).expect("ambient prime").collect();
        rank_mod_p(&h.columns(&block), p) == n
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NotMinimalReason {
    NotDense,
    NotEssential,
}

impl fmt::Display for NotMinimalReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            NotMinimalReason::NotDense => "not dense",
            NotMinimalReason::NotEssential => "not essential",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Minimality {
    Minimal,
    NotMinimal(NotMinimalReason),
}

/// Minimality of the subspace topology on H via the criterion "a dense
/// subgroup of a compact abelian group is minimal iff it is essential".
/// Density is checked first; only the first failure is reported.
pub fn minimal_check(h: &PadicSubgroup) -> Minimality {
    if !dense(h) {
        Minimality::NotMinimal(NotMinimalReason::NotDense)
    } else if !essential(h) {
        Minimality::NotMinimal(NotMinimalReason::NotEssential)
    } else {
        Minimality::Minimal
    }
}

/// Extends independent generators by standard basis vectors until every
/// block projection has full rank. The input generators stay first, the
/// added ones lie outside their rational span, and exactly
/// Σ_p (n_p − rank_p) vectors are added.
pub fn essential_closure(h: &PadicSubgroup) -> Result<PadicSubgroup> {
    let count = h.generators.len();
    let rank = free_rank(h);
    if rank < count {
        return Err(CoreError::DependentGenerators { rank, count });
    }
    let width = h.ambient.total_rank();
    let mut out = h.clone();
    for &(p, _) in h.ambient.components() {
        for c in h.ambient.block(p)? {
            let before = block_rank(&out, p)?;
            let mut e = vec![BigRational::zero(); width];
            e[c] = BigRational::one();
            out.generators.push(e);
            if block_rank(&out, p)? == before {
                out.generators.pop();
            }
        }
    }
    Ok(out)
}

/// Randomized check of [`essential`]: samples nonzero integer vectors x with
/// coordinates in `[-bound, bound]` in each block and tests whether the
/// line through x lies in the rational span of H's block projection.
/// Deterministic for a given seed.
pub fn essential_oracle(h: &PadicSubgroup, samples: usize, seed: u64, bound: i64) -> bool {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let blocks: Vec<(Vec<Vec<BigRational>>, usize, usize)> = h
        .ambient
        .components()
        .iter()
        .map(|&(p, n)| {
            let block: Vec<usize> = h.ambient.block(p).expect("ambient prime").collect();
            let proj = h.columns(&block);
            let rank = rational_rank(proj.clone());
            (proj, rank, n)
        })
        .collect();
    for _ in 0..samples.max(1) {
        for (proj, rank, n) in &blocks {
            let x: Vec<i64> = loop {
                let v: Vec<i64> = (0..*n).map(|_| rng.gen_range(-bound..=bound)).collect();
                if v.iter().any(|&a| a != 0) {
                    break v;
                }
            };
            let mut aug = proj.clone();
            aug.push(x.iter().map(|&a| BigRational::from_integer(BigInt::from(a))).collect());
            if rational_rank(aug) > *rank {
                return false;
            }
        }
    }
    true
}

/// Largest absolute numerator or denominator among the generators.
pub fn height(h: &PadicSubgroup) -> BigInt {
    h.generators
        .iter()
        .flatten()
        .flat_map(|x| [x.numer().abs(), x.denom().abs()])
        .max()
        .unwrap_or_else(BigInt::zero)
}
