//! Binary covering arrays as a finite analogue of ω-dense families.
//!
//! A family F ⊆ {0,1}^s is t-dense when every pattern on every t
//! coordinates is matched by some row. [`m_fin`] is the least size of such
//! a family. It is an analogy to the cardinal m(σ) and nothing here says
//! anything about infinite m(σ).

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{CoreError, Result};

/// Label attached to every finite result so it is never read as m(σ).
pub const ANALOGY_NOTE: &str = "finite analogue (binary covering array), not the cardinal m(sigma)";

/// Widest family the bit-packed representation supports.
pub const MAX_WIDTH: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Caps {
    pub max_s: usize,
    pub max_t: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps { max_s: 6, max_t: 3 }
    }
}

/// A duplicate-free set of rows of width s. Row bit j is coordinate j.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinaryFamily {
    width: usize,
    rows: BTreeSet<u64>,
}

impl BinaryFamily {
    pub fn new(width: usize) -> Result<Self> {
        if width > MAX_WIDTH {
            return Err(CoreError::MalformedFamily(format!("width {width} exceeds {MAX_WIDTH}")));
        }
        Ok(BinaryFamily { width, rows: BTreeSet::new() })
    }

    /// The full cube {0,1}^s.
    pub fn cube(width: usize) -> Result<Self> {
        if width >= 32 {
            return Err(CoreError::MalformedFamily(format!("cube of width {width} is too large to list")));
        }
        let mut f = BinaryFamily::new(width)?;
        f.rows.extend(0..1u64 << width);
        Ok(f)
    }

    pub fn from_rows<I, R>(width: usize, rows: I) -> Result<Self>
    where
        I: IntoIterator<Item = R>,
        R: AsRef<[bool]>,
    {
        let mut f = BinaryFamily::new(width)?;
        for (i, r) in rows.into_iter().enumerate() {
            let r = r.as_ref();
            if r.len() != width {
                return Err(CoreError::MalformedFamily(format!(
                    "row {} has length {}, expected {width}",
                    i + 1,
                    r.len()
                )));
            }
            f.rows.insert(r.iter().enumerate().fold(0, |acc, (j, &b)| acc | (u64::from(b) << j)));
        }
        Ok(f)
    }

    /// Reads one row per line of `0`/`1` characters. Blank lines and
    /// `#` comments are skipped; repeated rows collapse.
    pub fn parse(text: &str) -> Result<Self> {
        let mut rows = Vec::new();
        let mut width = None;
        for (n, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let row = line
                .chars()
                .map(|c| match c {
                    '0' => Ok(false),
                    '1' => Ok(true),
                    _ => Err(CoreError::MalformedFamily(format!("line {}: unexpected character '{c}'", n + 1))),
                })
                .collect::<Result<Vec<bool>>>()?;
            match width {
                None => width = Some(row.len()),
                Some(w) if w != row.len() => {
                    return Err(CoreError::MalformedFamily(format!(
                        "line {}: row has length {}, expected {w}",
                        n + 1,
                        row.len()
                    )))
                }
                _ => {}
            }
            rows.push(row);
        }
        let width = width.ok_or_else(|| CoreError::MalformedFamily("no rows".into()))?;
        BinaryFamily::from_rows(width, rows)
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn insert(&mut self, row: &[bool]) -> Result<bool> {
        if row.len() != self.width {
            return Err(CoreError::MalformedFamily(format!(
                "row has length {}, expected {}",
                row.len(),
                self.width
            )));
        }
        Ok(self.rows.insert(row.iter().enumerate().fold(0, |acc, (j, &b)| acc | (u64::from(b) << j))))
    }

    pub fn rows(&self) -> impl Iterator<Item = Vec<bool>> + '_ {
        self.rows.iter().map(|&r| (0..self.width).map(|j| r >> j & 1 == 1).collect())
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for r in self.rows() {
            out.extend(r.iter().map(|&b| if b { '1' } else { '0' }));
            out.push('\n');
        }
        out
    }
}

impl fmt::Display for BinaryFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .rows()
            .map(|r| r.iter().map(|&b| if b { '1' } else { '0' }).collect())
            .collect();
        write!(f, "{{{}}}", rows.join(","))
    }
}

fn check_strength(s: usize, t: usize) -> Result<()> {
    if t == 0 || t > s {
        Err(CoreError::StrengthOutOfRange { s, t })
    } else {
        Ok(())
    }
}

/// Calls `f` on every k-subset of 0..n, as a sorted index list.
fn for_each_subset(n: usize, k: usize, f: &mut impl FnMut(&[usize]) -> bool) -> bool {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, f: &mut impl FnMut(&[usize]) -> bool) -> bool {
        if cur.len() == k {
            return f(cur);
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            if !go(i + 1, n, k, cur, f) {
                return false;
            }
            cur.pop();
        }
        true
    }
    go(0, n, k, &mut Vec::with_capacity(k), f)
}

/// Whether every pattern on every t coordinates appears in some row.
pub fn is_t_dense(family: &BinaryFamily, t: usize) -> Result<bool> {
    check_strength(family.width, t)?;
    Ok(for_each_subset(family.width, t, &mut |cols| {
        let mut seen = vec![false; 1 << t];
        for &r in &family.rows {
            let pattern = cols.iter().enumerate().fold(0, |acc, (i, &c)| acc | ((r >> c & 1) as usize) << i);
            seen[pattern] = true;
        }
        seen.iter().all(|&b| b)
    }))
}

/// Lower bound on [`m_fin`]: any t-dense family lists all 2^t patterns on
/// a fixed t-set of coordinates.
pub fn lower_bound(s: usize, t: usize) -> Result<usize> {
    check_strength(s, t)?;
    Ok(1 << t)
}

pub fn m_fin(s: usize, t: usize) -> Result<usize> {
    m_fin_with_caps(s, t, Caps::default())
}

pub fn m_fin_with_caps(s: usize, t: usize, caps: Caps) -> Result<usize> {
    Ok(min_family_with_caps(s, t, caps)?.len())
}

/// A smallest t-dense family of width s, found by exhaustive search.
pub fn min_family(s: usize, t: usize) -> Result<BinaryFamily> {
    min_family_with_caps(s, t, Caps::default())
}

pub fn min_family_with_caps(s: usize, t: usize, caps: Caps) -> Result<BinaryFamily> {
    check_strength(s, t)?;
    if s > caps.max_s || t > caps.max_t {
        return Err(CoreError::CapExceeded {
            s,
            t,
            max_s: caps.max_s,
            max_t: caps.max_t,
        });
    }
    let mut n = lower_bound(s, t)?;
    loop {
        if n <= 64 {
            if let Some(columns) = ColumnSearch::new(n, s, t).run() {
                let rows = (0..n).map(|i| columns.iter().map(|c| c >> i & 1 == 1).collect::<Vec<bool>>());
                let family = BinaryFamily::from_rows(s, rows)?;
                debug_assert_eq!(family.len(), n);
                debug_assert!(is_t_dense(&family, t)?);
                return Ok(family);
            }
        } else {
            // The full cube is always t-dense, so the loop ends by 2^s.
            unreachable!("search exceeded 64 rows");
        }
        n += 1;
    }
}

/// Searches for an n×s array, column by column, whose rows form a t-dense
/// family. Columns are n-bit masks (bit i is row i).
///
/// Symmetries removed: rows are permuted so column 0 is all zeros then
/// all ones and column 1 is sorted inside those two blocks; columns from 2
/// on are complemented so row 0 reads 0, and listed in nondecreasing order
/// (strictly increasing once t ≥ 2).
/// Column 0 is taken to have the fewest ones among all columns after
/// complementing each column to at most n/2 ones.
struct ColumnSearch {
    n: usize,
    s: usize,
    t: usize,
    full: u64,
}

impl ColumnSearch {
    fn new(n: usize, s: usize, t: usize) -> Self {
        let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        ColumnSearch { n, s, t, full }
    }

    fn balance(&self, m: u64) -> usize {
        let w = m.count_ones() as usize;
        w.min(self.n - w)
    }

    /// Whether the columns in `cols` see every pattern.
    fn covers(&self, cols: &[u64]) -> bool {
        (0..1u32 << cols.len()).all(|p| {
            let hit = cols.iter().enumerate().fold(self.full, |acc, (i, &c)| {
                acc & if p >> i & 1 == 1 { c } else { !c & self.full }
            });
            hit != 0
        })
    }

    /// Whether adding `m` keeps every t-subset containing it covered, given
    /// the chosen columns (which already cover their own t-subsets).
    fn compatible(&self, chosen: &[u64], m: u64) -> bool {
        let k = self.t.min(chosen.len() + 1);
        let mut buf = Vec::with_capacity(k);
        for_each_subset(chosen.len(), k - 1, &mut |idx| {
            buf.clear();
            buf.extend(idx.iter().map(|&i| chosen[i]));
            buf.push(m);
            self.covers(&buf)
        })
    }

    fn run(&self) -> Option<Vec<u64>> {
        let (n, s) = (self.n, self.s);
        let min_ones = 1usize << (self.t - 1);
        if 2 * min_ones > n {
            return None;
        }
        for w0 in min_ones..=n / 2 {
            let c0 = ((1u64 << w0) - 1) << (n - w0);
            if s == 1 {
                return Some(vec![c0]);
            }
            let z0 = n - w0;
            // column 1: `a` zeros then ones in block 0, `b` zeros then ones in block 1
            for a in 0..=z0 {
                for b in 0..=w0 {
                    let ones0 = ((1u64 << (z0 - a)) - 1) << a;
                    let ones1 = ((1u64 << (w0 - b)) - 1) << (z0 + b);
                    let c1 = ones0 | ones1;
                    if self.balance(c1) < w0 || !self.compatible(&[c0], c1) {
                        continue;
                    }
                    let chosen = vec![c0, c1];
                    if s == 2 {
                        return Some(chosen);
                    }
                    let candidates: Vec<u64> = (0..1u64 << (n - 1))
                        .map(|m| m << 1)
                        .filter(|&m| self.balance(m) >= w0 && self.compatible(&chosen, m))
                        .collect();
                    if let Some(found) = self.extend(chosen, &candidates) {
                        return Some(found);
                    }
                }
            }
        }
        None
    }

    fn extend(&self, chosen: Vec<u64>, candidates: &[u64]) -> Option<Vec<u64>> {
        if chosen.len() == self.s {
            return Some(chosen);
        }
        let need = self.s - chosen.len();
        for (i, &m) in candidates.iter().enumerate() {
            if self.t > 1 && candidates.len() - i < need {
                break;
            }
            let mut next = chosen.clone();
            next.push(m);
            let rest: Vec<u64> = if next.len() == self.s {
                Vec::new()
            } else {
                // equal columns can never be 2-dense, but are harmless at t = 1
                let from = if self.t == 1 { i } else { i + 1 };
                candidates[from..]
                    .iter()
                    .copied()
                    .filter(|&c| self.compatible_with_last(&next, c))
                    .collect()
            };
            if let Some(found) = self.extend(next, &rest) {
                return Some(found);
            }
        }
        None
    }

    /// Like [`Self::compatible`] but only checks subsets containing the most
    /// recently chosen column; the others were checked when filtering.
    fn compatible_with_last(&self, chosen: &[u64], m: u64) -> bool {
        let (last, earlier) = chosen.split_last().expect("nonempty");
        if self.t == 1 {
            return true;
        }
        let k = self.t.min(chosen.len() + 1);
        let mut buf = Vec::with_capacity(k);
        for_each_subset(earlier.len(), k - 2, &mut |idx| {
            buf.clear();
            buf.extend(idx.iter().map(|&i| earlier[i]));
            buf.push(*last);
            buf.push(m);
            self.covers(&buf)
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fam(text: &str) -> BinaryFamily {
        BinaryFamily::parse(text).unwrap()
    }

    #[test]
    fn density_examples() {
        assert!(is_t_dense(&BinaryFamily::cube(3).unwrap(), 3).unwrap());
        assert!(is_t_dense(&fam("000\n111"), 1).unwrap());
        assert!(is_t_dense(&fam("000\n011\n101\n110"), 2).unwrap());
        assert!(!is_t_dense(&fam("000\n011\n101\n110"), 3).unwrap());
        assert!(matches!(is_t_dense(&fam("000"), 4), Err(CoreError::StrengthOutOfRange { s: 3, t: 4 })));
        assert!(is_t_dense(&fam("000"), 0).is_err());
    }

    #[test]
    fn parse_rejects_bad_rows_and_collapses_duplicates() {
        assert!(BinaryFamily::parse("01\n011").is_err());
        assert!(BinaryFamily::parse("0x1").is_err());
        assert!(BinaryFamily::parse("").is_err());
        let f = fam("01\n01\n10");
        assert_eq!(f.len(), 2);
        assert_eq!(f.to_text(), "10\n01\n");
    }

    #[test]
    fn small_minima() {
        assert_eq!(m_fin(3, 2).unwrap(), 4);
        for s in 1..=6 {
            assert_eq!(m_fin(s, 1).unwrap(), 2);
        }
        for s in 1..=3 {
            assert_eq!(m_fin(s, s).unwrap(), 1 << s);
        }
        assert_eq!(m_fin(4, 2).unwrap(), 5);
        let w = min_family(3, 2).unwrap();
        assert!(is_t_dense(&w, 2).unwrap());
    }

    #[test]
    fn caps_are_enforced() {
        assert!(matches!(m_fin(7, 2), Err(CoreError::CapExceeded { s: 7, t: 2, max_s: 6, max_t: 3 })));
        assert!(matches!(m_fin(4, 4), Err(CoreError::CapExceeded { .. })));
        assert_eq!(m_fin_with_caps(4, 4, Caps { max_s: 4, max_t: 4 }).unwrap(), 16);
    }

    #[test]
    fn lower_bound_examples() {
        assert_eq!(lower_bound(5, 2).unwrap(), 4);
        assert_eq!(lower_bound(3, 3).unwrap(), 8);
        assert_eq!(lower_bound(6, 3).unwrap(), 8);
    }
}
