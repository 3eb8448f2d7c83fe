//! Increasing labelings of a poset and their content words.
//!
//! An increasing labeling assigns every element a label in `1..=q` so that
//! labels strictly increase along the order. The content word records which
//! labels occur; deflation collapses the used labels onto an initial
//! segment, and inflation undoes it given a content word. Together they
//! decompose a labeling into a packed core plus a binary word, which is
//! what the orbit-size machinery in `dynamics` runs on.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::str::FromStr;
use std::sync::Arc;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poset::Poset;

/// An increasing labeling `f: P -> {1..q}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(try_from = "LabelingRepr", into = "LabelingRepr")]
pub struct IncLabeling {
    poset: Arc<Poset>,
    q: u32,
    labels: Vec<u32>,
}

#[derive(Serialize, Deserialize)]
struct LabelingRepr {
    poset: Poset,
    q: u32,
    labels: Vec<u32>,
}

impl From<IncLabeling> for LabelingRepr {
    fn from(f: IncLabeling) -> Self {
        LabelingRepr {
            poset: (*f.poset).clone(),
            q: f.q,
            labels: f.labels.clone(),
        }
    }
}

impl TryFrom<LabelingRepr> for IncLabeling {
    type Error = Error;

    fn try_from(repr: LabelingRepr) -> Result<Self> {
        IncLabeling::new(Arc::new(repr.poset), repr.q, repr.labels)
    }
}

impl PartialEq for IncLabeling {
    fn eq(&self, other: &Self) -> bool {
        self.q == other.q
            && self.labels == other.labels
            && (Arc::ptr_eq(&self.poset, &other.poset) || self.poset == other.poset)
    }
}

impl Eq for IncLabeling {}

impl Hash for IncLabeling {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.q.hash(state);
        self.labels.hash(state);
        self.poset.n().hash(state);
        self.poset.covers().hash(state);
    }
}

impl PartialOrd for IncLabeling {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for IncLabeling {
    /// Labels first (the order orbit canonicalization uses), then `q`, then
    /// the poset structure so the ordering stays total across mixed sets.
    fn cmp(&self, other: &Self) -> Ordering {
        self.labels
            .cmp(&other.labels)
            .then(self.q.cmp(&other.q))
            .then_with(|| {
                if Arc::ptr_eq(&self.poset, &other.poset) {
                    return Ordering::Equal;
                }
                self.poset
                    .n()
                    .cmp(&other.poset.n())
                    .then_with(|| self.poset.covers().cmp(other.poset.covers()))
            })
    }
}

impl fmt::Display for IncLabeling {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.labels.iter().map(u32::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl IncLabeling {
    /// Validate label range and every cover inequality.
    pub fn new(poset: Arc<Poset>, q: u32, labels: Vec<u32>) -> Result<IncLabeling> {
        if labels.len() != poset.n() {
            return Err(Error::ArityMismatch {
                expected: poset.n(),
                got: labels.len(),
            });
        }
        for (x, &l) in labels.iter().enumerate() {
            if l < 1 || l > q {
                return Err(Error::LabelOutOfRange { element: x, label: l, q });
            }
        }
        for &(a, b) in poset.covers() {
            if labels[a] >= labels[b] {
                return Err(Error::CoverViolated {
                    a,
                    b,
                    la: labels[a],
                    lb: labels[b],
                });
            }
        }
        Ok(IncLabeling { poset, q, labels })
    }

    pub fn poset(&self) -> &Arc<Poset> {
        &self.poset
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn labels(&self) -> &[u32] {
        &self.labels
    }

    pub fn label(&self, x: usize) -> u32 {
        self.labels[x]
    }

    /// The content word: bit `i` (0-indexed) records whether label `i + 1`
    /// occurs.
    pub fn content(&self) -> ContentWord {
        let mut bits = vec![false; self.q as usize];
        for &l in &self.labels {
            bits[(l - 1) as usize] = true;
        }
        ContentWord { bits }
    }

    /// Whether every label `1..=q` is used.
    pub fn is_packed(&self) -> bool {
        self.content().ones_count() == self.q as usize
    }

    /// Whether the labels form a bijection onto `{1..n}`.
    pub fn is_linear_extension(&self) -> bool {
        let n = self.poset.n() as u32;
        let mut seen = vec![false; n as usize];
        for &l in &self.labels {
            if l > n || seen[(l - 1) as usize] {
                return false;
            }
            seen[(l - 1) as usize] = true;
        }
        true
    }

    /// Collapse the used labels onto `1..=r` (r = number of used labels).
    pub fn deflate(&self) -> IncLabeling {
        let mut used: Vec<u32> = self.labels.to_vec();
        used.sort_unstable();
        used.dedup();
        let rank = |l: u32| used.binary_search(&l).unwrap() as u32 + 1;
        let labels: Vec<u32> = self.labels.iter().map(|&l| rank(l)).collect();
        IncLabeling {
            poset: Arc::clone(&self.poset),
            q: used.len() as u32,
            labels,
        }
    }

    /// Rebuild a labeling from a packed one and a content word with matching
    /// arity: label `j` of `packed` becomes the position of the `j`-th one.
    pub fn inflate(packed: &IncLabeling, content: &ContentWord) -> Result<IncLabeling> {
        if !packed.is_packed() {
            return Err(Error::NotPacked);
        }
        let ones = content.ones_positions();
        if ones.len() != packed.q as usize {
            return Err(Error::ArityMismatch {
                expected: packed.q as usize,
                got: ones.len(),
            });
        }
        let labels: Vec<u32> = packed
            .labels
            .iter()
            .map(|&l| ones[(l - 1) as usize] as u32 + 1)
            .collect();
        Ok(IncLabeling {
            poset: Arc::clone(&packed.poset),
            q: content.len() as u32,
            labels,
        })
    }

    /// Labels read left to right along a fence.
    pub fn reading_word(&self) -> Result<Vec<u32>> {
        if !self.poset.is_fence() {
            return Err(Error::NotAFence);
        }
        Ok(self.labels.clone())
    }

    /// Pattern containment in the reading word, with repeated pattern values
    /// allowed: a witness subsequence must reproduce the pattern's strict
    /// comparisons and its ties exactly.
    pub fn contains_pattern(&self, pattern: &[u32]) -> Result<bool> {
        let word = self.reading_word()?;
        Ok(contains_pattern_word(&word, pattern))
    }

    /// Balance predicate for labelings of the four-element zig-zag: with
    /// sorted labels w <= x <= y <= z, the labeling is balanced when
    /// x - w = z - y or w - z + q = y - x.
    pub fn is_balanced(&self) -> Result<bool> {
        if !is_zigzag_four(&self.poset) {
            return Err(Error::WrongPoset);
        }
        let mut s: Vec<i64> = self.labels.iter().map(|&l| l as i64).collect();
        s.sort_unstable();
        let (w, x, y, z) = (s[0], s[1], s[2], s[3]);
        let q = self.q as i64;
        Ok(x - w == z - y || w - z + q == y - x)
    }
}

pub(crate) fn is_zigzag_four(poset: &Poset) -> bool {
    poset.n() == 4 && poset.covers() == [(0, 1), (2, 1), (2, 3)]
}

pub(crate) fn contains_pattern_word(word: &[u32], pattern: &[u32]) -> bool {
    fn rec(word: &[u32], pattern: &[u32], chosen: &mut Vec<usize>) -> bool {
        let k = chosen.len();
        if k == pattern.len() {
            return true;
        }
        let start = chosen.last().map_or(0, |&i| i + 1);
        for pos in start..word.len() {
            if word.len() - pos < pattern.len() - k {
                break;
            }
            let consistent = (0..k).all(|j| {
                pattern[j].cmp(&pattern[k]) == word[chosen[j]].cmp(&word[pos])
            });
            if consistent {
                chosen.push(pos);
                if rec(word, pattern, chosen) {
                    return true;
                }
                chosen.pop();
            }
        }
        false
    }
    if pattern.is_empty() {
        return true;
    }
    rec(word, pattern, &mut Vec::with_capacity(pattern.len()))
}

/// All increasing labelings of `poset` with labels in `1..=q`, in
/// lexicographic order of the label sequence.
pub fn enumerate_inc(poset: &Arc<Poset>, q: u32) -> Vec<IncLabeling> {
    let n = poset.n();
    let mut out = Vec::new();
    let mut labels = vec![0u32; n];

    fn rec(
        poset: &Arc<Poset>,
        q: u32,
        labels: &mut Vec<u32>,
        x: usize,
        out: &mut Vec<IncLabeling>,
    ) {
        let n = poset.n();
        if x == n {
            out.push(IncLabeling {
                poset: Arc::clone(poset),
                q,
                labels: labels.clone(),
            });
            return;
        }
        let lo = poset.min_label(x);
        let hi = poset.max_label(x, q);
        'candidate: for l in lo..=hi {
            for &z in poset.down_covers(x) {
                if z < x && labels[z] >= l {
                    continue 'candidate;
                }
            }
            for &y in poset.up_covers(x) {
                if y < x && labels[y] <= l {
                    continue 'candidate;
                }
            }
            labels[x] = l;
            rec(poset, q, labels, x + 1, out);
        }
    }

    rec(poset, q, &mut labels, 0, &mut out);
    out
}

/// All packed labelings: for each `r` from the longest chain length to `n`,
/// the labelings in `Inc^r` that use every label. Ordered by `r`, then
/// lexicographically.
pub fn enumerate_packed(poset: &Arc<Poset>) -> Vec<IncLabeling> {
    let lo = poset.longest_chain_len().max(1);
    let hi = poset.n() as u32;
    let mut out = Vec::new();
    for r in lo..=hi {
        out.extend(enumerate_inc(poset, r).into_iter().filter(IncLabeling::is_packed));
    }
    out
}

/// A random increasing labeling, drawn by walking a linear extension and
/// giving each element a uniform label from its feasible interval. Every
/// labeling of `Inc^q` has positive probability but the distribution is not
/// uniform; the draw is deterministic for a fixed RNG state. Errors when
/// `Inc^q(P)` is empty.
pub fn sample_inc<R: Rng>(poset: &Arc<Poset>, q: u32, rng: &mut R) -> Result<IncLabeling> {
    if poset.longest_chain_len() > q {
        return Err(Error::EmptySet);
    }
    let n = poset.n();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&x| (poset.min_label(x), x));
    let mut labels = vec![0u32; n];
    for &x in &order {
        let mut lo = poset.min_label(x);
        for &z in poset.down_covers(x) {
            lo = lo.max(labels[z] + 1);
        }
        labels[x] = rng.random_range(lo..=poset.max_label(x, q));
    }
    IncLabeling::new(Arc::clone(poset), q, labels)
}

/// A binary content word of length `q`; bit `i` says whether label `i + 1`
/// occurs.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct ContentWord {
    bits: Vec<bool>,
}

impl From<ContentWord> for String {
    fn from(c: ContentWord) -> String {
        c.to_string()
    }
}

impl TryFrom<String> for ContentWord {
    type Error = Error;

    fn try_from(s: String) -> Result<ContentWord> {
        s.parse()
    }
}

impl fmt::Display for ContentWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.bits {
            write!(f, "{}", if b { '1' } else { '0' })?;
        }
        Ok(())
    }
}

impl FromStr for ContentWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<ContentWord> {
        let bits: Result<Vec<bool>> = s
            .chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(Error::Parse(format!(
                    "content word may only contain '0' and '1', found {other:?}"
                ))),
            })
            .collect();
        Ok(ContentWord { bits: bits? })
    }
}

impl ContentWord {
    pub fn from_bits(bits: Vec<bool>) -> ContentWord {
        ContentWord { bits }
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    /// Bit for label `i + 1`.
    pub fn bit(&self, i: usize) -> bool {
        self.bits[i]
    }

    pub fn ones_count(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }

    /// 0-indexed positions of the ones.
    pub fn ones_positions(&self) -> Vec<usize> {
        (0..self.bits.len()).filter(|&i| self.bits[i]).collect()
    }

    /// Leftward cyclic shift by `k`: position `i` takes the old `i + k`.
    pub fn rotated(&self, k: usize) -> ContentWord {
        let q = self.bits.len();
        if q == 0 {
            return self.clone();
        }
        let k = k % q;
        let mut bits = self.bits.clone();
        bits.rotate_left(k);
        ContentWord { bits }
    }

    pub fn reversed(&self) -> ContentWord {
        let mut bits = self.bits.clone();
        bits.reverse();
        ContentWord { bits }
    }

    /// Smallest period: the least divisor `l` of the length such that
    /// rotating by `l` fixes the word. Only divisors can be periods of a
    /// cyclic binary word, so only divisors are tried.
    pub fn period(&self) -> usize {
        let q = self.bits.len();
        for l in 1..=q {
            if q % l == 0 && self.rotated(l) == *self {
                return l;
            }
        }
        q.max(1)
    }

    /// Cyclic runs of zeros preceding each one, anchored at the trailing
    /// one when the word ends in 1 and at the last one otherwise. Entry `j`
    /// counts the zeros between the anchor's `j`-th and `j+1`-st ones read
    /// cyclically, so the entries plus the number of ones sum to the length.
    pub fn gap_profile(&self) -> Vec<u32> {
        let q = self.bits.len();
        let ones = self.ones_positions();
        let r = ones.len();
        if r == 0 {
            return Vec::new();
        }
        let anchor = *ones.last().unwrap();
        let mut profile = Vec::with_capacity(r);
        let mut gap = 0u32;
        let mut pos = (anchor + 1) % q;
        loop {
            if self.bits[pos] {
                profile.push(gap);
                gap = 0;
                if pos == anchor {
                    break;
                }
            } else {
                gap += 1;
            }
            pos = (pos + 1) % q;
        }
        profile
    }
}
