//! Finite posets on dense indices `0..n`, given by their cover relations.
//!
//! The focus is on fences (zig-zag posets) but everything works for an
//! arbitrary poset presented by an irreducible, acyclic cover list. Order
//! ideals are stored as `u64` bitmasks, which caps supported posets at 64
//! elements; that is far beyond anything the orbit machinery can enumerate
//! anyway.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Hard cap on poset size so subsets always fit in a `u64` bitmask.
pub const MAX_ELEMENTS: usize = 64;

/// One step of a fence orientation word: `Up` puts the next element above
/// the current one, `Down` below.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FenceStep {
    Up,
    Down,
}

impl FenceStep {
    pub fn as_char(self) -> char {
        match self {
            FenceStep::Up => 'u',
            FenceStep::Down => 'd',
        }
    }

    pub fn from_char(c: char) -> Result<Self> {
        match c {
            'u' | 'U' => Ok(FenceStep::Up),
            'd' | 'D' => Ok(FenceStep::Down),
            other => Err(Error::Parse(format!(
                "fence word may only contain 'u' and 'd', found {other:?}"
            ))),
        }
    }
}

/// Parse a fence orientation word such as `"udu"`.
pub fn parse_fence_word(s: &str) -> Result<Vec<FenceStep>> {
    s.chars().map(FenceStep::from_char).collect()
}

fn fence_word_string(word: &[FenceStep]) -> String {
    word.iter().map(|s| s.as_char()).collect()
}

/// A finite poset on elements `0..n`.
///
/// `covers` holds the cover relations as pairs `(a, b)` meaning `a` is
/// covered by `b`; the list is kept sorted lexicographically and is required
/// to be acyclic and transitively irreducible. Fences remember their
/// orientation word so fence-specific operations (reading words, reflection
/// involutions) know the left-to-right element order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "PosetRepr", into = "PosetRepr")]
pub struct Poset {
    n: usize,
    covers: Vec<(usize, usize)>,
    fence_word: Option<Vec<FenceStep>>,
    up: Vec<Vec<usize>>,
    down: Vec<Vec<usize>>,
    above: Vec<u64>,
    below: Vec<u64>,
    height_below: Vec<u32>,
    height_above: Vec<u32>,
}

/// Canonical JSON shape: `{"n": .., "covers": [[a,b],..], "fence_word": "udu" | null}`.
#[derive(Serialize, Deserialize)]
struct PosetRepr {
    n: usize,
    covers: Vec<(usize, usize)>,
    fence_word: Option<String>,
}

impl From<Poset> for PosetRepr {
    fn from(p: Poset) -> Self {
        PosetRepr {
            n: p.n,
            covers: p.covers.clone(),
            fence_word: p.fence_word.as_deref().map(fence_word_string),
        }
    }
}

impl TryFrom<PosetRepr> for Poset {
    type Error = Error;

    fn try_from(repr: PosetRepr) -> Result<Self> {
        let poset = Poset::from_covers(repr.n, &repr.covers)?;
        match repr.fence_word {
            None => Ok(poset),
            Some(word) => {
                let steps = parse_fence_word(&word)?;
                let fence = Poset::fence(&steps);
                if fence.n != poset.n || fence.covers != poset.covers {
                    return Err(Error::Parse(format!(
                        "fence word {word:?} does not reproduce the listed covers"
                    )));
                }
                Ok(fence)
            }
        }
    }
}

impl Poset {
    /// Build a fence from its orientation word; a word of length `k` yields
    /// `k + 1` elements laid out left to right.
    pub fn fence(word: &[FenceStep]) -> Poset {
        let n = word.len() + 1;
        let mut covers = Vec::with_capacity(word.len());
        for (i, step) in word.iter().enumerate() {
            match step {
                FenceStep::Up => covers.push((i, i + 1)),
                FenceStep::Down => covers.push((i + 1, i)),
            }
        }
        let mut poset = Poset::from_covers(n, &covers)
            .expect("fence covers are acyclic and irreducible by construction");
        poset.fence_word = Some(word.to_vec());
        poset
    }

    /// The zig-zag `Z_n`: alternating orientation word starting upward.
    pub fn zigzag(n: usize) -> Poset {
        assert!(n >= 1, "zig-zag needs at least one element");
        let word: Vec<FenceStep> = (0..n - 1)
            .map(|i| if i % 2 == 0 { FenceStep::Up } else { FenceStep::Down })
            .collect();
        Poset::fence(&word)
    }

    /// The chain `[n]` as the all-up fence.
    pub fn chain(n: usize) -> Poset {
        assert!(n >= 1, "chain needs at least one element");
        Poset::fence(&vec![FenceStep::Up; n - 1])
    }

    /// Build a poset from an explicit cover list. Rejects cyclic cover
    /// relations and covers already implied by longer chains.
    pub fn from_covers(n: usize, covers: &[(usize, usize)]) -> Result<Poset> {
        if n > MAX_ELEMENTS {
            return Err(Error::TooLarge { n, max: MAX_ELEMENTS });
        }
        let mut sorted: Vec<(usize, usize)> = covers.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        for &(a, b) in &sorted {
            let bad = if a >= n { a } else { b };
            if a >= n || b >= n {
                return Err(Error::IndexOutOfRange { index: bad, n });
            }
            if a == b {
                return Err(Error::Cycle);
            }
        }

        let mut up = vec![Vec::new(); n];
        let mut down = vec![Vec::new(); n];
        for &(a, b) in &sorted {
            up[a].push(b);
            down[b].push(a);
        }

        // Kahn's algorithm: topological order over the cover digraph.
        let mut indeg: Vec<usize> = down.iter().map(Vec::len).collect();
        let mut queue: Vec<usize> = (0..n).filter(|&x| indeg[x] == 0).collect();
        let mut topo = Vec::with_capacity(n);
        while let Some(x) = queue.pop() {
            topo.push(x);
            for &y in &up[x] {
                indeg[y] -= 1;
                if indeg[y] == 0 {
                    queue.push(y);
                }
            }
        }
        if topo.len() != n {
            return Err(Error::Cycle);
        }

        let mut above = vec![0u64; n];
        let mut below = vec![0u64; n];
        for &x in topo.iter().rev() {
            for &y in &up[x] {
                above[x] |= 1 << y | above[y];
            }
        }
        for &x in &topo {
            for &z in &down[x] {
                below[x] |= 1 << z | below[z];
            }
        }

        for &(a, b) in &sorted {
            if above[a] & below[b] != 0 {
                return Err(Error::NotIrreducible(a, b));
            }
        }

        let mut height_below = vec![0u32; n];
        let mut height_above = vec![0u32; n];
        for &x in &topo {
            for &z in &down[x] {
                height_below[x] = height_below[x].max(height_below[z] + 1);
            }
        }
        for &x in topo.iter().rev() {
            for &y in &up[x] {
                height_above[x] = height_above[x].max(height_above[y] + 1);
            }
        }

        Ok(Poset {
            n,
            covers: sorted,
            fence_word: None,
            up,
            down,
            above,
            below,
            height_below,
            height_above,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn covers(&self) -> &[(usize, usize)] {
        &self.covers
    }

    pub fn fence_word(&self) -> Option<&[FenceStep]> {
        self.fence_word.as_deref()
    }

    pub fn is_fence(&self) -> bool {
        self.fence_word.is_some()
    }

    /// Elements covering `x`.
    pub fn up_covers(&self, x: usize) -> &[usize] {
        &self.up[x]
    }

    /// Elements covered by `x`.
    pub fn down_covers(&self, x: usize) -> &[usize] {
        &self.down[x]
    }

    /// Strict order comparison `a < b`.
    pub fn less(&self, a: usize, b: usize) -> bool {
        self.above[a] >> b & 1 == 1
    }

    /// Bitmask of elements strictly below `x`.
    pub fn below_mask(&self, x: usize) -> u64 {
        self.below[x]
    }

    /// Number of elements in the longest chain.
    pub fn longest_chain_len(&self) -> u32 {
        (0..self.n)
            .map(|x| self.height_below[x] + 1)
            .max()
            .unwrap_or(0)
    }

    /// Smallest label element `x` can carry in an increasing labeling.
    pub(crate) fn min_label(&self, x: usize) -> u32 {
        self.height_below[x] + 1
    }

    /// Largest label element `x` can carry with labels drawn from `1..=q`.
    pub(crate) fn max_label(&self, x: usize, q: u32) -> u32 {
        q.saturating_sub(self.height_above[x])
    }

    fn full_mask(&self) -> u64 {
        if self.n == 64 {
            u64::MAX
        } else {
            (1u64 << self.n) - 1
        }
    }

    /// Whether `mask` describes a down-closed subset.
    pub fn is_ideal(&self, mask: u64) -> bool {
        if mask & !self.full_mask() != 0 {
            return false;
        }
        let mut m = mask;
        while m != 0 {
            let x = m.trailing_zeros() as usize;
            if self.below[x] & !mask != 0 {
                return false;
            }
            m &= m - 1;
        }
        true
    }

    /// All order ideals, sorted ascending by bitmask.
    pub fn order_ideals(&self) -> Vec<OrderIdeal> {
        let full = self.full_mask();
        let mut out = Vec::new();
        for mask in 0..=full {
            if self.is_ideal(mask) {
                out.push(OrderIdeal(mask));
            }
            if mask == full {
                break;
            }
        }
        out
    }

    /// Rowmotion: send an ideal to the down-closure of the minimal elements
    /// of its complement.
    pub fn rowmotion(&self, ideal: OrderIdeal) -> Result<OrderIdeal> {
        if !self.is_ideal(ideal.0) {
            return Err(Error::NotAnIdeal);
        }
        let comp = self.full_mask() & !ideal.0;
        let mut out = 0u64;
        let mut m = comp;
        while m != 0 {
            let x = m.trailing_zeros() as usize;
            if self.below[x] & comp == 0 {
                out |= 1 << x | self.below[x];
            }
            m &= m - 1;
        }
        Ok(OrderIdeal(out))
    }

    /// The dual ideal `kappa(P \ I)` with respect to an order-reversing
    /// involution.
    pub fn dual_ideal(&self, kappa: &Involution, ideal: OrderIdeal) -> Result<OrderIdeal> {
        if !self.is_ideal(ideal.0) {
            return Err(Error::NotAnIdeal);
        }
        let comp = self.full_mask() & !ideal.0;
        let mut out = 0u64;
        let mut m = comp;
        while m != 0 {
            let x = m.trailing_zeros() as usize;
            out |= 1 << kappa.apply(x);
            m &= m - 1;
        }
        debug_assert!(self.is_ideal(out), "dual of a complement is an ideal");
        Ok(OrderIdeal(out))
    }

    /// Canonical order-reversing involution.
    ///
    /// Fences first try the left-right reflection `x_i -> x_{n-1-i}`, which
    /// works exactly when the orientation word is a palindrome. Everything
    /// else (and any fence where reflection fails) falls back to an
    /// exhaustive search returning the lexicographically smallest
    /// order-reversing involution, or `NotSelfDual` when none exists.
    pub fn canonical_involution(&self) -> Result<Involution> {
        if self.fence_word.is_some() {
            let map: Vec<usize> = (0..self.n).map(|i| self.n - 1 - i).collect();
            if let Ok(inv) = Involution::new(self, map) {
                return Ok(inv);
            }
        }
        self.search_involution().ok_or(Error::NotSelfDual)
    }

    fn search_involution(&self) -> Option<Involution> {
        let mut map: Vec<Option<usize>> = vec![None; self.n];
        if self.rec_involution(&mut map, 0) {
            let flat: Vec<usize> = map.into_iter().map(Option::unwrap).collect();
            Some(Involution::new(self, flat).expect("search only yields valid involutions"))
        } else {
            None
        }
    }

    /// Covers incident to `x` whose endpoints are both mapped must reverse
    /// to covers.
    fn pair_consistent(&self, map: &[Option<usize>], x: usize) -> bool {
        for &(a, b) in &self.covers {
            if a != x && b != x {
                continue;
            }
            if let (Some(ka), Some(kb)) = (map[a], map[b]) {
                if self.covers.binary_search(&(kb, ka)).is_err() {
                    return false;
                }
            }
        }
        true
    }

    /// Depth-first pairing in index order, trying the smallest image first,
    /// so the first complete assignment is the lexicographically smallest.
    fn rec_involution(&self, map: &mut Vec<Option<usize>>, x: usize) -> bool {
        if x == self.n {
            return true;
        }
        if map[x].is_some() {
            return self.rec_involution(map, x + 1);
        }
        // Every element below x is already assigned, so candidates are the
        // unassigned y >= x (y == x makes x a fixed point).
        for y in x..self.n {
            if map[y].is_some() {
                continue;
            }
            map[x] = Some(y);
            map[y] = Some(x);
            if self.pair_consistent(map, x)
                && self.pair_consistent(map, y)
                && self.rec_involution(map, x + 1)
            {
                return true;
            }
            map[y] = None;
            map[x] = None;
        }
        false
    }
}

/// An order-reversing involution on a poset, stored as a permutation word.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Involution {
    map: Vec<usize>,
}

impl Involution {
    /// Validate that `map` is a self-inverse permutation reversing every
    /// cover relation of `poset`.
    pub fn new(poset: &Poset, map: Vec<usize>) -> Result<Involution> {
        let n = poset.n();
        if map.len() != n {
            return Err(Error::InvalidInvolution(format!(
                "length {} does not match poset size {n}",
                map.len()
            )));
        }
        let distinct: BTreeSet<usize> = map.iter().copied().collect();
        if distinct.len() != n || map.iter().any(|&y| y >= n) {
            return Err(Error::InvalidInvolution("not a permutation".into()));
        }
        for x in 0..n {
            if map[map[x]] != x {
                return Err(Error::InvalidInvolution(format!(
                    "not self-inverse at element {x}"
                )));
            }
        }
        for &(a, b) in poset.covers() {
            if poset.covers().binary_search(&(map[b], map[a])).is_err() {
                return Err(Error::InvalidInvolution(format!(
                    "cover ({a}, {b}) does not reverse to a cover"
                )));
            }
        }
        Ok(Involution { map })
    }

    pub fn apply(&self, x: usize) -> usize {
        self.map[x]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.map
    }
}

/// An order ideal as a bitmask over elements `0..n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OrderIdeal(u64);

impl OrderIdeal {
    pub fn from_mask(mask: u64) -> OrderIdeal {
        OrderIdeal(mask)
    }

    pub fn from_members<I: IntoIterator<Item = usize>>(members: I) -> OrderIdeal {
        let mut mask = 0;
        for x in members {
            mask |= 1 << x;
        }
        OrderIdeal(mask)
    }

    pub fn mask(&self) -> u64 {
        self.0
    }

    pub fn members(&self) -> Vec<usize> {
        let mut out = Vec::new();
        let mut m = self.0;
        while m != 0 {
            out.push(m.trailing_zeros() as usize);
            m &= m - 1;
        }
        out
    }

    pub fn contains(&self, x: usize) -> bool {
        self.0 >> x & 1 == 1
    }

    pub fn cardinality(&self) -> u32 {
        self.0.count_ones()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: usize) -> Poset {
        Poset::zigzag(n)
    }

    #[test]
    fn zigzag_four_has_expected_covers() {
        let p = z(4);
        assert_eq!(p.covers(), &[(0, 1), (2, 1), (2, 3)]);
        assert_eq!(
            p.fence_word(),
            Some([FenceStep::Up, FenceStep::Down, FenceStep::Up].as_slice())
        );
        assert_eq!(p.longest_chain_len(), 2);
    }

    #[test]
    fn chain_is_all_up() {
        let p = Poset::chain(3);
        assert_eq!(p.covers(), &[(0, 1), (1, 2)]);
        assert_eq!(p.longest_chain_len(), 3);
        assert!(p.less(0, 2));
    }

    #[test]
    fn transitive_cover_is_rejected() {
        let err = Poset::from_covers(3, &[(0, 1), (1, 2), (0, 2)]).unwrap_err();
        assert_eq!(err, Error::NotIrreducible(0, 2));
    }

    #[test]
    fn cyclic_covers_are_rejected() {
        let err = Poset::from_covers(3, &[(0, 1), (1, 2), (2, 0)]).unwrap_err();
        assert_eq!(err, Error::Cycle);
    }

    #[test]
    fn out_of_range_cover_is_rejected() {
        let err = Poset::from_covers(2, &[(0, 5)]).unwrap_err();
        assert_eq!(err, Error::IndexOutOfRange { index: 5, n: 2 });
    }

    #[test]
    fn zigzag_three_ideal_count() {
        assert_eq!(z(3).order_ideals().len(), 5);
    }

    #[test]
    fn two_element_antichain_ideal_count() {
        let p = Poset::from_covers(2, &[]).unwrap();
        assert_eq!(p.order_ideals().len(), 4);
    }

    #[test]
    fn rowmotion_on_zigzag_three() {
        let p = z(3);
        let i = OrderIdeal::from_members([0]);
        let out = p.rowmotion(i).unwrap();
        assert_eq!(out.members(), vec![2]);
    }

    #[test]
    fn rowmotion_rejects_non_ideal() {
        let p = z(3);
        // {x2} is not down-closed: x2 covers x1 and x3.
        let err = p.rowmotion(OrderIdeal::from_members([1])).unwrap_err();
        assert_eq!(err, Error::NotAnIdeal);
    }

    #[test]
    fn rowmotion_is_a_bijection_on_ideals() {
        for p in [z(3), z(4), z(5), Poset::chain(4)] {
            let ideals = p.order_ideals();
            let mut images: Vec<u64> = ideals
                .iter()
                .map(|&i| p.rowmotion(i).unwrap().mask())
                .collect();
            images.sort_unstable();
            let masks: Vec<u64> = ideals.iter().map(|i| i.mask()).collect();
            assert_eq!(images, masks);
        }
    }

    #[test]
    fn dual_ideal_on_zigzag_four() {
        let p = z(4);
        let kappa = p.canonical_involution().unwrap();
        let out = p.dual_ideal(&kappa, OrderIdeal::from_members([0])).unwrap();
        assert_eq!(out.members(), vec![0, 1, 2]);
    }

    #[test]
    fn dual_ideal_is_an_involution() {
        let p = z(4);
        let kappa = p.canonical_involution().unwrap();
        for i in p.order_ideals() {
            let twice = p.dual_ideal(&kappa, p.dual_ideal(&kappa, i).unwrap()).unwrap();
            assert_eq!(twice, i);
        }
    }

    #[test]
    fn zigzag_four_reflection_involution() {
        let kappa = z(4).canonical_involution().unwrap();
        assert_eq!(kappa.as_slice(), &[3, 2, 1, 0]);
    }

    #[test]
    fn zigzag_three_is_not_self_dual() {
        assert_eq!(z(3).canonical_involution().unwrap_err(), Error::NotSelfDual);
    }

    #[test]
    fn poset_json_round_trip() {
        let p = z(4);
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(
            s,
            r#"{"n":4,"covers":[[0,1],[2,1],[2,3]],"fence_word":"udu"}"#
        );
        let back: Poset = serde_json::from_str(&s).unwrap();
        assert_eq!(back, p);
    }

    #[test]
    fn poset_json_rejects_inconsistent_fence_word() {
        let s = r#"{"n":4,"covers":[[0,1],[1,2],[2,3]],"fence_word":"udu"}"#;
        assert!(serde_json::from_str::<Poset>(s).is_err());
    }
}
