//! Promotion, inverse promotion, the swap map, and orbit machinery.
//!
//! Promotion is implemented literally as its slide pipeline: replace the
//! 1-labels by boxes, slide boxes upward through labels 2..=q one label
//! value at a time, relabel the remaining boxes q+1, and decrement
//! everything. Each slide is a simultaneous update: a box takes label `i`
//! when some element covering it carries `i`, and an element labeled `i`
//! becomes a box when some element it covers is one. A labeling without
//! 1-labels therefore comes out globally decremented.
//!
//! Inverse promotion runs the mirrored pipeline downward (increment, box
//! the old q-labels, slide boxes down through q..=2, boxes become 1-labels)
//! rather than walking an orbit to its end.

use std::collections::BTreeSet;
use std::sync::Arc;

use num_integer::Integer;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::labeling::{enumerate_inc, enumerate_packed, IncLabeling};
use crate::poset::{Involution, Poset};

/// Default guard on orbit walks that fail to return.
pub const DEFAULT_STEP_CAP: u64 = 10_000_000;

/// Current step cap: the `ORBITMESY_STEP_CAP` environment variable when set
/// to a positive integer, otherwise [`DEFAULT_STEP_CAP`].
pub fn step_cap() -> u64 {
    std::env::var("ORBITMESY_STEP_CAP")
        .ok()
        .and_then(|s| s.parse().ok())
        .filter(|&cap| cap > 0)
        .unwrap_or(DEFAULT_STEP_CAP)
}

/// One promotion step.
pub fn promote(f: &IncLabeling) -> IncLabeling {
    let poset = f.poset();
    let q = f.q();
    let n = poset.n();
    // `None` plays the box.
    let mut g: Vec<Option<u32>> = f
        .labels()
        .iter()
        .map(|&l| if l == 1 { None } else { Some(l) })
        .collect();
    let mut next = g.clone();
    for i in 2..=q {
        for x in 0..n {
            next[x] = if g[x].is_none() && poset.up_covers(x).iter().any(|&y| g[y] == Some(i)) {
                Some(i)
            } else if g[x] == Some(i) && poset.down_covers(x).iter().any(|&z| g[z].is_none()) {
                None
            } else {
                g[x]
            };
        }
        std::mem::swap(&mut g, &mut next);
    }
    let labels: Vec<u32> = g.iter().map(|o| o.unwrap_or(q + 1) - 1).collect();
    IncLabeling::new(Arc::clone(poset), q, labels)
        .expect("promotion preserves increasing labelings")
}

/// One inverse promotion step, via the mirrored downward slides.
pub fn promote_inverse(f: &IncLabeling) -> IncLabeling {
    let poset = f.poset();
    let q = f.q();
    let n = poset.n();
    let mut g: Vec<Option<u32>> = f
        .labels()
        .iter()
        .map(|&l| if l == q { None } else { Some(l + 1) })
        .collect();
    let mut next = g.clone();
    for i in (2..=q).rev() {
        for x in 0..n {
            next[x] = if g[x].is_none() && poset.down_covers(x).iter().any(|&z| g[z] == Some(i)) {
                Some(i)
            } else if g[x] == Some(i) && poset.up_covers(x).iter().any(|&y| g[y].is_none()) {
                None
            } else {
                g[x]
            };
        }
        std::mem::swap(&mut g, &mut next);
    }
    let labels: Vec<u32> = g.iter().map(|o| o.unwrap_or(1)).collect();
    IncLabeling::new(Arc::clone(poset), q, labels)
        .expect("inverse promotion preserves increasing labelings")
}

/// The swap map `f -> q + 1 - f(kappa(x))` for an order-reversing
/// involution `kappa`.
pub fn swap(f: &IncLabeling, kappa: &Involution) -> IncLabeling {
    let q = f.q();
    let labels: Vec<u32> = (0..f.poset().n())
        .map(|x| q + 1 - f.label(kappa.apply(x)))
        .collect();
    IncLabeling::new(Arc::clone(f.poset()), q, labels)
        .expect("swap of an increasing labeling is increasing")
}

/// Which sliding subposet to compute.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SlideDirection {
    Forward,
    Inverse,
}

/// The layered set of elements moved by the slides of one (inverse)
/// promotion step.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SlidingSubposet {
    layers: Vec<Vec<usize>>,
}

impl SlidingSubposet {
    pub fn layers(&self) -> &[Vec<usize>] {
        &self.layers
    }

    /// Sorted union of all layers.
    pub fn elements(&self) -> Vec<usize> {
        let mut out: Vec<usize> = self.layers.iter().flatten().copied().collect();
        out.sort_unstable();
        out
    }

    pub fn is_empty(&self) -> bool {
        self.layers.is_empty()
    }
}

/// Forward: the first layer holds the 1-labeled elements, and each later
/// layer holds the not-yet-collected elements carrying the minimum label
/// among the covers of some earlier-layer element. Inverse is the order
/// dual (start from the q-labels, take maxima among lower covers).
pub fn sliding_subposet(f: &IncLabeling, dir: SlideDirection) -> SlidingSubposet {
    let poset = f.poset();
    let n = poset.n();
    let target = match dir {
        SlideDirection::Forward => 1,
        SlideDirection::Inverse => f.q(),
    };
    let first: Vec<usize> = (0..n).filter(|&x| f.label(x) == target).collect();
    if first.is_empty() {
        return SlidingSubposet { layers: Vec::new() };
    }
    let mut collected = vec![false; n];
    for &x in &first {
        collected[x] = true;
    }
    let mut layers = vec![first];
    loop {
        let mut next = BTreeSet::new();
        for y in (0..n).filter(|&y| collected[y]) {
            let frontier = match dir {
                SlideDirection::Forward => poset.up_covers(y),
                SlideDirection::Inverse => poset.down_covers(y),
            };
            if frontier.is_empty() {
                continue;
            }
            let labels = frontier.iter().map(|&z| f.label(z));
            let pick = match dir {
                SlideDirection::Forward => labels.min().unwrap(),
                SlideDirection::Inverse => labels.max().unwrap(),
            };
            for &x in frontier {
                if f.label(x) == pick && !collected[x] {
                    next.insert(x);
                }
            }
        }
        if next.is_empty() {
            break;
        }
        for &x in &next {
            collected[x] = true;
        }
        layers.push(next.into_iter().collect());
    }
    SlidingSubposet { layers }
}

/// A cyclic orbit of some action. States are pairwise distinct, stored in
/// application order starting from the lexicographically smallest state.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Orbit<S> {
    action: String,
    states: Vec<S>,
}

impl<S: Clone + Ord> Orbit<S> {
    pub fn action(&self) -> &str {
        &self.action
    }

    pub fn states(&self) -> &[S] {
        &self.states
    }

    pub fn size(&self) -> u64 {
        self.states.len() as u64
    }

    /// The lexicographically smallest state, i.e. `states()[0]`.
    pub fn canonical_rep(&self) -> &S {
        &self.states[0]
    }

    pub fn contains(&self, s: &S) -> bool {
        self.states.contains(s)
    }
}

/// Walk `step` from `start` until it returns, then rotate the cycle so the
/// smallest state leads. `cap` bounds the number of stored states
/// (defaulting to [`step_cap`]); exceeding it yields `NonReturn`.
pub fn compute_orbit<S, F>(action: &str, step: F, start: &S, cap: Option<u64>) -> Result<Orbit<S>>
where
    S: Clone + Ord,
    F: Fn(&S) -> S,
{
    let cap = cap.unwrap_or_else(step_cap);
    let mut states = vec![start.clone()];
    let mut cur = step(start);
    while cur != *start {
        if states.len() as u64 >= cap {
            return Err(Error::NonReturn { cap });
        }
        states.push(cur.clone());
        cur = step(&cur);
    }
    let mut min_idx = 0;
    for i in 1..states.len() {
        if states[i] < states[min_idx] {
            min_idx = i;
        }
    }
    states.rotate_left(min_idx);
    Ok(Orbit {
        action: action.to_string(),
        states,
    })
}

/// Partition `states` into orbits of `step`. The input must be closed under
/// the action; orbits come back sorted by canonical representative.
pub fn all_orbits<S, F>(action: &str, step: F, states: &[S]) -> Result<Vec<Orbit<S>>>
where
    S: Clone + Ord,
    F: Fn(&S) -> S,
{
    let mut pending: BTreeSet<S> = states.iter().cloned().collect();
    let mut out = Vec::new();
    while let Some(start) = pending.iter().next().cloned() {
        let orbit = compute_orbit(action, &step, &start, None)?;
        for s in orbit.states() {
            if !pending.remove(s) {
                return Err(Error::Closure);
            }
        }
        out.push(orbit);
    }
    Ok(out)
}

/// The promotion orbit of a labeling.
pub fn promotion_orbit(f: &IncLabeling) -> Result<Orbit<IncLabeling>> {
    compute_orbit("promotion", promote, f, None)
}

/// Orbit size from the deflation decomposition: with `r` used labels,
/// content period `l`, and deflated orbit size `tau`, the orbit of `f` has
/// size `tau * l / gcd(r * l / q, tau)`.
pub fn orbit_size_via_deflation(f: &IncLabeling) -> Result<u64> {
    if f.labels().is_empty() {
        return Ok(1);
    }
    let q = f.q() as u64;
    let content = f.content();
    let r = content.ones_count() as u64;
    let ell = content.period() as u64;
    let tau = promotion_orbit(&f.deflate())?.size();
    // The word is q/l repeats of one block, so r*l/q (ones per block) is
    // an integer.
    let k = r * ell / q;
    Ok(tau * ell / k.gcd(&tau))
}

/// How to compute the promotion order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrderMode {
    /// Least common multiple of every orbit size on the full labeling set.
    Brute,
    /// Least common multiple of the formula sizes over packed orbits and
    /// admissible content periods.
    Formula,
}

/// Order of promotion on `Inc^q(P)`: the lcm of all orbit sizes.
///
/// Formula mode enumerates only packed orbits: a packed orbit `(r, tau)`
/// contributes `tau * l / gcd(r/r', tau)` for every `l = q/r'` with
/// `r' | r`, `r' | q`, and a primitive block available (`r < q`, or
/// `r' = q` for the all-ones word).
pub fn promotion_order(poset: &Arc<Poset>, q: u32, mode: OrderMode) -> Result<u64> {
    let q64 = q as u64;
    match mode {
        OrderMode::Brute => {
            let states = enumerate_inc(poset, q);
            let orbits = all_orbits("promotion", promote, &states)?;
            Ok(orbits.iter().fold(1u64, |acc, o| acc.lcm(&o.size())))
        }
        OrderMode::Formula => {
            let packed = enumerate_packed(poset);
            let orbits = all_orbits("promotion", promote, &packed)?;
            let mut acc = 1u64;
            for o in &orbits {
                let r = o.canonical_rep().q() as u64;
                if r > q64 {
                    continue;
                }
                let tau = o.size();
                for rp in 1..=r {
                    if r % rp != 0 || q64 % rp != 0 {
                        continue;
                    }
                    if r == q64 && rp != q64 {
                        // Only the all-ones word exists when every label is
                        // used, and its period is 1.
                        continue;
                    }
                    let ell = q64 / rp;
                    let k = r / rp;
                    acc = acc.lcm(&(tau * ell / k.gcd(&tau)));
                }
            }
            Ok(acc)
        }
    }
}

/// One cell of the symbolic orbit-size table: the value `num * q / den`
/// with the fraction reduced.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct TableEntry {
    pub num: u64,
    pub den: u64,
}

impl TableEntry {
    pub fn symbol(&self) -> String {
        match (self.num, self.den) {
            (1, 1) => "q".to_string(),
            (n, 1) => format!("{n}q"),
            (1, d) => format!("q/{d}"),
            (n, d) => format!("{n}q/{d}"),
        }
    }
}

/// Symbolic orbit sizes for all lifts of the packed promotion orbits: one
/// column per packed orbit `(r, tau)`, one row per admissible period
/// `l = q/r'`, blank where `r'` does not divide `r`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitSizeTable {
    columns: Vec<(u32, u64)>,
    rows: Vec<u32>,
    cells: Vec<Vec<Option<TableEntry>>>,
}

impl OrbitSizeTable {
    /// Column headers as `(r, tau)` pairs, sorted by `r` then `tau`.
    pub fn columns(&self) -> &[(u32, u64)] {
        &self.columns
    }

    /// Row divisors `r'`, ascending; row `r'` shows period `l = q/r'`.
    pub fn rows(&self) -> &[u32] {
        &self.rows
    }

    pub fn cell(&self, row: usize, col: usize) -> Option<TableEntry> {
        self.cells[row][col]
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("ell");
        for &(r, tau) in &self.columns {
            out.push_str(&format!(",r={r} tau={tau}"));
        }
        out.push('\n');
        for (i, &rp) in self.rows.iter().enumerate() {
            if rp == 1 {
                out.push('q');
            } else {
                out.push_str(&format!("q/{rp}"));
            }
            for cell in &self.cells[i] {
                out.push(',');
                if let Some(entry) = cell {
                    out.push_str(&entry.symbol());
                }
            }
            out.push('\n');
        }
        out
    }
}

/// Build the symbolic orbit-size table for a poset.
pub fn orbit_size_table(poset: &Arc<Poset>) -> Result<OrbitSizeTable> {
    let packed = enumerate_packed(poset);
    let orbits = all_orbits("promotion", promote, &packed)?;
    // Lifted sizes depend on a packed orbit only through (r, tau), so
    // orbits sharing that pair share one column.
    let columns: Vec<(u32, u64)> = orbits
        .iter()
        .map(|o| (o.canonical_rep().q(), o.size()))
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let mut rows: BTreeSet<u32> = BTreeSet::new();
    for &(r, _) in &columns {
        for rp in 1..=r {
            if r % rp == 0 {
                rows.insert(rp);
            }
        }
    }
    let rows: Vec<u32> = rows.into_iter().collect();
    let cells = rows
        .iter()
        .map(|&rp| {
            columns
                .iter()
                .map(|&(r, tau)| {
                    if r % rp != 0 {
                        return None;
                    }
                    let k = (r / rp) as u64;
                    let num = tau / k.gcd(&tau);
                    let den = rp as u64;
                    let g = num.gcd(&den);
                    Some(TableEntry {
                        num: num / g,
                        den: den / g,
                    })
                })
                .collect()
        })
        .collect();
    Ok(OrbitSizeTable { columns, rows, cells })
}

/// The promotion orbit containing the swap of an orbit's states. Swap maps
/// whole orbits to orbits; as a defensive check a second representative is
/// verified to land in the same image orbit.
pub fn swap_image_orbit(
    orbit: &Orbit<IncLabeling>,
    kappa: &Involution,
) -> Result<Orbit<IncLabeling>> {
    let image = compute_orbit("promotion", promote, &swap(orbit.canonical_rep(), kappa), None)?;
    if orbit.size() >= 2 {
        let second = swap(&orbit.states()[1], kappa);
        if !image.contains(&second) {
            return Err(Error::Counterexample(
                "swap image of a second representative left the image orbit".into(),
            ));
        }
    }
    Ok(image)
}

/// Whether swap maps the orbit onto itself.
pub fn is_swap_closed(orbit: &Orbit<IncLabeling>, kappa: &Involution) -> Result<bool> {
    Ok(swap_image_orbit(orbit, kappa)?.canonical_rep() == orbit.canonical_rep())
}
