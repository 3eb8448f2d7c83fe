//! Exact orbit statistics: orbitmesy and homomesy checks, sufficient
//! condition certificates, and the full classification of promotion orbits
//! on the four-element zig-zag.
//!
//! A statistic is *orbitmesic* on an orbit when the orbit average equals
//! the global average over the whole state set, and an action is
//! *homomesic* for a statistic when every orbit average agrees. All
//! averages are exact rationals; equality means equality.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_integer::Integer;
use num_rational::Ratio;
use rayon::prelude::*;

use crate::dynamics::{
    all_orbits, is_swap_closed, promote, promotion_orbit, Orbit,
};
use crate::error::{Error, Result};
use crate::labeling::{enumerate_inc, is_zigzag_four, ContentWord, IncLabeling};
use crate::poset::{Involution, OrderIdeal, Poset};

/// Exact rational number used for all averages.
pub type Rat = Ratio<i64>;

/// What a statistic measures.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StatKind {
    /// `f(x) + f(kappa(x))` on labelings, for a fixed element and
    /// order-reversing involution.
    Antipodal { x: usize, kappa: Involution },
    /// Sum of all labels.
    Total,
    /// Number of elements of an order ideal.
    Cardinality,
}

/// A named statistic, evaluable on the matching state type.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Statistic {
    kind: StatKind,
    label: String,
}

impl Statistic {
    pub fn antipodal(label: impl Into<String>, x: usize, kappa: Involution) -> Statistic {
        Statistic {
            kind: StatKind::Antipodal { x, kappa },
            label: label.into(),
        }
    }

    /// Antipodal sum at the left end of a fence, conventionally `A_e`.
    pub fn exterior(kappa: &Involution) -> Statistic {
        Statistic::antipodal("A_e", 0, kappa.clone())
    }

    /// Antipodal sum at the second element of a fence, conventionally `A_i`.
    pub fn interior(kappa: &Involution) -> Statistic {
        Statistic::antipodal("A_i", 1, kappa.clone())
    }

    pub fn total() -> Statistic {
        Statistic {
            kind: StatKind::Total,
            label: "Tot".into(),
        }
    }

    pub fn cardinality() -> Statistic {
        Statistic {
            kind: StatKind::Cardinality,
            label: "card".into(),
        }
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn kind(&self) -> &StatKind {
        &self.kind
    }

    pub fn eval_labeling(&self, f: &IncLabeling) -> Result<i64> {
        match &self.kind {
            StatKind::Antipodal { x, kappa } => {
                Ok(f.label(*x) as i64 + f.label(kappa.apply(*x)) as i64)
            }
            StatKind::Total => Ok(f.labels().iter().map(|&l| l as i64).sum()),
            StatKind::Cardinality => Err(Error::TypeMismatch),
        }
    }

    pub fn eval_ideal(&self, ideal: &OrderIdeal) -> Result<i64> {
        match &self.kind {
            StatKind::Cardinality => Ok(ideal.cardinality() as i64),
            _ => Err(Error::TypeMismatch),
        }
    }
}

/// States a statistic can be evaluated on.
pub trait StatState: Clone + Ord {
    fn eval_stat(&self, stat: &Statistic) -> Result<i64>;
}

impl StatState for IncLabeling {
    fn eval_stat(&self, stat: &Statistic) -> Result<i64> {
        stat.eval_labeling(self)
    }
}

impl StatState for OrderIdeal {
    fn eval_stat(&self, stat: &Statistic) -> Result<i64> {
        stat.eval_ideal(self)
    }
}

/// Exact average of a statistic over one orbit.
pub fn orbit_average<S: StatState>(orbit: &Orbit<S>, stat: &Statistic) -> Result<Rat> {
    let mut sum = 0i64;
    for s in orbit.states() {
        sum += s.eval_stat(stat)?;
    }
    Ok(Rat::new(sum, orbit.size() as i64))
}

/// Exact average over a full state set.
pub fn global_average<S: StatState>(states: &[S], stat: &Statistic) -> Result<Rat> {
    if states.is_empty() {
        return Err(Error::EmptySet);
    }
    let mut sum = 0i64;
    for s in states {
        sum += s.eval_stat(stat)?;
    }
    Ok(Rat::new(sum, states.len() as i64))
}

/// Whether the orbit average equals the given global average, exactly.
pub fn is_orbitmesic<S: StatState>(
    orbit: &Orbit<S>,
    stat: &Statistic,
    global: Rat,
) -> Result<bool> {
    Ok(orbit_average(orbit, stat)? == global)
}

/// The common orbit average when `step` is homomesic for `stat` on
/// `states`, `None` when two orbits disagree.
pub fn is_homomesic<S, F>(
    action: &str,
    step: F,
    states: &[S],
    stat: &Statistic,
) -> Result<Option<Rat>>
where
    S: StatState,
    F: Fn(&S) -> S,
{
    if states.is_empty() {
        return Err(Error::EmptySet);
    }
    let orbits = all_orbits(action, step, states)?;
    let first = orbit_average(&orbits[0], stat)?;
    for orbit in &orbits[1..] {
        if orbit_average(orbit, stat)? != first {
            return Ok(None);
        }
    }
    Ok(Some(first))
}

/// One row of a covered-orbitmesy report.
#[derive(Debug, Clone)]
pub struct CoveredOrbitRow<S> {
    pub orbit: Orbit<S>,
    pub phi_closed: bool,
    pub average: Rat,
    pub orbitmesic: bool,
}

/// Result of [`covered_orbitmesy_check`].
#[derive(Debug, Clone)]
pub struct CoveredOrbitmesyReport<S> {
    /// The common orbit average of the homomesic covering action.
    pub phi_value: Rat,
    pub global: Rat,
    pub rows: Vec<CoveredOrbitRow<S>>,
}

/// Check the covering principle: if `phi` is homomesic for `stat`, then
/// every `psi`-orbit closed under `phi` is orbitmesic. The conclusion is
/// a theorem, so a violation is reported as an internal counterexample
/// error rather than a row.
pub fn covered_orbitmesy_check<S, FPhi, FPsi>(
    phi_name: &str,
    phi: FPhi,
    psi_name: &str,
    psi: FPsi,
    states: &[S],
    stat: &Statistic,
) -> Result<CoveredOrbitmesyReport<S>>
where
    S: StatState,
    FPhi: Fn(&S) -> S,
    FPsi: Fn(&S) -> S,
{
    let phi_value =
        is_homomesic(phi_name, &phi, states, stat)?.ok_or(Error::NotHomomesic)?;
    let global = global_average(states, stat)?;
    let mut rows = Vec::new();
    for orbit in all_orbits(psi_name, &psi, states)? {
        let phi_closed = orbit.states().iter().all(|s| orbit.contains(&phi(s)));
        let average = orbit_average(&orbit, stat)?;
        let orbitmesic = average == global;
        if phi_closed && !orbitmesic {
            return Err(Error::Counterexample(format!(
                "{phi_name}-closed {psi_name} orbit with average {average} != global {global}"
            )));
        }
        rows.push(CoveredOrbitRow {
            orbit,
            phi_closed,
            average,
            orbitmesic,
        });
    }
    Ok(CoveredOrbitmesyReport {
        phi_value,
        global,
        rows,
    })
}

/// Whether the multiset `{f(x), f(kappa(x))}` over the orbit is symmetric
/// about `(q + 1) / 2`: each value `m` occurs as often as `q + 1 - m`.
pub fn is_x_stable(orbit: &Orbit<IncLabeling>, x: usize, kappa: &Involution) -> bool {
    let q = orbit.canonical_rep().q() as usize;
    let mut counts = vec![0u64; q + 1];
    for f in orbit.states() {
        counts[f.label(x) as usize] += 1;
        counts[f.label(kappa.apply(x)) as usize] += 1;
    }
    (1..=q).all(|m| counts[m] == counts[q + 1 - m])
}

/// Which sufficient conditions for orbitmesy hold on an orbit, together
/// with the brute-force verdicts they are checked against.
#[derive(Debug, Clone)]
pub struct CertificateReport {
    pub rep: Vec<u32>,
    pub q: u32,
    pub orbit_size: u64,
    /// Number of used labels.
    pub r: u32,
    /// Content word period.
    pub ell: u32,
    /// Deflated orbit size.
    pub tau: u64,
    /// `gcd(r * ell / q, tau)`; the lift factor in the orbit-size formula.
    pub lift_gcd: u64,
    /// Swap maps the orbit onto itself: certifies every antipodal sum and
    /// the total sum.
    pub swap_closed: bool,
    /// Deflation is a linear extension and the lift gcd is 1: certifies the
    /// total sum.
    pub deflation_linear_extension: bool,
    /// Per element: lift gcd 1 and the deflated orbit is x-stable there,
    /// certifying that antipodal sum.
    pub x_stable: Vec<bool>,
    /// Some rotation of the content reverses it, the orbit has full lift
    /// size, and the deflated orbit is swap-closed: certifies everything.
    pub content_reversal_lift: bool,
    pub verdict_tot: bool,
    pub verdict_antipodal: Vec<bool>,
}

impl CertificateReport {
    /// Names of the certificates that fired, in a fixed order.
    pub fn fired(&self) -> Vec<String> {
        let mut out = Vec::new();
        if self.swap_closed {
            out.push("swap-closed".to_string());
        }
        if self.deflation_linear_extension {
            out.push("deflation-linear-extension".to_string());
        }
        for (x, &stable) in self.x_stable.iter().enumerate() {
            if stable {
                out.push(format!("deflation-x-stable:{x}"));
            }
        }
        if self.content_reversal_lift {
            out.push("content-reversal-lift".to_string());
        }
        out
    }
}

/// Evaluate all orbitmesy certificates on the promotion orbit of `f`.
///
/// Verdicts compare orbit averages against the closed-form global averages
/// on a self-dual poset (`q + 1` for antipodal sums, `|P|(q + 1)/2` for the
/// total sum); every fired certificate is required to agree with its
/// verdict, and a disagreement surfaces as a counterexample error.
pub fn orbitmesy_certificates(
    f: &IncLabeling,
    kappa: &Involution,
) -> Result<CertificateReport> {
    certificates_for_orbit(&promotion_orbit(f)?, kappa)
}

pub(crate) fn certificates_for_orbit(
    orbit: &Orbit<IncLabeling>,
    kappa: &Involution,
) -> Result<CertificateReport> {
    let rep = orbit.canonical_rep();
    let q = rep.q();
    let n = rep.poset().n();
    let content = rep.content();
    let r = content.ones_count() as u32;
    let ell = content.period() as u32;
    let deflated_orbit = promotion_orbit(&rep.deflate())?;
    let tau = deflated_orbit.size();
    let k = if q == 0 { 0 } else { (r as u64) * (ell as u64) / (q as u64) };
    let lift_gcd = k.gcd(&tau);

    let swap_closed = is_swap_closed(orbit, kappa)?;
    let deflation_linear_extension = lift_gcd == 1 && rep.deflate().is_linear_extension();
    let x_stable: Vec<bool> = (0..n)
        .map(|x| lift_gcd == 1 && is_x_stable(&deflated_orbit, x, kappa))
        .collect();
    let rev = content.reversed();
    let rotation_reverses = (0..content.len()).any(|i| content.rotated(i) == rev);
    let content_reversal_lift = rotation_reverses
        && orbit.size() == tau * ell as u64
        && is_swap_closed(&deflated_orbit, kappa)?;

    let global_tot = Rat::new(n as i64 * (q as i64 + 1), 2);
    let verdict_tot = orbit_average(orbit, &Statistic::total())? == global_tot;
    let global_antipodal = Rat::from_integer(q as i64 + 1);
    let mut verdict_antipodal = Vec::with_capacity(n);
    for x in 0..n {
        let stat = Statistic::antipodal(format!("A_{x}"), x, kappa.clone());
        verdict_antipodal.push(orbit_average(orbit, &stat)? == global_antipodal);
    }

    let mut violations = Vec::new();
    if (swap_closed || deflation_linear_extension || content_reversal_lift) && !verdict_tot {
        violations.push("total-sum certificate fired on a non-orbitmesic orbit".to_string());
    }
    for x in 0..n {
        let fired = swap_closed || content_reversal_lift || x_stable[x];
        if fired && !verdict_antipodal[x] {
            violations.push(format!(
                "antipodal certificate fired at element {x} on a non-orbitmesic orbit"
            ));
        }
    }
    if let Some(first) = violations.into_iter().next() {
        return Err(Error::Counterexample(first));
    }

    Ok(CertificateReport {
        rep: rep.labels().to_vec(),
        q,
        orbit_size: orbit.size(),
        r,
        ell,
        tau,
        lift_gcd,
        swap_closed,
        deflation_linear_extension,
        x_stable,
        content_reversal_lift,
        verdict_tot,
        verdict_antipodal,
    })
}

/// Cyclic gaps between the four ones of a content word on the four-element
/// zig-zag, extracted in the canonical trailing-one rotation frame.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Z4GapProfile {
    pub alpha: u32,
    pub beta: u32,
    pub gamma: u32,
    pub delta: u32,
}

impl Z4GapProfile {
    pub fn q(&self) -> u32 {
        self.alpha + self.beta + self.gamma + self.delta + 4
    }

    /// The content word has a nontrivial rotational symmetry (period q/2 or
    /// q/4).
    pub fn is_symmetric(&self) -> bool {
        self.alpha == self.gamma && self.beta == self.delta
    }

    /// Opposite gaps agree on at least one axis.
    pub fn is_balanced(&self) -> bool {
        self.alpha == self.gamma || self.beta == self.delta
    }
}

/// Gap profile of a content word with exactly four ones, after rotating by
/// the smallest amount that puts a one in the last position.
pub fn z4_gap_profile(content: &ContentWord) -> Result<Z4GapProfile> {
    if content.ones_count() != 4 {
        return Err(Error::ArityMismatch {
            expected: 4,
            got: content.ones_count(),
        });
    }
    let q = content.len();
    let mut rotation = 0;
    for i in 0..q {
        let last = if i == 0 { q - 1 } else { i - 1 };
        if content.bit(last) {
            rotation = i;
            break;
        }
    }
    let gaps = content.rotated(rotation).gap_profile();
    Ok(Z4GapProfile {
        alpha: gaps[0],
        beta: gaps[1],
        gamma: gaps[2],
        delta: gaps[3],
    })
}

fn z4_sum_closed_form(profile: &Z4GapProfile, exterior: bool) -> Result<i64> {
    let a = profile.alpha as i64;
    let b = profile.beta as i64;
    let c = profile.gamma as i64;
    let d = profile.delta as i64;
    if profile.is_symmetric() {
        // The orbit degenerates to half length; its sum has its own closed
        // form (the same for the exterior and interior statistic).
        return Err(Error::Symmetry {
            symmetric_sum: (2 * a + 2 * b + 5) * (a + b + 2),
        });
    }
    let q = profile.q() as i64;
    Ok(if exterior {
        q * (q + 1) + (a - c) * (d - b)
    } else {
        q * (q + 1) + (b - d) * (a - c)
    })
}

/// Closed-form sum of the exterior antipodal statistic over a full-period
/// four-element zig-zag orbit with this gap profile.
pub fn z4_exterior_sum_closed_form(profile: &Z4GapProfile) -> Result<i64> {
    z4_sum_closed_form(profile, true)
}

/// Interior counterpart of [`z4_exterior_sum_closed_form`].
pub fn z4_interior_sum_closed_form(profile: &Z4GapProfile) -> Result<i64> {
    z4_sum_closed_form(profile, false)
}

/// Outcome of classifying one promotion orbit on the four-element zig-zag.
#[derive(Debug, Clone)]
pub struct Z4Classification {
    pub rep: Vec<u32>,
    pub size: u64,
    pub contains_1324: bool,
    /// Whether the four used labels have equal opposite cyclic gaps; always
    /// false when the orbit uses fewer than four labels.
    pub balanced: bool,
    /// Avoids the pattern or is balanced: the predicted orbitmesy verdict.
    pub predicted_orbitmesic: bool,
    /// Brute-force verdict (the same for the exterior and interior
    /// statistic; the classification asserts they agree).
    pub actual_orbitmesic: bool,
    pub exterior_average: Rat,
    pub interior_average: Rat,
    /// Gap profile in the canonical frame, present when the orbit contains
    /// the pattern.
    pub gap_profile: Option<Z4GapProfile>,
}

/// Classify a promotion orbit on the four-element zig-zag: the orbit is
/// orbitmesic for the antipodal statistics exactly when it avoids the
/// pattern 1324 or is balanced. The prediction is checked against the
/// brute-force verdict, balance is checked to be constant along the orbit,
/// and any disagreement is an internal counterexample error.
pub fn classify_z4_orbit(orbit: &Orbit<IncLabeling>) -> Result<Z4Classification> {
    let rep = orbit.canonical_rep();
    if !is_zigzag_four(rep.poset()) {
        return Err(Error::WrongPoset);
    }
    let kappa = rep.poset().canonical_involution()?;
    let q = rep.q();

    let mut contains_1324 = false;
    for s in orbit.states() {
        if s.contains_pattern(&[1, 3, 2, 4])? {
            contains_1324 = true;
            break;
        }
    }
    // Balance is a property of the four used labels, so it is only
    // well-defined (and rotation-invariant, hence constant along the
    // orbit) when all four labels are distinct. Orbits using fewer labels
    // cannot contain the pattern, so the disjunction below never reads the
    // flag there.
    let balanced = if rep.content().ones_count() == 4 {
        let value = rep.is_balanced()?;
        for s in orbit.states() {
            if s.is_balanced()? != value {
                return Err(Error::Counterexample(
                    "balance is not constant along a four-label promotion orbit".into(),
                ));
            }
        }
        value
    } else {
        false
    };
    let predicted_orbitmesic = !contains_1324 || balanced;

    let exterior_average = orbit_average(orbit, &Statistic::exterior(&kappa))?;
    let interior_average = orbit_average(orbit, &Statistic::interior(&kappa))?;
    let target = Rat::from_integer(q as i64 + 1);
    let actual_e = exterior_average == target;
    let actual_i = interior_average == target;
    if actual_e != actual_i {
        return Err(Error::Counterexample(
            "exterior and interior orbitmesy verdicts disagree".into(),
        ));
    }
    if predicted_orbitmesic != actual_e {
        return Err(Error::Counterexample(format!(
            "pattern/balance prediction {predicted_orbitmesic} disagrees with verdict {actual_e} on orbit of {rep}"
        )));
    }

    let gap_profile = if contains_1324 {
        let aligned = orbit.states().iter().find(|s| {
            s.deflate().labels() == [1, 3, 2, 4] && s.content().bit(q as usize - 1)
        });
        match aligned {
            Some(s) => Some(z4_gap_profile(&s.content())?),
            None => {
                return Err(Error::Counterexample(
                    "pattern-containing orbit has no aligned frame".into(),
                ))
            }
        }
    } else {
        None
    };

    Ok(Z4Classification {
        rep: rep.labels().to_vec(),
        size: orbit.size(),
        contains_1324,
        balanced,
        predicted_orbitmesic,
        actual_orbitmesic: actual_e,
        exterior_average,
        interior_average,
        gap_profile,
    })
}

/// Per-orbit census row.
#[derive(Debug, Clone)]
pub struct OrbitReport {
    pub rep: Vec<u32>,
    pub size: u64,
    pub averages: BTreeMap<String, Rat>,
    pub orbitmesic: BTreeMap<String, bool>,
    pub certificates: Vec<String>,
}

/// Census totals.
#[derive(Debug, Clone)]
pub struct CensusSummary {
    pub q: u32,
    pub labeling_count: u64,
    pub orbit_count: u64,
    pub global_averages: BTreeMap<String, Rat>,
    pub orbitmesic_counts: BTreeMap<String, u64>,
}

/// Full promotion census of `Inc^q(P)` for a list of statistics.
#[derive(Debug, Clone)]
pub struct CensusReport {
    pub orbits: Vec<OrbitReport>,
    pub summary: CensusSummary,
}

impl CensusReport {
    /// One-line summary: orbit count followed by per-statistic orbitmesic
    /// counts.
    pub fn summary_line(&self) -> String {
        let mut out = format!("orbits={}", self.summary.orbit_count);
        for (label, count) in &self.summary.orbitmesic_counts {
            out.push_str(&format!(" orbitmesic({label})={count}"));
        }
        out
    }

    pub fn to_json(&self) -> String {
        use serde_json::{json, Map, Value};
        let orbits: Vec<Value> = self
            .orbits
            .iter()
            .map(|o| {
                let averages: Map<String, Value> = o
                    .averages
                    .iter()
                    .map(|(k, v)| (k.clone(), Value::String(v.to_string())))
                    .collect();
                let orbitmesic: Map<String, Value> = o
                    .orbitmesic
                    .iter()
                    .map(|(k, &v)| (k.clone(), Value::Bool(v)))
                    .collect();
                json!({
                    "rep": o.rep,
                    "size": o.size,
                    "averages": averages,
                    "orbitmesic": orbitmesic,
                    "certificates": o.certificates,
                })
            })
            .collect();
        let global: Map<String, Value> = self
            .summary
            .global_averages
            .iter()
            .map(|(k, v)| (k.clone(), Value::String(v.to_string())))
            .collect();
        let report = json!({
            "orbits": orbits,
            "summary": {
                "q": self.summary.q,
                "labelings": self.summary.labeling_count,
                "orbits": self.summary.orbit_count,
                "global_averages": global,
                "orbitmesic_counts": self.summary.orbitmesic_counts,
            },
        });
        serde_json::to_string_pretty(&report).expect("census report serializes")
    }

    pub fn to_csv(&self) -> String {
        let labels: Vec<&String> = self.summary.global_averages.keys().collect();
        let mut out = String::from("rep,size");
        for l in &labels {
            out.push_str(&format!(",avg:{l},orbitmesic:{l}"));
        }
        out.push_str(",certificates\n");
        for o in &self.orbits {
            let rep: Vec<String> = o.rep.iter().map(u32::to_string).collect();
            out.push_str(&rep.join(" "));
            out.push_str(&format!(",{}", o.size));
            for l in &labels {
                out.push_str(&format!(",{},{}", o.averages[*l], o.orbitmesic[*l]));
            }
            out.push_str(&format!(",{}\n", o.certificates.join(";")));
        }
        out
    }
}

/// Run the promotion census: every orbit with averages, orbitmesic flags,
/// and fired certificates (on self-dual posets), plus global summary
/// counts. Orbit rows are processed in parallel and reported in canonical
/// order.
pub fn census(poset: &Arc<Poset>, q: u32, stats: &[Statistic]) -> Result<CensusReport> {
    let states = enumerate_inc(poset, q);
    if states.is_empty() {
        return Err(Error::EmptySet);
    }
    let mut global_averages = BTreeMap::new();
    for stat in stats {
        global_averages.insert(stat.label().to_string(), global_average(&states, stat)?);
    }
    let orbits = all_orbits("promotion", promote, &states)?;
    let kappa = poset.canonical_involution().ok();

    let rows: Result<Vec<OrbitReport>> = orbits
        .par_iter()
        .map(|orbit| {
            let mut averages = BTreeMap::new();
            let mut orbitmesic = BTreeMap::new();
            for stat in stats {
                let avg = orbit_average(orbit, stat)?;
                orbitmesic.insert(stat.label().to_string(), avg == global_averages[stat.label()]);
                averages.insert(stat.label().to_string(), avg);
            }
            let certificates = match &kappa {
                Some(kappa) => certificates_for_orbit(orbit, kappa)?.fired(),
                None => Vec::new(),
            };
            Ok(OrbitReport {
                rep: orbit.canonical_rep().labels().to_vec(),
                size: orbit.size(),
                averages,
                orbitmesic,
                certificates,
            })
        })
        .collect();
    let rows = rows?;

    let mut orbitmesic_counts = BTreeMap::new();
    for stat in stats {
        let count = rows
            .iter()
            .filter(|row| row.orbitmesic[stat.label()])
            .count() as u64;
        orbitmesic_counts.insert(stat.label().to_string(), count);
    }

    Ok(CensusReport {
        orbits: rows,
        summary: CensusSummary {
            q,
            labeling_count: states.len() as u64,
            orbit_count: orbits.len() as u64,
            global_averages,
            orbitmesic_counts,
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::{promote_inverse, swap};
    use crate::fixtures::example_poset;
    use crate::labeling::enumerate_packed;
    use crate::poset::Poset;

    fn z4() -> Arc<Poset> {
        Arc::new(Poset::zigzag(4))
    }

    fn lab(p: &Arc<Poset>, q: u32, labels: &[u32]) -> IncLabeling {
        IncLabeling::new(Arc::clone(p), q, labels.to_vec()).unwrap()
    }

    fn rat(num: i64, den: i64) -> Rat {
        Rat::new(num, den)
    }

    #[test]
    fn statistic_evaluation_examples() {
        let p = z4();
        let kappa = p.canonical_involution().unwrap();
        let f = lab(&p, 6, &[1, 3, 2, 6]);
        assert_eq!(Statistic::exterior(&kappa).eval_labeling(&f).unwrap(), 7);
        assert_eq!(Statistic::interior(&kappa).eval_labeling(&f).unwrap(), 5);
        assert_eq!(Statistic::total().eval_labeling(&f).unwrap(), 12);
        assert_eq!(
            Statistic::cardinality().eval_labeling(&f).unwrap_err(),
            Error::TypeMismatch
        );

        let z6 = Arc::new(Poset::zigzag(6));
        let k6 = z6.canonical_involution().unwrap();
        let g = lab(&z6, 5, &[1, 5, 2, 3, 2, 4]);
        assert_eq!(Statistic::exterior(&k6).eval_labeling(&g).unwrap(), 5);

        let ideal = OrderIdeal::from_members([0, 2]);
        assert_eq!(Statistic::cardinality().eval_ideal(&ideal).unwrap(), 2);
        assert_eq!(
            Statistic::total().eval_ideal(&ideal).unwrap_err(),
            Error::TypeMismatch
        );
    }

    #[test]
    fn bad_orbit_averages() {
        let p = z4();
        let kappa = p.canonical_involution().unwrap();
        let orbit = promotion_orbit(&lab(&p, 6, &[1, 4, 2, 6])).unwrap();
        assert_eq!(orbit.size(), 6);
        assert_eq!(
            orbit_average(&orbit, &Statistic::exterior(&kappa)).unwrap(),
            rat(41, 6)
        );
        assert_eq!(
            orbit_average(&orbit, &Statistic::interior(&kappa)).unwrap(),
            rat(43, 6)
        );
    }

    #[test]
    fn swap_orbits_average_to_q_plus_one() {
        let p = z4();
        let kappa = p.canonical_involution().unwrap();
        let states = enumerate_inc(&p, 6);
        let step = |f: &IncLabeling| swap(f, &kappa);
        for x in 0..4 {
            let stat = Statistic::antipodal(format!("A_{x}"), x, kappa.clone());
            assert_eq!(
                is_homomesic("swap", step, &states, &stat).unwrap(),
                Some(rat(7, 1))
            );
        }
    }

    #[test]
    fn global_averages_match_closed_forms() {
        let p = z4();
        let kappa = p.canonical_involution().unwrap();
        let states = enumerate_inc(&p, 6);
        assert_eq!(
            global_average(&states, &Statistic::exterior(&kappa)).unwrap(),
            rat(7, 1)
        );
        assert_eq!(
            global_average(&states, &Statistic::total()).unwrap(),
            rat(14, 1)
        );

        let z6 = Arc::new(Poset::zigzag(6));
        let states6 = enumerate_inc(&z6, 5);
        assert_eq!(
            global_average(&states6, &Statistic::total()).unwrap(),
            rat(18, 1)
        );

        let empty: Vec<IncLabeling> = Vec::new();
        assert_eq!(
            global_average(&empty, &Statistic::total()).unwrap_err(),
            Error::EmptySet
        );
    }

    #[test]
    fn promotion_homomesy_for_total_but_not_exterior() {
        let p = z4();
        let kappa = p.canonical_involution().unwrap();
        let states = enumerate_inc(&p, 6);
        assert_eq!(
            is_homomesic("promotion", promote, &states, &Statistic::total()).unwrap(),
            Some(rat(14, 1))
        );
        assert_eq!(
            is_homomesic("promotion", promote, &states, &Statistic::exterior(&kappa)).unwrap(),
            None
        );
    }

    #[test]
    fn covered_orbitmesy_for_rowmotion_ideals() {
        let p = z4();
        let kappa = p.canonical_involution().unwrap();
        let ideals = p.order_ideals();
        let report = covered_orbitmesy_check(
            "dual-ideal",
            |i: &OrderIdeal| p.dual_ideal(&kappa, *i).unwrap(),
            "rowmotion",
            |i: &OrderIdeal| p.rowmotion(*i).unwrap(),
            &ideals,
            &Statistic::cardinality(),
        )
        .unwrap();
        assert_eq!(report.global, rat(2, 1));
        assert_eq!(report.phi_value, rat(2, 1));
        assert!(report.rows.iter().any(|r| r.phi_closed));
        for row in &report.rows {
            if row.phi_closed {
                assert!(row.orbitmesic);
            }
        }
    }

    #[test]
    fn x_stability_examples() {
        let p = z4();
        let kappa = p.canonical_involution().unwrap();
        let orbit_b = promotion_orbit(&lab(&p, 3, &[1, 2, 1, 3])).unwrap();
        assert!(is_x_stable(&orbit_b, 0, &kappa));
        let orbit_c = promotion_orbit(&lab(&p, 4, &[1, 3, 2, 4])).unwrap();
        assert!(is_x_stable(&orbit_c, 0, &kappa));
    }

    #[test]
    fn linear_extension_certificate_fires() {
        let p = z4();
        let kappa = p.canonical_involution().unwrap();
        let report = orbitmesy_certificates(&lab(&p, 6, &[1, 6, 2, 4]), &kappa).unwrap();
        assert_eq!(report.orbit_size, 18);
        assert_eq!((report.r, report.ell, report.tau, report.lift_gcd), (4, 6, 3, 1));
        assert!(report.deflation_linear_extension);
        assert!(report.verdict_tot);
    }

    #[test]
    fn x_stable_certificate_fires() {
        let p = z4();
        let kappa = p.canonical_involution().unwrap();
        let report = orbitmesy_certificates(&lab(&p, 8, &[3, 5, 3, 8]), &kappa).unwrap();
        assert_eq!(report.orbit_size, 40);
        assert_eq!(report.lift_gcd, 1);
        assert!(report.x_stable.iter().all(|&b| b));
        assert!(report.verdict_antipodal.iter().all(|&b| b));
    }

    #[test]
    fn content_reversal_certificate_fires() {
        let p = z4();
        let kappa = p.canonical_involution().unwrap();
        // Content 110001 reverses under rotation by one; the deflated orbit
        // is swap-closed and the lift has full size 30 = tau * ell.
        let report = orbitmesy_certificates(&lab(&p, 6, &[1, 2, 1, 6]), &kappa).unwrap();
        assert_eq!(report.orbit_size, 30);
        assert_eq!((report.tau, report.ell), (5, 6));
        assert!(report.content_reversal_lift);
        assert!(report.verdict_tot);
        assert!(report.verdict_antipodal.iter().all(|&b| b));
        assert_eq!(
            report.fired(),
            vec![
                "swap-closed",
                "deflation-x-stable:0",
                "deflation-x-stable:1",
                "deflation-x-stable:2",
                "deflation-x-stable:3",
                "content-reversal-lift"
            ]
        );
    }

    #[test]
    fn gap_profile_examples() {
        let profile = z4_gap_profile(&"110101".parse().unwrap()).unwrap();
        assert_eq!((profile.alpha, profile.beta, profile.gamma, profile.delta), (0, 0, 1, 1));
        assert_eq!(profile.q(), 6);
        assert!(!profile.is_balanced());
        assert!(!profile.is_symmetric());

        let profile = z4_gap_profile(&"111001".parse().unwrap()).unwrap();
        assert_eq!((profile.alpha, profile.beta, profile.gamma, profile.delta), (0, 0, 0, 2));

        let profile = z4_gap_profile(&"1111".parse().unwrap()).unwrap();
        assert_eq!((profile.alpha, profile.beta, profile.gamma, profile.delta), (0, 0, 0, 0));
        assert!(profile.is_symmetric());

        // Rotation is applied when the word does not end in a one.
        let profile = z4_gap_profile(&"110110".parse().unwrap()).unwrap();
        assert_eq!((profile.alpha, profile.beta, profile.gamma, profile.delta), (0, 1, 0, 1));
        assert_eq!(profile.q(), 6);

        assert_eq!(
            z4_gap_profile(&"110001".parse().unwrap()).unwrap_err(),
            Error::ArityMismatch { expected: 4, got: 3 }
        );
    }

    #[test]
    fn closed_form_sums_match_brute_force() {
        let p = z4();
        let kappa = p.canonical_involution().unwrap();

        let orbit = promotion_orbit(&lab(&p, 6, &[1, 4, 2, 6])).unwrap();
        let profile = z4_gap_profile(&lab(&p, 6, &[1, 4, 2, 6]).content()).unwrap();
        assert_eq!((profile.alpha, profile.beta, profile.gamma, profile.delta), (0, 0, 1, 1));
        let ext: i64 = orbit
            .states()
            .iter()
            .map(|s| Statistic::exterior(&kappa).eval_labeling(s).unwrap())
            .sum();
        let int: i64 = orbit
            .states()
            .iter()
            .map(|s| Statistic::interior(&kappa).eval_labeling(s).unwrap())
            .sum();
        assert_eq!(z4_exterior_sum_closed_form(&profile).unwrap(), ext);
        assert_eq!(z4_interior_sum_closed_form(&profile).unwrap(), int);
        assert_eq!(ext, 41);
        assert_eq!(int, 43);
    }

    #[test]
    fn symmetric_profile_uses_its_own_branch() {
        let p = z4();
        let kappa = p.canonical_involution().unwrap();
        // Content 011011 has period 3, profile (1, 0, 1, 0).
        let packed = lab(&p, 4, &[1, 3, 2, 4]);
        let f = IncLabeling::inflate(&packed, &"011011".parse().unwrap()).unwrap();
        assert_eq!(f.labels(), &[2, 5, 3, 6]);
        let orbit = promotion_orbit(&f).unwrap();
        assert_eq!(orbit.size(), 3);
        let profile = z4_gap_profile(&f.content()).unwrap();
        assert!(profile.is_symmetric());
        let err = z4_exterior_sum_closed_form(&profile).unwrap_err();
        let expected: i64 = orbit
            .states()
            .iter()
            .map(|s| Statistic::exterior(&kappa).eval_labeling(s).unwrap())
            .sum();
        assert_eq!(err, Error::Symmetry { symmetric_sum: expected });
        assert_eq!(expected, 21);
    }

    #[test]
    fn classification_of_good_and_bad_orbits() {
        let p = z4();
        let bad = classify_z4_orbit(&promotion_orbit(&lab(&p, 6, &[1, 4, 2, 6])).unwrap()).unwrap();
        assert!(bad.contains_1324);
        assert!(!bad.balanced);
        assert!(!bad.predicted_orbitmesic);
        assert!(!bad.actual_orbitmesic);
        assert_eq!(bad.exterior_average, rat(41, 6));
        let profile = bad.gap_profile.unwrap();
        assert_eq!((profile.alpha, profile.beta, profile.gamma, profile.delta), (0, 0, 1, 1));

        let good = classify_z4_orbit(&promotion_orbit(&lab(&p, 6, &[1, 3, 2, 6])).unwrap()).unwrap();
        assert!(good.contains_1324);
        assert!(good.balanced);
        assert!(good.predicted_orbitmesic);
        assert!(good.actual_orbitmesic);

        let avoider = classify_z4_orbit(&promotion_orbit(&lab(&p, 3, &[1, 2, 1, 3])).unwrap()).unwrap();
        assert!(!avoider.contains_1324);
        assert!(avoider.predicted_orbitmesic);
        assert!(avoider.actual_orbitmesic);

        let wrong = classify_z4_orbit(&promotion_orbit(&lab(&Arc::new(Poset::zigzag(6)), 5, &[1, 5, 2, 3, 2, 4])).unwrap());
        assert_eq!(wrong.unwrap_err(), Error::WrongPoset);
    }

    #[test]
    fn census_of_zigzag_four() {
        let p = z4();
        let kappa = p.canonical_involution().unwrap();
        let stats = vec![
            Statistic::exterior(&kappa),
            Statistic::interior(&kappa),
            Statistic::total(),
        ];
        let report = census(&p, 6, &stats).unwrap();
        assert_eq!(report.summary.labeling_count, 190);
        assert_eq!(report.summary.orbit_count, 16);
        assert_eq!(report.summary.global_averages["A_e"], rat(7, 1));
        assert_eq!(report.summary.global_averages["Tot"], rat(14, 1));
        assert_eq!(report.summary.orbitmesic_counts["A_e"], 14);
        assert_eq!(report.summary.orbitmesic_counts["A_i"], 14);
        assert_eq!(report.summary.orbitmesic_counts["Tot"], 16);
        assert_eq!(
            report.summary_line(),
            "orbits=16 orbitmesic(A_e)=14 orbitmesic(A_i)=14 orbitmesic(Tot)=16"
        );

        let bad: Vec<&OrbitReport> = report
            .orbits
            .iter()
            .filter(|o| !o.orbitmesic["A_e"])
            .collect();
        assert_eq!(bad.len(), 2);
        let mut avgs: Vec<(Rat, Rat)> = bad
            .iter()
            .map(|o| (o.averages["A_e"], o.averages["A_i"]))
            .collect();
        avgs.sort();
        assert_eq!(avgs, vec![(rat(41, 6), rat(43, 6)), (rat(43, 6), rat(41, 6))]);
    }

    #[test]
    fn census_json_and_csv_shapes() {
        let p = z4();
        let report = census(&p, 3, &[Statistic::total()]).unwrap();
        let json: serde_json::Value = serde_json::from_str(&report.to_json()).unwrap();
        assert_eq!(json["summary"]["orbits"], serde_json::json!(report.summary.orbit_count));
        assert!(json["orbits"][0]["averages"]["Tot"].is_string());
        let csv = report.to_csv();
        assert!(csv.starts_with("rep,size,avg:Tot,orbitmesic:Tot,certificates\n"));
        assert_eq!(csv.lines().count(), 1 + report.orbits.len());
    }

    #[test]
    fn certificates_example_from_running_poset() {
        // Swap anticommutation gives a quick smoke check that certificates
        // behave on a larger self-dual poset too.
        let p = example_poset();
        let kappa = p.canonical_involution().unwrap();
        let f = lab(&p, 9, &[1, 1, 2, 4, 6, 4, 3, 8, 9, 8]);
        assert_eq!(swap(&promote_inverse(&f), &kappa), promote(&swap(&f, &kappa)));
        let report = orbitmesy_certificates(&f, &kappa).unwrap();
        assert_eq!(report.orbit_size, promotion_orbit(&f).unwrap().size());
    }

    #[test]
    fn packed_census_has_no_surprises() {
        let p = z4();
        let packed = enumerate_packed(&p);
        assert_eq!(packed.len(), 11);
        let orbits = all_orbits("promotion", promote, &packed).unwrap();
        let kappa = p.canonical_involution().unwrap();
        for orbit in &orbits {
            // Packed orbits of the four-element zig-zag are all certified by
            // at least one sufficient condition.
            let report = certificates_for_orbit(orbit, &kappa).unwrap();
            assert!(!report.fired().is_empty());
        }
    }
}
