//! Python bindings for the orbitmesy core: posets, increasing labelings,
//! promotion dynamics, and census/verification entry points.

use std::sync::Arc;

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use orbitmesy::dynamics;
use orbitmesy::labeling::{self, ContentWord, IncLabeling};
use orbitmesy::mesy::{self, Statistic};
use orbitmesy::poset::{parse_fence_word, OrderIdeal, Poset};

fn value_err(e: orbitmesy::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// A finite poset on elements `0..n`, given by its cover relations.
#[pyclass(name = "Poset", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyPoset {
    inner: Arc<Poset>,
}

#[pymethods]
impl PyPoset {
    #[staticmethod]
    fn zigzag(n: usize) -> PyPoset {
        PyPoset {
            inner: Arc::new(Poset::zigzag(n)),
        }
    }

    #[staticmethod]
    fn chain(n: usize) -> PyPoset {
        PyPoset {
            inner: Arc::new(Poset::chain(n)),
        }
    }

    #[staticmethod]
    fn fence(word: &str) -> PyResult<PyPoset> {
        let steps = parse_fence_word(word).map_err(value_err)?;
        Ok(PyPoset {
            inner: Arc::new(Poset::fence(&steps)),
        })
    }

    #[staticmethod]
    fn from_covers(n: usize, covers: Vec<(usize, usize)>) -> PyResult<PyPoset> {
        Ok(PyPoset {
            inner: Arc::new(Poset::from_covers(n, &covers).map_err(value_err)?),
        })
    }

    /// The ten-element self-dual example used throughout the test suite.
    #[staticmethod]
    fn example() -> PyPoset {
        PyPoset {
            inner: orbitmesy::examples::ten_element_poset(),
        }
    }

    fn n(&self) -> usize {
        self.inner.n()
    }

    fn covers(&self) -> Vec<(usize, usize)> {
        self.inner.covers().to_vec()
    }

    fn is_fence(&self) -> bool {
        self.inner.is_fence()
    }

    fn longest_chain_len(&self) -> u32 {
        self.inner.longest_chain_len()
    }

    /// All order ideals, each as a sorted list of members.
    fn order_ideals(&self) -> Vec<Vec<usize>> {
        self.inner
            .order_ideals()
            .into_iter()
            .map(|i| i.members())
            .collect()
    }

    fn rowmotion(&self, ideal: Vec<usize>) -> PyResult<Vec<usize>> {
        let image = self
            .inner
            .rowmotion(OrderIdeal::from_members(ideal))
            .map_err(value_err)?;
        Ok(image.members())
    }

    fn dual_ideal(&self, ideal: Vec<usize>) -> PyResult<Vec<usize>> {
        let kappa = self.inner.canonical_involution().map_err(value_err)?;
        let image = self
            .inner
            .dual_ideal(&kappa, OrderIdeal::from_members(ideal))
            .map_err(value_err)?;
        Ok(image.members())
    }

    /// The canonical order-reversing involution as a permutation list.
    fn canonical_involution(&self) -> PyResult<Vec<usize>> {
        let kappa = self.inner.canonical_involution().map_err(value_err)?;
        Ok((0..self.inner.n()).map(|x| kappa.apply(x)).collect())
    }

    fn __eq__(&self, other: &PyPoset) -> bool {
        self.inner == other.inner
    }

    fn __repr__(&self) -> String {
        format!("Poset(n={}, covers={:?})", self.inner.n(), self.inner.covers())
    }
}

/// An increasing labeling of a poset with labels in `1..=q`.
#[pyclass(name = "Labeling", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyLabeling {
    inner: IncLabeling,
}

impl PyLabeling {
    fn wrap(inner: IncLabeling) -> PyLabeling {
        PyLabeling { inner }
    }
}

#[pymethods]
impl PyLabeling {
    #[new]
    fn new(poset: &PyPoset, q: u32, labels: Vec<u32>) -> PyResult<PyLabeling> {
        Ok(PyLabeling::wrap(
            IncLabeling::new(Arc::clone(&poset.inner), q, labels).map_err(value_err)?,
        ))
    }

    fn labels(&self) -> Vec<u32> {
        self.inner.labels().to_vec()
    }

    fn q(&self) -> u32 {
        self.inner.q()
    }

    fn poset(&self) -> PyPoset {
        PyPoset {
            inner: Arc::clone(self.inner.poset()),
        }
    }

    fn promote(&self) -> PyLabeling {
        PyLabeling::wrap(dynamics::promote(&self.inner))
    }

    fn promote_inverse(&self) -> PyLabeling {
        PyLabeling::wrap(dynamics::promote_inverse(&self.inner))
    }

    /// Complement labels through the canonical order-reversing involution.
    fn swap(&self) -> PyResult<PyLabeling> {
        let kappa = self.inner.poset().canonical_involution().map_err(value_err)?;
        Ok(PyLabeling::wrap(dynamics::swap(&self.inner, &kappa)))
    }

    fn deflate(&self) -> PyLabeling {
        PyLabeling::wrap(self.inner.deflate())
    }

    fn is_packed(&self) -> bool {
        self.inner.is_packed()
    }

    /// The content word as a 0/1 string of length `q`.
    fn content(&self) -> String {
        self.inner.content().to_string()
    }

    #[staticmethod]
    fn inflate(packed: &PyLabeling, content: &str) -> PyResult<PyLabeling> {
        let word = ContentWord::try_from(content.to_string()).map_err(value_err)?;
        Ok(PyLabeling::wrap(
            IncLabeling::inflate(&packed.inner, &word).map_err(value_err)?,
        ))
    }

    /// Left-to-right labels of a fence poset.
    fn reading_word(&self) -> PyResult<Vec<u32>> {
        self.inner.reading_word().map_err(value_err)
    }

    fn contains_pattern(&self, pattern: Vec<u32>) -> PyResult<bool> {
        self.inner.contains_pattern(&pattern).map_err(value_err)
    }

    /// Whether the four used labels have equal opposite cyclic gaps.
    /// Errors unless exactly four labels are used.
    fn is_balanced(&self) -> PyResult<bool> {
        let profile = mesy::z4_gap_profile(&self.inner.content()).map_err(value_err)?;
        Ok(profile.is_balanced())
    }

    /// The full promotion orbit, starting from the lexicographically
    /// smallest state.
    fn orbit(&self) -> PyResult<Vec<PyLabeling>> {
        let orbit = dynamics::promotion_orbit(&self.inner).map_err(value_err)?;
        Ok(orbit.states().iter().cloned().map(PyLabeling::wrap).collect())
    }

    /// Promotion orbit size computed from the content word and the deflated
    /// orbit, without walking the lifted orbit.
    fn orbit_size(&self) -> PyResult<u64> {
        dynamics::orbit_size_via_deflation(&self.inner).map_err(value_err)
    }

    fn __eq__(&self, other: &PyLabeling) -> bool {
        self.inner == other.inner
    }

    fn __repr__(&self) -> String {
        format!("{}@q={}", self.inner, self.inner.q())
    }
}

/// All increasing labelings of `poset` with labels in `1..=q`, in
/// lexicographic order.
#[pyfunction]
fn enumerate_inc(poset: &PyPoset, q: u32) -> Vec<PyLabeling> {
    labeling::enumerate_inc(&poset.inner, q)
        .into_iter()
        .map(PyLabeling::wrap)
        .collect()
}

/// All packed labelings of `poset` (every label up to the maximum used).
#[pyfunction]
fn enumerate_packed(poset: &PyPoset) -> Vec<PyLabeling> {
    labeling::enumerate_packed(&poset.inner)
        .into_iter()
        .map(PyLabeling::wrap)
        .collect()
}

/// Order of promotion on all increasing labelings. `mode` is `"brute"`,
/// `"formula"`, or `"both"` (which checks the two agree).
#[pyfunction]
#[pyo3(signature = (poset, q, mode = "both"))]
fn promotion_order(poset: &PyPoset, q: u32, mode: &str) -> PyResult<u64> {
    let brute = || dynamics::promotion_order(&poset.inner, q, dynamics::OrderMode::Brute);
    let formula = || dynamics::promotion_order(&poset.inner, q, dynamics::OrderMode::Formula);
    match mode {
        "brute" => brute().map_err(value_err),
        "formula" => formula().map_err(value_err),
        "both" => {
            let b = brute().map_err(value_err)?;
            let f = formula().map_err(value_err)?;
            if b != f {
                return Err(PyValueError::new_err(format!(
                    "order mismatch: {b} (brute) vs {f} (formula)"
                )));
            }
            Ok(b)
        }
        other => Err(PyValueError::new_err(format!("unknown mode `{other}`"))),
    }
}

/// Symbolic orbit-size table over all packed orbits, as CSV.
#[pyfunction]
fn orbit_size_table_csv(poset: &PyPoset) -> PyResult<String> {
    Ok(dynamics::orbit_size_table(&poset.inner)
        .map_err(value_err)?
        .to_csv())
}

fn stat_from_name(name: &str, poset: &Arc<Poset>) -> PyResult<Statistic> {
    match name.to_ascii_lowercase().as_str() {
        "tot" => Ok(Statistic::total()),
        "ae" | "ai" => {
            let kappa = poset.canonical_involution().map_err(value_err)?;
            Ok(if name.eq_ignore_ascii_case("ae") {
                Statistic::exterior(&kappa)
            } else {
                Statistic::interior(&kappa)
            })
        }
        other => Err(PyValueError::new_err(format!("unknown statistic `{other}`"))),
    }
}

/// Full promotion census of `Inc^q(P)` as a JSON string. `stats` picks from
/// `"ae"`, `"ai"`, `"tot"`; the default is all three when the antipodal
/// statistics exist, otherwise the total sum.
#[pyfunction]
#[pyo3(signature = (poset, q, stats = None))]
fn census_json(poset: &PyPoset, q: u32, stats: Option<Vec<String>>) -> PyResult<String> {
    let stats = match stats {
        Some(names) => names
            .iter()
            .map(|n| stat_from_name(n, &poset.inner))
            .collect::<PyResult<Vec<Statistic>>>()?,
        None => {
            if poset.inner.n() >= 2 && poset.inner.canonical_involution().is_ok() {
                let kappa = poset.inner.canonical_involution().map_err(value_err)?;
                vec![
                    Statistic::exterior(&kappa),
                    Statistic::interior(&kappa),
                    Statistic::total(),
                ]
            } else {
                vec![Statistic::total()]
            }
        }
    };
    Ok(mesy::census(&poset.inner, q, &stats)
        .map_err(value_err)?
        .to_json())
}

#[pymodule]
fn orbitmesy_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyPoset>()?;
    m.add_class::<PyLabeling>()?;
    m.add_function(wrap_pyfunction!(enumerate_inc, m)?)?;
    m.add_function(wrap_pyfunction!(enumerate_packed, m)?)?;
    m.add_function(wrap_pyfunction!(promotion_order, m)?)?;
    m.add_function(wrap_pyfunction!(orbit_size_table_csv, m)?)?;
    m.add_function(wrap_pyfunction!(census_json, m)?)?;
    Ok(())
}
