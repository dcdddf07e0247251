//! Python bindings for `entagg`.
//!
//! Distributions cross the boundary as plain lists of floats; partitions as
//! lists of blocks of input positions. Library errors raise `EntaggError`,
//! whose message starts with the error kind.

use ::entagg as ea;
use pyo3::create_exception;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

create_exception!(entagg, EntaggError, PyValueError);

fn err(e: ea::Error) -> PyErr {
    EntaggError::new_err(e.to_string())
}

fn dist(p: Vec<f64>) -> PyResult<ea::Dist> {
    ea::Dist::new(&p).map_err(err)
}

fn partition(blocks: Vec<Vec<usize>>) -> PyResult<ea::Partition> {
    ea::Partition::new(blocks).map_err(err)
}

/// A validated distribution, sorted non-increasing.
#[pyclass(name = "Dist", module = "entagg", frozen)]
#[derive(Clone)]
struct PyDist {
    inner: ea::Dist,
}

#[pymethods]
impl PyDist {
    #[new]
    fn new(p: Vec<f64>) -> PyResult<Self> {
        Ok(PyDist { inner: dist(p)? })
    }

    #[getter]
    fn probs(&self) -> Vec<f64> {
        self.inner.probs().to_vec()
    }

    /// Input position of each sorted entry.
    #[getter]
    fn order(&self) -> Vec<usize> {
        self.inner.order().to_vec()
    }

    fn original_probs(&self) -> Vec<f64> {
        self.inner.original_probs()
    }

    fn entropy(&self) -> f64 {
        self.inner.entropy().bits()
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn __repr__(&self) -> String {
        format!("Dist({:?})", self.inner.probs())
    }
}

#[pyclass(module = "entagg", frozen, get_all)]
struct Aggregation {
    blocks: Vec<Vec<usize>>,
    dist: Vec<f64>,
    h: f64,
    /// "exact" or "additive_alpha".
    guarantee: &'static str,
}

impl From<ea::AggregationResult> for Aggregation {
    fn from(r: ea::AggregationResult) -> Self {
        Aggregation {
            blocks: r.partition.blocks().to_vec(),
            dist: r.dist.probs().to_vec(),
            h: r.h.bits(),
            guarantee: match r.guarantee {
                ea::Guarantee::Exact => "exact",
                ea::Guarantee::AdditiveAlpha => "additive_alpha",
            },
        }
    }
}

#[pymethods]
impl Aggregation {
    fn __repr__(&self) -> String {
        format!(
            "Aggregation(h={}, dist={:?}, blocks={:?}, guarantee={})",
            self.h, self.dist, self.blocks, self.guarantee
        )
    }
}

/// Coupling matrix (rows follow `q`, columns follow `p`) with `W` and `D`.
#[pyclass(module = "entagg", frozen, get_all)]
struct Coupling {
    matrix: Vec<Vec<f64>>,
    w: f64,
    d: f64,
    exact: bool,
}

impl Coupling {
    fn new(c: ea::Coupling, r: ea::DivergenceReport) -> Self {
        Coupling {
            matrix: c.matrix,
            w: r.w.bits(),
            d: r.d,
            exact: r.exact,
        }
    }
}

#[pymethods]
impl Coupling {
    fn __repr__(&self) -> String {
        format!("Coupling(w={}, d={}, exact={})", self.w, self.d, self.exact)
    }
}

#[pyfunction]
fn alpha() -> f64 {
    ea::alpha()
}

#[pyfunction]
fn entropy(p: Vec<f64>) -> PyResult<f64> {
    Ok(dist(p)?.entropy().bits())
}

/// True when `a` is majorized by `b`.
#[pyfunction]
fn majorizes(a: Vec<f64>, b: Vec<f64>) -> PyResult<bool> {
    Ok(ea::majorizes(&dist(a)?, &dist(b)?).majorized)
}

/// `(h_upper, h_lower_achievable)` over all aggregations onto `m` symbols.
#[pyfunction]
fn bounds(p: Vec<f64>, m: usize) -> PyResult<(f64, f64)> {
    let b = ea::bound_report(&dist(p)?, m).map_err(err)?;
    Ok((b.h_upper.bits(), b.h_lower_achievable.bits()))
}

#[pyfunction]
fn r_operator(p: Vec<f64>, m: usize) -> PyResult<Vec<f64>> {
    Ok(ea::r_operator(&dist(p)?, m).map_err(err)?.probs().to_vec())
}

/// Returns the aggregated distribution and its blocks.
#[pyfunction]
fn q_operator(p: Vec<f64>, m: usize) -> PyResult<(Vec<f64>, Vec<Vec<usize>>)> {
    let (q, part) = ea::q_operator(&dist(p)?, m).map_err(err)?;
    Ok((q.probs().to_vec(), part.into_blocks()))
}

#[pyfunction]
fn aggregate(p: Vec<f64>, blocks: Vec<Vec<usize>>) -> PyResult<Vec<f64>> {
    let q = ea::aggregate(&dist(p)?, &partition(blocks)?).map_err(err)?;
    Ok(q.probs().to_vec())
}

#[pyfunction]
fn huffman_max(p: Vec<f64>, m: usize) -> PyResult<Aggregation> {
    let (r, _) = ea::huffman_max_aggregation(&dist(p)?, m).map_err(err)?;
    Ok(r.into())
}

#[pyfunction]
#[pyo3(signature = (p, m, cap = ea::DEFAULT_EXACT_CAP))]
fn exact_max(py: Python<'_>, p: Vec<f64>, m: usize, cap: usize) -> PyResult<Aggregation> {
    let p = dist(p)?;
    let r = py.allow_threads(|| ea::exact_max_aggregation_capped(&p, m, cap));
    Ok(r.map_err(err)?.into())
}

#[pyfunction]
fn exact_min(p: Vec<f64>, m: usize) -> PyResult<Aggregation> {
    Ok(ea::exact_min_aggregation(&dist(p)?, m).map_err(err)?.into())
}

#[pyfunction]
fn theorem2_gap(rho: f64) -> PyResult<f64> {
    ea::theorem2_gap(rho).map_err(err)
}

/// `log2(n) - gap` for `n` points with ratio at most `rho`.
#[pyfunction]
fn ratio_bound(n: usize, rho: f64) -> PyResult<f64> {
    Ok(ea::ratio_bound(n, rho).map_err(err)?.lower_bound_bits)
}

#[pyfunction]
fn prior_bound_epsilon(rho: f64) -> PyResult<f64> {
    ea::prior_bound_epsilon(rho).map_err(err)
}

/// Returns `(leading, middle, z)`.
#[pyfunction]
fn z_rho(p: Vec<f64>, rho: f64) -> PyResult<(usize, f64, Vec<f64>)> {
    let z = ea::z_rho(&dist(p)?, rho).map_err(err)?;
    Ok((z.leading, z.middle, z.dist.probs().to_vec()))
}

#[pyfunction]
#[pyo3(signature = (p, q, cap = ea::DEFAULT_COUPLING_CAP))]
fn min_entropy_coupling(
    py: Python<'_>,
    p: Vec<f64>,
    q: Vec<f64>,
    cap: usize,
) -> PyResult<Coupling> {
    let (p, q) = (dist(p)?, dist(q)?);
    let (c, r) = py
        .allow_threads(|| ea::min_entropy_coupling_exact_capped(&p, &q, cap))
        .map_err(err)?;
    Ok(Coupling::new(c, r))
}

/// `D(p, f(p))` for the aggregation given by `blocks`; falls back to an
/// upper bound (`exact == False`) above the cap.
#[pyfunction]
#[pyo3(signature = (p, blocks, cap = ea::DEFAULT_COUPLING_CAP))]
fn divergence(p: Vec<f64>, blocks: Vec<Vec<usize>>, cap: usize) -> PyResult<Coupling> {
    let (c, r) = ea::divergence_for_partition(&dist(p)?, &partition(blocks)?, cap).map_err(err)?;
    Ok(Coupling::new(c, r))
}

/// Returns `(q, d_upper)`.
#[pyfunction]
fn approx_best_approximation(p: Vec<f64>, m: usize) -> PyResult<(Vec<f64>, f64)> {
    let (q, bound) = ea::approx_best_approximation(&dist(p)?, m).map_err(err)?;
    Ok((q.probs().to_vec(), bound))
}

#[pymodule]
fn entagg(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("EntaggError", m.py().get_type::<EntaggError>())?;
    m.add_class::<PyDist>()?;
    m.add_class::<Aggregation>()?;
    m.add_class::<Coupling>()?;
    m.add_function(wrap_pyfunction!(alpha, m)?)?;
    m.add_function(wrap_pyfunction!(entropy, m)?)?;
    m.add_function(wrap_pyfunction!(majorizes, m)?)?;
    m.add_function(wrap_pyfunction!(bounds, m)?)?;
    m.add_function(wrap_pyfunction!(r_operator, m)?)?;
    m.add_function(wrap_pyfunction!(q_operator, m)?)?;
    m.add_function(wrap_pyfunction!(aggregate, m)?)?;
    m.add_function(wrap_pyfunction!(huffman_max, m)?)?;
    m.add_function(wrap_pyfunction!(exact_max, m)?)?;
    m.add_function(wrap_pyfunction!(exact_min, m)?)?;
    m.add_function(wrap_pyfunction!(theorem2_gap, m)?)?;
    m.add_function(wrap_pyfunction!(ratio_bound, m)?)?;
    m.add_function(wrap_pyfunction!(prior_bound_epsilon, m)?)?;
    m.add_function(wrap_pyfunction!(z_rho, m)?)?;
    m.add_function(wrap_pyfunction!(min_entropy_coupling, m)?)?;
    m.add_function(wrap_pyfunction!(divergence, m)?)?;
    m.add_function(wrap_pyfunction!(approx_best_approximation, m)?)?;
    Ok(())
}
