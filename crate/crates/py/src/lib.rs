//! Python bindings: finite fields, Gauss sums, zeta engines and the
//! simulated root-phase circuit.
//!
//! Field elements cross the boundary as canonical indices (the base-p digit
//! encoding of their coefficient vectors); counts come back as arbitrary
//! precision Python ints and series coefficients as (numerator,
//! denominator) pairs.

use num_bigint::BigInt;
use num_complex::Complex64;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

use zetaq_core::characters::{self, Character};
use zetaq_core::field::{field_create, FieldCtx, FieldElement};
use zetaq_core::qsim;
use zetaq_core::zeta;
use zetaq_core::Error as CoreError;

fn py_err(e: CoreError) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// One concrete finite field F_{p^r} with its dlog tables.
#[pyclass(module = "zetaq")]
struct Field {
    ctx: FieldCtx,
}

impl Field {
    fn elem(&self, idx: u64) -> PyResult<FieldElement> {
        self.ctx.elem(idx).map_err(py_err)
    }
}

#[pymethods]
#[allow(clippy::wrong_self_convention)] // from_coeffs/from_int are Python methods
impl Field {
    #[new]
    fn new(p: u64, r: u32) -> PyResult<Self> {
        Ok(Field {
            ctx: field_create(p, r).map_err(py_err)?,
        })
    }

    #[getter]
    fn p(&self) -> u64 {
        self.ctx.p()
    }

    #[getter]
    fn r(&self) -> u32 {
        self.ctx.r()
    }

    #[getter]
    fn q(&self) -> u64 {
        self.ctx.q()
    }

    /// Monic modulus polynomial, constant term first.
    #[getter]
    fn modulus(&self) -> Vec<u64> {
        self.ctx.modulus().to_vec()
    }

    /// Canonical index of the fixed multiplicative generator.
    #[getter]
    fn generator(&self) -> u64 {
        self.ctx.generator().index()
    }

    fn add(&self, a: u64, b: u64) -> PyResult<u64> {
        Ok(self
            .ctx
            .add(self.elem(a)?, self.elem(b)?)
            .map_err(py_err)?
            .index())
    }

    fn sub(&self, a: u64, b: u64) -> PyResult<u64> {
        Ok(self
            .ctx
            .sub(self.elem(a)?, self.elem(b)?)
            .map_err(py_err)?
            .index())
    }

    fn mul(&self, a: u64, b: u64) -> PyResult<u64> {
        Ok(self
            .ctx
            .mul(self.elem(a)?, self.elem(b)?)
            .map_err(py_err)?
            .index())
    }

    fn inv(&self, a: u64) -> PyResult<u64> {
        Ok(self.ctx.inv(self.elem(a)?).map_err(py_err)?.index())
    }

    fn neg(&self, a: u64) -> PyResult<u64> {
        Ok(self.ctx.neg(self.elem(a)?).map_err(py_err)?.index())
    }

    fn pow(&self, a: u64, e: i64) -> PyResult<u64> {
        Ok(self.ctx.pow(self.elem(a)?, e).map_err(py_err)?.index())
    }

    /// Trace down to F_p, as a residue.
    fn trace(&self, a: u64) -> PyResult<u64> {
        self.ctx.trace(self.elem(a)?).map_err(py_err)
    }

    /// Discrete logarithm with respect to the generator.
    fn dlog(&self, a: u64) -> PyResult<u64> {
        self.ctx.dlog(self.elem(a)?).map_err(py_err)
    }

    /// Coefficient vector (c_0, ..., c_{r-1}) of the element.
    fn coeffs(&self, a: u64) -> PyResult<Vec<u64>> {
        self.ctx.coeffs(self.elem(a)?).map_err(py_err)
    }

    /// Canonical index of the element with the given coefficients.
    fn from_coeffs(&self, coeffs: Vec<i64>) -> PyResult<u64> {
        Ok(self.ctx.from_coeffs(&coeffs).map_err(py_err)?.index())
    }

    /// Canonical index of an integer reduced mod p.
    fn from_int(&self, v: i64) -> u64 {
        self.ctx.from_int(v).index()
    }

    fn __repr__(&self) -> String {
        format!("Field(p={}, r={})", self.ctx.p(), self.ctx.r())
    }
}

/// chi^alpha(x) as a Python complex (0 at x = 0).
#[pyfunction]
fn char_eval(field: &Field, alpha: i64, x: u64) -> PyResult<Complex64> {
    let chi = Character::new(&field.ctx, alpha);
    characters::char_eval(&field.ctx, chi, field.elem(x)?).map_err(py_err)
}

/// Gauss sum g(chi^alpha) over the field.
#[pyfunction]
fn gauss_sum(field: &Field, alpha: i64) -> PyResult<Complex64> {
    characters::gauss_sum(&field.ctx, Character::new(&field.ctx, alpha)).map_err(py_err)
}

/// A diagonal hypersurface c_0 X_0^m + ... + c_n X_n^m = 0 over a [`Field`].
#[pyclass(module = "zetaq")]
struct Surface {
    surface: zeta::FermatSurface,
}

#[pymethods]
impl Surface {
    /// Coefficients are integers reduced mod p; pass a list like
    /// [-1, 1, 1, 1].
    #[new]
    fn new(field: &Field, m: u64, coeffs: Vec<i64>) -> PyResult<Self> {
        Ok(Surface {
            surface: zeta::FermatSurface::from_ints(field.ctx.clone(), m, &coeffs)
                .map_err(py_err)?,
        })
    }

    #[getter]
    fn m(&self) -> u64 {
        self.surface.degree()
    }

    #[getter]
    fn n(&self) -> usize {
        self.surface.n()
    }

    #[getter]
    fn dim(&self) -> usize {
        self.surface.dim()
    }

    #[getter]
    fn q(&self) -> u64 {
        self.surface.ctx().q()
    }

    /// All valid exponent tuples in lexicographic order.
    fn valid_tuples(&self) -> Vec<Vec<u32>> {
        self.surface.valid_tuples()
    }

    fn root_count(&self) -> u64 {
        self.surface.root_count()
    }

    fn __repr__(&self) -> String {
        format!(
            "Surface(q={}, m={}, n={})",
            self.surface.ctx().q(),
            self.surface.degree(),
            self.surface.n()
        )
    }
}

/// Zeta roots alpha_j of the surface, one per valid tuple.
#[pyfunction]
fn fermat_roots(surface: &Surface) -> PyResult<Vec<Complex64>> {
    Ok(zeta::fermat_roots(&surface.surface).map_err(py_err)?.roots)
}

/// Exact N_s reconstructed from the closed-form roots.
#[pyfunction]
fn count_from_roots(surface: &Surface, s: u32) -> PyResult<BigInt> {
    let profile = zeta::fermat_roots(&surface.surface).map_err(py_err)?;
    zeta::counts_from_roots(&profile, s).map_err(py_err)
}

/// Integer polynomial P(T), its position, and the trivial factors.
#[pyfunction]
fn rational_form(py: Python<'_>, surface: &Surface) -> PyResult<PyObject> {
    let profile = zeta::fermat_roots(&surface.surface).map_err(py_err)?;
    let form = zeta::reconstruct_rational(&profile).map_err(py_err)?;
    let out = PyDict::new(py);
    out.set_item("p_coeffs", form.p_coeffs)?;
    out.set_item("p_in_numerator", form.p_in_numerator)?;
    out.set_item("trivial_factors", form.trivial_factors)?;
    Ok(out.into())
}

/// Root magnitude and conjugate-pairing checks.
#[pyfunction]
fn weil_report(py: Python<'_>, surface: &Surface) -> PyResult<PyObject> {
    let profile = zeta::fermat_roots(&surface.surface).map_err(py_err)?;
    let report = zeta::verify_weil(&profile);
    let out = PyDict::new(py);
    out.set_item("expected_magnitude", report.expected_magnitude)?;
    out.set_item(
        "max_relative_magnitude_deviation",
        report.max_relative_magnitude_deviation,
    )?;
    out.set_item("unmatched_conjugates", report.unmatched_conjugates)?;
    out.set_item("pass", report.pass)?;
    Ok(out.into())
}

/// |P^n(F_q)|.
#[pyfunction]
fn projective_point_count(n: u32, q: u64) -> BigInt {
    zeta::projective_point_count(n, q)
}

/// Brute-force N_s of a polynomial system in the documented text format.
#[pyfunction]
#[pyo3(signature = (text, s, cap=None))]
fn count_points(text: &str, s: u32, cap: Option<u64>) -> PyResult<BigInt> {
    let sys = zeta::PolySystem::parse(text).map_err(py_err)?;
    zeta::count_points_capped(&sys, s, cap.unwrap_or(zeta::DEFAULT_ENUM_CAP)).map_err(py_err)
}

/// Brute-force N_s of a diagonal surface.
#[pyfunction]
#[pyo3(signature = (surface, s, cap=None))]
fn count_points_diag(surface: &Surface, s: u32, cap: Option<u64>) -> PyResult<BigInt> {
    let sys = surface.surface.to_poly_system();
    zeta::count_points_capped(&sys, s, cap.unwrap_or(zeta::DEFAULT_ENUM_CAP)).map_err(py_err)
}

/// exp(sum N_s T^s / s) truncated after len(counts) coefficients, as
/// (numerator, denominator) pairs.
#[pyfunction]
fn zeta_series(counts: Vec<BigInt>) -> Vec<(BigInt, BigInt)> {
    zeta::zeta_series(&counts)
        .coeffs()
        .iter()
        .map(|c| (c.numer().clone(), c.denom().clone()))
        .collect()
}

/// prod (1 - T^d)^{-b_d} truncated at `order`.
#[pyfunction]
fn euler_product_series(orbit_counts: Vec<BigInt>, order: usize) -> Vec<(BigInt, BigInt)> {
    zeta::euler_product_series(&orbit_counts, order)
        .coeffs()
        .iter()
        .map(|c| (c.numer().clone(), c.denom().clone()))
        .collect()
}

/// Frobenius orbit counts b_d from point counts N_1..N_S.
#[pyfunction]
fn orbit_counts(counts: Vec<BigInt>) -> PyResult<Vec<BigInt>> {
    zeta::orbit_counts(&counts).map_err(py_err)
}

#[pyfunction]
fn moebius(n: u64) -> i64 {
    zeta::moebius(n)
}

/// Classical Gauss-sum value of the normalized root e^{i theta} for one
/// tuple: the oracle the circuit must match.
#[pyfunction]
fn normalized_root_phase(surface: &Surface, b: Vec<u32>) -> PyResult<Complex64> {
    zeta::normalized_root_phase(&surface.surface, &b).map_err(py_err)
}

/// Simulate the gate sequence once; returns (global phase, overlap).
#[pyfunction]
fn run_root_circuit(surface: &Surface, b: Vec<u32>) -> PyResult<(Complex64, f64)> {
    let run = qsim::run_root_circuit(&surface.surface, &b).map_err(py_err)?;
    Ok((run.phase, run.overlap))
}

/// Phase estimation for one tuple; returns a dict with theta_hat and the
/// sampled outcome histogram.
#[pyfunction]
#[pyo3(signature = (surface, b, t_bits=8, shots=100, seed=1, power=1, exact_reps_limit=8))]
#[allow(clippy::too_many_arguments)]
fn phase_estimation(
    py: Python<'_>,
    surface: &Surface,
    b: Vec<u32>,
    t_bits: u32,
    shots: usize,
    seed: u64,
    power: u32,
    exact_reps_limit: u64,
) -> PyResult<PyObject> {
    let opts = qsim::QpeOptions {
        t_bits,
        shots,
        seed,
        power,
        exact_reps_limit,
    };
    let est = qsim::phase_estimation(&surface.surface, &b, &opts).map_err(py_err)?;
    let out = PyDict::new(py);
    out.set_item("theta_hat", est.theta_hat)?;
    out.set_item("t_bits", est.t_bits)?;
    out.set_item("shots", est.shots)?;
    out.set_item("seed", est.seed)?;
    out.set_item("histogram", est.histogram)?;
    Ok(out.into())
}

/// Estimate Tr(U^power)/dim by tuple averaging; `samples=None` averages
/// over every valid tuple.
#[pyfunction]
#[pyo3(signature = (surface, samples=None, t_bits=12, shots=64, seed=1, power=1, exact_reps_limit=8))]
#[allow(clippy::too_many_arguments)]
fn estimate_trace(
    py: Python<'_>,
    surface: &Surface,
    samples: Option<usize>,
    t_bits: u32,
    shots: usize,
    seed: u64,
    power: u32,
    exact_reps_limit: u64,
) -> PyResult<PyObject> {
    let opts = qsim::QpeOptions {
        t_bits,
        shots,
        seed,
        power,
        exact_reps_limit,
    };
    let selection = match samples {
        None => qsim::TupleSelection::Exhaustive,
        Some(k) => qsim::TupleSelection::Sample(k),
    };
    let tr = qsim::estimate_trace(&surface.surface, selection, &opts).map_err(py_err)?;
    let out = PyDict::new(py);
    out.set_item("mean", tr.mean)?;
    out.set_item("dim", tr.dim)?;
    out.set_item("eps", tr.eps)?;
    Ok(out.into())
}

/// Approximate N_s from simulated trace estimation, with its error bar.
#[pyfunction]
#[pyo3(signature = (surface, s=1, samples=None, t_bits=12, shots=64, seed=1, exact_reps_limit=8))]
#[allow(clippy::too_many_arguments)]
fn approx_count(
    py: Python<'_>,
    surface: &Surface,
    s: u32,
    samples: Option<usize>,
    t_bits: u32,
    shots: usize,
    seed: u64,
    exact_reps_limit: u64,
) -> PyResult<PyObject> {
    let opts = qsim::QpeOptions {
        t_bits,
        shots,
        seed,
        power: s,
        exact_reps_limit,
    };
    let selection = match samples {
        None => qsim::TupleSelection::Exhaustive,
        Some(k) => qsim::TupleSelection::Sample(k),
    };
    let est = qsim::approx_count(&surface.surface, s, selection, &opts).map_err(py_err)?;
    let out = PyDict::new(py);
    out.set_item("estimate", est.estimate)?;
    out.set_item("error_bar", est.error_bar)?;
    out.set_item("plane", est.plane)?;
    out.set_item("trace", est.trace_mean)?;
    out.set_item("dim", est.dim)?;
    Ok(out.into())
}

#[pymodule]
fn zetaq(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Field>()?;
    m.add_class::<Surface>()?;
    m.add_function(wrap_pyfunction!(char_eval, m)?)?;
    m.add_function(wrap_pyfunction!(gauss_sum, m)?)?;
    m.add_function(wrap_pyfunction!(fermat_roots, m)?)?;
    m.add_function(wrap_pyfunction!(count_from_roots, m)?)?;
    m.add_function(wrap_pyfunction!(rational_form, m)?)?;
    m.add_function(wrap_pyfunction!(weil_report, m)?)?;
    m.add_function(wrap_pyfunction!(projective_point_count, m)?)?;
    m.add_function(wrap_pyfunction!(count_points, m)?)?;
    m.add_function(wrap_pyfunction!(count_points_diag, m)?)?;
    m.add_function(wrap_pyfunction!(zeta_series, m)?)?;
    m.add_function(wrap_pyfunction!(euler_product_series, m)?)?;
    m.add_function(wrap_pyfunction!(orbit_counts, m)?)?;
    m.add_function(wrap_pyfunction!(moebius, m)?)?;
    m.add_function(wrap_pyfunction!(normalized_root_phase, m)?)?;
    m.add_function(wrap_pyfunction!(run_root_circuit, m)?)?;
    m.add_function(wrap_pyfunction!(phase_estimation, m)?)?;
    m.add_function(wrap_pyfunction!(estimate_trace, m)?)?;
    m.add_function(wrap_pyfunction!(approx_count, m)?)?;
    Ok(())
}
