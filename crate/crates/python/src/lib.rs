//! Python bindings: exact scalars, Laurent polynomials, polyphase matrices,
//! lifting cascades and the factorization routines.

use liftkit::document;
use liftkit::structures::{cascade_in_structure, OrderIncrease};
use liftkit::{
    Cascade, EquivalenceVerdict, Error, GroupLiftingStructure, LaurentPoly, LiftingStep, PolyMatrix, Scalar, Symmetry,
    Update,
};
use pyo3::create_exception;
use pyo3::exceptions::{PyException, PyValueError, PyZeroDivisionError};
use pyo3::prelude::*;

create_exception!(liftkit, LiftkitError, PyException);
create_exception!(liftkit, PreconditionError, LiftkitError);
create_exception!(liftkit, NotFactorableError, LiftkitError);

fn err(e: Error) -> PyErr {
    let msg = e.to_string();
    match e {
        Error::Parse(_) => PyValueError::new_err(msg),
        Error::DivisionByZero => PyZeroDivisionError::new_err(msg),
        Error::Precondition(_) | Error::Reducible(_) | Error::ZeroGain => PreconditionError::new_err(msg),
        Error::NotFactorable(_) | Error::PeelFailed { .. } => NotFactorableError::new_err(msg),
        _ => LiftkitError::new_err(msg),
    }
}

trait IntoPy<T> {
    fn py(self) -> PyResult<T>;
}

impl<T> IntoPy<T> for liftkit::Result<T> {
    fn py(self) -> PyResult<T> {
        self.map_err(err)
    }
}

/// Element of Q(sqrt 2), written `p/q+r/s*w2`.
#[pyclass(name = "Scalar", module = "liftkit", frozen, eq, hash, from_py_object)]
#[derive(Clone, PartialEq, Eq, Hash)]
struct PyScalar(Scalar);

/// Anything accepted where a scalar is expected.
#[derive(FromPyObject)]
enum ScalarLike {
    Scalar(PyScalar),
    Int(i64),
    Text(String),
}

impl ScalarLike {
    fn get(self) -> PyResult<Scalar> {
        match self {
            ScalarLike::Scalar(s) => Ok(s.0),
            ScalarLike::Int(n) => Ok(Scalar::from_int(n)),
            ScalarLike::Text(t) => t.parse().py(),
        }
    }
}

#[pymethods]
impl PyScalar {
    #[new]
    fn new(value: ScalarLike) -> PyResult<Self> {
        value.get().map(PyScalar)
    }

    #[staticmethod]
    fn sqrt2() -> Self {
        PyScalar(Scalar::sqrt2())
    }

    /// Rational part as text.
    #[getter]
    fn rational(&self) -> String {
        self.0.rational_part().to_string()
    }

    /// Coefficient of sqrt 2 as text.
    #[getter]
    fn irrational(&self) -> String {
        self.0.sqrt2_part().to_string()
    }

    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    fn is_dyadic(&self) -> bool {
        self.0.is_dyadic()
    }

    fn inv(&self) -> PyResult<Self> {
        self.0.inv().py().map(PyScalar)
    }

    fn __add__(&self, o: ScalarLike) -> PyResult<Self> {
        Ok(PyScalar(&self.0 + &o.get()?))
    }

    fn __radd__(&self, o: ScalarLike) -> PyResult<Self> {
        self.__add__(o)
    }

    fn __sub__(&self, o: ScalarLike) -> PyResult<Self> {
        Ok(PyScalar(&self.0 - &o.get()?))
    }

    fn __rsub__(&self, o: ScalarLike) -> PyResult<Self> {
        Ok(PyScalar(&o.get()? - &self.0))
    }

    fn __mul__(&self, o: ScalarLike) -> PyResult<Self> {
        Ok(PyScalar(&self.0 * &o.get()?))
    }

    fn __rmul__(&self, o: ScalarLike) -> PyResult<Self> {
        self.__mul__(o)
    }

    fn __truediv__(&self, o: ScalarLike) -> PyResult<Self> {
        self.0.checked_div(&o.get()?).py().map(PyScalar)
    }

    fn __rtruediv__(&self, o: ScalarLike) -> PyResult<Self> {
        o.get()?.checked_div(&self.0).py().map(PyScalar)
    }

    fn __neg__(&self) -> Self {
        PyScalar(-&self.0)
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Scalar('{}')", self.0)
    }
}

/// Laurent polynomial in `z^-1`; `coeffs[i]` multiplies `z^-(lo+i)`.
#[pyclass(name = "LaurentPoly", module = "liftkit", frozen, eq, hash, from_py_object)]
#[derive(Clone, PartialEq, Eq, Hash)]
struct PyLaurent(LaurentPoly);

#[pymethods]
impl PyLaurent {
    #[new]
    #[pyo3(signature = (lo=0, coeffs=Vec::new()))]
    fn new(lo: i64, coeffs: Vec<ScalarLike>) -> PyResult<Self> {
        let c = coeffs.into_iter().map(ScalarLike::get).collect::<PyResult<_>>()?;
        Ok(PyLaurent(LaurentPoly::new(lo, c)))
    }

    #[staticmethod]
    fn monomial(c: ScalarLike, n: i64) -> PyResult<Self> {
        Ok(PyLaurent(LaurentPoly::monomial(c.get()?, n)))
    }

    #[getter]
    fn lo(&self) -> i64 {
        self.0.lo()
    }

    #[getter]
    fn coeffs(&self) -> Vec<PyScalar> {
        self.0.coeffs().iter().cloned().map(PyScalar).collect()
    }

    /// Coefficient of `z^-n`.
    fn coeff(&self, n: i64) -> PyScalar {
        PyScalar(self.0.coeff(n))
    }

    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    fn order(&self) -> PyResult<i64> {
        self.0.order().py()
    }

    fn support(&self) -> PyResult<(i64, i64)> {
        self.0.support_interval().py()
    }

    fn time_reverse(&self) -> Self {
        PyLaurent(self.0.time_reverse())
    }

    /// One of `HS_plus`, `HS_minus`, `WA`, `unconstrained`.
    fn has_symmetry(&self, kind: &str) -> PyResult<bool> {
        let k = Symmetry::from_name(kind).ok_or_else(|| PyValueError::new_err(format!("unknown symmetry {kind:?}")))?;
        Ok(self.0.has_symmetry(k))
    }

    fn is_dyadic(&self) -> bool {
        self.0.is_dyadic()
    }

    fn evaluate(&self, z0: ScalarLike) -> PyResult<PyScalar> {
        self.0.evaluate(&z0.get()?).py().map(PyScalar)
    }

    fn __add__(&self, o: &PyLaurent) -> Self {
        PyLaurent(&self.0 + &o.0)
    }

    fn __sub__(&self, o: &PyLaurent) -> Self {
        PyLaurent(&self.0 - &o.0)
    }

    fn __mul__(&self, o: &PyLaurent) -> Self {
        PyLaurent(&self.0 * &o.0)
    }

    fn __neg__(&self) -> Self {
        PyLaurent(-&self.0)
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("LaurentPoly('{}')", self.0)
    }
}

/// 2x2 polyphase matrix over Laurent polynomials.
#[pyclass(name = "PolyMatrix", module = "liftkit", frozen, eq, hash, from_py_object)]
#[derive(Clone, PartialEq, Eq, Hash)]
struct PyMatrix(PolyMatrix);

#[pymethods]
impl PyMatrix {
    #[new]
    fn new(h00: PyLaurent, h01: PyLaurent, h10: PyLaurent, h11: PyLaurent) -> Self {
        PyMatrix(PolyMatrix::new(h00.0, h01.0, h10.0, h11.0))
    }

    /// `identity`, `haar` or `lazy-causal`.
    #[staticmethod]
    fn named(name: &str) -> PyResult<Self> {
        PolyMatrix::named(name).map(PyMatrix).ok_or_else(|| PyValueError::new_err(format!("unknown matrix {name:?}")))
    }

    /// Accepts a matrix document or a cascade document (taken as its product).
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        document::parse_matrix(text).py().map(PyMatrix)
    }

    fn to_json(&self) -> String {
        document::matrix_to_json(&self.0)
    }

    fn entry(&self, row: usize, col: usize) -> PyResult<PyLaurent> {
        if row > 1 || col > 1 {
            return Err(PyValueError::new_err("index out of range"));
        }
        Ok(PyLaurent(self.0.entry(row, col).clone()))
    }

    fn det(&self) -> PyLaurent {
        PyLaurent(self.0.det())
    }

    fn order(&self) -> PyResult<i64> {
        self.0.order().py()
    }

    fn inverse(&self) -> PyResult<Self> {
        self.0.inverse().py().map(PyMatrix)
    }

    fn is_unimodular(&self) -> bool {
        self.0.is_unimodular()
    }

    fn is_ws(&self) -> bool {
        self.0.is_ws()
    }

    fn is_hs(&self) -> bool {
        self.0.is_hs()
    }

    fn __mul__(&self, o: &PyMatrix) -> Self {
        PyMatrix(&self.0 * &o.0)
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("PolyMatrix({})", self.0)
    }
}

/// Lifting step; `m = 0` updates the lowpass channel, `m = 1` the highpass.
#[pyclass(name = "LiftingStep", module = "liftkit", frozen, eq, hash, from_py_object)]
#[derive(Clone, PartialEq, Eq, Hash)]
struct PyStep(LiftingStep);

#[pymethods]
impl PyStep {
    #[new]
    fn new(m: u8, s: PyLaurent) -> PyResult<Self> {
        let m = Update::from_bit(m).ok_or_else(|| PyValueError::new_err("m must be 0 or 1"))?;
        Ok(PyStep(LiftingStep::new(m, s.0)))
    }

    #[getter]
    fn m(&self) -> u8 {
        self.0.m.bit()
    }

    #[getter]
    fn s(&self) -> PyLaurent {
        PyLaurent(self.0.s.clone())
    }

    fn matrix(&self) -> PyMatrix {
        PyMatrix(self.0.matrix())
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("LiftingStep({})", self.0)
    }
}

/// Gain, steps in application order, and base matrix.
#[pyclass(name = "Cascade", module = "liftkit", frozen, eq, from_py_object)]
#[derive(Clone, PartialEq, Eq)]
struct PyCascade(Cascade);

#[pymethods]
impl PyCascade {
    #[new]
    #[pyo3(signature = (steps, gain=ScalarLike::Int(1), base=None))]
    fn new(steps: Vec<PyStep>, gain: ScalarLike, base: Option<PyMatrix>) -> PyResult<Self> {
        let base = base.map_or_else(PolyMatrix::identity, |b| b.0);
        Cascade::new(gain.get()?, steps.into_iter().map(|s| s.0).collect(), base).py().map(PyCascade)
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        document::parse_cascade(text).py().map(PyCascade)
    }

    fn to_json(&self) -> String {
        document::cascade_to_json(&self.0)
    }

    #[getter]
    fn gain(&self) -> PyScalar {
        PyScalar(self.0.gain.value().clone())
    }

    #[getter]
    fn steps(&self) -> Vec<PyStep> {
        self.0.steps.iter().cloned().map(PyStep).collect()
    }

    #[getter]
    fn base(&self) -> PyMatrix {
        PyMatrix(self.0.base.clone())
    }

    fn product(&self) -> PyMatrix {
        PyMatrix(self.0.product())
    }

    fn is_irreducible(&self) -> bool {
        self.0.is_irreducible()
    }

    fn reduce(&self) -> Self {
        PyCascade(self.0.reduce_to_irreducible())
    }

    fn rescale(&self, alpha: ScalarLike) -> PyResult<Self> {
        self.0.rescale(&alpha.get()?).py().map(PyCascade)
    }

    fn invert(&self) -> PyResult<Self> {
        self.0.invert().py().map(PyCascade)
    }

    /// `None` when order-increasing, else the first failing step index.
    fn order_failure(&self) -> PyResult<Option<usize>> {
        Ok(match liftkit::is_order_increasing(&self.0).py()? {
            OrderIncrease::Increasing => None,
            OrderIncrease::NotIncreasing { index, .. } => Some(index),
        })
    }

    fn is_order_increasing(&self) -> PyResult<bool> {
        Ok(self.order_failure()?.is_none())
    }

    fn in_structure(&self, structure: &str) -> PyResult<bool> {
        Ok(cascade_in_structure(&self.0, &structure_named(structure)?))
    }

    fn __len__(&self) -> usize {
        self.0.len()
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Cascade({})", self.0)
    }
}

fn structure_named(name: &str) -> PyResult<GroupLiftingStructure> {
    GroupLiftingStructure::by_name(name).ok_or_else(|| PyValueError::new_err(format!("unknown structure {name:?}")))
}

/// Names of the preset lifting structures.
#[pyfunction]
fn structures() -> Vec<String> {
    GroupLiftingStructure::presets().iter().map(|s| s.label()).collect()
}

/// Factor `h` in a named structure, or `generic` for the Euclidean route.
#[pyfunction]
#[pyo3(signature = (h, structure="generic"))]
fn factor(h: &PyMatrix, structure: &str) -> PyResult<PyCascade> {
    let c = if structure == "generic" {
        liftkit::factor_generic(&h.0)
    } else {
        liftkit::factor_in_structure(&h.0, &structure_named(structure)?)
    };
    c.py().map(PyCascade)
}

/// Lifting steps whose product is `diag(1/k, k)`.
#[pyfunction]
fn factor_gain(k: ScalarLike) -> PyResult<Vec<PyStep>> {
    Ok(liftkit::factor_gain(&k.get()?).py()?.into_iter().map(PyStep).collect())
}

/// `(verdict, alpha)` with verdict `identical`, `equivalent_modulo_rescaling`
/// or `inequivalent`; `alpha` is `None` for the last.
#[pyfunction]
fn equivalent(a: &PyCascade, b: &PyCascade) -> PyResult<(String, Option<PyScalar>)> {
    let v = liftkit::equivalent_mod_rescaling(&a.0, &b.0).py()?;
    let name = match v {
        EquivalenceVerdict::Identical => "identical",
        EquivalenceVerdict::EquivalentModuloRescaling { .. } => "equivalent_modulo_rescaling",
        EquivalenceVerdict::Inequivalent { .. } => "inequivalent",
    };
    Ok((name.to_string(), v.alpha().map(PyScalar)))
}

#[pyfunction]
fn gamma(k: ScalarLike, m: &PyMatrix) -> PyResult<PyMatrix> {
    liftkit::gamma(&k.get()?, &m.0).py().map(PyMatrix)
}

#[pyfunction]
fn nonuniqueness_witness(c: &PyCascade) -> PyResult<PyCascade> {
    liftkit::nonuniqueness_witness(&c.0).py().map(PyCascade)
}

/// Named example cascades as `(label, cascade)` pairs.
#[pyfunction]
#[pyo3(signature = (name, b=None, c=None))]
fn example(name: &str, b: Option<ScalarLike>, c: Option<ScalarLike>) -> PyResult<Vec<(String, PyCascade)>> {
    let found = if name == "example1" && (b.is_some() || c.is_some()) {
        let b = b.map_or(Ok(Scalar::from_int(2)), ScalarLike::get)?;
        let c = c.map_or(Ok(Scalar::from_int(3)), ScalarLike::get)?;
        let e = liftkit::fixtures::example1(&b, &c).py()?;
        vec![("example1-A".to_string(), e.first), ("example1-B".to_string(), e.second)]
    } else {
        liftkit::fixtures::by_name(name).ok_or_else(|| PyValueError::new_err(format!("unknown example {name:?}")))?
    };
    Ok(found.into_iter().map(|(l, c)| (l, PyCascade(c))).collect())
}

#[pyfunction]
fn example_names() -> Vec<&'static str> {
    liftkit::fixtures::NAMES.to_vec()
}

#[pymodule(name = "liftkit")]
fn liftkit_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyScalar>()?;
    m.add_class::<PyLaurent>()?;
    m.add_class::<PyMatrix>()?;
    m.add_class::<PyStep>()?;
    m.add_class::<PyCascade>()?;
    m.add("LiftkitError", m.py().get_type::<LiftkitError>())?;
    m.add("PreconditionError", m.py().get_type::<PreconditionError>())?;
    m.add("NotFactorableError", m.py().get_type::<NotFactorableError>())?;
    m.add_function(wrap_pyfunction!(structures, m)?)?;
    m.add_function(wrap_pyfunction!(factor, m)?)?;
    m.add_function(wrap_pyfunction!(factor_gain, m)?)?;
    m.add_function(wrap_pyfunction!(equivalent, m)?)?;
    m.add_function(wrap_pyfunction!(gamma, m)?)?;
    m.add_function(wrap_pyfunction!(nonuniqueness_witness, m)?)?;
    m.add_function(wrap_pyfunction!(example, m)?)?;
    m.add_function(wrap_pyfunction!(example_names, m)?)?;
    Ok(())
}
