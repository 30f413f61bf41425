//! Python bindings. Rationals cross the boundary as `"p/q"` strings and
//! vectors over `B` as lists of such strings.

use std::path::PathBuf;

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyList};

use tricochain::algebra::{
    format_coeffs, verify_tridendriform, AxiomReport, BElement, TriDendAlgebra, TriOp,
};
use tricochain::cochain::{check_commutation, check_injectivity, check_roundtrip, DeltaRoute};
use tricochain::cohomology::{
    assemble_tri_delta_matrix, cochain_dim, cocycle_basis, cohomology_dims,
};
use tricochain::exactlin::{parse_rational, QMatrix};
use tricochain::format::{parse_algebra, serialize_algebra};
use tricochain::tensor::{check_associativity, generator_triples, random_triples};
use tricochain::{cli, fixtures};

fn value_error(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn parse_vector(dim: usize, v: Vec<String>) -> PyResult<BElement> {
    if v.len() != dim {
        return Err(value_error(format!(
            "expected {dim} coordinates, got {}",
            v.len()
        )));
    }
    let coeffs = v
        .iter()
        .map(|s| parse_rational(s).map_err(value_error))
        .collect::<PyResult<Vec<_>>>()?;
    Ok(BElement::from_coeffs(coeffs))
}

fn format_vector(v: &BElement) -> Vec<String> {
    format_coeffs(v.coeffs())
}

fn parse_route(route: &str) -> PyResult<DeltaRoute> {
    match route {
        "extraction" => Ok(DeltaRoute::Extraction),
        "explicit" => Ok(DeltaRoute::Explicit),
        other => Err(value_error(format!(
            "unknown route {other:?}; use \"extraction\" or \"explicit\""
        ))),
    }
}

fn matrix_rows(m: &QMatrix) -> Vec<Vec<String>> {
    (0..m.rows()).map(|r| format_coeffs(m.row(r))).collect()
}

fn report_dict<'py>(py: Python<'py>, r: &AxiomReport) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new(py);
    d.set_item("passed", r.passed)?;
    d.set_item("checked", r.checked)?;
    let violations = PyList::empty(py);
    for v in &r.violations {
        let item = PyDict::new(py);
        item.set_item("axiom", &v.axiom)?;
        item.set_item("witness", v.witness.clone())?;
        item.set_item("lhs", &v.lhs)?;
        item.set_item("rhs", &v.rhs)?;
        violations.append(item)?;
    }
    d.set_item("violations", violations)?;
    Ok(d)
}

/// A finite-dimensional tri-dendriform algebra given by structure constants.
#[pyclass(name = "Algebra", module = "pytricochain", frozen)]
struct PyAlgebra {
    inner: TriDendAlgebra,
}

#[pymethods]
impl PyAlgebra {
    /// Parses the JSON algebra format.
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        parse_algebra(text)
            .map(|inner| PyAlgebra { inner })
            .map_err(value_error)
    }

    #[staticmethod]
    fn load(path: PathBuf) -> PyResult<Self> {
        cli::load(&path)
            .map(|l| PyAlgebra { inner: l.algebra })
            .map_err(value_error)
    }

    /// Built-in algebras: "tridend_1d", "tridend_2d", their "_broken"
    /// variants, and "zero_<d>d".
    #[staticmethod]
    fn fixture(name: &str) -> PyResult<Self> {
        let inner = match name {
            "tridend_1d" => fixtures::example_1d(),
            "tridend_2d" => fixtures::example_2d(),
            "tridend_1d_broken" => fixtures::example_1d_broken(),
            "tridend_2d_broken" => fixtures::example_2d_broken(),
            other => match other
                .strip_prefix("zero_")
                .and_then(|s| s.strip_suffix('d'))
                .and_then(|d| d.parse().ok())
            {
                Some(d) => fixtures::zero_algebra(d),
                None => return Err(value_error(format!("unknown fixture {name:?}"))),
            },
        };
        Ok(PyAlgebra { inner })
    }

    #[getter]
    fn name(&self) -> String {
        self.inner.name().to_string()
    }

    #[getter]
    fn dim(&self) -> usize {
        self.inner.dim()
    }

    fn to_json(&self) -> String {
        serialize_algebra(&self.inner)
    }

    /// `x op y` for op in "prec", "succ", "dot", "total".
    fn product(&self, op: &str, x: Vec<String>, y: Vec<String>) -> PyResult<Vec<String>> {
        let d = self.inner.dim();
        let (x, y) = (parse_vector(d, x)?, parse_vector(d, y)?);
        let out = match op {
            "prec" => self.inner.op(TriOp::Prec, &x, &y),
            "succ" => self.inner.op(TriOp::Succ, &x, &y),
            "dot" => self.inner.op(TriOp::Dot, &x, &y),
            "total" => self.inner.total_product(&x, &y),
            other => return Err(value_error(format!("unknown operation {other:?}"))),
        }
        .map_err(value_error)?;
        Ok(format_vector(&out))
    }

    /// The seven tri-dendriform identities and total-product associativity
    /// on all basis triples.
    fn verify<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        let r = py.detach(|| verify_tridendriform(&self.inner));
        report_dict(py, &r)
    }

    /// Associativity of `A ⊗ B` on generator triples and seeded random triples.
    #[pyo3(signature = (max_degree = 3, random = 200, seed = 0))]
    fn assoc_check<'py>(
        &self,
        py: Python<'py>,
        max_degree: usize,
        random: usize,
        seed: u64,
    ) -> PyResult<Bound<'py, PyDict>> {
        if max_degree == 0 {
            return Err(value_error("max_degree must be at least 1"));
        }
        let b = &self.inner;
        let (generators, randoms) = py.detach(|| {
            (
                check_associativity(b, &generator_triples(b.dim(), 3)),
                check_associativity(b, &random_triples(b.dim(), random, max_degree, seed)),
            )
        });
        let d = PyDict::new(py);
        d.set_item("passed", generators.passed && randoms.passed)?;
        d.set_item("seed", seed)?;
        d.set_item("generator_triples", report_dict(py, &generators)?)?;
        d.set_item("random_triples", report_dict(py, &randoms)?)?;
        Ok(d)
    }

    /// Commutation of `Ψ` with the differentials, extraction round trip and
    /// injectivity of `Ψ` in the given degree.
    fn cochain_check(&self, py: Python<'_>, degree: usize) -> PyResult<bool> {
        check_degree(degree)?;
        let b = &self.inner;
        py.detach(|| {
            let mut ok = check_roundtrip(b, degree).passed && check_injectivity(b, degree);
            let mut routes = vec![DeltaRoute::Extraction];
            if degree <= 2 {
                routes.push(DeltaRoute::Explicit);
            }
            for route in routes {
                ok &= check_commutation(b, degree, route)
                    .map_err(value_error)?
                    .passed;
            }
            Ok(ok)
        })
    }

    /// Matrix of `δ_tri` in degree `n` as rows of `"p/q"` strings.
    #[pyo3(signature = (n, route = "extraction"))]
    fn delta_matrix(&self, py: Python<'_>, n: usize, route: &str) -> PyResult<Vec<Vec<String>>> {
        check_degree(n)?;
        let route = parse_route(route)?;
        let m = py
            .detach(|| assemble_tri_delta_matrix(&self.inner, n, route))
            .map_err(value_error)?;
        Ok(matrix_rows(&m))
    }

    /// Per-degree dictionaries with `dim_cochains`, `rank`, `kernel_dim`,
    /// `image_dim`, `h_dim`, `delta_squared_zero` and optionally `cocycles`.
    #[pyo3(signature = (max_degree, emit_cocycles = false))]
    fn cohomology<'py>(
        &self,
        py: Python<'py>,
        max_degree: usize,
        emit_cocycles: bool,
    ) -> PyResult<Bound<'py, PyList>> {
        check_degree(max_degree)?;
        let rep = py
            .detach(|| cohomology_dims(&self.inner, max_degree, None, emit_cocycles))
            .map_err(value_error)?;
        let out = PyList::empty(py);
        for r in &rep.degrees {
            let d = PyDict::new(py);
            d.set_item("degree", r.degree)?;
            d.set_item("dim_cochains", r.dim_cochains)?;
            d.set_item("rank", r.rank)?;
            d.set_item("kernel_dim", r.kernel_dim)?;
            d.set_item("image_dim", r.image_dim)?;
            d.set_item("h_dim", r.h_dim)?;
            d.set_item("delta_squared_zero", r.delta_squared_zero)?;
            if let Some(c) = &r.cocycles {
                d.set_item("cocycles", c.clone())?;
            }
            out.append(d)?;
        }
        Ok(out)
    }

    /// Kernel basis of `δ_tri` in degree `n`.
    fn cocycle_basis(&self, py: Python<'_>, n: usize) -> PyResult<Vec<Vec<String>>> {
        check_degree(n)?;
        let basis = py.detach(|| cocycle_basis(&self.inner, n));
        Ok(basis.iter().map(|v| format_coeffs(v)).collect())
    }

    fn __repr__(&self) -> String {
        format!(
            "Algebra(name={:?}, dim={})",
            self.inner.name(),
            self.inner.dim()
        )
    }
}

fn check_degree(n: usize) -> PyResult<()> {
    if n == 0 || n > cli::DEGREE_CAP {
        return Err(value_error(format!(
            "degree must lie in 1..={}",
            cli::DEGREE_CAP
        )));
    }
    Ok(())
}

/// `(2ⁿ − 1) · dⁿ · d`.
#[pyfunction(name = "cochain_dim")]
fn py_cochain_dim(n: usize, d: usize) -> usize {
    cochain_dim(n, d)
}

#[pymodule]
fn pytricochain(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyAlgebra>()?;
    m.add_function(wrap_pyfunction!(py_cochain_dim, m)?)?;
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    Ok(())
}
