//! Python bindings for `cyclograph`.

use std::path::PathBuf;

use cyclograph::decomposition::census_json;
use cyclograph::io::{decimal, parse_graph, read_graph};
use cyclograph::{
    brute_force_spanning_trees, build_laplacian, cauchy_binet_expand, census, census_total,
    count_alpha_beta, four_vertex_count, galois_count, graph_laplacian, laplacian_minor,
    spanning_trees_via_cofactor, triangle_count, CycloNum, Error, Limits, OrientedGraph,
    RootParam, SpanningTreeReport, Substructure, VertexId,
};
use pyo3::create_exception;
use pyo3::exceptions::{PyTypeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::{PyComplex, PyDict, PyInt, PyList};
use serde_json::Value;

create_exception!(pycyclograph, CycloGraphError, PyValueError, "Invalid input or arithmetic failure.");
create_exception!(pycyclograph, PreconditionError, CycloGraphError, "A counting method's precondition does not hold.");
create_exception!(pycyclograph, GuardrailError, CycloGraphError, "Enumeration would exceed the subset limit; pass force=True.");

fn to_py_err(e: Error) -> PyErr {
    let message = e.to_string();
    match e.exit_code() {
        3 => GuardrailError::new_err(message),
        2 => PreconditionError::new_err(message),
        _ => CycloGraphError::new_err(message),
    }
}

fn json_to_py<'py>(py: Python<'py>, v: &Value) -> PyResult<Bound<'py, PyAny>> {
    Ok(match v {
        Value::Null => py.None().into_bound(py),
        Value::Bool(b) => b.into_pyobject(py)?.to_owned().into_any(),
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                i.into_pyobject(py)?.into_any()
            } else if let Some(u) = n.as_u64() {
                u.into_pyobject(py)?.into_any()
            } else {
                n.as_f64().unwrap_or(f64::NAN).into_pyobject(py)?.into_any()
            }
        }
        Value::String(s) => s.into_pyobject(py)?.into_any(),
        Value::Array(xs) => {
            let list = PyList::empty(py);
            for x in xs {
                list.append(json_to_py(py, x)?)?;
            }
            list.into_any()
        }
        Value::Object(map) => {
            let dict = PyDict::new(py);
            for (k, x) in map {
                dict.set_item(k, json_to_py(py, x)?)?;
            }
            dict.into_any()
        }
    })
}

fn limits(force: bool) -> Limits {
    if force {
        Limits::unbounded()
    } else {
        Limits::default()
    }
}

/// A root of unity `omega_n^q`.
#[pyclass(name = "RootParam", module = "pycyclograph", frozen, eq, hash, from_py_object)]
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct PyRootParam {
    inner: RootParam,
}

#[pymethods]
impl PyRootParam {
    /// Parses `1`, `-1`, `i`, `w5`, `w5^2` or `5/2`.
    #[new]
    fn py_new(text: &str) -> PyResult<Self> {
        text.parse::<RootParam>()
            .map(|inner| Self { inner })
            .map_err(to_py_err)
    }

    /// `omega_order^power` with `gcd(order, power) = 1`.
    #[staticmethod]
    fn of(order: u32, power: u32) -> PyResult<Self> {
        RootParam::new(order, power)
            .map(|inner| Self { inner })
            .map_err(to_py_err)
    }

    #[getter]
    fn order(&self) -> u32 {
        self.inner.order()
    }

    #[getter]
    fn power(&self) -> u32 {
        self.inner.power()
    }

    /// The root itself as an exact field element.
    fn value(&self) -> PyCycloNum {
        cyclograph::root_of_unity(self.inner).into()
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("RootParam('{}')", self.inner)
    }
}

fn param_arg(p: &Bound<'_, PyAny>) -> PyResult<RootParam> {
    if let Ok(r) = p.extract::<PyRootParam>() {
        return Ok(r.inner);
    }
    if let Ok(s) = p.extract::<String>() {
        return s.parse().map_err(to_py_err);
    }
    if let Ok(n) = p.extract::<i64>() {
        return n.to_string().parse().map_err(to_py_err);
    }
    Err(PyTypeError::new_err("expected a RootParam, str or int"))
}

/// An exact element of a cyclotomic field.
#[pyclass(name = "CycloNum", module = "pycyclograph", frozen, skip_from_py_object)]
#[derive(Clone)]
pub struct PyCycloNum {
    inner: CycloNum,
}

impl From<CycloNum> for PyCycloNum {
    fn from(inner: CycloNum) -> Self {
        Self { inner }
    }
}

fn operand(x: &Bound<'_, PyAny>) -> PyResult<CycloNum> {
    if let Ok(c) = x.extract::<PyRef<'_, PyCycloNum>>() {
        return Ok(c.inner.clone());
    }
    if let Ok(n) = x.extract::<i64>() {
        return Ok(CycloNum::from_int(1, n));
    }
    Err(PyTypeError::new_err("expected a CycloNum or int"))
}

#[pymethods]
impl PyCycloNum {
    /// `sum c_i zeta_order^i` from integer coefficients.
    #[new]
    #[pyo3(signature = (order, coeffs))]
    fn py_new(order: u32, coeffs: Vec<i64>) -> PyResult<Self> {
        if order == 0 {
            return Err(CycloGraphError::new_err("order must be positive"));
        }
        Ok(CycloNum::from_int_coeffs(order, &coeffs).into())
    }

    /// `zeta_order^exponent`.
    #[staticmethod]
    fn zeta(order: u32, exponent: i64) -> PyResult<Self> {
        if order == 0 {
            return Err(CycloGraphError::new_err("order must be positive"));
        }
        Ok(CycloNum::zeta_pow(order, exponent).into())
    }

    #[getter]
    fn order(&self) -> u32 {
        self.inner.order()
    }

    /// Coefficients in the power basis as decimal strings (`"a"` or `"p/q"`).
    #[getter]
    fn coeffs(&self) -> Vec<String> {
        self.inner.coeffs().iter().map(|c| c.to_string()).collect()
    }

    fn is_zero(&self) -> bool {
        self.inner.is_zero()
    }

    fn is_rational(&self) -> bool {
        self.inner.is_rational()
    }

    /// The value as a Python int, or None if it is not an integer.
    fn to_int<'py>(&self, py: Python<'py>) -> PyResult<Option<Bound<'py, PyAny>>> {
        match self.inner.to_integer() {
            Some(n) => {
                let int = py.get_type::<PyInt>();
                Ok(Some(int.call1((n.to_string(),))?))
            }
            None => Ok(None),
        }
    }

    fn conjugate(&self) -> Self {
        self.inner.conjugate().into()
    }

    /// Applies the automorphism `zeta -> zeta^q`.
    fn galois(&self, q: i64) -> PyResult<Self> {
        self.inner.galois_apply(q).map(Into::into).map_err(to_py_err)
    }

    /// Rewritten in the smallest field that contains it.
    fn simplify(&self) -> Self {
        self.inner.clone().simplify().into()
    }

    fn pretty(&self) -> String {
        self.inner.pretty()
    }

    /// Six-decimal rendering, with an imaginary part when present.
    fn approx(&self) -> String {
        decimal(&self.inner)
    }

    fn __complex__<'py>(&self, py: Python<'py>) -> Bound<'py, PyComplex> {
        let z = self.inner.to_complex();
        PyComplex::from_doubles(py, z.re, z.im)
    }

    fn __add__(&self, other: &Bound<'_, PyAny>) -> PyResult<Self> {
        Ok((&self.inner + &operand(other)?).into())
    }

    fn __radd__(&self, other: &Bound<'_, PyAny>) -> PyResult<Self> {
        Ok((&operand(other)? + &self.inner).into())
    }

    fn __sub__(&self, other: &Bound<'_, PyAny>) -> PyResult<Self> {
        Ok((&self.inner - &operand(other)?).into())
    }

    fn __rsub__(&self, other: &Bound<'_, PyAny>) -> PyResult<Self> {
        Ok((&operand(other)? - &self.inner).into())
    }

    fn __mul__(&self, other: &Bound<'_, PyAny>) -> PyResult<Self> {
        Ok((&self.inner * &operand(other)?).into())
    }

    fn __rmul__(&self, other: &Bound<'_, PyAny>) -> PyResult<Self> {
        Ok((&operand(other)? * &self.inner).into())
    }

    fn __truediv__(&self, other: &Bound<'_, PyAny>) -> PyResult<Self> {
        self.inner
            .checked_div(&operand(other)?)
            .map(Into::into)
            .map_err(to_py_err)
    }

    fn __rtruediv__(&self, other: &Bound<'_, PyAny>) -> PyResult<Self> {
        operand(other)?
            .checked_div(&self.inner)
            .map(Into::into)
            .map_err(to_py_err)
    }

    fn __pow__(&self, e: u32, _modulo: Option<&Bound<'_, PyAny>>) -> Self {
        self.inner.pow(e).into()
    }

    fn __neg__(&self) -> Self {
        (-&self.inner).into()
    }

    fn __eq__(&self, other: &Bound<'_, PyAny>) -> bool {
        operand(other).is_ok_and(|o| o == self.inner)
    }

    fn __bool__(&self) -> bool {
        !self.inner.is_zero()
    }

    fn __str__(&self) -> String {
        self.inner.pretty()
    }

    fn __repr__(&self) -> String {
        format!("CycloNum({})", self.inner)
    }
}

fn determinants<'py>(
    py: Python<'py>,
    ds: &[(RootParam, CycloNum)],
) -> PyResult<Bound<'py, PyList>> {
    let list = PyList::empty(py);
    for (p, d) in ds {
        list.append((PyRootParam { inner: *p }, PyCycloNum::from(d.clone())))?;
    }
    Ok(list)
}

fn matrix(rows: Vec<Vec<CycloNum>>) -> Vec<Vec<PyCycloNum>> {
    rows.into_iter()
        .map(|r| r.into_iter().map(Into::into).collect())
        .collect()
}

fn tree_report<'py>(py: Python<'py>, r: &SpanningTreeReport) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new(py);
    d.set_item("count", r.count)?;
    d.set_item("condition_holds", r.condition_holds)?;
    d.set_item("parameter", PyRootParam { inner: r.parameter })?;
    d.set_item("deleted_vertex", r.deleted_vertex)?;
    d.set_item("minor", PyCycloNum::from(r.minor.clone()))?;
    Ok(d)
}

/// A loopless oriented graph without multiple arcs or digons.
#[pyclass(name = "Graph", module = "pycyclograph", frozen)]
pub struct PyGraph {
    inner: OrientedGraph,
}

impl PyGraph {
    fn vset(&self, vset: Option<Vec<VertexId>>) -> Vec<VertexId> {
        vset.unwrap_or_else(|| self.inner.vertices().to_vec())
    }

    fn substructure(
        &self,
        vset: Option<Vec<VertexId>>,
        eset: Option<Vec<usize>>,
    ) -> PyResult<Substructure<'_>> {
        let vs = self.vset(vset);
        let es = eset.unwrap_or_else(|| (0..self.inner.edge_count()).collect());
        Substructure::new(&self.inner, &vs, &es).map_err(to_py_err)
    }
}

#[pymethods]
impl PyGraph {
    /// Arcs are `(tail, head)` pairs; edge ids follow their order.
    #[new]
    #[pyo3(signature = (arcs, vertices = None))]
    fn py_new(arcs: Vec<(VertexId, VertexId)>, vertices: Option<Vec<VertexId>>) -> PyResult<Self> {
        let inner = match vertices {
            Some(vs) => OrientedGraph::new(&vs, &arcs),
            None => OrientedGraph::from_arcs(&arcs),
        }
        .map_err(to_py_err)?;
        Ok(Self { inner })
    }

    /// Parses an edge list or a JSON document.
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        parse_graph(text).map(|inner| Self { inner }).map_err(to_py_err)
    }

    #[staticmethod]
    fn read(path: PathBuf) -> PyResult<Self> {
        read_graph(&path).map(|inner| Self { inner }).map_err(to_py_err)
    }

    #[getter]
    fn vertices(&self) -> Vec<VertexId> {
        self.inner.vertices().to_vec()
    }

    /// `(id, tail, head)` for every edge.
    #[getter]
    fn edges(&self) -> Vec<(usize, VertexId, VertexId)> {
        self.inner.edges().iter().map(|e| (e.id, e.tail, e.head)).collect()
    }

    fn __len__(&self) -> usize {
        self.inner.vertex_count()
    }

    fn __repr__(&self) -> String {
        format!(
            "Graph({} vertices, {} edges)",
            self.inner.vertex_count(),
            self.inner.edge_count()
        )
    }

    /// The full Hermitian Laplacian as rows of `CycloNum`.
    fn laplacian(&self, param: &Bound<'_, PyAny>) -> PyResult<Vec<Vec<PyCycloNum>>> {
        let p = param_arg(param)?;
        Ok(matrix(graph_laplacian(&self.inner, p).matrix.to_rows()))
    }

    /// Laplacian of a substructure, with degrees taken inside it.
    #[pyo3(signature = (param, vset = None, eset = None))]
    fn substructure_laplacian(
        &self,
        param: &Bound<'_, PyAny>,
        vset: Option<Vec<VertexId>>,
        eset: Option<Vec<usize>>,
    ) -> PyResult<Vec<Vec<PyCycloNum>>> {
        let p = param_arg(param)?;
        let sub = self.substructure(vset, eset)?;
        Ok(matrix(build_laplacian(&sub, p).matrix.to_rows()))
    }

    /// Principal minor `det L[vset]`, by default over every vertex.
    #[pyo3(signature = (param, vset = None))]
    fn minor(&self, param: &Bound<'_, PyAny>, vset: Option<Vec<VertexId>>) -> PyResult<PyCycloNum> {
        let p = param_arg(param)?;
        laplacian_minor(&self.inner, p, &self.vset(vset))
            .map(|m| m.simplify().into())
            .map_err(to_py_err)
    }

    /// The same minor as a sum over edge subsets.
    #[pyo3(signature = (param, vset = None, force = false))]
    fn expand(
        &self,
        param: &Bound<'_, PyAny>,
        vset: Option<Vec<VertexId>>,
        force: bool,
    ) -> PyResult<PyCycloNum> {
        let p = param_arg(param)?;
        cauchy_binet_expand(&self.inner, p, &self.vset(vset), limits(force))
            .map(|m| m.simplify().into())
            .map_err(to_py_err)
    }

    /// Census of all-regular substructures; each record carries its
    /// contribution at `param`.
    #[pyo3(signature = (vset = None, param = None, force = false))]
    fn census<'py>(
        &self,
        py: Python<'py>,
        vset: Option<Vec<VertexId>>,
        param: Option<&Bound<'py, PyAny>>,
        force: bool,
    ) -> PyResult<Bound<'py, PyAny>> {
        let p = param.map(param_arg).transpose()?.unwrap_or(RootParam::ONE);
        let entries = census(&self.inner, &self.vset(vset), limits(force)).map_err(to_py_err)?;
        json_to_py(py, &census_json(&entries, p))
    }

    /// Weighted census total at `param`.
    #[pyo3(signature = (param, vset = None, force = false))]
    fn census_total(
        &self,
        param: &Bound<'_, PyAny>,
        vset: Option<Vec<VertexId>>,
        force: bool,
    ) -> PyResult<PyCycloNum> {
        let p = param_arg(param)?;
        let entries = census(&self.inner, &self.vset(vset), limits(force)).map_err(to_py_err)?;
        Ok(census_total(&entries, p).simplify().into())
    }

    /// `(n_alpha, n_beta)` of an all-regular substructure.
    #[pyo3(signature = (vset = None, eset = None))]
    fn count_alpha_beta(
        &self,
        vset: Option<Vec<VertexId>>,
        eset: Option<Vec<usize>>,
    ) -> PyResult<(u32, u32)> {
        let sub = self.substructure(vset, eset)?;
        let c = count_alpha_beta(&sub).map_err(to_py_err)?;
        Ok((c.n_alpha.unwrap_or(0), c.n_beta.unwrap_or(0)))
    }

    /// Non-vanishing unicyclic components from the conjugates at an odd
    /// prime `p`.
    #[pyo3(signature = (p, vset = None, eset = None))]
    fn galois_count(
        &self,
        p: u64,
        vset: Option<Vec<VertexId>>,
        eset: Option<Vec<usize>>,
    ) -> PyResult<u32> {
        let sub = self.substructure(vset, eset)?;
        galois_count(&sub, p).map(|c| c.n_star).map_err(to_py_err)
    }

    /// Triangles and rootless spanning trees on three vertices.
    #[pyo3(signature = (vset, verify = false, force = false))]
    fn triangle_count<'py>(
        &self,
        py: Python<'py>,
        vset: Vec<VertexId>,
        verify: bool,
        force: bool,
    ) -> PyResult<Bound<'py, PyDict>> {
        let r = triangle_count(&self.inner, &vset, verify, limits(force)).map_err(to_py_err)?;
        let d = PyDict::new(py);
        d.set_item("triangles", r.triangles)?;
        d.set_item("rootless_trees", r.rootless_trees)?;
        d.set_item("determinants", determinants(py, &r.determinants)?)?;
        Ok(d)
    }

    /// The five four-vertex class counts.
    #[pyo3(signature = (vset, verify = false, force = false))]
    fn four_vertex_count<'py>(
        &self,
        py: Python<'py>,
        vset: Vec<VertexId>,
        verify: bool,
        force: bool,
    ) -> PyResult<Bound<'py, PyDict>> {
        let r = four_vertex_count(&self.inner, &vset, verify, limits(force)).map_err(to_py_err)?;
        let c = r.counts;
        let d = PyDict::new(py);
        for (k, v) in [
            ("c440", c.c440),
            ("c441", c.c441),
            ("tu330", c.tu330),
            ("tu331", c.tu331),
            ("f4", c.f4),
        ] {
            d.set_item(k, v)?;
        }
        d.set_item("determinants", determinants(py, &r.determinants)?)?;
        Ok(d)
    }

    /// Spanning trees from the cofactor at `param`. Raises
    /// `PreconditionError` when the cycle condition fails.
    #[pyo3(signature = (param = None, vertex = None))]
    fn spanning_trees<'py>(
        &self,
        py: Python<'py>,
        param: Option<&Bound<'py, PyAny>>,
        vertex: Option<VertexId>,
    ) -> PyResult<Bound<'py, PyDict>> {
        let p = param.map(param_arg).transpose()?.unwrap_or(RootParam::ONE);
        let v = match vertex {
            Some(v) => v,
            None => *self
                .inner
                .vertices()
                .first()
                .ok_or_else(|| to_py_err(Error::EmptyGraph))?,
        };
        let r = spanning_trees_via_cofactor(&self.inner, p, v).map_err(to_py_err)?;
        tree_report(py, &r)
    }

    /// Spanning trees by direct enumeration.
    fn brute_force_spanning_trees(&self) -> u64 {
        brute_force_spanning_trees(&self.inner)
    }
}

/// Exact Hermitian Laplacian minors of oriented graphs.
#[pymodule]
fn pycyclograph(m: &Bound<'_, PyModule>) -> PyResult<()> {
    let py = m.py();
    m.add_class::<PyRootParam>()?;
    m.add_class::<PyCycloNum>()?;
    m.add_class::<PyGraph>()?;
    m.add("CycloGraphError", py.get_type::<CycloGraphError>())?;
    m.add("PreconditionError", py.get_type::<PreconditionError>())?;
    m.add("GuardrailError", py.get_type::<GuardrailError>())?;
    Ok(())
}
