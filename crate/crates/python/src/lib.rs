//! Python bindings for `diagset`.

use pyo3::create_exception;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

use diagset::dsl::{self, DrawOptions, Format, View};
use diagset::kernel::{self, KernelError};
use diagset::molecule::{self as mol, ShapeError};
use diagset::ogposet::Sign;
use diagset::render::{self, RenderError};

create_exception!(pydiagset, ShapeException, PyValueError, "An invalid shape or shape operation.");
create_exception!(pydiagset, KernelException, PyValueError, "An invalid diagram or generator.");
create_exception!(pydiagset, DslException, PyValueError, "A script that fails to parse or elaborate.");
create_exception!(pydiagset, RenderException, PyValueError, "A diagram that cannot be drawn.");

fn shape_err(e: ShapeError) -> PyErr {
    ShapeException::new_err(e.to_string())
}

fn kernel_err(e: KernelError) -> PyErr {
    KernelException::new_err(e.to_string())
}

fn render_err(e: RenderError) -> PyErr {
    RenderException::new_err(e.to_string())
}

fn sign(s: &str) -> PyResult<Sign> {
    match s {
        "-" | "input" => Ok(Sign::Input),
        "+" | "output" => Ok(Sign::Output),
        _ => Err(PyValueError::new_err(format!("unknown sign {s}; expected '-' or '+'"))),
    }
}

fn options(view: Option<&str>, format: Option<&str>, bg: Option<String>) -> PyResult<DrawOptions> {
    let view = match view {
        None => None,
        Some("hasse") => Some(View::Hasse),
        Some("string") => Some(View::String),
        Some(v) => return Err(PyValueError::new_err(format!("unknown view {v}"))),
    };
    let format = match format {
        None => None,
        Some("tikz") => Some(Format::Tikz),
        Some("svg") => Some(Format::Svg),
        Some(f) => return Err(PyValueError::new_err(format!("unknown format {f}"))),
    };
    Ok(DrawOptions { view, format, bg })
}

/// A regular molecule in canonical form.
#[pyclass(name = "Molecule", module = "pydiagset", frozen, eq, hash, skip_from_py_object)]
#[derive(Clone, PartialEq, Eq, Hash)]
struct PyMolecule(mol::Molecule);

#[pymethods]
impl PyMolecule {
    /// Parses a shape expression such as `"binary *0 arrow"`.
    #[new]
    fn new(expr: &str) -> PyResult<Self> {
        expr.parse().map(PyMolecule).map_err(shape_err)
    }

    #[staticmethod]
    fn point() -> Self {
        PyMolecule(mol::Molecule::point())
    }

    #[staticmethod]
    fn arrow() -> Self {
        PyMolecule(mol::Molecule::arrow())
    }

    #[staticmethod]
    fn globe() -> Self {
        PyMolecule(mol::Molecule::globe())
    }

    #[staticmethod]
    fn binary() -> Self {
        PyMolecule(mol::Molecule::binary())
    }

    #[staticmethod]
    fn cobinary() -> Self {
        PyMolecule(mol::Molecule::cobinary())
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        mol::Molecule::from_json(text).map(PyMolecule).map_err(shape_err)
    }

    /// The atom with input `u` and output `v`.
    #[staticmethod]
    fn atom(u: &PyMolecule, v: &PyMolecule) -> PyResult<Self> {
        mol::Molecule::atom(&u.0, &v.0).map(PyMolecule).map_err(shape_err)
    }

    #[getter]
    fn dim(&self) -> isize {
        self.0.dim()
    }

    /// Number of elements in each dimension.
    #[getter]
    fn size(&self) -> Vec<usize> {
        self.0.size()
    }

    fn __len__(&self) -> usize {
        self.0.len()
    }

    fn is_round(&self) -> bool {
        self.0.is_round()
    }

    fn is_atom(&self) -> bool {
        self.0.is_atom()
    }

    fn to_json(&self) -> String {
        self.0.to_json()
    }

    /// Input and output faces of each element, as position lists.
    fn face_data(&self) -> Vec<Vec<(Vec<usize>, Vec<usize>)>> {
        let data = self.0.poset().face_data();
        data.iter().map(|s| s.iter().map(|[i, o]| (i.clone(), o.clone())).collect()).collect()
    }

    /// Pastes along the `k`-boundary, defaulting to one below the lower dimension.
    #[pyo3(signature = (other, k=None))]
    fn paste(&self, other: &PyMolecule, k: Option<usize>) -> PyResult<Self> {
        match k {
            Some(k) => mol::Molecule::paste(&self.0, &other.0, k),
            None => mol::Molecule::paste_default(&self.0, &other.0),
        }
        .map(PyMolecule)
        .map_err(shape_err)
    }

    #[pyo3(signature = (sign, k=None))]
    fn boundary(&self, sign: &str, k: Option<isize>) -> PyResult<Self> {
        Ok(PyMolecule(self.0.boundary(self::sign(sign)?, k.unwrap_or(self.0.dim() - 1))))
    }

    fn input(&self) -> Self {
        PyMolecule(self.0.input())
    }

    fn output(&self) -> Self {
        PyMolecule(self.0.output())
    }

    fn isomorphic(&self, other: &PyMolecule) -> bool {
        self.0.is_isomorphic(&other.0).is_some()
    }

    #[pyo3(signature = (view=None, format=None, bg=None))]
    fn render(&self, view: Option<&str>, format: Option<&str>, bg: Option<String>) -> PyResult<String> {
        render::render(&self.0, &options(view, format, bg)?).map_err(render_err)
    }

    fn __repr__(&self) -> String {
        format!("Molecule({:?})", self.0.expr())
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }
}

/// A molecule labelled by the cells of a complex.
#[pyclass(name = "Diagram", module = "pydiagset", frozen, eq, hash, skip_from_py_object)]
#[derive(Clone, PartialEq, Eq, Hash)]
struct PyDiagram(kernel::Diagram);

#[pymethods]
impl PyDiagram {
    #[getter]
    fn dim(&self) -> isize {
        self.0.dim()
    }

    #[getter]
    fn shape(&self) -> PyMolecule {
        PyMolecule(self.0.shape().clone())
    }

    /// Generator names labelling each element, by dimension and position.
    #[getter]
    fn labels(&self) -> Vec<Vec<String>> {
        self.0.label_names()
    }

    fn is_cell(&self) -> bool {
        self.0.is_cell()
    }

    #[pyo3(signature = (other, k=None))]
    fn paste(&self, other: &PyDiagram, k: Option<usize>) -> PyResult<Self> {
        match k {
            Some(k) => self.0.paste(&other.0, k),
            None => self.0.paste_default(&other.0),
        }
        .map(PyDiagram)
        .map_err(kernel_err)
    }

    fn unit(&self) -> PyResult<Self> {
        self.0.unit().map(PyDiagram).map_err(kernel_err)
    }

    fn lunitor(&self) -> PyResult<Self> {
        self.0.lunitor().map(PyDiagram).map_err(kernel_err)
    }

    fn runitor(&self) -> PyResult<Self> {
        self.0.runitor().map(PyDiagram).map_err(kernel_err)
    }

    fn input(&self) -> Self {
        PyDiagram(self.0.input())
    }

    fn output(&self) -> Self {
        PyDiagram(self.0.output())
    }

    #[pyo3(signature = (sign, k=None))]
    fn boundary(&self, sign: &str, k: Option<isize>) -> PyResult<Self> {
        Ok(PyDiagram(self.0.boundary(self::sign(sign)?, k.unwrap_or(self.0.dim() - 1))))
    }

    #[pyo3(signature = (view=None, format=None, bg=None))]
    fn render(&self, view: Option<&str>, format: Option<&str>, bg: Option<String>) -> PyResult<String> {
        render::render(&self.0, &options(view, format, bg)?).map_err(render_err)
    }

    fn __repr__(&self) -> String {
        format!("Diagram({})", self.0)
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }
}

/// A diagrammatic complex, grown one generator at a time.
#[pyclass(name = "DiagSet", module = "pydiagset")]
#[derive(Default)]
struct PyDiagSet(kernel::DiagSet);

#[pymethods]
impl PyDiagSet {
    #[new]
    fn new() -> Self {
        Self::default()
    }

    /// Adds a generator; a point when no type is given.
    #[pyo3(signature = (name, input=None, output=None))]
    fn add(&mut self, name: &str, input: Option<&PyDiagram>, output: Option<&PyDiagram>) -> PyResult<PyDiagram> {
        match (input, output) {
            (None, None) => self.0.add_point(name),
            (Some(i), Some(o)) => self.0.add_gen(name, &i.0, &o.0),
            _ => return Err(PyValueError::new_err("give both input and output, or neither")),
        }
        .map(PyDiagram)
        .map_err(kernel_err)
    }

    fn __len__(&self) -> usize {
        self.0.len()
    }

    fn __contains__(&self, name: &str) -> bool {
        self.0.contains(name)
    }

    fn __getitem__(&self, name: &str) -> PyResult<PyDiagram> {
        self.0.cell(name).map(PyDiagram).map_err(kernel_err)
    }

    fn names(&self) -> Vec<String> {
        self.0.generators().iter().map(|g| g.name().to_string()).collect()
    }

    fn encode(&self) -> String {
        kernel::encode(&self.0)
    }

    #[staticmethod]
    fn decode(text: &str) -> PyResult<Self> {
        kernel::decode(text).map(PyDiagSet).map_err(kernel_err)
    }

    fn __repr__(&self) -> String {
        format!("DiagSet({})", self.names().join(", "))
    }
}

/// Runs a script, returning the complex and every named diagram.
#[pyfunction]
fn load<'py>(py: Python<'py>, src: &str) -> PyResult<(PyDiagSet, Bound<'py, PyDict>)> {
    let out = dsl::load(src).map_err(|e| DslException::new_err(e.to_string()))?;
    let names = PyDict::new(py);
    for (name, d) in out.bindings() {
        names.set_item(name, PyDiagram(d.clone()))?;
    }
    Ok((PyDiagSet(out.diagset), names))
}

#[pymodule]
fn pydiagset(m: &Bound<'_, PyModule>) -> PyResult<()> {
    let py = m.py();
    m.add_class::<PyMolecule>()?;
    m.add_class::<PyDiagram>()?;
    m.add_class::<PyDiagSet>()?;
    m.add_function(wrap_pyfunction!(load, m)?)?;
    m.add("ShapeError", py.get_type::<ShapeException>())?;
    m.add("KernelError", py.get_type::<KernelException>())?;
    m.add("DslError", py.get_type::<DslException>())?;
    m.add("RenderError", py.get_type::<RenderException>())?;
    Ok(())
}
