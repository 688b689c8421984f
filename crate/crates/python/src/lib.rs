//! Python bindings: tile systems, assemblies, the closure, lint, and the
//! compile/verify pipeline.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

use tilesep_core::analysis::lint_assembly;
use tilesep_core::transform::{self, EdgePolicy};
use tilesep_core::{fixtures, format, render, sim, verify};
use tilesep_core::{Assembly as CoreAssembly, Caps, TileSystem as CoreSystem, UmftaVerdict};

fn value_err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

#[pyclass(name = "TileSystem", module = "tilesep", from_py_object)]
#[derive(Clone)]
struct TileSystem {
    inner: CoreSystem,
}

#[pymethods]
impl TileSystem {
    /// Parse the `.tds` text format.
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        let p = format::parse_system(text).map_err(value_err)?;
        Ok(TileSystem { inner: p.system })
    }

    fn to_text(&self) -> String {
        format::write_system(&self.inner)
    }

    #[getter]
    fn temperature(&self) -> u32 {
        self.inner.temperature()
    }

    #[getter]
    fn tile_names(&self) -> Vec<String> {
        self.inner.tiles().iter().map(|t| t.name.clone()).collect()
    }

    fn __len__(&self) -> usize {
        self.inner.size()
    }

    fn __repr__(&self) -> String {
        format!(
            "TileSystem(tiles={}, temperature={})",
            self.inner.size(),
            self.inner.temperature()
        )
    }
}

#[pyclass(name = "Assembly", module = "tilesep", from_py_object)]
#[derive(Clone)]
struct Assembly {
    inner: CoreAssembly,
}

#[pymethods]
impl Assembly {
    /// Parse `x y tilename` lines against `system`.
    #[staticmethod]
    fn parse(text: &str, system: &TileSystem) -> PyResult<Self> {
        let a = format::parse_assembly(text, &system.inner).map_err(value_err)?;
        Ok(Assembly { inner: a })
    }

    fn to_text(&self, system: &TileSystem) -> String {
        format::write_assembly(&self.inner, &system.inner)
    }

    /// `(x, y, tile name)` in canonical order.
    fn cells(&self, system: &TileSystem) -> Vec<(i32, i32, String)> {
        self.inner
            .cells()
            .iter()
            .map(|&(c, t)| (c.x, c.y, system.inner.tile(t).name.clone()))
            .collect()
    }

    fn shape(&self) -> Vec<(i32, i32)> {
        self.inner.positions().map(|c| (c.x, c.y)).collect()
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn __eq__(&self, other: &Assembly) -> bool {
        self.inner == other.inner
    }

    fn __repr__(&self) -> String {
        format!("Assembly(cells={})", self.inner.len())
    }
}

#[pyclass(name = "Closure", module = "tilesep")]
struct Closure {
    #[pyo3(get)]
    producibles: usize,
    #[pyo3(get)]
    terminals: Vec<Assembly>,
    #[pyo3(get)]
    saturated: bool,
    /// `"a/b"`, `"inf"` or `"undefined"`.
    #[pyo3(get)]
    factor: String,
    #[pyo3(get)]
    size_histogram: Vec<(usize, usize)>,
}

#[pyfunction]
#[pyo3(signature = (system, max_size=64, max_count=100_000, seeded=false))]
fn simulate(system: &TileSystem, max_size: usize, max_count: usize, seeded: bool) -> Closure {
    let c = sim::enumerate_producibles(&system.inner, Caps::new(max_size, max_count), seeded);
    Closure {
        producibles: c.producibles.len(),
        terminals: c
            .terminals
            .iter()
            .map(|t| Assembly { inner: t.clone() })
            .collect(),
        saturated: c.saturated,
        factor: verify::separability_factor(&c).to_string(),
        size_histogram: c.size_histogram(),
    }
}

/// `("yes" | "no" | "unknown", description, terminal or None)`.
#[pyfunction]
#[pyo3(signature = (system, max_size=64, max_count=100_000))]
fn umfta(system: &TileSystem, max_size: usize, max_count: usize) -> (String, String, Option<Assembly>) {
    let (v, _) = sim::is_umfta(&system.inner, Caps::new(max_size, max_count));
    let terminal = match &v {
        UmftaVerdict::Yes { terminal } => Some(Assembly {
            inner: terminal.clone(),
        }),
        _ => None,
    };
    (v.label().to_string(), v.describe(), terminal)
}

/// Structural diagnostics as `CODE cells message` strings.
#[pyfunction]
fn lint(system: &TileSystem, assembly: &Assembly) -> Vec<String> {
    lint_assembly(&system.inner, &assembly.inner)
        .iter()
        .map(|d| d.to_string())
        .collect()
}

#[pyfunction]
fn treeify(system: &TileSystem, assembly: &Assembly) -> PyResult<(TileSystem, Assembly)> {
    let (s, a) = transform::treeify(&system.inner, &assembly.inner).map_err(value_err)?;
    Ok((TileSystem { inner: s }, Assembly { inner: a }))
}

/// Returns the compiled system and the trace text.
#[pyfunction]
#[pyo3(signature = (system, policy="balanced", max_size=64, max_count=100_000))]
fn compile(system: &TileSystem, policy: &str, max_size: usize, max_count: usize) -> PyResult<(TileSystem, String)> {
    let policy = match policy {
        "balanced" => EdgePolicy::Balanced,
        "canonical" => EdgePolicy::Canonical,
        other => return Err(PyValueError::new_err(format!("unknown policy `{other}`"))),
    };
    let (s, trace) = transform::size_separable_compile(&system.inner, Caps::new(max_size, max_count), policy)
        .map_err(value_err)?;
    Ok((TileSystem { inner: s }, format::write_trace(&trace)))
}

/// Verification report as a dict.
#[pyfunction]
#[pyo3(signature = (original, compiled, trace, max_size=64, max_count=100_000))]
fn verify_pipeline<'py>(
    py: Python<'py>,
    original: &TileSystem,
    compiled: &TileSystem,
    trace: &str,
    max_size: usize,
    max_count: usize,
) -> PyResult<Bound<'py, PyDict>> {
    let trace = format::parse_trace(trace).map_err(value_err)?;
    let r = verify::verify_pipeline(&original.inner, &compiled.inner, &trace, Caps::new(max_size, max_count));
    let d = PyDict::new(py);
    d.set_item("outcome", r.outcome().to_string())?;
    d.set_item("factor", r.factor.to_string())?;
    d.set_item("imbalance", r.imbalance)?;
    d.set_item("terminal_size", r.terminal_size)?;
    d.set_item("max_nonterminal_size", r.max_nonterminal_size)?;
    d.set_item("tiles", r.tiles)?;
    d.set_item("saturated", r.saturated)?;
    d.set_item("failures", r.failures())?;
    Ok(d)
}

#[pyfunction]
#[pyo3(signature = (assembly, system, show_strengths=false))]
fn render_svg(assembly: &Assembly, system: &TileSystem, show_strengths: bool) -> String {
    render::render_svg(&assembly.inner, &system.inner, show_strengths)
}

/// Built-in example: `domino`, `path3`, `square4`, `star4`, `l_tromino`, `block2x3`.
#[pyfunction]
fn fixture(name: &str) -> PyResult<(TileSystem, Assembly)> {
    fixtures::umfta_fixtures()
        .into_iter()
        .find(|f| f.0 == name)
        .map(|(_, s, a)| (TileSystem { inner: s }, Assembly { inner: a }))
        .ok_or_else(|| PyValueError::new_err(format!("no fixture `{name}`")))
}

#[pymodule]
fn tilesep(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<TileSystem>()?;
    m.add_class::<Assembly>()?;
    m.add_class::<Closure>()?;
    m.add_function(wrap_pyfunction!(simulate, m)?)?;
    m.add_function(wrap_pyfunction!(umfta, m)?)?;
    m.add_function(wrap_pyfunction!(lint, m)?)?;
    m.add_function(wrap_pyfunction!(treeify, m)?)?;
    m.add_function(wrap_pyfunction!(compile, m)?)?;
    m.add_function(wrap_pyfunction!(verify_pipeline, m)?)?;
    m.add_function(wrap_pyfunction!(render_svg, m)?)?;
    m.add_function(wrap_pyfunction!(fixture, m)?)?;
    Ok(())
}
