//! Python bindings: mosaics, censuses, certificates and grid conversions.

use knot_mosaic::enumerate::count_knot_mosaics;
use knot_mosaic::grid::{grid_to_mosaic, mosaic_to_grid, GridDiagram};
use knot_mosaic::orbits::{compute_orbits, same_type_n, Verdict};
use knot_mosaic::search::{find_certificate, replay, MoveCertificate, SearchBudget, SearchOutcome};
use knot_mosaic::zoom::zoom5;
use knot_mosaic::{fingerprint, Catalog, Error};
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

fn to_py(e: Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

#[pyclass(name = "Mosaic", eq, frozen, skip_from_py_object)]
#[derive(Clone, PartialEq)]
pub struct PyMosaic {
    inner: knot_mosaic::Mosaic,
}

#[pymethods]
impl PyMosaic {
    /// Rows of tile indices 0..=10.
    #[new]
    fn new(rows: Vec<Vec<u8>>) -> PyResult<Self> {
        let inner = knot_mosaic::Mosaic::from_rows(&rows).map_err(to_py)?;
        Ok(PyMosaic { inner })
    }

    /// File format: side on the first line, then the rows.
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        Ok(PyMosaic {
            inner: knot_mosaic::Mosaic::parse(text).map_err(to_py)?,
        })
    }

    #[staticmethod]
    fn blank(n: usize) -> Self {
        PyMosaic {
            inner: knot_mosaic::Mosaic::blank(n),
        }
    }

    #[getter]
    fn side(&self) -> usize {
        self.inner.side()
    }

    fn rows(&self) -> Vec<Vec<u8>> {
        self.inner
            .rows()
            .map(|r| r.iter().map(|t| t.index()).collect())
            .collect()
    }

    fn is_knot_mosaic(&self) -> bool {
        self.inner.is_suitably_connected()
    }

    /// `(row, col, edge)` of the first unmatched connection point.
    fn first_violation(&self) -> Option<(usize, usize, String)> {
        self.inner.first_violation().map(|v| (v.row, v.col, v.edge.to_string()))
    }

    fn crossing_count(&self) -> usize {
        self.inner.crossing_count()
    }

    fn serialize(&self) -> String {
        self.inner.serialize()
    }

    fn render(&self) -> String {
        self.inner.render_ascii()
    }

    fn inject(&self) -> Self {
        PyMosaic {
            inner: self.inner.inject(),
        }
    }

    fn zoom(&self) -> Self {
        PyMosaic {
            inner: zoom5(&self.inner),
        }
    }

    /// `(components, [(exponent, coefficient), ...])`.
    fn fingerprint(&self) -> PyResult<(usize, Vec<(i32, i64)>)> {
        let f = fingerprint(&self.inner).map_err(to_py)?;
        Ok((f.component_count, f.bracket.terms().collect()))
    }

    fn __repr__(&self) -> String {
        format!("Mosaic({})", self.inner.to_row_string())
    }
}

/// Number of knot n-mosaics.
#[pyfunction]
fn count_mosaics(n: usize) -> usize {
    count_knot_mosaics(n)
}

/// `[(id, size, representative), ...]` for the orbits of knot n-mosaics.
#[pyfunction]
fn orbit_census(n: usize) -> PyResult<Vec<(usize, usize, PyMosaic)>> {
    let p = compute_orbits(n).map_err(to_py)?;
    Ok(p.classes()
        .iter()
        .map(|c| {
            (
                c.id,
                c.size,
                PyMosaic {
                    inner: c.representative.clone(),
                },
            )
        })
        .collect())
}

/// `"same"`, `"different"` or `"unknown"` for two mosaics of one side.
#[pyfunction]
fn same_type(a: &PyMosaic, b: &PyMosaic) -> PyResult<&'static str> {
    Ok(
        match same_type_n(&a.inner, &b.inner, SearchBudget::default()).map_err(to_py)? {
            Verdict::Same => "same",
            Verdict::Different => "different",
            Verdict::Unknown => "unknown",
        },
    )
}

/// Certificate text, or `None` when the search finds nothing.
#[pyfunction]
#[pyo3(signature = (a, b, max_pad = 2, max_depth = 12, max_states = 4_000_000))]
fn certificate(
    a: &PyMosaic,
    b: &PyMosaic,
    max_pad: usize,
    max_depth: usize,
    max_states: usize,
) -> PyResult<Option<String>> {
    let budget = SearchBudget {
        max_pad,
        max_depth,
        max_states,
    };
    Ok(match find_certificate(&a.inner, &b.inner, budget).map_err(to_py)? {
        SearchOutcome::Found(c) => Some(c.serialize(Catalog::standard())),
        SearchOutcome::Exhausted | SearchOutcome::Separated => None,
    })
}

/// Applies certificate text to `a`, returning the padded end mosaic.
#[pyfunction]
fn replay_certificate(text: &str, a: &PyMosaic) -> PyResult<PyMosaic> {
    let cert = MoveCertificate::parse(text, Catalog::standard()).map_err(to_py)?;
    Ok(PyMosaic {
        inner: replay(&cert, &a.inner).map_err(to_py)?,
    })
}

/// Draws the grid with 1-based X and O rows per column.
#[pyfunction]
fn grid_to_mosaic_rows(x: Vec<usize>, o: Vec<usize>) -> PyResult<PyMosaic> {
    let zero = |v: Vec<usize>| v.into_iter().map(|r| r.checked_sub(1)).collect::<Option<Vec<_>>>();
    let (x, o) = zero(x)
        .zip(zero(o))
        .ok_or_else(|| PyValueError::new_err("rows are numbered from 1"))?;
    let g = GridDiagram::new(x, o).map_err(to_py)?;
    Ok(PyMosaic {
        inner: grid_to_mosaic(&g),
    })
}

/// 1-based `(x, o)` of the grid read off a knot mosaic.
#[pyfunction]
fn mosaic_to_grid_rows(m: &PyMosaic) -> PyResult<(Vec<usize>, Vec<usize>)> {
    let g = mosaic_to_grid(&m.inner).map_err(to_py)?;
    let one = |v: &[usize]| v.iter().map(|r| r + 1).collect();
    Ok((one(g.x()), one(g.o())))
}

#[pymodule]
fn mosaics(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyMosaic>()?;
    m.add_function(wrap_pyfunction!(count_mosaics, m)?)?;
    m.add_function(wrap_pyfunction!(orbit_census, m)?)?;
    m.add_function(wrap_pyfunction!(same_type, m)?)?;
    m.add_function(wrap_pyfunction!(certificate, m)?)?;
    m.add_function(wrap_pyfunction!(replay_certificate, m)?)?;
    m.add_function(wrap_pyfunction!(grid_to_mosaic_rows, m)?)?;
    m.add_function(wrap_pyfunction!(mosaic_to_grid_rows, m)?)?;
    Ok(())
}
