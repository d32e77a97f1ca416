//! Python bindings: a `Ring` class over the DSL plus the polynomial and
//! decision entry points. All failures surface as `ValueError` carrying
//! the library's diagnostic text (byte offsets included for parse errors).

use std::sync::Arc;

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

use pring_core::decision::{
    enumerate_ideals_oracle, has_nonzero_p_ideal_oracle, is_p_ring_oracle, is_p_ring_theorem,
    is_vnr_oracle, is_vnr_theorem, list_p_ideals_oracle, mccoy_decompose, p_ideals_of_zmod,
    quotient_has_p_ideal, DecisionReport, Method,
};
use pring_core::dsl::{parse_poly_text, parse_ring_expr};
use pring_core::eval::{eval_str, poly_ast_to_fp, EvalContext};
use pring_core::ring::{FiniteRing, Limits, RingKind};

fn value_err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn method_str(m: Method) -> &'static str {
    match m {
        Method::Theorem => "theorem",
        Method::Oracle => "oracle",
    }
}

fn report_dict<'py>(py: Python<'py>, rep: &DecisionReport) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new(py);
    d.set_item("verdict", rep.verdict)?;
    d.set_item("method", method_str(rep.method))?;
    d.set_item("checked", rep.checked)?;
    match &rep.witness {
        Some(w) => {
            let wd = PyDict::new(py);
            wd.set_item("index", w.index)?;
            wd.set_item("element", &w.element)?;
            wd.set_item("reason", &w.reason)?;
            d.set_item("witness", wd)?;
        }
        None => d.set_item("witness", py.None())?,
    }
    Ok(d)
}

/// A finite commutative ring built from a DSL expression.
#[pyclass(name = "Ring", frozen)]
struct PyRing {
    ring: Arc<FiniteRing>,
    limits: Limits,
    expr: String,
}

impl PyRing {
    fn check_idx(&self, x: u64) -> PyResult<()> {
        if x < self.ring.order() {
            Ok(())
        } else {
            Err(value_err(format!(
                "element index {x} out of range for a ring of order {}",
                self.ring.order()
            )))
        }
    }

    fn check_pair(&self, x: u64, y: u64) -> PyResult<()> {
        self.check_idx(x)?;
        self.check_idx(y)
    }
}

#[pymethods]
impl PyRing {
    #[new]
    #[pyo3(signature = (expr, max_order = 4096, oracle_max = 256))]
    fn new(expr: &str, max_order: u64, oracle_max: u64) -> PyResult<Self> {
        let limits = Limits { max_order, oracle_max };
        let ring = eval_str(expr, &EvalContext::with_limits(limits)).map_err(value_err)?;
        let canonical = parse_ring_expr(expr)
            .map(|ast| ast.to_string())
            .map_err(value_err)?;
        Ok(PyRing { ring, limits, expr: canonical })
    }

    /// Canonical form of the expression this ring was built from.
    #[getter]
    fn expr(&self) -> &str {
        &self.expr
    }

    #[getter]
    fn order(&self) -> u64 {
        self.ring.order()
    }

    #[getter]
    fn characteristic(&self) -> u64 {
        self.ring.characteristic()
    }

    #[getter]
    fn zero(&self) -> u64 {
        self.ring.zero_idx()
    }

    #[getter]
    fn one(&self) -> u64 {
        self.ring.one_idx()
    }

    fn describe(&self) -> String {
        self.ring.describe()
    }

    /// Human-readable form of the element with the given index.
    fn element(&self, x: u64) -> PyResult<String> {
        self.check_idx(x)?;
        Ok(self.ring.element_string(x))
    }

    fn add(&self, x: u64, y: u64) -> PyResult<u64> {
        self.check_pair(x, y)?;
        Ok(self.ring.add_idx(x, y))
    }

    fn sub(&self, x: u64, y: u64) -> PyResult<u64> {
        self.check_pair(x, y)?;
        Ok(self.ring.sub_idx(x, y))
    }

    fn mul(&self, x: u64, y: u64) -> PyResult<u64> {
        self.check_pair(x, y)?;
        Ok(self.ring.mul_idx(x, y))
    }

    fn neg(&self, x: u64) -> PyResult<u64> {
        self.check_idx(x)?;
        Ok(self.ring.neg_idx(x))
    }

    fn pow(&self, x: u64, k: u64) -> PyResult<u64> {
        self.check_idx(x)?;
        Ok(self.ring.pow_idx(x, k))
    }

    fn int_mul(&self, k: i64, x: u64) -> PyResult<u64> {
        self.check_idx(x)?;
        Ok(self.ring.int_mul_idx(k, x))
    }

    /// Decide whether the ring is a p-ring.
    /// method: "auto" (theorem, oracle as fallback), "theorem", or "oracle".
    #[pyo3(signature = (p, method = "auto"))]
    fn is_p_ring<'py>(&self, py: Python<'py>, p: u64, method: &str) -> PyResult<Bound<'py, PyDict>> {
        let rep = match method {
            "theorem" => is_p_ring_theorem(&self.ring, p, &self.limits).map_err(value_err)?,
            "oracle" => is_p_ring_oracle(&self.ring, p, &self.limits).map_err(value_err)?,
            "auto" => match is_p_ring_theorem(&self.ring, p, &self.limits) {
                Ok(rep) => rep,
                Err(_) => is_p_ring_oracle(&self.ring, p, &self.limits).map_err(value_err)?,
            },
            other => return Err(value_err(format!("unknown method {other:?}"))),
        };
        report_dict(py, &rep)
    }

    /// Decide von Neumann regularity.
    #[pyo3(signature = (method = "auto"))]
    fn is_vnr<'py>(&self, py: Python<'py>, method: &str) -> PyResult<Bound<'py, PyDict>> {
        let theorem_verdict = match method {
            "oracle" => None,
            "theorem" | "auto" => is_vnr_theorem(&self.ring).map_err(value_err)?,
            other => return Err(value_err(format!("unknown method {other:?}"))),
        };
        let rep = match theorem_verdict {
            Some(verdict) => DecisionReport {
                verdict,
                method: Method::Theorem,
                witness: None,
                checked: 0,
                elapsed: std::time::Duration::ZERO,
            },
            None => {
                if method == "theorem" {
                    return Err(value_err("no regularity theorem applies to this ring"));
                }
                is_vnr_oracle(&self.ring, &self.limits).map_err(value_err)?
            }
        };
        report_dict(py, &rep)
    }

    /// The p-ideals, each as {"display": str, "elements": [indices]}.
    fn p_ideals<'py>(&self, py: Python<'py>, p: u64) -> PyResult<Vec<Bound<'py, PyDict>>> {
        let ideals = match self.ring.kind() {
            RingKind::Zmod { n } => p_ideals_of_zmod(*n, p).map_err(value_err)?,
            _ => list_p_ideals_oracle(&self.ring, p, &self.limits).map_err(value_err)?,
        };
        ideals
            .iter()
            .map(|i| {
                let d = PyDict::new(py);
                d.set_item("display", i.to_string())?;
                d.set_item("elements", i.expand(&self.limits).map_err(value_err)?)?;
                Ok(d)
            })
            .collect()
    }

    /// Every ideal of the ring, as sorted element-index lists.
    fn ideals(&self) -> PyResult<Vec<Vec<u64>>> {
        enumerate_ideals_oracle(&self.ring, &self.limits)
            .map_err(value_err)?
            .iter()
            .map(|i| i.expand(&self.limits).map_err(value_err))
            .collect()
    }

    fn has_nonzero_p_ideal<'py>(&self, py: Python<'py>, p: u64) -> PyResult<Bound<'py, PyDict>> {
        let rep = has_nonzero_p_ideal_oracle(&self.ring, p, &self.limits).map_err(value_err)?;
        report_dict(py, &rep)
    }

    /// Decompose a p-ring as GF(p)^n.
    fn mccoy<'py>(&self, py: Python<'py>, p: u64) -> PyResult<Bound<'py, PyDict>> {
        let dec = mccoy_decompose(&self.ring, p, &self.limits).map_err(value_err)?;
        let d = PyDict::new(py);
        d.set_item("p", dec.p)?;
        d.set_item("n", dec.n)?;
        d.set_item("order", self.ring.order())?;
        d.set_item("ideal_count", dec.ideal_count)?;
        let maximal: Vec<Vec<u64>> = dec
            .maximal_ideals
            .iter()
            .map(|i| i.expand(&self.limits).map_err(value_err))
            .collect::<PyResult<_>>()?;
        d.set_item("maximal_ideals", maximal)?;
        let projections: Vec<Vec<u64>> = dec
            .projections
            .iter()
            .map(|proj| (0..self.ring.order()).map(|x| proj.apply_idx(x)).collect())
            .collect();
        d.set_item("projections", projections)?;
        d.set_item("iso", dec.iso.table().to_vec())?;
        Ok(d)
    }

    fn __repr__(&self) -> String {
        format!("Ring({:?}, order={})", self.expr, self.ring.order())
    }

    fn __len__(&self) -> usize {
        self.ring.order() as usize
    }
}

/// Parse a DSL expression and return its canonical printed form.
#[pyfunction]
fn parse_expr(expr: &str) -> PyResult<String> {
    parse_ring_expr(expr).map(|ast| ast.to_string()).map_err(value_err)
}

/// The p-ideals of Z/n by the valuation criterion, as display strings.
#[pyfunction]
fn zmod_p_ideals(n: u64, p: u64) -> PyResult<Vec<String>> {
    Ok(p_ideals_of_zmod(n, p)
        .map_err(value_err)?
        .iter()
        .map(|i| i.to_string())
        .collect())
}

/// Factor a polynomial over F_p; returns factors, roots, and the two
/// splitting predicates.
#[pyfunction]
fn factor_poly<'py>(py: Python<'py>, poly: &str, p: u64) -> PyResult<Bound<'py, PyDict>> {
    let ast = parse_poly_text(poly).map_err(value_err)?;
    let f = poly_ast_to_fp(&ast, p).map_err(value_err)?;
    if f.is_constant() {
        return Err(value_err("factorization requires a nonconstant polynomial"));
    }
    let fac = f.factor().map_err(value_err)?;
    let d = PyDict::new(py);
    d.set_item("poly", f.to_string())?;
    d.set_item("p", p)?;
    d.set_item("degree", f.degree().unwrap_or(0))?;
    d.set_item("leading", fac.leading)?;
    let factors: Vec<(String, u32)> = fac
        .factors
        .iter()
        .map(|(g, e)| (g.to_string(), *e))
        .collect();
    d.set_item("factors", factors)?;
    d.set_item("roots", f.roots_with_multiplicity().map_err(value_err)?)?;
    d.set_item("divides_xp_minus_x", f.divides_xp_minus_x().map_err(value_err)?)?;
    d.set_item("squarefree", f.is_squarefree().map_err(value_err)?)?;
    Ok(d)
}

/// Roots of f over F_p with multiplicities.
#[pyfunction]
fn poly_roots(poly: &str, p: u64) -> PyResult<Vec<(u64, u32)>> {
    let ast = parse_poly_text(poly).map_err(value_err)?;
    let f = poly_ast_to_fp(&ast, p).map_err(value_err)?;
    f.roots_with_multiplicity().map_err(value_err)
}

/// Does f divide x^p − x over F_p?
#[pyfunction]
fn divides_xp_minus_x(poly: &str, p: u64) -> PyResult<bool> {
    let ast = parse_poly_text(poly).map_err(value_err)?;
    let f = poly_ast_to_fp(&ast, p).map_err(value_err)?;
    f.divides_xp_minus_x().map_err(value_err)
}

/// Does F_p[x]/(f) contain a nonzero p-ideal? Decided by the simple-zero
/// criterion, without materializing the quotient.
#[pyfunction]
fn quotient_has_nonzero_p_ideal<'py>(
    py: Python<'py>,
    poly: &str,
    p: u64,
) -> PyResult<Bound<'py, PyDict>> {
    let ast = parse_poly_text(poly).map_err(value_err)?;
    let f = poly_ast_to_fp(&ast, p).map_err(value_err)?;
    let rep = quotient_has_p_ideal(p, &f).map_err(value_err)?;
    report_dict(py, &rep)
}

/// One-call convenience: evaluate an expression and decide both the
/// p-ring and regularity questions.
#[pyfunction]
#[pyo3(signature = (expr, p, max_order = 4096, oracle_max = 256))]
fn check<'py>(
    py: Python<'py>,
    expr: &str,
    p: u64,
    max_order: u64,
    oracle_max: u64,
) -> PyResult<Bound<'py, PyDict>> {
    let ring = PyRing::new(expr, max_order, oracle_max)?;
    let d = PyDict::new(py);
    d.set_item("expr", ring.expr.clone())?;
    d.set_item("ring", ring.describe())?;
    d.set_item("order", ring.order())?;
    d.set_item("characteristic", ring.characteristic())?;
    d.set_item("p", p)?;
    d.set_item("p_ring", ring.is_p_ring(py, p, "auto")?)?;
    d.set_item("vnr", ring.is_vnr(py, "auto")?)?;
    Ok(d)
}

#[pymodule]
fn pring_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyRing>()?;
    m.add_function(wrap_pyfunction!(parse_expr, m)?)?;
    m.add_function(wrap_pyfunction!(zmod_p_ideals, m)?)?;
    m.add_function(wrap_pyfunction!(factor_poly, m)?)?;
    m.add_function(wrap_pyfunction!(poly_roots, m)?)?;
    m.add_function(wrap_pyfunction!(divides_xp_minus_x, m)?)?;
    m.add_function(wrap_pyfunction!(quotient_has_nonzero_p_ideal, m)?)?;
    m.add_function(wrap_pyfunction!(check, m)?)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    // binding-level smoke: the conversions live in Rust, so exercise them
    // here too (the Python-side script covers the import path)
    #[test]
    fn ring_class_basic_flow() {
        let r = PyRing::new("Z/60", 4096, 256).unwrap();
        assert_eq!(r.order(), 60);
        assert_eq!(r.characteristic(), 60);
        assert_eq!(r.add(59, 2).unwrap(), 1);
        assert!(r.add(60, 0).is_err());
        assert_eq!(r.expr(), "Z/60");
    }

    #[test]
    fn construction_errors_become_value_errors() {
        assert!(PyRing::new("Z/", 4096, 256).is_err());
        assert!(PyRing::new("triv(Z/100, free:1)", 4096, 256).is_err());
    }
}
