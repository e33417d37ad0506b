//! Python bindings. Structured reports come back as JSON strings; everything else uses plain
//! Python types.

use parabolic_pairings::central;
use parabolic_pairings::cli;
use parabolic_pairings::pairings::{self, Geometry};
use parabolic_pairings::parabolic::parse_dynkin_affine;
use parabolic_pairings::rational::{fmt_q, parse_q};
use parabolic_pairings::rootsys::{LieType, RootSystem};
use parabolic_pairings::{bgg, weyl, Poly, Q};
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

fn err<E: std::fmt::Display>(e: E) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn poly(s: &str) -> PyResult<Poly> {
    Poly::parse(s).map_err(err)
}

fn rationals(v: &[String]) -> PyResult<Vec<Q>> {
    v.iter().map(|s| parse_q(s).ok_or_else(|| err(format!("not a rational: {s}")))).collect()
}

fn json<T: serde::Serialize>(v: &T) -> PyResult<String> {
    serde_json::to_string(v).map_err(err)
}

/// Closed-form coefficients `γ_{M,0..M}` rendered as polynomials in the two weights.
#[pyfunction]
#[pyo3(signature = (order, q = "q", q_prime = "q'"))]
fn gamma(order: usize, q: &str, q_prime: &str) -> PyResult<Vec<String>> {
    let g = pairings::gamma_coefficients(order, &poly(q)?, &poly(q_prime)?);
    let mut names: Vec<String> = g.q.vars().into_iter().collect();
    for v in g.q_prime.vars() {
        if !names.contains(&v) {
            names.push(v);
        }
    }
    let names: Vec<&str> = names.iter().map(String::as_str).collect();
    Ok(g.coefficients.iter().map(|c| c.render(&names)).collect())
}

/// Dimension of the solution space of the coefficient system at numeric weights.
#[pyfunction]
fn gamma_solution_dim(order: usize, q: &str, q_prime: &str) -> PyResult<usize> {
    Ok(pairings::gamma_coefficients(order, &poly(q)?, &poly(q_prime)?).solution_dim)
}

#[pyfunction]
#[pyo3(signature = (k, weight = "q"))]
fn ricci_latex(k: usize, weight: &str) -> String {
    pairings::ricci::expansion_latex(&pairings::ricci_expand(k, weight), weight, "s")
}

#[pyfunction]
#[pyo3(signature = (word, weight = "q"))]
fn cct_constant(word: &str, weight: &str) -> PyResult<String> {
    let w = pairings::DWord::parse(word).map_err(err)?;
    Ok(pairings::cct_constant(&w, weight).render(&[weight]))
}

/// Collected terms of the order-`M` pairing as `(leading Γ count, s word, t word, coefficient)`.
#[pyfunction]
fn pairing_terms(order: usize) -> Vec<(usize, String, String, String)> {
    pairings::formula::pairing_formula_symbolic(order)
        .collected
        .into_iter()
        .map(|t| (t.leading_gammas, t.s_word, t.t_word, t.coefficient))
        .collect()
}

/// Projective excluded weights for `x(k)a`: `(k, order, node, operator)`.
#[pyfunction]
fn excluded_weights(labels: Vec<i64>, order: usize) -> Vec<(i64, usize, usize, String)> {
    pairings::projective_excluded_weights(&labels, order).into_iter().map(|e| (e.k, e.order, e.node, e.operator)).collect()
}

#[pyfunction]
#[pyo3(signature = (geometry, n, k, order = None))]
fn splitting(geometry: &str, n: usize, k: usize, order: Option<usize>) -> PyResult<String> {
    let g: Geometry = geometry.parse().map_err(err)?;
    json(&pairings::splitting_recursion(g, n, k, order).map_err(err)?)
}

/// Whether two weights (in label coordinates, rationals as strings) share a central character.
#[pyfunction]
fn same_central_character(lie_type: &str, lam: Vec<String>, mu: Vec<String>) -> PyResult<bool> {
    let t: LieType = lie_type.parse().map_err(err)?;
    let rs = RootSystem::new(t).map_err(err)?;
    central::same_central_character(&rs, &rationals(&lam)?, &rationals(&mu)?).map_err(err)
}

#[pyfunction]
fn shifted_norm(lie_type: &str, lam: Vec<String>) -> PyResult<String> {
    let t: LieType = lie_type.parse().map_err(err)?;
    let rs = RootSystem::new(t).map_err(err)?;
    Ok(fmt_q(&central::shifted_norm(&rs, &rationals(&lam)?)))
}

/// BGG diagram for a Dynkin string such as `"A3: x(a) o(b) o(c)"`, as JSON.
#[pyfunction]
fn bgg_diagram(dynkin: &str) -> PyResult<String> {
    let (p, lam) = parse_dynkin_affine(dynkin).map_err(err)?;
    let rs = RootSystem::new(p.lie_type).map_err(err)?;
    json(&bgg::bgg_sequence(&rs, &p, &lam, weyl::DEFAULT_CAP).map_err(err)?)
}

/// Runs the command-line interface in-process: `(exit code, stdout, stderr)`.
#[pyfunction]
fn run(args: Vec<String>) -> (i32, String, String) {
    let out = cli::run(std::iter::once("pairings".to_string()).chain(args));
    (out.code, out.stdout, out.stderr)
}

#[pymodule]
fn parabolic_pairings_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(gamma, m)?)?;
    m.add_function(wrap_pyfunction!(gamma_solution_dim, m)?)?;
    m.add_function(wrap_pyfunction!(ricci_latex, m)?)?;
    m.add_function(wrap_pyfunction!(cct_constant, m)?)?;
    m.add_function(wrap_pyfunction!(pairing_terms, m)?)?;
    m.add_function(wrap_pyfunction!(excluded_weights, m)?)?;
    m.add_function(wrap_pyfunction!(splitting, m)?)?;
    m.add_function(wrap_pyfunction!(same_central_character, m)?)?;
    m.add_function(wrap_pyfunction!(shifted_norm, m)?)?;
    m.add_function(wrap_pyfunction!(bgg_diagram, m)?)?;
    m.add_function(wrap_pyfunction!(run, m)?)?;
    Ok(())
}
