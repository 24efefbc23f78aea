//! Python bindings for the Markoff-surface dynamics library.
//!
//! The module exposes the headline entry points — minimal periods outside a
//! forbidden set, exact periods of single points, the ω(p) invariant, the
//! CRT prime search, and the companion systems' fixed points — as plain
//! functions over integers, strings, and tuples. Library errors surface as
//! `ValueError`.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use markoff_core::scan::ForbiddenSet;
use markoff_core::AutWord;

fn value_err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn parse_forbidden(name: &str) -> PyResult<ForbiddenSet> {
    match name {
        "origin-only" => Ok(ForbiddenSet::OriginOnly),
        "unit-conics" => Ok(ForbiddenSet::OriginAndUnitConics),
        other => Err(PyValueError::new_err(format!(
            "unknown forbidden set {other:?}; expected \"origin-only\" or \"unit-conics\""
        ))),
    }
}

fn parse_aut_word(word: &str) -> PyResult<AutWord> {
    word.parse().map_err(value_err)
}

/// A period paired with the witness point's coordinates.
type PeriodWitness = (u64, (u64, u64, u64));

#[pyo3::pymodule]
mod markoff_py {
    use std::collections::BTreeMap;

    use markoff_core::companions;
    use markoff_core::primesearch::{self, Omega};
    use markoff_core::scan;
    use markoff_core::ModPoint;

    use super::*;

    /// Least exact period over the points outside the forbidden set mod p,
    /// as `(period, (x, y, z))` with a witness point, or `None` when every
    /// point is forbidden.
    #[pyfunction]
    #[pyo3(signature = (p, word = "12", forbidden = "origin-only"))]
    fn minimal_period(p: u64, word: &str, forbidden: &str) -> PyResult<Option<PeriodWitness>> {
        let word = parse_aut_word(word)?;
        let set = parse_forbidden(forbidden)?;
        let found = scan::minimal_period(p, &word, &set).map_err(value_err)?;
        Ok(found.map(|m| {
            let c = m.witness.coords();
            (m.period, (c[0].value(), c[1].value(), c[2].value()))
        }))
    }

    /// How many points outside the forbidden set have each exact period.
    #[pyfunction]
    #[pyo3(signature = (p, word = "12", forbidden = "origin-only"))]
    fn period_spectrum(p: u64, word: &str, forbidden: &str) -> PyResult<BTreeMap<u64, u64>> {
        let word = parse_aut_word(word)?;
        let set = parse_forbidden(forbidden)?;
        scan::period_spectrum(p, &word, &set).map_err(value_err)
    }

    /// Exact period of one surface point under the word.
    #[pyfunction]
    #[pyo3(signature = (p, point, word = "12"))]
    fn exact_period(p: u64, point: (u64, u64, u64), word: &str) -> PyResult<u64> {
        let word = parse_aut_word(word)?;
        let text = format!("{},{},{}", point.0, point.1, point.2);
        let point = ModPoint::parse(&text, p).map_err(value_err)?;
        Ok(scan::exact_period_of_point(&word, &point))
    }

    /// `(quotient, omega)` for a prime p ≥ 5, where quotient = (p² − 1)/24
    /// and omega is its least prime factor — `None` when the quotient is 1
    /// and the invariant is unbounded.
    #[pyfunction]
    fn omega(p: u64) -> PyResult<(u128, Option<u64>)> {
        let record = primesearch::omega(p).map_err(value_err)?;
        let least = match record.omega {
            Omega::Finite(v) => Some(v),
            Omega::Unbounded => None,
        };
        Ok((record.quotient, least))
    }

    /// First prime on the CRT progression with omega(p) > k, as
    /// `(p, modulus, residue, steps, omega)`.
    #[pyfunction]
    #[pyo3(signature = (k, residue72 = 43))]
    fn find_prime_omega_gt(
        k: u64,
        residue72: u64,
    ) -> PyResult<(u64, u64, u64, u64, Option<u64>)> {
        let found = primesearch::find_prime_omega_gt(k, residue72).map_err(value_err)?;
        let least = match found.record.omega {
            Omega::Finite(v) => Some(v),
            Omega::Unbounded => None,
        };
        Ok((found.p(), found.modulus, found.residue, found.steps, least))
    }

    /// The canonical fixed point of the sextic line map mod p.
    #[pyfunction]
    fn line_fixed_point(p: u64) -> PyResult<u64> {
        companions::line_fixed_point(p).map_err(value_err)
    }

    /// The canonical diagonal fixed point of the Hénon-form plane map mod p.
    #[pyfunction]
    fn henon_fixed_point(p: u64) -> PyResult<(u64, u64)> {
        companions::henon_fixed_point(p).map_err(value_err)
    }
}
