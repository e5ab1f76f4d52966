//! Python bindings: one `Polygon` class wrapping the parameters and the
//! precomputed pair table, with diagonals and sets passed as plain
//! `(i, j, k)` tuples.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

use repclus_core::draw::{self, DrawFormat};
use repclus_core::enumerate::{self, EnumerationRequest};
use repclus_core::oracle;
use repclus_core::quiver::QuiverFormat;
use repclus_core::{
    build_ar_quiver, classify, export_quiver, is_cluster_tilting, is_maximal_rigid, is_rigid,
    required_connectors, torsion_pair_of, DiagonalSet, Generator, Mode, PairTable, PolygonParams,
    Target,
};

type Triple = (u32, u32, u32);

fn value_err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

#[pyclass]
struct Polygon {
    params: PolygonParams,
    table: PairTable,
}

impl Polygon {
    fn diag(&self, t: Triple) -> PyResult<repclus_core::Diagonal> {
        self.params.diagonal(t.0, t.1, t.2).map_err(value_err)
    }

    fn set(&self, triples: Vec<Triple>) -> PyResult<DiagonalSet> {
        let mut s = DiagonalSet::empty(self.params);
        for t in triples {
            s.insert(self.diag(t)?);
        }
        Ok(s)
    }

    fn triples(&self, s: &DiagonalSet) -> Vec<Triple> {
        s.triples()
    }

    fn mode(&self, mode: Option<&str>, target: Target) -> PyResult<Mode> {
        match mode {
            None => Ok(Mode::default_for(self.params, target, enumerate::DEFAULT_BIT_CAP)),
            Some("powerset") => Ok(Mode::Powerset),
            Some("closure-system") => Ok(Mode::ClosureSystem),
            Some("structural") => Ok(Mode::Structural),
            Some(other) => Err(value_err(format!("unknown mode {other:?}"))),
        }
    }
}

#[pymethods]
impl Polygon {
    #[new]
    fn new(n: u32, p: u32) -> PyResult<Self> {
        let params = PolygonParams::new(n, p).map_err(value_err)?;
        Ok(Polygon { params, table: PairTable::new(params) })
    }

    #[getter]
    fn n(&self) -> u32 {
        self.params.n()
    }

    #[getter]
    fn p(&self) -> u32 {
        self.params.p()
    }

    #[getter]
    fn vertex_count(&self) -> u32 {
        self.params.vertex_count()
    }

    #[getter]
    fn diagonal_count(&self) -> usize {
        self.params.diagonal_count()
    }

    fn diagonals(&self) -> Vec<Triple> {
        self.params.diagonals().into_iter().map(|d| d.triple()).collect()
    }

    fn rho(&self, d: Triple) -> PyResult<Triple> {
        Ok(self.params.rho(self.diag(d)?).triple())
    }

    fn rho_inv(&self, d: Triple) -> PyResult<Triple> {
        Ok(self.params.rho_inv(self.diag(d)?).triple())
    }

    fn tau(&self, d: Triple) -> PyResult<Triple> {
        Ok(self.params.tau(self.diag(d)?).triple())
    }

    fn tau_inv(&self, d: Triple) -> PyResult<Triple> {
        Ok(self.params.tau_inv(self.diag(d)?).triple())
    }

    fn shift(&self, d: Triple) -> PyResult<Triple> {
        Ok(self.params.shift(self.diag(d)?).triple())
    }

    fn shift_inv(&self, d: Triple) -> PyResult<Triple> {
        Ok(self.params.shift_inv(self.diag(d)?).triple())
    }

    fn ext_nonzero(&self, x: Triple, y: Triple) -> PyResult<bool> {
        Ok(self.params.ext_nonzero(self.diag(x)?, self.diag(y)?))
    }

    fn hom_nonzero(&self, x: Triple, y: Triple) -> PyResult<bool> {
        Ok(self.params.hom_nonzero(self.diag(x)?, self.diag(y)?))
    }

    fn crosses(&self, x: Triple, y: Triple) -> PyResult<bool> {
        Ok(self.params.crosses(self.diag(x)?, self.diag(y)?))
    }

    fn crossing_partners(&self, d: Triple) -> PyResult<Vec<Triple>> {
        Ok(self.triples(&self.table.crossing_partners(self.diag(d)?)))
    }

    fn required_connectors(&self, x: Triple, y: Triple) -> PyResult<Vec<Triple>> {
        let conns = required_connectors(&self.params, self.diag(x)?, self.diag(y)?)
            .map_err(value_err)?;
        Ok(conns.into_iter().map(|d| d.triple()).collect())
    }

    fn is_ptolemy(&self, set: Vec<Triple>) -> PyResult<bool> {
        Ok(self.table.is_ptolemy(&self.set(set)?))
    }

    /// Violations as (pair, clause, missing) tuples.
    fn violations(&self, set: Vec<Triple>) -> PyResult<Vec<((Triple, Triple), String, Vec<Triple>)>> {
        let s = self.set(set)?;
        Ok(self
            .table
            .violations(&s)
            .into_iter()
            .map(|v| {
                (
                    (v.pair.0.triple(), v.pair.1.triple()),
                    format!("{:?}", v.clause),
                    v.missing.into_iter().map(|d| d.triple()).collect(),
                )
            })
            .collect())
    }

    fn closure(&self, set: Vec<Triple>) -> PyResult<Vec<Triple>> {
        Ok(self.triples(&self.table.ptolemy_closure(&self.set(set)?)))
    }

    fn ext_right_perp(&self, set: Vec<Triple>) -> PyResult<Vec<Triple>> {
        Ok(self.triples(&self.table.ext_right_perp(&self.set(set)?)))
    }

    fn ext_left_perp(&self, set: Vec<Triple>) -> PyResult<Vec<Triple>> {
        Ok(self.triples(&self.table.ext_left_perp(&self.set(set)?)))
    }

    fn hom_right_perp(&self, set: Vec<Triple>) -> PyResult<Vec<Triple>> {
        Ok(self.triples(&self.table.hom_right_perp(&self.set(set)?)))
    }

    fn hom_left_perp(&self, set: Vec<Triple>) -> PyResult<Vec<Triple>> {
        Ok(self.triples(&self.table.hom_left_perp(&self.set(set)?)))
    }

    fn is_rigid(&self, set: Vec<Triple>) -> PyResult<bool> {
        Ok(is_rigid(&self.table, &self.set(set)?))
    }

    fn is_maximal_rigid(&self, set: Vec<Triple>) -> PyResult<bool> {
        Ok(is_maximal_rigid(&self.table, &self.set(set)?))
    }

    fn is_cluster_tilting(&self, set: Vec<Triple>) -> PyResult<bool> {
        Ok(is_cluster_tilting(&self.table, &self.set(set)?))
    }

    fn classify<'py>(&self, py: Python<'py>, set: Vec<Triple>) -> PyResult<Bound<'py, PyDict>> {
        let report = classify(&self.table, &self.set(set)?);
        let dict = PyDict::new(py);
        dict.set_item("rigid", report.rigid)?;
        dict.set_item("maximal_rigid", report.maximal_rigid)?;
        dict.set_item("cluster_tilting", report.cluster_tilting)?;
        dict.set_item("ptolemy", report.ptolemy)?;
        dict.set_item("size", report.size)?;
        Ok(dict)
    }

    /// Returns (torsion, free); raises ValueError with the violation payload
    /// when the set is not Ptolemy.
    fn torsion_pair(&self, set: Vec<Triple>) -> PyResult<(Vec<Triple>, Vec<Triple>)> {
        let s = self.set(set)?;
        let pair = torsion_pair_of(&self.table, &s).map_err(|e| {
            value_err(format!(
                "{e}: {}",
                serde_json::to_string(&e.violations).unwrap_or_default()
            ))
        })?;
        Ok((self.triples(&pair.torsion), self.triples(&pair.free)))
    }

    #[pyo3(signature = (mode=None))]
    fn count_ptolemy(&self, mode: Option<&str>) -> PyResult<u64> {
        let mut req = EnumerationRequest::new(self.params, Target::Ptolemy);
        req.mode = self.mode(mode, Target::Ptolemy)?;
        req.count_only = true;
        enumerate::count_ptolemy(&self.table, &req).map_err(value_err)
    }

    #[pyo3(signature = (mode=None))]
    fn enumerate_ptolemy(&self, mode: Option<&str>) -> PyResult<Vec<Vec<Triple>>> {
        let mut req = EnumerationRequest::new(self.params, Target::Ptolemy);
        req.mode = self.mode(mode, Target::Ptolemy)?;
        let sets = enumerate::enumerate_ptolemy(&self.table, &req).map_err(value_err)?;
        Ok(sets.iter().map(|s| self.triples(s)).collect())
    }

    fn cluster_tilting_sets(&self) -> Vec<Vec<Triple>> {
        enumerate::enumerate_cluster_tilting(self.params)
            .iter()
            .map(|s| self.triples(s))
            .collect()
    }

    fn maximal_rigid_sets(&self) -> Vec<Vec<Triple>> {
        enumerate::enumerate_maximal_rigid(&self.table)
            .iter()
            .map(|s| self.triples(s))
            .collect()
    }

    /// Orbit representatives with orbit sizes under "rho" or "shift".
    fn orbit_reduce(
        &self,
        sets: Vec<Vec<Triple>>,
        generator: &str,
    ) -> PyResult<Vec<(Vec<Triple>, usize)>> {
        let generator = match generator {
            "rho" => Generator::Rho,
            "shift" => Generator::Shift,
            other => return Err(value_err(format!("unknown generator {other:?}"))),
        };
        let family: PyResult<Vec<DiagonalSet>> =
            sets.into_iter().map(|s| self.set(s)).collect();
        let orbits = enumerate::orbit_reduce(&family?, generator).map_err(value_err)?;
        Ok(orbits
            .into_iter()
            .map(|o| (self.triples(&o.representative), o.orbit_size))
            .collect())
    }

    fn quiver_dot(&self) -> String {
        export_quiver(&build_ar_quiver(self.params), QuiverFormat::Dot)
    }

    fn quiver_json(&self) -> String {
        export_quiver(&build_ar_quiver(self.params), QuiverFormat::Json)
    }

    fn quiver_mesh_ok(&self) -> bool {
        build_ar_quiver(self.params).validate_stable_translation().passed()
    }

    fn draw_svg(&self, set: Vec<Triple>) -> PyResult<String> {
        Ok(draw::render(&self.set(set)?, DrawFormat::Svg))
    }

    fn draw_tikz(&self, set: Vec<Triple>) -> PyResult<String> {
        Ok(draw::render(&self.set(set)?, DrawFormat::Tikz))
    }

    /// Run one oracle ("crossing", "perp" or "theorem") and return its
    /// report as JSON. Raises ValueError on unexpected mismatches.
    fn verify(&self, which: &str) -> PyResult<String> {
        let report = match which {
            "crossing" => oracle::crossing_oracle(self.params),
            "perp" => oracle::perp_oracle(&self.table),
            "theorem" => oracle::theorem_oracle(&self.table, enumerate::DEFAULT_BIT_CAP)
                .map_err(value_err)?,
            other => return Err(value_err(format!("unknown oracle {other:?}"))),
        };
        let json = serde_json::to_string(&report).map_err(value_err)?;
        if !report.passed() {
            return Err(value_err(format!("oracle mismatches: {json}")));
        }
        Ok(json)
    }

    fn __repr__(&self) -> String {
        format!("Polygon(n={}, p={})", self.params.n(), self.params.p())
    }
}

#[pymodule]
fn repclus(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Polygon>()?;
    Ok(())
}
