//! The translation quiver of diagonals: construction, stable-translation
//! validation, and DOT/JSON export.

use std::fmt::Write as _;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::polygon::{Diagonal, PolygonParams};

#[derive(Debug, Error)]
pub enum QuiverError {
    #[error("unknown quiver format {0:?}, expected dot or json")]
    UnknownFormat(String),
    #[error("invalid quiver json: {0}")]
    Parse(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QuiverFormat {
    Dot,
    Json,
}

impl FromStr for QuiverFormat {
    type Err = QuiverError;

    fn from_str(s: &str) -> Result<Self, QuiverError> {
        match s {
            "dot" => Ok(QuiverFormat::Dot),
            "json" => Ok(QuiverFormat::Json),
            other => Err(QuiverError::UnknownFormat(other.to_string())),
        }
    }
}

/// Vertices are the diagonals in canonical order; arrows and the translation
/// map are stored by canonical index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArQuiver {
    params: PolygonParams,
    vertices: Vec<Diagonal>,
    arrows: Vec<(usize, usize)>,
    translation: Vec<usize>,
}

/// Arrow targets named by the rules can degenerate to edges or to the (1,N)
/// chord; only genuine diagonals become arrows.
pub fn build_ar_quiver(params: PolygonParams) -> ArQuiver {
    let vertices = params.diagonals();
    let n_verts = params.vertex_count();
    let mut arrows = Vec::new();
    let mut push = |from: Diagonal, i: u32, j: u32, k: u32| {
        if params.is_diagonal(i, j, k) {
            arrows.push((
                params.index_of(from),
                params.index_of(params.diagonal(i, j, k).unwrap()),
            ));
        }
    };
    for &d in &vertices {
        let (i, j, k) = d.triple();
        if j != n_verts {
            push(d, i, j + 1, k);
            push(d, i + 1, j, k);
        } else {
            push(d, i + 1, n_verts, k);
            push(d, 1, i, k % params.p() + 1);
        }
    }
    arrows.sort_unstable();
    arrows.dedup();
    let translation = vertices.iter().map(|&d| params.index_of(params.tau(d))).collect();
    ArQuiver { params, vertices, arrows, translation }
}

#[derive(Clone, Debug, Serialize)]
pub struct MeshDefect {
    /// The arrow whose mesh partner is absent.
    pub arrow: (Diagonal, Diagonal),
    /// The arrow the mesh condition expects.
    pub expected: (Diagonal, Diagonal),
}

#[derive(Clone, Debug, Serialize)]
pub struct MeshReport {
    pub translation_is_bijection: bool,
    pub defects: Vec<MeshDefect>,
}

impl MeshReport {
    pub fn passed(&self) -> bool {
        self.translation_is_bijection && self.defects.is_empty()
    }
}

impl ArQuiver {
    pub fn params(&self) -> PolygonParams {
        self.params
    }

    pub fn vertices(&self) -> &[Diagonal] {
        &self.vertices
    }

    pub fn arrows(&self) -> &[(usize, usize)] {
        &self.arrows
    }

    pub fn arrow_diagonals(&self) -> impl Iterator<Item = (Diagonal, Diagonal)> + '_ {
        self.arrows.iter().map(|&(a, b)| (self.vertices[a], self.vertices[b]))
    }

    pub fn translation_of(&self, v: usize) -> usize {
        self.translation[v]
    }

    pub fn has_arrow(&self, from: Diagonal, to: Diagonal) -> bool {
        let pair = (self.params.index_of(from), self.params.index_of(to));
        self.arrows.binary_search(&pair).is_ok()
    }

    /// Stable-translation check: the translation is a bijection and for every
    /// arrow `x -> y` there is an arrow `tau(y) -> x` (and conversely, so the
    /// arrow multiplicities, all 1 here, match in both directions).
    pub fn validate_stable_translation(&self) -> MeshReport {
        let width = self.vertices.len();
        let mut hit = vec![false; width];
        for &t in &self.translation {
            if t >= width || hit[t] {
                return MeshReport { translation_is_bijection: false, defects: Vec::new() };
            }
            hit[t] = true;
        }
        let mut inverse = vec![0usize; width];
        for (v, &t) in self.translation.iter().enumerate() {
            inverse[t] = v;
        }
        let mut defects = Vec::new();
        for &(x, y) in &self.arrows {
            let mirrored = (self.translation[y], x);
            if self.arrows.binary_search(&mirrored).is_err() {
                defects.push(MeshDefect {
                    arrow: (self.vertices[x], self.vertices[y]),
                    expected: (self.vertices[mirrored.0], self.vertices[mirrored.1]),
                });
            }
            // the same count must hold from the mirrored side
            let back = (y, inverse[x]);
            if self.arrows.binary_search(&back).is_err() {
                defects.push(MeshDefect {
                    arrow: (self.vertices[x], self.vertices[y]),
                    expected: (self.vertices[back.0], self.vertices[back.1]),
                });
            }
        }
        MeshReport { translation_is_bijection: true, defects }
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "digraph \"ar_quiver_n{}_p{}\" {{",
            self.params.n(),
            self.params.p()
        );
        let _ = writeln!(out, "  rankdir=LR;");
        let _ = writeln!(out, "  node [shape=box];");
        for v in &self.vertices {
            let _ = writeln!(out, "  \"{v}\";");
        }
        for (from, to) in self.arrow_diagonals() {
            let _ = writeln!(out, "  \"{from}\" -> \"{to}\";");
        }
        for (v, &t) in self.translation.iter().enumerate() {
            let _ = writeln!(
                out,
                "  \"{}\" -> \"{}\" [style=dashed, constraint=false];",
                self.vertices[v], self.vertices[t]
            );
        }
        out.push_str("}\n");
        out
    }

    pub fn to_json(&self) -> String {
        let doc = QuiverJson {
            n: self.params.n(),
            p: self.params.p(),
            vertices: self.vertices.iter().map(|d| [d.i(), d.j(), d.region()]).collect(),
            arrows: self.arrows.iter().map(|&(a, b)| [a, b]).collect(),
            translation: self.translation.clone(),
        };
        serde_json::to_string(&doc).expect("quiver serializes")
    }

    pub fn from_json(text: &str) -> Result<ArQuiver, QuiverError> {
        let doc: QuiverJson =
            serde_json::from_str(text).map_err(|e| QuiverError::Parse(e.to_string()))?;
        let params = PolygonParams::new(doc.n, doc.p)
            .map_err(|e| QuiverError::Parse(e.to_string()))?;
        let canonical = params.diagonals();
        let vertices: Result<Vec<Diagonal>, QuiverError> = doc
            .vertices
            .iter()
            .map(|&[i, j, k]| {
                params
                    .diagonal(i, j, k)
                    .map_err(|e| QuiverError::Parse(e.to_string()))
            })
            .collect();
        let vertices = vertices?;
        if vertices != canonical {
            return Err(QuiverError::Parse(
                "vertex list is not the canonical diagonal list".to_string(),
            ));
        }
        let width = vertices.len();
        if doc.translation.len() != width {
            return Err(QuiverError::Parse("translation length mismatch".to_string()));
        }
        if doc.translation.iter().any(|&t| t >= width) {
            return Err(QuiverError::Parse("translation index out of range".to_string()));
        }
        let mut arrows = Vec::with_capacity(doc.arrows.len());
        for &[a, b] in &doc.arrows {
            if a >= width || b >= width {
                return Err(QuiverError::Parse("arrow index out of range".to_string()));
            }
            arrows.push((a, b));
        }
        arrows.sort_unstable();
        arrows.dedup();
        Ok(ArQuiver { params, vertices, arrows, translation: doc.translation })
    }
}

pub fn export_quiver(q: &ArQuiver, format: QuiverFormat) -> String {
    match format {
        QuiverFormat::Dot => q.to_dot(),
        QuiverFormat::Json => q.to_json(),
    }
}

#[derive(Serialize, Deserialize)]
struct QuiverJson {
    n: u32,
    p: u32,
    vertices: Vec<[u32; 3]>,
    arrows: Vec<[usize; 2]>,
    translation: Vec<usize>,
}
