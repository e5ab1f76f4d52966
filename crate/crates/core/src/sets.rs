//! Sets of diagonals and the set-level operators: Ptolemy checking with
//! diagnostics, Horn-rule closure, and the four perp operators.
//!
//! A [`DiagonalSet`] is a fixed-width bit vector over the canonical diagonal
//! index, so union/intersection/subset tests are block-wise. The crossing
//! pairs and their required connectors are precomputed once per parameter
//! pair into a [`PairTable`] that is immutable afterwards and can be shared
//! freely between threads.

use std::fmt;

use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::bits::Bits;
use crate::polygon::{Diagonal, ModelError, PolygonParams};

/// A set of diagonals over a fixed parameter pair.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct DiagonalSet {
    params: PolygonParams,
    bits: Bits,
}

impl DiagonalSet {
    pub fn empty(params: PolygonParams) -> Self {
        DiagonalSet { params, bits: Bits::new(params.diagonal_count()) }
    }

    pub fn full(params: PolygonParams) -> Self {
        DiagonalSet { params, bits: Bits::full(params.diagonal_count()) }
    }

    pub fn from_diagonals(
        params: PolygonParams,
        diagonals: impl IntoIterator<Item = Diagonal>,
    ) -> Self {
        let mut s = Self::empty(params);
        for d in diagonals {
            s.insert(d);
        }
        s
    }

    pub fn from_triples(
        params: PolygonParams,
        triples: &[(u32, u32, u32)],
    ) -> Result<Self, ModelError> {
        let mut s = Self::empty(params);
        for &(i, j, k) in triples {
            s.insert(params.diagonal(i, j, k)?);
        }
        Ok(s)
    }

    /// Parse the textual form `i,j,k;i,j,k;...`. Whitespace is ignored and
    /// duplicate triples are rejected. The empty string is the empty set.
    pub fn parse(params: PolygonParams, text: &str) -> Result<Self, ModelError> {
        let mut s = Self::empty(params);
        let stripped: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if stripped.is_empty() {
            return Ok(s);
        }
        for item in stripped.split(';') {
            let d = params.parse_diagonal(item)?;
            if !s.insert(d) {
                return Err(ModelError::DuplicateDiagonal(d));
            }
        }
        Ok(s)
    }

    pub fn params(&self) -> PolygonParams {
        self.params
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn contains(&self, d: Diagonal) -> bool {
        self.bits.get(self.params.index_of(d))
    }

    pub fn contains_index(&self, index: usize) -> bool {
        self.bits.get(index)
    }

    /// Returns false if the diagonal was already present.
    pub fn insert(&mut self, d: Diagonal) -> bool {
        let idx = self.params.index_of(d);
        let fresh = !self.bits.get(idx);
        self.bits.set(idx);
        fresh
    }

    pub fn remove(&mut self, d: Diagonal) -> bool {
        let idx = self.params.index_of(d);
        let present = self.bits.get(idx);
        self.bits.unset(idx);
        present
    }

    pub fn iter(&self) -> impl Iterator<Item = Diagonal> + '_ {
        self.bits.ones().map(|i| self.params.diagonal_at(i))
    }

    pub fn indices(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits.ones()
    }

    pub fn triples(&self) -> Vec<(u32, u32, u32)> {
        self.iter().map(|d| d.triple()).collect()
    }

    pub fn union(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.bits.union_with(&other.bits);
        out
    }

    pub fn intersection(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.bits.intersect_with(&other.bits);
        out
    }

    pub fn difference(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.bits.subtract(&other.bits);
        out
    }

    pub fn is_subset_of(&self, other: &Self) -> bool {
        self.bits.is_subset_of(&other.bits)
    }

    /// Image under a pointwise map (the map must send diagonals to diagonals
    /// of the same parameters, as the functors do).
    pub fn map(&self, f: impl Fn(Diagonal) -> Diagonal) -> Self {
        DiagonalSet::from_diagonals(self.params, self.iter().map(f))
    }

    pub(crate) fn bits(&self) -> &Bits {
        &self.bits
    }

    pub(crate) fn from_bits(params: PolygonParams, bits: Bits) -> Self {
        debug_assert_eq!(bits.width(), params.diagonal_count());
        DiagonalSet { params, bits }
    }

    /// The set as a bit mask with canonical index `i` at bit `i`.
    /// Only valid when the diagonal count is at most 64.
    pub fn mask(&self) -> u64 {
        debug_assert!(self.params.diagonal_count() <= 64);
        self.bits.low_word()
    }

    pub fn from_mask(params: PolygonParams, mask: u64) -> Self {
        DiagonalSet { params, bits: Bits::from_word(params.diagonal_count(), mask) }
    }
}

// Canonical order: ascending as integers with canonical index i at bit i.
impl Ord for DiagonalSet {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.bits.cmp(&other.bits)
    }
}

impl PartialOrd for DiagonalSet {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for DiagonalSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for d in self.iter() {
            if !first {
                write!(f, ";")?;
            }
            write!(f, "{d}")?;
            first = false;
        }
        Ok(())
    }
}

impl fmt::Debug for DiagonalSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{self}}}")
    }
}

impl Serialize for DiagonalSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.len()))?;
        for d in self.iter() {
            seq.serialize_element(&d)?;
        }
        seq.end()
    }
}

/// Which of the three connector rules fired for a crossing pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum PtClause {
    Pt1,
    Pt2,
    Pt3,
}

/// A crossing pair inside a set whose required connectors are not all
/// present, together with the clause that demands them.
#[derive(Clone, Debug, Serialize)]
pub struct PtolemyViolation {
    pub pair: (Diagonal, Diagonal),
    pub clause: PtClause,
    pub missing: Vec<Diagonal>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PairError {
    #[error("diagonals {0} and {1} do not cross")]
    NotCrossing(Diagonal, Diagonal),
}

/// The connector rules evaluated on an ordered pair. Evaluating all three
/// clauses on one ordering is complete: the first clause covers both
/// interleavings, and the second and third swap into each other under
/// exchanging the pair.
fn clauses_for(
    params: &PolygonParams,
    x: Diagonal,
    y: Diagonal,
) -> Vec<(PtClause, Vec<Diagonal>)> {
    let mut out = Vec::new();
    let (xi, xj, xr) = x.triple();
    let (yi, yj, yr) = y.triple();
    let p = params.p();
    let same_region = xr == yr;
    let x_after_y = xr == yr % p + 1;
    let y_after_x = yr == xr % p + 1;
    let x_under_y = xi < yi && yi < xj && xj < yj;
    let y_under_x = yi < xi && xi < yj && yj < xj;

    let mut push = |clause: PtClause, cands: [(u32, u32, u32); 2]| {
        let connectors: Vec<Diagonal> = cands
            .iter()
            .filter_map(|&(a, b, r)| params.diagonal(a, b, r).ok())
            .collect();
        out.push((clause, connectors));
    };

    if same_region && (x_under_y || y_under_x) {
        // inner and outer chord of the crossing quadrilateral
        let inner = (xi.max(yi), xj.min(yj), xr);
        let outer = (xi.min(yi), xj.max(yj), xr);
        push(PtClause::Pt1, [inner, outer]);
    }
    if y_after_x && y_under_x {
        push(PtClause::Pt2, [(yi, xi, yr), (yj, xj, xr)]);
    }
    if x_after_y && x_under_y {
        push(PtClause::Pt3, [(xi, yi, xr), (xj, yj, yr)]);
    }
    out
}

/// Union of the connectors demanded by every clause that fires on a crossing
/// pair, filtered to genuine diagonals. Connectors that degenerate to polygon
/// edges or to the `(1,N)` chord are dropped.
pub fn required_connectors(
    params: &PolygonParams,
    x: Diagonal,
    y: Diagonal,
) -> Result<Vec<Diagonal>, PairError> {
    if !params.crosses(x, y) {
        return Err(PairError::NotCrossing(x, y));
    }
    let mut all: Vec<Diagonal> = clauses_for(params, x, y)
        .into_iter()
        .flat_map(|(_, conns)| conns)
        .collect();
    all.sort();
    all.dedup();
    Ok(all)
}

struct CrossingPair {
    a: usize,
    b: usize,
    /// Union of all clause connectors, as an index mask.
    connectors: Bits,
    /// Per-clause connector indices, for diagnostics.
    clauses: Vec<(PtClause, Vec<usize>)>,
}

/// Precomputed crossing structure for one parameter pair. Everything here is
/// read-only after construction.
pub struct PairTable {
    params: PolygonParams,
    diagonals: Vec<Diagonal>,
    /// Crossing partners of each diagonal.
    cross: Vec<Bits>,
    /// ext_out[d] = indices e with Ext(d, e) != 0, and the transpose.
    ext_out: Vec<Bits>,
    ext_in: Vec<Bits>,
    hom_out: Vec<Bits>,
    hom_in: Vec<Bits>,
    /// compat[d] = indices e != d with Ext vanishing in both directions.
    compat: Vec<Bits>,
    pairs: Vec<CrossingPair>,
    /// Per diagonal: (partner, pair id) for pairs with nonempty connectors.
    demanding: Vec<Vec<(usize, usize)>>,
}

impl PairTable {
    pub fn new(params: PolygonParams) -> Self {
        let diagonals = params.diagonals();
        let width = diagonals.len();
        let mut cross = vec![Bits::new(width); width];
        let mut ext_out = vec![Bits::new(width); width];
        let mut ext_in = vec![Bits::new(width); width];
        let mut hom_out = vec![Bits::new(width); width];
        let mut hom_in = vec![Bits::new(width); width];
        let mut compat = vec![Bits::full(width); width];
        let mut pairs = Vec::new();
        let mut demanding = vec![Vec::new(); width];

        for a in 0..width {
            compat[a].unset(a);
            for b in 0..width {
                // Ext vanishes on the diagonal of the square of objects, but
                // Hom(d, d) carries the identity, so b == a stays in the loop.
                if params.ext_nonzero(diagonals[a], diagonals[b]) {
                    ext_out[a].set(b);
                    ext_in[b].set(a);
                    compat[a].unset(b);
                    compat[b].unset(a);
                }
                if params.hom_nonzero(diagonals[a], diagonals[b]) {
                    hom_out[a].set(b);
                    hom_in[b].set(a);
                }
            }
        }
        for a in 0..width {
            for b in a + 1..width {
                if !params.crosses(diagonals[a], diagonals[b]) {
                    continue;
                }
                cross[a].set(b);
                cross[b].set(a);
                let clauses: Vec<(PtClause, Vec<usize>)> =
                    clauses_for(&params, diagonals[a], diagonals[b])
                        .into_iter()
                        .map(|(c, ds)| {
                            (c, ds.into_iter().map(|d| params.index_of(d)).collect())
                        })
                        .collect();
                let mut connectors = Bits::new(width);
                for (_, idxs) in &clauses {
                    for &i in idxs {
                        connectors.set(i);
                    }
                }
                if !connectors.is_empty() {
                    let pair_id = pairs.len();
                    demanding[a].push((b, pair_id));
                    demanding[b].push((a, pair_id));
                    pairs.push(CrossingPair { a, b, connectors, clauses });
                }
            }
        }
        PairTable {
            params,
            diagonals,
            cross,
            ext_out,
            ext_in,
            hom_out,
            hom_in,
            compat,
            pairs,
            demanding,
        }
    }

    pub fn params(&self) -> PolygonParams {
        self.params
    }

    pub fn diagonal_count(&self) -> usize {
        self.diagonals.len()
    }

    pub fn diagonals(&self) -> &[Diagonal] {
        &self.diagonals
    }

    /// All diagonals crossing the given one.
    pub fn crossing_partners(&self, d: Diagonal) -> DiagonalSet {
        let idx = self.params.index_of(d);
        DiagonalSet::from_bits(self.params, self.cross[idx].clone())
    }

    pub(crate) fn ext_out_mask(&self, idx: usize) -> &Bits {
        &self.ext_out[idx]
    }

    pub(crate) fn compat_mask(&self, idx: usize) -> &Bits {
        &self.compat[idx]
    }

    /// (a, b, connector mask) for every crossing pair with a nonempty
    /// connector requirement.
    pub(crate) fn demanding_pairs(&self) -> impl Iterator<Item = (usize, usize, &Bits)> {
        self.pairs.iter().map(|p| (p.a, p.b, &p.connectors))
    }

    /// Every crossing pair of the set satisfies its connector requirements.
    pub fn is_ptolemy(&self, s: &DiagonalSet) -> bool {
        let bits = s.bits();
        self.pairs.iter().all(|p| {
            !(bits.get(p.a) && bits.get(p.b)) || p.connectors.is_subset_of(bits)
        })
    }

    /// One violation record per crossing pair and clause with absent
    /// connectors. Empty iff the set is Ptolemy.
    pub fn violations(&self, s: &DiagonalSet) -> Vec<PtolemyViolation> {
        let bits = s.bits();
        let mut out = Vec::new();
        for p in &self.pairs {
            if !(bits.get(p.a) && bits.get(p.b)) {
                continue;
            }
            for (clause, conns) in &p.clauses {
                let missing: Vec<Diagonal> = conns
                    .iter()
                    .filter(|&&c| !bits.get(c))
                    .map(|&c| self.diagonals[c])
                    .collect();
                if !missing.is_empty() {
                    out.push(PtolemyViolation {
                        pair: (self.diagonals[p.a], self.diagonals[p.b]),
                        clause: *clause,
                        missing,
                    });
                }
            }
        }
        out
    }

    /// Least Ptolemy superset: a worklist fixpoint over the connector rules.
    /// Well defined because the rules are implication-shaped, so Ptolemy sets
    /// are closed under intersection.
    pub fn ptolemy_closure(&self, s: &DiagonalSet) -> DiagonalSet {
        DiagonalSet::from_bits(self.params, self.closure_bits(s.bits()))
    }

    pub(crate) fn closure_bits(&self, seed: &Bits) -> Bits {
        let mut bits = seed.clone();
        let mut queue: Vec<usize> = bits.ones().collect();
        while let Some(d) = queue.pop() {
            for &(partner, pair_id) in &self.demanding[d] {
                if !bits.get(partner) {
                    continue;
                }
                let conn = &self.pairs[pair_id].connectors;
                if conn.is_subset_of(&bits) {
                    continue;
                }
                for c in conn.ones() {
                    if !bits.get(c) {
                        bits.set(c);
                        queue.push(c);
                    }
                }
            }
        }
        bits
    }

    /// Diagonals receiving no Ext from the set: `{u | Ext(v, u) = 0 for all v in s}`.
    pub fn ext_right_perp(&self, s: &DiagonalSet) -> DiagonalSet {
        self.perp_by(&self.ext_in, s)
    }

    /// Diagonals sending no Ext into the set: `{u | Ext(u, v) = 0 for all v in s}`.
    pub fn ext_left_perp(&self, s: &DiagonalSet) -> DiagonalSet {
        self.perp_by(&self.ext_out, s)
    }

    /// `{u | Hom(v, u) = 0 for all v in s}`; equals the shift image of
    /// [`Self::ext_right_perp`].
    pub fn hom_right_perp(&self, s: &DiagonalSet) -> DiagonalSet {
        self.perp_by(&self.hom_in, s)
    }

    /// `{u | Hom(u, v) = 0 for all v in s}`.
    pub fn hom_left_perp(&self, s: &DiagonalSet) -> DiagonalSet {
        self.perp_by(&self.hom_out, s)
    }

    fn perp_by(&self, masks: &[Bits], s: &DiagonalSet) -> DiagonalSet {
        let width = self.diagonals.len();
        let mut bits = Bits::new(width);
        for u in 0..width {
            if !masks[u].intersects(s.bits()) {
                bits.set(u);
            }
        }
        DiagonalSet::from_bits(self.params, bits)
    }
}
