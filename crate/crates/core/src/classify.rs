//! Rigidity, maximal rigidity, cluster-tilting recognition, and torsion-pair
//! assembly.

use serde::Serialize;
use thiserror::Error;

use crate::sets::{DiagonalSet, PairTable, PtolemyViolation};

/// All pairwise Ext vanishes inside the set. Equivalently each region slice
/// is a partial triangulation with no crossings into the adjacent regions.
pub fn is_rigid(table: &PairTable, s: &DiagonalSet) -> bool {
    s.indices().all(|x| !table.ext_out_mask(x).intersects(s.bits()))
}

/// Diagonals outside the set that keep it rigid when added one at a time.
/// Rigidity is hereditary under subsets, so a one-step search is a sound
/// maximality certificate.
pub fn rigid_extension_candidates(table: &PairTable, s: &DiagonalSet) -> DiagonalSet {
    let mut out = DiagonalSet::empty(table.params());
    for d in 0..table.diagonal_count() {
        if !s.contains_index(d) && s.bits().is_subset_of(table.compat_mask(d)) {
            out.insert(table.params().diagonal_at(d));
        }
    }
    out
}

pub fn is_maximal_rigid(table: &PairTable, s: &DiagonalSet) -> bool {
    is_rigid(table, s) && rigid_extension_candidates(table, s).is_empty()
}

/// The set equals both of its Ext perps. The equivalent structural test
/// (region 1 is a triangulation and every region is the rotation of the
/// previous one) is evaluated alongside and the two must agree.
pub fn is_cluster_tilting(table: &PairTable, s: &DiagonalSet) -> bool {
    let by_perps =
        table.ext_right_perp(s) == *s && table.ext_left_perp(s) == *s;
    let by_structure = structural_cluster_tilting(s);
    assert_eq!(
        by_perps, by_structure,
        "cluster-tilting tests disagree on {s} at {:?}",
        table.params()
    );
    by_perps
}

/// Region-1 slice is a maximal noncrossing set of `n` chords and every other
/// slice carries the same chords (the rotation image of its predecessor).
fn structural_cluster_tilting(s: &DiagonalSet) -> bool {
    let params = s.params();
    let n = params.n() as usize;
    let mut slices: Vec<Vec<(u32, u32)>> = vec![Vec::new(); params.p() as usize];
    for d in s.iter() {
        slices[d.region() as usize - 1].push((d.i(), d.j()));
    }
    let first = &slices[0];
    if first.len() != n {
        return false;
    }
    // noncrossing: no strict interleaving among region-1 chords; a set of n
    // noncrossing chords of an (n+3)-gon is automatically a triangulation
    for (idx, &(i, j)) in first.iter().enumerate() {
        for &(a, b) in &first[idx + 1..] {
            if (i < a && a < j && j < b) || (a < i && i < b && b < j) {
                return false;
            }
        }
    }
    slices.iter().all(|sl| {
        sl.len() == n && sl.iter().all(|c| first.contains(c))
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ClassificationReport {
    pub rigid: bool,
    pub maximal_rigid: bool,
    pub cluster_tilting: bool,
    pub ptolemy: bool,
    pub size: usize,
}

pub fn classify(table: &PairTable, s: &DiagonalSet) -> ClassificationReport {
    let report = ClassificationReport {
        rigid: is_rigid(table, s),
        maximal_rigid: is_maximal_rigid(table, s),
        cluster_tilting: is_cluster_tilting(table, s),
        ptolemy: table.is_ptolemy(s),
        size: s.len(),
    };
    debug_assert!(!report.cluster_tilting || report.maximal_rigid);
    debug_assert!(!report.maximal_rigid || report.rigid);
    debug_assert!(
        !report.cluster_tilting
            || report.size == (table.params().p() * table.params().n()) as usize
    );
    report
}

/// A torsion pair: a Ptolemy set together with its Hom right perp.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TorsionPair {
    pub torsion: DiagonalSet,
    pub free: DiagonalSet,
}

#[derive(Debug, Error)]
#[error("set is not a Ptolemy diagram: {} crossing pair(s) with missing connectors", violations.len())]
pub struct NotPtolemyError {
    pub violations: Vec<PtolemyViolation>,
}

pub fn torsion_pair_of(
    table: &PairTable,
    s: &DiagonalSet,
) -> Result<TorsionPair, NotPtolemyError> {
    let violations = table.violations(s);
    if !violations.is_empty() {
        return Err(NotPtolemyError { violations });
    }
    let free = table.hom_right_perp(s);
    Ok(TorsionPair { torsion: s.clone(), free })
}
