//! Exhaustive and closure-system enumeration.
//!
//! Two independent routes produce the family of Ptolemy diagrams: a
//! bit-parallel scan over the whole subset lattice (bounded by a bit cap,
//! default 28), and lectic next-closure over the Ptolemy closure operator
//! (no cap). Both emit in the same canonical order - ascending as integers
//! with canonical index `i` at bit `i` - so their outputs are comparable
//! element by element.
//!
//! Cluster-tilting sets are generated structurally (triangulations of one
//! region replicated by rotation); maximal rigid sets come from maximal
//! clique enumeration over the Ext-compatibility graph.

use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Mutex;

use serde::Serialize;
use thiserror::Error;

use crate::bits::Bits;
use crate::classify::{torsion_pair_of, TorsionPair};
use crate::polygon::PolygonParams;
use crate::sets::{DiagonalSet, PairTable};

pub const DEFAULT_BIT_CAP: u32 = 28;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Target {
    Ptolemy,
    TorsionPairs,
    ClusterTilting,
    MaximalRigid,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Powerset,
    ClosureSystem,
    Structural,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Generator {
    Rho,
    Shift,
}

#[derive(Debug, Error)]
pub enum EnumError {
    #[error("powerset scan needs {width} bits, above the cap of {cap}")]
    CapExceeded { width: usize, cap: u32 },
    #[error("mode {mode:?} is not valid for target {target:?}")]
    InvalidMode { target: Target, mode: Mode },
    #[error("REPCLUS_THREADS must be a positive integer, got {0:?}")]
    BadThreadCount(String),
    #[error("input family is not closed under {0:?}: image {1} is not in the input")]
    NotClosedUnderGenerator(Generator, String),
    #[error("duplicate set {0} in orbit-reduction input")]
    DuplicateInput(String),
}

#[derive(Clone, Debug)]
pub struct EnumerationRequest {
    pub params: PolygonParams,
    pub target: Target,
    pub mode: Mode,
    pub count_only: bool,
    pub orbit_reduction: Option<Generator>,
    pub bit_cap: u32,
    pub threads: Option<usize>,
}

impl EnumerationRequest {
    pub fn new(params: PolygonParams, target: Target) -> Self {
        EnumerationRequest {
            params,
            target,
            mode: Mode::default_for(params, target, DEFAULT_BIT_CAP),
            count_only: false,
            orbit_reduction: None,
            bit_cap: DEFAULT_BIT_CAP,
            threads: None,
        }
    }
}

impl Mode {
    pub fn default_for(params: PolygonParams, target: Target, cap: u32) -> Mode {
        match target {
            Target::Ptolemy | Target::TorsionPairs => {
                if params.diagonal_count() <= cap as usize {
                    Mode::Powerset
                } else {
                    Mode::ClosureSystem
                }
            }
            Target::ClusterTilting | Target::MaximalRigid => Mode::Structural,
        }
    }
}

/// Result of running a request: counts, sets, torsion pairs, or orbit
/// representatives depending on the flags.
#[derive(Debug)]
pub enum Enumeration {
    Count(u64),
    Sets(Vec<DiagonalSet>),
    Pairs(Vec<TorsionPair>),
    Orbits(Vec<OrbitRep>),
}

#[derive(Clone, Debug, Serialize)]
pub struct OrbitRep {
    pub representative: DiagonalSet,
    pub orbit_size: usize,
}

pub fn run_request(table: &PairTable, req: &EnumerationRequest) -> Result<Enumeration, EnumError> {
    let sets = match req.target {
        Target::Ptolemy | Target::TorsionPairs => {
            if req.count_only && req.orbit_reduction.is_none() {
                return Ok(Enumeration::Count(count_ptolemy(table, req)?));
            }
            enumerate_ptolemy(table, req)?
        }
        Target::ClusterTilting => {
            expect_structural(req)?;
            enumerate_cluster_tilting(req.params)
        }
        Target::MaximalRigid => {
            expect_structural(req)?;
            enumerate_maximal_rigid(table)
        }
    };
    if let Some(generator) = req.orbit_reduction {
        let orbits = orbit_reduce(&sets, generator)?;
        return Ok(if req.count_only {
            Enumeration::Count(orbits.len() as u64)
        } else {
            Enumeration::Orbits(orbits)
        });
    }
    if req.count_only {
        return Ok(Enumeration::Count(sets.len() as u64));
    }
    if req.target == Target::TorsionPairs {
        let pairs = sets
            .iter()
            .map(|s| torsion_pair_of(table, s).expect("enumerated set is Ptolemy"))
            .collect();
        return Ok(Enumeration::Pairs(pairs));
    }
    Ok(Enumeration::Sets(sets))
}

fn expect_structural(req: &EnumerationRequest) -> Result<(), EnumError> {
    if req.mode != Mode::Structural {
        return Err(EnumError::InvalidMode { target: req.target, mode: req.mode });
    }
    Ok(())
}

/// Every Ptolemy diagram, in canonical order.
pub fn enumerate_ptolemy(
    table: &PairTable,
    req: &EnumerationRequest,
) -> Result<Vec<DiagonalSet>, EnumError> {
    match req.mode {
        Mode::Powerset => {
            let masks = powerset_scan(table, req, false)?.masks;
            Ok(masks
                .into_iter()
                .map(|m| DiagonalSet::from_mask(req.params, m as u64))
                .collect())
        }
        Mode::ClosureSystem => {
            let mut out = Vec::new();
            next_closure_stream(table, |bits| {
                out.push(DiagonalSet::from_bits(req.params, bits.clone()))
            });
            Ok(out)
        }
        Mode::Structural => {
            Err(EnumError::InvalidMode { target: req.target, mode: req.mode })
        }
    }
}

pub fn count_ptolemy(table: &PairTable, req: &EnumerationRequest) -> Result<u64, EnumError> {
    match req.mode {
        Mode::Powerset => Ok(powerset_scan(table, req, true)?.count),
        Mode::ClosureSystem => {
            let mut count = 0u64;
            next_closure_stream(table, |_| count += 1);
            Ok(count)
        }
        Mode::Structural => {
            Err(EnumError::InvalidMode { target: req.target, mode: req.mode })
        }
    }
}

// ----- bit-parallel powerset scan -----

struct ScanOutcome {
    count: u64,
    masks: Vec<u32>,
}

/// Per-pair reject tables over `u32` masks: for each diagonal `a`, the mask
/// of lower crossing partners whose pair demands connectors, and the flat
/// connector mask per such pair.
struct CompactTables {
    width: usize,
    req_lower: Vec<u32>,
    conn: Vec<u32>,
}

fn compact_tables(table: &PairTable) -> CompactTables {
    let width = table.diagonal_count();
    let mut t = CompactTables {
        width,
        req_lower: vec![0; width],
        conn: vec![0; width * width],
    };
    for (a, b, connectors) in table.demanding_pairs() {
        let (lo, hi) = (a.min(b), a.max(b));
        t.req_lower[hi] |= 1 << lo;
        t.conn[hi * width + lo] = connectors.low_word() as u32;
    }
    t
}

#[inline]
fn mask_is_ptolemy(m: u32, t: &CompactTables) -> bool {
    let mut rem = m;
    while rem != 0 {
        let a = rem.trailing_zeros() as usize;
        rem &= rem - 1;
        let mut partners = t.req_lower[a] & m;
        while partners != 0 {
            let b = partners.trailing_zeros() as usize;
            partners &= partners - 1;
            if t.conn[a * t.width + b] & !m != 0 {
                return false;
            }
        }
    }
    true
}

fn powerset_scan(
    table: &PairTable,
    req: &EnumerationRequest,
    count_only: bool,
) -> Result<ScanOutcome, EnumError> {
    let width = table.diagonal_count();
    let cap = req.bit_cap.min(31);
    if width > cap as usize {
        return Err(EnumError::CapExceeded { width, cap });
    }
    let tables = compact_tables(table);
    let total: u64 = 1u64 << width;
    let workers = worker_count(req.threads)?;

    // Fixed high-order prefixes: contiguous chunks handed out dynamically.
    // Output is reassembled by chunk id, so the merged stream is ascending
    // and independent of the worker count.
    let chunk_size: u64 = (total / (workers as u64 * 8).max(1)).clamp(1 << 12, 1 << 22).min(total.max(1));
    let nchunks = total.div_ceil(chunk_size) as usize;
    let next_chunk = AtomicU64::new(0);
    let slots: Mutex<Vec<Option<(u64, Vec<u32>)>>> = Mutex::new(vec![None; nchunks]);

    std::thread::scope(|scope| {
        for _ in 0..workers {
            scope.spawn(|| loop {
                let chunk = next_chunk.fetch_add(1, Ordering::Relaxed);
                if chunk >= nchunks as u64 {
                    break;
                }
                let lo = chunk * chunk_size;
                let hi = (lo + chunk_size).min(total);
                let mut count = 0u64;
                let mut masks = Vec::new();
                for m in lo..hi {
                    if mask_is_ptolemy(m as u32, &tables) {
                        count += 1;
                        if !count_only {
                            masks.push(m as u32);
                        }
                    }
                }
                slots.lock().unwrap()[chunk as usize] = Some((count, masks));
            });
        }
    });

    let mut count = 0u64;
    let mut masks = Vec::new();
    for slot in slots.into_inner().unwrap() {
        let (c, ms) = slot.expect("every chunk was processed");
        count += c;
        masks.extend_from_slice(&ms);
    }
    Ok(ScanOutcome { count, masks })
}

fn worker_count(override_threads: Option<usize>) -> Result<usize, EnumError> {
    if let Some(k) = override_threads {
        return Ok(k.max(1));
    }
    match std::env::var("REPCLUS_THREADS") {
        Ok(raw) => raw
            .trim()
            .parse::<usize>()
            .ok()
            .filter(|&k| k >= 1)
            .ok_or(EnumError::BadThreadCount(raw)),
        Err(_) => Ok(std::thread::available_parallelism().map_or(1, |n| n.get())),
    }
}

// ----- lectic next-closure over the Ptolemy closure operator -----

/// Emits every closed set of the Ptolemy closure operator in ascending
/// canonical order, starting from closure of the empty set.
pub(crate) fn next_closure_stream(table: &PairTable, mut emit: impl FnMut(&Bits)) {
    let width = table.diagonal_count();
    let mut current = table.closure_bits(&Bits::new(width));
    emit(&current);
    'outer: loop {
        for j in 0..width {
            if current.get(j) {
                continue;
            }
            let mut seed = current.above(j);
            seed.set(j);
            let closed = table.closure_bits(&seed);
            // valid successor iff the closure stayed inside the prefix
            if closed.eq_above(&current, j) {
                current = closed;
                emit(&current);
                continue 'outer;
            }
        }
        break;
    }
}

// ----- structural generators -----

/// All triangulations of the convex `m`-gon on vertices `1..=m`, each as its
/// set of `m - 3` chords. Each triangulation is produced exactly once by
/// recursing on the apex of the triangle over the base edge `(1, m)`.
pub fn triangulations(m: u32) -> Vec<Vec<(u32, u32)>> {
    fn rec(lo: u32, hi: u32) -> Vec<Vec<(u32, u32)>> {
        if hi - lo < 2 {
            return vec![Vec::new()];
        }
        let mut out = Vec::new();
        for apex in lo + 1..hi {
            for left in rec(lo, apex) {
                for right in rec(apex, hi) {
                    let mut tri = left.clone();
                    tri.extend_from_slice(&right);
                    if apex - lo >= 2 {
                        tri.push((lo, apex));
                    }
                    if hi - apex >= 2 {
                        tri.push((apex, hi));
                    }
                    out.push(tri);
                }
            }
        }
        out
    }
    rec(1, m)
}

/// Cluster-tilting sets: each triangulation of region 1, replicated into all
/// `p` regions by the rotation. The count is the Catalan number C_{n+1},
/// independent of `p`, and every set has `p * n` diagonals.
pub fn enumerate_cluster_tilting(params: PolygonParams) -> Vec<DiagonalSet> {
    let mut out: Vec<DiagonalSet> = triangulations(params.vertex_count())
        .into_iter()
        .map(|chords| {
            DiagonalSet::from_diagonals(
                params,
                chords.iter().flat_map(|&(i, j)| {
                    (1..=params.p()).map(move |k| {
                        params.diagonal(i, j, k).expect("rotated chord stays a diagonal")
                    })
                }),
            )
        })
        .collect();
    out.sort();
    out
}

/// Maximal rigid sets: maximal cliques of the compatibility graph (edge iff
/// Ext vanishes in both directions), via Bron-Kerbosch with pivoting.
pub fn enumerate_maximal_rigid(table: &PairTable) -> Vec<DiagonalSet> {
    let width = table.diagonal_count();
    let mut found: Vec<Bits> = Vec::new();
    let mut clique = Bits::new(width);
    bron_kerbosch(table, &mut clique, Bits::full(width), Bits::new(width), &mut found);
    let mut out: Vec<DiagonalSet> = found
        .into_iter()
        .map(|bits| DiagonalSet::from_bits(table.params(), bits))
        .collect();
    out.sort();
    out
}

fn bron_kerbosch(
    table: &PairTable,
    clique: &mut Bits,
    mut candidates: Bits,
    mut excluded: Bits,
    out: &mut Vec<Bits>,
) {
    if candidates.is_empty() && excluded.is_empty() {
        out.push(clique.clone());
        return;
    }
    let pivot = candidates
        .ones()
        .chain(excluded.ones())
        .max_by_key(|&u| {
            let mut t = table.compat_mask(u).clone();
            t.intersect_with(&candidates);
            t.count_ones()
        })
        .expect("candidates or excluded nonempty");
    let mut without_pivot_nbrs = candidates.clone();
    without_pivot_nbrs.subtract(table.compat_mask(pivot));
    for v in without_pivot_nbrs.ones().collect::<Vec<_>>() {
        let nbrs = table.compat_mask(v);
        clique.set(v);
        let mut next_candidates = candidates.clone();
        next_candidates.intersect_with(nbrs);
        let mut next_excluded = excluded.clone();
        next_excluded.intersect_with(nbrs);
        bron_kerbosch(table, clique, next_candidates, next_excluded, out);
        clique.unset(v);
        candidates.unset(v);
        excluded.set(v);
    }
}

// ----- orbit reduction -----

/// Partition a family into orbits under elementwise rho or shift. Returns
/// the canonically smallest member of each orbit with the orbit length,
/// sorted by representative. The input must be duplicate-free and closed
/// under the generator.
pub fn orbit_reduce(
    sets: &[DiagonalSet],
    generator: Generator,
) -> Result<Vec<OrbitRep>, EnumError> {
    use std::collections::HashSet;

    if sets.is_empty() {
        return Ok(Vec::new());
    }
    let params = sets[0].params();
    let mut members: HashSet<&DiagonalSet> = HashSet::with_capacity(sets.len());
    for s in sets {
        if !members.insert(s) {
            return Err(EnumError::DuplicateInput(s.to_string()));
        }
    }
    let apply = |s: &DiagonalSet| match generator {
        Generator::Rho => s.map(|d| params.rho(d)),
        Generator::Shift => s.map(|d| params.shift(d)),
    };

    let mut order: Vec<&DiagonalSet> = sets.iter().collect();
    order.sort();
    let mut seen: HashSet<DiagonalSet> = HashSet::with_capacity(sets.len());
    let mut reps = Vec::new();
    for &start in &order {
        if seen.contains(start) {
            continue;
        }
        let mut orbit_size = 0usize;
        let mut cur = start.clone();
        loop {
            if !members.contains(&cur) {
                return Err(EnumError::NotClosedUnderGenerator(generator, cur.to_string()));
            }
            seen.insert(cur.clone());
            orbit_size += 1;
            cur = apply(&cur);
            if cur == *start {
                break;
            }
        }
        // ascending scan meets each orbit at its minimum first
        reps.push(OrbitRep { representative: start.clone(), orbit_size });
    }
    Ok(reps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::{is_cluster_tilting, is_maximal_rigid};

    fn table(n: u32, p: u32) -> PairTable {
        PairTable::new(PolygonParams::new(n, p).unwrap())
    }

    fn request(t: &PairTable, target: Target) -> EnumerationRequest {
        EnumerationRequest::new(t.params(), target)
    }

    #[test]
    fn ptolemy_counts_on_squares() {
        let t = table(1, 1);
        let req = request(&t, Target::Ptolemy);
        assert_eq!(count_ptolemy(&t, &req).unwrap(), 4);
        let t = table(1, 2);
        let req = request(&t, Target::Ptolemy);
        assert_eq!(count_ptolemy(&t, &req).unwrap(), 16);
    }

    #[test]
    fn powerset_matches_naive_filter() {
        // independently filter all subsets through the general checker
        for (n, p) in [(1, 3), (2, 2), (3, 1)] {
            let t = table(n, p);
            let req = request(&t, Target::Ptolemy);
            let scanned = enumerate_ptolemy(&t, &req).unwrap();
            let naive: Vec<DiagonalSet> = (0u64..1 << t.diagonal_count())
                .map(|m| DiagonalSet::from_mask(t.params(), m))
                .filter(|s| t.is_ptolemy(s))
                .collect();
            assert_eq!(scanned, naive);
        }
    }

    #[test]
    fn modes_agree() {
        for (n, p) in [(1, 1), (1, 2), (2, 2), (3, 1), (2, 3)] {
            let t = table(n, p);
            let mut req = request(&t, Target::Ptolemy);
            req.mode = Mode::Powerset;
            let scanned = enumerate_ptolemy(&t, &req).unwrap();
            req.mode = Mode::ClosureSystem;
            let closed = enumerate_ptolemy(&t, &req).unwrap();
            assert_eq!(scanned, closed);
        }
    }

    #[test]
    fn scan_is_deterministic_across_worker_counts() {
        let t = table(2, 2);
        let mut req = request(&t, Target::Ptolemy);
        req.threads = Some(1);
        let one = enumerate_ptolemy(&t, &req).unwrap();
        req.threads = Some(3);
        let three = enumerate_ptolemy(&t, &req).unwrap();
        assert_eq!(one, three);
    }

    #[test]
    fn cap_is_enforced() {
        let t = table(3, 3);
        let mut req = request(&t, Target::Ptolemy);
        req.bit_cap = 20;
        req.mode = Mode::Powerset;
        assert!(matches!(
            count_ptolemy(&t, &req),
            Err(EnumError::CapExceeded { width: 27, cap: 20 })
        ));
    }

    #[test]
    fn ptolemy_family_is_closed_under_autoequivalences() {
        let t = table(2, 2);
        let req = request(&t, Target::Ptolemy);
        let family = enumerate_ptolemy(&t, &req).unwrap();
        let params = t.params();
        for s in &family {
            assert!(family.contains(&s.map(|d| params.rho(d))));
            assert!(family.contains(&s.map(|d| params.shift(d))));
            assert_eq!(t.ext_left_perp(&t.ext_right_perp(s)), *s);
        }
    }

    #[test]
    fn triangulation_counts_are_catalan() {
        // C_2..C_5 = 2, 5, 14, 42
        assert_eq!(triangulations(4).len(), 2);
        assert_eq!(triangulations(5).len(), 5);
        assert_eq!(triangulations(6).len(), 14);
        assert_eq!(triangulations(7).len(), 42);
        // no duplicates, each with m-3 chords
        let mut tris: Vec<Vec<(u32, u32)>> = triangulations(6)
            .into_iter()
            .map(|mut t| {
                t.sort();
                t
            })
            .collect();
        assert!(tris.iter().all(|t| t.len() == 3));
        tris.sort();
        tris.dedup();
        assert_eq!(tris.len(), 14);
    }

    #[test]
    fn cluster_tilting_generation() {
        let t = table(1, 3);
        let sets = enumerate_cluster_tilting(t.params());
        assert_eq!(sets.len(), 2);
        for s in &sets {
            assert_eq!(s.len(), 3);
            assert!(is_cluster_tilting(&t, s));
        }
        let t = table(2, 2);
        let sets = enumerate_cluster_tilting(t.params());
        assert_eq!(sets.len(), 5);
        assert!(sets.iter().all(|s| s.len() == 4));
        let t = table(3, 4);
        let sets = enumerate_cluster_tilting(t.params());
        assert_eq!(sets.len(), 14);
        assert!(sets.iter().all(|s| s.len() == 12));
    }

    #[test]
    fn maximal_rigid_on_small_params() {
        // two isolated vertices on the square
        let t = table(1, 1);
        let cliques = enumerate_maximal_rigid(&t);
        assert_eq!(cliques.len(), 2);
        assert!(cliques.iter().all(|s| s.len() == 1));

        // the double square: exactly the two cluster-tilting sets
        let t = table(1, 2);
        let cliques = enumerate_maximal_rigid(&t);
        assert_eq!(cliques, enumerate_cluster_tilting(t.params()));
    }

    #[test]
    fn maximal_rigid_contains_cluster_tilting_and_is_maximal() {
        for (n, p) in [(1, 2), (2, 1), (2, 2), (3, 1)] {
            let t = table(n, p);
            let cliques = enumerate_maximal_rigid(&t);
            for s in &cliques {
                assert!(is_maximal_rigid(&t, s));
            }
            for ct in enumerate_cluster_tilting(t.params()) {
                assert!(cliques.contains(&ct));
            }
        }
    }

    #[test]
    fn rigid_pair_extends_to_maximal_rigid_but_never_cluster_tilting() {
        let t = table(3, 4);
        let x = DiagonalSet::from_triples(t.params(), &[(1, 3, 1), (2, 4, 3)]).unwrap();
        let cliques = enumerate_maximal_rigid(&t);
        let hosts: Vec<&DiagonalSet> =
            cliques.iter().filter(|c| x.is_subset_of(c)).collect();
        assert!(!hosts.is_empty());
        assert!(hosts.iter().all(|c| !is_cluster_tilting(&t, c)));
    }

    #[test]
    fn orbit_reduction_counts() {
        let t = table(1, 2);
        let req = request(&t, Target::Ptolemy);
        let family = enumerate_ptolemy(&t, &req).unwrap();
        assert_eq!(family.len(), 16);
        let orbits = orbit_reduce(&family, Generator::Rho).unwrap();
        // Burnside: 16 sets, 4 fixed by rho, (16 + 4) / 2 = 10 orbits
        assert_eq!(orbits.len(), 10);
        assert_eq!(orbits.iter().map(|o| o.orbit_size).sum::<usize>(), 16);
        // representatives ascend and are orbit minima
        for w in orbits.windows(2) {
            assert!(w[0].representative < w[1].representative);
        }

        let ct = enumerate_cluster_tilting(t.params());
        let orbits = orbit_reduce(&ct, Generator::Rho).unwrap();
        assert_eq!(orbits.len(), 2);
        assert!(orbits.iter().all(|o| o.orbit_size == 1));

        assert!(orbit_reduce(&[], Generator::Rho).unwrap().is_empty());
    }

    #[test]
    fn orbit_reduction_rejects_bad_input() {
        let t = table(1, 2);
        let a = DiagonalSet::from_triples(t.params(), &[(1, 3, 1)]).unwrap();
        let err = orbit_reduce(&[a.clone(), a.clone()], Generator::Rho).unwrap_err();
        assert!(matches!(err, EnumError::DuplicateInput(_)));
        let err = orbit_reduce(&[a], Generator::Rho).unwrap_err();
        assert!(matches!(err, EnumError::NotClosedUnderGenerator(..)));
    }

    #[test]
    fn request_dispatch() {
        let t = table(1, 1);
        let mut req = request(&t, Target::TorsionPairs);
        match run_request(&t, &req).unwrap() {
            Enumeration::Pairs(pairs) => {
                assert_eq!(pairs.len(), 4);
                for pair in &pairs {
                    assert!(t.is_ptolemy(&pair.torsion));
                    assert_eq!(pair.free, t.hom_right_perp(&pair.torsion));
                }
            }
            other => panic!("expected pairs, got {other:?}"),
        }
        req.count_only = true;
        assert!(matches!(run_request(&t, &req).unwrap(), Enumeration::Count(4)));
        req.mode = Mode::Structural;
        assert!(matches!(
            run_request(&t, &req),
            Err(EnumError::InvalidMode { .. })
        ));
    }
}
