//! Independent check of the n = 1 case against the rank-one orbit model.
//!
//! For rank one the derived category is semisimple: indecomposables are the
//! shifts S[m] with Hom(S[a], S[b]) nonzero iff a = b, and the translation
//! acts as [-1]. Passing to the orbit category identifies S[m] with
//! S[m + 2p], so objects are residues mod 2p, Hom is nonzero exactly on
//! equal residues, and Ext(S[a], S[b]) is nonzero exactly when b = a - 1.
//! The diagonal model must reproduce this through the shift orbit of one
//! starting diagonal.

use repclus_core::{DiagonalSet, PairTable, PolygonParams};

/// Diagonals listed by orbit position: index m holds the m-fold shift of
/// (2,4,1), and the orbit closes after 2p steps.
fn orbit(params: PolygonParams) -> Vec<repclus_core::Diagonal> {
    let start = params.diagonal(2, 4, 1).unwrap();
    let mut out = vec![start];
    let mut cur = params.shift(start);
    while cur != start {
        out.push(cur);
        cur = params.shift(cur);
    }
    out
}

#[test]
fn shift_orbit_covers_all_diagonals() {
    for p in 1..=4 {
        let params = PolygonParams::new(1, p).unwrap();
        let orb = orbit(params);
        assert_eq!(orb.len(), 2 * p as usize);
        let mut sorted = orb.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), 2 * p as usize);
    }
}

#[test]
fn ext_and_hom_match_the_residue_model() {
    for p in 1..=4 {
        let params = PolygonParams::new(1, p).unwrap();
        let orb = orbit(params);
        let m = orb.len() as i64;
        for (a, &x) in orb.iter().enumerate() {
            for (b, &y) in orb.iter().enumerate() {
                let (a, b) = (a as i64, b as i64);
                let hom_expected = a == b;
                let ext_expected = (b - a).rem_euclid(m) == m - 1;
                assert_eq!(params.hom_nonzero(x, y), hom_expected, "hom S[{a}] -> S[{b}], p={p}");
                assert_eq!(params.ext_nonzero(x, y), ext_expected, "ext S[{a}] -> S[{b}], p={p}");
            }
        }
    }
}

#[test]
fn perps_match_the_residue_model() {
    for p in 1..=4 {
        let params = PolygonParams::new(1, p).unwrap();
        let table = PairTable::new(params);
        let orb = orbit(params);
        let m = orb.len() as i64;
        for (a, &x) in orb.iter().enumerate() {
            let s = DiagonalSet::from_diagonals(params, [x]);
            // right perp excludes exactly S[a-1]; hom right perp excludes S[a]
            let ext_expected = DiagonalSet::from_diagonals(
                params,
                orb.iter()
                    .enumerate()
                    .filter(|&(b, _)| (b as i64 - a as i64).rem_euclid(m) != m - 1)
                    .map(|(_, &d)| d),
            );
            assert_eq!(table.ext_right_perp(&s), ext_expected);
            let hom_expected = DiagonalSet::from_diagonals(
                params,
                orb.iter().enumerate().filter(|&(b, _)| b != a).map(|(_, &d)| d),
            );
            assert_eq!(table.hom_right_perp(&s), hom_expected);
        }
    }
}

#[test]
fn golden_values_on_the_square() {
    let params = PolygonParams::new(1, 1).unwrap();
    let table = PairTable::new(params);
    let m = params.diagonal(2, 4, 1).unwrap();
    let m1 = params.diagonal(1, 3, 1).unwrap();
    // M[1] = (1,3,1)
    assert_eq!(params.shift(m), m1);
    assert!(!params.hom_nonzero(m, m1));
    assert!(!params.hom_nonzero(m1, m));
    let s = DiagonalSet::from_diagonals(params, [m1]);
    assert_eq!(table.ext_right_perp(&s), s);
    // the torsion pair (add M, add M[1])
    let pair = repclus_core::torsion_pair_of(&table, &DiagonalSet::from_diagonals(params, [m]))
        .unwrap();
    assert_eq!(pair.free, s);
}
