//! Shared fixtures for the integration tests: the golden partial latin
//! square of the order-18 configuration (1-based symbols, 0 marks an
//! undetermined entry) and the instance roster used by the property
//! suites.

use ldm::constructions::{
    build_conic_line, build_order18, build_tetrahedron, build_triangle, LabelMode,
};
use ldm::field::Field;
use ldm::loops::PartialSquare;
use ldm::multinet::LabeledMultinet;

#[rustfmt::skip]
pub const ORDER18_SQUARE: [[usize; 18]; 18] = [
    [ 0,  0,  0,  4,  5,  6,  7,  8,  9, 10, 11, 12, 13, 14, 15, 16, 17, 18],
    [ 0,  0,  0,  6,  4,  5,  9,  7,  8, 12, 10, 11, 15, 13, 14, 18, 16, 17],
    [ 0,  0,  0,  5,  6,  4,  8,  9,  7, 11, 12, 10, 14, 15, 13, 17, 18, 16],
    [ 4,  6,  5,  0,  0,  0,  2,  3,  1, 15, 13, 14, 16, 17, 18, 11, 12, 10],
    [ 5,  4,  6,  0,  0,  0,  3,  1,  2, 13, 14, 15, 17, 18, 16, 12, 10, 11],
    [ 6,  5,  4,  0,  0,  0,  1,  2,  3, 14, 15, 13, 18, 16, 17, 10, 11, 12],
    [ 7,  9,  8,  2,  3,  1,  0,  0,  0, 17, 18, 16, 10, 11, 12, 15, 13, 14],
    [ 8,  7,  9,  3,  1,  2,  0,  0,  0, 18, 16, 17, 11, 12, 10, 13, 14, 15],
    [ 9,  8,  7,  1,  2,  3,  0,  0,  0, 16, 17, 18, 12, 10, 11, 14, 15, 13],
    [10, 12, 11, 16, 17, 18, 13, 14, 15,  3,  1,  2,  7,  8,  9,  4,  5,  6],
    [11, 10, 12, 17, 18, 16, 14, 15, 13,  1,  2,  3,  8,  9,  7,  5,  6,  4],
    [12, 11, 10, 18, 16, 17, 15, 13, 14,  2,  3,  1,  9,  7,  8,  6,  4,  5],
    [13, 15, 14, 11, 12, 10, 18, 16, 17,  4,  5,  6,  1,  2,  3,  9,  7,  8],
    [14, 13, 15, 12, 10, 11, 16, 17, 18,  5,  6,  4,  2,  3,  1,  7,  8,  9],
    [15, 14, 13, 10, 11, 12, 17, 18, 16,  6,  4,  5,  3,  1,  2,  8,  9,  7],
    [16, 18, 17, 15, 13, 14, 11, 12, 10,  8,  9,  7,  4,  5,  6,  2,  3,  1],
    [17, 16, 18, 13, 14, 15, 12, 10, 11,  9,  7,  8,  5,  6,  4,  3,  1,  2],
    [18, 17, 16, 14, 15, 13, 10, 11, 12,  7,  8,  9,  6,  4,  5,  1,  2,  3],
];

/// True iff the computed square agrees with the golden one at all 324
/// entries (including the undetermined positions).
pub fn square_matches_golden(s: &PartialSquare) -> bool {
    (0..18).all(|i| {
        (0..18).all(|j| {
            let expected = match ORDER18_SQUARE[i][j] {
                0 => None,
                k => Some(k - 1),
            };
            s.get(i, j) == expected
        })
    })
}

pub fn fp(p: u64) -> Field {
    Field::prime(p).unwrap()
}

/// Every instance exercised by the family criteria, with a short tag.
/// (Not every test binary that includes this module uses it.)
#[allow(dead_code)]
pub fn all_instances() -> Vec<(String, LabeledMultinet)> {
    let mut out = Vec::new();
    for (m, p) in [(1usize, 7u64), (2, 13), (3, 19), (4, 13), (9, 109)] {
        out.push((
            format!("triangle m={m} F{p}"),
            build_triangle(m, &fp(p)).unwrap(),
        ));
    }
    for (m, p) in [(2usize, 7u64), (5, 31), (9, 109)] {
        for k in [0usize, 1] {
            out.push((
                format!("conic-line m={m} k={k} F{p}"),
                build_conic_line(m, k, &fp(p)).unwrap(),
            ));
        }
    }
    out.push((
        "tetrahedron m=5 F31".into(),
        build_tetrahedron(5, &fp(31), 1, 0).unwrap(),
    ));
    out.push((
        "tetrahedron m=9 F73".into(),
        build_tetrahedron(9, &fp(73), 1, 0).unwrap(),
    ));
    out.push((
        "order18 F19".into(),
        build_order18(&fp(19), LabelMode::FirstFit).unwrap(),
    ));
    out.push((
        "order18 Q(zeta_9)".into(),
        build_order18(&Field::cyclotomic(9), LabelMode::FirstFit).unwrap(),
    ));
    out
}
