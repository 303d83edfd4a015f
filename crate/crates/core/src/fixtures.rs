//! Small built-in Cartan schemes used by tests and examples.

use crate::cartan::CartanScheme;
use crate::linalg::IntMatrix;

fn single_object(rows: &[Vec<i64>]) -> CartanScheme {
    let m = IntMatrix::from_rows(rows).expect("square matrix");
    let rank = m.dim();
    CartanScheme::new(vec!["a".into()], vec![vec![0]; rank], vec![m]).expect("valid scheme")
}

/// Rank one, one object, matrix `[[2]]`.
pub fn rank_one() -> CartanScheme {
    single_object(&[vec![2]])
}

/// The Weyl group of type A2 as a one-object groupoid.
pub fn a2() -> CartanScheme {
    single_object(&[vec![2, -1], vec![-1, 2]])
}

/// Type B2 with Cartan matrix `[[2,-1],[-2,2]]`.
pub fn b2() -> CartanScheme {
    single_object(&[vec![2, -1], vec![-2, 2]])
}

/// The affine matrix `[[2,-2],[-2,2]]`; its real roots are infinite.
pub fn affine_a1() -> CartanScheme {
    single_object(&[vec![2, -2], vec![-2, 2]])
}

/// Rank-three scheme on five objects `a..e` with object change diagram
/// `a -1- b -2- c -3- d -1- e`.
pub fn bruhat() -> CartanScheme {
    let objects: Vec<String> = ["a", "b", "c", "d", "e"].iter().map(|s| s.to_string()).collect();
    let reflections = vec![
        vec![1, 0, 2, 4, 3], // a<->b, d<->e
        vec![0, 2, 1, 3, 4], // b<->c
        vec![0, 1, 3, 2, 4], // c<->d
    ];
    let m = |rows: [[i64; 3]; 3]| IntMatrix::from_rows(&rows.map(|r| r.to_vec())).unwrap();
    let matrices = vec![
        m([[2, -1, 0], [-1, 2, -2], [0, -1, 2]]),
        m([[2, -1, 0], [-1, 2, -1], [0, -1, 2]]),
        m([[2, -1, -1], [-1, 2, -1], [-1, -1, 2]]),
        m([[2, 0, -1], [0, 2, -1], [-1, -1, 2]]),
        m([[2, 0, -1], [0, 2, -1], [-1, -2, 2]]),
    ];
    CartanScheme::new(objects, reflections, matrices).expect("valid scheme")
}
