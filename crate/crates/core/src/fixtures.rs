//! Small Cartan matrices and partitions used throughout the examples and tests.

use crate::cartan::CartanMatrix;
use crate::folding::Partition;

fn build(rows: &[&[i64]]) -> CartanMatrix {
    CartanMatrix::new(rows.iter().map(|r| r.to_vec()).collect(), None).expect("fixture matrices are valid")
}

/// Simply-laced matrix on `n` nodes with the given 1-based edges.
pub fn simply_laced(n: usize, edges: &[(usize, usize)]) -> CartanMatrix {
    let mut a = vec![vec![0i64; n]; n];
    for (i, row) in a.iter_mut().enumerate() {
        row[i] = 2;
    }
    for &(u, v) in edges {
        a[u - 1][v - 1] = -1;
        a[v - 1][u - 1] = -1;
    }
    CartanMatrix::new(a, None).expect("simply-laced matrices are valid")
}

pub fn a1() -> CartanMatrix {
    build(&[&[2]])
}

pub fn a2() -> CartanMatrix {
    build(&[&[2, -1], &[-1, 2]])
}

pub fn a3() -> CartanMatrix {
    build(&[&[2, -1, 0], &[-1, 2, -1], &[0, -1, 2]])
}

/// `B2` with `α1` short: `s_1(α_2) = α_2 + 2α_1`.
pub fn b2() -> CartanMatrix {
    build(&[&[2, -2], &[-1, 2]])
}

pub fn g2() -> CartanMatrix {
    build(&[&[2, -1], &[-3, 2]])
}

/// Untwisted affine `A1^(1)`.
pub fn affine_a1() -> CartanMatrix {
    build(&[&[2, -2], &[-2, 2]])
}

/// Untwisted affine `A2^(1)` (a triangle).
pub fn affine_a2() -> CartanMatrix {
    build(&[&[2, -1, -1], &[-1, 2, -1], &[-1, -1, 2]])
}

/// Path 1-2-3 with 3-4 and 3-5; classes {1}, {2}, {3}, {4,5}.
pub fn figure_one() -> (CartanMatrix, Partition) {
    let cm = simply_laced(5, &[(1, 2), (2, 3), (3, 4), (3, 5)]);
    let p = Partition::from_classes(5, vec![vec![0], vec![1], vec![2], vec![3, 4]]).expect("valid partition");
    (cm, p)
}

/// Path 1-2-…-9; classes {5}, {3,4,6}, {2,7,8}, {1,9}.
pub fn figure_two() -> (CartanMatrix, Partition) {
    let edges: Vec<(usize, usize)> = (1..9).map(|i| (i, i + 1)).collect();
    let cm = simply_laced(9, &edges);
    let p = Partition::from_classes(9, vec![vec![4], vec![2, 3, 5], vec![1, 6, 7], vec![0, 8]]).expect("valid partition");
    (cm, p)
}

/// Every fixture matrix of finite or affine type.
pub fn all() -> Vec<(&'static str, CartanMatrix)> {
    vec![
        ("A1", a1()),
        ("A2", a2()),
        ("A3", a3()),
        ("B2", b2()),
        ("G2", g2()),
        ("A1^(1)", affine_a1()),
        ("A2^(1)", affine_a2()),
        ("figure-1", figure_one().0),
        ("figure-2", figure_two().0),
    ]
}
