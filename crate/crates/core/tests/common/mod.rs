#![allow(dead_code)]

use powercrit_core::Group;

/// Small groups of many shapes, all of order at most 200.
pub fn small_family() -> Vec<Group> {
    let mut specs: Vec<String> = Vec::new();
    specs.extend([1, 2, 6, 8, 9, 12, 25, 30, 60].map(|n| format!("C:{n}")));
    specs.extend([2, 3, 4, 6, 9, 15, 30].map(|n| format!("D:{n}")));
    specs.extend(["S:3", "S:4", "S:5", "Q:3", "Q:4", "Q:5"].map(String::from));
    specs.extend(
        [
            "C:2 x C:2",
            "C:3 x C:3",
            "C:2 x C:4",
            "C:2 x C:2 x C:2",
            "C:2 x S:3",
            "C:3 x Q:3",
            "M:5,2,2,2,7",
            "M:7,1,3,1,2",
            "M:3,2,2,1,8",
        ]
        .map(String::from),
    );
    specs.iter().map(|s| Group::parse(s).unwrap()).collect()
}

/// `x^1, x^2, ...` up to the identity.
pub fn powers(g: &Group, x: usize) -> Vec<usize> {
    let mut out = vec![x];
    let mut cur = x;
    while cur != g.identity() {
        cur = g.multiply(cur, x);
        out.push(cur);
    }
    out.sort_unstable();
    out
}

/// Closed-neighbourhood matrix of the power graph from explicit power lists.
pub fn naive_rows(g: &Group) -> Vec<Vec<bool>> {
    let n = g.order();
    let pw: Vec<Vec<usize>> = (0..n).map(|x| powers(g, x)).collect();
    let mut rows = vec![vec![false; n]; n];
    for x in 0..n {
        rows[x][x] = true;
        for &y in &pw[x] {
            rows[x][y] = true;
            rows[y][x] = true;
        }
    }
    rows
}

pub fn naive_common(rows: &[Vec<bool>], xs: &[usize]) -> Vec<usize> {
    (0..rows.len()).filter(|&z| xs.iter().all(|&x| rows[x][z])).collect()
}

pub fn naive_closure(rows: &[Vec<bool>], xs: &[usize]) -> Vec<usize> {
    naive_common(rows, &naive_common(rows, xs))
}

pub fn naive_twin_class(rows: &[Vec<bool>], x: usize) -> Vec<usize> {
    (0..rows.len()).filter(|&y| rows[y] == rows[x]).collect()
}
