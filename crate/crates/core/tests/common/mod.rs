#![allow(dead_code)]

use qwalk_core::{build_graph, Graph, QVector, Quaternion, WeightMap};

pub fn q(x0: f64, x1: f64, x2: f64, x3: f64) -> Quaternion {
    Quaternion::new(x0, x1, x2, x3)
}

pub fn k3_loops() -> (Graph, WeightMap) {
    let g = build_graph(3, &[(0, 1), (1, 2), (2, 0)], &[0, 1, 2]).unwrap();
    let s = 1.0 / 3f64.sqrt();
    let w = vec![
        q(0.0, s, 0.0, 0.0),
        q(0.0, -s, 0.0, 0.0),
        q(0.0, 0.0, s, 0.0),
        q(0.0, 0.0, -s, 0.0),
        q(0.0, 0.0, 0.0, s),
        q(0.0, 0.0, 0.0, -s),
        q(s, 0.0, 0.0, 0.0),
        q(s, 0.0, 0.0, 0.0),
        q(s, 0.0, 0.0, 0.0),
    ];
    let wm = WeightMap::new(&g, w).unwrap();
    (g, wm)
}

/// W̃-eigenvectors v1..v6 as printed for the K3 walk.
pub fn k3_sources() -> Vec<QVector> {
    let o = Quaternion::ONE;
    let z = Quaternion::ZERO;
    let v1 = vec![o, o, o];
    let v3 = vec![o, z, -o];
    let v4 = vec![z, o, -o];
    let j = |v: &QVector| v.iter().map(|x| *x * Quaternion::J).collect::<QVector>();
    vec![v1.clone(), j(&v1), v3.clone(), v4.clone(), j(&v3), j(&v4)]
}

/// u1+ .. u6+ for the K3 walk.
pub fn k3_lifted() -> Vec<QVector> {
    let s2 = 2f64.sqrt();
    let s5 = 5f64.sqrt();
    let z = Quaternion::ZERO;
    vec![
        vec![
            q(s2, 1.0, 0.0, 0.0),
            q(-s2, -1.0, 0.0, 0.0),
            q(0.0, 0.0, 1.0, s2),
            q(0.0, 0.0, -1.0, -s2),
            q(0.0, 0.0, -s2, 1.0),
            q(0.0, 0.0, s2, -1.0),
            q(2.0, s2, 0.0, 0.0),
            q(2.0, s2, 0.0, 0.0),
            q(2.0, s2, 0.0, 0.0),
        ],
        vec![
            q(0.0, 0.0, -s2, 1.0),
            q(0.0, 0.0, s2, -1.0),
            q(-1.0, s2, 0.0, 0.0),
            q(1.0, -s2, 0.0, 0.0),
            q(-s2, -1.0, 0.0, 0.0),
            q(s2, 1.0, 0.0, 0.0),
            q(0.0, 0.0, 2.0, -s2),
            q(0.0, 0.0, 2.0, -s2),
            q(0.0, 0.0, 2.0, -s2),
        ],
        vec![
            q(0.0, 3.0, 0.0, 0.0),
            q(-s5, -2.0, 0.0, 0.0),
            q(0.0, 0.0, -2.0, -s5),
            q(0.0, 0.0, 3.0, 0.0),
            q(0.0, 0.0, -s5, -1.0),
            q(0.0, 0.0, -s5, -1.0),
            q(1.0, s5, 0.0, 0.0),
            z,
            q(-1.0, -s5, 0.0, 0.0),
        ],
        vec![
            q(s5, 2.0, 0.0, 0.0),
            q(0.0, -3.0, 0.0, 0.0),
            q(0.0, 0.0, 1.0, -s5),
            q(0.0, 0.0, 1.0, -s5),
            q(0.0, 0.0, 0.0, -3.0),
            q(0.0, 0.0, -s5, 2.0),
            z,
            q(1.0, s5, 0.0, 0.0),
            q(-1.0, -s5, 0.0, 0.0),
        ],
        vec![
            q(0.0, 0.0, 0.0, 3.0),
            q(0.0, 0.0, s5, -2.0),
            q(2.0, -s5, 0.0, 0.0),
            q(-3.0, 0.0, 0.0, 0.0),
            q(-s5, 1.0, 0.0, 0.0),
            q(-s5, 1.0, 0.0, 0.0),
            q(0.0, 0.0, 1.0, -s5),
            z,
            q(0.0, 0.0, -1.0, s5),
        ],
        vec![
            q(0.0, 0.0, -s5, 2.0),
            q(0.0, 0.0, 0.0, -3.0),
            q(-1.0, -s5, 0.0, 0.0),
            q(-1.0, -s5, 0.0, 0.0),
            q(0.0, 3.0, 0.0, 0.0),
            q(-s5, -2.0, 0.0, 0.0),
            z,
            q(0.0, 0.0, 1.0, -s5),
            q(0.0, 0.0, -1.0, s5),
        ],
    ]
}

/// u7, u8, u9: eigenvectors of U for -1.
pub fn k3_minus_one() -> Vec<QVector> {
    let (z, o, i, j) = (Quaternion::ZERO, Quaternion::ONE, Quaternion::I, Quaternion::J);
    vec![
        vec![i, i, z, z, z, z, -o, o, z],
        vec![j, j, -i, -i, o, o, z, z, z],
        vec![i, i, j, j, z, z, -o, z, o],
    ]
}

pub fn lambda_a() -> num_complex::Complex64 {
    num_complex::Complex64::new(-1.0 / 3.0, 2.0 * 2f64.sqrt() / 3.0)
}

pub fn lambda_b() -> num_complex::Complex64 {
    num_complex::Complex64::new(2.0 / 3.0, 5f64.sqrt() / 3.0)
}

/// The bundled graph families: K3 with loops, K4, the path P3, a star with
/// one loop, and the 5-cycle.
pub fn families() -> Vec<(&'static str, Graph)> {
    vec![
        ("K3+loops", build_graph(3, &[(0, 1), (1, 2), (2, 0)], &[0, 1, 2]).unwrap()),
        ("K4", build_graph(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)], &[]).unwrap()),
        ("P3", build_graph(3, &[(0, 1), (1, 2)], &[]).unwrap()),
        ("star+loop", build_graph(4, &[(0, 1), (0, 2), (0, 3)], &[1]).unwrap()),
        ("C5", build_graph(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)], &[]).unwrap()),
    ]
}
