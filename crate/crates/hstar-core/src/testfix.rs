//! Shared fixtures for unit tests: the small polytopes used throughout.

use crate::exact::int_vec;
use crate::polytope::LatticePolytope;

pub(crate) fn segment(k: i64) -> LatticePolytope {
    LatticePolytope::new(1, vec![int_vec(&[0]), int_vec(&[k])], Some(format!("[0,{k}]"))).unwrap()
}

pub(crate) fn unit_square() -> LatticePolytope {
    LatticePolytope::new(
        2,
        vec![
            int_vec(&[0, 0]),
            int_vec(&[1, 0]),
            int_vec(&[0, 1]),
            int_vec(&[1, 1]),
        ],
        Some("unit square".into()),
    )
    .unwrap()
}

pub(crate) fn unit_cube() -> LatticePolytope {
    let mut verts = Vec::new();
    for x in 0..2i64 {
        for y in 0..2i64 {
            for z in 0..2i64 {
                verts.push(int_vec(&[x, y, z]));
            }
        }
    }
    LatticePolytope::new(3, verts, Some("unit cube".into())).unwrap()
}

pub(crate) fn standard_simplex(d: usize) -> LatticePolytope {
    let mut verts = vec![vec![crate::Int::from(0); d]];
    for i in 0..d {
        let mut v = vec![crate::Int::from(0); d];
        v[i] = crate::Int::from(1);
        verts.push(v);
    }
    LatticePolytope::new(d, verts, Some(format!("simplex d={d}"))).unwrap()
}

pub(crate) fn double_simplex2() -> LatticePolytope {
    LatticePolytope::new(
        2,
        vec![int_vec(&[0, 0]), int_vec(&[2, 0]), int_vec(&[0, 2])],
        Some("2*simplex2".into()),
    )
    .unwrap()
}

pub(crate) fn reeve_simplex(h: i64) -> LatticePolytope {
    LatticePolytope::new(
        3,
        vec![
            int_vec(&[0, 0, 0]),
            int_vec(&[1, 0, 0]),
            int_vec(&[0, 1, 0]),
            int_vec(&[1, 1, h]),
        ],
        Some(format!("reeve h={h}")),
    )
    .unwrap()
}
