//! Object-level Auslander-Reiten mesh data: for each non-free indecomposable
//! the AR triangle (end term, translate, stable middle term).
//!
//! The mesh data is hardcoded from the A_n quiver shape and is trusted only
//! because the mesh-relation invariant below is checked against the
//! independent oracle table (see `homtab` and the verification suites).

use serde::Serialize;

use crate::catalog::{IndecId, SingularitySpec, StableModule};
use crate::error::{Error, Result};

/// AR mesh datum for one indecomposable: the triangle
/// `translate -> middle -> end -> translate[1]` with free summands erased.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ARTriangle {
    pub end: IndecId,
    pub translate: IndecId,
    pub middle: StableModule,
}

/// The AR triangle ending in `x`.
pub fn ar_triangle(spec: SingularitySpec, x: IndecId) -> Result<ARTriangle> {
    let r = spec.knoerrer_reduce();
    if !r.contains(x) {
        return Err(Error::UnknownId { spec: r, id: x });
    }
    let n = r.n;
    let translate = r.tau(x)?;
    let mut middle = StableModule::zero();
    match x {
        IndecId::Ideal(i) => {
            let half = n / 2; // largest ideal index, both parities
            if i > 1 {
                middle.add(IndecId::Ideal(i - 1), 1);
            }
            if n % 2 == 0 {
                // I_{n/2 + 1} is identified with I_{n/2}; I_0 = R is free.
                middle.add(IndecId::Ideal((i + 1).min(half)), 1);
            } else if i + 1 <= half {
                middle.add(IndecId::Ideal(i + 1), 1);
            } else {
                // top ideal vertex of the odd quiver meets both branches
                middle.add(IndecId::BranchPlus, 1);
                middle.add(IndecId::BranchMinus, 1);
            }
        }
        IndecId::BranchPlus | IndecId::BranchMinus => {
            if n > 1 {
                middle.add(IndecId::Ideal(n / 2), 1);
            }
            // n = 1: the middle term is free, hence stably zero.
        }
        IndecId::Jordan(i) => {
            if i > 1 {
                middle.add(IndecId::Jordan(i - 1), 1);
            }
            if i < n {
                middle.add(IndecId::Jordan(i + 1), 1);
            }
        }
    }
    let triangle = ARTriangle { end: x, translate, middle };
    debug_assert!(
        triangle.middle.iter().all(|(_, &m)| m <= 2),
        "mesh multiplicities above 2 are impossible for type A_n"
    );
    Ok(triangle)
}

/// All AR triangles of a reduced spec, in canonical end order.
pub fn ar_triangles(spec: SingularitySpec) -> Vec<ARTriangle> {
    spec.knoerrer_reduce()
        .classify()
        .into_iter()
        .map(|x| ar_triangle(spec, x).expect("classified id"))
        .collect()
}

/// Per-triangle report for the shift-invariance condition on the relation
/// vector `[X] + [Z] - [Y]` in the free group on indecomposables.
#[derive(Debug, Clone, Serialize)]
pub struct StarReport {
    pub end: IndecId,
    pub holds: bool,
}

/// Relation vector of a triangle as coordinates over `classify(spec)`.
pub fn relation_vector(spec: SingularitySpec, t: &ARTriangle) -> Vec<i64> {
    let labels = spec.knoerrer_reduce().classify();
    let mut v = vec![0i64; labels.len()];
    let pos = |id: IndecId| labels.iter().position(|&l| l == id).expect("classified id");
    v[pos(t.end)] += 1;
    v[pos(t.translate)] += 1;
    for (&w, &m) in t.middle.iter() {
        v[pos(w)] -= m as i64;
    }
    v
}

/// Evaluates the shift-invariance of every AR relation vector.
pub fn star_condition(spec: SingularitySpec) -> (bool, Vec<StarReport>) {
    let r = spec.knoerrer_reduce();
    let mut reports = Vec::new();
    let mut all = true;
    for t in ar_triangles(r) {
        let shifted = ARTriangle {
            end: r.shift(t.end, -1).expect("classified id"),
            translate: r.shift(t.translate, -1).expect("classified id"),
            middle: r.shift_module(&t.middle, -1).expect("classified id"),
        };
        let holds = relation_vector(r, &t) == relation_vector(r, &shifted);
        all &= holds;
        reports.push(StarReport { end: t.end, holds });
    }
    (all, reports)
}

/// Defect of the mesh relation at a pair (u, x) against a hom-dimension
/// oracle: `[u,X] + [u,tau X] - [u,middle] - mu(u=X) - mu(u=X[-1])`.
/// Zero everywhere iff the mesh data and the table are consistent.
pub fn mesh_defect(
    spec: SingularitySpec,
    dim: &dyn Fn(IndecId, IndecId) -> u64,
    u: IndecId,
    x: IndecId,
) -> i64 {
    let r = spec.knoerrer_reduce();
    let t = ar_triangle(r, x).expect("classified id");
    let mut lhs = dim(u, t.end) as i64 + dim(u, t.translate) as i64;
    for (&w, &m) in t.middle.iter() {
        lhs -= m as i64 * dim(u, w) as i64;
    }
    let mut rhs = 0i64;
    if u == x {
        rhs += 1;
    }
    if u == r.shift(x, -1).expect("classified id") {
        rhs += 1;
    }
    lhs - rhs
}

/// Checks the mesh relation over every pair; returns the first violation.
pub fn check_mesh_relation(
    spec: SingularitySpec,
    dim: &dyn Fn(IndecId, IndecId) -> u64,
) -> std::result::Result<(), String> {
    let r = spec.knoerrer_reduce();
    let ids = r.classify();
    for &u in &ids {
        for &x in &ids {
            let defect = mesh_defect(r, dim, u, x);
            if defect != 0 {
                return Err(format!(
                    "mesh relation fails at (U={u}, X={x}) over {r}: defect {defect}"
                ));
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(n: u32, d: u32) -> SingularitySpec {
        SingularitySpec::new(n, d).unwrap()
    }

    fn module(ids: &[IndecId]) -> StableModule {
        let mut m = StableModule::zero();
        for &id in ids {
            m.add(id, 1);
        }
        m
    }

    #[test]
    fn even_n_top_vertex_folds() {
        let t = ar_triangle(spec(4, 1), IndecId::Ideal(2)).unwrap();
        assert_eq!(t.translate, IndecId::Ideal(2));
        assert_eq!(t.middle, module(&[IndecId::Ideal(1), IndecId::Ideal(2)]));
    }

    #[test]
    fn odd_n_branch_vertices() {
        let t = ar_triangle(spec(3, 1), IndecId::BranchPlus).unwrap();
        assert_eq!(t.translate, IndecId::BranchMinus);
        assert_eq!(t.middle, module(&[IndecId::Ideal(1)]));

        let t = ar_triangle(spec(3, 1), IndecId::Ideal(1)).unwrap();
        assert_eq!(t.translate, IndecId::Ideal(1));
        assert_eq!(t.middle, module(&[IndecId::BranchPlus, IndecId::BranchMinus]));

        let t = ar_triangle(spec(1, 1), IndecId::BranchPlus).unwrap();
        assert_eq!(t.translate, IndecId::BranchMinus);
        assert!(t.middle.is_zero());
    }

    #[test]
    fn dim_zero_mesh() {
        let t = ar_triangle(spec(3, 0), IndecId::Jordan(1)).unwrap();
        assert_eq!(t.translate, IndecId::Jordan(1));
        assert_eq!(t.middle, module(&[IndecId::Jordan(2)]));
        let t = ar_triangle(spec(3, 0), IndecId::Jordan(3)).unwrap();
        assert_eq!(t.middle, module(&[IndecId::Jordan(2)]));
    }

    #[test]
    fn translate_is_involutive_or_identity() {
        for n in 1..=9 {
            for d in [0, 1] {
                let s = spec(n, d);
                for t in ar_triangles(s) {
                    assert_eq!(s.tau(t.translate).unwrap(), t.end);
                }
            }
        }
    }

    #[test]
    fn star_condition_examples() {
        assert!(star_condition(spec(5, 1)).0);
        assert!(star_condition(spec(4, 1)).0);
        let (holds, reports) = star_condition(spec(3, 0));
        assert!(!holds);
        // the middle vertex M_2 is shift-fixed, the outer two fail
        let failing: Vec<_> = reports.iter().filter(|r| !r.holds).map(|r| r.end).collect();
        assert_eq!(failing, vec![IndecId::Jordan(1), IndecId::Jordan(3)]);
    }
}
