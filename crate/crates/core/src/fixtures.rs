//! Built-in instances and fixture generators.

use crate::error::{Error, Result};
use crate::model::{MilpInstance, Polyhedron};
use crate::rational::{int, RatVector};

pub const BUILTIN_NAMES: [&str; 3] = ["cks", "cone4", "owen-mehrotra"];

fn ints(v: &[i64]) -> RatVector {
    v.iter().map(|&n| int(n)).collect()
}

fn instance(
    p: usize,
    q: usize,
    c: &[i64],
    h: &[i64],
    rows: &[(&[i64], &[i64], i64)],
) -> MilpInstance {
    let mut inst = MilpInstance::new(p, q, ints(c), ints(h)).expect("fixture objective");
    for (a, g, b) in rows {
        inst.push_row(ints(a), ints(g), int(*b))
            .expect("fixture row");
    }
    inst
}

/// The three-row Cook–Kannan–Schrijver system `-x1 + y <= 0`,
/// `-x2 + y <= 0`, `x1 + x2 + y <= 2`.
///
/// Unbounded below in `y`; [`cks`] adds a bound for the solver.
pub fn cks_core() -> Polyhedron {
    cks_core_instance().polyhedron()
}

fn cks_core_instance() -> MilpInstance {
    instance(
        2,
        1,
        &[0, 0],
        &[1],
        &[(&[-1, 0], &[1], 0), (&[0, -1], &[1], 0), (&[1, 1], &[1], 2)],
    )
}

/// `max y` over the CKS system plus `y >= -1`, which makes the relaxation a
/// polytope without touching the vertices the cutting-plane run visits.
pub fn cks() -> MilpInstance {
    let mut inst = cks_core_instance();
    inst.push_row(ints(&[0, 0]), ints(&[-1]), int(1))
        .expect("bound row");
    inst
}

/// Cone with apex `(1/2, 1/2, 1/2)`, `max y`.
pub fn cone4() -> MilpInstance {
    instance(
        2,
        1,
        &[0, 0],
        &[1],
        &[
            (&[-1, 0], &[1], 0),
            (&[0, -1], &[1], 0),
            (&[1, 0], &[1], 1),
            (&[0, 1], &[1], 1),
        ],
    )
}

/// Pure integer program on which plain Gomory mixed-integer cuts stall.
pub fn owen_mehrotra() -> MilpInstance {
    instance(
        2,
        0,
        &[1, 1],
        &[],
        &[
            (&[8, 12], &[], 27),
            (&[8, 3], &[], 18),
            (&[-1, 0], &[], 0),
            (&[0, -1], &[], 0),
        ],
    )
}

pub fn builtin(name: &str) -> Result<MilpInstance> {
    match name {
        "cks" => Ok(cks()),
        "cone4" => Ok(cone4()),
        "owen-mehrotra" => Ok(owen_mehrotra()),
        _ => Err(Error::UnknownBuiltin(name.to_string())),
    }
}

/// Integer polytope in `R^{n+1}` with `2^n + 2` facets, no interior lattice
/// point and a relative-interior lattice point on every facet:
///
/// `a·x - π(a)·x_{n+1} <= 1` for `a ∈ {±1}^n`, `π(a) = #{i : a_i = 1} - 1`,
/// and `0 <= x_{n+1} <= 2`.
pub fn gen_expon(n: usize) -> Polyhedron {
    assert!(n >= 1, "gen_expon needs n >= 1");
    let mut poly = Polyhedron::new(n + 1, 0);
    for mask in 0..(1usize << n) {
        // Bit i set means a_i = +1; iterate from a = (+1, .., +1) downwards.
        let mask = (1usize << n) - 1 - mask;
        let a: Vec<i64> = (0..n)
            .map(|i| if mask >> (n - 1 - i) & 1 == 1 { 1 } else { -1 })
            .collect();
        let pi = a.iter().filter(|&&v| v == 1).count() as i64 - 1;
        let mut row = ints(&a);
        row.push(int(-pi));
        poly.push_row(row, vec![], int(1)).expect("expon row");
    }
    let mut lower = vec![int(0); n + 1];
    lower[n] = int(-1);
    poly.push_row(lower, vec![], int(0)).expect("expon row");
    let mut upper = vec![int(0); n + 1];
    upper[n] = int(1);
    poly.push_row(upper, vec![], int(2)).expect("expon row");
    poly
}

/// [`gen_expon`] as an instance with a zero objective.
pub fn expon_instance(n: usize) -> MilpInstance {
    let poly = gen_expon(n);
    let mut inst = MilpInstance::new(n + 1, 0, vec![int(0); n + 1], vec![]).expect("objective");
    for row in poly.rows {
        inst.push_row(row.a, row.g, row.rhs).expect("row");
    }
    inst
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtins_resolve() {
        for name in BUILTIN_NAMES {
            assert!(builtin(name).is_ok());
        }
        assert!(matches!(builtin("nope"), Err(Error::UnknownBuiltin(_))));
        assert_eq!(cks().m(), 4);
        assert_eq!(cks_core().m(), 3);
    }

    #[test]
    fn expon_row_counts() {
        assert_eq!(gen_expon(2).m(), 6);
        assert_eq!(gen_expon(3).m(), 10);
        assert_eq!(gen_expon(4).m(), 18);
        // a = (1, 1): x1 + x2 - x3 <= 1.
        assert_eq!(gen_expon(2).rows[0].a, ints(&[1, 1, -1]));
        // a = (-1, -1): -x1 - x2 + x3 <= 1.
        assert_eq!(gen_expon(2).rows[3].a, ints(&[-1, -1, 1]));
    }
}
