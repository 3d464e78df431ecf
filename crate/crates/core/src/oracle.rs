//! Brute-force reference solver: enumerate every integer `x` in the LP
//! bounding box and solve the remaining LP in `y`.

use num_bigint::BigInt;

use crate::dd::vertices_and_rays;
use crate::error::{Error, Result};
use crate::lattice::{x_extent, BoxPoints, Extent};
use crate::model::{Cut, MilpInstance, Point, Polyhedron};
use crate::rational::{dot, to_rational_vec, RatVector, Rational};
use crate::simplex::{solve_lp, LpResult};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OracleResult {
    Optimal { point: Point, value: Rational },
    Infeasible,
}

impl OracleResult {
    pub fn value(&self) -> Option<&Rational> {
        match self {
            OracleResult::Optimal { value, .. } => Some(value),
            OracleResult::Infeasible => None,
        }
    }
}

/// The continuous part `{y : G y <= b - A x}` for a fixed `x`.
fn fiber(inst: &MilpInstance, x: &RatVector) -> Polyhedron {
    let mut poly = Polyhedron::new(0, inst.q);
    for i in 0..inst.m() {
        poly.push_row(vec![], inst.g[i].clone(), &inst.b[i] - dot(&inst.a[i], x))
            .expect("fiber row");
    }
    poly
}

/// `max{w·y : G y <= b - A x}`; `Ok(None)` when the fiber is empty.
pub fn fiber_max(
    inst: &MilpInstance,
    x: &[BigInt],
    w: &[Rational],
) -> Result<Option<(RatVector, Rational)>> {
    let xr = to_rational_vec(x);
    if inst.q == 0 {
        let feasible = (0..inst.m()).all(|i| dot(&inst.a[i], &xr) <= inst.b[i]);
        return Ok(feasible.then(|| (vec![], Rational::from_integer(BigInt::from(0)))));
    }
    match solve_lp(&fiber(inst, &xr), &[], w) {
        LpResult::Optimal { point, value, .. } => Ok(Some((point.y, value))),
        LpResult::Infeasible => Ok(None),
        LpResult::Unbounded => Err(Error::Unbounded),
    }
}

/// Integer box containing the `x`-part of every feasible point, or `None`
/// when the relaxation is empty.
fn integer_box(inst: &MilpInstance) -> Result<Option<BoxPoints>> {
    let ext = x_extent(&inst.polyhedron());
    if ext == Extent::Empty {
        return Ok(None);
    }
    let (lo, hi) = ext.finite().ok_or(Error::Unbounded)?;
    Ok(Some(BoxPoints::new(lo, hi)))
}

/// Integer `x` with a nonempty fiber, in enumeration order.
pub fn feasible_integer_parts(inst: &MilpInstance) -> Result<Vec<Vec<BigInt>>> {
    let zero = vec![Rational::from_integer(BigInt::from(0)); inst.q];
    let mut out = vec![];
    for x in integer_box(inst)?.into_iter().flatten() {
        if fiber_max(inst, &x, &zero)?.is_some() {
            out.push(x);
        }
    }
    Ok(out)
}

/// Exact optimum by enumeration. Among tied optima the first `x` in
/// enumeration order wins.
pub fn oracle_solve(inst: &MilpInstance) -> Result<OracleResult> {
    let mut best: Option<(Point, Rational)> = None;
    for x in integer_box(inst)?.into_iter().flatten() {
        let Some((y, hy)) = fiber_max(inst, &x, &inst.h)? else {
            continue;
        };
        let xr = to_rational_vec(&x);
        let value = dot(&inst.c, &xr) + hy;
        if best.as_ref().is_none_or(|(_, v)| value > *v) {
            best = Some((Point::new(xr, y), value));
        }
    }
    Ok(match best {
        Some((point, value)) => OracleResult::Optimal { point, value },
        None => OracleResult::Infeasible,
    })
}

/// The continuous part over one feasible integer `x`, as the vertex list of
/// a polytope in `y`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fiber {
    pub x: Vec<BigInt>,
    pub vertices: Vec<RatVector>,
}

impl Fiber {
    /// A point of the fiber maximizing `alpha·x + beta·y`, with its value.
    pub fn argmax(&self, alpha: &[Rational], beta: &[Rational]) -> (Point, Rational) {
        let xr = to_rational_vec(&self.x);
        let base = dot(alpha, &xr);
        let (y, v) = self
            .vertices
            .iter()
            .map(|y| (y, dot(beta, y)))
            .max_by(|a, b| a.1.cmp(&b.1))
            .expect("fiber is nonempty");
        (Point::new(xr, y.clone()), base + v)
    }
}

/// Every feasible integer `x` with the vertices of its fiber.
pub fn fibers(inst: &MilpInstance) -> Result<Vec<Fiber>> {
    let zero = vec![Rational::from_integer(BigInt::from(0)); inst.q];
    let mut out = vec![];
    for x in integer_box(inst)?.into_iter().flatten() {
        if fiber_max(inst, &x, &zero)?.is_none() {
            continue;
        }
        let vertices = if inst.q == 0 {
            vec![vec![]]
        } else {
            let (vertices, directions) =
                vertices_and_rays(&fiber(inst, &to_rational_vec(&x))).ok_or(Error::Unbounded)?;
            if !directions.is_empty() {
                return Err(Error::Unbounded);
            }
            vertices
        };
        out.push(Fiber { x, vertices });
    }
    Ok(out)
}

/// A point of `fibers` violating `cut`, if any.
pub fn violation_among(fibers: &[Fiber], cut: &Cut) -> Option<Point> {
    fibers
        .iter()
        .map(|f| f.argmax(&cut.alpha, &cut.beta))
        .find(|(_, v)| *v > cut.gamma)
        .map(|(pt, _)| pt)
}

/// A feasible mixed-integer point violating `cut`, if any.
pub fn find_violation(inst: &MilpInstance, cut: &Cut) -> Result<Option<Point>> {
    for x in integer_box(inst)?.into_iter().flatten() {
        let xr = to_rational_vec(&x);
        let Some((y, max)) = fiber_max(inst, &x, &cut.beta)? else {
            continue;
        };
        if dot(&cut.alpha, &xr) + max > cut.gamma {
            return Ok(Some(Point::new(xr, y)));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::rational::{frac, int};

    #[test]
    fn builtin_optima() {
        assert_eq!(
            oracle_solve(&fixtures::cks()).unwrap().value(),
            Some(&int(0))
        );
        assert_eq!(
            oracle_solve(&fixtures::owen_mehrotra()).unwrap().value(),
            Some(&int(2))
        );
    }

    #[test]
    fn gap_is_infeasible() {
        let mut inst = MilpInstance::new(1, 0, vec![int(1)], vec![]).unwrap();
        inst.push_row(vec![int(1)], vec![], frac(3, 4)).unwrap();
        inst.push_row(vec![int(-1)], vec![], frac(-1, 4)).unwrap();
        assert_eq!(oracle_solve(&inst).unwrap(), OracleResult::Infeasible);
        assert!(feasible_integer_parts(&inst).unwrap().is_empty());
    }

    #[test]
    fn unbounded_is_an_error() {
        let mut inst = MilpInstance::new(1, 0, vec![int(1)], vec![]).unwrap();
        inst.push_row(vec![int(-1)], vec![], int(0)).unwrap();
        assert!(matches!(oracle_solve(&inst), Err(Error::Unbounded)));
    }

    #[test]
    fn violations_are_found() {
        let inst = fixtures::cks();
        let y_le_0 = Cut::new(vec![int(0), int(0)], vec![int(1)], int(0)).unwrap();
        assert_eq!(find_violation(&inst, &y_le_0).unwrap(), None);
        let y_le_m1 = Cut::new(vec![int(0), int(0)], vec![int(1)], int(-1)).unwrap();
        assert!(find_violation(&inst, &y_le_m1).unwrap().is_some());
        let fibers = fibers(&inst).unwrap();
        assert_eq!(violation_among(&fibers, &y_le_0), None);
        assert!(violation_among(&fibers, &y_le_m1).is_some());
    }

    #[test]
    fn fiber_vertices_give_the_optimum() {
        for inst in [fixtures::cks(), fixtures::owen_mehrotra()] {
            let best = fibers(&inst)
                .unwrap()
                .iter()
                .map(|f| f.argmax(&inst.c, &inst.h).1)
                .max();
            assert_eq!(best.as_ref(), oracle_solve(&inst).unwrap().value());
        }
    }
}
