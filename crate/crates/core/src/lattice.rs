//! Integer points of boxes derived from LP bounds.

use num_bigint::BigInt;
use num_traits::One;

use crate::model::Polyhedron;
use crate::rational::{ceil_rat, floor_rat, int, Rational};
use crate::simplex::{solve_lp, LpResult};

/// Integer range of each `x` coordinate over a polyhedron; `None` marks an
/// unbounded side.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Extent {
    Empty,
    Bounds(Vec<(Option<BigInt>, Option<BigInt>)>),
}

impl Extent {
    /// Finite box, if every side is bounded.
    pub fn finite(&self) -> Option<(Vec<BigInt>, Vec<BigInt>)> {
        match self {
            Extent::Empty => None,
            Extent::Bounds(b) => b
                .iter()
                .map(|(lo, hi)| Some((lo.clone()?, hi.clone()?)))
                .collect::<Option<Vec<_>>>()
                .map(|pairs| pairs.into_iter().unzip()),
        }
    }
}

fn unit(len: usize, i: usize, sign: i64) -> Vec<Rational> {
    (0..len)
        .map(|j| int(if i == j { sign } else { 0 }))
        .collect()
}

/// LP maximum of `sign * x_i`, or `None` when unbounded. Panics on an empty
/// polyhedron; callers check feasibility first.
fn extreme(poly: &Polyhedron, i: usize, sign: i64) -> Option<Rational> {
    let zeros = vec![int(0); poly.q];
    match solve_lp(poly, &unit(poly.p, i, sign), &zeros) {
        LpResult::Optimal { value, .. } => Some(value),
        LpResult::Unbounded => None,
        LpResult::Infeasible => unreachable!("feasibility checked by caller"),
    }
}

/// Integer bounding box of the `x`-part of `poly`.
pub fn x_extent(poly: &Polyhedron) -> Extent {
    let zeros_x = vec![int(0); poly.p];
    let zeros_y = vec![int(0); poly.q];
    if matches!(solve_lp(poly, &zeros_x, &zeros_y), LpResult::Infeasible) {
        return Extent::Empty;
    }
    Extent::Bounds(
        (0..poly.p)
            .map(|i| {
                let hi = extreme(poly, i, 1).map(|v| floor_rat(&v));
                let lo = extreme(poly, i, -1).map(|v| ceil_rat(&-v));
                (lo, hi)
            })
            .collect(),
    )
}

/// All integer vectors in `[lo, hi]`, last coordinate varying fastest.
#[derive(Clone, Debug)]
pub struct BoxPoints {
    lo: Vec<BigInt>,
    hi: Vec<BigInt>,
    next: Option<Vec<BigInt>>,
}

impl BoxPoints {
    pub fn new(lo: Vec<BigInt>, hi: Vec<BigInt>) -> Self {
        assert_eq!(lo.len(), hi.len());
        let next = lo.iter().zip(&hi).all(|(l, h)| l <= h).then(|| lo.clone());
        BoxPoints { lo, hi, next }
    }

    /// Number of points in the box.
    pub fn count_points(&self) -> BigInt {
        self.lo
            .iter()
            .zip(&self.hi)
            .map(|(l, h)| if h < l { BigInt::from(0) } else { h - l + 1 })
            .product()
    }
}

impl Iterator for BoxPoints {
    type Item = Vec<BigInt>;

    fn next(&mut self) -> Option<Vec<BigInt>> {
        let current = self.next.take()?;
        let mut succ = current.clone();
        for i in (0..succ.len()).rev() {
            if succ[i] < self.hi[i] {
                succ[i] += BigInt::one();
                self.next = Some(succ);
                return Some(current);
            }
            succ[i] = self.lo[i].clone();
        }
        Some(current)
    }
}
