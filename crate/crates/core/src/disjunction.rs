//! k-disjunctions over the integer space, validity checks, cut
//! certification and the objective-direction disjunctive cut.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::lattice::{x_extent, BoxPoints, Extent};
use crate::model::{Constraint, Cut, Polyhedron};
use crate::projection::{cone_extreme_rays, project_x, Ray};
use crate::rational::{
    ceil_rat, floor_rat, fmt_int_vec, primitive_scale, to_rational_vec, RatMatrix, RatVector,
    Rational,
};
use crate::simplex::{solve_lp, LpResult};

/// Terms `d[i]·x <= delta[i]`; valid when every integer `x` satisfies at
/// least one of them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Disjunction {
    p: usize,
    d: Vec<Vec<BigInt>>,
    delta: Vec<BigInt>,
}

impl Disjunction {
    /// Builds a disjunction; a single term is duplicated so that `k >= 2`.
    pub fn new(p: usize, d: Vec<Vec<BigInt>>, delta: Vec<BigInt>) -> Result<Self> {
        if d.len() != delta.len() {
            return Err(Error::Dimension(format!(
                "{} term rows but {} right-hand sides",
                d.len(),
                delta.len()
            )));
        }
        if d.is_empty() {
            return Err(Error::NoDisjunction("no terms".into()));
        }
        if let Some(row) = d.iter().find(|row| row.len() != p) {
            return Err(Error::Dimension(format!(
                "term has {} entries, expected {p}",
                row.len()
            )));
        }
        let (mut d, mut delta) = (d, delta);
        if d.len() == 1 {
            d.push(d[0].clone());
            delta.push(delta[0].clone());
        }
        Ok(Disjunction { p, d, delta })
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn k(&self) -> usize {
        self.d.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[BigInt], &BigInt)> {
        self.d.iter().map(Vec::as_slice).zip(&self.delta)
    }

    /// Whether the integer point satisfies some term.
    pub fn covers(&self, x: &[BigInt]) -> bool {
        self.terms()
            .any(|(d, delta)| d.iter().zip(x).map(|(a, b)| a * b).sum::<BigInt>() <= *delta)
    }

    /// `{x : d[i]·x >= delta[i] + 1 for all i}`, whose integer points are
    /// exactly the points no term covers.
    fn body(&self) -> Polyhedron {
        let mut poly = Polyhedron::new(self.p, 0);
        for (d, delta) in self.terms() {
            let row: RatVector = to_rational_vec(d).into_iter().map(|v| -v).collect();
            poly.rows.push(Constraint::new(
                row,
                vec![],
                Rational::from_integer(-(delta + BigInt::one())),
            ));
        }
        poly
    }
}

impl fmt::Display for Disjunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "dis k {} p {}", self.k(), self.p)?;
        for (d, delta) in self.terms() {
            if d.is_empty() {
                writeln!(f, "<= {delta}")?;
            } else {
                writeln!(f, "{} <= {delta}", fmt_int_vec(d))?;
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Validity {
    Valid,
    /// An integer point covered by no term.
    Invalid(Vec<BigInt>),
    /// The uncovered region is unbounded and no witness lies within the
    /// fallback box.
    UnboundedBody,
}

/// Decides validity by enumerating the integer points of the LP bounding
/// box of the uncovered region. When that region is unbounded, missing
/// sides are replaced by `±bound` and a clean sweep is inconclusive.
pub fn is_valid_disjunction(dis: &Disjunction, bound: u64) -> Validity {
    let body = dis.body();
    let sides = match x_extent(&body) {
        Extent::Empty => return Validity::Valid,
        Extent::Bounds(sides) => sides,
    };
    let unbounded = sides.iter().any(|(lo, hi)| lo.is_none() || hi.is_none());
    let b = BigInt::from(bound);
    let (lo, hi): (Vec<BigInt>, Vec<BigInt>) = sides
        .into_iter()
        .map(|(lo, hi)| match (lo, hi) {
            (Some(lo), Some(hi)) if !unbounded => (lo, hi),
            (lo, hi) => (
                lo.map_or(-&b, |l| l.max(-&b)),
                hi.map_or(b.clone(), |h| h.min(b.clone())),
            ),
        })
        .unzip();
    match BoxPoints::new(lo, hi).find(|x| !dis.covers(x)) {
        Some(w) => Validity::Invalid(w),
        None if unbounded => Validity::UnboundedBody,
        None => Validity::Valid,
    }
}

/// `max{objective : (x, y) in poly}`; `None` when unbounded, `Some(None)`
/// when infeasible.
fn lp_max(poly: &Polyhedron, alpha: &[Rational], beta: &[Rational]) -> Option<Option<Rational>> {
    match solve_lp(poly, alpha, beta) {
        LpResult::Optimal { value, .. } => Some(Some(value)),
        LpResult::Infeasible => Some(None),
        LpResult::Unbounded => None,
    }
}

/// True iff on every term `d[i]·x <= delta[i]` the cut holds for all of
/// `poly` (an infeasible term is vacuous).
pub fn certify_cut(poly: &Polyhedron, cut: &Cut, dis: &Disjunction) -> bool {
    assert_eq!(dis.p(), poly.p, "disjunction dimension");
    dis.terms().all(|(d, delta)| {
        let mut term = poly.clone();
        term.rows.push(Constraint::new(
            to_rational_vec(d),
            vec![Rational::zero(); poly.q],
            Rational::from_integer(delta.clone()),
        ));
        match lp_max(&term, &cut.alpha, &cut.beta) {
            Some(Some(v)) => v <= cut.gamma,
            Some(None) => true,
            None => false,
        }
    })
}

/// Disjunction certifying `cut` for `poly`: the projection of the part of
/// `poly` the cut removes, with each row rounded outwards.
pub fn disjunction_from_cut(poly: &Polyhedron, cut: &Cut) -> Result<Disjunction> {
    match lp_max(poly, &cut.alpha, &cut.beta) {
        Some(Some(v)) if v <= cut.gamma => {
            return Err(Error::NoDisjunction(
                "cut is not violated by the polyhedron".into(),
            ))
        }
        Some(None) => return Err(Error::NoDisjunction("polyhedron is empty".into())),
        _ => {}
    }
    let mut removed = poly.clone();
    removed.rows.push(Constraint {
        a: cut.alpha.iter().map(|v| -v).collect(),
        g: cut.beta.iter().map(|v| -v).collect(),
        rhs: -&cut.gamma,
        strict: true,
        added: false,
    });
    let mut d = vec![];
    let mut delta = vec![];
    for row in project_x(&removed).rows {
        let Some(s) = primitive_scale(&row.d) else {
            // 0 <= rhs: either trivially true or the region is empty.
            continue;
        };
        let rhs = &row.rhs * &s;
        // Integer x outside the region violates the row: d·x >= rounded.
        let rounded = if row.strict {
            ceil_rat(&rhs)
        } else {
            floor_rat(&rhs) + BigInt::one()
        };
        d.push(row.d.iter().map(|v| -(v * &s).to_integer()).collect());
        delta.push(-rounded);
    }
    if d.is_empty() {
        return Err(Error::NoDisjunction("projection has no rows".into()));
    }
    let mut pairs: Vec<(Vec<BigInt>, BigInt)> = vec![];
    for pair in d.into_iter().zip(delta) {
        if !pairs.contains(&pair) {
            pairs.push(pair);
        }
    }
    let (d, delta) = pairs.into_iter().unzip();
    Disjunction::new(poly.p, d, delta)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum RoundingMode {
    /// `delta = ceil(rhs)`: valid whenever the bound is valid for the
    /// mixed-integer hull but not for the relaxation.
    #[default]
    Weak,
    /// `delta = floor(rhs) + 1`: also separates a unique apex optimum.
    Strict,
}

/// Contribution of one extreme ray to the objective cut.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RayTerm {
    pub ray: Ray,
    /// Integer coefficients of the projected row, after scaling to primitive form.
    pub d: Vec<BigInt>,
    /// Rounded right-hand side, in the same scale as `d`.
    pub delta: BigInt,
    /// Objective bound implied on the term; `None` when the ray does not
    /// use the objective row.
    pub gamma: Option<Rational>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ObjectiveCutReport {
    pub gamma_hat: Rational,
    pub per_ray: Vec<RayTerm>,
    pub disjunction: Disjunction,
}

impl ObjectiveCutReport {
    /// The values `γʳ` entering the maximum, in ray order.
    pub fn ray_bounds(&self) -> Vec<&Rational> {
        self.per_ray
            .iter()
            .filter_map(|t| t.gamma.as_ref())
            .collect()
    }
}

/// Disjunctive cut `c·x + h·y <= gamma_hat` along the objective, derived
/// from the projection of `poly ∩ {c·x + h·y >= gamma_star}`.
pub fn objective_cut(
    poly: &Polyhedron,
    c: &[Rational],
    h: &[Rational],
    gamma_star: &Rational,
    mode: RoundingMode,
) -> Result<ObjectiveCutReport> {
    if c.len() != poly.p || h.len() != poly.q {
        return Err(Error::Dimension(
            "objective does not match the polyhedron".into(),
        ));
    }
    let m = poly.m();
    let mut g: RatMatrix = poly.rows.iter().map(|r| r.g.clone()).collect();
    g.push(h.iter().map(|v| -v).collect());
    let rays = if poly.q == 0 {
        unit_rays(m + 1)
    } else {
        cone_extreme_rays(&g)
    };
    let mut per_ray = vec![];
    for ray in rays {
        let v = ray.to_rational();
        let w = &v[m];
        let mut d = vec![Rational::zero(); poly.p];
        let mut vb = Rational::zero();
        for (row, vi) in poly.rows.iter().zip(&v).filter(|(_, vi)| !vi.is_zero()) {
            for (dst, a) in d.iter_mut().zip(&row.a) {
                *dst += vi * a;
            }
            vb += vi * &row.rhs;
        }
        for (dst, ci) in d.iter_mut().zip(c) {
            *dst -= w * ci;
        }
        // Scale so d is primitive; integral d keeps the rounding valid.
        let s = primitive_scale(&d).unwrap_or_else(Rational::one);
        let d: Vec<BigInt> = d.iter().map(|x| (x * &s).to_integer()).collect();
        let (vb, w) = (vb * &s, w * &s);
        let rhs = &vb - &w * gamma_star;
        let delta = match mode {
            RoundingMode::Weak => ceil_rat(&rhs),
            RoundingMode::Strict => floor_rat(&rhs) + BigInt::one(),
        };
        let gamma = w
            .is_positive()
            .then(|| (vb - Rational::from_integer(delta.clone())) / &w);
        per_ray.push(RayTerm {
            ray,
            d,
            delta,
            gamma,
        });
    }
    let gamma_hat = per_ray
        .iter()
        .filter_map(|t| t.gamma.clone())
        .max()
        .ok_or(Error::ObjectiveCutUnavailable)?;
    // The terms d·x >= delta, in `<=` orientation.
    let disjunction = Disjunction::new(
        poly.p,
        per_ray
            .iter()
            .map(|t| t.d.iter().map(|v| -v).collect())
            .collect(),
        per_ray.iter().map(|t| -&t.delta).collect(),
    )?;
    Ok(ObjectiveCutReport {
        gamma_hat,
        per_ray,
        disjunction,
    })
}

fn unit_rays(len: usize) -> Vec<Ray> {
    (0..len)
        .map(|i| {
            let v: Vec<i64> = (0..len).map(|j| i64::from(i == j)).collect();
            Ray::from_ints(&v)
        })
        .collect()
}

/// The cut `c·x + h·y <= bound` as a [`Cut`].
pub fn objective_bound_cut(c: &[Rational], h: &[Rational], bound: Rational) -> Result<Cut> {
    Cut::new(c.to_vec(), h.to_vec(), bound)
}

/// The 4-disjunction `x1+x2 >= 2 ∨ x1-x2 >= 1 ∨ -x1+x2 >= 1 ∨ -x1-x2 >= 0`
/// certifying `y <= 0` on the cone with apex `(1/2, 1/2, 1/2)`.
pub fn cone4_disjunction() -> Disjunction {
    let big = |v: &[i64]| -> Vec<BigInt> { v.iter().map(|&x| BigInt::from(x)).collect() };
    Disjunction::new(
        2,
        vec![big(&[-1, -1]), big(&[-1, 1]), big(&[1, -1]), big(&[1, 1])],
        big(&[-2, -1, -1, 0]),
    )
    .expect("fixture disjunction")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::rational::{frac, int};

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn dis(p: usize, rows: &[(&[i64], i64)]) -> Disjunction {
        Disjunction::new(
            p,
            rows.iter().map(|(d, _)| big(d)).collect(),
            rows.iter().map(|(_, r)| BigInt::from(*r)).collect(),
        )
        .unwrap()
    }

    fn y_le(p: usize, bound: i64) -> Cut {
        Cut::new(vec![int(0); p], vec![int(1)], int(bound)).unwrap()
    }

    fn cks_with_two_gmi_cuts() -> Polyhedron {
        fixtures::cks()
            .polyhedron()
            .add_cut(&Cut::new(vec![int(-1), int(0)], vec![int(2)], int(0)).unwrap())
            .add_cut(&Cut::new(vec![int(0), int(-1)], vec![int(2)], int(0)).unwrap())
    }

    #[test]
    fn split_is_valid() {
        assert_eq!(
            is_valid_disjunction(&dis(1, &[(&[1], 0), (&[-1], -1)]), 10),
            Validity::Valid
        );
    }

    #[test]
    fn gap_has_witness() {
        assert_eq!(
            is_valid_disjunction(&dis(1, &[(&[2], 0), (&[-2], -3)]), 10),
            Validity::Invalid(big(&[1]))
        );
    }

    #[test]
    fn unbounded_body_is_inconclusive() {
        // x1 <= 0 leaves x1 >= 1 uncovered and unbounded, but we find a witness.
        assert_eq!(
            is_valid_disjunction(&dis(1, &[(&[1], 0), (&[1], 0)]), 3),
            Validity::Invalid(big(&[1]))
        );
        // x1 - x2 <= 0 or x2 - x1 <= -1: the body x1 - x2 in [1, 0] is empty.
        assert_eq!(
            is_valid_disjunction(&dis(2, &[(&[1, -1], 0), (&[-1, 1], -1)]), 3),
            Validity::Valid
        );
        // 2x1 - 2x2 <= 0 or -2x1 + 2x2 <= -2 misses nothing; its body is the line x1 - x2 = 1/2.
        assert_eq!(
            is_valid_disjunction(&dis(2, &[(&[2, -2], 0), (&[-2, 2], -2)]), 3),
            Validity::UnboundedBody
        );
    }

    #[test]
    fn single_term_is_padded() {
        let d = dis(1, &[(&[1], 0)]);
        assert_eq!(d.k(), 2);
    }

    #[test]
    fn cone4_certificate() {
        let d = cone4_disjunction();
        assert_eq!(is_valid_disjunction(&d, 10), Validity::Valid);
        let cone = fixtures::cone4().polyhedron();
        assert!(certify_cut(&cone, &y_le(2, 0), &d));
        assert!(!certify_cut(&cone, &y_le(2, -1), &d));
    }

    #[test]
    fn cks_disjunction_from_cut() {
        let d = disjunction_from_cut(&fixtures::cks_core(), &y_le(2, 0)).unwrap();
        assert_eq!(d, dis(2, &[(&[1, 0], 0), (&[0, 1], 0), (&[-1, -1], -2)]));
        assert!(certify_cut(&fixtures::cks_core(), &y_le(2, 0), &d));
        assert_eq!(is_valid_disjunction(&d, 10), Validity::Valid);
    }

    #[test]
    fn cks_with_gmi_cuts_certifies_y_le_0() {
        let poly = cks_with_two_gmi_cuts();
        let d = disjunction_from_cut(&poly, &y_le(2, 0)).unwrap();
        assert!(certify_cut(&poly, &y_le(2, 0), &d));
        assert_eq!(is_valid_disjunction(&d, 10), Validity::Valid);
    }

    #[test]
    fn pure_integer_objective_row_is_rounded() {
        let inst = fixtures::owen_mehrotra();
        let poly = inst.polyhedron();
        let cut = Cut::new(vec![int(1), int(1)], vec![], int(2)).unwrap();
        let d = disjunction_from_cut(&poly, &cut).unwrap();
        // -(x1 + x2) < -2 rounds to x1 + x2 <= 2.
        assert!(d
            .terms()
            .any(|(row, rhs)| row == big(&[1, 1]).as_slice() && *rhs == BigInt::from(2)));
        assert!(certify_cut(&poly, &cut, &d));
    }

    #[test]
    fn unviolated_cut_is_rejected() {
        let poly = fixtures::owen_mehrotra().polyhedron();
        let cut = Cut::new(vec![int(1), int(1)], vec![], int(100)).unwrap();
        assert!(matches!(
            disjunction_from_cut(&poly, &cut),
            Err(Error::NoDisjunction(_))
        ));
    }

    #[test]
    fn cks_objective_cut() {
        let inst = fixtures::cks();
        for poly in [inst.polyhedron(), cks_with_two_gmi_cuts()] {
            let report =
                objective_cut(&poly, &inst.c, &inst.h, &frac(2, 5), RoundingMode::Weak).unwrap();
            assert_eq!(report.gamma_hat, int(0));
            assert!(report.ray_bounds().iter().all(|g| **g == int(0)));
            assert_eq!(
                is_valid_disjunction(&report.disjunction, 10),
                Validity::Valid
            );
        }
        let report = objective_cut(
            &inst.polyhedron(),
            &inst.c,
            &inst.h,
            &frac(2, 5),
            RoundingMode::Weak,
        )
        .unwrap();
        assert_eq!(report.ray_bounds().len(), 3);
    }

    #[test]
    fn owen_mehrotra_objective_cut_is_chvatal_rounding() {
        let inst = fixtures::owen_mehrotra();
        let report = objective_cut(
            &inst.polyhedron(),
            &inst.c,
            &inst.h,
            &frac(5, 2),
            RoundingMode::Weak,
        )
        .unwrap();
        assert_eq!(report.gamma_hat, int(2));
        let strict = objective_cut(
            &inst.polyhedron(),
            &inst.c,
            &inst.h,
            &int(2),
            RoundingMode::Strict,
        )
        .unwrap();
        assert_eq!(strict.gamma_hat, int(1));
        let weak = objective_cut(
            &inst.polyhedron(),
            &inst.c,
            &inst.h,
            &int(2),
            RoundingMode::Weak,
        )
        .unwrap();
        assert_eq!(weak.gamma_hat, int(2));
    }
}
