//! Projection of `{(x, y) : A x + G y <= b}` onto `x`-space.
//!
//! [`project_x`] uses the extreme rays of `{v >= 0 : Gᵀ v = 0}`: every ray
//! contributes the row `(vA) x <= v b`. [`fm_project`] eliminates `y` by
//! Fourier–Motzkin and serves as an independent cross-check.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::dd::DdCone;
use crate::model::{Constraint, Polyhedron};
use crate::rational::{
    dot, is_zero_vector, primitive_integer_vector, to_rational_vec, RatMatrix, RatVector, Rational,
};
use crate::simplex::{solve_lp, LpResult};

/// Primitive nonnegative integer generator of a cone.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Ray(Vec<BigInt>);

impl Ray {
    /// Scales `v` (nonzero, nonnegative) to its primitive integer representative.
    pub fn from_rational(v: &[Rational]) -> Self {
        debug_assert!(v.iter().all(|x| !x.is_negative()));
        Ray(primitive_integer_vector(v).expect("ray is nonzero"))
    }

    pub fn from_ints(v: &[i64]) -> Self {
        Ray(v.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.0
    }

    pub fn to_rational(&self) -> RatVector {
        to_rational_vec(&self.0)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for Ray {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Row `d·x <= rhs` (or `<` when `strict`) of a projected system, with the
/// multipliers of the original rows that produced it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjectedRow {
    pub d: RatVector,
    pub rhs: Rational,
    pub from_ray: Ray,
    pub strict: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjectedSystem {
    pub p: usize,
    pub rows: Vec<ProjectedRow>,
}

impl ProjectedSystem {
    /// Closure of the system as a polyhedron in `x` only (`q = 0`).
    pub fn to_polyhedron(&self) -> Polyhedron {
        let mut poly = Polyhedron::new(self.p, 0);
        for r in &self.rows {
            poly.rows
                .push(Constraint::new(r.d.clone(), vec![], r.rhs.clone()));
        }
        poly
    }

    /// Drops rows implied by the remaining ones (for display).
    pub fn minimized(&self) -> ProjectedSystem {
        let mut rows = self.rows.clone();
        let mut i = 0;
        while i < rows.len() {
            let row = rows.remove(i);
            let implied = if is_zero_vector(&row.d) {
                !row.rhs.is_negative()
            } else {
                let rest = ProjectedSystem {
                    p: self.p,
                    rows: rows.clone(),
                };
                row_valid_for(&row.d, &row.rhs, &rest.to_polyhedron())
            };
            if implied {
                continue;
            }
            rows.insert(i, row);
            i += 1;
        }
        ProjectedSystem { p: self.p, rows }
    }
}

/// Complete set of primitive extreme rays of `{v >= 0 : Eᵀ v = 0}`, where
/// `e` has one row per coordinate of `v`. Sorted in descending order.
pub fn cone_extreme_rays(e: &RatMatrix) -> Vec<Ray> {
    let m = e.len();
    if m == 0 {
        return vec![];
    }
    let cols = e[0].len();
    let mut cone = DdCone::orthant(m);
    for j in 0..cols {
        cone.add_equality(e.iter().map(|row| row[j].clone()).collect());
    }
    let mut rays: Vec<Ray> = cone.rays().map(|v| Ray::from_rational(v)).collect();
    rays.sort_by(|a, b| b.cmp(a));
    rays.dedup();
    rays
}

fn combine(poly: &Polyhedron, v: &[Rational]) -> (RatVector, Rational, bool) {
    let mut d = vec![Rational::zero(); poly.p];
    let mut rhs = Rational::zero();
    let mut strict = false;
    for (row, w) in poly.rows.iter().zip(v).filter(|(_, w)| !w.is_zero()) {
        for (dst, a) in d.iter_mut().zip(&row.a) {
            *dst += w * a;
        }
        rhs += w * &row.rhs;
        strict |= row.strict;
    }
    (d, rhs, strict)
}

/// Projection onto `x` through the extreme rays of `{v >= 0 : Gᵀ v = 0}`.
/// Rows built from a strict input row are strict.
pub fn project_x(poly: &Polyhedron) -> ProjectedSystem {
    let g: RatMatrix = poly.rows.iter().map(|r| r.g.clone()).collect();
    let rays = if poly.q == 0 {
        // The cone is the whole orthant.
        let mut unit: Vec<Ray> = (0..poly.m())
            .map(|i| {
                let mut v = vec![0i64; poly.m()];
                v[i] = 1;
                Ray::from_ints(&v)
            })
            .collect();
        unit.sort_by(|a, b| b.cmp(a));
        unit
    } else {
        cone_extreme_rays(&g)
    };
    let rows = rays
        .into_iter()
        .map(|ray| {
            let (d, rhs, strict) = combine(poly, &ray.to_rational());
            ProjectedRow {
                d,
                rhs,
                from_ray: ray,
                strict,
            }
        })
        .collect();
    ProjectedSystem { p: poly.p, rows }
}

/// Fourier–Motzkin elimination of every `y` variable. Redundant rows are
/// kept apart from exact duplicates.
pub fn fm_project(poly: &Polyhedron) -> ProjectedSystem {
    let m = poly.m();
    // Each working row: (x coefficients, y coefficients, rhs, multipliers, strict).
    type Work = (RatVector, RatVector, Rational, RatVector, bool);
    let mut work: Vec<Work> = poly
        .rows
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut mult = vec![Rational::zero(); m];
            mult[i] = Rational::from_integer(1.into());
            (r.a.clone(), r.g.clone(), r.rhs.clone(), mult, r.strict)
        })
        .collect();
    for j in 0..poly.q {
        let (zero, rest): (Vec<Work>, Vec<Work>) = work.into_iter().partition(|w| w.1[j].is_zero());
        let (pos, neg): (Vec<Work>, Vec<Work>) =
            rest.into_iter().partition(|w| w.1[j].is_positive());
        let mut next = zero;
        for p in &pos {
            for n in &neg {
                // p / p_j + n / (-n_j) cancels y_j.
                let sp = p.1[j].recip();
                let sn = -n.1[j].recip();
                let mix = |a: &RatVector, b: &RatVector| -> RatVector {
                    a.iter().zip(b).map(|(x, y)| x * &sp + y * &sn).collect()
                };
                let mut g = mix(&p.1, &n.1);
                g[j] = Rational::zero();
                let row = (
                    mix(&p.0, &n.0),
                    g,
                    &p.2 * &sp + &n.2 * &sn,
                    mix(&p.3, &n.3),
                    p.4 || n.4,
                );
                let scale = crate::rational::primitive_scale(&row.3).expect("multipliers nonzero");
                let row = (
                    row.0.iter().map(|v| v * &scale).collect(),
                    row.1.iter().map(|v| v * &scale).collect(),
                    &row.2 * &scale,
                    row.3.iter().map(|v| v * &scale).collect(),
                    row.4,
                );
                if !next.contains(&row) {
                    next.push(row);
                }
            }
        }
        work = next;
    }
    let rows = work
        .into_iter()
        .map(|(d, _, rhs, mult, strict)| ProjectedRow {
            d,
            rhs,
            from_ray: Ray::from_rational(&mult),
            strict,
        })
        .collect();
    ProjectedSystem { p: poly.p, rows }
}

/// Whether `d·x <= rhs` holds on all of `poly` (vacuously when empty).
pub(crate) fn row_valid_for(d: &[Rational], rhs: &Rational, poly: &Polyhedron) -> bool {
    match solve_lp(poly, d, &[]) {
        LpResult::Infeasible => true,
        LpResult::Unbounded => false,
        LpResult::Optimal { value, .. } => value <= *rhs,
    }
}

/// Equality of the closures of two systems over the same `x`-space, by
/// checking every row of each against the other with an LP.
pub fn poly_equal(s1: &ProjectedSystem, s2: &ProjectedSystem) -> bool {
    assert_eq!(s1.p, s2.p, "systems over different spaces");
    let (p1, p2) = (s1.to_polyhedron(), s2.to_polyhedron());
    s1.rows.iter().all(|r| row_valid_for(&r.d, &r.rhs, &p2))
        && s2.rows.iter().all(|r| row_valid_for(&r.d, &r.rhs, &p1))
}

/// Checks that a row of the system is satisfied at a point `x`.
pub fn row_holds(row: &ProjectedRow, x: &[Rational]) -> bool {
    let lhs = dot(&row.d, x);
    if row.strict {
        lhs < row.rhs
    } else {
        lhs <= row.rhs
    }
}
