//! Double-description method for pointed polyhedral cones.
//!
//! Constraints are inserted one at a time in the order given; two rays are
//! combined when they are adjacent, decided by the rank of the constraints
//! active at both. All rays are stored as primitive integer vectors.

use num_traits::{Signed, Zero};

use crate::model::Polyhedron;
use crate::rational::{dot, primitive_scale, rank, RatVector, Rational};

#[derive(Clone, Debug)]
struct DdRay {
    v: RatVector,
    /// `zero[i]` iff inequality `i` is tight on the ray.
    zero: Vec<bool>,
}

#[derive(Clone, Debug)]
pub(crate) struct DdCone {
    dim: usize,
    ineqs: Vec<RatVector>,
    eqs: Vec<RatVector>,
    rays: Vec<DdRay>,
}

fn normalized(v: RatVector) -> RatVector {
    match primitive_scale(&v) {
        Some(s) => v.into_iter().map(|x| x * &s).collect(),
        None => v,
    }
}

fn invert(m: &[RatVector]) -> Option<Vec<RatVector>> {
    let n = m.len();
    let mut a: Vec<RatVector> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| {
                if i == j {
                    Rational::from_integer(1.into())
                } else {
                    Rational::zero()
                }
            }));
            r
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&i| !a[i][col].is_zero())?;
        a.swap(col, piv);
        let inv = a[col][col].recip();
        for x in a[col].iter_mut() {
            *x *= &inv;
        }
        let prow = a[col].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i == col || row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for (x, p) in row.iter_mut().zip(&prow) {
                if !p.is_zero() {
                    *x -= &f * p;
                }
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

impl DdCone {
    /// The nonnegative orthant `{v >= 0}` of dimension `dim`.
    pub(crate) fn orthant(dim: usize) -> Self {
        let unit = |i: usize| -> RatVector {
            (0..dim)
                .map(|j| {
                    if i == j {
                        Rational::from_integer(1.into())
                    } else {
                        Rational::zero()
                    }
                })
                .collect()
        };
        DdCone {
            dim,
            ineqs: (0..dim).map(unit).collect(),
            eqs: vec![],
            rays: (0..dim)
                .map(|i| DdRay {
                    v: unit(i),
                    zero: (0..dim).map(|j| j != i).collect(),
                })
                .collect(),
        }
    }

    /// `{z : row·z >= 0 for all rows}`; `None` when the cone is not pointed.
    pub(crate) fn from_inequalities(rows: &[RatVector], dim: usize) -> Option<Self> {
        let mut basis: Vec<usize> = vec![];
        let mut chosen: Vec<RatVector> = vec![];
        for (i, r) in rows.iter().enumerate() {
            chosen.push(r.clone());
            if rank(&chosen) == chosen.len() {
                basis.push(i);
                if basis.len() == dim {
                    break;
                }
            } else {
                chosen.pop();
            }
        }
        if basis.len() < dim {
            return None;
        }
        // Simplicial start: the rays are the columns of the inverse.
        let inv = invert(&chosen)?;
        let mut cone = DdCone {
            dim,
            ineqs: chosen,
            eqs: vec![],
            rays: (0..dim)
                .map(|j| DdRay {
                    v: normalized((0..dim).map(|i| inv[i][j].clone()).collect()),
                    zero: (0..dim).map(|i| i != j).collect(),
                })
                .collect(),
        };
        for (i, r) in rows.iter().enumerate() {
            if !basis.contains(&i) {
                cone.add_inequality(r.clone());
            }
        }
        Some(cone)
    }

    fn adjacent(&self, a: &DdRay, b: &DdRay) -> bool {
        let common: Vec<usize> = (0..self.ineqs.len())
            .filter(|&i| a.zero[i] && b.zero[i])
            .collect();
        let target = self.dim - 2;
        if common.len() + self.eqs.len() < target {
            return false;
        }
        let active: Vec<RatVector> = common
            .iter()
            .map(|&i| self.ineqs[i].clone())
            .chain(self.eqs.iter().cloned())
            .collect();
        rank(&active) == target
    }

    fn insert(&mut self, a: RatVector, equality: bool) {
        if a.iter().all(Zero::is_zero) {
            return;
        }
        let vals: Vec<Rational> = self.rays.iter().map(|r| dot(&a, &r.v)).collect();
        let pos: Vec<usize> = (0..vals.len()).filter(|&i| vals[i].is_positive()).collect();
        let neg: Vec<usize> = (0..vals.len()).filter(|&i| vals[i].is_negative()).collect();
        let mut next: Vec<DdRay> = vec![];
        for (i, ray) in self.rays.iter().enumerate() {
            let tight = vals[i].is_zero();
            if tight || (!equality && vals[i].is_positive()) {
                let mut r = ray.clone();
                if !equality {
                    r.zero.push(tight);
                }
                next.push(r);
            }
        }
        for &pi in &pos {
            for &ni in &neg {
                let (rp, rn) = (&self.rays[pi], &self.rays[ni]);
                if !self.adjacent(rp, rn) {
                    continue;
                }
                let (sp, sn) = (&vals[pi], &vals[ni]);
                let v: RatVector =
                    rn.v.iter()
                        .zip(&rp.v)
                        .map(|(x, y)| sp * x - sn * y)
                        .collect();
                let mut zero: Vec<bool> = rp
                    .zero
                    .iter()
                    .zip(&rn.zero)
                    .map(|(x, y)| *x && *y)
                    .collect();
                if !equality {
                    zero.push(true);
                }
                let v = normalized(v);
                if !next.iter().any(|r| r.v == v) {
                    next.push(DdRay { v, zero });
                }
            }
        }
        self.rays = next;
        if equality {
            self.eqs.push(a);
        } else {
            self.ineqs.push(a);
        }
    }

    pub(crate) fn add_inequality(&mut self, a: RatVector) {
        self.insert(a, false);
    }

    pub(crate) fn add_equality(&mut self, a: RatVector) {
        self.insert(a, true);
    }

    pub(crate) fn rays(&self) -> impl Iterator<Item = &RatVector> {
        self.rays.iter().map(|r| &r.v)
    }
}

/// Vertices and extreme recession directions of a pointed polyhedron with
/// `q = 0` semantics over all `p + q` coordinates.
///
/// Returns `None` when the polyhedron has a nontrivial lineality space.
pub fn vertices_and_rays(poly: &Polyhedron) -> Option<(Vec<RatVector>, Vec<RatVector>)> {
    let n = poly.n();
    // Homogenize: z = (x, t), rhs·t - a·x >= 0 and t >= 0.
    let mut rows: Vec<RatVector> = poly
        .rows
        .iter()
        .map(|r| {
            let mut row: RatVector = r.a.iter().chain(&r.g).map(|v| -v).collect();
            row.push(r.rhs.clone());
            row
        })
        .collect();
    let mut t_row = vec![Rational::zero(); n + 1];
    t_row[n] = Rational::from_integer(1.into());
    rows.push(t_row);
    let cone = DdCone::from_inequalities(&rows, n + 1)?;
    let mut vertices = vec![];
    let mut directions = vec![];
    for ray in cone.rays() {
        let t = &ray[n];
        if t.is_zero() {
            directions.push(ray[..n].to_vec());
        } else {
            vertices.push(ray[..n].iter().map(|v| v / t).collect());
        }
    }
    vertices.sort();
    directions.sort();
    Some((vertices, directions))
}
