//! Problem data: MILP instances, polyhedra over `(x, y)` space, points and cuts.

use num_traits::One;

use crate::error::{Error, Result};
use crate::rational::{
    denominator_lcm, dot, is_zero_vector, primitive_scale, RatMatrix, RatVector, Rational,
};

/// `max c·x + h·y  s.t.  A x + G y <= b,  x integral`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MilpInstance {
    pub p: usize,
    pub q: usize,
    pub a: RatMatrix,
    pub g: RatMatrix,
    pub b: RatVector,
    pub c: RatVector,
    pub h: RatVector,
}

impl MilpInstance {
    pub fn new(p: usize, q: usize, c: RatVector, h: RatVector) -> Result<Self> {
        if c.len() != p || h.len() != q {
            return Err(Error::Dimension(format!(
                "objective has {}|{} entries, expected {p}|{q}",
                c.len(),
                h.len()
            )));
        }
        Ok(Self {
            p,
            q,
            a: vec![],
            g: vec![],
            b: vec![],
            c,
            h,
        })
    }

    pub fn push_row(&mut self, a: RatVector, g: RatVector, rhs: Rational) -> Result<()> {
        if a.len() != self.p || g.len() != self.q {
            return Err(Error::Dimension(format!(
                "row has {}|{} entries, expected {}|{}",
                a.len(),
                g.len(),
                self.p,
                self.q
            )));
        }
        self.a.push(a);
        self.g.push(g);
        self.b.push(rhs);
        Ok(())
    }

    pub fn m(&self) -> usize {
        self.b.len()
    }

    pub fn polyhedron(&self) -> Polyhedron {
        let mut poly = Polyhedron::new(self.p, self.q);
        for i in 0..self.m() {
            poly.rows.push(Constraint::new(
                self.a[i].clone(),
                self.g[i].clone(),
                self.b[i].clone(),
            ));
        }
        poly
    }

    pub fn objective_value(&self, pt: &Point) -> Rational {
        dot(&self.c, &pt.x) + dot(&self.h, &pt.y)
    }

    /// Scales every row to integer data and the objective so that `c` is
    /// integral.
    ///
    /// Returns the scaled instance and the positive multiplier applied to the
    /// objective; divide scaled objective values by it to get original units.
    pub fn scale_to_integer_data(&self) -> (MilpInstance, Rational) {
        let mut out = self.clone();
        for i in 0..out.m() {
            let lcm = denominator_lcm(out.a[i].iter().chain(&out.g[i]).chain([&out.b[i]]));
            if !lcm.is_one() {
                let s = Rational::from_integer(lcm);
                out.a[i]
                    .iter_mut()
                    .chain(out.g[i].iter_mut())
                    .for_each(|v| *v *= &s);
                out.b[i] *= &s;
            }
        }
        let mult = Rational::from_integer(denominator_lcm(&out.c));
        if !mult.is_one() {
            out.c
                .iter_mut()
                .chain(out.h.iter_mut())
                .for_each(|v| *v *= &mult);
        }
        (out, mult)
    }
}

/// One inequality `a·x + g·y <= rhs` (or `<` when `strict`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Constraint {
    pub a: RatVector,
    pub g: RatVector,
    pub rhs: Rational,
    pub strict: bool,
    /// Row was appended as a cut; its slack is treated as continuous.
    pub added: bool,
}

impl Constraint {
    pub fn new(a: RatVector, g: RatVector, rhs: Rational) -> Self {
        Self {
            a,
            g,
            rhs,
            strict: false,
            added: false,
        }
    }

    pub fn lhs(&self, pt: &Point) -> Rational {
        dot(&self.a, &pt.x) + dot(&self.g, &pt.y)
    }

    pub fn satisfied_by(&self, pt: &Point) -> bool {
        let lhs = self.lhs(pt);
        if self.strict {
            lhs < self.rhs
        } else {
            lhs <= self.rhs
        }
    }

    /// Whether the row's slack is integral at every mixed-integer point.
    pub fn has_integral_slack(&self) -> bool {
        !self.added
            && !self.strict
            && is_zero_vector(&self.g)
            && self.a.iter().chain([&self.rhs]).all(|v| v.is_integer())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polyhedron {
    pub p: usize,
    pub q: usize,
    pub rows: Vec<Constraint>,
}

impl Polyhedron {
    pub fn new(p: usize, q: usize) -> Self {
        Self { p, q, rows: vec![] }
    }

    pub fn n(&self) -> usize {
        self.p + self.q
    }

    pub fn m(&self) -> usize {
        self.rows.len()
    }

    pub fn push(&mut self, row: Constraint) -> Result<()> {
        if row.a.len() != self.p || row.g.len() != self.q {
            return Err(Error::Dimension(format!(
                "constraint has {}|{} entries, expected {}|{}",
                row.a.len(),
                row.g.len(),
                self.p,
                self.q
            )));
        }
        self.rows.push(row);
        Ok(())
    }

    pub fn push_row(&mut self, a: RatVector, g: RatVector, rhs: Rational) -> Result<()> {
        self.push(Constraint::new(a, g, rhs))
    }

    pub fn contains(&self, pt: &Point) -> bool {
        self.rows.iter().all(|r| r.satisfied_by(pt))
    }

    /// `P ∩ {alpha·x + beta·y <= gamma}` as a new polyhedron.
    pub fn add_cut(&self, cut: &Cut) -> Polyhedron {
        assert_eq!(cut.alpha.len(), self.p, "cut x-dimension");
        assert_eq!(cut.beta.len(), self.q, "cut y-dimension");
        let mut out = self.clone();
        out.rows.push(Constraint {
            a: cut.alpha.clone(),
            g: cut.beta.clone(),
            rhs: cut.gamma.clone(),
            strict: false,
            added: true,
        });
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Point {
    pub x: RatVector,
    pub y: RatVector,
}

impl Point {
    pub fn new(x: RatVector, y: RatVector) -> Self {
        Self { x, y }
    }

    pub fn from_flat(p: usize, v: RatVector) -> Self {
        let mut x = v;
        let y = x.split_off(p);
        Self { x, y }
    }

    pub fn is_integer_point(&self) -> bool {
        self.x.iter().all(|v| v.is_integer())
    }
}

pub fn is_integer_point(pt: &Point) -> bool {
    pt.is_integer_point()
}

/// Valid inequality `alpha·x + beta·y <= gamma`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cut {
    pub alpha: RatVector,
    pub beta: RatVector,
    pub gamma: Rational,
}

impl Cut {
    pub fn new(alpha: RatVector, beta: RatVector, gamma: Rational) -> Result<Self> {
        if is_zero_vector(&alpha) && is_zero_vector(&beta) {
            return Err(Error::ZeroCut);
        }
        Ok(Self { alpha, beta, gamma })
    }

    pub fn lhs(&self, pt: &Point) -> Rational {
        dot(&self.alpha, &pt.x) + dot(&self.beta, &pt.y)
    }

    pub fn is_satisfied_by(&self, pt: &Point) -> bool {
        self.lhs(pt) <= self.gamma
    }

    /// Rescales to integer coefficients and right-hand side with gcd 1.
    pub fn canonical(&self) -> Cut {
        let all: Vec<Rational> = self
            .alpha
            .iter()
            .chain(&self.beta)
            .chain([&self.gamma])
            .cloned()
            .collect();
        let s = primitive_scale(&all).expect("cut has a nonzero coefficient");
        Cut {
            alpha: self.alpha.iter().map(|v| v * &s).collect(),
            beta: self.beta.iter().map(|v| v * &s).collect(),
            gamma: &self.gamma * &s,
        }
    }

    /// True when both cuts describe the same half-space up to positive scaling.
    pub fn equivalent(&self, other: &Cut) -> bool {
        let a = self.canonical();
        let b = other.canonical();
        a == b
    }
}

impl std::fmt::Display for Cut {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut toks: Vec<String> = self.alpha.iter().map(ToString::to_string).collect();
        toks.push("|".into());
        toks.extend(self.beta.iter().map(ToString::to_string));
        toks.push("<=".into());
        toks.push(self.gamma.to_string());
        f.write_str(&toks.join(" "))
    }
}
