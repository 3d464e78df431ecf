//! Exact dictionary simplex over the rationals with a lexicographic objective.
//!
//! Structural variables `(x, y)` are free. Each polyhedron row `i` gets a
//! slack `s_i = rhs_i - a_i·x - g_i·y >= 0`. Variable indices are
//! `0..n` for structurals and `n + i` for the slack of row `i`.
//!
//! A dictionary row reads `x_b = constant - Σ coef[k]·x_k` over the
//! nonbasic `x_k`; the objective row `x_0 = c·x + h·y` has the same shape,
//! so it is optimal when every objective coefficient is `>= 0`.
//!
//! Among optimal vertices the solver returns the lexicographic maximum of
//! `(x_0, x_1, .., x_p, y_1, .., y_q)`. Free structurals are pivoted into
//! the basis first and never leave it, so once the polyhedron has full
//! column rank every nonbasic variable is a slack and every optimal column
//! `(d_k, coef_{x_1,k}, ..)` is lexicographically positive. That is the
//! invariant the lexicographic dual simplex in [`resolve_after_cut`] relies on.

use std::cmp::Ordering;

use log::{debug, trace};
use num_traits::{Signed, Zero};

use crate::model::{Cut, Point, Polyhedron};
use crate::rational::{dot, RatVector, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
struct DictRow {
    constant: Rational,
    coef: RatVector,
}

impl DictRow {
    fn zeros(width: usize) -> Self {
        Self {
            constant: Rational::zero(),
            coef: vec![Rational::zero(); width],
        }
    }

    /// Replaces the entering variable `k` by the pivot row's expression.
    fn substitute(&mut self, k: usize, pivot: &DictRow) {
        let factor = std::mem::replace(&mut self.coef[k], Rational::zero());
        if factor.is_zero() {
            return;
        }
        self.constant -= &factor * &pivot.constant;
        for (c, p) in self.coef.iter_mut().zip(&pivot.coef) {
            if !p.is_zero() {
                *c -= &factor * p;
            }
        }
    }
}

/// Optimal (or intermediate) simplex dictionary together with the system it
/// describes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tableau {
    poly: Polyhedron,
    objective_c: RatVector,
    objective_h: RatVector,
    basis: Vec<usize>,
    rows: Vec<DictRow>,
    objective: DictRow,
    aux_objective: Option<DictRow>,
    position: Vec<Option<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LpResult {
    Optimal {
        point: Point,
        value: Rational,
        tableau: Box<Tableau>,
    },
    Infeasible,
    Unbounded,
}

impl LpResult {
    pub fn value(&self) -> Option<&Rational> {
        match self {
            LpResult::Optimal { value, .. } => Some(value),
            _ => None,
        }
    }

    pub fn point(&self) -> Option<&Point> {
        match self {
            LpResult::Optimal { point, .. } => Some(point),
            _ => None,
        }
    }
}

enum PrimalEnd {
    Optimal,
    Unbounded,
}

fn lex_cmp(a: &[Rational], b: &[Rational]) -> Ordering {
    a.iter()
        .zip(b)
        .map(|(x, y)| x.cmp(y))
        .find(|o| o.is_ne())
        .unwrap_or(Ordering::Equal)
}

fn lex_sign(v: &[Rational]) -> Ordering {
    v.iter()
        .find(|x| !x.is_zero())
        .map_or(Ordering::Equal, |x| {
            if x.is_positive() {
                Ordering::Greater
            } else {
                Ordering::Less
            }
        })
}

impl Tableau {
    fn initial(poly: &Polyhedron, c: &[Rational], h: &[Rational]) -> Self {
        let n = poly.n();
        let m = poly.m();
        let width = n + m;
        let rows = poly
            .rows
            .iter()
            .map(|r| {
                let mut coef = Vec::with_capacity(width);
                coef.extend(r.a.iter().cloned());
                coef.extend(r.g.iter().cloned());
                coef.resize(width, Rational::zero());
                DictRow {
                    constant: r.rhs.clone(),
                    coef,
                }
            })
            .collect();
        let mut objective = DictRow::zeros(width);
        for (j, v) in c.iter().chain(h).enumerate() {
            objective.coef[j] = -v;
        }
        let mut position = vec![None; width];
        for i in 0..m {
            position[n + i] = Some(i);
        }
        Self {
            poly: poly.clone(),
            objective_c: c.to_vec(),
            objective_h: h.to_vec(),
            basis: (n..n + m).collect(),
            rows,
            objective,
            aux_objective: None,
            position,
        }
    }

    pub fn polyhedron(&self) -> &Polyhedron {
        &self.poly
    }

    pub fn objective_c(&self) -> &[Rational] {
        &self.objective_c
    }

    pub fn objective_h(&self) -> &[Rational] {
        &self.objective_h
    }

    /// Number of structural variables `p + q`.
    pub fn structural_count(&self) -> usize {
        self.poly.n()
    }

    /// Structural plus slack variables.
    pub fn var_count(&self) -> usize {
        self.position.len()
    }

    pub fn basis(&self) -> &[usize] {
        &self.basis
    }

    pub fn is_basic(&self, var: usize) -> bool {
        self.position[var].is_some()
    }

    /// Polyhedron row whose slack is variable `var`, if `var` is a slack.
    pub fn slack_row(&self, var: usize) -> Option<usize> {
        var.checked_sub(self.structural_count())
            .filter(|&i| i < self.poly.m())
    }

    /// `(constant, coefficients)` of the dictionary row of a basic variable.
    pub fn dictionary_row(&self, var: usize) -> Option<(&Rational, &[Rational])> {
        self.position[var].map(|i| (&self.rows[i].constant, self.rows[i].coef.as_slice()))
    }

    /// `(constant, coefficients)` of the objective row `x_0`.
    pub fn objective_row(&self) -> (&Rational, &[Rational]) {
        (&self.objective.constant, &self.objective.coef)
    }

    /// Reduced cost of nonbasic `var` under the maximization convention
    /// (`<= 0` at optimality).
    pub fn reduced_cost(&self, var: usize) -> Rational {
        -&self.objective.coef[var]
    }

    pub fn value(&self) -> &Rational {
        &self.objective.constant
    }

    /// Current value of a variable (nonbasic variables sit at zero).
    pub fn var_value(&self, var: usize) -> Rational {
        self.position[var].map_or_else(Rational::zero, |i| self.rows[i].constant.clone())
    }

    pub fn point(&self) -> Point {
        let n = self.structural_count();
        Point::from_flat(self.poly.p, (0..n).map(|j| self.var_value(j)).collect())
    }

    fn is_structural(&self, var: usize) -> bool {
        var < self.structural_count()
    }

    /// Nonbasic variables that may be moved by the simplex (slacks only).
    fn movable(&self) -> impl Iterator<Item = usize> + '_ {
        (self.structural_count()..self.var_count()).filter(|&k| self.position[k].is_none())
    }

    /// Coefficient of nonbasic `k` in the expression of structural `j`.
    fn expr_coef(&self, j: usize, k: usize) -> Rational {
        match self.position[j] {
            Some(i) => self.rows[i].coef[k].clone(),
            None if j == k => Rational::from_integer((-1).into()),
            None => Rational::zero(),
        }
    }

    /// `(d_k, coef_{x_1,k}, ..)` used by the lexicographic rules.
    fn column_lex(&self, k: usize) -> RatVector {
        let mut v = Vec::with_capacity(self.structural_count() + 1);
        v.push(self.objective.coef[k].clone());
        v.extend((0..self.structural_count()).map(|j| self.expr_coef(j, k)));
        v
    }

    fn pivot(&mut self, r: usize, k: usize) {
        let leaving = self.basis[r];
        trace!("pivot enter={k} leave={leaving}");
        let a = self.rows[r].coef[k].clone();
        debug_assert!(!a.is_zero());
        let inv = a.recip();
        let row = &mut self.rows[r];
        row.coef[k] = Rational::zero();
        row.coef[leaving] = Rational::from_integer(1.into());
        row.constant *= &inv;
        for c in row.coef.iter_mut() {
            if !c.is_zero() {
                *c *= &inv;
            }
        }
        let pivot_row = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i != r {
                row.substitute(k, &pivot_row);
            }
        }
        self.objective.substitute(k, &pivot_row);
        if let Some(aux) = self.aux_objective.as_mut() {
            aux.substitute(k, &pivot_row);
        }
        self.basis[r] = k;
        self.position[leaving] = None;
        self.position[k] = Some(r);
    }

    /// Pivots every structural into the basis where a row allows it.
    fn pivot_in_structurals(&mut self) {
        for j in 0..self.structural_count() {
            let row = (0..self.rows.len())
                .find(|&i| !self.is_structural(self.basis[i]) && !self.rows[i].coef[j].is_zero());
            if let Some(r) = row {
                self.pivot(r, j);
            }
        }
    }

    /// Primal ratio test on entering `k`; ties go to the smallest basic index.
    fn ratio_test(&self, k: usize) -> Option<usize> {
        let mut best: Option<(usize, Rational)> = None;
        for (i, row) in self.rows.iter().enumerate() {
            if self.is_structural(self.basis[i]) || !row.coef[k].is_positive() {
                continue;
            }
            let ratio = &row.constant / &row.coef[k];
            let better = match &best {
                None => true,
                Some((bi, br)) => ratio < *br || (ratio == *br && self.basis[i] < self.basis[*bi]),
            };
            if better {
                best = Some((i, ratio));
            }
        }
        best.map(|(i, _)| i)
    }

    /// Bland's rule: smallest-index improving column, smallest-index leaving row.
    fn run_primal(&mut self, improving: impl Fn(&Tableau, usize) -> bool) -> PrimalEnd {
        loop {
            let Some(k) = self.movable().find(|&k| improving(self, k)) else {
                return PrimalEnd::Optimal;
            };
            match self.ratio_test(k) {
                Some(r) => self.pivot(r, k),
                None => return PrimalEnd::Unbounded,
            }
        }
    }

    /// Drives every slack nonnegative. Returns false if the system is infeasible.
    fn phase_one(&mut self) -> bool {
        let n = self.structural_count();
        let most_negative = (0..self.rows.len())
            .filter(|&i| !self.is_structural(self.basis[i]))
            .filter(|&i| self.rows[i].constant.is_negative())
            .min_by(|&i, &j| {
                self.rows[i]
                    .constant
                    .cmp(&self.rows[j].constant)
                    .then(self.basis[i].cmp(&self.basis[j]))
            });
        let Some(r) = most_negative else {
            return true;
        };
        // Auxiliary w >= 0 relaxes every basic slack to s_i >= -w.
        let aux = self.var_count();
        let minus_one = Rational::from_integer((-1).into());
        for (i, row) in self.rows.iter_mut().enumerate() {
            row.coef.push(if self.basis[i] >= n {
                minus_one.clone()
            } else {
                Rational::zero()
            });
        }
        self.objective.coef.push(Rational::zero());
        self.position.push(None);
        let mut aux_obj = DictRow::zeros(aux + 1);
        aux_obj.coef[aux] = Rational::from_integer(1.into());
        self.aux_objective = Some(aux_obj);
        self.pivot(r, aux);
        self.run_primal(|t, k| {
            t.aux_objective
                .as_ref()
                .is_some_and(|a| a.coef[k].is_negative())
        });
        let feasible = self
            .aux_objective
            .as_ref()
            .is_some_and(|a| a.constant.is_zero());
        if feasible {
            if let Some(r) = self.position[aux] {
                let enter = (n..aux)
                    .find(|&k| self.position[k].is_none() && !self.rows[r].coef[k].is_zero());
                match enter {
                    Some(k) => self.pivot(r, k),
                    None => {
                        // w is identically zero in terms of the remaining columns.
                        self.rows.remove(r);
                        self.basis.remove(r);
                        self.position[aux] = None;
                        for (i, &b) in self.basis.iter().enumerate() {
                            self.position[b] = Some(i);
                        }
                    }
                }
            }
        }
        self.aux_objective = None;
        for row in self.rows.iter_mut() {
            row.coef.pop();
        }
        self.objective.coef.pop();
        self.position.pop();
        feasible
    }

    /// True when the dictionary satisfies the lexicographic dual invariant.
    fn is_lex_positive(&self) -> bool {
        (0..self.structural_count()).all(|j| self.is_basic(j))
            && self
                .movable()
                .all(|k| lex_sign(&self.column_lex(k)) == Ordering::Greater)
    }

    fn optimal_result(self) -> LpResult {
        let point = self.point();
        let value = self.objective.constant.clone();
        debug_assert!(
            self.poly.contains(&point),
            "simplex returned an infeasible point"
        );
        debug_assert_eq!(
            value,
            dot(&self.objective_c, &point.x) + dot(&self.objective_h, &point.y)
        );
        LpResult::Optimal {
            point,
            value,
            tableau: Box::new(self),
        }
    }
}

/// Maximizes `c·x + h·y` over `poly`, returning the lexicographically
/// maximal optimal vertex.
pub fn solve_lp(poly: &Polyhedron, c: &[Rational], h: &[Rational]) -> LpResult {
    assert_eq!(c.len(), poly.p, "objective x-dimension");
    assert_eq!(h.len(), poly.q, "objective y-dimension");
    let mut t = Tableau::initial(poly, c, h);
    t.pivot_in_structurals();
    if !t.phase_one() {
        debug!("lp infeasible");
        return LpResult::Infeasible;
    }
    // A structural that could not enter the basis is unconstrained.
    let n = t.structural_count();
    if (0..n).any(|j| !t.is_basic(j) && !t.objective.coef[j].is_zero()) {
        return LpResult::Unbounded;
    }
    if let PrimalEnd::Unbounded = t.run_primal(|t, k| t.objective.coef[k].is_negative()) {
        return LpResult::Unbounded;
    }
    // Lexicographic refinement on the optimal face. If the face is
    // unbounded in a tie-break direction the current vertex is kept.
    t.run_primal(|t, k| {
        t.objective.coef[k].is_zero() && lex_sign(&t.column_lex(k)[1..]) == Ordering::Less
    });
    t.optimal_result()
}

/// Re-optimizes after appending `cut` to the tableau's polyhedron, using
/// lexicographic dual simplex steps from the previous optimum.
///
/// Falls back to a fresh [`solve_lp`] when the tableau does not carry the
/// lexicographic dual invariant (rank-deficient or lexicographically
/// unbounded systems).
pub fn resolve_after_cut(t: &Tableau, cut: &Cut) -> LpResult {
    let poly = t.poly.add_cut(cut);
    if !t.is_lex_positive() {
        debug!("tableau not lex-positive, solving from scratch");
        return solve_lp(&poly, &t.objective_c, &t.objective_h);
    }
    let mut t = t.clone();
    let n = t.structural_count();
    let slack = t.var_count();
    for row in t.rows.iter_mut() {
        row.coef.push(Rational::zero());
    }
    t.objective.coef.push(Rational::zero());
    t.position.push(None);
    // s = gamma - Σ alpha_j x_j, with x_j = const_j - Σ coef_jk x_k.
    let weights: RatVector = cut.alpha.iter().chain(&cut.beta).cloned().collect();
    let mut row = DictRow::zeros(slack + 1);
    row.constant = cut.gamma.clone();
    for (j, w) in weights.iter().enumerate().filter(|(_, w)| !w.is_zero()) {
        let src = &t.rows[t.position[j].expect("structural is basic")];
        row.constant -= w * &src.constant;
        for (dst, s) in row.coef.iter_mut().zip(&src.coef) {
            if !s.is_zero() {
                *dst -= w * s;
            }
        }
    }
    row.coef[slack] = Rational::zero();
    t.rows.push(row);
    t.basis.push(slack);
    t.position[slack] = Some(t.rows.len() - 1);
    t.poly = poly;

    loop {
        let leaving = (0..t.rows.len())
            .filter(|&i| t.basis[i] >= n && t.rows[i].constant.is_negative())
            .min_by(|&i, &j| {
                t.rows[i]
                    .constant
                    .cmp(&t.rows[j].constant)
                    .then(t.basis[i].cmp(&t.basis[j]))
            });
        let Some(r) = leaving else {
            break;
        };
        let mut best: Option<(usize, RatVector)> = None;
        for k in t.movable() {
            let a = &t.rows[r].coef[k];
            if !a.is_negative() {
                continue;
            }
            let scale = -a.recip();
            let ratio: RatVector = t.column_lex(k).into_iter().map(|v| v * &scale).collect();
            if best
                .as_ref()
                .is_none_or(|(_, b)| lex_cmp(&ratio, b) == Ordering::Less)
            {
                best = Some((k, ratio));
            }
        }
        match best {
            Some((k, _)) => t.pivot(r, k),
            None => return LpResult::Infeasible,
        }
    }
    t.optimal_result()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::rational::{frac, int};

    fn optimum(res: &LpResult) -> (Point, Rational) {
        match res {
            LpResult::Optimal { point, value, .. } => (point.clone(), value.clone()),
            other => panic!("expected optimum, got {other:?}"),
        }
    }

    #[test]
    fn cks_relaxation() {
        let inst = fixtures::cks();
        let (pt, v) = optimum(&solve_lp(&inst.polyhedron(), &inst.c, &inst.h));
        assert_eq!(pt.x, vec![frac(2, 3), frac(2, 3)]);
        assert_eq!(pt.y, vec![frac(2, 3)]);
        assert_eq!(v, frac(2, 3));
    }

    #[test]
    fn owen_mehrotra_relaxation() {
        let inst = fixtures::owen_mehrotra();
        let (pt, v) = optimum(&solve_lp(&inst.polyhedron(), &inst.c, &inst.h));
        assert_eq!(pt.x, vec![frac(15, 8), int(1)]);
        assert_eq!(v, frac(23, 8));
    }

    #[test]
    fn cks_with_both_gomory_cuts() {
        let inst = fixtures::cks();
        let poly = inst
            .polyhedron()
            .add_cut(&Cut::new(vec![int(-1), int(0)], vec![int(2)], int(0)).unwrap())
            .add_cut(&Cut::new(vec![int(0), int(-1)], vec![int(2)], int(0)).unwrap());
        let (pt, v) = optimum(&solve_lp(&poly, &inst.c, &inst.h));
        assert_eq!(pt.x, vec![frac(4, 5), frac(4, 5)]);
        assert_eq!(pt.y, vec![frac(2, 5)]);
        assert_eq!(v, frac(2, 5));
    }

    #[test]
    fn lexicographic_tie_break() {
        // max 0 over the unit square: lex-max vertex is (1, 1).
        let mut poly = Polyhedron::new(2, 0);
        for j in 0..2 {
            let mut up = vec![int(0), int(0)];
            up[j] = int(1);
            let down: RatVector = up.iter().map(|v| -v).collect();
            poly.push_row(up, vec![], int(1)).unwrap();
            poly.push_row(down, vec![], int(0)).unwrap();
        }
        let (pt, _) = optimum(&solve_lp(&poly, &[int(0), int(0)], &[]));
        assert_eq!(pt.x, vec![int(1), int(1)]);
        // max x1 + x2 over x1 + x2 <= 1, x >= 0: prefer larger x1.
        let mut tri = Polyhedron::new(2, 0);
        tri.push_row(vec![int(1), int(1)], vec![], int(1)).unwrap();
        tri.push_row(vec![int(-1), int(0)], vec![], int(0)).unwrap();
        tri.push_row(vec![int(0), int(-1)], vec![], int(0)).unwrap();
        let (pt, v) = optimum(&solve_lp(&tri, &[int(1), int(1)], &[]));
        assert_eq!(pt.x, vec![int(1), int(0)]);
        assert_eq!(v, int(1));
    }

    #[test]
    fn infeasible_and_unbounded() {
        let mut poly = Polyhedron::new(1, 0);
        poly.push_row(vec![int(1)], vec![], int(0)).unwrap();
        poly.push_row(vec![int(-1)], vec![], int(-1)).unwrap();
        assert_eq!(solve_lp(&poly, &[int(1)], &[]), LpResult::Infeasible);

        let mut ray = Polyhedron::new(1, 0);
        ray.push_row(vec![int(-1)], vec![], int(0)).unwrap();
        assert_eq!(solve_lp(&ray, &[int(1)], &[]), LpResult::Unbounded);
        let (pt, v) = optimum(&solve_lp(&ray, &[int(-1)], &[]));
        assert_eq!((pt.x, v), (vec![int(0)], int(0)));

        // No rows at all: only the zero objective is bounded.
        let free = Polyhedron::new(0, 2);
        assert_eq!(solve_lp(&free, &[], &[int(1), int(0)]), LpResult::Unbounded);
        assert!(matches!(
            solve_lp(&free, &[], &[int(0), int(0)]),
            LpResult::Optimal { .. }
        ));
    }

    #[test]
    fn rank_deficient_system() {
        // x1 - x2 <= 1 and -x1 + x2 <= 1 with objective x1 + x2 is unbounded,
        // objective x1 - x2 is bounded by 1.
        let mut poly = Polyhedron::new(2, 0);
        poly.push_row(vec![int(1), int(-1)], vec![], int(1))
            .unwrap();
        poly.push_row(vec![int(-1), int(1)], vec![], int(1))
            .unwrap();
        assert_eq!(solve_lp(&poly, &[int(1), int(1)], &[]), LpResult::Unbounded);
        let (_, v) = optimum(&solve_lp(&poly, &[int(1), int(-1)], &[]));
        assert_eq!(v, int(1));
    }

    #[test]
    fn resolve_matches_scratch_on_cks() {
        let inst = fixtures::cks();
        let poly = fixtures::cks_core();
        let LpResult::Optimal { tableau, .. } = solve_lp(&poly, &inst.c, &inst.h) else {
            panic!()
        };
        let gmi = Cut::new(vec![int(-1), int(0)], vec![int(2)], int(0)).unwrap();
        let far = Cut::new(vec![int(1), int(0)], vec![int(0)], int(-10)).unwrap();
        let redundant = Cut::new(vec![int(0), int(0)], vec![int(1)], int(5)).unwrap();
        for cut in [&gmi, &far, &redundant] {
            let warm = resolve_after_cut(&tableau, cut);
            let cold = solve_lp(&poly.add_cut(cut), &inst.c, &inst.h);
            assert_eq!(warm.value(), cold.value(), "cut {cut}");
            assert_eq!(warm.point(), cold.point(), "cut {cut}");
        }
        assert!(resolve_after_cut(&tableau, &gmi).value().unwrap() < &frac(2, 3));
        assert_eq!(
            resolve_after_cut(&tableau, &redundant).value(),
            Some(&frac(2, 3))
        );
        // x1 <= -10 leaves y <= x1 <= -10.
        assert_eq!(resolve_after_cut(&tableau, &far).value(), Some(&int(-10)));
    }

    #[test]
    fn resolve_detects_infeasibility() {
        let inst = fixtures::owen_mehrotra();
        let LpResult::Optimal { tableau, .. } = solve_lp(&inst.polyhedron(), &inst.c, &inst.h)
        else {
            panic!()
        };
        let cut = Cut::new(vec![int(1), int(0)], vec![], int(-1)).unwrap();
        assert_eq!(resolve_after_cut(&tableau, &cut), LpResult::Infeasible);
    }

    #[test]
    fn optimal_tableau_reduced_costs() {
        let inst = fixtures::owen_mehrotra();
        let LpResult::Optimal { tableau, .. } = solve_lp(&inst.polyhedron(), &inst.c, &inst.h)
        else {
            panic!()
        };
        for k in 0..tableau.var_count() {
            if !tableau.is_basic(k) {
                assert!(!tableau.reduced_cost(k).is_positive());
            }
        }
        let mut seen = tableau.basis().to_vec();
        seen.sort();
        seen.dedup();
        assert_eq!(seen.len(), tableau.basis().len());
    }
}
