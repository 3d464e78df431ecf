//! Gomory mixed-integer cuts read off an optimal dictionary.

use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::model::Cut;
use crate::rational::{frac_part, Rational};
use crate::simplex::Tableau;

/// Dictionary row a cut is derived from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CutSource {
    /// The objective row `x_0`.
    Objective,
    /// Structural variable with the given 0-based index (`x_{j+1}`).
    Variable(usize),
}

impl fmt::Display for CutSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CutSource::Objective => write!(f, "x0"),
            CutSource::Variable(j) => write!(f, "x{}", j + 1),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GmiSource {
    pub source: CutSource,
    /// In `(0, 1)`.
    pub fractional_part: Rational,
}

fn source_value(t: &Tableau, source: CutSource) -> Rational {
    match source {
        CutSource::Objective => t.value().clone(),
        CutSource::Variable(j) => t.var_value(j),
    }
}

/// All integer-constrained positions with a fractional value, in index
/// order (`x_0` first when `include_x0`).
pub fn fractional_sources(t: &Tableau, include_x0: bool) -> Vec<CutSource> {
    let p = t.polyhedron().p;
    include_x0
        .then_some(CutSource::Objective)
        .into_iter()
        .chain((0..p).map(CutSource::Variable))
        .filter(|&s| !source_value(t, s).is_integer())
        .collect()
}

/// Least-index fractional position, or `None` if the optimum is integral
/// where required.
pub fn least_index_fractional(t: &Tableau, include_x0: bool) -> Option<CutSource> {
    fractional_sources(t, include_x0).into_iter().next()
}

/// Gomory mixed-integer cut from the dictionary row of `source`, expressed
/// in structural `(x, y)` space and canonicalized to primitive integers.
///
/// Treats `x_0` as integer-constrained; callers only pass
/// [`CutSource::Objective`] when the objective is integral at every
/// mixed-integer point.
pub fn gmi_cut(t: &Tableau, source: CutSource) -> Result<(Cut, GmiSource)> {
    let (constant, coef) = match source {
        CutSource::Objective => t.objective_row(),
        CutSource::Variable(j) => {
            if j >= t.polyhedron().p {
                return Err(Error::NoCutAvailable(format!(
                    "{source} is not integer-constrained"
                )));
            }
            t.dictionary_row(j)
                .ok_or_else(|| Error::NoCutAvailable(format!("{source} is nonbasic")))?
        }
    };
    let f0 = frac_part(constant);
    if f0.is_zero() {
        return Err(Error::NoCutAvailable(format!("{source} is integral")));
    }
    let one = Rational::one();
    let poly = t.polyhedron();
    let mut alpha = vec![Rational::zero(); poly.p];
    let mut beta = vec![Rational::zero(); poly.q];
    let mut gamma = -&f0;
    for (k, a) in coef.iter().enumerate() {
        if a.is_zero() || t.is_basic(k) {
            continue;
        }
        let row = t
            .slack_row(k)
            .ok_or_else(|| Error::NoCutAvailable(format!("free structural {k} is nonbasic")))?;
        let row = &poly.rows[row];
        let weight = if row.has_integral_slack() {
            let fk = frac_part(a);
            if fk <= f0 {
                fk
            } else {
                &f0 * (&one - &fk) / (&one - &f0)
            }
        } else if a.is_positive() {
            a.clone()
        } else {
            &f0 * (-a) / (&one - &f0)
        };
        if weight.is_zero() {
            continue;
        }
        // weight * s_i with s_i = rhs_i - a_i·x - g_i·y.
        for (dst, v) in alpha.iter_mut().zip(&row.a) {
            *dst += &weight * v;
        }
        for (dst, v) in beta.iter_mut().zip(&row.g) {
            *dst += &weight * v;
        }
        gamma += &weight * &row.rhs;
    }
    let cut = Cut::new(alpha, beta, gamma).map_err(|_| {
        Error::IntegerInfeasible(format!("row of {source} has no integer solution"))
    })?;
    Ok((
        cut.canonical(),
        GmiSource {
            source,
            fractional_part: f0,
        },
    ))
}
