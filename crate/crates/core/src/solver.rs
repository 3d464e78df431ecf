//! Exact cutting-plane loop: rounds of Gomory mixed-integer cuts until the
//! LP bound drops, then a disjunctive cut along the objective.

use std::fmt;

use log::{debug, info};

use crate::disjunction::{objective_cut, ObjectiveCutReport, RoundingMode};
use crate::error::{Error, Result};
use crate::gmi::{fractional_sources, gmi_cut, least_index_fractional, CutSource};
use crate::model::{Cut, MilpInstance, Point, Polyhedron};
use crate::rational::{int, is_zero_vector, Rational};
use crate::simplex::{resolve_after_cut, solve_lp, LpResult, Tableau};

/// Which fractional rows of an optimal dictionary yield cuts before the
/// next re-solve.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum GmiRound {
    /// Every fractional integer-constrained row, in index order.
    #[default]
    AllFractional,
    /// Only the least-index fractional row.
    LeastIndex,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolveOptions {
    /// Objective cuts allowed before giving up.
    pub max_outer_iterations: usize,
    /// Gomory rounds allowed between two objective cuts.
    pub max_inner_iterations: usize,
    pub trace: bool,
    /// Let the objective row generate Gomory cuts. Only honored when the
    /// objective has no continuous part, so that `x_0` is integral on every
    /// feasible point.
    pub include_x0: bool,
    pub gmi_round: GmiRound,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            max_outer_iterations: 100,
            max_inner_iterations: 200,
            trace: false,
            include_x0: false,
            gmi_round: GmiRound::default(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    Optimal,
    Infeasible,
    IterationLimit,
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Outcome::Optimal => "optimal",
            Outcome::Infeasible => "infeasible",
            Outcome::IterationLimit => "iteration-limit",
        })
    }
}

/// Objective values are in the units of the original instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TraceEvent {
    LpSolved {
        value: Rational,
        point: Point,
    },
    LpInfeasible,
    GmiCutAdded {
        cut: Cut,
        source: CutSource,
    },
    /// `cut` is `c·x + h·y <= gamma_hat`; `applied` is false when it does
    /// not undercut the LP value.
    ObjectiveCut {
        report: ObjectiveCutReport,
        cut: Cut,
        applied: bool,
    },
    Terminal(Outcome),
}

impl fmt::Display for TraceEvent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TraceEvent::LpSolved { value, point } => {
                let mut toks: Vec<String> = point.x.iter().map(ToString::to_string).collect();
                toks.push("|".into());
                toks.extend(point.y.iter().map(ToString::to_string));
                write!(f, "lp value {value} at {}", toks.join(" "))
            }
            TraceEvent::LpInfeasible => write!(f, "lp infeasible"),
            TraceEvent::GmiCutAdded { cut, source } => write!(f, "gmi {source} {cut}"),
            TraceEvent::ObjectiveCut {
                report, applied, ..
            } => {
                let bounds: Vec<String> = report
                    .ray_bounds()
                    .iter()
                    .map(ToString::to_string)
                    .collect();
                write!(
                    f,
                    "objective-cut gamma_hat {} = max{{{}}} rays {} {}",
                    report.gamma_hat,
                    bounds.join(","),
                    report.per_ray.len(),
                    if *applied { "applied" } else { "skipped" }
                )
            }
            TraceEvent::Terminal(outcome) => write!(f, "terminal {outcome}"),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Trace {
    pub events: Vec<TraceEvent>,
}

impl Trace {
    pub fn lp_values(&self) -> impl Iterator<Item = &Rational> {
        self.events.iter().filter_map(|e| match e {
            TraceEvent::LpSolved { value, .. } => Some(value),
            _ => None,
        })
    }

    /// Every cut added to the relaxation, objective cuts included.
    pub fn cuts(&self) -> Vec<Cut> {
        self.events
            .iter()
            .filter_map(|e| match e {
                TraceEvent::GmiCutAdded { cut, .. } => Some(cut.clone()),
                _ => None,
            })
            .chain(self.objective_cuts())
            .collect()
    }

    /// Objective cuts that were added, as `c·x + h·y <= gamma_hat` in
    /// original units.
    pub fn objective_cuts(&self) -> Vec<Cut> {
        self.events
            .iter()
            .filter_map(|e| match e {
                TraceEvent::ObjectiveCut {
                    cut, applied: true, ..
                } => Some(cut.clone()),
                _ => None,
            })
            .collect()
    }
}

impl fmt::Display for Trace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for e in &self.events {
            writeln!(f, "{e}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MilpResult {
    Optimal {
        point: Point,
        value: Rational,
        trace: Trace,
    },
    Infeasible {
        trace: Trace,
    },
    IterationLimit {
        trace: Trace,
    },
}

impl MilpResult {
    pub fn trace(&self) -> &Trace {
        match self {
            MilpResult::Optimal { trace, .. }
            | MilpResult::Infeasible { trace }
            | MilpResult::IterationLimit { trace } => trace,
        }
    }

    pub fn outcome(&self) -> Outcome {
        match self {
            MilpResult::Optimal { .. } => Outcome::Optimal,
            MilpResult::Infeasible { .. } => Outcome::Infeasible,
            MilpResult::IterationLimit { .. } => Outcome::IterationLimit,
        }
    }

    pub fn value(&self) -> Option<&Rational> {
        match self {
            MilpResult::Optimal { value, .. } => Some(value),
            _ => None,
        }
    }
}

/// Whether every variable is bounded above and below on the relaxation; an
/// empty relaxation counts as bounded.
pub fn check_bounded(inst: &MilpInstance) -> bool {
    let poly = inst.polyhedron();
    let n = inst.p + inst.q;
    for j in 0..n {
        for sign in [1, -1] {
            let mut obj = vec![int(0); n];
            obj[j] = int(sign);
            let (c, h) = obj.split_at(inst.p);
            match solve_lp(&poly, c, h) {
                LpResult::Infeasible => return true,
                LpResult::Unbounded => return false,
                LpResult::Optimal { .. } => {}
            }
        }
    }
    true
}

enum Step {
    Continue(Box<Tableau>),
    Done(MilpResult),
}

struct Run<'a> {
    opts: &'a SolveOptions,
    scaled: MilpInstance,
    base: Polyhedron,
    multiplier: Rational,
    include_x0: bool,
    trace: Trace,
}

impl Run<'_> {
    fn record(&mut self, e: TraceEvent) {
        if self.opts.trace {
            debug!("{e}");
            self.trace.events.push(e);
        }
    }

    fn finish(&mut self, outcome: Outcome, optimum: Option<(Point, Rational)>) -> MilpResult {
        self.trace.events.push(TraceEvent::Terminal(outcome));
        let trace = std::mem::take(&mut self.trace);
        info!("terminal {outcome}");
        match (outcome, optimum) {
            (Outcome::Optimal, Some((point, value))) => MilpResult::Optimal {
                point,
                value,
                trace,
            },
            (Outcome::Infeasible, _) => MilpResult::Infeasible { trace },
            _ => MilpResult::IterationLimit { trace },
        }
    }

    fn original(&self, v: &Rational) -> Rational {
        v / &self.multiplier
    }

    /// Records a freshly solved LP and stops on infeasibility or an
    /// integral optimum.
    fn observe(&mut self, lp: LpResult) -> Result<Step> {
        match lp {
            LpResult::Infeasible => {
                self.record(TraceEvent::LpInfeasible);
                Ok(Step::Done(self.finish(Outcome::Infeasible, None)))
            }
            LpResult::Unbounded => Err(Error::Unbounded),
            LpResult::Optimal {
                point,
                value,
                tableau,
            } => {
                let value = self.original(&value);
                self.record(TraceEvent::LpSolved {
                    value: value.clone(),
                    point: point.clone(),
                });
                if point.is_integer_point() {
                    Ok(Step::Done(
                        self.finish(Outcome::Optimal, Some((point, value))),
                    ))
                } else {
                    Ok(Step::Continue(tableau))
                }
            }
        }
    }

    /// One round of Gomory cuts read off `t`, re-solving after each cut.
    fn gmi_round(&mut self, t: &Tableau) -> Result<Step> {
        let sources = match self.opts.gmi_round {
            GmiRound::AllFractional => fractional_sources(t, self.include_x0),
            GmiRound::LeastIndex => least_index_fractional(t, self.include_x0)
                .into_iter()
                .collect(),
        };
        let mut current = t.clone();
        let mut added = false;
        for source in sources {
            let cut = match gmi_cut(t, source) {
                Ok((cut, _)) => cut,
                Err(Error::NoCutAvailable(why)) => {
                    debug!("skipping {source}: {why}");
                    continue;
                }
                Err(Error::IntegerInfeasible(_)) => {
                    return Ok(Step::Done(self.finish(Outcome::Infeasible, None)))
                }
                Err(e) => return Err(e),
            };
            self.record(TraceEvent::GmiCutAdded {
                cut: cut.clone(),
                source,
            });
            match resolve_after_cut(&current, &cut) {
                LpResult::Optimal { tableau, .. } => current = *tableau,
                other => return self.observe(other),
            }
            added = true;
        }
        if !added {
            return Err(Error::NoCutAvailable(
                "no fractional row yields a cut".into(),
            ));
        }
        let point = current.point();
        let value = current.value().clone();
        self.observe(LpResult::Optimal {
            point,
            value,
            tableau: Box::new(current),
        })
    }

    /// Adds `c·x + h·y <= gamma_hat` when it undercuts the current value.
    fn objective_step(&mut self, t: &Tableau) -> Result<Option<Step>> {
        let report = objective_cut(
            &self.base,
            &self.scaled.c,
            &self.scaled.h,
            t.value(),
            RoundingMode::Weak,
        )?;
        let applied = report.gamma_hat < *t.value();
        let cut = Cut::new(
            self.scaled.c.clone(),
            self.scaled.h.clone(),
            report.gamma_hat.clone(),
        )?;
        let report = self.in_original_units(report);
        self.record(TraceEvent::ObjectiveCut {
            report,
            cut: cut.canonical(),
            applied,
        });
        if !applied {
            return Ok(None);
        }
        self.observe(resolve_after_cut(t, &cut)).map(Some)
    }

    fn in_original_units(&self, mut report: ObjectiveCutReport) -> ObjectiveCutReport {
        report.gamma_hat = self.original(&report.gamma_hat);
        for term in &mut report.per_ray {
            term.gamma = term.gamma.as_ref().map(|g| self.original(g));
        }
        report
    }
}

/// Solves a bounded MILP exactly. Reported values are in the units of
/// `inst`; internally rows and objective are scaled to integer data.
pub fn solve(inst: &MilpInstance, opts: &SolveOptions) -> Result<MilpResult> {
    if !check_bounded(inst) {
        return Err(Error::Unbounded);
    }
    let (scaled, multiplier) = inst.scale_to_integer_data();
    let base = scaled.polyhedron();
    let include_x0 = opts.include_x0 && is_zero_vector(&scaled.h);
    let mut run = Run {
        opts,
        base,
        multiplier,
        include_x0,
        trace: Trace::default(),
        scaled,
    };
    let lp = solve_lp(&run.base, &run.scaled.c, &run.scaled.h);
    let mut t = match run.observe(lp)? {
        Step::Done(result) => return Ok(result),
        Step::Continue(t) => t,
    };
    for outer in 0..opts.max_outer_iterations {
        let gamma = t.value().clone();
        let mut rounds = 0;
        while *t.value() == gamma {
            if rounds == opts.max_inner_iterations {
                info!("inner limit hit in outer iteration {outer}");
                return Ok(run.finish(Outcome::IterationLimit, None));
            }
            rounds += 1;
            t = match run.gmi_round(&t)? {
                Step::Done(result) => return Ok(result),
                Step::Continue(next) => next,
            };
        }
        if let Some(step) = run.objective_step(&t)? {
            t = match step {
                Step::Done(result) => return Ok(result),
                Step::Continue(next) => next,
            };
        }
    }
    Ok(run.finish(Outcome::IterationLimit, None))
}
