//! Exact rational linear programming.
//!
//! [`simplex_min`] is a dense two-phase tableau simplex over `BigRational`
//! using Bland's least-index rule, so it terminates on degenerate problems and
//! is fully deterministic. [`solve_with_separation`] wraps it in a
//! constraint-generation loop driven by a separation oracle.

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Relation {
    Ge,
    Le,
    Eq,
}

/// `coefficients · x (relation) rhs`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Constraint {
    pub coefficients: Vec<Rational>,
    pub relation: Relation,
    pub rhs: Rational,
}

impl Constraint {
    pub fn new(coefficients: Vec<Rational>, relation: Relation, rhs: Rational) -> Self {
        Constraint {
            coefficients,
            relation,
            rhs,
        }
    }

    pub fn lhs(&self, x: &[Rational]) -> Rational {
        self.coefficients
            .iter()
            .zip(x)
            .filter(|(a, _)| !a.is_zero())
            .map(|(a, v)| a * v)
            .sum()
    }

    pub fn is_satisfied(&self, x: &[Rational]) -> bool {
        let lhs = self.lhs(x);
        match self.relation {
            Relation::Ge => lhs >= self.rhs,
            Relation::Le => lhs <= self.rhs,
            Relation::Eq => lhs == self.rhs,
        }
    }
}

/// `min objective · x` subject to the constraints and per-variable lower
/// bounds (`None` means the variable is free).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearProgram {
    objective: Vec<Rational>,
    constraints: Vec<Constraint>,
    lower_bounds: Vec<Option<Rational>>,
}

impl LinearProgram {
    /// All variables bounded below by zero.
    pub fn nonnegative(objective: Vec<Rational>) -> Self {
        let lower_bounds = vec![Some(Rational::zero()); objective.len()];
        LinearProgram {
            objective,
            constraints: Vec::new(),
            lower_bounds,
        }
    }

    pub fn with_bounds(objective: Vec<Rational>, lower_bounds: Vec<Option<Rational>>) -> Result<Self> {
        if lower_bounds.len() != objective.len() {
            return Err(Error::Malformed(format!(
                "{} lower bounds for {} variables",
                lower_bounds.len(),
                objective.len()
            )));
        }
        Ok(LinearProgram {
            objective,
            constraints: Vec::new(),
            lower_bounds,
        })
    }

    pub fn add_constraint(&mut self, constraint: Constraint) -> Result<()> {
        if constraint.coefficients.len() != self.objective.len() {
            return Err(Error::Malformed(format!(
                "constraint has {} coefficients, expected {}",
                constraint.coefficients.len(),
                self.objective.len()
            )));
        }
        self.constraints.push(constraint);
        Ok(())
    }

    pub fn num_variables(&self) -> usize {
        self.objective.len()
    }

    pub fn objective(&self) -> &[Rational] {
        &self.objective
    }

    pub fn constraints(&self) -> &[Constraint] {
        &self.constraints
    }

    pub fn lower_bounds(&self) -> &[Option<Rational>] {
        &self.lower_bounds
    }

    /// Constraint rows and lower bounds all hold at `x`.
    pub fn is_feasible(&self, x: &[Rational]) -> bool {
        x.len() == self.num_variables()
            && self
                .lower_bounds
                .iter()
                .zip(x)
                .all(|(lb, v)| lb.as_ref().is_none_or(|lb| v >= lb))
            && self.constraints.iter().all(|c| c.is_satisfied(x))
    }

    pub fn evaluate(&self, x: &[Rational]) -> Rational {
        self.objective.iter().zip(x).map(|(c, v)| c * v).sum()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LpSolution {
    pub status: LpStatus,
    /// Primal values; empty unless optimal.
    pub values: Vec<Rational>,
    /// Zero unless optimal.
    pub objective_value: Rational,
    /// One multiplier per constraint row; empty unless optimal. Signs follow
    /// the usual convention for minimization: `>= 0` on `Ge` rows, `<= 0` on
    /// `Le` rows, free on `Eq` rows, and `objective - Aᵀ·duals` is the
    /// vector of reduced costs.
    pub duals: Vec<Rational>,
}

impl LpSolution {
    fn without_point(status: LpStatus) -> Self {
        LpSolution {
            status,
            values: Vec::new(),
            objective_value: Rational::zero(),
            duals: Vec::new(),
        }
    }

    pub fn is_optimal(&self) -> bool {
        self.status == LpStatus::Optimal
    }
}

// How an original variable maps onto nonnegative tableau columns.
enum VarMap {
    Shifted { column: usize, lower: Rational },
    Split { plus: usize, minus: usize },
}

struct Tableau {
    // Each row holds `ncols` coefficients followed by the right-hand side.
    rows: Vec<Vec<Rational>>,
    basis: Vec<usize>,
    // Reduced costs followed by minus the current objective value.
    obj: Vec<Rational>,
    ncols: usize,
}

impl Tableau {
    fn price(&mut self, costs: &[Rational]) {
        let mut obj: Vec<Rational> = costs.to_vec();
        obj.push(Rational::zero());
        for (row, &b) in self.rows.iter().zip(&self.basis) {
            let cb = &costs[b];
            if cb.is_zero() {
                continue;
            }
            for (o, a) in obj.iter_mut().zip(row) {
                if !a.is_zero() {
                    *o -= cb * a;
                }
            }
        }
        self.obj = obj;
    }

    fn pivot(&mut self, r: usize, col: usize) {
        let inv = self.rows[r][col].recip();
        for a in self.rows[r].iter_mut() {
            if !a.is_zero() {
                *a *= &inv;
            }
        }
        let pivot_row = std::mem::take(&mut self.rows[r]);
        let support: Vec<usize> = (0..=self.ncols).filter(|&j| !pivot_row[j].is_zero()).collect();
        let eliminate = |target: &mut Vec<Rational>| {
            let factor = target[col].clone();
            if factor.is_zero() {
                return;
            }
            for &j in &support {
                target[j] -= &factor * &pivot_row[j];
            }
        };
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i != r {
                eliminate(row);
            }
        }
        eliminate(&mut self.obj);
        self.rows[r] = pivot_row;
        self.basis[r] = col;
    }

    /// Runs Bland's rule until optimal (`true`) or unbounded (`false`).
    fn optimize(&mut self, can_enter: impl Fn(usize) -> bool) -> bool {
        loop {
            let Some(col) = (0..self.ncols).find(|&j| can_enter(j) && self.obj[j].is_negative()) else {
                return true;
            };
            let mut best: Option<(usize, Rational)> = None;
            for (r, row) in self.rows.iter().enumerate() {
                if !row[col].is_positive() {
                    continue;
                }
                let ratio = &row[self.ncols] / &row[col];
                let better = match &best {
                    None => true,
                    Some((br, b)) => ratio < *b || (ratio == *b && self.basis[r] < self.basis[*br]),
                };
                if better {
                    best = Some((r, ratio));
                }
            }
            match best {
                Some((r, _)) => self.pivot(r, col),
                None => return false,
            }
        }
    }
}

/// Solves `lp` exactly. Deterministic for a given input.
pub fn simplex_min(lp: &LinearProgram) -> LpSolution {
    // Map variables to nonnegative columns.
    let mut maps = Vec::with_capacity(lp.num_variables());
    let mut nstruct = 0;
    for lb in &lp.lower_bounds {
        match lb {
            Some(lower) => {
                maps.push(VarMap::Shifted {
                    column: nstruct,
                    lower: lower.clone(),
                });
                nstruct += 1;
            }
            None => {
                maps.push(VarMap::Split {
                    plus: nstruct,
                    minus: nstruct + 1,
                });
                nstruct += 2;
            }
        }
    }

    // Normalized rows: right-hand side made nonnegative.
    struct Row {
        coefficients: Vec<Rational>,
        relation: Relation,
        rhs: Rational,
        negated: bool,
    }
    let mut rows = Vec::with_capacity(lp.constraints.len());
    for c in &lp.constraints {
        let mut coefficients = vec![Rational::zero(); nstruct];
        let mut rhs = c.rhs.clone();
        for (a, map) in c.coefficients.iter().zip(&maps) {
            if a.is_zero() {
                continue;
            }
            match map {
                VarMap::Shifted { column, lower } => {
                    coefficients[*column] = a.clone();
                    rhs -= a * lower;
                }
                VarMap::Split { plus, minus } => {
                    coefficients[*plus] = a.clone();
                    coefficients[*minus] = -a;
                }
            }
        }
        let mut relation = c.relation;
        let negated = rhs.is_negative();
        if negated {
            coefficients.iter_mut().for_each(|a| *a = -&*a);
            rhs = -rhs;
            relation = match relation {
                Relation::Ge => Relation::Le,
                Relation::Le => Relation::Ge,
                Relation::Eq => Relation::Eq,
            };
        }
        rows.push(Row {
            coefficients,
            relation,
            rhs,
            negated,
        });
    }

    // Column layout: structural | slack or surplus per inequality | artificial per Ge/Eq row.
    let m = rows.len();
    let nslack = rows.iter().filter(|r| r.relation != Relation::Eq).count();
    let nart = rows.iter().filter(|r| r.relation != Relation::Le).count();
    let ncols = nstruct + nslack + nart;
    let first_art = nstruct + nslack;

    let mut tableau = Tableau {
        rows: Vec::with_capacity(m),
        basis: Vec::with_capacity(m),
        obj: Vec::new(),
        ncols,
    };
    // Column holding +e_r for each row; used to read off the multipliers.
    let mut unit_column = Vec::with_capacity(m);
    let (mut next_slack, mut next_art) = (nstruct, first_art);
    for row in &rows {
        let mut t = row.coefficients.clone();
        t.resize(ncols + 1, Rational::zero());
        t[ncols] = row.rhs.clone();
        match row.relation {
            Relation::Le => {
                t[next_slack] = Rational::one();
                unit_column.push(next_slack);
                tableau.basis.push(next_slack);
                next_slack += 1;
            }
            Relation::Ge => {
                t[next_slack] = -Rational::one();
                t[next_art] = Rational::one();
                unit_column.push(next_art);
                tableau.basis.push(next_art);
                next_slack += 1;
                next_art += 1;
            }
            Relation::Eq => {
                t[next_art] = Rational::one();
                unit_column.push(next_art);
                tableau.basis.push(next_art);
                next_art += 1;
            }
        }
        tableau.rows.push(t);
    }

    // Phase 1: minimize the sum of artificials.
    if nart > 0 {
        let costs: Vec<Rational> = (0..ncols)
            .map(|j| {
                if j >= first_art {
                    Rational::one()
                } else {
                    Rational::zero()
                }
            })
            .collect();
        tableau.price(&costs);
        tableau.optimize(|_| true);
        if !tableau.obj[ncols].is_zero() {
            return LpSolution::without_point(LpStatus::Infeasible);
        }
        // Drive zero-valued artificials out of the basis; drop redundant rows.
        let mut r = 0;
        while r < tableau.rows.len() {
            if tableau.basis[r] >= first_art {
                match (0..first_art).find(|&j| !tableau.rows[r][j].is_zero()) {
                    Some(col) => {
                        tableau.pivot(r, col);
                        r += 1;
                    }
                    None => {
                        tableau.rows.remove(r);
                        tableau.basis.remove(r);
                    }
                }
            } else {
                r += 1;
            }
        }
    }

    // Phase 2.
    let mut costs = vec![Rational::zero(); ncols];
    let mut constant = Rational::zero();
    for (c, map) in lp.objective.iter().zip(&maps) {
        match map {
            VarMap::Shifted { column, lower } => {
                costs[*column] = c.clone();
                constant += c * lower;
            }
            VarMap::Split { plus, minus } => {
                costs[*plus] = c.clone();
                costs[*minus] = -c;
            }
        }
    }
    tableau.price(&costs);
    if !tableau.optimize(|j| j < first_art) {
        return LpSolution::without_point(LpStatus::Unbounded);
    }

    let mut column_values = vec![Rational::zero(); ncols];
    for (row, &b) in tableau.rows.iter().zip(&tableau.basis) {
        column_values[b] = row[ncols].clone();
    }
    let values: Vec<Rational> = maps
        .iter()
        .map(|map| match map {
            VarMap::Shifted { column, lower } => lower + &column_values[*column],
            VarMap::Split { plus, minus } => &column_values[*plus] - &column_values[*minus],
        })
        .collect();
    let duals = rows
        .iter()
        .zip(&unit_column)
        .map(|(row, &u)| {
            let multiplier = -&tableau.obj[u];
            if row.negated {
                -multiplier
            } else {
                multiplier
            }
        })
        .collect();
    let objective_value = -&tableau.obj[ncols] + constant;
    debug_assert_eq!(objective_value, lp.evaluate(&values));
    LpSolution {
        status: LpStatus::Optimal,
        values,
        objective_value,
        duals,
    }
}

/// Outcome of a constraint-generation run.
#[derive(Debug, Clone)]
pub struct SeparationOutcome {
    pub solution: LpSolution,
    /// Cuts added by the oracle, in order.
    pub cuts: Vec<Constraint>,
    /// Optimal objective of every relaxation solved, in order.
    pub relaxation_objectives: Vec<Rational>,
}

/// Solves `base` plus whatever the oracle adds: solve the relaxation, ask the
/// oracle about its optimum, append the returned cut, repeat until the oracle
/// returns `None`.
///
/// The oracle must be sound (every cut is valid for the full problem) and
/// complete (`None` only when no constraint of the full problem is violated).
/// A cut that the current point satisfies, or that repeats an earlier cut,
/// is reported as [`Error::Oracle`] instead of looping forever.
pub fn solve_with_separation<F>(base: &LinearProgram, mut oracle: F) -> Result<SeparationOutcome>
where
    F: FnMut(&[Rational]) -> Result<Option<Constraint>>,
{
    let mut lp = base.clone();
    let mut cuts: Vec<Constraint> = Vec::new();
    let mut relaxation_objectives = Vec::new();
    loop {
        let solution = simplex_min(&lp);
        if !solution.is_optimal() {
            return Ok(SeparationOutcome {
                solution,
                cuts,
                relaxation_objectives,
            });
        }
        relaxation_objectives.push(solution.objective_value.clone());
        let Some(cut) = oracle(&solution.values)? else {
            return Ok(SeparationOutcome {
                solution,
                cuts,
                relaxation_objectives,
            });
        };
        if cut.coefficients.len() != lp.num_variables() {
            return Err(Error::Oracle(format!(
                "cut has {} coefficients, expected {}",
                cut.coefficients.len(),
                lp.num_variables()
            )));
        }
        if cut.is_satisfied(&solution.values) {
            return Err(Error::Oracle(
                "returned cut is not violated by the current point".into(),
            ));
        }
        if cuts.contains(&cut) {
            return Err(Error::Oracle("returned a cut that was already added".into()));
        }
        lp.add_constraint(cut.clone())?;
        cuts.push(cut);
    }
}
