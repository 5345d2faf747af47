//! Exact rational linear feasibility.
//!
//! A single phase-1 simplex with Bland's rule over `BigRational`. The
//! systems solved here are small (tens of rows, tens of unknowns), so a
//! dense tableau is plenty. Termination is guaranteed by Bland's rule and
//! exactness; the result is deterministic.

use crate::exactlin::{dot_rat, Rat, RatVec};
use num::{One, Signed, Zero};

/// One linear condition on the unknown vector.
#[derive(Debug, Clone)]
pub enum Constraint {
    /// `<coeffs, x> >= rhs`
    Ge(RatVec, Rat),
    /// `<coeffs, x> = rhs`
    Eq(RatVec, Rat),
}

impl Constraint {
    pub fn coeffs(&self) -> &RatVec {
        match self {
            Constraint::Ge(c, _) | Constraint::Eq(c, _) => c,
        }
    }

    pub fn rhs(&self) -> &Rat {
        match self {
            Constraint::Ge(_, d) | Constraint::Eq(_, d) => d,
        }
    }

    pub fn holds_at(&self, x: &[Rat]) -> bool {
        let v = dot_rat(self.coeffs(), x);
        match self {
            Constraint::Ge(_, d) => v >= *d,
            Constraint::Eq(_, d) => v == *d,
        }
    }
}

/// Outcome of a feasibility question.
#[derive(Debug, Clone)]
pub enum Feasibility {
    /// A point satisfying every constraint.
    Feasible(RatVec),
    /// Farkas certificate: multipliers `y` (indexed like the constraints,
    /// nonnegative on the inequalities) with `sum y_i coeffs_i = 0` and
    /// `sum y_i rhs_i > 0`.
    Infeasible(RatVec),
}

impl Feasibility {
    pub fn is_feasible(&self) -> bool {
        matches!(self, Feasibility::Feasible(_))
    }

    pub fn witness(&self) -> Option<&RatVec> {
        match self {
            Feasibility::Feasible(x) => Some(x),
            Feasibility::Infeasible(_) => None,
        }
    }
}

/// Decides whether `{x in Q^dim : constraints}` is nonempty.
pub fn feasibility(dim: usize, constraints: &[Constraint]) -> Feasibility {
    let m = constraints.len();
    if m == 0 {
        return Feasibility::Feasible(vec![Rat::zero(); dim]);
    }
    // Structural columns: x+ (dim), x- (dim), one surplus per Ge row.
    // Artificial columns: one per row. Rows are sign-scaled to rhs >= 0.
    let n_ge = constraints
        .iter()
        .filter(|c| matches!(c, Constraint::Ge(_, _)))
        .count();
    let n_struct = 2 * dim + n_ge;
    let n_cols = n_struct + m;

    let mut tab: Vec<RatVec> = Vec::with_capacity(m);
    let mut rhs: RatVec = Vec::with_capacity(m);
    let mut sigma: Vec<Rat> = Vec::with_capacity(m);
    let mut surplus_col = 0usize;
    for (i, con) in constraints.iter().enumerate() {
        let c = con.coeffs();
        assert_eq!(c.len(), dim, "constraint arity");
        let s = if con.rhs().is_negative() {
            -Rat::one()
        } else {
            Rat::one()
        };
        let mut row = vec![Rat::zero(); n_cols];
        for j in 0..dim {
            row[j] = &s * &c[j];
            row[dim + j] = -&row[j];
        }
        if let Constraint::Ge(_, _) = con {
            row[2 * dim + surplus_col] = -&s;
            surplus_col += 1;
        }
        row[n_struct + i] = Rat::one();
        tab.push(row);
        rhs.push(&s * con.rhs());
        sigma.push(s);
    }

    // Phase-1 objective: minimize the sum of artificials. Reduced-cost row,
    // with the artificial basis priced in.
    let mut obj = vec![Rat::zero(); n_cols];
    for j in 0..n_struct {
        let col_sum: Rat = tab.iter().map(|row| row[j].clone()).sum();
        obj[j] = -col_sum;
    }
    let mut obj_value: Rat = rhs.iter().cloned().sum();
    let mut basis: Vec<usize> = (n_struct..n_cols).collect();

    loop {
        // Bland: lowest-index column with negative reduced cost
        let Some(enter) = (0..n_cols).find(|&j| obj[j].is_negative()) else {
            break;
        };
        // ratio test, ties broken by lowest basic-variable index
        let mut leave: Option<usize> = None;
        let mut best: Option<Rat> = None;
        for i in 0..m {
            if tab[i][enter].is_positive() {
                let ratio = &rhs[i] / &tab[i][enter];
                let better = match &best {
                    None => true,
                    Some(b) => {
                        ratio < *b || (ratio == *b && basis[i] < basis[leave.unwrap()])
                    }
                };
                if better {
                    best = Some(ratio);
                    leave = Some(i);
                }
            }
        }
        let leave = leave.expect("phase-1 objective is bounded below by zero");

        // pivot on (leave, enter)
        let piv = tab[leave][enter].clone();
        for x in tab[leave].iter_mut() {
            *x /= piv.clone();
        }
        rhs[leave] /= piv.clone();
        for i in 0..m {
            if i != leave && !tab[i][enter].is_zero() {
                let f = tab[i][enter].clone();
                for j in 0..n_cols {
                    let d = &f * &tab[leave][j];
                    tab[i][j] -= d;
                }
                let d = &f * &rhs[leave];
                rhs[i] -= d;
            }
        }
        if !obj[enter].is_zero() {
            let f = obj[enter].clone();
            for j in 0..n_cols {
                let d = &f * &tab[leave][j];
                obj[j] -= d;
            }
            // entering variable takes the value rhs[leave]; the objective
            // moves by that times its reduced cost
            let d = &f * &rhs[leave];
            obj_value += d;
        }
        basis[leave] = enter;
    }

    if obj_value.is_zero() {
        let mut x = vec![Rat::zero(); dim];
        for (i, &b) in basis.iter().enumerate() {
            if b < dim {
                x[b] += &rhs[i];
            } else if b < 2 * dim {
                x[b - dim] -= &rhs[i];
            }
        }
        debug_assert!(constraints.iter().all(|c| c.holds_at(&x)));
        Feasibility::Feasible(x)
    } else {
        // Dual prices y = c_B B^{-1}, read from the artificial columns:
        // their reduced cost is 1 - y_i. Undo the row scaling to certify
        // the original system.
        let y: RatVec = (0..m)
            .map(|i| &sigma[i] * (Rat::one() - &obj[n_struct + i]))
            .collect();
        debug_assert!(verify_farkas(dim, constraints, &y));
        Feasibility::Infeasible(y)
    }
}

/// Checks the Farkas conditions for a claimed infeasibility certificate.
pub fn verify_farkas(dim: usize, constraints: &[Constraint], y: &[Rat]) -> bool {
    if y.len() != constraints.len() {
        return false;
    }
    for (c, yi) in constraints.iter().zip(y) {
        if matches!(c, Constraint::Ge(_, _)) && yi.is_negative() {
            return false;
        }
    }
    let mut combo = vec![Rat::zero(); dim];
    let mut rhs = Rat::zero();
    for (c, yi) in constraints.iter().zip(y) {
        for j in 0..dim {
            let d = yi * &c.coeffs()[j];
            combo[j] += d;
        }
        rhs += yi * c.rhs();
    }
    combo.iter().all(Zero::is_zero) && rhs.is_positive()
}
