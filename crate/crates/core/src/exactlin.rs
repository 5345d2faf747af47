//! Exact integer and rational linear algebra: Smith normal form, integer
//! kernels, rational solving, primitivization.
//!
//! Everything is dense and arbitrary precision. The instances this crate
//! handles have at most a few hundred rows and ~30 columns, so no sparsity
//! or modular tricks are needed; exactness is the requirement.

use num::bigint::Sign;
use num::{BigInt, BigRational, Integer, One, Signed, Zero};
use thiserror::Error;

pub type Int = BigInt;
pub type Rat = BigRational;

/// Integer vector, used both for lattice points and facet normals.
pub type IntVec = Vec<Int>;
/// Rational vector.
pub type RatVec = Vec<Rat>;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LinError {
    #[error("cannot primitivize the zero vector")]
    ZeroVector,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
}

/// Dense integer matrix, row major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    pub rows: usize,
    pub cols: usize,
    entries: Vec<Int>,
}

impl IntMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, entries: vec![Int::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m[(i, i)] = Int::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<IntVec>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        IntMatrix { rows: r, cols: c, entries: rows.into_iter().flatten().collect() }
    }

    pub fn from_cols(cols: Vec<IntVec>) -> Self {
        Self::from_rows(cols).transpose()
    }

    pub fn row(&self, i: usize) -> &[Int] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> IntVec {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn row_vecs(&self) -> Vec<IntVec> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = IntMatrix::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "matrix product shape");
        let mut out = IntMatrix::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let t = a * &other[(k, j)];
                    out[(i, j)] += t;
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Int]) -> IntVec {
        assert_eq!(self.cols, v.len(), "matrix-vector shape");
        (0..self.rows).map(|i| dot_int(self.row(i), v)).collect()
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self[(i, j)].is_zero()))
    }

    pub fn to_rat(&self) -> RatMatrix {
        RatMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|e| Rat::from_integer(e.clone())).collect(),
        }
    }

    /// Rank over the rationals.
    pub fn rank(&self) -> usize {
        rank_int_rows(&self.row_vecs())
    }

    /// Determinant, via exact fraction-free (Bareiss) elimination.
    pub fn det(&self) -> Int {
        assert_eq!(self.rows, self.cols, "determinant of non-square matrix");
        let n = self.rows;
        if n == 0 {
            return Int::one();
        }
        let mut a = self.row_vecs();
        let mut prev = Int::one();
        let mut sign = Int::one();
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                    Some(i) => {
                        a.swap(k, i);
                        sign = -sign;
                    }
                    None => return Int::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &a[k][k] * &a[i][j] - &a[i][k] * &a[k][j];
                    a[i][j] = &num / &prev;
                }
                a[i][k] = Int::zero();
            }
            prev = a[k][k].clone();
        }
        sign * a[n - 1][n - 1].clone()
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = Int;
    fn index(&self, (i, j): (usize, usize)) -> &Int {
        &self.entries[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Int {
        &mut self.entries[i * self.cols + j]
    }
}

/// Dense rational matrix, row major, entries kept reduced by `BigRational`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatMatrix {
    pub rows: usize,
    pub cols: usize,
    entries: Vec<Rat>,
}

impl RatMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        RatMatrix { rows, cols, entries: vec![Rat::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m[(i, i)] = Rat::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<RatVec>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        RatMatrix { rows: r, cols: c, entries: rows.into_iter().flatten().collect() }
    }

    pub fn from_int_rows(rows: Vec<IntVec>) -> Self {
        Self::from_rows(
            rows.into_iter()
                .map(|r| r.into_iter().map(Rat::from_integer).collect())
                .collect(),
        )
    }

    pub fn row(&self, i: usize) -> &[Rat] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> RatVec {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn row_vecs(&self) -> Vec<RatVec> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> RatMatrix {
        let mut t = RatMatrix::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &RatMatrix) -> RatMatrix {
        assert_eq!(self.cols, other.rows, "matrix product shape");
        let mut out = RatMatrix::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let t = a * &other[(k, j)];
                    out[(i, j)] += t;
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Rat]) -> RatVec {
        assert_eq!(self.cols, v.len(), "matrix-vector shape");
        (0..self.rows).map(|i| dot_rat(self.row(i), v)).collect()
    }

    pub fn rank(&self) -> usize {
        let (reduced, _) = rref(self.row_vecs());
        reduced.len()
    }
}

impl std::ops::Index<(usize, usize)> for RatMatrix {
    type Output = Rat;
    fn index(&self, (i, j): (usize, usize)) -> &Rat {
        &self.entries[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for RatMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rat {
        &mut self.entries[i * self.cols + j]
    }
}

pub fn dot_int(a: &[Int], b: &[Int]) -> Int {
    debug_assert_eq!(a.len(), b.len());
    let mut acc = Int::zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            acc += x * y;
        }
    }
    acc
}

pub fn dot_rat(a: &[Rat], b: &[Rat]) -> Rat {
    debug_assert_eq!(a.len(), b.len());
    let mut acc = Rat::zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            acc += x * y;
        }
    }
    acc
}

pub fn int_vec(v: &[i64]) -> IntVec {
    v.iter().map(|&x| Int::from(x)).collect()
}

pub fn rat_vec(v: &[i64]) -> RatVec {
    v.iter().map(|&x| Rat::from_integer(Int::from(x))).collect()
}

pub fn int_to_rat_vec(v: &[Int]) -> RatVec {
    v.iter().map(|x| Rat::from_integer(x.clone())).collect()
}

/// Clears denominators and strips the content, preserving direction.
/// Returns the zero vector unchanged.
pub fn rat_to_primitive_int(v: &[Rat]) -> IntVec {
    if v.iter().all(Zero::is_zero) {
        return vec![Int::zero(); v.len()];
    }
    let mut lcm = Int::one();
    for x in v {
        if !x.is_zero() {
            lcm = lcm.lcm(x.denom());
        }
    }
    let ints: IntVec = v.iter().map(|x| x.numer() * (&lcm / x.denom())).collect();
    primitive(&ints).expect("nonzero by construction")
}

/// Divides by the gcd of the entries. The result is the first lattice point
/// on the ray through `v` (direction preserved).
pub fn primitive(v: &[Int]) -> Result<IntVec, LinError> {
    let mut g = Int::zero();
    for x in v {
        g = g.gcd(x);
    }
    if g.is_zero() {
        return Err(LinError::ZeroVector);
    }
    Ok(v.iter().map(|x| x / &g).collect())
}

/// Smith normal form: returns `(s, u, w)` with `u * m * w = s`, `s` diagonal
/// with a divisibility chain on the nonnegative diagonal, and `u`, `w`
/// unimodular. Pivots are chosen by smallest nonzero magnitude, ties broken
/// by position, so the output is deterministic.
pub fn smith_normal_form(m: &IntMatrix) -> (IntMatrix, IntMatrix, IntMatrix) {
    let mut s = m.clone();
    let mut u = IntMatrix::identity(m.rows);
    let mut w = IntMatrix::identity(m.cols);
    let steps = m.rows.min(m.cols);

    for t in 0..steps {
        'pivot: loop {
            // smallest-magnitude nonzero pivot in the trailing block
            let mut best: Option<(usize, usize)> = None;
            for i in t..s.rows {
                for j in t..s.cols {
                    if s[(i, j)].is_zero() {
                        continue;
                    }
                    match best {
                        Some((bi, bj)) if s[(bi, bj)].abs() <= s[(i, j)].abs() => {}
                        _ => best = Some((i, j)),
                    }
                }
            }
            let Some((pi, pj)) = best else {
                return finish_snf(s, u, w);
            };
            swap_rows(&mut s, &mut u, t, pi);
            swap_cols(&mut s, &mut w, t, pj);

            let mut dirty = false;
            for i in t + 1..s.rows {
                if s[(i, t)].is_zero() {
                    continue;
                }
                let q = rounded_div(&s[(i, t)], &s[(t, t)]);
                if !q.is_zero() {
                    row_axpy(&mut s, &mut u, i, t, &q);
                }
                if !s[(i, t)].is_zero() {
                    dirty = true;
                }
            }
            for j in t + 1..s.cols {
                if s[(t, j)].is_zero() {
                    continue;
                }
                let q = rounded_div(&s[(t, j)], &s[(t, t)]);
                if !q.is_zero() {
                    col_axpy(&mut s, &mut w, j, t, &q);
                }
                if !s[(t, j)].is_zero() {
                    dirty = true;
                }
            }
            if dirty {
                continue 'pivot;
            }
            // divisibility: fold in the first offending row and retry
            let p = s[(t, t)].clone();
            for i in t + 1..s.rows {
                if (t + 1..s.cols).any(|j| !s[(i, j)].mod_floor(&p).is_zero()) {
                    add_row(&mut s, &mut u, t, i);
                    continue 'pivot;
                }
            }
            break;
        }
    }
    finish_snf(s, u, w)
}

fn finish_snf(mut s: IntMatrix, mut u: IntMatrix, w: IntMatrix) -> (IntMatrix, IntMatrix, IntMatrix) {
    for t in 0..s.rows.min(s.cols) {
        if s[(t, t)].sign() == Sign::Minus {
            for j in 0..s.cols {
                let v = -s[(t, j)].clone();
                s[(t, j)] = v;
            }
            for j in 0..u.cols {
                let v = -u[(t, j)].clone();
                u[(t, j)] = v;
            }
        }
    }
    (s, u, w)
}

fn swap_rows(s: &mut IntMatrix, u: &mut IntMatrix, a: usize, b: usize) {
    if a == b {
        return;
    }
    for j in 0..s.cols {
        let (x, y) = (s[(a, j)].clone(), s[(b, j)].clone());
        s[(a, j)] = y;
        s[(b, j)] = x;
    }
    for j in 0..u.cols {
        let (x, y) = (u[(a, j)].clone(), u[(b, j)].clone());
        u[(a, j)] = y;
        u[(b, j)] = x;
    }
}

fn swap_cols(s: &mut IntMatrix, w: &mut IntMatrix, a: usize, b: usize) {
    if a == b {
        return;
    }
    for i in 0..s.rows {
        let (x, y) = (s[(i, a)].clone(), s[(i, b)].clone());
        s[(i, a)] = y;
        s[(i, b)] = x;
    }
    for i in 0..w.rows {
        let (x, y) = (w[(i, a)].clone(), w[(i, b)].clone());
        w[(i, a)] = y;
        w[(i, b)] = x;
    }
}

/// row_i -= q * row_t, mirrored on u.
fn row_axpy(s: &mut IntMatrix, u: &mut IntMatrix, i: usize, t: usize, q: &Int) {
    for j in 0..s.cols {
        let d = q * &s[(t, j)];
        s[(i, j)] -= d;
    }
    for j in 0..u.cols {
        let d = q * &u[(t, j)];
        u[(i, j)] -= d;
    }
}

/// col_j -= q * col_t, mirrored on w.
fn col_axpy(s: &mut IntMatrix, w: &mut IntMatrix, j: usize, t: usize, q: &Int) {
    for i in 0..s.rows {
        let d = q * &s[(i, t)];
        s[(i, j)] -= d;
    }
    for i in 0..w.rows {
        let d = q * &w[(i, t)];
        w[(i, j)] -= d;
    }
}

fn add_row(s: &mut IntMatrix, u: &mut IntMatrix, t: usize, i: usize) {
    for j in 0..s.cols {
        let d = s[(i, j)].clone();
        s[(t, j)] += d;
    }
    for j in 0..u.cols {
        let d = u[(i, j)].clone();
        u[(t, j)] += d;
    }
}

/// Quotient that minimizes the remainder magnitude; keeps SNF entries small.
fn rounded_div(a: &Int, b: &Int) -> Int {
    let (q, r) = a.div_mod_floor(b);
    if &(r.abs() * 2u8) > &b.abs() {
        q + Int::one()
    } else {
        q
    }
}

/// Basis of the lattice `{x in Z^cols : m x = 0}`. The vectors are columns of
/// the SNF transform beyond the rank, so they generate the full (saturated)
/// kernel lattice. Sign/order normalized for determinism.
pub fn kernel_basis(m: &IntMatrix) -> Vec<IntVec> {
    if m.rows == 0 {
        let mut basis: Vec<IntVec> = (0..m.cols)
            .map(|j| {
                let mut e = vec![Int::zero(); m.cols];
                e[j] = Int::one();
                e
            })
            .collect();
        basis.sort();
        return basis;
    }
    let (s, _, w) = smith_normal_form(m);
    let rank = (0..m.rows.min(m.cols)).take_while(|&i| !s[(i, i)].is_zero()).count();
    let mut basis: Vec<IntVec> = (rank..m.cols).map(|j| w.col(j)).collect();
    for v in &mut basis {
        if let Some(first) = v.iter().find(|x| !x.is_zero()) {
            if first.sign() == Sign::Minus {
                for x in v.iter_mut() {
                    *x = -x.clone();
                }
            }
        }
    }
    basis.sort();
    basis
}

fn rank_int_rows(rows: &[IntVec]) -> usize {
    let rat_rows: Vec<RatVec> = rows.iter().map(|r| int_to_rat_vec(r)).collect();
    let (reduced, _) = rref(rat_rows);
    reduced.len()
}

/// Rank of a set of integer rows, early-exiting once `stop` is exceeded.
/// Plain rational elimination; entries stay small at our sizes.
pub fn rank_int_rows_capped(rows: &[&[Int]], stop: usize) -> usize {
    let cols = match rows.first() {
        Some(r) => r.len(),
        None => return 0,
    };
    let mut basis: Vec<RatVec> = Vec::new();
    let mut pivots: Vec<usize> = Vec::new();
    for row in rows {
        let mut v = int_to_rat_vec(row);
        for (b, &p) in basis.iter().zip(&pivots) {
            if !v[p].is_zero() {
                let f = v[p].clone();
                for j in 0..cols {
                    let d = &f * &b[j];
                    v[j] -= d;
                }
            }
        }
        if let Some(p) = (0..cols).find(|&j| !v[j].is_zero()) {
            let lead = v[p].clone();
            for x in v.iter_mut() {
                *x /= lead.clone();
            }
            basis.push(v);
            pivots.push(p);
            if basis.len() > stop {
                return basis.len();
            }
        }
    }
    basis.len()
}

/// Reduced row echelon form. Returns the nonzero reduced rows (leading
/// coefficient 1, pivot columns cleared) and their pivot columns. Canonical
/// for the row space, which makes subspace comparisons a plain equality.
pub fn rref(rows: Vec<RatVec>) -> (Vec<RatVec>, Vec<usize>) {
    let cols = rows.first().map_or(0, Vec::len);
    let mut basis: Vec<RatVec> = Vec::new();
    let mut pivots: Vec<usize> = Vec::new();
    for row in rows {
        let mut v = row;
        for (b, &p) in basis.iter().zip(&pivots) {
            if !v[p].is_zero() {
                let f = v[p].clone();
                for j in 0..cols {
                    let d = &f * &b[j];
                    v[j] -= d;
                }
            }
        }
        let Some(p) = (0..cols).find(|&j| !v[j].is_zero()) else {
            continue;
        };
        let lead = v[p].clone();
        for x in v.iter_mut() {
            *x /= lead.clone();
        }
        // clear the new pivot column in earlier rows
        for (b, _) in basis.iter_mut().zip(&pivots) {
            if !b[p].is_zero() {
                let f = b[p].clone();
                for j in 0..cols {
                    let d = &f * &v[j];
                    b[j] -= d;
                }
            }
        }
        basis.push(v);
        pivots.push(p);
    }
    let mut order: Vec<usize> = (0..basis.len()).collect();
    order.sort_by_key(|&i| pivots[i]);
    let basis = order.iter().map(|&i| basis[i].clone()).collect();
    let pivots = order.iter().map(|&i| pivots[i]).collect();
    (basis, pivots)
}

/// Any exact solution of `a x = b`, or `None` when inconsistent. Free
/// variables are set to zero, so the answer is deterministic.
pub fn solve_rational(a: &RatMatrix, b: &[Rat]) -> Option<RatVec> {
    assert_eq!(a.rows, b.len(), "rhs length");
    let aug: Vec<RatVec> = (0..a.rows)
        .map(|i| {
            let mut r = a.row(i).to_vec();
            r.push(b[i].clone());
            r
        })
        .collect();
    let (reduced, pivots) = rref(aug);
    let mut x = vec![Rat::zero(); a.cols];
    for (row, &p) in reduced.iter().zip(&pivots) {
        if p == a.cols {
            return None; // pivot in the rhs column
        }
        x[p] = row[a.cols].clone();
    }
    Some(x)
}

/// Basis of `{x : a x = 0}` over the rationals, one vector per free column.
pub fn rational_kernel(a: &RatMatrix) -> Vec<RatVec> {
    let (reduced, pivots) = rref(a.row_vecs());
    let free: Vec<usize> = (0..a.cols).filter(|j| !pivots.contains(j)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Rat::zero(); a.cols];
            v[f] = Rat::one();
            for (row, &p) in reduced.iter().zip(&pivots) {
                v[p] = -row[f].clone();
            }
            v
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn im(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_rows(rows.iter().map(|r| int_vec(r)).collect())
    }

    #[test]
    fn snf_identity() {
        let m = IntMatrix::identity(2);
        let (s, u, w) = smith_normal_form(&m);
        assert_eq!(s, IntMatrix::identity(2));
        assert_eq!(u, IntMatrix::identity(2));
        assert_eq!(w, IntMatrix::identity(2));
    }

    #[test]
    fn snf_hand_example() {
        // [[2,4],[6,8]]: content 2, |det| = 8, so diag(2, 4)
        let m = im(&[&[2, 4], &[6, 8]]);
        let (s, u, w) = smith_normal_form(&m);
        assert_eq!(u.mul(&m).mul(&w), s);
        assert_eq!(s[(0, 0)], Int::from(2));
        assert_eq!(s[(1, 1)], Int::from(4));
        assert_eq!(u.det().abs(), Int::one());
        assert_eq!(w.det().abs(), Int::one());
    }

    #[test]
    fn kernel_symmetric_pair() {
        let m = im(&[&[1, 1]]);
        assert_eq!(kernel_basis(&m), vec![int_vec(&[1, -1])]);
    }

    #[test]
    fn kernel_of_identity_is_empty() {
        assert!(kernel_basis(&IntMatrix::identity(3)).is_empty());
    }

    #[test]
    fn kernel_of_empty_matrix_is_full() {
        let m = IntMatrix::zero(0, 2);
        assert_eq!(kernel_basis(&m), vec![int_vec(&[0, 1]), int_vec(&[1, 0])]);
    }

    #[test]
    fn solve_identity_and_inconsistent() {
        let a = RatMatrix::identity(3);
        let b = rat_vec(&[4, -1, 7]);
        assert_eq!(solve_rational(&a, &b), Some(b.clone()));

        let a = RatMatrix::from_int_rows(vec![int_vec(&[1, 0]), int_vec(&[1, 0])]);
        assert_eq!(solve_rational(&a, &rat_vec(&[1, 2])), None);
    }

    #[test]
    fn solve_cartier_datum_on_p2_cone() {
        // rays e1, e2 of the P^2 fan; a = (1,1) on those rays
        let a = RatMatrix::from_int_rows(vec![int_vec(&[1, 0]), int_vec(&[0, 1])]);
        let b = rat_vec(&[-1, -1]);
        let u = solve_rational(&a, &b).unwrap();
        assert_eq!(a.mul_vec(&u), b);
        assert_eq!(u, rat_vec(&[-1, -1]));
    }

    #[test]
    fn primitive_examples() {
        assert_eq!(primitive(&int_vec(&[2, 4, 6])).unwrap(), int_vec(&[1, 2, 3]));
        assert_eq!(primitive(&int_vec(&[0, -3])).unwrap(), int_vec(&[0, -1]));
        assert_eq!(primitive(&int_vec(&[0, 0])), Err(LinError::ZeroVector));
    }

    #[test]
    fn rref_is_canonical() {
        let rows = vec![rat_vec(&[2, 4, 0]), rat_vec(&[1, 2, 1])];
        let (r1, _) = rref(rows);
        let rows = vec![rat_vec(&[1, 2, 1]), rat_vec(&[3, 6, 1]), rat_vec(&[4, 8, 2])];
        let (r2, _) = rref(rows);
        assert_eq!(r1, r2);
    }

    fn small_matrix() -> impl Strategy<Value = IntMatrix> {
        ((1usize..5, 1usize..5)).prop_flat_map(|(r, c)| {
            proptest::collection::vec(-9i64..10, r * c).prop_map(move |xs| IntMatrix {
                rows: r,
                cols: c,
                entries: xs.into_iter().map(Int::from).collect(),
            })
        })
    }

    proptest! {
        #[test]
        fn snf_factorization_holds(m in small_matrix()) {
            let (s, u, w) = smith_normal_form(&m);
            prop_assert_eq!(u.mul(&m).mul(&w), s.clone());
            prop_assert!(s.is_diagonal());
            prop_assert_eq!(u.det().abs(), Int::one());
            prop_assert_eq!(w.det().abs(), Int::one());
            // divisibility chain
            let d = m.rows.min(m.cols);
            for i in 0..d.saturating_sub(1) {
                if !s[(i + 1, i + 1)].is_zero() {
                    prop_assert!(!s[(i, i)].is_zero());
                }
                if !s[(i, i)].is_zero() {
                    prop_assert!(s[(i + 1, i + 1)].mod_floor(&s[(i, i)]).is_zero());
                }
            }
        }

        #[test]
        fn kernel_vectors_annihilate_and_saturate(m in small_matrix()) {
            let basis = kernel_basis(&m);
            for v in &basis {
                prop_assert!(m.mul_vec(v).iter().all(Zero::is_zero));
            }
            prop_assert_eq!(basis.len(), m.cols - m.rank());
            // saturation: a random small integer kernel element must be an
            // integer combination of the basis
            if !basis.is_empty() {
                let combo: IntVec = (0..m.cols)
                    .map(|j| basis.iter().enumerate()
                        .map(|(k, b)| Int::from(k as i64 + 2) * &b[j])
                        .sum())
                    .collect();
                let mat = RatMatrix::from_int_rows(basis.clone()).transpose();
                let sol = solve_rational(&mat, &int_to_rat_vec(&combo)).unwrap();
                prop_assert!(sol.iter().all(|x| x.is_integer()));
            }
        }

        #[test]
        fn primitive_is_idempotent(v in proptest::collection::vec(-20i64..21, 1..6)) {
            prop_assume!(v.iter().any(|&x| x != 0));
            let v = int_vec(&v);
            let p = primitive(&v).unwrap();
            prop_assert_eq!(primitive(&p).unwrap(), p.clone());
            let mut g = Int::zero();
            for x in &p { g = g.gcd(x); }
            prop_assert_eq!(g, Int::one());
        }
    }
}
