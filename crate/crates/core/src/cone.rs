//! Rational polyhedral cones held as a synchronized dual pair: extreme
//! generators plus lineality on one side, irredundant facet inequalities
//! plus equations on the other.
//!
//! Conversion runs the double description method in exact integer
//! arithmetic. Equations are substituted away first and the lineality space
//! is split off, so the incremental insertion only ever sees a pointed
//! full-rank system. Adjacency of rays is decided by a rank test on the
//! common tight rows, with bitset prefilters in front of it.
//!
//! Every cone is canonicalized on construction: generators and facets are
//! primitive integer vectors reduced modulo the lineality/equation space and
//! sorted lexicographically; lineality and equation spaces are stored as
//! primitive reduced-row-echelon bases. Cone equality is plain structural
//! equality.

use crate::exactlin::{
    dot_int, int_to_rat_vec, kernel_basis, primitive, rank_int_rows_capped, rat_to_primitive_int,
    rref, IntMatrix, IntVec, Rat, RatMatrix, RatVec,
};
use num::{BigInt, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ConeError {
    #[error("vector has dimension {got}, ambient dimension is {expected}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("cannot intersect cones of different ambient dimensions")]
    MixedAmbient,
}

/// Outcome of comparing two cones as sets.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConeOrdering {
    Equal,
    AStrictSubset,
    BStrictSubset,
    Incomparable,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyCone {
    pub ambient_dim: usize,
    /// Extreme ray representatives modulo lineality; primitive, sorted.
    pub generators: Vec<IntVec>,
    /// Primitive RREF basis of the lineality space.
    pub lineality: Vec<IntVec>,
    /// Irredundant facet normals (`<f, x> >= 0`), reduced modulo the
    /// equations; primitive, sorted.
    pub facets: Vec<IntVec>,
    /// Primitive RREF basis of the annihilator of the span.
    pub equations: Vec<IntVec>,
}

impl PolyCone {
    /// Smallest closed convex cone containing `vectors` and `±free_vectors`.
    pub fn positive_hull(
        vectors: &[IntVec],
        free_vectors: &[IntVec],
        ambient_dim: usize,
    ) -> Result<PolyCone, ConeError> {
        check_dims(vectors, ambient_dim)?;
        check_dims(free_vectors, ambient_dim)?;
        Ok(from_generators(vectors, free_vectors, ambient_dim))
    }

    pub fn positive_hull_rat(
        vectors: &[RatVec],
        free_vectors: &[RatVec],
        ambient_dim: usize,
    ) -> Result<PolyCone, ConeError> {
        let ints: Vec<IntVec> = vectors.iter().map(|v| rat_to_primitive_int(v)).collect();
        let frees: Vec<IntVec> = free_vectors.iter().map(|v| rat_to_primitive_int(v)).collect();
        PolyCone::positive_hull(&ints, &frees, ambient_dim)
    }

    /// Cone `{x : <f, x> >= 0 for all facets, <e, x> = 0 for all equations}`.
    pub fn from_inequalities(
        ineqs: &[IntVec],
        eqs: &[IntVec],
        ambient_dim: usize,
    ) -> Result<PolyCone, ConeError> {
        check_dims(ineqs, ambient_dim)?;
        check_dims(eqs, ambient_dim)?;
        Ok(from_inequalities(ineqs, eqs, ambient_dim))
    }

    pub fn zero(ambient_dim: usize) -> PolyCone {
        from_generators(&[], &[], ambient_dim)
    }

    /// Cone of common points, by concatenating the H-descriptions.
    pub fn intersect(cones: &[&PolyCone]) -> Result<PolyCone, ConeError> {
        let Some(first) = cones.first() else {
            return Err(ConeError::MixedAmbient);
        };
        let dim = first.ambient_dim;
        if cones.iter().any(|c| c.ambient_dim != dim) {
            return Err(ConeError::MixedAmbient);
        }
        let mut ineqs = Vec::new();
        let mut eqs = Vec::new();
        for c in cones {
            ineqs.extend(c.facets.iter().cloned());
            eqs.extend(c.equations.iter().cloned());
        }
        Ok(from_inequalities(&ineqs, &eqs, dim))
    }

    pub fn contains(&self, x: &[BigInt]) -> bool {
        x.len() == self.ambient_dim
            && self.facets.iter().all(|f| !dot_int(f, x).is_negative())
            && self.equations.iter().all(|e| dot_int(e, x).is_zero())
    }

    pub fn contains_rat(&self, x: &[Rat]) -> bool {
        if x.iter().all(Zero::is_zero) {
            return true;
        }
        self.contains(&rat_to_primitive_int(x))
    }

    /// Strict inequality on every facet, equality on every equation.
    pub fn contains_in_relint(&self, x: &[BigInt]) -> bool {
        x.len() == self.ambient_dim
            && self.facets.iter().all(|f| dot_int(f, x).is_positive())
            && self.equations.iter().all(|e| dot_int(e, x).is_zero())
    }

    /// A point of the relative interior: the sum of the canonical
    /// generators. `None` only for the zero cone.
    pub fn relint_point(&self) -> Option<IntVec> {
        if self.generators.is_empty() && self.lineality.is_empty() {
            return None;
        }
        let mut p = vec![BigInt::zero(); self.ambient_dim];
        for g in &self.generators {
            for (a, b) in p.iter_mut().zip(g) {
                *a += b;
            }
        }
        Some(p)
    }

    pub fn dim(&self) -> usize {
        self.ambient_dim - self.equations.len()
    }

    pub fn is_zero_cone(&self) -> bool {
        self.generators.is_empty() && self.lineality.is_empty()
    }

    /// Set containment both ways, decided by membership of generators and
    /// lineality basis vectors.
    pub fn compare(&self, other: &PolyCone) -> ConeOrdering {
        if self == other {
            return ConeOrdering::Equal;
        }
        let a_in_b = self.subset_of(other);
        let b_in_a = other.subset_of(self);
        match (a_in_b, b_in_a) {
            (true, true) => ConeOrdering::Equal,
            (true, false) => ConeOrdering::AStrictSubset,
            (false, true) => ConeOrdering::BStrictSubset,
            (false, false) => ConeOrdering::Incomparable,
        }
    }

    pub fn subset_of(&self, other: &PolyCone) -> bool {
        self.generators.iter().all(|g| other.contains(g))
            && self.lineality.iter().all(|l| {
                let neg: IntVec = l.iter().map(|x| -x.clone()).collect();
                other.contains(l) && other.contains(&neg)
            })
    }

    /// A generator of `self` outside `other`, witnessing non-containment.
    pub fn witness_outside(&self, other: &PolyCone) -> Option<IntVec> {
        for g in &self.generators {
            if !other.contains(g) {
                return Some(g.clone());
            }
        }
        for l in &self.lineality {
            if !other.contains(l) {
                return Some(l.clone());
            }
            let neg: IntVec = l.iter().map(|x| -x.clone()).collect();
            if !other.contains(&neg) {
                return Some(neg);
            }
        }
        None
    }

    /// Image under a linear map given by a rational matrix.
    pub fn linear_image(&self, map: &RatMatrix) -> Result<PolyCone, ConeError> {
        if map.cols != self.ambient_dim {
            return Err(ConeError::DimensionMismatch {
                expected: self.ambient_dim,
                got: map.cols,
            });
        }
        let mut gens = Vec::new();
        for g in &self.generators {
            let img = map.mul_vec(&int_to_rat_vec(g));
            if !img.iter().all(Zero::is_zero) {
                gens.push(rat_to_primitive_int(&img));
            }
        }
        let mut lins = Vec::new();
        for l in &self.lineality {
            let img = map.mul_vec(&int_to_rat_vec(l));
            if !img.iter().all(Zero::is_zero) {
                lins.push(rat_to_primitive_int(&img));
            }
        }
        Ok(from_generators(&gens, &lins, map.rows))
    }
}

fn check_dims(vs: &[IntVec], dim: usize) -> Result<(), ConeError> {
    match vs.iter().find(|v| v.len() != dim) {
        Some(v) => Err(ConeError::DimensionMismatch { expected: dim, got: v.len() }),
        None => Ok(()),
    }
}

// ---------------------------------------------------------------------------
// canonicalization helpers

/// RREF basis of the row span, scaled back to primitive integer rows.
pub(crate) fn rref_int_rows(rows: &[IntVec]) -> Vec<IntVec> {
    let rat_rows: Vec<RatVec> = rows.iter().map(|r| int_to_rat_vec(r)).collect();
    let (reduced, _) = rref(rat_rows);
    reduced.iter().map(|r| rat_to_primitive_int(r)).collect()
}

/// Clears the pivot coordinates of `v` against an RREF row basis; the result
/// is the canonical representative of `v` modulo the row span.
pub(crate) fn reduce_mod_rows(v: &[BigInt], rref_rows: &[IntVec]) -> IntVec {
    if rref_rows.is_empty() {
        return v.to_vec();
    }
    let mut x = int_to_rat_vec(v);
    for row in rref_rows {
        let p = row
            .iter()
            .position(|c| !c.is_zero())
            .expect("RREF rows are nonzero");
        if x[p].is_zero() {
            continue;
        }
        let f = &x[p] / Rat::from_integer(row[p].clone());
        for (xj, rj) in x.iter_mut().zip(row) {
            let d = &f * Rat::from_integer(rj.clone());
            *xj -= d;
        }
    }
    if x.iter().all(Zero::is_zero) {
        vec![BigInt::zero(); v.len()]
    } else {
        rat_to_primitive_int(&x)
    }
}

fn primitive_dedup_sorted(rows: &[IntVec]) -> Vec<IntVec> {
    let mut out: Vec<IntVec> = rows
        .iter()
        .filter(|r| r.iter().any(|x| !x.is_zero()))
        .map(|r| primitive(r).expect("nonzero"))
        .collect();
    out.sort();
    out.dedup();
    out
}

/// Basis of `{f : <f, v> = 0 for all v}`, canonical.
fn annihilator(vectors: &[IntVec], dim: usize) -> Vec<IntVec> {
    if vectors.is_empty() {
        return rref_int_rows(&IntMatrix::identity(dim).row_vecs());
    }
    let m = IntMatrix::from_rows(vectors.to_vec());
    rref_int_rows(&kernel_basis(&m))
}

// ---------------------------------------------------------------------------
// construction

fn from_inequalities(ineqs: &[IntVec], eqs: &[IntVec], dim: usize) -> PolyCone {
    let (rays, lin) = dd_core(ineqs, eqs, dim);
    let lineality = rref_int_rows(&lin);
    let mut generators: Vec<IntVec> = rays
        .iter()
        .map(|r| reduce_mod_rows(r, &lineality))
        .filter(|r| r.iter().any(|x| !x.is_zero()))
        .collect();
    generators.sort();
    generators.dedup();

    let span: Vec<IntVec> = generators.iter().chain(&lineality).cloned().collect();
    let equations = annihilator(&span, dim);
    let facets = select_facets(ineqs, &generators, &lineality, &equations, dim);
    PolyCone { ambient_dim: dim, generators, lineality, facets, equations }
}

fn from_generators(gens_in: &[IntVec], free_in: &[IntVec], dim: usize) -> PolyCone {
    // The dual cone {f : <g, f> >= 0, <l, f> = 0} has the facets of the
    // primal as its extreme rays and the equations as its lineality.
    let (dual_rays, dual_lin) = dd_core(gens_in, free_in, dim);
    let equations = rref_int_rows(&dual_lin);
    let mut facets: Vec<IntVec> = dual_rays
        .iter()
        .map(|r| reduce_mod_rows(r, &equations))
        .filter(|r| r.iter().any(|x| !x.is_zero()))
        .collect();
    facets.sort();
    facets.dedup();

    let constraint_rows: Vec<IntVec> = facets.iter().chain(&equations).cloned().collect();
    let lineality = if constraint_rows.is_empty() {
        rref_int_rows(&IntMatrix::identity(dim).row_vecs())
    } else {
        rref_int_rows(&kernel_basis(&IntMatrix::from_rows(constraint_rows)))
    };

    // Every extreme ray of the cone lies along an input generator; keep the
    // inputs whose minimal face is one-dimensional modulo lineality.
    let cone_dim = dim - equations.len();
    let lin_dim = lineality.len();
    let mut generators = Vec::new();
    if cone_dim > lin_dim {
        for g in primitive_dedup_sorted(gens_in) {
            let reduced = reduce_mod_rows(&g, &lineality);
            if reduced.iter().all(Zero::is_zero) {
                continue;
            }
            let mut active: Vec<&[BigInt]> =
                facets.iter().filter(|f| dot_int(f, &g).is_zero()).map(|f| f.as_slice()).collect();
            for e in &equations {
                active.push(e.as_slice());
            }
            let target = dim - (lin_dim + 1);
            if rank_int_rows_capped(&active, target) == target {
                generators.push(reduced);
            }
        }
        generators.sort();
        generators.dedup();
    }
    PolyCone { ambient_dim: dim, generators, lineality, facets, equations }
}

/// Filters the candidate inequalities down to the irredundant facets of the
/// cone spanned by `gens` and `lin`: a candidate is a facet exactly when its
/// tight generators together with the lineality span one dimension less than
/// the cone.
fn select_facets(
    candidates: &[IntVec],
    gens: &[IntVec],
    lin: &[IntVec],
    equations: &[IntVec],
    dim: usize,
) -> Vec<IntVec> {
    let cone_dim = dim - equations.len();
    if cone_dim == 0 {
        return Vec::new();
    }
    let mut reduced: Vec<IntVec> = candidates
        .iter()
        .map(|f| reduce_mod_rows(f, equations))
        .filter(|f| f.iter().any(|x| !x.is_zero()))
        .collect();
    reduced.sort();
    reduced.dedup();

    let mut facets = Vec::new();
    for f in reduced {
        debug_assert!(gens.iter().all(|g| !dot_int(&f, g).is_negative()));
        debug_assert!(lin.iter().all(|l| dot_int(&f, l).is_zero()));
        let mut tight: Vec<&[BigInt]> =
            gens.iter().filter(|g| dot_int(&f, g).is_zero()).map(|g| g.as_slice()).collect();
        for l in lin {
            tight.push(l.as_slice());
        }
        let target = cone_dim - 1;
        if rank_int_rows_capped(&tight, target) == target {
            facets.push(f);
        }
    }
    facets
}

// ---------------------------------------------------------------------------
// double description core

/// V-description of `{x : <a, x> >= 0 for a in ineqs, <e, x> = 0 for e in
/// eqs}`: extreme rays and a lattice basis of the lineality space.
fn dd_core(ineqs: &[IntVec], eqs: &[IntVec], dim: usize) -> (Vec<IntVec>, Vec<IntVec>) {
    // restrict to the solution space of the equations
    let eq_rows = primitive_dedup_sorted(eqs);
    let subspace: Vec<IntVec> = if eq_rows.is_empty() {
        IntMatrix::identity(dim).row_vecs()
    } else {
        kernel_basis(&IntMatrix::from_rows(eq_rows))
    };
    if subspace.is_empty() {
        return (Vec::new(), Vec::new());
    }
    let basis = IntMatrix::from_cols(subspace.clone());
    let m = basis.cols;

    let mut restricted: Vec<IntVec> = Vec::new();
    for a in ineqs {
        let row: IntVec = (0..m).map(|j| dot_int(a, &basis.col(j))).collect();
        if row.iter().any(|x| !x.is_zero()) {
            restricted.push(primitive(&row).expect("nonzero"));
        }
    }
    restricted.sort();
    restricted.dedup();

    // split off the lineality of the restricted cone
    let lin_t: Vec<IntVec> = if restricted.is_empty() {
        IntMatrix::identity(m).row_vecs()
    } else {
        kernel_basis(&IntMatrix::from_rows(restricted.clone()))
    };
    let lineality: Vec<IntVec> = lin_t.iter().map(|l| basis.mul_vec(l)).collect();

    let (pointed_rows, to_t): (Vec<IntVec>, IntMatrix) = if lin_t.is_empty() {
        (restricted, IntMatrix::identity(m))
    } else {
        let complement = kernel_basis(&IntMatrix::from_rows(lin_t.clone()));
        if complement.is_empty() {
            return (Vec::new(), lineality);
        }
        let w = IntMatrix::from_cols(complement);
        let mut rows: Vec<IntVec> = restricted
            .iter()
            .map(|a| (0..w.cols).map(|j| dot_int(a, &w.col(j))).collect::<IntVec>())
            .filter(|r: &IntVec| r.iter().any(|x| !x.is_zero()))
            .map(|r| primitive(&r).expect("nonzero"))
            .collect();
        rows.sort();
        rows.dedup();
        (rows, w)
    };

    let rays_s = dd_pointed(&pointed_rows, to_t.cols);
    let rays: Vec<IntVec> = rays_s
        .iter()
        .map(|s| basis.mul_vec(&to_t.mul_vec(s)))
        .map(|r| primitive(&r).expect("rays are nonzero"))
        .collect();
    (rays, lineality)
}

/// Word-packed row set used for ray incidence bookkeeping.
#[derive(Clone, Debug, PartialEq, Eq)]
struct RowSet {
    words: Vec<u64>,
}

impl RowSet {
    fn new(n: usize) -> Self {
        RowSet { words: vec![0; n.div_ceil(64)] }
    }

    fn insert(&mut self, i: usize) {
        self.words[i / 64] |= 1 << (i % 64);
    }

    fn and(&self, other: &RowSet) -> RowSet {
        RowSet {
            words: self.words.iter().zip(&other.words).map(|(a, b)| a & b).collect(),
        }
    }

    fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    fn is_subset_of(&self, other: &RowSet) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    fn iter_indices(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(w, &bits)| {
            (0..64).filter(move |b| bits & (1 << b) != 0).map(move |b| w * 64 + b)
        })
    }
}

struct DdRay {
    vec: IntVec,
    tight: RowSet,
}

/// Incremental double description for a pointed cone: `rows` has trivial
/// kernel. Returns the extreme rays of `{s : rows * s >= 0}`.
fn dd_pointed(rows: &[IntVec], dim: usize) -> Vec<IntVec> {
    if dim == 0 {
        return Vec::new();
    }
    let n = rows.len();
    debug_assert!(n >= dim, "pointed cone needs at least dim constraints");

    // greedy independent subset for the initial simplicial cone
    let mut chosen: Vec<usize> = Vec::new();
    for (i, _) in rows.iter().enumerate() {
        if chosen.len() == dim {
            break;
        }
        let mut trial: Vec<&[BigInt]> = chosen.iter().map(|&k| rows[k].as_slice()).collect();
        trial.push(rows[i].as_slice());
        if rank_int_rows_capped(&trial, chosen.len() + 1) == chosen.len() + 1 {
            chosen.push(i);
        }
    }
    assert_eq!(chosen.len(), dim, "constraint matrix must have full column rank");

    let sub = RatMatrix::from_int_rows(chosen.iter().map(|&k| rows[k].clone()).collect());
    let mut rays: Vec<DdRay> = Vec::with_capacity(dim);
    for (j, _) in chosen.iter().enumerate() {
        let mut e = vec![Rat::zero(); dim];
        e[j] = num::One::one();
        let sol = crate::exactlin::solve_rational(&sub, &e).expect("invertible basis block");
        let vec = rat_to_primitive_int(&sol);
        let mut tight = RowSet::new(n);
        for (i, &k) in chosen.iter().enumerate() {
            if i != j {
                tight.insert(k);
            }
        }
        rays.push(DdRay { vec, tight });
    }

    let chosen_mask: Vec<bool> = {
        let mut mask = vec![false; n];
        for &k in &chosen {
            mask[k] = true;
        }
        mask
    };

    for q in 0..n {
        if chosen_mask[q] || rays.is_empty() {
            continue;
        }
        let h = &rows[q];
        let vals: Vec<BigInt> = rays.iter().map(|r| dot_int(h, &r.vec)).collect();
        if vals.iter().all(|v| !v.is_negative()) {
            for (r, v) in rays.iter_mut().zip(&vals) {
                if v.is_zero() {
                    r.tight.insert(q);
                }
            }
            continue;
        }

        let pos: Vec<usize> = (0..rays.len()).filter(|&i| vals[i].is_positive()).collect();
        let neg: Vec<usize> = (0..rays.len()).filter(|&i| vals[i].is_negative()).collect();

        let mut fresh: Vec<DdRay> = Vec::new();
        for &ip in &pos {
            for &im in &neg {
                let common = rays[ip].tight.and(&rays[im].tight);
                if common.count() + 2 < dim {
                    continue;
                }
                // cheap exactness filter: a third ray tight on everything
                // both are tight on rules the pair out
                if rays.iter().enumerate().any(|(k, r)| {
                    k != ip && k != im && common.is_subset_of(&r.tight)
                }) {
                    continue;
                }
                // decisive rank test on the common tight rows
                let tight_rows: Vec<&[BigInt]> =
                    common.iter_indices().map(|i| rows[i].as_slice()).collect();
                if rank_int_rows_capped(&tight_rows, dim - 2) != dim - 2 {
                    continue;
                }
                let sp = &vals[ip];
                let sm = &vals[im];
                let combo: IntVec = rays[im]
                    .vec
                    .iter()
                    .zip(&rays[ip].vec)
                    .map(|(rm, rp)| sp * rm - sm * rp)
                    .collect();
                let vec = primitive(&combo).expect("combination of independent rays");
                let mut tight = common;
                tight.insert(q);
                fresh.push(DdRay { vec, tight });
            }
        }

        let mut kept: Vec<DdRay> = Vec::with_capacity(pos.len() + fresh.len());
        for (i, r) in rays.into_iter().enumerate() {
            match vals[i].sign() {
                num::bigint::Sign::Plus => kept.push(r),
                num::bigint::Sign::NoSign => {
                    let mut r = r;
                    r.tight.insert(q);
                    kept.push(r);
                }
                num::bigint::Sign::Minus => {}
            }
        }
        kept.extend(fresh);
        rays = kept;
    }

    rays.into_iter().map(|r| r.vec).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::int_vec;

    fn iv(rows: &[&[i64]]) -> Vec<IntVec> {
        rows.iter().map(|r| int_vec(r)).collect()
    }

    #[test]
    fn orthant_from_generators() {
        let c = PolyCone::positive_hull(&iv(&[&[1, 0], &[0, 1]]), &[], 2).unwrap();
        assert_eq!(c.generators, iv(&[&[0, 1], &[1, 0]]));
        assert_eq!(c.facets, iv(&[&[0, 1], &[1, 0]]));
        assert!(c.lineality.is_empty());
        assert!(c.equations.is_empty());
    }

    #[test]
    fn line_from_free_vector() {
        let c = PolyCone::positive_hull(&[], &iv(&[&[1, 0]]), 2).unwrap();
        assert!(c.generators.is_empty());
        assert_eq!(c.lineality, iv(&[&[1, 0]]));
        assert!(c.facets.is_empty());
        assert_eq!(c.equations, iv(&[&[0, 1]]));
    }

    #[test]
    fn halfplane_has_one_facet() {
        let c = PolyCone::positive_hull(&iv(&[&[1, 1]]), &iv(&[&[1, 0]]), 2).unwrap();
        assert_eq!(c.lineality, iv(&[&[1, 0]]));
        assert_eq!(c.generators, iv(&[&[0, 1]]));
        assert_eq!(c.facets, iv(&[&[0, 1]]));
        assert!(c.equations.is_empty());
    }

    #[test]
    fn wedge_from_inequalities() {
        let c = PolyCone::from_inequalities(&iv(&[&[1, 1], &[1, -1]]), &[], 2).unwrap();
        assert_eq!(c.generators, iv(&[&[1, -1], &[1, 1]]));
    }

    #[test]
    fn roundtrip_is_identity() {
        let h = PolyCone::from_inequalities(&iv(&[&[1, 0, 0], &[0, 1, 0], &[1, 1, -1]]), &[], 3)
            .unwrap();
        let v = PolyCone::positive_hull(&h.generators, &h.lineality, 3).unwrap();
        assert_eq!(h, v);
    }

    #[test]
    fn intersect_orthant_with_halfplane() {
        let orthant = PolyCone::positive_hull(&iv(&[&[1, 0], &[0, 1]]), &[], 2).unwrap();
        let half = PolyCone::from_inequalities(&iv(&[&[-1, 1]]), &[], 2).unwrap();
        let c = PolyCone::intersect(&[&orthant, &half]).unwrap();
        assert_eq!(c.generators, iv(&[&[0, 1], &[1, 1]]));
    }

    #[test]
    fn intersect_is_idempotent_and_commutative() {
        let a = PolyCone::positive_hull(&iv(&[&[1, 0], &[1, 2]]), &[], 2).unwrap();
        let b = PolyCone::positive_hull(&iv(&[&[0, 1], &[2, 1]]), &[], 2).unwrap();
        assert_eq!(PolyCone::intersect(&[&a, &a]).unwrap(), a);
        assert_eq!(
            PolyCone::intersect(&[&a, &b]).unwrap(),
            PolyCone::intersect(&[&b, &a]).unwrap()
        );
    }

    #[test]
    fn membership() {
        let orthant = PolyCone::positive_hull(&iv(&[&[1, 0], &[0, 1]]), &[], 2).unwrap();
        assert!(orthant.contains(&int_vec(&[1, 2])));
        assert!(!orthant.contains(&int_vec(&[-1, 0])));
        assert!(orthant.contains(&int_vec(&[0, 0])));
    }

    #[test]
    fn relint_points() {
        let orthant = PolyCone::positive_hull(&iv(&[&[1, 0], &[0, 1]]), &[], 2).unwrap();
        assert_eq!(orthant.relint_point(), Some(int_vec(&[1, 1])));
        assert_eq!(PolyCone::zero(2).relint_point(), None);
    }

    #[test]
    fn compare_verdicts() {
        let orthant = PolyCone::positive_hull(&iv(&[&[1, 0], &[0, 1]]), &[], 2).unwrap();
        let wedge = PolyCone::positive_hull(&iv(&[&[1, 0], &[1, 1]]), &[], 2).unwrap();
        let left = PolyCone::positive_hull(&iv(&[&[-1, 0], &[0, 1]]), &[], 2).unwrap();
        assert_eq!(orthant.compare(&orthant), ConeOrdering::Equal);
        assert_eq!(wedge.compare(&orthant), ConeOrdering::AStrictSubset);
        assert_eq!(orthant.compare(&wedge), ConeOrdering::BStrictSubset);
        assert_eq!(wedge.compare(&left), ConeOrdering::Incomparable);
    }

    #[test]
    fn full_space_and_zero_cone() {
        let full = PolyCone::from_inequalities(&[], &[], 3).unwrap();
        assert_eq!(full.lineality.len(), 3);
        assert!(full.facets.is_empty() && full.equations.is_empty());

        let zero = PolyCone::zero(3);
        assert!(zero.is_zero_cone());
        assert_eq!(zero.equations.len(), 3);
        assert_eq!(zero.dim(), 0);
    }

    #[test]
    fn implicit_equality_detected() {
        // x >= 0 and -x >= 0 force the equation x = 0
        let c = PolyCone::from_inequalities(&iv(&[&[1, 0], &[-1, 0]]), &[], 2).unwrap();
        assert_eq!(c.equations, iv(&[&[1, 0]]));
        assert_eq!(c.lineality, iv(&[&[0, 1]]));
        assert!(c.generators.is_empty());
        assert!(c.facets.is_empty());
    }

    #[test]
    fn linear_image_projects() {
        let orthant = PolyCone::positive_hull(&iv(&[&[1, 0], &[0, 1]]), &[], 2).unwrap();
        let id = RatMatrix::identity(2);
        assert_eq!(orthant.linear_image(&id).unwrap(), orthant);
        let zero = RatMatrix::zero(2, 2);
        assert!(orthant.linear_image(&zero).unwrap().is_zero_cone());
    }

    #[test]
    fn lineality_representatives_are_reduced() {
        // generators not orthogonal to the lineality still canonicalize
        let c = PolyCone::positive_hull(&iv(&[&[1, 1]]), &iv(&[&[1, 0]]), 2).unwrap();
        let d = PolyCone::positive_hull(&iv(&[&[0, 1], &[3, 5]]), &iv(&[&[-2, 0]]), 2).unwrap();
        assert_eq!(c, d);
    }
}
