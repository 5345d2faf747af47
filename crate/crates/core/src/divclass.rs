//! Divisors on a toric variety: the class space, Cartier data, the
//! piecewise linear function of a divisor, pullbacks to orbit closures, and
//! effectiveness of classes.
//!
//! Everything lives in Q-divisors and the real class space. All the cones
//! downstream are closed rational cones, so Q-Cartier data suffices and
//! integrality of the per-cone linear functionals is never needed.

use crate::cone::{ConeError, PolyCone};
use crate::exactlin::{
    dot_rat, int_to_rat_vec, smith_normal_form, solve_rational, Int, IntMatrix, IntVec,
    Rat, RatMatrix, RatVec,
};
use crate::fan::{ConeRef, Fan, FanError, QuotientStar};
use crate::lp::{feasibility, Constraint, Feasibility};
use num::Zero;
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum DivisorError {
    #[error("divisor has {got} coefficients, fan has {expected} rays")]
    CoefficientCount { expected: usize, got: usize },
    #[error("rays of the fan do not span the ambient space")]
    RaysDoNotSpan,
    #[error("point lies outside the support of the fan")]
    OutsideSupport,
    #[error("divisor is not Q-Cartier on the relevant cones")]
    NotQCartier,
    #[error(transparent)]
    Fan(#[from] FanError),
    #[error(transparent)]
    Cone(#[from] ConeError),
}

/// A torus-invariant Q-divisor, one coefficient per ray of the fan.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TDivisor {
    pub coeffs: RatVec,
}

impl TDivisor {
    pub fn new(coeffs: RatVec) -> TDivisor {
        TDivisor { coeffs }
    }

    pub fn zero(n_rays: usize) -> TDivisor {
        TDivisor { coeffs: vec![Rat::zero(); n_rays] }
    }

    /// The divisor of the character of `u`: coefficient `<u, v_i>` at the
    /// ray `i`.
    pub fn principal(fan: &Fan, u: &[Rat]) -> TDivisor {
        let coeffs = fan
            .rays()
            .iter()
            .map(|v| dot_rat(u, &int_to_rat_vec(v)))
            .collect();
        TDivisor { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> TDivisor {
        TDivisor { coeffs: crate::exactlin::rat_vec(coeffs) }
    }

    fn check(&self, fan: &Fan) -> Result<(), DivisorError> {
        if self.coeffs.len() != fan.n_rays() {
            return Err(DivisorError::CoefficientCount {
                expected: fan.n_rays(),
                got: self.coeffs.len(),
            });
        }
        Ok(())
    }
}

/// The projection from ray-coefficient space onto class coordinates. Its
/// kernel is exactly the lattice of principal divisors, so classes of
/// divisors are the images under `project`.
#[derive(Debug, Clone)]
pub struct ClassSpace {
    /// Integer projection matrix, `rank x n_rays`, rows of a unimodular
    /// matrix past the rank of the ray matrix.
    pub projection: IntMatrix,
    pub rank: usize,
}

impl ClassSpace {
    pub fn project(&self, d: &TDivisor) -> RatVec {
        self.projection.to_rat().mul_vec(&d.coeffs)
    }

    pub fn class_of_ray_divisor(&self, i: usize) -> IntVec {
        self.projection.col(i)
    }

    /// Some divisor with the given class.
    pub fn divisor_with_class(&self, class: &[Rat]) -> TDivisor {
        let a = self.projection.to_rat();
        let coeffs = solve_rational(&a, class).expect("projection is surjective");
        TDivisor { coeffs }
    }
}

/// One linear functional per maximal cone, encoding a piecewise linear
/// function with value `a_i` at each primitive ray generator.
#[derive(Debug, Clone)]
pub struct CartierData {
    /// `u(sigma)` per maximal cone, aligned with `fan.max_cones()`.
    pub cone_data: Vec<RatVec>,
}

/// Class space of the fan. Requires the rays to span the ambient space.
pub fn class_space(fan: &Fan) -> Result<ClassSpace, DivisorError> {
    let n = fan.lattice_dim();
    let ray_matrix = IntMatrix::from_rows(fan.rays().to_vec());
    if ray_matrix.rank() != n {
        return Err(DivisorError::RaysDoNotSpan);
    }
    // relations are the columns of the ray matrix viewed as functionals on
    // ray space; project along them
    let (s, u, _) = smith_normal_form(&ray_matrix);
    let rank = (0..n.min(fan.n_rays())).take_while(|&i| !s[(i, i)].is_zero()).count();
    debug_assert_eq!(rank, n);
    let rows: Vec<IntVec> = (rank..fan.n_rays()).map(|i| u.row(i).to_vec()).collect();
    let projection = IntMatrix::from_rows(rows);
    Ok(ClassSpace { projection, rank: fan.n_rays() - n })
}

/// Solves `<u(sigma), v_i> = -a_i` on each maximal cone. On the span of a
/// cone the solution is unique; the component in the SNF-adapted complement
/// is set to zero. Inconsistency means the divisor is not Q-Cartier, which
/// is reported as `None` rather than an error.
pub fn cartier_data(fan: &Fan, d: &TDivisor) -> Result<Option<CartierData>, DivisorError> {
    d.check(fan)?;
    let mut cone_data = Vec::new();
    for sigma in fan.max_cones() {
        match cone_functional(fan, &sigma.rays, d) {
            Some(u) => cone_data.push(u),
            None => return Ok(None),
        }
    }
    Ok(Some(CartierData { cone_data }))
}

/// The canonical `u` with `<u, v_i> = -a_i` for the rays in `cone`, or
/// `None` if the system is inconsistent.
pub(crate) fn cone_functional(fan: &Fan, cone: &[usize], d: &TDivisor) -> Option<RatVec> {
    let n = fan.lattice_dim();
    if cone.is_empty() {
        return Some(vec![Rat::zero(); n]);
    }
    let a = IntMatrix::from_cols(cone.iter().map(|&i| fan.ray(i).clone()).collect());
    let (s, u_mat, w) = smith_normal_form(&a);
    let rank = (0..a.rows.min(a.cols)).take_while(|&i| !s[(i, i)].is_zero()).count();
    // solve S^T z = -W^T a_cone, then u = U^T z with free z set to zero
    let rhs_full: RatVec = cone.iter().map(|&i| -d.coeffs[i].clone()).collect();
    let wt = w.to_rat().transpose();
    let target = wt.mul_vec(&rhs_full);
    let mut z = vec![Rat::zero(); n];
    for j in 0..cone.len() {
        if j < rank {
            z[j] = &target[j] / Rat::from_integer(s[(j, j)].clone());
        } else if !target[j].is_zero() {
            return None;
        }
    }
    let u = u_mat.to_rat().transpose().mul_vec(&z);
    debug_assert!(cone
        .iter()
        .all(|&i| dot_rat(&u, &int_to_rat_vec(fan.ray(i))) == -d.coeffs[i].clone()));
    Some(u)
}

/// Value of the piecewise linear function of `d` at `x`. The function takes
/// the value `a_i` at each `v_i` and is linear on every cone.
pub fn psi_eval(fan: &Fan, d: &TDivisor, x: &[Rat]) -> Result<Rat, DivisorError> {
    d.check(fan)?;
    for (idx, sigma) in fan.max_cones().iter().enumerate() {
        if fan.max_cone_geometry(idx).contains_rat(x) {
            let u = cone_functional(fan, &sigma.rays, d).ok_or(DivisorError::NotQCartier)?;
            return Ok(-dot_rat(&u, x));
        }
    }
    Err(DivisorError::OutsideSupport)
}

/// Pullback of `d` to the orbit closure of `sigma`: the divisor on the
/// quotient star fan with coefficient `(a_i + <u(sigma), v_i>) / c_i` at the
/// ray of each `tau` in `star1(sigma)`, for any `i` in `tau \ sigma`. The
/// choice of `i` is checked to not matter.
pub fn pullback_orbit(
    fan: &Fan,
    sigma: &ConeRef,
    d: &TDivisor,
) -> Result<(TDivisor, QuotientStar), DivisorError> {
    d.check(fan)?;
    let q = fan.quotient_star(sigma)?;
    let u = cone_functional(fan, &q.base.rays, d).ok_or(DivisorError::NotQCartier)?;
    let mut coeffs = Vec::with_capacity(q.star1.len());
    for tau in &q.star1 {
        // Q-Cartier on the star: each tau must admit its own functional
        if cone_functional(fan, &tau.rays, d).is_none() {
            return Err(DivisorError::NotQCartier);
        }
        let extras: Vec<usize> = tau
            .rays
            .iter()
            .copied()
            .filter(|i| q.base.rays.binary_search(i).is_err())
            .collect();
        let mut value: Option<Rat> = None;
        for &i in &extras {
            let num = &d.coeffs[i] + dot_rat(&u, &int_to_rat_vec(fan.ray(i)));
            let b = num / Rat::from_integer(q.multiplicities[&i].clone());
            match &value {
                Some(v) => assert_eq!(v, &b, "pullback coefficient depends on ray choice"),
                None => value = Some(b),
            }
        }
        coeffs.push(value.expect("star1 cone has a ray outside the base"));
    }
    Ok((TDivisor { coeffs }, q))
}

/// Is the class of `d` effective on the toric variety of `fan`? Feasibility
/// of `a_i + <u, v_i> >= 0` over all rays, with the witness `u` or a Farkas
/// certificate.
pub fn is_effective_class(fan: &Fan, d: &TDivisor) -> Result<Feasibility, DivisorError> {
    d.check(fan)?;
    let n = fan.lattice_dim();
    let cons: Vec<Constraint> = fan
        .rays()
        .iter()
        .enumerate()
        .map(|(i, v)| Constraint::Ge(int_to_rat_vec(v), -d.coeffs[i].clone()))
        .collect();
    Ok(feasibility(n, &cons))
}

/// Image of a cone in class coordinates under a linear map, e.g. the
/// pullback along an embedding into the Neron-Severi space of a subvariety.
pub fn map_class(map: &RatMatrix, cone: &PolyCone) -> Result<PolyCone, ConeError> {
    cone.linear_image(map)
}

/// A positive-determinant rational change of basis taking the canonical
/// class coordinates to prescribed target columns: solves
/// `t * source_col_i = target_col_i` for all `i` and verifies every column.
pub fn basis_change_matching(
    source_cols: &[RatVec],
    target_cols: &[RatVec],
) -> Option<RatMatrix> {
    let rho = source_cols.first()?.len();
    let out = target_cols.first()?.len();
    if source_cols.len() != target_cols.len() {
        return None;
    }
    // t is out x rho; each row r of t satisfies <t_r, source_col_i> = target_col_i[r]
    let a = RatMatrix::from_rows(source_cols.to_vec());
    let mut rows = Vec::with_capacity(out);
    for r in 0..out {
        let rhs: RatVec = target_cols.iter().map(|c| c[r].clone()).collect();
        let row = solve_rational(&a, &rhs)?;
        rows.push(row);
    }
    let t = RatMatrix::from_rows(rows);
    debug_assert_eq!(t.cols, rho);
    for (s, tgt) in source_cols.iter().zip(target_cols) {
        if &t.mul_vec(s) != tgt {
            return None;
        }
    }
    Some(t)
}

/// Keyed lookup for weights and table data: canonical key for a cone.
pub fn cone_key(rays: &[usize]) -> Vec<usize> {
    let mut k = rays.to_vec();
    k.sort_unstable();
    k
}

/// Per-cone rational data keyed by sorted ray sets, with exact-coverage
/// validation against a cone list.
pub fn align_by_cones(
    table: &BTreeMap<Vec<usize>, Rat>,
    cones: &[ConeRef],
) -> Option<Vec<Rat>> {
    if table.len() != cones.len() {
        return None;
    }
    cones.iter().map(|c| table.get(&c.rays).cloned()).collect()
}

/// Least common denominator scaling: the primitive integer vector along a
/// rational class, for building cones from class vectors.
pub fn class_to_int(class: &[Rat]) -> IntVec {
    if class.iter().all(Zero::is_zero) {
        vec![Int::zero(); class.len()]
    } else {
        crate::exactlin::rat_to_primitive_int(class)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::{int_vec, rat_vec};

    fn p2_fan() -> Fan {
        Fan::build(
            2,
            vec![int_vec(&[1, 0]), int_vec(&[0, 1]), int_vec(&[-1, -1])],
            vec![vec![0, 1], vec![1, 2], vec![0, 2]],
        )
        .unwrap()
    }

    fn p1_fan() -> Fan {
        Fan::build(1, vec![int_vec(&[1]), int_vec(&[-1])], vec![vec![0], vec![1]]).unwrap()
    }

    #[test]
    fn p2_class_space_has_rank_one() {
        let fan = p2_fan();
        let cs = class_space(&fan).unwrap();
        assert_eq!(cs.rank, 1);
        // all three ray classes agree up to sign pattern of the projection
        let d0 = cs.class_of_ray_divisor(0);
        let d1 = cs.class_of_ray_divisor(1);
        let d2 = cs.class_of_ray_divisor(2);
        assert_eq!(d0, d1);
        assert_eq!(d1, d2);
        assert!(!d0[0].is_zero());
    }

    #[test]
    fn projection_kills_principal_divisors() {
        let fan = p2_fan();
        let cs = class_space(&fan).unwrap();
        let p = TDivisor::principal(&fan, &rat_vec(&[3, -5]));
        assert!(cs.project(&p).iter().all(Zero::is_zero));
    }

    #[test]
    fn class_space_requires_spanning_rays() {
        let fan = Fan::build(2, vec![int_vec(&[1, 0]), int_vec(&[-1, 0])], vec![vec![0], vec![1]])
            .unwrap();
        assert!(matches!(class_space(&fan), Err(DivisorError::RaysDoNotSpan)));
    }

    #[test]
    fn zero_divisor_has_zero_cartier_data() {
        let fan = p2_fan();
        let d = TDivisor::zero(3);
        let cd = cartier_data(&fan, &d).unwrap().unwrap();
        assert!(cd.cone_data.iter().all(|u| u.iter().all(Zero::is_zero)));
    }

    #[test]
    fn simplicial_fan_every_divisor_cartier() {
        let fan = p2_fan();
        let d = TDivisor::from_ints(&[7, -3, 2]);
        assert!(cartier_data(&fan, &d).unwrap().is_some());
    }

    #[test]
    fn psi_defining_properties() {
        let fan = p2_fan();
        let d = TDivisor::from_ints(&[1, 1, 1]);
        for (i, v) in fan.rays().iter().enumerate() {
            let val = psi_eval(&fan, &d, &int_to_rat_vec(v)).unwrap();
            assert_eq!(val, d.coeffs[i]);
        }
        assert!(psi_eval(&fan, &d, &rat_vec(&[0, 0])).unwrap().is_zero());
        // ample divisor on P^2 at (1,1): the hand-solved Cartier datum gives 2
        assert_eq!(psi_eval(&fan, &d, &rat_vec(&[1, 1])).unwrap(), rat_vec(&[2])[0]);
    }

    #[test]
    fn psi_outside_support_rejected() {
        let fan = Fan::build(2, vec![int_vec(&[1, 0]), int_vec(&[0, 1])], vec![vec![0, 1]])
            .unwrap();
        let d = TDivisor::zero(2);
        assert!(matches!(
            psi_eval(&fan, &d, &rat_vec(&[-1, 0])),
            Err(DivisorError::OutsideSupport)
        ));
    }

    #[test]
    fn pullback_along_origin_is_identity() {
        let fan = p2_fan();
        let d = TDivisor::from_ints(&[2, 5, -1]);
        let origin = fan.cone_ref(&[]).unwrap();
        let (b, q) = pullback_orbit(&fan, &origin, &d).unwrap();
        // quotient rays follow the star1 order, which here is ray order
        assert_eq!(q.star1.len(), 3);
        assert_eq!(b.coeffs, d.coeffs);
    }

    #[test]
    fn pullback_of_principal_is_principal() {
        let fan = p2_fan();
        let u = rat_vec(&[2, -3]);
        let d = TDivisor::principal(&fan, &u);
        let sigma = fan.cone_ref(&[0]).unwrap();
        let (b, q) = pullback_orbit(&fan, &sigma, &d).unwrap();
        let qcs = class_space(&q.fan).unwrap();
        assert!(qcs.project(&b).iter().all(Zero::is_zero));
    }

    #[test]
    fn effectiveness_on_p1() {
        let fan = p1_fan();
        assert!(is_effective_class(&fan, &TDivisor::zero(2)).unwrap().is_feasible());
        // degree -1: infeasible
        let d = TDivisor::from_ints(&[1, -2]);
        assert!(!is_effective_class(&fan, &d).unwrap().is_feasible());
        let d = TDivisor::from_ints(&[1, -1]);
        assert!(is_effective_class(&fan, &d).unwrap().is_feasible());
    }

    #[test]
    fn divisor_with_class_round_trips() {
        let fan = p2_fan();
        let cs = class_space(&fan).unwrap();
        let class = rat_vec(&[5]);
        let d = cs.divisor_with_class(&class);
        assert_eq!(cs.project(&d), class);
    }

    #[test]
    fn basis_change_solves_and_verifies() {
        let src = vec![rat_vec(&[1, 0]), rat_vec(&[1, 1]), rat_vec(&[0, 1])];
        let tgt = vec![rat_vec(&[1, 0]), rat_vec(&[0, 1]), rat_vec(&[-1, 1])];
        let t = basis_change_matching(&src, &tgt).unwrap();
        for (s, g) in src.iter().zip(&tgt) {
            assert_eq!(&t.mul_vec(s), g);
        }
        // inconsistent targets are refused
        let bad = vec![rat_vec(&[1, 0]), rat_vec(&[0, 1]), rat_vec(&[5, 5])];
        assert!(basis_change_matching(&src, &bad).is_none());
    }
}
