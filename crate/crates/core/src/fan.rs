//! Rational polyhedral fans: rays, cones as ray-index sets, the face
//! lattice, stars, quotient star fans of orbit closures, and skeleta.
//!
//! Cones are stored by the indices of their extreme rays. Faces of
//! simplicial cones are plain subsets; faces of non-simplicial cones are
//! enumerated geometrically through the facet structure. A fan is immutable
//! after build and all derived data (face lattice, per-cone dual pairs) is
//! computed eagerly, so queries are read-only.

use crate::cone::{ConeError, PolyCone};
use crate::exactlin::{primitive, rank_int_rows_capped, smith_normal_form, Int, IntMatrix, IntVec};
use num::{Signed, Zero};
use std::collections::{BTreeMap, BTreeSet};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum FanError {
    #[error("ray {index} is zero")]
    ZeroRay { index: usize },
    #[error("ray {index} has dimension {got}, lattice dimension is {expected}")]
    RayDimension { index: usize, expected: usize, got: usize },
    #[error("rays {a} and {b} coincide after primitivization")]
    DuplicateRay { a: usize, b: usize },
    #[error("cone {cone} refers to ray index {index} out of range")]
    RayIndexOutOfRange { cone: usize, index: usize },
    #[error("cone {cone}: listed rays are not exactly the extreme rays of their hull")]
    RayNotExtreme { cone: usize },
    #[error("ray {index} is not used by any maximal cone")]
    UnusedRay { index: usize },
    #[error("cones {a:?} and {b:?} do not intersect in a common face")]
    OverlappingCones { a: Vec<usize>, b: Vec<usize> },
    #[error("not a cone of this fan: {rays:?}")]
    NotACone { rays: Vec<usize> },
    #[error("cone {rays:?} is maximal; its orbit closure is a torus")]
    MaximalCone { rays: Vec<usize> },
    #[error(transparent)]
    Cone(#[from] ConeError),
}

/// A cone of the fan, identified by its sorted ray-index set.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct ConeRef {
    pub rays: Vec<usize>,
    pub dim: usize,
}

#[derive(Debug, Clone)]
pub struct Fan {
    lattice_dim: usize,
    rays: Vec<IntVec>,
    max_cones: Vec<Vec<usize>>,
    /// Every face of every cone, mapped to its dimension.
    faces: BTreeMap<Vec<usize>, usize>,
    /// Dual pair for each maximal cone, aligned with `max_cones`.
    max_geometry: Vec<PolyCone>,
}

/// The fan of the orbit closure of a cone: the star, pushed to the quotient
/// lattice by the saturation of the cone's span.
#[derive(Debug, Clone)]
pub struct QuotientStar {
    pub base: ConeRef,
    /// Projection to the quotient lattice, SNF-adapted: rows of a unimodular
    /// matrix past the rank of the base cone's ray matrix.
    pub projection: IntMatrix,
    /// Cones of the star of dimension `dim(base) + 1`, sorted; these index
    /// the rays of the quotient fan.
    pub star1: Vec<ConeRef>,
    /// The induced fan in the quotient lattice.
    pub fan: Fan,
    /// For each parent ray `i` in `star1(base) \ base`: the positive integer
    /// `c_i` with `image(v_i) = c_i * e_tau`.
    pub multiplicities: BTreeMap<usize, Int>,
}

impl Fan {
    pub fn build(
        lattice_dim: usize,
        rays: Vec<IntVec>,
        max_cones: Vec<Vec<usize>>,
    ) -> Result<Fan, FanError> {
        Self::build_with(lattice_dim, rays, max_cones, false)
    }

    /// `validate` additionally runs the quadratic pairwise check that any
    /// two maximal cones intersect in a common face.
    pub fn build_with(
        lattice_dim: usize,
        rays: Vec<IntVec>,
        max_cones: Vec<Vec<usize>>,
        validate: bool,
    ) -> Result<Fan, FanError> {
        let mut prims = Vec::with_capacity(rays.len());
        for (index, r) in rays.iter().enumerate() {
            if r.len() != lattice_dim {
                return Err(FanError::RayDimension {
                    index,
                    expected: lattice_dim,
                    got: r.len(),
                });
            }
            let p = primitive(r).map_err(|_| FanError::ZeroRay { index })?;
            prims.push(p);
        }
        for a in 0..prims.len() {
            for b in a + 1..prims.len() {
                if prims[a] == prims[b] {
                    return Err(FanError::DuplicateRay { a, b });
                }
            }
        }

        let mut cones: Vec<Vec<usize>> = Vec::new();
        for (ci, c) in max_cones.iter().enumerate() {
            let mut c: Vec<usize> = c.clone();
            c.sort_unstable();
            c.dedup();
            if let Some(&bad) = c.iter().find(|&&i| i >= prims.len()) {
                return Err(FanError::RayIndexOutOfRange { cone: ci, index: bad });
            }
            cones.push(c);
        }
        // keep only inclusion-maximal listed cones
        cones.sort();
        cones.dedup();
        let cones: Vec<Vec<usize>> = cones
            .iter()
            .filter(|c| {
                !cones.iter().any(|d| {
                    d.len() > c.len() && c.iter().all(|i| d.binary_search(i).is_ok())
                })
            })
            .cloned()
            .collect();

        let mut used = vec![false; prims.len()];
        for c in &cones {
            for &i in c {
                used[i] = true;
            }
        }
        if let Some(index) = used.iter().position(|u| !u) {
            return Err(FanError::UnusedRay { index });
        }

        let mut max_geometry = Vec::with_capacity(cones.len());
        for (ci, c) in cones.iter().enumerate() {
            let vecs: Vec<IntVec> = c.iter().map(|&i| prims[i].clone()).collect();
            let hull = PolyCone::positive_hull(&vecs, &[], lattice_dim)?;
            let mut listed = vecs.clone();
            listed.sort();
            if hull.generators != listed {
                return Err(FanError::RayNotExtreme { cone: ci });
            }
            max_geometry.push(hull);
        }

        let mut faces: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
        faces.insert(Vec::new(), 0);
        for (ci, c) in cones.iter().enumerate() {
            collect_faces(&prims, c, &max_geometry[ci], &mut faces);
        }

        let fan = Fan { lattice_dim, rays: prims, max_cones: cones, faces, max_geometry };
        if validate {
            fan.validate_pairwise()?;
        }
        Ok(fan)
    }

    pub fn lattice_dim(&self) -> usize {
        self.lattice_dim
    }

    pub fn rays(&self) -> &[IntVec] {
        &self.rays
    }

    pub fn ray(&self, i: usize) -> &IntVec {
        &self.rays[i]
    }

    pub fn n_rays(&self) -> usize {
        self.rays.len()
    }

    pub fn max_cones(&self) -> Vec<ConeRef> {
        self.max_cones
            .iter()
            .map(|c| ConeRef { rays: c.clone(), dim: self.faces[c] })
            .collect()
    }

    pub fn max_cone_geometry(&self, idx: usize) -> &PolyCone {
        &self.max_geometry[idx]
    }

    pub fn contains_cone(&self, rays: &[usize]) -> bool {
        let mut key = rays.to_vec();
        key.sort_unstable();
        self.faces.contains_key(&key)
    }

    pub fn cone_ref(&self, rays: &[usize]) -> Result<ConeRef, FanError> {
        let mut key = rays.to_vec();
        key.sort_unstable();
        match self.faces.get(&key) {
            Some(&dim) => Ok(ConeRef { rays: key, dim }),
            None => Err(FanError::NotACone { rays: key }),
        }
    }

    /// All cones of the fan, sorted by ray set.
    pub fn all_cones(&self) -> Vec<ConeRef> {
        self.faces
            .iter()
            .map(|(rays, &dim)| ConeRef { rays: rays.clone(), dim })
            .collect()
    }

    /// The `k`-dimensional cones, sorted, deduplicated.
    pub fn cones_of_dim(&self, k: usize) -> Vec<ConeRef> {
        self.faces
            .iter()
            .filter(|&(_, &d)| d == k)
            .map(|(rays, &dim)| ConeRef { rays: rays.clone(), dim })
            .collect()
    }

    /// Dimension of the fan: the largest cone dimension.
    pub fn dim(&self) -> usize {
        self.faces.values().copied().max().unwrap_or(0)
    }

    pub fn is_pure(&self, d: usize) -> bool {
        self.max_cones.iter().all(|c| self.faces[c] == d)
    }

    /// All cones except the maximal ones (the cones of the subfan obtained
    /// by removing maximal cones), in the ambient fan's indexing.
    pub fn nonmaximal_cones(&self) -> Vec<ConeRef> {
        self.all_cones()
            .into_iter()
            .filter(|c| !self.max_cones.contains(&c.rays))
            .collect()
    }

    /// Cones of `star(sigma)` of dimension `dim(sigma) + 1`, together with
    /// the sorted union of their rays.
    pub fn star1(&self, sigma: &ConeRef) -> Result<(Vec<ConeRef>, Vec<usize>), FanError> {
        let sigma = self.cone_ref(&sigma.rays)?;
        let cones: Vec<ConeRef> = self
            .all_cones()
            .into_iter()
            .filter(|tau| {
                tau.dim == sigma.dim + 1
                    && sigma.rays.iter().all(|i| tau.rays.binary_search(i).is_ok())
            })
            .collect();
        let mut rays: Vec<usize> = cones.iter().flat_map(|c| c.rays.iter().copied()).collect();
        rays.sort_unstable();
        rays.dedup();
        Ok((cones, rays))
    }

    /// The fan of the orbit closure of `sigma` in the quotient lattice,
    /// with the SNF-adapted projection and per-ray multiplicities.
    pub fn quotient_star(&self, sigma: &ConeRef) -> Result<QuotientStar, FanError> {
        let base = self.cone_ref(&sigma.rays)?;
        if self.max_cones.contains(&base.rays) {
            return Err(FanError::MaximalCone { rays: base.rays });
        }
        let n = self.lattice_dim;
        let projection = if base.rays.is_empty() {
            IntMatrix::identity(n)
        } else {
            let cols: Vec<IntVec> = base.rays.iter().map(|&i| self.rays[i].clone()).collect();
            let a = IntMatrix::from_cols(cols);
            let (s, u, _) = smith_normal_form(&a);
            let rank = (0..a.rows.min(a.cols)).take_while(|&i| !s[(i, i)].is_zero()).count();
            let rows: Vec<IntVec> = (rank..n).map(|i| u.row(i).to_vec()).collect();
            IntMatrix::from_rows(rows)
        };

        let (star1, _) = self.star1(&base)?;
        let mut quotient_rays: Vec<IntVec> = Vec::with_capacity(star1.len());
        let mut multiplicities = BTreeMap::new();
        for tau in &star1 {
            let extras: Vec<usize> = tau
                .rays
                .iter()
                .copied()
                .filter(|i| base.rays.binary_search(i).is_err())
                .collect();
            let first_img = projection.mul_vec(&self.rays[extras[0]]);
            let e_tau = primitive(&first_img).expect("ray outside span of base");
            for &i in &extras {
                let img = projection.mul_vec(&self.rays[i]);
                let k = e_tau.iter().position(|x| !x.is_zero()).expect("primitive");
                let c = &img[k] / &e_tau[k];
                let scaled: IntVec = e_tau.iter().map(|x| x * &c).collect();
                assert!(
                    c.is_positive() && scaled == img,
                    "star ray image must be a positive multiple of the primitive quotient ray"
                );
                multiplicities.insert(i, c);
            }
            quotient_rays.push(e_tau);
        }

        let mut q_max: Vec<Vec<usize>> = Vec::new();
        for delta in &self.max_cones {
            if !base.rays.iter().all(|i| delta.binary_search(i).is_ok()) {
                continue;
            }
            let cone: Vec<usize> = star1
                .iter()
                .enumerate()
                .filter(|(_, tau)| tau.rays.iter().all(|i| delta.binary_search(i).is_ok()))
                .map(|(t, _)| t)
                .collect();
            q_max.push(cone);
        }
        if q_max.is_empty() {
            q_max.push(Vec::new());
        }
        let fan = Fan::build(n - base.dim, quotient_rays, q_max)?;
        Ok(QuotientStar { base, projection, star1, fan, multiplicities })
    }

    /// Subfan of the cones of dimension at most `k`.
    pub fn skeleton(&self, k: usize) -> Fan {
        let mut new_max: BTreeSet<Vec<usize>> = BTreeSet::new();
        for (rays, &dim) in &self.faces {
            if dim == k {
                new_max.insert(rays.clone());
            }
        }
        for c in &self.max_cones {
            if self.faces[c] < k {
                new_max.insert(c.clone());
            }
        }
        self.subfan(new_max.into_iter().collect())
    }

    /// The subfan with all maximal cones removed.
    pub fn remove_maximal(&self) -> Fan {
        let keep: Vec<ConeRef> = self.nonmaximal_cones();
        let mut new_max: Vec<Vec<usize>> = keep
            .iter()
            .filter(|c| {
                !keep.iter().any(|d| {
                    d.rays.len() > c.rays.len()
                        && c.rays.iter().all(|i| d.rays.binary_search(i).is_ok())
                })
            })
            .map(|c| c.rays.clone())
            .collect();
        if new_max.is_empty() {
            new_max.push(Vec::new());
        }
        self.subfan(new_max)
    }

    /// Builds a fan from a subset of this fan's cones, dropping (and
    /// reindexing away) rays that become unused.
    fn subfan(&self, cones: Vec<Vec<usize>>) -> Fan {
        let mut used: Vec<bool> = vec![false; self.rays.len()];
        for c in &cones {
            for &i in c {
                used[i] = true;
            }
        }
        let old_to_new: BTreeMap<usize, usize> = used
            .iter()
            .enumerate()
            .filter(|&(_, &u)| u)
            .map(|(i, _)| i)
            .enumerate()
            .map(|(new, old)| (old, new))
            .collect();
        let rays: Vec<IntVec> = (0..self.rays.len())
            .filter(|&i| used[i])
            .map(|i| self.rays[i].clone())
            .collect();
        let cones: Vec<Vec<usize>> = cones
            .iter()
            .map(|c| c.iter().map(|i| old_to_new[i]).collect())
            .collect();
        Fan::build(self.lattice_dim, rays, cones).expect("subfan of a valid fan")
    }

    fn validate_pairwise(&self) -> Result<(), FanError> {
        for a in 0..self.max_cones.len() {
            for b in a + 1..self.max_cones.len() {
                let meet =
                    PolyCone::intersect(&[&self.max_geometry[a], &self.max_geometry[b]])?;
                if !self.is_face_of(&meet, a) || !self.is_face_of(&meet, b) {
                    return Err(FanError::OverlappingCones {
                        a: self.max_cones[a].clone(),
                        b: self.max_cones[b].clone(),
                    });
                }
            }
        }
        Ok(())
    }

    /// Is `sub` a face of maximal cone `idx`? Decided by the smallest face
    /// of the cone containing a relative interior point of `sub`.
    fn is_face_of(&self, sub: &PolyCone, idx: usize) -> bool {
        let geom = &self.max_geometry[idx];
        let Some(x) = sub.relint_point() else {
            return true; // the origin is a face of every cone
        };
        if !geom.contains(&x) {
            return false;
        }
        let tight: Vec<&IntVec> = geom
            .facets
            .iter()
            .filter(|f| crate::exactlin::dot_int(f, &x).is_zero())
            .collect();
        let face_rays: Vec<IntVec> = self.max_cones[idx]
            .iter()
            .map(|&i| &self.rays[i])
            .filter(|v| tight.iter().all(|f| crate::exactlin::dot_int(f, v).is_zero()))
            .cloned()
            .collect();
        match PolyCone::positive_hull(&face_rays, &[], self.lattice_dim) {
            Ok(face) => face == *sub,
            Err(_) => false,
        }
    }
}

/// Inserts all faces of the cone with ray set `cone` into `faces`.
/// Simplicial cones contribute every subset; non-simplicial cones are
/// decomposed recursively through their facets.
fn collect_faces(
    rays: &[IntVec],
    cone: &[usize],
    geom: &PolyCone,
    faces: &mut BTreeMap<Vec<usize>, usize>,
) {
    let vecs: Vec<&[Int]> = cone.iter().map(|&i| rays[i].as_slice()).collect();
    let rank = rank_int_rows_capped(&vecs, cone.len());
    if rank == cone.len() {
        // simplicial: subsets are exactly the faces
        let k = cone.len();
        for mask in 0u64..(1 << k) {
            let subset: Vec<usize> =
                (0..k).filter(|&j| mask & (1 << j) != 0).map(|j| cone[j]).collect();
            let dim = subset.len();
            faces.entry(subset).or_insert(dim);
        }
    } else {
        faces.entry(cone.to_vec()).or_insert(rank);
        for f in &geom.facets {
            let sub: Vec<usize> = cone
                .iter()
                .copied()
                .filter(|&i| crate::exactlin::dot_int(f, &rays[i]).is_zero())
                .collect();
            if faces.contains_key(&sub) {
                continue;
            }
            let sub_vecs: Vec<IntVec> = sub.iter().map(|&i| rays[i].clone()).collect();
            let sub_geom = PolyCone::positive_hull(&sub_vecs, &[], rays[0].len())
                .expect("face of a valid cone");
            collect_faces(rays, &sub, &sub_geom, faces);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::int_vec;
    use num::One;

    pub(crate) fn p2_fan() -> Fan {
        Fan::build_with(
            2,
            vec![int_vec(&[1, 0]), int_vec(&[0, 1]), int_vec(&[-1, -1])],
            vec![vec![0, 1], vec![1, 2], vec![0, 2]],
            true,
        )
        .unwrap()
    }

    #[test]
    fn p2_builds_and_counts() {
        let fan = p2_fan();
        assert_eq!(fan.cones_of_dim(1).len(), 3);
        assert_eq!(fan.cones_of_dim(2).len(), 3);
        assert!(fan.is_pure(2));
        assert_eq!(fan.dim(), 2);
    }

    #[test]
    fn punctured_fan_is_pure_one_dimensional() {
        let fan = Fan::build_with(
            2,
            vec![int_vec(&[1, 0]), int_vec(&[0, 1]), int_vec(&[-1, 1]), int_vec(&[0, -1])],
            vec![vec![0], vec![1], vec![2], vec![3]],
            true,
        )
        .unwrap();
        assert!(fan.is_pure(1));
        let removed = fan.remove_maximal();
        assert_eq!(removed.n_rays(), 0);
        assert_eq!(removed.max_cones().len(), 1);
        assert_eq!(removed.max_cones()[0].rays, Vec::<usize>::new());
    }

    #[test]
    fn rays_are_primitivized_and_duplicates_rejected() {
        let fan =
            Fan::build(2, vec![int_vec(&[2, 0]), int_vec(&[0, 3])], vec![vec![0, 1]]).unwrap();
        assert_eq!(fan.ray(0), &int_vec(&[1, 0]));
        assert_eq!(fan.ray(1), &int_vec(&[0, 1]));

        let err = Fan::build(2, vec![int_vec(&[2, 0]), int_vec(&[1, 0])], vec![vec![0, 1]]);
        assert!(matches!(err, Err(FanError::DuplicateRay { .. })));
    }

    #[test]
    fn non_extreme_listed_ray_rejected() {
        let err = Fan::build(
            2,
            vec![int_vec(&[1, 0]), int_vec(&[0, 1]), int_vec(&[1, 1])],
            vec![vec![0, 1, 2]],
        );
        assert!(matches!(err, Err(FanError::RayNotExtreme { .. })));
    }

    #[test]
    fn star1_of_origin_is_rays() {
        let fan = p2_fan();
        let origin = fan.cone_ref(&[]).unwrap();
        let (cones, rays) = fan.star1(&origin).unwrap();
        assert_eq!(cones.len(), 3);
        assert_eq!(rays, vec![0, 1, 2]);
    }

    #[test]
    fn star1_of_maximal_cone_is_empty() {
        let fan = p2_fan();
        let top = fan.cone_ref(&[0, 1]).unwrap();
        let (cones, rays) = fan.star1(&top).unwrap();
        assert!(cones.is_empty());
        assert!(rays.is_empty());
    }

    #[test]
    fn quotient_by_origin_is_fan_itself() {
        let fan = p2_fan();
        let origin = fan.cone_ref(&[]).unwrap();
        let q = fan.quotient_star(&origin).unwrap();
        assert_eq!(q.fan.rays(), fan.rays());
        assert!(q.multiplicities.values().all(|c| c == &Int::one()));
        assert_eq!(q.fan.max_cones().len(), fan.max_cones().len());
    }

    #[test]
    fn quotient_of_p2_ray_is_p1() {
        let fan = p2_fan();
        let ray = fan.cone_ref(&[0]).unwrap();
        let q = fan.quotient_star(&ray).unwrap();
        assert_eq!(q.fan.lattice_dim(), 1);
        assert_eq!(q.fan.n_rays(), 2);
        let mut rays = q.fan.rays().to_vec();
        rays.sort();
        assert_eq!(rays, vec![int_vec(&[-1]), int_vec(&[1])]);
    }

    #[test]
    fn quotient_multiplicity_two() {
        let fan =
            Fan::build(2, vec![int_vec(&[1, 0]), int_vec(&[1, 2])], vec![vec![0, 1]]).unwrap();
        let ray = fan.cone_ref(&[0]).unwrap();
        let q = fan.quotient_star(&ray).unwrap();
        assert_eq!(q.multiplicities[&1], Int::from(2));
    }

    #[test]
    fn quotient_of_maximal_rejected() {
        let fan = p2_fan();
        let top = fan.cone_ref(&[0, 1]).unwrap();
        assert!(matches!(fan.quotient_star(&top), Err(FanError::MaximalCone { .. })));
    }

    #[test]
    fn skeleton_and_remove_maximal_agree() {
        let fan = p2_fan();
        let sk1 = fan.skeleton(1);
        assert_eq!(sk1.max_cones().len(), 3);
        assert!(sk1.is_pure(1));
        assert_eq!(fan.skeleton(2).max_cones().len(), fan.max_cones().len());

        let removed = fan.remove_maximal();
        assert_eq!(removed.max_cones(), sk1.max_cones());
    }

    #[test]
    fn mixed_fan_is_not_pure() {
        let fan = Fan::build(
            2,
            vec![int_vec(&[1, 0]), int_vec(&[0, 1]), int_vec(&[-1, 0])],
            vec![vec![0, 1], vec![2]],
        )
        .unwrap();
        assert!(!fan.is_pure(2));
        assert!(!fan.is_pure(1));
    }

    #[test]
    fn validate_rejects_overlapping_cones() {
        let err = Fan::build_with(
            2,
            vec![int_vec(&[1, 0]), int_vec(&[0, 1]), int_vec(&[1, 1])],
            vec![vec![0, 1], vec![0, 2]],
            true,
        );
        assert!(matches!(err, Err(FanError::OverlappingCones { .. })));
    }

    #[test]
    fn faces_closed_under_faces() {
        let fan = p2_fan();
        for c in fan.all_cones() {
            for &i in &c.rays {
                assert!(fan.contains_cone(&[i]));
            }
        }
        assert!(fan.contains_cone(&[]));
    }
}
