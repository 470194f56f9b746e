//! Hypercylinders: cones over hyperovals with an (n-3)-dimensional vertex,
//! the minimum-size sets of even type.

use super::{is_hyperoval_in_plane, EvenSetError};
use crate::projgeom::{are_skew, hyperplane_covector, AmbientSpace, PointSet, Subspace};
use rand::Rng;

/// A hypercylinder with its construction witness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hypercylinder {
    vertex: Subspace,
    base_plane: Subspace,
    base_hyperoval: PointSet,
    points: PointSet,
}

impl Hypercylinder {
    pub fn vertex(&self) -> &Subspace {
        &self.vertex
    }
    pub fn base_plane(&self) -> &Subspace {
        &self.base_plane
    }
    pub fn base_hyperoval(&self) -> &PointSet {
        &self.base_hyperoval
    }
    pub fn points(&self) -> &PointSet {
        &self.points
    }

    /// (q+2) q^{dim(vertex)+1}.
    pub fn expected_size(space: &AmbientSpace, vertex_dim: i64) -> u64 {
        let q = space.q();
        (q + 2) * q.pow((vertex_dim + 1) as u32)
    }
}

/// The cone (union over P in O of span(P, vertex)) minus the vertex, for an
/// arbitrary vertex dimension. The vertex must be skew to the plane and O a
/// hyperoval of the plane; the result has (q+2) q^{dim(vertex)+1} points.
pub fn cone_over_hyperoval(
    space: &AmbientSpace,
    vertex: &Subspace,
    plane: &Subspace,
    hyperoval: &PointSet,
) -> Result<PointSet, EvenSetError> {
    if plane.proj_dim() != 2 {
        return Err(EvenSetError::BadDimensions {
            expected: 2,
            got: plane.proj_dim(),
        });
    }
    if !are_skew(vertex, plane, space.field()) {
        return Err(EvenSetError::NotSkew);
    }
    if !is_hyperoval_in_plane(space, plane, hyperoval) {
        return Err(EvenSetError::NotAHyperoval);
    }

    let vertex_pts = space.subspace_points(vertex);
    let mut out = PointSet::empty(space.num_points());
    for p in hyperoval.iter() {
        let mut rows = vertex.basis().to_vec();
        rows.push(space.point(p).coords().to_vec());
        let generator = Subspace::from_rows(space.n(), rows, space.field());
        debug_assert_eq!(generator.rank(), vertex.rank() + 1);
        for idx in space.subspace_point_list(&generator) {
            out.insert(idx);
        }
    }
    let out = out.difference(&vertex_pts);
    debug_assert_eq!(
        out.len() as u64,
        Hypercylinder::expected_size(space, vertex.proj_dim())
    );
    Ok(out)
}

/// Construction of a minimum set of even type: the cone over a hyperoval
/// from an (n-3)-dimensional vertex.
pub fn build_hypercylinder(
    space: &AmbientSpace,
    vertex: &Subspace,
    plane: &Subspace,
    hyperoval: &PointSet,
) -> Result<Hypercylinder, EvenSetError> {
    let expected = space.n() as i64 - 3;
    if vertex.proj_dim() != expected {
        return Err(EvenSetError::BadDimensions {
            expected,
            got: vertex.proj_dim(),
        });
    }
    let points = cone_over_hyperoval(space, vertex, plane, hyperoval)?;
    Ok(Hypercylinder {
        vertex: vertex.clone(),
        base_plane: plane.clone(),
        base_hyperoval: hyperoval.clone(),
        points,
    })
}

/// The intersection of all hyperplanes disjoint from S. For a hypercylinder
/// with q > 2 this is exactly its vertex; for q = 2 the vertex is not
/// determined by the point set and the operation reports UndefinedVertex.
pub fn recover_vertex(space: &AmbientSpace, s: &PointSet) -> Result<Subspace, EvenSetError> {
    if space.q() == 2 {
        return Err(EvenSetError::UndefinedVertex);
    }
    assert!(!s.is_empty(), "recover_vertex of the empty set");
    let disjoint = space.hyperplanes_disjoint_from(s);
    if disjoint.is_empty() {
        return Err(EvenSetError::NoDisjointHyperplane);
    }
    let covectors: Vec<_> = disjoint
        .iter()
        .map(|h| hyperplane_covector(h, space.field()))
        .collect();
    Ok(crate::projgeom::common_zero_set(
        &covectors,
        space.n(),
        space.field(),
    ))
}

/// Decide whether S is a hypercylinder, returning the construction witness.
///
/// For q > 2 the vertex is recovered as the intersection of the disjoint
/// hyperplanes and one base plane is tested (the first plane skew to the
/// vertex in canonical order; the cylinder structure makes all skew planes
/// equivalent). For q = 2 a hypercylinder is the complement of a
/// hyperplane, and a witness vertex inside that hyperplane is searched.
pub fn is_hypercylinder(space: &AmbientSpace, s: &PointSet) -> Option<Hypercylinder> {
    let n = space.n() as i64;
    let q = space.q();
    assert!(q % 2 == 0, "hypercylinders are defined for even q");
    if s.len() as u64 != Hypercylinder::expected_size(space, n - 3) {
        return None;
    }
    if q == 2 {
        return q2_witness(space, s);
    }
    let vertex = recover_vertex(space, s).ok()?;
    if vertex.proj_dim() != n - 3 {
        return None;
    }
    rebuild_from_vertex(space, s, &vertex)
}

fn rebuild_from_vertex(
    space: &AmbientSpace,
    s: &PointSet,
    vertex: &Subspace,
) -> Option<Hypercylinder> {
    let mut witness = None;
    space.for_each_subspace(2, |plane| {
        if witness.is_none() && are_skew(vertex, plane, space.field()) {
            witness = Some(plane.clone());
        }
    });
    let plane = witness?;
    let hyperoval = s.intersection(&space.subspace_points(&plane));
    let rebuilt = build_hypercylinder(space, vertex, &plane, &hyperoval).ok()?;
    (rebuilt.points() == s).then_some(rebuilt)
}

/// q = 2: S must be the complement of a hyperplane; any (n-3)-subspace of
/// that hyperplane serves as a vertex, checked by rebuilding.
fn q2_witness(space: &AmbientSpace, s: &PointSet) -> Option<Hypercylinder> {
    let complement = s.complement();
    let hyperplane = space
        .hyperplanes()
        .iter()
        .find(|(_, pts)| *pts == complement)
        .map(|(h, _)| h.clone())?;
    let hyperplane_pts = space.subspace_points(&hyperplane);
    let k = space.n() - 3;
    let mut found = None;
    space.for_each_subspace(k, |candidate| {
        if found.is_none()
            && space
                .subspace_points(candidate)
                .is_subset(&hyperplane_pts)
        {
            if let Some(w) = rebuild_from_vertex(space, s, candidate) {
                found = Some(w);
            }
        }
    });
    found
}

/// A uniformly seeded random hypercylinder: random vertex, random skew
/// plane, and a regular hyperoval under a random frame of that plane.
pub fn random_hypercylinder(space: &AmbientSpace, rng: &mut impl Rng) -> Hypercylinder {
    let n = space.n();
    assert!(n >= 3);
    let field = space.field();
    let num_points = space.num_points() as u32;

    let vertex_rank = n - 2; // projective dimension n-3
    let vertex = loop {
        let rows: Vec<_> = (0..vertex_rank + 1)
            .map(|_| {
                space
                    .point(rng.gen_range(0..num_points))
                    .coords()
                    .to_vec()
            })
            .collect();
        let sub = Subspace::from_rows(n, rows, field);
        if sub.rank() == vertex_rank {
            break sub;
        }
    };

    let plane = loop {
        let rows: Vec<_> = (0..3)
            .map(|_| {
                space
                    .point(rng.gen_range(0..num_points))
                    .coords()
                    .to_vec()
            })
            .collect();
        let sub = Subspace::from_rows(n, rows, field);
        if sub.rank() == 3 && are_skew(&vertex, &sub, field) {
            break sub;
        }
    };

    let plane_pts = space.subspace_point_list(&plane);
    let hyperoval = loop {
        let frame: Vec<_> = (0..3)
            .map(|_| {
                let idx = plane_pts[rng.gen_range(0..plane_pts.len())];
                space.point(idx).coords().to_vec()
            })
            .collect();
        if Subspace::from_rows(n, frame.clone(), field).rank() != 3 {
            continue;
        }
        break super::regular_hyperoval_with_frame(space, &plane, &frame)
            .expect("independent frame in an even-order plane");
    };

    build_hypercylinder(space, &vertex, &plane, &hyperoval).expect("construction is valid")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::evensets::{is_even_type, regular_hyperoval, secant_spectrum};
    use crate::gf::FieldSpec;
    use crate::projgeom::theta;
    use rand::rngs::StdRng;
    use rand::SeedableRng;
    use std::sync::Arc;

    fn space(n: usize, p: u64, h: u32) -> Arc<AmbientSpace> {
        Arc::new(AmbientSpace::new(n, FieldSpec::new(p, h, None).unwrap()))
    }

    /// First (vertex point, skew plane, standard hyperoval) triple of PG(3,q).
    fn canonical_hypercylinder(sp: &AmbientSpace) -> Hypercylinder {
        let vertex = sp.span(&[0]);
        let mut plane = None;
        sp.for_each_subspace(2, |s| {
            if plane.is_none() && are_skew(&vertex, s, sp.field()) {
                plane = Some(s.clone());
            }
        });
        let plane = plane.unwrap();
        let oval = regular_hyperoval(sp, &plane).unwrap();
        build_hypercylinder(sp, &vertex, &plane, &oval).unwrap()
    }

    #[test]
    fn pg34_hypercylinder_size_and_evenness() {
        let sp = space(3, 2, 2);
        let hc = canonical_hypercylinder(&sp);
        assert_eq!(hc.points().len(), 24);
        assert!(is_even_type(&sp, hc.points()));
    }

    #[test]
    fn pg32_hypercylinder_is_plane_complement() {
        let sp = space(3, 2, 1);
        let hc = canonical_hypercylinder(&sp);
        assert_eq!(hc.points().len(), 8);
        assert!(is_even_type(&sp, hc.points()));
        let complement = hc.points().complement();
        assert!(sp.hyperplanes().iter().any(|(_, pts)| *pts == complement));
    }

    #[test]
    fn pg44_hypercylinder_with_line_vertex() {
        let sp = space(4, 2, 2);
        let fe = |v: [u32; 5]| v.iter().map(|&x| crate::gf::FieldElement(x)).collect::<Vec<_>>();
        let vertex = Subspace::from_rows(4, vec![fe([1, 0, 0, 0, 0]), fe([0, 1, 0, 0, 0])], sp.field());
        let plane = Subspace::from_rows(
            4,
            vec![fe([0, 0, 1, 0, 0]), fe([0, 0, 0, 1, 0]), fe([0, 0, 0, 0, 1])],
            sp.field(),
        );
        let oval = regular_hyperoval(&sp, &plane).unwrap();
        let hc = build_hypercylinder(&sp, &vertex, &plane, &oval).unwrap();
        assert_eq!(hc.points().len(), 96);
        assert!(is_even_type(&sp, hc.points()));
    }

    #[test]
    fn spectrum_of_pg34_hypercylinder_is_even_with_q_secants()  {
        let sp = space(3, 2, 2);
        let hc = canonical_hypercylinder(&sp);
        let spec = secant_spectrum(&sp, hc.points(), 1);
        for (&i, _) in &spec.by_count {
            assert_eq!(i % 2, 0, "odd secant size {i}");
        }
        // the generator lines through the vertex are q-secants
        assert!(spec.count(4) > 0);
        assert_eq!(spec.incidence_sum(), 24 * theta(2, 4));
    }

    #[test]
    fn dimension_preconditions() {
        let sp = space(3, 2, 2);
        let vertex_line = sp.span(&[0, 1]); // dim 1, not n-3 = 0
        let hc = canonical_hypercylinder(&sp);
        assert!(matches!(
            build_hypercylinder(&sp, &vertex_line, hc.base_plane(), hc.base_hyperoval()),
            Err(EvenSetError::BadDimensions { .. })
        ));
    }

    #[test]
    fn skewness_enforced() {
        let sp = space(3, 2, 2);
        let hc = canonical_hypercylinder(&sp);
        // a vertex inside the base plane is not skew
        let inside = sp.span(&[sp.subspace_point_list(hc.base_plane())[0]]);
        assert_eq!(
            cone_over_hyperoval(&sp, &inside, hc.base_plane(), hc.base_hyperoval()),
            Err(EvenSetError::NotSkew)
        );
    }

    #[test]
    fn non_hyperoval_base_rejected() {
        let sp = space(3, 2, 2);
        let hc = canonical_hypercylinder(&sp);
        let line_in_plane = {
            let pts = sp.subspace_point_list(hc.base_plane());
            PointSet::from_indices(sp.num_points(), &pts[..5])
        };
        assert_eq!(
            cone_over_hyperoval(&sp, hc.vertex(), hc.base_plane(), &line_in_plane),
            Err(EvenSetError::NotAHyperoval)
        );
    }

    #[test]
    fn vertex_recovery_pg34() {
        let sp = space(3, 2, 2);
        let hc = canonical_hypercylinder(&sp);
        assert_eq!(&recover_vertex(&sp, hc.points()).unwrap(), hc.vertex());
    }

    #[test]
    fn vertex_recovery_pg38() {
        let sp = space(3, 2, 3);
        let hc = canonical_hypercylinder(&sp);
        assert_eq!(hc.points().len(), 80);
        assert_eq!(&recover_vertex(&sp, hc.points()).unwrap(), hc.vertex());
    }

    #[test]
    fn vertex_undefined_for_q2() {
        let sp = space(3, 2, 1);
        let hc = canonical_hypercylinder(&sp);
        assert_eq!(
            recover_vertex(&sp, hc.points()),
            Err(EvenSetError::UndefinedVertex)
        );
    }

    #[test]
    fn no_disjoint_hyperplane_case() {
        let sp = space(2, 2, 2);
        // a blocking-style set meeting every line: the full space
        let all = PointSet::full(sp.num_points());
        assert_eq!(
            recover_vertex(&sp, &all),
            Err(EvenSetError::NoDisjointHyperplane)
        );
    }

    #[test]
    fn hypercylinder_round_trip() {
        for sp in [space(3, 2, 2), space(3, 2, 3)] {
            let hc = canonical_hypercylinder(&sp);
            let witness = is_hypercylinder(&sp, hc.points()).unwrap();
            assert_eq!(witness.vertex(), hc.vertex());
            assert_eq!(witness.points(), hc.points());
        }
    }

    #[test]
    fn q2_round_trip() {
        let sp = space(3, 2, 1);
        let hc = canonical_hypercylinder(&sp);
        let witness = is_hypercylinder(&sp, hc.points()).unwrap();
        assert_eq!(witness.points(), hc.points());
    }

    #[test]
    fn rejects_wrong_sets() {
        let sp = space(3, 2, 2);
        // a hyperoval inside a plane of PG(3,4) has the wrong size
        let plane = &sp.enumerate_subspaces(2).unwrap()[0];
        let oval = regular_hyperoval(&sp, plane).unwrap();
        assert!(is_hypercylinder(&sp, &oval).is_none());
        // symmetric difference of two planes: size 32 != 24
        let p1 = sp.subspace_points(&sp.enumerate_subspaces(2).unwrap()[0]);
        let p2 = sp.subspace_points(&sp.enumerate_subspaces(2).unwrap()[1]);
        let sym = p1.symmetric_difference(&p2);
        assert_eq!(sym.len(), 32);
        assert!(is_hypercylinder(&sp, &sym).is_none());
    }

    #[test]
    fn random_instances_are_sound() {
        let mut rng = StdRng::seed_from_u64(0);
        for sp in [space(3, 2, 1), space(3, 2, 2)] {
            for _ in 0..5 {
                let hc = random_hypercylinder(&sp, &mut rng);
                let expect = Hypercylinder::expected_size(&sp, sp.n() as i64 - 3);
                assert_eq!(hc.points().len() as u64, expect);
                assert!(is_even_type(&sp, hc.points()));
                if sp.q() > 2 {
                    assert_eq!(&recover_vertex(&sp, hc.points()).unwrap(), hc.vertex());
                }
            }
        }
    }
}
