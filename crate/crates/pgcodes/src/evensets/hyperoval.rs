//! Conics, nuclei, and regular hyperovals.

use super::EvenSetError;
use crate::gf::{FieldElement, ONE, ZERO};
use crate::projgeom::{AmbientSpace, PointSet, Subspace};

/// |O| = q+2, O inside the plane, and every line of the plane meets O in
/// 0 or 2 points.
pub fn is_hyperoval_in_plane(space: &AmbientSpace, plane: &Subspace, o: &PointSet) -> bool {
    let q = space.q() as usize;
    if o.len() != q + 2 {
        return false;
    }
    let plane_pts = space.subspace_points(plane);
    if !o.is_subset(&plane_pts) {
        return false;
    }
    super::lines_in_plane(space, plane).iter().all(|&lid| {
        let cnt = space
            .line_points(lid)
            .iter()
            .filter(|&&p| o.contains(p))
            .count();
        cnt == 0 || cnt == 2
    })
}

/// The canonical conic of PG(2,q): {(s^2, st, t^2) : (s,t) in PG(1,q)},
/// i.e. the zero set of x0 x2 = x1^2.
pub fn canonical_conic(space: &AmbientSpace) -> PointSet {
    assert_eq!(space.n(), 2, "conics live in a projective plane");
    let field = space.field();
    let mut out = PointSet::empty(space.num_points());
    // (s,t) = (1,t) for all t, then (0,1)
    for t in field.elements() {
        let coords = vec![ONE, t, field.mul(t, t)];
        out.insert(space.point_index(&coords).unwrap());
    }
    out.insert(space.point_index(&[ZERO, ZERO, ONE]).unwrap());
    out
}

/// The common point of all tangent lines of a conic. For q even the q+1
/// tangents concur in the nucleus; for q odd they do not, and the
/// operation fails with OddCharacteristic.
pub fn conic_nucleus(space: &AmbientSpace, conic: &PointSet) -> Result<u32, EvenSetError> {
    assert_eq!(space.n(), 2);
    let tangents: Vec<u32> = (0..space.lines().len() as u32)
        .filter(|&lid| {
            space
                .line_points(lid)
                .iter()
                .filter(|&&p| conic.contains(p))
                .count()
                == 1
        })
        .collect();
    let mut common: Option<PointSet> = None;
    for lid in tangents {
        let pts = PointSet::from_indices(space.num_points(), space.line_points(lid));
        common = Some(match common {
            None => pts,
            Some(acc) => acc.intersection(&pts),
        });
    }
    match common {
        Some(acc) if acc.len() == 1 => Ok(acc.iter().next().unwrap()),
        _ => Err(EvenSetError::OddCharacteristic),
    }
}

/// The unique conic through 5 points of PG(2,q) in general position:
/// solves the 5x6 linear system for the quadratic form
/// a x0^2 + b x1^2 + c x2^2 + d x0x1 + e x0x2 + f x1x2 and returns its
/// zero set together with the (normalized) form coefficients.
/// Returns None when the points do not determine a unique form.
pub fn conic_through_5(
    space: &AmbientSpace,
    pts: &[u32; 5],
) -> Option<(PointSet, Vec<FieldElement>)> {
    assert_eq!(space.n(), 2);
    let field = space.field();
    let mut rows: Vec<Vec<FieldElement>> = pts
        .iter()
        .map(|&i| form_monomials(space, space.point(i).coords()))
        .collect();
    let pivots = crate::projgeom::rref(&mut rows, field);
    if rows.len() != 5 {
        return None;
    }
    let kernel = crate::projgeom::nullspace(&rows, &pivots, 6, field);
    debug_assert_eq!(kernel.len(), 1);
    let form = kernel.into_iter().next().unwrap();
    Some((form_zero_set(space, &form), form))
}

/// Monomial vector (x0^2, x1^2, x2^2, x0x1, x0x2, x1x2) of a point.
pub fn form_monomials(space: &AmbientSpace, x: &[FieldElement]) -> Vec<FieldElement> {
    let f = space.field();
    vec![
        f.mul(x[0], x[0]),
        f.mul(x[1], x[1]),
        f.mul(x[2], x[2]),
        f.mul(x[0], x[1]),
        f.mul(x[0], x[2]),
        f.mul(x[1], x[2]),
    ]
}

/// Zero set of a quadratic form given by its 6 coefficients.
pub fn form_zero_set(space: &AmbientSpace, form: &[FieldElement]) -> PointSet {
    let mut out = PointSet::empty(space.num_points());
    for p in space.points() {
        let mono = form_monomials(space, p.coords());
        if space.dot(&mono, form) == ZERO {
            out.insert(p.index());
        }
    }
    out
}

/// The regular hyperoval {(s^2, st, t^2)} ∪ {(0,1,0)} mapped into a plane
/// through its canonical basis frame.
pub fn regular_hyperoval(
    space: &AmbientSpace,
    plane: &Subspace,
) -> Result<PointSet, EvenSetError> {
    let frame: Vec<Vec<FieldElement>> = plane.basis().to_vec();
    regular_hyperoval_with_frame(space, plane, &frame)
}

/// Same, with an explicit frame: the images in ambient coordinates of the
/// three basis points of the parameter plane. Any three independent points
/// of the plane give a projectivity image of the regular hyperoval.
pub fn regular_hyperoval_with_frame(
    space: &AmbientSpace,
    plane: &Subspace,
    frame: &[Vec<FieldElement>],
) -> Result<PointSet, EvenSetError> {
    if plane.proj_dim() != 2 {
        return Err(EvenSetError::BadDimensions {
            expected: 2,
            got: plane.proj_dim(),
        });
    }
    if space.q() % 2 != 0 {
        return Err(EvenSetError::OddCharacteristic);
    }
    let field = space.field();
    if frame.len() != 3
        || Subspace::from_rows(space.n(), frame.to_vec(), field).rank() != 3
        || frame
            .iter()
            .any(|row| !plane.contains_vector(row, field))
    {
        return Err(EvenSetError::BadFrame);
    }

    let map = |a: FieldElement, b: FieldElement, c: FieldElement| -> u32 {
        let mut v = vec![ZERO; space.n() + 1];
        for (coef, row) in [a, b, c].iter().zip(frame) {
            if *coef != ZERO {
                for (vj, rj) in v.iter_mut().zip(row) {
                    *vj = field.add(*vj, field.mul(*coef, *rj));
                }
            }
        }
        space.point_index(&v).expect("image of a plane point")
    };

    let mut out = PointSet::empty(space.num_points());
    for t in field.elements() {
        // (s,t) = (1,t): (1, t, t^2)
        out.insert(map(ONE, t, field.mul(t, t)));
    }
    // (s,t) = (0,1): (0,0,1)
    out.insert(map(ZERO, ZERO, ONE));
    // nucleus (0,1,0)
    out.insert(map(ZERO, ONE, ZERO));
    debug_assert_eq!(out.len(), space.q() as usize + 2);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::FieldSpec;
    use std::sync::Arc;

    fn space(n: usize, p: u64, h: u32) -> Arc<AmbientSpace> {
        Arc::new(AmbientSpace::new(n, FieldSpec::new(p, h, None).unwrap()))
    }

    #[test]
    fn canonical_conic_size_and_nucleus() {
        for (h, _q) in [(1u32, 2u64), (2, 4), (3, 8)] {
            let sp = space(2, 2, h);
            let conic = canonical_conic(&sp);
            assert_eq!(conic.len() as u64, sp.q() + 1);
            // the tangent-intersection oracle returns (0,1,0)
            let nucleus = conic_nucleus(&sp, &conic).unwrap();
            let expect = sp
                .point_index(&[ZERO, ONE, ZERO])
                .unwrap();
            assert_eq!(nucleus, expect);
        }
    }

    #[test]
    fn nucleus_fails_in_odd_characteristic() {
        let sp = space(2, 3, 1);
        let conic = canonical_conic(&sp);
        assert_eq!(conic.len(), 4);
        assert_eq!(conic_nucleus(&sp, &conic), Err(EvenSetError::OddCharacteristic));
    }

    #[test]
    fn regular_hyperoval_sizes() {
        // PG(2,2) -> 4 points, PG(2,4) -> 6, PG(2,8) -> 10
        for (h, expect) in [(1u32, 4usize), (2, 6), (3, 10)] {
            let sp = space(2, 2, h);
            let plane = Subspace::full(2);
            let oval = regular_hyperoval(&sp, &plane).unwrap();
            assert_eq!(oval.len(), expect);
            assert!(is_hyperoval_in_plane(&sp, &plane, &oval));
            assert!(super::super::is_even_type(&sp, &oval));
        }
    }

    #[test]
    fn regular_hyperoval_spectrum_pg24() {
        let sp = space(2, 2, 2);
        let oval = regular_hyperoval(&sp, &Subspace::full(2)).unwrap();
        let spec = super::super::secant_spectrum(&sp, &oval, 1);
        assert_eq!(spec.count(0), 6);
        assert_eq!(spec.count(2), 15);
    }

    #[test]
    fn odd_characteristic_rejected() {
        let sp = space(2, 3, 1);
        assert_eq!(
            regular_hyperoval(&sp, &Subspace::full(2)),
            Err(EvenSetError::OddCharacteristic)
        );
    }

    #[test]
    fn hyperoval_in_embedded_plane() {
        // map the regular hyperoval into a plane of PG(3,4)
        let sp = space(3, 2, 2);
        let plane = &sp.enumerate_subspaces(2).unwrap()[17];
        let oval = regular_hyperoval(&sp, plane).unwrap();
        assert_eq!(oval.len(), 6);
        assert!(is_hyperoval_in_plane(&sp, plane, &oval));
        assert!(oval.is_subset(&sp.subspace_points(plane)));
    }

    #[test]
    fn conic_through_5_recovers_canonical() {
        let sp = space(2, 2, 2);
        let conic = canonical_conic(&sp);
        let pts: Vec<u32> = conic.iter().collect();
        let five = [pts[0], pts[1], pts[2], pts[3], pts[4]];
        let (zero_set, _form) = conic_through_5(&sp, &five).unwrap();
        assert_eq!(zero_set, conic);
    }

    #[test]
    fn conic_through_collinear_points_degenerates() {
        let sp = space(2, 2, 2);
        // three points on a line plus two more: the form factors through
        // that line, so the zero set swallows the whole line
        let line0: Vec<u32> = sp.line_points(0).to_vec();
        let off: Vec<u32> = (0..sp.num_points() as u32)
            .filter(|i| !line0.contains(i))
            .take(2)
            .collect();
        let five = [line0[0], line0[1], line0[2], off[0], off[1]];
        match conic_through_5(&sp, &five) {
            None => {}
            Some((zero_set, _)) => {
                assert!(line0.iter().all(|&p| zero_set.contains(p)));
                assert_ne!(zero_set.len() as u64, sp.q() + 1);
            }
        }
    }

    #[test]
    fn frame_validation() {
        let sp = space(2, 2, 2);
        let plane = Subspace::full(2);
        let fe = |v: [u32; 3]| v.iter().map(|&x| FieldElement(x)).collect::<Vec<_>>();
        // dependent frame rows
        let bad = vec![fe([1, 0, 0]), fe([0, 1, 0]), fe([1, 1, 0])];
        assert_eq!(
            regular_hyperoval_with_frame(&sp, &plane, &bad),
            Err(EvenSetError::BadFrame)
        );
        // a proper frame gives another hyperoval
        let frame = vec![fe([1, 1, 0]), fe([0, 1, 1]), fe([1, 0, 3])];
        let oval = regular_hyperoval_with_frame(&sp, &plane, &frame).unwrap();
        assert_eq!(oval.len() as u64, sp.q() + 2);
        assert!(is_hyperoval_in_plane(&sp, &plane, &oval));
    }

    #[test]
    fn hyperoval_rejects_wrong_sets() {
        let sp = space(2, 2, 2);
        let plane = Subspace::full(2);
        // a line section is not a hyperoval
        let line = PointSet::from_indices(sp.num_points(), sp.line_points(0));
        assert!(!is_hyperoval_in_plane(&sp, &plane, &line));
        // wrong size
        let mut oval = regular_hyperoval(&sp, &plane).unwrap();
        let drop = oval.iter().next().unwrap();
        oval.remove(drop);
        assert!(!is_hyperoval_in_plane(&sp, &plane, &oval));
    }
}
