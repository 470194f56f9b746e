//! Enumeration and incidence machinery for PG(n,q).

mod pointset;
mod subspace;

pub use pointset::PointSet;
pub use subspace::{
    are_skew, common_zero_set, for_each_rref, hyperplane_covector, joint_rank, nullspace,
    reduce_against, rref, Subspace,
};

use crate::gf::{FieldElement, FieldSpec, ONE, ZERO};
use std::collections::HashMap;
use std::sync::OnceLock;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GeomError {
    #[error("subspace dimension {k} out of range for PG({n},q)")]
    DimensionOutOfRange { k: usize, n: usize },
    #[error("point indices belong to different ambient spaces")]
    AmbientMismatch,
}

/// theta_n = (q^{n+1} - 1)/(q - 1), the number of points of PG(n,q).
pub fn theta(n: usize, q: u64) -> u64 {
    let num = q
        .checked_pow(n as u32 + 1)
        .expect("theta overflow") - 1;
    num / (q - 1)
}

/// Gaussian coefficient [a choose b]_q: the number of b-dimensional vector
/// subspaces of an a-dimensional space over F_q. Exact integer arithmetic;
/// every partial product is itself a Gaussian coefficient, so the stepwise
/// division is always exact.
pub fn gaussian_coefficient(a: usize, b: usize, q: u64) -> u64 {
    assert!(b <= a, "require 0 <= b <= a");
    let q = q as u128;
    let mut result: u128 = 1;
    for i in 1..=b {
        let num = q.pow((a - b + i) as u32) - 1;
        let den = q.pow(i as u32) - 1;
        result = result.checked_mul(num).expect("gaussian overflow");
        debug_assert_eq!(result % den, 0);
        result /= den;
    }
    u64::try_from(result).expect("gaussian coefficient exceeds u64")
}

/// A point of PG(n,q): normalized homogeneous coordinates (first nonzero
/// coordinate equals 1) plus the rank of those coordinates in the canonical
/// lexicographic order.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ProjPoint {
    coords: Vec<FieldElement>,
    index: u32,
}

impl ProjPoint {
    pub fn coords(&self) -> &[FieldElement] {
        &self.coords
    }
    pub fn index(&self) -> u32 {
        self.index
    }
}

impl std::fmt::Debug for ProjPoint {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "P{}{:?}",
            self.index,
            self.coords.iter().map(|c| c.0).collect::<Vec<_>>()
        )
    }
}

/// Point tables above this size skip the per-point line adjacency lists.
const LINES_THROUGH_MAX_POINTS: usize = 4096;
/// Point tables above this size skip the quadratic pair -> line table.
const PAIR_TABLE_MAX_POINTS: usize = 2048;

/// PG(n,q) with its point table and line incidence tables. Immutable after
/// construction; all queries are pure, so the space can be shared freely.
pub struct AmbientSpace {
    n: usize,
    field: FieldSpec,
    points: Vec<ProjPoint>,
    coord_index: HashMap<Vec<FieldElement>, u32>,
    line_points: Vec<Vec<u32>>,
    lines_through: Option<Vec<Vec<u32>>>,
    pair_line: Option<Vec<u32>>,
    hyperplane_cache: OnceLock<Vec<(Subspace, PointSet)>>,
}

impl AmbientSpace {
    pub fn new(n: usize, field: FieldSpec) -> AmbientSpace {
        assert!(n >= 1);
        let q = field.q();
        let num_points = theta(n, q) as usize;

        // all normalized tuples, in lexicographic order over element indices
        let mut points = Vec::with_capacity(num_points);
        let mut coord_index = HashMap::with_capacity(num_points);
        let mut tuple = vec![ZERO; n + 1];
        loop {
            if let Some(nz) = tuple.iter().position(|&c| c != ZERO) {
                if tuple[nz] == ONE {
                    let index = points.len() as u32;
                    coord_index.insert(tuple.clone(), index);
                    points.push(ProjPoint {
                        coords: tuple.clone(),
                        index,
                    });
                }
            }
            let mut i = n + 1;
            loop {
                if i == 0 {
                    break;
                }
                i -= 1;
                if (tuple[i].0 as u64) < q - 1 {
                    tuple[i] = FieldElement(tuple[i].0 + 1);
                    break;
                }
                tuple[i] = ZERO;
            }
            if tuple.iter().all(|&c| c == ZERO) {
                break;
            }
        }
        assert_eq!(points.len(), num_points);

        let mut space = AmbientSpace {
            n,
            field,
            points,
            coord_index,
            line_points: Vec::new(),
            lines_through: None,
            pair_line: None,
            hyperplane_cache: OnceLock::new(),
        };
        space.build_line_tables();
        space
    }

    fn build_line_tables(&mut self) {
        let num_points = self.points.len();
        let num_lines = gaussian_coefficient(self.n + 1, 2, self.field.q()) as usize;
        let mut line_points = Vec::with_capacity(num_lines);
        for_each_rref(self.n + 1, 2, &self.field, |rows| {
            line_points.push(self.combo_points(rows));
        });
        assert_eq!(line_points.len(), num_lines);
        self.line_points = line_points;

        if num_points <= LINES_THROUGH_MAX_POINTS {
            let mut through = vec![Vec::new(); num_points];
            for (lid, pts) in self.line_points.iter().enumerate() {
                for &p in pts {
                    through[p as usize].push(lid as u32);
                }
            }
            self.lines_through = Some(through);
        }
        if num_points <= PAIR_TABLE_MAX_POINTS {
            let mut pair = vec![u32::MAX; num_points * num_points];
            for (lid, pts) in self.line_points.iter().enumerate() {
                for &a in pts {
                    for &b in pts {
                        if a != b {
                            pair[a as usize * num_points + b as usize] = lid as u32;
                        }
                    }
                }
            }
            self.pair_line = Some(pair);
        }
    }

    /// Sorted indices of the points spanned by a set of independent rows.
    /// Coefficient vectors whose first nonzero coefficient is 1 are in
    /// bijection with the points of the subspace.
    fn combo_points(&self, rows: &[Vec<FieldElement>]) -> Vec<u32> {
        let field = &self.field;
        let q = field.q() as u32;
        let rank = rows.len();
        let mut out = Vec::with_capacity(theta(rank.max(1) - 1, q as u64) as usize);
        let mut coeff = vec![ZERO; rank];
        // leading coefficient position from last to first keeps all cases covered
        for lead in 0..rank {
            for c in &mut coeff {
                *c = ZERO;
            }
            coeff[lead] = ONE;
            // odometer over coefficients after `lead`
            loop {
                let mut v = vec![ZERO; self.n + 1];
                for (ci, row) in coeff.iter().zip(rows) {
                    if *ci != ZERO {
                        for (vj, rj) in v.iter_mut().zip(row) {
                            *vj = field.add(*vj, field.mul(*ci, *rj));
                        }
                    }
                }
                let idx = self
                    .point_index(&v)
                    .expect("combination of basis rows is a valid point");
                out.push(idx);
                let mut i = rank;
                loop {
                    if i <= lead {
                        break;
                    }
                    i -= 1;
                    if i == lead {
                        break;
                    }
                    if coeff[i].0 < q - 1 {
                        coeff[i] = FieldElement(coeff[i].0 + 1);
                        break;
                    }
                    coeff[i] = ZERO;
                }
                if coeff[lead + 1..].iter().all(|&c| c == ZERO) {
                    break;
                }
            }
        }
        out.sort_unstable();
        out
    }

    pub fn n(&self) -> usize {
        self.n
    }
    pub fn field(&self) -> &FieldSpec {
        &self.field
    }
    pub fn q(&self) -> u64 {
        self.field.q()
    }
    pub fn num_points(&self) -> usize {
        self.points.len()
    }
    pub fn points(&self) -> &[ProjPoint] {
        &self.points
    }
    pub fn point(&self, index: u32) -> &ProjPoint {
        &self.points[index as usize]
    }

    /// Normalize homogeneous coordinates: scale so the first nonzero
    /// coordinate is 1. Returns None for the zero vector.
    pub fn normalize(&self, coords: &[FieldElement]) -> Option<Vec<FieldElement>> {
        let nz = coords.iter().position(|&c| c != ZERO)?;
        let inv = self.field.inv(coords[nz]).expect("nonzero");
        Some(coords.iter().map(|&c| self.field.mul(c, inv)).collect())
    }

    /// Canonical index of the point with the given (not necessarily
    /// normalized) homogeneous coordinates.
    pub fn point_index(&self, coords: &[FieldElement]) -> Option<u32> {
        let norm = self.normalize(coords)?;
        self.coord_index.get(&norm).copied()
    }

    /// All lines, as sorted point-index lists, in canonical enumeration order.
    pub fn lines(&self) -> &[Vec<u32>] {
        &self.line_points
    }

    pub fn line_points(&self, line_id: u32) -> &[u32] {
        &self.line_points[line_id as usize]
    }

    /// Ids of the lines through a point (theta_{n-1} of them).
    pub fn lines_through(&self, point: u32) -> Vec<u32> {
        match &self.lines_through {
            Some(t) => t[point as usize].clone(),
            None => self
                .line_points
                .iter()
                .enumerate()
                .filter(|(_, pts)| pts.binary_search(&point).is_ok())
                .map(|(i, _)| i as u32)
                .collect(),
        }
    }

    /// Borrowed per-point line list when the adjacency table was built
    /// (point tables of at most 4096 points).
    pub fn lines_through_slice(&self, point: u32) -> Option<&[u32]> {
        self.lines_through
            .as_ref()
            .map(|t| t[point as usize].as_slice())
    }

    /// The line with the given id as a canonical subspace.
    pub fn line_subspace(&self, line_id: u32) -> Subspace {
        let pts = &self.line_points[line_id as usize];
        self.span(&pts[..2])
    }

    /// Id of the unique line through two distinct points.
    pub fn line_through_pair(&self, a: u32, b: u32) -> u32 {
        assert_ne!(a, b);
        if let Some(pair) = &self.pair_line {
            return pair[a as usize * self.points.len() + b as usize];
        }
        match &self.lines_through {
            Some(t) => *t[a as usize]
                .iter()
                .find(|&&lid| self.line_points[lid as usize].contains(&b))
                .expect("two points lie on a line"),
            None => self
                .line_points
                .iter()
                .position(|pts| pts.binary_search(&a).is_ok() && pts.binary_search(&b).is_ok())
                .expect("two points lie on a line") as u32,
        }
    }

    /// Smallest subspace containing the given points.
    pub fn span(&self, point_indices: &[u32]) -> Subspace {
        assert!(!point_indices.is_empty(), "span of the empty set");
        let rows = point_indices
            .iter()
            .map(|&i| self.points[i as usize].coords.clone())
            .collect();
        Subspace::from_rows(self.n, rows, &self.field)
    }

    pub fn span_set(&self, set: &PointSet) -> Subspace {
        self.span(&set.to_indices())
    }

    pub fn incident(&self, point: u32, sub: &Subspace) -> bool {
        sub.contains_vector(&self.points[point as usize].coords, &self.field)
    }

    /// All subspaces of projective dimension k, in canonical order
    /// (lexicographic on pivot-column set, then free entries).
    pub fn enumerate_subspaces(&self, k: usize) -> Result<Vec<Subspace>, GeomError> {
        if k > self.n {
            return Err(GeomError::DimensionOutOfRange { k, n: self.n });
        }
        let mut out =
            Vec::with_capacity(gaussian_coefficient(self.n + 1, k + 1, self.q()) as usize);
        self.for_each_subspace(k, |s| out.push(s.clone()));
        Ok(out)
    }

    /// Visit all subspaces of projective dimension k without materializing
    /// the whole list.
    pub fn for_each_subspace(&self, k: usize, mut visit: impl FnMut(&Subspace)) {
        assert!(k <= self.n);
        for_each_rref(self.n + 1, k + 1, &self.field, |rows| {
            let s = Subspace::from_rref_rows(self.n, rows.to_vec());
            visit(&s);
        });
    }

    /// Point set of a subspace.
    pub fn subspace_points(&self, sub: &Subspace) -> PointSet {
        PointSet::from_indices(self.points.len(), &self.subspace_point_list(sub))
    }

    /// Sorted point indices of a subspace.
    pub fn subspace_point_list(&self, sub: &Subspace) -> Vec<u32> {
        if sub.rank() == 0 {
            return Vec::new();
        }
        if sub.rank() == self.n + 1 {
            return (0..self.points.len() as u32).collect();
        }
        if sub.rank() == self.n {
            // evaluate the covector instead of enumerating combinations
            let cov = hyperplane_covector(sub, &self.field);
            return self
                .points
                .iter()
                .filter(|p| self.dot(&p.coords, &cov) == ZERO)
                .map(|p| p.index)
                .collect();
        }
        self.combo_points(sub.basis())
    }

    pub fn dot(&self, a: &[FieldElement], b: &[FieldElement]) -> FieldElement {
        let mut acc = ZERO;
        for (&x, &y) in a.iter().zip(b) {
            acc = self.field.add(acc, self.field.mul(x, y));
        }
        acc
    }

    /// Hyperplanes with their point sets, cached after first use.
    pub fn hyperplanes(&self) -> &[(Subspace, PointSet)] {
        self.hyperplane_cache.get_or_init(|| {
            let mut out = Vec::new();
            self.for_each_subspace(self.n - 1, |h| {
                let pts = self.subspace_points(h);
                out.push((h.clone(), pts));
            });
            out
        })
    }

    /// All hyperplanes whose point set avoids S.
    pub fn hyperplanes_disjoint_from(&self, s: &PointSet) -> Vec<Subspace> {
        self.hyperplanes()
            .iter()
            .filter(|(_, pts)| pts.is_disjoint(s))
            .map(|(h, _)| h.clone())
            .collect()
    }
}

impl std::fmt::Debug for AmbientSpace {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "PG({},{})", self.n, self.q())
    }
}
