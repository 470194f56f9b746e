//! Projective subspaces in reduced row-echelon canonical form.

use crate::gf::{FieldElement, FieldSpec, ONE, ZERO};

/// A subspace of PG(n,q), represented by a basis matrix in reduced
/// row-echelon form over GF(q).
///
/// RREF with pivots as far left as possible is a unique canonical
/// representative, so two `Subspace` values are equal (bytewise) iff they
/// describe the same point set. The zero-rank value represents the empty
/// subspace (projective dimension -1).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    n: usize,
    rows: Vec<Vec<FieldElement>>,
}

impl Subspace {
    /// Canonicalize an arbitrary spanning set of coordinate vectors.
    pub fn from_rows(n: usize, mut rows: Vec<Vec<FieldElement>>, field: &FieldSpec) -> Subspace {
        debug_assert!(rows.iter().all(|r| r.len() == n + 1));
        rref(&mut rows, field);
        Subspace { n, rows }
    }

    pub fn empty(n: usize) -> Subspace {
        Subspace { n, rows: Vec::new() }
    }

    /// Wrap rows that are already known to be in RREF (e.g. straight from
    /// the canonical enumeration) without re-eliminating.
    pub(crate) fn from_rref_rows(n: usize, rows: Vec<Vec<FieldElement>>) -> Subspace {
        Subspace { n, rows }
    }

    pub fn full(n: usize) -> Subspace {
        let rows = (0..=n)
            .map(|i| {
                let mut r = vec![ZERO; n + 1];
                r[i] = ONE;
                r
            })
            .collect();
        Subspace { n, rows }
    }

    /// Ambient projective dimension n.
    pub fn ambient_dim(&self) -> usize {
        self.n
    }

    /// Number of basis rows (vector-space dimension).
    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Projective dimension; -1 for the empty subspace.
    pub fn proj_dim(&self) -> i64 {
        self.rows.len() as i64 - 1
    }

    pub fn basis(&self) -> &[Vec<FieldElement>] {
        &self.rows
    }

    /// True iff the coordinate vector lies in the row space.
    pub fn contains_vector(&self, v: &[FieldElement], field: &FieldSpec) -> bool {
        let mut v = v.to_vec();
        reduce_against(&mut v, &self.rows, field);
        v.iter().all(|&c| c == ZERO)
    }

    /// Pivot column of each basis row.
    pub fn pivots(&self) -> Vec<usize> {
        self.rows
            .iter()
            .map(|r| r.iter().position(|&c| c != ZERO).expect("RREF row is nonzero"))
            .collect()
    }
}

impl std::fmt::Debug for Subspace {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Subspace(dim {} in PG({}))", self.proj_dim(), self.n)?;
        for r in &self.rows {
            write!(f, " {:?}", r.iter().map(|c| c.0).collect::<Vec<_>>())?;
        }
        Ok(())
    }
}

/// In-place reduced row-echelon form; returns the pivot columns.
pub fn rref(rows: &mut Vec<Vec<FieldElement>>, field: &FieldSpec) -> Vec<usize> {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(pr) = (r..rows.len()).find(|&i| rows[i][c] != ZERO) else {
            continue;
        };
        rows.swap(r, pr);
        let inv = field.inv(rows[r][c]).expect("pivot is nonzero");
        if inv != ONE {
            for j in c..ncols {
                rows[r][j] = field.mul(rows[r][j], inv);
            }
        }
        for i in 0..rows.len() {
            if i != r && rows[i][c] != ZERO {
                let factor = rows[i][c];
                for j in c..ncols {
                    let s = field.mul(factor, rows[r][j]);
                    rows[i][j] = field.sub(rows[i][j], s);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

/// Reduce a vector against rows already in RREF.
pub fn reduce_against(v: &mut [FieldElement], rows: &[Vec<FieldElement>], field: &FieldSpec) {
    for row in rows {
        let c = row.iter().position(|&x| x != ZERO).expect("RREF row is nonzero");
        if v[c] != ZERO {
            let factor = v[c];
            for j in c..v.len() {
                let s = field.mul(factor, row[j]);
                v[j] = field.sub(v[j], s);
            }
        }
    }
}

/// Basis of the right kernel {v : M v = 0} of a matrix given in RREF,
/// itself returned in RREF.
pub fn nullspace(
    rows: &[Vec<FieldElement>],
    pivots: &[usize],
    ncols: usize,
    field: &FieldSpec,
) -> Vec<Vec<FieldElement>> {
    let mut basis = Vec::new();
    for f in 0..ncols {
        if pivots.contains(&f) {
            continue;
        }
        let mut v = vec![ZERO; ncols];
        v[f] = ONE;
        for (i, &p) in pivots.iter().enumerate() {
            v[p] = field.neg(rows[i][f]);
        }
        basis.push(v);
    }
    rref(&mut basis, field);
    basis
}

/// Rank of the union of two bases (used for skewness tests: two subspaces
/// are skew iff the stacked rank is the sum of the ranks).
pub fn joint_rank(a: &Subspace, b: &Subspace, field: &FieldSpec) -> usize {
    let mut rows: Vec<Vec<FieldElement>> =
        a.basis().iter().chain(b.basis()).cloned().collect();
    rref(&mut rows, field);
    rows.len()
}

pub fn are_skew(a: &Subspace, b: &Subspace, field: &FieldSpec) -> bool {
    joint_rank(a, b, field) == a.rank() + b.rank()
}

/// The unique covector (up to scalar; normalized so its first nonzero entry
/// is 1) vanishing on a hyperplane.
pub fn hyperplane_covector(h: &Subspace, field: &FieldSpec) -> Vec<FieldElement> {
    assert_eq!(h.rank(), h.ambient_dim(), "not a hyperplane");
    let ns = nullspace(h.basis(), &h.pivots(), h.ambient_dim() + 1, field);
    assert_eq!(ns.len(), 1);
    ns.into_iter().next().unwrap()
}

/// The subspace cut out by a set of covectors (e.g. the intersection of a
/// family of hyperplanes).
pub fn common_zero_set(covectors: &[Vec<FieldElement>], n: usize, field: &FieldSpec) -> Subspace {
    let mut m: Vec<Vec<FieldElement>> = covectors.to_vec();
    let pivots = rref(&mut m, field);
    let basis = nullspace(&m, &pivots, n + 1, field);
    Subspace { n, rows: basis }
}

/// Visit every rank-`rank` RREF matrix with `ncols` columns exactly once, in
/// lexicographic order on (pivot-column set, free entries).
pub fn for_each_rref(
    ncols: usize,
    rank: usize,
    field: &FieldSpec,
    mut visit: impl FnMut(&[Vec<FieldElement>]),
) {
    if rank == 0 || rank > ncols {
        if rank == 0 {
            visit(&[]);
        }
        return;
    }
    let q = field.q() as u32;
    let mut pivots: Vec<usize> = (0..rank).collect();
    loop {
        // free cells: (row i, col j) with j > pivots[i] and j not a pivot
        let mut free: Vec<(usize, usize)> = Vec::new();
        for i in 0..rank {
            for j in pivots[i] + 1..ncols {
                if !pivots.contains(&j) {
                    free.push((i, j));
                }
            }
        }
        let mut rows = vec![vec![ZERO; ncols]; rank];
        for i in 0..rank {
            rows[i][pivots[i]] = ONE;
        }
        let mut digits = vec![0u32; free.len()];
        loop {
            for (k, &(i, j)) in free.iter().enumerate() {
                rows[i][j] = FieldElement(digits[k]);
            }
            visit(&rows);
            // odometer, last cell fastest
            let mut k = free.len();
            loop {
                if k == 0 {
                    break;
                }
                k -= 1;
                digits[k] += 1;
                if digits[k] < q {
                    break;
                }
                digits[k] = 0;
            }
            if digits.iter().all(|&d| d == 0) {
                break;
            }
        }
        // next pivot combination in lex order
        let mut i = rank;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if pivots[i] < ncols - (rank - i) {
                pivots[i] += 1;
                for k in i + 1..rank {
                    pivots[k] = pivots[k - 1] + 1;
                }
                break;
            }
        }
    }
}
