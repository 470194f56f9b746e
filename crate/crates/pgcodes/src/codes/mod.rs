//! The codes C_k(n,q) over F_p and their duals: construction, dimension,
//! membership, weights, bounded codeword enumeration, and the codeword
//! machinery around hyperplane codes (beta, feet, the multiset identity).

pub mod bound;
pub mod linalg;
pub mod sweep;

pub use bound::{bagchi_inamdar_bound, line_code_dual_bound, BoundParams, Ratio};

use crate::projgeom::{AmbientSpace, PointSet, Subspace};
use linalg::RrefBasis;
use std::sync::{Arc, OnceLock};
use thiserror::Error;

/// Largest point count admitted to the exact linear-algebra machinery.
pub const LINALG_MAX_POINTS: usize = 4096;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CodeError {
    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("block dimension k={k} out of range 1..={max} for PG({n},q)")]
    InvalidBlockDimension { k: usize, n: usize, max: usize },
    #[error("vector is not a codeword of this code")]
    NotACodeword,
    #[error("code vector belongs to a different ambient space")]
    AmbientMismatch,
}

/// A function points -> F_p, stored densely in canonical point order.
#[derive(Clone)]
pub struct CodeVector {
    ambient: Arc<AmbientSpace>,
    values: Vec<u8>,
}

impl CodeVector {
    pub fn zero(ambient: &Arc<AmbientSpace>) -> CodeVector {
        CodeVector {
            ambient: ambient.clone(),
            values: vec![0; ambient.num_points()],
        }
    }

    pub fn constant(ambient: &Arc<AmbientSpace>, v: u8) -> CodeVector {
        debug_assert!((v as u64) < ambient.field().p());
        CodeVector {
            ambient: ambient.clone(),
            values: vec![v; ambient.num_points()],
        }
    }

    pub fn from_values(ambient: &Arc<AmbientSpace>, values: Vec<u8>) -> CodeVector {
        assert_eq!(values.len(), ambient.num_points());
        let p = ambient.field().p();
        assert!(values.iter().all(|&v| (v as u64) < p));
        CodeVector {
            ambient: ambient.clone(),
            values,
        }
    }

    /// Characteristic vector of a point set.
    pub fn chi(ambient: &Arc<AmbientSpace>, set: &PointSet) -> CodeVector {
        let mut v = CodeVector::zero(ambient);
        for i in set.iter() {
            v.values[i as usize] = 1;
        }
        v
    }

    /// Characteristic vector of a subspace.
    pub fn chi_subspace(ambient: &Arc<AmbientSpace>, sub: &Subspace) -> CodeVector {
        CodeVector::chi(ambient, &ambient.subspace_points(sub))
    }

    pub fn ambient(&self) -> &Arc<AmbientSpace> {
        &self.ambient
    }
    pub fn values(&self) -> &[u8] {
        &self.values
    }
    pub fn value(&self, point: u32) -> u8 {
        self.values[point as usize]
    }
    pub fn p(&self) -> u64 {
        self.ambient.field().p()
    }

    pub fn weight(&self) -> usize {
        self.values.iter().filter(|&&v| v != 0).count()
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|&v| v == 0)
    }

    pub fn support(&self) -> PointSet {
        let mut s = PointSet::empty(self.values.len());
        for (i, &v) in self.values.iter().enumerate() {
            if v != 0 {
                s.insert(i as u32);
            }
        }
        s
    }

    pub fn neg(&self) -> CodeVector {
        let p = self.p() as u16;
        self.map(|v| ((p - v as u16) % p) as u8)
    }

    pub fn add(&self, other: &CodeVector) -> CodeVector {
        self.zip(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &CodeVector) -> CodeVector {
        let p = self.p() as u16;
        self.zip(other, move |a, b| a + p - b)
    }

    pub fn scale(&self, factor: u8) -> CodeVector {
        self.map(|v| (v as u16 * factor as u16 % self.p() as u16) as u8)
    }

    fn map(&self, f: impl Fn(u8) -> u8) -> CodeVector {
        CodeVector {
            ambient: self.ambient.clone(),
            values: self.values.iter().map(|&v| f(v)).collect(),
        }
    }

    fn zip(&self, other: &CodeVector, f: impl Fn(u16, u16) -> u16) -> CodeVector {
        assert!(self.same_ambient(other));
        let p = self.p() as u16;
        CodeVector {
            ambient: self.ambient.clone(),
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(&a, &b)| (f(a as u16, b as u16) % p) as u8)
                .collect(),
        }
    }

    pub fn dot(&self, other: &CodeVector) -> u8 {
        assert!(self.same_ambient(other));
        let p = self.p() as u64;
        let mut acc = 0u64;
        for (&a, &b) in self.values.iter().zip(&other.values) {
            acc += a as u64 * b as u64;
        }
        (acc % p) as u8
    }

    /// |M(c)|: the size of the multiset where each point P occurs with
    /// multiplicity nu(c(P)), the integer representative of c(P) in [0,p).
    pub fn multiset_size(&self) -> u64 {
        self.values.iter().map(|&v| v as u64).sum()
    }

    pub fn same_ambient(&self, other: &CodeVector) -> bool {
        Arc::ptr_eq(&self.ambient, &other.ambient)
            || (self.ambient.n() == other.ambient.n()
                && self.ambient.field() == other.ambient.field())
    }
}

impl PartialEq for CodeVector {
    fn eq(&self, other: &Self) -> bool {
        self.same_ambient(other) && self.values == other.values
    }
}
impl Eq for CodeVector {}

impl std::fmt::Debug for CodeVector {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "CodeVector(wt {}) {:?}", self.weight(), self.values)
    }
}

/// The code C_k(n,q): the F_p-span of the characteristic vectors of all
/// k-spaces of PG(n,q). Immutable after build.
pub struct IncidenceCode {
    ambient: Arc<AmbientSpace>,
    k: usize,
    blocks: Vec<Vec<u32>>,
    basis: RrefBasis,
    dual: OnceLock<RrefBasis>,
}

impl IncidenceCode {
    pub fn build(ambient: Arc<AmbientSpace>, k: usize) -> Result<IncidenceCode, CodeError> {
        let n = ambient.n();
        if k < 1 || k > n - 1 {
            return Err(CodeError::InvalidBlockDimension { k, n, max: n - 1 });
        }
        let num_points = ambient.num_points();
        if num_points > LINALG_MAX_POINTS {
            return Err(CodeError::BudgetExceeded(format!(
                "{} points exceed the linear-algebra budget of {}",
                num_points, LINALG_MAX_POINTS
            )));
        }
        let blocks: Vec<Vec<u32>> = if k == 1 {
            ambient.lines().to_vec()
        } else {
            let mut out = Vec::new();
            ambient.for_each_subspace(k, |s| out.push(ambient.subspace_point_list(s)));
            out
        };
        let p = ambient.field().p();
        let mut basis = RrefBasis::new(p, num_points);
        let mut chi = vec![0u8; num_points];
        for b in &blocks {
            for &i in b {
                chi[i as usize] = 1;
            }
            basis.insert_bytes(&chi);
            for &i in b {
                chi[i as usize] = 0;
            }
        }
        Ok(IncidenceCode {
            ambient,
            k,
            blocks,
            basis,
            dual: OnceLock::new(),
        })
    }

    pub fn ambient(&self) -> &Arc<AmbientSpace> {
        &self.ambient
    }
    pub fn k(&self) -> usize {
        self.k
    }
    pub fn p(&self) -> u64 {
        self.ambient.field().p()
    }
    pub fn dimension(&self) -> usize {
        self.basis.rank()
    }
    pub fn dual_dimension(&self) -> usize {
        self.ambient.num_points() - self.basis.rank()
    }
    /// Point lists of the generating blocks (all k-spaces, canonical order).
    pub fn blocks(&self) -> &[Vec<u32>] {
        &self.blocks
    }
    pub fn basis(&self) -> &RrefBasis {
        &self.basis
    }

    pub fn block_chi(&self, i: usize) -> CodeVector {
        CodeVector::chi(
            &self.ambient,
            &PointSet::from_indices(self.ambient.num_points(), &self.blocks[i]),
        )
    }

    /// RREF basis of the dual code (the right kernel of the incidence
    /// matrix), built on first use.
    pub fn dual_basis(&self) -> &RrefBasis {
        self.dual.get_or_init(|| {
            let ns = self.basis.nullspace();
            debug_assert_eq!(ns.rank(), self.dual_dimension());
            ns
        })
    }

    /// Membership in the code: reduce against the recorded RREF basis.
    pub fn contains(&self, c: &CodeVector) -> bool {
        assert!(self.same_ambient(c), "code vector from a different space");
        self.basis.contains_bytes(&c.values)
    }

    /// Membership in the dual code: c . chi_B = 0 for every block B.
    pub fn dual_contains(&self, c: &CodeVector) -> bool {
        assert!(self.same_ambient(c), "code vector from a different space");
        let p = self.p();
        self.blocks.iter().all(|b| {
            let sum: u64 = b.iter().map(|&i| c.values[i as usize] as u64).sum();
            sum % p == 0
        })
    }

    fn same_ambient(&self, c: &CodeVector) -> bool {
        Arc::ptr_eq(&self.ambient, &c.ambient)
            || (self.ambient.n() == c.ambient.n() && self.ambient.field() == c.ambient.field())
    }

    /// The constant beta with c . chi_rho = beta for every subspace rho of
    /// dimension >= 1; defined for codewords of the hyperplane code
    /// C_{n-1}(n,q). In debug builds the constancy is asserted across a
    /// sample of subspaces of every dimension.
    pub fn beta_of(&self, c: &CodeVector) -> Result<u8, CodeError> {
        assert_eq!(
            self.k,
            self.ambient.n() - 1,
            "beta is defined for the hyperplane code"
        );
        if !self.contains(c) {
            return Err(CodeError::NotACodeword);
        }
        let line0 = CodeVector::chi(
            &self.ambient,
            &PointSet::from_indices(self.ambient.num_points(), self.ambient.line_points(0)),
        );
        let beta = c.dot(&line0);
        #[cfg(debug_assertions)]
        {
            for d in 1..self.ambient.n() {
                let mut sampled = 0;
                self.ambient.for_each_subspace(d, |s| {
                    if sampled < 5 {
                        let chi = CodeVector::chi_subspace(&self.ambient, s);
                        debug_assert_eq!(c.dot(&chi), beta);
                        sampled += 1;
                    }
                });
            }
        }
        Ok(beta)
    }

    /// All codewords c with 0 < wt(c) <= wmax, by full message-space
    /// traversal, in ascending message order.
    pub fn enumerate_codewords_up_to_weight(
        &self,
        wmax: usize,
    ) -> Result<Vec<CodeVector>, CodeError> {
        let dim = self.dimension();
        if !sweep::within_budget(self.p(), dim) {
            return Err(CodeError::BudgetExceeded(format!(
                "{}^{} messages exceed 2^{}",
                self.p(),
                dim,
                sweep::SWEEP_BUDGET_LOG2
            )));
        }
        if wmax == 0 {
            return Ok(Vec::new());
        }
        let ncols = self.ambient.num_points();
        let mut hits: Vec<(u64, Vec<u8>)> = Vec::new();
        match &self.basis {
            RrefBasis::F2(m) => {
                sweep::sweep_f2(m.rows(), linalg::words_for(ncols), |msg, cw, w| {
                    if w as usize <= wmax {
                        hits.push((msg, linalg::unpack_bits(cw, ncols)));
                    }
                });
            }
            RrefBasis::Fp(m) => {
                sweep::sweep_fp(m.rows(), self.p(), |msg, cw, w| {
                    if w as usize <= wmax {
                        hits.push((msg, cw.to_vec()));
                    }
                });
            }
        }
        hits.sort_by_key(|(msg, _)| *msg);
        Ok(hits
            .into_iter()
            .map(|(_, values)| CodeVector {
                ambient: self.ambient.clone(),
                values,
            })
            .collect())
    }
}

/// The feet of P with respect to S: the points R of S such that the line PR
/// carries no other point of S besides possibly P itself.
pub fn feet(space: &AmbientSpace, s: &PointSet, point: u32) -> PointSet {
    let mut out = PointSet::empty(space.num_points());
    for lid in space.lines_through(point) {
        let mut only: Option<u32> = None;
        let mut count = 0;
        for &r in space.line_points(lid) {
            if r != point && s.contains(r) {
                count += 1;
                only = Some(r);
            }
        }
        if count == 1 {
            out.insert(only.unwrap());
        }
    }
    out
}

/// True iff the span of supp(c) has projective dimension exactly
/// `expected_dim` (for minimum-weight dual codewords of C_k(n,q) that
/// dimension is n-k+1).
pub fn support_subspace_check(c: &CodeVector, expected_dim: i64) -> bool {
    let supp = c.support();
    if supp.is_empty() {
        return expected_dim == -1;
    }
    c.ambient().span_set(&supp).proj_dim() == expected_dim
}

/// Value profile of a dual codeword against the equality case of the
/// incidence bound: image {0, +-alpha}, balanced classes, and the
/// three admissible block intersection patterns. Reported, not required:
/// no claim is made that every minimum-weight word must satisfy it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EqualityCaseProfile {
    pub image_is_pm_alpha: bool,
    pub alpha: Option<u8>,
    pub balanced: bool,
    pub block_profile_ok: bool,
}

pub fn equality_case_profile(code: &IncidenceCode, c: &CodeVector) -> EqualityCaseProfile {
    let p = code.p() as u16;
    let mut values: Vec<u8> = c.values().iter().copied().filter(|&v| v != 0).collect();
    values.sort_unstable();
    values.dedup();
    let (image_is_pm_alpha, alpha) = match values.as_slice() {
        [a] if (*a as u16 * 2) % p == 0 => (true, Some(*a)), // alpha = -alpha
        [a, b] if (*a as u16 + *b as u16) % p == 0 => (true, Some(*a)),
        [] => (true, None),
        _ => (false, None),
    };
    let balanced = match alpha {
        None => true,
        Some(a) => {
            let neg_a = ((p - a as u16) % p) as u8;
            let ca = c.values().iter().filter(|&&v| v == a).count();
            let cn = c.values().iter().filter(|&&v| v == neg_a).count();
            a == neg_a || ca == cn
        }
    };
    let block_profile_ok = image_is_pm_alpha
        && code.blocks().iter().all(|b| {
            let nz: Vec<u8> = b
                .iter()
                .map(|&i| c.value(i))
                .filter(|&v| v != 0)
                .collect();
            match (nz.len(), alpha) {
                (0, _) => true,
                (_, None) => true,
                (2, Some(_)) => (nz[0] as u16 + nz[1] as u16) % p == 0,
                (len, Some(_)) if len == p as usize => nz.iter().all(|&v| v == nz[0]),
                _ => false,
            }
        });
    EqualityCaseProfile {
        image_is_pm_alpha,
        alpha,
        balanced,
        block_profile_ok,
    }
}
