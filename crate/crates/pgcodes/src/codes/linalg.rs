//! Exact row-reduction kernels over F_p.
//!
//! F_2 rows are packed into machine words and eliminated with word-parallel
//! XOR; general F_p uses byte vectors. Both maintain a fully reduced basis
//! (RREF) incrementally, so membership queries are reduce-and-compare
//! against recorded pivots rather than re-elimination.

pub fn words_for(ncols: usize) -> usize {
    ncols.div_ceil(64)
}

#[inline]
pub fn get_bit(row: &[u64], i: usize) -> bool {
    (row[i / 64] >> (i % 64)) & 1 == 1
}

#[inline]
pub fn set_bit(row: &mut [u64], i: usize) {
    row[i / 64] |= 1 << (i % 64);
}

#[inline]
pub fn xor_into(dst: &mut [u64], src: &[u64]) {
    for (d, s) in dst.iter_mut().zip(src) {
        *d ^= s;
    }
}

pub fn first_set_bit(row: &[u64]) -> Option<usize> {
    row.iter()
        .position(|&w| w != 0)
        .map(|wi| wi * 64 + row[wi].trailing_zeros() as usize)
}

pub fn popcount(row: &[u64]) -> u32 {
    row.iter().map(|w| w.count_ones()).sum()
}

pub fn pack_bits(bytes: &[u8]) -> Vec<u64> {
    let mut out = vec![0u64; words_for(bytes.len())];
    for (i, &b) in bytes.iter().enumerate() {
        if b != 0 {
            set_bit(&mut out, i);
        }
    }
    out
}

pub fn unpack_bits(row: &[u64], ncols: usize) -> Vec<u8> {
    (0..ncols).map(|i| get_bit(row, i) as u8).collect()
}

/// Incrementally maintained RREF basis over F_2 with packed rows, kept
/// sorted by pivot column.
#[derive(Clone, Debug)]
pub struct F2Rref {
    ncols: usize,
    words: usize,
    rows: Vec<Vec<u64>>,
    pivots: Vec<usize>,
}

impl F2Rref {
    pub fn new(ncols: usize) -> F2Rref {
        F2Rref {
            ncols,
            words: words_for(ncols),
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }
    pub fn rank(&self) -> usize {
        self.rows.len()
    }
    pub fn rows(&self) -> &[Vec<u64>] {
        &self.rows
    }
    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Insert a row, returning true if it enlarged the row space.
    pub fn insert(&mut self, mut row: Vec<u64>) -> bool {
        debug_assert_eq!(row.len(), self.words);
        self.reduce(&mut row);
        let Some(lead) = first_set_bit(&row) else {
            return false;
        };
        for r in &mut self.rows {
            if get_bit(r, lead) {
                xor_into(r, &row);
            }
        }
        let pos = self.pivots.partition_point(|&p| p < lead);
        self.pivots.insert(pos, lead);
        self.rows.insert(pos, row);
        true
    }

    pub fn reduce(&self, row: &mut [u64]) {
        for (r, &p) in self.rows.iter().zip(&self.pivots) {
            if get_bit(row, p) {
                xor_into(row, r);
            }
        }
    }

    pub fn contains(&self, row: &[u64]) -> bool {
        let mut v = row.to_vec();
        self.reduce(&mut v);
        v.iter().all(|&w| w == 0)
    }

    /// Basis of the right kernel, one vector per free column, in ascending
    /// free-column order.
    pub fn nullspace_rows(&self) -> Vec<Vec<u64>> {
        let mut out = Vec::with_capacity(self.ncols - self.rank());
        for f in 0..self.ncols {
            if self.pivots.binary_search(&f).is_ok() {
                continue;
            }
            let mut v = vec![0u64; self.words];
            set_bit(&mut v, f);
            for (r, &p) in self.rows.iter().zip(&self.pivots) {
                if get_bit(r, f) {
                    set_bit(&mut v, p);
                }
            }
            out.push(v);
        }
        out
    }
}

/// dst -= factor * src (mod p)
fn sub_scaled(p: u16, dst: &mut [u8], src: &[u8], factor: u8) {
    for (d, &s) in dst.iter_mut().zip(src) {
        let sub = factor as u16 * s as u16 % p;
        *d = ((*d as u16 + p - sub) % p) as u8;
    }
}

/// Incrementally maintained RREF basis over F_p (p odd prime), byte rows.
#[derive(Clone, Debug)]
pub struct FpRref {
    p: u16,
    ncols: usize,
    rows: Vec<Vec<u8>>,
    pivots: Vec<usize>,
    inv: Vec<u8>,
}

impl FpRref {
    pub fn new(p: u64, ncols: usize) -> FpRref {
        assert!(p < 256, "characteristic too large for byte rows");
        let p16 = p as u16;
        let mut inv = vec![0u8; p as usize];
        for a in 1..p16 {
            inv[a as usize] = (1..p16).find(|&b| a * b % p16 == 1).unwrap() as u8;
        }
        FpRref {
            p: p16,
            ncols,
            rows: Vec::new(),
            pivots: Vec::new(),
            inv,
        }
    }

    pub fn p(&self) -> u64 {
        self.p as u64
    }
    pub fn ncols(&self) -> usize {
        self.ncols
    }
    pub fn rank(&self) -> usize {
        self.rows.len()
    }
    pub fn rows(&self) -> &[Vec<u8>] {
        &self.rows
    }
    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn insert(&mut self, mut row: Vec<u8>) -> bool {
        debug_assert_eq!(row.len(), self.ncols);
        self.reduce(&mut row);
        let Some(lead) = row.iter().position(|&c| c != 0) else {
            return false;
        };
        let inv = self.inv[row[lead] as usize] as u16;
        for c in &mut row {
            *c = (*c as u16 * inv % self.p) as u8;
        }
        for r in &mut self.rows {
            let f = r[lead];
            if f != 0 {
                sub_scaled(self.p, r, &row, f);
            }
        }
        let pos = self.pivots.partition_point(|&p| p < lead);
        self.pivots.insert(pos, lead);
        self.rows.insert(pos, row);
        true
    }

    pub fn reduce(&self, row: &mut [u8]) {
        for (r, &pv) in self.rows.iter().zip(&self.pivots) {
            let f = row[pv];
            if f != 0 {
                sub_scaled(self.p, row, r, f);
            }
        }
    }

    pub fn contains(&self, row: &[u8]) -> bool {
        let mut v = row.to_vec();
        self.reduce(&mut v);
        v.iter().all(|&c| c == 0)
    }

    pub fn nullspace_rows(&self) -> Vec<Vec<u8>> {
        let mut out = Vec::with_capacity(self.ncols - self.rank());
        for f in 0..self.ncols {
            if self.pivots.binary_search(&f).is_ok() {
                continue;
            }
            let mut v = vec![0u8; self.ncols];
            v[f] = 1;
            for (r, &pv) in self.rows.iter().zip(&self.pivots) {
                v[pv] = ((self.p - r[f] as u16) % self.p) as u8;
            }
            out.push(v);
        }
        out
    }
}

/// RREF basis over F_p, dispatching to the packed F_2 kernel when p = 2.
#[derive(Clone, Debug)]
pub enum RrefBasis {
    F2(F2Rref),
    Fp(FpRref),
}

impl RrefBasis {
    pub fn new(p: u64, ncols: usize) -> RrefBasis {
        if p == 2 {
            RrefBasis::F2(F2Rref::new(ncols))
        } else {
            RrefBasis::Fp(FpRref::new(p, ncols))
        }
    }

    pub fn insert_bytes(&mut self, row: &[u8]) -> bool {
        match self {
            RrefBasis::F2(m) => m.insert(pack_bits(row)),
            RrefBasis::Fp(m) => m.insert(row.to_vec()),
        }
    }

    pub fn rank(&self) -> usize {
        match self {
            RrefBasis::F2(m) => m.rank(),
            RrefBasis::Fp(m) => m.rank(),
        }
    }

    pub fn ncols(&self) -> usize {
        match self {
            RrefBasis::F2(m) => m.ncols(),
            RrefBasis::Fp(m) => m.ncols(),
        }
    }

    pub fn contains_bytes(&self, row: &[u8]) -> bool {
        match self {
            RrefBasis::F2(m) => m.contains(&pack_bits(row)),
            RrefBasis::Fp(m) => m.contains(row),
        }
    }

    pub fn nullspace(&self) -> RrefBasis {
        match self {
            RrefBasis::F2(m) => {
                let mut out = F2Rref::new(m.ncols());
                for v in m.nullspace_rows() {
                    out.insert(v);
                }
                RrefBasis::F2(out)
            }
            RrefBasis::Fp(m) => {
                let mut out = FpRref::new(m.p(), m.ncols());
                for v in m.nullspace_rows() {
                    out.insert(v);
                }
                RrefBasis::Fp(out)
            }
        }
    }

    pub fn row_bytes(&self, i: usize) -> Vec<u8> {
        match self {
            RrefBasis::F2(m) => unpack_bits(&m.rows()[i], m.ncols()),
            RrefBasis::Fp(m) => m.rows()[i].clone(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f2_rank_and_membership() {
        let mut m = F2Rref::new(7);
        // Fano plane lines (each row = 3 points)
        let lines = [
            [0, 1, 2],
            [0, 3, 4],
            [0, 5, 6],
            [1, 3, 5],
            [1, 4, 6],
            [2, 3, 6],
            [2, 4, 5],
        ];
        for l in lines {
            let mut row = vec![0u8; 7];
            for &i in &l {
                row[i] = 1;
            }
            m.insert(pack_bits(&row));
        }
        assert_eq!(m.rank(), 4);
        let mut chi = vec![0u8; 7];
        for &i in &lines[0] {
            chi[i] = 1;
        }
        assert!(m.contains(&pack_bits(&chi)));
        assert!(m.contains(&pack_bits(&[1u8; 7])));
        assert!(!m.contains(&pack_bits(&[1, 0, 0, 0, 0, 0, 0])));
    }

    #[test]
    fn f2_nullspace_orthogonality() {
        let mut m = F2Rref::new(6);
        m.insert(pack_bits(&[1, 1, 0, 0, 1, 0]));
        m.insert(pack_bits(&[0, 1, 1, 1, 0, 0]));
        m.insert(pack_bits(&[1, 0, 1, 0, 0, 1]));
        let ns = m.nullspace_rows();
        assert_eq!(ns.len(), 6 - m.rank());
        for v in &ns {
            for r in m.rows() {
                let dot: u32 = r.iter().zip(v).map(|(a, b)| (a & b).count_ones()).sum();
                assert_eq!(dot % 2, 0);
            }
        }
    }

    #[test]
    fn fp_rank_and_nullspace() {
        let mut m = FpRref::new(3, 4);
        m.insert(vec![1, 2, 0, 1]);
        m.insert(vec![0, 1, 1, 2]);
        m.insert(vec![2, 1, 1, 0]); // dependent? 2*r0 + ... check rank below
        let rank = m.rank();
        let ns = m.nullspace_rows();
        assert_eq!(rank + ns.len(), 4);
        for v in &ns {
            for r in m.rows() {
                let dot: u16 = r.iter().zip(v).map(|(&a, &b)| a as u16 * b as u16).sum();
                assert_eq!(dot % 3, 0);
            }
        }
        assert!(m.contains(&[1, 2, 0, 1]));
    }

    #[test]
    fn fp_insert_is_idempotent_on_dependents() {
        let mut m = FpRref::new(5, 3);
        assert!(m.insert(vec![2, 1, 3]));
        assert!(!m.insert(vec![4, 2, 6 % 5]));
        assert_eq!(m.rank(), 1);
        // normalized leading coefficient
        assert_eq!(m.rows()[0][0], 1);
    }

    #[test]
    fn bit_helpers() {
        let mut row = vec![0u64; 2];
        set_bit(&mut row, 3);
        set_bit(&mut row, 70);
        assert!(get_bit(&row, 3) && get_bit(&row, 70));
        assert_eq!(first_set_bit(&row), Some(3));
        assert_eq!(popcount(&row), 2);
        let bytes = unpack_bits(&row, 80);
        assert_eq!(pack_bits(&bytes), row);
    }
}
