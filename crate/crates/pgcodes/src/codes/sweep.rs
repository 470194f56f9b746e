//! Full message-space traversal of a code given by a basis.
//!
//! The F_2 path walks the 2^d messages in Gray-code order so each step is a
//! single row XOR; the general F_p path advances a base-p odometer, adding
//! one basis row per digit increment (a wrapping digit contributes p adds,
//! which is a net zero). Both visit every nonzero codeword exactly once.

use super::linalg::{popcount, xor_into};
use rayon::prelude::*;

/// Hard enumeration budget: p^dim must not exceed 2^24.
pub const SWEEP_BUDGET_LOG2: u32 = 24;

pub fn within_budget(p: u64, dim: usize) -> bool {
    let mut total: u128 = 1;
    for _ in 0..dim {
        total *= p as u128;
        if total > 1 << SWEEP_BUDGET_LOG2 {
            return false;
        }
    }
    true
}

/// Serial Gray-code sweep over all nonzero messages of an F_2 basis.
/// `visit(message, codeword_words, weight)`.
pub fn sweep_f2(rows: &[Vec<u64>], words: usize, mut visit: impl FnMut(u64, &[u64], u32)) {
    let d = rows.len();
    assert!(d < 64);
    let mut acc = vec![0u64; words];
    for m in 1u64..(1 << d) {
        let bit = m.trailing_zeros() as usize;
        xor_into(&mut acc, &rows[bit]);
        visit(m ^ (m >> 1), &acc, popcount(&acc));
    }
}

/// Outcome of a parallel minimum-weight sweep.
#[derive(Debug)]
pub struct MinWeightSweep {
    /// Minimum weight over all nonzero codewords; u32::MAX for the zero code.
    pub min_weight: u32,
    /// Packed codewords collected according to the collect mode, in
    /// deterministic (chunk-ordered) traversal order.
    pub hits: Vec<Vec<u64>>,
    /// Number of messages visited.
    pub visited: u64,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Collect {
    /// Only compute the minimum weight.
    Nothing,
    /// Collect every codeword of exactly this weight.
    AtWeight(u32),
    /// Collect every codeword attaining the minimum nonzero weight.
    AtMinimum,
}

/// Parallel minimum-weight sweep over the row space of an F_2 basis.
///
/// The message space is split on the high message bits into chunks that are
/// swept independently and merged in chunk order, so the result does not
/// depend on the worker count.
pub fn sweep_f2_min(rows: &[Vec<u64>], words: usize, collect: Collect) -> MinWeightSweep {
    let d = rows.len();
    assert!(d < 64);
    if d == 0 {
        return MinWeightSweep {
            min_weight: u32::MAX,
            hits: Vec::new(),
            visited: 0,
        };
    }
    let low = d.min(16);
    let chunks = 1u64 << (d - low);

    let partials: Vec<MinWeightSweep> = (0..chunks)
        .into_par_iter()
        .map(|chunk| {
            let base = chunk << low;
            let mut acc = vec![0u64; words];
            for (i, row) in rows.iter().enumerate().take(d).skip(low) {
                if (base >> i) & 1 == 1 {
                    xor_into(&mut acc, row);
                }
            }
            let mut out = MinWeightSweep {
                min_weight: u32::MAX,
                hits: Vec::new(),
                visited: 0,
            };
            let note = |acc: &[u64], w: u32, out: &mut MinWeightSweep| {
                match collect {
                    Collect::Nothing => {
                        out.min_weight = out.min_weight.min(w);
                    }
                    Collect::AtWeight(t) => {
                        out.min_weight = out.min_weight.min(w);
                        if w == t {
                            out.hits.push(acc.to_vec());
                        }
                    }
                    Collect::AtMinimum => {
                        if w < out.min_weight {
                            out.min_weight = w;
                            out.hits.clear();
                        }
                        if w == out.min_weight {
                            out.hits.push(acc.to_vec());
                        }
                    }
                }
                out.visited += 1;
            };
            if base != 0 {
                note(&acc, popcount(&acc), &mut out);
            }
            for s in 1u64..(1 << low) {
                let bit = s.trailing_zeros() as usize;
                xor_into(&mut acc, &rows[bit]);
                note(&acc, popcount(&acc), &mut out);
            }
            out
        })
        .collect();

    let mut merged = MinWeightSweep {
        min_weight: u32::MAX,
        hits: Vec::new(),
        visited: 0,
    };
    for p in &partials {
        merged.min_weight = merged.min_weight.min(p.min_weight);
    }
    for mut p in partials {
        merged.visited += p.visited;
        match collect {
            Collect::Nothing => {}
            Collect::AtWeight(_) => merged.hits.append(&mut p.hits),
            Collect::AtMinimum => {
                if p.min_weight == merged.min_weight {
                    merged.hits.append(&mut p.hits);
                }
            }
        }
    }
    merged
}

/// Serial odometer sweep over all nonzero messages of an F_p basis (byte
/// rows). `visit(message_index, codeword_bytes, weight)`.
pub fn sweep_fp(rows: &[Vec<u8>], p: u64, mut visit: impl FnMut(u64, &[u8], u32)) {
    let d = rows.len();
    if d == 0 {
        return;
    }
    let ncols = rows[0].len();
    let p8 = p as u16;
    let mut digits = vec![0u8; d];
    let mut acc = vec![0u8; ncols];
    let mut m = 0u64;
    loop {
        // advance the odometer by one, adding each touched row once
        let mut i = 0;
        loop {
            if i == d {
                return;
            }
            for (a, &r) in acc.iter_mut().zip(&rows[i]) {
                *a = ((*a as u16 + r as u16) % p8) as u8;
            }
            digits[i] += 1;
            if (digits[i] as u64) < p {
                break;
            }
            digits[i] = 0;
            i += 1;
        }
        m += 1;
        let w = acc.iter().filter(|&&c| c != 0).count() as u32;
        visit(m, &acc, w);
    }
}
