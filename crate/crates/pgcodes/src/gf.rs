//! Exact arithmetic in GF(p^h) with a canonical, reproducible representation.
//!
//! Elements are stored as dense integer indices in `[0, q)`: the index
//! `sum c_i p^i` decodes to the polynomial `sum c_i x^i` reduced modulo a
//! fixed monic irreducible of degree `h`. The default modulus for every
//! built-in `(p, h)` is the Conway polynomial, so point indices and output
//! files are bit-exact across implementations.

use std::fmt;
use thiserror::Error;

/// Element of a finite field, identified by its integer index in `[0, q)`.
///
/// Index 0 is the additive identity and index 1 the multiplicative identity.
/// The index is the base-`p` encoding of the coefficient vector, so for
/// `p = 2` it is simply the bit pattern of the polynomial.
#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct FieldElement(pub u32);

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

pub const ZERO: FieldElement = FieldElement(0);
pub const ONE: FieldElement = FieldElement(1);

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GfError {
    #[error("{0} is not prime")]
    NonPrime(u64),
    #[error("modulus is not a monic degree-{degree} irreducible over F_{p}")]
    ReduciblePolynomial { p: u64, degree: u32 },
    #[error("no default modulus for p={0}, h={1}; supply one explicitly")]
    NoDefaultModulus(u64, u32),
    #[error("cannot invert the zero element")]
    ZeroInverse,
    #[error("element index {index} does not belong to GF({q})")]
    FieldMismatch { index: u32, q: u64 },
    #[error("field order {0} exceeds the supported maximum 2^16")]
    FieldTooLarge(u64),
}

/// Conway polynomials for all prime powers q <= 32, little-endian
/// (constant term first, leading coefficient last).
const CONWAY: &[(u64, u32, &[u64])] = &[
    (2, 1, &[1, 1]),
    (2, 2, &[1, 1, 1]),
    (2, 3, &[1, 1, 0, 1]),
    (2, 4, &[1, 1, 0, 0, 1]),
    (2, 5, &[1, 0, 1, 0, 0, 1]),
    (3, 1, &[1, 1]),
    (3, 2, &[2, 2, 1]),
    (3, 3, &[1, 2, 0, 1]),
    (5, 1, &[3, 1]),
    (5, 2, &[2, 4, 1]),
    (7, 1, &[4, 1]),
    (11, 1, &[9, 1]),
    (13, 1, &[11, 1]),
    (17, 1, &[14, 1]),
    (19, 1, &[17, 1]),
    (23, 1, &[18, 1]),
    (29, 1, &[27, 1]),
    (31, 1, &[28, 1]),
];

/// Largest field order for which full addition tables are precomputed.
const ADD_TABLE_MAX_Q: u64 = 512;

/// A validated finite field GF(p^h) together with its arithmetic tables.
///
/// Immutable after construction; all operations are pure, so a `FieldSpec`
/// can be shared freely across threads.
#[derive(Clone)]
pub struct FieldSpec {
    p: u64,
    h: u32,
    q: u64,
    modulus: Vec<u64>,
    user_modulus: bool,
    exp: Vec<u32>,
    log: Vec<u32>,
    neg: Vec<u32>,
    add_table: Option<Vec<u32>>,
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.h == other.h && self.modulus == other.modulus
    }
}
impl Eq for FieldSpec {}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldSpec")
            .field("p", &self.p)
            .field("h", &self.h)
            .field("q", &self.q)
            .field("modulus", &self.modulus)
            .finish()
    }
}

impl FieldSpec {
    /// Build GF(p^h). With `modulus: None` the Conway polynomial from the
    /// built-in table is used; user-supplied moduli are validated and the
    /// field is flagged as non-canonical.
    pub fn new(p: u64, h: u32, modulus: Option<Vec<u64>>) -> Result<FieldSpec, GfError> {
        if !is_prime(p) {
            return Err(GfError::NonPrime(p));
        }
        assert!(h >= 1, "exponent must be positive");
        let q = p.checked_pow(h).filter(|&q| q <= 1 << 16).ok_or(
            GfError::FieldTooLarge(p.saturating_pow(h)),
        )?;

        let (modulus, user_modulus) = match modulus {
            Some(m) => (m, true),
            None => {
                let entry = CONWAY
                    .iter()
                    .find(|&&(cp, ch, _)| cp == p && ch == h)
                    .ok_or(GfError::NoDefaultModulus(p, h))?;
                (entry.2.to_vec(), false)
            }
        };

        if modulus.len() != h as usize + 1
            || modulus[h as usize] != 1
            || modulus.iter().any(|&c| c >= p)
            || !is_irreducible(&modulus, p)
        {
            return Err(GfError::ReduciblePolynomial { p, degree: h });
        }

        let mut field = FieldSpec {
            p,
            h,
            q,
            modulus,
            user_modulus,
            exp: Vec::new(),
            log: Vec::new(),
            neg: Vec::new(),
            add_table: None,
        };
        field.build_tables();
        Ok(field)
    }

    pub fn p(&self) -> u64 {
        self.p
    }
    pub fn h(&self) -> u32 {
        self.h
    }
    pub fn q(&self) -> u64 {
        self.q
    }
    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }
    /// True when the modulus was supplied by the user rather than taken from
    /// the Conway table; outputs are only canonical under the default modulus.
    pub fn user_modulus(&self) -> bool {
        self.user_modulus
    }

    /// All q elements in ascending index order. This is the canonical order
    /// used by every enumeration downstream.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.q as u32).map(FieldElement)
    }

    /// Validate an externally supplied index against this field.
    pub fn element(&self, index: u32) -> Result<FieldElement, GfError> {
        if (index as u64) < self.q {
            Ok(FieldElement(index))
        } else {
            Err(GfError::FieldMismatch { index, q: self.q })
        }
    }

    #[inline]
    fn check(&self, a: FieldElement) {
        assert!(
            (a.0 as u64) < self.q,
            "field mismatch: index {} not in GF({})",
            a.0,
            self.q
        );
    }

    #[inline]
    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.check(a);
        self.check(b);
        if self.p == 2 {
            return FieldElement(a.0 ^ b.0);
        }
        if let Some(table) = &self.add_table {
            return FieldElement(table[(a.0 as u64 * self.q + b.0 as u64) as usize]);
        }
        FieldElement(self.add_digits(a.0, b.0))
    }

    #[inline]
    pub fn neg(&self, a: FieldElement) -> FieldElement {
        self.check(a);
        FieldElement(self.neg[a.0 as usize])
    }

    #[inline]
    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.check(a);
        self.check(b);
        if a.0 == 0 || b.0 == 0 {
            return ZERO;
        }
        let order = self.q - 1;
        if order == 1 {
            return ONE;
        }
        let la = self.log[a.0 as usize] as u64;
        let lb = self.log[b.0 as usize] as u64;
        FieldElement(self.exp[((la + lb) % order) as usize])
    }

    pub fn inv(&self, a: FieldElement) -> Result<FieldElement, GfError> {
        self.check(a);
        if a.0 == 0 {
            return Err(GfError::ZeroInverse);
        }
        let order = self.q - 1;
        if order == 1 {
            return Ok(ONE);
        }
        let la = self.log[a.0 as usize] as u64;
        Ok(FieldElement(self.exp[((order - la) % order) as usize]))
    }

    pub fn pow(&self, a: FieldElement, e: u64) -> FieldElement {
        self.check(a);
        if e == 0 {
            return ONE;
        }
        if a.0 == 0 {
            return ZERO;
        }
        let order = self.q - 1;
        if order == 1 {
            return ONE;
        }
        let la = self.log[a.0 as usize] as u64;
        FieldElement(self.exp[((la % order * (e % order)) % order) as usize])
    }

    /// Embed a prime-field integer: `k mod p` as a field element.
    pub fn from_int(&self, k: u64) -> FieldElement {
        FieldElement((k % self.p) as u32)
    }

    /// Base-p coefficient vector of an element, little-endian, length h.
    pub fn coeffs(&self, a: FieldElement) -> Vec<u64> {
        self.check(a);
        let mut v = Vec::with_capacity(self.h as usize);
        let mut x = a.0 as u64;
        for _ in 0..self.h {
            v.push(x % self.p);
            x /= self.p;
        }
        v
    }

    /// Inverse of [`coeffs`](Self::coeffs): encode a coefficient vector.
    pub fn from_coeffs(&self, coeffs: &[u64]) -> FieldElement {
        assert!(coeffs.len() <= self.h as usize);
        let mut x = 0u64;
        for &c in coeffs.iter().rev() {
            debug_assert!(c < self.p);
            x = x * self.p + c;
        }
        FieldElement(x as u32)
    }

    fn add_digits(&self, a: u32, b: u32) -> u32 {
        let (mut a, mut b) = (a as u64, b as u64);
        let mut out = 0u64;
        let mut place = 1u64;
        while a != 0 || b != 0 {
            out += (a % self.p + b % self.p) % self.p * place;
            a /= self.p;
            b /= self.p;
            place *= self.p;
        }
        out as u32
    }

    /// Polynomial multiplication modulo the field modulus, working directly
    /// on coefficient vectors. Used to build the log tables and kept public
    /// as an independent route for cross-checking the table-based `mul`.
    pub fn mul_poly(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.check(a);
        self.check(b);
        let ca = self.coeffs(a);
        let cb = self.coeffs(b);
        let mut prod = vec![0u64; 2 * self.h as usize];
        for (i, &x) in ca.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in cb.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % self.p;
            }
        }
        poly_rem(&mut prod, &self.modulus, self.p);
        self.from_coeffs(&prod[..self.h as usize])
    }

    fn build_tables(&mut self) {
        let q = self.q as usize;
        self.neg = (0..q as u32)
            .map(|a| {
                let c: Vec<u64> = self
                    .coeffs_raw(a)
                    .iter()
                    .map(|&x| (self.p - x) % self.p)
                    .collect();
                self.from_coeffs(&c).0
            })
            .collect();

        let order = self.q - 1;
        self.exp = vec![1; order.max(1) as usize];
        self.log = vec![0; q];
        if order > 1 {
            let g = self.find_generator();
            let mut acc = ONE;
            for i in 0..order {
                self.exp[i as usize] = acc.0;
                self.log[acc.0 as usize] = i as u32;
                acc = self.mul_poly(acc, g);
            }
            debug_assert_eq!(acc, ONE);
        }

        if self.p > 2 && self.q <= ADD_TABLE_MAX_Q {
            let mut table = vec![0u32; q * q];
            for a in 0..q as u32 {
                for b in 0..=a {
                    let s = self.add_digits(a, b);
                    table[a as usize * q + b as usize] = s;
                    table[b as usize * q + a as usize] = s;
                }
            }
            self.add_table = Some(table);
        }
    }

    fn coeffs_raw(&self, a: u32) -> Vec<u64> {
        let mut v = Vec::with_capacity(self.h as usize);
        let mut x = a as u64;
        for _ in 0..self.h {
            v.push(x % self.p);
            x /= self.p;
        }
        v
    }

    fn find_generator(&self) -> FieldElement {
        let order = self.q - 1;
        'cand: for g in 2..self.q as u32 {
            let g = FieldElement(g);
            // g generates iff g^((q-1)/r) != 1 for every prime r | q-1
            for r in prime_factors(order) {
                if self.pow_poly(g, order / r) == ONE {
                    continue 'cand;
                }
            }
            return g;
        }
        // q = 2 has trivial multiplicative group
        ONE
    }

    fn pow_poly(&self, a: FieldElement, mut e: u64) -> FieldElement {
        let mut base = a;
        let mut acc = ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_poly(acc, base);
            }
            base = self.mul_poly(base, base);
            e >>= 1;
        }
        acc
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Remainder of `a` modulo the monic polynomial `m`, in place; coefficients mod p.
fn poly_rem(a: &mut Vec<u64>, m: &[u64], p: u64) {
    let dm = m.len() - 1;
    while let Some(da) = poly_degree(a) {
        if da < dm {
            break;
        }
        let lead = a[da];
        let shift = da - dm;
        for (i, &mc) in m.iter().enumerate() {
            let sub = lead * mc % p;
            a[i + shift] = (a[i + shift] + p - sub) % p;
        }
    }
    a.truncate(dm);
    a.resize(dm, 0);
}

fn poly_degree(a: &[u64]) -> Option<usize> {
    a.iter().rposition(|&c| c != 0)
}

/// Irreducibility over F_p by trial division against every monic polynomial
/// of degree up to half the candidate's degree.
fn is_irreducible(m: &[u64], p: u64) -> bool {
    let d = match poly_degree(m) {
        Some(d) if d >= 1 => d,
        _ => return false,
    };
    if d == 1 {
        return true;
    }
    for dd in 1..=d / 2 {
        // all monic divisor candidates of degree dd
        let count = p.pow(dd as u32);
        for k in 0..count {
            let mut div = Vec::with_capacity(dd + 1);
            let mut x = k;
            for _ in 0..dd {
                div.push(x % p);
                x /= p;
            }
            div.push(1);
            let mut rem = m.to_vec();
            poly_rem(&mut rem, &div, p);
            if poly_degree(&rem).is_none() {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn all_builtin_fields() -> Vec<FieldSpec> {
        CONWAY
            .iter()
            .map(|&(p, h, _)| FieldSpec::new(p, h, None).unwrap())
            .collect()
    }

    #[test]
    fn builtin_moduli() {
        let f2 = FieldSpec::new(2, 1, None).unwrap();
        assert_eq!(f2.modulus(), &[1, 1]);
        let f4 = FieldSpec::new(2, 2, None).unwrap();
        assert_eq!(f4.modulus(), &[1, 1, 1]);
        assert!(!f4.user_modulus());
    }

    #[test]
    fn reducible_modulus_rejected() {
        // x^2 = x * x
        let err = FieldSpec::new(2, 2, Some(vec![0, 0, 1])).unwrap_err();
        assert_eq!(err, GfError::ReduciblePolynomial { p: 2, degree: 2 });
    }

    #[test]
    fn non_prime_rejected() {
        assert_eq!(FieldSpec::new(6, 1, None).unwrap_err(), GfError::NonPrime(6));
        assert_eq!(FieldSpec::new(1, 1, None).unwrap_err(), GfError::NonPrime(1));
    }

    #[test]
    fn missing_default_modulus() {
        assert_eq!(
            FieldSpec::new(37, 1, None).unwrap_err(),
            GfError::NoDefaultModulus(37, 1)
        );
    }

    #[test]
    fn user_modulus_flagged() {
        // x^3 + x^2 + 1 is irreducible over F_2 but not the Conway choice
        let f8 = FieldSpec::new(2, 3, Some(vec![1, 0, 1, 1])).unwrap();
        assert!(f8.user_modulus());
    }

    #[test]
    fn gf4_multiplication() {
        // x * x = x + 1 mod x^2+x+1
        let f4 = FieldSpec::new(2, 2, None).unwrap();
        assert_eq!(f4.mul(FieldElement(2), FieldElement(2)), FieldElement(3));
    }

    #[test]
    fn gf8_multiplication() {
        // x * x^2 = x^3 = x + 1 mod x^3+x+1
        let f8 = FieldSpec::new(2, 3, None).unwrap();
        assert_eq!(f8.mul(FieldElement(2), FieldElement(4)), FieldElement(3));
    }

    #[test]
    fn table_mul_matches_poly_mul() {
        for f in all_builtin_fields() {
            for a in f.elements() {
                for b in f.elements() {
                    assert_eq!(f.mul(a, b), f.mul_poly(a, b), "q={}", f.q());
                }
            }
        }
    }

    #[test]
    fn additive_inverse() {
        for f in all_builtin_fields() {
            for a in f.elements() {
                assert_eq!(f.add(a, f.neg(a)), ZERO);
            }
        }
    }

    #[test]
    fn enumerate_elements() {
        let f2 = FieldSpec::new(2, 1, None).unwrap();
        assert_eq!(f2.elements().collect::<Vec<_>>(), vec![ZERO, ONE]);
        let f4 = FieldSpec::new(2, 2, None).unwrap();
        assert_eq!(
            f4.elements().map(|e| e.0).collect::<Vec<_>>(),
            vec![0, 1, 2, 3]
        );
        let f8 = FieldSpec::new(2, 3, None).unwrap();
        assert_eq!(f8.elements().count(), 8);
    }

    #[test]
    fn field_axioms_exhaustive() {
        for f in all_builtin_fields() {
            let els: Vec<_> = f.elements().collect();
            for &a in &els {
                for &b in &els {
                    assert_eq!(f.add(a, b), f.add(b, a));
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    for &c in &els {
                        assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                        assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                        assert_eq!(
                            f.mul(a, f.add(b, c)),
                            f.add(f.mul(a, b), f.mul(a, c))
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn lagrange_and_characteristic() {
        for f in all_builtin_fields() {
            for a in f.elements().skip(1) {
                assert_eq!(f.pow(a, f.q() - 1), ONE);
                assert_eq!(f.mul(a, f.inv(a).unwrap()), ONE);
            }
            let mut acc = ZERO;
            for _ in 0..f.p() {
                acc = f.add(acc, ONE);
            }
            assert_eq!(acc, ZERO);
        }
    }

    #[test]
    fn zero_inverse_rejected() {
        let f4 = FieldSpec::new(2, 2, None).unwrap();
        assert_eq!(f4.inv(ZERO).unwrap_err(), GfError::ZeroInverse);
    }

    #[test]
    fn foreign_index_rejected() {
        let f4 = FieldSpec::new(2, 2, None).unwrap();
        assert_eq!(
            f4.element(7).unwrap_err(),
            GfError::FieldMismatch { index: 7, q: 4 }
        );
        assert_eq!(f4.element(3).unwrap(), FieldElement(3));
    }

    #[test]
    fn coeff_roundtrip() {
        for f in all_builtin_fields() {
            for a in f.elements() {
                assert_eq!(f.from_coeffs(&f.coeffs(a)), a);
            }
        }
    }
}
