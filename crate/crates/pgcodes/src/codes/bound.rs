//! The Bagchi–Inamdar lower bound on the minimum weight of dual codes of
//! incidence structures, as an exact rational.

use crate::projgeom::theta;
use std::fmt;

/// Exact rational with reduced terms and positive denominator.
#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub struct Ratio {
    num: i128,
    den: i128,
}

impl Ratio {
    pub fn new(num: i128, den: i128) -> Ratio {
        assert!(den != 0);
        let g = gcd(num.unsigned_abs(), den.unsigned_abs()) as i128;
        let sign = if den < 0 { -1 } else { 1 };
        Ratio {
            num: sign * num / g,
            den: sign * den / g,
        }
    }

    pub fn from_int(n: i128) -> Ratio {
        Ratio { num: n, den: 1 }
    }

    pub fn num(&self) -> i128 {
        self.num
    }
    pub fn den(&self) -> i128 {
        self.den
    }
    pub fn is_integer(&self) -> bool {
        self.den == 1
    }

    /// Smallest integer >= self.
    pub fn ceil(&self) -> i128 {
        self.num.div_euclid(self.den) + if self.num.rem_euclid(self.den) != 0 { 1 } else { 0 }
    }
}

impl fmt::Display for Ratio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

impl PartialEq<i128> for Ratio {
    fn eq(&self, other: &i128) -> bool {
        self.den == 1 && self.num == *other
    }
}

impl PartialOrd for Ratio {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some((self.num * other.den).cmp(&(other.num * self.den)))
    }
}

fn gcd(a: u128, b: u128) -> u128 {
    if b == 0 {
        a.max(1)
    } else {
        gcd(b, a % b)
    }
}

/// Parameters of the incidence-structure bound: every pair of points lies
/// in at most `lambda` blocks and every point lies in at least
/// `n_blocks + lambda` blocks, over the prime field F_p.
#[derive(Copy, Clone, Debug)]
pub struct BoundParams {
    pub lambda: u64,
    pub n_blocks: u64,
    pub p: u64,
}

/// Lower bound 2((n + lambda)/lambda - n/(lambda p)) on the weight of any
/// nonzero dual codeword.
pub fn bagchi_inamdar_bound(bp: &BoundParams) -> Ratio {
    assert!(bp.lambda >= 1);
    let (l, n, p) = (bp.lambda as i128, bp.n_blocks as i128, bp.p as i128);
    Ratio::new(2 * ((n + l) * p - n), l * p)
}

/// The bound specialized to the code of points and lines of PG(n,q):
/// lambda = 1 and n + lambda = theta_{n-1} lines per point, giving
/// 2(theta_{n-1}(1 - 1/p) + 1/p).
pub fn line_code_dual_bound(n: usize, q: u64, p: u64) -> Ratio {
    let t = theta(n - 1, q) as i128;
    Ratio::new(2 * (t * (p as i128 - 1) + 1), p as i128)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ratio_arithmetic() {
        assert_eq!(Ratio::new(6, 4), Ratio::new(3, 2));
        assert_eq!(Ratio::new(8, 2), 4);
        assert_eq!(Ratio::new(7, 2).ceil(), 4);
        assert_eq!(Ratio::new(-7, 2).ceil(), -3);
        assert_eq!(Ratio::new(6, 2).ceil(), 3);
        assert_eq!(format!("{}", Ratio::new(5, 3)), "5/3");
        assert_eq!(format!("{}", Ratio::new(6, 3)), "2");
    }

    #[test]
    fn pg_bounds() {
        // C_1(2,4): 2(5*(1/2) + 1/2) = 6
        assert_eq!(line_code_dual_bound(2, 4, 2), 6);
        // C_1(2,8): 2(9*(1/2) + 1/2) = 10
        assert_eq!(line_code_dual_bound(2, 8, 2), 10);
        // C_1(3,4): 2(21*(1/2) + 1/2) = 22
        assert_eq!(line_code_dual_bound(3, 4, 2), 22);
        // C_1(2,2): 4 and C_1(3,2): 8
        assert_eq!(line_code_dual_bound(2, 2, 2), 4);
        assert_eq!(line_code_dual_bound(3, 2, 2), 8);
    }

    #[test]
    fn general_form_agrees_with_specialization() {
        for (n, q) in [(2usize, 4u64), (2, 8), (3, 4), (3, 2), (2, 3), (2, 9)] {
            let p = match q {
                9 => 3,
                3 => 3,
                _ => 2,
            };
            let t = theta(n - 1, q);
            let bp = BoundParams {
                lambda: 1,
                n_blocks: t - 1,
                p,
            };
            assert_eq!(bagchi_inamdar_bound(&bp), line_code_dual_bound(n, q, p));
        }
    }

    #[test]
    fn bound_is_not_always_integral() {
        // C_1(2,3): 2(4*(2/3) + 1/3) = 6 exactly; C_1(2,9): 2(10*2/3+1/3) = 14
        assert_eq!(line_code_dual_bound(2, 3, 3), 6);
        assert_eq!(line_code_dual_bound(2, 9, 3), 14);
        // a non-integral instance of the general form
        let bp = BoundParams {
            lambda: 3,
            n_blocks: 4,
            p: 5,
        };
        // 2((4+3)/3 - 4/15) = 2(35-4)/15 = 62/15
        assert_eq!(bagchi_inamdar_bound(&bp), Ratio::new(62, 15));
    }
}
