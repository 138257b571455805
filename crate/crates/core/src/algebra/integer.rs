//! Integer helpers: square-free parts, trial-division factoring, residues.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::Error;

/// Trial division stops here; cofactors above are handled as described
/// on [`factor`].
pub const TRIAL_DIVISION_LIMIT: u64 = 1_000_000;

/// Prime factorization `|n| = Π p^e` as `(p, e)` pairs in increasing order.
///
/// Trial division runs up to [`TRIAL_DIVISION_LIMIT`]. A cofactor `m` left
/// over has no prime factor below the limit, so it is prime when
/// `m < limit²`, and either prime, a prime square or a product of two large
/// primes when `m < limit³`. The first two cases are resolved with an
/// integer square root; everything else is reported as unfactored.
pub fn factor(n: &BigInt) -> Result<Vec<(BigInt, u32)>, Error> {
    let mut m = n.abs();
    if m.is_zero() {
        return Err(Error::Invalid("cannot factor zero".into()));
    }
    let mut out = Vec::new();
    let mut p = BigInt::from(2u32);
    let limit = BigInt::from(TRIAL_DIVISION_LIMIT);
    while p <= limit && &p * &p <= m {
        if m.is_multiple_of(&p) {
            let mut e = 0;
            while m.is_multiple_of(&p) {
                m /= &p;
                e += 1;
            }
            out.push((p.clone(), e));
        }
        p += if p == BigInt::from(2u32) { 1u32 } else { 2u32 };
    }
    if m.is_one() {
        return Ok(out);
    }
    let limit_sq = &limit * &limit;
    if m <= limit_sq || p > limit && &p * &p > m {
        out.push((m, 1));
        return Ok(out);
    }
    let r = m.sqrt();
    if &r * &r == m {
        out.push((r, 2));
        return Ok(out);
    }
    if m < &limit_sq * &limit {
        // Either a prime or a product of two distinct large primes; square-free
        // in both cases, but the primes themselves are unknown.
        return Err(Error::Unsupported(format!(
            "cofactor {m} has no prime factor below {TRIAL_DIVISION_LIMIT}; cannot factor"
        )));
    }
    Err(Error::Unsupported(format!(
        "cofactor {m} may hide a square factor above {TRIAL_DIVISION_LIMIT}"
    )))
}

/// Writes `n = k² · m` with `m` square-free (sign kept on `m`).
pub fn squarefree_decompose(n: &BigInt) -> Result<(BigInt, BigInt), Error> {
    if n.is_zero() {
        return Err(Error::Invalid("zero has no square-free part".into()));
    }
    let mut k = BigInt::one();
    let mut m = if n.is_negative() { -BigInt::one() } else { BigInt::one() };
    for (p, e) in factor(n)? {
        k *= num_traits::pow(p.clone(), (e / 2) as usize);
        if e % 2 == 1 {
            m *= p;
        }
    }
    Ok((k, m))
}

pub fn is_square(n: &BigInt) -> bool {
    if n.is_negative() {
        return false;
    }
    let r = n.sqrt();
    &r * &r == *n
}

/// Euler criterion for an odd prime `p`: is `a` a nonzero square mod `p`?
pub fn is_quadratic_residue(a: &BigInt, p: &BigInt) -> bool {
    let a = a.mod_floor(p);
    if a.is_zero() {
        return false;
    }
    let e = (p - 1u32) / 2u32;
    a.modpow(&e, p).is_one()
}

/// Square-free test on small machine integers.
pub fn is_squarefree_i64(n: i64) -> bool {
    if n == 0 {
        return false;
    }
    let mut m = n.unsigned_abs();
    let mut p = 2u64;
    while p * p <= m {
        if m % (p * p) == 0 {
            return false;
        }
        if m % p == 0 {
            m /= p;
        }
        p += 1;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(n: i64) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn factors_small() {
        assert_eq!(factor(&b(360)).unwrap(), vec![(b(2), 3), (b(3), 2), (b(5), 1)]);
        assert_eq!(factor(&b(-7)).unwrap(), vec![(b(7), 1)]);
        assert_eq!(factor(&b(1)).unwrap(), vec![]);
    }

    #[test]
    fn large_prime_square_is_found() {
        let p = b(1_000_003);
        let n = &p * &p * b(6);
        assert_eq!(squarefree_decompose(&n).unwrap(), (p, b(6)));
    }

    #[test]
    fn squarefree_part_keeps_sign() {
        assert_eq!(squarefree_decompose(&b(-12)).unwrap(), (b(2), b(-3)));
        assert_eq!(squarefree_decompose(&b(50)).unwrap(), (b(5), b(2)));
    }

    #[test]
    fn residues_mod_prime() {
        assert!(is_quadratic_residue(&b(-1), &b(5)));
        assert!(!is_quadratic_residue(&b(-1), &b(3)));
        assert!(!is_quadratic_residue(&b(2), &b(3)));
        assert!(is_quadratic_residue(&b(2), &b(7)));
    }

    #[test]
    fn squarefree_small() {
        assert!(is_squarefree_i64(-1));
        assert!(is_squarefree_i64(30));
        assert!(!is_squarefree_i64(12));
        assert!(!is_squarefree_i64(0));
    }
}
