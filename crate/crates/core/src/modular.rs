//! Arithmetic modulo word-size primes and fast evaluation of polynomial maps
//! over `Z/p`.
//!
//! Used to screen iterated difference sequences: a nonzero residue of
//! `P_k(a)` proves `P_k != 0` over the rationals, so these values serve as
//! exact non-vanishing certificates without expanding `P_k`.

use crate::poly_map::PolyMap;
use crate::polynomial::Polynomial;

/// Primes below `2^63` used for screening (`2^61 - 1`, `2^62 - 57`,
/// `2^63 - 25`).
pub const SCREEN_PRIMES: [u64; 3] = [2_305_843_009_213_693_951, 4_611_686_018_427_387_847, 9_223_372_036_854_775_783];

pub fn add(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 + b as u128) % p as u128) as u64
}

pub fn sub(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 + p as u128 - b as u128) % p as u128) as u64
}

pub fn mul(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub fn pow(mut base: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul(acc, base, p);
        }
        base = mul(base, base, p);
        e >>= 1;
    }
    acc
}

/// Inverse of a nonzero residue modulo the prime `p`.
pub fn inv(a: u64, p: u64) -> u64 {
    debug_assert!(!a.is_multiple_of(p));
    pow(a, p - 2, p)
}

/// A polynomial reduced modulo `p`, stored as (exponents, residue) pairs.
#[derive(Debug, Clone)]
pub struct ModPoly {
    terms: Vec<(Vec<u32>, u64)>,
}

impl ModPoly {
    /// `None` if `p` divides some coefficient denominator.
    pub fn reduce(poly: &Polynomial, p: u64) -> Option<Self> {
        let mut terms = Vec::with_capacity(poly.num_terms());
        for (m, c) in poly.terms() {
            let r = c.mod_prime(p)?;
            if r != 0 {
                terms.push((m.exponents().to_vec(), r));
            }
        }
        Some(ModPoly { terms })
    }

    pub fn eval(&self, point: &[u64], p: u64) -> u64 {
        let mut total = 0;
        for (exps, c) in &self.terms {
            let mut t = *c;
            for (x, &e) in point.iter().zip(exps) {
                if e > 0 {
                    t = mul(t, pow(*x, e as u64, p), p);
                }
            }
            total = add(total, t, p);
        }
        total
    }
}

/// A polynomial map reduced modulo `p`.
#[derive(Debug, Clone)]
pub struct ModMap {
    prime: u64,
    components: Vec<ModPoly>,
}

impl ModMap {
    pub fn reduce(f: &PolyMap, p: u64) -> Option<Self> {
        let components = f.components().iter().map(|c| ModPoly::reduce(c, p)).collect::<Option<_>>()?;
        Some(ModMap { prime: p, components })
    }

    pub fn prime(&self) -> u64 {
        self.prime
    }

    pub fn eval(&self, point: &[u64]) -> Vec<u64> {
        self.components.iter().map(|c| c.eval(point, self.prime)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::map_io::parse_map;
    use crate::rational::Rational;

    fn is_prime(n: u64) -> bool {
        // Deterministic Miller-Rabin for 64-bit inputs.
        if n < 2 {
            return false;
        }
        for q in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
            if n.is_multiple_of(q) {
                return n == q;
            }
        }
        let (mut d, mut s) = (n - 1, 0);
        while d % 2 == 0 {
            d /= 2;
            s += 1;
        }
        'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
            let mut x = pow(a, d, n);
            if x == 1 || x == n - 1 {
                continue;
            }
            for _ in 1..s {
                x = mul(x, x, n);
                if x == n - 1 {
                    continue 'witness;
                }
            }
            return false;
        }
        true
    }

    #[test]
    fn screening_moduli_are_prime() {
        for p in SCREEN_PRIMES {
            assert!(is_prime(p), "{p}");
        }
        assert!(!is_prime(SCREEN_PRIMES[0] + 2));
    }

    #[test]
    fn inverse_roundtrip() {
        let p = SCREEN_PRIMES[0];
        for a in [1u64, 2, 3, 12345, p - 1] {
            assert_eq!(mul(a, inv(a, p), p), 1);
        }
        assert_eq!(sub(1, 2, p), p - 1);
    }

    #[test]
    fn modular_eval_matches_exact() {
        let f = parse_map("vars: x y\nF1 = 1/3*x^3 - 2*x*y + 5\nF2 = y^4 - 7/2\n").unwrap().map;
        let p = SCREEN_PRIMES[1];
        let m = ModMap::reduce(&f, p).unwrap();
        let pt = [Rational::from(3), Rational::from(-4)];
        let exact = f.evaluate(&pt).unwrap();
        let pt_mod: Vec<u64> = pt.iter().map(|x| x.mod_prime(p).unwrap()).collect();
        let got = m.eval(&pt_mod);
        for (e, g) in exact.iter().zip(got) {
            assert_eq!(e.mod_prime(p).unwrap(), g);
        }
    }
}
