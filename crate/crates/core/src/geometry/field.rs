//! Small finite fields GF(p^k) with precomputed operation tables.
//!
//! Elements are encoded as integers `0..q`: the base-`p` digits of an element
//! are the coefficients of its polynomial representative, lowest degree first.

use thiserror::Error;

/// Largest field order built by default.
pub const DEFAULT_FIELD_CEILING: u32 = 16;

/// Operation tables are `u16`-indexed.
const HARD_CEILING: u32 = 1 << 12;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("{0} is not a prime power")]
    NotPrimePower(u32),
    #[error("field order {q} exceeds the ceiling {ceiling}")]
    CeilingExceeded { q: u32, ceiling: u32 },
    #[error("field axiom `{axiom}` fails at {witness:?}")]
    AxiomViolation {
        axiom: &'static str,
        witness: Vec<u32>,
    },
}

/// Returns `(p, k)` with `q = p^k` and `p` prime, if such exist.
pub fn prime_power(q: u32) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q % d == 0)?;
    let (mut rest, mut k) = (q, 0);
    while rest % p == 0 {
        rest /= p;
        k += 1;
    }
    (rest == 1).then_some((p, k))
}

#[derive(Clone, PartialEq, Eq)]
pub struct FiniteField {
    p: u32,
    k: u32,
    q: u32,
    /// Monic modulus, lowest degree first, including the leading 1.
    modulus: Vec<u32>,
    add: Vec<u16>,
    mul: Vec<u16>,
    neg: Vec<u16>,
    inv: Vec<u16>,
}

impl std::fmt::Debug for FiniteField {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "GF({}) mod {:?}", self.q, self.modulus)
    }
}

impl FiniteField {
    pub fn new(q: u32) -> Result<Self, FieldError> {
        Self::with_ceiling(q, DEFAULT_FIELD_CEILING)
    }

    /// Builds GF(q) if `q ≤ ceiling`. Fields of order at most 16 are checked
    /// against the field axioms exhaustively before being returned.
    pub fn with_ceiling(q: u32, ceiling: u32) -> Result<Self, FieldError> {
        let ceiling = ceiling.min(HARD_CEILING);
        let (p, k) = prime_power(q).ok_or(FieldError::NotPrimePower(q))?;
        if q > ceiling {
            return Err(FieldError::CeilingExceeded { q, ceiling });
        }
        let modulus = if k == 1 {
            vec![0, 1]
        } else {
            least_irreducible(p, k as usize)
        };

        let qs = q as usize;
        let digits = |x: u32| -> Vec<u32> {
            let mut d = vec![0; k as usize];
            let mut x = x;
            for slot in d.iter_mut() {
                *slot = x % p;
                x /= p;
            }
            d
        };
        let encode = |d: &[u32]| d.iter().rev().fold(0, |acc, &c| acc * p + c);

        let mut add = vec![0u16; qs * qs];
        let mut mul = vec![0u16; qs * qs];
        for x in 0..q {
            let dx = digits(x);
            for y in 0..q {
                let dy = digits(y);
                let sum: Vec<u32> = dx.iter().zip(&dy).map(|(a, b)| (a + b) % p).collect();
                add[(x * q + y) as usize] = encode(&sum) as u16;
                let prod = poly_mulmod(&dx, &dy, &modulus, p);
                mul[(x * q + y) as usize] = encode(&prod) as u16;
            }
        }
        let neg = (0..qs)
            .map(|x| (0..qs).find(|&y| add[x * qs + y] == 0).unwrap() as u16)
            .collect();
        let inv = (0..qs)
            .map(|x| {
                if x == 0 {
                    0
                } else {
                    (1..qs).find(|&y| mul[x * qs + y] == 1).unwrap_or(0) as u16
                }
            })
            .collect();

        let field = FiniteField {
            p,
            k,
            q,
            modulus,
            add,
            mul,
            neg,
            inv,
        };
        if q <= 16 {
            field.verify_axioms()?;
        }
        Ok(field)
    }

    pub fn order(&self) -> u32 {
        self.q
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.k
    }

    /// Monic modulus coefficients, lowest degree first.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    #[inline]
    pub fn add(&self, x: u32, y: u32) -> u32 {
        self.add[(x * self.q + y) as usize] as u32
    }

    #[inline]
    pub fn mul(&self, x: u32, y: u32) -> u32 {
        self.mul[(x * self.q + y) as usize] as u32
    }

    pub fn neg(&self, x: u32) -> u32 {
        self.neg[x as usize] as u32
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, x: u32) -> Option<u32> {
        (x != 0).then(|| self.inv[x as usize] as u32)
    }

    /// Exhaustive check of the field axioms over all element triples.
    pub fn verify_axioms(&self) -> Result<(), FieldError> {
        let q = self.q;
        let fail = |axiom, witness: &[u32]| {
            Err(FieldError::AxiomViolation {
                axiom,
                witness: witness.to_vec(),
            })
        };
        for x in 0..q {
            if self.add(x, 0) != x {
                return fail("additive identity", &[x]);
            }
            if self.mul(x, 1) != x {
                return fail("multiplicative identity", &[x]);
            }
            if self.add(x, self.neg(x)) != 0 {
                return fail("additive inverse", &[x]);
            }
            if x != 0 && self.inv(x).map(|i| self.mul(x, i)) != Some(1) {
                return fail("multiplicative inverse", &[x]);
            }
            for y in 0..q {
                if self.add(x, y) != self.add(y, x) {
                    return fail("additive commutativity", &[x, y]);
                }
                if self.mul(x, y) != self.mul(y, x) {
                    return fail("multiplicative commutativity", &[x, y]);
                }
                for z in 0..q {
                    if self.add(self.add(x, y), z) != self.add(x, self.add(y, z)) {
                        return fail("additive associativity", &[x, y, z]);
                    }
                    if self.mul(self.mul(x, y), z) != self.mul(x, self.mul(y, z)) {
                        return fail("multiplicative associativity", &[x, y, z]);
                    }
                    if self.mul(x, self.add(y, z)) != self.add(self.mul(x, y), self.mul(x, z)) {
                        return fail("distributivity", &[x, y, z]);
                    }
                }
            }
        }
        Ok(())
    }
}

/// Product of two residues modulo a monic polynomial over GF(p).
fn poly_mulmod(a: &[u32], b: &[u32], modulus: &[u32], p: u32) -> Vec<u32> {
    let k = modulus.len() - 1;
    let mut prod = vec![0u32; a.len() + b.len()];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    poly_rem(&mut prod, modulus, p);
    prod.truncate(k);
    prod.resize(k, 0);
    prod
}

/// Reduces `a` in place modulo the monic `m`.
fn poly_rem(a: &mut [u32], m: &[u32], p: u32) {
    let k = m.len() - 1;
    for top in (k..a.len()).rev() {
        let c = a[top];
        if c == 0 {
            continue;
        }
        for (i, &mi) in m.iter().enumerate() {
            let idx = top - k + i;
            a[idx] = (a[idx] + (p - c) * mi) % p;
        }
    }
}

/// Monic polynomials of degree `k` over GF(p) in ascending order of their
/// non-leading coefficients read as a base-`p` number, highest degree most
/// significant.
fn monic_polys(p: u32, k: usize) -> impl Iterator<Item = Vec<u32>> {
    let count = (p as u64).pow(k as u32);
    (0..count).map(move |mut code| {
        let mut c = vec![0u32; k + 1];
        for slot in c.iter_mut().take(k) {
            *slot = (code % p as u64) as u32;
            code /= p as u64;
        }
        c[k] = 1;
        c
    })
}

fn is_irreducible(f: &[u32], p: u32) -> bool {
    let k = f.len() - 1;
    (1..=k / 2).all(|d| {
        monic_polys(p, d).all(|g| {
            let mut r = f.to_vec();
            poly_rem(&mut r, &g, p);
            r[..d].iter().any(|&c| c != 0)
        })
    })
}

/// The least irreducible monic polynomial of degree `k` over GF(p).
pub fn least_irreducible(p: u32, k: usize) -> Vec<u32> {
    monic_polys(p, k)
        .find(|f| is_irreducible(f, p))
        .expect("irreducible polynomials exist in every degree")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_powers() {
        assert_eq!(prime_power(2), Some((2, 1)));
        assert_eq!(prime_power(9), Some((3, 2)));
        assert_eq!(prime_power(16), Some((2, 4)));
        assert_eq!(prime_power(6), None);
        assert_eq!(prime_power(1), None);
        assert_eq!(prime_power(12), None);
    }

    #[test]
    fn field_examples() {
        let gf2 = FiniteField::new(2).unwrap();
        assert_eq!((gf2.characteristic(), gf2.degree()), (2, 1));

        let gf4 = FiniteField::new(4).unwrap();
        assert_eq!(gf4.modulus(), &[1, 1, 1]);

        assert_eq!(FiniteField::new(6), Err(FieldError::NotPrimePower(6)));
        assert_eq!(
            FiniteField::new(17),
            Err(FieldError::CeilingExceeded { q: 17, ceiling: 16 })
        );
        assert!(FiniteField::with_ceiling(17, 32).is_ok());
    }

    #[test]
    fn least_moduli() {
        assert_eq!(least_irreducible(2, 3), [1, 1, 0, 1]);
        assert_eq!(least_irreducible(3, 2), [1, 0, 1]);
        assert_eq!(least_irreducible(2, 4), [1, 1, 0, 0, 1]);
    }

    #[test]
    fn every_small_field_satisfies_the_axioms() {
        for q in [2, 3, 4, 5, 7, 8, 9, 11, 13, 16] {
            let f = FiniteField::new(q).unwrap();
            assert_eq!(f.verify_axioms(), Ok(()), "GF({q})");
        }
    }

    #[test]
    fn gf4_multiplication() {
        // x * x = x + 1 under x^2 + x + 1
        let f = FiniteField::new(4).unwrap();
        assert_eq!(f.mul(2, 2), 3);
        assert_eq!(f.mul(2, 3), 1);
        assert_eq!(f.add(2, 3), 1);
    }
}
