//! Exact arithmetic of residues and 2x2 matrices over Z/p^n.
//!
//! Everything here is a pure function over immutable values. Residues are
//! plain `u64` kept fully reduced into `[0, p^n)`; the [`Ctx`] carries the
//! modulus and rejects parameters that could overflow 64-bit products.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::fmt;

/// A residue class mod p^n, always stored fully reduced into `[0, p^n)`.
pub type Residue = u64;

/// The ambient arithmetic world: an odd prime p, an exponent n, the modulus p^n.
///
/// Construction rejects p = 2, composite p and any (p, n) with p^(2n) >= 2^63,
/// so that products of two reduced residues never overflow.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Ctx {
    p: u64,
    n: u32,
    modulus: u64,
}

fn is_prime(m: u64) -> bool {
    if m < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= m {
        if m % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl Ctx {
    pub fn new(p: u64, n: u32) -> Result<Self> {
        if p == 2 || !is_prime(p) {
            return Err(Error::InvalidPrime(p));
        }
        if n == 0 {
            return Err(Error::InvalidExponent);
        }
        // p^(2n) < 2^63 guarantees a*b fits in u64 for reduced a, b.
        let mut m: u64 = 1;
        for _ in 0..2 * n {
            m = m
                .checked_mul(p)
                .filter(|&v| v < (1u64 << 63))
                .ok_or(Error::ModulusTooLarge { p, n })?;
        }
        let modulus = pow_u64(p, n);
        Ok(Ctx { p, n, modulus })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// p^k for 0 <= k <= n.
    pub fn p_pow(&self, k: u32) -> u64 {
        debug_assert!(k <= self.n);
        pow_u64(self.p, k)
    }

    pub fn reduce(&self, v: i64) -> Residue {
        let m = self.modulus as i64;
        (((v % m) + m) % m) as u64
    }

    pub fn add(&self, a: Residue, b: Residue) -> Residue {
        (a + b) % self.modulus
    }

    pub fn sub(&self, a: Residue, b: Residue) -> Residue {
        (a + self.modulus - b) % self.modulus
    }

    pub fn mul(&self, a: Residue, b: Residue) -> Residue {
        (a * b) % self.modulus
    }

    /// p-adic valuation of a residue; v(0) = n by convention.
    pub fn valuation(&self, a: Residue) -> u32 {
        if a == 0 {
            return self.n;
        }
        let mut v = 0;
        let mut a = a;
        while a % self.p == 0 {
            a /= self.p;
            v += 1;
        }
        v
    }

    /// Inverse of a unit mod p^n via the extended Euclidean algorithm.
    pub fn unit_inverse(&self, a: Residue) -> Result<Residue> {
        if a % self.p == 0 {
            return Err(Error::SingularMatrix {
                det: a,
                modulus: self.modulus,
            });
        }
        let (mut r0, mut r1) = (self.modulus as i128, a as i128);
        let (mut s0, mut s1) = (0i128, 1i128);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (s0, s1) = (s1, s0 - q * s1);
        }
        debug_assert_eq!(r0, 1);
        let m = self.modulus as i128;
        Ok((((s0 % m) + m) % m) as u64)
    }
}

impl fmt::Display for Ctx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Z/{}^{}", self.p, self.n)
    }
}

fn pow_u64(base: u64, exp: u32) -> u64 {
    let mut r = 1u64;
    for _ in 0..exp {
        r *= base;
    }
    r
}

/// A 2x2 matrix over Z/p^n, row-major, entries fully reduced.
///
/// The derived `Ord` (lexicographic on a, b, c, d) is the canonical element
/// order used for all deterministic enumerations and reports.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Mat2 {
    pub a: Residue,
    pub b: Residue,
    pub c: Residue,
    pub d: Residue,
}

impl Mat2 {
    pub const fn new(a: Residue, b: Residue, c: Residue, d: Residue) -> Self {
        Mat2 { a, b, c, d }
    }

    pub const fn identity() -> Self {
        Mat2::new(1, 0, 0, 1)
    }

    pub fn is_identity(&self) -> bool {
        *self == Mat2::identity()
    }

    /// Build a reduced matrix from possibly unreduced signed entries.
    pub fn from_entries(ctx: Ctx, e: [i64; 4]) -> Self {
        Mat2::new(
            ctx.reduce(e[0]),
            ctx.reduce(e[1]),
            ctx.reduce(e[2]),
            ctx.reduce(e[3]),
        )
    }

    pub fn entries(&self) -> [Residue; 4] {
        [self.a, self.b, self.c, self.d]
    }

    pub fn is_reduced(&self, ctx: Ctx) -> bool {
        self.entries().iter().all(|&e| e < ctx.modulus())
    }
}

impl fmt::Debug for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{}, {}], [{}, {}]]", self.a, self.b, self.c, self.d)
    }
}

impl Ctx {
    /// Matrix product, reduced mod p^n.
    pub fn mat_mul(&self, x: Mat2, y: Mat2) -> Mat2 {
        debug_assert!(x.is_reduced(*self) && y.is_reduced(*self));
        let m = self.modulus;
        Mat2::new(
            (x.a * y.a + x.b * y.c) % m,
            (x.a * y.b + x.b * y.d) % m,
            (x.c * y.a + x.d * y.c) % m,
            (x.c * y.b + x.d * y.d) % m,
        )
    }

    /// ad - bc mod p^n.
    pub fn det(&self, x: Mat2) -> Residue {
        let m = self.modulus;
        let ad = (x.a * x.d) % m;
        let bc = (x.b * x.c) % m;
        (ad + m - bc) % m
    }

    /// Inverse via the adjugate times the unit inverse of the determinant.
    ///
    /// Fails with [`Error::SingularMatrix`] when p divides the determinant.
    pub fn mat_inverse(&self, x: Mat2) -> Result<Mat2> {
        let det = self.det(x);
        let inv = self.unit_inverse(det)?;
        let m = self.modulus;
        Ok(Mat2::new(
            (x.d * inv) % m,
            ((m - x.b % m) % m * inv) % m,
            ((m - x.c % m) % m * inv) % m,
            (x.a * inv) % m,
        ))
    }

    /// k-fold product by square-and-multiply; k = 0 yields the identity.
    pub fn mat_pow(&self, x: Mat2, k: u64) -> Mat2 {
        let mut result = Mat2::identity();
        let mut base = x;
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = self.mat_mul(result, base);
            }
            base = self.mat_mul(base, base);
            k >>= 1;
        }
        result
    }

    /// Entrywise reduction mod p^m for m < n; a homomorphism for products and det.
    pub fn reduce_mod(&self, x: Mat2, to: Ctx) -> Result<Mat2> {
        if to.p != self.p {
            return Err(Error::ContextMismatch {
                expected: self.p,
                got: to.p,
            });
        }
        if to.n >= self.n {
            return Err(Error::InvalidReduction {
                from: self.n,
                to: to.n,
            });
        }
        let m = to.modulus;
        Ok(Mat2::new(x.a % m, x.b % m, x.c % m, x.d % m))
    }

    /// g * x * g^-1 with a precomputed inverse.
    pub fn conjugate(&self, g: Mat2, x: Mat2, g_inv: Mat2) -> Mat2 {
        self.mat_mul(self.mat_mul(g, x), g_inv)
    }

    /// x^-1 y^-1 x y.
    pub fn commutator(&self, x: Mat2, y: Mat2) -> Result<Mat2> {
        let xi = self.mat_inverse(x)?;
        let yi = self.mat_inverse(y)?;
        Ok(self.mat_mul(self.mat_mul(xi, yi), self.mat_mul(x, y)))
    }
}
