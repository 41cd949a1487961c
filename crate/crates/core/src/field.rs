//! Exact coefficient fields: odd prime fields `F_p` (p < 2^31), the rational
//! field, and the quadratic extension `F_p[t]/(t^2 - s)` used when a rank-2
//! quadric only splits after a degree-2 extension.

use alloc::string::String;
use core::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Errors raised when constructing a coefficient field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FieldError {
    /// Characteristic 2 is rejected: Hessians and square completion need 1/2.
    EvenCharacteristic,
    NotPrime(u64),
    /// Moduli must fit in 31 bits so products of reduced values fit in u64.
    ModulusTooLarge(u64),
}

impl fmt::Display for FieldError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldError::EvenCharacteristic => write!(f, "characteristic 2 is not supported"),
            FieldError::NotPrime(p) => write!(f, "{p} is not prime"),
            FieldError::ModulusTooLarge(p) => write!(f, "modulus {p} exceeds 2^31"),
        }
    }
}

/// An exact field of characteristic 0 or an odd prime.
///
/// Fields are small value objects passed alongside their elements; the same
/// element type may serve several moduli, so binary operations assume both
/// operands belong to `self`.
#[allow(clippy::wrong_self_convention)] // fields are value objects carrying the modulus
pub trait Field: Clone + PartialEq + fmt::Debug {
    type Elem: Clone + PartialEq + fmt::Debug;

    /// 0 for the rationals, p for F_p.
    fn characteristic(&self) -> u64;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// None exactly when `a` is zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn from_i64(&self, n: i64) -> Self::Elem;

    fn is_one(&self, a: &Self::Elem) -> bool {
        a == &self.one()
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        self.inv(b).map(|ib| self.mul(a, &ib))
    }

    fn from_ratio(&self, num: i64, den: i64) -> Self::Elem {
        let d = self.from_i64(den);
        let inv = self.inv(&d).expect("nonzero denominator");
        self.mul(&self.from_i64(num), &inv)
    }

    /// Short name used in reports, e.g. `F101` or `QQ`.
    fn name(&self) -> String;
    fn elem_to_string(&self, a: &Self::Elem) -> String;
}

/// The prime field F_p for an odd prime p < 2^31. Elements are reduced
/// residues stored as `u64`, so products never overflow.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self, FieldError> {
        if p == 2 {
            return Err(FieldError::EvenCharacteristic);
        }
        if p >= 1 << 31 {
            return Err(FieldError::ModulusTooLarge(p));
        }
        if !is_prime_u64(p) {
            return Err(FieldError::NotPrime(p));
        }
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1u64;
        base %= self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % self.p;
            }
            base = base * base % self.p;
            exp >>= 1;
        }
        acc
    }

    /// Legendre symbol via Euler's criterion.
    pub fn is_square(&self, a: u64) -> bool {
        if a.is_multiple_of(self.p) {
            return true;
        }
        self.pow(a, (self.p - 1) / 2) == 1
    }

    /// Smallest quadratic non-residue; deterministic scan.
    pub fn nonresidue(&self) -> u64 {
        let mut n = 2;
        while self.is_square(n) {
            n += 1;
        }
        n
    }

    /// Square root by Tonelli-Shanks, with the p = 3 mod 4 shortcut.
    pub fn sqrt(&self, a: u64) -> Option<u64> {
        let p = self.p;
        let a = a % p;
        if a == 0 {
            return Some(0);
        }
        if !self.is_square(a) {
            return None;
        }
        if p % 4 == 3 {
            return Some(self.pow(a, (p + 1) / 4));
        }
        // p = 1 mod 4: factor p-1 = q * 2^s with q odd
        let mut q = p - 1;
        let mut s = 0u32;
        while q.is_multiple_of(2) {
            q /= 2;
            s += 1;
        }
        let z = self.nonresidue();
        let mut m = s;
        let mut c = self.pow(z, q);
        let mut t = self.pow(a, q);
        let mut r = self.pow(a, q.div_ceil(2));
        while t != 1 {
            let mut i = 0u32;
            let mut tt = t;
            while tt != 1 {
                tt = tt * tt % p;
                i += 1;
            }
            let mut b = c;
            for _ in 0..(m - i - 1) {
                b = b * b % p;
            }
            m = i;
            c = b * b % p;
            t = t * c % p;
            r = r * b % p;
        }
        Some(r)
    }
}

impl Field for PrimeField {
    type Elem = u64;

    fn characteristic(&self) -> u64 {
        self.p
    }
    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % self.p
    }
    fn inv(&self, a: &u64) -> Option<u64> {
        if *a == 0 {
            None
        } else {
            Some(self.pow(*a, self.p - 2))
        }
    }
    fn from_i64(&self, n: i64) -> u64 {
        let m = n.rem_euclid(self.p as i64);
        m as u64
    }
    fn name(&self) -> String {
        alloc::format!("F{}", self.p)
    }
    fn elem_to_string(&self, a: &u64) -> String {
        alloc::format!("{a}")
    }
}

/// The field of rationals with arbitrary-precision representation.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn characteristic(&self) -> u64 {
        0
    }
    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        if a.is_zero() {
            None
        } else {
            Some(a.recip())
        }
    }
    fn from_i64(&self, n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }
    fn name(&self) -> String {
        String::from("QQ")
    }
    fn elem_to_string(&self, a: &BigRational) -> String {
        if a.denom().is_one() {
            alloc::format!("{}", a.numer())
        } else {
            alloc::format!("{}/{}", a.numer(), a.denom())
        }
    }
}

impl Rationals {
    /// Exact square root when both numerator and denominator are perfect
    /// squares of integers; None otherwise.
    pub fn sqrt(&self, a: &BigRational) -> Option<BigRational> {
        if a.is_negative() {
            return None;
        }
        let ns = a.numer().sqrt();
        let ds = a.denom().sqrt();
        if &(&ns * &ns) == a.numer() && &(&ds * &ds) == a.denom() {
            Some(BigRational::new(ns, ds))
        } else {
            None
        }
    }
}

/// The quadratic extension F_p(sqrt(s)) for a non-residue s, with elements
/// `a + b t`, `t^2 = s`. Only used to exhibit factorizations of rank-2
/// quadrics whose discriminant is not a square in F_p.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Fp2 {
    base: PrimeField,
    nonresidue: u64,
}

impl Fp2 {
    pub fn new(base: PrimeField) -> Self {
        let nonresidue = base.nonresidue();
        Fp2 { base, nonresidue }
    }

    pub fn base(&self) -> PrimeField {
        self.base
    }

    pub fn embed(&self, a: u64) -> (u64, u64) {
        (a % self.base.p, 0)
    }

    /// The adjoined square root of the non-residue.
    pub fn root(&self) -> (u64, u64) {
        (0, 1)
    }
}

impl Field for Fp2 {
    type Elem = (u64, u64);

    fn characteristic(&self) -> u64 {
        self.base.p
    }
    fn zero(&self) -> (u64, u64) {
        (0, 0)
    }
    fn one(&self) -> (u64, u64) {
        (1, 0)
    }
    fn is_zero(&self, a: &(u64, u64)) -> bool {
        a.0 == 0 && a.1 == 0
    }
    fn add(&self, a: &(u64, u64), b: &(u64, u64)) -> (u64, u64) {
        (self.base.add(&a.0, &b.0), self.base.add(&a.1, &b.1))
    }
    fn sub(&self, a: &(u64, u64), b: &(u64, u64)) -> (u64, u64) {
        (self.base.sub(&a.0, &b.0), self.base.sub(&a.1, &b.1))
    }
    fn neg(&self, a: &(u64, u64)) -> (u64, u64) {
        (self.base.neg(&a.0), self.base.neg(&a.1))
    }
    fn mul(&self, a: &(u64, u64), b: &(u64, u64)) -> (u64, u64) {
        let f = &self.base;
        let re = f.add(
            &f.mul(&a.0, &b.0),
            &f.mul(&f.mul(&a.1, &b.1), &self.nonresidue),
        );
        let im = f.add(&f.mul(&a.0, &b.1), &f.mul(&a.1, &b.0));
        (re, im)
    }
    fn inv(&self, a: &(u64, u64)) -> Option<(u64, u64)> {
        if self.is_zero(a) {
            return None;
        }
        // norm = a0^2 - s a1^2 is nonzero since s is a non-residue
        let f = &self.base;
        let norm = f.sub(
            &f.mul(&a.0, &a.0),
            &f.mul(&f.mul(&a.1, &a.1), &self.nonresidue),
        );
        let ninv = f.inv(&norm)?;
        Some((f.mul(&a.0, &ninv), f.mul(&f.neg(&a.1), &ninv)))
    }
    fn from_i64(&self, n: i64) -> (u64, u64) {
        (self.base.from_i64(n), 0)
    }
    fn name(&self) -> String {
        alloc::format!("F{}^2", self.base.p)
    }
    fn elem_to_string(&self, a: &(u64, u64)) -> String {
        match (a.0, a.1) {
            (r, 0) => alloc::format!("{r}"),
            (0, 1) => String::from("t"),
            (0, i) => alloc::format!("{i}t"),
            (r, i) => alloc::format!("({r}+{i}t)"),
        }
    }
}

/// Fields with a decidable square-root operation, used when factoring
/// rank-2 quadrics into linear forms.
pub trait SqrtField: Field {
    fn sqrt_elem(&self, a: &Self::Elem) -> Option<Self::Elem>;
}

impl SqrtField for PrimeField {
    fn sqrt_elem(&self, a: &u64) -> Option<u64> {
        self.sqrt(*a)
    }
}

impl SqrtField for Rationals {
    fn sqrt_elem(&self, a: &BigRational) -> Option<BigRational> {
        self.sqrt(a)
    }
}

impl SqrtField for Fp2 {
    fn sqrt_elem(&self, a: &(u64, u64)) -> Option<(u64, u64)> {
        let f = &self.base;
        let p = f.p;
        if self.is_zero(a) {
            return Some((0, 0));
        }
        if a.1 == 0 {
            // base-field element: either sqrt in F_p, or sqrt(a/s) * t
            if let Some(r) = f.sqrt(a.0) {
                return Some((r, 0));
            }
            let quo = f.mul(&a.0, &f.inv(&self.nonresidue).unwrap());
            return f.sqrt(quo).map(|r| (0, r));
        }
        // general element a0 + a1 t: solve (x + y t)^2 = a
        // norm(a) = a0^2 - s a1^2 must be a square in F_p when a is a square
        let norm = f.sub(
            &f.mul(&a.0, &a.0),
            &f.mul(&f.mul(&a.1, &a.1), &self.nonresidue),
        );
        let r = f.sqrt(norm)?;
        let half = f.inv(&2).unwrap();
        for cand in [
            f.mul(&f.add(&a.0, &r), &half),
            f.mul(&f.sub(&a.0, &r), &half),
        ] {
            if let Some(x) = f.sqrt(cand) {
                if x != 0 {
                    let y = f.mul(&a.1, &f.inv(&f.mul(&2, &x)).unwrap());
                    let root = (x, y);
                    if self.mul(&root, &root) == *a {
                        return Some(root);
                    }
                }
            }
        }
        let _ = p;
        None
    }
}

/// Deterministic Miller-Rabin, exact for all u64 below 3.2e18 with these bases.
fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n.is_multiple_of(p) {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    let mulmod = |a: u128, b: u128, m: u128| (a * b % m) as u64;
    let powmod = |mut a: u64, mut e: u64, m: u64| -> u64 {
        let mut acc = 1u64;
        a %= m;
        while e > 0 {
            if e & 1 == 1 {
                acc = mulmod(acc as u128, a as u128, m as u128);
            }
            a = mulmod(a as u128, a as u128, m as u128);
            e >>= 1;
        }
        acc
    };
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..s - 1 {
            x = mulmod(x as u128, x as u128, n as u128);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_construction() {
        assert!(PrimeField::new(101).is_ok());
        assert!(PrimeField::new(32003).is_ok());
        assert_eq!(PrimeField::new(2), Err(FieldError::EvenCharacteristic));
        assert_eq!(PrimeField::new(91), Err(FieldError::NotPrime(91)));
        assert!(PrimeField::new(1 << 32).is_err());
    }

    #[test]
    fn fp_arithmetic() {
        let f = PrimeField::new(101).unwrap();
        assert_eq!(f.add(&100, &5), 4);
        assert_eq!(f.sub(&3, &7), 97);
        assert_eq!(f.mul(&50, &50), 2500 % 101);
        let inv = f.inv(&37).unwrap();
        assert_eq!(f.mul(&37, &inv), 1);
        assert_eq!(f.from_i64(-1), 100);
    }

    #[test]
    fn fp_sqrt() {
        for p in [5u64, 13, 101, 32003, 1000003] {
            let f = PrimeField::new(p).unwrap();
            let mut squares = 0;
            for a in 1..p.min(200) {
                if let Some(r) = f.sqrt(a) {
                    assert_eq!(r * r % p, a % p, "bad sqrt of {a} mod {p}");
                    squares += 1;
                } else {
                    assert!(!f.is_square(a));
                }
            }
            assert!(squares > 0);
        }
    }

    #[test]
    fn rationals_sqrt() {
        let q = Rationals;
        let a = q.from_ratio(9, 4);
        assert_eq!(q.sqrt(&a), Some(q.from_ratio(3, 2)));
        assert_eq!(q.sqrt(&q.from_i64(2)), None);
        assert_eq!(q.sqrt(&q.from_i64(-4)), None);
    }

    #[test]
    fn fp2_is_a_field() {
        let f = PrimeField::new(101).unwrap();
        let e = Fp2::new(f);
        let t = e.root();
        let sq = e.mul(&t, &t);
        assert_eq!(sq, (e.nonresidue % 101, 0));
        // every nonzero element inverts
        for a in [(3, 5), (0, 1), (100, 100), (1, 0)] {
            let i = e.inv(&a).unwrap();
            assert_eq!(e.mul(&a, &i), e.one());
        }
    }
}
