//! Exact base fields: the rationals and prime fields `F_p`.
//!
//! Fields are passed around as context values; elements are plain data and
//! every operation goes through the field. This keeps `F_p` with a runtime
//! modulus and `Q` behind one trait.

use std::fmt::Debug;
use std::hash::Hash;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;
use thiserror::Error;

use crate::poly;

/// Modulus used to run eliminations for fields without a word-size prime.
pub const ELIMINATION_PRIME: u64 = (1 << 61) - 1;

/// Bound on numerator and denominator accepted by rational reconstruction.
pub const RECONSTRUCTION_BOUND: i128 = 1 << 20;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("modulus {0} is not an odd prime")]
    NotOddPrime(u64),
    #[error("cannot parse scalar {0:?}")]
    Parse(String),
    #[error("unknown field {0:?}; expected \"rational\" or \"Fp:<p>\"")]
    UnknownField(String),
}

/// Roots of a univariate polynomial that lie in the base field.
///
/// `residual_degree` counts the distinct roots over the algebraic closure
/// that are not in the field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootSet<E> {
    pub roots: Vec<E>,
    pub residual_degree: usize,
}

pub trait Field: Clone + Debug + Send + Sync {
    type Elem: Clone + PartialEq + Eq + Hash + Ord + Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_i64(&self, v: i64) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn is_zero(&self, a: &Self::Elem) -> bool;

    /// A random element. Over `Q` these are small integers.
    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Self::Elem;

    fn characteristic(&self) -> u64;

    /// Number of elements, `None` for infinite fields.
    fn size(&self) -> Option<u64>;

    /// Canonical name, `"rational"` or `"Fp:<p>"`.
    fn name(&self) -> String;

    fn format(&self, a: &Self::Elem) -> String;
    fn parse(&self, s: &str) -> Result<Self::Elem, FieldError>;

    /// Prime used for modular elimination on behalf of this field.
    fn elimination_modulus(&self) -> u64;

    /// Image in `F_q`, `q = elimination_modulus()`. `None` when a
    /// denominator vanishes mod `q`.
    fn reduce(&self, a: &Self::Elem) -> Option<u64>;

    /// Candidate preimage of a residue mod `q`.
    fn lift(&self, residue: u64) -> Option<Self::Elem>;

    /// Roots of `p` (ascending coefficients) in this field.
    fn roots(&self, p: &[Self::Elem]) -> RootSet<Self::Elem>;

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.mul(a, &self.inv(b).expect("division by zero"))
    }

    fn pow(&self, a: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// A random nonzero element.
    fn random_nonzero<R: Rng + ?Sized>(&self, rng: &mut R) -> Self::Elem {
        loop {
            let x = self.random(rng);
            if !self.is_zero(&x) {
                return x;
            }
        }
    }
}

/// The prime field `F_p` for an odd prime `p < 2^63`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self, FieldError> {
        if p < 3 || p % 2 == 0 || p >= 1 << 63 || !is_prime(p) {
            return Err(FieldError::NotOddPrime(p));
        }
        Ok(Self { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    fn reduce_i128(&self, v: i128) -> u64 {
        v.rem_euclid(self.p as i128) as u64
    }
}

impl Field for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn from_i64(&self, v: i64) -> u64 {
        self.reduce_i128(v as i128)
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
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 * *b as u128) % self.p as u128) as u64
    }
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn inv(&self, a: &u64) -> Option<u64> {
        if *a == 0 {
            return None;
        }
        Some(self.pow(a, self.p - 2))
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> u64 {
        rng.gen_range(0..self.p)
    }
    fn characteristic(&self) -> u64 {
        self.p
    }
    fn size(&self) -> Option<u64> {
        Some(self.p)
    }
    fn name(&self) -> String {
        format!("Fp:{}", self.p)
    }
    fn format(&self, a: &u64) -> String {
        a.to_string()
    }
    fn parse(&self, s: &str) -> Result<u64, FieldError> {
        let r = parse_rational(s)?;
        let n = bigint_mod(r.numer(), self.p);
        let d = bigint_mod(r.denom(), self.p);
        let di = self.inv(&d).ok_or_else(|| FieldError::Parse(s.to_string()))?;
        Ok(self.mul(&n, &di))
    }
    fn elimination_modulus(&self) -> u64 {
        self.p
    }
    fn reduce(&self, a: &u64) -> Option<u64> {
        Some(*a)
    }
    fn lift(&self, residue: u64) -> Option<u64> {
        Some(residue % self.p)
    }
    fn roots(&self, p: &[u64]) -> RootSet<u64> {
        poly::prime_field_roots(self, p)
    }
}

/// The field of rational numbers with arbitrary precision.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct RationalField;

/// Magnitude of the random integers drawn over `Q`.
const RATIONAL_SAMPLE_RADIUS: i64 = 50;

impl Field for RationalField {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn from_i64(&self, v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        if a.is_zero() {
            None
        } else {
            Some(a.recip())
        }
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> BigRational {
        self.from_i64(rng.gen_range(-RATIONAL_SAMPLE_RADIUS..=RATIONAL_SAMPLE_RADIUS))
    }
    fn characteristic(&self) -> u64 {
        0
    }
    fn size(&self) -> Option<u64> {
        None
    }
    fn name(&self) -> String {
        "rational".to_string()
    }
    fn format(&self, a: &BigRational) -> String {
        a.to_string()
    }
    fn parse(&self, s: &str) -> Result<BigRational, FieldError> {
        parse_rational(s)
    }
    fn elimination_modulus(&self) -> u64 {
        ELIMINATION_PRIME
    }
    fn reduce(&self, a: &BigRational) -> Option<u64> {
        let q = PrimeField { p: ELIMINATION_PRIME };
        let n = bigint_mod(a.numer(), ELIMINATION_PRIME);
        let d = bigint_mod(a.denom(), ELIMINATION_PRIME);
        q.inv(&d).map(|di| q.mul(&n, &di))
    }
    fn lift(&self, residue: u64) -> Option<BigRational> {
        rational_reconstruction(residue, ELIMINATION_PRIME, RECONSTRUCTION_BOUND)
            .map(|(u, v)| BigRational::new(BigInt::from(u), BigInt::from(v)))
    }
    fn roots(&self, p: &[BigRational]) -> RootSet<BigRational> {
        rational_roots(p)
    }
}

/// Parses `"a"`, `"-a"` or `"a/b"` into a rational.
pub fn parse_rational(s: &str) -> Result<BigRational, FieldError> {
    let err = || FieldError::Parse(s.to_string());
    let t = s.trim();
    let (n, d) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| err())?;
    let d: BigInt = d.parse().map_err(|_| err())?;
    if d.is_zero() {
        return Err(err());
    }
    Ok(BigRational::new(n, d))
}

fn bigint_mod(a: &BigInt, m: u64) -> u64 {
    let r = a.mod_floor(&BigInt::from(m));
    r.to_u64().expect("residue fits in u64")
}

/// Finds `u/v` with `|u|, |v| <= bound` and `u = r v mod m`.
pub fn rational_reconstruction(r: u64, m: u64, bound: i128) -> Option<(i128, i128)> {
    let (mut r0, mut r1) = (m as i128, (r % m) as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 > bound {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if t1 == 0 || t1.abs() > bound {
        return None;
    }
    let (mut u, mut v) = (r1, t1);
    if v < 0 {
        u = -u;
        v = -v;
    }
    if u.gcd(&v) != 1 {
        return None;
    }
    Some((u, v))
}

/// Rational roots of a polynomial over `Q`, found modulo a large prime and
/// confirmed exactly.
fn rational_roots(p: &[BigRational]) -> RootSet<BigRational> {
    let qf = RationalField;
    let p = poly::trim(&qf, p.to_vec());
    if p.is_empty() {
        return RootSet { roots: Vec::new(), residual_degree: 0 };
    }
    let rad = poly::radical(&qf, &p);
    let total = rad.len() - 1;
    if total == 0 {
        return RootSet { roots: Vec::new(), residual_degree: 0 };
    }
    // Clear denominators so that the reduction of the leading coefficient
    // is nonzero for all but finitely many primes.
    let scaled = integer_primitive(&rad);
    let fp = PrimeField { p: ELIMINATION_PRIME };
    let image: Option<Vec<u64>> = scaled.iter().map(|c| qf.reduce(c)).collect();
    let mut roots = Vec::new();
    if let Some(image) = image {
        if image.last().copied().unwrap_or(0) != 0 {
            for r in poly::prime_field_roots(&fp, &image).roots {
                if let Some(c) = qf.lift(r) {
                    if qf.is_zero(&poly::eval(&qf, &rad, &c)) {
                        roots.push(c);
                    }
                }
            }
        } else {
            roots = brute_force_rational_roots(&scaled);
        }
    } else {
        roots = brute_force_rational_roots(&scaled);
    }
    roots.sort();
    roots.dedup();
    RootSet { residual_degree: total - roots.len(), roots }
}

/// Integer multiple of `p` with coprime integer coefficients.
fn integer_primitive(p: &[BigRational]) -> Vec<BigRational> {
    let mut l = BigInt::one();
    for c in p {
        l = l.lcm(c.denom());
    }
    let ints: Vec<BigInt> = p.iter().map(|c| (c * BigRational::from_integer(l.clone())).to_integer()).collect();
    let mut g = BigInt::zero();
    for c in &ints {
        g = g.gcd(c);
    }
    if g.is_zero() {
        g = BigInt::one();
    }
    ints.into_iter().map(|c| BigRational::from_integer(c / &g)).collect()
}

/// Rational root test over divisors; only used when the modular image
/// degenerates.
fn brute_force_rational_roots(p: &[BigRational]) -> Vec<BigRational> {
    let qf = RationalField;
    let c0 = p.iter().position(|c| !c.is_zero()).unwrap_or(0);
    let mut roots = Vec::new();
    if c0 > 0 {
        roots.push(BigRational::zero());
    }
    let a0 = p[c0].to_integer().abs();
    let an = p[p.len() - 1].to_integer().abs();
    let divs = |n: &BigInt| -> Vec<BigInt> {
        let n = n.to_u64().unwrap_or(0);
        (1..=n).filter(|k| n % k == 0).map(BigInt::from).collect()
    };
    for u in divs(&a0) {
        for v in divs(&an) {
            for s in [1i64, -1] {
                let c = BigRational::new(u.clone() * s, v.clone());
                if qf.is_zero(&poly::eval(&qf, p, &c)) {
                    roots.push(c);
                }
            }
        }
    }
    roots
}

/// Deterministic Miller-Rabin for 64-bit integers.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for sp in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % sp == 0 {
            return n == sp;
        }
    }
    let mulmod = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let powmod = |mut a: u64, mut e: u64| {
        let mut r = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                r = mulmod(r, a);
            }
            a = mulmod(a, a);
            e >>= 1;
        }
        r
    };
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Field selected at runtime, as named on the command line.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldSpec {
    Rational,
    Prime(u64),
}

impl std::str::FromStr for FieldSpec {
    type Err = FieldError;

    fn from_str(s: &str) -> Result<Self, FieldError> {
        let t = s.trim();
        if t.eq_ignore_ascii_case("rational") || t == "Q" {
            return Ok(FieldSpec::Rational);
        }
        if let Some(p) = t.strip_prefix("Fp:").or_else(|| t.strip_prefix("fp:")) {
            let p: u64 = p.trim().parse().map_err(|_| FieldError::UnknownField(s.to_string()))?;
            PrimeField::new(p)?;
            return Ok(FieldSpec::Prime(p));
        }
        Err(FieldError::UnknownField(s.to_string()))
    }
}

impl std::fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            FieldSpec::Rational => write!(f, "rational"),
            FieldSpec::Prime(p) => write!(f, "Fp:{p}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn rejects_composite_and_even_moduli() {
        assert!(PrimeField::new(10007).is_ok());
        assert!(PrimeField::new(2).is_err());
        assert!(PrimeField::new(9).is_err());
        assert!(PrimeField::new(10001).is_err());
        assert!(PrimeField::new(ELIMINATION_PRIME).is_ok());
    }

    #[test]
    fn prime_field_arithmetic() {
        let f = PrimeField::new(7).unwrap();
        assert_eq!(f.from_i64(-1), 6);
        assert_eq!(f.mul(&3, &5), 1);
        assert_eq!(f.inv(&3), Some(5));
        assert_eq!(f.parse("1/2").unwrap(), 4);
        assert_eq!(f.sub(&2, &5), 4);
    }

    #[test]
    fn reconstruction_recovers_small_fractions() {
        let q = PrimeField::new(ELIMINATION_PRIME).unwrap();
        for (u, v) in [(3i64, 7i64), (-5, 2), (0, 1), (123457, 654321)] {
            let r = q.div(&q.from_i64(u), &q.from_i64(v));
            assert_eq!(rational_reconstruction(r, ELIMINATION_PRIME, RECONSTRUCTION_BOUND), Some((u as i128, v as i128)));
        }
    }

    #[test]
    fn rational_roots_of_products() {
        let qf = RationalField;
        // (2x - 1)(x + 3)(x^2 + 1)
        let p = poly::mul(
            &qf,
            &poly::mul(&qf, &[qf.from_i64(-1), qf.from_i64(2)], &[qf.from_i64(3), qf.one()]),
            &[qf.one(), qf.zero(), qf.one()],
        );
        let rs = qf.roots(&p);
        assert_eq!(rs.roots, vec![qf.from_i64(-3), qf.parse("1/2").unwrap()]);
        assert_eq!(rs.residual_degree, 2);
    }

    #[test]
    fn field_spec_parsing() {
        assert_eq!("rational".parse::<FieldSpec>().unwrap(), FieldSpec::Rational);
        assert_eq!("Fp:10007".parse::<FieldSpec>().unwrap(), FieldSpec::Prime(10007));
        assert!("Fp:10".parse::<FieldSpec>().is_err());
        assert!("reals".parse::<FieldSpec>().is_err());
    }

    #[test]
    fn random_nonzero_is_nonzero() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
        let f = PrimeField::new(3).unwrap();
        for _ in 0..100 {
            assert_ne!(f.random_nonzero(&mut rng), 0);
        }
    }
}
