//! Dense univariate polynomials over a [`Field`], stored as ascending
//! coefficient vectors with no trailing zeros (the zero polynomial is empty).

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::field::{Field, PrimeField, RootSet};

pub fn trim<F: Field>(f: &F, mut p: Vec<F::Elem>) -> Vec<F::Elem> {
    while p.last().is_some_and(|c| f.is_zero(c)) {
        p.pop();
    }
    p
}

pub fn degree<E>(p: &[E]) -> Option<usize> {
    p.len().checked_sub(1)
}

pub fn add<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
    let n = a.len().max(b.len());
    let z = f.zero();
    let out = (0..n).map(|i| f.add(a.get(i).unwrap_or(&z), b.get(i).unwrap_or(&z))).collect();
    trim(f, out)
}

pub fn sub<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
    let n = a.len().max(b.len());
    let z = f.zero();
    let out = (0..n).map(|i| f.sub(a.get(i).unwrap_or(&z), b.get(i).unwrap_or(&z))).collect();
    trim(f, out)
}

pub fn scale<F: Field>(f: &F, a: &[F::Elem], c: &F::Elem) -> Vec<F::Elem> {
    trim(f, a.iter().map(|x| f.mul(x, c)).collect())
}

pub fn mul<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![f.zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if f.is_zero(x) {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] = f.add(&out[i + j], &f.mul(x, y));
        }
    }
    trim(f, out)
}

pub fn eval<F: Field>(f: &F, p: &[F::Elem], x: &F::Elem) -> F::Elem {
    p.iter().rev().fold(f.zero(), |acc, c| f.add(&f.mul(&acc, x), c))
}

pub fn derivative<F: Field>(f: &F, p: &[F::Elem]) -> Vec<F::Elem> {
    let out = p.iter().enumerate().skip(1).map(|(i, c)| f.mul(c, &f.from_i64(i as i64))).collect();
    trim(f, out)
}

/// Quotient and remainder. Panics if `b` is zero.
pub fn divrem<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> (Vec<F::Elem>, Vec<F::Elem>) {
    let b = trim(f, b.to_vec());
    assert!(!b.is_empty(), "polynomial division by zero");
    let mut r = trim(f, a.to_vec());
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let lead_inv = f.inv(b.last().unwrap()).unwrap();
    let mut q = vec![f.zero(); r.len() - b.len() + 1];
    while r.len() >= b.len() && !r.is_empty() {
        let shift = r.len() - b.len();
        let c = f.mul(r.last().unwrap(), &lead_inv);
        for (j, bj) in b.iter().enumerate() {
            r[shift + j] = f.sub(&r[shift + j], &f.mul(&c, bj));
        }
        q[shift] = c;
        r.pop();
        r = trim(f, r);
    }
    (trim(f, q), r)
}

pub fn monic<F: Field>(f: &F, p: &[F::Elem]) -> Vec<F::Elem> {
    let p = trim(f, p.to_vec());
    match p.last() {
        None => p,
        Some(l) => {
            let li = f.inv(l).unwrap();
            p.iter().map(|c| f.mul(c, &li)).collect()
        }
    }
}

/// Monic greatest common divisor; `gcd(0, 0) = 0`.
pub fn gcd<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
    let mut a = trim(f, a.to_vec());
    let mut b = trim(f, b.to_vec());
    while !b.is_empty() {
        let (_, r) = divrem(f, &a, &b);
        a = b;
        b = r;
    }
    monic(f, &a)
}

/// Monic product of the distinct irreducible factors of `p`.
pub fn radical<F: Field>(f: &F, p: &[F::Elem]) -> Vec<F::Elem> {
    let p = monic(f, p);
    if p.len() <= 2 {
        return p;
    }
    let dp = derivative(f, &p);
    if dp.is_empty() {
        // p(x) = g(x^c); over a prime field g^(1/c) has the same coefficients.
        let c = f.characteristic() as usize;
        let g: Vec<F::Elem> = p.iter().step_by(c).cloned().collect();
        return radical(f, &g);
    }
    let h = gcd(f, &p, &dp);
    let part = monic(f, &divrem(f, &p, &h).0);
    if h.len() <= 1 {
        return part;
    }
    let rh = radical(f, &h);
    let g = gcd(f, &part, &rh);
    monic(f, &mul(f, &part, &divrem(f, &rh, &g).0))
}

pub fn mulmod<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem], m: &[F::Elem]) -> Vec<F::Elem> {
    divrem(f, &mul(f, a, b), m).1
}

pub fn powmod<F: Field>(f: &F, base: &[F::Elem], mut e: u64, m: &[F::Elem]) -> Vec<F::Elem> {
    let mut acc = divrem(f, &[f.one()], m).1;
    let mut b = divrem(f, base, m).1;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(f, &acc, &b, m);
        }
        e >>= 1;
        if e > 0 {
            b = mulmod(f, &b, &b, m);
        }
    }
    acc
}

/// Roots in `F_p` via `gcd(p, x^p - x)` and equal-degree splitting.
pub fn prime_field_roots(f: &PrimeField, p: &[u64]) -> RootSet<u64> {
    let p = trim(f, p.to_vec());
    if p.len() <= 1 {
        return RootSet { roots: Vec::new(), residual_degree: 0 };
    }
    let rad = radical(f, &p);
    let total = rad.len() - 1;
    let xp = powmod(f, &[0, 1], f.modulus(), &rad);
    let g = gcd(f, &rad, &sub(f, &xp, &[0, 1]));
    let mut roots = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    split_linear_factors(f, &g, &mut rng, &mut roots);
    roots.sort_unstable();
    RootSet { residual_degree: total - roots.len(), roots }
}

fn split_linear_factors(f: &PrimeField, g: &[u64], rng: &mut ChaCha8Rng, out: &mut Vec<u64>) {
    match g.len() {
        0 | 1 => {}
        2 => out.push(f.neg(&f.div(&g[0], &g[1]))),
        _ => loop {
            let c = f.random(rng);
            let h = powmod(f, &[c, 1], (f.modulus() - 1) / 2, g);
            let h = gcd(f, g, &sub(f, &h, &[1]));
            if h.len() > 1 && h.len() < g.len() {
                let (q, _) = divrem(f, g, &h);
                split_linear_factors(f, &h, rng, out);
                split_linear_factors(f, &q, rng, out);
                return;
            }
        },
    }
}

/// Interpolating polynomial through `(xs[i], ys[i])` with distinct `xs`.
pub fn interpolate<F: Field>(f: &F, xs: &[F::Elem], ys: &[F::Elem]) -> Vec<F::Elem> {
    let n = xs.len();
    let mut coef = ys.to_vec();
    for j in 1..n {
        for i in (j..n).rev() {
            let num = f.sub(&coef[i], &coef[i - 1]);
            let den = f.sub(&xs[i], &xs[i - j]);
            coef[i] = f.div(&num, &den);
        }
    }
    let mut out: Vec<F::Elem> = Vec::new();
    for i in (0..n).rev() {
        // out = out * (x - xs[i]) + coef[i]
        out = mul(f, &out, &[f.neg(&xs[i]), f.one()]);
        out = add(f, &out, &[coef[i].clone()]);
    }
    out
}

/// Determinant by Gaussian elimination.
pub fn determinant<F: Field>(f: &F, mut m: Vec<Vec<F::Elem>>) -> F::Elem {
    let n = m.len();
    let mut det = f.one();
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| !f.is_zero(&m[r][col])) else {
            return f.zero();
        };
        if piv != col {
            m.swap(piv, col);
            det = f.neg(&det);
        }
        let pinv = f.inv(&m[col][col]).unwrap();
        det = f.mul(&det, &m[col][col]);
        for r in col + 1..n {
            if f.is_zero(&m[r][col]) {
                continue;
            }
            let c = f.mul(&m[r][col], &pinv);
            for k in col..n {
                let v = f.mul(&c, &m[col][k]);
                m[r][k] = f.sub(&m[r][k], &v);
            }
        }
    }
    det
}

/// Sylvester resultant of `a` and `b` read with formal degrees `da`, `db`.
pub fn resultant<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem], da: usize, db: usize) -> F::Elem {
    let n = da + db;
    if n == 0 {
        return f.one();
    }
    let coeff = |p: &[F::Elem], i: usize| p.get(i).cloned().unwrap_or_else(|| f.zero());
    let mut m = vec![vec![f.zero(); n]; n];
    for r in 0..db {
        for k in 0..=da {
            m[r][r + k] = coeff(a, da - k);
        }
    }
    for r in 0..da {
        for k in 0..=db {
            m[db + r][r + k] = coeff(b, db - k);
        }
    }
    determinant(f, m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Field, RationalField};
    use proptest::prelude::*;

    fn fp() -> PrimeField {
        PrimeField::new(101).unwrap()
    }

    #[test]
    fn roots_of_split_polynomial() {
        let f = fp();
        // (x-3)^2 (x-7)(x^2+2)  with x^2 + 2 irreducible mod 101 iff -2 is a non-residue
        let lin = |r: u64| vec![f.neg(&r), 1];
        let mut p = mul(&f, &lin(3), &lin(3));
        p = mul(&f, &p, &lin(7));
        p = mul(&f, &p, &[2, 0, 1]);
        let rs = prime_field_roots(&f, &p);
        let has_sqrt = (0..101u64).any(|x| f.mul(&x, &x) == f.from_i64(-2));
        if has_sqrt {
            assert_eq!(rs.roots.len(), 4);
        } else {
            assert_eq!(rs.roots, vec![3, 7]);
            assert_eq!(rs.residual_degree, 2);
        }
    }

    #[test]
    fn radical_handles_pth_powers() {
        let f = PrimeField::new(3).unwrap();
        // (x+1)^3 = x^3 + 1 over F_3
        let p = vec![1, 0, 0, 1];
        assert_eq!(radical(&f, &p), vec![1, 1]);
        let q = mul(&f, &p, &[0, 1]);
        assert_eq!(radical(&f, &q), vec![0, 1, 1]);
    }

    #[test]
    fn resultant_detects_common_root() {
        let q = RationalField;
        let a = vec![q.from_i64(-2), q.one()];
        let b = mul(&q, &a, &[q.from_i64(5), q.one()]);
        assert!(q.is_zero(&resultant(&q, &a, &b, 1, 2)));
        let c = vec![q.from_i64(1), q.one()];
        // Res(x - 2, x + 1) = -(2 + 1) up to sign
        let r = resultant(&q, &a, &c, 1, 1);
        assert_eq!(r, q.from_i64(3));
    }

    proptest! {
        #[test]
        fn divrem_identity(a in prop::collection::vec(0u64..101, 0..8), b in prop::collection::vec(0u64..101, 1..6)) {
            let f = fp();
            let b = trim(&f, b);
            prop_assume!(!b.is_empty());
            let (q, r) = divrem(&f, &a, &b);
            prop_assert!(r.len() < b.len());
            prop_assert_eq!(add(&f, &mul(&f, &q, &b), &r), trim(&f, a));
        }

        #[test]
        fn interpolation_reproduces(p in prop::collection::vec(0u64..101, 1..8)) {
            let f = fp();
            let p = trim(&f, p);
            let n = p.len().max(1);
            let xs: Vec<u64> = (0..n as u64).collect();
            let ys: Vec<u64> = xs.iter().map(|x| eval(&f, &p, x)).collect();
            prop_assert_eq!(interpolate(&f, &xs, &ys), p);
        }

        #[test]
        fn roots_match_exhaustive_scan(p in prop::collection::vec(0u64..101, 2..9)) {
            let f = fp();
            let p = trim(&f, p);
            prop_assume!(p.len() >= 2);
            let scan: Vec<u64> = (0..101).filter(|x| eval(&f, &p, x) == 0).collect();
            prop_assert_eq!(prime_field_roots(&f, &p).roots, scan);
        }
    }
}
