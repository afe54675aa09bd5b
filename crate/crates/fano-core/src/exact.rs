//! Exact scalar arithmetic: arbitrary-precision rationals and cyclotomic
//! fields Q(zeta_m), represented as coefficient vectors reduced mod Phi_m.

use num_bigint::{BigInt, Sign};
use num_rational::BigRational;
use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

pub type Rat = BigRational;

pub fn rat(v: i64) -> Rat {
    Rat::from_integer(BigInt::from(v))
}

pub fn ratio(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Euler's totient.
pub fn totient(m: u32) -> u32 {
    let mut n = m;
    let mut result = m;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            result = result / p * (p - 1);
        }
        p += 1;
    }
    if n > 1 {
        result = result / n * (n - 1);
    }
    result
}

/// Dense integer polynomial division (low-to-high coefficients), exact:
/// panics if the division leaves a remainder. Divisor must be monic-leading
/// up to sign (true for every cyclotomic polynomial).
fn int_poly_div_exact(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let mut rem: Vec<BigInt> = num.to_vec();
    let dd = den.len() - 1;
    let lead = &den[dd];
    assert!(lead.sign() != Sign::NoSign);
    let nd = rem.len() - 1;
    assert!(nd >= dd);
    let mut quot = vec![BigInt::from(0); nd - dd + 1];
    for k in (0..=nd - dd).rev() {
        let c = &rem[k + dd] / lead;
        if (&c * lead - &rem[k + dd]).sign() != Sign::NoSign {
            panic!("non-exact polynomial division");
        }
        if c.sign() != Sign::NoSign {
            for (i, dc) in den.iter().enumerate() {
                let t = &c * dc;
                rem[k + i] -= t;
            }
        }
        quot[k] = c;
    }
    assert!(
        rem.iter().all(|v| v.sign() == Sign::NoSign),
        "non-exact polynomial division"
    );
    quot
}

/// The m-th cyclotomic polynomial Phi_m as integer coefficients, low to high.
/// Computed by exact division of x^m - 1 by the product of Phi_d over proper
/// divisors d of m.
pub fn cyclotomic_polynomial(m: u32) -> Vec<BigInt> {
    assert!(m >= 1);
    if m == 1 {
        return vec![BigInt::from(-1), BigInt::from(1)];
    }
    let mut num = vec![BigInt::from(0); m as usize + 1];
    num[0] = BigInt::from(-1);
    num[m as usize] = BigInt::from(1);
    let mut den = vec![BigInt::from(1)];
    for d in 1..m {
        if m % d == 0 {
            let phi_d = cyclotomic_polynomial(d);
            den = int_poly_mul(&den, &phi_d);
        }
    }
    int_poly_div_exact(&num, &den)
}

fn int_poly_mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::from(0); a.len() + b.len() - 1];
    for (i, ai) in a.iter().enumerate() {
        if ai.sign() == Sign::NoSign {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            let t = ai * bj;
            out[i + j] += t;
        }
    }
    out
}

struct CycloTables {
    deg: usize,
    /// pow[j] = x^j reduced mod Phi_m, for j up to max(2*deg-2, m-1).
    pow: Vec<Vec<Rat>>,
}

fn tables(m: u32) -> Arc<CycloTables> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<CycloTables>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let mut guard = cache.lock().unwrap();
    if let Some(t) = guard.get(&m) {
        return Arc::clone(t);
    }
    let phi: Vec<Rat> = cyclotomic_polynomial(m)
        .into_iter()
        .map(Rat::from_integer)
        .collect();
    let deg = phi.len() - 1;
    let max_j = (2 * deg).saturating_sub(2).max(m as usize - 1);
    let mut pow: Vec<Vec<Rat>> = Vec::with_capacity(max_j + 1);
    for j in 0..=max_j {
        if j < deg {
            let mut v = vec![Rat::zero(); deg];
            v[j] = Rat::one();
            pow.push(v);
        } else {
            // x^j = x * x^(j-1), then reduce the degree-deg overflow via
            // x^deg = -(phi[0] + phi[1] x + ... + phi[deg-1] x^(deg-1)).
            let prev = &pow[j - 1];
            let mut v = vec![Rat::zero(); deg + 1];
            for (k, c) in prev.iter().enumerate() {
                v[k + 1] = c.clone();
            }
            let top = v.pop().unwrap();
            if !top.is_zero() {
                for k in 0..deg {
                    let t = &top * &phi[k];
                    v[k] -= t;
                }
            }
            pow.push(v);
        }
    }
    let t = Arc::new(CycloTables { deg, pow });
    guard.insert(m, Arc::clone(&t));
    t
}

/// An element of Q(zeta_m), stored as the coefficient vector of
/// 1, zeta, ..., zeta^(phi(m)-1) in fully reduced canonical form.
/// Conductor 1 means a plain rational; rationals embed into any conductor
/// automatically, while mixing two conductors > 1 is rejected (callers pick
/// m = lcm of what they need up front).
#[derive(Clone, Debug)]
pub struct Cyclo {
    pub m: u32,
    pub c: Vec<Rat>,
}

/// Equality is coefficient-wise at a shared conductor; a rational value
/// compares equal across conductors. Two distinct conductors > 1 compare
/// unequal, matching the arithmetic contract that never mixes them.
impl PartialEq for Cyclo {
    fn eq(&self, other: &Self) -> bool {
        if self.m == other.m {
            return self.c == other.c;
        }
        match (self.to_rat(), other.to_rat()) {
            (Some(a), Some(b)) => a == b,
            _ => false,
        }
    }
}

impl Eq for Cyclo {}

impl Cyclo {
    pub fn from_rat(r: Rat) -> Self {
        Cyclo { m: 1, c: vec![r] }
    }

    pub fn rational(m: u32, r: Rat) -> Self {
        let deg = totient(m) as usize;
        let mut c = vec![Rat::zero(); deg];
        c[0] = r;
        Cyclo { m, c }
    }

    pub fn from_i64(v: i64) -> Self {
        Cyclo::from_rat(rat(v))
    }

    pub fn zero() -> Self {
        Cyclo::from_rat(Rat::zero())
    }

    pub fn one() -> Self {
        Cyclo::from_rat(Rat::one())
    }

    /// zeta_m^k, k taken mod m.
    pub fn zeta_pow(m: u32, k: i64) -> Self {
        let t = tables(m);
        let kk = k.rem_euclid(m as i64) as usize;
        Cyclo { m, c: t.pow[kk].clone() }
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|v| v.is_zero())
    }

    pub fn is_rational(&self) -> bool {
        self.c[1..].iter().all(|v| v.is_zero())
    }

    pub fn to_rat(&self) -> Option<Rat> {
        if self.is_rational() {
            Some(self.c[0].clone())
        } else {
            None
        }
    }

    fn lift(&self, m: u32) -> Cyclo {
        assert_eq!(self.m, 1);
        Cyclo::rational(m, self.c[0].clone())
    }

    fn aligned(a: &Cyclo, b: &Cyclo) -> (Cyclo, Cyclo) {
        if a.m == b.m {
            (a.clone(), b.clone())
        } else if a.m == 1 {
            (a.lift(b.m), b.clone())
        } else if b.m == 1 {
            (a.clone(), b.lift(a.m))
        } else {
            panic!("conductor mismatch: {} vs {}", a.m, b.m);
        }
    }

    pub fn add(&self, other: &Cyclo) -> Cyclo {
        let (a, b) = Cyclo::aligned(self, other);
        let c = a.c.iter().zip(&b.c).map(|(x, y)| x + y).collect();
        Cyclo { m: a.m, c }
    }

    pub fn sub(&self, other: &Cyclo) -> Cyclo {
        let (a, b) = Cyclo::aligned(self, other);
        let c = a.c.iter().zip(&b.c).map(|(x, y)| x - y).collect();
        Cyclo { m: a.m, c }
    }

    pub fn neg(&self) -> Cyclo {
        Cyclo { m: self.m, c: self.c.iter().map(|x| -x).collect() }
    }

    pub fn mul(&self, other: &Cyclo) -> Cyclo {
        let (a, b) = Cyclo::aligned(self, other);
        if a.m == 1 {
            return Cyclo { m: 1, c: vec![&a.c[0] * &b.c[0]] };
        }
        let t = tables(a.m);
        let deg = t.deg;
        let mut conv = vec![Rat::zero(); 2 * deg - 1];
        for (i, x) in a.c.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.c.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                let p = x * y;
                conv[i + j] += p;
            }
        }
        let mut out = vec![Rat::zero(); deg];
        for (j, v) in conv.into_iter().enumerate() {
            if v.is_zero() {
                continue;
            }
            for (k, p) in t.pow[j].iter().enumerate() {
                let tm = &v * p;
                out[k] += tm;
            }
        }
        Cyclo { m: a.m, c: out }
    }

    pub fn scale(&self, r: &Rat) -> Cyclo {
        Cyclo { m: self.m, c: self.c.iter().map(|x| x * r).collect() }
    }

    /// Multiplicative inverse by the extended Euclidean algorithm against
    /// Phi_m in Q[x]. Panics on zero.
    pub fn inv(&self) -> Cyclo {
        assert!(!self.is_zero(), "inversion of zero");
        if self.m == 1 {
            return Cyclo { m: 1, c: vec![self.c[0].recip()] };
        }
        let phi: Vec<Rat> = cyclotomic_polynomial(self.m)
            .into_iter()
            .map(Rat::from_integer)
            .collect();
        let a = trim(self.c.clone());
        // extended euclid: maintain r0, r1 and s0, s1 with s*a = r mod phi
        let mut r0 = phi;
        let mut r1 = a;
        let mut s0: Vec<Rat> = vec![];
        let mut s1: Vec<Rat> = vec![Rat::one()];
        while !r1.is_empty() {
            let (q, rem) = rat_poly_divmod(&r0, &r1);
            let s2 = rat_poly_sub(&s0, &rat_poly_mul(&q, &s1));
            r0 = r1;
            r1 = rem;
            s0 = s1;
            s1 = s2;
        }
        // r0 = gcd (nonzero constant since Phi_m is irreducible and a != 0)
        assert_eq!(r0.len(), 1, "gcd with Phi_m not constant");
        let g = r0[0].recip();
        let deg = totient(self.m) as usize;
        let mut out = vec![Rat::zero(); deg];
        for (i, v) in s0.iter().enumerate() {
            out[i] = v * &g;
        }
        let result = Cyclo { m: self.m, c: out };
        debug_assert!(result.mul(self) == Cyclo::rational(self.m, Rat::one()));
        result
    }
}

fn trim(mut v: Vec<Rat>) -> Vec<Rat> {
    while v.last().is_some_and(|x| x.is_zero()) {
        v.pop();
    }
    v
}

fn rat_poly_sub(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    let n = a.len().max(b.len());
    let mut out = vec![Rat::zero(); n];
    for (i, v) in a.iter().enumerate() {
        out[i] = v.clone();
    }
    for (i, v) in b.iter().enumerate() {
        out[i] -= v;
    }
    trim(out)
}

fn rat_poly_mul(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![Rat::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            let t = x * y;
            out[i + j] += t;
        }
    }
    trim(out)
}

fn rat_poly_divmod(num: &[Rat], den: &[Rat]) -> (Vec<Rat>, Vec<Rat>) {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let lead = den.last().unwrap();
    if rem.len() <= dd {
        return (vec![], trim(rem));
    }
    let mut quot = vec![Rat::zero(); rem.len() - dd];
    for k in (0..rem.len() - dd).rev() {
        let c = &rem[k + dd] / lead;
        if !c.is_zero() {
            for (i, dc) in den.iter().enumerate() {
                let t = &c * dc;
                rem[k + i] -= t;
            }
        }
        quot[k] = c;
    }
    (trim(quot), trim(rem))
}

/// Generic exact field used by the polynomial and representation layers.
pub trait Field: Clone + PartialEq + std::fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(v: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn inv(&self) -> Self;
}

impl Field for Rat {
    fn zero() -> Self {
        rat(0)
    }
    fn one() -> Self {
        rat(1)
    }
    fn from_i64(v: i64) -> Self {
        rat(v)
    }
    fn is_zero(&self) -> bool {
        self.numer().sign() == Sign::NoSign
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Self {
        assert!(!Field::is_zero(self), "inversion of zero");
        self.recip()
    }
}

impl Field for Cyclo {
    fn zero() -> Self {
        Cyclo::zero()
    }
    fn one() -> Self {
        Cyclo::one()
    }
    fn from_i64(v: i64) -> Self {
        Cyclo::from_i64(v)
    }
    fn is_zero(&self) -> bool {
        Cyclo::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        Cyclo::add(self, other)
    }
    fn sub(&self, other: &Self) -> Self {
        Cyclo::sub(self, other)
    }
    fn mul(&self, other: &Self) -> Self {
        Cyclo::mul(self, other)
    }
    fn neg(&self) -> Self {
        Cyclo::neg(self)
    }
    fn inv(&self) -> Self {
        Cyclo::inv(self)
    }
}

/// Print a rational in the grammar's coefficient syntax: `n` or `n/d`.
pub fn rat_to_text(r: &Rat) -> String {
    if *r.denom() == BigInt::from(1) {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn rat_is_negative(r: &Rat) -> bool {
    r.numer().sign() == Sign::Minus
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn phi_1_is_x_minus_1() {
        let p = cyclotomic_polynomial(1);
        assert_eq!(p, vec![BigInt::from(-1), BigInt::from(1)]);
    }

    #[test]
    fn phi_11_is_all_ones() {
        let p = cyclotomic_polynomial(11);
        assert_eq!(p.len(), 11);
        assert!(p.iter().all(|c| c == &BigInt::from(1)));
    }

    #[test]
    fn phi_12_is_x4_minus_x2_plus_1() {
        let p = cyclotomic_polynomial(12);
        let expect: Vec<BigInt> = [1, 0, -1, 0, 1].iter().map(|&v| BigInt::from(v)).collect();
        assert_eq!(p, expect);
    }

    #[test]
    fn totient_degree_sum() {
        // sum over d | m of phi(d) = m
        for m in 1..=24u32 {
            let s: u32 = (1..=m).filter(|d| m % d == 0).map(totient).sum();
            assert_eq!(s, m);
        }
    }

    #[test]
    fn phi_divides_x_m_minus_1() {
        for m in [4u32, 11, 12, 20, 24] {
            let phi = cyclotomic_polynomial(m);
            let mut xm = vec![BigInt::from(0); m as usize + 1];
            xm[0] = BigInt::from(-1);
            xm[m as usize] = BigInt::from(1);
            let q = int_poly_div_exact(&xm, &phi);
            assert_eq!(q.len(), (m as usize + 1) - phi.len() + 1);
        }
    }

    #[test]
    fn zeta_inverse_m11() {
        let z = Cyclo::zeta_pow(11, 1);
        let zi = z.inv();
        assert_eq!(z.mul(&zi), Cyclo::rational(11, Rat::one()));
        assert_eq!(zi, Cyclo::zeta_pow(11, 10));
    }

    #[test]
    fn real_subfield_element_m11() {
        // (zeta + zeta^10)^2 + (zeta + zeta^10) has rational trace relations:
        // it equals zeta^2 + zeta^9 + zeta + zeta^10 + 2, not rational itself,
        // but the full Galois sum is; here just verify exact arithmetic closes.
        let a = Cyclo::zeta_pow(11, 1).add(&Cyclo::zeta_pow(11, 10));
        let b = a.mul(&a).add(&a);
        let expect = Cyclo::zeta_pow(11, 2)
            .add(&Cyclo::zeta_pow(11, 9))
            .add(&Cyclo::zeta_pow(11, 1))
            .add(&Cyclo::zeta_pow(11, 10))
            .add(&Cyclo::rational(11, rat(2)));
        assert_eq!(b, expect);
    }

    #[test]
    fn gauss_sum_quadratic_relation() {
        // sigma = zeta + zeta^3 + zeta^4 + zeta^5 + zeta^9 satisfies
        // sigma^2 + sigma + 3 = 0 (so sigma = (-1 + i sqrt 11)/2).
        let sigma = [1i64, 3, 4, 5, 9]
            .iter()
            .fold(Cyclo::rational(11, Rat::zero()), |acc, &k| {
                acc.add(&Cyclo::zeta_pow(11, k))
            });
        let rel = sigma.mul(&sigma).add(&sigma).add(&Cyclo::rational(11, rat(3)));
        assert!(rel.is_zero());
    }

    #[test]
    fn inverse_roundtrip_all_conductors() {
        for m in [1u32, 4, 11, 12, 20, 24] {
            let deg = totient(m) as usize;
            // a small non-trivial element: 2 + zeta (or 2 when deg = 1)
            let mut a = Cyclo::rational(m, rat(2));
            if deg > 1 {
                a = a.add(&Cyclo::zeta_pow(m, 1));
            }
            let prod = a.mul(&a.inv());
            assert_eq!(prod, Cyclo::rational(m, Rat::one()), "m={m}");
        }
    }

    #[test]
    fn rational_embedding_arithmetic() {
        let half = Cyclo::from_rat(ratio(1, 2));
        let z = Cyclo::zeta_pow(4, 1);
        let sum = half.add(&z);
        assert_eq!(sum.m, 4);
        assert_eq!(sum.c[0], ratio(1, 2));
        assert_eq!(sum.c[1], rat(1));
    }

    #[test]
    #[should_panic(expected = "conductor mismatch")]
    fn mixed_conductors_rejected() {
        let a = Cyclo::zeta_pow(4, 1);
        let b = Cyclo::zeta_pow(11, 1);
        let _ = a.add(&b);
    }

    #[test]
    #[should_panic(expected = "inversion of zero")]
    fn zero_inverse_panics() {
        let _ = Cyclo::rational(11, Rat::zero()).inv();
    }
}
