//! Dense univariate polynomials over the integers, with a modular gcd.
//!
//! This is the workhorse behind [`QRatFunc`](super::QRatFunc): every
//! rational-coefficient polynomial is stored as a rational content times a
//! primitive integer polynomial, so gcds and exact quotients never touch
//! rational arithmetic.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Coefficient `k` multiplies `q^k`. No trailing zeros; the zero polynomial is empty.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct ZPoly {
    coeffs: Vec<BigInt>,
}

impl ZPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        ZPoly { coeffs }
    }

    pub fn zero() -> Self {
        ZPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        ZPoly { coeffs: vec![BigInt::one()] }
    }

    pub fn constant(c: BigInt) -> Self {
        ZPoly::new(vec![c])
    }

    pub fn monomial(degree: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); degree + 1];
        coeffs[degree] = BigInt::one();
        ZPoly { coeffs }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Divide out the content and make the leading coefficient positive.
    /// Returns `(signed content, primitive part)`.
    pub fn primitive(&self) -> (BigInt, ZPoly) {
        if self.is_zero() {
            return (BigInt::zero(), ZPoly::zero());
        }
        let mut c = self.content();
        if self.leading().is_some_and(|l| l.is_negative()) {
            c = -c;
        }
        if c.is_one() {
            return (c, self.clone());
        }
        let coeffs = self.coeffs.iter().map(|x| x / &c).collect();
        (c, ZPoly { coeffs })
    }

    pub fn scale(&self, s: &BigInt) -> ZPoly {
        if s.is_zero() {
            return ZPoly::zero();
        }
        ZPoly { coeffs: self.coeffs.iter().map(|x| x * s).collect() }
    }

    pub fn neg(&self) -> ZPoly {
        ZPoly { coeffs: self.coeffs.iter().map(|x| -x).collect() }
    }

    pub fn add(&self, other: &ZPoly) -> ZPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let a = self.coeffs.get(i);
            let b = other.coeffs.get(i);
            out.push(match (a, b) {
                (Some(a), Some(b)) => a + b,
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            });
        }
        ZPoly::new(out)
    }

    pub fn sub(&self, other: &ZPoly) -> ZPoly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &ZPoly) -> ZPoly {
        if self.is_zero() || other.is_zero() {
            return ZPoly::zero();
        }
        if self.is_one() {
            return other.clone();
        }
        if other.is_one() {
            return self.clone();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        ZPoly::new(out)
    }

    /// `self / divisor` when the division is exact in `Z[q]`, otherwise `None`.
    pub fn div_exact(&self, divisor: &ZPoly) -> Option<ZPoly> {
        let dd = divisor.degree()?;
        if self.is_zero() {
            return Some(ZPoly::zero());
        }
        if divisor.is_one() {
            return Some(self.clone());
        }
        let nd = self.degree()?;
        if nd < dd {
            return None;
        }
        let lead = divisor.leading()?;
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); nd - dd + 1];
        for k in (0..=nd - dd).rev() {
            let top = &rem[k + dd];
            if top.is_zero() {
                continue;
            }
            let (qk, r) = top.div_rem(lead);
            if !r.is_zero() {
                return None;
            }
            for (j, dc) in divisor.coeffs.iter().enumerate() {
                rem[k + j] -= &qk * dc;
            }
            quot[k] = qk;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(ZPoly::new(quot))
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    fn reduce_mod(&self, p: u64) -> Vec<u64> {
        let pb = BigInt::from(p);
        let mut v: Vec<u64> = self
            .coeffs
            .iter()
            .map(|c| c.mod_floor(&pb).to_u64().expect("residue fits in u64"))
            .collect();
        trim_mod(&mut v);
        v
    }
}

/// Primitive gcd with positive leading coefficient. The integer content is
/// ignored, so the result is only defined up to a constant factor; `gcd(0, 0) = 0`.
pub fn gcd(a: &ZPoly, b: &ZPoly) -> ZPoly {
    if a.is_zero() {
        return b.primitive().1;
    }
    if b.is_zero() {
        return a.primitive().1;
    }
    let (_, a) = a.primitive();
    let (_, b) = b.primitive();
    if a.degree() == Some(0) || b.degree() == Some(0) {
        return ZPoly::one();
    }
    if a == b {
        return a;
    }
    // q^m factors are common here; peel them off so the modular loop sees
    // polynomials with nonzero constant terms.
    let va = a.coeffs.iter().take_while(|c| c.is_zero()).count();
    let vb = b.coeffs.iter().take_while(|c| c.is_zero()).count();
    if va > 0 || vb > 0 {
        let a1 = ZPoly::new(a.coeffs[va..].to_vec());
        let b1 = ZPoly::new(b.coeffs[vb..].to_vec());
        return ZPoly::monomial(va.min(vb)).mul(&gcd(&a1, &b1));
    }
    if a.div_exact(&b).is_some() {
        return b;
    }
    if b.div_exact(&a).is_some() {
        return a;
    }
    modular_gcd(&a, &b)
}

fn modular_gcd(a: &ZPoly, b: &ZPoly) -> ZPoly {
    let la = a.leading().expect("nonzero");
    let lb = b.leading().expect("nonzero");
    let lc_gcd = la.gcd(lb);

    let mut images: Option<(Vec<BigInt>, BigInt, usize)> = None;
    let mut last: Option<ZPoly> = None;

    for p in Primes::new() {
        let pb = BigInt::from(p);
        if (la % &pb).is_zero() || (lb % &pb).is_zero() {
            continue;
        }
        let g = gcd_mod(&a.reduce_mod(p), &b.reduce_mod(p), p);
        let d = g.len() - 1;
        if d == 0 {
            return ZPoly::one();
        }
        let s = lc_gcd.mod_floor(&pb).to_u64().expect("fits");
        let g: Vec<u64> = g.iter().map(|&c| mul_mod(c, s, p)).collect();

        match &mut images {
            Some((_, _, deg)) if d > *deg => continue,
            Some((acc, modulus, deg)) if d == *deg => {
                crt_combine(acc, modulus, &g, p);
            }
            _ => {
                images = Some((g.iter().map(|&c| BigInt::from(c)).collect(), pb, d));
                last = None;
            }
        }

        let (acc, modulus, _) = images.as_ref().expect("set above");
        let half: BigInt = modulus >> 1usize;
        let candidate = ZPoly::new(
            acc.iter()
                .map(|c| if c > &half { c - modulus } else { c.clone() })
                .collect(),
        );
        if last.as_ref() == Some(&candidate) {
            let (_, h) = candidate.primitive();
            if a.div_exact(&h).is_some() && b.div_exact(&h).is_some() {
                return h;
            }
        }
        last = Some(candidate);
    }
    unreachable!("prime sequence is unbounded")
}

fn crt_combine(acc: &mut [BigInt], modulus: &mut BigInt, image: &[u64], p: u64) {
    let pb = BigInt::from(p);
    let m_mod_p = modulus.mod_floor(&pb).to_u64().expect("fits");
    let inv = pow_mod(m_mod_p, p - 2, p);
    for (c, &r) in acc.iter_mut().zip(image) {
        let c_mod_p = c.mod_floor(&pb).to_u64().expect("fits");
        let diff = (r + p - c_mod_p) % p;
        let t = mul_mod(diff, inv, p);
        *c += &*modulus * BigInt::from(t);
    }
    *modulus *= pb;
}

fn trim_mod(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

/// Monic gcd over `F_p`. Inputs are nonzero.
fn gcd_mod(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut r0 = a.to_vec();
    let mut r1 = b.to_vec();
    if r0.len() < r1.len() {
        std::mem::swap(&mut r0, &mut r1);
    }
    while !r1.is_empty() {
        rem_mod(&mut r0, &r1, p);
        std::mem::swap(&mut r0, &mut r1);
    }
    let inv = pow_mod(*r0.last().expect("nonzero gcd"), p - 2, p);
    r0.iter().map(|&c| mul_mod(c, inv, p)).collect()
}

fn rem_mod(a: &mut Vec<u64>, b: &[u64], p: u64) {
    let db = b.len() - 1;
    let inv = pow_mod(b[db], p - 2, p);
    while a.len() > db {
        let top = *a.last().expect("nonempty");
        let shift = a.len() - 1 - db;
        if top != 0 {
            let f = mul_mod(top, inv, p);
            for (j, &bc) in b.iter().enumerate() {
                let sub = mul_mod(f, bc, p);
                let slot = &mut a[shift + j];
                *slot = (*slot + p - sub) % p;
            }
        }
        a.pop();
    }
    trim_mod(a);
}

/// Primes below 2^62, descending.
struct Primes {
    idx: usize,
    cursor: u64,
}

static PRIME_CACHE: OnceLock<Vec<u64>> = OnceLock::new();

impl Primes {
    fn new() -> Self {
        Primes { idx: 0, cursor: 0 }
    }
}

impl Iterator for Primes {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        let cache = PRIME_CACHE.get_or_init(|| {
            let mut v = Vec::with_capacity(64);
            let mut c = (1u64 << 62) - 1;
            while v.len() < 64 {
                if is_prime(c) {
                    v.push(c);
                }
                c -= 2;
            }
            v
        });
        if let Some(&p) = cache.get(self.idx) {
            self.idx += 1;
            self.cursor = p;
            return Some(p);
        }
        let mut c = self.cursor - 2;
        while !is_prime(c) {
            c -= 2;
        }
        self.cursor = c;
        Some(c)
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for sp in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(sp) {
            return n == sp;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}
