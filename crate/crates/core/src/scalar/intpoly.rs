//! Integer polynomials for the hot paths of exact arithmetic: fraction-free
//! elimination and gcds of rational polynomials.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::poly::Poly;
use crate::error::{Error, Result};

/// Integer polynomial, lowest degree first, no trailing zeros.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub(crate) struct IntPoly(pub(crate) Vec<BigInt>);

impl IntPoly {
    pub(crate) fn constant(c: i64) -> Self {
        IntPoly(vec![BigInt::from(c)]).trim()
    }

    pub(crate) fn from_poly(p: &Poly<BigRational>) -> Result<Self> {
        if !p.is_integral() {
            return Err(Error::InvalidInput("expected integer coefficients".into()));
        }
        Ok(IntPoly(p.coeffs().iter().map(|c| c.to_integer()).collect()))
    }

    pub(crate) fn to_poly(&self) -> Poly<BigRational> {
        Poly::new(self.0.iter().map(|c| BigRational::from_integer(c.clone())).collect())
    }

    pub(crate) fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub(crate) fn degree(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    fn leading(&self) -> &BigInt {
        self.0.last().expect("nonzero polynomial")
    }

    fn trim(mut self) -> Self {
        while self.0.last().map_or(false, |c| c.is_zero()) {
            self.0.pop();
        }
        self
    }

    pub(crate) fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return IntPoly::default();
        }
        let mut out = vec![BigInt::zero(); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly(out).trim()
    }

    pub(crate) fn sub(mut self, o: &Self) -> Self {
        if self.0.len() < o.0.len() {
            self.0.resize(o.0.len(), BigInt::zero());
        }
        for (a, b) in self.0.iter_mut().zip(&o.0) {
            *a -= b;
        }
        self.trim()
    }

    /// Quotient of a division known to be exact in `Z[t]`.
    pub(crate) fn exact_div(self, d: &Self) -> Self {
        if self.is_zero() {
            return self;
        }
        let dd = d.degree();
        let lc = d.leading();
        if d.0.len() == 1 {
            return IntPoly(self.0.into_iter().map(|c| c / lc).collect());
        }
        let mut r = self.0;
        let nd = r.len() - 1;
        assert!(nd >= dd, "inexact polynomial division");
        let mut q = vec![BigInt::zero(); nd - dd + 1];
        for k in (0..=nd - dd).rev() {
            let c = &r[k + dd] / lc;
            if c.is_zero() {
                continue;
            }
            for (i, di) in d.0.iter().enumerate() {
                r[k + i] -= &c * di;
            }
            q[k] = c;
        }
        debug_assert!(r.iter().all(|c| c.is_zero()), "inexact polynomial division");
        IntPoly(q).trim()
    }

    /// Divide out the content and make the leading coefficient positive.
    fn primitive(self) -> Self {
        if self.is_zero() {
            return self;
        }
        let mut g = self.0.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        if self.leading().is_negative() {
            g = -g;
        }
        if g.is_one() {
            return self;
        }
        IntPoly(self.0.into_iter().map(|c| c / &g).collect())
    }

    /// `lc(d)^k a = q d + r` with `deg r < deg d`; returns `r`.
    fn pseudo_rem(&self, d: &Self) -> Self {
        let dd = d.degree();
        let lc = d.leading();
        let mut r = self.0.clone();
        while r.len() > dd && !r.is_empty() {
            let k = r.len() - 1 - dd;
            let c = r.last().unwrap().clone();
            for x in r.iter_mut() {
                *x *= lc;
            }
            for (i, di) in d.0.iter().enumerate() {
                r[k + i] -= &c * di;
            }
            r = IntPoly(r).trim().0;
        }
        IntPoly(r)
    }

    fn mod_p(&self) -> Vec<u64> {
        let p = BigInt::from(PRIME);
        let mut v: Vec<u64> = self.0.iter().map(|c| c.mod_floor(&p).to_u64().unwrap()).collect();
        while v.last() == Some(&0) {
            v.pop();
        }
        v
    }
}

const PRIME: u64 = (1 << 61) - 1;

fn mulp(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % PRIME as u128) as u64
}

fn invp(a: u64) -> u64 {
    let (mut base, mut e, mut acc) = (a, PRIME - 2, 1u64);
    while e > 0 {
        if e & 1 == 1 {
            acc = mulp(acc, base);
        }
        base = mulp(base, base);
        e >>= 1;
    }
    acc
}

/// Degree of the gcd modulo the prime.
fn gcd_degree_mod_p(mut a: Vec<u64>, mut b: Vec<u64>) -> usize {
    while !b.is_empty() {
        let inv = invp(*b.last().unwrap());
        let db = b.len() - 1;
        while a.len() > db {
            let k = a.len() - 1 - db;
            let c = mulp(*a.last().unwrap(), inv);
            for (i, &bi) in b.iter().enumerate() {
                a[k + i] = (a[k + i] + PRIME - mulp(c, bi)) % PRIME;
            }
            while a.last() == Some(&0) {
                a.pop();
            }
        }
        std::mem::swap(&mut a, &mut b);
    }
    a.len().saturating_sub(1)
}

/// Primitive gcd of two nonzero primitive integer polynomials.
fn int_gcd(a: IntPoly, b: IntPoly) -> IntPoly {
    let (ap, bp) = (a.mod_p(), b.mod_p());
    // reduction mod p keeps both degrees, so the modular gcd bounds the true one
    if ap.len() == a.0.len() && bp.len() == b.0.len() && gcd_degree_mod_p(ap, bp) == 0 {
        return IntPoly::constant(1);
    }
    let (mut a, mut b) = if a.degree() >= b.degree() { (a, b) } else { (b, a) };
    loop {
        let r = a.pseudo_rem(&b);
        if r.is_zero() {
            return b.primitive();
        }
        a = b;
        b = r.primitive();
    }
}

/// Monic gcd over `Q`, computed in `Z[t]`.
pub(crate) fn rational_gcd(a: &Poly<BigRational>, b: &Poly<BigRational>) -> Poly<BigRational> {
    match (a.is_zero(), b.is_zero()) {
        (true, true) => return Poly::zero(),
        (true, false) => return b.monic(),
        (false, true) => return a.monic(),
        _ => {}
    }
    let to_int = |p: &Poly<BigRational>| IntPoly::from_poly(&p.primitive_part().0).expect("primitive part is integral");
    int_gcd(to_int(a), to_int(b)).to_poly().monic()
}
