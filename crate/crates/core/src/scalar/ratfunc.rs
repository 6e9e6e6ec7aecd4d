use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::field::Field;
use super::poly::Poly;
use crate::error::{Error, Result};

/// Rational function `num / den` in `t` over a coefficient field.
///
/// Always held in canonical form: `gcd(num, den) = 1`, `den` monic, and
/// zero is `0 / 1`. Structural equality is therefore mathematical equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatFunc<F> {
    num: Poly<F>,
    den: Poly<F>,
}

impl<F: Field> RatFunc<F> {
    /// Reduce `num / den` to canonical form.
    pub fn normalize(num: Poly<F>, den: Poly<F>) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(Self::reduce(num, den))
    }

    fn reduce(num: Poly<F>, den: Poly<F>) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let g = num.gcd(&den);
        let (num, den) = if g.degree() == Some(0) {
            (num, den)
        } else {
            (num.div_rem(&g).0, den.div_rem(&g).0)
        };
        let lc = den.leading().unwrap().clone();
        if lc.is_one() {
            RatFunc { num, den }
        } else {
            let inv = F::one() / lc;
            RatFunc {
                num: num.scale(&inv),
                den: den.scale(&inv),
            }
        }
    }

    pub fn from_poly(p: Poly<F>) -> Self {
        RatFunc {
            num: p,
            den: Poly::one(),
        }
    }

    pub fn constant(c: F) -> Self {
        Self::from_poly(Poly::constant(c))
    }

    /// The indeterminate `t` as a rational function.
    pub fn t() -> Self {
        Self::from_poly(Poly::t())
    }

    pub fn num(&self) -> &Poly<F> {
        &self.num
    }

    pub fn den(&self) -> &Poly<F> {
        &self.den
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    /// Sum of numerator and denominator degrees; used as a pivot cost.
    pub fn total_degree(&self) -> usize {
        self.num.degree().unwrap_or(0) + self.den.degree().unwrap_or(0)
    }

    pub fn eval(&self, t0: &F) -> Result<F> {
        let d = self.den.eval(t0);
        if d.is_zero() {
            return Err(Error::Pole(format!("{t0:?}")));
        }
        Ok(self.num.eval(t0) / d)
    }

    pub fn inv(&self) -> Result<Self> {
        if self.num.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(Self::reduce(self.den.clone(), self.num.clone()))
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        RatFunc {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }
}

impl<F: Field> Zero for RatFunc<F> {
    fn zero() -> Self {
        RatFunc {
            num: Poly::zero(),
            den: Poly::one(),
        }
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl<F: Field> One for RatFunc<F> {
    fn one() -> Self {
        Self::from_poly(Poly::one())
    }
}

impl<F: Field> Add for &RatFunc<F> {
    type Output = RatFunc<F>;
    fn add(self, rhs: &RatFunc<F>) -> RatFunc<F> {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            return RatFunc::reduce(&self.num + &rhs.num, self.den.clone());
        }
        let g = self.den.gcd(&rhs.den);
        let a = self.den.div_rem(&g).0;
        let b = rhs.den.div_rem(&g).0;
        let num = &(&self.num * &b) + &(&rhs.num * &a);
        RatFunc::reduce(num, &self.den * &b)
    }
}

impl<F: Field> Neg for &RatFunc<F> {
    type Output = RatFunc<F>;
    fn neg(self) -> RatFunc<F> {
        RatFunc {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl<F: Field> Sub for &RatFunc<F> {
    type Output = RatFunc<F>;
    fn sub(self, rhs: &RatFunc<F>) -> RatFunc<F> {
        self + &(-rhs)
    }
}

impl<F: Field> Mul for &RatFunc<F> {
    type Output = RatFunc<F>;
    fn mul(self, rhs: &RatFunc<F>) -> RatFunc<F> {
        if self.is_zero() || rhs.is_zero() {
            return RatFunc::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return RatFunc::from_poly(&self.num * &rhs.num);
        }
        // cross-cancel so the product is already reduced
        let g1 = self.num.gcd(&rhs.den);
        let g2 = rhs.num.gcd(&self.den);
        let n1 = self.num.div_rem(&g1).0;
        let d2 = rhs.den.div_rem(&g1).0;
        let n2 = rhs.num.div_rem(&g2).0;
        let d1 = self.den.div_rem(&g2).0;
        RatFunc::reduce(&n1 * &n2, &d1 * &d2)
    }
}

impl<F: Field> Div for &RatFunc<F> {
    type Output = RatFunc<F>;
    fn div(self, rhs: &RatFunc<F>) -> RatFunc<F> {
        self * &rhs.inv().expect("rational function division by zero")
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl<F: Field> $tr for RatFunc<F> {
            type Output = RatFunc<F>;
            fn $m(self, rhs: RatFunc<F>) -> RatFunc<F> {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl<F: Field> Neg for RatFunc<F> {
    type Output = RatFunc<F>;
    fn neg(self) -> RatFunc<F> {
        -&self
    }
}

impl<F: Field> Field for RatFunc<F> {
    fn from_i64(v: i64) -> Self {
        Self::constant(F::from_i64(v))
    }
}

impl<F: Field + fmt::Display + PartialOrd> fmt::Display for RatFunc<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}
