//! Rational functions in one variable over `F_{q^d}`, kept normalized:
//! monic denominator, coprime numerator and denominator.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::{FieldSpec, GfElem};
use crate::poly::{GFPoly, Var};
use crate::scalar::Scalar;

#[derive(Clone, PartialEq, Eq)]
pub struct RatFunc {
    num: GFPoly,
    den: GFPoly,
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.degree() == Some(0) {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl RatFunc {
    pub fn new(num: GFPoly, den: GFPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZeroPoly);
        }
        Ok(Self::normalized(num, den))
    }

    fn normalized(num: GFPoly, den: GFPoly) -> Self {
        let var = num.var();
        let field = num.field().clone();
        if num.is_zero() {
            return RatFunc {
                num,
                den: GFPoly::one(&field, var),
            };
        }
        let g = num.gcd(&den);
        let (num, den) = if g.degree() == Some(0) {
            (num, den)
        } else {
            (num.div_exact(&g), den.div_exact(&g))
        };
        let (den, lead) = den.monic();
        let num = num.scale(field.inv(lead).unwrap());
        RatFunc { num, den }
    }

    pub fn from_poly(p: GFPoly) -> Self {
        let den = GFPoly::one(p.field(), p.var());
        RatFunc { num: p, den }
    }

    pub fn constant(field: &Arc<FieldSpec>, c: GfElem, var: Var) -> Self {
        Self::from_poly(GFPoly::constant(field, c, var))
    }

    pub fn zero(field: &Arc<FieldSpec>, var: Var) -> Self {
        Self::from_poly(GFPoly::zero(field, var))
    }

    pub fn num(&self) -> &GFPoly {
        &self.num
    }

    pub fn den(&self) -> &GFPoly {
        &self.den
    }

    pub fn field(&self) -> &Arc<FieldSpec> {
        self.num.field()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.degree() == Some(0)
    }

    /// `self^(q^k)` via coefficient Frobenius on numerator and denominator.
    pub fn frobenius(&self, k: u32) -> Self {
        RatFunc {
            num: self.num.frobenius(k),
            den: self.den.frobenius(k),
        }
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.mul(&other.inv()?))
    }
}

impl Scalar for RatFunc {
    fn zero_like(&self) -> Self {
        Self::zero(self.field(), self.num.var())
    }

    fn one_like(&self) -> Self {
        Self::constant(self.field(), GfElem::ONE, self.num.var())
    }

    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    fn add(&self, other: &Self) -> Self {
        if other.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return other.clone();
        }
        if self.den == other.den {
            return Self::normalized(self.num.add(&other.num), self.den.clone());
        }
        let num = self.num.mul(&other.den).add(&other.num.mul(&self.den));
        Self::normalized(num, self.den.mul(&other.den))
    }

    fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return self.zero_like();
        }
        if self.is_polynomial() && other.is_polynomial() {
            let num = self.num.mul(&other.num);
            return RatFunc {
                num,
                den: self.den.clone(),
            };
        }
        // cross-cancel before multiplying
        let g1 = self.num.gcd(&other.den);
        let g2 = other.num.gcd(&self.den);
        let num = self.num.div_exact(&g1).mul(&other.num.div_exact(&g2));
        let den = self.den.div_exact(&g2).mul(&other.den.div_exact(&g1));
        let (den, lead) = den.monic();
        RatFunc {
            num: num.scale(self.field().inv(lead).unwrap()),
            den,
        }
    }

    fn neg(&self) -> Self {
        RatFunc {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::NonInvertible("zero rational function".into()));
        }
        Self::new(self.den.clone(), self.num.clone())
    }

    fn mul_int(&self, k: i64) -> Self {
        let c = self.field().from_int(k);
        if c.is_zero() {
            return self.zero_like();
        }
        RatFunc {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::make_field;

    #[test]
    fn normalization_cancels_common_factors() {
        let f = make_field(3, 1, 1).unwrap();
        let a = GFPoly::from_fq(&f, &[1, 1], Var::Theta); // θ+1
        let b = GFPoly::from_fq(&f, &[2, 0, 1], Var::Theta); // θ²-1
        let r = RatFunc::new(a.scale(f.from_int(2)), b.clone()).unwrap();
        // 2(θ+1)/((θ+1)(θ-1)) = 2/(θ-1)
        assert_eq!(r.num().degree(), Some(0));
        assert_eq!(r.den(), &GFPoly::from_fq(&f, &[2, 1], Var::Theta));
        let back = r.mul(&RatFunc::from_poly(b)).sub(&RatFunc::from_poly(a.scale(f.from_int(2))));
        assert!(back.is_zero());
    }

    #[test]
    fn inverse_and_division() {
        let f = make_field(2, 1, 2).unwrap();
        let a = RatFunc::from_poly(GFPoly::from_fq(&f, &[1, 1, 1], Var::Theta));
        assert_eq!(a.mul(&a.inv().unwrap()), a.one_like());
        assert!(a.zero_like().inv().is_err());
        assert!(RatFunc::new(a.num().clone(), GFPoly::zero(&f, Var::Theta)).is_err());
    }
}
