//! Context-carrying field elements and dense univariate polynomials over them.
//!
//! Every coefficient type in this crate carries its own arithmetic context
//! (a shared field spec, a torsion field, ...), so the generic polynomial
//! code only needs a template element to manufacture zeros and ones.

use std::fmt;

use crate::error::{Error, Result};

/// A commutative ring element that knows how to build its own zero and one.
/// `inv` may fail for non-units.
pub trait Scalar: Clone + fmt::Debug {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn inv(&self) -> Result<Self>;

    fn mul_int(&self, k: i64) -> Self {
        let mut acc = self.zero_like();
        let base = if k < 0 { self.neg() } else { self.clone() };
        for _ in 0..k.unsigned_abs() {
            acc = acc.add(&base);
        }
        acc
    }

    fn pow(&self, k: u64) -> Self {
        let mut result = self.one_like();
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = result.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        result
    }
}

/// Dense polynomial in one variable, coefficients low to high, trailing
/// zeros trimmed. Keeps a template element so the zero polynomial still
/// knows its coefficient context.
#[derive(Clone, Debug)]
pub struct UPoly<T: Scalar> {
    coeffs: Vec<T>,
    template: T,
}

impl<T: Scalar + PartialEq> PartialEq for UPoly<T> {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs
    }
}

impl<T: Scalar> UPoly<T> {
    pub fn new(coeffs: Vec<T>, template: &T) -> Self {
        let mut p = UPoly {
            coeffs,
            template: template.zero_like(),
        };
        p.trim();
        p
    }

    pub fn zero(template: &T) -> Self {
        Self::new(Vec::new(), template)
    }

    pub fn constant(c: T) -> Self {
        let t = c.zero_like();
        Self::new(vec![c], &t)
    }

    /// `c * Z^k`.
    pub fn monomial(c: T, k: usize) -> Self {
        let z = c.zero_like();
        let mut v = vec![z.clone(); k];
        v.push(c);
        Self::new(v, &z)
    }

    /// `Z - c`.
    pub fn linear_root(c: &T) -> Self {
        Self::new(vec![c.neg(), c.one_like()], c)
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> T {
        self.coeffs.get(k).cloned().unwrap_or_else(|| self.template.clone())
    }

    pub fn template(&self) -> &T {
        &self.template
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let c = (0..n).map(|k| self.coeff(k).add(&other.coeff(k))).collect();
        Self::new(c, &self.template)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let c = (0..n).map(|k| self.coeff(k).sub(&other.coeff(k))).collect();
        Self::new(c, &self.template)
    }

    pub fn scale(&self, c: &T) -> Self {
        Self::new(self.coeffs.iter().map(|x| x.mul(c)).collect(), &self.template)
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(&self.template);
        }
        let mut out = vec![self.template.clone(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        Self::new(out, &self.template)
    }

    pub fn eval(&self, x: &T) -> T {
        self.coeffs
            .iter()
            .rev()
            .fold(self.template.clone(), |acc, c| acc.mul(x).add(c))
    }

    pub fn derivative(&self) -> Self {
        let c = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c.mul_int(k as i64))
            .collect();
        Self::new(c, &self.template)
    }

    /// Quotient and remainder; the divisor's leading coefficient must be a unit.
    pub fn divmod(&self, b: &Self) -> Result<(Self, Self)> {
        let db = b.degree().ok_or(Error::DivisionByZeroPoly)?;
        let lead_inv = b.coeffs[db].inv()?;
        let mut r = self.coeffs.clone();
        if r.len() <= db {
            return Ok((Self::zero(&self.template), self.clone()));
        }
        let mut quot = vec![self.template.clone(); r.len() - db];
        for k in (db..r.len()).rev() {
            if r[k].is_zero() {
                continue;
            }
            let c = r[k].mul(&lead_inv);
            for (j, bj) in b.coeffs.iter().enumerate() {
                let idx = k - db + j;
                r[idx] = r[idx].sub(&c.mul(bj));
            }
            quot[k - db] = c;
        }
        r.truncate(db);
        Ok((Self::new(quot, &self.template), Self::new(r, &self.template)))
    }

    /// Synthetic division by `Z - c`; returns quotient and remainder `self(c)`.
    pub fn div_linear(&self, c: &T) -> (Self, T) {
        if self.coeffs.is_empty() {
            return (Self::zero(&self.template), self.template.clone());
        }
        let n = self.coeffs.len();
        let mut quot = vec![self.template.clone(); n - 1];
        let mut carry = self.template.clone();
        for k in (0..n).rev() {
            let v = self.coeffs[k].add(&carry.mul(c));
            if k == 0 {
                return (Self::new(quot, &self.template), v);
            }
            quot[k - 1] = v.clone();
            carry = v;
        }
        unreachable!()
    }

    /// Lagrange interpolation through `(nodes[i], values[i])` using the
    /// node polynomial and its derivative.
    pub fn interpolate(nodes: &[T], values: &[T]) -> Result<Self> {
        assert_eq!(nodes.len(), values.len());
        let Some(first) = nodes.first() else {
            return Err(Error::SingularSystem);
        };
        let mut node_poly = Self::constant(first.one_like());
        for x in nodes {
            node_poly = node_poly.mul(&Self::linear_root(x));
        }
        let deriv = node_poly.derivative();
        let mut acc = Self::zero(first);
        for (x, y) in nodes.iter().zip(values) {
            let (basis, rem) = node_poly.div_linear(x);
            debug_assert!(rem.is_zero());
            let w = deriv.eval(x);
            if w.is_zero() {
                return Err(Error::DuplicateNodes);
            }
            acc = acc.add(&basis.scale(&y.mul(&w.inv()?)));
        }
        Ok(acc)
    }
}

impl<T: Scalar> UPoly<T> {
    /// `(g, s)` with `g = gcd(self, m)` and `s*self ≡ g (mod m)`. Requires
    /// every nonzero coefficient arising to be invertible (field case).
    pub fn ext_gcd(&self, m: &Self) -> Result<(Self, Self)> {
        let one = Self::constant(self.template.one_like());
        let (mut r0, mut r1) = (m.clone(), self.clone());
        let (mut s0, mut s1) = (Self::zero(&self.template), one);
        while !r1.is_zero() {
            let (q, r) = r0.divmod(&r1)?;
            let s = s0.sub(&q.mul(&s1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
        }
        Ok((r0, s0))
    }
}
