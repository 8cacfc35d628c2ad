//! Dense polynomials over a constructed finite field.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::{FieldSpec, GfElem};

/// Name of the indeterminate a polynomial is written in. Only used for
/// rendering; arithmetic does not check it.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum Var {
    Theta,
    T(usize),
    X,
    Y,
    Z,
}

impl Var {
    fn symbol(self) -> String {
        match self {
            Var::Theta => "θ".into(),
            Var::T(0) => "t".into(),
            Var::T(i) => format!("t{}", i + 1),
            Var::X => "x".into(),
            Var::Y => "y".into(),
            Var::Z => "Z".into(),
        }
    }
}

/// Dense polynomial, coefficients low to high, no trailing zeros.
#[derive(Clone)]
pub struct GFPoly {
    field: Arc<FieldSpec>,
    coeffs: Vec<GfElem>,
    var: Var,
}

impl PartialEq for GFPoly {
    fn eq(&self, other: &Self) -> bool {
        (Arc::ptr_eq(&self.field, &other.field) || *self.field == *other.field) && self.coeffs == other.coeffs
    }
}
impl Eq for GFPoly {}

impl fmt::Debug for GFPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for GFPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let v = self.var.symbol();
        let mut parts = Vec::new();
        for (k, &c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let cs = self.field.render(c);
            let term = match (k, cs.as_str()) {
                (0, _) => cs,
                (1, "1") => v.clone(),
                (_, "1") => format!("{v}^{k}"),
                (1, _) => format!("{cs}*{v}"),
                _ => format!("{cs}*{v}^{k}"),
            };
            parts.push(term);
        }
        write!(f, "{}", parts.join(" + "))
    }
}

impl GFPoly {
    pub fn new(field: &Arc<FieldSpec>, coeffs: Vec<GfElem>, var: Var) -> Self {
        let mut p = GFPoly {
            field: field.clone(),
            coeffs,
            var,
        };
        p.normalize();
        p
    }

    /// Polynomial with `F_q` coefficients given as coordinate indices, low
    /// to high (`[1,1,1]` is `θ^2+θ+1`).
    pub fn from_fq(field: &Arc<FieldSpec>, coeffs: &[u32], var: Var) -> Self {
        let c = coeffs.iter().map(|&k| field.from_fq(k)).collect();
        Self::new(field, c, var)
    }

    pub fn zero(field: &Arc<FieldSpec>, var: Var) -> Self {
        Self::new(field, Vec::new(), var)
    }

    pub fn one(field: &Arc<FieldSpec>, var: Var) -> Self {
        Self::constant(field, GfElem::ONE, var)
    }

    pub fn constant(field: &Arc<FieldSpec>, c: GfElem, var: Var) -> Self {
        Self::new(field, vec![c], var)
    }

    /// `c * var^k`.
    pub fn monomial(field: &Arc<FieldSpec>, c: GfElem, k: usize, var: Var) -> Self {
        let mut v = vec![GfElem::ZERO; k + 1];
        v[k] = c;
        Self::new(field, v, var)
    }

    /// The indeterminate itself.
    pub fn x(field: &Arc<FieldSpec>, var: Var) -> Self {
        Self::monomial(field, GfElem::ONE, 1, var)
    }

    fn normalize(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn field(&self) -> &Arc<FieldSpec> {
        &self.field
    }

    pub fn var(&self) -> Var {
        self.var
    }

    pub fn with_var(mut self, var: Var) -> Self {
        self.var = var;
        self
    }

    pub fn coeffs(&self) -> &[GfElem] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> GfElem {
        self.coeffs.get(k).copied().unwrap_or(GfElem::ZERO)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` is the sentinel for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> GfElem {
        self.coeffs.last().copied().unwrap_or(GfElem::ZERO)
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == GfElem::ONE
    }

    /// True if every coefficient lies in `F_q`.
    pub fn over_fq(&self) -> bool {
        self.coeffs.iter().all(|&c| self.field.in_fq(c))
    }

    fn check(&self, other: &Self) -> Result<()> {
        if Arc::ptr_eq(&self.field, &other.field) || *self.field == *other.field {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.add(other))
    }

    pub fn add(&self, other: &Self) -> Self {
        let f = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let c = (0..n).map(|k| f.add(self.coeff(k), other.coeff(k))).collect();
        Self::new(f, c, self.var)
    }

    pub fn neg(&self) -> Self {
        let f = &self.field;
        let c = self.coeffs.iter().map(|&x| f.neg(x)).collect();
        Self::new(f, c, self.var)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: GfElem) -> Self {
        let f = &self.field;
        let v = self.coeffs.iter().map(|&x| f.mul(x, c)).collect();
        Self::new(f, v, self.var)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.mul(other))
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(&self.field, self.var);
        }
        let f = &self.field;
        let mut out = vec![GfElem::ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = f.add(out[i + j], f.mul(a, b));
            }
        }
        Self::new(f, out, self.var)
    }

    /// Multiplication by `var^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut c = vec![GfElem::ZERO; k];
        c.extend_from_slice(&self.coeffs);
        Self::new(&self.field, c, self.var)
    }

    pub fn pow(&self, k: u64) -> Self {
        let mut result = Self::one(&self.field, self.var);
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

    /// `self^(q^k)`: coefficientwise Frobenius with exponents scaled by `q^k`.
    pub fn frobenius(&self, k: u32) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let f = &self.field;
        let qk = (f.q() as usize).pow(k);
        let mut out = vec![GfElem::ZERO; (self.coeffs.len() - 1) * qk + 1];
        for (i, &c) in self.coeffs.iter().enumerate() {
            out[i * qk] = f.frobenius(c, k);
        }
        Self::new(f, out, self.var)
    }

    /// Quotient and remainder with `deg r < deg b`.
    pub fn divmod(&self, b: &Self) -> Result<(Self, Self)> {
        self.check(b)?;
        let db = b.degree().ok_or(Error::DivisionByZeroPoly)?;
        let f = &self.field;
        let lead_inv = f.inv(b.leading()).expect("nonzero leading coefficient");
        let mut r = self.coeffs.clone();
        if r.len() <= db {
            return Ok((Self::zero(f, self.var), self.clone()));
        }
        let mut quot = vec![GfElem::ZERO; r.len() - db];
        for k in (db..r.len()).rev() {
            let c = f.mul(r[k], lead_inv);
            if c.is_zero() {
                continue;
            }
            quot[k - db] = c;
            for (j, &bj) in b.coeffs.iter().enumerate() {
                let idx = k - db + j;
                r[idx] = f.sub(r[idx], f.mul(c, bj));
            }
        }
        r.truncate(db);
        Ok((Self::new(f, quot, self.var), Self::new(f, r, self.var)))
    }

    pub fn rem(&self, b: &Self) -> Result<Self> {
        Ok(self.divmod(b)?.1)
    }

    /// Exact quotient; panics if `b` does not divide `self`.
    pub fn div_exact(&self, b: &Self) -> Self {
        let (q, r) = self.divmod(b).expect("nonzero divisor");
        assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    pub fn eval(&self, x: GfElem) -> GfElem {
        let f = &self.field;
        self.coeffs
            .iter()
            .rev()
            .fold(GfElem::ZERO, |acc, &c| f.add(f.mul(acc, x), c))
    }

    /// Makes the polynomial monic; returns the leading coefficient divided out.
    pub fn monic(&self) -> (Self, GfElem) {
        let lead = self.leading();
        match self.field.inv(lead) {
            None => (self.clone(), GfElem::ZERO),
            Some(li) => (self.scale(li), lead),
        }
    }

    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b).expect("nonzero");
            a = b;
            b = r;
        }
        a.monic().0
    }

    pub fn derivative(&self) -> Self {
        let f = &self.field;
        let c = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, &c)| f.mul(c, f.from_int(k as i64)))
            .collect();
        Self::new(f, c, self.var)
    }

    /// Substitutes `var ↦ g`.
    pub fn compose(&self, g: &Self) -> Self {
        let mut acc = Self::zero(&self.field, g.var);
        for &c in self.coeffs.iter().rev() {
            acc = acc.mul(g).add(&Self::constant(&self.field, c, g.var));
        }
        acc
    }

    /// Irreducibility over `F_q` for polynomials with `F_q` coefficients.
    pub fn is_irreducible_fq(&self) -> bool {
        let Some(n) = self.degree() else {
            return false;
        };
        if n == 0 || !self.over_fq() {
            return false;
        }
        for k in 1..=n / 2 {
            for g in enumerate_monic(&self.field, k as u32, self.var) {
                if self.rem(&g).unwrap().is_zero() {
                    return false;
                }
            }
        }
        true
    }
}

/// All monic polynomials of degree `j` with `F_q` coefficients, in
/// coefficient-lex order (lowest coefficient most significant).
fn enumerate_monic(field: &Arc<FieldSpec>, j: u32, var: Var) -> Vec<GFPoly> {
    let q = field.q();
    let count = (q as u64).pow(j);
    (0..count)
        .map(|idx| {
            let mut c = vec![0u32; j as usize + 1];
            let mut rest = idx;
            for k in 0..j as usize {
                c[k] = (rest % q as u64) as u32;
                rest /= q as u64;
            }
            c[j as usize] = 1;
            GFPoly::from_fq(field, &c, var)
        })
        .collect()
}

/// Largest admissible enumeration size `q^j`.
pub const MAX_ENUMERATION: u64 = 1 << 16;

/// `A(j)` (all polynomials of degree `< j`, including 0) when `monic_only`
/// is false, `A⁺(j)` (monic polynomials of degree exactly `j`) otherwise.
/// Ordering: the coefficient vector read as a base-`q` counter with the
/// constant term as least significant digit.
pub fn enumerate_a(field: &Arc<FieldSpec>, j: u32, monic_only: bool) -> Result<Vec<GFPoly>> {
    let q = field.q() as u64;
    let count = q
        .checked_pow(j)
        .filter(|&c| c <= MAX_ENUMERATION)
        .ok_or_else(|| Error::SizeLimitExceeded(format!("q^{j} exceeds {MAX_ENUMERATION}")))?;
    Ok((0..count)
        .map(|idx| {
            let mut c = Vec::with_capacity(j as usize + 1);
            let mut rest = idx;
            for _ in 0..j {
                c.push((rest % q) as u32);
                rest /= q;
            }
            if monic_only {
                c.push(1);
            }
            GFPoly::from_fq(field, &c, Var::Theta)
        })
        .collect())
}

/// All roots in `F_{q^d}` of a monic irreducible `f ∈ F_q[x]` whose degree
/// divides `d`, sorted in coefficient-lex order.
pub fn roots_in_ext(f: &GFPoly) -> Result<Vec<GfElem>> {
    if !f.is_monic() || !f.is_irreducible_fq() {
        return Err(Error::NotIrreducible);
    }
    let field = f.field();
    let mut roots: Vec<GfElem> = field.elements().filter(|&x| f.eval(x).is_zero()).collect();
    if roots.is_empty() {
        return Err(Error::NoRootInExtension);
    }
    roots.sort_by_key(|&x| field.lex_key(x));
    Ok(roots)
}
