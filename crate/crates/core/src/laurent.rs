//! Truncated Laurent series in the uniformizer `u = 1/λ_θ` over `F_{q^d}`,
//! with `λ_θ^(q-1) = -θ`.
//!
//! Valuations are integers in units of `u`: `v(u) = 1`, `v(θ) = -(q-1)`,
//! and `|x| = q^(-v(x)/(q-1))`. Precision is absolute: a series with
//! precision `P` is known modulo `u^P`.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::{FieldSpec, GfElem};
use crate::poly::GFPoly;
use crate::scalar::Scalar;

/// Precision marker for values known exactly (finite sums).
pub const EXACT: i64 = 1 << 60;

#[inline]
pub(crate) fn padd(a: i64, b: i64) -> i64 {
    if a >= EXACT / 2 || b >= EXACT / 2 {
        EXACT
    } else {
        (a + b).min(EXACT)
    }
}

/// `|x| = q^(exponent/(q-1))`, or an upper bound when `x` vanishes to its
/// precision.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum NormExp {
    Exact(i64),
    AtMost(i64),
}

#[derive(Clone)]
pub struct RamLaurent {
    field: Arc<FieldSpec>,
    /// Exponent of `coeffs[0]`; equals the valuation when nonzero.
    start: i64,
    coeffs: Vec<GfElem>,
    prec: i64,
}

impl PartialEq for RamLaurent {
    fn eq(&self, other: &Self) -> bool {
        self.prec == other.prec && self.coeffs == other.coeffs && (self.coeffs.is_empty() || self.start == other.start)
    }
}

impl fmt::Debug for RamLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for RamLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (i, &c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                parts.push(format!("{}*u^{}", self.field.render(c), self.start + i as i64));
            }
        }
        if self.prec < EXACT / 2 {
            parts.push(format!("O(u^{})", self.prec));
        }
        if parts.is_empty() {
            parts.push("0".into());
        }
        write!(f, "{}", parts.join(" + "))
    }
}

impl RamLaurent {
    /// Builds a series from `(exponent, coefficient)` pairs, dropping terms at
    /// or beyond `prec`.
    pub fn from_terms(field: &Arc<FieldSpec>, terms: &[(i64, GfElem)], prec: i64) -> Self {
        let mut x = Self::zero(field, prec);
        for &(v, c) in terms {
            if v < prec {
                x = x.add(&Self::monomial(field, c, v, EXACT));
            }
        }
        x.truncated(prec)
    }

    fn from_dense(field: &Arc<FieldSpec>, start: i64, coeffs: Vec<GfElem>, prec: i64) -> Self {
        let mut x = RamLaurent {
            field: field.clone(),
            start,
            coeffs,
            prec,
        };
        x.normalize();
        x
    }

    fn normalize(&mut self) {
        let keep = (self.prec - self.start).max(0);
        if (self.coeffs.len() as i64) > keep {
            self.coeffs.truncate(keep as usize);
        }
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
        let lead_zeros = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead_zeros > 0 {
            self.coeffs.drain(..lead_zeros);
            self.start += lead_zeros as i64;
        }
        if self.coeffs.is_empty() {
            self.start = 0;
        }
    }

    pub fn zero(field: &Arc<FieldSpec>, prec: i64) -> Self {
        RamLaurent {
            field: field.clone(),
            start: 0,
            coeffs: Vec::new(),
            prec,
        }
    }

    pub fn one(field: &Arc<FieldSpec>, prec: i64) -> Self {
        Self::monomial(field, GfElem::ONE, 0, prec)
    }

    /// `c * u^v + O(u^prec)`.
    pub fn monomial(field: &Arc<FieldSpec>, c: GfElem, v: i64, prec: i64) -> Self {
        Self::from_dense(field, v, vec![c], prec)
    }

    pub fn constant(field: &Arc<FieldSpec>, c: GfElem, prec: i64) -> Self {
        Self::monomial(field, c, 0, prec)
    }

    /// `λ_θ = u^(-1)`.
    pub fn lambda(field: &Arc<FieldSpec>, prec: i64) -> Self {
        Self::monomial(field, GfElem::ONE, -1, prec)
    }

    /// `θ^k = (-1)^k u^(-k(q-1))` for any integer `k`.
    pub fn theta_pow(field: &Arc<FieldSpec>, k: i64, prec: i64) -> Self {
        let q1 = field.q() as i64 - 1;
        let sign = if k.rem_euclid(2) == 1 { field.neg_one() } else { GfElem::ONE };
        Self::monomial(field, sign, -k * q1, prec)
    }

    pub fn field(&self) -> &Arc<FieldSpec> {
        &self.field
    }

    pub fn prec(&self) -> i64 {
        self.prec
    }

    pub fn is_exact(&self) -> bool {
        self.prec >= EXACT / 2
    }

    /// Valuation of the leading term, `None` when zero to precision.
    pub fn lead(&self) -> Option<i64> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.start)
        }
    }

    /// Valuation lower bound: the lead, or the precision for zero.
    pub fn val(&self) -> i64 {
        self.lead().unwrap_or(self.prec)
    }

    pub fn lead_coeff(&self) -> GfElem {
        self.coeffs.first().copied().unwrap_or(GfElem::ZERO)
    }

    pub fn coeff(&self, v: i64) -> GfElem {
        if v < self.start {
            return GfElem::ZERO;
        }
        self.coeffs.get((v - self.start) as usize).copied().unwrap_or(GfElem::ZERO)
    }

    /// Stored `(exponent, coefficient)` pairs with nonzero coefficient.
    pub fn terms(&self) -> impl Iterator<Item = (i64, GfElem)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(i, &c)| (self.start + i as i64, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn truncated(&self, prec: i64) -> Self {
        let mut x = self.clone();
        x.prec = x.prec.min(prec);
        x.normalize();
        x
    }

    /// Lowers precision to `prec` if that is smaller; used when a truncation
    /// bound limits how well a value is known.
    pub fn with_prec_at_most(self, prec: i64) -> Self {
        self.truncated(prec)
    }

    fn check(&self, other: &Self) -> Result<()> {
        if Arc::ptr_eq(&self.field, &other.field) || *self.field == *other.field {
            Ok(())
        } else {
            Err(Error::SpecMismatch)
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.add(other))
    }

    pub fn add(&self, other: &Self) -> Self {
        let prec = self.prec.min(other.prec);
        if other.coeffs.is_empty() {
            return self.truncated(prec);
        }
        if self.coeffs.is_empty() {
            return other.truncated(prec);
        }
        let start = self.start.min(other.start);
        let end = (self.start + self.coeffs.len() as i64)
            .max(other.start + other.coeffs.len() as i64)
            .min(prec);
        if end <= start {
            return Self::zero(&self.field, prec);
        }
        let f = &self.field;
        let mut out = vec![GfElem::ZERO; (end - start) as usize];
        for (i, &c) in self.coeffs.iter().enumerate() {
            let v = self.start + i as i64;
            if v >= end {
                break;
            }
            out[(v - start) as usize] = c;
        }
        for (i, &c) in other.coeffs.iter().enumerate() {
            let v = other.start + i as i64;
            if v >= end {
                break;
            }
            let k = (v - start) as usize;
            out[k] = f.add(out[k], c);
        }
        Self::from_dense(f, start, out, prec)
    }

    pub fn neg(&self) -> Self {
        let f = &self.field;
        let c = self.coeffs.iter().map(|&x| f.neg(x)).collect();
        Self::from_dense(f, self.start, c, self.prec)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: GfElem) -> Self {
        if c.is_zero() {
            return Self::zero(&self.field, EXACT);
        }
        let f = &self.field;
        let v = self.coeffs.iter().map(|&x| f.mul(x, c)).collect();
        Self::from_dense(f, self.start, v, self.prec)
    }

    /// Exact multiplication by `u^k`.
    pub fn shift(&self, k: i64) -> Self {
        Self::from_dense(&self.field, self.start + k, self.coeffs.clone(), padd(self.prec, k))
    }

    /// Exact multiplication by `θ^k`.
    pub fn mul_theta_pow(&self, k: i64) -> Self {
        let q1 = self.field.q() as i64 - 1;
        let x = self.shift(-k * q1);
        if k.rem_euclid(2) == 1 {
            x.scale(self.field.neg_one())
        } else {
            x
        }
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.mul(other))
    }

    pub fn mul(&self, other: &Self) -> Self {
        let prec = padd(self.prec, other.val()).min(padd(other.prec, self.val()));
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return Self::zero(&self.field, prec);
        }
        let start = self.start + other.start;
        let len = ((self.coeffs.len() + other.coeffs.len() - 1) as i64).min(prec - start);
        if len <= 0 {
            return Self::zero(&self.field, prec);
        }
        let len = len as usize;
        let f = &self.field;
        let mut out = vec![GfElem::ZERO; len];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if i >= len {
                break;
            }
            if a.is_zero() {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate().take(len - i) {
                if !b.is_zero() {
                    out[i + j] = f.add(out[i + j], f.mul(a, b));
                }
            }
        }
        Self::from_dense(f, start, out, prec)
    }

    /// Inverse by term-by-term expansion of the unit part; precision
    /// `prec - 2*lead`.
    pub fn inv(&self) -> Result<Self> {
        let Some(lead) = self.lead() else {
            return Err(Error::InvertZero(self.prec));
        };
        let f = &self.field;
        if self.is_exact() {
            if self.coeffs.len() == 1 {
                let c = f.inv(self.coeffs[0]).unwrap();
                return Ok(Self::monomial(f, c, -lead, EXACT));
            }
            return Err(Error::PrecisionExhausted(
                "inverse of an exact multi-term series needs a working precision; use inv_to".into(),
            ));
        }
        Ok(self.inv_rel(self.prec - 2 * lead))
    }

    /// Inverse computed to absolute precision `target`, clipped to what the
    /// input precision supports.
    pub fn inv_to(&self, target: i64) -> Result<Self> {
        let Some(lead) = self.lead() else {
            return Err(Error::InvertZero(self.prec));
        };
        let supported = padd(self.prec, -2 * lead);
        Ok(self.inv_rel(target.min(supported)))
    }

    fn inv_rel(&self, prec_out: i64) -> Self {
        let f = &self.field;
        let lead = self.start;
        let n = (prec_out + lead).max(0) as usize;
        let a0_inv = f.inv(self.coeffs[0]).unwrap();
        let mut b = vec![GfElem::ZERO; n];
        for k in 0..n {
            if k == 0 {
                b[0] = a0_inv;
                continue;
            }
            let mut s = GfElem::ZERO;
            for i in 1..=k.min(self.coeffs.len() - 1) {
                let a = self.coeffs[i];
                if !a.is_zero() && !b[k - i].is_zero() {
                    s = f.add(s, f.mul(a, b[k - i]));
                }
            }
            b[k] = f.neg(f.mul(s, a0_inv));
        }
        Self::from_dense(f, -lead, b, prec_out)
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.mul(&other.inv()?))
    }

    /// Square-and-multiply power; negative exponents invert first.
    pub fn pow(&self, k: i64) -> Result<Self> {
        let base = if k < 0 { self.inv()? } else { self.clone() };
        let mut e = k.unsigned_abs();
        let mut result = Self::one(&self.field, EXACT);
        let mut b = base;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&b);
            }
            e >>= 1;
            if e > 0 {
                b = b.mul(&b);
            }
        }
        Ok(result)
    }

    /// `x^(q^k)`: in characteristic `p` this is coefficient Frobenius with
    /// exponents and precision scaled by `q^k`.
    pub fn frobenius(&self, k: u32) -> Self {
        self.frobenius_to(k, EXACT)
    }

    /// `x^(q^k)` with the result cut at `min(q^k * prec, cap)`.
    pub fn frobenius_to(&self, k: u32, cap: i64) -> Self {
        let f = &self.field;
        let qk = (f.q() as i64).checked_pow(k).unwrap_or(EXACT);
        let mut prec = if self.is_exact() {
            EXACT
        } else if self.prec >= 0 {
            self.prec.saturating_mul(qk).min(EXACT)
        } else {
            self.prec.saturating_mul(qk).max(-EXACT)
        };
        prec = prec.min(cap);
        if self.coeffs.is_empty() {
            return Self::zero(f, prec);
        }
        let start = self.start.saturating_mul(qk);
        if start >= prec {
            return Self::zero(f, prec);
        }
        let n = self
            .coeffs
            .len()
            .min(((prec - start - 1) / qk + 1) as usize);
        let mut out = vec![GfElem::ZERO; (n - 1) * qk as usize + 1];
        for (i, &c) in self.coeffs.iter().take(n).enumerate() {
            out[i * qk as usize] = f.frobenius(c, k);
        }
        Self::from_dense(f, start, out, prec)
    }

    pub fn norm(&self) -> NormExp {
        match self.lead() {
            Some(l) => NormExp::Exact(-l),
            None => NormExp::AtMost(-self.prec),
        }
    }

    /// Component outside `K_∞`: terms at exponents not divisible by `q-1`,
    /// and the non-`F_q` part of coefficients at the other exponents.
    pub fn imaginary_part(&self) -> Self {
        let f = &self.field;
        let q1 = f.q() as i64 - 1;
        let q = f.q();
        let mut out = Vec::with_capacity(self.coeffs.len());
        for (i, &c) in self.coeffs.iter().enumerate() {
            let v = self.start + i as i64;
            if v.rem_euclid(q1) != 0 {
                out.push(c);
            } else {
                let idx = f.coord(c);
                out.push(f.from_coord(idx - idx % q));
            }
        }
        Self::from_dense(f, self.start, out, self.prec)
    }

    /// `|z|_ℑ = inf_{κ ∈ K_∞} |z - κ|` as a valuation; `None` when the
    /// imaginary part vanishes to precision.
    pub fn imaginary_val(&self) -> Option<i64> {
        self.imaginary_part().lead()
    }
}

/// Image of `a ∈ F_{q^d}[θ]` in the completion, known to `prec`.
pub fn embed_theta_poly(a: &GFPoly, prec: i64) -> Result<RamLaurent> {
    let f = a.field();
    let q1 = f.q() as i64 - 1;
    if let Some(deg) = a.degree() {
        if prec <= -(q1 * deg as i64) {
            return Err(Error::PrecisionTooLow(format!(
                "prec {prec} does not reach the leading exponent {}",
                -(q1 * deg as i64)
            )));
        }
    }
    let mut x = RamLaurent::zero(f, prec);
    for (k, &c) in a.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let sign = if k % 2 == 1 { f.neg_one() } else { GfElem::ONE };
        x = x.add(&RamLaurent::monomial(f, f.mul(c, sign), -(k as i64) * q1, EXACT));
    }
    Ok(x.truncated(prec))
}

/// Exact image of `a ∈ F_{q^d}[θ]` (finite sum).
pub fn embed_theta_poly_exact(a: &GFPoly) -> RamLaurent {
    embed_theta_poly(a, EXACT).expect("exact precision always suffices")
}

/// `1/a` for a nonzero polynomial `a`, to absolute precision `prec`.
pub fn theta_poly_inv(a: &GFPoly, prec: i64) -> Result<RamLaurent> {
    let e = embed_theta_poly_exact(a);
    if e.is_zero() {
        return Err(Error::InvertZero(EXACT));
    }
    e.inv_to(prec)
}

impl Scalar for RamLaurent {
    fn zero_like(&self) -> Self {
        Self::zero(&self.field, EXACT)
    }
    fn one_like(&self) -> Self {
        Self::one(&self.field, EXACT)
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
    fn add(&self, other: &Self) -> Self {
        RamLaurent::add(self, other)
    }
    fn sub(&self, other: &Self) -> Self {
        RamLaurent::sub(self, other)
    }
    fn mul(&self, other: &Self) -> Self {
        RamLaurent::mul(self, other)
    }
    fn neg(&self) -> Self {
        RamLaurent::neg(self)
    }
    fn inv(&self) -> Result<Self> {
        RamLaurent::inv(self)
    }
    fn mul_int(&self, k: i64) -> Self {
        self.scale(self.field.from_int(k))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::make_field;
    use crate::poly::Var;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_series(f: &Arc<FieldSpec>, rng: &mut ChaCha8Rng, prec: i64) -> RamLaurent {
        let lead = rng.gen_range(-8..8);
        let n = rng.gen_range(1..10);
        let mut terms = vec![(lead, f.from_coord(rng.gen_range(1..f.order())))];
        for _ in 0..n {
            terms.push((rng.gen_range(lead + 1..lead + 20), f.from_coord(rng.gen_range(0..f.order()))));
        }
        RamLaurent::from_terms(f, &terms, prec)
    }

    #[test]
    fn embedding_examples() {
        let f = make_field(2, 1, 1).unwrap();
        let one = embed_theta_poly(&GFPoly::one(&f, Var::Theta), 10).unwrap();
        assert_eq!(one.terms().collect::<Vec<_>>(), vec![(0, GfElem::ONE)]);
        let a = GFPoly::from_fq(&f, &[1, 1, 1], Var::Theta);
        let x = embed_theta_poly(&a, 10).unwrap();
        assert_eq!(x.terms().map(|t| t.0).collect::<Vec<_>>(), vec![-2, -1, 0]);

        let f3 = make_field(3, 1, 1).unwrap();
        let th = embed_theta_poly(&GFPoly::x(&f3, Var::Theta), 10).unwrap();
        assert_eq!(th.terms().collect::<Vec<_>>(), vec![(-2, f3.from_int(2))]);
        assert!(matches!(
            embed_theta_poly(&GFPoly::x(&f3, Var::Theta), -2),
            Err(Error::PrecisionTooLow(_))
        ));
    }

    #[test]
    fn inverse_examples() {
        let f = make_field(3, 1, 1).unwrap();
        let th = RamLaurent::theta_pow(&f, 1, 40);
        let inv = th.inv().unwrap();
        let prod = th.mul(&inv);
        assert_eq!(prod.terms().collect::<Vec<_>>(), vec![(0, GfElem::ONE)]);
        assert_eq!(prod.prec(), 42);
        // (1 - 1/θ)^{-1} = Σ θ^{-k}
        let x = RamLaurent::one(&f, 30).sub(&RamLaurent::theta_pow(&f, -1, 30));
        let y = x.inv().unwrap();
        let mut expect = RamLaurent::zero(&f, 30);
        for k in 0..15 {
            expect = expect.add(&RamLaurent::theta_pow(&f, -k, EXACT));
        }
        assert!(y.sub(&expect).is_zero());
        assert_eq!(RamLaurent::zero(&f, 5).inv().unwrap_err(), Error::InvertZero(5));
    }

    #[test]
    fn frobenius_matches_power() {
        let f = make_field(3, 1, 2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..50 {
            let x = random_series(&f, &mut rng, 30);
            let a = x.frobenius(1);
            let b = x.pow(3).unwrap();
            assert!(a.prec() >= b.prec());
            assert!(a.sub(&b).is_zero());
        }
        let f2 = make_field(2, 1, 1).unwrap();
        let u = RamLaurent::monomial(&f2, GfElem::ONE, 1, EXACT);
        assert_eq!(u.frobenius(1), RamLaurent::monomial(&f2, GfElem::ONE, 2, EXACT));
        let c = RamLaurent::constant(&f, f.from_coord(5), EXACT);
        assert_eq!(c.frobenius(2), c);
    }

    #[test]
    fn norms() {
        let f = make_field(3, 1, 1).unwrap();
        assert_eq!(RamLaurent::theta_pow(&f, 1, 10).norm(), NormExp::Exact(2));
        assert_eq!(RamLaurent::lambda(&f, 10).norm(), NormExp::Exact(1));
        assert_eq!(RamLaurent::zero(&f, 30).norm(), NormExp::AtMost(-30));
    }

    #[test]
    fn ultrametric_and_multiplicative_seeded() {
        let f = make_field(2, 1, 3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..1000 {
            let x = random_series(&f, &mut rng, 40);
            let y = random_series(&f, &mut rng, 40);
            let s = x.add(&y);
            let (vx, vy) = (x.lead().unwrap(), y.lead().unwrap());
            assert!(s.val() >= vx.min(vy));
            if vx != vy {
                assert_eq!(s.lead(), Some(vx.min(vy)));
            }
            assert_eq!(x.mul(&y).lead(), Some(vx + vy));
            let back = x.inv().unwrap().inv().unwrap();
            assert!(back.sub(&x).is_zero());
            assert!(back.prec() >= x.prec() - 4 * (vx.max(0)) - 4 * vx.abs());
        }
    }

    #[test]
    fn imaginary_part() {
        let f = make_field(3, 1, 2).unwrap();
        let z = RamLaurent::theta_pow(&f, 2, 20);
        assert_eq!(z.imaginary_val(), None);
        let w = z.add(&RamLaurent::lambda(&f, 20));
        assert_eq!(w.imaginary_val(), Some(-1));
        let c = RamLaurent::constant(&f, f.from_coord(4), 20);
        assert_eq!(c.imaginary_val(), Some(0));
    }
}
