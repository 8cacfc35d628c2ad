//! Truncated elements of the Tate algebra in `t_1, …, t_s` over the
//! completion: polynomials with [`RamLaurent`] coefficients, a per-variable
//! degree cap and a bound on the discarded tail.
//!
//! Stored coefficients are exact modulo `u^prec`: degrees above the cap only
//! feed the tail bound, never lower-degree coefficients. `tail` is a
//! valuation: the discarded part has Gauss norm at most `q^(-tail/(q-1))`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::{FieldSpec, GfElem};
use crate::laurent::{padd, NormExp, RamLaurent, EXACT};
use crate::poly::{roots_in_ext, GFPoly};

pub type Exps = Vec<u32>;

#[derive(Clone, PartialEq)]
pub struct TateElem {
    field: Arc<FieldSpec>,
    s: usize,
    tcap: u32,
    terms: BTreeMap<Exps, RamLaurent>,
    prec: i64,
    tail: i64,
}

impl fmt::Debug for TateElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for TateElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (e, c) in &self.terms {
            let mon: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(i, &k)| if self.s == 1 { format!("t^{k}") } else { format!("t{}^{k}", i + 1) })
                .collect();
            let body = c.terms().map(|(v, x)| format!("{}*u^{v}", self.field.render(x))).collect::<Vec<_>>().join(" + ");
            if mon.is_empty() {
                parts.push(format!("({body})"));
            } else {
                parts.push(format!("({body})*{}", mon.join("*")));
            }
        }
        if parts.is_empty() {
            parts.push("0".into());
        }
        write!(f, "{} [prec {}, tail {}]", parts.join(" + "), self.prec, self.tail)
    }
}

impl TateElem {
    /// Builds an element from coefficient terms. Terms beyond `tcap` are
    /// folded into the tail; every coefficient is cut to the common floor.
    pub fn from_terms(
        field: &Arc<FieldSpec>,
        s: usize,
        tcap: u32,
        terms: impl IntoIterator<Item = (Exps, RamLaurent)>,
        prec: i64,
        tail: i64,
    ) -> Result<Self> {
        let mut map: BTreeMap<Exps, RamLaurent> = BTreeMap::new();
        let mut prec = prec;
        let mut tail = tail;
        for (e, c) in terms {
            if e.len() != s {
                return Err(Error::ShapeMismatch(format!("exponent {e:?} for {s} variables")));
            }
            if !Arc::ptr_eq(c.field(), field) && **c.field() != **field {
                return Err(Error::SpecMismatch);
            }
            if e.iter().any(|&k| k > tcap) {
                tail = tail.min(c.val());
                continue;
            }
            prec = prec.min(c.prec());
            match map.get_mut(&e) {
                Some(x) => *x = x.add(&c),
                None => {
                    map.insert(e, c);
                }
            }
        }
        let mut out = TateElem {
            field: field.clone(),
            s,
            tcap,
            terms: map,
            prec,
            tail,
        };
        out.normalize();
        Ok(out)
    }

    fn normalize(&mut self) {
        let prec = self.prec;
        for c in self.terms.values_mut() {
            if c.prec() > prec {
                *c = c.truncated(prec);
            }
        }
        self.terms.retain(|_, c| !c.is_zero());
    }

    pub fn constant(c: RamLaurent, s: usize, tcap: u32) -> Self {
        let field = c.field().clone();
        Self::from_terms(&field, s, tcap, [(vec![0; s], c)], EXACT, EXACT).unwrap()
    }

    pub fn zero(field: &Arc<FieldSpec>, s: usize, tcap: u32) -> Self {
        Self::from_terms(field, s, tcap, [], EXACT, EXACT).unwrap()
    }

    /// The variable `t_i` (0-based `i`).
    pub fn var(field: &Arc<FieldSpec>, s: usize, tcap: u32, i: usize) -> Self {
        let mut e = vec![0; s];
        e[i] = 1;
        Self::from_terms(field, s, tcap, [(e, RamLaurent::one(field, EXACT))], EXACT, EXACT).unwrap()
    }

    /// Embeds a polynomial in `t_i` with `F_{q^d}` coefficients.
    pub fn from_t_poly(a: &GFPoly, s: usize, tcap: u32, i: usize) -> Self {
        let field = a.field();
        let terms = a.coeffs().iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(k, &c)| {
            let mut e = vec![0; s];
            e[i] = k as u32;
            (e, RamLaurent::constant(field, c, EXACT))
        });
        Self::from_terms(field, s, tcap, terms, EXACT, EXACT).unwrap()
    }

    pub fn field(&self) -> &Arc<FieldSpec> {
        &self.field
    }
    pub fn s(&self) -> usize {
        self.s
    }
    pub fn tcap(&self) -> u32 {
        self.tcap
    }
    pub fn prec(&self) -> i64 {
        self.prec
    }
    pub fn tail(&self) -> i64 {
        self.tail
    }
    pub fn terms(&self) -> &BTreeMap<Exps, RamLaurent> {
        &self.terms
    }

    pub fn coeff(&self, e: &[u32]) -> RamLaurent {
        self.terms
            .get(e)
            .cloned()
            .unwrap_or_else(|| RamLaurent::zero(&self.field, self.prec))
    }

    /// Coefficient of `t^k` for one-variable elements.
    pub fn coeff1(&self, k: u32) -> RamLaurent {
        self.coeff(&[k])
    }

    /// True when every in-box coefficient vanishes modulo `u^prec`.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Lowers the precision floor and tail to at most the given values.
    pub fn with_bounds(&self, prec: i64, tail: i64) -> Self {
        let mut out = self.clone();
        out.prec = out.prec.min(prec);
        out.tail = out.tail.min(tail);
        out.normalize();
        out
    }

    pub fn with_tcap(&self, tcap: u32) -> Self {
        if tcap >= self.tcap {
            // newly exposed degrees are only known to vanish modulo u^tail
            let mut out = self.clone();
            if tcap > self.tcap {
                out.prec = out.prec.min(out.tail);
                out.normalize();
            }
            out.tcap = tcap;
            return out;
        }
        Self::from_terms(&self.field, self.s, tcap, self.terms.clone(), self.prec, self.tail).unwrap()
    }

    /// Lower bound on the valuation of every in-box coefficient.
    pub fn gauss_val(&self) -> i64 {
        self.terms.values().map(|c| c.val()).min().unwrap_or(self.prec).min(self.prec)
    }

    /// Gauss norm of the stored part as `q^(exponent/(q-1))`.
    pub fn gauss_norm(&self) -> NormExp {
        match self.terms.values().filter_map(|c| c.lead()).min() {
            Some(v) if v < self.prec => NormExp::Exact(-v),
            _ => NormExp::AtMost(-self.prec),
        }
    }

    /// Valuation bound for the whole element: stored part and tail.
    pub fn total_val(&self) -> i64 {
        self.gauss_val().min(self.tail)
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.s != other.s {
            return Err(Error::ShapeMismatch(format!("{} vs {} variables", self.s, other.s)));
        }
        if !Arc::ptr_eq(&self.field, &other.field) && *self.field != *other.field {
            return Err(Error::SpecMismatch);
        }
        Ok(())
    }

    fn reconcile(&self, other: &Self) -> (Self, Self) {
        let cap = self.tcap.min(other.tcap);
        (self.with_tcap(cap), other.with_tcap(cap))
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let (a, b) = self.reconcile(other);
        let terms = a.terms.into_iter().chain(b.terms);
        Self::from_terms(&self.field, self.s, a.tcap, terms, a.prec.min(b.prec), a.tail.min(b.tail))
    }

    pub fn neg(&self) -> Self {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = c.neg();
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let (a, b) = self.reconcile(other);
        let (va, vb) = (a.gauss_val(), b.gauss_val());
        let prec = padd(a.prec, vb).min(padd(b.prec, va));
        let mut tail = padd(a.tail, vb.min(b.tail)).min(padd(b.tail, va.min(a.tail)));
        let mut map: BTreeMap<Exps, RamLaurent> = BTreeMap::new();
        for (ea, ca) in &a.terms {
            for (eb, cb) in &b.terms {
                let e: Exps = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                if e.iter().any(|&k| k > a.tcap) {
                    tail = tail.min(ca.val() + cb.val());
                    continue;
                }
                let p = ca.mul(cb).truncated(prec);
                match map.get_mut(&e) {
                    Some(x) => *x = x.add(&p),
                    None => {
                        map.insert(e, p);
                    }
                }
            }
        }
        let mut out = TateElem {
            field: self.field.clone(),
            s: self.s,
            tcap: a.tcap,
            terms: map,
            prec,
            tail,
        };
        out.prec = out.terms.values().map(|c| c.prec()).fold(prec, i64::min);
        out.normalize();
        Ok(out)
    }

    pub fn scalar_mul(&self, c: &RamLaurent) -> Self {
        let vc = c.val();
        let prec = padd(self.prec, vc).min(padd(c.prec(), self.gauss_val()));
        let terms: Vec<_> = self.terms.iter().map(|(e, x)| (e.clone(), x.mul(c))).collect();
        Self::from_terms(&self.field, self.s, self.tcap, terms, prec, padd(self.tail, vc)).unwrap()
    }

    /// Coefficientwise `c ↦ c^q`; the variables are fixed.
    pub fn tau_twist(&self) -> Self {
        self.tau_twist_k(1)
    }

    pub fn tau_twist_k(&self, k: u32) -> Self {
        let qk = (self.field.q() as i64).pow(k);
        let scale = |v: i64| if v >= EXACT / 2 { EXACT } else { v.saturating_mul(qk).min(EXACT) };
        let terms: Vec<_> = self.terms.iter().map(|(e, c)| (e.clone(), c.frobenius(k))).collect();
        Self::from_terms(&self.field, self.s, self.tcap, terms, scale(self.prec), scale(self.tail)).unwrap()
    }

    /// `t_i ↦ t_i^q`, coefficients untouched; overflow goes to the tail.
    pub fn phi_twist(&self, i: usize) -> Result<Self> {
        if i >= self.s {
            return Err(Error::ShapeMismatch(format!("variable {i} of {}", self.s)));
        }
        let q = self.field.q();
        let terms: Vec<_> = self
            .terms
            .iter()
            .map(|(e, c)| {
                let mut e = e.clone();
                e[i] *= q;
                (e, c.clone())
            })
            .collect();
        Self::from_terms(&self.field, self.s, self.tcap, terms, self.prec, self.tail)
    }

    /// Substitutes `t_i = ζ_i`; the tail bound carries over since `|ζ_i| = 1`.
    pub fn ev_map(&self, spec: &EvalSpec) -> Result<RamLaurent> {
        if spec.roots.len() != self.s {
            return Err(Error::ShapeMismatch(format!("{} roots for {} variables", spec.roots.len(), self.s)));
        }
        if !Arc::ptr_eq(&spec.field, &self.field) && *spec.field != *self.field {
            return Err(Error::SpecMismatch);
        }
        let f = &self.field;
        let mut acc = RamLaurent::zero(f, self.prec.min(self.tail));
        for (e, c) in &self.terms {
            let mut w = GfElem::ONE;
            for (k, z) in e.iter().zip(&spec.roots) {
                if *k > 0 {
                    w = f.mul(w, f.pow(*z, *k as i64));
                }
            }
            acc = acc.add(&c.scale(w));
        }
        Ok(acc)
    }

    /// Substitutes `t_i = θ`. Because `|θ| > 1` the discarded tail does not
    /// transfer; the caller supplies `tail_after`, a valuation bound for the
    /// image of the discarded part.
    pub fn specialize_theta(&self, i: usize, tail_after: i64) -> Result<Self> {
        if i >= self.s {
            return Err(Error::ShapeMismatch(format!("variable {i} of {}", self.s)));
        }
        let mut prec = self.prec;
        let mut terms = Vec::with_capacity(self.terms.len());
        for (e, c) in &self.terms {
            let x = c.mul_theta_pow(e[i] as i64);
            prec = prec.min(x.prec());
            let mut e2 = e.clone();
            e2.remove(i);
            terms.push((e2, x));
        }
        // absent in-box coefficients are zero only to u^prec
        let q1 = self.field.q() as i64 - 1;
        prec = prec.min(padd(self.prec, -(self.tcap as i64) * q1));
        let lowest = terms.iter().filter_map(|(_, x)| x.lead()).min();
        if lowest.is_some_and(|l| prec <= l) {
            return Err(Error::PrecisionExhausted(format!("specialization leaves precision {prec}")));
        }
        Self::from_terms(&self.field, self.s - 1, self.tcap, terms, prec, tail_after)
    }

    /// Value of a zero-variable element.
    pub fn scalar_value(&self) -> RamLaurent {
        self.coeff(&vec![0; self.s]).truncated(self.prec.min(self.tail))
    }
}

/// Primes `𝔭_i` and chosen roots `ζ_i` in one common field.
#[derive(Clone, Debug)]
pub struct EvalSpec {
    field: Arc<FieldSpec>,
    primes: Vec<GFPoly>,
    roots: Vec<GfElem>,
}

impl EvalSpec {
    /// `root_indices[i]` picks among the roots of `primes[i]` ordered by the
    /// canonical element order.
    pub fn new(primes: Vec<GFPoly>, root_indices: &[usize]) -> Result<Self> {
        let Some(first) = primes.first() else {
            return Err(Error::ShapeMismatch("no primes".into()));
        };
        if root_indices.len() != primes.len() {
            return Err(Error::ShapeMismatch("one root index per prime".into()));
        }
        let field = first.field().clone();
        let mut roots = Vec::new();
        for (i, p) in primes.iter().enumerate() {
            if !p.is_monic() || !p.over_fq() || !p.is_irreducible_fq() {
                return Err(Error::NotIrreducible);
            }
            if primes[..i].contains(p) {
                return Err(Error::ShapeMismatch("primes must be pairwise distinct".into()));
            }
            let rs = roots_in_ext(p)?;
            let r = *rs.get(root_indices[i]).ok_or(Error::NoRootInExtension)?;
            roots.push(r);
        }
        Ok(EvalSpec { field, primes, roots })
    }

    /// Uses explicit roots; each must annihilate its prime.
    pub fn with_roots(primes: Vec<GFPoly>, roots: Vec<GfElem>) -> Result<Self> {
        let field = primes.first().ok_or(Error::ShapeMismatch("no primes".into()))?.field().clone();
        for (p, &r) in primes.iter().zip(&roots) {
            if !p.eval(r).is_zero() {
                return Err(Error::RootMismatch);
            }
        }
        Ok(EvalSpec { field, primes, roots })
    }

    pub fn field(&self) -> &Arc<FieldSpec> {
        &self.field
    }
    pub fn primes(&self) -> &[GFPoly] {
        &self.primes
    }
    pub fn roots(&self) -> &[GfElem] {
        &self.roots
    }

    /// `𝔪 = ∏ 𝔭_i`.
    pub fn modulus(&self) -> GFPoly {
        self.primes.iter().fold(GFPoly::one(&self.field, self.primes[0].var()), |acc, p| acc.mul(p))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::make_field;
    use crate::poly::Var;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_tate(f: &Arc<FieldSpec>, rng: &mut ChaCha8Rng, s: usize, tcap: u32) -> TateElem {
        let mut terms = Vec::new();
        for _ in 0..6 {
            let e: Exps = (0..s).map(|_| rng.gen_range(0..=tcap)).collect();
            let lead = rng.gen_range(-3..4);
            let c = RamLaurent::from_terms(
                f,
                &[(lead, f.from_coord(rng.gen_range(1..f.order()))), (lead + 2, f.from_coord(rng.gen_range(0..f.order())))],
                30,
            );
            terms.push((e, c));
        }
        TateElem::from_terms(f, s, tcap, terms, 30, EXACT).unwrap()
    }

    fn t_minus_theta(f: &Arc<FieldSpec>, tcap: u32) -> TateElem {
        TateElem::var(f, 1, tcap, 0).sub(&TateElem::constant(RamLaurent::theta_pow(f, 1, EXACT), 1, tcap)).unwrap()
    }

    #[test]
    fn trivial_examples() {
        let f = make_field(3, 1, 1).unwrap();
        let a = t_minus_theta(&f, 5);
        assert!(a.add(&a.neg()).unwrap().is_zero());
        assert_eq!(a.gauss_norm(), NormExp::Exact(2)); // ‖t - θ‖ = q
        let z = TateElem::zero(&f, 1, 5);
        assert!(matches!(z.gauss_norm(), NormExp::AtMost(_)));
        let sp = a.specialize_theta(0, EXACT).unwrap();
        assert!(sp.scalar_value().is_zero());
        let phi = TateElem::var(&f, 1, 5, 0).phi_twist(0).unwrap();
        assert_eq!(phi.terms().keys().cloned().collect::<Vec<_>>(), vec![vec![3]]);
        let c = TateElem::constant(RamLaurent::lambda(&f, 20), 1, 5);
        assert_eq!(c.phi_twist(0).unwrap(), c);
        assert_eq!(c.tau_twist().coeff1(0).lead(), Some(-3));
    }

    #[test]
    fn overflow_goes_to_tail() {
        let f = make_field(2, 1, 1).unwrap();
        let t = TateElem::var(&f, 1, 2, 0);
        let t2 = t.mul(&t).unwrap();
        assert_eq!(t2.tail(), EXACT);
        let t4 = t2.mul(&t2).unwrap();
        assert!(t4.is_zero());
        assert_eq!(t4.tail(), 0);
    }

    #[test]
    fn ev_is_a_homomorphism_seeded() {
        let f = make_field(2, 1, 4).unwrap();
        let p1 = GFPoly::from_fq(&f, &[1, 1, 1], Var::Theta);
        let p2 = GFPoly::from_fq(&f, &[1, 1, 0, 0, 1], Var::Theta);
        let spec = EvalSpec::new(vec![p1, p2], &[0, 1]).unwrap();
        assert_eq!(spec.modulus().degree(), Some(6));
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..50 {
            let a = random_tate(&f, &mut rng, 2, 6);
            let b = random_tate(&f, &mut rng, 2, 6);
            let (ea, eb) = (a.ev_map(&spec).unwrap(), b.ev_map(&spec).unwrap());
            assert!(a.add(&b).unwrap().ev_map(&spec).unwrap().sub(&ea.add(&eb)).is_zero());
            // products: compare with a cap large enough to avoid overflow
            let (a2, b2) = (a.with_tcap(12), b.with_tcap(12));
            let prod = a2.mul(&b2).unwrap();
            assert!(prod.ev_map(&spec).unwrap().sub(&ea.mul(&eb)).is_zero());
        }
    }

    #[test]
    fn twists_are_ring_maps_seeded() {
        let f = make_field(3, 1, 2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..30 {
            let a = random_tate(&f, &mut rng, 1, 10);
            let b = random_tate(&f, &mut rng, 1, 10);
            let ab = a.mul(&b).unwrap();
            let lhs = ab.tau_twist();
            let rhs = a.tau_twist().mul(&b.tau_twist()).unwrap();
            assert!(lhs.sub(&rhs).unwrap().is_zero());
            let s = a.add(&b).unwrap().tau_twist();
            assert!(s.sub(&a.tau_twist().add(&b.tau_twist()).unwrap()).unwrap().is_zero());
            let a3 = a.with_tcap(60);
            let b3 = b.with_tcap(60);
            let lhs = a3.mul(&b3).unwrap().phi_twist(0).unwrap();
            let rhs = a3.phi_twist(0).unwrap().mul(&b3.phi_twist(0).unwrap()).unwrap();
            assert!(lhs.sub(&rhs).unwrap().is_zero());
            let c1 = a3.phi_twist(0).unwrap().tau_twist();
            let c2 = a3.tau_twist().phi_twist(0).unwrap();
            assert!(c1.sub(&c2).unwrap().is_zero());
            // ‖τA‖ = ‖A‖^q
            if let (NormExp::Exact(n), NormExp::Exact(m)) = (a.gauss_norm(), a.tau_twist().gauss_norm()) {
                assert_eq!(m, 3 * n);
            }
        }
    }

    #[test]
    fn gauss_norm_multiplicative() {
        let f = make_field(2, 1, 2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..40 {
            let a = random_tate(&f, &mut rng, 1, 8).with_tcap(30);
            let b = random_tate(&f, &mut rng, 1, 8).with_tcap(30);
            let (NormExp::Exact(na), NormExp::Exact(nb)) = (a.gauss_norm(), b.gauss_norm()) else {
                continue;
            };
            assert_eq!(a.mul(&b).unwrap().gauss_norm(), NormExp::Exact(na + nb));
        }
    }

    #[test]
    fn eval_spec_validation() {
        let f = make_field(2, 1, 2).unwrap();
        let p = GFPoly::from_fq(&f, &[1, 1, 1], Var::Theta);
        assert!(EvalSpec::new(vec![p.clone(), p.clone()], &[0, 0]).is_err());
        assert_eq!(EvalSpec::new(vec![p.clone()], &[2]).unwrap_err(), Error::NoRootInExtension);
        let reducible = GFPoly::from_fq(&f, &[0, 1, 1], Var::Theta);
        assert_eq!(EvalSpec::new(vec![reducible], &[0]).unwrap_err(), Error::NotIrreducible);
        assert_eq!(EvalSpec::with_roots(vec![p], vec![GfElem::ONE]).unwrap_err(), Error::RootMismatch);
    }
}
