//! Analytic special functions attached to the Carlitz module: `d_i`, `ℓ_i`,
//! `π̃`, `exp_C`, `e_C`, `u`, `ω`, the Anderson generating function `f_t`,
//! `χ_t`, the deformed logarithm `𝑳_α`, `ψ_s` and the multi-variable
//! L-values `L(χ_{t_1}⋯χ_{t_s}, n)`.
//!
//! All precisions are absolute `u`-adic exponents. Truncations of infinite
//! sums and products are folded into the reported precision.

use std::sync::Arc;

use rand::Rng;

use crate::error::{Error, Result};
use crate::field::{FieldSpec, GfElem};
use crate::laurent::{embed_theta_poly_exact, padd, RamLaurent, EXACT};
use crate::poly::{enumerate_a, GFPoly, Var, MAX_ENUMERATION};
use crate::tate::{Exps, TateElem};

/// Degree guard for exact `d_i`, `ℓ_i`.
const MAX_CONSTANT_DEGREE: u64 = 1 << 20;
/// Largest `q^i` used as a Frobenius exponent inside a series.
const MAX_FROBENIUS: i64 = 1 << 20;

/// Target precision and working padding.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct SeriesBudget {
    pub prec: i64,
    pub pad: i64,
}

impl SeriesBudget {
    pub fn new(prec: i64, pad: i64) -> Self {
        SeriesBudget { prec, pad }
    }

    pub fn working(&self) -> i64 {
        self.prec + self.pad
    }
}

fn q_of(field: &FieldSpec) -> i64 {
    field.q() as i64
}

fn q_pow(q: i64, k: u32) -> Result<i64> {
    q.checked_pow(k)
        .filter(|&v| v <= MAX_FROBENIUS)
        .ok_or_else(|| Error::SizeLimitExceeded(format!("q^{k} exceeds {MAX_FROBENIUS}")))
}

/// `(d_i, ℓ_i)` exactly in `F_q[θ]`.
pub fn carlitz_constants(field: &Arc<FieldSpec>, i: u32) -> Result<(GFPoly, GFPoly)> {
    let q = field.q() as u64;
    q.checked_pow(i)
        .and_then(|v| v.checked_mul(i.max(1) as u64))
        .filter(|&v| v <= MAX_CONSTANT_DEGREE)
        .ok_or_else(|| Error::SizeLimitExceeded(format!("deg d_{i} too large")))?;
    let theta = GFPoly::x(field, Var::Theta);
    let mut d = GFPoly::one(field, Var::Theta);
    let mut l = GFPoly::one(field, Var::Theta);
    for k in 1..=i {
        let tq = theta.pow(q.pow(k));
        // d_k = (θ^{q^k} - θ) d_{k-1}^q
        d = tq.sub(&theta).mul(&d.frobenius(1));
        l = theta.sub(&tq).mul(&l);
    }
    Ok((d, l))
}

/// `Σ_{m≥0} (θ^{-n})^m` to absolute precision `prec`, `n ≥ 1`.
fn geometric_theta(field: &Arc<FieldSpec>, n: i64, prec: i64) -> RamLaurent {
    let q1 = q_of(field) - 1;
    let step = n * q1;
    let mut terms = Vec::new();
    let mut m = 0;
    while m * step < prec {
        let sign = if (m * n) % 2 == 1 { field.neg_one() } else { GfElem::ONE };
        terms.push((m * step, sign));
        m += 1;
    }
    RamLaurent::from_terms(field, &terms, prec)
}

/// `1/d_i` to absolute precision `prec`.
pub fn inv_d(field: &Arc<FieldSpec>, i: u32, prec: i64) -> Result<RamLaurent> {
    if i == 0 {
        return Ok(RamLaurent::one(field, prec));
    }
    let q = q_of(field);
    let qi = q_pow(q, i)?;
    let q1 = q - 1;
    // 1/(θ^{q^i} - θ) = θ^{-q^i} Σ θ^{m(1-q^i)}
    let v_g = qi * q1;
    let v_prev = q1 * (i as i64 - 1) * (qi / q);
    let g = geometric_theta(field, qi - 1, (prec - v_g - q * v_prev).max(1)).mul_theta_pow(-qi);
    let p_prev = ((prec - v_g).div_euclid(q) + 1).max(v_prev + 1);
    let prev = inv_d(field, i - 1, p_prev)?.frobenius_to(1, EXACT);
    Ok(prev.mul(&g).truncated(prec))
}

/// `1/ℓ_i` to absolute precision `prec`.
pub fn inv_ell(field: &Arc<FieldSpec>, i: u32, prec: i64) -> Result<RamLaurent> {
    if i == 0 {
        return Ok(RamLaurent::one(field, prec));
    }
    let q = q_of(field);
    let qi = q_pow(q, i)?;
    let q1 = q - 1;
    // 1/(θ - θ^{q^i}) = -θ^{-q^i} Σ θ^{m(1-q^i)}
    let v_g = qi * q1;
    let v_prev = qi - q; // v(1/ℓ_{i-1}) = q^i - q
    let g = geometric_theta(field, qi - 1, (prec - v_prev).max(1)).mul_theta_pow(-qi).neg();
    let prev = inv_ell(field, i - 1, (prec - v_g).max(v_prev + 1))?;
    Ok(prev.mul(&g).truncated(prec))
}

/// `π̃ = -λ_θ^q ∏_{i≥1} (1 - θ^{1-q^i})^{-1}`.
pub fn pi_tilde(field: &Arc<FieldSpec>, prec: i64) -> RamLaurent {
    let q = q_of(field);
    let rel = prec + q;
    let mut prod = RamLaurent::one(field, EXACT);
    let mut qi = q;
    while (qi - 1) * (q - 1) < rel {
        let x = RamLaurent::theta_pow(field, 1 - qi, EXACT);
        prod = prod.sub(&prod.mul(&x)).truncated(rel);
        qi *= q;
    }
    let inv = prod.inv_to(rel).expect("unit");
    inv.shift(-q).neg().truncated(prec)
}

/// Terms `z^{q^i}/d_i` of `exp_C(z)` that can reach precision `prec`.
fn exp_terms(z: &RamLaurent, prec: i64) -> Result<Vec<RamLaurent>> {
    let field = z.field();
    let q = q_of(field);
    let q1 = q - 1;
    let Some(l) = z.lead() else {
        return Ok(Vec::new());
    };
    let mut out = Vec::new();
    let mut i: u32 = 0;
    loop {
        let qi = q_pow(q, i)?;
        let v_term = qi * (l + q1 * i as i64);
        if v_term >= prec && l + q1 * i as i64 >= 0 {
            break;
        }
        let zq = z.frobenius_to(i, padd(prec, -(q1 * i as i64 * qi)));
        let dinv = inv_d(field, i, prec - qi * l)?;
        out.push(zq.mul(&dinv).truncated(prec));
        i += 1;
    }
    Ok(out)
}

/// `exp_C(z) = Σ z^{q^i}/d_i` to precision at most `prec`.
pub fn carlitz_exp(z: &RamLaurent, prec: i64) -> Result<RamLaurent> {
    let mut acc = RamLaurent::zero(z.field(), prec.min(z.prec()));
    for t in exp_terms(z, prec)? {
        acc = acc.add(&t);
    }
    Ok(acc)
}

/// `e_C(z) = exp_C(π̃ z)`.
pub fn e_c(z: &RamLaurent, prec: i64) -> Result<RamLaurent> {
    let field = z.field();
    let pz = pi_tilde(field, prec - z.val().min(0)).mul(z);
    carlitz_exp(&pz, prec)
}

/// `log_C(α) = Σ α^{q^j}/ℓ_j` for `|α| < q^{q/(q-1)}`.
pub fn log_c(alpha: &RamLaurent, prec: i64) -> Result<RamLaurent> {
    let field = alpha.field();
    let q = q_of(field);
    let Some(v) = alpha.lead() else {
        return Ok(RamLaurent::zero(field, prec.min(alpha.prec())));
    };
    if v + q <= 0 {
        return Err(Error::AlphaTooLarge);
    }
    let mut acc = RamLaurent::zero(field, prec.min(alpha.prec()));
    let mut j = 0;
    loop {
        let qj = q_pow(q, j)?;
        let base = qj * (v + q) - q;
        if base >= prec {
            break;
        }
        let aq = alpha.frobenius_to(j, prec - (qj * q - q));
        acc = acc.add(&aq.mul(&inv_ell(field, j, prec - qj * v)?));
        j += 1;
    }
    Ok(acc.truncated(prec))
}

/// `u(z) = 1/e_C(z)`.
pub fn u_val(z: &RamLaurent, prec: i64) -> Result<RamLaurent> {
    let e = e_c(z, prec)?;
    let Some(l) = e.lead() else {
        return Err(Error::ZAtLattice);
    };
    // inverting loses 2*lead
    let e = if l > 0 { e_c(z, prec + 2 * l)? } else { e };
    e.inv_to(prec).map_err(|_| Error::ZAtLattice)
}

/// `u_𝔪(z) = 1/(𝔪 e_C(z/𝔪)) = u(z/𝔪)/𝔪`.
pub fn u_m_val(z: &RamLaurent, m: &GFPoly, prec: i64) -> Result<RamLaurent> {
    let me = embed_theta_poly_exact(m);
    let dm = m.degree().ok_or(Error::DivisionByZeroPoly)? as i64 * (q_of(z.field()) - 1);
    let zm = z.mul(&me.inv_to(padd(prec, 2 * dm + z.val().abs()))?);
    let u = u_val(&zm, prec + dm)?;
    Ok(u.mul(&me.inv_to(prec + dm + u.val().abs())?).truncated(prec))
}

/// Coefficients `h_k(x_0, x_1, …)` of `∏ (1 - x_i t)^{-1}`, `k ≤ tcap`,
/// each truncated at `prec`.
fn geometric_product(factors: &[RamLaurent], tcap: u32, prec: i64, field: &Arc<FieldSpec>) -> Vec<RamLaurent> {
    let mut c = vec![RamLaurent::zero(field, EXACT); tcap as usize + 1];
    c[0] = RamLaurent::one(field, EXACT);
    for x in factors {
        for k in 1..c.len() {
            let add = c[k - 1].mul(x).truncated(prec);
            c[k] = c[k].add(&add).truncated(prec);
        }
    }
    c
}

/// `ω = λ_θ ∏_{i≥0} (1 - t/θ^{q^i})^{-1}`.
pub fn omega(field: &Arc<FieldSpec>, tcap: u32, prec: i64) -> TateElem {
    let q = q_of(field);
    let rel = prec + 1;
    let mut xs = Vec::new();
    let mut qi = 1;
    while qi * (q - 1) < rel {
        xs.push(RamLaurent::theta_pow(field, -qi, EXACT));
        qi *= q;
    }
    let c = geometric_product(&xs, tcap, rel, field);
    let lam = RamLaurent::lambda(field, EXACT);
    let terms = c.into_iter().enumerate().map(|(k, x)| (vec![k as u32], x.with_prec_at_most(rel).mul(&lam)));
    let tail = -1 + (tcap as i64 + 1) * (q - 1);
    TateElem::from_terms(field, 1, tcap, terms, prec, tail).unwrap()
}

/// `ω^{-1} = λ_θ^{-1} ∏_{i≥0} (1 - t/θ^{q^i})`.
pub fn omega_inv(field: &Arc<FieldSpec>, tcap: u32, prec: i64) -> TateElem {
    let q = q_of(field);
    let rel = prec - 1;
    let mut c = vec![RamLaurent::zero(field, EXACT); tcap as usize + 1];
    c[0] = RamLaurent::one(field, EXACT);
    let mut qi = 1;
    while qi * (q - 1) < rel {
        let x = RamLaurent::theta_pow(field, -qi, EXACT);
        for k in (1..c.len()).rev() {
            let sub = c[k - 1].mul(&x).truncated(rel);
            c[k] = c[k].sub(&sub).truncated(rel);
        }
        qi *= q;
    }
    let u = RamLaurent::monomial(field, GfElem::ONE, 1, EXACT);
    let terms = c.into_iter().enumerate().map(|(k, x)| (vec![k as u32], x.with_prec_at_most(rel).mul(&u)));
    // e_k(x_0, x_1, …) has valuation at least (q-1)(1 + q + … + q^{k-1})
    let k = tcap as u32 + 1;
    let tail = q_pow(q, k).map(|qk| 1 + qk - 1).unwrap_or(EXACT);
    TateElem::from_terms(field, 1, tcap, terms, prec, tail).unwrap()
}

/// `f_t(z) = Σ_n (π̃z)^{q^n} / ((θ^{q^n} - t) d_n)`.
pub fn agf_f(z: &RamLaurent, tcap: u32, prec: i64) -> Result<TateElem> {
    let field = z.field();
    let q = q_of(field);
    let q1 = q - 1;
    let pz = pi_tilde(field, prec - z.val().min(0) + q).mul(z);
    let Some(l) = pz.lead() else {
        return Ok(TateElem::zero(field, 1, tcap).with_bounds(prec.min(pz.prec()), EXACT));
    };
    let mut coeffs = vec![RamLaurent::zero(field, prec.min(pz.prec())); tcap as usize + 1];
    let mut min_t0 = prec;
    let mut n: u32 = 0;
    loop {
        let qn = q_pow(q, n)?;
        // t^0 coefficient of term n: (π̃z)^{q^n}/d_n · θ^{-q^n}
        let v0 = qn * (l + q1 * (n as i64 + 1));
        if v0 >= prec && l + q1 * (n as i64 + 1) >= 0 {
            break;
        }
        let zq = pz.frobenius_to(n, padd(prec, -(q1 * n as i64 * qn)));
        let en = zq.mul(&inv_d(field, n, prec - qn * l)?);
        min_t0 = min_t0.min(en.val() + qn * q1);
        for (k, c) in coeffs.iter_mut().enumerate() {
            let shift = (k as i64 + 1) * qn;
            let term = en.mul_theta_pow(-shift);
            if term.val() >= prec {
                break;
            }
            *c = c.add(&term.truncated(prec));
        }
        n += 1;
    }
    let tail = padd(min_t0, (tcap as i64 + 1) * q1);
    let terms = coeffs.into_iter().enumerate().map(|(k, c)| (vec![k as u32], c));
    TateElem::from_terms(field, 1, tcap, terms, prec, tail)
}

/// `χ_t(z) = ω^{-1} f_t(z)`.
pub fn chi_t(z: &RamLaurent, tcap: u32, prec: i64) -> Result<TateElem> {
    // ω^{-1} has valuation 1 and f_t(z) at least v(π̃z), so pad both
    let extra = (q_of(z.field()) - z.val()).max(0) + 1;
    let f = agf_f(z, tcap, prec + extra)?;
    let w = omega_inv(z.field(), tcap, prec + extra + f.gauss_val().abs());
    Ok(w.mul(&f)?.with_bounds(prec, EXACT))
}

/// Papanikolas' deformation `𝑳_α = α + Σ_{j≥1} α^{q^j}/∏_{k=1}^{j} (t - θ^{q^k})`.
pub fn papanikolas_l(alpha: &RamLaurent, tcap: u32, prec: i64) -> Result<TateElem> {
    let field = alpha.field();
    let q = q_of(field);
    let q1 = q - 1;
    let Some(v) = alpha.lead() else {
        return Ok(TateElem::zero(field, 1, tcap).with_bounds(prec.min(alpha.prec()), EXACT));
    };
    if v + q <= 0 {
        return Err(Error::AlphaTooLarge);
    }
    let mut coeffs = vec![RamLaurent::zero(field, prec); tcap as usize + 1];
    coeffs[0] = alpha.truncated(prec);
    // running ∏_{k≤j} (1 - t θ^{-q^k})^{-1}
    let mut g = vec![RamLaurent::zero(field, EXACT); tcap as usize + 1];
    g[0] = RamLaurent::one(field, EXACT);
    let mut min_base = v;
    let mut theta_exp: i64 = 0; // q + … + q^j
    let mut j: u32 = 1;
    loop {
        let qj = q_pow(q, j)?;
        let base = qj * (v + q) - q;
        if base >= prec {
            break;
        }
        min_base = min_base.min(base);
        theta_exp += qj;
        let rel = prec - base;
        let y = RamLaurent::theta_pow(field, -qj, EXACT);
        for k in 1..g.len() {
            let add = g[k - 1].mul(&y).truncated(rel);
            g[k] = g[k].add(&add).truncated(rel);
        }
        let sign = if j % 2 == 1 { field.neg_one() } else { GfElem::ONE };
        let scalar = alpha
            .frobenius_to(j, prec - q1 * theta_exp)
            .mul_theta_pow(-theta_exp)
            .scale(sign);
        for (c, gk) in coeffs.iter_mut().zip(&g) {
            if gk.is_zero() && gk.prec() >= rel {
                continue;
            }
            *c = c.add(&scalar.mul(gk).truncated(prec));
        }
        j += 1;
    }
    let tail = padd(min_base.min(v), (tcap as i64 + 1) * q * q1);
    let terms = coeffs.into_iter().enumerate().map(|(k, c)| (vec![k as u32], c));
    TateElem::from_terms(field, 1, tcap, terms, prec, tail)
}

/// Valuation bound (in `u`-units) for the degree-`k` block of `ψ_s(z)`,
/// valid once `q^k > |z|`.
pub fn psi_block_bound(q: i64, s: u32, k: i64) -> i64 {
    let s = s as i64;
    (q - 1) * (k + ((q - 1) * k * (k + 1) / 2 - s * k).max(0))
}

/// Valuation bound for the degree-`k` block of `L(χ_{t_1}⋯χ_{t_s}, n)`.
pub fn l_block_bound(q: i64, s: u32, n: i64, k: i64) -> i64 {
    let s = s as i64;
    (q - 1) * (k * n + ((q - 1) * k * (k + 1) / 2 - s * k).max(0))
}

/// How a lattice sum was truncated.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct SumInfo {
    /// Degrees `< degree_bound` were summed.
    pub degree_bound: u32,
    /// Valuation bound of everything omitted.
    pub omitted_val: i64,
}

fn pick_degree(degcap: u32, min_deg: u32, prec: i64, q: i64, bound: impl Fn(i64) -> i64) -> Result<SumInfo> {
    let mut best = None;
    for d in min_deg.max(1)..=degcap {
        if (q as u64).checked_pow(d).is_none_or(|c| c > MAX_ENUMERATION) {
            break;
        }
        best = Some(d);
        if bound(d as i64) >= prec {
            break;
        }
    }
    let d = best.ok_or_else(|| {
        Error::SizeLimitExceeded(format!("no degree bound ≤ {degcap} satisfies the enumeration guard"))
    })?;
    Ok(SumInfo {
        degree_bound: d,
        omitted_val: bound(d as i64),
    })
}

/// Adds `weight · Π_i a(t_i)` times `value` into `acc`.
fn accumulate_chi(
    acc: &mut std::collections::BTreeMap<Exps, RamLaurent>,
    a: &GFPoly,
    s: usize,
    tcap: u32,
    value: &RamLaurent,
) {
    let field = a.field();
    let support: Vec<(u32, GfElem)> = a
        .coeffs()
        .iter()
        .enumerate()
        .filter(|(k, c)| !c.is_zero() && *k as u32 <= tcap)
        .map(|(k, &c)| (k as u32, c))
        .collect();
    let mut idx = vec![0usize; s];
    if s == 0 {
        let e = acc.entry(Vec::new()).or_insert_with(|| RamLaurent::zero(field, EXACT));
        *e = e.add(value);
        return;
    }
    if support.is_empty() {
        return;
    }
    loop {
        let mut w = GfElem::ONE;
        let mut e = Vec::with_capacity(s);
        for &i in &idx {
            w = field.mul(w, support[i].1);
            e.push(support[i].0);
        }
        let entry = acc.entry(e).or_insert_with(|| RamLaurent::zero(field, EXACT));
        *entry = entry.add(&value.scale(w));
        let mut pos = 0;
        loop {
            if pos == s {
                return;
            }
            idx[pos] += 1;
            if idx[pos] < support.len() {
                break;
            }
            idx[pos] = 0;
            pos += 1;
        }
    }
}

/// `ψ_s(z) = Σ_{a∈A} χ_{t_1}(a)⋯χ_{t_s}(a)/(z - a)`, summed over
/// `deg a < D` with `D ≤ degcap` picked from the block bound.
pub fn psi(s: u32, z: &RamLaurent, degcap: u32, tcap: u32, prec: i64) -> Result<(TateElem, SumInfo)> {
    let field = z.field();
    let q = q_of(field);
    // blocks of degree k are bounded only once q^k > |z|
    let min_deg = if z.val() < 0 { (-z.val()).div_euclid(q - 1) + 1 } else { 1 } as u32;
    let info = pick_degree(degcap, min_deg, prec, q, |k| psi_block_bound(q, s, k))?;
    let floor = prec.min(info.omitted_val);
    let mut acc = std::collections::BTreeMap::new();
    // t-degrees above the cap only come from a with deg a > tcap
    let mut tail = EXACT;
    for a in enumerate_a(field, info.degree_bound, false)? {
        if s > 0 && a.is_zero() {
            continue;
        }
        let diff = z.sub(&embed_theta_poly_exact(&a));
        if diff.is_zero() {
            return Err(Error::PoleAtLatticePoint);
        }
        let r = diff.inv_to(floor)?;
        if s > 0 && a.degree().unwrap_or(0) > tcap as usize {
            tail = tail.min(r.val());
        }
        accumulate_chi(&mut acc, &a, s as usize, tcap, &r);
    }
    let t = TateElem::from_terms(field, s as usize, tcap, acc, floor, tail)?;
    Ok((t, info))
}

/// `L(χ_{t_1}⋯χ_{t_s}, n) = Σ_{a monic} χ_{t_1}(a)⋯χ_{t_s}(a) a^{-n}`.
pub fn l_multi(
    field: &Arc<FieldSpec>,
    s: u32,
    n: i64,
    degcap: u32,
    tcap: u32,
    prec: i64,
) -> Result<(TateElem, SumInfo)> {
    if n < 1 {
        return Err(Error::ShapeMismatch(format!("L-value exponent {n} must be positive")));
    }
    let q = q_of(field);
    let info = pick_degree(degcap, 1, prec, q, |k| l_block_bound(q, s, n, k))?;
    let floor = prec.min(info.omitted_val);
    let mut acc = std::collections::BTreeMap::new();
    let mut tail = EXACT;
    for k in 0..info.degree_bound {
        for a in enumerate_a(field, k, true)? {
            let r = embed_theta_poly_exact(&a).inv_to(floor)?.pow(n)?.truncated(floor);
            if s > 0 && k > tcap {
                tail = tail.min(r.val());
            }
            accumulate_chi(&mut acc, &a, s as usize, tcap, &r);
        }
    }
    let t = TateElem::from_terms(field, s as usize, tcap, acc, floor, tail)?;
    Ok((t, info))
}

/// Sampling regimes for `z`.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum ZRegime {
    /// `|z| < 1`.
    Small,
    /// `|z| < q`.
    BelowQ,
    /// `|z|_ℑ = |z| = q^{scale/(q-1)}`: the leading term lies outside `K_∞`.
    Imaginary { scale: i64 },
}

/// Random exact `z` in the requested regime. Every sample carries a term at
/// a positive exponent, so it never lies in `A`.
pub fn sample_z<R: Rng>(field: &Arc<FieldSpec>, regime: ZRegime, rng: &mut R) -> Result<RamLaurent> {
    let q = q_of(field);
    let q1 = q - 1;
    let order = field.order();
    let nonzero = |rng: &mut R| field.from_coord(rng.gen_range(1..order));
    let mut terms = Vec::new();
    let lead = match regime {
        ZRegime::Small => {
            let l = rng.gen_range(1..=3);
            terms.push((l, nonzero(rng)));
            l
        }
        ZRegime::BelowQ => {
            let l = rng.gen_range(-(q1 - 1)..=2);
            terms.push((l, nonzero(rng)));
            l
        }
        ZRegime::Imaginary { scale } => {
            let l = -scale;
            if l.rem_euclid(q1) != 0 {
                terms.push((l, nonzero(rng)));
            } else {
                if field.order() == field.q() {
                    return Err(Error::ShapeMismatch(
                        "an imaginary sample at this exponent needs an extension of F_q".into(),
                    ));
                }
                let c = field.from_coord(rng.gen_range(q as u32..order));
                terms.push((l, c));
            }
            l
        }
    };
    for _ in 0..5 {
        let v = rng.gen_range(lead + 1..=lead + 12);
        terms.push((v, field.from_coord(rng.gen_range(0..order))));
    }
    let v = rng.gen_range(lead.max(0) + 1..=lead.max(0) + 4);
    terms.push((v, nonzero(rng)));
    let z = RamLaurent::from_terms(field, &terms, EXACT);
    if z.lead() != Some(lead) || z.terms().all(|(v, _)| v <= 0) {
        // cancellation hit the guard terms; resample deterministically
        return sample_z(field, regime, rng);
    }
    Ok(z)
}
