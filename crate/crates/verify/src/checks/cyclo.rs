//! Evaluations at roots of unity and the exact torsion-field identities.

use std::sync::Arc;

use carlitz::carlitz::{carlitz_constants, chi_t, e_c, omega, pi_tilde, psi, ZRegime};
use carlitz::cyclotomic::{
    basis_e, carlitz_poly, embed, embed_with, galois_sigma, gauss_sum, gauss_sum_inv, interpolation_m,
    interpolation_m_numeric, m_from_gauss, make_torsion_field, telescope_pair, CycElem, CycField, CycFieldExt,
    LinPoly,
};
use carlitz::laurent::embed_theta_poly_exact;
use carlitz::poly::{enumerate_a, roots_in_ext};
use carlitz::{GFPoly, GfElem, RamLaurent, RatFunc, Scalar, Var};

use crate::context::{laurent_outcome, regime_label, render_poly, Ctx};
use crate::error::VerifyResult;
use crate::report::{Outcome, Sample};

use super::Run;

/// Smallest `t`-cap whose `ω`-tail stays below `prec` after multiplying by
/// something of valuation `extra`.
fn tcap_for(ctx: &Ctx, prec: i64, extra: i64) -> u32 {
    let need = (prec - extra.min(0)) / (ctx.q() - 1) + 2;
    ctx.tcap.max(need.max(1) as u32)
}

fn sign(f: &Arc<carlitz::FieldSpec>, d: usize) -> GfElem {
    if d % 2 == 1 {
        f.neg_one()
    } else {
        GfElem::ONE
    }
}

/// `Σ c_i x^i` with `c_i` already in the completion.
fn horner(coeffs: &[RamLaurent], x: &RamLaurent, prec: i64) -> RamLaurent {
    let mut acc = RamLaurent::zero(x.field(), carlitz::laurent::EXACT);
    for c in coeffs.iter().rev() {
        acc = acc.mul(x).add(c).truncated(prec);
    }
    acc
}

/// One torsion field per root of the prime.
struct Torsion {
    index: usize,
    zeta: GfElem,
    cf: Arc<CycField>,
}

fn torsion_fields(ctx: &Ctx, p: &GFPoly) -> VerifyResult<Vec<Torsion>> {
    let roots = roots_in_ext(p).map_err(|e| ctx.core(e))?;
    roots
        .into_iter()
        .enumerate()
        .map(|(index, zeta)| {
            let cf = make_torsion_field(p, zeta).map_err(|e| ctx.core(e))?;
            Ok(Torsion { index, zeta, cf })
        })
        .collect()
}

fn root_label(p: &GFPoly, t: &Torsion) -> String {
    format!("{} root {}", render_poly(p), t.index)
}

/// `(-1)^{d+1} g(χ^{-1}) χ(ℓ_{d-1})^{-1}`, with `g(χ^{-1})`.
fn top_coeff(t: &Torsion) -> carlitz::Result<(CycElem, CycElem)> {
    let f = t.cf.field();
    let d = t.cf.d();
    let g = gauss_sum(&t.cf)?;
    let gi = gauss_sum_inv(&t.cf, &g)?;
    let (_, l) = carlitz_constants(f, d as u32 - 1)?;
    let li = f.inv(l.eval(t.zeta)).ok_or(carlitz::Error::ZetaRootOfDenominator)?;
    let top = gi.mul(&t.cf.from_gf(f.mul(f.neg(sign(f, d)), li)));
    Ok((top, gi))
}

pub fn thm3_omega_gauss(ctx: &Ctx) -> VerifyResult<Run> {
    let p = &ctx.primes[0];
    let ts = torsion_fields(ctx, p)?;
    let f = &ctx.field;
    let d = p.degree().unwrap();
    let samples = ctx.sweep(&ts, |t, w| {
        let g = gauss_sum(&t.cf)?;
        let (_, l) = carlitz_constants(f, d as u32 - 1)?;
        let exact = g.mul(&t.cf.from_gf(f.neg(l.eval(t.zeta))));
        let tc = tcap_for(ctx, w, -1);
        let spec = carlitz::EvalSpec::with_roots(vec![p.clone()], vec![t.zeta])?;
        let num = omega(f, tc, w).ev_map(&spec)?;
        let x = embed(&exact, w)?.sub(&num);
        Ok(Sample::new(root_label(p, t), laurent_outcome(&x, ctx.prec)).with("tcap", tc))
    })?;
    Ok((samples, None))
}

pub fn lem53_m_oracle(ctx: &Ctx) -> VerifyResult<Run> {
    let p = &ctx.primes[0];
    let ts = torsion_fields(ctx, p)?;
    let samples = ctx.exact(&ts, |t| {
        let g = gauss_sum(&t.cf)?;
        let gi = gauss_sum_inv(&t.cf, &g)?;
        let lagrange = interpolation_m(&t.cf, true)?;
        let closed = m_from_gauss(&t.cf, &gi)?;
        Ok(Sample::new(root_label(p, t), Outcome::Exact { equal: lagrange == closed })
            .with("degree", lagrange.degree().map_or(-1, |x| x as i64)))
    })?;
    Ok((samples, None))
}

pub fn cor56_coeffs(ctx: &Ctx) -> VerifyResult<Run> {
    let p = &ctx.primes[0];
    let ts = torsion_fields(ctx, p)?;
    let f = &ctx.field;
    let d = p.degree().unwrap();
    let q = ctx.q() as usize;
    let samples = ctx.exact(&ts, |t| {
        let (top, gi) = top_coeff(t)?;
        let m = interpolation_m(&t.cf, true)?;
        let (_, l) = carlitz_constants(f, d as u32 - 1)?;
        let li = f.inv(l.eval(t.zeta)).ok_or(carlitz::Error::ZetaRootOfDenominator)?;
        let s = f.mul(f.neg(sign(f, d)), li);
        let den = GFPoly::new(f, vec![f.neg(t.zeta), GfElem::ONE], Var::Theta);
        let lin = t.cf.from_ratfunc(RatFunc::new(p.scale(s), den)?).mul(&gi);
        let top_ok = m.coeff(q.pow(d as u32 - 1)) == top;
        let lin_ok = m.coeff(1) == lin;
        Ok(Sample::new(root_label(p, t), Outcome::Exact { equal: top_ok && lin_ok })
            .with("top", top_ok)
            .with("linear", lin_ok))
    })?;
    Ok((samples, None))
}

pub fn lem55_telescope(ctx: &Ctx) -> VerifyResult<Run> {
    let top = ctx.degree.unwrap_or(6);
    let ds: Vec<u32> = (1..=top).collect();
    let samples = ctx.exact(&ds, |&d| {
        let (lhs, rhs) = telescope_pair(&ctx.field, d)?;
        Ok(Sample::new(format!("d={d}"), Outcome::Exact { equal: lhs == rhs }))
    })?;
    Ok((samples, None))
}

pub fn ca_ej_oracle(ctx: &Ctx) -> VerifyResult<Run> {
    let f = &ctx.field;
    let top = ctx.degree.unwrap_or(3);
    let all = enumerate_a(f, top, false).map_err(|e| ctx.core(e))?;
    let degrees: Vec<u32> = (0..top).collect();
    let samples = ctx.exact(&degrees, |&k| {
        let basis: Vec<LinPoly> = (0..=k).map(|j| basis_e(f, j)).collect::<carlitz::Result<_>>()?;
        let mut count = 0usize;
        let mut ok = true;
        for a in all.iter().filter(|a| a.degree().unwrap_or(0) as u32 == k) {
            let x = RatFunc::from_poly(a.clone());
            let lin = LinPoly::new(f, basis.iter().map(|e| e.eval_ratfunc(&x)).collect());
            ok &= lin == carlitz_poly(a)?;
            count += 1;
        }
        Ok(Sample::new(format!("deg a = {k}"), Outcome::Exact { equal: ok }).with("count", count))
    })?;
    Ok((samples, None))
}

pub fn gauss_product(ctx: &Ctx) -> VerifyResult<Run> {
    let p = &ctx.primes[0];
    let ts = torsion_fields(ctx, p)?;
    let f = &ctx.field;
    let d = p.degree().unwrap();
    let units: Vec<GFPoly> = enumerate_a(f, d as u32, false)
        .map_err(|e| ctx.core(e))?
        .into_iter()
        .filter(|a| !a.is_zero())
        .collect();
    let samples = ctx.exact(&ts, |t| {
        let g = gauss_sum(&t.cf)?;
        let gi = gauss_sum_inv(&t.cf, &g)?;
        let prod_ok = g.mul(&gi) == t.cf.from_theta_poly(&p.scale(sign(f, d)));
        let mut galois_ok = !g.is_zero();
        for a in &units {
            galois_ok &= galois_sigma(a, &g)? == g.mul(&t.cf.from_gf(a.eval(t.zeta)));
        }
        Ok(Sample::new(root_label(p, t), Outcome::Exact { equal: prod_ok && galois_ok })
            .with("product", prod_ok)
            .with("galois", galois_ok))
    })?;
    Ok((samples, None))
}

pub fn prop51_ev(ctx: &Ctx) -> VerifyResult<Run> {
    let pts = ctx.draw(|_| ZRegime::BelowQ)?;
    let spec = ctx.eval_spec()?;
    let m = spec.modulus();
    let s = ctx.primes.len() as u32;
    let f = &ctx.field;
    let dm = m.degree().unwrap() as i64 * (ctx.q() - 1);
    let samples = ctx.sweep(&pts, |(r, z), w| {
        let wp = w + ctx.q() + 4;
        let (ps, info) = psi(s, z, ctx.degcap, ctx.degcap, wp)?;
        let lhs = ps.ev_map(&spec)?.mul(&pi_tilde(f, wp + 8).inv_to(w)?);
        let me = embed_theta_poly_exact(&m);
        let zm = z.mul(&me.inv_to(w + 2 * dm + z.val().abs())?);
        let e = e_c(&zm, w + 2 * dm)?;
        let mm = interpolation_m_numeric(&m, spec.roots(), w + 2 * dm)?;
        let num = horner(mm.coeffs(), &e, w + 2 * dm);
        let den = me.mul(&e_c(z, w + 2 * dm)?);
        let rhs = num.mul(&den.inv_to(w + dm - den.val().min(0))?);
        let x = lhs.sub(&rhs.truncated(w));
        Ok(Sample::new(regime_label(*r), laurent_outcome(&x, ctx.prec))
            .with("z_val", z.val())
            .with("degree_bound", info.degree_bound))
    })?;
    Ok((samples, None))
}

pub fn cor52_chieval(ctx: &Ctx) -> VerifyResult<Run> {
    let scale = ctx.imag_scale;
    let pts = ctx.draw(|i| if i % 2 == 0 { ZRegime::BelowQ } else { ZRegime::Imaginary { scale } })?;
    let spec = ctx.eval_spec()?;
    let p = &ctx.primes[0];
    let zeta = spec.roots()[0];
    let cf = make_torsion_field(p, zeta).map_err(|e| ctx.core(e))?;
    let m_exact = interpolation_m(&cf, true).map_err(|e| ctx.core(e))?;
    let dp = p.degree().unwrap() as i64 * (ctx.q() - 1);
    let samples = ctx.sweep(&pts, |(r, z), w| {
        let pe = embed_theta_poly_exact(p);
        let pinv = pe.inv_to(w + 4 * dp)?;
        let lam = e_c(&pinv, w + 4 * dp)?;
        let zp = z.mul(&pe.inv_to(w + 2 * dp + z.val().abs())?);
        let e = e_c(&zp, w + 2 * dp)?;
        let coeffs: Vec<RamLaurent> =
            m_exact.coeffs().iter().map(|c| embed_with(c, &lam, w + 2 * dp)).collect::<carlitz::Result<_>>()?;
        let rhs = horner(&coeffs, &e, w + 2 * dp).mul(&pe.inv_to(w + 2 * dp)?);
        let tc = tcap_for(ctx, w, z.val() - ctx.q());
        let lhs = chi_t(z, tc, w)?.ev_map(&spec)?;
        let x = lhs.sub(&rhs.truncated(w));
        Ok(Sample::new(regime_label(*r), laurent_outcome(&x, ctx.prec))
            .with("z_val", z.val())
            .with("tcap", tc))
    })?;
    Ok((samples, None))
}

/// `v(u')` with `u' = 1/e_C(z/𝔭)`.
fn u1_val(ctx: &Ctx, z: &RamLaurent) -> carlitz::Result<i64> {
    let p = &ctx.primes[0];
    let dp = p.degree().unwrap() as i64 * (ctx.q() - 1);
    let pe = embed_theta_poly_exact(p);
    let zp = z.mul(&pe.inv_to(8 + 2 * dp + z.val().abs())?);
    let v = e_c(&zp, 8)?
        .lead()
        .ok_or_else(|| carlitz::Error::PrecisionExhausted("e_C(z/p) vanishes to precision".into()))?;
    Ok(-v)
}

/// `𝔭 ev_ζ(ψ_1) / π̃` and `u'`, both to `need`.
fn lead_data(ctx: &Ctx, spec: &carlitz::EvalSpec, z: &RamLaurent, vu: i64, need: i64) -> carlitz::Result<(RamLaurent, RamLaurent)> {
    let p = &ctx.primes[0];
    let f = &ctx.field;
    let dp = p.degree().unwrap() as i64 * (ctx.q() - 1);
    let pe = embed_theta_poly_exact(p);
    let wide = need + 2 * vu.abs() + 2 * dp;
    let zp = z.mul(&pe.inv_to(wide + z.val().abs())?);
    let u1 = e_c(&zp, wide)?.inv_to(need + dp)?;
    let wp = need + dp + ctx.q() + 4;
    let (ps, _) = psi(1, z, ctx.degcap, ctx.degcap, wp)?;
    let x = ps.ev_map(spec)?.mul(&pe).mul(&pi_tilde(f, wp + 8).inv_to(wp)?);
    Ok((x.truncated(need), u1))
}

/// `N = |𝔭|(q-1)/q` and the leading coefficient `a_0`.
fn lead_setup(ctx: &Ctx) -> VerifyResult<(i64, CycElem)> {
    let p = &ctx.primes[0];
    let d = p.degree().unwrap() as u32;
    let q = ctx.q();
    let n = q.pow(d - 1) * (q - 1);
    let spec = ctx.eval_spec()?;
    let cf = make_torsion_field(p, spec.roots()[0]).map_err(|e| ctx.core(e))?;
    let t = Torsion {
        index: ctx.root_index.first().copied().unwrap_or(0),
        zeta: spec.roots()[0],
        cf,
    };
    let (top, _) = top_coeff(&t).map_err(|e| ctx.core(e))?;
    Ok((n, top))
}

/// Leading coefficient against `u_𝔭 = 1/(𝔭 e_C(z/𝔭))`.
pub fn thm4_degcoeff(ctx: &Ctx) -> VerifyResult<Run> {
    lead_check(ctx, false)
}

/// Leading coefficient against `u' = 𝔭 u_𝔭 = 1/e_C(z/𝔭)`.
pub fn psi1_lead_rescaled(ctx: &Ctx) -> VerifyResult<Run> {
    lead_check(ctx, true)
}

// 𝔭 ev_ζ(ψ_1)/π̃ = Σ_k 𝔭 S_k u'^{k+1} with S_k = Σ_b χ(b) e_C(b/𝔭)^k and
// v(e_C(b/𝔭)) ≥ -1, so the terms past index N-1 have valuation at least
// (N+1) v(u') - N - v_𝔭 once v(u') > 1. In u_𝔭 = u'/𝔭 this reads
// (N+1) v(u_𝔭) - N - (N+2) v_𝔭 once v(u_𝔭) > 1 + v_𝔭, where v_𝔭 = d(q-1).
fn lead_check(ctx: &Ctx, rescaled: bool) -> VerifyResult<Run> {
    let scale = ctx.imag_scale;
    let pts = ctx.draw(|i| ZRegime::Imaginary { scale: scale + (i % 3) as i64 })?;
    let (n, top) = lead_setup(ctx)?;
    let p = &ctx.primes[0];
    let dp = p.degree().unwrap() as i64 * (ctx.q() - 1);
    let pe = embed_theta_poly_exact(p);
    let spec = ctx.eval_spec()?;
    let samples = ctx.sweep_joint(|w| {
        use rayon::prelude::*;
        let pad = w - ctx.prec;
        let rows: Vec<Sample> = pts
            .par_iter()
            .enumerate()
            .map(|(i, (r, z))| {
                let vu1 = u1_val(ctx, z)?;
                let (vu, target, valid) = if rescaled {
                    (vu1, (n + 1) * vu1 - n - dp, vu1 > 1)
                } else {
                    let vu = vu1 + dp;
                    (vu, (n + 1) * vu - n - (n + 2) * dp, vu > 1 + dp)
                };
                let need = target.max(ctx.prec) + pad;
                let (x, u1) = lead_data(ctx, &spec, z, vu1, need)?;
                let u = if rescaled { u1 } else { u1.mul(&pe.inv_to(need + 2 * dp)?).truncated(need) };
                let a0 = embed(&top, need + n * dp)?;
                let res = x.sub(&a0.mul(&u.pow(n)?).truncated(need));
                let outcome = if valid { laurent_outcome(&res, target) } else { Outcome::Exact { equal: false } };
                Ok(Sample::new(format!("z{i} {} coefficient", regime_label(*r)), outcome)
                    .with("u_val", vu)
                    .with("x_val", x.lead().map_or("none".into(), |v| v.to_string()))
                    .with("known_to", res.prec())
                    .with("bound_valid", valid))
            })
            .collect::<carlitz::Result<_>>()?;
        let order = |s: &Sample, key: &str| -> Option<i64> {
            s.details.iter().find(|(k, _)| k == key).and_then(|(_, v)| v.parse().ok())
        };
        let mut out = rows.clone();
        let (bx, bu) = (order(&rows[0], "x_val"), order(&rows[0], "u_val"));
        for (i, s) in rows.iter().enumerate().skip(1) {
            let (vx, vu) = (order(s, "x_val"), order(s, "u_val"));
            let equal = match (vx, bx, vu, bu) {
                (Some(a), Some(b), Some(c), Some(d)) => a - b == n * (c - d),
                _ => false,
            };
            out.push(Sample::new(format!("z{i} order against z0"), Outcome::Exact { equal }));
        }
        Ok(out)
    })?;
    Ok((samples, Some(format!("N = {n}"))))
}
