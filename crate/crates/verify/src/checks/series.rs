//! Series identities in the Tate algebra: residuals are compared with the
//! requested precision on the stored `t`-box.

use std::collections::BTreeMap;

use carlitz::carlitz::{agf_f, chi_t, e_c, l_multi, omega, papanikolas_l, pi_tilde, psi, u_val, ZRegime};
use carlitz::laurent::{embed_theta_poly_exact, EXACT};
use carlitz::poly::enumerate_a;
use carlitz::{RamLaurent, TateElem};

use crate::context::{lift, regime_label, tate_outcome, theta_minus_t, laurent_outcome, Ctx};
use crate::error::VerifyResult;
use crate::report::Sample;

use super::Run;

type Point = (usize, ZRegime, RamLaurent);

fn points(ctx: &Ctx, regime: impl Fn(usize) -> ZRegime) -> VerifyResult<Vec<Point>> {
    Ok(ctx.draw(regime)?.into_iter().enumerate().map(|(i, (r, z))| (i, r, z)).collect())
}

fn label(p: &Point) -> String {
    format!("z{} {}", p.0, regime_label(p.1))
}

fn constant(x: RamLaurent, tcap: u32) -> TateElem {
    TateElem::constant(x, 1, tcap)
}

pub fn thm1_psi1(ctx: &Ctx) -> VerifyResult<Run> {
    let pts = points(ctx, |_| ZRegime::Small)?;
    let f = &ctx.field;
    let tcap = ctx.tcap;
    let samples = ctx.sweep(&pts, |p, w| {
        let z = &p.2;
        let e = e_c(z, w + 10)?;
        let (ps, info) = psi(1, z, ctx.degcap, tcap, w)?;
        let lhs = ps.scalar_mul(&e).mul(&theta_minus_t(f, tcap))?.mul(&omega(f, tcap, w + 4))?;
        let rhs = papanikolas_l(&e, tcap, w)?.scalar_mul(&pi_tilde(f, w + 4));
        let x = lhs.sub(&rhs)?;
        Ok(Sample::new(label(p), tate_outcome(&x, ctx.prec))
            .with("z_val", z.val())
            .with("degree_bound", info.degree_bound)
            .with("omitted_val", info.omitted_val)
            .with("tail", x.tail()))
    })?;
    Ok((samples, None))
}

pub fn psi1_factor(ctx: &Ctx) -> VerifyResult<Run> {
    let scale = ctx.imag_scale;
    let pts = points(ctx, |i| match i % 3 {
        0 => ZRegime::Small,
        1 => ZRegime::BelowQ,
        _ => ZRegime::Imaginary { scale },
    })?;
    let f = &ctx.field;
    let samples = ctx.sweep(&pts, |p, w| {
        let z = &p.2;
        let (ps, info) = psi(1, z, ctx.degcap, ctx.tcap, w)?;
        let mu = pi_tilde(f, w + 4).mul(&u_val(z, w + 4)?);
        let rhs = chi_t(z, ctx.tcap, w + 4 + mu.val().abs())?.scalar_mul(&mu);
        let x = ps.sub(&rhs)?;
        Ok(Sample::new(label(p), tate_outcome(&x, ctx.prec))
            .with("z_val", z.val())
            .with("degree_bound", info.degree_bound)
            .with("tail", x.tail()))
    })?;
    Ok((samples, None))
}

pub fn eq5_pelsid(ctx: &Ctx) -> VerifyResult<Run> {
    let f = &ctx.field;
    let tcap = ctx.tcap;
    let samples = ctx.sweep(&[()], |_, w| {
        let (l, info) = l_multi(f, 1, 1, ctx.degcap, tcap, w)?;
        let lhs = l.mul(&theta_minus_t(f, tcap))?.mul(&omega(f, tcap, w))?;
        let x = lhs.sub(&constant(pi_tilde(f, w), tcap))?;
        Ok(Sample::new("identity", tate_outcome(&x, ctx.prec))
            .with("degree_bound", info.degree_bound)
            .with("tail", x.tail()))
    })?;
    Ok((samples, None))
}

pub fn eq3_papdiffeq(ctx: &Ctx) -> VerifyResult<Run> {
    let pts = points(ctx, |_| ZRegime::Small)?;
    let f = &ctx.field;
    let tcap = ctx.tcap;
    let samples = ctx.sweep(&pts, |p, w| {
        let z = &p.2;
        let l = papanikolas_l(&e_c(z, w + 10)?, tcap, w)?;
        let rhs = theta_minus_t(f, tcap).mul(&agf_f(z, tcap, w + 2)?)?;
        let x = l.sub(&rhs)?;
        Ok(Sample::new(label(p), tate_outcome(&x, ctx.prec)).with("z_val", z.val()).with("tail", x.tail()))
    })?;
    Ok((samples, None))
}

pub fn eq1_agf(ctx: &Ctx) -> VerifyResult<Run> {
    let pts = points(ctx, |_| ZRegime::BelowQ)?;
    let f = &ctx.field;
    let tcap = ctx.tcap;
    let samples = ctx.sweep(&pts, |p, w| {
        let z = &p.2;
        let ft = agf_f(z, tcap, w)?;
        let rhs = constant(e_c(z, w)?, tcap).sub(&theta_minus_t(f, tcap).mul(&ft)?)?;
        let x = ft.tau_twist().sub(&rhs)?;
        Ok(Sample::new(label(p), tate_outcome(&x, ctx.prec)).with("z_val", z.val()).with("tail", x.tail()))
    })?;
    Ok((samples, None))
}

pub fn eq2_omega(ctx: &Ctx) -> VerifyResult<Run> {
    let f = &ctx.field;
    let tcap = ctx.tcap;
    let samples = ctx.sweep(&[()], |_, w| {
        let om = omega(f, tcap, w);
        let x = om.tau_twist().add(&theta_minus_t(f, tcap).mul(&om)?)?;
        Ok(Sample::new("identity", tate_outcome(&x, ctx.prec)).with("tail", x.tail()))
    })?;
    Ok((samples, None))
}

/// `π̃u`, `ψ_1` and `L(χ_t, 1)` at one point.
fn psi1_data(ctx: &Ctx, z: &RamLaurent, w: i64) -> carlitz::Result<(RamLaurent, TateElem, TateElem)> {
    let f = &ctx.field;
    let mu = pi_tilde(f, w + 4).mul(&u_val(z, w + 4)?);
    let (ps, _) = psi(1, z, ctx.degcap, ctx.tcap, w)?;
    let (l, _) = l_multi(f, 1, 1, ctx.degcap, ctx.tcap, w)?;
    Ok((mu, ps, l))
}

pub fn tau_psi1(ctx: &Ctx) -> VerifyResult<Run> {
    let pts = points(ctx, |_| ZRegime::BelowQ)?;
    let q = ctx.q();
    let samples = ctx.sweep(&pts, |p, w| {
        let (mu, ps, l) = psi1_data(ctx, &p.2, w)?;
        let rhs = ps.sub(&l)?.scalar_mul(&mu.pow(q - 1)?);
        let x = ps.tau_twist().sub(&rhs)?;
        Ok(Sample::new(label(p), tate_outcome(&x, ctx.prec)).with("z_val", p.2.val()).with("tail", x.tail()))
    })?;
    Ok((samples, None))
}

pub fn phi_psi1(ctx: &Ctx) -> VerifyResult<Run> {
    let pts = points(ctx, |_| ZRegime::BelowQ)?;
    let q = ctx.q();
    let samples = ctx.sweep(&pts, |p, w| {
        let (mu, ps, l) = psi1_data(ctx, &p.2, w)?;
        let mut pq = ps.clone();
        for _ in 1..q {
            pq = pq.mul(&ps)?;
        }
        let mu_inv = mu.inv_to(w + 2 * mu.val().abs())?;
        let rhs = pq.scalar_mul(&mu_inv.pow(q - 1)?).add(&l.phi_twist(0)?)?;
        let x = ps.phi_twist(0)?.sub(&rhs)?;
        Ok(Sample::new(label(p), tate_outcome(&x, ctx.prec)).with("z_val", p.2.val()).with("tail", x.tail()))
    })?;
    Ok((samples, None))
}

/// `Σ_{a≠0, deg a<D} χ_{t_1}(a)⋯χ_{t_s}(a) a^{-n}`.
fn direct_power_sum(ctx: &Ctx, s: usize, n: i64, degree_bound: u32, prec: i64) -> carlitz::Result<TateElem> {
    let f = &ctx.field;
    let tcap = ctx.tcap;
    let mut acc: BTreeMap<Vec<u32>, RamLaurent> = BTreeMap::new();
    let mut tail = EXACT;
    for a in enumerate_a(f, degree_bound, false)? {
        if a.is_zero() {
            continue;
        }
        let r = embed_theta_poly_exact(&a).inv_to(prec)?.pow(n)?.truncated(prec);
        if a.degree().unwrap() > tcap as usize {
            tail = tail.min(r.val());
        }
        let support: Vec<(u32, _)> = a
            .coeffs()
            .iter()
            .enumerate()
            .filter(|(k, c)| !c.is_zero() && *k as u32 <= tcap)
            .map(|(k, &c)| (k as u32, c))
            .collect();
        let mut add = |e: Vec<u32>, c| {
            let entry = acc.entry(e).or_insert_with(|| RamLaurent::zero(f, EXACT));
            *entry = entry.add(&r.scale(c));
        };
        match s {
            1 => support.iter().for_each(|&(k, c)| add(vec![k], c)),
            _ => {
                for &(j, cj) in &support {
                    for &(k, ck) in &support {
                        add(vec![j, k], f.mul(cj, ck));
                    }
                }
            }
        }
    }
    TateElem::from_terms(f, s, tcap, acc, prec, tail)
}

pub fn lem41_genseries(ctx: &Ctx) -> VerifyResult<Run> {
    let q = ctx.q();
    let mut items = Vec::new();
    for s in 1..=2usize {
        let m = (s as i64 - 1).rem_euclid(q - 1) + 1;
        for n in 1..=m + 2 * (q - 1) {
            items.push((s, n, (n - s as i64).rem_euclid(q - 1) == 0));
        }
    }
    let f = &ctx.field;
    let samples = ctx.sweep(&items, |&(s, n, matched), w| {
        let (l, info) = l_multi(f, s as u32, n, ctx.degcap, ctx.tcap, w)?;
        let floor = w.min(info.omitted_val);
        let coeff = direct_power_sum(ctx, s, n, info.degree_bound, floor)?.neg();
        let x = if matched { coeff.sub(&l)? } else { coeff.clone() };
        Ok(Sample::new(format!("s={s} n={n}"), tate_outcome(&x, ctx.prec))
            .with("compared_with", if matched { "L-value" } else { "zero" })
            .with("degree_bound", info.degree_bound)
            .with("coefficient_val", coeff.gauss_val()))
    })?;
    Ok((samples, None))
}

pub fn carlitz_zeta_s0(ctx: &Ctx) -> VerifyResult<Run> {
    let pts = points(ctx, |_| ZRegime::Small)?;
    let f = &ctx.field;
    let q1 = ctx.q() - 1;
    let samples = ctx.sweep(&pts, |p, w| {
        let z = &p.2;
        let (p0, _) = psi(0, z, ctx.degcap, 1, w + z.val())?;
        let lhs = z.mul(&p0.scalar_value());
        let mut rhs = RamLaurent::one(f, EXACT);
        let step = z.pow(q1)?;
        let mut zk = RamLaurent::one(f, EXACT);
        let mut k = 1;
        while k * q1 * z.val() < w {
            zk = zk.mul(&step).truncated(w);
            let (zeta, _) = l_multi(f, 0, k * q1, ctx.degcap, 1, w)?;
            rhs = rhs.add(&zk.mul(&zeta.scalar_value()).truncated(w));
            k += 1;
        }
        let x = lhs.sub(&rhs.truncated(w));
        Ok(Sample::new(label(p), laurent_outcome(&x, ctx.prec)).with("z_val", z.val()).with("zeta_terms", k - 1))
    })?;
    Ok((samples, None))
}

/// `h_I` for `s = 2` at one point, with the pieces needed for the fit.
struct HData {
    h: [TateElem; 3],
    chi1: TateElem,
    chi2: TateElem,
    psi2: TateElem,
    mu: RamLaurent,
}

fn h_data(ctx: &Ctx, z: &RamLaurent, w: i64) -> carlitz::Result<HData> {
    let f = &ctx.field;
    let tcap = ctx.tcap;
    let (p2, _) = psi(2, z, ctx.degcap, tcap, w)?;
    let (p1, _) = psi(1, z, ctx.degcap, tcap, w)?;
    let (p0, _) = psi(0, z, ctx.degcap, tcap, w)?;
    let chi = chi_t(z, tcap, w + 4)?;
    let chi1 = lift(&chi, 2, 0)?;
    let chi2 = lift(&chi, 2, 1)?;
    let p1a = lift(&p1, 2, 0)?;
    let p1b = lift(&p1, 2, 1)?;
    let p0 = TateElem::constant(p0.scalar_value(), 2, tcap);
    let h_empty = p2
        .sub(&chi2.mul(&p1a)?)?
        .sub(&chi1.mul(&p1b)?)?
        .add(&chi1.mul(&chi2)?.mul(&p0)?)?;
    let h1 = p1b.sub(&chi2.mul(&p0)?)?;
    let h2 = p1a.sub(&chi1.mul(&p0)?)?;
    let mu = pi_tilde(f, w + 4).mul(&u_val(z, w + 4)?);
    Ok(HData {
        h: [h_empty, h1, h2],
        chi1,
        chi2,
        psi2: p2,
        mu,
    })
}

pub fn thm2_hi_const(ctx: &Ctx) -> VerifyResult<Run> {
    let pts = points(ctx, |_| ZRegime::BelowQ)?;
    let names = ["h_{}", "h_{1}", "h_{2}"];
    let samples = ctx.sweep_joint(|w| {
        use rayon::prelude::*;
        let data: Vec<HData> = pts.par_iter().map(|p| h_data(ctx, &p.2, w)).collect::<carlitz::Result<_>>()?;
        let base = &data[0];
        let mut out = Vec::new();
        for (j, d) in data.iter().enumerate().skip(1) {
            for (i, name) in names.iter().enumerate() {
                let x = d.h[i].sub(&base.h[i])?;
                out.push(Sample::new(format!("{name}(z{j}) - {name}(z0)"), tate_outcome(&x, ctx.prec)));
            }
        }
        for (j, d) in data.iter().enumerate().skip(1) {
            let main = d.chi1.mul(&d.chi2)?.scalar_mul(&d.mu);
            let fit = base.h[0].add(&d.chi1.mul(&base.h[1])?)?.add(&d.chi2.mul(&base.h[2])?)?;
            let x = d.psi2.sub(&main)?.sub(&fit)?;
            out.push(Sample::new(format!("fit at z{j}"), tate_outcome(&x, ctx.prec)).with("tail", x.tail()));
        }
        Ok(out)
    })?;
    Ok((samples, None))
}
