//! Exact norm comparisons. Every exponent here is a valuation in `u`-units.

use carlitz::carlitz::{chi_t, e_c, pi_tilde, ZRegime};
use carlitz::laurent::NormExp;
use carlitz::RamLaurent;

use crate::context::{regime_label, Ctx};
use crate::error::VerifyResult;
use crate::report::{Outcome, Sample};

use super::Run;

/// Valuation of `χ_t(z)` in the Gauss norm, as a sound lower bound
/// (stored part and tail), and the valuation of `e_C(z)`.
fn chi_and_e(ctx: &Ctx, z: &RamLaurent, w: i64) -> carlitz::Result<(carlitz::TateElem, i64)> {
    let e = e_c(z, w)?;
    let ve = e.lead().ok_or_else(|| carlitz::Error::PrecisionExhausted("e_C(z) vanishes to precision".into()))?;
    let chi = chi_t(z, ctx.tcap, w)?;
    Ok((chi, ve))
}

fn alternate(scale: i64) -> impl Fn(usize) -> ZRegime {
    move |i| {
        if i % 2 == 0 {
            ZRegime::BelowQ
        } else {
            ZRegime::Imaginary { scale: scale + (i as i64 / 2) % 4 }
        }
    }
}

pub fn lem31_bound(ctx: &Ctx) -> VerifyResult<Run> {
    let q = ctx.q();
    let pts = ctx.draw(alternate(ctx.imag_scale))?;
    let samples = ctx.sweep(&pts, |(r, z), w| {
        let (chi, ve) = chi_and_e(ctx, z, w)?;
        let vchi = chi.total_val();
        Ok(Sample::new(regime_label(*r), Outcome::Bound { slack: q * vchi - ve.min(0) })
            .with("chi_val", vchi)
            .with("e_val", ve))
    })?;
    Ok((samples, None))
}

pub fn lem32_isometry(ctx: &Ctx) -> VerifyResult<Run> {
    let pts = ctx.draw(|_| ZRegime::BelowQ)?;
    let samples = ctx.sweep(&pts, |(r, z), w| {
        let chi = chi_t(z, ctx.tcap, w)?;
        let norm = chi.gauss_norm();
        let equal = norm == NormExp::Exact(-z.val()) && chi.tail() > z.val();
        Ok(Sample::new(regime_label(*r), Outcome::Exact { equal })
            .with("z_val", z.val())
            .with("chi_val", chi.gauss_val())
            .with("tail", chi.tail()))
    })?;
    Ok((samples, None))
}

pub fn growth_remark(ctx: &Ctx) -> VerifyResult<Run> {
    let q = ctx.q();
    let scale = ctx.imag_scale;
    let pts = ctx.draw(|i| ZRegime::Imaginary { scale: scale + (i as i64) % 4 })?;
    let samples = ctx.sweep(&pts, |(r, z), w| {
        let (chi, ve) = chi_and_e(ctx, z, w)?;
        let vchi = match chi.gauss_norm() {
            NormExp::Exact(x) if chi.tail() > -x => -x,
            _ => return Err(carlitz::Error::PrecisionExhausted("Gauss norm of χ_t(z) not resolved".into())),
        };
        Ok(Sample::new(regime_label(*r), Outcome::Exact { equal: q * vchi == ve + q })
            .with("chi_val", vchi)
            .with("e_val", ve))
    })?;
    Ok((samples, None))
}

fn imag_e_vals(ctx: &Ctx) -> VerifyResult<Vec<(ZRegime, i64)>> {
    let scale = ctx.imag_scale;
    let pts = ctx.draw(|i| ZRegime::Imaginary { scale: scale + (i as i64) % 6 })?;
    let vals = ctx.exact(&pts, |(r, z)| {
        let e = e_c(z, ctx.prec)?;
        let ve = e
            .lead()
            .ok_or_else(|| carlitz::Error::PrecisionExhausted("e_C(z) vanishes to precision".into()))?;
        Ok(Sample::new(regime_label(*r), Outcome::Bound { slack: ve }))
    })?;
    Ok(pts.iter().zip(vals).map(|((r, _), s)| (*r, s.outcome.margin().unwrap())).collect())
}

/// `|e_C(z)| ≤ q^{-1}` on `|z|_ℑ ≥ 1`.
pub fn ec_imag_upper(ctx: &Ctx) -> VerifyResult<Run> {
    let q1 = ctx.q() - 1;
    let samples = imag_e_vals(ctx)?
        .into_iter()
        .map(|(r, ve)| Sample::new(regime_label(r), Outcome::Bound { slack: ve - q1 }).with("e_val", ve))
        .collect();
    Ok((samples, None))
}

/// `|e_C(z)| ≥ |π̃|` on `|z|_ℑ ≥ 1`.
pub fn ec_imag_range(ctx: &Ctx) -> VerifyResult<Run> {
    let q = ctx.q();
    let vals = imag_e_vals(ctx)?;
    let lo = vals.iter().map(|v| v.1).min().unwrap_or(0);
    let hi = vals.iter().map(|v| v.1).max().unwrap_or(0);
    let samples = vals
        .into_iter()
        .map(|(r, ve)| Sample::new(regime_label(r), Outcome::Bound { slack: -q - ve }).with("e_val", ve))
        .collect();
    Ok((samples, Some(format!("e_C valuations range over [{lo}, {hi}]"))))
}

pub fn pi_norm(ctx: &Ctx) -> VerifyResult<Run> {
    let pi = pi_tilde(&ctx.field, ctx.prec);
    let lead = pi.lead();
    let s = Sample::new("|π̃|", Outcome::Exact { equal: lead == Some(-ctx.q()) })
        .with("val", lead.map_or("none".into(), |v| v.to_string()));
    Ok((vec![s], None))
}
