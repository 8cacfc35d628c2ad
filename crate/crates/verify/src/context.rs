//! Resolved parameters for one check, seeded sampling and the adaptive
//! precision runner.

use std::sync::Arc;

use carlitz::carlitz::{sample_z, ZRegime};
use carlitz::poly::enumerate_a;
use carlitz::{make_field, EvalSpec, FieldSpec, GFPoly, RamLaurent, TateElem, Var};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::json;

use crate::config::CheckConfig;
use crate::error::{VerifyError, VerifyResult};
use crate::report::{Outcome, Sample};

/// First padding tried above the requested precision.
pub const PAD0: i64 = 16;
/// Largest padding before a sample is reported as exhausted.
pub const MAX_PAD: i64 = 1024;

/// What a check needs from the configuration.
#[derive(Copy, Clone, Debug, Default)]
pub struct Needs {
    /// Number of primes filled in when none are given.
    pub primes: usize,
    /// Samples in the imaginary regime; the coefficient field then contains
    /// `F_{q^2}` so every scale can be realized.
    pub imaginary: bool,
    /// Default imaginary scale in `u`-units, as a function of `q`.
    pub scale: Option<fn(i64) -> i64>,
    /// Lowest admissible `q`.
    pub min_q: u32,
}

#[derive(Clone, Debug)]
pub struct Ctx {
    pub name: &'static str,
    pub field: Arc<FieldSpec>,
    pub primes: Vec<GFPoly>,
    pub root_index: Vec<usize>,
    pub degree: Option<u32>,
    pub prec: i64,
    pub tcap: u32,
    pub degcap: u32,
    pub samples: usize,
    pub seed: u64,
    pub imag_scale: i64,
}

fn lcm(a: u32, b: u32) -> u32 {
    fn gcd(a: u32, b: u32) -> u32 {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }
    a / gcd(a, b) * b
}

fn bad(m: impl Into<String>) -> VerifyError {
    VerifyError::ConfigInvalid(m.into())
}

/// Monic irreducibles of degree `d` over `F_q` in lexicographic order of
/// their coefficient vectors read from the top.
pub fn irreducibles(field: &Arc<FieldSpec>, d: u32) -> VerifyResult<Vec<GFPoly>> {
    let mut out: Vec<GFPoly> = enumerate_a(field, d, true)
        .map_err(|e| bad(e.to_string()))?
        .into_iter()
        .filter(|p| p.is_irreducible_fq())
        .collect();
    let key = |p: &GFPoly| -> Vec<u32> { p.coeffs().iter().rev().map(|&c| field.coord(c)).collect() };
    out.sort_by_key(key);
    Ok(out)
}

/// Renders a polynomial over `F_q` as `θ^2+θ+1`, coefficients by index.
pub fn render_poly(p: &GFPoly) -> String {
    let f = p.field();
    let mut parts = Vec::new();
    for (k, &c) in p.coeffs().iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let idx = f.coord(c);
        let coef = if idx == 1 && k > 0 { String::new() } else { idx.to_string() };
        let mon = match k {
            0 => String::new(),
            1 => "θ".to_string(),
            _ => format!("θ^{k}"),
        };
        parts.push(format!("{coef}{mon}"));
    }
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join("+")
    }
}

impl Ctx {
    /// Resolves the configuration against a check's needs.
    pub fn resolve(name: &'static str, cfg: &CheckConfig, needs: Needs) -> VerifyResult<Ctx> {
        let q = (cfg.p as u64).checked_pow(cfg.e).ok_or_else(|| bad("q overflows"))?;
        if (q as u32) < needs.min_q.max(2) {
            return Err(bad(format!("{name} needs q ≥ {}", needs.min_q)));
        }
        // parse primes over F_q first to learn their degrees
        let base = make_field(cfg.p, cfg.e, 1).map_err(|e| bad(e.to_string()))?;
        let mut degrees: Vec<u32> = cfg.primes.iter().map(|c| c.len() as u32 - 1).collect();
        let mut defaults = Vec::new();
        if cfg.primes.is_empty() && needs.primes > 0 {
            let d = cfg.degree.unwrap_or(2);
            if needs.primes == 1 {
                defaults.push(irreducibles(&base, d)?.into_iter().next().ok_or_else(|| bad("no irreducible"))?);
            } else {
                // distinct degrees 1 and d keep the primes coprime
                for dd in [1, d.max(2)] {
                    defaults.push(irreducibles(&base, dd)?.into_iter().next().ok_or_else(|| bad("no irreducible"))?);
                }
            }
            degrees = defaults.iter().map(|p| p.degree().unwrap() as u32).collect();
        }
        let scale = cfg.imag_scale.or(needs.scale.map(|f| f(q as i64))).unwrap_or(q as i64);
        let mut ext = degrees.iter().fold(1, |acc, &d| lcm(acc, d));
        if needs.imaginary {
            ext = lcm(ext, 2);
        }
        if let Some(x) = cfg.ext {
            if x % ext != 0 {
                return Err(bad(format!("ext {x} must be a multiple of {ext}")));
            }
            ext = x;
        }
        let field = make_field(cfg.p, cfg.e, ext).map_err(|e| bad(e.to_string()))?;
        let primes: Vec<GFPoly> = if cfg.primes.is_empty() {
            defaults
                .iter()
                .map(|p| {
                    let c: Vec<u32> = p.coeffs().iter().map(|&c| base.coord(c)).collect();
                    GFPoly::from_fq(&field, &c, Var::Theta)
                })
                .collect()
        } else {
            cfg.primes.iter().map(|c| GFPoly::from_fq(&field, c, Var::Theta)).collect()
        };
        for p in &primes {
            if !p.is_irreducible_fq() {
                return Err(bad(format!("{} is not irreducible over F_{q}", render_poly(p))));
            }
        }
        if primes.len() == 2 && primes[0] == primes[1] {
            return Err(bad("the two primes must differ"));
        }
        Ok(Ctx {
            name,
            field,
            primes,
            root_index: cfg.root_index.clone(),
            degree: cfg.degree,
            prec: cfg.prec,
            tcap: cfg.tcap,
            degcap: cfg.degcap,
            samples: cfg.samples,
            seed: cfg.seed,
            imag_scale: scale,
        })
    }

    pub fn q(&self) -> i64 {
        self.field.q() as i64
    }

    pub fn params(&self) -> serde_json::Value {
        json!({
            "p": self.field.p(),
            "e": self.field.e(),
            "q": self.field.q(),
            "ext": self.field.d(),
            "primes": self.primes.iter().map(render_poly).collect::<Vec<_>>(),
            "root_index": self.root_index,
            "degree": self.degree,
            "prec": self.prec,
            "tcap": self.tcap,
            "degcap": self.degcap,
            "samples": self.samples,
            "seed": self.seed,
            "imag_scale": self.imag_scale,
        })
    }

    pub fn core(&self, e: carlitz::Error) -> VerifyError {
        VerifyError::Core {
            check: self.name.to_string(),
            source: e,
        }
    }

    /// `samples` seeded points; `regime(i)` picks the regime of the `i`-th.
    pub fn draw(&self, regime: impl Fn(usize) -> ZRegime) -> VerifyResult<Vec<(ZRegime, RamLaurent)>> {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        (0..self.samples)
            .map(|i| {
                let r = regime(i);
                sample_z(&self.field, r, &mut rng).map(|z| (r, z)).map_err(|e| self.core(e))
            })
            .collect()
    }

    /// Evaluation data for the configured primes and root indices.
    pub fn eval_spec(&self) -> VerifyResult<EvalSpec> {
        let idx: Vec<usize> = (0..self.primes.len())
            .map(|i| self.root_index.get(i).copied().unwrap_or(0))
            .collect();
        EvalSpec::new(self.primes.clone(), &idx).map_err(|e| self.core(e))
    }

    /// Runs `eval` on every item at working precision `prec + pad`, doubling
    /// the pad while the residual is only known to vanish below the budget.
    pub fn sweep<T: Sync>(
        &self,
        items: &[T],
        eval: impl Fn(&T, i64) -> carlitz::Result<Sample> + Sync,
    ) -> VerifyResult<Vec<Sample>> {
        items
            .par_iter()
            .map(|item| {
                let mut pad = PAD0;
                loop {
                    let w = self.prec + pad;
                    match eval(item, w) {
                        Ok(s) if s.outcome.exhausted() && pad < MAX_PAD => pad *= 2,
                        Ok(s) => return Ok(s.with("working_prec", w)),
                        Err(carlitz::Error::PrecisionTooLow(_) | carlitz::Error::PrecisionExhausted(_))
                            if pad < MAX_PAD =>
                        {
                            pad *= 2
                        }
                        Err(e) => return Err(self.core(e)),
                    }
                }
            })
            .collect()
    }

    /// Like [`Ctx::sweep`] for checks whose samples compare points with each
    /// other: the whole batch is recomputed at the larger precision.
    pub fn sweep_joint(&self, eval: impl Fn(i64) -> carlitz::Result<Vec<Sample>>) -> VerifyResult<Vec<Sample>> {
        let mut pad = PAD0;
        loop {
            let w = self.prec + pad;
            match eval(w) {
                Ok(v) if v.iter().any(|s| s.outcome.exhausted()) && pad < MAX_PAD => pad *= 2,
                Ok(v) => return Ok(v.into_iter().map(|s| s.with("working_prec", w)).collect()),
                Err(carlitz::Error::PrecisionTooLow(_) | carlitz::Error::PrecisionExhausted(_)) if pad < MAX_PAD => {
                    pad *= 2
                }
                Err(e) => return Err(self.core(e)),
            }
        }
    }

    /// Runs exact comparisons, one per item.
    pub fn exact<T: Sync>(
        &self,
        items: &[T],
        eval: impl Fn(&T) -> carlitz::Result<Sample> + Sync,
    ) -> VerifyResult<Vec<Sample>> {
        items.par_iter().map(|i| eval(i).map_err(|e| self.core(e))).collect()
    }
}

/// Residual of a series identity against the budget `target`.
pub fn tate_outcome(x: &TateElem, target: i64) -> Outcome {
    if x.is_zero() {
        Outcome::Numeric {
            val: x.prec(),
            target,
            zero: true,
        }
    } else {
        Outcome::Numeric {
            val: x.gauss_val(),
            target,
            zero: false,
        }
    }
}

pub fn laurent_outcome(x: &RamLaurent, target: i64) -> Outcome {
    match x.lead() {
        None => Outcome::Numeric {
            val: x.prec(),
            target,
            zero: true,
        },
        Some(v) => Outcome::Numeric {
            val: v,
            target,
            zero: false,
        },
    }
}

pub fn regime_label(r: ZRegime) -> String {
    match r {
        ZRegime::Small => "|z|<1".into(),
        ZRegime::BelowQ => "|z|<q".into(),
        ZRegime::Imaginary { scale } => format!("|z|_i=q^({scale}/(q-1))"),
    }
}

/// `θ - t` in one variable.
pub fn theta_minus_t(f: &Arc<FieldSpec>, tcap: u32) -> TateElem {
    let th = TateElem::constant(RamLaurent::theta_pow(f, 1, carlitz::laurent::EXACT), 1, tcap);
    th.sub(&TateElem::var(f, 1, tcap, 0)).expect("same shape")
}

/// Places a one-variable element in variable `i` of `s`.
pub fn lift(x: &TateElem, s: usize, i: usize) -> carlitz::Result<TateElem> {
    let terms = x.terms().iter().map(|(e, c)| {
        let mut ex = vec![0; s];
        if x.s() == 1 {
            ex[i] = e[0];
        }
        (ex, c.clone())
    });
    TateElem::from_terms(x.field(), s, x.tcap(), terms, x.prec(), x.tail())
}
