//! The named checks, in the order `--all` runs them.

use std::time::Instant;

use crate::checks::{cyclo, norms, series, Run};
use crate::config::CheckConfig;
use crate::context::{Ctx, Needs};
use crate::error::{VerifyError, VerifyResult};
use crate::report::{CheckReport, Sample};

pub struct Entry {
    pub name: &'static str,
    /// The identity being checked, printed in text reports.
    pub statement: &'static str,
    pub needs: Needs,
    pub run: fn(&Ctx) -> VerifyResult<Run>,
}

const NONE: Needs = Needs {
    primes: 0,
    imaginary: false,
    scale: None,
    min_q: 2,
};

const fn prime(n: usize) -> Needs {
    Needs { primes: n, ..NONE }
}

const fn imaginary(scale: fn(i64) -> i64) -> Needs {
    Needs {
        imaginary: true,
        scale: Some(scale),
        ..NONE
    }
}

static ENTRIES: &[Entry] = &[
    Entry {
        name: "thm1-psi1",
        statement: "e_C(z) ψ_1(z) (θ - t) ω(t) = π̃ 𝑳_{e_C(z)}(t) for |z| < 1",
        needs: NONE,
        run: series::thm1_psi1,
    },
    Entry {
        name: "psi1-factor",
        statement: "ψ_1(z) = π̃ u(z) χ_t(z)",
        needs: imaginary(|q| q),
        run: series::psi1_factor,
    },
    Entry {
        name: "eq5-pelsid",
        statement: "L(χ_t, 1) (θ - t) ω(t) = π̃",
        needs: NONE,
        run: series::eq5_pelsid,
    },
    Entry {
        name: "eq3-papdiffeq",
        statement: "𝑳_{e_C(z)}(t) = (θ - t) f_t(z) for |z| < 1",
        needs: NONE,
        run: series::eq3_papdiffeq,
    },
    Entry {
        name: "eq1-agf",
        statement: "τ(f_t(z)) = e_C(z) + (t - θ) f_t(z)",
        needs: NONE,
        run: series::eq1_agf,
    },
    Entry {
        name: "eq2-omega",
        statement: "τ(ω) = (t - θ) ω",
        needs: NONE,
        run: series::eq2_omega,
    },
    Entry {
        name: "thm2-hI-const",
        statement: "h_I(z) = Σ_a χ^{I^c}(a - z)/(z - a) is constant in z for s = 2 < q, and \
                    ψ_2 = π̃ u χ_{t_1} χ_{t_2} + h_∅ + χ_{t_1} h_{1} + χ_{t_2} h_{2}",
        needs: Needs { min_q: 3, ..NONE },
        run: series::thm2_hi_const,
    },
    Entry {
        name: "thm3-omega-gauss",
        statement: "ev_ζ(ω) = -χ(ℓ_{d-1}) g(χ) for every root ζ of 𝔭",
        needs: prime(1),
        run: cyclo::thm3_omega_gauss,
    },
    Entry {
        name: "thm4-degcoeff",
        statement: "𝔭 ev_ζ(ψ_1/π̃) = u_𝔭^N (a_0 + O(u_𝔭)), N = |𝔭|(q-1)/q, \
                    a_0 = (-1)^{d+1} g(χ^{-1}) χ(ℓ_{d-1})^{-1}, u_𝔭 = 1/(𝔭 e_C(z/𝔭))",
        needs: Needs {
            primes: 1,
            ..imaginary(|q| 3 * (q - 1))
        },
        run: cyclo::thm4_degcoeff,
    },
    Entry {
        name: "psi1-lead-rescaled",
        statement: "𝔭 ev_ζ(ψ_1/π̃) = u'^N (a_0 + O(u')), u' = 1/e_C(z/𝔭)",
        needs: Needs {
            primes: 1,
            ..imaginary(|q| q)
        },
        run: cyclo::psi1_lead_rescaled,
    },
    Entry {
        name: "lem41-genseries",
        statement: "-Σ_{a≠0} χ_{t_1}(a)⋯χ_{t_s}(a) a^{-n} = L(χ_{t_1}⋯χ_{t_s}, n) if n ≡ s mod q-1, else 0",
        needs: NONE,
        run: series::lem41_genseries,
    },
    Entry {
        name: "carlitz-zeta-s0",
        statement: "z ψ_0(z) = 1 + Σ_{k≥1} ζ_C(k(q-1)) z^{k(q-1)}",
        needs: NONE,
        run: series::carlitz_zeta_s0,
    },
    Entry {
        name: "tau-psi1",
        statement: "τ(ψ_1) = (π̃ u)^{q-1} (ψ_1 - L(χ_t, 1))",
        needs: NONE,
        run: series::tau_psi1,
    },
    Entry {
        name: "phi-psi1",
        statement: "φ(ψ_1) = (π̃ u)^{1-q} ψ_1^q + L(χ_t^q, 1)",
        needs: NONE,
        run: series::phi_psi1,
    },
    Entry {
        name: "lem31-bound",
        statement: "‖χ_t(z)‖ ≤ max(1, |e_C(z)|^{1/q})",
        needs: imaginary(|q| q),
        run: norms::lem31_bound,
    },
    Entry {
        name: "lem32-isometry",
        statement: "‖χ_t(z)‖ = |z| for |z| < q",
        needs: NONE,
        run: norms::lem32_isometry,
    },
    Entry {
        name: "growth-remark",
        statement: "‖χ_t(z)‖ = ‖(t - θ) ω‖^{-1/q} |e_C(z)|^{1/q} for large |z|_ℑ",
        needs: imaginary(|q| 2 * q),
        run: norms::growth_remark,
    },
    Entry {
        name: "ec-imag-upper",
        statement: "|e_C(z)| ≤ q^{-1} for |z|_ℑ ≥ 1",
        needs: imaginary(|_| 0),
        run: norms::ec_imag_upper,
    },
    Entry {
        name: "ec-imag-range",
        statement: "|e_C(z)| ≥ |π̃| for |z|_ℑ ≥ 1",
        needs: imaginary(|_| 0),
        run: norms::ec_imag_range,
    },
    Entry {
        name: "pi-norm",
        statement: "|π̃| = q^{q/(q-1)}",
        needs: NONE,
        run: norms::pi_norm,
    },
    Entry {
        name: "prop51-ev",
        statement: "π̃^{-1} ev_𝔪(ψ_s)(z) = M_𝔪(e_C(z/𝔪)) / (𝔪 C_𝔪(e_C(z/𝔪))), 𝔪 = 𝔭_1⋯𝔭_s",
        needs: prime(2),
        run: cyclo::prop51_ev,
    },
    Entry {
        name: "cor52-chieval",
        statement: "ev_𝔭(χ_t(z)) = 𝔭^{-1} M_𝔭(e_C(z/𝔭))",
        needs: Needs {
            primes: 1,
            ..imaginary(|q| q)
        },
        run: cyclo::cor52_chieval,
    },
    Entry {
        name: "lem53-M-oracle",
        statement: "M_𝔭(Z) = (-1)^d g(χ^{-1}) Σ_{j<d} Z^{q^j} Σ_{a∈A(d)∖A(j)} a(ζ)^{-1} E_j(a)",
        needs: prime(1),
        run: cyclo::lem53_m_oracle,
    },
    Entry {
        name: "lem55-telescope",
        statement: "Σ_{j<d} ℓ_j(x)^{-1} ∏_{k<j} (y - x^{q^k}) = ℓ_{d-1}(x)^{-1} ∏_{1≤j<d} (y - x^{q^j})",
        needs: NONE,
        run: cyclo::lem55_telescope,
    },
    Entry {
        name: "cor56-coeffs",
        statement: "[Z^{|𝔭|/q}] M_𝔭 = (-1)^{d+1} g(χ^{-1}) χ(ℓ_{d-1})^{-1}, \
                    [Z] M_𝔭 = (-1)^{d+1} 𝔭 χ(ℓ_{d-1})^{-1} (θ - ζ)^{-1} g(χ^{-1})",
        needs: prime(1),
        run: cyclo::cor56_coeffs,
    },
    Entry {
        name: "ca-ej-oracle",
        statement: "C_a(Z) = Σ_j E_j(a) Z^{q^j} for a ∈ A(n)",
        needs: NONE,
        run: cyclo::ca_ej_oracle,
    },
    Entry {
        name: "gauss-product",
        statement: "g(χ) g(χ^{-1}) = (-1)^d 𝔭 and σ_a(g(χ)) = χ(a) g(χ)",
        needs: prime(1),
        run: cyclo::gauss_product,
    },
];

pub fn entries() -> &'static [Entry] {
    ENTRIES
}

pub fn find(name: &str) -> VerifyResult<&'static Entry> {
    ENTRIES
        .iter()
        .find(|e| e.name == name)
        .ok_or_else(|| VerifyError::UnknownCheck(name.to_string()))
}

fn execute(entry: &'static Entry, cfg: &CheckConfig) -> VerifyResult<CheckReport> {
    let ctx = Ctx::resolve(entry.name, cfg, entry.needs)?;
    let start = Instant::now();
    let (samples, note) = (entry.run)(&ctx)?;
    let ms = start.elapsed().as_millis() as u64;
    Ok(CheckReport::from_samples(entry.name, entry.statement, ctx.params(), samples, ms, note))
}

/// Runs the configured check.
pub fn run_check(cfg: &CheckConfig) -> VerifyResult<CheckReport> {
    let name = cfg
        .check
        .as_deref()
        .ok_or_else(|| VerifyError::ConfigInvalid("no check selected".into()))?;
    execute(find(name)?, cfg)
}

/// Runs every check applicable to the configured `q`, in registry order.
/// A check that errors becomes a failing report carrying the error.
pub fn run_all(cfg: &CheckConfig) -> Vec<CheckReport> {
    let q = (cfg.p as u64).saturating_pow(cfg.e);
    ENTRIES
        .iter()
        .filter(|e| q >= e.needs.min_q as u64)
        .map(|e| {
            execute(e, cfg).unwrap_or_else(|err| {
                let failed = Sample::new("error", crate::report::Outcome::Exact { equal: false });
                CheckReport::from_samples(
                    e.name,
                    e.statement,
                    serde_json::json!({ "p": cfg.p, "e": cfg.e }),
                    vec![failed],
                    0,
                    Some(err.to_string()),
                )
            })
        })
        .collect()
}

/// Runs the configuration: one check, or all of them.
pub fn run(cfg: &CheckConfig) -> VerifyResult<Vec<CheckReport>> {
    if cfg.all {
        Ok(run_all(cfg))
    } else {
        Ok(vec![run_check(cfg)?])
    }
}
