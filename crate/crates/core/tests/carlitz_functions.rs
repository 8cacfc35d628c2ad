use std::sync::Arc;

use carlitz::carlitz::*;
use carlitz::laurent::{embed_theta_poly_exact, EXACT};
use carlitz::poly::enumerate_a;
use carlitz::{make_field, FieldSpec, GFPoly, RamLaurent, TateElem, Var};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const W: i64 = 40;

fn fields() -> Vec<Arc<FieldSpec>> {
    vec![make_field(2, 1, 1).unwrap(), make_field(3, 1, 1).unwrap(), make_field(2, 1, 2).unwrap()]
}

fn theta_minus_t(f: &Arc<FieldSpec>, tcap: u32) -> TateElem {
    let th = TateElem::constant(RamLaurent::theta_pow(f, 1, EXACT), 1, tcap);
    th.sub(&TateElem::var(f, 1, tcap, 0)).unwrap()
}

fn assert_small(x: &TateElem, floor: i64) {
    assert!(x.is_zero(), "nonzero residual {x}");
    assert!(x.prec() >= floor, "precision {} below {floor}", x.prec());
}

#[test]
fn constants_examples_and_degrees() {
    for f in fields() {
        let q = f.q() as usize;
        let (d0, l0) = carlitz_constants(&f, 0).unwrap();
        assert_eq!(d0, GFPoly::one(&f, Var::Theta));
        assert_eq!(l0, GFPoly::one(&f, Var::Theta));
        let (d1, l1) = carlitz_constants(&f, 1).unwrap();
        let th = GFPoly::x(&f, Var::Theta);
        assert_eq!(d1, th.pow(q as u64).sub(&th));
        assert_eq!(l1, th.sub(&th.pow(q as u64)));
        for i in 0..4u32 {
            let (d, l) = carlitz_constants(&f, i).unwrap();
            assert_eq!(d.degree(), Some(i as usize * q.pow(i)));
            let ldeg: usize = (1..=i).map(|k| q.pow(k)).sum();
            assert_eq!(l.degree(), Some(ldeg));
            // series inverses agree with the exact polynomials
            let prod = inv_d(&f, i, W).unwrap().mul(&embed_theta_poly_exact(&d));
            assert!(prod.sub(&RamLaurent::one(&f, EXACT)).is_zero());
            assert!(prod.prec() >= W - (q as i64 - 1) * (i as i64) * q.pow(i) as i64);
            let prod = inv_ell(&f, i, W).unwrap().mul(&embed_theta_poly_exact(&l));
            assert!(prod.sub(&RamLaurent::one(&f, EXACT)).is_zero());
        }
    }
    assert!(carlitz_constants(&make_field(2, 1, 1).unwrap(), 40).is_err());
}

#[test]
fn pi_tilde_shape_and_period() {
    for f in fields() {
        let q = f.q() as i64;
        let pi = pi_tilde(&f, W);
        assert_eq!(pi.lead(), Some(-q));
        assert_eq!(pi.lead_coeff(), f.neg_one());
        assert_eq!(pi.prec(), W);
        let e = carlitz_exp(&pi, W - 2 * q).unwrap();
        assert!(e.is_zero() && e.prec() >= W - 2 * q, "exp(π̃) = {e}");
    }
}

#[test]
fn e_c_vanishes_on_a_and_gives_torsion() {
    for f in fields() {
        for a in enumerate_a(&f, 2, false).unwrap() {
            let x = e_c(&embed_theta_poly_exact(&a), W).unwrap();
            assert!(x.is_zero() && x.prec() >= W - 10, "e_C({a}) = {x}");
        }
        let inv_theta = RamLaurent::theta_pow(&f, -1, EXACT);
        let lam = e_c(&inv_theta, W).unwrap();
        assert!(lam.sub(&RamLaurent::lambda(&f, EXACT)).is_zero());
        assert!(lam.prec() >= W - 5);
        // cross-check against ω(0) = λ_θ
        let w = omega(&f, 3, W);
        assert!(w.coeff1(0).sub(&lam).is_zero());
        assert!(matches!(u_val(&RamLaurent::one(&f, EXACT), W), Err(carlitz::Error::ZAtLattice)));
    }
}

#[test]
fn exp_is_fq_linear_and_log_inverts() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for f in fields() {
        for _ in 0..10 {
            let x = sample_z(&f, ZRegime::Small, &mut rng).unwrap();
            let y = sample_z(&f, ZRegime::BelowQ, &mut rng).unwrap();
            let c = f.from_fq(f.q() - 1);
            let lhs = carlitz_exp(&x.add(&y.scale(c)), W).unwrap();
            let rhs = carlitz_exp(&x, W).unwrap().add(&carlitz_exp(&y, W).unwrap().scale(c));
            assert!(lhs.sub(&rhs).is_zero());
            let l = log_c(&x, W).unwrap();
            let back = carlitz_exp(&l, W).unwrap();
            assert!(back.sub(&x).is_zero() && back.prec() >= W - 5, "{back} vs {x}");
        }
        let big = RamLaurent::theta_pow(&f, 2, EXACT);
        assert_eq!(log_c(&big, W).unwrap_err(), carlitz::Error::AlphaTooLarge);
    }
}

#[test]
fn omega_functional_equation() {
    for f in fields() {
        let tcap = 12;
        let w = omega(&f, tcap, W);
        assert_eq!(w.coeff1(0), RamLaurent::lambda(&f, W));
        let tw = w.tau_twist();
        let t_minus = theta_minus_t(&f, tcap).neg();
        let rhs = t_minus.mul(&w).unwrap();
        assert_small(&tw.sub(&rhs).unwrap(), W - 2);
        let one = w.mul(&omega_inv(&f, tcap, W + 2)).unwrap();
        assert_small(&one.sub(&TateElem::constant(RamLaurent::one(&f, EXACT), 1, tcap)).unwrap(), W - 2);
        // ‖ω‖ = |λ_θ|
        assert_eq!(w.gauss_norm(), carlitz::laurent::NormExp::Exact(1));
    }
}

#[test]
fn agf_identities() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    for f in fields() {
        let tcap = 10;
        let one = RamLaurent::one(&f, EXACT);
        let f1 = agf_f(&one, tcap, W).unwrap();
        assert_small(&f1.sub(&omega(&f, tcap, W)).unwrap(), W);
        for a in [vec![1], vec![0, 1], vec![1, 0, 1]] {
            let poly = GFPoly::from_fq(&f, &a, Var::Theta);
            let chi = chi_t(&embed_theta_poly_exact(&poly), tcap, W).unwrap();
            let expect = TateElem::from_t_poly(&poly.clone().with_var(Var::T(0)), 1, tcap, 0);
            assert_small(&chi.sub(&expect).unwrap(), W);
        }
        for _ in 0..5 {
            let z = sample_z(&f, ZRegime::BelowQ, &mut rng).unwrap();
            let ft = agf_f(&z, tcap, W).unwrap();
            let ez = TateElem::constant(e_c(&z, W + 10).unwrap(), 1, tcap);
            let rhs = ez.sub(&theta_minus_t(&f, tcap).mul(&ft).unwrap()).unwrap();
            assert_small(&ft.tau_twist().sub(&rhs).unwrap(), W - 5);
        }
    }
}

#[test]
fn deformed_log_matches_agf() {
    let mut rng = ChaCha8Rng::seed_from_u64(29);
    for f in fields() {
        let tcap = 10;
        assert!(papanikolas_l(&RamLaurent::zero(&f, EXACT), tcap, W).unwrap().is_zero());
        for _ in 0..5 {
            let z = sample_z(&f, ZRegime::Small, &mut rng).unwrap();
            let alpha = e_c(&z, W + 10).unwrap();
            let l = papanikolas_l(&alpha, tcap, W).unwrap();
            let rhs = theta_minus_t(&f, tcap).mul(&agf_f(&z, tcap, W + 5).unwrap()).unwrap();
            assert_small(&l.sub(&rhs).unwrap(), W - 5);
            // specializing t = θ gives log_C(α); the t^k coefficient has
            // valuation at least v(α) + k q(q-1), so after t = θ the
            // discarded part sits above v(α) + (tcap+1)(q-1)^2
            let q1 = f.q() as i64 - 1;
            let cap = (W + f.q() as i64) as u32;
            let wide = W + cap as i64 * q1 + 5;
            let big = papanikolas_l(&e_c(&z, wide).unwrap(), cap, wide).unwrap();
            let tail = alpha.val() - (f.q() as i64) + (cap as i64 + 1) * q1 * q1;
            let sp = big.specialize_theta(0, tail).unwrap();
            let lg = log_c(&alpha, W).unwrap();
            let diff = sp.scalar_value().sub(&lg);
            assert!(diff.is_zero() && diff.prec() >= W - 5, "{diff}");
            let back = carlitz_exp(&sp.scalar_value(), W).unwrap();
            assert!(back.sub(&alpha).is_zero());
        }
    }
}

#[test]
fn psi_blocks_respect_bound() {
    // Independent check of the block bound: sum each degree block directly
    // and compare its Gauss valuation with the bound.
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    for f in [make_field(2, 1, 1).unwrap(), make_field(3, 1, 1).unwrap()] {
        let q = f.q() as i64;
        for s in 0..=2u32 {
            for _ in 0..3 {
                let z = sample_z(&f, ZRegime::BelowQ, &mut rng).unwrap();
                let kmax = if q == 2 { 7 } else { 4 };
                for k in 1..=kmax {
                    let mut block = TateElem::zero(&f, s as usize, 40).with_bounds(60, EXACT);
                    for a in enumerate_a(&f, k as u32, false).unwrap() {
                        if a.degree() != Some(k as usize - 1) {
                            continue;
                        }
                        let r = z.sub(&embed_theta_poly_exact(&a)).inv_to(60).unwrap();
                        let mut term = TateElem::constant(r, s as usize, 40);
                        for i in 0..s as usize {
                            let chi = TateElem::from_t_poly(&a.clone().with_var(Var::T(i)), s as usize, 40, i);
                            term = term.mul(&chi).unwrap();
                        }
                        block = block.add(&term).unwrap();
                    }
                    let kk = k - 1;
                    if kk * (q - 1) <= -z.val() {
                        continue;
                    }
                    let bound = psi_block_bound(q, s, kk).min(60);
                    assert!(block.gauss_val() >= bound, "q={q} s={s} k={kk}: {} < {bound}", block.gauss_val());
                }
            }
        }
    }
}

#[test]
fn l_blocks_respect_bound() {
    for f in [make_field(2, 1, 1).unwrap(), make_field(3, 1, 1).unwrap()] {
        let q = f.q() as i64;
        for s in 0..=2u32 {
            for n in 1..=3i64 {
                let kmax = if q == 2 { 6 } else { 4 };
                for k in 0..kmax {
                    let mut block = TateElem::zero(&f, s as usize, 40).with_bounds(80, EXACT);
                    for a in enumerate_a(&f, k as u32, true).unwrap() {
                        let r = embed_theta_poly_exact(&a).inv_to(80).unwrap().pow(n).unwrap();
                        let mut term = TateElem::constant(r, s as usize, 40);
                        for i in 0..s as usize {
                            let chi = TateElem::from_t_poly(&a.clone().with_var(Var::T(i)), s as usize, 40, i);
                            term = term.mul(&chi).unwrap();
                        }
                        block = block.add(&term).unwrap();
                    }
                    let bound = l_block_bound(q, s, n, k).min(80);
                    assert!(block.gauss_val() >= bound, "q={q} s={s} n={n} k={k}: {} < {bound}", block.gauss_val());
                }
            }
        }
    }
}

#[test]
fn pellarin_identity() {
    for f in fields() {
        let tcap = 10;
        let (l, _) = l_multi(&f, 1, 1, 40, tcap, W + 5).unwrap();
        let lhs = l.mul(&theta_minus_t(&f, tcap)).unwrap().mul(&omega(&f, tcap, W + 5)).unwrap();
        let pi = TateElem::constant(pi_tilde(&f, W + 5), 1, tcap);
        assert_small(&lhs.sub(&pi).unwrap(), W - 5);
    }
}

#[test]
fn psi_one_factorization() {
    let mut rng = ChaCha8Rng::seed_from_u64(37);
    for f in fields() {
        let tcap = 8;
        for _ in 0..3 {
            let z = sample_z(&f, ZRegime::Small, &mut rng).unwrap();
            let (p, info) = psi(1, &z, 40, tcap, W).unwrap();
            assert!(info.omitted_val >= W);
            let u = u_val(&z, W + 10).unwrap();
            let rhs = chi_t(&z, tcap, W + 10).unwrap().scalar_mul(&pi_tilde(&f, W + 10).mul(&u));
            assert_small(&p.sub(&rhs).unwrap(), W - 5);
        }
    }
}

#[test]
fn sampling_regimes() {
    let mut rng = ChaCha8Rng::seed_from_u64(41);
    for f in fields() {
        let q = f.q() as i64;
        for _ in 0..20 {
            assert!(sample_z(&f, ZRegime::Small, &mut rng).unwrap().lead().unwrap() >= 1);
            assert!(sample_z(&f, ZRegime::BelowQ, &mut rng).unwrap().lead().unwrap() > -(q - 1));
            match sample_z(&f, ZRegime::Imaginary { scale: 2 }, &mut rng) {
                Ok(z) => assert_eq!(z.imaginary_val(), Some(-2)),
                Err(_) => assert_eq!(f.order(), f.q()),
            }
        }
    }
}
