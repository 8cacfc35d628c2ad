use std::sync::Arc;

use carlitz::carlitz::{carlitz_constants, omega};
use carlitz::cyclotomic::*;
use carlitz::poly::{enumerate_a, roots_in_ext};
use carlitz::{make_field, EvalSpec, FieldSpec, GFPoly, GfElem, RatFunc, Scalar, UPoly, Var};

fn torsion_cases() -> Vec<(Arc<FieldSpec>, GFPoly)> {
    let f21 = make_field(2, 1, 1).unwrap();
    let f22 = make_field(2, 1, 2).unwrap();
    let f23 = make_field(2, 1, 3).unwrap();
    let f32 = make_field(3, 1, 2).unwrap();
    let f31 = make_field(3, 1, 1).unwrap();
    vec![
        (f21.clone(), GFPoly::from_fq(&f21, &[0, 1], Var::Theta)),
        (f22.clone(), GFPoly::from_fq(&f22, &[1, 1, 1], Var::Theta)),
        (f23.clone(), GFPoly::from_fq(&f23, &[1, 1, 0, 1], Var::Theta)),
        (f31.clone(), GFPoly::from_fq(&f31, &[1, 1], Var::Theta)),
        (f32.clone(), GFPoly::from_fq(&f32, &[1, 0, 1], Var::Theta)),
    ]
}

fn sign(f: &FieldSpec, k: usize) -> GfElem {
    if k % 2 == 1 {
        f.neg_one()
    } else {
        GfElem::ONE
    }
}

#[test]
fn carlitz_module_is_a_ring_map() {
    for f in [make_field(2, 1, 1).unwrap(), make_field(3, 1, 1).unwrap()] {
        let all = enumerate_a(&f, 3, false).unwrap();
        for a in &all {
            for b in &all {
                let (ca, cb) = (carlitz_poly(a).unwrap(), carlitz_poly(b).unwrap());
                assert_eq!(carlitz_poly(&a.add(b)).unwrap(), ca.add(&cb));
                assert_eq!(carlitz_poly(&a.mul(b)).unwrap(), ca.compose(&cb));
            }
        }
    }
}

#[test]
fn e_basis_matches_carlitz_polys() {
    for f in [make_field(2, 1, 1).unwrap(), make_field(3, 1, 1).unwrap()] {
        let q = f.q() as u64;
        assert_eq!(basis_e(&f, 0).unwrap(), LinPoly::identity(&f));
        let (d1, _) = carlitz_constants(&f, 1).unwrap();
        let e1 = basis_e(&f, 1).unwrap();
        let d1inv = RatFunc::from_poly(d1).inv().unwrap();
        assert_eq!(e1.coeff(0), d1inv.neg());
        assert_eq!(e1.coeff(1), d1inv);
        let es: Vec<LinPoly> = (0..4).map(|j| basis_e(&f, j).unwrap()).collect();
        for a in enumerate_a(&f, 4, false).unwrap().into_iter().step_by(q as usize + 1) {
            let ca = carlitz_poly(&a).unwrap();
            let coeffs = es.iter().map(|e| e.eval_ratfunc(&RatFunc::from_poly(a.clone()))).collect();
            assert_eq!(LinPoly::new(&f, coeffs), ca, "a = {a}");
        }
    }
}

#[test]
fn torsion_and_galois_action() {
    for (f, p) in torsion_cases() {
        let d = p.degree().unwrap();
        let zeta = roots_in_ext(&p).unwrap()[0];
        let ctx = make_torsion_field(&p, zeta).unwrap();
        assert_eq!(ctx.modulus().degree(), Some(f.q().pow(d as u32) as usize - 1));
        // λ is a root of ρ
        let lam = ctx.lambda();
        let rho_lam = ctx
            .modulus()
            .coeffs()
            .iter()
            .rev()
            .fold(lam.zero_like(), |acc, c| acc.mul(&lam).add(&ctx.from_ratfunc(c.clone())));
        assert!(rho_lam.is_zero());
        for a in enumerate_a(&f, 3, false).unwrap() {
            let divisible = a.rem(&p).unwrap().is_zero();
            assert_eq!(ctx.torsion(&a).is_zero(), divisible);
        }
        let g = gauss_sum(&ctx).unwrap();
        assert!(!g.is_zero());
        let gi = gauss_sum_inv(&ctx, &g).unwrap();
        assert_eq!(g.mul(&gi), ctx.from_theta_poly(&p.scale(sign(&f, d))));
        let units: Vec<GFPoly> = enumerate_a(&f, d as u32, false).unwrap().into_iter().filter(|a| !a.is_zero()).collect();
        assert_eq!(galois_sigma(&units[0], &g).unwrap(), g); // a = 1
        for a in &units {
            let lhs = galois_sigma(a, &g).unwrap();
            assert_eq!(lhs, g.mul(&ctx.from_gf(a.eval(zeta))));
            for b in units.iter().take(3) {
                let ab = a.mul(b).rem(&p).unwrap();
                let comp = galois_sigma(a, &galois_sigma(b, &lam).unwrap()).unwrap();
                assert_eq!(comp, galois_sigma(&ab, &lam).unwrap());
            }
        }
        assert_eq!(galois_sigma(&p, &lam).unwrap_err(), carlitz::Error::NotCoprime);
        if d == 1 && f.q() == 2 {
            assert_eq!(g, lam.neg());
        }
    }
}

#[test]
fn interpolation_agrees_with_gauss_formula() {
    for (f, p) in torsion_cases() {
        let d = p.degree().unwrap();
        let q = f.q() as usize;
        let zeta = roots_in_ext(&p).unwrap()[0];
        let ctx = make_torsion_field(&p, zeta).unwrap();
        // the node polynomial is C_𝔭(Z)
        let nodes = node_polynomial(&ctx).unwrap();
        let cp = carlitz_poly(&p).unwrap().to_upoly();
        let cp_lifted = UPoly::new(cp.coeffs().iter().map(|c| ctx.from_ratfunc(c.clone())).collect(), &ctx.from_gf(GfElem::ZERO));
        assert_eq!(nodes, cp_lifted);
        let m = interpolation_m(&ctx, true).unwrap();
        assert!(m.degree().unwrap() < q.pow(d as u32));
        for b in enumerate_a(&f, d as u32, false).unwrap() {
            let v = m.eval(&ctx.torsion(&b));
            assert_eq!(v, ctx.from_theta_poly(&p).mul(&ctx.from_gf(b.eval(zeta))));
        }
        let g = gauss_sum(&ctx).unwrap();
        let gi = gauss_sum_inv(&ctx, &g).unwrap();
        let mg = m_from_gauss(&ctx, &gi).unwrap();
        assert_eq!(m, mg);
        for (k, c) in m.coeffs().iter().enumerate() {
            if !c.is_zero() {
                assert!((0..d).any(|j| q.pow(j as u32) == k), "exponent {k}");
            }
        }
        // leading and linear coefficients
        let (_, l) = carlitz_constants(&f, d as u32 - 1).unwrap();
        let chi_l_inv = f.inv(l.eval(zeta)).unwrap();
        let s = sign(&f, d + 1);
        let top = m.coeff(q.pow(d as u32 - 1));
        assert_eq!(top, gi.mul(&ctx.from_gf(f.mul(s, chi_l_inv))));
        let th_minus = GFPoly::new(&f, vec![f.neg(zeta), GfElem::ONE], Var::Theta);
        let lin = ctx
            .from_ratfunc(RatFunc::new(p.scale(f.mul(s, chi_l_inv)), th_minus).unwrap())
            .mul(&gi);
        assert_eq!(m.coeff(1), lin);
        // perturbing a coefficient breaks a node equation
        let mut bad = m.coeffs().to_vec();
        bad[1] = bad[1].add(&ctx.from_gf(GfElem::ONE));
        let bad = UPoly::new(bad, &ctx.from_gf(GfElem::ZERO));
        let broken = enumerate_a(&f, d as u32, false)
            .unwrap()
            .iter()
            .any(|b| bad.eval(&ctx.torsion(b)) != ctx.from_theta_poly(&p).mul(&ctx.from_gf(b.eval(zeta))));
        assert!(broken);
    }
}

#[test]
fn telescope_and_monic_sums() {
    for f in [make_field(2, 1, 1).unwrap(), make_field(3, 1, 1).unwrap()] {
        let (l, r) = telescope_pair(&f, 1).unwrap();
        assert_eq!(l, r);
        assert_eq!(l.degree(), Some(0));
        for d in 2..=4 {
            let (l, r) = telescope_pair(&f, d).unwrap();
            assert_eq!(l, r, "d = {d}");
        }
        for j in 0..=3 {
            let (l, r) = monic_sum_identity(&f, j).unwrap();
            assert_eq!(l, r, "j = {j}");
        }
    }
    let f3 = make_field(3, 1, 1).unwrap();
    let (l, r) = telescope_pair(&f3, 5).unwrap();
    assert_eq!(l, r);
    for (f, p) in torsion_cases() {
        let d = p.degree().unwrap() as u32;
        let zeta = roots_in_ext(&p).unwrap()[0];
        for j in 0..d {
            let (s, expect) = monic_sum_scalar(&f, j, zeta).unwrap();
            assert_eq!(s, expect);
        }
        assert_eq!(monic_sum_scalar(&f, 0, zeta).unwrap().0, GfElem::ONE);
    }
}

#[test]
fn embedding_and_anderson_pellarin() {
    let w = 30;
    for (f, p) in torsion_cases() {
        let d = p.degree().unwrap();
        for (idx, zeta) in roots_in_ext(&p).unwrap().into_iter().enumerate() {
            let ctx = make_torsion_field(&p, zeta).unwrap();
            let lam = ctx.lambda();
            let lam_num = embed(&lam, w).unwrap();
            let cp = carlitz_poly(&p).unwrap();
            let c = cp.eval_laurent(&lam_num, w).unwrap();
            assert!(c.is_zero(), "C_p(λ) = {c}");
            let a = ctx.torsion(&GFPoly::from_fq(&f, &[1, 1], Var::Theta));
            let b = lam.mul(&lam).add(&ctx.from_gf(GfElem::ONE));
            let lhs = embed(&a.mul(&b), w).unwrap();
            let rhs = embed(&a, w + 10).unwrap().mul(&embed(&b, w + 10).unwrap());
            assert!(lhs.sub(&rhs).is_zero());
            // ω at t = ζ is -χ(ℓ_{d-1}) g(χ)
            let g = gauss_sum(&ctx).unwrap();
            let (_, l) = carlitz_constants(&f, d as u32 - 1).unwrap();
            let target = g.mul(&ctx.from_gf(f.neg(l.eval(zeta))));
            let spec = EvalSpec::new(vec![p.clone()], &[idx]).unwrap();
            let om = omega(&f, 40, w + 5).ev_map(&spec).unwrap();
            let diff = embed(&target, w).unwrap().sub(&om);
            assert!(diff.is_zero() && diff.prec() >= w - 5, "{diff}");
        }
    }
}

#[test]
fn numeric_interpolation_matches_exact() {
    let w = 30;
    for (_, p) in torsion_cases().into_iter().take(4) {
        let zeta = roots_in_ext(&p).unwrap()[0];
        let ctx = make_torsion_field(&p, zeta).unwrap();
        let exact = interpolation_m(&ctx, true).unwrap();
        let numeric = interpolation_m_numeric(&p, &[zeta], w).unwrap();
        let lam = embed(&ctx.lambda(), w + 20).unwrap();
        for k in 0..exact.coeffs().len().max(numeric.coeffs().len()) {
            let e = embed_with(&exact.coeff(k), &lam, w).unwrap();
            let diff = e.sub(&numeric.coeff(k));
            assert!(diff.is_zero(), "k = {k}: {diff}");
        }
    }
}
