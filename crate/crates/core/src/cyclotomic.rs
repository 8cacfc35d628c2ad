//! Exact Carlitz cyclotomic objects: `F_q`-linear polynomials `C_a`, `E_j`,
//! the `𝔭`-torsion field `K(ζ)[Z]/(C_𝔭(Z)/Z)`, the Galois action, Gauss-Thakur
//! sums and the interpolation polynomials `M_𝔪`.

use std::fmt;
use std::sync::Arc;

use crate::carlitz::{carlitz_constants, e_c};
use crate::error::{Error, Result};
use crate::field::{FieldSpec, GfElem};
use crate::laurent::{embed_theta_poly_exact, RamLaurent};
use crate::poly::{enumerate_a, GFPoly, Var, MAX_ENUMERATION};
use crate::ratfunc::RatFunc;
use crate::scalar::{Scalar, UPoly};

fn rat(p: GFPoly) -> RatFunc {
    RatFunc::from_poly(p)
}

fn rat_const(field: &Arc<FieldSpec>, c: GfElem) -> RatFunc {
    RatFunc::constant(field, c, Var::Theta)
}

fn check_guard(field: &FieldSpec, j: u32) -> Result<()> {
    match (field.q() as u64).checked_pow(j) {
        Some(v) if v <= MAX_ENUMERATION => Ok(()),
        _ => Err(Error::SizeLimitExceeded(format!("q^{j} exceeds {MAX_ENUMERATION}"))),
    }
}

/// `Σ_j c_j Z^{q^j}` with coefficients in `F_{q^d}(θ)`.
#[derive(Clone, PartialEq)]
pub struct LinPoly {
    field: Arc<FieldSpec>,
    coeffs: Vec<RatFunc>,
}

impl fmt::Debug for LinPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let q = self.field.q() as u64;
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(j, c)| format!("({c})*Z^{}", q.pow(j as u32)))
            .collect();
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

impl LinPoly {
    pub fn new(field: &Arc<FieldSpec>, coeffs: Vec<RatFunc>) -> Self {
        let mut p = LinPoly {
            field: field.clone(),
            coeffs,
        };
        while p.coeffs.last().is_some_and(|c| c.is_zero()) {
            p.coeffs.pop();
        }
        p
    }

    /// The identity `Z`.
    pub fn identity(field: &Arc<FieldSpec>) -> Self {
        Self::new(field, vec![rat_const(field, GfElem::ONE)])
    }

    pub fn coeffs(&self) -> &[RatFunc] {
        &self.coeffs
    }

    /// Coefficient of `Z^{q^j}`.
    pub fn coeff(&self, j: usize) -> RatFunc {
        self.coeffs
            .get(j)
            .cloned()
            .unwrap_or_else(|| RatFunc::zero(&self.field, Var::Theta))
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new(&self.field, (0..n).map(|j| self.coeff(j).add(&other.coeff(j))).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new(&self.field, (0..n).map(|j| self.coeff(j).sub(&other.coeff(j))).collect())
    }

    pub fn scale(&self, c: &RatFunc) -> Self {
        Self::new(&self.field, self.coeffs.iter().map(|x| x.mul(c)).collect())
    }

    /// `self ∘ other`: `Σ a_i b_j^{q^i} Z^{q^{i+j}}`.
    pub fn compose(&self, other: &Self) -> Self {
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return Self::new(&self.field, Vec::new());
        }
        let mut out = vec![RatFunc::zero(&self.field, Var::Theta); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].add(&a.mul(&b.frobenius(i as u32)));
            }
        }
        Self::new(&self.field, out)
    }

    /// Dense form as a polynomial in `Z`.
    pub fn to_upoly(&self) -> UPoly<RatFunc> {
        let zero = RatFunc::zero(&self.field, Var::Theta);
        let q = self.field.q() as usize;
        let mut out = UPoly::zero(&zero);
        for (j, c) in self.coeffs.iter().enumerate() {
            out = out.add(&UPoly::monomial(c.clone(), q.pow(j as u32)));
        }
        out
    }

    /// Evaluation at any element supporting the ring operations, with the
    /// coefficients mapped in by `embed`.
    pub fn eval_with<T: Scalar>(&self, x: &T, embed: impl Fn(&RatFunc) -> Result<T>) -> Result<T> {
        let q = self.field.q() as u64;
        let mut acc = x.zero_like();
        let mut xp = x.clone();
        for (j, c) in self.coeffs.iter().enumerate() {
            if j > 0 {
                xp = xp.pow(q);
            }
            if !c.is_zero() {
                acc = acc.add(&embed(c)?.mul(&xp));
            }
        }
        Ok(acc)
    }

    pub fn eval_ratfunc(&self, x: &RatFunc) -> RatFunc {
        self.eval_with(x, |c| Ok(c.clone())).expect("exact")
    }

    /// Evaluation in the completion, coefficients embedded to `prec`.
    pub fn eval_laurent(&self, x: &RamLaurent, prec: i64) -> Result<RamLaurent> {
        self.eval_with(x, |c| embed_ratfunc(c, prec))
    }
}

/// `C_a` from `C_θ = θZ + Z^q` by composition.
pub fn carlitz_poly(a: &GFPoly) -> Result<LinPoly> {
    let field = a.field();
    let deg = a.degree().unwrap_or(0) as u32;
    check_guard(field, deg)?;
    let c_theta = LinPoly::new(
        field,
        vec![rat(GFPoly::x(field, Var::Theta)), rat_const(field, GfElem::ONE)],
    );
    let mut power = LinPoly::identity(field);
    let mut acc = LinPoly::new(field, Vec::new());
    for (i, &c) in a.coeffs().iter().enumerate() {
        if i > 0 {
            power = c_theta.compose(&power);
        }
        if !c.is_zero() {
            acc = acc.add(&power.scale(&rat_const(field, c)));
        }
    }
    Ok(acc)
}

/// `E_j(Z) = d_j^{-1} ∏_{a∈A(j)} (Z - a)`.
pub fn basis_e(field: &Arc<FieldSpec>, j: u32) -> Result<LinPoly> {
    check_guard(field, j)?;
    let zero = RatFunc::zero(field, Var::Theta);
    let mut prod = UPoly::constant(rat_const(field, GfElem::ONE));
    for a in enumerate_a(field, j, false)? {
        prod = prod.mul(&UPoly::linear_root(&rat(a)));
    }
    let (d, _) = carlitz_constants(field, j)?;
    let dinv = rat(d).inv()?;
    let q = field.q() as usize;
    let mut coeffs = Vec::new();
    for (k, c) in prod.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let mut e = 0;
        let mut p = 1;
        while p < k {
            p *= q;
            e += 1;
        }
        if p != k {
            return Err(Error::ShapeMismatch(format!("E_{j} has a term Z^{k}")));
        }
        if coeffs.len() <= e {
            coeffs.resize(e + 1, zero.clone());
        }
        coeffs[e] = c.mul(&dinv);
    }
    Ok(LinPoly::new(field, coeffs))
}

/// The torsion field `K(ζ)[Z]/(ρ_𝔭)` with `ρ_𝔭 = C_𝔭(Z)/Z`; `λ` is the
/// class of `Z`.
pub struct CycField {
    field: Arc<FieldSpec>,
    prime: GFPoly,
    zeta: GfElem,
    rho: UPoly<RatFunc>,
    /// `C_{θ^i}(λ)` for `i < d`.
    torsion_basis: Vec<UPoly<RatFunc>>,
}

impl fmt::Debug for CycField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycField(p = {}, ζ = {})", self.prime, self.field.render(self.zeta))
    }
}

#[derive(Clone)]
pub struct CycElem {
    ctx: Arc<CycField>,
    poly: UPoly<RatFunc>,
}

impl PartialEq for CycElem {
    fn eq(&self, other: &Self) -> bool {
        self.poly == other.poly
    }
}

impl fmt::Debug for CycElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for CycElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .poly
            .coeffs()
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| match i {
                0 => format!("({c})"),
                1 => format!("({c})*λ"),
                _ => format!("({c})*λ^{i}"),
            })
            .collect();
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// Builds the `𝔭`-torsion field with chosen root `ζ` of `𝔭`.
pub fn make_torsion_field(prime: &GFPoly, zeta: GfElem) -> Result<Arc<CycField>> {
    if !prime.is_monic() || !prime.over_fq() || !prime.is_irreducible_fq() {
        return Err(Error::NotIrreducible);
    }
    if !prime.eval(zeta).is_zero() {
        return Err(Error::RootMismatch);
    }
    let field = prime.field().clone();
    let d = prime.degree().unwrap();
    let cp = carlitz_poly(prime)?.to_upoly();
    let zero = RatFunc::zero(&field, Var::Theta);
    let rho = UPoly::new(cp.coeffs()[1..].to_vec(), &zero);
    let mut ctx = CycField {
        field: field.clone(),
        prime: prime.clone(),
        zeta,
        rho,
        torsion_basis: Vec::new(),
    };
    let lambda = UPoly::monomial(rat_const(&field, GfElem::ONE), 1);
    let mut cur = ctx.reduce(&lambda);
    let theta = rat(GFPoly::x(&field, Var::Theta));
    let q = field.q() as u64;
    for i in 0..d {
        ctx.torsion_basis.push(cur.clone());
        if i + 1 < d {
            // C_θ(x) = θ x + x^q
            let mut xq = UPoly::constant(rat_const(&field, GfElem::ONE));
            for _ in 0..q {
                xq = ctx.reduce(&xq.mul(&cur));
            }
            cur = ctx.reduce(&cur.scale(&theta).add(&xq));
        }
    }
    Ok(Arc::new(ctx))
}

impl CycField {
    fn reduce(&self, p: &UPoly<RatFunc>) -> UPoly<RatFunc> {
        if p.degree().is_none_or(|d| d < self.rho.degree().unwrap()) {
            return p.clone();
        }
        p.divmod(&self.rho).expect("monic modulus").1
    }

    pub fn field(&self) -> &Arc<FieldSpec> {
        &self.field
    }
    pub fn prime(&self) -> &GFPoly {
        &self.prime
    }
    pub fn zeta(&self) -> GfElem {
        self.zeta
    }
    pub fn d(&self) -> usize {
        self.prime.degree().unwrap()
    }
    /// `ρ_𝔭 = C_𝔭(Z)/Z`.
    pub fn modulus(&self) -> &UPoly<RatFunc> {
        &self.rho
    }
    /// `χ(a) = a(ζ)`.
    pub fn chi(&self, a: &GFPoly) -> GfElem {
        a.eval(self.zeta)
    }
}

/// Constructors on a shared context.
pub trait CycFieldExt {
    fn elem(&self, poly: UPoly<RatFunc>) -> CycElem;
    fn lambda(&self) -> CycElem;
    fn from_ratfunc(&self, c: RatFunc) -> CycElem;
    fn from_gf(&self, c: GfElem) -> CycElem;
    fn from_theta_poly(&self, a: &GFPoly) -> CycElem;
    fn torsion(&self, a: &GFPoly) -> CycElem;
}

impl CycFieldExt for Arc<CycField> {
    fn elem(&self, poly: UPoly<RatFunc>) -> CycElem {
        CycElem {
            ctx: self.clone(),
            poly: self.reduce(&poly),
        }
    }

    fn lambda(&self) -> CycElem {
        self.elem(UPoly::monomial(rat_const(&self.field, GfElem::ONE), 1))
    }

    fn from_ratfunc(&self, c: RatFunc) -> CycElem {
        self.elem(UPoly::constant(c))
    }

    fn from_gf(&self, c: GfElem) -> CycElem {
        self.from_ratfunc(rat_const(&self.field, c))
    }

    fn from_theta_poly(&self, a: &GFPoly) -> CycElem {
        self.from_ratfunc(rat(a.clone()))
    }

    /// `C_a(λ)`, using `C_a(λ) = C_{a mod 𝔭}(λ)`.
    fn torsion(&self, a: &GFPoly) -> CycElem {
        let r = a.rem(&self.prime).expect("nonzero prime");
        let zero = RatFunc::zero(&self.field, Var::Theta);
        let mut acc = UPoly::zero(&zero);
        for (i, &c) in r.coeffs().iter().enumerate() {
            if !c.is_zero() {
                acc = acc.add(&self.torsion_basis[i].scale(&rat_const(&self.field, c)));
            }
        }
        self.elem(acc)
    }
}

impl CycElem {
    pub fn ctx(&self) -> &Arc<CycField> {
        &self.ctx
    }

    /// Coefficients in `λ`, low to high.
    pub fn coeffs(&self) -> &[RatFunc] {
        self.poly.coeffs()
    }

    pub fn poly(&self) -> &UPoly<RatFunc> {
        &self.poly
    }

    /// True when every coefficient lies in `F_{q^d}[θ]`.
    pub fn has_polynomial_coeffs(&self) -> bool {
        self.poly.coeffs().iter().all(|c| c.is_polynomial())
    }
}

impl Scalar for CycElem {
    fn zero_like(&self) -> Self {
        CycElem {
            ctx: self.ctx.clone(),
            poly: UPoly::zero(self.poly.template()),
        }
    }
    fn one_like(&self) -> Self {
        self.ctx.from_gf(GfElem::ONE)
    }
    fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }
    fn add(&self, other: &Self) -> Self {
        CycElem {
            ctx: self.ctx.clone(),
            poly: self.poly.add(&other.poly),
        }
    }
    fn sub(&self, other: &Self) -> Self {
        CycElem {
            ctx: self.ctx.clone(),
            poly: self.poly.sub(&other.poly),
        }
    }
    fn mul(&self, other: &Self) -> Self {
        self.ctx.elem(self.poly.mul(&other.poly))
    }
    fn neg(&self) -> Self {
        CycElem {
            ctx: self.ctx.clone(),
            poly: UPoly::zero(self.poly.template()).sub(&self.poly),
        }
    }
    /// Extended gcd against `ρ_𝔭`; a non-constant gcd means the modulus is
    /// reducible and is reported, not hidden.
    fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::NonInvertible("zero".into()));
        }
        let (g, s) = self.poly.ext_gcd(&self.ctx.rho)?;
        if g.degree() != Some(0) {
            return Err(Error::NonInvertible(format!("gcd with the torsion modulus has degree {:?}", g.degree())));
        }
        let g0 = g.coeff(0).inv()?;
        Ok(self.ctx.elem(s.scale(&g0)))
    }
    fn mul_int(&self, k: i64) -> Self {
        let c = self.ctx.field.from_int(k);
        CycElem {
            ctx: self.ctx.clone(),
            poly: self.poly.scale(&rat_const(&self.ctx.field, c)),
        }
    }
}

/// `σ_a`: the automorphism with `λ ↦ C_a(λ)`, fixing `K(ζ)`.
pub fn galois_sigma(a: &GFPoly, x: &CycElem) -> Result<CycElem> {
    let ctx = x.ctx();
    if a.gcd(ctx.prime()).degree() != Some(0) {
        return Err(Error::NotCoprime);
    }
    let y = ctx.torsion(a);
    let mut acc = x.zero_like();
    for c in x.coeffs().iter().rev() {
        acc = acc.mul(&y).add(&ctx.from_ratfunc(c.clone()));
    }
    Ok(acc)
}

/// Residues `A(d)`, i.e. representatives of `A/𝔭A`.
fn residues(ctx: &CycField) -> Result<Vec<GFPoly>> {
    enumerate_a(&ctx.field, ctx.d() as u32, false)
}

/// `g(χ) = Σ'_{a∈A(d)} χ(a)^{-1} C_a(λ)`.
pub fn gauss_sum(ctx: &Arc<CycField>) -> Result<CycElem> {
    let f = &ctx.field;
    let mut acc = ctx.from_gf(GfElem::ZERO);
    for a in residues(ctx)? {
        if a.is_zero() {
            continue;
        }
        let w = f.inv(ctx.chi(&a)).ok_or(Error::NotCoprime)?;
        acc = acc.add(&ctx.torsion(&a).mul(&ctx.from_gf(w)));
    }
    Ok(acc)
}

/// `g(χ^{-1}) = (-1)^d 𝔭 / g(χ)`; the result is checked to have
/// coefficients in `F_{q^d}[θ]`.
pub fn gauss_sum_inv(ctx: &Arc<CycField>, g: &CycElem) -> Result<CycElem> {
    let f = &ctx.field;
    let sign = if ctx.d() % 2 == 1 { f.neg_one() } else { GfElem::ONE };
    let num = ctx.from_theta_poly(&ctx.prime.scale(sign));
    let out = num.mul(&g.inv()?);
    if !out.has_polynomial_coeffs() {
        return Err(Error::NonInvertible("g(χ^{-1}) has non-polynomial coefficients".into()));
    }
    Ok(out)
}

/// Lagrange interpolation polynomial `M_𝔭` through `C_b(λ) ↦ 𝔭 χ(b)`
/// (`with_character`) or `C_b(λ) ↦ 𝔭`, over the torsion field.
pub fn interpolation_m(ctx: &Arc<CycField>, with_character: bool) -> Result<UPoly<CycElem>> {
    let p = ctx.from_theta_poly(&ctx.prime);
    let mut nodes = Vec::new();
    let mut values = Vec::new();
    for b in residues(ctx)? {
        nodes.push(ctx.torsion(&b));
        let v = if with_character { ctx.chi(&b) } else { GfElem::ONE };
        values.push(p.mul(&ctx.from_gf(v)));
    }
    UPoly::interpolate(&nodes, &values)
}

/// `∏_{b∈A/𝔭} (Z - C_b(λ))`, which must equal `C_𝔭(Z)`.
pub fn node_polynomial(ctx: &Arc<CycField>) -> Result<UPoly<CycElem>> {
    let mut acc = UPoly::constant(ctx.from_gf(GfElem::ONE));
    for b in residues(ctx)? {
        acc = acc.mul(&UPoly::linear_root(&ctx.torsion(&b)));
    }
    Ok(acc)
}

/// `M_𝔭 = (-1)^d g(χ^{-1}) Σ_{j<d} Z^{q^j} Σ_{a∈A(d)∖A(j)} a(ζ)^{-1} E_j(a)`.
pub fn m_from_gauss(ctx: &Arc<CycField>, g_inv: &CycElem) -> Result<UPoly<CycElem>> {
    let f = &ctx.field;
    let d = ctx.d();
    let q = f.q() as usize;
    let sign = if d % 2 == 1 { f.neg_one() } else { GfElem::ONE };
    let lead = g_inv.mul(&ctx.from_gf(sign));
    let mut out = UPoly::zero(&ctx.from_gf(GfElem::ZERO));
    let all = residues(ctx)?;
    for j in 0..d {
        let ej = basis_e(f, j as u32)?;
        let mut s = RatFunc::zero(f, Var::Theta);
        for a in &all {
            if a.degree().is_none_or(|k| k < j) {
                continue;
            }
            let w = f.inv(ctx.chi(a)).ok_or(Error::NotCoprime)?;
            s = s.add(&ej.eval_ratfunc(&rat(a.clone())).mul(&rat_const(f, w)));
        }
        let c = lead.mul(&ctx.from_ratfunc(s));
        out = out.add(&UPoly::monomial(c, q.pow(j as u32)));
    }
    Ok(out)
}

/// Image of a rational function in `θ` in the completion.
pub fn embed_ratfunc(c: &RatFunc, prec: i64) -> Result<RamLaurent> {
    let num = embed_theta_poly_exact(c.num());
    if c.is_polynomial() {
        let lead_inv = c.field().inv(c.den().leading()).expect("nonzero");
        return Ok(num.scale(lead_inv));
    }
    let den = embed_theta_poly_exact(c.den());
    let need = prec - num.val().min(prec);
    Ok(num.mul(&den.inv_to(need)?).truncated(prec))
}

/// Sends `λ ↦ e_C(1/𝔭)` and `θ ↦ θ`.
pub fn embed(x: &CycElem, prec: i64) -> Result<RamLaurent> {
    let ctx = x.ctx();
    let q1 = ctx.field.q() as i64 - 1;
    let pinv = embed_theta_poly_exact(ctx.prime()).inv_to(prec + 4 * q1 * ctx.d() as i64)?;
    let lam = e_c(&pinv, prec + 4 * q1 * ctx.d() as i64)?;
    embed_with(x, &lam, prec)
}

/// Embedding with a precomputed numeric torsion value.
pub fn embed_with(x: &CycElem, lam: &RamLaurent, prec: i64) -> Result<RamLaurent> {
    let mut acc = RamLaurent::zero(lam.field(), crate::laurent::EXACT);
    for c in x.coeffs().iter().rev() {
        acc = acc.mul(lam).add(&embed_ratfunc(c, prec)?);
    }
    Ok(acc.truncated(prec))
}

/// `Σ_{a∈A⁺(j)} a(ζ)^{-1}` and `χ(ℓ_j)^{-1}`.
pub fn monic_sum_scalar(field: &Arc<FieldSpec>, j: u32, zeta: GfElem) -> Result<(GfElem, GfElem)> {
    check_guard(field, j)?;
    let mut s = GfElem::ZERO;
    for a in enumerate_a(field, j, true)? {
        let v = a.eval(zeta);
        s = field.add(s, field.inv(v).ok_or(Error::ZetaRootOfDenominator)?);
    }
    let (_, l) = carlitz_constants(field, j)?;
    let lz = field.inv(l.eval(zeta)).ok_or(Error::ZetaRootOfDenominator)?;
    Ok((s, lz))
}

/// `∏_{k<j} (y - x^{q^k})` as a polynomial in `y` over `F_q(x)`.
fn y_product(field: &Arc<FieldSpec>, range: std::ops::Range<u32>) -> UPoly<RatFunc> {
    let q = field.q() as u64;
    let x = GFPoly::x(field, Var::X);
    let mut acc = UPoly::constant(RatFunc::constant(field, GfElem::ONE, Var::X));
    for k in range {
        acc = acc.mul(&UPoly::linear_root(&RatFunc::from_poly(x.pow(q.pow(k)))));
    }
    acc
}

fn ell_x(field: &Arc<FieldSpec>, j: u32) -> Result<RatFunc> {
    let (_, l) = carlitz_constants(field, j)?;
    Ok(RatFunc::from_poly(l.with_var(Var::X)))
}

/// Both sides of `Σ_{a∈A⁺(j)} a(y)/a(x) = ℓ_j(x)^{-1} ∏_{k<j} (y - x^{q^k})`.
pub fn monic_sum_identity(field: &Arc<FieldSpec>, j: u32) -> Result<(UPoly<RatFunc>, UPoly<RatFunc>)> {
    check_guard(field, j)?;
    let zero = RatFunc::zero(field, Var::X);
    let mut lhs = UPoly::zero(&zero);
    for a in enumerate_a(field, j, true)? {
        let ax = RatFunc::from_poly(a.clone().with_var(Var::X)).inv()?;
        let ay = UPoly::new(
            a.coeffs().iter().map(|&c| RatFunc::constant(field, c, Var::X)).collect(),
            &zero,
        );
        lhs = lhs.add(&ay.scale(&ax));
    }
    let rhs = y_product(field, 0..j).scale(&ell_x(field, j)?.inv()?);
    Ok((lhs, rhs))
}

/// Both sides of the telescoping identity
/// `Σ_{j<d} ℓ_j(x)^{-1} ∏_{k<j}(y - x^{q^k}) = ℓ_{d-1}(x)^{-1} ∏_{1≤j<d}(y - x^{q^j})`.
pub fn telescope_pair(field: &Arc<FieldSpec>, d: u32) -> Result<(UPoly<RatFunc>, UPoly<RatFunc>)> {
    if d == 0 {
        return Err(Error::ShapeMismatch("d must be at least 1".into()));
    }
    check_guard(field, d)?;
    let zero = RatFunc::zero(field, Var::X);
    let mut lhs = UPoly::zero(&zero);
    for j in 0..d {
        lhs = lhs.add(&y_product(field, 0..j).scale(&ell_x(field, j)?.inv()?));
    }
    let rhs = y_product(field, 1..d).scale(&ell_x(field, d - 1)?.inv()?);
    Ok((lhs, rhs))
}

/// Numeric `M_𝔪^J` for square-free `𝔪`: interpolates `e_C(b/𝔪) ↦ 𝔪 ∏_{j∈J} b(ζ_j)`
/// over `b ∈ A/𝔪A`.
pub fn interpolation_m_numeric(
    m: &GFPoly,
    roots: &[GfElem],
    prec: i64,
) -> Result<UPoly<RamLaurent>> {
    let field = m.field();
    let deg = m.degree().ok_or(Error::DivisionByZeroPoly)? as u32;
    check_guard(field, deg)?;
    let q1 = field.q() as i64 - 1;
    let me = embed_theta_poly_exact(m);
    let extra = 4 * q1 * deg as i64 + 8;
    let minv = me.inv_to(prec + extra)?;
    let mut nodes = Vec::new();
    let mut values = Vec::new();
    for b in enumerate_a(field, deg, false)? {
        let x = embed_theta_poly_exact(&b).mul(&minv);
        nodes.push(e_c(&x, prec + extra)?);
        let mut w = GfElem::ONE;
        for &z in roots {
            w = field.mul(w, b.eval(z));
        }
        values.push(me.scale(w));
    }
    let p = UPoly::interpolate(&nodes, &values)?;
    Ok(UPoly::new(p.coeffs().iter().map(|c| c.truncated(prec)).collect(), p.template()))
}
