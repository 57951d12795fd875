//! The quotient ring L[X;θ]/(H_Λ(X)) with H_Λ(X) = ∏(X^n − λ): canonical
//! representatives, the sum-rank weight, Λ-Dickson matrices, annihilators,
//! adjoints and the ⟨·,·⟩_Λ bilinear form.

use std::hash::{Hash, Hasher};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::frameworks;
use crate::gf::{Elem, FieldTag, Tower};
use crate::linalg::Matrix;
use crate::skew::SkewPoly;

/// The ambient quotient descriptor: Λ ⊆ K*, the norm representatives α,
/// and H_Λ(X). Immutable; share via `Arc`.
pub struct LambdaContext {
    tower: Arc<Tower>,
    lambdas: Vec<Elem>,
    alphas: Vec<Elem>,
    h_poly: SkewPoly,
    is_group: bool,
    hash: u64,
}

impl LambdaContext {
    /// Build a context from distinct nonzero λ_i ∈ K*. When `alphas` is
    /// absent they default to the deterministic norm representatives.
    pub fn new(
        tower: Arc<Tower>,
        lambdas: Vec<Elem>,
        alphas: Option<Vec<Elem>>,
    ) -> Result<Arc<LambdaContext>> {
        let ell = lambdas.len();
        let max = tower.q() as usize - 1;
        if ell == 0 || ell > max {
            return Err(Error::TooManyBlocks { got: ell, max });
        }
        for (i, l) in lambdas.iter().enumerate() {
            if l.is_zero() {
                return Err(Error::ZeroLambda);
            }
            if !tower.in_field(l, FieldTag::K) {
                return Err(Error::HomeFieldViolation);
            }
            if lambdas[..i].contains(l) {
                return Err(Error::DuplicateLambda);
            }
        }
        let alphas = match alphas {
            Some(a) => {
                if a.len() != ell {
                    return Err(Error::NormMismatch);
                }
                for (ai, li) in a.iter().zip(&lambdas) {
                    if ai.is_zero() || !tower.norm(ai).eq(li) {
                        return Err(Error::NormMismatch);
                    }
                }
                a
            }
            None => tower.norm_representatives(&lambdas)?,
        };
        let mut h_poly = SkewPoly::one(tower.clone());
        for l in &lambdas {
            h_poly = h_poly.mul(&SkewPoly::x_n_minus(tower.clone(), l))?;
        }
        let group = tower.subgroup_generated(&lambdas)?;
        let is_group = group.order == ell;
        if is_group {
            // |Λ| divides q - 1, so the characteristic never divides ℓ
            debug_assert!(ell as u64 % tower.p() != 0);
        }

        let mut hasher = std::collections::hash_map::DefaultHasher::new();
        tower.uid().hash(&mut hasher);
        for l in &lambdas {
            l.coords().hash(&mut hasher);
        }
        for a in &alphas {
            a.coords().hash(&mut hasher);
        }
        let hash = hasher.finish();

        Ok(Arc::new(LambdaContext {
            tower,
            lambdas,
            alphas,
            h_poly,
            is_group,
            hash,
        }))
    }

    pub fn tower(&self) -> &Arc<Tower> {
        &self.tower
    }
    pub fn lambdas(&self) -> &[Elem] {
        &self.lambdas
    }
    pub fn alphas(&self) -> &[Elem] {
        &self.alphas
    }
    pub fn h_poly(&self) -> &SkewPoly {
        &self.h_poly
    }
    pub fn ell(&self) -> usize {
        self.lambdas.len()
    }
    /// ℓn, the L-dimension of the quotient.
    pub fn dim(&self) -> usize {
        self.ell() * self.tower.n()
    }
    /// Λ closed under multiplication and inversion.
    pub fn is_group(&self) -> bool {
        self.is_group
    }
    /// Finite subgroups of K* are cyclic, so this coincides with
    /// [`is_group`](Self::is_group); kept separate because the adjoint
    /// machinery is stated for cyclic Λ.
    pub fn is_cyclic_group(&self) -> bool {
        self.is_group
    }
    pub fn hash_id(&self) -> u64 {
        self.hash
    }

    /// Canonical representative of a skew polynomial in the quotient.
    pub fn reduce(self: &Arc<Self>, f: &SkewPoly) -> Result<QuotientElem> {
        if f.tower().uid() != self.tower.uid() {
            return Err(Error::TowerMismatch);
        }
        let (_, rep) = f.right_divide(&self.h_poly)?;
        Ok(QuotientElem {
            ctx: self.clone(),
            rep,
        })
    }

    pub fn zero(self: &Arc<Self>) -> QuotientElem {
        QuotientElem {
            ctx: self.clone(),
            rep: SkewPoly::zero(self.tower.clone()),
        }
    }

    pub fn one(self: &Arc<Self>) -> QuotientElem {
        QuotientElem {
            ctx: self.clone(),
            rep: SkewPoly::one(self.tower.clone()),
        }
    }

    /// Element from coefficients of degree < ℓn.
    pub fn from_coeffs(self: &Arc<Self>, coeffs: Vec<Elem>) -> Result<QuotientElem> {
        self.reduce(&SkewPoly::from_coeffs(self.tower.clone(), coeffs))
    }

    pub fn x_pow(self: &Arc<Self>, d: usize) -> Result<QuotientElem> {
        self.reduce(&SkewPoly::x_pow(self.tower.clone(), d))
    }
}

/// A canonical representative in L[X;θ]/(H_Λ(X)): deg < ℓn.
#[derive(Clone)]
pub struct QuotientElem {
    ctx: Arc<LambdaContext>,
    rep: SkewPoly,
}

impl PartialEq for QuotientElem {
    fn eq(&self, other: &Self) -> bool {
        self.ctx.hash == other.ctx.hash && self.rep == other.rep
    }
}
impl Eq for QuotientElem {}

impl std::fmt::Debug for QuotientElem {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "QuotientElem({})", self.rep.pretty())
    }
}

impl QuotientElem {
    pub fn ctx(&self) -> &Arc<LambdaContext> {
        &self.ctx
    }
    pub fn rep(&self) -> &SkewPoly {
        &self.rep
    }
    pub fn tower(&self) -> &Arc<Tower> {
        self.ctx.tower()
    }
    pub fn is_zero(&self) -> bool {
        self.rep.is_zero()
    }
    pub fn coeff(&self, i: usize) -> Elem {
        self.rep.coeff(i)
    }

    fn check_ctx(&self, other: &QuotientElem) -> Result<()> {
        if self.ctx.hash != other.ctx.hash {
            return Err(Error::ContextMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &QuotientElem) -> Result<QuotientElem> {
        self.check_ctx(other)?;
        Ok(QuotientElem {
            ctx: self.ctx.clone(),
            rep: self.rep.add(&other.rep)?,
        })
    }

    pub fn sub(&self, other: &QuotientElem) -> Result<QuotientElem> {
        self.check_ctx(other)?;
        Ok(QuotientElem {
            ctx: self.ctx.clone(),
            rep: self.rep.sub(&other.rep)?,
        })
    }

    pub fn neg(&self) -> QuotientElem {
        QuotientElem {
            ctx: self.ctx.clone(),
            rep: self.rep.neg(),
        }
    }

    /// Product in the quotient ring.
    pub fn mul(&self, other: &QuotientElem) -> Result<QuotientElem> {
        self.check_ctx(other)?;
        self.ctx.reduce(&self.rep.mul(&other.rep)?)
    }

    /// Left multiplication by a constant.
    pub fn scale(&self, c: &Elem) -> QuotientElem {
        QuotientElem {
            ctx: self.ctx.clone(),
            rep: self.rep.scale_left(c),
        }
    }

    /// Right multiplication by an arbitrary skew polynomial, reduced.
    pub fn mul_skew_right(&self, s: &SkewPoly) -> Result<QuotientElem> {
        self.ctx.reduce(&self.rep.mul(s)?)
    }

    /// Left multiplication by an arbitrary skew polynomial, reduced.
    pub fn mul_skew_left(&self, s: &SkewPoly) -> Result<QuotientElem> {
        self.ctx.reduce(&s.mul(&self.rep)?)
    }

    /// Sum-rank weight wt_Λ(F) = ℓn − deg gcrd(F, H_Λ) = ℓn − Σ d_{λ_i}(F).
    /// The zero element has weight 0 by convention.
    pub fn weight(&self) -> usize {
        if self.rep.is_zero() {
            return 0;
        }
        let g = self.rep.gcrd(self.ctx.h_poly()).expect("H is nonzero");
        self.ctx.dim() - g.deg().unwrap_or(0)
    }

    /// d_Λ(F, G) = wt_Λ(F − G).
    pub fn distance(&self, other: &QuotientElem) -> Result<usize> {
        Ok(self.sub(other)?.weight())
    }

    /// True when the element is a unit of the quotient (weight ℓn).
    pub fn is_unit(&self) -> bool {
        self.weight() == self.ctx.dim()
    }

    /// The Λ-Dickson matrix: column j holds the coefficients of X^j·F
    /// reduced mod H_Λ; its rank over L is the sum-rank weight.
    pub fn dickson_matrix(&self) -> Matrix {
        let t = self.ctx.tower();
        let d = self.ctx.dim();
        let mut m = Matrix::zeros(t, d, d, FieldTag::L);
        for j in 0..d {
            let img = self
                .ctx
                .x_pow(j)
                .and_then(|x| x.mul_skew_right(self.rep()))
                .map(|x| x.rep)
                .expect("context arithmetic");
            for r in 0..d {
                m[(r, j)] = img.coeff(r);
            }
        }
        m
    }

    /// Monic generator A(X) of the left annihilator ideal, computed as the
    /// cofactor of F in lclm(H_Λ, F); deg A = wt_Λ(F) and A·F ≡ 0.
    pub fn annihilator_generator(&self) -> Result<SkewPoly> {
        if self.rep.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let (_, cof) = self.ctx.h_poly().lclm_with_cofactor(&self.rep)?;
        Ok(cof)
    }

    /// The adjoint Σ θ^(n−i)(f_i) X^(ℓn−i) with indices mod ℓn and
    /// f_{ℓn} := f_0; defined when Λ is a cyclic group (H_Λ = X^{ℓn} − 1).
    pub fn adjoint(&self) -> Result<QuotientElem> {
        if !self.ctx.is_cyclic_group() {
            return Err(Error::LambdaNotCyclicGroup);
        }
        let t = self.ctx.tower();
        let d = self.ctx.dim();
        let n = t.n() as i64;
        let mut coeffs = vec![t.zero(); d];
        for i in 1..=d {
            let src = self.rep.coeff(i % d);
            coeffs[(d - i) % d] = t.frobenius(&src, n - i as i64);
        }
        self.ctx.from_coeffs(coeffs)
    }

    /// The v-adjoint (Φ_dst⁻¹ ∘ Υ_v ∘ Φ_src)(F): transpose the blocks
    /// selected by `v` after transporting along `alphas_src`, then return
    /// along `alphas_dst`. Both alpha vectors must have norm set Λ.
    pub fn v_adjoint(
        &self,
        v: &[bool],
        alphas_src: &[Elem],
        alphas_dst: &[Elem],
    ) -> Result<QuotientElem> {
        if v.len() != self.ctx.ell() {
            return Err(Error::ShapeMismatch);
        }
        let tuple = frameworks::phi_with(self, alphas_src)?;
        let flipped = frameworks::transpose_components(&tuple, v);
        frameworks::phi_inverse_with(&self.ctx, &flipped, alphas_dst)
    }

    /// ⟨F, G⟩_Λ = Tr_{L/K}(Σ f_i g_i); symmetric, K-bilinear, nondegenerate.
    pub fn bilinear_lambda(&self, other: &QuotientElem) -> Result<Elem> {
        self.check_ctx(other)?;
        let t = self.ctx.tower();
        let mut acc = t.zero();
        for i in 0..self.ctx.dim() {
            acc = t.add(&acc, &t.mul(&self.coeff(i), &other.coeff(i)));
        }
        Ok(t.trace(&acc))
    }

    /// The flat F_p-coordinate vector of the representative (length ℓn·n·e),
    /// the coordinate system used for prime-field duality computations.
    pub fn prime_coords(&self) -> Vec<u64> {
        let t = self.ctx.tower();
        let ne = t.n() * t.e();
        let mut out = vec![0u64; self.ctx.dim() * ne];
        for i in 0..self.ctx.dim() {
            out[i * ne..(i + 1) * ne].copy_from_slice(self.coeff(i).coords());
        }
        out
    }

    pub fn pretty(&self) -> String {
        self.rep.pretty()
    }
}
