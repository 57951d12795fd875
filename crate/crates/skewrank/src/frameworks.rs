//! The three isometric representations of the quotient — skew polynomial,
//! vector in L^(ℓn), and ℓ-tuple of n×n matrices over K — together with
//! bases, dual bases, the conversions between the representations, and the
//! bilinear forms each of them carries.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::gf::{Elem, FieldTag, Tower};
use crate::linalg::Matrix;
use crate::skew::SkewPoly;
use crate::sumrank::{LambdaContext, QuotientElem};

/// A K-basis of L with its trace-dual basis and coordinate solver cached.
#[derive(Debug, Clone)]
pub struct Basis {
    tower: Arc<Tower>,
    elems: Vec<Elem>,
    dual_elems: Vec<Elem>,
    coord_inv: Matrix,
}

impl Basis {
    pub fn new(tower: Arc<Tower>, elems: Vec<Elem>) -> Result<Basis> {
        let n = tower.n();
        if elems.len() != n {
            return Err(Error::ShapeMismatch);
        }
        let mut coord = Matrix::zeros(&tower, n, n, FieldTag::K);
        for j in 0..n {
            for r in 0..n {
                coord[(r, j)] = tower.coeff_block(&elems[j], r);
            }
        }
        let coord_inv = coord.inverse(&tower).ok_or(Error::DegenerateBasis)?;
        // dual basis: solve Tr(b_i · d_j) = δ_ij through the trace Gram
        let mut gram = Matrix::zeros(&tower, n, n, FieldTag::K);
        for i in 0..n {
            for m in 0..n {
                let prod = tower.mul(&elems[i], &tower.power_basis_elem(m));
                gram[(i, m)] = tower.trace(&prod);
            }
        }
        let ginv = gram.inverse(&tower).ok_or(Error::DegenerateBasis)?;
        let dual_elems = (0..n)
            .map(|j| {
                let blocks: Vec<Elem> = (0..n).map(|m| ginv[(m, j)].clone()).collect();
                tower.elem_from_k_blocks(&blocks)
            })
            .collect();
        Ok(Basis {
            tower,
            elems,
            dual_elems,
            coord_inv,
        })
    }

    /// The power basis (1, γ, …, γ^(n−1)).
    pub fn power(tower: Arc<Tower>) -> Basis {
        let elems = (0..tower.n()).map(|j| tower.power_basis_elem(j)).collect();
        Basis::new(tower, elems).expect("power basis is a basis")
    }

    pub fn elems(&self) -> &[Elem] {
        &self.elems
    }

    pub fn dual_elems(&self) -> &[Elem] {
        &self.dual_elems
    }

    /// The trace-dual basis; dual of the dual is the original.
    pub fn dual(&self) -> Basis {
        Basis::new(self.tower.clone(), self.dual_elems.clone()).expect("dual of a basis is a basis")
    }

    /// Coordinates of an element with respect to this basis, over K.
    pub fn coords_of(&self, a: &Elem) -> Vec<Elem> {
        let t = &self.tower;
        let n = t.n();
        let power: Vec<Elem> = (0..n).map(|r| t.coeff_block(a, r)).collect();
        (0..n)
            .map(|r| {
                let mut acc = t.zero();
                for c in 0..n {
                    acc = t.add(&acc, &t.mul(&self.coord_inv[(r, c)], &power[c]));
                }
                acc
            })
            .collect()
    }

    /// True when the basis is (β, θβ, …, θ^(n−1)β) in order.
    pub fn is_normal(&self) -> bool {
        let t = &self.tower;
        (0..t.n()).all(|i| self.elems[i].eq(&t.frobenius(&self.elems[0], i as i64)))
    }
}

/// First normal basis in enumeration order of the generator.
pub fn normal_basis(tower: &Arc<Tower>) -> Basis {
    for idx in 1..tower.l_size() {
        let beta = tower.element(idx);
        let elems: Vec<Elem> = (0..tower.n())
            .map(|i| tower.frobenius(&beta, i as i64))
            .collect();
        if let Ok(b) = Basis::new(tower.clone(), elems) {
            return b;
        }
    }
    unreachable!("a normal basis always exists");
}

/// A θ-polynomial f_0 id + f_1 θ + … + f_(n−1) θ^(n−1): a K-linear
/// operator on L.
#[derive(Debug, Clone)]
pub struct ThetaPoly {
    tower: Arc<Tower>,
    coeffs: Vec<Elem>, // length exactly n
}

impl PartialEq for ThetaPoly {
    fn eq(&self, other: &Self) -> bool {
        self.tower.uid() == other.tower.uid() && self.coeffs == other.coeffs
    }
}
impl Eq for ThetaPoly {}

impl ThetaPoly {
    pub fn new(tower: Arc<Tower>, mut coeffs: Vec<Elem>) -> ThetaPoly {
        coeffs.resize(tower.n(), tower.zero());
        ThetaPoly { tower, coeffs }
    }

    pub fn zero(tower: Arc<Tower>) -> ThetaPoly {
        let n = tower.n();
        let z = tower.zero();
        ThetaPoly {
            tower,
            coeffs: vec![z; n],
        }
    }

    pub fn identity(tower: Arc<Tower>) -> ThetaPoly {
        let mut tp = ThetaPoly::zero(tower);
        tp.coeffs[0] = tp.tower.one();
        tp
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn apply(&self, beta: &Elem) -> Elem {
        let t = &self.tower;
        let mut acc = t.zero();
        let mut conj = beta.clone();
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                conj = t.frobenius(&conj, 1);
            }
            if !c.is_zero() {
                acc = t.add(&acc, &t.mul(c, &conj));
            }
        }
        acc
    }

    /// Operator composition (f ∘ g), again a θ-polynomial.
    pub fn compose(&self, other: &ThetaPoly) -> ThetaPoly {
        let t = &self.tower;
        let n = t.n();
        let mut coeffs = vec![t.zero(); n];
        for (i, f) in self.coeffs.iter().enumerate() {
            if f.is_zero() {
                continue;
            }
            for (j, g) in other.coeffs.iter().enumerate() {
                if g.is_zero() {
                    continue;
                }
                let m = (i + j) % n;
                let term = t.mul(f, &t.frobenius(g, i as i64));
                coeffs[m] = t.add(&coeffs[m], &term);
            }
        }
        ThetaPoly {
            tower: self.tower.clone(),
            coeffs,
        }
    }

    pub fn add(&self, other: &ThetaPoly) -> ThetaPoly {
        let t = &self.tower;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| t.add(a, b))
            .collect();
        ThetaPoly {
            tower: self.tower.clone(),
            coeffs,
        }
    }

    /// The adjoint operator Σ θ^(n−i)(f_i) θ^(n−i), i.e. the transpose
    /// with respect to the trace bilinear form.
    pub fn adjoint(&self) -> ThetaPoly {
        let t = &self.tower;
        let n = t.n();
        let mut coeffs = vec![t.zero(); n];
        for (j, c) in coeffs.iter_mut().enumerate() {
            let src = &self.coeffs[(n - j) % n];
            *c = t.frobenius(src, j as i64);
        }
        ThetaPoly {
            tower: self.tower.clone(),
            coeffs,
        }
    }

    /// Matrix over K of the operator in the power basis.
    pub fn operator_matrix(&self) -> Matrix {
        SkewPoly::from_coeffs(self.tower.clone(), self.coeffs.clone()).operator_matrix()
    }

    /// Rank over K of the operator.
    pub fn rank(&self) -> usize {
        self.operator_matrix().rank(&self.tower)
    }

    pub fn pretty(&self) -> String {
        let t = &self.tower;
        let mut parts = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let coeff = t.fmt_elem(c);
            let op = match i {
                0 => "id".to_string(),
                1 => "θ".to_string(),
                _ => format!("θ^{i}"),
            };
            if i == 0 {
                parts.push(format!("{coeff}id"));
            } else if c.eq(&t.one()) {
                parts.push(op);
            } else {
                parts.push(format!("{coeff}{op}"));
            }
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join("+")
        }
    }
}

/// An element of (L[θ])^ℓ.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThetaPolyTuple {
    pub components: Vec<ThetaPoly>,
}

/// An element of L^(ℓn) carrying its block structure (ℓ blocks of n).
#[derive(Debug, Clone)]
pub struct VectorWord {
    tower: Arc<Tower>,
    block: usize,
    entries: Vec<Elem>,
}

impl PartialEq for VectorWord {
    fn eq(&self, other: &Self) -> bool {
        self.tower.uid() == other.tower.uid()
            && self.block == other.block
            && self.entries == other.entries
    }
}
impl Eq for VectorWord {}

impl VectorWord {
    pub fn new(tower: Arc<Tower>, block: usize, entries: Vec<Elem>) -> VectorWord {
        assert!(block > 0 && entries.len() % block == 0);
        VectorWord {
            tower,
            block,
            entries,
        }
    }

    pub fn entries(&self) -> &[Elem] {
        &self.entries
    }

    pub fn blocks(&self) -> impl Iterator<Item = &[Elem]> {
        self.entries.chunks(self.block)
    }

    pub fn block_len(&self) -> usize {
        self.block
    }
}

/// An ℓ-tuple of n×n matrices over K.
#[derive(Debug, Clone)]
pub struct MatrixTuple {
    tower: Arc<Tower>,
    pub mats: Vec<Matrix>,
}

impl PartialEq for MatrixTuple {
    fn eq(&self, other: &Self) -> bool {
        self.tower.uid() == other.tower.uid() && self.mats == other.mats
    }
}

impl MatrixTuple {
    pub fn new(tower: Arc<Tower>, mats: Vec<Matrix>) -> MatrixTuple {
        MatrixTuple { tower, mats }
    }
}

// --- Φ_α and its inverse ---

fn check_alphas(ctx: &LambdaContext, alphas: &[Elem]) -> Result<()> {
    if alphas.len() != ctx.ell() {
        return Err(Error::NormMismatch);
    }
    let t = ctx.tower();
    let mut norms = Vec::with_capacity(alphas.len());
    for a in alphas {
        if a.is_zero() {
            return Err(Error::NormMismatch);
        }
        let na = t.norm(a);
        if norms.contains(&na) || !ctx.lambdas().contains(&na) {
            return Err(Error::NormMismatch);
        }
        norms.push(na);
    }
    Ok(())
}

/// Component i of Φ_α(F): the θ-polynomial Φ(F_{α_i}) reduced mod X^n − 1,
/// with coefficients f_{α,j} = Σ_t N_{θ,j+tn}(α) f_{j+tn}. Requires only
/// that the norms of `alphas` enumerate Λ (in any order).
pub fn phi_with(q: &QuotientElem, alphas: &[Elem]) -> Result<ThetaPolyTuple> {
    check_alphas(q.ctx(), alphas)?;
    let t = q.tower().clone();
    let n = t.n();
    let ell = q.ctx().ell();
    let mut components = Vec::with_capacity(ell);
    for a in alphas {
        let mut coeffs = vec![t.zero(); n];
        for j in 0..n {
            for tt in 0..ell {
                let idx = j + tt * n;
                let f = q.coeff(idx);
                if f.is_zero() {
                    continue;
                }
                let w = t.mul(&f, &t.truncated_norm(a, idx));
                coeffs[j] = t.add(&coeffs[j], &w);
            }
        }
        components.push(ThetaPoly::new(t.clone(), coeffs));
    }
    Ok(ThetaPolyTuple { components })
}

/// Φ_α with the spec's strict precondition norm(α_i) = λ_i in context order.
pub fn phi_alpha(q: &QuotientElem, alphas: &[Elem]) -> Result<ThetaPolyTuple> {
    let t = q.tower();
    if alphas.len() != q.ctx().ell() {
        return Err(Error::NormMismatch);
    }
    for (a, l) in alphas.iter().zip(q.ctx().lambdas()) {
        if a.is_zero() || !t.norm(a).eq(l) {
            return Err(Error::NormMismatch);
        }
    }
    phi_with(q, alphas)
}

/// Φ with the context's pinned alpha vector.
pub fn phi_default(q: &QuotientElem) -> ThetaPolyTuple {
    let alphas = q.ctx().alphas().to_vec();
    phi_alpha(q, &alphas).expect("context alphas always match")
}

/// Unique preimage under Φ_α, obtained by solving, for each residue j mod
/// n, the ℓ×ℓ L-linear system given by the coefficient formula.
pub fn phi_inverse_with(
    ctx: &Arc<LambdaContext>,
    tuple: &ThetaPolyTuple,
    alphas: &[Elem],
) -> Result<QuotientElem> {
    check_alphas(ctx, alphas)?;
    if tuple.components.len() != ctx.ell() {
        return Err(Error::ShapeMismatch);
    }
    let t = ctx.tower().clone();
    let n = t.n();
    let ell = ctx.ell();
    let mut coeffs = vec![t.zero(); ell * n];
    for j in 0..n {
        let mut m = Matrix::zeros(&t, ell, ell, FieldTag::L);
        for (i, a) in alphas.iter().enumerate() {
            for tt in 0..ell {
                m[(i, tt)] = t.truncated_norm(a, j + tt * n);
            }
        }
        let rhs: Vec<Elem> = tuple.components.iter().map(|c| c.coeffs()[j].clone()).collect();
        let sol = m.solve(&t, &rhs)?;
        for (tt, x) in sol.into_iter().enumerate() {
            coeffs[j + tt * n] = x;
        }
    }
    ctx.from_coeffs(coeffs)
}

pub fn phi_alpha_inverse(
    ctx: &Arc<LambdaContext>,
    tuple: &ThetaPolyTuple,
    alphas: &[Elem],
) -> Result<QuotientElem> {
    for (a, l) in alphas.iter().zip(ctx.lambdas()) {
        if a.is_zero() || !ctx.tower().norm(a).eq(l) {
            return Err(Error::NormMismatch);
        }
    }
    phi_inverse_with(ctx, tuple, alphas)
}

/// Υ_v: transpose (adjoint) the components flagged by v.
pub fn transpose_components(tuple: &ThetaPolyTuple, v: &[bool]) -> ThetaPolyTuple {
    let components = tuple
        .components
        .iter()
        .zip(v)
        .map(|(c, &flip)| if flip { c.adjoint() } else { c.clone() })
        .collect();
    ThetaPolyTuple { components }
}

// --- evaluation / coordinate maps ---

/// ev_B(f) = (f(e_1), …, f(e_n)).
pub fn ev_basis(tp: &ThetaPoly, basis: &Basis) -> Vec<Elem> {
    basis.elems().iter().map(|b| tp.apply(b)).collect()
}

/// Ext_E(v): the n×n matrix over K whose column j holds the coordinates of
/// v_j in the basis E.
pub fn ext_basis(tower: &Arc<Tower>, v: &[Elem], basis: &Basis) -> Matrix {
    let n = tower.n();
    assert_eq!(v.len(), n);
    let mut m = Matrix::zeros(tower, n, n, FieldTag::K);
    for (j, vj) in v.iter().enumerate() {
        let coords = basis.coords_of(vj);
        for r in 0..n {
            m[(r, j)] = coords[r].clone();
        }
    }
    m
}

/// (poly) → (vec): concatenate the per-block evaluation rows.
pub fn to_vector(q: &QuotientElem, alphas: &[Elem], bases: &[Basis]) -> Result<VectorWord> {
    let tuple = phi_alpha(q, alphas)?;
    if bases.len() != tuple.components.len() {
        return Err(Error::ShapeMismatch);
    }
    let t = q.tower().clone();
    let mut entries = Vec::with_capacity(q.ctx().dim());
    for (c, b) in tuple.components.iter().zip(bases) {
        entries.extend(ev_basis(c, b));
    }
    Ok(VectorWord::new(t.clone(), t.n(), entries))
}

/// (poly) → (mat): Ext blocks of the vectorization.
pub fn to_matrix(
    q: &QuotientElem,
    alphas: &[Elem],
    bases: &[Basis],
    ext_bases: &[Basis],
) -> Result<MatrixTuple> {
    let w = to_vector(q, alphas, bases)?;
    if ext_bases.len() != q.ctx().ell() {
        return Err(Error::ShapeMismatch);
    }
    let t = q.tower().clone();
    let mats = w
        .blocks()
        .zip(ext_bases)
        .map(|(blk, eb)| ext_basis(&t, blk, eb))
        .collect();
    Ok(MatrixTuple::new(t, mats))
}

/// Conversions with the context alphas and power bases everywhere.
pub fn to_vector_default(q: &QuotientElem) -> VectorWord {
    let power = Basis::power(q.tower().clone());
    let bases = vec![power; q.ctx().ell()];
    let alphas = q.ctx().alphas().to_vec();
    to_vector(q, &alphas, &bases).expect("default conversion")
}

pub fn to_matrix_default(q: &QuotientElem) -> MatrixTuple {
    let power = Basis::power(q.tower().clone());
    let bases = vec![power; q.ctx().ell()];
    let alphas = q.ctx().alphas().to_vec();
    to_matrix(q, &alphas, &bases, &bases).expect("default conversion")
}

// --- weights ---

/// rk_K of one block of a vector word.
fn block_rank(tower: &Tower, blk: &[Elem]) -> usize {
    let n = tower.n();
    let mut m = Matrix::zeros(tower, n, blk.len(), FieldTag::K);
    for (j, v) in blk.iter().enumerate() {
        for r in 0..n {
            m[(r, j)] = tower.coeff_block(v, r);
        }
    }
    m.rank(tower)
}

/// Sum of the K-ranks of the blocks.
pub fn vector_weight(w: &VectorWord) -> usize {
    w.blocks().map(|blk| block_rank(&w.tower, blk)).sum()
}

/// Sum of the K-ranks of the matrices.
pub fn matrix_weight(m: &MatrixTuple) -> usize {
    m.mats.iter().map(|mat| mat.rank(&m.tower)).sum()
}

pub fn hamming_weight(w: &VectorWord) -> usize {
    w.entries().iter().filter(|e| !e.is_zero()).count()
}

// --- bilinear forms ---

/// ⟨f, g⟩_srk = Tr(Σ_i ⟨f_i, g_i⟩_{rk,L}).
pub fn srk_form(a: &ThetaPolyTuple, b: &ThetaPolyTuple) -> Result<Elem> {
    if a.components.len() != b.components.len() || a.components.is_empty() {
        return Err(Error::ShapeMismatch);
    }
    let t = a.components[0].tower.clone();
    let mut acc = t.zero();
    for (x, y) in a.components.iter().zip(&b.components) {
        for (c, d) in x.coeffs().iter().zip(y.coeffs()) {
            acc = t.add(&acc, &t.mul(c, d));
        }
    }
    Ok(t.trace(&acc))
}

/// ⟨u, v⟩_v = Tr(u·vᵀ).
pub fn vec_form(u: &VectorWord, v: &VectorWord) -> Result<Elem> {
    if u.entries.len() != v.entries.len() {
        return Err(Error::ShapeMismatch);
    }
    let t = u.tower.clone();
    let mut acc = t.zero();
    for (x, y) in u.entries.iter().zip(&v.entries) {
        acc = t.add(&acc, &t.mul(x, y));
    }
    Ok(t.trace(&acc))
}

/// ⟨M, N⟩_M = Σ_i Tr(M_i N_iᵀ), the matrix trace over K.
pub fn mat_form(tower: &Tower, a: &MatrixTuple, b: &MatrixTuple) -> Result<Elem> {
    if a.mats.len() != b.mats.len() {
        return Err(Error::ShapeMismatch);
    }
    let mut acc = tower.zero();
    for (m, nmat) in a.mats.iter().zip(&b.mats) {
        if m.rows() != nmat.rows() || m.cols() != nmat.cols() {
            return Err(Error::ShapeMismatch);
        }
        for i in 0..m.rows() {
            for j in 0..m.cols() {
                acc = tower.add(&acc, &tower.mul(&m[(i, j)], &nmat[(i, j)]));
            }
        }
    }
    Ok(acc)
}
