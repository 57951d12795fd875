//! The skew polynomial ring L[X;θ] with X·a = θ(a)·X: arithmetic, the
//! right-Euclidean structure (right division, gcrd, lclm), α-shifts,
//! operator and projective evaluation, λ-values, and the companion / A_F
//! matrix machinery.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::gf::{Elem, FieldTag, Tower};
use crate::linalg::Matrix;

/// A skew polynomial: coefficients over L, ascending degree, trailing
/// zeros stripped, plus the tower it lives over.
#[derive(Debug, Clone)]
pub struct SkewPoly {
    tower: Arc<Tower>,
    coeffs: Vec<Elem>,
}

impl PartialEq for SkewPoly {
    fn eq(&self, other: &Self) -> bool {
        self.tower.uid() == other.tower.uid() && self.coeffs == other.coeffs
    }
}
impl Eq for SkewPoly {}

impl SkewPoly {
    pub fn zero(tower: Arc<Tower>) -> SkewPoly {
        SkewPoly {
            tower,
            coeffs: vec![],
        }
    }

    pub fn constant(tower: Arc<Tower>, c: Elem) -> SkewPoly {
        SkewPoly::from_coeffs(tower, vec![c])
    }

    pub fn one(tower: Arc<Tower>) -> SkewPoly {
        let c = tower.one();
        SkewPoly::constant(tower, c)
    }

    pub fn from_coeffs(tower: Arc<Tower>, mut coeffs: Vec<Elem>) -> SkewPoly {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        SkewPoly { tower, coeffs }
    }

    /// c·X^d.
    pub fn monomial(tower: Arc<Tower>, c: Elem, d: usize) -> SkewPoly {
        if c.is_zero() {
            return SkewPoly::zero(tower);
        }
        let mut coeffs = vec![tower.zero(); d + 1];
        coeffs[d] = c;
        SkewPoly { tower, coeffs }
    }

    pub fn x_pow(tower: Arc<Tower>, d: usize) -> SkewPoly {
        let c = tower.one();
        SkewPoly::monomial(tower, c, d)
    }

    /// The central polynomial X^n - λ for the tower's n.
    pub fn x_n_minus(tower: Arc<Tower>, lambda: &Elem) -> SkewPoly {
        let n = tower.n();
        let mut coeffs = vec![tower.zero(); n + 1];
        coeffs[0] = tower.neg(lambda);
        coeffs[n] = tower.one();
        SkewPoly::from_coeffs(tower, coeffs)
    }

    pub fn tower(&self) -> &Arc<Tower> {
        &self.tower
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    /// Coefficient of X^i (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> Elem {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.tower.zero())
    }

    /// None encodes deg(0) = -infinity.
    pub fn deg(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].eq(&self.tower.one())
    }

    fn check_tower(&self, other: &SkewPoly) -> Result<()> {
        if self.tower.uid() != other.tower.uid() {
            return Err(Error::TowerMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &SkewPoly) -> Result<SkewPoly> {
        self.check_tower(other)?;
        let t = &self.tower;
        let len = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..len)
            .map(|i| t.add(&self.coeff(i), &other.coeff(i)))
            .collect();
        Ok(SkewPoly::from_coeffs(self.tower.clone(), coeffs))
    }

    pub fn sub(&self, other: &SkewPoly) -> Result<SkewPoly> {
        self.check_tower(other)?;
        let t = &self.tower;
        let len = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..len)
            .map(|i| t.sub(&self.coeff(i), &other.coeff(i)))
            .collect();
        Ok(SkewPoly::from_coeffs(self.tower.clone(), coeffs))
    }

    pub fn neg(&self) -> SkewPoly {
        let t = &self.tower;
        let coeffs = self.coeffs.iter().map(|c| t.neg(c)).collect();
        SkewPoly {
            tower: self.tower.clone(),
            coeffs,
        }
    }

    /// Noncommutative product: (f X^i)(g X^j) = f θ^i(g) X^(i+j).
    pub fn mul(&self, other: &SkewPoly) -> Result<SkewPoly> {
        self.check_tower(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(SkewPoly::zero(self.tower.clone()));
        }
        let t = &self.tower;
        let mut coeffs = vec![t.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, f) in self.coeffs.iter().enumerate() {
            if f.is_zero() {
                continue;
            }
            for (j, g) in other.coeffs.iter().enumerate() {
                if g.is_zero() {
                    continue;
                }
                let term = t.mul(f, &t.frobenius(g, i as i64));
                coeffs[i + j] = t.add(&coeffs[i + j], &term);
            }
        }
        Ok(SkewPoly::from_coeffs(self.tower.clone(), coeffs))
    }

    /// Left multiplication by a constant (scales coefficients).
    pub fn scale_left(&self, c: &Elem) -> SkewPoly {
        let t = &self.tower;
        let coeffs = self.coeffs.iter().map(|f| t.mul(c, f)).collect();
        SkewPoly::from_coeffs(self.tower.clone(), coeffs)
    }

    /// Monic normalization by the inverse of the leading coefficient.
    pub fn monic(&self) -> SkewPoly {
        match self.coeffs.last() {
            None => self.clone(),
            Some(lead) => {
                let inv = self.tower.inv(lead).expect("leading coefficient nonzero");
                self.scale_left(&inv)
            }
        }
    }

    /// Right division: F = Q·G + R with deg R < deg G; the pair is unique.
    pub fn right_divide(&self, g: &SkewPoly) -> Result<(SkewPoly, SkewPoly)> {
        self.check_tower(g)?;
        if g.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let t = self.tower.clone();
        let dg = g.deg().unwrap();
        let g_lead = g.coeffs.last().unwrap().clone();
        let mut rem = self.clone();
        let mut quot = vec![t.zero(); self.coeffs.len().saturating_sub(dg)];
        while let Some(dr) = rem.deg() {
            if dr < dg {
                break;
            }
            let shift = dr - dg;
            let lead_shifted = t.frobenius(&g_lead, shift as i64);
            let q = t
                .div(&rem.coeffs[dr], &lead_shifted)
                .expect("leading coefficient nonzero");
            // rem -= (q X^shift) * G
            let mut coeffs = rem.coeffs;
            for (j, gc) in g.coeffs.iter().enumerate() {
                if gc.is_zero() {
                    continue;
                }
                let term = t.mul(&q, &t.frobenius(gc, shift as i64));
                coeffs[shift + j] = t.sub(&coeffs[shift + j], &term);
            }
            rem = SkewPoly::from_coeffs(t.clone(), coeffs);
            quot[shift] = q;
        }
        Ok((SkewPoly::from_coeffs(t, quot), rem))
    }

    /// Greatest common right divisor, monic.
    pub fn gcrd(&self, other: &SkewPoly) -> Result<SkewPoly> {
        self.check_tower(other)?;
        if self.is_zero() && other.is_zero() {
            return Err(Error::BothZero);
        }
        let mut r0 = self.clone();
        let mut r1 = other.clone();
        while !r1.is_zero() {
            let (_, r) = r0.right_divide(&r1)?;
            r0 = r1;
            r1 = r;
        }
        Ok(r0.monic())
    }

    /// Least common left multiple, monic, with the cofactor C such that
    /// lclm(self, other) = C·other.
    pub fn lclm_with_cofactor(&self, other: &SkewPoly) -> Result<(SkewPoly, SkewPoly)> {
        self.check_tower(other)?;
        if self.is_zero() || other.is_zero() {
            return Err(Error::BothZero);
        }
        let t = self.tower.clone();
        // extended right Euclid: r_i = u_i·self + v_i·other with left cofactors
        let mut r0 = self.clone();
        let mut r1 = other.clone();
        let mut v0 = SkewPoly::zero(t.clone());
        let mut v1 = SkewPoly::one(t.clone());
        while !r1.is_zero() {
            let (q, r) = r0.right_divide(&r1)?;
            let v2 = v0.sub(&q.mul(&v1)?)?;
            r0 = r1;
            r1 = r;
            v0 = v1;
            v1 = v2;
        }
        // r1 = 0 = u1·self + v1·other, so lclm = (-v1)·other
        let cof = v1.neg();
        let lclm = cof.mul(other)?;
        let lead = lclm.coeffs.last().expect("lclm of nonzero polynomials");
        let c = t.inv(lead).expect("leading coefficient nonzero");
        Ok((lclm.scale_left(&c), cof.scale_left(&c)))
    }

    pub fn lclm(&self, other: &SkewPoly) -> Result<SkewPoly> {
        Ok(self.lclm_with_cofactor(other)?.0)
    }

    /// F(αX) = Σ f_i N_{θ,i}(α) X^i; multiplicative in F.
    pub fn alpha_shift(&self, alpha: &Elem) -> Result<SkewPoly> {
        if alpha.is_zero() {
            return Err(Error::ZeroAlpha);
        }
        let t = &self.tower;
        let mut tn = t.one();
        let mut shifted = alpha.clone();
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, f)| {
                if i > 0 {
                    tn = t.mul(&tn, &shifted);
                    shifted = t.frobenius(&shifted, 1);
                }
                t.mul(f, &tn)
            })
            .collect();
        Ok(SkewPoly::from_coeffs(self.tower.clone(), coeffs))
    }

    /// Operator evaluation Σ f_i θ^i(β); K-linear in β.
    pub fn evaluate(&self, beta: &Elem) -> Elem {
        let t = &self.tower;
        let mut acc = t.zero();
        let mut conj = beta.clone();
        for (i, f) in self.coeffs.iter().enumerate() {
            if i > 0 {
                conj = t.frobenius(&conj, 1);
            }
            if !f.is_zero() {
                acc = t.add(&acc, &t.mul(f, &conj));
            }
        }
        acc
    }

    /// Projective evaluation Σ f_i N_{θ,i}(β).
    pub fn projective_evaluate(&self, beta: &Elem) -> Elem {
        let t = &self.tower;
        let mut acc = t.zero();
        let mut tn = t.one();
        let mut conj = beta.clone();
        for (i, f) in self.coeffs.iter().enumerate() {
            if i > 0 {
                tn = t.mul(&tn, &conj);
                conj = t.frobenius(&conj, 1);
            }
            if !f.is_zero() {
                acc = t.add(&acc, &t.mul(f, &tn));
            }
        }
        acc
    }

    /// λ-value d_λ(F) = deg gcrd(F, X^n - λ), an integer in [0, n].
    pub fn lambda_value(&self, lambda: &Elem) -> Result<usize> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        if lambda.is_zero() {
            return Err(Error::ZeroLambda);
        }
        if !self.tower.in_field(lambda, FieldTag::K) {
            return Err(Error::HomeFieldViolation);
        }
        let xn = SkewPoly::x_n_minus(self.tower.clone(), lambda);
        let g = self.gcrd(&xn)?;
        Ok(g.deg().unwrap_or(0))
    }

    /// Matrix over K of the K-linear operator β ↦ F(β) in the power basis
    /// of L; entry (r, c) is the γ^r-coefficient of F(γ^c).
    pub fn operator_matrix(&self) -> Matrix {
        let t = &self.tower;
        let n = t.n();
        let mut m = Matrix::zeros(t, n, n, FieldTag::K);
        for c in 0..n {
            let img = self.evaluate(&t.power_basis_elem(c));
            for r in 0..n {
                m[(r, c)] = t.coeff_block(&img, r);
            }
        }
        m
    }

    /// K-basis of ker(F) = {β ∈ L : F(β) = 0}. The zero polynomial has
    /// kernel all of L and returns the full power basis.
    pub fn kernel_basis(&self) -> Vec<Elem> {
        let t = &self.tower;
        let n = t.n();
        if self.is_zero() {
            return (0..n).map(|j| t.power_basis_elem(j)).collect();
        }
        self.operator_matrix()
            .nullspace(t)
            .into_iter()
            .map(|v| t.elem_from_k_blocks(&v))
            .collect()
    }

    /// Companion matrix of the monic normalization, d×d over L.
    pub fn companion_matrix(&self) -> Result<Matrix> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let t = &self.tower;
        let f = self.monic();
        let d = f.deg().unwrap();
        let mut m = Matrix::zeros(t, d, d, FieldTag::L);
        for c in 0..d.saturating_sub(1) {
            m[(c + 1, c)] = t.one();
        }
        if d > 0 {
            for r in 0..d {
                m[(r, d - 1)] = t.neg(&f.coeffs[r]);
            }
        }
        Ok(m)
    }

    /// A_F = C_F · θ(C_F) ⋯ θ^(n-1)(C_F), θ applied entrywise.
    pub fn a_matrix(&self) -> Result<Matrix> {
        let t = &self.tower;
        let c = self.companion_matrix()?;
        let mut acc = c.clone();
        for i in 1..t.n() {
            let conj = c.map(|x| t.frobenius(x, i as i64));
            acc = acc.mul(t, &conj);
        }
        Ok(acc)
    }

    /// Render in the usual notation, highest degree first.
    pub fn pretty(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let t = &self.tower;
        let mut parts = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let coeff = t.fmt_elem(c);
            let part = match i {
                0 => coeff,
                _ => {
                    let x = if i == 1 { "X".into() } else { format!("X^{i}") };
                    if c.eq(&t.one()) {
                        x
                    } else {
                        format!("{coeff}{x}")
                    }
                }
            };
            parts.push(part);
        }
        parts.join("+")
    }
}

impl std::fmt::Display for SkewPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.pretty())
    }
}

#[cfg(test)]
mod tests;
