//! Code families in the quotient ring: linearized Reed-Solomon codes,
//! their twisted and additive-twisted variants, TZ-type codes and the
//! Hamming-metric additive MDS specialization, with exact minimum-distance
//! certification, Singleton/MSRD verdicts, duality and isometry actions.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::frameworks;
use crate::gf::{Elem, FieldTag, Tower};
use crate::linalg::{row_space_canon, Matrix};
use crate::skew::SkewPoly;
use crate::sumrank::{LambdaContext, QuotientElem};

/// Construction tag with parameters.
#[derive(Debug, Clone)]
pub enum CodeKind {
    /// All elements of degree < k; L-linear.
    Lrs { k: usize },
    /// Degree-< k elements plus the twist η·θ^h(f_0)·X^k; K-linear,
    /// L-linear when h = 0.
    TwistedLrs { k: usize, eta: Elem, h: usize },
    /// Twist by an arbitrary prime-Frobenius power τ = φ^tau_power;
    /// linear over the fixed field of τ.
    AdditiveTwisted {
        k: usize,
        eta: Elem,
        h: usize,
        tau_power: usize,
    },
    /// End coefficients in the index-2 intermediate field E, twist γ of
    /// non-square norm; E-linear.
    Tz { k: usize, gamma: Elem },
    /// The n = 1 Hamming-metric specialization over K = L = GF(q²) with
    /// E = GF(q).
    TzHamming { k: usize, gamma: Elem },
}

impl CodeKind {
    pub fn name(&self) -> &'static str {
        match self {
            CodeKind::Lrs { .. } => "lrs",
            CodeKind::TwistedLrs { .. } => "twisted",
            CodeKind::AdditiveTwisted { .. } => "additive-twisted",
            CodeKind::Tz { .. } => "tz",
            CodeKind::TzHamming { .. } => "tz-hamming",
        }
    }

    pub fn k(&self) -> usize {
        match self {
            CodeKind::Lrs { k }
            | CodeKind::TwistedLrs { k, .. }
            | CodeKind::AdditiveTwisted { k, .. }
            | CodeKind::Tz { k, .. }
            | CodeKind::TzHamming { k, .. } => *k,
        }
    }
}

/// One message coordinate's range.
#[derive(Debug, Clone)]
pub struct Domain {
    tag: FieldTag,
    elems: Option<Arc<Vec<Elem>>>,
}

impl Domain {
    fn full() -> Domain {
        Domain {
            tag: FieldTag::L,
            elems: None,
        }
    }

    fn subfield(tower: &Tower, tag: FieldTag) -> Domain {
        Domain {
            tag,
            elems: Some(Arc::new(tower.subfield_elements(tag))),
        }
    }

    pub fn tag(&self) -> FieldTag {
        self.tag
    }

    pub fn size(&self, tower: &Tower) -> u128 {
        match &self.elems {
            None => tower.l_size(),
            Some(v) => v.len() as u128,
        }
    }

    pub fn get(&self, tower: &Tower, i: u128) -> Elem {
        match &self.elems {
            None => tower.element(i),
            Some(v) => v[i as usize].clone(),
        }
    }

    pub fn contains(&self, tower: &Tower, a: &Elem) -> bool {
        tower.in_field(a, self.tag)
    }
}

/// A post-encoding isometry step; steps apply in order.
#[derive(Debug, Clone)]
pub enum IsometryStep {
    /// (Φ_dst⁻¹ ∘ Υ_v ∘ Φ_src) with dst = the context alphas.
    VAdjoint { v: Vec<bool>, src: Vec<Elem> },
    LeftMul(QuotientElem),
    RightMul(QuotientElem),
}

/// A sum-rank metric code with an injective encoder.
#[derive(Clone)]
pub struct Code {
    ctx: Arc<LambdaContext>,
    kind: CodeKind,
    linearity: FieldTag,
    domains: Vec<Domain>,
    transform: Vec<IsometryStep>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum DistanceMethod {
    MessageEnumeration,
    Exhaustive,
    Sampled,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Yes,
    No,
    Unknown,
}

/// Result of a minimum-distance computation.
#[derive(Clone)]
pub struct DistanceReport {
    /// Exact distance, or the best upper bound in sampled mode.
    pub distance: usize,
    pub method: DistanceMethod,
    pub exact: bool,
    /// A codeword of minimum observed weight (first in enumeration order).
    pub witness: Option<QuotientElem>,
    /// Singleton bound on the distance given the code's dimension.
    pub singleton: usize,
    /// Singleton defect when the distance is exact.
    pub defect: Option<i64>,
    /// MSRD (resp. MDS for n = 1) yes/no/unknown.
    pub verdict: Verdict,
}

/// Enumeration controls: `budget` caps exact enumeration; `seed` and
/// `samples` drive the fallback sampled upper bound.
#[derive(Debug, Clone, Copy)]
pub struct DistanceOptions {
    pub budget: u128,
    pub seed: u64,
    pub samples: u64,
}

impl Default for DistanceOptions {
    fn default() -> Self {
        DistanceOptions {
            budget: 1 << 20,
            seed: 0,
            samples: 1000,
        }
    }
}

// --- constructors ---

/// Linearized Reed-Solomon code: all elements of degree < k.
pub fn lrs(ctx: &Arc<LambdaContext>, k: usize) -> Result<Code> {
    check_k(ctx, k)?;
    Ok(Code {
        ctx: ctx.clone(),
        kind: CodeKind::Lrs { k },
        linearity: FieldTag::L,
        domains: vec![Domain::full(); k],
        transform: vec![],
    })
}

/// Twisted linearized Reed-Solomon code with twist η·θ^h(f_0)·X^k.
/// Requires (−1)^(kn)·N(η) outside the subgroup generated by Λ.
pub fn twisted_lrs(ctx: &Arc<LambdaContext>, k: usize, eta: &Elem, h: usize) -> Result<Code> {
    check_k(ctx, k)?;
    let t = ctx.tower();
    let h = h % t.n();
    check_eta_condition(ctx, eta, (k * t.n()) as u64)?;
    Ok(Code {
        ctx: ctx.clone(),
        kind: CodeKind::TwistedLrs {
            k,
            eta: eta.clone(),
            h,
        },
        linearity: if h == 0 && !eta.is_zero() {
            FieldTag::L
        } else if eta.is_zero() {
            FieldTag::L
        } else {
            FieldTag::K
        },
        domains: vec![Domain::full(); k],
        transform: vec![],
    })
}

/// Additive variant: the twist applies τ^h for τ = φ^tau_power, φ the
/// prime-field Frobenius of order dividing e·n. Linear over the fixed
/// field of τ; requires (−1)^(uk)·N(η) outside ⟨Λ⟩ where u = ord(τ).
pub fn additive_twisted_lrs(
    ctx: &Arc<LambdaContext>,
    k: usize,
    eta: &Elem,
    h: usize,
    tau_power: usize,
) -> Result<Code> {
    check_k(ctx, k)?;
    let t = ctx.tower();
    let en = t.e() * t.n();
    let tau_power = tau_power % en;
    let fixed_degree = gcd_usize(tau_power, en).max(1);
    let u = en / fixed_degree;
    check_eta_condition(ctx, eta, (u * k) as u64)?;
    // largest named subfield inside the fixed field of τ names the
    // linearity; the MSRD verdict is invariant under that choice
    let mut linearity = FieldTag::Prime;
    for tag in [FieldTag::K, FieldTag::E, FieldTag::L] {
        if tag == FieldTag::E && ctx.tower().intermediate().is_none() {
            continue;
        }
        let d = t.tag_degree(tag);
        if fixed_degree % d == 0 && d > t.tag_degree(linearity) {
            linearity = tag;
        }
    }
    Ok(Code {
        ctx: ctx.clone(),
        kind: CodeKind::AdditiveTwisted {
            k,
            eta: eta.clone(),
            h,
            tau_power,
        },
        linearity,
        domains: vec![Domain::full(); k],
        transform: vec![],
    })
}

/// TZ-type code: end coefficients in the index-2 intermediate field E,
/// twist γ with N(γ) a non-square. Requires q odd, n even, Λ ⊆ K^(2).
pub fn tz_code(ctx: &Arc<LambdaContext>, k: usize, gamma: &Elem) -> Result<Code> {
    let t = ctx.tower();
    if t.p() == 2 {
        return Err(Error::EvenCharacteristic);
    }
    if t.n() % 2 != 0 || t.intermediate() != Some(2) {
        return Err(Error::OddExtensionDegree);
    }
    check_k(ctx, k)?;
    for l in ctx.lambdas() {
        if !t.is_square(l)? {
            return Err(Error::LambdaNotSquares);
        }
    }
    let ng = t.norm(gamma);
    if gamma.is_zero() || t.is_square(&ng)? {
        return Err(Error::GammaConditionViolated);
    }
    Ok(Code {
        ctx: ctx.clone(),
        kind: CodeKind::Tz {
            k,
            gamma: gamma.clone(),
        },
        linearity: FieldTag::E,
        domains: tz_domains(t, k),
        transform: vec![],
    })
}

/// Tower for the Hamming-metric TZ specialization: K = L = GF(q²) with
/// intermediate E = GF(q), block length n = 1.
pub fn tz_mds_tower(q: u64) -> Result<Arc<Tower>> {
    if q % 2 == 0 {
        return Err(Error::EvenCharacteristic);
    }
    let p = smallest_prime_factor(q);
    let mut m = 0usize;
    let mut acc = 1u64;
    while acc < q {
        acc *= p;
        m += 1;
    }
    if acc != q {
        return Err(Error::NonPrime(q));
    }
    Tower::from_spec(&crate::gf::TowerSpec {
        p,
        e: 2 * m,
        n: 1,
        modulus: None,
        intermediate: Some(2),
        theta_power: 1,
    })
}

/// F_q-linear (ℓ, q^(2k), ℓ−k+1) MDS code over GF(q²): the n = 1
/// specialization of the TZ construction, evaluated on distinct squares.
pub fn tz_mds(tower: &Arc<Tower>, k: usize, gamma: &Elem, lambdas: &[Elem]) -> Result<Code> {
    if tower.p() == 2 {
        return Err(Error::EvenCharacteristic);
    }
    if tower.n() != 1 || tower.e() % 2 != 0 || tower.intermediate() != Some(2) {
        return Err(Error::OddExtensionDegree);
    }
    for (i, l) in lambdas.iter().enumerate() {
        if lambdas[..i].contains(l) {
            return Err(Error::LambdaNotDistinct);
        }
        if l.is_zero() || !tower.is_square(l)? {
            return Err(Error::LambdaNotSquares);
        }
    }
    if gamma.is_zero() || tower.is_square(gamma)? {
        return Err(Error::GammaConditionViolated);
    }
    let ell = lambdas.len();
    if k == 0 || k + 1 > ell {
        return Err(Error::BadDimension {
            k,
            max: ell.saturating_sub(1),
        });
    }
    let ctx = LambdaContext::new(tower.clone(), lambdas.to_vec(), None)?;
    Ok(Code {
        ctx,
        kind: CodeKind::TzHamming {
            k,
            gamma: gamma.clone(),
        },
        linearity: FieldTag::E,
        domains: tz_domains(tower, k),
        transform: vec![],
    })
}

fn tz_domains(tower: &Tower, k: usize) -> Vec<Domain> {
    let e_dom = Domain::subfield(tower, FieldTag::E);
    let mut domains = vec![e_dom.clone()];
    domains.extend(std::iter::repeat(Domain::full()).take(k.saturating_sub(1)));
    domains.push(e_dom);
    domains
}

fn check_k(ctx: &LambdaContext, k: usize) -> Result<()> {
    if k == 0 || k > ctx.dim() {
        return Err(Error::BadDimension { k, max: ctx.dim() });
    }
    Ok(())
}

fn check_eta_condition(ctx: &LambdaContext, eta: &Elem, sign_exp: u64) -> Result<()> {
    if eta.is_zero() {
        return Ok(()); // degenerates to the plain LRS code
    }
    let t = ctx.tower();
    let group = t.subgroup_generated(ctx.lambdas())?;
    let mut v = t.norm(eta);
    if sign_exp % 2 == 1 {
        v = t.neg(&v);
    }
    if group.elements.contains(&v) {
        let subgroup = group
            .elements
            .iter()
            .map(|g| t.fmt_elem(g))
            .collect::<Vec<_>>()
            .join(", ");
        return Err(Error::EtaConditionViolated {
            norm_value: t.fmt_elem(&v),
            subgroup,
        });
    }
    Ok(())
}

/// Relaxed sufficient condition: (−1)^(kn)·N(η) avoids the degree-k
/// products of Λ rather than the whole generated subgroup.
pub fn eta_condition_relaxed(ctx: &LambdaContext, eta: &Elem, k: usize) -> bool {
    let t = ctx.tower();
    if eta.is_zero() {
        return true;
    }
    let mut v = t.norm(eta);
    if (k * t.n()) % 2 == 1 {
        v = t.neg(&v);
    }
    // all products λ_{i1}⋯λ_{ik} with repetition
    let mut products = vec![t.one()];
    for _ in 0..k {
        let mut next = Vec::new();
        for prod in &products {
            for l in ctx.lambdas() {
                let x = t.mul(prod, l);
                if !next.contains(&x) {
                    next.push(x);
                }
            }
        }
        products = next;
    }
    !products.contains(&v)
}

/// Maximum number of blocks admitting a nontrivial construction.
pub fn max_blocks(kind: &str, q: u64) -> Result<usize> {
    match kind {
        "lrs" => Ok(q as usize - 1),
        "twisted" | "additive-twisted" => {
            if q == 2 {
                return Ok(0);
            }
            let r = smallest_prime_factor(q - 1);
            Ok(((q - 1) / r) as usize)
        }
        "tz" => {
            if q % 2 == 0 {
                return Err(Error::EvenCharacteristic);
            }
            Ok(((q - 1) / 2) as usize)
        }
        "tz-hamming" => {
            if q % 2 == 0 {
                return Err(Error::EvenCharacteristic);
            }
            Ok(((q * q - 1) / 2) as usize)
        }
        _ => Err(Error::Parse {
            pos: 0,
            msg: format!("unknown code kind {kind}"),
        }),
    }
}

fn smallest_prime_factor(m: u64) -> u64 {
    let mut d = 2;
    while d * d <= m {
        if m % d == 0 {
            return d;
        }
        d += 1;
    }
    m
}

fn gcd_usize(a: usize, b: usize) -> usize {
    if a == 0 {
        b
    } else {
        gcd_usize(b % a, a)
    }
}

// --- the code API ---

impl Code {
    pub fn ctx(&self) -> &Arc<LambdaContext> {
        &self.ctx
    }
    pub fn tower(&self) -> &Arc<Tower> {
        self.ctx.tower()
    }
    pub fn kind(&self) -> &CodeKind {
        &self.kind
    }
    pub fn linearity(&self) -> FieldTag {
        self.linearity
    }
    pub fn domains(&self) -> &[Domain] {
        &self.domains
    }
    pub fn transform(&self) -> &[IsometryStep] {
        &self.transform
    }

    /// Number of codewords.
    pub fn size(&self) -> u128 {
        let t = self.tower();
        self.domains.iter().map(|d| d.size(t)).product()
    }

    /// dim over F_p.
    pub fn prime_dim(&self) -> usize {
        let t = self.tower();
        self.domains
            .iter()
            .map(|d| t.tag_degree(d.tag()))
            .sum()
    }

    /// dim over the linearity field.
    pub fn dim(&self) -> usize {
        let a = self.tower().tag_degree(self.linearity);
        let d = self.prime_dim();
        debug_assert_eq!(d % a, 0);
        d / a
    }

    /// [L : F] for the linearity field F.
    pub fn column_degree(&self) -> usize {
        let t = self.tower();
        t.tag_degree(FieldTag::L) / t.tag_degree(self.linearity)
    }

    pub fn message_len(&self) -> usize {
        self.domains.len()
    }

    /// Encode a message; injective on the declared message space.
    pub fn encode(&self, msg: &[Elem]) -> Result<QuotientElem> {
        if msg.len() != self.domains.len() {
            return Err(Error::ShapeMismatch);
        }
        let t = self.tower();
        for (i, (m, d)) in msg.iter().zip(&self.domains).enumerate() {
            if !d.contains(t, m) {
                return Err(Error::MessageFieldViolation { index: i });
            }
        }
        let base = self.encode_base(msg)?;
        self.apply_transform(base)
    }

    fn encode_base(&self, msg: &[Elem]) -> Result<QuotientElem> {
        let t = self.tower().clone();
        match &self.kind {
            CodeKind::Lrs { .. } => self.ctx.from_coeffs(msg.to_vec()),
            CodeKind::TwistedLrs { k, eta, h } => {
                let mut coeffs = msg.to_vec();
                coeffs.resize(k + 1, t.zero());
                coeffs[*k] = t.mul(eta, &t.frobenius(&msg[0], *h as i64));
                self.ctx.from_coeffs(coeffs)
            }
            CodeKind::AdditiveTwisted {
                k,
                eta,
                h,
                tau_power,
            } => {
                let en = t.e() * t.n();
                let exp = ((*tau_power as u128 * *h as u128) % en.max(1) as u128) as usize;
                let mut coeffs = msg.to_vec();
                coeffs.resize(k + 1, t.zero());
                coeffs[*k] = t.mul(eta, &t.prime_frobenius(&msg[0], exp));
                self.ctx.from_coeffs(coeffs)
            }
            CodeKind::Tz { k, gamma } | CodeKind::TzHamming { k, gamma } => {
                // message layout: (f_0, f_1, …, f_{k−1}, f_k)
                let mut coeffs = msg[..*k].to_vec();
                coeffs.push(t.mul(gamma, &msg[*k]));
                self.ctx.from_coeffs(coeffs)
            }
        }
    }

    fn apply_transform(&self, mut c: QuotientElem) -> Result<QuotientElem> {
        for step in &self.transform {
            c = match step {
                IsometryStep::VAdjoint { v, src } => {
                    let dst = self.ctx.alphas().to_vec();
                    c.v_adjoint(v, src, &dst)?
                }
                IsometryStep::LeftMul(u) => u.mul(&c)?,
                IsometryStep::RightMul(u) => c.mul(u)?,
            };
        }
        Ok(c)
    }

    fn message_from_index(&self, mut idx: u128) -> Vec<Elem> {
        let t = self.tower();
        let mut msg = Vec::with_capacity(self.domains.len());
        for d in &self.domains {
            let s = d.size(t);
            msg.push(d.get(t, idx % s));
            idx /= s;
        }
        msg
    }

    /// All codewords; errors when the code exceeds the budget.
    pub fn codeword_iter(&self, budget: u128) -> Result<impl Iterator<Item = QuotientElem> + '_> {
        let size = self.size();
        if size > budget {
            return Err(Error::EnumerationBudgetExceeded { size, budget });
        }
        Ok((0..size).map(move |i| {
            self.encode(&self.message_from_index(i))
                .expect("enumerated messages are valid")
        }))
    }

    /// Exact minimum distance by message enumeration when the code fits
    /// the budget (linearity over F_p reduces pairwise distances to
    /// weights); otherwise Singleton and sampled upper bounds with an
    /// "unknown" verdict unless sampling already refutes MSRD.
    pub fn min_distance(&self, opts: DistanceOptions) -> DistanceReport {
        let size = self.size();
        let singleton = self.singleton_distance();
        if size <= opts.budget {
            let (w, idx) = self.min_weight_enumerated(size);
            let witness = self
                .encode(&self.message_from_index(idx))
                .expect("witness message is valid");
            let defect = self.singleton_defect(w);
            DistanceReport {
                distance: w,
                method: DistanceMethod::MessageEnumeration,
                exact: true,
                witness: Some(witness),
                singleton,
                defect: Some(defect),
                verdict: if defect == 0 { Verdict::Yes } else { Verdict::No },
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
            let mut best: Option<(usize, QuotientElem)> = None;
            for _ in 0..opts.samples {
                let idx = rng.gen_range(1..size);
                let c = self
                    .encode(&self.message_from_index(idx))
                    .expect("sampled message is valid");
                let w = c.weight();
                if best.as_ref().map_or(true, |(bw, _)| w < *bw) {
                    best = Some((w, c));
                }
            }
            let (w, witness) = best.expect("at least one sample");
            let verdict = if w < singleton {
                Verdict::No
            } else {
                Verdict::Unknown
            };
            DistanceReport {
                distance: w.min(singleton),
                method: DistanceMethod::Sampled,
                exact: false,
                witness: Some(witness),
                singleton,
                defect: None,
                verdict,
            }
        }
    }

    fn min_weight_enumerated(&self, size: u128) -> (usize, u128) {
        let upper = size as u64;
        (1..upper)
            .into_par_iter()
            .map(|i| {
                let c = self
                    .encode(&self.message_from_index(i as u128))
                    .expect("enumerated messages are valid");
                (c.weight(), i as u128)
            })
            .reduce(
                || (usize::MAX, u128::MAX),
                |a, b| std::cmp::min(a, b),
            )
    }

    /// Exact minimum distance over all pairs, with no linearity
    /// assumption. An independent oracle for the enumeration path.
    pub fn min_distance_pairwise(&self, budget: u128) -> Result<usize> {
        let words: Vec<QuotientElem> = self.codeword_iter(budget)?.collect();
        let mut best = usize::MAX;
        for i in 0..words.len() {
            for j in i + 1..words.len() {
                best = best.min(words[i].distance(&words[j])?);
            }
        }
        Ok(best)
    }

    /// Singleton bound on the distance: d ≤ ℓn − ⌈dim/[L:F]⌉ + 1.
    pub fn singleton_distance(&self) -> usize {
        let cols = self.column_degree();
        let dim = self.dim();
        self.ctx.dim() + 1 - dim.div_ceil(cols)
    }

    /// defect = [L:F](ℓn − d + 1) − dim_F ≥ 0; zero iff MSRD.
    pub fn singleton_defect(&self, d: usize) -> i64 {
        let cols = self.column_degree() as i64;
        cols * (self.ctx.dim() as i64 - d as i64 + 1) - self.dim() as i64
    }

    pub fn is_msrd(&self, report: &DistanceReport) -> Result<bool> {
        if !report.exact {
            return Err(Error::InexactDistance);
        }
        Ok(self.singleton_defect(report.distance) == 0)
    }

    /// Prime-field basis of the code (images of the message-space basis).
    pub fn basis_codewords(&self) -> Vec<QuotientElem> {
        let t = self.tower();
        let mut out = Vec::new();
        for (i, d) in self.domains.iter().enumerate() {
            for b in t.prime_basis(d.tag()) {
                let mut msg: Vec<Elem> = self
                    .domains
                    .iter()
                    .map(|_| t.zero())
                    .collect();
                msg[i] = b;
                out.push(self.encode(&msg).expect("basis message is valid"));
            }
        }
        out
    }

    /// Generator rows over the linearity field: images of an F-basis of
    /// the message space under encode-then-vectorize.
    pub fn generator_rows(&self) -> Vec<frameworks::VectorWord> {
        let t = self.tower();
        let lin = self.linearity;
        let mut rows = Vec::new();
        for (i, d) in self.domains.iter().enumerate() {
            for b in t.subfield_basis(d.tag(), lin) {
                let mut msg: Vec<Elem> = self.domains.iter().map(|_| t.zero()).collect();
                msg[i] = b;
                let c = self.encode(&msg).expect("basis message is valid");
                rows.push(frameworks::to_vector_default(&c));
            }
        }
        rows
    }

    /// The isometry action F(X)·(Φ_α⁻¹ ∘ Υ_v ∘ Φ_{π(α)})(C)·G(X) for units
    /// F, G (weight ℓn), a block permutation π and transpose flags v.
    pub fn apply_isometry(
        &self,
        fu: &QuotientElem,
        gu: &QuotientElem,
        perm: &[usize],
        v: &[bool],
    ) -> Result<Code> {
        let ell = self.ctx.ell();
        if perm.len() != ell || v.len() != ell {
            return Err(Error::ShapeMismatch);
        }
        let mut seen = vec![false; ell];
        for &p in perm {
            if p >= ell || seen[p] {
                return Err(Error::ShapeMismatch);
            }
            seen[p] = true;
        }
        if !fu.is_unit() || !gu.is_unit() {
            return Err(Error::NonUnitMultiplier);
        }
        let mut transform = self.transform.clone();
        let identity_middle = v.iter().all(|&b| !b) && perm.iter().enumerate().all(|(i, &p)| i == p);
        if !identity_middle {
            let src: Vec<Elem> = perm.iter().map(|&p| self.ctx.alphas()[p].clone()).collect();
            transform.push(IsometryStep::VAdjoint { v: v.to_vec(), src });
        }
        if !fu.rep().is_one() {
            transform.push(IsometryStep::LeftMul(fu.clone()));
        }
        if !gu.rep().is_one() {
            transform.push(IsometryStep::RightMul(gu.clone()));
        }
        Ok(Code {
            ctx: self.ctx.clone(),
            kind: self.kind.clone(),
            linearity: self.linearity,
            domains: self.domains.clone(),
            transform,
        })
    }

    /// Full weight spectrum (weight → count), enumerated.
    pub fn weight_spectrum(&self, budget: u128) -> Result<Vec<(usize, u128)>> {
        let mut counts = vec![0u128; self.ctx.dim() + 1];
        for c in self.codeword_iter(budget)? {
            counts[c.weight()] += 1;
        }
        Ok(counts
            .into_iter()
            .enumerate()
            .filter(|(_, c)| *c > 0)
            .collect())
    }
}

// --- duality ---

/// Prime-field basis of the dual code: the orthogonal complement of the
/// code under Tr_{L/F_p}(⟨·,·⟩_Λ). For K-linear codes this agrees with
/// the K-valued duality.
pub fn dual_basis(code: &Code) -> Vec<QuotientElem> {
    let ctx = code.ctx();
    let t = code.tower();
    let ne = t.n() * t.e();
    let dim = ctx.dim() * ne;
    let gens = code.basis_codewords();
    let lbasis = t.prime_basis(FieldTag::L);
    let mut m = Matrix::zeros(t, gens.len(), dim, FieldTag::Prime);
    for (r, g) in gens.iter().enumerate() {
        for i in 0..ctx.dim() {
            let fi = g.coeff(i);
            if fi.is_zero() {
                continue;
            }
            for (s, b) in lbasis.iter().enumerate() {
                m[(r, i * ne + s)] = t.relative_trace(&t.mul(&fi, b), 1);
            }
        }
    }
    m.nullspace(t)
        .into_iter()
        .map(|vec| {
            let coeffs: Vec<Elem> = (0..ctx.dim())
                .map(|i| {
                    let digits: Vec<u64> =
                        (0..ne).map(|s| vec[i * ne + s].coords()[0]).collect();
                    t.from_coords(&digits).expect("valid coordinates")
                })
                .collect();
            ctx.from_coeffs(coeffs).expect("degree bounded")
        })
        .collect()
}

/// Adjoints of a prime-field basis of the code; spans the adjoint code.
pub fn adjoint_basis(code: &Code) -> Result<Vec<QuotientElem>> {
    code.basis_codewords()
        .into_iter()
        .map(|c| c.adjoint())
        .collect()
}

/// Two families span the same F_p-subspace of the quotient.
pub fn span_equal(a: &[QuotientElem], b: &[QuotientElem]) -> bool {
    if a.is_empty() && b.is_empty() {
        return true;
    }
    let t = match a.first().or_else(|| b.first()) {
        Some(q) => q.tower().clone(),
        None => return true,
    };
    let to_rows = |v: &[QuotientElem]| -> Vec<Vec<Elem>> {
        v.iter()
            .map(|q| {
                q.prime_coords()
                    .iter()
                    .map(|&d| t.from_prime(d))
                    .collect()
            })
            .collect()
    };
    row_space_canon(&t, &to_rows(a), FieldTag::Prime)
        == row_space_canon(&t, &to_rows(b), FieldTag::Prime)
}

/// Closed-form dual, where one is known:
///   LRS:     C_k^⊥           = C_{ℓn−k}·X^k                 (any Λ)
///   twisted: L_k(η,h)^⊥      = L_{ℓn−k}(−θ^(n−h)(η), n−h)·X^k   (Λ a group)
///   TZ:      D_k(γ)^⊥        = γ⁻¹δ·D_{ℓn−k}(γ)·X^k         (Λ a group,
///            δ the first nonzero element with Tr_{L/E}(δ) = 0)
pub fn closed_form_dual(code: &Code) -> Result<Code> {
    assert!(
        code.transform.is_empty(),
        "closed forms apply to base constructions"
    );
    let ctx = code.ctx();
    let t = code.tower();
    let dim = ctx.dim();
    let k = code.kind.k();
    if k >= dim {
        return Err(Error::BadDimension { k, max: dim - 1 });
    }
    let xk = ctx.x_pow(k)?;
    match &code.kind {
        CodeKind::Lrs { .. } => {
            let mut dual = lrs(ctx, dim - k)?;
            dual.transform.push(IsometryStep::RightMul(xk));
            Ok(dual)
        }
        CodeKind::TwistedLrs { eta, h, .. } => {
            if !ctx.is_group() {
                return Err(Error::LambdaNotGroup);
            }
            let n = t.n();
            let eta2 = t.neg(&t.frobenius(eta, (n - h) as i64));
            let mut dual = twisted_lrs(ctx, dim - k, &eta2, n - h)?;
            dual.transform.push(IsometryStep::RightMul(xk));
            Ok(dual)
        }
        CodeKind::Tz { gamma, .. } | CodeKind::TzHamming { gamma, .. } => {
            if !ctx.is_group() {
                return Err(Error::LambdaNotGroup);
            }
            let delta = first_trace_zero(t);
            let unit = t.mul(&t.inv(gamma)?, &delta);
            let mut dual = match &code.kind {
                CodeKind::Tz { .. } => tz_code(ctx, dim - k, gamma)?,
                _ => tz_hamming_sibling(code, dim - k, gamma)?,
            };
            dual.transform
                .push(IsometryStep::LeftMul(ctx.reduce(&SkewPoly::constant(
                    t.clone(),
                    unit,
                ))?));
            dual.transform.push(IsometryStep::RightMul(xk));
            Ok(dual)
        }
        CodeKind::AdditiveTwisted { .. } => Err(Error::LambdaNotGroup),
    }
}

/// Closed-form adjoint (Λ a cyclic group):
///   LRS:     C_k^⊤       = C_k·X^(ℓn−k+1)
///   twisted: L_k(η,h)^⊤  = L_k(θ^(n−h)(η⁻¹), k−h)·X^(ℓn−k)
///   TZ:      D_k(γ)^⊤    = θ^(n−k)(γ)·D_k(θ^(n−k)(γ⁻¹))·X^(ℓn−k)
pub fn closed_form_adjoint(code: &Code) -> Result<Code> {
    assert!(
        code.transform.is_empty(),
        "closed forms apply to base constructions"
    );
    let ctx = code.ctx();
    if !ctx.is_cyclic_group() {
        return Err(Error::LambdaNotCyclicGroup);
    }
    let t = code.tower();
    let dim = ctx.dim();
    let n = t.n();
    let k = code.kind.k();
    match &code.kind {
        CodeKind::Lrs { .. } => {
            let mut adj = lrs(ctx, k)?;
            adj.transform
                .push(IsometryStep::RightMul(ctx.x_pow(dim - k + 1)?));
            Ok(adj)
        }
        CodeKind::TwistedLrs { eta, h, .. } => {
            let eta2 = if eta.is_zero() {
                t.zero()
            } else {
                t.frobenius(&t.inv(eta)?, (n - h) as i64)
            };
            let h2 = (k + n - (h % n)) % n;
            let mut adj = twisted_lrs(ctx, k, &eta2, h2)?;
            adj.transform
                .push(IsometryStep::RightMul(ctx.x_pow(dim - k)?));
            Ok(adj)
        }
        CodeKind::Tz { gamma, .. } | CodeKind::TzHamming { gamma, .. } => {
            let shift = (n - (k % n)) % n;
            let g2 = t.frobenius(&t.inv(gamma)?, shift as i64);
            let unit = t.frobenius(gamma, shift as i64);
            let mut adj = match &code.kind {
                CodeKind::Tz { .. } => tz_code(ctx, k, &g2)?,
                _ => tz_hamming_sibling(code, k, &g2)?,
            };
            adj.transform
                .push(IsometryStep::LeftMul(ctx.reduce(&SkewPoly::constant(
                    t.clone(),
                    unit,
                ))?));
            adj.transform
                .push(IsometryStep::RightMul(ctx.x_pow(dim - k)?));
            Ok(adj)
        }
        CodeKind::AdditiveTwisted { .. } => Err(Error::LambdaNotCyclicGroup),
    }
}

/// First nonzero element with zero relative trace onto E.
fn first_trace_zero(t: &Arc<Tower>) -> Elem {
    let d = t.tag_degree(FieldTag::E);
    for idx in 1..t.l_size() {
        let x = t.element(idx);
        if t.relative_trace(&x, d).is_zero() {
            return x;
        }
    }
    unreachable!("the relative trace has a nontrivial kernel");
}

/// A TzHamming code over the same context with different parameters.
fn tz_hamming_sibling(code: &Code, k: usize, gamma: &Elem) -> Result<Code> {
    let t = code.tower();
    Ok(Code {
        ctx: code.ctx.clone(),
        kind: CodeKind::TzHamming {
            k,
            gamma: gamma.clone(),
        },
        linearity: FieldTag::E,
        domains: tz_domains(t, k),
        transform: vec![],
    })
}

/// The degree/λ-value certificate: whenever Σ_λ d_λ(F) = deg F = k, the
/// identity N(f_0/f_k) = (−1)^(kn)·∏ λ^{d_λ(F)} must hold.
pub fn norm_certificate(ctx: &LambdaContext, f: &QuotientElem) -> Option<bool> {
    let rep = f.rep();
    let k = rep.deg()?;
    if k == 0 {
        return None;
    }
    let t = ctx.tower();
    let mut dsum = 0usize;
    let mut rhs = t.one();
    for l in ctx.lambdas() {
        let d = rep.lambda_value(l).ok()?;
        dsum += d;
        rhs = t.mul(&rhs, &t.pow(l, d as u128));
    }
    if dsum != k {
        return None;
    }
    if (k * t.n()) % 2 == 1 {
        rhs = t.neg(&rhs);
    }
    let f0 = rep.coeff(0);
    let fk = rep.coeff(k);
    let lhs = t.norm(&t.div(&f0, &fk).ok()?);
    Some(lhs.eq(&rhs))
}

#[cfg(test)]
mod tests;
