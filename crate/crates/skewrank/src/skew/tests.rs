use super::*;
use crate::gf::Tower;
use crate::io::parse_skew_poly;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn f125() -> Arc<Tower> {
    Tower::build(5, 1, 3).unwrap()
}

fn quartic_f(t: &Arc<Tower>) -> SkewPoly {
    parse_skew_poly(t, "X^4+2X^3+3X^2+3X+1").unwrap()
}

fn quartic_g(t: &Arc<Tower>) -> SkewPoly {
    parse_skew_poly(t, "X^4+g^55X^3+g^29X^2+g^63X+1").unwrap()
}

fn random_poly(t: &Arc<Tower>, rng: &mut ChaCha8Rng, max_deg: usize) -> SkewPoly {
    let len = rng.gen_range(0..=max_deg + 1);
    let coeffs = (0..len).map(|_| t.element(rng.gen_range(0..t.l_size()))).collect();
    SkewPoly::from_coeffs(t.clone(), coeffs)
}

#[test]
fn defining_relation_and_units() {
    let t = f125();
    let g = t.gamma();
    let x = SkewPoly::x_pow(t.clone(), 1);
    let a = SkewPoly::constant(t.clone(), g.clone());
    // X·a = θ(a)·X
    let xa = x.mul(&a).unwrap();
    assert_eq!(xa.deg(), Some(1));
    assert!(xa.coeff(1).eq(&t.frobenius(&g, 1)));
    // F·1 = 1·F = F
    let f = quartic_f(&t);
    let one = SkewPoly::one(t.clone());
    assert_eq!(f.mul(&one).unwrap(), f);
    assert_eq!(one.mul(&f).unwrap(), f);
    // (aX)(bX) = a·θ(b)·X²
    let b = t.gamma_pow(7);
    let ax = SkewPoly::monomial(t.clone(), g.clone(), 1);
    let bx = SkewPoly::monomial(t.clone(), b.clone(), 1);
    let prod = ax.mul(&bx).unwrap();
    assert!(prod.coeff(2).eq(&t.mul(&g, &t.frobenius(&b, 1))));
}

#[test]
fn tower_mismatch_rejected() {
    let t = f125();
    let s = Tower::build(3, 1, 2).unwrap();
    let f = SkewPoly::one(t);
    let g = SkewPoly::one(s);
    assert!(matches!(f.mul(&g), Err(Error::TowerMismatch)));
}

#[test]
fn degree_additivity_and_ring_axioms() {
    let t = f125();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..300 {
        let a = random_poly(&t, &mut rng, 5);
        let b = random_poly(&t, &mut rng, 5);
        let c = random_poly(&t, &mut rng, 3);
        let ab = a.mul(&b).unwrap();
        match (a.deg(), b.deg()) {
            (Some(da), Some(db)) => assert_eq!(ab.deg(), Some(da + db)),
            _ => assert!(ab.is_zero()),
        }
        let left = a.mul(&b).unwrap().mul(&c).unwrap();
        let right = a.mul(&b.mul(&c).unwrap()).unwrap();
        assert_eq!(left, right);
        let dist = a.mul(&b.add(&c).unwrap()).unwrap();
        let expect = a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap();
        assert_eq!(dist, expect);
    }
}

#[test]
fn right_division_unique_and_reconstructs() {
    let t = f125();
    let f = quartic_f(&t);
    // F divides itself
    let (q, r) = f.right_divide(&f).unwrap();
    assert!(q.is_one());
    assert!(r.is_zero());
    // the quartic right-divides X^12 - 1
    let x12 = SkewPoly::from_coeffs(t.clone(), {
        let mut c = vec![t.zero(); 13];
        c[0] = t.neg(&t.one());
        c[12] = t.one();
        c
    });
    let (_, rem) = x12.right_divide(&f).unwrap();
    assert!(rem.is_zero());
    // random reconstruction: F = Q·G + R
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for _ in 0..300 {
        let a = random_poly(&t, &mut rng, 8);
        let mut b = random_poly(&t, &mut rng, 4);
        if b.is_zero() {
            b = SkewPoly::one(t.clone());
        }
        let (q, r) = a.right_divide(&b).unwrap();
        let back = q.mul(&b).unwrap().add(&r).unwrap();
        assert_eq!(back, a);
        if let (Some(dr), Some(db)) = (r.deg(), b.deg()) {
            assert!(dr < db);
        }
    }
    assert!(matches!(
        f.right_divide(&SkewPoly::zero(t.clone())),
        Err(Error::DivisionByZero)
    ));
}

#[test]
fn gcrd_lclm_properties() {
    let t = f125();
    let f = quartic_f(&t);
    let one = SkewPoly::one(t.clone());
    assert!(f.gcrd(&one).unwrap().is_one());
    // gcrd(F, X³−3) has degree 2 = d_3(F)
    let x3m3 = SkewPoly::x_n_minus(t.clone(), &t.from_prime(3));
    assert_eq!(f.gcrd(&x3m3).unwrap().deg(), Some(2));

    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..150 {
        let mut a = random_poly(&t, &mut rng, 5);
        let mut b = random_poly(&t, &mut rng, 5);
        if a.is_zero() {
            a = SkewPoly::one(t.clone());
        }
        if b.is_zero() {
            b = SkewPoly::one(t.clone());
        }
        let g = a.gcrd(&b).unwrap();
        // gcrd right-divides both
        assert!(a.right_divide(&g).unwrap().1.is_zero());
        assert!(b.right_divide(&g).unwrap().1.is_zero());
        // lclm degree identity and divisibility
        let (m, cof) = a.lclm_with_cofactor(&b).unwrap();
        assert_eq!(
            m.deg().unwrap(),
            a.deg().unwrap() + b.deg().unwrap() - g.deg().unwrap()
        );
        assert!(m.right_divide(&a).unwrap().1.is_zero());
        assert!(m.right_divide(&b).unwrap().1.is_zero());
        assert_eq!(cof.mul(&b).unwrap(), m);
        // any common right divisor divides the gcrd: construct D·A, D·B
        let d = random_poly(&t, &mut rng, 2);
        if !d.is_zero() {
            let da = a.mul(&d).unwrap();
            let db = b.mul(&d).unwrap();
            let g2 = da.gcrd(&db).unwrap();
            assert!(g2.right_divide(&d.monic()).unwrap().1.is_zero());
        }
    }
    let z = SkewPoly::zero(t.clone());
    assert!(matches!(z.gcrd(&z), Err(Error::BothZero)));
    assert!(matches!(f.lclm(&z), Err(Error::BothZero)));
}

#[test]
fn alpha_shift_golden_and_homomorphism() {
    let t = f125();
    let f = quartic_f(&t);
    // shift by 1 is the identity
    assert_eq!(f.alpha_shift(&t.one()).unwrap(), f);
    // shift by 2 multiplies f_i by 2^i
    let f2 = f.alpha_shift(&t.from_prime(2)).unwrap();
    let expect = parse_skew_poly(&t, "X^4+X^3+2X^2+X+1").unwrap();
    assert_eq!(f2, expect);
    assert!(matches!(f.alpha_shift(&t.zero()), Err(Error::ZeroAlpha)));
    // (FG)_α = F_α·G_α
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for _ in 0..200 {
        let a = random_poly(&t, &mut rng, 4);
        let b = random_poly(&t, &mut rng, 4);
        let alpha = t.element(rng.gen_range(1..125));
        let lhs = a.mul(&b).unwrap().alpha_shift(&alpha).unwrap();
        let rhs = a
            .alpha_shift(&alpha)
            .unwrap()
            .mul(&b.alpha_shift(&alpha).unwrap())
            .unwrap();
        assert_eq!(lhs, rhs);
    }
}

#[test]
fn evaluation_basics() {
    let t = f125();
    let f = quartic_f(&t);
    assert!(f.evaluate(&t.zero()).is_zero());
    // evaluate(X^i, β) = θ^i(β)
    let g = t.gamma();
    for i in 0..6 {
        let xi = SkewPoly::x_pow(t.clone(), i);
        assert!(xi.evaluate(&g).eq(&t.frobenius(&g, i as i64)));
    }
    // evaluate(F, 1) = Σ f_i = projective_evaluate(F, 1)
    let sum = f
        .coeffs()
        .iter()
        .fold(t.zero(), |acc, c| t.add(&acc, c));
    assert!(f.evaluate(&t.one()).eq(&sum));
    assert!(f.projective_evaluate(&t.one()).eq(&sum));
    // K-linearity of evaluation
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for _ in 0..100 {
        let a = t.element(rng.gen_range(0..125));
        let b = t.element(rng.gen_range(0..125));
        let c = t.from_prime(rng.gen_range(0..5));
        let lhs = f.evaluate(&t.add(&t.mul(&c, &a), &b));
        let rhs = t.add(&t.mul(&c, &f.evaluate(&a)), &f.evaluate(&b));
        assert!(lhs.eq(&rhs));
    }
}

#[test]
fn projective_evaluation_identities() {
    let t = f125();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..200 {
        let f = random_poly(&t, &mut rng, 5);
        if f.is_zero() {
            continue;
        }
        let beta = t.element(rng.gen_range(1..125));
        // F(β) = β · P_F(ξ(β))
        let lhs = f.evaluate(&beta);
        let rhs = t.mul(&beta, &f.projective_evaluate(&t.xi(&beta).unwrap()));
        assert!(lhs.eq(&rhs));
        // P_{F_α}(β) = P_F(αβ)
        let alpha = t.element(rng.gen_range(1..125));
        let shifted = f.alpha_shift(&alpha).unwrap();
        assert!(shifted
            .projective_evaluate(&beta)
            .eq(&f.projective_evaluate(&t.mul(&alpha, &beta))));
    }
}

#[test]
fn lambda_values_golden() {
    let t = f125();
    let f = quartic_f(&t);
    let d: Vec<usize> = (1..5)
        .map(|i| f.lambda_value(&t.from_prime(i)).unwrap())
        .collect();
    assert_eq!(d, vec![1, 0, 2, 1]);

    let g = quartic_g(&t);
    let d: Vec<usize> = (1..5)
        .map(|i| g.lambda_value(&t.from_prime(i)).unwrap())
        .collect();
    assert_eq!(d, vec![1, 0, 1, 0]);

    // d_λ(X^n − λ) = n
    let lam = t.from_prime(3);
    let xn = SkewPoly::x_n_minus(t.clone(), &lam);
    assert_eq!(xn.lambda_value(&lam).unwrap(), 3);

    let z = SkewPoly::zero(t.clone());
    assert!(matches!(z.lambda_value(&lam), Err(Error::ZeroPolynomial)));
    assert!(matches!(f.lambda_value(&t.zero()), Err(Error::ZeroLambda)));
}

#[test]
fn kernel_basis_and_dimensions() {
    let t = f125();
    // ker(X - 1) = ker(θ - id) = K
    let xm1 = parse_skew_poly(&t, "X-1").unwrap();
    let basis = xm1.kernel_basis();
    assert_eq!(basis.len(), 1);
    assert!(t.in_field(&basis[0], crate::gf::FieldTag::K));
    // unit operator has trivial kernel
    assert!(SkewPoly::one(t.clone()).kernel_basis().is_empty());
    // zero polynomial: kernel is all of L
    assert_eq!(SkewPoly::zero(t.clone()).kernel_basis().len(), 3);
    // dim ker F = d_1(F) on random polynomials
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    for _ in 0..100 {
        let f = random_poly(&t, &mut rng, 6);
        if f.is_zero() {
            continue;
        }
        let dim = f.kernel_basis().len();
        assert_eq!(dim, f.lambda_value(&t.one()).unwrap());
        for b in f.kernel_basis() {
            assert!(f.evaluate(&b).is_zero());
        }
    }
}

#[test]
fn kernel_shift_matches_lambda_value() {
    // Prop: dim ker(F_α) = d_{N(α)}(F), exhaustive over α for small L
    let t = Tower::build(3, 1, 2).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..60 {
        let f = random_poly(&t, &mut rng, 4);
        if f.is_zero() {
            continue;
        }
        for i in 1..9u128 {
            let alpha = t.element(i);
            let shifted = f.alpha_shift(&alpha).unwrap();
            let dim = shifted.kernel_basis().len();
            assert_eq!(dim, f.lambda_value(&t.norm(&alpha)).unwrap());
        }
    }
}

#[test]
fn companion_and_a_matrix() {
    let t = f125();
    // 1×1 case: F = X − a
    let a = t.gamma_pow(9);
    let f = SkewPoly::from_coeffs(t.clone(), vec![t.neg(&a), t.one()]);
    let c = f.companion_matrix().unwrap();
    assert_eq!((c.rows(), c.cols()), (1, 1));
    assert!(c[(0, 0)].eq(&a));
    let am = f.a_matrix().unwrap();
    assert!(am[(0, 0)].eq(&t.norm(&a)));

    // eigenspace dimensions equal λ-values of the shift
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for _ in 0..60 {
        let mut f = random_poly(&t, &mut rng, 4);
        if f.deg().unwrap_or(0) == 0 {
            f = quartic_f(&t);
        }
        let am = f.a_matrix().unwrap();
        for i in 1..125 {
            if i % 17 != 0 && i > 30 {
                continue; // sample α values
            }
            let alpha = t.element(i);
            let shifted = f.alpha_shift(&alpha).unwrap();
            let lhs = shifted.kernel_basis().len();
            let rhs = am.eigenspace_dim(&t, &t.norm(&alpha));
            assert_eq!(lhs, rhs);
        }
        // det(A_F) = (−1)^{dn}·N(f_0/f_d)
        let d = f.deg().unwrap();
        let det = am.det(&t);
        let ratio = t.div(&f.coeff(0), &f.coeff(d)).unwrap();
        let mut expect = t.norm(&ratio);
        if (d * t.n()) % 2 == 1 {
            expect = t.neg(&expect);
        }
        assert!(det.eq(&expect));
    }
}

#[test]
fn degree_bound_and_divisibility() {
    // Σ_α dim ker(F_α) ≤ deg F, equality iff F right-divides H_Λ
    let t = f125();
    let alphas: Vec<Elem> = (1..5).map(|i| t.from_prime(i)).collect();
    let h = {
        let mut acc = SkewPoly::one(t.clone());
        for a in &alphas {
            let lam = t.norm(a);
            acc = acc.mul(&SkewPoly::x_n_minus(t.clone(), &lam)).unwrap();
        }
        acc
    };
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    for _ in 0..80 {
        let f = random_poly(&t, &mut rng, 6);
        if f.is_zero() {
            continue;
        }
        let total: usize = alphas
            .iter()
            .map(|a| f.alpha_shift(a).unwrap().kernel_basis().len())
            .sum();
        let deg = f.deg().unwrap();
        assert!(total <= deg);
        let divides = h.right_divide(&f).unwrap().1.is_zero();
        assert_eq!(total == deg, divides);
    }
    // constructed divisors of H: gcrd(G, H) always achieves equality
    for _ in 0..40 {
        let g = random_poly(&t, &mut rng, 8);
        if g.is_zero() {
            continue;
        }
        let d = g.gcrd(&h).unwrap();
        if d.deg().unwrap_or(0) == 0 {
            continue;
        }
        let total: usize = alphas
            .iter()
            .map(|a| d.alpha_shift(a).unwrap().kernel_basis().len())
            .sum();
        assert_eq!(total, d.deg().unwrap());
    }
}

#[test]
fn projective_root_count_stratifies() {
    // |{β ∈ L* : P_F(β) = 0}| = Σ_λ (q^{d_λ} − 1)/(q − 1), f_0 ≠ 0
    let t = f125();
    let q = 5u128;
    let mut rng = ChaCha8Rng::seed_from_u64(15);
    let mut checked = 0;
    while checked < 40 {
        let f = random_poly(&t, &mut rng, 4);
        if f.is_zero() || f.coeff(0).is_zero() {
            continue;
        }
        checked += 1;
        let count = (1..125u128)
            .filter(|&i| f.projective_evaluate(&t.element(i)).is_zero())
            .count() as u128;
        let expect: u128 = (1..5u64)
            .map(|i| {
                let d = f.lambda_value(&t.from_prime(i)).unwrap() as u32;
                (q.pow(d) - 1) / (q - 1)
            })
            .sum();
        assert_eq!(count, expect);
    }
}

#[test]
fn pretty_print_matches_notation() {
    let t = f125();
    let f = quartic_f(&t);
    assert_eq!(f.pretty(), "X^4+2X^3+3X^2+3X+1");
    assert_eq!(SkewPoly::zero(t.clone()).pretty(), "0");
    let g = quartic_g(&t);
    assert_eq!(g.pretty(), "X^4+g^55X^3+g^29X^2+g^63X+1");
}
