use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use wronski_core::bethe::{
    beta_operator, epsilon_matrix, eval_beta, fundamental_operator_coeffs, verify_identities, BetheFamily,
    IdentityKind, ZParams,
};
use wronski_core::combinatorics::{partitions_of, partitions_up_to, syt_count, Partition, Permutation};
use wronski_core::grassmann::{normalization, syt_weight};
use wronski_core::linalg::{charpoly, symmetric_eigen};
use wronski_core::specht::{build_rep, RepForm, SpechtRep};
use wronski_core::{int, rational, Matrix, Poly, Rational, Scalar};

fn p(parts: &[usize]) -> Partition {
    Partition::new(parts.to_vec()).unwrap()
}

fn zq(values: &[i64]) -> ZParams<Rational> {
    ZParams::new(values.iter().map(|&v| int(v)).collect())
}

fn exact(nu: &Partition) -> SpechtRep<Rational> {
    build_rep(nu, RepForm::SeminormalExact).unwrap()
}

fn random_rational(rng: &mut ChaCha8Rng) -> Rational {
    rational(rng.gen_range(-20..=20), rng.gen_range(1..=7))
}

#[test]
fn two_point_operators() {
    let z = zq(&[2, 3]);
    for (nu, b2, b11) in [(p(&[2]), 2, 0), (p(&[1, 1]), 0, 2)] {
        let fam = BetheFamily::new(&exact(&nu), &z).unwrap();
        let zero = int(0);
        assert_eq!(fam.beta_at(&Partition::empty(), &zero), Matrix::scalar(1, int(6)));
        assert_eq!(fam.beta_at(&p(&[1]), &zero), Matrix::scalar(1, int(5)));
        assert_eq!(fam.beta_at(&p(&[2]), &zero), Matrix::scalar(1, int(b2)));
        assert_eq!(fam.beta_at(&p(&[1, 1]), &zero), Matrix::scalar(1, int(b11)));
        for lam in partitions_up_to(2).into_iter().skip(4) {
            assert!(fam.beta_at(&lam, &zero).is_zero());
        }
        for lam in [p(&[2, 1]), p(&[2, 2]), p(&[3])] {
            assert!(fam.beta(&lam).is_zero());
        }
        let b = |l: &[usize]| fam.beta_at(&p(l), &zero);
        let rel = b(&[]).mul(&b(&[2, 2])).scale(&int(-1)).add(&b(&[1]).mul(&b(&[2, 1]))).sub(&b(&[1, 1]).mul(&b(&[2])));
        assert!(rel.is_zero());
    }
}

#[test]
fn epsilon_examples() {
    let z = zq(&[2, 3]);
    for nu in [p(&[2]), p(&[1, 1])] {
        let rep = exact(&nu);
        let swap = rep.rep_matrix(&Permutation::transposition(2, 0, 1)).unwrap();
        assert_eq!(epsilon_matrix(&rep, &p(&[2]), 0, &z).unwrap(), swap);
        assert_eq!(epsilon_matrix(&rep, &p(&[1]), 1, &z).unwrap(), Matrix::scalar(1, int(5)));
        assert!(epsilon_matrix(&rep, &p(&[2]), 1, &z).is_err());
    }
}

#[test]
fn three_point_column_operator() {
    let z = zq(&[2, 5, 7]);
    for nu in partitions_of(3, None, None) {
        let rep = exact(&nu);
        let id = Matrix::identity(rep.dim);
        let t = |a, b| id.sub(&rep.rep_matrix(&Permutation::transposition(3, a, b)).unwrap());
        let expected = t(0, 1).scale(&int(7)).add(&t(0, 2).scale(&int(5))).add(&t(1, 2).scale(&int(2)));
        let fam = BetheFamily::new(&rep, &z).unwrap();
        assert_eq!(fam.raw_beta_coeffs(&p(&[1, 1])).last().unwrap(), &expected, "{nu}");
        let e11 = fam.epsilon(&p(&[1, 1]), 1).unwrap();
        let e2 = fam.epsilon(&p(&[2]), 1).unwrap();
        assert_eq!(e11.sub(e2), expected);
    }
}

/// The basis of `S^{(2,2)}` in which `s_1, s_3` act as `[[1,0],[1,-1]]` and `s_2` as `[[0,-1],[-1,0]]`.
fn square_rep() -> SpechtRep<Rational> {
    let a = Matrix::from_rows(vec![vec![int(1), int(0)], vec![int(1), int(-1)]]);
    let b = Matrix::from_rows(vec![vec![int(0), int(-1)], vec![int(-1), int(0)]]);
    SpechtRep::from_generators(&p(&[2, 2]), vec![a.clone(), b, a], RepForm::SeminormalExact).unwrap()
}

#[test]
fn square_shape_worked_example() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut points = vec![[int(1), int(2), int(3), int(4)]];
    points.push(std::array::from_fn(|_| random_rational(&mut rng)));
    for zs in points {
        let [z1, z2, z3, z4] = zs.clone();
        let z = ZParams::new(zs.to_vec());
        let e1 = &z1 + &z2 + &z3 + &z4;
        let e3 = &z1 * &z2 * &z3 + &z1 * &z2 * &z4 + &z1 * &z3 * &z4 + &z2 * &z3 * &z4;
        let m = |rows: [[Rational; 2]; 2]| Matrix::from_rows(rows.iter().map(|r| r.to_vec()).collect());
        let b2 = m([
            [int(2) * &z1 * &z2 + &z1 * &z4 + &z2 * &z3 + int(2) * &z3 * &z4, &z1 * &z3 - &z1 * &z4 - &z2 * &z3 + &z2 * &z4],
            [&z1 * &z2 - &z1 * &z4 - &z2 * &z3 + &z3 * &z4, int(2) * &z1 * &z3 + &z1 * &z4 + &z2 * &z3 + int(2) * &z2 * &z4],
        ]);
        let b11 = m([
            [int(2) * &z1 * &z3 + &z1 * &z4 + &z2 * &z3 + int(2) * &z2 * &z4, -(&z1 * &z3) + &z1 * &z4 + &z2 * &z3 - &z2 * &z4],
            [-(&z1 * &z2) + &z1 * &z4 + &z2 * &z3 - &z3 * &z4, int(2) * &z1 * &z2 + &z1 * &z4 + &z2 * &z3 + int(2) * &z3 * &z4],
        ]);
        let zero = int(0);
        let check = |rep: &SpechtRep<Rational>, entrywise: bool| {
            let fam = BetheFamily::new(rep, &z).unwrap();
            let b = |l: &[usize]| fam.beta_at(&p(l), &zero);
            assert_eq!(b(&[]), Matrix::scalar(2, z.product()));
            assert_eq!(b(&[1]), Matrix::scalar(2, e3.clone()));
            assert_eq!(b(&[2, 1]), Matrix::scalar(2, int(3) * &e1));
            assert_eq!(b(&[2, 2]), Matrix::scalar(2, int(12)));
            assert_eq!(b(&[2]).trace(), b2.trace());
            assert_eq!(b(&[1, 1]).trace(), b11.trace());
            if entrywise {
                assert_eq!(b(&[2]), b2);
                assert_eq!(b(&[1, 1]), b11);
            }
            let rel = b(&[]).mul(&b(&[2, 2])).scale(&int(-1)).add(&b(&[1]).mul(&b(&[2, 1]))).sub(&b(&[1, 1]).mul(&b(&[2])));
            assert!(rel.is_zero());
            for lam in partitions_up_to(4) {
                if !p(&[2, 2]).contains(&lam) {
                    assert!(fam.raw_beta_coeffs(&lam).iter().all(Matrix::is_zero), "{lam}");
                }
            }
        };
        check(&exact(&p(&[2, 2])), false);
        check(&square_rep(), true);
    }
}

#[test]
fn eval_examples() {
    let z = zq(&[1, -2, 4]);
    let t = rational(3, 5);
    let g = Poly::from_shifts(&z.values).eval(&t);
    for nu in partitions_of(3, None, None) {
        let rep = exact(&nu);
        let b0 = beta_operator(&rep, &Partition::empty(), &z).unwrap();
        assert_eq!(eval_beta(&b0, &t), Matrix::scalar(rep.dim, g.clone()));
        let top = beta_operator(&rep, &nu, &z).unwrap();
        assert_eq!(eval_beta(&top, &t), Matrix::scalar(rep.dim, normalization::<Rational>(&nu)));
        for op in [&b0, &top] {
            assert_eq!(eval_beta(op, &int(0)), *op.coeffs.last().unwrap());
        }
        let fundamental = fundamental_operator_coeffs(&rep, &z).unwrap();
        assert_eq!(fundamental.len(), 4);
        assert_eq!(eval_beta(&fundamental[0], &t), Matrix::scalar(rep.dim, g.clone()));
    }
    let sign = exact(&p(&[1, 1]));
    let fundamental = fundamental_operator_coeffs(&sign, &zq(&[2, 3])).unwrap();
    assert_eq!(eval_beta(&fundamental[2], &int(0)), Matrix::scalar(1, int(2)));
}

#[test]
fn fundamental_operator_kills_the_solution_space() {
    // On the one-dimensional modules of S_2 the operators are scalars, and the
    // solution spaces are spanned by explicit polynomials.
    let (z1, z2) = (int(2), int(3));
    let z = ZParams::new(vec![z1.clone(), z2.clone()]);
    let u = Poly::new(vec![int(0), int(1)]);
    let cases = [
        (p(&[2]), vec![Poly::constant(int(1)), Poly::new(vec![int(0), &z1 * &z2 / int(2), (&z1 + &z2) / int(4), rational(1, 6)])]),
        (p(&[1, 1]), vec![Poly::new(vec![(&z1 + &z2) / int(2), int(1)]), Poly::new(vec![-(&z1 * &z2), int(0), int(1)])]),
    ];
    for (nu, basis) in cases {
        let fam = BetheFamily::new(&exact(&nu), &z).unwrap();
        let scalar_poly = |k: usize| {
            let op = fam.beta(&Partition::column(k));
            op.coeffs.iter().fold(Poly::zero(), |acc, c| acc.mul(&u).add(&Poly::constant(c[(0, 0)].clone())))
        };
        for f in &basis {
            let mut total = Poly::zero();
            for k in 0..=2 {
                let mut d = f.clone();
                for _ in 0..2 - k {
                    d = d.derivative();
                }
                let term = scalar_poly(k).mul(&d);
                total = if k % 2 == 0 { total.add(&term) } else { total.sub(&term) };
            }
            assert!(total.is_zero(), "{nu}");
        }
    }
}

#[test]
fn vanishing_and_central_scalars() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for n in 1..=5 {
        let c = random_rational(&mut rng);
        let z = ZParams::new(vec![c; n]);
        for nu in partitions_of(n, None, None) {
            let rep = exact(&nu);
            let fam = BetheFamily::new(&rep, &z).unwrap();
            for lam in partitions_up_to(n) {
                let coeffs = fam.raw_beta_coeffs(&lam);
                for m in &coeffs {
                    if nu.contains(&lam) {
                        assert_eq!(*m, Matrix::scalar(rep.dim, m[(0, 0)].clone()), "{nu} {lam}");
                    } else {
                        assert!(m.is_zero(), "{nu} {lam}");
                    }
                }
            }
        }
    }
}

#[test]
fn hermitian_and_positive() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for n in 2..=5 {
        for nu in partitions_of(n, None, None) {
            let rep = build_rep::<f64>(&nu, RepForm::OrthogonalFloat).unwrap();
            let positive: Vec<f64> = (0..n).map(|_| rng.gen_range(0.1..2.0)).collect();
            let mut nonneg = positive.clone();
            nonneg[0] = 0.0;
            for (z, strict) in [(positive, true), (nonneg, false)] {
                let fam = BetheFamily::new(&rep, &ZParams::new(z)).unwrap();
                let t: f64 = rng.gen_range(-1.0..1.0);
                for lam in partitions_up_to(n) {
                    let m = fam.beta_at(&lam, &t);
                    assert!(m.sub(&m.transpose()).max_abs() <= 1e-9 * m.max_abs().max(1.0));
                    if !nu.contains(&lam) {
                        continue;
                    }
                    let b = fam.beta_at(&lam, &0.0);
                    let low = symmetric_eigen(&b).values[0];
                    assert!(low >= -1e-9 * b.max_abs().max(1.0), "{nu} {lam} {low}");
                    if strict {
                        assert!(low > 0.0, "{nu} {lam} {low}");
                    }
                }
            }
        }
    }
}

#[test]
fn sign_twist_exchanges_conjugates() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for n in 1..=5 {
        let z = ZParams::new((0..n).map(|_| random_rational(&mut rng)).collect());
        for nu in partitions_of(n, None, None) {
            let rep = exact(&nu);
            let twisted = rep.sign_twist();
            let conj = exact(&nu.conjugate());
            let fam = BetheFamily::new(&rep, &z).unwrap();
            let fam_twisted = BetheFamily::new(&twisted, &z).unwrap();
            let fam_conj = BetheFamily::new(&conj, &z).unwrap();
            for lam in partitions_up_to(n) {
                let tw = fam_twisted.raw_beta_coeffs(&lam);
                assert_eq!(tw, fam.raw_beta_coeffs(&lam.conjugate()), "{nu} {lam}");
                for (a, b) in tw.iter().zip(fam_conj.raw_beta_coeffs(&lam)) {
                    assert_eq!(charpoly(a), charpoly(&b), "{nu} {lam}");
                }
            }
        }
    }
}

#[test]
fn rectangular_inversion() {
    let nu = p(&[2, 2]);
    let z = zq(&[1, 2, 3, 5]);
    let rep = exact(&nu);
    let fam = BetheFamily::new(&rep, &z).unwrap();
    let fam_inv = BetheFamily::new(&rep, &z.inverses().unwrap()).unwrap();
    let inv_prod = int(1) / z.product();
    let zero = int(0);
    for lam in partitions_up_to(4).into_iter().filter(|l| nu.contains(l)) {
        let comp = lam.complement(2, 2).unwrap();
        let lhs = fam_inv.beta_at(&lam, &zero).scale(&syt_weight(&lam));
        let rhs = fam.beta_at(&comp, &zero).scale(&(syt_weight(&comp) * &inv_prod));
        assert_eq!(lhs, rhs, "{lam}");
    }
    assert!(zq(&[0, 1]).inverses().is_err());
}

#[test]
fn identity_suite_small() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for n in 1..=4 {
        let z = ZParams::new((0..n).map(|_| random_rational(&mut rng)).collect());
        let points: Vec<_> = (0..2).map(|_| (random_rational(&mut rng), random_rational(&mut rng))).collect();
        for nu in partitions_of(n, None, None) {
            let rep = exact(&nu);
            for which in [
                IdentityKind::Commutativity,
                IdentityKind::Translation,
                IdentityKind::PluckerSingleColumn,
                IdentityKind::PluckerSingleRow,
                IdentityKind::PluckerAll,
            ] {
                let report = verify_identities(&rep, &z, which, &points).unwrap();
                assert!(report.passed(), "{nu} {} {:?}", which.name(), report.failures);
                assert!(report.checks > 0 || n == 1);
            }
        }
    }
}

#[test]
fn identity_suite_detects_a_broken_operator() {
    // A rep with the wrong character fails validation, and a wrong translation
    // weight is caught by comparing the two sides directly.
    let a = Matrix::from_rows(vec![vec![int(1), int(0)], vec![int(0), int(1)]]);
    assert!(SpechtRep::from_generators(&p(&[2, 2]), vec![a.clone(), a.clone(), a], RepForm::SeminormalExact).is_err());
    let z = zq(&[1, 2, 4]);
    let fam = BetheFamily::new(&exact(&p(&[2, 1])), &z).unwrap();
    let (s, t) = (int(1), int(2));
    let lhs = fam.beta_at(&Partition::empty(), &(&s + &t));
    let mut rhs = Matrix::zeros(2, 2);
    for lam in partitions_up_to(3) {
        rhs.add_scaled(&(syt_weight(&lam) * Scalar::pow(&t, lam.size()) * int(2)), &fam.beta_at(&lam, &s));
    }
    assert_ne!(lhs, rhs);
}

#[test]
fn float_and_exact_builds_agree_on_invariants() {
    let zr = [rational(1, 2), rational(3, 1), rational(-2, 3), rational(5, 4)];
    let zf: Vec<f64> = zr.iter().map(Scalar::to_f64).collect();
    for nu in partitions_of(4, None, None) {
        let fe = BetheFamily::new(&exact(&nu), &ZParams::new(zr.to_vec())).unwrap();
        let ff = BetheFamily::new(&build_rep::<f64>(&nu, RepForm::OrthogonalFloat).unwrap(), &ZParams::new(zf.clone())).unwrap();
        for lam in partitions_up_to(4) {
            let a = fe.beta_at(&lam, &int(0));
            let b = ff.beta_at(&lam, &0.0);
            let (ca, cb) = (charpoly(&a), charpoly(&b));
            for (x, y) in ca.iter().zip(&cb) {
                assert!((x.to_f64() - y).abs() <= 1e-8 * x.to_f64().abs().max(1.0), "{nu} {lam}");
            }
        }
    }
    assert_eq!(syt_count(&p(&[2, 2])), 2);
}
