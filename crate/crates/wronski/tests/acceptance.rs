//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.

use std::collections::BTreeMap;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use wronski_core::bethe::{BetheFamily, IdentityKind, ZParams};
use wronski_core::combinatorics::{
    count_z_factorizations, partitions_of, partitions_up_to, syt_count, z_factorization_table, Partition, Permutation,
    SjtWalk,
};
use wronski_core::grassmann::{
    echelon_basis, h_basis, partial_wronskians, pluckers_of_matrix, plucker_relations, positivity_check,
    sample_relations, single_row_polys, syt_weight, wronskian_of_polys, PluckerVector, PositivityMode, PolyVector,
    RelationFamily,
};
use wronski_core::solver::{
    count_solutions_repeated, schubert_projection, solution_residuals, residual_relations, solve_inverse_wronski,
    SolveConfig, Solution,
};
use wronski_core::specht::{build_rep, RepForm, SpechtRep};
use wronski_core::symfunc::{bethe_dimension, partition_tuples, product_multiplicity};
use wronski_core::{int, rational, Matrix, Poly, Rational};

type Check = Result<String, String>;

fn ensure(cond: bool, what: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(what())
    }
}

fn p(parts: &[usize]) -> Partition {
    Partition::new(parts.to_vec()).unwrap()
}

fn exact(nu: &Partition) -> SpechtRep<Rational> {
    build_rep(nu, RepForm::SeminormalExact).unwrap()
}

fn random_rational(rng: &mut ChaCha8Rng) -> Rational {
    rational(rng.gen_range(-20..=20), rng.gen_range(1..=7))
}

fn distinct_rationals(rng: &mut ChaCha8Rng, k: usize) -> Vec<Rational> {
    let mut out: Vec<Rational> = Vec::new();
    while out.len() < k {
        let v = random_rational(rng);
        if !out.contains(&v) {
            out.push(v);
        }
    }
    out
}

fn poly(coeffs: &[Rational]) -> Poly<Rational> {
    Poly::new(coeffs.to_vec())
}

fn plucker(nu: &[usize], entries: &[(&[usize], Rational)]) -> PluckerVector<Rational> {
    PluckerVector::from_entries(p(nu), entries.iter().map(|(l, v)| (p(l), v.clone())).collect()).unwrap()
}

fn worked_examples() -> Check {
    let (z1, z2) = (int(2), int(3));
    let z = ZParams::new(vec![z1.clone(), z2.clone()]);
    let zero = int(0);
    let t = rational(7, 3);
    let g = poly(&[int(6), int(5), int(1)]);
    let first = plucker(&[2], &[(&[], int(6)), (&[1], int(5)), (&[2], int(2))]);
    let second = plucker(&[1, 1], &[(&[], int(6)), (&[1], int(5)), (&[1, 1], int(2))]);
    for (nu, expected) in [(p(&[2]), &first), (p(&[1, 1]), &second)] {
        let fam = BetheFamily::new(&exact(&nu), &z).unwrap();
        ensure(fam.beta_at(&Partition::empty(), &t) == Matrix::scalar(1, g.eval(&t)), || format!("β^∅(t) on {nu}"))?;
        let mut entries = BTreeMap::new();
        for lam in partitions_up_to(2) {
            let m = fam.beta_at(&lam, &zero);
            ensure(m == Matrix::scalar(1, expected.get(&lam)), || format!("β^{lam}(0) on {nu}"))?;
            entries.insert(lam, m[(0, 0)].clone());
        }
        for lam in [p(&[2, 1]), p(&[2, 2]), p(&[3])] {
            ensure(fam.beta(&lam).is_zero(), || format!("β^{lam} should vanish on {nu}"))?;
        }
        let eig = PluckerVector::from_entries(nu.clone(), entries).unwrap();
        ensure(&eig == expected, || format!("eigenvalue vector on {nu}"))?;
        let (w, r) = solution_residuals(&eig, &[z1.clone(), z2.clone()], &residual_relations(2));
        ensure(w == int(0) && r == int(0), || format!("residuals on {nu}"))?;
    }
    let a = Matrix::from_rows(vec![
        vec![int(1), int(0), int(0), int(0)],
        vec![int(0), &z1 * &z2, &z1 + &z2, int(2)],
    ]);
    let minors = pluckers_of_matrix(&a);
    let expected_minors: BTreeMap<Partition, Rational> =
        [(p(&[]), int(6)), (p(&[1]), int(5)), (p(&[2]), int(2))].into_iter().collect();
    ensure(minors == expected_minors, || format!("minors {minors:?}"))?;
    let ech = echelon_basis(&first, 2).unwrap();
    ensure(ech[0].to_poly() == poly(&[int(1)]), || "first echelon vector".into())?;
    let f2 = poly(&[int(0), &z1 * &z2 / int(2), (&z1 + &z2) / int(4), rational(1, 6)]);
    ensure(ech[1].to_poly() == f2, || "second echelon vector".into())?;
    let t = int(-1);
    let ut = poly(&[t.clone(), int(1)]);
    let c = (&z1 - &t) * (&z2 - &t);
    let lin = ut.scale(&c).add(&ut.mul(&ut).scale(&((&z1 + &z2 - int(2) * &t) / int(2))));
    let h_first = [lin.add(&ut.mul(&ut).mul(&ut).scale(&rational(1, 3))), poly(&[c.clone()])];
    let h_second = [lin, poly(&[c]).sub(&ut.mul(&ut))];
    for (delta, expected) in [(&first, &h_first), (&second, &h_second)] {
        let hb = h_basis(&single_row_polys(delta), 2, 4, &t, &[z1.clone(), z2.clone()]).unwrap();
        let got: Vec<Poly<Rational>> = hb.iter().map(PolyVector::to_poly).collect();
        ensure(got == expected.to_vec(), || format!("h-basis for {}", delta.nu))?;
    }
    Ok("two-point operators and solutions, 2x4 minors, echelon basis, h-basis".into())
}

fn square_shape_example() -> Check {
    let zs = [int(1), int(2), int(3), int(4)];
    let [z1, z2, z3, z4] = zs.clone();
    let z = ZParams::new(zs.to_vec());
    let m = |rows: [[Rational; 2]; 2]| Matrix::from_rows(rows.iter().map(|r| r.to_vec()).collect());
    let b2 = m([
        [int(2) * &z1 * &z2 + &z1 * &z4 + &z2 * &z3 + int(2) * &z3 * &z4, &z1 * &z3 - &z1 * &z4 - &z2 * &z3 + &z2 * &z4],
        [&z1 * &z2 - &z1 * &z4 - &z2 * &z3 + &z3 * &z4, int(2) * &z1 * &z3 + &z1 * &z4 + &z2 * &z3 + int(2) * &z2 * &z4],
    ]);
    let b11 = m([
        [int(2) * &z1 * &z3 + &z1 * &z4 + &z2 * &z3 + int(2) * &z2 * &z4, -(&z1 * &z3) + &z1 * &z4 + &z2 * &z3 - &z2 * &z4],
        [-(&z1 * &z2) + &z1 * &z4 + &z2 * &z3 - &z3 * &z4, int(2) * &z1 * &z2 + &z1 * &z4 + &z2 * &z3 + int(2) * &z3 * &z4],
    ]);
    let s = Matrix::from_rows(vec![vec![int(1), int(0)], vec![int(1), int(-1)]]);
    let s2 = Matrix::from_rows(vec![vec![int(0), int(-1)], vec![int(-1), int(0)]]);
    let generated = SpechtRep::from_generators(&p(&[2, 2]), vec![s.clone(), s2, s], RepForm::SeminormalExact).unwrap();
    let zero = int(0);
    for (rep, entrywise) in [(exact(&p(&[2, 2])), false), (generated, true)] {
        let fam = BetheFamily::new(&rep, &z).unwrap();
        let b = |l: &[usize]| fam.beta_at(&p(l), &zero);
        ensure(b(&[]) == Matrix::scalar(2, int(24)), || "β^∅".into())?;
        ensure(b(&[1]) == Matrix::scalar(2, int(50)), || "β^1".into())?;
        ensure(b(&[2, 1]) == Matrix::scalar(2, int(30)), || "β^21".into())?;
        ensure(b(&[2, 2]) == Matrix::scalar(2, int(12)), || "β^22".into())?;
        ensure(b(&[2]).trace() == b2.trace() && b(&[1, 1]).trace() == b11.trace(), || "traces".into())?;
        if entrywise {
            ensure(b(&[2]) == b2 && b(&[1, 1]) == b11, || "entrywise β^2, β^11".into())?;
        }
        let rel = b(&[]).mul(&b(&[2, 2])).scale(&int(-1)).add(&b(&[1]).mul(&b(&[2, 1]))).sub(&b(&[1, 1]).mul(&b(&[2])));
        ensure(rel.is_zero(), || "quadratic relation".into())?;
    }
    Ok("scalar operators, traces, relation; entrywise in the matching basis".into())
}

fn identity_suite() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut checks = 0usize;
    let mut sampled = 0usize;
    for n in 1..=6 {
        let draws = if n <= 5 { 3 } else { 1 };
        let mut rels: BTreeMap<IdentityKind, Vec<_>> = BTreeMap::new();
        rels.insert(IdentityKind::PluckerSingleColumn, plucker_relations(n, 2 * n, RelationFamily::SingleColumn));
        rels.insert(IdentityKind::PluckerSingleRow, plucker_relations(n, 2 * n, RelationFamily::SingleRow));
        if n <= 5 {
            rels.insert(IdentityKind::PluckerAll, plucker_relations(n, 2 * n, RelationFamily::All));
        } else {
            let s = sample_relations(n, 2 * n, 10_000, &mut rng);
            ensure(s.len() >= 10_000, || format!("only {} sampled relations", s.len()))?;
            sampled = s.len();
            rels.insert(IdentityKind::PluckerSampled, s);
        }
        for _ in 0..draws {
            let z = ZParams::new(distinct_rationals(&mut rng, n));
            let points: Vec<(Rational, Rational)> =
                (0..3).map(|_| (random_rational(&mut rng), random_rational(&mut rng))).collect();
            let ts: Vec<Rational> = points.iter().map(|(_, t)| t.clone()).collect();
            let results: Vec<Result<usize, String>> = partitions_of(n, None, None)
                .par_iter()
                .map(|nu| {
                    let fam = BetheFamily::new(&exact(nu), &z).map_err(|e| e.to_string())?;
                    let mut count = 0;
                    let mut reports = vec![fam.check_commutativity(&points, 0.0), fam.check_translation(&points, 0.0)];
                    for (kind, list) in &rels {
                        reports.push(fam.check_relations(*kind, list, &ts, 0.0));
                    }
                    for r in reports {
                        count += r.checks;
                        if !r.passed() {
                            return Err(format!("n={n} {nu} {}: {:?}", r.identity.name(), r.failures.first()));
                        }
                    }
                    Ok(count)
                })
                .collect();
            for r in results {
                checks += r?;
            }
        }
    }
    Ok(format!("n ≤ 6, {checks} exact checks, {sampled} sampled relations at n = 6"))
}

struct SolvedInstance {
    nu: Partition,
    solutions: Vec<Solution>,
}

fn inverse_wronski(store: &mut Vec<SolvedInstance>) -> Check {
    let cfg = SolveConfig::default();
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut count = 0;
    let mut worst = 0.0f64;
    for n in [4usize, 5] {
        for draw in 0..6 {
            let mut z: Vec<f64> = Vec::new();
            while z.len() < n {
                let v: f64 = rng.gen_range(0.0..1.0);
                if v > 0.0 && z.iter().all(|w| (w - v).abs() > 1e-3) {
                    z.push(v);
                }
            }
            let with_zero = draw == 5;
            if with_zero {
                z[0] = 0.0;
            }
            for nu in partitions_of(n, None, None) {
                let sols = solve_inverse_wronski(&nu, &z, &cfg).map_err(|e| format!("{nu} {z:?}: {e}"))?;
                let f = syt_count(&nu) as usize;
                ensure(sols.len() == f, || format!("{nu}: {} solutions, expected {f}", sols.len()))?;
                for s in &sols {
                    ensure(s.multiplicity == 1, || format!("{nu}: cluster of size {}", s.multiplicity))?;
                    let r = &s.residuals;
                    worst = worst.max(r.wronskian).max(r.relations);
                    ensure(r.wronskian <= 1e-8 && r.relations <= 1e-8, || format!("{nu} {z:?}: residuals {r:?}"))?;
                    ensure(r.eigen <= cfg.check_tol(), || format!("{nu}: joint eigenvector defect {}", r.eigen))?;
                    let verdict = if with_zero {
                        positivity_check(&s.delta, PositivityMode::Tnn, 1e-9 * s.delta.max_abs())
                    } else {
                        positivity_check(&s.delta, PositivityMode::TpInCell, 0.0)
                    };
                    ensure(verdict.pass, || format!("{nu} {z:?}: sign fails at {:?}", verdict.witness))?;
                }
                count += sols.len();
                store.push(SolvedInstance { nu, solutions: sols });
            }
        }
    }
    Ok(format!("{count} solutions, worst residual {worst:.1e}"))
}

fn repeated_roots() -> Check {
    let cfg = SolveConfig::default();
    let z_distinct = [0.5, 1.5, 3.0];
    let mut summary = Vec::new();
    for kappa in [vec![2, 1, 1], vec![2, 2], vec![3, 1], vec![4]] {
        let zs = &z_distinct[..kappa.len()];
        let mut total = 0;
        let mut worst_idem = 0.0f64;
        for nu in partitions_of(4, None, None) {
            let rc = count_solutions_repeated(&nu, &kappa, zs, &cfg).map_err(|e| format!("{nu} {kappa:?}: {e}"))?;
            let predicted = bethe_dimension(Some(&nu), &kappa).unwrap() as usize;
            ensure(rc.total() == predicted, || format!("{nu} {kappa:?}: {} vs {predicted}", rc.total()))?;
            let mut weighted = 0;
            for e in &rc.entries {
                let m = product_multiplicity(&nu, &e.mus).unwrap() as usize;
                ensure(e.count == m, || format!("{nu} {:?}: {} vs {m}", e.mus, e.count))?;
                weighted += e.count * e.multiplicity_dim;
            }
            let dims: usize = rc.solutions.iter().map(|s| s.multiplicity).sum();
            ensure(weighted == syt_count(&nu) as usize && dims == weighted, || format!("{nu} {kappa:?}: eigenspace dimensions"))?;
            let rep = build_rep::<f64>(&nu, RepForm::OrthogonalFloat).unwrap();
            for mus in partition_tuples(&kappa) {
                let proj = schubert_projection(&rep, &mus, zs).unwrap();
                worst_idem = worst_idem.max(proj.mul(&proj).sub(&proj).max_abs());
            }
            total += rc.total();
        }
        let expected_total = bethe_dimension(None, &kappa).unwrap() as usize;
        ensure(total == expected_total, || format!("{kappa:?}: total {total} vs {expected_total}"))?;
        ensure(worst_idem <= 1e-9, || format!("{kappa:?}: idempotence defect {worst_idem:e}"))?;
        summary.push(format!("{kappa:?}→{total}"));
    }
    Ok(format!("totals {}", summary.join(" ")))
}

fn duality_and_inversion() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for n in 1..=5 {
        let z = ZParams::new(distinct_rationals(&mut rng, n));
        for nu in partitions_of(n, None, None) {
            let fam = BetheFamily::new(&exact(&nu), &z).unwrap();
            let twisted = BetheFamily::new(&exact(&nu).sign_twist(), &z).unwrap();
            for lam in partitions_up_to(n) {
                ensure(twisted.raw_beta_coeffs(&lam) == fam.raw_beta_coeffs(&lam.conjugate()), || {
                    format!("sign twist {nu} {lam}")
                })?;
            }
        }
    }
    let nu = p(&[2, 2]);
    let z = ZParams::new(vec![int(1), int(2), int(3), int(5)]);
    let fam = BetheFamily::new(&exact(&nu), &z).unwrap();
    let fam_inv = BetheFamily::new(&exact(&nu), &z.inverses().unwrap()).unwrap();
    let inv_prod = int(1) / z.product();
    let zero = int(0);
    for lam in partitions_up_to(4).into_iter().filter(|l| nu.contains(l)) {
        let comp = lam.complement(2, 2).unwrap();
        let lhs = fam_inv.beta_at(&lam, &zero).scale(&syt_weight(&lam));
        let rhs = fam.beta_at(&comp, &zero).scale(&(syt_weight(&comp) * &inv_prod));
        ensure(lhs == rhs, || format!("inversion at {lam}"))?;
    }
    Ok("sign twist for n ≤ 5; inversion for (2,2) at z = (1,2,3,5)".into())
}

fn symmetric_table(theta: &Permutation, z: &[usize]) -> Result<usize, String> {
    let table = z_factorization_table(theta, z);
    for ((lam, mu), c) in &table {
        let swapped = table.get(&(mu.clone(), lam.clone())).copied().unwrap_or(0);
        let direct = count_z_factorizations(theta, z, mu, lam);
        ensure(swapped == *c && direct == *c, || format!("{theta:?} {z:?} {lam} {mu}: {c} vs {swapped}/{direct}"))?;
    }
    Ok(table.len())
}

fn z_factorization_symmetry() -> Check {
    let mut pairs = 0;
    for n in 1..=4 {
        let mut walk = SjtWalk::new(n);
        let mut theta = Permutation::identity(n);
        loop {
            for mask in 0u32..(1 << n) {
                let z: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
                pairs += symmetric_table(&theta, &z)?;
            }
            match walk.next_swap() {
                Some(i) => theta.swap_positions(i),
                None => break,
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for n in [5usize, 6] {
        for _ in 0..500 {
            let mut images: Vec<usize> = (0..n).collect();
            images.shuffle(&mut rng);
            let theta = Permutation::new(images).unwrap();
            let z: Vec<usize> = (0..n).filter(|_| rng.gen_bool(0.5)).collect();
            pairs += symmetric_table(&theta, &z)?;
        }
    }
    Ok(format!("exhaustive n ≤ 4 plus 500 samples at n = 5, 6; {pairs} nonzero (λ, μ) pairs"))
}

fn markov_basis(store: &[SolvedInstance]) -> Check {
    ensure(!store.is_empty(), || "no solutions from the inverse Wronski run".into())?;
    let mut worst = f64::INFINITY;
    let mut count = 0;
    for inst in store {
        for s in &inst.solutions {
            let ech = echelon_basis(&s.delta, inst.nu.len()).map_err(|e| e.to_string())?;
            for w in partial_wronskians(&ech).map_err(|e| e.to_string())? {
                let low = w.coeffs.iter().copied().fold(f64::INFINITY, f64::min);
                worst = worst.min(low);
                ensure(low >= -1e-9, || format!("{}: partial Wronskian coefficient {low:e}", inst.nu))?;
            }
            let full = wronskian_of_polys(&ech, true).map_err(|e| e.to_string())?;
            ensure(full.degree() == Some(inst.nu.size()), || format!("{}: Wronskian degree", inst.nu))?;
            count += 1;
        }
    }
    Ok(format!("{count} echelon bases, smallest coefficient {worst:.3e}"))
}

fn main() {
    let mut store = Vec::new();
    let mut failed = 0;
    let mut report = |id: usize, name: &str, f: &mut dyn FnMut() -> Check| {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
            Err(e.downcast_ref::<String>().cloned().or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_default())
        });
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(detail) => println!("PASS criterion {id} ({name}): {detail} [{secs:.2}s]"),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {id} ({name}): {why} [{secs:.2}s]");
            }
        }
    };
    report(1, "worked examples", &mut worked_examples);
    report(2, "square shape operators", &mut square_shape_example);
    report(3, "identity suite", &mut identity_suite);
    report(4, "inverse Wronski end to end", &mut || inverse_wronski(&mut store));
    report(5, "repeated roots", &mut repeated_roots);
    report(6, "duality and inversion", &mut duality_and_inversion);
    report(7, "Z-factorization symmetry", &mut z_factorization_symmetry);
    report(8, "Markov basis", &mut || markov_basis(&store));
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
