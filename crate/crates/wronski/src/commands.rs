use std::collections::BTreeMap;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};
use wronski_core::bethe::{BetheFamily, IdentityKind, IdentityReport, ZParams, FLOAT_TOL};
use wronski_core::combinatorics::{partitions_of, syt_count};
use wronski_core::grassmann::{
    echelon_basis, h_basis, partial_wronskians, plucker_relations, positivity_check, sample_relations,
    single_row_polys, wronskian_of_polys, PluckerRelation, PolyVector, PositivityMode, RelationFamily,
};
use wronski_core::solver::{count_solutions_repeated, solve_inverse_wronski, SolveConfig, Solution};
use wronski_core::specht::{build_rep, RepForm};
use wronski_core::symfunc::{bethe_dimension, partition_tuples, product_multiplicity};
use wronski_core::{Partition, Poly, Rational, Scalar};

use crate::scalars::{distinct_rationals, emit_all, parse_all, random_rational, Emit};
use crate::schema::{self, delta_of, is_exact, parts, read_solve_doc, solution_doc, InstanceDoc};
use crate::{CliError, CommandKind, Family, Form, JobSpec, Mode, Which};

type Res<T> = Result<T, CliError>;

const MAX_LISTED_FAILURES: usize = 20;

pub fn execute(job: &JobSpec, input: Option<&str>) -> Res<(Value, bool)> {
    match job.command {
        CommandKind::Solve => solve(job),
        CommandKind::Verify => verify(job),
        CommandKind::Dims => dims(job),
        CommandKind::Basis => basis(job, input.unwrap_or_default()),
        CommandKind::Positivity => positivity(job, input.unwrap_or_default()),
        CommandKind::Relations => relations(job),
    }
}

/// `--nu` alone, every shape of size `--n`, or every shape of `default_n`.
fn shapes(job: &JobSpec, default_n: Option<usize>) -> Res<Vec<Partition>> {
    let n = match (job.n, default_n) {
        (Some(n), Some(d)) if n != d => {
            return Err(CliError::Usage(format!("--n {n} disagrees with {d} parameters")));
        }
        (n, d) => n.or(d),
    };
    match (&job.nu, n) {
        (Some(nu), n) => {
            let nu = schema::partition(nu)?;
            if n.is_some_and(|n| n != nu.size()) {
                return Err(CliError::Usage(format!("|{nu}| = {} does not match n = {}", nu.size(), n.unwrap_or(0))));
            }
            Ok(vec![nu])
        }
        (None, Some(n)) => Ok(partitions_of(n, None, None)),
        (None, None) => Err(CliError::Usage("give --nu or --n".into())),
    }
    .and_then(|v: Vec<Partition>| {
        if v.iter().any(|nu| nu.size() == 0) {
            Err(CliError::Usage("shapes must be nonempty".into()))
        } else {
            Ok(v)
        }
    })
}

fn solve(job: &JobSpec) -> Res<(Value, bool)> {
    let z_text = job.z.clone().ok_or_else(|| CliError::Usage("solve needs --z".into()))?;
    let z: Vec<f64> = parse_all(&z_text)?;
    let defaults = SolveConfig::default();
    let cfg = SolveConfig {
        seed: job.seed,
        cluster_tol: job.tol_cluster.unwrap_or(defaults.cluster_tol),
        residual_tol: job.tol_residual.unwrap_or(defaults.residual_tol),
        max_retries: job.max_retries.unwrap_or(defaults.max_retries),
    };
    cfg.validate()?;
    let roots_text: Vec<String> = match &job.kappa {
        Some(kappa) => {
            if kappa.len() != z.len() {
                return Err(CliError::Usage(format!("--kappa has {} parts but --z has {}", kappa.len(), z.len())));
            }
            kappa.iter().zip(&z_text).flat_map(|(&k, s)| std::iter::repeat(s.clone()).take(k)).collect()
        }
        None => z_text.clone(),
    };
    let roots: Vec<f64> = parse_all(&roots_text)?;
    let nus = shapes(job, Some(roots.len()))?;
    let instances: Vec<(Value, bool)> = nus
        .par_iter()
        .map(|nu| solve_instance(nu, &roots, &roots_text, &z, job.kappa.as_deref(), &cfg))
        .collect::<Res<_>>()?;
    let pass = instances.iter().all(|(_, p)| *p);
    let doc = json!({
        "command": "solve",
        "seed": cfg.seed,
        "z": z_text,
        "kappa": job.kappa,
        "cluster_tol": cfg.cluster_tol,
        "residual_tol": cfg.residual_tol,
        "max_retries": cfg.max_retries,
        "instances": instances.into_iter().map(|(v, _)| v).collect::<Vec<_>>(),
        "pass": pass,
    });
    Ok((doc, pass))
}

fn solve_instance(
    nu: &Partition,
    roots: &[f64],
    roots_text: &[String],
    z_distinct: &[f64],
    kappa: Option<&[usize]>,
    cfg: &SolveConfig,
) -> Res<(Value, bool)> {
    let expected = syt_count(nu) as usize;
    let (solutions, repeated): (Vec<Solution>, Option<(Value, bool)>) = match kappa {
        Some(kappa) => {
            let rc = count_solutions_repeated(nu, kappa, z_distinct, cfg)?;
            let mut ok = true;
            let mut entries = Vec::new();
            for e in &rc.entries {
                let predicted = product_multiplicity(nu, &e.mus)? as usize;
                ok &= predicted == e.count;
                entries.push(json!({
                    "mus": e.mus.iter().map(parts).collect::<Vec<_>>(),
                    "count": e.count,
                    "predicted": predicted,
                    "multiplicity_dim": e.multiplicity_dim,
                }));
            }
            let predicted_total = bethe_dimension(Some(nu), kappa)? as usize;
            ok &= predicted_total == rc.total();
            let doc = json!({ "entries": entries, "total": rc.total(), "predicted_total": predicted_total, "pass": ok });
            (rc.solutions, Some((doc, ok)))
        }
        None => (solve_inverse_wronski(nu, roots, cfg)?, None),
    };
    let docs: Vec<_> = solutions.iter().map(|s| solution_doc(s, cfg.residual_tol)).collect();
    let total: usize = solutions.iter().map(|s| s.multiplicity).sum();
    let pass = total == expected && docs.iter().all(|d| d.pass) && repeated.as_ref().is_none_or(|(_, ok)| *ok);
    let doc = json!({
        "nu": parts(nu),
        "roots": roots_text,
        "expected": expected,
        "multiplicity_total": total,
        "solutions": docs,
        "repeated": repeated.map(|(v, _)| v),
        "pass": pass,
    });
    Ok((doc, pass))
}

fn identity_kind(w: Which) -> IdentityKind {
    match w {
        Which::Commutativity => IdentityKind::Commutativity,
        Which::Translation => IdentityKind::Translation,
        Which::PluckerSingleColumn => IdentityKind::PluckerSingleColumn,
        Which::PluckerSingleRow => IdentityKind::PluckerSingleRow,
        Which::PluckerAll => IdentityKind::PluckerAll,
        Which::PluckerSampled => IdentityKind::PluckerSampled,
    }
}

fn report_doc(r: &IdentityReport) -> Value {
    json!({
        "identity": r.identity.name(),
        "checks": r.checks,
        "failure_count": r.failures.len(),
        "failures": r.failures.iter().take(MAX_LISTED_FAILURES).collect::<Vec<_>>(),
        "pass": r.passed(),
    })
}

fn verify(job: &JobSpec) -> Res<(Value, bool)> {
    let nus = shapes(job, None)?;
    let n = nus[0].size();
    let which = job.which.clone().unwrap_or_else(|| {
        vec![
            Which::Commutativity,
            Which::Translation,
            Which::PluckerSingleColumn,
            Which::PluckerSingleRow,
            Which::PluckerAll,
        ]
    });
    let form = job.form.unwrap_or(Form::Seminormal);
    let npoints = job.points.unwrap_or(3);
    if npoints == 0 {
        return Err(CliError::Usage("--points must be positive".into()));
    }
    let samples = job.samples.unwrap_or(10_000);
    let mut rng = ChaCha8Rng::seed_from_u64(job.seed);
    let z: Vec<Rational> = match &job.z {
        Some(text) => {
            let z = parse_all::<Rational>(text)?;
            if z.len() != n {
                return Err(CliError::Usage(format!("--z has {} values, expected {n}", z.len())));
            }
            z
        }
        None => distinct_rationals(&mut rng, n),
    };
    let points: Vec<(Rational, Rational)> =
        (0..npoints).map(|_| (random_rational(&mut rng), random_rational(&mut rng))).collect();
    let mut rels: BTreeMap<Which, Vec<PluckerRelation>> = BTreeMap::new();
    for &w in &which {
        let list = match w {
            Which::PluckerSingleColumn => plucker_relations(n, 2 * n, RelationFamily::SingleColumn),
            Which::PluckerSingleRow => plucker_relations(n, 2 * n, RelationFamily::SingleRow),
            Which::PluckerAll => plucker_relations(n, 2 * n, RelationFamily::All),
            Which::PluckerSampled => sample_relations(n, 2 * n, samples, &mut rng),
            _ => continue,
        };
        rels.insert(w, list);
    }
    let tol = job.tol.unwrap_or(FLOAT_TOL);
    let shape_docs: Vec<(Value, bool)> = match form {
        Form::Seminormal => nus
            .par_iter()
            .map(|nu| verify_shape(nu, &z, &points, &which, &rels, RepForm::SeminormalExact, tol))
            .collect::<Res<_>>()?,
        Form::Orthogonal => {
            let zf: Vec<f64> = z.iter().map(Scalar::to_f64).collect();
            let pf: Vec<(f64, f64)> = points.iter().map(|(s, t)| (s.to_f64(), t.to_f64())).collect();
            nus.par_iter()
                .map(|nu| verify_shape(nu, &zf, &pf, &which, &rels, RepForm::OrthogonalFloat, tol))
                .collect::<Res<_>>()?
        }
    };
    let pass = shape_docs.iter().all(|(_, p)| *p);
    let doc = json!({
        "command": "verify",
        "seed": job.seed,
        "n": n,
        "form": form,
        "z": emit_all(&z),
        "points": points.iter().map(|(s, t)| [s.emit(), t.emit()]).collect::<Vec<_>>(),
        "relation_counts": rels.iter().map(|(w, r)| (identity_kind(*w).name(), r.len())).collect::<BTreeMap<_, _>>(),
        "shapes": shape_docs.into_iter().map(|(v, _)| v).collect::<Vec<_>>(),
        "pass": pass,
    });
    Ok((doc, pass))
}

fn verify_shape<F: Emit>(
    nu: &Partition,
    z: &[F],
    points: &[(F, F)],
    which: &[Which],
    rels: &BTreeMap<Which, Vec<PluckerRelation>>,
    form: RepForm,
    tol: f64,
) -> Res<(Value, bool)> {
    let rep = build_rep::<F>(nu, form)?;
    let family = BetheFamily::new(&rep, &ZParams::new(z.to_vec()))?;
    let ts: Vec<F> = points.iter().map(|(_, t)| t.clone()).collect();
    let reports: Vec<IdentityReport> = which
        .iter()
        .map(|&w| match w {
            Which::Commutativity => family.check_commutativity(points, tol),
            Which::Translation => family.check_translation(points, tol),
            _ => family.check_relations(identity_kind(w), &rels[&w], &ts, tol),
        })
        .collect();
    let pass = reports.iter().all(IdentityReport::passed);
    let doc = json!({
        "nu": parts(nu),
        "dim": rep.dim,
        "identities": reports.iter().map(report_doc).collect::<Vec<_>>(),
        "pass": pass,
    });
    Ok((doc, pass))
}

fn dims(job: &JobSpec) -> Res<(Value, bool)> {
    let kappa = job.kappa.clone().ok_or_else(|| CliError::Usage("dims needs --kappa".into()))?;
    let n: usize = kappa.iter().sum();
    if n == 0 {
        return Err(CliError::Usage("--kappa must have a positive part".into()));
    }
    let targets = shapes(&JobSpec { n: None, ..job.clone() }, Some(n))?;
    let tuples = partition_tuples(&kappa.iter().copied().filter(|&k| k > 0).collect::<Vec<_>>());
    let mut per_nu = Vec::new();
    let mut total = 0u64;
    let mut pass = true;
    for nu in &targets {
        let dimension = bethe_dimension(Some(nu), &kappa)?;
        let mut products = Vec::new();
        let mut sum = 0u64;
        for mus in &tuples {
            let m = product_multiplicity(nu, mus)?;
            if m > 0 {
                sum += m;
                products.push(json!({ "mus": mus.iter().map(parts).collect::<Vec<_>>(), "multiplicity": m }));
            }
        }
        pass &= sum == dimension;
        total += dimension;
        per_nu.push(json!({ "nu": parts(nu), "dimension": dimension, "products": products }));
    }
    Ok((json!({ "command": "dims", "kappa": kappa, "per_nu": per_nu, "total": total, "pass": pass }), pass))
}

fn relation_doc(r: &PluckerRelation) -> Value {
    json!({
        "i_set": r.i_set,
        "j_set": r.j_set,
        "terms": r.terms.iter().map(|t| json!({ "coeff": t.coeff, "first": parts(&t.first), "second": parts(&t.second) })).collect::<Vec<_>>(),
    })
}

fn relations(job: &JobSpec) -> Res<(Value, bool)> {
    let (Some(d), Some(m)) = (job.d, job.m) else {
        return Err(CliError::Usage("relations needs --d and --m".into()));
    };
    if d == 0 || d > m {
        return Err(CliError::Usage(format!("need 1 ≤ d ≤ m, got d = {d}, m = {m}")));
    }
    let family = job.family.unwrap_or(Family::All);
    let rels = plucker_relations(
        d,
        m,
        match family {
            Family::All => RelationFamily::All,
            Family::SingleColumn => RelationFamily::SingleColumn,
            Family::SingleRow => RelationFamily::SingleRow,
        },
    );
    let mut doc = json!({ "command": "relations", "d": d, "m": m, "family": family, "count": rels.len(), "pass": true });
    if job.list {
        doc["relations"] = rels.iter().map(relation_doc).collect();
    }
    Ok((doc, true))
}

/// Residual of `polys` against the span of an echelon basis with pivot
/// columns `pivots`, relative to each vector's size.
fn span_residual<F: Emit>(echelon: &[PolyVector<F>], pivots: &[usize], polys: &[PolyVector<F>]) -> f64 {
    let m = echelon.iter().chain(polys).map(|p| p.coeffs.len()).max().unwrap_or(0);
    let rows: Vec<Vec<F>> = echelon.iter().map(|e| e.padded(m)).collect();
    let mut worst = 0.0f64;
    for p in polys {
        let mut r = p.padded(m);
        let size = r.iter().map(|v| v.to_f64().abs()).fold(0.0, f64::max).max(f64::MIN_POSITIVE);
        for (row, &j) in rows.iter().zip(pivots) {
            let c = r[j].clone();
            for (a, b) in r.iter_mut().zip(row) {
                a.sub_assign_ref(&c.mul_ref(b));
            }
        }
        worst = worst.max(r.iter().map(|v| v.to_f64().abs()).fold(0.0, f64::max) / size);
    }
    worst
}

fn default_t<F: Emit>(roots: &[F]) -> F {
    let far = roots.iter().map(|v| v.to_f64().abs()).fold(0.0, f64::max);
    F::from_i64(-(far.ceil() as i64) - 1)
}

fn basis_instance<F: Emit>(inst: &InstanceDoc, job: &JobSpec, tol: f64) -> Res<(Value, bool)> {
    let nu = schema::partition(&inst.nu)?;
    let roots: Vec<F> = parse_all(&inst.roots)?;
    if roots.len() != nu.size() {
        return Err(CliError::Input(format!("{} roots for a shape of size {}", roots.len(), nu.size())));
    }
    let d = job.d.unwrap_or(nu.len().max(1));
    if d < nu.len() {
        return Err(CliError::Usage(format!("--d {d} is smaller than the length of {nu}")));
    }
    let m = d + nu.part(0);
    let t: F = match &job.t {
        Some(s) => F::parse(s)?,
        None => default_t(&roots),
    };
    let pivots: Vec<usize> = (0..d).map(|s| nu.part(d - 1 - s) + s).collect();
    let target = Poly::from_shifts(&roots);
    let scale = target.coeffs.iter().map(|c| c.to_f64().abs()).fold(1.0, f64::max);
    let mut bases = Vec::new();
    let mut pass = true;
    for (i, sol) in inst.solutions.iter().enumerate() {
        let delta = delta_of::<F>(sol, &inst.nu)?;
        let ech = echelon_basis(&delta, d)?;
        let hb = h_basis(&single_row_polys(&delta), d, m, &t, &roots)?;
        let span = span_residual(&ech, &pivots, &hb);
        let wr = wronskian_of_polys(&ech, true)?.max_diff(&target) / scale;
        let partial_min = partial_wronskians(&ech)?
            .iter()
            .flat_map(|w| w.coeffs.iter().map(|c| c.to_f64()))
            .fold(f64::INFINITY, f64::min);
        let ok = span <= tol && wr <= tol;
        pass &= ok;
        bases.push(json!({
            "solution": i,
            "echelon": ech.iter().map(schema::poly_doc).collect::<Vec<_>>(),
            "h_basis": hb.iter().map(schema::poly_doc).collect::<Vec<_>>(),
            "span_residual": span,
            "wronskian_residual": wr,
            "partial_wronskian_min_coeff": partial_min,
            "pass": ok,
        }));
    }
    let doc = json!({ "nu": inst.nu, "roots": inst.roots, "d": d, "m": m, "t": t.emit(), "bases": bases, "pass": pass });
    Ok((doc, pass))
}

fn instance_exact(inst: &InstanceDoc) -> Res<bool> {
    let modes: Vec<bool> = inst.solutions.iter().map(|s| is_exact(&s.delta)).collect::<Res<_>>()?;
    Ok(!modes.is_empty() && modes.iter().all(|&e| e))
}

fn basis(job: &JobSpec, input: &str) -> Res<(Value, bool)> {
    let doc = read_solve_doc(input)?;
    let tol = job.tol.unwrap_or(1e-7);
    let instances: Vec<(Value, bool)> = doc
        .instances
        .par_iter()
        .map(|inst| {
            if instance_exact(inst)? {
                basis_instance::<Rational>(inst, job, tol)
            } else {
                basis_instance::<f64>(inst, job, tol)
            }
        })
        .collect::<Res<_>>()?;
    let pass = instances.iter().all(|(_, p)| *p);
    let out = json!({
        "command": "basis",
        "tol": tol,
        "instances": instances.into_iter().map(|(v, _)| v).collect::<Vec<_>>(),
        "pass": pass,
    });
    Ok((out, pass))
}

fn positivity(job: &JobSpec, input: &str) -> Res<(Value, bool)> {
    let doc = read_solve_doc(input)?;
    let mode = job.mode.unwrap_or(Mode::TpInCell);
    let core_mode = match mode {
        Mode::Tnn => PositivityMode::Tnn,
        Mode::TpInCell => PositivityMode::TpInCell,
    };
    let mut instances = Vec::new();
    let mut pass = true;
    for inst in &doc.instances {
        let mut verdicts = Vec::new();
        for (i, sol) in inst.solutions.iter().enumerate() {
            let verdict = if is_exact(&sol.delta)? {
                positivity_check(&delta_of::<Rational>(sol, &inst.nu)?, core_mode, job.tol.unwrap_or(0.0))
            } else {
                positivity_check(&delta_of::<f64>(sol, &inst.nu)?, core_mode, job.tol.unwrap_or(1e-9))
            };
            pass &= verdict.pass;
            verdicts.push(json!({
                "solution": i,
                "pass": verdict.pass,
                "witness": verdict.witness.as_ref().map(parts),
            }));
        }
        instances.push(json!({ "nu": inst.nu, "roots": inst.roots, "verdicts": verdicts }));
    }
    let out = json!({ "command": "positivity", "mode": mode, "instances": instances, "pass": pass });
    Ok((out, pass))
}
