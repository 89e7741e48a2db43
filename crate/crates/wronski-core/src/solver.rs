//! Inverse Wronski solving by simultaneous diagonalization of the Bethe family.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bethe::{BetheFamily, ZParams};
use crate::combinatorics::{syt_count, Partition};
use crate::error::{Error, Result};
use crate::grassmann::{
    eval_relations, normalization, plucker_relations, syt_weight, wronskian_from_pluckers, PluckerRelation,
    PluckerVector, RelationFamily,
};
use crate::linalg::symmetric_eigen;
use crate::matrix::Matrix;
use crate::poly::Poly;
use crate::scalar::Scalar;
use crate::specht::{build_rep, RepForm, SpechtRep};
use crate::symfunc::partition_tuples;

#[derive(Clone, Debug, PartialEq)]
pub struct SolveConfig {
    pub seed: u64,
    /// Eigenvalue gap, relative to the spectral diameter, below which eigenvalues merge.
    pub cluster_tol: f64,
    pub residual_tol: f64,
    pub max_retries: usize,
}

impl Default for SolveConfig {
    fn default() -> Self {
        SolveConfig { seed: 0, cluster_tol: 1e-7, residual_tol: 1e-8, max_retries: 5 }
    }
}

impl SolveConfig {
    pub fn validate(&self) -> Result<()> {
        let ok = |x: f64| x.is_finite() && x > 0.0;
        if !ok(self.cluster_tol) || !ok(self.residual_tol) {
            return Err(Error::InvalidArgument("tolerances must be positive".into()));
        }
        Ok(())
    }

    /// Tolerance for deciding that an operator is scalar on a cluster.
    pub fn check_tol(&self) -> f64 {
        num_traits::Float::sqrt(self.cluster_tol).max(1e-6)
    }
}

#[derive(Clone, Debug, PartialEq, Default)]
pub struct Residuals {
    pub wronskian: f64,
    pub relations: f64,
    pub eigen: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Solution {
    pub delta: PluckerVector<f64>,
    pub multiplicity: usize,
    /// Orthonormal columns spanning the eigenspace, in the orthogonal-form basis.
    pub eigenvectors: Vec<Vec<f64>>,
    pub residuals: Residuals,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ResidualReport {
    pub wronskian: f64,
    pub relations: f64,
    pub pass: bool,
}

fn max_coeff_diff<F: Scalar>(a: &Poly<F>, b: &Poly<F>) -> F {
    a.sub(b).coeffs.iter().map(Scalar::abs_val).fold(F::zero(), |m, v| if v > m { v } else { m })
}

/// Relations of `Gr(n, 2n)` checked by [`verify_solution`].
pub fn residual_relations(n: usize) -> Vec<PluckerRelation> {
    let mut rels = plucker_relations(n, 2 * n, RelationFamily::SingleColumn);
    rels.extend(plucker_relations(n, 2 * n, RelationFamily::SingleRow));
    rels
}

/// Wronskian and relation residuals over any scalar type; exact types give exact values.
pub fn solution_residuals<F: Scalar>(delta: &PluckerVector<F>, z: &[F], relations: &[PluckerRelation]) -> (F, F) {
    let target = Poly::from_shifts(z);
    let w = max_coeff_diff(&wronskian_from_pluckers(delta), &target);
    (w, eval_relations(delta, relations))
}

pub fn verify_solution(sol: &Solution, nu: &Partition, z: &[f64], tol: f64) -> ResidualReport {
    if sol.delta.nu != *nu || nu.size() != z.len() {
        return ResidualReport { wronskian: f64::INFINITY, relations: f64::INFINITY, pass: false };
    }
    let (wronskian, relations) = solution_residuals(&sol.delta, z, &residual_relations(nu.size()));
    let pass = wronskian <= tol && relations <= tol;
    ResidualReport { wronskian, relations, pass }
}

struct Cluster {
    vectors: Matrix<f64>,
}

fn split_clusters(values: &[f64], vectors: &Matrix<f64>, tol: f64) -> (Vec<Cluster>, f64) {
    let lo = values.first().copied().unwrap_or(0.0);
    let hi = values.last().copied().unwrap_or(0.0);
    let scale = (hi - lo).max(lo.abs()).max(hi.abs()).max(f64::MIN_POSITIVE);
    let mut clusters = Vec::new();
    let mut min_gap = f64::INFINITY;
    let mut start = 0;
    for i in 1..=values.len() {
        let split = i == values.len() || {
            let gap = (values[i] - values[i - 1]) / scale;
            min_gap = min_gap.min(gap);
            gap > tol
        };
        if split {
            let cols = Matrix::from_fn(vectors.rows(), i - start, |r, c| vectors[(r, start + c)]);
            clusters.push(Cluster { vectors: cols });
            start = i;
        }
    }
    (clusters, min_gap)
}

/// `Vᵀ B V` and the deviation of `B V` from `V (Vᵀ B V)` together with the
/// deviation of `Vᵀ B V` from a scalar matrix, relative to the size of `B`.
fn restrict(b: &Matrix<f64>, v: &Matrix<f64>) -> (f64, f64) {
    let bv = b.mul(v);
    let small = v.transpose().mul(&bv);
    let k = v.cols();
    let mean = small.trace() / k as f64;
    let invariant = bv.sub(&v.mul(&small)).max_abs();
    let scalar = small.sub(&Matrix::scalar(k, mean)).max_abs();
    (mean, invariant.max(scalar) / b.max_abs().max(1.0))
}

/// Float Bethe operators needed by the solver.
struct Operators {
    /// `β^λ(0)` for every `λ ⊆ ν`.
    at_zero: BTreeMap<Partition, Matrix<f64>>,
    /// Coefficients of `β^{1^k}(t)`, each scaled to unit max-norm.
    generators: Vec<Matrix<f64>>,
}

fn operators(family: &BetheFamily<f64>) -> Operators {
    let at_zero = family.nonzero().map(|(lam, op)| (lam.clone(), op.eval(&0.0))).collect();
    let generators = family
        .fundamental_coeffs()
        .iter()
        .flat_map(|op| op.coeffs.iter())
        .filter_map(|m| {
            let s = m.max_abs();
            (s > 0.0).then(|| m.scale(&(1.0 / s)))
        })
        .collect();
    Operators { at_zero, generators }
}

/// Joint eigenspaces of the Bethe family with their Rayleigh values.
fn joint_spectrum(ops: &Operators, dim: usize, cfg: &SolveConfig) -> Result<Vec<(Matrix<f64>, BTreeMap<Partition, f64>, f64)>> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let check_tol = cfg.check_tol();
    let mut worst_gap = f64::INFINITY;
    for _ in 0..=cfg.max_retries {
        let mut combo = Matrix::zeros(dim, dim);
        for g in &ops.generators {
            combo.add_scaled(&rng.gen_range(-1.0..1.0), g);
        }
        let eig = symmetric_eigen(&combo);
        let (clusters, gap) = split_clusters(&eig.values, &eig.vectors, cfg.cluster_tol);
        let mut out = Vec::with_capacity(clusters.len());
        let mut ok = true;
        'clusters: for c in clusters {
            let mut values = BTreeMap::new();
            let mut eigen = 0.0f64;
            for g in &ops.generators {
                let (_, dev) = restrict(g, &c.vectors);
                eigen = eigen.max(dev);
            }
            for (lam, b) in &ops.at_zero {
                let (mean, dev) = restrict(b, &c.vectors);
                eigen = eigen.max(dev);
                values.insert(lam.clone(), mean);
            }
            if eigen > check_tol {
                ok = false;
                break 'clusters;
            }
            out.push((c.vectors, values, eigen));
        }
        if ok {
            return Ok(out);
        }
        worst_gap = worst_gap.min(gap);
    }
    Err(Error::RetryExhausted { gap: worst_gap })
}

fn assemble(nu: &Partition, values: BTreeMap<Partition, f64>) -> Result<PluckerVector<f64>> {
    let delta = PluckerVector::from_entries(nu.clone(), values)?;
    let target: f64 = normalization(nu);
    let top = delta.get(nu);
    if (top - target).abs() > 1e-6 * target {
        return Err(Error::Numerical(format!("eigenvalue of β^{nu} is {top}, expected {target}")));
    }
    delta.normalized()
}

/// Every point of the Schubert cell of `nu` whose Wronskian is `Π(u + z_i)`.
pub fn solve_inverse_wronski(nu: &Partition, z: &[f64], cfg: &SolveConfig) -> Result<Vec<Solution>> {
    cfg.validate()?;
    if nu.size() != z.len() {
        return Err(Error::SizeMismatch { expected: nu.size(), found: z.len() });
    }
    if z.iter().any(|v| !v.is_finite()) {
        return Err(Error::InvalidArgument("parameters must be finite".into()));
    }
    let rep = build_rep::<f64>(nu, RepForm::OrthogonalFloat)?;
    let family = BetheFamily::new(&rep, &ZParams::new(z.to_vec()))?;
    let ops = operators(&family);
    let relations = residual_relations(nu.size());
    let mut out = Vec::new();
    for (vectors, values, eigen) in joint_spectrum(&ops, rep.dim, cfg)? {
        let delta = assemble(nu, values)?;
        let (wronskian, rel) = solution_residuals(&delta, z, &relations);
        out.push(Solution {
            multiplicity: vectors.cols(),
            eigenvectors: (0..vectors.cols()).map(|j| vectors.column(j)).collect(),
            residuals: Residuals { wronskian, relations: rel, eigen },
            delta,
        });
    }
    Ok(out)
}

fn repeated_z<F: Scalar>(kappa: &[usize], z_distinct: &[F]) -> Result<Vec<F>> {
    if kappa.len() != z_distinct.len() {
        return Err(Error::SizeMismatch { expected: kappa.len(), found: z_distinct.len() });
    }
    for (i, a) in z_distinct.iter().enumerate() {
        if z_distinct[..i].iter().any(|b| a.sub_ref(b).is_negligible(0.0)) {
            return Err(Error::RepeatedParameter);
        }
    }
    Ok(kappa.iter().zip(z_distinct).flat_map(|(&k, v)| core::iter::repeat(v.clone()).take(k)).collect())
}

/// `Π_i β^{μ_i}(-z_i)` on `rep`, rescaled to the idempotent projecting onto
/// the summand `Hom_{S_κ}(M^μ, S^ν) ⊗ M^μ` with `M^μ = S^{μ_1} ⊗ ... ⊗ S^{μ_s}`.
pub fn schubert_projection<F: Scalar>(rep: &SpechtRep<F>, mu_list: &[Partition], z_distinct: &[F]) -> Result<Matrix<F>> {
    let kappa: Vec<usize> = mu_list.iter().map(Partition::size).collect();
    let z = repeated_z(&kappa, z_distinct)?;
    if z.len() != rep.n {
        return Err(Error::SizeMismatch { expected: rep.n, found: z.len() });
    }
    let family = BetheFamily::new(rep, &ZParams::new(z))?;
    projection_from_family(&family, mu_list, z_distinct)
}

fn projection_from_family<F: Scalar>(family: &BetheFamily<F>, mu_list: &[Partition], z_distinct: &[F]) -> Result<Matrix<F>> {
    let mut product = Matrix::identity(family.dim);
    let mut factor = F::one();
    for (i, (mu, zi)) in mu_list.iter().zip(z_distinct).enumerate() {
        if !family.nu.contains(mu) {
            return Ok(Matrix::zeros(family.dim, family.dim));
        }
        product = product.mul(&family.beta_at(mu, &-zi.clone()));
        factor = factor.mul_ref(&F::from_rational(&syt_weight(mu)));
        for (j, (other, zj)) in mu_list.iter().zip(z_distinct).enumerate() {
            if j != i {
                factor = factor.div_ref(&zj.sub_ref(zi).pow(other.size()));
            }
        }
    }
    Ok(product.scale(&factor))
}

#[derive(Clone, Debug, PartialEq)]
pub struct RepeatedEntry {
    pub mus: Vec<Partition>,
    /// Number of distinct solutions in this Schubert intersection.
    pub count: usize,
    /// `Π f^{μ_i}`, the dimension of each eigenspace.
    pub multiplicity_dim: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RepeatedCount {
    pub nu: Partition,
    pub kappa: Vec<usize>,
    pub entries: Vec<RepeatedEntry>,
    pub solutions: Vec<Solution>,
}

impl RepeatedCount {
    pub fn total(&self) -> usize {
        self.entries.iter().map(|e| e.count).sum()
    }
}

/// Solve with `z_i` repeated `κ_i` times and sort each eigenspace into the
/// Schubert intersection whose projection fixes it.
pub fn count_solutions_repeated(
    nu: &Partition,
    kappa: &[usize],
    z_distinct: &[f64],
    cfg: &SolveConfig,
) -> Result<RepeatedCount> {
    let z = repeated_z(kappa, z_distinct)?;
    if z.len() != nu.size() {
        return Err(Error::SizeMismatch { expected: nu.size(), found: z.len() });
    }
    let solutions = solve_inverse_wronski(nu, &z, cfg)?;
    let rep = build_rep::<f64>(nu, RepForm::OrthogonalFloat)?;
    let family = BetheFamily::new(&rep, &ZParams::new(z))?;
    let mut entries = Vec::new();
    let mut projections = Vec::new();
    for mus in partition_tuples(kappa) {
        if mus.iter().all(|m| nu.contains(m)) {
            projections.push(projection_from_family(&family, &mus, z_distinct)?);
            let multiplicity_dim = mus.iter().map(|m| syt_count(m) as usize).product();
            entries.push(RepeatedEntry { mus, count: 0, multiplicity_dim });
        }
    }
    let tol = cfg.check_tol();
    for sol in &solutions {
        let v = Matrix::from_fn(rep.dim, sol.multiplicity, |r, c| sol.eigenvectors[c][r]);
        let hits: Vec<usize> = projections
            .iter()
            .enumerate()
            .filter(|(_, p)| {
                let pv = p.mul(&v);
                pv.sub(&v).max_abs() <= tol * p.max_abs().max(1.0)
            })
            .map(|(i, _)| i)
            .collect();
        match hits.as_slice() {
            [i] => {
                if entries[*i].multiplicity_dim != sol.multiplicity {
                    return Err(Error::Numerical(format!(
                        "eigenspace of dimension {} in a summand with multiplicity space of dimension {}",
                        sol.multiplicity, entries[*i].multiplicity_dim
                    )));
                }
                entries[*i].count += 1;
            }
            _ => {
                return Err(Error::Numerical(format!(
                    "eigenspace fixed by {} projections instead of one",
                    hits.len()
                )))
            }
        }
    }
    Ok(RepeatedCount { nu: nu.clone(), kappa: kappa.to_vec(), entries, solutions })
}
