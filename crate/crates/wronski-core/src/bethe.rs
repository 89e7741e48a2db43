//! The operators `β^λ(t)` and `ε^μ_ℓ` acting on a Specht module.
//!
//! One sweep over `S_n` groups the matrices `ρ(σ)` by moved set and by the
//! cycle type of the moved points. Every `ε^μ_ℓ` is then a weighted sum of
//! these class sums, and `β^λ_ℓ = Σ_μ χ^λ_μ ε^μ_ℓ`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::combinatorics::{binomial, character, partitions_of, partitions_up_to, skew_syt_ratio, Partition};
use crate::error::{Error, Result};
use crate::grassmann::PluckerRelation;
use crate::matrix::Matrix;
use crate::scalar::Scalar;
use crate::specht::SpechtRep;

/// The parameters `z_1, ..., z_n`.
#[derive(Clone, Debug, PartialEq)]
pub struct ZParams<F> {
    pub values: Vec<F>,
}

impl<F: Scalar> ZParams<F> {
    pub fn new(values: Vec<F>) -> Self {
        ZParams { values }
    }

    pub fn n(&self) -> usize {
        self.values.len()
    }

    /// `z_i^{-1}`; fails on a zero entry.
    pub fn inverses(&self) -> Result<Self> {
        if self.values.iter().any(|z| z.is_zero()) {
            return Err(Error::Degenerate("cannot invert a zero parameter".into()));
        }
        Ok(ZParams { values: self.values.iter().map(|z| F::one().div_ref(z)).collect() })
    }

    pub fn product(&self) -> F {
        self.values.iter().fold(F::one(), |acc, z| acc.mul_ref(z))
    }
}

/// `β^λ(t) = Σ_ℓ coeffs[ℓ] t^{n-|λ|-ℓ}` on `S^ν`; `coeffs` is empty for the zero operator.
#[derive(Clone, Debug)]
pub struct BetheOperator<F> {
    pub nu: Partition,
    pub lam: Partition,
    pub coeffs: Vec<Matrix<F>>,
    pub z: ZParams<F>,
    pub dim: usize,
}

impl<F: Scalar> BetheOperator<F> {
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Horner evaluation at `t`.
    pub fn eval(&self, t: &F) -> Matrix<F> {
        let mut it = self.coeffs.iter();
        let Some(first) = it.next() else {
            return Matrix::zeros(self.dim, self.dim);
        };
        let mut acc = first.clone();
        for c in it {
            acc = acc.scale(t);
            acc.add_assign(c);
        }
        acc
    }
}

pub fn eval_beta<F: Scalar>(op: &BetheOperator<F>, t: &F) -> Matrix<F> {
    op.eval(t)
}

/// Every `ε^μ_ℓ` and `β^λ` on one Specht module for fixed `z`.
#[derive(Clone, Debug)]
pub struct BetheFamily<F> {
    pub nu: Partition,
    pub n: usize,
    pub dim: usize,
    pub z: ZParams<F>,
    epsilon: BTreeMap<(Partition, usize), Matrix<F>>,
    ops: BTreeMap<Partition, BetheOperator<F>>,
}

/// `e_ℓ` of the `z_i` with `i` in each subset, indexed by bitmask.
fn elementary_table<F: Scalar>(z: &[F]) -> Vec<Vec<F>> {
    let n = z.len();
    let mut table: Vec<Vec<F>> = Vec::with_capacity(1 << n);
    table.push(vec![F::one()]);
    for mask in 1usize..(1 << n) {
        let i = mask.trailing_zeros() as usize;
        let prev = &table[mask & (mask - 1)];
        let mut e = vec![F::zero(); prev.len() + 1];
        for (l, v) in prev.iter().enumerate() {
            e[l].add_assign_ref(v);
            e[l + 1].mul_add_assign(v, &z[i]);
        }
        table.push(e);
    }
    table
}

impl<F: Scalar> BetheFamily<F> {
    pub fn new(rep: &SpechtRep<F>, z: &ZParams<F>) -> Result<Self> {
        let n = rep.n;
        if z.n() != n {
            return Err(Error::SizeMismatch { expected: n, found: z.n() });
        }
        if n > 20 {
            return Err(Error::InvalidArgument(format!("n = {n} is beyond the supported range")));
        }
        let mut classes: BTreeMap<(u64, Partition), Matrix<F>> = BTreeMap::new();
        rep.for_each_group_element(|perm, m| {
            let key = (perm.moved_mask(), perm.moved_cycle_type());
            match classes.get_mut(&key) {
                Some(acc) => acc.add_assign(m),
                None => {
                    classes.insert(key, m.clone());
                }
            }
        });
        let mut by_type: BTreeMap<Partition, Vec<(u64, Matrix<F>)>> = BTreeMap::new();
        for ((support, rho), m) in classes {
            by_type.entry(rho).or_default().push((support, m));
        }
        let esym = elementary_table(&z.values);
        let full = (1u64 << n) - 1;
        let mut epsilon = BTreeMap::new();
        for mu in partitions_up_to(n) {
            let (core, ones) = mu.split_ones();
            for ell in 0..=n - mu.size() {
                let mut acc = Matrix::zeros(rep.dim, rep.dim);
                for (support, m) in by_type.get(&core).map_or(&[][..], Vec::as_slice) {
                    let w = (full & !support) as usize;
                    let free = n - support.count_ones() as usize;
                    let c = F::from_i64(binomial(free - ell, ones) as i64).mul_ref(&esym[w][ell]);
                    acc.add_scaled(&c, m);
                }
                epsilon.insert((mu.clone(), ell), acc);
            }
        }
        let mut family =
            BetheFamily { nu: rep.nu.clone(), n, dim: rep.dim, z: z.clone(), epsilon, ops: BTreeMap::new() };
        for lam in partitions_up_to(n) {
            let coeffs = if rep.nu.contains(&lam) { family.raw_beta_coeffs(&lam) } else { Vec::new() };
            let op = BetheOperator { nu: rep.nu.clone(), lam: lam.clone(), coeffs, z: z.clone(), dim: rep.dim };
            family.ops.insert(lam, op);
        }
        Ok(family)
    }

    /// `ε^μ_ℓ`.
    pub fn epsilon(&self, mu: &Partition, ell: usize) -> Result<&Matrix<F>> {
        if mu.size() + ell > self.n {
            return Err(Error::InvalidArgument(format!("|{mu}| + {ell} exceeds n = {}", self.n)));
        }
        Ok(&self.epsilon[&(mu.clone(), ell)])
    }

    /// `Σ_{μ ⊢ |λ|} χ^λ_μ ε^μ_ℓ` for every `ℓ`, without the containment shortcut.
    pub fn raw_beta_coeffs(&self, lam: &Partition) -> Vec<Matrix<F>> {
        if lam.size() > self.n {
            return Vec::new();
        }
        let chars: Vec<(Partition, i64)> = partitions_of(lam.size(), None, None)
            .into_iter()
            .map(|mu| {
                let c = character(lam, &mu).expect("same size");
                (mu, c)
            })
            .collect();
        (0..=self.n - lam.size())
            .map(|ell| {
                let mut acc = Matrix::zeros(self.dim, self.dim);
                for (mu, c) in &chars {
                    if *c != 0 {
                        acc.add_scaled(&F::from_i64(*c), &self.epsilon[&(mu.clone(), ell)]);
                    }
                }
                acc
            })
            .collect()
    }

    /// `β^λ(t)`; the zero operator for `λ ⊄ ν` or `|λ| > n`.
    pub fn beta(&self, lam: &Partition) -> BetheOperator<F> {
        self.ops.get(lam).cloned().unwrap_or_else(|| BetheOperator {
            nu: self.nu.clone(),
            lam: lam.clone(),
            coeffs: Vec::new(),
            z: self.z.clone(),
            dim: self.dim,
        })
    }

    pub fn beta_ref(&self, lam: &Partition) -> Option<&BetheOperator<F>> {
        self.ops.get(lam).filter(|op| !op.is_zero())
    }

    /// `β^λ(t)` evaluated, as a matrix.
    pub fn beta_at(&self, lam: &Partition, t: &F) -> Matrix<F> {
        self.beta_ref(lam).map_or_else(|| Matrix::zeros(self.dim, self.dim), |op| op.eval(t))
    }

    /// `β^{1^k}(t)` for `k = 0..=n`.
    pub fn fundamental_coeffs(&self) -> Vec<BetheOperator<F>> {
        (0..=self.n).map(|k| self.beta(&Partition::column(k))).collect()
    }

    /// Nonzero operators, keyed by partition.
    pub fn nonzero(&self) -> impl Iterator<Item = (&Partition, &BetheOperator<F>)> {
        self.ops.iter().filter(|(_, op)| !op.is_zero())
    }

    fn evaluations(&self, t: &F) -> BTreeMap<Partition, Matrix<F>> {
        self.nonzero().map(|(lam, op)| (lam.clone(), op.eval(t))).collect()
    }

    /// `β^λ(s) β^μ(t) = β^μ(t) β^λ(s)` for all `|λ|, |μ| ≤ n`.
    pub fn check_commutativity(&self, points: &[(F, F)], tol: f64) -> IdentityReport {
        let mut report = IdentityReport::new(IdentityKind::Commutativity);
        let all = partitions_up_to(self.n);
        for (p, (s, t)) in points.iter().enumerate() {
            let at_s = self.evaluations(s);
            let at_t = self.evaluations(t);
            for lam in &all {
                for mu in &all {
                    report.checks += 1;
                    let (Some(a), Some(b)) = (at_s.get(lam), at_t.get(mu)) else { continue };
                    if !a.mul(b).approx_eq(&b.mul(a), tol) {
                        report.fail(format!("lam={lam} mu={mu} point={p}"));
                    }
                }
            }
        }
        report
    }

    /// `β^μ(s+t) = Σ_{λ⊇μ} (f^{λ/μ}/|λ/μ|!) t^{|λ/μ|} β^λ(s)` for all `|μ| ≤ n`.
    pub fn check_translation(&self, points: &[(F, F)], tol: f64) -> IdentityReport {
        let mut report = IdentityReport::new(IdentityKind::Translation);
        let all = partitions_up_to(self.n);
        for (p, (s, t)) in points.iter().enumerate() {
            let at_s = self.evaluations(s);
            let at_sum = self.evaluations(&s.add_ref(t));
            for mu in &all {
                report.checks += 1;
                let mut rhs = Matrix::zeros(self.dim, self.dim);
                for (lam, m) in &at_s {
                    if lam.contains(mu) {
                        let w = F::from_rational(&skew_syt_ratio(lam, mu).expect("contained"));
                        rhs.add_scaled(&w.mul_ref(&t.pow(lam.size() - mu.size())), m);
                    }
                }
                let lhs = at_sum.get(mu).cloned().unwrap_or_else(|| Matrix::zeros(self.dim, self.dim));
                if !lhs.approx_eq(&rhs, tol) {
                    report.fail(format!("mu={mu} point={p}"));
                }
            }
        }
        report
    }

    /// Every relation becomes the zero matrix when `Δ^λ ↦ β^λ(t)`.
    pub fn check_relations(
        &self,
        kind: IdentityKind,
        relations: &[PluckerRelation],
        points: &[F],
        tol: f64,
    ) -> IdentityReport {
        let mut report = IdentityReport::new(kind);
        for (p, t) in points.iter().enumerate() {
            let at_t = self.evaluations(t);
            let mut products: BTreeMap<(Partition, Partition), Matrix<F>> = BTreeMap::new();
            for (r, rel) in relations.iter().enumerate() {
                report.checks += 1;
                let mut acc = Matrix::zeros(self.dim, self.dim);
                let mut scale = 0.0f64;
                for term in &rel.terms {
                    let (Some(a), Some(b)) = (at_t.get(&term.first), at_t.get(&term.second)) else { continue };
                    let key = (term.first.clone(), term.second.clone());
                    let prod = products.entry(key).or_insert_with(|| a.mul(b));
                    scale = scale.max(prod.max_abs());
                    acc.add_scaled(&F::from_i64(term.coeff), prod);
                }
                let ok = if F::EXACT { acc.is_zero() } else { acc.max_abs() <= tol * scale.max(1.0) };
                if !ok {
                    report.fail(format!("relation={r} I={:?} J={:?} point={p}", rel.i_set, rel.j_set));
                }
            }
        }
        report
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum IdentityKind {
    Commutativity,
    Translation,
    PluckerSingleColumn,
    PluckerSingleRow,
    PluckerAll,
    PluckerSampled,
}

impl IdentityKind {
    pub fn name(self) -> &'static str {
        match self {
            IdentityKind::Commutativity => "commutativity",
            IdentityKind::Translation => "translation",
            IdentityKind::PluckerSingleColumn => "plucker-single-column",
            IdentityKind::PluckerSingleRow => "plucker-single-row",
            IdentityKind::PluckerAll => "plucker-all",
            IdentityKind::PluckerSampled => "plucker-sampled",
        }
    }
}

/// Outcome of an identity check; failures name the offending indices.
#[derive(Clone, Debug)]
pub struct IdentityReport {
    pub identity: IdentityKind,
    pub checks: usize,
    pub failures: Vec<String>,
}

impl IdentityReport {
    fn new(identity: IdentityKind) -> Self {
        IdentityReport { identity, checks: 0, failures: Vec::new() }
    }

    fn fail(&mut self, what: String) {
        self.failures.push(what);
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Default float tolerance for operator equalities.
pub const FLOAT_TOL: f64 = 1e-9;

pub fn epsilon_matrix<F: Scalar>(rep: &SpechtRep<F>, mu: &Partition, ell: usize, z: &ZParams<F>) -> Result<Matrix<F>> {
    if mu.size() + ell > rep.n {
        return Err(Error::InvalidArgument(format!("|{mu}| + {ell} exceeds n = {}", rep.n)));
    }
    Ok(BetheFamily::new(rep, z)?.epsilon(mu, ell)?.clone())
}

pub fn beta_operator<F: Scalar>(rep: &SpechtRep<F>, lam: &Partition, z: &ZParams<F>) -> Result<BetheOperator<F>> {
    Ok(BetheFamily::new(rep, z)?.beta(lam))
}

pub fn fundamental_operator_coeffs<F: Scalar>(rep: &SpechtRep<F>, z: &ZParams<F>) -> Result<Vec<BetheOperator<F>>> {
    Ok(BetheFamily::new(rep, z)?.fundamental_coeffs())
}

/// Run one family of identity checks at the given `(s, t)` points; relation
/// checks use the `t` coordinates on `Gr(n, 2n)`.
pub fn verify_identities<F: Scalar>(
    rep: &SpechtRep<F>,
    z: &ZParams<F>,
    which: IdentityKind,
    points: &[(F, F)],
) -> Result<IdentityReport> {
    let family = BetheFamily::new(rep, z)?;
    let n = rep.n;
    let ts: Vec<F> = points.iter().map(|(_, t)| t.clone()).collect();
    use crate::grassmann::{plucker_relations, RelationFamily};
    Ok(match which {
        IdentityKind::Commutativity => family.check_commutativity(points, FLOAT_TOL),
        IdentityKind::Translation => family.check_translation(points, FLOAT_TOL),
        IdentityKind::PluckerSingleColumn => family.check_relations(
            which,
            &plucker_relations(n, 2 * n, RelationFamily::SingleColumn),
            &ts,
            FLOAT_TOL,
        ),
        IdentityKind::PluckerSingleRow => family.check_relations(
            which,
            &plucker_relations(n, 2 * n, RelationFamily::SingleRow),
            &ts,
            FLOAT_TOL,
        ),
        IdentityKind::PluckerAll | IdentityKind::PluckerSampled => {
            family.check_relations(which, &plucker_relations(n, 2 * n, RelationFamily::All), &ts, FLOAT_TOL)
        }
    })
}
