//! Homogeneous symmetric functions in the Schur and power-sum bases.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use crate::combinatorics::{centralizer_size, character, partitions_of, Partition};
use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::scalar::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SymBasis {
    Schur,
    PowerSum,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SymFunc {
    pub degree: usize,
    pub basis: SymBasis,
    pub coeffs: BTreeMap<Partition, Rational>,
}

impl SymFunc {
    pub fn new(degree: usize, basis: SymBasis, coeffs: BTreeMap<Partition, Rational>) -> Result<Self> {
        if let Some(bad) = coeffs.keys().find(|p| p.size() != degree) {
            return Err(Error::SizeMismatch { expected: degree, found: bad.size() });
        }
        let coeffs = coeffs.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        Ok(SymFunc { degree, basis, coeffs })
    }

    /// A single basis element.
    pub fn basis_element(basis: SymBasis, lam: &Partition) -> Self {
        let mut coeffs = BTreeMap::new();
        coeffs.insert(lam.clone(), Rational::from_integer(1.into()));
        SymFunc { degree: lam.size(), basis, coeffs }
    }

    pub fn coeff(&self, lam: &Partition) -> Rational {
        self.coeffs.get(lam).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add(&self, other: &SymFunc) -> Result<SymFunc> {
        if self.degree != other.degree {
            return Err(Error::SizeMismatch { expected: self.degree, found: other.degree });
        }
        let other = convert_basis(other, self.basis);
        let mut coeffs = self.coeffs.clone();
        for (k, v) in other.coeffs {
            *coeffs.entry(k).or_insert_with(Rational::zero) += v;
        }
        SymFunc::new(self.degree, self.basis, coeffs)
    }

    /// Product, returned in the power-sum basis.
    pub fn mul(&self, other: &SymFunc) -> SymFunc {
        let a = convert_basis(self, SymBasis::PowerSum);
        let b = convert_basis(other, SymBasis::PowerSum);
        let mut coeffs: BTreeMap<Partition, Rational> = BTreeMap::new();
        for (p, x) in &a.coeffs {
            for (q, y) in &b.coeffs {
                *coeffs.entry(p.union(q)).or_insert_with(Rational::zero) += x * y;
            }
        }
        SymFunc { degree: self.degree + other.degree, basis: SymBasis::PowerSum, coeffs }
    }

    /// Hall inner product.
    pub fn inner(&self, other: &SymFunc) -> Rational {
        if self.degree != other.degree {
            return Rational::zero();
        }
        let a = convert_basis(self, SymBasis::Schur);
        let b = convert_basis(other, SymBasis::Schur);
        a.coeffs.iter().map(|(k, v)| v * b.coeff(k)).fold(Rational::zero(), |acc, x| acc + x)
    }
}

/// `s_λ = Σ_μ (χ^λ_μ / z_μ) p_μ` and `p_μ = Σ_λ χ^λ_μ s_λ`.
pub fn convert_basis(f: &SymFunc, target: SymBasis) -> SymFunc {
    if f.basis == target {
        return f.clone();
    }
    let mut coeffs: BTreeMap<Partition, Rational> = BTreeMap::new();
    let all = partitions_of(f.degree, None, None);
    for (src, c) in &f.coeffs {
        for dst in &all {
            let (lam, mu) = if f.basis == SymBasis::Schur { (src, dst) } else { (dst, src) };
            let chi = character(lam, mu).expect("same degree");
            if chi == 0 {
                continue;
            }
            let w = match target {
                SymBasis::PowerSum => Rational::new(BigInt::from(chi), centralizer_size(mu)),
                SymBasis::Schur => Rational::from_integer(BigInt::from(chi)),
            };
            *coeffs.entry(dst.clone()).or_insert_with(Rational::zero) += c * w;
        }
    }
    coeffs.retain(|_, c| !c.is_zero());
    SymFunc { degree: f.degree, basis: target, coeffs }
}

/// The algebra map `p_1 ↦ u`, `p_k ↦ 0` for `k ≥ 2`.
pub fn exp_specialization(f: &SymFunc) -> Poly<Rational> {
    let p = convert_basis(f, SymBasis::PowerSum);
    Poly::monomial(p.coeff(&Partition::column(f.degree)), f.degree)
}

/// Sum of the specializations of homogeneous components.
pub fn exp_specialization_sum(parts: &[SymFunc]) -> Poly<Rational> {
    parts.iter().fold(Poly::zero(), |acc, f| acc.add(&exp_specialization(f)))
}

/// `Σ_{λ ⊢ k} χ^λ_ρ`, the power-sum coefficient of `S_k` times `z_ρ`.
fn row_sum(rho: &Partition) -> i64 {
    partitions_of(rho.size(), None, None).iter().map(|lam| character(lam, rho).expect("same size")).sum()
}

fn class_tuples(kappa: &[usize]) -> Vec<Vec<Partition>> {
    kappa.iter().fold(alloc::vec![Vec::new()], |acc, &k| {
        let classes = partitions_of(k, None, None);
        acc.into_iter()
            .flat_map(|prefix| {
                classes.iter().map(move |c| {
                    let mut t = prefix.clone();
                    t.push(c.clone());
                    t
                })
            })
            .collect()
    })
}

fn to_count(r: Rational, what: &str) -> Result<u64> {
    if !r.is_integer() || r < Rational::zero() {
        return Err(Error::Numerical(format!("{what} is not a nonnegative integer: {r}")));
    }
    r.to_integer().to_u64().ok_or_else(|| Error::Numerical(format!("{what} overflows")))
}

/// `⟨s_ν, Π_i f_i⟩` where each factor has power-sum weights `w_i(ρ_i)`,
/// summed over tuples of classes of the Young subgroup.
fn young_inner(nu: &Partition, kappa: &[usize], weight: impl Fn(usize, &Partition) -> i64) -> Rational {
    let mut total = Rational::zero();
    for tuple in class_tuples(kappa) {
        let mut w = Rational::from_integer(BigInt::from(1));
        let mut rho = Partition::empty();
        for (i, r) in tuple.iter().enumerate() {
            let c = weight(i, r);
            if c == 0 {
                w = Rational::zero();
                break;
            }
            w *= Rational::new(BigInt::from(c), centralizer_size(r));
            rho = rho.union(r);
        }
        if w.is_zero() {
            continue;
        }
        total += w * Rational::from_integer(BigInt::from(character(nu, &rho).expect("same size")));
    }
    total
}

fn check_kappa(nu: Option<&Partition>, kappa: &[usize]) -> Result<(usize, Vec<usize>)> {
    let parts: Vec<usize> = kappa.iter().copied().filter(|&k| k > 0).collect();
    let n: usize = parts.iter().sum();
    if let Some(nu) = nu {
        if nu.size() != n {
            return Err(Error::SizeMismatch { expected: nu.size(), found: n });
        }
    }
    Ok((n, parts))
}

/// `⟨s_ν, S_{κ_1} ⋯ S_{κ_s}⟩` with `S_k = Σ_{λ ⊢ k} s_λ`; summed over all
/// `ν ⊢ |κ|` when `nu` is absent.
pub fn bethe_dimension(nu: Option<&Partition>, kappa: &[usize]) -> Result<u64> {
    let (n, parts) = check_kappa(nu, kappa)?;
    let targets = match nu {
        Some(nu) => alloc::vec![nu.clone()],
        None => partitions_of(n, None, None),
    };
    let mut total = 0;
    for target in &targets {
        let v = young_inner(target, &parts, |_, rho| row_sum(rho));
        total += to_count(v, "dimension")?;
    }
    Ok(total)
}

/// `⟨s_ν, s_{μ_1} ⋯ s_{μ_s}⟩`.
pub fn product_multiplicity(nu: &Partition, mus: &[Partition]) -> Result<u64> {
    let kappa: Vec<usize> = mus.iter().map(Partition::size).collect();
    check_kappa(Some(nu), &kappa)?;
    let v = young_inner(nu, &kappa, |i, rho| character(&mus[i], rho).expect("same size"));
    to_count(v, "multiplicity")
}

/// All tuples `(μ_1, ..., μ_s)` with `μ_i ⊢ κ_i`.
pub fn partition_tuples(kappa: &[usize]) -> Vec<Vec<Partition>> {
    class_tuples(kappa)
}
