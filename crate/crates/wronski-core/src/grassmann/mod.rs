//! Plücker coordinates indexed by partitions, and the operations on them.
//!
//! A `d`-dimensional space of polynomials of degree below `m` is a point of
//! `Gr(d, m)`. Coordinates are taken in the basis `e_j(u) = u^{j-1}/(j-1)!`,
//! and the minor with column set `i_1 < ... < i_d` is indexed by
//! `λ = (i_d - d, ..., i_1 - 1)`.

mod bases;
mod relations;

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;

use num_bigint::BigInt;

use crate::combinatorics::{combinations, partitions_of, skew_syt_ratio, syt_count, factorial, Partition};
use crate::error::{Error, Result};
use crate::linalg::determinant;
use crate::matrix::Matrix;
use crate::poly::Poly;
use crate::scalar::{Rational, Scalar};

pub use bases::{echelon_basis, h_basis, partial_wronskians, wronskian_of_polys};
pub use relations::{
    plucker_relations, relation_from_index_sets, sample_relations, PluckerRelation, RelationFamily,
    RelationTerm,
};

/// All partitions contained in `nu`, by increasing size.
pub fn subpartitions(nu: &Partition) -> Vec<Partition> {
    (0..=nu.size()).flat_map(|k| partitions_of(k, None, Some(nu))).collect()
}

/// `f^λ / |λ|!` as an exact rational.
pub fn syt_weight(lam: &Partition) -> Rational {
    Rational::new(BigInt::from(syt_count(lam)), factorial(lam.size()))
}

/// `|ν|! / f^ν`, the normalized value of the `ν` coordinate.
pub fn normalization<F: Scalar>(nu: &Partition) -> F {
    F::from_rational(&Rational::new(factorial(nu.size()), BigInt::from(syt_count(nu))))
}

/// Plücker coordinates of a point of the closed Schubert cell of `nu`.
#[derive(Clone, Debug, PartialEq)]
pub struct PluckerVector<F> {
    pub nu: Partition,
    /// One entry for every `λ ⊆ ν`; entries outside `ν` are zero.
    pub entries: BTreeMap<Partition, F>,
}

impl<F: Scalar> PluckerVector<F> {
    /// Entries for partitions missing from `entries` are set to zero.
    pub fn from_entries(nu: Partition, entries: BTreeMap<Partition, F>) -> Result<Self> {
        let mut full = BTreeMap::new();
        for (lam, v) in entries {
            if !nu.contains(&lam) {
                if v.is_zero() {
                    continue;
                }
                return Err(Error::OutsideCell(format!("nonzero entry at {lam} outside {nu}")));
            }
            full.insert(lam, v);
        }
        for lam in subpartitions(&nu) {
            full.entry(lam).or_insert_with(F::zero);
        }
        Ok(PluckerVector { nu, entries: full })
    }

    pub fn get(&self, lam: &Partition) -> F {
        self.entries.get(lam).cloned().unwrap_or_else(F::zero)
    }

    /// Rescale so that the `ν` entry equals `|ν|!/f^ν`.
    pub fn normalized(&self) -> Result<Self> {
        let top = self.get(&self.nu);
        if top.is_negligible(0.0) {
            return Err(Error::NotNormalized(format!("Δ^{} vanishes", self.nu)));
        }
        let factor = normalization::<F>(&self.nu).div_ref(&top);
        Ok(self.scale(&factor))
    }

    pub fn scale(&self, c: &F) -> Self {
        PluckerVector {
            nu: self.nu.clone(),
            entries: self.entries.iter().map(|(k, v)| (k.clone(), v.mul_ref(c))).collect(),
        }
    }

    /// Exact check, or relative `1e-9` in floating point.
    pub fn is_normalized(&self) -> bool {
        let target = normalization::<F>(&self.nu);
        let top = self.get(&self.nu);
        if F::EXACT {
            top == target
        } else {
            (top.to_f64() - target.to_f64()).abs() <= 1e-9 * target.to_f64().abs()
        }
    }

    pub fn max_abs(&self) -> f64 {
        self.entries.values().map(|v| v.to_f64().abs()).fold(0.0, f64::max)
    }

    pub fn map<G: Scalar>(&self, f: impl Fn(&F) -> G) -> PluckerVector<G> {
        PluckerVector { nu: self.nu.clone(), entries: self.entries.iter().map(|(k, v)| (k.clone(), f(v))).collect() }
    }
}

/// A polynomial stored by its coordinates in the basis `e_j(u) = u^{j-1}/(j-1)!`.
#[derive(Clone, Debug, PartialEq)]
pub struct PolyVector<F> {
    pub coeffs: Vec<F>,
}

impl<F: Scalar> PolyVector<F> {
    pub fn new(coeffs: Vec<F>) -> Self {
        PolyVector { coeffs }
    }

    pub fn to_poly(&self) -> Poly<F> {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(j, a)| a.div_ref(&F::from_rational(&Rational::from_integer(factorial(j)))))
                .collect(),
        )
    }

    pub fn from_poly(p: &Poly<F>) -> Self {
        PolyVector {
            coeffs: p
                .coeffs
                .iter()
                .enumerate()
                .map(|(j, a)| a.mul_ref(&F::from_rational(&Rational::from_integer(factorial(j)))))
                .collect(),
        }
    }

    /// Pad with zeros to `m` coordinates.
    pub fn padded(&self, m: usize) -> Vec<F> {
        let mut v = self.coeffs.clone();
        v.resize(m.max(v.len()), F::zero());
        v
    }
}

/// All maximal minors of a `d × m` matrix, indexed by partitions; zero minors omitted.
pub fn pluckers_of_matrix<F: Scalar>(a: &Matrix<F>) -> BTreeMap<Partition, F> {
    let (d, m) = (a.rows(), a.cols());
    let mut out = BTreeMap::new();
    for cols in combinations(m, d) {
        let minor = Matrix::from_fn(d, d, |i, j| a[(i, cols[j])].clone());
        let det = determinant(&minor);
        if !det.is_zero() {
            let set: Vec<usize> = cols.iter().map(|c| c + 1).collect();
            out.insert(Partition::from_index_set(&set), det);
        }
    }
    out
}

/// The matrix whose rows are the given polynomials' coordinates.
pub fn basis_matrix<F: Scalar>(polys: &[PolyVector<F>]) -> Matrix<F> {
    let m = polys.iter().map(|p| p.coeffs.len()).max().unwrap_or(0);
    Matrix::from_rows(polys.iter().map(|p| p.padded(m)).collect())
}

/// Normalized Plücker coordinates of the span of `polys`, checked to lie in
/// the closed cell of `nu` with `Δ^ν ≠ 0`.
pub fn pluckers_from_basis<F: Scalar>(polys: &[PolyVector<F>], nu: &Partition) -> Result<PluckerVector<F>> {
    let a = basis_matrix(polys);
    let (d, m) = (a.rows(), a.cols());
    if d == 0 || m < d {
        return Err(Error::RankDeficient);
    }
    let minors = pluckers_of_matrix(&a);
    let scale = minors.values().map(|v| v.to_f64().abs()).fold(0.0, f64::max);
    if minors.values().all(|v| v.is_negligible(1e-12 * scale.max(1.0))) {
        return Err(Error::RankDeficient);
    }
    if nu.len() > d || nu.part(0) > m - d {
        return Err(Error::OutsideCell(format!("{nu} does not fit in Gr({d},{m})")));
    }
    let mut entries = BTreeMap::new();
    for (lam, v) in minors {
        if nu.contains(&lam) {
            entries.insert(lam, v);
        } else if !v.is_negligible(1e-9 * scale) {
            return Err(Error::OutsideCell(format!("Δ^{lam} ≠ 0 with {lam} ⊄ {nu}")));
        }
    }
    PluckerVector::from_entries(nu.clone(), entries)?.normalized()
}

/// Largest absolute value over the relations; in floating point divided by
/// the squared largest coordinate.
pub fn eval_relations<F: Scalar>(delta: &PluckerVector<F>, relations: &[PluckerRelation]) -> F {
    let mut worst = F::zero();
    for rel in relations {
        let v = rel.evaluate(|lam| delta.get(lam)).abs_val();
        if v > worst {
            worst = v;
        }
    }
    if F::EXACT {
        worst
    } else {
        let norm = delta.max_abs().max(f64::MIN_POSITIVE);
        worst.div_ref(&F::from_rational(&Rational::from_float(norm * norm).expect("finite norm")))
    }
}

/// `Wr(V) = Σ_{λ⊆ν} (f^λ/|λ|!) Δ^λ u^{|λ|}`.
pub fn wronskian_from_pluckers<F: Scalar>(delta: &PluckerVector<F>) -> Poly<F> {
    let mut coeffs = alloc::vec![F::zero(); delta.nu.size() + 1];
    for (lam, v) in &delta.entries {
        coeffs[lam.size()].mul_add_assign(&F::from_rational(&syt_weight(lam)), v);
    }
    Poly::new(coeffs)
}

/// `Δ^μ` of the translate `V(s)` as a polynomial in `s`:
/// `Σ_{μ⊆λ⊆ν} (f^{λ/μ}/|λ/μ|!) Δ^λ s^{|λ/μ|}`.
pub fn plucker_polynomial<F: Scalar>(delta: &PluckerVector<F>, mu: &Partition) -> Poly<F> {
    if !delta.nu.contains(mu) {
        return Poly::zero();
    }
    let mut coeffs = alloc::vec![F::zero(); delta.nu.size() - mu.size() + 1];
    for (lam, v) in &delta.entries {
        if lam.contains(mu) {
            let w = skew_syt_ratio(lam, mu).expect("containment checked");
            coeffs[lam.size() - mu.size()].mul_add_assign(&F::from_rational(&w), v);
        }
    }
    Poly::new(coeffs)
}

/// Coordinates of `V(t)`.
pub fn translate_pluckers<F: Scalar>(delta: &PluckerVector<F>, t: &F) -> PluckerVector<F> {
    PluckerVector {
        nu: delta.nu.clone(),
        entries: delta.entries.keys().map(|mu| (mu.clone(), plucker_polynomial(delta, mu).eval(t))).collect(),
    }
}

/// The single-row polynomials `k ↦ Δ^{(k)}(s)`, for `0 ≤ k ≤ ν_1`.
pub fn single_row_polys<F: Scalar>(delta: &PluckerVector<F>) -> BTreeMap<usize, Poly<F>> {
    (0..=delta.nu.part(0)).map(|k| (k, plucker_polynomial(delta, &Partition::row(k)))).collect()
}

/// Coordinates of the dual space, indexed by conjugate partitions.
pub fn dual_pluckers<F: Scalar>(delta: &PluckerVector<F>) -> PluckerVector<F> {
    PluckerVector {
        nu: delta.nu.conjugate(),
        entries: delta.entries.iter().map(|(k, v)| (k.conjugate(), v.clone())).collect(),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PositivityMode {
    /// Every coordinate nonnegative.
    Tnn,
    /// Coordinates inside the cell strictly positive.
    TpInCell,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PositivityVerdict {
    pub pass: bool,
    pub witness: Option<Partition>,
}

/// Sign test on the normalized coordinates; the witness is the first
/// violating partition.
pub fn positivity_check<F: Scalar>(delta: &PluckerVector<F>, mode: PositivityMode, tol: f64) -> PositivityVerdict {
    let flip = delta.get(&delta.nu) < F::zero();
    for (lam, v) in &delta.entries {
        let v = if flip { -v.clone() } else { v.clone() };
        let bad = match mode {
            PositivityMode::Tnn if tol == 0.0 => v < F::zero(),
            PositivityMode::Tnn => v.to_f64() < -tol,
            PositivityMode::TpInCell if tol == 0.0 => v <= F::zero(),
            PositivityMode::TpInCell => v.to_f64() <= tol,
        };
        if bad {
            return PositivityVerdict { pass: false, witness: Some(lam.clone()) };
        }
    }
    PositivityVerdict { pass: true, witness: None }
}

/// `ι_1`: pad with a zero column, `Gr(d, m) → Gr(d, m+1)`.
pub fn include_column<F: Scalar>(a: &Matrix<F>) -> Matrix<F> {
    Matrix::from_fn(a.rows(), a.cols() + 1, |i, j| if j < a.cols() { a[(i, j)].clone() } else { F::zero() })
}

/// `ι_2`: `A ↦ [[1, 0], [0, A]]`, `Gr(d, m) → Gr(d+1, m+1)`.
pub fn include_row<F: Scalar>(a: &Matrix<F>) -> Matrix<F> {
    Matrix::from_fn(a.rows() + 1, a.cols() + 1, |i, j| match (i, j) {
        (0, 0) => F::one(),
        (0, _) | (_, 0) => F::zero(),
        _ => a[(i - 1, j - 1)].clone(),
    })
}

/// Translation matrix `φ_t` with entries `t^{j-i}/(j-i)!` for `j ≥ i`;
/// `A ↦ A φ_tᵀ` represents `V ↦ V(t)`.
pub fn translation_matrix<F: Scalar>(m: usize, t: &F) -> Matrix<F> {
    Matrix::from_fn(m, m, |i, j| {
        if j >= i {
            t.pow(j - i).div_ref(&F::from_rational(&Rational::from_integer(factorial(j - i))))
        } else {
            F::zero()
        }
    })
}
