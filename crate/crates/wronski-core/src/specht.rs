//! Matrix models of Specht modules and of the elements `α^λ_X`.
//!
//! Bases are indexed by standard tableaux sorted by reading word (rows read
//! bottom to top). Column `T` of a matrix is the image of the basis vector `T`.

use alloc::vec::Vec;

use crate::combinatorics::{character, next_permutation, standard_tableaux, Partition, Permutation, SjtWalk, Tableau};
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RepForm {
    /// Young's seminormal form; rational entries.
    SeminormalExact,
    /// Young's orthogonal form; needs square roots.
    OrthogonalFloat,
}

#[derive(Clone, Debug)]
pub struct SpechtRep<F> {
    pub nu: Partition,
    pub n: usize,
    pub dim: usize,
    /// Images of `s_1, ..., s_{n-1}`.
    pub gens: Vec<Matrix<F>>,
    pub form: RepForm,
    /// Nonzero entries of each generator, by column: `(row, value)`.
    sparse: Vec<Vec<Vec<(usize, F)>>>,
    tableaux: Vec<Tableau>,
}

/// Build `S^ν` in the requested form.
///
/// The orthogonal form fails with [`Error::FormMismatch`] over fields without
/// the required square roots.
pub fn build_rep<F: Scalar>(nu: &Partition, form: RepForm) -> Result<SpechtRep<F>> {
    let n = nu.size();
    if n == 0 {
        return Err(Error::InvalidArgument("Specht module of the empty partition".into()));
    }
    let tableaux = standard_tableaux(nu);
    let dim = tableaux.len();
    let index: alloc::collections::BTreeMap<Vec<usize>, usize> =
        tableaux.iter().enumerate().map(|(i, t)| (t.reading_word(), i)).collect();
    let mut gens = Vec::with_capacity(n.saturating_sub(1));
    for i in 0..n.saturating_sub(1) {
        let mut m = Matrix::<F>::zeros(dim, dim);
        for (c, t) in tableaux.iter().enumerate() {
            let r = t.content(i + 1) - t.content(i);
            m[(c, c)] = F::from_ratio(1, r);
            if r.abs() >= 2 {
                let other = index[&t.swapped(i, i + 1).reading_word()];
                let base = F::one() - F::from_ratio(1, r * r);
                m[(other, c)] = match form {
                    RepForm::SeminormalExact if r < 0 => F::one(),
                    RepForm::SeminormalExact => base,
                    RepForm::OrthogonalFloat => base.sqrt_opt().ok_or_else(|| {
                        Error::FormMismatch("orthogonal form needs square roots".into())
                    })?,
                };
            }
        }
        gens.push(m);
    }
    let sparse = sparse_columns(&gens);
    Ok(SpechtRep { nu: nu.clone(), n, dim, gens, form, sparse, tableaux })
}

fn sparse_columns<F: Scalar>(gens: &[Matrix<F>]) -> Vec<Vec<Vec<(usize, F)>>> {
    gens.iter()
        .map(|g| {
            (0..g.cols())
                .map(|c| (0..g.rows()).filter(|&r| !g[(r, c)].is_zero()).map(|r| (r, g[(r, c)].clone())).collect())
                .collect()
        })
        .collect()
}

impl<F: Scalar> SpechtRep<F> {
    pub fn tableaux(&self) -> &[Tableau] {
        &self.tableaux
    }

    /// `m · ρ(s_i)`, using the sparsity of the generator.
    pub fn right_mul_gen(&self, m: &Matrix<F>, i: usize) -> Matrix<F> {
        let mut out = Matrix::<F>::zeros(m.rows(), self.dim);
        for (c, col) in self.sparse[i].iter().enumerate() {
            for (r, v) in col {
                for row in 0..m.rows() {
                    out[(row, c)].mul_add_assign(&m[(row, *r)], v);
                }
            }
        }
        out
    }

    /// Image of `σ`, multiplied out along a reduced word.
    pub fn rep_matrix(&self, sigma: &Permutation) -> Result<Matrix<F>> {
        if sigma.n() != self.n {
            return Err(Error::SizeMismatch { expected: self.n, found: sigma.n() });
        }
        Ok(sigma.reduced_word().into_iter().fold(Matrix::identity(self.dim), |m, i| self.right_mul_gen(&m, i)))
    }

    /// Visit every element of `S_n` with its matrix; consecutive matrices differ
    /// by one generator.
    pub fn for_each_group_element(&self, mut f: impl FnMut(&Permutation, &Matrix<F>)) {
        let mut walk = SjtWalk::new(self.n);
        let mut perm = Permutation::identity(self.n);
        let mut m = Matrix::identity(self.dim);
        f(&perm, &m);
        while let Some(i) = walk.next_swap() {
            perm.swap_positions(i);
            m = self.right_mul_gen(&m, i);
            f(&perm, &m);
        }
    }

    /// `α^λ_X = Σ_{σ ∈ S_X} χ^λ(σ) σ`, with `x` given by 0-based points.
    pub fn alpha_matrix(&self, lam: &Partition, x: &[usize]) -> Result<Matrix<F>> {
        if x.len() != lam.size() {
            return Err(Error::SizeMismatch { expected: lam.size(), found: x.len() });
        }
        let mut xs = x.to_vec();
        xs.sort_unstable();
        let xmask = xs.iter().fold(0u64, |m, &i| m | 1 << i);
        let mut arrangement = xs.clone();
        let mut total = Matrix::zeros(self.dim, self.dim);
        loop {
            let mut images: Vec<usize> = (0..self.n).collect();
            for (src, dst) in xs.iter().zip(&arrangement) {
                images[*src] = *dst;
            }
            let sigma = Permutation::new(images)?;
            let chi = character(lam, &sigma.cycle_type_within(xmask))?;
            if chi != 0 {
                total.add_scaled(&F::from_i64(chi), &self.rep_matrix(&sigma)?);
            }
            if !next_permutation(&mut arrangement) {
                break;
            }
        }
        Ok(total)
    }

    /// A model of `S^ν` in a caller-chosen basis. The generators must satisfy
    /// the Coxeter relations of `S_n` and have the character of `S^ν` on a
    /// transposition.
    pub fn from_generators(nu: &Partition, gens: Vec<Matrix<F>>, form: RepForm) -> Result<SpechtRep<F>> {
        let n = nu.size();
        let dim = crate::combinatorics::syt_count(nu) as usize;
        if gens.len() != n.saturating_sub(1) {
            return Err(Error::SizeMismatch { expected: n.saturating_sub(1), found: gens.len() });
        }
        if let Some(g) = gens.iter().find(|g| g.rows() != dim || g.cols() != dim) {
            return Err(Error::SizeMismatch { expected: dim, found: g.rows().max(g.cols()) });
        }
        let tol = 1e-10;
        let id = Matrix::identity(dim);
        for (i, g) in gens.iter().enumerate() {
            let mut ok = g.mul(g).approx_eq(&id, tol);
            if n >= 2 {
                let ty = Partition::from_unsorted([alloc::vec![2], alloc::vec![1; n - 2]].concat());
                ok &= g.trace().sub_ref(&F::from_i64(character(nu, &ty)?)).is_negligible(tol);
            }
            for (j, h) in gens.iter().enumerate().skip(i + 1) {
                ok &= if j == i + 1 {
                    g.mul(h).mul(g).approx_eq(&h.mul(g).mul(h), tol)
                } else {
                    g.mul(h).approx_eq(&h.mul(g), tol)
                };
            }
            if !ok {
                return Err(Error::InvalidArgument(alloc::format!("generator {i} violates the relations of S^{nu}")));
            }
        }
        let sparse = sparse_columns(&gens);
        Ok(SpechtRep { nu: nu.clone(), n, dim, gens, form, sparse, tableaux: Vec::new() })
    }

    /// Twist by the sign character; the result is a model of `S^{ν'}` in a
    /// basis that is not tableau-indexed.
    pub fn sign_twist(&self) -> SpechtRep<F> {
        let gens: Vec<Matrix<F>> = self.gens.iter().map(|g| g.scale(&-F::one())).collect();
        let sparse = self
            .sparse
            .iter()
            .map(|cols| cols.iter().map(|col| col.iter().map(|(r, v)| (*r, -v.clone())).collect()).collect())
            .collect();
        SpechtRep {
            nu: self.nu.conjugate(),
            n: self.n,
            dim: self.dim,
            gens,
            form: self.form,
            sparse,
            tableaux: Vec::new(),
        }
    }
}

pub fn rep_matrix<F: Scalar>(rep: &SpechtRep<F>, sigma: &Permutation) -> Result<Matrix<F>> {
    rep.rep_matrix(sigma)
}

pub fn alpha_matrix<F: Scalar>(rep: &SpechtRep<F>, lam: &Partition, x: &[usize]) -> Result<Matrix<F>> {
    rep.alpha_matrix(lam, x)
}
