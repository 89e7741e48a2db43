use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;

use super::{PluckerVector, PolyVector};
use crate::combinatorics::{factorial, syt_count, Partition};
use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::scalar::{Rational, Scalar};

fn inv_factorial<F: Scalar>(k: usize) -> F {
    F::from_rational(&Rational::new(BigInt::from(1), factorial(k)))
}

/// `Δ_{(J - j_s) + k}`: drop the `s`-th index (0-based) of `j_set`, append `k`, sort.
fn swapped_coordinate<F: Scalar>(delta: &PluckerVector<F>, j_set: &[usize], s: usize, k: usize) -> F {
    let d = j_set.len();
    let rest: Vec<usize> = j_set.iter().enumerate().filter(|&(i, _)| i != s).map(|(_, &j)| j).collect();
    if rest.contains(&k) {
        return F::zero();
    }
    let above = rest.iter().filter(|&&j| j > k).count();
    let mut set = rest;
    set.push(k);
    set.sort_unstable();
    let v = delta.get(&Partition::from_index_set(&set));
    if (d - 1 - s + above) % 2 == 0 { v } else { -v }
}

/// The echelon basis `f_1, ..., f_d` of the space with coordinates `delta`,
/// where `f_i` has leading term `u^{j_i - 1}/(j_i - 1)!` and
/// `J = (ν_d + 1, ..., ν_1 + d)`.
pub fn echelon_basis<F: Scalar>(delta: &PluckerVector<F>, d: usize) -> Result<Vec<PolyVector<F>>> {
    let nu = &delta.nu;
    if d < nu.len() || d == 0 {
        return Err(Error::InvalidArgument(format!("d = {d} is smaller than the length of {nu}")));
    }
    if !delta.is_normalized() {
        return Err(Error::NotNormalized(format!("Δ^{} = {:?}", nu, delta.get(nu))));
    }
    let j_set: Vec<usize> = (0..d).map(|i| nu.part(d - 1 - i) + i + 1).collect();
    let weight = F::from_rational(&Rational::new(BigInt::from(syt_count(nu)), factorial(nu.size())));
    Ok((0..d)
        .map(|s| {
            let coeffs = (1..=j_set[s])
                .map(|k| swapped_coordinate(delta, &j_set, s, k).mul_ref(&weight))
                .collect();
            PolyVector::new(coeffs)
        })
        .collect())
}

/// `h_{t}(u) = Σ_{k=d}^{m} P_{k-d}(-t) (u+t)^{k-1}/(k-1)!` followed by its
/// first `d - 1` derivatives in `t`, where `P_k` are the single-row
/// eigenvalue polynomials.
pub fn h_basis<F: Scalar>(
    single_row: &BTreeMap<usize, Poly<F>>,
    d: usize,
    m: usize,
    t: &F,
    z: &[F],
) -> Result<Vec<PolyVector<F>>> {
    let scale = z.iter().map(|v| v.to_f64().abs()).fold(t.to_f64().abs(), f64::max).max(1.0);
    if let Some(zi) = z.iter().find(|zi| zi.sub_ref(t).is_negligible(1e-12 * scale)) {
        return Err(Error::Degenerate(format!("t = {zi:?} coincides with a root parameter")));
    }
    if d == 0 || d > m {
        return Err(Error::InvalidArgument(format!("need 1 ≤ d ≤ m, got d = {d}, m = {m}")));
    }
    // a[k-1] is the coefficient polynomial, in t, of (u+t)^{k-1}/(k-1)!.
    let mut a: Vec<Poly<F>> = (1..=m)
        .map(|k| if k >= d { single_row.get(&(k - d)).map_or_else(Poly::zero, Poly::reflect) } else { Poly::zero() })
        .collect();
    let mut out = Vec::with_capacity(d);
    for _ in 0..d {
        let mut coeffs = vec![F::zero(); m];
        for (idx, ak) in a.iter().enumerate() {
            let v = ak.eval(t);
            if v.is_zero() {
                continue;
            }
            for i in 0..=idx {
                let w = t.pow(idx - i).mul_ref(&inv_factorial::<F>(idx - i));
                coeffs[i].mul_add_assign(&v, &w);
            }
        }
        out.push(PolyVector::new(coeffs));
        a = (0..m)
            .map(|idx| {
                let next = a.get(idx + 1).cloned().unwrap_or_else(Poly::zero);
                a[idx].derivative().add(&next)
            })
            .collect();
    }
    Ok(out)
}

/// `det(f_i^{(j)})` expanded over row subsets, optionally made monic.
pub fn wronskian_of_polys<F: Scalar>(polys: &[PolyVector<F>], monic: bool) -> Result<Poly<F>> {
    let d = polys.len();
    if d == 0 {
        return Err(Error::InvalidArgument("empty list of polynomials".into()));
    }
    if d > 20 {
        return Err(Error::InvalidArgument("too many polynomials".into()));
    }
    let mut derivs: Vec<Vec<Poly<F>>> = Vec::with_capacity(d);
    for p in polys {
        let mut row = Vec::with_capacity(d);
        let mut cur = p.to_poly();
        for _ in 0..d {
            let next = cur.derivative();
            row.push(cur);
            cur = next;
        }
        derivs.push(row);
    }
    let mut dp: Vec<Option<Poly<F>>> = vec![None; 1 << d];
    dp[0] = Some(Poly::constant(F::one()));
    for mask in 0usize..(1 << d) {
        let Some(cur) = dp[mask].take() else { continue };
        let col = mask.count_ones() as usize;
        if col == d {
            dp[mask] = Some(cur);
            continue;
        }
        for r in 0..d {
            if mask >> r & 1 == 1 {
                continue;
            }
            let mut term = cur.mul(&derivs[r][col]);
            if (mask >> (r + 1)).count_ones() % 2 == 1 {
                term = term.scale(&-F::one());
            }
            let slot = &mut dp[mask | 1 << r];
            *slot = Some(match slot.take() {
                Some(acc) => acc.add(&term),
                None => term,
            });
        }
    }
    let mut w = dp[(1 << d) - 1].take().unwrap_or_else(Poly::zero);
    let scale = w.coeffs.iter().map(|c| c.to_f64().abs()).fold(0.0, f64::max);
    if !F::EXACT {
        for c in w.coeffs.iter_mut() {
            if c.is_negligible(1e-12 * scale) {
                *c = F::zero();
            }
        }
        w.trim();
    }
    if w.is_zero() || (!F::EXACT && scale < 1e-300) {
        return Err(Error::RankDeficient);
    }
    if monic {
        w.monic().ok_or(Error::RankDeficient)
    } else {
        Ok(w)
    }
}

/// `Wr(f_1), Wr(f_1, f_2), ..., Wr(f_1, ..., f_d)`, each made monic.
pub fn partial_wronskians<F: Scalar>(polys: &[PolyVector<F>]) -> Result<Vec<Poly<F>>> {
    (1..=polys.len()).map(|i| wronskian_of_polys(&polys[..i], true)).collect()
}
