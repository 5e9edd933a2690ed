use num_traits::Zero;

use super::WeightModule;
use crate::exact::{int, ExactMatrix, ExactScalar};

/// Basis pairs `(i, j)` of `A (x) B` whose weights sum to `weight`.
pub fn tensor_weight_space(a: &WeightModule, b: &WeightModule, weight: &ExactScalar) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for i in 0..a.dim() {
        for j in 0..b.dim() {
            if &(a.weight(i) + b.weight(j)) == weight {
                out.push((i, j));
            }
        }
    }
    out
}

/// Tensor Casimir `Omega(x)1 + 1(x)Omega + 2H(x)H + 4(X(x)Y + Y(x)X)` restricted
/// to the span of `basis` (a union of weight spaces, which the Casimir preserves).
pub fn tensor_casimir_block(a: &WeightModule, b: &WeightModule, basis: &[(usize, usize)]) -> ExactMatrix {
    let oa = a.casimir();
    let ob = b.casimir();
    tensor_casimir_block_with(a, b, &oa, &ob, basis)
}

fn tensor_casimir_block_with(
    a: &WeightModule,
    b: &WeightModule,
    oa: &ExactMatrix,
    ob: &ExactMatrix,
    basis: &[(usize, usize)],
) -> ExactMatrix {
    let two = int(2);
    let four = int(4);
    ExactMatrix::from_fn(basis.len(), basis.len(), |r, c| {
        let (i2, j2) = basis[r];
        let (i, j) = basis[c];
        let mut v = ExactScalar::zero();
        if j2 == j {
            v += oa.get(i2, i);
        }
        if i2 == i {
            v += ob.get(j2, j);
        }
        let hh = a.h().get(i2, i) * b.h().get(j2, j);
        if !hh.is_zero() {
            v += &two * hh;
        }
        let xy = a.x().get(i2, i) * b.y().get(j2, j) + a.y().get(i2, i) * b.x().get(j2, j);
        if !xy.is_zero() {
            v += &four * xy;
        }
        v
    })
}

/// `[V_m (x) V_n : V_k]` as the dimension of the `(k+1)^2 - 1` eigenspace of
/// the tensor Casimir on the weight-`k` space.
pub fn pieri_multiplicity(m: u32, n: u32, k: u32) -> usize {
    let a = WeightModule::finite_irrep(m as i64).expect("nonnegative");
    let b = WeightModule::finite_irrep(n as i64).expect("nonnegative");
    multiplicity_in(&a, &b, &a.casimir(), &b.casimir(), k)
}

fn multiplicity_in(a: &WeightModule, b: &WeightModule, oa: &ExactMatrix, ob: &ExactMatrix, k: u32) -> usize {
    let basis = tensor_weight_space(a, b, &int(k as i64));
    if basis.is_empty() {
        return 0;
    }
    let block = tensor_casimir_block_with(a, b, oa, ob, &basis);
    let kk = int(k as i64 + 1);
    let shifted = &block - &ExactMatrix::scalar(basis.len(), &(&kk * &kk - int(1)));
    basis.len() - shifted.rank()
}

/// `[V_m (x) V_n : V_k]` for every `k` from `m + n` down to `0`.
pub fn tensor_decomposition(m: u32, n: u32) -> Vec<(u32, usize)> {
    let a = WeightModule::finite_irrep(m as i64).expect("nonnegative");
    let b = WeightModule::finite_irrep(n as i64).expect("nonnegative");
    let (oa, ob) = (a.casimir(), b.casimir());
    (0..=m + n).rev().map(|k| (k, multiplicity_in(&a, &b, &oa, &ob, k))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn v1_v1_is_v2_plus_v0() {
        let d: Vec<_> = tensor_decomposition(1, 1).into_iter().filter(|&(_, c)| c > 0).collect();
        assert_eq!(d, vec![(2, 1), (0, 1)]);
    }

    #[test]
    fn v2_v3() {
        let d: Vec<_> = tensor_decomposition(2, 3).into_iter().filter(|&(_, c)| c > 0).collect();
        assert_eq!(d, vec![(5, 1), (3, 1), (1, 1)]);
    }

    #[test]
    fn block_matches_full_tensor_casimir() {
        let a = WeightModule::finite_irrep(2).unwrap();
        let b = WeightModule::adjoint_c3();
        let t = WeightModule::tensor(&a, &b);
        let full = t.casimir();
        let w = int(0);
        let basis = tensor_weight_space(&a, &b, &w);
        let idx: Vec<usize> = basis.iter().map(|&(i, j)| i * b.dim() + j).collect();
        assert_eq!(tensor_casimir_block(&a, &b, &basis), full.submatrix(&idx, &idx));
    }
}
