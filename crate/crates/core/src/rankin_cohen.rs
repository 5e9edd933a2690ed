//! Finite-dimensional Rankin–Cohen operators `V_m (x) V_n -> V_{m+n-2l}`.

use num_traits::{One, Zero};

use crate::exact::scalar::factorial;
use crate::exact::{int, BivariatePolynomial, ExactMatrix, ExactScalar};
use crate::sl2::{Intertwiner, Sl2Error, Symmetry, WeightModule};

#[derive(Debug, thiserror::Error, Clone, PartialEq)]
pub enum RankinCohenError {
    #[error("order {l} is outside 0..=min({m}, {n})")]
    OrderOutOfRange { m: u32, n: u32, l: u32 },
    #[error(transparent)]
    Module(#[from] Sl2Error),
}

fn fact(n: u32) -> ExactScalar {
    ExactScalar::from_integer(factorial(n as u64))
}

fn check_order(m: u32, n: u32, l: u32) -> Result<(), RankinCohenError> {
    if l > m.min(n) {
        return Err(RankinCohenError::OrderOutOfRange { m, n, l });
    }
    Ok(())
}

/// Coefficient `a_j` of `d_z^{l-j} d_w^j`, for `j = 0..=l`:
/// `(-1)^{l-j} (m+j-l)! (n-j)! / (j! (m-l)! (l-j)! (n-l)!)`.
pub fn rc_coefficients(m: u32, n: u32, l: u32) -> Result<Vec<ExactScalar>, RankinCohenError> {
    check_order(m, n, l)?;
    Ok((0..=l)
        .map(|j| {
            let num = fact(m + j - l) * fact(n - j);
            let den = fact(j) * fact(m - l) * fact(l - j) * fact(n - l);
            let sign = if (l - j).is_multiple_of(2) { int(1) } else { int(-1) };
            sign * num / den
        })
        .collect())
}

/// Applies the bidifferential operator with coefficients `coeffs` to `p` and restricts to `z = w`.
pub fn apply_bidifferential(coeffs: &[ExactScalar], p: &BivariatePolynomial) -> crate::exact::UnivariatePolynomial {
    let l = coeffs.len() as u32 - 1;
    let mut acc = BivariatePolynomial::zero();
    for (j, a) in coeffs.iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        let j = j as u32;
        acc = &acc + &p.mixed_derivative(l - j, j).scale(a);
    }
    acc.restrict_diagonal()
}

/// The operator together with its matrix in monomial bases and the equivariance check.
#[derive(Clone, Debug)]
pub struct RankinCohenOperator {
    pub m: u32,
    pub n: u32,
    pub l: u32,
    pub k: u32,
    coefficients: Vec<ExactScalar>,
    intertwiner: Intertwiner,
}

impl RankinCohenOperator {
    pub fn coefficients(&self) -> &[ExactScalar] {
        &self.coefficients
    }

    pub fn intertwiner(&self) -> &Intertwiner {
        &self.intertwiner
    }

    pub fn matrix(&self) -> &ExactMatrix {
        self.intertwiner.matrix()
    }

    pub fn is_equivariant(&self) -> bool {
        self.intertwiner.is_equivariant()
    }

    /// Image of `z^i (x) w^j` as coefficients in `V_k`.
    pub fn apply_monomials(&self, i: u32, j: u32) -> Vec<ExactScalar> {
        self.matrix().column(self.source_index(i, j))
    }

    pub fn source_index(&self, i: u32, j: u32) -> usize {
        (i * (self.n + 1) + j) as usize
    }

    /// `R(z^l (x) 1)` read from the constant coefficient.
    pub fn probe_value(&self) -> ExactScalar {
        self.apply_monomials(self.l, 0)[0].clone()
    }
}

/// `R_{m,n}^k` with `k = m + n - 2l` as an intertwiner `V_m (x) V_n -> V_k`.
/// Column `i (n+1) + j` holds the image of `z^i w^j`.
pub fn rc_operator(m: u32, n: u32, l: u32) -> Result<RankinCohenOperator, RankinCohenError> {
    let coefficients = rc_coefficients(m, n, l)?;
    let k = m + n - 2 * l;
    let source = WeightModule::tensor(
        &WeightModule::finite_irrep(m as i64)?,
        &WeightModule::finite_irrep(n as i64)?,
    );
    let target = WeightModule::finite_irrep(k as i64)?;
    let mut matrix = ExactMatrix::zeros((k + 1) as usize, source.dim());
    for i in 0..=m {
        for j in 0..=n {
            let image = apply_bidifferential(&coefficients, &BivariatePolynomial::monomial(i, j, ExactScalar::one()));
            for (deg, c) in image.terms() {
                matrix.set(deg as usize, (i * (n + 1) + j) as usize, c.clone());
            }
        }
    }
    let intertwiner = Intertwiner::checked(source, target, matrix, Symmetry::Sl2, 0)?;
    Ok(RankinCohenOperator {
        m,
        n,
        l,
        k,
        coefficients,
        intertwiner,
    })
}

/// Closed value of `R(z^l (x) 1)`: `(-1)^l n! / (n-l)!`.
pub fn probe_value_closed(n: u32, l: u32) -> ExactScalar {
    let sign = if l.is_multiple_of(2) { int(1) } else { int(-1) };
    sign * fact(n) / fact(n - l)
}

/// `(x)_j = x (x+1) ... (x+j-1)`.
pub fn pochhammer(x: &ExactScalar, j: u32) -> ExactScalar {
    (0..j).fold(ExactScalar::one(), |acc, i| acc * (x + int(i as i64)))
}

/// Coefficients `(-1)^j / (j! (l-j)!) * G(l1-l+j) G(l2-j) / (G(l1-l) G(l2-l))` of
/// `d_z^{l-j} d_w^j`, with both gamma ratios expanded as finite products:
/// `(l1-l)_j` and `(l2-l) (l2-l+1) ... (l2-j-1)`. Both products are polynomial
/// in the parameters, so every rational input gives a finite list.
pub fn gamma_form_coefficients(l1: &ExactScalar, l2: &ExactScalar, l: u32) -> Vec<ExactScalar> {
    let shift = int(l as i64);
    (0..=l)
        .map(|j| {
            let sign = if j % 2 == 0 { int(1) } else { int(-1) };
            let first = pochhammer(&(l1 - &shift), j);
            let second = pochhammer(&(l2 - &shift), l - j);
            sign * first * second / (fact(j) * fact(l - j))
        })
        .collect()
}
