use std::fmt;
use std::sync::Arc;

use num_traits::One;

use super::Sl2Error;
use crate::exact::{int, ComplexExact, ExactMatrix, ExactScalar};

/// Which construction produced a module.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ModuleKind {
    /// `Pol_m[z]`, basis `z^i`.
    FiniteIrrep { m: u32 },
    /// Basis `{f+, f-}`.
    NaturalC2,
    /// Adjoint representation, basis `{X, H, Y}`.
    AdjointC3,
    /// Highest weight `mu`, basis `Y^p v` for `p = 0..=n`.
    TruncatedHighestWeight { mu: ExactScalar, n: usize },
    /// Lowest weight `lambda + 1`, basis `v_j = X^j v_0` for `j = 0..=n`.
    TruncatedLowestWeight { lambda: ExactScalar, n: usize },
    Tensor(Box<ModuleKind>, Box<ModuleKind>),
    /// One-dimensional module of the Cartan subalgebra `CH` with `H = nu`.
    Character { nu: ExactScalar },
}

impl fmt::Display for ModuleKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModuleKind::FiniteIrrep { m } => write!(f, "V_{m}"),
            ModuleKind::NaturalC2 => write!(f, "C2"),
            ModuleKind::AdjointC3 => write!(f, "C3"),
            ModuleKind::TruncatedHighestWeight { mu, n } => write!(f, "M({mu})[..{n}]"),
            ModuleKind::TruncatedLowestWeight { lambda, n } => write!(f, "Pi_{lambda}[..{n}]"),
            ModuleKind::Tensor(a, b) => write!(f, "({a} (x) {b})"),
            ModuleKind::Character { nu } => write!(f, "C_{nu}"),
        }
    }
}

/// Sentinel headroom of basis vectors in exact (untruncated) modules.
pub const UNBOUNDED: usize = usize::MAX;

#[derive(Debug)]
struct Inner {
    kind: ModuleKind,
    h: ExactMatrix,
    x: ExactMatrix,
    y: ExactMatrix,
    weights: Vec<ExactScalar>,
    headroom: Vec<usize>,
    boundary_margin: usize,
}

/// Finite weight module: three exact matrices for `H, X, Y` in a weight basis.
///
/// Truncated models are finite windows of infinite modules. Each basis vector
/// carries a *headroom*: how many generator applications towards the cut stay
/// exact. An operator that is a polynomial of degree `d` in the Casimir
/// element (or a word with at most `d` steps towards the cut) is exact on the
/// columns whose headroom is at least `d`.
#[derive(Clone, Debug)]
pub struct WeightModule(Arc<Inner>);

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Generator {
    H,
    X,
    Y,
}

impl Generator {
    pub const ALL: [Generator; 3] = [Generator::H, Generator::X, Generator::Y];
}

impl WeightModule {
    fn build(
        kind: ModuleKind,
        h: ExactMatrix,
        x: ExactMatrix,
        y: ExactMatrix,
        headroom: Vec<usize>,
        boundary_margin: usize,
    ) -> Self {
        debug_assert!(h.is_diagonal());
        let weights = (0..h.rows()).map(|i| h.get(i, i).clone()).collect();
        WeightModule(Arc::new(Inner {
            kind,
            h,
            x,
            y,
            weights,
            headroom,
            boundary_margin,
        }))
    }

    /// `V_m = Pol_m[z]` with `H = m - 2z d/dz`, `X = -d/dz`, `Y = -mz + z^2 d/dz`.
    pub fn finite_irrep(m: i64) -> Result<Self, Sl2Error> {
        if m < 0 {
            return Err(Sl2Error::NegativeHighestWeight(m));
        }
        let dim = m as usize + 1;
        let h = ExactMatrix::diagonal(&(0..dim).map(|i| int(m - 2 * i as i64)).collect::<Vec<_>>());
        let mut x = ExactMatrix::zeros(dim, dim);
        let mut y = ExactMatrix::zeros(dim, dim);
        for i in 0..dim {
            if i > 0 {
                x.set(i - 1, i, int(-(i as i64)));
            }
            if i + 1 < dim {
                y.set(i + 1, i, int(i as i64 - m));
            }
        }
        Ok(Self::build(
            ModuleKind::FiniteIrrep { m: m as u32 },
            h,
            x,
            y,
            vec![UNBOUNDED; dim],
            0,
        ))
    }

    /// `C^2` on `{f+, f-}`: `H f± = ±f±`, `X f- = f+`, `Y f+ = f-`.
    pub fn natural_c2() -> Self {
        let h = ExactMatrix::from_i64(&[&[1, 0], &[0, -1]]).unwrap();
        let x = ExactMatrix::from_i64(&[&[0, 1], &[0, 0]]).unwrap();
        let y = ExactMatrix::from_i64(&[&[0, 0], &[1, 0]]).unwrap();
        Self::build(ModuleKind::NaturalC2, h, x, y, vec![UNBOUNDED; 2], 0)
    }

    /// Adjoint module on `{X, H, Y}` with the bracket action.
    pub fn adjoint_c3() -> Self {
        let h = ExactMatrix::from_i64(&[&[2, 0, 0], &[0, 0, 0], &[0, 0, -2]]).unwrap();
        // ad X: H -> -2X, Y -> H
        let x = ExactMatrix::from_i64(&[&[0, -2, 0], &[0, 0, 1], &[0, 0, 0]]).unwrap();
        // ad Y: X -> -H, H -> 2Y
        let y = ExactMatrix::from_i64(&[&[0, 0, 0], &[-1, 0, 0], &[0, 2, 0]]).unwrap();
        Self::build(ModuleKind::AdjointC3, h, x, y, vec![UNBOUNDED; 3], 0)
    }

    /// Window `v_0..v_n` of the lowest-weight module with infinitesimal
    /// character `lambda`: `H v_j = (lambda+1+2j) v_j`, `X v_j = v_{j+1}`,
    /// `Y v_j = -j(lambda+j) v_{j-1}`.
    pub fn truncated_lowest_weight(lambda: &ExactScalar, n: usize) -> Result<Self, Sl2Error> {
        if n < 4 {
            return Err(Sl2Error::TruncationTooShort(n));
        }
        let dim = n + 1;
        let one = ExactScalar::one();
        let h = ExactMatrix::diagonal(
            &(0..dim)
                .map(|j| lambda + &one + int(2 * j as i64))
                .collect::<Vec<_>>(),
        );
        let mut x = ExactMatrix::zeros(dim, dim);
        let mut y = ExactMatrix::zeros(dim, dim);
        for j in 0..dim {
            if j + 1 < dim {
                x.set(j + 1, j, one.clone());
            }
            if j > 0 {
                let jj = int(j as i64);
                y.set(j - 1, j, -(&jj * (lambda + &jj)));
            }
        }
        Ok(Self::build(
            ModuleKind::TruncatedLowestWeight { lambda: lambda.clone(), n },
            h,
            x,
            y,
            (0..dim).map(|j| n - j).collect(),
            1,
        ))
    }

    /// Window `Y^p v`, `p = 0..=n`, of the Verma module `M(mu)`:
    /// `H Y^p v = (mu-2p) Y^p v`, `Y` shifts `p` up, `X Y^p v = p(mu-p+1) Y^{p-1} v`.
    pub fn truncated_highest_weight(mu: &ExactScalar, n: usize) -> Result<Self, Sl2Error> {
        if n < 4 {
            return Err(Sl2Error::TruncationTooShort(n));
        }
        let dim = n + 1;
        let h = ExactMatrix::diagonal(&(0..dim).map(|p| mu - int(2 * p as i64)).collect::<Vec<_>>());
        let mut x = ExactMatrix::zeros(dim, dim);
        let mut y = ExactMatrix::zeros(dim, dim);
        for p in 0..dim {
            if p + 1 < dim {
                y.set(p + 1, p, ExactScalar::one());
            }
            if p > 0 {
                let pp = int(p as i64);
                x.set(p - 1, p, &pp * (mu - &pp + ExactScalar::one()));
            }
        }
        Ok(Self::build(
            ModuleKind::TruncatedHighestWeight { mu: mu.clone(), n },
            h,
            x,
            y,
            (0..dim).map(|p| n - p).collect(),
            1,
        ))
    }

    /// One-dimensional `CH`-module `C_nu` (the target of weight functionals).
    pub fn character(nu: &ExactScalar) -> Self {
        Self::build(
            ModuleKind::Character { nu: nu.clone() },
            ExactMatrix::diagonal(std::slice::from_ref(nu)),
            ExactMatrix::zeros(1, 1),
            ExactMatrix::zeros(1, 1),
            vec![UNBOUNDED],
            0,
        )
    }

    /// `A (x) B` with `Z` acting by `Z (x) 1 + 1 (x) Z`; basis index of `a (x) b`
    /// is `a * dim(B) + b`.
    pub fn tensor(a: &WeightModule, b: &WeightModule) -> Self {
        let ia = ExactMatrix::identity(a.dim());
        let ib = ExactMatrix::identity(b.dim());
        let lift = |ma: &ExactMatrix, mb: &ExactMatrix| &ma.kron(&ib) + &ia.kron(mb);
        let headroom = (0..a.dim())
            .flat_map(|i| (0..b.dim()).map(move |j| (i, j)))
            .map(|(i, j)| a.headroom(i).min(b.headroom(j)))
            .collect();
        Self::build(
            ModuleKind::Tensor(Box::new(a.kind().clone()), Box::new(b.kind().clone())),
            lift(a.h(), b.h()),
            lift(a.x(), b.x()),
            lift(a.y(), b.y()),
            headroom,
            a.boundary_margin().max(b.boundary_margin()),
        )
    }

    pub fn kind(&self) -> &ModuleKind {
        &self.0.kind
    }

    pub fn dim(&self) -> usize {
        self.0.weights.len()
    }

    pub fn h(&self) -> &ExactMatrix {
        &self.0.h
    }

    pub fn x(&self) -> &ExactMatrix {
        &self.0.x
    }

    pub fn y(&self) -> &ExactMatrix {
        &self.0.y
    }

    pub fn generator(&self, g: Generator) -> &ExactMatrix {
        match g {
            Generator::H => self.h(),
            Generator::X => self.x(),
            Generator::Y => self.y(),
        }
    }

    pub fn weights(&self) -> &[ExactScalar] {
        &self.0.weights
    }

    pub fn weight(&self, i: usize) -> &ExactScalar {
        &self.0.weights[i]
    }

    pub fn headroom(&self, i: usize) -> usize {
        self.0.headroom[i]
    }

    pub fn boundary_margin(&self) -> usize {
        self.0.boundary_margin
    }

    pub fn is_exact(&self) -> bool {
        self.0.headroom.iter().all(|&h| h == UNBOUNDED)
    }

    /// Columns on which operators of degree `degree` are exact.
    pub fn interior(&self, degree: usize) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.headroom(i) >= degree).collect()
    }

    /// Basis indices of the given weight.
    pub fn weight_space(&self, weight: &ExactScalar) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.weight(i) == weight).collect()
    }

    /// `Omega = H^2 + 2(XY + YX)`.
    pub fn casimir(&self) -> ExactMatrix {
        let h2 = self.h() * self.h();
        let xy = self.x() * self.y();
        let yx = self.y() * self.x();
        &h2 + &(&xy + &yx).scale(&int(2))
    }

    /// Exact check of `[H,X] = 2X`, `[H,Y] = -2Y`, `[X,Y] = H` on interior columns.
    pub fn satisfies_brackets(&self) -> bool {
        let cols = self.interior(1);
        let two = int(2);
        let hx = self.h().commutator(self.x()).unwrap();
        let hy = self.h().commutator(self.y()).unwrap();
        let xy = self.x().commutator(self.y()).unwrap();
        hx.agrees_on_columns(&self.x().scale(&two), &cols)
            && hy.agrees_on_columns(&self.y().scale(&-two), &cols)
            && xy.agrees_on_columns(self.h(), &cols)
    }

    /// If the Casimir element acts on the interior by one scalar, that scalar.
    pub fn casimir_scalar(&self) -> Option<ExactScalar> {
        let omega = self.casimir();
        let cols = self.interior(1);
        let first = cols.first()?;
        let s = omega.get(*first, *first).clone();
        let expected = ExactMatrix::scalar(self.dim(), &s);
        omega.agrees_on_columns(&expected, &cols).then_some(s)
    }
}

/// Harish-Chandra parameter `lambda` (defined up to sign); Casimir acts by `lambda^2 - 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct InfinitesimalCharacter {
    value: ComplexExact,
}

impl InfinitesimalCharacter {
    /// Canonical representative: `(Re, Im)` lexicographically at least that of `-lambda`.
    pub fn new(lambda: ComplexExact) -> Self {
        let neg = -&lambda;
        let value = if (&lambda.re, &lambda.im) >= (&neg.re, &neg.im) {
            lambda
        } else {
            neg
        };
        InfinitesimalCharacter { value }
    }

    pub fn value(&self) -> &ComplexExact {
        &self.value
    }

    pub fn casimir_scalar(&self) -> ComplexExact {
        &(&self.value * &self.value) - &ComplexExact::one()
    }

    pub fn is_singular(&self) -> bool {
        self.value.is_zero()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::frac;

    #[test]
    fn finite_irreps_have_scalar_casimir() {
        for m in 0..6 {
            let v = WeightModule::finite_irrep(m).unwrap();
            assert!(v.satisfies_brackets());
            let l = int(m + 1);
            assert_eq!(v.casimir(), ExactMatrix::scalar(v.dim(), &(&l * &l - int(1))));
        }
        let v0 = WeightModule::finite_irrep(0).unwrap();
        assert!(v0.h().is_zero() && v0.x().is_zero() && v0.y().is_zero());
        assert_eq!(WeightModule::finite_irrep(2).unwrap().weights(), &[int(2), int(0), int(-2)]);
        assert!(WeightModule::finite_irrep(-1).is_err());
    }

    #[test]
    fn natural_c2_matches_v1_under_sign_twist() {
        let c2 = WeightModule::natural_c2();
        assert!(c2.satisfies_brackets());
        assert_eq!(c2.casimir_scalar(), Some(int(3)));
        let v1 = WeightModule::finite_irrep(1).unwrap();
        // f+ -> 1, f- -> -z
        let phi = ExactMatrix::from_i64(&[&[1, 0], &[0, -1]]).unwrap();
        for g in Generator::ALL {
            assert_eq!(&phi * c2.generator(g), v1.generator(g) * &phi);
        }
    }

    #[test]
    fn adjoint_action() {
        let c3 = WeightModule::adjoint_c3();
        assert!(c3.satisfies_brackets());
        assert_eq!(c3.casimir(), ExactMatrix::scalar(3, &int(8)));
        // ad(X) Y = H
        assert_eq!(c3.x().apply(&[int(0), int(0), int(1)]), vec![int(0), int(1), int(0)]);
        assert_eq!(c3.weights(), &[int(2), int(0), int(-2)]);
    }

    #[test]
    fn truncated_models_obey_brackets_on_interior() {
        let lam = frac(5, 3);
        let lw = WeightModule::truncated_lowest_weight(&lam, 8).unwrap();
        assert!(lw.satisfies_brackets());
        assert_eq!(lw.casimir_scalar(), Some(&lam * &lam - int(1)));
        assert_eq!(lw.y().get(0, 1), &-(&lam + int(1)));
        assert_eq!(lw.boundary_margin(), 1);
        let hw = WeightModule::truncated_highest_weight(&lam, 8).unwrap();
        assert!(hw.satisfies_brackets());
        let shifted = &lam + int(1);
        assert_eq!(hw.casimir_scalar(), Some(&shifted * &shifted - int(1)));
        assert_eq!(hw.x().get(0, 1), &lam);
        assert!(WeightModule::truncated_highest_weight(&lam, 3).is_err());
    }

    #[test]
    fn tensor_weights_add_and_headroom_propagates() {
        let a = WeightModule::truncated_lowest_weight(&int(2), 5).unwrap();
        let b = WeightModule::natural_c2();
        let t = WeightModule::tensor(&a, &b);
        assert_eq!(t.dim(), 12);
        assert!(t.satisfies_brackets());
        assert_eq!(t.weight(3), &(a.weight(1) + b.weight(1)));
        assert_eq!(t.headroom(3), 4);
        assert_eq!(t.boundary_margin(), 1);
    }

    #[test]
    fn infinitesimal_character_canonical_sign() {
        let a = InfinitesimalCharacter::new(ComplexExact::from_int(-3));
        assert_eq!(a.value(), &ComplexExact::from_int(3));
        assert_eq!(a.casimir_scalar(), ComplexExact::from_int(8));
        let b = InfinitesimalCharacter::new(ComplexExact::new(int(0), int(-1)));
        assert_eq!(b.value(), &ComplexExact::new(int(0), int(1)));
    }
}
