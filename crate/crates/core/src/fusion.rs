//! Translation of fusion (tensor product) intertwiners through `C^2`: the
//! H-embedding, the four factor-wise projections, the antisymmetric projection
//! `C^2 (x) C^2 -> F'`, brute-force extraction of the scalars `c` and their
//! closed forms.

use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::exact::{format_scalar, frac, int, BivariatePolynomial, ComplexExact, ExactMatrix, ExactScalar, UnivariatePolynomial};
use crate::rankin_cohen::{rc_operator, RankinCohenError};
use crate::sign::Sign;
use crate::sl2::{primary_projection, tensor_casimir_block, spectral_projector, Intertwiner, Sl2Error, Symmetry, WeightModule};

#[derive(Debug, thiserror::Error, Clone, PartialEq)]
pub enum FusionError {
    #[error("infinitesimal characters of the two factors must be nonzero")]
    SingularLambda,
    #[error("no probe has a nonzero image under the intertwiner")]
    NoNormalisingProbe,
    #[error("probe ({i}, {j}) gives a scalar inconsistent with the default probe")]
    InconsistentProbe { i: usize, j: usize },
    #[error("the lowest-weight vector space of the target weight has dimension {0}, expected 1")]
    NoIntertwiner(usize),
    #[error("degree of {which} exceeds {bound}")]
    DegreeTooHigh { which: &'static str, bound: u32 },
    #[error(transparent)]
    RankinCohen(#[from] RankinCohenError),
    #[error(transparent)]
    Module(#[from] Sl2Error),
}

/// `g_{delta epsilon}(m, n; k)`.
pub fn g_function(m: i64, n: i64, k: i64, delta: Sign, epsilon: Sign) -> ExactScalar {
    let v = match (delta, epsilon) {
        (Sign::Plus, Sign::Plus) => (m + n - k + 2) * (m + n + k + 4),
        (Sign::Plus, Sign::Minus) => (n - m + k) * (m - n + k + 2),
        (Sign::Minus, Sign::Plus) => (m - n + k) * (n - m + k + 2),
        (Sign::Minus, Sign::Minus) => (m + n - k) * (m + n + k + 2),
    };
    int(v)
}

/// `g_{delta epsilon}(l1-1, l2-1; l3-1) / (8 l1 l2)` on integer parameters.
pub fn g_form_scalar(l1: i64, l2: i64, l3: i64, delta: Sign, epsilon: Sign) -> Result<ExactScalar, FusionError> {
    if l1 == 0 || l2 == 0 {
        return Err(FusionError::SingularLambda);
    }
    Ok(g_function(l1 - 1, l2 - 1, l3 - 1, delta, epsilon) / int(8 * l1 * l2))
}

/// `(d l1 + e l2 + 1 + l3)(d l1 + e l2 + 1 - l3) / (8 l1 l2)`.
pub fn c_closed_form(
    l1: &ComplexExact,
    l2: &ComplexExact,
    l3: &ComplexExact,
    delta: Sign,
    epsilon: Sign,
) -> Result<ComplexExact, FusionError> {
    if l1.is_zero() || l2.is_zero() {
        return Err(FusionError::SingularLambda);
    }
    let base = &(&l1.scale(&delta.scalar()) + &l2.scale(&epsilon.scalar())) + &ComplexExact::one();
    let num = &(&base + l3) * &(&base - l3);
    let den = (l1 * l2).scale(&int(8));
    Ok(num.checked_div(&den).expect("nonzero denominator"))
}

/// Weight `+1` vector `e_+` is index 0 of `C^2`, `e_-` is index 1.
fn c2_index(s: Sign) -> usize {
    match s {
        Sign::Plus => 0,
        Sign::Minus => 1,
    }
}

/// Coefficient of `e_+ (x) f_- - e_- (x) f_+` in the antisymmetric part of `e_s (x) f_t`.
pub fn antisym_coefficient(s: usize, t: usize) -> ExactScalar {
    match (s, t) {
        (0, 1) => frac(1, 2),
        (1, 0) => frac(-1, 2),
        _ => ExactScalar::zero(),
    }
}

/// `C^2 (x) C^2 -> C^2 (x) C^2`, `(a e_+ + b e_-) (x) (c f_+ + d f_-) |-> (ad - bc)/2 (e_+ (x) f_- - e_- (x) f_+)`.
pub fn antisym_projection() -> Intertwiner {
    let c2 = WeightModule::natural_c2();
    let space = WeightModule::tensor(&c2, &c2);
    let singlet = [ExactScalar::zero(), int(1), int(-1), ExactScalar::zero()];
    let matrix = ExactMatrix::from_fn(4, 4, |r, c| &singlet[r] * &antisym_coefficient(c / 2, c % 2));
    Intertwiner::checked(space.clone(), space, matrix, Symmetry::Sl2, 0).expect("square")
}

/// `(u (x) e_+) (x) (v (x) f_-) - (u (x) e_-) (x) (v (x) f_+)` in `(M' (x) C^2) (x) (M'' (x) C^2)`,
/// index `((i 2 + s) (2 d'') + (j 2 + t))`.
pub fn h_embed(u: &[ExactScalar], v: &[ExactScalar]) -> Vec<ExactScalar> {
    let (d1, d2) = (u.len(), v.len());
    let reorder = FactorReorder::new(d1, d2);
    let mut out = vec![ExactScalar::zero(); 4 * d1 * d2];
    for (i, a) in u.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
        for (j, b) in v.iter().enumerate().filter(|(_, b)| !b.is_zero()) {
            let ab = a * b;
            out[reorder.source_index(i, 0, j, 1)] += &ab;
            out[reorder.source_index(i, 1, j, 0)] -= &ab;
        }
    }
    out
}

/// Basis permutation `(M' (x) C^2) (x) (M'' (x) C^2) -> (M' (x) M'') (x) (C^2 (x) C^2)`,
/// `(i, s, j, t)` from index `(i 2 + s)(2 d'') + (j 2 + t)` to `(i d'' + j) 4 + (s 2 + t)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FactorReorder {
    d1: usize,
    d2: usize,
}

impl FactorReorder {
    pub fn new(d1: usize, d2: usize) -> Self {
        FactorReorder { d1, d2 }
    }

    pub fn source_index(&self, i: usize, s: usize, j: usize, t: usize) -> usize {
        (i * 2 + s) * (2 * self.d2) + (j * 2 + t)
    }

    pub fn target_index(&self, i: usize, s: usize, j: usize, t: usize) -> usize {
        (i * self.d2 + j) * 4 + (s * 2 + t)
    }

    /// `(i, s, j, t)` of a source index.
    pub fn split_source(&self, idx: usize) -> (usize, usize, usize, usize) {
        let (a, b) = (idx / (2 * self.d2), idx % (2 * self.d2));
        (a / 2, a % 2, b / 2, b % 2)
    }

    /// `map[source] = target`.
    pub fn index_map(&self) -> Vec<usize> {
        (0..4 * self.d1 * self.d2)
            .map(|idx| {
                let (i, s, j, t) = self.split_source(idx);
                self.target_index(i, s, j, t)
            })
            .collect()
    }

    pub fn apply(&self, v: &[ExactScalar]) -> Vec<ExactScalar> {
        let mut out = vec![ExactScalar::zero(); v.len()];
        for (src, dst) in self.index_map().into_iter().enumerate() {
            out[dst] = v[src].clone();
        }
        out
    }
}

fn sign_slot(s: Sign) -> usize {
    c2_index(s)
}

/// The factor-wise projections `pr_delta` on `M' (x) C^2` and `pr_epsilon` on `M'' (x) C^2`
/// plus the contraction to `M' (x) M''`.
#[derive(Clone, Debug)]
pub struct FusionPipeline {
    first: WeightModule,
    second: WeightModule,
    proj_first: [Intertwiner; 2],
    proj_second: [Intertwiner; 2],
    reorder: FactorReorder,
}

fn factor_projections(m: &WeightModule, lambda: &ExactScalar) -> Result<[Intertwiner; 2], FusionError> {
    let space = WeightModule::tensor(m, &WeightModule::natural_c2());
    let node = |d: i64| {
        let x = lambda + int(d);
        &x * &x - int(1)
    };
    let spectrum = [node(1), node(-1)];
    Ok([
        primary_projection(&space, &spectrum, &spectrum[0])?,
        primary_projection(&space, &spectrum, &spectrum[1])?,
    ])
}

impl FusionPipeline {
    /// `lambda1`, `lambda2` are the infinitesimal characters of the factors.
    pub fn new(
        first: &WeightModule,
        second: &WeightModule,
        lambda1: &ExactScalar,
        lambda2: &ExactScalar,
    ) -> Result<Self, FusionError> {
        if lambda1.is_zero() || lambda2.is_zero() {
            return Err(FusionError::SingularLambda);
        }
        Ok(FusionPipeline {
            proj_first: factor_projections(first, lambda1)?,
            proj_second: factor_projections(second, lambda2)?,
            reorder: FactorReorder::new(first.dim(), second.dim()),
            first: first.clone(),
            second: second.clone(),
        })
    }

    pub fn first(&self) -> &WeightModule {
        &self.first
    }

    pub fn second(&self) -> &WeightModule {
        &self.second
    }

    pub fn reorder(&self) -> FactorReorder {
        self.reorder
    }

    pub fn factor_projection_first(&self, delta: Sign) -> &Intertwiner {
        &self.proj_first[sign_slot(delta)]
    }

    pub fn factor_projection_second(&self, epsilon: Sign) -> &Intertwiner {
        &self.proj_second[sign_slot(epsilon)]
    }

    /// `pr_delta (x) pr_epsilon` as one intertwiner on the full fourfold tensor product.
    pub fn pr_delta_eps(&self, delta: Sign, epsilon: Sign) -> Result<Intertwiner, FusionError> {
        let a = self.factor_projection_first(delta);
        let b = self.factor_projection_second(epsilon);
        let space = WeightModule::tensor(a.source(), b.source());
        let matrix = a.matrix().kron(b.matrix());
        Ok(Intertwiner::checked(space.clone(), space, matrix, Symmetry::Sl2, 1)?)
    }

    /// `pr_{delta epsilon}(H(u, v))`, computed one factor at a time.
    pub fn projected_h(&self, delta: Sign, epsilon: Sign, u: &[ExactScalar], v: &[ExactScalar]) -> Vec<ExactScalar> {
        let pa = self.factor_projection_first(delta);
        let pb = self.factor_projection_second(epsilon);
        let lift = |w: &[ExactScalar], s: usize| {
            let mut out = vec![ExactScalar::zero(); 2 * w.len()];
            for (i, x) in w.iter().enumerate() {
                out[2 * i + s] = x.clone();
            }
            out
        };
        let a_plus = pa.apply(&lift(u, 0));
        let a_minus = pa.apply(&lift(u, 1));
        let b_plus = pb.apply(&lift(v, 0));
        let b_minus = pb.apply(&lift(v, 1));
        let db = b_plus.len();
        let mut out = vec![ExactScalar::zero(); a_plus.len() * db];
        let mut accumulate = |x: &[ExactScalar], y: &[ExactScalar], negate: bool| {
            for (i, a) in x.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
                for (j, b) in y.iter().enumerate().filter(|(_, b)| !b.is_zero()) {
                    let ab = a * b;
                    if negate {
                        out[i * db + j] -= ab;
                    } else {
                        out[i * db + j] += ab;
                    }
                }
            }
        };
        accumulate(&a_plus, &b_minus, false);
        accumulate(&a_minus, &b_plus, true);
        out
    }

    /// Reorders to `(M' (x) M'') (x) (C^2 (x) C^2)` and applies the antisymmetric projection
    /// on the second factor; the result is the coefficient vector on `M' (x) M''` of the
    /// `F'` component.
    pub fn contract(&self, w: &[ExactScalar]) -> Vec<ExactScalar> {
        let reordered = self.reorder.apply(w);
        let n = self.first.dim() * self.second.dim();
        (0..n)
            .map(|p| {
                let mut acc = ExactScalar::zero();
                for st in 0..4 {
                    let x = &reordered[p * 4 + st];
                    if !x.is_zero() {
                        acc += x * antisym_coefficient(st / 2, st % 2);
                    }
                }
                acc
            })
            .collect()
    }

    /// `(id (x) pr_{F -> F'}) o pr_{delta epsilon} (H(u, v))` as a vector on `M' (x) M''`.
    pub fn evaluate(&self, delta: Sign, epsilon: Sign, u: &[ExactScalar], v: &[ExactScalar]) -> Vec<ExactScalar> {
        self.contract(&self.projected_h(delta, epsilon, u, v))
    }

    pub fn basis_first(&self, i: usize) -> Vec<ExactScalar> {
        unit(self.first.dim(), i)
    }

    pub fn basis_second(&self, j: usize) -> Vec<ExactScalar> {
        unit(self.second.dim(), j)
    }
}

fn unit(n: usize, i: usize) -> Vec<ExactScalar> {
    let mut v = vec![ExactScalar::zero(); n];
    v[i] = ExactScalar::one();
    v
}

fn scalar_ratio(lhs: &[ExactScalar], rhs: &[ExactScalar]) -> Option<ExactScalar> {
    let k = rhs.iter().position(|x| !x.is_zero())?;
    let c = &lhs[k] / &rhs[k];
    lhs.iter().zip(rhs).all(|(a, b)| a == &(&c * b)).then_some(c)
}

/// Result of extracting `c` from `(T (x) pr) o pr_{delta epsilon}(H(u, v)) = c T(u (x) v)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScalarExtraction {
    pub c: ExactScalar,
    pub probe: (usize, usize),
    /// Probes checked, including those with `T(u (x) v) = 0`.
    pub probes: usize,
    /// Probes with `T(u (x) v) != 0`.
    pub normalising: usize,
}

/// Extracts `c` at `default_probe` (or the first probe with nonzero image) and checks
/// every probe in `probes` against it.
pub fn extract_scalar<T>(
    pipeline: &FusionPipeline,
    delta: Sign,
    epsilon: Sign,
    t: T,
    probes: &[(usize, usize)],
    default_probe: (usize, usize),
) -> Result<ScalarExtraction, FusionError>
where
    T: Fn(&[ExactScalar]) -> Vec<ExactScalar>,
{
    let d2 = pipeline.second.dim();
    let data = |(i, j): (usize, usize)| {
        let lhs = t(&pipeline.evaluate(delta, epsilon, &pipeline.basis_first(i), &pipeline.basis_second(j)));
        let rhs = t(&unit(pipeline.first.dim() * d2, i * d2 + j));
        (lhs, rhs)
    };
    let order = std::iter::once(default_probe).chain(probes.iter().copied().filter(|p| *p != default_probe));
    let mut found: Option<(ExactScalar, (usize, usize))> = None;
    let mut pending = Vec::new();
    let mut normalising = 0;
    let mut count = 0;
    for probe in order {
        count += 1;
        let (lhs, rhs) = data(probe);
        if rhs.iter().any(|x| !x.is_zero()) {
            normalising += 1;
        }
        match &found {
            None => {
                if rhs.iter().all(|x| x.is_zero()) {
                    pending.push((probe, lhs, rhs));
                    continue;
                }
                let c = scalar_ratio(&lhs, &rhs).ok_or(FusionError::InconsistentProbe { i: probe.0, j: probe.1 })?;
                found = Some((c, probe));
            }
            Some((c, _)) => {
                if lhs.iter().zip(&rhs).any(|(a, b)| a != &(c * b)) {
                    return Err(FusionError::InconsistentProbe { i: probe.0, j: probe.1 });
                }
            }
        }
    }
    let (c, probe) = found.ok_or(FusionError::NoNormalisingProbe)?;
    for (p, lhs, _) in pending {
        if lhs.iter().any(|x| !x.is_zero()) {
            return Err(FusionError::InconsistentProbe { i: p.0, j: p.1 });
        }
    }
    Ok(ScalarExtraction {
        c,
        probe,
        probes: count,
        normalising,
    })
}

/// Pipeline for `V_m`, `V_n` with `lambda' = m+1`, `lambda'' = n+1`.
pub fn rc_pipeline(m: u32, n: u32) -> Result<FusionPipeline, FusionError> {
    FusionPipeline::new(
        &WeightModule::finite_irrep(m as i64)?,
        &WeightModule::finite_irrep(n as i64)?,
        &int(m as i64 + 1),
        &int(n as i64 + 1),
    )
}

fn all_probes(d1: usize, d2: usize) -> Vec<(usize, usize)> {
    (0..d1).flat_map(|i| (0..d2).map(move |j| (i, j))).collect()
}

/// `c_{delta epsilon}` for `T = R_{m,n}^k`, `k = m+n-2l`, from the probe `z^l (x) 1`,
/// checked against every monomial probe.
pub fn c_bruteforce_with(
    pipeline: &FusionPipeline,
    m: u32,
    n: u32,
    l: u32,
    delta: Sign,
    epsilon: Sign,
) -> Result<ScalarExtraction, FusionError> {
    let r = rc_operator(m, n, l)?;
    let probes = all_probes(m as usize + 1, n as usize + 1);
    extract_scalar(pipeline, delta, epsilon, |w| r.matrix().apply(w), &probes, (l as usize, 0))
}

pub fn c_bruteforce(m: u32, n: u32, l: u32, delta: Sign, epsilon: Sign) -> Result<ExactScalar, FusionError> {
    let pipeline = rc_pipeline(m, n)?;
    Ok(c_bruteforce_with(&pipeline, m, n, l, delta, epsilon)?.c)
}

/// Closed-form expansion of `2(m+1)(n+1) (id (x) pr) o pr_{delta epsilon}(H(F, G))`
/// with `F = F(z)`, `G = G(w)`, `F' = dF/dz`, `G' = dG/dw`.
pub fn bilinear_expansion(
    delta: Sign,
    epsilon: Sign,
    f: &UnivariatePolynomial,
    g: &UnivariatePolynomial,
    m: u32,
    n: u32,
) -> Result<BivariatePolynomial, FusionError> {
    if f.degree().is_some_and(|d| d > m) {
        return Err(FusionError::DegreeTooHigh { which: "F", bound: m });
    }
    if g.degree().is_some_and(|d| d > n) {
        return Err(FusionError::DegreeTooHigh { which: "G", bound: n });
    }
    let bf = BivariatePolynomial::in_z(f);
    let bg = BivariatePolynomial::in_w(g);
    let df = BivariatePolynomial::in_z(&f.derivative());
    let dg = BivariatePolynomial::in_w(&g.derivative());
    let zw = &BivariatePolynomial::z() - &BivariatePolynomial::w();
    let zw2 = &zw * &zw;
    let (mi, ni) = (m as i64, n as i64);
    let c = |x: i64| BivariatePolynomial::constant(int(x));
    let fg = &bf * &bg;
    let fdg = &bf * &dg;
    let dfg = &df * &bg;
    let dfdg = &df * &dg;
    Ok(match (delta, epsilon) {
        (Sign::Plus, Sign::Plus) => {
            &(&(&zw2 * &dfdg) + &(&zw * &(&(&c(-mi) * &fdg) + &(&c(ni) * &dfg)))) + &(&c(mi + ni + 2) * &fg)
        }
        (Sign::Plus, Sign::Minus) => {
            &(&(&(-&zw2) * &dfdg) + &(&zw * &(&(&c(mi) * &fdg) - &(&c(ni) * &dfg)))) + &(&c((mi + 1) * ni) * &fg)
        }
        (Sign::Minus, Sign::Plus) => {
            &(&(&(-&zw2) * &dfdg) + &(&zw * &(&(&c(mi) * &fdg) - &(&c(ni) * &dfg)))) + &(&c(mi * (ni + 1)) * &fg)
        }
        (Sign::Minus, Sign::Minus) => {
            let wz = -&zw;
            &(&(&wz * &wz) * &dfdg) + &(&wz * &(&(&c(-ni) * &dfg) + &(&c(mi) * &fdg)))
        }
    })
}

/// `2(m+1)(n+1) (id (x) pr) o pr_{delta epsilon}(H(F, G))` computed by the matrix pipeline,
/// read back as a polynomial in `z`, `w`.
pub fn pipeline_polynomial(
    pipeline: &FusionPipeline,
    delta: Sign,
    epsilon: Sign,
    f: &UnivariatePolynomial,
    g: &UnivariatePolynomial,
) -> BivariatePolynomial {
    let (d1, d2) = (pipeline.first.dim(), pipeline.second.dim());
    let out = pipeline.evaluate(delta, epsilon, &f.to_dense(d1), &g.to_dense(d2));
    let scale = int(2 * d1 as i64 * d2 as i64);
    let mut p = BivariatePolynomial::zero();
    for (idx, x) in out.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
        p.add_term((idx / d2) as u32, (idx % d2) as u32, &scale * x);
    }
    p
}

/// Per level `j`: weight-space basis pairs, projector and `X^j s`.
type LevelBlock = (Vec<(usize, usize)>, ExactMatrix, Vec<ExactScalar>);

/// Projection `Pi_{l1} (x) Pi_{l2} -> Pi_{l3}` between truncated lowest-weight models:
/// the Casimir projection on each weight space onto `l3^2 - 1`, read in the basis
/// `X^j s` where `s` spans the lowest-weight vectors of weight `l3 + 1`.
#[derive(Clone, Debug)]
pub struct LowestWeightFusionMap {
    first: WeightModule,
    second: WeightModule,
    lambda1: i64,
    lambda2: i64,
    lambda3: i64,
    levels: usize,
    blocks: Vec<LevelBlock>,
}

impl LowestWeightFusionMap {
    /// Builds the map on levels `0..levels`; the truncation `n` must leave room for
    /// the Casimir on every level used.
    pub fn new(lambda1: i64, lambda2: i64, lambda3: i64, n: usize, levels: usize) -> Result<Self, FusionError> {
        let first = WeightModule::truncated_lowest_weight(&int(lambda1), n)?;
        let second = WeightModule::truncated_lowest_weight(&int(lambda2), n)?;
        let kernel = crate::verma::fusion_lw_kernel(lambda1, lambda2, lambda3);
        if kernel.len() != 1 {
            return Err(FusionError::NoIntertwiner(kernel.len()));
        }
        let base = (lambda3 - lambda1 - lambda2 - 1) / 2;
        let pairs_at = |d: i64| -> Vec<(usize, usize)> { (0..=d as usize).map(|a| (a, d as usize - a)).collect() };
        let mut s: Vec<ExactScalar> = kernel.into_iter().next().unwrap();
        let mut blocks = Vec::new();
        for j in 0..levels {
            let d = base + j as i64;
            let basis = pairs_at(d);
            let omega = tensor_casimir_block(&first, &second, &basis);
            let nodes: Vec<ExactScalar> = (0..=d).map(|e| int((lambda1 + lambda2 + 1 + 2 * e).pow(2) - 1)).collect();
            let proj = spectral_projector(&omega, &nodes, &int(lambda3 * lambda3 - 1));
            blocks.push((basis.clone(), proj, s.clone()));
            // raise s to the next level: X acts by X (x) 1 + 1 (x) X
            let next = pairs_at(d + 1);
            let mut raised = vec![ExactScalar::zero(); next.len()];
            for (c, &(a, b)) in basis.iter().enumerate() {
                if s[c].is_zero() {
                    continue;
                }
                for (r, &(a2, b2)) in next.iter().enumerate() {
                    let mut x = ExactScalar::zero();
                    if b2 == b {
                        x += first.x().get(a2, a);
                    }
                    if a2 == a {
                        x += second.x().get(b2, b);
                    }
                    if !x.is_zero() {
                        raised[r] += &x * &s[c];
                    }
                }
            }
            s = raised;
        }
        Ok(LowestWeightFusionMap {
            first,
            second,
            lambda1,
            lambda2,
            lambda3,
            levels,
            blocks,
        })
    }

    pub fn first(&self) -> &WeightModule {
        &self.first
    }

    pub fn second(&self) -> &WeightModule {
        &self.second
    }

    pub fn parameters(&self) -> (i64, i64, i64) {
        (self.lambda1, self.lambda2, self.lambda3)
    }

    pub fn levels(&self) -> usize {
        self.levels
    }

    /// Image in the first `levels` coordinates of `Pi_{l3}`. Panics if the projected
    /// vector on some level is not a multiple of `X^j s`.
    pub fn apply(&self, w: &[ExactScalar]) -> Vec<ExactScalar> {
        let d2 = self.second.dim();
        self.blocks
            .iter()
            .map(|(basis, proj, s)| {
                let local: Vec<ExactScalar> = basis.iter().map(|&(a, b)| w[a * d2 + b].clone()).collect();
                let projected = proj.apply(&local);
                if projected.iter().all(|x| x.is_zero()) {
                    return ExactScalar::zero();
                }
                scalar_ratio(&projected, s).expect("projection lands in the span of X^j s")
            })
            .collect()
    }
}

/// One `(delta, epsilon)` row of a fusion translation check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FusionTranslationRow {
    pub delta: Sign,
    pub epsilon: Sign,
    #[serde(serialize_with = "crate::report::serialize_scalar")]
    pub pipeline: ExactScalar,
    #[serde(serialize_with = "crate::report::serialize_scalar")]
    pub g_form: ExactScalar,
    #[serde(serialize_with = "crate::report::serialize_scalar")]
    pub closed_form: ExactScalar,
    pub probes: usize,
}

impl FusionTranslationRow {
    pub fn matches_g_form(&self) -> bool {
        self.pipeline == self.g_form
    }

    pub fn matches_closed_form(&self) -> bool {
        self.pipeline == self.closed_form
    }

    pub fn matches_closed_form_up_to_sign(&self) -> bool {
        self.pipeline == self.closed_form || self.pipeline == -self.closed_form.clone()
    }
}

/// Runs the pipeline for all four `(delta, epsilon)` against the intertwiner `t`
/// and compares with both closed forms at `(l1, l2; l3)`.
pub fn verify_fusion_translation<T>(
    pipeline: &FusionPipeline,
    t: T,
    probes: &[(usize, usize)],
    default_probe: (usize, usize),
    lambdas: (i64, i64, i64),
) -> Result<Vec<FusionTranslationRow>, FusionError>
where
    T: Fn(&[ExactScalar]) -> Vec<ExactScalar>,
{
    let (l1, l2, l3) = lambdas;
    Sign::pairs()
        .into_iter()
        .map(|(delta, epsilon)| {
            let ex = extract_scalar(pipeline, delta, epsilon, &t, probes, default_probe)?;
            let closed = c_closed_form(&l1.into(), &l2.into(), &l3.into(), delta, epsilon)?;
            Ok(FusionTranslationRow {
                delta,
                epsilon,
                pipeline: ex.c,
                g_form: g_form_scalar(l1, l2, l3, delta, epsilon)?,
                closed_form: closed.re,
                probes: ex.probes,
            })
        })
        .collect()
}

/// Rows for `T = R_{m,n}^k` at `(m+1, n+1; k+1)`.
pub fn verify_rc_translation(m: u32, n: u32, l: u32) -> Result<Vec<FusionTranslationRow>, FusionError> {
    let pipeline = rc_pipeline(m, n)?;
    let r = rc_operator(m, n, l)?;
    let k = m + n - 2 * l;
    verify_fusion_translation(
        &pipeline,
        |w| r.matrix().apply(w),
        &all_probes(m as usize + 1, n as usize + 1),
        (l as usize, 0),
        (m as i64 + 1, n as i64 + 1, k as i64 + 1),
    )
}

/// Rows for the lowest-weight triple `(l1, l2, l3)` on truncation `n`, probing
/// `v_i (x) v_j` with `i + j < levels` and `i, j <= n - margin`.
pub fn verify_lw_translation(
    lambdas: (i64, i64, i64),
    n: usize,
    margin: usize,
    levels: usize,
) -> Result<Vec<FusionTranslationRow>, FusionError> {
    let (l1, l2, l3) = lambdas;
    let map = LowestWeightFusionMap::new(l1, l2, l3, n, levels)?;
    let pipeline = FusionPipeline::new(map.first(), map.second(), &int(l1), &int(l2))?;
    let probes: Vec<(usize, usize)> = all_probes(levels, levels)
        .into_iter()
        .filter(|&(i, j)| i + j < levels && i + margin <= n && j + margin <= n)
        .collect();
    verify_fusion_translation(&pipeline, |w| map.apply(w), &probes, (0, 0), lambdas)
}

/// Every `(m, n, l)` with `m, n <= max` and `l <= min(m, n)`, in lexicographic order.
pub fn rc_window(max: u32) -> Vec<(u32, u32, u32)> {
    let mut out = Vec::new();
    for m in 0..=max {
        for n in 0..=max {
            for l in 0..=m.min(n) {
                out.push((m, n, l));
            }
        }
    }
    out
}

/// `(m, n, l)` with its four sign rows.
pub type RcSweepRow = ((u32, u32, u32), Vec<FusionTranslationRow>);

/// Pipeline rows over [`rc_window`], computed in parallel (one pipeline per `(m, n)`).
pub fn rc_translation_sweep(max: u32) -> Result<Vec<RcSweepRow>, FusionError> {
    let pairs: Vec<(u32, u32)> = (0..=max).flat_map(|m| (0..=max).map(move |n| (m, n))).collect();
    let chunks: Result<Vec<Vec<_>>, FusionError> = pairs
        .into_par_iter()
        .map(|(m, n)| {
            let pipeline = rc_pipeline(m, n)?;
            (0..=m.min(n))
                .map(|l| {
                    let r = rc_operator(m, n, l)?;
                    let k = m + n - 2 * l;
                    let rows = verify_fusion_translation(
                        &pipeline,
                        |w| r.matrix().apply(w),
                        &all_probes(m as usize + 1, n as usize + 1),
                        (l as usize, 0),
                        (m as i64 + 1, n as i64 + 1, k as i64 + 1),
                    )?;
                    Ok(((m, n, l), rows))
                })
                .collect()
        })
        .collect();
    Ok(chunks?.into_iter().flatten().collect())
}

pub fn format_row(row: &FusionTranslationRow) -> String {
    format!(
        "({}{}) pipeline {} g-form {} closed {}",
        row.delta,
        row.epsilon,
        format_scalar(&row.pipeline),
        format_scalar(&row.g_form),
        format_scalar(&row.closed_form)
    )
}
