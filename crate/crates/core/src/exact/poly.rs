use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::scalar::ExactScalar;

/// Polynomial in one variable `z`; zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct UnivariatePolynomial {
    terms: BTreeMap<u32, ExactScalar>,
}

impl UnivariatePolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: ExactScalar) -> Self {
        Self::monomial(0, c)
    }

    pub fn monomial(deg: u32, c: ExactScalar) -> Self {
        let mut p = Self::zero();
        p.add_term(deg, c);
        p
    }

    pub fn from_coefficients(coeffs: &[ExactScalar]) -> Self {
        let mut p = Self::zero();
        for (d, c) in coeffs.iter().enumerate() {
            p.add_term(d as u32, c.clone());
        }
        p
    }

    pub fn add_term(&mut self, deg: u32, c: ExactScalar) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(deg).or_insert_with(ExactScalar::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&deg);
        }
    }

    pub fn coefficient(&self, deg: u32) -> ExactScalar {
        self.terms.get(&deg).cloned().unwrap_or_else(ExactScalar::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().next_back().copied()
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, &ExactScalar)> {
        self.terms.iter().map(|(&d, c)| (d, c))
    }

    pub fn derivative(&self) -> Self {
        let mut out = Self::zero();
        for (&d, c) in &self.terms {
            if d > 0 {
                out.add_term(d - 1, c * ExactScalar::from_integer(d.into()));
            }
        }
        out
    }

    /// Dense coefficient vector of length `len` (the `z^i` coordinates).
    pub fn to_dense(&self, len: usize) -> Vec<ExactScalar> {
        (0..len as u32).map(|d| self.coefficient(d)).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Var {
    Z,
    W,
}

/// Polynomial in `(z, w)`, keyed by `(deg_z, deg_w)`; zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct BivariatePolynomial {
    terms: BTreeMap<(u32, u32), ExactScalar>,
}

impl BivariatePolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: ExactScalar) -> Self {
        Self::monomial(0, 0, c)
    }

    pub fn monomial(deg_z: u32, deg_w: u32, c: ExactScalar) -> Self {
        let mut p = Self::zero();
        p.add_term(deg_z, deg_w, c);
        p
    }

    pub fn z() -> Self {
        Self::monomial(1, 0, ExactScalar::one())
    }

    pub fn w() -> Self {
        Self::monomial(0, 1, ExactScalar::one())
    }

    /// `F(z)` as a bivariate polynomial.
    pub fn in_z(p: &UnivariatePolynomial) -> Self {
        let mut out = Self::zero();
        for (d, c) in p.terms() {
            out.add_term(d, 0, c.clone());
        }
        out
    }

    /// `G(w)` as a bivariate polynomial.
    pub fn in_w(p: &UnivariatePolynomial) -> Self {
        let mut out = Self::zero();
        for (d, c) in p.terms() {
            out.add_term(0, d, c.clone());
        }
        out
    }

    pub fn add_term(&mut self, deg_z: u32, deg_w: u32, c: ExactScalar) {
        if c.is_zero() {
            return;
        }
        let key = (deg_z, deg_w);
        let slot = self.terms.entry(key).or_insert_with(ExactScalar::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn coefficient(&self, deg_z: u32, deg_w: u32) -> ExactScalar {
        self.terms
            .get(&(deg_z, deg_w))
            .cloned()
            .unwrap_or_else(ExactScalar::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = ((u32, u32), &ExactScalar)> {
        self.terms.iter().map(|(&k, c)| (k, c))
    }

    pub fn degree_z(&self) -> Option<u32> {
        self.terms.keys().map(|k| k.0).max()
    }

    pub fn degree_w(&self) -> Option<u32> {
        self.terms.keys().map(|k| k.1).max()
    }

    pub fn scale(&self, s: &ExactScalar) -> Self {
        let mut out = Self::zero();
        for (&(a, b), c) in &self.terms {
            out.add_term(a, b, c * s);
        }
        out
    }

    pub fn partial_derivative(&self, var: Var) -> Self {
        let mut out = Self::zero();
        for (&(a, b), c) in &self.terms {
            match var {
                Var::Z if a > 0 => out.add_term(a - 1, b, c * ExactScalar::from_integer(a.into())),
                Var::W if b > 0 => out.add_term(a, b - 1, c * ExactScalar::from_integer(b.into())),
                _ => {}
            }
        }
        out
    }

    /// `∂^{i+j} / ∂z^i ∂w^j`.
    pub fn mixed_derivative(&self, times_z: u32, times_w: u32) -> Self {
        let mut p = self.clone();
        for _ in 0..times_z {
            p = p.partial_derivative(Var::Z);
        }
        for _ in 0..times_w {
            p = p.partial_derivative(Var::W);
        }
        p
    }

    /// Substitutes `w := z`.
    pub fn restrict_diagonal(&self) -> UnivariatePolynomial {
        let mut out = UnivariatePolynomial::zero();
        for (&(a, b), c) in &self.terms {
            out.add_term(a + b, c.clone());
        }
        out
    }
}

macro_rules! ring_ops {
    ($ty:ident) => {
        impl<'a> Add<&'a $ty> for &'a $ty {
            type Output = $ty;
            fn add(self, rhs: &$ty) -> $ty {
                let mut out = self.clone();
                for (k, c) in &rhs.terms {
                    ring_ops!(@add out, $ty, k, c.clone());
                }
                out
            }
        }
        impl<'a> Sub<&'a $ty> for &'a $ty {
            type Output = $ty;
            fn sub(self, rhs: &$ty) -> $ty {
                let mut out = self.clone();
                for (k, c) in &rhs.terms {
                    ring_ops!(@add out, $ty, k, -c);
                }
                out
            }
        }
        impl Neg for &$ty {
            type Output = $ty;
            fn neg(self) -> $ty {
                &$ty::zero() - self
            }
        }
        impl Add for $ty {
            type Output = $ty;
            fn add(self, rhs: $ty) -> $ty {
                &self + &rhs
            }
        }
        impl Sub for $ty {
            type Output = $ty;
            fn sub(self, rhs: $ty) -> $ty {
                &self - &rhs
            }
        }
        impl Mul for $ty {
            type Output = $ty;
            fn mul(self, rhs: $ty) -> $ty {
                &self * &rhs
            }
        }
    };
    (@add $out:ident, UnivariatePolynomial, $k:ident, $c:expr) => {
        $out.add_term(*$k, $c)
    };
    (@add $out:ident, BivariatePolynomial, $k:ident, $c:expr) => {
        $out.add_term($k.0, $k.1, $c)
    };
}
ring_ops!(UnivariatePolynomial);
ring_ops!(BivariatePolynomial);

impl<'a> Mul<&'a UnivariatePolynomial> for &'a UnivariatePolynomial {
    type Output = UnivariatePolynomial;
    fn mul(self, rhs: &UnivariatePolynomial) -> UnivariatePolynomial {
        let mut out = UnivariatePolynomial::zero();
        for (&a, c) in &self.terms {
            for (&b, d) in &rhs.terms {
                out.add_term(a + b, c * d);
            }
        }
        out
    }
}

impl<'a> Mul<&'a BivariatePolynomial> for &'a BivariatePolynomial {
    type Output = BivariatePolynomial;
    fn mul(self, rhs: &BivariatePolynomial) -> BivariatePolynomial {
        let mut out = BivariatePolynomial::zero();
        for (&(a, b), c) in &self.terms {
            for (&(p, q), d) in &rhs.terms {
                out.add_term(a + p, b + q, c * d);
            }
        }
        out
    }
}

fn write_terms<'a>(
    f: &mut fmt::Formatter<'_>,
    terms: impl Iterator<Item = (String, &'a ExactScalar)>,
) -> fmt::Result {
    let mut first = true;
    for (mono, c) in terms {
        if !first {
            write!(f, " + ")?;
        }
        first = false;
        if mono.is_empty() {
            write!(f, "{c}")?;
        } else {
            write!(f, "({c}){mono}")?;
        }
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

impl fmt::Debug for UnivariatePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(
            f,
            self.terms.iter().map(|(&d, c)| {
                let m = match d {
                    0 => String::new(),
                    1 => "z".into(),
                    _ => format!("z^{d}"),
                };
                (m, c)
            }),
        )
    }
}

impl fmt::Debug for BivariatePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pow = |v: &str, d: u32| match d {
            0 => String::new(),
            1 => v.to_string(),
            _ => format!("{v}^{d}"),
        };
        write_terms(
            f,
            self.terms
                .iter()
                .map(|(&(a, b), c)| (format!("{}{}", pow("z", a), pow("w", b)), c)),
        )
    }
}
