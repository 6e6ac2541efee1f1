//! Dense complex polynomials and the transforms the inequalities are built on.
//!
//! Coefficients are stored in ascending power order and the degree is the
//! structural length of the coefficient vector. Nothing here ever decides a
//! degree by comparing a coefficient against a tolerance.

use std::fmt;
use std::ops::Add;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

fn is_finite(c: Complex64) -> bool {
    c.re.is_finite() && c.im.is_finite()
}

fn check_finite(values: &[Complex64]) -> Result<()> {
    match values.iter().position(|c| !is_finite(*c)) {
        Some(i) => Err(Error::NonFinite(i)),
        None => Ok(()),
    }
}

/// A complex polynomial `P(z) = Σ coeffs[j] z^j`.
///
/// The degree is `coeffs.len() - 1`. [`Polynomial::new`] strips exact
/// trailing zeros so the leading coefficient is nonzero (the zero polynomial
/// is the single coefficient `[0]`). Some transforms keep a *formal* degree
/// instead: the conjugate-reciprocal of a degree-`n` polynomial is a
/// degree-`n` object even when `P(0) = 0`, and the identities relating `P`
/// and `Q` use that `n`. [`Polynomial::with_formal_degree`] builds such values.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Polynomial {
    coeffs: Vec<Complex64>,
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::Empty);
        }
        check_finite(&coeffs)?;
        while coeffs.len() > 1 && coeffs[coeffs.len() - 1] == Complex64::new(0.0, 0.0) {
            coeffs.pop();
        }
        Ok(Self { coeffs })
    }

    /// Keeps the coefficient vector as given, zero leading slots included.
    pub fn with_formal_degree(coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::Empty);
        }
        check_finite(&coeffs)?;
        Ok(Self { coeffs })
    }

    pub fn from_real(coeffs: &[f64]) -> Result<Self> {
        Self::new(coeffs.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    pub fn zero() -> Self {
        Self { coeffs: vec![Complex64::new(0.0, 0.0)] }
    }

    /// `a z^n`
    pub fn monomial(a: Complex64, n: usize) -> Result<Self> {
        let mut coeffs = vec![Complex64::new(0.0, 0.0); n + 1];
        coeffs[n] = a;
        Self::new(coeffs)
    }

    // Internal constructor for values derived from already-validated data.
    fn from_parts(coeffs: Vec<Complex64>) -> Self {
        debug_assert!(!coeffs.is_empty());
        Self { coeffs }
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn leading(&self) -> Complex64 {
        self.coeffs[self.degree()]
    }

    pub fn constant_term(&self) -> Complex64 {
        self.coeffs[0]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| *c == Complex64::new(0.0, 0.0))
    }

    /// `Σ |a_j|`, an upper bound for `|P(z)|` on the closed unit disk.
    pub fn coefficient_l1(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).sum()
    }

    /// Horner evaluation.
    pub fn evaluate(&self, z: Complex64) -> Complex64 {
        self.coeffs.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, &a| acc * z + a)
    }

    pub fn derivative(&self) -> Self {
        if self.degree() == 0 {
            return Self::zero();
        }
        Self::from_parts(self.coeffs.iter().enumerate().skip(1).map(|(j, &a)| a * j as f64).collect())
    }

    /// `Q(z) = z^n conj(P(1/conj(z)))`: coefficients reversed and conjugated.
    ///
    /// The result keeps degree `n`, so applying the transform twice returns
    /// the original coefficients exactly.
    pub fn conjugate_reciprocal(&self) -> Self {
        Self::from_parts(self.coeffs.iter().rev().map(|c| c.conj()).collect())
    }

    /// `D_α P(z) = n P(z) + (α - z) P'(z)`.
    ///
    /// The coefficient of `z^j` is `(n - j) a_j + α (j + 1) a_{j+1}`; the
    /// `z^n` slot has factor `n - n = 0` and is not materialised, so the
    /// result has formal degree `n - 1` without relying on cancellation.
    pub fn polar_derivative(&self, alpha: Complex64) -> Result<Self> {
        let n = self.degree();
        if n == 0 {
            return Err(Error::Degree("polar derivative needs degree at least 1".into()));
        }
        if !is_finite(alpha) {
            return Err(Error::Alpha(format!("non-finite alpha {alpha}")));
        }
        let a = &self.coeffs;
        Ok(Self::from_parts((0..n).map(|j| a[j] * (n - j) as f64 + alpha * a[j + 1] * (j + 1) as f64).collect()))
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Self::from_parts(self.coeffs.iter().map(|&a| a * c).collect())
    }

    /// Substitutes `z -> rotation * z`.
    pub fn compose_rotation(&self, rotation: Complex64) -> Self {
        let mut power = Complex64::new(1.0, 0.0);
        let mut out = Vec::with_capacity(self.coeffs.len());
        for &a in &self.coeffs {
            out.push(a * power);
            power *= rotation;
        }
        Self::from_parts(out)
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;

    /// Coefficientwise sum; the result has the larger of the two formal degrees.
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        let zero = Complex64::new(0.0, 0.0);
        Polynomial::from_parts(
            (0..len)
                .map(|j| self.coeffs.get(j).copied().unwrap_or(zero) + rhs.coeffs.get(j).copied().unwrap_or(zero))
                .collect(),
        )
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (j, c) in self.coeffs.iter().enumerate() {
            if *c == Complex64::new(0.0, 0.0) && self.coeffs.len() > 1 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match j {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})z")?,
                _ => write!(f, "({c})z^{j}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// `a_n Π (z - z_ν)`, the form both theorems are stated in.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FactoredPolynomial {
    leading: Complex64,
    zeros: Vec<Complex64>,
}

impl FactoredPolynomial {
    pub fn new(leading: Complex64, zeros: Vec<Complex64>) -> Result<Self> {
        if !is_finite(leading) {
            return Err(Error::NonFinite(0));
        }
        if leading == Complex64::new(0.0, 0.0) {
            return Err(Error::ZeroLeading);
        }
        check_finite(&zeros)?;
        Ok(Self { leading, zeros })
    }

    pub fn leading(&self) -> Complex64 {
        self.leading
    }

    pub fn zeros(&self) -> &[Complex64] {
        &self.zeros
    }

    pub fn degree(&self) -> usize {
        self.zeros.len()
    }

    pub fn scale(&self, c: Complex64) -> Result<Self> {
        Self::new(self.leading * c, self.zeros.clone())
    }

    /// Multiplies out the product, one linear factor at a time.
    pub fn expand(&self) -> Polynomial {
        let mut coeffs = vec![self.leading];
        for &root in &self.zeros {
            let mut next = vec![Complex64::new(0.0, 0.0); coeffs.len() + 1];
            for (j, &c) in coeffs.iter().enumerate() {
                next[j + 1] += c;
                next[j] -= root * c;
            }
            coeffs = next;
        }
        Polynomial::from_parts(coeffs)
    }
}

/// Which side of the unit circle the zeros are confined to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Orientation {
    /// `|z_ν| >= k_ν >= 1`
    #[serde(rename = "outside")]
    ZerosOutside,
    /// `|z_ν| <= k_ν <= 1`
    #[serde(rename = "inside")]
    ZerosInside,
}

/// Per-zero radii `k_ν` together with the side of the circle they bound.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RadiusProfile {
    radii: Vec<f64>,
    orientation: Orientation,
}

impl RadiusProfile {
    /// Outside profiles accept `k >= 1` including `+inf`; inside profiles
    /// accept finite `0 < k <= 1`.
    pub fn new(radii: Vec<f64>, orientation: Orientation) -> Result<Self> {
        for (i, &k) in radii.iter().enumerate() {
            let ok = match orientation {
                Orientation::ZerosOutside => k >= 1.0,
                Orientation::ZerosInside => k > 0.0 && k <= 1.0,
            };
            if !ok {
                return Err(Error::Profile(format!(
                    "radius k[{i}] = {k} outside the {} range",
                    match orientation {
                        Orientation::ZerosOutside => "[1, inf]",
                        Orientation::ZerosInside => "(0, 1]",
                    }
                )));
            }
        }
        Ok(Self { radii, orientation })
    }

    /// `k_ν = |z_ν|` clamped into the orientation's admissible range.
    ///
    /// The clamped profile still has to pass [`RadiusProfile::validate_against`];
    /// a zero on the wrong side of the circle is not repaired by clamping.
    pub fn tightest(f: &FactoredPolynomial, orientation: Orientation) -> Self {
        let radii = f
            .zeros()
            .iter()
            .map(|z| {
                let r = z.norm();
                match orientation {
                    Orientation::ZerosOutside => r.max(1.0),
                    Orientation::ZerosInside => r.clamp(f64::MIN_POSITIVE, 1.0),
                }
            })
            .collect();
        Self { radii, orientation }
    }

    pub fn radii(&self) -> &[f64] {
        &self.radii
    }

    pub fn orientation(&self) -> Orientation {
        self.orientation
    }

    pub fn len(&self) -> usize {
        self.radii.len()
    }

    pub fn is_empty(&self) -> bool {
        self.radii.is_empty()
    }

    pub fn min_radius(&self) -> f64 {
        self.radii.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn max_radius(&self) -> f64 {
        self.radii.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn expect_orientation(&self, orientation: Orientation) -> Result<()> {
        if self.orientation != orientation {
            return Err(Error::Profile(format!("expected a {orientation:?} profile, got {:?}", self.orientation)));
        }
        Ok(())
    }

    /// Checks `|z_ν| >= k_ν` (outside) or `|z_ν| <= k_ν` (inside) pairwise.
    pub fn validate_against(&self, f: &FactoredPolynomial) -> Result<()> {
        if self.radii.len() != f.degree() {
            return Err(Error::Profile(format!(
                "profile has {} radii but the polynomial has degree {}",
                self.radii.len(),
                f.degree()
            )));
        }
        for (i, (z, &k)) in f.zeros().iter().zip(&self.radii).enumerate() {
            let r = z.norm();
            let ok = match self.orientation {
                Orientation::ZerosOutside => r >= k,
                Orientation::ZerosInside => r <= k,
            };
            if !ok {
                let rel = match self.orientation {
                    Orientation::ZerosOutside => ">=",
                    Orientation::ZerosInside => "<=",
                };
                return Err(Error::Profile(format!("zero {i} has modulus {r}, violating |z| {rel} k = {k}")));
            }
        }
        Ok(())
    }
}
