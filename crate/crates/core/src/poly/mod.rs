//! Sparse multivariate Laurent polynomials over `Q`.
//!
//! A [`LaurentPoly`] in `n + 1` variables `x0..xn` is a map from exponent
//! vectors in `Z^{n+1}` to nonzero rationals. Terms are kept in a `BTreeMap`,
//! so iteration follows the lexicographic order on exponent vectors and two
//! equal polynomials always have identical representations.

mod parse;

use alloc::collections::btree_map::{self, BTreeMap};
use alloc::vec::Vec;
use core::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::{Error, Result};

pub use parse::{monomial_string, parse_poly, rational_string};

pub type Rational = num_rational::BigRational;

/// Integer rational `k / 1`.
pub fn rat(k: i64) -> Rational {
    Rational::from_integer(BigInt::from(k))
}

/// Exponent vector `(a₀, …, aₙ)` of the monomial `x0^a₀ ⋯ xn^aₙ`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Exponent(Vec<i32>);

impl Exponent {
    pub fn new(exps: Vec<i32>) -> Self {
        Exponent(exps)
    }

    pub fn zero(nvars: usize) -> Self {
        Exponent(alloc::vec![0; nvars])
    }

    /// The exponent of `x_i`.
    pub fn unit(nvars: usize, i: usize) -> Self {
        let mut e = Self::zero(nvars);
        e.0[i] = 1;
        e
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn as_slice(&self) -> &[i32] {
        &self.0
    }

    pub fn get(&self, i: usize) -> i32 {
        self.0[i]
    }

    pub fn set(&mut self, i: usize, value: i32) {
        self.0[i] = value;
    }

    /// Total degree `Σ aᵢ`.
    pub fn degree(&self) -> i64 {
        self.0.iter().map(|&a| a as i64).sum()
    }

    pub fn is_nonnegative(&self) -> bool {
        self.0.iter().all(|&a| a >= 0)
    }

    pub fn add(&self, other: &Exponent) -> Exponent {
        debug_assert_eq!(self.nvars(), other.nvars());
        Exponent(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Exponent) -> Exponent {
        debug_assert_eq!(self.nvars(), other.nvars());
        Exponent(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, k: i32) -> Exponent {
        Exponent(self.0.iter().map(|a| a * k).collect())
    }

    /// Componentwise `self ≤ other`.
    pub fn divides(&self, other: &Exponent) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn lcm(&self, other: &Exponent) -> Exponent {
        Exponent(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }
}

impl From<Vec<i32>> for Exponent {
    fn from(v: Vec<i32>) -> Self {
        Exponent(v)
    }
}

/// Sparse Laurent polynomial with exact rational coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    nvars: usize,
    terms: BTreeMap<Exponent, Rational>,
}

impl LaurentPoly {
    pub fn zero(nvars: usize) -> Self {
        LaurentPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rational::one())
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        Self::monomial(Exponent::zero(nvars), c)
    }

    pub fn monomial(exp: Exponent, c: Rational) -> Self {
        let nvars = exp.nvars();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exp, c);
        }
        LaurentPoly { nvars, terms }
    }

    /// The variable `x_i`.
    pub fn var(nvars: usize, i: usize) -> Self {
        Self::monomial(Exponent::unit(nvars, i), Rational::one())
    }

    /// Collects terms, summing coefficients of repeated exponents.
    pub fn from_terms<I>(nvars: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Exponent, Rational)>,
    {
        let mut p = Self::zero(nvars);
        for (e, c) in terms {
            assert_eq!(e.nvars(), nvars, "exponent length mismatch");
            p.add_term(e, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending lexicographic order of exponents.
    pub fn terms(&self) -> btree_map::Iter<'_, Exponent, Rational> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> BTreeMap<Exponent, Rational> {
        self.terms
    }

    pub fn coefficient_of(&self, e: &Exponent) -> Rational {
        self.terms.get(e).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add_term(&mut self, e: Exponent, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// `self += c · x^shift · other`.
    pub fn add_scaled(&mut self, other: &LaurentPoly, c: &Rational, shift: &Exponent) {
        self.check_ring(other);
        if c.is_zero() {
            return;
        }
        for (e, a) in &other.terms {
            self.add_term(e.add(shift), a * c);
        }
    }

    pub fn scale(&self, c: &Rational) -> LaurentPoly {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        LaurentPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, a)| (e.clone(), a * c)).collect(),
        }
    }

    /// Multiplies by the monomial `x^shift`.
    pub fn shift(&self, shift: &Exponent) -> LaurentPoly {
        LaurentPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, a)| (e.add(shift), a.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, k: u32) -> LaurentPoly {
        let mut acc = Self::one(self.nvars);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// `∂p/∂xᵢ`, computed term-wise as `aᵢ · x^{a - eᵢ}`.
    pub fn partial_derivative(&self, i: usize) -> LaurentPoly {
        assert!(i < self.nvars, "x{i} is not a variable of this ring");
        let mut out = Self::zero(self.nvars);
        for (e, a) in &self.terms {
            let k = e.get(i);
            if k != 0 {
                let mut e2 = e.clone();
                e2.set(i, k - 1);
                out.terms.insert(e2, a * rat(k as i64));
            }
        }
        out
    }

    /// True iff every term has nonnegative exponents and total degree `d`.
    /// The zero polynomial is homogeneous of every degree.
    pub fn check_homogeneous(&self, d: i64) -> bool {
        self.terms
            .keys()
            .all(|e| e.is_nonnegative() && e.degree() == d)
    }

    /// Common total degree of all terms, allowing negative exponents.
    /// `None` for zero or mixed-degree polynomials.
    pub fn total_degree(&self) -> Option<i64> {
        let mut it = self.terms.keys().map(Exponent::degree);
        let d = it.next()?;
        it.all(|x| x == d).then_some(d)
    }

    pub fn is_polynomial(&self) -> bool {
        self.terms.keys().all(Exponent::is_nonnegative)
    }

    /// Smallest exponent of `x_i` over all terms.
    pub fn min_exponent(&self, i: usize) -> Option<i32> {
        self.terms.keys().map(|e| e.get(i)).min()
    }

    pub fn max_exponent(&self, i: usize) -> Option<i32> {
        self.terms.keys().map(|e| e.get(i)).max()
    }

    fn check_ring(&self, other: &LaurentPoly) {
        assert_eq!(
            self.nvars, other.nvars,
            "polynomials live in rings with different variable counts"
        );
    }

    pub(crate) fn try_same_ring(&self, other: &LaurentPoly) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(Error::RingMismatch {
                left: self.nvars,
                right: other.nvars,
            });
        }
        Ok(())
    }
}

impl<'a> Add<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &'a LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(mut self, rhs: LaurentPoly) -> LaurentPoly {
        self += &rhs;
        self
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        self.check_ring(rhs);
        for (e, c) in &rhs.terms {
            self.add_term(e.clone(), c.clone());
        }
    }
}

impl SubAssign<&LaurentPoly> for LaurentPoly {
    fn sub_assign(&mut self, rhs: &LaurentPoly) {
        self.check_ring(rhs);
        for (e, c) in &rhs.terms {
            self.add_term(e.clone(), -c.clone());
        }
    }
}

impl<'a> Sub<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &'a LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;
    fn sub(mut self, rhs: LaurentPoly) -> LaurentPoly {
        self -= &rhs;
        self
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

impl<'a> Mul<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &'a LaurentPoly) -> LaurentPoly {
        self.check_ring(rhs);
        let mut out = LaurentPoly::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                out.add_term(e1.add(e2), c1 * c2);
            }
        }
        out
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        &self * &rhs
    }
}

/// A polynomial (no negative exponents) all of whose terms have total degree `degree`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomogeneousPoly {
    poly: LaurentPoly,
    degree: i64,
}

impl HomogeneousPoly {
    pub fn new(poly: LaurentPoly, degree: i64) -> Result<Self> {
        if !poly.check_homogeneous(degree) {
            return Err(Error::NotHomogeneous);
        }
        Ok(HomogeneousPoly { poly, degree })
    }

    /// Reads the degree off the terms; rejects the zero polynomial.
    pub fn from_poly(poly: LaurentPoly) -> Result<Self> {
        let degree = match poly.terms().next() {
            Some((e, _)) => e.degree(),
            None => {
                return Err(Error::InvalidInput(
                    "the zero polynomial has no defined degree".into(),
                ))
            }
        };
        Self::new(poly, degree)
    }

    pub fn parse(text: &str, n: usize) -> Result<Self> {
        Self::from_poly(parse_poly(text, n)?)
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn nvars(&self) -> usize {
        self.poly.nvars()
    }

    /// Index `n` of the top variable.
    pub fn n(&self) -> usize {
        self.poly.nvars() - 1
    }

    pub fn as_poly(&self) -> &LaurentPoly {
        &self.poly
    }

    pub fn into_poly(self) -> LaurentPoly {
        self.poly
    }

    pub fn partial_derivative(&self, i: usize) -> LaurentPoly {
        self.poly.partial_derivative(i)
    }

    /// The coefficient of `x0^d`, i.e. `F(1, 0, …, 0)`.
    pub fn leading_x0_coefficient(&self) -> Rational {
        let mut e = Exponent::zero(self.nvars());
        e.set(0, self.degree as i32);
        self.poly.coefficient_of(&e)
    }
}

/// The Fermat hypersurface `x0^d + ⋯ + xn^d`.
pub fn fermat(n: usize, d: u32) -> HomogeneousPoly {
    let nvars = n + 1;
    let poly = LaurentPoly::from_terms(
        nvars,
        (0..nvars).map(|i| (Exponent::unit(nvars, i).scale(d as i32), Rational::one())),
    );
    HomogeneousPoly {
        poly,
        degree: d as i64,
    }
}
