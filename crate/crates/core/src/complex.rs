//! Truncated Čech double complexes of twisted structure sheaves on `X`.
//!
//! A column is a direct sum of sheaves `O_X(t)`; sections over
//! `U_S = ∩_{i∈S} Uᵢ ∩ X` are F-reduced Laurent polynomials of degree `t`
//! whose negative exponents sit on variables of `S`. Truncating at bound `B`
//! keeps monomials with every exponent `≥ -B`. Multiplication by polynomials
//! and F-reduction never lower an exponent, so the truncation is a
//! subcomplex, and its cohomology is computed by exact rank counts.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_traits::One;

use crate::cech::{CechIndex, FReducer};
use crate::linalg::{self, SparseVec};
use crate::poly::{Exponent, LaurentPoly, Rational};
use crate::{Error, Result};

/// Horizontal structure of a bounded complex of sums of twisted sheaves.
pub(crate) trait SheafComplex {
    /// Twists of the summands in each column, left to right.
    fn columns(&self) -> &[Vec<i64>];
    /// Complex degree of the first column.
    fn first_degree(&self) -> i64;
    /// Image of the monomial section `x^mono` in summand `comp` of column
    /// `col` under the map to column `col + 1`, as unreduced sections.
    fn horizontal(&self, col: usize, comp: usize, mono: &Exponent) -> Vec<(usize, LaurentPoly)>;
}

/// Identifies one basis vector of a total-complex term.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub(crate) struct BasisKey {
    pub col: usize,
    pub comp: usize,
    pub index: CechIndex,
    pub mono: Exponent,
}

pub(crate) struct TotalComplex<'a, C: SheafComplex> {
    pub cx: &'a C,
    pub reducer: &'a FReducer,
    pub n: usize,
    pub bound: usize,
    pub max_dim: usize,
}

pub(crate) struct TotalBasis {
    pub keys: Vec<BasisKey>,
    lookup: BTreeMap<BasisKey, usize>,
}

impl TotalBasis {
    pub fn len(&self) -> usize {
        self.keys.len()
    }

    pub fn position(&self, key: &BasisKey) -> Option<usize> {
        self.lookup.get(key).copied()
    }
}

/// Monomials `x0^a0 ⋯ xn^an` with `0 ≤ a0 < d`, `aⱼ ≥ -B` for `j ∈ S`,
/// `aⱼ ≥ 0` otherwise, and total degree `twist`.
pub(crate) fn truncated_monomials(
    n: usize,
    d: i64,
    index: &CechIndex,
    twist: i64,
    bound: usize,
) -> Vec<Exponent> {
    let b = bound as i64;
    let lower: Vec<i64> = (1..=n)
        .map(|j| if index.contains(j) { -b } else { 0 })
        .collect();
    let mut out = Vec::new();
    for a0 in 0..d {
        let remaining = twist - a0 - lower.iter().sum::<i64>();
        if remaining < 0 {
            continue;
        }
        let mut current = alloc::vec![0i64; n];
        compositions(remaining, 0, &mut current, &mut |shifted| {
            let mut e = Vec::with_capacity(n + 1);
            e.push(a0 as i32);
            e.extend(shifted.iter().zip(&lower).map(|(s, l)| (s + l) as i32));
            out.push(Exponent::new(e));
        });
    }
    out
}

fn compositions(total: i64, pos: usize, current: &mut [i64], emit: &mut impl FnMut(&[i64])) {
    if pos + 1 == current.len() {
        current[pos] = total;
        emit(current);
        return;
    }
    if current.is_empty() {
        if total == 0 {
            emit(current);
        }
        return;
    }
    for k in 0..=total {
        current[pos] = k;
        compositions(total - k, pos + 1, current, emit);
    }
}

impl<C: SheafComplex> TotalComplex<'_, C> {
    fn cech_degree(&self, m: i64, col: usize) -> Option<usize> {
        let p = m - (self.cx.first_degree() + col as i64);
        (0..self.n as i64).contains(&p).then_some(p as usize)
    }

    pub fn basis(&self, m: i64) -> Result<TotalBasis> {
        let mut keys = Vec::new();
        for (col, twists) in self.cx.columns().iter().enumerate() {
            let Some(p) = self.cech_degree(m, col) else {
                continue;
            };
            for (comp, &t) in twists.iter().enumerate() {
                for index in CechIndex::all(self.n, p) {
                    for mono in
                        truncated_monomials(self.n, self.reducer.degree(), &index, t, self.bound)
                    {
                        keys.push(BasisKey {
                            col,
                            comp,
                            index: index.clone(),
                            mono,
                        });
                        if keys.len() > self.max_dim {
                            return Err(Error::ResourceLimit {
                                what: "truncated cochain basis size",
                                cap: self.max_dim,
                            });
                        }
                    }
                }
            }
        }
        let lookup = keys.iter().cloned().enumerate().map(|(i, k)| (k, i)).collect();
        Ok(TotalBasis { keys, lookup })
    }

    /// `D(key) = δ(key) + (-1)^p h(key)` in coordinates of `target`.
    pub fn differential_of(&self, key: &BasisKey, target: &TotalBasis) -> Result<SparseVec> {
        let mut out = SparseVec::new();
        let p = key.index.len() - 1;
        if p + 1 < self.n {
            for j in (1..=self.n).filter(|j| !key.index.contains(*j)) {
                let (bigger, pos) = key.index.insert(j);
                let tk = BasisKey {
                    col: key.col,
                    comp: key.comp,
                    index: bigger,
                    mono: key.mono.clone(),
                };
                let at = target
                    .position(&tk)
                    .ok_or_else(|| Error::Inconsistent("Čech image left the truncation".into()))?;
                let sign = if pos % 2 == 0 { 1 } else { -1 };
                accumulate(&mut out, at, crate::poly::rat(sign));
            }
        }
        if key.col + 1 < self.cx.columns().len() {
            let sign = if p % 2 == 0 {
                Rational::one()
            } else {
                -Rational::one()
            };
            for (comp, section) in self.cx.horizontal(key.col, key.comp, &key.mono) {
                let reduced = self.reducer.reduce(&section);
                for (e, c) in reduced.terms() {
                    let tk = BasisKey {
                        col: key.col + 1,
                        comp,
                        index: key.index.clone(),
                        mono: e.clone(),
                    };
                    let at = target.position(&tk).ok_or_else(|| {
                        Error::Inconsistent("horizontal image left the truncation".into())
                    })?;
                    accumulate(&mut out, at, c * &sign);
                }
            }
        }
        Ok(out)
    }

    /// Images of all basis vectors of `Tot^m`.
    pub fn differential_images(&self, source: &TotalBasis, target: &TotalBasis) -> Result<Vec<SparseVec>> {
        source
            .keys
            .iter()
            .map(|k| self.differential_of(k, target))
            .collect()
    }

    pub fn differential_rank(&self, m: i64) -> Result<usize> {
        let source = self.basis(m)?;
        if source.len() == 0 {
            return Ok(0);
        }
        let target = self.basis(m + 1)?;
        Ok(linalg::rank(self.differential_images(&source, &target)?))
    }

    /// `dim H^m = dim Tot^m - rank D^m - rank D^{m-1}`.
    pub fn cohomology_dim(&self, m: i64) -> Result<usize> {
        let dim = self.basis(m)?.len();
        Ok(dim - self.differential_rank(m)? - self.differential_rank(m - 1)?)
    }
}

fn accumulate(v: &mut SparseVec, at: usize, x: Rational) {
    use num_traits::Zero;
    let e = v.entry(at).or_insert_with(Rational::zero);
    *e += x;
    if e.is_zero() {
        v.remove(&at);
    }
}

/// A single copy of `O_X`.
pub(crate) struct StructureSheaf {
    columns: Vec<Vec<i64>>,
}

impl StructureSheaf {
    pub fn new() -> Self {
        StructureSheaf {
            columns: alloc::vec![alloc::vec![0]],
        }
    }
}

impl SheafComplex for StructureSheaf {
    fn columns(&self) -> &[Vec<i64>] {
        &self.columns
    }

    fn first_degree(&self) -> i64 {
        0
    }

    fn horizontal(&self, _: usize, _: usize, _: &Exponent) -> Vec<(usize, LaurentPoly)> {
        Vec::new()
    }
}

/// `O_X --E--> O_X(1)^{n+1} --dF--> O_X(d)` in degrees -1, 0, 1, a resolution
/// of `T_X` placed in degree 0: the first map is `h ↦ (h x₀, …, h xₙ)`, the
/// second `(g₀, …, gₙ) ↦ Σ gⱼ ∂ⱼF`.
pub(crate) struct TangentComplex {
    columns: Vec<Vec<i64>>,
    partials: Vec<LaurentPoly>,
    nvars: usize,
}

impl TangentComplex {
    pub fn new(f: &crate::HomogeneousPoly) -> Self {
        let nvars = f.nvars();
        TangentComplex {
            columns: alloc::vec![
                alloc::vec![0],
                alloc::vec![1; nvars],
                alloc::vec![f.degree()],
            ],
            partials: (0..nvars).map(|j| f.partial_derivative(j)).collect(),
            nvars,
        }
    }
}

impl SheafComplex for TangentComplex {
    fn columns(&self) -> &[Vec<i64>] {
        &self.columns
    }

    fn first_degree(&self) -> i64 {
        -1
    }

    fn horizontal(&self, col: usize, comp: usize, mono: &Exponent) -> Vec<(usize, LaurentPoly)> {
        match col {
            0 => (0..self.nvars)
                .map(|j| {
                    let e = mono.add(&Exponent::unit(self.nvars, j));
                    (j, LaurentPoly::monomial(e, Rational::one()))
                })
                .collect(),
            1 => alloc::vec![(0, self.partials[comp].shift(mono))],
            _ => Vec::new(),
        }
    }
}
