//! Čech cochains of `O_X` on the cover `(Uᵢ ∩ X)`, `i = 1..n`.
//!
//! When `F(1, 0, …, 0) ≠ 0` the charts `U₁..Uₙ` of `Pⁿ` cover `X`. Sections
//! over `U_S` are degree-0 Laurent polynomials with negative exponents only on
//! `{xⱼ : j ∈ S}`, taken modulo `F`. Writing `F = c·x0^d + (lower in x0)`, the
//! rewrite `x0^d → x0^d - F/c` gives every class a unique representative with
//! `x0`-exponents below `d`; that is the normal form used throughout.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_traits::Zero;

use crate::complex::{StructureSheaf, TotalComplex};
use crate::poly::{Exponent, HomogeneousPoly, LaurentPoly, Rational};
use crate::{Error, Result};

/// A strictly increasing tuple `(i₀ < ⋯ < i_p)` of chart indices in `1..=n`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CechIndex(Vec<usize>);

impl CechIndex {
    pub fn new(indices: Vec<usize>, n: usize) -> Result<Self> {
        if indices.is_empty() {
            return Err(Error::InvalidInput("empty Čech index".into()));
        }
        if indices.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidInput(format!(
                "Čech index {indices:?} is not strictly increasing"
            )));
        }
        if indices.iter().any(|&i| i == 0 || i > n) {
            return Err(Error::InvalidInput(format!(
                "Čech index {indices:?} leaves the range 1..={n}"
            )));
        }
        Ok(CechIndex(indices))
    }

    /// `(1, 2, …, n)`.
    pub fn full(n: usize) -> Self {
        CechIndex((1..=n).collect())
    }

    /// All indices of Čech degree `p` (length `p + 1`) in lexicographic order.
    pub fn all(n: usize, p: usize) -> Vec<CechIndex> {
        let k = p + 1;
        let mut out = Vec::new();
        if k > n {
            return out;
        }
        let mut cur: Vec<usize> = (1..=k).collect();
        loop {
            out.push(CechIndex(cur.clone()));
            // advance to the next k-subset of 1..=n
            let mut i = k;
            while i > 0 && cur[i - 1] == n - (k - i) {
                i -= 1;
            }
            if i == 0 {
                return out;
            }
            cur[i - 1] += 1;
            for j in i..k {
                cur[j] = cur[j - 1] + 1;
            }
        }
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Čech degree `p` (one less than the length).
    pub fn degree(&self) -> usize {
        self.0.len() - 1
    }

    pub fn contains(&self, j: usize) -> bool {
        self.0.binary_search(&j).is_ok()
    }

    /// The index with its `k`-th entry removed.
    pub fn omit(&self, k: usize) -> CechIndex {
        let mut v = self.0.clone();
        v.remove(k);
        CechIndex(v)
    }

    /// Inserts `j ∉ self`; returns the new index and the position of `j`.
    pub fn insert(&self, j: usize) -> (CechIndex, usize) {
        let pos = self.0.binary_search(&j).expect_err("index already present");
        let mut v = self.0.clone();
        v.insert(pos, j);
        (CechIndex(v), pos)
    }

    /// True iff `e` only inverts variables in this index (never `x0`).
    pub fn admits(&self, e: &Exponent) -> bool {
        e.as_slice()
            .iter()
            .enumerate()
            .all(|(j, &a)| a >= 0 || (j > 0 && self.contains(j)))
    }
}

impl fmt::Display for CechIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (k, i) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{i}")?;
        }
        f.write_str(")")
    }
}

/// Normal forms modulo `F` via the rewrite `x0^d → x0^d - F/c`.
#[derive(Debug, Clone)]
pub struct FReducer {
    degree: i64,
    /// `x0^d ≡ tail (mod F)`; every term of `tail` has `x0`-exponent below `d`.
    tail: LaurentPoly,
}

impl FReducer {
    pub fn new(f: &HomogeneousPoly) -> Result<Self> {
        let c = f.leading_x0_coefficient();
        if c.is_zero() {
            return Err(Error::CoverViolated);
        }
        let d = f.degree();
        let mut lead = Exponent::zero(f.nvars());
        lead.set(0, d as i32);
        let mut rest = f.as_poly().clone();
        rest.add_term(lead, -c.clone());
        Ok(FReducer {
            degree: d,
            tail: rest.scale(&-c.recip()),
        })
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn nvars(&self) -> usize {
        self.tail.nvars()
    }

    pub fn reduce(&self, p: &LaurentPoly) -> LaurentPoly {
        let nvars = p.nvars();
        let d = self.degree as i32;
        let mut pending = p.clone().into_terms();
        let mut done = LaurentPoly::zero(nvars);
        // lexicographic order puts the largest x0-exponent last
        while let Some((e, c)) = pending.pop_last() {
            if e.get(0) < d {
                done.add_term(e, c);
                for (e, c) in core::mem::take(&mut pending) {
                    done.add_term(e, c);
                }
                break;
            }
            let mut shift = e;
            shift.set(0, shift.get(0) - d);
            for (te, tc) in self.tail.terms() {
                let key = te.add(&shift);
                let v = pending.entry(key).or_insert_with(Rational::zero);
                *v += tc * &c;
                if v.is_zero() {
                    let key = te.add(&shift);
                    pending.remove(&key);
                }
            }
        }
        done
    }

    pub fn is_reduced(&self, p: &LaurentPoly) -> bool {
        p.terms().all(|(e, _)| (e.get(0) as i64) < self.degree)
    }
}

/// The unique representative of `p` modulo `F` with `x0`-exponents below `deg F`.
pub fn reduce_mod_f(p: &LaurentPoly, f: &HomogeneousPoly) -> Result<LaurentPoly> {
    p.try_same_ring(f.as_poly())?;
    Ok(FReducer::new(f)?.reduce(p))
}

/// A Čech `p`-cochain of `O_X`: one degree-0 section per index of length `p + 1`.
/// Missing indices carry the zero section.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FunctionCochain {
    n: usize,
    degree: usize,
    entries: BTreeMap<CechIndex, LaurentPoly>,
}

impl FunctionCochain {
    pub fn zero(n: usize, degree: usize) -> Self {
        FunctionCochain {
            n,
            degree,
            entries: BTreeMap::new(),
        }
    }

    /// Validates index lengths, degree-0 entries and admissible denominators.
    pub fn new(n: usize, degree: usize, entries: BTreeMap<CechIndex, LaurentPoly>) -> Result<Self> {
        for (idx, p) in &entries {
            if idx.len() != degree + 1 || idx.as_slice().iter().any(|&i| i > n) {
                return Err(Error::InvalidInput(format!(
                    "index {idx} does not belong to a {degree}-cochain on {n} charts"
                )));
            }
            if p.nvars() != n + 1 {
                return Err(Error::RingMismatch {
                    left: p.nvars(),
                    right: n + 1,
                });
            }
            if !p.is_zero() && p.total_degree() != Some(0) {
                return Err(Error::WrongDegree {
                    expected: 0,
                    found: p.terms().next().map(|(e, _)| e.degree()).unwrap_or(0),
                });
            }
            if !p.terms().all(|(e, _)| idx.admits(e)) {
                return Err(Error::Inadmissible {
                    index: format!("{idx}"),
                });
            }
        }
        Ok(Self::from_entries(n, degree, entries))
    }

    pub(crate) fn from_entries(
        n: usize,
        degree: usize,
        entries: BTreeMap<CechIndex, LaurentPoly>,
    ) -> Self {
        let entries = entries.into_iter().filter(|(_, p)| !p.is_zero()).collect();
        FunctionCochain { n, degree, entries }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn entry(&self, idx: &CechIndex) -> LaurentPoly {
        self.entries
            .get(idx)
            .cloned()
            .unwrap_or_else(|| LaurentPoly::zero(self.n + 1))
    }

    /// Nonzero entries.
    pub fn entries(&self) -> impl Iterator<Item = (&CechIndex, &LaurentPoly)> {
        self.entries.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn reduce(&self, reducer: &FReducer) -> FunctionCochain {
        Self::from_entries(
            self.n,
            self.degree,
            self.entries
                .iter()
                .map(|(i, p)| (i.clone(), reducer.reduce(p)))
                .collect(),
        )
    }

    pub fn scale(&self, c: &Rational) -> FunctionCochain {
        Self::from_entries(
            self.n,
            self.degree,
            self.entries.iter().map(|(i, p)| (i.clone(), p.scale(c))).collect(),
        )
    }

    pub fn add(&self, other: &FunctionCochain) -> FunctionCochain {
        assert_eq!((self.n, self.degree), (other.n, other.degree));
        let mut entries = self.entries.clone();
        for (i, p) in &other.entries {
            let e = entries
                .entry(i.clone())
                .or_insert_with(|| LaurentPoly::zero(self.n + 1));
            *e += p;
        }
        Self::from_entries(self.n, self.degree, entries)
    }
}

/// `(δc)_{i₀…i_{p+1}} = Σₖ (-1)^k c_{i₀…îₖ…i_{p+1}}`, entries F-reduced.
/// Above the top degree `n - 1` the result is the empty cochain.
pub fn cech_differential(c: &FunctionCochain, reducer: &FReducer) -> FunctionCochain {
    let n = c.n;
    let mut entries = BTreeMap::new();
    for idx in CechIndex::all(n, c.degree + 1) {
        let mut acc = LaurentPoly::zero(n + 1);
        for k in 0..idx.len() {
            if let Some(p) = c.entries.get(&idx.omit(k)) {
                if k % 2 == 0 {
                    acc += p;
                } else {
                    acc -= p;
                }
            }
        }
        entries.insert(idx, reducer.reduce(&acc));
    }
    FunctionCochain::from_entries(n, c.degree + 1, entries)
}

pub fn is_cocycle(c: &FunctionCochain, reducer: &FReducer) -> bool {
    cech_differential(c, reducer).is_zero()
}

/// The exponent `(n, -1, …, -1)` of `x0^n / (x1 ⋯ xn)`.
pub fn top_monomial(n: usize) -> Exponent {
    let mut e = alloc::vec![-1; n + 1];
    e[0] = n as i32;
    Exponent::new(e)
}

/// Coefficient of `x0^n / (x1 ⋯ xn)` in the reduced entry `c_{(1,…,n)}` of a
/// top-degree cochain. Every reduced coboundary has, in each term, some
/// `xᵢ` with nonnegative exponent, so the value depends only on the class in
/// `H^{n-1}(O_X)`; for `deg F = n + 1` it is a coordinate on that line.
pub fn top_coefficient_functional(c: &FunctionCochain, f: &HomogeneousPoly) -> Result<Rational> {
    let n = c.n;
    if f.degree() != n as i64 + 1 {
        return Err(Error::WrongDegree {
            expected: n as i64 + 1,
            found: f.degree(),
        });
    }
    if c.degree + 1 != n {
        return Err(Error::WrongDegree {
            expected: n as i64 - 1,
            found: c.degree as i64,
        });
    }
    let reducer = FReducer::new(f)?;
    let entry = reducer.reduce(&c.entry(&CechIndex::full(n)));
    Ok(entry.coefficient_of(&top_monomial(n)))
}

fn binomial(a: i64, b: i64) -> u128 {
    if b < 0 || a < b {
        return 0;
    }
    let b = b.min(a - b) as u128;
    let a = a as u128;
    let mut acc: u128 = 1;
    for i in 1..=b {
        acc = acc * (a - b + i) / i;
    }
    acc
}

/// `dim H^q(Pⁿ, O(k))` from the monomial count.
pub fn pn_cohomology_dim(n: usize, k: i64, q: usize) -> u128 {
    let ni = n as i64;
    if q == 0 && k >= 0 {
        binomial(ni + k, ni)
    } else if q == n && k <= -ni - 1 {
        binomial(-k - 1, ni)
    } else {
        0
    }
}

/// Dimensions `q ↦ dim H^q`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CohomologyDims(pub BTreeMap<usize, u128>);

impl CohomologyDims {
    pub fn get(&self, q: usize) -> u128 {
        self.0.get(&q).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, u128)> + '_ {
        self.0.iter().map(|(q, d)| (*q, *d))
    }
}

/// `dim H^q(X, O_X)` for a degree-`d` hypersurface in `Pⁿ`, from
/// `0 → O(-d) → O → O_X → 0`. Multiplication by `F` is zero on cohomology
/// here (its source or target always vanishes), so
/// `h^q(O_X) = h^q(O) + h^{q+1}(O(-d))`.
pub fn hypersurface_o_cohomology_dims(n: usize, d: u32) -> Result<CohomologyDims> {
    if n < 1 || d < 1 {
        return Err(Error::InvalidInput(format!(
            "need n ≥ 1 and d ≥ 1, got n = {n}, d = {d}"
        )));
    }
    let dims = (0..n)
        .map(|q| {
            (
                q,
                pn_cohomology_dim(n, 0, q) + pn_cohomology_dim(n, -(d as i64), q + 1),
            )
        })
        .collect();
    Ok(CohomologyDims(dims))
}

/// Default cap on the size of a truncated cochain basis.
pub const DEFAULT_MAX_BASIS: usize = 400_000;

/// A dimension computed on a truncated complex.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Truncated {
    pub dim: usize,
    pub bound: usize,
    /// The same dimension came out at `bound + 1`.
    pub stabilized: bool,
}

/// `dim H^q(O_X)` by exact rank computations on the truncated Čech complex,
/// checked again at `bound + 1`.
pub fn truncated_cohomology_dim(f: &HomogeneousPoly, q: usize, bound: usize) -> Result<Truncated> {
    truncated_cohomology_dim_capped(f, q, bound, DEFAULT_MAX_BASIS)
}

pub fn truncated_cohomology_dim_capped(
    f: &HomogeneousPoly,
    q: usize,
    bound: usize,
    max_dim: usize,
) -> Result<Truncated> {
    let reducer = FReducer::new(f)?;
    let cx = StructureSheaf::new();
    let at = |b: usize| {
        TotalComplex {
            cx: &cx,
            reducer: &reducer,
            n: f.n(),
            bound: b,
            max_dim,
        }
        .cohomology_dim(q as i64)
    };
    let dim = at(bound)?;
    let next = at(bound + 1)?;
    Ok(Truncated {
        dim,
        bound,
        stabilized: dim == next,
    })
}

/// Compact description of a cochain, one entry per line.
pub fn describe(c: &FunctionCochain) -> String {
    let mut s = String::new();
    for (i, p) in c.entries() {
        s.push_str(&format!("{i}: {p}\n"));
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{fermat, parse_poly, rat};
    use alloc::vec;

    fn p4(s: &str) -> LaurentPoly {
        parse_poly(s, 4).unwrap()
    }

    #[test]
    fn index_enumeration() {
        assert_eq!(CechIndex::all(4, 0).len(), 4);
        assert_eq!(CechIndex::all(4, 1).len(), 6);
        assert_eq!(CechIndex::all(4, 3), vec![CechIndex::full(4)]);
        assert!(CechIndex::all(4, 4).is_empty());
        assert!(CechIndex::new(vec![2, 1], 4).is_err());
        assert!(CechIndex::new(vec![0, 1], 4).is_err());
    }

    #[test]
    fn reduction_examples() {
        let f = fermat(4, 5);
        assert_eq!(
            reduce_mod_f(&p4("x0^5"), &f).unwrap(),
            p4("-x1^5 - x2^5 - x3^5 - x4^5")
        );
        assert_eq!(reduce_mod_f(&p4("x0^4"), &f).unwrap(), p4("x0^4"));
        let p = p4("x0^6 x1^-1");
        let r = reduce_mod_f(&p, &f).unwrap();
        assert_eq!(r, p4("-x0 x1^4 - x0 x1^-1 x2^5 - x0 x1^-1 x3^5 - x0 x1^-1 x4^5"));
        // p - r = (x0 x1^-1) F
        assert_eq!(&p - &r, &p4("x0 x1^-1") * f.as_poly());
    }

    #[test]
    fn reduction_needs_the_cover() {
        let f = HomogeneousPoly::parse("x1^5 + x2^5 + x3^5 + x4^5", 4).unwrap();
        assert_eq!(reduce_mod_f(&p4("x0^5"), &f), Err(Error::CoverViolated));
    }

    #[test]
    fn differential_of_chart_ratios() {
        let f = fermat(4, 5);
        let red = FReducer::new(&f).unwrap();
        let c = FunctionCochain::new(
            4,
            0,
            (1..=4)
                .map(|i| {
                    (
                        CechIndex::new(vec![i], 4).unwrap(),
                        p4(&alloc::format!("x0 x{i}^-1")),
                    )
                })
                .collect(),
        )
        .unwrap();
        let dc = cech_differential(&c, &red);
        assert_eq!(
            dc.entry(&CechIndex::new(vec![1, 2], 4).unwrap()),
            p4("x0 x2^-1 - x0 x1^-1")
        );
        assert!(!is_cocycle(&c, &red));
        assert!(is_cocycle(&dc, &red));
        assert!(cech_differential(&dc, &red).is_zero());
    }

    #[test]
    fn top_degree_boundary_is_empty() {
        let f = fermat(4, 5);
        let red = FReducer::new(&f).unwrap();
        let mut e = BTreeMap::new();
        e.insert(CechIndex::full(4), p4("x0^4 x1^-1 x2^-1 x3^-1 x4^-1"));
        let top = FunctionCochain::new(4, 3, e).unwrap();
        let d = cech_differential(&top, &red);
        assert!(d.is_zero() && d.degree() == 4);
        assert!(is_cocycle(&top, &red));
    }

    #[test]
    fn admissibility_is_enforced() {
        let mut e = BTreeMap::new();
        e.insert(CechIndex::new(vec![1], 4).unwrap(), p4("x2 x1^-1"));
        assert!(FunctionCochain::new(4, 0, e.clone()).is_ok());
        e.insert(CechIndex::new(vec![2], 4).unwrap(), p4("x2 x1^-1"));
        assert!(matches!(
            FunctionCochain::new(4, 0, e),
            Err(Error::Inadmissible { .. })
        ));
        let mut e = BTreeMap::new();
        e.insert(CechIndex::new(vec![1], 4).unwrap(), p4("x1^-1"));
        assert!(matches!(
            FunctionCochain::new(4, 0, e),
            Err(Error::WrongDegree { .. })
        ));
    }

    #[test]
    fn functional_values() {
        let f = fermat(4, 5);
        let top = |s: &str| {
            let mut e = BTreeMap::new();
            e.insert(CechIndex::full(4), p4(s));
            FunctionCochain::new(4, 3, e).unwrap()
        };
        assert_eq!(
            top_coefficient_functional(&top("5 x0^4 x1^-1 x2^-1 x3^-1 x4^-1"), &f).unwrap(),
            rat(5)
        );
        assert_eq!(
            top_coefficient_functional(&top("x1^3 x2^-1 x3^-1 x4^-1"), &f).unwrap(),
            rat(0)
        );
        assert!(matches!(
            top_coefficient_functional(&top("x1^3 x2^-1 x3^-1 x4^-1"), &fermat(4, 4)),
            Err(Error::WrongDegree { .. })
        ));
    }

    #[test]
    fn projective_space_dims() {
        assert_eq!(pn_cohomology_dim(4, -5, 4), 1);
        assert_eq!(pn_cohomology_dim(2, -3, 2), 1);
        assert_eq!(pn_cohomology_dim(3, 2, 0), 10);
        assert_eq!(pn_cohomology_dim(3, 2, 1), 0);
        assert_eq!(pn_cohomology_dim(2, -1, 2), 0);
    }

    #[test]
    fn hypersurface_dims() {
        let d = hypersurface_o_cohomology_dims(4, 5).unwrap();
        assert_eq!(d.0, [(0, 1), (1, 0), (2, 0), (3, 1)].into_iter().collect());
        assert_eq!(hypersurface_o_cohomology_dims(4, 4).unwrap().get(3), 0);
        let k3 = hypersurface_o_cohomology_dims(3, 4).unwrap();
        assert_eq!(k3.0, [(0, 1), (1, 0), (2, 1)].into_iter().collect());
    }

    #[test]
    fn truncated_dims_for_fermat_quintic() {
        let f = fermat(4, 5);
        assert_eq!(
            truncated_cohomology_dim(&f, 3, 5).unwrap(),
            Truncated { dim: 1, bound: 5, stabilized: true }
        );
        assert_eq!(truncated_cohomology_dim(&f, 1, 5).unwrap().dim, 0);
        for b in 0..3 {
            assert_eq!(truncated_cohomology_dim(&f, 0, b).unwrap().dim, 1);
        }
    }
}
