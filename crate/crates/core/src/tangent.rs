//! Čech cochains of vector fields representing classes in `H^*(T_X)`.
//!
//! A section of `T_X` over `U_S` is written in homogeneous coordinates as
//! `Σⱼ gⱼ ∂ⱼ` with each `gⱼ` of degree 1, tangent to `X` (`Σ gⱼ ∂ⱼF ∈ (F)`),
//! and taken modulo `F` and modulo multiples `h·E` of the Euler field
//! `E = Σ xⱼ ∂ⱼ` by degree-0 functions `h`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;

use num_traits::Zero;

use crate::cech::{CechIndex, FReducer, FunctionCochain, Truncated, DEFAULT_MAX_BASIS};
use crate::complex::{TangentComplex, TotalComplex};
use crate::poly::{rat, Exponent, HomogeneousPoly, LaurentPoly, Rational};
use crate::{Error, Result};

/// Components `(g₀, …, gₙ)` of the field `Σ gⱼ ∂ⱼ`.
pub type Field = Vec<LaurentPoly>;

/// The Euler field `E = Σ xⱼ ∂ⱼ`.
pub fn euler_field(n: usize) -> Field {
    (0..=n).map(|j| LaurentPoly::var(n + 1, j)).collect()
}

/// `D(p) = Σ gⱼ ∂ⱼp`.
pub fn apply_field(field: &[LaurentPoly], p: &LaurentPoly) -> LaurentPoly {
    let mut out = LaurentPoly::zero(p.nvars());
    for (j, g) in field.iter().enumerate() {
        if !g.is_zero() {
            out += &(g * &p.partial_derivative(j));
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VectorFieldCochain {
    n: usize,
    degree: usize,
    entries: BTreeMap<CechIndex, Field>,
}

impl VectorFieldCochain {
    pub fn zero(n: usize, degree: usize) -> Self {
        VectorFieldCochain {
            n,
            degree,
            entries: BTreeMap::new(),
        }
    }

    /// Validates lengths, degree-1 components and admissible denominators.
    pub fn new(n: usize, degree: usize, entries: BTreeMap<CechIndex, Field>) -> Result<Self> {
        for (idx, field) in &entries {
            if idx.len() != degree + 1 || idx.as_slice().iter().any(|&i| i > n) {
                return Err(Error::InvalidInput(format!(
                    "index {idx} does not belong to a {degree}-cochain on {n} charts"
                )));
            }
            if field.len() != n + 1 {
                return Err(Error::InvalidInput(format!(
                    "field at {idx} has {} components, expected {}",
                    field.len(),
                    n + 1
                )));
            }
            for g in field {
                if g.nvars() != n + 1 {
                    return Err(Error::RingMismatch {
                        left: g.nvars(),
                        right: n + 1,
                    });
                }
                if !g.is_zero() && g.total_degree() != Some(1) {
                    return Err(Error::WrongDegree {
                        expected: 1,
                        found: g.terms().next().map(|(e, _)| e.degree()).unwrap_or(0),
                    });
                }
                if !g.terms().all(|(e, _)| idx.admits(e)) {
                    return Err(Error::Inadmissible {
                        index: format!("{idx}"),
                    });
                }
            }
        }
        Ok(Self::from_entries(n, degree, entries))
    }

    pub(crate) fn from_entries(n: usize, degree: usize, entries: BTreeMap<CechIndex, Field>) -> Self {
        let entries = entries
            .into_iter()
            .filter(|(_, f)| f.iter().any(|g| !g.is_zero()))
            .collect();
        VectorFieldCochain { n, degree, entries }
    }

    /// The cochain `h·E`, for a function cochain `h`.
    pub fn euler_multiple(h: &FunctionCochain) -> Self {
        let n = h.n();
        let e = euler_field(n);
        Self::from_entries(
            n,
            h.degree(),
            h.entries()
                .map(|(i, p)| (i.clone(), e.iter().map(|x| p * x).collect()))
                .collect(),
        )
    }

    /// A global field restricted to every chart, as a 0-cochain.
    pub fn global(n: usize, field: Field) -> Self {
        Self::from_entries(
            n,
            0,
            CechIndex::all(n, 0)
                .into_iter()
                .map(|i| (i, field.clone()))
                .collect(),
        )
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn entry(&self, idx: &CechIndex) -> Field {
        self.entries
            .get(idx)
            .cloned()
            .unwrap_or_else(|| alloc::vec![LaurentPoly::zero(self.n + 1); self.n + 1])
    }

    pub fn entries(&self) -> impl Iterator<Item = (&CechIndex, &Field)> {
        self.entries.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        self.map(|g| g.scale(c))
    }

    fn map(&self, f: impl Fn(&LaurentPoly) -> LaurentPoly) -> Self {
        Self::from_entries(
            self.n,
            self.degree,
            self.entries
                .iter()
                .map(|(i, fld)| (i.clone(), fld.iter().map(&f).collect()))
                .collect(),
        )
    }

    pub fn reduce(&self, reducer: &FReducer) -> Self {
        self.map(|g| reducer.reduce(g))
    }

    pub fn add(&self, other: &Self) -> Self {
        self.combine(other, false)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.combine(other, true)
    }

    fn combine(&self, other: &Self, negate: bool) -> Self {
        assert_eq!((self.n, self.degree), (other.n, other.degree));
        let mut entries = self.entries.clone();
        for (i, fld) in &other.entries {
            let acc = entries
                .entry(i.clone())
                .or_insert_with(|| alloc::vec![LaurentPoly::zero(self.n + 1); self.n + 1]);
            for (a, g) in acc.iter_mut().zip(fld) {
                if negate {
                    *a -= g;
                } else {
                    *a += g;
                }
            }
        }
        Self::from_entries(self.n, self.degree, entries)
    }
}

fn check_generator_hypotheses(f: &HomogeneousPoly, n: usize) -> Result<()> {
    if f.n() != n {
        return Err(Error::Hypothesis(format!(
            "F has {} variables but n = {n}",
            f.nvars()
        )));
    }
    if n < 3 {
        return Err(Error::Hypothesis(format!("n = {n} is below 3")));
    }
    if f.degree() != n as i64 + 1 {
        return Err(Error::WrongDegree {
            expected: n as i64 + 1,
            found: f.degree(),
        });
    }
    if f.leading_x0_coefficient().is_zero() {
        return Err(Error::CoverViolated);
    }
    Ok(())
}

/// The `(n-2)`-cocycle whose component on the index omitting `i` is
/// `(-1)^i ((∂₀F)∂ᵢ - (∂ᵢF)∂₀) / (x₁ ⋯ x̂ᵢ ⋯ xₙ)`.
pub fn generating_field(f: &HomogeneousPoly, n: usize) -> Result<VectorFieldCochain> {
    check_generator_hypotheses(f, n)?;
    let nvars = n + 1;
    let d0 = f.partial_derivative(0);
    let full = CechIndex::full(n);
    let mut entries = BTreeMap::new();
    for i in 1..=n {
        let idx = full.omit(i - 1);
        let mut denom = Exponent::zero(nvars);
        for &j in idx.as_slice() {
            denom.set(j, -1);
        }
        let sign = if i % 2 == 0 { rat(1) } else { rat(-1) };
        let mut field = alloc::vec![LaurentPoly::zero(nvars); nvars];
        field[i] = d0.shift(&denom).scale(&sign);
        field[0] = f.partial_derivative(i).shift(&denom).scale(&-sign);
        entries.insert(idx, field);
    }
    Ok(VectorFieldCochain::from_entries(n, n - 2, entries))
}

/// Every component maps `F` into `(F)`.
pub fn tangency_check(v: &VectorFieldCochain, f: &HomogeneousPoly) -> Result<bool> {
    let reducer = FReducer::new(f)?;
    Ok(v
        .entries()
        .all(|(_, fld)| reducer.reduce(&apply_field(fld, f.as_poly())).is_zero()))
}

/// Alternating-sum Čech differential on each component, reduced mod `F`.
pub fn vf_differential(v: &VectorFieldCochain, reducer: &FReducer) -> VectorFieldCochain {
    let n = v.n;
    let nvars = n + 1;
    let mut entries = BTreeMap::new();
    for idx in CechIndex::all(n, v.degree + 1) {
        let mut acc = alloc::vec![LaurentPoly::zero(nvars); nvars];
        for k in 0..idx.len() {
            if let Some(fld) = v.entries.get(&idx.omit(k)) {
                for (a, g) in acc.iter_mut().zip(fld) {
                    if k % 2 == 0 {
                        *a += g;
                    } else {
                        *a -= g;
                    }
                }
            }
        }
        entries.insert(idx, acc.iter().map(|g| reducer.reduce(g)).collect());
    }
    VectorFieldCochain::from_entries(n, v.degree + 1, entries)
}

/// Canonical representative modulo `(F, E)`: on index `S` the component of
/// the smallest chart `j ∈ S` is cleared by subtracting `(gⱼ/xⱼ)·E`, which is
/// possible because `xⱼ` is a unit on `U_S`.
pub fn euler_normal_form(v: &VectorFieldCochain, reducer: &FReducer) -> VectorFieldCochain {
    let nvars = v.n + 1;
    let entries = v
        .entries
        .iter()
        .map(|(idx, fld)| {
            let j = idx.as_slice()[0];
            let fld: Field = fld.iter().map(|g| reducer.reduce(g)).collect();
            let mut inv = Exponent::zero(nvars);
            inv.set(j, -1);
            let h = reducer.reduce(&fld[j].shift(&inv));
            let out = fld
                .iter()
                .enumerate()
                .map(|(k, g)| {
                    let mut r = g.clone();
                    r -= &h.shift(&Exponent::unit(nvars, k));
                    reducer.reduce(&r)
                })
                .collect();
            (idx.clone(), out)
        })
        .collect();
    VectorFieldCochain::from_entries(v.n, v.degree, entries)
}

/// Decides whether `v - w` is, on every index, `h·E` plus multiples of `F`.
pub fn euler_equivalence(
    v: &VectorFieldCochain,
    w: &VectorFieldCochain,
    f: &HomogeneousPoly,
) -> Result<bool> {
    if (v.n, v.degree) != (w.n, w.degree) {
        return Err(Error::InvalidInput(
            "cochains of different degrees cannot be compared".into(),
        ));
    }
    let reducer = FReducer::new(f)?;
    Ok(euler_normal_form(&v.sub(w), &reducer).is_zero())
}

/// `δv ≡ 0` modulo `(F, E)`.
pub fn is_cocycle_mod_euler(v: &VectorFieldCochain, f: &HomogeneousPoly) -> Result<bool> {
    let reducer = FReducer::new(f)?;
    Ok(euler_normal_form(&vf_differential(v, &reducer), &reducer).is_zero())
}

/// `dim H^q(T_X)` on the bound-`B` truncation of the Čech double complex of
/// `O_X → O_X(1)^{n+1} → O_X(d)`, checked again at `B + 1`.
pub fn truncated_h_tangent(f: &HomogeneousPoly, q: usize, bound: usize) -> Result<Truncated> {
    truncated_h_tangent_capped(f, q, bound, DEFAULT_MAX_BASIS)
}

pub fn truncated_h_tangent_capped(
    f: &HomogeneousPoly,
    q: usize,
    bound: usize,
    max_dim: usize,
) -> Result<Truncated> {
    let reducer = FReducer::new(f)?;
    let cx = TangentComplex::new(f);
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

/// Sum of `c · x^mono ∂_comp` over the given terms, as a cochain of degree `p`.
pub(crate) fn cochain_from_terms<'a, I>(n: usize, degree: usize, terms: I) -> VectorFieldCochain
where
    I: IntoIterator<Item = (&'a CechIndex, usize, &'a Exponent, Rational)>,
{
    let nvars = n + 1;
    let mut entries: BTreeMap<CechIndex, Field> = BTreeMap::new();
    for (idx, comp, mono, c) in terms {
        let fld = entries
            .entry(idx.clone())
            .or_insert_with(|| alloc::vec![LaurentPoly::zero(nvars); nvars]);
        fld[comp].add_term(mono.clone(), c);
    }
    VectorFieldCochain::from_entries(n, degree, entries)
}
