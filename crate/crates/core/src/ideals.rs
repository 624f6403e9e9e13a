//! Gröbner bases over `Q` and the standing hypotheses on a hypersurface.
//!
//! Smoothness of `X = V(F)` is decided with the Jacobian criterion: in
//! characteristic zero `X` is smooth iff the ideal `(∂₀F, …, ∂ₙF)` has only the
//! origin as common zero, i.e. iff the leading terms of a Gröbner basis
//! contain a pure power of every variable.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::cmp::Ordering;

use num_traits::Zero;

use crate::poly::{Exponent, HomogeneousPoly, LaurentPoly, Rational};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MonomialOrder {
    Lex,
    GrLex,
    GrevLex,
}

impl MonomialOrder {
    pub fn cmp(self, a: &Exponent, b: &Exponent) -> Ordering {
        match self {
            MonomialOrder::Lex => a.cmp(b),
            MonomialOrder::GrLex => a.degree().cmp(&b.degree()).then_with(|| a.cmp(b)),
            MonomialOrder::GrevLex => a.degree().cmp(&b.degree()).then_with(|| {
                let (a, b) = (a.as_slice(), b.as_slice());
                for i in (0..a.len()).rev() {
                    if a[i] != b[i] {
                        return b[i].cmp(&a[i]);
                    }
                }
                Ordering::Equal
            }),
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct GroebnerConfig {
    pub order: MonomialOrder,
    /// Maximum number of S-pair reductions before giving up.
    pub step_cap: usize,
}

impl Default for GroebnerConfig {
    fn default() -> Self {
        GroebnerConfig {
            order: MonomialOrder::GrevLex,
            step_cap: 1_000_000,
        }
    }
}

/// An ideal of `Q[x0..xn]` given by generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ideal {
    nvars: usize,
    generators: Vec<LaurentPoly>,
}

impl Ideal {
    pub fn new(generators: Vec<LaurentPoly>) -> Result<Self> {
        let nvars = match generators.first() {
            Some(g) => g.nvars(),
            None => return Err(Error::InvalidInput("an ideal needs a generator".into())),
        };
        for g in &generators {
            if g.nvars() != nvars {
                return Err(Error::RingMismatch {
                    left: nvars,
                    right: g.nvars(),
                });
            }
            if !g.is_polynomial() {
                return Err(Error::InvalidInput(
                    "ideal generators must not have negative exponents".into(),
                ));
            }
        }
        Ok(Ideal { nvars, generators })
    }

    /// The Jacobian ideal `(∂₀F, …, ∂ₙF)`, zero partials omitted.
    pub fn jacobian(f: &HomogeneousPoly) -> Result<Self> {
        let partials: Vec<_> = (0..f.nvars())
            .map(|i| f.partial_derivative(i))
            .filter(|p| !p.is_zero())
            .collect();
        if partials.is_empty() {
            return Err(Error::InvalidInput("F has no nonzero partial derivative".into()));
        }
        Self::new(partials)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn generators(&self) -> &[LaurentPoly] {
        &self.generators
    }

    pub fn is_homogeneous(&self) -> bool {
        self.generators
            .iter()
            .all(|g| g.is_zero() || HomogeneousPoly::from_poly(g.clone()).is_ok())
    }
}

/// Terms sorted by decreasing monomial order.
#[derive(Debug, Clone)]
struct OrderedPoly(Vec<(Exponent, Rational)>);

impl OrderedPoly {
    fn from_poly(p: &LaurentPoly, order: MonomialOrder) -> Self {
        let mut terms: Vec<_> = p.terms().map(|(e, c)| (e.clone(), c.clone())).collect();
        terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
        OrderedPoly(terms)
    }

    fn to_poly(&self, nvars: usize) -> LaurentPoly {
        LaurentPoly::from_terms(nvars, self.0.iter().cloned())
    }

    fn lead(&self) -> &Exponent {
        &self.0[0].0
    }

    fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    fn make_monic(&mut self) {
        if let Some((_, lc)) = self.0.first() {
            let inv = lc.recip();
            for (_, c) in &mut self.0 {
                *c *= &inv;
            }
        }
    }

    /// `self - c · x^shift · g`, merged in order.
    fn sub_mul(&self, c: &Rational, shift: &Exponent, g: &OrderedPoly, order: MonomialOrder) -> Self {
        let mut out = Vec::with_capacity(self.0.len() + g.0.len());
        let mut a = self.0.iter().peekable();
        let mut b = g.0.iter().map(|(e, x)| (e.add(shift), x * c)).peekable();
        loop {
            let ord = match (a.peek(), b.peek()) {
                (None, None) => break,
                (Some(_), None) => Ordering::Greater,
                (None, Some(_)) => Ordering::Less,
                (Some((ea, _)), Some((eb, _))) => order.cmp(ea, eb),
            };
            match ord {
                Ordering::Greater => out.push(a.next().unwrap().clone()),
                Ordering::Less => {
                    let (e, x) = b.next().unwrap();
                    out.push((e, -x));
                }
                Ordering::Equal => {
                    let (e, x) = a.next().unwrap();
                    let (_, y) = b.next().unwrap();
                    let s = x - y;
                    if !s.is_zero() {
                        out.push((e.clone(), s));
                    }
                }
            }
        }
        OrderedPoly(out)
    }
}

/// A reduced Gröbner basis: monic, sorted by increasing leading monomial.
#[derive(Debug, Clone)]
pub struct GroebnerBasis {
    nvars: usize,
    order: MonomialOrder,
    basis: Vec<OrderedPoly>,
}

impl GroebnerBasis {
    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn polynomials(&self) -> Vec<LaurentPoly> {
        self.basis.iter().map(|g| g.to_poly(self.nvars)).collect()
    }

    pub fn leading_monomials(&self) -> Vec<Exponent> {
        self.basis.iter().map(|g| g.lead().clone()).collect()
    }

    /// True iff for every variable some leading monomial is a pure power of it.
    pub fn has_pure_powers(&self) -> bool {
        (0..self.nvars).all(|i| {
            self.basis.iter().any(|g| {
                g.lead()
                    .as_slice()
                    .iter()
                    .enumerate()
                    .all(|(j, &a)| j == i || a == 0)
            })
        })
    }

    /// Remainder of `p` on division by the basis; zero iff `p` is in the ideal.
    pub fn normal_form(&self, p: &LaurentPoly) -> Result<LaurentPoly> {
        Ok(self.divide(p)?.1)
    }

    /// Multivariate division: `p = Σ qᵢ gᵢ + r` with no term of `r` divisible
    /// by a leading monomial.
    pub fn divide(&self, p: &LaurentPoly) -> Result<(Vec<LaurentPoly>, LaurentPoly)> {
        if p.nvars() != self.nvars {
            return Err(Error::RingMismatch {
                left: p.nvars(),
                right: self.nvars,
            });
        }
        if !p.is_polynomial() {
            return Err(Error::InvalidInput(
                "normal forms need nonnegative exponents".into(),
            ));
        }
        let mut quotients = alloc::vec![LaurentPoly::zero(self.nvars); self.basis.len()];
        let (rem, _) = reduce(
            OrderedPoly::from_poly(p, self.order),
            &self.basis,
            self.order,
            Some(&mut quotients),
        );
        Ok((quotients, rem.to_poly(self.nvars)))
    }
}

/// Fully reduces `p` modulo `basis` (each element monic). Returns the
/// remainder and the number of reduction steps.
fn reduce(
    mut p: OrderedPoly,
    basis: &[OrderedPoly],
    order: MonomialOrder,
    mut quotients: Option<&mut Vec<LaurentPoly>>,
) -> (OrderedPoly, usize) {
    let mut rem = Vec::new();
    let mut steps = 0;
    while let Some((lead, lc)) = p.0.first().cloned() {
        let divisor = basis.iter().position(|g| g.lead().divides(&lead));
        match divisor {
            Some(k) => {
                let g = &basis[k];
                let factor = &lc / &g.0[0].1;
                let shift = lead.sub(g.lead());
                if let Some(q) = quotients.as_deref_mut() {
                    q[k].add_term(shift.clone(), factor.clone());
                }
                p = p.sub_mul(&factor, &shift, g, order);
                steps += 1;
            }
            None => {
                rem.push(p.0.remove(0));
            }
        }
    }
    (OrderedPoly(rem), steps)
}

fn s_polynomial(f: &OrderedPoly, g: &OrderedPoly, order: MonomialOrder) -> OrderedPoly {
    let lcm = f.lead().lcm(g.lead());
    let sf = lcm.sub(f.lead());
    let sg = lcm.sub(g.lead());
    let zero = OrderedPoly(Vec::new());
    let a = zero.sub_mul(&-f.0[0].1.recip(), &sf, f, order);
    a.sub_mul(&g.0[0].1.recip(), &sg, g, order)
}

/// Buchberger's algorithm with the product and chain criteria, selecting
/// pairs by smallest lcm. The output is the reduced basis, so it depends only
/// on the ideal and the order.
pub fn buchberger(ideal: &Ideal, config: &GroebnerConfig) -> Result<GroebnerBasis> {
    let order = config.order;
    let nvars = ideal.nvars;
    let mut basis: Vec<OrderedPoly> = Vec::new();
    for g in ideal.generators() {
        if g.is_zero() {
            continue;
        }
        let mut p = OrderedPoly::from_poly(g, order);
        p.make_monic();
        basis.push(p);
    }
    if basis.is_empty() {
        return Err(Error::InvalidInput("all generators are zero".into()));
    }

    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for j in 0..basis.len() {
        for i in 0..j {
            pairs.push((i, j));
        }
    }
    let mut steps = 0usize;
    loop {
        // smallest lcm first; ties broken by indices so the run is deterministic
        let next = pairs
            .iter()
            .enumerate()
            .min_by(|(_, (i1, j1)), (_, (i2, j2))| {
                let l1 = basis[*i1].lead().lcm(basis[*j1].lead());
                let l2 = basis[*i2].lead().lcm(basis[*j2].lead());
                order.cmp(&l1, &l2).then((i1, j1).cmp(&(i2, j2)))
            })
            .map(|(k, _)| k);
        let Some(k) = next else { break };
        let (i, j) = pairs.swap_remove(k);
        let (li, lj) = (basis[i].lead(), basis[j].lead());
        let lcm = li.lcm(lj);
        if lcm == li.add(lj) {
            continue;
        }
        let chain = (0..basis.len()).any(|m| {
            m != i
                && m != j
                && basis[m].lead().divides(&lcm)
                && !pairs.contains(&(i.min(m), i.max(m)))
                && !pairs.contains(&(j.min(m), j.max(m)))
        });
        if chain {
            continue;
        }
        steps += 1;
        if steps > config.step_cap {
            return Err(Error::ResourceLimit {
                what: "Buchberger pair reductions",
                cap: config.step_cap,
            });
        }
        let s = s_polynomial(&basis[i], &basis[j], order);
        let (mut r, _) = reduce(s, &basis, order, None);
        if r.is_zero() {
            continue;
        }
        r.make_monic();
        let new = basis.len();
        basis.push(r);
        for m in 0..new {
            pairs.push((m, new));
        }
    }

    // minimal basis, then interreduce
    let mut minimal: Vec<OrderedPoly> = Vec::new();
    for (k, g) in basis.iter().enumerate() {
        let redundant = basis.iter().enumerate().any(|(m, h)| {
            m != k && h.lead().divides(g.lead()) && (h.lead() != g.lead() || m < k)
        });
        if !redundant {
            minimal.push(g.clone());
        }
    }
    let mut reduced = Vec::with_capacity(minimal.len());
    for k in 0..minimal.len() {
        let others: Vec<OrderedPoly> = minimal
            .iter()
            .enumerate()
            .filter(|(m, _)| *m != k)
            .map(|(_, g)| g.clone())
            .collect();
        let g = &minimal[k];
        let head = OrderedPoly(alloc::vec![g.0[0].clone()]);
        let (tail, _) = reduce(OrderedPoly(g.0[1..].to_vec()), &others, order, None);
        let mut terms = head.0;
        terms.extend(tail.0);
        let mut p = OrderedPoly(terms);
        p.make_monic();
        reduced.push(p);
    }
    reduced.sort_by(|a, b| order.cmp(a.lead(), b.lead()));
    Ok(GroebnerBasis {
        nvars,
        order,
        basis: reduced,
    })
}

/// `V(I) ⊆ {0}` for a homogeneous ideal `I`.
pub fn is_irrelevant(ideal: &Ideal, config: &GroebnerConfig) -> Result<bool> {
    if !ideal.is_homogeneous() {
        return Err(Error::NotHomogeneous);
    }
    Ok(buchberger(ideal, config)?.has_pure_powers())
}

/// Outcome of a check that may be cut off by a resource cap.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Check {
    Pass,
    Fail,
    Inconclusive(String),
}

impl Check {
    pub fn from_bool(b: bool) -> Self {
        if b {
            Check::Pass
        } else {
            Check::Fail
        }
    }

    pub fn passed(&self) -> bool {
        matches!(self, Check::Pass)
    }

    /// `Some(bool)` when decided.
    pub fn decided(&self) -> Option<bool> {
        match self {
            Check::Pass => Some(true),
            Check::Fail => Some(false),
            Check::Inconclusive(_) => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HypothesisReport {
    pub n: usize,
    pub degree: i64,
    /// `deg F = n + 1`.
    pub degree_ok: bool,
    /// `F(1, 0, …, 0) ≠ 0`, so `U₁..Uₙ` cover `X`.
    pub cover_ok: bool,
    /// The Jacobian ideal is irrelevant.
    pub smooth_ok: Check,
    /// `n ≥ 4`, or `n = 3` in K3 mode.
    pub n_ok: bool,
    pub k3_mode: bool,
}

impl HypothesisReport {
    pub fn all_ok(&self) -> bool {
        self.degree_ok && self.cover_ok && self.smooth_ok.passed() && self.n_ok
    }

    pub fn any_failed(&self) -> bool {
        !self.degree_ok || !self.cover_ok || !self.n_ok || self.smooth_ok == Check::Fail
    }

    /// Error describing the first failed or undecided hypothesis.
    pub fn require(&self) -> Result<()> {
        if !self.degree_ok {
            return Err(Error::Hypothesis(format!(
                "deg F = {} but n + 1 = {}",
                self.degree,
                self.n + 1
            )));
        }
        if !self.cover_ok {
            return Err(Error::CoverViolated);
        }
        if !self.n_ok {
            return Err(Error::Hypothesis(format!("n = {} is below 3", self.n)));
        }
        match &self.smooth_ok {
            Check::Pass => Ok(()),
            Check::Fail => Err(Error::Hypothesis("X is singular".into())),
            Check::Inconclusive(why) => Err(Error::Hypothesis(format!(
                "smoothness undecided: {why}"
            ))),
        }
    }
}

/// Checks degree, cover admissibility, smoothness and the range of `n`.
pub fn check_hypotheses(f: &HomogeneousPoly, n: usize, config: &GroebnerConfig) -> HypothesisReport {
    let ring_ok = f.n() == n;
    let degree_ok = ring_ok && f.degree() == n as i64 + 1;
    let cover_ok = ring_ok && !f.leading_x0_coefficient().is_zero();
    let smooth_ok = match Ideal::jacobian(f).and_then(|j| is_irrelevant(&j, config)) {
        Ok(b) => Check::from_bool(b),
        Err(Error::ResourceLimit { what, cap }) => {
            Check::Inconclusive(format!("{what} exceeded the cap of {cap}"))
        }
        Err(_) => Check::Fail,
    };
    HypothesisReport {
        n,
        degree: f.degree(),
        degree_ok,
        cover_ok,
        smooth_ok,
        n_ok: ring_ok && n >= 3,
        k3_mode: ring_ok && n == 3,
    }
}
