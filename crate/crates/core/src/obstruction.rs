//! The log-differential obstruction pairing and what it certifies.
//!
//! A derivation cocycle `v` (a class in `H^p(T_X)`) turns a line bundle with
//! transition units `α_ij` into the `(p+1)`-cochain
//! `(v·α)_{i₀…i_{p+1}} = (-1)^p v_{i₀…i_p}(α_{i_p i_{p+1}}) / α_{i_p i_{p+1}}`.
//! For monomial units `c·x^a` the log derivative is `Σⱼ aⱼ gⱼ / xⱼ`, so no
//! rational functions are ever formed. The pairing is `Z`-bilinear, `Q`-linear
//! in `v`, and kills multiples of `F` and of the Euler field.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Zero};

use crate::cech::{
    hypersurface_o_cohomology_dims, top_coefficient_functional, top_monomial,
    truncated_cohomology_dim, CechIndex, FReducer, FunctionCochain, DEFAULT_MAX_BASIS,
};
use crate::complex::{BasisKey, TangentComplex, TotalBasis, TotalComplex};
use crate::ideals::{check_hypotheses, GroebnerConfig};
use crate::linalg::{self, Echelon, SparseVec};
use crate::poly::{rat, rational_string, Exponent, HomogeneousPoly, LaurentPoly, Rational};
use crate::tangent::{cochain_from_terms, generating_field, vf_differential, VectorFieldCochain};
use crate::{Error, Result};

/// A unit `c·x^a` with `c ≠ 0` and `deg a = 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnitMonomial {
    pub coeff: Rational,
    pub exponent: Exponent,
}

impl UnitMonomial {
    pub fn mul(&self, other: &UnitMonomial) -> UnitMonomial {
        UnitMonomial {
            coeff: &self.coeff * &other.coeff,
            exponent: self.exponent.add(&other.exponent),
        }
    }
}

impl fmt::Display for UnitMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeff.is_one() {
            write!(f, "{}", self.exponent)
        } else {
            write!(f, "{} {}", rational_string(&self.coeff), self.exponent)
        }
    }
}

/// A Čech 1-cocycle of monomial units: one `α_ij` for each pair `i < j` in `1..=n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnitMonomialCochain {
    n: usize,
    entries: BTreeMap<(usize, usize), UnitMonomial>,
}

impl UnitMonomialCochain {
    /// Checks every pair is present, each unit lives on `U_ij`, and
    /// `α_ik = α_ij · α_jk` on every triple.
    pub fn new(n: usize, entries: BTreeMap<(usize, usize), UnitMonomial>) -> Result<Self> {
        for i in 1..=n {
            for j in i + 1..=n {
                let Some(u) = entries.get(&(i, j)) else {
                    return Err(Error::InvalidInput(format!("missing transition α_{i}{j}")));
                };
                if u.coeff.is_zero() {
                    return Err(Error::InvalidInput(format!("α_{i}{j} has zero coefficient")));
                }
                if u.exponent.nvars() != n + 1 || u.exponent.degree() != 0 {
                    return Err(Error::InvalidInput(format!(
                        "α_{i}{j} must be a degree-0 monomial in x0..x{n}"
                    )));
                }
                let off_chart = u
                    .exponent
                    .as_slice()
                    .iter()
                    .enumerate()
                    .any(|(k, &a)| a != 0 && k != i && k != j);
                if off_chart {
                    return Err(Error::Inadmissible {
                        index: format!("({i},{j})"),
                    });
                }
            }
        }
        if entries.keys().any(|&(i, j)| !(1 <= i && i < j && j <= n)) {
            return Err(Error::InvalidInput("transition index out of range".into()));
        }
        let u = UnitMonomialCochain { n, entries };
        if !u.is_cocycle() {
            return Err(Error::InvalidInput(
                "transitions violate α_ik = α_ij α_jk".into(),
            ));
        }
        Ok(u)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn entry(&self, i: usize, j: usize) -> &UnitMonomial {
        &self.entries[&(i, j)]
    }

    pub fn entries(&self) -> impl Iterator<Item = (&(usize, usize), &UnitMonomial)> {
        self.entries.iter()
    }

    pub fn is_cocycle(&self) -> bool {
        let n = self.n;
        (1..=n).all(|i| {
            (i + 1..=n).all(|j| {
                (j + 1..=n).all(|k| {
                    self.entries[&(i, k)] == self.entries[&(i, j)].mul(&self.entries[&(j, k)])
                })
            })
        })
    }

    /// Tensor product of line bundles.
    pub fn tensor(&self, other: &UnitMonomialCochain) -> UnitMonomialCochain {
        assert_eq!(self.n, other.n);
        UnitMonomialCochain {
            n: self.n,
            entries: self
                .entries
                .iter()
                .map(|(k, u)| (*k, u.mul(&other.entries[k])))
                .collect(),
        }
    }
}

/// Transitions of `O(m)|_X`: `α_ij = (x_j / x_i)^{-m}`, so `m = -1` gives `x_j / x_i`.
pub fn line_bundle_cocycle(m: i64, n: usize) -> UnitMonomialCochain {
    let mut entries = BTreeMap::new();
    for i in 1..=n {
        for j in i + 1..=n {
            let mut e = Exponent::zero(n + 1);
            e.set(i, m as i32);
            e.set(j, -m as i32);
            entries.insert(
                (i, j),
                UnitMonomial {
                    coeff: Rational::one(),
                    exponent: e,
                },
            );
        }
    }
    UnitMonomialCochain { n, entries }
}

/// The obstruction cochain of the line bundle `u` along the deformation `v`,
/// F-reduced, of degree `deg v + 1`.
pub fn log_pairing(
    v: &VectorFieldCochain,
    u: &UnitMonomialCochain,
    reducer: &FReducer,
) -> Result<FunctionCochain> {
    let n = v.n();
    if u.n() != n {
        return Err(Error::InvalidInput(format!(
            "deformation on {n} charts paired with a bundle on {} charts",
            u.n()
        )));
    }
    let p = v.degree();
    let sign = if p % 2 == 0 { rat(1) } else { rat(-1) };
    let mut entries = BTreeMap::new();
    for idx in CechIndex::all(n, p + 1) {
        let s = idx.as_slice();
        let (last, next) = (s[p], s[p + 1]);
        let field = v.entry(&idx.omit(p + 1));
        let unit = u.entry(last, next);
        let mut acc = LaurentPoly::zero(n + 1);
        for (j, &a) in unit.exponent.as_slice().iter().enumerate() {
            if a == 0 || field[j].is_zero() {
                continue;
            }
            assert!(idx.contains(j), "log derivative divides by a non-unit");
            let mut inv = Exponent::zero(n + 1);
            inv.set(j, -1);
            acc.add_scaled(&field[j], &rat(a as i64), &inv);
        }
        entries.insert(idx, reducer.reduce(&acc.scale(&sign)));
    }
    Ok(FunctionCochain::from_entries(n, p + 1, entries))
}

/// A reduced top-degree cochain is a coboundary iff every term of its entry
/// has some `xᵢ`, `i ≥ 1`, with nonnegative exponent.
pub fn is_top_coboundary(c: &FunctionCochain, reducer: &FReducer) -> bool {
    let n = c.n();
    let entry = reducer.reduce(&c.entry(&CechIndex::full(n)));
    entry
        .terms()
        .all(|(e, _)| (1..=n).any(|i| e.get(i) >= 0))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    /// The pairing class is nonzero: the bundle does not extend.
    NonzeroClass,
    /// The pairing cochain is an explicit coboundary.
    ZeroClass,
    Inconclusive,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::NonzeroClass => "does not extend",
            Verdict::ZeroClass => "obstruction vanishes",
            Verdict::Inconclusive => "inconclusive",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ObstructionCertificate {
    pub n: usize,
    /// Twist of the bundle `O(m)|_X`.
    pub m: i64,
    pub cochain: FunctionCochain,
    /// Coefficient of `x0^n / (x1 ⋯ xn)` in the paired cochain.
    pub value: Rational,
    /// The same quantity for `m = -1`; `value = -m · reference_value`.
    pub reference_value: Rational,
    pub verdict: Verdict,
}

fn classify(c: &FunctionCochain, value: &Rational, reducer: &FReducer) -> Verdict {
    if !value.is_zero() {
        Verdict::NonzeroClass
    } else if is_top_coboundary(c, reducer) {
        Verdict::ZeroClass
    } else {
        Verdict::Inconclusive
    }
}

/// Pairs `v` with `u` and evaluates the top coefficient functional.
pub fn pair_and_evaluate(
    v: &VectorFieldCochain,
    u: &UnitMonomialCochain,
    f: &HomogeneousPoly,
) -> Result<(FunctionCochain, Rational, Verdict)> {
    let reducer = FReducer::new(f)?;
    let c = log_pairing(v, u, &reducer)?;
    let value = top_coefficient_functional(&c, f)?;
    let verdict = classify(&c, &value, &reducer);
    Ok((c, value, verdict))
}

/// Obstruction to extending `O(m)|_X` along the generating deformation.
/// Smoothness is not re-checked here; see [`check_hypotheses`].
pub fn obstruction_certificate(f: &HomogeneousPoly, n: usize, m: i64) -> Result<ObstructionCertificate> {
    if n < 4 {
        return Err(Error::Hypothesis(format!(
            "the obstruction certificate needs n ≥ 4, got n = {n}"
        )));
    }
    let generator = generating_field(f, n)?;
    let (cochain, value, verdict) = pair_and_evaluate(&generator, &line_bundle_cocycle(m, n), f)?;
    let reference_value = if m == -1 {
        value.clone()
    } else {
        pair_and_evaluate(&generator, &line_bundle_cocycle(-1, n), f)?.1
    };
    if value != &reference_value * &rat(-m) {
        return Err(Error::Inconsistent(format!(
            "pairing is not linear in the bundle: value {} for m = {m}, {} for m = -1",
            rational_string(&value),
            rational_string(&reference_value)
        )));
    }
    Ok(ObstructionCertificate {
        n,
        m,
        cochain,
        value,
        reference_value,
        verdict,
    })
}

/// Result of evaluating `H¹(T_X) → H²(O_X)` at `O(1)|_X` for a quartic surface.
#[derive(Debug, Clone)]
pub struct K3Kernel {
    pub h1: usize,
    pub rank: usize,
    pub kernel: usize,
    pub bound: usize,
    /// `h1` agreed at `bound` and `bound + 1`.
    pub stabilized: bool,
    /// The tangent cocycles found span the truncated `H¹`.
    pub complete: bool,
    /// Cocycle representatives of a basis of `H¹(T_X)`.
    pub basis: Vec<VectorFieldCochain>,
    /// Functional value of each basis element paired with `O(1)|_X`.
    pub pairing_values: Vec<Rational>,
}

impl K3Kernel {
    pub fn conclusive(&self) -> bool {
        self.stabilized && self.complete
    }
}

/// Builds a basis of truncated `H¹(T_X)` out of genuine tangent cocycles,
/// pairs each with `O(1)|_X`, and reads off rank and kernel.
pub fn k3_kernel(f: &HomogeneousPoly, bound: usize) -> Result<K3Kernel> {
    let n = f.n();
    if n != 3 || f.degree() != 4 {
        return Err(Error::Hypothesis(
            "the K3 computation needs a quartic surface in P³".into(),
        ));
    }
    let reducer = FReducer::new(f)?;
    let cx = TangentComplex::new(f);
    let tot = TotalComplex {
        cx: &cx,
        reducer: &reducer,
        n,
        bound,
        max_dim: DEFAULT_MAX_BASIS,
    };
    let h1 = tot.cohomology_dim(1)?;
    let h1_next = TotalComplex {
        cx: &cx,
        reducer: &reducer,
        n,
        bound: bound + 1,
        max_dim: DEFAULT_MAX_BASIS,
    }
    .cohomology_dim(1)?;

    let b0 = tot.basis(0)?;
    let b1 = tot.basis(1)?;
    let b2 = tot.basis(2)?;
    // cocycles supported on O ⊕ O(1)^{n+1}: no O(d) component
    let support: Vec<usize> = (0..b1.len()).filter(|&i| b1.keys[i].col < 2).collect();
    let images: Vec<SparseVec> = support
        .iter()
        .map(|&i| tot.differential_of(&b1.keys[i], &b2))
        .collect::<Result<_>>()?;
    let cocycles: Vec<SparseVec> = linalg::relations(images)
        .into_iter()
        .map(|rel| rel.into_iter().map(|(k, c)| (support[k], c)).collect())
        .collect();

    let mut classes = Echelon::new();
    for v in tot.differential_images(&b0, &b1)? {
        classes.insert(v);
    }
    let line = line_bundle_cocycle(1, n);
    let mut basis = Vec::new();
    let mut pairing_values = Vec::new();
    // the generating deformation goes first when it fits in the truncation
    let generator = generating_field(f, n)?;
    if let Some(coords) = lift_to_total(&generator, &tot, &b1, &b2)? {
        if classes.insert(coords) {
            pairing_values.push(pair_and_evaluate(&generator, &line, f)?.1);
            basis.push(generator);
        }
    }
    for z in cocycles {
        if basis.len() == h1 {
            break;
        }
        if !classes.insert(z.clone()) {
            continue;
        }
        let v = cochain_from_terms(
            n,
            1,
            z.iter().filter(|(i, _)| b1.keys[**i].col == 1).map(|(i, c)| {
                let k = &b1.keys[*i];
                (&k.index, k.comp, &k.mono, c.clone())
            }),
        );
        pairing_values.push(pair_and_evaluate(&v, &line, f)?.1);
        basis.push(v);
    }
    let rank = usize::from(pairing_values.iter().any(|x| !x.is_zero()));
    Ok(K3Kernel {
        h1,
        rank,
        kernel: h1 - rank,
        bound,
        stabilized: h1 == h1_next,
        complete: basis.len() == h1,
        basis,
        pairing_values,
    })
}

/// Coordinates of the `Tot¹` cocycle `(-h, v, 0)` where `δv = h·E`.
/// `None` if it does not fit in the truncation.
fn lift_to_total(
    v: &VectorFieldCochain,
    tot: &TotalComplex<'_, TangentComplex>,
    b1: &TotalBasis,
    b2: &TotalBasis,
) -> Result<Option<SparseVec>> {
    let n = v.n();
    let v = v.reduce(tot.reducer);
    let mut terms: Vec<(BasisKey, Rational)> = Vec::new();
    for (idx, fld) in v.entries() {
        for (comp, g) in fld.iter().enumerate() {
            for (e, c) in g.terms() {
                terms.push((
                    BasisKey { col: 1, comp, index: idx.clone(), mono: e.clone() },
                    c.clone(),
                ));
            }
        }
    }
    for (idx, fld) in vf_differential(&v, tot.reducer).entries() {
        let j = idx.as_slice()[0];
        let mut inv = Exponent::zero(n + 1);
        inv.set(j, -1);
        for (e, c) in tot.reducer.reduce(&fld[j].shift(&inv)).terms() {
            terms.push((
                BasisKey { col: 0, comp: 0, index: idx.clone(), mono: e.clone() },
                -c,
            ));
        }
    }
    let mut out = SparseVec::new();
    for (key, c) in terms {
        match b1.position(&key) {
            Some(at) => {
                out.insert(at, c);
            }
            None => return Ok(None),
        }
    }
    let mut image = SparseVec::new();
    for (&i, c) in &out {
        for (j, x) in tot.differential_of(&b1.keys[i], b2)? {
            *image.entry(j).or_insert_with(Rational::zero) += x * c;
        }
    }
    if image.values().any(|x| !x.is_zero()) {
        return Err(Error::Inconsistent(
            "tangent cocycle does not lift to a total cocycle".into(),
        ));
    }
    Ok(Some(out))
}

/// Which deformation of a hypersurface the report is about.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Deformation {
    /// The generating class of `H^{n-2}(T_X)`.
    Generator,
    /// A rational multiple of the generator.
    Scaled(Rational),
    /// The trivial deformation.
    Zero,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Scenario {
    /// A degree-`(n+1)` hypersurface deformed along `k ⊕ k[-(n-3)]`.
    Hypersurface {
        f: HomogeneousPoly,
        deformation: Deformation,
    },
    /// `Pⁿ` with structure sheaf `O ⊕ O(twist)` placed `shift` degrees up.
    TrivialExtension { n: usize, twist: i64, shift: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PremiseStatus {
    Certified,
    Assumed,
    Failed,
}

impl PremiseStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            PremiseStatus::Certified => "certified",
            PremiseStatus::Assumed => "assumed",
            PremiseStatus::Failed => "failed",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Premise {
    pub statement: String,
    pub status: PremiseStatus,
}

/// `Z^free ⊕ k^vector`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PicGroup {
    pub free_rank: u32,
    pub vector_dim: u128,
}

impl fmt::Display for PicGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".into()),
            r => parts.push(format!("Z^{r}")),
        }
        if self.vector_dim > 0 {
            parts.push(format!("k^{}", self.vector_dim));
        }
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" ⊕ "))
        }
    }
}

#[derive(Debug, Clone)]
pub struct PicReport {
    /// Dimension of the group mapping into `Pic` of the extension.
    pub h_source: u128,
    /// Dimension of the target of the connecting map `δ`.
    pub h_target: u128,
    pub delta_injective: Option<bool>,
    pub assumed_pic_truncation: String,
    pub premises: Vec<Premise>,
    pub obstruction: Option<ObstructionCertificate>,
    /// Present only when every premise is certified or explicitly assumed.
    pub conclusion: Option<PicGroup>,
}

#[derive(Debug, Clone, Copy, Default)]
pub struct ReportOptions {
    /// Accept `Pic` of the truncation as `Z`, generated by `O(1)`.
    pub assume_pic_z: bool,
    pub groebner: GroebnerConfig,
}

fn premise(statement: impl Into<String>, ok: bool) -> Premise {
    Premise {
        statement: statement.into(),
        status: if ok {
            PremiseStatus::Certified
        } else {
            PremiseStatus::Failed
        },
    }
}

fn pic_assumption(assume: bool, space: &str) -> Premise {
    Premise {
        statement: format!("Pic({space}) = Z, generated by O(1)"),
        status: if assume {
            PremiseStatus::Assumed
        } else {
            PremiseStatus::Failed
        },
    }
}

/// Runs the deformation sequence
/// `H^{n-2}(O_X) → Pic(X') → Pic(X) --δ--> H^{n-1}(O_X)` for the given scenario.
pub fn deformation_report(scenario: &Scenario, options: &ReportOptions) -> Result<PicReport> {
    match scenario {
        Scenario::Hypersurface { f, deformation } => hypersurface_report(f, deformation, options),
        Scenario::TrivialExtension { n, twist, shift } => {
            Ok(trivial_extension_report(*n, *twist, *shift, options))
        }
    }
}

fn hypersurface_report(
    f: &HomogeneousPoly,
    deformation: &Deformation,
    options: &ReportOptions,
) -> Result<PicReport> {
    let n = f.n();
    let mut premises = Vec::new();
    let hyp = check_hypotheses(f, n, &options.groebner);
    premises.push(premise(
        "X is a smooth hypersurface of degree n + 1 avoiding [1:0:...:0]",
        hyp.degree_ok && hyp.cover_ok && hyp.smooth_ok.passed(),
    ));
    premises.push(premise(format!("n = {n} ≥ 4"), n >= 4));
    premises.push(pic_assumption(options.assume_pic_z, "X"));
    if premises.iter().any(|p| p.status == PremiseStatus::Failed) {
        return Ok(PicReport {
            h_source: 0,
            h_target: 0,
            delta_injective: None,
            assumed_pic_truncation: "Z".into(),
            premises,
            obstruction: None,
            conclusion: None,
        });
    }

    let dims = hypersurface_o_cohomology_dims(n, f.degree() as u32)?;
    let (h_source, h_target) = (dims.get(n - 2), dims.get(n - 1));
    let bound = f.degree() as usize;
    let cross = truncated_cohomology_dim(f, n - 2, bound)?;
    premises.push(premise(
        format!(
            "dim H^{}(O_X) = {h_source} (closed form; truncated Čech complex at bound {bound} gives {}{})",
            n - 2,
            cross.dim,
            if cross.stabilized { ", stabilized" } else { ", not stabilized" }
        ),
        cross.stabilized && cross.dim as u128 == h_source,
    ));

    let scale = match deformation {
        Deformation::Generator => Some(Rational::one()),
        Deformation::Scaled(c) if !c.is_zero() => Some(c.clone()),
        _ => None,
    };
    let (delta_injective, obstruction, conclusion) = match scale {
        None => {
            premises.push(premise(
                "the deformation class is zero, so δ = 0 and the sequence splits",
                true,
            ));
            let ok = premises.iter().all(|p| p.status != PremiseStatus::Failed);
            (
                Some(false),
                None,
                ok.then_some(PicGroup {
                    free_rank: 1,
                    vector_dim: h_source,
                }),
            )
        }
        Some(c) => {
            let cert = obstruction_certificate(f, n, 1)?;
            let deformed = generating_field(f, n)?.scale(&c);
            let (_, value, _) = pair_and_evaluate(&deformed, &line_bundle_cocycle(1, n), f)?;
            if value != &cert.value * &c {
                return Err(Error::Inconsistent(
                    "pairing is not linear in the deformation".into(),
                ));
            }
            let injective = !value.is_zero();
            premises.push(premise(
                format!(
                    "δ(O(1)) has functional value {} ≠ 0 and δ(O(m)) = m·δ(O(1)), so δ is injective on Z",
                    rational_string(&value)
                ),
                injective,
            ));
            let ok = premises.iter().all(|p| p.status != PremiseStatus::Failed);
            (
                Some(injective),
                Some(cert),
                ok.then_some(PicGroup {
                    free_rank: 0,
                    vector_dim: h_source,
                }),
            )
        }
    };
    Ok(PicReport {
        h_source,
        h_target,
        delta_injective,
        assumed_pic_truncation: "Z".into(),
        premises,
        obstruction,
        conclusion,
    })
}

fn trivial_extension_report(n: usize, twist: i64, shift: usize, options: &ReportOptions) -> PicReport {
    let q = shift + 1;
    let h_source = crate::cech::pn_cohomology_dim(n, twist, q);
    let h_target = crate::cech::pn_cohomology_dim(n, twist, q + 1);
    let premises = alloc::vec![
        premise(format!("n = {n} ≥ 1"), n >= 1),
        pic_assumption(options.assume_pic_z, &format!("P^{n}")),
        premise(
            "trivial square-zero extension: the derivation and hence δ vanish",
            true,
        ),
        premise(
            format!("dim H^{q}(P^{n}, O({twist})) = {h_source} (monomial count)"),
            true,
        ),
    ];
    let ok = premises.iter().all(|p| p.status != PremiseStatus::Failed);
    PicReport {
        h_source,
        h_target,
        delta_injective: Some(false),
        assumed_pic_truncation: "Z".into(),
        premises,
        obstruction: None,
        conclusion: ok.then_some(PicGroup {
            free_rank: 1,
            vector_dim: h_source,
        }),
    }
}

/// Human-readable name of the paired cochain's formula.
pub const GENERATOR_FORMULA: &str = "(d0F)/(x1...xn)";

/// The monomial read by the functional, e.g. `x0^4 x1^-1 x2^-1 x3^-1 x4^-1`.
pub fn functional_monomial(n: usize) -> String {
    top_monomial(n).to_string()
}
