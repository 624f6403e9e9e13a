//! Random inputs and single-case property checks shared by the property
//! suites and the acceptance gate. Each check draws one case from `rng`.

#![allow(dead_code)]

use std::collections::BTreeMap;

use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use hyperpic_core::cech::{
    cech_differential, pn_cohomology_dim, top_coefficient_functional, top_monomial, truncated_cohomology_dim,
    CechIndex, FReducer, FunctionCochain,
};
use hyperpic_core::obstruction::{
    line_bundle_cocycle, log_pairing, obstruction_certificate, pair_and_evaluate,
    UnitMonomial, UnitMonomialCochain,
};
use hyperpic_core::tangent::{vf_differential, VectorFieldCochain};
use hyperpic_core::{Exponent, HomogeneousPoly, LaurentPoly, Rational};

pub type CaseResult = Result<(), String>;

pub fn rng(seed: u64) -> ChaCha8Rng {
    use rand::SeedableRng;
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn q(num: i64, den: i64) -> Rational {
    Rational::new(num.into(), den.into())
}

pub fn rational(rng: &mut ChaCha8Rng) -> Rational {
    q(rng.gen_range(-6..=6), rng.gen_range(1..=4))
}

pub fn nonzero_rational(rng: &mut ChaCha8Rng) -> Rational {
    loop {
        let r = rational(rng);
        if !r.is_zero() {
            return r;
        }
    }
}

/// Exponent vector with entries in `lo..=hi` summing to `degree`, built by
/// fixing up one coordinate in `free`.
fn exponent(rng: &mut ChaCha8Rng, ranges: &[(i32, i32)], free: &[usize], degree: i64) -> Exponent {
    let mut e: Vec<i32> = ranges.iter().map(|&(lo, hi)| rng.gen_range(lo..=hi)).collect();
    let j = *free.choose(rng).expect("some coordinate is free");
    let total: i64 = e.iter().map(|&a| a as i64).sum();
    e[j] -= (total - degree) as i32;
    Exponent::new(e)
}

pub fn laurent(rng: &mut ChaCha8Rng, nvars: usize, terms: usize) -> LaurentPoly {
    LaurentPoly::from_terms(
        nvars,
        (0..terms).map(|_| {
            let e = (0..nvars).map(|_| rng.gen_range(-3..=3)).collect::<Vec<_>>();
            (Exponent::new(e), rational(rng))
        }),
    )
}

/// Monomials of degree `d` in `nvars` variables.
pub fn monomials(nvars: usize, d: u32) -> Vec<Exponent> {
    fn go(nvars: usize, left: u32, cur: &mut Vec<i32>, out: &mut Vec<Exponent>) {
        if cur.len() + 1 == nvars {
            cur.push(left as i32);
            out.push(Exponent::new(cur.clone()));
            cur.pop();
            return;
        }
        for k in 0..=left {
            cur.push(k as i32);
            go(nvars, left - k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(nvars, d, &mut Vec::new(), &mut out);
    out
}

pub fn homogeneous(rng: &mut ChaCha8Rng, nvars: usize, d: u32, terms: usize) -> LaurentPoly {
    let all = monomials(nvars, d);
    LaurentPoly::from_terms(
        nvars,
        (0..terms).map(|_| (all.choose(rng).unwrap().clone(), rational(rng))),
    )
}

/// `c·x0^d + (sparse random terms)`, so `[1:0:…:0]` is never on the hypersurface.
pub fn cover_poly(rng: &mut ChaCha8Rng, n: usize, d: u32, extra: usize) -> HomogeneousPoly {
    let mut lead = Exponent::zero(n + 1);
    lead.set(0, d as i32);
    let mut p = homogeneous(rng, n + 1, d, extra);
    let c = p.coefficient_of(&lead);
    p.add_term(lead, nonzero_rational(rng) - c);
    HomogeneousPoly::new(p, d as i64).unwrap()
}

/// A section over `U_S`: sum of random monomials of total degree `degree`,
/// negative exponents only on `S`.
fn section(rng: &mut ChaCha8Rng, n: usize, idx: &CechIndex, degree: i64, terms: usize) -> LaurentPoly {
    let mut ranges = vec![(0, 4)];
    ranges.extend((1..=n).map(|j| if idx.contains(j) { (-3, 3) } else { (0, 2) }));
    LaurentPoly::from_terms(
        n + 1,
        (0..terms).map(|_| (exponent(rng, &ranges, idx.as_slice(), degree), rational(rng))),
    )
}

pub fn function_cochain(rng: &mut ChaCha8Rng, n: usize, p: usize) -> FunctionCochain {
    let entries = CechIndex::all(n, p)
        .into_iter()
        .map(|idx| {
            let t = rng.gen_range(0..=3);
            let s = section(rng, n, &idx, 0, t);
            (idx, s)
        })
        .collect();
    FunctionCochain::new(n, p, entries).unwrap()
}

pub fn field_cochain(rng: &mut ChaCha8Rng, n: usize, p: usize) -> VectorFieldCochain {
    let entries = CechIndex::all(n, p)
        .into_iter()
        .map(|idx| {
            let fld = (0..=n)
                .map(|_| {
                    let t = rng.gen_range(0..=2);
                    section(rng, n, &idx, 1, t)
                })
                .collect();
            (idx, fld)
        })
        .collect();
    VectorFieldCochain::new(n, p, entries).unwrap()
}

/// `O(m)` with transitions rescaled by the constant coboundary `cⱼ / cᵢ`.
pub fn unit_cocycle(rng: &mut ChaCha8Rng, n: usize) -> (i64, UnitMonomialCochain) {
    let m = rng.gen_range(-3..=3);
    let c: Vec<Rational> = (0..=n).map(|_| nonzero_rational(rng)).collect();
    let base = line_bundle_cocycle(m, n);
    let entries: BTreeMap<_, _> = base
        .entries()
        .map(|(&(i, j), u)| {
            (
                (i, j),
                UnitMonomial {
                    coeff: &u.coeff * &c[j] / &c[i],
                    exponent: u.exponent.clone(),
                },
            )
        })
        .collect();
    (m, UnitMonomialCochain::new(n, entries).unwrap())
}

fn ensure(ok: bool, what: impl FnOnce() -> String) -> CaseResult {
    if ok {
        Ok(())
    } else {
        Err(what())
    }
}

/// `Σ xᵢ ∂ᵢ p = d·p` for homogeneous `p`.
pub fn check_euler_identity(rng: &mut ChaCha8Rng) -> CaseResult {
    let nvars = rng.gen_range(1..=5);
    let d = rng.gen_range(0..=6);
    let terms = rng.gen_range(0..=6);
    let p = homogeneous(rng, nvars, d, terms);
    let mut lhs = LaurentPoly::zero(nvars);
    for i in 0..nvars {
        lhs += &(&LaurentPoly::var(nvars, i) * &p.partial_derivative(i));
    }
    let rhs = p.scale(&q(d as i64, 1));
    ensure(lhs == rhs, || format!("Euler identity fails for {p}"))
}

fn small_instance(rng: &mut ChaCha8Rng) -> (usize, HomogeneousPoly, FReducer) {
    let n = rng.gen_range(3..=4);
    let d = rng.gen_range(2..=(n as u32 + 2));
    let f = cover_poly(rng, n, d, 3);
    let r = FReducer::new(&f).unwrap();
    (n, f, r)
}

/// `δ∘δ = 0` on random function cochains.
pub fn check_function_dd(rng: &mut ChaCha8Rng) -> CaseResult {
    let (n, f, r) = small_instance(rng);
    let p = rng.gen_range(0..=n - 3);
    let c = function_cochain(rng, n, p);
    let dd = cech_differential(&cech_differential(&c, &r), &r);
    ensure(dd.is_zero(), || format!("δδ ≠ 0 for F = {} and p = {p}", f.as_poly()))
}

/// `δ∘δ = 0` on random vector-field cochains.
pub fn check_field_dd(rng: &mut ChaCha8Rng) -> CaseResult {
    let (n, f, r) = small_instance(rng);
    let p = rng.gen_range(0..=n - 3);
    let v = field_cochain(rng, n, p);
    let dd = vf_differential(&vf_differential(&v, &r), &r);
    ensure(dd.is_zero(), || format!("δδ ≠ 0 on fields, F = {}", f.as_poly()))
}

/// The top coefficient functional kills `δc` for every `(n-2)`-cochain `c`.
pub fn check_functional_on_coboundaries(rng: &mut ChaCha8Rng) -> CaseResult {
    let n = rng.gen_range(2..=5);
    let f = cover_poly(rng, n, n as u32 + 1, 3);
    let r = FReducer::new(&f).unwrap();
    let c = function_cochain(rng, n, n - 2);
    let value = top_coefficient_functional(&cech_differential(&c, &r), &f).unwrap();
    ensure(value.is_zero(), || {
        format!("functional is {value} on a coboundary, F = {}", f.as_poly())
    })
}

/// `δb + t·x0^n/(x1⋯xn)` on the top index has functional value exactly `t`.
pub fn check_functional_reads_planted_class(rng: &mut ChaCha8Rng) -> CaseResult {
    let n = rng.gen_range(2..=5);
    let f = cover_poly(rng, n, n as u32 + 1, 3);
    let r = FReducer::new(&f).unwrap();
    let t = rational(rng);
    let noise = cech_differential(&function_cochain(rng, n, n - 2), &r);
    let mut top = BTreeMap::new();
    top.insert(CechIndex::full(n), LaurentPoly::monomial(top_monomial(n), t.clone()));
    let c = noise.add(&FunctionCochain::new(n, n - 1, top).unwrap());
    let value = top_coefficient_functional(&c, &f).unwrap();
    ensure(value == t, || format!("planted {t}, read {value}"))
}

/// `⟨λ·gen + δw + h·E, O(m)⟩` evaluates to `-m·λ·(n+1)·c`, where `c` is the
/// `x0^(n+1)` coefficient of `F`: only `∂₀(c·x0^(n+1))` reaches `x0^n`.
pub fn check_generator_signal(rng: &mut ChaCha8Rng) -> CaseResult {
    let n = rng.gen_range(3..=4);
    let f = cover_poly(rng, n, n as u32 + 1, 3);
    let r = FReducer::new(&f).unwrap();
    let lambda = rational(rng);
    let m = rng.gen_range(-3..=3);
    let v = hyperpic_core::tangent::generating_field(&f, n)
        .unwrap()
        .scale(&lambda)
        .add(&vf_differential(&field_cochain(rng, n, n - 3), &r))
        .add(&VectorFieldCochain::euler_multiple(&function_cochain(rng, n, n - 2)));
    let c = log_pairing(&v, &line_bundle_cocycle(m, n), &r).unwrap();
    let value = top_coefficient_functional(&c, &f).unwrap();
    let want = q(-m * (n as i64 + 1), 1) * &lambda * f.leading_x0_coefficient();
    ensure(value == want, || format!("value {value}, expected {want}"))
}

/// `⟨av + bw, u⟩ = a⟨v, u⟩ + b⟨w, u⟩` and `⟨v, u ⊗ u'⟩ = ⟨v, u⟩ + ⟨v, u'⟩`.
pub fn check_pairing_bilinear(rng: &mut ChaCha8Rng) -> CaseResult {
    let (n, _, r) = small_instance(rng);
    let p = rng.gen_range(0..=n - 2);
    let (v, w) = (field_cochain(rng, n, p), field_cochain(rng, n, p));
    let (a, b) = (rational(rng), rational(rng));
    let (_, u) = unit_cocycle(rng, n);
    let (_, u2) = unit_cocycle(rng, n);
    let pair = |x: &VectorFieldCochain, y: &UnitMonomialCochain| log_pairing(x, y, &r).unwrap();
    let lhs = pair(&v.scale(&a).add(&w.scale(&b)), &u);
    let rhs = pair(&v, &u).scale(&a).add(&pair(&w, &u).scale(&b)).reduce(&r);
    ensure(lhs == rhs, || "pairing is not linear in the deformation".into())?;
    let lhs = pair(&v, &u.tensor(&u2));
    let rhs = pair(&v, &u).add(&pair(&v, &u2)).reduce(&r);
    ensure(lhs == rhs, || "pairing is not additive in the bundle".into())
}

/// Euler multiples and multiples of `F` pair to zero.
pub fn check_euler_annihilation(rng: &mut ChaCha8Rng) -> CaseResult {
    let (n, f, r) = small_instance(rng);
    let p = rng.gen_range(0..=n - 2);
    let h = function_cochain(rng, n, p);
    let (_, u) = unit_cocycle(rng, n);
    let c = log_pairing(&VectorFieldCochain::euler_multiple(&h), &u, &r).unwrap();
    ensure(c.is_zero(), || "an Euler multiple pairs to a nonzero cochain".into())?;
    let g = field_cochain(rng, n, p);
    let mut shifted = BTreeMap::new();
    for (idx, fld) in g.entries() {
        // fields of degree 1 times F, divided by x_j^d on U_S to stay in degree 1
        let j = idx.as_slice()[0];
        let mut inv = Exponent::zero(n + 1);
        inv.set(j, -(f.degree() as i32));
        let fld = fld.iter().map(|x| (x * f.as_poly()).shift(&inv)).collect();
        shifted.insert(idx.clone(), fld);
    }
    let fv = VectorFieldCochain::new(n, p, shifted).unwrap();
    let c = log_pairing(&fv, &u, &r).unwrap();
    ensure(c.is_zero(), || "a multiple of F pairs to a nonzero cochain".into())
}

/// Pairing a Čech coboundary of fields with any bundle gives a class the
/// top functional does not see.
pub fn check_pairing_descends(rng: &mut ChaCha8Rng) -> CaseResult {
    let n = rng.gen_range(3..=4);
    let f = cover_poly(rng, n, n as u32 + 1, 3);
    let r = FReducer::new(&f).unwrap();
    let w = field_cochain(rng, n, n - 3);
    let (_, u) = unit_cocycle(rng, n);
    let c = log_pairing(&vf_differential(&w, &r), &u, &r).unwrap();
    let value = top_coefficient_functional(&c, &f).unwrap();
    ensure(value.is_zero(), || format!("coboundary pairs to {value}"))
}

/// `certificate(m) = -m · certificate(-1)` on random quintics, checked both
/// inside `obstruction_certificate` and by pairing independently.
pub fn check_certificate_linear(rng: &mut ChaCha8Rng) -> CaseResult {
    let extra = rng.gen_range(0..=4);
    let f = cover_poly(rng, 4, 5, extra);
    let m = rng.gen_range(-3..=3);
    let generator = hyperpic_core::tangent::generating_field(&f, 4).unwrap();
    let at = |k: i64| pair_and_evaluate(&generator, &line_bundle_cocycle(k, 4), &f).unwrap().1;
    let (value, reference) = (at(m), at(-1));
    ensure(value == &reference * q(-m, 1), || {
        format!("m = {m}: {value} vs -m · {reference}")
    })?;
    let expected = q(5, 1) * f.leading_x0_coefficient();
    ensure(reference == expected, || format!("m = -1 gives {reference}, oracle {expected}"))?;
    let cert = obstruction_certificate(&f, 4, m).map_err(|e| e.to_string())?;
    ensure(cert.value == value, || "certificate disagrees with direct pairing".into())
}

/// `h^q(Pⁿ, O(k)) = h^{n-q}(Pⁿ, O(-k-n-1))`.
pub fn check_serre_duality(rng: &mut ChaCha8Rng) -> CaseResult {
    let n = rng.gen_range(1..=8);
    let k = rng.gen_range(-20..=20);
    let qq = rng.gen_range(0..=n);
    let a = pn_cohomology_dim(n, k, qq);
    let b = pn_cohomology_dim(n, -k - n as i64 - 1, n - qq);
    ensure(a == b, || format!("n = {n}, k = {k}, q = {qq}: {a} vs {b}"))
}

/// Brute-force monomial counts: degree-`k` monomials for `H^0`, all-negative
/// ones for `H^n`.
pub fn pn_oracle(n: usize, k: i64, q: usize) -> u128 {
    fn count(vars: usize, left: i64) -> u128 {
        if vars == 1 {
            return u128::from(left >= 0);
        }
        (0..=left.max(-1)).map(|a| count(vars - 1, left - a)).sum()
    }
    if q == 0 && k >= 0 {
        count(n + 1, k)
    } else if q == n && k <= -(n as i64) - 1 {
        // x^a with every aᵢ ≤ -1 and Σaᵢ = k ⇔ bᵢ = -aᵢ-1 ≥ 0, Σbᵢ = -k-n-1
        count(n + 1, -k - n as i64 - 1)
    } else {
        0
    }
}

/// `h^q(O_X)` from `0 → O(-d) → O → O_X → 0` with brute-force counts.
pub fn hypersurface_oracle(n: usize, d: u32, q: usize) -> u128 {
    pn_oracle(n, 0, q) + pn_oracle(n, -(d as i64), q + 1)
}

/// Truncated Čech dimension of `O_X` against the oracle, for one `(n, d, q)`
/// and a random admissible `F`.
pub fn check_truncated_dim(rng: &mut ChaCha8Rng, n: usize, d: u32, q: usize) -> CaseResult {
    let f = cover_poly(rng, n, d, 2);
    let t = truncated_cohomology_dim(&f, q, d as usize).map_err(|e| e.to_string())?;
    let want = hypersurface_oracle(n, d, q);
    ensure(t.stabilized && t.dim as u128 == want, || {
        format!(
            "n = {n}, d = {d}, q = {q}, F = {}: truncated {} (stable: {}) vs {want}",
            f.as_poly(),
            t.dim,
            t.stabilized
        )
    })
}

/// Every `(n, d, q)` with `n ≤ 4`, `d ≤ 5`.
pub fn truncated_grid() -> Vec<(usize, u32, usize)> {
    let mut out = Vec::new();
    for n in 1..=4 {
        for d in 1..=5 {
            for q in 0..n {
                out.push((n, d, q));
            }
        }
    }
    out
}

/// Runs `check` on `cases` consecutive seeds starting at `seed`.
pub fn run_cases(seed: u64, cases: u64, check: fn(&mut ChaCha8Rng) -> CaseResult) -> CaseResult {
    for s in seed..seed + cases {
        check(&mut rng(s)).map_err(|e| format!("seed {s}: {e}"))?;
    }
    Ok(())
}
