use hyperpic_core::cech::{hypersurface_o_cohomology_dims, CechIndex, FReducer};
use hyperpic_core::ideals::{check_hypotheses, GroebnerConfig};
use hyperpic_core::obstruction::{
    deformation_report, k3_kernel, log_pairing, line_bundle_cocycle, obstruction_certificate,
    Deformation, PicGroup, ReportOptions, Scenario, Verdict,
};
use hyperpic_core::poly::{fermat, rat};
use hyperpic_core::tangent::{
    is_cocycle_mod_euler, generating_field, tangency_check, truncated_h_tangent,
};
use hyperpic_core::{Error, Exponent, HomogeneousPoly, Rational};

const PERTURBED_QUINTIC: &str = "x0^5 + x1^5 + x2^5 + x3^5 + x4^5 + x0 x1 x2 x3 x4";

fn perturbed_quintic() -> HomogeneousPoly {
    HomogeneousPoly::parse(PERTURBED_QUINTIC, 4).unwrap()
}

#[test]
fn fermat_quintic_certificates_for_small_twists() {
    let f = fermat(4, 5);
    for m in -3..=3i64 {
        let c = obstruction_certificate(&f, 4, m).unwrap();
        assert_eq!(c.value, rat(-5 * m), "m = {m}");
        assert_eq!(c.reference_value, rat(5));
        let expected = if m == 0 { Verdict::ZeroClass } else { Verdict::NonzeroClass };
        assert_eq!(c.verdict, expected);
    }
}

#[test]
fn paired_top_entry_is_d0f_over_the_chart_coordinates() {
    for f in [fermat(4, 5), perturbed_quintic()] {
        let r = FReducer::new(&f).unwrap();
        let c = log_pairing(&generating_field(&f, 4).unwrap(), &line_bundle_cocycle(-1, 4), &r).unwrap();
        let expected = f.partial_derivative(0).shift(&Exponent::new(vec![0, -1, -1, -1, -1]));
        assert_eq!(c.entry(&CechIndex::full(4)), expected);
    }
}

#[test]
fn perturbed_quintic_passes_every_check() {
    let f = perturbed_quintic();
    assert!(check_hypotheses(&f, 4, &GroebnerConfig::default()).all_ok());
    let d = generating_field(&f, 4).unwrap();
    assert!(tangency_check(&d, &f).unwrap());
    assert!(is_cocycle_mod_euler(&d, &f).unwrap());
    let c = obstruction_certificate(&f, 4, -1).unwrap();
    assert_eq!(c.value, rat(5));
}

#[test]
fn sextic_fourfold_generator_pairs_to_six() {
    let f = fermat(5, 6);
    assert_eq!(obstruction_certificate(&f, 5, -1).unwrap().value, rat(6));
    let scaled = HomogeneousPoly::parse("2 x0^6 + x1^6 + x2^6 + x3^6 + x4^6 + x5^6 - x1 x2 x3 x4 x5^2", 5).unwrap();
    assert_eq!(obstruction_certificate(&scaled, 5, -1).unwrap().value, rat(12));
}

#[test]
fn structure_sheaf_dims_of_the_quintic() {
    let dims = hypersurface_o_cohomology_dims(4, 5).unwrap();
    assert_eq!(dims.iter().collect::<Vec<_>>(), vec![(0, 1), (1, 0), (2, 0), (3, 1)]);
}

#[test]
fn quintic_tangent_cohomology() {
    let f = fermat(4, 5);
    // the generating class spans H^{n-2}(T_X)
    let h2 = truncated_h_tangent(&f, 2, 1).unwrap();
    assert_eq!((h2.dim, h2.stabilized), (1, true));
    // Hodge number h^{2,1} of the quintic threefold
    let h1 = truncated_h_tangent(&f, 1, 1).unwrap();
    assert_eq!((h1.dim, h1.stabilized), (101, true));
}

#[test]
fn quartic_surfaces_have_a_nineteen_dimensional_kernel() {
    // tangent representatives of the perturbed surface need a wider truncation
    for (text, bound) in [
        ("x0^4 + x1^4 + x2^4 + x3^4", 3),
        ("x0^4 + x1^4 + x2^4 + x3^4 + x0 x1 x2 x3", 5),
    ] {
        let f = HomogeneousPoly::parse(text, 3).unwrap();
        assert!(check_hypotheses(&f, 3, &GroebnerConfig::default()).all_ok());
        let k = k3_kernel(&f, bound).unwrap();
        assert!(k.conclusive(), "{text}");
        assert_eq!((k.h1, k.rank, k.kernel), (20, 1, 19), "{text}");
        // the generator comes first and pairs to -(n+1)·c with O(1)
        assert_eq!(k.pairing_values[0], rat(-4));
    }
}

#[test]
fn narrow_truncations_are_reported_as_incomplete() {
    let k = k3_kernel(&fermat(3, 4), 1).unwrap();
    assert_eq!(k.h1, 20);
    assert!(k.stabilized && !k.complete && !k.conclusive());
}

#[test]
fn reports_for_both_quintics() {
    let opts = ReportOptions {
        assume_pic_z: true,
        ..Default::default()
    };
    for f in [fermat(4, 5), perturbed_quintic()] {
        let r = deformation_report(
            &Scenario::Hypersurface { f: f.clone(), deformation: Deformation::Generator },
            &opts,
        )
        .unwrap();
        assert_eq!(r.conclusion, Some(PicGroup { free_rank: 0, vector_dim: 0 }));
        assert_eq!((r.h_source, r.h_target), (0, 1));
        let r = deformation_report(
            &Scenario::Hypersurface { f, deformation: Deformation::Scaled(Rational::new(3.into(), 7.into())) },
            &opts,
        )
        .unwrap();
        assert_eq!(r.conclusion.map(|g| g.to_string()), Some("0".to_string()));
    }
}

#[test]
fn trivial_extensions_of_projective_space() {
    let opts = ReportOptions {
        assume_pic_z: true,
        ..Default::default()
    };
    let pic = |n, twist, shift| {
        deformation_report(&Scenario::TrivialExtension { n, twist, shift }, &opts)
            .unwrap()
            .conclusion
            .unwrap()
            .to_string()
    };
    assert_eq!(pic(2, -3, 1), "Z ⊕ k^1");
    assert_eq!(pic(2, -4, 1), "Z ⊕ k^3");
    assert_eq!(pic(2, 0, 1), "Z");
    assert_eq!(pic(3, -4, 2), "Z ⊕ k^1");
    // H^1(P^n, O(k)) vanishes for n ≥ 2
    assert_eq!(pic(3, -4, 0), "Z");
}

#[test]
fn invalid_inputs_are_rejected() {
    let off_cover = HomogeneousPoly::parse("x1^5 + x2^5 + x3^5 + x4^5 + x0 x1^4", 4).unwrap();
    assert!(matches!(generating_field(&off_cover, 4), Err(Error::CoverViolated)));
    assert!(matches!(
        obstruction_certificate(&fermat(3, 4), 3, 1),
        Err(Error::Hypothesis(_))
    ));
    assert!(matches!(
        obstruction_certificate(&fermat(4, 4), 4, 1),
        Err(Error::Hypothesis(_) | Error::WrongDegree { .. })
    ));
    assert!(k3_kernel(&fermat(4, 5), 2).is_err());
    assert!(HomogeneousPoly::parse("x0^2 + x1", 1).is_err());
    let r = deformation_report(
        &Scenario::Hypersurface { f: fermat(4, 5), deformation: Deformation::Generator },
        &ReportOptions::default(),
    )
    .unwrap();
    assert!(r.conclusion.is_none());
    assert!(r.obstruction.is_none());
}
