//! Cross-engine consistency: the Gauss-sum root formula against brute-force
//! enumeration, and the three series routes against one another.

use num_bigint::BigInt;

use zetaq_core::field::field_create;
use zetaq_core::zeta::series::poly_series;
use zetaq_core::zeta::{
    count_points, counts_from_roots, euler_product_series, fermat_roots, orbit_counts,
    reconstruct_rational, verify_weil, zeta_series, FermatSurface, PolySystem,
    TruncatedSeries,
};

/// Every diagonal surface with q <= 13, m <= 4, n <= 3 and q = 1 mod m.
fn surface_family() -> Vec<FermatSurface> {
    let mut out = Vec::new();
    for (p, r) in [(2u64, 2u32), (5, 1), (7, 1), (2, 3), (3, 2), (11, 1), (13, 1)] {
        let ctx = field_create(p, r).unwrap();
        let q = ctx.q();
        for m in 2..=4u64 {
            if (q - 1) % m != 0 {
                continue;
            }
            for n in 1..=3usize {
                // All-ones coefficients plus one mixed variant.
                let ones = vec![1i64; n + 1];
                out.push(FermatSurface::from_ints(ctx.clone(), m, &ones).unwrap());
                if q > 2 {
                    let mut mixed = vec![1i64; n + 1];
                    mixed[0] = -1;
                    out.push(FermatSurface::from_ints(ctx.clone(), m, &mixed).unwrap());
                }
            }
        }
    }
    out
}

#[test]
fn roots_and_enumeration_agree_on_the_whole_family() {
    for surface in surface_family() {
        let q = surface.ctx().q();
        let m = surface.degree();
        let n = surface.n();
        let profile = fermat_roots(&surface).unwrap();
        let sys = surface.to_poly_system();
        for s in 1..=2u32 {
            // Skip enumerations beyond the desk-scale cap (q^s stays small
            // for this family; the cap is a safety net).
            let from_roots = counts_from_roots(&profile, s)
                .unwrap_or_else(|e| panic!("q={q} m={m} n={n} s={s}: {e}"));
            let brute = count_points(&sys, s)
                .unwrap_or_else(|e| panic!("q={q} m={m} n={n} s={s}: {e}"));
            assert_eq!(from_roots, brute, "q={q} m={m} n={n} s={s}");
        }
    }
}

#[test]
fn every_profile_passes_the_weil_checks() {
    for surface in surface_family() {
        let profile = fermat_roots(&surface).unwrap();
        let report = verify_weil(&profile);
        assert!(
            report.pass,
            "q={} m={} n={}: max dev {:.2e}, unmatched {}",
            surface.ctx().q(),
            surface.degree(),
            surface.n(),
            report.max_relative_magnitude_deviation,
            report.unmatched_conjugates
        );
    }
}

#[test]
fn series_from_counts_equals_series_from_the_rational_form() {
    for surface in surface_family() {
        if surface.n() > 2 {
            continue; // keep the s-range enumerable
        }
        let q = surface.ctx().q();
        let order = if q <= 7 { 4 } else { 3 };
        let profile = fermat_roots(&surface).unwrap();
        let sys = surface.to_poly_system();
        let counts: Vec<BigInt> = (1..=order as u32)
            .map(|s| count_points(&sys, s).unwrap())
            .collect();
        let series = zeta_series(&counts);
        let form = reconstruct_rational(&profile).unwrap();
        let expansion = form.expand(order);
        assert_eq!(
            series,
            expansion,
            "q={q} m={} n={}",
            surface.degree(),
            surface.n()
        );
    }
}

#[test]
fn euler_product_equals_the_exp_form_for_counted_varieties() {
    let corpus = [
        ("5 1 projective\nX1 + X2\n", 5usize),
        ("2 1 projective\nX1 + X2\n", 4),
        ("5 1 projective\nX0^4 + X1^4 + X2^4\n", 4),
        ("7 1 projective\nX0^3 + X1^3 + X2^3\n", 3),
        ("3 1 affine\nX1^2 + 1\n", 6),
        ("2 1 projective 3\n", 5),
    ];
    for (text, order) in corpus {
        let sys = PolySystem::parse(text).unwrap();
        let counts: Vec<BigInt> = (1..=order as u32)
            .map(|s| count_points(&sys, s).unwrap())
            .collect();
        let b = orbit_counts(&counts).unwrap();
        assert_eq!(
            euler_product_series(&b, order),
            zeta_series(&counts),
            "{text:?}"
        );
    }
}

#[test]
fn quadric_rational_form_expands_to_the_printed_zeta() {
    // 1/((1-T)(1-49T^2)(1-49T)) up to T^4, via the reconstructed form.
    let f7 = field_create(7, 1).unwrap();
    let surface = FermatSurface::from_ints(f7, 2, &[-1, 1, 1, 1]).unwrap();
    let profile = fermat_roots(&surface).unwrap();
    let form = reconstruct_rational(&profile).unwrap();
    let expansion = form.expand(4);

    let one_minus_49t2 = poly_series(&[BigInt::from(1), BigInt::from(0), BigInt::from(-49)], 4);
    let one_minus_t = poly_series(&[BigInt::from(1), BigInt::from(-1)], 4);
    let one_minus_49t = poly_series(&[BigInt::from(1), BigInt::from(-49)], 4);
    let direct: TruncatedSeries = one_minus_t
        .mul(&one_minus_49t2)
        .mul(&one_minus_49t)
        .inverse()
        .unwrap();
    assert_eq!(expansion, direct);
}
