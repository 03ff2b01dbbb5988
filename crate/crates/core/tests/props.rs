//! Property suites over randomized inputs.

use num_bigint::BigInt;
use num_complex::Complex64;
use proptest::prelude::*;

use zetaq_core::field::{field_create, FieldCtx};
use zetaq_core::qsim::{make_chi_state, StateVector};
use zetaq_core::zeta::{euler_product_series, orbit_counts, zeta_series};

fn small_fields() -> Vec<FieldCtx> {
    [(2u64, 1u32), (5, 1), (7, 1), (2, 4), (3, 2), (13, 1), (5, 2), (2, 6)]
        .iter()
        .map(|&(p, r)| field_create(p, r).unwrap())
        .collect()
}

proptest! {
    #[test]
    fn pow_is_a_homomorphism_in_the_exponent(
        field_i in 0usize..8,
        x_raw in 0u64..4096,
        a in -12i64..12,
        b in -12i64..12,
    ) {
        let fields = small_fields();
        let f = &fields[field_i];
        let x = f.elem(x_raw % f.q()).unwrap();
        if x.is_zero() {
            return Ok(());
        }
        let lhs = f.pow(x, a + b).unwrap();
        let rhs = f.mul(f.pow(x, a).unwrap(), f.pow(x, b).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
        let inv_route = f.inv(f.pow(x, a).unwrap()).unwrap();
        prop_assert_eq!(f.pow(x, -a).unwrap(), inv_route);
    }

    #[test]
    fn field_axioms_on_random_triples(
        field_i in 0usize..8,
        xa in 0u64..4096,
        xb in 0u64..4096,
        xc in 0u64..4096,
    ) {
        let fields = small_fields();
        let f = &fields[field_i];
        let a = f.elem(xa % f.q()).unwrap();
        let b = f.elem(xb % f.q()).unwrap();
        let c = f.elem(xc % f.q()).unwrap();
        // Distributivity and associativity.
        let lhs = f.mul(a, f.add(b, c).unwrap()).unwrap();
        let rhs = f.add(f.mul(a, b).unwrap(), f.mul(a, c).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
        let lhs = f.mul(f.mul(a, b).unwrap(), c).unwrap();
        let rhs = f.mul(a, f.mul(b, c).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
        // Subtraction inverts addition.
        prop_assert_eq!(f.sub(f.add(a, b).unwrap(), b).unwrap(), a);
    }

    #[test]
    fn orbit_counts_invert_divisor_sums(bs in prop::collection::vec(0i64..40, 1..8)) {
        // Build N_s = sum_{d | s} d b_d from arbitrary nonnegative orbit
        // data, then invert and cross-check the Euler product.
        let b: Vec<BigInt> = bs.iter().map(|&v| BigInt::from(v)).collect();
        let s_max = b.len();
        let counts: Vec<BigInt> = (1..=s_max)
            .map(|s| {
                let mut acc = BigInt::from(0);
                for d in 1..=s {
                    if s % d == 0 {
                        acc += BigInt::from(d as u64) * &b[d - 1];
                    }
                }
                acc
            })
            .collect();
        let recovered = orbit_counts(&counts).unwrap();
        prop_assert_eq!(&recovered, &b);
        prop_assert_eq!(euler_product_series(&b, s_max), zeta_series(&counts));
    }

    #[test]
    fn gates_preserve_the_norm(
        field_i in 0usize..8,
        alpha in 0i64..24,
        b in 1i64..6,
        seed_re in prop::collection::vec(-1.0f64..1.0, 4),
    ) {
        let fields = small_fields();
        let f = &fields[field_i];
        if f.q() < 3 {
            return Ok(());
        }
        let chi_a = make_chi_state(f, alpha);
        let chi_b = make_chi_state(f, alpha + b);
        let mut st = StateVector::product(&[&chi_a, &chi_b]).unwrap();
        // A little extra asymmetry so the state is not an eigenvector.
        st.global_phase(Complex64::new(seed_re[0].max(0.1), seed_re[1]).unscale(
            Complex64::new(seed_re[0].max(0.1), seed_re[1]).norm(),
        ));
        let before = st.norm();
        st.mul_gate(0, 1, f, b).unwrap();
        st.qft_field(0, f, false).unwrap();
        st.scalar_mul_gate(1, f, f.generator()).unwrap();
        st.qft_field(0, f, true).unwrap();
        let after = st.norm();
        prop_assert!((before - after).abs() < 1e-9);
    }

    #[test]
    fn series_inverse_is_two_sided(coeffs in prop::collection::vec(-9i64..9, 2..7)) {
        let mut c: Vec<BigInt> = coeffs.iter().map(|&v| BigInt::from(v)).collect();
        c[0] = BigInt::from(1);
        let s = zetaq_core::zeta::series::poly_series(&c, c.len() + 2);
        let inv = s.inverse().unwrap();
        let order = s.order();
        prop_assert_eq!(
            s.mul(&inv),
            zetaq_core::zeta::TruncatedSeries::one(order)
        );
    }
}
