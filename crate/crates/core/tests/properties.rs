mod common;

use common::*;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(CASES))]

    #[test]
    fn rationals_form_a_field(a in rational(), b in rational(), c in rational()) {
        ring_laws(&a, &b, &c)?;
    }

    #[test]
    fn prime_field_small(a in fp(101), b in fp(101), c in fp(101)) {
        ring_laws(&a, &b, &c)?;
    }

    #[test]
    fn prime_field_large(a in fp(2_147_483_647), b in fp(2_147_483_647), c in fp(2_147_483_647)) {
        ring_laws(&a, &b, &c)?;
    }

    #[test]
    fn laurent_polynomials_form_a_ring(a in laurent(), b in laurent(), c in laurent()) {
        laurent_laws(&a, &b, &c)?;
    }

    #[test]
    fn truncated_series_form_a_ring(a in series(), b in series(), c in series()) {
        series_laws(&a, &b, &c)?;
    }

    #[test]
    fn exact_division_inverts_multiplication(f in series(), d in divisor()) {
        division_inverts_multiplication(&f, &d)?;
    }

    #[test]
    fn transvectants_are_graded((i, j, k, lambda) in transvectant_case()) {
        transvectant_grading(i, j, k, &lambda)?;
    }

    #[test]
    fn invariants_are_sl2_invariant(m in unimodular(), a in sextic_point()) {
        let invs = named_invariants();
        sl2_invariance(&invs, m, &a)?;
    }
}
