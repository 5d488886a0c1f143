mod common;

use common::*;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(CASES))]

    #[test]
    fn phi_is_equivariant(k in 0..SPACES.len(), gw in words(), xw in words()) {
        phi_equivariance(k, &gw, &xw)?;
    }

    #[test]
    fn theta_inverts_phi_values(k in 0..SPACES.len(), xw in words()) {
        theta_inverts_phi(k, &xw)?;
    }

    #[test]
    fn geodesic_symmetry_is_an_involution(k in 0..SPACES.len() + GROUP_FORMS.len(), xw in words(), yw in words()) {
        symmetry_involutive(k, &xw, &yw)?;
    }

    #[test]
    fn ext_mul_is_associative(k in 0..SPACES.len(), w in prop::array::uniform3(words()), e in prop::array::uniform3(any::<bool>())) {
        ext_mul_associative(k, &w, e)?;
    }

    #[test]
    fn signature_is_conjugation_invariant(k in 0..SPACES.len(), xw in words(), hw in words(), outer in any::<bool>(), pick in 0..4u8, q in 0usize..5) {
        signature_invariant(k, &xw, &hw, outer, pick, q)?;
    }
}
