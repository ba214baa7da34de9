mod common;

use common::props::*;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn rank_plus_nullity_is_column_count(m in small_matrix()) {
        rank_nullity(&m)?;
    }

    #[test]
    fn annihilator_is_an_involution(v in small_subspace()) {
        annihilator_involution(&v)?;
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn boundary_of_boundary_vanishes(k in small_complex()) {
        boundary_squared_zero(&k)?;
    }

    #[test]
    fn ordinary_mayer_vietoris_is_exact(k in covered_complex()) {
        mv_sequence_exact(&k)?;
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn intersection_chains_form_a_subcomplex(s in stratified_3complex()) {
        ic_is_subcomplex(&s)?;
    }

    #[test]
    fn allowability_grows_with_the_perversity(s in stratified_3complex()) {
        perversity_monotone(&s)?;
    }
}
