use std::sync::Arc;

use proptest::prelude::*;
use prospecies::dsl::{parse_presentation, print_presentation};
use prospecies::fixtures;
use prospecies::modules::{hom_space, is_isomorphic, random_module, tensor_over, Module};
use prospecies::presentation::present_tensor_algebra;
use prospecies::prospecies::{tensor_algebra, tensor_module, Representation};
use prospecies::Field;
use rand::SeedableRng;

const Q: Field = Field::Rationals;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn module_rep_round_trip_on_fix_b(seed in 0u64..1000) {
        let ps = Arc::new(fixtures::fix_b(Q));
        let t = tensor_algebra(&ps).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let m = random_module(t.algebra(), 5, &mut rng).unwrap();
        let (rep, _) = t.module_to_rep(&m).unwrap();
        prop_assert_eq!(rep.dim(), 5);
        prop_assert!(is_isomorphic(&t.rep_to_module(&rep).unwrap(), &m).is_iso());
    }

    #[test]
    fn standard_resolution_on_fix_a(a in 0usize..3, b in 0usize..3, coeffs in prop::collection::vec(-2i64..=2, 9)) {
        let ps = Arc::new(fixtures::fix_a(Q));
        let k = ps.algebra(0).clone();
        let modules = vec![Module::free(k.clone(), a), Module::free(k, b)];
        let ts = tensor_over(&ps.bimodule(0).as_right(), &modules[0]).unwrap();
        let h = hom_space(&tensor_module(ps.bimodule(0), &ts), &modules[1]);
        let c: Vec<_> = coeffs.iter().take(h.dim()).map(|&x| Q.from_i64(x)).collect();
        let rep = Representation::new(ps.clone(), modules, vec![h.combine(&c)]).unwrap();
        let t = tensor_algebra(&ps).unwrap();
        let res = t.standard_resolution(&rep).unwrap();
        prop_assert!(res.exact);
        prop_assert_eq!(res.p1.dim(), a);
        prop_assert_eq!(res.p0.dim(), 2 * a + b);
    }

    #[test]
    fn presentations_of_random_instances_print_and_parse_back(seed in 0u64..40) {
        let ps = fixtures::random_instance(Q, seed);
        let p = present_tensor_algebra(&ps).unwrap();
        let text = print_presentation(&p, Q);
        prop_assert_eq!(parse_presentation(&text).unwrap(), p);
    }
}

#[test]
fn simple_at_the_source_of_fix_a_has_one_dimensional_syzygy() {
    let ps = Arc::new(fixtures::fix_a(Q));
    let rep = Representation::at_vertex(ps.clone(), 0, Module::regular(ps.algebra(0).clone()));
    let res = tensor_algebra(&ps).unwrap().standard_resolution(&rep).unwrap();
    assert!(res.exact);
    assert_eq!((res.p1.dim(), res.p0.dim()), (1, 2));
}
