use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use zxct::catalog::{random_zw, random_zx};
use zxct::diagram::{iso_equal, Diagram};
use zxct::semantics::interpret;
use zxct::translate::{zw_to_zx, zx_to_zw};

fn pair(seed: u64, zw: bool) -> (Diagram, Diagram) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let gen = |rng: &mut ChaCha8Rng| if zw { random_zw(rng, 4) } else { random_zx(rng, 4) };
    let a = gen(&mut rng);
    loop {
        let b = gen(&mut rng);
        if b.n_inputs <= a.n_outputs {
            let pad = Diagram::identity(a.calculus, a.n_outputs - b.n_inputs);
            return (a, Diagram::tensor(&b, &pad).unwrap());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn zx_to_zw_is_structural(seed in any::<u64>()) {
        let (a, b) = pair(seed, false);
        let whole = zx_to_zw(&Diagram::compose(&a, &b).unwrap()).unwrap();
        let parts = Diagram::compose(&zx_to_zw(&a).unwrap(), &zx_to_zw(&b).unwrap()).unwrap();
        prop_assert!(iso_equal(&whole, &parts));
        let side = zx_to_zw(&Diagram::tensor(&a, &b).unwrap()).unwrap();
        let sides = Diagram::tensor(&zx_to_zw(&a).unwrap(), &zx_to_zw(&b).unwrap()).unwrap();
        prop_assert!(iso_equal(&side, &sides));
    }

    #[test]
    fn zw_to_zx_is_structural(seed in any::<u64>()) {
        let (a, b) = pair(seed, true);
        let whole = zw_to_zx(&Diagram::compose(&a, &b).unwrap()).unwrap();
        let parts = Diagram::compose(&zw_to_zx(&a).unwrap(), &zw_to_zx(&b).unwrap()).unwrap();
        prop_assert!(iso_equal(&whole, &parts));
        prop_assert_eq!(interpret(&whole).unwrap(), interpret(&parts).unwrap());
    }

    #[test]
    fn flips_commute_with_translation(seed in any::<u64>()) {
        let (a, _) = pair(seed, false);
        let m = interpret(&zx_to_zw(&a.flip_vertical()).unwrap()).unwrap();
        prop_assert_eq!(m, interpret(&zx_to_zw(&a).unwrap().flip_vertical()).unwrap());
    }
}
