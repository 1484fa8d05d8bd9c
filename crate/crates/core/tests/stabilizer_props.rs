mod common;

use mbqc_core::stabilizer::{GeneratorMatrix, Letter, MeasurementPlane, PauliWord, Qubit, StabilizerError};
use proptest::prelude::*;

proptest! {
    #[test]
    fn letters_round_trip(seed in any::<u64>(), n in 1usize..=7) {
        let mut rng = common::rng(seed);
        let letters = common::random_letters(&mut rng, n);
        let planes: Vec<MeasurementPlane> = (0..n).map(|_| common::random_plane(&mut rng)).collect();
        let g = GeneratorMatrix::from_letters(&letters, &planes).unwrap();
        prop_assert_eq!(g.to_letters(), letters.clone());
        for word in &letters {
            let p = PauliWord::from_letters(word, &planes).unwrap();
            prop_assert_eq!(&p.to_letters(&planes), word);
        }
    }

    #[test]
    fn plane_encoding_is_bijective(seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let plane = common::random_plane(&mut rng);
        for c in ['I', 'X', 'Y', 'Z'] {
            let letter = Letter::from_char(c).unwrap();
            let (w, v) = plane.encode(letter);
            prop_assert_eq!(plane.decode(w, v), letter);
        }
        prop_assert_eq!(plane.encode(Letter::P(plane.phi_axis())), (true, false));
        prop_assert_eq!(plane.encode(Letter::P(plane.s_axis())), (false, true));
        prop_assert_eq!(plane.encode(Letter::P(plane.sphi_axis())), (true, true));
        prop_assert_eq!(plane.flipped().flipped(), plane);
        prop_assert_eq!(plane.replanted().replanted(), plane);
    }

    #[test]
    fn random_generators_are_valid(seed in any::<u64>(), n in 1usize..=7) {
        let mut rng = common::rng(seed);
        let g = common::random_generator(&mut rng, n);
        prop_assert!(g.check_valid().is_ok());
        let gens = g.generators();
        for a in &gens {
            for b in &gens {
                prop_assert!(a.commutes_with(b));
            }
        }
    }

    #[test]
    fn reencoding_keeps_letters(seed in any::<u64>(), n in 1usize..=6, site in 0usize..6) {
        let mut rng = common::rng(seed);
        let g = common::random_generator(&mut rng, n);
        let q = Qubit::from_index(site % n);
        prop_assert_eq!(g.flip_plane(q).to_letters(), g.to_letters());
        prop_assert_eq!(g.replant(q).to_letters(), g.to_letters());
        prop_assert_eq!(g.flip_plane(q).flip_plane(q), g.clone());
        prop_assert!(g.flip_plane(q).check_valid().is_ok());
    }

    #[test]
    fn group_elements_are_closed(seed in any::<u64>(), n in 1usize..=5) {
        let mut rng = common::rng(seed);
        let g = common::random_generator(&mut rng, n);
        let elements = g.elements();
        prop_assert_eq!(elements.len(), 1 << n);
        let a = &elements[elements.len() / 2];
        let b = &elements[elements.len() - 1];
        prop_assert!(g.contains(&a.multiply(b)));
    }
}

#[test]
fn rejects_anticommuting_and_dependent_words() {
    let xy = [MeasurementPlane::XY; 2];
    assert!(matches!(
        GeneratorMatrix::from_letters(&["XI", "ZI"], &xy),
        Err(StabilizerError::NotCommuting(..))
    ));
    assert!(matches!(
        GeneratorMatrix::from_letters(&["XX", "XX"], &xy),
        Err(StabilizerError::NotFullRank { .. })
    ));
}
