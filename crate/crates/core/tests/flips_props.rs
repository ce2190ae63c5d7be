use octa_core::field::rational::ratio;
use octa_core::field::Rational;
use octa_core::flips::{build_staircase, planar_atlas, shifted_points, staircase_atlas, verify_structure};
use octa_core::slope::{ammann_beenker, biquadratic_example};
use octa_core::subperiod;
use octa_core::tiling::{Frame, Tube};
use octa_core::Error;
use proptest::prelude::*;

fn int(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

fn small_shift() -> impl Strategy<Value = [Rational; 4]> {
    prop::array::uniform4((-3i64..=3, 60i64..240)).prop_map(|c| c.map(|(n, d)| ratio(n, d)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn accepted_shifts_have_the_flip_structure(sh in small_shift(), which in 0usize..2) {
        prop_assume!(sh.iter().any(|x| *x != int(0)));
        let s = [ammann_beenker(), biquadratic_example()][which]
            .with_offset([ratio(1, 7), ratio(2, 11), ratio(3, 13), ratio(5, 17)]);
        let ss = match shifted_points(&s, &sh, &int(30)) {
            Ok(ss) => ss,
            Err(Error::ShiftTooLarge { .. }) => return Ok(()),
            Err(e) => panic!("{e}"),
        };
        prop_assert!(ss.is_covering());
        let before = Tube::new(&s).unwrap();
        let frame = before.frame();
        for k in 1..=4 {
            for z in ss.class(k) {
                prop_assert!(!before.in_strip(k - 1, z));
                prop_assert!(frame.e_within(z, &int(30)));
            }
        }
        // failures carry a witness and disappear once the shift is small enough
        let sp = subperiod::analyze(&s).unwrap();
        let mut rep = verify_structure(&ss, &s, &sp, &int(3)).unwrap();
        let mut scale = 1;
        while !rep.passed() {
            prop_assert!(rep.clauses.iter().any(|c| c.witness.is_some()));
            scale *= 2;
            prop_assert!(scale <= 64, "{:?}", rep);
            let smaller = sh.clone().map(|x| x / int(scale));
            let ss = shifted_points(&s, &smaller, &int(30)).unwrap();
            rep = verify_structure(&ss, &s, &sp, &int(3)).unwrap();
        }
    }
}

#[test]
fn ab_staircase_patterns_are_planar_patterns() {
    let s = ammann_beenker().with_offset([ratio(1, 7), ratio(2, 11), ratio(3, 13), ratio(5, 17)]);
    let sh = [ratio(1, 200), ratio(1, 330), ratio(1, 470), ratio(1, 610)];
    let (r, radius) = (int(1), int(25));
    let st = build_staircase(&s, &sh, &r, 2, &radius).unwrap();
    assert_eq!(st.steps(), 2);
    assert!(st.bands_follow_shifts().unwrap());
    assert!(st.min_flip_distance(&Frame::new(&s).unwrap()) >= 5.0);
    let atlas = staircase_atlas(&st, &r).unwrap();
    let planar = planar_atlas(&s, &sh, 2, &r, &radius).unwrap();
    assert!(atlas.is_subset(&planar));
    // the same inputs give the same staircase
    let again = build_staircase(&s, &sh, &r, 2, &radius).unwrap();
    assert_eq!(again.bands(), st.bands());
}
