use latpoly::eventree::{path_to_tree, tree_to_path};
use latpoly::lattice::{LatticePath, Step};
use latpoly::matching::{matching_to_path, path_to_matching};
use proptest::prelude::*;

/// Random path below the line: each raw bit picks N when N is allowed.
fn arb_path(max_len: usize) -> impl Strategy<Value = LatticePath> {
    prop::collection::vec(any::<bool>(), 0..max_len).prop_map(|bits| {
        let (mut x, mut y) = (0u32, 0u32);
        let steps = bits
            .into_iter()
            .map(|north| {
                if north && x >= 2 * (y + 1) {
                    y += 1;
                    Step::N
                } else {
                    x += 1;
                    Step::E
                }
            })
            .collect();
        LatticePath::from_steps(steps).unwrap()
    })
}

proptest! {
    #[test]
    fn matching_roundtrip(p in arb_path(40)) {
        let m = path_to_matching(&p);
        prop_assert_eq!(m.crossings(), p.weight_exponent());
        prop_assert_eq!(m.position(), p.endpoint());
        prop_assert!(m.is_admissible());
        prop_assert_eq!(matching_to_path(&m).unwrap(), p);
    }

    #[test]
    fn tree_roundtrip(p in arb_path(40)) {
        let t = path_to_tree(&p);
        prop_assert_eq!(t.r_index(), p.weight_exponent());
        prop_assert_eq!(tree_to_path(&t, p.endpoint()).unwrap(), p);
    }

    #[test]
    fn path_text_roundtrip(p in arb_path(40)) {
        prop_assert_eq!(p.to_string().parse::<LatticePath>().unwrap(), p);
    }
}
