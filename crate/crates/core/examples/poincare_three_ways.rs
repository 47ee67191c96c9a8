//! The Poincaré polynomial from the closed form, from integral homology and from a built tree.

use semimatroid_dt::canonical;
use semimatroid_dt::homology::poincare_from_homology;
use semimatroid_dt::semimatroid::{Strategy, Target};
use semimatroid_dt::tree::evasive_polynomial;

fn main() {
    for (name, s) in canonical::all() {
        for target in [Target::Rank, Target::Nullity, Target::Constant] {
            let f = s.target_map(target);
            let closed = s.poincare_closed(target).unwrap();
            let homology = poincare_from_homology(&f).unwrap().polynomial;
            let tree = evasive_polynomial(&s.build_tree(target, Strategy::Any), &f).unwrap();
            assert!(closed == homology && homology == tree);
            println!("{name} {target:?}: {closed}");
        }
    }
}
