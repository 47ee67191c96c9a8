//! Builds the rank tree of three concurrent lines and lists its evasive faces.

use semimatroid_dt::canonical;
use semimatroid_dt::io;
use semimatroid_dt::semimatroid::{Strategy, Target};
use semimatroid_dt::tree::{check_element_tree, evasive_profile};

fn main() {
    let s = canonical::instance("B").unwrap();
    for target in [Target::Rank, Target::Nullity, Target::Constant] {
        let f = s.target_map(target);
        let t = s.build_tree(target, Strategy::Max);
        check_element_tree(&t, &f).unwrap();
        let profile = evasive_profile(&t, &f).unwrap();
        println!("{target:?}: depth {}, evasive polynomial {}", t.depth(), profile.polynomial());
        for ((p, i), n) in profile.counts() {
            let faces: Vec<String> = profile.faces(p, i).iter().map(|&g| s.ground().format_face(g)).collect();
            println!("    value {p}, size {i}: {n} evasive {}", faces.join(" "));
        }
    }
    println!("{}", io::to_string_pretty(&s.build_tree(Target::Rank, Strategy::Max)));
}
