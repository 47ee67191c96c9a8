//! The semimatroid of an affine line arrangement with a parallel pair.

use semimatroid_dt::generators::{semimatroid_from_arrangement, Arrangement};
use semimatroid_dt::semimatroid::Target;

fn main() {
    // x = 0, x = 1, y = 0, x + y = 2
    let a = Arrangement::from_integers(2, &[(&[1, 0], 0), (&[1, 0], 1), (&[0, 1], 0), (&[1, 1], 2)]).unwrap();
    let s = semimatroid_from_arrangement(&a).unwrap();
    let facets: Vec<String> = s.complex().facets().into_iter().map(|f| s.ground().format_face(f)).collect();
    println!("central subarrangements (facets): {}", facets.join(" "));
    println!("T = {}", s.tutte_sum());
    println!("bounded regions T(0,0) = {}", s.beta());
    println!("P(rank) = {}", s.poincare_closed(Target::Rank).unwrap());
}
