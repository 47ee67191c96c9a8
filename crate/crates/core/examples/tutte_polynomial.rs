//! Tutte polynomials of the bundled instances, by subset sum and by deletion-contraction.

use semimatroid_dt::canonical;
use semimatroid_dt::semimatroid::Strategy;

fn main() {
    for (name, s) in canonical::all() {
        let sum = s.tutte_sum();
        let rec = s.tutte_recurrence(Strategy::Max);
        assert_eq!(sum, rec);
        println!("{name}: T = {sum}   T(0,0) = {}", s.beta());
        for e in s.elements().iter() {
            println!("    element {}: {}", s.ground().label(e), s.classify(e).unwrap());
        }
    }
}
