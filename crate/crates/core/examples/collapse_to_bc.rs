//! Collapses each instance onto its broken circuit complex and replays the schedule.

use semimatroid_dt::canonical;
use semimatroid_dt::collapse::collapse_to_bc;

fn main() {
    for (name, s) in canonical::all() {
        let (seq, bc) = collapse_to_bc(&s).unwrap();
        let rest = seq.replay(s.complex()).unwrap();
        println!("{name}: {} faces, {} collapses, {} left", s.complex().len(), seq.len(), rest.len());
        for step in &seq.steps {
            println!("    remove {} with {}", s.ground().format_face(step.free), s.ground().format_face(step.cofacet));
        }
        if bc.complex.is_void() {
            println!("    BC is void; a single vertex remains");
        }
    }
}
