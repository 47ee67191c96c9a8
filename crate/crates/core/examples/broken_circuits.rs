//! Broken circuit complexes under two orders, with their shedding certificates.

use semimatroid_dt::broken_circuit::{bc_complex, bc_shedding_order, circuits, critical_nbc, f_polynomial, NbcOrder};
use semimatroid_dt::canonical;
use semimatroid_dt::complex::Face;

fn main() {
    for name in ["A", "B"] {
        let s = canonical::instance(name).unwrap();
        let show = |fs: &[Face]| {
            if fs.is_empty() {
                return "none".to_string();
            }
            fs.iter().map(|&f| s.ground().format_face(f)).collect::<Vec<_>>().join(" ")
        };
        for seq in [vec![0, 1, 2], vec![2, 1, 0]] {
            let order = NbcOrder::new(&s, seq.clone()).unwrap();
            let cs = circuits(&s, &order);
            let bc = bc_complex(&s, &order);
            println!("{name}, order {seq:?}");
            println!("    circuits  {}", show(&cs.circuits));
            println!("    broken    {}", show(&cs.broken));
            println!("    BC facets {}", show(&bc.complex.facets()));
            println!("    f = {}", f_polynomial(&bc.complex));
            println!("    critical  {}", show(&critical_nbc(&s, &order)));
        }
        println!("    certificate {:?}", bc_shedding_order(&s).unwrap());
    }
}
