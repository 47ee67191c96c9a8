//! Semimatroids as pairs of a matroid and a pseudo-independent complex: K4 and its bipartite subgraphs.

use semimatroid_dt::generators::{bipartite_complex, Graph};
use semimatroid_dt::semimatroid::{check_spi, matroid_closure, semimatroid_from_spi};

fn main() {
    let (complex, s) = bipartite_complex(&Graph::complete(4)).unwrap();
    let m = matroid_closure(&s);
    println!("bipartite edge sets of K4: {}", complex.len());
    println!("matroid rank {}, semimatroid rank {}", m.rank(), s.rank());
    println!("spi: {}", check_spi(&complex, &m));
    assert_eq!(semimatroid_from_spi(&m, &complex).unwrap(), s);
    println!("T = {}", s.tutte_sum());
}
