//! Smith normal form and reduced homology of a few small complexes.

use std::sync::Arc;

use semimatroid_dt::complex::{Complex, Face, GroundSet};
use semimatroid_dt::homology::{reduced_betti, relative_betti, smith_normal_form};

fn main() {
    println!("SNF: {:?}", smith_normal_form(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]));

    // six-vertex projective plane
    let g = Arc::new(GroundSet::numbered(6));
    let tris =
        [[0, 1, 2], [0, 2, 3], [0, 3, 4], [0, 4, 5], [0, 5, 1], [1, 2, 4], [2, 3, 5], [3, 4, 1], [4, 5, 2], [5, 1, 3]];
    let facets: Vec<Face> = tris.iter().map(|t| Face::from_indices(t.iter().copied())).collect();
    let rp2 = Complex::from_facets(g.clone(), &facets).unwrap();
    println!("RP2: {}", reduced_betti(&rp2).unwrap().to_json());

    let ball = Complex::simplex(g.clone(), Face::full(3)).unwrap();
    let sphere =
        Complex::from_facets(g, &[Face::from_indices([0, 1]), Face::from_indices([0, 2]), Face::from_indices([1, 2])])
            .unwrap();
    println!("(ball, sphere): {}", relative_betti(&ball, &sphere).unwrap().to_json());
}
