//! Validate a tessellation cover and build the walk system from it.
//!
//! The path graph P3 is covered by two tessellations: polygons {0,1} and
//! {2} on one side, {0} and {1,2} on the other. Each polygon carries a
//! unit amplitude vector over its vertices.

use num_complex::Complex64;
use staggered_walk::tessellation::{from_cover, validate_cover, CoverInput};

fn main() {
    let r = std::f64::consts::FRAC_1_SQRT_2;
    let amp = |xs: &[f64]| xs.iter().map(|&x| Complex64::new(x, 0.0)).collect();
    let cover = CoverInput {
        vertices: 3,
        edges: vec![(0, 1), (1, 2)],
        t1: vec![vec![0, 1], vec![2]],
        t2: vec![vec![0], vec![1, 2]],
        amps1: vec![amp(&[r, r]), amp(&[1.0])],
        amps2: vec![amp(&[1.0]), amp(&[r, r])],
    };

    match validate_cover(&cover) {
        Ok(_) => println!("cover axioms hold: partition, cliques, edge coverage"),
        Err(e) => {
            eprintln!("invalid cover: {e}");
            std::process::exit(3);
        }
    }

    let system = from_cover(&cover, std::f64::consts::FRAC_PI_4).unwrap();
    let g = system.graph();
    println!(
        "root multigraph: {} left polygons, {} right polygons, {} edges, betti {}",
        g.left_count(),
        g.right_count(),
        g.edges().len(),
        g.betti_number()
    );
    for e in 0..g.edges().len() {
        println!("edge {e}: a = {:.4}, b = {:.4}", system.a(e), system.b(e));
    }
}
