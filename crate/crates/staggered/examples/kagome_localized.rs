//! Flat-band localization on a periodic kagome patch: the +-1 pattern on
//! a 6-cycle around a hexagonal face is an exact eigenvector at the flat
//! band eigenvalue -e^{-2 i theta}, for every theta.

use staggered_walk::lattice::{kagome_patch, localized_eigenvector};

fn main() {
    let patch = kagome_patch(4, 4).unwrap();
    println!(
        "patch: 4 x 4 unit cells, {} sites, betti number {}",
        patch.site_count(),
        patch.graph.betti_number()
    );

    for theta in [std::f64::consts::FRAC_PI_4, std::f64::consts::FRAC_PI_2, 2.0] {
        let mut worst: f64 = 0.0;
        for x in 0..4 {
            for y in 0..4 {
                let (_, r) = localized_eigenvector(&patch, (x, y), theta).unwrap();
                worst = worst.max(r);
            }
        }
        println!("theta = {theta:.4}: max residual over all 16 centers = {worst:.3e}");
    }

    let (loc, _) = localized_eigenvector(&patch, (1, 1), std::f64::consts::FRAC_PI_4).unwrap();
    println!("\nsupport of the eigenvector centered at (1, 1):");
    for (x, y, j) in loc.plus {
        println!("  +1 at cell ({x}, {y}) site {j}");
    }
    for (x, y, j) in loc.minus {
        println!("  -1 at cell ({x}, {y}) site {j}");
    }
}
