//! Kagome lattice band structure: the two dispersive bands from the
//! closed-form dispersion relation plus the momentum-independent flat
//! band, cross-checked against the 3x3 eigensolver at each point.

use staggered_walk::lattice::{dispersion, reduced_operator, MomentumPoint};
use staggered_walk::oracle;

fn main() {
    let theta = std::f64::consts::FRAC_PI_2;
    let n = 8;
    println!("theta = {theta}, flat band angle = {}", std::f64::consts::PI - 2.0 * theta + std::f64::consts::TAU);
    println!("{:>8} {:>8} {:>10} {:>10} {:>12}", "k", "l", "eta", "-eta", "check");
    for i in 0..n {
        let k = std::f64::consts::TAU * i as f64 / n as f64;
        let l = std::f64::consts::TAU * (i / 2) as f64 / n as f64;
        let p = MomentumPoint::new(k, l);
        let d = dispersion(theta, p).unwrap();
        let od = oracle::decompose(&reduced_operator(theta, p)).unwrap();
        let worst = [d.band_plus, d.band_minus, d.flat]
            .iter()
            .map(|band| {
                od.eigenvalues
                    .iter()
                    .map(|lam| (lam - band).norm())
                    .fold(f64::INFINITY, f64::min)
            })
            .fold(0.0f64, f64::max);
        println!(
            "{k:>8.4} {l:>8.4} {:>10.6} {:>10.6} {worst:>12.3e}",
            d.eta, -d.eta
        );
    }
}
