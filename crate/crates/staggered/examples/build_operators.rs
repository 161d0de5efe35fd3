//! Build the evolution operator and check its structural identities:
//! H_A and H_B are involutions, U is unitary, and U intertwines with the
//! discriminant block matrix through L = [A B].

use ndarray::Array2;
use ndarray_linalg::Norm;
use num_complex::Complex64;
use staggered_walk::io::SystemJson;
use staggered_walk::operators::WalkOperators;
use staggered_walk::util::dagger;

fn main() {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/c4_uniform.json");
    let text = std::fs::read_to_string(path).unwrap();
    let sys: SystemJson = serde_json::from_str(&text).unwrap();
    let s = sys.to_system().unwrap();
    let ops = WalkOperators::build(&s);
    let nu = ops.dim();
    let eye = Array2::<Complex64>::eye(nu);

    let inv_a = (&ops.h_a.dot(&ops.h_a) - &eye).norm_max();
    let inv_b = (&ops.h_b.dot(&ops.h_b) - &eye).norm_max();
    let unitary = (&dagger(&ops.u).dot(&ops.u) - &eye).norm_max();
    let intertwine = (&ops.u.dot(&ops.l) - &ops.l.dot(&ops.lambda)).norm_max();

    println!("dimension: {nu}, theta: {}", ops.theta());
    println!("H_A involution defect: {inv_a:.3e}");
    println!("H_B involution defect: {inv_b:.3e}");
    println!("U unitarity defect:    {unitary:.3e}");
    println!("U L = L Lambda defect: {intertwine:.3e}");

    println!("\ndiscriminant T (Hermitian, spectrum in [-1, 1]):");
    for row in ops.t.rows() {
        let cells: Vec<String> = row.iter().map(|z| format!("{z:.3}")).collect();
        println!("  [{}]", cells.join(", "));
    }
}
