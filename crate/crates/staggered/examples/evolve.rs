//! Run the walk from a delta state and watch the probability spread.
//! Unitarity keeps the total probability at exactly 1.

use ndarray::Array1;
use num_complex::Complex64;
use staggered_walk::io::SystemJson;
use staggered_walk::operators::WalkOperators;

fn main() {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/c4_uniform.json");
    let text = std::fs::read_to_string(path).unwrap();
    let sys: SystemJson = serde_json::from_str(&text).unwrap();
    let s = sys.to_system().unwrap();
    let ops = WalkOperators::build(&s);

    let nu = ops.dim();
    let mut psi = Array1::<Complex64>::zeros(nu);
    psi[0] = Complex64::new(1.0, 0.0);

    println!("step  distribution over walk vertices          total");
    for step in 0..=10 {
        if step > 0 {
            psi = ops.u.dot(&psi);
        }
        let dist: Vec<f64> = psi.iter().map(|z| z.norm_sqr()).collect();
        let total: f64 = dist.iter().sum();
        let cells: Vec<String> = dist.iter().map(|p| format!("{p:.4}")).collect();
        println!("{step:>4}  [{}]  {total:.12}", cells.join(", "));
    }
}
