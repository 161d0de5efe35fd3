//! Decide quantum detailed balance for two systems on the same graph:
//! uniform amplitudes (reversible) and random phases (nonreversible).
//! The reversible witness pi also induces a classically detailed-balanced
//! stationary measure for the associated Markov chain.

use staggered_walk::balance::{classical_chain, detect_reversibility};
use staggered_walk::random::{random_multigraph, random_system, rng};
use staggered_walk::tessellation::uniform_amplitudes;

fn main() {
    let mut r = rng(11);
    let g = random_multigraph(&mut r, 3, 3, 9);
    let theta = 1.1;

    let uniform = uniform_amplitudes(&g, theta).unwrap();
    let report = detect_reversibility(&uniform);
    println!(
        "uniform amplitudes: reversible = {}, max cycle defect = {:.3e}",
        report.reversible, report.max_cycle_defect
    );
    if let Some(pi) = &report.pi {
        let entries: Vec<String> = pi.iter().map(|z| format!("{z:.4}")).collect();
        println!("  pi = [{}]", entries.join(", "));
    }
    let chain = classical_chain(&uniform, &report);
    if let Some(zeta) = &chain.stationary {
        let entries: Vec<String> = zeta.iter().map(|x| format!("{x:.4}")).collect();
        println!("  stationary measure |pi|^2 = [{}]", entries.join(", "));
    }

    let g2 = random_multigraph(&mut r, 3, 3, 9);
    let random = random_system(&mut r, g2, theta);
    let report = detect_reversibility(&random);
    println!(
        "\nrandom phases: reversible = {}, max cycle defect = {:.3e}",
        report.reversible, report.max_cycle_defect
    );
    for (chord, delta) in &report.cycle_defects {
        println!("  cycle at chord {chord}: balancing index {delta:.4}");
    }
}
