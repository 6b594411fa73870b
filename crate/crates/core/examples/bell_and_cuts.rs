//! Minimal tour: build an 8-qubit family state, evaluate the inequality at
//! the canonical settings, and scan its bipartitions.

use gss_core::{canonical_settings, chsh_value, cut_scan, gss_closed, PPT_TOL};

fn main() -> gss_core::Result<()> {
    let state = gss_closed(4)?; // 8 qubits, 4 terms
    let value = chsh_value(&state, &canonical_settings(8)?)?;
    assert!((value - 2.0 * std::f64::consts::SQRT_2).abs() < 1e-12);
    println!("inequality value at canonical settings: {value}");

    for report in cut_scan(&state, PPT_TOL)? {
        println!(
            "size {}: PPT = {} (min eigenvalue {})",
            report.subset_size, report.is_ppt, report.min_pt_eigenvalue
        );
    }
    Ok(())
}
