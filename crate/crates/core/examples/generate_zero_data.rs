//! Regenerates the bundled zero tables in `data/`.
//!
//! Run with `cargo run --release -p prime-bias-core --example generate_zero_data`.

use std::path::Path;

use prime_bias_core::characters::chi4;
use prime_bias_core::zeros::{compute_dirichlet_zeros, compute_zeta_zeros, riemann_von_mangoldt};

fn main() -> prime_bias_core::Result<()> {
    let data = Path::new(env!("CARGO_MANIFEST_DIR")).join("data");
    // the 2000th ordinate is near 2515.29
    let zeta = compute_zeta_zeros(2600.0)?.truncated(2000);
    assert_eq!(zeta.len(), 2000);
    let top = zeta.max_ordinate();
    println!(
        "zeta: 2000 ordinates up to {top}, smooth count {:.2}",
        riemann_von_mangoldt(top)
    );
    zeta.save(&data.join("zeta_zeros.txt"))?;

    let l = compute_dirichlet_zeros(&chi4(), 1000.0)?;
    println!("chi4: {} ordinates up to {}", l.len(), l.max_ordinate());
    l.save(&data.join("chi4_zeros.txt"))?;
    Ok(())
}
