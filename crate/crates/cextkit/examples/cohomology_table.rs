//! Cohomology of small groups with trivial coefficients, through the
//! normalized-cochain / Smith-normal-form oracle.
//!
//!     cargo run --example cohomology_table

use cextkit::caps::Caps;
use cextkit::classify::cohomology_group;
use cextkit::corpus;
use cextkit::linalg::FinAbGroup;

fn main() -> cextkit::Result<()> {
    let caps = Caps::default();
    let (zs, _) = corpus::acceptance_grid();
    let coeffs = [FinAbGroup::cyclic(2), FinAbGroup::cyclic(3), FinAbGroup::new(vec![2, 2])?];
    println!("{:8} {:10} {:>12} {:>12} {:>12}", "Z", "A", "H^1", "H^2", "H^3");
    for z in &zs {
        for a in &coeffs {
            let h: Vec<String> = (1..=3)
                .map(|m| cohomology_group(z, a, m, &caps).map(|g| g.display()))
                .collect::<cextkit::Result<_>>()?;
            println!("{:8} {:10} {:>12} {:>12} {:>12}", z.name(), a.display(), h[0], h[1], h[2]);
        }
    }
    Ok(())
}
