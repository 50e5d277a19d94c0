//! Centrality of extensions and their centralisation: commutator witnesses
//! on failure, obstruction quotients on demand.
//!
//!     cargo run --example centrality_witnesses

use cextkit::caps::Caps;
use cextkit::centrality::is_h_central;
use cextkit::cubic::CubicExtensionDiagram;
use cextkit::group::{self, FiniteGroup};

fn main() -> cextkit::Result<()> {
    let caps = Caps::default();
    let d4 = FiniteGroup::dihedral(4);
    let q8 = FiniteGroup::quaternion8();

    // Q8 over its centre: the kernel is central, so the extension is central
    let centre = group::generated_subgroup(&q8, &[1])?;
    let (v4, pi) = group::quotient(&q8, &centre)?;
    let cube = CubicExtensionDiagram::from_hom(pi)?;
    println!("Q8 -> Q8/centre (order {}):", v4.order());
    println!("  H-central: {}", is_h_central(&cube).central);

    // D4 over <r>: the kernel C4 does not commute with the reflections
    let r = group::generated_subgroup(&d4, &[1])?;
    let (_, pi) = group::quotient(&d4, &r)?;
    let cube = CubicExtensionDiagram::from_hom(pi)?;
    let verdict = is_h_central(&cube);
    println!("D4 -> C2 with kernel <r>:");
    println!("  H-central: {}", verdict.central);
    if let Some((mask, k, l)) = verdict.witness {
        println!("  witness: [{k}, {l}] = {} at subset {mask:#b}", d4.comm(k, l));
    }
    let obstruction = cube.centralisation_obstruction();
    println!("  obstruction L_1 = {:?} (order {})", obstruction.elements, obstruction.order());
    let central = cube.centralise()?;
    println!(
        "  centralised: top of order {}, H-central: {}",
        central.top().order(),
        is_h_central(&central).central
    );
    println!("  direction after centralisation: order {}", central.direction(&caps)?.subgroup.order());
    Ok(())
}
