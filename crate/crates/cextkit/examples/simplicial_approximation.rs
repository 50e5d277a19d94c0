//! Simplicial approximation of a double extension: the explicit right Kan
//! extension levels, the counit pullback square, and preservation of
//! centrality and direction.
//!
//!     cargo run --example simplicial_approximation

use cextkit::caps::Caps;
use cextkit::centrality::is_h_central;
use cextkit::cubic::CubicExtensionDiagram;
use cextkit::diagram::{counit_square_is_pullback, pointwise_ran};
use cextkit::group::{FiniteGroup, GroupHom};

fn main() -> cextkit::Result<()> {
    let caps = Caps::default();
    let c4 = FiniteGroup::cyclic(4);
    let c2 = FiniteGroup::cyclic(2);
    let one = FiniteGroup::trivial();
    let d = GroupHom::new(c4.clone(), c2.clone(), vec![0, 1, 0, 1])?;
    let c = GroupHom::new(c4.clone(), one.clone(), vec![0; 4])?;
    let side0 = GroupHom::new(one.clone(), one.clone(), vec![0])?;
    let side1 = GroupHom::new(c2.clone(), one.clone(), vec![0, 0])?;
    let square = CubicExtensionDiagram::square(d, c, side0, side1)?;

    let ran = pointwise_ran(&square, &caps)?;
    println!("approximation levels:");
    for k in -1..=(ran.trunc.truncation() as isize) {
        println!("  level {k}: order {}", ran.trunc.level(k).order());
    }
    println!("counit square is a pullback: {}", counit_square_is_pullback(&square, &ran, &caps)?);

    let approx_cube = ran.trunc.underlying_cube()?;
    println!("square central: {}", is_h_central(&square).central);
    println!("approximation central: {}", is_h_central(&approx_cube).central);
    println!(
        "directions: {} and {}",
        square.direction(&caps)?.subgroup.order(),
        approx_cube.direction(&caps)?.subgroup.order()
    );
    Ok(())
}
