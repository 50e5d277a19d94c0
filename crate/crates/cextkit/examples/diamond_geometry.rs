//! The geometry of a double central extension: diamond spaces, punctured
//! spaces, the product decomposition |diamonds| = |A| * |punctured|, and the
//! Mal'tsev completion of punctured diamonds.
//!
//!     cargo run --example diamond_geometry

use cextkit::caps::Caps;
use cextkit::centrality::{check_product_decomposition, diamond_space, maltsev_op, punctured_space};
use cextkit::cubic::CubicExtensionDiagram;
use cextkit::group::{FiniteGroup, GroupHom};

fn main() -> cextkit::Result<()> {
    let caps = Caps::default();
    // the square X = C4 with d: C4 ->> C2 and c: C4 ->> 1 over Z = 1
    let c4 = FiniteGroup::cyclic(4);
    let c2 = FiniteGroup::cyclic(2);
    let one = FiniteGroup::trivial();
    let d = GroupHom::new(c4.clone(), c2.clone(), vec![0, 1, 0, 1])?;
    let c = GroupHom::new(c4.clone(), one.clone(), vec![0; 4])?;
    let side0 = GroupHom::new(one.clone(), one.clone(), vec![0])?;
    let side1 = GroupHom::new(c2.clone(), one.clone(), vec![0, 0])?;
    let cube = CubicExtensionDiagram::square(d, c, side0, side1)?;

    let diamonds = diamond_space(&cube, &caps)?;
    println!("|diamonds| = {}", diamonds.len());
    for i_mask in 0..=3u32 {
        let punct = punctured_space(&cube, i_mask, &caps)?;
        let cert = check_product_decomposition(&cube, i_mask, &caps)?;
        println!(
            "puncture {:#04b}: |punctured| = {:>2}, decomposition {} ({} = {} x {})",
            i_mask,
            punct.len(),
            if cert.pass() { "holds" } else { "fails" },
            cert.diamond_count,
            cert.direction_order,
            cert.punctured_count
        );
    }

    // complete punctured diamonds: p(α,α,γ) = γ and p(α,γ,γ) = α
    let cert = check_product_decomposition(&cube, 0, &caps)?;
    let mut shown = 0;
    for y in cert.punctured_tuples() {
        let (alpha, gamma, beta) = (y[0], y[1], y[2]);
        let delta = maltsev_op(&cube, &cert, y)?;
        if shown < 6 {
            println!("p({alpha}, {beta}, {gamma}) = {delta}");
            shown += 1;
        }
        if alpha == beta {
            assert_eq!(delta, gamma);
        }
        if beta == gamma {
            assert_eq!(delta, alpha);
        }
    }
    println!("all {} completions satisfy the degenerate-pattern laws", cert.punctured_tuples().len());
    Ok(())
}
