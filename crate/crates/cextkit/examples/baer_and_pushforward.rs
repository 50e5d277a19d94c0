//! The abelian group structure on extension classes: Baer sums through the
//! product-over-Z plus codiagonal pushforward, and functorial pushforwards
//! along coefficient maps.
//!
//!     cargo run --example baer_and_pushforward

use cextkit::caps::Caps;
use cextkit::classify::{baer_sum, classify_centr1, equivalent_extensions, pushforward_extension};
use cextkit::group::{FiniteGroup, GroupHom};
use cextkit::linalg::FinAbGroup;

fn main() -> cextkit::Result<()> {
    let caps = Caps::default();
    let z = FiniteGroup::cyclic(4);
    let a = FinAbGroup::cyclic(4);
    let cg = classify_centr1(&z, &a, &caps)?;
    println!("Centr^1(C4, Z/4): {} classes, group {}", cg.class_count(), cg.invariant_factors()?.display());
    print!("Baer table:\n     ");
    for j in 0..cg.class_count() {
        print!("{j:>3}");
    }
    println!();
    for (i, row) in cg.addition.iter().enumerate() {
        print!("{i:>3} |");
        for v in row {
            print!("{v:>3}");
        }
        println!();
    }

    // a direct sum of representatives, identified back in the table
    let e1 = &cg.classes[1 % cg.class_count()].representative;
    let e2 = &cg.classes[cg.class_count() - 1].representative;
    let sum = baer_sum(e1, e2, &a, &caps)?;
    let class = cg.class_of_extension(&sum).expect("sum is classified");
    println!("[1] + [{}] = [{}]", cg.class_count() - 1, class);

    // pushforward along the zero map lands in the neutral class
    let zero = GroupHom::zero(e1.kernel_map.domain.clone(), e1.kernel_map.domain.clone());
    let collapsed = pushforward_extension(e1, &zero, &caps)?;
    assert!(equivalent_extensions(&cg.classes[cg.neutral].representative, &collapsed).is_some());
    println!("pushforward along 0 collapses to the neutral class");

    // pushforward along Z/4 ->> Z/2 halves the class group
    let c2 = FinAbGroup::cyclic(2).to_finite_group();
    let reduce = GroupHom::new(e1.kernel_map.domain.clone(), c2, vec![0, 1, 0, 1])?;
    let pushed = pushforward_extension(e1, &reduce, &caps)?;
    println!(
        "pushforward along Z/4 ->> Z/2 gives a total group of order {}",
        pushed.group.order()
    );
    Ok(())
}
