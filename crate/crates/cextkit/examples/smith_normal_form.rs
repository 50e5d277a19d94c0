//! The exact-arithmetic backbone: Smith normal form with its unimodular
//! transforms, and kernel-mod-image homology of finite abelian groups.
//!
//!     cargo run --example smith_normal_form

use cextkit::linalg::{homology_of_pair, smith_normal_form, AbHom, FinAbGroup, IntMatrix};

fn show(m: &IntMatrix, label: &str) {
    println!("{label}:");
    for i in 0..m.rows {
        let row: Vec<i128> = (0..m.cols).map(|j| m.get(i, j)).collect();
        println!("  {row:?}");
    }
}

fn main() -> cextkit::Result<()> {
    let m = IntMatrix::from_rows(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, 4, 16]])?;
    show(&m, "M");
    let (u, d, v) = smith_normal_form(&m)?;
    show(&d, "D = U M V");
    show(&u, "U");
    show(&v, "V");

    // kernel mod image of Z/4 --x2--> Z/4 --x2--> Z/4 at the middle position
    let z4 = FinAbGroup::cyclic(4);
    let two = AbHom::new(z4.clone(), z4.clone(), IntMatrix::from_rows(&[vec![2]])?)?;
    let h = homology_of_pair(&two, &two)?;
    println!("homology of the doubling complex on Z/4: {}", h.display());
    Ok(())
}
