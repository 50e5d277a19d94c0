//! Torsor certification of truncated simplicial groups, and the horn
//! multiplications a certified torsor carries.
//!
//!     cargo run --example torsor_certificates

use cextkit::caps::Caps;
use cextkit::group::{self, FiniteGroup, GroupHom};
use cextkit::linalg::FinAbGroup;
use cextkit::simplicial::{horn_multiplication, k_object, torsor_check, TruncatedSimplicialGroup};

fn report(name: &str, cert: &cextkit::simplicial::TorsorCertificate) {
    println!("{name} (n = {}, base {}, direction order {}):", cert.n, cert.base.name(), cert.direction.order());
    println!("  H-central            : {}", cert.h_central);
    println!("  varsigma homomorphism: {}", cert.varsigma_is_hom);
    println!("  exact fibration      : {:?}", cert.kernel_iso_ok);
    println!("  sum condition        : {}", cert.sum_condition_ok);
    println!("  => torsor: {}", cert.pass());
}

fn main() -> cextkit::Result<()> {
    let caps = Caps::default();

    // the split K(C2, C2, 1) truncation
    let k = k_object(&FiniteGroup::cyclic(2), &FinAbGroup::cyclic(2), 1, &caps)?;
    report("K(C2, C2, 1)", &torsor_check(&k.trunc, &caps)?);

    // C4 -> C2 as a 0-truncated resolution: a 1-torsor
    let f = GroupHom::new(FiniteGroup::cyclic(4), FiniteGroup::cyclic(2), vec![0, 1, 0, 1])?;
    let t = TruncatedSimplicialGroup::new(
        vec![f.codomain.clone(), f.domain.clone()],
        vec![vec![f]],
        vec![],
    )?;
    report("C4 -> C2", &torsor_check(&t, &caps)?);

    // D4 -> C2 with kernel <r>: fails H-centrality, hence no torsor
    let d4 = FiniteGroup::dihedral(4);
    let r = group::generated_subgroup(&d4, &[1])?;
    let (_, pi) = group::quotient(&d4, &r)?;
    let bad = TruncatedSimplicialGroup::new(
        vec![pi.codomain.clone(), pi.domain.clone()],
        vec![vec![pi]],
        vec![],
    )?;
    report("D4 -> C2 (kernel C4)", &torsor_check(&bad, &caps)?);

    // horn multiplication on the K(C2, C2, 2) torsor
    let k2 = k_object(&FiniteGroup::cyclic(2), &FinAbGroup::cyclic(2), 2, &caps)?;
    let cert = torsor_check(&k2.trunc, &caps)?;
    report("K(C2, C2, 2)", &cert);
    let t = &k2.trunc;
    for alpha in t.level(1).elements().take(4) {
        let s00 = t.degeneracy(0, 0).apply(t.face(1, 0).apply(alpha));
        let m1 = horn_multiplication(t, &cert, 1, &[s00, alpha])?;
        let m0 = horn_multiplication(t, &cert, 0, &[alpha, alpha])?;
        println!("  m^1(s0 d0 {alpha}, {alpha}) = {m1}   m^0({alpha}, {alpha}) = {m0}");
    }
    Ok(())
}
