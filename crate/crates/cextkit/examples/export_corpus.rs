//! Writes the sample diagram and simplicial files under corpus/ that the
//! command-line walkthrough in the README uses.
//!
//!     cargo run --example export_corpus

use cextkit::caps::Caps;
use cextkit::cubic::CubicExtensionDiagram;
use cextkit::group::{self, FiniteGroup, GroupHom};
use cextkit::io::{to_canonical_json, DiagramFile, SimplicialFile};
use cextkit::linalg::FinAbGroup;
use cextkit::simplicial::{k_object, TruncatedSimplicialGroup};
use std::fs;
use std::path::Path;

fn write(path: &str, text: String) -> std::io::Result<()> {
    fs::create_dir_all(Path::new(path).parent().unwrap())?;
    fs::write(path, text)?;
    println!("wrote {path}");
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let caps = Caps::default();

    // D4 -> C2 with kernel <r>: not central
    let d4 = FiniteGroup::dihedral(4);
    let r = group::generated_subgroup(&d4, &[1])?;
    let (_, pi) = group::quotient(&d4, &r)?;
    let cube = CubicExtensionDiagram::from_hom(pi)?;
    write("corpus/d4-to-c2.json", to_canonical_json(&DiagramFile::from_cubic(&cube))?)?;

    // Q8 -> Q8/centre: central
    let q8 = FiniteGroup::quaternion8();
    let centre = group::generated_subgroup(&q8, &[1])?;
    let (_, pi) = group::quotient(&q8, &centre)?;
    let cube = CubicExtensionDiagram::from_hom(pi)?;
    write("corpus/q8-to-v4.json", to_canonical_json(&DiagramFile::from_cubic(&cube))?)?;

    // the C4 double extension over the point
    let c4 = FiniteGroup::cyclic(4);
    let c2 = FiniteGroup::cyclic(2);
    let one = FiniteGroup::trivial();
    let d = GroupHom::new(c4.clone(), c2.clone(), vec![0, 1, 0, 1])?;
    let c = GroupHom::new(c4.clone(), one.clone(), vec![0; 4])?;
    let side0 = GroupHom::new(one.clone(), one.clone(), vec![0])?;
    let side1 = GroupHom::new(c2.clone(), one.clone(), vec![0, 0])?;
    let square = CubicExtensionDiagram::square(d, c, side0, side1)?;
    write("corpus/c4-double.json", to_canonical_json(&DiagramFile::from_cubic(&square))?)?;

    // the identity square: a central extension with trivial direction
    let id = GroupHom::identity(c2.clone());
    let idsq = CubicExtensionDiagram::square(id.clone(), id.clone(), id.clone(), id.clone())?;
    write("corpus/identity-square.json", to_canonical_json(&DiagramFile::from_cubic(&idsq))?)?;

    // simplicial files: the K(C2, C2, 1) truncation and C4 -> C2
    let k = k_object(&c2, &FinAbGroup::cyclic(2), 1, &caps)?;
    write("corpus/k-c2-c2-1.json", to_canonical_json(&SimplicialFile::from_truncation(&k.trunc))?)?;

    let f = GroupHom::new(c4.clone(), c2.clone(), vec![0, 1, 0, 1])?;
    let t = TruncatedSimplicialGroup::new(
        vec![f.codomain.clone(), f.domain.clone()],
        vec![vec![f]],
        vec![],
    )?;
    write("corpus/c4-to-c2-resolution.json", to_canonical_json(&SimplicialFile::from_truncation(&t))?)?;
    Ok(())
}
