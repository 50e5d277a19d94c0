//! The bundled corpus: a deterministic zoo of small groups and the
//! extensions, squares and truncated resolutions generated from them. All
//! verification suites run over these.

use crate::caps::Caps;
use crate::cubic::CubicExtensionDiagram;
use crate::diagram::pointwise_ran;
use crate::error::Result;
use crate::group::{self, FiniteGroup, GroupHom, ProductGroup, Subgroup};
use crate::linalg::FinAbGroup;
use crate::simplicial::{k_object, TruncatedSimplicialGroup};
use std::sync::Arc;

pub fn group_zoo() -> Vec<Arc<FiniteGroup>> {
    let c2 = FiniteGroup::cyclic(2);
    let c4 = FiniteGroup::cyclic(4);
    vec![
        FiniteGroup::trivial(),
        c2.clone(),
        FiniteGroup::cyclic(3),
        c4.clone(),
        ProductGroup::new(&[c2.clone(), c2.clone()]).group,
        FiniteGroup::cyclic(5),
        FiniteGroup::cyclic(6),
        FiniteGroup::cyclic(8),
        ProductGroup::new(&[c2.clone(), c4.clone()]).group,
        FiniteGroup::dihedral(4),
        FiniteGroup::quaternion8(),
        FiniteGroup::symmetric3(),
        FiniteGroup::alternating4(),
        FiniteGroup::dihedral(6),
    ]
}

pub fn zoo_by_name(name: &str) -> Option<Arc<FiniteGroup>> {
    group_zoo().into_iter().find(|g| g.name() == name)
}

/// The acceptance grid: bases Z and abelian coefficient groups A.
pub fn acceptance_grid() -> (Vec<Arc<FiniteGroup>>, Vec<FinAbGroup>) {
    let c2 = FiniteGroup::cyclic(2);
    let zs = vec![
        FiniteGroup::trivial(),
        c2.clone(),
        FiniteGroup::cyclic(3),
        FiniteGroup::cyclic(4),
        ProductGroup::new(&[c2.clone(), c2.clone()]).group,
        FiniteGroup::cyclic(5),
        FiniteGroup::cyclic(6),
        FiniteGroup::symmetric3(),
    ];
    let afs = vec![
        FinAbGroup::cyclic(2),
        FinAbGroup::cyclic(3),
        FinAbGroup::cyclic(4),
        FinAbGroup::new(vec![2, 2]).expect("chain"),
    ];
    (zs, afs)
}

/// Every quotient map of a zoo group of order at most 16, as a one-cubic
/// extension diagram.
pub fn one_cubic_extensions() -> Result<Vec<CubicExtensionDiagram>> {
    let mut out = Vec::new();
    for g in group_zoo() {
        if g.order() > 16 || g.order() == 1 {
            continue;
        }
        for n in group::normal_subgroups(&g) {
            let (_, pi) = group::quotient(&g, &n)?;
            out.push(CubicExtensionDiagram::from_hom(pi)?);
        }
    }
    Ok(out)
}

/// Squares of quotient maps from pairs of normal subgroups, for zoo groups of
/// order at most 12 (every such square is a two-cubic extension).
pub fn two_cubic_extensions() -> Result<Vec<CubicExtensionDiagram>> {
    let mut out = Vec::new();
    for g in group_zoo() {
        if g.order() > 12 || g.order() == 1 {
            continue;
        }
        let normals = group::normal_subgroups(&g);
        for n0 in &normals {
            for n1 in &normals {
                out.push(CubicExtensionDiagram::from_quotients(&g, &[n0.clone(), n1.clone()])?);
            }
        }
    }
    Ok(out)
}

/// Small three-cubic extensions for the structural n = 3 checks.
pub fn three_cubic_small() -> Result<Vec<CubicExtensionDiagram>> {
    let mut out = Vec::new();
    let c2 = FiniteGroup::cyclic(2);
    let c4 = FiniteGroup::cyclic(4);
    let full2 = Subgroup::full(c2.clone());
    out.push(CubicExtensionDiagram::from_quotients(&c2, &[full2.clone(), full2.clone(), full2.clone()])?);
    let two = group::generated_subgroup(&c4, &[2])?;
    let full4 = Subgroup::full(c4.clone());
    out.push(CubicExtensionDiagram::from_quotients(&c4, &[two.clone(), full4.clone(), full4.clone()])?);
    let v4 = ProductGroup::new(&[c2.clone(), c2.clone()]).group;
    let h0 = group::generated_subgroup(&v4, &[1])?;
    let h1 = group::generated_subgroup(&v4, &[2])?;
    let fullv = Subgroup::full(v4.clone());
    out.push(CubicExtensionDiagram::from_quotients(&v4, &[h0, h1, fullv])?);
    Ok(out)
}

/// Truncated simplicial resolutions with n = 1: the zero-truncations of all
/// one-cubic corpus extensions.
pub fn resolutions_n1() -> Result<Vec<TruncatedSimplicialGroup>> {
    let mut out = Vec::new();
    for cube in one_cubic_extensions()? {
        let f = cube.map(1, 0).clone();
        out.push(TruncatedSimplicialGroup::new(
            vec![f.codomain.clone(), f.domain.clone()],
            vec![vec![f]],
            vec![],
        )?);
    }
    Ok(out)
}

/// Truncated simplicial resolutions with n = 2 and top level of order at
/// most 16: simplicial approximations of small squares, coskeleta of small
/// one-cubic extensions, and the K(Z, A, 2) truncations from the grid.
pub fn resolutions_n2(caps: &Caps) -> Result<Vec<TruncatedSimplicialGroup>> {
    let mut out = Vec::new();
    for cube in two_cubic_extensions()? {
        let x = cube.top().order();
        let k0 = cube.map(3, 0).kernel().order();
        let k1 = cube.map(3, 1).kernel().order();
        if x * k0 * k1 <= 16 {
            out.push(pointwise_ran(&cube, caps)?.trunc);
        }
    }
    for cube in one_cubic_extensions()? {
        let f = cube.map(1, 0);
        if f.domain.order() * f.kernel().order() <= 16 {
            let t = TruncatedSimplicialGroup::new(
                vec![f.codomain.clone(), f.domain.clone()],
                vec![vec![f.clone()]],
                vec![],
            )?;
            out.push(t.coskeleton(1, caps)?);
        }
    }
    let (zs, afs) = acceptance_grid();
    for z in &zs {
        for a in &afs {
            if a.order() as usize * z.order() <= 16 {
                out.push(k_object(z, a, 2, caps)?.trunc);
            }
        }
    }
    Ok(out)
}

/// Morphisms of central truncated resolutions fixing base and direction:
/// automorphisms of the total group over Z that fix the kernel pointwise.
pub fn central_resolution_automorphisms(caps: &Caps) -> Result<Vec<(TruncatedSimplicialGroup, GroupHom)>> {
    let mut out = Vec::new();
    for t in resolutions_n1()? {
        let cube = t.underlying_cube()?;
        if !crate::centrality::is_h_central(&cube).central {
            continue;
        }
        let f = cube.map(1, 0).clone();
        let ker = f.kernel();
        // a nontrivial automorphism over Z fixing the kernel pointwise, when
        // one exists
        let found = group::find_isomorphism_filtered(&f.domain, &f.domain, &|x, y| {
            if f.apply(x) != f.apply(y) {
                return false;
            }
            if ker.contains(x) {
                x == y
            } else {
                true
            }
        });
        if let Some(phi) = found {
            out.push((t, phi));
        }
        let _ = caps;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpus_sizes() {
        let ones = one_cubic_extensions().unwrap();
        assert!(ones.len() >= 20, "got {}", ones.len());
        let twos = two_cubic_extensions().unwrap();
        assert!(twos.len() >= 40, "got {}", twos.len());
        let n1 = resolutions_n1().unwrap();
        let n2 = resolutions_n2(&Caps::default()).unwrap();
        assert!(n1.len() + n2.len() >= 50, "criterion corpus: {} + {}", n1.len(), n2.len());
    }

    #[test]
    fn corpus_squares_are_extensions() {
        let caps = Caps::default();
        for cube in two_cubic_extensions().unwrap().iter().take(25) {
            assert!(cube.is_extension(&caps).unwrap().is_extension);
        }
        for cube in three_cubic_small().unwrap() {
            assert!(cube.is_extension(&caps).unwrap().is_extension);
        }
    }
}
