//! The geometry of centrality: diamond spaces, punctured diamond spaces,
//! H-centrality, product-decomposition certificates and the induced
//! Mal'tsev-style completion operations.
//!
//! A diamond in an n-cubic extension is a 2^n-matrix of top elements whose
//! I and I∪{i} entries agree under f_i. The product decomposition
//! `diamonds ≅ A x punctured diamonds` is the geometric face of centrality.

use crate::caps::Caps;
use crate::cubic::{CubicExtensionDiagram, DirectionRecord};
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, GroupHom};
use std::collections::HashMap;
use std::sync::Arc;

/// Outcome of the H-centrality scan.
pub struct HCentralVerdict {
    pub central: bool,
    /// On failure: the subset I and a pair (k, l) with nontrivial commutator.
    pub witness: Option<(u32, u16, u16)>,
}

/// Checks `[∩_{i in I} K_i, ∩_{i not in I} K_i] = 1` for every subset I.
pub fn is_h_central(f: &CubicExtensionDiagram) -> HCentralVerdict {
    let top = f.top().clone();
    for i_mask in 0..=f.full_mask() {
        let left = f.kernel_intersection(i_mask);
        let right = f.kernel_intersection(f.full_mask() & !i_mask);
        for &k in &left.elements {
            for &l in &right.elements {
                if top.comm(k, l) != 0 {
                    return HCentralVerdict { central: false, witness: Some((i_mask, k, l)) };
                }
            }
        }
    }
    HCentralVerdict { central: true, witness: None }
}

/// All 2^n-matrices over the top object satisfying the diamond membership
/// conditions, enumerated by backtracking over subsets in canonical order.
pub struct DiamondSpace {
    pub n: usize,
    pub top: Arc<FiniteGroup>,
    /// Sorted tuples; coordinate k is the entry at subset mask k.
    pub tuples: Vec<Vec<u16>>,
    index: HashMap<Vec<u16>, u32>,
}

impl DiamondSpace {
    pub fn len(&self) -> usize {
        self.tuples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tuples.is_empty()
    }

    pub fn index_of(&self, t: &[u16]) -> Option<u32> {
        self.index.get(t).copied()
    }

    pub fn mul(&self, a: &[u16], b: &[u16]) -> Vec<u16> {
        a.iter().zip(b).map(|(&x, &y)| self.top.mul(x, y)).collect()
    }

    pub fn inv(&self, a: &[u16]) -> Vec<u16> {
        a.iter().map(|&x| self.top.inv(x)).collect()
    }

    /// Greedy generating set of the diamond group, as tuple indices. The
    /// closure after each new generator is the orbit of the identity under
    /// right multiplication by the generators and their inverses.
    pub fn generators(&self) -> Vec<u32> {
        let ident = self.index[&vec![0u16; self.tuples[0].len()]] as usize;
        let mut gens: Vec<usize> = Vec::new();
        let mut in_closure = vec![false; self.tuples.len()];
        in_closure[ident] = true;
        let mut size = 1usize;
        while size < self.tuples.len() {
            let next = (0..self.tuples.len()).find(|&i| !in_closure[i]).expect("proper closure");
            gens.push(next);
            let mut mult: Vec<usize> = gens.clone();
            mult.extend(gens.iter().map(|&g| self.index[&self.inv(&self.tuples[g])] as usize));
            let mut frontier = vec![ident];
            in_closure = vec![false; self.tuples.len()];
            in_closure[ident] = true;
            size = 1;
            while let Some(x) = frontier.pop() {
                for &g in &mult {
                    let p = self.mul(&self.tuples[x], &self.tuples[g]);
                    let i = self.index[&p] as usize;
                    if !in_closure[i] {
                        in_closure[i] = true;
                        size += 1;
                        frontier.push(i);
                    }
                }
            }
        }
        gens.into_iter().map(|g| g as u32).collect()
    }
}

/// Diamonds with the entry at `puncture` removed; membership conditions are
/// those of the diamond space restricted to the present entries.
pub struct PuncturedDiamondSpace {
    pub n: usize,
    pub puncture: u32,
    pub top: Arc<FiniteGroup>,
    /// Sorted tuples; coordinates run over subset masks in ascending order,
    /// skipping the puncture.
    pub tuples: Vec<Vec<u16>>,
    index: HashMap<Vec<u16>, u32>,
}

impl PuncturedDiamondSpace {
    pub fn len(&self) -> usize {
        self.tuples.len()
    }

    pub fn index_of(&self, t: &[u16]) -> Option<u32> {
        self.index.get(t).copied()
    }

    /// Coordinate position of a subset mask within a punctured tuple.
    pub fn coord_of(&self, mask: u32) -> usize {
        let mut pos = mask as usize;
        if mask > self.puncture {
            pos -= 1;
        }
        pos
    }
}

fn top_fibers(f: &CubicExtensionDiagram) -> Vec<Vec<Vec<u16>>> {
    let n = f.degree();
    let mut fibers = Vec::with_capacity(n);
    for i in 0..n {
        let h = f.map(f.full_mask(), i);
        let mut fib: Vec<Vec<u16>> = vec![Vec::new(); h.codomain.order()];
        for x in h.domain.elements() {
            fib[h.apply(x) as usize].push(x);
        }
        fibers.push(fib);
    }
    fibers
}

fn enumerate_matrices(
    f: &CubicExtensionDiagram,
    skip: Option<u32>,
    caps: &Caps,
) -> Result<Vec<Vec<u16>>> {
    let n = f.degree();
    let size = 1usize << n;
    let top = f.top().clone();
    let fibers = top_fibers(f);
    let masks: Vec<u32> = (0..size as u32).filter(|&m| Some(m) != skip).collect();
    let coord_of = |m: u32| -> Option<usize> { masks.binary_search(&m).ok() };
    let mut tuples: Vec<Vec<u16>> = Vec::new();
    let mut current = vec![0u16; masks.len()];
    let mut visited: u64 = 0;
    #[allow(clippy::too_many_arguments)]
    fn rec(
        f: &CubicExtensionDiagram,
        top: &FiniteGroup,
        fibers: &[Vec<Vec<u16>>],
        masks: &[u32],
        coord_of: &dyn Fn(u32) -> Option<usize>,
        pos: usize,
        current: &mut Vec<u16>,
        tuples: &mut Vec<Vec<u16>>,
        visited: &mut u64,
        budget: u64,
    ) -> Result<()> {
        if pos == masks.len() {
            tuples.push(current.clone());
            return Ok(());
        }
        let mask = masks[pos];
        // constraints against already-placed lower neighbours
        let mut constraints: Vec<(usize, u16)> = Vec::new(); // (direction, required value)
        for i in 0..f.degree() {
            if mask >> i & 1 == 1 {
                if let Some(p) = coord_of(mask & !(1 << i)) {
                    if p < pos {
                        constraints.push((i, f.map(f.full_mask(), i).apply(current[p])));
                    }
                }
            }
        }
        let candidates: Vec<u16> = match constraints.first() {
            None => (0..top.order() as u16).collect(),
            Some(&(i0, v0)) => fibers[i0][v0 as usize].clone(),
        };
        'cand: for x in candidates {
            *visited += 1;
            if *visited > budget {
                return Err(Error::BudgetExceeded {
                    required: (top.order() as u64).saturating_pow(masks.len() as u32),
                    budget,
                });
            }
            for &(i, v) in constraints.iter().skip(1) {
                if f.map(f.full_mask(), i).apply(x) != v {
                    continue 'cand;
                }
            }
            if let Some(&(i0, v0)) = constraints.first() {
                debug_assert_eq!(f.map(f.full_mask(), i0).apply(x), v0);
            }
            current[pos] = x;
            rec(f, top, fibers, masks, coord_of, pos + 1, current, tuples, visited, budget)?;
        }
        Ok(())
    }
    rec(f, &top, &fibers, &masks, &coord_of, 0, &mut current, &mut tuples, &mut visited, caps.limit_budget)?;
    tuples.sort();
    Ok(tuples)
}

pub fn diamond_space(f: &CubicExtensionDiagram, caps: &Caps) -> Result<DiamondSpace> {
    let tuples = enumerate_matrices(f, None, caps)?;
    let index = tuples.iter().enumerate().map(|(i, t)| (t.clone(), i as u32)).collect();
    Ok(DiamondSpace { n: f.degree(), top: f.top().clone(), tuples, index })
}

pub fn punctured_space(f: &CubicExtensionDiagram, puncture: u32, caps: &Caps) -> Result<PuncturedDiamondSpace> {
    if puncture > f.full_mask() {
        return Err(Error::Mismatch("puncture outside the cube".into()));
    }
    let tuples = enumerate_matrices(f, Some(puncture), caps)?;
    let index = tuples.iter().enumerate().map(|(i, t)| (t.clone(), i as u32)).collect();
    Ok(PuncturedDiamondSpace { n: f.degree(), puncture, top: f.top().clone(), tuples, index })
}

/// Drops the punctured entry from a full diamond tuple.
pub fn project_tuple(diamond: &[u16], puncture: u32) -> Vec<u16> {
    diamond
        .iter()
        .enumerate()
        .filter(|(k, _)| *k != puncture as usize)
        .map(|(_, &v)| v)
        .collect()
}

/// The alternating word measuring a diamond against the direction: peel the
/// top direction, measure both halves, divide. Restricted to the kernel
/// matrices supported at one entry it is `a^{±1}`; its image under the
/// abelianisation map is the alternating sum over all entries.
pub fn diamond_word(top: &FiniteGroup, n: usize, entry: &dyn Fn(u32) -> u16) -> u16 {
    fn rec(top: &FiniteGroup, k: usize, prefix: u32, entry: &dyn Fn(u32) -> u16) -> u16 {
        if k == 0 {
            entry(prefix)
        } else {
            let lo = rec(top, k - 1, prefix, entry);
            let hi = rec(top, k - 1, prefix | (1 << (k - 1)), entry);
            top.mul(lo, top.inv(hi))
        }
    }
    rec(top, n, 0, entry)
}

/// Alternating sum `Σ_{J ⊆ n} (-1)^{|J|} η(x_J)` valued in the
/// abelianisation of the top object.
pub fn alternating_sum(ab: &Arc<FiniteGroup>, eta: &GroupHom, diamond: &[u16]) -> u16 {
    let mut acc = 0u16;
    for (mask, &x) in diamond.iter().enumerate() {
        let v = eta.apply(x);
        let v = if (mask as u32).count_ones() % 2 == 1 { ab.inv(v) } else { v };
        acc = ab.mul(acc, v);
    }
    acc
}

/// Certificate for the product decomposition `diamonds ≅ A x punctured`.
pub struct DecompositionCertificate {
    pub puncture: u32,
    pub direction_abelian: bool,
    pub count_identity: bool,
    pub fibers_are_cosets: bool,
    pub retraction_is_hom: bool,
    pub diamond_count: usize,
    pub punctured_count: usize,
    pub direction_order: usize,
    pub failure: Option<String>,
    pub(crate) diamonds: DiamondSpace,
    pub(crate) punctured: PuncturedDiamondSpace,
    /// Per diamond: the retraction value, as an element of the top object
    /// lying in the direction subgroup.
    pub(crate) retraction: Vec<u16>,
    pub(crate) direction: DirectionRecord,
}

impl DecompositionCertificate {
    pub fn pass(&self) -> bool {
        self.direction_abelian && self.count_identity && self.fibers_are_cosets && self.retraction_is_hom
    }

    /// The retraction value (an element of the direction subgroup, as an
    /// element of the top object) of the i-th diamond.
    pub fn retraction_value(&self, i: usize) -> u16 {
        self.retraction[i]
    }

    pub fn diamond_tuples(&self) -> &[Vec<u16>] {
        &self.diamonds.tuples
    }

    pub fn punctured_tuples(&self) -> &[Vec<u16>] {
        &self.punctured.tuples
    }

    pub fn direction(&self) -> &DirectionRecord {
        &self.direction
    }
}

/// Checks that the projection forgetting the `puncture` entry exhibits the
/// diamond space as a product of the direction with the punctured space:
/// (a) the direction is abelian, (b) every fiber is a single coset of the
/// kernel matrices, (c) an explicit retraction splits the kernel inclusion.
pub fn check_product_decomposition(
    f: &CubicExtensionDiagram,
    puncture: u32,
    caps: &Caps,
) -> Result<DecompositionCertificate> {
    let direction = f.direction(caps)?;
    let diamonds = diamond_space(f, caps)?;
    let punctured = punctured_space(f, puncture, caps)?;
    let top = f.top().clone();
    let a = &direction.subgroup;
    let mut failure: Option<String> = None;

    let count_identity = diamonds.len() == a.order() * punctured.len();
    if !count_identity {
        failure.get_or_insert(format!(
            "count identity fails: {} diamonds vs {} x {}",
            diamonds.len(),
            a.order(),
            punctured.len()
        ));
    }

    // fibers of the forgetful projection, grouped by punctured tuple
    let mut fibers: HashMap<Vec<u16>, Vec<usize>> = HashMap::new();
    for (i, t) in diamonds.tuples.iter().enumerate() {
        fibers.entry(project_tuple(t, puncture)).or_default().push(i);
    }
    let mut fibers_are_cosets = fibers.len() == punctured.len()
        && punctured.tuples.iter().all(|t| fibers.contains_key(t));
    if fibers_are_cosets {
        'outer: for members in fibers.values() {
            if members.len() != a.order() {
                fibers_are_cosets = false;
                failure.get_or_insert("fiber size differs from the direction order".into());
                break;
            }
            let base = &diamonds.tuples[members[0]];
            for &m in members {
                let diff = diamonds.mul(&diamonds.tuples[m], &diamonds.inv(base));
                for (k, &v) in diff.iter().enumerate() {
                    if k == puncture as usize {
                        if !a.contains(v) {
                            fibers_are_cosets = false;
                            failure.get_or_insert("fiber difference escapes the direction".into());
                            break 'outer;
                        }
                    } else if v != 0 {
                        fibers_are_cosets = false;
                        failure.get_or_insert("fiber difference is not supported at the puncture".into());
                        break 'outer;
                    }
                }
            }
        }
    } else {
        failure.get_or_insert("projection misses a punctured diamond".into());
    }

    // retraction: the alternating word, inverted for odd punctures so that it
    // restricts to the identity on kernel matrices at this entry
    let odd = puncture.count_ones() % 2 == 1;
    let mut retraction = Vec::with_capacity(diamonds.len());
    let mut in_direction = true;
    for t in &diamonds.tuples {
        let w = diamond_word(&top, f.degree(), &|m| t[m as usize]);
        let r = if odd { top.inv(w) } else { w };
        if !a.contains(r) {
            in_direction = false;
        }
        retraction.push(r);
    }
    let mut retraction_is_hom = in_direction;
    if !in_direction {
        failure.get_or_insert("retraction value escapes the direction".into());
    }
    if retraction_is_hom {
        // splits the kernel inclusion
        for &av in &a.elements {
            let mut kappa = vec![0u16; diamonds.tuples[0].len()];
            kappa[puncture as usize] = av;
            match diamonds.index_of(&kappa) {
                Some(i) => {
                    if retraction[i as usize] != av {
                        retraction_is_hom = false;
                        failure.get_or_insert("retraction does not split the kernel inclusion".into());
                        break;
                    }
                }
                None => {
                    retraction_is_hom = false;
                    failure.get_or_insert("kernel matrix is not a diamond".into());
                    break;
                }
            }
        }
    }
    if retraction_is_hom {
        // homomorphism property, on a generating set against everything
        let gens = diamonds.generators();
        'hom: for &g in &gens {
            for x in 0..diamonds.len() {
                let prod = diamonds.mul(&diamonds.tuples[g as usize], &diamonds.tuples[x]);
                let pi = diamonds.index_of(&prod).ok_or(Error::NotAMember)?;
                if retraction[pi as usize] != top.mul(retraction[g as usize], retraction[x]) {
                    retraction_is_hom = false;
                    failure.get_or_insert("retraction is not a homomorphism".into());
                    break 'hom;
                }
            }
        }
    }

    Ok(DecompositionCertificate {
        puncture,
        direction_abelian: direction.abelian,
        count_identity,
        fibers_are_cosets,
        retraction_is_hom,
        diamond_count: diamonds.len(),
        punctured_count: punctured.len(),
        direction_order: a.order(),
        failure,
        diamonds,
        punctured,
        retraction,
        direction,
    })
}

/// The Mal'tsev-style completion: the unique entry filling a punctured
/// diamond so that the completed diamond retracts to zero in the direction.
pub fn maltsev_op(
    f: &CubicExtensionDiagram,
    cert: &DecompositionCertificate,
    punctured_tuple: &[u16],
) -> Result<u16> {
    if !cert.pass() {
        return Err(Error::CertificateAbsent);
    }
    if cert.punctured.index_of(punctured_tuple).is_none() {
        return Err(Error::NotAMember);
    }
    let top = f.top().clone();
    let puncture = cert.puncture;
    // candidates for the missing entry: intersect the fibers imposed by the
    // neighbours of the punctured subset
    let mut candidates: Option<Vec<u16>> = None;
    for i in 0..f.degree() {
        let partner = puncture ^ (1 << i);
        let pos = cert.punctured.coord_of(partner);
        let h = f.map(f.full_mask(), i);
        let want = h.apply(punctured_tuple[pos]);
        let fiber: Vec<u16> = top.elements().filter(|&x| h.apply(x) == want).collect();
        candidates = Some(match candidates {
            None => fiber,
            Some(cs) => cs.into_iter().filter(|x| fiber.contains(x)).collect(),
        });
    }
    let candidates = candidates.unwrap_or_default();
    let mut winners = Vec::new();
    for &c in &candidates {
        let mut full = Vec::with_capacity(punctured_tuple.len() + 1);
        let mut it = punctured_tuple.iter();
        for mask in 0..(1u32 << f.degree()) {
            if mask == puncture {
                full.push(c);
            } else {
                full.push(*it.next().expect("punctured width"));
            }
        }
        if let Some(idx) = cert.diamonds.index_of(&full) {
            if cert.retraction[idx as usize] == 0 {
                winners.push(c);
            }
        }
    }
    match winners.as_slice() {
        [unique] => Ok(*unique),
        [] => Err(Error::NotAMember),
        _ => Err(Error::Mismatch("completion with zero projection is not unique".into())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{self, GroupHom};

    fn caps() -> Caps {
        Caps::default()
    }

    fn c4_mod2_cube() -> CubicExtensionDiagram {
        let c4 = FiniteGroup::cyclic(4);
        let c2 = FiniteGroup::cyclic(2);
        CubicExtensionDiagram::from_hom(GroupHom::new(c4, c2, vec![0, 1, 0, 1]).unwrap()).unwrap()
    }

    fn c4_double() -> CubicExtensionDiagram {
        let c4 = FiniteGroup::cyclic(4);
        let c2 = FiniteGroup::cyclic(2);
        let one = FiniteGroup::trivial();
        let d = GroupHom::new(c4.clone(), c2.clone(), vec![0, 1, 0, 1]).unwrap();
        let c = GroupHom::new(c4.clone(), one.clone(), vec![0; 4]).unwrap();
        let side0 = GroupHom::new(one.clone(), one.clone(), vec![0]).unwrap();
        let side1 = GroupHom::new(c2.clone(), one.clone(), vec![0, 0]).unwrap();
        CubicExtensionDiagram::square(d, c, side0, side1).unwrap()
    }

    fn d4_mod_r() -> CubicExtensionDiagram {
        let d4 = FiniteGroup::dihedral(4);
        let r = group::generated_subgroup(&d4, &[1]).unwrap();
        let (_, pi) = group::quotient(&d4, &r).unwrap();
        CubicExtensionDiagram::from_hom(pi).unwrap()
    }

    #[test]
    fn h_centrality_examples() {
        // abelian top is always H-central
        assert!(is_h_central(&c4_mod2_cube()).central);

        // Q8 over its centre is central
        let q8 = FiniteGroup::quaternion8();
        let z = group::generated_subgroup(&q8, &[1]).unwrap();
        let (_, pi) = group::quotient(&q8, &z).unwrap();
        assert!(is_h_central(&CubicExtensionDiagram::from_hom(pi).unwrap()).central);

        // D4 -> C2 with kernel C4 fails, witnessed by a commutator r^2
        let v = is_h_central(&d4_mod_r());
        assert!(!v.central);
        let (_, k, l) = v.witness.unwrap();
        let d4 = FiniteGroup::dihedral(4);
        assert_eq!(d4.comm(k, l), 2, "the witness commutator is r^2");
    }

    #[test]
    fn diamond_space_counts() {
        // n = 1, C4 -> C2: the kernel pair, 8 elements
        let d = diamond_space(&c4_mod2_cube(), &caps()).unwrap();
        assert_eq!(d.len(), 8);

        // n = 1 identity: the diagonal
        let c4 = FiniteGroup::cyclic(4);
        let idcube = CubicExtensionDiagram::from_hom(GroupHom::identity(c4)).unwrap();
        let d = diamond_space(&idcube, &caps()).unwrap();
        assert_eq!(d.len(), 4);
        assert!(d.tuples.iter().all(|t| t[0] == t[1]));

        // the C4 double extension: 4 * 2 * 4 * 2 by constraint counting
        let d = diamond_space(&c4_double(), &caps()).unwrap();
        assert_eq!(d.len(), 64);
    }

    #[test]
    fn diamond_space_is_a_subgroup_of_the_power() {
        for cube in [c4_mod2_cube(), c4_double(), d4_mod_r()] {
            let d = diamond_space(&cube, &caps()).unwrap();
            for a in 0..d.len().min(40) {
                for b in 0..d.len().min(40) {
                    let p = d.mul(&d.tuples[a], &d.tuples[b]);
                    assert!(d.index_of(&p).is_some(), "closed under products");
                }
                assert!(d.index_of(&d.inv(&d.tuples[a])).is_some());
            }
        }
    }

    #[test]
    fn punctured_space_counts_and_kernel() {
        // C4 double extension at the full puncture: |punctured| = 32 and
        // |diamonds| = |A| * |punctured| = 2 * 32
        let cube = c4_double();
        let p = punctured_space(&cube, 3, &caps()).unwrap();
        assert_eq!(p.len(), 32);
        let d = diamond_space(&cube, &caps()).unwrap();
        assert_eq!(d.len(), 2 * p.len());

        // trivial direction: projection is bijective
        let c2 = FiniteGroup::cyclic(2);
        let idcube = CubicExtensionDiagram::from_hom(GroupHom::identity(c2)).unwrap();
        let d = diamond_space(&idcube, &caps()).unwrap();
        let p = punctured_space(&idcube, 0, &caps()).unwrap();
        assert_eq!(d.len(), p.len());

        // n = 1, puncture ∅: the punctured object is X and the kernel of the
        // projection is K(f)
        let cube = c4_mod2_cube();
        let p = punctured_space(&cube, 0, &caps()).unwrap();
        assert_eq!(p.len(), 4);
        let d = diamond_space(&cube, &caps()).unwrap();
        let kernel: Vec<&Vec<u16>> =
            d.tuples.iter().filter(|t| project_tuple(t, 0) == vec![0]).collect();
        assert_eq!(kernel.len(), 2, "kernel of the projection is K(f)");
    }

    #[test]
    fn punctured_space_matches_independent_pullback_at_n2() {
        // punctured diamonds at ∅ for a square are
        // R(d) x_X R(c); cross-check through the pullback machinery
        let cube = c4_double();
        let x = cube.top().clone();
        let d_map = cube.map(3, 0).clone();
        let c_map = cube.map(3, 1).clone();
        let rd = crate::diagram::pullback(&d_map, &d_map, &caps()).unwrap();
        let rc = crate::diagram::pullback(&c_map, &c_map, &caps()).unwrap();
        // R(d) x_X R(c) along pr_1 of R(d) and pr_0 of R(c)
        let pr1: GroupHom = rd.projections[1].clone();
        let pr0: GroupHom = rc.projections[0].clone();
        let _ = x;
        let glued = crate::diagram::pullback(&pr1, &pr0, &caps()).unwrap();
        let p = punctured_space(&cube, 0, &caps()).unwrap();
        assert_eq!(glued.apex.order(), p.len());
    }

    #[test]
    fn spaces_match_full_product_filters() {
        // independent route: filter the whole cartesian power of the top
        // object instead of backtracking
        let caps = caps();
        for cube in [c4_mod2_cube(), c4_double(), d4_mod_r()] {
            let n = cube.degree();
            let size = 1usize << n;
            let top = cube.top().clone();
            let member = |t: &[u16]| -> bool {
                for i in 0..n {
                    for mask in 0..size {
                        if mask >> i & 1 == 0 {
                            let f = cube.map(cube.full_mask(), i);
                            if f.apply(t[mask]) != f.apply(t[mask | (1 << i)]) {
                                return false;
                            }
                        }
                    }
                }
                true
            };
            let mut brute = Vec::new();
            let mut t = vec![0u16; size];
            loop {
                if member(&t) {
                    brute.push(t.clone());
                }
                let mut pos = size;
                while pos > 0 {
                    pos -= 1;
                    t[pos] += 1;
                    if (t[pos] as usize) < top.order() {
                        break;
                    }
                    t[pos] = 0;
                    if pos == 0 {
                        pos = usize::MAX;
                        break;
                    }
                }
                if pos == usize::MAX {
                    break;
                }
            }
            let d = diamond_space(&cube, &caps).unwrap();
            assert_eq!(d.tuples, brute);
            // punctured spaces: drop the entry, keep conditions among the rest
            for puncture in 0..size as u32 {
                let p = punctured_space(&cube, puncture, &caps).unwrap();
                let pmember = |t: &[u16]| -> bool {
                    let full_of = |mask: usize| -> Option<u16> {
                        if mask == puncture as usize {
                            None
                        } else {
                            Some(t[mask - usize::from(mask > puncture as usize)])
                        }
                    };
                    for i in 0..n {
                        for mask in 0..size {
                            if mask >> i & 1 == 0 {
                                if let (Some(a), Some(b)) = (full_of(mask), full_of(mask | (1 << i))) {
                                    let f = cube.map(cube.full_mask(), i);
                                    if f.apply(a) != f.apply(b) {
                                        return false;
                                    }
                                }
                            }
                        }
                    }
                    true
                };
                let mut brute = Vec::new();
                let mut t = vec![0u16; size - 1];
                loop {
                    if pmember(&t) {
                        brute.push(t.clone());
                    }
                    let mut pos = size - 1;
                    while pos > 0 {
                        pos -= 1;
                        t[pos] += 1;
                        if (t[pos] as usize) < top.order() {
                            break;
                        }
                        t[pos] = 0;
                        if pos == 0 {
                            pos = usize::MAX;
                            break;
                        }
                    }
                    if pos == usize::MAX {
                        break;
                    }
                }
                assert_eq!(p.tuples, brute, "puncture {puncture:#b}");
            }
        }
    }

    #[test]
    fn product_decomposition_examples() {
        // n = 1 central: R(f) ≅ A x X
        let cert = check_product_decomposition(&c4_mod2_cube(), 0, &caps()).unwrap();
        assert!(cert.pass());
        assert_eq!(cert.diamond_count, 8);
        assert_eq!(cert.direction_order * cert.punctured_count, 8);

        // C4 double extension: 64 = 2 * 32 with coset fibers
        let cert = check_product_decomposition(&c4_double(), 3, &caps()).unwrap();
        assert!(cert.pass());
        assert_eq!((cert.diamond_count, cert.direction_order, cert.punctured_count), (64, 2, 32));

        // D4 -> C2 fails
        let cert = check_product_decomposition(&d4_mod_r(), 0, &caps()).unwrap();
        assert!(!cert.pass());
    }

    #[test]
    fn decomposition_is_puncture_independent() {
        for cube in [c4_mod2_cube(), c4_double(), d4_mod_r()] {
            let verdicts: Vec<bool> = (0..=cube.full_mask())
                .map(|i| check_product_decomposition(&cube, i, &caps()).unwrap().pass())
                .collect();
            assert!(verdicts.windows(2).all(|w| w[0] == w[1]), "holds for one puncture iff for all");
            assert_eq!(verdicts[0], is_h_central(&cube).central);
        }
    }

    #[test]
    fn alternating_sum_matches_retraction() {
        let cube = c4_double();
        let (ab, eta) = group::abelianize(cube.top());
        let cert = check_product_decomposition(&cube, 0, &caps()).unwrap();
        assert!(cert.pass());
        for (i, t) in cert.diamonds.tuples.iter().enumerate() {
            let lhs = eta.apply(cert.retraction[i]);
            let rhs = alternating_sum(&ab, &eta, t);
            assert_eq!(lhs, rhs);
        }
        // totally degenerate diamonds sum to zero
        for x in cube.top().elements() {
            let t = vec![x; 4];
            assert_eq!(alternating_sum(&ab, &eta, &t), 0);
        }
        // a kernel matrix at the empty puncture keeps its value, sign +1
        let dirs = cube.direction(&caps()).unwrap();
        for &a in &dirs.subgroup.elements {
            let mut t = vec![0u16; 4];
            t[0] = a;
            assert_eq!(alternating_sum(&ab, &eta, &t), eta.apply(a));
        }
    }

    #[test]
    fn maltsev_identities_degree_two() {
        let cube = c4_double();
        let cert = check_product_decomposition(&cube, 0, &caps()).unwrap();
        assert!(cert.pass());
        // entries at masks {0}=1, {1}=2, {0,1}=3; puncture ∅
        for y in &cert.punctured.tuples {
            let alpha = y[cert.punctured.coord_of(1)];
            let beta = y[cert.punctured.coord_of(3)];
            let gamma = y[cert.punctured.coord_of(2)];
            let delta = maltsev_op(&cube, &cert, y).unwrap();
            if alpha == beta {
                assert_eq!(delta, gamdelta_expect(gamma), "p(α,α,γ) = γ");
            }
            if beta == gamma {
                assert_eq!(delta, alpha, "p(α,γ,γ) = α");
            }
        }
        fn gamdelta_expect(g: u16) -> u16 {
            g
        }
    }

    #[test]
    fn diamond_projection_square_is_a_pullback() {
        // the square (projection at I, forgetful; comparison, boundary) is a
        // pullback: exact fiber comparison against F_n x_{LF} punctured
        let caps = caps();
        for cube in [c4_mod2_cube(), c4_double(), d4_mod_r()] {
            let full = cube.full_mask();
            let lim = cube.punctured_limit(full, &caps).unwrap();
            let l_f = cube.comparison_into(full, &lim).unwrap();
            for i_mask in 0..=full {
                let d = diamond_space(&cube, &caps).unwrap();
                let p = punctured_space(&cube, i_mask, &caps).unwrap();
                // boundary of the missing entry, read off the neighbours
                let subsets: Vec<u32> = (0..=full).filter(|j| *j != full).collect();
                let boundary = |y: &[u16]| -> Vec<u16> {
                    subsets
                        .iter()
                        .map(|&j| {
                            let i = (0..cube.degree()).find(|&i| j >> i & 1 == 0).expect("proper subset");
                            let partner = i_mask ^ (1 << i);
                            let v = cube.map(full, i).apply(y[p.coord_of(partner)]);
                            cube.composite(full & !(1 << i), j).apply(v)
                        })
                        .collect()
                };
                let mut pairs = 0usize;
                for y in &p.tuples {
                    let b = lim.tuple_index(&boundary(y)).expect("boundary is compatible");
                    for x in cube.top().elements() {
                        if l_f.apply(x) == b {
                            pairs += 1;
                        }
                    }
                }
                assert_eq!(pairs, d.len(), "pullback fibers match the diamonds exactly");
            }
        }
    }

    #[test]
    fn kernel_matrices_are_central_in_central_diamonds() {
        let cube = c4_double();
        assert!(is_h_central(&cube).central);
        let d = diamond_space(&cube, &caps()).unwrap();
        let a = cube.kernel_intersection(cube.full_mask());
        for &av in &a.elements {
            let mut kappa = vec![0u16; 4];
            kappa[0] = av;
            for t in &d.tuples {
                let left = d.mul(&kappa, t);
                let right = d.mul(t, &kappa);
                assert_eq!(left, right, "kernel matrices commute with every diamond");
            }
        }
    }

    #[test]
    fn maltsev_rejects_non_members() {
        let cube = c4_mod2_cube();
        let cert = check_product_decomposition(&cube, 0, &caps()).unwrap();
        // (x) with f(x) != f(anything) cannot fail for n=1 puncture 0 since
        // every singleton is a punctured diamond; use a malformed width
        assert!(matches!(maltsev_op(&cube, &cert, &[0, 0]), Err(Error::NotAMember)));
    }
}
