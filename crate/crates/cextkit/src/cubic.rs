//! n-cubic extension diagrams: commuting n-cubes of groups indexed by
//! subsets of n (bitmask-keyed), with extension certificates, directions,
//! centralisation, products over a base, and kernel faces.
//!
//! Only the generating maps `f_i : F_J -> F_{J \ {i}}` are stored; all other
//! composites are derived, and commutation is checked once at construction.

use crate::caps::Caps;
use crate::diagram::{group_on_tuples, LimitResult};
use crate::error::{Error, Result};
use crate::group::{self, FiniteGroup, GroupHom, Subgroup};
use std::sync::Arc;

/// Direction of an n-cubic extension: the intersection of the top kernels,
/// together with its abelian flag and its realisation as a group.
pub struct DirectionRecord {
    pub subgroup: Subgroup,
    pub abelian: bool,
    pub group: Arc<FiniteGroup>,
    pub embedding: GroupHom,
}

/// Outcome of the extension certificate.
pub struct ExtensionCheck {
    pub is_extension: bool,
    /// Offending subset and an apex tuple not hit by the comparison map.
    pub failure: Option<(u32, Vec<u16>)>,
}

pub struct CubicExtensionDiagram {
    n: usize,
    objects: Vec<Arc<FiniteGroup>>,
    maps: Vec<Vec<Option<GroupHom>>>,
}

impl CubicExtensionDiagram {
    pub fn new(
        n: usize,
        objects: Vec<Arc<FiniteGroup>>,
        maps: Vec<Vec<Option<GroupHom>>>,
    ) -> Result<Self> {
        let size = 1usize << n;
        if objects.len() != size || maps.len() != size {
            return Err(Error::Mismatch(format!("cube of degree {n} needs {size} objects")));
        }
        for mask in 0..size {
            for i in 0..n {
                let expect = (mask >> i) & 1 == 1;
                let present = maps[mask].get(i).map(|m| m.is_some()).unwrap_or(false);
                if expect != present {
                    return Err(Error::Mismatch(format!("map {i} at subset {mask:#b} is {}", if expect { "missing" } else { "spurious" })));
                }
                if expect {
                    let h = maps[mask][i].as_ref().unwrap();
                    let tgt = mask & !(1 << i);
                    if h.domain.order() != objects[mask].order() || h.codomain.order() != objects[tgt].order() {
                        return Err(Error::Mismatch(format!("map {i} at subset {mask:#b} has wrong endpoints")));
                    }
                }
            }
        }
        let cube = CubicExtensionDiagram { n, objects, maps };
        cube.check_commutation()?;
        Ok(cube)
    }

    fn check_commutation(&self) -> Result<()> {
        for mask in 0..(1u32 << self.n) {
            for i in 0..self.n {
                for j in (i + 1)..self.n {
                    if mask >> i & 1 == 1 && mask >> j & 1 == 1 {
                        let via_i = self.map(mask, i).then(self.map(mask & !(1 << i), j));
                        let via_j = self.map(mask, j).then(self.map(mask & !(1 << j), i));
                        for x in self.objects[mask as usize].elements() {
                            if via_i.apply(x) != via_j.apply(x) {
                                return Err(Error::NonCommutingDiagram {
                                    from: mask as usize,
                                    to: (mask & !(1 << i) & !(1 << j)) as usize,
                                    witness: x as usize,
                                });
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn object(&self, mask: u32) -> &Arc<FiniteGroup> {
        &self.objects[mask as usize]
    }

    pub fn top(&self) -> &Arc<FiniteGroup> {
        &self.objects[(1usize << self.n) - 1]
    }

    pub fn base(&self) -> &Arc<FiniteGroup> {
        &self.objects[0]
    }

    pub fn full_mask(&self) -> u32 {
        (1u32 << self.n) - 1
    }

    /// Generating map removing direction `i` from subset `mask`.
    pub fn map(&self, mask: u32, i: usize) -> &GroupHom {
        self.maps[mask as usize][i].as_ref().expect("map present by construction")
    }

    /// Derived composite `F_from -> F_to` for `to` contained in `from`.
    pub fn composite(&self, from: u32, to: u32) -> GroupHom {
        debug_assert_eq!(from & to, to, "composite requires to ⊆ from");
        let mut hom = GroupHom::identity(self.objects[from as usize].clone());
        let mut at = from;
        let mut rem = from & !to;
        while rem != 0 {
            let i = rem.trailing_zeros() as usize;
            hom = hom.then(self.map(at, i));
            at &= !(1 << i);
            rem &= !(1 << i);
        }
        hom
    }

    /// Degree-1 diagram from a single homomorphism.
    pub fn from_hom(f: GroupHom) -> Result<Self> {
        let objects = vec![f.codomain.clone(), f.domain.clone()];
        let maps = vec![vec![None], vec![Some(f)]];
        Self::new(1, objects, maps)
    }

    /// Degree-2 square from its four sides; `top_0` removes direction 0 and
    /// `top_1` removes direction 1, the `side_*` maps continue to the base.
    pub fn square(top_0: GroupHom, top_1: GroupHom, side_0: GroupHom, side_1: GroupHom) -> Result<Self> {
        // objects: mask 0 base, 1 = {0}, 2 = {1}, 3 = top
        let objects = vec![
            side_0.codomain.clone(),
            top_1.codomain.clone(),
            top_0.codomain.clone(),
            top_0.domain.clone(),
        ];
        let maps = vec![
            vec![None, None],
            vec![Some(side_0), None],
            vec![None, Some(side_1)],
            vec![Some(top_0), Some(top_1)],
        ];
        Self::new(2, objects, maps)
    }

    /// The n-cube of quotients of `x` by joins of the given normal
    /// subgroups: `F_I = X / <N_i : i not in I>`.
    pub fn from_quotients(x: &Arc<FiniteGroup>, normals: &[Subgroup]) -> Result<Self> {
        let n = normals.len();
        let size = 1usize << n;
        let mut objs: Vec<Arc<FiniteGroup>> = Vec::with_capacity(size);
        let mut projs: Vec<GroupHom> = Vec::with_capacity(size);
        for mask in 0..size as u32 {
            let mut join = Subgroup::trivial(x.clone());
            for i in 0..n {
                if mask >> i & 1 == 0 {
                    join = join.join(&normals[i]);
                }
            }
            let (q, pi) = group::quotient(x, &join)?;
            objs.push(q);
            projs.push(pi);
        }
        // representative preimages per object element
        let mut reps: Vec<Vec<u16>> = Vec::with_capacity(size);
        for mask in 0..size {
            let mut rep = vec![u16::MAX; objs[mask].order()];
            for e in x.elements() {
                let v = projs[mask].apply(e);
                if rep[v as usize] == u16::MAX {
                    rep[v as usize] = e;
                }
            }
            reps.push(rep);
        }
        let mut maps: Vec<Vec<Option<GroupHom>>> = vec![vec![None; n]; size];
        for mask in 0..size as u32 {
            for i in 0..n {
                if mask >> i & 1 == 1 {
                    let tgt = mask & !(1 << i);
                    let images = (0..objs[mask as usize].order())
                        .map(|e| projs[tgt as usize].apply(reps[mask as usize][e]))
                        .collect();
                    maps[mask as usize][i] = Some(GroupHom::unchecked(
                        objs[mask as usize].clone(),
                        objs[tgt as usize].clone(),
                        images,
                    ));
                }
            }
        }
        Self::new(n, objs, maps)
    }

    /// Limit of the cube restricted to the proper subsets of `i_mask`,
    /// enumerated by constraint propagation over the co-atoms (values at the
    /// maximal proper subsets determine everything else).
    pub fn punctured_limit(&self, i_mask: u32, caps: &Caps) -> Result<LimitResult> {
        let subsets: Vec<u32> = (0..=i_mask).filter(|j| j & i_mask == *j && *j != i_mask).collect();
        let pos_of = |j: u32| subsets.binary_search(&j).expect("proper subset");
        let coatoms: Vec<u32> =
            (0..self.n).filter(|i| i_mask >> i & 1 == 1).map(|i| i_mask & !(1 << i)).collect();
        if coatoms.is_empty() {
            return Err(Error::Mismatch("punctured limit of the empty subset".into()));
        }
        // forcing maps: for each co-atom, its proper subsets with composites
        let mut forcing: Vec<Vec<(usize, GroupHom)>> = Vec::new();
        for &c in &coatoms {
            let mut fs = Vec::new();
            for &j in &subsets {
                if j & c == j && j != c {
                    fs.push((pos_of(j), self.composite(c, j)));
                }
            }
            forcing.push(fs);
        }
        let mut tuples: Vec<Vec<u16>> = Vec::new();
        let mut current: Vec<Option<u16>> = vec![None; subsets.len()];
        let mut visited: u64 = 0;
        #[allow(clippy::too_many_arguments)]
        fn rec(
            cube: &CubicExtensionDiagram,
            coatoms: &[u32],
            subsets: &[u32],
            forcing: &[Vec<(usize, GroupHom)>],
            pos_of: &dyn Fn(u32) -> usize,
            k: usize,
            current: &mut Vec<Option<u16>>,
            tuples: &mut Vec<Vec<u16>>,
            visited: &mut u64,
            budget: u64,
        ) -> Result<()> {
            if k == coatoms.len() {
                tuples.push(current.iter().map(|v| v.expect("all subsets forced")).collect());
                return Ok(());
            }
            let cpos = pos_of(coatoms[k]);
            'cand: for x in cube.objects[coatoms[k] as usize].elements() {
                *visited += 1;
                if *visited > budget {
                    let required: u64 =
                        coatoms.iter().map(|&c| cube.objects[c as usize].order() as u64).product();
                    return Err(Error::BudgetExceeded { required, budget });
                }
                if let Some(v) = current[cpos] {
                    if v != x {
                        continue 'cand;
                    }
                }
                // tentatively force the subsets below this co-atom
                let mut placed: Vec<(usize, Option<u16>)> = Vec::new();
                let mut ok = true;
                if current[cpos].is_none() {
                    placed.push((cpos, None));
                    current[cpos] = Some(x);
                }
                for (p, h) in &forcing[k] {
                    let v = h.apply(x);
                    match current[*p] {
                        Some(w) if w != v => {
                            ok = false;
                            break;
                        }
                        Some(_) => {}
                        None => {
                            placed.push((*p, None));
                            current[*p] = Some(v);
                        }
                    }
                }
                if ok {
                    rec(cube, coatoms, subsets, forcing, pos_of, k + 1, current, tuples, visited, budget)?;
                }
                for (p, old) in placed {
                    current[p] = old;
                }
            }
            Ok(())
        }
        rec(self, &coatoms, &subsets, &forcing, &pos_of, 0, &mut current, &mut tuples, &mut visited, caps.limit_budget)?;
        tuples.sort();
        let coords: Vec<Arc<FiniteGroup>> =
            subsets.iter().map(|&j| self.objects[j as usize].clone()).collect();
        group_on_tuples("punctured-lim", &coords, tuples, caps.max_group_order)
    }

    /// Comparison morphism `F_I -> lim_{J ⊊ I} F_J` into a punctured limit.
    pub fn comparison_into(&self, i_mask: u32, lim: &LimitResult) -> Result<GroupHom> {
        let subsets: Vec<u32> = (0..=i_mask).filter(|j| j & i_mask == *j && *j != i_mask).collect();
        let homs: Vec<GroupHom> = subsets.iter().map(|&j| self.composite(i_mask, j)).collect();
        let mut images = Vec::with_capacity(self.objects[i_mask as usize].order());
        for x in self.objects[i_mask as usize].elements() {
            let tuple: Vec<u16> = homs.iter().map(|h| h.apply(x)).collect();
            let idx = lim.tuple_index(&tuple).ok_or(Error::NotAMember)?;
            images.push(idx);
        }
        Ok(GroupHom::unchecked(self.objects[i_mask as usize].clone(), lim.apex.clone(), images))
    }

    /// Extension certificate: every comparison to a punctured limit must be
    /// surjective. On failure reports the offending subset and a missed tuple.
    pub fn is_extension(&self, caps: &Caps) -> Result<ExtensionCheck> {
        for i_mask in 1..=self.full_mask() {
            let lim = self.punctured_limit(i_mask, caps)?;
            let cmp = self.comparison_into(i_mask, &lim)?;
            let mut hit = vec![false; lim.apex.order()];
            for x in self.objects[i_mask as usize].elements() {
                hit[cmp.apply(x) as usize] = true;
            }
            if let Some(miss) = hit.iter().position(|h| !h) {
                return Ok(ExtensionCheck {
                    is_extension: false,
                    failure: Some((i_mask, lim.tuples[miss].clone())),
                });
            }
        }
        Ok(ExtensionCheck { is_extension: true, failure: None })
    }

    /// Kernel of the i-th top map, as a subgroup of the top object.
    pub fn top_kernel(&self, i: usize) -> Subgroup {
        self.map(self.full_mask(), i).kernel()
    }

    /// Intersection of the top kernels over `i` in `mask`; the empty
    /// intersection is the whole top object.
    pub fn kernel_intersection(&self, mask: u32) -> Subgroup {
        let mut s = Subgroup::full(self.top().clone());
        for i in 0..self.n {
            if mask >> i & 1 == 1 {
                s = s.intersect(&self.top_kernel(i));
            }
        }
        s
    }

    /// Direction A = K(l_F) = ∩ K(f_i), computed both ways and compared.
    pub fn direction(&self, caps: &Caps) -> Result<DirectionRecord> {
        let meet = self.kernel_intersection(self.full_mask());
        if self.n >= 1 {
            let lim = self.punctured_limit(self.full_mask(), caps)?;
            let l_f = self.comparison_into(self.full_mask(), &lim)?;
            let k = l_f.kernel();
            if k.elements != meet.elements {
                return Err(Error::Mismatch(
                    "kernel of the comparison disagrees with the kernel intersection".into(),
                ));
            }
        }
        let (group, embedding) = meet.as_group("direction");
        let abelian = group.is_abelian();
        Ok(DirectionRecord { subgroup: meet, abelian, group, embedding })
    }

    /// The centralisation obstruction: join over all subsets I of the
    /// commutators [∩_{i in I} K_i, ∩_{i not in I} K_i], a normal subgroup of
    /// the top object.
    pub fn centralisation_obstruction(&self) -> Subgroup {
        let top = self.top().clone();
        let mut acc = Subgroup::trivial(top.clone());
        for i_mask in 0..=self.full_mask() {
            let left = self.kernel_intersection(i_mask);
            let right = self.kernel_intersection(self.full_mask() & !i_mask);
            let comm = group::commutator_subgroup(&top, &left, &right).expect("kernels are normal");
            acc = acc.join(&comm);
        }
        acc
    }

    /// Divides the top object by the centralisation obstruction, keeping all
    /// other objects fixed.
    pub fn centralise(&self) -> Result<Self> {
        let l = self.centralisation_obstruction();
        self.quotient_top(&l)
    }

    /// Replaces the top object by its quotient modulo a normal subgroup
    /// contained in every top kernel.
    pub fn quotient_top(&self, l: &Subgroup) -> Result<Self> {
        let (q, pi) = group::quotient(self.top(), l)?;
        // representative preimages
        let mut rep = vec![u16::MAX; q.order()];
        for e in self.top().elements() {
            let v = pi.apply(e);
            if rep[v as usize] == u16::MAX {
                rep[v as usize] = e;
            }
        }
        let mut objects = self.objects.clone();
        let fm = self.full_mask() as usize;
        objects[fm] = q.clone();
        let mut maps: Vec<Vec<Option<GroupHom>>> = self.maps.clone();
        for i in 0..self.n {
            let old = self.map(self.full_mask(), i);
            let images = (0..q.order()).map(|e| old.apply(rep[e])).collect();
            maps[fm][i] = Some(GroupHom::unchecked(q.clone(), old.codomain.clone(), images));
        }
        Self::new(self.n, objects, maps)
    }

    /// Pointwise product over the common base: `(F x G)_I = F_I x_Z G_I`.
    /// Returns the diagram together with the per-subset pullback data.
    pub fn product_over_z(&self, other: &Self, caps: &Caps) -> Result<(Self, Vec<LimitResult>)> {
        if self.n != other.n {
            return Err(Error::Mismatch("products need equal degree".into()));
        }
        if **self.base() != **other.base() {
            return Err(Error::Mismatch("products need a shared base object".into()));
        }
        let size = 1usize << self.n;
        let mut pbs: Vec<LimitResult> = Vec::with_capacity(size);
        for mask in 0..size as u32 {
            let f = self.composite(mask, 0);
            let g = other.composite(mask, 0);
            pbs.push(crate::diagram::pullback(&f, &g, caps)?);
        }
        let mut maps: Vec<Vec<Option<GroupHom>>> = vec![vec![None; self.n]; size];
        for mask in 0..size as u32 {
            for i in 0..self.n {
                if mask >> i & 1 == 1 {
                    let tgt = mask & !(1 << i);
                    let hf = self.map(mask, i);
                    let hg = other.map(mask, i);
                    let images = pbs[mask as usize]
                        .tuples
                        .iter()
                        .map(|t| {
                            pbs[tgt as usize]
                                .tuple_index(&[hf.apply(t[0]), hg.apply(t[1])])
                                .ok_or(Error::NotAMember)
                        })
                        .collect::<Result<Vec<u16>>>()?;
                    maps[mask as usize][i] = Some(GroupHom::unchecked(
                        pbs[mask as usize].apex.clone(),
                        pbs[tgt as usize].apex.clone(),
                        images,
                    ));
                }
            }
        }
        let objects: Vec<Arc<FiniteGroup>> = pbs.iter().map(|p| p.apex.clone()).collect();
        Ok((Self::new(self.n, objects, maps)?, pbs))
    }

    /// Kernel of the cube viewed as an arrow in direction `i`: an
    /// (n-1)-cubic diagram of kernel subgroups.
    pub fn kernel_face(&self, dir: usize) -> Result<Self> {
        if dir >= self.n {
            return Err(Error::Mismatch(format!("direction {dir} in degree {}", self.n)));
        }
        let m = self.n - 1;
        let size = 1usize << m;
        // old direction of a new direction index
        let old_dir = |j: usize| if j < dir { j } else { j + 1 };
        let expand = |mask: u32| -> u32 {
            let mut out = 1u32 << dir;
            for j in 0..m {
                if mask >> j & 1 == 1 {
                    out |= 1 << old_dir(j);
                }
            }
            out
        };
        let mut objects = Vec::with_capacity(size);
        let mut elem_lists: Vec<Vec<u16>> = Vec::with_capacity(size);
        for mask in 0..size as u32 {
            let j_full = expand(mask);
            let ker = self.map(j_full, dir).kernel();
            let (g, incl) = ker.as_group("ker-face");
            elem_lists.push(incl.images.clone());
            objects.push(g);
        }
        let mut maps: Vec<Vec<Option<GroupHom>>> = vec![vec![None; m]; size];
        for mask in 0..size as u32 {
            for j in 0..m {
                if mask >> j & 1 == 1 {
                    let tgt = mask & !(1 << j);
                    let big = self.map(expand(mask), old_dir(j));
                    let images = elem_lists[mask as usize]
                        .iter()
                        .map(|&e| {
                            let v = big.apply(e);
                            elem_lists[tgt as usize]
                                .binary_search(&v)
                                .map(|i| i as u16)
                                .map_err(|_| Error::NotAMember)
                        })
                        .collect::<Result<Vec<u16>>>()?;
                    maps[mask as usize][j] = Some(GroupHom::unchecked(
                        objects[mask as usize].clone(),
                        objects[tgt as usize].clone(),
                        images,
                    ));
                }
            }
        }
        Self::new(m, objects, maps)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::ProductGroup;

    fn caps() -> Caps {
        Caps::default()
    }

    fn c4_mod2() -> GroupHom {
        let c4 = FiniteGroup::cyclic(4);
        let c2 = FiniteGroup::cyclic(2);
        GroupHom::new(c4, c2, vec![0, 1, 0, 1]).unwrap()
    }

    /// X = C4 with d: C4 -> C2 and c: C4 -> 1 over Z = 1.
    pub(crate) fn c4_double() -> CubicExtensionDiagram {
        let c4 = FiniteGroup::cyclic(4);
        let c2 = FiniteGroup::cyclic(2);
        let one = FiniteGroup::trivial();
        let d = GroupHom::new(c4.clone(), c2.clone(), vec![0, 1, 0, 1]).unwrap();
        let c = GroupHom::new(c4.clone(), one.clone(), vec![0; 4]).unwrap();
        let side0 = GroupHom::new(one.clone(), one.clone(), vec![0]).unwrap();
        let side1 = GroupHom::new(c2.clone(), one.clone(), vec![0, 0]).unwrap();
        // top_0 removes direction 0 (to mask 2), top_1 removes direction 1 (to mask 1)
        CubicExtensionDiagram::square(d, c, side0, side1).unwrap()
    }

    #[test]
    fn comparison_l_degree_one_is_the_map() {
        let f = c4_mod2();
        let cube = CubicExtensionDiagram::from_hom(f.clone()).unwrap();
        let lim = cube.punctured_limit(1, &caps()).unwrap();
        assert_eq!(lim.apex.order(), 2);
        let l = cube.comparison_into(1, &lim).unwrap();
        // l_F is f itself up to the tuple relabelling
        for x in f.domain.elements() {
            assert_eq!(lim.tuples[l.apply(x) as usize][0], f.apply(x));
        }
    }

    #[test]
    fn comparison_l_degree_two_examples() {
        // square with pr_1, pr_2 on C2 x C2 over 1: L F = C2 x C2, l iso
        let c2 = FiniteGroup::cyclic(2);
        let one = FiniteGroup::trivial();
        let v4 = ProductGroup::new(&[c2.clone(), c2.clone()]);
        let pr0 = v4.projection(0);
        let pr1 = v4.projection(1);
        let s0 = GroupHom::new(c2.clone(), one.clone(), vec![0, 0]).unwrap();
        let cube = CubicExtensionDiagram::square(pr0, pr1, s0.clone(), s0.clone()).unwrap();
        let lim = cube.punctured_limit(3, &caps()).unwrap();
        // tuples carry the base coordinate too, but the apex is C2 x C2
        assert_eq!(lim.apex.order(), 4);
        let l = cube.comparison_into(3, &lim).unwrap();
        assert!(l.is_iso());

        // the C4 double extension: L F = C2 and l_F = d
        let cube = c4_double();
        let lim = cube.punctured_limit(3, &caps()).unwrap();
        assert_eq!(lim.apex.order(), 2);
        let l = cube.comparison_into(3, &lim).unwrap();
        assert!(l.is_surjective());
        assert_eq!(l.kernel().elements, vec![0, 2]);
    }

    #[test]
    fn extension_certificate_positive_and_negative() {
        // any surjection is a 1-cubic extension
        let cube = CubicExtensionDiagram::from_hom(c4_mod2()).unwrap();
        assert!(cube.is_extension(&caps()).unwrap().is_extension);

        // the pr-square on C2 x C2 is an extension (comparison is an iso)
        let c2 = FiniteGroup::cyclic(2);
        let one = FiniteGroup::trivial();
        let v4 = ProductGroup::new(&[c2.clone(), c2.clone()]);
        let s0 = GroupHom::new(c2.clone(), one.clone(), vec![0, 0]).unwrap();
        let cube =
            CubicExtensionDiagram::square(v4.projection(0), v4.projection(1), s0.clone(), s0.clone()).unwrap();
        assert!(cube.is_extension(&caps()).unwrap().is_extension);

        // identity square on C2 over 1: the comparison C2 -> C2 x C2 is the
        // diagonal, not surjective
        let idc2 = GroupHom::identity(c2.clone());
        let to_one = GroupHom::new(c2.clone(), one.clone(), vec![0, 0]).unwrap();
        let cube = CubicExtensionDiagram::square(
            idc2.clone(),
            idc2.clone(),
            to_one.clone(),
            to_one.clone(),
        )
        .unwrap();
        let chk = cube.is_extension(&caps()).unwrap();
        assert!(!chk.is_extension);
        let (mask, missed) = chk.failure.unwrap();
        assert_eq!(mask, 3);
        assert_eq!(missed.len(), 3, "witness tuple over the three proper subsets");
    }

    #[test]
    fn direction_examples() {
        let cube = CubicExtensionDiagram::from_hom(c4_mod2()).unwrap();
        let dir = cube.direction(&caps()).unwrap();
        assert_eq!(dir.subgroup.elements, vec![0, 2]);
        assert!(dir.abelian);

        // all-identity square has trivial direction
        let c2 = FiniteGroup::cyclic(2);
        let id = GroupHom::identity(c2.clone());
        let cube = CubicExtensionDiagram::square(id.clone(), id.clone(), id.clone(), id.clone()).unwrap();
        assert!(cube.direction(&caps()).unwrap().subgroup.is_trivial());

        // C4 double extension: direction of order 2
        let dir = c4_double().direction(&caps()).unwrap();
        assert_eq!(dir.subgroup.elements, vec![0, 2]);
    }

    #[test]
    fn centralisation_obstruction_examples() {
        // abelian top: everything commutes
        let cube = CubicExtensionDiagram::from_hom(c4_mod2()).unwrap();
        assert!(cube.centralisation_obstruction().is_trivial());

        // Q8 -> Q8/{±1}: kernel is the centre, L_1 trivial
        let q8 = FiniteGroup::quaternion8();
        let centre = group::generated_subgroup(&q8, &[1]).unwrap();
        let (_, pi) = group::quotient(&q8, &centre).unwrap();
        let cube = CubicExtensionDiagram::from_hom(pi).unwrap();
        assert!(cube.centralisation_obstruction().is_trivial());

        // D4 -> C2 with kernel C4 = <r>: L_1 = [C4, D4] = <r^2>
        let d4 = FiniteGroup::dihedral(4);
        let r = group::generated_subgroup(&d4, &[1]).unwrap();
        let (_, pi) = group::quotient(&d4, &r).unwrap();
        let cube = CubicExtensionDiagram::from_hom(pi).unwrap();
        let l = cube.centralisation_obstruction();
        assert_eq!(l.elements, vec![0, 2]);
    }

    #[test]
    fn centralise_examples() {
        let d4 = FiniteGroup::dihedral(4);
        let r = group::generated_subgroup(&d4, &[1]).unwrap();
        let (_, pi) = group::quotient(&d4, &r).unwrap();
        let cube = CubicExtensionDiagram::from_hom(pi).unwrap();
        let central = cube.centralise().unwrap();
        assert_eq!(central.top().order(), 4);
        assert!(central.centralisation_obstruction().is_trivial());
        assert!(central.is_extension(&caps()).unwrap().is_extension);
        assert_eq!(central.direction(&caps()).unwrap().subgroup.order(), 2);

        // already-central extension is unchanged up to canonical iso
        let q8 = FiniteGroup::quaternion8();
        let centre = group::generated_subgroup(&q8, &[1]).unwrap();
        let (_, pi) = group::quotient(&q8, &centre).unwrap();
        let cube = CubicExtensionDiagram::from_hom(pi).unwrap();
        let central = cube.centralise().unwrap();
        assert_eq!(central.top().order(), 8);
        assert!(group::find_isomorphism(central.top(), &q8).is_some());
    }

    #[test]
    fn product_over_z_examples() {
        let f = CubicExtensionDiagram::from_hom(c4_mod2()).unwrap();
        // F x (identity cube on Z) ~ F
        let c2 = FiniteGroup::cyclic(2);
        let idcube = CubicExtensionDiagram::from_hom(GroupHom::identity(c2.clone())).unwrap();
        let (p, _) = f.product_over_z(&idcube, &caps()).unwrap();
        assert_eq!(p.top().order(), 4);
        assert!(group::find_isomorphism(p.top(), f.top()).is_some());

        // two copies of C4 -> C2: apex of order 8, direction C2 x C2
        let g = CubicExtensionDiagram::from_hom(c4_mod2()).unwrap();
        let (p, _) = f.product_over_z(&g, &caps()).unwrap();
        assert_eq!(p.top().order(), 8);
        assert!(p.is_extension(&caps()).unwrap().is_extension);
        let dir = p.direction(&caps()).unwrap();
        assert_eq!(dir.subgroup.order(), 4);
        assert!(dir.group.elements().all(|x| dir.group.mul(x, x) == 0), "direction is C2 x C2");

        // base mismatch is an error
        let c3 = FiniteGroup::cyclic(3);
        let h = CubicExtensionDiagram::from_hom(GroupHom::identity(c3)).unwrap();
        assert!(f.product_over_z(&h, &caps()).is_err());
    }

    #[test]
    fn kernel_face_examples() {
        // degree 1: the kernel as a 0-cubic diagram
        let cube = CubicExtensionDiagram::from_hom(c4_mod2()).unwrap();
        let k = cube.kernel_face(0).unwrap();
        assert_eq!(k.degree(), 0);
        assert_eq!(k.top().order(), 2);

        // C4 double extension, direction 1: the kernel column; its own kernel
        // equals the direction
        let cube = c4_double();
        let col = cube.kernel_face(1).unwrap();
        assert_eq!(col.degree(), 1);
        let again = col.kernel_face(0).unwrap();
        assert_eq!(again.top().order(), cube.direction(&caps()).unwrap().subgroup.order());
    }

    #[test]
    fn split_epis_between_extensions_are_two_cubic_extensions() {
        // (X -> D) x S projected to (X -> D) is a split square and must pass
        // the extension certificate
        for s in [FiniteGroup::cyclic(2), FiniteGroup::cyclic(3), FiniteGroup::symmetric3()] {
            let f = c4_mod2();
            let xp = ProductGroup::new(&[f.domain.clone(), s.clone()]);
            let dp = ProductGroup::new(&[f.codomain.clone(), s.clone()]);
            let fx1: Vec<u16> = (0..xp.group.order() as u16)
                .map(|e| {
                    let t = xp.decode(e);
                    dp.encode(&[f.apply(t[0]), t[1]])
                })
                .collect();
            let top0 = GroupHom::new(xp.group.clone(), f.domain.clone(), xp.projection(0).images.clone()).unwrap();
            let top1 = GroupHom::new(xp.group.clone(), dp.group.clone(), fx1).unwrap();
            let side0 = GroupHom::new(dp.group.clone(), f.codomain.clone(), dp.projection(0).images.clone()).unwrap();
            let side1 = f.clone();
            let cube = CubicExtensionDiagram::square(top0, top1, side0, side1).unwrap();
            assert!(cube.is_extension(&caps()).unwrap().is_extension);
        }
    }
}
