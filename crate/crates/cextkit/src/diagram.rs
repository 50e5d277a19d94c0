//! Finite diagrams of finite groups and their limits.
//!
//! Limits are computed by constraint propagation: candidate tuples are grown
//! coordinate by coordinate in a fixed canonical order, checking every arrow
//! as soon as both endpoints are placed, under a global candidate budget.

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, GroupHom};
use std::collections::HashMap;
use std::sync::Arc;

/// A generating arrow of a finite diagram shape.
#[derive(Debug, Clone)]
pub struct Arrow {
    pub src: usize,
    pub tgt: usize,
}

/// Shape of a finite diagram: indexed objects, generating arrows, and
/// declared commutativities between arrow paths (each path a list of arrow
/// indices, applied left to right).
#[derive(Debug, Clone, Default)]
pub struct FinDiagram {
    pub object_count: usize,
    pub arrows: Vec<Arrow>,
    pub relations: Vec<(Vec<usize>, Vec<usize>)>,
}

/// A diagram of groups over a shape.
pub struct GrpFunctor {
    pub shape: FinDiagram,
    pub objects: Vec<Arc<FiniteGroup>>,
    pub arrows: Vec<GroupHom>,
}

impl GrpFunctor {
    pub fn new(shape: FinDiagram, objects: Vec<Arc<FiniteGroup>>, arrows: Vec<GroupHom>) -> Result<Self> {
        if objects.len() != shape.object_count || arrows.len() != shape.arrows.len() {
            return Err(Error::Mismatch("diagram data does not match its shape".into()));
        }
        for (a, h) in shape.arrows.iter().zip(&arrows) {
            if h.domain.order() != objects[a.src].order() || h.codomain.order() != objects[a.tgt].order() {
                return Err(Error::Mismatch(format!("arrow {}->{} does not match object groups", a.src, a.tgt)));
            }
        }
        let f = GrpFunctor { shape, objects, arrows };
        f.check_relations()?;
        Ok(f)
    }

    fn path_endpoints(&self, path: &[usize]) -> Result<(usize, usize)> {
        if path.is_empty() {
            return Err(Error::Mismatch("empty relation path".into()));
        }
        let src = self.shape.arrows[path[0]].src;
        let mut at = src;
        for &a in path {
            if self.shape.arrows[a].src != at {
                return Err(Error::Mismatch("relation path does not compose".into()));
            }
            at = self.shape.arrows[a].tgt;
        }
        Ok((src, at))
    }

    fn check_relations(&self) -> Result<()> {
        for (lhs, rhs) in &self.shape.relations {
            let (ls, lt) = self.path_endpoints(lhs)?;
            let (rs, rt) = self.path_endpoints(rhs)?;
            if (ls, lt) != (rs, rt) {
                return Err(Error::Mismatch("relation paths have different endpoints".into()));
            }
            for x in self.objects[ls].elements() {
                let mut a = x;
                for &i in lhs {
                    a = self.arrows[i].apply(a);
                }
                let mut b = x;
                for &i in rhs {
                    b = self.arrows[i].apply(b);
                }
                if a != b {
                    return Err(Error::NonCommutingDiagram { from: ls, to: lt, witness: x as usize });
                }
            }
        }
        Ok(())
    }
}

/// Apex of a limit cone, with the tuple realisation of each apex element and
/// one projection per diagram object.
pub struct LimitResult {
    pub apex: Arc<FiniteGroup>,
    pub tuples: Vec<Vec<u16>>,
    pub projections: Vec<GroupHom>,
}

impl LimitResult {
    pub fn tuple_index(&self, t: &[u16]) -> Option<u16> {
        self.tuples.binary_search_by(|probe| probe.as_slice().cmp(t)).ok().map(|i| i as u16)
    }
}

/// Builds a group structure on a set of tuples closed under the componentwise
/// operations of the given coordinate groups. Tuples must be sorted.
pub(crate) fn group_on_tuples(
    name: &str,
    coords: &[Arc<FiniteGroup>],
    tuples: Vec<Vec<u16>>,
    cap: usize,
) -> Result<LimitResult> {
    let n = tuples.len();
    if n == 0 || tuples[0].iter().any(|&x| x != 0) {
        return Err(Error::Mismatch("tuple set misses the identity tuple".into()));
    }
    if n > cap {
        return Err(Error::OrderCapExceeded { required: n, cap });
    }
    let index: HashMap<&[u16], u16> =
        tuples.iter().enumerate().map(|(i, t)| (t.as_slice(), i as u16)).collect();
    let width = coords.len();
    let mut table = vec![0u16; n * n];
    let mut buf = vec![0u16; width];
    for a in 0..n {
        for b in 0..n {
            for (k, g) in coords.iter().enumerate() {
                buf[k] = g.mul(tuples[a][k], tuples[b][k]);
            }
            let idx = index.get(buf.as_slice()).ok_or(Error::NotASubgroup)?;
            table[a * n + b] = *idx;
        }
    }
    let apex = FiniteGroup::derived(name, n, table)?;
    let projections = (0..width)
        .map(|k| {
            let images = tuples.iter().map(|t| t[k]).collect();
            GroupHom::unchecked(apex.clone(), coords[k].clone(), images)
        })
        .collect();
    Ok(LimitResult { apex, tuples, projections })
}

/// Limit of a finite diagram of groups: arrow-compatible tuples under the
/// product group structure, enumerated in canonical (lexicographic) order.
pub fn limit(f: &GrpFunctor, caps: &Caps) -> Result<LimitResult> {
    let n = f.objects.len();
    // arrows grouped by the later of their two endpoints
    let mut forced: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n]; // (arrow, src) with src already placed
    let mut checks: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n]; // (arrow, tgt) with tgt already placed
    for (i, a) in f.shape.arrows.iter().enumerate() {
        if a.src < a.tgt {
            forced[a.tgt].push((i, a.src));
        } else if a.tgt < a.src {
            checks[a.src].push((i, a.tgt));
        } else {
            // endomaps are plain per-coordinate filters
            checks[a.src].push((i, a.tgt));
        }
    }
    let mut tuples: Vec<Vec<u16>> = Vec::new();
    let mut current = vec![0u16; n];
    let mut visited: u64 = 0;
    fn rec(
        f: &GrpFunctor,
        forced: &[Vec<(usize, usize)>],
        checks: &[Vec<(usize, usize)>],
        pos: usize,
        current: &mut Vec<u16>,
        tuples: &mut Vec<Vec<u16>>,
        visited: &mut u64,
        budget: u64,
    ) -> Result<()> {
        if pos == f.objects.len() {
            tuples.push(current.clone());
            return Ok(());
        }
        'candidates: for x in f.objects[pos].elements() {
            *visited += 1;
            if *visited > budget {
                let required: u64 = f.objects.iter().map(|g| g.order() as u64).product();
                return Err(Error::BudgetExceeded { required, budget });
            }
            for &(arr, src) in &forced[pos] {
                if f.arrows[arr].apply(current[src]) != x {
                    continue 'candidates;
                }
            }
            for &(arr, tgt) in &checks[pos] {
                let v = f.arrows[arr].apply(x);
                let want = if tgt == pos { x } else { current[tgt] };
                if v != want {
                    continue 'candidates;
                }
            }
            current[pos] = x;
            rec(f, forced, checks, pos + 1, current, tuples, visited, budget)?;
        }
        Ok(())
    }
    rec(f, &forced, &checks, 0, &mut current, &mut tuples, &mut visited, caps.limit_budget)?;
    group_on_tuples("lim", &f.objects, tuples, caps.max_group_order)
}

/// Pullback of a cospan f: X -> Z <- Y :g, as pairs with two projections.
pub fn pullback(f: &GroupHom, g: &GroupHom, caps: &Caps) -> Result<LimitResult> {
    if f.codomain.order() != g.codomain.order() || *f.codomain != *g.codomain {
        return Err(Error::Mismatch("pullback legs have different codomains".into()));
    }
    // fibers of g, listed per codomain value
    let mut fibers: Vec<Vec<u16>> = vec![Vec::new(); g.codomain.order()];
    for y in g.domain.elements() {
        fibers[g.apply(y) as usize].push(y);
    }
    let mut tuples = Vec::new();
    for x in f.domain.elements() {
        for &y in &fibers[f.apply(x) as usize] {
            tuples.push(vec![x, y]);
        }
    }
    tuples.sort();
    group_on_tuples(
        &format!("{}x_{}{}", f.domain.name(), f.codomain.name(), g.domain.name()),
        &[f.domain.clone(), g.domain.clone()],
        tuples,
        caps.max_group_order,
    )
}

/// Streams the simplicial kernel of (f_0..f_{n-1}): all (n+1)-tuples
/// (x_0..x_n) over the common domain with f_i(x_j) = f_{j-1}(x_i) for i < j,
/// in lexicographic order.
pub fn simplicial_kernel_stream(
    maps: &[GroupHom],
    budget: u64,
    visit: &mut dyn FnMut(&[u16]) -> Result<()>,
) -> Result<()> {
    let n = maps.len();
    if n == 0 {
        return Err(Error::Mismatch("simplicial kernel of an empty family".into()));
    }
    let dom = maps[0].domain.clone();
    for m in maps {
        if m.domain.order() != dom.order() || *m.domain != *dom {
            return Err(Error::Mismatch("simplicial kernel maps must share their domain".into()));
        }
        if m.codomain.order() != maps[0].codomain.order() || *m.codomain != *maps[0].codomain {
            return Err(Error::Mismatch("simplicial kernel maps must share their codomain".into()));
        }
    }
    // fibers of each map
    let cod_order = maps[0].codomain.order();
    let mut fibers: Vec<Vec<Vec<u16>>> = vec![vec![Vec::new(); cod_order]; n];
    for (i, m) in maps.iter().enumerate() {
        for x in dom.elements() {
            fibers[i][m.apply(x) as usize].push(x);
        }
    }
    let mut tuple = vec![0u16; n + 1];
    let mut visited: u64 = 0;
    fn rec(
        maps: &[GroupHom],
        fibers: &[Vec<Vec<u16>>],
        dom: &FiniteGroup,
        j: usize,
        tuple: &mut Vec<u16>,
        visited: &mut u64,
        budget: u64,
        visit: &mut dyn FnMut(&[u16]) -> Result<()>,
    ) -> Result<()> {
        let n = maps.len();
        if j == n + 1 {
            return visit(tuple);
        }
        if j == 0 {
            for x in dom.elements() {
                *visited += 1;
                if *visited > budget {
                    return Err(Error::BudgetExceeded {
                        required: (dom.order() as u64).saturating_pow(n as u32 + 1),
                        budget,
                    });
                }
                tuple[0] = x;
                rec(maps, fibers, dom, 1, tuple, visited, budget, visit)?;
            }
            return Ok(());
        }
        // x_j must satisfy f_i(x_j) = f_{j-1}(x_i) for all i < j
        let i0 = 0usize;
        let want0 = maps[j - 1].apply(tuple[i0]);
        'cands: for &x in &fibers[i0][want0 as usize] {
            *visited += 1;
            if *visited > budget {
                return Err(Error::BudgetExceeded {
                    required: (dom.order() as u64).saturating_pow(n as u32 + 1),
                    budget,
                });
            }
            for i in 1..j.min(n) {
                if maps[i].apply(x) != maps[j - 1].apply(tuple[i]) {
                    continue 'cands;
                }
            }
            tuple[j] = x;
            rec(maps, fibers, dom, j + 1, tuple, visited, budget, visit)?;
        }
        Ok(())
    }
    rec(maps, &fibers, &dom, 0, &mut tuple, &mut visited, budget, visit)
}

/// Materialised simplicial kernel with its coordinate projections.
pub fn simplicial_kernel(maps: &[GroupHom], caps: &Caps) -> Result<LimitResult> {
    let mut tuples = Vec::new();
    simplicial_kernel_stream(maps, caps.limit_budget, &mut |t| {
        tuples.push(t.to_vec());
        Ok(())
    })?;
    let coords: Vec<Arc<FiniteGroup>> = vec![maps[0].domain.clone(); maps.len() + 1];
    group_on_tuples("simp-ker", &coords, tuples, caps.max_group_order)
}

/// Result of the simplicial approximation: the truncated simplicial group
/// together with the top component of the counit back to the cube.
pub struct SimplicialApproximation {
    pub trunc: crate::simplicial::TruncatedSimplicialGroup,
    pub counit_top: GroupHom,
}

/// Pointwise right Kan extension of an n-fold arrow into a truncated
/// simplicial group, for n ≤ 2 via the explicit level formulas: degree 1 is
/// the arrow itself, degree 2 has top level R(f_0) x_X R(f_1) with the outer
/// projections as faces and the diagonal as degeneracy.
pub fn pointwise_ran(
    f: &crate::cubic::CubicExtensionDiagram,
    caps: &Caps,
) -> Result<SimplicialApproximation> {
    match f.degree() {
        1 => {
            let top = f.map(1, 0).clone();
            let trunc = crate::simplicial::TruncatedSimplicialGroup::new(
                vec![top.codomain.clone(), top.domain.clone()],
                vec![vec![top.clone()]],
                vec![],
            )?;
            Ok(SimplicialApproximation { trunc, counit_top: GroupHom::identity(top.domain) })
        }
        2 => {
            let x = f.object(3).clone();
            let f0 = f.map(3, 0).clone();
            let f1 = f.map(3, 1).clone();
            // triples (w, x, z) with f0(w) = f0(x) and f1(x) = f1(z)
            let mut tuples = Vec::new();
            let mut fib0: Vec<Vec<u16>> = vec![Vec::new(); f0.codomain.order()];
            for w in x.elements() {
                fib0[f0.apply(w) as usize].push(w);
            }
            let mut fib1: Vec<Vec<u16>> = vec![Vec::new(); f1.codomain.order()];
            for z in x.elements() {
                fib1[f1.apply(z) as usize].push(z);
            }
            for mid in x.elements() {
                for &w in &fib0[f0.apply(mid) as usize] {
                    for &z in &fib1[f1.apply(mid) as usize] {
                        tuples.push(vec![w, mid, z]);
                    }
                }
            }
            tuples.sort();
            let lim = group_on_tuples("ran2", &[x.clone(), x.clone(), x.clone()], tuples, caps.max_group_order)?;
            let top_level = lim.apex.clone();
            let d0 = lim.projections[0].clone();
            let d1 = lim.projections[2].clone();
            let counit_top = lim.projections[1].clone();
            let aug = f.composite(3, 0);
            let diag_images = x
                .elements()
                .map(|e| lim.tuple_index(&[e, e, e]).ok_or(Error::NotAMember))
                .collect::<Result<Vec<u16>>>()?;
            let sigma0 = GroupHom::unchecked(x.clone(), top_level.clone(), diag_images);
            let trunc = crate::simplicial::TruncatedSimplicialGroup::new(
                vec![f.base().clone(), x, top_level],
                vec![vec![aug], vec![d0, d1]],
                vec![vec![sigma0]],
            )?;
            Ok(SimplicialApproximation { trunc, counit_top })
        }
        n => Err(Error::Mismatch(format!("simplicial approximation supports degrees 1 and 2, got {n}"))),
    }
}

/// Verifies that the counit square (top of the approximation against the
/// comparison morphisms into the limits) is a pullback, by exact fiber
/// comparison.
pub fn counit_square_is_pullback(
    f: &crate::cubic::CubicExtensionDiagram,
    ran: &SimplicialApproximation,
    caps: &Caps,
) -> Result<bool> {
    let g = ran.trunc.underlying_cube()?;
    let n = f.degree();
    let full = f.full_mask();
    let lim_f = f.punctured_limit(full, caps)?;
    let lim_g = g.punctured_limit(full, caps)?;
    let l_f = f.comparison_into(full, &lim_f)?;
    let l_g = g.comparison_into(full, &lim_g)?;
    // the counit at the proper subsets: identity on the base, and in degree 2
    // the two legs of the square on the middle objects
    let counit_at = |mask: u32| -> GroupHom {
        if mask == 0 {
            GroupHom::identity(f.base().clone())
        } else if n == 1 {
            unreachable!("degree 1 has no middle subsets")
        } else {
            // mask 1 = {0}: the leg removing direction 1; mask 2 = {1}: the
            // leg removing direction 0
            match mask {
                1 => f.map(3, 1).clone(),
                2 => f.map(3, 0).clone(),
                _ => unreachable!(),
            }
        }
    };
    // L(u): map lim_g tuples to lim_f tuples coordinatewise
    let subsets: Vec<u32> = (0..=full).filter(|j| *j != full).collect();
    let mut l_u_images = Vec::with_capacity(lim_g.apex.order());
    for t in &lim_g.tuples {
        let mapped: Vec<u16> =
            subsets.iter().enumerate().map(|(k, &m)| counit_at(m).apply(t[k])).collect();
        match lim_f.tuple_index(&mapped) {
            Some(i) => l_u_images.push(i),
            None => return Ok(false),
        }
    }
    // pullback check: G_top must biject onto {(y, x) : L(u)(y) = l_F(x)}
    let g_top = g.top();
    let mut count = 0usize;
    for y in lim_g.apex.elements() {
        for x in f.top().elements() {
            if l_u_images[y as usize] == l_f.apply(x) {
                count += 1;
            }
        }
    }
    if count != g_top.order() {
        return Ok(false);
    }
    // injectivity of (l_G, u_top) on G_top
    let mut seen = std::collections::HashSet::new();
    for e in g_top.elements() {
        if !seen.insert((l_g.apply(e), ran.counit_top.apply(e))) {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{self, FiniteGroup};

    fn c(n: usize) -> Arc<FiniteGroup> {
        FiniteGroup::cyclic(n)
    }

    #[test]
    fn limit_of_single_object() {
        let g = c(4);
        let f = GrpFunctor::new(
            FinDiagram { object_count: 1, arrows: vec![], relations: vec![] },
            vec![g.clone()],
            vec![],
        )
        .unwrap();
        let lim = limit(&f, &Caps::default()).unwrap();
        assert_eq!(lim.apex.order(), 4);
        assert!(group::find_isomorphism(&lim.apex, &g).is_some());
    }

    #[test]
    fn pullback_of_two_surjections_to_point() {
        let c2 = c(2);
        let one = c(1);
        let f = GroupHom::new(c2.clone(), one.clone(), vec![0, 0]).unwrap();
        let pb = pullback(&f, &f, &Caps::default()).unwrap();
        // C2 x_1 C2 = C2 x C2, the tuple filter over 4 candidates keeps all
        assert_eq!(pb.apex.order(), 4);
    }

    #[test]
    fn pullback_diagonal_and_kernel() {
        let c4 = c(4);
        let id = GroupHom::identity(c4.clone());
        let pb = pullback(&id, &id, &Caps::default()).unwrap();
        assert_eq!(pb.apex.order(), 4, "pullback of the identity against itself is the diagonal");

        let c2 = c(2);
        let red = GroupHom::new(c4.clone(), c2.clone(), vec![0, 1, 0, 1]).unwrap();
        let rf = pullback(&red, &red, &Caps::default()).unwrap();
        // kernel pair: sum of squared fiber sizes = 2 * 4
        assert_eq!(rf.apex.order(), 8);

        let idc2 = GroupHom::identity(c2.clone());
        let point = GroupHom::new(c(1), c2.clone(), vec![0]).unwrap();
        let k = pullback(&idc2, &point, &Caps::default()).unwrap();
        assert_eq!(k.apex.order(), 1);
    }

    #[test]
    fn equalizer_of_identity_and_inversion_on_c3() {
        let c3 = c(3);
        let id = GroupHom::identity(c3.clone());
        let invimg = (0..3u16).map(|x| c3.inv(x)).collect::<Vec<_>>();
        let inv = GroupHom::new(c3.clone(), c3.clone(), invimg).unwrap();
        // shape: two objects, arrows id, inv from 0 to 1
        let f = GrpFunctor::new(
            FinDiagram {
                object_count: 2,
                arrows: vec![Arrow { src: 0, tgt: 1 }, Arrow { src: 0, tgt: 1 }],
                relations: vec![],
            },
            vec![c3.clone(), c3.clone()],
            vec![id, inv],
        )
        .unwrap();
        let lim = limit(&f, &Caps::default()).unwrap();
        // x = x^{-1} forces x = 0 in C3
        assert_eq!(lim.apex.order(), 1);
    }

    #[test]
    fn limit_budget_is_enforced() {
        let c4 = c(4);
        let f = GrpFunctor::new(
            FinDiagram { object_count: 3, arrows: vec![], relations: vec![] },
            vec![c4.clone(), c4.clone(), c4.clone()],
            vec![],
        )
        .unwrap();
        let caps = Caps { limit_budget: 10, ..Caps::default() };
        assert!(matches!(limit(&f, &caps), Err(Error::BudgetExceeded { .. })));
    }

    #[test]
    fn limit_idempotent_on_cone_extension() {
        // extending a cospan by its own limit apex returns an isomorphic apex
        let c4 = c(4);
        let c2 = c(2);
        let red = GroupHom::new(c4.clone(), c2.clone(), vec![0, 1, 0, 1]).unwrap();
        let base = GrpFunctor::new(
            FinDiagram {
                object_count: 3,
                arrows: vec![Arrow { src: 0, tgt: 2 }, Arrow { src: 1, tgt: 2 }],
                relations: vec![],
            },
            vec![c4.clone(), c4.clone(), c2.clone()],
            vec![red.clone(), red.clone()],
        )
        .unwrap();
        let lim1 = limit(&base, &Caps::default()).unwrap();
        let ext = GrpFunctor::new(
            FinDiagram {
                object_count: 4,
                arrows: vec![
                    Arrow { src: 0, tgt: 2 },
                    Arrow { src: 1, tgt: 2 },
                    Arrow { src: 3, tgt: 0 },
                    Arrow { src: 3, tgt: 1 },
                    Arrow { src: 3, tgt: 2 },
                ],
                relations: vec![(vec![2, 0], vec![4]), (vec![3, 1], vec![4])],
            },
            vec![c4.clone(), c4.clone(), c2.clone(), lim1.apex.clone()],
            vec![
                red.clone(),
                red.clone(),
                lim1.projections[0].clone(),
                lim1.projections[1].clone(),
                lim1.projections[0].then(&red),
            ],
        )
        .unwrap();
        let lim2 = limit(&ext, &Caps::default()).unwrap();
        assert_eq!(lim1.apex.order(), lim2.apex.order());
        assert!(group::find_isomorphism(&lim1.apex, &lim2.apex).is_some());
    }

    #[test]
    fn pointwise_ran_examples() {
        use crate::cubic::CubicExtensionDiagram;
        // degree 1: the arrow itself
        let c4 = c(4);
        let c2 = c(2);
        let red = GroupHom::new(c4.clone(), c2.clone(), vec![0, 1, 0, 1]).unwrap();
        let cube = CubicExtensionDiagram::from_hom(red.clone()).unwrap();
        let ran = pointwise_ran(&cube, &Caps::default()).unwrap();
        assert_eq!(ran.trunc.truncation(), 0);
        assert_eq!(ran.trunc.level(0).order(), 4);
        assert!(counit_square_is_pullback(&cube, &ran, &Caps::default()).unwrap());

        // degree 2 with identity legs: the top level is the diagonal of
        // diagonals, isomorphic to the group itself
        let g = c(4);
        let id = GroupHom::identity(g.clone());
        let sq = CubicExtensionDiagram::square(id.clone(), id.clone(), id.clone(), id.clone()).unwrap();
        let ran = pointwise_ran(&sq, &Caps::default()).unwrap();
        assert_eq!(ran.trunc.level(1).order(), 4);
        assert!(counit_square_is_pullback(&sq, &ran, &Caps::default()).unwrap());

        // the C4 double extension: top level R(d) x_X R(c) of order 32
        let one = c(1);
        let d = GroupHom::new(c4.clone(), c2.clone(), vec![0, 1, 0, 1]).unwrap();
        let cc = GroupHom::new(c4.clone(), one.clone(), vec![0; 4]).unwrap();
        let side0 = GroupHom::new(one.clone(), one.clone(), vec![0]).unwrap();
        let side1 = GroupHom::new(c2.clone(), one.clone(), vec![0, 0]).unwrap();
        let sq = CubicExtensionDiagram::square(d, cc, side0, side1).unwrap();
        let ran = pointwise_ran(&sq, &Caps::default()).unwrap();
        assert_eq!(ran.trunc.level(1).order(), 32, "pairs of pairs sharing the middle coordinate: 8 * 4");
        assert!(counit_square_is_pullback(&sq, &ran, &Caps::default()).unwrap());
    }

    #[test]
    fn punctured_limit_agrees_with_generic_limit() {
        use crate::cubic::CubicExtensionDiagram;
        // two code paths for the same limit: co-atom propagation against the
        // generic backtracking over the restricted diagram
        let c4 = c(4);
        let c2 = c(2);
        let one = c(1);
        let d = GroupHom::new(c4.clone(), c2.clone(), vec![0, 1, 0, 1]).unwrap();
        let cc = GroupHom::new(c4.clone(), one.clone(), vec![0; 4]).unwrap();
        let side0 = GroupHom::new(one.clone(), one.clone(), vec![0]).unwrap();
        let side1 = GroupHom::new(c2.clone(), one.clone(), vec![0, 0]).unwrap();
        for cube in [
            CubicExtensionDiagram::square(d.clone(), cc, side0, side1).unwrap(),
            CubicExtensionDiagram::square(
                d.clone(),
                d.clone(),
                GroupHom::identity(c2.clone()),
                GroupHom::identity(c2.clone()),
            )
            .unwrap(),
        ] {
            let fast = cube.punctured_limit(3, &Caps::default()).unwrap();
            // generic diagram on the three proper subsets, arrows to the base
            let f = GrpFunctor::new(
                FinDiagram {
                    object_count: 3,
                    arrows: vec![Arrow { src: 1, tgt: 0 }, Arrow { src: 2, tgt: 0 }],
                    relations: vec![],
                },
                vec![cube.object(0).clone(), cube.object(1).clone(), cube.object(2).clone()],
                vec![cube.map(1, 0).clone(), cube.map(2, 1).clone()],
            )
            .unwrap();
            let slow = limit(&f, &Caps::default()).unwrap();
            assert_eq!(fast.tuples, slow.tuples, "same answer through both code paths");
        }
    }

    #[test]
    fn simplicial_kernel_agrees_with_full_product_filter() {
        // independent oracle: filter the whole cartesian power
        let c4 = c(4);
        let c2 = c(2);
        let red = GroupHom::new(c4.clone(), c2.clone(), vec![0, 1, 0, 1]).unwrap();
        let maps = [red.clone(), red.clone()];
        let k = simplicial_kernel(&maps, &Caps::default()).unwrap();
        let mut brute = Vec::new();
        for x0 in 0..4u16 {
            for x1 in 0..4u16 {
                for x2 in 0..4u16 {
                    let ok = maps[0].apply(x1) == maps[0].apply(x0)
                        && maps[0].apply(x2) == maps[1].apply(x0)
                        && maps[1].apply(x2) == maps[1].apply(x1);
                    if ok {
                        brute.push(vec![x0, x1, x2]);
                    }
                }
            }
        }
        brute.sort();
        assert_eq!(k.tuples, brute);
    }

    #[test]
    fn simplicial_kernel_examples() {
        let c4 = c(4);
        let c2 = c(2);
        let red = GroupHom::new(c4.clone(), c2.clone(), vec![0, 1, 0, 1]).unwrap();
        // one map: the kernel pair, order 8
        let k = simplicial_kernel(&[red.clone()], &Caps::default()).unwrap();
        assert_eq!(k.apex.order(), 8);

        // maps into the trivial group: no conditions, K = X^{n+1}
        let tow = GroupHom::new(c2.clone(), c(1), vec![0, 0]).unwrap();
        let k = simplicial_kernel(&[tow.clone(), tow.clone()], &Caps::default()).unwrap();
        assert_eq!(k.apex.order(), 8);

        // two identities on C2: diagonal triples
        let id = GroupHom::identity(c2.clone());
        let k = simplicial_kernel(&[id.clone(), id.clone()], &Caps::default()).unwrap();
        assert_eq!(k.apex.order(), 2);
        for t in &k.tuples {
            assert!(t.iter().all(|&x| x == t[0]));
        }

        // mismatched domains are rejected
        let other = GroupHom::new(c2.clone(), c2.clone(), vec![0, 1]).unwrap();
        assert!(simplicial_kernel(&[red, other], &Caps::default()).is_err());
    }
}
