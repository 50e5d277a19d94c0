//! Finite groups as multiplication tables.
//!
//! Every group in the workbench is a Cayley table over element indices
//! `0..order` with the identity pinned at index `0`. Homomorphisms are full
//! image tables. All values are immutable after construction.

use crate::error::{Error, Result};
use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::sync::Arc;

/// A finite group given by its full multiplication table.
pub struct FiniteGroup {
    name: String,
    order: usize,
    table: Vec<u16>,
    inverse: Vec<u16>,
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteGroup({}, order {})", self.name, self.order)
    }
}

impl PartialEq for FiniteGroup {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order && self.table == other.table
    }
}
impl Eq for FiniteGroup {}

impl FiniteGroup {
    /// Builds a group from a table, checking all group axioms.
    ///
    /// The identity must sit at index 0; this is an invariant of every file
    /// format and oracle in the crate.
    pub fn from_table(name: &str, rows: &[Vec<u16>]) -> Result<Arc<Self>> {
        let order = rows.len();
        if order == 0 {
            return Err(Error::InvalidGroup { order, reason: "empty table".into() });
        }
        let mut table = Vec::with_capacity(order * order);
        for row in rows {
            if row.len() != order {
                return Err(Error::InvalidGroup { order, reason: "table is not square".into() });
            }
            for &v in row {
                if (v as usize) >= order {
                    return Err(Error::ElementOutOfRange { index: v as usize, order });
                }
                table.push(v);
            }
        }
        let g = Self::from_flat_table(name, order, table)?;
        g.check_associativity()?;
        Ok(g)
    }

    fn from_flat_table(name: &str, order: usize, table: Vec<u16>) -> Result<Arc<Self>> {
        // identity and inverse laws
        for a in 0..order {
            if table[a] as usize != a || table[a * order] as usize != a {
                return Err(Error::InvalidGroup { order, reason: format!("index 0 is not an identity at {a}") });
            }
        }
        let mut inverse = vec![u16::MAX; order];
        for a in 0..order {
            let mut found = false;
            for b in 0..order {
                if table[a * order + b] == 0 && table[b * order + a] == 0 {
                    inverse[a] = b as u16;
                    found = true;
                    break;
                }
            }
            if !found {
                return Err(Error::InvalidGroup { order, reason: format!("no inverse for element {a}") });
            }
        }
        Ok(Arc::new(FiniteGroup { name: name.to_string(), order, table, inverse }))
    }

    fn check_associativity(&self) -> Result<()> {
        let n = self.order;
        for a in 0..n {
            for b in 0..n {
                let ab = self.mul(a as u16, b as u16);
                for c in 0..n {
                    let bc = self.mul(b as u16, c as u16);
                    if self.mul(ab, c as u16) != self.mul(a as u16, bc) {
                        return Err(Error::InvalidGroup {
                            order: n,
                            reason: format!("associativity fails at ({a},{b},{c})"),
                        });
                    }
                }
            }
        }
        Ok(())
    }

    /// Internal constructor for tables obtained from verified groups
    /// (subgroups, quotients, products, limits). Identity/inverse laws are
    /// still validated; the cubic associativity scan is skipped.
    pub(crate) fn derived(name: &str, order: usize, table: Vec<u16>) -> Result<Arc<Self>> {
        debug_assert_eq!(table.len(), order * order);
        Self::from_flat_table(name, order, table)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn mul(&self, a: u16, b: u16) -> u16 {
        self.table[a as usize * self.order + b as usize]
    }

    #[inline]
    pub fn inv(&self, a: u16) -> u16 {
        self.inverse[a as usize]
    }

    pub fn elements(&self) -> impl Iterator<Item = u16> + '_ {
        0..self.order as u16
    }

    pub fn table_rows(&self) -> Vec<Vec<u16>> {
        (0..self.order).map(|a| self.table[a * self.order..(a + 1) * self.order].to_vec()).collect()
    }

    /// a * b * a^{-1}
    pub fn conj(&self, a: u16, b: u16) -> u16 {
        self.mul(self.mul(a, b), self.inv(a))
    }

    /// [a, b] = a b a^{-1} b^{-1}
    pub fn comm(&self, a: u16, b: u16) -> u16 {
        self.mul(self.mul(a, b), self.mul(self.inv(a), self.inv(b)))
    }

    pub fn pow(&self, a: u16, k: usize) -> u16 {
        let mut acc = 0u16;
        for _ in 0..k {
            acc = self.mul(acc, a);
        }
        acc
    }

    pub fn element_order(&self, a: u16) -> usize {
        let mut acc = a;
        let mut k = 1;
        while acc != 0 {
            acc = self.mul(acc, a);
            k += 1;
        }
        k
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order as u16;
        for a in 0..n {
            for b in 0..a {
                if self.mul(a, b) != self.mul(b, a) {
                    return false;
                }
            }
        }
        true
    }

    /// The cyclic group of order n.
    pub fn cyclic(n: usize) -> Arc<Self> {
        assert!(n >= 1);
        let mut table = vec![0u16; n * n];
        for a in 0..n {
            for b in 0..n {
                table[a * n + b] = ((a + b) % n) as u16;
            }
        }
        FiniteGroup::derived(&format!("C{n}"), n, table).expect("cyclic table")
    }

    pub fn trivial() -> Arc<Self> {
        Self::cyclic(1)
    }

    /// Dihedral group of order 2n. Elements `r^a s^b` indexed `a + n*b`,
    /// so index 1 is the rotation r and index n is the reflection s.
    pub fn dihedral(n: usize) -> Arc<Self> {
        assert!(n >= 2);
        let order = 2 * n;
        let idx = |a: usize, b: usize| a + n * b;
        let mut table = vec![0u16; order * order];
        for a1 in 0..n {
            for b1 in 0..2 {
                for a2 in 0..n {
                    for b2 in 0..2 {
                        // (r^a1 s^b1)(r^a2 s^b2) = r^(a1 + a2*(-1)^b1) s^(b1+b2)
                        let a = if b1 == 0 { (a1 + a2) % n } else { (a1 + n - a2 % n) % n };
                        let b = (b1 + b2) % 2;
                        table[idx(a1, b1) * order + idx(a2, b2)] = idx(a, b) as u16;
                    }
                }
            }
        }
        FiniteGroup::derived(&format!("D{n}"), order, table).expect("dihedral table")
    }

    /// The quaternion group {±1, ±i, ±j, ±k}; index 1 is -1.
    pub fn quaternion8() -> Arc<Self> {
        // 0:1 1:-1 2:i 3:-i 4:j 5:-j 6:k 7:-k
        let neg = |x: usize| x ^ 1;
        let base_mul = |a: usize, b: usize| -> usize {
            // multiplication on {1:0, i:2, j:4, k:6} with signs
            match (a, b) {
                (0, y) => y,
                (x, 0) => x,
                (2, 2) => 1,          // i*i = -1
                (4, 4) => 1,          // j*j = -1
                (6, 6) => 1,          // k*k = -1
                (2, 4) => 6,          // i*j = k
                (4, 2) => 7,          // j*i = -k
                (4, 6) => 2,          // j*k = i
                (6, 4) => 3,          // k*j = -i
                (6, 2) => 4,          // k*i = j
                (2, 6) => 5,          // i*k = -j
                _ => unreachable!(),
            }
        };
        let mut table = vec![0u16; 64];
        for a in 0..8usize {
            for b in 0..8usize {
                let mut r = base_mul(a & !1, b & !1);
                if a & 1 == 1 {
                    r = neg(r);
                }
                if b & 1 == 1 {
                    r = neg(r);
                }
                table[a * 8 + b] = r as u16;
            }
        }
        FiniteGroup::derived("Q8", 8, table).expect("quaternion table")
    }

    /// Closes a set of permutations of `0..degree` into a group, with a hard
    /// cap on the resulting order. The identity lands at index 0 because the
    /// identity permutation is lexicographically minimal.
    pub fn from_permutations(name: &str, degree: usize, gens: &[Vec<u16>], cap: usize) -> Result<Arc<Self>> {
        for g in gens {
            if g.len() != degree {
                return Err(Error::Parse(format!("permutation of length {} on {degree} points", g.len())));
            }
            let mut seen = vec![false; degree];
            for &v in g {
                if (v as usize) >= degree || seen[v as usize] {
                    return Err(Error::Parse("not a permutation".into()));
                }
                seen[v as usize] = true;
            }
        }
        let id: Vec<u16> = (0..degree as u16).collect();
        let mut elems: HashSet<Vec<u16>> = HashSet::new();
        elems.insert(id.clone());
        let mut queue: VecDeque<Vec<u16>> = VecDeque::new();
        queue.push_back(id);
        while let Some(p) = queue.pop_front() {
            for g in gens {
                let q: Vec<u16> = (0..degree).map(|i| g[p[i] as usize]).collect();
                if elems.insert(q.clone()) {
                    if elems.len() > cap {
                        return Err(Error::OrderCapExceeded { required: elems.len(), cap });
                    }
                    queue.push_back(q);
                }
            }
        }
        let mut sorted: Vec<Vec<u16>> = elems.into_iter().collect();
        sorted.sort();
        let index: HashMap<&Vec<u16>, u16> =
            sorted.iter().enumerate().map(|(i, p)| (p, i as u16)).collect();
        let order = sorted.len();
        let mut table = vec![0u16; order * order];
        for (a, p) in sorted.iter().enumerate() {
            for (b, q) in sorted.iter().enumerate() {
                let pq: Vec<u16> = (0..degree).map(|i| p[q[i] as usize]).collect();
                table[a * order + b] = *index.get(&pq).ok_or(Error::NotASubgroup)?;
            }
        }
        FiniteGroup::derived(name, order, table)
    }

    /// Symmetric group on 3 letters.
    pub fn symmetric3() -> Arc<Self> {
        Self::from_permutations("S3", 3, &[vec![1, 0, 2], vec![1, 2, 0]], 6).expect("S3")
    }

    /// Alternating group on 4 letters.
    pub fn alternating4() -> Arc<Self> {
        Self::from_permutations("A4", 4, &[vec![1, 0, 3, 2], vec![1, 2, 0, 3]], 12).expect("A4")
    }
}

/// Direct product with projection data.
pub struct ProductGroup {
    pub group: Arc<FiniteGroup>,
    pub factors: Vec<Arc<FiniteGroup>>,
    strides: Vec<usize>,
}

impl ProductGroup {
    pub fn new(factors: &[Arc<FiniteGroup>]) -> Self {
        let mut strides = vec![0usize; factors.len()];
        let mut acc = 1usize;
        for i in (0..factors.len()).rev() {
            strides[i] = acc;
            acc *= factors[i].order();
        }
        let order = acc;
        let decode = |x: usize| -> Vec<u16> {
            factors
                .iter()
                .enumerate()
                .map(|(i, f)| ((x / strides[i]) % f.order()) as u16)
                .collect()
        };
        let mut table = vec![0u16; order * order];
        for a in 0..order {
            let ta = decode(a);
            for b in 0..order {
                let tb = decode(b);
                let mut enc = 0usize;
                for (i, f) in factors.iter().enumerate() {
                    enc += f.mul(ta[i], tb[i]) as usize * strides[i];
                }
                table[a * order + b] = enc as u16;
            }
        }
        let name = factors.iter().map(|f| f.name().to_string()).collect::<Vec<_>>().join("x");
        let group = FiniteGroup::derived(&name, order, table).expect("product table");
        ProductGroup { group, factors: factors.to_vec(), strides }
    }

    pub fn encode(&self, tuple: &[u16]) -> u16 {
        let mut enc = 0usize;
        for (i, &x) in tuple.iter().enumerate() {
            enc += x as usize * self.strides[i];
        }
        enc as u16
    }

    pub fn decode(&self, x: u16) -> Vec<u16> {
        self.factors
            .iter()
            .enumerate()
            .map(|(i, f)| ((x as usize / self.strides[i]) % f.order()) as u16)
            .collect()
    }

    pub fn projection(&self, i: usize) -> GroupHom {
        let images = (0..self.group.order() as u16).map(|x| self.decode(x)[i]).collect();
        GroupHom::unchecked(self.group.clone(), self.factors[i].clone(), images)
    }

    pub fn injection(&self, i: usize) -> GroupHom {
        let images = (0..self.factors[i].order() as u16)
            .map(|x| {
                let mut t = vec![0u16; self.factors.len()];
                t[i] = x;
                self.encode(&t)
            })
            .collect();
        GroupHom::unchecked(self.factors[i].clone(), self.group.clone(), images)
    }
}

/// A subgroup, stored as a sorted element list of its parent.
#[derive(Clone)]
pub struct Subgroup {
    pub parent: Arc<FiniteGroup>,
    pub elements: Vec<u16>,
}

impl fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subgroup(order {} of {})", self.elements.len(), self.parent.name())
    }
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.parent, &other.parent) && self.elements == other.elements
    }
}

impl Subgroup {
    pub fn trivial(parent: Arc<FiniteGroup>) -> Self {
        Subgroup { parent, elements: vec![0] }
    }

    pub fn full(parent: Arc<FiniteGroup>) -> Self {
        let elements = parent.elements().collect();
        Subgroup { parent, elements }
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, x: u16) -> bool {
        self.elements.binary_search(&x).is_ok()
    }

    pub fn is_trivial(&self) -> bool {
        self.elements.len() == 1
    }

    /// Closure check: returns true when the element set is a subgroup.
    pub fn is_subgroup_set(parent: &FiniteGroup, elements: &[u16]) -> bool {
        let set: HashSet<u16> = elements.iter().copied().collect();
        if !set.contains(&0) {
            return false;
        }
        for &a in elements {
            if !set.contains(&parent.inv(a)) {
                return false;
            }
            for &b in elements {
                if !set.contains(&parent.mul(a, b)) {
                    return false;
                }
            }
        }
        true
    }

    pub fn is_normal(&self) -> bool {
        for g in self.parent.elements() {
            for &h in &self.elements {
                if !self.contains(self.parent.conj(g, h)) {
                    return false;
                }
            }
        }
        true
    }

    pub fn intersect(&self, other: &Subgroup) -> Subgroup {
        let elements: Vec<u16> =
            self.elements.iter().copied().filter(|x| other.contains(*x)).collect();
        Subgroup { parent: self.parent.clone(), elements }
    }

    /// Smallest subgroup containing both element sets.
    pub fn join(&self, other: &Subgroup) -> Subgroup {
        let mut gens: Vec<u16> = self.elements.clone();
        gens.extend_from_slice(&other.elements);
        generated_subgroup(&self.parent, &gens).expect("join of subgroups")
    }

    /// Materialises the subgroup as a group of its own, together with the
    /// inclusion homomorphism.
    pub fn as_group(&self, name: &str) -> (Arc<FiniteGroup>, GroupHom) {
        let n = self.elements.len();
        let index: HashMap<u16, u16> =
            self.elements.iter().enumerate().map(|(i, &x)| (x, i as u16)).collect();
        let mut table = vec![0u16; n * n];
        for (a, &x) in self.elements.iter().enumerate() {
            for (b, &y) in self.elements.iter().enumerate() {
                table[a * n + b] = index[&self.parent.mul(x, y)];
            }
        }
        let group = FiniteGroup::derived(name, n, table).expect("subgroup table");
        let incl = GroupHom::unchecked(group.clone(), self.parent.clone(), self.elements.clone());
        (group, incl)
    }
}

/// Smallest subgroup of `g` containing `gens`.
pub fn generated_subgroup(g: &Arc<FiniteGroup>, gens: &[u16]) -> Result<Subgroup> {
    for &x in gens {
        if x as usize >= g.order() {
            return Err(Error::ElementOutOfRange { index: x as usize, order: g.order() });
        }
    }
    let mut seen = vec![false; g.order()];
    seen[0] = true;
    let mut queue: VecDeque<u16> = VecDeque::new();
    queue.push_back(0);
    for &x in gens {
        if !seen[x as usize] {
            seen[x as usize] = true;
            queue.push_back(x);
        }
    }
    while let Some(a) = queue.pop_front() {
        let ai = g.inv(a);
        if !seen[ai as usize] {
            seen[ai as usize] = true;
            queue.push_back(ai);
        }
        for x in 0..g.order() as u16 {
            if seen[x as usize] {
                let p = g.mul(a, x);
                if !seen[p as usize] {
                    seen[p as usize] = true;
                    queue.push_back(p);
                }
                let q = g.mul(x, a);
                if !seen[q as usize] {
                    seen[q as usize] = true;
                    queue.push_back(q);
                }
            }
        }
    }
    let elements = (0..g.order() as u16).filter(|&x| seen[x as usize]).collect();
    Ok(Subgroup { parent: g.clone(), elements })
}

/// The Huq commutator of two normal subgroups: the subgroup generated by all
/// elementwise commutators [k, l]. For normal K, L this is already normal, so
/// no closure pass beyond the subgroup closure is needed.
pub fn commutator_subgroup(g: &Arc<FiniteGroup>, k: &Subgroup, l: &Subgroup) -> Result<Subgroup> {
    if !Arc::ptr_eq(&k.parent, g) || !Arc::ptr_eq(&l.parent, g) {
        return Err(Error::NotASubgroup);
    }
    if !Subgroup::is_subgroup_set(g, &k.elements) || !Subgroup::is_subgroup_set(g, &l.elements) {
        return Err(Error::NotASubgroup);
    }
    let mut gens = Vec::new();
    for &a in &k.elements {
        for &b in &l.elements {
            let c = g.comm(a, b);
            if c != 0 {
                gens.push(c);
            }
        }
    }
    generated_subgroup(g, &gens)
}

/// A homomorphism between table groups, stored as a full image table.
#[derive(Clone)]
pub struct GroupHom {
    pub domain: Arc<FiniteGroup>,
    pub codomain: Arc<FiniteGroup>,
    pub images: Vec<u16>,
}

impl fmt::Debug for GroupHom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GroupHom({} -> {})", self.domain.name(), self.codomain.name())
    }
}

impl GroupHom {
    pub fn new(domain: Arc<FiniteGroup>, codomain: Arc<FiniteGroup>, images: Vec<u16>) -> Result<Self> {
        if images.len() != domain.order() {
            return Err(Error::Mismatch(format!(
                "image table of length {} for domain of order {}",
                images.len(),
                domain.order()
            )));
        }
        for &v in &images {
            if v as usize >= codomain.order() {
                return Err(Error::ElementOutOfRange { index: v as usize, order: codomain.order() });
            }
        }
        let h = GroupHom { domain, codomain, images };
        h.verify()?;
        Ok(h)
    }

    pub(crate) fn unchecked(domain: Arc<FiniteGroup>, codomain: Arc<FiniteGroup>, images: Vec<u16>) -> Self {
        debug_assert_eq!(images.len(), domain.order());
        GroupHom { domain, codomain, images }
    }

    fn verify(&self) -> Result<()> {
        if self.images[0] != 0 {
            return Err(Error::NotAHomomorphism { a: 0, b: 0 });
        }
        for a in 0..self.domain.order() as u16 {
            for b in 0..self.domain.order() as u16 {
                let lhs = self.images[self.domain.mul(a, b) as usize];
                let rhs = self.codomain.mul(self.images[a as usize], self.images[b as usize]);
                if lhs != rhs {
                    return Err(Error::NotAHomomorphism { a: a as usize, b: b as usize });
                }
            }
        }
        Ok(())
    }

    pub fn identity(g: Arc<FiniteGroup>) -> Self {
        let images = g.elements().collect();
        GroupHom::unchecked(g.clone(), g, images)
    }

    pub fn zero(domain: Arc<FiniteGroup>, codomain: Arc<FiniteGroup>) -> Self {
        let images = vec![0u16; domain.order()];
        GroupHom::unchecked(domain, codomain, images)
    }

    #[inline]
    pub fn apply(&self, x: u16) -> u16 {
        self.images[x as usize]
    }

    /// self followed by g.
    pub fn then(&self, g: &GroupHom) -> GroupHom {
        debug_assert_eq!(self.codomain.order(), g.domain.order());
        let images = self.images.iter().map(|&x| g.apply(x)).collect();
        GroupHom::unchecked(self.domain.clone(), g.codomain.clone(), images)
    }

    pub fn kernel(&self) -> Subgroup {
        let elements = (0..self.domain.order() as u16).filter(|&x| self.apply(x) == 0).collect();
        Subgroup { parent: self.domain.clone(), elements }
    }

    pub fn image(&self) -> Subgroup {
        let mut elements: Vec<u16> = self.images.clone();
        elements.sort_unstable();
        elements.dedup();
        Subgroup { parent: self.codomain.clone(), elements }
    }

    pub fn is_surjective(&self) -> bool {
        self.image().order() == self.codomain.order()
    }

    pub fn is_injective(&self) -> bool {
        self.kernel().is_trivial()
    }

    pub fn is_iso(&self) -> bool {
        self.domain.order() == self.codomain.order() && self.is_injective() && self.is_surjective()
    }

    /// Pointwise product of two homs into an abelian codomain
    /// (or any situation where the images commute).
    pub fn pointwise_mul(&self, other: &GroupHom) -> GroupHom {
        debug_assert_eq!(self.domain.order(), other.domain.order());
        debug_assert_eq!(self.codomain.order(), other.codomain.order());
        let images = (0..self.domain.order())
            .map(|x| self.codomain.mul(self.images[x], other.images[x]))
            .collect();
        GroupHom::unchecked(self.domain.clone(), self.codomain.clone(), images)
    }

    pub fn pointwise_inv(&self) -> GroupHom {
        let images = self.images.iter().map(|&x| self.codomain.inv(x)).collect();
        GroupHom::unchecked(self.domain.clone(), self.codomain.clone(), images)
    }
}

/// Coset group G/N with the canonical surjection. Cosets are ordered by their
/// minimal element, so the identity coset is index 0.
pub fn quotient(g: &Arc<FiniteGroup>, n: &Subgroup) -> Result<(Arc<FiniteGroup>, GroupHom)> {
    if !Arc::ptr_eq(&n.parent, g) || !Subgroup::is_subgroup_set(g, &n.elements) {
        return Err(Error::NotASubgroup);
    }
    for x in g.elements() {
        for &h in &n.elements {
            let c = g.conj(x, h);
            if !n.contains(c) {
                return Err(Error::NotNormal { g: x as usize, h: h as usize });
            }
        }
    }
    let order = g.order();
    let mut coset_of = vec![u16::MAX; order];
    let mut reps: Vec<u16> = Vec::new();
    for x in 0..order as u16 {
        if coset_of[x as usize] == u16::MAX {
            let c = reps.len() as u16;
            reps.push(x);
            for &h in &n.elements {
                coset_of[g.mul(x, h) as usize] = c;
            }
        }
    }
    let m = reps.len();
    let mut table = vec![0u16; m * m];
    for (a, &ra) in reps.iter().enumerate() {
        for (b, &rb) in reps.iter().enumerate() {
            table[a * m + b] = coset_of[g.mul(ra, rb) as usize];
        }
    }
    let q = FiniteGroup::derived(&format!("{}/N{}", g.name(), n.order()), m, table)?;
    let proj = GroupHom::unchecked(g.clone(), q, coset_of);
    Ok((proj.codomain.clone(), proj))
}

/// The quotient by the derived subgroup, with the unit of the
/// abelianisation adjunction.
pub fn abelianize(g: &Arc<FiniteGroup>) -> (Arc<FiniteGroup>, GroupHom) {
    let derived = commutator_subgroup(g, &Subgroup::full(g.clone()), &Subgroup::full(g.clone()))
        .expect("full subgroups");
    let (ab, eta) = quotient(g, &derived).expect("derived subgroup is normal");
    (ab, eta)
}

/// Greedy generating sequence: repeatedly adds the smallest element outside
/// the closure so far.
pub fn generating_sequence(g: &Arc<FiniteGroup>) -> Vec<u16> {
    let mut gens = Vec::new();
    let mut closure = generated_subgroup(g, &[]).expect("trivial");
    while closure.order() < g.order() {
        let next = g.elements().find(|x| !closure.contains(*x)).expect("proper subgroup");
        gens.push(next);
        let mut with = closure.elements.clone();
        with.push(next);
        closure = generated_subgroup(g, &with).expect("closure");
    }
    gens
}

/// Backtracking isomorphism search `g -> h`, restricted by an `allowed`
/// predicate on (domain element, candidate image) pairs. Partial assignments
/// are closed under products and pruned on conflicts, element orders and the
/// predicate.
pub fn find_isomorphism_filtered(
    g: &Arc<FiniteGroup>,
    h: &Arc<FiniteGroup>,
    allowed: &dyn Fn(u16, u16) -> bool,
) -> Option<GroupHom> {
    if g.order() != h.order() {
        return None;
    }
    let gens = generating_sequence(g);
    let mut map: Vec<Option<u16>> = vec![None; g.order()];
    map[0] = Some(0);
    if !allowed(0, 0) {
        return None;
    }
    fn close(
        g: &FiniteGroup,
        h: &FiniteGroup,
        map: &mut Vec<Option<u16>>,
        known: &mut Vec<u16>,
        allowed: &dyn Fn(u16, u16) -> bool,
    ) -> bool {
        // Closes the known set under products; `known` lists elements with
        // assigned images. Returns false on contradiction.
        let mut i = 0;
        while i < known.len() {
            let a = known[i];
            let fa = map[a as usize].unwrap();
            let mut j = 0;
            while j <= i {
                let b = known[j];
                let fb = map[b as usize].unwrap();
                for (x, y) in [(g.mul(a, b), h.mul(fa, fb)), (g.mul(b, a), h.mul(fb, fa))] {
                    match map[x as usize] {
                        Some(v) if v != y => return false,
                        Some(_) => {}
                        None => {
                            if !allowed(x, y) || g.element_order(x) != h.element_order(y) {
                                return false;
                            }
                            map[x as usize] = Some(y);
                            known.push(x);
                        }
                    }
                }
                j += 1;
            }
            i += 1;
        }
        // injectivity of the partial map
        let mut seen = vec![false; h.order()];
        for &a in known.iter() {
            let v = map[a as usize].unwrap();
            if seen[v as usize] {
                return false;
            }
            seen[v as usize] = true;
        }
        true
    }
    fn assign(
        g: &Arc<FiniteGroup>,
        h: &Arc<FiniteGroup>,
        gens: &[u16],
        pos: usize,
        map: &mut Vec<Option<u16>>,
        known: &mut Vec<u16>,
        allowed: &dyn Fn(u16, u16) -> bool,
    ) -> bool {
        if pos == gens.len() {
            return known.len() == g.order();
        }
        let target = gens[pos];
        if let Some(_v) = map[target as usize] {
            // already forced by closure
            return assign(g, h, gens, pos + 1, map, known, allowed);
        }
        let ord = g.element_order(target);
        for cand in h.elements() {
            if h.element_order(cand) != ord || !allowed(target, cand) {
                continue;
            }
            let save_map = map.clone();
            let save_known = known.clone();
            map[target as usize] = Some(cand);
            known.push(target);
            if close(g, h, map, known, allowed) && assign(g, h, gens, pos + 1, map, known, allowed) {
                return true;
            }
            *map = save_map;
            *known = save_known;
        }
        false
    }
    let mut known = vec![0u16];
    if !close(g, h, &mut map, &mut known, allowed) {
        return None;
    }
    if assign(g, h, &gens, 0, &mut map, &mut known, allowed) {
        let images = map.into_iter().map(|v| v.expect("total map")).collect();
        let hom = GroupHom::unchecked(g.clone(), h.clone(), images);
        debug_assert!(hom.verify().is_ok());
        Some(hom)
    } else {
        None
    }
}

pub fn find_isomorphism(g: &Arc<FiniteGroup>, h: &Arc<FiniteGroup>) -> Option<GroupHom> {
    find_isomorphism_filtered(g, h, &|_, _| true)
}

/// All subgroups of a small group, by closure-BFS over one-element extensions.
pub fn all_subgroups(g: &Arc<FiniteGroup>) -> Vec<Subgroup> {
    let mut seen: HashSet<Vec<u16>> = HashSet::new();
    let mut out = Vec::new();
    let mut queue: VecDeque<Vec<u16>> = VecDeque::new();
    let triv = vec![0u16];
    seen.insert(triv.clone());
    queue.push_back(triv);
    while let Some(elems) = queue.pop_front() {
        out.push(Subgroup { parent: g.clone(), elements: elems.clone() });
        for x in g.elements() {
            if elems.binary_search(&x).is_err() {
                let mut gens = elems.clone();
                gens.push(x);
                let sub = generated_subgroup(g, &gens).expect("closure");
                if seen.insert(sub.elements.clone()) {
                    queue.push_back(sub.elements);
                }
            }
        }
    }
    out
}

pub fn normal_subgroups(g: &Arc<FiniteGroup>) -> Vec<Subgroup> {
    all_subgroups(g).into_iter().filter(|s| s.is_normal()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_tables_are_groups() {
        for n in 1..=8 {
            let g = FiniteGroup::cyclic(n);
            assert!(g.check_associativity().is_ok());
            assert_eq!(g.order(), n);
            assert_eq!(g.element_order(if n > 1 { 1 } else { 0 }), n);
        }
    }

    #[test]
    fn named_groups_are_groups() {
        for g in [FiniteGroup::dihedral(4), FiniteGroup::quaternion8(), FiniteGroup::symmetric3(), FiniteGroup::alternating4()] {
            assert!(g.check_associativity().is_ok());
        }
        assert_eq!(FiniteGroup::symmetric3().order(), 6);
        assert_eq!(FiniteGroup::alternating4().order(), 12);
        assert!(!FiniteGroup::dihedral(4).is_abelian());
    }

    #[test]
    fn generated_subgroup_examples() {
        let d4 = FiniteGroup::dihedral(4);
        // empty generating set
        assert_eq!(generated_subgroup(&d4, &[]).unwrap().elements, vec![0]);
        // the rotation r (index 1) generates C4
        let c4 = generated_subgroup(&d4, &[1]).unwrap();
        assert_eq!(c4.elements, vec![0, 1, 2, 3]);
        // full set closes to the whole group
        let c4g = FiniteGroup::cyclic(4);
        let all: Vec<u16> = c4g.elements().collect();
        assert_eq!(generated_subgroup(&c4g, &all).unwrap().order(), 4);
        // out of range
        assert!(generated_subgroup(&c4g, &[9]).is_err());
    }

    #[test]
    fn commutator_subgroup_examples() {
        let q8 = FiniteGroup::quaternion8();
        let full = Subgroup::full(q8.clone());
        let triv = Subgroup::trivial(q8.clone());
        assert_eq!(commutator_subgroup(&q8, &full, &triv).unwrap().order(), 1);
        // [Q8, Q8] = {1, -1}
        let der = commutator_subgroup(&q8, &full, &full).unwrap();
        assert_eq!(der.elements, vec![0, 1]);
        assert_eq!(der.order(), 2);
        // abelian group has trivial derived subgroup
        let v4 = ProductGroup::new(&[FiniteGroup::cyclic(2), FiniteGroup::cyclic(2)]).group;
        let derv = commutator_subgroup(&v4, &Subgroup::full(v4.clone()), &Subgroup::full(v4.clone())).unwrap();
        assert!(derv.is_trivial());
    }

    #[test]
    fn commutator_symmetry_and_containment() {
        for g in [FiniteGroup::dihedral(4), FiniteGroup::quaternion8(), FiniteGroup::symmetric3(), FiniteGroup::alternating4()] {
            let normals = normal_subgroups(&g);
            for k in &normals {
                for l in &normals {
                    let kl = commutator_subgroup(&g, k, l).unwrap();
                    let lk = commutator_subgroup(&g, l, k).unwrap();
                    assert_eq!(kl.elements, lk.elements);
                    assert!(kl.is_normal());
                    // [K, L] <= K /\ L
                    let meet = k.intersect(l);
                    assert!(kl.elements.iter().all(|x| meet.contains(*x)));
                }
            }
        }
    }

    #[test]
    fn abelianize_examples() {
        let c6 = FiniteGroup::cyclic(6);
        let (ab, eta) = abelianize(&c6);
        assert_eq!(ab.order(), 6);
        assert!(eta.is_iso());

        let d4 = FiniteGroup::dihedral(4);
        let (ab, eta) = abelianize(&d4);
        assert_eq!(ab.order(), 4);
        // ab D4 = C2 x C2: exponent 2
        assert!(ab.elements().all(|x| ab.mul(x, x) == 0));
        // eta composed with the inclusion of [G,G] is constant at the identity
        let der = eta.kernel();
        assert_eq!(der.elements, vec![0, 2]); // <r^2>
        for &x in &der.elements {
            assert_eq!(eta.apply(x), 0);
        }

        let q8 = FiniteGroup::quaternion8();
        let (ab, _) = abelianize(&q8);
        assert_eq!(ab.order(), 4);
        assert!(ab.elements().all(|x| ab.mul(x, x) == 0));
    }

    #[test]
    fn quotient_examples() {
        let c4 = FiniteGroup::cyclic(4);
        let triv = Subgroup::trivial(c4.clone());
        let (q, pi) = quotient(&c4, &triv).unwrap();
        assert_eq!(q.order(), 4);
        assert!(pi.is_iso());

        let two = generated_subgroup(&c4, &[2]).unwrap();
        let (q, pi) = quotient(&c4, &two).unwrap();
        assert_eq!(q.order(), 2);
        assert_eq!(pi.kernel().elements, vec![0, 2]);

        let d4 = FiniteGroup::dihedral(4);
        let r2 = generated_subgroup(&d4, &[2]).unwrap();
        let (q, _) = quotient(&d4, &r2).unwrap();
        assert_eq!(q.order(), 4);
        assert!(q.is_abelian());

        // non-normal subgroup is rejected: <s> in D4
        let s = generated_subgroup(&d4, &[4]).unwrap();
        assert!(quotient(&d4, &s).is_err());
    }

    #[test]
    fn kernel_image_iso_examples() {
        let c4 = FiniteGroup::cyclic(4);
        let c2 = FiniteGroup::cyclic(2);
        let id = GroupHom::identity(c4.clone());
        assert!(id.kernel().is_trivial());
        assert_eq!(id.image().order(), 4);
        assert!(id.is_iso());

        let red = GroupHom::new(c4.clone(), c2.clone(), vec![0, 1, 0, 1]).unwrap();
        assert_eq!(red.kernel().elements, vec![0, 2]);
        assert!(red.is_surjective());

        let emb = GroupHom::new(c2.clone(), c4.clone(), vec![0, 2]).unwrap();
        assert!(emb.kernel().is_trivial());
        assert_eq!(emb.image().elements, vec![0, 2]);
        assert!(!emb.is_iso());

        // a non-homomorphism is rejected
        assert!(GroupHom::new(c4.clone(), c2.clone(), vec![0, 1, 1, 0]).is_err());
    }

    #[test]
    fn first_isomorphism_theorem_small() {
        let d4 = FiniteGroup::dihedral(4);
        let c2 = FiniteGroup::cyclic(2);
        // D4 -> C2 killing r
        let h = GroupHom::new(d4.clone(), c2.clone(), vec![0, 0, 0, 0, 1, 1, 1, 1]).unwrap();
        let (q, _) = quotient(&d4, &h.kernel()).unwrap();
        let (img, _) = h.image().as_group("img");
        assert!(find_isomorphism(&q, &img).is_some());
    }

    #[test]
    fn permutation_closure_and_cap() {
        let s3 = FiniteGroup::from_permutations("S3", 3, &[vec![1, 0, 2], vec![0, 2, 1]], 512).unwrap();
        assert_eq!(s3.order(), 6);
        // two generators of S8 blow past a cap of 512 quickly
        let g = FiniteGroup::from_permutations(
            "S8",
            8,
            &[vec![1, 0, 2, 3, 4, 5, 6, 7], vec![1, 2, 3, 4, 5, 6, 7, 0]],
            512,
        );
        assert!(matches!(g, Err(Error::OrderCapExceeded { .. })));
    }

    #[test]
    fn iso_search_respects_filters() {
        let c4 = FiniteGroup::cyclic(4);
        let v4 = ProductGroup::new(&[FiniteGroup::cyclic(2), FiniteGroup::cyclic(2)]).group;
        assert!(find_isomorphism(&c4, &v4).is_none());
        let c4b = FiniteGroup::cyclic(4);
        let iso = find_isomorphism(&c4, &c4b).unwrap();
        assert!(iso.is_iso());
        // force 1 -> 3 (the other generator)
        let iso2 = find_isomorphism_filtered(&c4, &c4b, &|x, y| x != 1 || y == 3).unwrap();
        assert_eq!(iso2.apply(1), 3);
    }

    #[test]
    fn subgroup_lattice_of_d4() {
        let d4 = FiniteGroup::dihedral(4);
        let subs = all_subgroups(&d4);
        assert_eq!(subs.len(), 10);
        let normals = normal_subgroups(&d4);
        assert_eq!(normals.len(), 6);
    }
}
