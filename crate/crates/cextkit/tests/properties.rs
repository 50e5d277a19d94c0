//! Property tests for the algebraic invariants that want randomised inputs.

use cextkit::caps::Caps;
use cextkit::group::{self, FiniteGroup, GroupHom};
use cextkit::io::{self, DiagramFile};
use cextkit::linalg::{smith_normal_form, IntMatrix};
use proptest::prelude::*;

fn small_matrix() -> impl Strategy<Value = IntMatrix> {
    (1usize..=4, 1usize..=4).prop_flat_map(|(r, c)| {
        proptest::collection::vec(-8i128..=8, r * c).prop_map(move |data| {
            let mut m = IntMatrix::zeros(r, c).unwrap();
            for i in 0..r {
                for j in 0..c {
                    m.set(i, j, data[i * c + j]);
                }
            }
            m
        })
    })
}

/// A random unimodular matrix as a short product of elementary operations.
fn unimodular(n: usize) -> impl Strategy<Value = Vec<(usize, usize, i128)>> {
    proptest::collection::vec((0..n, 0..n, -3i128..=3), 0..6)
        .prop_map(|ops| ops.into_iter().filter(|(a, b, _)| a != b).collect())
}

fn apply_left(m: &IntMatrix, ops: &[(usize, usize, i128)]) -> IntMatrix {
    let n = m.rows;
    let mut u = IntMatrix::identity(n).unwrap();
    for &(a, b, q) in ops {
        // row a += q * row b
        for j in 0..n {
            u.set(a, j, u.get(a, j) + q * u.get(b, j));
        }
    }
    u.mul(m).unwrap()
}

fn apply_right(m: &IntMatrix, ops: &[(usize, usize, i128)]) -> IntMatrix {
    let n = m.cols;
    let mut v = IntMatrix::identity(n).unwrap();
    for &(a, b, q) in ops {
        for j in 0..n {
            v.set(j, a, v.get(j, a) + q * v.get(j, b));
        }
    }
    m.mul(&v).unwrap()
}

fn diag_of(m: &IntMatrix) -> Vec<i128> {
    let (_, d, _) = smith_normal_form(m).unwrap();
    (0..d.rows.min(d.cols)).map(|i| d.get(i, i)).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn snf_invariant_under_unimodular_transforms(m in small_matrix(), lhs in unimodular(4), rhs in unimodular(4)) {
        let lhs: Vec<_> = lhs.into_iter().filter(|&(a, b, _)| a < m.rows && b < m.rows).collect();
        let rhs: Vec<_> = rhs.into_iter().filter(|&(a, b, _)| a < m.cols && b < m.cols).collect();
        let transformed = apply_right(&apply_left(&m, &lhs), &rhs);
        prop_assert_eq!(diag_of(&m), diag_of(&transformed));
    }

    #[test]
    fn snf_factorisation_holds(m in small_matrix()) {
        let (u, d, v) = smith_normal_form(&m).unwrap();
        prop_assert!(d.is_diagonal());
        prop_assert_eq!(u.mul(&m).unwrap().mul(&v).unwrap(), d);
    }

    #[test]
    fn diagram_files_round_trip(order in 2usize..=8) {
        // quotients of a cyclic group by each subgroup
        let g = FiniteGroup::cyclic(order);
        for n in group::normal_subgroups(&g) {
            let (_, pi) = group::quotient(&g, &n).unwrap();
            let cube = cextkit::cubic::CubicExtensionDiagram::from_hom(pi).unwrap();
            let file = DiagramFile::from_cubic(&cube);
            let text = io::to_canonical_json(&file).unwrap();
            let parsed: DiagramFile = io::parse_json(&text).unwrap();
            prop_assert_eq!(&file, &parsed);
            prop_assert_eq!(io::to_canonical_json(&parsed).unwrap(), text);
        }
    }

    #[test]
    fn quotient_of_product_restricts_to_factor(a in 2usize..=4, b in 2usize..=4) {
        // first isomorphism theorem on projections of direct products
        let ga = FiniteGroup::cyclic(a);
        let gb = FiniteGroup::cyclic(b);
        let p = group::ProductGroup::new(&[ga.clone(), gb.clone()]);
        let pr: GroupHom = p.projection(0);
        let (q, _) = group::quotient(&p.group, &pr.kernel()).unwrap();
        prop_assert!(group::find_isomorphism(&q, &ga).is_some());
    }
}

#[test]
fn diamond_spaces_are_subgroups_of_the_power() {
    // the diamond space is closed under the pointwise
    // operations of the top object (exhaustive on a small sweep)
    let caps = Caps::default();
    for cube in cextkit::corpus::two_cubic_extensions().unwrap() {
        if cube.top().order() > 4 {
            continue;
        }
        let d = cextkit::centrality::diamond_space(&cube, &caps).unwrap();
        for x in d.tuples.iter() {
            for y in d.tuples.iter() {
                assert!(d.index_of(&d.mul(x, y)).is_some());
            }
            assert!(d.index_of(&d.inv(x)).is_some());
        }
    }
}
