//! Property tests: permutation algebra, closure, quotients and the graph
//! criterion against a Cayley-graph oracle.

use std::collections::VecDeque;

use proptest::prelude::*;
use wreathlab::expr::parse_group;
use wreathlab::group::closure;
use wreathlab::hom::verify_homomorphism;
use wreathlab::subgroup::{normal_closure, quotient_group};
use wreathlab::{FiniteGroup, Limits, Perm};

const GROUPS: &[&str] = &[
    "C2",
    "C3",
    "C4",
    "C6",
    "C2 * C2",
    "S3",
    "D4",
    "Q8",
    "D5",
    "A4",
    "wr(C3,C2)",
    "C2 * S3",
];

fn perm(n: usize) -> impl Strategy<Value = Perm> {
    Just((0..n).collect::<Vec<usize>>())
        .prop_shuffle()
        .prop_map(|v| Perm::from_images(&v).unwrap())
}

fn group(i: usize) -> FiniteGroup {
    parse_group(GROUPS[i % GROUPS.len()], &Limits::default()).unwrap()
}

/// Extends generator images along right multiplication; a conflict means
/// the assignment is not a homomorphism.
fn oracle_is_hom(g: &FiniteGroup, target: &FiniteGroup, images: &[Perm]) -> bool {
    let mut image: Vec<Option<Perm>> = vec![None; g.order()];
    let id = g.index_of(&g.identity()).unwrap();
    image[id] = Some(target.identity());
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        let (px, fx) = (g.element(x), image[x].clone().unwrap());
        for (s, t) in g.generators().iter().zip(images) {
            let y = g.index_of(&px.mul(s)).unwrap();
            let fy = fx.mul(t);
            match &image[y] {
                Some(old) if *old != fy => return false,
                Some(_) => {}
                None => {
                    image[y] = Some(fy);
                    queue.push_back(y);
                }
            }
        }
    }
    true
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn composition_is_associative(a in perm(7), b in perm(7), c in perm(7)) {
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
    }

    #[test]
    fn composition_applies_left_factor_first(a in perm(6), b in perm(6), x in 0usize..6) {
        prop_assert_eq!(a.mul(&b).apply(x), b.apply(a.apply(x)));
    }

    #[test]
    fn inverse_and_powers(a in perm(8), k in 0i64..20) {
        prop_assert!(a.mul(&a.inverse()).is_identity());
        prop_assert!(a.pow(a.order() as i64).is_identity());
        prop_assert_eq!(a.pow(k).mul(&a.pow(-k)), Perm::identity(8));
    }

    #[test]
    fn closure_is_idempotent(gens in prop::collection::vec(perm(6), 1..3), pick in any::<prop::sample::Index>()) {
        let limits = Limits::default();
        let g = FiniteGroup::generate(6, gens.clone(), "G").unwrap();
        let extra = g.element(pick.index(g.order()));
        let mut more = gens;
        more.push(extra);
        let h = FiniteGroup::generate(6, more, "H").unwrap();
        prop_assert!(g.same_elements(&h));
        let all: Vec<Perm> = (0..g.order()).map(|i| g.element(i)).collect();
        prop_assert_eq!(closure(6, &all, &limits).unwrap().len(), g.order());
    }

    #[test]
    fn quotient_projection_is_multiplicative(
        i in 0usize..GROUPS.len(),
        n in any::<prop::sample::Index>(),
        x in any::<prop::sample::Index>(),
        y in any::<prop::sample::Index>(),
    ) {
        let limits = Limits::default();
        let g = group(i);
        let normal = normal_closure(&g, &[g.element(n.index(g.order()))], &limits).unwrap();
        let q = quotient_group(&g, &normal, &limits).unwrap();
        prop_assert_eq!(q.quotient().order() * normal.order(), g.order());
        let (px, py) = (g.element(x.index(g.order())), g.element(y.index(g.order())));
        let lhs = q.image_of(&px.mul(&py)).unwrap();
        let rhs = q.image_of(&px).unwrap().mul(&q.image_of(&py).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn graph_criterion_matches_oracle(
        i in 0usize..GROUPS.len(),
        j in 0usize..GROUPS.len(),
        picks in prop::collection::vec(any::<prop::sample::Index>(), 4),
    ) {
        let (g, t) = (group(i), group(j));
        let images: Vec<Perm> = (0..g.generators().len())
            .map(|k| t.element(picks[k % picks.len()].index(t.order())))
            .collect();
        let h = verify_homomorphism(&g, &t, images.clone(), &Limits::default()).unwrap();
        prop_assert_eq!(h.is_verified(), oracle_is_hom(&g, &t, &images));
        if h.is_verified() {
            for a in 0..g.order().min(12) {
                for b in 0..g.order().min(12) {
                    let (pa, pb) = (g.element(a), g.element(b));
                    prop_assert_eq!(
                        h.apply(&pa.mul(&pb)).unwrap(),
                        h.apply(&pa).unwrap().mul(&h.apply(&pb).unwrap())
                    );
                }
            }
        }
    }
}
