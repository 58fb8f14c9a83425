use std::collections::HashMap;
use std::sync::Arc;

use proptest::prelude::*;

use finconv::builders::{from_graph, GraphData};
use finconv::cells::{build_presentation, CellSpec};
use finconv::cofibration::{factorize, interchange, is_cofibration, retract_problem};
use finconv::compactness::{
    adherence, finite_subcover, interior, is_compact, is_covering_system, is_covering_system_raw, restrict_covering_system,
    CoveringSystem,
};
use finconv::constructions::subspace;
use finconv::homotopy::{homotopy_classes, interval_space, move_components, one_step_raw};
use finconv::invariants::{pi0, winding_oracle};
use finconv::search::{hom_set, is_isomorphic, MapSearch};
use finconv::union_find::UnionFind;
use finconv::{PointSet, Space, SpaceMap, Subset};

fn space_from_masks(masks: &[u64]) -> Space {
    let n = masks.len();
    let limits = masks
        .iter()
        .enumerate()
        .map(|(y, &m)| {
            let mut s = Subset::from_mask(n, m & ((1 << n) - 1));
            s.insert(y);
            s
        })
        .collect();
    Space::new(PointSet::numbered(n), limits).unwrap()
}

fn arb_space(max: usize) -> impl Strategy<Value = Arc<Space>> {
    (1..=max).prop_flat_map(|n| prop::collection::vec(any::<u64>(), n)).prop_map(|m| Arc::new(space_from_masks(&m)))
}

fn arb_space_with_set(max: usize) -> impl Strategy<Value = (Arc<Space>, Subset)> {
    arb_space(max).prop_flat_map(|s| {
        let n = s.len();
        (Just(s), any::<u64>().prop_map(move |m| Subset::from_mask(n, m & ((1 << n) - 1))))
    })
}

fn cycle(k: usize) -> Arc<Space> {
    Arc::new(from_graph(&GraphData::cycle(k)))
}

/// A closed walk in `C_k` from 0, one of stay / forward / back per step.
fn arb_loop() -> impl Strategy<Value = (usize, Vec<usize>)> {
    (5usize..=6, prop::collection::vec(0usize..3, 1..=8)).prop_map(|(k, steps)| {
        let mut walk = vec![0];
        for s in steps {
            let last = *walk.last().unwrap();
            walk.push(match s {
                0 => last,
                1 => (last + 1) % k,
                _ => (last + k - 1) % k,
            });
        }
        (k, walk)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn interior_is_dual_to_adherence((s, u) in arb_space_with_set(6)) {
        let dual = adherence(&s, &u.complement()).complement();
        prop_assert_eq!(interior(&s, std::slice::from_ref(&u)), dual);
    }

    #[test]
    fn covering_reduction_matches_raw(s in arb_space(5), masks in prop::collection::vec(any::<u64>(), 1..4), scope in any::<u64>()) {
        let n = s.len();
        let sets = masks.iter().map(|&m| Subset::from_mask(n, m & ((1 << n) - 1))).collect();
        let cs = CoveringSystem { sets, scope: Subset::from_mask(n, scope & ((1 << n) - 1)) };
        let fast = is_covering_system(&s, &cs).holds;
        prop_assert_eq!(fast, is_covering_system_raw(&s, &cs));
        if fast {
            let sub = finite_subcover(&s, &cs).unwrap();
            let sub = CoveringSystem { sets: sub.sets, scope: cs.scope.clone() };
            prop_assert!(is_covering_system_raw(&s, &sub));
        }
    }

    #[test]
    fn winding_is_invariant_under_one_step((k, walk) in arb_loop(), v in 0usize..9, c in 0usize..6) {
        let l = walk.len() - 1;
        let closed = walk[l] == 0;
        let c5 = cycle(k);
        let iv = interval_space(l);
        let f = SpaceMap::new(iv.clone(), c5.clone(), walk.clone()).unwrap();
        prop_assert_eq!(winding_oracle(&f).is_ok(), closed);
        let v = v % (l + 1);
        let mut g = walk.clone();
        g[v] = c % k;
        if closed && g[0] == 0 && g[l] == 0 && one_step_raw(&iv, &c5, &walk, &g) {
            let g = SpaceMap::new(iv, c5, g).unwrap();
            prop_assert_eq!(winding_oracle(&f).unwrap(), winding_oracle(&g).unwrap());
        }
    }

    #[test]
    fn single_point_moves_generate_one_step_classes(x in arb_space(3), y in arb_space(3)) {
        let maps = hom_set(&x, &y, u128::MAX).unwrap();
        let index: HashMap<Vec<usize>, usize> = maps.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
        let fast = move_components(&y, &maps, &index);
        let mut uf = UnionFind::new(maps.len());
        for i in 0..maps.len() {
            for j in 0..maps.len() {
                if one_step_raw(&x, &y, &maps[i], &maps[j]) {
                    uf.union(i, j);
                }
            }
        }
        prop_assert_eq!(fast, uf.class_map());
    }

    #[test]
    fn components_are_classes_of_points(x in arb_space(6)) {
        let pt = Arc::new(Space::point());
        prop_assert_eq!(pi0(&x).len(), homotopy_classes(&pt, &x).unwrap().len());
    }

    #[test]
    fn compactness_passes_to_images_and_closed_subspaces((x, u) in arb_space_with_set(5), y in arb_space(3), pick in any::<u64>()) {
        prop_assert!(is_compact(&x));
        let maps = hom_set(&x, &y, u128::MAX).unwrap();
        let f = SpaceMap::new(x.clone(), y.clone(), maps[(pick as usize) % maps.len()].clone()).unwrap();
        let image = f.image(&Subset::full(x.len()));
        prop_assert!(is_compact(&subspace(&y, &image).unwrap().0));
        let closed = adherence(&x, &u);
        let (sub, cs) = restrict_covering_system(&x, &CoveringSystem::new(x.len(), vec![Subset::full(x.len())]), &closed).unwrap();
        prop_assert!(is_compact(&sub));
        prop_assert!(is_covering_system_raw(&sub, &cs));
        prop_assert!(finite_subcover(&sub, &cs).is_ok());
    }

    #[test]
    fn attachment_order_is_irrelevant(a in 0usize..3, b in 0usize..3, la in 1usize..=3, lb in 1usize..=3) {
        let base = Arc::new(from_graph(&GraphData::path(2)));
        let loop_at = |stage: &Space, p: usize, q: usize, length: usize| CellSpec {
            dim: 1,
            length,
            attaching: [p, q].iter().map(|&k| stage.points().require(base.label(k)).unwrap()).collect(),
        };
        let (u, v) = (a, (a + 1) % 3);
        let one = build_presentation(&base, &[loop_at(&base, u, v, la)]).unwrap();
        let p = build_presentation(&base, &[loop_at(&base, u, v, la), loop_at(one.result(), b, b, lb)]).unwrap();
        let two = build_presentation(&base, &[loop_at(&base, b, b, lb)]).unwrap();
        let q = build_presentation(&base, &[loop_at(&base, b, b, lb), loop_at(two.result(), u, v, la)]).unwrap();
        prop_assert!(is_isomorphic(p.result(), q.result()));
    }

    #[test]
    fn retract_search_is_sound_and_complete((x, a) in arb_space_with_set(3)) {
        let (_, i) = subspace(&x, &a).unwrap();
        let verdict = is_cofibration(&i, 1).unwrap();
        let (_, _, po, j0) = retract_problem(&i, 1).unwrap();
        let id = SpaceMap::identity(po.apex.clone());
        if let Some(r) = &verdict.solution {
            prop_assert!(r.is_continuous());
            prop_assert_eq!(&j0.then(r).unwrap(), &id);
        }
        let exists = hom_set(j0.codomain(), &po.apex, u128::MAX)
            .unwrap()
            .into_iter()
            .any(|r| (0..po.apex.len()).all(|p| r[j0.apply(p)] == p));
        prop_assert_eq!(exists, verdict.is_cofibration());
    }

    #[test]
    fn interchange_identities(x in arb_space(3), n in 1usize..=2) {
        let r = interchange(&x, n).unwrap().check().unwrap();
        prop_assert!(r.holds(), "{:?}", r);
    }

    #[test]
    fn factorization_commutes(x in arb_space(3), y in arb_space(3), pick in any::<u64>(), n in 1usize..=2) {
        let maps = hom_set(&x, &y, u128::MAX).unwrap();
        let f = SpaceMap::new(x.clone(), y.clone(), maps[(pick as usize) % maps.len()].clone()).unwrap();
        let fac = factorize(&f, n).unwrap();
        prop_assert_eq!(fac.i.then(&fac.g).unwrap(), f);
        prop_assert!(fac.i.is_continuous() && fac.g.is_continuous());
        prop_assert_eq!(fac.j.then(&fac.g).unwrap(), SpaceMap::identity(y.clone()));
    }

    #[test]
    fn cofibrations_compose((z, b) in arb_space_with_set(4), mask in any::<u64>()) {
        let (y, j) = subspace(&z, &b).unwrap();
        let a = Subset::from_mask(y.len(), mask & ((1 << y.len()) - 1));
        let (_, i) = subspace(&y, &a).unwrap();
        if is_cofibration(&i, 1).unwrap().is_cofibration() && is_cofibration(&j, 1).unwrap().is_cofibration() {
            prop_assert!(is_cofibration(&i.then(&j).unwrap(), 1).unwrap().is_cofibration());
        }
    }
}

#[test]
fn retract_search_agrees_with_enumeration_on_small_inclusions() {
    let mut seen = 0;
    for n in 1..=3 {
        for x in finconv::search::spaces_up_to_iso(n) {
            let x = Arc::new(x);
            for mask in 0..(1u64 << n) {
                let (_, i) = subspace(&x, &Subset::from_mask(n, mask)).unwrap();
                let (_, _, po, j0) = retract_problem(&i, 1).unwrap();
                let mut search = MapSearch::new(j0.codomain(), &po.apex);
                for p in 0..po.apex.len() {
                    search.fix(j0.apply(p), p);
                }
                assert_eq!(search.first().unwrap().is_some(), is_cofibration(&i, 1).unwrap().is_cofibration());
                seen += 1;
            }
        }
    }
    assert_eq!(seen, 2 + 3 * 4 + 16 * 8);
}
