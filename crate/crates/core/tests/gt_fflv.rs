mod common;

use std::collections::BTreeSet;

use common::{weyl_dim_a, weyl_dim_c2};

use polymut::lie::{
    fflv_a, fflv_c, gt_marked_poset, gt_polytope_a, gt_polytope_c, LieType, Weight,
};
use polymut::{IntVector, RatVector};

fn w(v: &[i64]) -> Weight {
    Weight(v.to_vec())
}

fn iv(v: &[i64]) -> IntVector {
    IntVector::from_i64(v)
}

fn weights(n: usize, max: i64) -> Vec<Weight> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|v: Vec<i64>| {
                (0..=max).map(move |x| {
                    let mut v = v.clone();
                    v.push(x);
                    v
                })
            })
            .collect();
    }
    out.into_iter().map(Weight).collect()
}

#[test]
fn order_polytope_of_the_poset_is_gt() {
    for n in 1..=3 {
        for l in [vec![2; n], (1..=n as i64).collect::<Vec<_>>(), vec![0; n]] {
            let mp = gt_marked_poset(LieType::A, n, &w(&l)).unwrap();
            assert_eq!(mp.order_polytope(), gt_polytope_a(n, &w(&l)).unwrap(), "A{n} {l:?}");
            let mp = gt_marked_poset(LieType::C, n, &w(&l)).unwrap();
            assert_eq!(mp.order_polytope(), gt_polytope_c(n, &w(&l)).unwrap(), "C{n} {l:?}");
        }
    }
}

#[test]
fn gt_posets_are_pure() {
    for n in 1..=4 {
        for kind in [LieType::A, LieType::C] {
            assert!(gt_marked_poset(kind, n, &Weight(vec![1; n])).unwrap().is_pure(), "{kind}{n}");
        }
    }
}

#[test]
fn type_a2_poset_shape() {
    let mp = gt_marked_poset(LieType::A, 2, &w(&[2, 2])).unwrap();
    assert_eq!(mp.unmarked(), vec!["a1.1", "a2.1", "a1.2"]);
    let r = mp.ranks().unwrap();
    assert_eq!((r["t1"], r["t2"], r["t3"]), (4, 2, 0));
    assert_eq!((mp.marking("t1"), mp.marking("t2"), mp.marking("t3")), (Some(4), Some(2), Some(0)));
}

#[test]
fn gt_lattice_points_match_weyl_dimension() {
    for n in 1..=3 {
        for l in weights(n, if n == 3 { 1 } else { 2 }) {
            let p = gt_polytope_a(n, &l).unwrap();
            assert_eq!(p.lattice_point_count(), weyl_dim_a(&l.0), "A{n} {l}");
        }
    }
    assert_eq!(gt_polytope_a(3, &w(&[2, 2, 2])).unwrap().lattice_point_count(), weyl_dim_a(&[2, 2, 2]));
    for l in weights(2, 2) {
        assert_eq!(gt_polytope_c(2, &l).unwrap().lattice_point_count(), weyl_dim_c2(&l.0), "C2 {l}");
    }
}

#[test]
fn gt_and_fflv_have_equal_counts() {
    for n in 1..=2 {
        for l in weights(n, 3) {
            let a = gt_polytope_a(n, &l).unwrap().lattice_point_count();
            assert_eq!(fflv_a(n, &l).unwrap().lattice_point_count(), a, "A{n} {l}");
            let c = gt_polytope_c(n, &l).unwrap().lattice_point_count();
            assert_eq!(fflv_c(n, &l).unwrap().lattice_point_count(), c, "C{n} {l}");
        }
    }
    for l in [w(&[1, 1, 1]), w(&[2, 0, 1]), w(&[0, 3, 0])] {
        assert_eq!(
            fflv_a(3, &l).unwrap().lattice_point_count(),
            gt_polytope_a(3, &l).unwrap().lattice_point_count()
        );
    }
    assert_eq!(
        fflv_c(3, &w(&[1, 1, 1])).unwrap().lattice_point_count(),
        gt_polytope_c(3, &w(&[1, 1, 1])).unwrap().lattice_point_count()
    );
}

#[test]
fn fflv_small_cases() {
    assert_eq!(fflv_a(1, &w(&[3])).unwrap(), gt_polytope_a(1, &w(&[3])).unwrap());
    let f = fflv_a(2, &w(&[2, 2])).unwrap();
    assert_eq!(f.lattice_point_count(), 27);
    assert_eq!(f.interior_lattice_points(), vec![iv(&[1, 1, 1])]);
    assert!(f.is_lattice());
}

#[test]
fn transfer_on_the_interior_point() {
    let mp = gt_marked_poset(LieType::A, 2, &w(&[2, 2])).unwrap();
    // a_1^(1) = 3, a_2^(1) = 1, a_1^(2) = 2 in coordinate order
    let u = iv(&[3, 2, 1]);
    assert!(mp.is_admissible(&u));
    assert_eq!(mp.admissible_u().unwrap(), u);
    assert_eq!(mp.transfer_full(&u.to_rat()).unwrap(), RatVector::from_i64(&[1, 1, 1]));
    let none: [&str; 0] = [];
    assert_eq!(mp.transfer(&none, &u.to_rat()).unwrap(), u.to_rat());
}

#[test]
fn transfer_is_a_bijection_on_lattice_points() {
    for (kind, n, l) in [(LieType::A, 2, w(&[2, 2])), (LieType::C, 2, w(&[1, 2])), (LieType::A, 3, w(&[1, 1, 1]))] {
        let mp = gt_marked_poset(kind, n, &l).unwrap();
        let pts = mp.order_polytope().lattice_points();
        let chain = mp.chain_polytope();
        let imgs: BTreeSet<IntVector> = pts
            .iter()
            .map(|p| mp.transfer_full(&p.to_rat()).unwrap().to_int().unwrap())
            .collect();
        assert_eq!(imgs.len(), pts.len());
        assert!(imgs.iter().all(|q| chain.contains_lattice_point(q)));
        assert_eq!(chain.lattice_point_count(), pts.len() as u64);
    }
}

#[test]
fn chain_order_polytopes() {
    let mp = gt_marked_poset(LieType::A, 2, &w(&[2, 2])).unwrap();
    let none: [&str; 0] = [];
    assert_eq!(mp.chain_order_polytope(&none).unwrap(), mp.order_polytope());
    assert_eq!(mp.chain_order_polytope(&mp.unmarked()).unwrap(), mp.chain_polytope());
    let mid = mp.chain_order_polytope(&["a1.1"]).unwrap();
    assert!(mid.is_lattice());
    assert_eq!(mid.lattice_point_count(), 27);
}

#[test]
fn rank_marking_has_unique_interior_points() {
    for (kind, n) in [(LieType::A, 2), (LieType::A, 3), (LieType::C, 2)] {
        let base = gt_marked_poset(kind, n, &Weight(vec![0; n])).unwrap();
        let ranks = base.ranks().unwrap();
        // λ^r: every marker gets its rank
        let json = base.to_json_value();
        let mut marked = serde_json::Map::new();
        for (k, _) in json["marked"].as_object().unwrap() {
            marked.insert(k.clone(), (ranks[k] as i64).into());
        }
        let mut j = json.clone();
        j["marked"] = marked.into();
        let mp = polymut::poset::MarkedPoset::from_json(&j.to_string()).unwrap();
        let r: Vec<i64> = mp.unmarked().iter().map(|p| ranks[*p] as i64).collect();
        let o = mp.order_polytope();
        let c = mp.chain_polytope();
        assert_eq!(o.interior_lattice_points(), vec![iv(&r)]);
        assert_eq!(c.interior_lattice_points(), vec![IntVector::from_i64(&vec![1; r.len()])]);
        assert_eq!(mp.admissible_u().unwrap(), iv(&r));
        assert!(o.dual_at(&iv(&r)).is_ok());
        assert!(c.dual_at(&IntVector::from_i64(&vec![1; r.len()])).is_ok());
    }
}

#[test]
fn factorization_type_a2() {
    let mp = gt_marked_poset(LieType::A, 2, &w(&[2, 2])).unwrap();
    let f = mp.transfer_factorization(&iv(&[3, 2, 1])).unwrap();
    assert_eq!(f.steps.len(), 3);
    assert!(f.all_steps_match());
    assert!(f.all_steps_lattice());
    assert!(f.reaches_chain_polytope());
    assert_eq!(f.phi_u, RatVector::from_i64(&[1, 1, 1]));
    let fflv = fflv_a(2, &w(&[2, 2])).unwrap();
    assert_eq!(f.final_image(), &fflv.translate(&RatVector::from_i64(&[-1, -1, -1])));
}

#[test]
fn factorization_for_other_weights() {
    for (kind, n, l) in [
        (LieType::A, 2, w(&[1, 3])),
        (LieType::C, 2, w(&[1, 1])),
        (LieType::A, 3, w(&[1, 0, 2])),
    ] {
        let mp = gt_marked_poset(kind, n, &l).unwrap();
        let Ok(u) = mp.admissible_u() else {
            continue;
        };
        let f = mp.transfer_factorization(&u).unwrap();
        assert!(f.all_steps_match() && f.reaches_chain_polytope(), "{kind}{n} {l}");
    }
}
