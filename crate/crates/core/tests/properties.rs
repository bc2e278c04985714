//! Exhaustive small-case checks and randomized properties across modules.

mod common;

use std::collections::{BTreeMap, HashSet};

use common::*;
use multiseg::multiplicity::mult_matrix;
use multiseg::poset::leq_rank;
use multiseg::ring::{derivative, product, to_l_basis, to_pi_basis, Basis, RingElement};
use multiseg::symmetrization::{lift, lift_stepwise, symmetrize, LiftTable};
use multiseg::truncation::{
    descent_set_side, hypothesis, minimal_lift, psi_inverse, truncate, truncate_route, Side,
};
use multiseg::weyl::{kl_polynomial_with, DescentChoice};
use multiseg::{
    bruhat_leq, generate_poset, kl_polynomial, minimal_element, mult, phi, phi_inverse,
    same_relation_type, xi_transport, Multisegment, Permutation, Segment,
};
use proptest::prelude::*;

fn is_submultiset(small: &[i64], big: &[i64]) -> bool {
    let mut counts: BTreeMap<i64, i64> = BTreeMap::new();
    for &x in big {
        *counts.entry(x).or_default() += 1;
    }
    small.iter().all(|x| {
        let c = counts.entry(*x).or_default();
        *c -= 1;
        *c >= 0
    })
}

#[test]
fn elementary_operations_preserve_weight_and_regularity() {
    for w in weights(5, 7) {
        let p = with_weight(&w);
        for a in p.elements() {
            for (i, j) in a.linked_pairs() {
                let b = a.elementary_operation(i, j).unwrap();
                assert_eq!(b.degree(), a.degree());
                assert_eq!(b.weight(), a.weight());
                assert!(is_submultiset(&b.ends(), &a.ends()), "{b} from {a}");
                assert!(is_submultiset(&b.begins(), &a.begins()), "{b} from {a}");
                if a.is_regular() {
                    assert!(b.is_regular(), "{b} from regular {a}");
                }
            }
        }
    }
}

#[test]
fn rank_order_is_a_partial_order_with_unique_minimum() {
    for w in weights(5, 7) {
        let p = with_weight(&w);
        let els = p.elements();
        for a in els {
            for b in els {
                if a != b && leq_rank(a, b) {
                    assert!(!leq_rank(b, a), "{a} and {b}");
                }
                if leq_rank(b, a) {
                    assert!(is_submultiset(&b.ends(), &a.ends()));
                    assert!(is_submultiset(&b.begins(), &a.begins()));
                }
            }
        }
        for a in els {
            let sub = generate_poset(a).unwrap();
            assert_eq!(sub.minimum(), &minimal_element(a));
        }
    }
}

#[test]
fn truncation_lowers_degree_at_most_to_the_root_value() {
    for a in all_multisegments(5, 7) {
        let p = generate_poset(&a).unwrap();
        for k in 0..5 {
            for side in [Side::End, Side::Begin] {
                let root = truncate(&a, side, k).degree();
                for b in p.elements() {
                    let d = truncate(b, side, k).degree();
                    assert!(d >= root, "{b} vs {a} at {k}");
                    if d == root {
                        assert_eq!(
                            multiseg::truncation::boundary_count(b, side, k),
                            multiseg::truncation::boundary_count(&a, side, k)
                        );
                        assert!(leq_rank(&truncate(b, side, k), &truncate(&a, side, k)));
                    }
                }
            }
        }
    }
}

/// ψ_k is an order isomorphism from the descent set onto `S(a^(k))`, the
/// minimal lift is the preimage of the minimum, and the inverse is exact.
fn check_psi(a: &Multisegment, side: Side, k: i64) {
    let ds = descent_set_side(a, side, k).unwrap();
    let target = generate_poset(&truncate(a, side, k)).unwrap();
    let images: Vec<Multisegment> = ds.iter().map(|c| truncate(c, side, k)).collect();
    let distinct: HashSet<&Multisegment> = images.iter().collect();
    assert_eq!(distinct.len(), ds.len(), "ψ not injective for {a}, {side} {k}");
    assert_eq!(ds.len(), target.len(), "ψ not onto for {a}, {side} {k}");
    assert!(images.iter().all(|d| target.contains(d)));
    for (c, dc) in ds.iter().zip(&images) {
        for (c2, dc2) in ds.iter().zip(&images) {
            assert_eq!(leq_rank(c, c2), leq_rank(dc, dc2), "{c} {c2} in {a} at {k}");
        }
        assert_eq!(&psi_inverse(side, a, k, dc).unwrap(), c);
    }
    if side == Side::End {
        let lifted = minimal_lift(a, k).unwrap();
        assert_eq!(truncate(&lifted, side, k), target.minimum().clone());
        assert_eq!(
            lifted,
            psi_inverse(side, a, k, &minimal_element(&truncate(a, side, k))).unwrap()
        );
    }
}

#[test]
fn psi_is_an_order_isomorphism_exhaustively() {
    for a in all_multisegments(5, 7) {
        for k in 0..5 {
            check_psi(&a, Side::End, k);
            check_psi(&a, Side::Begin, k);
        }
    }
}

#[test]
fn descent_sets_agree_along_truncation_fibres() {
    for a in all_multisegments(4, 6) {
        for k in 0..4 {
            let ds = descent_set_side(&a, Side::End, k).unwrap();
            let ak = truncate(&a, Side::End, k);
            let mut want = ds.clone();
            want.sort();
            for b in &ds {
                if truncate(b, Side::End, k) == ak && hypothesis(Side::End, b, &a, k) {
                    let mut got = descent_set_side(b, Side::End, k).unwrap();
                    got.sort();
                    assert_eq!(got, want, "{b} below {a} at {k}");
                }
            }
        }
    }
}

#[test]
fn symmetrization_round_trips_and_lifts_agree() {
    for a in all_multisegments(4, 6) {
        let data = symmetrize(&a).unwrap();
        assert!(data.symmetric.is_symmetric());
        assert!(data.symmetric.degree() >= a.degree());
        assert_eq!(data.symmetric.len(), data.ordinary.len());
        let route = data.route();
        let table = LiftTable::new(&data).unwrap();
        let sub = generate_poset(&a).unwrap();
        assert_eq!(table.len(), sub.len());
        for b in sub.elements() {
            let by_search = lift(&data, b).unwrap();
            assert_eq!(lift_stepwise(&data, b).unwrap(), by_search, "lift of {b} under {a}");
            assert_eq!(table.get(b), Some(&by_search));
            assert_eq!(&truncate_route(&by_search, &route), b);
        }
        for b in sub.elements() {
            for c in sub.elements() {
                assert_eq!(
                    leq_rank(b, c),
                    leq_rank(table.get(b).unwrap(), table.get(c).unwrap()),
                    "{b} {c} under {a}"
                );
            }
        }
    }
}

#[test]
fn phi_reverses_bruhat_order() {
    for n in 1..=4 {
        let base = symmetric_identity(n);
        let perms = Permutation::all(n as usize);
        for v in &perms {
            for w in &perms {
                let (pv, pw) = (phi(&base, v).unwrap(), phi(&base, w).unwrap());
                assert_eq!(bruhat_leq(v, w).unwrap(), leq_rank(&pw, &pv), "{v} {w}");
            }
        }
    }
}

#[test]
fn phi_is_a_bijection_onto_the_symmetric_poset() {
    for n in 1..=5 {
        let base = symmetric_identity(n);
        let p = generate_poset(&base).unwrap();
        assert_eq!(p.len(), factorial(n as usize));
        let images: HashSet<Multisegment> = Permutation::all(n as usize)
            .iter()
            .map(|w| phi(&base, w).unwrap())
            .collect();
        assert_eq!(images.len(), p.len());
        for b in p.elements() {
            assert!(images.contains(b));
            assert_eq!(&phi(&base, &phi_inverse(&base, b).unwrap()).unwrap(), b);
        }
    }
}

#[test]
fn kl_polynomials_are_consistent() {
    for n in 1..=5 {
        let perms = Permutation::all(n);
        for w in &perms {
            for x in &perms {
                let p = kl_polynomial(x, w).unwrap();
                let q = kl_polynomial_with(x, w, DescentChoice::Last).unwrap();
                assert_eq!(p, q, "descent choice changes P_{{{x},{w}}}");
                assert_eq!(p, kl_polynomial(&x.inverse(), &w.inverse()).unwrap());
                if bruhat_leq(x, w).unwrap() {
                    assert_eq!(p.coefficient(0), 1);
                    let gap = w.length() - x.length();
                    if gap > 0 {
                        assert!(2 * p.degree().unwrap() < gap, "P_{{{x},{w}}} = {p}");
                    }
                } else {
                    assert!(p.is_zero());
                }
            }
        }
    }
}

#[test]
fn smooth_permutations_have_trivial_polynomials() {
    let perms = Permutation::all(4);
    for w in &perms {
        let smooth = !w.contains_pattern(&[3, 4, 1, 2]) && !w.contains_pattern(&[4, 2, 3, 1]);
        let all_one = perms
            .iter()
            .filter(|x| bruhat_leq(x, w).unwrap())
            .all(|x| kl_polynomial(x, w).unwrap().coefficients() == [1]);
        assert_eq!(smooth, all_one, "{w}");
    }
    for w in ["3412", "4231"] {
        let w: Permutation = w.parse().unwrap();
        let p = kl_polynomial(&Permutation::identity(4), &w).unwrap();
        assert_eq!(p.coefficients(), &[1, 1]);
    }
}

#[test]
fn multiplicities_are_positive_exactly_below() {
    for w in weights(4, 6) {
        let p = with_weight(&w);
        for a in p.elements() {
            let matrix = mult_matrix(a).unwrap();
            assert_eq!(matrix.get(a), Some(&1));
            for b in p.elements() {
                let m = mult(b, a).unwrap();
                assert_eq!(m > 0, leq_rank(b, a), "m({b}, {a}) = {m}");
                if m > 0 {
                    assert_eq!(matrix.get(b), Some(&m));
                }
            }
        }
    }
}

fn segment_strategy() -> impl Strategy<Value = Segment> {
    (0i64..5, 0i64..3).prop_map(|(b, l)| Segment::new(b, b + l).unwrap())
}

fn multisegment_strategy(max_segments: usize) -> impl Strategy<Value = Multisegment> {
    prop::collection::vec(segment_strategy(), 0..=max_segments).prop_map(Multisegment::new)
}

fn pi_element_strategy() -> impl Strategy<Value = RingElement> {
    prop::collection::vec((multisegment_strategy(3), -3i64..=3), 1..4).prop_map(|terms| {
        RingElement::from_terms(Basis::Pi, terms.into_iter().filter(|(a, _)| a.degree() <= 6))
    })
}

/// A strictly increasing relabelling of the integers used by `a`, with
/// random gaps, applied to every segment.
fn relabel(a: &Multisegment, shift: i64, gaps: &[i64]) -> Multisegment {
    let mut points: Vec<i64> = a.iter().flat_map(|s| [s.begin(), s.end()]).collect();
    points.sort_unstable();
    points.dedup();
    let mut map = BTreeMap::new();
    let mut next = shift;
    for (i, p) in points.iter().enumerate() {
        if i > 0 {
            next += (p - points[i - 1]) * gaps[i % gaps.len()];
        }
        map.insert(*p, next);
    }
    Multisegment::new(a.iter().map(|s| Segment::new(map[&s.begin()], map[&s.end()]).unwrap()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn canonical_form_is_order_independent(mut segs in prop::collection::vec(segment_strategy(), 0..6)) {
        let a = Multisegment::new(segs.clone());
        segs.reverse();
        prop_assert_eq!(&Multisegment::new(segs), &a);
        prop_assert_eq!(&Multisegment::new(a.segments().to_vec()), &a);
        prop_assert_eq!(&a.to_string().parse::<Multisegment>().unwrap(), &a);
        let json = serde_json::to_string(&a).unwrap();
        prop_assert_eq!(&serde_json::from_str::<Multisegment>(&json).unwrap(), &a);
    }

    #[test]
    fn mirror_is_an_involution_reversing_truncation_sides(a in multisegment_strategy(4), k in 0i64..6) {
        prop_assert_eq!(&a.mirror().mirror(), &a);
        prop_assert_eq!(
            truncate(&a, Side::Begin, k),
            truncate(&a.mirror(), Side::End, -k).mirror()
        );
    }

    #[test]
    fn relation_type_invariance(a in multisegment_strategy(4), shift in -3i64..4, gaps in prop::collection::vec(1i64..3, 1..4)) {
        prop_assume!(a.degree() <= 6);
        let a2 = relabel(&a, shift, &gaps);
        if let Some(map) = same_relation_type(&a, &a2) {
            let m1 = mult_matrix(&a).unwrap();
            let m2 = mult_matrix(&a2).unwrap();
            prop_assert_eq!(m1.len(), m2.len());
            for (b, m) in m1.iter() {
                let image = xi_transport(&map, b).unwrap();
                prop_assert_eq!(m2.get(&image), Some(m), "{} ↦ {}", b, image);
            }
        }
    }

    #[test]
    fn distant_derivatives_commute(x in pi_element_strategy(), i in 0i64..6, j in 0i64..6) {
        prop_assume!((i - j).abs() >= 2);
        for side in [Side::End, Side::Begin] {
            let ij = derivative(&derivative(&x, side, i).unwrap(), side, j).unwrap();
            let ji = derivative(&derivative(&x, side, j).unwrap(), side, i).unwrap();
            prop_assert_eq!(ij, ji);
        }
        let mixed = derivative(&derivative(&x, Side::End, i).unwrap(), Side::Begin, j).unwrap();
        let other = derivative(&derivative(&x, Side::Begin, j).unwrap(), Side::End, i).unwrap();
        prop_assert_eq!(mixed, other);
    }

    #[test]
    fn derivatives_are_multiplicative(x in pi_element_strategy(), y in pi_element_strategy(), i in 0i64..6) {
        let lhs = derivative(&product(&x, &y).unwrap(), Side::End, i).unwrap();
        let rhs = product(
            &derivative(&x, Side::End, i).unwrap(),
            &derivative(&y, Side::End, i).unwrap(),
        ).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn basis_round_trip(x in pi_element_strategy()) {
        let l = to_l_basis(&x).unwrap();
        prop_assert_eq!(&to_pi_basis(&l).unwrap(), &x);
        let json = serde_json::to_string(&l).unwrap();
        prop_assert_eq!(serde_json::from_str::<RingElement>(&json).unwrap(), l);
    }
}
