use proptest::prelude::*;
use zcolor::action::{alphabet, all_moves, apply_move, MarkedState, MoveKind};
use zcolor::canon::{enumerate_representatives, normal_form_word, representative};
use zcolor::decide::{closable_classical, equivalent};
use zcolor::invariants::{delta, gcd_diff, profile, residue, transported_profile, two_part, two_part_of};
use zcolor::witness::{orbit, Limits};
use zcolor::Relation;

fn vector(m: std::ops::RangeInclusive<usize>, k: i64) -> impl Strategy<Value = Vec<i64>> {
    m.prop_flat_map(move |m| prop::collection::vec(-k..=k, m))
}

fn relation() -> impl Strategy<Value = Relation> {
    prop::sample::select(Relation::ALL.to_vec())
}

fn pair(m: std::ops::RangeInclusive<usize>, k: i64) -> impl Strategy<Value = (Vec<i64>, Vec<i64>)> {
    m.prop_flat_map(move |m| (prop::collection::vec(-k..=k, m), prop::collection::vec(-k..=k, m)))
}

fn cube(m: usize, lo: i64, hi: i64) -> Vec<Vec<i64>> {
    let mut out = vec![vec![]];
    for _ in 0..m {
        out = out
            .into_iter()
            .flat_map(|v| {
                (lo..=hi).map(move |a| {
                    let mut u = v.clone();
                    u.push(a);
                    u
                })
            })
            .collect();
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10_000))]

    #[test]
    fn gcd_and_delta_congruences(v in vector(2..=8, 1000)) {
        let d = gcd_diff(&v).unwrap();
        for a in &v {
            for b in &v {
                prop_assert_eq!(residue(a - b, d), 0);
            }
        }
        let dl = delta(&v).unwrap();
        if v.len() % 2 == 1 {
            prop_assert_eq!(residue(dl - v[0], d), 0);
        } else {
            prop_assert_eq!(residue(dl, d), 0);
        }
        let d2 = two_part(&v).unwrap();
        prop_assert_eq!(residue(d, d2), 0);
        if d > 0 {
            prop_assert_eq!((d / d2) % 2, 1);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(4_000))]

    #[test]
    fn moves_preserve_profiles(v in vector(2..=6, 40), r in relation(), pick in any::<prop::sample::Index>()) {
        let (kinds, _) = alphabet(r);
        let moves = all_moves(&kinds, v.len());
        let mv = moves[pick.index(moves.len())];
        if let Ok(s) = apply_move(&MarkedState::new(v.clone()), mv) {
            prop_assert_eq!(
                transported_profile(&s.vector, s.perm.images(), r).unwrap(),
                profile(&v, r).unwrap()
            );
        }
    }

    #[test]
    fn permutation_tracks_cosets(v in vector(2..=6, 40), picks in prop::collection::vec(any::<prop::sample::Index>(), 1..12)) {
        let d2 = two_part(&v).unwrap();
        for (r, modulus) in [(Relation::Tangle0, 2 * d2), (Relation::Tangle, 2), (Relation::Vtangle0, 2 * d2), (Relation::Vtangle, 2)] {
            let (kinds, _) = alphabet(r);
            let moves = all_moves(&kinds, v.len());
            let mut s = MarkedState::new(v.clone());
            for p in &picks {
                let _ = s.step(moves[p.index(moves.len())]);
            }
            for (i, &a) in v.iter().enumerate() {
                prop_assert_eq!(residue(s.vector[s.perm.images()[i]] - a, modulus), 0);
            }
        }
    }

    #[test]
    fn sigma_tau_and_gadget_laws(v in vector(2..=6, 40), pick in any::<prop::sample::Index>()) {
        let kinds = [MoveKind::Sigma, MoveKind::Tau, MoveKind::H, MoveKind::HV];
        let moves = all_moves(&kinds, v.len());
        let mv = moves[pick.index(moves.len())];
        let i = mv.index - 1;
        let Ok(s) = apply_move(&MarkedState::new(v.clone()), mv) else { return Ok(()) };
        let before = delta(&v).unwrap();
        let after = delta(&s.vector).unwrap();
        match mv.kind {
            MoveKind::Sigma => prop_assert_eq!(before, after),
            MoveKind::Tau => {
                let sign = if i % 2 == 0 { 1 } else { -1 };
                prop_assert_eq!(after - before, -2 * sign * (v[i] - v[i + 1]));
            }
            _ => prop_assert_eq!(
                two_part_of(v[i] - v[i + 1]),
                two_part_of(s.vector[i] - s.vector[i + 1])
            ),
        }
        if matches!(mv.kind, MoveKind::Sigma | MoveKind::Tau) {
            let d = gcd_diff(&v).unwrap();
            let mut a: Vec<i64> = v.iter().map(|&x| residue(x, 2 * d)).collect();
            let mut b: Vec<i64> = s.vector.iter().map(|&x| residue(x, 2 * d)).collect();
            a.sort();
            b.sort();
            prop_assert_eq!(a, b);
        }
    }

    #[test]
    fn equivalence_axioms(v in vector(3..=3, 4), w in vector(3..=3, 4), u in vector(3..=3, 4), r in relation()) {
        prop_assert!(equivalent(&v, &v, r).unwrap());
        prop_assert_eq!(equivalent(&v, &w, r).unwrap(), equivalent(&w, &v, r).unwrap());
        if equivalent(&v, &w, r).unwrap() && equivalent(&w, &u, r).unwrap() {
            prop_assert!(equivalent(&v, &u, r).unwrap());
        }
    }

    #[test]
    fn lattice_random((v, w) in pair(2..=6, 6)) {
        for (fine, coarse) in Relation::implications() {
            if equivalent(&v, &w, fine).unwrap() {
                prop_assert!(equivalent(&v, &w, coarse).unwrap(), "{} => {}", fine, coarse);
            }
        }
    }

    #[test]
    fn representatives_random((v, w) in pair(2..=6, 20), r in relation()) {
        let rv = representative(&v, r).unwrap();
        prop_assert_eq!(representative(&rv, r).unwrap(), rv.clone());
        prop_assert!(equivalent(&v, &rv, r).unwrap());
        prop_assert_eq!(equivalent(&v, &w, r).unwrap(), rv == representative(&w, r).unwrap());
    }

    #[test]
    fn normal_form_replay(v in vector(2..=8, 30)) {
        let (rep, word) = normal_form_word(&v).unwrap();
        prop_assert_eq!(&rep, &representative(&v, Relation::Braid).unwrap());
        let (end, perm) = zcolor::action::apply_word(&v, &word).unwrap();
        prop_assert_eq!(&end, &rep);
        let d = gcd_diff(&v).unwrap();
        for (i, &a) in v.iter().enumerate() {
            prop_assert_eq!(residue(end[perm.images()[i]] - a, 2 * d), 0);
        }
    }

    #[test]
    fn closability_is_delta_equality((v, w) in pair(2..=4, 10)) {
        let mut u = v.clone();
        u.extend(w.iter().rev());
        prop_assert_eq!(closable_classical(&u).unwrap(), delta(&v).unwrap() == delta(&w).unwrap());
    }
}

#[test]
fn lattice_and_completeness_exhaustive() {
    let g = cube(3, 0, 3);
    let implications = Relation::implications();
    for r in Relation::ALL {
        let reps: Vec<Vec<i64>> = g.iter().map(|v| representative(v, r).unwrap()).collect();
        for (i, v) in g.iter().enumerate() {
            for (j, w) in g.iter().enumerate() {
                let eq = equivalent(v, w, r).unwrap();
                assert_eq!(eq, reps[i] == reps[j], "{r} {v:?} {w:?}");
                if eq {
                    for &(fine, coarse) in &implications {
                        if fine == r {
                            assert!(equivalent(v, w, coarse).unwrap(), "{fine} => {coarse} on {v:?} {w:?}");
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn trivial_rigidity() {
    for a in -3..=3 {
        let v = vec![a; 3];
        for w in cube(3, -3, 3) {
            if equivalent(&v, &w, Relation::Braid).unwrap() {
                assert_eq!(v, w);
            }
        }
    }
}

#[test]
fn enumeration_hits_every_class_once() {
    for r in Relation::ALL.into_iter().filter(|r| !r.is_ordered()) {
        for m in 2..=3 {
            let bound = 2;
            let listed: Vec<Vec<i64>> = enumerate_representatives(r, m, bound).unwrap().collect();
            for (i, a) in listed.iter().enumerate() {
                for b in &listed[i + 1..] {
                    assert!(!equivalent(a, b, r).unwrap(), "{r}: {a:?} ~ {b:?}");
                }
            }
            for v in cube(m, -bound, bound) {
                let rep = representative(&v, r).unwrap();
                let inside = rep.iter().all(|a| a.abs() <= bound);
                let hits = listed.iter().filter(|x| **x == rep).count();
                assert_eq!(hits, usize::from(inside), "{r} {v:?}");
            }
        }
    }
}

#[test]
fn orbits_stay_in_class() {
    for r in Relation::ALL {
        for v in [vec![-2, 0, 3], vec![1, 7, 9], vec![0, 4], vec![3, 3, 1, 0]] {
            let o = orbit(&v, r, Limits::new(4, 12)).unwrap();
            assert!(o.contains(&v));
            for w in o {
                assert!(equivalent(&v, &w, r).unwrap(), "{r} {v:?} {w:?}");
            }
        }
    }
}
