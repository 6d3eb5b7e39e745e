use std::sync::Arc;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use diagset::molecule::{canonicalize, random_molecule, shuffle, traverse, traverse_instrumented, Molecule};
use diagset::ogposet::{brute_force_iso, check_map, Closed, OgMap, OgPoset, Sign};

fn molecule(seed: u64, max_len: usize) -> Molecule {
    random_molecule(&mut ChaCha8Rng::seed_from_u64(seed), max_len, 30)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn cofaces_are_the_transpose(seed in any::<u64>()) {
        let m = molecule(seed, 20);
        let rebuilt = OgPoset::from_face_data(m.poset().face_data().clone()).unwrap();
        prop_assert_eq!(rebuilt.coface_data(), m.poset().coface_data());
        let json = m.poset().to_json();
        prop_assert_eq!(&OgPoset::from_json(&json).unwrap(), m.poset());
    }

    #[test]
    fn boundaries_are_closed(seed in any::<u64>()) {
        let m = molecule(seed, 20);
        let whole = m.poset().whole();
        for n in -2..=m.dim() + 1 {
            for sign in [Some(Sign::Input), Some(Sign::Output), None] {
                let b = whole.boundary(sign, Some(n));
                prop_assert!(m.poset().is_closed(b.support()));
                if n <= -1 {
                    prop_assert!(b.is_empty());
                }
            }
        }
    }

    #[test]
    fn globularity(seed in any::<u64>()) {
        let m = molecule(seed, 20);
        let p = m.poset();
        let whole = p.whole();
        for n in 0..m.dim() {
            for k in 0..n {
                for alpha in Sign::BOTH {
                    let expected = whole.boundary(Some(alpha), Some(k));
                    for beta in Sign::BOTH {
                        let bn = whole.boundary(Some(beta), Some(n));
                        let sub = Closed::new(bn.support().clone(), p).unwrap();
                        let inner = sub.boundary(Some(alpha), Some(k));
                        prop_assert_eq!(inner.support(), expected.support());
                    }
                }
            }
        }
    }

    #[test]
    fn canonical_form_ignores_representation(seed in any::<u64>(), shuffle_seed in any::<u64>()) {
        let m = molecule(seed, 16);
        let mut rng = ChaCha8Rng::seed_from_u64(shuffle_seed);
        for _ in 0..4 {
            let raw = shuffle(m.poset(), &mut rng);
            let (c, _) = canonicalize(&raw).unwrap();
            prop_assert_eq!(c.to_json(), m.to_json());
        }
        // canonical forms are fixed points
        let (again, perm) = canonicalize(m.poset()).unwrap();
        prop_assert_eq!(&again, m.poset());
        prop_assert!(perm.iter().all(|p| p.iter().enumerate().all(|(i, &j)| i == j)));
    }

    #[test]
    fn traversal_visits_everything_once(seed in any::<u64>()) {
        let m = molecule(seed, 24);
        let (order, stats) = traverse_instrumented(m.poset()).unwrap();
        let mut sorted = order.clone();
        sorted.sort();
        sorted.dedup();
        prop_assert_eq!(sorted.len(), m.len());
        prop_assert_eq!(stats.repeated_pushes, 0);
        let (n, d) = (m.len(), m.dim() as usize);
        prop_assert!(stats.iterations <= (n + 1) * (n + 4 * d + 2));
    }

    #[test]
    fn boundaries_of_molecules_are_molecules(seed in any::<u64>()) {
        let m = molecule(seed, 24);
        for k in 0..m.dim() {
            for sign in Sign::BOTH {
                let support = m.poset().whole().boundary(Some(sign), Some(k)).into_support();
                let (sub, _) = m.poset().restrict(&support);
                prop_assert!(traverse(&sub).is_ok());
                // round boundaries are pure
                let closed = Closed::new(support, m.poset()).unwrap();
                if closed.is_round().unwrap() {
                    prop_assert!(closed.maximal().iter().all(|e| e.dim as isize == k));
                }
            }
        }
        for el in m.poset().elements() {
            let cl = m.poset().closure_of_el(el).unwrap();
            prop_assert!(cl.is_round().unwrap());
            prop_assert!(cl.maximal().iter().all(|e| e.dim == el.dim));
        }
    }

    #[test]
    fn constructor_contracts(a in any::<u64>(), b in any::<u64>()) {
        let u = molecule(a, 10);
        let v = molecule(b, 10);
        if let Ok(t) = Molecule::atom(&u, &u) {
            prop_assert_eq!(t.input(), u.clone());
            prop_assert_eq!(t.output(), u.clone());
            prop_assert!(t.is_atom());
        }
        if let Ok(t) = Molecule::atom(&u, &v) {
            prop_assert_eq!(t.input(), u.clone());
            prop_assert_eq!(t.output(), v.clone());
        }
        for k in 0..u.dim().min(v.dim()) {
            let Ok(w) = Molecule::paste(&u, &v, k as usize) else { continue };
            prop_assert_eq!(w.boundary(Sign::Output, k), v.boundary(Sign::Output, k));
            prop_assert_eq!(w.boundary(Sign::Input, k), u.boundary(Sign::Input, k));
            let (_, left, right) = Molecule::paste_with_inclusions(&u, &v, k as usize).unwrap();
            prop_assert!(left.map.validate().is_ok());
            prop_assert!(right.map.validate().is_ok());
        }
    }

    #[test]
    fn pasting_is_associative(a in any::<u64>(), b in any::<u64>(), c in any::<u64>()) {
        let (x, y, z) = (molecule(a, 8), molecule(b, 8), molecule(c, 8));
        for k in 0..x.dim().min(y.dim()).min(z.dim()) {
            let k = k as usize;
            let left = Molecule::paste(&x, &y, k).and_then(|xy| Molecule::paste(&xy, &z, k));
            let right = Molecule::paste(&y, &z, k).and_then(|yz| Molecule::paste(&x, &yz, k));
            if let (Ok(l), Ok(r)) = (left, right) {
                prop_assert_eq!(l, r);
            }
        }
    }

    #[test]
    fn composites_of_maps_are_maps(seed in any::<u64>()) {
        let m = molecule(seed, 16);
        for k in 0..m.dim() {
            let inner = m.boundary_inclusion(Sign::Input, k);
            let sub = inner.source.clone();
            for j in 0..k {
                let deeper = sub.boundary_inclusion(Sign::Output, j);
                let composite = deeper.map.then(&inner.map).unwrap();
                prop_assert!(composite.validate().is_ok());
            }
        }
        let id = OgMap::identity(Arc::new(m.poset().clone()));
        prop_assert!(check_map(id.mapping().to_vec(), id.source().clone(), id.target().clone()).is_ok());
    }
}

#[test]
fn isomorphism_agrees_with_brute_force_on_small_molecules() {
    for seed in 0..60u64 {
        let m = molecule(seed, 12);
        let mut rng = ChaCha8Rng::seed_from_u64(seed + 1000);
        let raw = shuffle(m.poset(), &mut rng);
        let found = brute_force_iso(&raw, m.poset());
        assert_eq!(found.len(), 1, "seed {seed}: {m}");
        let other = molecule(seed + 7, 12);
        let equal = other == m;
        assert_eq!(!brute_force_iso(other.poset(), m.poset()).is_empty(), equal);
    }
}
