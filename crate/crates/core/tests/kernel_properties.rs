use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use diagset::dsl::{load, Elaborated};
use diagset::kernel::{Diagram, Morphism};
use diagset::ogposet::Sign;

const SOURCE: &str = "gen y\ngen b : y => y\ngen n : b => b\ngen n2 : b => b\ngen p : b *0 b => b\n";
const TARGET: &str = "gen x\ngen a : x => x\ngen e : a => a\ngen m : a *0 a => a\n";
const FROBENIUS: &str = include_str!("corpus/frobenius.dg");
const SOURCE_GENS: [&str; 5] = ["y", "b", "n", "n2", "p"];

/// A random composite of cells, units and unitors of `names`, at most `max_len` elements.
fn random_diagram(out: &Elaborated, names: &[&str], seed: u64, max_len: usize) -> Diagram {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pool: Vec<Diagram> = names.iter().map(|n| out.get(n).unwrap().clone()).collect();
    for _ in 0..25 {
        let u = pool.choose(&mut rng).unwrap().clone();
        let candidate = match rng.gen_range(0..5) {
            0 => u.unit().ok(),
            1 => u.lunitor().ok(),
            2 => u.runitor().ok(),
            _ => {
                let v = pool.choose(&mut rng).unwrap();
                let low = u.dim().min(v.dim());
                (low >= 1).then(|| u.paste(v, rng.gen_range(0..low) as usize).ok()).flatten()
            }
        };
        if let Some(d) = candidate.filter(|d| d.shape().len() <= max_len) {
            pool.push(d);
        }
    }
    pool.choose(&mut rng).unwrap().clone()
}

fn setup() -> (Elaborated, Elaborated, Morphism, Morphism) {
    let src = load(SOURCE).unwrap();
    let tgt = load(TARGET).unwrap();
    let t = |n: &str| tgt.get(n).unwrap().clone();
    let unit = t("a").unit().unwrap();
    let f = Morphism::new(
        &src.diagset,
        &tgt.diagset,
        [("y", t("x")), ("b", t("a")), ("n", t("e")), ("n2", unit), ("p", t("m"))],
    )
    .unwrap();
    // swaps the two endomorphisms of b
    let s = |n: &str| src.get(n).unwrap().clone();
    let h = Morphism::new(&src.diagset, &src.diagset, [("y", s("y")), ("b", s("b")), ("n", s("n2")), ("n2", s("n")), ("p", s("p"))])
        .unwrap();
    (src, tgt, f, h)
}

fn boundaries(d: &Diagram) -> Vec<(Sign, isize)> {
    (0..d.dim()).flat_map(|k| Sign::BOTH.into_iter().map(move |s| (s, k))).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn substitution_commutes_with_pasting(a in any::<u64>(), b in any::<u64>()) {
        let (src, _, f, _) = setup();
        let u = random_diagram(&src, &SOURCE_GENS, a, 30);
        let v = random_diagram(&src, &SOURCE_GENS, b, 30);
        for k in 0..u.dim().min(v.dim()).max(0) as usize {
            if let Ok(w) = u.paste(&v, k) {
                let lhs = f.apply(&w).unwrap();
                let rhs = f.apply(&u).unwrap().paste(&f.apply(&v).unwrap(), k).unwrap();
                prop_assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn substitution_commutes_with_boundaries(seed in any::<u64>()) {
        let (src, _, f, _) = setup();
        let d = random_diagram(&src, &SOURCE_GENS, seed, 40);
        let image = f.apply(&d).unwrap();
        for (s, k) in boundaries(&d) {
            prop_assert_eq!(f.apply(&d.boundary(s, k)).unwrap(), image.boundary(s, k));
        }
    }

    #[test]
    fn composite_substitution_applies_in_sequence(seed in any::<u64>()) {
        let (src, _, f, h) = setup();
        let d = random_diagram(&src, &SOURCE_GENS, seed, 30);
        let hf = h.then(&f).unwrap();
        prop_assert_eq!(hf.apply(&d).unwrap(), f.apply(&h.apply(&d).unwrap()).unwrap());
    }

    #[test]
    fn types_are_coherent(seed in any::<u64>()) {
        let frob = load(FROBENIUS).unwrap();
        let d = random_diagram(&frob, &["x", "a", "m", "c", "frob"], seed, 40);
        // the boundaries of the type recompute the lower boundaries of the diagram
        if let Some((input, output)) = d.type_of() {
            prop_assert_eq!(input.dim(), d.dim() - 1);
            prop_assert_eq!(output.dim(), d.dim() - 1);
            for side in [&input, &output] {
                for (s, k) in boundaries(side) {
                    prop_assert_eq!(side.boundary(s, k), d.boundary(s, k));
                }
            }
        } else {
            prop_assert_eq!(d.dim(), 0);
        }
    }

    #[test]
    fn composites_pass_reconstruction(seed in any::<u64>()) {
        let (src, tgt, f, _) = setup();
        let frob = load(FROBENIUS).unwrap();
        let d = random_diagram(&frob, &["x", "a", "m", "c"], seed, 24);
        prop_assert!(frob.diagset.check_reconstruction(&d).is_ok());
        let rebuilt = frob.diagset.diagram(d.shape(), &d.label_names()).unwrap();
        prop_assert_eq!(&rebuilt, &d);
        let image = f.apply(&random_diagram(&src, &SOURCE_GENS, seed, 12)).unwrap();
        prop_assert!(tgt.diagset.check_reconstruction(&image).is_ok());
    }
}
