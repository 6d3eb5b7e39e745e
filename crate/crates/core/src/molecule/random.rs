use rand::seq::SliceRandom;
use rand::Rng;

use crate::ogposet::{OgPoset, Sign};

use super::Molecule;

/// A random molecule with at most `max_len` elements, built by a random
/// sequence of `steps` constructor applications over a growing pool.
pub fn random_molecule<R: Rng>(rng: &mut R, max_len: usize, steps: usize) -> Molecule {
    let mut pool = vec![Molecule::point(), Molecule::arrow()];
    for _ in 0..steps {
        let u = pool.choose(rng).unwrap().clone();
        let candidate = match rng.gen_range(0..4) {
            0 => {
                let same: Vec<&Molecule> = pool.iter().filter(|v| v.dim() == u.dim()).collect();
                let v = (*same.choose(rng).unwrap()).clone();
                Molecule::atom(&u, &v).ok()
            }
            1 => Molecule::atom(&u, &u).ok(),
            2 => {
                let v = pool.choose(rng).unwrap().clone();
                let low = u.dim().min(v.dim());
                if low < 1 {
                    None
                } else {
                    let k = rng.gen_range(0..low) as usize;
                    Molecule::paste(&u, &v, k).ok()
                }
            }
            _ => {
                if u.dim() < 1 {
                    None
                } else {
                    let k = rng.gen_range(0..u.dim());
                    let sign = if rng.gen() { Sign::Input } else { Sign::Output };
                    Some(u.boundary(sign, k))
                }
            }
        };
        if let Some(m) = candidate {
            if m.len() <= max_len && !pool.contains(&m) {
                pool.push(m);
            }
        }
    }
    // favour molecules built late, which tend to be larger
    let start = pool.len() / 2;
    pool[rng.gen_range(start..pool.len())].clone()
}

/// The same poset with positions shuffled independently in each dimension.
pub fn shuffle<R: Rng>(poset: &OgPoset, rng: &mut R) -> OgPoset {
    let perm: Vec<Vec<usize>> = poset
        .size()
        .into_iter()
        .map(|n| {
            let mut p: Vec<usize> = (0..n).collect();
            p.shuffle(rng);
            p
        })
        .collect();
    poset.reorder(&perm).expect("a permutation")
}
