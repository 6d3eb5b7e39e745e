//! Timing canonicalization on families of growing molecules.

use std::fmt::Write;
use std::str::FromStr;
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::molecule::{canonicalize, shuffle, ShapeError};
use crate::ogposet::{FaceData, FacePair, OgPoset};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    /// `n` arrows pasted end to end.
    Chain,
    /// An `n` by `n` grid of globes.
    Grid,
}

impl FromStr for Family {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "chain" => Ok(Family::Chain),
            "grid" => Ok(Family::Grid),
            _ => Err(format!("unknown family {s}; expected chain or grid")),
        }
    }
}

impl std::fmt::Display for Family {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Family::Chain => "chain",
            Family::Grid => "grid",
        })
    }
}

fn pair(i: usize, o: usize) -> FacePair {
    [vec![i], vec![o]]
}

pub fn chain(n: usize) -> OgPoset {
    let data: FaceData = vec![vec![[vec![], vec![]]; n + 1], (0..n).map(|i| pair(i, i + 1)).collect()];
    OgPoset::from_face_data(data).expect("a chain is well formed")
}

/// Columns of `h` globes stacked along their 1-boundaries, `w` columns side by side.
pub fn grid(w: usize, h: usize) -> OgPoset {
    let edge = |i: usize, j: usize| i * (h + 1) + j;
    let points = vec![[vec![], vec![]]; w + 1];
    let edges = (0..w).flat_map(|i| (0..=h).map(move |_| pair(i, i + 1))).collect();
    let cells = (0..w).flat_map(|i| (0..h).map(move |j| pair(edge(i, j), edge(i, j + 1)))).collect();
    let data: FaceData = if h == 0 { vec![points, edges] } else { vec![points, edges, cells] };
    OgPoset::from_face_data(data).expect("a grid is well formed")
}

impl Family {
    pub fn build(self, size: usize) -> OgPoset {
        match self {
            Family::Chain => chain(size),
            Family::Grid => grid(size, size),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Measurement {
    pub family: Family,
    pub size: usize,
    pub elements: usize,
    /// Face incidences, the edges of the Hasse diagram.
    pub edges: usize,
    pub millis: f64,
}

/// Canonicalizes a shuffled copy of each member, seeding the shuffle per size.
pub fn run(family: Family, sizes: &[usize], seed: u64) -> Result<Vec<Measurement>, ShapeError> {
    let mut out = Vec::with_capacity(sizes.len());
    for &size in sizes {
        let poset = family.build(size);
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ size as u64);
        let shuffled = shuffle(&poset, &mut rng);
        let start = Instant::now();
        let (canon, _) = canonicalize(&shuffled)?;
        let millis = start.elapsed().as_secs_f64() * 1000.0;
        debug_assert_eq!(canon.size(), poset.size());
        out.push(Measurement { family, size, elements: poset.len(), edges: poset.num_edges(), millis });
    }
    Ok(out)
}

/// Least-squares slope of log time against log elements.
pub fn fit_exponent(ms: &[Measurement]) -> Option<f64> {
    let pts: Vec<(f64, f64)> =
        ms.iter().filter(|m| m.millis > 0.0).map(|m| ((m.elements as f64).ln(), m.millis.ln())).collect();
    if pts.len() < 2 {
        return None;
    }
    let n = pts.len() as f64;
    let (mx, my) = (pts.iter().map(|p| p.0).sum::<f64>() / n, pts.iter().map(|p| p.1).sum::<f64>() / n);
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    (sxx > 0.0).then(|| sxy / sxx)
}

pub fn to_csv(ms: &[Measurement]) -> String {
    let mut out = String::from("family,size,elements,edges,millis\n");
    for m in ms {
        writeln!(out, "{},{},{},{},{:.3}", m.family, m.size, m.elements, m.edges, m.millis).unwrap();
    }
    out
}
