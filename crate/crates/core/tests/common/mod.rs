#![allow(dead_code)]

use mbqc_core::gf2::BitMatrix;
use mbqc_core::stabilizer::{Axis, GeneratorMatrix, MeasurementPlane};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_plane<R: Rng>(rng: &mut R) -> MeasurementPlane {
    let mut axes = Axis::ALL;
    axes.shuffle(rng);
    MeasurementPlane::new(axes[0], axes[1]).unwrap()
}

pub fn random_invertible<R: Rng>(rng: &mut R, n: usize) -> BitMatrix {
    let mut m = BitMatrix::identity(n);
    if n < 2 {
        return m;
    }
    for _ in 0..4 * n {
        let a = rng.gen_range(0..n);
        let b = rng.gen_range(0..n);
        if a != b {
            m.add_row(a, b);
        }
    }
    m
}

/// Every stabilizer state is a graph state up to local Cliffords, and local
/// Cliffords permute the letters X, Y, Z at each site.
pub fn random_letters<R: Rng>(rng: &mut R, n: usize) -> Vec<String> {
    let mut adj = vec![vec![false; n]; n];
    for a in 0..n {
        for b in a + 1..n {
            if rng.gen_bool(0.5) {
                adj[a][b] = true;
                adj[b][a] = true;
            }
        }
    }
    let perms: Vec<Vec<char>> = (0..n)
        .map(|_| {
            let mut p = vec!['X', 'Y', 'Z'];
            p.shuffle(rng);
            p
        })
        .collect();
    let image = |site: usize, c: char| match c {
        'X' => perms[site][0],
        'Y' => perms[site][1],
        'Z' => perms[site][2],
        other => other,
    };
    (0..n)
        .map(|a| {
            (0..n)
                .map(|b| {
                    let c = if a == b {
                        'X'
                    } else if adj[a][b] {
                        'Z'
                    } else {
                        'I'
                    };
                    image(b, c)
                })
                .collect()
        })
        .collect()
}

pub fn random_generator<R: Rng>(rng: &mut R, n: usize) -> GeneratorMatrix {
    let letters = random_letters(rng, n);
    let planes: Vec<MeasurementPlane> = (0..n).map(|_| random_plane(rng)).collect();
    let g = GeneratorMatrix::from_letters(&letters, &planes).unwrap();
    g.with_rows(&random_invertible(rng, n))
}

/// Rank by elimination on machine words; kept separate from `BitMatrix`.
pub fn rank_of_columns(columns: &[u64]) -> usize {
    let mut basis: Vec<u64> = Vec::new();
    for &c in columns {
        let mut x = c;
        for &b in &basis {
            x = x.min(x ^ b);
        }
        if x != 0 {
            basis.push(x);
            basis.sort_unstable_by(|a, b| b.cmp(a));
        }
    }
    basis.len()
}

/// Columns of `(Φ|S)` packed with generator `r` at bit `r`.
pub fn packed_columns(g: &GeneratorMatrix) -> Vec<u64> {
    let c = g.combined();
    (0..c.cols())
        .map(|col| (0..c.rows()).fold(0u64, |acc, r| acc | (c.get(r, col) as u64) << r))
        .collect()
}

/// Number of invertible `n`-column subsets of `(Φ|S)`.
pub fn brute_force_basis_count(g: &GeneratorMatrix) -> usize {
    let cols = packed_columns(g);
    let n = g.n();
    let total = cols.len();
    (0u32..1 << total)
        .filter(|mask| mask.count_ones() as usize == n)
        .filter(|mask| {
            let chosen: Vec<u64> = (0..total)
                .filter(|c| mask >> c & 1 == 1)
                .map(|c| cols[c])
                .collect();
            rank_of_columns(&chosen) == n
        })
        .count()
}

/// Reachability by depth-first search; `out[a][b]` iff a path `a → … → b`
/// of length ≥ 1 follows edges `a → b` with `T_ba = 1`.
pub fn reachability(t: &BitMatrix) -> Vec<Vec<bool>> {
    let n = t.rows();
    (0..n)
        .map(|a| {
            let mut seen = vec![false; n];
            let mut stack: Vec<usize> = (0..n).filter(|&b| t.get(b, a)).collect();
            while let Some(x) = stack.pop() {
                if seen[x] {
                    continue;
                }
                seen[x] = true;
                stack.extend((0..n).filter(|&b| t.get(b, x)));
            }
            seen
        })
        .collect()
}

pub fn random_matrix<R: Rng>(rng: &mut R, rows: usize, cols: usize, density: f64) -> BitMatrix {
    BitMatrix::from_fn(rows, cols, |_, _| rng.gen_bool(density))
}
