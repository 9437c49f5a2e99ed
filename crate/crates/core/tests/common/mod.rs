#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::HashSet;
use wheelfree::Graph;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Connected graph on `2..=max_n` vertices: a random spanning tree plus
/// independent extra edges.
pub fn random_connected(rng: &mut ChaCha8Rng, max_n: usize) -> Graph {
    let n = rng.gen_range(2..=max_n);
    let p: f64 = rng.gen_range(0.05..0.9);
    let mut edges = Vec::new();
    for v in 1..n {
        edges.push((rng.gen_range(0..v), v));
    }
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    edges.sort_unstable();
    edges.dedup();
    Graph::from_edges(n, &edges).unwrap()
}

pub fn random_graph(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, &edges).unwrap()
}

pub fn random_permutation(rng: &mut ChaCha8Rng, n: usize) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        p.swap(i, rng.gen_range(0..=i));
    }
    p
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for v in 0..used.len() {
            if !used[v] {
                used[v] = true;
                prefix.push(v);
                go(prefix, used, out);
                prefix.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// Number of isomorphism classes among the labeled graphs on `n` vertices
/// accepted by `keep`, deduplicated by the minimum edge mask over all
/// relabelings. Independent of the crate's canonical labeling.
pub fn labeled_class_count(n: usize, keep: impl Fn(&Graph) -> bool) -> usize {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    let index = |u: usize, v: usize| pairs.iter().position(|&p| p == (u.min(v), u.max(v))).unwrap();
    // image of each pair index under each permutation
    let maps: Vec<Vec<usize>> = permutations(n)
        .iter()
        .map(|p| pairs.iter().map(|&(u, v)| index(p[u], p[v])).collect())
        .collect();
    let mut seen = vec![false; 1usize << pairs.len()];
    let mut classes = 0;
    for mask in 0..1u32 << pairs.len() {
        if seen[mask as usize] {
            continue;
        }
        let orbit: HashSet<u32> = maps
            .iter()
            .map(|m| (0..pairs.len()).filter(|&i| mask >> i & 1 == 1).fold(0u32, |acc, i| acc | 1 << m[i]))
            .collect();
        for &img in &orbit {
            seen[img as usize] = true;
        }
        let edges: Vec<(usize, usize)> = (0..pairs.len()).filter(|&i| mask >> i & 1 == 1).map(|i| pairs[i]).collect();
        if keep(&Graph::from_edges(n, &edges).unwrap()) {
            classes += 1;
        }
    }
    classes
}

/// Burnside count of unlabeled graphs on `n` vertices: the average over all
/// permutations of 2^(cycles induced on vertex pairs).
pub fn burnside_graph_count(n: usize) -> u128 {
    let perms = permutations(n);
    let mut total: u128 = 0;
    for p in &perms {
        let mut visited = vec![vec![false; n]; n];
        let mut cycles = 0u32;
        for u in 0..n {
            for v in u + 1..n {
                if visited[u][v] {
                    continue;
                }
                cycles += 1;
                let (mut a, mut b) = (u, v);
                while !visited[a][b] {
                    visited[a][b] = true;
                    let (x, y) = (p[a], p[b]);
                    (a, b) = (x.min(y), x.max(y));
                }
            }
        }
        total += 1u128 << cycles;
    }
    total / perms.len() as u128
}
