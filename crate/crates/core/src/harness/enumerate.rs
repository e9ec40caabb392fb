//! Brute-force enumeration of small connected graphs up to isomorphism.

use crate::graph::Graph;

fn pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect()
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut perm: Vec<usize> = (0..n).collect();
    heap_permute(&mut perm, n, &mut out);
    out
}

fn heap_permute(perm: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
    if k <= 1 {
        out.push(perm.clone());
        return;
    }
    for i in 0..k {
        heap_permute(perm, k - 1, out);
        let j = if k.is_multiple_of(2) { i } else { 0 };
        perm.swap(j, k - 1);
    }
}

fn connected(n: usize, pairs: &[(usize, usize)], mask: u32) -> bool {
    let mut reached = 1u32;
    loop {
        let before = reached;
        for (bit, &(a, b)) in pairs.iter().enumerate() {
            if mask >> bit & 1 == 1 && (reached >> a & 1 == 1 || reached >> b & 1 == 1) {
                reached |= 1 << a | 1 << b;
            }
        }
        if reached == before {
            return reached.count_ones() as usize == n;
        }
    }
}

/// One representative of every isomorphism class of connected graphs on
/// exactly `n` nodes, with sequential IDs. Canonical forms are minimal edge
/// masks over all relabelings, so this is only practical for `n <= 7`.
pub fn connected_graphs(n: usize) -> Vec<Graph> {
    assert!(n <= 7, "brute-force enumeration is limited to 7 nodes");
    if n == 0 {
        return Vec::new();
    }
    let pairs = pairs(n);
    let index = |a: usize, b: usize| pairs.iter().position(|&p| p == (a.min(b), a.max(b))).unwrap();
    let relabel: Vec<Vec<usize>> = permutations(n)
        .into_iter()
        .map(|p| pairs.iter().map(|&(a, b)| index(p[a], p[b])).collect())
        .collect();
    let mut seen = std::collections::HashSet::new();
    let mut out = Vec::new();
    for mask in 0..1u32 << pairs.len() {
        if !connected(n, &pairs, mask) {
            continue;
        }
        let canon = relabel
            .iter()
            .map(|map| {
                map.iter().enumerate().filter(|&(bit, _)| mask >> bit & 1 == 1).fold(0u32, |m, (_, &t)| m | 1 << t)
            })
            .min()
            .unwrap();
        if seen.insert(canon) {
            let edges = pairs
                .iter()
                .enumerate()
                .filter(|&(bit, _)| canon >> bit & 1 == 1)
                .map(|(_, &(a, b))| (a as u64, b as u64));
            out.push(Graph::sequential(n, edges).expect("enumerated graphs are simple"));
        }
    }
    out
}

/// Connected graphs on `1..=max_n` nodes.
pub fn connected_graphs_up_to(max_n: usize) -> Vec<Graph> {
    (1..=max_n).flat_map(connected_graphs).collect()
}
