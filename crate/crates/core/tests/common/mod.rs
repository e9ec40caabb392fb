#![allow(dead_code)]

use congest_rule::graph::generate::{assign_ids, d_regular, erdos_renyi, ring, IdMode};
use congest_rule::graph::Graph;

/// 500 seeded graphs: Erdos-Renyi with p in {0.02, 0.1, 0.5}, rings, and
/// 3- and 5-regular graphs, all with n <= 300, alternating ID modes.
pub fn corpus() -> Vec<(String, Graph)> {
    (0..500u64)
        .map(|i| {
            let k = i as usize;
            let (name, g) = match i % 6 {
                0 => {
                    let n = 30 + (k * 7) % 271;
                    (format!("er(n={n},p=0.02)"), erdos_renyi(n, 0.02, i).unwrap())
                }
                1 => {
                    let n = 20 + (k * 11) % 181;
                    (format!("er(n={n},p=0.1)"), erdos_renyi(n, 0.1, i).unwrap())
                }
                2 => {
                    let n = 10 + (k * 13) % 111;
                    (format!("er(n={n},p=0.5)"), erdos_renyi(n, 0.5, i).unwrap())
                }
                3 => {
                    let n = 3 + (k * 17) % 298;
                    (format!("ring({n})"), ring(n))
                }
                4 => {
                    let n = 2 * (5 + (k * 19) % 146);
                    (format!("3-regular({n})"), d_regular(n, 3, i).unwrap())
                }
                _ => {
                    let n = 2 * (5 + (k * 23) % 146);
                    (format!("5-regular({n})"), d_regular(n, 5, i).unwrap())
                }
            };
            let mode = if (i / 6) % 2 == 0 { IdMode::Sequential } else { IdMode::Random };
            (format!("#{i} {name} {mode:?}"), assign_ids(&g, mode, i))
        })
        .collect()
}
