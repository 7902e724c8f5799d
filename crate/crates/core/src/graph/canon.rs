//! Canonical labeling by colour refinement plus individualization.
//!
//! Every leaf of the search tree gives a vertex ordering; the canonical code
//! is the lexicographically least adjacency encoding among all leaves. No
//! automorphism pruning, which is fine at the sizes this crate handles.

use std::fmt;

use super::Graph;

/// Isomorphism-invariant code of a (vertex-coloured) graph.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalCode {
    n: usize,
    class_sizes: Vec<usize>,
    bits: Vec<u64>,
}

impl CanonicalCode {
    /// Compact hex rendering, stable across runs and platforms.
    pub fn to_hex(&self) -> String {
        let mut s = format!("{}", self.n);
        for c in &self.class_sizes {
            s.push_str(&format!(".{c}"));
        }
        s.push(':');
        for w in &self.bits {
            s.push_str(&format!("{w:016x}"));
        }
        s
    }
}

impl fmt::Debug for CanonicalCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_hex())
    }
}

/// Canonical code and a canonical vertex ordering (`order[i]` is the vertex
/// placed at position `i`).
pub fn canonical_code(g: &Graph) -> (CanonicalCode, Vec<usize>) {
    canonical_code_colored(g, &vec![0; g.n()])
}

/// Like [`canonical_code`], but isomorphisms must preserve `colors`.
pub fn canonical_code_colored(g: &Graph, colors: &[u32]) -> (CanonicalCode, Vec<usize>) {
    assert_eq!(colors.len(), g.n());
    let mut palette: Vec<u32> = colors.to_vec();
    palette.sort_unstable();
    palette.dedup();
    let cells: Vec<Vec<usize>> = palette
        .iter()
        .map(|&c| (0..g.n()).filter(|&v| colors[v] == c).collect())
        .collect();
    let class_sizes = cells.iter().map(Vec::len).collect();
    let mut best: Option<(Vec<u64>, Vec<usize>)> = None;
    search(g, cells, &mut best);
    let (bits, order) = best.unwrap_or_default();
    (
        CanonicalCode {
            n: g.n(),
            class_sizes,
            bits,
        },
        order,
    )
}

fn refine(g: &Graph, mut cells: Vec<Vec<usize>>) -> Vec<Vec<usize>> {
    loop {
        let mut cell_of = vec![0usize; g.n()];
        for (i, cell) in cells.iter().enumerate() {
            for &v in cell {
                cell_of[v] = i;
            }
        }
        let k = cells.len();
        let mut next = Vec::with_capacity(k);
        for cell in &cells {
            if cell.len() == 1 {
                next.push(cell.clone());
                continue;
            }
            let mut keyed: Vec<(Vec<usize>, usize)> = cell
                .iter()
                .map(|&v| {
                    let mut key = vec![0usize; k];
                    for u in g.neighbors(v).iter() {
                        key[cell_of[u]] += 1;
                    }
                    (key, v)
                })
                .collect();
            keyed.sort();
            let mut start = 0;
            while start < keyed.len() {
                let mut end = start + 1;
                while end < keyed.len() && keyed[end].0 == keyed[start].0 {
                    end += 1;
                }
                next.push(keyed[start..end].iter().map(|(_, v)| *v).collect());
                start = end;
            }
        }
        if next.len() == cells.len() {
            return next;
        }
        cells = next;
    }
}

fn encode(g: &Graph, order: &[usize]) -> Vec<u64> {
    let n = order.len();
    let mut bits = vec![0u64; (n * n.saturating_sub(1) / 2).div_ceil(64)];
    let mut pos = 0;
    for i in 0..n {
        for j in i + 1..n {
            if g.has_edge(order[i], order[j]) {
                bits[pos / 64] |= 1u64 << (63 - pos % 64);
            }
            pos += 1;
        }
    }
    bits
}

fn search(g: &Graph, cells: Vec<Vec<usize>>, best: &mut Option<(Vec<u64>, Vec<usize>)>) {
    let cells = refine(g, cells);
    match cells.iter().position(|c| c.len() > 1) {
        None => {
            let order: Vec<usize> = cells.into_iter().flatten().collect();
            let code = encode(g, &order);
            if best.as_ref().is_none_or(|(b, _)| code < *b) {
                *best = Some((code, order));
            }
        }
        Some(i) => {
            for &v in &cells[i] {
                let mut next = Vec::with_capacity(cells.len() + 1);
                next.extend_from_slice(&cells[..i]);
                next.push(vec![v]);
                next.push(cells[i].iter().copied().filter(|&u| u != v).collect());
                next.extend_from_slice(&cells[i + 1..]);
                search(g, next, best);
            }
        }
    }
}
