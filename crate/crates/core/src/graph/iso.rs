use serde::{Deserialize, Serialize};

use crate::bitset::VertexSet;

use super::Graph;

/// Induced embedding of a pattern: pattern vertex `i` maps to host vertex `map[i]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Embedding {
    pub map: Vec<usize>,
}

impl Embedding {
    pub fn image(&self) -> VertexSet {
        self.map.iter().collect()
    }

    /// True if the map is injective and preserves adjacency and non-adjacency.
    pub fn is_valid(&self, host: &Graph, pattern: &Graph) -> bool {
        let m = &self.map;
        m.len() == pattern.n()
            && m.iter().all(|&v| v < host.n())
            && self.image().len() == m.len()
            && (0..m.len()).all(|i| {
                (i + 1..m.len()).all(|j| pattern.has_edge(i, j) == host.has_edge(m[i], m[j]))
            })
    }
}

/// The lexicographically least induced embedding of `pattern` into `host`.
pub fn contains_induced(host: &Graph, pattern: &Graph) -> Option<Embedding> {
    if pattern.n() > host.n() {
        return None;
    }
    let mut map = Vec::with_capacity(pattern.n());
    extend(host, pattern, &mut map, VertexSet::EMPTY).then_some(Embedding { map })
}

fn extend(host: &Graph, pattern: &Graph, map: &mut Vec<usize>, used: VertexSet) -> bool {
    let i = map.len();
    if i == pattern.n() {
        return true;
    }
    // host vertices adjacent to the images of earlier pattern neighbours
    // and non-adjacent to the images of earlier non-neighbours
    let mut cand = host.vertices().difference(used);
    for (j, &hv) in map.iter().enumerate() {
        cand = if pattern.has_edge(i, j) {
            cand.intersection(host.neighbors(hv))
        } else {
            cand.difference(host.neighbors(hv))
        };
    }
    let need = pattern.degree(i);
    for v in cand.iter() {
        if host.degree(v) < need {
            continue;
        }
        map.push(v);
        if extend(host, pattern, map, used.with(v)) {
            return true;
        }
        map.pop();
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::build_named;

    fn claw() -> Graph {
        Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3)]).unwrap()
    }

    #[test]
    fn s3_is_claw_free() {
        let s3 = build_named("S_n", &[3]).unwrap();
        assert_eq!(contains_induced(&s3, &claw()), None);
    }

    #[test]
    fn bars3plus_contains_bars3() {
        let host = build_named("barS3plus", &[]).unwrap();
        let pat = build_named("barS3", &[]).unwrap();
        let e = contains_induced(&host, &pat).unwrap();
        assert!(e.is_valid(&host, &pat));
        assert_eq!(e.map, vec![0, 1, 2, 3, 4, 5]);
    }

    #[test]
    fn single_vertex_pattern() {
        assert!(contains_induced(&Graph::empty(0), &Graph::empty(1)).is_none());
        assert_eq!(contains_induced(&Graph::complete(3), &Graph::empty(1)).unwrap().map, vec![0]);
        assert!(contains_induced(&Graph::empty(3), &Graph::empty(0)).is_some());
    }

    #[test]
    fn lexicographically_least() {
        let c5 = build_named("Cn", &[5]).unwrap();
        let p3 = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(contains_induced(&c5, &p3).unwrap().map, vec![0, 1, 2]);
        let k2 = Graph::empty(2);
        assert_eq!(contains_induced(&c5, &k2).unwrap().map, vec![0, 2]);
    }
}
