//! Integral circulations with lower and upper arc bounds.

use std::collections::VecDeque;

/// An arc `from -> to` whose flow must lie in `[lo, hi]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BoundedArc {
    pub from: usize,
    pub to: usize,
    pub lo: i64,
    pub hi: i64,
}

struct Residual {
    head: Vec<usize>,
    cap: Vec<i64>,
    adj: Vec<Vec<usize>>,
}

impl Residual {
    fn new(n: usize) -> Self {
        Residual {
            head: Vec::new(),
            cap: Vec::new(),
            adj: vec![Vec::new(); n],
        }
    }

    fn add(&mut self, u: usize, v: usize, cap: i64) -> usize {
        let id = self.head.len();
        self.head.push(v);
        self.cap.push(cap);
        self.adj[u].push(id);
        self.head.push(u);
        self.cap.push(0);
        self.adj[v].push(id + 1);
        id
    }

    // Edmonds-Karp; augmenting paths are found by BFS in insertion order.
    fn max_flow(&mut self, s: usize, t: usize) -> i64 {
        let n = self.adj.len();
        let mut total = 0;
        loop {
            let mut via = vec![usize::MAX; n];
            let mut seen = vec![false; n];
            seen[s] = true;
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for &e in &self.adj[u] {
                    let v = self.head[e];
                    if !seen[v] && self.cap[e] > 0 {
                        seen[v] = true;
                        via[v] = e;
                        queue.push_back(v);
                    }
                }
            }
            if !seen[t] {
                return total;
            }
            let mut push = i64::MAX;
            let mut v = t;
            while v != s {
                let e = via[v];
                push = push.min(self.cap[e]);
                v = self.head[e ^ 1];
            }
            let mut v = t;
            while v != s {
                let e = via[v];
                self.cap[e] -= push;
                self.cap[e ^ 1] += push;
                v = self.head[e ^ 1];
            }
            total += push;
        }
    }
}

/// An integral circulation on `n` vertices meeting every arc's bounds, or
/// `None` when none exists.
pub fn feasible_circulation(n: usize, arcs: &[BoundedArc]) -> Option<Vec<i64>> {
    if arcs.iter().any(|a| a.lo > a.hi) {
        return None;
    }
    let (s, t) = (n, n + 1);
    let mut r = Residual::new(n + 2);
    let mut excess = vec![0i64; n];
    let ids: Vec<usize> = arcs
        .iter()
        .map(|a| {
            excess[a.to] += a.lo;
            excess[a.from] -= a.lo;
            r.add(a.from, a.to, a.hi - a.lo)
        })
        .collect();
    let mut need = 0;
    for (v, &e) in excess.iter().enumerate() {
        if e > 0 {
            r.add(s, v, e);
            need += e;
        } else if e < 0 {
            r.add(v, t, -e);
        }
    }
    if r.max_flow(s, t) != need {
        return None;
    }
    Some(
        arcs.iter()
            .zip(&ids)
            .map(|(a, &id)| a.lo + r.cap[id ^ 1])
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    fn conserved(n: usize, arcs: &[BoundedArc], f: &[i64]) -> bool {
        let mut bal = vec![0; n];
        for (a, &x) in arcs.iter().zip(f) {
            bal[a.from] -= x;
            bal[a.to] += x;
        }
        bal.iter().all(|&b| b == 0)
    }

    // Exhaustive search over all integral assignments within the bounds.
    fn brute(n: usize, arcs: &[BoundedArc]) -> bool {
        fn go(i: usize, n: usize, arcs: &[BoundedArc], f: &mut Vec<i64>) -> bool {
            if i == arcs.len() {
                let mut bal = vec![0; n];
                for (a, &x) in arcs.iter().zip(f.iter()) {
                    bal[a.from] -= x;
                    bal[a.to] += x;
                }
                return bal.iter().all(|&b| b == 0);
            }
            for x in arcs[i].lo..=arcs[i].hi {
                f.push(x);
                if go(i + 1, n, arcs, f) {
                    return true;
                }
                f.pop();
            }
            false
        }
        go(0, n, arcs, &mut Vec::new())
    }

    #[test]
    fn triangle() {
        let arcs = [
            BoundedArc { from: 0, to: 1, lo: 1, hi: 2 },
            BoundedArc { from: 1, to: 2, lo: 2, hi: 3 },
            BoundedArc { from: 2, to: 0, lo: 0, hi: 2 },
        ];
        assert_eq!(feasible_circulation(3, &arcs), Some(vec![2, 2, 2]));
        let bad = [
            BoundedArc { from: 0, to: 1, lo: 1, hi: 1 },
            BoundedArc { from: 1, to: 0, lo: 2, hi: 2 },
        ];
        assert_eq!(feasible_circulation(2, &bad), None);
    }

    #[test]
    fn agrees_with_exhaustive_search() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..300 {
            let n = rng.gen_range(2..=4);
            let arcs: Vec<BoundedArc> = (0..rng.gen_range(1..=6))
                .map(|_| {
                    let from = rng.gen_range(0..n);
                    let to = (from + rng.gen_range(1..n)) % n;
                    let lo = rng.gen_range(0..=2);
                    BoundedArc { from, to, lo, hi: lo + rng.gen_range(0..=2) }
                })
                .collect();
            let got = feasible_circulation(n, &arcs);
            assert_eq!(got.is_some(), brute(n, &arcs), "{arcs:?}");
            if let Some(f) = got {
                assert!(conserved(n, &arcs, &f));
                assert!(arcs.iter().zip(&f).all(|(a, &x)| a.lo <= x && x <= a.hi));
            }
        }
    }
}
