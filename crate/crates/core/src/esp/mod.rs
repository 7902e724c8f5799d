//! Equitable subpartitions and the ESP property.
//!
//! A multiset `L` of cliques with vertex coverage `d` has an equitable
//! subpartition when two multisets `L1`, `L2` of cliques satisfy
//! `|L1| + |L2| <= |L|`, `d1 + d2 >= d` and `min(d1, d2) >= floor(d / 2)`.
//! Removing vertices from cliques keeps them cliques, so it is enough to
//! hit exact coverages `t1 + t2 = d` with `t1, t2` between `floor(d / 2)`
//! and `ceil(d / 2)`. The fewest cliques covering `t` with multiplicity is
//! computed exactly by a memoized branching over maximal cliques.

mod circulation;
mod consecutive;
mod incomparability;

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

pub use circulation::{circulation_split, is_circulation, matching_degree_split};
pub use consecutive::consecutive_clique_family;
pub use incomparability::incomparability_partition;

use crate::bitset::{combinations, VertexSet};
use crate::budget::Budget;
use crate::cliques::maximal_cliques;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::invariants::is_perfect;

/// A multiset of cliques, stored as sorted distinct cliques with multiplicities.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CliqueMultiset {
    entries: BTreeMap<VertexSet, u32>,
}

impl CliqueMultiset {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_cliques(cliques: impl IntoIterator<Item = VertexSet>) -> Self {
        let mut m = Self::new();
        for c in cliques {
            m.push(c, 1);
        }
        m
    }

    pub fn push(&mut self, clique: VertexSet, mult: u32) {
        if mult > 0 {
            *self.entries.entry(clique).or_insert(0) += mult;
        }
    }

    pub fn entries(&self) -> impl Iterator<Item = (VertexSet, u32)> + '_ {
        self.entries.iter().map(|(&c, &m)| (c, m))
    }

    /// `|L|`, counted with multiplicity.
    pub fn size(&self) -> u64 {
        self.entries.values().map(|&m| m as u64).sum()
    }

    /// `d_L(v)` for every vertex below `n`.
    pub fn degrees(&self, n: usize) -> Vec<i64> {
        let mut d = vec![0; n];
        for (c, m) in self.entries() {
            for v in c.iter().filter(|&v| v < n) {
                d[v] += m as i64;
            }
        }
        d
    }

    pub fn validate(&self, g: &Graph) -> Result<()> {
        for (c, _) in self.entries() {
            g.check_set(c)?;
            if !g.is_clique(c) {
                return Err(Error::Precondition(format!("{c:?} is not a clique")));
            }
        }
        Ok(())
    }

    /// Text form: one `k <mult> v1 v2 ...` line per distinct clique.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for (c, m) in self.entries() {
            s.push_str(&format!("k {m}"));
            for v in c.iter() {
                s.push_str(&format!(" {v}"));
            }
            s.push('\n');
        }
        s
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut m = Self::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut toks = line.split_whitespace();
            if toks.next() != Some("k") {
                return Err(Error::parse(i + 1, "expected `k <mult> v1 v2 ...`"));
            }
            let nums: Vec<usize> = toks
                .map(|t| t.parse().map_err(|_| Error::parse(i + 1, format!("bad number `{t}`"))))
                .collect::<Result<_>>()?;
            let (&mult, verts) = nums
                .split_first()
                .ok_or_else(|| Error::parse(i + 1, "missing multiplicity"))?;
            if mult == 0 || mult > u32::MAX as usize {
                return Err(Error::parse(i + 1, "multiplicity must be positive"));
            }
            if let Some(&v) = verts.iter().find(|&&v| v >= crate::bitset::MAX_VERTICES) {
                return Err(Error::parse(i + 1, format!("vertex {v} out of range")));
            }
            m.push(verts.iter().collect(), mult as u32);
        }
        Ok(m)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EquitableSubpartition {
    pub part1: CliqueMultiset,
    pub part2: CliqueMultiset,
}

/// The first condition an alleged equitable subpartition breaks.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum EspViolation {
    /// `|L1| + |L2| > |L|`.
    Size { used: u64, available: u64 },
    /// `d1(v) + d2(v) < d(v)`.
    Coverage { vertex: usize, covered: i64, required: i64 },
    /// `d_side(v) < floor(d(v) / 2)`.
    Balance { vertex: usize, side: u8, got: i64, required: i64 },
    /// `|L_side| > ceil(|L| / 2)` in the strong variant.
    Cardinality { side: u8, size: u64, cap: u64 },
}

pub fn check_equitable_subpartition(
    g: &Graph,
    lambda: &CliqueMultiset,
    part1: &CliqueMultiset,
    part2: &CliqueMultiset,
) -> Result<Option<EspViolation>> {
    check_parts(g, lambda, part1, part2, false)
}

/// As [`check_equitable_subpartition`], also capping each side at `ceil(|L| / 2)`.
pub fn check_strong_equitable_subpartition(
    g: &Graph,
    lambda: &CliqueMultiset,
    part1: &CliqueMultiset,
    part2: &CliqueMultiset,
) -> Result<Option<EspViolation>> {
    check_parts(g, lambda, part1, part2, true)
}

fn check_parts(
    g: &Graph,
    lambda: &CliqueMultiset,
    part1: &CliqueMultiset,
    part2: &CliqueMultiset,
    strong: bool,
) -> Result<Option<EspViolation>> {
    for m in [lambda, part1, part2] {
        m.validate(g)?;
    }
    let k = lambda.size();
    let (s1, s2) = (part1.size(), part2.size());
    if s1 + s2 > k {
        return Ok(Some(EspViolation::Size { used: s1 + s2, available: k }));
    }
    let n = g.n();
    let (d, d1, d2) = (lambda.degrees(n), part1.degrees(n), part2.degrees(n));
    for v in 0..n {
        if d1[v] + d2[v] < d[v] {
            return Ok(Some(EspViolation::Coverage {
                vertex: v,
                covered: d1[v] + d2[v],
                required: d[v],
            }));
        }
    }
    for v in 0..n {
        for (side, got) in [(1, d1[v]), (2, d2[v])] {
            if got < d[v] / 2 {
                return Ok(Some(EspViolation::Balance {
                    vertex: v,
                    side,
                    got,
                    required: d[v] / 2,
                }));
            }
        }
    }
    if strong {
        let cap = k.div_ceil(2);
        for (side, size) in [(1, s1), (2, s2)] {
            if size > cap {
                return Ok(Some(EspViolation::Cardinality { side, size, cap }));
            }
        }
    }
    Ok(None)
}

/// Fewest cliques covering a demand vector with multiplicity, memoized
/// across calls on one graph.
struct Coverer {
    cliques: Vec<VertexSet>,
    through: Vec<Vec<usize>>,
    memo: HashMap<Vec<u16>, u32>,
    limit: u64,
}

impl Coverer {
    fn new(g: &Graph, budget: &Budget) -> Result<Self> {
        let cliques = maximal_cliques(g, budget)?.cliques;
        let through = (0..g.n())
            .map(|v| (0..cliques.len()).filter(|&i| cliques[i].contains(v)).collect())
            .collect();
        Ok(Coverer {
            cliques,
            through,
            memo: HashMap::new(),
            limit: budget.esp_max_states,
        })
    }

    fn kappa(&mut self, r: &[u16]) -> Result<u32> {
        let Some(v) = r.iter().position(|&x| x > 0) else {
            return Ok(0);
        };
        if let Some(&k) = self.memo.get(r) {
            return Ok(k);
        }
        if self.memo.len() as u64 >= self.limit {
            return Err(Error::budget("clique cover states", self.limit));
        }
        let mut best = u32::MAX;
        for idx in 0..self.through[v].len() {
            let c = self.cliques[self.through[v][idx]];
            let next = subtract(r, c);
            best = best.min(1 + self.kappa(&next)?);
        }
        self.memo.insert(r.to_vec(), best);
        Ok(best)
    }

    /// A cover attaining `kappa(t)`, trimmed so that coverage is exactly `t`.
    fn exact_cover(&mut self, t: &[u16]) -> Result<Vec<VertexSet>> {
        let mut r = t.to_vec();
        let mut picked = Vec::new();
        while let Some(v) = r.iter().position(|&x| x > 0) {
            let goal = self.kappa(&r)?;
            let mut chosen = None;
            for idx in 0..self.through[v].len() {
                let c = self.cliques[self.through[v][idx]];
                let next = subtract(&r, c);
                if 1 + self.kappa(&next)? == goal {
                    chosen = Some((c, next));
                    break;
                }
            }
            let (c, next) = chosen.ok_or_else(|| Error::Internal("cover reconstruction failed".into()))?;
            picked.push(c);
            r = next;
        }
        let mut need = t.to_vec();
        let mut out = Vec::new();
        for c in picked {
            let sub: VertexSet = c.iter().filter(|&v| need[v] > 0).collect();
            for v in sub.iter() {
                need[v] -= 1;
            }
            if !sub.is_empty() {
                out.push(sub);
            }
        }
        Ok(out)
    }

    /// Searches target splits of `d`; the first odd coordinate's larger half
    /// always goes to side 1, the rest follow binary counting order.
    fn split(&mut self, d: &[u16], k: u64, strong: bool) -> Result<Option<(Vec<u16>, Vec<u16>)>> {
        let odd: Vec<usize> = (0..d.len()).filter(|&v| d[v] % 2 == 1).collect();
        if odd.len() > 40 {
            return Err(Error::budget("odd coordinates in a split search", 40));
        }
        let free = odd.len().saturating_sub(1);
        let cap = if strong { k.div_ceil(2) } else { k };
        for mask in 0u64..1 << free {
            let mut t1: Vec<u16> = d.iter().map(|&x| x / 2).collect();
            for (i, &v) in odd.iter().enumerate() {
                if i == 0 || mask >> (i - 1) & 1 == 0 {
                    t1[v] += 1;
                }
            }
            let t2: Vec<u16> = d.iter().zip(&t1).map(|(&a, &b)| a - b).collect();
            let k1 = self.kappa(&t1)? as u64;
            if k1 > cap {
                continue;
            }
            let k2 = self.kappa(&t2)? as u64;
            if k2 <= cap && k1 + k2 <= k {
                return Ok(Some((t1, t2)));
            }
        }
        Ok(None)
    }
}

fn subtract(r: &[u16], c: VertexSet) -> Vec<u16> {
    let mut next = r.to_vec();
    for v in c.iter() {
        next[v] = next[v].saturating_sub(1);
    }
    next
}

fn demand(d: &[i64]) -> Result<Vec<u16>> {
    d.iter()
        .map(|&x| u16::try_from(x).map_err(|_| Error::budget("clique multiplicity per vertex", u16::MAX as u64)))
        .collect()
}

/// An equitable subpartition of `lambda` whose cliques cover exactly
/// `floor`/`ceil` halves of `d_L`, or `None` when none exists.
pub fn find_equitable_subpartition(
    g: &Graph,
    lambda: &CliqueMultiset,
    budget: &Budget,
) -> Result<Option<EquitableSubpartition>> {
    find_split(g, lambda, false, budget)
}

/// As [`find_equitable_subpartition`] with both sides of size at most `ceil(|L| / 2)`.
pub fn find_strong_equitable_subpartition(
    g: &Graph,
    lambda: &CliqueMultiset,
    budget: &Budget,
) -> Result<Option<EquitableSubpartition>> {
    find_split(g, lambda, true, budget)
}

fn find_split(g: &Graph, lambda: &CliqueMultiset, strong: bool, budget: &Budget) -> Result<Option<EquitableSubpartition>> {
    lambda.validate(g)?;
    let mut cov = Coverer::new(g, budget)?;
    let d = demand(&lambda.degrees(g.n()))?;
    match cov.split(&d, lambda.size(), strong)? {
        None => Ok(None),
        Some((t1, t2)) => Ok(Some(EquitableSubpartition {
            part1: CliqueMultiset::from_cliques(cov.exact_cover(&t1)?),
            part2: CliqueMultiset::from_cliques(cov.exact_cover(&t2)?),
        })),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EspMode {
    /// Every set of maximal cliques.
    Direct,
    /// Every replication vector `d <= c_G`, for perfect graphs.
    PerfectReform,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EspWitness {
    /// A set of maximal cliques with no equitable subpartition.
    Cliques(Vec<VertexSet>),
    /// A vector `d` for which no `d'` in the box works.
    Replication(Vec<i64>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EspReport {
    pub esp: bool,
    pub witness: Option<EspWitness>,
    /// Sets of cliques or replication vectors examined.
    pub checked: u64,
}

/// Whether every set of maximal cliques (direct mode) or every `d <= c_G`
/// (reform mode) passes. Sets are tried by size, then lexicographically in
/// clique order; vectors by coordinate sum, then lexicographically.
pub fn is_esp(g: &Graph, mode: EspMode, budget: &Budget) -> Result<EspReport> {
    match mode {
        EspMode::Direct => direct(g, false, budget),
        EspMode::PerfectReform => reform(g, budget),
    }
}

/// Every set of maximal cliques has an equitable subpartition with both
/// sides of size at most `ceil(|L| / 2)`.
pub fn is_strong_esp(g: &Graph, budget: &Budget) -> Result<EspReport> {
    direct(g, true, budget)
}

fn direct(g: &Graph, strong: bool, budget: &Budget) -> Result<EspReport> {
    let mut cov = Coverer::new(g, budget)?;
    let m = cov.cliques.len();
    if m > budget.esp_max_cliques {
        return Err(Error::budget(format!("ESP test over {m} maximal cliques"), budget.esp_max_cliques as u64));
    }
    let mut checked = 0;
    for size in 1..=m {
        for pick in combinations(m, size) {
            checked += 1;
            let mut d = vec![0u16; g.n()];
            for &i in &pick {
                for v in cov.cliques[i].iter() {
                    d[v] += 1;
                }
            }
            if cov.split(&d, size as u64, strong)?.is_none() {
                let witness = pick.iter().map(|&i| cov.cliques[i]).collect();
                return Ok(EspReport {
                    esp: false,
                    witness: Some(EspWitness::Cliques(witness)),
                    checked,
                });
            }
        }
    }
    Ok(EspReport {
        esp: true,
        witness: None,
        checked,
    })
}

/// `alpha(G^d)` as the heaviest maximal stable set under `d`.
struct StableWeights {
    stables: Vec<VertexSet>,
}

impl StableWeights {
    fn alpha(&self, d: &[i64]) -> i64 {
        self.stables
            .iter()
            .map(|s| s.iter().map(|v| d[v]).sum())
            .max()
            .unwrap_or(0)
    }
}

/// Whether some `d'` between `floor(d / 2)` and `ceil(d / 2)` has
/// `alpha(G^d') + alpha(G^(d - d')) <= alpha(G^d)`.
fn box_split_exists(sw: &StableWeights, d: &[i64]) -> bool {
    let target = sw.alpha(d);
    let odd: Vec<usize> = (0..d.len()).filter(|&v| d[v] % 2 == 1).collect();
    let free = odd.len().saturating_sub(1);
    (0u64..1 << free).any(|mask| {
        let mut d1: Vec<i64> = d.iter().map(|&x| x / 2).collect();
        for (i, &v) in odd.iter().enumerate() {
            if i == 0 || mask >> (i - 1) & 1 == 0 {
                d1[v] += 1;
            }
        }
        let d2: Vec<i64> = d.iter().zip(&d1).map(|(&a, &b)| a - b).collect();
        sw.alpha(&d1) + sw.alpha(&d2) <= target
    })
}

fn reform(g: &Graph, budget: &Budget) -> Result<EspReport> {
    if !is_perfect(g, budget)?.perfect {
        return Err(Error::Precondition("the replication test needs a perfect graph".into()));
    }
    let fam = maximal_cliques(g, budget)?;
    let c = fam.counts(g.n());
    let points = c.iter().try_fold(1u64, |acc, &x| acc.checked_mul(x as u64 + 1));
    match points {
        Some(p) if p <= budget.reform_max_points => {}
        _ => return Err(Error::budget("replication vectors", budget.reform_max_points)),
    }
    let sw = StableWeights {
        stables: maximal_cliques(&g.complement(), budget)?.cliques,
    };
    let total: i64 = c.iter().sum();
    let mut checked = 0;
    let mut d = vec![0i64; g.n()];
    for s in 0..=total {
        let mut failed = None;
        bounded_compositions(&c, s, 0, &mut d, &mut |d| {
            checked += 1;
            if box_split_exists(&sw, d) {
                true
            } else {
                failed = Some(d.to_vec());
                false
            }
        });
        if let Some(d) = failed {
            return Ok(EspReport {
                esp: false,
                witness: Some(EspWitness::Replication(d)),
                checked,
            });
        }
    }
    Ok(EspReport {
        esp: true,
        witness: None,
        checked,
    })
}

/// Calls `f` on every `d <= cap` with coordinate sum `s`, lexicographically,
/// until `f` returns false. Returns false if stopped early.
fn bounded_compositions(cap: &[i64], s: i64, i: usize, d: &mut Vec<i64>, f: &mut impl FnMut(&[i64]) -> bool) -> bool {
    if i == cap.len() {
        return s != 0 || f(d);
    }
    let rest: i64 = cap[i + 1..].iter().sum();
    let lo = (s - rest).max(0);
    for x in lo..=cap[i].min(s) {
        d[i] = x;
        if !bounded_compositions(cap, s - x, i + 1, d, f) {
            d[i] = 0;
            return false;
        }
    }
    d[i] = 0;
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::build_named;

    fn set(v: &[usize]) -> VertexSet {
        v.iter().collect()
    }

    #[test]
    fn text_round_trip() {
        let mut m = CliqueMultiset::new();
        m.push(set(&[0, 1]), 2);
        m.push(set(&[2]), 1);
        let s = m.to_text();
        assert_eq!(s, "k 2 0 1\nk 1 2\n");
        assert_eq!(CliqueMultiset::parse(&s).unwrap(), m);
        assert_eq!(m.size(), 3);
        assert_eq!(m.degrees(3), vec![2, 2, 1]);
        assert!(matches!(CliqueMultiset::parse("k 0 1\n"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(CliqueMultiset::parse("\nq 1 1\n"), Err(Error::Parse { line: 2, .. })));
    }

    #[test]
    fn checker_examples() {
        let k4 = Graph::complete(4);
        let all = CliqueMultiset::from_cliques([VertexSet::full(4)]);
        let none = CliqueMultiset::new();
        assert_eq!(check_equitable_subpartition(&k4, &all, &all, &none).unwrap(), None);
        assert!(matches!(
            check_equitable_subpartition(&k4, &all, &none, &none).unwrap(),
            Some(EspViolation::Coverage { vertex: 0, .. })
        ));
        let s3 = build_named("S_n", &[3]).unwrap();
        let odd = CliqueMultiset::from_cliques([set(&[0, 1, 5]), set(&[1, 2, 3]), set(&[3, 4, 5])]);
        let evens = CliqueMultiset::from_cliques([set(&[1, 3, 5])]);
        assert!(matches!(
            check_equitable_subpartition(&s3, &odd, &evens, &odd).unwrap(),
            Some(EspViolation::Size { used: 4, available: 3 })
        ));
        assert!(matches!(
            check_equitable_subpartition(&s3, &odd, &evens, &CliqueMultiset::from_cliques([set(&[0]), set(&[2])])).unwrap(),
            Some(EspViolation::Coverage { vertex: 1, covered: 1, required: 2 })
        ));
        let bad = CliqueMultiset::from_cliques([set(&[0, 2])]);
        assert!(check_equitable_subpartition(&s3, &bad, &none, &none).is_err());
    }

    #[test]
    fn finder_examples() {
        let b = Budget::default();
        let s3 = build_named("S_n", &[3]).unwrap();
        let odd = CliqueMultiset::from_cliques([set(&[0, 1, 5]), set(&[1, 2, 3]), set(&[3, 4, 5])]);
        assert_eq!(find_equitable_subpartition(&s3, &odd, &b).unwrap(), None);
        let four = CliqueMultiset::from_cliques(maximal_cliques(&s3, &b).unwrap().cliques);
        let sp = find_equitable_subpartition(&s3, &four, &b).unwrap().unwrap();
        assert_eq!(check_equitable_subpartition(&s3, &four, &sp.part1, &sp.part2).unwrap(), None);
        let k5 = Graph::complete(5);
        let one = CliqueMultiset::from_cliques([VertexSet::full(5)]);
        let sp = find_equitable_subpartition(&k5, &one, &b).unwrap().unwrap();
        assert_eq!((sp.part1, sp.part2), (one, CliqueMultiset::new()));
    }

    #[test]
    fn esp_examples() {
        let b = Budget::default();
        for mode in [EspMode::Direct, EspMode::PerfectReform] {
            assert!(is_esp(&Graph::complete(4), mode, &b).unwrap().esp);
            for g in [build_named("Cn", &[4]).unwrap(), build_named("Cn", &[6]).unwrap(), build_named("Kmn", &[2, 3]).unwrap()] {
                assert!(is_esp(&g, mode, &b).unwrap().esp, "{g:?} {mode:?}");
            }
        }
        let s3 = build_named("S_n", &[3]).unwrap();
        let r = is_esp(&s3, EspMode::Direct, &b).unwrap();
        assert_eq!(r.witness, Some(EspWitness::Cliques(vec![set(&[0, 1, 5]), set(&[1, 2, 3]), set(&[3, 4, 5])])));
        let r = is_esp(&s3, EspMode::PerfectReform, &b).unwrap();
        assert_eq!(r.witness, Some(EspWitness::Replication(vec![1, 2, 1, 2, 1, 2])));
        assert!(!is_strong_esp(&s3, &b).unwrap().esp);
        assert!(is_strong_esp(&Graph::complete(3), &b).unwrap().esp);
        assert!(matches!(
            is_esp(&build_named("Cn", &[5]).unwrap(), EspMode::PerfectReform, &b),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn failing_replication_has_no_box_split() {
        // independent check on the S_3 witness: every d' in the box, by brute force over stable sets
        let s3 = build_named("S_n", &[3]).unwrap();
        let d = [1i64, 2, 1, 2, 1, 2];
        let alpha = |w: &[i64]| -> i64 {
            (0u64..64)
                .map(VertexSet::from_bits)
                .filter(|&s| s3.is_stable(s))
                .map(|s| s.iter().map(|v| w[v]).sum())
                .max()
                .unwrap()
        };
        assert_eq!(alpha(&d), 3);
        for mask in 0..8u32 {
            let d1: Vec<i64> = (0..6).map(|v| if v % 2 == 1 { 1 } else { (mask >> (v / 2) & 1) as i64 }).collect();
            let d2: Vec<i64> = d.iter().zip(&d1).map(|(a, b)| a - b).collect();
            assert!(alpha(&d1) + alpha(&d2) >= 4);
        }
    }

    #[test]
    fn budget_limits() {
        let b = Budget { esp_max_cliques: 3, ..Budget::default() };
        assert!(matches!(
            is_esp(&build_named("S_n", &[3]).unwrap(), EspMode::Direct, &b),
            Err(Error::BudgetExceeded { .. })
        ));
        let b = Budget { reform_max_points: 10, ..Budget::default() };
        assert!(matches!(
            is_esp(&build_named("Cn", &[6]).unwrap(), EspMode::PerfectReform, &b),
            Err(Error::BudgetExceeded { .. })
        ));
    }
}
