//! Brute-force ground truth: exhaustive k-subset enumeration for
//! max-exposure, bipartite densest-k-subgraph and densest-k-subhypergraph.
//!
//! Nothing here is clever on purpose. Every approximation guarantee in the
//! crate is checked against these functions.

use std::collections::BTreeSet;

use fixedbitset::FixedBitSet;
use itertools::Itertools;

use crate::error::{Error, Result};
use crate::geometry::{Instance, Solution};

/// Default cap on the number of subsets an exhaustive search may visit.
pub const DEFAULT_SUBSET_LIMIT: u128 = 10_000_000;

/// `C(n, k)`, saturating at `u128::MAX`.
pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = match acc.checked_mul((n - i) as u128) {
            Some(v) => v / (i as u128 + 1),
            None => return u128::MAX,
        };
    }
    acc
}

fn check_limit(n: usize, k: usize, limit: u128) -> Result<()> {
    let subsets = binomial(n, k);
    if subsets > limit {
        Err(Error::BudgetExceeded { subsets, limit })
    } else {
        Ok(())
    }
}

fn signature_masks(inst: &Instance) -> Vec<FixedBitSet> {
    let cont = inst.containment();
    cont.signatures()
        .iter()
        .map(|sig| {
            let mut bits = FixedBitSet::with_capacity(inst.n());
            for &r in sig.ids() {
                bits.insert(r);
            }
            bits
        })
        .collect()
}

/// Exact optimum by enumerating every k-subset of ranges, with the default
/// subset limit.
pub fn brute_force_opt(inst: &Instance) -> Result<Solution> {
    brute_force_opt_with_limit(inst, DEFAULT_SUBSET_LIMIT)
}

/// Exact optimum over all k-subsets. Among optimal subsets the
/// lexicographically smallest one is returned.
pub fn brute_force_opt_with_limit(inst: &Instance, limit: u128) -> Result<Solution> {
    let n = inst.n();
    let k = inst.k;
    check_limit(n, k, limit)?;
    let sigs = signature_masks(inst);

    let mut best: Option<(usize, Vec<usize>)> = None;
    let mut deleted = FixedBitSet::with_capacity(n);
    // `combinations` yields subsets in lexicographic order, so keeping the
    // first strict improvement gives the lexicographic minimum.
    for subset in (0..n).combinations(k) {
        deleted.clear();
        for &r in &subset {
            deleted.insert(r);
        }
        let value = sigs.iter().filter(|s| s.is_subset(&deleted)).count();
        if best.as_ref().is_none_or(|(v, _)| value > *v) {
            best = Some((value, subset));
        }
    }
    let (_, subset) = best.expect("at least the empty combination exists");
    Solution::from_deleted(inst, subset.into_iter().collect())
}

/// Optimal value for every budget `0..=kmax` (clamped to the range count).
pub fn brute_force_curve(inst: &Instance, kmax: usize) -> Result<Vec<usize>> {
    (0..=kmax)
        .map(|k| {
            let k = k.min(inst.n());
            brute_force_opt(&inst.with_k(k)?).map(|s| s.value)
        })
        .collect()
}

/// Optimum value computed over unions of signature classes instead of raw
/// range subsets. An optimal exposed set is always a union of whole groups
/// whose signatures jointly use at most `k` ranges.
pub fn optimum_by_groups(inst: &Instance, limit: u128) -> Result<usize> {
    let cont = inst.containment();
    let free = cont.free_points().len();
    let groups: Vec<(BTreeSet<usize>, usize)> = cont
        .groups()
        .into_iter()
        .filter(|g| g.signature.len() <= inst.k)
        .map(|g| {
            (
                g.signature.ids().iter().copied().collect(),
                g.point_ids.len(),
            )
        })
        .collect();

    struct Search<'a> {
        groups: &'a [(BTreeSet<usize>, usize)],
        k: usize,
        nodes: u128,
        limit: u128,
        best: usize,
    }

    impl Search<'_> {
        fn go(&mut self, idx: usize, used: &BTreeSet<usize>, value: usize) -> Result<()> {
            self.nodes += 1;
            if self.nodes > self.limit {
                return Err(Error::BudgetExceeded {
                    subsets: self.nodes,
                    limit: self.limit,
                });
            }
            self.best = self.best.max(value);
            for j in idx..self.groups.len() {
                let (sig, size) = &self.groups[j];
                let union: BTreeSet<usize> = used.union(sig).copied().collect();
                if union.len() <= self.k {
                    self.go(j + 1, &union, value + size)?;
                }
            }
            Ok(())
        }
    }

    let mut search = Search {
        groups: &groups,
        k: inst.k,
        nodes: 0,
        limit,
        best: 0,
    };
    search.go(0, &BTreeSet::new(), 0)?;
    Ok(free + search.best)
}

/// Bipartite graph `G = (A, B, E)` with edges as `(a_index, b_index)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BipartiteGraph {
    pub a_count: usize,
    pub b_count: usize,
    pub edges: Vec<(usize, usize)>,
}

impl BipartiteGraph {
    pub fn new(a_count: usize, b_count: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        if a_count == 0 || b_count == 0 {
            return Err(Error::InvalidInstance("both sides need a vertex".into()));
        }
        let mut seen = BTreeSet::new();
        for &(a, b) in &edges {
            if a >= a_count || b >= b_count {
                return Err(Error::InvalidInstance(format!(
                    "edge ({a}, {b}) out of bounds"
                )));
            }
            if !seen.insert((a, b)) {
                return Err(Error::InvalidInstance(format!("duplicate edge ({a}, {b})")));
            }
        }
        Ok(BipartiteGraph {
            a_count,
            b_count,
            edges,
        })
    }

    pub fn complete(a_count: usize, b_count: usize) -> Self {
        let edges = (0..a_count)
            .flat_map(|a| (0..b_count).map(move |b| (a, b)))
            .collect();
        BipartiteGraph {
            a_count,
            b_count,
            edges,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.a_count + self.b_count
    }
}

/// Maximum number of induced edges over all `k`-vertex subsets. Vertices of
/// `B` are numbered after those of `A`.
pub fn densest_k_subgraph_bipartite(g: &BipartiteGraph, k: usize) -> Result<usize> {
    let hyperedges: Vec<Vec<usize>> = g
        .edges
        .iter()
        .map(|&(a, b)| vec![a, g.a_count + b])
        .collect();
    densest_k_subhypergraph(g.vertex_count(), &hyperedges, k)
}

/// Maximum number of hyperedges contained in some `k`-vertex subset.
pub fn densest_k_subhypergraph(
    vertex_count: usize,
    hyperedges: &[Vec<usize>],
    k: usize,
) -> Result<usize> {
    if k > vertex_count {
        return Err(Error::Precondition(format!(
            "k = {k} exceeds the vertex count {vertex_count}"
        )));
    }
    check_limit(vertex_count, k, DEFAULT_SUBSET_LIMIT)?;
    let masks: Vec<FixedBitSet> = hyperedges
        .iter()
        .map(|e| {
            let mut bits = FixedBitSet::with_capacity(vertex_count);
            for &v in e {
                bits.insert(v);
            }
            bits
        })
        .collect();
    let mut chosen = FixedBitSet::with_capacity(vertex_count);
    let mut best = 0;
    for subset in (0..vertex_count).combinations(k) {
        chosen.clear();
        for &v in &subset {
            chosen.insert(v);
        }
        best = best.max(masks.iter().filter(|e| e.is_subset(&chosen)).count());
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::fixtures::i1;
    use crate::geometry::{int, rat, Point, Range};
    use proptest::prelude::*;

    #[test]
    fn running_example_optimum() {
        let s = brute_force_opt(&i1(1)).unwrap();
        assert_eq!(s.value, 2);
        assert_eq!(s.deleted, [0].into_iter().collect());
        assert_eq!(s.exposed, [0, 3].into_iter().collect());
        assert_eq!(brute_force_opt(&i1(2)).unwrap().value, 4);
        assert_eq!(brute_force_opt(&i1(0)).unwrap().value, 1);
        assert_eq!(brute_force_curve(&i1(2), 2).unwrap(), vec![1, 2, 4]);
    }

    #[test]
    fn zero_budget_counts_free_points() {
        let inst = Instance::new(
            vec![
                Point::new(int(0), int(0)),
                Point::new(int(5), int(5)),
                Point::new(int(6), int(6)),
            ],
            vec![Range::square(int(-1), int(-1), int(2)).unwrap()],
            0,
        )
        .unwrap();
        let s = brute_force_opt(&inst).unwrap();
        assert_eq!(s.value, 2);
        assert!(s.deleted.is_empty());
    }

    #[test]
    fn tie_break_is_lexicographic() {
        // Two identical ranges, each alone exposes nothing; both needed.
        let inst = Instance::new(
            vec![Point::new(rat(1, 2), rat(1, 2))],
            vec![
                Range::square(int(0), int(0), int(1)).unwrap(),
                Range::square(int(5), int(5), int(1)).unwrap(),
                Range::square(int(0), int(0), int(1)).unwrap(),
            ],
            2,
        )
        .unwrap();
        let s = brute_force_opt(&inst).unwrap();
        assert_eq!(s.value, 1);
        assert_eq!(s.deleted, [0, 2].into_iter().collect());
    }

    #[test]
    fn subset_limit_is_enforced() {
        let ranges: Vec<Range> = (0..30)
            .map(|i| Range::square(int(i), int(0), int(1)).unwrap())
            .collect();
        let inst = Instance::new(vec![], ranges, 15).unwrap();
        match brute_force_opt(&inst) {
            Err(Error::BudgetExceeded { subsets, .. }) => assert_eq!(subsets, 155_117_520),
            other => panic!("expected budget error, got {other:?}"),
        }
    }

    #[test]
    fn bipartite_densest() {
        let k22 = BipartiteGraph::complete(2, 2);
        assert_eq!(densest_k_subgraph_bipartite(&k22, 2).unwrap(), 1);
        assert_eq!(densest_k_subgraph_bipartite(&k22, 4).unwrap(), 4);
        let empty = BipartiteGraph::new(3, 2, vec![]).unwrap();
        assert_eq!(densest_k_subgraph_bipartite(&empty, 3).unwrap(), 0);
        assert!(BipartiteGraph::new(2, 2, vec![(0, 0), (0, 0)]).is_err());
        assert!(BipartiteGraph::new(2, 2, vec![(2, 0)]).is_err());
    }

    #[test]
    fn hypergraph_densest() {
        let edges = vec![vec![0, 1], vec![1, 2], vec![0, 1, 2]];
        assert_eq!(densest_k_subhypergraph(3, &edges, 2).unwrap(), 1);
        assert_eq!(densest_k_subhypergraph(3, &edges, 3).unwrap(), 3);
        assert_eq!(densest_k_subhypergraph(4, &[], 2).unwrap(), 0);
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), 10);
        assert_eq!(binomial(3, 5), 0);
        assert_eq!(binomial(0, 0), 1);
        assert_eq!(binomial(200, 100), u128::MAX);
    }

    fn arb_instance() -> impl Strategy<Value = Instance> {
        let c = || (0i64..=12).prop_map(|v| rat(v, 4));
        let point = (c(), c()).prop_map(|(x, y)| Point::new(x, y));
        let rect = (c(), c(), 1i64..=6, 1i64..=6).prop_map(|(x, y, w, h)| {
            Range::rect(x.clone(), y.clone(), x + rat(w, 4), y + rat(h, 4)).unwrap()
        });
        (
            proptest::collection::vec(point, 0..12),
            proptest::collection::vec(rect, 1..=8),
            0usize..=4,
        )
            .prop_map(|(p, r, k)| {
                let k = k.min(r.len());
                Instance::new(p, r, k).unwrap()
            })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]

        #[test]
        fn group_search_matches_raw_enumeration(inst in arb_instance()) {
            let raw = brute_force_opt(&inst).unwrap();
            raw.validate(&inst).unwrap();
            prop_assert_eq!(raw.deleted.len(), inst.k);
            prop_assert_eq!(optimum_by_groups(&inst, DEFAULT_SUBSET_LIMIT).unwrap(), raw.value);
        }

        #[test]
        fn max_exposure_is_densest_subhypergraph_of_the_dual(inst in arb_instance()) {
            let cont = inst.containment();
            let free = cont.free_points().len();
            let hyperedges: Vec<Vec<usize>> = cont
                .signatures()
                .iter()
                .filter(|s| !s.is_empty())
                .map(|s| s.ids().to_vec())
                .collect();
            let dual = densest_k_subhypergraph(inst.n(), &hyperedges, inst.k).unwrap();
            prop_assert_eq!(brute_force_opt(&inst).unwrap().value, dual + free);
        }
    }
}
