use crate::graph::{EdgeId, NodeId, TypedMultiGraph};

use super::{CostLedger, Unit};

/// Greedy maximal matching, scanning edges by id.
pub fn maximal_matching(g: &TypedMultiGraph, ledger: &mut CostLedger) -> Vec<EdgeId> {
    ledger.record("maximal_matching", Unit::MM, 1, 1);
    let mut covered = vec![false; g.node_count()];
    let mut matching = Vec::new();
    for (id, e) in g.edges().iter().enumerate() {
        let [a, b] = e.ends;
        if !covered[a] && !covered[b] {
            covered[a] = true;
            covered[b] = true;
            matching.push(id);
        }
    }
    matching
}

/// Greedy (3,2)-ruling set, scanning nodes by id: members are pairwise at
/// distance at least 3 and every node is within distance 2 of a member.
pub fn ruling_set_32(g: &TypedMultiGraph, ledger: &mut CostLedger) -> Vec<NodeId> {
    ledger.record("ruling_set_32", Unit::RS32, 1, 1);
    let mut blocked = vec![false; g.node_count()];
    let mut set = Vec::new();
    for v in 0..g.node_count() {
        if blocked[v] {
            continue;
        }
        set.push(v);
        blocked[v] = true;
        for u in g.neighbors(v) {
            blocked[u] = true;
            for w in g.neighbors(u) {
                blocked[w] = true;
            }
        }
    }
    set
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{gen_random_bounded, gen_structured, EdgeType, Structured, TypeAssignment};
    use proptest::prelude::*;

    #[test]
    fn matching_examples() {
        let mut l = CostLedger::new();
        let e = gen_structured(Structured::Path(2), EdgeType::C).unwrap();
        assert_eq!(maximal_matching(&e, &mut l), vec![0]);
        let p = gen_structured(Structured::Path(4), EdgeType::C).unwrap();
        assert_eq!(maximal_matching(&p, &mut l), vec![0, 2]);
        let c4 = gen_structured(Structured::Cycle(4), EdgeType::C).unwrap();
        assert_eq!(maximal_matching(&c4, &mut l).len(), 2);
        assert!(l.entries().iter().all(|e| e.unit == Unit::MM));
    }

    #[test]
    fn ruling_set_examples() {
        let mut l = CostLedger::new();
        let one = TypedMultiGraph::empty(1);
        assert_eq!(ruling_set_32(&one, &mut l), vec![0]);
        let p = gen_structured(Structured::Path(5), EdgeType::C).unwrap();
        assert_eq!(ruling_set_32(&p, &mut l), vec![0, 3]);
        let c3 = gen_structured(Structured::Cycle(3), EdgeType::C).unwrap();
        assert_eq!(ruling_set_32(&c3, &mut l).len(), 1);
        assert_eq!(l.entries()[0].unit, Unit::RS32);
    }

    proptest! {
        #[test]
        fn matching_is_maximal(n in 2usize..60, delta in 1usize..8, seed in any::<u64>()) {
            let g = gen_random_bounded(n, delta, 0.6, seed, TypeAssignment::AllC).unwrap();
            let m = maximal_matching(&g, &mut CostLedger::new());
            let mut cover = vec![0usize; n];
            for &e in &m {
                for v in g.edge(e).ends {
                    cover[v] += 1;
                }
            }
            prop_assert!(cover.iter().all(|&c| c <= 1));
            for e in g.edges() {
                prop_assert!(cover[e.ends[0]] + cover[e.ends[1]] >= 1);
            }
        }

        #[test]
        fn ruling_set_distances(n in 1usize..60, delta in 1usize..6, seed in any::<u64>()) {
            let g = if n < 2 { TypedMultiGraph::empty(n) } else {
                gen_random_bounded(n, delta, 0.5, seed, TypeAssignment::AllC).unwrap()
            };
            let s = ruling_set_32(&g, &mut CostLedger::new());
            let mut nearest = vec![usize::MAX; n];
            for &a in &s {
                let d = g.bfs_distances(a);
                for &b in &s {
                    if a != b {
                        prop_assert!(d[b] >= 3);
                    }
                }
                for v in 0..n {
                    nearest[v] = nearest[v].min(d[v]);
                }
            }
            prop_assert!(nearest.iter().all(|&d| d <= 2));
        }
    }
}
