use super::strip::{build_strip_graph_with, StripGraph};
use super::witness::{PeriodicWitness, WitnessKind};
use super::Budget;
use crate::error::Result;
use crate::tiling::{PeriodVector, TilingSystem};
use petgraph::algo::tarjan_scc;
use petgraph::graph::{DiGraph, NodeIndex};
use std::collections::{BTreeMap, VecDeque};

/// Outcome of the periodicity decision for one vector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Decision {
    /// No tiling is periodic along the vector.
    None,
    /// Periodic tilings exist, but each is periodic along a second direction.
    BiperiodicOnly(PeriodicWitness),
    /// Some tiling is periodic along the vector and no other direction.
    DirectionOnly(PeriodicWitness),
}

impl Decision {
    pub fn witness(&self) -> Option<&PeriodicWitness> {
        match self {
            Decision::None => None,
            Decision::BiperiodicOnly(w) | Decision::DirectionOnly(w) => Some(w),
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            Decision::None => "NONE",
            Decision::BiperiodicOnly(_) => "BIPERIODIC-ONLY",
            Decision::DirectionOnly(_) => "DIRECTION-ONLY",
        }
    }
}

pub fn decide_periodic(system: &TilingSystem, vector: PeriodVector) -> Result<Decision> {
    decide_periodic_with(system, vector, &Budget::from_env())
}

pub fn decide_periodic_with(
    system: &TilingSystem,
    vector: PeriodVector,
    budget: &Budget,
) -> Result<Decision> {
    let graph = build_strip_graph_with(system, vector, budget)?;
    Ok(decide_on_graph(&graph))
}

struct Cycles<'a> {
    graph: &'a StripGraph,
    comp: Vec<usize>,
}

impl Cycles<'_> {
    fn succ_in(&self, x: usize, c: usize) -> impl Iterator<Item = usize> + '_ {
        self.graph.edges[x]
            .iter()
            .copied()
            .filter(move |&y| self.comp[y] == c)
    }

    /// Shortest path `from → … → to` inside component `c`; the returned
    /// sequence starts at `from` and stops before `to`.
    fn path_to(&self, from: usize, to: usize, c: usize) -> Vec<usize> {
        if from == to {
            return Vec::new();
        }
        let mut parent: BTreeMap<usize, usize> = BTreeMap::new();
        let mut queue = VecDeque::from([from]);
        parent.insert(from, from);
        while let Some(x) = queue.pop_front() {
            for y in self.succ_in(x, c) {
                if y == to {
                    let mut path = vec![x];
                    let mut cur = x;
                    while cur != from {
                        cur = parent[&cur];
                        path.push(cur);
                    }
                    path.reverse();
                    return path;
                }
                if let std::collections::btree_map::Entry::Vacant(e) = parent.entry(y) {
                    e.insert(x);
                    queue.push_back(y);
                }
            }
        }
        unreachable!("nodes of one component are mutually reachable")
    }

    /// A shortest cycle through `u`, starting at `u`.
    fn cycle_through(&self, u: usize) -> Vec<usize> {
        let c = self.comp[u];
        let mut best: Option<Vec<usize>> = None;
        for v in self.succ_in(u, c) {
            let mut cyc = vec![u];
            if v != u {
                cyc.extend(self.path_to(v, u, c));
            }
            if best.as_ref().is_none_or(|b| cyc.len() < b.len()) {
                best = Some(cyc);
            }
        }
        best.expect("u lies on a cycle")
    }
}

/// Applies the two-cycle criterion to a built graph.
pub fn decide_on_graph(graph: &StripGraph) -> Decision {
    let n = graph.nodes.len();
    let mut g = DiGraph::<(), ()>::with_capacity(n, graph.edge_count());
    for _ in 0..n {
        g.add_node(());
    }
    for (a, outs) in graph.edges.iter().enumerate() {
        for &b in outs {
            g.add_edge(NodeIndex::new(a), NodeIndex::new(b), ());
        }
    }
    let mut sccs: Vec<Vec<usize>> = tarjan_scc(&g)
        .into_iter()
        .map(|c| {
            let mut v: Vec<usize> = c.into_iter().map(|x| x.index()).collect();
            v.sort_unstable();
            v
        })
        .collect();
    sccs.sort();
    let mut comp = vec![0; n];
    for (ci, c) in sccs.iter().enumerate() {
        for &x in c {
            comp[x] = ci;
        }
    }
    let cyc = Cycles { graph, comp };
    let internal_edges = |ci: usize| -> usize {
        sccs[ci]
            .iter()
            .map(|&x| cyc.succ_in(x, ci).count())
            .sum()
    };
    let cyclic: Vec<bool> = (0..sccs.len())
        .map(|ci| sccs[ci].len() > 1 || internal_edges(ci) > 0)
        .collect();

    let make = |kind, cycle_a: Vec<usize>, connector: Vec<usize>, cycle_b: Vec<usize>| {
        PeriodicWitness::from_graph(graph, kind, cycle_a, connector, cycle_b)
    };

    for ci in (0..sccs.len()).filter(|&ci| cyclic[ci]) {
        if internal_edges(ci) > sccs[ci].len() {
            // Not a single simple cycle: two distinct cycles share a node.
            let u = *sccs[ci]
                .iter()
                .find(|&&x| cyc.succ_in(x, ci).count() >= 2)
                .expect("a strongly connected component with surplus edges has a branching node");
            let mut succ = cyc.succ_in(u, ci);
            let (v1, v2) = (succ.next().unwrap(), succ.next().unwrap());
            let close = |v: usize| {
                let mut c = vec![u];
                if v != u {
                    c.extend(cyc.path_to(v, u, ci));
                }
                c
            };
            return Decision::DirectionOnly(make(
                WitnessKind::DirectionOnly,
                close(v1),
                vec![u],
                close(v2),
            ));
        }
        // Breadth-first search from the component for another cyclic one.
        let mut parent: BTreeMap<usize, usize> = BTreeMap::new();
        let mut queue: VecDeque<usize> = VecDeque::new();
        for &s in &sccs[ci] {
            parent.insert(s, s);
            queue.push_back(s);
        }
        while let Some(x) = queue.pop_front() {
            for &y in &graph.edges[x] {
                if parent.contains_key(&y) {
                    continue;
                }
                parent.insert(y, x);
                if cyclic[cyc.comp[y]] {
                    let mut path = vec![y];
                    let mut cur = y;
                    while parent[&cur] != cur {
                        cur = parent[&cur];
                        path.push(cur);
                    }
                    path.reverse();
                    let a = cyc.cycle_through(path[0]);
                    let b = cyc.cycle_through(y);
                    return Decision::DirectionOnly(make(WitnessKind::DirectionOnly, a, path, b));
                }
                queue.push_back(y);
            }
        }
    }
    match (0..sccs.len()).find(|&ci| cyclic[ci]) {
        Some(ci) => {
            let u = sccs[ci][0];
            let a = cyc.cycle_through(u);
            Decision::BiperiodicOnly(make(WitnessKind::BiperiodicPossible, a, vec![u], Vec::new()))
        }
        None => Decision::None,
    }
}
