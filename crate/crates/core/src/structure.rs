//! Irreducibility and block structure of a normalized citation matrix.
//!
//! Edge convention: node `j` has a directed edge to node `i` iff
//! `weight(i, j) > 0`, i.e. weight flows from citer to cited. Under this
//! convention the sinks of the condensation are the classes that receive
//! weight but never pass it on, which are the only places a positive score
//! can live. Reversing the convention silently inverts the ranking.
//!
//! A matrix is reducible exactly when some permutation brings it to the
//! lower block-triangular form
//!
//! ```text
//!     | A  0 |
//!     | B  D |
//! ```
//!
//! with `A`, `D` square. [`classify`] produces such a permutation from the
//! strongly connected components: transient classes first, recurrent last.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::SquareMatrix;
use crate::model::NormalizedCitationMatrix;

/// Strongly connected components of the citer→cited graph.
///
/// Components are numbered in a topological order of the condensation
/// (sources first); node ids inside a component are ascending.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SccPartition {
    pub components: Vec<Vec<usize>>,
    pub component_of: Vec<usize>,
    /// `(p, q)`: some node in `p` cites some node in `q`.
    pub condensation_edges: BTreeSet<(usize, usize)>,
}

impl SccPartition {
    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    /// Whether component `p` has an outgoing condensation edge.
    pub fn has_out_edge(&self, p: usize) -> bool {
        self.condensation_edges.range((p, 0)..(p + 1, 0)).next().is_some()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Classification {
    /// One strongly connected component on at least two nodes.
    Irreducible,
    /// Several components and no weight between them.
    BlockDiagonal,
    /// Several components with weight flowing between some of them.
    ChainedReducible,
    /// No positive weight anywhere (includes the single-node case).
    Degenerate,
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Classification::Irreducible => "Irreducible",
            Classification::BlockDiagonal => "BlockDiagonal",
            Classification::ChainedReducible => "ChainedReducible",
            Classification::Degenerate => "Degenerate",
        };
        f.write_str(s)
    }
}

/// A bijection on `[0, N)`, stored as `forward[i] = σ(i)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Permutation {
    forward: Vec<usize>,
}

impl Permutation {
    pub fn new(forward: Vec<usize>) -> Result<Self> {
        let n = forward.len();
        let mut seen = vec![false; n];
        for &t in &forward {
            if t >= n || std::mem::replace(&mut seen[t], true) {
                return Err(Error::Input(format!(
                    "not a permutation of 0..{n}: {forward:?}"
                )));
            }
        }
        Ok(Self { forward })
    }

    pub fn identity(n: usize) -> Self {
        Self { forward: (0..n).collect() }
    }

    /// Permutation that sends `order[k]` to position `k`.
    pub fn from_order(order: &[usize]) -> Result<Self> {
        let mut forward = vec![usize::MAX; order.len()];
        for (pos, &node) in order.iter().enumerate() {
            if node >= order.len() || forward[node] != usize::MAX {
                return Err(Error::Input(format!("not an ordering of 0..{}: {order:?}", order.len())));
            }
            forward[node] = pos;
        }
        Ok(Self { forward })
    }

    pub fn len(&self) -> usize {
        self.forward.len()
    }

    pub fn is_empty(&self) -> bool {
        self.forward.is_empty()
    }

    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.forward[i]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.forward
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.len()];
        for (i, &t) in self.forward.iter().enumerate() {
            inv[t] = i;
        }
        Self { forward: inv }
    }
}

/// Structural verdict on a normalized citation matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructureReport {
    pub partition: SccPartition,
    pub classification: Classification,
    /// Condensation sinks with internal weight (size ≥ 2, since the diagonal is zero).
    pub recurrent_classes: Vec<usize>,
    /// Every other component, dead sinks included.
    pub transient_classes: Vec<usize>,
    /// Singleton sinks: nodes that cite no one. Subset of `transient_classes`.
    pub dead_sinks: Vec<usize>,
    /// Orders nodes transient-first, recurrent-last, giving a zero top-right block.
    pub block_permutation: Permutation,
}

impl StructureReport {
    pub fn n(&self) -> usize {
        self.partition.component_of.len()
    }

    pub fn recurrent_nodes(&self) -> Vec<usize> {
        self.nodes_of(&self.recurrent_classes)
    }

    pub fn transient_nodes(&self) -> Vec<usize> {
        self.nodes_of(&self.transient_classes)
    }

    pub fn has_unique_ranking(&self) -> bool {
        self.recurrent_classes.len() == 1
    }

    fn nodes_of(&self, classes: &[usize]) -> Vec<usize> {
        let mut nodes: Vec<usize> = classes
            .iter()
            .flat_map(|&p| self.partition.components[p].iter().copied())
            .collect();
        nodes.sort_unstable();
        nodes
    }
}

/// Strongly connected components under the citer→cited edge convention.
pub fn scc_decompose(c: &NormalizedCitationMatrix) -> SccPartition {
    let n = c.dim();
    let m = c.matrix();
    let out: Vec<Vec<usize>> = (0..n)
        .map(|j| (0..n).filter(|&i| m.get(i, j) > 0.0).collect())
        .collect();

    // Tarjan emits components in reverse topological order.
    let mut comps = tarjan(&out);
    comps.reverse();

    let mut component_of = vec![0; n];
    for (p, comp) in comps.iter_mut().enumerate() {
        comp.sort_unstable();
        for &v in comp.iter() {
            component_of[v] = p;
        }
    }

    let mut condensation_edges = BTreeSet::new();
    for (j, targets) in out.iter().enumerate() {
        for &i in targets {
            let (p, q) = (component_of[j], component_of[i]);
            if p != q {
                condensation_edges.insert((p, q));
            }
        }
    }

    SccPartition { components: comps, component_of, condensation_edges }
}

/// Iterative Tarjan over an adjacency list.
fn tarjan(adj: &[Vec<usize>]) -> Vec<Vec<usize>> {
    const UNVISITED: usize = usize::MAX;
    let n = adj.len();
    let mut index = vec![UNVISITED; n];
    let mut low = vec![0; n];
    let mut on_stack = vec![false; n];
    let mut stack = Vec::new();
    let mut comps = Vec::new();
    let mut next = 0;
    // (node, position in its adjacency list)
    let mut call: Vec<(usize, usize)> = Vec::new();

    for root in 0..n {
        if index[root] != UNVISITED {
            continue;
        }
        call.push((root, 0));
        while let Some(&(v, pos)) = call.last() {
            if pos == 0 && index[v] == UNVISITED {
                index[v] = next;
                low[v] = next;
                next += 1;
                stack.push(v);
                on_stack[v] = true;
            }
            if let Some(&w) = adj[v].get(pos) {
                call.last_mut().unwrap().1 += 1;
                if index[w] == UNVISITED {
                    call.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
                continue;
            }
            call.pop();
            if let Some(&(parent, _)) = call.last() {
                low[parent] = low[parent].min(low[v]);
            }
            if low[v] == index[v] {
                let mut comp = Vec::new();
                loop {
                    let w = stack.pop().expect("tarjan stack underflow");
                    on_stack[w] = false;
                    comp.push(w);
                    if w == v {
                        break;
                    }
                }
                comps.push(comp);
            }
        }
    }
    comps
}

/// Assigns the classification, recurrent/transient split and block permutation.
pub fn classify(c: &NormalizedCitationMatrix, partition: SccPartition) -> StructureReport {
    let k = partition.len();
    let classification = if !c.has_positive_weight() {
        Classification::Degenerate
    } else if k == 1 {
        Classification::Irreducible
    } else if partition.condensation_edges.is_empty() {
        Classification::BlockDiagonal
    } else {
        Classification::ChainedReducible
    };

    let mut recurrent = Vec::new();
    let mut transient = Vec::new();
    let mut dead = Vec::new();
    for p in 0..k {
        let is_sink = !partition.has_out_edge(p);
        let has_internal_weight = partition.components[p].len() >= 2;
        if is_sink && has_internal_weight {
            recurrent.push(p);
        } else {
            transient.push(p);
            if is_sink {
                dead.push(p);
            }
        }
    }

    // Components are already topologically sorted; moving every sink to the
    // end keeps the order topological.
    let order: Vec<usize> = transient
        .iter()
        .filter(|p| !dead.contains(p))
        .chain(dead.iter())
        .chain(recurrent.iter())
        .flat_map(|&p| partition.components[p].iter().copied())
        .collect();
    let block_permutation = Permutation::from_order(&order).expect("components partition the nodes");

    StructureReport {
        partition,
        classification,
        recurrent_classes: recurrent,
        transient_classes: transient,
        dead_sinks: dead,
        block_permutation,
    }
}

/// Convenience for `classify(c, scc_decompose(c))`.
pub fn analyze(c: &NormalizedCitationMatrix) -> StructureReport {
    classify(c, scc_decompose(c))
}

/// Relabels nodes: `output(σ(i), σ(j)) = input(i, j)`.
pub fn permute(c: &NormalizedCitationMatrix, perm: &Permutation) -> Result<NormalizedCitationMatrix> {
    let n = c.dim();
    if perm.len() != n {
        return Err(Error::Input(format!(
            "permutation has length {}, matrix has dimension {n}",
            perm.len()
        )));
    }
    let mut out = SquareMatrix::zeros(n);
    for i in 0..n {
        for j in 0..n {
            out.set(perm.apply(i), perm.apply(j), c.weight(i, j));
        }
    }
    let mut zero_columns: Vec<usize> = c.zero_columns().iter().map(|&j| perm.apply(j)).collect();
    zero_columns.sort_unstable();
    Ok(NormalizedCitationMatrix::from_parts(out, zero_columns))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{normalize, RawCitationMatrix};
    use proptest::prelude::*;

    fn c(rows: &[&[f64]]) -> NormalizedCitationMatrix {
        NormalizedCitationMatrix::from_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    fn two_disjoint_cycles() -> NormalizedCitationMatrix {
        c(&[
            &[0.0, 1.0, 0.0, 0.0],
            &[1.0, 0.0, 0.0, 0.0],
            &[0.0, 0.0, 0.0, 1.0],
            &[0.0, 0.0, 1.0, 0.0],
        ])
    }

    // node 0 cites node 1; nodes 1 and 2 cite each other
    fn feeder_into_cycle() -> NormalizedCitationMatrix {
        c(&[&[0.0, 0.0, 0.0], &[1.0, 0.0, 1.0], &[0.0, 1.0, 0.0]])
    }

    #[test]
    fn two_cycle_is_one_component() {
        let p = scc_decompose(&c(&[&[0.0, 1.0], &[1.0, 0.0]]));
        assert_eq!(p.components, vec![vec![0, 1]]);
        assert!(p.condensation_edges.is_empty());
    }

    #[test]
    fn one_way_edge_points_from_citer_to_cited() {
        // a (0) cites b (1)
        let p = scc_decompose(&c(&[&[0.0, 0.0], &[1.0, 0.0]]));
        assert_eq!(p.components, vec![vec![0], vec![1]]);
        let a = p.component_of[0];
        let b = p.component_of[1];
        assert_eq!(p.condensation_edges.iter().copied().collect::<Vec<_>>(), vec![(a, b)]);
    }

    #[test]
    fn disjoint_cycles() {
        let p = scc_decompose(&two_disjoint_cycles());
        assert_eq!(p.len(), 2);
        assert!(p.condensation_edges.is_empty());
    }

    #[test]
    fn classify_irreducible() {
        let r = analyze(&c(&[&[0.0, 1.0], &[1.0, 0.0]]));
        assert_eq!(r.classification, Classification::Irreducible);
        assert_eq!(r.recurrent_nodes(), vec![0, 1]);
        assert!(r.transient_classes.is_empty());
    }

    #[test]
    fn classify_chain_and_check_block_shape() {
        let m = feeder_into_cycle();
        let r = analyze(&m);
        assert_eq!(r.classification, Classification::ChainedReducible);
        assert_eq!(r.transient_nodes(), vec![0]);
        assert_eq!(r.recurrent_nodes(), vec![1, 2]);
        assert!(r.dead_sinks.is_empty());

        let p = permute(&m, &r.block_permutation).unwrap();
        let split = r.transient_nodes().len();
        for i in 0..split {
            for j in split..3 {
                assert_eq!(p.weight(i, j), 0.0, "top-right block entry ({i},{j})");
            }
        }
        // coupling block is nonzero
        assert!((split..3).any(|i| (0..split).any(|j| p.weight(i, j) > 0.0)));
    }

    #[test]
    fn classify_block_diagonal() {
        let r = analyze(&two_disjoint_cycles());
        assert_eq!(r.classification, Classification::BlockDiagonal);
        assert_eq!(r.recurrent_classes.len(), 2);
        assert!(!r.has_unique_ranking());
    }

    #[test]
    fn single_node_and_zero_matrix_are_degenerate() {
        let r = analyze(&c(&[&[0.0]]));
        assert_eq!(r.classification, Classification::Degenerate);
        assert!(r.recurrent_classes.is_empty());
        let r = analyze(&c(&[&[0.0, 0.0], &[0.0, 0.0]]));
        assert_eq!(r.classification, Classification::Degenerate);
        assert_eq!(r.dead_sinks.len(), 2);
    }

    #[test]
    fn dead_sink_is_transient_singleton() {
        // 0 <-> 1, and 1 also cites 2 which cites no one
        let m = c(&[&[0.0, 0.5, 0.0], &[1.0, 0.0, 0.0], &[0.0, 0.5, 0.0]]);
        let r = analyze(&m);
        assert_eq!(r.classification, Classification::ChainedReducible);
        assert!(r.recurrent_classes.is_empty());
        assert_eq!(r.dead_sinks.len(), 1);
        assert_eq!(r.partition.components[r.dead_sinks[0]], vec![2]);
    }

    #[test]
    fn permute_examples() {
        let swap = Permutation::new(vec![1, 0]).unwrap();
        let sym = c(&[&[0.0, 1.0], &[1.0, 0.0]]);
        assert_eq!(permute(&sym, &Permutation::identity(2)).unwrap(), sym);
        assert_eq!(permute(&sym, &swap).unwrap(), sym);
        let lower = c(&[&[0.0, 0.0], &[1.0, 0.0]]);
        let upper = permute(&lower, &swap).unwrap();
        assert_eq!(upper, c(&[&[0.0, 1.0], &[0.0, 0.0]]));
        assert_eq!(upper.zero_columns(), &[0]);
    }

    #[test]
    fn permutation_validation() {
        assert!(Permutation::new(vec![0, 0]).is_err());
        assert!(Permutation::new(vec![0, 2]).is_err());
        let p = Permutation::new(vec![2, 0, 1]).unwrap();
        assert_eq!(p.inverse().as_slice(), &[1, 2, 0]);
        let sym = c(&[&[0.0, 1.0], &[1.0, 0.0]]);
        assert!(permute(&sym, &p).is_err());
    }

    #[test]
    fn deep_chain_does_not_overflow() {
        // path 0 -> 1 -> ... -> n-1 closed into a cycle
        let n = 3_000;
        let mut counts = vec![0u64; n * n];
        for j in 0..n {
            counts[((j + 1) % n) * n + j] = 1;
        }
        let m = normalize(&RawCitationMatrix::from_counts(n, counts).unwrap());
        let p = scc_decompose(&m);
        assert_eq!(p.len(), 1);
    }

    /// Is there a permutation and split putting `m` in lower block-triangular form?
    fn reducible_by_brute_force(m: &NormalizedCitationMatrix) -> bool {
        let n = m.dim();
        let mut perm: Vec<usize> = (0..n).collect();
        loop {
            for split in 1..n {
                // rows perm[..split], columns perm[split..] must be zero
                let zero = perm[..split]
                    .iter()
                    .all(|&i| perm[split..].iter().all(|&j| m.weight(i, j) == 0.0));
                if zero {
                    return true;
                }
            }
            if !next_permutation(&mut perm) {
                return false;
            }
        }
    }

    fn next_permutation(p: &mut [usize]) -> bool {
        let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else {
            return false;
        };
        let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).unwrap();
        p.swap(i - 1, j);
        p[i..].reverse();
        true
    }

    fn raw_matrix(max_n: usize) -> impl Strategy<Value = RawCitationMatrix> {
        (2usize..=max_n).prop_flat_map(|n| {
            proptest::collection::vec(prop_oneof![3 => Just(0u64), 2 => 1u64..5], n * n).prop_map(
                move |mut counts| {
                    for i in 0..n {
                        counts[i * n + i] = 0;
                    }
                    RawCitationMatrix::from_counts(n, counts).unwrap()
                },
            )
        })
    }

    fn matrix_and_perm() -> impl Strategy<Value = (RawCitationMatrix, Vec<usize>)> {
        raw_matrix(8).prop_flat_map(|raw| {
            let n = raw.dim();
            (Just(raw), Just((0..n).collect::<Vec<_>>()).prop_shuffle())
        })
    }

    proptest! {
        #[test]
        fn irreducible_iff_no_block_permutation(raw in raw_matrix(6)) {
            let m = normalize(&raw);
            let r = analyze(&m);
            prop_assert_eq!(
                r.classification == Classification::Irreducible,
                !reducible_by_brute_force(&m)
            );
        }

        #[test]
        fn classification_is_permutation_equivariant((raw, sigma) in matrix_and_perm()) {
            let m = normalize(&raw);
            let sigma = Permutation::new(sigma).unwrap();
            let r = analyze(&m);
            let rp = analyze(&permute(&m, &sigma).unwrap());
            prop_assert_eq!(r.classification, rp.classification);

            let relabel = |comps: &[Vec<usize>]| {
                let mut sets: Vec<Vec<usize>> = comps
                    .iter()
                    .map(|c| { let mut v: Vec<usize> = c.iter().map(|&i| sigma.apply(i)).collect(); v.sort_unstable(); v })
                    .collect();
                sets.sort();
                sets
            };
            let mut expected: Vec<Vec<usize>> = rp.partition.components.clone();
            expected.sort();
            prop_assert_eq!(relabel(&r.partition.components), expected);
            prop_assert_eq!(r.recurrent_classes.len(), rp.recurrent_classes.len());
        }

        #[test]
        fn partition_and_report_invariants(raw in raw_matrix(8)) {
            let m = normalize(&raw);
            let r = analyze(&m);
            let n = m.dim();
            let p = &r.partition;

            let mut seen = vec![0; n];
            for comp in &p.components {
                for &v in comp { seen[v] += 1; }
            }
            prop_assert!(seen.iter().all(|&s| s == 1));
            prop_assert!(p.condensation_edges.iter().all(|&(a, b)| a != b));
            // components are topologically numbered, so the condensation is acyclic
            prop_assert!(p.condensation_edges.iter().all(|&(a, b)| a < b));

            for &j in m.zero_columns() {
                prop_assert_eq!(p.components[p.component_of[j]].len(), 1);
            }
            if m.has_positive_weight() {
                prop_assert!(!r.recurrent_classes.is_empty() || !r.dead_sinks.is_empty());
            }
            let mut classes: Vec<usize> = r.recurrent_classes.iter().chain(&r.transient_classes).copied().collect();
            classes.sort_unstable();
            prop_assert_eq!(classes, (0..p.len()).collect::<Vec<_>>());

            // permuted matrix has a zero top-right block at every class boundary
            let pm = permute(&m, &r.block_permutation).unwrap();
            for i in 0..n {
                for j in 0..n {
                    if pm.weight(i, j) > 0.0 {
                        let ci = p.component_of[r.block_permutation.inverse().apply(i)];
                        let cj = p.component_of[r.block_permutation.inverse().apply(j)];
                        prop_assert!(i > j || ci == cj, "weight above the block diagonal at ({i},{j})");
                    }
                }
            }
        }
    }
}
