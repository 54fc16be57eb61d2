//! Every small tree and unicyclic graph, oriented, and the theorem check run
//! over all of them.

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::census::{verify_theorem, VerifyOptions};
use crate::error::{Error, Result};
use crate::field::FiniteField;
use crate::quiver::Quiver;

/// Largest vertex count the harness accepts.
pub const CORPUS_MAX_N: usize = 9;

/// An unoriented simple graph on `0..n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Graph {
    pub n: usize,
    pub edges: Vec<(usize, usize)>,
}

impl Graph {
    fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.n];
        for &(u, v) in &self.edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        adj
    }
}

/// Rooted-tree code: `(` + sorted child codes + `)`. Vertices in `blocked`
/// are not entered.
fn rooted_code(adj: &[Vec<usize>], root: usize, parent: Option<usize>, blocked: &[bool]) -> String {
    let mut children: Vec<String> = adj[root]
        .iter()
        .filter(|&&w| Some(w) != parent && !blocked[w])
        .map(|&w| rooted_code(adj, w, Some(root), blocked))
        .collect();
    children.sort();
    format!("({})", children.concat())
}

/// One or two centers of a tree, by repeatedly stripping leaves.
fn centers(adj: &[Vec<usize>]) -> Vec<usize> {
    let n = adj.len();
    if n <= 2 {
        return (0..n).collect();
    }
    let mut degree: Vec<usize> = adj.iter().map(Vec::len).collect();
    let mut layer: Vec<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
    let mut left = n;
    while left > 2 {
        left -= layer.len();
        let mut next = Vec::new();
        for &leaf in &layer {
            degree[leaf] = 0;
            for &w in &adj[leaf] {
                if degree[w] > 0 {
                    degree[w] -= 1;
                    if degree[w] == 1 {
                        next.push(w);
                    }
                }
            }
        }
        layer = next;
    }
    layer.sort_unstable();
    layer
}

/// Canonical code of an unrooted tree: the smaller rooted code over its centers.
pub fn tree_code(g: &Graph) -> String {
    let adj = g.adjacency();
    let blocked = vec![false; g.n];
    centers(&adj).into_iter().map(|c| rooted_code(&adj, c, None, &blocked)).min().expect("tree has a center")
}

/// Relabels a tree breadth-first from its canonical center, children in
/// code order, so vertex 0 is a center.
fn canonical_tree(g: &Graph) -> Graph {
    let adj = g.adjacency();
    let blocked = vec![false; g.n];
    let root = centers(&adj)
        .into_iter()
        .min_by_key(|&c| rooted_code(&adj, c, None, &blocked))
        .expect("tree has a center");
    let mut order = vec![root];
    let mut parent = vec![usize::MAX; g.n];
    parent[root] = root;
    let mut head = 0;
    while head < order.len() {
        let v = order[head];
        head += 1;
        let mut kids: Vec<(String, usize)> = adj[v]
            .iter()
            .filter(|&&w| parent[w] == usize::MAX)
            .map(|&w| (rooted_code(&adj, w, Some(v), &blocked), w))
            .collect();
        kids.sort();
        for (_, w) in kids {
            parent[w] = v;
            order.push(w);
        }
    }
    let mut label = vec![0; g.n];
    for (k, &v) in order.iter().enumerate() {
        label[v] = k;
    }
    let mut edges: Vec<(usize, usize)> = order[1..].iter().map(|&v| (label[parent[v]], label[v])).collect();
    edges.sort_unstable();
    Graph { n: g.n, edges }
}

/// All unlabeled trees on exactly `n` vertices, canonically labelled and
/// sorted by code.
pub fn trees(n: usize) -> Vec<Graph> {
    if n == 0 {
        return Vec::new();
    }
    let mut level: BTreeMap<String, Graph> = BTreeMap::new();
    let one = Graph { n: 1, edges: Vec::new() };
    level.insert(tree_code(&one), one);
    for size in 2..=n {
        let mut next = BTreeMap::new();
        for g in level.values() {
            for v in 0..g.n {
                let mut edges = g.edges.clone();
                edges.push((v, size - 1));
                let h = Graph { n: size, edges };
                next.entry(tree_code(&h)).or_insert(h);
            }
        }
        level = next;
    }
    level.into_values().map(|g| canonical_tree(&g)).collect()
}

/// The cycle of a unicyclic graph, in cyclic order.
fn cycle_of(g: &Graph) -> Vec<usize> {
    let adj = g.adjacency();
    let mut degree: Vec<usize> = adj.iter().map(Vec::len).collect();
    let mut on_cycle = vec![true; g.n];
    let mut stack: Vec<usize> = (0..g.n).filter(|&v| degree[v] == 1).collect();
    while let Some(v) = stack.pop() {
        on_cycle[v] = false;
        for &w in &adj[v] {
            if on_cycle[w] {
                degree[w] -= 1;
                if degree[w] == 1 {
                    stack.push(w);
                }
            }
        }
    }
    let start = (0..g.n).find(|&v| on_cycle[v]).expect("graph has a cycle");
    let mut cycle = vec![start];
    let mut prev = usize::MAX;
    let mut cur = start;
    loop {
        let next = *adj[cur].iter().find(|&&w| on_cycle[w] && w != prev).expect("cycle continues");
        if next == start {
            break;
        }
        cycle.push(next);
        prev = cur;
        cur = next;
    }
    cycle
}

/// Canonical code of a unicyclic graph: the cyclic sequence of rooted codes
/// of the trees hanging off the cycle, minimised over rotations and reflections.
pub fn unicyclic_code(g: &Graph) -> String {
    let adj = g.adjacency();
    let cycle = cycle_of(g);
    let mut blocked = vec![false; g.n];
    for &c in &cycle {
        blocked[c] = true;
    }
    let codes: Vec<String> = cycle
        .iter()
        .map(|&c| {
            blocked[c] = false;
            let code = rooted_code(&adj, c, None, &blocked);
            blocked[c] = true;
            code
        })
        .collect();
    let k = codes.len();
    let mut best: Option<String> = None;
    for dir in [false, true] {
        for shift in 0..k {
            let seq: String = (0..k)
                .map(|i| {
                    let j = if dir { (shift + k - i) % k } else { (shift + i) % k };
                    codes[j].as_str()
                })
                .collect::<Vec<_>>()
                .join(",");
            if best.as_ref().is_none_or(|b| seq < *b) {
                best = Some(seq);
            }
        }
    }
    best.expect("cycle is nonempty")
}

/// All unlabeled connected graphs with exactly one cycle on `n` vertices,
/// sorted by code.
pub fn unicyclic_graphs(n: usize) -> Vec<Graph> {
    let mut found: BTreeMap<String, Graph> = BTreeMap::new();
    for t in trees(n) {
        let adj = t.adjacency();
        for u in 0..n {
            for v in u + 1..n {
                if adj[u].contains(&v) {
                    continue;
                }
                let mut edges = t.edges.clone();
                edges.push((u, v));
                edges.sort_unstable();
                let g = Graph { n, edges };
                found.entry(unicyclic_code(&g)).or_insert(g);
            }
        }
    }
    found.into_values().collect()
}

/// The orientation with every edge pointing away from vertex 0.
pub fn orient_from_root(g: &Graph) -> Result<Quiver> {
    let adj = g.adjacency();
    let mut seen = vec![false; g.n];
    seen[0] = true;
    let mut queue = std::collections::VecDeque::from([0]);
    let mut arrows = Vec::new();
    while let Some(v) = queue.pop_front() {
        for &w in &adj[v] {
            if !seen[w] {
                seen[w] = true;
                arrows.push((v, w));
                queue.push_back(w);
            }
        }
    }
    Quiver::new(g.n, arrows)
}

/// All `2^(n-1)` orientations of a tree; bit `k` of the mask reverses edge `k`.
pub fn tree_orientations(g: &Graph) -> Result<Vec<Quiver>> {
    let m = g.edges.len();
    (0..1u64 << m)
        .map(|mask| {
            let arrows = g
                .edges
                .iter()
                .enumerate()
                .map(|(k, &(u, v))| if mask >> k & 1 == 1 { (v, u) } else { (u, v) })
                .collect();
            Quiver::new(g.n, arrows)
        })
        .collect()
}

/// Every acyclic orientation of the cycle of a unicyclic graph, with the
/// hanging trees oriented away from the cycle.
pub fn unicyclic_orientations(g: &Graph) -> Result<Vec<Quiver>> {
    let cycle = cycle_of(g);
    let k = cycle.len();
    let adj = g.adjacency();
    let mut on_cycle = vec![false; g.n];
    for &c in &cycle {
        on_cycle[c] = true;
    }
    let mut tree_arrows = Vec::new();
    let mut seen = on_cycle.clone();
    let mut queue: std::collections::VecDeque<usize> = cycle.iter().copied().collect();
    while let Some(v) = queue.pop_front() {
        for &w in &adj[v] {
            if !seen[w] {
                seen[w] = true;
                tree_arrows.push((v, w));
                queue.push_back(w);
            }
        }
    }
    let full = (1u64 << k) - 1;
    (1..full)
        .map(|mask| {
            let mut arrows = tree_arrows.clone();
            for i in 0..k {
                let (a, b) = (cycle[i], cycle[(i + 1) % k]);
                arrows.push(if mask >> i & 1 == 1 { (a, b) } else { (b, a) });
            }
            Quiver::new(g.n, arrows)
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum OrientationMode {
    OnePerTree,
    All,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum MemberKind {
    Tree,
    Unicyclic,
}

/// One oriented quiver of the corpus.
#[derive(Clone, Debug)]
pub struct Member {
    /// Canonical graph code followed by the orientation index.
    pub key: String,
    pub kind: MemberKind,
    pub graph: Graph,
    pub quiver: Quiver,
}

/// All corpus members with at most `n_max` vertices, ordered by vertex
/// count, kind and key.
pub fn corpus_members(n_max: usize, mode: OrientationMode) -> Result<Vec<Member>> {
    check_size(n_max)?;
    let mut out = Vec::new();
    for n in 1..=n_max {
        for g in trees(n) {
            let code = tree_code(&g);
            let quivers = match mode {
                OrientationMode::OnePerTree => vec![orient_from_root(&g)?],
                OrientationMode::All => tree_orientations(&g)?,
            };
            for (i, q) in quivers.into_iter().enumerate() {
                out.push(Member { key: format!("T{n}:{code}#{i}"), kind: MemberKind::Tree, graph: g.clone(), quiver: q });
            }
        }
        for g in unicyclic_graphs(n) {
            let code = unicyclic_code(&g);
            for (i, q) in unicyclic_orientations(&g)?.into_iter().enumerate() {
                out.push(Member {
                    key: format!("U{n}:{code}#{i}"),
                    kind: MemberKind::Unicyclic,
                    graph: g.clone(),
                    quiver: q,
                });
            }
        }
    }
    Ok(out)
}

fn check_size(n_max: usize) -> Result<()> {
    if n_max > CORPUS_MAX_N {
        return Err(Error::BudgetExceeded(format!("corpus size {n_max} exceeds {CORPUS_MAX_N}")));
    }
    Ok(())
}

/// Outcome for one corpus member.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MemberResult {
    pub key: String,
    pub kind: MemberKind,
    pub quiver: String,
    pub n: usize,
    pub rep_finite: bool,
    pub t_q: Option<usize>,
    /// `e(1), e(2), ...` up to the last length computed.
    pub e: Vec<usize>,
    /// `e(s) = n - 1` for `2 <= s < t_Q`.
    pub plateau: bool,
    /// No non-exceptional indecomposable up to length `t_Q`.
    pub all_exceptional_to_t_q: Option<bool>,
    pub failures: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CorpusReport {
    pub n_max: usize,
    pub mode: OrientationMode,
    pub prime: u32,
    /// `(n, unlabeled trees on exactly n vertices)`.
    pub trees_by_size: Vec<(usize, usize)>,
    /// `(n, unicyclic graphs on exactly n vertices)`.
    pub unicyclic_by_size: Vec<(usize, usize)>,
    pub quivers: usize,
    pub infinite: usize,
    pub failures: usize,
    /// Trees whose `e` tables differ between orientations (`All` mode only).
    pub orientation_mismatches: Vec<String>,
    pub members: Vec<MemberResult>,
}

impl CorpusReport {
    pub fn passed(&self) -> bool {
        self.failures == 0 && self.orientation_mismatches.is_empty()
    }
}

/// Runs [`verify_theorem`] on every member, in parallel, and folds the
/// results in member order.
pub fn corpus_verify<F: FiniteField>(n_max: usize, mode: OrientationMode, opts: &VerifyOptions) -> Result<CorpusReport> {
    let members = corpus_members(n_max, mode)?;
    let results: Vec<MemberResult> = members
        .par_iter()
        .map(|m| {
            let r = verify_theorem::<F>(&m.quiver, opts)?;
            Ok(MemberResult {
                key: m.key.clone(),
                kind: m.kind,
                quiver: m.quiver.to_string(),
                n: r.n,
                rep_finite: r.rep_finite,
                t_q: r.t_q,
                e: r.rows.iter().map(|row| row.e).collect(),
                plateau: r.plateau,
                all_exceptional_to_t_q: r.all_exceptional_to_t_q,
                failures: r.failures,
            })
        })
        .collect::<Result<_>>()?;

    let mut orientation_mismatches = Vec::new();
    if mode == OrientationMode::All {
        let mut by_graph: BTreeMap<&str, Vec<&MemberResult>> = BTreeMap::new();
        for r in results.iter().filter(|r| r.kind == MemberKind::Tree) {
            by_graph.entry(r.key.split('#').next().unwrap()).or_default().push(r);
        }
        for (graph, rs) in by_graph {
            if rs.iter().any(|r| r.e != rs[0].e || r.t_q != rs[0].t_q) {
                orientation_mismatches.push(graph.to_string());
            }
        }
    }

    let sizes = |f: fn(usize) -> Vec<Graph>| (1..=n_max).map(|n| (n, f(n).len())).collect();
    Ok(CorpusReport {
        n_max,
        mode,
        prime: F::ORDER,
        trees_by_size: sizes(trees),
        unicyclic_by_size: sizes(unicyclic_graphs),
        quivers: results.len(),
        infinite: results.iter().filter(|r| !r.rep_finite).count(),
        failures: results.iter().filter(|r| !r.failures.is_empty()).count(),
        orientation_mismatches,
        members: results,
    })
}

impl fmt::Display for CorpusReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "corpus up to n = {} ({:?}), field F_{}", self.n_max, self.mode, self.prime)?;
        writeln!(f, "{:>3} {:>6} {:>10}", "n", "trees", "unicyclic")?;
        for ((n, t), (_, u)) in self.trees_by_size.iter().zip(&self.unicyclic_by_size) {
            writeln!(f, "{n:>3} {t:>6} {u:>10}")?;
        }
        writeln!(f, "quivers checked: {}", self.quivers)?;
        writeln!(f, "representation-infinite: {}", self.infinite)?;
        writeln!(f, "failures: {}", self.failures)?;
        for m in self.members.iter().filter(|m| !m.failures.is_empty()) {
            for msg in &m.failures {
                writeln!(f, "  {} [{}]: {msg}", m.key, m.quiver)?;
            }
        }
        if !self.orientation_mismatches.is_empty() {
            writeln!(f, "orientation mismatches: {}", self.orientation_mismatches.join(" "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tree_counts() {
        let counts: Vec<usize> = (1..=8).map(|n| trees(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 1, 2, 3, 6, 11, 23]);
    }

    #[test]
    fn unicyclic_counts() {
        let counts: Vec<usize> = (3..=8).map(|n| unicyclic_graphs(n).len()).collect();
        assert_eq!(counts, vec![1, 2, 5, 13, 33, 89]);
    }

    #[test]
    fn canonical_trees_root_at_a_center() {
        for g in trees(7) {
            assert_eq!(g.edges.len(), 6);
            let q = orient_from_root(&g).unwrap();
            assert!(q.is_tree());
            assert!(q.arrows().iter().all(|&(s, t)| s < t));
        }
    }

    #[test]
    fn orientation_counts() {
        let star = &trees(5)[0];
        assert_eq!(tree_orientations(star).unwrap().len(), 16);
        let square = Graph { n: 4, edges: vec![(0, 1), (1, 2), (2, 3), (0, 3)] };
        assert_eq!(unicyclic_orientations(&square).unwrap().len(), 14);
        let lollipop = Graph { n: 4, edges: vec![(0, 1), (1, 2), (0, 2), (2, 3)] };
        let qs = unicyclic_orientations(&lollipop).unwrap();
        assert_eq!(qs.len(), 6);
        assert!(qs.iter().all(|q| !q.is_tree() && q.is_connected()));
    }

    #[test]
    fn oversized_corpus_is_refused() {
        assert!(matches!(corpus_members(10, OrientationMode::OnePerTree), Err(Error::BudgetExceeded(_))));
    }
}
