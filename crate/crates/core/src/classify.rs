//! Recognition of Dynkin and Euclidean graphs, and the finite/infinite
//! verdict that follows from it.

use std::fmt;

use serde::Serialize;

use crate::error::Result;
use crate::quiver::Quiver;

/// A simply-laced diagram type; the number is the subscript.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Diagram {
    A(usize),
    D(usize),
    E(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum GraphKind {
    Dynkin(Diagram),
    /// Extended diagram; `Euclidean(D(m))` has `m + 1` vertices.
    Euclidean(Diagram),
    HyperbolicOrBeyond,
}

/// Vertex set inducing a Euclidean subgraph of the given type.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub diagram: Diagram,
    pub vertices: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GraphClass {
    pub kind: GraphKind,
    /// Present exactly for non-Dynkin kinds.
    pub witness: Option<Witness>,
}

impl GraphClass {
    pub fn is_dynkin(&self) -> bool {
        matches!(self.kind, GraphKind::Dynkin(_))
    }
}

impl fmt::Display for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Diagram::A(n) => write!(f, "A{n}"),
            Diagram::D(n) => write!(f, "D{n}"),
            Diagram::E(n) => write!(f, "E{n}"),
        }
    }
}

impl fmt::Display for GraphKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphKind::Dynkin(d) => write!(f, "Dynkin {d}"),
            GraphKind::Euclidean(d) => write!(f, "Euclidean t{d}"),
            GraphKind::HyperbolicOrBeyond => write!(f, "hyperbolic or beyond"),
        }
    }
}

/// Classifies the underlying graph of a connected quiver.
pub fn classify_graph(q: &Quiver) -> Result<GraphClass> {
    q.require_connected()?;
    let n = q.n();
    if !q.is_tree() {
        if q.vertices().all(|v| q.degree(v) == 2) {
            return Ok(euclidean(Diagram::A(n - 1), q.vertices().collect()));
        }
        let cycle = shortest_cycle(q);
        let diagram = Diagram::A(cycle.len() - 1);
        return Ok(beyond(diagram, cycle));
    }

    let branching: Vec<usize> = q.vertices().filter(|&v| q.degree(v) >= 3).collect();
    if branching.is_empty() {
        return Ok(dynkin(Diagram::A(n)));
    }
    if let Some(&hub) = branching.iter().find(|&&v| q.degree(v) >= 4) {
        let mut vertices = vec![hub];
        vertices.extend(&q.neighbors(hub)[..4]);
        return Ok(euclidean_or_beyond(q, Diagram::D(4), vertices));
    }
    if branching.len() >= 2 {
        return Ok(euclidean_or_beyond(q, Diagram::D(0), affine_d_witness(q, &branching)));
    }

    let center = branching[0];
    let mut arms: Vec<Vec<usize>> = q.neighbors(center).iter().map(|&w| q.walk_arm(center, w)).collect();
    arms.sort_by(|a, b| b.len().cmp(&a.len()));
    // arm sizes counted with the center
    let (p, qq, r) = (arms[0].len() + 1, arms[1].len() + 1, arms[2].len() + 1);
    let take = |lens: [usize; 3]| {
        let mut v = vec![center];
        for (arm, k) in arms.iter().zip(lens) {
            v.extend(&arm[..k]);
        }
        v
    };
    Ok(match (p, qq, r) {
        (_, 2, 2) => dynkin(Diagram::D(n)),
        (3..=5, 3, 2) => dynkin(Diagram::E(n)),
        (_, _, 3..) => euclidean_or_beyond(q, Diagram::E(6), take([2, 2, 2])),
        (_, 4.., 2) => euclidean_or_beyond(q, Diagram::E(7), take([3, 3, 1])),
        _ => euclidean_or_beyond(q, Diagram::E(8), take([5, 2, 1])),
    })
}

/// Representation-finite exactly for Dynkin underlying graphs.
pub fn is_representation_finite(q: &Quiver) -> Result<bool> {
    Ok(classify_graph(q)?.is_dynkin())
}

/// Whether a tree contains a subgraph of type extended `D_m` for some `m`.
pub fn has_affine_d_subgraph(q: &Quiver) -> bool {
    let branching: Vec<usize> = q.vertices().filter(|&v| q.degree(v) >= 3).collect();
    branching.len() >= 2 || branching.iter().any(|&v| q.degree(v) >= 4)
}

/// Whether a tree contains a vertex of degree at least 4 (a star with four leaves).
pub fn has_affine_d4_subgraph(q: &Quiver) -> bool {
    q.vertices().any(|v| q.degree(v) >= 4)
}

fn dynkin(d: Diagram) -> GraphClass {
    GraphClass { kind: GraphKind::Dynkin(d), witness: None }
}

fn euclidean(d: Diagram, vertices: Vec<usize>) -> GraphClass {
    GraphClass { kind: GraphKind::Euclidean(d), witness: Some(Witness { diagram: d, vertices }) }
}

fn beyond(d: Diagram, vertices: Vec<usize>) -> GraphClass {
    GraphClass { kind: GraphKind::HyperbolicOrBeyond, witness: Some(Witness { diagram: d, vertices }) }
}

// `Diagram::D(0)` is a placeholder for "extended D of whatever size the witness has".
fn euclidean_or_beyond(q: &Quiver, d: Diagram, mut vertices: Vec<usize>) -> GraphClass {
    let d = match d {
        Diagram::D(0) => Diagram::D(vertices.len() - 1),
        other => other,
    };
    vertices.sort_unstable();
    if vertices.len() == q.n() {
        euclidean(d, vertices)
    } else {
        beyond(d, vertices)
    }
}

/// Path between two branching vertices with no branching vertex inside,
/// plus two further neighbours at each end.
fn affine_d_witness(q: &Quiver, branching: &[usize]) -> Vec<usize> {
    let u = branching[0];
    let path = branching[1..]
        .iter()
        .filter_map(|&v| q.path_between(u, v))
        .min_by_key(Vec::len)
        .expect("tree is connected");
    let v = *path.last().unwrap();
    let mut vertices = path.clone();
    for (end, next) in [(u, path[1]), (v, path[path.len() - 2])] {
        vertices.extend(q.neighbors(end).iter().filter(|&&w| w != next).take(2));
    }
    vertices
}

/// Vertices of a shortest cycle, which is necessarily an induced cycle.
fn shortest_cycle(q: &Quiver) -> Vec<usize> {
    let mut best: Option<Vec<usize>> = None;
    for (u, v) in q.edges() {
        // BFS from u to v avoiding the edge u-v
        let mut parent = vec![usize::MAX; q.n()];
        parent[u] = u;
        let mut queue = std::collections::VecDeque::from([u]);
        while let Some(x) = queue.pop_front() {
            if x == v {
                break;
            }
            for &y in q.neighbors(x) {
                if (x, y) == (u, v) || parent[y] != usize::MAX {
                    continue;
                }
                parent[y] = x;
                queue.push_back(y);
            }
        }
        if parent[v] == usize::MAX {
            continue;
        }
        let mut cycle = vec![v];
        let mut cur = v;
        while cur != u {
            cur = parent[cur];
            cycle.push(cur);
        }
        if best.as_ref().is_none_or(|b| cycle.len() < b.len()) {
            best = Some(cycle);
        }
    }
    let mut cycle = best.expect("graph has a cycle");
    cycle.sort_unstable();
    cycle
}
