//! Quivers, dimension vectors, presets and the structural operations the
//! census is built from.

use std::collections::VecDeque;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};

/// Vertex sets are stored as `u64` masks.
pub const MAX_VERTICES: usize = 64;

/// A finite quiver without loops, multiple arrows or oriented cycles.
///
/// Vertices are `0..n`. Connectedness is not required at construction time
/// (vertex deletion can disconnect), but every census operation checks it.
#[derive(Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Quiver {
    n: usize,
    arrows: Vec<(usize, usize)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    name: Option<String>,
    #[serde(skip)]
    neighbors: Vec<Vec<usize>>,
}

impl Quiver {
    pub fn new(n: usize, arrows: Vec<(usize, usize)>) -> Result<Self> {
        if n == 0 {
            return Err(Error::Empty);
        }
        if n > MAX_VERTICES {
            return Err(Error::BudgetExceeded(format!("{n} vertices; at most {MAX_VERTICES} supported")));
        }
        let mut neighbors = vec![Vec::new(); n];
        for &(s, t) in &arrows {
            for v in [s, t] {
                if v >= n {
                    return Err(Error::InvalidVertex { vertex: v, n });
                }
            }
            if s == t {
                return Err(Error::Loop(s));
            }
            if neighbors[s].contains(&t) {
                return Err(Error::MultipleArrow(s.min(t), s.max(t)));
            }
            neighbors[s].push(t);
            neighbors[t].push(s);
        }
        for list in &mut neighbors {
            list.sort_unstable();
        }
        let q = Self { n, arrows, name: None, neighbors };
        if let Some(v) = q.directed_cycle_vertex() {
            return Err(Error::DirectedCycle(v));
        }
        Ok(q)
    }

    pub fn named(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn arrows(&self) -> &[(usize, usize)] {
        &self.arrows
    }

    pub fn arrow_count(&self) -> usize {
        self.arrows.len()
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.neighbors[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.neighbors[v].len()
    }

    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.neighbors[u].binary_search(&v).is_ok()
    }

    pub fn vertices(&self) -> std::ops::Range<usize> {
        0..self.n
    }

    /// Unordered edges `(min, max)` of the underlying graph, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut e: Vec<_> = self.arrows.iter().map(|&(s, t)| (s.min(t), s.max(t))).collect();
        e.sort_unstable();
        e
    }

    pub fn is_connected(&self) -> bool {
        self.component_of(0).len() == self.n
    }

    pub fn is_tree(&self) -> bool {
        self.arrows.len() + 1 == self.n && self.is_connected()
    }

    pub(crate) fn require_connected(&self) -> Result<()> {
        if self.is_connected() {
            Ok(())
        } else {
            Err(Error::Disconnected)
        }
    }

    pub(crate) fn require_tree(&self) -> Result<()> {
        self.require_connected()?;
        if self.is_tree() {
            Ok(())
        } else {
            Err(Error::NotATree)
        }
    }

    fn component_of(&self, start: usize) -> Vec<usize> {
        let mut seen = vec![false; self.n];
        let mut queue = VecDeque::from([start]);
        seen[start] = true;
        let mut out = Vec::new();
        while let Some(v) = queue.pop_front() {
            out.push(v);
            for &w in &self.neighbors[v] {
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        out
    }

    fn directed_cycle_vertex(&self) -> Option<usize> {
        let mut indeg = vec![0usize; self.n];
        let mut out = vec![Vec::new(); self.n];
        for &(s, t) in &self.arrows {
            indeg[t] += 1;
            out[s].push(t);
        }
        let mut queue: VecDeque<usize> = (0..self.n).filter(|&v| indeg[v] == 0).collect();
        let mut removed = 0;
        while let Some(v) = queue.pop_front() {
            removed += 1;
            for &w in &out[v] {
                indeg[w] -= 1;
                if indeg[w] == 0 {
                    queue.push_back(w);
                }
            }
        }
        (removed < self.n).then(|| (0..self.n).find(|&v| indeg[v] > 0).unwrap())
    }

    /// True when every vertex of `set` is valid and the induced subgraph is connected.
    pub fn induces_connected(&self, set: &[usize]) -> bool {
        let Some(&first) = set.first() else { return false };
        let mask = self.mask_of(set);
        let mut seen = 1u64 << first;
        let mut stack = vec![first];
        while let Some(v) = stack.pop() {
            for &w in &self.neighbors[v] {
                let bit = 1u64 << w;
                if mask & bit != 0 && seen & bit == 0 {
                    seen |= bit;
                    stack.push(w);
                }
            }
        }
        seen == mask
    }

    /// Number of edges of the subgraph induced on `set`.
    pub fn induced_edge_count(&self, set: &[usize]) -> usize {
        let mask = self.mask_of(set);
        self.arrows
            .iter()
            .filter(|&&(s, t)| mask & (1 << s) != 0 && mask & (1 << t) != 0)
            .count()
    }

    fn mask_of(&self, set: &[usize]) -> u64 {
        set.iter().fold(0u64, |m, &v| m | (1u64 << v))
    }

    /// The induced subquiver on `vertices` (kept in the given order).
    pub fn induced(&self, vertices: &[usize]) -> Result<Subquiver> {
        let mut new_index = vec![usize::MAX; self.n];
        for (k, &v) in vertices.iter().enumerate() {
            if v >= self.n {
                return Err(Error::InvalidVertex { vertex: v, n: self.n });
            }
            if new_index[v] != usize::MAX {
                return Err(Error::InvalidSubset(format!("vertex {v} repeated")));
            }
            new_index[v] = k;
        }
        let arrows = self
            .arrows
            .iter()
            .filter(|&&(s, t)| new_index[s] != usize::MAX && new_index[t] != usize::MAX)
            .map(|&(s, t)| (new_index[s], new_index[t]))
            .collect();
        let quiver = Quiver::new(vertices.len(), arrows)?;
        Ok(Subquiver { quiver, vertices: vertices.to_vec() })
    }

    /// Removes `v` and its arrows; remaining vertices are renumbered in order.
    pub fn delete_vertex(&self, v: usize) -> Result<Subquiver> {
        if v >= self.n {
            return Err(Error::InvalidVertex { vertex: v, n: self.n });
        }
        if self.n == 1 {
            return Err(Error::Empty);
        }
        let keep: Vec<usize> = (0..self.n).filter(|&w| w != v).collect();
        self.induced(&keep)
    }

    /// All vertex subsets of size `size` inducing a connected subquiver,
    /// each sorted ascending, listed in lexicographic order.
    pub fn connected_subquivers(&self, size: usize) -> Result<Vec<Vec<usize>>> {
        if size == 0 || size > self.n {
            return Err(Error::SizeOutOfRange { size, n: self.n });
        }
        let mut out = Vec::new();
        for root in 0..self.n {
            let ext: Vec<usize> = self.neighbors[root].iter().copied().filter(|&w| w > root).collect();
            self.extend_subset(root, 1u64 << root, ext, size, &mut out);
        }
        let mut sets: Vec<Vec<usize>> =
            out.into_iter().map(|m| (0..self.n).filter(|&v| m & (1 << v) != 0).collect()).collect();
        sets.sort();
        Ok(sets)
    }

    // ESU-style extension: each connected set is produced once, from its
    // smallest vertex.
    fn extend_subset(&self, root: usize, set: u64, mut ext: Vec<usize>, size: usize, out: &mut Vec<u64>) {
        if set.count_ones() as usize == size {
            out.push(set);
            return;
        }
        let closed = set | self.neighbor_mask(set);
        while let Some(w) = ext.pop() {
            let mut next = ext.clone();
            for &u in &self.neighbors[w] {
                if u > root && closed & (1 << u) == 0 && !next.contains(&u) {
                    next.push(u);
                }
            }
            self.extend_subset(root, set | (1 << w), next, size, out);
        }
    }

    fn neighbor_mask(&self, set: u64) -> u64 {
        let mut m = 0;
        for v in 0..self.n {
            if set & (1 << v) != 0 {
                for &w in &self.neighbors[v] {
                    m |= 1 << w;
                }
            }
        }
        m
    }

    /// The same underlying graph with arrow `index` reversed.
    pub fn reverse_arrow(&self, index: usize) -> Result<Quiver> {
        let mut arrows = self.arrows.clone();
        let Some(a) = arrows.get_mut(index) else {
            return Err(Error::InvalidSubset(format!("no arrow {index}")));
        };
        *a = (a.1, a.0);
        Quiver::new(self.n, arrows)
    }

    /// Euler form `<d,e> = sum_i d_i e_i - sum_{i->j} d_i e_j`.
    pub fn euler_form(&self, d: &DimVector, e: &DimVector) -> Result<i64> {
        self.check_len(d)?;
        self.check_len(e)?;
        let diag: i64 = d.0.iter().zip(&e.0).map(|(a, b)| a * b).sum();
        let off: i64 = self.arrows.iter().map(|&(s, t)| d.0[s] * e.0[t]).sum();
        Ok(diag - off)
    }

    /// Tits form `q(d) = <d,d>`; depends only on the underlying graph.
    pub fn tits_form(&self, d: &DimVector) -> Result<i64> {
        self.euler_form(d, d)
    }

    /// Symmetrized form `(d,e) = <d,e> + <e,d>`.
    pub fn symmetric_form(&self, d: &DimVector, e: &DimVector) -> Result<i64> {
        Ok(self.euler_form(d, e)? + self.euler_form(e, d)?)
    }

    /// `(d, e_i)`, the coefficient driving the simple reflection at `i`.
    pub(crate) fn pairing_with_simple(&self, d: &[i64], i: usize) -> i64 {
        2 * d[i] - self.neighbors[i].iter().map(|&j| d[j]).sum::<i64>()
    }

    pub(crate) fn check_len(&self, d: &DimVector) -> Result<()> {
        if d.len() == self.n {
            Ok(())
        } else {
            Err(Error::DimensionMismatch { expected: self.n, got: d.len() })
        }
    }

    /// Arm structure around the unique branching vertex, if there is one.
    pub fn arm_profile(&self) -> Result<Option<ArmProfile>> {
        self.require_tree()?;
        let branching: Vec<usize> = (0..self.n).filter(|&v| self.degree(v) >= 3).collect();
        let [center] = branching[..] else { return Ok(None) };
        let mut arms: Vec<usize> = self.neighbors[center]
            .iter()
            .map(|&first| self.walk_arm(center, first).len() + 1)
            .collect();
        arms.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Some(ArmProfile { center, arms }))
    }

    /// Vertices of the arm leaving `center` through `first`, outward, in a tree.
    pub(crate) fn walk_arm(&self, center: usize, first: usize) -> Vec<usize> {
        let mut arm = vec![first];
        let (mut prev, mut cur) = (center, first);
        while let Some(&next) = self.neighbors[cur].iter().find(|&&w| w != prev) {
            if self.degree(cur) != 2 {
                break;
            }
            arm.push(next);
            prev = cur;
            cur = next;
        }
        arm
    }

    /// Shortest path between two vertices of the underlying graph, inclusive.
    pub(crate) fn path_between(&self, from: usize, to: usize) -> Option<Vec<usize>> {
        let mut parent = vec![usize::MAX; self.n];
        parent[from] = from;
        let mut queue = VecDeque::from([from]);
        while let Some(v) = queue.pop_front() {
            if v == to {
                let mut path = vec![to];
                let mut cur = to;
                while cur != from {
                    cur = parent[cur];
                    path.push(cur);
                }
                path.reverse();
                return Some(path);
            }
            for &w in &self.neighbors[v] {
                if parent[w] == usize::MAX {
                    parent[w] = v;
                    queue.push_back(w);
                }
            }
        }
        None
    }
}

impl fmt::Display for Quiver {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{};", self.n)?;
        for &(s, t) in &self.arrows {
            write!(f, " {s}->{t}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Quiver {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.name {
            Some(name) => write!(f, "Quiver({name}: {self})"),
            None => write!(f, "Quiver({self})"),
        }
    }
}

impl FromStr for Quiver {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_quiver(s)
    }
}

/// Parses `"<n>; i->j i->j ..."` with 0-based vertex indices.
pub fn parse_quiver(text: &str) -> Result<Quiver> {
    let (head, body) = text
        .split_once(';')
        .ok_or_else(|| Error::Syntax("expected '<n>;' before the arrow list".into()))?;
    let n: usize = head
        .trim()
        .parse()
        .map_err(|_| Error::Syntax(format!("vertex count {:?} is not a number", head.trim())))?;
    let mut arrows = Vec::new();
    for token in body.split_whitespace() {
        let (s, t) = token
            .split_once("->")
            .ok_or_else(|| Error::Syntax(format!("arrow {token:?} is not of the form i->j")))?;
        let parse = |x: &str| {
            x.parse::<usize>().map_err(|_| Error::Syntax(format!("bad vertex {x:?} in arrow {token:?}")))
        };
        arrows.push((parse(s)?, parse(t)?));
    }
    Quiver::new(n, arrows)
}

/// A subquiver together with the original index of each of its vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subquiver {
    pub quiver: Quiver,
    /// `vertices[k]` is the original index of new vertex `k`.
    pub vertices: Vec<usize>,
}

impl Subquiver {
    pub fn original(&self, v: usize) -> usize {
        self.vertices[v]
    }

    /// Pushes a dimension vector on the subquiver forward to the ambient quiver.
    pub fn extend(&self, d: &DimVector, ambient_n: usize) -> DimVector {
        let mut out = vec![0; ambient_n];
        for (k, &v) in self.vertices.iter().enumerate() {
            out[v] = d.0[k];
        }
        DimVector(out)
    }
}

/// Nonnegative integer vector indexed by vertices. Coordinates are signed so
/// that reflections can leave the positive cone.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct DimVector(pub Vec<i64>);

impl DimVector {
    pub fn new(coords: Vec<i64>) -> Self {
        Self(coords)
    }

    pub fn zeros(n: usize) -> Self {
        Self(vec![0; n])
    }

    pub fn unit(n: usize, i: usize) -> Self {
        let mut v = vec![0; n];
        v[i] = 1;
        Self(v)
    }

    /// Indicator vector of a vertex set.
    pub fn thin(n: usize, set: &[usize]) -> Self {
        let mut v = vec![0; n];
        for &i in set {
            v[i] = 1;
        }
        Self(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn height(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn support(&self) -> Vec<usize> {
        (0..self.0.len()).filter(|&i| self.0[i] > 0).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn is_nonnegative(&self) -> bool {
        self.0.iter().all(|&x| x >= 0)
    }

    /// Every coordinate is 0 or 1.
    pub fn is_thin(&self) -> bool {
        self.0.iter().all(|&x| x == 0 || x == 1)
    }

    pub fn dims(&self) -> Vec<usize> {
        self.0.iter().map(|&x| x.max(0) as usize).collect()
    }
}

impl fmt::Display for DimVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, x) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for DimVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl From<Vec<i64>> for DimVector {
    fn from(v: Vec<i64>) -> Self {
        Self(v)
    }
}

/// Arms around the unique branching vertex of a tree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ArmProfile {
    pub center: usize,
    /// Arm sizes counted with the shared center, descending.
    pub arms: Vec<usize>,
}

impl ArmProfile {
    /// `(p, q, r)` when there are exactly three arms.
    pub fn t_pqr(&self) -> Option<(usize, usize, usize)> {
        match self.arms[..] {
            [p, q, r] => Some((p, q, r)),
            _ => None,
        }
    }
}

/// Named families of quivers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Family {
    A,
    D,
    E,
    AffineA,
    AffineD,
    AffineE,
    T,
    Star,
}

/// The canonical member of a family, arrows pointing away from the center
/// (or from vertex 0 for paths and cycles).
pub fn preset(family: Family, params: &[usize]) -> Result<Quiver> {
    let bad = || Error::InvalidPreset(format!("{family:?} with parameters {params:?}"));
    let q = match (family, params) {
        (Family::A, &[n]) if n >= 1 => {
            Quiver::new(n, (1..n).map(|i| (i - 1, i)).collect())?.named(format!("A{n}"))
        }
        (Family::D, &[n]) if n >= 4 => star_with_arms(&[n - 2, 2, 2])?.named(format!("D{n}")),
        (Family::E, &[n]) if (6..=8).contains(&n) => star_with_arms(&[n - 3, 3, 2])?.named(format!("E{n}")),
        (Family::AffineA, &[n]) if n >= 2 => {
            let mut arrows: Vec<_> = (1..=n).map(|i| (i - 1, i)).collect();
            arrows.push((0, n));
            Quiver::new(n + 1, arrows)?.named(format!("tA{n}"))
        }
        (Family::AffineD, &[m]) if m >= 4 => affine_d(m)?.named(format!("tD{m}")),
        (Family::AffineE, &[6]) => star_with_arms(&[3, 3, 3])?.named("tE6"),
        (Family::AffineE, &[7]) => star_with_arms(&[4, 4, 2])?.named("tE7"),
        (Family::AffineE, &[8]) => star_with_arms(&[6, 3, 2])?.named("tE8"),
        (Family::T, &[p, q, r]) if p >= q && q >= r && r >= 2 => {
            star_with_arms(&[p, q, r])?.named(format!("T{p},{q},{r}"))
        }
        (Family::Star, &[k]) if k >= 1 => star_with_arms(&vec![2; k])?.named(format!("star{k}")),
        _ => return Err(bad()),
    };
    Ok(q)
}

/// Parses the preset names `A<n>`, `D<n>`, `E6..E8`, `tA<n>`, `tD<m>`,
/// `tE6..tE8`, `T<p>,<q>,<r>` and `star<k>`.
pub fn preset_by_name(name: &str) -> Result<Quiver> {
    let bad = || Error::InvalidPreset(name.to_string());
    let nums = |s: &str| -> Result<Vec<usize>> {
        s.split(',').map(|x| x.trim().parse::<usize>().map_err(|_| bad())).collect()
    };
    let (family, rest) = if let Some(r) = name.strip_prefix("star") {
        (Family::Star, r)
    } else if let Some(r) = name.strip_prefix("tA") {
        (Family::AffineA, r)
    } else if let Some(r) = name.strip_prefix("tD") {
        (Family::AffineD, r)
    } else if let Some(r) = name.strip_prefix("tE") {
        (Family::AffineE, r)
    } else if let Some(r) = name.strip_prefix('A') {
        (Family::A, r)
    } else if let Some(r) = name.strip_prefix('D') {
        (Family::D, r)
    } else if let Some(r) = name.strip_prefix('E') {
        (Family::E, r)
    } else if let Some(r) = name.strip_prefix('T') {
        (Family::T, r)
    } else {
        return Err(bad());
    };
    if rest.is_empty() {
        return Err(bad());
    }
    let params = nums(rest)?;
    preset(family, &params).map_err(|_| bad())
}

/// Tree with a center (vertex 0) and arms of the given sizes, each counted
/// with the center. Arm vertices are numbered consecutively outward.
fn star_with_arms(arms: &[usize]) -> Result<Quiver> {
    let n = 1 + arms.iter().map(|&a| a - 1).sum::<usize>();
    let mut arrows = Vec::with_capacity(n - 1);
    let mut next = 1;
    for &a in arms {
        let mut prev = 0;
        for _ in 1..a {
            arrows.push((prev, next));
            prev = next;
            next += 1;
        }
    }
    Quiver::new(n, arrows)
}

/// `m + 1` vertices: a path `0..=m-4` with two extra leaves at each end.
fn affine_d(m: usize) -> Result<Quiver> {
    let spine = m - 3;
    let mut arrows: Vec<_> = (1..spine).map(|i| (i - 1, i)).collect();
    let last = spine - 1;
    arrows.extend([(0, spine), (0, spine + 1), (last, spine + 2), (last, spine + 3)]);
    Quiver::new(m + 1, arrows)
}
