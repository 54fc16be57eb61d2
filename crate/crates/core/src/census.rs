//! Exceptional counts `e_Q(t)`, the threshold `t_Q`, the subquiver lemma and
//! the finite/infinite equivalence check for a single quiver.
//!
//! Everything is generic over the prime field used by the oracle; counts of
//! exceptional classes do not depend on it, which the tests check.

use std::collections::VecDeque;
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::classify::{classify_graph, has_affine_d_subgraph, GraphClass};
use crate::error::{Error, Result};
use crate::field::FiniteField;
use crate::quiver::{DimVector, Quiver};
use crate::rep::{count_exceptional, enumerate_iso_classes, is_exceptional, is_indecomposable, OracleBudget};
use crate::roots::{classify_vector, connected_vectors_of_height, positive_roots_of_height, RootVerdict};

/// Largest length the threshold scan visits.
pub const THRESHOLD_CAP: usize = 7;
/// Largest length the audit scan visits.
pub const AUDIT_CAP: usize = 9;

/// Number of connected `t`-vertex subquivers of a tree, which is the number
/// of thin indecomposables of length `t`.
pub fn thin_count(q: &Quiver, t: usize) -> Result<usize> {
    q.require_tree()?;
    Ok(q.connected_subquivers(t)?.len())
}

/// Thin exceptional representations of length `t`: connected supports that
/// induce a tree. On a support containing a cycle the thin representations
/// all have `q(d) <= 0` and so carry self-extensions.
pub fn thin_exceptional_count(q: &Quiver, t: usize) -> usize {
    if t == 0 || t > q.n() {
        return 0;
    }
    q.connected_subquivers(t)
        .expect("size in range")
        .iter()
        .filter(|s| q.induced_edge_count(s) + 1 == s.len())
        .count()
}

/// Non-thin vectors of height `t` that can carry an exceptional
/// representation: connected support, Tits form 1, positive real root.
pub fn non_thin_candidates(q: &Quiver, t: usize) -> Vec<DimVector> {
    connected_vectors_of_height(q, t)
        .into_iter()
        .filter(|d| !d.is_thin())
        .filter(|d| q.tits_form(d).expect("length matches") == 1)
        .filter(|d| classify_vector(q, d).expect("valid vector").verdict == RootVerdict::PositiveRealRoot)
        .collect()
}

/// `e(t) = e'(t) + e''(t)`, split into thin and non-thin classes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Split {
    pub thin: usize,
    pub non_thin: usize,
}

impl Split {
    pub fn total(&self) -> usize {
        self.thin + self.non_thin
    }
}

pub fn e_split<F: FiniteField>(q: &Quiver, t: usize, budget: &OracleBudget) -> Result<Split> {
    q.require_connected()?;
    if t == 0 {
        return Err(Error::SizeOutOfRange { size: 0, n: q.n() });
    }
    let thin = thin_exceptional_count(q, t);
    let counts: Vec<usize> = non_thin_candidates(q, t)
        .par_iter()
        .map(|d| count_exceptional::<F>(q, d, budget))
        .collect::<Result<_>>()?;
    Ok(Split { thin, non_thin: counts.iter().sum() })
}

/// Number of isomorphism classes of exceptional representations of length `t`.
pub fn e<F: FiniteField>(q: &Quiver, t: usize, budget: &OracleBudget) -> Result<usize> {
    Ok(e_split::<F>(q, t, budget)?.total())
}

/// `e(t)` recomputed by running the oracle on every connected-support vector
/// of height `t`, with no root-theoretic filtering.
pub fn pure_oracle_e<F: FiniteField>(q: &Quiver, t: usize, budget: &OracleBudget) -> Result<usize> {
    q.require_connected()?;
    let counts: Vec<usize> = connected_vectors_of_height(q, t)
        .par_iter()
        .map(|d| count_exceptional::<F>(q, d, budget))
        .collect::<Result<_>>()?;
    Ok(counts.iter().sum())
}

/// Smallest `t` in `[2, min(n, 7)]` with `e(t) >= n`.
pub fn t_q<F: FiniteField>(q: &Quiver, budget: &OracleBudget) -> Result<Option<usize>> {
    scan_threshold::<F>(q, 2, q.n().min(THRESHOLD_CAP), budget)
}

/// Result of scanning past the usual cap.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ThresholdAudit {
    pub t_q: Option<usize>,
    pub scanned_to: usize,
    /// A threshold found beyond `min(n, 7)`; always a defect.
    pub late_threshold: Option<usize>,
}

/// [`t_q`], extended to `min(n, 9)` when nothing is found by `min(n, 7)`.
pub fn t_q_audited<F: FiniteField>(q: &Quiver, budget: &OracleBudget) -> Result<ThresholdAudit> {
    let cap = q.n().min(THRESHOLD_CAP);
    let t_q = scan_threshold::<F>(q, 2, cap, budget)?;
    let scanned_to = if t_q.is_some() { cap } else { q.n().min(AUDIT_CAP) };
    let late_threshold = match t_q {
        Some(_) => None,
        None => scan_threshold::<F>(q, cap + 1, scanned_to, budget)?,
    };
    Ok(ThresholdAudit { t_q, scanned_to, late_threshold })
}

fn scan_threshold<F: FiniteField>(q: &Quiver, lo: usize, hi: usize, budget: &OracleBudget) -> Result<Option<usize>> {
    for t in lo..=hi {
        if e::<F>(q, t, budget)? >= q.n() {
            return Ok(Some(t));
        }
    }
    Ok(None)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum CountMethod {
    /// Positive roots of the given height, one indecomposable each.
    Gabriel,
    /// Isomorphism classes enumerated over the prime field.
    Oracle,
}

/// Indecomposables of one length. Over an algebraically closed field the
/// count is infinite whenever `imaginary` is set; `count` is then the finite
/// number of classes over the prime field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct IndecomposableCount {
    pub count: usize,
    pub non_thin: usize,
    pub non_exceptional: usize,
    /// An imaginary root of this height exists.
    pub imaginary: bool,
    pub method: CountMethod,
}

/// Gabriel's count for Dynkin quivers, the oracle otherwise.
pub fn indecomposable_count<F: FiniteField>(q: &Quiver, t: usize, budget: &OracleBudget) -> Result<IndecomposableCount> {
    if classify_graph(q)?.is_dynkin() {
        let roots = positive_roots_of_height(q, t)?;
        Ok(IndecomposableCount {
            count: roots.len(),
            non_thin: roots.iter().filter(|(d, _)| !d.is_thin()).count(),
            non_exceptional: 0,
            imaginary: false,
            method: CountMethod::Gabriel,
        })
    } else {
        indecomposables_by_oracle::<F>(q, t, budget)
    }
}

/// Enumerates isomorphism classes on every positive root of height `t` and
/// tests each for indecomposability and rigidity. Vectors that are not roots
/// carry no indecomposable, so they are skipped.
pub fn indecomposables_by_oracle<F: FiniteField>(
    q: &Quiver,
    t: usize,
    budget: &OracleBudget,
) -> Result<IndecomposableCount> {
    let roots = positive_roots_of_height(q, t)?;
    let per_root: Vec<(usize, usize)> = roots
        .par_iter()
        .map(|(d, _)| {
            let mut found = (0, 0);
            for m in enumerate_iso_classes::<F>(q, d, budget)? {
                if is_indecomposable(&m, budget)? {
                    found.0 += 1;
                    if !is_exceptional(&m)? {
                        found.1 += 1;
                    }
                }
            }
            Ok(found)
        })
        .collect::<Result<_>>()?;
    let mut out = IndecomposableCount {
        count: 0,
        non_thin: 0,
        non_exceptional: 0,
        imaginary: roots.iter().any(|(_, v)| *v == RootVerdict::ImaginaryRoot),
        method: CountMethod::Oracle,
    };
    for ((d, _), (count, bad)) in roots.iter().zip(per_root) {
        out.count += count;
        out.non_exceptional += bad;
        if !d.is_thin() {
            out.non_thin += count;
        }
    }
    Ok(out)
}

/// A thin exceptional representation of `Q` whose support reaches a vertex
/// outside `Q'`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LemmaWitness {
    pub deleted: usize,
    pub support: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LemmaReport {
    pub t: usize,
    pub n: usize,
    pub sub_n: usize,
    pub e_q: usize,
    pub e_sub: usize,
    /// `e_q >= e_sub + n - sub_n`.
    pub holds: bool,
    /// One per vertex outside `Q'`, with pairwise distinct supports.
    pub witnesses: Vec<LemmaWitness>,
}

/// Compares `e_Q(t)` with `e_{Q'}(t) + n - n'` for the subquiver induced on
/// `sub`, and exhibits the extra thin representations.
///
/// Vertices outside `Q'` are added one at a time in breadth-first order; the
/// witness for a vertex is a connected `t`-set grown around it inside `Q'`
/// and the vertices added before it, so it is new at that step.
pub fn lemma_check<F: FiniteField>(q: &Quiver, sub: &[usize], t: usize, budget: &OracleBudget) -> Result<LemmaReport> {
    q.require_tree()?;
    let mut sorted = sub.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != sub.len() || sorted.is_empty() {
        return Err(Error::InvalidSubset("subset must be nonempty without repeats".into()));
    }
    if let Some(&v) = sorted.iter().find(|&&v| v >= q.n()) {
        return Err(Error::InvalidVertex { vertex: v, n: q.n() });
    }
    if !q.induces_connected(&sorted) {
        return Err(Error::InvalidSubset(format!("{sorted:?} does not induce a connected subquiver")));
    }
    if t < 2 || t > sorted.len() {
        return Err(Error::SizeOutOfRange { size: t, n: sorted.len() });
    }
    let subquiver = q.induced(&sorted)?;
    let e_q = e::<F>(q, t, budget)?;
    let e_sub = e::<F>(&subquiver.quiver, t, budget)?;

    let n = q.n();
    let mut allowed = vec![false; n];
    for &v in &sorted {
        allowed[v] = true;
    }
    let mut witnesses = Vec::new();
    for omega in outward_order(q, &sorted) {
        allowed[omega] = true;
        let support = grow_connected(q, omega, t, &allowed);
        witnesses.push(LemmaWitness { deleted: omega, support });
    }
    Ok(LemmaReport {
        t,
        n,
        sub_n: sorted.len(),
        e_q,
        e_sub,
        holds: e_q >= e_sub + (n - sorted.len()),
        witnesses,
    })
}

// Vertices outside `start`, in breadth-first order from it.
fn outward_order(q: &Quiver, start: &[usize]) -> Vec<usize> {
    let mut seen = vec![false; q.n()];
    let mut queue: VecDeque<usize> = start.iter().copied().collect();
    for &v in start {
        seen[v] = true;
    }
    let mut order = Vec::new();
    while let Some(v) = queue.pop_front() {
        for &w in q.neighbors(v) {
            if !seen[w] {
                seen[w] = true;
                order.push(w);
                queue.push_back(w);
            }
        }
    }
    order
}

// Breadth-first ball around `root` inside `allowed`, cut at `size` vertices.
fn grow_connected(q: &Quiver, root: usize, size: usize, allowed: &[bool]) -> Vec<usize> {
    let mut seen = vec![false; q.n()];
    seen[root] = true;
    let mut queue = VecDeque::from([root]);
    let mut set = Vec::new();
    while let Some(v) = queue.pop_front() {
        set.push(v);
        if set.len() == size {
            break;
        }
        for &w in q.neighbors(v) {
            if allowed[w] && !seen[w] {
                seen[w] = true;
                queue.push_back(w);
            }
        }
    }
    set.sort_unstable();
    set
}

/// The threshold expected from the shape of the underlying graph: 2 off
/// trees, 3 with an extended `D` subgraph, then 4, 5 or 7 for three-armed
/// trees containing extended `E_6`, `E_7` or only `E_8`.
pub fn predicted_t_q(q: &Quiver) -> Result<Option<usize>> {
    q.require_connected()?;
    if !q.is_tree() {
        return Ok(Some(2));
    }
    if has_affine_d_subgraph(q) {
        return Ok(Some(3));
    }
    let Some((p, qq, r)) = q.arm_profile()?.and_then(|a| a.t_pqr()) else {
        return Ok(None);
    };
    Ok(if r >= 3 {
        Some(4)
    } else if qq >= 4 {
        Some(5)
    } else if qq == 3 && p >= 6 {
        Some(7)
    } else {
        None
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LengthRow {
    pub t: usize,
    pub e: usize,
    pub thin: usize,
    pub non_thin: usize,
    pub indecomposables: IndecomposableCount,
}

/// Truth values of the three conditions and their pairwise agreement.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Verdicts {
    /// Representation-infinite.
    pub infinite: bool,
    /// `n` indecomposable classes (or a family) at one length `t >= 2`.
    pub many_indecomposables: bool,
    /// Threshold condition on `e` with all short indecomposables exceptional.
    pub exceptional_threshold: bool,
    pub i_iff_ii: bool,
    pub ii_iff_iii: bool,
    pub i_iff_iii: bool,
}

impl Verdicts {
    fn new(i: bool, ii: bool, iii: bool) -> Self {
        Self {
            infinite: i,
            many_indecomposables: ii,
            exceptional_threshold: iii,
            i_iff_ii: i == ii,
            ii_iff_iii: ii == iii,
            i_iff_iii: i == iii,
        }
    }

    pub fn all_agree(&self) -> bool {
        self.i_iff_ii && self.ii_iff_iii && self.i_iff_iii
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CensusReport {
    pub quiver: String,
    pub name: Option<String>,
    pub n: usize,
    pub arrows: usize,
    pub prime: u32,
    pub graph: GraphClass,
    pub rep_finite: bool,
    pub rows: Vec<LengthRow>,
    pub t_q: Option<usize>,
    pub predicted_t_q: Option<usize>,
    /// `e(s) = n - 1` for every `2 <= s < t_Q`.
    pub plateau: bool,
    /// No non-exceptional indecomposable up to length `t_Q`.
    pub all_exceptional_to_t_q: Option<bool>,
    pub verdicts: Verdicts,
    pub audit: Option<ThresholdAudit>,
    /// Every broken expectation, in words. Empty on success.
    pub failures: Vec<String>,
}

impl CensusReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn row(&self, t: usize) -> Option<&LengthRow> {
        self.rows.iter().find(|r| r.t == t)
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct VerifyOptions {
    pub budget: OracleBudget,
    /// Scan for a threshold up to `min(n, 9)` instead of stopping at `min(n, 7)`.
    pub audit: bool,
}

/// Evaluates the three conditions independently and reports their agreement.
///
/// * infinite: from the graph classification.
/// * many indecomposables: Gabriel's root count for Dynkin graphs, the
///   oracle for the rest, over `2 <= t <= min(n, 7)` (stopping at `t_Q`).
/// * threshold: from the `e` table, plus the oracle check that every
///   indecomposable of length at most `t_Q` is exceptional.
pub fn verify_theorem<F: FiniteField>(q: &Quiver, opts: &VerifyOptions) -> Result<CensusReport> {
    let budget = &opts.budget;
    let graph = classify_graph(q)?;
    let n = q.n();
    let rep_finite = graph.is_dynkin();
    let cap = n.min(THRESHOLD_CAP);

    let mut rows = Vec::new();
    let mut t_q = None;
    for t in 1..=cap {
        let split = e_split::<F>(q, t, budget)?;
        let indecomposables = indecomposable_count::<F>(q, t, budget)?;
        rows.push(LengthRow { t, e: split.total(), thin: split.thin, non_thin: split.non_thin, indecomposables });
        if t >= 2 && split.total() >= n {
            t_q = Some(t);
            break;
        }
    }

    let audit = if opts.audit { Some(t_q_audited::<F>(q, budget)?) } else { None };
    let predicted = predicted_t_q(q)?;

    let many = rows.iter().filter(|r| r.t >= 2).any(|r| r.indecomposables.count >= n || r.indecomposables.imaginary);
    let plateau = rows.iter().filter(|r| r.t >= 2 && Some(r.t) != t_q).all(|r| r.e == n - 1);
    let all_exceptional = t_q.map(|_| rows.iter().all(|r| r.indecomposables.non_exceptional == 0));
    let threshold = t_q.is_some() && plateau && all_exceptional == Some(true);
    let verdicts = Verdicts::new(!rep_finite, many, threshold);

    let mut failures = Vec::new();
    if !verdicts.all_agree() {
        failures.push(format!(
            "conditions disagree: infinite={} indecomposables={} threshold={}",
            verdicts.infinite, verdicts.many_indecomposables, verdicts.exceptional_threshold
        ));
    }
    if t_q != predicted {
        failures.push(format!("t_Q = {} but the graph shape predicts {}", show(t_q), show(predicted)));
    }
    if rows.first().is_some_and(|r| r.e != n) {
        failures.push(format!("e(1) = {} differs from n = {n}", rows[0].e));
    }
    if let Some(r) = rows.get(1) {
        if r.e != q.arrow_count() {
            failures.push(format!("e(2) = {} differs from the arrow count {}", r.e, q.arrow_count()));
        }
    }
    for r in &rows {
        if rep_finite && r.t >= 2 && r.e > n - 1 {
            failures.push(format!("e({}) = {} exceeds n - 1 on a Dynkin quiver", r.t, r.e));
        }
        if rep_finite && r.e != r.indecomposables.count {
            failures.push(format!("e({}) = {} but there are {} roots of that height", r.t, r.e, r.indecomposables.count));
        }
    }
    if let Some(late) = audit.as_ref().and_then(|a| a.late_threshold) {
        failures.push(format!("threshold first reached at {late}, beyond min(n, 7)"));
    }

    Ok(CensusReport {
        quiver: q.to_string(),
        name: q.name().map(str::to_string),
        n,
        arrows: q.arrow_count(),
        prime: F::ORDER,
        graph,
        rep_finite,
        rows,
        t_q,
        predicted_t_q: predicted,
        plateau,
        all_exceptional_to_t_q: all_exceptional,
        verdicts,
        audit,
        failures,
    })
}

fn show(t: Option<usize>) -> String {
    t.map_or_else(|| "none".to_string(), |t| t.to_string())
}

impl fmt::Display for CensusReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let label = self.name.clone().unwrap_or_else(|| self.quiver.clone());
        writeln!(f, "quiver {label}: n = {}, {} arrows, {}", self.n, self.arrows, self.graph.kind)?;
        writeln!(f, "representation-{}", if self.rep_finite { "finite" } else { "infinite" })?;
        writeln!(f, "field F_{}", self.prime)?;
        writeln!(f, "{:>3} {:>5} {:>5} {:>5} {:>7} {:>8} {:>10}", "t", "e", "e'", "e''", "indec", "non-thin", "imaginary")?;
        for r in &self.rows {
            let i = &r.indecomposables;
            writeln!(
                f,
                "{:>3} {:>5} {:>5} {:>5} {:>7} {:>8} {:>10}",
                r.t,
                r.e,
                r.thin,
                r.non_thin,
                i.count,
                i.non_thin,
                if i.imaginary { "yes" } else { "no" }
            )?;
        }
        writeln!(f, "t_Q = {} (predicted {})", show(self.t_q), show(self.predicted_t_q))?;
        let v = &self.verdicts;
        writeln!(
            f,
            "(i) {}  (ii) {}  (iii) {}  equivalent: {}",
            v.infinite,
            v.many_indecomposables,
            v.exceptional_threshold,
            v.all_agree()
        )?;
        if let Some(a) = &self.audit {
            writeln!(f, "audit: scanned to {}, late threshold {}", a.scanned_to, show(a.late_threshold))?;
        }
        for failure in &self.failures {
            writeln!(f, "FAILURE: {failure}")?;
        }
        Ok(())
    }
}
