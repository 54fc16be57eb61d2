//! Root combinatorics of the symmetric form attached to the underlying graph.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::classify::classify_graph;
use crate::error::{Error, Result};
use crate::quiver::{DimVector, Quiver};

/// Default height bound for bounded root enumeration.
pub const DEFAULT_HEIGHT_BOUND: usize = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum RootVerdict {
    PositiveRealRoot,
    ImaginaryRoot,
    NotRoot,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RootClassification {
    pub verdict: RootVerdict,
    /// Vertices of the simple reflections applied during descent, in order.
    pub trace: Vec<usize>,
}

/// Simple reflection `s_i(d) = d - (d, e_i) e_i`. The result may leave the
/// positive cone.
pub fn reflect(q: &Quiver, d: &DimVector, i: usize) -> Result<DimVector> {
    q.check_len(d)?;
    if i >= q.n() {
        return Err(Error::InvalidVertex { vertex: i, n: q.n() });
    }
    let mut v = d.0.clone();
    v[i] -= q.pairing_with_simple(&d.0, i);
    Ok(DimVector(v))
}

/// Decides whether a nonzero nonnegative vector is a positive real root, a
/// positive imaginary root, or no root, by height-decreasing reflections.
///
/// Among vertices with `(d, e_i) > 0` the largest height drop wins, ties
/// going to the smallest index.
pub fn classify_vector(q: &Quiver, d: &DimVector) -> Result<RootClassification> {
    q.check_len(d)?;
    if !d.is_nonnegative() {
        return Err(Error::NegativeDimension);
    }
    if d.is_zero() {
        return Err(Error::ZeroVector);
    }
    let mut v = d.0.clone();
    let mut trace = Vec::new();
    let verdict = loop {
        if v.iter().any(|&x| x < 0) {
            break RootVerdict::NotRoot;
        }
        let support: Vec<usize> = (0..v.len()).filter(|&i| v[i] > 0).collect();
        if !q.induces_connected(&support) {
            break RootVerdict::NotRoot;
        }
        if support.len() == 1 && v[support[0]] == 1 {
            break RootVerdict::PositiveRealRoot;
        }
        let mut best: Option<(usize, i64)> = None;
        for &i in &support {
            let b = q.pairing_with_simple(&v, i);
            if b > 0 && best.is_none_or(|(_, bb)| b > bb) {
                best = Some((i, b));
            }
        }
        match best {
            None => break RootVerdict::ImaginaryRoot,
            Some((i, b)) => {
                v[i] -= b;
                trace.push(i);
            }
        }
    };
    Ok(RootClassification { verdict, trace })
}

/// All nonnegative vectors of exactly the given height whose support induces
/// a connected subquiver, ordered by support then lexicographically.
pub fn connected_vectors_of_height(q: &Quiver, height: usize) -> Vec<DimVector> {
    let mut out = Vec::new();
    for k in 1..=height.min(q.n()) {
        for set in q.connected_subquivers(k).expect("size in range") {
            let mut parts = vec![1i64; k];
            compositions(&mut parts, 0, (height - k) as i64, &mut |parts| {
                let mut v = vec![0; q.n()];
                for (&i, &x) in set.iter().zip(parts.iter()) {
                    v[i] = x;
                }
                out.push(DimVector(v));
            });
        }
    }
    out
}

// Distributes `extra` over parts[pos..] in every possible way.
fn compositions(parts: &mut [i64], pos: usize, extra: i64, emit: &mut impl FnMut(&[i64])) {
    if pos + 1 == parts.len() {
        parts[pos] += extra;
        emit(parts);
        parts[pos] -= extra;
        return;
    }
    for x in 0..=extra {
        parts[pos] += x;
        compositions(parts, pos + 1, extra - x, emit);
        parts[pos] -= x;
    }
}

/// Positive roots of exactly the given height with their verdicts, in the
/// candidate order of [`connected_vectors_of_height`].
pub fn positive_roots_of_height(q: &Quiver, height: usize) -> Result<Vec<(DimVector, RootVerdict)>> {
    q.require_connected()?;
    let candidates = connected_vectors_of_height(q, height);
    let verdicts: Vec<RootVerdict> = candidates
        .par_iter()
        .map(|d| classify_vector(q, d).map(|c| c.verdict))
        .collect::<Result<_>>()?;
    Ok(candidates.into_iter().zip(verdicts).filter(|(_, v)| *v != RootVerdict::NotRoot).collect())
}

/// Positive roots (real and imaginary) of height at most `bound`, found by an
/// exhaustive scan of connected-support candidates. Sorted by height, then
/// by the candidate order of [`connected_vectors_of_height`].
pub fn positive_roots_up_to_height(q: &Quiver, bound: usize) -> Result<Vec<DimVector>> {
    q.require_connected()?;
    let mut roots = Vec::new();
    for h in 1..=bound {
        roots.extend(positive_roots_of_height(q, h)?.into_iter().map(|(d, _)| d));
    }
    Ok(roots)
}

/// Counts of positive roots by height.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct HeightHistogram {
    /// Largest height scanned.
    pub bound: usize,
    /// `(height, count)` pairs in increasing height, zero counts omitted.
    pub counts: Vec<(usize, usize)>,
}

impl HeightHistogram {
    pub fn from_roots(bound: usize, roots: &[DimVector]) -> Self {
        let mut map = BTreeMap::new();
        for r in roots {
            *map.entry(r.height() as usize).or_insert(0) += 1;
        }
        Self { bound, counts: map.into_iter().collect() }
    }

    pub fn count(&self, height: usize) -> usize {
        self.counts.iter().find(|&&(h, _)| h == height).map_or(0, |&(_, c)| c)
    }

    pub fn total(&self) -> usize {
        self.counts.iter().map(|&(_, c)| c).sum()
    }
}

pub fn height_histogram(q: &Quiver, bound: usize) -> Result<HeightHistogram> {
    Ok(HeightHistogram::from_roots(bound, &positive_roots_up_to_height(q, bound)?))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KostantReport {
    pub n: usize,
    pub histogram: HeightHistogram,
    pub total: usize,
    /// Height of the highest root.
    pub max_height: usize,
    /// Largest count over heights >= 2 (0 when there are none).
    pub max_count_above_one: usize,
    /// Whether every height `t >= 2` carries at most `n - 1` roots.
    pub bound_holds: bool,
}

/// Full positive-root histogram of a Dynkin quiver and the check that each
/// height `t >= 2` carries at most `n - 1` roots.
///
/// Roots of height `h + 1` are grown from roots of height `h` by adding a
/// simple root and re-classifying, which reaches every positive root.
pub fn kostant_check(q: &Quiver) -> Result<KostantReport> {
    if !classify_graph(q)?.is_dynkin() {
        return Err(Error::NotDynkin);
    }
    let n = q.n();
    let roots = positive_roots_by_growth(q)?;
    let histogram = HeightHistogram::from_roots(roots.last().map_or(0, |r| r.height() as usize), &roots);
    let max_count_above_one =
        histogram.counts.iter().filter(|&&(h, _)| h >= 2).map(|&(_, c)| c).max().unwrap_or(0);
    Ok(KostantReport {
        n,
        total: histogram.total(),
        max_height: histogram.bound,
        max_count_above_one,
        bound_holds: max_count_above_one <= n - 1,
        histogram,
    })
}

/// Every positive real root of a Dynkin quiver, by height.
fn positive_roots_by_growth(q: &Quiver) -> Result<Vec<DimVector>> {
    let n = q.n();
    let mut level: Vec<DimVector> = (0..n).map(|i| DimVector::unit(n, i)).collect();
    let mut all = Vec::new();
    while !level.is_empty() {
        let mut next = std::collections::BTreeSet::new();
        for r in &level {
            for i in 0..n {
                let mut c = r.clone();
                c.0[i] += 1;
                if classify_vector(q, &c)?.verdict == RootVerdict::PositiveRealRoot {
                    next.insert(c);
                }
            }
        }
        all.append(&mut level);
        level = next.into_iter().collect();
    }
    Ok(all)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::preset_by_name;

    fn dv(v: &[i64]) -> DimVector {
        DimVector(v.to_vec())
    }

    #[test]
    fn reflection_examples() {
        let a2 = preset_by_name("A2").unwrap();
        assert_eq!(reflect(&a2, &dv(&[1, 0]), 1).unwrap(), dv(&[1, 1]));
        assert_eq!(reflect(&a2, &dv(&[1, 0]), 0).unwrap(), dv(&[-1, 0]));
        let star = preset_by_name("tD4").unwrap();
        let delta = dv(&[2, 1, 1, 1, 1]);
        for i in 0..5 {
            assert_eq!(reflect(&star, &delta, i).unwrap(), delta);
        }
        assert!(reflect(&a2, &dv(&[1, 0]), 2).is_err());
    }

    #[test]
    fn classify_examples() {
        let a3 = preset_by_name("A3").unwrap();
        assert_eq!(classify_vector(&a3, &dv(&[1, 1, 1])).unwrap().verdict, RootVerdict::PositiveRealRoot);
        let star = preset_by_name("tD4").unwrap();
        let c = classify_vector(&star, &dv(&[2, 1, 1, 1, 1])).unwrap();
        assert_eq!(c.verdict, RootVerdict::ImaginaryRoot);
        assert!(c.trace.is_empty());
        let a2 = preset_by_name("A2").unwrap();
        assert_eq!(classify_vector(&a2, &dv(&[2, 1])).unwrap().verdict, RootVerdict::NotRoot);
        assert_eq!(classify_vector(&a2, &dv(&[0, 0])), Err(Error::ZeroVector));
        assert_eq!(classify_vector(&a2, &dv(&[1, -1])), Err(Error::NegativeDimension));
    }

    #[test]
    fn descent_tie_break() {
        // (1,2,1) on A3: pairings (0, 2, 0) at vertex 1 only
        let a3 = preset_by_name("A3").unwrap();
        let c = classify_vector(&a3, &dv(&[1, 2, 1])).unwrap();
        assert_eq!(c.verdict, RootVerdict::NotRoot);
        assert_eq!(c.trace, vec![1]);
        // (1,1,1): pairings (1,0,1), tie broken towards vertex 0
        let c = classify_vector(&a3, &dv(&[1, 1, 1])).unwrap();
        assert_eq!(c.trace, vec![0, 1]);
    }

    #[test]
    fn a3_roots_up_to_three() {
        let a3 = preset_by_name("A3").unwrap();
        let h = height_histogram(&a3, 3).unwrap();
        assert_eq!(h.counts, vec![(1, 3), (2, 2), (3, 1)]);
        assert_eq!(h.total(), 6);
    }

    #[test]
    fn d4_has_twelve_roots() {
        let d4 = preset_by_name("D4").unwrap();
        assert_eq!(height_histogram(&d4, 5).unwrap().total(), 12);
        assert_eq!(height_histogram(&d4, 8).unwrap().total(), 12);
    }

    #[test]
    fn kostant_small_cases() {
        let a4 = kostant_check(&preset_by_name("A4").unwrap()).unwrap();
        assert_eq!(a4.histogram.counts, vec![(1, 4), (2, 3), (3, 2), (4, 1)]);
        assert!(a4.bound_holds);
        let d4 = kostant_check(&preset_by_name("D4").unwrap()).unwrap();
        assert_eq!(d4.total, 12);
        assert_eq!(d4.max_count_above_one, 3);
        assert_eq!(d4.max_height, 5);
        let e8 = kostant_check(&preset_by_name("E8").unwrap()).unwrap();
        assert_eq!(e8.total, 120);
        assert_eq!(e8.max_height, 29);
        assert!(e8.max_count_above_one <= 7);
        assert!(kostant_check(&preset_by_name("tD4").unwrap()).is_err());
    }

    #[test]
    fn connected_candidates() {
        let a2 = preset_by_name("A2").unwrap();
        // (2,0) (0,2) (1,1)
        assert_eq!(connected_vectors_of_height(&a2, 2).len(), 3);
        let star = preset_by_name("star4").unwrap();
        assert!(connected_vectors_of_height(&star, 4).iter().all(|d| star.induces_connected(&d.support())));
    }
}
