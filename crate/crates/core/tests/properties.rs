//! Property tests: the Euler identity on random representation pairs, Hom
//! against brute force, reflection invariance of the Tits form, and the
//! independence of `e(t)` from the field and the orientation.

mod common;

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use exceptional_core::census::{e, e_split, thin_count};
use exceptional_core::corpus::{orient_from_root, tree_orientations, trees};
use exceptional_core::linalg::Matrix;
use exceptional_core::rep::{ext1_dim_cokernel, hom_dim, is_morphism, OracleBudget};
use exceptional_core::roots::reflect;
use exceptional_core::{classify_graph, DimVector, FiniteField, Quiver, F2, F3, F5};

use common::{random_quiver, random_rep};

fn random_dims(rng: &mut impl Rng, n: usize, max: usize) -> Vec<usize> {
    (0..n).map(|_| rng.gen_range(0..=max)).collect()
}

fn euler_identity_holds<F: FiniteField>(rng: &mut ChaCha8Rng) {
    let n = rng.gen_range(1..=4);
    let q = random_quiver(rng, n, 0.5, false);
    let d = random_dims(rng, n, 2);
    let e = random_dims(rng, n, 2);
    let m = random_rep::<F>(rng, &q, &d);
    let k = random_rep::<F>(rng, &q, &e);
    let hom = hom_dim(&m, &k).unwrap() as i64;
    let ext = ext1_dim_cokernel(&m, &k).unwrap() as i64;
    let dv = DimVector::new(d.iter().map(|&x| x as i64).collect());
    let ev = DimVector::new(e.iter().map(|&x| x as i64).collect());
    assert_eq!(hom - ext, q.euler_form(&dv, &ev).unwrap(), "{q} {dv} {ev}");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10_000))]

    #[test]
    fn euler_identity_over_f2(seed in any::<u64>()) {
        euler_identity_holds::<F2>(&mut ChaCha8Rng::seed_from_u64(seed));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2_000))]

    #[test]
    fn euler_identity_over_f3(seed in any::<u64>()) {
        euler_identity_holds::<F3>(&mut ChaCha8Rng::seed_from_u64(seed));
    }

    #[test]
    fn tits_form_is_reflection_invariant(
        seed in any::<u64>(),
        coords in prop::collection::vec(-6i64..=6, 1..=7),
    ) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let q = random_quiver(&mut rng, coords.len(), 0.4, true);
        let d = DimVector::new(coords);
        let base = q.tits_form(&d).unwrap();
        prop_assert_eq!(2 * base, q.symmetric_form(&d, &d).unwrap());
        for i in q.vertices() {
            let r = reflect(&q, &d, i).unwrap();
            prop_assert_eq!(q.tits_form(&r).unwrap(), base);
            prop_assert_eq!(reflect(&q, &r, i).unwrap(), d.clone());
        }
    }

    #[test]
    fn classification_ignores_orientation(seed in any::<u64>(), n in 1usize..=8, flip in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let q = random_quiver(&mut rng, n, 0.25, true);
        // reversing arrows one at a time may create a directed cycle; skip those
        let mut other = q.clone();
        for a in 0..q.arrow_count() {
            if flip >> (a % 64) & 1 == 1 {
                if let Ok(r) = other.reverse_arrow(a) {
                    other = r;
                }
            }
        }
        prop_assert_eq!(classify_graph(&q).unwrap().kind, classify_graph(&other).unwrap().kind);
    }
}

/// All vertex-map tuples `M -> N` that commute with the arrows.
fn brute_force_hom_count<F: FiniteField>(m: &exceptional_core::rep::Rep<'_, F>, n: &exceptional_core::rep::Rep<'_, F>) -> usize {
    let blocks: Vec<Vec<Matrix<F>>> =
        m.dims().iter().zip(n.dims()).map(|(&a, &b)| Matrix::<F>::all(b, a).collect()).collect();
    let mut choice = vec![0usize; blocks.len()];
    let mut count = 0;
    loop {
        let f: Vec<Matrix<F>> = choice.iter().zip(&blocks).map(|(&c, b)| b[c].clone()).collect();
        if is_morphism(m, n, &f) {
            count += 1;
        }
        let mut k = 0;
        loop {
            if k == choice.len() {
                return count;
            }
            choice[k] += 1;
            if choice[k] < blocks[k].len() {
                break;
            }
            choice[k] = 0;
            k += 1;
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn hom_dimension_matches_brute_force(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = rng.gen_range(1..=3);
        let q = random_quiver(&mut rng, n, 0.6, false);
        let d = random_dims(&mut rng, n, 2);
        let e = random_dims(&mut rng, n, 2);
        let m = random_rep::<F2>(&mut rng, &q, &d);
        let k = random_rep::<F2>(&mut rng, &q, &e);
        let dim = hom_dim(&m, &k).unwrap();
        prop_assert_eq!(brute_force_hom_count(&m, &k), 1usize << dim);
    }
}

fn corpus_trees(max_n: usize) -> Vec<Quiver> {
    (1..=max_n).flat_map(trees).map(|g| orient_from_root(&g).unwrap()).collect()
}

#[test]
fn e_is_field_independent_on_small_trees() {
    let budget = OracleBudget::default();
    for q in corpus_trees(5) {
        for t in 1..=5 {
            let over2 = e::<F2>(&q, t, &budget).unwrap();
            assert_eq!(e::<F3>(&q, t, &budget).unwrap(), over2, "F_3, t = {t} on {q}");
            assert_eq!(e::<F5>(&q, t, &budget).unwrap(), over2, "F_5, t = {t} on {q}");
        }
    }
}

#[test]
fn e_is_orientation_independent_on_small_trees() {
    let budget = OracleBudget::default();
    for n in 1..=5 {
        for g in trees(n) {
            let quivers = tree_orientations(&g).unwrap();
            let table = |q: &Quiver| (1..=5).map(|t| e::<F2>(q, t, &budget).unwrap()).collect::<Vec<_>>();
            let first = table(&quivers[0]);
            for q in &quivers[1..] {
                assert_eq!(table(q), first, "{q}");
            }
        }
    }
}

#[test]
fn short_lengths_on_trees() {
    let budget = OracleBudget::default();
    for q in corpus_trees(8) {
        let s1 = e_split::<F2>(&q, 1, &budget).unwrap();
        assert_eq!((s1.thin, s1.non_thin), (q.n(), 0));
        if q.n() >= 2 {
            let s2 = e_split::<F2>(&q, 2, &budget).unwrap();
            assert_eq!((s2.thin, s2.non_thin), (q.arrow_count(), 0));
            assert_eq!(thin_count(&q, 2).unwrap(), q.n() - 1);
        }
    }
}
