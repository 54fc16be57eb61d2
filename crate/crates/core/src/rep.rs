//! Brute-force representation theory over a small finite field.
//!
//! Representations of a fixed dimension vector are points of the affine
//! space of matrix tuples; isomorphism classes are orbits of the product of
//! general linear groups acting by base change. Everything here is exact
//! linear algebra plus exhaustive enumeration, bounded by an [`OracleBudget`].

use serde::ser::{Serialize, SerializeStruct, Serializer};

use crate::error::{Error, Result};
use crate::field::{Field, FiniteField};
use crate::linalg::{general_linear_order, rank_in_place, Matrix};
use crate::quiver::{DimVector, Quiver};

/// Limits on exhaustive work.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleBudget {
    /// Largest number of raw matrix tuples scanned for one dimension vector.
    pub max_tuples: u64,
    /// Largest base-change group enumerated for orbit sweeps.
    pub max_group: u64,
    /// Largest endomorphism ring searched element by element for idempotents.
    pub max_endomorphisms: u64,
}

impl Default for OracleBudget {
    fn default() -> Self {
        Self { max_tuples: 1 << 24, max_group: 1 << 20, max_endomorphisms: 1 << 16 }
    }
}

/// A representation: one `d_target x d_source` matrix per arrow.
#[derive(Clone, PartialEq, Eq)]
pub struct Rep<'q, F> {
    quiver: &'q Quiver,
    dims: Vec<usize>,
    maps: Vec<Matrix<F>>,
}

impl<'q, F: Field> Rep<'q, F> {
    pub fn new(quiver: &'q Quiver, dims: Vec<usize>, maps: Vec<Matrix<F>>) -> Result<Self> {
        if dims.len() != quiver.n() {
            return Err(Error::DimensionMismatch { expected: quiver.n(), got: dims.len() });
        }
        if maps.len() != quiver.arrow_count() {
            return Err(Error::RepresentationMismatch);
        }
        for (m, &(s, t)) in maps.iter().zip(quiver.arrows()) {
            if m.rows() != dims[t] || m.cols() != dims[s] {
                return Err(Error::RepresentationMismatch);
            }
        }
        Ok(Self { quiver, dims, maps })
    }

    pub fn zero(quiver: &'q Quiver, d: &DimVector) -> Result<Self> {
        quiver.check_len(d)?;
        if !d.is_nonnegative() {
            return Err(Error::NegativeDimension);
        }
        let dims = d.dims();
        let maps = quiver.arrows().iter().map(|&(s, t)| Matrix::zeros(dims[t], dims[s])).collect();
        Ok(Self { quiver, dims, maps })
    }

    pub fn simple(quiver: &'q Quiver, vertex: usize) -> Result<Self> {
        if vertex >= quiver.n() {
            return Err(Error::InvalidVertex { vertex, n: quiver.n() });
        }
        Self::zero(quiver, &DimVector::unit(quiver.n(), vertex))
    }

    /// One-dimensional at each vertex of `set`, identity on every arrow inside it.
    pub fn thin(quiver: &'q Quiver, set: &[usize]) -> Result<Self> {
        let d = DimVector::thin(quiver.n(), set);
        let mut rep = Self::zero(quiver, &d)?;
        for (m, &(s, t)) in rep.maps.iter_mut().zip(quiver.arrows()) {
            if rep.dims[s] == 1 && rep.dims[t] == 1 {
                *m = Matrix::identity(1);
            }
        }
        Ok(rep)
    }

    pub fn quiver(&self) -> &'q Quiver {
        self.quiver
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn maps(&self) -> &[Matrix<F>] {
        &self.maps
    }

    pub fn dim_vector(&self) -> DimVector {
        DimVector(self.dims.iter().map(|&x| x as i64).collect())
    }

    /// Total dimension (composition length).
    pub fn length(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn is_thin(&self) -> bool {
        self.dims.iter().all(|&x| x <= 1)
    }

    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        if self.quiver != other.quiver {
            return Err(Error::RepresentationMismatch);
        }
        let dims: Vec<usize> = self.dims.iter().zip(&other.dims).map(|(a, b)| a + b).collect();
        let maps = self
            .maps
            .iter()
            .zip(&other.maps)
            .map(|(a, b)| {
                let mut m = Matrix::zeros(a.rows() + b.rows(), a.cols() + b.cols());
                for r in 0..a.rows() {
                    for c in 0..a.cols() {
                        m[(r, c)] = a[(r, c)];
                    }
                }
                for r in 0..b.rows() {
                    for c in 0..b.cols() {
                        m[(a.rows() + r, a.cols() + c)] = b[(r, c)];
                    }
                }
                m
            })
            .collect();
        Ok(Self { quiver: self.quiver, dims, maps })
    }

    /// Matrix entries flattened arrow by arrow, each row-major.
    pub fn entries(&self) -> Vec<F> {
        self.maps.iter().flat_map(|m| m.as_slice().iter().copied()).collect()
    }
}

impl<F: Field> std::fmt::Debug for Rep<'_, F> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Rep").field("dims", &self.dims).field("maps", &self.maps).finish()
    }
}

impl<F: FiniteField> Serialize for Rep<'_, F> {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let maps: Vec<Vec<Vec<u32>>> = self
            .maps
            .iter()
            .map(|m| (0..m.rows()).map(|r| m.row(r).iter().map(|x| x.index()).collect()).collect())
            .collect();
        let mut s = serializer.serialize_struct("Rep", 3)?;
        s.serialize_field("field", &F::ORDER)?;
        s.serialize_field("dims", &self.dims)?;
        s.serialize_field("maps", &maps)?;
        s.end()
    }
}

/// Layout of the linear system `f_j M_a = N_a f_i` whose kernel is `Hom(M, N)`
/// and whose cokernel is `Ext^1(M, N)`.
struct HomLayout {
    /// Column offset of the block `f_v` (size `e_v x d_v`).
    var_offset: Vec<usize>,
    /// Row offset of the block for each arrow (size `e_j x d_i`).
    eq_offset: Vec<usize>,
    rows: usize,
    cols: usize,
}

impl HomLayout {
    fn new(q: &Quiver, dm: &[usize], dn: &[usize]) -> Self {
        let mut var_offset = Vec::with_capacity(q.n());
        let mut cols = 0;
        for v in 0..q.n() {
            var_offset.push(cols);
            cols += dm[v] * dn[v];
        }
        let mut eq_offset = Vec::with_capacity(q.arrow_count());
        let mut rows = 0;
        for &(i, j) in q.arrows() {
            eq_offset.push(rows);
            rows += dn[j] * dm[i];
        }
        Self { var_offset, eq_offset, rows, cols }
    }

    /// Writes the coefficient matrix into `buf` (resized, row-major).
    fn fill<F: Field>(
        &self,
        q: &Quiver,
        dm: &[usize],
        m_maps: &[Matrix<F>],
        dn: &[usize],
        n_maps: &[Matrix<F>],
        buf: &mut Vec<F>,
    ) {
        buf.clear();
        buf.resize(self.rows * self.cols, F::zero());
        let cols = self.cols;
        for (a, &(i, j)) in q.arrows().iter().enumerate() {
            let (ma, na) = (&m_maps[a], &n_maps[a]);
            for r in 0..dn[j] {
                for c in 0..dm[i] {
                    let row = self.eq_offset[a] + r * dm[i] + c;
                    // (f_j M_a)[r][c] = sum_k f_j[r][k] M_a[k][c]
                    for k in 0..dm[j] {
                        let x = ma[(k, c)];
                        if !x.is_zero() {
                            let var = self.var_offset[j] + r * dm[j] + k;
                            buf[row * cols + var] = buf[row * cols + var] + x;
                        }
                    }
                    // (N_a f_i)[r][c] = sum_k N_a[r][k] f_i[k][c]
                    for k in 0..dn[i] {
                        let y = na[(r, k)];
                        if !y.is_zero() {
                            let var = self.var_offset[i] + k * dm[i] + c;
                            buf[row * cols + var] = buf[row * cols + var] - y;
                        }
                    }
                }
            }
        }
    }
}

/// `Hom(M, N)` with a basis in reduced echelon form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomSpace<F> {
    /// Each element is a tuple of vertex maps `f_v : M_v -> N_v` (`e_v x d_v`).
    pub basis: Vec<Vec<Matrix<F>>>,
}

impl<F: Field> HomSpace<F> {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

fn check_pair<F: Field>(m: &Rep<'_, F>, n: &Rep<'_, F>) -> Result<()> {
    if m.quiver != n.quiver {
        return Err(Error::RepresentationMismatch);
    }
    Ok(())
}

fn delta_matrix<F: Field>(m: &Rep<'_, F>, n: &Rep<'_, F>) -> (HomLayout, Matrix<F>) {
    let layout = HomLayout::new(m.quiver, &m.dims, &n.dims);
    let mut buf = Vec::new();
    layout.fill(m.quiver, &m.dims, &m.maps, &n.dims, &n.maps, &mut buf);
    let delta = Matrix::from_vec(layout.rows, layout.cols, buf);
    (layout, delta)
}

/// Solves the commuting-square equations for `Hom(M, N)`.
pub fn hom<F: Field>(m: &Rep<'_, F>, n: &Rep<'_, F>) -> Result<HomSpace<F>> {
    check_pair(m, n)?;
    let (layout, delta) = delta_matrix(m, n);
    let kernel = delta.nullspace();
    let basis = (0..kernel.rows())
        .map(|b| {
            let row = kernel.row(b);
            (0..m.quiver.n())
                .map(|v| {
                    let off = layout.var_offset[v];
                    let len = n.dims[v] * m.dims[v];
                    Matrix::from_vec(n.dims[v], m.dims[v], row[off..off + len].to_vec())
                })
                .collect()
        })
        .collect();
    Ok(HomSpace { basis })
}

pub fn hom_dim<F: Field>(m: &Rep<'_, F>, n: &Rep<'_, F>) -> Result<usize> {
    check_pair(m, n)?;
    let (layout, delta) = delta_matrix(m, n);
    Ok(layout.cols - delta.rank())
}

/// `dim Ext^1(M, N) = dim Hom(M, N) - <dim M, dim N>`.
pub fn ext1_dim<F: Field>(m: &Rep<'_, F>, n: &Rep<'_, F>) -> Result<usize> {
    let h = hom_dim(m, n)? as i64;
    let euler = m.quiver.euler_form(&m.dim_vector(), &n.dim_vector())?;
    let ext = h - euler;
    debug_assert!(ext >= 0, "negative Ext dimension");
    Ok(ext as usize)
}

/// `dim Ext^1(M, N)` as the cokernel of the map
/// `(f_v)_v -> (f_j M_a - N_a f_i)_a` of the standard resolution.
pub fn ext1_dim_cokernel<F: Field>(m: &Rep<'_, F>, n: &Rep<'_, F>) -> Result<usize> {
    check_pair(m, n)?;
    let (layout, delta) = delta_matrix(m, n);
    Ok(layout.rows - delta.rank())
}

/// Indecomposable iff `End(M)` has no idempotent other than 0 and 1.
///
/// The idempotent search enumerates all of `End(M)`, so it fails with
/// [`Error::BudgetExceeded`] when `|F|^dim End` exceeds the budget.
pub fn is_indecomposable<F: FiniteField>(m: &Rep<'_, F>, budget: &OracleBudget) -> Result<bool> {
    if m.length() == 0 {
        return Ok(false);
    }
    let end = hom(m, m)?;
    let k = end.dim();
    if k == 1 {
        return Ok(true);
    }
    // Fitting: on an indecomposable every endomorphism is nilpotent or invertible
    for b in &end.basis {
        for lambda in F::elements() {
            let f: Vec<Matrix<F>> = b
                .iter()
                .map(|block| {
                    let mut g = block.clone();
                    for i in 0..g.rows() {
                        g[(i, i)] = g[(i, i)] - lambda;
                    }
                    g
                })
                .collect();
            if !is_nilpotent(&f) && !f.iter().all(Matrix::is_invertible) {
                return Ok(false);
            }
        }
    }
    let size = (F::ORDER as u64).checked_pow(k as u32).unwrap_or(u64::MAX);
    if size > budget.max_endomorphisms {
        return Err(Error::BudgetExceeded(format!(
            "End(M) has {}^{k} elements, idempotent search capped at {}",
            F::ORDER,
            budget.max_endomorphisms
        )));
    }
    let n = m.quiver.n();
    let identity: Vec<Matrix<F>> = (0..n).map(|v| Matrix::identity(m.dims[v])).collect();
    let mut coeffs = vec![0u32; k];
    // skip the all-zero combination
    while increment(&mut coeffs, F::ORDER) {
        let element: Vec<Matrix<F>> = (0..n)
            .map(|v| {
                let mut acc = Matrix::zeros(m.dims[v], m.dims[v]);
                for (b, &c) in end.basis.iter().zip(&coeffs) {
                    if c != 0 {
                        let c = F::from_index(c);
                        for r in 0..acc.rows() {
                            for col in 0..acc.cols() {
                                acc[(r, col)] = acc[(r, col)] + c * b[v][(r, col)];
                            }
                        }
                    }
                }
                acc
            })
            .collect();
        if element == identity {
            continue;
        }
        if element.iter().all(|e| &(e * e) == e) {
            return Ok(false);
        }
    }
    Ok(true)
}

fn is_nilpotent<F: Field>(blocks: &[Matrix<F>]) -> bool {
    blocks.iter().all(|b| {
        let mut power = b.clone();
        for _ in 1..b.rows() {
            power = &power * b;
        }
        power.is_zero()
    })
}

fn increment(digits: &mut [u32], base: u32) -> bool {
    for d in digits.iter_mut() {
        *d += 1;
        if *d < base {
            return true;
        }
        *d = 0;
    }
    false
}

/// The affine space of all representations with a fixed dimension vector,
/// indexed by base-`|F|` integers with the first matrix entry most significant.
pub struct RepSpace<'q, F> {
    quiver: &'q Quiver,
    dims: Vec<usize>,
    /// Entry offset of each arrow's matrix in the flattened tuple.
    offsets: Vec<usize>,
    entries: usize,
    _field: std::marker::PhantomData<F>,
}

impl<'q, F: FiniteField> RepSpace<'q, F> {
    pub fn new(quiver: &'q Quiver, d: &DimVector) -> Result<Self> {
        quiver.check_len(d)?;
        if !d.is_nonnegative() {
            return Err(Error::NegativeDimension);
        }
        let dims = d.dims();
        let mut offsets = Vec::with_capacity(quiver.arrow_count());
        let mut entries = 0;
        for &(s, t) in quiver.arrows() {
            offsets.push(entries);
            entries += dims[s] * dims[t];
        }
        Ok(Self { quiver, dims, offsets, entries, _field: std::marker::PhantomData })
    }

    pub fn entry_count(&self) -> usize {
        self.entries
    }

    /// `|F|^entries`, saturating.
    pub fn tuple_count(&self) -> u64 {
        (F::ORDER as u64).checked_pow(self.entries as u32).unwrap_or(u64::MAX)
    }

    fn check_tuples(&self, budget: &OracleBudget) -> Result<u64> {
        let total = self.tuple_count();
        if total > budget.max_tuples {
            return Err(Error::BudgetExceeded(format!(
                "{total} matrix tuples for dimension vector {:?} exceeds {}",
                self.dims, budget.max_tuples
            )));
        }
        Ok(total)
    }

    fn decode_into(&self, mut index: u64, out: &mut [F]) {
        for slot in out.iter_mut().rev() {
            *slot = F::from_index((index % F::ORDER as u64) as u32);
            index /= F::ORDER as u64;
        }
    }

    fn encode(&self, entries: &[F]) -> u64 {
        entries.iter().fold(0u64, |acc, x| acc * F::ORDER as u64 + x.index() as u64)
    }

    fn maps_from_entries(&self, entries: &[F]) -> Vec<Matrix<F>> {
        self.quiver
            .arrows()
            .iter()
            .zip(&self.offsets)
            .map(|(&(s, t), &off)| {
                let len = self.dims[s] * self.dims[t];
                Matrix::from_vec(self.dims[t], self.dims[s], entries[off..off + len].to_vec())
            })
            .collect()
    }

    pub fn rep_from_entries(&self, entries: &[F]) -> Result<Rep<'q, F>> {
        if entries.len() != self.entries {
            return Err(Error::RepresentationMismatch);
        }
        Ok(Rep { quiver: self.quiver, dims: self.dims.clone(), maps: self.maps_from_entries(entries) })
    }

    pub fn rep_at(&self, index: u64) -> Rep<'q, F> {
        let mut e = vec![F::zero(); self.entries];
        self.decode_into(index, &mut e);
        self.rep_from_entries(&e).expect("length matches")
    }

    /// `|prod_v GL_{d_v}(F)|`.
    pub fn group_order(&self) -> u128 {
        self.dims.iter().map(|&d| general_linear_order(d, F::ORDER)).product()
    }
}

/// One representative per isomorphism class, the lexicographically smallest
/// flattened tuple of its orbit, in increasing order.
pub fn enumerate_iso_classes<'q, F: FiniteField>(
    q: &'q Quiver,
    d: &DimVector,
    budget: &OracleBudget,
) -> Result<Vec<Rep<'q, F>>> {
    let space = RepSpace::<F>::new(q, d)?;
    let total = space.check_tuples(budget)?;
    // GL at a vertex touching no nonempty matrix acts trivially; leave it out
    let acts: Vec<bool> = (0..q.n())
        .map(|v| q.neighbors(v).iter().any(|&w| space.dims[w] > 0) && space.dims[v] > 0)
        .collect();
    let order: u128 =
        (0..q.n()).filter(|&v| acts[v]).map(|v| general_linear_order(space.dims[v], F::ORDER)).product();
    if order > budget.max_group as u128 {
        return Err(Error::BudgetExceeded(format!(
            "base-change group of order {order} for {d} exceeds {}",
            budget.max_group
        )));
    }
    let groups: Vec<Vec<(Matrix<F>, Matrix<F>)>> = (0..q.n())
        .map(|v| {
            let dv = space.dims[v];
            if !acts[v] {
                return vec![(Matrix::identity(dv), Matrix::identity(dv))];
            }
            Matrix::<F>::general_linear_group(dv)
                .into_iter()
                .map(|g| {
                    let inv = g.inverse().expect("invertible");
                    (g, inv)
                })
                .collect()
        })
        .collect();

    let mut visited = vec![0u64; (total as usize).div_ceil(64)];
    let mut reps = Vec::new();
    let mut entries = vec![F::zero(); space.entries];
    let mut image = vec![F::zero(); space.entries];
    let mut choice = vec![0usize; q.n()];
    for index in 0..total {
        if visited[(index / 64) as usize] & (1 << (index % 64)) != 0 {
            continue;
        }
        space.decode_into(index, &mut entries);
        let maps = space.maps_from_entries(&entries);
        choice.iter_mut().for_each(|c| *c = 0);
        loop {
            // image of maps under (g_v): M_a -> g_j M_a g_i^{-1}
            for (a, &(s, t)) in q.arrows().iter().enumerate() {
                let gt = &groups[t][choice[t]].0;
                let gs_inv = &groups[s][choice[s]].1;
                let m = &(gt * &maps[a]) * gs_inv;
                let off = space.offsets[a];
                image[off..off + m.as_slice().len()].copy_from_slice(m.as_slice());
            }
            let j = space.encode(&image);
            visited[(j / 64) as usize] |= 1 << (j % 64);
            if !next_choice(&mut choice, &groups) {
                break;
            }
        }
        reps.push(space.rep_from_entries(&entries)?);
    }
    Ok(reps)
}

fn next_choice<T>(choice: &mut [usize], groups: &[Vec<T>]) -> bool {
    for (c, g) in choice.iter_mut().zip(groups) {
        *c += 1;
        if *c < g.len() {
            return true;
        }
        *c = 0;
    }
    false
}

/// Isomorphism classes of indecomposable representations with dimension `d`.
pub fn count_indecomposables<F: FiniteField>(q: &Quiver, d: &DimVector, budget: &OracleBudget) -> Result<usize> {
    let mut count = 0;
    for rep in enumerate_iso_classes::<F>(q, d, budget)? {
        if is_indecomposable(&rep, budget)? {
            count += 1;
        }
    }
    Ok(count)
}

/// Classes with `End = F` and `Ext^1(M, M) = 0`, counted without enumerating
/// the group: such an `M` has stabilizer `F^*`, so each class has exactly
/// `|G| / (|F| - 1)` points in the tuple space.
pub fn count_exceptional<F: FiniteField>(q: &Quiver, d: &DimVector, budget: &OracleBudget) -> Result<usize> {
    let space = RepSpace::<F>::new(q, d)?;
    if d.is_zero() {
        return Ok(0);
    }
    let total = space.check_tuples(budget)?;
    let dims = &space.dims;
    let layout = HomLayout::new(q, dims, dims);
    // rank of the system is at most its row count
    if layout.rows + 1 < layout.cols {
        return Ok(0);
    }
    let mut entries = vec![F::zero(); space.entries];
    let mut buf = Vec::new();
    let mut hits: u128 = 0;
    for index in 0..total {
        space.decode_into(index, &mut entries);
        let maps = space.maps_from_entries(&entries);
        layout.fill(q, dims, &maps, dims, &maps, &mut buf);
        let rank = rank_in_place(&mut buf, layout.rows, layout.cols);
        let end = layout.cols - rank;
        let ext = layout.rows - rank;
        if end == 1 && ext == 0 {
            hits += 1;
        }
    }
    let orbit = space.group_order() / (F::ORDER as u128 - 1);
    assert_eq!(hits % orbit, 0, "exceptional tuples for {d} do not split into whole orbits");
    Ok((hits / orbit) as usize)
}

/// Whether some representation of dimension `d` has `End = F`.
pub fn has_schur_representation<F: FiniteField>(q: &Quiver, d: &DimVector, budget: &OracleBudget) -> Result<bool> {
    let space = RepSpace::<F>::new(q, d)?;
    let total = space.check_tuples(budget)?;
    let layout = HomLayout::new(q, &space.dims, &space.dims);
    if layout.rows + 1 < layout.cols || d.is_zero() {
        return Ok(false);
    }
    let mut entries = vec![F::zero(); space.entries];
    let mut buf = Vec::new();
    for index in 0..total {
        space.decode_into(index, &mut entries);
        let maps = space.maps_from_entries(&entries);
        layout.fill(q, &space.dims, &maps, &space.dims, &maps, &mut buf);
        if layout.cols - rank_in_place(&mut buf, layout.rows, layout.cols) == 1 {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Ext-vanishing plus `End = F`, for a single representation.
pub fn is_exceptional<F: FiniteField>(m: &Rep<'_, F>) -> Result<bool> {
    Ok(m.length() > 0 && hom_dim(m, m)? == 1 && ext1_dim(m, m)? == 0)
}

impl<F: Field> Rep<'_, F> {
    /// The identity endomorphism, as vertex maps.
    pub fn identity_endomorphism(&self) -> Vec<Matrix<F>> {
        self.dims.iter().map(|&d| Matrix::identity(d)).collect()
    }
}

/// Is `f = (f_v)` a morphism `M -> N`?
pub fn is_morphism<F: Field>(m: &Rep<'_, F>, n: &Rep<'_, F>, f: &[Matrix<F>]) -> bool {
    m.quiver.arrows().iter().enumerate().all(|(a, &(i, j))| &f[j] * &m.maps[a] == &n.maps[a] * &f[i])
}
