//! Transmit antenna selection and linear precoding on the reduced channel.
//!
//! Antenna indices are 0-based throughout. The same index set `𝕃` reduces both
//! the legitimate channel `H` (rows) and the eavesdropper channel `h_e`
//! (entries): the eavesdropper sees whatever antennas the BS picked for its
//! users.

use alloc::vec::Vec;

use crate::channel::ChannelRealization;
use crate::numerics::{dot_conj, Complex64, ComplexMatrix, ComplexVector, RngStream};
use crate::{Error, Result};

/// Active antenna set and the channels seen through it.
#[derive(Debug, Clone, PartialEq)]
pub struct SelectionResult {
    active_indices: Vec<usize>,
    h_eff: ComplexMatrix,
    h_eve_eff: ComplexVector,
}

impl SelectionResult {
    /// Reduces `realization` to the rows/entries at `indices`.
    pub fn from_indices(realization: &ChannelRealization, indices: Vec<usize>) -> Result<Self> {
        let m = realization.antennas();
        let mut seen = alloc::vec![false; m];
        for &i in &indices {
            if i >= m {
                return Err(Error::InvalidArgument("antenna index out of range"));
            }
            if core::mem::replace(&mut seen[i], true) {
                return Err(Error::InvalidArgument("antenna indices must be distinct"));
            }
        }
        let h_eff = realization.legitimate_channel().gather_rows(&indices)?;
        let h_eve_eff = realization.eve_channel().gather(&indices)?;
        Ok(Self { active_indices: indices, h_eff, h_eve_eff })
    }

    pub fn active_indices(&self) -> &[usize] {
        &self.active_indices
    }

    pub fn active_count(&self) -> usize {
        self.active_indices.len()
    }

    pub fn users(&self) -> usize {
        self.h_eff.cols()
    }

    /// Reduced legitimate channel `H̃` (`L × K`).
    pub fn h_eff(&self) -> &ComplexMatrix {
        &self.h_eff
    }

    /// Reduced eavesdropper channel `h̃_e`.
    pub fn h_eve_eff(&self) -> &ComplexVector {
        &self.h_eve_eff
    }
}

/// Which channel magnitude drives the strongest-`L` sort.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "kebab-case"))]
pub enum SelectionCriterion {
    /// `Σ_k |h_{k,i}|²`; identical to the single-user rule when `K = 1`.
    #[default]
    RowNorm,
    /// `|h_{k,i}|²` of one reference user.
    User(usize),
}

/// Keeps the `L` antennas with the largest `|h_i|²`, strongest first.
/// Ties go to the lower antenna index.
pub fn select_strongest(
    realization: &ChannelRealization,
    active: usize,
    criterion: SelectionCriterion,
) -> Result<SelectionResult> {
    let m = realization.antennas();
    if active == 0 || active > m {
        return Err(Error::InvalidArgument("need 1 <= L <= M"));
    }
    let h = realization.legitimate_channel();
    let keys: Vec<f64> = match criterion {
        SelectionCriterion::RowNorm => (0..m).map(|i| h.row(i).iter().map(|z| z.norm_sqr()).sum()).collect(),
        SelectionCriterion::User(k) => {
            if k >= h.cols() {
                return Err(Error::InvalidArgument("reference user out of range"));
            }
            (0..m).map(|i| h.get(i, k).norm_sqr()).collect()
        }
    };
    let order = |a: &usize, b: &usize| keys[*b].total_cmp(&keys[*a]).then(a.cmp(b));
    let mut idx: Vec<usize> = (0..m).collect();
    if active < m {
        idx.select_nth_unstable_by(active - 1, order);
        idx.truncate(active);
    }
    idx.sort_unstable_by(order);
    SelectionResult::from_indices(realization, idx)
}

/// Uniformly random `L`-subset, independent of the channel.
pub fn select_random(realization: &ChannelRealization, active: usize, rng: &mut RngStream) -> Result<SelectionResult> {
    let m = realization.antennas();
    if active == 0 || active > m {
        return Err(Error::InvalidArgument("need 1 <= L <= M"));
    }
    let idx = rand::seq::index::sample(rng, m, active).into_vec();
    SelectionResult::from_indices(realization, idx)
}

/// All `M` antennas active, in natural order.
pub fn select_full(realization: &ChannelRealization) -> SelectionResult {
    SelectionResult {
        active_indices: (0..realization.antennas()).collect(),
        h_eff: realization.legitimate_channel(),
        h_eve_eff: realization.eve_channel(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum SelectionStrategy {
    Full,
    Strongest { active: usize, criterion: SelectionCriterion },
    Random { active: usize },
}

impl SelectionStrategy {
    /// `rng` is only read by [`SelectionStrategy::Random`].
    pub fn apply(&self, realization: &ChannelRealization, rng: &mut RngStream) -> Result<SelectionResult> {
        match *self {
            SelectionStrategy::Full => Ok(select_full(realization)),
            SelectionStrategy::Strongest { active, criterion } => select_strongest(realization, active, criterion),
            SelectionStrategy::Random { active } => select_random(realization, active, rng),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum PrecoderScheme {
    #[default]
    #[cfg_attr(feature = "serde", serde(rename = "MRT"))]
    Mrt,
    #[cfg_attr(feature = "serde", serde(rename = "ZF"))]
    Zf,
}

/// `L × K` beamforming matrix with unit-norm columns.
#[derive(Debug, Clone, PartialEq)]
pub struct PrecodingMatrix {
    w: ComplexMatrix,
    scheme: PrecoderScheme,
}

impl PrecodingMatrix {
    pub fn matrix(&self) -> &ComplexMatrix {
        &self.w
    }

    pub fn scheme(&self) -> PrecoderScheme {
        self.scheme
    }

    pub fn column(&self, k: usize) -> Result<ComplexVector> {
        self.w.column(k)
    }

    pub fn columns(&self) -> Vec<ComplexVector> {
        self.w.columns()
    }
}

pub fn precode(selection: &SelectionResult, scheme: PrecoderScheme) -> Result<PrecodingMatrix> {
    match scheme {
        PrecoderScheme::Mrt => mrt_precoder(selection),
        PrecoderScheme::Zf => zf_precoder(selection),
    }
}

/// `w_k = h̃*_k / ‖h̃_k‖`.
pub fn mrt_precoder(selection: &SelectionResult) -> Result<PrecodingMatrix> {
    let cols = selection.h_eff.columns();
    let mut beams = Vec::with_capacity(cols.len());
    for (k, h) in cols.iter().enumerate() {
        let norm = h.norm();
        if norm == 0.0 {
            return Err(Error::DegenerateChannel { column: k });
        }
        beams.push(h.conj().scaled(1.0 / norm));
    }
    Ok(PrecodingMatrix { w: ComplexMatrix::from_columns(&beams)?, scheme: PrecoderScheme::Mrt })
}

/// `W = H̃* (H̃ᵀ H̃*)^{-1}`, each column then scaled to unit norm.
pub fn zf_precoder(selection: &SelectionResult) -> Result<PrecodingMatrix> {
    let l = selection.active_count();
    let k = selection.users();
    if k > l {
        return Err(Error::InfeasiblePrecoder("zero forcing needs K <= L"));
    }
    let cols = selection.h_eff.columns();
    // Gram matrix A_ij = h̃_iᵀ h̃_j*, Hermitian positive semidefinite.
    let mut gram = alloc::vec![Complex64::new(0.0, 0.0); k * k];
    for i in 0..k {
        for j in 0..k {
            gram[i * k + j] = dot_conj(cols[i].as_slice(), cols[j].as_slice());
        }
    }
    let inv = invert(&gram, k).ok_or(Error::InfeasiblePrecoder("reduced channel is rank deficient"))?;

    let mut data = alloc::vec![Complex64::new(0.0, 0.0); l * k];
    for row in 0..l {
        let h_row = selection.h_eff.row(row);
        for j in 0..k {
            data[row * k + j] = (0..k).map(|i| h_row[i].conj() * inv[i * k + j]).sum();
        }
    }
    for j in 0..k {
        let norm = libm::sqrt((0..l).map(|r| data[r * k + j].norm_sqr()).sum::<f64>());
        if norm == 0.0 || !norm.is_finite() {
            return Err(Error::InfeasiblePrecoder("zero forcing column vanished"));
        }
        for r in 0..l {
            data[r * k + j] /= norm;
        }
    }
    Ok(PrecodingMatrix { w: ComplexMatrix::from_row_major(l, k, data)?, scheme: PrecoderScheme::Zf })
}

/// Gauss–Jordan inverse of a small `n × n` row-major matrix with partial
/// pivoting. `None` when a pivot falls below `1e-12` of the largest diagonal.
fn invert(a: &[Complex64], n: usize) -> Option<Vec<Complex64>> {
    let scale = (0..n).map(|i| a[i * n + i].norm()).fold(0.0, f64::max);
    if scale == 0.0 || !scale.is_finite() {
        return None;
    }
    let tol = 1e-12 * scale;
    let mut m = a.to_vec();
    let mut inv = alloc::vec![Complex64::new(0.0, 0.0); n * n];
    for i in 0..n {
        inv[i * n + i] = Complex64::new(1.0, 0.0);
    }
    for col in 0..n {
        let pivot = (col..n).max_by(|&x, &y| m[x * n + col].norm().total_cmp(&m[y * n + col].norm()))?;
        if m[pivot * n + col].norm() < tol {
            return None;
        }
        if pivot != col {
            for c in 0..n {
                m.swap(pivot * n + c, col * n + c);
                inv.swap(pivot * n + c, col * n + c);
            }
        }
        let p = m[col * n + col];
        for c in 0..n {
            m[col * n + c] /= p;
            inv[col * n + c] /= p;
        }
        for r in 0..n {
            if r == col {
                continue;
            }
            let f = m[r * n + col];
            if f == Complex64::new(0.0, 0.0) {
                continue;
            }
            for c in 0..n {
                let (mv, iv) = (m[col * n + c], inv[col * n + c]);
                m[r * n + c] -= f * mv;
                inv[r * n + c] -= f * iv;
            }
        }
    }
    Some(inv)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channel::{draw_realization, LargeScaleProfile};
    use crate::numerics::inner_product_t;
    use alloc::vec;

    fn real_channel(h: &[f64]) -> ChannelRealization {
        let g = ComplexMatrix::from_row_major(h.len(), 1, h.iter().map(|&x| Complex64::new(x, 0.0)).collect()).unwrap();
        let ge = ComplexVector::from_real(&vec![1.0; h.len()]).unwrap();
        ChannelRealization::from_parts(g, ge, LargeScaleProfile::unit(1).unwrap()).unwrap()
    }

    #[test]
    fn strongest_orders_by_magnitude() {
        let r = real_channel(&[0.5, 2.0, -1.0]);
        let s = select_strongest(&r, 2, SelectionCriterion::RowNorm).unwrap();
        assert_eq!(s.active_indices(), &[1, 2]);
    }

    #[test]
    fn strongest_breaks_ties_by_lowest_index() {
        let r = real_channel(&[1.0, 1.0, 1.0]);
        let s = select_strongest(&r, 2, SelectionCriterion::User(0)).unwrap();
        assert_eq!(s.active_indices(), &[0, 1]);
    }

    #[test]
    fn strongest_matches_full_sort_oracle() {
        let p = LargeScaleProfile::unit(1).unwrap();
        for t in 0..20 {
            let r = draw_realization(64, 1, &p, &mut RngStream::new(21, t)).unwrap();
            let s = select_strongest(&r, 8, SelectionCriterion::RowNorm).unwrap();
            let mut all: Vec<(f64, usize)> = (0..64).map(|i| (r.fading().get(i, 0).norm_sqr(), i)).collect();
            all.sort_by(|a, b| b.0.partial_cmp(&a.0).unwrap());
            let oracle: Vec<usize> = all.iter().take(8).map(|x| x.1).collect();
            assert_eq!(s.active_indices(), oracle.as_slice());
        }
    }

    #[test]
    fn selection_bounds() {
        let r = real_channel(&[1.0, 2.0]);
        assert!(select_strongest(&r, 3, SelectionCriterion::RowNorm).is_err());
        assert!(select_strongest(&r, 0, SelectionCriterion::RowNorm).is_err());
        assert!(select_strongest(&r, 1, SelectionCriterion::User(1)).is_err());
        assert!(select_random(&r, 3, &mut RngStream::new(0, 0)).is_err());
    }

    #[test]
    fn eavesdropper_reduced_with_same_indices() {
        let p = LargeScaleProfile::new(vec![1.0, 2.0], 3.0).unwrap();
        let r = draw_realization(32, 2, &p, &mut RngStream::new(4, 4)).unwrap();
        let he = r.eve_channel();
        let h = r.legitimate_channel();
        for s in [
            select_strongest(&r, 5, SelectionCriterion::RowNorm).unwrap(),
            select_random(&r, 5, &mut RngStream::new(4, 5)).unwrap(),
        ] {
            for (j, &i) in s.active_indices().iter().enumerate() {
                assert_eq!(s.h_eve_eff()[j], he[i]);
                assert_eq!(s.h_eff().row(j), h.row(i));
            }
        }
    }

    #[test]
    fn random_full_set_and_determinism() {
        let r = real_channel(&[1.0, 2.0, 3.0, 4.0]);
        let s = select_random(&r, 4, &mut RngStream::new(1, 1)).unwrap();
        let mut idx = s.active_indices().to_vec();
        idx.sort();
        assert_eq!(idx, vec![0, 1, 2, 3]);
        let a = select_random(&r, 2, &mut RngStream::new(1, 2)).unwrap();
        let b = select_random(&r, 2, &mut RngStream::new(1, 2)).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn random_single_antenna_is_uniform() {
        let r = real_channel(&[1.0; 8]);
        let mut rng = RngStream::new(77, 0);
        let mut counts = [0usize; 8];
        let n = 100_000;
        for _ in 0..n {
            counts[select_random(&r, 1, &mut rng).unwrap().active_indices()[0]] += 1;
        }
        for c in counts {
            assert!((c as f64 / n as f64 - 0.125).abs() < 0.01);
        }
    }

    #[test]
    fn full_selection_is_identity() {
        let r = real_channel(&[1.0, -2.0, 0.5]);
        let s = select_full(&r);
        assert_eq!(s.active_indices(), &[0, 1, 2]);
        assert_eq!(*s.h_eff(), r.legitimate_channel());
        assert_eq!(*s.h_eve_eff(), r.eve_channel());
    }

    #[test]
    fn mrt_examples() {
        let r = real_channel(&[1.0, 0.0]);
        let w = mrt_precoder(&select_full(&r)).unwrap();
        assert_eq!(w.column(0).unwrap(), ComplexVector::from_real(&[1.0, 0.0]).unwrap());

        let g = ComplexMatrix::from_row_major(1, 1, vec![Complex64::new(3.0, 4.0)]).unwrap();
        let r = ChannelRealization::from_parts(
            g,
            ComplexVector::from_real(&[1.0]).unwrap(),
            LargeScaleProfile::unit(1).unwrap(),
        )
        .unwrap();
        let w = mrt_precoder(&select_full(&r)).unwrap();
        let expect = Complex64::new(0.6, -0.8);
        assert!((w.column(0).unwrap()[0] - expect).norm() < 1e-15);
    }

    #[test]
    fn mrt_zero_column_is_degenerate() {
        let r = real_channel(&[0.0, 0.0]);
        assert_eq!(mrt_precoder(&select_full(&r)), Err(Error::DegenerateChannel { column: 0 }));
    }

    #[test]
    fn mrt_gain_equals_channel_norm() {
        let p = LargeScaleProfile::new(vec![0.5, 2.0], 1.0).unwrap();
        for t in 0..20 {
            let r = draw_realization(16, 2, &p, &mut RngStream::new(31, t)).unwrap();
            let s = select_strongest(&r, 6, SelectionCriterion::RowNorm).unwrap();
            let w = mrt_precoder(&s).unwrap();
            for k in 0..2 {
                let h = s.h_eff().column(k).unwrap();
                let wk = w.column(k).unwrap();
                assert!((wk.norm() - 1.0).abs() < 1e-12);
                let gain = crate::numerics::dot(h.as_slice(), wk.as_slice()).norm();
                assert!((gain - h.norm()).abs() < 1e-12 * h.norm());
            }
        }
    }

    #[test]
    fn zf_nulls_interference() {
        let p = LargeScaleProfile::unit(3).unwrap();
        for t in 0..50 {
            let r = draw_realization(8, 3, &p, &mut RngStream::new(41, t)).unwrap();
            let s = select_full(&r);
            let w = zf_precoder(&s).unwrap();
            let prod = s.h_eff().transpose_mul(w.matrix()).unwrap();
            let min_diag = (0..3).map(|i| prod.get(i, i).norm()).fold(f64::INFINITY, f64::min);
            for i in 0..3 {
                assert!((w.column(i).unwrap().norm() - 1.0).abs() < 1e-12);
                for j in 0..3 {
                    if i != j {
                        assert!(prod.get(i, j).norm() < 1e-9 * min_diag);
                    }
                }
            }
        }
    }

    #[test]
    fn zf_single_user_equals_mrt() {
        let p = LargeScaleProfile::unit(1).unwrap();
        let r = draw_realization(8, 1, &p, &mut RngStream::new(5, 0)).unwrap();
        let s = select_full(&r);
        let a = zf_precoder(&s).unwrap().column(0).unwrap();
        let b = mrt_precoder(&s).unwrap().column(0).unwrap();
        for i in 0..8 {
            assert!((a[i] - b[i]).norm() < 1e-12);
        }
    }

    #[test]
    fn zf_orthogonal_users_proportional_to_mrt() {
        let g = ComplexMatrix::from_row_major(
            2,
            2,
            vec![
                Complex64::new(2.0, 0.0),
                Complex64::new(0.0, 0.0),
                Complex64::new(0.0, 0.0),
                Complex64::new(0.0, 3.0),
            ],
        )
        .unwrap();
        let r = ChannelRealization::from_parts(
            g,
            ComplexVector::from_real(&[1.0, 1.0]).unwrap(),
            LargeScaleProfile::unit(2).unwrap(),
        )
        .unwrap();
        let s = select_full(&r);
        let zf = zf_precoder(&s).unwrap();
        let mrt = mrt_precoder(&s).unwrap();
        for k in 0..2 {
            let ip = inner_product_t(&zf.column(k).unwrap(), &mrt.column(k).unwrap()).unwrap();
            assert!((ip.norm() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn zf_infeasible_cases() {
        let p = LargeScaleProfile::unit(3).unwrap();
        let r = draw_realization(8, 3, &p, &mut RngStream::new(1, 0)).unwrap();
        let s = select_strongest(&r, 2, SelectionCriterion::RowNorm).unwrap();
        assert!(matches!(zf_precoder(&s), Err(Error::InfeasiblePrecoder(_))));

        // two identical user columns
        let one = Complex64::new(1.0, 0.0);
        let g = ComplexMatrix::from_row_major(2, 2, vec![one, one, one * 2.0, one * 2.0]).unwrap();
        let r = ChannelRealization::from_parts(
            g,
            ComplexVector::from_real(&[1.0, 1.0]).unwrap(),
            LargeScaleProfile::unit(2).unwrap(),
        )
        .unwrap();
        assert!(matches!(zf_precoder(&select_full(&r)), Err(Error::InfeasiblePrecoder(_))));
    }

    #[test]
    fn selection_invariant_under_gain_scaling() {
        let base = LargeScaleProfile::unit(1).unwrap();
        let scaled = LargeScaleProfile::new(vec![17.5], 1.0).unwrap();
        for t in 0..10 {
            let r = draw_realization(64, 1, &base, &mut RngStream::new(9, t)).unwrap();
            let r2 =
                ChannelRealization::from_parts(r.fading().clone(), r.eve_fading().clone(), scaled.clone()).unwrap();
            assert_eq!(
                select_strongest(&r, 5, SelectionCriterion::RowNorm).unwrap().active_indices(),
                select_strongest(&r2, 5, SelectionCriterion::RowNorm).unwrap().active_indices()
            );
        }
    }
}
