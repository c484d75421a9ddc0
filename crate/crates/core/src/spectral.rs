//! Dense floating-point eigensolvers and eigenvalue multisets.

use std::fmt;

use nalgebra::{DMatrix, DVector};
use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Where a spectrum entry came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Origin {
    /// Eigenvalue of the graph itself (oracle path or single graph).
    Graph,
    /// Main eigenvalue of a component, multiplicity reduced by one.
    ComponentMain,
    /// Non-main eigenvalue of a component, multiplicity kept.
    ComponentNonMain,
    /// Eigenvalue of the associated matrix.
    Assoc,
    /// Introduced at level `k` of a lexicographic power.
    PowerLevel(u32),
}

impl fmt::Display for Origin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Origin::Graph => write!(f, "graph"),
            Origin::ComponentMain => write!(f, "component-main"),
            Origin::ComponentNonMain => write!(f, "component-nonmain"),
            Origin::Assoc => write!(f, "assoc"),
            Origin::PowerLevel(k) => write!(f, "power-level-{k}"),
        }
    }
}

impl std::str::FromStr for Origin {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "graph" => Origin::Graph,
            "component-main" => Origin::ComponentMain,
            "component-nonmain" => Origin::ComponentNonMain,
            "assoc" => Origin::Assoc,
            _ => match s.strip_prefix("power-level-").and_then(|k| k.parse().ok()) {
                Some(k) => Origin::PowerLevel(k),
                None => return Err(Error::Invalid(format!("unknown origin tag `{s}`"))),
            },
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumEntry {
    pub value: f64,
    pub multiplicity: BigUint,
    /// Sorted, deduplicated.
    pub origins: Vec<Origin>,
}

/// A multiset of real eigenvalues, sorted by value descending, values
/// pairwise separated by more than the grouping tolerance.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Spectrum {
    pub entries: Vec<SpectrumEntry>,
}

impl Spectrum {
    pub fn total_multiplicity(&self) -> BigUint {
        self.entries.iter().map(|e| &e.multiplicity).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    /// All eigenvalues repeated by multiplicity, descending. Panics if the
    /// multiplicities do not fit in memory-sized integers.
    pub fn expand(&self) -> Vec<f64> {
        let mut out = Vec::new();
        for e in &self.entries {
            let m = e
                .multiplicity
                .to_usize()
                .expect("multiplicity fits in usize");
            out.extend(std::iter::repeat_n(e.value, m));
        }
        out
    }

    /// Adds `mult` copies of `value` with the given origin, without regrouping.
    pub fn push(&mut self, value: f64, mult: impl Into<BigUint>, origin: Origin) {
        let multiplicity = mult.into();
        if multiplicity.is_zero() {
            return;
        }
        self.entries.push(SpectrumEntry {
            value,
            multiplicity,
            origins: vec![origin],
        });
    }

    /// Sorts descending and merges entries whose values chain within `tol`
    /// (single linkage). Merged values are multiplicity-weighted means and
    /// keep the union of origin tags.
    pub fn regroup(mut self, tol: f64) -> Spectrum {
        self.entries
            .sort_by(|a, b| b.value.partial_cmp(&a.value).expect("finite eigenvalues"));
        let mut out: Vec<SpectrumEntry> = Vec::with_capacity(self.entries.len());
        // chains compare consecutive raw values, not group means
        let mut prev = f64::NAN;
        let mut weighted = 0.0;
        for e in self.entries {
            let w = e.multiplicity.to_f64().unwrap_or(f64::MAX);
            let raw = e.value;
            match out.last_mut() {
                Some(cur) if (prev - raw).abs() <= tol => {
                    weighted += w * raw;
                    cur.multiplicity += &e.multiplicity;
                    cur.value = weighted / cur.multiplicity.to_f64().unwrap_or(f64::MAX);
                    cur.origins.extend(e.origins);
                    cur.origins.sort();
                    cur.origins.dedup();
                }
                _ => {
                    weighted = w * raw;
                    out.push(e);
                }
            }
            prev = raw;
        }
        Spectrum { entries: out }
    }

    pub fn union(mut self, other: Spectrum, tol: f64) -> Spectrum {
        self.entries.extend(other.entries);
        self.regroup(tol)
    }
}

/// Groups raw eigenvalues into a spectrum with unit weights.
pub fn group_multiset(values: &[f64], tol: f64, origin: Origin) -> Spectrum {
    let mut s = Spectrum::default();
    for &v in values {
        s.push(v, 1u32, origin);
    }
    s.regroup(tol)
}

/// Largest distance between two sorted eigenvalue lists of equal length;
/// `None` if lengths differ. This is the optimal matching distance on the
/// line and bounds the Hausdorff distance from above.
pub fn matching_distance(a: &[f64], b: &[f64]) -> Option<f64> {
    if a.len() != b.len() {
        return None;
    }
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    a.sort_by(|x, y| x.partial_cmp(y).unwrap());
    b.sort_by(|x, y| x.partial_cmp(y).unwrap());
    Some(
        a.iter()
            .zip(&b)
            .map(|(x, y)| (x - y).abs())
            .fold(0.0, f64::max),
    )
}

/// Ascending eigenvalues with orthonormal eigenvectors as columns.
#[derive(Debug, Clone)]
pub struct SymEigen {
    pub values: Vec<f64>,
    pub vectors: DMatrix<f64>,
}

fn check_symmetric(m: &DMatrix<f64>) -> Result<()> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.nrows(),
            cols: m.ncols(),
        });
    }
    let n = m.nrows();
    let asym = (0..n)
        .flat_map(|i| (0..i).map(move |j| (i, j)))
        .map(|(i, j)| (m[(i, j)] - m[(j, i)]).abs())
        .fold(0.0, f64::max);
    if asym > 1e-12 {
        return Err(Error::NotSymmetric(asym));
    }
    Ok(())
}

pub fn sym_eigen(m: &DMatrix<f64>) -> Result<SymEigen> {
    check_symmetric(m)?;
    let n = m.nrows();
    if n == 0 {
        return Ok(SymEigen {
            values: Vec::new(),
            vectors: DMatrix::zeros(0, 0),
        });
    }
    let eig = nalgebra::SymmetricEigen::new(m.clone());
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].partial_cmp(&eig.eigenvalues[b]).unwrap());
    let values = order.iter().map(|&k| eig.eigenvalues[k]).collect();
    let vectors = DMatrix::from_fn(n, n, |i, j| eig.eigenvectors[(i, order[j])]);
    Ok(SymEigen { values, vectors })
}

/// Ascending eigenvalues only.
pub fn sym_eigenvalues(m: &DMatrix<f64>) -> Result<Vec<f64>> {
    check_symmetric(m)?;
    if m.nrows() == 0 {
        return Ok(Vec::new());
    }
    let mut v: Vec<f64> = m.clone().symmetric_eigenvalues().iter().copied().collect();
    v.sort_by(f64::total_cmp);
    Ok(v)
}

/// Real spectrum of a general square matrix with right eigenvectors.
#[derive(Debug, Clone)]
pub struct GeneralEigen {
    /// Ascending; repeated by algebraic multiplicity.
    pub values: Vec<f64>,
    /// Unit-norm right eigenvectors; column `k` belongs to `values[k]`.
    /// Within a cluster of equal eigenvalues the columns are orthonormal.
    pub vectors: DMatrix<f64>,
}

/// Diagonal similarity `B = D^-1 M D` equalising row and column norms
/// (radix-2 Parlett–Reinsch balancing). Returns `(B, diag(D))`.
pub fn balance(m: &DMatrix<f64>) -> (DMatrix<f64>, Vec<f64>) {
    const RADIX: f64 = 2.0;
    let n = m.nrows();
    let mut a = m.clone();
    let mut scale = vec![1.0; n];
    loop {
        let mut done = true;
        for i in 0..n {
            let mut c = 0.0;
            let mut r = 0.0;
            for j in 0..n {
                if j != i {
                    c += a[(j, i)].abs();
                    r += a[(i, j)].abs();
                }
            }
            if c == 0.0 || r == 0.0 {
                continue;
            }
            let s = c + r;
            let mut f = 1.0;
            let mut g = r / RADIX;
            while c < g {
                f *= RADIX;
                c *= RADIX * RADIX;
            }
            g = r * RADIX;
            while c > g {
                f /= RADIX;
                c /= RADIX * RADIX;
            }
            if (c + r) / f < 0.95 * s {
                done = false;
                scale[i] *= f;
                for j in 0..n {
                    a[(i, j)] /= f;
                    a[(j, i)] *= f;
                }
            }
        }
        if done {
            break;
        }
    }
    (a, scale)
}

/// Ascending eigenvalues of a real matrix known to have a real spectrum, by
/// balancing, Hessenberg reduction and shifted QR (real Schur form).
///
/// Fails if an eigenvalue has imaginary part above `tol * (1 + |M|_F)`.
pub fn general_eigenvalues_real(m: &DMatrix<f64>, tol: f64) -> Result<Vec<f64>> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.nrows(),
            cols: m.ncols(),
        });
    }
    if m.nrows() == 0 {
        return Ok(Vec::new());
    }
    let (b, _) = balance(m);
    let ev = schur_eigenvalues(&b)
        .or_else(|| schur_eigenvalues(m))
        .ok_or_else(|| Error::Consistency("real Schur iteration did not converge".into()))?;
    let bound = tol * (1.0 + m.norm());
    let worst = ev.iter().map(|z| z.im.abs()).fold(0.0, f64::max);
    if worst > bound {
        return Err(Error::ComplexEigenvalue { imag: worst, bound });
    }
    let mut values: Vec<f64> = ev.iter().map(|z| z.re).collect();
    values.sort_by(f64::total_cmp);
    Ok(values)
}

/// Shifted QR with an iteration cap. If it stalls, retries on `M + cI` for a
/// few scalar shifts `c` (the eigenvalues shift back exactly).
fn schur_eigenvalues(m: &DMatrix<f64>) -> Option<Vec<nalgebra::Complex<f64>>> {
    let n = m.nrows();
    let scale = 1.0 + m.norm() / n as f64;
    [0.0, 0.5, -0.75, 1.25].into_iter().find_map(|c| {
        let shifted = m + DMatrix::identity(n, n) * (c * scale);
        nalgebra::Schur::try_new(shifted, f64::EPSILON, 200 * n.max(10)).map(|sch| {
            sch.complex_eigenvalues()
                .iter()
                .map(|z| nalgebra::Complex::new(z.re - c * scale, z.im))
                .collect()
        })
    })
}

/// [`general_eigenvalues_real`] plus right eigenvectors.
///
/// Fails if a right eigenvector misses its residual bound
/// `1e-8 * (1 + |M|_F)`. Eigenvalues within `tol * max(1, spectral radius)`
/// of each other are treated as one cluster when extracting eigenvectors.
pub fn general_eigen_real(m: &DMatrix<f64>, tol: f64) -> Result<GeneralEigen> {
    let values = general_eigenvalues_real(m, tol)?;
    right_eigenvectors(m, values, tol)
}

/// Right eigenvectors of `m` for eigenvalues obtained elsewhere, e.g. from a
/// symmetric matrix similar to `m`. `values` must be ascending and complete.
pub fn right_eigenvectors(m: &DMatrix<f64>, values: Vec<f64>, tol: f64) -> Result<GeneralEigen> {
    let n = m.nrows();
    if values.len() != n {
        return Err(Error::Consistency(format!(
            "{} eigenvalues given for a {n}x{n} matrix",
            values.len()
        )));
    }
    if n == 0 {
        return Ok(GeneralEigen {
            values,
            vectors: DMatrix::zeros(0, 0),
        });
    }
    let fro = m.norm();
    let (b, scale) = balance(m);

    let radius = values.iter().map(|v| v.abs()).fold(1.0, f64::max);
    let clusters = clusters_ascending(&values, tol * radius);
    let mut vectors = DMatrix::zeros(n, n);
    let resid_bound = 1e-8 * (1.0 + fro);
    for (start, len) in clusters {
        let rho = values[start..start + len].iter().sum::<f64>() / len as f64;
        let null = null_space(&b, rho, len);
        for k in 0..len {
            // back to the unbalanced coordinates
            let y = null.column(k);
            let mut x = DVector::from_fn(n, |i, _| scale[i] * y[i]);
            let nx = x.norm();
            x /= nx;
            let r = (m * &x - &x * rho).norm();
            if r > resid_bound {
                return Err(Error::Consistency(format!(
                    "eigenvector residual {r:e} for eigenvalue {rho} exceeds {resid_bound:e}"
                )));
            }
            vectors.set_column(start + k, &x);
        }
        if len > 1 {
            orthonormalize_columns(&mut vectors, start, len);
        }
    }
    Ok(GeneralEigen { values, vectors })
}

/// `(start, len)` runs of an ascending list whose consecutive gaps are `<= tol`.
pub(crate) fn clusters_ascending(values: &[f64], tol: f64) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    let mut start = 0;
    for k in 1..=values.len() {
        if k == values.len() || values[k] - values[k - 1] > tol {
            out.push((start, k - start));
            start = k;
        }
    }
    out
}

/// Right singular vectors of `M - rho I` for its `k` smallest singular values.
fn null_space(m: &DMatrix<f64>, rho: f64, k: usize) -> DMatrix<f64> {
    let n = m.nrows();
    let shifted = m - DMatrix::identity(n, n) * rho;
    let svd = nalgebra::SVD::new(shifted, false, true);
    let v_t = svd.v_t.expect("requested V^T");
    let mut idx: Vec<usize> = (0..n).collect();
    idx.sort_by(|&a, &b| {
        svd.singular_values[a]
            .partial_cmp(&svd.singular_values[b])
            .unwrap()
    });
    DMatrix::from_fn(n, k, |i, j| v_t[(idx[j], i)])
}

/// Modified Gram–Schmidt on columns `start..start+len` in place.
pub(crate) fn orthonormalize_columns(v: &mut DMatrix<f64>, start: usize, len: usize) {
    for a in start..start + len {
        for b in start..a {
            let d = v.column(a).dot(&v.column(b));
            let cb = v.column(b).clone_owned();
            let mut ca = v.column_mut(a);
            ca.axpy(-d, &cb, 1.0);
        }
        let nrm = v.column(a).norm();
        if nrm > 0.0 {
            v.column_mut(a).scale_mut(1.0 / nrm);
        }
    }
}

/// Monic polynomial coefficients (lowest first) with the given roots.
pub fn poly_from_roots(roots: &[f64]) -> Vec<f64> {
    let mut c = vec![1.0];
    for &r in roots {
        let mut next = vec![0.0; c.len() + 1];
        for (k, &a) in c.iter().enumerate() {
            next[k + 1] += a;
            next[k] -= r * a;
        }
        c = next;
    }
    c
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn mat(rows: &[&[f64]]) -> DMatrix<f64> {
        DMatrix::from_fn(rows.len(), rows[0].len(), |i, j| rows[i][j])
    }

    fn close(a: &[f64], b: &[f64], tol: f64) -> bool {
        a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).abs() <= tol)
    }

    #[test]
    fn sym_eigen_small_graphs() {
        let k2 = mat(&[&[0.0, 1.0], &[1.0, 0.0]]);
        assert!(close(&sym_eigen(&k2).unwrap().values, &[-1.0, 1.0], 1e-12));
        let s3 = 3f64.sqrt();
        let star = mat(&[
            &[0.0, 1.0, 1.0, 1.0],
            &[1.0, 0.0, 0.0, 0.0],
            &[1.0, 0.0, 0.0, 0.0],
            &[1.0, 0.0, 0.0, 0.0],
        ]);
        assert!(close(
            &sym_eigen(&star).unwrap().values,
            &[-s3, 0.0, 0.0, s3],
            1e-12
        ));
        let s2 = 2f64.sqrt();
        let p3 = mat(&[&[0.0, 1.0, 0.0], &[1.0, 0.0, 1.0], &[0.0, 1.0, 0.0]]);
        assert!(close(
            &sym_eigen(&p3).unwrap().values,
            &[-s2, 0.0, s2],
            1e-12
        ));
    }

    #[test]
    fn sym_eigen_rejects_asymmetric() {
        let m = mat(&[&[0.0, 1.0], &[0.0, 0.0]]);
        assert!(matches!(sym_eigen(&m), Err(Error::NotSymmetric(_))));
    }

    #[test]
    fn general_eigen_companion_and_scalar() {
        let c = mat(&[&[0.0, 3.0], &[1.0, 0.0]]);
        let e = general_eigen_real(&c, 1e-8).unwrap();
        let s3 = 3f64.sqrt();
        assert!(close(&e.values, &[-s3, s3], 1e-12));
        let d = mat(&[&[7.5]]);
        assert!(close(
            &general_eigen_real(&d, 1e-8).unwrap().values,
            &[7.5],
            0.0
        ));
    }

    #[test]
    fn general_eigen_golden_assoc_matrix() {
        let w = mat(&[
            &[0.0, 3.0, 2.0, 0.0, 0.0],
            &[1.0, 0.0, 0.0, 0.0, 0.0],
            &[4.0, 6.0, 1.0, 3.0, 4.0],
            &[0.0, 0.0, 2.0, 0.0, 2.0],
            &[0.0, 0.0, 0.0, 1.0, 0.0],
        ]);
        let e = general_eigen_real(&w, 1e-8).unwrap();
        assert_eq!(e.values.len(), 5);
        // monic det(xI - W) = x^5 - x^4 - 19x^3 - 15x^2 + 40x + 42
        let c = poly_from_roots(&e.values);
        let expect = [42.0, 40.0, -15.0, -19.0, -1.0, 1.0];
        assert!(close(&c, &expect, 1e-6), "{c:?}");
        for k in 0..5 {
            let x = e.vectors.column(k);
            assert!((&w * x - x * e.values[k]).norm() < 1e-9);
        }
    }

    #[test]
    fn general_eigen_rejects_rotation() {
        let r = mat(&[&[0.0, -1.0], &[1.0, 0.0]]);
        assert!(matches!(
            general_eigen_real(&r, 1e-8),
            Err(Error::ComplexEigenvalue { .. })
        ));
    }

    #[test]
    fn general_eigen_repeated_eigenvalue_gets_independent_vectors() {
        // block diagonal of two equal companion blocks: each eigenvalue twice
        let m = mat(&[
            &[0.0, 2.0, 0.0, 0.0],
            &[1.0, 0.0, 0.0, 0.0],
            &[0.0, 0.0, 0.0, 2.0],
            &[0.0, 0.0, 1.0, 0.0],
        ]);
        let e = general_eigen_real(&m, 1e-7).unwrap();
        let svd = e.vectors.clone().svd(false, false);
        assert!(svd.singular_values.min() > 1e-6);
    }

    #[test]
    fn balance_is_a_similarity() {
        let m = mat(&[&[1.0, 1e6], &[1e-6, 2.0]]);
        let (b, d) = balance(&m);
        for i in 0..2 {
            for j in 0..2 {
                assert!(
                    (b[(i, j)] - m[(i, j)] * d[j] / d[i]).abs() < 1e-9 * (1.0 + m[(i, j)].abs())
                );
            }
        }
        assert!(b[(0, 1)].abs() < 1e4);
    }

    #[test]
    fn grouping_examples() {
        let s = group_multiset(&[0.0, 1e-12, 5.0], 1e-9, Origin::Graph);
        assert_eq!(s.entries.len(), 2);
        assert_eq!(s.entries[0].value, 5.0);
        assert_eq!(s.entries[1].multiplicity, BigUint::from(2u32));
        assert!(s.entries[1].value.abs() < 1e-12);
        let s3 = 3f64.sqrt();
        let s = group_multiset(&[-s3, 0.0, 0.0, s3], 1e-9, Origin::Graph);
        let mults: Vec<u32> = s
            .entries
            .iter()
            .map(|e| e.multiplicity.to_u32().unwrap())
            .collect();
        assert_eq!(mults, vec![1, 2, 1]);
        assert!(group_multiset(&[], 1e-9, Origin::Graph).is_empty());
    }

    #[test]
    fn grouping_is_single_linkage() {
        // 0, 0.6, 1.2 chain at tol 0.7 even though 0 and 1.2 are 1.2 apart
        let s = group_multiset(&[1.2, 0.0, 0.6], 0.7, Origin::Graph);
        assert_eq!(s.entries.len(), 1);
        assert!((s.entries[0].value - 0.6).abs() < 1e-12);
    }

    #[test]
    fn union_keeps_origin_tags() {
        let a = group_multiset(&[1.0], 1e-9, Origin::Assoc);
        let b = group_multiset(&[1.0 + 1e-12, -1.0], 1e-9, Origin::ComponentNonMain);
        let u = a.union(b, 1e-9);
        assert_eq!(
            u.entries[0].origins,
            vec![Origin::ComponentNonMain, Origin::Assoc]
        );
        assert_eq!(u.total_multiplicity(), BigUint::from(3u32));
    }

    #[test]
    fn origin_tags_round_trip() {
        for o in [
            Origin::Graph,
            Origin::ComponentMain,
            Origin::ComponentNonMain,
            Origin::Assoc,
            Origin::PowerLevel(7),
        ] {
            assert_eq!(o.to_string().parse::<Origin>().unwrap(), o);
        }
        assert!("nope".parse::<Origin>().is_err());
    }

    fn random_symmetric_01(n: usize, bits: &[bool]) -> DMatrix<f64> {
        let mut m = DMatrix::zeros(n, n);
        let mut k = 0;
        for i in 0..n {
            for j in i + 1..n {
                if bits[k % bits.len()] {
                    m[(i, j)] = 1.0;
                    m[(j, i)] = 1.0;
                }
                k += 1;
            }
        }
        m
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn sym_eigen_reconstructs(n in 1usize..=64, bits in prop::collection::vec(any::<bool>(), 1..200)) {
            let m = random_symmetric_01(n, &bits);
            let e = sym_eigen(&m).unwrap();
            let lam = DMatrix::from_diagonal(&DVector::from_vec(e.values.clone()));
            let q = &e.vectors;
            let fro = m.norm();
            prop_assert!((q * lam * q.transpose() - &m).norm() <= 1e-8 * (1.0 + fro));
            prop_assert!((q.transpose() * q - DMatrix::identity(n, n)).norm() <= 1e-9 * n as f64);
            for k in 0..n {
                let v = q.column(k);
                prop_assert!((&m * v - v * e.values[k]).norm() <= 1e-9 * (1.0 + fro));
            }
        }

        #[test]
        fn companion_roots_recovered(roots in prop::collection::vec(-6i32..=6, 1..=6)) {
            // distinct integer roots -> companion matrix in the subdiagonal-ones orientation
            let mut r: Vec<f64> = roots.iter().map(|&x| x as f64).collect();
            r.sort_by(|a, b| a.partial_cmp(b).unwrap());
            r.dedup();
            let c = poly_from_roots(&r);
            let s = r.len();
            let comp = DMatrix::from_fn(s, s, |i, j| {
                if j == s - 1 { -c[i] } else if i == j + 1 { 1.0 } else { 0.0 }
            });
            let e = general_eigen_real(&comp, 1e-7).unwrap();
            for (got, want) in e.values.iter().zip(&r) {
                prop_assert!((got - want).abs() <= 1e-8 * (1.0 + want.abs()), "{:?} vs {:?}", e.values, r);
            }
        }

        #[test]
        fn grouping_preserves_count(vals in prop::collection::vec(-5.0f64..5.0, 0..40), tol in 1e-9f64..0.5) {
            let s = group_multiset(&vals, tol, Origin::Graph);
            prop_assert_eq!(s.total_multiplicity(), BigUint::from(vals.len()));
            for w in s.entries.windows(2) {
                prop_assert!(w[0].value > w[1].value);
            }
        }
    }
}
