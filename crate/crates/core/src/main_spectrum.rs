//! Walk matrix, main characteristic polynomial and main/non-main
//! classification of a single graph.
//!
//! The walk matrix `W = (j, Aj, ..., A^{s-1} j)` is built column by column
//! in exact integer arithmetic. Its column count `s` is the number of
//! distinct main eigenvalues, and the dependency `A^s j = W c` yields the
//! coefficients of the main characteristic polynomial
//! `m(x) = x^s - c_{s-1} x^{s-1} - ... - c_0`.

use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exact::{modular, IntMatrix, IntPoly, RationalVector, SpanBuilder};
use crate::graph::Graph;
use crate::spectral::{clusters_ascending, sym_eigen, Origin, Spectrum};
use crate::Tolerances;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WalkData {
    /// Number of distinct main eigenvalues.
    pub s: usize,
    /// `n x s` walk matrix.
    pub walk_matrix: IntMatrix,
    /// `N_k = j^T A^k j` for `k < s`; `N_0 = n`, `N_1 = 2|E|`.
    pub walk_counts: Vec<BigInt>,
    /// `(c_0, ..., c_{s-1})` with `A^s j = sum_k c_k A^k j`.
    pub main_coeffs: Vec<BigInt>,
}

impl WalkData {
    pub fn order(&self) -> usize {
        self.walk_matrix.rows()
    }

    /// Monic `x^s - c_{s-1} x^{s-1} - ... - c_0`.
    pub fn main_poly(&self) -> IntPoly {
        let mut coeffs: Vec<BigInt> = self.main_coeffs.iter().map(|c| -c).collect();
        coeffs.push(1.into());
        IntPoly::new(coeffs)
    }
}

fn apply_adjacency(adj: &[Vec<usize>], v: &[BigInt]) -> Vec<BigInt> {
    adj.iter()
        .map(|nb| nb.iter().map(|&u| &v[u]).sum())
        .collect()
}

/// Walk matrix, walk counts and main polynomial coefficients of `g`.
///
/// The Krylov length and the coefficients are found modulo word-size primes
/// and lifted by Chinese remaindering past the bound `(1 + max degree)^s`;
/// the lifted solution is then checked exactly over the integers. If that
/// check fails the rational elimination path is used instead.
pub fn walk_data(g: &Graph) -> Result<WalkData> {
    let n = g.order();
    if n == 0 {
        return Err(Error::Invalid("walk data needs at least one vertex".into()));
    }
    let adj = g.neighbors();
    let mut primes = modular::large_primes();
    let p0 = primes.next().unwrap();
    let s = modular::krylov_length_mod(&adj, p0);

    let mut columns: Vec<Vec<BigInt>> = Vec::with_capacity(s + 1);
    columns.push(vec![BigInt::from(1); n]);
    for k in 0..s {
        let next = apply_adjacency(&adj, &columns[k]);
        columns.push(next);
    }
    let rhs = columns.pop().unwrap();

    let max_degree = g.degrees().into_iter().max().unwrap_or(0);
    let bound_bits = (s as f64 * ((1 + max_degree) as f64).log2()).ceil() as u64 + 2;
    let mut crt = modular::Crt::new(s);
    for (tried, p) in std::iter::once(p0).chain(primes).enumerate() {
        if crt.modulus_bits() > bound_bits || tried as u64 > 4 * (bound_bits / 61 + 2) {
            break;
        }
        let cols: Vec<Vec<u64>> = columns
            .iter()
            .map(|c| c.iter().map(|x| modular::reduce(x, p)).collect())
            .collect();
        let b: Vec<u64> = rhs.iter().map(|x| modular::reduce(x, p)).collect();
        if let Some(r) = modular::solve_columns_mod(&cols, &b, p) {
            crt.push(p, &r);
        }
    }
    let main_coeffs = crt.symmetric();
    let walk_matrix = IntMatrix::from_columns(n, &columns);
    let lhs = walk_matrix.mul_vec(&main_coeffs);
    if lhs != rhs {
        return walk_data_rational(g);
    }
    let walk_counts = columns.iter().map(|c| c.iter().sum()).collect();
    Ok(WalkData {
        s,
        walk_matrix,
        walk_counts,
        main_coeffs,
    })
}

/// Same result as [`walk_data`] by exact rational elimination only.
pub fn walk_data_rational(g: &Graph) -> Result<WalkData> {
    let n = g.order();
    if n == 0 {
        return Err(Error::Invalid("walk data needs at least one vertex".into()));
    }
    let adj = g.neighbors();
    let mut span = SpanBuilder::new();
    let mut columns: Vec<Vec<BigInt>> = Vec::new();
    let mut next: Vec<BigInt> = vec![BigInt::from(1); n];
    while span.insert(&next) {
        let following = apply_adjacency(&adj, &next);
        columns.push(std::mem::replace(&mut next, following));
    }
    let s = columns.len();
    let walk_matrix = IntMatrix::from_columns(n, &columns);
    let sol = walk_matrix.solve_exact(&RationalVector::from_integers(next))?;
    let main_coeffs = sol.to_integers().ok_or_else(|| {
        Error::Consistency("main polynomial coefficients are not integers".into())
    })?;
    let walk_counts = columns.iter().map(|c| c.iter().sum()).collect();
    Ok(WalkData {
        s,
        walk_matrix,
        walk_counts,
        main_coeffs,
    })
}

pub fn main_poly(wd: &WalkData) -> IntPoly {
    wd.main_poly()
}

/// One distinct eigenvalue of a graph with its eigenspace.
#[derive(Debug, Clone)]
pub struct ClassifiedEigenvalue {
    pub value: f64,
    pub multiplicity: usize,
    pub main: bool,
    /// Norm of the orthogonal projection of `j` onto the eigenspace.
    pub j_projection: f64,
    /// Orthonormal basis of the eigenspace, one column per dimension.
    pub basis: DMatrix<f64>,
}

#[derive(Debug, Clone)]
pub struct ClassifiedSpectrum {
    pub order: usize,
    /// Descending by value.
    pub eigenvalues: Vec<ClassifiedEigenvalue>,
}

impl ClassifiedSpectrum {
    pub fn main_count(&self) -> usize {
        self.eigenvalues.iter().filter(|e| e.main).count()
    }

    pub fn main_values(&self) -> Vec<f64> {
        self.eigenvalues
            .iter()
            .filter(|e| e.main)
            .map(|e| e.value)
            .collect()
    }

    pub fn to_spectrum(&self) -> Spectrum {
        let mut s = Spectrum::default();
        for e in &self.eigenvalues {
            let origin = if e.main {
                Origin::ComponentMain
            } else {
                Origin::ComponentNonMain
            };
            s.push(e.value, e.multiplicity, origin);
        }
        s
    }

    /// Normalised main eigenvectors (projections of `j` onto main
    /// eigenspaces), in the order of `main_values`. Each has `j^T u > 0`.
    pub fn main_eigenvectors(&self) -> Vec<nalgebra::DVector<f64>> {
        let n = self.order;
        let j = nalgebra::DVector::from_element(n, 1.0);
        self.eigenvalues
            .iter()
            .filter(|e| e.main)
            .map(|e| {
                let coords = e.basis.transpose() * &j;
                let u = &e.basis * coords;
                let nrm = u.norm();
                u / nrm
            })
            .collect()
    }
}

/// Exact `m(x) / m'(x)` at a floating-point point. For a polynomial with
/// simple roots its modulus is at least `dist(x, roots) / deg` and close to
/// `dist(x, roots)` near a root.
fn newton_step(m: &IntPoly, dm: &IntPoly, x: f64) -> f64 {
    if !x.is_finite() {
        return f64::INFINITY;
    }
    // x = mant * 2^-e; p(x) * 2^(e deg p) is an integer
    let (mant, exp, sign) = num_traits::float::FloatCore::integer_decode(x);
    let mant = BigInt::from(mant) * BigInt::from(sign);
    let e = (-(exp as i64)).max(0) as u64;
    let mant = if exp > 0 { mant << exp as u32 } else { mant };
    let scaled = |p: &IntPoly| -> BigInt {
        let d = p.coeffs().len();
        p.coeffs()
            .iter()
            .enumerate()
            .rev()
            .fold(BigInt::zero(), |acc, (k, c)| {
                acc * &mant + (c << (e * (d - 1 - k) as u64))
            })
    };
    let num = scaled(m);
    let den = scaled(dm);
    if den.is_zero() {
        return if num.is_zero() { 0.0 } else { f64::INFINITY };
    }
    // m has one more degree than m', so the ratio carries one factor 2^-e
    big_ratio_f64(&num, &den, -(e as i64))
}

/// `|a / b| * 2^k` as a float without forming the rational.
fn big_ratio_f64(a: &BigInt, b: &BigInt, k: i64) -> f64 {
    let shift = |x: &BigInt| -> (f64, i64) {
        let bits = x.bits() as i64;
        let drop = (bits - 64).max(0);
        ((x.abs() >> drop as u64).to_f64().unwrap(), drop)
    };
    let (fa, da) = shift(a);
    let (fb, db) = shift(b);
    fa / fb * ((da - db + k) as f64).exp2()
}

/// Float eigendecomposition grouped into distinct eigenvalues, each flagged
/// main iff the projection of `j` onto its eigenspace exceeds
/// `tol.main * sqrt(n)`.
///
/// Two independent routes must agree: the number of main flags equals the
/// exact `s` of the walk matrix, and main eigenvalues are exactly those near
/// which a Newton step on the exact main polynomial is below
/// `group_tol / (2s)`.
pub fn classify_spectrum(g: &Graph, tol: &Tolerances) -> Result<ClassifiedSpectrum> {
    let wd = walk_data(g)?;
    classify_with_walk_data(g, &wd, tol)
}

pub fn classify_with_walk_data(
    g: &Graph,
    wd: &WalkData,
    tol: &Tolerances,
) -> Result<ClassifiedSpectrum> {
    let n = g.order();
    if n == 0 {
        return Err(Error::Invalid(
            "classification needs at least one vertex".into(),
        ));
    }
    let eig = sym_eigen(&g.adjacency_f64())?;
    let radius = eig.values.iter().map(|v| v.abs()).fold(1.0, f64::max);
    let group_tol = tol.group * radius;
    let j = nalgebra::DVector::from_element(n, 1.0);
    let threshold = tol.main * (n as f64).sqrt();

    let mut eigenvalues = Vec::new();
    for (start, len) in clusters_ascending(&eig.values, group_tol).into_iter().rev() {
        let value = eig.values[start..start + len].iter().sum::<f64>() / len as f64;
        let basis = eig.vectors.columns(start, len).clone_owned();
        let j_projection = (basis.transpose() * &j).norm();
        eigenvalues.push(ClassifiedEigenvalue {
            value,
            multiplicity: len,
            main: j_projection > threshold,
            j_projection,
            basis,
        });
    }
    let classified = ClassifiedSpectrum {
        order: n,
        eigenvalues,
    };

    let mains = classified.main_count();
    if mains != wd.s {
        return Err(Error::Consistency(format!(
            "{mains} eigenspaces have a j-projection above {threshold:e}, but the walk matrix has rank {}",
            wd.s
        )));
    }
    let m = wd.main_poly();
    let dm = m.derivative();
    let root_tol = group_tol / (2.0 * wd.s as f64);
    for e in &classified.eigenvalues {
        let step = newton_step(&m, &dm, e.value);
        let near_root = step <= root_tol;
        if near_root != e.main {
            return Err(Error::Consistency(format!(
                "eigenvalue {} flagged {} but the main polynomial Newton step is {step:e} (threshold {root_tol:e})",
                e.value,
                if e.main { "main" } else { "non-main" },
            )));
        }
    }
    Ok(classified)
}

/// Orthonormal basis of the column space of the walk matrix: exact
/// Gram–Schmidt over the rationals (kept as primitive integer vectors), then
/// normalised in floating point.
pub fn main_basis(wd: &WalkData) -> DMatrix<f64> {
    let n = wd.order();
    let mut ortho: Vec<Vec<BigInt>> = Vec::with_capacity(wd.s);
    let dot = |a: &[BigInt], b: &[BigInt]| -> BigInt { a.iter().zip(b).map(|(x, y)| x * y).sum() };
    for k in 0..wd.s {
        let w = wd.walk_matrix.column(k);
        // u = w - sum_i (<w,u_i>/<u_i,u_i>) u_i, scaled to clear denominators
        let mut u: Vec<BigRational> = w.iter().cloned().map(BigRational::from_integer).collect();
        for prev in &ortho {
            let coef = BigRational::new(dot(&w, prev), dot(prev, prev));
            for (x, p) in u.iter_mut().zip(prev) {
                *x -= &coef * BigRational::from_integer(p.clone());
            }
        }
        ortho.push(primitive_integer(&u));
    }
    let mut out = DMatrix::zeros(n, wd.s);
    for (k, u) in ortho.iter().enumerate() {
        let col = to_unit_f64(u);
        out.set_column(k, &nalgebra::DVector::from_vec(col));
    }
    out
}

fn primitive_integer(v: &[BigRational]) -> Vec<BigInt> {
    use num_integer::Integer;
    let lcm = v.iter().fold(BigInt::from(1), |l, q| l.lcm(q.denom()));
    let ints: Vec<BigInt> = v.iter().map(|q| q.numer() * (&lcm / q.denom())).collect();
    let g = ints.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    if g.is_zero() {
        return ints;
    }
    ints.into_iter().map(|x| x / &g).collect()
}

/// Converts an integer vector to a unit float vector without overflowing
/// for very large entries.
pub(crate) fn to_unit_f64(v: &[BigInt]) -> Vec<f64> {
    let bits = v.iter().map(|x| x.bits()).max().unwrap_or(0);
    let shift = bits.saturating_sub(60);
    let f: Vec<f64> = v
        .iter()
        .map(|x| (x >> shift).to_f64().unwrap_or(0.0))
        .collect();
    let nrm = f.iter().map(|x| x * x).sum::<f64>().sqrt();
    if nrm == 0.0 {
        return f;
    }
    f.into_iter().map(|x| x / nrm).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;
    use rand::SeedableRng;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    /// Brute-force count of eigenspaces with a nonzero projection of j.
    fn brute_main_count(g: &Graph) -> usize {
        let eig = sym_eigen(&g.adjacency_f64()).unwrap();
        let j = nalgebra::DVector::from_element(g.order(), 1.0);
        clusters_ascending(&eig.values, 1e-8)
            .into_iter()
            .filter(|&(s, l)| (eig.vectors.columns(s, l).transpose() * &j).norm() > 1e-6)
            .count()
    }

    #[test]
    fn star_walk_data() {
        let wd = walk_data(&Graph::complete_bipartite(1, 3)).unwrap();
        assert_eq!(wd.s, 2);
        assert_eq!(wd.walk_counts, ints(&[4, 6]));
        assert_eq!(wd.main_coeffs, ints(&[3, 0]));
        assert_eq!(wd.main_poly(), IntPoly::from_i64(&[-3, 0, 1]));
    }

    #[test]
    fn k2_and_p3_main_polys() {
        let wd = walk_data(&Graph::complete(2)).unwrap();
        assert_eq!(
            (wd.s, wd.walk_counts.clone(), wd.main_coeffs.clone()),
            (1, ints(&[2]), ints(&[1]))
        );
        assert_eq!(main_poly(&wd), IntPoly::from_i64(&[-1, 1]));
        let wd = walk_data(&Graph::path(3)).unwrap();
        assert_eq!(main_poly(&wd), IntPoly::from_i64(&[-2, 0, 1]));
    }

    #[test]
    fn regular_connected_graphs_have_one_main_eigenvalue() {
        for g in [
            Graph::cycle(5).unwrap(),
            Graph::complete(4),
            Graph::petersen(),
            Graph::circulant(8, &[1, 3]).unwrap(),
        ] {
            let d = g.regular_degree().unwrap() as i64;
            let wd = walk_data(&g).unwrap();
            assert_eq!(wd.s, 1);
            assert_eq!(wd.main_poly(), IntPoly::from_i64(&[-d, 1]));
            assert_eq!(wd.walk_matrix.column(0), vec![BigInt::one(); g.order()]);
        }
    }

    #[test]
    fn empty_and_single_vertex() {
        let wd = walk_data(&Graph::empty(5)).unwrap();
        assert_eq!(wd.main_poly(), IntPoly::monomial(1));
        let wd = walk_data(&Graph::empty(1)).unwrap();
        assert_eq!((wd.s, wd.main_poly()), (1, IntPoly::monomial(1)));
        assert!(walk_data(&Graph::empty(0)).is_err());
    }

    #[test]
    fn classify_star() {
        let c =
            classify_spectrum(&Graph::complete_bipartite(1, 3), &Tolerances::default()).unwrap();
        let s3 = 3f64.sqrt();
        assert_eq!(c.eigenvalues.len(), 3);
        let e = &c.eigenvalues;
        assert!((e[0].value - s3).abs() < 1e-12 && e[0].main);
        assert!(e[1].value.abs() < 1e-12 && !e[1].main && e[1].multiplicity == 2);
        assert!((e[2].value + s3).abs() < 1e-12 && e[2].main);
    }

    #[test]
    fn classify_c4() {
        let c = classify_spectrum(&Graph::cycle(4).unwrap(), &Tolerances::default()).unwrap();
        let flags: Vec<(i64, usize, bool)> = c
            .eigenvalues
            .iter()
            .map(|e| (e.value.round() as i64, e.multiplicity, e.main))
            .collect();
        assert_eq!(flags, vec![(2, 1, true), (0, 2, false), (-2, 1, false)]);
    }

    #[test]
    fn classify_two_disjoint_edges() {
        let g = Graph::complete(2).disjoint_union(&Graph::complete(2));
        // brute force: eigenspace of 1 is spanned by (1,1,0,0),(0,0,1,1) and contains j
        assert_eq!(brute_main_count(&g), 1);
        let c = classify_spectrum(&g, &Tolerances::default()).unwrap();
        let flags: Vec<(i64, usize, bool)> = c
            .eigenvalues
            .iter()
            .map(|e| (e.value.round() as i64, e.multiplicity, e.main))
            .collect();
        assert_eq!(flags, vec![(1, 2, true), (-1, 2, false)]);
    }

    #[test]
    fn main_basis_examples() {
        let g = Graph::petersen();
        let b = main_basis(&walk_data(&g).unwrap());
        assert_eq!(b.ncols(), 1);
        let expect = 1.0 / 10f64.sqrt();
        assert!(b.iter().all(|x| (x - expect).abs() < 1e-15));

        let star = Graph::complete_bipartite(1, 3);
        let b = main_basis(&walk_data(&star).unwrap());
        assert_eq!(b.ncols(), 2);
        assert!((b.transpose() * &b - DMatrix::identity(2, 2)).norm() < 1e-12);

        let p3 = Graph::path(3);
        let b = main_basis(&walk_data(&p3).unwrap());
        let a = p3.adjacency_f64();
        let resid = (DMatrix::identity(3, 3) - &b * b.transpose()) * &a * &b;
        assert!(resid.norm() <= 1e-9);
    }

    #[test]
    fn walk_invariants_on_random_graphs() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let n = rand::Rng::random_range(&mut rng, 1..=10);
            let p = rand::Rng::random_range(&mut rng, 0.0..1.0);
            let g = Graph::random_gnp(n, p, &mut rng);
            let wd = walk_data(&g).unwrap();
            assert_eq!(wd, walk_data_rational(&g).unwrap());
            // rank and stopping rule
            assert_eq!(wd.walk_matrix.rank_exact(), wd.s);
            assert_eq!(wd.s, brute_main_count(&g), "{g:?}");
            // N_0 = n, N_1 = 2|E|, N_k = column sums
            assert_eq!(wd.walk_counts[0], BigInt::from(n));
            if wd.s > 1 {
                assert_eq!(wd.walk_counts[1], BigInt::from(2 * g.size()));
            }
            // m(A) j = 0 exactly
            let a = g.adjacency();
            let m = wd.main_poly();
            let mut acc = vec![BigInt::zero(); n];
            for c in m.coeffs().iter().rev() {
                acc = a.mul_vec(&acc);
                for x in acc.iter_mut() {
                    *x += c;
                }
            }
            assert!(acc.iter().all(Zero::is_zero));
            // m divides phi
            let phi = a.charpoly_exact().unwrap();
            assert!(phi.div_exact(&m).is_ok());
            // both classification routes agree
            classify_with_walk_data(&g, &wd, &Tolerances::default()).unwrap();
        }
    }

    #[test]
    fn modular_and_rational_paths_agree_on_larger_graphs() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for n in [12, 20, 28] {
            let g = Graph::random_gnp(n, 0.5, &mut rng);
            assert_eq!(walk_data(&g).unwrap(), walk_data_rational(&g).unwrap());
        }
        let g = Graph::complete_bipartite(3, 9).disjoint_union(&Graph::petersen());
        assert_eq!(walk_data(&g).unwrap(), walk_data_rational(&g).unwrap());
    }

    #[test]
    fn unit_conversion_handles_huge_entries() {
        let big = BigInt::from(10).pow(400);
        let v = vec![big.clone(), -big, BigInt::zero()];
        let u = to_unit_f64(&v);
        let h = 1.0 / 2f64.sqrt();
        assert!((u[0] - h).abs() < 1e-15 && (u[1] + h).abs() < 1e-15 && u[2] == 0.0);
    }
}
