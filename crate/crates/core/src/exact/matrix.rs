use std::fmt;

use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use super::{IntPoly, RationalVector};
use crate::error::{Error, Result};

/// Dense matrix of arbitrary-precision integers, row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            entries: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zeros(n, n);
        for i in 0..n {
            m.entries[i * n + i] = BigInt::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<BigInt>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Invalid("ragged matrix rows".into()));
        }
        Ok(IntMatrix {
            rows: r,
            cols: c,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        IntMatrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        )
        .expect("rows must have equal length")
    }

    /// Builds a matrix whose columns are the given vectors (all of length `rows`).
    pub fn from_columns(rows: usize, columns: &[Vec<BigInt>]) -> Self {
        let cols = columns.len();
        let mut m = IntMatrix::zeros(rows, cols);
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows, "column length mismatch");
            for (i, x) in col.iter().enumerate() {
                m.entries[i * cols + j] = x.clone();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: BigInt) {
        self.entries[i * self.cols + j] = x;
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = IntMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.entries[j * self.rows + i] = self.get(i, j).clone();
            }
        }
        t
    }

    pub fn trace(&self) -> BigInt {
        (0..self.rows.min(self.cols)).map(|i| self.get(i, i)).sum()
    }

    /// Matrix product; zero entries of `self` are skipped, which makes
    /// sparse left factors (adjacency matrices) cheap.
    pub fn mul(&self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch in product");
        let mut out = IntMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                let out_row = &mut out.entries[i * rhs.cols..(i + 1) * rhs.cols];
                for (o, b) in out_row.iter_mut().zip(rhs.row(k)) {
                    if !b.is_zero() {
                        *o += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(
            self.cols,
            v.len(),
            "dimension mismatch in matrix-vector product"
        );
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, _)| !a.is_zero())
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect()
    }

    pub fn to_f64(&self) -> DMatrix<f64> {
        DMatrix::from_fn(self.rows, self.cols, |i, j| {
            self.get(i, j).to_f64().unwrap_or(f64::NAN)
        })
    }

    /// Entries converted to `i64`; panics on overflow (intended for tests
    /// and small examples).
    pub fn to_i64_rows(&self) -> Vec<Vec<i64>> {
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .map(|x| x.to_i64().expect("entry fits in i64"))
                    .collect()
            })
            .collect()
    }

    pub fn to_decimal_rows(&self) -> Vec<Vec<String>> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(ToString::to_string).collect())
            .collect()
    }

    /// Exact rank over the rationals by fraction-free (Bareiss) elimination.
    pub fn rank_exact(&self) -> usize {
        let mut a: Vec<Vec<BigInt>> = (0..self.rows).map(|i| self.row(i).to_vec()).collect();
        let mut prev = BigInt::one();
        let mut rank = 0;
        for c in 0..self.cols {
            if rank == self.rows {
                break;
            }
            let Some(p) = (rank..self.rows).find(|&i| !a[i][c].is_zero()) else {
                continue;
            };
            a.swap(rank, p);
            let (top, bottom) = a.split_at_mut(rank + 1);
            let pivot_row = &top[rank];
            for row in bottom.iter_mut() {
                let factor = row[c].clone();
                for j in c + 1..self.cols {
                    let v = &pivot_row[c] * &row[j] - &factor * &pivot_row[j];
                    row[j] = v / &prev;
                }
                row[c] = BigInt::zero();
            }
            prev = pivot_row[c].clone();
            rank += 1;
        }
        rank
    }

    /// Characteristic polynomial `det(xI - M)` by Faddeev–LeVerrier. All
    /// divisions in the recurrence are exact over the integers.
    pub fn charpoly_exact(&self) -> Result<IntPoly> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        let mut coeffs = vec![BigInt::zero(); n + 1];
        coeffs[n] = BigInt::one();
        // am holds A * M_k; M_0 = 0.
        let mut am = IntMatrix::zeros(n, n);
        for k in 1..=n {
            let mut m = am;
            let c = &coeffs[n - k + 1];
            for i in 0..n {
                m.entries[i * n + i] += c;
            }
            am = self.mul(&m);
            let (q, r) = (-am.trace()).div_rem(&BigInt::from(k));
            debug_assert!(r.is_zero(), "Faddeev-LeVerrier division must be exact");
            coeffs[n - k] = q;
        }
        Ok(IntPoly::new(coeffs))
    }

    /// Unique exact solution of `self * x = b`, which requires full column
    /// rank and `b` in the column space.
    pub fn solve_exact(&self, b: &RationalVector) -> Result<RationalVector> {
        if b.len() != self.rows {
            return Err(Error::Solve(format!(
                "right-hand side has length {}, expected {}",
                b.len(),
                self.rows
            )));
        }
        let cols = self.cols;
        let mut a: Vec<Vec<BigRational>> = (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .map(|x| BigRational::from_integer(x.clone()))
                    .chain(std::iter::once(b.as_slice()[i].clone()))
                    .collect()
            })
            .collect();

        let mut r = 0;
        for c in 0..cols {
            let Some(p) = (r..self.rows).find(|&i| !a[i][c].is_zero()) else {
                return Err(Error::Solve(format!(
                    "column {c} is dependent (rank deficient)"
                )));
            };
            a.swap(r, p);
            let inv = a[r][c].recip();
            for x in a[r][c..].iter_mut() {
                *x *= &inv;
            }
            let pivot = a[r].clone();
            for (i, row) in a.iter_mut().enumerate() {
                if i == r || row[c].is_zero() {
                    continue;
                }
                let f = row[c].clone();
                for (x, pv) in row[c..].iter_mut().zip(&pivot[c..]) {
                    *x -= &f * pv;
                }
            }
            r += 1;
        }
        if a[r..].iter().any(|row| !row[cols].is_zero()) {
            return Err(Error::Solve("inconsistent system".into()));
        }
        Ok(RationalVector::new(
            a.into_iter()
                .take(cols)
                .map(|row| row[cols].clone())
                .collect(),
        ))
    }
}

/// Incrementally tests whether integer vectors are linearly independent of
/// the ones already accepted, keeping a primitive fraction-free echelon
/// basis.
#[derive(Debug, Clone, Default)]
pub struct SpanBuilder {
    // (pivot position, primitive row with nonzero entry at pivot)
    basis: Vec<(usize, Vec<BigInt>)>,
}

impl SpanBuilder {
    pub fn new() -> Self {
        SpanBuilder::default()
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    /// Adds `v` if it is not in the current span; returns whether it was added.
    pub fn insert(&mut self, v: &[BigInt]) -> bool {
        let mut w = v.to_vec();
        for (piv, row) in &self.basis {
            if w[*piv].is_zero() {
                continue;
            }
            let a = row[*piv].clone();
            let b = w[*piv].clone();
            let g = a.gcd(&b);
            let (a, b) = (&a / &g, &b / &g);
            for (x, r) in w.iter_mut().zip(row) {
                *x = &a * &*x - &b * r;
            }
            make_primitive(&mut w);
        }
        match w.iter().position(|x| !x.is_zero()) {
            None => false,
            Some(piv) => {
                make_primitive(&mut w);
                self.basis.push((piv, w));
                true
            }
        }
    }
}

fn make_primitive(w: &mut [BigInt]) {
    let g = w.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    if !g.is_zero() && !g.is_one() {
        for x in w.iter_mut() {
            *x = &*x / &g;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn rv(v: &[i64]) -> RationalVector {
        RationalVector::from_integers(v.iter().map(|&x| BigInt::from(x)))
    }

    /// Brute-force oracle: det(xI - M) by cofactor expansion with
    /// polynomial entries.
    fn charpoly_cofactor(m: &[Vec<i64>]) -> IntPoly {
        let n = m.len();
        let entry = |i: usize, j: usize| -> IntPoly {
            let c = IntPoly::constant(BigInt::from(-m[i][j]));
            if i == j {
                &c + &IntPoly::monomial(1)
            } else {
                c
            }
        };
        fn det(rows: &[usize], cols: &[usize], entry: &dyn Fn(usize, usize) -> IntPoly) -> IntPoly {
            if rows.is_empty() {
                return IntPoly::one();
            }
            let r = rows[0];
            let mut acc = IntPoly::zero();
            for (k, &c) in cols.iter().enumerate() {
                let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
                let term = &entry(r, c) * &det(&rows[1..], &rest, entry);
                acc = if k % 2 == 0 {
                    &acc + &term
                } else {
                    &acc - &term
                };
            }
            acc
        }
        let idx: Vec<usize> = (0..n).collect();
        det(&idx, &idx, &entry)
    }

    /// Rank oracle by rational Gaussian elimination.
    fn rank_rational(m: &IntMatrix) -> usize {
        let mut a: Vec<Vec<BigRational>> = (0..m.rows())
            .map(|i| {
                m.row(i)
                    .iter()
                    .map(|x| BigRational::from_integer(x.clone()))
                    .collect()
            })
            .collect();
        let mut r = 0;
        for c in 0..m.cols() {
            let Some(p) = (r..m.rows()).find(|&i| !a[i][c].is_zero()) else {
                continue;
            };
            a.swap(r, p);
            for i in r + 1..m.rows() {
                let f = &a[i][c] / &a[r][c];
                for j in c..m.cols() {
                    let t = &f * &a[r][j];
                    a[i][j] -= t;
                }
            }
            r += 1;
        }
        r
    }

    #[test]
    fn rank_examples() {
        assert_eq!(IntMatrix::identity(3).rank_exact(), 3);
        let ones = IntMatrix::from_i64_rows(&[&[1, 1], &[1, 1], &[1, 1], &[1, 1]]);
        assert_eq!(ones.rank_exact(), 1);
        // W_{K_{1,3};2} = (j, A j)
        let w = IntMatrix::from_i64_rows(&[&[1, 3], &[1, 1], &[1, 1], &[1, 1]]);
        assert_eq!(w.rank_exact(), 2);
        assert_eq!(IntMatrix::zeros(3, 2).rank_exact(), 0);
        assert_eq!(IntMatrix::zeros(0, 0).rank_exact(), 0);
    }

    #[test]
    fn solve_examples() {
        let x = IntMatrix::identity(2).solve_exact(&rv(&[1, 2])).unwrap();
        assert_eq!(x, rv(&[1, 2]));
        // W_{K_2} = (j_2), A j = (1, 1) -> c_0 = 1
        let w = IntMatrix::from_i64_rows(&[&[1], &[1]]);
        assert_eq!(w.solve_exact(&rv(&[1, 1])).unwrap(), rv(&[1]));
        // W_{P_3} = (j, A j) with A j = (1, 2, 1); A^2 j = (2, 2, 2)
        let w = IntMatrix::from_i64_rows(&[&[1, 1], &[1, 2], &[1, 1]]);
        assert_eq!(w.solve_exact(&rv(&[2, 2, 2])).unwrap(), rv(&[2, 0]));
    }

    #[test]
    fn solve_rejects_bad_systems() {
        let w = IntMatrix::from_i64_rows(&[&[1, 1], &[1, 2], &[1, 1]]);
        assert!(matches!(
            w.solve_exact(&rv(&[1, 0, 0])),
            Err(Error::Solve(_))
        ));
        let dep = IntMatrix::from_i64_rows(&[&[1, 2], &[2, 4]]);
        assert!(matches!(
            dep.solve_exact(&rv(&[1, 2])),
            Err(Error::Solve(_))
        ));
        assert!(w.solve_exact(&rv(&[1])).is_err());
    }

    #[test]
    fn solve_with_fractional_solution() {
        let a = IntMatrix::from_i64_rows(&[&[2, 0], &[0, 3]]);
        let x = a.solve_exact(&rv(&[1, 1])).unwrap();
        assert_eq!(x.as_slice()[0], BigRational::new(1.into(), 2.into()));
        assert_eq!(x.as_slice()[1], BigRational::new(1.into(), 3.into()));
        assert!(x.to_integers().is_none());
    }

    #[test]
    fn charpoly_examples() {
        let k2 = IntMatrix::from_i64_rows(&[&[0, 1], &[1, 0]]);
        assert_eq!(k2.charpoly_exact().unwrap(), IntPoly::from_i64(&[-1, 0, 1]));
        let p3 = IntMatrix::from_i64_rows(&[&[0, 1, 0], &[1, 0, 1], &[0, 1, 0]]);
        assert_eq!(
            p3.charpoly_exact().unwrap(),
            IntPoly::from_i64(&[0, -2, 0, 1])
        );
        assert!(matches!(
            IntMatrix::zeros(2, 3).charpoly_exact(),
            Err(Error::NotSquare { rows: 2, cols: 3 })
        ));
        assert_eq!(
            IntMatrix::zeros(0, 0).charpoly_exact().unwrap(),
            IntPoly::one()
        );
    }

    #[test]
    fn charpoly_of_golden_assoc_matrix() {
        let w = IntMatrix::from_i64_rows(&[
            &[0, 3, 2, 0, 0],
            &[1, 0, 0, 0, 0],
            &[4, 6, 1, 3, 4],
            &[0, 0, 2, 0, 2],
            &[0, 0, 0, 1, 0],
        ]);
        // det(xI - W) is monic; the negated form -x^5 + ... is det(W - xI).
        let f = w.charpoly_exact().unwrap();
        assert_eq!(f, IntPoly::from_i64(&[42, 40, -15, -19, -1, 1]));
        assert_eq!(-&f, IntPoly::from_i64(&[-42, -40, 15, 19, 1, -1]));
    }

    #[test]
    fn span_builder_detects_dependence() {
        let mut sb = SpanBuilder::new();
        let v = |x: &[i64]| x.iter().map(|&a| BigInt::from(a)).collect::<Vec<_>>();
        assert!(sb.insert(&v(&[1, 1, 1])));
        assert!(sb.insert(&v(&[1, 2, 1])));
        assert!(!sb.insert(&v(&[2, 2, 2])));
        assert!(!sb.insert(&v(&[3, 5, 3])));
        assert!(sb.insert(&v(&[0, 0, 7])));
        assert!(!sb.insert(&v(&[0, 0, 0])));
        assert_eq!(sb.rank(), 3);
    }

    fn arb_matrix(max: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
        (1..=max, 1..=max)
            .prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(-3i64..=3, c), r))
    }

    fn to_int(m: &[Vec<i64>]) -> IntMatrix {
        let rows: Vec<&[i64]> = m.iter().map(Vec::as_slice).collect();
        IntMatrix::from_i64_rows(&rows)
    }

    proptest! {
        #[test]
        fn charpoly_matches_cofactor_oracle(n in 1usize..=5, seed in prop::collection::vec(-4i64..=4, 25)) {
            let m: Vec<Vec<i64>> = (0..n).map(|i| seed[i * 5..i * 5 + n].to_vec()).collect();
            prop_assert_eq!(to_int(&m).charpoly_exact().unwrap(), charpoly_cofactor(&m));
        }

        #[test]
        fn symmetric_01_charpoly_is_monic_of_full_degree(n in 1usize..=7, bits in prop::collection::vec(any::<bool>(), 49)) {
            let mut m = IntMatrix::zeros(n, n);
            for i in 0..n {
                for j in i + 1..n {
                    if bits[i * 7 + j] {
                        m.set(i, j, 1.into());
                        m.set(j, i, 1.into());
                    }
                }
            }
            let f = m.charpoly_exact().unwrap();
            prop_assert!(f.is_monic());
            prop_assert_eq!(f.degree(), Some(n));
        }

        #[test]
        fn bareiss_rank_matches_rational_oracle(m in arb_matrix(6)) {
            let im = to_int(&m);
            prop_assert_eq!(im.rank_exact(), rank_rational(&im));
        }

        #[test]
        fn rank_invariant_under_row_operations(m in arb_matrix(6), perm_seed in any::<u64>(), k in -3i64..=3) {
            let im = to_int(&m);
            let r = im.rank_exact();
            let mut rows = m.clone();
            // rotate rows, then add k * row0 to the last row
            let rot = (perm_seed as usize) % rows.len();
            rows.rotate_left(rot);
            let last = rows.len() - 1;
            if last > 0 {
                let r0 = rows[0].clone();
                for (x, y) in rows[last].iter_mut().zip(&r0) {
                    *x += k * y;
                }
            }
            prop_assert_eq!(to_int(&rows).rank_exact(), r);
        }

        #[test]
        fn span_builder_rank_matches_bareiss(m in arb_matrix(6)) {
            let im = to_int(&m);
            let mut sb = SpanBuilder::new();
            for i in 0..im.rows() {
                sb.insert(im.row(i));
            }
            prop_assert_eq!(sb.rank(), im.rank_exact());
        }
    }
}
