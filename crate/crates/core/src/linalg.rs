//! Dense exact linear algebra over a [`Field`]: rank, kernel, determinant,
//! and the ε-polynomial outside of whose roots a symbolic matrix keeps its
//! generic rank.

use std::fmt;

use thiserror::Error;

use crate::scalars::{EpsFraction, EpsPoly, Field, Rational, ScalarError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("entry count {got} does not match a {rows}x{cols} matrix")]
    Shape { rows: usize, cols: usize, got: usize },
    #[error("determinant needs a square matrix, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is singular")]
    Singular,
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix<F> {
    rows: usize,
    cols: usize,
    entries: Vec<F>,
}

/// Linearly independent vectors spanning the kernel of a matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KernelBasis<F> {
    pub vectors: Vec<Vec<F>>,
    pub ambient_dim: usize,
}

impl<F> KernelBasis<F> {
    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.vectors.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankKernel<F> {
    pub rank: usize,
    pub kernel: KernelBasis<F>,
    /// Pivot columns of the reduced row echelon form, in increasing order.
    pub pivot_cols: Vec<usize>,
}

/// Polynomial whose nonvanishing at a rational ε₀ guarantees that the
/// specialised matrix has the generic rank.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankDrop {
    /// Monic; its root set may be larger than the actual rank-drop set.
    pub polynomial: EpsPoly,
    pub generic_rank: usize,
}

impl<F: Field> Matrix<F> {
    pub fn new(rows: usize, cols: usize, entries: Vec<F>) -> Result<Self, LinalgError> {
        if entries.len() != rows * cols {
            return Err(LinalgError::Shape { rows, cols, got: entries.len() });
        }
        Ok(Matrix { rows, cols, entries })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, entries: vec![F::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, F::one());
        }
        m
    }

    /// Builds from row vectors; every row must have length `cols`.
    pub fn from_rows(rows: Vec<Vec<F>>, cols: usize) -> Result<Self, LinalgError> {
        let n = rows.len();
        let entries: Vec<F> = rows.into_iter().flatten().collect();
        Matrix::new(n, cols, entries)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &F {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: F) {
        self.entries[r * self.cols + c] = value;
    }

    pub fn row(&self, r: usize) -> &[F] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(F::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    pub fn mul_vec(&self, v: &[F]) -> Vec<F> {
        assert_eq!(v.len(), self.cols, "vector length must match column count");
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(F::zero(), |acc, (a, b)| acc + &(a.clone() * b))
            })
            .collect()
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> Matrix<G> {
        Matrix { rows: self.rows, cols: self.cols, entries: self.entries.iter().map(f).collect() }
    }

    pub fn try_map<G: Field, E>(&self, f: impl Fn(&F) -> Result<G, E>) -> Result<Matrix<G>, E> {
        let entries = self.entries.iter().map(f).collect::<Result<Vec<_>, _>>()?;
        Ok(Matrix { rows: self.rows, cols: self.cols, entries })
    }

    /// Submatrix on the given row and column indices.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Self {
        let entries = rows
            .iter()
            .flat_map(|&r| cols.iter().map(move |&c| self.get(r, c).clone()))
            .collect();
        Matrix { rows: rows.len(), cols: cols.len(), entries }
    }

    /// Reduced row echelon form together with its pivot columns. Pivots are
    /// the first nonzero entry in column order.
    fn rref(&self) -> (Vec<Vec<F>>, Vec<usize>) {
        let mut a: Vec<Vec<F>> = (0..self.rows).map(|r| self.row(r).to_vec()).collect();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !a[i][c].is_zero()) else {
                continue;
            };
            a.swap(r, p);
            let inv = a[r][c].inv().expect("pivot is nonzero");
            for x in a[r].iter_mut() {
                if !x.is_zero() {
                    *x = x.clone() * &inv;
                }
            }
            for i in 0..self.rows {
                if i == r || a[i][c].is_zero() {
                    continue;
                }
                let factor = a[i][c].clone();
                for j in c..self.cols {
                    if a[r][j].is_zero() {
                        continue;
                    }
                    let delta = factor.clone() * &a[r][j];
                    a[i][j] = a[i][j].clone() - &delta;
                }
            }
            pivots.push(c);
            r += 1;
        }
        (a, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Rank and a kernel basis; each kernel vector has a 1 in one free column.
    pub fn rank_kernel(&self) -> RankKernel<F> {
        let (reduced, pivots) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let vectors: Vec<Vec<F>> = (0..self.cols)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut v = vec![F::zero(); self.cols];
                v[free] = F::one();
                for (row, &pc) in pivots.iter().enumerate() {
                    v[pc] = -reduced[row][free].clone();
                }
                v
            })
            .collect();
        debug_assert!(vectors.iter().all(|v| self.mul_vec(v).iter().all(F::is_zero)));
        RankKernel {
            rank: pivots.len(),
            kernel: KernelBasis { vectors, ambient_dim: self.cols },
            pivot_cols: pivots,
        }
    }

    /// Inverse by Gauss–Jordan elimination on `[A | I]`.
    pub fn inverse(&self) -> Result<Self, LinalgError> {
        let n = self.rows;
        if n != self.cols {
            return Err(LinalgError::NotSquare { rows: n, cols: self.cols });
        }
        let mut entries = Vec::with_capacity(2 * n * n);
        for r in 0..n {
            entries.extend_from_slice(self.row(r));
            entries.extend((0..n).map(|c| if c == r { F::one() } else { F::zero() }));
        }
        let (reduced, pivots) = Matrix { rows: n, cols: 2 * n, entries }.rref();
        if pivots.len() < n || (n > 0 && pivots[n - 1] >= n) {
            return Err(LinalgError::Singular);
        }
        let entries = reduced.into_iter().flat_map(|row| row.into_iter().skip(n)).collect();
        Ok(Matrix { rows: n, cols: n, entries })
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> Result<F, LinalgError> {
        if self.rows != self.cols {
            return Err(LinalgError::NotSquare { rows: self.rows, cols: self.cols });
        }
        let rows = (0..self.rows).map(|r| self.row(r).to_vec()).collect();
        Ok(bareiss_det(rows))
    }
}

impl Matrix<EpsFraction> {
    /// Substitutes ε = `at` entrywise.
    pub fn specialize(&self, at: &Rational) -> Result<Matrix<Rational>, ScalarError> {
        self.try_map(|x| x.eval(at))
    }

    /// See [`RankDrop`]. Rows are cleared of denominators; the polynomial is
    /// the gcd of all maximal nonsingular minors (or of the pivot minor alone
    /// when there are too many minors) times the row denominators.
    pub fn rank_drop_polynomial(&self) -> RankDrop {
        let rk = self.rank_kernel();
        let r = rk.rank;
        if r == 0 {
            return RankDrop { polynomial: EpsPoly::one(), generic_rank: 0 };
        }

        let mut denominators = EpsPoly::one();
        let cleared: Vec<Vec<EpsPoly>> = (0..self.rows)
            .map(|i| {
                let lcm = self.row(i).iter().fold(EpsPoly::one(), |acc, x| acc.lcm(x.denom()));
                denominators = denominators.mul_ref(&lcm);
                self.row(i)
                    .iter()
                    .map(|x| x.numer().mul_ref(&lcm.exact_div(x.denom()).expect("lcm")))
                    .collect()
            })
            .collect();

        let minor = |rows: &[usize], cols: &[usize]| -> EpsPoly {
            bareiss_det(
                rows.iter()
                    .map(|&i| cols.iter().map(|&j| cleared[i][j].clone()).collect())
                    .collect(),
            )
        };

        let count = binomial(self.rows, r).saturating_mul(binomial(self.cols, r));
        let minors_gcd = if count <= MINOR_ENUMERATION_LIMIT {
            let mut g = EpsPoly::zero();
            for rows in combinations(self.rows, r) {
                for cols in combinations(self.cols, r) {
                    g = g.gcd(&minor(&rows, &cols));
                    if g.is_one() {
                        break;
                    }
                }
            }
            g
        } else {
            let sub = self.select(&(0..self.rows).collect::<Vec<_>>(), &rk.pivot_cols);
            let pivot_rows = sub.transpose().rank_kernel().pivot_cols;
            minor(&pivot_rows, &rk.pivot_cols)
        };
        debug_assert!(!minors_gcd.is_zero());
        RankDrop { polynomial: minors_gcd.mul_ref(&denominators).monic(), generic_rank: r }
    }
}

const MINOR_ENUMERATION_LIMIT: usize = 400;

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1usize, |acc, i| acc.saturating_mul(n - i) / (i + 1))
}

/// Integral-domain operations needed by Bareiss elimination.
trait BareissRing: Clone {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn mul(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Division known to be exact.
    fn div_exact(&self, rhs: &Self) -> Self;
}

impl<F: Field> BareissRing for F {
    fn zero() -> Self {
        F::zero()
    }
    fn one() -> Self {
        F::one()
    }
    fn is_zero(&self) -> bool {
        Field::is_zero(self)
    }
    fn mul(&self, rhs: &Self) -> Self {
        self.clone() * rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self.clone() - rhs
    }
    fn neg(&self) -> Self {
        -self.clone()
    }
    fn div_exact(&self, rhs: &Self) -> Self {
        self.checked_div(rhs).expect("Bareiss divisor is a previous nonzero pivot")
    }
}

impl BareissRing for EpsPoly {
    fn zero() -> Self {
        EpsPoly::zero()
    }
    fn one() -> Self {
        EpsPoly::one()
    }
    fn is_zero(&self) -> bool {
        EpsPoly::is_zero(self)
    }
    fn mul(&self, rhs: &Self) -> Self {
        self.mul_ref(rhs)
    }
    fn sub(&self, rhs: &Self) -> Self {
        self.sub_ref(rhs)
    }
    fn neg(&self) -> Self {
        self.neg_ref()
    }
    fn div_exact(&self, rhs: &Self) -> Self {
        self.exact_div(rhs).expect("Bareiss quotients are exact")
    }
}

fn bareiss_det<R: BareissRing>(mut a: Vec<Vec<R>>) -> R {
    let n = a.len();
    if n == 0 {
        return R::one();
    }
    let mut negate = false;
    let mut prev = R::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else {
                return R::zero();
            };
            a.swap(k, p);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = a[i][j].mul(&a[k][k]).sub(&a[i][k].mul(&a[k][j]));
                a[i][j] = v.div_exact(&prev);
            }
        }
        prev = a[k][k].clone();
    }
    let det = a[n - 1][n - 1].clone();
    if negate {
        det.neg()
    } else {
        det
    }
}

/// Whether two families of vectors span the same subspace.
pub fn same_span<F: Field>(a: &[Vec<F>], b: &[Vec<F>], ambient_dim: usize) -> bool {
    let rank_of = |vs: &[Vec<F>]| {
        if vs.is_empty() {
            return 0;
        }
        Matrix::from_rows(vs.to_vec(), ambient_dim).expect("vector lengths").rank()
    };
    let ra = rank_of(a);
    let rb = rank_of(b);
    if ra != rb {
        return false;
    }
    let joined: Vec<Vec<F>> = a.iter().chain(b).cloned().collect();
    rank_of(&joined) == ra
}

impl<F: Field> fmt::Display for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.rows == 0 || self.cols == 0 {
            return writeln!(f, "[{}x{} empty]", self.rows, self.cols);
        }
        let cells: Vec<String> = self.entries.iter().map(ToString::to_string).collect();
        let widths: Vec<usize> = (0..self.cols)
            .map(|c| (0..self.rows).map(|r| cells[r * self.cols + c].len()).max().unwrap_or(0))
            .collect();
        for r in 0..self.rows {
            let line: Vec<String> = (0..self.cols)
                .map(|c| format!("{:>w$}", cells[r * self.cols + c], w = widths[c]))
                .collect();
            writeln!(f, "[ {} ]", line.join("  "))?;
        }
        Ok(())
    }
}

impl<F: Field> fmt::Debug for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix {}x{}\n{}", self.rows, self.cols, self)
    }
}

/// `k`-subsets of `0..n` in lexicographic order.
fn combinations(n: usize, k: usize) -> impl Iterator<Item = Vec<usize>> {
    let mut current: Option<Vec<usize>> = (k <= n).then(|| (0..k).collect());
    std::iter::from_fn(move || {
        let out = current.clone()?;
        let mut next = out.clone();
        let mut i = k;
        current = loop {
            if i == 0 {
                break None;
            }
            i -= 1;
            if next[i] < n - k + i {
                next[i] += 1;
                for j in i + 1..k {
                    next[j] = next[j - 1] + 1;
                }
                break Some(next);
            }
        };
        Some(out)
    })
}
