//! Exact linear algebra over the rationals and prime fields.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// The ground field: either the rationals or a prime field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Field {
    Rationals,
    Prime(u64),
}

impl Field {
    /// Builds the prime field of order `p`, rejecting composite `p`.
    pub fn prime(p: u64) -> Result<Field> {
        if p < 2 || (2..).take_while(|d| d * d <= p).any(|d| p % d == 0) {
            return Err(Error::InvalidField(format!("{p} is not prime")));
        }
        Ok(Field::Prime(p))
    }

    /// Characteristic of the field (0 for the rationals).
    pub fn characteristic(&self) -> u64 {
        match self {
            Field::Rationals => 0,
            Field::Prime(p) => *p,
        }
    }

    pub fn zero(&self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, v: i64) -> Scalar {
        match self {
            Field::Rationals => Scalar::Q(BigRational::from_integer(BigInt::from(v))),
            Field::Prime(p) => Scalar::P(v.rem_euclid(*p as i64) as u64, *p),
        }
    }

    /// The scalar `n/d`; fails when `d` vanishes in the field.
    pub fn from_ratio(&self, n: i64, d: i64) -> Result<Scalar> {
        let d = self.from_i64(d);
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(&self.from_i64(n) * &d.inv())
    }

    /// Maps a rational number into the field.
    pub fn from_rational(&self, q: &BigRational) -> Result<Scalar> {
        match self {
            Field::Rationals => Ok(Scalar::Q(q.clone())),
            Field::Prime(p) => {
                let m = BigInt::from(*p);
                let n = q.numer().mod_floor_u64(&m, *p);
                let d = q.denom().mod_floor_u64(&m, *p);
                if d == 0 {
                    return Err(Error::DivisionByZero);
                }
                Ok(&Scalar::P(n, *p) * &Scalar::P(d, *p).inv())
            }
        }
    }

    /// Short name used in reports: `Q` or `F<p>`.
    pub fn name(&self) -> String {
        match self {
            Field::Rationals => "Q".to_string(),
            Field::Prime(p) => format!("F{p}"),
        }
    }
}

trait ModFloor {
    fn mod_floor_u64(&self, m: &BigInt, p: u64) -> u64;
}

impl ModFloor for BigInt {
    fn mod_floor_u64(&self, m: &BigInt, p: u64) -> u64 {
        let r = ((self % m) + m) % m;
        let digits = r.to_u64_digits().1;
        digits.first().copied().unwrap_or(0) % p
    }
}

/// A field element. Prime-field elements carry their modulus.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Q(BigRational),
    P(u64, u64),
}

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn powmod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, a, p);
        }
        a = mulmod(a, a, p);
        e >>= 1;
    }
    r
}

impl Scalar {
    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Q(q) => q.is_zero(),
            Scalar::P(v, _) => *v == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Q(q) => q.is_one(),
            Scalar::P(v, _) => *v == 1,
        }
    }

    /// Multiplicative inverse; panics on zero.
    pub fn inv(&self) -> Scalar {
        assert!(!self.is_zero(), "inverse of zero");
        match self {
            Scalar::Q(q) => Scalar::Q(q.recip()),
            Scalar::P(v, p) => Scalar::P(powmod(*v, p - 2, *p), *p),
        }
    }

    /// `self += a * b`, the hot loop of every elimination.
    pub fn add_mul(&mut self, a: &Scalar, b: &Scalar) {
        match (self, a, b) {
            (Scalar::Q(s), Scalar::Q(a), Scalar::Q(b)) => *s += a * b,
            (Scalar::P(s, p), Scalar::P(a, _), Scalar::P(b, _)) => {
                *s = ((*s as u128 + *a as u128 * *b as u128) % *p as u128) as u64
            }
            _ => panic!("mixed fields"),
        }
    }

    /// `self -= a * b`.
    pub fn sub_mul(&mut self, a: &Scalar, b: &Scalar) {
        self.add_mul(&-a, b);
    }

    /// The rational value, if this is a rational scalar.
    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Q(q) => Some(q),
            Scalar::P(..) => None,
        }
    }

    /// The value as a small signed integer, when it is one.
    pub fn to_i64(&self) -> Option<i64> {
        match self {
            Scalar::Q(q) if q.is_integer() => i64::try_from(q.numer().clone()).ok(),
            Scalar::Q(_) => None,
            Scalar::P(v, p) => {
                if *v <= p / 2 {
                    Some(*v as i64)
                } else {
                    Some(*v as i64 - *p as i64)
                }
            }
        }
    }

    /// Whether the printed form needs a leading minus sign.
    pub fn is_negative(&self) -> bool {
        match self {
            Scalar::Q(q) => q.is_negative(),
            Scalar::P(v, p) => *v > p / 2,
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Q(q) => write!(f, "{q}"),
            Scalar::P(..) => write!(f, "{}", self.to_i64().unwrap()),
        }
    }
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, o: &Scalar) -> Scalar {
        match (self, o) {
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a + b),
            (Scalar::P(a, p), Scalar::P(b, _)) => Scalar::P(((*a as u128 + *b as u128) % *p as u128) as u64, *p),
            _ => panic!("mixed fields"),
        }
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, o: &Scalar) -> Scalar {
        self + &(-o)
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, o: &Scalar) -> Scalar {
        match (self, o) {
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a * b),
            (Scalar::P(a, p), Scalar::P(b, _)) => Scalar::P(mulmod(*a, *b, *p), *p),
            _ => panic!("mixed fields"),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Q(a) => Scalar::Q(-a),
            Scalar::P(a, p) => Scalar::P((p - a) % p, *p),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

/// A dense vector of scalars.
pub type Vector = Vec<Scalar>;

/// A sparse vector: `(index, value)` pairs sorted by index, no zeros stored.
pub type SparseVec = Vec<(usize, Scalar)>;

/// Converts a dense vector to sparse form.
pub fn to_sparse(v: &[Scalar]) -> SparseVec {
    v.iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(i, x)| (i, x.clone()))
        .collect()
}

/// Converts a sparse vector of length `n` to dense form.
pub fn to_dense(field: Field, v: &SparseVec, n: usize) -> Vector {
    let mut out = vec![field.zero(); n];
    for (i, x) in v {
        out[*i] = x.clone();
    }
    out
}

/// `a*x + b*y` for dense vectors.
pub fn lin_comb(field: Field, terms: &[(&Scalar, &[Scalar])], n: usize) -> Vector {
    let mut out = vec![field.zero(); n];
    for (c, v) in terms {
        for (o, x) in out.iter_mut().zip(v.iter()) {
            o.add_mul(c, x);
        }
    }
    out
}

/// Dense row-major matrix over a [`Field`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Matrix {
        Matrix { field, rows, cols, data: vec![field.zero(); rows * cols] }
    }

    pub fn identity(field: Field, n: usize) -> Matrix {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    /// Builds a matrix from rows; all rows must have length `cols`.
    pub fn from_rows(field: Field, cols: usize, rows: Vec<Vector>) -> Matrix {
        let r = rows.len();
        let mut data = Vec::with_capacity(r * cols);
        for row in rows {
            assert_eq!(row.len(), cols, "ragged rows");
            data.extend(row);
        }
        Matrix { field, rows: r, cols, data }
    }

    /// Builds a matrix whose columns are the given vectors (each of length `rows`).
    pub fn from_cols(field: Field, rows: usize, cols: &[Vector]) -> Matrix {
        let mut m = Matrix::zeros(field, rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), rows, "ragged columns");
            for (i, x) in c.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        m
    }

    /// Builds a matrix from small integer rows.
    pub fn from_i64(field: Field, rows: &[&[i64]]) -> Matrix {
        let cols = rows.first().map_or(0, |r| r.len());
        Matrix::from_rows(field, cols, rows.iter().map(|r| r.iter().map(|&x| field.from_i64(x)).collect()).collect())
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn get_mut(&mut self, i: usize, j: usize) -> &mut Scalar {
        &mut self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vector {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Matrix product; panics on shape mismatch.
    pub fn mul(&self, o: &Matrix) -> Matrix {
        assert_eq!(self.cols, o.rows, "shape mismatch in product");
        let mut out = Matrix::zeros(self.field, self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = o.get(k, j);
                    if !b.is_zero() {
                        out.data[i * o.cols + j].add_mul(a, b);
                    }
                }
            }
        }
        out
    }

    /// Applies the matrix to a column vector.
    pub fn apply(&self, v: &[Scalar]) -> Vector {
        assert_eq!(self.cols, v.len(), "shape mismatch in apply");
        let mut out = vec![self.field.zero(); self.rows];
        for (j, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (i, o) in out.iter_mut().enumerate() {
                let a = self.get(i, j);
                if !a.is_zero() {
                    o.add_mul(a, x);
                }
            }
        }
        out
    }

    pub fn add(&self, o: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols), "shape mismatch in sum");
        let data = self.data.iter().zip(&o.data).map(|(a, b)| a + b).collect();
        Matrix { field: self.field, rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, o: &Matrix) -> Matrix {
        self.add(&o.scale(&-self.field.one()))
    }

    pub fn scale(&self, c: &Scalar) -> Matrix {
        let data = self.data.iter().map(|a| a * c).collect();
        Matrix { field: self.field, rows: self.rows, cols: self.cols, data }
    }

    /// `self += c * o` in place.
    pub fn add_scaled(&mut self, c: &Scalar, o: &Matrix) {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols), "shape mismatch in sum");
        if c.is_zero() {
            return;
        }
        for (a, b) in self.data.iter_mut().zip(&o.data) {
            if !b.is_zero() {
                a.add_mul(c, b);
            }
        }
    }

    pub fn transpose(&self) -> Matrix {
        let mut out = Matrix::zeros(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).clone());
            }
        }
        out
    }

    /// Kronecker product: entry `(i,j)` of `self` times `(k,l)` of `o` lands at
    /// row `i*o.rows+k`, column `j*o.cols+l`.
    pub fn kron(&self, o: &Matrix) -> Matrix {
        let mut out = Matrix::zeros(self.field, self.rows * o.rows, self.cols * o.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                for k in 0..o.rows {
                    for l in 0..o.cols {
                        out.set(i * o.rows + k, j * o.cols + l, a * o.get(k, l));
                    }
                }
            }
        }
        out
    }

    /// Places the blocks side by side.
    pub fn hstack(field: Field, rows: usize, blocks: &[&Matrix]) -> Matrix {
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = Matrix::zeros(field, rows, cols);
        let mut off = 0;
        for b in blocks {
            assert_eq!(b.rows, rows, "hstack row mismatch");
            out.set_block(0, off, b);
            off += b.cols;
        }
        out
    }

    /// Stacks the blocks vertically.
    pub fn vstack(field: Field, cols: usize, blocks: &[&Matrix]) -> Matrix {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let mut out = Matrix::zeros(field, rows, cols);
        let mut off = 0;
        for b in blocks {
            assert_eq!(b.cols, cols, "vstack column mismatch");
            out.set_block(off, 0, b);
            off += b.rows;
        }
        out
    }

    /// Block-diagonal matrix.
    pub fn block_diag(field: Field, blocks: &[&Matrix]) -> Matrix {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = Matrix::zeros(field, rows, cols);
        let (mut r, mut c) = (0, 0);
        for b in blocks {
            out.set_block(r, c, b);
            r += b.rows;
            c += b.cols;
        }
        out
    }

    /// Copies `b` into `self` with its top-left corner at `(r, c)`.
    pub fn set_block(&mut self, r: usize, c: usize, b: &Matrix) {
        for i in 0..b.rows {
            for j in 0..b.cols {
                self.set(r + i, c + j, b.get(i, j).clone());
            }
        }
    }

    /// The submatrix on the given rows and columns.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Matrix {
        let mut out = Matrix::zeros(self.field, rows.len(), cols.len());
        for (a, &i) in rows.iter().enumerate() {
            for (b, &j) in cols.iter().enumerate() {
                out.set(a, b, self.get(i, j).clone());
            }
        }
        out
    }

    pub fn select_rows(&self, rows: &[usize]) -> Matrix {
        let cols: Vec<usize> = (0..self.cols).collect();
        self.select(rows, &cols)
    }

    pub fn select_cols(&self, cols: &[usize]) -> Matrix {
        let rows: Vec<usize> = (0..self.rows).collect();
        self.select(&rows, cols)
    }

    /// Row echelon structure of the row space.
    pub fn row_echelon(&self) -> Echelon {
        let mut e = Echelon::new(self.field, self.cols);
        for i in 0..self.rows {
            e.insert(self.row(i).to_vec());
        }
        e
    }

    pub fn rank(&self) -> usize {
        if self.rows <= self.cols {
            self.row_echelon().rank()
        } else {
            self.transpose().row_echelon().rank()
        }
    }

    /// Basis of the null space, one column vector per free variable. Each basis
    /// vector is normalised so that its first nonzero entry is 1.
    pub fn kernel_basis(&self) -> Vec<Vector> {
        self.row_echelon().kernel_basis()
    }

    /// The kernel as a matrix whose columns form a basis.
    pub fn kernel_matrix(&self) -> Matrix {
        Matrix::from_cols(self.field, self.cols, &self.kernel_basis())
    }

    /// A basis of the column space, as a matrix of independent columns chosen
    /// greedily from the left.
    pub fn image_matrix(&self) -> Matrix {
        let cols = self.pivot_columns();
        self.select_cols(&cols)
    }

    /// Indices of the columns that are not combinations of earlier columns.
    pub fn pivot_columns(&self) -> Vec<usize> {
        self.row_echelon().pivots()
    }

    /// Solves `self * X = b`, returning the reduced-echelon particular solution
    /// with every free variable set to zero.
    pub fn solve_right(&self, b: &Matrix) -> std::result::Result<Matrix, NoSolution> {
        assert_eq!(self.rows, b.rows, "solve_right needs equal row counts");
        let n = self.cols;
        let mut e = Echelon::new(self.field, n + b.cols);
        for i in 0..self.rows {
            let mut row = self.row(i).to_vec();
            row.extend_from_slice(b.row(i));
            e.insert(row);
        }
        let mut x = Matrix::zeros(self.field, n, b.cols);
        for (p, row) in e.reduced_rows() {
            if p >= n {
                return Err(NoSolution);
            }
            for (c, v) in row {
                if c >= n {
                    x.set(p, c - n, v);
                }
            }
        }
        Ok(x)
    }

    /// Solves `self * x = b` for a single vector.
    pub fn solve_vec(&self, b: &[Scalar]) -> Option<Vector> {
        let bm = Matrix::from_cols(self.field, self.rows, &[b.to_vec()]);
        self.solve_right(&bm).ok().map(|x| x.col(0))
    }

    /// Inverse of a square matrix, if invertible.
    pub fn inverse(&self) -> Option<Matrix> {
        if !self.is_square() {
            return None;
        }
        if self.rank() != self.rows {
            return None;
        }
        self.solve_right(&Matrix::identity(self.field, self.rows)).ok()
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    /// Determinant by fraction-free style Gaussian elimination in the field.
    pub fn determinant(&self) -> Scalar {
        assert!(self.is_square(), "determinant of non-square matrix");
        let n = self.rows;
        let mut a = self.clone();
        let mut det = self.field.one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&r| !a.get(r, c).is_zero()) else {
                return self.field.zero();
            };
            if p != c {
                for j in 0..n {
                    a.data.swap(p * n + j, c * n + j);
                }
                det = -det;
            }
            let piv = a.get(c, c).clone();
            det = &det * &piv;
            let inv = piv.inv();
            for r in c + 1..n {
                let f = a.get(r, c) * &inv;
                if f.is_zero() {
                    continue;
                }
                for j in c..n {
                    let v = a.get(c, j).clone();
                    a.get_mut(r, j).sub_mul(&f, &v);
                }
            }
        }
        det
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            write!(f, "{}", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Marker returned by [`Matrix::solve_right`] for an inconsistent system.
#[derive(Clone, Copy, Debug, PartialEq, Eq, thiserror::Error)]
#[error("linear system has no solution")]
pub struct NoSolution;

/// Incremental row reduction with sparse pivot rows.
///
/// Each stored row is normalised so its leftmost entry (the pivot) is 1; rows
/// are reduced against earlier pivots on insertion, so the stored rows form a
/// row echelon basis of everything inserted so far.
#[derive(Clone, Debug)]
pub struct Echelon {
    field: Field,
    cols: usize,
    rows: Vec<SparseVec>,
    pivot_of: Vec<Option<usize>>,
}

impl Echelon {
    pub fn new(field: Field, cols: usize) -> Echelon {
        Echelon { field, cols, rows: Vec::new(), pivot_of: vec![None; cols] }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces a dense vector against the stored pivots, in place.
    pub fn reduce(&self, v: &mut [Scalar]) {
        for c in 0..self.cols {
            if v[c].is_zero() {
                continue;
            }
            if let Some(r) = self.pivot_of[c] {
                let f = v[c].clone();
                for (j, x) in &self.rows[r] {
                    v[*j].sub_mul(&f, x);
                }
            }
        }
    }

    /// Inserts a vector; returns true when it was independent of the span.
    pub fn insert(&mut self, mut v: Vector) -> bool {
        assert_eq!(v.len(), self.cols, "echelon width mismatch");
        self.reduce(&mut v);
        let Some(p) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = v[p].inv();
        let row: SparseVec = v[p..]
            .iter()
            .enumerate()
            .filter(|(_, x)| !x.is_zero())
            .map(|(j, x)| (p + j, x * &inv))
            .collect();
        self.pivot_of[p] = Some(self.rows.len());
        self.rows.push(row);
        true
    }

    /// Inserts a sparse vector.
    pub fn insert_sparse(&mut self, v: &SparseVec) -> bool {
        self.insert(to_dense(self.field, v, self.cols))
    }

    /// Whether `v` lies in the span.
    pub fn contains(&self, v: &[Scalar]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        w.iter().all(Scalar::is_zero)
    }

    /// Pivot columns in increasing order.
    pub fn pivots(&self) -> Vec<usize> {
        (0..self.cols).filter(|&c| self.pivot_of[c].is_some()).collect()
    }

    /// Whether column `c` is a pivot column.
    pub fn is_pivot(&self, c: usize) -> bool {
        self.pivot_of[c].is_some()
    }

    /// Fully reduced rows `(pivot, row)` sorted by pivot: each pivot column is
    /// zero in every other row.
    pub fn reduced_rows(&self) -> Vec<(usize, SparseVec)> {
        let pivots = self.pivots();
        let mut done: Vec<Option<SparseVec>> = vec![None; self.cols];
        for &p in pivots.iter().rev() {
            let mut v = to_dense(self.field, &self.rows[self.pivot_of[p].unwrap()], self.cols);
            for c in p + 1..self.cols {
                if v[c].is_zero() {
                    continue;
                }
                if let Some(r) = &done[c] {
                    let f = v[c].clone();
                    for (j, x) in r {
                        v[*j].sub_mul(&f, x);
                    }
                }
            }
            done[p] = Some(to_sparse(&v));
        }
        pivots.into_iter().map(|p| (p, done[p].take().unwrap())).collect()
    }

    /// Basis of the common null space of the stored rows, one vector per free
    /// column, each normalised so that its first nonzero entry is 1.
    pub fn kernel_basis(&self) -> Vec<Vector> {
        let reduced = self.reduced_rows();
        let mut out = Vec::new();
        for f in (0..self.cols).filter(|&c| self.pivot_of[c].is_none()) {
            let mut v = vec![self.field.zero(); self.cols];
            v[f] = self.field.one();
            for (p, row) in &reduced {
                if let Some((_, x)) = row.iter().find(|(c, _)| *c == f) {
                    v[*p] = -x;
                }
            }
            let lead = v.iter().find(|x| !x.is_zero()).unwrap().inv();
            out.push(v.iter().map(|x| x * &lead).collect());
        }
        out
    }

    /// Expresses `v` in terms of the fully reduced rows: returns coefficients
    /// indexed by pivot order, or `None` if `v` is outside the span.
    pub fn coordinates(&self, v: &[Scalar]) -> Option<Vector> {
        let pivots = self.pivots();
        let mut w = v.to_vec();
        self.reduce(&mut w);
        if !w.iter().all(Scalar::is_zero) {
            return None;
        }
        Some(pivots.iter().map(|&p| v[p].clone()).collect())
    }
}

/// Kernel of the linear system whose rows are given sparsely.
pub fn kernel_of_rows(field: Field, cols: usize, rows: impl IntoIterator<Item = SparseVec>) -> Vec<Vector> {
    let mut e = Echelon::new(field, cols);
    for r in rows {
        if !r.is_empty() {
            e.insert_sparse(&r);
        }
    }
    e.kernel_basis()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q() -> Field {
        Field::Rationals
    }

    #[test]
    fn kernel_of_empty_and_injective() {
        assert!(Matrix::zeros(q(), 0, 0).kernel_basis().is_empty());
        assert!(Matrix::identity(q(), 3).kernel_basis().is_empty());
    }

    #[test]
    fn kernel_of_rank_one() {
        let a = Matrix::from_i64(q(), &[&[1, 1], &[2, 2]]);
        assert_eq!(a.kernel_basis(), vec![vec![q().from_i64(1), q().from_i64(-1)]]);
    }

    #[test]
    fn solve_examples() {
        let b = Matrix::from_i64(q(), &[&[3, 4], &[5, 6]]);
        assert_eq!(Matrix::identity(q(), 2).solve_right(&b).unwrap(), b);
        let a = Matrix::from_i64(q(), &[&[1], &[0]]);
        let b = Matrix::from_i64(q(), &[&[0], &[1]]);
        assert_eq!(a.solve_right(&b), Err(NoSolution));
        let x = Matrix::from_i64(q(), &[&[2]]).solve_right(&Matrix::from_i64(q(), &[&[1]])).unwrap();
        assert_eq!(*x.get(0, 0), q().from_ratio(1, 2).unwrap());
    }

    #[test]
    fn kron_examples() {
        let k = Matrix::identity(q(), 2).kron(&Matrix::identity(q(), 3));
        assert_eq!(k, Matrix::identity(q(), 6));
        let s = Matrix::from_i64(q(), &[&[2]]).kron(&Matrix::from_i64(q(), &[&[3]]));
        assert_eq!(s, Matrix::from_i64(q(), &[&[6]]));
        let a = Matrix::from_i64(q(), &[&[1, 2], &[3, 4]]);
        let b = Matrix::from_i64(q(), &[&[0, 5], &[7, 1]]);
        let e0 = vec![q().one(), q().zero()];
        let lhs = a.kron(&b).apply(&[q().one(), q().zero(), q().zero(), q().zero()]);
        let rhs = Matrix::from_cols(q(), 2, &[a.apply(&e0)]).kron(&Matrix::from_cols(q(), 2, &[b.apply(&e0)]));
        assert_eq!(lhs, rhs.col(0));
    }

    #[test]
    fn prime_field_arithmetic() {
        let f = Field::prime(7).unwrap();
        assert!(Field::prime(9).is_err());
        let three = f.from_i64(3);
        assert!((&three * &three.inv()).is_one());
        assert_eq!(f.from_i64(-1), f.from_i64(6));
        let a = Matrix::from_i64(f, &[&[1, 2], &[3, 4]]);
        assert_eq!(a.mul(&a.inverse().unwrap()), Matrix::identity(f, 2));
        assert_eq!(f.from_rational(&BigRational::new(1.into(), 2.into())).unwrap(), f.from_i64(4));
    }

    #[test]
    fn determinant_and_inverse() {
        let a = Matrix::from_i64(q(), &[&[0, 1], &[1, 0]]);
        assert_eq!(a.determinant(), q().from_i64(-1));
        assert!(Matrix::from_i64(q(), &[&[1, 2], &[2, 4]]).inverse().is_none());
    }

    fn small_matrix(rows: usize, cols: usize) -> impl Strategy<Value = Matrix> {
        proptest::collection::vec(-3i64..=3, rows * cols).prop_map(move |v| {
            let f = Field::Rationals;
            Matrix::from_rows(f, cols, v.chunks(cols.max(1)).take(rows).map(|r| r.iter().map(|&x| f.from_i64(x)).collect()).collect())
        })
    }

    proptest! {
        #[test]
        fn kernel_is_annihilated_and_complements_rank(a in small_matrix(3, 5)) {
            let k = a.kernel_basis();
            for v in &k {
                prop_assert!(a.apply(v).iter().all(Scalar::is_zero));
            }
            prop_assert_eq!(Matrix::from_cols(a.field(), 5, &k).rank(), k.len());
            prop_assert_eq!(a.rank() + k.len(), a.cols());
        }

        #[test]
        fn solve_right_solutions_are_exact(a in small_matrix(4, 3), x in small_matrix(3, 2)) {
            let b = a.mul(&x);
            let y = a.solve_right(&b).unwrap();
            prop_assert_eq!(a.mul(&y), b);
        }

        #[test]
        fn kron_is_associative(a in small_matrix(2, 1), b in small_matrix(1, 2), c in small_matrix(2, 2)) {
            prop_assert_eq!(a.kron(&b).kron(&c), a.kron(&b.kron(&c)));
        }
    }
}
