//! Exact scalar and matrix arithmetic over the rationals and prime fields.
//!
//! Everything here is exact: characteristic 0 uses reduced big-integer
//! fractions, characteristic `p` uses residues in `[0, p)`. Elimination
//! always pivots on the first nonzero entry in column order, so the
//! reduced row echelon form and the nullspace bases derived from it are
//! canonical for a fixed column ordering.

use std::fmt;
use std::ops::{Add, Index, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("characteristic {0} is neither 0 nor a prime")]
    NotAField(u64),
    #[error("field mismatch: {left} vs {right}")]
    FieldMismatch { left: FieldSpec, right: FieldSpec },
    #[error("shape mismatch: expected {expected}, found {found}")]
    ShapeMismatch { expected: String, found: String },
    #[error("row {row} has {len} entries, expected {expected}")]
    Ragged {
        row: usize,
        len: usize,
        expected: usize,
    },
}

/// The coefficient field: `Q` for characteristic 0, `GF(p)` otherwise.
///
/// Can only be built through [`FieldSpec::new`] (or the `rationals`
/// shortcut), which rejects composite characteristics.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldSpec {
    characteristic: u64,
}

impl FieldSpec {
    pub fn new(characteristic: u64) -> Result<Self, FieldError> {
        if characteristic == 0 || is_prime(characteristic) {
            Ok(Self { characteristic })
        } else {
            Err(FieldError::NotAField(characteristic))
        }
    }

    pub const fn rationals() -> Self {
        Self { characteristic: 0 }
    }

    pub fn characteristic(&self) -> u64 {
        self.characteristic
    }

    pub fn is_rational(&self) -> bool {
        self.characteristic == 0
    }

    pub fn zero(&self) -> Scalar {
        Scalar::from_int(0, *self)
    }

    pub fn one(&self) -> Scalar {
        Scalar::from_int(1, *self)
    }

    pub fn two(&self) -> Scalar {
        Scalar::from_int(2, *self)
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.characteristic == 0 {
            write!(f, "Q")
        } else {
            write!(f, "GF({})", self.characteristic)
        }
    }
}

/// Deterministic Miller-Rabin, exact for every `u64`.
pub fn is_prime(n: u64) -> bool {
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &b in &BASES {
        if n.is_multiple_of(b) {
            return n == b;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// An exact field element in canonical form.
///
/// Mixing scalars from different fields in arithmetic is a logic error
/// and panics.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Residue { value: u64, modulus: u64 },
}

impl Scalar {
    pub fn from_int(k: i64, field: FieldSpec) -> Self {
        Self::from_bigint(&BigInt::from(k), field)
    }

    pub fn from_bigint(k: &BigInt, field: FieldSpec) -> Self {
        match field.characteristic {
            0 => Scalar::Rational(BigRational::from_integer(k.clone())),
            p => {
                let r = k.mod_floor(&BigInt::from(p));
                Scalar::Residue {
                    value: r.to_u64().expect("residue below modulus"),
                    modulus: p,
                }
            }
        }
    }

    /// A fraction `num/den`; only meaningful over `Q`, for `GF(p)` the
    /// image `num * den^-1` is returned. `None` if `den` vanishes.
    pub fn from_ratio(num: &BigInt, den: &BigInt, field: FieldSpec) -> Option<Self> {
        match field.characteristic {
            0 if den.is_zero() => None,
            0 => Some(Scalar::Rational(BigRational::new(num.clone(), den.clone()))),
            _ => {
                let inv = Scalar::from_bigint(den, field).inv()?;
                Some(&Scalar::from_bigint(num, field) * &inv)
            }
        }
    }

    pub fn field(&self) -> FieldSpec {
        match self {
            Scalar::Rational(_) => FieldSpec::rationals(),
            Scalar::Residue { modulus, .. } => FieldSpec {
                characteristic: *modulus,
            },
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_zero(),
            Scalar::Residue { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_one(),
            Scalar::Residue { value, .. } => *value == 1,
        }
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inv(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            Scalar::Rational(q) => Scalar::Rational(q.recip()),
            Scalar::Residue { value, modulus } => Scalar::Residue {
                value: pow_mod(*value, modulus - 2, *modulus),
                modulus: *modulus,
            },
        })
    }

    /// Numerator and positive denominator of the canonical representative.
    /// Residues are returned as `(value, 1)`.
    pub fn to_ratio(&self) -> (BigInt, BigInt) {
        match self {
            Scalar::Rational(q) => (q.numer().clone(), q.denom().clone()),
            Scalar::Residue { value, .. } => (BigInt::from(*value), BigInt::one()),
        }
    }

    fn check_same(&self, other: &Scalar) {
        let (a, b) = (self.field(), other.field());
        assert!(a == b, "scalar arithmetic across fields: {a} vs {b}");
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(q) if q.is_integer() => write!(f, "{}", q.numer()),
            Scalar::Rational(q) => write!(f, "{}/{}", q.numer(), q.denom()),
            Scalar::Residue { value, .. } => write!(f, "{value}"),
        }
    }
}

impl Add for &Scalar {
    type Output = Scalar;

    fn add(self, rhs: &Scalar) -> Scalar {
        self.check_same(rhs);
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            (Scalar::Residue { value: a, modulus }, Scalar::Residue { value: b, .. }) => {
                Scalar::Residue {
                    value: ((*a as u128 + *b as u128) % *modulus as u128) as u64,
                    modulus: *modulus,
                }
            }
            _ => unreachable!(),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;

    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(a) => Scalar::Rational(-a),
            Scalar::Residue { value, modulus } => Scalar::Residue {
                value: if *value == 0 { 0 } else { modulus - value },
                modulus: *modulus,
            },
        }
    }
}

impl Sub for &Scalar {
    type Output = Scalar;

    fn sub(self, rhs: &Scalar) -> Scalar {
        self + &(-rhs)
    }
}

impl Mul for &Scalar {
    type Output = Scalar;

    fn mul(self, rhs: &Scalar) -> Scalar {
        self.check_same(rhs);
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (Scalar::Residue { value: a, modulus }, Scalar::Residue { value: b, .. }) => {
                Scalar::Residue {
                    value: mul_mod(*a, *b, *modulus),
                    modulus: *modulus,
                }
            }
            _ => unreachable!(),
        }
    }
}

macro_rules! forward_owned {
    ($($tr:ident :: $m:ident),*) => {$(
        impl $tr for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar {
                (&self).$m(rhs)
            }
        }
    )*};
}

forward_owned!(Add::add, Sub::sub, Mul::mul);

impl Neg for Scalar {
    type Output = Scalar;

    fn neg(self) -> Scalar {
        -&self
    }
}

/// Dense row-major matrix over a single field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    field: FieldSpec,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(field: FieldSpec, rows: usize, cols: usize) -> Self {
        Self {
            field,
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: FieldSpec, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = field.one();
        }
        m
    }

    pub fn from_fn(
        field: FieldSpec,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> Scalar,
    ) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                let s = f(i, j);
                assert_eq!(s.field(), field, "entry ({i},{j}) from the wrong field");
                data.push(s);
            }
        }
        Self {
            field,
            rows,
            cols,
            data,
        }
    }

    pub fn from_flat(
        field: FieldSpec,
        rows: usize,
        cols: usize,
        data: Vec<Scalar>,
    ) -> Result<Self, FieldError> {
        if data.len() != rows * cols {
            return Err(FieldError::ShapeMismatch {
                expected: format!("{} entries", rows * cols),
                found: format!("{} entries", data.len()),
            });
        }
        if let Some(bad) = data.iter().find(|s| s.field() != field) {
            return Err(FieldError::FieldMismatch {
                left: field,
                right: bad.field(),
            });
        }
        Ok(Self {
            field,
            rows,
            cols,
            data,
        })
    }

    pub fn from_rows(field: FieldSpec, rows: Vec<Vec<Scalar>>) -> Result<Self, FieldError> {
        let cols = rows.first().map_or(0, Vec::len);
        let nrows = rows.len();
        let mut data = Vec::with_capacity(nrows * cols);
        for (r, row) in rows.into_iter().enumerate() {
            if row.len() != cols {
                return Err(FieldError::Ragged {
                    row: r,
                    len: row.len(),
                    expected: cols,
                });
            }
            data.extend(row);
        }
        Self::from_flat(field, nrows, cols, data)
    }

    /// Integer rows reduced into `field`.
    pub fn from_ints<R: AsRef<[i64]>>(field: FieldSpec, rows: &[R]) -> Result<Self, FieldError> {
        let rows = rows
            .iter()
            .map(|r| {
                r.as_ref()
                    .iter()
                    .map(|&k| Scalar::from_int(k, field))
                    .collect()
            })
            .collect();
        Self::from_rows(field, rows)
    }

    pub fn diagonal(field: FieldSpec, entries: &[i64]) -> Self {
        let n = entries.len();
        Self::from_fn(field, n, n, |i, j| {
            if i == j {
                Scalar::from_int(entries[i], field)
            } else {
                field.zero()
            }
        })
    }

    pub fn field(&self) -> FieldSpec {
        self.field
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

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: Scalar) {
        assert_eq!(value.field(), self.field, "entry from the wrong field");
        self.data[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_iter(&self) -> impl Iterator<Item = &[Scalar]> {
        (0..self.rows).map(move |i| self.row(i))
    }

    /// Entries in row-major order.
    pub fn as_slice(&self) -> &[Scalar] {
        &self.data
    }

    pub fn into_flat(self) -> Vec<Scalar> {
        self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.field, self.cols, self.rows, |i, j| {
            self.get(j, i).clone()
        })
    }

    fn check_field(&self, other: &Matrix) -> Result<(), FieldError> {
        if self.field != other.field {
            return Err(FieldError::FieldMismatch {
                left: self.field,
                right: other.field,
            });
        }
        Ok(())
    }

    fn shape(&self) -> String {
        format!("{}x{}", self.rows, self.cols)
    }

    pub fn product(&self, other: &Matrix) -> Result<Matrix, FieldError> {
        self.check_field(other)?;
        if self.cols != other.rows {
            return Err(FieldError::ShapeMismatch {
                expected: format!("{}x_", self.cols),
                found: other.shape(),
            });
        }
        let mut out = Matrix::zeros(self.field, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let idx = i * other.cols + j;
                        out.data[idx] = &out.data[idx] + &(a * b);
                    }
                }
            }
        }
        Ok(out)
    }

    fn zip_with(
        &self,
        other: &Matrix,
        f: impl Fn(&Scalar, &Scalar) -> Scalar,
    ) -> Result<Matrix, FieldError> {
        self.check_field(other)?;
        if self.rows != other.rows || self.cols != other.cols {
            return Err(FieldError::ShapeMismatch {
                expected: self.shape(),
                found: other.shape(),
            });
        }
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| f(a, b))
            .collect();
        Ok(Matrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn sum(&self, other: &Matrix) -> Result<Matrix, FieldError> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn difference(&self, other: &Matrix) -> Result<Matrix, FieldError> {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn scaled(&self, c: &Scalar) -> Matrix {
        Matrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * c).collect(),
        }
    }

    /// `self * other - other * self`.
    pub fn commutator(&self, other: &Matrix) -> Result<Matrix, FieldError> {
        self.product(other)?.difference(&other.product(self)?)
    }

    pub fn mul_vec(&self, x: &[Scalar]) -> Result<Vec<Scalar>, FieldError> {
        if x.len() != self.cols {
            return Err(FieldError::ShapeMismatch {
                expected: format!("vector of length {}", self.cols),
                found: format!("vector of length {}", x.len()),
            });
        }
        Ok(self
            .row_iter()
            .map(|row| {
                row.iter()
                    .zip(x)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(self.field.zero(), |acc, (a, b)| acc + a * b)
            })
            .collect())
    }

    /// Reduced row echelon form together with the pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut rows: Vec<Vec<Scalar>> = self.row_iter().map(<[Scalar]>::to_vec).collect();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == rows.len() {
                break;
            }
            let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
                continue;
            };
            rows.swap(r, p);
            let inv = rows[r][c].inv().expect("nonzero pivot");
            for x in rows[r][c..].iter_mut() {
                *x = &*x * &inv;
            }
            let (before, rest) = rows.split_at_mut(r);
            let (pivot_row, after) = rest.split_first_mut().expect("pivot row");
            for other in before.iter_mut().chain(after.iter_mut()) {
                let factor = other[c].clone();
                if factor.is_zero() {
                    continue;
                }
                for (x, y) in other[c..].iter_mut().zip(&pivot_row[c..]) {
                    if !y.is_zero() {
                        *x = &*x - &(&factor * y);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        let data = rows.into_iter().flatten().collect();
        (
            Matrix {
                field: self.field,
                rows: self.rows,
                cols: self.cols,
                data,
            },
            pivots,
        )
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of `{x : Mx = 0}`: one vector per free column, in ascending
    /// order of that column, with a 1 there and zeros at the other free
    /// columns.
    pub fn nullspace(&self) -> Vec<Vec<Scalar>> {
        let (reduced, pivots) = self.rref();
        let pivot_rows: Vec<(usize, &[Scalar])> = pivots
            .iter()
            .enumerate()
            .map(|(r, &c)| (c, reduced.row(r)))
            .collect();
        free_columns(self.cols, &pivots)
            .map(|f| {
                let mut v = vec![self.field.zero(); self.cols];
                v[f] = self.field.one();
                for &(pc, row) in &pivot_rows {
                    v[pc] = -&row[f];
                }
                v
            })
            .collect()
    }

    /// Multiplies every row by the lcm of its denominators so that all
    /// entries become integers. Residues are already integers.
    pub fn to_integer_rows(&self) -> Vec<Vec<BigInt>> {
        let lcm = self
            .data
            .iter()
            .map(|s| s.to_ratio().1)
            .fold(BigInt::one(), |acc, d| acc.lcm(&d));
        self.row_iter()
            .map(|row| {
                row.iter()
                    .map(|s| {
                        let (n, d) = s.to_ratio();
                        n * (&lcm / d)
                    })
                    .collect()
            })
            .collect()
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = Scalar;

    fn index(&self, (i, j): (usize, usize)) -> &Scalar {
        self.get(i, j)
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in self.row_iter() {
            let line: Vec<String> = row.iter().map(ToString::to_string).collect();
            writeln!(f, "{}", line.join(" "))?;
        }
        Ok(())
    }
}

fn free_columns(cols: usize, pivots: &[usize]) -> impl Iterator<Item = usize> + '_ {
    (0..cols).filter(move |c| pivots.binary_search(c).is_err())
}

type SparseRow = Vec<(usize, Scalar)>;

/// Row space kept in reduced row echelon form while rows are added one at
/// a time. Rows are stored sparsely, which keeps the derivation systems
/// (mostly one- and two-term equations) cheap even when the dense system
/// would not fit comfortably in memory.
#[derive(Debug, Clone)]
pub struct IncrementalEchelon {
    field: FieldSpec,
    cols: usize,
    rows: Vec<SparseRow>,
    pivot_row: Vec<Option<usize>>,
}

impl IncrementalEchelon {
    pub fn new(field: FieldSpec, cols: usize) -> Self {
        Self {
            field,
            cols,
            rows: Vec::new(),
            pivot_row: vec![None; cols],
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn pivots(&self) -> Vec<usize> {
        (0..self.cols)
            .filter(|&c| self.pivot_row[c].is_some())
            .collect()
    }

    /// Adds a row given as `(column, coefficient)` terms; repeated columns
    /// are summed. Returns whether the row was independent of the rows
    /// already present.
    pub fn insert(&mut self, terms: impl IntoIterator<Item = (usize, Scalar)>) -> bool {
        let mut acc: std::collections::BTreeMap<usize, Scalar> = Default::default();
        for (c, v) in terms {
            assert!(c < self.cols, "column {c} out of range");
            assert_eq!(v.field(), self.field, "term from the wrong field");
            let e = acc.entry(c).or_insert_with(|| self.field.zero());
            *e = &*e + &v;
        }
        acc.retain(|_, v| !v.is_zero());

        let hits: Vec<(usize, Scalar)> = acc
            .iter()
            .filter_map(|(&c, v)| self.pivot_row[c].map(|r| (r, v.clone())))
            .collect();
        for (r, factor) in hits {
            for (c, x) in &self.rows[r] {
                let e = acc.entry(*c).or_insert_with(|| self.field.zero());
                *e = &*e - &(&factor * x);
            }
        }
        acc.retain(|_, v| !v.is_zero());

        let Some((&lead, lead_val)) = acc.iter().next() else {
            return false;
        };
        let inv = lead_val.inv().expect("nonzero lead");
        let new_row: SparseRow = acc.into_iter().map(|(c, v)| (c, &v * &inv)).collect();

        for row in &mut self.rows {
            if let Ok(pos) = row.binary_search_by_key(&lead, |(c, _)| *c) {
                let factor = row[pos].1.clone();
                *row = axpy(row, &factor, &new_row);
            }
        }
        self.pivot_row[lead] = Some(self.rows.len());
        self.rows.push(new_row);
        true
    }

    /// Same basis, in the same order, as [`Matrix::nullspace`] on a dense
    /// matrix with this row space.
    pub fn nullspace(&self) -> Vec<Vec<Scalar>> {
        let free: Vec<usize> = (0..self.cols)
            .filter(|&c| self.pivot_row[c].is_none())
            .collect();
        let mut slot = vec![usize::MAX; self.cols];
        for (k, &f) in free.iter().enumerate() {
            slot[f] = k;
        }
        let mut basis: Vec<Vec<Scalar>> = free
            .iter()
            .map(|&f| {
                let mut v = vec![self.field.zero(); self.cols];
                v[f] = self.field.one();
                v
            })
            .collect();
        for row in &self.rows {
            let pivot = row[0].0;
            for (c, x) in &row[1..] {
                basis[slot[*c]][pivot] = -x;
            }
        }
        basis
    }
}

/// `row - factor * other` on sorted sparse rows.
fn axpy(row: &[(usize, Scalar)], factor: &Scalar, other: &[(usize, Scalar)]) -> SparseRow {
    let mut out = Vec::with_capacity(row.len() + other.len());
    let (mut i, mut j) = (0, 0);
    while i < row.len() || j < other.len() {
        let next = match (row.get(i), other.get(j)) {
            (Some(a), Some(b)) if a.0 == b.0 => {
                i += 1;
                j += 1;
                (a.0, &a.1 - &(factor * &b.1))
            }
            (Some(a), Some(b)) if a.0 < b.0 => {
                i += 1;
                a.clone()
            }
            (Some(a), None) => {
                i += 1;
                a.clone()
            }
            (_, Some(b)) => {
                j += 1;
                (b.0, -(factor * &b.1))
            }
            (None, None) => unreachable!(),
        };
        if !next.1.is_zero() {
            out.push(next);
        }
    }
    out
}

/// Row-reduces a list of vectors and keeps the nonzero rows: the unique
/// reduced echelon basis of their span.
pub fn echelon_basis(field: FieldSpec, len: usize, vectors: Vec<Vec<Scalar>>) -> Vec<Vec<Scalar>> {
    if vectors.is_empty() {
        return Vec::new();
    }
    let m = Matrix::from_rows(field, vectors).expect("vectors of equal length");
    debug_assert_eq!(m.cols(), len);
    let (reduced, pivots) = m.rref();
    (0..pivots.len()).map(|r| reduced.row(r).to_vec()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(p: u64) -> FieldSpec {
        FieldSpec::new(p).unwrap()
    }

    #[test]
    fn scalar_from_int_reduces() {
        assert_eq!(
            Scalar::from_int(5, gf(3)),
            Scalar::Residue {
                value: 2,
                modulus: 3
            }
        );
        assert_eq!(Scalar::from_int(4, gf(2)), gf(2).zero());
        assert_eq!(Scalar::from_int(-1, gf(7)).to_string(), "6");
        let q = Scalar::from_int(-1, FieldSpec::rationals());
        assert_eq!(q.to_ratio(), (BigInt::from(-1), BigInt::from(1)));
        assert_eq!(q.to_string(), "-1");
    }

    #[test]
    fn composite_characteristic_rejected() {
        assert_eq!(FieldSpec::new(4), Err(FieldError::NotAField(4)));
        assert_eq!(FieldSpec::new(1), Err(FieldError::NotAField(1)));
        assert!(FieldSpec::new(0).is_ok());
        assert!(FieldSpec::new(2).is_ok());
    }

    #[test]
    fn primality_matches_trial_division() {
        let slow = |n: u64| {
            n >= 2
                && (2..n)
                    .take_while(|d| d * d <= n)
                    .all(|d| !n.is_multiple_of(d))
        };
        for n in 0..5000 {
            assert_eq!(is_prime(n), slow(n), "n = {n}");
        }
        assert!(is_prime(18_446_744_073_709_551_557));
        assert!(!is_prime(3_215_031_751)); // strong pseudoprime to bases 2,3,5,7
    }

    #[test]
    fn fractions_are_canonical() {
        let q = FieldSpec::rationals();
        let a = Scalar::from_ratio(&BigInt::from(2), &BigInt::from(-4), q).unwrap();
        assert_eq!(a.to_ratio(), (BigInt::from(-1), BigInt::from(2)));
        assert_eq!(a.to_string(), "-1/2");
        assert!(Scalar::from_ratio(&BigInt::from(1), &BigInt::from(0), q).is_none());
        assert!(Scalar::from_ratio(&BigInt::from(1), &BigInt::from(3), gf(3)).is_none());
    }

    #[test]
    fn nullspace_small_cases() {
        let q = FieldSpec::rationals();
        let z = Matrix::zeros(q, 2, 2);
        assert_eq!(
            z.nullspace(),
            vec![vec![q.one(), q.zero()], vec![q.zero(), q.one()]]
        );
        assert!(Matrix::identity(q, 3).nullspace().is_empty());
        let m = Matrix::from_ints(gf(2), &[[1, 1]]).unwrap();
        assert_eq!(m.nullspace(), vec![vec![gf(2).one(), gf(2).one()]]);
    }

    #[test]
    fn rank_depends_on_characteristic() {
        let k23 = [
            [0, 0, 0, 1, 1],
            [0, 0, 0, 1, 1],
            [0, 0, 0, 1, 1],
            [1, 1, 1, 0, 0],
            [1, 1, 1, 0, 0],
        ];
        assert_eq!(Matrix::from_ints(gf(3), &k23).unwrap().rank(), 2);
        let p2 = [[0, 1], [1, 0]];
        for c in [0, 2, 3, 5] {
            assert_eq!(Matrix::from_ints(gf(c), &p2).unwrap().rank(), 2);
        }
        let c5: Vec<Vec<i64>> = (0..5)
            .map(|i| {
                (0..5)
                    .map(|j| i64::from((i + 5 - j) % 5 == 1 || (j + 5 - i) % 5 == 1))
                    .collect()
            })
            .collect();
        assert_eq!(Matrix::from_ints(gf(2), &c5).unwrap().rank(), 4);
        assert_eq!(Matrix::from_ints(gf(3), &c5).unwrap().rank(), 5);
        assert_eq!(
            Matrix::from_ints(FieldSpec::rationals(), &c5)
                .unwrap()
                .rank(),
            5
        );
    }

    #[test]
    fn incremental_matches_dense_on_example() {
        let f = gf(5);
        let m = Matrix::from_ints(f, &[[1, 2, 0, 3], [2, 4, 1, 1], [0, 0, 1, 0]]).unwrap();
        let mut inc = IncrementalEchelon::new(f, 4);
        for row in m.row_iter() {
            inc.insert(row.iter().cloned().enumerate());
        }
        assert_eq!(inc.rank(), m.rank());
        assert_eq!(inc.nullspace(), m.nullspace());
    }

    #[test]
    fn integer_rows_clear_denominators() {
        let q = FieldSpec::rationals();
        let half = Scalar::from_ratio(&BigInt::from(1), &BigInt::from(2), q).unwrap();
        let third = Scalar::from_ratio(&BigInt::from(-1), &BigInt::from(3), q).unwrap();
        let m = Matrix::from_rows(q, vec![vec![half, third]]).unwrap();
        assert_eq!(
            m.to_integer_rows(),
            vec![vec![BigInt::from(3), BigInt::from(-2)]]
        );
    }
}
