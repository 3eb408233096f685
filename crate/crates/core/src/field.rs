//! Prime-field arithmetic and exact linear algebra over GF(q).
//!
//! Everything the code layer needs: element arithmetic, matrix products,
//! rank, solving and inversion by Gaussian elimination. Moduli are small
//! primes chosen per scheme instance, so a plain `u64` representation with
//! `u128` intermediates is exact for any modulus we will ever construct.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FieldError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("division by zero in the field")]
    DivisionByZero,
    #[error("elements belong to different fields")]
    FieldMismatch,
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
}

/// GF(q) for a prime modulus q, primality-checked at construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PrimeField {
    q: u64,
}

impl PrimeField {
    pub fn new(q: u64) -> Result<Self, FieldError> {
        if !is_prime(q) {
            return Err(FieldError::NotPrime(q));
        }
        Ok(PrimeField { q })
    }

    pub fn modulus(&self) -> u64 {
        self.q
    }

    /// Element with the given representative, reduced mod q.
    pub fn element(&self, value: u64) -> FieldElement {
        FieldElement {
            value: value % self.q,
            modulus: self.q,
        }
    }

    pub fn zero(&self) -> FieldElement {
        self.element(0)
    }

    pub fn one(&self) -> FieldElement {
        self.element(1)
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> FieldElement {
        self.element(rng.gen_range(0..self.q))
    }

    /// All q elements in order, for exhaustive enumeration.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.q).map(move |v| self.element(v))
    }
}

/// Smallest prime field with at least `max(n_points, 2)` elements, so that
/// `n_points` distinct evaluation points exist.
pub fn choose_field(n_points: usize) -> PrimeField {
    let mut q = (n_points as u64).max(2);
    while !is_prime(q) {
        q += 1;
    }
    PrimeField { q }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    if n % 3 == 0 {
        return n == 3;
    }
    let mut d = 5u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 || n % (d + 2) == 0 {
            return false;
        }
        d += 6;
    }
    true
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FieldElement {
    value: u64,
    modulus: u64,
}

impl FieldElement {
    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn field(&self) -> PrimeField {
        PrimeField { q: self.modulus }
    }

    pub fn is_zero(&self) -> bool {
        self.value == 0
    }

    pub fn pow(&self, mut exp: u64) -> FieldElement {
        let mut base = *self;
        let mut acc = FieldElement {
            value: 1 % self.modulus,
            modulus: self.modulus,
        };
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            exp >>= 1;
        }
        acc
    }

    /// Multiplicative inverse via Fermat: `a^(q-2)`.
    pub fn inv(&self) -> Result<FieldElement, FieldError> {
        if self.value == 0 {
            return Err(FieldError::DivisionByZero);
        }
        Ok(self.pow(self.modulus - 2))
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.value, self.modulus)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

fn check_same_field(a: &FieldElement, b: &FieldElement) {
    assert_eq!(
        a.modulus, b.modulus,
        "cross-field arithmetic: GF({}) vs GF({})",
        a.modulus, b.modulus
    );
}

impl Add for FieldElement {
    type Output = FieldElement;
    fn add(self, rhs: FieldElement) -> FieldElement {
        check_same_field(&self, &rhs);
        FieldElement {
            value: ((self.value as u128 + rhs.value as u128) % self.modulus as u128) as u64,
            modulus: self.modulus,
        }
    }
}

impl Sub for FieldElement {
    type Output = FieldElement;
    fn sub(self, rhs: FieldElement) -> FieldElement {
        check_same_field(&self, &rhs);
        self + (-rhs)
    }
}

impl Mul for FieldElement {
    type Output = FieldElement;
    fn mul(self, rhs: FieldElement) -> FieldElement {
        check_same_field(&self, &rhs);
        FieldElement {
            value: ((self.value as u128 * rhs.value as u128) % self.modulus as u128) as u64,
            modulus: self.modulus,
        }
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        FieldElement {
            value: if self.value == 0 {
                0
            } else {
                self.modulus - self.value
            },
            modulus: self.modulus,
        }
    }
}

/// Dense matrix over one prime field, row-major.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldMatrix {
    rows: usize,
    cols: usize,
    field: PrimeField,
    data: Vec<FieldElement>,
}

impl FieldMatrix {
    pub fn zeros(field: PrimeField, rows: usize, cols: usize) -> Self {
        FieldMatrix {
            rows,
            cols,
            field,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: PrimeField, size: usize) -> Self {
        let mut m = Self::zeros(field, size, size);
        for i in 0..size {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_fn(
        field: PrimeField,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> FieldElement,
    ) -> Result<Self, FieldError> {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                let e = f(r, c);
                if e.modulus() != field.modulus() {
                    return Err(FieldError::FieldMismatch);
                }
                data.push(e);
            }
        }
        Ok(FieldMatrix {
            rows,
            cols,
            field,
            data,
        })
    }

    /// Build from row-major integer values, reduced mod q.
    pub fn from_values(
        field: PrimeField,
        rows: usize,
        cols: usize,
        values: &[u64],
    ) -> Result<Self, FieldError> {
        if values.len() != rows * cols {
            return Err(FieldError::DimensionMismatch(format!(
                "{rows}x{cols} matrix needs {} values, got {}",
                rows * cols,
                values.len()
            )));
        }
        Ok(FieldMatrix {
            rows,
            cols,
            field,
            data: values.iter().map(|&v| field.element(v)).collect(),
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn get(&self, r: usize, c: usize) -> FieldElement {
        assert!(r < self.rows && c < self.cols);
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: FieldElement) {
        assert!(r < self.rows && c < self.cols);
        assert_eq!(v.modulus(), self.field.modulus(), "cross-field assignment");
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> Vec<FieldElement> {
        (0..self.cols).map(|c| self.get(r, c)).collect()
    }

    pub fn column(&self, c: usize) -> Vec<FieldElement> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    /// Row-major cell values, for serialization.
    pub fn values(&self) -> Vec<u64> {
        self.data.iter().map(|e| e.value()).collect()
    }

    pub fn transpose(&self) -> FieldMatrix {
        FieldMatrix::from_fn(self.field, self.cols, self.rows, |r, c| self.get(c, r))
            .expect("same field")
    }

    /// Columns `keep` of `self`, in the order given.
    pub fn select_columns(&self, keep: &[usize]) -> FieldMatrix {
        FieldMatrix::from_fn(self.field, self.rows, keep.len(), |r, c| {
            self.get(r, keep[c])
        })
        .expect("same field")
    }

    pub fn mul(&self, rhs: &FieldMatrix) -> Result<FieldMatrix, FieldError> {
        if self.field.modulus() != rhs.field.modulus() {
            return Err(FieldError::FieldMismatch);
        }
        if self.cols != rhs.rows {
            return Err(FieldError::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let q = self.field.modulus() as u128;
        let mut out = FieldMatrix::zeros(self.field, self.rows, rhs.cols);
        for r in 0..self.rows {
            for c in 0..rhs.cols {
                let mut acc: u128 = 0;
                for k in 0..self.cols {
                    acc = (acc + self.get(r, k).value() as u128 * rhs.get(k, c).value() as u128)
                        % q;
                }
                out.set(r, c, self.field.element(acc as u64));
            }
        }
        Ok(out)
    }

    pub fn add(&self, rhs: &FieldMatrix) -> Result<FieldMatrix, FieldError> {
        if self.field.modulus() != rhs.field.modulus() {
            return Err(FieldError::FieldMismatch);
        }
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(FieldError::DimensionMismatch(format!(
                "{}x{} plus {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        FieldMatrix::from_fn(self.field, self.rows, self.cols, |r, c| {
            self.get(r, c) + rhs.get(r, c)
        })
    }

    /// Rank by Gaussian elimination on a working copy.
    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        let mut rank = 0;
        for col in 0..m.cols {
            if rank == m.rows {
                break;
            }
            let Some(pivot) = (rank..m.rows).find(|&r| !m.get(r, col).is_zero()) else {
                continue;
            };
            m.swap_rows(rank, pivot);
            let inv = m.get(rank, col).inv().expect("pivot is nonzero");
            m.scale_row(rank, inv);
            for r in 0..m.rows {
                if r != rank && !m.get(r, col).is_zero() {
                    let factor = m.get(r, col);
                    m.subtract_scaled_row(r, rank, factor);
                }
            }
            rank += 1;
        }
        rank
    }

    /// Solve `self * X = rhs` for square nonsingular `self`.
    pub fn solve(&self, rhs: &FieldMatrix) -> Result<FieldMatrix, FieldError> {
        if self.rows != self.cols {
            return Err(FieldError::DimensionMismatch(format!(
                "solve needs a square matrix, got {}x{}",
                self.rows, self.cols
            )));
        }
        if rhs.rows != self.rows {
            return Err(FieldError::DimensionMismatch(format!(
                "rhs has {} rows, expected {}",
                rhs.rows, self.rows
            )));
        }
        if self.field.modulus() != rhs.field.modulus() {
            return Err(FieldError::FieldMismatch);
        }
        // Gauss-Jordan on [self | rhs].
        let mut a = self.clone();
        let mut b = rhs.clone();
        for col in 0..a.cols {
            let Some(pivot) = (col..a.rows).find(|&r| !a.get(r, col).is_zero()) else {
                return Err(FieldError::SingularMatrix);
            };
            a.swap_rows(col, pivot);
            b.swap_rows(col, pivot);
            let inv = a.get(col, col).inv().expect("pivot is nonzero");
            a.scale_row(col, inv);
            b.scale_row(col, inv);
            for r in 0..a.rows {
                if r != col && !a.get(r, col).is_zero() {
                    let factor = a.get(r, col);
                    a.subtract_scaled_row(r, col, factor);
                    b.subtract_scaled_row(r, col, factor);
                }
            }
        }
        Ok(b)
    }

    pub fn invert(&self) -> Result<FieldMatrix, FieldError> {
        self.solve(&FieldMatrix::identity(self.field, self.rows))
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    fn scale_row(&mut self, r: usize, factor: FieldElement) {
        for c in 0..self.cols {
            let v = self.get(r, c) * factor;
            self.set(r, c, v);
        }
    }

    fn subtract_scaled_row(&mut self, target: usize, source: usize, factor: FieldElement) {
        for c in 0..self.cols {
            let v = self.get(target, c) - factor * self.get(source, c);
            self.set(target, c, v);
        }
    }
}

impl fmt::Debug for FieldMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "FieldMatrix {}x{} over GF({})", self.rows, self.cols, self.field.q)?;
        for r in 0..self.rows {
            for c in 0..self.cols {
                write!(f, "{:>4}", self.get(r, c).value())?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}
