use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Sub};

use num_complex::Complex;

pub type C64 = Complex<f64>;

/// Single-qubit operator.
pub type Matrix2 = [[C64; 2]; 2];

/// Dense 4×4 complex matrix in the ordered basis |00⟩, |01⟩, |10⟩, |11⟩.
#[derive(Clone, Copy, PartialEq)]
pub struct ComplexMatrix4(pub [[C64; 4]; 4]);

impl ComplexMatrix4 {
    pub fn zeros() -> Self {
        Self([[C64::new(0.0, 0.0); 4]; 4])
    }

    pub fn identity() -> Self {
        Self::from_fn(|i, j| {
            if i == j {
                C64::new(1.0, 0.0)
            } else {
                C64::new(0.0, 0.0)
            }
        })
    }

    pub fn from_fn(mut f: impl FnMut(usize, usize) -> C64) -> Self {
        let mut m = Self::zeros();
        for i in 0..4 {
            for j in 0..4 {
                m.0[i][j] = f(i, j);
            }
        }
        m
    }

    pub fn from_real(rows: [[f64; 4]; 4]) -> Self {
        Self::from_fn(|i, j| C64::new(rows[i][j], 0.0))
    }

    pub fn diagonal(values: [f64; 4]) -> Self {
        Self::from_fn(|i, j| {
            if i == j {
                C64::new(values[i], 0.0)
            } else {
                C64::new(0.0, 0.0)
            }
        })
    }

    /// |v⟩⟨w|
    pub fn outer(v: &StateVector4, w: &StateVector4) -> Self {
        Self::from_fn(|i, j| v.0[i] * w.0[j].conj())
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(|i, j| self.0[j][i].conj())
    }

    pub fn conj(&self) -> Self {
        Self::from_fn(|i, j| self.0[i][j].conj())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(|i, j| self.0[j][i])
    }

    pub fn trace(&self) -> C64 {
        (0..4).map(|i| self.0[i][i]).sum()
    }

    pub fn scale(&self, k: f64) -> Self {
        Self::from_fn(|i, j| self.0[i][j] * k)
    }

    pub fn max_abs(&self) -> f64 {
        self.entries().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.entries().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        (*self - *other).max_abs()
    }

    /// Largest |m_ij − conj(m_ji)| together with its position.
    pub fn hermiticity_violation(&self) -> (usize, usize, f64) {
        let mut worst = (0, 0, 0.0);
        for i in 0..4 {
            for j in i..4 {
                let dev = (self.0[i][j] - self.0[j][i].conj()).norm();
                if dev > worst.2 {
                    worst = (i, j, dev);
                }
            }
        }
        worst
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermiticity_violation().2 <= tol
    }

    pub fn is_unitary(&self, tol: f64) -> bool {
        (self.adjoint() * *self).max_abs_diff(&Self::identity()) <= tol
    }

    pub fn apply(&self, v: &StateVector4) -> StateVector4 {
        let mut out = [C64::new(0.0, 0.0); 4];
        for (i, o) in out.iter_mut().enumerate() {
            *o = (0..4).map(|j| self.0[i][j] * v.0[j]).sum();
        }
        StateVector4(out)
    }

    /// Column `j` as a vector.
    pub fn column(&self, j: usize) -> StateVector4 {
        StateVector4([self.0[0][j], self.0[1][j], self.0[2][j], self.0[3][j]])
    }

    pub fn from_columns(cols: &[StateVector4; 4]) -> Self {
        Self::from_fn(|i, j| cols[j].0[i])
    }

    fn entries(&self) -> impl Iterator<Item = &C64> {
        self.0.iter().flatten()
    }
}

impl fmt::Debug for ComplexMatrix4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[")?;
        for row in &self.0 {
            write!(f, "  ")?;
            for z in row {
                write!(f, "{:>12.4e}{:+.4e}i  ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

impl Index<(usize, usize)> for ComplexMatrix4 {
    type Output = C64;
    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        &self.0[i][j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix4 {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        &mut self.0[i][j]
    }
}

impl Mul for ComplexMatrix4 {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        Self::from_fn(|i, j| (0..4).map(|k| self.0[i][k] * rhs.0[k][j]).sum())
    }
}

impl Add for ComplexMatrix4 {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self::from_fn(|i, j| self.0[i][j] + rhs.0[i][j])
    }
}

impl Sub for ComplexMatrix4 {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self::from_fn(|i, j| self.0[i][j] - rhs.0[i][j])
    }
}

/// `a ⊗ b` with `a` acting on the left (first) qubit.
pub fn kron(a: &Matrix2, b: &Matrix2) -> ComplexMatrix4 {
    ComplexMatrix4::from_fn(|r, c| a[r / 2][c / 2] * b[r % 2][c % 2])
}

/// Two-qubit state amplitudes in the basis |00⟩, |01⟩, |10⟩, |11⟩.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct StateVector4(pub [C64; 4]);

impl StateVector4 {
    pub fn from_real(amps: [f64; 4]) -> Self {
        Self(amps.map(|x| C64::new(x, 0.0)))
    }

    pub fn norm(&self) -> f64 {
        self.0.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// ⟨self|other⟩
    pub fn inner(&self, other: &Self) -> C64 {
        self.0.iter().zip(&other.0).map(|(a, b)| a.conj() * b).sum()
    }

    pub fn scale(&self, k: C64) -> Self {
        Self(self.0.map(|z| z * k))
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self([0, 1, 2, 3].map(|i| self.0[i] - other.0[i]))
    }

    pub fn projector(&self) -> ComplexMatrix4 {
        ComplexMatrix4::outer(self, self)
    }
}
