use super::matrix::{ComplexMatrix4, StateVector4, C64};
use crate::error::{Error, Result};

/// Largest |m_ij − conj(m_ji)| accepted by [`hermitian_eig`].
pub const HERMITIAN_TOL: f64 = 1e-10;

const OFF_DIAGONAL_TOL: f64 = 1e-14;
const ORTHOGONALITY_TOL: f64 = 1e-15;
const MAX_SWEEPS: usize = 64;

/// Eigendecomposition `M = V Λ V†` with eigenvalues in ascending order.
#[derive(Clone, Debug)]
pub struct HermitianEigenResult {
    pub eigenvalues: [f64; 4],
    pub eigenvectors: [StateVector4; 4],
}

impl HermitianEigenResult {
    /// Eigenvectors as the columns of a unitary matrix.
    pub fn vectors(&self) -> ComplexMatrix4 {
        ComplexMatrix4::from_columns(&self.eigenvectors)
    }

    /// `V f(Λ) V†`.
    pub fn map_spectrum(&self, f: impl Fn(f64) -> f64) -> ComplexMatrix4 {
        let mut out = ComplexMatrix4::zeros();
        for (value, v) in self.eigenvalues.iter().zip(&self.eigenvectors) {
            out = out + v.projector().scale(f(*value));
        }
        out
    }

    pub fn reconstruct(&self) -> ComplexMatrix4 {
        self.map_spectrum(|x| x)
    }
}

/// Unitary plane rotation in coordinates (p, q) that zeroes the (p, q) entry of
/// the Hermitian 2×2 block `[[app, apq], [conj(apq), aqq]]`.
///
/// The rotation is `J_pp = c`, `J_pq = s`, `J_qp = -s·e`, `J_qq = c·e` where
/// `e = conj(apq)/|apq|` strips the phase of the off-diagonal entry.
#[derive(Clone, Copy)]
struct Rotation {
    c: f64,
    s: f64,
    e: C64,
}

impl Rotation {
    fn new(app: f64, aqq: f64, apq: C64) -> Self {
        let g = apq.norm();
        let e = apq.conj() / g;
        let tau = (aqq - app) / (2.0 * g);
        let t = if tau == 0.0 {
            1.0
        } else {
            tau.signum() / (tau.abs() + (1.0 + tau * tau).sqrt())
        };
        let c = 1.0 / (1.0 + t * t).sqrt();
        Rotation { c, s: t * c, e }
    }

    /// Columns p, q of `m` ← columns of `m·J`.
    fn apply_right(&self, m: &mut ComplexMatrix4, p: usize, q: usize) {
        for k in 0..4 {
            let mp = m.0[k][p];
            let mq = m.0[k][q];
            m.0[k][p] = mp * self.c - mq * self.e * self.s;
            m.0[k][q] = mp * self.s + mq * self.e * self.c;
        }
    }

    /// Rows p, q of `m` ← rows of `J†·m`.
    fn apply_left_adjoint(&self, m: &mut ComplexMatrix4, p: usize, q: usize) {
        let ec = self.e.conj();
        for k in 0..4 {
            let mp = m.0[p][k];
            let mq = m.0[q][k];
            m.0[p][k] = mp * self.c - mq * ec * self.s;
            m.0[q][k] = mp * self.s + mq * ec * self.c;
        }
    }
}

fn off_diagonal_norm(a: &ComplexMatrix4) -> f64 {
    let mut sum = 0.0;
    for i in 0..4 {
        for j in 0..4 {
            if i != j {
                sum += a.0[i][j].norm_sqr();
            }
        }
    }
    sum.sqrt()
}

/// Full eigendecomposition of a 4×4 Hermitian matrix by cyclic complex Jacobi
/// rotations.
///
/// Iterates until the off-diagonal Frobenius mass drops below `1e-14·‖m‖_F`.
/// Input must be Hermitian to within [`HERMITIAN_TOL`]; the anti-Hermitian
/// residue is discarded before iterating.
pub fn hermitian_eig(m: &ComplexMatrix4) -> Result<HermitianEigenResult> {
    let (row, col, deviation) = m.hermiticity_violation();
    if deviation > HERMITIAN_TOL || deviation.is_nan() {
        return Err(Error::NotHermitian {
            row,
            col,
            deviation,
        });
    }

    let mut a = (*m + m.adjoint()).scale(0.5);
    let mut v = ComplexMatrix4::identity();
    let threshold = OFF_DIAGONAL_TOL * a.frobenius_norm();

    for _ in 0..MAX_SWEEPS {
        if off_diagonal_norm(&a) <= threshold {
            break;
        }
        for p in 0..3 {
            for q in (p + 1)..4 {
                let apq = a.0[p][q];
                if apq.norm() == 0.0 {
                    continue;
                }
                let rot = Rotation::new(a.0[p][p].re, a.0[q][q].re, apq);
                rot.apply_right(&mut a, p, q);
                rot.apply_left_adjoint(&mut a, p, q);
                rot.apply_right(&mut v, p, q);
                a.0[p][q] = C64::new(0.0, 0.0);
                a.0[q][p] = C64::new(0.0, 0.0);
                a.0[p][p].im = 0.0;
                a.0[q][q].im = 0.0;
            }
        }
    }

    let mut order = [0usize, 1, 2, 3];
    order.sort_by(|&i, &j| a.0[i][i].re.total_cmp(&a.0[j][j].re));
    Ok(HermitianEigenResult {
        eigenvalues: order.map(|i| a.0[i][i].re),
        eigenvectors: order.map(|i| v.column(i)),
    })
}

/// Singular values of a general complex 4×4 matrix, descending.
///
/// One-sided (Hestenes) Jacobi: columns are rotated pairwise until mutually
/// orthogonal, and the singular values are the final column norms. Small
/// singular values come out with absolute error near `ε·‖x‖` instead of the
/// `√ε·‖x‖` that squaring into `x†x` would give.
pub fn singular_values(x: &ComplexMatrix4) -> [f64; 4] {
    let mut w = *x;
    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..3 {
            for q in (p + 1)..4 {
                let (mut alpha, mut beta, mut gamma) = (0.0, 0.0, C64::new(0.0, 0.0));
                for k in 0..4 {
                    alpha += w.0[k][p].norm_sqr();
                    beta += w.0[k][q].norm_sqr();
                    gamma += w.0[k][p].conj() * w.0[k][q];
                }
                let g = gamma.norm();
                if g == 0.0 || g <= ORTHOGONALITY_TOL * (alpha * beta).sqrt() {
                    continue;
                }
                rotated = true;
                Rotation::new(alpha, beta, gamma).apply_right(&mut w, p, q);
            }
        }
        if !rotated {
            break;
        }
    }
    let mut values = [0, 1, 2, 3].map(|j| w.column(j).norm());
    values.sort_by(|a, b| b.total_cmp(a));
    values
}
