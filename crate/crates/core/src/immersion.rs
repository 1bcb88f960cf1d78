//! The map from frame data into the gauge phase space,
//! `Π^{ij}_{λσ} = -½ e^μ_q e^ν_p ε^{qpij} ε_{μνλσ}`, with the connection
//! carried along unchanged.
//!
//! Under this map the quadratic Hamiltonian vanishes identically and `Θ_h`
//! pulls back to the first-order frame form
//! `Θ = ¼ ε^{qpij} ε_{μνλσ} e^μ_q e^ν_p (dω_i^{λσ} ∧ ds_j + ω_j^λ_η ω_i^{ησ} ds)`.

use nalgebra::{DMatrix, Matrix4};

use crate::error::{Error, Result};
use crate::frame::{metric_from_tetrad, FieldJet, Momenta, SpinConnection, Tetrad};
use crate::phase::{hamiltonian, theta_h_coefficients, PhaseJet, StructureConstants, ThetaCoefficients};
use crate::tensor::{eps, eta_matrix, DIM, EPSILON, ETA_DIAG, NPAIRS, PAIRS, PAIR_OF, PERMUTATIONS};

/// Tolerance on `ΛᵀηΛ = η` and `det Λ = 1`.
pub const LORENTZ_TOLERANCE: f64 = 1e-10;

/// Relative singular-value cutoff used by [`matrix_rank`].
pub const RANK_THRESHOLD: f64 = 1e-8;

/// Deviation allowed between the two sides of [`pullback_theta_check`].
pub const PULLBACK_TOLERANCE: f64 = 1e-10;

/// A proper Lorentz transformation `Λ^μ_ν`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LorentzTransform(Matrix4<f64>);

impl LorentzTransform {
    pub fn new(m: Matrix4<f64>) -> Result<Self> {
        let eta = eta_matrix();
        let metric_dev = (m.transpose() * eta * m - eta).amax();
        let det_dev = (m.determinant() - 1.0).abs();
        let deviation = metric_dev.max(det_dev);
        if !(deviation <= LORENTZ_TOLERANCE) {
            return Err(Error::InvalidLorentz { deviation });
        }
        Ok(LorentzTransform(m))
    }

    pub fn identity() -> Self {
        LorentzTransform(Matrix4::identity())
    }

    /// `exp(A η)` for an antisymmetric `A^{μν}`.
    pub fn from_generator(a: &Matrix4<f64>) -> Result<Self> {
        let antisym = 0.5 * (a - a.transpose());
        LorentzTransform::new((antisym * eta_matrix()).exp())
    }

    pub fn matrix(&self) -> &Matrix4<f64> {
        &self.0
    }

    /// `Λ_σ^ν = Λ^α_β η_{ασ} η^{βν}`, i.e. `(Λ⁻¹)^ν_σ`, as a matrix indexed
    /// `[(ν, σ)]`.
    pub fn inverse(&self) -> Matrix4<f64> {
        let eta = eta_matrix();
        eta * self.0.transpose() * eta
    }

    /// `ē^μ_i = Λ^μ_σ e^σ_i`.
    pub fn act_on_tetrad(&self, e: &Tetrad) -> Result<Tetrad> {
        Tetrad::new(self.0 * e.matrix())
    }

    /// `Π̄^{ij}_{λσ} = Π^{ij}_{μν} Λ_λ^μ Λ_σ^ν` (trivial change of chart).
    pub fn act_on_momenta(&self, momenta: &Momenta) -> Momenta {
        let inv = self.inverse();
        let mut out = Momenta::zero();
        for ij in 0..NPAIRS {
            let (i, j) = PAIRS[ij];
            for (ls, &(l, s)) in PAIRS.iter().enumerate() {
                let mut acc = 0.0;
                for mu in 0..DIM {
                    for nu in 0..DIM {
                        acc += momenta.get(i, j, mu, nu) * inv[(mu, l)] * inv[(nu, s)];
                    }
                }
                out.components_mut()[ij][ls] = acc;
            }
        }
        out
    }
}

/// `Π^{ij}_{λσ} = -½ e^μ_q e^ν_p ε^{qpij} ε_{μνλσ}`.
///
/// Accepts any frame matrix, degenerate ones included.
pub fn immerse(e: &Matrix4<f64>) -> Momenta {
    let mut pi = Momenta::zero();
    for (ij, &(i, j)) in PAIRS.iter().enumerate() {
        for (ls, &(l, s)) in PAIRS.iter().enumerate() {
            let mut acc = 0.0;
            for q in 0..DIM {
                for p in 0..DIM {
                    let s1 = eps(q, p, i, j);
                    if s1 == 0.0 {
                        continue;
                    }
                    for mu in 0..DIM {
                        for nu in 0..DIM {
                            acc += s1 * eps(mu, nu, l, s) * e[(mu, q)] * e[(nu, p)];
                        }
                    }
                }
            }
            pi.components_mut()[ij][ls] = -0.5 * acc;
        }
    }
    pi
}

/// Row of the Jacobian for `Π^{ij}_{λσ}` (pair codes).
#[inline]
pub fn jacobian_row(ij: usize, ls: usize) -> usize {
    ij * NPAIRS + ls
}

/// Column of the Jacobian for `e^α_k`.
#[inline]
pub fn jacobian_col(alpha: usize, k: usize) -> usize {
    alpha * DIM + k
}

/// `∂Π^{ij}_{λσ}/∂e^α_k = -e^μ_p ε^{kpij} ε_{αμλσ}` as a `36 × 16` matrix
/// (rows by [`jacobian_row`], columns by [`jacobian_col`]).
pub fn immersion_jacobian(e: &Matrix4<f64>) -> DMatrix<f64> {
    let mut jac = DMatrix::zeros(NPAIRS * NPAIRS, DIM * DIM);
    for (ij, &(i, j)) in PAIRS.iter().enumerate() {
        for (ls, &(l, s)) in PAIRS.iter().enumerate() {
            for alpha in 0..DIM {
                for k in 0..DIM {
                    let mut acc = 0.0;
                    for p in 0..DIM {
                        let s1 = EPSILON[k][p][i][j] as f64;
                        if s1 == 0.0 {
                            continue;
                        }
                        for mu in 0..DIM {
                            acc += s1 * eps(alpha, mu, l, s) * e[(mu, p)];
                        }
                    }
                    jac[(jacobian_row(ij, ls), jacobian_col(alpha, k))] = -acc;
                }
            }
        }
    }
    jac
}

/// Numerical rank: singular values above `RANK_THRESHOLD × σ_max`.
pub fn matrix_rank(m: &DMatrix<f64>) -> usize {
    let sv = m.clone().singular_values();
    let largest = sv.iter().cloned().fold(0.0f64, f64::max);
    if largest == 0.0 {
        return 0;
    }
    sv.iter().filter(|&&v| v > RANK_THRESHOLD * largest).count()
}

/// Rank of [`immersion_jacobian`]; 16 for every nondegenerate frame.
pub fn immersion_rank(e: &Matrix4<f64>) -> usize {
    matrix_rank(&immersion_jacobian(e))
}

/// Coefficients of the first-order frame form `Θ` at `(e, ω)`.
pub fn frame_theta_coefficients(e: &Matrix4<f64>, omega: &SpinConnection) -> ThetaCoefficients {
    let eta = eta_matrix();
    let gens: [Matrix4<f64>; DIM] = std::array::from_fn(|i| omega.generator(i));
    // quad[i][j][(λ, σ)] = ω_j^λ_η ω_i^{ησ}
    let quad: [[Matrix4<f64>; DIM]; DIM] = std::array::from_fn(|i| std::array::from_fn(|j| gens[j] * gens[i] * eta));

    let mut ds = 0.0;
    let mut dw_ds = [[[0.0; DIM]; NPAIRS]; DIM];
    for &([q, p, i, j], s1) in PERMUTATIONS.iter() {
        for &([mu, nu, l, s], s2) in PERMUTATIONS.iter() {
            let weight = 0.25 * (s1 * s2) as f64 * e[(mu, q)] * e[(nu, p)];
            ds += weight * quad[i][j][(l, s)];
            if l < s {
                // the (σ, λ) ordering contributes the same amount to this slot
                let (code, _) = PAIR_OF[l][s].expect("l < s");
                dw_ds[i][code][j] += 2.0 * weight;
            }
        }
    }
    ThetaCoefficients { ds, dw_ds }
}

/// Result of comparing `i*(Θ_h)` against `Θ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PullbackCheck {
    pub max_dev: f64,
    pub matches: bool,
    pub pulled_back: ThetaCoefficients,
    pub frame_form: ThetaCoefficients,
}

/// Evaluates `Θ_h` at `(immerse(e), ω)` and `Θ` at `(e, ω)` and compares
/// every coefficient.
pub fn pullback_theta_check(e: &Matrix4<f64>, omega: &SpinConnection) -> PullbackCheck {
    let pulled_back = theta_h_coefficients(&immerse(e), omega, StructureConstants::shared()).via_structure_constants;
    let frame_form = frame_theta_coefficients(e, omega);
    let max_dev = pulled_back.max_abs_diff(&frame_form);
    PullbackCheck { max_dev, matches: max_dev <= PULLBACK_TOLERANCE, pulled_back, frame_form }
}

/// Deviations found by [`lorentz_equivariance_check`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EquivarianceCheck {
    /// `immerse(Λe)` against the transformed `immerse(e)`.
    pub momenta_dev: f64,
    /// `|H(immerse(Λe)) - H(immerse(e))|`.
    pub hamiltonian_dev: f64,
    /// Metric of `Λe` against metric of `e`.
    pub metric_dev: f64,
}

impl EquivarianceCheck {
    pub fn max_dev(&self) -> f64 {
        self.momenta_dev.max(self.hamiltonian_dev).max(self.metric_dev)
    }
}

/// Checks that the immersion intertwines the frame and momentum actions of
/// a constant Lorentz transformation, and that `H` and `g` are unchanged.
pub fn lorentz_equivariance_check(e: &Tetrad, lambda: &LorentzTransform) -> Result<EquivarianceCheck> {
    let moved = lambda.act_on_tetrad(e)?;
    let direct = immerse(moved.matrix());
    let transported = lambda.act_on_momenta(&immerse(e.matrix()));
    Ok(EquivarianceCheck {
        momenta_dev: direct.max_abs_diff(&transported),
        hamiltonian_dev: (hamiltonian(&direct) - hamiltonian(&immerse(e.matrix()))).abs(),
        metric_dev: (metric_from_tetrad(&moved) - metric_from_tetrad(e)).amax(),
    })
}

/// Exhaustive integer check of the two identities closing the argument that
/// `H ∘ immerse = 0`:
/// `ε^{ξηαβ} ε_{αβλσ} = 2(δ^ξ_λ δ^η_σ - δ^ξ_σ δ^η_λ)` and
/// `ε_{μνλσ} η^{μλ} η^{νσ} = 0`.
pub fn symbolic_immersion_identities() -> bool {
    let d = |a: usize, b: usize| (a == b) as i32;
    let mut ok = true;
    for x in 0..DIM {
        for y in 0..DIM {
            for l in 0..DIM {
                for s in 0..DIM {
                    let mut sum = 0;
                    for a in 0..DIM {
                        for b in 0..DIM {
                            sum += EPSILON[x][y][a][b] as i32 * EPSILON[a][b][l][s] as i32;
                        }
                    }
                    ok &= sum == 2 * (d(x, l) * d(y, s) - d(x, s) * d(y, l));
                }
            }
        }
    }
    ok && eta_trace_contraction(|m, n| ETA_DIAG[m] as i32 * d(m, n)) == 0
}

/// `Σ ε_{μνλσ} g^{μλ} g^{νσ}` for an integer symmetric table `g`.
pub fn eta_trace_contraction(g: impl Fn(usize, usize) -> i32) -> i32 {
    let mut sum = 0;
    for m in 0..DIM {
        for n in 0..DIM {
            for l in 0..DIM {
                for s in 0..DIM {
                    sum += EPSILON[m][n][l][s] as i32 * g(m, l) * g(n, s);
                }
            }
        }
    }
    sum
}

/// Image of a frame jet in the phase space: `Π = immerse(e)` and
/// `∂_j Π = J(e) · ∂_j e`, with `ω` and `∂ω` passed through.
pub fn phase_jet_from_field_jet(jet: &FieldJet) -> PhaseJet {
    let e = jet.e.matrix();
    let jac = immersion_jacobian(e);
    let dmomenta = std::array::from_fn(|j| {
        let de = &jet.de[j];
        let flat = nalgebra::DVector::from_fn(DIM * DIM, |c, _| de[(c / DIM, c % DIM)]);
        let d = &jac * flat;
        let mut m = Momenta::zero();
        for ij in 0..NPAIRS {
            for ls in 0..NPAIRS {
                m.components_mut()[ij][ls] = d[jacobian_row(ij, ls)];
            }
        }
        m
    });
    PhaseJet { x: jet.x, omega: jet.omega, domega: jet.domega, momenta: immerse(e), dmomenta }
}
