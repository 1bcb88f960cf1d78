//! Tetrad-level geometry: metric, spin connection, curvature and the
//! residuals of the first-order frame field equations.
//!
//! Frame indices are raised and lowered with `η` only. The mixed connection
//! is `ω_j^ν_ρ := ω_j^{νσ} η_{σρ}`, and as a matrix `Ω_j` it acts on frame
//! vectors from the left.

use nalgebra::{Matrix4, SymmetricEigen};

use crate::error::{Error, Result};
use crate::tensor::{eps, DIM, ETA_DIAG, NPAIRS, PAIRS, PAIR_OF, PERMUTATIONS};

/// Tetrads with `|det e|` at or below this are rejected.
pub const DEGENERACY_THRESHOLD: f64 = 1e-12;

/// Partial derivatives of a `4 × 4` field: `d[j]` is `∂/∂x^j`.
pub type MatrixGradient = [Matrix4<f64>; DIM];

/// A frame `e^μ_i`, stored with row = frame index `μ`, column = coordinate
/// index `i`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tetrad(Matrix4<f64>);

impl Tetrad {
    pub fn new(e: Matrix4<f64>) -> Result<Self> {
        let det = e.determinant();
        if !(det.abs() > DEGENERACY_THRESHOLD) {
            return Err(Error::DegenerateTetrad { det: det.abs() });
        }
        Ok(Tetrad(e))
    }

    pub fn identity() -> Self {
        Tetrad(Matrix4::identity())
    }

    pub fn from_diagonal(d: [f64; 4]) -> Result<Self> {
        Tetrad::new(Matrix4::from_diagonal(&d.into()))
    }

    #[inline]
    pub fn matrix(&self) -> &Matrix4<f64> {
        &self.0
    }

    #[inline]
    pub fn get(&self, mu: usize, i: usize) -> f64 {
        self.0[(mu, i)]
    }

    pub fn determinant(&self) -> f64 {
        self.0.determinant()
    }
}

/// Antisymmetric connection coefficients `ω_i^{μν}`, stored for `μ < ν`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct SpinConnection {
    components: [[f64; NPAIRS]; DIM],
}

impl SpinConnection {
    pub fn zero() -> Self {
        Self::default()
    }

    /// `components[i][pair]` holds `ω_i^{ab}` for `PAIRS[pair] = (a, b)`.
    pub fn from_components(components: [[f64; NPAIRS]; DIM]) -> Self {
        SpinConnection { components }
    }

    pub fn components(&self) -> &[[f64; NPAIRS]; DIM] {
        &self.components
    }

    pub fn components_mut(&mut self) -> &mut [[f64; NPAIRS]; DIM] {
        &mut self.components
    }

    /// Full-range signed accessor `ω_i^{μν}`.
    #[inline]
    pub fn get(&self, i: usize, mu: usize, nu: usize) -> f64 {
        match PAIR_OF[mu][nu] {
            Some((code, sign)) => sign * self.components[i][code],
            None => 0.0,
        }
    }

    /// `ω_i^μ_ρ = ω_i^{μσ} η_{σρ}`.
    #[inline]
    pub fn mixed(&self, i: usize, mu: usize, rho: usize) -> f64 {
        self.get(i, mu, rho) * ETA_DIAG[rho]
    }

    /// The mixed connection `Ω_i` as a matrix, `(Ω_i)[(μ, ρ)] = ω_i^μ_ρ`.
    pub fn generator(&self, i: usize) -> Matrix4<f64> {
        Matrix4::from_fn(|mu, rho| self.mixed(i, mu, rho))
    }

    /// Antisymmetric part of `W[(μ, ν)]` in `μν`, stored as `ω_i^{μν}`.
    fn set_from_upper(&mut self, i: usize, w: &Matrix4<f64>) {
        for (code, &(a, b)) in PAIRS.iter().enumerate() {
            self.components[i][code] = 0.5 * (w[(a, b)] - w[(b, a)]);
        }
    }

    pub fn max_abs(&self) -> f64 {
        self.components.iter().flatten().fold(0.0, |m, v| m.max(v.abs()))
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.components
            .iter()
            .flatten()
            .zip(other.components.iter().flatten())
            .fold(0.0, |m, (a, b)| m.max((a - b).abs()))
    }
}

pub type ConnectionGradient = [SpinConnection; DIM];

macro_rules! bipair_type {
    ($(#[$meta:meta])* $name:ident) => {
        $(#[$meta])*
        #[derive(Debug, Clone, Copy, PartialEq, Default)]
        pub struct $name {
            components: [[f64; NPAIRS]; NPAIRS],
        }

        impl $name {
            pub fn zero() -> Self {
                Self::default()
            }

            /// `components[first][second]`, both pair codes with increasing
            /// indices.
            pub fn from_components(components: [[f64; NPAIRS]; NPAIRS]) -> Self {
                Self { components }
            }

            pub fn components(&self) -> &[[f64; NPAIRS]; NPAIRS] {
                &self.components
            }

            pub fn components_mut(&mut self) -> &mut [[f64; NPAIRS]; NPAIRS] {
                &mut self.components
            }

            /// Full-range signed accessor; zero whenever either pair is
            /// degenerate.
            #[inline]
            pub fn get(&self, a: usize, b: usize, c: usize, d: usize) -> f64 {
                match (PAIR_OF[a][b], PAIR_OF[c][d]) {
                    (Some((p, s)), Some((q, t))) => s * t * self.components[p][q],
                    _ => 0.0,
                }
            }

            pub fn max_abs(&self) -> f64 {
                self.components.iter().flatten().fold(0.0, |m, v| m.max(v.abs()))
            }

            pub fn max_abs_diff(&self, other: &Self) -> f64 {
                self.components
                    .iter()
                    .flatten()
                    .zip(other.components.iter().flatten())
                    .fold(0.0, |m, (a, b)| m.max((a - b).abs()))
            }

            pub fn scaled(&self, factor: f64) -> Self {
                let mut out = *self;
                out.components.iter_mut().flatten().for_each(|v| *v *= factor);
                out
            }
        }
    };
}

bipair_type!(
    /// Curvature `R_{ij}^{μν}`, antisymmetric in `ij` and in `μν`, stored
    /// for `i < j`, `μ < ν`.
    Curvature
);
bipair_type!(
    /// Phase-space momenta `Π^{ij}_{μν}`, antisymmetric in `ij` and in `μν`,
    /// stored for `i < j`, `μ < ν`.
    Momenta
);

/// A residual array together with its max-abs norm.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Residual<const R: usize, const C: usize> {
    pub values: [[f64; C]; R],
}

impl<const R: usize, const C: usize> Residual<R, C> {
    pub fn zero() -> Self {
        Residual { values: [[0.0; C]; R] }
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().flatten().fold(0.0, |m, v| m.max(v.abs()))
    }

    /// Position and value of the largest-magnitude entry.
    pub fn argmax(&self) -> (usize, usize, f64) {
        let mut best = (0, 0, 0.0f64);
        for (r, row) in self.values.iter().enumerate() {
            for (c, &v) in row.iter().enumerate() {
                if v.abs() > best.2.abs() {
                    best = (r, c, v);
                }
            }
        }
        best
    }
}

/// `A[i][λσ]`, `λσ` a pair code.
pub type AdmissibilityResidual = Residual<DIM, NPAIRS>;
/// `B[p][ν]`.
pub type FrameFieldResidual = Residual<DIM, DIM>;
/// `G[q][ν]`.
pub type EinsteinResidual = Residual<DIM, DIM>;

/// Section data at one point: `(x, e, ∂e, ω, ∂ω)`.
#[derive(Debug, Clone, PartialEq)]
pub struct FieldJet {
    pub x: [f64; DIM],
    pub e: Tetrad,
    pub de: MatrixGradient,
    pub omega: SpinConnection,
    pub domega: ConnectionGradient,
}

impl FieldJet {
    /// Identity frame, zero connection, all derivatives zero.
    pub fn flat(x: [f64; DIM]) -> Self {
        FieldJet {
            x,
            e: Tetrad::identity(),
            de: [Matrix4::zeros(); DIM],
            omega: SpinConnection::zero(),
            domega: [SpinConnection::zero(); DIM],
        }
    }
}

fn eta_mat() -> Matrix4<f64> {
    crate::tensor::eta_matrix()
}

/// `g_ij = η_{μν} e^μ_i e^ν_j`.
pub fn metric_from_tetrad(e: &Tetrad) -> Matrix4<f64> {
    let m = e.matrix();
    let mut g = Matrix4::zeros();
    for i in 0..DIM {
        for j in i..DIM {
            let mut s = 0.0;
            for mu in 0..DIM {
                s += ETA_DIAG[mu] * m[(mu, i)] * m[(mu, j)];
            }
            g[(i, j)] = s;
            g[(j, i)] = s;
        }
    }
    g
}

/// Counts of negative and positive eigenvalues of a symmetric matrix.
pub fn signature(g: &Matrix4<f64>) -> (usize, usize) {
    let eig = SymmetricEigen::new(*g);
    let neg = eig.eigenvalues.iter().filter(|&&v| v < 0.0).count();
    let pos = eig.eigenvalues.iter().filter(|&&v| v > 0.0).count();
    (neg, pos)
}

/// `E[(i, μ)] = e^i_μ`, the inverse frame.
pub fn inverse_tetrad(e: &Tetrad) -> Result<Matrix4<f64>> {
    let det = e.determinant();
    if !(det.abs() > DEGENERACY_THRESHOLD) {
        return Err(Error::DegenerateTetrad { det: det.abs() });
    }
    e.matrix().try_inverse().ok_or(Error::DegenerateTetrad { det: det.abs() })
}

/// `∂_k g_ij` from `e` and `∂e`.
fn metric_gradient(e: &Matrix4<f64>, de: &MatrixGradient) -> MatrixGradient {
    let eta = eta_mat();
    std::array::from_fn(|k| {
        let t = de[k].transpose() * eta * e;
        t + t.transpose()
    })
}

/// Christoffel symbols as matrices, `gamma[i][(k, j)] = Γ^k_{ij}`.
fn christoffel(ginv: &Matrix4<f64>, dg: &MatrixGradient) -> MatrixGradient {
    std::array::from_fn(|i| {
        // S[(m, j)] = ∂_i g_mj + ∂_j g_mi - ∂_m g_ij
        let s = Matrix4::from_fn(|m, j| dg[i][(m, j)] + dg[j][(m, i)] - dg[m][(i, j)]);
        0.5 * ginv * s
    })
}

/// Derivative of the Christoffel matrices along `x^l`, given `∂_l g^{-1}`
/// and the second metric derivatives `ddg[l][k] = ∂_l ∂_k g`.
fn christoffel_derivative(
    l: usize,
    ginv: &Matrix4<f64>,
    dginv_l: &Matrix4<f64>,
    dg: &MatrixGradient,
    ddg: &[MatrixGradient; DIM],
) -> MatrixGradient {
    std::array::from_fn(|i| {
        let s = Matrix4::from_fn(|m, j| dg[i][(m, j)] + dg[j][(m, i)] - dg[m][(i, j)]);
        let ds = Matrix4::from_fn(|m, j| ddg[l][i][(m, j)] + ddg[l][j][(m, i)] - ddg[l][m][(i, j)]);
        0.5 * (dginv_l * s + ginv * ds)
    })
}

/// Levi-Civita spin connection of the frame.
///
/// Built from the Christoffel symbols of `g = eᵀηe`:
/// `ω_i^μ_ρ = e^μ_j ∂_i e^j_ρ + e^μ_j Γ^j_{ik} e^k_ρ`, then raised with `η`
/// and antisymmetrized in `μν`. The result satisfies
/// `∂_j e^ν_p - ∂_p e^ν_j = ω_p^ν_ρ e^ρ_j - ω_j^ν_ρ e^ρ_p`.
pub fn spin_connection(e: &Tetrad, de: &MatrixGradient) -> Result<SpinConnection> {
    let inv = inverse_tetrad(e)?;
    let em = e.matrix();
    let eta = eta_mat();
    let ginv = inv * eta * inv.transpose();
    let dg = metric_gradient(em, de);
    let gamma = christoffel(&ginv, &dg);

    let mut omega = SpinConnection::zero();
    for i in 0..DIM {
        let dinv = -inv * de[i] * inv;
        let mixed = em * dinv + em * gamma[i] * inv;
        omega.set_from_upper(i, &(mixed * eta));
    }
    Ok(omega)
}

/// Exact first derivatives of [`spin_connection`] along each coordinate,
/// given the frame, its gradient and its second derivatives
/// (`dde[l][k] = ∂_l ∂_k e`, symmetric in `l, k`).
pub fn spin_connection_gradient(
    e: &Tetrad,
    de: &MatrixGradient,
    dde: &[MatrixGradient; DIM],
) -> Result<ConnectionGradient> {
    let inv = inverse_tetrad(e)?;
    let em = e.matrix();
    let eta = eta_mat();
    let ginv = inv * eta * inv.transpose();
    let dg = metric_gradient(em, de);
    let ddg: [MatrixGradient; DIM] = std::array::from_fn(|l| {
        std::array::from_fn(|k| {
            let t = dde[l][k].transpose() * eta * em + de[k].transpose() * eta * de[l];
            t + t.transpose()
        })
    });
    let gamma = christoffel(&ginv, &dg);

    let mut out = [SpinConnection::zero(); DIM];
    for (l, slot) in out.iter_mut().enumerate() {
        let dinv_l = -inv * de[l] * inv;
        let dginv_l = -ginv * dg[l] * ginv;
        let dgamma = christoffel_derivative(l, &ginv, &dginv_l, &dg, &ddg);
        for i in 0..DIM {
            // Ω_i = (e Γ_i - ∂_i e) e⁻¹
            let core = em * gamma[i] - de[i];
            let dcore = de[l] * gamma[i] + em * dgamma[i] - dde[l][i];
            let d_mixed = dcore * inv + core * dinv_l;
            slot.set_from_upper(i, &(d_mixed * eta));
        }
    }
    Ok(out)
}

/// `R_{ji}^{λσ} = ∂_j ω_i^{λσ} - ∂_i ω_j^{λσ} + ω_j^λ_η ω_i^{ησ} - ω_i^λ_η ω_j^{ησ}`.
pub fn curvature_from_connection(omega: &SpinConnection, domega: &ConnectionGradient) -> Curvature {
    let gens: [Matrix4<f64>; DIM] = std::array::from_fn(|i| omega.generator(i));
    let mut r = Curvature::zero();
    for (ij, &(a, b)) in PAIRS.iter().enumerate() {
        // commutator in mixed form, then raise the second index
        let comm = gens[a] * gens[b] - gens[b] * gens[a];
        for (ls, &(l, s)) in PAIRS.iter().enumerate() {
            r.components_mut()[ij][ls] = domega[a].get(b, l, s) - domega[b].get(a, l, s) + comm[(l, s)] * ETA_DIAG[s];
        }
    }
    r
}

/// Residual of the connection field equation,
/// `A[i][λσ] = ε^{qpij} ε_{μνλσ} e^μ_q (∂_j e^ν_p + ω_j^ν_ρ e^ρ_p)`.
///
/// Vanishes exactly when the jet is kinematically admissible.
pub fn admissibility_residual(jet: &FieldJet) -> AdmissibilityResidual {
    let e = jet.e.matrix();
    // x[j][(ν, p)] = ∂_j e^ν_p + ω_j^ν_ρ e^ρ_p
    let x: [Matrix4<f64>; DIM] = std::array::from_fn(|j| jet.de[j] + jet.omega.generator(j) * e);
    let mut out = AdmissibilityResidual::zero();
    for &([q, p, i, j], s1) in PERMUTATIONS.iter() {
        for (ls, &(l, s)) in PAIRS.iter().enumerate() {
            let mut acc = 0.0;
            for mu in 0..DIM {
                for nu in 0..DIM {
                    let s2 = eps(mu, nu, l, s);
                    if s2 != 0.0 {
                        acc += s2 * e[(mu, q)] * x[j][(nu, p)];
                    }
                }
            }
            out.values[i][ls] += s1 as f64 * acc;
        }
    }
    out
}

/// `Y[i][j][(λ, σ)] = ∂_j ω_i^{λσ} + ω_j^λ_η ω_i^{ησ}`.
fn field_strength_terms(jet: &FieldJet) -> [[Matrix4<f64>; DIM]; DIM] {
    let gens: [Matrix4<f64>; DIM] = std::array::from_fn(|i| jet.omega.generator(i));
    let eta = eta_mat();
    std::array::from_fn(|i| {
        std::array::from_fn(|j| {
            let quad = gens[j] * gens[i] * eta;
            Matrix4::from_fn(|l, s| jet.domega[j].get(i, l, s) + quad[(l, s)])
        })
    })
}

/// Residual of the frame field equation,
/// `B[p][ν] = ½ ε^{qpij} ε_{μνλσ} e^μ_q (∂_j ω_i^{λσ} + ω_j^λ_η ω_i^{ησ})`.
pub fn frame_field_residual(jet: &FieldJet) -> FrameFieldResidual {
    let e = jet.e.matrix();
    let y = field_strength_terms(jet);
    let mut out = FrameFieldResidual::zero();
    for &([q, p, i, j], s1) in PERMUTATIONS.iter() {
        for &([mu, nu, l, s], s2) in PERMUTATIONS.iter() {
            out.values[p][nu] += 0.5 * (s1 * s2) as f64 * e[(mu, q)] * y[i][j][(l, s)];
        }
    }
    out
}

/// Einstein form `G[q][ν] = ¼ ε^{qpij} ε_{μνλσ} e^μ_p R_{ji}^{λσ}`.
pub fn einstein_residual(e: &Tetrad, r: &Curvature) -> EinsteinResidual {
    let e = e.matrix();
    let mut out = EinsteinResidual::zero();
    for &([q, p, i, j], s1) in PERMUTATIONS.iter() {
        for &([mu, nu, l, s], s2) in PERMUTATIONS.iter() {
            out.values[q][nu] += 0.25 * (s1 * s2) as f64 * e[(mu, p)] * r.get(j, i, l, s);
        }
    }
    out
}
