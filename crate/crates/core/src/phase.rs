//! Covariant Hamiltonian structure of the SO(1,3) gauge theory.
//!
//! All contractions over antisymmetric index pairs run over the full index
//! range, both orderings included. Where a loop runs over pair codes
//! instead, the factor of two per pair is written out explicitly.
//!
//! Derivatives with respect to `Π^{ij}_{μν}` (and `ω_i^{μν}`) are taken
//! with respect to the independent components `i < j`, `μ < ν`.

use std::sync::OnceLock;

use nalgebra::Matrix4;

use crate::frame::{ConnectionGradient, Curvature, Momenta, Residual, SpinConnection};
use crate::tensor::{eps, eta_matrix, DIM, ETA_DIAG, NPAIRS, PAIRS, PAIR_OF, PERMUTATIONS};

/// `(J_{μν})^α_β = δ^α_μ η_{νβ} - δ^α_ν η_{μβ}`, the defining-representation
/// basis of so(1,3).
pub fn lorentz_generator(mu: usize, nu: usize) -> Matrix4<f64> {
    Matrix4::from_fn(|a, b| {
        let mut v = 0.0;
        if a == mu && b == nu {
            v += ETA_DIAG[nu];
        }
        if a == nu && b == mu {
            v -= ETA_DIAG[mu];
        }
        v
    })
}

/// Structure constants `C^{μν}_{ρβ λσ}` of so(1,3), defined by
/// `[J_{ρβ}, J_{λσ}] = ½ C^{μν}_{ρβ λσ} J_{μν}` with the sum over the full
/// range of `μν`.
#[derive(Debug, Clone, PartialEq)]
pub struct StructureConstants {
    /// `table[out][left][right]`, all pair codes.
    table: [[[f64; NPAIRS]; NPAIRS]; NPAIRS],
}

impl StructureConstants {
    /// Process-wide copy, computed on first use.
    pub fn shared() -> &'static StructureConstants {
        static SHARED: OnceLock<StructureConstants> = OnceLock::new();
        SHARED.get_or_init(structure_constants)
    }

    /// Entry by pair codes.
    #[inline]
    pub fn by_pairs(&self, out: usize, left: usize, right: usize) -> f64 {
        self.table[out][left][right]
    }

    /// Full-range signed accessor `C^{μν}_{ρβ λσ}`.
    pub fn get(&self, mu: usize, nu: usize, rho: usize, beta: usize, lambda: usize, sigma: usize) -> f64 {
        match (PAIR_OF[mu][nu], PAIR_OF[rho][beta], PAIR_OF[lambda][sigma]) {
            (Some((a, s1)), Some((b, s2)), Some((c, s3))) => s1 * s2 * s3 * self.table[a][b][c],
            _ => 0.0,
        }
    }

    /// Largest violation of the Jacobi identity over all pair triples.
    pub fn jacobi_defect(&self) -> f64 {
        let mut worst = 0.0f64;
        for a in 0..NPAIRS {
            for b in 0..NPAIRS {
                for d in 0..NPAIRS {
                    for f in 0..NPAIRS {
                        let mut s = 0.0;
                        for e in 0..NPAIRS {
                            s += self.table[e][a][b] * self.table[f][e][d]
                                + self.table[e][b][d] * self.table[f][e][a]
                                + self.table[e][d][a] * self.table[f][e][b];
                        }
                        worst = worst.max(s.abs());
                    }
                }
            }
        }
        worst
    }
}

/// Builds the structure constants from commutators of [`lorentz_generator`].
pub fn structure_constants() -> StructureConstants {
    let eta = eta_matrix();
    let gens: [Matrix4<f64>; NPAIRS] = std::array::from_fn(|p| lorentz_generator(PAIRS[p].0, PAIRS[p].1));
    let mut table = [[[0.0; NPAIRS]; NPAIRS]; NPAIRS];
    for left in 0..NPAIRS {
        for right in 0..NPAIRS {
            // X = ½ x^{μν} J_{μν} has x^{μν} = X^μ_κ η^{κν}
            let comm = (gens[left] * gens[right] - gens[right] * gens[left]) * eta;
            for (out, &(mu, nu)) in PAIRS.iter().enumerate() {
                table[out][left][right] = comm[(mu, nu)];
            }
        }
    }
    StructureConstants { table }
}

/// `Σ ε_{ijpq} X^{ij}_{μν} Y^{pq}_{λσ} η^{μλ} η^{νσ}` over the full range.
fn hamiltonian_bilinear(x: &Momenta, y: &Momenta) -> f64 {
    let mut h = 0.0;
    for &([i, j, p, q], s) in PERMUTATIONS.iter() {
        let mut acc = 0.0;
        for mu in 0..DIM {
            for nu in 0..DIM {
                acc += x.get(i, j, mu, nu) * y.get(p, q, mu, nu) * ETA_DIAG[mu] * ETA_DIAG[nu];
            }
        }
        h += s as f64 * acc;
    }
    h
}

/// `H = Π^{ij}_{μν} Π^{pq}_{λσ} η^{μλ} η^{νσ} ε_{ijpq}`.
pub fn hamiltonian(momenta: &Momenta) -> f64 {
    hamiltonian_bilinear(momenta, momenta)
}

/// `∂H/∂Π^{st}_{αβ}` for each independent component, from the symmetric
/// bilinear form behind [`hamiltonian`]: `∂H/∂Π_A = 2 B(E_A, Π)`.
pub fn hamiltonian_gradient(momenta: &Momenta) -> Curvature {
    let mut grad = Curvature::zero();
    for a in 0..NPAIRS {
        for b in 0..NPAIRS {
            let mut unit = Momenta::zero();
            unit.components_mut()[a][b] = 1.0;
            grad.components_mut()[a][b] = 2.0 * hamiltonian_bilinear(&unit, momenta);
        }
    }
    grad
}

/// `R_{st}^{αβ} = 8 Π^{pq}_{λσ} η^{αλ} η^{βσ} ε_{stpq}`.
pub fn inverse_legendre(momenta: &Momenta) -> Curvature {
    let mut r = Curvature::zero();
    for (st, &(s, t)) in PAIRS.iter().enumerate() {
        for (ab, &(alpha, beta)) in PAIRS.iter().enumerate() {
            let mut acc = 0.0;
            for p in 0..DIM {
                for q in 0..DIM {
                    acc += eps(s, t, p, q) * momenta.get(p, q, alpha, beta);
                }
            }
            r.components_mut()[st][ab] = 8.0 * ETA_DIAG[alpha] * ETA_DIAG[beta] * acc;
        }
    }
    r
}

/// `Π^{ij}_{λσ} = (1/32) R_{st}^{αβ} η_{αλ} η_{βσ} ε^{stij}`.
pub fn legendre(curvature: &Curvature) -> Momenta {
    let mut pi = Momenta::zero();
    for (ij, &(i, j)) in PAIRS.iter().enumerate() {
        for (ls, &(lambda, sigma)) in PAIRS.iter().enumerate() {
            let mut acc = 0.0;
            for s in 0..DIM {
                for t in 0..DIM {
                    acc += eps(s, t, i, j) * curvature.get(s, t, lambda, sigma);
                }
            }
            pi.components_mut()[ij][ls] = ETA_DIAG[lambda] * ETA_DIAG[sigma] * acc / 32.0;
        }
    }
    pi
}

/// `L = (1/256) R_{st}^{αβ} R_{ij}^{λσ} η_{αλ} η_{βσ} ε^{stij}`.
pub fn lagrangian_closed_form(curvature: &Curvature) -> f64 {
    let mut l = 0.0;
    for &([s, t, i, j], sign) in PERMUTATIONS.iter() {
        let mut acc = 0.0;
        for a in 0..DIM {
            for b in 0..DIM {
                acc += curvature.get(s, t, a, b) * curvature.get(i, j, a, b) * ETA_DIAG[a] * ETA_DIAG[b];
            }
        }
        l += sign as f64 * acc;
    }
    l / 256.0
}

/// `L = ¼ Π^{ij}_{λσ} R_{ij}^{λσ} - H(Π)`, evaluated as written for any
/// pair `(Π, R)`.
pub fn lagrangian_via_h3(momenta: &Momenta, curvature: &Curvature) -> f64 {
    let mut pairing = 0.0;
    for i in 0..DIM {
        for j in 0..DIM {
            for l in 0..DIM {
                for s in 0..DIM {
                    pairing += momenta.get(i, j, l, s) * curvature.get(i, j, l, s);
                }
            }
        }
    }
    0.25 * pairing - hamiltonian(momenta)
}

/// Coefficients of a 4-form `ds · (ds coefficient) + Σ c_{i,μν,j} dω_i^{μν} ∧ ds_j`
/// with the `dω` slots collected onto independent `μ < ν`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThetaCoefficients {
    pub ds: f64,
    /// `dw_ds[i][μν][j]`.
    pub dw_ds: [[[f64; DIM]; NPAIRS]; DIM],
}

impl ThetaCoefficients {
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        let slots = self
            .dw_ds
            .iter()
            .flatten()
            .flatten()
            .zip(other.dw_ds.iter().flatten().flatten())
            .fold(0.0f64, |m, (a, b)| m.max((a - b).abs()));
        slots.max((self.ds - other.ds).abs())
    }
}

/// `Θ_h` evaluated two ways: through the structure constants, and through
/// the explicit product of mixed connection matrices.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThetaHCoefficients {
    pub via_structure_constants: ThetaCoefficients,
    pub via_connection_product: ThetaCoefficients,
}

/// `Q_{ij}^{μν} = Σ ω_i^{λσ} ω_j^{ρβ} C^{μν}_{ρβ λσ}`, full range over both
/// inner pairs (pair codes times 4).
fn connection_bracket(omega: &SpinConnection, c: &StructureConstants, i: usize, j: usize) -> [f64; NPAIRS] {
    let w = omega.components();
    std::array::from_fn(|out| {
        let mut acc = 0.0;
        for left in 0..NPAIRS {
            for right in 0..NPAIRS {
                acc += w[j][left] * w[i][right] * c.by_pairs(out, left, right);
            }
        }
        4.0 * acc
    })
}

/// Coefficients of
/// `Θ_h = -H ds - ½ Π^{ij}_{μν} (dω_i^{μν} ∧ ds_j + ⅛ ω_i^{λσ} ω_j^{ρβ} C^{μν}_{ρβλσ} ds)`
/// and of the same form written as
/// `-H ds - ½ Π^{ij}_{μν} (dω_i^{μν} ∧ ds_j + ω_j^μ_λ ω_i^{λν} ds)`.
pub fn theta_h_coefficients(momenta: &Momenta, omega: &SpinConnection, c: &StructureConstants) -> ThetaHCoefficients {
    let h = hamiltonian(momenta);

    let mut dw_ds = [[[0.0; DIM]; NPAIRS]; DIM];
    for i in 0..DIM {
        for j in 0..DIM {
            for mu in 0..DIM {
                for nu in 0..DIM {
                    if let Some((code, sign)) = PAIR_OF[mu][nu] {
                        dw_ds[i][code][j] += -0.5 * sign * momenta.get(i, j, mu, nu);
                    }
                }
            }
        }
    }

    let mut quad_c = 0.0;
    for i in 0..DIM {
        for j in 0..DIM {
            let q = connection_bracket(omega, c, i, j);
            for (code, &(mu, nu)) in PAIRS.iter().enumerate() {
                // both orderings of μν
                quad_c += 2.0 * momenta.get(i, j, mu, nu) * q[code];
            }
        }
    }

    let eta = eta_matrix();
    let gens: [Matrix4<f64>; DIM] = std::array::from_fn(|i| omega.generator(i));
    let mut quad_w = 0.0;
    for i in 0..DIM {
        for j in 0..DIM {
            let prod = gens[j] * gens[i] * eta;
            for mu in 0..DIM {
                for nu in 0..DIM {
                    quad_w += momenta.get(i, j, mu, nu) * prod[(mu, nu)];
                }
            }
        }
    }

    ThetaHCoefficients {
        via_structure_constants: ThetaCoefficients { ds: -h - quad_c / 16.0, dw_ds },
        via_connection_product: ThetaCoefficients { ds: -h - 0.5 * quad_w, dw_ds },
    }
}

/// Critical-section data `(x, ω, ∂ω, Π, ∂Π)` on the phase space.
#[derive(Debug, Clone, PartialEq)]
pub struct PhaseJet {
    pub x: [f64; DIM],
    pub omega: SpinConnection,
    pub domega: ConnectionGradient,
    pub momenta: Momenta,
    /// `dmomenta[j] = ∂Π/∂x^j`.
    pub dmomenta: [Momenta; DIM],
}

impl PhaseJet {
    pub fn flat(x: [f64; DIM]) -> Self {
        PhaseJet {
            x,
            omega: SpinConnection::zero(),
            domega: [SpinConnection::zero(); DIM],
            momenta: Momenta::zero(),
            dmomenta: [Momenta::zero(); DIM],
        }
    }
}

/// Left-hand sides of the Hamilton–De Donder equations for the quadratic
/// Hamiltonian.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HddResiduals {
    /// Equation obtained by varying `Π`: `[ij][αβ]`.
    pub connection: Residual<NPAIRS, NPAIRS>,
    /// Equation obtained by varying `ω`: `[i][μν]`.
    pub momenta: Residual<DIM, NPAIRS>,
}

/// Evaluates
///
/// * `-∂H/∂Π^{ij}_{αβ} - ∂_j ω_i^{αβ} + ∂_i ω_j^{αβ} - ¼ ω_i^{νμ} ω_j^{ρλ} C^{αβ}_{ρλ νμ}`
/// * `-∂H/∂ω_i^{μν} - ∂_j Π^{ji}_{μν} + ¼ Π^{ji}_{λσ} ω_j^{γα} C^{λσ}_{γα μν}`
///
/// with `∂H/∂ω = 0`, since `H` does not depend on the connection.
pub fn hdd_residuals(jet: &PhaseJet, c: &StructureConstants) -> HddResiduals {
    let dh = hamiltonian_gradient(&jet.momenta);
    let mut connection = Residual::<NPAIRS, NPAIRS>::zero();
    for (ij, &(i, j)) in PAIRS.iter().enumerate() {
        // connection_bracket(i, j) pairs ω_j with the left slot, ω_i with the right
        let q = connection_bracket(&jet.omega, c, i, j);
        for ab in 0..NPAIRS {
            connection.values[ij][ab] = -dh.components()[ij][ab] - jet.domega[j].components()[i][ab]
                + jet.domega[i].components()[j][ab]
                - 0.25 * q[ab];
        }
    }

    let w = jet.omega.components();
    let mut momenta = Residual::<DIM, NPAIRS>::zero();
    for i in 0..DIM {
        for mn in 0..NPAIRS {
            let (mu, nu) = PAIRS[mn];
            let mut div = 0.0;
            let mut quad = 0.0;
            for j in 0..DIM {
                div += jet.dmomenta[j].get(j, i, mu, nu);
                for (ls, &(l, s)) in PAIRS.iter().enumerate() {
                    let pi = jet.momenta.get(j, i, l, s);
                    for ga in 0..NPAIRS {
                        // full range over λσ and γα
                        quad += 4.0 * pi * w[j][ga] * c.by_pairs(ls, ga, mn);
                    }
                }
            }
            momenta.values[i][mn] = -div + 0.25 * quad;
        }
    }
    HddResiduals { connection, momenta }
}
