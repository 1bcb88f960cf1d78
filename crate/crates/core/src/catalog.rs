//! Analytic test fields sampled into jets.
//!
//! * `minkowski`: the identity frame.
//! * `schwarzschild(m)`: in `(t, r, θ, φ)`, the diagonal static frame
//!   `diag(√f, 1/√f, r, r sin θ)` with `f = 1 - 2m/r`.
//! * `conformal(a)`: `e^μ_i = (1 + a x¹) δ^μ_i`, with `x¹` the coordinate of
//!   internal index 1. Admissible by construction but not a vacuum
//!   solution for `a ≠ 0`.
//!
//! Field specs parse from `name[:key=value[,key=value]*]`, e.g.
//! `schwarzschild:m=1` or `conformal:a=0.1`.

use std::f64::consts::{FRAC_PI_6, PI};
use std::fmt;
use std::str::FromStr;

use nalgebra::Matrix4;
use rand::Rng;

use crate::error::{Error, Result};
use crate::frame::{spin_connection, spin_connection_gradient, FieldJet, MatrixGradient, SpinConnection, Tetrad};
use crate::tensor::DIM;

/// Default finite-difference step, in chart units.
pub const DEFAULT_FD_STEP: f64 = 1e-3;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FieldKind {
    Minkowski,
    Schwarzschild { mass: f64 },
    Conformal { amplitude: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DerivativeMode {
    Analytic,
    /// Five-point central stencils with step `step`.
    FiniteDifference {
        step: f64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AnalyticField {
    kind: FieldKind,
    mode: DerivativeMode,
}

pub fn make_field(kind: FieldKind, mode: DerivativeMode) -> Result<AnalyticField> {
    match kind {
        FieldKind::Schwarzschild { mass } if !(mass > 0.0 && mass.is_finite()) => {
            return Err(Error::InvalidField(format!("schwarzschild mass must be positive, got {mass}")))
        }
        FieldKind::Conformal { amplitude } if !amplitude.is_finite() => {
            return Err(Error::InvalidField(format!("conformal amplitude must be finite, got {amplitude}")))
        }
        _ => {}
    }
    if let DerivativeMode::FiniteDifference { step } = mode {
        if !(step > 0.0 && step.is_finite()) {
            return Err(Error::InvalidField(format!("finite-difference step must be positive, got {step}")));
        }
    }
    Ok(AnalyticField { kind, mode })
}

pub fn sample_jet(field: &AnalyticField, x: [f64; DIM]) -> Result<FieldJet> {
    field.jet(x)
}

impl AnalyticField {
    pub fn kind(&self) -> FieldKind {
        self.kind
    }

    pub fn mode(&self) -> DerivativeMode {
        self.mode
    }

    pub fn with_mode(&self, mode: DerivativeMode) -> Result<AnalyticField> {
        make_field(self.kind, mode)
    }

    /// The frame at `x`.
    pub fn tetrad(&self, x: [f64; DIM]) -> Result<Tetrad> {
        match self.kind {
            FieldKind::Minkowski => Ok(Tetrad::identity()),
            FieldKind::Schwarzschild { mass } => {
                let (f, sin_th) = self.static_patch(mass, x)?;
                let r = x[1];
                Tetrad::from_diagonal([f.sqrt(), 1.0 / f.sqrt(), r, r * sin_th])
            }
            FieldKind::Conformal { amplitude } => {
                let phi = 1.0 + amplitude * x[1];
                Tetrad::new(Matrix4::identity() * phi)
            }
        }
    }

    fn static_patch(&self, mass: f64, x: [f64; DIM]) -> Result<(f64, f64)> {
        let r = x[1];
        if !(r > 2.0 * mass) {
            return Err(Error::OutsideDomain(format!("r = {r} must exceed 2m = {}", 2.0 * mass)));
        }
        let sin_th = x[2].sin();
        if sin_th.abs() < 1e-12 {
            return Err(Error::OutsideDomain(format!("sin θ vanishes at θ = {}", x[2])));
        }
        Ok((1.0 - 2.0 * mass / r, sin_th))
    }

    /// Closed-form `∂_j e` and `∂_l ∂_k e`.
    pub fn analytic_derivatives(&self, x: [f64; DIM]) -> Result<(MatrixGradient, [MatrixGradient; DIM])> {
        let mut de = [Matrix4::zeros(); DIM];
        let mut dde = [[Matrix4::zeros(); DIM]; DIM];
        match self.kind {
            FieldKind::Minkowski => {}
            FieldKind::Schwarzschild { mass } => {
                let (f, sin_th) = self.static_patch(mass, x)?;
                let r = x[1];
                let cos_th = x[2].cos();
                let f1 = 2.0 * mass / (r * r);
                let f2 = -4.0 * mass / (r * r * r);
                let sf = f.sqrt();

                de[1][(0, 0)] = f1 / (2.0 * sf);
                de[1][(1, 1)] = -f1 / (2.0 * f * sf);
                de[1][(2, 2)] = 1.0;
                de[1][(3, 3)] = sin_th;
                de[2][(3, 3)] = r * cos_th;

                dde[1][1][(0, 0)] = f2 / (2.0 * sf) - f1 * f1 / (4.0 * f * sf);
                dde[1][1][(1, 1)] = -f2 / (2.0 * f * sf) + 0.75 * f1 * f1 / (f * f * sf);
                dde[1][2][(3, 3)] = cos_th;
                dde[2][1][(3, 3)] = cos_th;
                dde[2][2][(3, 3)] = -r * sin_th;
            }
            FieldKind::Conformal { amplitude } => {
                de[1] = Matrix4::identity() * amplitude;
            }
        }
        Ok((de, dde))
    }

    /// Samples `(x, e, ∂e, ω, ∂ω)` with `ω` the spin connection of the frame.
    pub fn jet(&self, x: [f64; DIM]) -> Result<FieldJet> {
        match self.mode {
            DerivativeMode::Analytic => {
                let e = self.tetrad(x)?;
                let (de, dde) = self.analytic_derivatives(x)?;
                let omega = spin_connection(&e, &de)?;
                let domega = spin_connection_gradient(&e, &de, &dde)?;
                Ok(FieldJet { x, e, de, omega, domega })
            }
            DerivativeMode::FiniteDifference { step } => {
                let e = self.tetrad(x)?;
                let de = self.fd_frame_gradient(x, step).map_err(|err| stencil_error(err, x, step))?;
                let omega = spin_connection(&e, &de)?;
                let domega =
                    five_point(x, step, |y| self.fd_connection(y, step)).map_err(|err| stencil_error(err, x, step))?;
                Ok(FieldJet { x, e, de, omega, domega })
            }
        }
    }

    fn fd_frame_gradient(&self, x: [f64; DIM], step: f64) -> Result<MatrixGradient> {
        five_point(x, step, |y| self.tetrad(y).map(|t| *t.matrix()))
    }

    fn fd_connection(&self, y: [f64; DIM], step: f64) -> Result<SpinConnection> {
        let e = self.tetrad(y)?;
        let de = self.fd_frame_gradient(y, step)?;
        spin_connection(&e, &de)
    }

    /// A point of the field's sampling region: for Schwarzschild
    /// `t ∈ [-5, 5]`, `r ∈ [3m, 10m]`, `θ ∈ [π/6, 5π/6]`, `φ ∈ [0, 2π)`;
    /// otherwise the cube `[-1, 1]⁴`.
    pub fn sample_point<R: Rng + ?Sized>(&self, rng: &mut R) -> [f64; DIM] {
        match self.kind {
            FieldKind::Schwarzschild { mass } => [
                rng.random_range(-5.0..=5.0),
                rng.random_range(3.0 * mass..=10.0 * mass),
                rng.random_range(FRAC_PI_6..=5.0 * FRAC_PI_6),
                rng.random_range(0.0..2.0 * PI),
            ],
            _ => std::array::from_fn(|_| rng.random_range(-1.0..=1.0)),
        }
    }
}

fn stencil_error(err: Error, x: [f64; DIM], step: f64) -> Error {
    match err {
        Error::OutsideDomain(msg) => Error::OutsideDomain(format!(
            "finite-difference stencil (h = {step}) around {x:?} leaves the domain: {msg}"
        )),
        other => other,
    }
}

/// Values that can be combined linearly by a stencil.
trait Linear: Copy {
    fn combine(terms: [(f64, Self); 4]) -> Self;
}

impl Linear for Matrix4<f64> {
    fn combine(terms: [(f64, Self); 4]) -> Self {
        terms.iter().fold(Matrix4::zeros(), |acc, (w, m)| acc + *w * m)
    }
}

impl Linear for SpinConnection {
    fn combine(terms: [(f64, Self); 4]) -> Self {
        let mut out = SpinConnection::zero();
        for (w, s) in terms.iter() {
            for (o, v) in out.components_mut().iter_mut().flatten().zip(s.components().iter().flatten()) {
                *o += w * v;
            }
        }
        out
    }
}

/// `f'(x) ≈ (-f(x+2h) + 8f(x+h) - 8f(x-h) + f(x-2h)) / 12h` along each axis.
fn five_point<T: Linear>(x: [f64; DIM], h: f64, f: impl Fn([f64; DIM]) -> Result<T>) -> Result<[T; DIM]> {
    let mut out = Vec::with_capacity(DIM);
    for j in 0..DIM {
        let at = |k: f64| {
            let mut y = x;
            y[j] += k * h;
            f(y)
        };
        let w = 1.0 / (12.0 * h);
        out.push(T::combine([(-w, at(2.0)?), (8.0 * w, at(1.0)?), (-8.0 * w, at(-1.0)?), (w, at(-2.0)?)]));
    }
    Ok([out[0], out[1], out[2], out[3]])
}

impl fmt::Display for FieldKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldKind::Minkowski => write!(f, "minkowski"),
            FieldKind::Schwarzschild { mass } => write!(f, "schwarzschild:m={mass}"),
            FieldKind::Conformal { amplitude } => write!(f, "conformal:a={amplitude}"),
        }
    }
}

impl FromStr for FieldKind {
    type Err = Error;

    fn from_str(spec: &str) -> Result<Self> {
        let (name, params) = match spec.split_once(':') {
            Some((n, p)) => (n.trim(), Some(p)),
            None => (spec.trim(), None),
        };
        let mut pairs = Vec::new();
        if let Some(params) = params {
            for item in params.split(',') {
                let (key, value) = item
                    .split_once('=')
                    .ok_or_else(|| Error::InvalidField(format!("expected key=value, got `{item}`")))?;
                let value: f64 = value
                    .trim()
                    .parse()
                    .map_err(|_| Error::InvalidField(format!("`{}` is not a number", value.trim())))?;
                pairs.push((key.trim(), value));
            }
        }
        let take = |allowed: &str, default: f64| -> Result<f64> {
            let mut v = default;
            for &(k, val) in &pairs {
                if k != allowed {
                    return Err(Error::InvalidField(format!("unknown parameter `{k}` for field `{name}`")));
                }
                v = val;
            }
            Ok(v)
        };
        match name {
            "minkowski" => {
                if let Some(&(k, _)) = pairs.first() {
                    return Err(Error::InvalidField(format!("unknown parameter `{k}` for field `minkowski`")));
                }
                Ok(FieldKind::Minkowski)
            }
            "schwarzschild" => Ok(FieldKind::Schwarzschild { mass: take("m", 1.0)? }),
            "conformal" => Ok(FieldKind::Conformal { amplitude: take("a", 0.1)? }),
            other => Err(Error::InvalidField(format!("unknown field `{other}`"))),
        }
    }
}
