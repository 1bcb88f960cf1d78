//! Seeded generators for randomized checks.
//!
//! Every trial draws from its own ChaCha stream selected by the trial
//! number, so results do not depend on the order trials run in.

use nalgebra::Matrix4;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::frame::{Curvature, Momenta, SpinConnection, Tetrad};
use crate::immersion::LorentzTransform;
use crate::tensor::{DIM, NPAIRS};

/// Frame entries are drawn from `[-FRAME_RANGE, FRAME_RANGE]`.
pub const FRAME_RANGE: f64 = 2.0;
/// Frames with `|det e|` at or below this are redrawn.
pub const MIN_FRAME_DET: f64 = 0.1;
/// Generator entries for random Lorentz transformations.
pub const GENERATOR_RANGE: f64 = 0.5;

pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

/// I.i.d. uniform entries in `[-2, 2]`, rejection-sampled to `|det e| > 0.1`.
pub fn random_tetrad<R: Rng + ?Sized>(rng: &mut R) -> Tetrad {
    loop {
        let m = Matrix4::from_fn(|_, _| rng.random_range(-FRAME_RANGE..=FRAME_RANGE));
        if m.determinant().abs() > MIN_FRAME_DET {
            return Tetrad::new(m).expect("determinant already checked");
        }
    }
}

/// Independent components uniform in `[-scale, scale]`.
pub fn random_spin_connection<R: Rng + ?Sized>(rng: &mut R, scale: f64) -> SpinConnection {
    let mut c = [[0.0; NPAIRS]; DIM];
    c.iter_mut().flatten().for_each(|v| *v = rng.random_range(-scale..=scale));
    SpinConnection::from_components(c)
}

fn random_bipair<R: Rng + ?Sized>(rng: &mut R, scale: f64) -> [[f64; NPAIRS]; NPAIRS] {
    let mut c = [[0.0; NPAIRS]; NPAIRS];
    c.iter_mut().flatten().for_each(|v| *v = rng.random_range(-scale..=scale));
    c
}

pub fn random_momenta<R: Rng + ?Sized>(rng: &mut R, scale: f64) -> Momenta {
    Momenta::from_components(random_bipair(rng, scale))
}

pub fn random_curvature<R: Rng + ?Sized>(rng: &mut R, scale: f64) -> Curvature {
    Curvature::from_components(random_bipair(rng, scale))
}

/// `exp(A η)` with `A` antisymmetric, entries uniform in `[-0.5, 0.5]`.
pub fn random_lorentz<R: Rng + ?Sized>(rng: &mut R) -> LorentzTransform {
    let mut a = Matrix4::zeros();
    for mu in 0..DIM {
        for nu in mu + 1..DIM {
            let v = rng.random_range(-GENERATOR_RANGE..=GENERATOR_RANGE);
            a[(mu, nu)] = v;
            a[(nu, mu)] = -v;
        }
    }
    LorentzTransform::from_generator(&a).expect("exponential of a Lorentz generator")
}
