//! Fixed-dimension index bookkeeping.
//!
//! Everything here lives in four dimensions with the Minkowski signature
//! `diag(-1, 1, 1, 1)`. Indices are 0-based internally; reports shift them
//! to 1-based on output.
//!
//! Antisymmetric index pairs `(a, b)` with `a < b` are stored once, under a
//! code in `0..6` assigned in lexicographic order:
//!
//! | code | pair   |
//! |------|--------|
//! | 0    | (0, 1) |
//! | 1    | (0, 2) |
//! | 2    | (0, 3) |
//! | 3    | (1, 2) |
//! | 4    | (1, 3) |
//! | 5    | (2, 3) |

use std::fmt;

use crate::error::{Error, Result};

/// Spacetime dimension.
pub const DIM: usize = 4;

/// Number of independent components of an antisymmetric pair.
pub const NPAIRS: usize = 6;

/// A range-checked index in `0..4`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Index(u8);

impl Index {
    pub fn new(value: usize) -> Result<Self> {
        if value < DIM {
            Ok(Index(value as u8))
        } else {
            Err(Error::IndexOutOfRange(value))
        }
    }

    #[inline]
    pub fn value(self) -> usize {
        self.0 as usize
    }

    pub fn all() -> impl Iterator<Item = Index> {
        (0..DIM as u8).map(Index)
    }
}

impl fmt::Display for Index {
    /// 1-based, as printed in reports.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0 + 1)
    }
}

/// An ordered pair `(a, b)` with `a < b`, stored as its code in `0..6`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PairIndex(u8);

/// `PAIRS[code] = (a, b)`.
pub const PAIRS: [(usize, usize); NPAIRS] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

const fn pair_table() -> [[Option<(usize, f64)>; DIM]; DIM] {
    let mut table = [[None; DIM]; DIM];
    let mut code = 0;
    while code < NPAIRS {
        let (a, b) = PAIRS[code];
        table[a][b] = Some((code, 1.0));
        table[b][a] = Some((code, -1.0));
        code += 1;
    }
    table
}

/// `PAIR_OF[a][b] = Some((code, sign))`, `None` on the diagonal.
pub const PAIR_OF: [[Option<(usize, f64)>; DIM]; DIM] = pair_table();

impl PairIndex {
    pub fn from_code(code: usize) -> Result<Self> {
        if code < NPAIRS {
            Ok(PairIndex(code as u8))
        } else {
            Err(Error::PairCodeOutOfRange(code))
        }
    }

    #[inline]
    pub fn code(self) -> usize {
        self.0 as usize
    }

    pub fn decode(self) -> (Index, Index) {
        let (a, b) = PAIRS[self.code()];
        (Index(a as u8), Index(b as u8))
    }

    pub fn all() -> impl Iterator<Item = PairIndex> {
        (0..NPAIRS as u8).map(PairIndex)
    }
}

impl fmt::Display for PairIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (a, b) = self.decode();
        write!(f, "({a},{b})")
    }
}

/// Encodes `(mu, nu)` as a pair code plus the sign picked up by reordering
/// it to `mu < nu`.
pub fn pair_encode(mu: Index, nu: Index) -> Result<(PairIndex, i8)> {
    match PAIR_OF[mu.value()][nu.value()] {
        Some((code, sign)) => Ok((PairIndex(code as u8), sign as i8)),
        None => Err(Error::DegeneratePair(mu.value())),
    }
}

pub fn pair_decode(code: PairIndex) -> (Index, Index) {
    code.decode()
}

const fn permutation_sign(p: [usize; 4]) -> i8 {
    let mut sign = 1;
    let mut a = 0;
    while a < 4 {
        let mut b = a + 1;
        while b < 4 {
            if p[a] == p[b] {
                return 0;
            }
            if p[a] > p[b] {
                sign = -sign;
            }
            b += 1;
        }
        a += 1;
    }
    sign
}

const fn epsilon_table() -> [[[[i8; DIM]; DIM]; DIM]; DIM] {
    let mut t = [[[[0; DIM]; DIM]; DIM]; DIM];
    let mut i = 0;
    while i < DIM {
        let mut j = 0;
        while j < DIM {
            let mut p = 0;
            while p < DIM {
                let mut q = 0;
                while q < DIM {
                    t[i][j][p][q] = permutation_sign([i, j, p, q]);
                    q += 1;
                }
                p += 1;
            }
            j += 1;
        }
        i += 1;
    }
    t
}

const fn permutation_list() -> [([usize; 4], i8); 24] {
    let mut list = [([0; 4], 0); 24];
    let mut n = 0;
    let mut i = 0;
    while i < DIM {
        let mut j = 0;
        while j < DIM {
            let mut p = 0;
            while p < DIM {
                let mut q = 0;
                while q < DIM {
                    let s = permutation_sign([i, j, p, q]);
                    if s != 0 {
                        list[n] = ([i, j, p, q], s);
                        n += 1;
                    }
                    q += 1;
                }
                p += 1;
            }
            j += 1;
        }
        i += 1;
    }
    list
}

/// The permutation symbol as a lookup table, `EPSILON[i][j][p][q]`.
pub const EPSILON: [[[[i8; DIM]; DIM]; DIM]; DIM] = epsilon_table();

/// The 24 index tuples on which the permutation symbol is nonzero, with
/// their signs. Contractions against `ε` iterate over this list instead of
/// all 256 tuples; the skipped terms are exactly zero.
pub const PERMUTATIONS: [([usize; 4], i8); 24] = permutation_list();

/// Levi-Civita permutation symbol with `ε(0,1,2,3) = +1`.
///
/// Upper- and lower-index symbols are the same numbers; no metric or
/// determinant factors are attached.
pub fn levi_civita(i: Index, j: Index, p: Index, q: Index) -> i8 {
    EPSILON[i.value()][j.value()][p.value()][q.value()]
}

#[inline]
pub fn eps(i: usize, j: usize, p: usize, q: usize) -> f64 {
    EPSILON[i][j][p][q] as f64
}

/// Diagonal entries of `η_{μν} = η^{μν}`.
pub const ETA_DIAG: [f64; DIM] = [-1.0, 1.0, 1.0, 1.0];

pub fn eta(mu: Index, nu: Index) -> i8 {
    eta_int(mu.value(), nu.value())
}

#[inline]
pub(crate) fn eta_int(mu: usize, nu: usize) -> i8 {
    if mu != nu {
        0
    } else if mu == 0 {
        -1
    } else {
        1
    }
}

#[inline]
pub fn eta_f(mu: usize, nu: usize) -> f64 {
    eta_int(mu, nu) as f64
}

#[inline]
pub fn delta(a: usize, b: usize) -> i32 {
    (a == b) as i32
}

/// `Σ_{α,β} ε^{ξηαβ} ε_{αβλσ}`, summed over the full index range.
pub fn epsilon_pair_contraction(xi: Index, eta: Index, lambda: Index, sigma: Index) -> i32 {
    let (x, e, l, s) = (xi.value(), eta.value(), lambda.value(), sigma.value());
    let mut sum = 0i32;
    for a in 0..DIM {
        for b in 0..DIM {
            sum += EPSILON[x][e][a][b] as i32 * EPSILON[a][b][l][s] as i32;
        }
    }
    sum
}

/// The `4 × 4` Minkowski metric as a matrix.
pub fn eta_matrix() -> nalgebra::Matrix4<f64> {
    nalgebra::Matrix4::from_diagonal(&nalgebra::Vector4::from(ETA_DIAG))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn idx(v: usize) -> Index {
        Index::new(v).unwrap()
    }

    #[test]
    fn levi_civita_examples() {
        assert_eq!(levi_civita(idx(0), idx(1), idx(2), idx(3)), 1);
        assert_eq!(levi_civita(idx(1), idx(0), idx(2), idx(3)), -1);
        assert_eq!(levi_civita(idx(0), idx(0), idx(2), idx(3)), 0);
        assert_eq!(levi_civita(idx(3), idx(2), idx(1), idx(0)), 1);
    }

    #[test]
    fn levi_civita_totally_antisymmetric() {
        let swaps = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
        for i in 0..4 {
            for j in 0..4 {
                for p in 0..4 {
                    for q in 0..4 {
                        let t = [i, j, p, q];
                        let base = EPSILON[i][j][p][q];
                        for &(a, b) in &swaps {
                            let mut u = t;
                            u.swap(a, b);
                            assert_eq!(EPSILON[u[0]][u[1]][u[2]][u[3]], -base, "{t:?}");
                        }
                    }
                }
            }
        }
        assert_eq!(PERMUTATIONS.len(), 24);
        let sum: i32 = PERMUTATIONS.iter().map(|&(_, s)| s as i32).sum();
        assert_eq!(sum, 0);
    }

    #[test]
    fn eta_examples() {
        assert_eq!(eta(idx(0), idx(0)), -1);
        assert_eq!(eta(idx(2), idx(2)), 1);
        assert_eq!(eta(idx(0), idx(1)), 0);
        let m = eta_matrix();
        assert_eq!(m * m, nalgebra::Matrix4::identity());
    }

    #[test]
    fn epsilon_pair_contraction_identity() {
        assert_eq!(epsilon_pair_contraction(idx(0), idx(1), idx(0), idx(1)), 2);
        assert_eq!(epsilon_pair_contraction(idx(0), idx(1), idx(1), idx(0)), -2);
        assert_eq!(epsilon_pair_contraction(idx(0), idx(1), idx(2), idx(3)), 0);
        for x in Index::all() {
            for e in Index::all() {
                for l in Index::all() {
                    for s in Index::all() {
                        let (xv, ev, lv, sv) = (x.value(), e.value(), l.value(), s.value());
                        let expected = 2 * (delta(xv, lv) * delta(ev, sv) - delta(xv, sv) * delta(ev, lv));
                        assert_eq!(epsilon_pair_contraction(x, e, l, s), expected);
                    }
                }
            }
        }
    }

    #[test]
    fn pair_encode_examples() {
        assert_eq!(pair_encode(idx(0), idx(1)).unwrap(), (PairIndex(0), 1));
        assert_eq!(pair_encode(idx(1), idx(0)).unwrap(), (PairIndex(0), -1));
        assert_eq!(pair_encode(idx(2), idx(3)).unwrap(), (PairIndex(5), 1));
        assert_eq!(pair_encode(idx(2), idx(2)), Err(Error::DegeneratePair(2)));
    }

    #[test]
    fn pair_roundtrip() {
        for code in PairIndex::all() {
            let (a, b) = pair_decode(code);
            assert_eq!(pair_encode(a, b).unwrap(), (code, 1));
            assert_eq!(pair_encode(b, a).unwrap().1, -pair_encode(a, b).unwrap().1);
        }
    }

    #[test]
    fn range_checks() {
        assert_eq!(Index::new(4), Err(Error::IndexOutOfRange(4)));
        assert!(PairIndex::from_code(6).is_err());
        assert_eq!(idx(0).to_string(), "1");
        assert_eq!(PairIndex::from_code(5).unwrap().to_string(), "(3,4)");
    }
}
