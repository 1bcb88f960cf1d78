//! Brute-force reference implementations: plain nested loops over the full
//! index range on dense arrays, sharing nothing with the library beyond the
//! storage layout of its inputs.
#![allow(dead_code)]

use nalgebra::Matrix4;
use tetragauge::{Curvature, Momenta, SpinConnection};

pub type Full4 = [[[[f64; 4]; 4]; 4]; 4];

const PAIR_LIST: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

/// Sign of the permutation by counting inversions.
pub fn eps(idx: [usize; 4]) -> f64 {
    for a in 0..4 {
        for b in a + 1..4 {
            if idx[a] == idx[b] {
                return 0.0;
            }
        }
    }
    let mut inversions = 0;
    for a in 0..4 {
        for b in a + 1..4 {
            if idx[a] > idx[b] {
                inversions += 1;
            }
        }
    }
    if inversions % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

pub fn eta(a: usize, b: usize) -> f64 {
    match (a == b, a) {
        (false, _) => 0.0,
        (true, 0) => -1.0,
        _ => 1.0,
    }
}

pub fn dense_bipair(c: &[[f64; 6]; 6]) -> Full4 {
    let mut out = [[[[0.0; 4]; 4]; 4]; 4];
    for (p, &(i, j)) in PAIR_LIST.iter().enumerate() {
        for (q, &(m, n)) in PAIR_LIST.iter().enumerate() {
            let v = c[p][q];
            out[i][j][m][n] = v;
            out[j][i][m][n] = -v;
            out[i][j][n][m] = -v;
            out[j][i][n][m] = v;
        }
    }
    out
}

pub fn compress_bipair(full: &Full4) -> [[f64; 6]; 6] {
    let mut c = [[0.0; 6]; 6];
    for (p, &(i, j)) in PAIR_LIST.iter().enumerate() {
        for (q, &(m, n)) in PAIR_LIST.iter().enumerate() {
            c[p][q] = full[i][j][m][n];
        }
    }
    c
}

/// `w[i][m][n] = ω_i^{mn}`.
pub fn dense_connection(w: &SpinConnection) -> [[[f64; 4]; 4]; 4] {
    let mut out = [[[0.0; 4]; 4]; 4];
    for i in 0..4 {
        for (p, &(m, n)) in PAIR_LIST.iter().enumerate() {
            out[i][m][n] = w.components()[i][p];
            out[i][n][m] = -w.components()[i][p];
        }
    }
    out
}

/// Eight nested loops.
pub fn hamiltonian(pi: &Momenta) -> f64 {
    let p = dense_bipair(pi.components());
    let mut h = 0.0;
    for i in 0..4 {
        for j in 0..4 {
            for m in 0..4 {
                for n in 0..4 {
                    for a in 0..4 {
                        for b in 0..4 {
                            for l in 0..4 {
                                for s in 0..4 {
                                    h += p[i][j][m][n] * p[a][b][l][s] * eta(m, l) * eta(n, s) * eps([i, j, a, b]);
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    h
}

pub fn inverse_legendre(pi: &Momenta) -> Curvature {
    let p = dense_bipair(pi.components());
    let mut r = [[[[0.0; 4]; 4]; 4]; 4];
    for s in 0..4 {
        for t in 0..4 {
            for al in 0..4 {
                for be in 0..4 {
                    let mut acc = 0.0;
                    for a in 0..4 {
                        for b in 0..4 {
                            for l in 0..4 {
                                for g in 0..4 {
                                    acc += 8.0 * p[a][b][l][g] * eta(al, l) * eta(be, g) * eps([s, t, a, b]);
                                }
                            }
                        }
                    }
                    r[s][t][al][be] = acc;
                }
            }
        }
    }
    Curvature::from_components(compress_bipair(&r))
}

pub fn legendre(curv: &Curvature) -> Momenta {
    let r = dense_bipair(curv.components());
    let mut p = [[[[0.0; 4]; 4]; 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            for l in 0..4 {
                for g in 0..4 {
                    let mut acc = 0.0;
                    for s in 0..4 {
                        for t in 0..4 {
                            for al in 0..4 {
                                for be in 0..4 {
                                    acc += r[s][t][al][be] * eta(al, l) * eta(be, g) * eps([s, t, i, j]) / 32.0;
                                }
                            }
                        }
                    }
                    p[i][j][l][g] = acc;
                }
            }
        }
    }
    Momenta::from_components(compress_bipair(&p))
}

pub fn lagrangian(curv: &Curvature) -> f64 {
    let r = dense_bipair(curv.components());
    let mut l = 0.0;
    for s in 0..4 {
        for t in 0..4 {
            for al in 0..4 {
                for be in 0..4 {
                    for i in 0..4 {
                        for j in 0..4 {
                            for la in 0..4 {
                                for si in 0..4 {
                                    l += r[s][t][al][be]
                                        * r[i][j][la][si]
                                        * eta(al, la)
                                        * eta(be, si)
                                        * eps([s, t, i, j]);
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    l / 256.0
}

/// `Π^{ij}_{λσ} = -½ e^μ_q e^ν_p ε^{qpij} ε_{μνλσ}` with all eight loops.
pub fn immerse(e: &Matrix4<f64>) -> Momenta {
    let mut p = [[[[0.0; 4]; 4]; 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            for l in 0..4 {
                for s in 0..4 {
                    let mut acc = 0.0;
                    for q in 0..4 {
                        for pp in 0..4 {
                            for m in 0..4 {
                                for n in 0..4 {
                                    acc += e[(m, q)] * e[(n, pp)] * eps([q, pp, i, j]) * eps([m, n, l, s]);
                                }
                            }
                        }
                    }
                    p[i][j][l][s] = -0.5 * acc;
                }
            }
        }
    }
    Momenta::from_components(compress_bipair(&p))
}

/// `ω_j^ν_ρ` from the dense connection.
fn mixed(w: &[[[f64; 4]; 4]; 4], j: usize, nu: usize, rho: usize) -> f64 {
    (0..4).map(|s| w[j][nu][s] * eta(s, rho)).sum()
}

/// `A[i][λ][σ]`, full range.
pub fn admissibility(e: &Matrix4<f64>, de: &[Matrix4<f64>; 4], omega: &SpinConnection) -> [[[f64; 4]; 4]; 4] {
    let w = dense_connection(omega);
    let mut out = [[[0.0; 4]; 4]; 4];
    for i in 0..4 {
        for l in 0..4 {
            for s in 0..4 {
                let mut acc = 0.0;
                for q in 0..4 {
                    for p in 0..4 {
                        for j in 0..4 {
                            for m in 0..4 {
                                for n in 0..4 {
                                    let e1 = eps([q, p, i, j]) * eps([m, n, l, s]);
                                    if e1 == 0.0 {
                                        continue;
                                    }
                                    let mut inner = de[j][(n, p)];
                                    for r in 0..4 {
                                        inner += mixed(&w, j, n, r) * e[(r, p)];
                                    }
                                    acc += e1 * e[(m, q)] * inner;
                                }
                            }
                        }
                    }
                }
                out[i][l][s] = acc;
            }
        }
    }
    out
}

/// `B[p][ν]` of the frame field equation, full range.
pub fn frame_field(e: &Matrix4<f64>, omega: &SpinConnection, domega: &[SpinConnection; 4]) -> [[f64; 4]; 4] {
    let w = dense_connection(omega);
    let dw: Vec<_> = domega.iter().map(dense_connection).collect();
    let mut out = [[0.0; 4]; 4];
    for p in 0..4 {
        for n in 0..4 {
            let mut acc = 0.0;
            for q in 0..4 {
                for i in 0..4 {
                    for j in 0..4 {
                        for m in 0..4 {
                            for l in 0..4 {
                                for s in 0..4 {
                                    let e1 = eps([q, p, i, j]) * eps([m, n, l, s]);
                                    if e1 == 0.0 {
                                        continue;
                                    }
                                    let mut inner = dw[j][i][l][s];
                                    for h in 0..4 {
                                        inner += mixed(&w, j, l, h) * w[i][h][s];
                                    }
                                    acc += 0.5 * e1 * e[(m, q)] * inner;
                                }
                            }
                        }
                    }
                }
            }
            out[p][n] = acc;
        }
    }
    out
}

/// Structure constants straight from matrix commutators, `C[m][n][r][b][l][s]`.
pub fn structure_constants() -> Vec<f64> {
    let gen = |m: usize, n: usize| {
        Matrix4::from_fn(|a, b| {
            let da = |x: usize| (a == x) as i32 as f64;
            da(m) * eta(n, b) - da(n) * eta(m, b)
        })
    };
    let etam = Matrix4::from_fn(eta);
    let mut c = vec![0.0; 4096];
    for r in 0..4 {
        for b in 0..4 {
            for l in 0..4 {
                for s in 0..4 {
                    let x = (gen(r, b) * gen(l, s) - gen(l, s) * gen(r, b)) * etam;
                    for m in 0..4 {
                        for n in 0..4 {
                            c[((((m * 4 + n) * 4 + r) * 4 + b) * 4 + l) * 4 + s] = x[(m, n)];
                        }
                    }
                }
            }
        }
    }
    c
}

pub fn c_at(c: &[f64], idx: [usize; 6]) -> f64 {
    c[((((idx[0] * 4 + idx[1]) * 4 + idx[2]) * 4 + idx[3]) * 4 + idx[4]) * 4 + idx[5]]
}

pub fn max_abs_diff_4(a: &[[f64; 4]; 4], b: &[[f64; 4]; 4]) -> f64 {
    a.iter().flatten().zip(b.iter().flatten()).fold(0.0, |m, (x, y)| m.max((x - y).abs()))
}

/// `R[j][i][λ][σ]` from its defining formula, full range.
pub fn curvature(omega: &SpinConnection, domega: &[SpinConnection; 4]) -> Full4 {
    let w = dense_connection(omega);
    let dw: Vec<_> = domega.iter().map(dense_connection).collect();
    let mut r = [[[[0.0; 4]; 4]; 4]; 4];
    for j in 0..4 {
        for i in 0..4 {
            for l in 0..4 {
                for s in 0..4 {
                    let mut acc = dw[j][i][l][s] - dw[i][j][l][s];
                    for h in 0..4 {
                        acc += mixed(&w, j, l, h) * w[i][h][s] - mixed(&w, i, l, h) * w[j][h][s];
                    }
                    r[j][i][l][s] = acc;
                }
            }
        }
    }
    r
}

/// `G[q][ν] = ¼ ε^{qpij} ε_{μνλσ} e^μ_p R_{ji}^{λσ}`.
pub fn einstein(e: &Matrix4<f64>, r: &Full4) -> [[f64; 4]; 4] {
    let mut out = [[0.0; 4]; 4];
    for q in 0..4 {
        for n in 0..4 {
            let mut acc = 0.0;
            for p in 0..4 {
                for i in 0..4 {
                    for j in 0..4 {
                        for m in 0..4 {
                            for l in 0..4 {
                                for s in 0..4 {
                                    acc += 0.25 * eps([q, p, i, j]) * eps([m, n, l, s]) * e[(m, p)] * r[j][i][l][s];
                                }
                            }
                        }
                    }
                }
            }
            out[q][n] = acc;
        }
    }
    out
}
