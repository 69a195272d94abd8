use nalgebra::DMatrix;
use num_complex::Complex64 as C64;

use super::state::hermiticity_deviation;
use crate::error::{Error, Result};

/// Eigenvalues with magnitude below this are treated as exact zeros in
/// entropies and trace norms.
pub const EIGEN_ZERO: f64 = 1e-11;

/// Tolerated `|H − H†|` (elementwise, relative to the largest entry).
pub const HERMITIAN_TOL: f64 = 1e-10;

/// Splits the index set into connected components of the nonzero pattern.
/// Fock-space density matrices are often block diagonal up to a
/// permutation (parity, photon number), and diagonalizing the blocks
/// separately is exact and much cheaper.
fn components(m: &DMatrix<C64>) -> Vec<Vec<usize>> {
    let n = m.nrows();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for j in 0..n {
        for i in 0..j {
            if m[(i, j)] != C64::new(0.0, 0.0) || m[(j, i)] != C64::new(0.0, 0.0) {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
    }
    let mut groups: Vec<Vec<usize>> = vec![Vec::new(); n];
    for i in 0..n {
        let r = find(&mut parent, i);
        groups[r].push(i);
    }
    groups.into_iter().filter(|g| !g.is_empty()).collect()
}

/// Real eigenvalues of a Hermitian matrix, in descending order.
pub fn eigs_hermitian(m: &DMatrix<C64>) -> Result<Vec<f64>> {
    if !m.is_square() {
        return Err(Error::InvalidParameter(
            "eigenvalues of a non-square matrix".into(),
        ));
    }
    let scale = m.iter().map(|z| z.norm()).fold(1.0, f64::max);
    let dev = hermiticity_deviation(m);
    if dev > HERMITIAN_TOL * scale {
        return Err(Error::NotHermitian { deviation: dev });
    }
    let mut eigs = Vec::with_capacity(m.nrows());
    for block in components(m) {
        if block.len() == 1 {
            eigs.push(m[(block[0], block[0])].re);
            continue;
        }
        let k = block.len();
        let sub = DMatrix::from_fn(k, k, |r, c| {
            // symmetrize so round-off asymmetry never reaches the solver
            (m[(block[r], block[c])] + m[(block[c], block[r])].conj()) * 0.5
        });
        eigs.extend(sub.symmetric_eigenvalues().iter().copied());
    }
    eigs.sort_by(|a, b| b.total_cmp(a));
    Ok(eigs)
}

/// `Σ|λ|` over eigenvalues above the zero floor.
pub fn trace_norm_of(eigs: &[f64]) -> f64 {
    eigs.iter()
        .map(|l| l.abs())
        .filter(|&a| a >= EIGEN_ZERO)
        .sum()
}

/// Base-2 von Neumann entropy of a spectrum, with `0·log 0 = 0`.
pub fn entropy_bits(eigs: &[f64]) -> f64 {
    eigs.iter()
        .filter(|&&l| l >= EIGEN_ZERO)
        .map(|&l| -l * l.log2())
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn half_identity() {
        let m = DMatrix::<C64>::identity(2, 2) * c(0.5, 0.0);
        assert_eq!(eigs_hermitian(&m).unwrap(), vec![0.5, 0.5]);
    }

    #[test]
    fn projector_spectrum() {
        let v = nalgebra::DVector::from_vec(vec![c(0.6, 0.0), c(0.0, 0.8), c(0.0, 0.0)]);
        let p = &v * v.adjoint();
        let e = eigs_hermitian(&p).unwrap();
        assert!((e[0] - 1.0).abs() < 1e-14);
        assert!(e[1].abs() < 1e-14 && e[2].abs() < 1e-14);
    }

    #[test]
    fn two_by_two_closed_form() {
        // quadratic-formula oracle on a family of Hermitian 2×2 matrices
        for k in 0..20 {
            let t = k as f64 * 0.37;
            let (a, d) = (t.sin() * 2.0, (1.3 * t).cos());
            let b = c((0.7 * t).cos(), (0.2 + t).sin());
            let m = DMatrix::from_row_slice(2, 2, &[c(a, 0.0), b, b.conj(), c(d, 0.0)]);
            let mean = (a + d) / 2.0;
            let r = (((a - d) / 2.0).powi(2) + b.norm_sqr()).sqrt();
            let e = eigs_hermitian(&m).unwrap();
            assert!((e[0] - (mean + r)).abs() < 1e-12);
            assert!((e[1] - (mean - r)).abs() < 1e-12);
        }
    }

    #[test]
    fn block_structure_is_exploited_exactly() {
        // permuted block-diagonal matrix: blocks {0, 2} and {1, 3}
        let mut m = DMatrix::<C64>::zeros(4, 4);
        m[(0, 0)] = c(1.0, 0.0);
        m[(2, 2)] = c(-1.0, 0.0);
        m[(0, 2)] = c(0.0, 1.0);
        m[(2, 0)] = c(0.0, -1.0);
        m[(1, 1)] = c(3.0, 0.0);
        m[(3, 3)] = c(3.0, 0.0);
        m[(1, 3)] = c(1.0, 0.0);
        m[(3, 1)] = c(1.0, 0.0);
        assert_eq!(components(&m), vec![vec![0, 2], vec![1, 3]]);
        let e = eigs_hermitian(&m).unwrap();
        let s2 = 2f64.sqrt();
        let want = [4.0, 2.0, s2, -s2];
        for (x, y) in e.iter().zip(want) {
            assert!((x - y).abs() < 1e-12);
        }
        let sum: f64 = e.iter().sum();
        assert!((sum - m.trace().re).abs() < 1e-12);
    }

    #[test]
    fn rejects_non_hermitian() {
        let m =
            DMatrix::from_row_slice(2, 2, &[c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)]);
        assert!(matches!(
            eigs_hermitian(&m),
            Err(Error::NotHermitian { .. })
        ));
    }

    #[test]
    fn entropy_conventions() {
        assert_eq!(entropy_bits(&[1.0, 0.0]), 0.0);
        assert!((entropy_bits(&[0.5, 0.5]) - 1.0).abs() < 1e-15);
        assert!((trace_norm_of(&[0.75, -0.25, 1e-13]) - 1.0).abs() < 1e-15);
    }
}
