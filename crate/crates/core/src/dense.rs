//! Dense state-vector oracle for small registers.
//!
//! Nothing here is used by the stabiliser algorithms themselves; the functions
//! exist so tests can check the symplectic routines against explicit linear
//! algebra. Qudit 0 is the most significant digit of a basis index.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::pauli::{Dim, PauliOperator};
use crate::tableau::StabilizerTable;

/// Largest register handled densely, in amplitudes.
pub const MAX_AMPLITUDES: u128 = 1 << 20;

fn register_size(dim: Dim, n: usize) -> Result<usize> {
    let size = (dim.get() as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
    if size > MAX_AMPLITUDES {
        return Err(Error::TooLarge(size));
    }
    Ok(size as usize)
}

fn digits(mut idx: usize, d: usize, n: usize, out: &mut [usize]) {
    for q in (0..n).rev() {
        out[q] = idx % d;
        idx /= d;
    }
}

fn index(digits: &[usize], d: usize) -> usize {
    digits.iter().fold(0, |acc, &k| acc * d + k)
}

/// `op |psi>` for a state on `op.n_qudits()` qudits.
pub fn apply_pauli(op: &PauliOperator, psi: &[Complex64]) -> Vec<Complex64> {
    let d = op.dim().get() as usize;
    let n = op.n_qudits();
    let omega = 2.0 * std::f64::consts::PI / d as f64;
    let unit = 2.0 * std::f64::consts::PI / op.dim().phase_order() as f64;
    let global = Complex64::from_polar(1.0, unit * op.phase_exp() as f64);
    let mut out = vec![Complex64::new(0.0, 0.0); psi.len()];
    if d == 2 {
        // qudit q is bit n - 1 - q of the index
        let mask = |v: &[u32]| v.iter().fold(0usize, |acc, &b| acc << 1 | b as usize);
        let (xmask, zmask) = (mask(op.x()), mask(op.z()));
        for (idx, amp) in psi.iter().enumerate() {
            let sign = if (idx & zmask).count_ones() % 2 == 0 { 1.0 } else { -1.0 };
            out[idx ^ xmask] = amp * global * sign;
        }
        return out;
    }
    let mut ks = vec![0usize; n];
    for (idx, amp) in psi.iter().enumerate() {
        if amp.norm_sqr() == 0.0 {
            continue;
        }
        digits(idx, d, n, &mut ks);
        // X^a Z^b |k> = ω^{b k} |k + a>
        let mut zphase = 0usize;
        for q in 0..n {
            zphase += op.z()[q] as usize * ks[q];
            ks[q] = (ks[q] + op.x()[q] as usize) % d;
        }
        let ph = Complex64::from_polar(1.0, omega * (zphase % d) as f64);
        out[index(&ks, d)] += amp * ph * global;
    }
    out
}

/// Projects onto the `ω^outcome` eigenspace of `op` (unnormalised).
pub fn project(op: &PauliOperator, outcome: u32, psi: &[Complex64]) -> Vec<Complex64> {
    let d = op.dim().get();
    let omega = 2.0 * std::f64::consts::PI / d as f64;
    let mut acc = psi.to_vec();
    let mut term = psi.to_vec();
    for c in 1..d {
        term = apply_pauli(op, &term);
        let w = Complex64::from_polar(1.0, -omega * (outcome as f64) * c as f64);
        for (a, t) in acc.iter_mut().zip(&term) {
            *a += w * t;
        }
    }
    let scale = 1.0 / d as f64;
    acc.iter().map(|a| a * scale).collect()
}

pub fn norm(psi: &[Complex64]) -> f64 {
    psi.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
}

pub fn normalized(psi: &[Complex64]) -> Vec<Complex64> {
    let n = norm(psi);
    psi.iter().map(|a| a / n).collect()
}

/// `|<a|b>|`.
pub fn overlap(a: &[Complex64], b: &[Complex64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum::<Complex64>().norm()
}

fn reference_vector(len: usize, seed: u64) -> Vec<Complex64> {
    // fixed, generic phases so no stabiliser state is orthogonal to it in practice
    let golden = 0.618_033_988_749_894_9_f64;
    (0..len)
        .map(|k| {
            let t = ((k as f64 + 1.0) * golden * (seed as f64 + 1.0) + 0.1 * seed as f64).fract();
            Complex64::from_polar(1.0 + t, 2.0 * std::f64::consts::PI * t)
        })
        .collect()
}

/// The unit vector fixed by every row of a pure-state table, up to a global phase.
pub fn dense_state_vector(table: &StabilizerTable) -> Result<Vec<Complex64>> {
    let size = register_size(table.dim(), table.n_qudits())?;
    if table.len() != table.n_qudits() {
        return Err(Error::Invalid(format!(
            "pure state needs {} generators, table has {}",
            table.n_qudits(),
            table.len()
        )));
    }
    let project_all = |mut psi: Vec<Complex64>| {
        for row in table.rows() {
            psi = project(row, 0, &psi);
        }
        psi
    };
    for seed in 0..4 {
        let psi = project_all(reference_vector(size, seed));
        if norm(&psi) > 1e-6 {
            return Ok(normalized(&psi));
        }
    }
    for basis in 0..size {
        let mut e = vec![Complex64::new(0.0, 0.0); size];
        e[basis] = Complex64::new(1.0, 0.0);
        let psi = project_all(e);
        if norm(&psi) > 1e-6 {
            return Ok(normalized(&psi));
        }
    }
    Err(Error::Invalid("generators admit no common +1 eigenvector".into()))
}

/// Eigenvalues of the reduced density matrix of `psi` on `region`.
pub fn reduced_spectrum(psi: &[Complex64], dim: Dim, n: usize, region: &[usize]) -> Vec<f64> {
    let d = dim.get() as usize;
    let rest: Vec<usize> = (0..n).filter(|q| !region.contains(q)).collect();
    let rows = d.pow(region.len() as u32);
    let cols = d.pow(rest.len() as u32);
    let mut m = DMatrix::<Complex64>::zeros(rows, cols);
    let mut ks = vec![0usize; n];
    for (idx, amp) in psi.iter().enumerate() {
        digits(idx, d, n, &mut ks);
        let r = region.iter().fold(0, |acc, &q| acc * d + ks[q]);
        let c = rest.iter().fold(0, |acc, &q| acc * d + ks[q]);
        m[(r, c)] = *amp;
    }
    // eigenvalues of the smaller Gram matrix equal the squared singular values
    let gram = if rows <= cols { &m * m.adjoint() } else { m.adjoint() * &m };
    gram.symmetric_eigenvalues().iter().map(|&v| v.max(0.0)).collect()
}

/// Von Neumann entropy in bits of the reduced state on `region`.
pub fn entropy_bits(psi: &[Complex64], dim: Dim, n: usize, region: &[usize]) -> f64 {
    reduced_spectrum(psi, dim, n, region)
        .into_iter()
        .filter(|&p| p > 1e-14)
        .map(|p| -p * p.log2())
        .sum()
}
