//! Generalised Pauli operators on `n` qudits of prime dimension `d`.
//!
//! An operator is stored in symplectic form as a phase exponent together with
//! the exponent vectors of `X` and `Z`, canonically ordered as
//! `phase * X_1^{x_1} Z_1^{z_1} ⊗ ... ⊗ X_n^{x_n} Z_n^{z_n}`.
//!
//! The phase unit is `ω = exp(2πi/d)` for odd `d`. For qubits the phase unit is
//! `i` (so `ω = -1 = i^2`), which makes the Hermitian `Y = iXZ` representable.

use std::fmt;
use std::ops::Mul;

use serde::{Deserialize, Serialize};

use crate::error::{shape_err, Error, Result};

/// A prime local dimension.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "u32", into = "u32")]
pub struct Dim(u32);

impl Dim {
    pub const QUBIT: Dim = Dim(2);

    pub fn new(d: u32) -> Result<Self> {
        if is_prime(d) {
            Ok(Dim(d))
        } else {
            Err(Error::NotPrime(d))
        }
    }

    #[inline]
    pub fn get(self) -> u32 {
        self.0
    }

    /// Order of the phase group: 4 for qubits, `d` otherwise.
    #[inline]
    pub fn phase_order(self) -> u32 {
        if self.0 == 2 {
            4
        } else {
            self.0
        }
    }

    /// Number of phase units making up one power of `ω`.
    #[inline]
    pub fn omega_units(self) -> u32 {
        if self.0 == 2 {
            2
        } else {
            1
        }
    }

    #[inline]
    pub fn add(self, a: u32, b: u32) -> u32 {
        ((a as u64 + b as u64) % self.0 as u64) as u32
    }

    #[inline]
    pub fn sub(self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.0 as u64) as u32
    }

    #[inline]
    pub fn neg(self, a: u32) -> u32 {
        let a = a % self.0;
        if a == 0 {
            0
        } else {
            self.0 - a
        }
    }

    /// Multiplicative inverse in `Z_d`. Panics on zero.
    pub fn inv(self, a: u32) -> u32 {
        let a = a % self.0;
        assert!(a != 0, "zero has no inverse in Z_{}", self.0);
        // Fermat: a^(d-2)
        let mut result = 1u32;
        let mut base = a;
        let mut e = self.0 - 2;
        while e > 0 {
            if e & 1 == 1 {
                result = self.mul(result, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        result
    }
}

impl TryFrom<u32> for Dim {
    type Error = Error;
    fn try_from(d: u32) -> Result<Self> {
        Dim::new(d)
    }
}

impl From<Dim> for u32 {
    fn from(d: Dim) -> u32 {
        d.0
    }
}

impl fmt::Display for Dim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

pub fn is_prime(d: u32) -> bool {
    if d < 2 {
        return false;
    }
    let mut k = 2u32;
    while (k as u64) * (k as u64) <= d as u64 {
        if d.is_multiple_of(k) {
            return false;
        }
        k += 1;
    }
    true
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PauliOperator {
    dim: Dim,
    x: Vec<u32>,
    z: Vec<u32>,
    phase: u32,
}

impl PauliOperator {
    pub fn identity(dim: Dim, n: usize) -> Self {
        PauliOperator {
            dim,
            x: vec![0; n],
            z: vec![0; n],
            phase: 0,
        }
    }

    /// Builds an operator from raw exponents. Exponents are reduced modulo `d`
    /// and the phase modulo the phase-group order.
    pub fn new(dim: Dim, x: Vec<u32>, z: Vec<u32>, phase: u32) -> Result<Self> {
        if x.len() != z.len() {
            return Err(shape_err(
                format!("{} z-exponents", x.len()),
                z.len(),
            ));
        }
        let d = dim.get();
        Ok(PauliOperator {
            dim,
            x: x.into_iter().map(|a| a % d).collect(),
            z: z.into_iter().map(|b| b % d).collect(),
            phase: phase % dim.phase_order(),
        })
    }

    /// `X^a Z^b` on qudit `q`, identity elsewhere.
    pub fn single(dim: Dim, n: usize, q: usize, a: u32, b: u32) -> Self {
        let mut p = Self::identity(dim, n);
        p.x[q] = a % dim.get();
        p.z[q] = b % dim.get();
        p
    }

    pub fn x_on(dim: Dim, n: usize, q: usize) -> Self {
        Self::single(dim, n, q, 1, 0)
    }

    pub fn z_on(dim: Dim, n: usize, q: usize) -> Self {
        Self::single(dim, n, q, 0, 1)
    }

    #[inline]
    pub fn dim(&self) -> Dim {
        self.dim
    }

    #[inline]
    pub fn n_qudits(&self) -> usize {
        self.x.len()
    }

    #[inline]
    pub fn x(&self) -> &[u32] {
        &self.x
    }

    #[inline]
    pub fn z(&self) -> &[u32] {
        &self.z
    }

    #[inline]
    pub fn phase_exp(&self) -> u32 {
        self.phase
    }

    /// True when all exponents vanish (the phase may be anything).
    pub fn is_trivial(&self) -> bool {
        self.x.iter().all(|&a| a == 0) && self.z.iter().all(|&b| b == 0)
    }

    pub fn is_identity(&self) -> bool {
        self.is_trivial() && self.phase == 0
    }

    pub fn acts_on(&self, q: usize) -> bool {
        self.x[q] != 0 || self.z[q] != 0
    }

    pub fn support(&self) -> Vec<usize> {
        (0..self.n_qudits()).filter(|&q| self.acts_on(q)).collect()
    }

    pub fn weight(&self) -> usize {
        (0..self.n_qudits()).filter(|&q| self.acts_on(q)).count()
    }

    /// Number of qubit positions rendered as `Y` (both exponents set). Zero for odd `d`.
    fn y_count(&self) -> u32 {
        if self.dim.get() != 2 {
            return 0;
        }
        self.x
            .iter()
            .zip(&self.z)
            .filter(|(&a, &b)| a == 1 && b == 1)
            .count() as u32
    }

    /// The phase left over once every qubit `Y` has absorbed its factor `i`.
    /// This is the prefix shown by [`render_pauli`].
    pub fn token_phase(&self) -> u32 {
        let order = self.dim.phase_order();
        (self.phase + order - self.y_count() % order) % order
    }

    fn check_shape(&self, other: &Self) -> Result<()> {
        if self.dim != other.dim {
            return Err(shape_err(format!("d={}", self.dim), format!("d={}", other.dim)));
        }
        if self.n_qudits() != other.n_qudits() {
            return Err(shape_err(
                format!("{} qudits", self.n_qudits()),
                format!("{} qudits", other.n_qudits()),
            ));
        }
        Ok(())
    }

    /// Group product `self * other` in canonical form.
    pub fn multiply(&self, other: &Self) -> Result<Self> {
        self.check_shape(other)?;
        Ok(self.mul_unchecked(other))
    }

    pub(crate) fn mul_unchecked(&self, other: &Self) -> Self {
        let d = self.dim;
        // (X^a Z^b)(X^a' Z^b') = ω^{b a'} X^{a+a'} Z^{b+b'}
        let mut cross = 0u32;
        for (b, a2) in self.z.iter().zip(&other.x) {
            cross = d.add(cross, d.mul(*b, *a2));
        }
        let order = d.phase_order();
        let phase = (self.phase + other.phase + d.omega_units() * cross) % order;
        PauliOperator {
            dim: d,
            x: self.x.iter().zip(&other.x).map(|(a, b)| d.add(*a, *b)).collect(),
            z: self.z.iter().zip(&other.z).map(|(a, b)| d.add(*a, *b)).collect(),
            phase,
        }
    }

    /// Returns `s` with `self * other = ω^s other * self`.
    pub fn symplectic_product(&self, other: &Self) -> Result<u32> {
        self.check_shape(other)?;
        Ok(self.symplectic_unchecked(other))
    }

    pub(crate) fn symplectic_unchecked(&self, other: &Self) -> u32 {
        let d = self.dim;
        let mut s = 0u32;
        for q in 0..self.n_qudits() {
            s = d.add(s, d.mul(self.z[q], other.x[q]));
            s = d.sub(s, d.mul(self.x[q], other.z[q]));
        }
        s
    }

    pub fn commutes_with(&self, other: &Self) -> Result<bool> {
        Ok(self.symplectic_product(other)? == 0)
    }

    pub fn power(&self, k: u64) -> Self {
        let mut result = Self::identity(self.dim, self.n_qudits());
        let mut base = self.clone();
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul_unchecked(&base);
            }
            base = base.mul_unchecked(&base);
            e >>= 1;
        }
        result
    }

    pub fn inverse(&self) -> Self {
        let d = self.dim.get() as u64;
        let full = self.power(d);
        debug_assert!(full.is_trivial());
        let order = self.dim.phase_order();
        let mut inv = self.power(d - 1);
        inv.phase = (inv.phase + order - full.phase) % order;
        inv
    }

    /// Multiplies by `ω^k`.
    pub fn times_omega(&self, k: u32) -> Self {
        let order = self.dim.phase_order();
        let mut p = self.clone();
        p.phase = (p.phase + (k % self.dim.get()) * self.dim.omega_units()) % order;
        p
    }

    /// Multiplies by the phase unit raised to `units` (`i` for qubits, `ω` otherwise).
    pub fn times_phase_units(&self, units: u32) -> Self {
        let mut p = self.clone();
        p.phase = (p.phase + units) % self.dim.phase_order();
        p
    }

    pub fn with_phase_exp(&self, phase: u32) -> Self {
        let mut p = self.clone();
        p.phase = phase % self.dim.phase_order();
        p
    }

    /// True when `self^d` is the identity, i.e. the operator can belong to a
    /// stabiliser group. For qubits this is Hermiticity.
    pub fn is_stabilizer_compatible(&self) -> bool {
        self.power(self.dim.get() as u64).is_identity()
    }

    /// Restriction to the listed qudits, in the listed order. The token phase
    /// (overall sign) is kept; each qubit `Y` keeps its own factor `i`.
    pub fn restrict(&self, qudits: &[usize]) -> Self {
        let x: Vec<u32> = qudits.iter().map(|&q| self.x[q]).collect();
        let z: Vec<u32> = qudits.iter().map(|&q| self.z[q]).collect();
        let mut p = PauliOperator {
            dim: self.dim,
            x,
            z,
            phase: 0,
        };
        let order = self.dim.phase_order();
        p.phase = (self.token_phase() + p.y_count()) % order;
        p
    }

    /// Places this operator on `positions` of an `n`-qudit register.
    pub fn embed(&self, n: usize, positions: &[usize]) -> Self {
        assert_eq!(positions.len(), self.n_qudits());
        let mut p = Self::identity(self.dim, n);
        for (i, &q) in positions.iter().enumerate() {
            p.x[q] = self.x[i];
            p.z[q] = self.z[i];
        }
        p.phase = self.phase;
        p
    }

    /// Tensor product `self ⊗ other`.
    pub fn tensor(&self, other: &Self) -> Result<Self> {
        if self.dim != other.dim {
            return Err(shape_err(format!("d={}", self.dim), format!("d={}", other.dim)));
        }
        let mut x = self.x.clone();
        x.extend_from_slice(&other.x);
        let mut z = self.z.clone();
        z.extend_from_slice(&other.z);
        Ok(PauliOperator {
            dim: self.dim,
            x,
            z,
            phase: (self.phase + other.phase) % self.dim.phase_order(),
        })
    }

    /// Exponent vector `(x_1, z_1, x_2, z_2, ...)` over `Z_d`.
    pub(crate) fn exponent(&self, col: Column) -> u32 {
        match col {
            Column::X(q) => self.x[q],
            Column::Z(q) => self.z[q],
        }
    }
}

impl Mul for &PauliOperator {
    type Output = PauliOperator;

    /// Panics when the operands have different shapes; use
    /// [`PauliOperator::multiply`] for a fallible product.
    fn mul(self, rhs: &PauliOperator) -> PauliOperator {
        self.multiply(rhs).expect("Pauli shape mismatch")
    }
}

/// One column of the symplectic exponent matrix.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Column {
    X(usize),
    Z(usize),
}

impl Column {
    pub fn qudit(self) -> usize {
        match self {
            Column::X(q) | Column::Z(q) => q,
        }
    }
}

fn bad(text: &str, why: impl fmt::Display) -> Error {
    Error::Parse(format!("{why} in {text:?}"))
}

/// Parses a Pauli string.
///
/// Grammar: optional phase prefix (`-`, `i`, `-i`, or `w<k>` for `ω^k`), then
/// one token per qudit. Qubit tokens are `1 X Y Z`; for `d > 2` tokens are `1`
/// or `x<a>z<b>` with either part omissible. Whitespace between tokens is
/// ignored. The Unicode minus sign is accepted for `-`.
pub fn parse_pauli(text: &str, dim: Dim) -> Result<PauliOperator> {
    let chars: Vec<char> = text
        .trim()
        .chars()
        .map(|c| if c == '−' { '-' } else { c })
        .collect();
    let d = dim.get();
    let order = dim.phase_order();
    let mut pos = 0usize;

    let skip_ws = |pos: &mut usize| {
        while *pos < chars.len() && chars[*pos].is_whitespace() {
            *pos += 1;
        }
    };
    let read_number = |pos: &mut usize| -> Option<u64> {
        let start = *pos;
        while *pos < chars.len() && chars[*pos].is_ascii_digit() {
            *pos += 1;
        }
        if start == *pos {
            return None;
        }
        chars[start..*pos].iter().collect::<String>().parse().ok()
    };

    let mut phase = 0u32;
    if pos < chars.len() && chars[pos] == '-' {
        pos += 1;
        if d == 2 {
            phase = 2;
        } else {
            return Err(bad(text, format!("'-' is not a power of ω for d={d}")));
        }
        if pos < chars.len() && chars[pos] == 'i' {
            pos += 1;
            phase = 3;
        }
    } else if pos < chars.len() && chars[pos] == 'i' {
        if d != 2 {
            return Err(bad(text, format!("'i' is not a power of ω for d={d}")));
        }
        pos += 1;
        phase = 1;
    } else if pos < chars.len() && chars[pos] == 'w' {
        pos += 1;
        let k = read_number(&mut pos).ok_or_else(|| bad(text, "missing exponent after 'w'"))?;
        phase = ((k % d as u64) as u32 * dim.omega_units()) % order;
    }

    let mut x = Vec::new();
    let mut z = Vec::new();
    let mut ys = 0u32;
    loop {
        skip_ws(&mut pos);
        if pos >= chars.len() {
            break;
        }
        let c = chars[pos];
        if d == 2 {
            let (a, b) = match c {
                '1' | 'I' => (0, 0),
                'X' => (1, 0),
                'Z' => (0, 1),
                'Y' => {
                    ys += 1;
                    (1, 1)
                }
                other => return Err(bad(text, format!("unexpected qubit token '{other}'"))),
            };
            pos += 1;
            x.push(a);
            z.push(b);
        } else {
            match c {
                '1' => {
                    pos += 1;
                    x.push(0);
                    z.push(0);
                }
                'x' | 'z' => {
                    let mut a = 0u64;
                    let mut b = 0u64;
                    if chars[pos] == 'x' {
                        pos += 1;
                        a = read_number(&mut pos).ok_or_else(|| bad(text, "missing exponent after 'x'"))?;
                    }
                    if pos < chars.len() && chars[pos] == 'z' {
                        pos += 1;
                        b = read_number(&mut pos).ok_or_else(|| bad(text, "missing exponent after 'z'"))?;
                    }
                    if a >= d as u64 || b >= d as u64 {
                        return Err(bad(text, format!("exponent out of range for d={d}")));
                    }
                    x.push(a as u32);
                    z.push(b as u32);
                }
                other => return Err(bad(text, format!("unexpected qudit token '{other}'"))),
            }
        }
    }
    if x.is_empty() {
        return Err(bad(text, "no qudit tokens"));
    }
    PauliOperator::new(dim, x, z, (phase + ys) % order)
}

/// Parses a Pauli string and checks the qudit count.
pub fn parse_pauli_n(text: &str, dim: Dim, n: usize) -> Result<PauliOperator> {
    let p = parse_pauli(text, dim)?;
    if p.n_qudits() != n {
        return Err(Error::Parse(format!(
            "{text:?} has {} tokens, expected {n}",
            p.n_qudits()
        )));
    }
    Ok(p)
}

/// Inverse of [`parse_pauli`]. Qubit strings are written without separators
/// (`-ZYYZ1`); qudit strings separate tokens with single spaces.
pub fn render_pauli(p: &PauliOperator) -> String {
    let mut out = String::new();
    let prefix = p.token_phase();
    if p.dim.get() == 2 {
        out.push_str(match prefix {
            0 => "",
            1 => "i",
            2 => "-",
            _ => "-i",
        });
        for q in 0..p.n_qudits() {
            out.push(match (p.x[q], p.z[q]) {
                (0, 0) => '1',
                (1, 0) => 'X',
                (0, 1) => 'Z',
                _ => 'Y',
            });
        }
    } else {
        let mut tokens = Vec::with_capacity(p.n_qudits() + 1);
        if prefix != 0 {
            tokens.push(format!("w{prefix}"));
        }
        for q in 0..p.n_qudits() {
            tokens.push(match (p.x[q], p.z[q]) {
                (0, 0) => "1".to_string(),
                (a, 0) => format!("x{a}"),
                (0, b) => format!("z{b}"),
                (a, b) => format!("x{a}z{b}"),
            });
        }
        out = tokens.join(" ");
    }
    out
}

impl fmt::Display for PauliOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_pauli(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    fn q(s: &str) -> PauliOperator {
        parse_pauli(s, Dim::QUBIT).unwrap()
    }

    fn dim(d: u32) -> Dim {
        Dim::new(d).unwrap()
    }

    // Dense d x d matrices of the single-qudit operators, row-major.
    fn x_matrix(d: usize) -> Vec<Complex64> {
        let mut m = vec![Complex64::new(0.0, 0.0); d * d];
        for k in 0..d {
            m[((k + 1) % d) * d + k] = Complex64::new(1.0, 0.0);
        }
        m
    }

    fn z_matrix(d: usize) -> Vec<Complex64> {
        let mut m = vec![Complex64::new(0.0, 0.0); d * d];
        for k in 0..d {
            m[k * d + k] = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * k as f64 / d as f64);
        }
        m
    }

    fn matmul(a: &[Complex64], b: &[Complex64], d: usize) -> Vec<Complex64> {
        let mut c = vec![Complex64::new(0.0, 0.0); d * d];
        for i in 0..d {
            for k in 0..d {
                for j in 0..d {
                    c[i * d + j] += a[i * d + k] * b[k * d + j];
                }
            }
        }
        c
    }

    fn dense_single(p: &PauliOperator) -> Vec<Complex64> {
        let d = p.dim().get() as usize;
        let mut m = vec![Complex64::new(0.0, 0.0); d * d];
        for k in 0..d {
            m[k * d + k] = Complex64::new(1.0, 0.0);
        }
        for _ in 0..p.x()[0] {
            m = matmul(&m, &x_matrix(d), d);
        }
        for _ in 0..p.z()[0] {
            m = matmul(&m, &z_matrix(d), d);
        }
        let unit = 2.0 * std::f64::consts::PI / p.dim().phase_order() as f64;
        let ph = Complex64::from_polar(1.0, unit * p.phase_exp() as f64);
        m.iter().map(|v| v * ph).collect()
    }

    fn close(a: &[Complex64], b: &[Complex64]) -> bool {
        a.iter().zip(b).all(|(u, v)| (u - v).norm() < 1e-12)
    }

    #[test]
    fn primality_is_enforced() {
        assert!(Dim::new(4).is_err());
        assert!(Dim::new(1).is_err());
        assert!(Dim::new(9).is_err());
        assert!(Dim::new(7).is_ok());
        assert!(parse_pauli("x1", Dim::new(3).unwrap()).is_ok());
    }

    #[test]
    fn multiply_by_identity() {
        let p = q("-YZX1");
        let id = PauliOperator::identity(Dim::QUBIT, 4);
        assert_eq!(id.multiply(&p).unwrap(), p);
        assert_eq!(p.multiply(&id).unwrap(), p);
    }

    #[test]
    fn qubit_zx_picks_up_minus_sign() {
        let zx = q("Z").multiply(&q("X")).unwrap();
        assert_eq!(zx.x(), &[1]);
        assert_eq!(zx.z(), &[1]);
        // ZX = -XZ = iY
        assert_eq!(zx.phase_exp(), 2);
        assert_eq!(render_pauli(&zx), "iY");
    }

    #[test]
    fn qutrit_xz_squared_matches_matrices() {
        let d3 = dim(3);
        let xz = PauliOperator::single(d3, 1, 0, 1, 1);
        let sq = xz.multiply(&xz).unwrap();
        assert_eq!(sq.x(), &[2]);
        assert_eq!(sq.z(), &[2]);
        assert_eq!(sq.phase_exp(), 1);
        let m = dense_single(&xz);
        assert!(close(&matmul(&m, &m, 3), &dense_single(&sq)));
    }

    #[test]
    fn symplectic_examples() {
        assert_eq!(q("X").symplectic_product(&q("Z")).unwrap(), 1);
        assert_eq!(q("XX").symplectic_product(&q("ZZ")).unwrap(), 0);
        let d5 = dim(5);
        let x = PauliOperator::x_on(d5, 1, 0);
        let z = PauliOperator::z_on(d5, 1, 0);
        assert_eq!(x.symplectic_product(&z).unwrap(), 4);
        // XZ = ω^4 ZX as 5x5 matrices
        let xz = matmul(&dense_single(&x), &dense_single(&z), 5);
        let zx = matmul(&dense_single(&z), &dense_single(&x), 5);
        let w4 = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * 4.0 / 5.0);
        assert!(close(&xz, &zx.iter().map(|v| v * w4).collect::<Vec<_>>()));
    }

    #[test]
    fn shape_mismatch_is_an_error() {
        assert!(q("XX").multiply(&q("X")).is_err());
        let d3 = dim(3);
        assert!(q("X").symplectic_product(&PauliOperator::x_on(d3, 1, 0)).is_err());
    }

    #[test]
    fn powers() {
        let p = q("XZY");
        assert!(p.power(0).is_identity());
        for d in [2u32, 3, 5, 7] {
            let x = PauliOperator::x_on(dim(d), 2, 1);
            assert!(x.power(d as u64).is_identity());
        }
        let xz = PauliOperator::single(Dim::QUBIT, 1, 0, 1, 1);
        let sq = xz.power(2);
        assert!(sq.is_trivial());
        assert_eq!(sq.phase_exp(), 2, "(XZ)^2 = -I");
        let y = q("Y");
        assert!(y.power(2).is_identity(), "Y^2 = I");
    }

    #[test]
    fn inverse_is_two_sided() {
        for d in [2u32, 3, 5] {
            let p = PauliOperator::new(dim(d), vec![1, 0, d - 1], vec![1, 1, 0], 1).unwrap();
            let inv = p.inverse();
            assert!(p.multiply(&inv).unwrap().is_identity());
            assert!(inv.multiply(&p).unwrap().is_identity());
        }
    }

    #[test]
    fn parse_reference_strings() {
        let p = q("−YZY11");
        assert_eq!(p.x(), &[1, 0, 1, 0, 0]);
        assert_eq!(p.z(), &[1, 1, 1, 0, 0]);
        // -1 * i * i = -i^2 = +1 ... phase units: 2 (sign) + 2 (two Y) = 0
        assert_eq!(p.phase_exp(), 0);
        assert_eq!(p.token_phase(), 2);
        assert_eq!(render_pauli(&p), "-YZY11");

        let id = q("11111");
        assert!(id.is_identity());
        assert_eq!(id.n_qudits(), 5);

        let t = parse_pauli("x2z1", dim(3)).unwrap();
        assert_eq!((t.x(), t.z(), t.phase_exp()), (&[2u32][..], &[1u32][..], 0));
    }

    #[test]
    fn parse_errors() {
        assert!(parse_pauli("XQ", Dim::QUBIT).is_err());
        assert!(parse_pauli("", Dim::QUBIT).is_err());
        assert!(parse_pauli("x3", dim(3)).is_err());
        assert!(parse_pauli("-x1", dim(3)).is_err());
        assert!(parse_pauli("w", dim(3)).is_err());
        assert!(parse_pauli_n("XX", Dim::QUBIT, 3).is_err());
    }

    #[test]
    fn render_round_trips() {
        for s in ["XYZ1", "-ZYYZ", "iX", "-iYY", "1"] {
            assert_eq!(render_pauli(&q(s)), s);
        }
        let d5 = dim(5);
        for s in ["w3 x1z4 1 z2", "x2", "1 1"] {
            assert_eq!(render_pauli(&parse_pauli(s, d5).unwrap()), s);
        }
        // concatenated qudit input canonicalises to spaced output
        assert_eq!(render_pauli(&parse_pauli("w2x1z4 1z2", d5).unwrap()), "w2 x1z4 1 z2");
    }

    #[test]
    fn restrict_keeps_sign_and_y_tokens() {
        let p = q("-YZY11");
        assert_eq!(render_pauli(&p.restrict(&[0, 1, 2])), "-YZY");
        assert_eq!(render_pauli(&p.restrict(&[3, 4])), "-11");
        assert_eq!(render_pauli(&p.restrict(&[2, 0])), "-YY");
    }

    #[test]
    fn stabilizer_compatibility() {
        assert!(q("Y").is_stabilizer_compatible());
        assert!(q("-XZ").is_stabilizer_compatible());
        assert!(!q("iX").is_stabilizer_compatible());
        assert!(PauliOperator::single(dim(3), 1, 0, 1, 2).is_stabilizer_compatible());
    }
}
