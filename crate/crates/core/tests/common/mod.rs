//! Random stabiliser fixtures shared by the integration tests.
#![allow(dead_code)]

use ame_core::ame::{extract_code, find_small_ame, graph_state, adjacency_count, six_qubit_ame, AdjacencyMatrix};
use ame_core::{Dim, PauliOperator, StabilizerTable};
use rand::seq::SliceRandom;
use rand::Rng;

pub fn dim(d: u32) -> Dim {
    Dim::new(d).unwrap()
}

/// A random element of `SL(2, Z_d)` as `[[a, b], [c, e]]`.
fn random_sl2<R: Rng>(rng: &mut R, d: u32) -> [u32; 4] {
    loop {
        let m = [rng.gen_range(0..d), rng.gen_range(0..d), rng.gen_range(0..d), rng.gen_range(0..d)];
        let det = (m[0] * m[3] + d * d - m[1] * m[2] % d) % d;
        if det == 1 {
            return m;
        }
    }
}

/// Applies an independent local symplectic map to every qudit and picks
/// random admissible phases.
pub fn scramble<R: Rng>(rng: &mut R, rows: &[PauliOperator]) -> Vec<PauliOperator> {
    let Some(first) = rows.first() else {
        return Vec::new();
    };
    let dim = first.dim();
    let d = dim.get();
    let n = first.n_qudits();
    let maps: Vec<[u32; 4]> = (0..n).map(|_| random_sl2(rng, d)).collect();
    rows.iter()
        .map(|r| {
            let mut x = vec![0; n];
            let mut z = vec![0; n];
            for q in 0..n {
                let [a, b, c, e] = maps[q];
                x[q] = (a * r.x()[q] + b * r.z()[q]) % d;
                z[q] = (c * r.x()[q] + e * r.z()[q]) % d;
            }
            let bare = PauliOperator::new(dim, x, z, 0).unwrap();
            if d == 2 {
                // Hermitian: one factor of i per Y, times a random sign
                let ys = bare.x().iter().zip(bare.z()).filter(|(a, b)| **a == 1 && **b == 1).count() as u32;
                bare.with_phase_exp((ys + 2 * rng.gen_range(0..2)) % 4)
            } else {
                bare.with_phase_exp(rng.gen_range(0..d))
            }
        })
        .collect()
}

pub fn random_adjacency<R: Rng>(rng: &mut R, d: Dim, n: usize) -> AdjacencyMatrix {
    let upper: Vec<u32> = (0..n * (n - 1) / 2).map(|_| rng.gen_range(0..d.get())).collect();
    AdjacencyMatrix::from_upper(d, n, &upper).unwrap()
}

/// A random pure stabiliser state: a random graph state under random local
/// symplectic maps, with qudits shuffled.
pub fn random_pure_state<R: Rng>(rng: &mut R, d: Dim, n: usize) -> StabilizerTable {
    let graph = graph_state(&random_adjacency(rng, d, n));
    let rows = scramble(rng, graph.rows());
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    StabilizerTable::new(d, n, rows).unwrap().permute_qudits(&order).unwrap()
}

/// A random stabiliser table with `n - dropped` generators.
pub fn random_mixed_state<R: Rng>(rng: &mut R, d: Dim, n: usize, dropped: usize) -> StabilizerTable {
    let pure = random_pure_state(rng, d, n);
    let mut rows = pure.rows().to_vec();
    rows.shuffle(rng);
    rows.truncate(n - dropped);
    StabilizerTable::new(d, n, rows).unwrap()
}

/// A random Pauli operator with `O^d = I`.
pub fn random_observable<R: Rng>(rng: &mut R, d: Dim, n: usize) -> PauliOperator {
    loop {
        let x: Vec<u32> = (0..n).map(|_| rng.gen_range(0..d.get())).collect();
        let z: Vec<u32> = (0..n).map(|_| rng.gen_range(0..d.get())).collect();
        let bare = PauliOperator::new(d, x, z, 0).unwrap();
        if bare.is_identity() {
            continue;
        }
        return scramble_phase(rng, bare);
    }
}

fn scramble_phase<R: Rng>(rng: &mut R, bare: PauliOperator) -> PauliOperator {
    let d = bare.dim().get();
    if d == 2 {
        let ys = bare.x().iter().zip(bare.z()).filter(|(a, b)| **a == 1 && **b == 1).count() as u32;
        bare.with_phase_exp((ys + 2 * rng.gen_range(0..2)) % 4)
    } else {
        bare.with_phase_exp(rng.gen_range(0..d))
    }
}

/// Small AME states used as swap resources, with their dimension.
pub fn ame_fixtures() -> Vec<StabilizerTable> {
    let d3 = dim(3);
    let d5 = dim(5);
    let ame_4_3 = graph_state(&find_small_ame(d3, 4, adjacency_count(d3, 4)).unwrap());
    let bell_5 = graph_state(&AdjacencyMatrix::from_upper(d5, 2, &[1]).unwrap());
    let triangle_3 = graph_state(&AdjacencyMatrix::from_upper(d3, 3, &[1, 1, 1]).unwrap());
    vec![six_qubit_ame(), ame_4_3, bell_5, triangle_3]
}

/// A fixture under random local symplectic maps and a random qudit order;
/// both preserve the AME property.
pub fn random_ame<R: Rng>(rng: &mut R, fixtures: &[StabilizerTable]) -> StabilizerTable {
    let base = fixtures.choose(rng).unwrap();
    let n = base.n_qudits();
    let rows = scramble(rng, base.rows());
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    StabilizerTable::new(base.dim(), n, rows).unwrap().permute_qudits(&order).unwrap()
}

pub fn extract(table: &StabilizerTable, inputs: &[usize]) -> ame_core::ame::CodeSpec {
    extract_code(table, inputs).unwrap()
}

/// Boundary generators of the two-layer pentagon code with the 6-qubit AME
/// input, as printed in the reference table (row 3 contains a misprint).
pub const BOUNDARY_ROWS: [&str; 20] = [
    "XYX1XYX1YZY11111YZY1",
    "YZY1YZY1ZXZ11111ZXZ1",
    "YZY1XYX1XYX1YZ111111",
    "ZXZ1YZY1YZY1ZXZ11111",
    "ZYYZ1111111111111111",
    "XZZX1111111111111111",
    "1111ZYYZ111111111111",
    "1111XZZX111111111111",
    "11111111ZYYZ11111111",
    "11111111XZZX11111111",
    "111111111111ZYYZ1111",
    "111111111111XZZX1111",
    "1111111111111111ZYYZ",
    "1111111111111111XZZX",
    "11ZX11ZXXXXXX1YYX1YY",
    "1XZZX1XZX1XZ1XZZ1111",
    "X1YYXXXX11ZX11ZXX1YY",
    "YYXZYZY1YYXZZZZZYZY1",
    "XXXXXXXXXXXXXXXXXXXX",
    "ZZZZZZZZZZZZZZZZZZZZ",
];

/// Row 3 with its fourth block read as `YZY1`.
pub const BOUNDARY_ROW3_CORRECTED: &str = "YZY1XYX1XYX1YZY11111";

/// Localised form of the AME boundary state on its last three qubits.
pub const LOCAL_ROWS_LAST_THREE: [&str; 6] = ["1YY", "XZ1", "ZY1", "ZXX", "YXZ", "ZYY"];

pub fn qubits(rows: &[&str]) -> Vec<PauliOperator> {
    rows.iter().map(|r| ame_core::parse_pauli(r, Dim::QUBIT).unwrap()).collect()
}

pub fn qubit_table(rows: &[&str]) -> StabilizerTable {
    let ops = qubits(rows);
    let n = ops.first().map_or(0, PauliOperator::n_qudits);
    StabilizerTable::new(Dim::QUBIT, n, ops).unwrap()
}
