//! Graph states, AME verification and extraction of stabiliser codes from
//! AME states.

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::entropy::entanglement_rank;
use crate::error::{shape_err, Error, Result};
use crate::linalg::rank_mod;
use crate::pauli::{parse_pauli, Column, Dim, PauliOperator};
use crate::tableau::{rank, row_reduce, Role, StabilizerTable};

/// Symmetric weighted adjacency matrix with zero diagonal, entries in `Z_d`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AdjacencyMatrix {
    dim: Dim,
    entries: Vec<Vec<u32>>,
}

impl AdjacencyMatrix {
    pub fn new(dim: Dim, entries: Vec<Vec<u32>>) -> Result<Self> {
        let n = entries.len();
        for (i, row) in entries.iter().enumerate() {
            if row.len() != n {
                return Err(shape_err(format!("{n} columns"), row.len()));
            }
            if row[i] != 0 {
                return Err(Error::Invalid(format!("nonzero diagonal entry at {i}")));
            }
            for (j, &v) in row.iter().enumerate() {
                if v >= dim.get() {
                    return Err(Error::Invalid(format!("entry {v} outside Z_{dim}")));
                }
                if entries[j][i] != v {
                    return Err(Error::Invalid(format!("matrix is not symmetric at ({i}, {j})")));
                }
            }
        }
        Ok(AdjacencyMatrix { dim, entries })
    }

    pub fn zeros(dim: Dim, n: usize) -> Self {
        AdjacencyMatrix {
            dim,
            entries: vec![vec![0; n]; n],
        }
    }

    /// Builds a matrix from its strict upper triangle, listed row by row.
    pub fn from_upper(dim: Dim, n: usize, upper: &[u32]) -> Result<Self> {
        if upper.len() != n * (n.saturating_sub(1)) / 2 {
            return Err(shape_err(n * (n.saturating_sub(1)) / 2, upper.len()));
        }
        let mut entries = vec![vec![0; n]; n];
        let mut it = upper.iter();
        for i in 0..n {
            for j in i + 1..n {
                let v = *it.next().unwrap();
                entries[i][j] = v;
                entries[j][i] = v;
            }
        }
        Self::new(dim, entries)
    }

    pub fn dim(&self) -> Dim {
        self.dim
    }

    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn rows(&self) -> &[Vec<u32>] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.entries[i][j]
    }
}

/// Generators `g_i = X_i ∏_j Z_j^{A_ij}` of the graph state of `a`.
pub fn graph_state(a: &AdjacencyMatrix) -> StabilizerTable {
    let n = a.size();
    let rows = (0..n)
        .map(|i| {
            let mut x = vec![0; n];
            x[i] = 1;
            PauliOperator::new(a.dim(), x, a.entries[i].clone(), 0).unwrap()
        })
        .collect();
    StabilizerTable::new(a.dim(), n, rows).expect("graph-state generators commute and are independent")
}

/// Returns a bipartition `B` with `|B| = ⌊N/2⌋` on which the state is not
/// maximally mixed, or `None` if the state is AME. Tables that are not pure
/// states report the empty set.
pub fn ame_violation(table: &StabilizerTable) -> Option<Vec<usize>> {
    if !table.is_pure_state() {
        return Some(Vec::new());
    }
    let n = table.n_qudits();
    (0..n)
        .combinations(n / 2)
        .find(|b| !entanglement_rank(table, b).is_ok_and(|r| r == b.len()))
}

pub fn is_ame(table: &StabilizerTable) -> bool {
    ame_violation(table).is_none()
}

/// Whether the rows `A_i` for `i ∈ K`, with the `K` columns removed, are
/// linearly independent over `Z_d`.
pub fn truncated_independence(a: &AdjacencyMatrix, k: &[usize]) -> Result<bool> {
    let n = a.size();
    if k.len() > n / 2 || k.iter().any(|&i| i >= n) || k.iter().duplicates().next().is_some() {
        return Err(Error::Invalid(format!("K = {k:?} must be distinct indices with |K| <= {}", n / 2)));
    }
    let rows: Vec<Vec<u32>> = k
        .iter()
        .map(|&i| (0..n).filter(|j| !k.contains(j)).map(|j| a.get(i, j)).collect())
        .collect();
    Ok(rank_mod(rows, a.dim()) == k.len())
}

pub fn adjacency_count(dim: Dim, n: usize) -> u128 {
    (dim.get() as u128).saturating_pow((n * n.saturating_sub(1) / 2) as u32)
}

/// Enumerates adjacency matrices in lexicographic order of their upper
/// triangle and returns the first whose graph state is AME. The search stops
/// after `budget` candidates; a budget of at least [`adjacency_count`] makes it
/// exhaustive.
pub fn find_small_ame(dim: Dim, n: usize, budget: u128) -> Option<AdjacencyMatrix> {
    let slots = n * n.saturating_sub(1) / 2;
    let total = adjacency_count(dim, n);
    let d = dim.get();
    let mut upper = vec![0u32; slots];
    for _ in 0..budget.min(total) {
        let a = AdjacencyMatrix::from_upper(dim, n, &upper).unwrap();
        if is_ame(&graph_state(&a)) {
            return Some(a);
        }
        // odometer increment, last slot fastest
        for v in upper.iter_mut().rev() {
            *v += 1;
            if *v < d {
                break;
            }
            *v = 0;
        }
    }
    None
}

/// A pair of logical operators with `Z_L X_L = ω X_L Z_L`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LogicalPair {
    pub x: PauliOperator,
    pub z: PauliOperator,
}

/// Stabiliser generators and logical operators of an `[[n, k]]` code.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CodeSpec {
    dim: Dim,
    n_physical: usize,
    stabilizers: Vec<PauliOperator>,
    logicals: Vec<LogicalPair>,
    column_permutation: Vec<usize>,
}

impl CodeSpec {
    pub fn new(
        dim: Dim,
        n_physical: usize,
        stabilizers: Vec<PauliOperator>,
        logicals: Vec<LogicalPair>,
        column_permutation: Vec<usize>,
    ) -> Result<Self> {
        let code = CodeSpec {
            dim,
            n_physical,
            stabilizers,
            logicals,
            column_permutation,
        };
        code.validate()?;
        Ok(code)
    }

    pub fn dim(&self) -> Dim {
        self.dim
    }

    pub fn n_physical(&self) -> usize {
        self.n_physical
    }

    pub fn k_logical(&self) -> usize {
        self.logicals.len()
    }

    pub fn stabilizers(&self) -> &[PauliOperator] {
        &self.stabilizers
    }

    pub fn logicals(&self) -> &[LogicalPair] {
        &self.logicals
    }

    /// Original qudit index of each physical qudit, followed by the original
    /// indices of the logical (input) qudits.
    pub fn column_permutation(&self) -> &[usize] {
        &self.column_permutation
    }

    /// Generators followed by `X_L, Z_L` of each logical pair.
    pub fn all_operators(&self) -> Vec<PauliOperator> {
        let mut ops = self.stabilizers.clone();
        for pair in &self.logicals {
            ops.push(pair.x.clone());
            ops.push(pair.z.clone());
        }
        ops
    }

    /// Matrix of symplectic products between all operators, in the order of
    /// [`all_operators`](Self::all_operators).
    pub fn commutation_matrix(&self) -> Vec<Vec<u32>> {
        let ops = self.all_operators();
        ops.iter()
            .map(|a| ops.iter().map(|b| a.symplectic_unchecked(b)).collect())
            .collect()
    }

    /// The symplectic pattern every valid code has: zero everywhere except
    /// `sp(Z_L, X_L) = 1` and `sp(X_L, Z_L) = -1` within each pair.
    pub fn expected_commutation_matrix(&self) -> Vec<Vec<u32>> {
        let s = self.stabilizers.len();
        let size = s + 2 * self.logicals.len();
        let mut m = vec![vec![0; size]; size];
        for j in 0..self.logicals.len() {
            let xi = s + 2 * j;
            m[xi + 1][xi] = 1;
            m[xi][xi + 1] = self.dim.neg(1);
        }
        m
    }

    pub fn validate(&self) -> Result<()> {
        let ops = self.all_operators();
        for op in &ops {
            if op.dim() != self.dim || op.n_qudits() != self.n_physical {
                return Err(shape_err(
                    format!("d={} n={}", self.dim, self.n_physical),
                    format!("d={} n={}", op.dim(), op.n_qudits()),
                ));
            }
        }
        if self.commutation_matrix() != self.expected_commutation_matrix() {
            return Err(Error::Invalid("operators do not have the canonical commutation pattern".into()));
        }
        if rank(&ops)? != ops.len() {
            return Err(Error::Invalid("code operators are not independent".into()));
        }
        if self.stabilizers.iter().any(|g| !g.is_stabilizer_compatible()) {
            return Err(Error::Invalid("stabiliser generator with g^d != I".into()));
        }
        Ok(())
    }

    pub fn stabilizer_table(&self) -> StabilizerTable {
        StabilizerTable::from_parts_unchecked(
            self.dim,
            self.n_physical,
            self.stabilizers.clone(),
            vec![Role::Stabilizer; self.stabilizers.len()],
        )
    }

    /// Stabilisers tagged `stabilizer`, then each pair tagged `logical_x(j)` / `logical_z(j)`.
    pub fn to_table(&self) -> StabilizerTable {
        let mut rows = self.stabilizers.clone();
        let mut roles = vec![Role::Stabilizer; rows.len()];
        for (j, pair) in self.logicals.iter().enumerate() {
            rows.push(pair.x.clone());
            roles.push(Role::LogicalX(j));
            rows.push(pair.z.clone());
            roles.push(Role::LogicalZ(j));
        }
        StabilizerTable::from_parts_unchecked(self.dim, self.n_physical, rows, roles)
    }

    /// Inverse of [`to_table`](Self::to_table). The column permutation is
    /// reset to the identity.
    pub fn from_table(table: &StabilizerTable) -> Result<Self> {
        let mut stabilizers = Vec::new();
        let mut xs: Vec<Option<PauliOperator>> = Vec::new();
        let mut zs: Vec<Option<PauliOperator>> = Vec::new();
        for (row, role) in table.rows().iter().zip(table.roles()) {
            match *role {
                Role::Stabilizer => stabilizers.push(row.clone()),
                Role::LogicalX(j) | Role::LogicalZ(j) => {
                    let slot = if matches!(role, Role::LogicalX(_)) { &mut xs } else { &mut zs };
                    if slot.len() <= j {
                        slot.resize(j + 1, None);
                    }
                    if slot[j].replace(row.clone()).is_some() {
                        return Err(Error::Invalid(format!("duplicate {role}")));
                    }
                }
                Role::EncodedInput => return Err(Error::Invalid("code tables cannot hold encoded inputs".into())),
            }
        }
        let k = xs.len().max(zs.len());
        xs.resize(k, None);
        zs.resize(k, None);
        let logicals = xs
            .into_iter()
            .zip(zs)
            .enumerate()
            .map(|(j, (x, z))| match (x, z) {
                (Some(x), Some(z)) => Ok(LogicalPair { x, z }),
                _ => Err(Error::Invalid(format!("logical pair {} is incomplete", j + 1))),
            })
            .collect::<Result<Vec<_>>>()?;
        let n = table.n_qudits();
        CodeSpec::new(table.dim(), n, stabilizers, logicals, (0..n + k).collect())
    }

    /// Whether `a` and `b` act identically on the code space up to a phase,
    /// i.e. `a b^{-1}` lies in the stabiliser group.
    pub fn equivalent_mod_stabilizers(&self, a: &PauliOperator, b: &PauliOperator) -> Result<bool> {
        let diff = a.multiply(&b.inverse())?;
        self.stabilizer_table().contains_up_to_phase(&diff)
    }
}

/// Extracts the code encoding the qudits `inputs` (the set `K`, in logical
/// order) of an AME state into its remaining `N - m` qudits.
///
/// The generator list is brought to the form where the first `m` rows act on
/// `K` as single `Z`s, the last `m` rows as single `X`s and the middle rows
/// trivially; one Gauss-Jordan sweep with the `K` columns ordered first
/// produces exactly this structure. Truncating to the other qudits gives the
/// stabilisers (middle rows) and the logical pairs.
pub fn extract_code(ame: &StabilizerTable, inputs: &[usize]) -> Result<CodeSpec> {
    let n = ame.n_qudits();
    let m = inputs.len();
    let dim = ame.dim();
    if !ame.is_pure_state() {
        return Err(Error::NotAme(format!("{} generators on {n} qudits is not a pure state", ame.len())));
    }
    if m == 0 || m > n / 2 {
        return Err(Error::Invalid(format!("number of inputs must be in 1..={}, got {m}", n / 2)));
    }
    if inputs.iter().any(|&q| q >= n) || inputs.iter().duplicates().next().is_some() {
        return Err(Error::Invalid(format!("input qudits {inputs:?} must be distinct and below {n}")));
    }
    let physical: Vec<usize> = (0..n).filter(|q| !inputs.contains(q)).collect();

    let mut cols: Vec<Column> = inputs.iter().map(|&k| Column::Z(k)).collect();
    cols.extend(inputs.iter().map(|&k| Column::X(k)));
    cols.extend(physical.iter().flat_map(|&q| [Column::X(q), Column::Z(q)]));
    let (rows, pivots, _) = row_reduce(ame.rows().to_vec(), &cols);
    if rows.len() != n || pivots[..2 * m] != cols[..2 * m] {
        return Err(Error::NotAme(format!(
            "the generators do not reach the full Pauli group on qudits {inputs:?}"
        )));
    }
    let truncated: Vec<PauliOperator> = rows.iter().map(|r| r.restrict(&physical)).collect();
    if rank(&truncated)? != n {
        return Err(Error::NotAme("truncated generators are linearly dependent".into()));
    }
    let stabilizers = truncated[2 * m..].to_vec();
    let logicals = (0..m)
        .map(|j| LogicalPair {
            x: truncated[m + j].clone(),
            z: truncated[j].inverse(),
        })
        .collect();
    let mut permutation = physical.clone();
    permutation.extend_from_slice(inputs);
    CodeSpec::new(dim, n - m, stabilizers, logicals, permutation)
}

fn qubit_table(rows: &[&str]) -> StabilizerTable {
    let ops: Vec<PauliOperator> = rows.iter().map(|s| parse_pauli(s, Dim::QUBIT).unwrap()).collect();
    let n = ops[0].n_qudits();
    StabilizerTable::new(Dim::QUBIT, n, ops).unwrap()
}

/// The 6-qubit AME state built from the cyclic `XZZX1` code plus `X^6`, `Z^6`.
pub fn six_qubit_ame() -> StabilizerTable {
    qubit_table(&["XZZX11", "1XZZX1", "X1XZZ1", "ZX1XZ1", "XXXXXX", "ZZZZZZ"])
}

/// `n`-qubit GHZ state: `X^n` and nearest-neighbour `ZZ`.
pub fn ghz(n: usize) -> StabilizerTable {
    let d = Dim::QUBIT;
    let mut rows = vec![PauliOperator::new(d, vec![1; n], vec![0; n], 0).unwrap()];
    for i in 0..n.saturating_sub(1) {
        let mut z = vec![0; n];
        z[i] = 1;
        z[i + 1] = 1;
        rows.push(PauliOperator::new(d, vec![0; n], z, 0).unwrap());
    }
    StabilizerTable::new(d, n, rows).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dense;
    use crate::pauli::render_pauli;

    fn q(s: &str) -> PauliOperator {
        parse_pauli(s, Dim::QUBIT).unwrap()
    }

    #[test]
    fn adjacency_validation() {
        let d = Dim::QUBIT;
        assert!(AdjacencyMatrix::new(d, vec![vec![0, 1], vec![0, 0]]).is_err());
        assert!(AdjacencyMatrix::new(d, vec![vec![1, 0], vec![0, 0]]).is_err());
        assert!(AdjacencyMatrix::new(d, vec![vec![0, 2], vec![2, 0]]).is_err());
    }

    #[test]
    fn empty_graph_is_plus_state() {
        let t = graph_state(&AdjacencyMatrix::zeros(Dim::QUBIT, 3));
        let rendered: Vec<String> = t.rows().iter().map(render_pauli).collect();
        assert_eq!(rendered, ["X11", "1X1", "11X"]);
    }

    #[test]
    fn edge_graph_is_bell_like() {
        let a = AdjacencyMatrix::from_upper(Dim::QUBIT, 2, &[1]).unwrap();
        let t = graph_state(&a);
        let rendered: Vec<String> = t.rows().iter().map(render_pauli).collect();
        assert_eq!(rendered, ["XZ", "ZX"]);
        assert!(is_ame(&t));
    }

    #[test]
    fn triangle_is_ame_by_dense_oracle() {
        let a = AdjacencyMatrix::from_upper(Dim::QUBIT, 3, &[1, 1, 1]).unwrap();
        let t = graph_state(&a);
        let psi = dense::dense_state_vector(&t).unwrap();
        for qd in 0..3 {
            for p in dense::reduced_spectrum(&psi, Dim::QUBIT, 3, &[qd]) {
                assert!((p - 0.5).abs() < 1e-9);
            }
        }
        assert!(is_ame(&t));
    }

    #[test]
    fn ame_examples() {
        assert!(is_ame(&qubit_table(&["XXX", "ZZ1", "1ZZ"])));
        let ghz4 = ghz(4);
        assert!(!is_ame(&ghz4));
        assert_eq!(ame_violation(&ghz4).unwrap().len(), 2);
        assert!(is_ame(&six_qubit_ame()));
    }

    #[test]
    fn truncated_independence_examples() {
        let zero = AdjacencyMatrix::zeros(Dim::QUBIT, 4);
        assert!(truncated_independence(&zero, &[]).unwrap());
        assert!(!truncated_independence(&zero, &[0]).unwrap());
        assert!(truncated_independence(&zero, &[0, 1, 2]).is_err());
    }

    #[test]
    fn extraction_one_to_five() {
        let code = extract_code(&six_qubit_ame(), &[5]).unwrap();
        assert_eq!(code.n_physical(), 5);
        assert_eq!(code.k_logical(), 1);
        let reference = qubit_table(&["YYZ1Z", "ZZX1X", "-ZYYZ1", "XZZX1"]);
        assert!(code.stabilizer_table().group_equal(&reference).unwrap().equal);
        let pair = &code.logicals()[0];
        assert!(code.equivalent_mod_stabilizers(&pair.z, &q("-YZY11")).unwrap());
        assert!(code.equivalent_mod_stabilizers(&pair.x, &q("-ZXZ11")).unwrap());
        assert_eq!(code.column_permutation(), &[0, 1, 2, 3, 4, 5]);
    }

    #[test]
    fn extraction_rejects_non_ame() {
        assert!(matches!(extract_code(&ghz(4), &[2, 3]), Err(Error::NotAme(_))));
        assert!(extract_code(&six_qubit_ame(), &[0, 1, 2, 3]).is_err());
        assert!(extract_code(&six_qubit_ame(), &[]).is_err());
    }

    #[test]
    fn code_table_round_trip() {
        let code = extract_code(&six_qubit_ame(), &[5, 4]).unwrap();
        let back = CodeSpec::from_table(&code.to_table()).unwrap();
        assert_eq!(back.stabilizers(), code.stabilizers());
        assert_eq!(back.logicals(), code.logicals());
    }

    #[test]
    fn small_search() {
        let d2 = Dim::QUBIT;
        let a = find_small_ame(d2, 3, adjacency_count(d2, 3)).unwrap();
        assert!(is_ame(&graph_state(&a)));
        assert!(find_small_ame(d2, 3, 1).is_none(), "empty graph is not AME");
    }
}
