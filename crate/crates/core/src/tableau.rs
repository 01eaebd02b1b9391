//! Generator lists of stabiliser states and codes.
//!
//! A [`StabilizerTable`] is an ordered list of Pauli operators over a common
//! register, each tagged with a [`Role`]. All transformations are value
//! semantic: they return new tables and never mutate shared state.

use std::fmt;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{shape_err, Error, Result};
use crate::linalg::rank_mod;
use crate::pauli::{render_pauli, Column, Dim, PauliOperator};

/// What a row of a table stands for. Logical indices are zero based.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Role {
    Stabilizer,
    LogicalX(usize),
    LogicalZ(usize),
    EncodedInput,
}

impl fmt::Display for Role {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Role::Stabilizer => write!(f, "stabilizer"),
            Role::LogicalX(j) => write!(f, "logical_x({})", j + 1),
            Role::LogicalZ(j) => write!(f, "logical_z({})", j + 1),
            Role::EncodedInput => write!(f, "encoded_input"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StabilizerTable {
    dim: Dim,
    n_qudits: usize,
    rows: Vec<PauliOperator>,
    roles: Vec<Role>,
}

/// Output of [`StabilizerTable::gauss_jordan`]: the reduced table together with
/// the pivot column of every row.
#[derive(Clone, Debug)]
pub struct RowEchelon {
    pub table: StabilizerTable,
    pub pivots: Vec<Column>,
}

/// Result of comparing the groups generated by two tables.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct GroupComparison {
    /// Same group up to phases of the generators.
    pub equal: bool,
    /// Same group including phases.
    pub phases_match: bool,
}

#[derive(Clone, Debug)]
pub struct Measurement {
    pub table: StabilizerTable,
    pub deterministic: bool,
    /// Exponent `k` of the observed eigenvalue `ω^k`.
    pub outcome: u32,
}

pub(crate) fn check_rows(dim: Dim, n: usize, rows: &[PauliOperator]) -> Result<()> {
    for r in rows {
        if r.dim() != dim {
            return Err(shape_err(format!("d={dim}"), format!("d={}", r.dim())));
        }
        if r.n_qudits() != n {
            return Err(shape_err(format!("{n} qudits"), format!("{} qudits", r.n_qudits())));
        }
    }
    Ok(())
}

/// Rank of the symplectic exponent matrix of `rows` over `Z_d` (phases ignored).
pub fn rank(rows: &[PauliOperator]) -> Result<usize> {
    let Some(first) = rows.first() else {
        return Ok(0);
    };
    check_rows(first.dim(), first.n_qudits(), rows)?;
    Ok(rank_on(rows, &(0..first.n_qudits()).collect::<Vec<_>>()))
}

pub fn is_independent(rows: &[PauliOperator]) -> Result<bool> {
    Ok(rank(rows)? == rows.len())
}

/// Rank of the rows restricted to the given qudits.
pub(crate) fn rank_on(rows: &[PauliOperator], qudits: &[usize]) -> usize {
    let Some(first) = rows.first() else {
        return 0;
    };
    let mat = rows
        .iter()
        .map(|r| {
            qudits
                .iter()
                .flat_map(|&q| [r.x()[q], r.z()[q]])
                .collect::<Vec<u32>>()
        })
        .collect();
    rank_mod(mat, first.dim())
}

/// Gauss-Jordan elimination on actual operators, so that every output row is
/// a product of powers of input rows with its phase tracked. Only the listed
/// columns are used as pivots. Returns the nonzero reduced rows (in pivot
/// order) and their pivots, followed by the rows that reduced to a pure phase.
pub(crate) fn row_reduce(
    mut rows: Vec<PauliOperator>,
    cols: &[Column],
) -> (Vec<PauliOperator>, Vec<Column>, Vec<PauliOperator>) {
    let Some(dim) = rows.first().map(|r| r.dim()) else {
        return (rows, Vec::new(), Vec::new());
    };
    let mut pivots = Vec::new();
    let mut r = 0;
    for &c in cols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| rows[i].exponent(c) != 0) else {
            continue;
        };
        rows.swap(r, p);
        let lead = rows[r].exponent(c);
        if lead != 1 {
            rows[r] = rows[r].power(dim.inv(lead) as u64);
        }
        for i in 0..rows.len() {
            if i == r {
                continue;
            }
            let v = rows[i].exponent(c);
            if v != 0 {
                let factor = rows[r].power(dim.neg(v) as u64);
                rows[i] = rows[i].mul_unchecked(&factor);
            }
        }
        pivots.push(c);
        r += 1;
    }
    let rest = rows.split_off(r);
    (rows, pivots, rest)
}

/// Reduces `op` against a reduced basis. The result equals `op` times an
/// element of the generated group and is zero on every pivot column.
pub(crate) fn reduce_against(
    basis: &[PauliOperator],
    pivots: &[Column],
    op: &PauliOperator,
) -> PauliOperator {
    let dim = op.dim();
    let mut op = op.clone();
    for (row, &c) in basis.iter().zip(pivots) {
        let v = op.exponent(c);
        if v != 0 {
            op = op.mul_unchecked(&row.power(dim.neg(v) as u64));
        }
    }
    op
}

fn interleaved(order: &[usize]) -> Vec<Column> {
    order.iter().flat_map(|&q| [Column::X(q), Column::Z(q)]).collect()
}

impl StabilizerTable {
    /// Builds a table of stabiliser rows. Rows must commute pairwise, be
    /// independent, and satisfy `g^d = I`.
    pub fn new(dim: Dim, n_qudits: usize, rows: Vec<PauliOperator>) -> Result<Self> {
        let roles = vec![Role::Stabilizer; rows.len()];
        Self::with_roles(dim, n_qudits, rows, roles)
    }

    /// Builds a table with explicit roles. Stabiliser-tagged rows must commute
    /// with each other and all rows must be independent.
    pub fn with_roles(dim: Dim, n_qudits: usize, rows: Vec<PauliOperator>, roles: Vec<Role>) -> Result<Self> {
        if roles.len() != rows.len() {
            return Err(shape_err(format!("{} roles", rows.len()), roles.len()));
        }
        check_rows(dim, n_qudits, &rows)?;
        let table = StabilizerTable {
            dim,
            n_qudits,
            rows,
            roles,
        };
        table.validate()?;
        Ok(table)
    }

    pub(crate) fn from_parts_unchecked(dim: Dim, n_qudits: usize, rows: Vec<PauliOperator>, roles: Vec<Role>) -> Self {
        StabilizerTable {
            dim,
            n_qudits,
            rows,
            roles,
        }
    }

    pub fn empty(dim: Dim, n_qudits: usize) -> Self {
        Self::from_parts_unchecked(dim, n_qudits, Vec::new(), Vec::new())
    }

    fn validate(&self) -> Result<()> {
        let stabs: Vec<&PauliOperator> = self.stabilizer_rows().collect();
        for (i, a) in stabs.iter().enumerate() {
            if !a.is_stabilizer_compatible() {
                return Err(Error::Invalid(format!("generator {a} does not satisfy g^d = I")));
            }
            for b in &stabs[i + 1..] {
                if a.symplectic_unchecked(b) != 0 {
                    return Err(Error::Invalid(format!("generators {a} and {b} do not commute")));
                }
            }
        }
        if rank(&self.rows)? != self.rows.len() {
            return Err(Error::Invalid("rows are not independent".into()));
        }
        Ok(())
    }

    #[inline]
    pub fn dim(&self) -> Dim {
        self.dim
    }

    #[inline]
    pub fn n_qudits(&self) -> usize {
        self.n_qudits
    }

    #[inline]
    pub fn rows(&self) -> &[PauliOperator] {
        &self.rows
    }

    #[inline]
    pub fn roles(&self) -> &[Role] {
        &self.roles
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn stabilizer_rows(&self) -> impl Iterator<Item = &PauliOperator> {
        self.rows
            .iter()
            .zip(&self.roles)
            .filter(|(_, r)| !matches!(r, Role::LogicalX(_) | Role::LogicalZ(_)))
            .map(|(p, _)| p)
    }

    /// A pure state: `n` commuting independent generators.
    pub fn is_pure_state(&self) -> bool {
        self.rows.len() == self.n_qudits && self.roles.iter().all(|r| !matches!(r, Role::LogicalX(_) | Role::LogicalZ(_)))
    }

    pub fn rank(&self) -> usize {
        rank_on(&self.rows, &(0..self.n_qudits).collect::<Vec<_>>())
    }

    /// Rank of the rows restricted to `qudits`.
    pub fn rank_on(&self, qudits: &[usize]) -> usize {
        rank_on(&self.rows, qudits)
    }

    fn check_op(&self, op: &PauliOperator) -> Result<()> {
        check_rows(self.dim, self.n_qudits, std::slice::from_ref(op))
    }

    fn check_qudits(&self, qudits: &[usize]) -> Result<()> {
        let mut seen = vec![false; self.n_qudits];
        for &q in qudits {
            if q >= self.n_qudits || seen[q] {
                return Err(Error::Invalid(format!("qudit index {q} out of range or repeated")));
            }
            seen[q] = true;
        }
        Ok(())
    }

    /// Reduced row echelon form with the qudit blocks visited in `qudit_order`
    /// (within a block, the `X` column precedes the `Z` column). The generated
    /// group is unchanged; all output rows are tagged as stabilisers.
    pub fn gauss_jordan(&self, qudit_order: &[usize]) -> Result<RowEchelon> {
        self.check_qudits(qudit_order)?;
        if qudit_order.len() != self.n_qudits {
            return Err(shape_err(
                format!("permutation of {} qudits", self.n_qudits),
                qudit_order.len(),
            ));
        }
        let (rows, pivots, rest) = row_reduce(self.rows.clone(), &interleaved(qudit_order));
        debug_assert!(rest.is_empty(), "table rows are independent");
        let roles = vec![Role::Stabilizer; rows.len()];
        Ok(RowEchelon {
            table: Self::from_parts_unchecked(self.dim, self.n_qudits, rows, roles),
            pivots,
        })
    }

    /// Deterministic representative of the generated group: reduced row
    /// echelon form with all `X` columns before all `Z` columns. Since the
    /// group contains at most one element per exponent vector, the phases of
    /// the canonical rows are fixed by the group itself.
    pub fn canonical_form(&self) -> StabilizerTable {
        let cols: Vec<Column> = (0..self.n_qudits)
            .map(Column::X)
            .chain((0..self.n_qudits).map(Column::Z))
            .collect();
        let (rows, _, _) = row_reduce(self.rows.clone(), &cols);
        let roles = vec![Role::Stabilizer; rows.len()];
        Self::from_parts_unchecked(self.dim, self.n_qudits, rows, roles)
    }

    pub fn group_equal(&self, other: &StabilizerTable) -> Result<GroupComparison> {
        if self.dim != other.dim || self.n_qudits != other.n_qudits {
            return Err(shape_err(
                format!("d={} n={}", self.dim, self.n_qudits),
                format!("d={} n={}", other.dim, other.n_qudits),
            ));
        }
        let a = self.canonical_form();
        let b = other.canonical_form();
        let equal = a.rows.len() == b.rows.len()
            && a.rows.iter().zip(&b.rows).all(|(p, q)| p.x() == q.x() && p.z() == q.z());
        let phases_match = equal && a.rows == b.rows;
        Ok(GroupComparison { equal, phases_match })
    }

    /// If `op` lies in the generated group up to a phase, returns the phase
    /// exponent `c` (in phase units) with `op = unit^c * g` for some group
    /// element `g`.
    pub fn membership_phase(&self, op: &PauliOperator) -> Result<Option<u32>> {
        self.check_op(op)?;
        let (basis, pivots, _) = row_reduce(self.rows.clone(), &interleaved(&(0..self.n_qudits).collect::<Vec<_>>()));
        let residue = reduce_against(&basis, &pivots, op);
        Ok(residue.is_trivial().then(|| residue.phase_exp()))
    }

    pub fn contains_up_to_phase(&self, op: &PauliOperator) -> Result<bool> {
        Ok(self.membership_phase(op)?.is_some())
    }

    /// Measures `observable` and postselects the outcome `ω^outcome_exp`.
    ///
    /// Follows the three-case update rule: a member of the group leaves the
    /// table unchanged; a commuting independent observable is appended; otherwise
    /// the first non-commuting row is replaced by the observable and every
    /// other non-commuting row is multiplied by the power of the removed row
    /// that restores commutation.
    pub fn measure(&self, observable: &PauliOperator, outcome_exp: u32) -> Result<Measurement> {
        self.measure_impl(observable, Some(outcome_exp % self.dim.get()), &mut || 0)
    }

    /// As [`measure`](Self::measure), drawing non-deterministic outcomes uniformly.
    pub fn measure_sampled<R: Rng + ?Sized>(&self, observable: &PauliOperator, rng: &mut R) -> Result<Measurement> {
        let d = self.dim.get();
        self.measure_impl(observable, None, &mut || rng.gen_range(0..d))
    }

    fn measure_impl(
        &self,
        observable: &PauliOperator,
        requested: Option<u32>,
        draw: &mut dyn FnMut() -> u32,
    ) -> Result<Measurement> {
        self.check_op(observable)?;
        if !observable.is_stabilizer_compatible() {
            return Err(Error::Invalid(format!("observable {observable} does not satisfy O^d = I")));
        }
        let dim = self.dim;
        let s: Vec<u32> = self.rows.iter().map(|r| observable.symplectic_unchecked(r)).collect();
        let stamped = |k: u32| observable.times_omega(dim.neg(k));

        let Some(first) = s.iter().position(|&v| v != 0) else {
            if let Some(units) = self.membership_phase(observable)? {
                let forced = units / dim.omega_units();
                if let Some(k) = requested {
                    if k != forced {
                        return Err(Error::Contradiction { requested: k, forced });
                    }
                }
                return Ok(Measurement {
                    table: self.clone(),
                    deterministic: true,
                    outcome: forced,
                });
            }
            let k = requested.unwrap_or_else(&mut *draw);
            let mut table = self.clone();
            table.rows.push(stamped(k));
            table.roles.push(Role::Stabilizer);
            return Ok(Measurement {
                table,
                deterministic: false,
                outcome: k,
            });
        };

        let k = requested.unwrap_or_else(draw);
        let removed = self.rows[first].clone();
        let inv = dim.inv(s[first]);
        let mut table = self.clone();
        for (i, &si) in s.iter().enumerate() {
            if i == first || si == 0 {
                continue;
            }
            let e = dim.neg(dim.mul(si, inv));
            table.rows[i] = table.rows[i].mul_unchecked(&removed.power(e as u64));
        }
        table.rows[first] = stamped(k);
        table.roles[first] = Role::Stabilizer;
        Ok(Measurement {
            table,
            deterministic: false,
            outcome: k,
        })
    }

    /// Splits the generated group into the part supported inside `region` and
    /// the remaining generators. Returns `(inside, rest)`, both reduced.
    pub fn localize(&self, region: &[usize]) -> Result<(Vec<PauliOperator>, Vec<PauliOperator>)> {
        self.check_qudits(region)?;
        let mut order: Vec<usize> = (0..self.n_qudits).filter(|q| !region.contains(q)).collect();
        let outside = order.len();
        order.extend_from_slice(region);
        let ech = self.gauss_jordan(&order)?;
        let mut inside = Vec::new();
        let mut rest = Vec::new();
        for (row, piv) in ech.table.rows.into_iter().zip(ech.pivots) {
            let pos = order.iter().position(|&q| q == piv.qudit()).unwrap();
            if pos >= outside {
                inside.push(row);
            } else {
                rest.push(row);
            }
        }
        Ok((inside, rest))
    }

    /// Removes `qudits`, which must be in a pure state uncorrelated with the
    /// rest. Generators supported on them are deleted and their columns erased.
    pub fn trace_out(&self, qudits: &[usize]) -> Result<StabilizerTable> {
        self.check_qudits(qudits)?;
        let (inside, rest) = self.localize(qudits)?;
        if inside.len() != qudits.len() {
            return Err(Error::Entangled(qudits.to_vec()));
        }
        let inside_cols = interleaved(qudits);
        let (basis, pivots, _) = row_reduce(inside, &inside_cols);
        let keep: Vec<usize> = (0..self.n_qudits).filter(|q| !qudits.contains(q)).collect();
        let mut rows = Vec::with_capacity(rest.len());
        for row in rest {
            let cleared = reduce_against(&basis, &pivots, &row);
            if qudits.iter().any(|&q| cleared.acts_on(q)) {
                return Err(Error::Entangled(qudits.to_vec()));
            }
            rows.push(cleared.restrict(&keep));
        }
        let roles = vec![Role::Stabilizer; rows.len()];
        Ok(Self::from_parts_unchecked(self.dim, keep.len(), rows, roles))
    }

    /// `self ⊗ other` on `n_self + n_other` qudits.
    pub fn tensor(&self, other: &StabilizerTable) -> Result<StabilizerTable> {
        if self.dim != other.dim {
            return Err(shape_err(format!("d={}", self.dim), format!("d={}", other.dim)));
        }
        let n = self.n_qudits + other.n_qudits;
        let left: Vec<usize> = (0..self.n_qudits).collect();
        let right: Vec<usize> = (self.n_qudits..n).collect();
        let mut rows: Vec<PauliOperator> = self.rows.iter().map(|r| r.embed(n, &left)).collect();
        rows.extend(other.rows.iter().map(|r| r.embed(n, &right)));
        let mut roles = self.roles.clone();
        roles.extend_from_slice(&other.roles);
        Ok(Self::from_parts_unchecked(self.dim, n, rows, roles))
    }

    /// Reorders qudits: output qudit `i` is input qudit `order[i]`.
    pub fn permute_qudits(&self, order: &[usize]) -> Result<StabilizerTable> {
        self.check_qudits(order)?;
        if order.len() != self.n_qudits {
            return Err(shape_err(format!("permutation of {} qudits", self.n_qudits), order.len()));
        }
        let rows = self.rows.iter().map(|r| r.restrict(order)).collect();
        Ok(Self::from_parts_unchecked(self.dim, self.n_qudits, rows, self.roles.clone()))
    }

    /// Appends rows, re-validating the result.
    pub fn extended(&self, rows: impl IntoIterator<Item = (PauliOperator, Role)>) -> Result<StabilizerTable> {
        let mut all_rows = self.rows.clone();
        let mut roles = self.roles.clone();
        for (r, role) in rows {
            all_rows.push(r);
            roles.push(role);
        }
        Self::with_roles(self.dim, self.n_qudits, all_rows, roles)
    }
}

impl fmt::Display for StabilizerTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (row, role) in self.rows.iter().zip(&self.roles) {
            writeln!(f, "{}  # {}", render_pauli(row), role)?;
        }
        Ok(())
    }
}
