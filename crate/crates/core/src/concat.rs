//! Entanglement swapping with AME states and the equivalent logical-operator
//! substitution (code concatenation).

use itertools::Itertools;

use crate::ame::{is_ame, CodeSpec, LogicalPair};
use crate::error::{shape_err, Error, Result};
use crate::pauli::PauliOperator;
use crate::tableau::{Role, StabilizerTable};

/// Bell measurements between qudits of `left` and qudits of the AME state `right`.
#[derive(Clone, Debug)]
pub struct SwapPlan {
    pub left: StabilizerTable,
    pub right: StabilizerTable,
    /// `(left qudit, right qudit)` pairs.
    pub pairs: Vec<(usize, usize)>,
}

impl SwapPlan {
    pub fn new(left: StabilizerTable, right: StabilizerTable, pairs: Vec<(usize, usize)>) -> Result<Self> {
        let plan = SwapPlan { left, right, pairs };
        plan.validate()?;
        Ok(plan)
    }

    pub fn validate(&self) -> Result<()> {
        if self.left.dim() != self.right.dim() {
            return Err(shape_err(format!("d={}", self.left.dim()), format!("d={}", self.right.dim())));
        }
        let (nl, nr) = (self.left.n_qudits(), self.right.n_qudits());
        let p = self.pairs.len();
        if p > nr / 2 || p > nl {
            return Err(Error::Invalid(format!(
                "{p} pairs exceed the bound for {nl} left and {nr} right qudits"
            )));
        }
        let lefts: Vec<usize> = self.pairs.iter().map(|p| p.0).collect();
        let rights: Vec<usize> = self.pairs.iter().map(|p| p.1).collect();
        if lefts.iter().any(|&l| l >= nl) || rights.iter().any(|&r| r >= nr) {
            return Err(Error::Invalid(format!("pair index out of range in {:?}", self.pairs)));
        }
        if lefts.iter().duplicates().next().is_some() || rights.iter().duplicates().next().is_some() {
            return Err(Error::Invalid(format!("pairs {:?} are not disjoint", self.pairs)));
        }
        if !is_ame(&self.right) {
            return Err(Error::NotAme("the right state of a swap must be AME".into()));
        }
        Ok(())
    }

    /// Left qudits not involved in any pair, in order.
    pub fn left_survivors(&self) -> Vec<usize> {
        (0..self.left.n_qudits()).filter(|q| !self.pairs.iter().any(|p| p.0 == *q)).collect()
    }
}

/// Measures `X_l X_r` and then `Z_l Z_r^{-1}` on every pair, postselecting the
/// given outcome exponents (all zero when `outcomes` is `None`), and traces the
/// pairs out. The result acts on the unpaired left qudits followed by the
/// unpaired right qudits, each in original order.
pub fn entanglement_swap(plan: &SwapPlan, outcomes: Option<&[(u32, u32)]>) -> Result<StabilizerTable> {
    plan.validate()?;
    let order: Vec<usize> = (0..plan.pairs.len()).collect();
    swap_in_order(plan, outcomes, &order)
}

/// As [`entanglement_swap`], processing the pairs in the order given by
/// `order` (a permutation of pair indices).
pub fn swap_in_order(plan: &SwapPlan, outcomes: Option<&[(u32, u32)]>, order: &[usize]) -> Result<StabilizerTable> {
    let p = plan.pairs.len();
    if order.len() != p || order.iter().any(|&i| i >= p) || order.iter().duplicates().next().is_some() {
        return Err(Error::Invalid(format!("{order:?} is not a permutation of the {p} pairs")));
    }
    if let Some(o) = outcomes {
        if o.len() != p {
            return Err(shape_err(p, o.len()));
        }
    }
    let dim = plan.left.dim();
    let nl = plan.left.n_qudits();
    let n = nl + plan.right.n_qudits();
    let mut table = plan.left.tensor(&plan.right)?;
    for &i in order {
        let (l, r) = plan.pairs[i];
        let (kx, kz) = outcomes.map_or((0, 0), |o| o[i]);
        let mut xx = PauliOperator::identity(dim, n);
        let mut zz = PauliOperator::identity(dim, n);
        for (q, zexp) in [(l, 1), (nl + r, dim.neg(1))] {
            xx = xx.mul_unchecked(&PauliOperator::single(dim, n, q, 1, 0));
            zz = zz.mul_unchecked(&PauliOperator::single(dim, n, q, 0, zexp));
        }
        table = table.measure(&xx, kx)?.table;
        table = table.measure(&zz, kz)?.table;
    }
    let measured: Vec<usize> = plan.pairs.iter().flat_map(|&(l, r)| [l, nl + r]).collect();
    let out = table
        .trace_out(&measured)
        .expect("Bell-measured pairs are pure and uncorrelated with the rest");
    Ok(out)
}

/// Replaces each `(qudit, slot)` of `op` by the code's logical operators: a
/// local `X^a Z^b` at `qudit` becomes `X_L^a Z_L^b` of logical `slot`. The
/// result acts on the remaining qudits of `op` in order, followed by the
/// code's physical qudits.
pub fn substitute(code: &CodeSpec, op: &PauliOperator, embedding: &[(usize, usize)]) -> Result<PauliOperator> {
    if op.dim() != code.dim() {
        return Err(shape_err(format!("d={}", code.dim()), format!("d={}", op.dim())));
    }
    check_embedding(op.n_qudits(), code.k_logical(), embedding)?;
    let dim = op.dim();
    let rest: Vec<usize> = (0..op.n_qudits()).filter(|q| !embedding.iter().any(|e| e.0 == *q)).collect();
    let mut image = PauliOperator::identity(dim, code.n_physical());
    for &(q, slot) in embedding {
        let LogicalPair { x, z } = &code.logicals()[slot];
        image = image
            .mul_unchecked(&x.power(op.x()[q] as u64))
            .mul_unchecked(&z.power(op.z()[q] as u64));
    }
    let outer = PauliOperator::new(
        dim,
        rest.iter().map(|&q| op.x()[q]).collect(),
        rest.iter().map(|&q| op.z()[q]).collect(),
        op.phase_exp(),
    )?;
    outer.tensor(&image)
}

fn check_embedding(n_qudits: usize, k_logical: usize, embedding: &[(usize, usize)]) -> Result<()> {
    let qudits = embedding.iter().map(|e| e.0);
    let slots = embedding.iter().map(|e| e.1);
    if embedding.iter().any(|&(q, s)| q >= n_qudits || s >= k_logical) {
        return Err(Error::Invalid(format!(
            "embedding {embedding:?} out of range for {n_qudits} qudits and {k_logical} logical slots"
        )));
    }
    if qudits.duplicates().next().is_some() || slots.duplicates().next().is_some() {
        return Err(Error::Invalid(format!("embedding {embedding:?} is not injective")));
    }
    Ok(())
}

/// Substitutes every row of `table`, keeping roles, and appends the code's
/// stabilisers. Rows come out as stabilisers of the code first, then the
/// images of the table rows.
pub fn substitute_table(code: &CodeSpec, table: &StabilizerTable, embedding: &[(usize, usize)]) -> Result<StabilizerTable> {
    check_embedding(table.n_qudits(), code.k_logical(), embedding)?;
    let n_rest = table.n_qudits() - embedding.len();
    let n = n_rest + code.n_physical();
    let phys: Vec<usize> = (n_rest..n).collect();
    let mut rows: Vec<PauliOperator> = code.stabilizers().iter().map(|g| g.embed(n, &phys)).collect();
    let mut roles = vec![Role::Stabilizer; rows.len()];
    for (row, role) in table.rows().iter().zip(table.roles()) {
        rows.push(substitute(code, row, embedding)?);
        roles.push(*role);
    }
    StabilizerTable::with_roles(code.dim(), n, rows, roles)
}

/// Encodes the input state through the code: input qudit `i` enters logical
/// slot `embedding[i]`. Encoded rows are tagged `encoded_input`.
pub fn encode_through(code: &CodeSpec, input: &StabilizerTable, embedding: &[usize]) -> Result<StabilizerTable> {
    if embedding.len() != input.n_qudits() {
        return Err(shape_err(input.n_qudits(), embedding.len()));
    }
    let pairs: Vec<(usize, usize)> = embedding.iter().copied().enumerate().collect();
    let t = substitute_table(code, input, &pairs)?;
    let s = code.stabilizers().len();
    let roles = t
        .roles()
        .iter()
        .enumerate()
        .map(|(i, r)| if i < s { *r } else { Role::EncodedInput })
        .collect();
    StabilizerTable::with_roles(t.dim(), t.n_qudits(), t.rows().to_vec(), roles)
}

/// Image of an operator on the logical qudits; logical qudit `j` is slot `j`.
pub fn propagate_operator(code: &CodeSpec, logical_op: &PauliOperator) -> Result<PauliOperator> {
    if logical_op.n_qudits() != code.k_logical() {
        return Err(shape_err(code.k_logical(), logical_op.n_qudits()));
    }
    let pairs: Vec<(usize, usize)> = (0..code.k_logical()).map(|j| (j, j)).collect();
    substitute(code, logical_op, &pairs)
}

/// Feeds physical qudits of `outer` into logical slots of `inner`.
///
/// The result's physical qudits are the unfed qudits of `outer` followed by
/// those of `inner`; its logical pairs are the substituted pairs of `outer`
/// followed by the unfed pairs of `inner`, each in original order.
pub fn concatenate(outer: &CodeSpec, inner: &CodeSpec, embedding: &[(usize, usize)]) -> Result<CodeSpec> {
    if outer.dim() != inner.dim() {
        return Err(shape_err(format!("d={}", outer.dim()), format!("d={}", inner.dim())));
    }
    check_embedding(outer.n_physical(), inner.k_logical(), embedding)?;
    let n_rest = outer.n_physical() - embedding.len();
    let n = n_rest + inner.n_physical();
    let phys: Vec<usize> = (n_rest..n).collect();
    let mut stabilizers = outer
        .stabilizers()
        .iter()
        .map(|g| substitute(inner, g, embedding))
        .collect::<Result<Vec<_>>>()?;
    stabilizers.extend(inner.stabilizers().iter().map(|g| g.embed(n, &phys)));
    let mut logicals = outer
        .logicals()
        .iter()
        .map(|p| {
            Ok(LogicalPair {
                x: substitute(inner, &p.x, embedding)?,
                z: substitute(inner, &p.z, embedding)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    logicals.extend(
        inner
            .logicals()
            .iter()
            .enumerate()
            .filter(|(j, _)| !embedding.iter().any(|e| e.1 == *j))
            .map(|(_, p)| LogicalPair {
                x: p.x.embed(n, &phys),
                z: p.z.embed(n, &phys),
            }),
    );
    CodeSpec::new(outer.dim(), n, stabilizers, logicals, (0..n).collect())
}
