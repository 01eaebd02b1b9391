//! Entanglement entropy of stabiliser states and Ryu-Takayanagi checks on
//! tensor networks.

use rayon::prelude::*;
use serde::Serialize;

use crate::concat::encode_through;
use crate::error::{shape_err, Error, Result};
use crate::network::{InputFamily, Leg, TensorNetwork};
use crate::pauli::PauliOperator;
use crate::tableau::StabilizerTable;

fn check_region(table: &StabilizerTable, region: &[usize]) -> Result<()> {
    let n = table.n_qudits();
    if region.iter().any(|&q| q >= n) {
        return Err(Error::Invalid(format!("region {region:?} out of range for {n} qudits")));
    }
    let mut sorted = region.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != region.len() {
        return Err(Error::Invalid(format!("region {region:?} repeats a qudit")));
    }
    Ok(())
}

/// Entropy of `region` in units of `log2 d`: `|B| - k_B`, where `k_B` counts
/// independent group elements supported inside `region`. Valid for mixed
/// stabiliser states as well.
pub fn entanglement_rank(table: &StabilizerTable, region: &[usize]) -> Result<usize> {
    check_region(table, region)?;
    let complement: Vec<usize> = (0..table.n_qudits()).filter(|q| !region.contains(q)).collect();
    let local = table.len() - table.rank_on(&complement);
    Ok(region.len() - local)
}

/// Von Neumann entropy in bits of a pure stabiliser state reduced to `region`.
pub fn stabilizer_entropy(table: &StabilizerTable, region: &[usize]) -> Result<f64> {
    if !table.is_pure_state() {
        return Err(Error::Invalid(format!(
            "entropy needs a pure state; {} generators on {} qudits",
            table.len(),
            table.n_qudits()
        )));
    }
    if region.is_empty() || region.len() >= table.n_qudits() {
        return Err(Error::Invalid("region must be a nonempty proper subset".into()));
    }
    let r = entanglement_rank(table, region)?;
    Ok(r as f64 * (table.dim().get() as f64).log2())
}

/// Counts non-commuting pairs among the rows projected onto `region`, after
/// pairing them up by row multiplication. For a pure qubit state the count
/// equals the entropy of `region` in bits.
pub fn pairing_entropy(table: &StabilizerTable, region: &[usize]) -> Result<usize> {
    check_region(table, region)?;
    if table.dim().get() != 2 {
        return Err(Error::Unsupported("the pairing count is defined for qubits".into()));
    }
    let mut rows: Vec<PauliOperator> = table.rows().iter().map(|r| r.restrict(region)).collect();
    let anticommute = |a: &PauliOperator, b: &PauliOperator| a.symplectic_unchecked(b) != 0;
    let mut pairs = 0;
    while let Some((i, j)) = (0..rows.len())
        .flat_map(|i| (i + 1..rows.len()).map(move |j| (i, j)))
        .find(|&(i, j)| anticommute(&rows[i], &rows[j]))
    {
        let (gi, gj) = (rows[i].clone(), rows[j].clone());
        for k in 0..rows.len() {
            if k != i && k != j && anticommute(&rows[k], &gi) {
                rows[k] = rows[k].mul_unchecked(&gj);
            }
        }
        for k in 0..rows.len() {
            if k != i && k != j && anticommute(&rows[k], &gj) {
                rows[k] = rows[k].mul_unchecked(&gi);
            }
        }
        rows.remove(j);
        rows.remove(i);
        pairs += 1;
    }
    Ok(pairs)
}

/// Rows of the table brought to paired form on `region` and projected onto
/// it: anticommuting pairs first, then the remaining rows.
pub fn paired_projection(table: &StabilizerTable, region: &[usize]) -> Result<Vec<PauliOperator>> {
    check_region(table, region)?;
    let mut full: Vec<PauliOperator> = table.rows().to_vec();
    let proj = |p: &PauliOperator| p.restrict(region);
    let anticommute = |a: &PauliOperator, b: &PauliOperator| proj(a).symplectic_unchecked(&proj(b)) != 0;
    let mut paired = Vec::new();
    loop {
        let found = (0..full.len())
            .flat_map(|i| (i + 1..full.len()).map(move |j| (i, j)))
            .find(|&(i, j)| anticommute(&full[i], &full[j]));
        let Some((i, j)) = found else { break };
        let (gi, gj) = (full[i].clone(), full[j].clone());
        let s_ij = proj(&gi).symplectic_unchecked(&proj(&gj));
        let dim = table.dim();
        let inv = dim.inv(s_ij);
        // clear every other row's pairing with gi using gj and vice versa
        for k in 0..full.len() {
            if k == i || k == j {
                continue;
            }
            let with_i = proj(&full[k]).symplectic_unchecked(&proj(&gi));
            if with_i != 0 {
                let e = dim.mul(with_i, inv);
                full[k] = full[k].mul_unchecked(&gj.power(e as u64));
            }
            let with_j = proj(&full[k]).symplectic_unchecked(&proj(&gj));
            if with_j != 0 {
                let e = dim.neg(dim.mul(with_j, inv));
                full[k] = full[k].mul_unchecked(&gi.power(e as u64));
            }
        }
        paired.push(gi);
        paired.push(gj);
        full.remove(j);
        full.remove(i);
    }
    paired.extend(full);
    Ok(paired.iter().map(proj).collect())
}

/// A connected region `B` of the cyclically ordered boundary; `A` is the rest.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RegionCut {
    region: Vec<usize>,
    boundary_size: usize,
}

impl RegionCut {
    /// `region` must be a nonempty proper subset that is contiguous in cyclic order.
    pub fn new(region: Vec<usize>, boundary_size: usize) -> Result<Self> {
        let mut sorted = region.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.is_empty() || sorted.len() >= boundary_size || sorted.len() != region.len() {
            return Err(Error::Invalid("region must be a nonempty proper subset without repeats".into()));
        }
        if *sorted.last().unwrap() >= boundary_size {
            return Err(Error::Invalid(format!("region {region:?} out of range for {boundary_size} qudits")));
        }
        let inside = |q: usize| sorted.binary_search(&q).is_ok();
        let starts = (0..boundary_size)
            .filter(|&q| inside(q) && !inside((q + boundary_size - 1) % boundary_size))
            .count();
        if starts != 1 {
            return Err(Error::Invalid(format!("region {region:?} is not connected")));
        }
        Ok(RegionCut {
            region: sorted,
            boundary_size,
        })
    }

    /// `B = {start, ..., boundary_size}` with `start` counted from 1.
    pub fn suffix(start: usize, boundary_size: usize) -> Result<Self> {
        if start < 2 || start > boundary_size {
            return Err(Error::Invalid(format!("start must be in 2..={boundary_size}, got {start}")));
        }
        Self::new((start - 1..boundary_size).collect(), boundary_size)
    }

    pub fn region(&self) -> &[usize] {
        &self.region
    }

    /// First qudit of `B` in cyclic order.
    pub fn start(&self) -> usize {
        let n = self.boundary_size;
        *self.region.iter().find(|&&q| !self.contains((q + n - 1) % n)).expect("connected region")
    }

    pub fn complement(&self) -> Vec<usize> {
        (0..self.boundary_size).filter(|q| !self.contains(*q)).collect()
    }

    pub fn contains(&self, q: usize) -> bool {
        self.region.binary_search(&q).is_ok()
    }

    pub fn boundary_size(&self) -> usize {
        self.boundary_size
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CutObjective {
    Gamma,
    GammaPlusP,
}

/// A bulk cut given by the side of every node.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CutWitness {
    /// Nodes on the `B` side.
    pub b_nodes: Vec<usize>,
    /// Contracted and boundary legs crossing the cut.
    pub cut_legs: Vec<Leg>,
    /// Logical legs on the `A` and `B` sides.
    pub logical_a: Vec<usize>,
    pub logical_b: Vec<usize>,
}

impl CutWitness {
    pub fn gamma(&self) -> usize {
        self.cut_legs.len()
    }

    /// Inputs that may carry entanglement across the cut: the smaller side.
    pub fn inputs(&self) -> usize {
        self.logical_a.len().min(self.logical_b.len())
    }

    pub fn separates(&self, a: usize, b: usize) -> bool {
        self.logical_a.contains(&a) != self.logical_a.contains(&b)
    }
}

/// Every assignment of nodes to the two sides of `cut`. A boundary leg whose
/// node sits on the other side from its region is cut, as is every edge
/// joining nodes on different sides.
pub fn enumerate_cuts(network: &TensorNetwork, cut: &RegionCut) -> Result<Vec<CutWitness>> {
    let n_nodes = network.nodes().len();
    if cut.boundary_size() != network.boundary_legs().len() {
        return Err(shape_err(network.boundary_legs().len(), cut.boundary_size()));
    }
    if n_nodes >= 24 {
        return Err(Error::TooLarge(1u128 << n_nodes));
    }
    let witnesses = (0u32..1 << n_nodes)
        .map(|mask| {
            let on_b = |v: usize| mask >> v & 1 == 1;
            let mut cut_legs: Vec<Leg> = network
                .edges()
                .iter()
                .filter(|e| on_b(e.from.node) != on_b(e.to.node))
                .map(|e| e.from)
                .collect();
            cut_legs.extend(
                network
                    .boundary_legs()
                    .iter()
                    .enumerate()
                    .filter(|&(i, l)| on_b(l.node) != cut.contains(i))
                    .map(|(_, l)| *l),
            );
            let (logical_b, logical_a): (Vec<usize>, Vec<usize>) =
                (0..network.logical_legs().len()).partition(|&j| on_b(network.logical_legs()[j].node));
            CutWitness {
                b_nodes: (0..n_nodes).filter(|&v| on_b(v)).collect(),
                cut_legs,
                logical_a,
                logical_b,
            }
        })
        .collect();
    Ok(witnesses)
}

fn objective_value(w: &CutWitness, objective: CutObjective) -> usize {
    match objective {
        CutObjective::Gamma => w.gamma(),
        CutObjective::GammaPlusP => w.gamma() + w.inputs(),
    }
}

/// Minimum of the objective over all bulk cuts, with the first minimiser in
/// enumeration order.
pub fn min_cut(network: &TensorNetwork, cut: &RegionCut, objective: CutObjective) -> Result<(usize, CutWitness)> {
    let all = enumerate_cuts(network, cut)?;
    let best = all
        .into_iter()
        .min_by_key(|w| objective_value(w, objective))
        .expect("at least one assignment");
    Ok((objective_value(&best, objective), best))
}

/// All cuts attaining the minimum of the objective.
pub fn minimal_cuts(network: &TensorNetwork, cut: &RegionCut, objective: CutObjective) -> Result<Vec<CutWitness>> {
    let all = enumerate_cuts(network, cut)?;
    let best = all.iter().map(|w| objective_value(w, objective)).min().unwrap_or(0);
    Ok(all.into_iter().filter(|w| objective_value(w, objective) == best).collect())
}

#[derive(Clone, Debug, Serialize)]
pub struct EntropyReport {
    pub input: String,
    pub cut: RegionCut,
    pub entropy_bits: f64,
    pub min_gamma: usize,
    pub min_gamma_plus_p: usize,
    /// `log2(d) * min |γ|`.
    pub product_bound: f64,
    /// `log2(d) * min (|γ| + |P|)`.
    pub general_bound: f64,
    pub saturated: bool,
}

impl EntropyReport {
    /// First boundary qudit of `B`, counted from 1.
    pub fn s_b(&self) -> usize {
        self.cut.start() + 1
    }
}

fn report(network: &TensorNetwork, boundary: &StabilizerTable, label: &str, cut: &RegionCut) -> Result<EntropyReport> {
    let log_d = (network.dim().get() as f64).log2();
    let entropy_bits = stabilizer_entropy(boundary, cut.region())?;
    let (min_gamma, _) = min_cut(network, cut, CutObjective::Gamma)?;
    let (min_gamma_plus_p, _) = min_cut(network, cut, CutObjective::GammaPlusP)?;
    let general_bound = log_d * min_gamma_plus_p as f64;
    Ok(EntropyReport {
        input: label.to_string(),
        cut: cut.clone(),
        entropy_bits,
        min_gamma,
        min_gamma_plus_p,
        product_bound: log_d * min_gamma as f64,
        general_bound,
        saturated: (entropy_bits - general_bound).abs() < ENTROPY_TOLERANCE,
    })
}

/// Entropies are integer multiples of `log2 d`; this only absorbs rounding.
pub const ENTROPY_TOLERANCE: f64 = 1e-9;

/// Entropy of the boundary state for `input` across `cut`, with both bounds.
pub fn rt_check(network: &TensorNetwork, input: &StabilizerTable, label: &str, cut: &RegionCut) -> Result<EntropyReport> {
    let boundary = network.contract_with_input(input)?;
    report(network, &boundary, label, cut)
}

/// Reports for every family and every `B = {s_B, ..., N}` with `s_B` in
/// `starts`, ordered by family and then by `s_B`.
pub fn entropy_scan(
    network: &TensorNetwork,
    families: &[InputFamily],
    starts: impl IntoIterator<Item = usize>,
) -> Result<Vec<EntropyReport>> {
    let n = network.boundary_legs().len();
    let cuts = starts
        .into_iter()
        .map(|s| RegionCut::suffix(s, n))
        .collect::<Result<Vec<_>>>()?;
    let code = network.contract()?;
    let embedding: Vec<usize> = (0..network.logical_legs().len()).collect();
    let boundaries = families
        .iter()
        .map(|f| Ok((f.name(), encode_through(&code, &f.table(), &embedding)?)))
        .collect::<Result<Vec<_>>>()?;
    boundaries
        .iter()
        .flat_map(|b| cuts.iter().map(move |c| (b, c)))
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|((label, boundary), cut)| report(network, boundary, label, cut))
        .collect()
}

pub const CSV_HEADER: &str = "input,s_B,entropy_bits,min_gamma,min_gamma_plus_P,bound_bits,saturated";

pub fn reports_to_csv(reports: &[EntropyReport]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in reports {
        out.push_str(&format!(
            "{},{},{},{},{},{},{}\n",
            r.input,
            r.s_b(),
            r.entropy_bits,
            r.min_gamma,
            r.min_gamma_plus_p,
            r.general_bound,
            r.saturated
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ame::{ghz, six_qubit_ame};
    use crate::network::build_pentagon_network;
    use crate::pauli::{parse_pauli, Dim};

    fn table(rows: &[&str]) -> StabilizerTable {
        let ops: Vec<PauliOperator> = rows.iter().map(|s| parse_pauli(s, Dim::QUBIT).unwrap()).collect();
        StabilizerTable::new(Dim::QUBIT, ops[0].n_qudits(), ops).unwrap()
    }

    #[test]
    fn bell_pair() {
        let t = table(&["XX", "ZZ"]);
        assert_eq!(stabilizer_entropy(&t, &[1]).unwrap(), 1.0);
        assert_eq!(pairing_entropy(&t, &[1]).unwrap(), 1);
    }

    #[test]
    fn ame_halves() {
        let t = six_qubit_ame();
        for b in [[0, 1, 2], [3, 4, 5], [0, 2, 4]] {
            assert_eq!(stabilizer_entropy(&t, &b).unwrap(), 3.0);
            assert_eq!(pairing_entropy(&t, &b).unwrap(), 3);
        }
    }

    #[test]
    fn ghz_cuts() {
        let t = ghz(5);
        for b in [vec![0], vec![1, 2], vec![0, 3, 4]] {
            assert_eq!(entanglement_rank(&t, &b).unwrap(), 1);
            assert_eq!(pairing_entropy(&t, &b).unwrap(), 1);
        }
    }

    #[test]
    fn paired_form() {
        let t = six_qubit_ame();
        let proj = paired_projection(&t, &[3, 4, 5]).unwrap();
        assert_eq!(proj.iter().filter(|p| !p.is_trivial()).count(), 6);
        for k in 0..3 {
            assert_ne!(proj[2 * k].symplectic_unchecked(&proj[2 * k + 1]), 0);
        }
    }

    #[test]
    fn rejects_bad_regions() {
        let t = table(&["XX", "ZZ"]);
        assert!(stabilizer_entropy(&t, &[]).is_err());
        assert!(stabilizer_entropy(&t, &[0, 1]).is_err());
        assert!(stabilizer_entropy(&t, &[2]).is_err());
        assert!(stabilizer_entropy(&table(&["ZZ"]), &[0]).is_err());
    }

    #[test]
    fn region_cuts() {
        assert!(RegionCut::new(vec![18, 19, 0], 20).is_ok());
        assert_eq!(RegionCut::new(vec![19, 0, 1], 20).unwrap().start(), 19);
        assert!(RegionCut::new(vec![1, 3], 20).is_err());
        assert!(RegionCut::new(vec![], 20).is_err());
        assert!(RegionCut::new((0..20).collect(), 20).is_err());
        assert!(RegionCut::suffix(1, 20).is_err());
        assert_eq!(RegionCut::suffix(18, 20).unwrap().region(), &[17, 18, 19]);
    }

    #[test]
    fn single_tile_cuts() {
        let net = build_pentagon_network(1).unwrap();
        for size in 1..5 {
            let cut = RegionCut::new((0..size).collect(), 5).unwrap();
            let (g, _) = min_cut(&net, &cut, CutObjective::Gamma).unwrap();
            assert_eq!(g, size.min(5 - size));
            let (gp, _) = min_cut(&net, &cut, CutObjective::GammaPlusP).unwrap();
            assert!(gp >= g);
        }
    }

    #[test]
    fn single_tile_rt() {
        let net = build_pentagon_network(1).unwrap();
        let zero = table(&["Z"]);
        let cut = RegionCut::new(vec![3, 4], 5).unwrap();
        let r = rt_check(&net, &zero, "zero", &cut).unwrap();
        assert_eq!(r.entropy_bits, 2.0);
        assert_eq!(r.min_gamma, 2);
        assert!(r.saturated);
    }

    #[test]
    fn csv_layout() {
        let net = build_pentagon_network(2).unwrap();
        let reports = entropy_scan(&net, &[InputFamily::Ame], [18, 20]).unwrap();
        let csv = reports_to_csv(&reports);
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], CSV_HEADER);
        assert_eq!(lines[1], "ame,18,3,2,3,3,true");
        assert_eq!(lines[2], "ame,20,1,1,1,1,true");
    }
}
