//! Tensor networks of AME templates and their contraction into boundary codes.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::ame::{extract_code, six_qubit_ame, CodeSpec};
use crate::concat::{concatenate, encode_through, substitute};
use crate::error::{shape_err, Error, Result};
use crate::pauli::{parse_pauli, Dim, PauliOperator};
use crate::tableau::StabilizerTable;

/// A leg `leg` (0-based qudit of the template) of node `node`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Leg {
    pub node: usize,
    pub leg: usize,
}

impl Leg {
    pub const fn new(node: usize, leg: usize) -> Self {
        Leg { node, leg }
    }
}

#[derive(Clone, Debug)]
pub struct Node {
    pub id: String,
    pub template: StabilizerTable,
}

/// A contraction directed away from the origin node.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Edge {
    pub from: Leg,
    pub to: Leg,
}

#[derive(Clone, Debug)]
pub struct TensorNetwork {
    dim: Dim,
    nodes: Vec<Node>,
    edges: Vec<Edge>,
    logical_legs: Vec<Leg>,
    boundary_legs: Vec<Leg>,
}

impl TensorNetwork {
    pub fn new(
        dim: Dim,
        nodes: Vec<Node>,
        edges: Vec<Edge>,
        logical_legs: Vec<Leg>,
        boundary_legs: Vec<Leg>,
    ) -> Result<Self> {
        let net = TensorNetwork {
            dim,
            nodes,
            edges,
            logical_legs,
            boundary_legs,
        };
        net.validate()?;
        Ok(net)
    }

    pub fn dim(&self) -> Dim {
        self.dim
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn logical_legs(&self) -> &[Leg] {
        &self.logical_legs
    }

    pub fn boundary_legs(&self) -> &[Leg] {
        &self.boundary_legs
    }

    fn incoming(&self, node: usize) -> impl Iterator<Item = &Edge> {
        self.edges.iter().filter(move |e| e.to.node == node)
    }

    fn outgoing(&self, node: usize) -> impl Iterator<Item = &Edge> {
        self.edges.iter().filter(move |e| e.from.node == node)
    }

    /// Legs of `node` that carry its inputs: incoming edges in edge order,
    /// then logical legs in logical order.
    pub fn input_legs(&self, node: usize) -> Vec<usize> {
        let mut legs: Vec<usize> = self.incoming(node).map(|e| e.to.leg).collect();
        legs.extend(self.logical_legs.iter().filter(|l| l.node == node).map(|l| l.leg));
        legs
    }

    pub fn validate(&self) -> Result<()> {
        let mut seen = BTreeSet::new();
        let mut claim = |leg: Leg| -> Result<()> {
            let node = self
                .nodes
                .get(leg.node)
                .ok_or_else(|| Error::Invalid(format!("unknown node {}", leg.node)))?;
            if leg.leg >= node.template.n_qudits() {
                return Err(Error::Invalid(format!("node {} has no leg {}", node.id, leg.leg)));
            }
            if !seen.insert(leg) {
                return Err(Error::Invalid(format!("leg {} of node {} is used twice", leg.leg, node.id)));
            }
            Ok(())
        };
        for e in &self.edges {
            if e.from.node == e.to.node {
                return Err(Error::Invalid(format!("edge {e:?} is a self-loop")));
            }
            claim(e.from)?;
            claim(e.to)?;
        }
        for &l in self.logical_legs.iter().chain(&self.boundary_legs) {
            claim(l)?;
        }
        let total: usize = self.nodes.iter().map(|n| n.template.n_qudits()).sum();
        if seen.len() != total {
            return Err(Error::Invalid(format!("{} of {total} legs are unassigned", total - seen.len())));
        }
        for (i, node) in self.nodes.iter().enumerate() {
            if node.template.dim() != self.dim {
                return Err(shape_err(format!("d={}", self.dim), format!("d={}", node.template.dim())));
            }
            let inputs = self.input_legs(i).len();
            let outputs = node.template.n_qudits() - inputs;
            if inputs > outputs {
                return Err(Error::Invalid(format!(
                    "node {} has {inputs} inputs and {outputs} outputs; isometry needs inputs <= outputs",
                    node.id
                )));
            }
        }
        self.topological_order()?;
        Ok(())
    }

    /// Nodes sorted so every edge points forward; ties broken by index.
    pub fn topological_order(&self) -> Result<Vec<usize>> {
        let n = self.nodes.len();
        let mut indegree = vec![0usize; n];
        for e in &self.edges {
            indegree[e.to.node] += 1;
        }
        let mut ready: BTreeSet<usize> = (0..n).filter(|&v| indegree[v] == 0).collect();
        let mut order = Vec::with_capacity(n);
        while let Some(v) = ready.pop_first() {
            order.push(v);
            for e in self.outgoing(v) {
                indegree[e.to.node] -= 1;
                if indegree[e.to.node] == 0 {
                    ready.insert(e.to.node);
                }
            }
        }
        if order.len() != n {
            return Err(Error::Invalid("edge directions contain a cycle".into()));
        }
        Ok(order)
    }

    fn is_topological(&self, order: &[usize]) -> bool {
        let mut pos = vec![usize::MAX; self.nodes.len()];
        for (i, &v) in order.iter().enumerate() {
            if v >= pos.len() || pos[v] != usize::MAX {
                return false;
            }
            pos[v] = i;
        }
        order.len() == self.nodes.len() && self.edges.iter().all(|e| pos[e.from.node] < pos[e.to.node])
    }

    /// The boundary code: physical qudits in boundary-leg order, logical pairs
    /// in logical-leg order.
    pub fn contract(&self) -> Result<CodeSpec> {
        self.contract_in_order(&self.topological_order()?)
    }

    /// As [`contract`](Self::contract), visiting nodes in the given
    /// topological order.
    pub fn contract_in_order(&self, order: &[usize]) -> Result<CodeSpec> {
        if !self.is_topological(order) {
            return Err(Error::Invalid(format!("{order:?} is not a topological order of the network")));
        }
        let mut code = CodeSpec::new(self.dim, 0, Vec::new(), Vec::new(), Vec::new())?;
        let mut labels: Vec<Leg> = Vec::new();
        let mut logical_ids: Vec<usize> = Vec::new();
        for &v in order {
            let template = &self.nodes[v].template;
            let inputs = self.input_legs(v);
            let node_code = if inputs.is_empty() {
                let n = template.n_qudits();
                CodeSpec::new(self.dim, n, template.rows().to_vec(), Vec::new(), (0..n).collect())?
            } else {
                extract_code(template, &inputs)?
            };
            let embedding: Vec<(usize, usize)> = self
                .incoming(v)
                .enumerate()
                .map(|(slot, e)| (labels.iter().position(|&l| l == e.from).expect("DAG order"), slot))
                .collect();
            code = concatenate(&code, &node_code, &embedding)?;
            labels.retain(|l| !self.incoming(v).any(|e| e.from == *l));
            labels.extend(
                (0..template.n_qudits())
                    .filter(|q| !inputs.contains(q))
                    .map(|q| Leg::new(v, q)),
            );
            logical_ids.extend(
                self.logical_legs
                    .iter()
                    .enumerate()
                    .filter(|(_, l)| l.node == v)
                    .map(|(i, _)| i),
            );
        }
        let columns: Vec<usize> = self
            .boundary_legs
            .iter()
            .map(|b| labels.iter().position(|l| l == b).expect("validated legs"))
            .collect();
        let permute = |p: &PauliOperator| p.restrict(&columns);
        let stabilizers = code.stabilizers().iter().map(permute).collect();
        let logicals = (0..self.logical_legs.len())
            .map(|id| {
                let j = logical_ids.iter().position(|&x| x == id).expect("every logical leg visited");
                let pair = &code.logicals()[j];
                crate::ame::LogicalPair {
                    x: permute(&pair.x),
                    z: permute(&pair.z),
                }
            })
            .collect();
        let n = columns.len();
        CodeSpec::new(self.dim, n, stabilizers, logicals, (0..n).collect())
    }

    /// Boundary state for an input on the logical legs (input qudit `j` on
    /// logical leg `j`).
    pub fn contract_with_input(&self, input: &StabilizerTable) -> Result<StabilizerTable> {
        if input.n_qudits() != self.logical_legs.len() {
            return Err(shape_err(self.logical_legs.len(), input.n_qudits()));
        }
        let code = self.contract()?;
        let embedding: Vec<usize> = (0..input.n_qudits()).collect();
        encode_through(&code, input, &embedding)
    }

    /// Boundary image of a single-qudit operator on logical leg `slot`,
    /// defined modulo the boundary stabilisers.
    pub fn spread_operator(&self, slot: usize, op: &PauliOperator) -> Result<PauliOperator> {
        if slot >= self.logical_legs.len() {
            return Err(Error::Invalid(format!(
                "logical slot {} out of range 1..={}",
                slot + 1,
                self.logical_legs.len()
            )));
        }
        if op.n_qudits() != 1 {
            return Err(shape_err(1, op.n_qudits()));
        }
        let code = self.contract()?;
        substitute(&code, op, &[(0, slot)])
    }
}

/// Template qubit that carries the logical input of every pentagon.
const CENTRE_LOGICAL: usize = 5;
/// Leg of an outer pentagon that is contracted with the centre.
const OUTER_INCOMING: usize = 5;
/// Logical leg of an outer pentagon.
const OUTER_LOGICAL: usize = 4;

/// Outer tile hosting each of the first five logical inputs. Tiles 2 and 3
/// are swapped relative to the cyclic order so that the encoded 6-qubit AME
/// input matches the reference boundary generators.
pub const OUTER_LOGICAL_ORDER: [usize; 5] = [1, 3, 2, 4, 5];

/// Pentagon code networks built from the 6-qubit AME template.
///
/// One layer is a single tile with its logical leg and five boundary legs.
/// Two layers add five tiles around the centre; centre leg `k` feeds outer
/// tile `k + 1`, whose legs 0..4 are boundary qudits `4k..4k + 4`. Logical
/// legs are ordered by [`OUTER_LOGICAL_ORDER`], then the centre.
pub fn build_pentagon_network(layers: usize) -> Result<TensorNetwork> {
    let dim = Dim::QUBIT;
    let tile = |id: String| Node {
        id,
        template: six_qubit_ame(),
    };
    match layers {
        1 => TensorNetwork::new(
            dim,
            vec![tile("centre".into())],
            Vec::new(),
            vec![Leg::new(0, CENTRE_LOGICAL)],
            (0..5).map(|q| Leg::new(0, q)).collect(),
        ),
        2 => {
            let mut nodes = vec![tile("centre".into())];
            nodes.extend((1..=5).map(|k| tile(format!("outer{k}"))));
            let edges = (0..5)
                .map(|k| Edge {
                    from: Leg::new(0, k),
                    to: Leg::new(k + 1, OUTER_INCOMING),
                })
                .collect();
            let mut logical_legs: Vec<Leg> = OUTER_LOGICAL_ORDER
                .iter()
                .map(|&k| Leg::new(k, OUTER_LOGICAL))
                .collect();
            logical_legs.push(Leg::new(0, CENTRE_LOGICAL));
            let boundary_legs = (1..=5).flat_map(|k| (0..4).map(move |q| Leg::new(k, q))).collect();
            TensorNetwork::new(dim, nodes, edges, logical_legs, boundary_legs)
        }
        other => Err(Error::Unsupported(format!("{other} layers; only 1 or 2 are built"))),
    }
}

/// Serialisable network description; templates are lists of Pauli strings.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct NetworkDescription {
    pub dim: u32,
    pub nodes: Vec<NodeDescription>,
    pub edges: Vec<Edge>,
    pub logical_legs: Vec<Leg>,
    pub boundary_legs: Vec<Leg>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct NodeDescription {
    pub id: String,
    pub generators: Vec<String>,
}

impl TensorNetwork {
    pub fn from_description(desc: &NetworkDescription) -> Result<Self> {
        let dim = Dim::new(desc.dim)?;
        let nodes = desc
            .nodes
            .iter()
            .map(|n| {
                let rows = n
                    .generators
                    .iter()
                    .map(|g| parse_pauli(g, dim))
                    .collect::<Result<Vec<_>>>()?;
                let width = rows.first().map_or(0, PauliOperator::n_qudits);
                Ok(Node {
                    id: n.id.clone(),
                    template: StabilizerTable::new(dim, width, rows)?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        TensorNetwork::new(
            dim,
            nodes,
            desc.edges.clone(),
            desc.logical_legs.clone(),
            desc.boundary_legs.clone(),
        )
    }

    pub fn to_description(&self) -> NetworkDescription {
        NetworkDescription {
            dim: self.dim.get(),
            nodes: self
                .nodes
                .iter()
                .map(|n| NodeDescription {
                    id: n.id.clone(),
                    generators: n.template.rows().iter().map(|r| r.to_string()).collect(),
                })
                .collect(),
            edges: self.edges.clone(),
            logical_legs: self.logical_legs.clone(),
            boundary_legs: self.boundary_legs.clone(),
        }
    }
}

/// Six-qubit input states fed into the two-layer network.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum InputFamily {
    Ame,
    Ghz,
    Singlet,
    Product,
}

impl InputFamily {
    pub const ALL: [InputFamily; 4] = [InputFamily::Ame, InputFamily::Ghz, InputFamily::Singlet, InputFamily::Product];

    pub fn name(self) -> &'static str {
        match self {
            InputFamily::Ame => "ame",
            InputFamily::Ghz => "ghz",
            InputFamily::Singlet => "singlet",
            InputFamily::Product => "product",
        }
    }

    pub fn table(self) -> StabilizerTable {
        let rows: &[&str] = match self {
            InputFamily::Ame => return six_qubit_ame(),
            InputFamily::Ghz => &["XXXXXX", "ZZ1111", "1ZZ111", "11ZZ11", "111ZZ1", "1111ZZ"],
            // logical qubits 4 and 5 share a Bell pair
            InputFamily::Singlet => &["111XX1", "111ZZ1", "X11111", "1X1111", "11X111", "11111X"],
            InputFamily::Product => &["X11111", "1X1111", "11X111", "111X11", "1111X1", "11111X"],
        };
        let ops = rows.iter().map(|r| parse_pauli(r, Dim::QUBIT).unwrap()).collect();
        StabilizerTable::new(Dim::QUBIT, 6, ops).unwrap()
    }
}

impl fmt::Display for InputFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for InputFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        InputFamily::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::Invalid(format!("unknown input family {s:?}; expected ame, ghz, singlet or product")))
    }
}

pub fn input_family(name: &str) -> Result<StabilizerTable> {
    Ok(name.parse::<InputFamily>()?.table())
}
