use std::fs;
use std::path::Path;

use ame_core::ame::{ame_violation, extract_code, graph_state, CodeSpec};
use ame_core::concat::{entanglement_swap, SwapPlan};
use ame_core::entropy::{entropy_scan, reports_to_csv, EntropyReport};
use ame_core::format::{parse_adjacency, parse_table, render_table};
use ame_core::network::{build_pentagon_network, InputFamily, NetworkDescription, TensorNetwork};
use ame_core::{parse_pauli, render_pauli, Dim, StabilizerTable};
use anyhow::{bail, ensure, Context, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::{Cli, Command, FileKind, Format, GlobalOpts, NetworkSource, OutcomePolicy};

pub fn run(cli: &Cli) -> Result<()> {
    let g = &cli.global;
    if let Some(d) = g.dim {
        Dim::new(d).with_context(|| format!("--dim {d}"))?;
    }
    let out = match &cli.command {
        Command::Extract { table, m, inputs } => extract(g, table, *m, inputs.as_deref())?,
        Command::VerifyAme { file, kind } => verify_ame(g, file, *kind)?,
        Command::Swap { left, right, pairs } => swap(g, left, right, pairs)?,
        Command::Network { net, input, canonical } => network(g, net, input, *canonical)?,
        Command::EntropyScan { net, inputs, from, to } => scan(g, net, inputs, *from, *to)?,
        Command::Spread { net, slot, op } => spread(g, net, *slot, op)?,
    };
    match &g.output {
        Some(path) => fs::write(path, out).with_context(|| format!("writing {}", path.display())),
        None => {
            print!("{out}");
            Ok(())
        }
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn check_dim(g: &GlobalOpts, found: Dim) -> Result<()> {
    if let Some(d) = g.dim {
        ensure!(d == found.get(), "--dim {d} does not match the input dimension {found}");
    }
    Ok(())
}

fn read_table(g: &GlobalOpts, path: &Path) -> Result<StabilizerTable> {
    let table = parse_table(&read(path)?).with_context(|| format!("parsing {}", path.display()))?;
    check_dim(g, table.dim())?;
    Ok(table)
}

fn format_or(g: &GlobalOpts, default: Format) -> Format {
    g.format.unwrap_or(default)
}

fn one_based(qs: &[usize]) -> Vec<usize> {
    qs.iter().map(|q| q + 1).collect()
}

fn table_json(table: &StabilizerTable) -> Value {
    json!({
        "dim": table.dim().get(),
        "n": table.n_qudits(),
        "rows": table
            .rows()
            .iter()
            .zip(table.roles())
            .map(|(r, role)| json!({ "pauli": render_pauli(r), "role": role.to_string() }))
            .collect::<Vec<_>>(),
    })
}

fn table_output(g: &GlobalOpts, table: &StabilizerTable) -> Result<String> {
    match format_or(g, Format::Text) {
        Format::Text => Ok(render_table(table)),
        Format::Json => Ok(serde_json::to_string_pretty(&table_json(table))? + "\n"),
        Format::Csv => {
            let mut out = String::from("pauli,role\n");
            for (r, role) in table.rows().iter().zip(table.roles()) {
                out.push_str(&format!("{},{}\n", render_pauli(r), role));
            }
            Ok(out)
        }
    }
}

fn code_output(g: &GlobalOpts, code: &CodeSpec) -> Result<String> {
    if format_or(g, Format::Text) == Format::Json {
        let value = json!({
            "dim": code.dim().get(),
            "n_physical": code.n_physical(),
            "stabilizers": code.stabilizers().iter().map(render_pauli).collect::<Vec<_>>(),
            "logicals": code
                .logicals()
                .iter()
                .map(|p| json!({ "x": render_pauli(&p.x), "z": render_pauli(&p.z) }))
                .collect::<Vec<_>>(),
            "column_permutation": one_based(code.column_permutation()),
        });
        return Ok(serde_json::to_string_pretty(&value)? + "\n");
    }
    table_output(g, &code.to_table())
}

fn extract(g: &GlobalOpts, path: &Path, m: Option<usize>, inputs: Option<&[usize]>) -> Result<String> {
    let table = read_table(g, path)?;
    let n = table.n_qudits();
    let inputs: Vec<usize> = match inputs {
        Some(list) => {
            if let Some(m) = m {
                ensure!(m == list.len(), "-m {m} disagrees with {} listed inputs", list.len());
            }
            ensure!(
                list.iter().all(|&q| (1..=n).contains(&q)),
                "input qudits must be in 1..={n}"
            );
            list.iter().map(|q| q - 1).collect()
        }
        None => {
            let m = m.unwrap_or(1);
            ensure!(m <= n, "m = {m} exceeds the {n} qudits of the state");
            (0..m).map(|j| n - 1 - j).collect()
        }
    };
    ensure!(
        !inputs.is_empty() && inputs.len() <= n / 2,
        "m = {} must be between 1 and floor(N/2) = {}",
        inputs.len(),
        n / 2
    );
    let code = extract_code(&table, &inputs)?;
    code_output(g, &code)
}

fn looks_like_adjacency(text: &str) -> bool {
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .nth(1)
        .is_some_and(|l| l.split_whitespace().all(|t| t.parse::<u32>().is_ok()))
}

fn verify_ame(g: &GlobalOpts, path: &Path, kind: FileKind) -> Result<String> {
    let text = read(path)?;
    let adjacency = match kind {
        FileKind::Adjacency => true,
        FileKind::Table => false,
        FileKind::Auto => looks_like_adjacency(&text),
    };
    let table = if adjacency {
        graph_state(&parse_adjacency(&text).with_context(|| format!("parsing {}", path.display()))?)
    } else {
        parse_table(&text).with_context(|| format!("parsing {}", path.display()))?
    };
    check_dim(g, table.dim())?;
    let witness = ame_violation(&table);
    let pure = table.is_pure_state();
    Ok(match format_or(g, Format::Text) {
        Format::Json => {
            let value = json!({
                "ame": witness.is_none(),
                "pure": pure,
                "witness": witness.as_deref().map(one_based),
            });
            serde_json::to_string_pretty(&value)? + "\n"
        }
        Format::Csv => format!("ame,witness\n{},{}\n", witness.is_none(), witness_text(witness.as_deref())),
        Format::Text => match witness {
            None => "AME: yes\n".to_string(),
            Some(_) if !pure => "AME: no (not a pure state)\n".to_string(),
            Some(b) => {
                let list: Vec<String> = one_based(&b).iter().map(usize::to_string).collect();
                format!("AME: no\nwitness: B = {{{}}} is not maximally mixed\n", list.join(", "))
            }
        },
    })
}

fn witness_text(witness: Option<&[usize]>) -> String {
    witness.map_or(String::new(), |b| {
        one_based(b).iter().map(usize::to_string).collect::<Vec<_>>().join(" ")
    })
}

fn parse_pair(text: &str) -> Result<(usize, usize)> {
    let (l, r) = text
        .split_once(':')
        .with_context(|| format!("pair {text:?} must look like l:r"))?;
    let l: usize = l.trim().parse().with_context(|| format!("bad left index in {text:?}"))?;
    let r: usize = r.trim().parse().with_context(|| format!("bad right index in {text:?}"))?;
    ensure!(l >= 1 && r >= 1, "pair indices are 1-based, got {text:?}");
    Ok((l - 1, r - 1))
}

fn swap(g: &GlobalOpts, left: &Path, right: &Path, pairs: &[String]) -> Result<String> {
    let left = read_table(g, left)?;
    let right = read_table(g, right)?;
    let pairs = pairs.iter().map(|p| parse_pair(p)).collect::<Result<Vec<_>>>()?;
    let plan = SwapPlan::new(left, right, pairs)?;
    let d = plan.left.dim().get();
    let outcomes: Option<Vec<(u32, u32)>> = match g.outcome_policy {
        OutcomePolicy::PostselectPlus => None,
        OutcomePolicy::Sample => {
            let mut rng = ChaCha8Rng::seed_from_u64(g.seed);
            Some(plan.pairs.iter().map(|_| (rng.gen_range(0..d), rng.gen_range(0..d))).collect())
        }
    };
    let table = entanglement_swap(&plan, outcomes.as_deref())?;
    let mut out = table_output(g, &table)?;
    if let (Some(o), Some(Format::Text) | None) = (&outcomes, g.format) {
        let list: Vec<String> = o.iter().map(|(x, z)| format!("{x}:{z}")).collect();
        out.push_str(&format!("# outcomes {}\n", list.join(",")));
    }
    Ok(out)
}

fn load_network(g: &GlobalOpts, src: &NetworkSource) -> Result<TensorNetwork> {
    let net = match &src.network {
        Some(path) => {
            let desc: NetworkDescription =
                serde_json::from_str(&read(path)?).with_context(|| format!("parsing {}", path.display()))?;
            TensorNetwork::from_description(&desc)?
        }
        None => build_pentagon_network(src.layers)?,
    };
    check_dim(g, net.dim())?;
    Ok(net)
}

fn network(g: &GlobalOpts, src: &NetworkSource, input: &str, canonical: bool) -> Result<String> {
    let net = load_network(g, src)?;
    if input == "none" {
        let code = net.contract()?;
        if canonical {
            return table_output(g, &code.stabilizer_table().canonical_form());
        }
        return code_output(g, &code);
    }
    let family: InputFamily = input.parse()?;
    ensure!(
        net.logical_legs().len() == 6,
        "input families need 6 logical legs, the network has {}",
        net.logical_legs().len()
    );
    let table = net.contract_with_input(&family.table())?;
    table_output(g, &if canonical { table.canonical_form() } else { table })
}

fn scan(g: &GlobalOpts, src: &NetworkSource, inputs: &[String], from: usize, to: Option<usize>) -> Result<String> {
    let net = load_network(g, src)?;
    let n = net.boundary_legs().len();
    let to = to.unwrap_or(n);
    ensure!(2 <= from && from <= to && to <= n, "s_B range {from}..={to} must lie within 2..={n}");
    ensure!(
        net.logical_legs().len() == 6,
        "input families need 6 logical legs, the network has {}",
        net.logical_legs().len()
    );
    let families = inputs
        .iter()
        .map(|s| s.parse::<InputFamily>())
        .collect::<std::result::Result<Vec<_>, _>>()?;
    let reports = entropy_scan(&net, &families, from..=to)?;
    Ok(match format_or(g, Format::Csv) {
        Format::Csv => reports_to_csv(&reports),
        Format::Json => serde_json::to_string_pretty(&reports.iter().map(report_json).collect::<Vec<_>>())? + "\n",
        Format::Text => {
            let mut out = format!(
                "{:<8} {:>4} {:>8} {:>6} {:>8} {:>6} {:>9}\n",
                "input", "s_B", "S(bits)", "min|g|", "min|g|+P", "bound", "saturated"
            );
            for r in &reports {
                out.push_str(&format!(
                    "{:<8} {:>4} {:>8} {:>6} {:>8} {:>6} {:>9}\n",
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
    })
}

fn report_json(r: &EntropyReport) -> Value {
    json!({
        "input": r.input,
        "s_B": r.s_b(),
        "region": one_based(r.cut.region()),
        "entropy_bits": r.entropy_bits,
        "min_gamma": r.min_gamma,
        "min_gamma_plus_P": r.min_gamma_plus_p,
        "product_bound": r.product_bound,
        "bound_bits": r.general_bound,
        "saturated": r.saturated,
    })
}

fn spread(g: &GlobalOpts, src: &NetworkSource, slot: usize, op: &str) -> Result<String> {
    let net = load_network(g, src)?;
    let k = net.logical_legs().len();
    if slot == 0 || slot > k {
        bail!("slot {slot} out of range 1..={k}");
    }
    let op = parse_pauli(op, net.dim())?;
    ensure!(op.n_qudits() == 1, "--op must act on a single qudit");
    let image = net.spread_operator(slot - 1, &op)?;
    Ok(match format_or(g, Format::Text) {
        Format::Json => {
            let code = net.contract()?;
            let value = json!({
                "slot": slot,
                "operator": render_pauli(&image),
                "stabilizers": code.stabilizers().iter().map(render_pauli).collect::<Vec<_>>(),
            });
            serde_json::to_string_pretty(&value)? + "\n"
        }
        Format::Text | Format::Csv => format!("{}\n", render_pauli(&image)),
    })
}
