mod common;

use ame_core::ame::{extract_code, is_ame};
use ame_core::concat::propagate_operator;
use ame_core::dense;
use ame_core::entropy::{entanglement_rank, stabilizer_entropy};
use ame_core::format::{parse_table, render_table};
use ame_core::network::build_pentagon_network;
use ame_core::{parse_pauli, render_pauli, Dim, PauliOperator};
use common::*;
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn pauli(d: u32, n: usize) -> impl Strategy<Value = PauliOperator> {
    let dim = Dim::new(d).unwrap();
    (
        prop::collection::vec(0..d, n),
        prop::collection::vec(0..d, n),
        0..dim.phase_order(),
    )
        .prop_map(move |(x, z, ph)| PauliOperator::new(dim, x, z, ph).unwrap())
}

fn three_paulis() -> impl Strategy<Value = (PauliOperator, PauliOperator, PauliOperator)> {
    (prop::sample::select(vec![2u32, 3, 5]), 1usize..6)
        .prop_flat_map(|(d, n)| (pauli(d, n), pauli(d, n), pauli(d, n)))
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

proptest! {
    #[test]
    fn multiplication_is_associative((p, q, r) in three_paulis()) {
        prop_assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
    }

    #[test]
    fn symplectic_product_is_the_commutation_phase((p, q, _r) in three_paulis()) {
        let s = p.symplectic_product(&q).unwrap();
        prop_assert_eq!(&p * &q, (&q * &p).times_omega(s));
        prop_assert_eq!(q.symplectic_product(&p).unwrap(), p.dim().neg(s));
    }

    #[test]
    fn inverse_and_order((p, _q, _r) in three_paulis()) {
        prop_assert!((&p * &p.inverse()).is_identity());
        prop_assert!(p.power(p.dim().get() as u64).is_trivial());
    }

    #[test]
    fn render_parse_round_trip((p, _q, _r) in three_paulis()) {
        prop_assert_eq!(parse_pauli(&render_pauli(&p), p.dim()).unwrap(), p);
    }

    #[test]
    fn canonical_form_preserves_group_and_entropy(seed in any::<u64>(), d in prop::sample::select(vec![2u32, 3, 5]), n in 2usize..6) {
        let mut rng = rng(seed);
        let t = random_pure_state(&mut rng, dim(d), n);
        let c = t.canonical_form();
        let cmp = t.group_equal(&c).unwrap();
        prop_assert!(cmp.equal && cmp.phases_match);
        for size in 1..n {
            let region: Vec<usize> = (0..size).collect();
            prop_assert_eq!(entanglement_rank(&t, &region).unwrap(), entanglement_rank(&c, &region).unwrap());
        }
    }

    #[test]
    fn entropy_is_symmetric(seed in any::<u64>(), d in prop::sample::select(vec![2u32, 3, 5]), n in 2usize..7) {
        let mut rng = rng(seed);
        let t = random_pure_state(&mut rng, dim(d), n);
        let mut qs: Vec<usize> = (0..n).collect();
        qs.shuffle(&mut rng);
        let k = 1 + (seed as usize) % (n - 1);
        let (b, a) = qs.split_at(k);
        prop_assert_eq!(stabilizer_entropy(&t, b).unwrap(), stabilizer_entropy(&t, a).unwrap());
    }

    #[test]
    fn measurement_keeps_a_valid_commuting_table(seed in any::<u64>(), d in prop::sample::select(vec![2u32, 3, 5]), n in 1usize..6, dropped in 0usize..3) {
        let mut rng = rng(seed);
        let t = random_mixed_state(&mut rng, dim(d), n, dropped.min(n));
        let obs = random_observable(&mut rng, dim(d), n);
        let m = t.measure_sampled(&obs, &mut rng).unwrap();
        let rebuilt = ame_core::StabilizerTable::new(m.table.dim(), n, m.table.rows().to_vec());
        prop_assert!(rebuilt.is_ok());
        prop_assert!(m.table.contains_up_to_phase(&obs).unwrap());
        // measuring again is deterministic with the same outcome
        let again = m.table.measure(&obs, m.outcome).unwrap();
        prop_assert!(again.deterministic);
    }

    #[test]
    fn local_maps_preserve_ame(seed in any::<u64>()) {
        let mut rng = rng(seed);
        let t = random_ame(&mut rng, &ame_fixtures());
        prop_assert!(is_ame(&t));
    }

    #[test]
    fn propagation_is_a_homomorphism(seed in any::<u64>(), m in 1usize..4, (p, q, _r) in (pauli(2, 3), pauli(2, 3), Just(()))) {
        let mut rng = rng(seed);
        let t = random_ame(&mut rng, &ame_fixtures()[..1]);
        let inputs: Vec<usize> = (0..m).collect();
        let code = extract_code(&t, &inputs).unwrap();
        let (p, q) = (p.restrict(&inputs), q.restrict(&inputs));
        let lhs = propagate_operator(&code, &(&p * &q)).unwrap();
        let rhs = &propagate_operator(&code, &p).unwrap() * &propagate_operator(&code, &q).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn table_text_round_trip(seed in any::<u64>(), d in prop::sample::select(vec![2u32, 3, 5]), n in 1usize..6) {
        let mut rng = rng(seed);
        let t = random_mixed_state(&mut rng, dim(d), n, (seed % 2) as usize);
        prop_assert_eq!(parse_table(&render_table(&t)).unwrap(), t);
    }
}

#[test]
fn spread_operators_commute_with_boundary_stabilisers() {
    let net = build_pentagon_network(2).unwrap();
    let code = net.contract().unwrap();
    let x = parse_pauli("X", Dim::QUBIT).unwrap();
    let z = parse_pauli("Z", Dim::QUBIT).unwrap();
    for slot in 0..6 {
        let sx = net.spread_operator(slot, &x).unwrap();
        let sz = net.spread_operator(slot, &z).unwrap();
        for g in code.stabilizers() {
            assert!(sx.commutes_with(g).unwrap() && sz.commutes_with(g).unwrap());
        }
        assert!(!sx.commutes_with(&sz).unwrap());
    }
}

#[test]
fn product_input_gives_a_pure_boundary_state() {
    let net = build_pentagon_network(2).unwrap();
    let t = net
        .contract_with_input(&ame_core::network::InputFamily::Product.table())
        .unwrap();
    assert!(t.is_pure_state());
}

#[test]
fn dense_oracle_matches_for_the_one_layer_code() {
    let net = build_pentagon_network(1).unwrap();
    let zero = qubit_table(&["Z"]);
    let t = net.contract_with_input(&zero).unwrap();
    let psi = dense::dense_state_vector(&t).unwrap();
    for region in [vec![0], vec![0, 1], vec![2, 3, 4]] {
        let s = stabilizer_entropy(&t, &region).unwrap();
        assert!((s - dense::entropy_bits(&psi, Dim::QUBIT, 5, &region)).abs() < 1e-9);
    }
}
