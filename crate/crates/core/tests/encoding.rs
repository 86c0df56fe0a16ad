use std::collections::BTreeSet;

use dm_core::construct::sample_stacked_even_dm;
use dm_core::encode::record::{infeasible_even, rn_alpha, rn_s_bound};
use dm_core::encode::spectrum::{component_spectrum, distance_two_common_neighbours};
use dm_core::encode::{
    cover_certifies, decode_even_dm, decode_system, encode_even_dm, kw_encode, kw_reconstruct_a,
    local_cover, rn_component, rn_matrix_identity, smallest_eigenvalue, Certificate, Parity,
};
use dm_core::enumerate::Levels;
use dm_core::{Mask, SetSystem};
use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn matrix_identity_and_least_eigenvalue() {
    for n in 2..=8 {
        assert!(rn_matrix_identity(n).unwrap(), "n = {n}");
    }
    for n in 2..=12usize {
        let expect = if n % 2 == 0 { -(n as i64) / 2 } else { (1 - n as i64) / 2 };
        assert_eq!(smallest_eigenvalue(n).unwrap(), expect);
    }
    assert!(distance_two_common_neighbours(5));
}

#[test]
fn component_spectrum_matches_numeric_eigenvalues() {
    for n in 2..=7 {
        let g = rn_component(n, Parity::Even).unwrap();
        let size = g.len();
        let m = DMatrix::from_fn(size, size, |i, j| f64::from(u8::from(g.adjacent(i, j))));
        let mut numeric: Vec<f64> = m.symmetric_eigen().eigenvalues.iter().copied().collect();
        numeric.sort_by(f64::total_cmp);
        let exact: Vec<f64> = component_spectrum(n)
            .unwrap()
            .into_iter()
            .flat_map(|(v, k)| std::iter::repeat_n(v as f64, k as usize))
            .collect();
        assert_eq!(numeric.len(), exact.len(), "n = {n}");
        for (a, b) in numeric.iter().zip(&exact) {
            assert!((a - b).abs() < 1e-8, "n = {n}: {a} vs {b}");
        }
    }
}

#[test]
fn container_properties() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for n in 5..=8 {
        let g = rn_component(n, Parity::Even).unwrap();
        let alpha = rn_alpha(n);
        let bound = rn_s_bound(n) as usize;
        for _ in 0..500 {
            let density: f64 = rng.gen();
            let l: Vec<usize> = (0..g.len()).filter(|_| rng.gen_bool(density)).collect();
            let out = kw_encode(&g, &l, alpha).unwrap();
            let l_set: BTreeSet<usize> = l.iter().copied().collect();
            assert!(out.s.iter().all(|v| l_set.contains(v)));
            let mut covered: BTreeSet<usize> = out.a.iter().copied().collect();
            for &v in &out.s {
                covered.insert(v);
                covered.extend(g.neighbours(v).iter().copied());
            }
            assert!(l_set.is_subset(&covered));
            assert!(out.a.len() as u64 * alpha.denom() <= alpha.numer() * g.len() as u64);
            assert!(out.s.len() <= bound, "n = {n}: |S| = {} > {bound}", out.s.len());
            assert_eq!(kw_reconstruct_a(&g, &out.s, alpha).unwrap(), out.a);
        }
    }
}

fn covers_are_exact(d: &SetSystem) {
    let work = if d.feasible_parity().unwrap() == Some(0) { d.clone() } else { d.twist(1).unwrap() };
    let n = d.n();
    for x in infeasible_even(&work) {
        let cover = local_cover(&work, x).unwrap();
        for a in 1..=n {
            for b in a + 1..=n {
                let y: Mask = x ^ (1 << (a - 1)) ^ (1 << (b - 1));
                let said = cover_certifies(&cover, a, b).unwrap() == Certificate::Feasible;
                assert_eq!(said, work.contains(y));
            }
        }
    }
}

fn round_trip(d: &SetSystem) {
    let rec = encode_even_dm(d).unwrap();
    assert!(rec.s.len() as u64 <= rec.s_bound);
    let work = if rec.parity == Parity::Even { d.clone() } else { d.twist(1).unwrap() };
    assert_eq!(decode_even_dm(&rec).unwrap(), infeasible_even(&work));
    assert_eq!(&decode_system(&rec).unwrap(), d);
}

#[test]
fn exhaustive_round_trip_up_to_four() {
    let mut levels = Levels::new(None);
    for n in 2..=4 {
        let mut seen = 0;
        for d in levels.get(n).unwrap().set_systems() {
            if d.is_even().unwrap() {
                round_trip(&d);
                covers_are_exact(&d);
                seen += 1;
            }
        }
        assert_eq!(seen as u64, levels.get(n).unwrap().count_even());
    }
}

#[test]
fn round_trip_on_six() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for seed in 0..200 {
        let stacked = sample_stacked_even_dm(6, seed).unwrap();
        let d = stacked.twist(rng.gen_range(0..64)).unwrap();
        round_trip(&d);
        covers_are_exact(&d);
    }
}
