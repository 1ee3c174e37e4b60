mod common;

use common::*;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rho_core::lie::*;
use rho_core::temper::{check, check_with_module};
use rho_core::verify::{is_nonnegative, recheck_certificate};
use rho_core::wire::{from_json, to_json, CertificateDoc, FunctionDoc, PairDoc};
use rho_core::{QPair, Rational, WeightModule};

fn tempered(p: &QPair) -> bool {
    check(p).unwrap().tempered
}

/// A random point of the torus of `p` with small rational coordinates.
fn random_point(p: &QPair, rng: &mut ChaCha8Rng) -> Vec<Rational> {
    let space = p.space();
    let z: Vec<Rational> = (0..space.dim())
        .map(|_| Rational::new(rng.gen_range(-20i64..=20).into(), rng.gen_range(1i64..=6).into()))
        .collect();
    space.lift(&z)
}

#[test]
fn block_patterns_agree_with_matrix_extraction() {
    let mut patterns = Vec::new();
    for name in TABLE1_NAMES {
        for (p, q) in [(1, 1), (2, 1), (1, 3), (3, 2)] {
            patterns.push(BlockPattern::table1(name, p, q).unwrap());
        }
    }
    for name in TABLE2_NAMES {
        for (p, q, r) in [(1, 1, 1), (2, 1, 1), (1, 2, 1), (1, 1, 2), (2, 2, 1), (1, 2, 3), (3, 1, 2)] {
            patterns.push(BlockPattern::table2(name, p, q, r).unwrap());
        }
    }
    for pat in &patterns {
        for mode in [TorusMode::Derived, TorusMode::Full] {
            let direct = build_sl_block(pat, mode).unwrap();
            let extracted = extract_weights(&sl_block_matrices(pat, mode)).unwrap();
            assert!(direct.space().same_space(extracted.space()), "{}", pat.describe());
            assert!(direct.h_module().same_weights(extracted.h_module()), "{}", pat.describe());
            assert!(direct.g_module().same_weights(extracted.g_module()), "{}", pat.describe());
        }
    }
}

#[test]
fn dimensions_add_up_to_sl() {
    for name in TABLE2_NAMES {
        for (p, q, r) in [(1, 1, 1), (2, 3, 1), (3, 3, 3)] {
            let pat = BlockPattern::table2(name, p, q, r).unwrap();
            let n = (p + q + r) as u64;
            for mode in [TorusMode::Derived, TorusMode::Full] {
                let pair = build_sl_block(&pat, mode).unwrap();
                assert_eq!(pair.total_dim(), n * n - 1, "{name}");
            }
        }
    }
}

#[test]
fn levi_identity_on_h2_and_h7() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut patterns = Vec::new();
    for p in 1..=3 {
        for q in 1..=3 {
            patterns.push(BlockPattern::table1("H2", p, q).unwrap());
            for r in 1..=3 {
                patterns.push(BlockPattern::table2("H7", p, q, r).unwrap());
            }
        }
    }
    for pat in patterns {
        let pair = build_sl_block(&pat, TorusMode::Derived).unwrap();
        let levi = levi_decomposition(&pat).unwrap();
        let a = pair.deficit();
        let b = levi.deficit().unwrap();
        assert!(a.equals(&b), "{}", pat.describe());
        for _ in 0..20 {
            let y = random_point(&pair, &mut rng);
            assert_eq!(a.evaluate(&y).unwrap(), b.evaluate(&y).unwrap());
        }
    }
}

#[test]
fn sp_matrices_agree_with_weight_products() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for parts in [vec![1, 1], vec![2, 1], vec![1, 1, 1], vec![2, 2], vec![3, 1]] {
        let weights = product_in_sp(&parts).unwrap();
        let matrices = extract_weights(&sp_product_matrices(&parts)).unwrap();
        assert_eq!(weights.total_dim(), matrices.total_dim());
        assert_eq!(weights.h_module().total_dim(), matrices.h_module().total_dim());
        assert_eq!(tempered(&weights), tempered(&matrices), "{parts:?}");
        // the matrix torus is diag(t, -t)
        for _ in 0..10 {
            let t = random_point(&weights, &mut rng);
            let mut y = t.clone();
            y.extend(t.iter().map(|x| -x.clone()));
            assert_eq!(
                weights.deficit().evaluate(&t).unwrap(),
                matrices.deficit().evaluate(&y).unwrap(),
                "{parts:?}"
            );
        }
    }
}

#[test]
fn sp21_has_ratio_three_halves() {
    let pair = extract_weights(&sp21_pair()).unwrap();
    let rho_h = pair.h_module().rho_function();
    let rho_q = pair.g_module().rho_function();
    assert!(rho_h.equals(&rho_q.scale(&Rational::new(3.into(), 2.into()))));
    assert!(!tempered(&pair));
}

#[test]
fn extra_modules_only_help() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for name in TABLE1_NAMES {
        for (p, q) in [(1, 1), (3, 1), (2, 2), (4, 1)] {
            let pair = build_sl_block(&BlockPattern::table1(name, p, q).unwrap(), TorusMode::Derived).unwrap();
            let space = pair.space().clone();
            let n = space.ambient_dim();
            let weights: Vec<_> = (0..3)
                .map(|_| (form(&(0..n).map(|_| rng.gen_range(-1i64..=1)).collect::<Vec<_>>()), rng.gen_range(1u64..=2)))
                .collect();
            let v = WeightModule::new(space, "V", weights).unwrap();
            let with = check_with_module(&pair.clone().with_module(v).unwrap(), Default::default()).unwrap();
            if tempered(&pair) {
                assert!(with.tempered, "{name} ({p},{q})");
            }
        }
    }
    let pair = product_in_sl(&[2, 1]).unwrap();
    assert!(check_with_module(&pair, Default::default()).is_err());
}

#[test]
fn torus_modes_agree_on_small_tables() {
    for name in TABLE1_NAMES {
        for p in 1..=4 {
            for q in 1..=4 {
                let pat = BlockPattern::table1(name, p, q).unwrap();
                let d = tempered(&build_sl_block(&pat, TorusMode::Derived).unwrap());
                let f = tempered(&build_sl_block(&pat, TorusMode::Full).unwrap());
                assert_eq!(d, f, "{name} ({p},{q})");
            }
        }
    }
    for name in TABLE2_NAMES {
        for (p, q, r) in [(1, 1, 1), (2, 1, 1), (1, 2, 1), (1, 1, 2), (2, 2, 2), (3, 1, 1), (1, 3, 1), (1, 1, 3)] {
            let pat = BlockPattern::table2(name, p, q, r).unwrap();
            let d = tempered(&build_sl_block(&pat, TorusMode::Derived).unwrap());
            let f = tempered(&build_sl_block(&pat, TorusMode::Full).unwrap());
            assert_eq!(d, f, "{name} ({p},{q},{r})");
        }
    }
}

#[test]
fn pair_documents_round_trip() {
    for name in TABLE2_NAMES {
        let pair = build_sl_block(&BlockPattern::table2(name, 2, 1, 2).unwrap(), TorusMode::Derived).unwrap();
        let back: PairDoc = from_json(&to_json(&PairDoc::from_pair(&pair))).unwrap();
        let back = back.to_pair().unwrap();
        assert!(back.deficit().equals(&pair.deficit()));
        assert_eq!(tempered(&back), tempered(&pair));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn functions_and_certificates_round_trip(f in pl_function()) {
        let doc = FunctionDoc::from_function(&f);
        let back: FunctionDoc = from_json(&to_json(&doc)).unwrap();
        prop_assert_eq!(back.to_function().unwrap(), f.clone());
        if let Some(c) = is_nonnegative(&f).unwrap().certificate() {
            let doc: CertificateDoc = from_json(&to_json(&CertificateDoc::from_certificate(c))).unwrap();
            let c2 = doc.to_certificate().unwrap();
            prop_assert_eq!(&c2, c);
            prop_assert!(recheck_certificate(&c2).is_ok());
        }
    }
}
