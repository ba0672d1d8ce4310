//! Property suites: invariants that must hold across randomized inputs.

use num_traits::Zero;
use proptest::prelude::*;

use mcg_core::intmat::{j_std, Int};
use mcg_core::models::{circular_model, full_model, tables_from_json, tables_to_json};
use mcg_core::quotient::{bsgs, ModMatrix};
use mcg_core::surface::{cycle_class, induced_map};
use mcg_core::symp::{
    evaluate, form, random_word_check, transvection, verify_identity, GeneratorTable,
};
use mcg_core::verify::{identity_suite, run_suite};
use mcg_core::words::{lantern_words, Letter, Word};

/// The randomized form-preservation sweep: at least 1000 words.
#[test]
fn thousand_random_words_preserve_the_form() {
    let model = full_model(3).unwrap();
    let table = model.generator_table().unwrap();
    let checked = random_word_check(&table, 20260809, 1000).unwrap();
    assert_eq!(checked, 1000);
}

/// Conjugation covariance on every table symmetry and curve class:
/// `h tau_v h^{-1} = tau_{h v}`.
#[test]
fn conjugation_covariance_over_tables() {
    let model = full_model(3).unwrap();
    let g = model.genus;
    for (sym, entry) in &model.symmetries.entries {
        for (curve, class) in &model.curves.classes {
            let h = &entry.matrix;
            let lhs = h.mul(&transvection(g, class).unwrap()).mul(&h.inverse());
            let rhs = transvection(g, &h.apply(class)).unwrap();
            assert_eq!(lhs, rhs, "covariance fails for {sym} on {curve}");
        }
    }
}

/// Disjoint lantern curves have commuting transvections.
#[test]
fn lantern_transvections_commute() {
    let model = full_model(4).unwrap();
    let g = model.genus;
    let names = ["a1", "a2", "a3", "a4", "x1", "x2", "x3"];
    for p in names {
        for q in names {
            let vp = model.curves.class(p).unwrap();
            let vq = model.curves.class(q).unwrap();
            assert!(form(g, vp, vq).is_zero());
            let tp = transvection(g, vp).unwrap();
            let tq = transvection(g, vq).unwrap();
            assert_eq!(tp.mul(&tq), tq.mul(&tp), "{p} and {q} twists must commute");
        }
    }
}

/// Flipping the stored sign of any lantern class leaves every identity true:
/// transvections cannot see the sign.
#[test]
fn identities_are_sign_robust() {
    let model = full_model(3).unwrap();
    let base_checks = identity_suite(&model).unwrap();
    for flipped in ["a1", "a2", "a3", "a4", "x1", "x2", "x3"] {
        let mut table = GeneratorTable::new(model.genus);
        for (name, class) in &model.curves.classes {
            if name == flipped {
                let neg: Vec<Int> = class.iter().map(|x| -x.clone()).collect();
                table.insert_twist(name, &neg).unwrap();
            } else {
                table.insert_twist(name, class).unwrap();
            }
        }
        for (name, entry) in &model.symmetries.entries {
            table.insert_symmetry(name, entry.matrix.clone());
        }
        for (name, verdict) in run_suite(&model, &table, &base_checks).unwrap() {
            assert!(verdict.holds(), "'{name}' broke under sign flip of {flipped}");
        }
    }
}

/// Automorphism form preservation checked through actual cycles.
#[test]
fn automorphisms_preserve_cycle_pairings() {
    let model = circular_model(3).unwrap();
    let g = model.genus;
    let classes: Vec<Vec<Int>> = model.curves.classes.values().cloned().collect();
    for auto in model.automorphisms.values() {
        let m = induced_map(&model.graph, &model.basis, auto).unwrap();
        let ms = mcg_core::symp::SympMatrix::new(g, m).unwrap();
        for c in &classes {
            for d in &classes {
                assert_eq!(form(g, &ms.apply(c), &ms.apply(d)), form(g, c, d));
            }
        }
    }
}

/// Homology classes of curve paths transform exactly as the induced matrix.
#[test]
fn induced_map_matches_pushed_cycles() {
    let model = circular_model(4).unwrap();
    for (name, auto) in &model.automorphisms {
        let m = model.symmetries.matrix(name).unwrap();
        for (curve, path) in &model.curve_paths {
            let image = auto.apply_cycle(&model.graph, path).unwrap();
            let image_class = cycle_class(&model.graph, &model.basis, &image).unwrap();
            let expected = m.apply(model.curves.class(curve).unwrap());
            assert_eq!(image_class, expected, "{name} on {curve}");
        }
    }
}

/// Membership witnesses reconstruct the sifted matrix.
#[test]
fn witnesses_reconstruct_members() {
    let model = full_model(3).unwrap();
    let table = model.generator_table().unwrap();
    let p = 3u64;
    let gens: Vec<ModMatrix> = ["alpha1", "beta1", "alpha2"]
        .iter()
        .map(|c| {
            let m = evaluate(&Word::letter(Letter::twist(c)), &table).unwrap();
            ModMatrix::from_symp(&m, p).unwrap()
        })
        .collect();
    let chain = bsgs(&gens, Some(1_000_000)).unwrap();
    // random-ish products of the generators are members with valid witnesses
    let mut m = ModMatrix::identity(p, 6);
    for k in 0..40 {
        m = m.mul(&gens[k % gens.len()]);
        let w = chain.membership(&m).expect("member");
        assert_eq!(chain.witness_matrix(&w), m);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    /// Free reduction: w . w^{-1} is the identity, and reduce is idempotent.
    #[test]
    fn word_times_inverse_reduces(raw in prop::collection::vec((0usize..6, -3i64..=3), 0..10)) {
        let alphabet = [
            Letter::twist("alpha1"), Letter::twist("beta1"), Letter::twist("gamma1"),
            Letter::sym("rho1"), Letter::sym("rho2"), Letter::sym("R"),
        ];
        let w = Word::from_syllables(
            raw.iter().map(|&(i, e)| (alphabet[i].clone(), e)).collect(),
        );
        prop_assert_eq!(w.reduce(), w.clone());
        prop_assert!(w.concat(&w.inverse()).is_identity());
        prop_assert!(w.inverse().concat(&w).is_identity());
    }

    /// Evaluation is a homomorphism on random splits.
    #[test]
    fn evaluation_is_multiplicative(raw in prop::collection::vec((0usize..6, -2i64..=2), 0..8), split in 0usize..8) {
        let model = full_model(2).unwrap();
        let table = model.generator_table().unwrap();
        let alphabet = [
            Letter::twist("alpha1"), Letter::twist("alpha2"), Letter::twist("beta1"),
            Letter::twist("beta2"), Letter::twist("gamma1"), Letter::sym("rho1"),
        ];
        let syl: Vec<(Letter, i64)> = raw.iter().map(|&(i, e)| (alphabet[i].clone(), e)).collect();
        let cut = split.min(syl.len());
        let w1 = Word::from_syllables(syl[..cut].to_vec());
        let w2 = Word::from_syllables(syl[cut..].to_vec());
        let whole = w1.concat(&w2);
        let lhs = evaluate(&whole, &table).unwrap();
        let rhs = evaluate(&w1, &table).unwrap().mul(&evaluate(&w2, &table).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    /// Word JSON round-trips exactly.
    #[test]
    fn word_json_roundtrip(raw in prop::collection::vec((0usize..4, -5i64..=5), 0..12)) {
        let alphabet = [
            Letter::twist("a1"), Letter::twist("x1"), Letter::sym("J1"), Letter::sym("K"),
        ];
        let w = Word::from_syllables(raw.iter().map(|&(i, e)| (alphabet[i].clone(), e)).collect());
        let json = w.to_json();
        let text = serde_json::to_string(&json).unwrap();
        let parsed: Vec<mcg_core::words::WordSyllableJson> = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(Word::from_json(&parsed), w);
    }
}

/// Table wire format round-trips bit-exactly through serde.
#[test]
fn tables_roundtrip_all_test_genera() {
    for g in [2usize, 3, 4, 5] {
        let model = full_model(g).unwrap();
        let json = tables_to_json(&model.curves, &model.symmetries).unwrap();
        let text = serde_json::to_string(&json).unwrap();
        let parsed = serde_json::from_str(&text).unwrap();
        assert_eq!(json, parsed);
        let (curves, symmetries) = tables_from_json(&parsed).unwrap();
        for (name, class) in &curves.classes {
            assert_eq!(class, model.curves.class(name).unwrap());
        }
        for (name, entry) in &symmetries.entries {
            assert_eq!(&entry.matrix, model.symmetries.matrix(name).unwrap());
        }
    }
}

/// A deliberately broken identity is reported with its witness column.
#[test]
fn failure_reports_carry_a_column() {
    let model = full_model(3).unwrap();
    let mut table = model.generator_table().unwrap();
    table.inject_flip("a1").unwrap();
    let lw = lantern_words();
    match verify_identity(&lw.relation.lhs, &lw.relation.rhs, &table).unwrap() {
        mcg_core::symp::Verdict::Holds => panic!("flip must break the relation"),
        mcg_core::symp::Verdict::Fails { column, lhs_col, rhs_col } => {
            assert!(column < 6);
            assert_ne!(lhs_col, rhs_col);
        }
    }
}

/// The standard form matrix is what the basis reduction promised.
#[test]
fn reduced_form_is_block_standard() {
    for g in [2usize, 3, 4] {
        let model = circular_model(g).unwrap();
        let basis = &model.basis;
        let p = &basis.change_of_basis;
        let lhs = p.transpose().mul(&basis.form).mul(p);
        assert_eq!(lhs, j_std(g));
    }
}
