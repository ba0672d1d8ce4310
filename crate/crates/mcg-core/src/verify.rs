//! The witness identity suite and order reports for a built model.
//!
//! Each check evaluates a word against either another word, a transvection
//! about a named curve, or a transvection about the image of a curve class
//! under a named symmetry. Everything is an exact integer matrix comparison.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::models::CircularModel;
use crate::symp::{
    compare, coxeter_probe, evaluate, matrix_order, transvection, CoxeterReport, GeneratorTable,
    OrderVerdict, Verdict,
};
use crate::words::{
    birman_factorization, four_involution_twist, k_definition, lantern_words,
    six_involution_generators, three_torsion_generators, two_involutions_one_torsion, word_q,
    word_s, Letter, Word, WordSyllableJson,
};

/// Right-hand side of a check.
#[derive(Clone, Debug)]
pub enum Expected {
    Word(Word),
    /// Transvection about a named curve class.
    Transvection(String),
    /// Transvection about the image of a curve class under a symmetry.
    TransvectionOfImage { sym: String, curve: String },
}

#[derive(Clone, Debug)]
pub struct Check {
    pub name: String,
    pub lhs: Word,
    pub expected: Expected,
}

impl Check {
    fn word(name: &str, lhs: Word, rhs: Word) -> Check {
        Check { name: name.to_string(), lhs, expected: Expected::Word(rhs) }
    }
}

/// All witness identities available at the model's genus.
pub fn identity_suite(model: &CircularModel) -> Result<Vec<Check>> {
    let g = model.genus;
    let mut checks = Vec::new();

    // chain words and the two-torsion factorization
    let q = word_q(g)?;
    let s = word_s(g)?;
    checks.push(Check::word(
        "S . T_alpha1 = Q",
        s.concat(&Word::letter(Letter::twist("alpha1"))),
        q.clone(),
    ));
    let (f1, f2) = birman_factorization(g, "alpha1", &Word::identity())?;
    checks.push(Check {
        name: "two-torsion factorization, h = id".into(),
        lhs: f1.concat(&f2),
        expected: Expected::Transvection("alpha1".into()),
    });
    let rho1 = Word::letter(Letter::sym("rho1"));
    let (f1, f2) = birman_factorization(g, "alpha2", &rho1)?;
    let product = f1.concat(&f2);
    checks.push(Check {
        name: "two-torsion factorization, h = rho1".into(),
        lhs: product.clone(),
        expected: Expected::Transvection("alpha2".into()),
    });
    checks.push(Check {
        name: "two-torsion factorization matches the rho1 image".into(),
        lhs: product,
        expected: Expected::TransvectionOfImage { sym: "rho1".into(), curve: "alpha1".into() },
    });
    let r_word = Word::letter(Letter::sym("R"));
    let (f1, f2) = birman_factorization(g, "alpha2", &r_word)?;
    checks.push(Check {
        name: "two-torsion factorization, h = rotation".into(),
        lhs: f1.concat(&f2),
        expected: Expected::TransvectionOfImage { sym: "R".into(), curve: "alpha1".into() },
    });

    // the U factorizations
    let tt = three_torsion_generators(g, model.rotation_moves_alpha1_to_alpha2())?;
    checks.push(Check::word(&tt.witness.name, tt.witness.lhs, tt.witness.rhs));
    if let Some(variant) = tt.rotation_variant {
        checks.push(Check::word(&variant.name, variant.lhs, variant.rhs));
    }
    let two = two_involutions_one_torsion(g)?;
    checks.push(Check::word(&two.witness.name, two.witness.lhs, two.witness.rhs));

    if model.has_lantern() {
        let lw = lantern_words();
        checks.push(Check::word(&lw.relation.name, lw.relation.lhs, lw.relation.rhs));
        checks.push(Check::word(
            &lw.rearrangement.name,
            lw.rearrangement.lhs,
            lw.rearrangement.rhs,
        ));
        let four = four_involution_twist();
        checks.push(Check::word(&four.name, four.lhs, four.rhs));
        checks.push(Check::word(
            "K matches its defining word",
            Word::letter(Letter::sym("K")),
            k_definition(),
        ));
        let six = six_involution_generators(g)?;
        for w in six.witnesses {
            checks.push(Check::word(&w.name, w.lhs, w.rhs));
        }
    }
    Ok(checks)
}

/// Evaluate one check against a generator table.
pub fn run_check(model: &CircularModel, table: &GeneratorTable, check: &Check) -> Result<Verdict> {
    let lhs = evaluate(&check.lhs, table)?;
    let rhs = match &check.expected {
        Expected::Word(w) => evaluate(w, table)?,
        Expected::Transvection(curve) => transvection(model.genus, model.curves.class(curve)?)?,
        Expected::TransvectionOfImage { sym, curve } => {
            let m = evaluate(&Word::letter(Letter::sym(sym)), table)?;
            transvection(model.genus, &m.apply(model.curves.class(curve)?))?
        }
    };
    Ok(compare(&lhs, &rhs))
}

/// Run the whole suite; results come back in suite order.
pub fn run_suite(
    model: &CircularModel,
    table: &GeneratorTable,
    checks: &[Check],
) -> Result<Vec<(String, Verdict)>> {
    checks
        .iter()
        .map(|c| run_check(model, table, c).map(|v| (c.name.clone(), v)))
        .collect()
}

/// One line of the torsion-order report.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct OrderLine {
    pub name: String,
    pub verdict: OrderVerdict,
    pub requirement: String,
    pub ok: bool,
}

/// Default order-search cap: all expected torsion orders are at most
/// `4g + 2`, and the cyclotomic certificate catches infinite order anyway.
pub fn default_order_cap(g: usize) -> u64 {
    12 * g as u64
}

/// Orders of all named torsion elements with their divisibility requirements.
pub fn orders_report(model: &CircularModel, cap: u64) -> Result<Vec<OrderLine>> {
    let g = model.genus;
    let table = model.generator_table()?;
    let mut lines = Vec::new();
    let mut push = |name: &str, verdict: OrderVerdict, requirement: String, ok: bool| {
        lines.push(OrderLine { name: name.to_string(), verdict, requirement, ok });
    };

    let q = evaluate(&word_q(g)?, &table)?;
    let vq = matrix_order(&q, cap);
    let ok_q = matches!(vq, OrderVerdict::Finite(k) if (2 * g as u64 + 2) % k == 0);
    push("Q", vq, format!("divides {}", 2 * g + 2), ok_q);

    let s = evaluate(&word_s(g)?, &table)?;
    let vs = matrix_order(&s, cap);
    let ok_s = matches!(vs, OrderVerdict::Finite(k) if (4 * g as u64 + 2) % k == 0);
    push("S", vs, format!("divides {}", 4 * g + 2), ok_s);

    let r = model.symmetries.matrix("R")?;
    let vr = matrix_order(r, cap);
    let ok_r = vr == OrderVerdict::Finite(g as u64);
    push("R", vr, format!("equals {g}"), ok_r);

    let mut involutions = vec!["rho1".to_string(), "rho2".to_string()];
    if model.has_lantern() {
        involutions.extend(["I1", "J1", "J2", "J3", "J4", "K"].map(String::from));
    }
    for name in involutions {
        let m = model.symmetries.matrix(&name)?;
        let ok = m.squares_to_identity();
        let v = matrix_order(m, cap);
        push(&name, v, "squares to identity".into(), ok);
    }
    Ok(lines)
}

/// The six involutions in presentation order, for the pairwise-order probe.
pub fn six_involution_matrices(
    model: &CircularModel,
) -> Result<Vec<(String, crate::symp::SympMatrix)>> {
    if !model.has_lantern() {
        return Err(Error::UnsupportedGenus {
            got: model.genus,
            why: "six-involution set needs genus >= 3".into(),
        });
    }
    let six = six_involution_generators(model.genus)?;
    six.set
        .iter()
        .map(|l| {
            let name = l.token();
            model.symmetries.matrix(&name).map(|m| (name, m.clone()))
        })
        .collect()
}

pub fn coxeter_for_model(model: &CircularModel, cap: u64) -> Result<CoxeterReport> {
    coxeter_probe(&six_involution_matrices(model)?, cap)
}

/// Serializable check descriptor for the export bundle.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct CheckJson {
    pub name: String,
    pub lhs: Vec<WordSyllableJson>,
    pub expected: ExpectedJson,
    pub verdict: VerdictJson,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum ExpectedJson {
    Word { rhs: Vec<WordSyllableJson> },
    Transvection { curve: String },
    TransvectionOfImage { sym: String, curve: String },
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum VerdictJson {
    Holds,
    Fails { column: usize },
}

impl From<&Verdict> for VerdictJson {
    fn from(v: &Verdict) -> Self {
        match v {
            Verdict::Holds => VerdictJson::Holds,
            Verdict::Fails { column, .. } => VerdictJson::Fails { column: *column },
        }
    }
}

pub fn check_to_json(check: &Check, verdict: &Verdict) -> CheckJson {
    let expected = match &check.expected {
        Expected::Word(w) => ExpectedJson::Word { rhs: w.to_json() },
        Expected::Transvection(curve) => ExpectedJson::Transvection { curve: curve.clone() },
        Expected::TransvectionOfImage { sym, curve } => {
            ExpectedJson::TransvectionOfImage { sym: sym.clone(), curve: curve.clone() }
        }
    };
    CheckJson {
        name: check.name.clone(),
        lhs: check.lhs.to_json(),
        expected,
        verdict: verdict.into(),
    }
}

pub fn check_from_json(json: &CheckJson) -> Check {
    let expected = match &json.expected {
        ExpectedJson::Word { rhs } => Expected::Word(Word::from_json(rhs)),
        ExpectedJson::Transvection { curve } => Expected::Transvection(curve.clone()),
        ExpectedJson::TransvectionOfImage { sym, curve } => {
            Expected::TransvectionOfImage { sym: sym.clone(), curve: curve.clone() }
        }
    };
    Check { name: json.name.clone(), lhs: Word::from_json(&json.lhs), expected }
}
