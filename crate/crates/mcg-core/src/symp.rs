//! Exact integer symplectic matrices and the word evaluator.
//!
//! All matrices live in the standard basis with form
//! `J = blockdiag([[0,1],[-1,0]], ...)` and arbitrary-precision entries.

use std::collections::BTreeMap;

use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::intmat::{charpoly, is_cyclotomic_product, j_std, IMat, Int};
use crate::words::{Letter, Word};

/// A `2g x 2g` integer matrix preserving the standard skew form.
#[derive(Clone, PartialEq, Eq)]
pub struct SympMatrix {
    genus: usize,
    m: IMat,
}

impl std::fmt::Debug for SympMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "SympMatrix(g={})\n{:?}", self.genus, self.m)
    }
}

impl SympMatrix {
    /// Wrap a matrix, checking `M^T J M = J` (and hence `det M = 1`).
    pub fn new(genus: usize, m: IMat) -> Result<Self> {
        if m.rows != 2 * genus || m.cols != 2 * genus {
            return Err(Error::NotSymplectic(format!(
                "expected {0}x{0}, got {1}x{2}",
                2 * genus,
                m.rows,
                m.cols
            )));
        }
        let j = j_std(genus);
        if m.transpose().mul(&j).mul(&m) != j {
            return Err(Error::NotSymplectic("M^T J M != J".into()));
        }
        debug_assert!(m.det().is_one());
        Ok(SympMatrix { genus, m })
    }

    pub fn identity(genus: usize) -> Self {
        SympMatrix { genus, m: IMat::identity(2 * genus) }
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn matrix(&self) -> &IMat {
        &self.m
    }

    pub fn is_identity(&self) -> bool {
        self.m.is_identity()
    }

    pub fn mul(&self, other: &SympMatrix) -> SympMatrix {
        assert_eq!(self.genus, other.genus);
        SympMatrix { genus: self.genus, m: self.m.mul(&other.m) }
    }

    /// Symplectic inverse `M^{-1} = -J M^T J`, exact and division-free.
    pub fn inverse(&self) -> SympMatrix {
        let j = j_std(self.genus);
        SympMatrix {
            genus: self.genus,
            m: j.mul(&self.m.transpose()).mul(&j).neg(),
        }
    }

    pub fn pow(&self, e: i64) -> SympMatrix {
        let base = if e >= 0 { self.clone() } else { self.inverse() };
        SympMatrix { genus: self.genus, m: base.m.pow(e.unsigned_abs()) }
    }

    pub fn apply(&self, v: &[Int]) -> Vec<Int> {
        self.m.mul_vec(v)
    }

    pub fn squares_to_identity(&self) -> bool {
        self.mul(self).is_identity()
    }

    pub fn to_json(&self) -> Result<MatrixJson> {
        let n = 2 * self.genus;
        let mut rows = Vec::with_capacity(n);
        for r in 0..n {
            let mut row = Vec::with_capacity(n);
            for c in 0..n {
                let v: i64 = (&self.m[(r, c)]).try_into().map_err(|_| {
                    Error::Json("matrix entry exceeds i64 in wire format".into())
                })?;
                row.push(v);
            }
            rows.push(row);
        }
        Ok(MatrixJson {
            genus: self.genus,
            basis: "symplectic-standard".into(),
            matrix: rows,
        })
    }

    pub fn from_json(json: &MatrixJson) -> Result<Self> {
        let m = IMat::from_i64_rows(&json.matrix);
        SympMatrix::new(json.genus, m)
    }
}

/// Wire format: `{"genus": g, "basis": "symplectic-standard", "matrix": [[...]]}`.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct MatrixJson {
    pub genus: usize,
    pub basis: String,
    pub matrix: Vec<Vec<i64>>,
}

/// The symplectic pairing `<x, y> = x^T J y`.
pub fn form(genus: usize, x: &[Int], y: &[Int]) -> Int {
    let j = j_std(genus);
    let jy = j.mul_vec(y);
    x.iter().zip(jy.iter()).map(|(a, b)| a * b).sum()
}

/// The transvection `a -> a + <a, v> v` about a nonzero class `v`.
pub fn transvection(genus: usize, v: &[Int]) -> Result<SympMatrix> {
    if v.iter().all(|x| x.is_zero()) {
        return Err(Error::ZeroClass);
    }
    transvection_about(genus, v, false)
}

/// Like [`transvection`], but callers may explicitly accept the identity for
/// a zero class (twists about separating curves act trivially on homology).
pub fn transvection_about(genus: usize, v: &[Int], allow_zero: bool) -> Result<SympMatrix> {
    let n = 2 * genus;
    assert_eq!(v.len(), n);
    if v.iter().all(|x| x.is_zero()) {
        if allow_zero {
            return Ok(SympMatrix::identity(genus));
        }
        return Err(Error::ZeroClass);
    }
    let j = j_std(genus);
    let jv = j.mul_vec(v);
    // M = I + v (Jv)^T
    let m = IMat::from_fn(n, n, |r, c| {
        let base = if r == c { Int::one() } else { Int::zero() };
        base + &v[r] * &jv[c]
    });
    SympMatrix::new(genus, m)
}

/// Generator assignments: twist letters map to transvections about named
/// curve classes, symmetry letters to their table matrices.
#[derive(Clone, Debug)]
pub struct GeneratorTable {
    pub genus: usize,
    map: BTreeMap<Letter, SympMatrix>,
}

impl GeneratorTable {
    pub fn new(genus: usize) -> Self {
        GeneratorTable { genus, map: BTreeMap::new() }
    }

    pub fn insert_twist(&mut self, curve: &str, class: &[Int]) -> Result<()> {
        let t = transvection(self.genus, class)?;
        self.map.insert(Letter::twist(curve), t);
        Ok(())
    }

    pub fn insert_symmetry(&mut self, name: &str, m: SympMatrix) {
        self.map.insert(Letter::sym(name), m);
    }

    pub fn get(&self, l: &Letter) -> Result<&SympMatrix> {
        self.map.get(l).ok_or_else(|| Error::UnknownGenerator(l.token()))
    }

    pub fn contains(&self, l: &Letter) -> bool {
        self.map.contains_key(l)
    }

    pub fn letters(&self) -> impl Iterator<Item = &Letter> {
        self.map.keys()
    }

    /// Falsifiability hook: flip one twist to its left-handed version.
    pub fn inject_flip(&mut self, curve: &str) -> Result<()> {
        let l = Letter::twist(curve);
        let m = self.get(&l)?.inverse();
        self.map.insert(l, m);
        Ok(())
    }

    /// Falsifiability hook: replace a generator by the identity.
    pub fn neutralize(&mut self, letter: &Letter) -> Result<()> {
        if !self.contains(letter) {
            return Err(Error::UnknownGenerator(letter.token()));
        }
        self.map.insert(letter.clone(), SympMatrix::identity(self.genus));
        Ok(())
    }
}

/// Evaluate a word to its symplectic matrix (left-to-right product).
pub fn evaluate(w: &Word, table: &GeneratorTable) -> Result<SympMatrix> {
    let mut acc = SympMatrix::identity(table.genus);
    for (letter, exp) in w.syllables() {
        let m = table.get(letter)?;
        acc = acc.mul(&m.pow(*exp));
    }
    Ok(acc)
}

/// Result of a bounded order search.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum OrderVerdict {
    Finite(u64),
    /// The characteristic polynomial is not a product of cyclotomics, which
    /// certifies infinite order without any powering.
    InfiniteCertified,
    /// No power up to the cap hit the identity, but the cyclotomic test was
    /// inconclusive.
    ExceedsCap { cap: u64 },
}

impl std::fmt::Display for OrderVerdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            OrderVerdict::Finite(k) => write!(f, "{k}"),
            OrderVerdict::InfiniteCertified => write!(f, "infinite"),
            OrderVerdict::ExceedsCap { cap } => write!(f, "exceeds-cap({cap})"),
        }
    }
}

/// Least `k <= cap` with `M^k = I`, with a cyclotomic certificate for the
/// unbounded side.
pub fn matrix_order(m: &SympMatrix, cap: u64) -> OrderVerdict {
    let mut acc = m.clone();
    for k in 1..=cap {
        if acc.is_identity() {
            return OrderVerdict::Finite(k);
        }
        acc = acc.mul(m);
    }
    if is_cyclotomic_product(&charpoly(m.matrix())) {
        OrderVerdict::ExceedsCap { cap }
    } else {
        OrderVerdict::InfiniteCertified
    }
}

/// Outcome of comparing two evaluated words.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    Holds,
    Fails {
        /// First column where the two sides differ, for debugging.
        column: usize,
        lhs_col: Vec<i64>,
        rhs_col: Vec<i64>,
    },
}

impl Verdict {
    pub fn holds(&self) -> bool {
        matches!(self, Verdict::Holds)
    }
}

fn col_i64(m: &IMat, c: usize) -> Vec<i64> {
    m.col(c)
        .iter()
        .map(|x| x.try_into().unwrap_or(if x.is_negative() { i64::MIN } else { i64::MAX }))
        .collect()
}

/// Exact matrix comparison of two evaluated words.
pub fn verify_identity(lhs: &Word, rhs: &Word, table: &GeneratorTable) -> Result<Verdict> {
    let l = evaluate(lhs, table)?;
    let r = evaluate(rhs, table)?;
    Ok(compare(&l, &r))
}

/// Exact comparison of an evaluated word against a target matrix.
pub fn verify_against(lhs: &Word, target: &SympMatrix, table: &GeneratorTable) -> Result<Verdict> {
    let l = evaluate(lhs, table)?;
    Ok(compare(&l, target))
}

pub fn compare(l: &SympMatrix, r: &SympMatrix) -> Verdict {
    if l == r {
        return Verdict::Holds;
    }
    let n = l.matrix().cols;
    for c in 0..n {
        if (0..n).any(|row| l.matrix()[(row, c)] != r.matrix()[(row, c)]) {
            return Verdict::Fails {
                column: c,
                lhs_col: col_i64(l.matrix(), c),
                rhs_col: col_i64(r.matrix(), c),
            };
        }
    }
    unreachable!("matrices differ but all columns agree")
}

/// Pairwise product orders of six involutions, reported symmetrically.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CoxeterReport {
    pub names: Vec<String>,
    pub cap: u64,
    pub entries: Vec<Vec<OrderVerdict>>,
}

/// Orders of pairwise products `m(s, t) = ord(M_s M_t)` at the symplectic
/// level; lower bounds for the corresponding mapping-class orders.
pub fn coxeter_probe(involutions: &[(String, SympMatrix)], cap: u64) -> Result<CoxeterReport> {
    for (name, m) in involutions {
        if !m.squares_to_identity() {
            return Err(Error::InternalConsistency(format!("{name} is not an involution")));
        }
    }
    let n = involutions.len();
    let entries: Vec<Vec<OrderVerdict>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| matrix_order(&involutions[i].1.mul(&involutions[j].1), cap))
                .collect()
        })
        .collect();
    Ok(CoxeterReport {
        names: involutions.iter().map(|(n, _)| n.clone()).collect(),
        cap,
        entries,
    })
}

/// Seeded random-word sanity check: every evaluated word must preserve the
/// form (this is enforced by construction; the check guards the evaluator).
///
/// Returns the number of words evaluated.
pub fn random_word_check(table: &GeneratorTable, seed: u64, count: usize) -> Result<usize> {
    let letters: Vec<Letter> = table.letters().cloned().collect();
    if letters.is_empty() {
        return Ok(0);
    }
    let checks: Vec<u64> = (0..count as u64).collect();
    let results = crate::exec::map_collect(&checks, |&i| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(i));
        let len = rng.gen_range(1..=12);
        let syl: Vec<(Letter, i64)> = (0..len)
            .map(|_| {
                let l = letters[rng.gen_range(0..letters.len())].clone();
                let e = loop {
                    let e = rng.gen_range(-3..=3i64);
                    if e != 0 {
                        break e;
                    }
                };
                (l, e)
            })
            .collect();
        let w = Word::from_syllables(syl);
        // SympMatrix::new re-checks the form on every product; evaluation
        // failing would panic through the Result
        evaluate(&w, table).map(|_| ())
    });
    for r in results {
        r?;
    }
    Ok(count)
}
