//! Words over a named generator alphabet of twists and symmetries.
//!
//! Words are free: no relation is ever applied silently. Identities between
//! words are verified downstream by evaluating both sides to matrices.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A generator letter: a Dehn twist about a named curve, or a named symmetry.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Letter {
    Twist(String),
    Sym(String),
}

impl Letter {
    pub fn twist(name: &str) -> Letter {
        Letter::Twist(name.to_string())
    }

    pub fn sym(name: &str) -> Letter {
        Letter::Sym(name.to_string())
    }

    /// Wire token: twists as `T_<curve>`, symmetries by their bare name.
    pub fn token(&self) -> String {
        match self {
            Letter::Twist(c) => format!("T_{c}"),
            Letter::Sym(s) => s.clone(),
        }
    }

    pub fn parse(tok: &str) -> Letter {
        match tok.strip_prefix("T_") {
            Some(c) => Letter::Twist(c.to_string()),
            None => Letter::Sym(tok.to_string()),
        }
    }
}

impl std::fmt::Display for Letter {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.token())
    }
}

/// Freely reduced word: adjacent equal letters are merged, zero exponents
/// dropped. The empty word is the identity.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Word {
    syllables: Vec<(Letter, i64)>,
}

impl Word {
    pub fn identity() -> Word {
        Word::default()
    }

    pub fn from_syllables(syllables: Vec<(Letter, i64)>) -> Word {
        let mut w = Word { syllables };
        w.reduce_in_place();
        w
    }

    pub fn letter(l: Letter) -> Word {
        Word::from_syllables(vec![(l, 1)])
    }

    pub fn letter_pow(l: Letter, e: i64) -> Word {
        Word::from_syllables(vec![(l, e)])
    }

    pub fn syllables(&self) -> &[(Letter, i64)] {
        &self.syllables
    }

    pub fn is_identity(&self) -> bool {
        self.syllables.is_empty()
    }

    /// Number of letters counted with multiplicity of exponents.
    pub fn len(&self) -> usize {
        self.syllables.iter().map(|(_, e)| e.unsigned_abs() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.syllables.is_empty()
    }

    pub fn distinct_letters(&self) -> Vec<&Letter> {
        let mut out: Vec<&Letter> = Vec::new();
        for (l, _) in &self.syllables {
            if !out.contains(&l) {
                out.push(l);
            }
        }
        out.sort();
        out
    }

    fn reduce_in_place(&mut self) {
        let mut out: Vec<(Letter, i64)> = Vec::with_capacity(self.syllables.len());
        for (l, e) in self.syllables.drain(..) {
            if e == 0 {
                continue;
            }
            match out.last_mut() {
                Some((last, le)) if *last == l => {
                    *le += e;
                    if *le == 0 {
                        out.pop();
                    }
                }
                _ => out.push((l, e)),
            }
        }
        self.syllables = out;
    }

    /// Free reduction; idempotent.
    pub fn reduce(&self) -> Word {
        let mut w = self.clone();
        w.reduce_in_place();
        w
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut syl = self.syllables.clone();
        syl.extend(other.syllables.iter().cloned());
        Word::from_syllables(syl)
    }

    pub fn inverse(&self) -> Word {
        Word::from_syllables(
            self.syllables.iter().rev().map(|(l, e)| (l.clone(), -e)).collect(),
        )
    }

    /// `h * self * h^{-1}`.
    pub fn conjugate(&self, h: &Word) -> Word {
        h.concat(self).concat(&h.inverse())
    }

    pub fn power(&self, k: i64) -> Word {
        if k == 0 {
            return Word::identity();
        }
        let base = if k > 0 { self.clone() } else { self.inverse() };
        let mut out = Word::identity();
        for _ in 0..k.unsigned_abs() {
            out = out.concat(&base);
        }
        out
    }

    pub fn to_json(&self) -> Vec<WordSyllableJson> {
        self.syllables
            .iter()
            .map(|(l, e)| WordSyllableJson { letter: l.token(), exp: *e })
            .collect()
    }

    pub fn from_json(json: &[WordSyllableJson]) -> Word {
        Word::from_syllables(
            json.iter().map(|s| (Letter::parse(&s.letter), s.exp)).collect(),
        )
    }
}

impl std::fmt::Display for Word {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.syllables.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .syllables
            .iter()
            .map(|(l, e)| {
                if *e == 1 {
                    l.token()
                } else {
                    format!("{}^{}", l.token(), e)
                }
            })
            .collect();
        write!(f, "{}", parts.join("."))
    }
}

/// Wire format element: `{"letter": "T_alpha1", "exp": -1}`.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct WordSyllableJson {
    pub letter: String,
    pub exp: i64,
}

/// A named word identity `lhs = rhs`, to be certified by matrix evaluation.
#[derive(Clone, Debug)]
pub struct NamedIdentity {
    pub name: String,
    pub lhs: Word,
    pub rhs: Word,
}

impl NamedIdentity {
    pub fn new(name: &str, lhs: Word, rhs: Word) -> Self {
        NamedIdentity { name: name.to_string(), lhs, rhs }
    }
}

fn twist(name: String) -> Word {
    Word::letter(Letter::Twist(name))
}

fn require_genus(g: usize, min: usize, why: &str) -> Result<()> {
    if g < min {
        return Err(Error::UnsupportedGenus { got: g, why: why.to_string() });
    }
    Ok(())
}

/// Genus-one caveat: the toolkit builds no twist words there.
pub fn genus_one_note() -> &'static str {
    "genus 1: the mapping class group of the torus is SL(2,Z), generated by \
     one element of order 4 and one of order 6; no chain words are built"
}

/// The `2g+1`-letter chain word
/// `Q = T_alpha_g T_beta_g (T_gamma_{g-1} T_beta_{g-1}) ... (T_gamma_1 T_beta_1) T_alpha_1`.
pub fn word_q(g: usize) -> Result<Word> {
    require_genus(g, 2, "chain words need genus >= 2")?;
    let mut syl = Vec::new();
    syl.push((Letter::twist(&format!("alpha{g}")), 1));
    syl.push((Letter::twist(&format!("beta{g}")), 1));
    for i in (1..g).rev() {
        syl.push((Letter::twist(&format!("gamma{i}")), 1));
        syl.push((Letter::twist(&format!("beta{i}")), 1));
    }
    syl.push((Letter::twist("alpha1"), 1));
    Ok(Word::from_syllables(syl))
}

/// `S = Q T_alpha_1^{-1}`: the `2g`-letter sub-chain word.
pub fn word_s(g: usize) -> Result<Word> {
    Ok(word_q(g)?.concat(&twist("alpha1".into()).inverse()))
}

/// `U = T_alpha_1 T_alpha_2^{-1}`.
pub fn word_u(g: usize) -> Result<Word> {
    require_genus(g, 2, "U needs two alpha curves")?;
    Ok(twist("alpha1".into()).concat(&twist("alpha2".into()).inverse()))
}

/// Write the twist about `h(alpha_1)` as a product of two torsion words:
/// `(h S^{-1} h^{-1}, h Q h^{-1})`.
///
/// `h` is caller-supplied; its effect on `alpha_1` is checked downstream by
/// matrix evaluation against the named target curve.
pub fn birman_factorization(g: usize, _target: &str, h: &Word) -> Result<(Word, Word)> {
    let q = word_q(g)?;
    let s = word_s(g)?;
    Ok((s.inverse().conjugate(h), q.conjugate(h)))
}

/// Three torsion generators `{Q, S, rho1}` with the U-factorization witness,
/// plus the order-g rotation variant when the model supports it.
pub struct ThreeTorsion {
    pub set: Vec<Word>,
    pub witness: NamedIdentity,
    /// Same witness with `rho1` replaced by the order-g rotation; only valid
    /// when the rotation takes `alpha_1` to `alpha_2` in the model.
    pub rotation_variant: Option<NamedIdentity>,
}

pub fn three_torsion_generators(g: usize, rotation_moves_alpha1_to_alpha2: bool) -> Result<ThreeTorsion> {
    require_genus(g, 2, "three-torsion set needs genus >= 2")?;
    let q = word_q(g)?;
    let s = word_s(g)?;
    let rho1 = Word::letter(Letter::sym("rho1"));
    let u = word_u(g)?;
    let factor = |h: &Word| -> Word {
        let first = s.inverse().concat(&q);
        let second = q.inverse().concat(&s).conjugate(h);
        first.concat(&second)
    };
    let witness = NamedIdentity::new("three-torsion U factorization", u.clone(), factor(&rho1));
    let rotation_variant = rotation_moves_alpha1_to_alpha2.then(|| {
        let r = Word::letter(Letter::sym("R"));
        NamedIdentity::new("three-torsion U factorization (rotation variant)", u.clone(), factor(&r))
    });
    Ok(ThreeTorsion { set: vec![q, s, rho1], witness, rotation_variant })
}

/// `{rho1, T_alpha1 rho1 T_alpha1^{-1}, S}` with the parenthesis-shifted
/// witness `U = (T_alpha1 rho1 T_alpha1^{-1}) rho1`.
pub struct TwoInvolutionsOneTorsion {
    pub set: Vec<Word>,
    pub witness: NamedIdentity,
}

pub fn two_involutions_one_torsion(g: usize) -> Result<TwoInvolutionsOneTorsion> {
    require_genus(g, 2, "set needs genus >= 2")?;
    let rho1 = Word::letter(Letter::sym("rho1"));
    let conj = rho1.conjugate(&twist("alpha1".into()));
    let witness = NamedIdentity::new(
        "parenthesis-shifted U",
        word_u(g)?,
        conj.concat(&rho1),
    );
    Ok(TwoInvolutionsOneTorsion { set: vec![rho1, conj, word_s(g)?], witness })
}

/// Ordered chain of curve names with the boundary data of its regular
/// neighborhood: one curve for even length, two for odd, or `None` on a
/// closed surface where the boundaries bound disks.
#[derive(Clone, Debug)]
pub struct ChainSpec {
    pub curves: Vec<String>,
    pub boundaries: Option<Vec<String>>,
}

impl ChainSpec {
    pub fn closed(curves: Vec<String>) -> ChainSpec {
        ChainSpec { curves, boundaries: None }
    }

    pub fn with_boundaries(curves: Vec<String>, boundaries: Vec<String>) -> Result<ChainSpec> {
        let n = curves.len();
        let expect = if n % 2 == 0 { 1 } else { 2 };
        if boundaries.len() != expect {
            return Err(Error::InvalidChain(format!(
                "{n}-chain needs {expect} boundary curve(s), got {}",
                boundaries.len()
            )));
        }
        Ok(ChainSpec { curves, boundaries: Some(boundaries) })
    }
}

/// The chain relation words: `(T_c1 ... T_cn)^{n+1} = T_d1 T_d2` for odd `n`
/// and `(T_c1 ... T_cn)^{2n+2} = T_d` for even `n`; the right side is empty
/// when the boundaries bound disks in the closed surface.
pub fn chain_relation_words(spec: &ChainSpec) -> Result<(Word, Word)> {
    let n = spec.curves.len();
    if n == 0 {
        return Err(Error::InvalidChain("empty chain".into()));
    }
    let prod = Word::from_syllables(
        spec.curves.iter().map(|c| (Letter::Twist(c.clone()), 1)).collect(),
    );
    let exponent = if n % 2 == 1 { n as i64 + 1 } else { 2 * n as i64 + 2 };
    let lhs = prod.power(exponent);
    let rhs = match &spec.boundaries {
        None => Word::identity(),
        Some(bs) => Word::from_syllables(bs.iter().map(|b| (Letter::Twist(b.clone()), 1)).collect()),
    };
    Ok((lhs, rhs))
}

/// The `(2g+1)`-chain behind `Q`, in the word's letter order.
pub fn q_chain_spec(g: usize) -> Result<ChainSpec> {
    require_genus(g, 2, "chain words need genus >= 2")?;
    let curves = word_q(g)?
        .syllables()
        .iter()
        .map(|(l, _)| match l {
            Letter::Twist(c) => c.clone(),
            Letter::Sym(_) => unreachable!("Q is a twist word"),
        })
        .collect();
    Ok(ChainSpec::closed(curves))
}

/// The `2g`-chain behind `S`.
pub fn s_chain_spec(g: usize) -> Result<ChainSpec> {
    let mut spec = q_chain_spec(g)?;
    spec.curves.pop();
    Ok(spec)
}

/// The lantern identity `X1 X2 X3 = A1 A2 A3 A4` and its rearrangement
/// `A4 = (X1 A1^{-1})(X2 A2^{-1})(X3 A3^{-1})`.
pub struct LanternWords {
    pub relation: NamedIdentity,
    pub rearrangement: NamedIdentity,
}

pub fn lantern_words() -> LanternWords {
    let x = |i: usize| twist(format!("x{i}"));
    let a = |i: usize| twist(format!("a{i}"));
    let lhs = x(1).concat(&x(2)).concat(&x(3));
    let rhs = a(1).concat(&a(2)).concat(&a(3)).concat(&a(4));
    let relation = NamedIdentity::new("lantern relation", lhs, rhs);
    let re_rhs = x(1)
        .concat(&a(1).inverse())
        .concat(&x(2))
        .concat(&a(2).inverse())
        .concat(&x(3))
        .concat(&a(3).inverse());
    let rearrangement = NamedIdentity::new("lantern rearrangement", a(4), re_rhs);
    LanternWords { relation, rearrangement }
}

/// `T_{a4}` as a product of four involutions:
/// `[K I1][J1 K I1 J1][J2 K I1 J2]` where `K = X1 I1 X1^{-1}` is its own
/// letter so the count is literal.
pub fn four_involution_twist() -> NamedIdentity {
    let k = Word::letter(Letter::sym("K"));
    let i1 = Word::letter(Letter::sym("I1"));
    let j1 = Word::letter(Letter::sym("J1"));
    let j2 = Word::letter(Letter::sym("J2"));
    let ki = k.concat(&i1);
    let rhs = ki.concat(&ki.conjugate(&j1)).concat(&ki.conjugate(&j2));
    NamedIdentity::new("four-involution twist", twist("a4".into()), rhs)
}

/// Definition of `K` as a word over twist and symmetry letters, used to
/// derive its matrix.
pub fn k_definition() -> Word {
    Word::letter(Letter::sym("I1")).conjugate(&twist("x1".into()))
}

/// The six-involution generating set and its factorization witnesses.
pub struct SixInvolutions {
    pub set: Vec<Letter>,
    pub witnesses: Vec<NamedIdentity>,
    /// Involution count before the `J4 = J2 J3 J2` redundancy is removed.
    pub pre_reduction_count: usize,
}

pub fn six_involution_generators(g: usize) -> Result<SixInvolutions> {
    require_genus(g, 3, "six-involution set needs genus >= 3")?;
    let set = vec![
        Letter::sym("rho1"),
        Letter::sym("rho2"),
        Letter::sym("K"),
        Letter::sym("J1"),
        Letter::sym("J2"),
        Letter::sym("J3"),
    ];
    let k = Word::letter(Letter::sym("K"));
    let i1 = Word::letter(Letter::sym("I1"));
    let j1 = Word::letter(Letter::sym("J1"));
    let j2 = Word::letter(Letter::sym("J2"));
    let j3 = Word::letter(Letter::sym("J3"));
    let rho1 = Word::letter(Letter::sym("rho1"));
    let rho2 = Word::letter(Letter::sym("rho2"));
    let r = Word::letter(Letter::sym("R"));
    let ki = k.concat(&i1);
    let j3j2 = j3.concat(&j2);
    // J4 = J2 J3 J2 everywhere it is needed
    let j4 = j2.concat(&j3).concat(&j2);

    let witnesses = vec![
        NamedIdentity::new("rotation from two involutions", r, rho1.concat(&rho2)),
        NamedIdentity::new(
            "gamma twist from involutions",
            twist("a4".into()),
            ki.concat(&ki.conjugate(&j1)).concat(&ki.conjugate(&j2)),
        ),
        NamedIdentity::new(
            "beta twist from involutions",
            twist("a3".into()),
            ki.concat(&ki.conjugate(&j1)).concat(&ki.conjugate(&j3j2)),
        ),
        NamedIdentity::new(
            "alpha twist from involutions",
            twist("a1".into()),
            ki.conjugate(&j4).concat(&ki.conjugate(&j1)).concat(&ki.conjugate(&j2)),
        ),
    ];
    Ok(SixInvolutions { set, witnesses, pre_reduction_count: 2 + 3 + 1 + 1 })
}
