//! Generation certificates in finite symplectic quotients `Sp(2g, p)`.
//!
//! The exact order of the subgroup generated by a set of mod-p matrices is
//! computed with a base-and-strong-generating-set stabilizer chain acting on
//! vectors of `F_p^{2g}`. Base points are the standard basis vectors in
//! order, orbits are breadth-first with a fixed generator order, so chains
//! and witness words are reproducible.

use std::collections::BTreeMap;
use std::collections::HashMap;
use std::time::Instant;

use num_bigint::BigUint;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exec;
use crate::models::CircularModel;
use crate::symp::{evaluate, SympMatrix};
use crate::words::{
    six_involution_generators, three_torsion_generators, two_involutions_one_torsion, word_s,
    word_u, Letter, Word,
};

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// `|Sp(2g, p)| = p^{g^2} * prod_{i=1..g} (p^{2i} - 1)`.
pub fn sp_group_order(g: usize, p: u64) -> Result<BigUint> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let pb = BigUint::from(p);
    let mut order = pb.pow((g * g) as u32);
    for i in 1..=g {
        order *= pb.pow(2 * i as u32) - BigUint::one();
    }
    Ok(order)
}

/// Dense `n x n` matrix over `F_p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModMatrix {
    pub p: u64,
    pub n: usize,
    a: Vec<u64>,
}

impl ModMatrix {
    pub fn identity(p: u64, n: usize) -> Self {
        let mut a = vec![0; n * n];
        for i in 0..n {
            a[i * n + i] = 1;
        }
        ModMatrix { p, n, a }
    }

    pub fn at(&self, r: usize, c: usize) -> u64 {
        self.a[r * self.n + c]
    }

    /// Reduce an integer symplectic matrix mod `p`.
    pub fn from_symp(m: &SympMatrix, p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let n = 2 * m.genus();
        let pb = num_bigint::BigInt::from(p);
        let mut a = vec![0u64; n * n];
        for r in 0..n {
            for c in 0..n {
                let v = ((&m.matrix()[(r, c)] % &pb) + &pb) % &pb;
                a[r * n + c] = u64::try_from(v).expect("reduced residue fits u64");
            }
        }
        Ok(ModMatrix { p, n, a })
    }

    pub fn mul(&self, other: &ModMatrix) -> ModMatrix {
        debug_assert_eq!(self.p, other.p);
        let n = self.n;
        let mut out = vec![0u64; n * n];
        for r in 0..n {
            for k in 0..n {
                let x = self.a[r * n + k];
                if x == 0 {
                    continue;
                }
                let row = &other.a[k * n..(k + 1) * n];
                let dst = &mut out[r * n..(r + 1) * n];
                for c in 0..n {
                    dst[c] = (dst[c] + x * row[c]) % self.p;
                }
            }
        }
        ModMatrix { p: self.p, n, a: out }
    }

    pub fn is_identity(&self) -> bool {
        let n = self.n;
        self.a
            .iter()
            .enumerate()
            .all(|(i, &v)| v == u64::from(i / n == i % n))
    }

    fn inv_scalar(&self, x: u64) -> u64 {
        // Fermat inverse; p is prime
        let mut base = x % self.p;
        let mut e = self.p - 2;
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % self.p;
            }
            base = base * base % self.p;
            e >>= 1;
        }
        acc
    }

    /// Gauss-Jordan inverse; errors on singular input.
    pub fn inverse(&self) -> Result<ModMatrix> {
        let n = self.n;
        let p = self.p;
        let mut a = self.a.clone();
        let mut inv = ModMatrix::identity(p, n).a;
        for col in 0..n {
            let pivot = (col..n)
                .find(|&r| a[r * n + col] != 0)
                .ok_or(Error::SingularMod(p))?;
            if pivot != col {
                for c in 0..n {
                    a.swap(pivot * n + c, col * n + c);
                    inv.swap(pivot * n + c, col * n + c);
                }
            }
            let scale = self.inv_scalar(a[col * n + col]);
            for c in 0..n {
                a[col * n + c] = a[col * n + c] * scale % p;
                inv[col * n + c] = inv[col * n + c] * scale % p;
            }
            for r in 0..n {
                if r != col && a[r * n + col] != 0 {
                    let f = a[r * n + col];
                    for c in 0..n {
                        a[r * n + c] = (a[r * n + c] + (p - f) * a[col * n + c]) % p;
                        inv[r * n + c] = (inv[r * n + c] + (p - f) * inv[col * n + c]) % p;
                    }
                }
            }
        }
        Ok(ModMatrix { p, n, a: inv })
    }

    pub fn apply(&self, v: &[u64]) -> Vec<u64> {
        let n = self.n;
        (0..n)
            .map(|r| {
                let mut acc = 0u64;
                for c in 0..n {
                    acc = (acc + self.a[r * n + c] * v[c]) % self.p;
                }
                acc
            })
            .collect()
    }

    /// Whether the matrix preserves the standard skew form mod p.
    pub fn is_symplectic_mod(&self) -> bool {
        let n = self.n;
        let g = n / 2;
        let p = self.p;
        let mut j = vec![0u64; n * n];
        for i in 0..g {
            j[(2 * i) * n + 2 * i + 1] = 1;
            j[(2 * i + 1) * n + 2 * i] = p - 1;
        }
        let jm = ModMatrix { p, n, a: j };
        let t = ModMatrix {
            p,
            n,
            a: {
                let mut t = vec![0u64; n * n];
                for r in 0..n {
                    for c in 0..n {
                        t[c * n + r] = self.a[r * n + c];
                    }
                }
                t
            },
        };
        t.mul(&jm).mul(self) == jm
    }
}

fn encode(v: &[u64], p: u64) -> u64 {
    v.iter().rev().fold(0u64, |acc, &x| acc * p + x)
}

fn decode(mut code: u64, p: u64, n: usize) -> Vec<u64> {
    (0..n)
        .map(|_| {
            let x = code % p;
            code /= p;
            x
        })
        .collect()
}

/// One stabilizer level: a base vector, its orbit with transversal matrices
/// and parent pointers, and the strong generators fixing all earlier bases.
#[derive(Clone, Debug)]
pub struct Level {
    pub base: Vec<u64>,
    gens: Vec<ModMatrix>,
    points: Vec<u64>,
    index: HashMap<u64, u32>,
    transversal: Vec<ModMatrix>,
    transversal_inv: Vec<ModMatrix>,
    /// `(parent point index, generator index)` for witness reconstruction.
    parent: Vec<Option<(u32, u32)>>,
    /// Schreier pairs `(point, gen)` before this linearized position are
    /// certified members of the next stabilizer. Reset when this level's own
    /// generators change; deeper growth never invalidates a certificate.
    scanned: usize,
}

impl Level {
    fn new(p: u64, n: usize, base: Vec<u64>) -> Self {
        let code = encode(&base, p);
        Level {
            base,
            gens: Vec::new(),
            points: vec![code],
            index: HashMap::from([(code, 0)]),
            transversal: vec![ModMatrix::identity(p, n)],
            transversal_inv: vec![ModMatrix::identity(p, n)],
            parent: vec![None],
            scanned: 0,
        }
    }

    pub fn orbit_len(&self) -> usize {
        self.points.len()
    }

    /// Word over this level's generator indices whose product is the
    /// transversal element of orbit point `idx` (leftmost factor first).
    fn transversal_word(&self, mut idx: u32) -> Vec<u32> {
        let mut word = Vec::new();
        while let Some((par, gen)) = self.parent[idx as usize] {
            word.push(gen);
            idx = par;
        }
        word
    }
}

/// Breadth-first orbit of `level.base` under `level.gens`, rebuilt from
/// scratch. Sequential reference implementation.
fn expand_orbit_seq(level: &mut Level, p: u64, n: usize) {
    let base = level.base.clone();
    *level = {
        let mut fresh = Level::new(p, n, base);
        fresh.gens = std::mem::take(&mut level.gens);
        fresh
    };
    let mut frontier: Vec<u32> = vec![0];
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for &fi in &frontier {
            let v = decode(level.points[fi as usize], p, n);
            for (gi, gen) in level.gens.iter().enumerate() {
                let img = encode(&gen.apply(&v), p);
                if let std::collections::hash_map::Entry::Vacant(e) = level.index.entry(img) {
                    let idx = level.points.len() as u32;
                    e.insert(idx);
                    level.points.push(img);
                    let t = gen.mul(&level.transversal[fi as usize]);
                    level.transversal_inv.push(t.inverse().expect("transversal invertible"));
                    level.transversal.push(t);
                    level.parent.push(Some((fi, gi as u32)));
                    next.push(idx);
                }
            }
        }
        frontier = next;
    }
}

/// Level-synchronous parallel expansion; produces the identical orbit,
/// transversal and parent data as the sequential version because candidate
/// images are merged in frontier-major, generator-minor order.
#[cfg(feature = "parallel")]
fn expand_orbit_par(level: &mut Level, p: u64, n: usize) {
    // forking pays off only on wide frontiers
    const PAR_THRESHOLD: usize = 2048;
    let base = level.base.clone();
    *level = {
        let mut fresh = Level::new(p, n, base);
        fresh.gens = std::mem::take(&mut level.gens);
        fresh
    };
    let mut frontier: Vec<u32> = vec![0];
    while !frontier.is_empty() {
        let gens = &level.gens;
        let points = &level.points;
        let work = frontier.len() * gens.len();
        let image_of = |fi: usize, gi: usize| {
            let v = decode(points[frontier[fi] as usize], p, n);
            (encode(&gens[gi].apply(&v), p), frontier[fi], gi as u32)
        };
        let images: Vec<(u64, u32, u32)> = if work >= PAR_THRESHOLD {
            exec::map_product(frontier.len(), gens.len(), image_of)
        } else {
            (0..work)
                .map(|k| image_of(k / gens.len(), k % gens.len()))
                .collect()
        };
        let mut next = Vec::new();
        for (img, par, gi) in images {
            if let std::collections::hash_map::Entry::Vacant(e) = level.index.entry(img) {
                let idx = level.points.len() as u32;
                e.insert(idx);
                level.points.push(img);
                let t = level.gens[gi as usize].mul(&level.transversal[par as usize]);
                level.transversal_inv.push(t.inverse().expect("transversal invertible"));
                level.transversal.push(t);
                level.parent.push(Some((par, gi)));
                next.push(idx);
            }
        }
        frontier = next;
    }
}

fn expand_orbit(level: &mut Level, p: u64, n: usize) {
    #[cfg(feature = "parallel")]
    {
        expand_orbit_par(level, p, n);
    }
    #[cfg(not(feature = "parallel"))]
    {
        expand_orbit_seq(level, p, n);
    }
}

/// Orbit size of `base` under `gens` using the sequential reference
/// implementation; exposed for benches and equivalence tests.
pub fn orbit_size_sequential(gens: &[ModMatrix], base: Vec<u64>) -> usize {
    let (p, n) = (gens[0].p, gens[0].n);
    let mut level = Level::new(p, n, base);
    level.gens = gens.to_vec();
    expand_orbit_seq(&mut level, p, n);
    level.orbit_len()
}

/// Orbit size using the configured expansion (parallel when the `parallel`
/// feature is enabled); always identical to the sequential reference.
pub fn orbit_size(gens: &[ModMatrix], base: Vec<u64>) -> usize {
    let (p, n) = (gens[0].p, gens[0].n);
    let mut level = Level::new(p, n, base);
    level.gens = gens.to_vec();
    expand_orbit(&mut level, p, n);
    level.orbit_len()
}

/// Base-and-strong-generating-set chain for a matrix group over `F_p`.
#[derive(Clone, Debug)]
pub struct BsgsChain {
    pub p: u64,
    pub n: usize,
    pub levels: Vec<Level>,
}

/// Membership witness: per level, a word over that level's strong-generator
/// indices; the product of all levels' words (top level leftmost) equals the
/// sifted matrix.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub factors: Vec<Vec<u32>>,
}

/// Build a stabilizer chain for the subgroup generated by `gens`.
///
/// `budget` caps the conceivable orbit size `p^n`; exceeding it is an
/// explicit resource error, never a silent skip.
pub fn bsgs(gens: &[ModMatrix], budget: Option<u64>) -> Result<BsgsChain> {
    let first = gens.first().ok_or_else(|| {
        Error::InternalConsistency("generator set is empty".into())
    })?;
    let (p, n) = (first.p, first.n);
    if let Some(b) = budget {
        let space = (0..n).try_fold(1u128, |acc, _| {
            let next = acc.checked_mul(p as u128)?;
            (next <= u64::MAX as u128).then_some(next)
        });
        match space {
            Some(s) if s <= b as u128 => {}
            _ => {
                return Err(Error::OrbitBudget {
                    needed: space.unwrap_or(u128::MAX),
                    budget: b,
                });
            }
        }
    }
    for g in gens {
        if g.p != p || g.n != n {
            return Err(Error::InternalConsistency("mixed moduli in generator set".into()));
        }
        g.inverse()?; // invertibility check
    }
    let mut chain = BsgsChain { p, n, levels: Vec::new() };
    for g in gens {
        if !g.is_identity() {
            chain.insert_generator(0, 0, g.clone());
        }
    }
    chain.close();
    Ok(chain)
}

impl BsgsChain {
    fn base_vector_moved_by(&self, m: &ModMatrix) -> Option<Vec<u64>> {
        // first standard basis vector moved by m
        for i in 0..self.n {
            let mut e = vec![0u64; self.n];
            e[i] = 1;
            if m.apply(&e) != e {
                return Some(e);
            }
        }
        None
    }

    /// Install a strong generator at every level in `from..=to`.
    ///
    /// A residue reached by sifting from `from` fixes the bases of all
    /// shallower levels, so it belongs to each stabilizer in that range and
    /// must feed their orbits. Levels before `from` already generate it.
    fn insert_generator(&mut self, from: usize, to: usize, m: ModMatrix) {
        if to == self.levels.len() {
            let base = self
                .base_vector_moved_by(&m)
                .expect("non-identity matrix moves a basis vector");
            self.levels.push(Level::new(self.p, self.n, base));
        }
        let (p, n) = (self.p, self.n);
        for level in from..=to {
            self.levels[level].gens.push(m.clone());
            expand_orbit(&mut self.levels[level], p, n);
            self.levels[level].scanned = 0;
        }
    }

    /// Sift from `level` downward; returns the level reached and residue.
    fn sift_from(&self, level: usize, m: ModMatrix) -> (usize, ModMatrix) {
        let mut cur = m;
        for i in level..self.levels.len() {
            if cur.is_identity() {
                return (i, cur);
            }
            let lv = &self.levels[i];
            let img = encode(&cur.apply(&lv.base), self.p);
            match lv.index.get(&img) {
                None => return (i, cur),
                Some(&idx) => {
                    cur = lv.transversal_inv[idx as usize].mul(&cur);
                }
            }
        }
        (self.levels.len(), cur)
    }

    /// Schreier closure (deterministic scan order). When a residue survives
    /// sifting it becomes a strong generator at the level it reached, and the
    /// scan jumps there; a failing pair is retried after the insertion.
    fn close(&mut self) {
        let mut i = 0usize;
        'outer: loop {
            if i >= self.levels.len() {
                if i == 0 {
                    break;
                }
                i -= 1;
                continue;
            }
            loop {
                let lv = &self.levels[i];
                let ngens = lv.gens.len();
                if lv.scanned >= lv.points.len() * ngens {
                    break;
                }
                let (pt, gi) = (lv.scanned / ngens, lv.scanned % ngens);
                let w = lv.gens[gi].mul(&lv.transversal[pt]);
                let tgt = encode(&w.apply(&lv.base), self.p);
                let idx = lv.index[&tgt];
                let schreier = lv.transversal_inv[idx as usize].mul(&w);
                if schreier.is_identity() {
                    self.levels[i].scanned += 1;
                    continue;
                }
                let (lev, residue) = self.sift_from(i + 1, schreier);
                if residue.is_identity() {
                    self.levels[i].scanned += 1;
                    continue;
                }
                self.insert_generator(i + 1, lev, residue);
                i = lev;
                continue 'outer;
            }
            if i == 0 {
                break;
            }
            i -= 1;
        }
    }

    /// Exact group order: the product of orbit lengths.
    pub fn order(&self) -> BigUint {
        self.levels
            .iter()
            .fold(BigUint::one(), |acc, lv| acc * BigUint::from(lv.orbit_len() as u64))
    }

    /// Membership decision with a strong-generator witness.
    pub fn membership(&self, m: &ModMatrix) -> Option<Witness> {
        let mut cur = m.clone();
        let mut factors = Vec::with_capacity(self.levels.len());
        for lv in &self.levels {
            if cur.is_identity() {
                factors.push(Vec::new());
                continue;
            }
            let img = encode(&cur.apply(&lv.base), self.p);
            let idx = *lv.index.get(&img)?;
            factors.push(lv.transversal_word(idx));
            cur = lv.transversal_inv[idx as usize].mul(&cur);
        }
        cur.is_identity().then_some(Witness { factors })
    }

    /// Rebuild the matrix named by a witness (for cross-checking).
    pub fn witness_matrix(&self, w: &Witness) -> ModMatrix {
        let mut acc = ModMatrix::identity(self.p, self.n);
        for (lv, word) in self.levels.iter().zip(&w.factors) {
            for &gi in word {
                acc = acc.mul(&lv.gens[gi as usize]);
            }
        }
        acc
    }
}

/// The generating sets whose quotient images get certified.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum NamedSet {
    #[serde(rename = "six_involutions")]
    SixInvolutions,
    #[serde(rename = "three_torsion")]
    ThreeTorsion,
    #[serde(rename = "wajnryb_pair")]
    WajnrybPair,
    #[serde(rename = "two_inv_one_torsion")]
    TwoInvOneTorsion,
    #[serde(rename = "humphries_twists")]
    HumphriesTwists,
    #[serde(rename = "lickorish_twists")]
    LickorishTwists,
}

impl NamedSet {
    pub const ALL: [NamedSet; 6] = [
        NamedSet::SixInvolutions,
        NamedSet::ThreeTorsion,
        NamedSet::WajnrybPair,
        NamedSet::TwoInvOneTorsion,
        NamedSet::HumphriesTwists,
        NamedSet::LickorishTwists,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            NamedSet::SixInvolutions => "six_involutions",
            NamedSet::ThreeTorsion => "three_torsion",
            NamedSet::WajnrybPair => "wajnryb_pair",
            NamedSet::TwoInvOneTorsion => "two_inv_one_torsion",
            NamedSet::HumphriesTwists => "humphries_twists",
            NamedSet::LickorishTwists => "lickorish_twists",
        }
    }

    pub fn parse(s: &str) -> Result<NamedSet> {
        Self::ALL
            .into_iter()
            .find(|n| n.name() == s)
            .ok_or_else(|| Error::UnknownGenerator(s.to_string()))
    }

    pub fn min_genus(&self) -> usize {
        match self {
            NamedSet::SixInvolutions => 3,
            _ => 2,
        }
    }
}

/// Integer symplectic matrices of a named generating set in a model.
pub fn named_set_matrices(model: &CircularModel, set: NamedSet) -> Result<Vec<SympMatrix>> {
    let g = model.genus;
    if g < set.min_genus() {
        return Err(Error::UnsupportedGenus {
            got: g,
            why: format!("{} needs genus >= {}", set.name(), set.min_genus()),
        });
    }
    let table = model.generator_table()?;
    let eval = |w: &Word| evaluate(w, &table);
    match set {
        NamedSet::SixInvolutions => {
            let six = six_involution_generators(g)?;
            six.set
                .iter()
                .map(|l| table.get(l).cloned())
                .collect::<Result<Vec<_>>>()
        }
        NamedSet::ThreeTorsion => {
            let tt = three_torsion_generators(g, model.rotation_moves_alpha1_to_alpha2())?;
            tt.set.iter().map(eval).collect()
        }
        NamedSet::WajnrybPair => Ok(vec![eval(&word_u(g)?)?, eval(&word_s(g)?)?]),
        NamedSet::TwoInvOneTorsion => {
            let s = two_involutions_one_torsion(g)?;
            s.set.iter().map(eval).collect()
        }
        NamedSet::HumphriesTwists => {
            let mut names = vec!["alpha1".to_string(), "alpha2".to_string()];
            names.extend((1..=g).map(|i| format!("beta{i}")));
            names.extend((1..g).map(|i| format!("gamma{i}")));
            names
                .iter()
                .map(|n| table.get(&Letter::twist(n)).cloned())
                .collect()
        }
        NamedSet::LickorishTwists => {
            let mut names: Vec<String> = (1..=g).map(|i| format!("alpha{i}")).collect();
            names.extend((1..=g).map(|i| format!("beta{i}")));
            names.extend((1..g).map(|i| format!("gamma{i}")));
            names
                .iter()
                .map(|n| table.get(&Letter::twist(n)).cloned())
                .collect()
        }
    }
}

/// Outcome of one generation check.
#[derive(Clone, Debug)]
pub struct GenerationVerdict {
    pub set: NamedSet,
    pub genus: usize,
    pub p: u64,
    pub subgroup_order: BigUint,
    pub full_order: BigUint,
    pub generates: bool,
    pub ms: u128,
}

/// Wire format:
/// `{"set": ..., "g": ..., "p": ..., "subgroup_order": "...", "full_order": "...", "generates": ..., "ms": ...}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct VerdictJson {
    pub set: String,
    pub g: usize,
    pub p: u64,
    pub subgroup_order: String,
    pub full_order: String,
    pub generates: bool,
    pub ms: u128,
}

impl GenerationVerdict {
    pub fn to_json(&self) -> VerdictJson {
        VerdictJson {
            set: self.set.name().to_string(),
            g: self.genus,
            p: self.p,
            subgroup_order: self.subgroup_order.to_string(),
            full_order: self.full_order.to_string(),
            generates: self.generates,
            ms: self.ms,
        }
    }
}

/// Reduce a named set mod `p`, build the chain and compare orders.
pub fn generation_verdict(
    model: &CircularModel,
    set: NamedSet,
    p: u64,
    budget: Option<u64>,
) -> Result<GenerationVerdict> {
    let start = Instant::now();
    let mats = named_set_matrices(model, set)?;
    let gens: Vec<ModMatrix> = mats
        .iter()
        .map(|m| ModMatrix::from_symp(m, p))
        .collect::<Result<_>>()?;
    for g in &gens {
        if !g.is_symplectic_mod() {
            return Err(Error::InternalConsistency(
                "generator image is not symplectic mod p".into(),
            ));
        }
    }
    let chain = bsgs(&gens, budget)?;
    let subgroup_order = chain.order();
    let full_order = sp_group_order(model.genus, p)?;
    let generates = subgroup_order == full_order;
    Ok(GenerationVerdict {
        set,
        genus: model.genus,
        p,
        subgroup_order,
        full_order,
        generates,
        ms: start.elapsed().as_millis(),
    })
}

/// Run a battery of generation checks over `(set, genus, p)` cells; cells are
/// independent and may run in parallel, results come back in input order.
pub fn generation_battery(
    models: &BTreeMap<usize, CircularModel>,
    cells: &[(NamedSet, usize, u64)],
    budget: Option<u64>,
) -> Vec<Result<GenerationVerdict>> {
    exec::map_collect(cells, |(set, g, p)| {
        let model = models
            .get(g)
            .ok_or_else(|| Error::InternalConsistency(format!("no model for genus {g}")))?;
        generation_verdict(model, *set, *p, budget)
    })
}

/// Brute-force enumeration of `Sp(2, p) = SL(2, p)`, the test oracle for
/// small cases.
pub fn enumerate_sp2(p: u64) -> Vec<ModMatrix> {
    let mut out = Vec::new();
    for a in 0..p {
        for b in 0..p {
            for c in 0..p {
                for d in 0..p {
                    if (a * d + p * p - b * c) % p == 1 {
                        out.push(ModMatrix { p, n: 2, a: vec![a, b, c, d] });
                    }
                }
            }
        }
    }
    out
}
