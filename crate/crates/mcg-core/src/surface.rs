//! Combinatorial closed oriented surfaces as ribbon graphs.
//!
//! A ribbon graph is a dart set with a fixed-point-free pairing (edges) and a
//! rotation (counterclockwise dart order at each vertex). Faces are the
//! cycles of `rotation ∘ pairing`, so the graph determines a closed oriented
//! surface. First homology, the intersection form and the homology action of
//! graph automorphisms are all computed exactly from this data.

use std::collections::BTreeMap;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::intmat::{
    inverse_unimodular, j_std, smith_normal_form, symplectic_reduce, IMat, Int,
};

/// Combinatorial oriented surface: darts, edge pairing, vertex rotation.
#[derive(Clone, Debug)]
pub struct RibbonGraph {
    n_darts: u32,
    edge_pairing: Vec<u32>,
    vertex_rotation: Vec<u32>,
    labels: BTreeMap<u32, String>,
    // derived
    vertex_of: Vec<u32>,
    n_vertices: u32,
}

impl RibbonGraph {
    pub fn new(
        edge_pairing: Vec<u32>,
        vertex_rotation: Vec<u32>,
        labels: BTreeMap<u32, String>,
    ) -> Result<Self> {
        let n = edge_pairing.len();
        if vertex_rotation.len() != n {
            return Err(Error::MalformedGraph("pairing and rotation sizes differ".into()));
        }
        if n % 2 != 0 {
            return Err(Error::MalformedGraph("odd number of darts".into()));
        }
        if !is_permutation(&vertex_rotation) {
            return Err(Error::MalformedGraph("vertex rotation is not a permutation".into()));
        }
        if !is_permutation(&edge_pairing) {
            return Err(Error::MalformedGraph("edge pairing is not a permutation".into()));
        }
        for (d, &e) in edge_pairing.iter().enumerate() {
            if e as usize == d {
                return Err(Error::MalformedGraph(format!("edge pairing fixes dart {d}")));
            }
            if edge_pairing[e as usize] as usize != d {
                return Err(Error::MalformedGraph("edge pairing is not an involution".into()));
            }
        }
        // darts are laid out two per edge: pairing must be 2k <-> 2k+1
        for k in 0..n / 2 {
            if edge_pairing[2 * k] != 2 * k as u32 + 1 {
                return Err(Error::MalformedGraph(
                    "darts must be paired as consecutive (2k, 2k+1)".into(),
                ));
            }
        }
        let (vertex_of, n_vertices) = assign_vertices(&vertex_rotation);
        let rg = RibbonGraph {
            n_darts: n as u32,
            edge_pairing,
            vertex_rotation,
            labels,
            vertex_of,
            n_vertices,
        };
        let chi = rg.euler_characteristic();
        if chi % 2 != 0 || chi > 2 {
            return Err(Error::MalformedGraph(format!("Euler characteristic {chi}")));
        }
        Ok(rg)
    }

    pub fn n_darts(&self) -> u32 {
        self.n_darts
    }

    pub fn n_edges(&self) -> u32 {
        self.n_darts / 2
    }

    pub fn n_vertices(&self) -> u32 {
        self.n_vertices
    }

    pub fn pair(&self, d: u32) -> u32 {
        self.edge_pairing[d as usize]
    }

    pub fn rot(&self, d: u32) -> u32 {
        self.vertex_rotation[d as usize]
    }

    /// Vertex a dart emanates from.
    pub fn vertex(&self, d: u32) -> u32 {
        self.vertex_of[d as usize]
    }

    pub fn edge(&self, d: u32) -> u32 {
        d / 2
    }

    /// The dart a cycle enters when traversing dart `d`: tail of `d` is
    /// `vertex(d)`, head is `vertex(pair(d))`.
    pub fn head(&self, d: u32) -> u32 {
        self.vertex(self.pair(d))
    }

    pub fn label(&self, d: u32) -> Option<&str> {
        self.labels.get(&d).map(|s| s.as_str())
    }

    pub fn labels(&self) -> &BTreeMap<u32, String> {
        &self.labels
    }

    /// Face boundary walks: cycles of `rotation ∘ pairing`.
    pub fn faces(&self) -> Vec<Vec<u32>> {
        let n = self.n_darts as usize;
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n as u32 {
            if seen[start as usize] {
                continue;
            }
            let mut walk = Vec::new();
            let mut d = start;
            while !seen[d as usize] {
                seen[d as usize] = true;
                walk.push(d);
                d = self.rot(self.pair(d));
            }
            out.push(walk);
        }
        out
    }

    pub fn n_faces(&self) -> u32 {
        self.faces().len() as u32
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.n_vertices as i64 - self.n_edges() as i64 + self.n_faces() as i64
    }

    /// Genus of the closed oriented surface: `(2 - V + E - F) / 2`.
    pub fn genus(&self) -> Result<usize> {
        let chi = self.euler_characteristic();
        if chi % 2 != 0 || chi > 2 {
            return Err(Error::MalformedGraph(format!("Euler characteristic {chi}")));
        }
        Ok(((2 - chi) / 2) as usize)
    }

    pub fn is_connected(&self) -> bool {
        if self.n_vertices == 0 {
            return true;
        }
        let mut seen = vec![false; self.n_vertices as usize];
        let mut stack = vec![0u32];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for d in 0..self.n_darts {
                if self.vertex(d) == v {
                    let w = self.head(d);
                    if !seen[w as usize] {
                        seen[w as usize] = true;
                        stack.push(w);
                    }
                }
            }
        }
        seen.iter().all(|&s| s)
    }

    pub fn to_json(&self) -> RibbonGraphJson {
        RibbonGraphJson {
            darts: self.n_darts,
            edge_pairing: self.edge_pairing.clone(),
            vertex_rotation: self.vertex_rotation.clone(),
            labels: self
                .labels
                .iter()
                .map(|(d, s)| (d.to_string(), s.clone()))
                .collect(),
        }
    }

    pub fn from_json(json: &RibbonGraphJson) -> Result<Self> {
        if json.edge_pairing.len() != json.darts as usize {
            return Err(Error::MalformedGraph("dart count mismatch".into()));
        }
        let mut labels = BTreeMap::new();
        for (k, v) in &json.labels {
            let d: u32 = k
                .parse()
                .map_err(|_| Error::MalformedGraph(format!("bad label key '{k}'")))?;
            labels.insert(d, v.clone());
        }
        RibbonGraph::new(json.edge_pairing.clone(), json.vertex_rotation.clone(), labels)
    }
}

/// Wire format: `{"darts": n, "edge_pairing": [...], "vertex_rotation": [...], "labels": {...}}`.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct RibbonGraphJson {
    pub darts: u32,
    pub edge_pairing: Vec<u32>,
    pub vertex_rotation: Vec<u32>,
    pub labels: BTreeMap<String, String>,
}

fn is_permutation(p: &[u32]) -> bool {
    let n = p.len();
    let mut seen = vec![false; n];
    for &x in p {
        if x as usize >= n || seen[x as usize] {
            return false;
        }
        seen[x as usize] = true;
    }
    true
}

fn assign_vertices(rotation: &[u32]) -> (Vec<u32>, u32) {
    let n = rotation.len();
    let mut vertex_of = vec![u32::MAX; n];
    let mut next_vertex = 0u32;
    for start in 0..n {
        if vertex_of[start] != u32::MAX {
            continue;
        }
        let mut d = start;
        while vertex_of[d] == u32::MAX {
            vertex_of[d] = next_vertex;
            d = rotation[d] as usize;
        }
        next_vertex += 1;
    }
    (vertex_of, next_vertex)
}

/// Closed edge-path, stored as the darts traversed in order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cycle {
    pub darts: Vec<u32>,
    pub name: Option<String>,
}

impl Cycle {
    pub fn new(rg: &RibbonGraph, darts: Vec<u32>, name: Option<String>) -> Result<Self> {
        if darts.is_empty() {
            return Ok(Cycle { darts, name });
        }
        for w in darts.windows(2) {
            if rg.head(w[0]) != rg.vertex(w[1]) {
                return Err(Error::NotACycle(format!(
                    "darts {} and {} do not share a vertex",
                    w[0], w[1]
                )));
            }
        }
        let last = *darts.last().unwrap();
        let first = darts[0];
        if rg.head(last) != rg.vertex(first) {
            return Err(Error::NotACycle("path does not close up".into()));
        }
        Ok(Cycle { darts, name })
    }

    /// Same closed walk traversed backwards.
    pub fn reversed(&self, rg: &RibbonGraph) -> Cycle {
        Cycle {
            darts: self.darts.iter().rev().map(|&d| rg.pair(d)).collect(),
            name: self.name.clone(),
        }
    }

    /// Signed edge chain of the walk.
    pub fn chain(&self, rg: &RibbonGraph) -> Vec<Int> {
        let mut chain = vec![Int::zero(); rg.n_edges() as usize];
        for &d in &self.darts {
            let e = rg.edge(d) as usize;
            if d % 2 == 0 {
                chain[e] += 1;
            } else {
                chain[e] -= 1;
            }
        }
        chain
    }

    /// Equality as unoriented closed walks: up to rotation and reversal.
    pub fn same_up_to_traversal(&self, rg: &RibbonGraph, other: &Cycle) -> bool {
        if self.darts.len() != other.darts.len() {
            return false;
        }
        if self.darts.is_empty() {
            return true;
        }
        let n = self.darts.len();
        let fwd = &other.darts;
        let rev = other.reversed(rg).darts;
        for shift in 0..n {
            if (0..n).all(|i| self.darts[i] == fwd[(i + shift) % n])
                || (0..n).all(|i| self.darts[i] == rev[(i + shift) % n])
            {
                return true;
            }
        }
        false
    }
}

/// Orientation-preserving combinatorial automorphism: a dart permutation
/// commuting with both the edge pairing and the vertex rotation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphAutomorphism {
    pub darts: Vec<u32>,
}

impl GraphAutomorphism {
    pub fn new(rg: &RibbonGraph, darts: Vec<u32>) -> Result<Self> {
        if darts.len() != rg.n_darts() as usize || !is_permutation(&darts) {
            return Err(Error::InvalidAutomorphism("not a dart permutation".into()));
        }
        let commutes_pairing =
            (0..rg.n_darts()).all(|d| darts[rg.pair(d) as usize] == rg.pair(darts[d as usize]));
        if !commutes_pairing {
            return Err(Error::InvalidAutomorphism(
                "does not commute with the edge pairing".into(),
            ));
        }
        let commutes_rot =
            (0..rg.n_darts()).all(|d| darts[rg.rot(d) as usize] == rg.rot(darts[d as usize]));
        if commutes_rot {
            return Ok(GraphAutomorphism { darts });
        }
        // conjugating the rotation to its inverse means orientation-reversing
        let rot_inv = {
            let mut inv = vec![0u32; rg.n_darts() as usize];
            for d in 0..rg.n_darts() {
                inv[rg.rot(d) as usize] = d;
            }
            inv
        };
        let anti =
            (0..rg.n_darts()).all(|d| darts[rg.rot(d) as usize] == rot_inv[darts[d as usize] as usize]);
        if anti {
            Err(Error::OrientationReversing)
        } else {
            Err(Error::InvalidAutomorphism(
                "does not normalize the vertex rotation".into(),
            ))
        }
    }

    pub fn identity(rg: &RibbonGraph) -> Self {
        GraphAutomorphism { darts: (0..rg.n_darts()).collect() }
    }

    pub fn apply(&self, d: u32) -> u32 {
        self.darts[d as usize]
    }

    pub fn compose(&self, other: &GraphAutomorphism) -> GraphAutomorphism {
        // (self ∘ other)(d) = self(other(d))
        GraphAutomorphism {
            darts: other.darts.iter().map(|&d| self.darts[d as usize]).collect(),
        }
    }

    pub fn apply_cycle(&self, rg: &RibbonGraph, c: &Cycle) -> Result<Cycle> {
        Cycle::new(rg, c.darts.iter().map(|&d| self.apply(d)).collect(), c.name.clone())
    }

    /// Signed permutation action on edge chains.
    pub fn chain_map(&self, chain: &[Int]) -> Vec<Int> {
        let mut out = vec![Int::zero(); chain.len()];
        for (e, c) in chain.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let img = self.darts[2 * e];
            let e2 = (img / 2) as usize;
            if img % 2 == 0 {
                out[e2] += c;
            } else {
                out[e2] -= c;
            }
        }
        out
    }
}

/// Spanning tree bookkeeping used for homology computations.
#[derive(Clone, Debug)]
struct TreeData {
    /// For each vertex other than the root: the dart from its parent to it.
    parent_dart: Vec<Option<u32>>,
    depth: Vec<u32>,
    in_tree: Vec<bool>,
    cotree: Vec<u32>,
}

fn spanning_tree(rg: &RibbonGraph) -> TreeData {
    let nv = rg.n_vertices() as usize;
    let mut parent_dart = vec![None; nv];
    let mut depth = vec![0u32; nv];
    let mut in_tree = vec![false; rg.n_edges() as usize];
    let mut visited = vec![false; nv];
    visited[0] = true;
    let mut queue = std::collections::VecDeque::from([0u32]);
    // deterministic: scan darts in ascending order at each vertex
    let mut darts_at: Vec<Vec<u32>> = vec![Vec::new(); nv];
    for d in 0..rg.n_darts() {
        darts_at[rg.vertex(d) as usize].push(d);
    }
    while let Some(v) = queue.pop_front() {
        for &d in &darts_at[v as usize] {
            let w = rg.head(d);
            if !visited[w as usize] {
                visited[w as usize] = true;
                parent_dart[w as usize] = Some(d);
                depth[w as usize] = depth[v as usize] + 1;
                in_tree[rg.edge(d) as usize] = true;
                queue.push_back(w);
            }
        }
    }
    let cotree = (0..rg.n_edges()).filter(|&e| !in_tree[e as usize]).collect();
    TreeData { parent_dart, depth, in_tree, cotree }
}

impl TreeData {
    /// Darts walking from `a` to `b` through the tree.
    fn path(&self, rg: &RibbonGraph, a: u32, b: u32) -> Vec<u32> {
        let mut up_a = Vec::new();
        let mut up_b = Vec::new();
        let (mut x, mut y) = (a, b);
        while self.depth[x as usize] > self.depth[y as usize] {
            let d = self.parent_dart[x as usize].expect("non-root has a parent");
            up_a.push(rg.pair(d)); // walk x -> parent(x)
            x = rg.vertex(d);
        }
        while self.depth[y as usize] > self.depth[x as usize] {
            let d = self.parent_dart[y as usize].expect("non-root has a parent");
            up_b.push(d); // recorded parent -> y, used in reverse below
            y = rg.vertex(d);
        }
        while x != y {
            let dx = self.parent_dart[x as usize].expect("non-root has a parent");
            up_a.push(rg.pair(dx));
            x = rg.vertex(dx);
            let dy = self.parent_dart[y as usize].expect("non-root has a parent");
            up_b.push(dy);
            y = rg.vertex(dy);
        }
        up_b.reverse();
        up_a.extend(up_b);
        up_a
    }
}

/// Rotation of the one-vertex graph obtained by contracting a spanning tree.
///
/// Returns the cyclic order of the surviving (co-tree) darts.
fn contracted_rotation(rg: &RibbonGraph, tree: &TreeData) -> Vec<u32> {
    let n = rg.n_darts() as usize;
    let mut next: Vec<u32> = (0..n as u32).map(|d| rg.rot(d)).collect();
    let mut prev = vec![0u32; n];
    for d in 0..n as u32 {
        prev[next[d as usize] as usize] = d;
    }
    let mut alive = vec![true; n];
    for e in 0..rg.n_edges() {
        if !tree.in_tree[e as usize] {
            continue;
        }
        let dp = 2 * e;
        let dm = 2 * e + 1;
        let (p, q) = (prev[dp as usize], next[dp as usize]);
        let (r, s) = (prev[dm as usize], next[dm as usize]);
        if q == dp && s == dm {
            // both endpoints are bare: nothing survives locally
        } else if q == dp {
            // tail vertex had only this dart
            next[r as usize] = s;
            prev[s as usize] = r;
        } else if s == dm {
            next[p as usize] = q;
            prev[q as usize] = p;
        } else {
            next[p as usize] = s;
            prev[s as usize] = p;
            next[r as usize] = q;
            prev[q as usize] = r;
        }
        alive[dp as usize] = false;
        alive[dm as usize] = false;
    }
    let Some(start) = (0..n as u32).find(|&d| alive[d as usize]) else {
        return Vec::new();
    };
    let mut order = Vec::new();
    let mut d = start;
    loop {
        order.push(d);
        d = next[d as usize];
        if d == start {
            break;
        }
    }
    debug_assert_eq!(order.len(), alive.iter().filter(|&&a| a).count());
    order
}

/// First homology of the surface with its intersection form.
///
/// `cycles` is a basis of 2g closed walks; `form` is their pairwise algebraic
/// intersection matrix, and `change_of_basis` is a unimodular `P` with
/// `P^T * form * P = J_std`. `classes` are the standard-coordinate vectors of
/// the basis cycles (the columns of `P^{-1}`).
#[derive(Clone, Debug)]
pub struct HomologyBasis {
    pub genus: usize,
    pub cycles: Vec<Cycle>,
    pub classes: Vec<Vec<Int>>,
    pub form: IMat,
    pub change_of_basis: IMat,
    // internals for coordinate computations
    cotree: Vec<u32>,
    lift_chains: Vec<Vec<Int>>,
    snf_u: IMat,
    rel_rank: usize,
    p_inv: IMat,
}

/// Compute a homology basis for a connected ribbon graph.
pub fn homology_basis(rg: &RibbonGraph) -> Result<HomologyBasis> {
    if !rg.is_connected() {
        return Err(Error::MalformedGraph("graph is not connected".into()));
    }
    let genus = rg.genus()?;
    let tree = spanning_tree(rg);
    let cotree: Vec<u32> = tree.cotree.clone();
    let n = cotree.len();
    let mut cotree_pos = vec![None; rg.n_edges() as usize];
    for (i, &e) in cotree.iter().enumerate() {
        cotree_pos[e as usize] = Some(i);
    }

    // fundamental cycles: co-tree edge + tree path back
    let mut fundamental = Vec::with_capacity(n);
    for &e in &cotree {
        let d = 2 * e;
        let mut darts = vec![d];
        darts.extend(tree.path(rg, rg.head(d), rg.vertex(d)));
        let cyc = Cycle::new(rg, darts, None)?;
        fundamental.push(cyc.chain(rg));
    }

    // intersection pairing of co-tree loops in the contracted one-vertex graph
    let order = contracted_rotation(rg, &tree);
    let m = order.len();
    let mut pos = vec![usize::MAX; rg.n_darts() as usize];
    for (i, &d) in order.iter().enumerate() {
        pos[d as usize] = i;
    }
    let gram = IMat::from_fn(n, n, |i, j| {
        if i == j {
            return Int::zero();
        }
        // loop i leaves along dart 2e, re-enters at 2e+1
        let (ti, hi) = (2 * cotree[i], 2 * cotree[i] + 1);
        let (tj, hj) = (2 * cotree[j], 2 * cotree[j] + 1);
        let rel = |d: u32| (pos[d as usize] + m - pos[hi as usize]) % m;
        let (a, b, c) = (rel(hj), rel(ti), rel(tj));
        if a < b && b < c {
            Int::one()
        } else if c < b && b < a {
            -Int::one()
        } else {
            Int::zero()
        }
    });

    // face relations in co-tree coordinates
    let faces = rg.faces();
    let n_faces = faces.len();
    let mut rel = IMat::zero(n, n_faces);
    for (f, walk) in faces.iter().enumerate() {
        for &d in walk {
            let e = rg.edge(d) as usize;
            if let Some(i) = cotree_pos[e] {
                if d % 2 == 0 {
                    rel[(i, f)] += 1;
                } else {
                    rel[(i, f)] -= 1;
                }
            }
        }
    }
    let snf = smith_normal_form(&rel);
    if snf.diag.iter().any(|d| !d.is_one()) {
        return Err(Error::InternalConsistency(format!(
            "torsion in surface homology: divisors {:?}",
            snf.diag
        )));
    }
    let r = snf.diag.len();
    if n - r != 2 * genus {
        return Err(Error::InternalConsistency(format!(
            "homology rank {} does not match genus {}",
            n - r,
            genus
        )));
    }
    // relations must pair trivially with everything
    for f in 0..n_faces {
        let rel_col = rel.col(f);
        let paired = gram.mul_vec(&rel_col);
        for (i, val) in paired.iter().enumerate() {
            // <e_i, rel> must vanish in homology; it vanishes on the nose here
            if !val.is_zero() {
                return Err(Error::InternalConsistency(format!(
                    "face boundary pairs nontrivially with loop {i}"
                )));
            }
        }
    }

    // basis lifts: columns r..n of U^{-1}
    let lifts: Vec<Vec<Int>> = (r..n).map(|k| snf.u_inv.col(k)).collect();
    let form = IMat::from_fn(2 * genus, 2 * genus, |i, j| {
        let gx = gram.mul_vec(&lifts[j]);
        lifts[i].iter().zip(gx.iter()).map(|(a, b)| a * b).sum()
    });
    // sanity: skew and unimodular
    if form != form.transpose().neg() {
        return Err(Error::InternalConsistency("intersection form is not skew".into()));
    }
    if genus > 0 && !form.det().is_one() {
        return Err(Error::InternalConsistency(format!(
            "intersection form has determinant {} (expected 1)",
            form.det()
        )));
    }
    let change_of_basis = if genus > 0 {
        symplectic_reduce(&form)?
    } else {
        IMat::identity(0)
    };
    let p_inv = if genus > 0 {
        inverse_unimodular(&change_of_basis)?
    } else {
        IMat::identity(0)
    };
    let classes: Vec<Vec<Int>> = (0..2 * genus).map(|k| p_inv.col(k)).collect();

    // realize lifts as closed walks, remembering their full edge chains
    let mut cycles = Vec::with_capacity(2 * genus);
    let mut lift_chains = Vec::with_capacity(2 * genus);
    for lift in &lifts {
        let mut chain = vec![Int::zero(); rg.n_edges() as usize];
        for (i, c) in lift.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (e, f) in fundamental[i].iter().enumerate() {
                chain[e] += c * f;
            }
        }
        cycles.push(chain_to_walk(rg, &tree, &chain)?);
        lift_chains.push(chain);
    }

    let basis = HomologyBasis {
        genus,
        cycles,
        classes,
        form,
        change_of_basis,
        cotree,
        lift_chains,
        snf_u: snf.u,
        rel_rank: r,
        p_inv,
    };
    Ok(basis)
}

impl HomologyBasis {
    /// Standard symplectic coordinates of an edge chain (must be a cycle).
    fn chain_class(&self, chain: &[Int]) -> Vec<Int> {
        let x: Vec<Int> = self
            .cotree
            .iter()
            .map(|&e| chain[e as usize].clone())
            .collect();
        let y = self.snf_u.mul_vec(&x);
        let quotient: Vec<Int> = y[self.rel_rank..].to_vec();
        self.p_inv.mul_vec(&quotient)
    }
}

/// Coordinates of `[c]` in the standard symplectic basis.
///
/// A nonzero class certifies the curve is nonseparating; zero is necessary
/// but not sufficient for separating.
pub fn cycle_class(rg: &RibbonGraph, basis: &HomologyBasis, c: &Cycle) -> Result<Vec<Int>> {
    // re-validate: `c` may have been built against another graph
    let c = Cycle::new(rg, c.darts.clone(), c.name.clone())?;
    Ok(basis.chain_class(&c.chain(rg)))
}

/// The symplectic matrix describing the homology action of `phi`.
pub fn induced_map(
    rg: &RibbonGraph,
    basis: &HomologyBasis,
    phi: &GraphAutomorphism,
) -> Result<IMat> {
    let g2 = 2 * basis.genus;
    let mut cols: Vec<Vec<Int>> = Vec::with_capacity(g2);
    // image of each standard-basis class: push its lift chain through phi
    for k in 0..g2 {
        // standard basis vector e_k = sum_l P[l][k] * (basis cycle l)
        let mut chain = vec![Int::zero(); rg.n_edges() as usize];
        for l in 0..g2 {
            let coeff = &basis.change_of_basis[(l, k)];
            if coeff.is_zero() {
                continue;
            }
            for (e, f) in basis.lift_chains[l].iter().enumerate() {
                chain[e] += coeff * f;
            }
        }
        let image = phi.chain_map(&chain);
        cols.push(basis.chain_class(&image));
    }
    let m = IMat::from_fn(g2, g2, |r, c| cols[c][r].clone());
    // form preservation: M^T J M = J
    let j = j_std(basis.genus);
    if m.transpose().mul(&j).mul(&m) != j {
        return Err(Error::InternalConsistency(
            "induced map does not preserve the symplectic form".into(),
        ));
    }
    Ok(m)
}

/// Realize an integer cycle chain as one closed walk.
///
/// Components of the support are stitched through spanning-tree paths
/// traversed out and back, which leaves the chain unchanged.
fn chain_to_walk(rg: &RibbonGraph, tree: &TreeData, chain: &[Int]) -> Result<Cycle> {
    let mut outgoing: BTreeMap<u32, Vec<u32>> = BTreeMap::new();
    let mut total = 0usize;
    for (e, c) in chain.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let mag: usize = c
            .abs()
            .try_into()
            .map_err(|_| Error::InternalConsistency("chain coefficient overflow".into()))?;
        let d = if c.is_positive() { 2 * e as u32 } else { 2 * e as u32 + 1 };
        outgoing.entry(rg.vertex(d)).or_default().extend(std::iter::repeat(d).take(mag));
        total += mag;
    }
    if total == 0 {
        return Cycle::new(rg, Vec::new(), None);
    }
    // Eulerian circuit per support component (Hierholzer)
    let mut circuits: Vec<(u32, Vec<u32>)> = Vec::new();
    while let Some((&start, _)) = outgoing.iter().find(|(_, ds)| !ds.is_empty()) {
        let mut circuit = Vec::new();
        let mut stack: Vec<u32> = Vec::new();
        let mut cur = start;
        loop {
            let next = outgoing.get_mut(&cur).and_then(|ds| ds.pop());
            match next {
                Some(d) => {
                    stack.push(d);
                    cur = rg.head(d);
                }
                None => match stack.pop() {
                    Some(d) => {
                        circuit.push(d);
                        cur = rg.vertex(d);
                    }
                    None => break,
                },
            }
        }
        circuit.reverse();
        if circuit.is_empty() {
            return Err(Error::InternalConsistency("unbalanced chain".into()));
        }
        circuits.push((start, circuit));
        outgoing.retain(|_, ds| !ds.is_empty());
    }
    // stitch all circuits at the first one's basepoint through tree paths
    let (base, mut walk) = circuits.remove(0);
    for (s, circuit) in circuits {
        let out_path = tree.path(rg, base, s);
        let back_path = tree.path(rg, s, base);
        walk.extend(out_path);
        walk.extend(circuit);
        walk.extend(back_path);
    }
    let cyc = Cycle::new(rg, walk, None)?;
    debug_assert_eq!(cyc.chain(rg), chain.to_vec());
    Ok(cyc)
}

/// One-vertex, two-edge, one-face torus cellulation.
pub fn torus_model() -> RibbonGraph {
    let labels = BTreeMap::from([(0u32, "a".to_string()), (2u32, "b".to_string())]);
    RibbonGraph::new(vec![1, 0, 3, 2], vec![2, 3, 1, 0], labels).expect("valid torus model")
}

/// Two-vertex, one-edge sphere cellulation.
pub fn sphere_model() -> RibbonGraph {
    RibbonGraph::new(vec![1, 0], vec![0, 1], BTreeMap::new()).expect("valid sphere model")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn torus_counts() {
        let t = torus_model();
        assert_eq!(t.n_vertices(), 1);
        assert_eq!(t.n_edges(), 2);
        assert_eq!(t.n_faces(), 1);
        assert_eq!(t.genus().unwrap(), 1);
    }

    #[test]
    fn sphere_counts() {
        let s = sphere_model();
        assert_eq!(s.n_vertices(), 2);
        assert_eq!(s.n_faces(), 1);
        assert_eq!(s.genus().unwrap(), 0);
    }

    #[test]
    fn torus_rotation_order() {
        // sigma at the single vertex: a+ -> b+ -> a- -> b-
        let t = torus_model();
        assert_eq!(t.rot(0), 2);
        assert_eq!(t.rot(2), 1);
        assert_eq!(t.rot(1), 3);
        assert_eq!(t.rot(3), 0);
    }

    #[test]
    fn malformed_graphs_rejected() {
        assert!(RibbonGraph::new(vec![0, 1], vec![0, 1], BTreeMap::new()).is_err());
        assert!(RibbonGraph::new(vec![1, 0, 3], vec![0, 1, 2], BTreeMap::new()).is_err());
    }

    #[test]
    fn torus_homology_form_is_standard() {
        let t = torus_model();
        let basis = homology_basis(&t).unwrap();
        assert_eq!(basis.genus, 1);
        assert_eq!(basis.cycles.len(), 2);
        let expected = IMat::from_i64_rows(&[vec![0, 1], vec![-1, 0]]);
        assert_eq!(basis.form, expected);
        assert_eq!(basis.form.det(), Int::one());
    }

    #[test]
    fn face_boundary_is_null_homologous() {
        let t = torus_model();
        let basis = homology_basis(&t).unwrap();
        for walk in t.faces() {
            let c = Cycle::new(&t, walk, None).unwrap();
            let class = cycle_class(&t, &basis, &c).unwrap();
            assert!(class.iter().all(|x| x.is_zero()));
        }
    }

    #[test]
    fn reversed_cycle_negates_class() {
        let t = torus_model();
        let basis = homology_basis(&t).unwrap();
        let c = basis.cycles[0].clone();
        let class = cycle_class(&t, &basis, &c).unwrap();
        let rev = cycle_class(&t, &basis, &c.reversed(&t)).unwrap();
        assert!(class.iter().zip(rev.iter()).all(|(a, b)| *a == -b.clone()));
        assert!(class.iter().any(|x| !x.is_zero()));
    }

    #[test]
    fn open_path_rejected() {
        let t = torus_model();
        assert!(Cycle::new(&t, vec![0, 0], None).is_err() || t.head(0) == t.vertex(0));
        // on the one-vertex torus everything closes; use the sphere instead
        let s = sphere_model();
        assert!(Cycle::new(&s, vec![0], None).is_err());
    }

    #[test]
    fn sphere_has_trivial_homology() {
        let s = sphere_model();
        let basis = homology_basis(&s).unwrap();
        assert_eq!(basis.genus, 0);
        assert!(basis.cycles.is_empty());
    }

    #[test]
    fn orientation_reversing_map_rejected() {
        // on the torus, fixing edge a and swapping edge b's darts conjugates
        // the rotation to its inverse
        let t = torus_model();
        match GraphAutomorphism::new(&t, vec![0, 1, 3, 2]) {
            Err(crate::error::Error::OrientationReversing) => {}
            other => panic!("expected orientation-reversing rejection, got {other:?}"),
        }
    }

    #[test]
    fn identity_automorphism_induces_identity() {
        let t = torus_model();
        let basis = homology_basis(&t).unwrap();
        let id = GraphAutomorphism::identity(&t);
        let m = induced_map(&t, &basis, &id).unwrap();
        assert!(m.is_identity());
    }

    #[test]
    fn basis_cycles_have_unit_classes() {
        let t = torus_model();
        let basis = homology_basis(&t).unwrap();
        for (k, c) in basis.cycles.iter().enumerate() {
            let class = cycle_class(&t, &basis, c).unwrap();
            assert_eq!(class, basis.classes[k], "basis cycle {k}");
        }
    }

    #[test]
    fn graph_json_roundtrip() {
        let t = torus_model();
        let json = t.to_json();
        let text = serde_json::to_string(&json).unwrap();
        let back: RibbonGraphJson = serde_json::from_str(&text).unwrap();
        assert_eq!(json, back);
        let rg = RibbonGraph::from_json(&back).unwrap();
        assert_eq!(rg.genus().unwrap(), 1);
    }
}
