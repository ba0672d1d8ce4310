//! Exact integer linear algebra on dense matrices.
//!
//! Everything here runs over `BigInt`: the verifier must never overflow
//! silently. Matrices are small (at most a few dozen rows), so the naive
//! algorithms are the right trade-off.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Int = BigInt;

/// Dense row-major integer matrix.
#[derive(Clone, PartialEq, Eq)]
pub struct IMat {
    pub rows: usize,
    pub cols: usize,
    data: Vec<Int>,
}

impl std::fmt::Debug for IMat {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|c| self[(r, c)].to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl std::ops::Index<(usize, usize)> for IMat {
    type Output = Int;
    fn index(&self, (r, c): (usize, usize)) -> &Int {
        &self.data[r * self.cols + c]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IMat {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Int {
        &mut self.data[r * self.cols + c]
    }
}

impl IMat {
    pub fn zero(rows: usize, cols: usize) -> Self {
        IMat { rows, cols, data: vec![Int::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IMat::zero(n, n);
        for i in 0..n {
            m[(i, i)] = Int::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Int) -> Self {
        let mut m = IMat::zero(rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                m[(r, c)] = f(r, c);
            }
        }
        m
    }

    pub fn from_i64_rows(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        IMat::from_fn(r, c, |i, j| Int::from(rows[i][j]))
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|r| {
                (0..self.cols).all(|c| {
                    if r == c { self[(r, c)].is_one() } else { self[(r, c)].is_zero() }
                })
            })
    }

    pub fn transpose(&self) -> IMat {
        IMat::from_fn(self.cols, self.rows, |r, c| self[(c, r)].clone())
    }

    pub fn mul(&self, other: &IMat) -> IMat {
        assert_eq!(self.cols, other.rows, "dimension mismatch in matrix product");
        let mut out = IMat::zero(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(r, k)];
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let term = a * &other[(k, c)];
                    out[(r, c)] += term;
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Int]) -> Vec<Int> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|r| (0..self.cols).map(|c| &self[(r, c)] * &v[c]).sum())
            .collect()
    }

    pub fn neg(&self) -> IMat {
        IMat::from_fn(self.rows, self.cols, |r, c| -self[(r, c)].clone())
    }

    pub fn pow(&self, mut e: u64) -> IMat {
        assert_eq!(self.rows, self.cols);
        let mut base = self.clone();
        let mut acc = IMat::identity(self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn col(&self, c: usize) -> Vec<Int> {
        (0..self.rows).map(|r| self[(r, c)].clone()).collect()
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> Int {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        if n == 0 {
            return Int::one();
        }
        let mut a = self.clone();
        let mut sign = Int::one();
        let mut prev = Int::one();
        for k in 0..n - 1 {
            if a[(k, k)].is_zero() {
                let Some(swap) = (k + 1..n).find(|&r| !a[(r, k)].is_zero()) else {
                    return Int::zero();
                };
                for c in 0..n {
                    let tmp = a[(k, c)].clone();
                    a[(k, c)] = a[(swap, c)].clone();
                    a[(swap, c)] = tmp;
                }
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &a[(i, j)] * &a[(k, k)] - &a[(i, k)] * &a[(k, j)];
                    let (q, r) = num.div_rem(&prev);
                    debug_assert!(r.is_zero(), "Bareiss division must be exact");
                    a[(i, j)] = q;
                }
                a[(i, k)] = Int::zero();
            }
            prev = a[(k, k)].clone();
        }
        sign * a[(n - 1, n - 1)].clone()
    }
}

/// Smith normal form `U * A * V = D` with unimodular transforms.
///
/// Returns `(diag, u, u_inv, v)` where `diag` holds the nonzero elementary
/// divisors in order.
pub struct Snf {
    pub diag: Vec<Int>,
    pub u: IMat,
    pub u_inv: IMat,
    pub v: IMat,
}

pub fn smith_normal_form(a: &IMat) -> Snf {
    let (rows, cols) = (a.rows, a.cols);
    let mut m = a.clone();
    let mut u = IMat::identity(rows);
    let mut u_inv = IMat::identity(rows);
    let mut v = IMat::identity(cols);

    // row ops mirror into u (same op) and u_inv (inverse op on columns)
    let swap_rows = |m: &mut IMat, u: &mut IMat, ui: &mut IMat, i: usize, j: usize| {
        for c in 0..m.cols {
            let t = m[(i, c)].clone();
            m[(i, c)] = m[(j, c)].clone();
            m[(j, c)] = t;
        }
        for c in 0..u.cols {
            let t = u[(i, c)].clone();
            u[(i, c)] = u[(j, c)].clone();
            u[(j, c)] = t;
        }
        for r in 0..ui.rows {
            let t = ui[(r, i)].clone();
            ui[(r, i)] = ui[(r, j)].clone();
            ui[(r, j)] = t;
        }
    };
    // row i += q * row j (i != j); inverse: col j -= q * col i
    let add_row = |m: &mut IMat, u: &mut IMat, ui: &mut IMat, i: usize, j: usize, q: &Int| {
        debug_assert!(i != j);
        for c in 0..m.cols {
            let t = q * &m[(j, c)];
            m[(i, c)] += t;
        }
        for c in 0..u.cols {
            let t = q * &u[(j, c)];
            u[(i, c)] += t;
        }
        for r in 0..ui.rows {
            let t = q * &ui[(r, i)];
            ui[(r, j)] -= t;
        }
    };
    let negate_row = |m: &mut IMat, u: &mut IMat, ui: &mut IMat, i: usize| {
        for c in 0..m.cols {
            m[(i, c)] = -m[(i, c)].clone();
        }
        for c in 0..u.cols {
            u[(i, c)] = -u[(i, c)].clone();
        }
        for r in 0..ui.rows {
            ui[(r, i)] = -ui[(r, i)].clone();
        }
    };
    let swap_cols = |m: &mut IMat, v: &mut IMat, i: usize, j: usize| {
        for r in 0..m.rows {
            let t = m[(r, i)].clone();
            m[(r, i)] = m[(r, j)].clone();
            m[(r, j)] = t;
        }
        for r in 0..v.rows {
            let t = v[(r, i)].clone();
            v[(r, i)] = v[(r, j)].clone();
            v[(r, j)] = t;
        }
    };
    // col i += q * col j (i != j)
    let add_col = |m: &mut IMat, v: &mut IMat, i: usize, j: usize, q: &Int| {
        debug_assert!(i != j);
        for r in 0..m.rows {
            let t = q * &m[(r, j)];
            m[(r, i)] += t;
        }
        for r in 0..v.rows {
            let t = q * &v[(r, j)];
            v[(r, i)] += t;
        }
    };

    loop {
        // diagonalization pass
        let mut t = 0usize;
        while t < rows.min(cols) {
            // pivot: smallest nonzero |entry| in the remaining block, row-major ties
            let mut pivot: Option<(usize, usize)> = None;
            for r in t..rows {
                for c in t..cols {
                    if !m[(r, c)].is_zero() {
                        let better = match pivot {
                            None => true,
                            Some((pr, pc)) => m[(r, c)].abs() < m[(pr, pc)].abs(),
                        };
                        if better {
                            pivot = Some((r, c));
                        }
                    }
                }
            }
            let Some((pr, pc)) = pivot else { break };
            if pr != t {
                swap_rows(&mut m, &mut u, &mut u_inv, t, pr);
            }
            if pc != t {
                swap_cols(&mut m, &mut v, t, pc);
            }
            // clear row and column t
            let mut dirty = true;
            while dirty {
                dirty = false;
                for r in t + 1..rows {
                    if !m[(r, t)].is_zero() {
                        let q = -(&m[(r, t)] / &m[(t, t)]);
                        if !q.is_zero() {
                            add_row(&mut m, &mut u, &mut u_inv, r, t, &q);
                        }
                        if !m[(r, t)].is_zero() {
                            swap_rows(&mut m, &mut u, &mut u_inv, t, r);
                            dirty = true;
                        }
                    }
                }
                for c in t + 1..cols {
                    if !m[(t, c)].is_zero() {
                        let q = -(&m[(t, c)] / &m[(t, t)]);
                        if !q.is_zero() {
                            add_col(&mut m, &mut v, c, t, &q);
                        }
                        if !m[(t, c)].is_zero() {
                            swap_cols(&mut m, &mut v, t, c);
                            dirty = true;
                        }
                    }
                }
            }
            if m[(t, t)].is_negative() {
                negate_row(&mut m, &mut u, &mut u_inv, t);
            }
            t += 1;
        }
        // enforce the divisibility chain; a violation re-enters diagonalization
        let rank = (0..rows.min(cols)).take_while(|&i| !m[(i, i)].is_zero()).count();
        let mut violation = None;
        'scan: for i in 0..rank {
            for j in i + 1..rank {
                if !(&m[(j, j)] % &m[(i, i)]).is_zero() {
                    violation = Some((i, j));
                    break 'scan;
                }
            }
        }
        match violation {
            Some((i, j)) => {
                // put d_j next to d_i and let the gcd machinery merge them
                add_col(&mut m, &mut v, i, j, &Int::one());
            }
            None => break,
        }
    }
    let rank = (0..rows.min(cols)).take_while(|&i| !m[(i, i)].is_zero()).count();
    let diag = (0..rank).map(|i| m[(i, i)].clone()).collect();
    Snf { diag, u, u_inv, v }
}

/// Inverse of a unimodular integer matrix.
pub fn inverse_unimodular(a: &IMat) -> Result<IMat> {
    let snf = smith_normal_form(a);
    if snf.diag.len() != a.rows || snf.diag.iter().any(|d| !d.is_one()) {
        return Err(Error::InternalConsistency(format!(
            "matrix is not unimodular (elementary divisors {:?})",
            snf.diag
        )));
    }
    // U A V = I  =>  A^-1 = V U
    Ok(snf.v.mul(&snf.u))
}

/// Lattice basis for the row span: nonzero rows of the row-style Hermite form.
pub fn row_lattice_basis(rows: Vec<Vec<Int>>) -> Vec<Vec<Int>> {
    let mut rows: Vec<Vec<Int>> = rows.into_iter().filter(|r| r.iter().any(|x| !x.is_zero())).collect();
    if rows.is_empty() {
        return rows;
    }
    let cols = rows[0].len();
    let mut pivot_row = 0usize;
    for c in 0..cols {
        if pivot_row >= rows.len() {
            break;
        }
        loop {
            let mut best: Option<usize> = None;
            for r in pivot_row..rows.len() {
                if !rows[r][c].is_zero() {
                    let better = match best {
                        None => true,
                        Some(b) => rows[r][c].abs() < rows[b][c].abs(),
                    };
                    if better {
                        best = Some(r);
                    }
                }
            }
            let Some(b) = best else { break };
            rows.swap(pivot_row, b);
            let mut reduced_all = true;
            for r in pivot_row + 1..rows.len() {
                if !rows[r][c].is_zero() {
                    let q = &rows[r][c] / &rows[pivot_row][c];
                    if !q.is_zero() {
                        for k in 0..cols {
                            let t = &q * &rows[pivot_row][k];
                            rows[r][k] -= t;
                        }
                    }
                    if !rows[r][c].is_zero() {
                        reduced_all = false;
                    }
                }
            }
            if reduced_all {
                if rows[pivot_row][c].is_negative() {
                    for k in 0..cols {
                        rows[pivot_row][k] = -rows[pivot_row][k].clone();
                    }
                }
                pivot_row += 1;
                break;
            }
        }
    }
    rows.truncate(pivot_row);
    rows
}

// Skew form helpers --------------------------------------------------------

/// The standard symplectic form `J` in block-diagonal `[[0,1],[-1,0]]` layout.
pub fn j_std(g: usize) -> IMat {
    let mut j = IMat::zero(2 * g, 2 * g);
    for i in 0..g {
        j[(2 * i, 2 * i + 1)] = Int::one();
        j[(2 * i + 1, 2 * i)] = -Int::one();
    }
    j
}

fn form_apply(form: &IMat, x: &[Int], y: &[Int]) -> Int {
    let fy = form.mul_vec(y);
    x.iter().zip(fy.iter()).map(|(a, b)| a * b).sum()
}

/// Integer symplectic basis reduction.
///
/// Given a skew unimodular form `F` on `Z^{2g}`, returns unimodular `P` with
/// `P^T F P = J_std`. Classical pairing-off: pick `a`, solve for a dual `b`
/// with `<a,b> = 1`, project everything else to the symplectic complement,
/// recurse.
pub fn symplectic_reduce(form: &IMat) -> Result<IMat> {
    let n = form.rows;
    if n % 2 != 0 {
        return Err(Error::InternalConsistency("odd rank skew form".into()));
    }
    let g = n / 2;
    // current lattice basis in ambient coordinates
    let mut basis: Vec<Vec<Int>> = (0..n)
        .map(|i| (0..n).map(|r| if r == i { Int::one() } else { Int::zero() }).collect())
        .collect();
    let mut out: Vec<Vec<Int>> = Vec::with_capacity(n);
    for _ in 0..g {
        let a = basis[0].clone();
        // row of pairings <a, basis[j]>
        let pairings: Vec<Int> = basis.iter().map(|b| form_apply(form, &a, b)).collect();
        // extended gcd over pairings[1..] to find b with <a,b> = 1
        let mut coeffs = vec![Int::zero(); basis.len()];
        let mut gcd = Int::zero();
        for (j, p) in pairings.iter().enumerate().skip(1) {
            if p.is_zero() {
                continue;
            }
            if gcd.is_zero() {
                gcd = p.abs();
                coeffs[j] = if p.is_negative() { -Int::one() } else { Int::one() };
            } else {
                let e = gcd.extended_gcd(p);
                for c in coeffs.iter_mut() {
                    *c *= &e.x;
                }
                coeffs[j] = e.y.clone();
                gcd = e.gcd;
            }
        }
        if !gcd.is_one() {
            return Err(Error::InternalConsistency(format!(
                "skew form not unimodular: primitive vector pairs with gcd {gcd}"
            )));
        }
        let b: Vec<Int> = (0..n)
            .map(|r| coeffs.iter().zip(basis.iter()).map(|(c, v)| c * &v[r]).sum())
            .collect();
        debug_assert!(form_apply(form, &a, &b).is_one());
        // project the rest into the complement of span(a, b)
        let mut projected: Vec<Vec<Int>> = Vec::new();
        for w in basis.iter().skip(1) {
            let s = form_apply(form, &b, w);
            let t = form_apply(form, &a, w);
            // w' = w + <b,w> a - <a,w> b
            let wp: Vec<Int> = (0..n).map(|r| &w[r] + &s * &a[r] - &t * &b[r]).collect();
            projected.push(wp);
        }
        out.push(a);
        out.push(b);
        basis = row_lattice_basis(projected);
        if basis.len() != n - out.len() {
            return Err(Error::InternalConsistency(format!(
                "symplectic complement has rank {} (expected {})",
                basis.len(),
                n - out.len()
            )));
        }
    }
    let p = IMat::from_fn(n, n, |r, c| out[c][r].clone());
    // sanity: P^T F P = J_std
    let check = p.transpose().mul(form).mul(&p);
    if check != j_std(g) {
        return Err(Error::InternalConsistency("symplectic reduction check failed".into()));
    }
    Ok(p)
}

// Characteristic polynomial ------------------------------------------------

/// Division-free Berkowitz characteristic polynomial.
///
/// Returns coefficients `c_0..c_n` of `det(xI - A) = sum c_k x^k`, `c_n = 1`.
pub fn charpoly(a: &IMat) -> Vec<Int> {
    assert_eq!(a.rows, a.cols);
    let n = a.rows;
    if n == 0 {
        return vec![Int::one()];
    }
    // Berkowitz: iterate over leading principal minors, combining Toeplitz
    // vectors. `poly` holds coefficients highest-degree first.
    let mut poly: Vec<Int> = vec![Int::one(), -a[(0, 0)].clone()];
    for k in 1..n {
        // row R = A[k, 0..k], col C = A[0..k, k], principal block M = A[0..k,0..k]
        let m_dim = k;
        let mut c_vec: Vec<Int> = vec![Int::one(), -a[(k, k)].clone()];
        // terms -R M^j C for j = 0..k-1
        let mut v: Vec<Int> = (0..m_dim).map(|i| a[(i, k)].clone()).collect();
        for _ in 0..m_dim {
            let dot: Int = (0..m_dim).map(|i| &a[(k, i)] * &v[i]).sum();
            c_vec.push(-dot);
            let next: Vec<Int> = (0..m_dim)
                .map(|r| (0..m_dim).map(|j| &a[(r, j)] * &v[j]).sum())
                .collect();
            v = next;
        }
        // poly = conv(c_vec, poly)
        let mut next = vec![Int::zero(); poly.len() + c_vec.len() - 1];
        for (i, ci) in c_vec.iter().enumerate() {
            if ci.is_zero() {
                continue;
            }
            for (j, pj) in poly.iter().enumerate() {
                let t = ci * pj;
                next[i + j] += t;
            }
        }
        next.truncate(k + 2);
        poly = next;
    }
    poly.reverse(); // lowest degree first
    poly
}

/// Cyclotomic polynomial `Phi_d`, coefficients lowest degree first.
pub fn cyclotomic(d: u64) -> Vec<Int> {
    // Phi_d = (x^d - 1) / prod_{e | d, e < d} Phi_e
    let mut num = vec![Int::zero(); d as usize + 1];
    num[0] = -Int::one();
    num[d as usize] = Int::one();
    for e in 1..d {
        if d % e == 0 {
            let phi_e = cyclotomic(e);
            num = poly_div_exact(&num, &phi_e).expect("cyclotomic division is exact");
        }
    }
    num
}

/// Exact polynomial division over Z; returns None if not exact.
pub fn poly_div_exact(num: &[Int], den: &[Int]) -> Option<Vec<Int>> {
    let dn = num.len() - 1;
    let dd = den.iter().rposition(|c| !c.is_zero())?;
    if dn < dd {
        return None;
    }
    let mut rem = num.to_vec();
    let mut quot = vec![Int::zero(); dn - dd + 1];
    for k in (0..=dn - dd).rev() {
        let lead = rem[k + dd].clone();
        if lead.is_zero() {
            continue;
        }
        let (q, r) = lead.div_rem(&den[dd]);
        if !r.is_zero() {
            return None;
        }
        quot[k] = q.clone();
        for i in 0..=dd {
            let t = &q * &den[i];
            rem[k + i] -= t;
        }
    }
    if rem.iter().any(|c| !c.is_zero()) {
        return None;
    }
    Some(quot)
}

fn euler_phi(mut n: u64) -> u64 {
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

/// Whether a monic integer polynomial is a product of cyclotomic polynomials.
///
/// Being such a product is necessary for an integer matrix to have finite
/// order, so a `false` here certifies infinite order without powering.
pub fn is_cyclotomic_product(poly: &[Int]) -> bool {
    let deg = poly.len() - 1;
    let mut rem = poly.to_vec();
    let mut rem_deg = deg;
    // phi(d) >= sqrt(d/2), so d <= 2 deg^2 bounds all candidates
    let cap = (2 * deg * deg).max(2) as u64;
    let mut d = 1u64;
    while rem_deg > 0 && d <= cap {
        if euler_phi(d) as usize <= rem_deg {
            let phi_d = cyclotomic(d);
            while let Some(q) = poly_div_exact(&rem, &phi_d) {
                rem = q;
                rem_deg = rem.len() - 1;
                if rem_deg == 0 {
                    break;
                }
            }
        }
        d += 1;
    }
    rem_deg == 0 && rem[0].is_one()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[Vec<i64>]) -> IMat {
        IMat::from_i64_rows(rows)
    }

    #[test]
    fn det_small() {
        assert_eq!(m(&[vec![2, 1], vec![1, 1]]).det(), Int::from(1));
        assert_eq!(m(&[vec![0, 1], vec![-1, 0]]).det(), Int::from(1));
        assert_eq!(m(&[vec![1, 2], vec![2, 4]]).det(), Int::from(0));
        assert_eq!(
            m(&[vec![3, 0, 0], vec![0, 0, 2], vec![0, 5, 0]]).det(),
            Int::from(-30)
        );
    }

    #[test]
    fn snf_transforms_consistent() {
        let a = m(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, 4, 16]]);
        let snf = smith_normal_form(&a);
        let lhs = snf.u.mul(&a).mul(&snf.v);
        for i in 0..snf.diag.len() {
            assert_eq!(lhs[(i, i)], snf.diag[i]);
        }
        assert!(snf.u.mul(&snf.u_inv).is_identity());
        // oracle: d1 = gcd(entries) = 2, d1*d2 = gcd(2x2 minors) = 4, d1*d2*d3 = |det| = 624
        assert_eq!(a.det().abs(), Int::from(624));
        assert_eq!(snf.diag, vec![Int::from(2), Int::from(2), Int::from(156)]);
    }

    #[test]
    fn unimodular_inverse() {
        let a = m(&[vec![1, 2], vec![1, 3]]);
        let inv = inverse_unimodular(&a).unwrap();
        assert!(a.mul(&inv).is_identity());
        assert!(inverse_unimodular(&m(&[vec![2, 0], vec![0, 1]])).is_err());
    }

    #[test]
    fn symplectic_reduce_standard_and_shuffled() {
        let j = j_std(2);
        let p = symplectic_reduce(&j).unwrap();
        assert_eq!(p.transpose().mul(&j).mul(&p), j);

        // a non-standard unimodular skew form
        let f = m(&[
            vec![0, 1, 1, 0],
            vec![-1, 0, 0, 2],
            vec![-1, 0, 0, 1],
            vec![0, -2, -1, 0],
        ]);
        assert_eq!(f.det().abs(), Int::from(1));
        let p = symplectic_reduce(&f).unwrap();
        assert_eq!(p.transpose().mul(&f).mul(&p), j_std(2));
        assert_eq!(p.det().abs(), Int::from(1));
    }

    #[test]
    fn charpoly_matches_known() {
        let a = m(&[vec![2, 1], vec![1, 2]]);
        // x^2 - 4x + 3
        assert_eq!(charpoly(&a), vec![Int::from(3), Int::from(-4), Int::from(1)]);
        let rot = m(&[vec![0, -1], vec![1, 0]]);
        // x^2 + 1 = Phi_4
        assert_eq!(charpoly(&rot), vec![Int::from(1), Int::from(0), Int::from(1)]);
    }

    #[test]
    fn cyclotomic_values() {
        assert_eq!(cyclotomic(1), vec![Int::from(-1), Int::from(1)]);
        assert_eq!(cyclotomic(2), vec![Int::from(1), Int::from(1)]);
        assert_eq!(cyclotomic(4), vec![Int::from(1), Int::from(0), Int::from(1)]);
        assert_eq!(
            cyclotomic(6),
            vec![Int::from(1), Int::from(-1), Int::from(1)]
        );
    }

    #[test]
    fn cyclotomic_product_detection() {
        let rot = m(&[vec![0, -1], vec![1, 0]]);
        assert!(is_cyclotomic_product(&charpoly(&rot)));
        // a transvection has charpoly (x-1)^2 = Phi_1^2: cyclotomic product
        let t = m(&[vec![1, 1], vec![0, 1]]);
        assert!(is_cyclotomic_product(&charpoly(&t)));
        // [[2,1],[1,1]] has irrational eigenvalues: not cyclotomic
        let h = m(&[vec![2, 1], vec![1, 1]]);
        assert!(!is_cyclotomic_product(&charpoly(&h)));
    }
}
