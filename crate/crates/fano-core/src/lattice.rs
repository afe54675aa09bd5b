//! Integer symmetric-form toolkit: Smith normal form with tracked unimodular
//! transforms, radical quotients, exact determinants (Bareiss), rational
//! congruence signatures, and small helpers for adjoining classes, rescaling,
//! and discriminant bookkeeping.

use crate::exact::Rat;
use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;

pub type IMat = Vec<Vec<BigInt>>;

pub fn int_mat(rows: &[&[i64]]) -> IMat {
    rows.iter()
        .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
        .collect()
}

pub fn int_identity(n: usize) -> IMat {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { BigInt::one() } else { BigInt::zero() })
                .collect()
        })
        .collect()
}

/// Extended gcd with g >= 0 and s*a + t*b = g (floor-division recursion, so
/// egcd(a, 0) = (|a|, sign(a), 0) with sign(0) = 1).
pub fn egcd(a: &BigInt, b: &BigInt) -> (BigInt, BigInt, BigInt) {
    if b.is_zero() {
        let s = if a.sign() == Sign::Minus {
            -BigInt::one()
        } else {
            BigInt::one()
        };
        return (a.abs(), s, BigInt::zero());
    }
    let (q, r) = a.div_mod_floor(b);
    let (g, s, t) = egcd(b, &r);
    let t2 = &s - &q * &t;
    (g, t, t2)
}

/// Observer for the elementary 2x2 operations applied during Smith reduction;
/// the (i, i) call with coefficients (-1, 0, 0, -1) is a single-column sign
/// flip.
pub trait SnfHooks {
    fn on_row(&mut self, _i: usize, _j: usize, _a: &BigInt, _b: &BigInt, _c: &BigInt, _d: &BigInt) {
    }
    fn on_col(&mut self, _i: usize, _j: usize, _a: &BigInt, _b: &BigInt, _c: &BigInt, _d: &BigInt) {
    }
}

pub struct NoHooks;
impl SnfHooks for NoHooks {}

/// Tracks the accumulated column transform V (the matrix with M*V reproducing
/// the column operations).
struct TrackV {
    v: IMat,
}

impl SnfHooks for TrackV {
    fn on_col(&mut self, i: usize, j: usize, a: &BigInt, b: &BigInt, c: &BigInt, d: &BigInt) {
        if i == j {
            for row in self.v.iter_mut() {
                let nv = -row[i].clone();
                row[i] = nv;
            }
            return;
        }
        for row in self.v.iter_mut() {
            let x = row[i].clone();
            let y = row[j].clone();
            row[i] = a * &x + b * &y;
            row[j] = c * &x + d * &y;
        }
    }
}

/// Tracks both transforms, giving U * M * V = D.
struct TrackUV {
    u: IMat,
    v: IMat,
}

impl SnfHooks for TrackUV {
    fn on_row(&mut self, i: usize, j: usize, a: &BigInt, b: &BigInt, c: &BigInt, d: &BigInt) {
        let ncols = self.u[i].len();
        for k in 0..ncols {
            let x = self.u[i][k].clone();
            let y = self.u[j][k].clone();
            self.u[i][k] = a * &x + b * &y;
            self.u[j][k] = c * &x + d * &y;
        }
    }
    fn on_col(&mut self, i: usize, j: usize, a: &BigInt, b: &BigInt, c: &BigInt, d: &BigInt) {
        if i == j {
            for row in self.v.iter_mut() {
                let nv = -row[i].clone();
                row[i] = nv;
            }
            return;
        }
        for row in self.v.iter_mut() {
            let x = row[i].clone();
            let y = row[j].clone();
            row[i] = a * &x + b * &y;
            row[j] = c * &x + d * &y;
        }
    }
}

/// Tracks the inverse of the column transform as row operations, so after
/// reduction the first rows of `vinv` are the kernel rows being reduced and
/// the remaining rows complete them to a basis of Z^n.
struct TrackVinv {
    vinv: IMat,
}

impl SnfHooks for TrackVinv {
    fn on_col(&mut self, i: usize, j: usize, a: &BigInt, b: &BigInt, c: &BigInt, d: &BigInt) {
        if i == j {
            for k in 0..self.vinv[i].len() {
                let nv = -self.vinv[i][k].clone();
                self.vinv[i][k] = nv;
            }
            return;
        }
        // inverse of the 2x2 column block, transposed into row operations
        let det = a * d - b * c;
        let ia = d * &det;
        let ic = -(c * &det);
        let ib = -(b * &det);
        let id_ = a * &det;
        let n = self.vinv[i].len();
        for k in 0..n {
            let x = self.vinv[i][k].clone();
            let y = self.vinv[j][k].clone();
            self.vinv[i][k] = &ia * &x + &ic * &y;
            self.vinv[j][k] = &ib * &x + &id_ * &y;
        }
    }
}

fn row_op<H: SnfHooks>(
    a: &mut IMat,
    hooks: &mut H,
    i: usize,
    j: usize,
    ca: &BigInt,
    cb: &BigInt,
    cc: &BigInt,
    cd: &BigInt,
) {
    let ncols = a[i].len();
    for k in 0..ncols {
        let x = a[i][k].clone();
        let y = a[j][k].clone();
        a[i][k] = ca * &x + cb * &y;
        a[j][k] = cc * &x + cd * &y;
    }
    hooks.on_row(i, j, ca, cb, cc, cd);
}

fn col_op<H: SnfHooks>(
    a: &mut IMat,
    hooks: &mut H,
    i: usize,
    j: usize,
    ca: &BigInt,
    cb: &BigInt,
    cc: &BigInt,
    cd: &BigInt,
) {
    for row in a.iter_mut() {
        let x = row[i].clone();
        let y = row[j].clone();
        row[i] = ca * &x + cb * &y;
        row[j] = cc * &x + cd * &y;
    }
    hooks.on_col(i, j, ca, cb, cc, cd);
}

/// In-place Smith reduction of `a` (any shape) by unimodular row and column
/// operations: minimum-|entry| pivoting (early exit on 1) to keep transform
/// entries small, one-shot Bezout clears, a zeros-to-back diagonal permute,
/// a divisibility fold so each factor divides the next, and positive signs.
/// Returns the rank.
pub fn snf_core<H: SnfHooks>(a: &mut IMat, hooks: &mut H) -> usize {
    let nrows = a.len();
    let ncols = if nrows == 0 { 0 } else { a[0].len() };
    let zero = BigInt::zero();
    let one = BigInt::one();
    let mone = -BigInt::one();
    let mn = nrows.min(ncols);
    for t in 0..mn {
        // pivot: smallest nonzero absolute value in the trailing block
        let mut best: Option<(BigInt, usize, usize)> = None;
        'search: for i in t..nrows {
            for j in t..ncols {
                let v = &a[i][j];
                if !v.is_zero() {
                    let av = v.abs();
                    if best.as_ref().map_or(true, |(b0, _, _)| av < *b0) {
                        let hit_one = av.is_one();
                        best = Some((av, i, j));
                        if hit_one {
                            break 'search;
                        }
                    }
                }
            }
        }
        let (_, pi, pj) = match best {
            None => break,
            Some(b) => b,
        };
        if pi != t {
            row_op(a, hooks, t, pi, &zero, &one, &one, &zero);
        }
        if pj != t {
            col_op(a, hooks, t, pj, &zero, &one, &one, &zero);
        }
        loop {
            for i in t + 1..nrows {
                let e = a[i][t].clone();
                if e.is_zero() {
                    continue;
                }
                let p = a[t][t].clone();
                if (&e % &p).is_zero() {
                    let c = -(&e / &p);
                    row_op(a, hooks, t, i, &one, &zero, &c, &one);
                } else {
                    let (g, s, u) = egcd(&p, &e);
                    let c = -(&e / &g);
                    let d = &p / &g;
                    row_op(a, hooks, t, i, &s, &u, &c, &d);
                }
            }
            let mut dirty = false;
            for j in t + 1..ncols {
                let e = a[t][j].clone();
                if e.is_zero() {
                    continue;
                }
                let p = a[t][t].clone();
                if (&e % &p).is_zero() {
                    let c = -(&e / &p);
                    col_op(a, hooks, t, j, &one, &zero, &c, &one);
                } else {
                    let (g, s, u) = egcd(&p, &e);
                    let c = -(&e / &g);
                    let d = &p / &g;
                    col_op(a, hooks, t, j, &s, &u, &c, &d);
                    dirty = true;
                }
            }
            if dirty && (t + 1..nrows).any(|i| !a[i][t].is_zero()) {
                continue;
            }
            if (t + 1..nrows).all(|i| a[i][t].is_zero())
                && (t + 1..ncols).all(|j| a[t][j].is_zero())
            {
                break;
            }
        }
    }
    // permute nonzero diagonal entries to the front
    let nz: Vec<usize> = (0..mn).filter(|&i| !a[i][i].is_zero()).collect();
    for (idx, &i) in nz.iter().enumerate() {
        if i != idx {
            row_op(a, hooks, idx, i, &zero, &one, &one, &zero);
            col_op(a, hooks, idx, i, &zero, &one, &one, &zero);
        }
    }
    let r = nz.len();
    // divisibility fold: d_i | d_{i+1}
    let mut changed = true;
    while changed {
        changed = false;
        for i in 0..r.saturating_sub(1) {
            let av = a[i][i].clone();
            let bv = a[i + 1][i + 1].clone();
            if !av.is_zero() && !(&bv % &av).is_zero() {
                changed = true;
                col_op(a, hooks, i, i + 1, &one, &one, &zero, &one);
                let p0 = a[i][i].clone();
                let e0 = a[i + 1][i].clone();
                let (g2, s2, t2) = egcd(&p0, &e0);
                let c2 = -(&e0 / &g2);
                let d2 = &p0 / &g2;
                row_op(a, hooks, i, i + 1, &s2, &t2, &c2, &d2);
                let p = a[i][i].clone();
                let e = a[i][i + 1].clone();
                if !e.is_zero() {
                    if (&e % &p).is_zero() {
                        let c = -(&e / &p);
                        col_op(a, hooks, i, i + 1, &one, &zero, &c, &one);
                    } else {
                        let (g3, s3, t3) = egcd(&p, &e);
                        let c3 = -(&e / &g3);
                        let d3 = &p / &g3;
                        col_op(a, hooks, i, i + 1, &s3, &t3, &c3, &d3);
                    }
                }
                let e2 = a[i + 1][i].clone();
                if !e2.is_zero() {
                    let c = -(&e2 / &a[i][i].clone());
                    row_op(a, hooks, i, i + 1, &one, &zero, &c, &one);
                }
            }
        }
    }
    // positive invariant factors
    for i in 0..r {
        if a[i][i].sign() == Sign::Minus {
            for row in a.iter_mut() {
                let nv = -row[i].clone();
                row[i] = nv;
            }
            hooks.on_col(i, i, &mone, &zero, &zero, &mone);
        }
    }
    r
}

/// Smith normal form with both unimodular transforms: u * m * v is diagonal
/// with the invariant factors (each dividing the next) followed by zeros.
#[derive(Clone, Debug)]
pub struct SnfResult {
    pub factors: Vec<BigInt>,
    pub rank: usize,
    pub u: IMat,
    pub v: IMat,
}

pub fn snf(m: &IMat) -> SnfResult {
    let nrows = m.len();
    let ncols = if nrows == 0 { 0 } else { m[0].len() };
    let mut a = m.clone();
    let mut hooks = TrackUV { u: int_identity(nrows), v: int_identity(ncols) };
    let r = snf_core(&mut a, &mut hooks);
    let factors = (0..r).map(|i| a[i][i].clone()).collect();
    SnfResult { factors, rank: r, u: hooks.u, v: hooks.v }
}

fn snf_with_v(g: &IMat) -> (Vec<BigInt>, IMat, usize) {
    let n = g.len();
    let mut a = g.clone();
    let mut hooks = TrackV { v: int_identity(n) };
    let r = snf_core(&mut a, &mut hooks);
    let factors = (0..r).map(|i| a[i][i].clone()).collect();
    (factors, hooks.v, r)
}

/// A symmetric form modulo its radical: `basis` rows give a sublattice of Z^n
/// mapping isomorphically onto the quotient by the kernel, and `gram` is the
/// induced nondegenerate form basis * G * basis^T.
#[derive(Clone, Debug)]
pub struct RadicalQuotient {
    pub factors: Vec<BigInt>,
    pub basis: IMat,
    pub gram: IMat,
}

pub fn radical_quotient(g: &IMat) -> RadicalQuotient {
    let n = g.len();
    let (factors, v, r) = snf_with_v(g);
    let nk = n - r;
    if nk == 0 {
        return RadicalQuotient { factors, basis: int_identity(n), gram: g.clone() };
    }
    // kernel rows = transposed zero-factor columns of V
    let kernel: IMat = (r..n)
        .map(|j| (0..n).map(|i| v[i][j].clone()).collect())
        .collect();
    if let Some(krow) = kernel.first() {
        for grow in g {
            let s: BigInt = grow.iter().zip(krow).map(|(x, y)| x * y).sum();
            assert!(s.is_zero(), "kernel column does not annihilate the form");
        }
    }
    // saturate: reduce the kernel rows to [I | 0], tracking the inverse
    // column transform; its trailing rows complete the kernel to Z^n.
    let mut a = kernel;
    let mut hooks = TrackVinv { vinv: int_identity(n) };
    let rk = snf_core(&mut a, &mut hooks);
    assert!(
        rk == nk && (0..nk).all(|i| a[i][i].is_one()),
        "kernel not saturated"
    );
    let basis: IMat = hooks.vinv[nk..].to_vec();
    // gram = basis * G * basis^T
    let gw: IMat = (0..n)
        .map(|i| {
            (0..r)
                .map(|j| (0..n).map(|k| &g[i][k] * &basis[j][k]).sum())
                .collect()
        })
        .collect();
    let gram: IMat = (0..r)
        .map(|i| {
            (0..r)
                .map(|j| (0..n).map(|k| &basis[i][k] * &gw[k][j]).sum())
                .collect()
        })
        .collect();
    RadicalQuotient { factors, basis, gram }
}

/// Exact determinant by fraction-free Gaussian elimination.
pub fn det_bareiss(m: &IMat) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut b = m.clone();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for i in 0..n - 1 {
        if b[i][i].is_zero() {
            let piv = (i + 1..n).find(|&rr| !b[rr][i].is_zero());
            match piv {
                None => return BigInt::zero(),
                Some(p) => {
                    b.swap(i, p);
                    sign = -sign;
                }
            }
        }
        for rr in i + 1..n {
            for cc in i + 1..n {
                let t = &b[rr][cc] * &b[i][i] - &b[rr][i] * &b[i][cc];
                b[rr][cc] = t / &prev;
            }
        }
        prev = b[i][i].clone();
    }
    sign * b[n - 1][n - 1].clone()
}

/// Rank of an integer matrix by fraction-free (Bareiss) elimination with
/// full pivoting; every division is exact, so the result is the rank over
/// the rationals.
pub fn rank_bareiss(m: &IMat) -> usize {
    let rows = m.len();
    if rows == 0 {
        return 0;
    }
    let cols = m[0].len();
    let mut b = m.clone();
    let mut prev = BigInt::one();
    let mut r = 0usize;
    for step in 0..rows.min(cols) {
        // full pivot search over the untouched block
        let mut pivot = None;
        'search: for i in step..rows {
            for j in step..cols {
                if !b[i][j].is_zero() {
                    pivot = Some((i, j));
                    break 'search;
                }
            }
        }
        let (pi, pj) = match pivot {
            None => break,
            Some(p) => p,
        };
        b.swap(step, pi);
        if pj != step {
            for row in b.iter_mut() {
                row.swap(step, pj);
            }
        }
        r += 1;
        for i in step + 1..rows {
            for j in step + 1..cols {
                let t = &b[i][j] * &b[step][step] - &b[i][step] * &b[step][j];
                b[i][j] = t / &prev;
            }
            b[i][step] = BigInt::zero();
        }
        prev = b[step][step].clone();
    }
    r
}

/// Signature (positive, negative, zero) of a symmetric integer form by
/// congruence diagonalization over the rationals.
pub fn rank_signature(g: &IMat) -> (usize, usize, usize) {
    let n = g.len();
    let mut m: Vec<Vec<Rat>> = g
        .iter()
        .map(|row| row.iter().map(|v| Rat::from_integer(v.clone())).collect())
        .collect();
    let rzero = Rat::zero();
    let mut pos = 0usize;
    let mut neg = 0usize;
    for i in 0..n {
        if m[i][i] == rzero {
            let joff = (i + 1..n).find(|&j| m[i][j] != rzero);
            let joff = match joff {
                None => continue, // zero row in the remaining block
                Some(j) => j,
            };
            if m[joff][joff] != rzero {
                m.swap(i, joff);
                for row in m.iter_mut() {
                    row.swap(i, joff);
                }
            } else {
                let mj = m[joff].clone();
                for k in 0..n {
                    m[i][k] = &m[i][k] + &mj[k];
                }
                for row in m.iter_mut() {
                    let t = row[joff].clone();
                    row[i] = &row[i] + &t;
                }
            }
        }
        let d = m[i][i].clone();
        if d == rzero {
            continue;
        }
        if d > rzero {
            pos += 1;
        } else {
            neg += 1;
        }
        let mi = m[i].clone();
        for j in i + 1..n {
            if m[j][i] != rzero {
                let f = &m[j][i] / &d;
                for k in 0..n {
                    let t = &f * &mi[k];
                    m[j][k] = &m[j][k] - &t;
                }
            }
        }
        for j in i + 1..n {
            if m[i][j] != rzero {
                let f = &m[i][j] / &d;
                for row in m.iter_mut() {
                    let t = &f * &row[i];
                    row[j] = &row[j] - &t;
                }
            }
        }
    }
    (pos, neg, n - pos - neg)
}

/// Rank, signature, and discriminant of a symmetric form, with the radical
/// quotient it was computed on. The determinant is cross-checked against the
/// product of invariant factors and the signature against the rank.
#[derive(Clone, Debug)]
pub struct FormInvariants {
    pub rank: usize,
    pub signature: (usize, usize, usize),
    pub disc: BigInt,
    pub quotient: RadicalQuotient,
    pub max_quotient_entry: BigInt,
}

pub fn invariants(g: &IMat) -> FormInvariants {
    let q = radical_quotient(g);
    let d = det_bareiss(&q.gram);
    let prod: BigInt = q.factors.iter().product();
    assert_eq!(d.abs(), prod, "determinant disagrees with invariant factors");
    let (p, neg, z) = rank_signature(g);
    let r = q.factors.len();
    assert!(p + neg == r && z == g.len() - r, "signature disagrees with rank");
    assert_eq!(
        d.sign() != Sign::Minus,
        neg % 2 == 0,
        "determinant sign disagrees with signature"
    );
    let mx = q
        .gram
        .iter()
        .flat_map(|row| row.iter().map(|v| v.abs()))
        .max()
        .unwrap_or_else(BigInt::zero);
    FormInvariants {
        rank: r,
        signature: (p, neg, z),
        disc: d,
        quotient: q,
        max_quotient_entry: mx,
    }
}

/// x^T G x.
pub fn evaluate_form(g: &IMat, x: &[BigInt]) -> BigInt {
    assert_eq!(g.len(), x.len(), "coordinate length mismatch");
    let mut acc = BigInt::zero();
    for (i, row) in g.iter().enumerate() {
        if x[i].is_zero() {
            continue;
        }
        for (j, v) in row.iter().enumerate() {
            if !x[j].is_zero() {
                acc += &x[i] * v * &x[j];
            }
        }
    }
    acc
}

/// Pairing vector x^T G applied against the basis, i.e. the row of pairings
/// of the class with coordinates x.
pub fn pairing_vector(g: &IMat, x: &[BigInt]) -> Vec<BigInt> {
    assert_eq!(g.len(), x.len(), "coordinate length mismatch");
    (0..g.len())
        .map(|j| (0..g.len()).map(|i| &x[i] * &g[i][j]).sum())
        .collect()
}

/// Extend an n x n Gram matrix by one class with the given pairings against
/// the existing basis and the given self-intersection.
pub fn adjoin_class(g: &IMat, pairings: &[BigInt], self_pairing: &BigInt) -> IMat {
    let n = g.len();
    assert_eq!(pairings.len(), n, "one pairing per existing class");
    let mut out: IMat = g
        .iter()
        .zip(pairings)
        .map(|(row, p)| {
            let mut r = row.clone();
            r.push(p.clone());
            r
        })
        .collect();
    let mut last: Vec<BigInt> = pairings.to_vec();
    last.push(self_pairing.clone());
    out.push(last);
    out
}

/// Index of the span of `sub` inside the span of `sup`, read off the
/// discriminant ratio; errors if the ranks differ or the ratio is not a
/// perfect square.
pub fn sublattice_index(sub: &IMat, sup: &IMat) -> Result<BigInt, String> {
    let isub = invariants(sub);
    let isup = invariants(sup);
    if isub.rank != isup.rank {
        return Err(format!("rank mismatch: {} vs {}", isub.rank, isup.rank));
    }
    let dsub = isub.disc.abs();
    let dsup = isup.disc.abs();
    if dsup.is_zero() {
        return Err("degenerate form".to_string());
    }
    if !(&dsub % &dsup).is_zero() {
        return Err(format!("discriminant {dsub} not divisible by {dsup}"));
    }
    let ratio = &dsub / &dsup;
    let root = ratio.sqrt();
    if &root * &root != ratio {
        return Err(format!("discriminant ratio {ratio} is not a perfect square"));
    }
    Ok(root)
}

/// Halve every entry of a Gram matrix; errors if any entry is odd.
pub fn half_scale(g: &IMat) -> Result<IMat, String> {
    let two = BigInt::from(2);
    let mut out = Vec::with_capacity(g.len());
    for (i, row) in g.iter().enumerate() {
        let mut r = Vec::with_capacity(row.len());
        for (j, v) in row.iter().enumerate() {
            if !(v % &two).is_zero() {
                return Err(format!("entry ({i}, {j}) = {v} is odd"));
            }
            r.push(v / &two);
        }
        out.push(r);
    }
    Ok(out)
}

/// Trial-division factorization of |n| for the small-prime discriminants in
/// play; a leftover cofactor beyond the 10^6 trial bound is recorded as-is
/// (possibly composite).
pub fn factorize(n: &BigInt) -> BTreeMap<BigInt, u32> {
    let mut n = n.abs();
    let mut out = BTreeMap::new();
    if n.is_zero() {
        return out;
    }
    let bound = BigInt::from(1_000_000);
    let mut d = BigInt::from(2);
    while &d * &d <= n && d <= bound {
        while (&n % &d).is_zero() {
            *out.entry(d.clone()).or_insert(0) += 1;
            n = &n / &d;
        }
        d += 1;
    }
    if n > BigInt::one() {
        *out.entry(n).or_insert(0) += 1;
    }
    out
}
