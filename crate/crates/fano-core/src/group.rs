//! Finite groups (dihedral, the 5x5 matrix A5, PSL2(F11) as canonical 2x2
//! classes), their involution structure, exact 5-dimensional representations
//! over cyclotomic fields, the induced action on cubic forms, and character
//! eigenspaces of invariant cubics.

use crate::exact::{rat, ratio, Cyclo, Rat};
use crate::linalg::{identity, mat_mul, nullspace, rref, Matrix};
use crate::poly::{Exp, MPoly, MAX_VARS};
use crate::rng::SplitMix64;
use std::collections::{BTreeMap, HashMap};

pub type CMat = Matrix<Cyclo>;

/// A finite group as an explicit multiplication table. `mul[i][j]` is the
/// index of element_i * element_j.
#[derive(Clone, Debug)]
pub struct FiniteGroup {
    pub name: String,
    pub id: usize,
    pub mul: Vec<Vec<u16>>,
    pub labels: Vec<String>,
}

impl FiniteGroup {
    pub fn order(&self) -> usize {
        self.mul.len()
    }

    pub fn element_order(&self, g: usize) -> u32 {
        let mut x = g;
        let mut k = 1;
        while x != self.id {
            x = self.mul[x][g] as usize;
            k += 1;
        }
        k
    }

    pub fn inverse(&self, g: usize) -> usize {
        (0..self.order())
            .find(|&h| self.mul[g][h] as usize == self.id)
            .expect("group element without inverse")
    }

    /// Elements g != id with g*g = id, in index order.
    pub fn involutions(&self) -> Vec<usize> {
        (0..self.order())
            .filter(|&g| g != self.id && self.mul[g][g] as usize == self.id)
            .collect()
    }

    pub fn order_histogram(&self) -> BTreeMap<u32, u64> {
        let mut h = BTreeMap::new();
        for g in 0..self.order() {
            *h.entry(self.element_order(g)).or_insert(0) += 1;
        }
        h
    }

    /// Histogram of o(g*h) over unordered pairs of distinct elements of
    /// `invs`.
    pub fn pair_order_histogram(&self, invs: &[usize]) -> BTreeMap<u32, u64> {
        let mut h = BTreeMap::new();
        for (k, &g) in invs.iter().enumerate() {
            for &hh in &invs[k + 1..] {
                let o = self.element_order(self.mul[g][hh] as usize);
                *h.entry(o).or_insert(0) += 1;
            }
        }
        h
    }

    /// Z/2.
    pub fn cyclic2() -> FiniteGroup {
        FiniteGroup {
            name: "z2".to_string(),
            id: 0,
            mul: vec![vec![0, 1], vec![1, 0]],
            labels: vec!["e".to_string(), "g".to_string()],
        }
    }

    /// Dihedral group of order 2n: a^n = b^2 = id, b*a*b = a^-1. Elements are
    /// indexed a^r at r (rotations first) and a^r*b at n+r.
    pub fn dihedral(n: u32) -> FiniteGroup {
        assert!(n >= 2, "dihedral needs n >= 2");
        let n = n as usize;
        let idx = |r: usize, s: usize| s * n + r;
        let mut mul = vec![vec![0u16; 2 * n]; 2 * n];
        for r1 in 0..n {
            for s1 in 0..2 {
                for r2 in 0..n {
                    for s2 in 0..2 {
                        // a^r1 b^s1 * a^r2 b^s2 = a^(r1 + (-1)^s1 r2) b^(s1 xor s2)
                        let r = if s1 == 0 { (r1 + r2) % n } else { (r1 + n - r2) % n };
                        mul[idx(r1, s1)][idx(r2, s2)] = idx(r, s1 ^ s2) as u16;
                    }
                }
            }
        }
        let mut labels = Vec::with_capacity(2 * n);
        for s in 0..2 {
            for r in 0..n {
                let rot = match r {
                    0 => String::new(),
                    1 => "a".to_string(),
                    _ => format!("a^{r}"),
                };
                let lbl = if s == 0 {
                    if rot.is_empty() { "e".to_string() } else { rot }
                } else if rot.is_empty() {
                    "b".to_string()
                } else {
                    format!("{rot}*b")
                };
                labels.push(lbl);
            }
        }
        FiniteGroup { name: format!("d{n}"), id: 0, mul, labels }
    }

    /// The 60-element group generated by the two explicit 5x5 rational
    /// matrices, closed under multiplication in breadth-first order.
    pub fn a5() -> FiniteGroup {
        let (a, b) = a5_generator_matrices();
        let mut elems: Vec<Matrix<Rat>> = vec![identity(5)];
        let mut labels = vec!["e".to_string()];
        let mut seen: BTreeMap<Vec<Vec<Rat>>, usize> = BTreeMap::new();
        seen.insert(elems[0].clone(), 0);
        let mut i = 0;
        while i < elems.len() {
            for (gl, gm) in [("a", &a), ("b", &b)] {
                let p = mat_mul(&elems[i], gm);
                if !seen.contains_key(&p) {
                    seen.insert(p.clone(), elems.len());
                    let base = if labels[i] == "e" { String::new() } else { labels[i].clone() };
                    labels.push(format!("{base}{gl}"));
                    elems.push(p);
                }
            }
            i += 1;
        }
        assert_eq!(elems.len(), 60, "generator closure has wrong size");
        let n = elems.len();
        let mut mul = vec![vec![0u16; n]; n];
        for x in 0..n {
            for y in 0..n {
                let p = mat_mul(&elems[x], &elems[y]);
                mul[x][y] = seen[&p] as u16;
            }
        }
        FiniteGroup { name: "a5".to_string(), id: 0, mul, labels }
    }

    /// PSL2(F11): classes of 2x2 matrices over F11 of determinant 1 modulo
    /// +-1, in the canonical representative with first nonzero entry in 1..=5,
    /// listed in lexicographic order.
    pub fn psl2_11() -> FiniteGroup {
        let elems = psl2_elements();
        let index: HashMap<[u8; 4], usize> =
            elems.iter().enumerate().map(|(i, &e)| (e, i)).collect();
        let n = elems.len();
        let mut mul = vec![vec![0u16; n]; n];
        for x in 0..n {
            for y in 0..n {
                mul[x][y] = index[&psl2_canon(psl2_mul(elems[x], elems[y]))] as u16;
            }
        }
        let id = index[&[1, 0, 0, 1]];
        let labels = elems
            .iter()
            .map(|e| format!("[{},{};{},{}]", e[0], e[1], e[2], e[3]))
            .collect();
        FiniteGroup { name: "psl2_11".to_string(), id, mul, labels }
    }
}

/// Group catalog by name: "z2", "d<n>" (n >= 2), "a5", "psl2_11".
pub fn enumerate_group(name: &str) -> Result<FiniteGroup, String> {
    match name {
        "z2" => Ok(FiniteGroup::cyclic2()),
        "a5" => Ok(FiniteGroup::a5()),
        "psl2_11" => Ok(FiniteGroup::psl2_11()),
        _ => {
            if let Some(ns) = name.strip_prefix('d') {
                if let Ok(n) = ns.parse::<u32>() {
                    if n >= 2 {
                        return Ok(FiniteGroup::dihedral(n));
                    }
                }
            }
            Err(format!("unknown group '{name}'"))
        }
    }
}

fn psl2_mul(x: [u8; 4], y: [u8; 4]) -> [u8; 4] {
    let m = |i: u8, j: u8| ((i as u16 * j as u16) % 11) as u8;
    let s = |i: u8, j: u8| (i + j) % 11;
    [
        s(m(x[0], y[0]), m(x[1], y[2])),
        s(m(x[0], y[1]), m(x[1], y[3])),
        s(m(x[2], y[0]), m(x[3], y[2])),
        s(m(x[2], y[1]), m(x[3], y[3])),
    ]
}

fn psl2_canon(x: [u8; 4]) -> [u8; 4] {
    let first = x.iter().copied().find(|&v| v != 0).expect("zero matrix");
    if first > 5 {
        [
            (11 - x[0]) % 11,
            (11 - x[1]) % 11,
            (11 - x[2]) % 11,
            (11 - x[3]) % 11,
        ]
    } else {
        x
    }
}

fn psl2_elements() -> Vec<[u8; 4]> {
    let mut set: std::collections::BTreeSet<[u8; 4]> = std::collections::BTreeSet::new();
    for a in 0..11u8 {
        for b in 0..11u8 {
            for c in 0..11u8 {
                for d in 0..11u8 {
                    if (a as i32 * d as i32 - b as i32 * c as i32).rem_euclid(11) == 1 {
                        set.insert(psl2_canon([a, b, c, d]));
                    }
                }
            }
        }
    }
    set.into_iter().collect()
}

/// The two 5x5 rational generators of the matrix A5 (diagonal involution and
/// the half-integer order-3 matrix).
pub fn a5_generator_matrices() -> (Matrix<Rat>, Matrix<Rat>) {
    let a: Matrix<Rat> = [
        [1i64, 0, 0, 0, 0],
        [0, 1, 0, 0, 0],
        [0, 0, 1, 0, 0],
        [0, 0, 0, 1, 0],
        [0, 0, 0, 0, 1],
    ]
    .iter()
    .enumerate()
    .map(|(i, row)| {
        row.iter()
            .enumerate()
            .map(|(j, &v)| if i == j && i < 2 { rat(-v) } else { rat(v) })
            .collect()
    })
    .collect();
    let b: Matrix<Rat> = vec![
        vec![ratio(-1, 2), ratio(-1, 2), ratio(1, 2), ratio(-1, 2), rat(0)],
        vec![ratio(1, 2), rat(0), ratio(1, 2), rat(0), ratio(-1, 2)],
        vec![ratio(-1, 2), ratio(1, 2), ratio(1, 2), ratio(1, 2), rat(0)],
        vec![ratio(1, 2), rat(0), ratio(1, 2), rat(0), ratio(1, 2)],
        vec![rat(0), rat(0), rat(-2), rat(-2), rat(-1)],
    ];
    (a, b)
}

/// One irreducible summand of a dihedral 5-dimensional representation.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Irrep {
    /// 2-dimensional rotation block V_{k/n}.
    V { k: u32 },
    /// Trivial character.
    T,
    /// a -> 1, b -> -1.
    L,
    /// a -> -1, b -> 1 (n even only).
    L1,
    /// a -> -1, b -> -1 (n even only).
    L2,
}

impl Irrep {
    pub fn dim(&self) -> u32 {
        match self {
            Irrep::V { .. } => 2,
            _ => 1,
        }
    }
}

/// Parse a decomposition like "V1/6+V2/6+T" or "2V1/3+T" or "L+L1+L2+2T"
/// for the dihedral group with rotation order `n`. Multiplicities expand in
/// listing order; the total dimension must be 5.
pub fn parse_decomposition(text: &str, n: u32) -> Result<Vec<Irrep>, String> {
    let mut out = Vec::new();
    for raw in text.split('+') {
        let item = raw.trim();
        if item.is_empty() {
            return Err("empty summand".to_string());
        }
        let digits: String = item.chars().take_while(|c| c.is_ascii_digit()).collect();
        let (count, rest) = if item.starts_with('V') || digits.is_empty() {
            (1u32, item)
        } else {
            let c: u32 = digits.parse().map_err(|_| format!("bad multiplicity in '{item}'"))?;
            (c, &item[digits.len()..])
        };
        if count == 0 {
            return Err(format!("zero multiplicity in '{item}'"));
        }
        let ir = if let Some(body) = rest.strip_prefix('V') {
            let (ks, ns) = body
                .split_once('/')
                .ok_or_else(|| format!("expected V<k>/<n> in '{item}'"))?;
            let k: u32 = ks.parse().map_err(|_| format!("bad k in '{item}'"))?;
            let den: u32 = ns.parse().map_err(|_| format!("bad n in '{item}'"))?;
            if den != n {
                return Err(format!("block V{k}/{den} does not match rotation order {n}"));
            }
            if k == 0 || k >= n {
                return Err(format!("V{k}/{n} needs 0 < k < n"));
            }
            Irrep::V { k }
        } else {
            match rest {
                "T" => Irrep::T,
                "L" => Irrep::L,
                "L1" => Irrep::L1,
                "L2" => Irrep::L2,
                other => return Err(format!("unknown summand '{other}'")),
            }
        };
        if matches!(ir, Irrep::L1 | Irrep::L2) && n % 2 != 0 {
            return Err(format!("{rest} requires even rotation order, got {n}"));
        }
        for _ in 0..count {
            out.push(ir);
        }
    }
    let dim: u32 = out.iter().map(|i| i.dim()).sum();
    if dim != 5 {
        return Err(format!("decomposition has dimension {dim}, needs 5"));
    }
    Ok(out)
}

/// A 5-dimensional representation given by exact generator matrices over
/// Q(zeta_m), optionally tied to a full group table for per-element queries.
#[derive(Clone, Debug)]
pub struct Representation {
    pub name: String,
    pub m: u32,
    pub gen_mats: Vec<CMat>,
    pub group: Option<FiniteGroup>,
    /// Indices of the generators inside `group`, parallel to `gen_mats`.
    pub gen_indices: Vec<usize>,
}

fn cyclo_mat_eq(a: &CMat, b: &CMat) -> bool {
    a == b
}

fn cyclo_identity(n: usize) -> CMat {
    identity::<Cyclo>(n)
}

impl Representation {
    /// Matrices for every group element, by breadth-first extension of the
    /// generator matrices along the multiplication table.
    pub fn element_matrices(&self) -> Vec<CMat> {
        let group = self.group.as_ref().expect("representation without group table");
        let n = group.order();
        let mut mats: Vec<Option<CMat>> = vec![None; n];
        mats[group.id] = Some(cyclo_identity(5));
        let mut queue = vec![group.id];
        let mut qi = 0;
        while qi < queue.len() {
            let g = queue[qi];
            qi += 1;
            for (gi, gmat) in self.gen_indices.iter().zip(&self.gen_mats) {
                let h = group.mul[g][*gi] as usize;
                if mats[h].is_none() {
                    mats[h] = Some(mat_mul(mats[g].as_ref().unwrap(), gmat));
                    queue.push(h);
                }
            }
        }
        mats.into_iter()
            .map(|m| m.expect("generators do not generate the group"))
            .collect()
    }

    pub fn trace(mat: &CMat) -> Cyclo {
        let mut t = Cyclo::zero();
        for (i, row) in mat.iter().enumerate() {
            t = t.add(&row[i]);
        }
        t
    }
}

/// Build the named representation: dihedral "d<n>" with an explicit
/// decomposition, or "a5" with the fixed matrix pair (decomposition "fixed").
pub fn build_representation(name: &str, decomposition: &str) -> Result<Representation, String> {
    if name == "a5" {
        if decomposition != "fixed" {
            return Err(format!("a5 supports only the fixed decomposition, got '{decomposition}'"));
        }
        return Ok(a5_rep());
    }
    let n: u32 = name
        .strip_prefix('d')
        .and_then(|s| s.parse().ok())
        .filter(|&n| n >= 2)
        .ok_or_else(|| format!("unknown representation target '{name}'"))?;
    let irreps = parse_decomposition(decomposition, n)?;
    Ok(dihedral_rep(n, &irreps))
}

/// Dihedral representation from a list of summands, blocks laid out in
/// listing order. Scalars live in Q(zeta_m) with m = lcm(4, n) so that both
/// the rotation cosines and i are exact. The defining relations are checked.
pub fn dihedral_rep(n: u32, irreps: &[Irrep]) -> Representation {
    let dim: u32 = irreps.iter().map(|i| i.dim()).sum();
    assert_eq!(dim, 5, "representation must have dimension 5");
    let m = num_integer::lcm(4, n);
    let zero = Cyclo::zero();
    let one = Cyclo::one();
    let minus = Cyclo::from_i64(-1);
    let mut a: CMat = vec![vec![zero.clone(); 5]; 5];
    let mut b: CMat = vec![vec![zero.clone(); 5]; 5];
    let mut p = 0usize;
    for ir in irreps {
        match *ir {
            Irrep::V { k } => {
                let step = (m / n * k) as i64;
                let half = Cyclo::from_rat(ratio(1, 2));
                let zp = Cyclo::zeta_pow(m, step);
                let zm = Cyclo::zeta_pow(m, -step);
                let i_unit = Cyclo::zeta_pow(m, (m / 4) as i64);
                let c = zp.add(&zm).mul(&half);
                // sin = (z^k - z^-k)/(2i) = (z^k - z^-k) * (-i/2)
                let s = zp.sub(&zm).mul(&half).mul(&i_unit.neg());
                a[p][p] = c.clone();
                a[p][p + 1] = s.neg();
                a[p + 1][p] = s;
                a[p + 1][p + 1] = c;
                b[p][p] = one.clone();
                b[p + 1][p + 1] = minus.clone();
                p += 2;
            }
            Irrep::T => {
                a[p][p] = one.clone();
                b[p][p] = one.clone();
                p += 1;
            }
            Irrep::L => {
                a[p][p] = one.clone();
                b[p][p] = minus.clone();
                p += 1;
            }
            Irrep::L1 => {
                a[p][p] = minus.clone();
                b[p][p] = one.clone();
                p += 1;
            }
            Irrep::L2 => {
                a[p][p] = minus.clone();
                b[p][p] = minus.clone();
                p += 1;
            }
        }
    }
    // defining relations: a^n = b^2 = id, b a b = a^-1
    let id5 = cyclo_identity(5);
    let mut an = id5.clone();
    for _ in 0..n {
        an = mat_mul(&an, &a);
    }
    assert!(cyclo_mat_eq(&an, &id5), "a^n != id");
    assert!(cyclo_mat_eq(&mat_mul(&b, &b), &id5), "b^2 != id");
    let mut ainv = id5.clone();
    for _ in 0..n - 1 {
        ainv = mat_mul(&ainv, &a);
    }
    assert!(
        cyclo_mat_eq(&mat_mul(&mat_mul(&b, &a), &b), &ainv),
        "b a b != a^-1"
    );
    let group = FiniteGroup::dihedral(n);
    let gen_indices = vec![1, n as usize];
    Representation {
        name: format!("d{n}"),
        m,
        gen_mats: vec![a, b],
        group: Some(group),
        gen_indices,
    }
}

/// The fixed A5 representation from the explicit matrix pair; rational
/// entries, conductor 1.
pub fn a5_rep() -> Representation {
    let (a, b) = a5_generator_matrices();
    let lift = |mt: &Matrix<Rat>| -> CMat {
        mt.iter()
            .map(|row| row.iter().map(|v| Cyclo::from_rat(v.clone())).collect())
            .collect()
    };
    let (ca, cb) = (lift(&a), lift(&b));
    // relations a^2 = b^3 = (ab)^5 = id
    let id5 = cyclo_identity(5);
    assert!(cyclo_mat_eq(&mat_mul(&ca, &ca), &id5), "a^2 != id");
    assert!(
        cyclo_mat_eq(&mat_mul(&cb, &mat_mul(&cb, &cb)), &id5),
        "b^3 != id"
    );
    let ab = mat_mul(&ca, &cb);
    let mut p5 = id5.clone();
    for _ in 0..5 {
        p5 = mat_mul(&p5, &ab);
    }
    assert!(cyclo_mat_eq(&p5, &id5), "(ab)^5 != id");
    let group = FiniteGroup::a5();
    assert_eq!(group.labels[1], "a");
    assert_eq!(group.labels[2], "b");
    Representation {
        name: "a5".to_string(),
        m: 1,
        gen_mats: vec![ca, cb],
        group: Some(group),
        gen_indices: vec![1, 2],
    }
}

/// The two symmetries of the Klein cubic used for its invariance check: the
/// order-11 diagonal diag(z, z^9, z^3, z^4, z^5) and the 5-cycle permutation
/// x -> (x2, x4, x5, x3, x1). No full group table (the generated group has
/// order 55; only the generators are needed).
pub fn klein_symmetry_rep() -> Representation {
    let m = 11;
    let zero = Cyclo::zero();
    let mut diag: CMat = vec![vec![zero.clone(); 5]; 5];
    for (i, &e) in [1i64, 9, 3, 4, 5].iter().enumerate() {
        diag[i][i] = Cyclo::zeta_pow(m, e);
    }
    let sigma = [2usize, 4, 5, 3, 1];
    let mut perm: CMat = vec![vec![zero; 5]; 5];
    for (i, &si) in sigma.iter().enumerate() {
        perm[i][si - 1] = Cyclo::one();
    }
    Representation {
        name: "klein".to_string(),
        m,
        gen_mats: vec![diag, perm],
        group: None,
        gen_indices: vec![],
    }
}

/// Trace of each element order under the representation; errors if two
/// elements of the same order have different traces.
pub fn rep_trace_table(rep: &Representation) -> Result<BTreeMap<u32, Cyclo>, String> {
    let group = rep.group.as_ref().ok_or("representation without group table")?;
    let mats = rep.element_matrices();
    let mut table: BTreeMap<u32, Cyclo> = BTreeMap::new();
    for (g, mat) in mats.iter().enumerate() {
        let o = group.element_order(g);
        let t = Representation::trace(mat);
        match table.get(&o) {
            None => {
                table.insert(o, t);
            }
            Some(prev) => {
                if *prev != t {
                    return Err(format!("elements of order {o} have differing traces"));
                }
            }
        }
    }
    Ok(table)
}

/// The canonical ordered basis of the 35 cubic monomials in 5 variables,
/// degrevlex-descending.
pub fn cubic_monomials() -> Vec<Exp> {
    let mut out = Vec::with_capacity(35);
    for e1 in (0..=3u16).rev() {
        for e2 in (0..=3 - e1).rev() {
            for e3 in (0..=3 - e1 - e2).rev() {
                for e4 in (0..=3 - e1 - e2 - e3).rev() {
                    let e5 = 3 - e1 - e2 - e3 - e4;
                    out.push(Exp([e1, e2, e3, e4, e5]));
                }
            }
        }
    }
    out.sort_by(|x, y| y.cmp(x));
    assert_eq!(out.len(), 35);
    out
}

/// 35x35 matrix of F -> F o g on the cubic-monomial basis; contravariant, so
/// sym3_matrix(g) * sym3_matrix(h) = sym3_matrix(h*g).
pub fn sym3_matrix(mat: &CMat) -> CMat {
    let mons = cubic_monomials();
    let index: BTreeMap<Exp, usize> = mons.iter().enumerate().map(|(i, &e)| (e, i)).collect();
    let mut out: CMat = vec![vec![Cyclo::zero(); 35]; 35];
    for (j, &e) in mons.iter().enumerate() {
        let p: MPoly<Cyclo> = MPoly::monomial(e, Cyclo::one());
        let q = p.substitute_linear(mat);
        for (ex, c) in &q.terms {
            out[index[ex]][j] = c.clone();
        }
    }
    out
}

/// Coefficient vector of a cubic in the canonical monomial basis.
pub fn cubic_coords(p: &MPoly<Cyclo>) -> Vec<Cyclo> {
    let mons = cubic_monomials();
    let index: BTreeMap<Exp, usize> = mons.iter().enumerate().map(|(i, &e)| (e, i)).collect();
    let mut v = vec![Cyclo::zero(); 35];
    for (e, c) in &p.terms {
        let i = *index.get(e).expect("not a cubic monomial");
        v[i] = c.clone();
    }
    v
}

fn coords_to_cubic(v: &[Cyclo], mons: &[Exp]) -> MPoly<Cyclo> {
    let mut p = MPoly::zero();
    for (i, c) in v.iter().enumerate() {
        p.add_term(mons[i], c.clone());
    }
    p
}

/// Exact basis of {F cubic : F o g = chi(g) F for every generator g},
/// computed by iterated kernel intersection and returned as a reduced
/// row-echelon basis (deterministic, monic leading coefficients).
pub fn eigenspace_cubics(rep: &Representation, chi: &[Cyclo]) -> Vec<MPoly<Cyclo>> {
    assert_eq!(chi.len(), rep.gen_mats.len(), "one character value per generator");
    if let Some(group) = &rep.group {
        for (x, &gi) in chi.iter().zip(&rep.gen_indices) {
            let o = group.element_order(gi);
            let mut pw = Cyclo::one();
            for _ in 0..o {
                pw = pw.mul(x);
            }
            assert!(
                pw == Cyclo::one() || pw == Cyclo::rational(pw.m, rat(1)),
                "character value incompatible with generator order {o}"
            );
        }
    }
    let mons = cubic_monomials();
    // columns of the running basis of the intersection so far
    let mut basis: Vec<Vec<Cyclo>> = (0..35)
        .map(|i| {
            let mut v = vec![Cyclo::zero(); 35];
            v[i] = Cyclo::one();
            v
        })
        .collect();
    for (mat, x) in rep.gen_mats.iter().zip(chi) {
        if basis.is_empty() {
            break;
        }
        let action = sym3_matrix(mat);
        // constraint matrix: (action - x I) applied to each basis column
        let mut cons: Matrix<Cyclo> = vec![vec![Cyclo::zero(); basis.len()]; 35];
        for (j, v) in basis.iter().enumerate() {
            for i in 0..35 {
                let mut acc = Cyclo::zero();
                for (t, vt) in v.iter().enumerate() {
                    if !vt.is_zero() && !action[i][t].is_zero() {
                        acc = acc.add(&action[i][t].mul(vt));
                    }
                }
                if !v[i].is_zero() {
                    acc = acc.sub(&x.mul(&v[i]));
                }
                cons[i][j] = acc;
            }
        }
        let kernel = nullspace(&cons);
        basis = kernel
            .iter()
            .map(|k| {
                let mut v = vec![Cyclo::zero(); 35];
                for (j, kj) in k.iter().enumerate() {
                    if !kj.is_zero() {
                        for t in 0..35 {
                            if !basis[j][t].is_zero() {
                                v[t] = v[t].add(&basis[j][t].mul(kj));
                            }
                        }
                    }
                }
                v
            })
            .collect();
    }
    if basis.is_empty() {
        return vec![];
    }
    // canonicalize: RREF on the basis rows (pivot on the largest monomial)
    let mut rows: Matrix<Cyclo> = basis;
    rref(&mut rows);
    rows.iter()
        .filter(|r| r.iter().any(|c| !c.is_zero()))
        .map(|r| coords_to_cubic(r, &mons))
        .collect()
}

/// All homomorphisms of the dihedral group (or Z/2) into the roots of unity,
/// as (label, [value at a, value at b]) with values +-1. For Z/2 the single
/// generator column is used.
pub fn linear_characters(name: &str) -> Result<Vec<(String, Vec<i64>)>, String> {
    if name == "z2" {
        return Ok(vec![
            ("T".to_string(), vec![1]),
            ("L".to_string(), vec![-1]),
        ]);
    }
    let n: u32 = name
        .strip_prefix('d')
        .and_then(|s| s.parse().ok())
        .filter(|&n| n >= 2)
        .ok_or_else(|| format!("linear characters unsupported for '{name}'"))?;
    let mut out = vec![
        ("T".to_string(), vec![1, 1]),
        ("L".to_string(), vec![1, -1]),
    ];
    if n % 2 == 0 {
        out.push(("L1".to_string(), vec![-1, 1]));
        out.push(("L2".to_string(), vec![-1, -1]));
    }
    Ok(out)
}

/// Spot-check of the group axioms used by the test and property suites:
/// exhaustive closure/inverse checks are implicit in table construction, so
/// this verifies associativity on seeded random triples.
pub fn associativity_spot_check(g: &FiniteGroup, triples: usize, seed: u64) -> bool {
    let n = g.order() as u64;
    let mut rng = SplitMix64::new(seed);
    for _ in 0..triples {
        let x = (rng.next_u64() % n) as usize;
        let y = (rng.next_u64() % n) as usize;
        let z = (rng.next_u64() % n) as usize;
        let left = g.mul[g.mul[x][y] as usize][z];
        let right = g.mul[x][g.mul[y][z] as usize];
        if left != right {
            return false;
        }
    }
    true
}

pub const _ASSERT_FIVE_VARS: () = assert!(MAX_VARS == 5);

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;
    use crate::poly::parse_poly;

    #[test]
    fn dihedral_structure() {
        for (n, invs) in [(2u32, 3usize), (3, 3), (5, 5), (6, 7)] {
            let g = FiniteGroup::dihedral(n);
            assert_eq!(g.order(), 2 * n as usize);
            assert_eq!(g.involutions().len(), invs, "d{n}");
            assert!(associativity_spot_check(&g, 1000, 7));
            for e in 0..g.order() {
                let _ = g.inverse(e);
            }
        }
        assert_eq!(FiniteGroup::cyclic2().involutions().len(), 1);
    }

    #[test]
    fn dihedral_pair_orders() {
        let d2 = FiniteGroup::dihedral(2);
        let h = d2.pair_order_histogram(&d2.involutions());
        assert_eq!(h, BTreeMap::from([(2, 3)]));
        let d6 = FiniteGroup::dihedral(6);
        let h6 = d6.pair_order_histogram(&d6.involutions());
        let total: u64 = h6.values().sum();
        assert_eq!(total, 21); // C(7,2)
    }

    #[test]
    fn a5_matrix_closure() {
        let g = FiniteGroup::a5();
        assert_eq!(g.order(), 60);
        assert_eq!(g.involutions().len(), 15);
        assert!(associativity_spot_check(&g, 1000, 11));
        let h = g.pair_order_histogram(&g.involutions());
        assert_eq!(h, BTreeMap::from([(2, 15), (3, 30), (5, 60)]));
        assert_eq!(g.order_histogram(), BTreeMap::from([(1, 1), (2, 15), (3, 20), (5, 24)]));
    }

    #[test]
    fn psl2_census() {
        let g = FiniteGroup::psl2_11();
        assert_eq!(g.order(), 660);
        assert_eq!(g.involutions().len(), 55);
        assert_eq!(
            g.order_histogram(),
            BTreeMap::from([(1, 1), (2, 55), (3, 110), (5, 264), (6, 110), (11, 120)])
        );
        let h = g.pair_order_histogram(&g.involutions());
        assert_eq!(h, BTreeMap::from([(2, 165), (3, 330), (5, 660), (6, 330)]));
        assert!(associativity_spot_check(&g, 1000, 13));
    }

    #[test]
    fn psl2_order2_example() {
        let g = FiniteGroup::psl2_11();
        let target = [0u8, 1, 10, 0]; // (0,1,-1,0)
        let idx = g
            .labels
            .iter()
            .position(|l| l == "[0,1;10,0]")
            .expect("element present");
        let _ = target;
        assert_eq!(g.element_order(idx), 2);
    }

    #[test]
    fn psl2_involutions_single_conjugacy_class() {
        let g = FiniteGroup::psl2_11();
        let invs = g.involutions();
        let base = invs[0];
        let mut reached: std::collections::BTreeSet<usize> = std::collections::BTreeSet::new();
        for h in 0..g.order() {
            let hi = g.inverse(h);
            let c = g.mul[g.mul[h][base] as usize][hi] as usize;
            reached.insert(c);
        }
        let inv_set: std::collections::BTreeSet<usize> = invs.iter().copied().collect();
        assert_eq!(reached, inv_set);
    }

    #[test]
    fn decomposition_parsing() {
        assert_eq!(
            parse_decomposition("V1/6+V2/6+T", 6).unwrap(),
            vec![Irrep::V { k: 1 }, Irrep::V { k: 2 }, Irrep::T]
        );
        assert_eq!(
            parse_decomposition("2V1/3+T", 3).unwrap(),
            vec![Irrep::V { k: 1 }, Irrep::V { k: 1 }, Irrep::T]
        );
        assert_eq!(
            parse_decomposition("L+L1+L2+2T", 2).unwrap(),
            vec![Irrep::L, Irrep::L1, Irrep::L2, Irrep::T, Irrep::T]
        );
        // dimension 6: rejected
        let err = parse_decomposition("V1/4+L+L1+2T", 4).unwrap_err();
        assert!(err.contains("dimension 6"), "{err}");
        assert!(parse_decomposition("V1/4+X", 4).is_err());
        assert!(parse_decomposition("V1/3+L1+T+T", 3).is_err()); // L1 needs even n
        assert!(parse_decomposition("V1/5+V2/6+T", 5).is_err()); // denominator mismatch
    }

    #[test]
    fn family_rep_trace_tables() {
        let cases: Vec<(&str, &str, Vec<(u32, i64)>)> = vec![
            ("d2", "L+L1+L2+2T", vec![(1, 5), (2, 1)]),
            ("d3", "2V1/3+T", vec![(1, 5), (2, 1), (3, -1)]),
            ("d5", "V1/5+V2/5+T", vec![(1, 5), (2, 1), (5, 0)]),
            ("d6", "V1/6+V2/6+T", vec![(1, 5), (2, 1), (3, -1), (6, 1)]),
            ("a5", "fixed", vec![(1, 5), (2, 1), (3, -1), (5, 0)]),
        ];
        for (name, decomp, expect) in cases {
            let rep = build_representation(name, decomp).unwrap();
            let table = rep_trace_table(&rep).unwrap();
            let got: Vec<(u32, Cyclo)> = table.into_iter().collect();
            let want: Vec<(u32, Cyclo)> = expect
                .into_iter()
                .map(|(o, t)| (o, Cyclo::rational(rep.m, rat(t))))
                .collect();
            assert_eq!(got, want, "{name}");
        }
    }

    #[test]
    fn klein_diagonal_trace_relation() {
        let rep = klein_symmetry_rep();
        let t = Representation::trace(&rep.gen_mats[0]);
        // t^2 + t + 3 = 0
        let rel = t.mul(&t).add(&t).add(&Cyclo::rational(11, rat(3)));
        assert!(rel.is_zero());
    }

    #[test]
    fn sym3_is_contravariant_action() {
        let rep = build_representation("d6", "V1/6+V2/6+T").unwrap();
        let mats = rep.element_matrices();
        let group = rep.group.as_ref().unwrap();
        let mut rng = SplitMix64::new(3);
        for _ in 0..5 {
            let g = (rng.next_u64() % group.order() as u64) as usize;
            let h = (rng.next_u64() % group.order() as u64) as usize;
            let lhs = mat_mul(&sym3_matrix(&mats[g]), &sym3_matrix(&mats[h]));
            let rhs = sym3_matrix(&mats[group.mul[h][g] as usize]);
            assert_eq!(lhs, rhs);
        }
        let id_act = sym3_matrix(&cyclo_identity(5));
        assert_eq!(id_act, identity::<Cyclo>(35));
    }

    #[test]
    fn sym3_diagonal_acts_by_monomial_weights() {
        let rep = klein_symmetry_rep();
        let act = sym3_matrix(&rep.gen_mats[0]);
        let mons = cubic_monomials();
        let weights = [1i64, 9, 3, 4, 5];
        for (j, e) in mons.iter().enumerate() {
            for (i, row) in act.iter().enumerate() {
                if i == j {
                    let w: i64 = e
                        .0
                        .iter()
                        .zip(&weights)
                        .map(|(&ei, &wi)| ei as i64 * wi)
                        .sum();
                    assert_eq!(row[j], Cyclo::zeta_pow(11, w));
                } else {
                    assert!(row[j].is_zero());
                }
            }
        }
    }

    #[test]
    fn klein_cubic_spans_its_invariant_space() {
        let rep = klein_symmetry_rep();
        let chi = vec![Cyclo::one(), Cyclo::one()];
        let basis = eigenspace_cubics(&rep, &chi);
        assert_eq!(basis.len(), 1);
        let klein = parse_poly("x1*x5^2 + x5*x3^2 + x3*x4^2 + x4*x2^2 + x2*x1^2", 5).unwrap();
        let klein_c: MPoly<Cyclo> = MPoly {
            terms: klein
                .terms
                .iter()
                .map(|(e, c)| (*e, Cyclo::from_rat(c.clone())))
                .collect(),
        };
        // basis[0] is monic on its leading monomial; compare after scaling
        let lead = basis[0].leading().unwrap().1.clone();
        let klead = klein_c.leading().unwrap().1.clone();
        let scaled = klein_c.scale(&klead.inv().mul(&lead));
        assert_eq!(basis[0], scaled);
        // and the Klein cubic is invariant under both generators directly
        for mat in &rep.gen_mats {
            assert_eq!(klein_c.substitute_linear(mat), klein_c);
        }
    }

    #[test]
    fn eigenspace_dimensions_for_family_reps() {
        let cases = vec![
            ("d2", "L+L1+L2+2T", 11usize),
            ("d3", "2V1/3+T", 8),
            ("d5", "V1/5+V2/5+T", 5),
            ("d6", "V1/6+V2/6+T", 5),
            ("a5", "fixed", 2),
        ];
        for (name, decomp, dim) in cases {
            let rep = build_representation(name, decomp).unwrap();
            let chi = vec![Cyclo::one(), Cyclo::one()];
            let basis = eigenspace_cubics(&rep, &chi);
            assert_eq!(basis.len(), dim, "{name}");
            // exact eigen-relation for every basis element and generator
            for bpoly in &basis {
                for mat in &rep.gen_mats {
                    assert_eq!(&bpoly.substitute_linear(mat), bpoly, "{name}");
                }
            }
        }
    }

    #[test]
    fn linear_character_counts() {
        assert_eq!(linear_characters("d3").unwrap().len(), 2);
        assert_eq!(linear_characters("d4").unwrap().len(), 4);
        assert_eq!(linear_characters("d6").unwrap().len(), 4);
        assert_eq!(linear_characters("z2").unwrap().len(), 2);
        assert!(linear_characters("a5").is_err());
    }
}
