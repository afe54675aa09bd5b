//! Sparse multivariate polynomials over an exact field, a text parser and
//! canonical printer, linear coordinate change, Buchberger Groebner bases,
//! and the Jacobian-criterion smoothness certifier for cubic threefolds.

use crate::exact::{rat_is_negative, rat_to_text, Field, Rat};
use std::collections::BTreeMap;
use std::fmt::Write as _;

pub const MAX_VARS: usize = 5;

/// Exponent vector over five variable slots (unused trailing slots stay 0, so
/// plane polynomials in x1..x3 share the representation). Ordered by
/// degrevlex: higher total degree is greater; on ties the vector whose last
/// nonzero entry of the difference is negative is greater.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub struct Exp(pub [u16; MAX_VARS]);

impl Exp {
    pub fn zero() -> Self {
        Exp([0; MAX_VARS])
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn add(&self, other: &Exp) -> Exp {
        let mut out = [0u16; MAX_VARS];
        for i in 0..MAX_VARS {
            out[i] = self.0[i] + other.0[i];
        }
        Exp(out)
    }

    /// Componentwise divisibility: self | other.
    pub fn divides(&self, other: &Exp) -> bool {
        (0..MAX_VARS).all(|i| self.0[i] <= other.0[i])
    }

    pub fn sub(&self, other: &Exp) -> Exp {
        let mut out = [0u16; MAX_VARS];
        for i in 0..MAX_VARS {
            out[i] = self.0[i] - other.0[i];
        }
        Exp(out)
    }

    pub fn lcm(&self, other: &Exp) -> Exp {
        let mut out = [0u16; MAX_VARS];
        for i in 0..MAX_VARS {
            out[i] = self.0[i].max(other.0[i]);
        }
        Exp(out)
    }

    pub fn coprime(&self, other: &Exp) -> bool {
        (0..MAX_VARS).all(|i| self.0[i] == 0 || other.0[i] == 0)
    }
}

impl Ord for Exp {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        use std::cmp::Ordering;
        match self.total_degree().cmp(&other.total_degree()) {
            Ordering::Equal => {}
            o => return o,
        }
        for i in (0..MAX_VARS).rev() {
            if self.0[i] != other.0[i] {
                return if self.0[i] < other.0[i] {
                    Ordering::Greater
                } else {
                    Ordering::Less
                };
            }
        }
        Ordering::Equal
    }
}

impl PartialOrd for Exp {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse polynomial; the term map stores no zero coefficients, and iterating
/// the map descending (`.rev()`) yields canonical degrevlex-descending order.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MPoly<F: Field> {
    pub terms: BTreeMap<Exp, F>,
}

impl<F: Field> MPoly<F> {
    pub fn zero() -> Self {
        MPoly { terms: BTreeMap::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn constant(c: F) -> Self {
        let mut p = MPoly::zero();
        p.add_term(Exp::zero(), c);
        p
    }

    pub fn monomial(exp: Exp, c: F) -> Self {
        let mut p = MPoly::zero();
        p.add_term(exp, c);
        p
    }

    pub fn var(i: usize) -> Self {
        let mut e = [0u16; MAX_VARS];
        e[i] = 1;
        MPoly::monomial(Exp(e), F::one())
    }

    pub fn add_term(&mut self, exp: Exp, c: F) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exp) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get().add(&c);
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(*e, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(*e, c.neg());
        }
        out
    }

    pub fn neg(&self) -> Self {
        MPoly { terms: self.terms.iter().map(|(e, c)| (*e, c.neg())).collect() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = MPoly::zero();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                out.add_term(ea.add(eb), ca.mul(cb));
            }
        }
        out
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return MPoly::zero();
        }
        MPoly { terms: self.terms.iter().map(|(e, v)| (*e, v.mul(c))).collect() }
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.total_degree()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(|e| e.total_degree());
        match degs.next() {
            None => true,
            Some(d) => degs.all(|x| x == d),
        }
    }

    /// Leading term in degrevlex (greatest key).
    pub fn leading(&self) -> Option<(&Exp, &F)> {
        self.terms.iter().next_back()
    }

    pub fn make_monic(&self) -> Self {
        match self.leading() {
            None => MPoly::zero(),
            Some((_, c)) => self.scale(&c.inv()),
        }
    }

    /// Exact partial derivatives, one per variable slot.
    pub fn partials(&self) -> Vec<MPoly<F>> {
        (0..MAX_VARS)
            .map(|i| {
                let mut out = MPoly::zero();
                for (e, c) in &self.terms {
                    if e.0[i] == 0 {
                        continue;
                    }
                    let mut ne = *e;
                    ne.0[i] -= 1;
                    out.add_term(ne, c.mul(&F::from_i64(e.0[i] as i64)));
                }
                out
            })
            .collect()
    }

    /// p(Mx): substitute x_i -> sum_j M[i][j] * x_j.
    pub fn substitute_linear(&self, m: &[Vec<F>]) -> MPoly<F> {
        let n = m.len();
        assert!(n <= MAX_VARS);
        for row in m {
            assert_eq!(row.len(), n, "dimension mismatch");
        }
        let images: Vec<MPoly<F>> = (0..MAX_VARS)
            .map(|i| {
                if i < n {
                    let mut img = MPoly::zero();
                    for (j, c) in m[i].iter().enumerate() {
                        let mut e = [0u16; MAX_VARS];
                        e[j] = 1;
                        img.add_term(Exp(e), c.clone());
                    }
                    img
                } else {
                    MPoly::var(i)
                }
            })
            .collect();
        let mut out = MPoly::zero();
        for (e, c) in &self.terms {
            let mut term = MPoly::constant(c.clone());
            for (i, &ei) in e.0.iter().enumerate() {
                for _ in 0..ei {
                    term = term.mul(&images[i]);
                }
            }
            out = out.add(&term);
        }
        out
    }

    /// Evaluate at a point.
    pub fn eval(&self, point: &[F]) -> F {
        let mut acc = F::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (i, &ei) in e.0.iter().enumerate() {
                for _ in 0..ei {
                    t = t.mul(&point[i]);
                }
            }
            acc = acc.add(&t);
        }
        acc
    }

    /// Canonical text: degrevlex-descending terms, explicit `*` and `^`.
    pub fn to_text_with(&self, coeff_text: impl Fn(&F) -> (bool, String)) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (idx, (e, c)) in self.terms.iter().rev().enumerate() {
            let (negative, mag) = coeff_text(c);
            if idx == 0 {
                if negative {
                    out.push('-');
                }
            } else if negative {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            let mut factors: Vec<String> = Vec::new();
            if mag != "1" || e.total_degree() == 0 {
                factors.push(mag);
            }
            for (i, &ei) in e.0.iter().enumerate() {
                if ei == 0 {
                    continue;
                }
                if ei == 1 {
                    factors.push(format!("x{}", i + 1));
                } else {
                    factors.push(format!("x{}^{}", i + 1, ei));
                }
            }
            let _ = write!(out, "{}", factors.join("*"));
        }
        out
    }
}

impl MPoly<Rat> {
    pub fn to_text(&self) -> String {
        self.to_text_with(|c| {
            let neg = rat_is_negative(c);
            let mag = if neg { rat_to_text(&c.neg()) } else { rat_to_text(c) };
            (neg, mag)
        })
    }
}

/// Parse error with byte position in the input.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub position: usize,
    pub message: String,
}

impl std::fmt::Display for ParseError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "parse error at byte {}: {}", self.position, self.message)
    }
}

impl std::error::Error for ParseError {}

/// Parse the grammar:
///   poly   := term (('+'|'-') term)*
///   term   := [coeff '*'] factor ('*' factor)* | coeff
///   factor := var ['^' posint]
///   coeff  := ['-'] int ['/' posint]
///   var    := 'x' digit
/// Whitespace is insignificant. `nvars` bounds the allowed variable indices.
pub fn parse_poly(text: &str, nvars: usize) -> Result<MPoly<Rat>, ParseError> {
    assert!(nvars >= 1 && nvars <= MAX_VARS);
    let bytes: Vec<char> = text.chars().collect();
    let mut pos = 0usize;

    fn skip_ws(bytes: &[char], pos: &mut usize) {
        while *pos < bytes.len() && bytes[*pos].is_whitespace() {
            *pos += 1;
        }
    }

    fn parse_uint(bytes: &[char], pos: &mut usize) -> Result<i128, ParseError> {
        let start = *pos;
        let mut v: i128 = 0;
        while *pos < bytes.len() && bytes[*pos].is_ascii_digit() {
            v = v
                .checked_mul(10)
                .and_then(|x| x.checked_add((bytes[*pos] as u8 - b'0') as i128))
                .ok_or(ParseError { position: start, message: "integer literal too large".into() })?;
            *pos += 1;
        }
        if *pos == start {
            return Err(ParseError { position: start, message: "expected integer".into() });
        }
        Ok(v)
    }

    let mut poly: MPoly<Rat> = MPoly::zero();
    skip_ws(&bytes, &mut pos);
    if pos == bytes.len() {
        return Err(ParseError { position: pos, message: "empty input".into() });
    }
    let mut first = true;
    loop {
        skip_ws(&bytes, &mut pos);
        let mut sign = 1i64;
        if !first {
            if pos >= bytes.len() {
                break;
            }
            match bytes[pos] {
                '+' => {
                    pos += 1;
                }
                '-' => {
                    sign = -1;
                    pos += 1;
                }
                _ => {
                    return Err(ParseError {
                        position: pos,
                        message: format!("expected '+' or '-', found '{}'", bytes[pos]),
                    })
                }
            }
            skip_ws(&bytes, &mut pos);
        } else if pos < bytes.len() && bytes[pos] == '-' {
            sign = -1;
            pos += 1;
            skip_ws(&bytes, &mut pos);
        }
        first = false;

        // coefficient (optional unless the term is a bare constant)
        let mut coeff = Rat::from_i64(sign);
        let mut saw_coeff = false;
        if pos < bytes.len() && bytes[pos].is_ascii_digit() {
            let n = parse_uint(&bytes, &mut pos)?;
            let mut num = crate::exact::rat(n as i64);
            if pos < bytes.len() && bytes[pos] == '/' {
                pos += 1;
                let dpos = pos;
                let d = parse_uint(&bytes, &mut pos)?;
                if d == 0 {
                    return Err(ParseError { position: dpos, message: "zero denominator".into() });
                }
                num = num / crate::exact::rat(d as i64);
            }
            coeff = coeff.mul(&num);
            saw_coeff = true;
        }

        // factors
        let mut exp = Exp::zero();
        let mut saw_factor = false;
        loop {
            skip_ws(&bytes, &mut pos);
            if saw_coeff || saw_factor {
                if pos < bytes.len() && bytes[pos] == '*' {
                    pos += 1;
                    skip_ws(&bytes, &mut pos);
                } else {
                    break;
                }
            }
            if pos >= bytes.len() || bytes[pos] != 'x' {
                if saw_coeff && !saw_factor {
                    break; // bare constant term
                }
                return Err(ParseError {
                    position: pos,
                    message: "expected variable".into(),
                });
            }
            pos += 1;
            if pos >= bytes.len() || !bytes[pos].is_ascii_digit() {
                return Err(ParseError { position: pos, message: "expected variable index".into() });
            }
            let vi = (bytes[pos] as u8 - b'0') as usize;
            pos += 1;
            if vi < 1 || vi > nvars {
                return Err(ParseError {
                    position: pos - 1,
                    message: format!("unknown variable x{vi}"),
                });
            }
            let mut e: u16 = 1;
            skip_ws(&bytes, &mut pos);
            if pos < bytes.len() && bytes[pos] == '^' {
                pos += 1;
                skip_ws(&bytes, &mut pos);
                let epos = pos;
                let ev = parse_uint(&bytes, &mut pos)?;
                if ev < 1 || ev > u16::MAX as i128 {
                    return Err(ParseError {
                        position: epos,
                        message: "exponent out of range".into(),
                    });
                }
                e = ev as u16;
            }
            exp.0[vi - 1] += e;
            saw_factor = true;
        }
        if !saw_coeff && !saw_factor {
            return Err(ParseError { position: pos, message: "expected term".into() });
        }
        poly.add_term(exp, coeff);

        skip_ws(&bytes, &mut pos);
        if pos >= bytes.len() {
            break;
        }
        if bytes[pos] != '+' && bytes[pos] != '-' {
            return Err(ParseError {
                position: pos,
                message: format!("unexpected character '{}'", bytes[pos]),
            });
        }
    }
    Ok(poly)
}

/// Normal form of `p` against `basis`: repeatedly cancel any term divisible
/// by some basis leading term (full reduction, not just the leading term).
pub fn reduce<F: Field>(p: &MPoly<F>, basis: &[MPoly<F>]) -> MPoly<F> {
    let leads: Vec<(Exp, F)> = basis
        .iter()
        .filter_map(|b| b.leading().map(|(e, c)| (*e, c.clone())))
        .collect();
    let mut rem = MPoly::zero();
    let mut work = p.clone();
    'outer: while let Some((we, wc)) = work.leading().map(|(e, c)| (*e, c.clone())) {
        for (i, (le, lc)) in leads.iter().enumerate() {
            if le.divides(&we) {
                let factor = wc.mul(&lc.inv());
                let shift = we.sub(le);
                let mut sub = MPoly::zero();
                for (e, c) in &basis[i].terms {
                    sub.add_term(e.add(&shift), c.mul(&factor));
                }
                work = work.sub(&sub);
                continue 'outer;
            }
        }
        // leading term irreducible: move it to the remainder
        work.terms.remove(&we);
        rem.add_term(we, wc);
    }
    rem
}

/// S-polynomial of two nonzero polynomials: the leading terms cancel by
/// construction, so a Groebner basis reduces it to zero.
pub fn s_poly<F: Field>(f: &MPoly<F>, g: &MPoly<F>) -> MPoly<F> {
    let (ef, cf) = f.leading().expect("s_poly of zero");
    let (eg, cg) = g.leading().expect("s_poly of zero");
    let l = ef.lcm(eg);
    let mf = MPoly::monomial(l.sub(ef), cf.inv());
    let mg = MPoly::monomial(l.sub(eg), cg.inv());
    f.mul(&mf).sub(&g.mul(&mg))
}

/// Buchberger's algorithm with the product (coprime-lead) criterion and
/// normal-pair selection (smallest lcm first); returns the reduced Groebner
/// basis with monic leading coefficients, sorted by leading term.
pub fn groebner<F: Field>(generators: &[MPoly<F>]) -> Vec<MPoly<F>> {
    let mut basis: Vec<MPoly<F>> = generators.iter().filter(|p| !p.is_zero()).cloned().collect();
    if basis.is_empty() {
        return vec![];
    }
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for i in 0..basis.len() {
        for j in 0..i {
            pairs.push((j, i));
        }
    }
    while !pairs.is_empty() {
        // normal selection: smallest lcm of leading exponents in degrevlex
        let mut best = 0usize;
        let mut best_lcm = {
            let (i, j) = pairs[0];
            basis[i].leading().unwrap().0.lcm(basis[j].leading().unwrap().0)
        };
        for (k, &(i, j)) in pairs.iter().enumerate().skip(1) {
            let l = basis[i].leading().unwrap().0.lcm(basis[j].leading().unwrap().0);
            if l < best_lcm {
                best_lcm = l;
                best = k;
            }
        }
        let (i, j) = pairs.swap_remove(best);
        let (ei, _) = basis[i].leading().unwrap();
        let (ej, _) = basis[j].leading().unwrap();
        if ei.coprime(ej) {
            continue; // product criterion
        }
        let s = s_poly(&basis[i], &basis[j]);
        let nf = reduce(&s, &basis);
        if !nf.is_zero() {
            let new_idx = basis.len();
            basis.push(nf);
            for k in 0..new_idx {
                pairs.push((k, new_idx));
            }
        }
    }
    // minimalize: drop elements whose lead is divisible by another's lead
    let mut keep: Vec<bool> = vec![true; basis.len()];
    for i in 0..basis.len() {
        if !keep[i] {
            continue;
        }
        let (ei, _) = basis[i].leading().unwrap();
        for j in 0..basis.len() {
            if i == j || !keep[j] {
                continue;
            }
            let (ej, _) = basis[j].leading().unwrap();
            if ej.divides(ei) && (ei != ej || j < i) {
                keep[i] = false;
                break;
            }
        }
    }
    let minimal: Vec<MPoly<F>> =
        basis.into_iter().zip(&keep).filter(|(_, &k)| k).map(|(p, _)| p).collect();
    // inter-reduce tails and normalize to monic
    let mut reduced: Vec<MPoly<F>> = Vec::with_capacity(minimal.len());
    for i in 0..minimal.len() {
        let others: Vec<MPoly<F>> = minimal
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, p)| p.clone())
            .collect();
        let r = reduce(&minimal[i], &others);
        if !r.is_zero() {
            reduced.push(r.make_monic());
        }
    }
    reduced.sort_by(|a, b| a.leading().unwrap().0.cmp(b.leading().unwrap().0));
    reduced
}

/// Decide projective emptiness of the zero set of homogeneous generators by
/// the staircase finiteness test: the degrevlex leading-term ideal must
/// contain a pure power of every variable.
pub fn projective_empty<F: Field>(generators: &[MPoly<F>]) -> bool {
    let gens: Vec<MPoly<F>> = generators.iter().filter(|p| !p.is_zero()).cloned().collect();
    if gens.is_empty() {
        return false;
    }
    for g in &gens {
        assert!(g.is_homogeneous(), "projective_empty needs homogeneous input");
    }
    let gb = groebner(&gens);
    let leads: Vec<Exp> = gb.iter().map(|p| *p.leading().unwrap().0).collect();
    (0..MAX_VARS).all(|v| {
        leads.iter().any(|e| e.0[v] > 0 && (0..MAX_VARS).all(|j| j == v || e.0[j] == 0))
    })
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Smoothness {
    Smooth,
    Singular,
}

/// Jacobian criterion for a cubic threefold: smooth iff the partials have no
/// common projective zero. The form itself need not be adjoined (Euler's
/// identity places it in the Jacobian ideal in characteristic zero).
pub fn smooth_cubic<F: Field>(f: &MPoly<F>) -> Smoothness {
    assert!(
        f.is_homogeneous() && f.total_degree() == Some(3),
        "smooth_cubic needs a homogeneous cubic"
    );
    if projective_empty(&f.partials()) {
        Smoothness::Smooth
    } else {
        Smoothness::Singular
    }
}
