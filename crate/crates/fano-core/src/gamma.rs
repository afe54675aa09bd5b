//! Plane quintic attached to a line on a cubic threefold: normal form of the
//! cubic along the line {x1=x2=x3=0}, the discriminant quintic of the conic
//! bundle, the harmonic-inversion criterion, and the smooth-genus-2 versus
//! two-elliptic-curves classification.

use crate::exact::{rat, Field, Rat};
use crate::linalg::{invert, rref, Matrix};
use crate::poly::{Exp, MPoly};
use crate::rng::SplitMix64;

/// Decomposition F = C + 2x4 Q1 + 2x5 Q2 + x4^2 x1 + 2x4x5 ell + x5^2 x3
/// with C cubic, Q1/Q2 quadratic and ell linear, all in x1,x2,x3.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LineNormalForm {
    pub c: MPoly<Rat>,
    pub q1: MPoly<Rat>,
    pub q2: MPoly<Rat>,
    pub ell: MPoly<Rat>,
}

fn strip(e: &Exp, var: usize, amount: u16) -> Exp {
    let mut out = e.0;
    out[var] -= amount;
    Exp(out)
}

fn monomial_x(var: usize) -> MPoly<Rat> {
    let mut e = [0u16; 5];
    e[var] = 1;
    MPoly::monomial(Exp(e), rat(1))
}

/// Extract the normal-form data of a cubic along the line {x1=x2=x3=0}.
/// The line must lie on the cubic and the coefficient forms of x4^2 and
/// x5^2 must be exactly x1 and x3.
pub fn line_normal_form(f: &MPoly<Rat>) -> Result<LineNormalForm, String> {
    if !f.is_homogeneous() || f.total_degree() != Some(3) {
        return Err("input is not a homogeneous cubic".to_string());
    }
    let mut c = MPoly::zero();
    let mut q1 = MPoly::zero();
    let mut q2 = MPoly::zero();
    let mut ell = MPoly::zero();
    let mut a = MPoly::zero(); // coefficient form of x4^2
    let mut b = MPoly::zero(); // coefficient form of x5^2
    for (e, coeff) in &f.terms {
        match (e.0[3], e.0[4]) {
            (0, 0) => c.add_term(*e, coeff.clone()),
            (1, 0) => q1.add_term(strip(e, 3, 1), coeff / rat(2)),
            (0, 1) => q2.add_term(strip(e, 4, 1), coeff / rat(2)),
            (2, 0) => a.add_term(strip(e, 3, 2), coeff.clone()),
            (0, 2) => b.add_term(strip(e, 4, 2), coeff.clone()),
            (1, 1) => ell.add_term(strip(&strip(e, 3, 1), 4, 1), coeff / rat(2)),
            _ => return Err("line not on cubic".to_string()),
        }
    }
    if a != monomial_x(0) || b != monomial_x(2) {
        return Err("cubic not in normal position".to_string());
    }
    Ok(LineNormalForm { c, q1, q2, ell })
}

/// The cubic determined by normal-form data (inverse of [`line_normal_form`]).
pub fn reconstruct(nf: &LineNormalForm) -> MPoly<Rat> {
    let x1 = monomial_x(0);
    let x3 = monomial_x(2);
    let x4 = monomial_x(3);
    let x5 = monomial_x(4);
    let two = rat(2);
    nf.c.add(&x4.mul(&nf.q1).scale(&two))
        .add(&x5.mul(&nf.q2).scale(&two))
        .add(&x4.mul(&x4).mul(&x1))
        .add(&x4.mul(&x5).mul(&nf.ell).scale(&two))
        .add(&x5.mul(&x5).mul(&x3))
}

/// A line in projective four-space: either three vanishing coordinates
/// (1-based variable indices) or the span of two points (rows).
#[derive(Clone, Debug)]
pub enum LineSelector {
    VanishingTriple([usize; 3]),
    Span(Matrix<Rat>),
}

fn stage_one_rows(line: &LineSelector) -> Result<Matrix<Rat>, String> {
    let mut rows: Matrix<Rat> = vec![vec![Rat::zero(); 5]; 5];
    match line {
        LineSelector::VanishingTriple(idx) => {
            let mut t: Vec<usize> = idx.to_vec();
            t.sort();
            t.dedup();
            if t.len() != 3 || t[0] < 1 || t[2] > 5 {
                return Err("vanishing coordinates must be three distinct indices in 1..=5".to_string());
            }
            let t0: Vec<usize> = t.iter().map(|&i| i - 1).collect();
            let free: Vec<usize> = (0..5).filter(|i| !t0.contains(i)).collect();
            for (new, &old) in t0.iter().chain(free.iter()).enumerate() {
                rows[old][new] = rat(1);
            }
        }
        LineSelector::Span(points) => {
            if points.len() != 2 || points.iter().any(|r| r.len() != 5) {
                return Err("line span must consist of two points with five coordinates".to_string());
            }
            let mut s = points.clone();
            let pivots = rref(&mut s);
            if pivots.len() != 2 {
                return Err("degenerate line".to_string());
            }
            let (p1, p2) = (pivots[0], pivots[1]);
            let non_pivots: Vec<usize> = (0..5).filter(|j| *j != p1 && *j != p2).collect();
            // x_{p1} = z4, x_{p2} = z5, x_j = z_a + S0[j] z4 + S1[j] z5
            for (a, &j) in non_pivots.iter().enumerate() {
                rows[j][a] = rat(1);
                rows[j][3] = s[0][j].clone();
                rows[j][4] = s[1][j].clone();
            }
            rows[p1][3] = rat(1);
            rows[p2][4] = rat(1);
        }
    }
    Ok(rows)
}

/// Move `line` to {x1=x2=x3=0} and the coefficient forms of x4^2 and x5^2 to
/// x1 and x3. The middle coordinate is completed deterministically: the first
/// standard functional independent from those two images, in index order.
pub fn normalize_line_coords(f: &MPoly<Rat>, line: &LineSelector) -> Result<MPoly<Rat>, String> {
    if !f.is_homogeneous() || f.total_degree() != Some(3) {
        return Err("input is not a homogeneous cubic".to_string());
    }
    let g = f.substitute_linear(&stage_one_rows(line)?);
    let mut a = MPoly::zero();
    let mut b = MPoly::zero();
    for (e, coeff) in &g.terms {
        if e.0[0] == 0 && e.0[1] == 0 && e.0[2] == 0 {
            return Err("line not on cubic".to_string());
        }
        match (e.0[3], e.0[4]) {
            (2, 0) => a.add_term(strip(e, 3, 2), coeff.clone()),
            (0, 2) => b.add_term(strip(e, 4, 2), coeff.clone()),
            _ => {}
        }
    }
    let grad = |p: &MPoly<Rat>| -> Vec<Rat> {
        (0..3)
            .map(|v| {
                let mut e = [0u16; 5];
                e[v] = 1;
                p.terms.get(&Exp(e)).cloned().unwrap_or_else(Rat::zero)
            })
            .collect()
    };
    let (ga, gb) = (grad(&a), grad(&b));
    let mut t: Matrix<Rat> = Matrix::new();
    let mut chosen = None;
    for p in 0..3 {
        let mut ep = vec![Rat::zero(); 3];
        ep[p] = rat(1);
        let cand = vec![ga.clone(), ep, gb.clone()];
        if let Some(inv) = invert(&cand) {
            t = inv;
            chosen = Some(p);
            break;
        }
    }
    if chosen.is_none() {
        return Err("degenerate line".to_string());
    }
    let mut rows: Matrix<Rat> = vec![vec![Rat::zero(); 5]; 5];
    for i in 0..3 {
        for j in 0..3 {
            rows[i][j] = t[i][j].clone();
        }
    }
    rows[3][3] = rat(1);
    rows[4][4] = rat(1);
    let h = g.substitute_linear(&rows);
    debug_assert!(line_normal_form(&h).is_ok());
    Ok(h)
}

/// The plane quintic (x1x3 - ell^2) C - Q1^2 x3 + 2 Q1 Q2 ell - Q2^2 x1.
pub fn gamma_quintic(nf: &LineNormalForm) -> MPoly<Rat> {
    let x1 = monomial_x(0);
    let x3 = monomial_x(2);
    let conic = x1.mul(&x3).sub(&nf.ell.mul(&nf.ell));
    conic
        .mul(&nf.c)
        .sub(&nf.q1.mul(&nf.q1).mul(&x3))
        .add(&nf.q1.mul(&nf.q2).mul(&nf.ell).scale(&rat(2)))
        .sub(&nf.q2.mul(&nf.q2).mul(&x1))
}

/// True iff Q1 = Q2 = 0; exactly then the involution
/// (x1:x2:x3:x4:x5) -> (x1:x2:x3:-x4:-x5) preserves the cubic (cross-checked
/// on the reconstruction).
pub fn harmonic_inversion_test(nf: &LineNormalForm) -> bool {
    let harmonic = nf.q1.is_zero() && nf.q2.is_zero();
    if harmonic {
        let mut flip: Matrix<Rat> = vec![vec![Rat::zero(); 5]; 5];
        for (i, row) in flip.iter_mut().enumerate() {
            row[i] = if i < 3 { rat(1) } else { rat(-1) };
        }
        let f = reconstruct(nf);
        assert_eq!(f.substitute_linear(&flip), f, "inversion must fix the cubic");
    }
    harmonic
}

/// Symmetric 3x3 matrix of the conic x1x3 - ell^2 on the plane.
pub fn conic_matrix(nf: &LineNormalForm) -> Matrix<Rat> {
    let l: Vec<Rat> = (0..3)
        .map(|v| {
            let mut e = [0u16; 5];
            e[v] = 1;
            nf.ell.terms.get(&Exp(e)).cloned().unwrap_or_else(Rat::zero)
        })
        .collect();
    (0..3)
        .map(|i| {
            (0..3)
                .map(|j| {
                    let base = if (i, j) == (0, 2) || (i, j) == (2, 0) {
                        crate::exact::ratio(1, 2)
                    } else {
                        Rat::zero()
                    };
                    base - &l[i] * &l[j]
                })
                .collect()
        })
        .collect()
}

pub fn conic_rank(nf: &LineNormalForm) -> usize {
    let mut m = conic_matrix(nf);
    rref(&mut m).len()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Genus2Kind {
    SmoothGenus2,
    SumOfTwoElliptic,
}

/// Classify the fixed curve of the harmonic inversion: a smooth conic
/// (rank 3) gives a smooth genus-2 double cover; a degenerate conic splits it
/// into two elliptic curves.
pub fn genus2_classification(nf: &LineNormalForm) -> Result<Genus2Kind, String> {
    if !(nf.q1.is_zero() && nf.q2.is_zero()) {
        return Err("classification requires the harmonic inversion to act".to_string());
    }
    Ok(if conic_rank(nf) == 3 {
        Genus2Kind::SmoothGenus2
    } else {
        Genus2Kind::SumOfTwoElliptic
    })
}

/// Monomials of total degree `d` in x1,x2,x3, in a fixed deterministic order.
pub fn plane_monomials(d: u16) -> Vec<Exp> {
    let mut out = Vec::new();
    for a in (0..=d).rev() {
        for b in (0..=(d - a)).rev() {
            out.push(Exp([a, b, d - a - b, 0, 0]));
        }
    }
    out
}

/// Deterministic normal-form data with small integer coefficients drawn from
/// the generator, for round-trip and property tests.
pub fn random_normal_form(rng: &mut SplitMix64) -> LineNormalForm {
    let draw = |rng: &mut SplitMix64, d: u16| -> MPoly<Rat> {
        let mut p = MPoly::zero();
        for e in plane_monomials(d) {
            p.add_term(e, rat(rng.next_param()));
        }
        p
    };
    LineNormalForm {
        c: draw(rng, 3),
        q1: draw(rng, 2),
        q2: draw(rng, 2),
        ell: draw(rng, 1),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::family_blocks;
    use crate::poly::parse_poly;

    fn p(text: &str) -> MPoly<Rat> {
        parse_poly(text, 5).unwrap()
    }

    fn d5_member() -> MPoly<Rat> {
        family_blocks("d5")
            .unwrap()
            .iter()
            .fold(MPoly::zero(), |acc, b| acc.add(b))
    }

    #[test]
    fn normal_form_round_trip_and_shape() {
        let f = p("x1^3 + x4^2*x1 + 2*x2*x4*x5 + x5^2*x3");
        let nf = line_normal_form(&f).unwrap();
        assert_eq!(nf.c, p("x1^3"));
        assert!(nf.q1.is_zero());
        assert!(nf.q2.is_zero());
        assert_eq!(nf.ell, p("x2"));
        assert_eq!(reconstruct(&nf), f);
        // full shape with quadratic terms
        let g = p("x2^3 + 2*x4*x2^2 + 2*x5*x1*x3 + x4^2*x1 + 2*x3*x4*x5 + x5^2*x3");
        let nfg = line_normal_form(&g).unwrap();
        assert_eq!(nfg.q1, p("x2^2"));
        assert_eq!(nfg.q2, p("x1*x3"));
        assert_eq!(nfg.ell, p("x3"));
        assert_eq!(reconstruct(&nfg), g);
    }

    #[test]
    fn normal_form_errors() {
        let fermat = p("x1^3 + x2^3 + x3^3 + x4^3 + x5^3");
        assert_eq!(line_normal_form(&fermat).unwrap_err(), "line not on cubic");
        let shifted = p("x1^3 + x4^2*x2 + x5^2*x3");
        assert_eq!(
            line_normal_form(&shifted).unwrap_err(),
            "cubic not in normal position"
        );
        let inhom = p("x1^2 + x4^2*x1");
        assert_eq!(
            line_normal_form(&inhom).unwrap_err(),
            "input is not a homogeneous cubic"
        );
    }

    #[test]
    fn seeded_round_trips() {
        let mut rng = SplitMix64::new(7);
        for _ in 0..5 {
            let nf = random_normal_form(&mut rng);
            let f = reconstruct(&nf);
            let back = line_normal_form(&f).unwrap();
            assert_eq!(back, nf);
        }
    }

    #[test]
    fn quintic_factors_when_harmonic() {
        let mut rng = SplitMix64::new(11);
        for _ in 0..5 {
            let mut nf = random_normal_form(&mut rng);
            nf.q1 = MPoly::zero();
            nf.q2 = MPoly::zero();
            let x1 = monomial_x(0);
            let x3 = monomial_x(2);
            let conic = x1.mul(&x3).sub(&nf.ell.mul(&nf.ell));
            assert_eq!(gamma_quintic(&nf), conic.mul(&nf.c));
            let g = gamma_quintic(&nf);
            assert!(g.is_zero() || (g.is_homogeneous() && g.total_degree() == Some(5)));
        }
    }

    #[test]
    fn harmonic_and_classification() {
        let f2 = line_normal_form(&p("x1^3 + x4^2*x1 + 2*x2*x4*x5 + x5^2*x3")).unwrap();
        assert!(harmonic_inversion_test(&f2));
        assert_eq!(genus2_classification(&f2).unwrap(), Genus2Kind::SmoothGenus2);
        // ell = 0 -> rank-2 conic -> two elliptic curves
        let mut zero_ell = f2.clone();
        zero_ell.ell = MPoly::zero();
        assert_eq!(conic_rank(&zero_ell), 2);
        assert_eq!(
            genus2_classification(&zero_ell).unwrap(),
            Genus2Kind::SumOfTwoElliptic
        );
        // ell = x1 -> conic x1x3 - x1^2, also degenerate
        let mut ell_x1 = f2.clone();
        ell_x1.ell = p("x1");
        assert_eq!(
            genus2_classification(&ell_x1).unwrap(),
            Genus2Kind::SumOfTwoElliptic
        );
        // non-harmonic input is rejected
        let mut bent = f2;
        bent.q1 = p("x2^2");
        assert!(!harmonic_inversion_test(&bent));
        assert!(genus2_classification(&bent).is_err());
    }

    #[test]
    fn normalize_identity_when_already_normal() {
        let f = p("x2^3 + 2*x4*x2^2 + x4^2*x1 + 2*x3*x4*x5 + x5^2*x3");
        let h = normalize_line_coords(&f, &LineSelector::VanishingTriple([1, 2, 3])).unwrap();
        assert_eq!(h, f);
    }

    #[test]
    fn normalize_golden_line_on_family_member() {
        let f = d5_member();
        let h = normalize_line_coords(&f, &LineSelector::VanishingTriple([1, 2, 5])).unwrap();
        let nf = line_normal_form(&h).unwrap();
        assert_eq!(nf.c, p("1/4*x1^3 + 1/4*x1^2*x3 + 1/2*x1*x2^2 + 1/4*x1*x3^2 + 1/2*x2^2*x3 + 1/4*x3^3"));
        assert_eq!(nf.q1, p("1/8*x1^2 - 1/4*x1*x3 - 1/2*x2^2 + 1/8*x3^2"));
        assert_eq!(nf.q2, p("-1/2*x1*x2 + 1/2*x2*x3"));
        assert_eq!(nf.ell, p("x2"));
        assert!(!harmonic_inversion_test(&nf));
        assert_eq!(conic_rank(&nf), 3);
        let gamma = gamma_quintic(&nf);
        let expect = p(
            "15/64*x1^4*x3 - 5/8*x1^3*x2^2 + 5/16*x1^3*x3^2 + 5/4*x1^2*x2^2*x3 \
             + 5/32*x1^2*x3^3 - 5/8*x1*x2^2*x3^2 + 5/16*x1*x3^4 - 5/4*x2^4*x3 - 1/64*x3^5",
        );
        assert_eq!(gamma, expect);
        // the span description of the same line gives the same result
        let span = LineSelector::Span(vec![
            vec![rat(0), rat(0), rat(1), rat(0), rat(0)],
            vec![rat(0), rat(0), rat(0), rat(1), rat(0)],
        ]);
        let h2 = normalize_line_coords(&f, &span).unwrap();
        assert_eq!(h2, h);
    }

    #[test]
    fn normalize_errors() {
        let fermat = p("x1^3 + x2^3 + x3^3 + x4^3 + x5^3");
        assert_eq!(
            normalize_line_coords(&fermat, &LineSelector::VanishingTriple([1, 2, 3])).unwrap_err(),
            "line not on cubic"
        );
        // dependent coefficient forms: coeff(x4^2) = coeff(x5^2) = x1
        let dep = p("x1^3 + x4^2*x1 + x5^2*x1");
        assert_eq!(
            normalize_line_coords(&dep, &LineSelector::VanishingTriple([1, 2, 3])).unwrap_err(),
            "degenerate line"
        );
        assert!(normalize_line_coords(&fermat, &LineSelector::VanishingTriple([1, 1, 2])).is_err());
        let bad_span = LineSelector::Span(vec![
            vec![rat(1), rat(0), rat(0), rat(0), rat(0)],
            vec![rat(2), rat(0), rat(0), rat(0), rat(0)],
        ]);
        assert_eq!(
            normalize_line_coords(&fermat, &bad_span).unwrap_err(),
            "degenerate line"
        );
    }
}
