//! Multivariate polynomial GCD over the rationals.
//!
//! Heuristic evaluation/interpolation GCD first, then recursive
//! content/primitive-part decomposition with a primitive pseudo-remainder
//! sequence in the main variable. The result is monic.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::poly::{Poly, Rational};

pub fn gcd(a: &Poly, b: &Poly) -> Poly {
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    if a.is_constant() || b.is_constant() {
        return Poly::one(a.nvars());
    }
    if a.len() == 1 {
        return monomial_gcd(a, b);
    }
    if b.len() == 1 {
        return monomial_gcd(b, a);
    }
    if a == b {
        return a.monic();
    }
    let (small, large) = if a.len() <= b.len() { (a, b) } else { (b, a) };
    if large.div_exact(small).is_some() {
        return small.monic();
    }

    // Pull out the monomial part first; it is cheap and common.
    let ma = a.min_exponents();
    let mb = b.min_exponents();
    if ma.iter().chain(&mb).any(|&e| e > 0) {
        let common: Vec<u32> = ma.iter().zip(&mb).map(|(x, y)| *x.min(y)).collect();
        let one = Rational::one();
        let a_red = a.div_exact(&Poly::monomial(ma.clone(), one.clone())).unwrap();
        let b_red = b.div_exact(&Poly::monomial(mb.clone(), one.clone())).unwrap();
        return gcd(&a_red, &b_red).mul_monomial(&common, &one);
    }

    if let Some(h) = heuristic_gcd(&a.integer_primitive(), &b.integer_primitive()) {
        return h.monic();
    }

    let nvars = a.nvars();
    let var = (0..nvars)
        .find(|&v| a.contains_var(v) || b.contains_var(v))
        .expect("non-constant polynomial has a variable");
    match (a.contains_var(var), b.contains_var(var)) {
        (true, false) => gcd(&content_in(a, var), b),
        (false, true) => gcd(a, &content_in(b, var)),
        _ => {
            let ca = content_in(a, var);
            let cb = content_in(b, var);
            let pa = a.div_exact(&ca).expect("content divides");
            let pb = b.div_exact(&cb).expect("content divides");
            let c = gcd(&ca, &cb);
            let g = primitive_prs(pa, pb, var);
            (&c * &g).monic()
        }
    }
}

fn integer_content(p: &Poly) -> BigInt {
    p.terms().fold(BigInt::zero(), |g, (_, c)| g.gcd(c.numer()))
}

fn int(n: BigInt) -> Rational {
    Rational::from_integer(n)
}

/// Symmetric ξ-adic expansion of `h` in powers of `var`.
fn interpolate(mut h: Poly, var: usize, xi: &BigInt) -> Poly {
    let nvars = h.nvars();
    let half = xi / 2;
    let xi_q = int(xi.clone());
    let mut digits = Vec::new();
    while !h.is_zero() {
        let mut digit = Poly::zero(nvars);
        for (m, c) in h.terms() {
            let mut r = c.numer().mod_floor(xi);
            if r > half {
                r -= xi;
            }
            if !r.is_zero() {
                digit = &digit + &Poly::monomial(m.clone(), int(r));
            }
        }
        h = (&h - &digit).scale(&xi_q.recip());
        digits.push(digit);
    }
    Poly::from_coefficients_in(nvars, var, &digits)
}

/// gcd over ℤ of polynomials with integer coefficients, by evaluating the
/// first variable at a large integer and lifting the recursive result. Every
/// candidate is verified by exact division; `None` when no candidate passes.
fn heuristic_gcd(f: &Poly, g: &Poly) -> Option<Poly> {
    let nvars = f.nvars();
    let Some(var) = (0..nvars).find(|&v| f.contains_var(v) || g.contains_var(v)) else {
        return Some(Poly::constant(nvars, int(integer_content(f).gcd(&integer_content(g)))));
    };
    let (fc, gc) = (integer_content(f), integer_content(g));
    let content = int(fc.gcd(&gc));
    if f.is_constant() || g.is_constant() {
        return Some(Poly::constant(nvars, content));
    }
    let f = f.scale(&int(fc).recip());
    let g = g.scale(&int(gc).recip());
    let bound = f.max_norm().min(g.max_norm()).to_integer();
    let mut xi: BigInt = bound * 2 + 29;
    for _ in 0..6 {
        let point = int(xi.clone());
        let (ff, gg) = (f.substitute(var, &point), g.substitute(var, &point));
        if !ff.is_zero() && !gg.is_zero() {
            if let Some(h) = heuristic_gcd(&ff, &gg) {
                let candidate = interpolate(h, var, &xi);
                if !candidate.is_zero() {
                    let candidate = candidate.scale(&int(integer_content(&candidate)).recip());
                    if f.div_exact(&candidate).is_some() && g.div_exact(&candidate).is_some() {
                        return Some(candidate.scale(&content));
                    }
                }
            }
        }
        xi = &xi * 73794 * xi.sqrt().sqrt() / 27011;
    }
    None
}

/// gcd of `x^e` style monomial `m` with an arbitrary polynomial.
fn monomial_gcd(m: &Poly, p: &Poly) -> Poly {
    let (exps, _) = m.leading().expect("non-zero monomial");
    let mins = p.min_exponents();
    let common: Vec<u32> = exps.iter().zip(&mins).map(|(a, b)| *a.min(b)).collect();
    Poly::monomial(common, Rational::one())
}

/// gcd of the coefficients of `p` viewed as a polynomial in `var`.
pub fn content_in(p: &Poly, var: usize) -> Poly {
    let mut coeffs: Vec<Poly> = p
        .coefficients_in(var)
        .into_iter()
        .filter(|c| !c.is_zero())
        .collect();
    coeffs.sort_by_key(|c| c.len());
    let mut acc = Poly::zero(p.nvars());
    for c in &coeffs {
        acc = gcd(&acc, c);
        if acc.is_one() {
            break;
        }
    }
    acc
}

fn primitive_part_in(p: &Poly, var: usize) -> Poly {
    let c = content_in(p, var);
    p.div_exact(&c).expect("content divides").integer_primitive()
}

/// Pseudo-remainder of `a` by `b` in `var`.
fn pseudo_rem(a: &Poly, b: &Poly, var: usize) -> Poly {
    let db = b.degree_in(var);
    let lc = b.leading_coeff_in(var);
    let nvars = a.nvars();
    let mut r = a.clone();
    while !r.is_zero() && r.contains_var(var) && r.degree_in(var) >= db {
        let dr = r.degree_in(var);
        let lr = r.leading_coeff_in(var);
        let mut shift = vec![0; nvars];
        shift[var] = dr - db;
        let t = (&lr * b).mul_monomial(&shift, &Rational::one());
        r = &(&lc * &r) - &t;
    }
    if db == 0 {
        Poly::zero(nvars)
    } else {
        r
    }
}

/// gcd of two polynomials that are primitive with respect to `var`.
fn primitive_prs(a: Poly, b: Poly, var: usize) -> Poly {
    let (mut a, mut b) = if a.degree_in(var) >= b.degree_in(var) {
        (a, b)
    } else {
        (b, a)
    };
    loop {
        let r = pseudo_rem(&a, &b, var);
        if r.is_zero() {
            return b.integer_primitive();
        }
        if !r.contains_var(var) {
            return Poly::one(a.nvars());
        }
        a = b;
        b = primitive_part_in(&r, var);
    }
}
