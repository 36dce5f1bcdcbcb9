use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::mpoly::{MPoly, Monomial};

/// Exact `r`-th root of `p`, if one exists.
///
/// The root is built term by term from the top: once the leading part `q` is
/// known, the leading term of `p - q^r` equals `r * lt(q)^(r-1) * t` for the
/// next term `t`. By Gauss's lemma a root over the rationals of an integer
/// polynomial can be scaled to integer coefficients, so every quotient here
/// must be exact over the integers; any inexact step means there is no root.
/// For even `r` the root with positive leading coefficient is returned.
pub fn nth_root_poly(p: &MPoly, r: u32) -> Option<MPoly> {
    if r == 0 {
        return None;
    }
    if r == 1 || p.is_zero() {
        return Some(p.clone());
    }
    let (lead_m, lead_c) = p.leading()?;
    let (low_m, low_c) = p.trailing()?;
    let root_m = monomial_root(lead_m, r)?;
    let low_root = monomial_root(low_m, r)?;
    let root_c = integer_root(lead_c, r)?;
    integer_root(low_c, r)?;

    let vars = p.vars().iter().map(String::as_str).collect::<Vec<_>>();
    let term = |c: BigInt, m: &Monomial| -> MPoly {
        MPoly::from_terms([(
            c,
            vars.iter()
                .zip(m.exponents())
                .filter(|(_, &e)| e > 0)
                .map(|(v, &e)| (*v, e))
                .collect::<Vec<_>>(),
        )])
    };

    let head_m = Monomial::from_exponents(
        root_m.exponents().iter().map(|&e| e * (r - 1)).collect(),
    );
    let head_c = BigInt::from(r) * num_traits::pow(root_c.clone(), (r - 1) as usize);

    let mut q = term(root_c, &root_m);
    // Terms strictly decrease in a well-order bounded below by `low_root`,
    // so the loop terminates.
    loop {
        let rem = p.sub(&q.pow(r).ok()?);
        let Some((m, c)) = rem.leading() else {
            return Some(q.trimmed());
        };
        let tm = divide_monomial(m, &head_m)?;
        if tm < low_root {
            return None;
        }
        let (tc, rest) = c.div_rem(&head_c);
        if !rest.is_zero() {
            return None;
        }
        q = q.add(&term(tc, &tm));
    }
}

fn monomial_root(m: &Monomial, r: u32) -> Option<Monomial> {
    let exps = m
        .exponents()
        .iter()
        .map(|&e| (e % r == 0).then_some(e / r))
        .collect::<Option<Vec<_>>>()?;
    Some(Monomial::from_exponents(exps))
}

fn divide_monomial(m: &Monomial, d: &Monomial) -> Option<Monomial> {
    let exps = m
        .exponents()
        .iter()
        .zip(d.exponents())
        .map(|(a, b)| a.checked_sub(*b))
        .collect::<Option<Vec<_>>>()?;
    Some(Monomial::from_exponents(exps))
}

fn integer_root(c: &BigInt, r: u32) -> Option<BigInt> {
    if c.is_negative() && r.is_multiple_of(2) {
        return None;
    }
    let root = c.abs().nth_root(r);
    if num_traits::pow(root.clone(), r as usize) != c.abs() {
        return None;
    }
    Some(if c.is_negative() { -root } else { root })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_poly;

    #[test]
    fn square_root_of_square() {
        let p = parse_poly("(x^2+a^2)^2").unwrap();
        assert_eq!(nth_root_poly(&p, 2).unwrap(), parse_poly("x^2+a^2").unwrap());
    }

    #[test]
    fn irreducible_has_no_root() {
        assert!(nth_root_poly(&parse_poly("x^2+a^2").unwrap(), 2).is_none());
        assert!(nth_root_poly(&parse_poly("4*x^2+4*x+2").unwrap(), 2).is_none());
        assert!(nth_root_poly(&parse_poly("-x^2").unwrap(), 2).is_none());
    }

    #[test]
    fn odd_roots_keep_sign() {
        let p = parse_poly("(2*a - 3*b + x)^3").unwrap();
        assert_eq!(nth_root_poly(&p, 3).unwrap(), parse_poly("2*a - 3*b + x").unwrap());
        let n = parse_poly("-(a+1)^3").unwrap();
        assert_eq!(nth_root_poly(&n, 3).unwrap(), parse_poly("-a-1").unwrap());
    }

    #[test]
    fn higher_powers() {
        let base = parse_poly("x^2+a1^2+a2^2+a3^2").unwrap();
        let p = base.pow(8).unwrap();
        assert_eq!(nth_root_poly(&p, 8).unwrap(), base);
        assert_eq!(nth_root_poly(&p, 4).unwrap(), base.pow(2).unwrap());
        assert!(nth_root_poly(&p, 3).is_none());
        assert_eq!(nth_root_poly(&p, 1).unwrap(), p);
        assert!(nth_root_poly(&p, 0).is_none());
    }
}
