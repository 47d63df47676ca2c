//! Multivariate GCD over the rationals via recursive primitive remainder
//! sequences. Results are monic in the graded lexicographic order.

use super::polynomial::Polynomial;

pub fn gcd(a: &Polynomial, b: &Polynomial) -> Polynomial {
    assert_eq!(a.nvars(), b.nvars());
    let n = a.nvars();
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    if a.is_constant() || b.is_constant() {
        return Polynomial::one(n);
    }
    if a.monic() == b.monic() {
        return a.monic();
    }
    if a.div_exact(b).is_some() {
        return b.monic();
    }
    if b.div_exact(a).is_some() {
        return a.monic();
    }

    // A variable present in only one argument cannot occur in the gcd.
    for v in 0..n {
        match (a.uses_var(v), b.uses_var(v)) {
            (true, false) => return gcd(&content_in(a, v), b),
            (false, true) => return gcd(a, &content_in(b, v)),
            _ => {}
        }
    }
    let v = (0..n)
        .rev()
        .find(|&v| a.uses_var(v))
        .expect("nonconstant polynomial uses some variable");

    let (ca, cb) = (content_in(a, v), content_in(b, v));
    let pa = a.div_exact(&ca).expect("content divides");
    let pb = b.div_exact(&cb).expect("content divides");
    let c = gcd(&ca, &cb);

    let (mut r0, mut r1) = if pa.degree_in(v) >= pb.degree_in(v) {
        (pa, pb)
    } else {
        (pb, pa)
    };
    let g = loop {
        let r = pseudo_remainder(&r0, &r1, v);
        if r.is_zero() {
            break primitive_part_in(&r1, v);
        }
        if r.degree_in(v) == 0 {
            break Polynomial::one(n);
        }
        r0 = r1;
        r1 = primitive_part_in(&r, v).monic();
    };
    (&c * &g).monic()
}

/// GCD of the coefficients of `p` viewed as a polynomial in `var`.
pub fn content_in(p: &Polynomial, var: usize) -> Polynomial {
    let mut coeffs = p.coefficients_in(var).into_iter().filter(|c| !c.is_zero());
    let Some(first) = coeffs.next() else {
        return Polynomial::zero(p.nvars());
    };
    let mut g = first.monic();
    for c in coeffs {
        if g.is_constant() {
            break;
        }
        g = gcd(&g, &c);
    }
    g
}

pub fn primitive_part_in(p: &Polynomial, var: usize) -> Polynomial {
    if p.is_zero() {
        return p.clone();
    }
    p.div_exact(&content_in(p, var)).expect("content divides")
}

fn pseudo_remainder(a: &Polynomial, b: &Polynomial, var: usize) -> Polynomial {
    let n = a.nvars();
    let db = b.degree_in(var);
    let lcb = b.coefficients_in(var).pop().expect("nonzero divisor");
    let mut r = a.clone();
    while !r.is_zero() && r.degree_in(var) >= db {
        let dr = r.degree_in(var);
        let lcr = r.coefficients_in(var).pop().unwrap();
        let mut shift = vec![0; n];
        shift[var] = dr - db;
        let sub = (&lcr * b).mul_monomial(&super::polynomial::Monomial(shift));
        r = &(&lcb * &r) - &sub;
        r = r.monic();
    }
    r
}

pub fn lcm(a: &Polynomial, b: &Polynomial) -> Polynomial {
    if a.is_zero() || b.is_zero() {
        return Polynomial::zero(a.nvars());
    }
    let g = gcd(a, b);
    (a.div_exact(&g).expect("gcd divides") * b.clone()).monic()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::rat;

    fn p(s: &str, n: usize) -> Polynomial {
        Polynomial::parse(s, n).unwrap()
    }

    #[test]
    fn common_linear_factor() {
        let f = p("Y1 - Y2", 3);
        let a = &f * &p("Y1*Y3 + 2", 3);
        let b = &f * &p("Y2^2 - Y3", 3);
        assert_eq!(gcd(&a, &b), f.monic());
    }

    #[test]
    fn coprime_inputs() {
        assert_eq!(gcd(&p("Y1 + 1", 2), &p("Y2 + 1", 2)), Polynomial::one(2));
        assert_eq!(gcd(&p("Y1^2 - Y2^2", 2), &p("Y1^2 + Y2^2", 2)), Polynomial::one(2));
    }

    #[test]
    fn gcd_with_content_and_powers() {
        let f = p("Y1 - Y3", 3);
        let g = p("Y2 + Y3 + 1", 3);
        let a = (&f.pow(2) * &g).scale(&rat(6));
        let b = &(&f * &g.pow(2)) * &p("Y1 + 7", 3);
        assert_eq!(gcd(&a, &b), (&f * &g).monic());
        assert_eq!(lcm(&f, &g), (&f * &g).monic());
    }
}
