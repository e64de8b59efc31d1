use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::kernel::{Matrix, Rational, Scalar};

/// Characteristic polynomial `det(t - M)` by Faddeev–LeVerrier, lowest degree first.
pub fn char_poly(m: &Matrix) -> Vec<Scalar> {
    let n = m.rows();
    let mut coeffs = vec![Scalar::zero(); n + 1];
    coeffs[n] = Scalar::one();
    let mut mk = Matrix::zeros(n, n);
    for k in 1..=n {
        // M_k = M (M_{k-1} + c_{n-k+1} I)
        let mut prev = mk.clone();
        for i in 0..n {
            let v = prev.get(i, i) + &coeffs[n - k + 1];
            prev.set(i, i, v);
        }
        mk = m.mul(&prev);
        let mut tr = Scalar::zero();
        for i in 0..n {
            tr += mk.get(i, i);
        }
        coeffs[n - k] = -(&tr / &Scalar::int(k as i64));
    }
    coeffs
}

fn divisors(n: &BigInt) -> Option<Vec<u64>> {
    let n = n.abs().to_u64()?;
    if n == 0 {
        return Some(vec![]);
    }
    let mut out = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            if d * d != n {
                out.push(n / d);
            }
        }
        d += 1;
        if d > 2_000_000 {
            return None;
        }
    }
    Some(out)
}

fn eval(p: &[Rational], x: &Rational) -> Rational {
    p.iter().rev().fold(Rational::zero(), |acc, c| acc * x + c)
}

fn deflate(p: &[Rational], r: &Rational) -> Vec<Rational> {
    // synthetic division by (t - r)
    let n = p.len() - 1;
    let mut q = vec![Rational::zero(); n];
    let mut carry = Rational::zero();
    for k in (1..=n).rev() {
        carry = &p[k] + &carry * r;
        q[k - 1] = carry.clone();
    }
    q
}

/// Rational roots with multiplicities of a polynomial with real rational
/// coefficients, `None` when the coefficients are not real or too large to factor.
pub fn rational_roots(p: &[Scalar]) -> Option<Vec<(Rational, usize)>> {
    if p.iter().any(|c| !c.is_real()) {
        return None;
    }
    let mut poly: Vec<Rational> = p.iter().map(|c| c.re().clone()).collect();
    while poly.len() > 1 && poly.last().is_some_and(Zero::is_zero) {
        poly.pop();
    }
    let mut roots: Vec<(Rational, usize)> = Vec::new();
    let push =
        |r: Rational, roots: &mut Vec<(Rational, usize)>| match roots.iter_mut().find(|x| x.0 == r)
        {
            Some(x) => x.1 += 1,
            None => roots.push((r, 1)),
        };
    while poly.len() > 1 && poly[0].is_zero() {
        poly.remove(0);
        push(Rational::zero(), &mut roots);
    }
    loop {
        if poly.len() <= 1 {
            break;
        }
        let lcm = poly.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = poly
            .iter()
            .map(|c| (c * Rational::from_integer(lcm.clone())).to_integer())
            .collect();
        let ps = divisors(&ints[0])?;
        let qs = divisors(ints.last().expect("nonconstant"))?;
        let mut found = None;
        'search: for &a in &ps {
            for &b in &qs {
                for s in [1i64, -1] {
                    let r = Rational::new(BigInt::from(a) * s, BigInt::from(b));
                    if eval(&poly, &r).is_zero() {
                        found = Some(r);
                        break 'search;
                    }
                }
            }
        }
        match found {
            Some(r) => {
                poly = deflate(&poly, &r);
                push(r, &mut roots);
            }
            None => break,
        }
    }
    roots.sort_by(|a, b| a.0.cmp(&b.0));
    Some(roots)
}

/// Spectral idempotents `Π_{μ ≠ λ} (M - μ)/(λ - μ)` of a matrix with distinct
/// rational eigenvalues; `None` when the spectrum is not split and simple.
pub fn lagrange_projections(m: &Matrix) -> Option<Vec<(Rational, Matrix)>> {
    let n = m.rows();
    let roots = rational_roots(&char_poly(m))?;
    if roots.len() != n || roots.iter().any(|r| r.1 != 1) {
        return None;
    }
    Some(spectral_projections(
        m,
        &roots.iter().map(|r| r.0.clone()).collect::<Vec<_>>(),
    ))
}

/// Projections onto the eigenspaces of a diagonalizable matrix whose distinct
/// eigenvalues are `eigs`.
pub fn spectral_projections(m: &Matrix, eigs: &[Rational]) -> Vec<(Rational, Matrix)> {
    let n = m.rows();
    eigs.iter()
        .map(|l| {
            let mut p = Matrix::identity(n);
            for mu in eigs {
                if mu == l {
                    continue;
                }
                let mut f = m.clone();
                for i in 0..n {
                    let v = f.get(i, i) - &Scalar::real(mu.clone());
                    f.set(i, i, v);
                }
                let inv = Scalar::real(l - mu).inv().expect("distinct eigenvalues");
                let f = Matrix::from_fn(n, n, |r, c| f.get(r, c) * &inv);
                p = p.mul(&f);
            }
            (l.clone(), p)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::rat;

    #[test]
    fn char_poly_of_diagonal() {
        let m = Matrix::diagonal(&[Scalar::int(1), Scalar::int(2), Scalar::frac(1, 3)]);
        let roots = rational_roots(&char_poly(&m)).unwrap();
        assert_eq!(roots, vec![(rat(1, 3), 1), (rat(1, 1), 1), (rat(2, 1), 1)]);
    }

    #[test]
    fn repeated_and_missing_roots() {
        let m = Matrix::from_rows(vec![
            vec![Scalar::int(0), Scalar::int(1)],
            vec![Scalar::int(0), Scalar::int(0)],
        ])
        .unwrap();
        assert_eq!(
            rational_roots(&char_poly(&m)).unwrap(),
            vec![(rat(0, 1), 2)]
        );
        assert!(lagrange_projections(&m).is_none());
        let rot = Matrix::from_rows(vec![
            vec![Scalar::int(0), Scalar::int(-2)],
            vec![Scalar::int(1), Scalar::int(0)],
        ])
        .unwrap();
        assert!(rational_roots(&char_poly(&rot)).unwrap().is_empty());
    }

    #[test]
    fn projections_are_idempotent() {
        let m = Matrix::from_rows(vec![
            vec![Scalar::int(2), Scalar::int(1)],
            vec![Scalar::int(0), Scalar::int(5)],
        ])
        .unwrap();
        let ps = lagrange_projections(&m).unwrap();
        assert_eq!(ps.len(), 2);
        for (_, p) in &ps {
            assert_eq!(p.mul(p), *p);
        }
        let sum = Matrix::from_fn(2, 2, |r, c| ps[0].1.get(r, c) + ps[1].1.get(r, c));
        assert_eq!(sum, Matrix::identity(2));
    }
}
