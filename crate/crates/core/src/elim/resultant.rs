//! Sylvester resultants and exact determinants of polynomial matrices.

use crate::error::{Error, Result};
use crate::poly::MultiPoly;
use crate::scalar::Field;

/// Square matrix of polynomials, row major.
pub type PolyMatrix<F> = Vec<Vec<MultiPoly<F>>>;

/// Sylvester matrix of `f` and `g` viewed as univariate in variable `v`.
pub fn sylvester_matrix<F: Field>(f: &MultiPoly<F>, g: &MultiPoly<F>, v: usize) -> Result<PolyMatrix<F>> {
    crate::poly::same_ring(f.ring(), g.ring())?;
    let (m, n) = (f.degree_in(v) as usize, g.degree_in(v) as usize);
    if m == 0 || n == 0 {
        return Err(Error::Structural(format!(
            "resultant needs positive degree in `{}`",
            f.ring().vars()[v]
        )));
    }
    let fc = f.coefficients_in(v);
    let gc = g.coefficients_in(v);
    let zero = MultiPoly::zero(f.ring());
    let size = m + n;
    let mut rows = vec![vec![zero; size]; size];
    for (i, row) in rows.iter_mut().enumerate().take(n) {
        for k in 0..=m {
            row[i + k] = fc[m - k].clone();
        }
    }
    for i in 0..m {
        for k in 0..=n {
            rows[n + i][i + k] = gc[n - k].clone();
        }
    }
    Ok(rows)
}

/// Resultant of `f` and `g` with respect to variable `v`.
pub fn resultant<F: Field>(f: &MultiPoly<F>, g: &MultiPoly<F>, v: usize) -> Result<MultiPoly<F>> {
    det_polymatrix(sylvester_matrix(f, g, v)?)
}

/// Resultant with the variable given by name.
pub fn resultant_named<F: Field>(f: &MultiPoly<F>, g: &MultiPoly<F>, v: &str) -> Result<MultiPoly<F>> {
    let i = f.ring().var_index(v)?;
    resultant(f, g, i)
}

/// Exact determinant: cofactor expansion up to 3×3, fraction-free
/// (Bareiss) elimination with row pivoting beyond.
pub fn det_polymatrix<F: Field>(mut m: PolyMatrix<F>) -> Result<MultiPoly<F>> {
    let n = m.len();
    if m.iter().any(|r| r.len() != n) {
        return Err(Error::Structural("determinant of a non-square matrix".into()));
    }
    if n == 0 {
        return Err(Error::Structural("determinant of an empty matrix".into()));
    }
    for r in &m {
        for e in r {
            crate::poly::same_ring(m[0][0].ring(), e.ring())?;
        }
    }
    match n {
        1 => return Ok(m[0][0].clone()),
        2 => return Ok(&(&m[0][0] * &m[1][1]) - &(&m[0][1] * &m[1][0])),
        3 => {
            let minor = |a: &MultiPoly<F>, b: &MultiPoly<F>, c: &MultiPoly<F>, d: &MultiPoly<F>| &(a * d) - &(b * c);
            let t0 = &m[0][0] * &minor(&m[1][1], &m[1][2], &m[2][1], &m[2][2]);
            let t1 = &m[0][1] * &minor(&m[1][0], &m[1][2], &m[2][0], &m[2][2]);
            let t2 = &m[0][2] * &minor(&m[1][0], &m[1][1], &m[2][0], &m[2][1]);
            return Ok(&(&t0 - &t1) + &t2);
        }
        _ => {}
    }
    let ring = m[0][0].ring().clone();
    let mut negate = false;
    let mut prev = MultiPoly::one(&ring);
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            // smallest nonzero pivot candidate keeps intermediate sizes down
            match (k + 1..n).filter(|&r| !m[r][k].is_zero()).min_by_key(|&r| m[r][k].len()) {
                Some(r) => {
                    m.swap(k, r);
                    negate = !negate;
                }
                None => return Ok(MultiPoly::zero(&ring)),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&m[i][j] * &m[k][k]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = num.exact_div(&prev)?;
            }
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    Ok(if negate { -d } else { d })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{parse_poly, OrderKind, PolyRing};
    use crate::scalar::Rationals;

    fn p(r: &std::sync::Arc<PolyRing<Rationals>>, s: &str) -> MultiPoly<Rationals> {
        parse_poly(r, s).unwrap()
    }

    #[test]
    fn linear_resultant() {
        let r = PolyRing::new(Rationals, &["x", "a", "b"], OrderKind::Lex).unwrap();
        let res = resultant(&p(&r, "x - a"), &p(&r, "x - b"), 0).unwrap();
        assert_eq!(res, p(&r, "a - b"));
        assert!(resultant(&p(&r, "a"), &p(&r, "x"), 0).is_err());
    }

    #[test]
    fn shared_root_gives_zero_and_bareiss_matches_expansion() {
        let r = PolyRing::new(Rationals, &["x", "t"], OrderKind::Lex).unwrap();
        let f = p(&r, "(x - t)*(x^2 + 3*t*x - 1)");
        let g = p(&r, "(x - t)*(2*x^2 - t^2 + 5)");
        assert!(resultant(&f, &g, 0).unwrap().is_zero());
        // resultant of x^2 + t and x^3 - 1 is t^3 + 1
        assert_eq!(resultant(&p(&r, "x^2 + t"), &p(&r, "x^3 - 1"), 0).unwrap(), p(&r, "t^3 + 1"));
    }

    #[test]
    fn small_determinants() {
        let r = PolyRing::new(Rationals, &["x"], OrderKind::Lex).unwrap();
        let id: PolyMatrix<Rationals> = (0..4)
            .map(|i| (0..4).map(|j| MultiPoly::from_i64(&r, (i == j) as i64)).collect())
            .collect();
        assert!(det_polymatrix(id.clone()).unwrap().is_one());
        let mut twice = id.clone();
        twice[2] = twice[1].clone();
        assert!(det_polymatrix(twice).unwrap().is_zero());
        // permutation with a zero leading pivot
        let mut perm = id;
        perm.swap(0, 3);
        assert_eq!(det_polymatrix(perm).unwrap(), MultiPoly::from_i64(&r, -1));
        assert!(det_polymatrix(vec![vec![MultiPoly::one(&r); 2]; 3]).is_err());
    }
}
