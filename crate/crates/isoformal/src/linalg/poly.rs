//! Sparse multivariate polynomials with rational coefficients.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use super::matrix::QMatrix;
use super::rational::Rational;

pub type Exponent = Vec<u16>;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MultiPoly {
    nvars: usize,
    terms: BTreeMap<Exponent, Rational>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Inhomogeneous;

/// All exponent vectors of the given total degree, in graded lexicographic
/// order: the first variable's exponent descends fastest-first, so for two
/// variables and degree 2 this is `x², xy, y²`.
pub fn monomial_basis(nvars: usize, degree: usize) -> Vec<Exponent> {
    fn go(prefix: &mut Exponent, left: usize, remaining: usize, out: &mut Vec<Exponent>) {
        if left == 1 {
            prefix.push(remaining as u16);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for e in (0..=remaining).rev() {
            prefix.push(e as u16);
            go(prefix, left - 1, remaining - e, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if nvars == 0 {
        if degree == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    go(&mut Vec::with_capacity(nvars), nvars, degree, &mut out);
    out
}

/// Maps each exponent of a basis to its position.
pub fn monomial_index(basis: &[Exponent]) -> HashMap<Exponent, usize> {
    basis.iter().enumerate().map(|(i, e)| (e.clone(), i)).collect()
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

impl MultiPoly {
    pub fn zero(nvars: usize) -> Self {
        MultiPoly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        Self::monomial(nvars, vec![0; nvars], c)
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::monomial(nvars, e, Rational::one())
    }

    pub fn monomial(nvars: usize, exp: Exponent, c: Rational) -> Self {
        assert_eq!(exp.len(), nvars);
        let mut p = Self::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(exp, c);
        }
        p
    }

    /// The linear form `Σ cᵢ xᵢ`.
    pub fn linear(coeffs: &[Rational]) -> Self {
        let n = coeffs.len();
        let mut p = Self::zero(n);
        for (i, c) in coeffs.iter().enumerate() {
            if !c.is_zero() {
                let mut e = vec![0; n];
                e[i] = 1;
                p.terms.insert(e, c.clone());
            }
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exp: &[u16]) -> Rational {
        self.terms.get(exp).cloned().unwrap_or_else(Rational::zero)
    }

    /// Common total degree of all terms; `Ok(None)` for the zero polynomial.
    pub fn homogeneous_degree(&self) -> Result<Option<usize>, Inhomogeneous> {
        let mut deg = None;
        for e in self.terms.keys() {
            let d = e.iter().map(|&x| x as usize).sum::<usize>();
            match deg {
                None => deg = Some(d),
                Some(d0) if d0 != d => return Err(Inhomogeneous),
                _ => {}
            }
        }
        Ok(deg)
    }

    fn add_term(&mut self, exp: Exponent, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(exp) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += &c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &MultiPoly) -> MultiPoly {
        assert_eq!(self.nvars, other.nvars);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &MultiPoly) -> MultiPoly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> MultiPoly {
        self.scale(&Rational::from_int(-1))
    }

    pub fn scale(&self, c: &Rational) -> MultiPoly {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        MultiPoly { nvars: self.nvars, terms: self.terms.iter().map(|(e, x)| (e.clone(), x * c)).collect() }
    }

    pub fn mul(&self, other: &MultiPoly) -> MultiPoly {
        assert_eq!(self.nvars, other.nvars);
        let mut out = Self::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e: Exponent = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(e, ca * cb);
            }
        }
        out
    }

    pub fn pow(&self, k: usize) -> MultiPoly {
        let mut out = Self::constant(self.nvars, Rational::one());
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    pub fn derivative(&self, i: usize) -> MultiPoly {
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            if e[i] == 0 {
                continue;
            }
            let mut e2 = e.clone();
            e2[i] -= 1;
            out.add_term(e2, c * &Rational::from_int(e[i] as i64));
        }
        out
    }

    pub fn eval(&self, x: &[Rational]) -> Rational {
        assert_eq!(x.len(), self.nvars);
        let mut acc = Rational::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (xi, &k) in x.iter().zip(e) {
                if k > 0 {
                    t *= &xi.pow(k as u32);
                }
            }
            acc += &t;
        }
        acc
    }

    /// Composes with the linear map `y ↦ L·y`: variable `xᵢ` becomes
    /// `Σⱼ L[i][j] yⱼ`. `L` has `nvars` rows; the result has `L.cols()` variables.
    pub fn substitute_linear(&self, l: &QMatrix) -> MultiPoly {
        assert_eq!(l.rows(), self.nvars, "substitution matrix has wrong row count");
        let k = l.cols();
        let forms: Vec<MultiPoly> = (0..self.nvars).map(|i| MultiPoly::linear(l.row(i))).collect();
        let mut powers: Vec<Vec<MultiPoly>> = forms.iter().map(|f| vec![MultiPoly::constant(k, Rational::one()), f.clone()]).collect();
        let mut out = Self::zero(k);
        for (e, c) in &self.terms {
            let mut t = MultiPoly::constant(k, c.clone());
            for (i, &ei) in e.iter().enumerate() {
                let ei = ei as usize;
                while powers[i].len() <= ei {
                    let next = powers[i].last().unwrap().mul(&forms[i]);
                    powers[i].push(next);
                }
                if ei > 0 {
                    t = t.mul(&powers[i][ei]);
                }
                if t.is_zero() {
                    break;
                }
            }
            for (e2, c2) in t.terms {
                out.add_term(e2, c2);
            }
        }
        out
    }

    /// Coefficient vector in a fixed monomial basis; `None` if a term lies outside it.
    pub fn coords(&self, index: &HashMap<Exponent, usize>, len: usize) -> Option<Vec<Rational>> {
        let mut v = vec![Rational::zero(); len];
        for (e, c) in &self.terms {
            v[*index.get(e)?] = c.clone();
        }
        Some(v)
    }

    pub fn from_coords(nvars: usize, basis: &[Exponent], coords: &[Rational]) -> MultiPoly {
        let mut p = Self::zero(nvars);
        for (e, c) in basis.iter().zip(coords) {
            p.add_term(e.clone(), c.clone());
        }
        p
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        // Highest graded-lex term first.
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(i, &k)| if k == 1 { format!("x{}", i + 1) } else { format!("x{}^{}", i + 1, k) })
                .collect();
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            match (mono.is_empty(), a.is_one()) {
                (true, _) => write!(f, "{a}")?,
                (false, true) => write!(f, "{}", mono.join("*"))?,
                (false, false) => write!(f, "{a}*{}", mono.join("*"))?,
            }
        }
        Ok(())
    }
}

/// Elementary symmetric polynomial `e_k` in the given polynomials.
pub fn elementary_symmetric(xs: &[MultiPoly], k: usize, nvars: usize) -> MultiPoly {
    // e_k via the recurrence over prefixes: E[j] holds e_j of the prefix.
    let mut e = vec![MultiPoly::zero(nvars); k + 1];
    e[0] = MultiPoly::constant(nvars, Rational::one());
    for x in xs {
        for j in (1..=k).rev() {
            e[j] = e[j].add(&e[j - 1].mul(x));
        }
    }
    e.swap_remove(k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::matrix::int_vec;
    use proptest::prelude::*;

    fn q(n: i64) -> Rational {
        Rational::from_int(n)
    }

    #[test]
    fn monomial_basis_examples() {
        assert_eq!(monomial_basis(2, 2), vec![vec![2, 0], vec![1, 1], vec![0, 2]]);
        assert_eq!(monomial_basis(3, 0), vec![vec![0, 0, 0]]);
        assert_eq!(monomial_basis(4, 3).len(), 20);
        for n in 1..5 {
            for d in 0..6 {
                assert_eq!(monomial_basis(n, d).len(), binomial(n + d - 1, d));
            }
        }
    }

    #[test]
    fn substitution_examples() {
        // s = {(a, -a)}
        let l = QMatrix::from_columns(2, &[int_vec(&[1, -1])]);
        let x1 = MultiPoly::var(2, 0);
        let x2 = MultiPoly::var(2, 1);
        assert!(x1.add(&x2).substitute_linear(&l).is_zero());
        assert_eq!(x1.pow(2).substitute_linear(&l), MultiPoly::monomial(1, vec![2], q(1)));

        let xs: Vec<_> = (0..3).map(|i| MultiPoly::var(3, i)).collect();
        let e2 = elementary_symmetric(&xs, 2, 3);
        let line = QMatrix::from_columns(3, &[int_vec(&[1, 0, -1])]);
        assert_eq!(e2.substitute_linear(&line), MultiPoly::monomial(1, vec![2], q(-1)));
    }

    #[test]
    fn homogeneity() {
        let x = MultiPoly::var(2, 0);
        let y = MultiPoly::var(2, 1);
        assert_eq!(x.mul(&y).homogeneous_degree(), Ok(Some(2)));
        assert_eq!(x.add(&x.mul(&y)).homogeneous_degree(), Err(Inhomogeneous));
        assert_eq!(MultiPoly::zero(2).homogeneous_degree(), Ok(None));
    }

    #[test]
    fn derivative_and_eval() {
        let x = MultiPoly::var(2, 0);
        let y = MultiPoly::var(2, 1);
        let f = x.pow(3).mul(&y);
        assert_eq!(f.derivative(0), x.pow(2).mul(&y).scale(&q(3)));
        assert_eq!(f.eval(&[q(2), q(5)]), q(40));
    }

    fn poly(nvars: usize) -> impl Strategy<Value = MultiPoly> {
        proptest::collection::vec((proptest::collection::vec(0u16..3, nvars), -4i64..5), 0..5).prop_map(move |ts| {
            ts.into_iter().fold(MultiPoly::zero(nvars), |acc, (e, c)| acc.add(&MultiPoly::monomial(nvars, e, q(c))))
        })
    }

    fn homogeneous(nvars: usize, deg: usize) -> impl Strategy<Value = MultiPoly> {
        let basis = monomial_basis(nvars, deg);
        proptest::collection::vec(-3i64..4, basis.len())
            .prop_map(move |cs| MultiPoly::from_coords(nvars, &basis, &int_vec(&cs)))
    }

    fn matrix(r: usize, c: usize) -> impl Strategy<Value = QMatrix> {
        proptest::collection::vec(-2i64..3, r * c)
            .prop_map(move |xs| QMatrix::from_rows(xs.chunks(c).map(int_vec).collect()))
    }

    proptest! {
        #[test]
        fn substitution_is_ring_hom(f in poly(3), g in poly(3), l in matrix(3, 2)) {
            prop_assert_eq!(f.mul(&g).substitute_linear(&l), f.substitute_linear(&l).mul(&g.substitute_linear(&l)));
            prop_assert_eq!(f.add(&g).substitute_linear(&l), f.substitute_linear(&l).add(&g.substitute_linear(&l)));
        }

        #[test]
        fn add_sub_roundtrip(f in poly(3), g in poly(3)) {
            prop_assert_eq!(f.add(&g).sub(&g), f);
        }

        #[test]
        fn degree_additive(f in homogeneous(3, 2), g in homogeneous(3, 3)) {
            prop_assume!(!f.is_zero() && !g.is_zero());
            prop_assert_eq!(f.mul(&g).homogeneous_degree(), Ok(Some(5)));
        }

        #[test]
        fn substitution_preserves_degree(f in homogeneous(3, 3), l in matrix(3, 2)) {
            let h = f.substitute_linear(&l);
            prop_assert!(h.is_zero() || h.homogeneous_degree() == Ok(Some(3)));
        }

        #[test]
        fn coords_roundtrip(f in homogeneous(3, 2)) {
            let basis = monomial_basis(3, 2);
            let idx = monomial_index(&basis);
            let c = f.coords(&idx, basis.len()).unwrap();
            prop_assert_eq!(MultiPoly::from_coords(3, &basis, &c), f);
        }
    }
}
