//! Basic invariants of Weyl groups on the ambient coordinates, and generic
//! basic invariants of small reflection groups found by Reynolds averaging
//! guided by the Molien series.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::linalg::{elementary_symmetric, monomial_basis, monomial_index, EchelonBasis, Exponent, MultiPoly, QMatrix, Rational};
use crate::roots::{factor_degrees, RootSystem, SimpleType};

#[derive(Debug, Clone)]
pub struct InvariantSet {
    pub generators: Vec<MultiPoly>,
    pub degrees: Vec<usize>,
}

fn block_vars(n: usize, offset: usize, width: usize) -> Vec<MultiPoly> {
    (offset..offset + width).map(|i| MultiPoly::var(n, i)).collect()
}

/// Checks invariance under the simple reflections and algebraic independence
/// via the Jacobian on t at seeded random points.
fn validate(rs: &RootSystem, set: &InvariantSet) -> Result<()> {
    for r in rs.simple_reflections() {
        for f in &set.generators {
            if f.substitute_linear(&r) != *f {
                return Err(Error::Internal(format!("generator of degree {:?} is not invariant", f.homogeneous_degree())));
            }
        }
    }
    let n = rs.ambient_dim;
    let t = &rs.t_basis;
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let partials: Vec<Vec<MultiPoly>> = set.generators.iter().map(|f| (0..n).map(|j| f.derivative(j)).collect()).collect();
    for _ in 0..8 {
        let c: Vec<Rational> = (0..t.cols()).map(|_| Rational::from_int(rng.gen_range(-9..=9))).collect();
        let x = t.mul_vec(&c);
        let jac = QMatrix::from_rows(partials.iter().map(|row| row.iter().map(|p| p.eval(&x)).collect()).collect());
        if !jac.matmul(t).determinant().is_zero() {
            return Ok(());
        }
    }
    Err(Error::Internal("basic invariants failed the Jacobian test".into()))
}

fn build_invariants(rs: &RootSystem) -> Result<InvariantSet> {
    let n = rs.ambient_dim;
    let mut generators = Vec::new();
    let mut degrees = Vec::new();
    for b in &rs.blocks {
        let f = b.factor;
        let xs = block_vars(n, b.offset, b.width);
        let squares: Vec<MultiPoly> = xs.iter().map(|x| x.mul(x)).collect();
        let mut push = |p: MultiPoly, d: usize| {
            generators.push(p);
            degrees.push(d);
        };
        match f.ty {
            SimpleType::A if f.rank == 1 => push(squares[0].clone(), 2),
            SimpleType::A => {
                for k in 2..=f.rank + 1 {
                    push(elementary_symmetric(&xs, k, n), k);
                }
            }
            SimpleType::B | SimpleType::C => {
                for k in 1..=f.rank {
                    push(elementary_symmetric(&squares, k, n), 2 * k);
                }
            }
            SimpleType::D => {
                for k in 1..f.rank {
                    push(elementary_symmetric(&squares, k, n), 2 * k);
                }
                let pf = xs.iter().fold(MultiPoly::constant(n, Rational::one()), |acc, x| acc.mul(x));
                push(pf, f.rank);
            }
            SimpleType::G | SimpleType::F => {
                let block_pos: Vec<MultiPoly> = rs
                    .positive_roots()
                    .iter()
                    .filter(|beta| beta[b.offset..b.offset + b.width].iter().any(|x| !x.is_zero()))
                    .map(|beta| MultiPoly::linear(beta))
                    .collect();
                for d in factor_degrees(f) {
                    let p = block_pos.iter().fold(MultiPoly::zero(n), |acc, l| acc.add(&l.pow(d)));
                    push(p, d);
                }
            }
            SimpleType::E => return Err(Error::Unsupported(format!("{} has an E-type factor", rs.spec))),
        }
    }
    for &c in &rs.central_coords {
        generators.push(MultiPoly::var(n, c));
        degrees.push(1);
    }
    let set = InvariantSet { generators, degrees };
    validate(rs, &set)?;
    Ok(set)
}

/// Basic invariants of W_G on the ambient coordinates: elementary symmetric
/// functions (of squares) for A–D, the Pfaffian for D, root power sums for
/// G2 and F4, and the coordinate itself for each central direction.
/// Results are cached per group.
pub fn basic_invariants(rs: &RootSystem) -> Result<Arc<InvariantSet>> {
    type Cell = Arc<OnceLock<Result<Arc<InvariantSet>>>>;
    static CACHE: OnceLock<Mutex<HashMap<String, Cell>>> = OnceLock::new();
    if rs.is_heavy() {
        return Err(Error::Unsupported(format!("{} has an E-type factor", rs.spec)));
    }
    let cell = {
        let mut map = CACHE.get_or_init(Default::default).lock().unwrap();
        map.entry(rs.spec.canonical()).or_default().clone()
    };
    cell.get_or_init(|| build_invariants(rs).map(Arc::new)).clone()
}

/// Incremental images of monomials under y ↦ w·y for one group element.
/// Coefficients of det(I − t·g) via Faddeev–LeVerrier.
fn char_coeffs(g: &QMatrix) -> Vec<Rational> {
    let m = g.rows();
    let id = QMatrix::identity(m);
    let mut c = vec![Rational::one()];
    let mut mk = QMatrix::zeros(m, m);
    for k in 1..=m {
        mk = g.matmul(&mk).add(&id.scale(&c[k - 1]));
        let gm = g.matmul(&mk);
        let tr = (0..m).fold(Rational::zero(), |acc, i| &acc + gm.get(i, i));
        c.push(-(&tr / &Rational::from_int(k as i64)));
    }
    c
}

/// Molien series (1/|G|) Σ_g 1/det(I − t·g), expanded on demand.
struct Molien {
    classes: Vec<(Vec<Rational>, usize)>,
    series: Vec<Vec<Rational>>,
    order: usize,
}

impl Molien {
    fn new(group: &[QMatrix]) -> Self {
        let mut counts: HashMap<Vec<Rational>, usize> = HashMap::new();
        for g in group {
            *counts.entry(char_coeffs(g)).or_default() += 1;
        }
        let classes: Vec<(Vec<Rational>, usize)> = counts.into_iter().collect();
        let series = classes.iter().map(|_| vec![Rational::one()]).collect();
        Molien { classes, series, order: group.len() }
    }

    fn coeff(&mut self, k: usize) -> usize {
        let mut total = Rational::zero();
        for ((c, count), a) in self.classes.iter().zip(self.series.iter_mut()) {
            while a.len() <= k {
                let n = a.len();
                let mut next = Rational::zero();
                for j in 1..c.len().min(n + 1) {
                    next -= &(&c[j] * &a[n - j]);
                }
                a.push(next);
            }
            total += &(&a[k] * &Rational::from_int(*count as i64));
        }
        let r = &total / &Rational::from_int(self.order as i64);
        r.to_i64().filter(|&x| x >= 0).expect("Molien coefficients are natural numbers") as usize
    }
}

fn multinomial(e: &[u16]) -> Rational {
    let mut acc = Rational::one();
    let mut n = 0usize;
    for &x in e {
        for i in 1..=x as usize {
            n += 1;
            acc = &(&acc * &Rational::from_int(n as i64)) / &Rational::from_int(i as i64);
        }
    }
    acc
}

/// Reynolds image of ⟨ℓ, x⟩^k, as coordinates in the degree-k monomial basis:
/// the coefficient of x^α is multinomial(α) · Σ_g (gᵀℓ)^α, up to the factor 1/|G|.
fn averaged_power(group: &[QMatrix], ell: &[Rational], basis: &[Exponent]) -> Vec<Rational> {
    let k = basis.first().map(|e| e.iter().map(|&x| x as usize).sum()).unwrap_or(0);
    let mut sums = vec![Rational::zero(); basis.len()];
    for g in group {
        let y = g.transpose().mul_vec(ell);
        let powers: Vec<Vec<Rational>> = y
            .iter()
            .map(|yi| {
                let mut p = vec![Rational::one()];
                for _ in 0..k {
                    let next = p.last().unwrap() * yi;
                    p.push(next);
                }
                p
            })
            .collect();
        for (s, e) in sums.iter_mut().zip(basis) {
            let mut term = Rational::one();
            for (i, &a) in e.iter().enumerate() {
                if a > 0 {
                    term *= &powers[i][a as usize];
                }
            }
            *s += &term;
        }
    }
    sums.iter().zip(basis).map(|(s, e)| s * &multinomial(e)).collect()
}

/// Basic invariants of a finite reflection group given by matrices acting on
/// m coordinates, found degree by degree. The Molien series gives the exact
/// dimension of each graded piece of the invariant ring; Reynolds images of
/// powers of seeded random linear forms are added until that dimension is
/// reached, and those not in the span of products of earlier generators
/// become new generators. Succeeds once m generators with product of degrees
/// equal to the group order are found.
pub fn reflection_group_invariants(group: &[QMatrix], m: usize) -> Result<Vec<(MultiPoly, usize)>> {
    if m == 0 {
        return Ok(Vec::new());
    }
    if group.len() <= 1 {
        return Ok((0..m).map(|i| (MultiPoly::var(m, i), 1)).collect());
    }
    let order = group.len();
    let mut molien = Molien::new(group);
    let mut rng = ChaCha8Rng::seed_from_u64(0x1d5);
    let mut gens: Vec<(MultiPoly, usize)> = Vec::new();
    for k in 1..=order {
        let target = molien.coeff(k);
        let basis = monomial_basis(m, k);
        let idx = monomial_index(&basis);
        let mut ech = EchelonBasis::new(basis.len());
        for p in products_of_degree(&gens, k, m) {
            ech.insert(p.coords(&idx, basis.len()).expect("degree mismatch"));
        }
        let mut attempts = 0;
        while ech.rank() < target {
            attempts += 1;
            if attempts > 64 * target + 64 {
                return Err(Error::Internal(format!("could not span the degree-{k} invariants")));
            }
            let bound = 3 + attempts as i64;
            let ell: Vec<Rational> = (0..m).map(|_| Rational::from_int(rng.gen_range(-bound..=bound))).collect();
            let v = averaged_power(group, &ell, &basis);
            if ech.insert(v.clone()) {
                gens.push((MultiPoly::from_coords(m, &basis, &v), k));
            }
        }
        if gens.len() >= m {
            let prod: usize = gens.iter().map(|(_, d)| d).product();
            if gens.len() == m && prod == order {
                return Ok(gens);
            }
            return Err(Error::Internal("group acting on s is not a reflection group".into()));
        }
    }
    Err(Error::Internal("group acting on s is not a reflection group".into()))
}

/// Products of the given weighted generators of total degree k.
fn products_of_degree(gens: &[(MultiPoly, usize)], k: usize, m: usize) -> Vec<MultiPoly> {
    let mut out = Vec::new();
    fn go(gens: &[(MultiPoly, usize)], start: usize, left: usize, acc: MultiPoly, out: &mut Vec<MultiPoly>) {
        if left == 0 {
            out.push(acc);
            return;
        }
        for i in start..gens.len() {
            if gens[i].1 <= left {
                go(gens, i, left - gens[i].1, acc.mul(&gens[i].0), out);
            }
        }
    }
    if !gens.is_empty() {
        go(gens, 0, k, MultiPoly::constant(m, Rational::one()), &mut out);
    }
    out
}

/// Exponent vectors b with Σ b_j·w_j = k.
pub fn weighted_monomials(weights: &[usize], k: usize) -> Vec<Exponent> {
    fn go(weights: &[usize], i: usize, left: usize, cur: &mut Exponent, out: &mut Vec<Exponent>) {
        if i == weights.len() {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let w = weights[i];
        for e in (0..=left / w).rev() {
            cur.push(e as u16);
            go(weights, i + 1, left - e * w, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(weights, 0, k, &mut Vec::new(), &mut out);
    out
}

/// Writes a polynomial in y as a polynomial in the generators u (weighted by
/// their degrees). Errors if f is not in the subalgebra they generate.
pub fn express_in_generators(f: &MultiPoly, gens: &[(MultiPoly, usize)]) -> Result<MultiPoly> {
    let r = gens.len();
    let Some(d) = f.homogeneous_degree().map_err(|_| Error::Internal("inhomogeneous invariant".into()))? else {
        return Ok(MultiPoly::zero(r));
    };
    let weights: Vec<usize> = gens.iter().map(|g| g.1).collect();
    let exps = weighted_monomials(&weights, d);
    let m = f.nvars();
    let basis = monomial_basis(m, d);
    let idx = monomial_index(&basis);
    let cols: Vec<Vec<Rational>> = exps
        .iter()
        .map(|b| {
            let p = b.iter().zip(gens).fold(MultiPoly::constant(m, Rational::one()), |acc, (&e, g)| acc.mul(&g.0.pow(e as usize)));
            p.coords(&idx, basis.len()).expect("degree mismatch")
        })
        .collect();
    let target = f.coords(&idx, basis.len()).expect("degree mismatch");
    let a = QMatrix::from_columns(basis.len(), &cols);
    let x = a.solve(&target).ok_or_else(|| Error::Internal("restricted invariant is not invariant under W_H".into()))?;
    Ok(MultiPoly::from_coords(r, &exps, &x))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weyl::{WeylGroup, DEFAULT_WEYL_CAP};

    fn rs(s: &str) -> RootSystem {
        RootSystem::from_spec_str(s).unwrap()
    }

    #[test]
    fn spec_examples() {
        let a2 = basic_invariants(&rs("A2")).unwrap();
        assert_eq!(a2.degrees, vec![2, 3]);
        let d4 = basic_invariants(&rs("D4")).unwrap();
        assert_eq!(d4.degrees, vec![2, 4, 6, 4]);
        let g2 = basic_invariants(&rs("G2")).unwrap();
        assert_eq!(g2.degrees, vec![2, 6]);
        assert!(matches!(basic_invariants(&rs("E6")), Err(Error::Unsupported(_))));
    }

    #[test]
    fn all_supported_types_validate() {
        for s in ["A1", "A3", "A4", "B2", "B3", "B4", "C3", "C4", "D2", "D3", "D5", "F4", "G2xC2+T1"] {
            let r = rs(s);
            let set = basic_invariants(&r).unwrap();
            assert_eq!(set.degrees.len(), r.rank(), "{s}");
        }
    }

    #[test]
    fn molien_series_of_b3() {
        // 1/((1−t²)(1−t⁴)(1−t⁶)) = 1 + t² + 2t⁴ + 3t⁶ + 4t⁸ + …
        let w = WeylGroup::of(&rs("B3"), DEFAULT_WEYL_CAP).unwrap();
        let mut m = Molien::new(&w.elements);
        let got: Vec<usize> = (0..=8).map(|k| m.coeff(k)).collect();
        assert_eq!(got, vec![1, 0, 1, 0, 2, 0, 3, 0, 4]);
    }

    #[test]
    fn reynolds_recovers_weyl_degrees() {
        // W(B3) acting on R^3 directly.
        let r = rs("B3");
        let w = WeylGroup::of(&r, DEFAULT_WEYL_CAP).unwrap();
        let gens = reflection_group_invariants(&w.elements, 3).unwrap();
        let degs: Vec<usize> = gens.iter().map(|g| g.1).collect();
        assert_eq!(degs, vec![2, 4, 6]);
        // W(A2) on its 3-dim ambient space has a degree-1 invariant.
        let r = rs("A2");
        let w = WeylGroup::of(&r, DEFAULT_WEYL_CAP).unwrap();
        let degs: Vec<usize> = reflection_group_invariants(&w.elements, 3).unwrap().iter().map(|g| g.1).collect();
        assert_eq!(degs, vec![1, 2, 3]);
    }

    #[test]
    fn rejects_non_reflection_group() {
        // Rotation by 90° generates a cyclic group of order 4: invariants x²+y², degree-4 pieces — not polynomial.
        let rot = QMatrix::from_i64(&[&[0, -1], &[1, 0]]);
        let g: Vec<QMatrix> = (0..4).scan(QMatrix::identity(2), |acc, _| {
            let cur = acc.clone();
            *acc = rot.matmul(acc);
            Some(cur)
        }).collect();
        assert!(reflection_group_invariants(&g, 2).is_err());
    }

    #[test]
    fn expresses_restricted_invariants() {
        let x = MultiPoly::var(2, 0);
        let y = MultiPoly::var(2, 1);
        let u = vec![(x.mul(&x), 2), (y.mul(&y), 2)];
        let f = x.pow(4).add(&x.mul(&x).mul(&y).mul(&y).scale(&Rational::from_int(3)));
        let g = express_in_generators(&f, &u).unwrap();
        assert_eq!(g.coeff(&[2, 0]), Rational::one());
        assert_eq!(g.coeff(&[1, 1]), Rational::from_int(3));
        assert!(express_in_generators(&x.mul(&y), &u).is_err());
    }
}
