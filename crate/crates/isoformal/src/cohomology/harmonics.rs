//! W-harmonic polynomials as a dual model of the coinvariant algebra.
//!
//! The harmonics H are the span of all partial derivatives of the product Δ of
//! the positive roots. Under the apolar pairing H_k is dual to the coinvariant
//! slice C_k, W-equivariantly, and multiplication by a linear form ℓ on C is
//! transpose to the directional derivative ∂_ℓ on H. So for the W_v-invariant
//! part A = C^{W_v}, dim A_k = dim H_k^{W_v} and the cokernel of
//! ℓ·: A_{k−1} → A_k has dimension dim H_k^{W_v} − rank(∂_ℓ on H_k^{W_v}).
//!
//! The model stores, per degree, the derivative matrices ∂_i: H_k → H_{k−1}
//! and the action of each simple reflection. Reflection actions are propagated
//! downward from w·Δ = det(w)·Δ using w·(∂_j f) = ∂_{w e_j}(w·f), so no
//! polynomial substitution is ever needed.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use crate::error::{Error, Result};
use crate::linalg::{monomial_basis, monomial_index, primitive_integer_vector, EchelonBasis, MultiPoly, QMatrix, Rational};
use crate::pair::CorankOnePair;
use crate::roots::RootSystem;

pub const DEFAULT_COINVARIANT_CAP: u128 = 1152;

#[derive(Debug)]
pub struct HarmonicModel {
    pub nvars: usize,
    /// dims[k] = dim H_k
    pub dims: Vec<usize>,
    /// deriv[k][i]: ∂_i as an (h_{k−1} × h_k) matrix; deriv[0] is empty.
    pub deriv: Vec<Vec<QMatrix>>,
    /// refl[k][g]: action of the g-th simple reflection on H_k.
    pub refl: Vec<Vec<QMatrix>>,
}

/// Coefficients of Π_i (1 + t + … + t^{d_i − 1}).
pub fn coinvariant_hilbert(degrees: &[usize]) -> Vec<u128> {
    let mut p = vec![1u128];
    for &d in degrees {
        let mut q = vec![0u128; p.len() + d - 1];
        for (i, &c) in p.iter().enumerate() {
            for j in 0..d {
                q[i + j] += c;
            }
        }
        p = q;
    }
    p
}

/// Π(1 − t^{num_i}) / Π(1 − t^{den_j}) as an integer polynomial, or None if
/// the division is not exact.
pub fn hilbert_quotient(num: &[usize], den: &[usize]) -> Option<Vec<i128>> {
    let mut p = vec![1i128];
    for &d in num {
        let mut q = vec![0i128; p.len() + d];
        for (i, &c) in p.iter().enumerate() {
            q[i] += c;
            q[i + d] -= c;
        }
        p = q;
    }
    for &d in den {
        // divide by (1 − t^d): q_i = p_i + q_{i−d}
        let mut q = vec![0i128; p.len()];
        for i in 0..p.len() {
            q[i] = p[i] + if i >= d { q[i - d] } else { 0 };
        }
        if q.len() < d || q[q.len() - d..].iter().any(|&x| x != 0) {
            return None;
        }
        q.truncate(q.len() - d);
        p = q;
    }
    while p.len() > 1 && *p.last().unwrap() == 0 {
        p.pop();
    }
    Some(p)
}

fn vandermonde_like(rs: &RootSystem) -> MultiPoly {
    let n = rs.ambient_dim;
    rs.positive_roots()
        .iter()
        .fold(MultiPoly::constant(n, Rational::one()), |acc, b| acc.mul(&MultiPoly::linear(&primitive_integer_vector(b))))
}

impl HarmonicModel {
    pub fn build(rs: &RootSystem) -> HarmonicModel {
        let n = rs.ambient_dim;
        let top = rs.num_positive();
        let ss_degrees: Vec<usize> = rs.degrees().into_iter().filter(|&d| d > 1).collect();
        let expected = coinvariant_hilbert(&ss_degrees);
        debug_assert_eq!(expected.len(), top + 1);
        let reflections: Vec<(QMatrix, Vec<Rational>, Rational)> = rs
            .simple
            .iter()
            .map(|a| {
                let c = &Rational::from_int(2) / &crate::linalg::dot(a, a);
                (rs.reflection_matrix(a), a.clone(), c)
            })
            .collect();

        let mut dims = vec![0; top + 1];
        let mut deriv: Vec<Vec<QMatrix>> = vec![Vec::new(); top + 1];
        let mut refl: Vec<Vec<QMatrix>> = vec![Vec::new(); top + 1];

        // Current degree: basis rows (RREF) in the monomial basis of degree k.
        let delta = vandermonde_like(rs);
        let mut basis = monomial_basis(n, top);
        let mut rows: Vec<Vec<Rational>> = vec![delta.coords(&monomial_index(&basis), basis.len()).unwrap()];
        let lead = rows[0].iter().find(|x| !x.is_zero()).unwrap().recip();
        rows[0].iter_mut().for_each(|x| *x *= &lead);
        dims[top] = 1;
        refl[top] = reflections.iter().map(|_| QMatrix::from_i64(&[&[-1]])).collect();

        for k in (1..=top).rev() {
            let lower = monomial_basis(n, k - 1);
            let lower_idx = monomial_index(&lower);
            // derivative of each current basis row in each variable, as coordinates in degree k−1 monomials
            let d_of = |row: &[Rational], j: usize| -> Vec<Rational> {
                let mut out = vec![Rational::zero(); lower.len()];
                for (m, c) in row.iter().enumerate() {
                    if c.is_zero() || basis[m][j] == 0 {
                        continue;
                    }
                    let mut e = basis[m].clone();
                    e[j] -= 1;
                    out[lower_idx[&e]] = c * &Rational::from_int(basis[m][j] as i64);
                }
                out
            };
            let raw: Vec<Vec<Vec<Rational>>> = (0..n).map(|j| rows.iter().map(|r| d_of(r, j)).collect()).collect();
            let want = expected[k - 1] as usize;
            let mut ech = EchelonBasis::new(lower.len());
            let mut chosen: Vec<(usize, usize)> = Vec::new();
            'fill: for l in 0..rows.len() {
                for j in 0..n {
                    if ech.insert(raw[j][l].clone()) {
                        chosen.push((j, l));
                        if ech.rank() == want {
                            break 'fill;
                        }
                    }
                }
            }
            let new_rows = ech.rows().to_vec();
            let new_pivots = ech.pivots().to_vec();
            debug_assert_eq!(new_rows.len(), want);
            let coords = |v: &[Rational]| -> Vec<Rational> { new_pivots.iter().map(|&p| v[p].clone()).collect() };
            let h_lo = new_rows.len();
            let h_hi = rows.len();
            let d_mats: Vec<QMatrix> = (0..n)
                .map(|j| {
                    let cols: Vec<Vec<Rational>> = raw[j].iter().map(|v| coords(v)).collect();
                    QMatrix::from_columns(h_lo, &cols)
                })
                .collect();
            let g_cols: Vec<Vec<Rational>> = chosen.iter().map(|&(j, l)| coords(&raw[j][l])).collect();
            let g_inv = QMatrix::from_columns(h_lo, &g_cols).inverse().expect("chosen generators are a basis");
            let mut r_lo = Vec::with_capacity(reflections.len());
            for (gi, (_, a, c)) in reflections.iter().enumerate() {
                let r_hi = &refl[k][gi];
                // D_a = Σ a_i D_i
                let mut d_a = QMatrix::zeros(h_lo, h_hi);
                for (i, ai) in a.iter().enumerate() {
                    if !ai.is_zero() {
                        d_a = d_a.add(&d_mats[i].scale(ai));
                    }
                }
                // w·(∂_j b_l) = ∂_j(w·b_l) − c·a_j·∂_a(w·b_l)
                let m_cols: Vec<Vec<Rational>> = chosen
                    .iter()
                    .map(|&(j, l)| {
                        let wb = r_hi.column(l);
                        let mut col = d_mats[j].mul_vec(&wb);
                        if !a[j].is_zero() {
                            let f = c * &a[j];
                            for (x, y) in col.iter_mut().zip(d_a.mul_vec(&wb)) {
                                *x -= &(&f * &y);
                            }
                        }
                        col
                    })
                    .collect();
                r_lo.push(QMatrix::from_columns(h_lo, &m_cols).matmul(&g_inv));
            }
            dims[k - 1] = h_lo;
            deriv[k] = d_mats;
            refl[k - 1] = r_lo;
            rows = new_rows;
            basis = lower;
        }
        HarmonicModel { nvars: n, dims, deriv, refl }
    }

    /// Cached per group (semisimple part and central rank both matter for coordinates).
    pub fn cached(rs: &RootSystem) -> Arc<HarmonicModel> {
        static CACHE: OnceLock<Mutex<HashMap<String, Arc<OnceLock<Arc<HarmonicModel>>>>>> = OnceLock::new();
        let cell = {
            let mut map = CACHE.get_or_init(Default::default).lock().unwrap();
            map.entry(rs.spec.canonical()).or_default().clone()
        };
        cell.get_or_init(|| Arc::new(HarmonicModel::build(rs))).clone()
    }

    /// Basis (columns) of the subspace of H_k fixed by the given simple reflections.
    pub fn invariant_basis(&self, k: usize, gens: &[usize]) -> QMatrix {
        let h = self.dims[k];
        if gens.is_empty() {
            return QMatrix::identity(h);
        }
        let id = QMatrix::identity(h);
        let stacked = gens.iter().fold(QMatrix::zeros(0, h), |acc, &g| acc.vstack(&self.refl[k][g].sub(&id)));
        QMatrix::from_columns(h, &stacked.kernel_basis())
    }

    /// ∂ along the ambient vector x, as a matrix H_k → H_{k−1}.
    pub fn directional(&self, k: usize, x: &[Rational]) -> QMatrix {
        let h_lo = self.dims[k - 1];
        let mut out = QMatrix::zeros(h_lo, self.dims[k]);
        for (i, xi) in x.iter().enumerate() {
            if !xi.is_zero() {
                out = out.add(&self.deriv[k][i].scale(xi));
            }
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoinvariantCheck {
    /// 2 · Σ_k dim coker(α· : A_{k−1} → A_k)
    pub d: usize,
    /// dim A_k per polynomial degree.
    pub invariant_dims: Vec<usize>,
    pub expected_total: u128,
    pub hilbert_matches: bool,
}

/// Cross-check of d through the coinvariant algebra of W_G (via harmonics).
pub fn coinvariant_cross_check(pair: &CorankOnePair, cap: u128) -> Result<CoinvariantCheck> {
    let rs = &pair.rs;
    if rs.is_heavy() {
        return Err(Error::Unsupported(format!("{} has an E-type factor", rs.spec)));
    }
    if rs.weyl_order() > cap {
        return Err(Error::GroupTooLarge { cap: cap as usize });
    }
    let model = HarmonicModel::cached(rs);
    let top = model.dims.len() - 1;
    let mut invariant_dims = Vec::with_capacity(top + 1);
    let mut coker_total = 0usize;
    for k in (0..=top).rev() {
        let vk = model.invariant_basis(k, &pair.delta_v);
        let dim = vk.cols();
        invariant_dims.push(dim);
        let rank = if k == 0 || dim == 0 { 0 } else { model.directional(k, &pair.v).matmul(&vk).rank() };
        coker_total += dim - rank;
    }
    invariant_dims.reverse();
    let expected_total = rs.weyl_order() / pair.wv_order;
    let ss_degrees: Vec<usize> = rs.degrees().into_iter().filter(|&d| d > 1).collect();
    let series = hilbert_quotient(&ss_degrees, &pair.wv_degrees());
    let hilbert_matches = series.is_some_and(|s| {
        let mut got: Vec<i128> = invariant_dims.iter().map(|&d| d as i128).collect();
        while got.len() > 1 && *got.last().unwrap() == 0 {
            got.pop();
        }
        s == got
    });
    Ok(CoinvariantCheck { d: 2 * coker_total, invariant_dims, expected_total, hilbert_matches })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cohomology::invariants::basic_invariants;
    use crate::pair::{pair_from_vector, build_pair, parse_subgroup_spec};
    use crate::linalg::int_vec;

    fn rs(s: &str) -> RootSystem {
        RootSystem::from_spec_str(s).unwrap()
    }

    #[test]
    fn hilbert_helpers() {
        assert_eq!(coinvariant_hilbert(&[2, 3]), vec![1, 2, 2, 1]);
        assert_eq!(hilbert_quotient(&[2, 3], &[1, 2]), Some(vec![1, 1, 1]));
        assert_eq!(hilbert_quotient(&[2], &[3]), None);
    }

    #[test]
    fn dims_sum_to_group_order() {
        for s in ["A2", "B2", "G2", "A3", "C3", "A1xC2"] {
            let r = rs(s);
            let m = HarmonicModel::build(&r);
            assert_eq!(m.dims.iter().sum::<usize>() as u128, r.weyl_order(), "{s}");
            assert_eq!(m.dims.iter().map(|&d| d as u128).collect::<Vec<_>>(), coinvariant_hilbert(&r.degrees()));
        }
    }

    #[test]
    fn basic_invariants_annihilate_harmonics() {
        // f(∂)Δ = 0 for every positive-degree invariant f.
        for s in ["A2", "B2", "G2", "A3"] {
            let r = rs(s);
            let delta = vandermonde_like(&r);
            for f in &basic_invariants(&r).unwrap().generators {
                let mut acc = MultiPoly::zero(r.ambient_dim);
                for (e, c) in f.terms() {
                    let mut p = delta.clone();
                    for (i, &k) in e.iter().enumerate() {
                        for _ in 0..k {
                            p = p.derivative(i);
                        }
                    }
                    acc = acc.add(&p.scale(c));
                }
                assert!(acc.is_zero(), "{s}");
            }
        }
    }

    #[test]
    fn reflection_action_is_involutive() {
        let m = HarmonicModel::build(&rs("B3"));
        for k in 0..m.dims.len() {
            for r in &m.refl[k] {
                assert!(r.matmul(r).is_identity());
            }
        }
    }

    #[test]
    fn spec_examples() {
        let a3 = rs("A3");
        let p = pair_from_vector(&a3, &int_vec(&[1, 1, -1, -1])).unwrap();
        let c = coinvariant_cross_check(&p, DEFAULT_COINVARIANT_CAP).unwrap();
        assert_eq!((c.invariant_dims.iter().sum::<usize>(), c.d), (6, 4));
        assert!(c.hilbert_matches);
        let c2 = rs("C2");
        let p = pair_from_vector(&c2, &int_vec(&[1, 1])).unwrap();
        let c = coinvariant_cross_check(&p, DEFAULT_COINVARIANT_CAP).unwrap();
        assert_eq!((c.invariant_dims.iter().sum::<usize>(), c.d), (4, 2));
        let p = build_pair(&rs("A4"), &parse_subgroup_spec("sub(roots=a1,a3,a4)").unwrap()).unwrap();
        assert_eq!(coinvariant_cross_check(&p, DEFAULT_COINVARIANT_CAP).unwrap().d, 4);
    }

    #[test]
    fn cap_rejects_large_groups() {
        let d5 = rs("D5");
        let p = pair_from_vector(&d5, &int_vec(&[1, 0, 0, 0, 0])).unwrap();
        assert_eq!(coinvariant_cross_check(&p, DEFAULT_COINVARIANT_CAP), Err(Error::GroupTooLarge { cap: 1152 }));
    }
}
