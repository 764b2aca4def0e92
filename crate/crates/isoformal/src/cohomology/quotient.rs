//! Graded quotients (Q[s])^{W_H} / (restricted invariants of W_G).
//!
//! W_H is a reflection group on s, so its invariant ring is a polynomial ring
//! Q[u_1..u_m] with weights e_j = deg u_j. The restricted invariants are
//! rewritten in the u's and the quotient is computed one weighted degree at a
//! time. Once the quotient vanishes on max(e_j) consecutive degrees it vanishes
//! forever: every monomial of higher weight is some u_j times a monomial in
//! that window or above.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{EchelonBasis, Exponent, MultiPoly};
use crate::pair::CorankOnePair;
use crate::weyl::RestrictedGroup;

use super::invariants::{basic_invariants, express_in_generators, reflection_group_invariants, weighted_monomials};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Total {
    Finite(usize),
    /// The quotient was still nonzero above the cap (given in cohomological degree).
    Infinite { cap_degree: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradedQuotient {
    /// Nonzero dimensions keyed by cohomological degree (twice the polynomial degree).
    pub dims: BTreeMap<usize, usize>,
    pub total: Total,
    /// Degrees of the generators of the W_H-invariant ring on s.
    pub invariant_degrees: Vec<usize>,
}

impl GradedQuotient {
    pub fn finite_total(&self) -> Option<usize> {
        match self.total {
            Total::Finite(n) => Some(n),
            Total::Infinite { .. } => None,
        }
    }

    pub fn top_degree(&self) -> Option<usize> {
        self.dims.keys().next_back().copied()
    }
}

/// Default cohomological degree cap 2·Σ(d_i − 1).
pub fn default_degree_cap(pair: &CorankOnePair) -> usize {
    2 * pair.rs.degrees().iter().map(|d| d - 1).sum::<usize>()
}

pub fn heven_quotient(pair: &CorankOnePair, wh: &RestrictedGroup, degree_cap: Option<usize>) -> Result<GradedQuotient> {
    let m = pair.s_basis.cols();
    for w in &wh.elements {
        if w.rows() != m || w.cols() != m {
            return Err(Error::invalid("W_H matrices do not act on s"));
        }
    }
    let invs = basic_invariants(&pair.rs)?;
    let restricted: Vec<MultiPoly> =
        invs.generators.iter().map(|f| f.substitute_linear(&pair.s_basis)).filter(|g| !g.is_zero()).collect();

    let u = reflection_group_invariants(&wh.elements, m)?;
    let weights: Vec<usize> = u.iter().map(|g| g.1).collect();
    let mut relations: Vec<(MultiPoly, usize)> = Vec::new();
    for g in &restricted {
        let deg = g.homogeneous_degree().ok().flatten().expect("nonzero homogeneous");
        relations.push((express_in_generators(g, &u)?, deg));
    }
    let cap = degree_cap.unwrap_or_else(|| default_degree_cap(pair)) / 2;
    let (poly_dims, finite) = weighted_quotient_dims(&weights, &relations, cap);
    let dims: BTreeMap<usize, usize> =
        poly_dims.iter().enumerate().filter(|(_, &d)| d > 0).map(|(k, &d)| (2 * k, d)).collect();
    let total = if finite { Total::Finite(dims.values().sum()) } else { Total::Infinite { cap_degree: 2 * cap } };
    Ok(GradedQuotient { dims, total, invariant_degrees: weights })
}

/// Dimensions of Q[u]/(relations) per weighted degree, stopping after a
/// vanishing window of width max(weights). Returns (dims, finite); `finite`
/// is false if some degree above `cap` is nonzero.
pub fn weighted_quotient_dims(weights: &[usize], relations: &[(MultiPoly, usize)], cap: usize) -> (Vec<usize>, bool) {
    let window = weights.iter().copied().max().unwrap_or(1);
    let mut dims = Vec::new();
    let mut zeros = 0;
    let mut k = 0;
    loop {
        let basis = weighted_monomials(weights, k);
        let idx: HashMap<&Exponent, usize> = basis.iter().enumerate().map(|(i, e)| (e, i)).collect();
        let mut ech = EchelonBasis::new(basis.len());
        'outer: for (g, d) in relations {
            if *d > k {
                continue;
            }
            for shift in weighted_monomials(weights, k - d) {
                if ech.is_full() {
                    break 'outer;
                }
                let mut row = vec![crate::linalg::Rational::zero(); basis.len()];
                for (e, c) in g.terms() {
                    let prod: Exponent = e.iter().zip(&shift).map(|(a, b)| a + b).collect();
                    row[idx[&prod]] = c.clone();
                }
                ech.insert(row);
            }
        }
        let q = basis.len() - ech.rank();
        if k > cap && q > 0 {
            dims.push(q);
            return (dims, false);
        }
        dims.push(q);
        zeros = if q == 0 { zeros + 1 } else { 0 };
        if zeros >= window {
            dims.truncate(dims.len() - zeros);
            return (dims, true);
        }
        k += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{int_vec, QMatrix, Rational};
    use crate::pair::{build_pair, parse_subgroup_spec};
    use crate::roots::RootSystem;
    use crate::weyl::{restrict_faithful, stabilizer_data, WeylGroup, DEFAULT_WEYL_CAP};

    fn pair(g: &str, s: &str) -> CorankOnePair {
        build_pair(&RootSystem::from_spec_str(g).unwrap(), &parse_subgroup_spec(s).unwrap()).unwrap()
    }

    fn wv_s(p: &CorankOnePair) -> RestrictedGroup {
        let st = stabilizer_data(&p.rs, &p.v, DEFAULT_WEYL_CAP).unwrap();
        restrict_faithful(&st.group.elements, &p.s_basis).unwrap()
    }

    fn dims(q: &GradedQuotient) -> Vec<(usize, usize)> {
        q.dims.iter().map(|(&a, &b)| (a, b)).collect()
    }

    #[test]
    fn a2_trivial_wh() {
        let p = pair("A2", "v=1,0,-1");
        let q = heven_quotient(&p, &RestrictedGroup::trivial(p.s_basis.clone()), None).unwrap();
        assert_eq!(dims(&q), vec![(0, 1), (2, 1)]);
        assert_eq!(q.total, Total::Finite(2));
    }

    #[test]
    fn c2_odd_sphere() {
        let p = pair("C2", "v=1,1");
        let q = heven_quotient(&p, &wv_s(&p), None).unwrap();
        assert_eq!(dims(&q), vec![(0, 1)]);
    }

    #[test]
    fn d4_correction_example() {
        // s = {(0,a,b,c)} after normalizing v = e4 to e1; W_H = B1 x B2 as signed
        // permutations fixing e1: a sign change on e2, signed permutations of e3, e4.
        let p = pair("D4", "v=0,0,0,1");
        assert_eq!(p.v, int_vec(&[1, 0, 0, 0]));
        let flip = |i: usize| {
            let mut m = QMatrix::identity(4);
            m.set(i, i, Rational::from_int(-1));
            m
        };
        let swap = QMatrix::from_i64(&[&[1, 0, 0, 0], &[0, 1, 0, 0], &[0, 0, 0, 1], &[0, 0, 1, 0]]);
        let g = WeylGroup::enumerate(4, vec![flip(1), flip(2), swap], 100).unwrap();
        assert_eq!(g.order(), 16);
        let wh = restrict_faithful(&g.elements, &p.s_basis).unwrap();
        let q = heven_quotient(&p, &wh, None).unwrap();
        assert_eq!(dims(&q), vec![(0, 1), (4, 1), (8, 1)]);
        assert_eq!(q.total, Total::Finite(3));
        let mut degs = q.invariant_degrees.clone();
        degs.sort_unstable();
        assert_eq!(degs, vec![2, 2, 4]);
    }

    #[test]
    fn table_pairs() {
        let p = pair("A3", "v=1,1,-1,-1");
        let q = heven_quotient(&p, &wv_s(&p), None).unwrap();
        assert_eq!((q.total.clone(), q.top_degree()), (Total::Finite(2), Some(4)));
        let p = pair("A4", "v=3,3,-2,-2,-2");
        let q = heven_quotient(&p, &wv_s(&p), None).unwrap();
        assert_eq!((q.total.clone(), q.top_degree()), (Total::Finite(2), Some(4)));
    }

    #[test]
    fn window_rule_and_cap() {
        // Q[x]/(x^3): dims 1,1,1
        let x3 = MultiPoly::monomial(1, vec![3], Rational::one());
        assert_eq!(weighted_quotient_dims(&[1], &[(x3, 3)], 10), (vec![1, 1, 1], true));
        // no relations: infinite
        assert_eq!(weighted_quotient_dims(&[2], &[], 4).1, false);
        // Weighted: Q[u(2), w(3)]/(u^3, w^2)
        let u3 = MultiPoly::monomial(2, vec![3, 0], Rational::one());
        let w2 = MultiPoly::monomial(2, vec![0, 2], Rational::one());
        let (d, fin) = weighted_quotient_dims(&[2, 3], &[(u3, 6), (w2, 6)], 20);
        assert!(fin);
        assert_eq!(d.iter().sum::<usize>(), 6);
        assert_eq!(d.len(), 8);
    }
}
