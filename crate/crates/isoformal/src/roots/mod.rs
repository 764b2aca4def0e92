//! Root systems of compact reductive groups in fixed coordinate models.
//!
//! Every simple factor occupies its own block of ambient coordinates and the
//! invariant form is the standard dot product on the ambient space:
//!
//! | type | block width | simple roots |
//! |------|-------------|--------------|
//! | A1   | 1 | 2e1 |
//! | An   | n+1 (t is the sum-zero hyperplane) | e_i − e_{i+1} |
//! | Bn   | n | e_i − e_{i+1}, e_n |
//! | Cn   | n | e_i − e_{i+1}, 2e_n |
//! | Dn   | n | e_i − e_{i+1}, e_{n−1} + e_n |
//! | G2   | 3 (sum-zero plane) | (1,−1,0) short, (−2,1,1) long |
//! | F4   | 4 | e2−e3, e3−e4, e4, ½(e1−e2−e3−e4) |
//! | E6–E8 | 8 | Bourbaki: ½(1,−1,…,−1,1), e1+e2, e2−e1, …, e7−e6 (first n) |
//!
//! A central torus of rank k contributes k further coordinates. The Cartan
//! subalgebra t is the span of the simple roots plus the central unit vectors.

pub mod cartan;
pub mod spec;

use std::collections::{HashMap, HashSet, VecDeque};

use crate::error::{Error, Result};
use crate::linalg::{dot, is_zero_vec, scale_vec, QMatrix, Rational};

pub use cartan::{classify_simple_system, factor_degrees, parabolic_degrees, weyl_order};
pub use spec::{parse_group_spec, Factor, GroupSpec, SimpleType};

/// Placement of one simple factor inside the ambient coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Block {
    pub factor: Factor,
    /// First ambient coordinate of the block.
    pub offset: usize,
    pub width: usize,
    /// Index of the factor's first simple root in the global list.
    pub first_simple: usize,
}

#[derive(Debug, Clone)]
pub struct RootSystem {
    pub spec: GroupSpec,
    pub ambient_dim: usize,
    pub blocks: Vec<Block>,
    pub central_coords: Vec<usize>,
    pub simple: Vec<Vec<Rational>>,
    /// Positive roots (ordered by height) followed by their negatives in the same order.
    pub roots: Vec<Vec<Rational>>,
    /// Coefficients of each root in the simple roots.
    pub simple_coords: Vec<Vec<i64>>,
    /// α(x0) = 1 for every simple root α; positivity is β(x0) > 0.
    pub x0: Vec<Rational>,
    /// Columns: the simple roots, then the central unit vectors.
    pub t_basis: QMatrix,
    /// Basis of the orthogonal complement of t in the ambient space.
    t_perp: Vec<Vec<Rational>>,
    root_index: HashMap<Vec<Rational>, usize>,
}

fn unit(n: usize, i: usize, c: Rational) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); n];
    v[i] = c;
    v
}

fn block_width(f: Factor) -> usize {
    match (f.ty, f.rank) {
        (SimpleType::A, 1) => 1,
        (SimpleType::A, n) => n + 1,
        (SimpleType::G, _) => 3,
        (SimpleType::E, _) => 8,
        (_, n) => n,
    }
}

fn block_simple_roots(f: Factor) -> Vec<Vec<Rational>> {
    let n = f.rank;
    let w = block_width(f);
    let q = Rational::from_int;
    let e = |i: usize| unit(w, i, q(1));
    let diff = |i: usize, j: usize| {
        let mut v = e(i);
        v[j] = q(-1);
        v
    };
    let half = Rational::new(1, 2);
    match f.ty {
        SimpleType::A if n == 1 => vec![unit(1, 0, q(2))],
        SimpleType::A => (0..n).map(|i| diff(i, i + 1)).collect(),
        SimpleType::B | SimpleType::C | SimpleType::D => {
            let mut s: Vec<_> = (0..n - 1).map(|i| diff(i, i + 1)).collect();
            s.push(match f.ty {
                SimpleType::B => e(n - 1),
                SimpleType::C => unit(w, n - 1, q(2)),
                _ => {
                    let mut v = e(n - 2);
                    v[n - 1] = q(1);
                    v
                }
            });
            s
        }
        SimpleType::G => vec![diff(0, 1), vec![q(-2), q(1), q(1)]],
        SimpleType::F => vec![
            diff(1, 2),
            diff(2, 3),
            e(3),
            vec![half.clone(), -half.clone(), -half.clone(), -half.clone()],
        ],
        SimpleType::E => {
            let mut a1 = vec![-half.clone(); 8];
            a1[0] = half.clone();
            a1[7] = half.clone();
            let mut a2 = e(0);
            a2[1] = q(1);
            let mut s = vec![a1, a2];
            for i in 0..6 {
                s.push(diff(i + 1, i));
            }
            s.truncate(n);
            s
        }
    }
}

impl RootSystem {
    pub fn build(spec: &GroupSpec) -> Result<RootSystem> {
        for f in &spec.factors {
            if !f.ty.valid_rank(f.rank) {
                return Err(Error::invalid(format!("invalid rank {} for type {}", f.rank, f.ty)));
            }
        }
        let ambient_dim: usize = spec.factors.iter().map(|&f| block_width(f)).sum::<usize>() + spec.central;
        let mut blocks = Vec::new();
        let mut simple = Vec::new();
        let mut offset = 0;
        for &f in &spec.factors {
            let width = block_width(f);
            blocks.push(Block { factor: f, offset, width, first_simple: simple.len() });
            for r in block_simple_roots(f) {
                let mut v = vec![Rational::zero(); ambient_dim];
                v[offset..offset + width].clone_from_slice(&r);
                simple.push(v);
            }
            offset += width;
        }
        let central_coords: Vec<usize> = (offset..ambient_dim).collect();

        // Reflection closure of the simple roots.
        let mut found: HashSet<Vec<Rational>> = simple.iter().cloned().collect();
        let mut queue: VecDeque<Vec<Rational>> = simple.iter().cloned().collect();
        while let Some(b) = queue.pop_front() {
            for a in &simple {
                let r = reflect(a, &b);
                if found.insert(r.clone()) {
                    queue.push_back(r);
                }
            }
        }

        let ns = simple.len();
        let gram = QMatrix::from_rows(simple.iter().map(|a| simple.iter().map(|b| dot(a, b)).collect()).collect());
        let gram_inv = if ns > 0 {
            gram.inverse().ok_or_else(|| Error::Internal("simple roots are dependent".into()))?
        } else {
            QMatrix::zeros(0, 0)
        };
        let coords_of = |b: &[Rational]| -> Vec<Rational> {
            let proj: Vec<Rational> = simple.iter().map(|a| dot(a, b)).collect();
            gram_inv.mul_vec(&proj)
        };
        let ones = vec![Rational::one(); ns];
        let c0 = gram_inv.mul_vec(&ones);
        let mut x0 = vec![Rational::zero(); ambient_dim];
        for (c, a) in c0.iter().zip(&simple) {
            for (x, ai) in x0.iter_mut().zip(a) {
                x.add_mul(c, ai);
            }
        }

        let mut positive: Vec<(Vec<i64>, Vec<Rational>)> = Vec::new();
        for b in &found {
            let c = coords_of(b);
            let ci: Vec<i64> = c
                .iter()
                .map(|x| x.to_i64().filter(|_| x.is_integer()))
                .collect::<Option<_>>()
                .ok_or_else(|| Error::Internal("root is not an integer combination of simple roots".into()))?;
            if ci.iter().all(|&x| x >= 0) {
                positive.push((ci, b.clone()));
            } else if !ci.iter().all(|&x| x <= 0) {
                return Err(Error::Internal("root with mixed-sign simple coordinates".into()));
            }
        }
        positive.sort_by(|(a, _), (b, _)| {
            let ha: i64 = a.iter().sum();
            let hb: i64 = b.iter().sum();
            ha.cmp(&hb).then_with(|| b.cmp(a))
        });
        let mut roots: Vec<Vec<Rational>> = positive.iter().map(|(_, b)| b.clone()).collect();
        let mut simple_coords: Vec<Vec<i64>> = positive.iter().map(|(c, _)| c.clone()).collect();
        for (c, b) in &positive {
            roots.push(b.iter().map(|x| -x).collect());
            simple_coords.push(c.iter().map(|x| -x).collect());
        }
        if roots.len() != found.len() {
            return Err(Error::Internal("root system is not closed under negation".into()));
        }
        let root_index = roots.iter().enumerate().map(|(i, b)| (b.clone(), i)).collect();

        let mut cols = simple.clone();
        for &c in &central_coords {
            cols.push(unit(ambient_dim, c, Rational::one()));
        }
        let t_basis = QMatrix::from_columns(ambient_dim, &cols);
        let t_perp = t_basis.transpose().kernel_basis();

        Ok(RootSystem {
            spec: spec.clone(),
            ambient_dim,
            blocks,
            central_coords,
            simple,
            roots,
            simple_coords,
            x0,
            t_basis,
            t_perp,
            root_index,
        })
    }

    pub fn from_spec_str(s: &str) -> Result<RootSystem> {
        Self::build(&parse_group_spec(s)?)
    }

    /// dim t.
    pub fn rank(&self) -> usize {
        self.simple.len() + self.central_coords.len()
    }

    pub fn semisimple_rank(&self) -> usize {
        self.simple.len()
    }

    pub fn num_roots(&self) -> usize {
        self.roots.len()
    }

    pub fn num_positive(&self) -> usize {
        self.roots.len() / 2
    }

    pub fn positive_roots(&self) -> &[Vec<Rational>] {
        &self.roots[..self.num_positive()]
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut d: Vec<usize> = self.spec.factors.iter().flat_map(|&f| factor_degrees(f)).collect();
        d.extend(std::iter::repeat(1).take(self.spec.central));
        d
    }

    /// Odd generator degrees 2d − 1 of the rational cohomology of the group.
    pub fn odd_degrees(&self) -> Vec<usize> {
        let mut d: Vec<usize> = self.degrees().into_iter().map(|d| 2 * d - 1).collect();
        d.sort_unstable();
        d
    }

    pub fn weyl_order(&self) -> u128 {
        weyl_order(&self.spec.factors)
    }

    /// E-type factors: constructed, but too large for enumeration and cohomology.
    pub fn is_heavy(&self) -> bool {
        self.spec.has_exceptional_e()
    }

    pub fn index_of(&self, b: &[Rational]) -> Option<usize> {
        self.root_index.get(b).copied()
    }

    pub fn is_root(&self, b: &[Rational]) -> bool {
        self.root_index.contains_key(b)
    }

    pub fn coroot(&self, b: &[Rational]) -> Result<Vec<Rational>> {
        if !self.is_root(b) {
            return Err(Error::invalid("not a root"));
        }
        Ok(coroot_of(b))
    }

    pub fn contains_in_t(&self, v: &[Rational]) -> bool {
        v.len() == self.ambient_dim && self.t_perp.iter().all(|u| dot(u, v).is_zero())
    }

    pub fn is_dominant(&self, v: &[Rational]) -> bool {
        self.simple.iter().all(|a| !dot(a, v).is_negative())
    }

    pub fn reflection_matrix(&self, b: &[Rational]) -> QMatrix {
        reflection_matrix(b)
    }

    pub fn simple_reflections(&self) -> Vec<QMatrix> {
        self.simple.iter().map(|a| reflection_matrix(a)).collect()
    }

    /// Basis (as columns, primitive integer where possible) of {x ∈ t : x·v = 0}.
    pub fn orthogonal_complement_in_t(&self, v: &[Rational]) -> QMatrix {
        let row = QMatrix::from_rows(vec![self.t_basis.transpose().mul_vec(v)]);
        let cols: Vec<Vec<Rational>> = row
            .kernel_basis()
            .iter()
            .map(|k| crate::linalg::primitive_integer_vector(&self.t_basis.mul_vec(k)))
            .collect();
        QMatrix::from_columns(self.ambient_dim, &cols)
    }

    /// Orthogonal projection of an ambient vector onto the central coordinates.
    pub fn central_part(&self, v: &[Rational]) -> Vec<Rational> {
        self.central_coords.iter().map(|&c| v[c].clone()).collect()
    }

    /// Global 1-based labels of a subset of simple roots, e.g. `a1,a3`.
    pub fn simple_labels(idx: &[usize]) -> String {
        idx.iter().map(|i| format!("a{}", i + 1)).collect::<Vec<_>>().join(",")
    }
}

pub fn coroot_of(b: &[Rational]) -> Vec<Rational> {
    let c = &Rational::from_int(2) / &dot(b, b);
    scale_vec(b, &c)
}

/// s_a(b) = b − (2(a·b)/(a·a)) a
pub fn reflect(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let c = &(&Rational::from_int(2) * &dot(a, b)) / &dot(a, a);
    if c.is_zero() {
        return b.to_vec();
    }
    a.iter().zip(b).map(|(ai, bi)| bi - &(&c * ai)).collect()
}

/// I − (2/(a·a)) a aᵀ
pub fn reflection_matrix(a: &[Rational]) -> QMatrix {
    assert!(!is_zero_vec(a));
    let n = a.len();
    let c = &Rational::from_int(2) / &dot(a, a);
    let mut m = QMatrix::identity(n);
    for i in 0..n {
        if a[i].is_zero() {
            continue;
        }
        for j in 0..n {
            if a[j].is_zero() {
                continue;
            }
            let x = m.get(i, j) - &(&c * &(&a[i] * &a[j]));
            m.set(i, j, x);
        }
    }
    m
}
