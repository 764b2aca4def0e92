//! Normalized corank-one subtori and their maximal regular pairs.

pub mod subgroup;

use std::collections::{HashSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{dot, is_zero_vec, primitive_integer_vector, sub_vec, QMatrix, Rational};
use crate::roots::{coroot_of, parabolic_degrees, reflect, weyl_order, Factor, RootSystem, SimpleType};
use crate::weyl::descend_to_dominant;

pub use subgroup::{parse_subgroup_spec, RootRef, SubgroupSpec, TorusId, TorusKind};

#[derive(Debug, Clone)]
pub struct CorankOnePair {
    pub rs: RootSystem,
    /// Dominant, primitive integer generator of the orthocomplement of s in t.
    pub v: Vec<Rational>,
    /// Columns span s = v^⊥ ∩ t.
    pub s_basis: QMatrix,
    /// Indices of simple roots vanishing on v.
    pub delta_v: Vec<usize>,
    /// Indices into `rs.roots` of the roots vanishing on v.
    pub phi_hs: Vec<usize>,
    pub z_hs_dim: usize,
    pub pi1_rank: usize,
    pub dim_ghs: usize,
    /// |W_v| from the degrees of the parabolic subgroup.
    pub wv_order: u128,
    /// Number of roots of the input subgroup H itself (0 for tori).
    pub subgroup_roots: usize,
}

/// Serializable summary used in traces and verdicts.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairSummary {
    pub group: String,
    pub v: Vec<Rational>,
    /// 1-based simple-root indices.
    pub delta_v: Vec<usize>,
    pub hs_type: String,
    pub phi_hs: usize,
    pub pi1_rank: usize,
    pub dim_ghs: usize,
    pub hs_equals_h: bool,
}

impl CorankOnePair {
    /// α = −B(v, −), as a vector via the dot product.
    pub fn alpha(&self) -> Vec<Rational> {
        self.v.iter().map(|x| -x).collect()
    }

    pub fn hs_equals_h(&self) -> bool {
        self.phi_hs.len() == self.subgroup_roots
    }

    /// Dynkin type of the semisimple part of H_S, e.g. `A1xA2`, or `T` when abelian.
    pub fn hs_type(&self) -> String {
        let simple: Vec<Vec<Rational>> = self.delta_v.iter().map(|&i| self.rs.simple[i].clone()).collect();
        let parts: Vec<String> = crate::roots::classify_simple_system(&simple).into_iter().map(|(f, _)| f.to_string()).collect();
        if parts.is_empty() {
            "T".into()
        } else {
            parts.join("x")
        }
    }

    /// Degrees of W_v acting on the semisimple part of t (1's for fixed directions).
    pub fn wv_degrees(&self) -> Vec<usize> {
        let simple: Vec<Vec<Rational>> = self.delta_v.iter().map(|&i| self.rs.simple[i].clone()).collect();
        parabolic_degrees(&simple, self.rs.semisimple_rank())
    }

    pub fn summary(&self) -> PairSummary {
        PairSummary {
            group: self.rs.spec.canonical(),
            v: self.v.clone(),
            delta_v: self.delta_v.iter().map(|i| i + 1).collect(),
            hs_type: self.hs_type(),
            phi_hs: self.phi_hs.len(),
            pi1_rank: self.pi1_rank,
            dim_ghs: self.dim_ghs,
            hs_equals_h: self.hs_equals_h(),
        }
    }
}

/// Returns the dominant representative of v and the Weyl element w with w·v = v'.
pub fn dominant_representative(rs: &RootSystem, v: &[Rational]) -> Result<(Vec<Rational>, QMatrix)> {
    if is_zero_vec(v) {
        return Err(Error::invalid("v must be nonzero"));
    }
    let (d, w, _) = descend_to_dominant(rs, v);
    Ok((d, w))
}

/// Generator of {x ∈ t : x ⊥ span(vectors)}; errors unless it is one-dimensional.
fn normal_in_t(rs: &RootSystem, vectors: &[Vec<Rational>]) -> Result<Vec<Rational>> {
    let t = &rs.t_basis;
    let rows: Vec<Vec<Rational>> = vectors.iter().map(|x| t.transpose().mul_vec(x)).collect();
    let m = if rows.is_empty() { QMatrix::zeros(0, t.cols()) } else { QMatrix::from_rows(rows) };
    let k = m.kernel_basis();
    if k.len() != 1 {
        return Err(Error::invalid(format!(
            "subgroup torus has dimension {} but a corank-one subtorus of a rank-{} group needs {}",
            t.cols() - k.len(),
            rs.rank(),
            rs.rank() - 1
        )));
    }
    Ok(t.mul_vec(&k[0]))
}

/// Basis of t ∩ W^⊥ for a set of ambient vectors W.
fn t_perp_to(rs: &RootSystem, w: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let t = &rs.t_basis;
    let m = QMatrix::from_rows(w.iter().map(|x| t.transpose().mul_vec(x)).collect());
    m.kernel_basis().iter().map(|k| t.mul_vec(k)).collect()
}

fn check_len(rs: &RootSystem, v: &[Rational], what: &str) -> Result<()> {
    if v.len() != rs.ambient_dim {
        return Err(Error::invalid(format!("{what} has length {} but {} uses {} coordinates", v.len(), rs.spec, rs.ambient_dim)));
    }
    if !rs.contains_in_t(v) {
        return Err(Error::invalid(format!("{what} does not lie in the Cartan subalgebra of {}", rs.spec)));
    }
    Ok(())
}

fn find_block<'a>(rs: &'a RootSystem, kinds: &[SimpleType], rank: usize, occurrence: usize) -> Result<&'a crate::roots::Block> {
    rs.blocks
        .iter()
        .filter(|b| kinds.contains(&b.factor.ty) && b.factor.rank == rank)
        .nth(occurrence - 1)
        .ok_or_else(|| Error::invalid(format!("{} has no factor #{occurrence} of the named torus type", rs.spec)))
}

fn circle_data(rs: &RootSystem, p: i64, q: i64, torus: &TorusId) -> Result<(Vec<Rational>, Vec<Vec<Rational>>)> {
    let n = rs.ambient_dim;
    let zero = || vec![Rational::zero(); n];
    let (p, q) = (Rational::from_int(p), Rational::from_int(q));
    let simple_of = |b: &crate::roots::Block| rs.simple[b.first_simple..b.first_simple + b.factor.rank].to_vec();
    match torus.kind {
        TorusKind::A2Std => {
            let b = find_block(rs, &[SimpleType::A], 2, torus.occurrence)?;
            let mut u = zero();
            u[b.offset] = p.clone();
            u[b.offset + 1] = q.clone();
            u[b.offset + 2] = -(&p + &q);
            Ok((u, simple_of(b)))
        }
        TorusKind::B2Std | TorusKind::C2Std => {
            let b = find_block(rs, &[SimpleType::B, SimpleType::C], 2, torus.occurrence)?;
            let mut u = zero();
            u[b.offset] = p;
            u[b.offset + 1] = q;
            let mut e1 = zero();
            e1[b.offset] = Rational::one();
            let mut e2 = zero();
            e2[b.offset + 1] = Rational::one();
            Ok((u, vec![e1, e2]))
        }
        TorusKind::G2Std => {
            let b = find_block(rs, &[SimpleType::G], 2, torus.occurrence)?;
            let third = Rational::new(1, 3);
            let h_gamma = [-&third, -&third, &third * &Rational::from_int(2)];
            let h_alpha = [Rational::one(), Rational::from_int(-1), Rational::zero()];
            let mut u = zero();
            for i in 0..3 {
                u[b.offset + i] = &(&p * &h_gamma[i]) + &(&q * &h_alpha[i]);
            }
            Ok((u, simple_of(b)))
        }
        TorusKind::Coords(i, j) => {
            if i >= n || j >= n {
                return Err(Error::invalid(format!("coordinate index out of range for {} coordinates", n)));
            }
            let mut u = zero();
            u[i] = p;
            u[j] = q;
            let mut ei = zero();
            ei[i] = Rational::one();
            let mut ej = zero();
            ej[j] = Rational::one();
            for e in [&ei, &ej] {
                if !rs.contains_in_t(e) {
                    return Err(Error::invalid("e(i,j) torus coordinates must be unit directions of t"));
                }
            }
            Ok((u, vec![ei, ej]))
        }
    }
}

/// Closure of a set of roots under the reflections they generate.
fn root_closure(rs: &RootSystem, gens: &[Vec<Rational>]) -> usize {
    let mut found: HashSet<Vec<Rational>> = HashSet::new();
    let mut queue: VecDeque<Vec<Rational>> = VecDeque::new();
    for g in gens {
        for x in [g.clone(), g.iter().map(|y| -y).collect()] {
            if found.insert(x.clone()) {
                queue.push_back(x);
            }
        }
    }
    while let Some(b) = queue.pop_front() {
        for a in gens {
            let r = reflect(a, &b);
            if found.insert(r.clone()) {
                queue.push_back(r);
            }
        }
    }
    debug_assert!(found.iter().all(|b| rs.is_root(b)));
    found.len()
}

/// Resolves a subgroup spec to a generator of the orthocomplement of s and the
/// number of roots of the subgroup itself.
pub fn resolve_normal(rs: &RootSystem, spec: &SubgroupSpec) -> Result<(Vec<Rational>, usize)> {
    match spec {
        SubgroupSpec::Vector(v) => {
            check_len(rs, v, "v")?;
            Ok((v.clone(), 0))
        }
        SubgroupSpec::Functional(a) => {
            check_len(rs, a, "alpha")?;
            Ok((a.clone(), 0))
        }
        SubgroupSpec::Circle { p, q, torus } => {
            let (u, w) = circle_data(rs, *p, *q, torus)?;
            check_len(rs, &u, "circle direction")?;
            let mut s = t_perp_to(rs, &w);
            s.push(u);
            Ok((normal_in_t(rs, &s)?, 0))
        }
        SubgroupSpec::Regular { roots, center } => {
            let mut rv: Vec<Vec<Rational>> = Vec::new();
            for r in roots {
                let b = match r {
                    RootRef::Simple(i) => rs
                        .simple
                        .get(*i)
                        .cloned()
                        .ok_or_else(|| Error::invalid(format!("{} has only {} simple roots", rs.spec, rs.simple.len())))?,
                    RootRef::Vector(b) => {
                        if b.len() != rs.ambient_dim || !rs.is_root(b) {
                            return Err(Error::invalid(format!("[{}] is not a root of {}", fmt_vec(b), rs.spec)));
                        }
                        b.clone()
                    }
                };
                rv.push(b);
            }
            for (i, a) in rv.iter().enumerate() {
                for b in &rv[i + 1..] {
                    if dot(a, b).is_positive() || a == b {
                        return Err(Error::invalid("subgroup roots must form a simple system (pairwise non-acute)"));
                    }
                }
            }
            let coroots: Vec<Vec<Rational>> = rv.iter().map(|b| coroot_of(b)).collect();
            if !coroots.is_empty() && QMatrix::from_rows(coroots.clone()).rank() != coroots.len() {
                return Err(Error::invalid("subgroup roots are linearly dependent"));
            }
            let mut s = coroots.clone();
            for c in center {
                check_len(rs, c, "center vector")?;
                s.push(project_off(c, &coroots));
            }
            let normal = normal_in_t(rs, &s)?;
            Ok((normal, if rv.is_empty() { 0 } else { root_closure(rs, &rv) }))
        }
    }
}

/// Orthogonal projection of x onto the complement of span(basis).
fn project_off(x: &[Rational], basis: &[Vec<Rational>]) -> Vec<Rational> {
    if basis.is_empty() {
        return x.to_vec();
    }
    let b = QMatrix::from_columns(x.len(), basis);
    let li = b.left_inverse().expect("independent");
    let coeffs = li.mul_vec(x);
    sub_vec(x, &b.mul_vec(&coeffs))
}

fn fmt_vec(v: &[Rational]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

pub fn build_pair(rs: &RootSystem, spec: &SubgroupSpec) -> Result<CorankOnePair> {
    let (normal, subgroup_roots) = resolve_normal(rs, spec)?;
    let mut pair = pair_from_vector(rs, &normal)?;
    pair.subgroup_roots = subgroup_roots;
    if subgroup_roots > pair.phi_hs.len() {
        return Err(Error::Internal("subgroup has more roots than H_S".into()));
    }
    Ok(pair)
}

pub fn pair_from_vector(rs: &RootSystem, v: &[Rational]) -> Result<CorankOnePair> {
    check_len(rs, v, "v")?;
    let (dom, _) = dominant_representative(rs, v)?;
    let v = primitive_integer_vector(&dom);
    let s_basis = rs.orthogonal_complement_in_t(&v);

    let delta_v: Vec<usize> = (0..rs.simple.len()).filter(|&i| dot(&rs.simple[i], &v).is_zero()).collect();
    let phi_hs: Vec<usize> = (0..rs.roots.len()).filter(|&i| dot(&rs.roots[i], &v).is_zero()).collect();
    // Φ_HS must coincide with Φ ∩ ZΔ_v.
    let in_span: Vec<usize> = (0..rs.roots.len())
        .filter(|&i| rs.simple_coords[i].iter().enumerate().all(|(j, &c)| c == 0 || delta_v.contains(&j)))
        .collect();
    if in_span != phi_hs {
        return Err(Error::Internal("roots vanishing on v are not spanned by Δ_v".into()));
    }

    // z(h_S) = s ∩ (coroots of Φ_HS)^⊥; Δ_v spans the same space.
    let z_hs: Vec<Vec<Rational>> = if delta_v.is_empty() {
        s_basis.columns()
    } else {
        let m = QMatrix::from_rows(delta_v.iter().map(|&i| s_basis.transpose().mul_vec(&rs.simple[i])).collect());
        m.kernel_basis().iter().map(|k| s_basis.mul_vec(k)).collect()
    };
    let proj: Vec<Vec<Rational>> = z_hs.iter().map(|z| rs.central_part(z)).collect();
    let proj_rank = if proj.is_empty() || rs.central_coords.is_empty() { 0 } else { QMatrix::from_rows(proj).rank() };
    let pi1_rank = rs.central_coords.len() - proj_rank;

    let simple_v: Vec<Vec<Rational>> = delta_v.iter().map(|&i| rs.simple[i].clone()).collect();
    let wv_factors: Vec<Factor> = crate::roots::classify_simple_system(&simple_v).into_iter().map(|(f, _)| f).collect();

    Ok(CorankOnePair {
        rs: rs.clone(),
        dim_ghs: rs.roots.len() - phi_hs.len() + 1,
        v,
        s_basis,
        delta_v,
        phi_hs,
        z_hs_dim: z_hs.len(),
        pi1_rank,
        wv_order: weyl_order(&wv_factors),
        subgroup_roots: 0,
    })
}
