//! Weyl groups as explicit groups of exact matrices.

use std::collections::{HashMap, HashSet};

use crate::error::{Error, Result};
use crate::linalg::{dot, QMatrix, Rational};
use crate::roots::{reflect, RootSystem};

pub const DEFAULT_WEYL_CAP: usize = 1_000_000;

#[derive(Debug, Clone)]
pub struct WeylGroup {
    pub dim: usize,
    pub generators: Vec<QMatrix>,
    pub elements: Vec<QMatrix>,
    index: HashSet<QMatrix>,
}

impl WeylGroup {
    /// Breadth-first closure of the generators under left multiplication.
    pub fn enumerate(dim: usize, generators: Vec<QMatrix>, cap: usize) -> Result<WeylGroup> {
        let id = QMatrix::identity(dim);
        let mut index = HashSet::new();
        index.insert(id.clone());
        let mut elements = vec![id];
        let mut head = 0;
        while head < elements.len() {
            let w = elements[head].clone();
            head += 1;
            for g in &generators {
                let x = g.matmul(&w);
                if index.insert(x.clone()) {
                    elements.push(x);
                    if elements.len() > cap {
                        return Err(Error::GroupTooLarge { cap });
                    }
                }
            }
        }
        Ok(WeylGroup { dim, generators, elements, index })
    }

    pub fn of(rs: &RootSystem, cap: usize) -> Result<WeylGroup> {
        WeylGroup::enumerate(rs.ambient_dim, rs.simple_reflections(), cap)
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, m: &QMatrix) -> bool {
        self.index.contains(m)
    }
}

/// Drives `x` into the closed dominant chamber by simple reflections.
/// Returns the final vector, the accumulated matrix `w` (so `w·x = result`)
/// and the word of simple-root indices applied, first application first.
pub fn descend_to_dominant(rs: &RootSystem, x: &[Rational]) -> (Vec<Rational>, QMatrix, Vec<usize>) {
    let mut cur = x.to_vec();
    let mut w = QMatrix::identity(rs.ambient_dim);
    let mut word = Vec::new();
    while let Some(i) = rs.simple.iter().position(|a| dot(a, &cur).is_negative()) {
        cur = reflect(&rs.simple[i], &cur);
        w = rs.reflection_matrix(&rs.simple[i]).matmul(&w);
        word.push(i);
    }
    (cur, w, word)
}

/// The element mapping Δ to −Δ, found by descending from the antidominant
/// regular point −x0. Returns the matrix and its reduced word.
pub fn longest_word(rs: &RootSystem) -> (QMatrix, Vec<usize>) {
    let neg: Vec<Rational> = rs.x0.iter().map(|x| -x).collect();
    let (end, w, word) = descend_to_dominant(rs, &neg);
    debug_assert_eq!(end, rs.x0);
    (w, word)
}

pub fn maps_simple_to_negative_simple(rs: &RootSystem, w: &QMatrix) -> bool {
    let neg: HashSet<Vec<Rational>> = rs.simple.iter().map(|a| a.iter().map(|x| -x).collect()).collect();
    let img: HashSet<Vec<Rational>> = rs.simple.iter().map(|a| w.mul_vec(a)).collect();
    img == neg
}

/// w acts as −1 on the span of the roots.
pub fn is_minus_identity_on_roots(rs: &RootSystem, w: &QMatrix) -> bool {
    rs.simple.iter().all(|a| w.mul_vec(a) == a.iter().map(|x| -x).collect::<Vec<_>>())
}

#[derive(Debug, Clone)]
pub struct Stabilizer {
    /// Indices of the simple roots vanishing on v.
    pub delta_v: Vec<usize>,
    pub group: WeylGroup,
}

pub fn stabilizer_data(rs: &RootSystem, v: &[Rational], cap: usize) -> Result<Stabilizer> {
    if v.iter().all(|x| x.is_zero()) {
        return Err(Error::invalid("v must be nonzero"));
    }
    if !rs.is_dominant(v) {
        return Err(Error::invalid("v is not dominant"));
    }
    let delta_v: Vec<usize> = (0..rs.simple.len()).filter(|&i| dot(&rs.simple[i], v).is_zero()).collect();
    let gens = delta_v.iter().map(|&i| rs.reflection_matrix(&rs.simple[i])).collect();
    let group = WeylGroup::enumerate(rs.ambient_dim, gens, cap)?;
    for w in &group.elements {
        if w.mul_vec(v) != v {
            return Err(Error::Internal("stabilizer element moves v".into()));
        }
    }
    Ok(Stabilizer { delta_v, group })
}

/// A finite group acting on a subspace, in coordinates of a chosen basis.
#[derive(Debug, Clone)]
pub struct RestrictedGroup {
    pub basis: QMatrix,
    pub elements: Vec<QMatrix>,
    pub kernel_size: usize,
    index: HashSet<QMatrix>,
}

impl RestrictedGroup {
    pub fn trivial(basis: QMatrix) -> Self {
        let id = QMatrix::identity(basis.cols());
        RestrictedGroup { basis, elements: vec![id.clone()], kernel_size: 1, index: [id].into_iter().collect() }
    }

    /// Wraps matrices already written in subspace coordinates, deduplicating.
    pub fn from_matrices(basis: QMatrix, mats: Vec<QMatrix>) -> Self {
        let mut index = HashSet::new();
        let mut elements = Vec::new();
        for m in mats {
            if index.insert(m.clone()) {
                elements.push(m);
            }
        }
        RestrictedGroup { basis, elements, kernel_size: 1, index }
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, m: &QMatrix) -> bool {
        self.index.contains(m)
    }

    pub fn is_trivial(&self) -> bool {
        self.elements.len() == 1
    }
}

/// Expresses an ambient matrix preserving span(S) in S-coordinates.
pub fn restrict_matrix(w: &QMatrix, s_basis: &QMatrix, left_inv: &QMatrix) -> Result<QMatrix> {
    let ws = w.matmul(s_basis);
    let m = left_inv.matmul(&ws);
    if s_basis.matmul(&m) != ws {
        return Err(Error::invalid("element does not stabilize the subspace"));
    }
    Ok(m)
}

pub fn restrict_faithful(elements: &[QMatrix], s_basis: &QMatrix) -> Result<RestrictedGroup> {
    let k = s_basis.cols();
    if k == 0 {
        return Ok(RestrictedGroup::trivial(s_basis.clone()));
    }
    let left_inv = s_basis.left_inverse().ok_or_else(|| Error::invalid("subspace basis is dependent"))?;
    let mut counts: HashMap<QMatrix, usize> = HashMap::new();
    let mut order = Vec::new();
    for w in elements {
        let m = restrict_matrix(w, s_basis, &left_inv)?;
        let c = counts.entry(m.clone()).or_insert(0);
        if *c == 0 {
            order.push(m);
        }
        *c += 1;
    }
    let kernel_size = counts.get(&QMatrix::identity(k)).copied().unwrap_or(0);
    if kernel_size == 0 || counts.values().any(|&c| c != kernel_size) {
        return Err(Error::Internal("restriction is not a group homomorphism".into()));
    }
    let index = order.iter().cloned().collect();
    Ok(RestrictedGroup { basis: s_basis.clone(), elements: order, kernel_size, index })
}

#[derive(Debug, Clone)]
pub struct ComponentGroup {
    pub wv_s: RestrictedGroup,
    pub n: RestrictedGroup,
    pub w0_negates_v: bool,
    pub w0s_in_wvs: bool,
}

/// N = W_v|_s, extended by w0|_s when w0·v = −v.
pub fn component_group_n(rs: &RootSystem, v: &[Rational], s_basis: &QMatrix, stab: &Stabilizer) -> Result<ComponentGroup> {
    let wv_s = restrict_faithful(&stab.group.elements, s_basis)?;
    let (w0, _) = longest_word(rs);
    let neg_v: Vec<Rational> = v.iter().map(|x| -x).collect();
    let w0_negates_v = w0.mul_vec(v) == neg_v;
    if !w0_negates_v {
        return Ok(ComponentGroup { n: wv_s.clone(), wv_s, w0_negates_v, w0s_in_wvs: false });
    }
    let w0s = if s_basis.cols() == 0 {
        QMatrix::identity(0)
    } else {
        let li = s_basis.left_inverse().ok_or_else(|| Error::invalid("subspace basis is dependent"))?;
        restrict_matrix(&w0, s_basis, &li)?
    };
    let w0s_in_wvs = wv_s.contains(&w0s);
    let mut mats = wv_s.elements.clone();
    mats.extend(wv_s.elements.iter().map(|m| w0s.matmul(m)));
    let mut n = RestrictedGroup::from_matrices(s_basis.clone(), mats);
    n.kernel_size = wv_s.kernel_size;
    Ok(ComponentGroup { wv_s, n, w0_negates_v, w0s_in_wvs })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::int_vec;

    fn rs(s: &str) -> RootSystem {
        RootSystem::from_spec_str(s).unwrap()
    }

    fn s_of(r: &RootSystem, v: &[i64]) -> QMatrix {
        r.orthogonal_complement_in_t(&int_vec(v))
    }

    #[test]
    fn enumeration_examples() {
        assert_eq!(WeylGroup::of(&rs("A2"), DEFAULT_WEYL_CAP).unwrap().order(), 6);
        assert_eq!(WeylGroup::of(&rs("F4"), DEFAULT_WEYL_CAP).unwrap().order(), 1152);
        assert_eq!(WeylGroup::enumerate(3, vec![], 10).unwrap().order(), 1);
        assert_eq!(WeylGroup::of(&rs("B3"), 10).unwrap_err(), Error::GroupTooLarge { cap: 10 });
    }

    #[test]
    fn longest_word_examples() {
        let c2 = rs("C2");
        let (w0, _) = longest_word(&c2);
        assert_eq!(w0, QMatrix::identity(2).neg());
        let a2 = rs("A2");
        let (w0, _) = longest_word(&a2);
        assert_eq!(w0, QMatrix::from_i64(&[&[0, 0, 1], &[0, 1, 0], &[1, 0, 0]]));
        let a1 = rs("A1");
        assert_eq!(longest_word(&a1).0, QMatrix::from_i64(&[&[-1]]));
        let t = rs("A1+T1");
        let (w0, _) = longest_word(&t);
        assert_eq!(w0.get(1, 1), &Rational::one());
    }

    #[test]
    fn stabilizer_examples() {
        let a4 = rs("A4");
        let st = stabilizer_data(&a4, &int_vec(&[3, 3, -2, -2, -2]), DEFAULT_WEYL_CAP).unwrap();
        assert_eq!(st.delta_v, vec![0, 2, 3]);
        assert_eq!(st.group.order(), 12);
        let c2 = rs("C2");
        let st = stabilizer_data(&c2, &int_vec(&[1, 1]), DEFAULT_WEYL_CAP).unwrap();
        assert_eq!((st.delta_v.clone(), st.group.order()), (vec![0], 2));
        let st = stabilizer_data(&c2, &int_vec(&[2, 1]), DEFAULT_WEYL_CAP).unwrap();
        assert_eq!(st.group.order(), 1);
        assert!(stabilizer_data(&c2, &int_vec(&[1, -1]), DEFAULT_WEYL_CAP).is_err());
        assert!(stabilizer_data(&c2, &int_vec(&[0, 0]), DEFAULT_WEYL_CAP).is_err());
    }

    #[test]
    fn restriction_examples() {
        let a3 = rs("A3");
        let v = [1, 1, -1, -1];
        let st = stabilizer_data(&a3, &int_vec(&v), DEFAULT_WEYL_CAP).unwrap();
        let r = restrict_faithful(&st.group.elements, &s_of(&a3, &v)).unwrap();
        assert_eq!((r.order(), r.kernel_size), (4, 1));

        let c2 = rs("C2");
        let line = QMatrix::from_columns(2, &[int_vec(&[1, -1])]);
        let swap = c2.reflection_matrix(&c2.simple[0]);
        let r = restrict_faithful(&[QMatrix::identity(2), swap], &line).unwrap();
        assert_eq!(r.order(), 2);
        assert!(r.contains(&QMatrix::from_i64(&[&[-1]])));

        let triv = restrict_faithful(&[QMatrix::identity(2)], &line).unwrap();
        assert!(triv.is_trivial());
    }

    #[test]
    fn component_group_examples() {
        let check = |g: &str, v: &[i64], neg: bool, inside: bool, n: usize| {
            let r = rs(g);
            let st = stabilizer_data(&r, &int_vec(v), DEFAULT_WEYL_CAP).unwrap();
            let cg = component_group_n(&r, &int_vec(v), &s_of(&r, v), &st).unwrap();
            assert_eq!((cg.w0_negates_v, cg.w0s_in_wvs, cg.n.order()), (neg, inside, n), "{g} {v:?}");
        };
        check("A4", &[3, 3, -2, -2, -2], false, false, 12);
        check("A3", &[1, 1, -1, -1], true, false, 8);
        check("C2", &[1, 1], true, true, 2);
    }
}
