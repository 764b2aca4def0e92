//! Degrees, Coxeter numbers and Cartan-matrix identification of simple systems.

use crate::linalg::{dot, Rational};

use super::spec::{Factor, SimpleType};

/// Fundamental degrees of the Weyl group of a simple factor.
pub fn factor_degrees(f: Factor) -> Vec<usize> {
    let n = f.rank;
    match f.ty {
        SimpleType::A => (2..=n + 1).collect(),
        SimpleType::B | SimpleType::C => (1..=n).map(|i| 2 * i).collect(),
        SimpleType::D => {
            let mut d: Vec<usize> = (1..n).map(|i| 2 * i).collect();
            d.push(n);
            d.sort_unstable();
            d
        }
        SimpleType::E => match n {
            6 => vec![2, 5, 6, 8, 9, 12],
            7 => vec![2, 6, 8, 10, 12, 14, 18],
            _ => vec![2, 8, 12, 14, 18, 20, 24, 30],
        },
        SimpleType::F => vec![2, 6, 8, 12],
        SimpleType::G => vec![2, 6],
    }
}

pub fn coxeter_number(f: Factor) -> usize {
    *factor_degrees(f).iter().max().unwrap()
}

pub fn weyl_order(factors: &[Factor]) -> u128 {
    factors.iter().flat_map(|&f| factor_degrees(f)).map(|d| d as u128).product()
}

/// Identifies the Dynkin type of each connected component of a set of roots
/// forming a simple system. Components are listed in order of their first
/// member; each entry carries the indices (into `roots`) of its members.
pub fn classify_simple_system(roots: &[Vec<Rational>]) -> Vec<(Factor, Vec<usize>)> {
    let n = roots.len();
    let gram: Vec<Vec<Rational>> = roots.iter().map(|a| roots.iter().map(|b| dot(a, b)).collect()).collect();
    // bond[i][j] = A_ij * A_ji ∈ {0,1,2,3}
    let bond = |i: usize, j: usize| -> i64 {
        if i == j || gram[i][j].is_zero() {
            return 0;
        }
        let p = &(&gram[i][j] * &gram[i][j]) * &Rational::from_int(4);
        (&p / &(&gram[i][i] * &gram[j][j])).to_i64().expect("non-crystallographic bond")
    };
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for s in 0..n {
        if seen[s] {
            continue;
        }
        let mut comp = vec![s];
        seen[s] = true;
        let mut k = 0;
        while k < comp.len() {
            let i = comp[k];
            for j in 0..n {
                if !seen[j] && bond(i, j) > 0 {
                    seen[j] = true;
                    comp.push(j);
                }
            }
            k += 1;
        }
        comp.sort_unstable();
        let ty = component_type(&comp, &bond, &gram);
        out.push((Factor { ty, rank: comp.len() }, comp));
    }
    out
}

fn component_type(comp: &[usize], bond: &dyn Fn(usize, usize) -> i64, gram: &[Vec<Rational>]) -> SimpleType {
    let r = comp.len();
    if r == 1 {
        return SimpleType::A;
    }
    let nbrs = |i: usize| comp.iter().copied().filter(|&j| bond(i, j) > 0).collect::<Vec<_>>();
    if comp.iter().any(|&i| comp.iter().any(|&j| bond(i, j) == 3)) {
        return SimpleType::G;
    }
    if let Some(&b) = comp.iter().find(|&&i| nbrs(i).len() == 3) {
        let mut arms: Vec<usize> = nbrs(b)
            .into_iter()
            .map(|start| {
                let (mut prev, mut cur, mut len) = (b, start, 1);
                loop {
                    let next: Vec<usize> = nbrs(cur).into_iter().filter(|&x| x != prev).collect();
                    if next.is_empty() {
                        return len;
                    }
                    prev = cur;
                    cur = next[0];
                    len += 1;
                }
            })
            .collect();
        arms.sort_unstable();
        return if arms[0] == 1 && arms[1] == 1 { SimpleType::D } else { SimpleType::E };
    }
    let double: Vec<(usize, usize)> =
        comp.iter().flat_map(|&i| comp.iter().map(move |&j| (i, j))).filter(|&(i, j)| i < j && bond(i, j) == 2).collect();
    if double.is_empty() {
        return SimpleType::A;
    }
    let (i, j) = double[0];
    if r == 4 && nbrs(i).len() == 2 && nbrs(j).len() == 2 {
        return SimpleType::F;
    }
    let max_len = comp.iter().map(|&k| &gram[k][k]).max().unwrap();
    let short = comp.iter().filter(|&&k| &gram[k][k] < max_len).count();
    if r == 2 || short == 1 {
        SimpleType::B
    } else {
        SimpleType::C
    }
}

/// Degrees of the reflection group generated by a simple system, padded with
/// 1's up to `ambient_rank` (the fixed directions).
pub fn parabolic_degrees(roots: &[Vec<Rational>], ambient_rank: usize) -> Vec<usize> {
    let mut d: Vec<usize> = classify_simple_system(roots).into_iter().flat_map(|(f, _)| factor_degrees(f)).collect();
    d.resize(ambient_rank.max(d.len()), 1);
    d.sort_unstable();
    d
}
