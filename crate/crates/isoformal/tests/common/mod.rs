#![allow(dead_code)]

use std::path::PathBuf;

use isoformal::classify::{load_corpus, CorpusRow};
use isoformal::linalg::{QMatrix, Rational};
use isoformal::roots::RootSystem;
use rand::Rng;

pub const CORPUS_FILES: [&str; 4] =
    ["table1.jsonl", "table2_even_spheres.jsonl", "table3_odd_spheres.jsonl", "table4_reducible_odd_spheres.jsonl"];

pub fn data_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data")
}

pub fn corpus(file: &str) -> Vec<(usize, CorpusRow)> {
    load_corpus(&data_dir().join(file)).expect("shipped corpus parses")
}

pub fn all_rows() -> Vec<CorpusRow> {
    CORPUS_FILES.iter().flat_map(|f| corpus(f)).map(|(_, r)| r).collect()
}

/// A random Weyl group element as a product of simple reflections.
pub fn random_weyl_element(rs: &RootSystem, rng: &mut impl Rng) -> QMatrix {
    let gens = rs.simple_reflections();
    let mut w = QMatrix::identity(rs.ambient_dim);
    if gens.is_empty() {
        return w;
    }
    for _ in 0..rng.gen_range(0..4 * rs.num_positive() + 2) {
        w = gens[rng.gen_range(0..gens.len())].matmul(&w);
    }
    w
}

/// A random nonzero integer vector in t.
pub fn random_t_vector(rs: &RootSystem, rng: &mut impl Rng) -> Vec<Rational> {
    loop {
        let c: Vec<Rational> = (0..rs.t_basis.cols()).map(|_| Rational::from_int(rng.gen_range(-3..=3))).collect();
        let v = rs.t_basis.mul_vec(&c);
        if v.iter().any(|x| !x.is_zero()) {
            return v;
        }
    }
}
