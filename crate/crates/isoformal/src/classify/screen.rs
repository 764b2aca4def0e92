//! Degree screen for homogeneous spaces with the rational cohomology of a
//! sphere or of S^n × S^m (n odd, m even).
//!
//! Degrees here are those of the primitive generators of H*(G), i.e. 2d − 1
//! for each fundamental invariant degree d (1 for a central circle). Passing
//! the screen is necessary, not sufficient.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::roots::{factor_degrees, parse_group_spec, GroupSpec};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "kind")]
pub enum ScreenClass {
    OddSphere { n: usize },
    Product { n: usize, m: usize },
    /// deg G = deg H ⊔ {2m − 1} with n = m − 1.
    ProductCaseB { n: usize, m: usize },
    Fail,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeScreenResult {
    pub classification: ScreenClass,
    /// Another reading of the same degree data, if one exists.
    pub alternative: Option<ScreenClass>,
    pub g_degrees: Vec<usize>,
    pub h_degrees: Vec<usize>,
    pub g_minus_h: Vec<usize>,
    pub h_minus_g: Vec<usize>,
    pub note: String,
}

impl DegreeScreenResult {
    pub fn passes(&self) -> bool {
        self.classification != ScreenClass::Fail
    }
}

pub fn generator_degrees(spec: &GroupSpec) -> Vec<usize> {
    let mut out: Vec<usize> = spec.factors.iter().flat_map(|&f| factor_degrees(f)).map(|d| 2 * d - 1).collect();
    out.extend(std::iter::repeat(1).take(spec.central));
    out.sort_unstable();
    out
}

fn multiset_difference(a: &[usize], b: &[usize]) -> Vec<usize> {
    let mut counts: BTreeMap<usize, isize> = BTreeMap::new();
    for &x in a {
        *counts.entry(x).or_default() += 1;
    }
    for &x in b {
        *counts.entry(x).or_default() -= 1;
    }
    counts.into_iter().flat_map(|(x, c)| std::iter::repeat(x).take(c.max(0) as usize)).collect()
}

pub fn onishchik_screen_specs(g: &GroupSpec, h: &GroupSpec) -> DegreeScreenResult {
    let g_degrees = generator_degrees(g);
    let h_degrees = generator_degrees(h);
    let g_minus_h = multiset_difference(&g_degrees, &h_degrees);
    let h_minus_g = multiset_difference(&h_degrees, &g_degrees);
    let mut alternative = None;
    let classification = match (g_minus_h.as_slice(), h_minus_g.as_slice()) {
        (&[x], []) => {
            if x >= 3 {
                let m = (x + 1) / 2;
                alternative = Some(ScreenClass::ProductCaseB { n: m - 1, m });
            }
            ScreenClass::OddSphere { n: x }
        }
        (&[a, b], &[c]) => {
            let m = c + 1;
            // One of a, b must be 2m − 1 = 2c + 1; the other is n.
            if b == 2 * c + 1 {
                ScreenClass::Product { n: a, m }
            } else if a == 2 * c + 1 {
                ScreenClass::Product { n: b, m }
            } else {
                ScreenClass::Fail
            }
        }
        _ => ScreenClass::Fail,
    };
    DegreeScreenResult {
        classification,
        alternative,
        g_degrees,
        h_degrees,
        g_minus_h,
        h_minus_g,
        note: "a pass is necessary but not sufficient; the cohomology computation decides".into(),
    }
}

pub fn onishchik_screen(g: &str, h: &str) -> Result<DegreeScreenResult> {
    Ok(onishchik_screen_specs(&parse_group_spec(g)?, &parse_group_spec(h)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spec_examples() {
        let r = onishchik_screen("SO(8)", "SO(3)xSO(5)").unwrap();
        assert_eq!(r.g_degrees, vec![3, 7, 7, 11]);
        assert_eq!(r.h_degrees, vec![3, 3, 7]);
        assert_eq!(r.classification, ScreenClass::Product { n: 11, m: 4 });
        let r = onishchik_screen("SU(5)", "SU(2)xSU(3)").unwrap();
        assert_eq!(r.classification, ScreenClass::Product { n: 9, m: 4 });
        let r = onishchik_screen("SU(4)", "Sp(2)").unwrap();
        assert_eq!(r.classification, ScreenClass::OddSphere { n: 5 });
        assert_eq!(r.alternative, Some(ScreenClass::ProductCaseB { n: 2, m: 3 }));
    }

    #[test]
    fn failures() {
        assert!(!onishchik_screen("SU(4)", "SU(2)").unwrap().passes());
        assert!(!onishchik_screen("G2", "SU(3)xSU(2)").unwrap().passes());
    }

    #[test]
    fn product_identity_holds() {
        // (1+t^n)(1+t^{2m−1}) = (1+t^{m−1}) · P(G)/P(H) at the level of degree multisets.
        let r = onishchik_screen("SO(8)", "SO(3)xSO(5)").unwrap();
        if let ScreenClass::Product { n, m } = r.classification {
            let mut lhs = r.h_degrees.clone();
            lhs.extend([n, 2 * m - 1]);
            lhs.retain({
                let mut removed = false;
                move |&x| {
                    if !removed && x == m - 1 {
                        removed = true;
                        false
                    } else {
                        true
                    }
                }
            });
            lhs.sort_unstable();
            assert_eq!(lhs, r.g_degrees);
        } else {
            panic!("expected a product");
        }
    }
}
