//! Rational cohomology of G/H_S through W-invariants on the torus of H_S.

pub mod harmonics;
pub mod invariants;
pub mod quotient;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pair::CorankOnePair;
use crate::weyl::{restrict_faithful, stabilizer_data, RestrictedGroup, Stabilizer};

pub use harmonics::{coinvariant_cross_check, CoinvariantCheck, HarmonicModel, DEFAULT_COINVARIANT_CAP};
pub use invariants::{basic_invariants, reflection_group_invariants, InvariantSet};
pub use quotient::{default_degree_cap, heven_quotient, GradedQuotient, Total};

/// d = dim H*(G/H_S) = 2 · dim of the even quotient, with m, n when d = 4.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CohomologyDim {
    pub quotient: GradedQuotient,
    /// None when the quotient is infinite-dimensional.
    pub d: Option<usize>,
    pub mn: Option<(usize, usize)>,
}

pub fn cohomology_dim_d(pair: &CorankOnePair, weyl_cap: usize, degree_cap: Option<usize>) -> Result<(CohomologyDim, Stabilizer, RestrictedGroup)> {
    let stab = stabilizer_data(&pair.rs, &pair.v, weyl_cap)?;
    let wv_s = restrict_faithful(&stab.group.elements, &pair.s_basis)?;
    if wv_s.kernel_size != 1 {
        return Err(Error::Internal(format!("W_v acts on s with kernel of order {}", wv_s.kernel_size)));
    }
    let quotient = heven_quotient(pair, &wv_s, degree_cap)?;
    let d = quotient.finite_total().map(|t| 2 * t);
    let mn = match (d, quotient.top_degree()) {
        (Some(4), Some(m)) => Some((m, pair.dim_ghs - m)),
        _ => None,
    };
    Ok((CohomologyDim { quotient, d, mn }, stab, wv_s))
}

/// Independent count: d_S = 2 · dim of the quotient with W_H trivial on s.
pub fn dimension_oracle(pair: &CorankOnePair, degree_cap: Option<usize>) -> Result<Option<usize>> {
    let q = heven_quotient(pair, &RestrictedGroup::trivial(pair.s_basis.clone()), degree_cap)?;
    Ok(q.finite_total().map(|t| 2 * t))
}
