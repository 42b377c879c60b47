//! Coefficient-level verification of the corpus identities.

use rayon::prelude::*;

use crate::corpus::{Corpus, Identity};
use crate::error::Result;
use crate::qseries::{enumerate_condition_partitions, nahm_expand_sum, pochhammer_inv, ConditionKind, MAX_ENUMERATION_ORDER};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SideReport {
    pub index: usize,
    pub terms: usize,
    /// First exponent where the side differs from the product.
    pub first_mismatch: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityReport {
    pub name: String,
    pub order: usize,
    pub sides: Vec<SideReport>,
    /// Partition condition, order compared and first mismatch with the product.
    pub condition: Option<(ConditionKind, usize, Option<usize>)>,
}

impl IdentityReport {
    pub fn ok(&self) -> bool {
        self.sides.iter().all(|s| s.first_mismatch.is_none())
            && self.condition.is_none_or(|(_, _, m)| m.is_none())
    }

    pub fn summary(&self) -> String {
        let mut s = format!("{}: ", self.name);
        let sides: Vec<String> = self
            .sides
            .iter()
            .map(|r| match r.first_mismatch {
                None => format!("side {} ok to q^{}", r.index + 1, self.order),
                Some(n) => format!("side {} differs at q^{n}", r.index + 1),
            })
            .collect();
        s.push_str(&sides.join(", "));
        if let Some((kind, n, m)) = self.condition {
            match m {
                None => s.push_str(&format!("; {kind} partitions ok to q^{n}")),
                Some(e) => s.push_str(&format!("; {kind} partitions differ at q^{e}")),
            }
        }
        s
    }
}

pub fn verify_identity(id: &Identity, order: usize) -> Result<IdentityReport> {
    let product = pochhammer_inv(&id.product, order)?;
    let sides = id
        .sides
        .par_iter()
        .enumerate()
        .map(|(index, terms)| {
            let s = nahm_expand_sum(terms, order)?;
            Ok(SideReport { index, terms: terms.len(), first_mismatch: s.first_mismatch(&product) })
        })
        .collect::<Result<Vec<_>>>()?;
    let condition = match id.condition {
        Some(kind) => {
            let n = order.min(60).min(MAX_ENUMERATION_ORDER);
            let parts = enumerate_condition_partitions(kind, n)?;
            Some((kind, n, parts.first_mismatch(&product.truncate(n))))
        }
        None => None,
    };
    Ok(IdentityReport { name: id.name.clone(), order, sides, condition })
}

pub fn verify_identities(corpus: &Corpus, order: usize) -> Result<Vec<IdentityReport>> {
    corpus.identities().par_iter().map(|id| verify_identity(id, order)).collect()
}
