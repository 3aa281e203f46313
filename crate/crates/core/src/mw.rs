//! The model links `W_g(a_0, ..., a_g)`.
//!
//! Component `K_i` is a copy of `T_proj(a_i + 2, a_i)` in a thin tube around the
//! `i`-th line of a Hopf configuration. The braid realization cables the half
//! twist `Delta_{g+1}` along blocks of `a_i` strands and then appends the torus
//! braid `torus_braid(a_i, a_i + 2)` inside each block.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::braid::BraidWord;
use crate::closure::{
    describe_closure, invariant_signature, rp3_doubled_linking_matrix, DoubledLinkingMatrix,
    InvariantSignature,
};
use crate::torus::torus_braid;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MwError {
    #[error("invalid composition {0:?}: parts must be positive and there must be at least one")]
    InvalidComposition(Vec<usize>),
    #[error("model mismatch in {field}: expected {expected}, measured {actual}")]
    ModelMismatch {
        field: &'static str,
        expected: String,
        actual: String,
    },
    #[error("the positivity check needs at least two components")]
    NeedsTwoComponents,
}

/// Maximal node count of an irreducible plane curve of degree `d`.
pub fn max_crossings(d: usize) -> usize {
    if d < 2 {
        return 0;
    }
    (d - 1) * (d - 2) / 2
}

/// A composition `(a_0, ..., a_g)` of `d - 2`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct ModelParams {
    parts: Vec<usize>,
}

impl ModelParams {
    pub fn new(parts: Vec<usize>) -> Result<Self, MwError> {
        if parts.is_empty() || parts.contains(&0) {
            return Err(MwError::InvalidComposition(parts));
        }
        Ok(ModelParams { parts })
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn degree(&self) -> usize {
        self.parts.iter().sum::<usize>() + 2
    }

    pub fn genus_index(&self) -> usize {
        self.parts.len() - 1
    }
}

impl TryFrom<Vec<usize>> for ModelParams {
    type Error = MwError;
    fn try_from(parts: Vec<usize>) -> Result<Self, MwError> {
        ModelParams::new(parts)
    }
}

impl From<ModelParams> for Vec<usize> {
    fn from(w: ModelParams) -> Self {
        w.parts
    }
}

/// Invariants the model is expected to have.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExpectedInvariants {
    pub components: usize,
    /// Torus parameters `(a_i + 2, a_i)` of each component.
    pub component_params: Vec<(usize, usize)>,
    /// `a_i a_j` off the diagonal.
    pub dlk_matrix: DoubledLinkingMatrix,
    pub per_component_cr: Vec<usize>,
    pub total_cr: usize,
    pub w_lambda_abs: usize,
    /// Whether `(s^2 + s)/2 - (g + 1) = max_crossings(d) - g - 1` with `s = sum a_i`.
    pub identity_check: bool,
}

pub fn expected_invariants(wp: &ModelParams) -> ExpectedInvariants {
    let a = wp.parts();
    let (d, g) = (wp.degree(), wp.genus_index());
    let rows = a
        .iter()
        .enumerate()
        .map(|(i, &ai)| {
            a.iter()
                .enumerate()
                .map(|(j, &aj)| if i == j { 0 } else { (ai * aj) as i64 })
                .collect()
        })
        .collect();
    let per_component_cr: Vec<usize> = a.iter().map(|&ai| (ai + 2) * (ai - 1) / 2).collect();
    let cross: usize = (0..a.len())
        .flat_map(|i| (i + 1..a.len()).map(move |j| (i, j)))
        .map(|(i, j)| a[i] * a[j])
        .sum();
    let total_cr = per_component_cr.iter().sum::<usize>() + cross;
    let s = d - 2;
    let identity_check = (s * s + s) / 2 - (g + 1) == max_crossings(d) - g - 1
        && total_cr == max_crossings(d) - g - 1;
    ExpectedInvariants {
        components: g + 1,
        component_params: a.iter().map(|&ai| (ai + 2, ai)).collect(),
        dlk_matrix: DoubledLinkingMatrix::from_rows(rows).expect("a_i a_j is symmetric"),
        per_component_cr,
        total_cr,
        w_lambda_abs: max_crossings(d) - g,
        identity_check,
    }
}

/// Layout of the braid: where each block ends up and which letters it owns.
struct Construction {
    braid: BraidWord,
    /// Starting strand (zero-based) of each block before the local words.
    final_offsets: Vec<usize>,
    /// Letter range of each block's local word.
    local_ranges: Vec<std::ops::Range<usize>>,
}

fn construct(wp: &ModelParams) -> Construction {
    let a = wp.parts();
    let n = wp.degree() - 2;
    // blocks in their current left-to-right order
    let mut order: Vec<usize> = (0..a.len()).collect();
    let mut letters: Vec<i32> = Vec::new();
    // cabled half twist as a bubble sort reversing the block order
    let k = order.len();
    for pass in 0..k {
        for slot in 0..k - 1 - pass {
            let offset: usize = order[..slot].iter().map(|&b| a[b]).sum();
            let (s, t) = (a[order[slot]], a[order[slot + 1]]);
            // move block of size t across block of size s
            for i in (0..s).rev() {
                for step in 0..t {
                    letters.push((offset + i + step + 1) as i32);
                }
            }
            order.swap(slot, slot + 1);
        }
    }
    let mut final_offsets = vec![0; a.len()];
    let mut offset = 0;
    for &b in &order {
        final_offsets[b] = offset;
        offset += a[b];
    }
    let mut local_ranges = Vec::with_capacity(a.len());
    for (i, &ai) in a.iter().enumerate() {
        let local = torus_braid(ai, ai as i64 + 2).expect("a_i and a_i + 2 share parity");
        let start = letters.len();
        letters.extend(local.letters().iter().map(|&l| l + final_offsets[i] as i32));
        local_ranges.push(start..letters.len());
    }
    Construction {
        braid: BraidWord::new(n, letters).expect("letters lie inside the strand range"),
        final_offsets,
        local_ranges,
    }
}

/// Braid on `d - 2` strands whose projective closure models `W_g`.
pub fn model_braid(wp: &ModelParams) -> BraidWord {
    construct(wp).braid
}

/// A verified model: the braid, the expected invariants and the measured signature.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ModelLink {
    pub params: ModelParams,
    pub braid: BraidWord,
    pub expected: ExpectedInvariants,
    pub actual: InvariantSignature,
    /// Measured matrix with components ordered by block.
    pub dlk_by_block: DoubledLinkingMatrix,
}

fn mismatch<T: std::fmt::Debug>(field: &'static str, expected: T, actual: T) -> MwError {
    MwError::ModelMismatch {
        field,
        expected: format!("{expected:?}"),
        actual: format!("{actual:?}"),
    }
}

pub fn verify_model(wp: &ModelParams) -> Result<ModelLink, MwError> {
    let expected = expected_invariants(wp);
    let built = construct(wp);
    let w = &built.braid;
    let closure = describe_closure(w);
    if closure.component_count() != expected.components {
        return Err(mismatch(
            "components",
            expected.components,
            closure.component_count(),
        ));
    }
    // each block must close up into exactly one component
    let comp_of = closure.component_of();
    let starts: Vec<usize> = wp
        .parts()
        .iter()
        .scan(0, |acc, &a| {
            let s = *acc;
            *acc += a;
            Some(s)
        })
        .collect();
    let block_comp: Vec<usize> = starts.iter().map(|&o| comp_of[o]).collect();
    for (i, &off) in starts.iter().enumerate() {
        let owned = (off..off + wp.parts()[i]).all(|s| comp_of[s] == block_comp[i]);
        let len = closure.component_lengths[block_comp[i]];
        if !owned || len != wp.parts()[i] {
            return Err(mismatch("component_lengths", wp.parts()[i], len));
        }
    }
    let measured = rp3_doubled_linking_matrix(w);
    let rows: Vec<Vec<i64>> = block_comp
        .iter()
        .map(|&ci| block_comp.iter().map(|&cj| measured.get(ci, cj)).collect())
        .collect();
    let dlk_by_block =
        DoubledLinkingMatrix::from_rows(rows).expect("relabeled matrix stays symmetric");
    if dlk_by_block != expected.dlk_matrix {
        return Err(mismatch(
            "dlk_matrix",
            expected.dlk_matrix.rows(),
            dlk_by_block.rows(),
        ));
    }
    if w.len() != expected.total_cr {
        return Err(mismatch("total_cr", expected.total_cr, w.len()));
    }
    if !w.is_positive() {
        return Err(mismatch("all_positive", true, false));
    }
    for (i, range) in built.local_ranges.iter().enumerate() {
        let ai = wp.parts()[i];
        let local: Vec<i32> = w.letters()[range.clone()]
            .iter()
            .map(|&l| l - built.final_offsets[i] as i32)
            .collect();
        let reference = torus_braid(ai, ai as i64 + 2).expect("parity holds");
        if local != reference.letters() {
            return Err(mismatch("local_word", reference.letters().to_vec(), local));
        }
        if local.len() != expected.per_component_cr[i] {
            return Err(mismatch(
                "per_component_cr",
                expected.per_component_cr[i],
                local.len(),
            ));
        }
    }
    if !expected.identity_check {
        return Err(mismatch("identity_check", true, false));
    }
    Ok(ModelLink {
        params: wp.clone(),
        braid: w.clone(),
        actual: invariant_signature(w),
        expected,
        dlk_by_block,
    })
}

/// Every pair of components links positively, so the link cannot be a
/// maximally writhed link whose writhe equals its own linking contribution.
pub fn positive_linking_check(wp: &ModelParams) -> Result<bool, MwError> {
    if wp.genus_index() < 1 {
        return Err(MwError::NeedsTwoComponents);
    }
    let model = verify_model(wp)?;
    let m = &model.dlk_by_block;
    Ok(m.off_diagonal().iter().all(|&x| x > 0))
}

/// CLI-facing summary of a verified model.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ModelSummary {
    pub parts: Vec<usize>,
    pub d: usize,
    pub g: usize,
    pub components: usize,
    pub dlk_matrix: Vec<Vec<i64>>,
    pub total_cr: usize,
    pub per_component_cr: Vec<usize>,
    pub w_lambda_abs: usize,
    pub verified: bool,
}

pub fn summarize(model: &ModelLink) -> ModelSummary {
    ModelSummary {
        parts: model.params.parts().to_vec(),
        d: model.params.degree(),
        g: model.params.genus_index(),
        components: model.actual.components,
        dlk_matrix: model.dlk_by_block.rows().to_vec(),
        total_cr: model.braid.len(),
        per_component_cr: model.expected.per_component_cr.clone(),
        w_lambda_abs: model.expected.w_lambda_abs,
        verified: true,
    }
}

/// All compositions of `total` into positive parts, in lexicographic order.
pub fn compositions(total: usize) -> Vec<Vec<usize>> {
    if total == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for first in 1..=total {
        for mut rest in compositions(total - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn wp(parts: &[usize]) -> ModelParams {
        ModelParams::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn node_counts() {
        assert_eq!(max_crossings(4), 3);
        assert_eq!(max_crossings(3), 1);
        assert_eq!(max_crossings(2), 0);
    }

    #[test]
    fn expected_examples() {
        let e = expected_invariants(&wp(&[1, 1]));
        assert_eq!((e.components, e.total_cr, e.w_lambda_abs), (2, 1, 2));
        assert_eq!(e.dlk_matrix.off_diagonal(), vec![1]);
        let e = expected_invariants(&wp(&[1, 1, 2]));
        assert_eq!(e.dlk_matrix.off_diagonal(), vec![1, 2, 2]);
        assert_eq!(e.per_component_cr, vec![0, 0, 2]);
        assert_eq!(e.total_cr, 7);
        let e = expected_invariants(&wp(&[5]));
        assert_eq!(e.total_cr, max_crossings(7) - 1);
        assert_eq!(e.component_params, vec![(7, 5)]);
    }

    #[test]
    fn braids() {
        assert_eq!(model_braid(&wp(&[1, 1])).letters(), &[1]);
        assert_eq!(model_braid(&wp(&[2])).letters(), &[1, 1]);
        assert_eq!(model_braid(&wp(&[1, 1, 1])).letters(), &[1, 2, 1]);
        assert!(ModelParams::new(vec![]).is_err());
        assert!(ModelParams::new(vec![1, 0]).is_err());
    }

    #[test]
    fn verification_examples() {
        assert_eq!(verify_model(&wp(&[1, 1, 2])).unwrap().braid.len(), 7);
        assert_eq!(verify_model(&wp(&[4])).unwrap().braid.len(), 9);
        let m = verify_model(&wp(&[1])).unwrap();
        assert_eq!((m.braid.len(), m.actual.components), (0, 1));
    }

    #[test]
    fn positivity() {
        assert!(positive_linking_check(&wp(&[1, 1])).unwrap());
        assert!(positive_linking_check(&wp(&[2, 3])).unwrap());
        assert!(positive_linking_check(&wp(&[1, 1, 1])).unwrap());
        assert_eq!(
            positive_linking_check(&wp(&[3])),
            Err(MwError::NeedsTwoComponents)
        );
    }

    #[test]
    fn composition_counts() {
        for n in 1..=8 {
            assert_eq!(compositions(n).len(), 1 << (n - 1));
        }
    }
}
