//! Projective braid closures in `RP^3` and their lifts to `S^3`.
//!
//! The projective closure of an `n`-braid `X` joins the bottom endpoint at
//! position `i` to the antipodal top endpoint `n + 1 - i`, so its components are
//! the cycles of `mu(X Delta)`. The lift to the double cover is the ordinary
//! closure of `X tau(X)`.
//!
//! Sign convention: strands run downward and `sigma_i` is a positive crossing.
//! Linking numbers in `RP^3` are half-integers, so every matrix here stores
//! doubled linking numbers. The `RP^3` matrix is computed through the lift:
//! the doubled entry for components `K_i, K_j` is the sum of `S^3` linking
//! numbers over all pairs of their lifted components.

use serde::{Deserialize, Serialize};

use crate::braid::{delta, BraidWord, Permutation};

/// A projective braid closure with its component partition.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClosureDescriptor {
    pub braid: BraidWord,
    /// `mu(X Delta_n)`.
    pub closure_perm: Permutation,
    /// Cycles of `closure_perm` as one-based strand positions.
    pub components: Vec<Vec<usize>>,
    pub component_lengths: Vec<usize>,
}

impl ClosureDescriptor {
    pub fn component_count(&self) -> usize {
        self.components.len()
    }

    /// Component index of each zero-based strand position.
    pub fn component_of(&self) -> Vec<usize> {
        component_index(&self.components, self.braid.strands())
    }

    pub fn is_knot(&self) -> bool {
        self.components.len() == 1
    }
}

fn component_index(cycles: &[Vec<usize>], n: usize) -> Vec<usize> {
    let mut of = vec![0; n];
    for (c, cycle) in cycles.iter().enumerate() {
        for &s in cycle {
            of[s - 1] = c;
        }
    }
    of
}

fn half_twist(n: usize) -> BraidWord {
    delta(n).expect("strand count is positive")
}

pub fn describe_closure(w: &BraidWord) -> ClosureDescriptor {
    let closure_perm = w.concat(&half_twist(w.strands())).permutation();
    let components = closure_perm.cycles();
    let component_lengths = components.iter().map(Vec::len).collect();
    ClosureDescriptor {
        braid: w.clone(),
        closure_perm,
        components,
        component_lengths,
    }
}

/// The lift `X tau(X)` of the projective closure.
pub fn lift(w: &BraidWord) -> BraidWord {
    w.concat(&w.tau())
}

/// For each component of the lift's closure, the projective component it covers.
pub fn lift_component_map(w: &BraidWord) -> Vec<usize> {
    let projective = describe_closure(w);
    let proj_of = projective.component_of();
    lift(w)
        .permutation()
        .cycles0()
        .iter()
        .map(|cycle| proj_of[cycle[0]])
        .collect()
}

/// Symmetric integer matrix with zero diagonal holding `2 lk(K_i, K_j)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DoubledLinkingMatrix {
    entries: Vec<Vec<i64>>,
}

impl DoubledLinkingMatrix {
    pub fn zeros(size: usize) -> Self {
        DoubledLinkingMatrix {
            entries: vec![vec![0; size]; size],
        }
    }

    pub fn from_rows(entries: Vec<Vec<i64>>) -> Option<Self> {
        let m = DoubledLinkingMatrix { entries };
        m.is_valid().then_some(m)
    }

    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.entries[i][j]
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.entries
    }

    /// Symmetric, square, zero diagonal.
    pub fn is_valid(&self) -> bool {
        let n = self.entries.len();
        self.entries.iter().all(|r| r.len() == n)
            && (0..n).all(|i| {
                self.entries[i][i] == 0 && (0..n).all(|j| self.entries[i][j] == self.entries[j][i])
            })
    }

    fn add_symmetric(&mut self, i: usize, j: usize, v: i64) {
        self.entries[i][j] += v;
        self.entries[j][i] += v;
    }

    /// Off-diagonal entries `(i < j)` in row-major order.
    pub fn off_diagonal(&self) -> Vec<i64> {
        let n = self.size();
        let mut out = Vec::with_capacity(n * n.saturating_sub(1) / 2);
        for i in 0..n {
            for j in i + 1..n {
                out.push(self.entries[i][j]);
            }
        }
        out
    }

    fn permuted(&self, order: &[usize]) -> Self {
        let entries = order
            .iter()
            .map(|&i| order.iter().map(|&j| self.entries[i][j]).collect())
            .collect();
        DoubledLinkingMatrix { entries }
    }
}

/// Signed crossing counts between the components of the ordinary closure.
///
/// `comp_of[s]` is the component of the strand starting at zero-based position `s`.
fn crossing_matrix(w: &BraidWord, comp_of: &[usize], size: usize) -> DoubledLinkingMatrix {
    let mut m = DoubledLinkingMatrix::zeros(size);
    let mut at: Vec<usize> = (0..w.strands()).collect();
    for &k in w.letters() {
        let j = k.unsigned_abs() as usize;
        let (a, b) = (comp_of[at[j - 1]], comp_of[at[j]]);
        if a != b {
            m.add_symmetric(a, b, k.signum() as i64);
        }
        at.swap(j - 1, j);
    }
    m
}

/// Doubled linking matrix of the ordinary closure in `S^3`; components are the
/// cycles of `mu(w)` ordered by smallest strand.
pub fn s3_doubled_linking_matrix(w: &BraidWord) -> DoubledLinkingMatrix {
    let cycles = w.permutation().cycles();
    let comp_of = component_index(&cycles, w.strands());
    crossing_matrix(w, &comp_of, cycles.len())
}

/// Doubled linking matrix of the projective closure, components ordered as in
/// [`describe_closure`].
pub fn rp3_doubled_linking_matrix(w: &BraidWord) -> DoubledLinkingMatrix {
    let projective = describe_closure(w);
    let covers = lift_component_map(w);
    let lifted = s3_doubled_linking_matrix(&lift(w));
    let mut m = DoubledLinkingMatrix::zeros(projective.component_count());
    for a in 0..lifted.size() {
        for b in a + 1..lifted.size() {
            let (i, j) = (covers[a], covers[b]);
            if i != j {
                // lk in S^3 is half the doubled entry
                m.add_symmetric(i, j, lifted.get(a, b) / 2);
            }
        }
    }
    m
}

/// Witness statistics of the diagram given by the braid word.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagramStats {
    pub arcs: usize,
    pub crossings: usize,
    pub all_positive: bool,
    /// Signed self-crossing count of each projective component.
    pub per_component_self_crossings: Vec<i64>,
}

pub fn diagram_stats(w: &BraidWord) -> DiagramStats {
    let projective = describe_closure(w);
    let comp_of = projective.component_of();
    let mut selfc = vec![0i64; projective.component_count()];
    let mut at: Vec<usize> = (0..w.strands()).collect();
    for &k in w.letters() {
        let j = k.unsigned_abs() as usize;
        let (a, b) = (comp_of[at[j - 1]], comp_of[at[j]]);
        if a == b {
            selfc[a] += k.signum() as i64;
        }
        at.swap(j - 1, j);
    }
    DiagramStats {
        arcs: w.strands(),
        crossings: w.len(),
        all_positive: w.is_positive(),
        per_component_self_crossings: selfc,
    }
}

/// Order-independent fingerprint of a projective closure.
///
/// Only isotopy invariants enter: component count, the `Z/2` homology class
/// of each component (cycle length mod 2), the doubled `RP^3` linking matrix,
/// and the lift's component count and doubled linking matrix. Matrices are
/// brought to a canonical labeling.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct InvariantSignature {
    pub components: usize,
    /// Sorted classes in `H_1(RP^3) = Z/2`.
    pub component_classes: Vec<u8>,
    pub dlk_rp3: DoubledLinkingMatrix,
    pub lift_components: usize,
    pub dlk_s3_lift: DoubledLinkingMatrix,
}

pub fn invariant_signature(w: &BraidWord) -> InvariantSignature {
    let projective = describe_closure(w);
    let classes: Vec<u8> = projective
        .component_lengths
        .iter()
        .map(|&l| (l % 2) as u8)
        .collect();
    let dlk = rp3_doubled_linking_matrix(w);
    let (order, dlk_rp3) = canonical_relabeling(&dlk, &classes);
    let component_classes = order.iter().map(|&i| classes[i]).collect();
    let lifted = s3_doubled_linking_matrix(&lift(w));
    let (_, dlk_s3_lift) = canonical_relabeling(&lifted, &vec![0; lifted.size()]);
    InvariantSignature {
        components: projective.component_count(),
        component_classes,
        dlk_rp3,
        lift_components: lifted.size(),
        dlk_s3_lift,
    }
}

/// Relabels components to the lexicographically smallest lower-triangle sequence,
/// after grouping by `(label, sorted row)`. Returns the new order and matrix.
pub fn canonical_relabeling(
    m: &DoubledLinkingMatrix,
    labels: &[u8],
) -> (Vec<usize>, DoubledLinkingMatrix) {
    let n = m.size();
    let keys: Vec<(u8, Vec<i64>)> = (0..n)
        .map(|i| {
            let mut row = m.entries[i].clone();
            row.sort_unstable();
            (labels[i], row)
        })
        .collect();
    let mut by_key: Vec<usize> = (0..n).collect();
    by_key.sort_by(|&a, &b| keys[a].cmp(&keys[b]));
    // slot k may only hold an element whose key equals the k-th sorted key
    let slot_key: Vec<&(u8, Vec<i64>)> = by_key.iter().map(|&i| &keys[i]).collect();

    struct Search<'a> {
        m: &'a DoubledLinkingMatrix,
        keys: &'a [(u8, Vec<i64>)],
        slot_key: &'a [&'a (u8, Vec<i64>)],
        best: Option<(Vec<i64>, Vec<usize>)>,
    }

    impl Search<'_> {
        fn run(&mut self, order: &mut Vec<usize>, used: &mut [bool], seq: &mut Vec<i64>) {
            let k = order.len();
            if let Some((best_seq, _)) = &self.best {
                let prefix = &best_seq[..seq.len()];
                if seq.as_slice() > prefix {
                    return;
                }
            }
            if k == self.keys.len() {
                let better = match &self.best {
                    None => true,
                    Some((b, _)) => seq.as_slice() < b.as_slice(),
                };
                if better {
                    self.best = Some((seq.clone(), order.clone()));
                }
                return;
            }
            for i in 0..self.keys.len() {
                if used[i] || &self.keys[i] != self.slot_key[k] {
                    continue;
                }
                let before = seq.len();
                seq.extend(order.iter().map(|&j| self.m.entries[i][j]));
                order.push(i);
                used[i] = true;
                self.run(order, used, seq);
                used[i] = false;
                order.pop();
                seq.truncate(before);
            }
        }
    }

    let mut search = Search {
        m,
        keys: &keys,
        slot_key: &slot_key,
        best: None,
    };
    search.run(
        &mut Vec::with_capacity(n),
        &mut vec![false; n],
        &mut Vec::new(),
    );
    let order = search.best.map(|(_, o)| o).unwrap_or_default();
    let canon = m.permuted(&order);
    (order, canon)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn word(n: usize, letters: &[i32]) -> BraidWord {
        BraidWord::new(n, letters.to_vec()).unwrap()
    }

    #[test]
    fn describe_examples() {
        assert_eq!(describe_closure(&word(2, &[1, 1])).component_count(), 1);
        let d3 = describe_closure(&delta(3).unwrap());
        assert_eq!(d3.component_count(), 3);
        assert_eq!(d3.component_lengths, vec![1, 1, 1]);
        assert_eq!(describe_closure(&word(1, &[])).component_count(), 1);
    }

    #[test]
    fn lift_examples() {
        assert_eq!(lift(&word(2, &[1])).letters(), &[1, 1]);
        assert!(lift(&word(3, &[])).is_empty());
        assert_eq!(lift(&word(4, &[1, 2])).letters(), &[1, 2, 3, 2]);
    }

    #[test]
    fn lift_component_map_examples() {
        // identity on 2 strands: one projective component of length 2, covered twice
        assert_eq!(lift_component_map(&word(2, &[])), vec![0, 0]);
        assert_eq!(lift_component_map(&delta(3).unwrap()), vec![0, 1, 2]);
        assert_eq!(lift_component_map(&word(3, &[1, 2, 1, 2, 1])), vec![0]);
    }

    #[test]
    fn s3_linking_examples() {
        let hopf = s3_doubled_linking_matrix(&word(2, &[1, 1]));
        assert_eq!(hopf.rows(), &[vec![0, 2], vec![2, 0]]);
        let unlink = s3_doubled_linking_matrix(&word(2, &[]));
        assert_eq!(unlink.rows(), &[vec![0, 0], vec![0, 0]]);
        let d4 = delta(4).unwrap();
        let full = s3_doubled_linking_matrix(&d4.concat(&d4));
        assert_eq!(full.off_diagonal(), vec![2; 6]);
    }

    #[test]
    fn rp3_linking_of_lines() {
        let m = rp3_doubled_linking_matrix(&delta(3).unwrap());
        assert_eq!(m.off_diagonal(), vec![1, 1, 1]);
        assert_eq!(rp3_doubled_linking_matrix(&word(1, &[])).size(), 1);
        // two Hopf-linked lines from a single crossing
        let m = rp3_doubled_linking_matrix(&word(2, &[1]));
        assert_eq!(m.off_diagonal(), vec![1]);
    }

    #[test]
    fn diagram_stats_examples() {
        let s = diagram_stats(&word(3, &[1, 2, 1, 2, 1]));
        assert_eq!((s.arcs, s.crossings, s.all_positive), (3, 5, true));
        let s = diagram_stats(&word(4, &[]));
        assert_eq!((s.arcs, s.crossings), (4, 0));
        let s = diagram_stats(&word(4, &[1, 3, 2, 1, 3, 2, 1, 3, 2]));
        assert_eq!((s.arcs, s.crossings), (4, 9));
    }

    #[test]
    fn signature_examples() {
        let t = word(2, &[1, 1]);
        let conj = word(2, &[-1, 1, 1, 1]);
        assert_eq!(invariant_signature(&t), invariant_signature(&conj));
        let t35 = invariant_signature(&word(3, &[1, 2, 1, 2, 1]));
        assert_eq!((t35.components, t35.lift_components), (1, 1));
        let lines = invariant_signature(&delta(3).unwrap());
        assert_eq!(lines.components, 3);
        assert_eq!(lines.dlk_rp3.off_diagonal(), vec![1, 1, 1]);
    }

    #[test]
    fn relabeling_is_order_independent() {
        let m = DoubledLinkingMatrix::from_rows(vec![
            vec![0, 3, 1, 0],
            vec![3, 0, 2, 5],
            vec![1, 2, 0, 1],
            vec![0, 5, 1, 0],
        ])
        .unwrap();
        let (_, canon) = canonical_relabeling(&m, &[0; 4]);
        for order in crate::braid::perm::all_permutations(4) {
            let idx: Vec<usize> = (0..4).map(|i| order.apply0(i)).collect();
            let p = m.permuted(&idx);
            assert_eq!(canonical_relabeling(&p, &[0; 4]).1, canon);
        }
    }
}
