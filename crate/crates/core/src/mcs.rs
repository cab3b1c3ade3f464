//! Output-sensitive MCS enumeration over a binarized suffix tree.
//!
//! An MCS of length at least 2 is `S[p..q+|u|-1]` where `u` is its longest
//! border and `p < q` are consecutive occurrences of `u` that are both
//! left-maximal (different preceding characters, string start counting as its
//! own character) and right-maximal (different following characters). The
//! second condition means `p` and `q` are leaves under different children of
//! the node labelled `u`, so every such pair is met exactly once during a
//! bottom-up traversal.
//!
//! At each binary node the occurrences of the smaller side are looked up in
//! the larger side's class sets (predecessor and successor over the classes
//! other than their own), giving at most two candidates per element. A
//! candidate survives only if no occurrence of `u` lies strictly between its
//! ends. Synthetic nodes see only part of the node's occurrences, so their
//! candidates are checked once the whole original node has been merged.
//! Length-1 MCSs come from a separate linear scan.

use crate::error::Result;
use crate::oracle::McsSpan;
use crate::pos_set::{ClassedPosSets, LeftClass};
use crate::suffix_tree::{binarize, build_suffix_tree, BinarizedTree};
use crate::text::Text;

/// Two occurrences `p < q` of a common prefix of length `depth`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CandidatePair {
    pub p: u32,
    pub q: u32,
    pub depth: usize,
}

impl CandidatePair {
    pub fn span(&self) -> McsSpan {
        McsSpan::new(self.p as usize, self.q as usize + self.depth - 1)
    }
}

/// Counters gathered during [`mcs_fast_with_stats`].
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct FastStats {
    /// Elements iterated on the smaller side, summed over all binary nodes.
    pub smaller_side_elements: u64,
    pub candidates: u64,
    pub pair_spans: u64,
    pub singleton_spans: u64,
}

/// Spans `(i, i)` whose letter differs from both neighbours.
pub fn singleton_mcs(t: &Text) -> Result<Vec<McsSpan>> {
    t.require_nonempty()?;
    let s = t.as_bytes();
    let n = s.len();
    Ok((0..n)
        .filter(|&i| (i == 0 || s[i - 1] != s[i]) && (i + 1 == n || s[i] != s[i + 1]))
        .map(|i| McsSpan::new(i + 1, i + 1))
        .collect())
}

/// Candidates for one binary node: each element of `smaller` paired with its
/// nearest predecessor and successor among the classes of `larger` that
/// differ from its own.
pub fn pairs_at_node(smaller: &ClassedPosSets, larger: &ClassedPosSets, depth: usize) -> Vec<CandidatePair> {
    neighbour_pairs(smaller, larger, depth, PairRule::LeftMaximal)
}

/// Which larger-side classes an element may be paired with.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum PairRule {
    /// Only classes other than the element's own.
    LeftMaximal,
    /// Every class.
    Any,
}

fn neighbour_pairs(
    smaller: &ClassedPosSets,
    larger: &ClassedPosSets,
    depth: usize,
    rule: PairRule,
) -> Vec<CandidatePair> {
    let mut out = Vec::new();
    for (class, set) in smaller.classes() {
        let exclude = match rule {
            PairRule::LeftMaximal => Some(class),
            PairRule::Any => None,
        };
        for e in set {
            if let Some(p) = larger.pred_excluding(e, exclude) {
                out.push(CandidatePair { p, q: e, depth });
            }
            if let Some(q) = larger.succ_excluding(e, exclude) {
                out.push(CandidatePair { p: e, q, depth });
            }
        }
    }
    out
}

/// Keeps the pairs with no element of `union` strictly between `p` and `q`.
pub fn filter_consecutive(cands: Vec<CandidatePair>, union: &ClassedPosSets) -> Vec<CandidatePair> {
    cands
        .into_iter()
        .filter(|c| union.succ_excluding(c.p, None) == Some(c.q))
        .collect()
}

pub fn mcs_fast(t: &Text) -> Result<Vec<McsSpan>> {
    mcs_fast_with_stats(t).map(|(spans, _)| spans)
}

struct Pending {
    sets: ClassedPosSets,
    /// Unfiltered candidates from synthetic nodes of the enclosing original node.
    candidates: Vec<CandidatePair>,
}

pub fn mcs_fast_with_stats(t: &Text) -> Result<(Vec<McsSpan>, FastStats)> {
    let tree = build_suffix_tree(t)?;
    let bin = binarize(&tree);
    let mut stats = FastStats::default();
    let mut spans = singleton_mcs(t)?;
    stats.singleton_spans = spans.len() as u64;
    for pair in collect_pairs(t, &bin, PairRule::LeftMaximal, &mut stats)? {
        spans.push(pair.span());
    }
    stats.pair_spans = spans.len() as u64 - stats.singleton_spans;

    spans.sort_unstable();
    if let Some(w) = spans.windows(2).find(|w| w[0] == w[1]) {
        panic!("span {} emitted twice", w[0]);
    }
    Ok((spans, stats))
}

/// Total number of 1-runs over the OC arrays of all suffixes, from the
/// suffix tree.
///
/// For suffix `j`, let `next_k` be the nearest `j' > j` sharing a prefix of
/// length `k` with it (`next_0 = j + 1`). The OC array of `S[j..n]` has its 1s
/// at `next_k - j + k`, so its 1-runs are the distinct values of `next_k`.
/// Every `next_k ≠ next_0` is the later end of a pair of consecutive
/// occurrences of a node label lying under different children of that node,
/// and each such pair arises from exactly one `j`. Hence the total is
/// `n + R - E`, with `R` the number of those pairs and `E` the number of
/// positions `j` with `S[j] = S[j+1]` (where `next_1 = next_0`).
pub fn suffix_run_total_via_tree(t: &Text) -> Result<usize> {
    let tree = build_suffix_tree(t)?;
    let bin = binarize(&tree);
    let mut stats = FastStats::default();
    let straddling = collect_pairs(t, &bin, PairRule::Any, &mut stats)?.len();
    let equal_neighbours = t.windows(2).filter(|w| w[0] == w[1]).count();
    Ok(t.len() + straddling - equal_neighbours)
}

fn collect_pairs(
    t: &Text,
    bin: &BinarizedTree,
    rule: PairRule,
    stats: &mut FastStats,
) -> Result<Vec<CandidatePair>> {
    let s = t.as_bytes();
    let n = s.len();
    let mut slots: Vec<Option<Pending>> = (0..bin.node_count()).map(|_| None).collect();
    let mut found = Vec::new();
    let mut failure = None;

    bin.bottom_up(|id| {
        if failure.is_some() {
            return;
        }
        let node = bin.node(id);
        let Some([l, r]) = node.children else {
            let suffix = node.suffix.expect("binary leaf without suffix");
            let sets = if suffix <= n {
                ClassedPosSets::singleton(LeftClass::of(s, suffix), suffix as u32)
            } else {
                // The sentinel suffix is not an occurrence of anything nonempty.
                ClassedPosSets::new()
            };
            slots[id] = Some(Pending {
                sets,
                candidates: Vec::new(),
            });
            return;
        };
        let left = slots[l].take().expect("child visited before parent");
        let right = slots[r].take().expect("child visited before parent");
        let (small, large) = if left.sets.len() <= right.sets.len() {
            (left, right)
        } else {
            (right, left)
        };

        let mut candidates = small.candidates;
        candidates.extend(large.candidates);
        if node.depth > 0 {
            stats.smaller_side_elements += small.sets.len() as u64;
            let fresh = neighbour_pairs(&small.sets, &large.sets, node.depth, rule);
            stats.candidates += fresh.len() as u64;
            candidates.extend(fresh);
        }
        let sets = match large.sets.merge(small.sets) {
            Ok(sets) => sets,
            Err(e) => {
                failure = Some(e);
                return;
            }
        };
        if !node.synthetic && !candidates.is_empty() {
            found.extend(filter_consecutive(std::mem::take(&mut candidates), &sets));
        }
        slots[id] = Some(Pending { sets, candidates });
    });

    match failure {
        Some(e) => Err(e),
        None => Ok(found),
    }
}
