//! Quadratic-time ground truth for MCS enumeration.
//!
//! Two independent routes live here. [`mcs_definitional`] applies the
//! definition of a closed string to every substring. [`mcs_oracle`] scans the
//! OC arrays of all suffixes: `S[i..j]` is an MCS iff
//!
//! * `OC_{S[i..n]}[j-i+1] = 1`,
//! * `j = n` or `OC_{S[i..n]}[j-i+2] = 0`,
//! * `i = 1` or `OC_{S[i-1..n]}[j-i+2] = 0`.

use std::fmt;

use crate::borders::{oc_bits_into, prefix_oc_one_runs, OcArray};
use crate::error::Result;
use crate::text::Text;

/// One maximal closed substring occurrence, 1-based and inclusive.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct McsSpan {
    pub start: usize,
    pub end: usize,
}

impl McsSpan {
    pub fn new(start: usize, end: usize) -> Self {
        debug_assert!(1 <= start && start <= end);
        Self { start, end }
    }

    pub fn len(&self) -> usize {
        self.end - self.start + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

impl From<(usize, usize)> for McsSpan {
    fn from((start, end): (usize, usize)) -> Self {
        Self::new(start, end)
    }
}

impl fmt::Display for McsSpan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}\t{}", self.start, self.end)
    }
}

fn closed_bytes(s: &[u8]) -> bool {
    let n = s.len();
    if n == 1 {
        return true;
    }
    (1..n).any(|l| {
        let border = &s[..l];
        border == &s[n - l..] && !(1..n - l).any(|start| &s[start..start + l] == border)
    })
}

/// Closedness straight from the definition: length 1, or some nonempty
/// border occurring only as prefix and suffix.
pub fn closed_definitional(t: &Text) -> Result<bool> {
    t.require_nonempty()?;
    Ok(closed_bytes(t.as_bytes()))
}

pub fn is_mcs_definitional(t: &Text, i: usize, j: usize) -> Result<bool> {
    t.check_span(i, j)?;
    let s = t.as_bytes();
    let closed = |a: usize, b: usize| closed_bytes(&s[a - 1..b]);
    Ok(closed(i, j) && (i == 1 || !closed(i - 1, j)) && (j == t.len() || !closed(i, j + 1)))
}

/// Every `(i, j)` passing [`is_mcs_definitional`], with closedness memoized per
/// substring. Cubic or worse; meant for short strings.
pub fn mcs_definitional(t: &Text) -> Result<Vec<McsSpan>> {
    t.require_nonempty()?;
    let s = t.as_bytes();
    let n = s.len();
    // closed[a][b] for 0-based inclusive a..=b
    let closed: Vec<Vec<bool>> = (0..n)
        .map(|a| (0..n).map(|b| b >= a && closed_bytes(&s[a..=b])).collect())
        .collect();
    let mut spans = Vec::new();
    for a in 0..n {
        for b in a..n {
            if closed[a][b] && (a == 0 || !closed[a - 1][b]) && (b + 1 == n || !closed[a][b + 1]) {
                spans.push(McsSpan::new(a + 1, b + 1));
            }
        }
    }
    Ok(spans)
}

/// OC array of the suffix starting at 1-based position `i`.
pub fn suffix_oc(t: &Text, i: usize) -> Result<OcArray> {
    t.check_pos(i)?;
    let mut scratch = Vec::new();
    let mut bits = Vec::new();
    oc_bits_into(&t.as_bytes()[i - 1..], &mut scratch, &mut bits);
    Ok(OcArray::from_bits(bits))
}

/// All MCS spans by the suffix-OC scan, sorted by `(start, end)`.
///
/// Suffixes are visited left to right, keeping the OC array of `S[i-1..n]`
/// from the previous step; only two arrays are alive at any time.
pub fn mcs_oracle(t: &Text) -> Result<Vec<McsSpan>> {
    t.require_nonempty()?;
    let s = t.as_bytes();
    let n = s.len();
    let mut scratch = Vec::with_capacity(n);
    let mut current = Vec::with_capacity(n);
    let mut previous = Vec::with_capacity(n);
    let mut spans = Vec::new();

    for i in 1..=n {
        oc_bits_into(&s[i - 1..], &mut scratch, &mut current);
        let len = current.len();
        for k in 1..=len {
            if !current[k - 1] || (k < len && current[k]) {
                continue;
            }
            if i > 1 && previous[k] {
                continue;
            }
            spans.push(McsSpan::new(i, i + k - 1));
        }
        std::mem::swap(&mut current, &mut previous);
    }
    Ok(spans)
}

/// Sum over all suffixes of the number of 1-runs in their OC arrays; an
/// upper bound on the number of MCSs.
pub fn suffix_run_total(t: &Text) -> Result<usize> {
    t.require_nonempty()?;
    let s = t.as_bytes();
    let mut scratch = Vec::with_capacity(s.len());
    Ok((0..s.len())
        .map(|i| prefix_oc_one_runs(&s[i..], &mut scratch))
        .sum())
}
