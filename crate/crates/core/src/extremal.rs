//! The binary string whose OC array is `1 0 1 00 1 000 1 ...`, structural
//! laws of the OC array, and empirical bound reports.

use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::borders::{border_array, oc_array, p_array};
use crate::error::{Error, Result};
use crate::mcs::{mcs_fast, suffix_run_total_via_tree};
use crate::oracle::{mcs_oracle, suffix_run_total};
use crate::text::Text;

/// Length-`n` prefix of `u = a · Π_{k≥1} comp(u[k]) u[1..k]` over `{a, b}`.
pub fn extremal_string(n: usize) -> Text {
    let mut u = vec![b'a'];
    let mut k = 1;
    while u.len() < n {
        let flipped = if u[k - 1] == b'a' { b'b' } else { b'a' };
        u.push(flipped);
        u.extend_from_within(..k);
        k += 1;
    }
    u.truncate(n);
    Text::new(u)
}

fn is_triangular(i: usize) -> bool {
    // i = k(k+1)/2  <=>  8i + 1 is an odd square
    let d = 8 * i + 1;
    let r = d.isqrt();
    r * r == d
}

/// Number of triangular numbers `k(k+1)/2` with `k ≥ 1` not exceeding `n`.
pub fn triangular_count(n: usize) -> usize {
    ((8 * n + 1).isqrt() - 1) / 2
}

/// Whether the OC array of [`extremal_string`]`(n)` has its 1s exactly at
/// the triangular positions.
pub fn verify_extremal_oc(n: usize) -> bool {
    if n == 0 {
        return false;
    }
    let oc = oc_array(&extremal_string(n)).expect("n >= 1");
    oc.as_bits()
        .iter()
        .enumerate()
        .all(|(i, &bit)| bit == is_triangular(i + 1))
}

/// `2√n + 2`: bound on the 1-runs of an OC array of length `n`.
pub fn one_run_bound(n: usize) -> f64 {
    2.0 * (n as f64).sqrt() + 2.0
}

/// `(4/3)(n+1)^1.5 + 2n + 4`: the per-suffix bound summed over all suffixes.
pub fn mcs_count_bound(n: usize) -> f64 {
    4.0 / 3.0 * ((n + 1) as f64).powf(1.5) + 2.0 * n as f64 + 4.0
}

/// Whether `n ≥ m + ⌊(m-1)/2⌋²` for `m` 1-runs in a length-`n` OC array.
pub fn run_count_inequality_holds(n: usize, one_runs: usize) -> bool {
    let half = one_runs.saturating_sub(1) / 2;
    n >= one_runs + half * half
}

/// First 1-based `i` where `OC[i] = 1` but `B[i] ≠ P[i]`, or `i > 1` and
/// `B[i-1] ≠ P[i-1]`.
pub fn closed_prefix_border_violation(t: &Text) -> Result<Option<usize>> {
    let b = border_array(t);
    let p = p_array(&b);
    let oc = oc_array(t)?;
    let (b, p) = (b.as_slice(), p.as_slice());
    Ok(oc
        .as_bits()
        .iter()
        .enumerate()
        .find(|&(i, &bit)| bit && (b[i] != p[i] || (i > 0 && b[i - 1] != p[i - 1])))
        .map(|(i, _)| i + 1))
}

/// A window `OC[i..] = 1 0^{k1} 1^t 0^{k2} 1` with `k1, k2, t > 0` and
/// `P[i] ≥ k1 + k2`, which no string admits. Returns `(i, k1, t, k2)`.
pub fn forbidden_window(t: &Text) -> Result<Option<(usize, usize, usize, usize)>> {
    let oc = oc_array(t)?;
    let p = p_array(&border_array(t));
    let runs = crate::borders::oc_runs(&oc);
    let runs = runs.runs();
    let mut end = 0; // 0-based index just past the current run
    for (idx, &(bit, len)) in runs.iter().enumerate() {
        end += len;
        if !bit || idx + 4 >= runs.len() {
            continue;
        }
        // runs[idx] is a 1-run ending at 1-based position `end`; the pattern
        // needs the following 0-run, 1-run, 0-run and then a 1.
        let (_, k1) = runs[idx + 1];
        let (_, middle) = runs[idx + 2];
        let (_, k2) = runs[idx + 3];
        if p.as_slice()[end - 1] >= k1 + k2 {
            return Ok(Some((end, k1, middle, k2)));
        }
    }
    Ok(None)
}

/// Where the texts of a [`bound_report`] come from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Source {
    Extremal,
    Random { seed: u64, sigma: usize },
}

/// `sigma` symbols: lowercase letters when they suffice, raw bytes otherwise.
pub fn alphabet_of_size(sigma: usize) -> Result<Vec<u8>> {
    match sigma {
        0 | 257.. => Err(Error::AlphabetSize(sigma)),
        1..=26 => Ok((0..sigma as u8).map(|c| b'a' + c).collect()),
        _ => Ok((0..sigma).map(|c| c as u8).collect()),
    }
}

/// Seeded uniform text over `alphabet`, reproducible across runs.
pub fn random_text(len: usize, alphabet: &[u8], seed: u64) -> Result<Text> {
    if alphabet.is_empty() {
        return Err(Error::EmptyAlphabet);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok(Text::new(
        (0..len)
            .map(|_| alphabet[rng.gen_range(0..alphabet.len())])
            .collect::<Vec<u8>>(),
    ))
}

impl Source {
    pub fn generate(&self, n: usize) -> Result<Text> {
        match *self {
            Source::Extremal => Ok(extremal_string(n)),
            Source::Random { seed, sigma } => {
                let alphabet = alphabet_of_size(sigma)?;
                random_text(
                    n,
                    &alphabet,
                    seed ^ (n as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15),
                )
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundRow {
    pub n: usize,
    pub mcs_count: usize,
    pub oc_one_runs: usize,
    pub suffix_run_total: usize,
    pub bound_sqrt: f64,
    pub bound_mcs: f64,
}

impl BoundRow {
    pub fn holds(&self) -> bool {
        self.mcs_count <= self.suffix_run_total
            && self.suffix_run_total as f64 <= self.bound_mcs
            && self.oc_one_runs as f64 <= self.bound_sqrt
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct BoundReport {
    pub rows: Vec<BoundRow>,
}

pub const REPORT_HEADER: &str = "n\tmcs_count\toc_one_runs\tsuffix_run_total\tbound_sqrt\tbound_mcs";

impl BoundReport {
    pub fn all_hold(&self) -> bool {
        self.rows.iter().all(BoundRow::holds)
    }

    /// Header line, then one tab-separated row per length. Bounds are printed
    /// with three decimals.
    pub fn to_tsv(&self) -> String {
        let mut out = String::from(REPORT_HEADER);
        out.push('\n');
        for r in &self.rows {
            let _ = writeln!(
                out,
                "{}\t{}\t{}\t{}\t{:.3}\t{:.3}",
                r.n, r.mcs_count, r.oc_one_runs, r.suffix_run_total, r.bound_sqrt, r.bound_mcs
            );
        }
        out
    }
}

const ORACLE_LIMIT: usize = 2000;
const OVERLAP_START: usize = 1000;

fn mcs_count(t: &Text) -> Result<usize> {
    let n = t.len();
    if n > ORACLE_LIMIT {
        return Ok(mcs_fast(t)?.len());
    }
    let oracle = mcs_oracle(t)?.len();
    if n >= OVERLAP_START {
        let fast = mcs_fast(t)?.len();
        if fast != oracle {
            return Err(Error::CountMismatch { n, fast, oracle });
        }
    }
    Ok(oracle)
}

/// Direct per-suffix scan up to the oracle limit, suffix-tree count beyond.
fn run_total(t: &Text) -> Result<usize> {
    if t.len() > ORACLE_LIMIT {
        suffix_run_total_via_tree(t)
    } else {
        suffix_run_total(t)
    }
}

pub fn bound_row(t: &Text) -> Result<BoundRow> {
    let n = t.len();
    Ok(BoundRow {
        n,
        mcs_count: mcs_count(t)?,
        oc_one_runs: oc_array(t)?.one_runs(),
        suffix_run_total: run_total(t)?,
        bound_sqrt: one_run_bound(n),
        bound_mcs: mcs_count_bound(n),
    })
}

pub fn bound_report(lengths: &[usize], source: Source) -> Result<BoundReport> {
    if lengths.is_empty() {
        return Err(Error::NoLengths);
    }
    let rows = lengths
        .iter()
        .map(|&n| bound_row(&source.generate(n)?))
        .collect::<Result<_>>()?;
    Ok(BoundReport { rows })
}
