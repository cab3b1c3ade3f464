//! Border arrays, longest repeated prefixes and OC arrays.
//!
//! For a string `S[1..n]`:
//!
//! * `B[i]` is the length of the longest proper border of `S[1..i]`;
//! * `P[i] = max_{j <= i} B[j]` is the length of the longest prefix of
//!   `S[1..i]` occurring at least twice in `S[1..i]`;
//! * `OC[i]` is 1 exactly when `S[1..i]` is closed, and satisfies
//!   `P[i] = OC[1] + ... + OC[i] - 1`.
//!
//! All three arrays are computed in linear time. Accessors take 1-based
//! indices; the raw slices are 0-based.

use crate::error::{Error, Result};
use crate::text::Text;

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct BorderArray {
    b: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PArray {
    p: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct OcArray {
    bits: Vec<bool>,
}

/// Run-length encoding of an [`OcArray`]: alternating `(bit, length)` blocks.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct OcRle {
    runs: Vec<(bool, usize)>,
}

/// Failure-function recurrence over a raw byte slice.
pub(crate) fn border_lengths(s: &[u8]) -> Vec<usize> {
    let mut b = vec![0; s.len()];
    for i in 1..s.len() {
        let mut k = b[i - 1];
        while k > 0 && s[i] != s[k] {
            k = b[k - 1];
        }
        if s[i] == s[k] {
            k += 1;
        }
        b[i] = k;
    }
    b
}

/// OC bits of every prefix of `s`, written into `out`. `scratch` holds the
/// border array and is reused across calls.
pub(crate) fn oc_bits_into(s: &[u8], scratch: &mut Vec<usize>, out: &mut Vec<bool>) {
    scratch.clear();
    scratch.resize(s.len(), 0);
    out.clear();
    if s.is_empty() {
        return;
    }
    out.push(true);
    let mut longest = 0;
    for i in 1..s.len() {
        let mut k = scratch[i - 1];
        while k > 0 && s[i] != s[k] {
            k = scratch[k - 1];
        }
        if s[i] == s[k] {
            k += 1;
        }
        scratch[i] = k;
        // P grows by at most one per step, and grows exactly at closed prefixes.
        let closed = k > longest;
        if closed {
            longest = k;
        }
        out.push(closed);
    }
}

pub fn border_array(t: &Text) -> BorderArray {
    BorderArray {
        b: border_lengths(t.as_bytes()),
    }
}

pub fn p_array(b: &BorderArray) -> PArray {
    let p =
        b.b.iter()
            .scan(0, |max, &x| {
                *max = (*max).max(x);
                Some(*max)
            })
            .collect();
    PArray { p }
}

pub fn oc_array(t: &Text) -> Result<OcArray> {
    t.require_nonempty()?;
    let p = p_array(&border_array(t));
    Ok(OcArray::from_p(&p))
}

pub fn is_closed(t: &Text) -> Result<bool> {
    let oc = oc_array(t)?;
    Ok(oc.bits[oc.bits.len() - 1])
}

pub fn oc_runs(oc: &OcArray) -> OcRle {
    let mut runs: Vec<(bool, usize)> = Vec::new();
    for &bit in &oc.bits {
        match runs.last_mut() {
            Some((b, len)) if *b == bit => *len += 1,
            _ => runs.push((bit, 1)),
        }
    }
    OcRle { runs }
}

/// Number of 1-runs in the OC array of `s`, without materializing it.
pub(crate) fn prefix_oc_one_runs(s: &[u8], scratch: &mut Vec<u32>) -> usize {
    if s.is_empty() {
        return 0;
    }
    scratch.clear();
    scratch.resize(s.len(), 0);
    let b = scratch.as_mut_slice();
    let mut runs = 1;
    let mut prev_closed = true;
    let mut longest = 0u32;
    for i in 1..s.len() {
        let c = s[i];
        let mut k = b[i - 1] as usize;
        while k > 0 && c != s[k] {
            k = b[k - 1] as usize;
        }
        if c == s[k] {
            k += 1;
        }
        b[i] = k as u32;
        let closed = k as u32 > longest;
        if closed {
            longest = k as u32;
            runs += usize::from(!prev_closed);
        }
        prev_closed = closed;
    }
    runs
}

/// Number of maximal blocks of 1s in the OC array of `s`.
pub(crate) fn count_one_runs(bits: &[bool]) -> usize {
    let mut count = 0;
    let mut prev = false;
    for &bit in bits {
        if bit && !prev {
            count += 1;
        }
        prev = bit;
    }
    count
}

impl BorderArray {
    pub fn from_lengths(b: Vec<usize>) -> Self {
        Self { b }
    }

    pub fn len(&self) -> usize {
        self.b.len()
    }

    pub fn is_empty(&self) -> bool {
        self.b.is_empty()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.b
    }

    /// `B[i]` for 1-based `i`.
    pub fn get(&self, i: usize) -> Result<usize> {
        self.check(i)?;
        Ok(self.b[i - 1])
    }

    /// Every border length of the prefix of length `i`, 0 included, in
    /// ascending order. Obtained by iterating `B`.
    pub fn borders_at(&self, i: usize) -> Result<Vec<usize>> {
        self.check(i)?;
        let mut out = vec![0];
        let mut k = self.b[i - 1];
        while k > 0 {
            out.push(k);
            k = self.b[k - 1];
        }
        out[1..].reverse();
        Ok(out)
    }

    fn check(&self, i: usize) -> Result<()> {
        if i == 0 || i > self.b.len() {
            Err(Error::PositionOutOfRange {
                pos: i,
                len: self.b.len(),
            })
        } else {
            Ok(())
        }
    }
}

impl PArray {
    pub fn len(&self) -> usize {
        self.p.len()
    }

    pub fn is_empty(&self) -> bool {
        self.p.is_empty()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.p
    }

    pub fn get(&self, i: usize) -> Result<usize> {
        if i == 0 || i > self.p.len() {
            return Err(Error::PositionOutOfRange {
                pos: i,
                len: self.p.len(),
            });
        }
        Ok(self.p[i - 1])
    }
}

impl OcArray {
    pub fn from_bits(bits: Vec<bool>) -> Self {
        Self { bits }
    }

    /// First entry 1, then consecutive differences of `P`.
    pub fn from_p(p: &PArray) -> Self {
        let mut bits = Vec::with_capacity(p.len());
        if !p.is_empty() {
            bits.push(true);
        }
        bits.extend(p.p.windows(2).map(|w| w[1] > w[0]));
        Self { bits }
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn as_bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn get(&self, i: usize) -> Result<bool> {
        if i == 0 || i > self.bits.len() {
            return Err(Error::PositionOutOfRange {
                pos: i,
                len: self.bits.len(),
            });
        }
        Ok(self.bits[i - 1])
    }

    /// The array as 0/1 integers.
    pub fn to_digits(&self) -> Vec<u8> {
        self.bits.iter().map(|&b| b as u8).collect()
    }

    pub fn one_runs(&self) -> usize {
        count_one_runs(&self.bits)
    }
}

impl OcRle {
    pub fn runs(&self) -> &[(bool, usize)] {
        &self.runs
    }

    /// Number of blocks of 1s.
    pub fn one_runs(&self) -> usize {
        self.runs.iter().filter(|(bit, _)| *bit).count()
    }

    pub fn expand(&self) -> OcArray {
        let bits = self
            .runs
            .iter()
            .flat_map(|&(bit, len)| std::iter::repeat_n(bit, len))
            .collect();
        OcArray { bits }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const EXAMPLE: &str = "aabaaaabaaba";

    fn naive_longest_border(s: &[u8]) -> usize {
        (0..s.len())
            .rev()
            .find(|&l| s[..l] == s[s.len() - l..])
            .unwrap_or(0)
    }

    fn naive_border_set(s: &[u8]) -> Vec<usize> {
        (0..s.len()).filter(|&l| s[..l] == s[s.len() - l..]).collect()
    }

    /// Longest prefix of `s` with two occurrences in `s`.
    fn naive_longest_repeated_prefix(s: &[u8]) -> usize {
        (0..s.len())
            .rev()
            .find(|&l| (1..=s.len() - l).any(|start| s[start..start + l] == s[..l]))
            .unwrap_or(0)
    }

    fn bits(digits: &[u8]) -> Vec<bool> {
        digits.iter().map(|&d| d == 1).collect()
    }

    #[test]
    fn example_border_array() {
        let b = border_array(&Text::from(EXAMPLE));
        assert_eq!(b.as_slice(), &[0, 1, 0, 1, 2, 2, 2, 3, 4, 5, 3, 4]);
        assert_eq!(border_array(&Text::from("aaaa")).as_slice(), &[0, 1, 2, 3]);
        assert_eq!(border_array(&Text::from("abc")).as_slice(), &[0, 0, 0]);
        assert!(border_array(&Text::from("")).is_empty());
    }

    #[test]
    fn example_borders_at() {
        let b = border_array(&Text::from(EXAMPLE));
        assert_eq!(b.borders_at(6).unwrap(), vec![0, 1, 2]);
        assert_eq!(b.borders_at(10).unwrap(), vec![0, 1, 2, 5]);
        assert_eq!(
            border_array(&Text::from("aaaa")).borders_at(4).unwrap(),
            vec![0, 1, 2, 3]
        );
        assert_eq!(
            b.borders_at(13),
            Err(Error::PositionOutOfRange { pos: 13, len: 12 })
        );
        assert!(b.borders_at(0).is_err());
    }

    #[test]
    fn example_p_array() {
        let p = p_array(&border_array(&Text::from(EXAMPLE)));
        assert_eq!(p.as_slice(), &[0, 1, 1, 1, 2, 2, 2, 3, 4, 5, 5, 5]);
        assert_eq!(p_array(&border_array(&Text::from("abc"))).as_slice(), &[0, 0, 0]);
        assert_eq!(
            p_array(&border_array(&Text::from("aaaa"))).as_slice(),
            &[0, 1, 2, 3]
        );
    }

    #[test]
    fn example_oc_array() {
        let oc = oc_array(&Text::from(EXAMPLE)).unwrap();
        assert_eq!(oc.to_digits(), vec![1, 1, 0, 0, 1, 0, 0, 1, 1, 1, 0, 0]);
        assert_eq!(oc_array(&Text::from("a")).unwrap().to_digits(), vec![1]);
        assert_eq!(oc_array(&Text::from("ab")).unwrap().to_digits(), vec![1, 0]);
        assert_eq!(oc_array(&Text::from("")), Err(Error::EmptyText));
    }

    #[test]
    fn closedness_examples() {
        assert!(is_closed(&Text::from("abaab")).unwrap());
        assert!(is_closed(&Text::from("ababa")).unwrap());
        assert!(!is_closed(&Text::from("ababaab")).unwrap());
        assert!(!is_closed(&Text::from("ab")).unwrap());
        assert!(is_closed(&Text::from("a")).unwrap());
        assert_eq!(is_closed(&Text::from("")), Err(Error::EmptyText));
    }

    #[test]
    fn example_runs() {
        let oc = oc_array(&Text::from(EXAMPLE)).unwrap();
        let rle = oc_runs(&oc);
        assert_eq!(
            rle.runs(),
            &[
                (true, 2),
                (false, 2),
                (true, 1),
                (false, 2),
                (true, 3),
                (false, 2)
            ]
        );
        assert_eq!(rle.one_runs(), 3);
        assert_eq!(oc.one_runs(), 3);

        let rle = oc_runs(&OcArray::from_bits(bits(&[1, 1, 1])));
        assert_eq!(rle.runs(), &[(true, 3)]);
        assert_eq!(rle.one_runs(), 1);
        let rle = oc_runs(&OcArray::from_bits(bits(&[1, 0])));
        assert_eq!(rle.runs(), &[(true, 1), (false, 1)]);
        assert_eq!(rle.one_runs(), 1);
    }

    #[test]
    fn scratch_route_matches_p_route() {
        let mut scratch = Vec::new();
        let mut out = Vec::new();
        for s in ["", "a", "ab", EXAMPLE, "abaaabbabababaa", "aabb", "aaba"] {
            oc_bits_into(s.as_bytes(), &mut scratch, &mut out);
            let p = p_array(&border_array(&Text::from(s)));
            assert_eq!(out, OcArray::from_p(&p).as_bits(), "{s}");
            let mut counting = Vec::new();
            assert_eq!(
                prefix_oc_one_runs(s.as_bytes(), &mut counting),
                count_one_runs(&out)
            );
        }
    }

    #[test]
    fn same_oc_different_borders() {
        let x = Text::from("aaba");
        let y = Text::from("aabb");
        assert_eq!(oc_array(&x).unwrap(), oc_array(&y).unwrap());
        assert_ne!(border_array(&x), border_array(&y));
    }

    fn small_text() -> impl Strategy<Value = Vec<u8>> {
        prop::collection::vec(prop::sample::select(vec![b'a', b'b', b'c']), 1..40)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn border_array_matches_naive(s in small_text()) {
            let b = border_array(&Text::new(s.clone()));
            for i in 1..=s.len() {
                prop_assert_eq!(b.get(i).unwrap(), naive_longest_border(&s[..i]));
                prop_assert_eq!(b.borders_at(i).unwrap(), naive_border_set(&s[..i]));
            }
        }

        #[test]
        fn array_invariants(s in small_text()) {
            let t = Text::new(s.clone());
            let b = border_array(&t);
            let p = p_array(&b);
            let oc = oc_array(&t).unwrap();
            let (b, p, oc) = (b.as_slice(), p.as_slice(), oc.as_bits());
            prop_assert_eq!(b[0], 0);
            prop_assert_eq!(p[0], 0);
            prop_assert!(oc[0]);
            let mut ones = 0;
            for i in 0..s.len() {
                prop_assert!(b[i] <= i);
                if i > 0 {
                    prop_assert!(b[i] <= b[i - 1] + 1);
                    prop_assert!(p[i] >= p[i - 1] && p[i] <= p[i - 1] + 1);
                }
                prop_assert_eq!(p[i], naive_longest_repeated_prefix(&s[..=i]));
                ones += oc[i] as usize;
                prop_assert_eq!(ones - 1, p[i]);
            }
        }

        #[test]
        fn rle_round_trip(s in small_text()) {
            let oc = oc_array(&Text::new(s)).unwrap();
            let rle = oc_runs(&oc);
            prop_assert_eq!(rle.expand(), oc.clone());
            prop_assert!(rle.runs().windows(2).all(|w| w[0].0 != w[1].0));
            prop_assert_eq!(rle.one_runs(), oc.one_runs());
        }

        #[test]
        fn squares_and_higher_powers_are_closed(
            u in prop::collection::vec(prop::sample::select(vec![b'a', b'b', b'c']), 1..8),
            extra in 0usize..20,
        ) {
            let len = 2 * u.len() + extra;
            let w: Vec<u8> = u.iter().copied().cycle().take(len).collect();
            prop_assert!(is_closed(&Text::new(w)).unwrap());
        }
    }
}
