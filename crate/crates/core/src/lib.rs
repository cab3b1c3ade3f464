//! Open/closed structure of strings and enumeration of maximal closed
//! substrings (MCS).
//!
//! A string is *closed* when it has length 1 or has a nonempty border with no
//! internal occurrences. An MCS is an occurrence `S[i..j]` of a closed
//! substring that cannot be extended by one character to the left or to the
//! right into a longer closed substring.
//!
//! The crate offers three routes to the MCS set:
//!
//! * [`oracle::mcs_definitional`]: straight from the definition, memoized over
//!   all substrings. Only usable for short strings.
//! * [`oracle::mcs_oracle`]: quadratic scan over the OC arrays of all suffixes.
//! * [`mcs::mcs_fast`]: bottom-up traversal of a binarized suffix tree that
//!   pairs consecutive, left- and right-maximal occurrences of each node label.
//!
//! All positions exchanged through the public API are 1-based and inclusive.
//!
//! ```
//! use mcs_core::{mcs::mcs_fast, oracle::mcs_oracle, Text};
//!
//! let text = Text::from("abaabab");
//! let spans = mcs_fast(&text).unwrap();
//! assert_eq!(spans, mcs_oracle(&text).unwrap());
//! assert_eq!(spans.len(), 9);
//! ```

pub mod borders;
mod error;
pub mod extremal;
pub mod mcs;
pub mod oracle;
pub mod pos_set;
pub mod suffix_tree;
mod text;

pub use borders::{BorderArray, OcArray, OcRle, PArray};
pub use error::{Error, Result};
pub use oracle::McsSpan;
pub use text::Text;
