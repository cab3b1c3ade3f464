//! AVL sets of text positions, and position sets split by the character
//! preceding each occurrence.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use crate::error::{Error, Result};

type Link = Option<Box<AvlNode>>;

#[derive(Debug, Clone)]
struct AvlNode {
    key: u32,
    height: u8,
    left: Link,
    right: Link,
}

fn height(link: &Link) -> u8 {
    link.as_ref().map_or(0, |n| n.height)
}

impl AvlNode {
    fn leaf(key: u32) -> Box<Self> {
        Box::new(Self {
            key,
            height: 1,
            left: None,
            right: None,
        })
    }

    fn update(&mut self) {
        self.height = 1 + height(&self.left).max(height(&self.right));
    }

    fn balance_factor(&self) -> i16 {
        height(&self.left) as i16 - height(&self.right) as i16
    }
}

fn rotate_right(mut node: Box<AvlNode>) -> Box<AvlNode> {
    let mut pivot = node.left.take().expect("rotate_right needs a left child");
    node.left = pivot.right.take();
    node.update();
    pivot.right = Some(node);
    pivot.update();
    pivot
}

fn rotate_left(mut node: Box<AvlNode>) -> Box<AvlNode> {
    let mut pivot = node.right.take().expect("rotate_left needs a right child");
    node.right = pivot.left.take();
    node.update();
    pivot.left = Some(node);
    pivot.update();
    pivot
}

fn rebalance(mut node: Box<AvlNode>) -> Box<AvlNode> {
    node.update();
    match node.balance_factor() {
        2 => {
            if node.left.as_ref().map_or(0, |l| l.balance_factor()) < 0 {
                node.left = node.left.take().map(rotate_left);
            }
            rotate_right(node)
        }
        -2 => {
            if node.right.as_ref().map_or(0, |r| r.balance_factor()) > 0 {
                node.right = node.right.take().map(rotate_right);
            }
            rotate_left(node)
        }
        _ => node,
    }
}

/// Returns `Err(node)` unchanged when `key` is already present.
fn insert_at(link: Link, key: u32) -> std::result::Result<Box<AvlNode>, Box<AvlNode>> {
    let Some(mut node) = link else {
        return Ok(AvlNode::leaf(key));
    };
    match key.cmp(&node.key) {
        Ordering::Equal => Err(node),
        Ordering::Less => match insert_at(node.left.take(), key) {
            Ok(child) => {
                node.left = Some(child);
                Ok(rebalance(node))
            }
            Err(child) => {
                node.left = Some(child);
                Err(node)
            }
        },
        Ordering::Greater => match insert_at(node.right.take(), key) {
            Ok(child) => {
                node.right = Some(child);
                Ok(rebalance(node))
            }
            Err(child) => {
                node.right = Some(child);
                Err(node)
            }
        },
    }
}

/// A height-balanced set of distinct positions.
#[derive(Debug, Clone, Default)]
pub struct PosSet {
    root: Link,
    len: usize,
}

impl PosSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn singleton(x: u32) -> Self {
        Self {
            root: Some(AvlNode::leaf(x)),
            len: 1,
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn height(&self) -> usize {
        height(&self.root) as usize
    }

    pub fn insert(&mut self, x: u32) -> Result<()> {
        match insert_at(self.root.take(), x) {
            Ok(root) => {
                self.root = Some(root);
                self.len += 1;
                Ok(())
            }
            Err(root) => {
                self.root = Some(root);
                Err(Error::DuplicatePosition(x))
            }
        }
    }

    pub fn contains(&self, x: u32) -> bool {
        let mut cur = &self.root;
        while let Some(node) = cur {
            match x.cmp(&node.key) {
                Ordering::Equal => return true,
                Ordering::Less => cur = &node.left,
                Ordering::Greater => cur = &node.right,
            }
        }
        false
    }

    /// Smallest element strictly greater than `x`.
    pub fn succ(&self, x: u32) -> Option<u32> {
        let mut best = None;
        let mut cur = &self.root;
        while let Some(node) = cur {
            if node.key > x {
                best = Some(node.key);
                cur = &node.left;
            } else {
                cur = &node.right;
            }
        }
        best
    }

    /// Largest element strictly smaller than `x`.
    pub fn pred(&self, x: u32) -> Option<u32> {
        let mut best = None;
        let mut cur = &self.root;
        while let Some(node) = cur {
            if node.key < x {
                best = Some(node.key);
                cur = &node.right;
            } else {
                cur = &node.left;
            }
        }
        best
    }

    pub fn iter(&self) -> Iter<'_> {
        let mut iter = Iter { stack: Vec::new() };
        iter.push_left(&self.root);
        iter
    }

    /// Union of two disjoint sets. Elements of the smaller set are inserted
    /// one by one into the larger.
    pub fn merge(self, other: PosSet) -> Result<PosSet> {
        let (small, mut large) = if self.len <= other.len {
            (self, other)
        } else {
            (other, self)
        };
        for x in small.iter() {
            large.insert(x)?;
        }
        Ok(large)
    }
}

impl FromIterator<u32> for PosSet {
    /// Duplicates are ignored.
    fn from_iter<I: IntoIterator<Item = u32>>(iter: I) -> Self {
        let mut set = PosSet::new();
        for x in iter {
            let _ = set.insert(x);
        }
        set
    }
}

impl PartialEq for PosSet {
    fn eq(&self, other: &Self) -> bool {
        self.len == other.len && self.iter().eq(other.iter())
    }
}

impl Eq for PosSet {}

pub struct Iter<'a> {
    stack: Vec<&'a AvlNode>,
}

impl<'a> Iter<'a> {
    fn push_left(&mut self, mut link: &'a Link) {
        while let Some(node) = link {
            self.stack.push(node);
            link = &node.left;
        }
    }
}

impl Iterator for Iter<'_> {
    type Item = u32;

    fn next(&mut self) -> Option<u32> {
        let node = self.stack.pop()?;
        self.push_left(&node.right);
        Some(node.key)
    }
}

impl<'a> IntoIterator for &'a PosSet {
    type Item = u32;
    type IntoIter = Iter<'a>;

    fn into_iter(self) -> Iter<'a> {
        self.iter()
    }
}

/// Class of an occurrence, given by the byte preceding it. Position 1 has no
/// predecessor and belongs to `Begin`, which differs from every byte class.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum LeftClass {
    Begin,
    Byte(u8),
}

impl LeftClass {
    /// Class of 1-based position `pos` in `text`.
    pub fn of(text: &[u8], pos: usize) -> Self {
        if pos <= 1 {
            LeftClass::Begin
        } else {
            LeftClass::Byte(text[pos - 2])
        }
    }
}

/// Occurrence positions partitioned by [`LeftClass`]. Only nonempty classes
/// are stored; iteration is in class order with `Begin` first.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ClassedPosSets {
    classes: BTreeMap<LeftClass, PosSet>,
    len: usize,
}

impl ClassedPosSets {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn singleton(class: LeftClass, pos: u32) -> Self {
        let mut classes = BTreeMap::new();
        classes.insert(class, PosSet::singleton(pos));
        Self { classes, len: 1 }
    }

    /// Total number of positions over all classes.
    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn insert(&mut self, class: LeftClass, pos: u32) -> Result<()> {
        self.classes.entry(class).or_default().insert(pos)?;
        self.len += 1;
        Ok(())
    }

    pub fn class(&self, class: LeftClass) -> Option<&PosSet> {
        self.classes.get(&class)
    }

    pub fn classes(&self) -> impl Iterator<Item = (LeftClass, &PosSet)> {
        self.classes.iter().map(|(&c, s)| (c, s))
    }

    /// Nearest element above `x` over every class other than `exclude`.
    pub fn succ_excluding(&self, x: u32, exclude: Option<LeftClass>) -> Option<u32> {
        self.classes
            .iter()
            .filter(|(c, _)| Some(**c) != exclude)
            .filter_map(|(_, s)| s.succ(x))
            .min()
    }

    /// Nearest element below `x` over every class other than `exclude`.
    pub fn pred_excluding(&self, x: u32, exclude: Option<LeftClass>) -> Option<u32> {
        self.classes
            .iter()
            .filter(|(c, _)| Some(**c) != exclude)
            .filter_map(|(_, s)| s.pred(x))
            .max()
    }

    /// Class-by-class union; within each class the smaller set goes into the
    /// larger.
    pub fn merge(mut self, other: ClassedPosSets) -> Result<ClassedPosSets> {
        if self.len < other.len {
            return other.merge(self);
        }
        for (class, set) in other.classes {
            let merged = match self.classes.remove(&class) {
                Some(existing) => existing.merge(set)?,
                None => set,
            };
            self.classes.insert(class, merged);
        }
        self.len += other.len;
        Ok(self)
    }
}
