//! Suffix tree of `S$`, where `$` is a virtual sentinel smaller than every
//! byte, and its binarized form.
//!
//! The tree is derived from the suffix array and LCP array of `S$`. The
//! suffix array is built by prefix doubling with radix passes, so
//! construction is `O(n log n)`.

use std::fmt::Write as _;

use crate::error::Result;
use crate::text::Text;

pub type NodeId = usize;

/// First character of an edge label.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum EdgeKey {
    Sentinel,
    Byte(u8),
}

#[derive(Debug, Clone)]
pub struct Node {
    parent: Option<NodeId>,
    children: Vec<NodeId>,
    /// Length of the path label. For leaves this counts the sentinel.
    depth: usize,
    /// 0-based start of some suffix in this subtree.
    repr: usize,
    /// 1-based suffix start, leaves only. Suffix `n + 1` is the sentinel alone.
    suffix: Option<usize>,
}

#[derive(Debug, Clone)]
pub struct SuffixTree {
    text: Text,
    nodes: Vec<Node>,
}

/// Suffix array of `s$` (length `n + 1`, entry `n` is the sentinel suffix),
/// 0-based.
pub(crate) fn suffix_array(s: &[u8]) -> Vec<usize> {
    let n = s.len() + 1;
    let buckets = 257.max(n);
    let mut rank: Vec<usize> = s.iter().map(|&c| c as usize + 1).chain([0]).collect();
    let mut sa = vec![0usize; n];
    let mut order: Vec<usize> = (0..n).collect();
    let mut next = vec![0usize; n];
    let mut count = vec![0usize; buckets];
    counting_sort(&order, &rank, &mut sa, &mut count);

    let mut k = 1;
    loop {
        // `sa` is sorted by the first k characters. Order by the characters
        // at +k: suffixes too short to have any come first.
        order.clear();
        order.extend(n.saturating_sub(k)..n);
        order.extend(sa.iter().filter(|&&i| i >= k).map(|&i| i - k));
        counting_sort(&order, &rank, &mut sa, &mut count);

        let key = |i: usize| (rank[i], if i + k < n { rank[i + k] + 1 } else { 0 });
        next[sa[0]] = 0;
        for w in 1..n {
            next[sa[w]] = next[sa[w - 1]] + usize::from(key(sa[w - 1]) != key(sa[w]));
        }
        std::mem::swap(&mut rank, &mut next);
        if rank[sa[n - 1]] == n - 1 {
            return sa;
        }
        k *= 2;
    }
}

/// Stable counting sort of `order` by `rank`, written into `out`.
fn counting_sort(order: &[usize], rank: &[usize], out: &mut [usize], count: &mut [usize]) {
    count.fill(0);
    for &i in order {
        count[rank[i]] += 1;
    }
    let mut sum = 0;
    for c in count.iter_mut() {
        let here = *c;
        *c = sum;
        sum += here;
    }
    for &i in order {
        out[count[rank[i]]] = i;
        count[rank[i]] += 1;
    }
}

/// `lcp[r]` = longest common prefix of suffixes `sa[r - 1]` and `sa[r]`;
/// `lcp[0] = 0`. Kasai's algorithm.
pub(crate) fn lcp_array(s: &[u8], sa: &[usize]) -> Vec<usize> {
    let n = sa.len();
    let mut rank = vec![0usize; n];
    for (r, &i) in sa.iter().enumerate() {
        rank[i] = r;
    }
    let mut lcp = vec![0usize; n];
    let mut h = 0usize;
    for i in 0..n {
        if rank[i] == 0 {
            h = 0;
            continue;
        }
        let j = sa[rank[i] - 1];
        // The sentinel occurs once, so matching stops before index s.len().
        while i + h < s.len() && j + h < s.len() && s[i + h] == s[j + h] {
            h += 1;
        }
        lcp[rank[i]] = h;
        h = h.saturating_sub(1);
    }
    lcp
}

pub fn build_suffix_tree(t: &Text) -> Result<SuffixTree> {
    t.require_nonempty()?;
    let s = t.as_bytes();
    let n = s.len();
    let sa = suffix_array(s);
    let lcp = lcp_array(s, &sa);

    let mut nodes = vec![Node {
        parent: None,
        children: Vec::new(),
        depth: 0,
        repr: sa[0],
        suffix: None,
    }];
    let mut stack: Vec<NodeId> = vec![0];
    for (r, &start) in sa.iter().enumerate() {
        let shared = lcp[r];
        let mut last = None;
        while nodes[*stack.last().unwrap()].depth > shared {
            last = stack.pop();
        }
        let top = *stack.last().unwrap();
        if nodes[top].depth < shared {
            // Split: a new internal node between `top` and its last child.
            let child = last.expect("deeper node popped before a split");
            let id = nodes.len();
            let detached = nodes[top].children.pop();
            debug_assert_eq!(detached, Some(child));
            nodes.push(Node {
                parent: Some(top),
                children: vec![child],
                depth: shared,
                repr: nodes[child].repr,
                suffix: None,
            });
            nodes[child].parent = Some(id);
            nodes[top].children.push(id);
            stack.push(id);
        }
        let parent = *stack.last().unwrap();
        let id = nodes.len();
        nodes.push(Node {
            parent: Some(parent),
            children: Vec::new(),
            depth: n - start + 1,
            repr: start,
            suffix: Some(start + 1),
        });
        nodes[parent].children.push(id);
        stack.push(id);
    }
    Ok(SuffixTree {
        text: t.clone(),
        nodes,
    })
}

impl SuffixTree {
    pub fn text(&self) -> &Text {
        &self.text
    }

    pub fn root(&self) -> NodeId {
        0
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn leaf_count(&self) -> usize {
        self.nodes.iter().filter(|v| v.suffix.is_some()).count()
    }

    pub fn internal_count(&self) -> usize {
        self.node_count() - self.leaf_count()
    }

    pub fn parent(&self, v: NodeId) -> Option<NodeId> {
        self.nodes[v].parent
    }

    /// Children ordered by edge key, sentinel first.
    pub fn children(&self, v: NodeId) -> &[NodeId] {
        &self.nodes[v].children
    }

    pub fn is_leaf(&self, v: NodeId) -> bool {
        self.nodes[v].suffix.is_some()
    }

    pub fn string_depth(&self, v: NodeId) -> usize {
        self.nodes[v].depth
    }

    /// 1-based suffix start for leaves; `n + 1` for the sentinel leaf.
    pub fn suffix_index(&self, v: NodeId) -> Option<usize> {
        self.nodes[v].suffix
    }

    /// Edge into `v` as a 0-based half-open range into `S$`. The range may
    /// end at `n + 1`, in which case its last character is the sentinel.
    pub fn edge_range(&self, v: NodeId) -> (usize, usize) {
        let node = &self.nodes[v];
        let parent_depth = node.parent.map_or(0, |p| self.nodes[p].depth);
        (node.repr + parent_depth, node.repr + node.depth)
    }

    pub fn edge_key(&self, v: NodeId) -> Option<EdgeKey> {
        self.nodes[v].parent?;
        let (start, _) = self.edge_range(v);
        Some(match self.text.get(start) {
            Some(&c) => EdgeKey::Byte(c),
            None => EdgeKey::Sentinel,
        })
    }

    /// Path label of `v` without any trailing sentinel.
    pub fn path_label(&self, v: NodeId) -> &[u8] {
        let node = &self.nodes[v];
        let end = (node.repr + node.depth).min(self.text.len());
        &self.text[node.repr..end]
    }

    /// Leaf suffix indices below `v`, in tree order.
    pub fn leaves_below(&self, v: NodeId) -> Vec<usize> {
        let mut out = Vec::new();
        let mut stack = vec![v];
        while let Some(u) = stack.pop() {
            if let Some(i) = self.nodes[u].suffix {
                out.push(i);
            }
            stack.extend(self.nodes[u].children.iter().rev());
        }
        out
    }

    /// One node per line, indented by tree level: edge label (`$` for the
    /// sentinel), string depth, and suffix index for leaves.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        let mut stack = vec![(self.root(), 0usize)];
        while let Some((v, level)) = stack.pop() {
            let (start, end) = self.edge_range(v);
            let mut label = String::new();
            for pos in start..end {
                match self.text.get(pos) {
                    Some(&c) if c.is_ascii_graphic() => label.push(c as char),
                    Some(&c) => {
                        let _ = write!(label, "\\x{c:02x}");
                    }
                    None => label.push('$'),
                }
            }
            if v == self.root() {
                label.push_str("(root)");
            }
            let _ = write!(
                out,
                "{:indent$}{} depth={}",
                "",
                label,
                self.nodes[v].depth,
                indent = 2 * level
            );
            if let Some(i) = self.nodes[v].suffix {
                let _ = write!(out, " leaf={i}");
            }
            out.push('\n');
            for &c in self.nodes[v].children.iter().rev() {
                stack.push((c, level + 1));
            }
        }
        out
    }
}

pub type BinId = usize;

#[derive(Debug, Clone)]
pub struct BinNode {
    pub parent: Option<BinId>,
    pub children: Option<[BinId; 2]>,
    /// The suffix-tree node this node stands for. Synthetic nodes point at the
    /// original node whose children they group.
    pub origin: NodeId,
    pub synthetic: bool,
    /// String depth of `origin`.
    pub depth: usize,
    pub suffix: Option<usize>,
}

/// Suffix tree with every node of degree `d > 2` replaced by a balanced
/// binary tree of height `ceil(log2 d)`.
#[derive(Debug, Clone)]
pub struct BinarizedTree {
    nodes: Vec<BinNode>,
    original_nodes: usize,
}

pub fn binarize(tree: &SuffixTree) -> BinarizedTree {
    fn group(
        tree: &SuffixTree,
        members: &[NodeId],
        parent: BinId,
        origin: NodeId,
        nodes: &mut Vec<BinNode>,
        queue: &mut Vec<(NodeId, BinId)>,
    ) -> BinId {
        let id = nodes.len();
        if let [only] = members {
            nodes.push(BinNode {
                parent: Some(parent),
                children: None,
                origin: *only,
                synthetic: false,
                depth: tree.string_depth(*only),
                suffix: tree.suffix_index(*only),
            });
            queue.push((*only, id));
            return id;
        }
        nodes.push(BinNode {
            parent: Some(parent),
            children: None,
            origin,
            synthetic: true,
            depth: tree.string_depth(origin),
            suffix: None,
        });
        let (left, right) = members.split_at(members.len().div_ceil(2));
        let l = group(tree, left, id, origin, nodes, queue);
        let r = group(tree, right, id, origin, nodes, queue);
        nodes[id].children = Some([l, r]);
        id
    }

    let root = tree.root();
    let mut nodes = vec![BinNode {
        parent: None,
        children: None,
        origin: root,
        synthetic: false,
        depth: 0,
        suffix: tree.suffix_index(root),
    }];
    let mut queue = vec![(root, 0)];
    while let Some((v, id)) = queue.pop() {
        let children = tree.children(v);
        if children.is_empty() {
            continue;
        }
        debug_assert!(children.len() >= 2, "internal suffix-tree node with one child");
        let (left, right) = children.split_at(children.len().div_ceil(2));
        let l = group(tree, left, id, v, &mut nodes, &mut queue);
        let r = group(tree, right, id, v, &mut nodes, &mut queue);
        nodes[id].children = Some([l, r]);
    }
    BinarizedTree {
        nodes,
        original_nodes: tree.node_count(),
    }
}

impl BinarizedTree {
    pub fn root(&self) -> BinId {
        0
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn synthetic_count(&self) -> usize {
        self.nodes.len() - self.original_nodes
    }

    pub fn node(&self, id: BinId) -> &BinNode {
        &self.nodes[id]
    }

    /// Leaf suffix indices below `id`, in tree order.
    pub fn leaves_below(&self, id: BinId) -> Vec<usize> {
        let mut out = Vec::new();
        let mut stack = vec![id];
        while let Some(u) = stack.pop() {
            let node = &self.nodes[u];
            if let Some(i) = node.suffix {
                out.push(i);
            }
            if let Some([l, r]) = node.children {
                stack.push(r);
                stack.push(l);
            }
        }
        out
    }

    /// Calls `visit` once per node, every node after both of its children.
    /// Iterative, so tree height is not limited by the call stack.
    pub fn bottom_up(&self, mut visit: impl FnMut(BinId)) {
        let mut stack = vec![(self.root(), false)];
        while let Some((id, expanded)) = stack.pop() {
            match self.nodes[id].children {
                Some([l, r]) if !expanded => {
                    stack.push((id, true));
                    stack.push((r, false));
                    stack.push((l, false));
                }
                _ => visit(id),
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn naive_suffix_array(s: &[u8]) -> Vec<usize> {
        // Map to u16 with the sentinel as 0 so slice comparison orders correctly.
        let ext: Vec<u16> = s.iter().map(|&c| c as u16 + 1).chain([0]).collect();
        let mut sa: Vec<usize> = (0..ext.len()).collect();
        sa.sort_by(|&a, &b| ext[a..].cmp(&ext[b..]));
        sa
    }

    fn lcp_naive(s: &[u8], a: usize, b: usize) -> usize {
        s[a.min(s.len())..]
            .iter()
            .zip(&s[b.min(s.len())..])
            .take_while(|(x, y)| x == y)
            .count()
    }

    #[test]
    fn tree_of_aa() {
        let tree = build_suffix_tree(&Text::from("aa")).unwrap();
        let root = tree.root();
        let kids = tree.children(root);
        assert_eq!(kids.len(), 2);
        assert_eq!(tree.suffix_index(kids[0]), Some(3));
        assert_eq!(tree.edge_key(kids[0]), Some(EdgeKey::Sentinel));
        let a = kids[1];
        assert_eq!(tree.path_label(a), b"a");
        assert_eq!(tree.string_depth(a), 1);
        let mut below: Vec<_> = tree.leaves_below(a);
        below.sort();
        assert_eq!(below, vec![1, 2]);
        assert_eq!(tree.internal_count(), 2);
        assert_eq!(tree.leaf_count(), 3);
    }

    #[test]
    fn tree_of_ab() {
        let tree = build_suffix_tree(&Text::from("ab")).unwrap();
        let kids: Vec<_> = tree
            .children(tree.root())
            .iter()
            .map(|&v| tree.suffix_index(v))
            .collect();
        assert_eq!(kids, vec![Some(3), Some(1), Some(2)]);
        assert_eq!(tree.internal_count(), 1);
        let keys: Vec<_> = tree
            .children(tree.root())
            .iter()
            .map(|&v| tree.edge_key(v).unwrap())
            .collect();
        assert_eq!(
            keys,
            vec![EdgeKey::Sentinel, EdgeKey::Byte(b'a'), EdgeKey::Byte(b'b')]
        );

        let bin = binarize(&tree);
        assert_eq!(bin.synthetic_count(), 1);
        assert_eq!(bin.node_count(), tree.node_count() + 1);
    }

    #[test]
    fn empty_text_is_rejected() {
        assert!(build_suffix_tree(&Text::from("")).is_err());
    }

    #[test]
    fn synthetic_height_for_degree_five() {
        // Root of "abcd" has children $, a, b, c, d.
        let tree = build_suffix_tree(&Text::from("abcd")).unwrap();
        assert_eq!(tree.children(tree.root()).len(), 5);
        let bin = binarize(&tree);
        assert_eq!(bin.synthetic_count(), 3);
        // Longest path from the root to an original child.
        let mut worst = 0;
        for id in 0..bin.node_count() {
            let node = bin.node(id);
            if !node.synthetic && id != bin.root() && node.origin != tree.root() {
                let mut steps = 0;
                let mut cur = node.parent;
                while let Some(p) = cur {
                    steps += 1;
                    if !bin.node(p).synthetic {
                        break;
                    }
                    cur = bin.node(p).parent;
                }
                worst = worst.max(steps);
            }
        }
        assert!(worst <= 3, "height {worst}");
    }

    #[test]
    fn degree_two_nodes_untouched() {
        let tree = build_suffix_tree(&Text::from("a")).unwrap();
        let bin = binarize(&tree);
        assert_eq!(bin.synthetic_count(), 0);
        assert_eq!(bin.node_count(), 3);
    }

    #[test]
    fn bottom_up_order() {
        let tree = build_suffix_tree(&Text::from("aa")).unwrap();
        let bin = binarize(&tree);
        let mut order = Vec::new();
        bin.bottom_up(|id| order.push(id));
        assert_eq!(order.len(), bin.node_count());
        assert_eq!(*order.last().unwrap(), bin.root());
        let position = |id: BinId| order.iter().position(|&x| x == id).unwrap();
        for id in 0..bin.node_count() {
            if let Some(p) = bin.node(id).parent {
                assert!(position(id) < position(p));
            }
        }

        let text = Text::from("aabaaaabaaba");
        let tree = build_suffix_tree(&text).unwrap();
        let bin = binarize(&tree);
        let mut seen = vec![0usize; bin.node_count()];
        bin.bottom_up(|id| seen[id] += 1);
        assert!(seen.iter().all(|&c| c == 1));
    }

    #[test]
    fn dump_lists_every_node() {
        let tree = build_suffix_tree(&Text::from("aa")).unwrap();
        let dump = tree.dump();
        assert_eq!(dump.lines().count(), tree.node_count());
        assert!(dump.contains("  $ depth=1 leaf=3"));
        assert!(dump.contains("  a depth=1\n"));
    }

    #[test]
    fn deep_unary_tree_traversal() {
        let text = Text::new(vec![b'a'; 200_000]);
        let tree = build_suffix_tree(&text).unwrap();
        assert_eq!(tree.leaf_count(), 200_001);
        let bin = binarize(&tree);
        let mut count = 0;
        bin.bottom_up(|_| count += 1);
        assert_eq!(count, bin.node_count());
    }

    fn arb_text() -> impl Strategy<Value = Vec<u8>> {
        (1usize..5)
            .prop_flat_map(|sigma| prop::collection::vec((0..sigma as u8).prop_map(|c| b'a' + c), 1..60))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(400))]

        #[test]
        fn suffix_array_matches_sort(s in prop::collection::vec(any::<u8>(), 0..80)) {
            let sa = suffix_array(&s);
            prop_assert_eq!(&sa, &naive_suffix_array(&s));
            let lcp = lcp_array(&s, &sa);
            for r in 1..sa.len() {
                prop_assert_eq!(lcp[r], lcp_naive(&s, sa[r - 1], sa[r]));
            }
        }

        #[test]
        fn tree_invariants(s in arb_text()) {
            let n = s.len();
            let tree = build_suffix_tree(&Text::new(s.clone())).unwrap();
            let mut leaves = tree.leaves_below(tree.root());
            leaves.sort();
            prop_assert_eq!(leaves, (1..=n + 1).collect::<Vec<_>>());

            for v in 0..tree.node_count() {
                if let Some(i) = tree.suffix_index(v) {
                    prop_assert_eq!(tree.path_label(v), &s[i - 1..]);
                    prop_assert_eq!(tree.string_depth(v), n + 2 - i);
                    continue;
                }
                let kids = tree.children(v);
                prop_assert!(kids.len() >= 2);
                let label = tree.path_label(v);
                prop_assert_eq!(label.len(), tree.string_depth(v));
                let keys: Vec<_> = kids.iter().map(|&c| tree.edge_key(c).unwrap()).collect();
                prop_assert!(keys.windows(2).all(|w| w[0] < w[1]));
                for &c in kids {
                    prop_assert!(tree.string_depth(c) > tree.string_depth(v));
                    prop_assert_eq!(tree.parent(c), Some(v));
                }
                // Leaves from different children share exactly the node label.
                let groups: Vec<Vec<usize>> = kids.iter().map(|&c| tree.leaves_below(c)).collect();
                for a in 0..groups.len() {
                    for b in a + 1..groups.len() {
                        for &p in &groups[a] {
                            for &q in &groups[b] {
                                prop_assert_eq!(lcp_naive(&s, p - 1, q - 1), tree.string_depth(v));
                            }
                        }
                    }
                }
            }
        }

        #[test]
        fn binarization_preserves_leaf_lists(s in arb_text()) {
            let tree = build_suffix_tree(&Text::new(s)).unwrap();
            let bin = binarize(&tree);
            let mut first_copy = vec![None; tree.node_count()];
            for id in 0..bin.node_count() {
                let node = bin.node(id);
                if node.suffix.is_none() {
                    prop_assert!(node.children.is_some());
                }
                if let Some([l, r]) = node.children {
                    prop_assert_eq!(bin.node(l).parent, Some(id));
                    prop_assert_eq!(bin.node(r).parent, Some(id));
                }
                prop_assert_eq!(node.depth, tree.string_depth(node.origin));
                if !node.synthetic {
                    prop_assert!(first_copy[node.origin].is_none());
                    first_copy[node.origin] = Some(id);
                }
            }
            for (v, id) in first_copy.iter().enumerate() {
                let id = id.expect("every original node kept");
                let mut a = tree.leaves_below(v);
                let mut b = bin.leaves_below(id);
                a.sort();
                b.sort();
                prop_assert_eq!(a, b);
            }
        }
    }
}
