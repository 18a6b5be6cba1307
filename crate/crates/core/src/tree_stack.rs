//! Persistent trees with a pointer, and the four tree-stack instructions.
//!
//! A [`TreeStack`] is a rooted tree whose edges carry integer branch labels and
//! whose vertices carry labels, together with a pointer to one vertex. The root
//! is always labelled [`Label::Root`] and no other vertex is. Every instruction
//! returns a new value; the input is never modified, and unchanged subtrees are
//! shared between the two.

use std::collections::hash_map::DefaultHasher;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use thiserror::Error;

/// Edge label between a vertex and one of its children.
pub type Branch = i32;

/// Label of a tree vertex: the distinguished root symbol or an alphabet symbol.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Label<S> {
    Root,
    Sym(S),
}

impl<S> Label<S> {
    pub fn symbol(&self) -> Option<&S> {
        match self {
            Label::Root => None,
            Label::Sym(s) => Some(s),
        }
    }

    pub fn is_root(&self) -> bool {
        matches!(self, Label::Root)
    }
}

/// A vertex address: the sequence of branch labels from the root.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TreeAddress(Vec<Branch>);

impl TreeAddress {
    pub fn root() -> Self {
        TreeAddress(Vec::new())
    }

    pub fn from_branches(branches: impl IntoIterator<Item = Branch>) -> Self {
        TreeAddress(branches.into_iter().collect())
    }

    pub fn branches(&self) -> &[Branch] {
        &self.0
    }

    pub fn is_root(&self) -> bool {
        self.0.is_empty()
    }

    pub fn depth(&self) -> usize {
        self.0.len()
    }

    pub fn child(&self, n: Branch) -> Self {
        let mut path = self.0.clone();
        path.push(n);
        TreeAddress(path)
    }

    pub fn parent(&self) -> Option<Self> {
        let (_, rest) = self.0.split_last()?;
        Some(TreeAddress(rest.to_vec()))
    }

    pub fn last(&self) -> Option<Branch> {
        self.0.last().copied()
    }

    pub fn is_prefix_of(&self, other: &TreeAddress) -> bool {
        other.0.starts_with(&self.0)
    }
}

impl fmt::Display for TreeAddress {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("ε");
        }
        let parts: Vec<String> = self.0.iter().map(|b| b.to_string()).collect();
        f.write_str(&parts.join("."))
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TreeStackError {
    #[error("branch {0} is already occupied at the pointer")]
    BranchOccupied(Branch),
    #[error("the pointer has no child on branch {0}")]
    NoSuchChild(Branch),
    #[error("the pointer is at the root")]
    AtRoot,
    #[error("invalid tree: {0}")]
    InvalidTree(String),
}

#[derive(Debug)]
struct Node<S> {
    label: Label<S>,
    /// Sorted by branch.
    children: Vec<(Branch, Arc<Node<S>>)>,
    hash: u64,
}

impl<S: Hash> Node<S> {
    fn new(label: Label<S>, children: Vec<(Branch, Arc<Node<S>>)>) -> Self {
        let mut hasher = DefaultHasher::new();
        label.hash(&mut hasher);
        for (b, child) in &children {
            b.hash(&mut hasher);
            child.hash.hash(&mut hasher);
        }
        Node {
            label,
            children,
            hash: hasher.finish(),
        }
    }

    fn child(&self, n: Branch) -> Option<&Arc<Node<S>>> {
        self.children
            .binary_search_by_key(&n, |(b, _)| *b)
            .ok()
            .map(|i| &self.children[i].1)
    }
}

impl<S: Clone + Hash> Node<S> {
    fn with_label(&self, label: Label<S>) -> Self {
        Node::new(label, self.children.clone())
    }

    fn with_child(&self, n: Branch, child: Arc<Node<S>>) -> Self {
        let mut children = self.children.clone();
        match children.binary_search_by_key(&n, |(b, _)| *b) {
            Ok(i) => children[i].1 = child,
            Err(i) => children.insert(i, (n, child)),
        }
        Node::new(self.label.clone(), children)
    }
}

fn nodes_equal<S: PartialEq>(a: &Arc<Node<S>>, b: &Arc<Node<S>>) -> bool {
    if Arc::ptr_eq(a, b) {
        return true;
    }
    a.hash == b.hash
        && a.label == b.label
        && a.children.len() == b.children.len()
        && a.children
            .iter()
            .zip(&b.children)
            .all(|((ba, ca), (bb, cb))| ba == bb && nodes_equal(ca, cb))
}

/// An Ω-tree together with a pointer into its domain.
#[derive(Clone)]
pub struct TreeStack<S> {
    root: Arc<Node<S>>,
    pointer: TreeAddress,
}

impl<S: Clone + Eq + Hash> TreeStack<S> {
    /// The single-vertex tree `{ε ↦ ◇}` with the pointer at the root.
    pub fn root_stack() -> Self {
        TreeStack {
            root: Arc::new(Node::new(Label::Root, Vec::new())),
            pointer: TreeAddress::root(),
        }
    }

    /// Builds a tree from an explicit label map. The map must be prefix-closed,
    /// contain the root, and use [`Label::Root`] exactly at the root.
    pub fn from_labels<I>(labels: I, pointer: TreeAddress) -> Result<Self, TreeStackError>
    where
        I: IntoIterator<Item = (TreeAddress, S)>,
    {
        let mut entries: Vec<(TreeAddress, S)> = labels.into_iter().collect();
        entries.sort_by(|a, b| a.0.cmp(&b.0));
        let mut ts = TreeStack::root_stack();
        for (addr, sym) in entries {
            if addr.is_root() {
                return Err(TreeStackError::InvalidTree(
                    "the root carries the root symbol only".into(),
                ));
            }
            let parent = addr.parent().expect("non-root address");
            if !ts.contains(&parent) {
                return Err(TreeStackError::InvalidTree(format!(
                    "domain is not prefix-closed at {addr}"
                )));
            }
            if ts.contains(&addr) {
                return Err(TreeStackError::InvalidTree(format!(
                    "duplicate address {addr}"
                )));
            }
            ts.pointer = parent;
            ts = ts.push(addr.last().expect("non-root address"), sym)?;
        }
        if !ts.contains(&pointer) {
            return Err(TreeStackError::InvalidTree(format!(
                "pointer {pointer} is outside the domain"
            )));
        }
        ts.pointer = pointer;
        Ok(ts)
    }

    pub fn pointer(&self) -> &TreeAddress {
        &self.pointer
    }

    fn node_at(&self, addr: &TreeAddress) -> Option<&Arc<Node<S>>> {
        let mut node = &self.root;
        for &b in addr.branches() {
            node = node.child(b)?;
        }
        Some(node)
    }

    fn focus(&self) -> &Arc<Node<S>> {
        self.node_at(&self.pointer)
            .expect("pointer is in the domain")
    }

    pub fn contains(&self, addr: &TreeAddress) -> bool {
        self.node_at(addr).is_some()
    }

    pub fn label_at(&self, addr: &TreeAddress) -> Option<&Label<S>> {
        self.node_at(addr).map(|n| &n.label)
    }

    /// `T(p)`, the label under the pointer.
    pub fn label_at_pointer(&self) -> &Label<S> {
        &self.focus().label
    }

    /// Branches of the existing children of the pointer vertex, ascending.
    pub fn child_branches(&self) -> impl Iterator<Item = Branch> + '_ {
        self.focus().children.iter().map(|(b, _)| *b)
    }

    /// Replaces the node at the pointer and rebuilds the spine above it.
    fn rebuild(&self, replacement: Node<S>) -> Arc<Node<S>> {
        let branches = self.pointer.branches();
        let mut spine: Vec<&Arc<Node<S>>> = Vec::with_capacity(branches.len());
        let mut node = &self.root;
        for &b in branches {
            spine.push(node);
            node = node.child(b).expect("pointer is in the domain");
        }
        let mut current = Arc::new(replacement);
        for (ancestor, &b) in spine.iter().rev().zip(branches.iter().rev()) {
            current = Arc::new(ancestor.with_child(b, current));
        }
        current
    }

    /// `push_n(γ)`: adds the child `pn` labelled `γ` and moves the pointer there.
    pub fn push(&self, n: Branch, gamma: S) -> Result<Self, TreeStackError> {
        let focus = self.focus();
        if focus.child(n).is_some() {
            return Err(TreeStackError::BranchOccupied(n));
        }
        let leaf = Arc::new(Node::new(Label::Sym(gamma), Vec::new()));
        Ok(TreeStack {
            root: self.rebuild(focus.with_child(n, leaf)),
            pointer: self.pointer.child(n),
        })
    }

    /// `up_n`: moves the pointer to the existing child `pn`.
    pub fn up(&self, n: Branch) -> Result<Self, TreeStackError> {
        if self.focus().child(n).is_none() {
            return Err(TreeStackError::NoSuchChild(n));
        }
        Ok(TreeStack {
            root: Arc::clone(&self.root),
            pointer: self.pointer.child(n),
        })
    }

    /// `down`: moves the pointer to its parent.
    pub fn down(&self) -> Result<Self, TreeStackError> {
        let parent = self.pointer.parent().ok_or(TreeStackError::AtRoot)?;
        Ok(TreeStack {
            root: Arc::clone(&self.root),
            pointer: parent,
        })
    }

    /// `set_γ`: relabels the pointer vertex.
    pub fn set(&self, gamma: S) -> Result<Self, TreeStackError> {
        if self.pointer.is_root() {
            return Err(TreeStackError::AtRoot);
        }
        let focus = self.focus();
        Ok(TreeStack {
            root: self.rebuild(focus.with_label(Label::Sym(gamma))),
            pointer: self.pointer.clone(),
        })
    }

    /// All `(address, label)` pairs in address order.
    pub fn entries(&self) -> Vec<(TreeAddress, Label<S>)> {
        let mut out = Vec::new();
        let mut stack = vec![(TreeAddress::root(), &self.root)];
        while let Some((addr, node)) = stack.pop() {
            out.push((addr.clone(), node.label.clone()));
            for (b, child) in node.children.iter().rev() {
                stack.push((addr.child(*b), child));
            }
        }
        out.sort_by(|a, b| a.0.cmp(&b.0));
        out
    }

    pub fn size(&self) -> usize {
        fn count<S>(n: &Node<S>) -> usize {
            1 + n.children.iter().map(|(_, c)| count(c)).sum::<usize>()
        }
        count(&self.root)
    }

    /// Checks prefix-closure, the root-label rule and pointer membership.
    pub fn check_invariants(&self) -> Result<(), TreeStackError> {
        let entries = self.entries();
        for (addr, label) in &entries {
            if addr.is_root() != label.is_root() {
                return Err(TreeStackError::InvalidTree(format!(
                    "root symbol misplaced at {addr}"
                )));
            }
            if let Some(parent) = addr.parent() {
                if !self.contains(&parent) {
                    return Err(TreeStackError::InvalidTree(format!("{addr} has no parent")));
                }
            }
        }
        if !self.contains(&self.pointer) {
            return Err(TreeStackError::InvalidTree("pointer outside domain".into()));
        }
        Ok(())
    }
}

impl<S: PartialEq> PartialEq for TreeStack<S> {
    fn eq(&self, other: &Self) -> bool {
        self.pointer == other.pointer && nodes_equal(&self.root, &other.root)
    }
}

impl<S: Eq> Eq for TreeStack<S> {}

impl<S> Hash for TreeStack<S> {
    fn hash<H: Hasher>(&self, state: &mut H) {
        state.write_u64(self.root.hash);
        self.pointer.hash(state);
    }
}

impl<S: fmt::Debug + Clone + Eq + Hash> fmt::Debug for TreeStack<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("TreeStack")
            .field("tree", &self.entries())
            .field("pointer", &self.pointer)
            .finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn addr(s: &str) -> TreeAddress {
        TreeAddress::from_branches(s.chars().map(|c| c.to_digit(10).unwrap() as Branch))
    }

    /// The tree of the running example, pointer at 21.
    fn figure_one() -> TreeStack<char> {
        let labels = [
            ("1", 'b'),
            ("11", 'a'),
            ("2", 'b'),
            ("21", 'c'),
            ("22", 'a'),
            ("23", 'a'),
            ("231", 'c'),
        ];
        TreeStack::from_labels(labels.iter().map(|(a, l)| (addr(a), *l)), addr("21")).unwrap()
    }

    #[test]
    fn root_stack_is_a_single_vertex() {
        let ts = TreeStack::<char>::root_stack();
        assert_eq!(ts.size(), 1);
        assert!(ts.pointer().is_root());
        assert_eq!(ts.label_at_pointer(), &Label::Root);
    }

    #[test]
    fn push_on_root() {
        let ts = TreeStack::root_stack().push(1, 'b').unwrap();
        assert_eq!(ts.pointer(), &addr("1"));
        assert_eq!(ts.label_at(&addr("1")), Some(&Label::Sym('b')));
        assert_eq!(ts.size(), 2);
        assert_eq!(ts.label_at_pointer(), &Label::Sym('b'));
    }

    #[test]
    fn figure_one_push() {
        let ts = figure_one();
        let pushed = ts.push(1, 'x').unwrap();
        assert_eq!(pushed.pointer(), &addr("211"));
        let at_two = ts.down().unwrap();
        assert_eq!(at_two.push(3, 'x'), Err(TreeStackError::BranchOccupied(3)));
    }

    #[test]
    fn figure_one_moves() {
        let ts = figure_one();
        assert_eq!(ts.label_at_pointer(), &Label::Sym('c'));
        let at_two = ts.down().unwrap();
        assert_eq!(at_two.pointer(), &addr("2"));
        assert_eq!(at_two.up(3).unwrap().pointer(), &addr("23"));
        let relabelled = ts.set('a').unwrap();
        assert_eq!(relabelled.label_at(&addr("21")), Some(&Label::Sym('a')));
        assert_eq!(relabelled.label_at(&addr("231")), Some(&Label::Sym('c')));
        // the input is untouched
        assert_eq!(ts.label_at(&addr("21")), Some(&Label::Sym('c')));
    }

    #[test]
    fn partiality_at_root() {
        let ts = TreeStack::<char>::root_stack();
        assert_eq!(ts.up(1), Err(TreeStackError::NoSuchChild(1)));
        assert_eq!(ts.down(), Err(TreeStackError::AtRoot));
        assert_eq!(ts.set('a'), Err(TreeStackError::AtRoot));
    }

    #[test]
    fn up_down_roundtrip_and_set_idempotent() {
        let ts = figure_one().down().unwrap();
        assert_eq!(ts.up(2).unwrap().down().unwrap(), ts);
        let once = figure_one().set('z').unwrap();
        assert_eq!(once.set('z').unwrap(), once);
    }

    #[test]
    fn from_labels_rejects_gaps() {
        let err = TreeStack::from_labels([(addr("12"), 'a')], TreeAddress::root());
        assert!(matches!(err, Err(TreeStackError::InvalidTree(_))));
    }

    #[test]
    fn equality_is_structural() {
        let a = TreeStack::root_stack()
            .push(1, 'a')
            .unwrap()
            .push(2, 'b')
            .unwrap();
        let b = TreeStack::from_labels([(addr("1"), 'a'), (addr("12"), 'b')], addr("12")).unwrap();
        assert_eq!(a, b);
        let mut h1 = DefaultHasher::new();
        let mut h2 = DefaultHasher::new();
        a.hash(&mut h1);
        b.hash(&mut h2);
        assert_eq!(h1.finish(), h2.finish());
        assert_ne!(a, b.down().unwrap());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        #[derive(Debug, Clone)]
        enum Op {
            Push(Branch, u8),
            Up(Branch),
            Down,
            Set(u8),
        }

        fn op() -> impl Strategy<Value = Op> {
            prop_oneof![
                (-2..3i32, 0..3u8).prop_map(|(b, l)| Op::Push(b, l)),
                (-2..3i32).prop_map(Op::Up),
                Just(Op::Down),
                (0..3u8).prop_map(Op::Set),
            ]
        }

        proptest! {
            #[test]
            fn instructions_preserve_invariants(ops in proptest::collection::vec(op(), 0..40)) {
                let mut ts = TreeStack::<u8>::root_stack();
                for op in ops {
                    let before = ts.clone();
                    let snapshot = before.entries();
                    let result = match op {
                        Op::Push(b, l) => {
                            let free = !before.child_branches().any(|c| c == b);
                            let r = before.push(b, l);
                            prop_assert_eq!(r.is_ok(), free);
                            if let Ok(next) = &r {
                                let back = next.down().unwrap();
                                prop_assert_eq!(back.pointer(), before.pointer());
                            }
                            r
                        }
                        Op::Up(b) => {
                            let present = before.child_branches().any(|c| c == b);
                            let r = before.up(b);
                            prop_assert_eq!(r.is_ok(), present);
                            r
                        }
                        Op::Down => {
                            let r = before.down();
                            prop_assert_eq!(r.is_ok(), !before.pointer().is_root());
                            r
                        }
                        Op::Set(l) => {
                            let r = before.set(l);
                            prop_assert_eq!(r.is_ok(), !before.pointer().is_root());
                            r
                        }
                    };
                    // persistence
                    prop_assert_eq!(before.entries(), snapshot);
                    if let Ok(next) = result {
                        prop_assert!(next.check_invariants().is_ok());
                        ts = next;
                    }
                }
            }
        }
    }
}
