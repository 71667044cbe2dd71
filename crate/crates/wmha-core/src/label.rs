//! Basis labels.
//!
//! Labels are opaque atoms (morphism names, point names, synthetic names) or
//! tuples of labels for tensor-product bases. Tuples compare
//! lexicographically, so every matrix indexed by a tensor basis comes out in
//! a reproducible order.

use alloc::boxed::Box;
use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

/// A basis label: an atom, or a tuple of arity 2 or 3 for tensor spaces.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Label {
    Atom(Box<str>),
    Tuple(Vec<Label>),
}

impl Label {
    pub fn atom(s: impl Into<String>) -> Self {
        Label::Atom(s.into().into_boxed_str())
    }

    pub fn pair(a: Label, b: Label) -> Self {
        Label::Tuple(alloc::vec![a, b])
    }

    pub fn triple(a: Label, b: Label, c: Label) -> Self {
        Label::Tuple(alloc::vec![a, b, c])
    }

    pub fn as_atom(&self) -> Option<&str> {
        match self {
            Label::Atom(s) => Some(s),
            Label::Tuple(_) => None,
        }
    }

    pub fn as_pair(&self) -> Option<(&Label, &Label)> {
        match self {
            Label::Tuple(parts) if parts.len() == 2 => Some((&parts[0], &parts[1])),
            _ => None,
        }
    }

    pub fn as_triple(&self) -> Option<(&Label, &Label, &Label)> {
        match self {
            Label::Tuple(parts) if parts.len() == 3 => Some((&parts[0], &parts[1], &parts[2])),
            _ => None,
        }
    }

    /// (a,b) -> (b,a); panics on non-pairs.
    pub fn flipped(&self) -> Label {
        let (a, b) = self.as_pair().expect("flip needs a pair label");
        Label::pair(b.clone(), a.clone())
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Atom(s) => write!(f, "{s}"),
            Label::Tuple(parts) => {
                write!(f, "(")?;
                for (i, p) in parts.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{p}")?;
                }
                write!(f, ")")
            }
        }
    }
}

/// An ordered finite basis with constant-time label lookup.
#[derive(Clone, Debug)]
pub struct Basis {
    labels: Vec<Label>,
    index: BTreeMap<Label, usize>,
}

impl Basis {
    /// Builds a basis from distinct labels; panics on duplicates.
    pub fn new(labels: Vec<Label>) -> Self {
        let mut index = BTreeMap::new();
        for (i, l) in labels.iter().enumerate() {
            let old = index.insert(l.clone(), i);
            assert!(old.is_none(), "duplicate basis label {l}");
        }
        Basis { labels, index }
    }

    pub fn from_atoms<I: IntoIterator<Item = S>, S: Into<String>>(atoms: I) -> Self {
        Basis::new(atoms.into_iter().map(Label::atom).collect())
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &Label {
        &self.labels[i]
    }

    pub fn position(&self, l: &Label) -> Option<usize> {
        self.index.get(l).copied()
    }

    pub fn contains(&self, l: &Label) -> bool {
        self.index.contains_key(l)
    }

    pub fn iter(&self) -> core::slice::Iter<'_, Label> {
        self.labels.iter()
    }

    /// Pair basis in lexicographic (row-major) order of the factors.
    pub fn tensor(&self, other: &Basis) -> Basis {
        let mut labels = Vec::with_capacity(self.len() * other.len());
        for a in self.iter() {
            for b in other.iter() {
                labels.push(Label::pair(a.clone(), b.clone()));
            }
        }
        Basis::new(labels)
    }

    /// Triple basis in lexicographic order of the factors.
    pub fn tensor3(&self, mid: &Basis, right: &Basis) -> Basis {
        let mut labels = Vec::with_capacity(self.len() * mid.len() * right.len());
        for a in self.iter() {
            for b in mid.iter() {
                for c in right.iter() {
                    labels.push(Label::triple(a.clone(), b.clone(), c.clone()));
                }
            }
        }
        Basis::new(labels)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tuple_order_is_lexicographic() {
        let ab = Label::pair(Label::atom("a"), Label::atom("b"));
        let ba = Label::pair(Label::atom("b"), Label::atom("a"));
        let aa = Label::pair(Label::atom("a"), Label::atom("a"));
        assert!(aa < ab);
        assert!(ab < ba);
    }

    #[test]
    fn basis_lookup() {
        let b = Basis::from_atoms(["p", "q", "r"]);
        assert_eq!(b.len(), 3);
        assert_eq!(b.position(&Label::atom("q")), Some(1));
        assert_eq!(b.position(&Label::atom("z")), None);
        let t = b.tensor(&b);
        assert_eq!(t.len(), 9);
        assert_eq!(
            t.label(1),
            &Label::pair(Label::atom("p"), Label::atom("q"))
        );
    }
}
