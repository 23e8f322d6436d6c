//! Canonical element payloads shared by every group kind.

use std::cmp::Ordering;
use std::fmt;

use crate::wreath::WreathElement;

/// A group element in canonical form.
///
/// Equality is structural: two payloads denote the same element of a given
/// group exactly when they compare equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Element {
    /// Integers, and residues in `[0, n)` for cyclic groups and Cayley-table indices.
    Int(i64),
    /// Permutation of `{0..n-1}` as an image array.
    Perm(Vec<usize>),
    /// Freely reduced word: `k > 0` is generator `k`, `-k` its inverse.
    Word(Vec<i32>),
    Tuple(Vec<Element>),
    Wreath(Box<WreathElement>),
}

impl Element {
    fn rank(&self) -> u8 {
        match self {
            Element::Int(_) => 0,
            Element::Perm(_) => 1,
            Element::Word(_) => 2,
            Element::Tuple(_) => 3,
            Element::Wreath(_) => 4,
        }
    }

    pub fn kind_name(&self) -> &'static str {
        match self {
            Element::Int(_) => "integer",
            Element::Perm(_) => "permutation",
            Element::Word(_) => "word",
            Element::Tuple(_) => "tuple",
            Element::Wreath(_) => "wreath element",
        }
    }
}

/// Letters sort as `a < a^-1 < b < b^-1 < ...`.
fn letter_key(l: i32) -> (u32, bool) {
    (l.unsigned_abs(), l < 0)
}

impl Ord for Element {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Element::Int(a), Element::Int(b)) => a.cmp(b),
            (Element::Perm(a), Element::Perm(b)) => a.cmp(b),
            (Element::Word(a), Element::Word(b)) => a
                .len()
                .cmp(&b.len())
                .then_with(|| a.iter().map(|&l| letter_key(l)).cmp(b.iter().map(|&l| letter_key(l)))),
            (Element::Tuple(a), Element::Tuple(b)) => a.cmp(b),
            (Element::Wreath(a), Element::Wreath(b)) => a.cmp(b),
            _ => self.rank().cmp(&other.rank()),
        }
    }
}

impl PartialOrd for Element {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Appends `letter` to a reduced word, cancelling against the last letter.
pub(crate) fn push_reduced(word: &mut Vec<i32>, letter: i32) {
    if word.last() == Some(&-letter) {
        word.pop();
    } else {
        word.push(letter);
    }
}

pub(crate) fn reduce_word(letters: impl IntoIterator<Item = i32>) -> Vec<i32> {
    let mut out = Vec::new();
    for l in letters {
        push_reduced(&mut out, l);
    }
    out
}

pub(crate) fn letter_name(index: u32) -> String {
    if index <= 26 {
        ((b'a' + (index - 1) as u8) as char).to_string()
    } else {
        format!("x{index}")
    }
}

fn fmt_word(word: &[i32], f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if word.is_empty() {
        return f.write_str("1");
    }
    let mut first = true;
    let mut i = 0;
    while i < word.len() {
        let gen = word[i].unsigned_abs();
        let mut power: i64 = 0;
        while i < word.len() && word[i].unsigned_abs() == gen {
            power += word[i].signum() as i64;
            i += 1;
        }
        if !first {
            f.write_str("*")?;
        }
        first = false;
        f.write_str(&letter_name(gen))?;
        if power != 1 {
            write!(f, "^{power}")?;
        }
    }
    Ok(())
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Element::Int(n) => write!(f, "{n}"),
            Element::Perm(p) => {
                f.write_str("[")?;
                for (i, x) in p.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{x}")?;
                }
                f.write_str("]")
            }
            Element::Word(w) => fmt_word(w, f),
            Element::Tuple(items) => {
                f.write_str("(")?;
                for (i, x) in items.iter().enumerate() {
                    if i > 0 {
                        f.write_str("; ")?;
                    }
                    write!(f, "{x}")?;
                }
                f.write_str(")")
            }
            Element::Wreath(w) => write!(f, "{w}"),
        }
    }
}

/// Serialized as its literal.
impl serde::Serialize for Element {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn words_order_by_length_then_letters() {
        let a = Element::Word(vec![1]);
        let a_inv = Element::Word(vec![-1]);
        let b = Element::Word(vec![2]);
        let ab = Element::Word(vec![1, 2]);
        let mut v = vec![ab.clone(), b.clone(), a_inv.clone(), a.clone()];
        v.sort();
        assert_eq!(v, vec![a, a_inv, b, ab]);
    }

    #[test]
    fn reduction_cancels_adjacent_inverses() {
        assert_eq!(reduce_word([1, 2, -2, -1, 2]), vec![2]);
        assert_eq!(reduce_word([1, -1]), Vec::<i32>::new());
    }

    #[test]
    fn display_forms() {
        assert_eq!(Element::Word(vec![1, -2, 1]).to_string(), "a*b^-1*a");
        assert_eq!(Element::Word(vec![-2, -2, 1]).to_string(), "b^-2*a");
        assert_eq!(Element::Word(vec![]).to_string(), "1");
        assert_eq!(Element::Perm(vec![2, 0, 1]).to_string(), "[2,0,1]");
        assert_eq!(
            Element::Tuple(vec![Element::Int(1), Element::Word(vec![1])]).to_string(),
            "(1; a)"
        );
    }
}
