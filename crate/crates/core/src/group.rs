//! Base groups usable as `D` or `Q`: element arithmetic and property oracles.
//!
//! FC membership and the icc property are undecidable for arbitrary finitely
//! presented groups, so every catalog kind carries *declared* facts with a
//! one-line justification. Nested wreath products get their icc status from
//! [`crate::decision`].

use std::collections::HashSet;
use std::fmt;
use std::sync::Arc;

use rand::Rng;
use serde::Serialize;

use crate::element::{push_reduced, reduce_word, Element};
use crate::error::{Error, Result};
use crate::tri::Tri;
use crate::wreath::WreathGroup;

/// Finite groups larger than this are never enumerated element by element.
pub const MAX_ENUMERATED_ORDER: u128 = 200_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CayleyTable {
    table: Vec<Vec<usize>>,
    identity: usize,
    inverses: Vec<usize>,
}

impl CayleyTable {
    /// Validates a multiplication table `table[i][j] = i * j` on `{0..n-1}`.
    pub fn new(table: Vec<Vec<usize>>) -> Result<Self> {
        let n = table.len();
        if n == 0 {
            return Err(Error::InvalidGroup("empty Cayley table".into()));
        }
        for row in &table {
            if row.len() != n || row.iter().any(|&x| x >= n) {
                return Err(Error::InvalidGroup(
                    "Cayley table must be square with entries in 0..n".into(),
                ));
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| table[e][x] == x && table[x][e] == x))
            .ok_or_else(|| Error::InvalidGroup("Cayley table has no identity".into()))?;
        let mut inverses = Vec::with_capacity(n);
        for (x, row) in table.iter().enumerate() {
            let inv = (0..n)
                .find(|&y| row[y] == identity && table[y][x] == identity)
                .ok_or_else(|| Error::InvalidGroup(format!("element {x} has no inverse")))?;
            inverses.push(inv);
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(Error::InvalidGroup(format!(
                            "Cayley table is not associative at ({a}, {b}, {c})"
                        )));
                    }
                }
            }
        }
        Ok(CayleyTable {
            table,
            identity,
            inverses,
        })
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    /// Greedy generating set: scan elements in index order and keep any
    /// element outside the subgroup generated so far.
    fn generators(&self) -> Vec<usize> {
        let n = self.order();
        let mut in_sub = vec![false; n];
        in_sub[self.identity] = true;
        let mut gens = Vec::new();
        for x in 0..n {
            if in_sub[x] {
                continue;
            }
            gens.push(x);
            let mut members: Vec<usize> = (0..n).filter(|&i| in_sub[i]).collect();
            let mut i = 0;
            while i < members.len() {
                for &g in &gens {
                    let y = self.table[members[i]][g];
                    if !in_sub[y] {
                        in_sub[y] = true;
                        members.push(y);
                    }
                }
                i += 1;
            }
        }
        gens
    }
}

#[derive(Debug, PartialEq)]
pub enum GroupKind {
    Cayley(CayleyTable),
    Cyclic(u64),
    Symmetric(usize),
    Integers,
    Free(usize),
    Product(Vec<Group>),
    Wreath(WreathGroup),
}

#[derive(Debug, PartialEq)]
struct Inner {
    kind: GroupKind,
    generators: Vec<Element>,
}

/// A base group from the catalog. Cheap to clone; immutable after construction.
#[derive(Debug, Clone)]
pub struct Group(Arc<Inner>);

impl PartialEq for Group {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    Computed,
    Declared,
    TheoremDerived,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IccStatus {
    pub answer: Tri,
    pub provenance: Provenance,
    pub justification: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ClassStatus {
    /// Closure under the listed generators stabilized.
    ExactFinite,
    /// `max_size` distinct conjugates were found.
    AtLeast,
    /// The radius ran out before the closure stabilized.
    BudgetExhausted,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ClassReport {
    pub status: ClassStatus,
    /// Distinct conjugates found, sorted canonically.
    pub elements: Vec<Element>,
    pub radius_used: usize,
    /// Set when the group is infinite: closure under the listed generators
    /// only certifies invariance under the subgroup they generate.
    pub generators_only: bool,
}

impl ClassReport {
    pub fn size_lower_bound(&self) -> usize {
        self.elements.len()
    }
}

fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}

impl Group {
    fn from_kind(kind: GroupKind) -> Group {
        let generators = match &kind {
            GroupKind::Cayley(t) => t.generators().into_iter().map(|x| Element::Int(x as i64)).collect(),
            GroupKind::Cyclic(n) => {
                if *n > 1 {
                    vec![Element::Int(1)]
                } else {
                    vec![]
                }
            }
            GroupKind::Symmetric(n) => {
                let n = *n;
                let mut gens = Vec::new();
                if n >= 2 {
                    let mut t: Vec<usize> = (0..n).collect();
                    t.swap(0, 1);
                    gens.push(Element::Perm(t));
                }
                if n >= 3 {
                    gens.push(Element::Perm((0..n).map(|i| (i + 1) % n).collect()));
                }
                gens
            }
            GroupKind::Integers => vec![Element::Int(1)],
            GroupKind::Free(r) => (1..=*r as i32).map(|k| Element::Word(vec![k])).collect(),
            GroupKind::Product(factors) => {
                let ids: Vec<Element> = factors.iter().map(Group::identity).collect();
                let mut gens = Vec::new();
                for (i, f) in factors.iter().enumerate() {
                    for g in f.generators() {
                        let mut t = ids.clone();
                        t[i] = g.clone();
                        gens.push(Element::Tuple(t));
                    }
                }
                gens
            }
            GroupKind::Wreath(w) => w
                .generators()
                .iter()
                .map(|g| Element::Wreath(Box::new(g.clone())))
                .collect(),
        };
        Group(Arc::new(Inner { kind, generators }))
    }

    pub fn cayley(table: Vec<Vec<usize>>) -> Result<Group> {
        Ok(Group::from_kind(GroupKind::Cayley(CayleyTable::new(table)?)))
    }

    pub fn cyclic(n: u64) -> Result<Group> {
        if n == 0 {
            return Err(Error::InvalidGroup("cyclic order must be positive".into()));
        }
        if n > i64::MAX as u64 {
            return Err(Error::InvalidGroup("cyclic order too large".into()));
        }
        Ok(Group::from_kind(GroupKind::Cyclic(n)))
    }

    pub fn symmetric(n: usize) -> Result<Group> {
        if n == 0 || n > 12 {
            return Err(Error::InvalidGroup("symmetric degree must be in 1..=12".into()));
        }
        Ok(Group::from_kind(GroupKind::Symmetric(n)))
    }

    pub fn integers() -> Group {
        Group::from_kind(GroupKind::Integers)
    }

    pub fn free(rank: usize) -> Result<Group> {
        if rank == 0 || rank > i32::MAX as usize {
            return Err(Error::InvalidGroup("free group rank must be at least 1".into()));
        }
        Ok(Group::from_kind(GroupKind::Free(rank)))
    }

    pub fn product(factors: Vec<Group>) -> Result<Group> {
        if factors.is_empty() {
            return Err(Error::InvalidGroup("direct product needs at least one factor".into()));
        }
        Ok(Group::from_kind(GroupKind::Product(factors)))
    }

    pub fn wreath(w: WreathGroup) -> Group {
        Group::from_kind(GroupKind::Wreath(w))
    }

    pub fn kind(&self) -> &GroupKind {
        &self.0.kind
    }

    pub fn generators(&self) -> &[Element] {
        &self.0.generators
    }

    pub fn as_wreath(&self) -> Option<&WreathGroup> {
        match self.kind() {
            GroupKind::Wreath(w) => Some(w),
            _ => None,
        }
    }

    pub fn identity(&self) -> Element {
        match self.kind() {
            GroupKind::Cayley(t) => Element::Int(t.identity as i64),
            GroupKind::Cyclic(_) | GroupKind::Integers => Element::Int(0),
            GroupKind::Symmetric(n) => Element::Perm((0..*n).collect()),
            GroupKind::Free(_) => Element::Word(vec![]),
            GroupKind::Product(fs) => Element::Tuple(fs.iter().map(Group::identity).collect()),
            GroupKind::Wreath(w) => Element::Wreath(Box::new(w.identity())),
        }
    }

    pub fn is_identity(&self, x: &Element) -> bool {
        *x == self.identity()
    }

    /// Checks that `x` is a canonical payload for this group.
    pub fn validate(&self, x: &Element) -> Result<()> {
        match (self.kind(), x) {
            (GroupKind::Cayley(t), Element::Int(i)) => {
                if *i < 0 || *i as usize >= t.order() {
                    return Err(Error::InvalidElement(format!("{i} is not in 0..{}", t.order())));
                }
            }
            (GroupKind::Cyclic(n), Element::Int(i)) => {
                if *i < 0 || *i as u64 >= *n {
                    return Err(Error::InvalidElement(format!("residue {i} is not in [0, {n})")));
                }
            }
            (GroupKind::Integers, Element::Int(_)) => {}
            (GroupKind::Symmetric(n), Element::Perm(p)) => {
                let mut seen = vec![false; *n];
                if p.len() != *n {
                    return Err(Error::InvalidElement(format!("permutation must have {n} images")));
                }
                for &x in p {
                    if x >= *n || seen[x] {
                        return Err(Error::InvalidElement(format!("{x:?} is not a bijection on 0..{n}")));
                    }
                    seen[x] = true;
                }
            }
            (GroupKind::Free(r), Element::Word(w)) => {
                if w.iter().any(|&l| l == 0 || l.unsigned_abs() as usize > *r) {
                    return Err(Error::InvalidElement(format!("word uses a letter outside rank {r}")));
                }
                if w.windows(2).any(|p| p[0] == -p[1]) {
                    return Err(Error::InvalidElement("word is not freely reduced".into()));
                }
            }
            (GroupKind::Product(fs), Element::Tuple(items)) => {
                if fs.len() != items.len() {
                    return Err(Error::InvalidElement(format!("expected a {}-tuple", fs.len())));
                }
                for (f, x) in fs.iter().zip(items) {
                    f.validate(x)?;
                }
            }
            (GroupKind::Wreath(w), Element::Wreath(x)) => w.validate(x)?,
            (_, x) => return Err(Error::mismatch(self.to_string(), x.kind_name())),
        }
        Ok(())
    }

    pub fn multiply(&self, a: &Element, b: &Element) -> Result<Element> {
        Ok(match (self.kind(), a, b) {
            (GroupKind::Cayley(t), Element::Int(i), Element::Int(j)) => {
                let n = t.order() as i64;
                if !(0..n).contains(i) || !(0..n).contains(j) {
                    return Err(Error::InvalidElement("Cayley index out of range".into()));
                }
                Element::Int(t.table[*i as usize][*j as usize] as i64)
            }
            (GroupKind::Cyclic(n), Element::Int(i), Element::Int(j)) => {
                let n = *n as i128;
                Element::Int(((*i as i128 + *j as i128).rem_euclid(n)) as i64)
            }
            (GroupKind::Integers, Element::Int(i), Element::Int(j)) => Element::Int(
                i.checked_add(*j)
                    .ok_or_else(|| Error::InvalidElement("integer overflow".into()))?,
            ),
            (GroupKind::Symmetric(n), Element::Perm(p), Element::Perm(q)) => {
                if p.len() != *n || q.len() != *n {
                    return Err(Error::InvalidElement(format!("permutation must have {n} images")));
                }
                // (p q)(x) = p(q(x))
                Element::Perm(q.iter().map(|&x| p[x]).collect())
            }
            (GroupKind::Free(_), Element::Word(u), Element::Word(v)) => {
                let mut w = u.clone();
                for &l in v {
                    push_reduced(&mut w, l);
                }
                Element::Word(w)
            }
            (GroupKind::Product(fs), Element::Tuple(x), Element::Tuple(y)) => {
                if x.len() != fs.len() || y.len() != fs.len() {
                    return Err(Error::InvalidElement(format!("expected a {}-tuple", fs.len())));
                }
                Element::Tuple(
                    fs.iter()
                        .zip(x.iter().zip(y))
                        .map(|(f, (a, b))| f.multiply(a, b))
                        .collect::<Result<_>>()?,
                )
            }
            (GroupKind::Wreath(w), Element::Wreath(x), Element::Wreath(y)) => {
                Element::Wreath(Box::new(w.multiply(x, y)?))
            }
            (_, a, b) => {
                let bad = if self.validate(a).is_err() { a } else { b };
                return Err(Error::mismatch(self.to_string(), bad.kind_name()));
            }
        })
    }

    pub fn inverse(&self, a: &Element) -> Result<Element> {
        Ok(match (self.kind(), a) {
            (GroupKind::Cayley(t), Element::Int(i)) => {
                if *i < 0 || *i as usize >= t.order() {
                    return Err(Error::InvalidElement("Cayley index out of range".into()));
                }
                Element::Int(t.inverses[*i as usize] as i64)
            }
            (GroupKind::Cyclic(n), Element::Int(i)) => Element::Int((-(*i as i128)).rem_euclid(*n as i128) as i64),
            (GroupKind::Integers, Element::Int(i)) => Element::Int(
                i.checked_neg()
                    .ok_or_else(|| Error::InvalidElement("integer overflow".into()))?,
            ),
            (GroupKind::Symmetric(n), Element::Perm(p)) => {
                if p.len() != *n {
                    return Err(Error::InvalidElement(format!("permutation must have {n} images")));
                }
                let mut inv = vec![0; *n];
                for (i, &x) in p.iter().enumerate() {
                    inv[x] = i;
                }
                Element::Perm(inv)
            }
            (GroupKind::Free(_), Element::Word(w)) => Element::Word(w.iter().rev().map(|l| -l).collect()),
            (GroupKind::Product(fs), Element::Tuple(x)) => {
                if x.len() != fs.len() {
                    return Err(Error::InvalidElement(format!("expected a {}-tuple", fs.len())));
                }
                Element::Tuple(fs.iter().zip(x).map(|(f, a)| f.inverse(a)).collect::<Result<_>>()?)
            }
            (GroupKind::Wreath(w), Element::Wreath(x)) => Element::Wreath(Box::new(w.inverse(x)?)),
            (_, a) => return Err(Error::mismatch(self.to_string(), a.kind_name())),
        })
    }

    /// `x^y = y⁻¹ x y`.
    pub fn conjugate(&self, x: &Element, y: &Element) -> Result<Element> {
        let yi = self.inverse(y)?;
        self.multiply(&self.multiply(&yi, x)?, y)
    }

    /// Product of a word in the generators; `(i, true)` means the inverse of generator `i`.
    pub fn evaluate_word(&self, word: &[(usize, bool)]) -> Result<Element> {
        let mut acc = self.identity();
        for &(i, inv) in word {
            let g = self
                .generators()
                .get(i)
                .ok_or_else(|| Error::InvalidElement(format!("no generator {i}")))?;
            let g = if inv { self.inverse(g)? } else { g.clone() };
            acc = self.multiply(&acc, &g)?;
        }
        Ok(acc)
    }

    /// Generators followed by their inverses, duplicates removed.
    pub fn symmetric_generators(&self) -> Vec<Element> {
        let mut out: Vec<Element> = Vec::new();
        for g in self.generators() {
            for x in [g.clone(), self.inverse(g).expect("generators are valid")] {
                if !out.contains(&x) {
                    out.push(x);
                }
            }
        }
        out
    }

    pub fn is_finite(&self) -> bool {
        match self.kind() {
            GroupKind::Cayley(_) | GroupKind::Cyclic(_) | GroupKind::Symmetric(_) => true,
            GroupKind::Integers | GroupKind::Free(_) => false,
            GroupKind::Product(fs) => fs.iter().all(Group::is_finite),
            GroupKind::Wreath(w) => w.is_finite(),
        }
    }

    /// Exact order of a finite group; `None` for infinite groups or overflow.
    pub fn order(&self) -> Option<u128> {
        match self.kind() {
            GroupKind::Cayley(t) => Some(t.order() as u128),
            GroupKind::Cyclic(n) => Some(*n as u128),
            GroupKind::Symmetric(n) => Some(factorial(*n)),
            GroupKind::Integers | GroupKind::Free(_) => None,
            GroupKind::Product(fs) => fs
                .iter()
                .try_fold(1u128, |acc, f| f.order().and_then(|o| acc.checked_mul(o))),
            GroupKind::Wreath(w) => w.order(),
        }
    }

    pub fn is_trivial(&self) -> bool {
        match self.kind() {
            GroupKind::Cayley(t) => t.order() == 1,
            GroupKind::Cyclic(n) => *n == 1,
            GroupKind::Symmetric(n) => *n == 1,
            GroupKind::Integers | GroupKind::Free(_) => false,
            GroupKind::Product(fs) => fs.iter().all(Group::is_trivial),
            GroupKind::Wreath(w) => w.is_trivial(),
        }
    }

    /// Membership in the FC-center.
    pub fn fc_contains(&self, x: &Element) -> Result<bool> {
        self.validate(x)?;
        match (self.kind(), x) {
            (GroupKind::Cayley(_) | GroupKind::Cyclic(_) | GroupKind::Symmetric(_), _) => Ok(true),
            (GroupKind::Integers, _) | (GroupKind::Free(1), _) => Ok(true),
            (GroupKind::Free(_), Element::Word(w)) => Ok(w.is_empty()),
            (GroupKind::Product(fs), Element::Tuple(items)) => {
                for (f, y) in fs.iter().zip(items) {
                    if !f.fc_contains(y)? {
                        return Ok(false);
                    }
                }
                Ok(true)
            }
            (GroupKind::Wreath(_), _) => Err(Error::Unsupported(
                "FC membership is not available for wreath products".into(),
            )),
            _ => unreachable!("validated above"),
        }
    }

    pub fn icc_status(&self) -> IccStatus {
        let declared = |answer, why: &str| IccStatus {
            answer,
            provenance: Provenance::Declared,
            justification: why.to_string(),
        };
        if self.is_trivial() {
            return declared(Tri::No, "trivial groups are not icc by definition");
        }
        match self.kind() {
            GroupKind::Cayley(_) | GroupKind::Cyclic(_) | GroupKind::Symmetric(_) => {
                declared(Tri::No, "every conjugacy class of a finite group is finite")
            }
            GroupKind::Integers => declared(Tri::No, "abelian: every class is a singleton"),
            GroupKind::Free(1) => declared(Tri::No, "free of rank 1 is isomorphic to Z"),
            GroupKind::Free(_) => declared(
                Tri::Yes,
                "in a free group of rank >= 2 the centralizer of w != 1 is cyclic of infinite index",
            ),
            GroupKind::Product(fs) => {
                let answer = Tri::all(fs.iter().filter(|f| !f.is_trivial()).map(|f| f.icc_status().answer));
                IccStatus {
                    answer,
                    provenance: Provenance::Computed,
                    justification: "a direct product of nontrivial groups is icc iff every factor is".into(),
                }
            }
            GroupKind::Wreath(w) => {
                let (answer, justification) = match crate::decision::decide_icc(w) {
                    Ok(v) => (v.answer, v.reason),
                    Err(e) => (Tri::Unknown, e.to_string()),
                };
                IccStatus {
                    answer,
                    provenance: Provenance::TheoremDerived,
                    justification,
                }
            }
        }
    }

    /// A nontrivial element of FC(Q), if one exists.
    pub fn nontrivial_fc_element(&self) -> (Tri, Option<Element>) {
        if self.is_trivial() {
            return (Tri::No, None);
        }
        match self.kind() {
            GroupKind::Cayley(_) | GroupKind::Cyclic(_) | GroupKind::Symmetric(_) | GroupKind::Integers => {
                (Tri::Yes, self.generators().first().cloned())
            }
            GroupKind::Free(1) => (Tri::Yes, Some(Element::Word(vec![1]))),
            GroupKind::Free(_) => (Tri::No, None),
            GroupKind::Product(fs) => {
                let mut answer = Tri::No;
                for (i, f) in fs.iter().enumerate() {
                    match f.nontrivial_fc_element() {
                        (Tri::Yes, Some(x)) => {
                            let mut t: Vec<Element> = fs.iter().map(Group::identity).collect();
                            t[i] = x;
                            return (Tri::Yes, Some(Element::Tuple(t)));
                        }
                        (t, _) => answer = answer.or(t),
                    }
                }
                (answer, None)
            }
            GroupKind::Wreath(_) => (Tri::Unknown, None),
        }
    }

    /// Enumerates the generator ball: layer by layer, each layer sorted canonically.
    pub fn ball(&self) -> Ball {
        Ball::new(self.clone())
    }

    /// All elements of a finite group in canonical order.
    pub fn elements(&self) -> Result<Vec<Element>> {
        match self.order() {
            Some(o) if o <= MAX_ENUMERATED_ORDER => {
                let mut all: Vec<Element> = self.ball().collect();
                all.sort();
                Ok(all)
            }
            Some(_) => Err(Error::Unsupported(format!("{self} is too large to enumerate"))),
            None => Err(Error::Unsupported(format!("{self} is infinite"))),
        }
    }

    /// BFS closure of `{x}` under conjugation by the generators and their inverses.
    pub fn class_enum_bounded(&self, x: &Element, radius: usize, max_size: usize) -> Result<ClassReport> {
        if radius == 0 || max_size == 0 {
            return Err(Error::ZeroBudget);
        }
        self.validate(x)?;
        let conjugators = self.symmetric_generators();
        let mut seen: HashSet<Element> = HashSet::from([x.clone()]);
        let mut frontier = vec![x.clone()];
        let mut status = ClassStatus::BudgetExhausted;
        let mut rounds = 0;
        'rounds: while rounds < radius {
            rounds += 1;
            let mut next = Vec::new();
            for y in &frontier {
                for s in &conjugators {
                    let z = self.conjugate(y, s)?;
                    if !seen.contains(&z) {
                        if seen.len() >= max_size {
                            status = ClassStatus::AtLeast;
                            break 'rounds;
                        }
                        seen.insert(z.clone());
                        next.push(z);
                    }
                }
            }
            if next.is_empty() {
                status = ClassStatus::ExactFinite;
                break;
            }
            frontier = next;
        }
        let mut elements: Vec<Element> = seen.into_iter().collect();
        elements.sort();
        Ok(ClassReport {
            status,
            elements,
            radius_used: rounds,
            generators_only: !self.is_finite(),
        })
    }

    /// A nonempty finite set of nontrivial elements closed under conjugation.
    pub fn finite_invariant_set_example(&self) -> Result<Vec<Element>> {
        if self.is_trivial() {
            return Err(Error::Precondition(format!("{self} is trivial")));
        }
        if let GroupKind::Wreath(w) = self.kind() {
            return crate::witness::invariant_set(w)
                .map(|set| set.into_iter().map(|g| Element::Wreath(Box::new(g))).collect());
        }
        if self.icc_status().answer != Tri::No {
            return Err(Error::Precondition(format!("{self} is icc or has unknown icc status")));
        }
        match self.kind() {
            GroupKind::Integers => Ok(vec![Element::Int(1)]),
            GroupKind::Free(_) => Ok(vec![Element::Word(vec![1])]),
            GroupKind::Product(fs) => {
                for (i, f) in fs.iter().enumerate() {
                    if f.is_trivial() || f.icc_status().answer != Tri::No {
                        continue;
                    }
                    let xi = f.finite_invariant_set_example()?;
                    let ids: Vec<Element> = fs.iter().map(Group::identity).collect();
                    return Ok(xi
                        .into_iter()
                        .map(|x| {
                            let mut t = ids.clone();
                            t[i] = x;
                            Element::Tuple(t)
                        })
                        .collect());
                }
                Err(Error::Precondition("no factor supplies a finite invariant set".into()))
            }
            _ => {
                let all = self.elements()?;
                let x = all
                    .into_iter()
                    .find(|x| !self.is_identity(x))
                    .expect("nontrivial finite group");
                let order = self.order().unwrap() as usize;
                let report = self.class_enum_bounded(&x, order + 1, order + 1)?;
                debug_assert_eq!(report.status, ClassStatus::ExactFinite);
                Ok(report.elements)
            }
        }
    }

    /// Product of `0..=max_len` uniformly chosen generators or inverses.
    pub fn random_element<R: Rng + ?Sized>(&self, rng: &mut R, max_len: usize) -> Element {
        let gens = self.symmetric_generators();
        if gens.is_empty() {
            return self.identity();
        }
        if let GroupKind::Free(_) = self.kind() {
            let len = rng.gen_range(0..=max_len);
            let letters: Vec<i32> = (0..len)
                .map(|_| match &gens[rng.gen_range(0..gens.len())] {
                    Element::Word(w) => w[0],
                    _ => unreachable!(),
                })
                .collect();
            return Element::Word(reduce_word(letters));
        }
        let len = rng.gen_range(0..=max_len);
        let mut acc = self.identity();
        for _ in 0..len {
            let g = &gens[rng.gen_range(0..gens.len())];
            acc = self.multiply(&acc, g).expect("generators are valid");
        }
        acc
    }
}

impl fmt::Display for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind() {
            GroupKind::Cayley(t) => write!(f, "Cayley({})", t.order()),
            GroupKind::Cyclic(n) => write!(f, "Z_{n}"),
            GroupKind::Symmetric(n) => write!(f, "S_{n}"),
            GroupKind::Integers => f.write_str("Z"),
            GroupKind::Free(r) => write!(f, "F_{r}"),
            GroupKind::Product(fs) => {
                f.write_str("(")?;
                for (i, g) in fs.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" x ")?;
                    }
                    write!(f, "{g}")?;
                }
                f.write_str(")")
            }
            GroupKind::Wreath(w) => write!(f, "{w}"),
        }
    }
}

/// Generator-ball enumeration: identity first, then each sphere in canonical order.
///
/// Deterministic, so the `n`-th element is a pure function of `n`.
#[derive(Debug, Clone)]
pub struct Ball {
    group: Group,
    steps: Vec<Element>,
    seen: HashSet<Element>,
    layer: Vec<Element>,
    pos: usize,
    radius: usize,
}

impl Ball {
    fn new(group: Group) -> Ball {
        let id = group.identity();
        let steps = group.symmetric_generators();
        Ball {
            group,
            steps,
            seen: HashSet::from([id.clone()]),
            layer: vec![id],
            pos: 0,
            radius: 0,
        }
    }

    /// Radius of the sphere the next element comes from.
    pub fn radius(&self) -> usize {
        self.radius
    }
}

impl Iterator for Ball {
    type Item = Element;

    fn next(&mut self) -> Option<Element> {
        if self.pos >= self.layer.len() {
            let mut next = Vec::new();
            for x in &self.layer {
                for s in &self.steps {
                    let y = self.group.multiply(s, x).expect("generators are valid");
                    if self.seen.insert(y.clone()) {
                        next.push(y);
                    }
                }
            }
            if next.is_empty() {
                return None;
            }
            next.sort();
            self.layer = next;
            self.pos = 0;
            self.radius += 1;
        }
        self.pos += 1;
        Some(self.layer[self.pos - 1].clone())
    }
}
