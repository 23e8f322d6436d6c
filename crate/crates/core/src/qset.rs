//! Countable Q-sets and the structural oracles the icc criterion consumes.
//!
//! Orbit infinitude, the kernel and freeness are answered from the carrier
//! kind. Bounded orbit search exists for evidence only and never feeds a
//! determined answer.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::element::Element;
use crate::error::{Error, Result};
use crate::group::{Group, GroupKind};
use crate::tri::Tri;

/// A point of Ω.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum OmegaPoint {
    /// Finite-explicit and trivial carriers, and residues of `int-mod`.
    Index(i64),
    /// A point of the regular Q-set.
    Elem(Element),
    /// `(part, point)` in a disjoint union.
    Tagged(usize, Box<OmegaPoint>),
}

impl OmegaPoint {
    pub fn tagged(part: usize, point: OmegaPoint) -> OmegaPoint {
        OmegaPoint::Tagged(part, Box::new(point))
    }
}

impl fmt::Display for OmegaPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OmegaPoint::Index(i) => write!(f, "{i}"),
            OmegaPoint::Elem(e) => write!(f, "{e}"),
            OmegaPoint::Tagged(i, p) => write!(f, "<{i},{p}>"),
        }
    }
}

impl Serialize for OmegaPoint {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// Action of a finite Q on `{0..size-1}`, given per generator and extended to
/// every element of Q.
#[derive(Debug, Clone, PartialEq)]
pub struct FiniteAction {
    size: usize,
    tables: Vec<Vec<usize>>,
    images: HashMap<Element, Vec<usize>>,
}

impl FiniteAction {
    fn new(q: &Group, size: usize, tables: Vec<Vec<usize>>) -> Result<Self> {
        if !q.is_finite() {
            return Err(Error::InvalidQSet(
                "finite-explicit carriers need a finite acting group".into(),
            ));
        }
        if tables.len() != q.generators().len() {
            return Err(Error::InvalidQSet(format!(
                "expected one action table per generator of {q} ({}), got {}",
                q.generators().len(),
                tables.len()
            )));
        }
        for t in &tables {
            let mut seen = vec![false; size];
            if t.len() != size || t.iter().any(|&x| x >= size || std::mem::replace(&mut seen[x], true)) {
                return Err(Error::InvalidQSet(format!(
                    "action table {t:?} is not a permutation of 0..{size}"
                )));
            }
        }
        let id = q.identity();
        let mut images = HashMap::from([(id.clone(), (0..size).collect::<Vec<_>>())]);
        let mut queue = vec![id];
        let mut i = 0;
        while i < queue.len() {
            let e = queue[i].clone();
            i += 1;
            for (s, table) in q.generators().iter().zip(&tables) {
                let se = q.multiply(s, &e)?;
                let img: Vec<usize> = images[&e].iter().map(|&x| table[x]).collect();
                match images.get(&se) {
                    Some(existing) if *existing != img => {
                        return Err(Error::InvalidQSet("action tables do not define an action of Q".into()))
                    }
                    Some(_) => {}
                    None => {
                        images.insert(se.clone(), img);
                        queue.push(se);
                    }
                }
            }
        }
        Ok(FiniteAction { size, tables, images })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn tables(&self) -> &[Vec<usize>] {
        &self.tables
    }

    fn image(&self, q: &Element) -> Result<&Vec<usize>> {
        self.images
            .get(q)
            .ok_or_else(|| Error::InvalidElement(format!("{q} is not an element of the acting group")))
    }

    /// Elements of Q acting trivially, sorted.
    fn kernel(&self) -> Vec<Element> {
        let mut k: Vec<Element> = self
            .images
            .iter()
            .filter(|(_, img)| img.iter().enumerate().all(|(i, &x)| i == x))
            .map(|(q, _)| q.clone())
            .collect();
        k.sort();
        k
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Carrier {
    FiniteExplicit(FiniteAction),
    Regular,
    IntMod(u64),
    Trivial(usize),
    Union(Vec<QSet>),
}

#[derive(Debug, PartialEq)]
struct Inner {
    q: Group,
    carrier: Carrier,
}

/// A countable set with a left action of Q.
#[derive(Debug, Clone)]
pub struct QSet(Arc<Inner>);

impl PartialEq for QSet {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }
}

/// Kernel of the action, in the forms the carriers can express.
#[derive(Debug, Clone, PartialEq)]
pub enum Kernel {
    Trivial,
    Whole,
    /// `nℤ` for Q = ℤ.
    Multiples(u64),
    /// Explicit list for finite Q.
    Explicit(Vec<Element>),
    Unknown,
}

impl Kernel {
    fn intersect(self, other: Kernel) -> Kernel {
        match (self, other) {
            (Kernel::Trivial, _) | (_, Kernel::Trivial) => Kernel::Trivial,
            (Kernel::Whole, k) | (k, Kernel::Whole) => k,
            (Kernel::Multiples(a), Kernel::Multiples(b)) => {
                let g = gcd(a, b);
                match (a / g).checked_mul(b) {
                    Some(l) if l <= i64::MAX as u64 => Kernel::Multiples(l),
                    _ => Kernel::Unknown,
                }
            }
            (Kernel::Explicit(a), Kernel::Explicit(b)) => {
                let b: HashSet<Element> = b.into_iter().collect();
                Kernel::Explicit(a.into_iter().filter(|x| b.contains(x)).collect())
            }
            _ => Kernel::Unknown,
        }
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct KernelReport {
    pub answer: Tri,
    /// A nontrivial FC element of Q fixing every point, when `answer` is Yes.
    pub q0: Option<Element>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum OrbitStatus {
    ExactFinite,
    ExceedsBudget,
}

#[derive(Debug, Clone, PartialEq)]
pub struct OrbitReport {
    pub status: OrbitStatus,
    pub points: Vec<OmegaPoint>,
    pub budget: usize,
}

impl QSet {
    fn build(q: Group, carrier: Carrier) -> QSet {
        QSet(Arc::new(Inner { q, carrier }))
    }

    pub fn regular(q: Group) -> Result<QSet> {
        if q.as_wreath().is_some() {
            return Err(Error::Unsupported("wreath products cannot act as Q".into()));
        }
        Ok(QSet::build(q, Carrier::Regular))
    }

    /// ℤ acting on ℤ/nℤ by translation.
    pub fn int_mod(q: Group, n: u64) -> Result<QSet> {
        if q.kind() != &GroupKind::Integers {
            return Err(Error::InvalidQSet("int-mod carriers require Q = Z".into()));
        }
        if n == 0 || n > i64::MAX as u64 {
            return Err(Error::InvalidQSet("int-mod modulus must be positive".into()));
        }
        Ok(QSet::build(q, Carrier::IntMod(n)))
    }

    pub fn trivial(q: Group, size: usize) -> Result<QSet> {
        if q.as_wreath().is_some() {
            return Err(Error::Unsupported("wreath products cannot act as Q".into()));
        }
        Ok(QSet::build(q, Carrier::Trivial(size)))
    }

    /// One permutation table per generator of the finite group `q`.
    pub fn finite_explicit(q: Group, size: usize, tables: Vec<Vec<usize>>) -> Result<QSet> {
        if q.as_wreath().is_some() {
            return Err(Error::Unsupported("wreath products cannot act as Q".into()));
        }
        let action = FiniteAction::new(&q, size, tables)?;
        Ok(QSet::build(q, Carrier::FiniteExplicit(action)))
    }

    /// The natural action of `S_n` on `{0..n-1}`.
    pub fn natural(q: Group) -> Result<QSet> {
        let n = match q.kind() {
            GroupKind::Symmetric(n) => *n,
            _ => return Err(Error::InvalidQSet("the natural action needs a symmetric group".into())),
        };
        let tables = q
            .generators()
            .iter()
            .map(|g| match g {
                Element::Perm(p) => p.clone(),
                _ => unreachable!(),
            })
            .collect();
        QSet::finite_explicit(q, n, tables)
    }

    pub fn union(q: Group, parts: Vec<QSet>) -> Result<QSet> {
        if let Some(p) = parts.iter().find(|p| p.acting_group() != &q) {
            return Err(Error::InvalidQSet(format!(
                "all parts of a union must be acted on by {q}, found {}",
                p.acting_group()
            )));
        }
        Ok(QSet::build(q, Carrier::Union(parts)))
    }

    pub fn acting_group(&self) -> &Group {
        &self.0.q
    }

    pub fn carrier(&self) -> &Carrier {
        &self.0.carrier
    }

    pub fn is_empty(&self) -> bool {
        match self.carrier() {
            Carrier::FiniteExplicit(a) => a.size == 0,
            Carrier::Regular | Carrier::IntMod(_) => false,
            Carrier::Trivial(k) => *k == 0,
            Carrier::Union(parts) => parts.iter().all(QSet::is_empty),
        }
    }

    /// Number of points, or `None` for infinite carriers.
    pub fn cardinality(&self) -> Option<u128> {
        match self.carrier() {
            Carrier::FiniteExplicit(a) => Some(a.size as u128),
            Carrier::Regular => self.acting_group().order(),
            Carrier::IntMod(n) => Some(*n as u128),
            Carrier::Trivial(k) => Some(*k as u128),
            Carrier::Union(parts) => parts
                .iter()
                .try_fold(0u128, |acc, p| p.cardinality().and_then(|c| acc.checked_add(c))),
        }
    }

    pub fn validate_point(&self, x: &OmegaPoint) -> Result<()> {
        let bad = || Error::InvalidElement(format!("{x} is not a point of {self}"));
        match (self.carrier(), x) {
            (Carrier::FiniteExplicit(a), OmegaPoint::Index(i)) if *i >= 0 && (*i as usize) < a.size => Ok(()),
            (Carrier::Trivial(k), OmegaPoint::Index(i)) if *i >= 0 && (*i as usize) < *k => Ok(()),
            (Carrier::IntMod(n), OmegaPoint::Index(i)) if *i >= 0 && (*i as u64) < *n => Ok(()),
            (Carrier::Regular, OmegaPoint::Elem(e)) => self.acting_group().validate(e),
            (Carrier::Union(parts), OmegaPoint::Tagged(i, p)) => parts.get(*i).ok_or_else(bad)?.validate_point(p),
            _ => Err(bad()),
        }
    }

    /// Left action `q · x`.
    pub fn act(&self, q: &Element, x: &OmegaPoint) -> Result<OmegaPoint> {
        match (self.carrier(), x) {
            (Carrier::FiniteExplicit(a), OmegaPoint::Index(i)) if *i >= 0 && (*i as usize) < a.size => {
                Ok(OmegaPoint::Index(a.image(q)?[*i as usize] as i64))
            }
            (Carrier::Regular, OmegaPoint::Elem(e)) => Ok(OmegaPoint::Elem(self.acting_group().multiply(q, e)?)),
            (Carrier::IntMod(n), OmegaPoint::Index(i)) if *i >= 0 && (*i as u64) < *n => match q {
                Element::Int(k) => Ok(OmegaPoint::Index(
                    ((*i as i128 + *k as i128).rem_euclid(*n as i128)) as i64,
                )),
                other => Err(Error::mismatch("Z", other.kind_name())),
            },
            (Carrier::Trivial(k), OmegaPoint::Index(i)) if *i >= 0 && (*i as usize) < *k => {
                self.acting_group().validate(q)?;
                Ok(x.clone())
            }
            (Carrier::Union(parts), OmegaPoint::Tagged(i, p)) if *i < parts.len() => {
                Ok(OmegaPoint::tagged(*i, parts[*i].act(q, p)?))
            }
            _ => Err(Error::InvalidElement(format!("{x} is not a point of {self}"))),
        }
    }

    /// BFS over generator (and inverse) actions.
    pub fn orbit_bounded(&self, x: &OmegaPoint, budget: usize) -> Result<OrbitReport> {
        if budget == 0 {
            return Err(Error::ZeroBudget);
        }
        self.validate_point(x)?;
        let steps = self.acting_group().symmetric_generators();
        let mut seen = HashSet::from([x.clone()]);
        let mut points = vec![x.clone()];
        let mut i = 0;
        while i < points.len() {
            for s in &steps {
                let y = self.act(s, &points[i])?;
                if !seen.contains(&y) {
                    if points.len() >= budget {
                        return Ok(OrbitReport {
                            status: OrbitStatus::ExceedsBudget,
                            points,
                            budget,
                        });
                    }
                    seen.insert(y.clone());
                    points.push(y);
                }
            }
            i += 1;
        }
        points.sort();
        Ok(OrbitReport {
            status: OrbitStatus::ExactFinite,
            points,
            budget,
        })
    }

    /// Condition (iii): every Q-orbit is infinite. Structural.
    pub fn all_orbits_infinite(&self) -> Tri {
        match self.carrier() {
            Carrier::Regular => Tri::from_bool(!self.acting_group().is_finite()),
            Carrier::FiniteExplicit(_) | Carrier::IntMod(_) | Carrier::Trivial(_) => Tri::from_bool(self.is_empty()),
            Carrier::Union(parts) => Tri::all(parts.iter().map(QSet::all_orbits_infinite)),
        }
    }

    /// Whether the orbit of a given point is infinite. Structural.
    pub fn orbit_is_infinite(&self, x: &OmegaPoint) -> Result<Tri> {
        self.validate_point(x)?;
        Ok(match (self.carrier(), x) {
            (Carrier::Union(parts), OmegaPoint::Tagged(i, p)) => parts[*i].orbit_is_infinite(p)?,
            _ => self.all_orbits_infinite(),
        })
    }

    /// A complete finite orbit, when one exists.
    pub fn finite_orbit_example(&self) -> Option<Vec<OmegaPoint>> {
        if self.is_empty() {
            return None;
        }
        match self.carrier() {
            Carrier::Regular => {
                if self.acting_group().is_finite() {
                    self.acting_group()
                        .elements()
                        .ok()
                        .map(|v| v.into_iter().map(OmegaPoint::Elem).collect())
                } else {
                    None
                }
            }
            Carrier::IntMod(n) => Some((0..*n as i64).map(OmegaPoint::Index).collect()),
            Carrier::Trivial(_) => Some(vec![OmegaPoint::Index(0)]),
            Carrier::FiniteExplicit(a) => {
                let report = self.orbit_bounded(&OmegaPoint::Index(0), a.size).ok()?;
                Some(report.points)
            }
            Carrier::Union(parts) => parts.iter().enumerate().find_map(|(i, p)| {
                p.finite_orbit_example()
                    .map(|o| o.into_iter().map(|x| OmegaPoint::tagged(i, x)).collect())
            }),
        }
    }

    pub fn kernel(&self) -> Kernel {
        match self.carrier() {
            Carrier::Regular => Kernel::Trivial,
            Carrier::Trivial(_) => Kernel::Whole,
            Carrier::IntMod(n) => Kernel::Multiples(*n),
            Carrier::FiniteExplicit(a) => Kernel::Explicit(a.kernel()),
            Carrier::Union(parts) => parts.iter().fold(Kernel::Whole, |k, p| k.intersect(p.kernel())),
        }
    }

    /// Negation of condition (i): some `q₀ ≠ 1` in FC(Q) fixes Ω pointwise.
    pub fn kernel_meets_fc(&self) -> KernelReport {
        let q = self.acting_group();
        let (answer, q0) = match self.kernel() {
            Kernel::Trivial => (Tri::No, None),
            Kernel::Whole => q.nontrivial_fc_element(),
            Kernel::Multiples(n) => (Tri::Yes, Some(Element::Int(n as i64))),
            // FC(Q) = Q for finite Q
            Kernel::Explicit(k) => match k.into_iter().find(|x| !q.is_identity(x)) {
                Some(x) => (Tri::Yes, Some(x)),
                None => (Tri::No, None),
            },
            Kernel::Unknown => (Tri::Unknown, None),
        };
        KernelReport { answer, q0 }
    }

    /// Whether `q` fixes every point. Structural.
    pub fn fixes_pointwise(&self, q: &Element) -> Result<Tri> {
        let group = self.acting_group();
        group.validate(q)?;
        Ok(match self.carrier() {
            Carrier::Regular => Tri::from_bool(group.is_identity(q)),
            Carrier::Trivial(_) => Tri::Yes,
            Carrier::IntMod(n) => match q {
                Element::Int(k) => Tri::from_bool(k.rem_euclid(*n as i64) == 0),
                _ => unreachable!("validated"),
            },
            Carrier::FiniteExplicit(a) => Tri::from_bool(a.image(q)?.iter().enumerate().all(|(i, &x)| i == x)),
            Carrier::Union(parts) => {
                let mut acc = Tri::Yes;
                for p in parts {
                    acc = acc.and(p.fixes_pointwise(q)?);
                }
                acc
            }
        })
    }

    /// A point not fixed by `q`, if any.
    pub fn moved_point(&self, q: &Element) -> Result<Option<OmegaPoint>> {
        let group = self.acting_group();
        group.validate(q)?;
        Ok(match self.carrier() {
            Carrier::Regular => (!group.is_identity(q)).then(|| OmegaPoint::Elem(group.identity())),
            Carrier::Trivial(_) => None,
            Carrier::IntMod(n) => match q {
                Element::Int(k) => (k.rem_euclid(*n as i64) != 0).then_some(OmegaPoint::Index(0)),
                _ => unreachable!("validated"),
            },
            Carrier::FiniteExplicit(a) => a
                .image(q)?
                .iter()
                .enumerate()
                .find(|(i, &x)| *i != x)
                .map(|(i, _)| OmegaPoint::Index(i as i64)),
            Carrier::Union(parts) => {
                for (i, p) in parts.iter().enumerate() {
                    if let Some(x) = p.moved_point(q)? {
                        return Ok(Some(OmegaPoint::tagged(i, x)));
                    }
                }
                None
            }
        })
    }

    /// No nontrivial element fixes any point.
    pub fn is_free_action(&self) -> Tri {
        let q = self.acting_group();
        match self.carrier() {
            Carrier::Regular => Tri::Yes,
            Carrier::IntMod(_) => Tri::No,
            Carrier::Trivial(k) => Tri::from_bool(*k == 0 || q.is_trivial()),
            Carrier::FiniteExplicit(a) => Tri::from_bool(
                a.images
                    .iter()
                    .filter(|(g, _)| !q.is_identity(g))
                    .all(|(_, img)| img.iter().enumerate().all(|(i, &x)| i != x)),
            ),
            Carrier::Union(parts) => Tri::all(parts.iter().map(QSet::is_free_action)),
        }
    }

    /// One seed point per orbit: the identity for regular carriers, `0` for
    /// int-mod, every point of a trivial carrier, and the least point of each
    /// orbit of a finite-explicit one.
    pub fn default_window(&self) -> Vec<OmegaPoint> {
        if self.is_empty() {
            return vec![];
        }
        match self.carrier() {
            Carrier::Regular => vec![OmegaPoint::Elem(self.acting_group().identity())],
            Carrier::IntMod(_) => vec![OmegaPoint::Index(0)],
            Carrier::Trivial(k) => (0..*k as i64).map(OmegaPoint::Index).collect(),
            Carrier::FiniteExplicit(a) => {
                let mut covered = vec![false; a.size];
                let mut seeds = Vec::new();
                for x in 0..a.size {
                    if covered[x] {
                        continue;
                    }
                    seeds.push(OmegaPoint::Index(x as i64));
                    for img in a.images.values() {
                        covered[img[x]] = true;
                    }
                }
                seeds
            }
            Carrier::Union(parts) => parts
                .iter()
                .enumerate()
                .flat_map(|(i, p)| p.default_window().into_iter().map(move |x| OmegaPoint::tagged(i, x)))
                .collect(),
        }
    }
}

impl fmt::Display for QSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.carrier() {
            Carrier::FiniteExplicit(a) => write!(f, "finite({})", a.size),
            Carrier::Regular => write!(f, "regular({})", self.acting_group()),
            Carrier::IntMod(n) => write!(f, "Z/{n}"),
            Carrier::Trivial(k) => write!(f, "trivial({k})"),
            Carrier::Union(parts) => {
                for (i, p) in parts.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" + ")?;
                    }
                    write!(f, "{p}")?;
                }
                Ok(())
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn idx(i: i64) -> OmegaPoint {
        OmegaPoint::Index(i)
    }

    fn s3_natural() -> QSet {
        QSet::natural(Group::symmetric(3).unwrap()).unwrap()
    }

    #[test]
    fn action_examples() {
        let z = Group::integers();
        let reg = QSet::regular(z.clone()).unwrap();
        assert_eq!(
            reg.act(&Element::Int(3), &OmegaPoint::Elem(Element::Int(4))).unwrap(),
            OmegaPoint::Elem(Element::Int(7))
        );
        let m3 = QSet::int_mod(z, 3).unwrap();
        assert_eq!(m3.act(&Element::Int(1), &idx(2)).unwrap(), idx(0));
        let nat = s3_natural();
        assert_eq!(nat.act(&Element::Perm(vec![1, 0, 2]), &idx(0)).unwrap(), idx(1));
        assert!(nat.act(&Element::Int(1), &idx(0)).is_err());
        assert!(nat.act(&Element::Perm(vec![1, 0, 2]), &idx(3)).is_err());
    }

    #[test]
    fn orbit_examples() {
        let z = Group::integers();
        let m3 = QSet::int_mod(z.clone(), 3).unwrap();
        let r = m3.orbit_bounded(&idx(0), 10).unwrap();
        assert_eq!(r.status, OrbitStatus::ExactFinite);
        assert_eq!(r.points, vec![idx(0), idx(1), idx(2)]);

        let reg = QSet::regular(z.clone()).unwrap();
        let r = reg.orbit_bounded(&OmegaPoint::Elem(Element::Int(0)), 100).unwrap();
        assert_eq!(r.status, OrbitStatus::ExceedsBudget);
        assert_eq!(r.points.len(), 100);

        let t = QSet::trivial(z, 2).unwrap();
        let r = t.orbit_bounded(&idx(1), 5).unwrap();
        assert_eq!(r.status, OrbitStatus::ExactFinite);
        assert_eq!(r.points, vec![idx(1)]);
        assert_eq!(t.orbit_bounded(&idx(1), 0).unwrap_err(), Error::ZeroBudget);
    }

    #[test]
    fn orbit_infinitude() {
        let z = Group::integers();
        let reg = QSet::regular(z.clone()).unwrap();
        let m3 = QSet::int_mod(z.clone(), 3).unwrap();
        assert_eq!(reg.all_orbits_infinite(), Tri::Yes);
        assert_eq!(m3.all_orbits_infinite(), Tri::No);
        assert_eq!(m3.finite_orbit_example(), Some(vec![idx(0), idx(1), idx(2)]));
        let u = QSet::union(z, vec![reg, m3]).unwrap();
        assert_eq!(u.all_orbits_infinite(), Tri::No);
        assert_eq!(
            u.finite_orbit_example().unwrap(),
            (0..3).map(|i| OmegaPoint::tagged(1, idx(i))).collect::<Vec<_>>()
        );
        assert_eq!(
            u.orbit_is_infinite(&OmegaPoint::tagged(0, OmegaPoint::Elem(Element::Int(5))))
                .unwrap(),
            Tri::Yes
        );
        assert_eq!(u.orbit_is_infinite(&OmegaPoint::tagged(1, idx(2))).unwrap(), Tri::No);
    }

    #[test]
    fn kernel_examples() {
        let z = Group::integers();
        let m3 = QSet::int_mod(z.clone(), 3).unwrap();
        let k = m3.kernel_meets_fc();
        assert_eq!(k.answer, Tri::Yes);
        assert_eq!(k.q0, Some(Element::Int(3)));
        assert_eq!(m3.fixes_pointwise(&Element::Int(3)).unwrap(), Tri::Yes);

        for q in [z.clone(), Group::free(2).unwrap(), Group::symmetric(3).unwrap()] {
            assert_eq!(QSet::regular(q).unwrap().kernel_meets_fc().answer, Tri::No);
        }
        assert_eq!(s3_natural().kernel_meets_fc().answer, Tri::No);

        let t = QSet::trivial(Group::symmetric(3).unwrap(), 1).unwrap();
        let k = t.kernel_meets_fc();
        assert_eq!(k.answer, Tri::Yes);
        assert!(k.q0.is_some());
        assert_eq!(
            QSet::trivial(Group::free(2).unwrap(), 1)
                .unwrap()
                .kernel_meets_fc()
                .answer,
            Tri::No
        );

        // lcm of the int-mod kernels
        let u = QSet::union(
            z.clone(),
            vec![
                QSet::int_mod(z.clone(), 4).unwrap(),
                QSet::int_mod(z.clone(), 6).unwrap(),
            ],
        )
        .unwrap();
        assert_eq!(u.kernel_meets_fc().q0, Some(Element::Int(12)));
        let u = QSet::union(z.clone(), vec![QSet::regular(z.clone()).unwrap(), m3]).unwrap();
        assert_eq!(u.kernel_meets_fc().answer, Tri::No);
    }

    #[test]
    fn finite_explicit_kernel_from_non_faithful_table() {
        // S3 acting on two points through the sign
        let s3 = Group::symmetric(3).unwrap();
        let a = QSet::finite_explicit(s3, 2, vec![vec![1, 0], vec![0, 1]]).unwrap();
        let k = a.kernel_meets_fc();
        assert_eq!(k.answer, Tri::Yes);
        assert_eq!(k.q0, Some(Element::Perm(vec![1, 2, 0])));
        assert_eq!(a.fixes_pointwise(&Element::Perm(vec![2, 0, 1])).unwrap(), Tri::Yes);
    }

    #[test]
    fn inconsistent_tables_are_rejected() {
        let z2 = Group::cyclic(2).unwrap();
        // a 3-cycle cannot be the image of an involution
        assert!(QSet::finite_explicit(z2.clone(), 3, vec![vec![1, 2, 0]]).is_err());
        assert!(QSet::finite_explicit(z2.clone(), 2, vec![vec![0, 0]]).is_err());
        assert!(QSet::finite_explicit(Group::integers(), 2, vec![vec![1, 0]]).is_err());
        assert!(QSet::int_mod(z2, 3).is_err());
    }

    #[test]
    fn freeness() {
        let z = Group::integers();
        assert_eq!(QSet::regular(z.clone()).unwrap().is_free_action(), Tri::Yes);
        assert_eq!(QSet::trivial(z.clone(), 2).unwrap().is_free_action(), Tri::No);
        assert_eq!(s3_natural().is_free_action(), Tri::No);
        let swap = QSet::finite_explicit(Group::cyclic(2).unwrap(), 2, vec![vec![1, 0]]).unwrap();
        assert_eq!(swap.is_free_action(), Tri::Yes);
        assert_eq!(QSet::int_mod(z, 3).unwrap().is_free_action(), Tri::No);
    }

    #[test]
    fn default_window_meets_every_orbit() {
        let z2 = Group::cyclic(2).unwrap();
        let a = QSet::finite_explicit(z2.clone(), 4, vec![vec![1, 0, 2, 3]]).unwrap();
        assert_eq!(a.default_window(), vec![idx(0), idx(2), idx(3)]);
        assert_eq!(
            QSet::trivial(z2.clone(), 2).unwrap().default_window(),
            vec![idx(0), idx(1)]
        );
        let u = QSet::union(
            z2.clone(),
            vec![QSet::regular(z2.clone()).unwrap(), QSet::trivial(z2, 1).unwrap()],
        )
        .unwrap();
        assert_eq!(
            u.default_window(),
            vec![
                OmegaPoint::tagged(0, OmegaPoint::Elem(Element::Int(0))),
                OmegaPoint::tagged(1, idx(0))
            ]
        );
    }

    #[test]
    fn moved_points() {
        let nat = s3_natural();
        assert_eq!(nat.moved_point(&Element::Perm(vec![0, 2, 1])).unwrap(), Some(idx(1)));
        assert_eq!(nat.moved_point(&Element::Perm(vec![0, 1, 2])).unwrap(), None);
        let z = Group::integers();
        let u = QSet::union(
            z.clone(),
            vec![QSet::int_mod(z.clone(), 3).unwrap(), QSet::regular(z.clone()).unwrap()],
        )
        .unwrap();
        assert_eq!(
            u.moved_point(&Element::Int(3)).unwrap(),
            Some(OmegaPoint::tagged(1, OmegaPoint::Elem(Element::Int(0))))
        );
    }
}
