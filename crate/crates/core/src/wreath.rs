//! Exact arithmetic in the restricted wreath product `D ≀_Ω Q = D^(Ω) ⋊ Q`.
//!
//! Elements are pairs `(φ, q)` with `φ` a finitely supported map `Ω → D`.
//! `Q` acts on maps by `λ(q)(φ)(x) = φ(q⁻¹x)`, so the product is
//! `(f₁, q₁)(f₂, q₂) = (f₁ · λ(q₁)(f₂), q₁q₂)`.

use std::collections::BTreeMap;
use std::fmt;

use rand::Rng;

use crate::element::Element;
use crate::error::{Error, Result};
use crate::group::Group;
use crate::qset::{OmegaPoint, QSet};

/// A finitely supported map `Ω → D`. Identity values are never stored, so
/// the stored keys are exactly the support; the empty map is `ε`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FinSuppMap(BTreeMap<OmegaPoint, Element>);

impl FinSuppMap {
    pub fn epsilon() -> FinSuppMap {
        FinSuppMap(BTreeMap::new())
    }

    /// Builds a map from explicit pairs; identity values are dropped.
    pub fn from_pairs(d: &Group, pairs: impl IntoIterator<Item = (OmegaPoint, Element)>) -> Result<FinSuppMap> {
        let mut map = BTreeMap::new();
        for (x, v) in pairs {
            d.validate(&v)?;
            if map.contains_key(&x) {
                return Err(Error::InvalidElement(format!("point {x} listed twice")));
            }
            if !d.is_identity(&v) {
                map.insert(x, v);
            }
        }
        Ok(FinSuppMap(map))
    }

    pub fn is_epsilon(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, x: &OmegaPoint) -> Option<&Element> {
        self.0.get(x)
    }

    /// Value at `x`, including the identity off the support.
    pub fn value(&self, d: &Group, x: &OmegaPoint) -> Element {
        self.0.get(x).cloned().unwrap_or_else(|| d.identity())
    }

    pub fn support(&self) -> Vec<OmegaPoint> {
        self.0.keys().cloned().collect()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&OmegaPoint, &Element)> {
        self.0.iter()
    }

    /// The same map with `x` removed from the support.
    pub fn without(&self, x: &OmegaPoint) -> FinSuppMap {
        let mut m = self.0.clone();
        m.remove(x);
        FinSuppMap(m)
    }
}

/// `ζ_d^y`: `y ↦ d`, every other point to 1.
pub fn zeta(d_group: &Group, d: &Element, y: &OmegaPoint) -> Result<FinSuppMap> {
    FinSuppMap::from_pairs(d_group, [(y.clone(), d.clone())])
}

/// `(fg)(x) = f(x) g(x)`, left value first at shared points.
pub fn pointwise_mul(d: &Group, f: &FinSuppMap, g: &FinSuppMap) -> Result<FinSuppMap> {
    let mut out = f.0.clone();
    for (x, gv) in &g.0 {
        match out.remove(x) {
            Some(fv) => {
                let v = d.multiply(&fv, gv)?;
                if !d.is_identity(&v) {
                    out.insert(x.clone(), v);
                }
            }
            None => {
                out.insert(x.clone(), gv.clone());
            }
        }
    }
    Ok(FinSuppMap(out))
}

pub fn pointwise_inverse(d: &Group, f: &FinSuppMap) -> Result<FinSuppMap> {
    Ok(FinSuppMap(
        f.0.iter()
            .map(|(x, v)| Ok((x.clone(), d.inverse(v)?)))
            .collect::<Result<_>>()?,
    ))
}

/// `λ(q)`: moves each support point `y` to `q·y`, values unchanged.
pub fn lambda_act(omega: &QSet, q: &Element, f: &FinSuppMap) -> Result<FinSuppMap> {
    let mut out = BTreeMap::new();
    for (y, v) in &f.0 {
        out.insert(omega.act(q, y)?, v.clone());
    }
    Ok(FinSuppMap(out))
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WreathElement {
    pub phi: FinSuppMap,
    pub q: Element,
}

impl WreathElement {
    pub fn new(phi: FinSuppMap, q: Element) -> WreathElement {
        WreathElement { phi, q }
    }
}

impl fmt::Display for WreathElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, (x, v)) in self.phi.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{x}:{v}")?;
        }
        write!(f, "}}@{}", self.q)
    }
}

impl serde::Serialize for WreathElement {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// `G = D ≀_Ω Q` with a finite generator window `W ⊆ Ω`.
///
/// Generators are `(ζ_d^y, 1)` for `d` a generator of D and `y ∈ W`, then
/// `(ε, s)` for `s` a generator of Q.
#[derive(Debug, Clone, PartialEq)]
pub struct WreathGroup {
    base: Group,
    omega: QSet,
    window: Vec<OmegaPoint>,
    generators: Vec<WreathElement>,
}

impl WreathGroup {
    pub fn new(base: Group, omega: QSet, window: Option<Vec<OmegaPoint>>) -> Result<WreathGroup> {
        if omega.acting_group().as_wreath().is_some() {
            return Err(Error::Unsupported("wreath products cannot act as Q".into()));
        }
        let window = window.unwrap_or_else(|| omega.default_window());
        for y in &window {
            omega.validate_point(y)?;
        }
        let q = omega.acting_group();
        let mut generators = Vec::new();
        for y in &window {
            for d in base.generators() {
                generators.push(WreathElement::new(zeta(&base, d, y)?, q.identity()));
            }
        }
        for s in q.generators() {
            generators.push(WreathElement::new(FinSuppMap::epsilon(), s.clone()));
        }
        Ok(WreathGroup {
            base,
            omega,
            window,
            generators,
        })
    }

    pub fn base(&self) -> &Group {
        &self.base
    }

    pub fn top(&self) -> &Group {
        self.omega.acting_group()
    }

    pub fn omega(&self) -> &QSet {
        &self.omega
    }

    pub fn window(&self) -> &[OmegaPoint] {
        &self.window
    }

    pub fn generators(&self) -> &[WreathElement] {
        &self.generators
    }

    /// Generators followed by their inverses, duplicates removed.
    pub fn symmetric_generators(&self) -> Vec<WreathElement> {
        let mut out: Vec<WreathElement> = Vec::new();
        for g in &self.generators {
            for x in [g.clone(), self.inverse(g).expect("generators are valid")] {
                if !out.contains(&x) {
                    out.push(x);
                }
            }
        }
        out
    }

    pub fn identity(&self) -> WreathElement {
        WreathElement::new(FinSuppMap::epsilon(), self.top().identity())
    }

    pub fn is_identity(&self, g: &WreathElement) -> bool {
        g.phi.is_epsilon() && self.top().is_identity(&g.q)
    }

    pub fn validate(&self, g: &WreathElement) -> Result<()> {
        self.top().validate(&g.q)?;
        for (x, v) in g.phi.iter() {
            self.omega.validate_point(x)?;
            self.base.validate(v)?;
            if self.base.is_identity(v) {
                return Err(Error::InvalidElement(format!("identity value stored at {x}")));
            }
        }
        Ok(())
    }

    pub fn zeta(&self, d: &Element, y: &OmegaPoint) -> Result<FinSuppMap> {
        self.omega.validate_point(y)?;
        zeta(&self.base, d, y)
    }

    pub fn pointwise_mul(&self, f: &FinSuppMap, g: &FinSuppMap) -> Result<FinSuppMap> {
        pointwise_mul(&self.base, f, g)
    }

    pub fn lambda_act(&self, q: &Element, f: &FinSuppMap) -> Result<FinSuppMap> {
        lambda_act(&self.omega, q, f)
    }

    pub fn multiply(&self, a: &WreathElement, b: &WreathElement) -> Result<WreathElement> {
        let moved = self.lambda_act(&a.q, &b.phi)?;
        Ok(WreathElement::new(
            pointwise_mul(&self.base, &a.phi, &moved)?,
            self.top().multiply(&a.q, &b.q)?,
        ))
    }

    /// `(f, q)⁻¹ = (λ(q⁻¹)(f⁻¹), q⁻¹)`.
    pub fn inverse(&self, g: &WreathElement) -> Result<WreathElement> {
        let qi = self.top().inverse(&g.q)?;
        let fi = pointwise_inverse(&self.base, &g.phi)?;
        Ok(WreathElement::new(self.lambda_act(&qi, &fi)?, qi))
    }

    /// `h⁻¹ g h`.
    pub fn conjugate(&self, g: &WreathElement, h: &WreathElement) -> Result<WreathElement> {
        let hi = self.inverse(h)?;
        self.multiply(&self.multiply(&hi, g)?, h)
    }

    /// `(ζ_d^y, 1)`.
    pub fn base_element(&self, d: &Element, y: &OmegaPoint) -> Result<WreathElement> {
        Ok(WreathElement::new(self.zeta(d, y)?, self.top().identity()))
    }

    /// `(ε, q)`.
    pub fn top_element(&self, q: &Element) -> Result<WreathElement> {
        self.top().validate(q)?;
        Ok(WreathElement::new(FinSuppMap::epsilon(), q.clone()))
    }

    pub fn evaluate_word(&self, word: &[(usize, bool)]) -> Result<WreathElement> {
        let mut acc = self.identity();
        for &(i, inv) in word {
            let g = self
                .generators
                .get(i)
                .ok_or_else(|| Error::InvalidElement(format!("no generator {i}")))?;
            let g = if inv { self.inverse(g)? } else { g.clone() };
            acc = self.multiply(&acc, &g)?;
        }
        Ok(acc)
    }

    pub fn is_finite(&self) -> bool {
        self.is_trivial() || (self.top().is_finite() && (self.base.is_trivial() || self.omega.cardinality().is_some()))
    }

    pub fn is_trivial(&self) -> bool {
        self.top().is_trivial() && (self.base.is_trivial() || self.omega.is_empty())
    }

    /// `|D|^|Ω| · |Q|` for finite instances.
    pub fn order(&self) -> Option<u128> {
        let q = self.top().order()?;
        let d = self.base.order()?;
        let n = u32::try_from(self.omega.cardinality()?).ok()?;
        d.checked_pow(n)?.checked_mul(q)
    }

    /// A random element: `q` and each support value are generator words of
    /// length at most `radius`; support points are random translates of
    /// window points.
    pub fn random_element<R: Rng + ?Sized>(&self, rng: &mut R, radius: usize, max_support: usize) -> WreathElement {
        let q = self.top().random_element(rng, radius);
        let mut map = BTreeMap::new();
        if !self.window.is_empty() {
            let k = rng.gen_range(0..=max_support);
            for _ in 0..k {
                let seed = &self.window[rng.gen_range(0..self.window.len())];
                let shift = self.top().random_element(rng, radius);
                let x = self.omega.act(&shift, seed).expect("window points are valid");
                let v = self.base.random_element(rng, radius);
                if self.base.is_identity(&v) {
                    map.remove(&x);
                } else {
                    map.insert(x, v);
                }
            }
        }
        WreathElement::new(FinSuppMap(map), q)
    }
}

impl fmt::Display for WreathGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} wr[{}] {}", self.base, self.omega, self.top())
    }
}
