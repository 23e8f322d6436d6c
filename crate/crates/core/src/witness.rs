//! Certificates for icc verdicts.
//!
//! A non-icc verdict is certified by a finite set of nontrivial elements that
//! is closed under conjugation. An icc verdict is certified, for a chosen
//! nontrivial `g`, by a deterministic stream of conjugators `h_n` whose
//! conjugates `g^{h_n}` are pairwise distinct.

use std::collections::{BTreeSet, HashMap, HashSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::decision::{decide_icc, IccVerdict};
use crate::element::Element;
use crate::error::{Error, Result};
use crate::group::ClassStatus;
use crate::qset::{OmegaPoint, OrbitStatus};
use crate::tri::Tri;
use crate::wreath::{pointwise_mul, zeta, FinSuppMap, WreathElement, WreathGroup};

/// Budgets for enumerating `q₀^Q` inside [`cert_condition_i`].
pub const CLASS_RADIUS: usize = 64;
pub const CLASS_MAX_SIZE: usize = 100_000;
/// Largest finite-orbit certificate that will be materialized.
pub const MAX_FINITE_CERTIFICATE: usize = 1_000_000;
/// Candidates a dedup stream may reject in a row before giving up.
pub const DEFAULT_MAX_GAP: usize = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FiniteProvenance {
    ConditionI,
    FiniteOrbit,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FiniteClassCertificate {
    pub base: WreathElement,
    pub members: BTreeSet<WreathElement>,
    pub provenance: FiniteProvenance,
    pub formula: String,
    pub predicted_size: usize,
}

impl FiniteClassCertificate {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FamilyKind {
    QTranslation,
    LambdaTranslation,
    Gd,
    ValueConjugation,
}

#[derive(Debug, Clone, PartialEq)]
enum Recipe {
    /// `h_n = seed · (ε, q_n)`, `q_n` the n-th element of Q's generator ball.
    TopBall { seed: Option<WreathElement> },
    /// `h_n = (ζ_{d_n}^point, 1)`, `d_n` the n-th element of D's generator ball.
    ZetaBall { point: OmegaPoint },
}

#[derive(Debug, Clone, PartialEq)]
enum DedupKey {
    None,
    TopPart,
    Support,
    ValueAt(OmegaPoint),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
enum KeyValue {
    Top(Element),
    Support(Vec<OmegaPoint>),
    Value(Element),
}

#[derive(Debug, Clone, PartialEq)]
pub struct InfiniteFamilyCertificate {
    pub base: WreathElement,
    pub kind: FamilyKind,
    recipe: Recipe,
    dedup: DedupKey,
    pub max_gap: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilyMember {
    /// Position of the conjugator in the underlying (pre-dedup) stream.
    pub index: usize,
    pub conjugator: WreathElement,
    pub conjugate: WreathElement,
}

impl InfiniteFamilyCertificate {
    pub fn dedup(&self) -> bool {
        self.dedup != DedupKey::None
    }

    /// The seeding conjugator, when the family starts from `g' = g^{seed}`.
    pub fn seed(&self) -> Option<&WreathElement> {
        match &self.recipe {
            Recipe::TopBall { seed } => seed.as_ref(),
            Recipe::ZetaBall { .. } => None,
        }
    }

    fn build_conjugator(&self, g: &WreathGroup, ball_element: &Element) -> Result<WreathElement> {
        match &self.recipe {
            Recipe::TopBall { seed } => {
                let t = g.top_element(ball_element)?;
                match seed {
                    Some(s) => g.multiply(s, &t),
                    None => Ok(t),
                }
            }
            Recipe::ZetaBall { point } => g.base_element(ball_element, point),
        }
    }

    fn ball(&self, g: &WreathGroup) -> crate::group::Ball {
        match &self.recipe {
            Recipe::TopBall { .. } => g.top().ball(),
            Recipe::ZetaBall { .. } => g.base().ball(),
        }
    }

    /// The n-th conjugator of the underlying stream, computed from scratch.
    pub fn conjugator(&self, g: &WreathGroup, n: usize) -> Result<WreathElement> {
        let x = self
            .ball(g)
            .nth(n)
            .ok_or_else(|| Error::CertificateBudget(format!("conjugator stream has fewer than {} terms", n + 1)))?;
        self.build_conjugator(g, &x)
    }

    fn key(&self, g: &WreathGroup, c: &WreathElement) -> Option<KeyValue> {
        match &self.dedup {
            DedupKey::None => None,
            DedupKey::TopPart => Some(KeyValue::Top(c.q.clone())),
            DedupKey::Support => Some(KeyValue::Support(c.phi.support())),
            DedupKey::ValueAt(x) => Some(KeyValue::Value(c.phi.value(g.base(), x))),
        }
    }

    /// The first `count` members after dedup.
    pub fn members(&self, g: &WreathGroup, count: usize) -> Result<Vec<FamilyMember>> {
        let mut out = Vec::with_capacity(count);
        let mut keys: HashSet<KeyValue> = HashSet::new();
        let mut gap = 0;
        for (index, x) in self.ball(g).enumerate() {
            if out.len() >= count {
                break;
            }
            let conjugator = self.build_conjugator(g, &x)?;
            let conjugate = g.conjugate(&self.base, &conjugator)?;
            if self.kind == FamilyKind::Gd {
                let y = match &self.recipe {
                    Recipe::ZetaBall { point } => point,
                    _ => unreachable!(),
                };
                let closed = gd_closed_form(g, &self.base, y, &x)?;
                if closed != conjugate {
                    return Err(Error::FormulaMismatch(format!(
                        "d = {x}: closed form {closed} but direct conjugation gives {conjugate}"
                    )));
                }
            }
            let fresh = match self.key(g, &conjugate) {
                Some(k) => keys.insert(k),
                None => true,
            };
            if fresh {
                gap = 0;
                out.push(FamilyMember {
                    index,
                    conjugator,
                    conjugate,
                });
            } else {
                gap += 1;
                if gap > self.max_gap {
                    return Err(Error::CertificateBudget(format!(
                        "{} consecutive duplicate conjugates after {} members",
                        gap,
                        out.len()
                    )));
                }
            }
        }
        if out.len() < count {
            return Err(Error::CertificateBudget(format!(
                "conjugator stream exhausted after {} members",
                out.len()
            )));
        }
        Ok(out)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Certificate {
    Finite(FiniteClassCertificate),
    Infinite(InfiniteFamilyCertificate),
}

/// `g_d = (ζ_d^y, 1)⁻¹ (φ, q) (ζ_d^y, 1)` in closed form: `φ ζ_{d⁻¹}^y ζ_d^{qy}`
/// when `y ∉ Supp(φ)`, and `φ₀ ζ_{d⁻¹c}^y ζ_d^{qy}` when `φ = φ₀ ζ_c^y`.
pub fn gd_closed_form(g: &WreathGroup, base: &WreathElement, y: &OmegaPoint, d: &Element) -> Result<WreathElement> {
    let dg = g.base();
    let qy = g.omega().act(&base.q, y)?;
    let d_inv = dg.inverse(d)?;
    let at_qy = zeta(dg, d, &qy)?;
    let phi = match base.phi.get(y) {
        None => {
            let at_y = zeta(dg, &d_inv, y)?;
            pointwise_mul(dg, &pointwise_mul(dg, &base.phi, &at_y)?, &at_qy)?
        }
        Some(c) => {
            let phi0 = base.phi.without(y);
            let at_y = zeta(dg, &dg.multiply(&d_inv, c)?, y)?;
            pointwise_mul(dg, &pointwise_mul(dg, &phi0, &at_y)?, &at_qy)?
        }
    };
    Ok(WreathElement::new(phi, base.q.clone()))
}

/// `ζ_{d⁻¹}^y ζ_d^{qy}`: the map part of `(ε, q)^{(ζ_d^y, 1)}`.
pub fn seed_closed_form(g: &WreathGroup, q: &Element, y: &OmegaPoint, d: &Element) -> Result<FinSuppMap> {
    let dg = g.base();
    let qy = g.omega().act(q, y)?;
    pointwise_mul(dg, &zeta(dg, &dg.inverse(d)?, y)?, &zeta(dg, d, &qy)?)
}

/// `{(ε, x) : x ∈ q₀^Q}` for `q₀ ≠ 1` in FC(Q) fixing Ω pointwise.
pub fn cert_condition_i(g: &WreathGroup, q0: &Element) -> Result<FiniteClassCertificate> {
    let q = g.top();
    q.validate(q0)?;
    if q.is_identity(q0) {
        return Err(Error::Precondition("q0 must be nontrivial".into()));
    }
    if !q.fc_contains(q0)? {
        return Err(Error::Precondition(format!("{q0} is not in FC(Q)")));
    }
    if g.omega().fixes_pointwise(q0)? != Tri::Yes {
        return Err(Error::Precondition(format!("{q0} does not fix the Q-set pointwise")));
    }
    let class = q.class_enum_bounded(q0, CLASS_RADIUS, CLASS_MAX_SIZE)?;
    if class.status != ClassStatus::ExactFinite {
        return Err(Error::CertificateBudget(format!(
            "class of {q0} did not close within radius {CLASS_RADIUS} / size {CLASS_MAX_SIZE}"
        )));
    }
    let members: BTreeSet<WreathElement> = class
        .elements
        .iter()
        .map(|x| WreathElement::new(FinSuppMap::epsilon(), x.clone()))
        .collect();
    Ok(FiniteClassCertificate {
        base: WreathElement::new(FinSuppMap::epsilon(), q0.clone()),
        predicted_size: class.elements.len(),
        formula: format!("|{q0}^Q| = {}", class.elements.len()),
        members,
        provenance: FiniteProvenance::ConditionI,
    })
}

/// `{(φ, 1) : ∅ ≠ Supp(φ) ⊆ O, φ(O) ⊆ ξ ∪ {1}}` for a finite orbit `O`
/// and a finite conjugation-invariant set `ξ ⊆ D \ {1}`.
pub fn cert_finite_orbit(g: &WreathGroup, xi: &[Element], orbit: &[OmegaPoint]) -> Result<FiniteClassCertificate> {
    let d = g.base();
    if xi.is_empty() {
        return Err(Error::Precondition("xi must be nonempty".into()));
    }
    let xi: Vec<Element> = xi.iter().cloned().collect::<BTreeSet<_>>().into_iter().collect();
    for x in &xi {
        d.validate(x)?;
        if d.is_identity(x) {
            return Err(Error::Precondition("xi must not contain the identity".into()));
        }
        for s in d.symmetric_generators() {
            if xi.binary_search(&d.conjugate(x, &s)?).is_err() {
                return Err(Error::Precondition(format!(
                    "xi is not closed under conjugation by {s}"
                )));
            }
        }
    }
    let mut orbit: Vec<OmegaPoint> = orbit.to_vec();
    orbit.sort();
    orbit.dedup();
    let first = orbit
        .first()
        .ok_or_else(|| Error::Precondition("orbit must be nonempty".into()))?;
    let report = g.omega().orbit_bounded(first, orbit.len())?;
    if report.status != OrbitStatus::ExactFinite || report.points != orbit {
        return Err(Error::Precondition("O is not a finite orbit".into()));
    }

    let size = u32::try_from(orbit.len())
        .ok()
        .and_then(|n| (xi.len() + 1).checked_pow(n))
        .filter(|&s| s - 1 <= MAX_FINITE_CERTIFICATE)
        .ok_or_else(|| Error::CertificateBudget("finite-orbit certificate too large".into()))?
        - 1;

    let id_q = g.top().identity();
    let mut members = BTreeSet::new();
    let mut digits = vec![0usize; orbit.len()];
    loop {
        // odometer over (ξ ∪ {1})^O, digit 0 meaning the identity
        let mut i = 0;
        while i < digits.len() {
            digits[i] += 1;
            if digits[i] <= xi.len() {
                break;
            }
            digits[i] = 0;
            i += 1;
        }
        if i == digits.len() {
            break;
        }
        let pairs = orbit
            .iter()
            .zip(&digits)
            .filter(|(_, &k)| k > 0)
            .map(|(x, &k)| (x.clone(), xi[k - 1].clone()));
        members.insert(WreathElement::new(FinSuppMap::from_pairs(d, pairs)?, id_q.clone()));
    }
    let base = WreathElement::new(zeta(d, &xi[0], &orbit[0])?, id_q);
    Ok(FiniteClassCertificate {
        base,
        predicted_size: size,
        formula: format!("({} + 1)^{} - 1 = {}", xi.len(), orbit.len(), size),
        members,
        provenance: FiniteProvenance::FiniteOrbit,
    })
}

fn require_nontrivial(g: &WreathGroup, x: &WreathElement) -> Result<()> {
    g.validate(x)?;
    if g.is_identity(x) {
        return Err(Error::Precondition("g must be nontrivial".into()));
    }
    Ok(())
}

/// Conjugators `(ε, q_n)`; distinct top parts `q^{q_n}` give distinct conjugates.
pub fn family_q_translation(g: &WreathGroup, x: &WreathElement) -> Result<InfiniteFamilyCertificate> {
    g.validate(x)?;
    if g.top().fc_contains(&x.q)? {
        return Err(Error::Precondition(format!("{} lies in FC(Q)", x.q)));
    }
    Ok(InfiniteFamilyCertificate {
        base: x.clone(),
        kind: FamilyKind::QTranslation,
        recipe: Recipe::TopBall { seed: None },
        dedup: DedupKey::TopPart,
        max_gap: DEFAULT_MAX_GAP,
    })
}

fn has_infinite_orbit_support(g: &WreathGroup, phi: &FinSuppMap) -> Result<bool> {
    for y in phi.support() {
        if g.omega().orbit_is_infinite(&y)? == Tri::Yes {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Conjugators `(ε, q_n)`; the map part is translated by `λ(q_n⁻¹)`, and
/// distinct supports give distinct conjugates.
pub fn family_lambda_translation(g: &WreathGroup, x: &WreathElement) -> Result<InfiniteFamilyCertificate> {
    g.validate(x)?;
    if x.phi.is_epsilon() {
        return Err(Error::Precondition("map part is trivial".into()));
    }
    if !has_infinite_orbit_support(g, &x.phi)? {
        return Err(Error::Precondition("no support point has an infinite orbit".into()));
    }
    Ok(InfiniteFamilyCertificate {
        base: x.clone(),
        kind: FamilyKind::LambdaTranslation,
        recipe: Recipe::TopBall { seed: None },
        dedup: DedupKey::Support,
        max_gap: DEFAULT_MAX_GAP,
    })
}

/// For `x = (ε, q)` with `q ≠ 1`: conjugate once by `(ζ_d^y, 1)` with `qy ≠ y`
/// to get a nontrivial map part, then translate. Each `h_n` includes the seed.
pub fn family_seeded_translation(
    g: &WreathGroup,
    x: &WreathElement,
    y: &OmegaPoint,
    d: &Element,
) -> Result<InfiniteFamilyCertificate> {
    g.validate(x)?;
    g.base().validate(d)?;
    if g.base().is_identity(d) {
        return Err(Error::Precondition("seed value d must be nontrivial".into()));
    }
    if g.omega().act(&x.q, y)? == *y {
        return Err(Error::Precondition(format!("{} fixes {y}", x.q)));
    }
    let seed = g.base_element(d, y)?;
    let seeded = g.conjugate(x, &seed)?;
    if x.phi.is_epsilon() {
        let expected = seed_closed_form(g, &x.q, y, d)?;
        if seeded.phi != expected || expected.is_epsilon() {
            return Err(Error::FormulaMismatch(format!(
                "seeded conjugate has map part {{{}}}",
                seeded
                    .phi
                    .iter()
                    .map(|(p, v)| format!("{p}:{v}"))
                    .collect::<Vec<_>>()
                    .join(", ")
            )));
        }
    }
    if !has_infinite_orbit_support(g, &seeded.phi)? {
        return Err(Error::Precondition(
            "seeded map part has no point with an infinite orbit".into(),
        ));
    }
    Ok(InfiniteFamilyCertificate {
        base: x.clone(),
        kind: FamilyKind::LambdaTranslation,
        recipe: Recipe::TopBall { seed: Some(seed) },
        dedup: DedupKey::Support,
        max_gap: DEFAULT_MAX_GAP,
    })
}

/// Conjugators `(ζ_{d_n}^y, 1)` over D; since `qy ≠ y` the value at `qy`
/// is `φ(qy)·d_n`, so the conjugates are pairwise distinct without dedup.
pub fn family_gd(g: &WreathGroup, x: &WreathElement, y: &OmegaPoint) -> Result<InfiniteFamilyCertificate> {
    g.validate(x)?;
    if g.omega().act(&x.q, y)? == *y {
        return Err(Error::Precondition(format!("{} fixes {y}", x.q)));
    }
    if g.base().is_finite() {
        return Err(Error::Precondition("D is finite".into()));
    }
    Ok(InfiniteFamilyCertificate {
        base: x.clone(),
        kind: FamilyKind::Gd,
        recipe: Recipe::ZetaBall { point: y.clone() },
        dedup: DedupKey::None,
        max_gap: DEFAULT_MAX_GAP,
    })
}

/// For `x = (φ, 1)`: conjugators `(ζ_{e_n}^{x₀}, 1)` change only the value at
/// `x₀`, to `e_n⁻¹ φ(x₀) e_n`; dedup on that value.
pub fn family_value_conjugation(
    g: &WreathGroup,
    x: &WreathElement,
    x0: &OmegaPoint,
) -> Result<InfiniteFamilyCertificate> {
    g.validate(x)?;
    if !g.top().is_identity(&x.q) {
        return Err(Error::Precondition("top part must be the identity".into()));
    }
    if x.phi.get(x0).is_none() {
        return Err(Error::Precondition(format!("{x0} is not in the support")));
    }
    if g.base().icc_status().answer != Tri::Yes {
        return Err(Error::Precondition("D is not known to be icc".into()));
    }
    Ok(InfiniteFamilyCertificate {
        base: x.clone(),
        kind: FamilyKind::ValueConjugation,
        recipe: Recipe::ZetaBall { point: x0.clone() },
        dedup: DedupKey::ValueAt(x0.clone()),
        max_gap: DEFAULT_MAX_GAP,
    })
}

/// Chooses the certificate matching the verdict and, for icc verdicts, the
/// shape of `x`.
pub fn witness(g: &WreathGroup, verdict: &IccVerdict, x: Option<&WreathElement>) -> Result<Certificate> {
    match verdict.answer {
        Tri::Unknown => Err(Error::Precondition(
            "no certificate exists for an Unknown verdict".into(),
        )),
        Tri::No => {
            if verdict.cond_i.is_no() {
                let q0 = verdict
                    .q0
                    .clone()
                    .or_else(|| g.omega().kernel_meets_fc().q0)
                    .ok_or_else(|| Error::Precondition("no kernel element available".into()))?;
                Ok(Certificate::Finite(cert_condition_i(g, &q0)?))
            } else {
                let xi = g.base().finite_invariant_set_example()?;
                let orbit = g
                    .omega()
                    .finite_orbit_example()
                    .ok_or_else(|| Error::Precondition("no finite orbit available".into()))?;
                Ok(Certificate::Finite(cert_finite_orbit(g, &xi, &orbit)?))
            }
        }
        Tri::Yes => {
            let x = x.ok_or_else(|| Error::Precondition("an icc certificate needs a nontrivial element".into()))?;
            require_nontrivial(g, x)?;
            let fam = if !g.top().fc_contains(&x.q)? {
                family_q_translation(g, x)?
            } else if verdict.cond_iii.is_yes() {
                if !x.phi.is_epsilon() {
                    family_lambda_translation(g, x)?
                } else {
                    let y = g
                        .omega()
                        .moved_point(&x.q)?
                        .ok_or_else(|| Error::Precondition(format!("{} fixes every point", x.q)))?;
                    let d = g.base().generators().first().ok_or(Error::TrivialD)?.clone();
                    family_seeded_translation(g, x, &y, &d)?
                }
            } else if verdict.cond_ii.is_yes() {
                if !g.top().is_identity(&x.q) {
                    let y = g
                        .omega()
                        .moved_point(&x.q)?
                        .ok_or_else(|| Error::Precondition(format!("{} fixes every point", x.q)))?;
                    family_gd(g, x, &y)?
                } else {
                    let x0 = x.phi.support().into_iter().next().expect("nontrivial");
                    family_value_conjugation(g, x, &x0)?
                }
            } else {
                return Err(Error::Precondition(
                    "icc verdict without condition (ii) or (iii)".into(),
                ));
            };
            Ok(Certificate::Infinite(fam))
        }
    }
}

/// Element set of a finite invariant set for a non-icc wreath product; used
/// when that product serves as D one level up.
pub fn invariant_set(g: &WreathGroup) -> Result<Vec<WreathElement>> {
    let verdict = decide_icc(g)?;
    if verdict.answer != Tri::No {
        return Err(Error::Precondition(format!("{g} is not known to be non-icc")));
    }
    match witness(g, &verdict, None)? {
        Certificate::Finite(c) => Ok(c.members.into_iter().collect()),
        Certificate::Infinite(_) => unreachable!("non-icc verdicts yield finite certificates"),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Counterexample {
    pub member: WreathElement,
    pub conjugator: WreathElement,
    pub image: WreathElement,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FiniteVerification {
    pub passed: bool,
    pub samples_checked: usize,
    pub failure: Option<String>,
    pub counterexample: Option<Counterexample>,
}

/// Seeded random word of length at most `radius` in the generators and their inverses.
pub fn sample_conjugator<R: Rng + ?Sized>(
    g: &WreathGroup,
    steps: &[WreathElement],
    rng: &mut R,
    radius: usize,
) -> Result<WreathElement> {
    let len = rng.gen_range(0..=radius);
    let mut h = g.identity();
    for _ in 0..len {
        h = g.multiply(&h, &steps[rng.gen_range(0..steps.len())])?;
    }
    Ok(h)
}

/// Sampled invariance check: `g ∈ S`, `1 ∉ S`, and `s^h ∈ S` for every member
/// and `sample_count` seeded conjugators from the radius-`sample_radius` ball.
pub fn verify_finite_certificate(
    g: &WreathGroup,
    cert: &FiniteClassCertificate,
    sample_radius: usize,
    sample_count: usize,
    seed: u64,
) -> Result<FiniteVerification> {
    let fail = |msg: String, samples: usize, cx: Option<Counterexample>| FiniteVerification {
        passed: false,
        samples_checked: samples,
        failure: Some(msg),
        counterexample: cx,
    };
    if !cert.members.contains(&cert.base) {
        return Ok(fail(format!("base element {} is not in the set", cert.base), 0, None));
    }
    if cert.members.contains(&g.identity()) {
        return Ok(fail("the set contains the identity".into(), 0, None));
    }
    let steps = g.symmetric_generators();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for i in 0..sample_count {
        let h = if steps.is_empty() {
            g.identity()
        } else {
            sample_conjugator(g, &steps, &mut rng, sample_radius)?
        };
        for s in &cert.members {
            let image = g.conjugate(s, &h)?;
            if !cert.members.contains(&image) {
                return Ok(fail(
                    format!("conjugate of {s} by {h} is {image}, outside the set"),
                    i + 1,
                    Some(Counterexample {
                        member: s.clone(),
                        conjugator: h,
                        image,
                    }),
                ));
            }
        }
    }
    Ok(FiniteVerification {
        passed: true,
        samples_checked: sample_count,
        failure: None,
        counterexample: None,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct InfiniteVerification {
    pub passed: bool,
    pub checked: usize,
    pub failure: Option<String>,
    pub counterexample: Option<FamilyCounterexample>,
}

/// A stream member that failed: either its recorded conjugate is not the
/// conjugate by its recorded conjugator, or it repeats an earlier member.
#[derive(Debug, Clone, PartialEq)]
pub struct FamilyCounterexample {
    pub position: usize,
    pub conjugator: WreathElement,
    pub claimed: WreathElement,
    pub recomputed: WreathElement,
    pub duplicate_of: Option<usize>,
}

/// Checks a materialized prefix: each conjugate is recomputed from its
/// conjugator, and the first `n` conjugates are pairwise distinct.
pub fn verify_family_prefix(
    g: &WreathGroup,
    base: &WreathElement,
    members: &[FamilyMember],
    n: usize,
) -> Result<InfiniteVerification> {
    if n < 2 {
        return Err(Error::Precondition(
            "verification prefix must have at least 2 members".into(),
        ));
    }
    let fail = |checked: usize, msg: String, cx: Option<FamilyCounterexample>| InfiniteVerification {
        passed: false,
        checked,
        failure: Some(msg),
        counterexample: cx,
    };
    if members.len() < n {
        return Ok(fail(
            0,
            format!("only {} members available, {} requested", members.len(), n),
            None,
        ));
    }
    let mut seen: HashMap<&WreathElement, usize> = HashMap::new();
    for (i, m) in members[..n].iter().enumerate() {
        let recomputed = g.conjugate(base, &m.conjugator)?;
        let cx = |duplicate_of| FamilyCounterexample {
            position: i,
            conjugator: m.conjugator.clone(),
            claimed: m.conjugate.clone(),
            recomputed: recomputed.clone(),
            duplicate_of,
        };
        if recomputed != m.conjugate {
            return Ok(fail(
                i,
                format!(
                    "member {i}: conjugating by {} gives {recomputed}, stream claims {}",
                    m.conjugator, m.conjugate
                ),
                Some(cx(None)),
            ));
        }
        if let Some(&j) = seen.get(&m.conjugate) {
            return Ok(fail(
                i,
                format!("member {i} repeats member {j}: {}", m.conjugate),
                Some(cx(Some(j))),
            ));
        }
        seen.insert(&m.conjugate, i);
    }
    Ok(InfiniteVerification {
        passed: true,
        checked: n,
        failure: None,
        counterexample: None,
    })
}

pub fn verify_infinite_certificate(
    g: &WreathGroup,
    cert: &InfiniteFamilyCertificate,
    n: usize,
) -> Result<InfiniteVerification> {
    if n < 2 {
        return Err(Error::Precondition(
            "verification prefix must have at least 2 members".into(),
        ));
    }
    let members = match cert.members(g, n) {
        Ok(m) => m,
        Err(e @ (Error::CertificateBudget(_) | Error::FormulaMismatch(_))) => {
            return Ok(InfiniteVerification {
                passed: false,
                checked: 0,
                failure: Some(e.to_string()),
                counterexample: None,
            })
        }
        Err(e) => return Err(e),
    };
    verify_family_prefix(g, &cert.base, &members, n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::Group;
    use crate::qset::QSet;

    fn word(w: &[i32]) -> Element {
        Element::Word(w.to_vec())
    }

    fn f2_swap() -> WreathGroup {
        let swap = QSet::finite_explicit(Group::cyclic(2).unwrap(), 2, vec![vec![1, 0]]).unwrap();
        WreathGroup::new(Group::free(2).unwrap(), swap, None).unwrap()
    }

    fn lamplighter() -> WreathGroup {
        WreathGroup::new(
            Group::cyclic(2).unwrap(),
            QSet::regular(Group::integers()).unwrap(),
            None,
        )
        .unwrap()
    }

    #[test]
    fn condition_i_certificate_over_int_mod() {
        let g = WreathGroup::new(
            Group::symmetric(3).unwrap(),
            QSet::int_mod(Group::integers(), 3).unwrap(),
            None,
        )
        .unwrap();
        let c = cert_condition_i(&g, &Element::Int(3)).unwrap();
        assert_eq!(c.len(), 1);
        assert_eq!(c.predicted_size, 1);
        assert!(cert_condition_i(&g, &Element::Int(0)).is_err());
        assert!(cert_condition_i(&g, &Element::Int(2)).is_err());
    }

    #[test]
    fn condition_i_certificate_for_three_cycle() {
        let g = WreathGroup::new(
            Group::cyclic(2).unwrap(),
            QSet::trivial(Group::symmetric(3).unwrap(), 1).unwrap(),
            None,
        )
        .unwrap();
        let c = cert_condition_i(&g, &Element::Perm(vec![1, 2, 0])).unwrap();
        let tops: Vec<Element> = c.members.iter().map(|m| m.q.clone()).collect();
        assert_eq!(tops, vec![Element::Perm(vec![1, 2, 0]), Element::Perm(vec![2, 0, 1])]);
    }

    #[test]
    fn finite_orbit_certificate_sizes() {
        let nat = QSet::natural(Group::symmetric(3).unwrap()).unwrap();
        let g = WreathGroup::new(Group::cyclic(2).unwrap(), nat, None).unwrap();
        let orbit: Vec<OmegaPoint> = (0..3).map(OmegaPoint::Index).collect();
        let c = cert_finite_orbit(&g, &[Element::Int(1)], &orbit).unwrap();
        assert_eq!(c.len(), 7);
        assert_eq!(c.predicted_size, 7);

        let g = WreathGroup::new(
            Group::symmetric(3).unwrap(),
            QSet::trivial(Group::cyclic(2).unwrap(), 1).unwrap(),
            None,
        )
        .unwrap();
        let xi = Group::symmetric(3).unwrap().finite_invariant_set_example().unwrap();
        let c = cert_finite_orbit(&g, &xi, &[OmegaPoint::Index(0)]).unwrap();
        assert_eq!(c.len(), 3);

        let lamp = lamplighter();
        let err = cert_finite_orbit(&lamp, &[Element::Int(1)], &[OmegaPoint::Elem(Element::Int(0))]).unwrap_err();
        assert_eq!(err.code(), "E_PRECONDITION");
    }

    #[test]
    fn gd_family_distinct_in_f2_swap() {
        let g = f2_swap();
        let x = WreathElement::new(FinSuppMap::epsilon(), Element::Int(1));
        let y = OmegaPoint::Index(0);
        let fam = family_gd(&g, &x, &y).unwrap();
        let members = fam.members(&g, 4).unwrap();
        for m in &members {
            let d = match m.conjugator.phi.get(&y) {
                Some(d) => d.clone(),
                None => word(&[]),
            };
            let expected = FinSuppMap::from_pairs(
                g.base(),
                [(y.clone(), g.base().inverse(&d).unwrap()), (OmegaPoint::Index(1), d)],
            )
            .unwrap();
            assert_eq!(m.conjugate.phi, expected);
        }
        assert!(verify_infinite_certificate(&g, &fam, 100).unwrap().passed);
        // fixed point
        let trivial_top = WreathElement::new(FinSuppMap::epsilon(), Element::Int(0));
        assert!(family_gd(&g, &trivial_top, &y).is_err());
    }

    #[test]
    fn gd_closed_form_fuses_values() {
        let g = f2_swap();
        let y = OmegaPoint::Index(0);
        let phi = FinSuppMap::from_pairs(g.base(), [(y.clone(), word(&[2]))]).unwrap();
        let x = WreathElement::new(phi, Element::Int(1));
        let got = gd_closed_form(&g, &x, &y, &word(&[1])).unwrap();
        assert_eq!(got.phi.get(&y), Some(&word(&[-1, 2])));
        assert_eq!(got.phi.get(&OmegaPoint::Index(1)), Some(&word(&[1])));
        assert_eq!(got, g.conjugate(&x, &g.base_element(&word(&[1]), &y).unwrap()).unwrap());
    }

    #[test]
    fn value_conjugation_dedups() {
        let g = f2_swap();
        let x0 = OmegaPoint::Index(0);
        let phi = FinSuppMap::from_pairs(g.base(), [(x0.clone(), word(&[1]))]).unwrap();
        let x = WreathElement::new(phi, Element::Int(0));
        let fam = family_value_conjugation(&g, &x, &x0).unwrap();
        let members = fam.members(&g, 20).unwrap();
        // e = 1 comes first; e = a and e = a^-1 give a again and are dropped
        assert_eq!(members[0].index, 0);
        assert_eq!(members[1].index, 3);
        assert_eq!(members[1].conjugate.phi.get(&x0), Some(&word(&[-2, 1, 2])));
        let values: HashSet<&Element> = members.iter().map(|m| m.conjugate.phi.get(&x0).unwrap()).collect();
        assert_eq!(values.len(), 20);
    }

    #[test]
    fn q_translation_in_free_top() {
        let reg = QSet::regular(Group::free(2).unwrap()).unwrap();
        let g = WreathGroup::new(Group::cyclic(2).unwrap(), reg, None).unwrap();
        let x = WreathElement::new(FinSuppMap::epsilon(), word(&[1]));
        let fam = family_q_translation(&g, &x).unwrap();
        assert!(verify_infinite_certificate(&g, &fam, 10).unwrap().passed);
        let id = WreathElement::new(FinSuppMap::epsilon(), word(&[]));
        assert!(family_q_translation(&g, &id).is_err());
        let lit = WreathElement::new(
            FinSuppMap::from_pairs(g.base(), [(OmegaPoint::Elem(word(&[])), Element::Int(1))]).unwrap(),
            word(&[1]),
        );
        assert!(
            verify_infinite_certificate(&g, &family_q_translation(&g, &lit).unwrap(), 10)
                .unwrap()
                .passed
        );
    }

    #[test]
    fn lambda_translation_lamplighter() {
        let g = lamplighter();
        let z0 = OmegaPoint::Elem(Element::Int(0));
        let x = WreathElement::new(
            FinSuppMap::from_pairs(g.base(), [(z0, Element::Int(1))]).unwrap(),
            Element::Int(0),
        );
        let fam = family_lambda_translation(&g, &x).unwrap();
        assert!(verify_infinite_certificate(&g, &fam, 100).unwrap().passed);
        let top = WreathElement::new(FinSuppMap::epsilon(), Element::Int(1));
        assert!(family_lambda_translation(&g, &top).is_err());
    }

    #[test]
    fn dispatcher_seeds_pure_translations() {
        let g = lamplighter();
        let v = decide_icc(&g).unwrap();
        let top = WreathElement::new(FinSuppMap::epsilon(), Element::Int(1));
        let Certificate::Infinite(fam) = witness(&g, &v, Some(&top)).unwrap() else {
            panic!("expected an infinite family");
        };
        assert_eq!(fam.kind, FamilyKind::LambdaTranslation);
        let seed = fam.seed().unwrap();
        let seeded = g.conjugate(&top, seed).unwrap();
        assert_eq!(seeded.phi.len(), 2);
        assert!(verify_infinite_certificate(&g, &fam, 100).unwrap().passed);
        assert!(witness(&g, &v, Some(&g.identity())).is_err());
        assert!(witness(&g, &v, None).is_err());
    }

    #[test]
    fn dispatcher_for_non_icc() {
        let nat = QSet::natural(Group::symmetric(3).unwrap()).unwrap();
        let g = WreathGroup::new(Group::cyclic(2).unwrap(), nat, None).unwrap();
        let v = decide_icc(&g).unwrap();
        let Certificate::Finite(c) = witness(&g, &v, None).unwrap() else {
            panic!("expected a finite certificate");
        };
        assert_eq!(c.len(), 7);
        assert!(verify_finite_certificate(&g, &c, 3, 200, 42).unwrap().passed);

        let mut unknown = v.clone();
        unknown.answer = Tri::Unknown;
        assert!(witness(&g, &unknown, None).is_err());
    }

    #[test]
    fn verification_negative_controls() {
        let nat = QSet::natural(Group::symmetric(3).unwrap()).unwrap();
        let g = WreathGroup::new(Group::cyclic(2).unwrap(), nat, None).unwrap();
        let orbit: Vec<OmegaPoint> = (0..3).map(OmegaPoint::Index).collect();
        let c = cert_finite_orbit(&g, &[Element::Int(1)], &orbit).unwrap();

        let mut punctured = c.clone();
        let victim = punctured.members.iter().find(|m| **m != c.base).unwrap().clone();
        punctured.members.remove(&victim);
        let r = verify_finite_certificate(&g, &punctured, 3, 200, 42).unwrap();
        assert!(!r.passed);
        assert!(r.counterexample.is_some());

        let mut with_id = c.clone();
        with_id.members.insert(g.identity());
        assert!(!verify_finite_certificate(&g, &with_id, 3, 200, 42).unwrap().passed);

        let lamp = lamplighter();
        let z0 = OmegaPoint::Elem(Element::Int(0));
        let x = WreathElement::new(
            FinSuppMap::from_pairs(lamp.base(), [(z0, Element::Int(1))]).unwrap(),
            Element::Int(0),
        );
        let fam = family_lambda_translation(&lamp, &x).unwrap();
        let mut members = fam.members(&lamp, 10).unwrap();
        members[5].conjugator = members[4].conjugator.clone();
        let r = verify_family_prefix(&lamp, &x, &members, 10).unwrap();
        assert!(!r.passed);
        let cx = r.counterexample.unwrap();
        assert_eq!(cx.position, 5);
        assert_ne!(cx.claimed, cx.recomputed);
        assert!(verify_infinite_certificate(&lamp, &fam, 1).is_err());

        // a g_d family whose base fixes y: every conjugate collapses to the base
        let f2 = f2_swap();
        let top = WreathElement::new(FinSuppMap::epsilon(), Element::Int(1));
        let mut fam = family_gd(&f2, &top, &OmegaPoint::Index(0)).unwrap();
        fam.base = WreathElement::new(
            FinSuppMap::from_pairs(f2.base(), [(OmegaPoint::Index(1), word(&[1]))]).unwrap(),
            Element::Int(0),
        );
        let r = verify_infinite_certificate(&f2, &fam, 10).unwrap();
        assert!(!r.passed);
        assert_eq!(r.counterexample.unwrap().duplicate_of, Some(0));
    }
}
