//! Element and point literals.
//!
//! | kind | literal |
//! |------|---------|
//! | integers, `Z_n`, Cayley | `5`, `-3` |
//! | symmetric | `[1,0,2]` |
//! | free | `a*b^-1*a`, `1` for the identity |
//! | direct product | `(x; y)` |
//! | wreath | `{y1:d1, y2:d2}@q`, `{}` for ε |
//! | union points | `<part,point>` |

use crate::element::{reduce_word, Element};
use crate::error::{Error, Result};
use crate::group::{Group, GroupKind};
use crate::qset::{Carrier, OmegaPoint, QSet};
use crate::wreath::{FinSuppMap, WreathElement, WreathGroup};

fn depth_delta(c: char) -> i32 {
    match c {
        '(' | '[' | '{' | '<' => 1,
        ')' | ']' | '}' | '>' => -1,
        _ => 0,
    }
}

/// Splits on `sep` outside any brackets.
fn split_top(s: &str, sep: char) -> Result<Vec<&str>> {
    let mut parts = Vec::new();
    let mut depth = 0;
    let mut start = 0;
    for (i, c) in s.char_indices() {
        if c == sep && depth == 0 {
            parts.push(&s[start..i]);
            start = i + c.len_utf8();
        } else {
            depth += depth_delta(c);
            if depth < 0 {
                return Err(Error::parse(s, "unbalanced brackets"));
            }
        }
    }
    if depth != 0 {
        return Err(Error::parse(s, "unbalanced brackets"));
    }
    parts.push(&s[start..]);
    Ok(parts)
}

fn find_top(s: &str, sep: char) -> Option<usize> {
    let mut depth = 0;
    for (i, c) in s.char_indices() {
        if c == sep && depth == 0 {
            return Some(i);
        }
        depth += depth_delta(c);
    }
    None
}

fn parse_int(s: &str) -> Result<i64> {
    s.trim()
        .parse::<i64>()
        .map_err(|_| Error::parse(s, "expected an integer"))
}

fn parse_letter(s: &str, rank: usize) -> Result<i32> {
    let index = if s.len() == 1 && s.as_bytes()[0].is_ascii_lowercase() {
        (s.as_bytes()[0] - b'a' + 1) as usize
    } else if let Some(n) = s.strip_prefix('x').and_then(|n| n.parse::<usize>().ok()) {
        n
    } else {
        return Err(Error::parse(s, "expected a generator letter"));
    };
    if index == 0 || index > rank {
        return Err(Error::parse(s, format!("generator outside rank {rank}")));
    }
    Ok(index as i32)
}

fn parse_word(s: &str, rank: usize) -> Result<Element> {
    let t = s.trim();
    if t == "1" {
        return Ok(Element::Word(vec![]));
    }
    let mut letters = Vec::new();
    for factor in t.split('*') {
        let factor = factor.trim();
        let (base, power) = match factor.split_once('^') {
            Some((b, p)) => (b.trim(), parse_int(p)?),
            None => (factor, 1),
        };
        let l = parse_letter(base, rank).map_err(|_| Error::parse(s, format!("bad factor `{factor}`")))?;
        if power.unsigned_abs() > 1_000_000 {
            return Err(Error::parse(s, "exponent too large"));
        }
        let step = if power < 0 { -l } else { l };
        letters.extend(std::iter::repeat_n(step, power.unsigned_abs() as usize));
    }
    Ok(Element::Word(reduce_word(letters)))
}

impl Group {
    pub fn parse_element(&self, s: &str) -> Result<Element> {
        let t = s.trim();
        let x = match self.kind() {
            GroupKind::Cayley(_) | GroupKind::Cyclic(_) | GroupKind::Integers => Element::Int(parse_int(t)?),
            GroupKind::Symmetric(_) => {
                let inner = t
                    .strip_prefix('[')
                    .and_then(|r| r.strip_suffix(']'))
                    .ok_or_else(|| Error::parse(s, "expected an image list `[..]`"))?;
                let images = inner
                    .split(',')
                    .filter(|p| !p.trim().is_empty())
                    .map(|p| p.trim().parse::<usize>().map_err(|_| Error::parse(s, "bad image")))
                    .collect::<Result<Vec<_>>>()?;
                Element::Perm(images)
            }
            GroupKind::Free(r) => parse_word(t, *r)?,
            GroupKind::Product(fs) => {
                let inner = t
                    .strip_prefix('(')
                    .and_then(|r| r.strip_suffix(')'))
                    .ok_or_else(|| Error::parse(s, "expected a tuple `(x; y)`"))?;
                let items = split_top(inner, ';')?;
                if items.len() != fs.len() {
                    return Err(Error::parse(s, format!("expected {} components", fs.len())));
                }
                Element::Tuple(
                    fs.iter()
                        .zip(items)
                        .map(|(f, item)| f.parse_element(item))
                        .collect::<Result<_>>()?,
                )
            }
            GroupKind::Wreath(w) => Element::Wreath(Box::new(w.parse_element(t)?)),
        };
        self.validate(&x).map_err(|e| Error::parse(s, e.to_string()))?;
        Ok(x)
    }
}

impl QSet {
    pub fn parse_point(&self, s: &str) -> Result<OmegaPoint> {
        let t = s.trim();
        let p = match self.carrier() {
            Carrier::Regular => OmegaPoint::Elem(self.acting_group().parse_element(t)?),
            Carrier::Union(parts) => {
                let inner = t
                    .strip_prefix('<')
                    .and_then(|r| r.strip_suffix('>'))
                    .ok_or_else(|| Error::parse(s, "expected `<part,point>`"))?;
                let (i, rest) = inner
                    .split_once(',')
                    .ok_or_else(|| Error::parse(s, "expected `<part,point>`"))?;
                let i = usize::try_from(parse_int(i)?).map_err(|_| Error::parse(s, "negative part index"))?;
                let part = parts.get(i).ok_or_else(|| Error::parse(s, "no such part"))?;
                OmegaPoint::tagged(i, part.parse_point(rest)?)
            }
            _ => OmegaPoint::Index(parse_int(t)?),
        };
        self.validate_point(&p).map_err(|e| Error::parse(s, e.to_string()))?;
        Ok(p)
    }
}

impl WreathGroup {
    /// Parses `{y1:d1, ...}@q`.
    pub fn parse_element(&self, s: &str) -> Result<WreathElement> {
        let t = s.trim();
        if !t.starts_with('{') {
            return Err(Error::parse(s, "expected `{..}@q`"));
        }
        let at = find_top(t, '@').ok_or_else(|| Error::parse(s, "missing `@q`"))?;
        let map = t[..at].trim();
        let inner = map
            .strip_prefix('{')
            .and_then(|r| r.strip_suffix('}'))
            .ok_or_else(|| Error::parse(s, "expected `{..}` before `@`"))?;
        let q = self.top().parse_element(&t[at + 1..])?;
        let mut pairs = Vec::new();
        if !inner.trim().is_empty() {
            for entry in split_top(inner, ',')? {
                let colon = find_top(entry, ':').ok_or_else(|| Error::parse(entry, "expected `point:value`"))?;
                let point = self.omega().parse_point(&entry[..colon])?;
                let value = self.base().parse_element(&entry[colon + 1..])?;
                pairs.push((point, value));
            }
        }
        let phi = FinSuppMap::from_pairs(self.base(), pairs).map_err(|e| Error::parse(s, e.to_string()))?;
        Ok(WreathElement::new(phi, q))
    }
}
