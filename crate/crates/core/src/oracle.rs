//! Brute-force conjugacy-class exploration in a wreath product.
//!
//! Independent of the decision and witness code: it only uses the group law.
//! Rounds conjugate the current frontier by every generator and inverse; a
//! class that stops growing is closed under the *listed* generators, which
//! for an infinite G and finite window says nothing about all of G.

use std::collections::HashMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::qset::OmegaPoint;
use crate::wreath::{WreathElement, WreathGroup};

pub const DEFAULT_RADIUS: usize = 8;
pub const DEFAULT_MAX_SIZE: usize = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum WreathClassStatus {
    ExactFiniteUnderGens,
    AtLeast,
}

#[derive(Debug, Clone, PartialEq)]
pub struct WreathClassReport {
    pub status: WreathClassStatus,
    /// Verified conjugates, sorted canonically.
    pub elements: Vec<WreathElement>,
    pub radius: usize,
    pub rounds_used: usize,
    pub window: Vec<OmegaPoint>,
}

impl WreathClassReport {
    pub fn count(&self) -> usize {
        self.elements.len()
    }
}

type Word = Vec<(usize, bool)>;

pub fn enumerate_class(
    g: &WreathGroup,
    x: &WreathElement,
    radius: usize,
    max_size: usize,
) -> Result<WreathClassReport> {
    if radius == 0 || max_size == 0 {
        return Err(Error::ZeroBudget);
    }
    g.validate(x)?;

    let mut steps: Vec<((usize, bool), WreathElement)> = Vec::new();
    for (i, s) in g.generators().iter().enumerate() {
        for (inv, e) in [(false, s.clone()), (true, g.inverse(s)?)] {
            if !steps.iter().any(|(_, t)| *t == e) {
                steps.push(((i, inv), e));
            }
        }
    }

    // element -> conjugating word
    let mut found: HashMap<WreathElement, Word> = HashMap::from([(x.clone(), Vec::new())]);
    let mut frontier = vec![x.clone()];
    let mut status = WreathClassStatus::AtLeast;
    let mut rounds = 0;
    'rounds: while rounds < radius {
        rounds += 1;
        let mut next = Vec::new();
        for y in &frontier {
            for (letter, s) in &steps {
                let z = g.conjugate(y, s)?;
                if found.contains_key(&z) {
                    continue;
                }
                if found.len() >= max_size {
                    break 'rounds;
                }
                let mut word = found[y].clone();
                word.push(*letter);
                let h = g.evaluate_word(&word)?;
                let check = g.conjugate(x, &h)?;
                if check != z {
                    return Err(Error::FormulaMismatch(format!(
                        "recorded conjugator {h} yields {check}, expected {z}"
                    )));
                }
                found.insert(z.clone(), word);
                next.push(z);
            }
        }
        if next.is_empty() {
            status = WreathClassStatus::ExactFiniteUnderGens;
            break;
        }
        next.sort();
        frontier = next;
    }
    let mut elements: Vec<WreathElement> = found.into_keys().collect();
    elements.sort();
    Ok(WreathClassReport {
        status,
        elements,
        radius,
        rounds_used: rounds,
        window: g.window().to_vec(),
    })
}
