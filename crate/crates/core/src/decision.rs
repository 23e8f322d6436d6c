//! The icc criterion for wreath products.
//!
//! `G = D ≀_Ω Q` with `D ≠ 1` is icc iff
//! (i) the only element of FC(Q) fixing Ω pointwise is 1, and
//! (ii) D is icc or (iii) every Q-orbit in Ω is infinite.

use serde::Serialize;

use crate::element::Element;
use crate::error::{Error, Result};
use crate::tri::Tri;
use crate::wreath::WreathGroup;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IccVerdict {
    pub answer: Tri,
    pub cond_i: Tri,
    pub cond_ii: Tri,
    pub cond_iii: Tri,
    /// Nontrivial FC element fixing Ω pointwise, when condition (i) fails.
    #[serde(skip)]
    pub q0: Option<Element>,
    pub reason: String,
    pub corollary_used: bool,
}

fn check_hypotheses(g: &WreathGroup) -> Result<()> {
    if g.base().is_trivial() {
        return Err(Error::TrivialD);
    }
    if g.omega().is_empty() {
        return Err(Error::EmptyOmega);
    }
    Ok(())
}

pub fn decide_icc(g: &WreathGroup) -> Result<IccVerdict> {
    check_hypotheses(g)?;
    let kernel = g.omega().kernel_meets_fc();
    let cond_i = !kernel.answer;
    let cond_ii = g.base().icc_status().answer;
    let cond_iii = g.omega().all_orbits_infinite();
    let answer = cond_i.and(cond_ii.or(cond_iii));

    let reason = match answer {
        Tri::Yes if cond_iii.is_yes() => "condition (i) holds and every Q-orbit in the Q-set is infinite".to_string(),
        Tri::Yes => "condition (i) holds and D is icc".to_string(),
        Tri::No if cond_i.is_no() => match &kernel.q0 {
            Some(q0) => format!("{q0} is a nontrivial FC element of Q fixing the Q-set pointwise"),
            None => "a nontrivial FC element of Q fixes the Q-set pointwise".to_string(),
        },
        Tri::No => "D is not icc and the Q-set has a finite orbit".to_string(),
        Tri::Unknown => {
            let unknown: Vec<&str> = [("(i)", cond_i), ("(ii)", cond_ii), ("(iii)", cond_iii)]
                .into_iter()
                .filter(|(_, t)| *t == Tri::Unknown)
                .map(|(n, _)| n)
                .collect();
            format!("undetermined: condition(s) {} could not be decided", unknown.join(", "))
        }
    };

    Ok(IccVerdict {
        answer,
        cond_i,
        cond_ii,
        cond_iii,
        q0: if cond_i.is_no() { kernel.q0 } else { None },
        reason,
        corollary_used: false,
    })
}

/// Free actions: G is icc iff D is icc or Q is infinite.
pub fn decide_icc_free(g: &WreathGroup) -> Result<IccVerdict> {
    check_hypotheses(g)?;
    if g.omega().is_free_action() != Tri::Yes {
        return Err(Error::NotFreeAction);
    }
    let d_icc = g.base().icc_status().answer;
    let q_infinite = Tri::from_bool(!g.top().is_finite());
    let answer = d_icc.or(q_infinite);
    let reason = match answer {
        Tri::Yes if q_infinite.is_yes() => "free action of an infinite group".to_string(),
        Tri::Yes => "free action and D is icc".to_string(),
        Tri::No => "free action of a finite group and D is not icc".to_string(),
        Tri::Unknown => "free action of a finite group; icc status of D unknown".to_string(),
    };
    Ok(IccVerdict {
        answer,
        // free actions have trivial kernel, and orbits are copies of Q
        cond_i: Tri::Yes,
        cond_ii: d_icc,
        cond_iii: q_infinite,
        q0: None,
        reason,
        corollary_used: true,
    })
}
