use std::sync::Arc;

use serde::Serialize;

use crate::elemset::ElemSet;
use crate::error::{Error, Result};
use crate::finite_module::{ColonTarget, FiniteModule, ModElem, Submodule};
use crate::finite_ring::{FiniteRing, Ideal};

/// `N ⊆ N_1 ∪ … ∪ N_n` inside a fixed module.
#[derive(Clone, Debug)]
pub struct Covering {
    module: Arc<FiniteModule>,
    target: Submodule,
    members: Vec<Submodule>,
}

impl Covering {
    /// Members must be proper submodules, at least two of them.
    pub fn new(module: &Arc<FiniteModule>, target: Submodule, members: Vec<Submodule>) -> Result<Self> {
        if members.len() < 2 {
            return Err(Error::InvalidCovering("fewer than two members".into()));
        }
        if members.iter().any(|m| !m.is_proper()) {
            return Err(Error::InvalidCovering("member is not proper".into()));
        }
        if target.module_id() != module.id() || members.iter().any(|m| m.module_id() != module.id()) {
            return Err(Error::MismatchedModules);
        }
        Ok(Covering {
            module: module.clone(),
            target,
            members,
        })
    }

    pub fn module(&self) -> &Arc<FiniteModule> {
        &self.module
    }
    pub fn target(&self) -> &Submodule {
        &self.target
    }
    pub fn members(&self) -> &[Submodule] {
        &self.members
    }

    fn covered_by(&self, keep: &[bool]) -> ElemSet {
        let mut acc = ElemSet::empty(self.module.size());
        for (m, _) in self.members.iter().zip(keep).filter(|(_, &k)| k) {
            acc = acc.union(m.elements());
        }
        acc.intersection(self.target.elements())
    }

    pub fn covers(&self) -> bool {
        self.covered_by(&vec![true; self.members.len()]) == *self.target.elements()
    }

    /// True iff dropping any single member loses coverage of the target.
    pub fn is_efficient(&self) -> Result<bool> {
        if !self.covers() {
            return Err(Error::NotCovering);
        }
        let full = self.target.elements().clone();
        let mut keep = vec![true; self.members.len()];
        for i in 0..self.members.len() {
            keep[i] = false;
            let still = self.covered_by(&keep) == full;
            keep[i] = true;
            if still {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Drops members in ascending index order whenever the rest still cover
    /// what the whole family covers. One pass suffices: a member needed
    /// against a larger family stays needed against a smaller one.
    pub fn reduce_to_efficient(&self) -> Covering {
        let goal = self.covered_by(&vec![true; self.members.len()]);
        let mut keep = vec![true; self.members.len()];
        for i in 0..self.members.len() {
            keep[i] = false;
            if self.covered_by(&keep) != goal {
                keep[i] = true;
            }
        }
        Covering {
            module: self.module.clone(),
            target: self.target.clone(),
            members: self
                .members
                .iter()
                .zip(&keep)
                .filter(|(_, &k)| k)
                .map(|(m, _)| m.clone())
                .collect(),
        }
    }

    pub fn describe(&self) -> String {
        let sub = |s: &Submodule| format!("<{}>", self.module.render_list(s.generators()));
        format!(
            "{} in {}",
            sub(&self.target),
            self.members.iter().map(sub).collect::<Vec<_>>().join(" u ")
        )
    }
}

/// First `(i, j, m)` with `i ≠ j`, `m ∉ M-rad(N_j)` and
/// `√(N_i : M) ⊆ √(N_j : m)`; `None` when the separation hypothesis holds.
pub fn separation_failure(m: &FiniteModule, members: &[Submodule]) -> Result<Option<(usize, usize, ModElem)>> {
    let ring = m.scalars();
    let rad_colon = members
        .iter()
        .map(|n| ring.radical(&m.colon(n)?))
        .collect::<Result<Vec<Ideal>>>()?;
    for (j, nj) in members.iter().enumerate() {
        let mrad = m.m_radical(nj)?;
        for x in m.elements().filter(|&x| !mrad.contains(x)) {
            let r = ring.radical(&m.colon_into_ring(nj, ColonTarget::Element(x))?)?;
            for (i, ri) in rad_colon.iter().enumerate() {
                if i != j && ri.is_subset(&r) {
                    return Ok(Some((i, j, x)));
                }
            }
        }
    }
    Ok(None)
}

/// The same hypothesis phrased for ideals: `√I_i ⊄ √(I_j : x)` for every
/// `x ∉ √I_j`.
pub fn ring_separation_failure(r: &FiniteRing, ideals: &[Ideal]) -> Result<Option<(usize, usize, usize)>> {
    let rads = ideals.iter().map(|i| r.radical(i)).collect::<Result<Vec<_>>>()?;
    for (j, ij) in ideals.iter().enumerate() {
        for x in r.elements().filter(|&x| !rads[j].contains(x)) {
            let colon = r.colon(ij, &r.ideal_span(&[x])?)?;
            let rc = r.radical(&colon)?;
            for (i, ri) in rads.iter().enumerate() {
                if i != j && ri.is_subset(&rc) {
                    return Ok(Some((i, j, x)));
                }
            }
        }
    }
    Ok(None)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AvoidanceVerdict {
    pub hypothesis_holds: bool,
    pub conclusion_holds: bool,
    pub witness: Option<String>,
}

/// Checks the avoidance statement on one covering of a multiplication
/// module: when at most two members fail to be 1-absorbing primary and the
/// radicals are separated, the target lies inside a single member.
pub fn avoidance_check(c: &Covering) -> Result<AvoidanceVerdict> {
    let m = c.module();
    if !m.is_multiplication()? {
        return Err(Error::NotMultiplication);
    }
    let not_1ap = c
        .members()
        .iter()
        .filter(|n| m.report_for(n).map(|r| !r.one_absorbing_primary).unwrap_or(true))
        .count();
    let sep = separation_failure(m, c.members())?;
    let hypothesis_holds = c.covers() && not_1ap <= 2 && sep.is_none();
    let inside = c.members().iter().position(|n| c.target().is_subset(n));
    let witness = match (sep, inside) {
        (Some((i, j, x)), _) => Some(format!(
            "radical of member {i} lies in (N_{j} : {}) radical",
            m.name(x)
        )),
        (None, Some(k)) => Some(format!("target inside member {k}")),
        (None, None) => None,
    };
    Ok(AvoidanceVerdict {
        hypothesis_holds,
        conclusion_holds: inside.is_some(),
        witness,
    })
}

/// The efficient-covering statement: for an efficient covering with more
/// than two members and separated radicals, no member is 1-absorbing
/// primary.
pub fn efficient_check(c: &Covering) -> Result<AvoidanceVerdict> {
    let m = c.module();
    if !m.is_multiplication()? {
        return Err(Error::NotMultiplication);
    }
    let efficient = c.covers() && c.is_efficient()?;
    let hypothesis_holds = efficient && c.members().len() > 2 && separation_failure(m, c.members())?.is_none();
    let mut first_1ap = None;
    for (k, n) in c.members().iter().enumerate() {
        if m.report_for(n)?.one_absorbing_primary {
            first_1ap = Some(k);
            break;
        }
    }
    Ok(AvoidanceVerdict {
        hypothesis_holds,
        conclusion_holds: first_1ap.is_none(),
        witness: first_1ap.map(|k| format!("member {k} is 1-absorbing primary")),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finite_module::Base;

    fn klein() -> Arc<FiniteModule> {
        let f2 = FiniteRing::residue(2).unwrap();
        let add = (0..16).map(|i| (i / 4) ^ (i % 4)).collect();
        let action = (0..8).map(|i| if i / 4 == 0 { 0 } else { i % 4 }).collect();
        let names = ["0", "a", "b", "c"].iter().map(|s| s.to_string()).collect();
        FiniteModule::explicit("klein", Base::Ring(f2), names, add, action).unwrap()
    }

    #[test]
    fn klein_lines_are_efficient() {
        let m = klein();
        let lines: Vec<Submodule> = (1..4).map(|x| m.span(&[x]).unwrap()).collect();
        let c = Covering::new(&m, m.whole(), lines.clone()).unwrap();
        assert!(c.is_efficient().unwrap());
        let two = Covering::new(&m, m.whole(), lines[..2].to_vec()).unwrap();
        assert_eq!(two.is_efficient().unwrap_err(), Error::NotCovering);
        // the plane is not a multiplication module over a field
        assert_eq!(avoidance_check(&c).unwrap_err(), Error::NotMultiplication);
    }

    #[test]
    fn reduce_drops_duplicates() {
        let m = klein();
        let a = m.span(&[1]).unwrap();
        let b = m.span(&[2]).unwrap();
        let c = Covering::new(&m, a.clone(), vec![a.clone(), a.clone(), b]).unwrap();
        let r = c.reduce_to_efficient();
        assert_eq!(r.members().len(), 1);
        assert!(r.is_efficient().unwrap());
    }

    #[test]
    fn rejects_bad_members() {
        let m = klein();
        assert!(Covering::new(&m, m.zero_submodule(), vec![m.whole(), m.zero_submodule()]).is_err());
        assert!(Covering::new(&m, m.zero_submodule(), vec![m.zero_submodule()]).is_err());
    }
}
