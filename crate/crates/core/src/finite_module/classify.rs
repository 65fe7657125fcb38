use serde::Serialize;

use super::{FiniteModule, ModElem, Submodule};
use crate::error::Result;
use crate::finite_ring::{Ideal, RingElem};

/// First lexicographic counterexample for each failed predicate.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SubmoduleWitnesses {
    /// `(a, m)` with `am ∈ N`, `m ∉ N`, `a ∉ (N:M)`.
    pub prime: Option<(RingElem, ModElem)>,
    /// `(a, m)` with `am ∈ N`, `m ∉ N`, `a ∉ √(N:M)`.
    pub primary: Option<(RingElem, ModElem)>,
    pub two_absorbing: Option<(RingElem, RingElem, ModElem)>,
    pub two_absorbing_primary: Option<(RingElem, RingElem, ModElem)>,
    pub one_absorbing_primary: Option<(RingElem, RingElem, ModElem)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassificationReport {
    pub proper: bool,
    pub prime: bool,
    pub primary: bool,
    pub two_absorbing: bool,
    pub two_absorbing_primary: bool,
    pub one_absorbing_primary: bool,
    /// `Some(P)` when the submodule is 1-absorbing primary and `P = √(N:M)`
    /// is a prime ideal.
    pub p_one_absorbing_primary_for: Option<Ideal>,
    pub colon: Ideal,
    pub colon_radical: Ideal,
    pub m_radical: Submodule,
    pub witnesses: SubmoduleWitnesses,
}

impl FiniteModule {
    /// Decides every submodule predicate by exhaustive quantification.
    ///
    /// `a, b` range over the non-units of the base ring for the 1-absorbing
    /// primary test and over all scalars otherwise. An improper `N` yields
    /// `proper = false` with every flag false.
    pub fn classify_submodule(&self, n: &Submodule) -> Result<ClassificationReport> {
        self.owns(n)?;
        let ring = self.scalars().clone();
        let colon = self.colon(n)?;
        let colon_radical = ring.radical(&colon)?;
        let m_radical = self.m_radical(n)?;
        let mut report = ClassificationReport {
            proper: n.is_proper(),
            prime: false,
            primary: false,
            two_absorbing: false,
            two_absorbing_primary: false,
            one_absorbing_primary: false,
            p_one_absorbing_primary_for: None,
            colon,
            colon_radical,
            m_radical,
            witnesses: SubmoduleWitnesses::default(),
        };
        if !report.proper {
            return Ok(report);
        }
        let in_n = |m: ModElem| n.contains(m);
        let in_rad = |m: ModElem| report.m_radical.contains(m);
        let scalars: Vec<RingElem> = ring.elements().collect();
        let elems: Vec<ModElem> = self.elements().collect();

        let mut prime = None;
        let mut primary = None;
        'single: for &a in &scalars {
            let in_colon = report.colon.contains(a);
            let in_colon_rad = report.colon_radical.contains(a);
            if in_colon && in_colon_rad {
                continue;
            }
            for &m in &elems {
                if in_n(self.act(a, m)) && !in_n(m) {
                    if prime.is_none() && !in_colon {
                        prime = Some((a, m));
                    }
                    if primary.is_none() && !in_colon_rad {
                        primary = Some((a, m));
                    }
                    if prime.is_some() && primary.is_some() {
                        break 'single;
                    }
                }
            }
        }
        report.prime = prime.is_none();
        report.primary = primary.is_none();
        report.witnesses.prime = prime;
        report.witnesses.primary = primary;

        let mut two = None;
        let mut two_primary = None;
        'pairs: for &a in &scalars {
            for &b in &scalars {
                let ab = ring.mul(a, b);
                if report.colon.contains(ab) {
                    continue;
                }
                for &m in &elems {
                    if !in_n(self.act(ab, m)) {
                        continue;
                    }
                    let (am, bm) = (self.act(a, m), self.act(b, m));
                    if two.is_none() && !in_n(am) && !in_n(bm) {
                        two = Some((a, b, m));
                    }
                    if two_primary.is_none() && !in_rad(am) && !in_rad(bm) {
                        two_primary = Some((a, b, m));
                    }
                    if two.is_some() && two_primary.is_some() {
                        break 'pairs;
                    }
                }
            }
        }
        report.two_absorbing = two.is_none();
        report.two_absorbing_primary = two_primary.is_none();
        report.witnesses.two_absorbing = two;
        report.witnesses.two_absorbing_primary = two_primary;

        let non_units = self.base().non_units();
        let mut one = None;
        'one: for &a in &non_units {
            for &b in &non_units {
                let ab = ring.mul(a, b);
                if report.colon.contains(ab) {
                    continue;
                }
                if let Some(&m) = elems.iter().find(|&&m| in_n(self.act(ab, m)) && !in_rad(m)) {
                    one = Some((a, b, m));
                    break 'one;
                }
            }
        }
        report.one_absorbing_primary = one.is_none();
        report.witnesses.one_absorbing_primary = one;

        if report.one_absorbing_primary && ring.classify_ideal(&report.colon_radical)?.prime {
            report.p_one_absorbing_primary_for = Some(report.colon_radical.clone());
        }
        Ok(report)
    }

    /// Reports for every submodule, in lattice order. Cached.
    pub fn classify_all(&self) -> Result<&[ClassificationReport]> {
        let res = self.reports.get_or_init(|| {
            self.submodules()?
                .iter()
                .map(|n| self.classify_submodule(n))
                .collect()
        });
        match res {
            Ok(v) => Ok(v),
            Err(e) => Err(e.clone()),
        }
    }

    /// Cached report for a submodule of this module.
    pub fn report_for(&self, n: &Submodule) -> Result<&ClassificationReport> {
        self.owns(n)?;
        let idx = self.lattice()?.position(n).expect("lattice is complete");
        Ok(&self.classify_all()?[idx])
    }
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::finite_module::tests::klein;
    use crate::finite_ring::FiniteRing;

    fn z(n: i64) -> Arc<FiniteModule> {
        FiniteModule::regular(&FiniteRing::residue(n).unwrap())
    }

    #[test]
    fn zero_in_z12_is_not_one_absorbing() {
        let m = z(12);
        let r = m.classify_submodule(&m.zero_submodule()).unwrap();
        assert!(!r.one_absorbing_primary);
        assert_eq!(r.witnesses.one_absorbing_primary, Some((2, 2, 3)));
        assert!(r.two_absorbing_primary);
    }

    #[test]
    fn four_in_z12() {
        let m = z(12);
        let r = m.classify_submodule(&m.span(&[4]).unwrap()).unwrap();
        assert!(r.one_absorbing_primary && r.primary && !r.prime);
        let p = r.p_one_absorbing_primary_for.unwrap();
        assert_eq!(p, m.scalars().ideal_span(&[2]).unwrap());
    }

    #[test]
    fn whole_module_is_improper() {
        let m = z(12);
        let r = m.classify_submodule(&m.whole()).unwrap();
        assert!(!r.proper && !r.prime && !r.one_absorbing_primary && !r.two_absorbing_primary);
    }

    #[test]
    fn klein_lines_are_one_absorbing() {
        let k = klein();
        for g in 1..4 {
            let r = k.classify_submodule(&k.span(&[g]).unwrap()).unwrap();
            assert!(r.one_absorbing_primary);
            // field base: lines are prime submodules
            assert!(r.prime);
        }
    }

    #[test]
    fn presentation_independent() {
        let m = z(12);
        let a = m.classify_submodule(&m.span(&[4]).unwrap()).unwrap();
        let b = m.classify_submodule(&m.span(&[8, 4, 0]).unwrap()).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn chain_holds_on_small_corpus() {
        for n in 2..=30 {
            let m = z(n);
            for r in m.classify_all().unwrap() {
                if r.prime {
                    assert!(r.one_absorbing_primary && r.primary);
                }
                if r.one_absorbing_primary {
                    assert!(r.two_absorbing_primary);
                }
                if r.primary {
                    assert!(r.two_absorbing_primary);
                }
            }
        }
    }

    #[test]
    fn integer_base_quantifies_all_residues() {
        // Z/4 as a Z-module: the zero subgroup. 2·2·1 = 0 with 4 ∉ (0:M)=4Z? 4 ≡ 0
        // so the residue product lands in the colon; 1AP holds.
        let g = FiniteModule::abelian_group(&[4]).unwrap();
        let r = g.classify_submodule(&g.zero_submodule()).unwrap();
        assert!(r.one_absorbing_primary);
        // Z/6: zero subgroup, 2·2·3 = 12 ≡ 0, 4 ∉ 6Z, 3 ∉ M-rad(0) = 0
        let g = FiniteModule::abelian_group(&[6]).unwrap();
        let r = g.classify_submodule(&g.zero_submodule()).unwrap();
        assert!(!r.one_absorbing_primary);
    }
}
