use std::sync::Arc;

use absorbing::finite_module::{Base, FiniteModule, Submodule};
use absorbing::finite_ring::FiniteRing;
use absorbing::integer_module::IntLattice;
use absorbing::theorem_suite::{
    avoidance_check, efficient_check, separation_failure, Corpus, Covering,
};
use proptest::prelude::*;

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 { a } else { gcd(b, a % b) }
}

/// Ideal `dZ/nZ` of `Z/n`, `d | n`, checked straight from the definitions
/// with plain modular arithmetic.
fn naive_flags(n: u64, d: u64) -> (bool, bool, bool) {
    let inside = |x: u64| x % d == 0;
    let rad = (2..=n).filter(|p| n % p == 0 && (2..*p).all(|q| p % q != 0) && d % p == 0).product::<u64>();
    let in_rad = |x: u64| x % rad == 0;
    let non_units: Vec<u64> = (0..n).filter(|&a| gcd(a, n) != 1).collect();
    let proper = d != 1;
    let mut prime = proper;
    let mut one_ap = proper;
    let mut two_ap = proper;
    for a in 0..n {
        for b in 0..n {
            if inside(a * b % n) && !inside(a) && !inside(b) {
                prime = false;
            }
        }
    }
    for &a in &non_units {
        for &b in &non_units {
            for c in 0..n {
                let abc = a * b % n * c % n;
                if !inside(abc) {
                    continue;
                }
                if !inside(a * b % n) && !in_rad(c) {
                    one_ap = false;
                }
            }
        }
    }
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                if inside(a * b % n * c % n)
                    && !inside(a * b % n)
                    && !in_rad(a * c % n)
                    && !in_rad(b * c % n)
                {
                    two_ap = false;
                }
            }
        }
    }
    (prime, one_ap, two_ap)
}

#[test]
fn residue_ideals_match_the_definitions() {
    for n in 2..=36u64 {
        let m = FiniteModule::regular(&FiniteRing::residue(n as i64).unwrap());
        for d in (1..=n).filter(|d| n % d == 0) {
            let x = if d == n { 0 } else { d as usize };
            let sub = m.span(&[x]).unwrap();
            let r = m.report_for(&sub).unwrap();
            let (prime, one_ap, two_ap) = naive_flags(n, d);
            assert_eq!(
                (r.prime, r.one_absorbing_primary, r.two_absorbing_primary),
                (prime, one_ap, two_ap),
                "Z/{n}, <{d}>"
            );
        }
    }
}

fn klein() -> Arc<FiniteModule> {
    let f2 = FiniteRing::residue(2).unwrap();
    let add = (0..16).map(|i| (i / 4) ^ (i % 4)).collect();
    let action = (0..8).map(|i| if i / 4 == 0 { 0 } else { i % 4 }).collect();
    let names = ["0", "a", "b", "c"].iter().map(|s| s.to_string()).collect();
    FiniteModule::explicit("klein", Base::Ring(f2), names, add, action).unwrap()
}

#[test]
fn klein_lines_fail_the_separation_hypothesis() {
    let m = klein();
    let lines: Vec<Submodule> = (1..4).map(|x| m.span(&[x]).unwrap()).collect();
    // every colon is zero over a field, so some pair is never separated
    assert!(separation_failure(&m, &lines).unwrap().is_some());
    assert!(Covering::new(&m, m.whole(), lines).unwrap().is_efficient().unwrap());
}

#[test]
fn trivial_avoidance_instance() {
    let r = FiniteRing::residue(12).unwrap();
    let m = FiniteModule::regular(&r);
    let n = m.span(&[4]).unwrap();
    let c = Covering::new(&m, n.clone(), vec![n.clone(), m.span(&[3]).unwrap()]).unwrap();
    let v = avoidance_check(&c).unwrap();
    assert!(v.conclusion_holds);
}

/// Every covering of every submodule by two or three members, checked with
/// the public per-covering routines rather than the catalog evaluators.
#[test]
fn covering_statements_on_residue_rings() {
    for n in [12, 30, 36] {
        let m = FiniteModule::regular(&FiniteRing::residue(n).unwrap());
        let subs: Vec<Submodule> = m.submodules().unwrap().to_vec();
        let proper: Vec<&Submodule> = subs.iter().filter(|s| s.is_proper()).collect();
        let (mut av_live, mut covers) = (0, 0);
        for i in 0..proper.len() {
            for j in i + 1..proper.len() {
                for k in j..proper.len() {
                    let mut members = vec![proper[i].clone(), proper[j].clone()];
                    if k > j {
                        members.push(proper[k].clone());
                    }
                    for t in &subs {
                        let c = Covering::new(&m, t.clone(), members.clone()).unwrap();
                        if !c.covers() {
                            continue;
                        }
                        covers += 1;
                        let av = avoidance_check(&c).unwrap();
                        if av.hypothesis_holds {
                            av_live += 1;
                            assert!(av.conclusion_holds, "Z/{n}: {}", c.describe());
                        }
                        let ef = efficient_check(&c).unwrap();
                        assert!(!ef.hypothesis_holds || ef.conclusion_holds, "Z/{n}: {}", c.describe());
                        if members.len() == 2 {
                            assert!(!c.is_efficient().unwrap());
                        }
                    }
                }
            }
        }
        assert!(covers > 0 && av_live > 0, "Z/{n}: {covers} coverings, {av_live} live");
    }
}

fn corpus_modules() -> Vec<Arc<FiniteModule>> {
    Corpus::named("small-finite", 0)
        .unwrap()
        .modules
        .into_iter()
        .map(|i| i.module)
        .filter(|m| m.submodules().map(|s| s.len() >= 3).unwrap_or(false))
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn reduction_is_efficient_and_keeps_coverage(
        which in 0usize..1000,
        picks in prop::collection::vec(0usize..1000, 2..6),
        target in 0usize..1000,
    ) {
        let mods = corpus_modules();
        let m = &mods[which % mods.len()];
        let subs: Vec<Submodule> = m.submodules().unwrap().iter().filter(|s| s.is_proper()).cloned().collect();
        let members: Vec<Submodule> = picks.iter().map(|p| subs[p % subs.len()].clone()).collect();
        let t = subs[target % subs.len()].clone();
        let c = Covering::new(m, t, members).unwrap();
        let r = c.reduce_to_efficient();
        if c.covers() {
            prop_assert!(r.covers());
            prop_assert!(r.is_efficient().unwrap());
            prop_assert!(r.members().len() <= c.members().len());
        }
    }

    #[test]
    fn chain_holds_on_random_residue_submodules(n in 2i64..=60, g in 0usize..60) {
        let m = FiniteModule::regular(&FiniteRing::residue(n).unwrap());
        let s = m.span(&[g % n as usize]).unwrap();
        let r = m.report_for(&s).unwrap();
        prop_assert!(!r.prime || r.one_absorbing_primary);
        prop_assert!(!r.one_absorbing_primary || r.two_absorbing_primary);
        prop_assert!(r.m_radical.is_subset(&m.whole()) && s.is_subset(&r.m_radical));
    }

    #[test]
    fn lattice_operations_are_consistent(
        a in prop::collection::vec(prop::collection::vec(-32i128..=32, 2), 1..3),
        b in prop::collection::vec(prop::collection::vec(-32i128..=32, 2), 1..3),
    ) {
        let x = IntLattice::new(&a, 2).unwrap();
        let y = IntLattice::new(&b, 2).unwrap();
        let s = x.sum(&y).unwrap();
        let i = x.intersection(&y).unwrap();
        prop_assert!(x.is_subset(&s) && y.is_subset(&s));
        prop_assert!(i.is_subset(&x) && i.is_subset(&y));
        prop_assert_eq!(x.saturation().unwrap().saturation().unwrap(), x.saturation().unwrap());
        for v in a.iter().chain(&b) {
            prop_assert!(s.contains(v));
        }
        prop_assert_eq!(IntLattice::new(&[a.clone(), b.clone()].concat(), 2).unwrap(), s);
    }
}
