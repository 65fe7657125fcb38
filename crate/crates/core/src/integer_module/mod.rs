//! Ideals of the integers and submodules of `Z^k`.
//!
//! Ideals `nZ` are decided in closed form: `nZ` is 1-absorbing primary (and
//! primary) exactly when `n = 0` or `n` is a prime power, and 2-absorbing
//! primary exactly when `n = 0` or `n` has at most two distinct prime
//! factors. Tests cross-check both against bounded brute force.
//!
//! For `N ⊆ Z^k` the prime submodules are the proper saturated sublattices
//! (torsion-free quotient) and the proper lattices containing some `pZ^k`.
//! Hence `M-rad(N) = sat(N) ∩ ⋂_{p | e} (N + pZ^k)` where `e` is the exponent
//! of `sat(N)/N`: for `p ∤ e`, `sat(N) ⊆ N + pZ^k` already.

mod lattice;

pub use lattice::{render_vector, IntLattice, Vector, ENTRY_BOUND, MAX_RANK};

use std::fmt;

use num_integer::Integer;
use serde::Serialize;

use crate::error::{Error, Result};

/// Largest torsion exponent we are willing to factor by trial division.
const FACTOR_BOUND: i128 = 1_000_000_000_000_000;
/// Bound on the number of torsion cosets enumerated per classification.
pub const COSET_CAP: usize = 200_000;

/// The ideal `nZ`, with `n ≥ 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct IntIdeal(pub u64);

impl IntIdeal {
    pub fn generator(self) -> u64 {
        self.0
    }
    pub fn is_proper(self) -> bool {
        self.0 != 1
    }
    pub fn contains(self, x: i128) -> bool {
        if self.0 == 0 {
            x == 0
        } else {
            x.rem_euclid(self.0 as i128) == 0
        }
    }
}

impl fmt::Display for IntIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            1 => write!(f, "Z"),
            n => write!(f, "{n}Z"),
        }
    }
}

/// Prime factorization by trial division, ascending.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut k = 0;
            while n.is_multiple_of(p) {
                n /= p;
                k += 1;
            }
            out.push((p, k));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && factorize(n) == vec![(n, 1)]
}

/// `√(nZ) = rad(n)Z`, with `√0 = 0`.
pub fn int_radical(i: IntIdeal) -> IntIdeal {
    match i.0 {
        0 => IntIdeal(0),
        n => IntIdeal(factorize(n).iter().map(|&(p, _)| p).product()),
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct IntIdealWitnesses {
    pub prime: Option<(i128, i128)>,
    pub primary: Option<(i128, i128)>,
    pub two_absorbing_primary: Option<(i128, i128, i128)>,
    pub one_absorbing_primary: Option<(i128, i128, i128)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntIdealReport {
    pub ideal: IntIdeal,
    pub prime: bool,
    pub maximal: bool,
    pub primary: bool,
    pub two_absorbing_primary: bool,
    pub one_absorbing_primary: bool,
    pub radical: IntIdeal,
    pub witnesses: IntIdealWitnesses,
}

/// Closed-form classification of `nZ` with explicit witnesses for every
/// failed predicate.
pub fn classify_int_ideal(i: IntIdeal) -> Result<IntIdealReport> {
    let n = i.0;
    if n == 1 {
        return Err(Error::Improper);
    }
    let mut report = IntIdealReport {
        ideal: i,
        prime: true,
        maximal: n != 0,
        primary: true,
        two_absorbing_primary: true,
        one_absorbing_primary: true,
        radical: int_radical(i),
        witnesses: IntIdealWitnesses::default(),
    };
    if n == 0 {
        return Ok(report);
    }
    let f = factorize(n);
    let (p, k) = f[0];
    let pk = p.pow(k);
    let rest = n / pk;
    if !(f.len() == 1 && k == 1) {
        report.prime = false;
        report.maximal = false;
        report.witnesses.prime = Some((p as i128, (n / p) as i128));
    }
    if f.len() >= 2 {
        // (rest)·(p^k) ∈ nZ, rest ∉ nZ, p^k ∉ rad(n)Z
        report.primary = false;
        report.witnesses.primary = Some((rest as i128, pk as i128));
        // p·p^max(k-1,1)·rest ∈ nZ, the pair product misses the other primes,
        // and rest misses p
        report.one_absorbing_primary = false;
        report.witnesses.one_absorbing_primary = Some((p as i128, p.pow((k - 1).max(1)) as i128, rest as i128));
    }
    if f.len() >= 3 {
        let (q, l) = f[1];
        let ql = q.pow(l);
        report.two_absorbing_primary = false;
        report.witnesses.two_absorbing_primary = Some((pk as i128, ql as i128, (rest / ql) as i128));
    }
    Ok(report)
}

/// `(N :_Z Z^k)`: zero unless `N` has full rank, else the exponent of the
/// finite quotient.
pub fn colon_ideal_int(n: &IntLattice) -> Result<IntIdeal> {
    if n.rank() < n.ambient_rank() {
        return Ok(IntIdeal(0));
    }
    let e = n.torsion_exponent()?;
    u64::try_from(e).map(IntIdeal).map_err(|_| Error::Overflow)
}

fn torsion_primes(n: &IntLattice) -> Result<Vec<u64>> {
    let e = n.torsion_exponent()?;
    if e > FACTOR_BOUND {
        return Err(Error::CapExceeded {
            what: "torsion exponent for factoring",
            limit: FACTOR_BOUND as usize,
        });
    }
    Ok(factorize(e as u64).into_iter().map(|(p, _)| p).collect())
}

/// M-radical of `N ⊆ Z^k`.
pub fn m_radical_int(n: &IntLattice) -> Result<IntLattice> {
    let k = n.ambient_rank();
    let mut acc = n.saturation()?;
    for p in torsion_primes(n)? {
        acc = acc.intersection(&n.sum(&IntLattice::scaled(p as i128, k)?)?)?;
    }
    Ok(acc)
}

/// The definitional intersection restricted to primes `p ≤ bound`, joined
/// with the saturation. Agrees with [`m_radical_int`] once `bound` reaches
/// the largest prime dividing the torsion exponent.
pub fn m_radical_bounded(n: &IntLattice, bound: u64) -> Result<IntLattice> {
    let k = n.ambient_rank();
    let mut acc = n.saturation()?;
    for p in (2..=bound).filter(|&p| is_prime(p)) {
        let term = n.sum(&IntLattice::scaled(p as i128, k)?)?;
        if !term.is_full() {
            acc = acc.intersection(&term)?;
        }
    }
    Ok(acc)
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct IntSubmoduleWitnesses {
    pub prime: Option<(i128, Vector)>,
    pub primary: Option<(i128, Vector)>,
    pub two_absorbing_primary: Option<(i128, i128, Vector)>,
    pub one_absorbing_primary: Option<(i128, i128, Vector)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntSubmoduleReport {
    pub proper: bool,
    pub prime: bool,
    pub primary: bool,
    pub two_absorbing_primary: bool,
    pub one_absorbing_primary: bool,
    pub colon: IntIdeal,
    pub colon_radical: IntIdeal,
    pub m_radical: IntLattice,
    pub witnesses: IntSubmoduleWitnesses,
}

fn divisors(e: u64) -> Vec<u64> {
    (1..=e).filter(|d| e.is_multiple_of(*d)).collect()
}

fn is_nonunit_product(d: u64) -> bool {
    d >= 4 && !is_prime(d)
}

/// Classifies `N ⊆ Z^k`.
///
/// For `k = 1` the module is `Z` itself and the verdicts are those of the
/// ideal `N`. For `k ≥ 2` the 1-absorbing primary test runs over the scalar
/// product `d = ab`: for `d ≠ 0`, `(N :_M d)` depends only on
/// `g = gcd(d, e)` with `e` the torsion exponent, and every divisor `g` is
/// realized by a product of two non-units outside `(N : M)` (take `g·q`, or
/// `q·q'` when `g = 1`, with primes `q, q'` not dividing `e`). The other
/// predicates quantify over divisor classes and torsion coset
/// representatives, since a unit modulo `e` preserves every subgroup of
/// `sat(N)/N`.
pub fn classify_int_submodule(n: &IntLattice) -> Result<IntSubmoduleReport> {
    let k = n.ambient_rank();
    let colon = colon_ideal_int(n)?;
    let m_radical = m_radical_int(n)?;
    let mut report = IntSubmoduleReport {
        proper: !n.is_full(),
        prime: false,
        primary: false,
        two_absorbing_primary: false,
        one_absorbing_primary: false,
        colon,
        colon_radical: int_radical(colon),
        m_radical,
        witnesses: IntSubmoduleWitnesses::default(),
    };
    if !report.proper {
        return Ok(report);
    }
    if k == 1 {
        let ideal = classify_int_ideal(colon)?;
        report.prime = ideal.prime;
        report.primary = ideal.primary;
        report.two_absorbing_primary = ideal.two_absorbing_primary;
        report.one_absorbing_primary = ideal.one_absorbing_primary;
        let w = ideal.witnesses;
        report.witnesses = IntSubmoduleWitnesses {
            prime: w.prime.map(|(a, b)| (a, vec![b])),
            primary: w.primary.map(|(a, b)| (b, vec![a])),
            two_absorbing_primary: w.two_absorbing_primary.map(|(a, b, c)| (a, b, vec![c])),
            one_absorbing_primary: w.one_absorbing_primary.map(|(a, b, c)| (a, b, vec![c])),
        };
        return Ok(report);
    }

    let e = u64::try_from(n.torsion_exponent()?).map_err(|_| Error::Overflow)?;
    let full_rank = colon.0 != 0;
    let sat = n.saturation()?;
    let rad = &report.m_radical;
    let first_outside = |l: &IntLattice, target: &IntLattice| -> Option<Vector> {
        l.basis().iter().find(|v| !target.contains(v)).cloned()
    };

    // 1-absorbing primary via gcd classes of d = ab
    let mut one = None;
    for g in divisors(e) {
        if full_rank && g == e {
            continue; // d ∈ (N : M)
        }
        let cm = n.colon_scalar(g as i128)?;
        if let Some(m) = first_outside(&cm, rad) {
            let d = if is_nonunit_product(g) {
                g
            } else {
                (4..).find(|&d| is_nonunit_product(d) && d.gcd(&e) == g && !(full_rank && d % e == 0))
                    .expect("some composite lies in every class")
            };
            let a = factorize(d)[0].0;
            one = Some((a as i128, (d / a) as i128, m));
            break;
        }
    }
    report.one_absorbing_primary = one.is_none();
    report.witnesses.one_absorbing_primary = one;

    // Divisor-class representatives are nonzero, so in the rank-deficient
    // case they never lie in (N : M) = 0.
    let in_colon = |x: u64| full_rank && x.is_multiple_of(e);
    let in_colon_rad = |x: u64| full_rank && x.is_multiple_of(report.colon_radical.0);
    let reps = n.torsion_cosets(COSET_CAP)?;
    let scale = |a: u64, m: &Vector| -> Vector { m.iter().map(|&x| x * a as i128).collect() };
    let classes = divisors(e);

    let mut prime = None;
    let mut primary = None;
    for &a in &classes {
        for m in &reps {
            if n.contains(&scale(a, m)) && !n.contains(m) {
                if prime.is_none() && !in_colon(a) {
                    prime = Some((a as i128, m.clone()));
                }
                if primary.is_none() && !in_colon_rad(a) {
                    primary = Some((a as i128, m.clone()));
                }
            }
        }
    }
    // torsion-free case: the only cosets are trivial, N = sat(N) is prime
    report.prime = prime.is_none();
    report.primary = primary.is_none();
    report.witnesses.prime = prime;
    report.witnesses.primary = primary;

    let mut two = None;
    'two: for &a in &classes {
        for &b in &classes {
            if in_colon(a * b) {
                continue;
            }
            for m in &reps {
                if n.contains(&scale(a * b, m)) && !rad.contains(&scale(a, m)) && !rad.contains(&scale(b, m)) {
                    two = Some((a as i128, b as i128, m.clone()));
                    break 'two;
                }
            }
        }
    }
    report.two_absorbing_primary = two.is_none();
    report.witnesses.two_absorbing_primary = two;
    debug_assert!(sat.is_subset(&IntLattice::full(k)?));
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lat(gens: &[&[i128]], k: usize) -> IntLattice {
        IntLattice::new(&gens.iter().map(|g| g.to_vec()).collect::<Vec<_>>(), k).unwrap()
    }

    #[test]
    fn radicals_of_ideals() {
        assert_eq!(int_radical(IntIdeal(12)), IntIdeal(6));
        assert_eq!(int_radical(IntIdeal(8)), IntIdeal(2));
        assert_eq!(int_radical(IntIdeal(0)), IntIdeal(0));
    }

    #[test]
    fn ideal_examples() {
        let six = classify_int_ideal(IntIdeal(6)).unwrap();
        assert!(!six.one_absorbing_primary);
        assert_eq!(six.witnesses.one_absorbing_primary, Some((2, 2, 3)));
        let twelve = classify_int_ideal(IntIdeal(12)).unwrap();
        assert!(!twelve.one_absorbing_primary && twelve.two_absorbing_primary);
        assert_eq!(twelve.witnesses.one_absorbing_primary, Some((2, 2, 3)));
        assert!(classify_int_ideal(IntIdeal(8)).unwrap().one_absorbing_primary);
        assert_eq!(classify_int_ideal(IntIdeal(1)).unwrap_err(), Error::Improper);
        let thirty = classify_int_ideal(IntIdeal(30)).unwrap();
        assert_eq!(thirty.witnesses.two_absorbing_primary, Some((2, 3, 5)));
    }

    #[test]
    fn colon_examples() {
        assert_eq!(colon_ideal_int(&lat(&[&[4, 0]], 2)).unwrap(), IntIdeal(0));
        assert_eq!(colon_ideal_int(&lat(&[&[6]], 1)).unwrap(), IntIdeal(6));
        assert_eq!(colon_ideal_int(&lat(&[&[2, 0], &[0, 3]], 2)).unwrap(), IntIdeal(6));
    }

    #[test]
    fn m_radical_examples() {
        assert_eq!(m_radical_int(&lat(&[&[4, 0]], 2)).unwrap(), lat(&[&[2, 0]], 2));
        assert_eq!(m_radical_int(&lat(&[&[12]], 1)).unwrap(), lat(&[&[6]], 1));
        let full = IntLattice::full(2).unwrap();
        assert_eq!(m_radical_int(&full).unwrap(), full);
    }

    #[test]
    fn submodule_examples() {
        let r = classify_int_submodule(&lat(&[&[4, 0]], 2)).unwrap();
        assert!(!r.one_absorbing_primary);
        assert_eq!(r.witnesses.one_absorbing_primary, Some((2, 2, vec![1, 0])));
        let r = classify_int_submodule(&lat(&[&[2, 0], &[0, 1]], 2)).unwrap();
        assert!(r.prime && r.one_absorbing_primary);
        let r = classify_int_submodule(&IntLattice::zero(2).unwrap()).unwrap();
        assert!(r.prime && r.one_absorbing_primary);
        let r = classify_int_submodule(&IntLattice::full(2).unwrap()).unwrap();
        assert!(!r.proper && !r.one_absorbing_primary);
    }
}
