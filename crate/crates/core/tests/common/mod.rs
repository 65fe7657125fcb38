//! Brute-force oracles shared by the integer tests and the acceptance run.
#![allow(dead_code)]

use absorbing::integer_module::*;

pub fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

pub fn in_ideal(n: i64, x: i64) -> bool {
    if n == 0 {
        x == 0
    } else {
        x % n == 0
    }
}

/// `x ∈ √(nZ)`, decided by powering instead of factoring.
pub fn in_radical(n: i64, x: i64) -> bool {
    if n == 0 {
        return x == 0;
    }
    let mut p = x.rem_euclid(n) as i128;
    for _ in 0..12 {
        if p % n as i128 == 0 {
            return true;
        }
        p = (p * x as i128).rem_euclid(n as i128);
    }
    false
}

pub const BOX: i64 = 64;

pub fn nonunits() -> impl Iterator<Item = i64> + Clone {
    (0..=BOX).filter(|&x| x != 1)
}

pub fn refute_one_absorbing(n: i64) -> Option<(i64, i64, i64)> {
    for a in nonunits() {
        for b in nonunits().filter(|&b| b >= a) {
            if in_ideal(n, a * b) {
                continue;
            }
            for c in nonunits() {
                if in_ideal(n, a * b * c) && !in_radical(n, c) {
                    return Some((a, b, c));
                }
            }
        }
    }
    None
}

pub fn refute_two_absorbing_primary(n: i64) -> Option<(i64, i64, i64)> {
    for a in nonunits() {
        for b in nonunits().filter(|&b| b >= a) {
            if in_ideal(n, a * b) {
                continue;
            }
            for c in nonunits() {
                if in_ideal(n, a * b * c) && !in_radical(n, a * c) && !in_radical(n, b * c) {
                    return Some((a, b, c));
                }
            }
        }
    }
    None
}

pub fn refute_primary(n: i64) -> Option<(i64, i64)> {
    for a in 0..=BOX {
        for b in 0..=BOX {
            if in_ideal(n, a * b) && !in_ideal(n, a) && !in_radical(n, b) {
                return Some((a, b));
            }
        }
    }
    None
}

pub fn lat(gens: &[&[i128]], k: usize) -> IntLattice {
    IntLattice::new(&gens.iter().map(|g| g.to_vec()).collect::<Vec<_>>(), k).unwrap()
}

pub fn oracle_lattices() -> Vec<IntLattice> {
    let mut out = vec![
        lat(&[&[4, 0]], 2),
        lat(&[&[2, 0], &[0, 1]], 2),
        IntLattice::zero(2).unwrap(),
        lat(&[&[2, 0], &[0, 3]], 2),
        lat(&[&[12, 0]], 2),
        lat(&[&[2, 2], &[0, 4]], 2),
        lat(&[&[6, 0], &[0, 0]], 2),
        lat(&[&[3, 0], &[0, 9]], 2),
        lat(&[&[2, 4]], 2),
        lat(&[&[1, 1], &[0, 8]], 2),
        lat(&[&[2, 0, 0], &[0, 2, 0]], 3),
        lat(&[&[4, 0, 0], &[0, 2, 0], &[0, 0, 2]], 3),
        lat(&[&[8]], 1),
        lat(&[&[12]], 1),
        IntLattice::zero(1).unwrap(),
    ];
    for a in 1..=4i128 {
        for b in 0..a {
            for c in 1..=4i128 {
                out.push(lat(&[&[a, b], &[0, c]], 2));
            }
        }
    }
    out
}

/// Reduces `v` to the index of its coset representative.
pub fn coset_index(n: &IntLattice, reps: &[Vector], v: &[i128]) -> usize {
    reps.iter()
        .position(|r| n.contains(&v.iter().zip(r).map(|(x, y)| x - y).collect::<Vec<_>>()))
        .expect("coset representatives cover the quotient")
}

pub fn boxed(k: usize, r: i128) -> Vec<Vector> {
    let mut out = vec![vec![]];
    for _ in 0..k {
        out = out
            .into_iter()
            .flat_map(|v| (-r..=r).map(move |x| [v.clone(), vec![x]].concat()))
            .collect();
    }
    out
}


/// Checks one ideal `nZ` against the bounded refutation searches and verifies
/// every witness from the definitions. Returns whether 1AP was refuted.
pub fn check_int_ideal(n: u64) -> Result<bool, String> {
    let r = classify_int_ideal(IntIdeal(n)).map_err(|e| e.to_string())?;
    let ni = n as i64;
    let fail = |msg: String| Err(format!("{n}Z: {msg}"));
    let refuted = refute_one_absorbing(ni);
    if let Some(w) = refuted {
        if r.one_absorbing_primary {
            return fail(format!("1ap claimed but refuted by {w:?}"));
        }
    } else if n <= 128 && !r.one_absorbing_primary {
        // for n ≤ 128 every factor of the closed-form witness fits in the box
        return fail("1ap denied but no refutation in range".into());
    }
    if let Some(w) = refute_two_absorbing_primary(ni) {
        if r.two_absorbing_primary {
            return fail(format!("2ap claimed but refuted by {w:?}"));
        }
    }
    if let Some(w) = refute_primary(ni) {
        if r.primary {
            return fail(format!("primary claimed but refuted by {w:?}"));
        }
    }
    if let Some((a, b, c)) = r.witnesses.one_absorbing_primary {
        let (a, b, c) = (a as i64, b as i64, c as i64);
        if !(a.abs() > 1 && b.abs() > 1 && c.abs() > 1)
            || !(in_ideal(ni, a * b * c) && !in_ideal(ni, a * b) && !in_radical(ni, c))
        {
            return fail(format!("bad 1ap witness {:?}", (a, b, c)));
        }
    }
    if let Some((a, b, c)) = r.witnesses.two_absorbing_primary {
        let (a, b, c) = (a as i64, b as i64, c as i64);
        if !(in_ideal(ni, a * b * c) && !in_ideal(ni, a * b) && !in_radical(ni, a * c) && !in_radical(ni, b * c)) {
            return fail(format!("bad 2ap witness {:?}", (a, b, c)));
        }
    }
    if let Some((a, b)) = r.witnesses.primary {
        let (a, b) = (a as i64, b as i64);
        if !(in_ideal(ni, a * b) && !in_ideal(ni, a) && !in_radical(ni, b)) {
            return fail(format!("bad primary witness {:?}", (a, b)));
        }
    }
    if let Some((a, b)) = r.witnesses.prime {
        let (a, b) = (a as i64, b as i64);
        if !(in_ideal(ni, a * b) && !in_ideal(ni, a) && !in_ideal(ni, b)) {
            return fail(format!("bad prime witness {:?}", (a, b)));
        }
    }
    // the radical is generated by the least divisor of n lying in it
    let rad = (1..=ni).find(|&d| ni % d == 0 && in_radical(ni, d)).unwrap_or(0);
    if r.radical.generator() as i64 != rad {
        return fail(format!("radical {} expected {rad}", r.radical));
    }
    Ok(refuted.is_some())
}

/// Bounded refutation of the 1-absorbing primary condition for a lattice,
/// straight from the definition with the radical taken from the classifier,
/// plus definitional checks of the reported witnesses. A verdict of "not 1AP"
/// must come with a verified witness; "1AP" must survive the search.
pub fn check_lattice(n: &IntLattice) -> Result<(), String> {
    let r = classify_int_submodule(n).map_err(|e| e.to_string())?;
    if !r.proper {
        return Ok(());
    }
    let e = n.torsion_exponent().map_err(|e| e.to_string())? as i64;
    let k = n.ambient_rank();
    let colon = r.colon;
    let top = (2 * e + 4).min(40);
    let pts = boxed(k, if k == 3 { 3 } else { 6 });
    let mut refutation = None;
    'search: for a in (0..=top).filter(|&x| x != 1) {
        for b in (a..=top).filter(|&x| x != 1) {
            if colon.contains((a * b) as i128) {
                continue;
            }
            for m in &pts {
                let abm: Vec<i128> = m.iter().map(|x| x * (a * b) as i128).collect();
                if n.contains(&abm) && !r.m_radical.contains(m) {
                    refutation = Some((a, b, m.clone()));
                    break 'search;
                }
            }
        }
    }
    if let Some(w) = &refutation {
        if r.one_absorbing_primary {
            return Err(format!("{n}: 1ap claimed but refuted by {w:?}"));
        }
    }
    match &r.witnesses.one_absorbing_primary {
        Some((a, b, m)) => {
            let abm: Vec<i128> = m.iter().map(|x| x * a * b).collect();
            if !(a.abs() > 1 && b.abs() > 1 && n.contains(&abm) && !colon.contains(a * b) && !r.m_radical.contains(m)) {
                return Err(format!("{n}: bad 1ap witness"));
            }
        }
        None if !r.one_absorbing_primary => return Err(format!("{n}: 1ap denied without a witness")),
        None => {}
    }
    if let Some((a, m)) = &r.witnesses.prime {
        let am: Vec<i128> = m.iter().map(|x| x * a).collect();
        if !(n.contains(&am) && !n.contains(m) && !colon.contains(*a)) {
            return Err(format!("{n}: bad prime witness"));
        }
    }
    Ok(())
}
