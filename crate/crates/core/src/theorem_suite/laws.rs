use std::sync::Arc;

use super::corpus::{Corpus, ModuleItem};
use super::covering::Covering;
use super::{Evaluator, InstanceKind, Law, Outcome, Record, Source};
use crate::elemset::ElemSet;
use crate::error::Result;
use crate::expr::{Lit, ModuleExpr};
use crate::finite_module::{ColonTarget, Direction, FiniteModule, ModuleHom, Submodule, hom_transfer};
use crate::finite_ring::{FiniteRing, Ideal};
use crate::integer_module::{
    classify_int_ideal, classify_int_submodule, int_radical, is_prime, m_radical_int, IntIdeal, IntLattice,
};

fn law(id: &'static str, kind: InstanceKind, statement: &'static str, parts: Vec<(Source, Evaluator)>) -> Law {
    Law {
        id,
        statement,
        kind,
        parts,
    }
}

pub(crate) fn catalog() -> Vec<Law> {
    use InstanceKind::*;
    use Source::*;
    vec![
        law("L-CHAIN", Submodule,
            "prime => 1-absorbing primary => 2-absorbing primary, for every proper submodule",
            vec![(Modules, chain_finite), (IntIdeals, chain_int_ideal), (Lattices, chain_lattice)]),
        law("L-L1", Submodule,
            "N 1-absorbing primary <=> (N :_M ab) in M-rad(N) for non-units a,b with ab outside (N:M) \
             <=> abK in N forces ab in (N:M) or K in M-rad(N) <=> I1 I2 K in N for proper ideals forces \
             I1 I2 in (N:M) or K in M-rad(N)",
            vec![(Modules, four_clauses)]),
        law("L-TN", Submodule,
            "in a finitely generated multiplication module, N is 1-absorbing primary iff \
             N1 N2 N3 in N forces N1 N2 in N or N3 in M-rad(N)",
            vec![(Modules, submodule_products)]),
        law("L-LEM9", Ideal,
            "in a finitely generated faithful multiplication module, (IM : M) = I for every ideal I",
            vec![(Modules, colon_of_extension)]),
        law("L-T0a", Ideal,
            "faithful multiplication M: I is a 1-absorbing primary ideal iff IM is a 1-absorbing primary submodule",
            vec![(Modules, t0_extension)]),
        law("L-T0b", Submodule,
            "faithful multiplication M: N is 1-absorbing primary iff (N:M) is a 1-absorbing primary ideal",
            vec![(Modules, t0_colon)]),
        law("L-T0c", Submodule,
            "faithful multiplication M: N is 1-absorbing primary iff N = IM for a 1-absorbing primary ideal I",
            vec![(Modules, t0_image)]),
        law("L-T1a", Submodule,
            "multiplication M, N 1-absorbing primary: the radical of (N:M) is prime",
            vec![(Modules, t1a), (IntIdeals, t1_int)]),
        law("L-T1b", Submodule,
            "multiplication M, N 1-absorbing primary: for m outside M-rad(N), the radical of (N:m) is a \
             prime containing the radical of (N:M)",
            vec![(Modules, t1b), (IntIdeals, t1_int)]),
        law("L-T1c", Submodule,
            "multiplication M, N 1-absorbing primary: M-rad(N) is a prime submodule",
            vec![(Modules, t1c), (IntIdeals, t1_int)]),
        law("L-INT", Submodule,
            "multiplication M: an intersection of P-1-absorbing primary submodules is P-1-absorbing primary",
            vec![(Modules, intersections), (IntIdeals, intersections_int)]),
        law("L-RAD-HOM", Hom,
            "epimorphism f: f(M-rad(N)) = M-rad(f(N)) when ker f in N, and f^-1(M-rad(K)) = M-rad(f^-1(K))",
            vec![(Homs, radical_transfer)]),
        law("L-F1", Hom,
            "N2 1-absorbing primary in M2 and f^-1(N2) proper => f^-1(N2) is 1-absorbing primary in M1",
            vec![(Homs, preimages)]),
        law("L-F2", Hom,
            "epimorphism f, N1 1-absorbing primary containing ker f => f(N1) is 1-absorbing primary",
            vec![(Homs, images)]),
        law("L-CQ", Submodule,
            "for N2 in N1: N1 is 1-absorbing primary in M iff N1/N2 is 1-absorbing primary in M/N2",
            vec![(Modules, quotients)]),
        law("L-TC", Construction,
            "N1 x M2 1-absorbing primary in M1 x M2 => N1 is 1-absorbing primary in M1",
            vec![(Products, products)]),
        law("L-S", Construction,
            "N 1-absorbing primary and S^-1 N proper => S^-1 N is 1-absorbing primary in S^-1 M",
            vec![(Localizations, localizations)]),
        law("L-ID", Construction,
            "homogeneous I(+)N 1-absorbing primary in R(+)M => I is 1-absorbing primary in R; \
             radical of I(+)N is rad(I)(+)M",
            vec![(Idealizations, idealizations)]),
        law("L-NEG", Ideal,
            "in Z: 2Z and 3Z are 1-absorbing primary, their intersection 6Z is not (witness 2*2*3)",
            vec![(Fixtures, negative_fixture)]),
        law("L-EF", Covering,
            "multiplication M, efficient covering by n > 2 members with separated radicals => \
             no member is 1-absorbing primary",
            vec![(Coverings, cover_efficient)]),
        law("L-AV", Covering,
            "multiplication M, at most two members not 1-absorbing primary, separated radicals => \
             N lies in a single member",
            vec![(Coverings, cover_avoidance)]),
        law("L-EF-RING", Covering,
            "ideals: efficient covering by n > 2 ideals with separated radicals => no member is \
             1-absorbing primary",
            vec![(Coverings, ring_efficient)]),
        law("L-AV-RING", Covering,
            "ideals: at most two members not 1-absorbing primary, separated radicals => I lies in a \
             single member",
            vec![(Coverings, ring_avoidance)]),
        law("L-COV2", Covering,
            "a covering by two submodules is never efficient",
            vec![(Coverings, two_member_coverings)]),
        law("L-RAD-MULT", Submodule,
            "multiplication M: M-rad(N) = rad(N:M) M for every proper N",
            vec![(Modules, radical_formula), (IntIdeals, radical_formula_int)]),
    ]
}

fn lits(names: impl Iterator<Item = String>) -> String {
    format!(
        "[{}]",
        names.map(|n| Lit::from_name(&n).to_string()).collect::<Vec<_>>().join(", ")
    )
}

pub(crate) fn sub_line(m: &FiniteModule, name: &str, s: &Submodule) -> String {
    format!("sub {name} = {}\n", lits(s.generators().iter().map(|&g| m.name(g).to_string())))
}

fn ideal_line(r: &FiniteRing, name: &str, i: &Ideal) -> String {
    format!("ideal {name} = {}\n", lits(i.generators().iter().map(|&g| r.name(g).to_string())))
}

fn with_subs(item: &ModuleItem, subs: &[(&str, &Submodule)]) -> String {
    let mut s = item.spec();
    for (name, sub) in subs {
        s.push_str(&sub_line(&item.module, name, sub));
    }
    s
}

fn verdict(ok: bool, instance: impl FnOnce() -> String, witness: impl FnOnce() -> String) -> Outcome {
    if ok {
        Outcome::Holds
    } else {
        Outcome::Violated(instance(), witness())
    }
}

fn faithful(m: &FiniteModule) -> bool {
    !m.base().is_integers() && m.is_faithful()
}

fn proper_pairs(m: &FiniteModule) -> Result<Vec<(Submodule, crate::finite_module::ClassificationReport)>> {
    Ok(m.submodules()?
        .iter()
        .zip(m.classify_all()?)
        .filter(|(n, _)| n.is_proper())
        .map(|(n, r)| (n.clone(), r.clone()))
        .collect())
}

fn ideal_1ap(r: &FiniteRing, i: &Ideal) -> Result<bool> {
    Ok(i.is_proper() && r.classify_ideal(i)?.one_absorbing_primary)
}

fn is_1ap(m: &FiniteModule, n: &Submodule) -> Result<bool> {
    Ok(n.is_proper() && m.report_for(n)?.one_absorbing_primary)
}

// ---- chain ----

fn chain_finite(c: &Corpus, i: usize) -> Result<Vec<Record>> {
    let item = &c.modules[i];
    Ok(proper_pairs(&item.module)?
        .into_iter()
        .map(|(n, r)| {
            let out = if !(r.prime || r.one_absorbing_primary) {
                Outcome::Vacuous
            } else {
                verdict(
                    (!r.prime || r.one_absorbing_primary) && (!r.one_absorbing_primary || r.two_absorbing_primary),
                    || with_subs(item, &[("N", &n)]),
                    || format!("prime={} 1ap={} 2ap={}", r.prime, r.one_absorbing_primary, r.two_absorbing_primary),
                )
            };
            Record::new(out).with("finite")
        })
        .collect())
}

fn chain_int_ideal(c: &Corpus, i: usize) -> Result<Vec<Record>> {
    let n = c.int_ideals[i];
    let r = classify_int_ideal(IntIdeal(n))?;
    let out = if !(r.prime || r.one_absorbing_primary) {
        Outcome::Vacuous
    } else {
        verdict(
            (!r.prime || r.one_absorbing_primary) && (!r.one_absorbing_primary || r.two_absorbing_primary),
            || format!("version 1\nring Z\nmodule regular\nsub N = [{n}]\n"),
            || "chain broken".into(),
        )
    };
    Ok(vec![Record::new(out).with("integer-ideal")])
}

fn lattice_spec(l: &IntLattice) -> String {
    format!(
        "version 1\nring Z\nmodule intlattice {}\nsub N = [{}]\n",
        l.ambient_rank(),
        l.basis().iter().map(|v| crate::integer_module::render_vector(v)).collect::<Vec<_>>().join(", ")
    )
}

fn chain_lattice(c: &Corpus, i: usize) -> Result<Vec<Record>> {
    let l = &c.lattices[i];
    if l.is_full() {
        return Ok(vec![]);
    }
    let r = classify_int_submodule(l)?;
    let out = if !(r.prime || r.one_absorbing_primary) {
        Outcome::Vacuous
    } else {
        verdict(
            (!r.prime || r.one_absorbing_primary) && (!r.one_absorbing_primary || r.two_absorbing_primary),
            || lattice_spec(l),
            || "chain broken".into(),
        )
    };
    Ok(vec![Record::new(out).with("lattice")])
}

// ---- characterizations ----

fn four_clauses(c: &Corpus, i: usize) -> Result<Vec<Record>> {
    let item = &c.modules[i];
    let m = &item.module;
    let ring = m.scalars();
    let non_units = m.base().non_units();
    let subs = m.submodules()?;
    let ideals = m.base().proper_ideals()?;
    let mut products: Vec<Ideal> = Vec::new();
    for a in &ideals {
        for b in &ideals {
            let p = ring.product_ideal(a, b)?;
            if !products.contains(&p) {
                products.push(p);
            }
        }
    }
    let mut out = Vec::new();
    for (n, r) in proper_pairs(m)? {
        let rad = r.m_radical.elements();
        let cm: Vec<ElemSet> = ring
            .elements()
            .map(|d| m.colon_in_module(&n, d).map(|s| s.elements().clone()))
            .collect::<Result<_>>()?;
        let c1 = r.one_absorbing_primary;
        let mut c2 = true;
        let mut c3 = true;
        for &a in &non_units {
            for &b in &non_units {
                let d = ring.mul(a, b);
                if r.colon.contains(d) {
                    continue;
                }
                c2 &= cm[d].is_subset(rad);
                c3 &= subs.iter().all(|k| !k.elements().is_subset(&cm[d]) || k.elements().is_subset(rad));
            }
        }
        let mut c4 = true;
        for j in &products {
            if j.is_subset(&r.colon) {
                continue;
            }
            let mut cj = ElemSet::full(m.size());
            for x in j.elements().iter() {
                cj = cj.intersection(&cm[x]);
            }
            c4 &= subs.iter().all(|k| !k.elements().is_subset(&cj) || k.elements().is_subset(rad));
        }
        let agree = c1 == c2 && c2 == c3 && c3 == c4;
        out.push(Record::new(verdict(
            agree,
            || with_subs(item, &[("N", &n)]),
            || format!("clauses disagree: {c1} {c2} {c3} {c4}"),
        )));
    }
    Ok(out)
}

fn submodule_products(c: &Corpus, i: usize) -> Result<Vec<Record>> {
    let item = &c.modules[i];
    let m = &item.module;
    let pairs = proper_pairs(m)?;
    if !m.is_multiplication()? {
        return Ok(pairs.iter().map(|_| Record::new(Outcome::Vacuous)).collect());
    }
    let ring = m.scalars();
    let subs = m.submodules()?;
    let colons = subs.iter().map(|s| m.colon(s)).collect::<Result<Vec<_>>>()?;
    let s = subs.len();
    let mut pair = Vec::with_capacity(s * s);
    for a in &colons {
        for b in &colons {
            pair.push(ring.product_ideal(a, b)?);
        }
    }
    let mut triple = Vec::with_capacity(s * s * s);
    for p in &pair {
        for k in &colons {
            triple.push(ring.product_ideal(p, k)?);
        }
    }
    let mut out = Vec::new();
    for (n, r) in pairs {
        // in a multiplication module JM ⊆ N iff J ⊆ (N : M)
        let mut holds = true;
        'outer: for a in 0..s {
            for b in 0..s {
                if pair[a * s + b].is_subset(&r.colon) {
                    continue;
                }
                for k in 0..s {
                    if triple[(a * s + b) * s + k].is_subset(&r.colon) && !subs[k].is_subset(&r.m_radical) {
                        holds = false;
                        break 'outer;
                    }
                }
            }
        }
        out.push(Record::new(verdict(
            holds == r.one_absorbing_primary,
            || with_subs(item, &[("N", &n)]),
            || format!("1ap={} product condition={holds}", r.one_absorbing_primary),
        )));
    }
    Ok(out)
}

fn colon_of_extension(c: &Corpus, i: usize) -> Result<Vec<Record>> {
    let item = &c.modules[i];
    let m = &item.module;
    let ring = m.scalars();
    let hyp = faithful(m) && m.is_multiplication()?;
    let mut out = Vec::new();
    for id in ring.ideals()? {
        if !hyp {
            out.push(Record::new(Outcome::Vacuous));
            continue;
        }
        let back = m.colon(&m.ideal_times(id, &m.whole())?)?;
        out.push(Record::new(verdict(
            back == *id,
            || format!("{}{}", item.spec(), ideal_line(ring, "I", id)),
            || format!("(IM:M) has {} elements, I has {}", back.len(), id.len()),
        )));
    }
    Ok(out)
}

fn t0_extension(c: &Corpus, i: usize) -> Result<Vec<Record>> {
    let item = &c.modules[i];
    let m = &item.module;
    let ring = m.scalars();
    let hyp = faithful(m) && m.is_multiplication()?;
    let mut out = Vec::new();
    for id in ring.ideals()? {
        if !hyp {
            out.push(Record::new(Outcome::Vacuous));
            continue;
        }
        let im = m.ideal_times(id, &m.whole())?;
        let (l, r) = (ideal_1ap(ring, id)?, is_1ap(m, &im)?);
        out.push(Record::new(verdict(
            l == r,
            || format!("{}{}", item.spec(), ideal_line(ring, "I", id)),
            || format!("ideal 1ap={l} extension 1ap={r}"),
        )));
    }
    Ok(out)
}

fn t0_colon(c: &Corpus, i: usize) -> Result<Vec<Record>> {
    let item = &c.modules[i];
    let m = &item.module;
    let ring = m.scalars();
    let hyp = faithful(m) && m.is_multiplication()?;
    proper_pairs(m)?
        .into_iter()
        .map(|(n, r)| {
            if !hyp {
                return Ok(Record::new(Outcome::Vacuous));
            }
            let ideal = ideal_1ap(ring, &r.colon)?;
            Ok(Record::new(verdict(
                ideal == r.one_absorbing_primary,
                || with_subs(item, &[("N", &n)]),
                || format!("submodule 1ap={} colon 1ap={ideal}", r.one_absorbing_primary),
            )))
        })
        .collect()
}

fn t0_image(c: &Corpus, i: usize) -> Result<Vec<Record>> {
    let item = &c.modules[i];
    let m = &item.module;
    let ring = m.scalars();
    let hyp = faithful(m) && m.is_multiplication()?;
    let mut images = Vec::new();
    if hyp {
        for id in ring.ideals()? {
            if ideal_1ap(ring, id)? {
                images.push(m.ideal_times(id, &m.whole())?);
            }
        }
    }
    Ok(proper_pairs(m)?
        .into_iter()
        .map(|(n, r)| {
            if !hyp {
                return Record::new(Outcome::Vacuous);
            }
            let is_image = images.contains(&n);
            Record::new(verdict(
                is_image == r.one_absorbing_primary,
                || with_subs(item, &[("N", &n)]),
                || format!("1ap={} image of a 1ap ideal={is_image}", r.one_absorbing_primary),
            ))
        })
        .collect())
}

type T1Check = fn(&FiniteModule, &Submodule, &crate::finite_module::ClassificationReport) -> Result<Option<String>>;

fn t1_common(c: &Corpus, i: usize, check: T1Check) -> Result<Vec<Record>> {
    let item = &c.modules[i];
    let m = &item.module;
    let mult = m.is_multiplication()?;
    let stratum = if faithful(m) { "faithful-multiplication" } else { "non-faithful-multiplication" };
    proper_pairs(m)?
        .into_iter()
        .map(|(n, r)| {
            if !mult || !r.one_absorbing_primary {
                return Ok(Record::new(Outcome::Vacuous));
            }
            let failure = check(m, &n, &r)?;
            let out = match failure {
                None => Outcome::Holds,
                Some(w) => Outcome::Violated(with_subs(item, &[("N", &n)]), w),
            };
            Ok(Record::new(out).with("multiplication").with(stratum))
        })
        .collect()
}

fn t1a(c: &Corpus, i: usize) -> Result<Vec<Record>> {
    t1_common(c, i, |m, _, r| {
        Ok((!m.scalars().classify_ideal(&r.colon_radical)?.prime).then(|| "rad(N:M) is not prime".to_string()))
    })
}

fn t1b(c: &Corpus, i: usize) -> Result<Vec<Record>> {
    t1_common(c, i, |m, n, r| {
        let ring = m.scalars();
        for x in m.elements().filter(|&x| !r.m_radical.contains(x)) {
            let q = ring.radical(&m.colon_into_ring(n, ColonTarget::Element(x))?)?;
            if !q.is_proper() || !ring.classify_ideal(&q)?.prime || !r.colon_radical.is_subset(&q) {
                return Ok(Some(format!("m = {}", m.name(x))));
            }
        }
        Ok(None)
    })
}

fn t1c(c: &Corpus, i: usize) -> Result<Vec<Record>> {
    t1_common(c, i, |m, _, r| {
        Ok((!m.is_prime(&r.m_radical)).then(|| "M-rad(N) is not a prime submodule".to_string()))
    })
}

/// `Z` over itself: all three conclusions at once, with `m` ranging over
/// residues since `(nZ : m)` depends only on `gcd(n, m)`.
fn t1_int(c: &Corpus, i: usize) -> Result<Vec<Record>> {
    let n = c.int_ideals[i];
    let r = classify_int_ideal(IntIdeal(n))?;
    if !r.one_absorbing_primary {
        return Ok(vec![Record::new(Outcome::Vacuous)]);
    }
    let rad = r.radical.generator();
    let prime_ideal = |g: u64| g == 0 || is_prime(g);
    let mut ok = prime_ideal(rad);
    let mrad = m_radical_int(&IntLattice::new(&[vec![n as i128]], 1)?)?;
    ok &= classify_int_submodule(&mrad)?.prime;
    if n > 0 {
        for x in 1..n {
            if mrad.contains(&[x as i128]) {
                continue;
            }
            let q = int_radical(IntIdeal(n / num_integer::gcd(n, x))).generator();
            ok &= prime_ideal(q) && rad % q.max(1) == 0 && q != 1;
        }
    }
    Ok(vec![Record::new(verdict(
        ok,
        || format!("version 1\nring Z\nmodule regular\nsub N = [{n}]\n"),
        || "radical conclusions fail".into(),
    ))
    .with("integers")])
}

fn intersections(c: &Corpus, i: usize) -> Result<Vec<Record>> {
    let item = &c.modules[i];
    let m = &item.module;
    if !m.is_multiplication()? {
        return Ok(vec![Record::new(Outcome::Vacuous)]);
    }
    let pairs = proper_pairs(m)?;
    let mut groups: Vec<(Ideal, Vec<Submodule>)> = Vec::new();
    for (n, r) in &pairs {
        if let Some(p) = &r.p_one_absorbing_primary_for {
            match groups.iter_mut().find(|(q, _)| q == p) {
                Some((_, v)) => v.push(n.clone()),
                None => groups.push((p.clone(), vec![n.clone()])),
            }
        }
    }
    let mut out = Vec::new();
    for (p, family) in &groups {
        let k = family.len();
        let mut fams: Vec<Vec<usize>> = Vec::new();
        for a in 0..k {
            for b in a + 1..k {
                fams.push(vec![a, b]);
                for c3 in b + 1..k {
                    fams.push(vec![a, b, c3]);
                }
            }
        }
        for f in fams {
            let mut inter = family[f[0]].clone();
            for &x in &f[1..] {
                inter = m.intersection(&inter, &family[x])?;
            }
            let r = m.report_for(&inter)?;
            let ok = r.one_absorbing_primary && r.colon_radical == *p;
            out.push(Record::new(verdict(
                ok,
                || {
                    let named: Vec<(String, &Submodule)> =
                        f.iter().enumerate().map(|(j, &x)| (format!("N{}", j + 1), &family[x])).collect();
                    let mut s = item.spec();
                    for (name, sub) in &named {
                        s.push_str(&sub_line(m, name, sub));
                    }
                    s
                },
                || "intersection is not P-1-absorbing primary".into(),
            )));
        }
    }
    if out.is_empty() {
        out.push(Record::new(Outcome::Vacuous));
    }
    Ok(out)
}

fn intersections_int(c: &Corpus, i: usize) -> Result<Vec<Record>> {
    let n = c.int_ideals[i];
    let r = classify_int_ideal(IntIdeal(n))?;
    if n == 0 || !r.one_absorbing_primary {
        return Ok(vec![Record::new(Outcome::Vacuous)]);
    }
    let p = r.radical;
    let mut out = Vec::new();
    for &m in c.int_ideals.iter().filter(|&&m| m > n) {
        let s = classify_int_ideal(IntIdeal(m))?;
        if !s.one_absorbing_primary || s.radical != p {
            continue;
        }
        let inter = IntIdeal(num_integer::lcm(n, m));
        let t = classify_int_ideal(inter)?;
        out.push(
            Record::new(verdict(
                t.one_absorbing_primary && t.radical == p,
                || format!("version 1\nring Z\nmodule regular\nsub N1 = [{n}]\nsub N2 = [{m}]\n"),
                || format!("{inter} fails"),
            ))
            .with("integers"),
        );
    }
    if out.is_empty() {
        out.push(Record::new(Outcome::Vacuous));
    }
    Ok(out)
}

// ---- homomorphisms ----

fn hom_instance(c: &Corpus, i: usize, subs: &[(&str, &Submodule)]) -> String {
    let h = &c.homs[i];
    let mut s = with_subs(&c.modules[h.source], subs);
    s.push_str(&format!("# map: {}\n", h.label));
    s
}

fn radical_transfer(c: &Corpus, i: usize) -> Result<Vec<Record>> {
    let f = &c.homs[i].hom;
    let (m1, m2) = (f.source().clone(), f.target().clone());
    let mut out = Vec::new();
    if !f.is_surjective() {
        return Ok(vec![Record::new(Outcome::Vacuous)]);
    }
    let ker = f.kernel();
    for n in m1.submodules()? {
        if !ker.is_subset(n) {
            out.push(Record::new(Outcome::Vacuous));
            continue;
        }
        let lhs = f.image(&m1.m_radical(n)?)?;
        let rhs = m2.m_radical(&hom_transfer(f, Direction::Image, n)?)?;
        out.push(
            Record::new(verdict(lhs == rhs, || hom_instance(c, i, &[("N", n)]), || "image of radical differs".into()))
                .with("image"),
        );
    }
    for k in m2.submodules()? {
        let lhs = f.preimage(&m2.m_radical(k)?)?;
        let rhs = m1.m_radical(&f.preimage(k)?)?;
        out.push(
            Record::new(verdict(lhs == rhs, || hom_instance(c, i, &[]), || {
                format!("preimage of radical of <{}> differs", m2.render_list(k.generators()))
            }))
            .with("preimage"),
        );
    }
    Ok(out)
}

fn preimages(c: &Corpus, i: usize) -> Result<Vec<Record>> {
    let f = &c.homs[i].hom;
    let (m1, m2) = (f.source().clone(), f.target().clone());
    let stratum = if f.is_surjective() { "epimorphism" } else { "non-surjective" };
    let mut out = Vec::new();
    for k in m2.submodules()? {
        let pre = f.preimage(k)?;
        if !is_1ap(&m2, k)? || !pre.is_proper() {
            out.push(Record::new(Outcome::Vacuous));
            continue;
        }
        let ok = is_1ap(&m1, &pre)?;
        out.push(
            Record::new(verdict(ok, || hom_instance(c, i, &[("N1", &pre)]), || {
                format!(
                    "preimage of 1-absorbing primary <{}> is not 1-absorbing primary",
                    m2.render_list(k.generators())
                )
            }))
            .with(stratum),
        );
    }
    Ok(out)
}

fn images(c: &Corpus, i: usize) -> Result<Vec<Record>> {
    let f = &c.homs[i].hom;
    let (m1, m2) = (f.source().clone(), f.target().clone());
    if !f.is_surjective() {
        return Ok(vec![Record::new(Outcome::Vacuous)]);
    }
    let ker = f.kernel();
    let mut out = Vec::new();
    for n in m1.submodules()? {
        if !ker.is_subset(n) || !is_1ap(&m1, n)? {
            out.push(Record::new(Outcome::Vacuous));
            continue;
        }
        let img = hom_transfer(f, Direction::Image, n)?;
        out.push(Record::new(verdict(
            is_1ap(&m2, &img)?,
            || hom_instance(c, i, &[("N1", n)]),
            || "image is not 1-absorbing primary".into(),
        )));
    }
    Ok(out)
}

// ---- constructions ----

fn quotients(c: &Corpus, i: usize) -> Result<Vec<Record>> {
    let item = &c.modules[i];
    let m = &item.module;
    let subs = m.submodules()?;
    let mut out = Vec::new();
    for n2 in subs.iter().filter(|s| s.is_proper()) {
        let q = FiniteModule::quotient(m, n2)?;
        let proj = ModuleHom::projection(&q).expect("quotient carries its projection");
        for n1 in subs.iter().filter(|s| s.is_proper() && n2.is_subset(s)) {
            let img = proj.image(n1)?;
            let (l, r) = (is_1ap(m, n1)?, is_1ap(&q, &img)?);
            let mut rec = Record::new(if !l && !r {
                Outcome::Vacuous
            } else {
                verdict(l == r, || with_subs(item, &[("N1", n1), ("N2", n2)]), || {
                    format!("N1 1ap={l}, N1/N2 1ap={r}")
                })
            });
            if l {
                rec = rec.with("forward");
            }
            if r {
                rec = rec.with("backward");
            }
            out.push(rec);
        }
    }
    Ok(out)
}

fn products(c: &Corpus, i: usize) -> Result<Vec<Record>> {
    let item = &c.products[i];
    let (m1, m2, p) = (&item.first.module, &item.second.module, &item.product.module);
    let n2 = m2.size();
    let mut out = Vec::new();
    for n1 in m1.submodules()?.iter().filter(|s| s.is_proper()) {
        let set = ElemSet::from_indices(
            p.size(),
            n1.elements().iter().flat_map(|x| (0..n2).map(move |y| x * n2 + y)),
        );
        let n = p.submodule_from_elements(set)?;
        if !is_1ap(p, &n)? {
            out.push(Record::new(Outcome::Vacuous));
            continue;
        }
        out.push(Record::new(verdict(
            is_1ap(m1, n1)?,
            || with_subs(&item.product, &[("N", &n)]),
            || format!("<{}> is not 1-absorbing primary in the first factor", m1.render_list(n1.generators())),
        )));
    }
    Ok(out)
}

fn localizations(c: &Corpus, i: usize) -> Result<Vec<Record>> {
    let item = &c.localizations[i];
    let src = &c.modules[item.source];
    let m = &src.module;
    let loc = &item.localization;
    let mut out = Vec::new();
    for n in m.submodules()?.iter().filter(|s| s.is_proper()) {
        let sn = loc.submodule(n)?;
        if !is_1ap(m, n)? || !sn.is_proper() {
            out.push(Record::new(Outcome::Vacuous));
            continue;
        }
        out.push(Record::new(verdict(
            is_1ap(&loc.module, &sn)?,
            || {
                let mut s = with_subs(src, &[("N", n)]);
                s.push_str(&format!(
                    "# localize at {}\n",
                    lits(item.denominators.iter().map(|&d| m.scalars().name(d).to_string()))
                ));
                s
            },
            || "localized submodule is not 1-absorbing primary".into(),
        )));
    }
    Ok(out)
}

fn idealizations(c: &Corpus, i: usize) -> Result<Vec<Record>> {
    let item = &c.idealizations[i];
    let src = &c.modules[item.source];
    let idz = &item.idealization;
    let (base, m, ring) = (&idz.base, &idz.module, &idz.ring);
    let mut out = Vec::new();
    for id in base.ideals()?.iter().filter(|x| x.is_proper()) {
        let im = m.ideal_times(id, &m.whole())?;
        for n in m.submodules()?.iter().filter(|n| im.is_subset(n)) {
            let j = idz.homogeneous_ideal(id, n)?;
            let instance = || {
                let mut s = with_subs(src, &[("N", n)]);
                s.push_str(&ideal_line(base, "I", id));
                s
            };
            let rad_ok = ring.radical(&j)? == idz.radical_of_homogeneous(id)?;
            out.push(Record::new(verdict(rad_ok, instance, || "radical identity fails".into())).with("radical"));
            let rec = if ideal_1ap(ring, &j)? {
                verdict(ideal_1ap(base, id)?, instance, || "I is not 1-absorbing primary".into())
            } else {
                Outcome::Vacuous
            };
            out.push(Record::new(rec).with("implication"));
        }
    }
    Ok(out)
}

fn negative_fixture(_: &Corpus, _: usize) -> Result<Vec<Record>> {
    let two = classify_int_ideal(IntIdeal(2))?;
    let three = classify_int_ideal(IntIdeal(3))?;
    let six = classify_int_ideal(IntIdeal(6))?;
    let meet = IntLattice::new(&[vec![2]], 1)?.intersection(&IntLattice::new(&[vec![3]], 1)?)?;
    let spec = |n: u64| format!("version 1\nring Z\nmodule regular\nsub N = [{n}]\n");
    Ok(vec![
        Record::new(verdict(two.one_absorbing_primary, || spec(2), || "2Z not 1ap".into())),
        Record::new(verdict(three.one_absorbing_primary, || spec(3), || "3Z not 1ap".into())),
        Record::new(verdict(meet == IntLattice::new(&[vec![6]], 1)?, || spec(6), || "2Z meet 3Z is not 6Z".into())),
        Record::new(verdict(
            !six.one_absorbing_primary && six.witnesses.one_absorbing_primary == Some((2, 2, 3)),
            || spec(6),
            || format!("6Z witness {:?}", six.witnesses.one_absorbing_primary),
        )),
    ])
}

// ---- coverings ----

/// Covering-relevant data for one family of subsets: submodules of a
/// module, or ideals of a ring viewed as its own module.
struct CoverData {
    sets: Vec<ElemSet>,
    proper: Vec<bool>,
    one_ap: Vec<bool>,
    /// `√(N_i : M)` as a set of ring elements.
    rad_colon: Vec<ElemSet>,
    /// Distinct `√(N_j : m)` over `m ∉ M-rad(N_j)`.
    rad_elem: Vec<Vec<ElemSet>>,
    multiplication: bool,
}

impl CoverData {
    fn for_module(m: &FiniteModule) -> Result<Self> {
        let ring = m.scalars();
        let subs = m.submodules()?;
        let reports = m.classify_all()?;
        let mut rad_elem = Vec::new();
        for (n, r) in subs.iter().zip(reports) {
            let mut v: Vec<ElemSet> = Vec::new();
            for x in m.elements().filter(|&x| !r.m_radical.contains(x)) {
                let q = ring.radical(&m.colon_into_ring(n, ColonTarget::Element(x))?)?;
                if !v.contains(q.elements()) {
                    v.push(q.elements().clone());
                }
            }
            rad_elem.push(v);
        }
        Ok(CoverData {
            sets: subs.iter().map(|s| s.elements().clone()).collect(),
            proper: subs.iter().map(|s| s.is_proper()).collect(),
            one_ap: reports.iter().map(|r| r.one_absorbing_primary).collect(),
            rad_colon: reports.iter().map(|r| r.colon_radical.elements().clone()).collect(),
            rad_elem,
            multiplication: m.is_multiplication()?,
        })
    }

    fn for_ring(r: &FiniteRing) -> Result<Self> {
        let ideals = r.ideals()?;
        let mut rad_colon = Vec::new();
        let mut rad_elem = Vec::new();
        let mut one_ap = Vec::new();
        for i in ideals {
            let rad = r.radical(i)?;
            let mut v: Vec<ElemSet> = Vec::new();
            for x in r.elements().filter(|&x| !rad.contains(x)) {
                let q = r.radical(&r.colon(i, &r.ideal_span(&[x])?)?)?;
                if !v.contains(q.elements()) {
                    v.push(q.elements().clone());
                }
            }
            rad_elem.push(v);
            rad_colon.push(rad.elements().clone());
            one_ap.push(ideal_1ap(r, i)?);
        }
        Ok(CoverData {
            sets: ideals.iter().map(|i| i.elements().clone()).collect(),
            proper: ideals.iter().map(|i| i.is_proper()).collect(),
            one_ap,
            rad_colon,
            rad_elem,
            multiplication: true,
        })
    }

    fn separated(&self, members: &[usize]) -> bool {
        members.iter().all(|&j| {
            members
                .iter()
                .filter(|&&i| i != j)
                .all(|&i| self.rad_elem[j].iter().all(|r| !self.rad_colon[i].is_subset(r)))
        })
    }

    fn union(&self, members: &[usize]) -> ElemSet {
        let mut acc = self.sets[members[0]].clone();
        for &i in &members[1..] {
            acc = acc.union(&self.sets[i]);
        }
        acc
    }

    fn efficient(&self, target: usize, members: &[usize]) -> bool {
        (0..members.len()).all(|skip| {
            let rest: Vec<usize> = members.iter().enumerate().filter(|&(k, _)| k != skip).map(|(_, &x)| x).collect();
            !self.sets[target].is_subset(&self.union(&rest))
        })
    }

    /// `(target, members)` for every covering with 2..=max members,
    /// members strictly ascending.
    fn coverings(&self, sizes: std::ops::RangeInclusive<usize>) -> Vec<(usize, Vec<usize>)> {
        let proper: Vec<usize> = (0..self.sets.len()).filter(|&i| self.proper[i]).collect();
        let max = if proper.len() <= 10 { *sizes.end() } else { (*sizes.end()).min(3) };
        let mut combos: Vec<Vec<usize>> = Vec::new();
        fn rec(pool: &[usize], k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if cur.len() == k {
                out.push(cur.clone());
                return;
            }
            for i in start..pool.len() {
                cur.push(pool[i]);
                rec(pool, k, i + 1, cur, out);
                cur.pop();
            }
        }
        for k in *sizes.start()..=max {
            rec(&proper, k, 0, &mut Vec::new(), &mut combos);
        }
        let mut out = Vec::new();
        for combo in combos {
            let u = self.union(&combo);
            for t in 0..self.sets.len() {
                if self.sets[t].is_subset(&u) {
                    out.push((t, combo.clone()));
                }
            }
        }
        out
    }
}

fn cover_instance(item: &ModuleItem, target: usize, members: &[usize]) -> Result<String> {
    let subs = item.module.submodules()?;
    let mut named = vec![("N".to_string(), &subs[target])];
    for (k, &x) in members.iter().enumerate() {
        named.push((format!("N{}", k + 1), &subs[x]));
    }
    let mut s = item.spec();
    for (name, sub) in named {
        s.push_str(&sub_line(&item.module, &name, sub));
    }
    Ok(s)
}

fn ring_cover_instance(item: &ModuleItem, target: usize, members: &[usize]) -> Result<String> {
    let r = item.module.scalars();
    let ideals = r.ideals()?;
    let mut s = item.spec();
    s.push_str(&ideal_line(r, "I", &ideals[target]));
    for (k, &x) in members.iter().enumerate() {
        s.push_str(&ideal_line(r, &format!("I{}", k + 1), &ideals[x]));
    }
    Ok(s)
}

type CoverInstance = fn(&ModuleItem, usize, &[usize]) -> Result<String>;

fn efficient_records(d: &CoverData, item: &ModuleItem, describe: CoverInstance) -> Result<Vec<Record>> {
    let mut out = Vec::new();
    for (t, members) in d.coverings(3..=4) {
        let hyp = d.multiplication && d.efficient(t, &members) && d.separated(&members);
        let rec = if !hyp {
            Outcome::Vacuous
        } else {
            match members.iter().position(|&x| d.one_ap[x]) {
                None => Outcome::Holds,
                Some(k) => Outcome::Violated(describe(item, t, &members)?, format!("member {} is 1-absorbing primary", k + 1)),
            }
        };
        out.push(Record::new(rec));
    }
    Ok(out)
}

fn avoidance_records(d: &CoverData, item: &ModuleItem, describe: CoverInstance) -> Result<Vec<Record>> {
    let mut out = Vec::new();
    for (t, members) in d.coverings(2..=4) {
        let not_1ap = members.iter().filter(|&&x| !d.one_ap[x]).count();
        let hyp = d.multiplication && not_1ap <= 2 && d.separated(&members);
        let rec = if !hyp {
            Outcome::Vacuous
        } else if members.iter().any(|&x| d.sets[t].is_subset(&d.sets[x])) {
            Outcome::Holds
        } else {
            Outcome::Violated(describe(item, t, &members)?, "target lies in no single member".into())
        };
        out.push(Record::new(rec));
    }
    Ok(out)
}

fn regular_item(c: &Corpus, i: usize) -> Option<&ModuleItem> {
    let item = &c.modules[c.covering_modules[i]];
    (item.expr == ModuleExpr::Regular && !item.module.base().is_integers()).then_some(item)
}

fn cover_efficient(c: &Corpus, i: usize) -> Result<Vec<Record>> {
    let item = &c.modules[c.covering_modules[i]];
    efficient_records(&CoverData::for_module(&item.module)?, item, cover_instance)
}

fn cover_avoidance(c: &Corpus, i: usize) -> Result<Vec<Record>> {
    let item = &c.modules[c.covering_modules[i]];
    avoidance_records(&CoverData::for_module(&item.module)?, item, cover_instance)
}

fn ring_efficient(c: &Corpus, i: usize) -> Result<Vec<Record>> {
    match regular_item(c, i) {
        Some(item) => efficient_records(&CoverData::for_ring(item.module.scalars())?, item, ring_cover_instance),
        None => Ok(vec![]),
    }
}

fn ring_avoidance(c: &Corpus, i: usize) -> Result<Vec<Record>> {
    match regular_item(c, i) {
        Some(item) => avoidance_records(&CoverData::for_ring(item.module.scalars())?, item, ring_cover_instance),
        None => Ok(vec![]),
    }
}

fn two_member_coverings(c: &Corpus, i: usize) -> Result<Vec<Record>> {
    let item = &c.modules[c.covering_modules[i]];
    let m: &Arc<FiniteModule> = &item.module;
    let subs = m.submodules()?;
    let d = CoverData::for_module(m)?;
    let mut out = Vec::new();
    for (t, members) in d.coverings(2..=2) {
        let cov = Covering::new(m, subs[t].clone(), members.iter().map(|&x| subs[x].clone()).collect())?;
        out.push(Record::new(verdict(
            !cov.is_efficient()?,
            || cover_instance(item, t, &members).unwrap_or_default(),
            || "two-member covering is efficient".into(),
        )));
    }
    Ok(out)
}

fn radical_formula(c: &Corpus, i: usize) -> Result<Vec<Record>> {
    let item = &c.modules[i];
    let m = &item.module;
    let mult = m.is_multiplication()?;
    proper_pairs(m)?
        .into_iter()
        .map(|(n, r)| {
            if !mult {
                return Ok(Record::new(Outcome::Vacuous));
            }
            let formula = m.ideal_times(&r.colon_radical, &m.whole())?;
            Ok(Record::new(verdict(formula == r.m_radical, || with_subs(item, &[("N", &n)]), || {
                "M-rad(N) differs from rad(N:M)M".into()
            })))
        })
        .collect()
}

fn radical_formula_int(c: &Corpus, i: usize) -> Result<Vec<Record>> {
    let n = c.int_ideals[i];
    let mrad = m_radical_int(&IntLattice::new(&[vec![n as i128]], 1)?)?;
    let formula = IntLattice::new(&[vec![int_radical(IntIdeal(n)).generator() as i128]], 1)?;
    Ok(vec![Record::new(verdict(
        mrad == formula,
        || format!("version 1\nring Z\nmodule regular\nsub N = [{n}]\n"),
        || format!("M-rad is {mrad}"),
    ))
    .with("integers")])
}
