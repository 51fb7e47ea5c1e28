//! Acceptance run: one PASS/FAIL line per criterion, with wall-clock time.
//! Runs without the libtest harness so the lines appear in `cargo test` output.

use std::collections::HashSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use icayley::analysis::{
    has_property_p, in_a3_theorem, minimal_nonabelian_subgroups, no_q8_check, verify_family, FamilySpec,
};
use icayley::constructors::{
    builtin, cyclic, dihedral, direct_product, elem_abelian, family_a, family_b, family_c, family_d, remark_action,
    semidirect_product, su3_sylow2, u_group, u_group_phi, w_group, CoreName, KernelName,
};
use icayley::group::{Closure, FiniteGroup};
use icayley::morphisms::{
    all_order3_fpf, automorphism_group, canonical_group, find_order3_fpf, identify_allowed, isomorphic_bruteforce,
    verify_frobenius, AutSearch, AutomorphismMap, IsoClass, ALLOWED,
};
use icayley::spectra::{in_a3_spectral, integral_spectrum_3valent, ConnectionSet};

type Criterion<'a> = Box<dyn FnOnce() -> Outcome + 'a>;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn timed(limit: Duration, f: impl FnOnce() -> Outcome) -> (Outcome, Duration) {
    let t = Instant::now();
    let mut o = f();
    let el = t.elapsed();
    if el > limit {
        o.pass = false;
        o.detail.push_str(&format!(" (over the {limit:?} limit)"));
    }
    (o, el)
}

fn secs(s: u64) -> Duration {
    Duration::from_secs(s)
}

fn criterion_1() -> Outcome {
    let h16 = automorphism_group(&builtin("H16").unwrap(), AutSearch::default()).unwrap().len();
    let h32s = automorphism_group(&builtin("H32star").unwrap(), AutSearch::default()).unwrap().len();
    outcome(h16 == 32 && h32s == 256, format!("|Aut(H16)|={h16} |Aut(H32*)|={h32s}"))
}

fn criterion_2() -> Outcome {
    let h64 = builtin("H64").unwrap();
    let Some(phi) = find_order3_fpf(&h64).unwrap() else {
        return outcome(false, "no order-3 fpf automorphism found on H64");
    };
    let frob = verify_frobenius(&h64, &phi, 3);
    let g = semidirect_product(&h64, &phi, 3).unwrap();
    let p = has_property_p(&g).verdict;
    let cert = verify_family(&g, FamilySpec::C);
    outcome(
        frob.frobenius && g.order() == 192 && p && cert.accepted(),
        format!("frobenius={} order={} P={p} family-c={}", frob.frobenius, g.order(), cert.accepted()),
    )
}

fn criterion_3() -> Outcome {
    let mut parts = Vec::new();
    let mut pass = true;
    for m in [2, 3] {
        let t = Instant::now();
        let w = w_group(m).unwrap();
        let found = find_order3_fpf(&w).unwrap();
        pass &= found.is_none();
        parts.push(format!("W({m}) order={} fpf={} in {:.2?}", w.order(), found.is_some(), t.elapsed()));
    }
    outcome(pass, parts.join("; "))
}

fn criterion_4() -> Outcome {
    let mut parts = Vec::new();
    let mut pass = true;
    for (name, order) in [("K256", 768), ("K1024", 3072)] {
        let (k, z) = remark_action(name).unwrap();
        let frob = verify_frobenius(&k, &z, 3);
        let g = semidirect_product(&k, &z, 3).unwrap();
        let p = has_property_p(&g).verdict;
        pass &= frob.frobenius && z.order() == 3 && g.order() == order && p;
        parts.push(format!("{name}: |K|={} z-order={} frobenius={} |G|={} P={p}", k.order(), z.order(), frob.frobenius, g.order()));
    }
    outcome(pass, parts.join("; "))
}

fn criterion_5() -> Outcome {
    let mut parts = Vec::new();
    let mut pass = true;
    for name in ["H64", "K256", "K1024"] {
        let k = builtin(name).unwrap();
        let noq8 = no_q8_check(&k);
        let found = minimal_nonabelian_subgroups(&k).unwrap();
        let tags: HashSet<IsoClass> = found.iter().map(|(_, t)| *t).collect();
        let ok_tags = tags.iter().all(|t| matches!(t, IsoClass::H16 | IsoClass::H32));
        let h64_rule = name != "H64" || tags == HashSet::from([IsoClass::H16]);
        pass &= noq8 && !found.is_empty() && ok_tags && h64_rule;
        let mut t: Vec<String> = tags.iter().map(|t| t.to_string()).collect();
        t.sort();
        parts.push(format!("{name}: no-q8={noq8} minnonab={} tags={}", found.len(), t.join("+")));
    }
    outcome(pass, parts.join("; "))
}

fn criterion_6() -> Outcome {
    let mut parts = Vec::new();
    let mut pass = true;
    for n in 1..=3usize {
        let g = u_group(n).unwrap();
        let (_, phi) = u_group_phi(n).unwrap();
        let special = g.is_special_2group().unwrap();
        let om = g.omega1();
        let chain = om == special.center && special.center == special.frattini && special.frattini == special.derived;
        let z_order = 1usize << (2 * n - 1);
        let fix_ok = phi.order() == 3 && phi.fix() == special.center;
        let ok = g.order() == 1 << (4 * n - 1) && special.special && chain && om.len() == z_order && fix_ok;
        pass &= ok;
        parts.push(format!(
            "U({n}) order={} special={} |Omega1|=|Z|=|Phi|=|G'|={} phi-order={} fix=Z:{fix_ok}",
            g.order(),
            special.special,
            if chain { om.len().to_string() } else { "mismatch".into() },
            phi.order()
        ));
    }
    let iso = isomorphic_bruteforce(&u_group(1).unwrap(), &builtin("Q8").unwrap()).unwrap();
    pass &= iso;
    parts.push(format!("U(1)~Q8={iso}"));
    outcome(pass, parts.join("; "))
}

fn criterion_7() -> Outcome {
    let s = su3_sylow2(1).unwrap();
    let g = &s.group;
    let special = g.is_special_2group().unwrap();
    let fix = s.z.fix();
    let om = g.omega1();
    let pass = g.order() == 512 && special.special && special.center.len() == 8 && fix == special.center && om == fix;
    outcome(
        pass,
        format!(
            "order={} special={} |Z|={} fix(z)=Z:{} Omega1=fix(z):{}",
            g.order(),
            special.special,
            special.center.len(),
            fix == special.center,
            om == fix
        ),
    )
}

/// Groups of order at most 200 for the equivalence check.
fn corpus() -> Vec<(String, FiniteGroup)> {
    let mut v: Vec<(String, FiniteGroup)> = Vec::new();
    let mut add = |name: &str, g: FiniteGroup| v.push((name.to_string(), g));
    for (m, n) in [(1, 0), (1, 1), (1, 2), (2, 0), (2, 1)] {
        add(&format!("famA({m},{n})"), family_a(m, n).unwrap());
    }
    add("famB(1,1)", family_b(&cyclic(1).unwrap(), None, 1).unwrap());
    add("famB(1,2)", family_b(&cyclic(1).unwrap(), None, 2).unwrap());
    add("famB(Z3,1)", family_b(&cyclic(3).unwrap(), None, 1).unwrap());
    add("famB(Z3^2,1)", family_b(&elem_abelian(3, 2).unwrap(), None, 1).unwrap());
    add("famD(U(1),0)", family_d(CoreName::U(1), 0).unwrap());
    add("famD(U(1),1)", family_d(CoreName::U(1), 1).unwrap());
    add("famC(H64)", family_c(KernelName::H64).unwrap());
    add("D6", dihedral(3).unwrap());
    add("A4", builtin("A4").unwrap());
    add("Q8", builtin("Q8").unwrap());
    add("H16", builtin("H16").unwrap());
    for k in 2..=4 {
        add(&format!("Z2^{k}"), elem_abelian(2, k).unwrap());
    }
    add("D8", builtin("D8").unwrap());
    add("D12", builtin("D12").unwrap());
    add("S4", builtin("S4").unwrap());
    add("A4xZ2", direct_product(&builtin("A4").unwrap(), &cyclic(2).unwrap()).unwrap());
    add("Q8xZ2", direct_product(&builtin("Q8").unwrap(), &cyclic(2).unwrap()).unwrap());
    add("D10", dihedral(5).unwrap());
    for n in 3..=16 {
        add(&format!("Z{n}"), cyclic(n).unwrap());
    }
    v
}

fn criterion_8(corpus: &[(String, FiniteGroup)]) -> Outcome {
    let mut disagreements = Vec::new();
    let mut members = 0;
    for (name, g) in corpus {
        assert!(g.order() <= 200);
        let t = in_a3_theorem(g).member;
        let s = in_a3_spectral(g).unwrap().member;
        members += usize::from(t);
        if t != s {
            disagreements.push(format!("{name}: theorem={t} spectral={s}"));
        }
    }
    // Z2 is left out of the corpus: it has no inverse-closed 3-subset, so it is
    // not in A3 by definition, while clause (ii) holds for it vacuously.
    let z2 = cyclic(2).unwrap();
    let z2_note = format!(
        "Z2 excluded (theorem={} spectral={}: no 3-valent Cayley graph exists)",
        in_a3_theorem(&z2).member,
        in_a3_spectral(&z2).unwrap().member
    );
    outcome(
        disagreements.is_empty() && corpus.len() >= 25,
        format!(
            "groups={} members={members} disagreements={} {}; {z2_note}",
            corpus.len(),
            disagreements.len(),
            disagreements.join(", ")
        ),
    )
}

fn criterion_9() -> Outcome {
    let v = elem_abelian(2, 2).unwrap();
    let a = integral_spectrum_3valent(&v, &ConnectionSet::new(&v, [1, 2, 3]).unwrap()).unwrap();
    let d6 = dihedral(3).unwrap();
    let refl: Vec<usize> = d6.involutions();
    let b = integral_spectrum_3valent(&d6, &ConnectionSet::new(&d6, [refl[0], refl[1], refl[2]]).unwrap()).unwrap();
    let z8 = cyclic(8).unwrap();
    let c = integral_spectrum_3valent(&z8, &ConnectionSet::new(&z8, [1, 7, 4]).unwrap()).unwrap();
    let ok_a = a.integral && a.multiplicity(3) == 1 && a.multiplicity(-1) == 3;
    let ok_b = b.integral && b.multiplicity(3) == 1 && b.multiplicity(0) == 4 && b.multiplicity(-3) == 1;
    let ok_c = !c.integral;
    outcome(ok_a && ok_b && ok_c, format!("{a}; {b}; {c}"))
}

fn criterion_10(corpus: &[(String, FiniteGroup)]) -> Outcome {
    let small = small_groups();
    let mut disagreements = Vec::new();
    let mut checked = 0;
    let mut agree = |h: &FiniteGroup, label: &str, disagreements: &mut Vec<String>| {
        checked += 1;
        let class = identify_allowed(&h.whole());
        for c in ALLOWED {
            let canon = canonical_group(c).unwrap();
            let iso = isomorphic_bruteforce(h, &canon).unwrap();
            if iso != (class == c) {
                disagreements.push(format!("{label}: tagged {class}, bruteforce iso to {c} = {iso}"));
            }
        }
    };
    for (name, g) in &small {
        agree(g, name, &mut disagreements);
    }
    let mut seen: HashSet<(usize, Vec<usize>)> = HashSet::new();
    for (i, (name, g)) in corpus.iter().enumerate() {
        for x in g.involutions() {
            for y in 0..g.order() {
                // anything above order 12 is neither allowed nor D6; bruteforce would agree on order alone
                let Closure::Within(h) = g.closure_capped(&[x, y], Some(64)) else { continue };
                if seen.insert((i, h.members().to_vec())) {
                    agree(&h.to_group(), &format!("{name}<{x},{y}>"), &mut disagreements);
                }
            }
        }
    }
    let counts: Vec<usize> = [2, 4, 6, 8, 12].iter().map(|&o| small.iter().filter(|(_, g)| g.order() == o).count()).collect();
    outcome(
        disagreements.is_empty() && counts == [1, 2, 2, 5, 5],
        format!("groups checked={checked} small-group counts={counts:?} disagreements={} {}", disagreements.len(), disagreements.join(", ")),
    )
}

/// Every group of order 2, 4, 6, 8 and 12 up to isomorphism.
fn small_groups() -> Vec<(String, FiniteGroup)> {
    let c = |n| cyclic(n).unwrap();
    let dp = |a: &FiniteGroup, b: &FiniteGroup| direct_product(a, b).unwrap();
    let z3 = c(3);
    let dic3 = semidirect_product(&z3, &AutomorphismMap::inversion(&z3).unwrap(), 4).unwrap();
    vec![
        ("Z2".into(), c(2)),
        ("Z4".into(), c(4)),
        ("Z2^2".into(), elem_abelian(2, 2).unwrap()),
        ("Z6".into(), c(6)),
        ("D6".into(), dihedral(3).unwrap()),
        ("Z8".into(), c(8)),
        ("Z2xZ4".into(), dp(&c(2), &c(4))),
        ("Z2^3".into(), elem_abelian(2, 3).unwrap()),
        ("D8".into(), dihedral(4).unwrap()),
        ("Q8".into(), builtin("Q8").unwrap()),
        ("Z12".into(), c(12)),
        ("Z2xZ6".into(), dp(&c(2), &c(6))),
        ("A4".into(), builtin("A4").unwrap()),
        ("D12".into(), dihedral(6).unwrap()),
        ("Dic3".into(), dic3),
    ]
}

fn check_fpf(phi: &AutomorphismMap, violations: &mut Vec<String>, label: &str) {
    let g = phi.group();
    match phi.order() {
        3 => {
            for x in 0..g.order() {
                let (a, b) = (phi.apply(x), phi.apply(phi.apply(x)));
                if g.mul(g.mul(x, a), b) != 0 || !g.commutes(x, a) {
                    violations.push(format!("{label}: x={x}"));
                    return;
                }
            }
        }
        2 => {
            if let Some(x) = (0..g.order()).find(|&x| phi.apply(x) != g.inv(x)) {
                violations.push(format!("{label}: order-2 fpf does not invert x={x}"));
            }
        }
        _ => {}
    }
}

fn criterion_11() -> Outcome {
    let mut violations = Vec::new();
    let mut count = 0;
    let mut certified: Vec<(String, AutomorphismMap)> = Vec::new();
    let h64 = builtin("H64").unwrap();
    certified.push(("H64 search".into(), find_order3_fpf(&h64).unwrap().unwrap()));
    for name in ["K256", "K1024"] {
        certified.push((format!("{name} remark"), remark_action(name).unwrap().1));
    }
    for (name, g) in [("Z2^2", elem_abelian(2, 2).unwrap()), ("Z2^4", elem_abelian(2, 4).unwrap()), ("Z4^2", direct_product(&cyclic(4).unwrap(), &cyclic(4).unwrap()).unwrap())] {
        for phi in all_order3_fpf(&g, 10_000_000).unwrap() {
            certified.push((format!("{name} all_order3_fpf"), phi));
        }
    }
    // fixed-point-free members of full automorphism groups, orders 2 and 3
    let mut groups: Vec<(String, FiniteGroup)> = (3..=12).map(|n| (format!("Z{n}"), cyclic(n).unwrap())).collect();
    groups.push(("Z3^2".into(), elem_abelian(3, 2).unwrap()));
    groups.push(("Z2^3".into(), elem_abelian(2, 3).unwrap()));
    groups.push(("Q8".into(), builtin("Q8").unwrap()));
    groups.push(("H16".into(), builtin("H16").unwrap()));
    groups.push(("Heis27".into(), builtin("Heis27").unwrap()));
    for (name, g) in groups {
        for phi in automorphism_group(&g, AutSearch::default()).unwrap() {
            if matches!(phi.order(), 2 | 3) && phi.is_fixed_point_free() {
                certified.push((format!("{name} Aut"), phi));
            }
        }
    }
    for (label, phi) in &certified {
        if !phi.is_fixed_point_free() && phi.order() != 1 {
            violations.push(format!("{label}: not fixed-point-free"));
            continue;
        }
        count += 1;
        check_fpf(phi, &mut violations, label);
    }
    outcome(violations.is_empty() && count > 0, format!("fpf automorphisms checked={count} violations={} {}", violations.len(), violations.join(", ")))
}

fn main() -> ExitCode {
    if std::env::args().any(|a| a == "--list") {
        // cargo test --list support: one pseudo-test
        println!("acceptance: test");
        return ExitCode::SUCCESS;
    }
    let corpus = corpus();
    let runs: Vec<(u32, Duration, Criterion<'_>)> = vec![
        (1, secs(20), Box::new(criterion_1)),
        (2, secs(60), Box::new(criterion_2)),
        (3, secs(240), Box::new(criterion_3)),
        (4, secs(300), Box::new(criterion_4)),
        (5, secs(300), Box::new(criterion_5)),
        (6, secs(120), Box::new(criterion_6)),
        (7, secs(60), Box::new(criterion_7)),
        (8, secs(600), Box::new(|| criterion_8(&corpus))),
        (9, secs(3), Box::new(criterion_9)),
        (10, secs(600), Box::new(|| criterion_10(&corpus))),
        (11, secs(600), Box::new(criterion_11)),
    ];
    let mut failed = 0;
    for (k, limit, f) in runs {
        let (o, el) = timed(limit, f);
        failed += usize::from(!o.pass);
        println!("criterion {k:>2} {} [{el:.2?}] {}", if o.pass { "PASS" } else { "FAIL" }, o.detail);
    }
    println!("acceptance: {} passed, {failed} failed", 11 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
