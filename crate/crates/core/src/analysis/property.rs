use std::collections::HashSet;
use std::fmt;

use rayon::prelude::*;

use crate::group::{Closure, FiniteGroup, Fingerprint, NilpotencyClass, Subgroup};
use crate::morphisms::{identify_allowed, IsoClass};

use super::{AnalysisError, Check, Report};

/// Closure cap for `⟨x, y⟩`. Every allowed group has order at most 12, so a
/// closure that outgrows the cap is already a failure witness.
pub const P_CLOSURE_CAP: usize = 13;

/// A pair `(x, y)` with `x` an involution and `⟨x, y⟩` not on the allowed list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PWitness {
    pub x: usize,
    pub y: usize,
    /// `Other` when the closure outgrew the cap.
    pub class: IsoClass,
    /// `None` when the closure outgrew the cap.
    pub fingerprint: Option<Fingerprint>,
}

impl fmt::Display for PWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x={} y={} <x,y>=", self.x, self.y)?;
        match &self.fingerprint {
            Some(fp) => write!(f, "{} {fp}", self.class),
            None => write!(f, "order>{}", P_CLOSURE_CAP - 1),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PropertyPReport {
    pub verdict: bool,
    pub even_order: bool,
    /// The lexicographically smallest failing pair.
    pub witness: Option<PWitness>,
    pub pairs_examined: usize,
    pub distinct_subgroups: usize,
}

impl fmt::Display for PropertyPReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "check property-p {}", if self.verdict { "pass" } else { "fail" })?;
        if let Some(w) = &self.witness {
            write!(f, " {w}")?;
        }
        write!(
            f,
            " even_order={} pairs={} subgroups={}",
            self.even_order, self.pairs_examined, self.distinct_subgroups
        )
    }
}

struct Scan {
    witness: Option<PWitness>,
    pairs: usize,
    seen: HashSet<Vec<usize>>,
}

fn scan_involution(g: &FiniteGroup, x: usize) -> Scan {
    let n = g.order();
    // y inside an allowed ⟨x, y'⟩ gives a subgroup of an allowed group that
    // contains x, and those are all allowed again
    let mut covered = vec![false; n];
    let mut scan = Scan { witness: None, pairs: 0, seen: HashSet::new() };
    for y in 0..n {
        if covered[y] {
            continue;
        }
        scan.pairs += 1;
        let h = match g.closure_capped(&[x, y], Some(P_CLOSURE_CAP)) {
            Closure::Within(h) => h,
            Closure::Exceeded => {
                scan.witness = Some(PWitness { x, y, class: IsoClass::Other, fingerprint: None });
                return scan;
            }
        };
        let class = identify_allowed(&h);
        if !class.is_allowed() {
            scan.witness = Some(PWitness { x, y, class, fingerprint: Some(h.fingerprint()) });
            scan.seen.insert(h.members().to_vec());
            return scan;
        }
        for &m in h.members() {
            covered[m] = true;
        }
        scan.seen.insert(h.members().to_vec());
    }
    scan
}

/// Property (P): for every involution `x` and every `y`, `⟨x, y⟩` is one of
/// `Z2, Z2², Z4, Z6, Z2×Z4, Z2×Z6, A4`.
///
/// Groups of odd order pass vacuously and are flagged by `even_order = false`.
pub fn has_property_p(g: &FiniteGroup) -> PropertyPReport {
    let invols = g.involutions();
    let scans: Vec<Scan> = invols.par_iter().map(|&x| scan_involution(g, x)).collect();
    let mut report = PropertyPReport {
        verdict: true,
        even_order: g.order().is_multiple_of(2),
        witness: None,
        pairs_examined: 0,
        distinct_subgroups: 0,
    };
    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    for scan in scans {
        report.pairs_examined += scan.pairs;
        seen.extend(scan.seen);
        if let Some(w) = scan.witness {
            report.verdict = false;
            report.witness = Some(w);
            break;
        }
    }
    report.distinct_subgroups = seen.len();
    report
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum A3Reason {
    /// `G ≅ D6`.
    ClauseI,
    /// Even order with property (P).
    ClauseII,
    OddOrder,
    PropertyFails(PWitness),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct A3Verdict {
    pub member: bool,
    pub reason: A3Reason,
}

impl fmt::Display for A3Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "a3-theorem member={} ", self.member)?;
        match &self.reason {
            A3Reason::ClauseI => write!(f, "reason=clause-i (D6)"),
            A3Reason::ClauseII => write!(f, "reason=clause-ii (even order, property P)"),
            A3Reason::OddOrder => write!(f, "reason=odd-order"),
            A3Reason::PropertyFails(w) => write!(f, "reason=property-p-fails {w}"),
        }
    }
}

/// Membership in A3 decided by the characterization: `G ≅ D6`, or `|G|` even
/// and `G` has property (P).
pub fn in_a3_theorem(g: &FiniteGroup) -> A3Verdict {
    if IsoClass::D6.fingerprint() == Some(&g.fingerprint()) {
        return A3Verdict { member: true, reason: A3Reason::ClauseI };
    }
    if g.order() % 2 == 1 {
        return A3Verdict { member: false, reason: A3Reason::OddOrder };
    }
    let p = has_property_p(g);
    match p.witness {
        None => A3Verdict { member: true, reason: A3Reason::ClauseII },
        Some(w) => A3Verdict { member: false, reason: A3Reason::PropertyFails(w) },
    }
}

fn center_of(h: &Subgroup) -> Subgroup {
    h.lift(&h.to_group().center())
}

fn omega1_of(h: &Subgroup) -> Subgroup {
    let g = h.parent();
    let invols: Vec<usize> = h.members().iter().copied().filter(|&x| g.elem_order(x) == 2).collect();
    g.closure(&invols)
}

/// The structural consequences of (P) on `G`, its Sylow 2-subgroup `G2` and
/// its Sylow 3-subgroup `G3`.
pub fn lemma_suite(g: &FiniteGroup) -> Result<Report, AnalysisError> {
    let p = has_property_p(g);
    if !p.verdict || !p.even_order {
        return Err(AnalysisError::PreconditionViolated(format!("group fails property (P): {p}")));
    }
    let mut r = Report::default();
    let bad: Vec<usize> = g.order_profile().keys().copied().filter(|o| ![1, 2, 3, 4, 6].contains(o)).collect();
    r.push(Check::new("element-orders", bad.is_empty(), format!("outside={{1,2,3,4,6}}:{bad:?}")));

    let invols = g.involutions();
    let commuting = invols.iter().all(|&a| invols.iter().all(|&b| g.commutes(a, b)));
    r.push(Check::new("involutions-commute", commuting, format!("involutions={}", invols.len())));

    let g2 = g.sylow(2);
    let g2_group = g2.to_group();
    let e2 = g2.exponent();
    r.push(Check::new("sylow2-exponent", e2 <= 4, format!("exponent={e2}")));

    let z2 = center_of(&g2);
    let om2 = omega1_of(&g2);
    r.push(Check::new(
        "sylow2-omega1-central",
        om2.is_subset_of(&z2),
        format!("|Omega1(G2)|={} |Z(G2)|={}", om2.len(), z2.len()),
    ));

    if g.order().is_multiple_of(3) {
        let e3 = g.sylow(3).exponent();
        r.push(Check::new("sylow3-exponent", e3 == 3, format!("exponent={e3}")));
    }

    let d2 = g2.lift(&g2_group.derived_subgroup());
    let f2 = g2.lift(&g2_group.frattini_pgroup().expect("Sylow subgroup has prime-power order"));
    let chain = d2.is_subset_of(&f2) && f2.is_subset_of(&om2) && om2.is_subset_of(&z2);
    r.push(Check::new(
        "sylow2-chain",
        chain,
        format!("|G2'|={} |Phi(G2)|={} |Omega1(G2)|={} |Z(G2)|={}", d2.len(), f2.len(), om2.len(), z2.len()),
    ));

    let om = g.omega1();
    r.push(Check::new(
        "omega1-equals-sylow2-omega1",
        om == om2 && om.is_elementary_abelian(),
        format!("|Omega1(G)|={}", om.len()),
    ));

    let class = g2_group.nilpotency_class();
    let ok = matches!(class, NilpotencyClass::Class(c) if c <= 2);
    r.push(Check::new("sylow2-class", ok, format!("class={class:?}")));
    Ok(r)
}
