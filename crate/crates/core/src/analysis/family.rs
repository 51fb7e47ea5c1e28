//! Clause-by-clause verification of the four family descriptions.

use std::fmt;

use crate::constructors::family_a;
use crate::group::{FiniteGroup, NilpotencyClass, Subgroup};
use crate::morphisms::{IsoClass, SL23_FINGERPRINT};

use super::{AnalysisError, Check, Report, Status};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FamilySpec {
    /// `Dic(Z3^m × Z2) × Z2^n`.
    A { m: usize, n: usize },
    /// `(U × V) ⋊ ⟨z⟩` with `V` a product of `A4`-blocks.
    B,
    /// Frobenius group with a 2-group kernel and complement of order 3.
    C,
    /// `(U ⋊ ⟨z⟩) × V` with `U` special.
    D,
}

impl FamilySpec {
    /// `tag` is one of `a`, `b`, `c`, `d`; family (a) reads `m, n` from `params`.
    pub fn parse(tag: &str, params: &[usize]) -> Result<Self, AnalysisError> {
        match tag.trim() {
            "a" => match params {
                [m, n] => Ok(FamilySpec::A { m: *m, n: *n }),
                _ => Err(AnalysisError::UnknownTag(format!("{tag} needs parameters m,n"))),
            },
            "b" => Ok(FamilySpec::B),
            "c" => Ok(FamilySpec::C),
            "d" => Ok(FamilySpec::D),
            other => Err(AnalysisError::UnknownTag(other.to_string())),
        }
    }

    pub fn tag(&self) -> char {
        match self {
            FamilySpec::A { .. } => 'a',
            FamilySpec::B => 'b',
            FamilySpec::C => 'c',
            FamilySpec::D => 'd',
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyCert {
    pub spec: FamilySpec,
    pub report: Report,
}

impl FamilyCert {
    pub fn accepted(&self) -> bool {
        self.report.all_passed()
    }
}

impl fmt::Display for FamilyCert {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "family {}", self.spec.tag())?;
        write!(f, "{}", self.report)
    }
}

pub fn verify_family(g: &FiniteGroup, spec: FamilySpec) -> FamilyCert {
    let report = match spec {
        FamilySpec::A { m, n } => verify_a(g, m, n),
        FamilySpec::B => verify_b(g),
        FamilySpec::C => verify_c(g),
        FamilySpec::D => verify_d(g),
    };
    FamilyCert { spec, report }
}

fn verify_a(g: &FiniteGroup, m: usize, n: usize) -> Report {
    let mut r = Report::default();
    let model = match family_a(m, n) {
        Ok(model) => model,
        Err(e) => {
            r.push(Check::new("model", false, e.to_string()));
            return r;
        }
    };
    r.push(Check::new("order", g.order() == model.order(), format!("order={} expected={}", g.order(), model.order())));
    r.push(Check::new("fingerprint", g.fingerprint() == model.fingerprint(), g.fingerprint().to_string()));
    let g3 = g.sylow(3);
    let rank_ok = g3.is_elementary_abelian() && g3.len() == 3usize.pow(m as u32);
    r.push(Check::new("sylow3-elementary", rank_ok, format!("|G3|={}", g3.len())));
    let g2 = g.sylow(2);
    let g2g = g2.to_group();
    // Z4 × Z2^n: one cyclic factor of order 4
    let z4 = g2.is_abelian() && g2.exponent() == 4 && g2g.omega1().len() == 1 << (n + 1);
    r.push(Check::new("sylow2-z4-times-elementary", z4, format!("|G2|={} exponent={}", g2.len(), g2.exponent())));
    r
}

/// Smallest element of order 3 outside `inside`.
fn order3_outside(g: &FiniteGroup, inside: &Subgroup) -> Option<usize> {
    (0..g.order()).find(|&x| g.elem_order(x) == 3 && !inside.contains(x))
}

fn act(g: &FiniteGroup, x: usize, z: usize) -> usize {
    g.conj(x, z)
}

fn verify_b(g: &FiniteGroup) -> Report {
    let mut r = Report::default();
    let v = g.o_p(2);
    let v_elem = v.is_elementary_abelian() && v.len().trailing_zeros().is_multiple_of(2) && v.len() > 1;
    r.push(Check::new("v-elementary-abelian", v_elem, format!("|V|={}", v.len())));
    let g3 = g.sylow(3);
    r.push(Check::new("sylow3-exponent-3", g3.exponent() == 3, format!("exponent={}", g3.exponent())));
    r.push(Check::new(
        "g-equals-v-g3",
        v.len() * g3.len() == g.order(),
        format!("|V|={} |G3|={} |G|={}", v.len(), g3.len(), g.order()),
    ));
    let cu = g.centralizer(v.members());
    let u = cu.intersect(&g3);
    r.push(Check::new("u-index-3", u.len() * 3 == g3.len(), format!("|U|={}", u.len())));
    let Some(z) = g3.members().iter().copied().find(|&x| g.elem_order(x) == 3 && !u.contains(x)) else {
        r.push(Check::new("z-fpf-on-v", false, "no element of G3 acts non-trivially on V"));
        return r;
    };
    let fixed: Vec<usize> = v.members().iter().copied().filter(|&x| x != 0 && act(g, x, z) == x).collect();
    r.push(Check::new("z-fpf-on-v", fixed.is_empty(), format!("z={z} fixed={fixed:?}")));
    if !fixed.is_empty() || !v_elem {
        return r;
    }
    // V splits into the blocks ⟨v, v^z⟩
    let a4 = IsoClass::A4.fingerprint().expect("A4 fingerprint");
    let mut span = g.trivial();
    let mut blocks = 0;
    let mut all_a4 = true;
    for &x in v.members() {
        if span.contains(x) {
            continue;
        }
        let block = g.closure(&[x, act(g, x, z)]);
        let with_z = g.closure(&[x, act(g, x, z), z]);
        all_a4 &= block.len() == 4 && block.intersect(&span).is_trivial() && &with_z.fingerprint() == a4;
        span = span.join(&block);
        blocks += 1;
    }
    r.push(Check::new("a4-blocks", all_a4 && span == v, format!("blocks={blocks}")));
    r
}

fn verify_c(g: &FiniteGroup) -> Report {
    let mut r = Report::default();
    let k = g.o_p(2);
    r.push(Check::new("kernel-index-3", k.len() * 3 == g.order(), format!("|K|={}", k.len())));
    let kg = k.to_group();
    r.push(Check::new("kernel-exponent-4", k.exponent() == 4, format!("exponent={}", k.exponent())));
    let class = kg.nilpotency_class();
    r.push(Check::new(
        "kernel-class-le-2",
        matches!(class, NilpotencyClass::Class(c) if c <= 2),
        format!("class={class:?}"),
    ));
    let om = kg.omega1();
    let zk = kg.center();
    r.push(Check::new(
        "kernel-omega1-central",
        om.is_subset_of(&zk),
        format!("|Omega1(K)|={} |Z(K)|={}", om.len(), zk.len()),
    ));
    match order3_outside(g, &k) {
        Some(z) => {
            let ck = g.centralizer(&[z]).intersect(&k);
            r.push(Check::new("complement-order-3", g.elem_order(z) == 3, format!("z={z}")));
            r.push(Check::new("frobenius", ck.is_trivial(), format!("|C_K(z)|={}", ck.len())));
        }
        None => r.push(Check::new("complement-order-3", false, "no element of order 3")),
    }
    r
}

fn verify_d(g: &FiniteGroup) -> Report {
    let mut r = Report::default();
    let p = g.o_p(2);
    let Some(z) = order3_outside(g, &p) else {
        r.push(Check::new("z-order-3", false, "no element of order 3"));
        return r;
    };
    r.push(Check::new("p-index-3", p.len() * 3 == g.order(), format!("|O2(G)|={}", p.len())));
    let comms: Vec<usize> = p.members().iter().map(|&x| g.comm(x, z)).collect();
    let u = g.closure(&comms);
    let ug = u.to_group();
    let special = ug.is_special_2group().map(|s| s.special).unwrap_or(false);
    r.push(Check::new("u-special-nonabelian", special && !u.is_abelian(), format!("|U|={}", u.len())));
    let zu = u.lift(&ug.center());
    let om = u.lift(&ug.omega1());
    let cuz = g.centralizer(&[z]).intersect(&u);
    r.push(Check::new(
        "cu-z-omega1-center",
        cuz == om && om == zu,
        format!("|C_U(z)|={} |Omega1(U)|={} |Z(U)|={}", cuz.len(), om.len(), zu.len()),
    ));

    // central elementary abelian V with P = U × V
    let zp = g.center().intersect(&p);
    let mut v = g.trivial();
    for &x in zp.members() {
        if g.elem_order(x) == 2 && !v.join(&zu).contains(x) {
            v = v.join(&g.closure(&[x]));
        }
    }
    let direct = u.intersect(&v).is_trivial() && u.len() * v.len() == p.len() && v.is_elementary_abelian();
    r.push(Check::new("p-equals-u-times-v", direct, format!("|V|={}", v.len())));

    // greedy search for z-invariant quaternion subgroups covering U modulo Z(U)
    let q8 = IsoClass::Q8.fingerprint().expect("Q8 fingerprint");
    let mut blocks: Vec<Subgroup> = Vec::new();
    let mut product = zu.clone();
    for &x in u.members() {
        if product == u {
            break;
        }
        if g.elem_order(x) != 4 || product.contains(x) {
            continue;
        }
        let ui = g.closure(&[x, act(g, x, z)]);
        if &ui.fingerprint() != q8 || !ui.contains(act(g, act(g, x, z), z)) {
            continue;
        }
        let zui = zu.join(&ui);
        let normal = u.members().iter().all(|&t| zui.members().iter().all(|&a| zui.contains(g.conj(a, t))));
        if !normal || blocks.iter().any(|b| b.intersect(&ui).len() > 2) {
            continue;
        }
        product = product.join(&ui);
        blocks.push(ui);
    }
    let covered = product == u;
    r.push(Check {
        name: "q8-blocks".into(),
        status: if covered { Status::Pass } else { Status::NoWitness },
        detail: if covered { format!("blocks={}", blocks.len()) } else { "no witness found".into() },
    });
    if covered {
        let sl23 = blocks.iter().all(|b| {
            let mut seed = b.members().to_vec();
            seed.push(z);
            g.closure(&seed).fingerprint() == *SL23_FINGERPRINT
        });
        r.push(Check::new("blocks-with-z-sl23", sl23, ""));
        let pairwise = blocks
            .iter()
            .enumerate()
            .all(|(i, a)| blocks[i + 1..].iter().all(|b| a.intersect(b).len() <= 2));
        r.push(Check::new("blocks-pairwise-intersection", pairwise, ""));
    }
    r
}
