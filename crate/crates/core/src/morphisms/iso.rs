//! Fingerprint identification against a short list of target groups.
//!
//! For the groups named here the triple (order, commutativity, element-order
//! census) is a complete invariant among groups of the same order; the tests
//! check this against brute-force isomorphism on every group of orders 2, 4,
//! 6, 8 and 12.

use std::fmt;
use std::sync::LazyLock;

use crate::constructors::{builtin, cyclic, dihedral, direct_product, elem_abelian};
use crate::group::{FiniteGroup, Fingerprint, Subgroup};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum IsoClass {
    Z2,
    Z2xZ2,
    Z4,
    Z6,
    Z2xZ4,
    Z2xZ6,
    A4,
    D6,
    Q8,
    H16,
    H32,
    Other,
}

/// The subgroup types permitted by property (P).
pub const ALLOWED: [IsoClass; 7] =
    [IsoClass::Z2, IsoClass::Z2xZ2, IsoClass::Z4, IsoClass::Z6, IsoClass::Z2xZ4, IsoClass::Z2xZ6, IsoClass::A4];

pub static SL23_FINGERPRINT: LazyLock<Fingerprint> =
    LazyLock::new(|| Fingerprint::new(24, false, &[(1, 1), (2, 1), (3, 8), (4, 6), (6, 8)]));

pub static Z4_SQUARED_FINGERPRINT: LazyLock<Fingerprint> =
    LazyLock::new(|| Fingerprint::new(16, true, &[(1, 1), (2, 3), (4, 12)]));

static TABLE: LazyLock<Vec<(IsoClass, Fingerprint)>> = LazyLock::new(|| {
    use IsoClass::*;
    vec![
        (Z2, Fingerprint::new(2, true, &[(1, 1), (2, 1)])),
        (Z2xZ2, Fingerprint::new(4, true, &[(1, 1), (2, 3)])),
        (Z4, Fingerprint::new(4, true, &[(1, 1), (2, 1), (4, 2)])),
        (Z6, Fingerprint::new(6, true, &[(1, 1), (2, 1), (3, 2), (6, 2)])),
        (Z2xZ4, Fingerprint::new(8, true, &[(1, 1), (2, 3), (4, 4)])),
        (Z2xZ6, Fingerprint::new(12, true, &[(1, 1), (2, 3), (3, 2), (6, 6)])),
        (A4, Fingerprint::new(12, false, &[(1, 1), (2, 3), (3, 8)])),
        (D6, Fingerprint::new(6, false, &[(1, 1), (2, 3), (3, 2)])),
        (Q8, Fingerprint::new(8, false, &[(1, 1), (2, 1), (4, 6)])),
        (H16, Fingerprint::new(16, false, &[(1, 1), (2, 3), (4, 12)])),
        (H32, Fingerprint::new(32, false, &[(1, 1), (2, 7), (4, 24)])),
    ]
});

impl IsoClass {
    pub fn fingerprint(self) -> Option<&'static Fingerprint> {
        TABLE.iter().find(|(c, _)| *c == self).map(|(_, f)| f)
    }

    pub fn is_allowed(self) -> bool {
        ALLOWED.contains(&self)
    }

    pub fn name(self) -> &'static str {
        match self {
            IsoClass::Z2 => "Z2",
            IsoClass::Z2xZ2 => "Z2xZ2",
            IsoClass::Z4 => "Z4",
            IsoClass::Z6 => "Z6",
            IsoClass::Z2xZ4 => "Z2xZ4",
            IsoClass::Z2xZ6 => "Z2xZ6",
            IsoClass::A4 => "A4",
            IsoClass::D6 => "D6",
            IsoClass::Q8 => "Q8",
            IsoClass::H16 => "H16",
            IsoClass::H32 => "H32",
            IsoClass::Other => "OTHER",
        }
    }
}

impl fmt::Display for IsoClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A concrete representative of each named class; `None` for `Other`.
pub fn canonical_group(class: IsoClass) -> Option<FiniteGroup> {
    let g = match class {
        IsoClass::Z2 => cyclic(2),
        IsoClass::Z2xZ2 => elem_abelian(2, 2),
        IsoClass::Z4 => cyclic(4),
        IsoClass::Z6 => cyclic(6),
        IsoClass::Z2xZ4 => direct_product(&cyclic(2).ok()?, &cyclic(4).ok()?),
        IsoClass::Z2xZ6 => direct_product(&cyclic(2).ok()?, &cyclic(6).ok()?),
        IsoClass::A4 => builtin("A4"),
        IsoClass::D6 => dihedral(3),
        IsoClass::Q8 => builtin("Q8"),
        IsoClass::H16 => builtin("H16"),
        IsoClass::H32 => builtin("H32"),
        IsoClass::Other => return None,
    };
    g.ok()
}

fn lookup(fp: &Fingerprint, classes: &[IsoClass]) -> IsoClass {
    TABLE
        .iter()
        .find(|(c, f)| classes.contains(c) && f == fp)
        .map(|(c, _)| *c)
        .unwrap_or(IsoClass::Other)
}

/// Matches against the (P) list plus `D6`.
pub fn identify_fingerprint(fp: &Fingerprint) -> IsoClass {
    use IsoClass::*;
    lookup(fp, &[Z2, Z2xZ2, Z4, Z6, Z2xZ4, Z2xZ6, A4, D6])
}

pub fn identify_allowed(h: &Subgroup) -> IsoClass {
    identify_fingerprint(&h.fingerprint())
}

/// Tags a minimal non-abelian subgroup as `Q8`, `H16`, `H32` or `Other`.
pub fn identify_minimal_nonabelian(fp: &Fingerprint) -> IsoClass {
    lookup(fp, &[IsoClass::Q8, IsoClass::H16, IsoClass::H32])
}
