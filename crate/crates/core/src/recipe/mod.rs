//! The group-recipe language.
//!
//! ```text
//! recipe := atom ( "x" atom )*
//! atom   := base [ "^" INT ]
//! base   := "cyclic(" INT ")" | "dihedral(" INT ")" | "ea(" INT "," INT ")"
//!         | "dic(" recipe ")" | "sdp(" recipe "," autref "," INT ")"
//!         | "builtin(" NAME ")" | "perm(" cycles ")" | "su3(" INT ")"
//!         | "u(" INT ")" | "famA(" INT "," INT ")" | "famB(" recipe "," INT ")"
//!         | "famC(" NAME ")" | "famD(" NAME "," INT ")" | "(" recipe ")"
//! autref := "id" | "inv" | "fpf3" | "{" INT* "->" INT* "}"
//! cycles := perm_gen ( ";" perm_gen )*
//! perm_gen := ( "(" [ INT ( "," INT )* ] ")" )+
//! NAME   := [A-Za-z0-9_*]+ [ "(" INT ")" ]
//! ```
//!
//! Whitespace is ignored between tokens. `x` is left-associative and `g^k`
//! is the `k`-fold direct power `((g × g) × g) × …`. Permutation points are
//! 1-based and the cycles of one generator compose left to right. In
//! `{i.. -> j..}` the left list names elements of the kernel that generate it
//! and the right list their images.

mod eval;
mod parse;

use std::fmt;

pub use eval::{eval_recipe, RecipeError};
pub use parse::{parse_recipe, ParseError};

/// Parses and evaluates in one step.
pub fn build(text: &str) -> Result<crate::group::FiniteGroup, RecipeError> {
    let ast = parse_recipe(text)?;
    eval_recipe(&ast)
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum AutRef {
    Identity,
    Inversion,
    /// The first order-3 fixed-point-free automorphism found by search.
    Fpf3,
    Images { gens: Vec<usize>, images: Vec<usize> },
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Recipe {
    Product(Box<Recipe>, Box<Recipe>),
    Power(Box<Recipe>, usize),
    Cyclic(usize),
    Dihedral(usize),
    ElemAbelian(usize, usize),
    Dicyclic(Box<Recipe>),
    Semidirect(Box<Recipe>, AutRef, usize),
    Builtin(String),
    /// Generators, each a list of cycles over 1-based points.
    Perm(Vec<Vec<Vec<usize>>>),
    Su3(usize),
    U(usize),
    FamA(usize, usize),
    FamB(Box<Recipe>, usize),
    FamC(String),
    FamD(String, usize),
}

impl Recipe {
    /// Canonical text, the form stored in group metadata.
    pub fn canonical(&self) -> String {
        self.to_string()
    }

    fn head(&self) -> &'static str {
        match self {
            Recipe::Product(..) => "x",
            Recipe::Power(..) => "^",
            Recipe::Cyclic(_) => "cyclic",
            Recipe::Dihedral(_) => "dihedral",
            Recipe::ElemAbelian(..) => "ea",
            Recipe::Dicyclic(_) => "dic",
            Recipe::Semidirect(..) => "sdp",
            Recipe::Builtin(_) => "builtin",
            Recipe::Perm(_) => "perm",
            Recipe::Su3(_) => "su3",
            Recipe::U(_) => "u",
            Recipe::FamA(..) => "famA",
            Recipe::FamB(..) => "famB",
            Recipe::FamC(_) => "famC",
            Recipe::FamD(..) => "famD",
        }
    }
}

impl fmt::Display for AutRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AutRef::Identity => f.write_str("id"),
            AutRef::Inversion => f.write_str("inv"),
            AutRef::Fpf3 => f.write_str("fpf3"),
            AutRef::Images { gens, images } => {
                let join = |v: &[usize]| v.iter().map(usize::to_string).collect::<Vec<_>>().join(" ");
                let (l, r) = (join(gens), join(images));
                let l = if l.is_empty() { l } else { l + " " };
                let r = if r.is_empty() { r } else { format!(" {r}") };
                write!(f, "{{{l}->{r}}}")
            }
        }
    }
}

impl fmt::Display for Recipe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Recipe::Product(a, b) => {
                write!(f, "{a} x ")?;
                if matches!(**b, Recipe::Product(..)) {
                    write!(f, "({b})")
                } else {
                    write!(f, "{b}")
                }
            }
            Recipe::Power(b, k) => {
                if matches!(**b, Recipe::Product(..) | Recipe::Power(..)) {
                    write!(f, "({b})^{k}")
                } else {
                    write!(f, "{b}^{k}")
                }
            }
            Recipe::Cyclic(n) => write!(f, "cyclic({n})"),
            Recipe::Dihedral(n) => write!(f, "dihedral({n})"),
            Recipe::ElemAbelian(p, k) => write!(f, "ea({p},{k})"),
            Recipe::Dicyclic(a) => write!(f, "dic({a})"),
            Recipe::Semidirect(k, a, m) => write!(f, "sdp({k},{a},{m})"),
            Recipe::Builtin(name) => write!(f, "builtin({name})"),
            Recipe::Perm(gens) => {
                f.write_str("perm(")?;
                for (i, g) in gens.iter().enumerate() {
                    if i > 0 {
                        f.write_str(";")?;
                    }
                    for c in g {
                        let pts: Vec<String> = c.iter().map(usize::to_string).collect();
                        write!(f, "({})", pts.join(","))?;
                    }
                }
                f.write_str(")")
            }
            Recipe::Su3(n) => write!(f, "su3({n})"),
            Recipe::U(n) => write!(f, "u({n})"),
            Recipe::FamA(m, n) => write!(f, "famA({m},{n})"),
            Recipe::FamB(u, n) => write!(f, "famB({u},{n})"),
            Recipe::FamC(name) => write!(f, "famC({name})"),
            Recipe::FamD(name, m) => write!(f, "famD({name},{m})"),
        }
    }
}
