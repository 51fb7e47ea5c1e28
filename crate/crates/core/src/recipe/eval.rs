use thiserror::Error;

use crate::constructors::{
    builtin, cyclic, dicyclic, dihedral, direct_power, direct_product, elem_abelian, family_a, family_b, family_c,
    family_d, perm_group, semidirect_product, su3_sylow2, u_group, BuildError, CoreName, KernelName,
};
use crate::group::FiniteGroup;
use crate::morphisms::{automorphism_from_images, find_order3_fpf, AutomorphismMap, MorphError};

use super::{AutRef, ParseError, Recipe};

#[derive(Debug, Error)]
pub enum RecipeError {
    #[error("parse error at {0}")]
    Parse(#[from] ParseError),
    #[error("{path}: {source}")]
    Build { path: String, source: BuildError },
    #[error("{path}: {source}")]
    Automorphism { path: String, source: MorphError },
    #[error("{path}: {msg}")]
    Invalid { path: String, msg: String },
}

struct Ctx {
    path: Vec<String>,
}

impl Ctx {
    fn here(&self) -> String {
        self.path.join(" > ")
    }

    fn build<T>(&self, r: Result<T, BuildError>) -> Result<T, RecipeError> {
        r.map_err(|source| RecipeError::Build { path: self.here(), source })
    }

    fn morph<T>(&self, r: Result<T, MorphError>) -> Result<T, RecipeError> {
        r.map_err(|source| RecipeError::Automorphism { path: self.here(), source })
    }

    fn invalid(&self, msg: impl Into<String>) -> RecipeError {
        RecipeError::Invalid { path: self.here(), msg: msg.into() }
    }
}

/// Evaluates a recipe. The result carries its canonical recipe text as the
/// `recipe` metadata entry.
pub fn eval_recipe(ast: &Recipe) -> Result<FiniteGroup, RecipeError> {
    let mut ctx = Ctx { path: Vec::new() };
    Ok(eval(ast, &mut ctx)?.with_meta("recipe", &ast.canonical()))
}

fn eval(r: &Recipe, ctx: &mut Ctx) -> Result<FiniteGroup, RecipeError> {
    let label = match r {
        Recipe::Product(..) | Recipe::Power(..) | Recipe::Dicyclic(_) | Recipe::Semidirect(..) | Recipe::FamB(..) => {
            r.head().to_string()
        }
        leaf => leaf.canonical(),
    };
    ctx.path.push(label);
    let out = eval_node(r, ctx)?;
    ctx.path.pop();
    Ok(out)
}

fn eval_node(r: &Recipe, ctx: &mut Ctx) -> Result<FiniteGroup, RecipeError> {
    Ok(match r {
        Recipe::Product(a, b) => {
            let (a, b) = (eval(a, ctx)?, eval(b, ctx)?);
            ctx.build(direct_product(&a, &b))?
        }
        Recipe::Power(b, k) => {
            if *k == 0 {
                return Err(ctx.invalid("direct power needs k >= 1"));
            }
            let b = eval(b, ctx)?;
            ctx.build(direct_power(&b, *k))?
        }
        Recipe::Cyclic(n) => ctx.build(cyclic(*n))?,
        Recipe::Dihedral(n) => ctx.build(dihedral(*n))?,
        Recipe::ElemAbelian(p, k) => ctx.build(elem_abelian(*p, *k))?,
        Recipe::Dicyclic(a) => {
            let a = eval(a, ctx)?;
            ctx.build(dicyclic(&a))?
        }
        Recipe::Semidirect(k, aut, m) => {
            let k = eval(k, ctx)?;
            let alpha = resolve_aut(&k, aut, ctx)?;
            ctx.build(semidirect_product(&k, &alpha, *m))?
        }
        Recipe::Builtin(name) => ctx.build(builtin(name))?,
        Recipe::Perm(gens) => {
            let perms = gens.iter().map(|g| perm_images(g, ctx)).collect::<Result<Vec<_>, _>>()?;
            ctx.build(perm_group(&perms))?
        }
        Recipe::Su3(n) => ctx.build(su3_sylow2(*n))?.group,
        Recipe::U(n) => ctx.build(u_group(*n))?,
        Recipe::FamA(m, n) => ctx.build(family_a(*m, *n))?,
        Recipe::FamB(u, n) => {
            let u = eval(u, ctx)?;
            ctx.build(family_b(&u, None, *n))?
        }
        Recipe::FamC(name) => {
            let kernel: KernelName = name.parse().map_err(|_| ctx.invalid(format!("unknown kernel {name:?}")))?;
            ctx.build(family_c(kernel))?
        }
        Recipe::FamD(name, m) => {
            let core: CoreName = name.parse().map_err(|_| ctx.invalid(format!("unknown core {name:?}")))?;
            ctx.build(family_d(core, *m))?
        }
    })
}

fn resolve_aut(k: &FiniteGroup, aut: &AutRef, ctx: &Ctx) -> Result<AutomorphismMap, RecipeError> {
    match aut {
        AutRef::Identity => Ok(AutomorphismMap::identity(k)),
        AutRef::Inversion => ctx.morph(AutomorphismMap::inversion(k)),
        AutRef::Fpf3 => ctx
            .morph(find_order3_fpf(k))?
            .ok_or_else(|| ctx.invalid("no fixed-point-free automorphism of order 3 exists")),
        AutRef::Images { gens, images } => {
            if let Some(&bad) = gens.iter().chain(images).find(|&&x| x >= k.order()) {
                return Err(ctx.invalid(format!("element {bad} out of range for order {}", k.order())));
            }
            ctx.morph(automorphism_from_images(k, gens, images))
        }
    }
}

/// Image vector (0-based) of a product of cycles over 1-based points.
fn perm_images(cycles: &[Vec<usize>], ctx: &Ctx) -> Result<Vec<usize>, RecipeError> {
    let degree = cycles.iter().flatten().copied().max().unwrap_or(0);
    let mut img: Vec<usize> = (0..degree).collect();
    for c in cycles {
        if c.contains(&0) {
            return Err(ctx.invalid("permutation points are 1-based"));
        }
        let mut sorted = c.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != c.len() {
            return Err(ctx.invalid(format!("cycle {c:?} repeats a point")));
        }
        let mut step: Vec<usize> = (0..degree).collect();
        for (i, &x) in c.iter().enumerate() {
            step[x - 1] = c[(i + 1) % c.len()] - 1;
        }
        for v in img.iter_mut() {
            *v = step[*v];
        }
    }
    Ok(img)
}
