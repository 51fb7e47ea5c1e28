use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use icayley::analysis::{
    has_property_p, in_a3_theorem, lemma_suite, minimal_nonabelian_subgroups, no_q8_check, AnalysisError,
};
use icayley::cache::{automorphism_cached, build_cached};
use icayley::catalog::{parse_catalog, run_catalog, CatalogOptions, DEFAULT_CATALOG};
use icayley::group::{FiniteGroup, NilpotencyClass, DEFAULT_SEED, MAX_ORDER};
use icayley::io::{read_aut1, read_cgt1_seeded, save_group, write_aut1};
use icayley::morphisms::{
    automorphism_group, find_order3_fpf_with_budget, verify_frobenius, AutSearch, AutomorphismMap, MorphError,
};
use icayley::spectra::{
    enumerate_3_subsets, in_a3_spectral_with_ceiling, integral_spectrum_with_ceiling, ConnectionSet, SpectraError,
    SPECTRAL_CEILING,
};

/// Exit codes: 0 all requested checks passed, 1 a check failed,
/// 2 bad input, 3 a size ceiling was hit.
const EXIT_FAIL: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_CEILING: u8 = 3;

const DEFAULT_FPF_BUDGET: usize = 50_000_000;

#[derive(Parser)]
#[command(name = "icayley", version, about = "Finite groups, property (P) and integral 3-valent Cayley graphs")]
struct Cli {
    /// Node budget for automorphism searches.
    #[arg(long, global = true)]
    cap: Option<usize>,
    /// Largest group order for spectral scans.
    #[arg(long, global = true, default_value_t = SPECTRAL_CEILING)]
    ceiling: usize,
    /// Worker threads (0 = one per core).
    #[arg(long, global = true, default_value_t = 0)]
    jobs: usize,
    /// Seed for sampled checks.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Lift the per-operation size ceilings up to the engine maximum.
    #[arg(long, global = true)]
    override_size: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Build a group from a recipe and optionally write it as cgt1.
    Build { recipe: String, out: Option<PathBuf> },
    /// Print structural invariants.
    Analyze { group: String },
    /// Run one of the decision procedures.
    Check {
        group: String,
        what: What,
        /// Automorphism for `frobenius`: an aut1 file or `gens: ... -> ...`.
        #[arg(long)]
        aut: Option<String>,
    },
    /// Order of the automorphism group.
    Aut { group: String },
    /// Search for an order-3 fixed-point-free automorphism.
    Fpf {
        group: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exact eigenvalue multiplicities of 3-valent Cayley graphs.
    Spectrum {
        group: String,
        /// Connection set `i,j,k`; all sets when omitted.
        set: Option<String>,
    },
    /// Verify every entry of a catalog (the built-in one by default).
    Catalog { path: Option<PathBuf> },
}

#[derive(Clone, Copy, ValueEnum)]
enum What {
    P,
    A3Theorem,
    A3Spectral,
    Both,
    Lemmas,
    Minnonab,
    Frobenius,
}

struct Fail(u8, String);

type Outcome = Result<bool, Fail>;

fn input<E: std::fmt::Display>(e: E) -> Fail {
    Fail(EXIT_INPUT, e.to_string())
}

fn spectra_err(e: SpectraError) -> Fail {
    match e {
        SpectraError::SizeCeiling { .. } => Fail(EXIT_CEILING, format!("{e} (use --ceiling or --override-size)")),
        other => input(other),
    }
}

fn analysis_err(e: AnalysisError) -> Fail {
    match e {
        AnalysisError::SizeCeiling { .. } => Fail(EXIT_CEILING, e.to_string()),
        other => Fail(EXIT_FAIL, other.to_string()),
    }
}

fn morph_err(e: MorphError) -> Fail {
    match e {
        MorphError::SizeCeiling { .. } => Fail(EXIT_CEILING, e.to_string()),
        other => Fail(EXIT_FAIL, other.to_string()),
    }
}

impl Cli {
    fn spectral_ceiling(&self) -> usize {
        if self.override_size {
            MAX_ORDER
        } else {
            self.ceiling
        }
    }

    /// A group argument is an inline recipe if it contains `(`, else a cgt1 path.
    fn load(&self, arg: &str) -> Result<FiniteGroup, Fail> {
        if arg.contains('(') {
            build_cached(arg).map_err(input)
        } else {
            let text = std::fs::read_to_string(arg).map_err(|e| input(format!("{arg}: {e}")))?;
            read_cgt1_seeded(&text, self.seed).map_err(|e| input(format!("{arg}: {e}")))
        }
    }

    fn find_fpf(&self, g: &FiniteGroup) -> Result<Option<AutomorphismMap>, Fail> {
        let budget = self.cap.unwrap_or(DEFAULT_FPF_BUDGET);
        automorphism_cached(g, "order3-fpf", || find_order3_fpf_with_budget(g, budget)).map_err(morph_err)
    }

    fn run(&self) -> Outcome {
        match &self.cmd {
            Cmd::Build { recipe, out } => {
                let g = build_cached(recipe).map_err(input)?;
                if let Some(path) = out {
                    save_group(&g, path).map_err(|e| input(format!("{}: {e}", path.display())))?;
                }
                println!(
                    "order={} exponent={} abelian={} involutions={} fingerprint={}",
                    g.order(),
                    g.exponent(),
                    g.is_abelian(),
                    g.involutions().len(),
                    g.fingerprint()
                );
                Ok(true)
            }
            Cmd::Analyze { group } => {
                let g = self.load(group)?;
                analyze(&g);
                Ok(true)
            }
            Cmd::Check { group, what, aut } => {
                let g = self.load(group)?;
                self.check(&g, *what, aut.as_deref())
            }
            Cmd::Aut { group } => {
                let g = self.load(group)?;
                let mut opts = AutSearch::default();
                if let Some(cap) = self.cap {
                    opts.budget = cap;
                }
                if self.override_size {
                    opts.max_order = MAX_ORDER;
                }
                let auts = automorphism_group(&g, opts).map_err(morph_err)?;
                let inner = (0..g.order()).map(|t| AutomorphismMap::inner(&g, t).perm().to_vec());
                let inner: std::collections::HashSet<Vec<u32>> = inner.collect();
                println!("aut order={} inner={}", auts.len(), inner.len());
                Ok(true)
            }
            Cmd::Fpf { group, out } => {
                let g = self.load(group)?;
                match self.find_fpf(&g)? {
                    Some(phi) => {
                        let gens = g.gens();
                        let images: Vec<String> = gens.iter().map(|&x| phi.apply(x).to_string()).collect();
                        let gens: Vec<String> = gens.iter().map(usize::to_string).collect();
                        println!("fpf found order={} gens: {} -> {}", phi.order(), gens.join(" "), images.join(" "));
                        if let Some(path) = out {
                            std::fs::write(path, write_aut1(&phi)).map_err(input)?;
                        }
                        Ok(true)
                    }
                    None => {
                        println!("fpf none: no order-3 fixed-point-free automorphism exists");
                        Ok(false)
                    }
                }
            }
            Cmd::Spectrum { group, set } => {
                let g = self.load(group)?;
                let sets = match set {
                    Some(text) => {
                        let e: Vec<usize> = text
                            .split(',')
                            .map(|t| t.trim().parse())
                            .collect::<Result<_, _>>()
                            .map_err(|_| input(format!("bad connection set {text:?}")))?;
                        let e: [usize; 3] = e.try_into().map_err(|_| input("a connection set has 3 elements"))?;
                        vec![ConnectionSet::new(&g, e).map_err(input)?]
                    }
                    None => enumerate_3_subsets(&g),
                };
                let mut all = true;
                for x in &sets {
                    let r = integral_spectrum_with_ceiling(&g, x, self.spectral_ceiling()).map_err(spectra_err)?;
                    all &= r.integral;
                    println!("{r}");
                }
                Ok(all)
            }
            Cmd::Catalog { path } => {
                let text = match path {
                    Some(p) => std::fs::read_to_string(p).map_err(|e| input(format!("{}: {e}", p.display())))?,
                    None => DEFAULT_CATALOG.to_string(),
                };
                let entries = parse_catalog(&text).map_err(input)?;
                let opts = CatalogOptions { jobs: self.jobs, spectral_ceiling: self.spectral_ceiling() };
                let outcomes = run_catalog(&entries, &opts);
                for o in &outcomes {
                    println!("{o}");
                }
                let failed = outcomes.iter().filter(|o| !o.passed()).count();
                println!("catalog entries={} passed={} failed={failed}", outcomes.len(), outcomes.len() - failed);
                Ok(failed == 0)
            }
        }
    }

    fn check(&self, g: &FiniteGroup, what: What, aut: Option<&str>) -> Outcome {
        match what {
            What::P => {
                let r = has_property_p(g);
                println!("{r}");
                Ok(r.verdict)
            }
            What::A3Theorem => {
                let v = in_a3_theorem(g);
                println!("{v}");
                Ok(v.member)
            }
            What::A3Spectral => {
                let v = in_a3_spectral_with_ceiling(g, self.spectral_ceiling()).map_err(spectra_err)?;
                println!("{v}");
                Ok(v.member)
            }
            What::Both => {
                let t = in_a3_theorem(g);
                let s = in_a3_spectral_with_ceiling(g, self.spectral_ceiling()).map_err(spectra_err)?;
                println!("{t}");
                println!("{s}");
                let agree = t.member == s.member;
                println!("agree={agree} member={}", t.member);
                Ok(agree)
            }
            What::Lemmas => {
                let r = lemma_suite(g).map_err(analysis_err)?;
                println!("{r}");
                Ok(r.all_passed())
            }
            What::Minnonab => {
                let found = minimal_nonabelian_subgroups(g).map_err(analysis_err)?;
                let mut tags: std::collections::BTreeMap<String, usize> = Default::default();
                for (h, tag) in &found {
                    println!("subgroup order={} tag={tag} gens={:?}", h.len(), h.generators());
                    *tags.entry(tag.to_string()).or_default() += 1;
                }
                let tags: Vec<String> = tags.iter().map(|(t, c)| format!("{t}:{c}")).collect();
                println!("minnonab count={} tags={} no-q8={}", found.len(), tags.join(","), no_q8_check(g));
                Ok(true)
            }
            What::Frobenius => {
                let phi = match aut {
                    Some(text) => {
                        let body = if text.trim_start().starts_with("gens:") {
                            text.to_string()
                        } else {
                            std::fs::read_to_string(text).map_err(|e| input(format!("{text}: {e}")))?
                        };
                        read_aut1(&body, g).map_err(input)?
                    }
                    None => match self.find_fpf(g)? {
                        Some(phi) => phi,
                        None => {
                            println!("check frobenius fail no order-3 fixed-point-free automorphism");
                            return Ok(false);
                        }
                    },
                };
                let r = verify_frobenius(g, &phi, 3);
                let status = if r.frobenius { "pass" } else { "fail" };
                println!(
                    "check frobenius {status} order={} order-divides-3={} offending={:?} extension-order={}",
                    phi.order(),
                    r.order_divides,
                    r.offending,
                    3 * g.order()
                );
                Ok(r.frobenius)
            }
        }
    }
}

fn analyze(g: &FiniteGroup) {
    println!("order {}", g.order());
    println!("exponent {}", g.exponent());
    println!("abelian {}", g.is_abelian());
    println!("center {}", g.center().len());
    println!("derived {}", g.derived_subgroup().len());
    match g.frattini_pgroup() {
        Ok(f) => println!("frattini {}", f.len()),
        Err(_) => println!("frattini n/a (not a p-group)"),
    }
    println!("omega1 {}", g.omega1().len());
    match g.nilpotency_class() {
        NilpotencyClass::Class(c) => println!("class {c}"),
        NilpotencyClass::NotNilpotent => println!("class not-nilpotent"),
    }
    match g.is_special_2group() {
        Ok(r) => println!("special {}", r.special),
        Err(_) => println!("special n/a (not a 2-group)"),
    }
    let profile: Vec<String> = g.order_profile().iter().map(|(o, c)| format!("{o}:{c}")).collect();
    println!("profile {}", profile.join(" "));
    if let Some(r) = g.recipe() {
        println!("recipe {r}");
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    if cli.jobs > 0 {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(cli.jobs).build_global();
    }
    match cli.run() {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(EXIT_FAIL),
        Err(Fail(code, msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}
