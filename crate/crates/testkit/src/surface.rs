//! Derivable judgments of the surface language.
//!
//! Terms are grown together with the term-level resources they consume, so
//! every generated judgment uses each term-level variable exactly once and
//! in an order the ordered discipline accepts. Type-level variables enter
//! through `∀`-application and through the types of resources.

use std::fmt;

use lfdc_core::checker::syntax::{Ctx, Elim, Intro, Let, Name, Names, Pattern, Ty};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

/// The signature every generated judgment is checked against.
pub const SIGNATURE: &str = "atom A : 𝟙.
atom B : 𝟙.
atom F : A⟨⟩.
const p : A⟨⟩.
const mk : ∀a : A⟨⟩. F(a).
";

/// `Γ ⫶ Δ ⊢ T ∋ t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Judgment {
    pub gamma: Ctx,
    pub delta: Ctx,
    pub ty: Ty,
    pub term: Intro,
}

impl fmt::Display for Judgment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "check {} ⫶ {} ⊢ {} ∋ {}.", self.gamma, self.delta, self.ty, self.term)
    }
}

pub fn a() -> Ty {
    Ty::atom("A", Intro::Unit)
}

pub fn b() -> Ty {
    Ty::atom("B", Intro::Unit)
}

pub fn fam(x: &Name) -> Ty {
    Ty::atom("F", Intro::name(x.clone()))
}

/// Nesting depth of an introduction form, counting elimination nodes too.
pub fn depth(t: &Intro) -> usize {
    match t {
        Intro::Unit => 1,
        Intro::Pair(x, y) | Intro::Tuple(x, y) => 1 + depth(x).max(depth(y)),
        Intro::LamL(_, b) | Intro::LamR(_, b) | Intro::Lam(_, b) => 1 + depth(b),
        Intro::Embed(e) => elim_depth(e),
    }
}

fn elim_depth(e: &Elim) -> usize {
    match e {
        Elim::Name(_) => 1,
        Elim::Let(l) => 1 + elim_depth(&l.scrutinee).max(depth(&l.body)),
        Elim::AppR(f, s) | Elim::App(f, s) => 1 + elim_depth(f).max(depth(s)),
        Elim::AppL(s, f) => 1 + elim_depth(f).max(depth(s)),
        Elim::Proj1(f) | Elim::Proj2(f) => 1 + elim_depth(f),
        Elim::Ann(t, _) => 1 + depth(t),
    }
}

type Entries = Vec<(Name, Ty)>;

pub struct SurfaceGen {
    rng: StdRng,
    fresh: usize,
}

impl SurfaceGen {
    pub fn new(seed: u64) -> Self {
        SurfaceGen {
            rng: StdRng::seed_from_u64(seed),
            fresh: 0,
        }
    }

    pub fn rng(&mut self) -> &mut StdRng {
        &mut self.rng
    }

    pub fn name(&mut self, stem: &str) -> Name {
        self.fresh += 1;
        format!("{stem}{}", self.fresh).into()
    }

    /// A closed type.
    pub fn closed_type(&mut self) -> Ty {
        match self.rng.gen_range(0..6) {
            0 => Ty::Unit,
            1 | 2 => a(),
            3 => b(),
            4 => Ty::tensor(a(), b()),
            _ => Ty::lolli(b(), a()),
        }
    }

    /// A type for a fresh resource over `gamma`.
    pub fn resource_type(&mut self, gamma: &[(Name, Ty)]) -> Ty {
        let fams: Vec<&Name> = gamma.iter().filter(|(_, t)| *t == a()).map(|(x, _)| x).collect();
        if !fams.is_empty() && self.rng.gen_bool(0.3) {
            let x = fams[self.rng.gen_range(0..fams.len())];
            return fam(x);
        }
        self.closed_type()
    }

    /// A type-level context of up to three entries.
    pub fn type_level(&mut self) -> Ctx {
        let n = self.rng.gen_range(0..=3);
        let mut out: Entries = Vec::new();
        for _ in 0..n {
            let ty = self.resource_type(&out);
            out.push((self.name("a"), ty));
        }
        Ctx(out)
    }

    /// A judgment whose term has depth at most `max_depth`, which must be
    /// at least 2.
    pub fn judgment(&mut self, max_depth: usize) -> Judgment {
        let gamma = self.type_level();
        // Each level adds at most one node and leaves have depth at most 2.
        let (delta, ty, term) = self.intro(&gamma.0, max_depth - 2);
        Judgment {
            gamma,
            delta: Ctx(delta),
            ty,
            term,
        }
    }

    /// A term over the type-level `gamma` with the resources it consumes,
    /// in order, and its type. Its depth is at most `depth + 2`.
    pub fn intro(&mut self, gamma: &[(Name, Ty)], depth: usize) -> (Entries, Ty, Intro) {
        if depth == 0 || self.rng.gen_bool(0.15) {
            return self.leaf(gamma);
        }
        let d = depth - 1;
        match self.rng.gen_range(0..12) {
            0 | 1 => {
                let (mut d1, s, x) = self.intro(gamma, d);
                let (d2, t, y) = self.intro(gamma, d);
                d1.extend(d2);
                (d1, Ty::tensor(s, t), Intro::pair(x, y))
            }
            2 => {
                let (mut dl, r, body) = self.intro(gamma, d);
                match dl.pop() {
                    Some((y, s)) => (dl, Ty::lolli(s, r), Intro::lam_r(y, body)),
                    None => (dl, r, body),
                }
            }
            3 => {
                let (mut dl, r, body) = self.intro(gamma, d);
                if dl.is_empty() {
                    return (dl, r, body);
                }
                let (y, s) = dl.remove(0);
                (dl, Ty::fun_l(s, r), Intro::lam_l(y, body))
            }
            4 => {
                let (ds, s, arg) = self.intro(gamma, d);
                let r = self.resource_type(gamma);
                let f = self.name("f");
                let mut out = vec![(f.clone(), Ty::lolli(s, r.clone()))];
                out.extend(ds);
                (out, r, Intro::embed(Elim::app_r(Elim::name(f), arg)))
            }
            5 => {
                let (mut ds, s, arg) = self.intro(gamma, d);
                let r = self.resource_type(gamma);
                let f = self.name("f");
                ds.push((f.clone(), Ty::fun_l(s, r.clone())));
                (ds, r, Intro::embed(Elim::app_l(arg, Elim::name(f))))
            }
            6 => {
                let (dl, s, t) = self.intro(gamma, d);
                (dl, Ty::prod(s.clone(), s), Intro::tuple(t.clone(), t))
            }
            7 => {
                let x = self.name("x");
                let mut inner = gamma.to_vec();
                inner.push((x.clone(), a()));
                let (dl, r, body) = self.intro(&inner, d);
                if dl.iter().any(|(_, t)| t.free_names().contains(&x)) {
                    return self.leaf(gamma);
                }
                (dl, Ty::forall(x.clone(), a(), r), Intro::Lam(x, Box::new(body)))
            }
            8 => {
                let (mut dl, r, body) = self.intro(gamma, d);
                let u = self.name("u");
                dl.push((u.clone(), Ty::Unit));
                let l = Let {
                    binders: vec![],
                    motive: r.clone(),
                    sup: vec![],
                    pattern: Pattern::Unit,
                    scrutinee: Elim::name(u),
                    withs: vec![],
                    body,
                };
                (dl, r, Intro::embed(Elim::Let(Box::new(l))))
            }
            9 if depth >= 2 => self.pair_let(gamma),
            10 => {
                let (dl, s, t) = self.intro(gamma, d);
                (dl, s.clone(), Intro::embed(Elim::ann(t, s)))
            }
            _ => {
                let s = self.resource_type(gamma);
                let r = self.resource_type(gamma);
                let x = self.name("q");
                let (ty, e) = if self.rng.gen_bool(0.5) {
                    (s.clone(), Elim::Proj1(Box::new(Elim::name(x.clone()))))
                } else {
                    (r.clone(), Elim::Proj2(Box::new(Elim::name(x.clone()))))
                };
                (vec![(x, Ty::prod(s, r))], ty, Intro::embed(e))
            }
        }
    }

    fn leaf(&mut self, gamma: &[(Name, Ty)]) -> (Entries, Ty, Intro) {
        let fams: Vec<Name> = gamma.iter().filter(|(_, t)| *t == a()).map(|(x, _)| x.clone()).collect();
        match self.rng.gen_range(0..8) {
            0 => (vec![], Ty::Unit, Intro::Unit),
            1 => (vec![], a(), Intro::name("p")),
            2 | 3 if !fams.is_empty() => {
                // Bias towards the latest such variable, which ∀-introduction
                // just bound.
                let x = if self.rng.gen_bool(0.6) {
                    fams[fams.len() - 1].clone()
                } else {
                    fams[self.rng.gen_range(0..fams.len())].clone()
                };
                if self.rng.gen_bool(0.5) {
                    (vec![], fam(&x), Intro::embed(Elim::app(Elim::name("mk"), Intro::name(x))))
                } else {
                    let f = self.name("g");
                    let z = self.name("z");
                    let fty = Ty::forall(z.clone(), a(), fam(&z));
                    (
                        vec![(f.clone(), fty)],
                        fam(&x),
                        Intro::embed(Elim::app(Elim::name(f), Intro::name(x))),
                    )
                }
            }
            _ => {
                let x = self.name("x");
                let ty = self.resource_type(gamma);
                (vec![(x.clone(), ty.clone())], ty, Intro::name(x))
            }
        }
    }

    /// `let[c. S ⊗ (R ⊗ 𝟙) ^ 𝟙] ⟨x, y⟩ = w with z = ⟨⟩ in ⟨x, y, z⟩`.
    fn pair_let(&mut self, gamma: &[(Name, Ty)]) -> (Entries, Ty, Intro) {
        let s = self.resource_type(gamma);
        let r = self.resource_type(gamma);
        let (c, w, x, y, z) = (self.name("c"), self.name("w"), self.name("x"), self.name("y"), self.name("z"));
        let motive = Ty::tensor(s.clone(), Ty::tensor(r.clone(), Ty::Unit));
        let l = Let {
            binders: vec![c],
            motive: motive.clone(),
            sup: vec![Ty::Unit],
            pattern: Pattern::Pair(x.clone(), y.clone()),
            scrutinee: Elim::name(w.clone()),
            withs: vec![(z.clone(), Intro::Unit)],
            body: Intro::pair(Intro::name(x), Intro::pair(Intro::name(y), Intro::name(z))),
        };
        (vec![(w, Ty::tensor(s, r))], motive, Intro::embed(Elim::Let(Box::new(l))))
    }

    /// An elimination form of type `s` with the resources it consumes, to be
    /// checked with `gamma` type-level.
    pub fn substitutable(&mut self, gamma: &[(Name, Ty)], s: &Ty) -> (Entries, Elim) {
        let choice = self.rng.gen_range(0..5);
        match choice {
            0 if *s == Ty::Unit => (vec![], Elim::ann(Intro::Unit, Ty::Unit)),
            0 if *s == a() => (vec![], Elim::name("p")),
            1 => {
                let y = self.name("y");
                let z = self.name("z");
                let id = Elim::ann(Intro::lam_r(z.clone(), Intro::name(z)), Ty::lolli(s.clone(), s.clone()));
                (vec![(y.clone(), s.clone())], Elim::app_r(id, Intro::name(y)))
            }
            2 | 3 => {
                let (mut dr, r, arg) = self.intro(gamma, 1);
                let g = self.name("k");
                let mut out = vec![(g.clone(), Ty::lolli(r, s.clone()))];
                out.append(&mut dr);
                (out, Elim::app_r(Elim::name(g), arg))
            }
            _ => {
                let y = self.name("y");
                (vec![(y.clone(), s.clone())], Elim::name(y))
            }
        }
    }
}
