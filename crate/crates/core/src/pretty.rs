//! Printing kernel terms with names.
//!
//! Free variables take their names from the surrounding context; binders get
//! fresh names. Clashing names receive numeric suffixes.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::kernel::{Name, Term};

/// Makes the names pairwise distinct, suffixing later duplicates.
pub fn distinct(names: &[Name]) -> Vec<Name> {
    let mut out: Vec<Name> = Vec::with_capacity(names.len());
    for n in names {
        out.push(fresh(n, &out));
    }
    out
}

fn fresh(base: &str, taken: &[Name]) -> Name {
    if !taken.iter().any(|t| &**t == base) {
        return base.into();
    }
    (1..)
        .map(|i| format!("{base}{i}"))
        .find(|c| !taken.iter().any(|t| **t == **c))
        .expect("some suffix is free")
        .into()
}

/// Prints `t` with free index `i` named `names[len - 1 - i]`.
pub fn term(t: &Term, names: &[Name]) -> String {
    let mut scope = distinct(names);
    let mut out = String::new();
    go(t, &mut scope, 0, &mut out);
    out
}

fn binder(scope: &mut Vec<Name>) -> Name {
    let x = fresh("x", scope);
    scope.push(x.clone());
    x
}

fn go(t: &Term, scope: &mut Vec<Name>, level: u8, out: &mut String) {
    use Term::*;
    if let App(h, a) = t {
        if let Const(p, ty) = &**h {
            if matches!(&*ty.0, Pi(_, b) if **b == Univ) {
                out.push_str(p);
                if !matches!(**a, Tt | Pair(..)) {
                    out.push('(');
                    go(a, scope, 0, out);
                    out.push(')');
                } else {
                    go(a, scope, 2, out);
                }
                return;
            }
        }
    }
    let mine = match t {
        Var(_) | Const(..) | Univ | Unit | Tt | Pair(..) | Tuple(..) => 2,
        App(..) | Fst(_) | Snd(_) | Proj1(_) | Proj2(_) => 1,
        _ => 0,
    };
    if mine < level {
        out.push('(');
    }
    match t {
        Var(i) => match scope.len().checked_sub(i + 1) {
            Some(p) => out.push_str(&scope[p]),
            None => out.push_str(&format!("#{i}")),
        },
        Const(p, _) => out.push_str(p),
        Univ => out.push('U'),
        Unit => out.push('𝟙'),
        Tt => out.push_str("⟨⟩"),
        Sigma(a, b) | Pi(a, b) => {
            out.push_str(if matches!(t, Sigma(..)) { "Σ " } else { "Π " });
            let mut inner = scope.clone();
            let x = binder(&mut inner);
            out.push_str(&x);
            out.push_str(" : ");
            go(a, scope, 0, out);
            out.push_str(". ");
            go(b, &mut inner, 0, out);
        }
        Lam(b) | LamL(b) | LamR(b) => {
            out.push_str(match t {
                Lam(_) => "λ",
                LamL(_) => "⫽",
                _ => "⑊",
            });
            let mut inner = scope.clone();
            let x = binder(&mut inner);
            out.push_str(&x);
            out.push_str(". ");
            go(b, &mut inner, 0, out);
        }
        Pair(a, b) | Tuple(a, b) => {
            let (open, close) = if matches!(t, Pair(..)) { ("⟨", "⟩") } else { ("(", ")") };
            out.push_str(open);
            go(a, scope, 0, out);
            out.push_str(", ");
            go(b, scope, 0, out);
            out.push_str(close);
        }
        App(f, a) => {
            go(f, scope, 1, out);
            out.push(' ');
            go(a, scope, 2, out);
        }
        Fst(a) | Snd(a) | Proj1(a) | Proj2(a) => {
            out.push_str(match t {
                Fst(_) => "fst ",
                Snd(_) => "snd ",
                Proj1(_) => "π₁ ",
                _ => "π₂ ",
            });
            go(a, scope, 2, out);
        }
        FunL(a, b) | FunR(a, b) | Prod(a, b) => {
            go(a, scope, 1, out);
            out.push_str(match t {
                FunL(..) => " ⫽ ",
                FunR(..) => " ⊸ ",
                _ => " × ",
            });
            go(b, scope, 1, out);
        }
        AppL(f, a) => {
            go(a, scope, 1, out);
            out.push_str(" ▷ ");
            go(f, scope, 1, out);
        }
        AppR(f, a) => {
            go(f, scope, 1, out);
            out.push_str(" ◁ ");
            go(a, scope, 1, out);
        }
        Ann(a, b) => {
            go(a, scope, 1, out);
            out.push_str(" : ");
            go(b, scope, 1, out);
        }
    }
    if mine < level {
        out.push(')');
    }
}

/// Prints a closed term.
pub fn closed(t: &Term) -> String {
    term(t, &[])
}

/// Prints a context given as names and types, each type over its prefix.
pub fn context(entries: &[(Name, Term)]) -> String {
    if entries.is_empty() {
        return "ε".to_string();
    }
    let names: Vec<Name> = entries.iter().map(|(n, _)| n.clone()).collect();
    let names = distinct(&names);
    entries
        .iter()
        .enumerate()
        .map(|(i, (_, ty))| format!("{} : {}", names[i], term(ty, &names[..i])))
        .collect::<Vec<_>>()
        .join(", ")
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn collisions_get_suffixes() {
        let n: Vec<Name> = vec!["x".into(), "x".into(), "x1".into()];
        let d = distinct(&n);
        assert_eq!(d.iter().map(|s| &**s).collect::<Vec<_>>(), ["x", "x1", "x11"]);
    }

    #[test]
    fn binders_avoid_free_names() {
        let t = Term::lam(Term::app(Term::Var(1), Term::Var(0)));
        assert_eq!(term(&t, &["x".into()]), "λx1. x x1");
    }

    #[test]
    fn nested_arrows_parenthesize() {
        let t = Term::fun_r(Term::fun_r(Term::Unit, Term::Unit), Term::Unit);
        assert_eq!(closed(&t), "(𝟙 ⊸ 𝟙) ⊸ 𝟙");
    }

    #[test]
    fn atoms_print_applied() {
        let prop = Term::constant("Prop", Term::pi(Term::Unit, Term::Univ));
        let ante = Term::constant("Ante", Term::pi(Term::app(prop.clone(), Term::Tt), Term::Univ));
        let t = Term::pi(Term::app(prop, Term::Tt), Term::app(ante, Term::Var(0)));
        assert_eq!(closed(&t), "Π x : Prop⟨⟩. Ante(x)");
    }
}
