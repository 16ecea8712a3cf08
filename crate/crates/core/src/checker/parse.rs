//! Lexer and recursive-descent parser for the surface syntax.
//!
//! Both the unicode notation and its ASCII fallbacks are accepted.

use alloc::boxed::Box;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use super::syntax::{Ctx, Elim, Intro, Item, Let, Located, Name, Pattern, Ty, LOLLI};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.line, self.col, self.message)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(Name),
    Str(String),
    Kw(&'static str),
    Sym(&'static str),
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(x) => write!(f, "`{x}`"),
            Tok::Str(s) => write!(f, "\"{s}\""),
            Tok::Kw(k) | Tok::Sym(k) => write!(f, "`{k}`"),
            Tok::Eof => f.write_str("end of input"),
        }
    }
}

#[derive(Clone, Debug)]
struct Spanned {
    tok: Tok,
    line: usize,
    col: usize,
}

const KEYWORDS: &[(&str, &str)] = &[
    ("atom", "atom"),
    ("const", "const"),
    ("import", "import"),
    ("ctx", "ctx"),
    ("type", "type"),
    ("check", "check"),
    ("infer", "infer"),
    ("fail", "fail"),
    ("let", "let"),
    ("with", "with"),
    ("and", "and"),
    ("in", "in"),
    ("forall", "∀"),
    ("lam", "λ"),
    ("Lam", "Λ"),
    ("pi1", "π₁"),
    ("pi2", "π₂"),
    ("eps", "ε"),
];

/// Multi-character symbols first so that the longest match wins.
const SYMBOLS: &[(&str, &str)] = &[
    ("(+)", "⊕"),
    ("(*)", "⊗"),
    ("<|", "◁"),
    ("|>", "▷"),
    ("|-", "⊢"),
    ("<=", "∋"),
    ("<>", "⟨⟩"),
    ("-o", "⊸"),
    ("//", "⫽"),
    ("\\\\", "⑊"),
    ("π₁", "π₁"),
    ("π₂", "π₂"),
    ("⟨", "⟨"),
    ("⟩", "⟩"),
    ("<", "⟨"),
    (">", "⟩"),
    ("(", "("),
    (")", ")"),
    ("[", "["),
    ("]", "]"),
    (",", ","),
    (":", ":"),
    (".", "."),
    ("·", "·"),
    ("⊕", "⊕"),
    ("⊗", "⊗"),
    ("×", "×"),
    ("*", "×"),
    ("⊸", "⊸"),
    ("⫽", "⫽"),
    ("⑊", "⑊"),
    ("◁", "◁"),
    ("▷", "▷"),
    ("⫶", "⫶"),
    (";", "⫶"),
    ("⊢", "⊢"),
    ("∋", "∋"),
    ("^", "^"),
    ("=", "="),
    ("𝟙", "𝟙"),
    ("1", "𝟙"),
    ("λ", "λ"),
    ("Λ", "Λ"),
    ("∀", "∀"),
    ("ε", "ε"),
];

fn ident_start(c: char) -> bool {
    (c.is_alphabetic() && !"λΛπε".contains(c)) || c == '_'
}

fn ident_char(c: char) -> bool {
    (c.is_alphanumeric() && !"λΛπε".contains(c)) || c == '_' || c == '\'' || c == '⊸'
}

fn lex(src: &str) -> Result<Vec<Spanned>, ParseError> {
    let mut out = Vec::new();
    let mut line = 1;
    let mut col = 1;
    let mut rest = src;
    let advance = |s: &str, line: &mut usize, col: &mut usize| {
        for c in s.chars() {
            if c == '\n' {
                *line += 1;
                *col = 1;
            } else {
                *col += 1;
            }
        }
    };
    loop {
        let trimmed = rest.trim_start();
        advance(&rest[..rest.len() - trimmed.len()], &mut line, &mut col);
        rest = trimmed;
        if rest.starts_with("--") {
            let end = rest.find('\n').unwrap_or(rest.len());
            advance(&rest[..end], &mut line, &mut col);
            rest = &rest[end..];
            continue;
        }
        let Some(c) = rest.chars().next() else {
            out.push(Spanned {
                tok: Tok::Eof,
                line,
                col,
            });
            return Ok(out);
        };
        let (tok, len) = if ident_start(c)
            || (c == '⊸' && rest['⊸'.len_utf8()..].chars().next().is_some_and(ident_char))
        {
            let len = rest
                .char_indices()
                .skip(1)
                .find(|&(_, ch)| !ident_char(ch))
                .map_or(rest.len(), |(i, _)| i);
            let word = &rest[..len];
            let tok = match KEYWORDS.iter().find(|(k, _)| *k == word) {
                Some((_, canon)) if matches!(*canon, "∀" | "λ" | "Λ" | "π₁" | "π₂" | "ε") => {
                    Tok::Sym(canon)
                }
                Some((_, canon)) => Tok::Kw(canon),
                None => Tok::Ident(Name::from(word)),
            };
            (tok, len)
        } else if c == '"' {
            let Some(end) = rest[1..].find('"') else {
                return Err(ParseError {
                    line,
                    col,
                    message: "unterminated string".to_string(),
                });
            };
            (Tok::Str(rest[1..1 + end].to_string()), end + 2)
        } else if let Some((s, canon)) = SYMBOLS.iter().find(|(s, _)| rest.starts_with(s)) {
            (Tok::Sym(canon), s.len())
        } else {
            return Err(ParseError {
                line,
                col,
                message: format!("unexpected character `{c}`"),
            });
        };
        out.push(Spanned { tok, line, col });
        advance(&rest[..len], &mut line, &mut col);
        rest = &rest[len..];
    }
}

type PResult<T> = Result<T, ParseError>;

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn peek_at(&self, k: usize) -> &Tok {
        &self.toks[(self.pos + k).min(self.toks.len() - 1)].tok
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].tok.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error<T>(&self, message: impl Into<String>) -> PResult<T> {
        let s = &self.toks[self.pos];
        Err(ParseError {
            line: s.line,
            col: s.col,
            message: message.into(),
        })
    }

    fn is_sym(&self, s: &str) -> bool {
        matches!(self.peek(), Tok::Sym(t) if *t == s)
    }

    fn is_kw(&self, s: &str) -> bool {
        matches!(self.peek(), Tok::Kw(t) if *t == s)
    }

    fn eat_sym(&mut self, s: &str) -> bool {
        let hit = self.is_sym(s);
        if hit {
            self.bump();
        }
        hit
    }

    fn eat_kw(&mut self, s: &str) -> bool {
        let hit = self.is_kw(s);
        if hit {
            self.bump();
        }
        hit
    }

    fn expect_sym(&mut self, s: &str) -> PResult<()> {
        if self.eat_sym(s) {
            Ok(())
        } else {
            self.error(format!("expected `{s}`, found {}", self.peek()))
        }
    }

    fn expect_kw(&mut self, s: &str) -> PResult<()> {
        if self.eat_kw(s) {
            Ok(())
        } else {
            self.error(format!("expected `{s}`, found {}", self.peek()))
        }
    }

    fn ident(&mut self) -> PResult<Name> {
        match self.peek().clone() {
            Tok::Ident(x) => {
                self.bump();
                Ok(x)
            }
            t => self.error(format!("expected an identifier, found {t}")),
        }
    }

    /// A declared name: an identifier, or the lone symbol `⊸`.
    fn decl_name(&mut self) -> PResult<Name> {
        if self.eat_sym("⊸") {
            return Ok(Name::from(LOLLI));
        }
        self.ident()
    }

    // Items.

    fn item(&mut self) -> PResult<Located> {
        let Spanned { line, col, .. } = self.toks[self.pos].clone();
        let item = self.item_body()?;
        Ok(Located { line, col, item })
    }

    fn item_body(&mut self) -> PResult<Item> {
        let Tok::Kw(kw) = self.peek().clone() else {
            return self.error(format!("expected a declaration or query, found {}", self.peek()));
        };
        self.bump();
        let item = match kw {
            "atom" | "const" => {
                let name = self.decl_name()?;
                self.expect_sym(":")?;
                let ty = self.ty()?;
                if kw == "atom" {
                    Item::Atom(name, ty)
                } else {
                    Item::Const(name, ty)
                }
            }
            "import" => match self.bump() {
                Tok::Str(s) => Item::Import(s),
                t => return self.error(format!("expected a quoted path, found {t}")),
            },
            "ctx" => Item::Ctx(self.ctx()?),
            "type" => {
                let g = self.ctx()?;
                self.expect_sym("⊢")?;
                Item::Type(g, self.ty()?)
            }
            "check" => {
                let g = self.ctx()?;
                self.expect_sym("⫶")?;
                let d = self.ctx()?;
                self.expect_sym("⊢")?;
                let t = self.ty()?;
                self.expect_sym("∋")?;
                Item::Check(g, d, t, self.ann_intro()?)
            }
            "infer" => {
                let g = self.ctx()?;
                self.expect_sym("⫶")?;
                let d = self.ctx()?;
                self.expect_sym("⊢")?;
                let e = self.ann_intro()?;
                Item::Infer(g, d, self.to_elim(e)?)
            }
            "fail" => {
                let kind = if self.eat_sym("(") {
                    let k = self.ident()?;
                    self.expect_sym(")")?;
                    Some(k)
                } else {
                    None
                };
                return Ok(Item::Fail(kind, Box::new(self.item_body()?)));
            }
            _ => return self.error(format!("`{kw}` cannot start a declaration or query")),
        };
        self.expect_sym(".")?;
        Ok(item)
    }

    fn ctx(&mut self) -> PResult<Ctx> {
        if self.eat_sym("ε") || self.is_sym("⫶") || self.is_sym("⊢") || self.is_sym(".") {
            return Ok(Ctx::default());
        }
        let mut out = Vec::new();
        loop {
            let x = self.ident()?;
            self.expect_sym(":")?;
            out.push((x, self.ty()?));
            if !self.eat_sym(",") {
                return Ok(Ctx(out));
            }
        }
    }

    // Types.

    fn ty(&mut self) -> PResult<Ty> {
        for (sym, forall) in [("∀", true), ("⊕", false)] {
            if self.eat_sym(sym) {
                let mut xs = alloc::vec![self.ident()?];
                while self.eat_sym(",") {
                    xs.push(self.ident()?);
                }
                self.expect_sym(":")?;
                let s = self.ty()?;
                self.expect_sym(".")?;
                let mut t = self.ty()?;
                for x in xs.into_iter().rev() {
                    t = if forall {
                        Ty::forall(x, s.clone(), t)
                    } else {
                        Ty::sum(x, s.clone(), t)
                    };
                }
                return Ok(t);
            }
        }
        let lhs = self.ty_back()?;
        if self.eat_sym("⊸") {
            Ok(Ty::lolli(lhs, self.ty()?))
        } else if self.eat_sym("⫽") {
            Ok(Ty::fun_l(lhs, self.ty()?))
        } else {
            Ok(lhs)
        }
    }

    /// `T ⑊ S ⑊ R`, associating to the left.
    fn ty_back(&mut self) -> PResult<Ty> {
        let mut t = self.ty_prod()?;
        while self.eat_sym("⑊") {
            t = Ty::lolli(self.ty_prod()?, t);
        }
        Ok(t)
    }

    fn ty_prod(&mut self) -> PResult<Ty> {
        let lhs = self.ty_atom()?;
        if self.eat_sym("×") {
            Ok(Ty::prod(lhs, self.ty_prod()?))
        } else if self.eat_sym("⊗") {
            Ok(Ty::tensor(lhs, self.ty_prod()?))
        } else {
            Ok(lhs)
        }
    }

    fn ty_atom(&mut self) -> PResult<Ty> {
        if self.eat_sym("𝟙") {
            return Ok(Ty::Unit);
        }
        if self.eat_sym("(") {
            let t = self.ty()?;
            self.expect_sym(")")?;
            return Ok(t);
        }
        match self.peek().clone() {
            Tok::Ident(p) => {
                self.bump();
                Ok(Ty::atom(p, self.intro_atom()?))
            }
            t => self.error(format!("expected a type, found {t}")),
        }
    }

    // Terms.

    fn to_elim(&self, t: Intro) -> PResult<Elim> {
        match t {
            Intro::Embed(e) => Ok(*e),
            other => self.error(format!(
                "`{other}` is an introduction form; annotate it with `: T` to use it here"
            )),
        }
    }

    /// An introduction form, optionally annotated.
    fn ann_intro(&mut self) -> PResult<Intro> {
        let t = self.intro()?;
        if self.eat_sym(":") {
            let ty = self.ty()?;
            return Ok(Intro::embed(Elim::ann(t, ty)));
        }
        Ok(t)
    }

    fn intro(&mut self) -> PResult<Intro> {
        if let Some(b) = self.binder_intro()? {
            return Ok(b);
        }
        let lhs = self.app()?;
        if self.eat_sym("⊸") {
            let rhs = self.intro()?;
            return Ok(Intro::embed(Elim::lolli(lhs, rhs)));
        }
        Ok(lhs)
    }

    fn binder_intro(&mut self) -> PResult<Option<Intro>> {
        let ctor: fn(Name, Intro) -> Intro = if self.is_sym("⫽") {
            |x, t| Intro::lam_l(x, t)
        } else if self.is_sym("⑊") || self.is_sym("λ") {
            |x, t| Intro::lam_r(x, t)
        } else if self.is_sym("Λ") {
            |x, t| Intro::lam(x, t)
        } else {
            return Ok(None);
        };
        self.bump();
        let x = self.ident()?;
        self.expect_sym(".")?;
        Ok(Some(ctor(x, self.intro()?)))
    }

    /// `s ▷ f`, associating to the right.
    fn app(&mut self) -> PResult<Intro> {
        let lhs = self.spine()?;
        if self.eat_sym("▷") {
            let rhs = self.app()?;
            let f = self.to_elim(rhs)?;
            return Ok(Intro::embed(Elim::app_l(lhs, f)));
        }
        Ok(lhs)
    }

    fn starts_arg(&self, k: usize) -> bool {
        matches!(self.peek_at(k), Tok::Ident(_))
            || matches!(self.peek_at(k), Tok::Sym(s) if matches!(*s, "⟨" | "⟨⟩" | "(" | "π₁" | "π₂"))
    }

    /// Application spine: `f ◁ s`, `f · s`, associating to the left.
    fn spine(&mut self) -> PResult<Intro> {
        let mut head = self.primary()?;
        loop {
            let right = if self.is_sym("◁") {
                true
            } else if self.is_sym("·") || (self.is_sym(".") && self.starts_arg(1)) {
                false
            } else {
                return Ok(head);
            };
            self.bump();
            let f = self.to_elim(head)?;
            let arg = self.arg()?;
            head = Intro::embed(if right {
                Elim::app_r(f, arg)
            } else {
                Elim::app(f, arg)
            });
        }
    }

    fn arg(&mut self) -> PResult<Intro> {
        if let Some(b) = self.binder_intro()? {
            return Ok(b);
        }
        if self.is_sym("π₁") || self.is_sym("π₂") {
            return self.projection();
        }
        self.intro_atom()
    }

    fn projection(&mut self) -> PResult<Intro> {
        let first = self.is_sym("π₁");
        self.bump();
        let operand = self.intro_atom()?;
        let e = Box::new(self.to_elim(operand)?);
        Ok(Intro::embed(if first {
            Elim::Proj1(e)
        } else {
            Elim::Proj2(e)
        }))
    }

    fn primary(&mut self) -> PResult<Intro> {
        if self.is_sym("π₁") || self.is_sym("π₂") {
            return self.projection();
        }
        if self.is_kw("let") {
            return Ok(Intro::embed(Elim::Let(Box::new(self.let_expr()?))));
        }
        if self.eat_sym("⊸") {
            return Ok(Intro::name(LOLLI));
        }
        self.intro_atom()
    }

    /// `⟨…⟩`, `(…)` or a name.
    fn intro_atom(&mut self) -> PResult<Intro> {
        if self.eat_sym("⟨⟩") {
            return Ok(Intro::Unit);
        }
        if self.eat_sym("⟨") {
            if self.eat_sym("⟩") {
                return Ok(Intro::Unit);
            }
            let mut items = alloc::vec![self.ann_intro()?];
            while self.eat_sym(",") {
                items.push(self.ann_intro()?);
            }
            self.expect_sym("⟩")?;
            if items.len() < 2 {
                return self.error("a pair needs at least two components");
            }
            let mut it = items.into_iter().rev();
            let mut acc = it.next().expect("nonempty");
            for a in it {
                acc = Intro::pair(a, acc);
            }
            return Ok(acc);
        }
        if self.eat_sym("(") {
            let a = self.ann_intro()?;
            if self.eat_sym(",") {
                let b = self.ann_intro()?;
                self.expect_sym(")")?;
                return Ok(Intro::tuple(a, b));
            }
            self.expect_sym(")")?;
            return Ok(a);
        }
        match self.peek().clone() {
            Tok::Ident(x) => {
                self.bump();
                Ok(Intro::name(x))
            }
            t => self.error(format!("expected a term, found {t}")),
        }
    }

    fn let_expr(&mut self) -> PResult<Let> {
        self.expect_kw("let")?;
        self.expect_sym("[")?;
        let mut binders = Vec::new();
        let binder_list = matches!(self.peek(), Tok::Ident(_))
            && matches!(self.peek_at(1), Tok::Sym("," | "."));
        if binder_list {
            binders.push(self.ident()?);
            while self.eat_sym(",") {
                binders.push(self.ident()?);
            }
            self.expect_sym(".")?;
        }
        let motive = self.ty()?;
        let mut sup = Vec::new();
        if self.eat_sym("^") {
            sup.push(self.ty()?);
            if self.eat_sym(",") {
                sup.push(self.ty()?);
            }
        }
        self.expect_sym("]")?;
        let pattern = if self.eat_sym("⟨⟩") {
            Pattern::Unit
        } else {
            self.expect_sym("⟨")?;
            if self.eat_sym("⟩") {
                Pattern::Unit
            } else {
                let x = self.ident()?;
                self.expect_sym(",")?;
                let y = self.ident()?;
                self.expect_sym("⟩")?;
                Pattern::Pair(x, y)
            }
        };
        self.expect_sym("=")?;
        let scrut = self.ann_intro()?;
        let scrutinee = self.to_elim(scrut)?;
        let mut withs = Vec::new();
        if self.eat_kw("with") {
            loop {
                let w = self.ident()?;
                self.expect_sym("=")?;
                withs.push((w, self.intro()?));
                if !self.eat_kw("and") {
                    break;
                }
            }
        }
        self.expect_kw("in")?;
        let body = self.intro()?;
        let l = Let {
            binders,
            motive,
            sup,
            pattern,
            scrutinee,
            withs,
            body,
        };
        if l.form().is_none() {
            return self.error("this combination of motive binders, motives and `with` clauses matches no let-form");
        }
        Ok(l)
    }
}

fn parser(src: &str) -> PResult<Parser> {
    Ok(Parser {
        toks: lex(src)?,
        pos: 0,
    })
}

fn finish<T>(p: &mut Parser, v: T) -> PResult<T> {
    match p.peek() {
        Tok::Eof => Ok(v),
        t => {
            let t = t.clone();
            p.error(format!("unexpected {t} after the end"))
        }
    }
}

/// Parses a whole file of declarations and queries.
pub fn parse_items(src: &str) -> PResult<Vec<Located>> {
    let mut p = parser(src)?;
    let mut out = Vec::new();
    while *p.peek() != Tok::Eof {
        out.push(p.item()?);
    }
    Ok(out)
}

pub fn parse_ty(src: &str) -> PResult<Ty> {
    let mut p = parser(src)?;
    let t = p.ty()?;
    finish(&mut p, t)
}

pub fn parse_intro(src: &str) -> PResult<Intro> {
    let mut p = parser(src)?;
    let t = p.ann_intro()?;
    finish(&mut p, t)
}

pub fn parse_elim(src: &str) -> PResult<Elim> {
    let mut p = parser(src)?;
    let t = p.ann_intro()?;
    let e = p.to_elim(t)?;
    finish(&mut p, e)
}

pub fn parse_ctx(src: &str) -> PResult<Ctx> {
    let mut p = parser(src)?;
    let g = p.ctx()?;
    finish(&mut p, g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn roundtrip_ty(src: &str) -> Ty {
        let t = parse_ty(src).unwrap();
        let printed = t.to_string();
        assert_eq!(parse_ty(&printed).unwrap(), t, "{printed}");
        t
    }

    fn roundtrip_intro(src: &str) -> Intro {
        let t = parse_intro(src).unwrap();
        let printed = t.to_string();
        assert_eq!(parse_intro(&printed).unwrap(), t, "{printed}");
        t
    }

    #[test]
    fn arrows_associate_right() {
        let t = roundtrip_ty("Prop⟨⟩ ⊸ Prop⟨⟩ ⊸ Prop⟨⟩");
        let p = Ty::atom("Prop", Intro::Unit);
        assert_eq!(t, Ty::lolli(p.clone(), Ty::lolli(p.clone(), p)));
    }

    #[test]
    fn backslash_is_flipped_lolli() {
        assert_eq!(parse_ty("T<> \\\\ S<>").unwrap(), parse_ty("S<> -o T<>").unwrap());
    }

    #[test]
    fn ascii_and_unicode_agree() {
        let u = parse_ty("∀a, b : Prop⟨⟩. (Conse(a) ⊗ (Ante(a) ⊸ Conse(b))) × Conse(b)").unwrap();
        let a = parse_ty("forall a, b : Prop<>. (Conse(a) (*) (Ante(a) -o Conse(b))) * Conse(b)")
            .unwrap();
        assert_eq!(u, a);
        roundtrip_ty("∀a, b : Prop⟨⟩. (Conse(a) ⊗ (Ante(a) ⊸ Conse(b))) × Conse(b)");
    }

    #[test]
    fn lolli_identifiers() {
        let t = roundtrip_intro("⊸R · a · b ◁ f");
        let expected = Elim::app_r(
            Elim::app(Elim::app(Elim::name("⊸R"), Intro::name("a")), Intro::name("b")),
            Intro::name("f"),
        );
        assert_eq!(t, Intro::embed(expected));
        assert_eq!(
            parse_intro("a ⊸ b").unwrap(),
            parse_intro("⊸ ◁ a ◁ b").unwrap()
        );
        roundtrip_intro("CutStep");
        roundtrip_ty("Conse(a ⊸ b)");
        roundtrip_ty("CF⟨c, ⊸L · a · b · c ◁ p_a ◁ f ◁ q_ab⟩");
    }

    #[test]
    fn ascii_dot_application() {
        assert_eq!(
            parse_intro("id . a <| q").unwrap(),
            parse_intro("id · a ◁ q").unwrap()
        );
        let items = parse_items("infer a : P<> ; eps |- id . a.\ncheck ; |- 1 <= <>.").unwrap();
        assert_eq!(items.len(), 2);
    }

    #[test]
    fn pairs_nest_to_the_right() {
        let t = roundtrip_intro("⟨a, b, c⟩");
        assert_eq!(
            t,
            Intro::pair(Intro::name("a"), Intro::pair(Intro::name("b"), Intro::name("c")))
        );
    }

    #[test]
    fn binders_extend_right() {
        let t = roundtrip_intro("λq. f ◁ q");
        assert!(matches!(t, Intro::LamR(..)));
        roundtrip_intro("⫽x. Λy. (x, y)");
        roundtrip_intro("(λq. q) : Ante⟨⟩ ⊸ Ante⟨⟩");
        roundtrip_intro("f ◁ (λq. q) ◁ x");
    }

    #[test]
    fn let_forms() {
        let src = "let[a. R⟨⟩ ^ U(a)] ⟨x, y⟩ = e with z = u in r ◁ x";
        let t = roundtrip_intro(src);
        let Intro::Embed(e) = t else { panic!() };
        let Elim::Let(l) = *e else { panic!() };
        assert_eq!(l.form(), Some(super::super::syntax::LetForm::PairTerm));
        roundtrip_intro("let[R⟨⟩] ⟨⟩ = e in r");
        roundtrip_intro("let[a, b, c. R(a) ^ U(b), V(c)] ⟨⟩ = e with w = u and z = v in r");
        assert!(parse_intro("let[a. R] ⟨⟩ = e in r").is_err());
    }

    #[test]
    fn items_and_errors() {
        let items = parse_items(
            "-- comment\natom Prop : 𝟙.\nconst ⊸ : Prop⟨⟩ ⊸ Prop⟨⟩ ⊸ Prop⟨⟩.\nfail(LinearityError) check ε ⫶ x : Prop⟨⟩ ⊢ 𝟙 ∋ ⟨⟩.",
        )
        .unwrap();
        assert_eq!(items.len(), 3);
        assert_eq!(items[1].line, 3);
        for it in &items {
            let again = parse_items(&it.item.to_string()).unwrap();
            assert_eq!(again[0].item, it.item);
        }
        let err = parse_items("atom P : 𝟙\natom Q : 𝟙.").unwrap_err();
        assert_eq!((err.line, err.col), (2, 1));
        assert!(parse_intro("⟨⟩ ◁ x").is_err());
    }
}
