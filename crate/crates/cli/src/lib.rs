//! Batch checking of query files.
//!
//! A file is a sequence of items: signature declarations, imports of other
//! signature files, and queries. Items are processed in order against a
//! signature that grows with every successful declaration. Each file gets
//! its own signature, so files can be checked independently and in
//! parallel; their reports are printed in the order the files were given.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::fs;
use std::io::IsTerminal;
use std::path::{Path, PathBuf};

use lfdc_core::checker::parse::parse_items;
use lfdc_core::checker::syntax::{Item, Located};
use lfdc_core::checker::{self, CheckError, Derivation};
use lfdc_core::kernel::{Name, Term};
use lfdc_core::lfdc::{Morphism, StructuralConfig};
use lfdc_core::pretty;
use lfdc_core::signature::{Signature, SignatureError};
use lfdc_core::telescope::{SemCtx, Telescope};

/// Exit status of a run.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Status {
    Pass = 0,
    /// Some item did not check, or a `fail` item did not fail as expected.
    Failed = 1,
    /// A file could not be read or parsed, or the command line was wrong.
    Error = 2,
}

impl Status {
    pub fn code(self) -> i32 {
        self as i32
    }
}

/// The outcome of one item.
#[derive(Clone, Debug)]
pub struct Entry {
    pub line: usize,
    pub col: usize,
    pub item: Item,
    pub passed: bool,
    /// Denotations on success, diagnostics on failure.
    pub detail: Vec<String>,
    /// Derivations of the judgments the item established. Empty for
    /// failures and for expected failures.
    pub derivations: Vec<Derivation>,
}

#[derive(Clone, Debug)]
pub struct FileReport {
    pub path: PathBuf,
    pub entries: Vec<Entry>,
    /// An I/O, parse or import error that stopped the file.
    pub fatal: Option<String>,
}

impl FileReport {
    pub fn status(&self) -> Status {
        if self.fatal.is_some() {
            Status::Error
        } else if self.entries.iter().all(|e| e.passed) {
            Status::Pass
        } else {
            Status::Failed
        }
    }

    pub fn render(&self, color: bool) -> String {
        let paint = |code: &str, s: &str| {
            if color {
                format!("\x1b[{code}m{s}\x1b[0m")
            } else {
                s.to_string()
            }
        };
        let mut out = String::new();
        let _ = writeln!(out, "# {}", self.path.display());
        for e in &self.entries {
            let tag = if e.passed { paint("32", "ok  ") } else { paint("31;1", "FAIL") };
            let _ = writeln!(out, "{tag} {}:{} {}", e.line, e.col, e.item);
            for d in &e.detail {
                for l in d.lines() {
                    let _ = writeln!(out, "       {l}");
                }
            }
        }
        let failed = self.entries.iter().filter(|e| !e.passed).count();
        let _ = writeln!(out, "# {} passed, {failed} failed", self.entries.len() - failed);
        if let Some(msg) = &self.fatal {
            let _ = writeln!(out, "{}: {msg}", paint("31;1", "error"));
        }
        out
    }
}

/// Whether `LFDC_COLOR` asks for colored output: `always` or `1` force it,
/// `auto` colors when stdout is a terminal, anything else disables it.
pub fn color_from_env() -> bool {
    match std::env::var("LFDC_COLOR").as_deref() {
        Ok("always") | Ok("1") => true,
        Ok("auto") => std::io::stdout().is_terminal(),
        _ => false,
    }
}

/// Checks every file, in parallel, returning reports in input order.
pub fn check_files(paths: &[PathBuf], cfg: &StructuralConfig) -> Vec<FileReport> {
    std::thread::scope(|s| {
        let handles: Vec<_> = paths.iter().map(|p| s.spawn(move || check_file(p, cfg))).collect();
        handles.into_iter().map(|h| h.join().expect("checking thread panicked")).collect()
    })
}

/// The worst status among the reports.
pub fn overall(reports: &[FileReport]) -> Status {
    reports.iter().map(FileReport::status).max().unwrap_or(Status::Pass)
}

/// `lfdc check`: the rendered reports and the exit status.
pub fn cmd_check(paths: &[PathBuf], cfg: &StructuralConfig, color: bool) -> (String, Status) {
    let reports = check_files(paths, cfg);
    let text = reports.iter().map(|r| r.render(color)).collect::<Vec<_>>().join("\n");
    (text, overall(&reports))
}

pub fn check_file(path: &Path, cfg: &StructuralConfig) -> FileReport {
    let mut report = FileReport {
        path: path.to_path_buf(),
        entries: Vec::new(),
        fatal: None,
    };
    let items = match load(path) {
        Ok(items) => items,
        Err(e) => {
            report.fatal = Some(e);
            return report;
        }
    };
    let mut session = Session::new(path, *cfg);
    for it in items {
        match session.run(&it.item) {
            Ok(done) => report.entries.push(done.entry(&it)),
            Err(Failure::Fatal(msg)) => {
                report.fatal = Some(format!("{}:{}:{}: {msg}", path.display(), it.line, it.col));
                break;
            }
            Err(f) => report.entries.push(Entry {
                line: it.line,
                col: it.col,
                item: it.item.clone(),
                passed: false,
                detail: vec![f.to_string()],
                derivations: Vec::new(),
            }),
        }
    }
    report
}

/// `lfdc elaborate`: the denotation and rule trace of item `n`, counting
/// from 1 and skipping imports.
pub fn cmd_elaborate(path: &Path, n: usize, cfg: &StructuralConfig) -> (String, Status) {
    let items = match load(path) {
        Ok(items) => items,
        Err(e) => return (format!("error: {e}\n"), Status::Error),
    };
    let queries: Vec<usize> = (0..items.len())
        .filter(|&i| !matches!(items[i].item, Item::Import(_)))
        .collect();
    let Some(&target) = n.checked_sub(1).and_then(|k| queries.get(k)) else {
        return (
            format!("error: {} has no item {n}; it has {}\n", path.display(), queries.len()),
            Status::Error,
        );
    };
    let mut session = Session::new(path, *cfg);
    for it in &items[..target] {
        let declares = matches!(it.item, Item::Atom(..) | Item::Const(..) | Item::Import(_));
        if !declares {
            continue;
        }
        match session.run(&it.item) {
            Ok(_) => {}
            Err(Failure::Fatal(msg)) => return (format!("error: {msg}\n"), Status::Error),
            Err(f) => {
                return (
                    format!("{}:{}: {} failed, so item {n} cannot be elaborated:\n{f}\n", it.line, it.col, it.item),
                    Status::Failed,
                )
            }
        }
    }
    let it = &items[target];
    let mut out = format!("{}\n", it.item);
    match session.run(&it.item) {
        Ok(done) => {
            for l in &done.full {
                let _ = writeln!(out, "{l}");
            }
            for d in &done.derivations {
                out.push_str("rules:\n");
                for l in d.render().lines() {
                    let _ = writeln!(out, "  {l}");
                }
            }
            (out, Status::Pass)
        }
        Err(Failure::Fatal(msg)) => (format!("error: {msg}\n"), Status::Error),
        Err(f) => {
            let _ = writeln!(out, "{f}");
            (out, Status::Failed)
        }
    }
}

fn load(path: &Path) -> Result<Vec<Located>, String> {
    let src = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    parse_items(&src).map_err(|e| format!("{}:{e}", path.display()))
}

enum Failure {
    Check(CheckError),
    Sig(SignatureError),
    /// An expectation that did not hold.
    Unexpected(String),
    Fatal(String),
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Check(e) => write!(f, "{e}"),
            Failure::Sig(e) => write!(f, "{e}"),
            Failure::Unexpected(s) | Failure::Fatal(s) => f.write_str(s),
        }
    }
}

impl Failure {
    /// Whether the failure is an error of kind `tag`.
    fn matches(&self, tag: &str) -> bool {
        match self {
            Failure::Check(e) => e.matches(tag),
            Failure::Sig(e) => sig_matches(e, tag),
            Failure::Unexpected(_) | Failure::Fatal(_) => false,
        }
    }

    /// The first line of the innermost cause.
    fn root_line(&self) -> String {
        let text = match self {
            Failure::Check(e) => e.root().to_string(),
            Failure::Sig(e) => match sig_check_error(e) {
                Some(c) => c.root().to_string(),
                None => e.to_string(),
            },
            other => other.to_string(),
        };
        text.lines().next().unwrap_or_default().to_string()
    }

    fn kind(&self) -> String {
        match self {
            Failure::Check(e) => e.kind.tag().to_string(),
            Failure::Sig(e) => sig_kind(e),
            Failure::Unexpected(_) => "an unmet expectation".into(),
            Failure::Fatal(_) => "a fatal error".into(),
        }
    }
}

fn sig_check_error(e: &SignatureError) -> Option<&CheckError> {
    match e {
        SignatureError::Elaboration { error, .. } => Some(error),
        SignatureError::At { error, .. } => sig_check_error(error),
        _ => None,
    }
}

fn sig_matches(e: &SignatureError, tag: &str) -> bool {
    match e {
        SignatureError::Elaboration { error, .. } => error.matches(tag),
        SignatureError::At { error, .. } => sig_matches(error, tag),
        other => sig_kind(other) == tag,
    }
}

fn sig_kind(e: &SignatureError) -> String {
    match e {
        SignatureError::DuplicateBinding(_) => "DuplicateBinding".into(),
        SignatureError::OpenSignatureType { .. } => "OpenSignatureType".into(),
        SignatureError::Elaboration { error, .. } => error.kind.tag().into(),
        SignatureError::Parse(_) => "Parse".into(),
        SignatureError::NotADeclaration => "NotADeclaration".into(),
        SignatureError::At { error, .. } => sig_kind(error),
    }
}

/// What a successful item produced.
struct Done {
    /// One-line summary for the report.
    short: Vec<String>,
    /// The fuller account `elaborate` prints.
    full: Vec<String>,
    derivations: Vec<Derivation>,
}

impl Done {
    fn entry(self, it: &Located) -> Entry {
        Entry {
            line: it.line,
            col: it.col,
            item: it.item.clone(),
            passed: true,
            detail: self.short,
            derivations: self.derivations,
        }
    }
}

struct Session {
    sig: Signature,
    cfg: StructuralConfig,
    /// Files being imported, innermost last, for cycle detection.
    stack: Vec<PathBuf>,
    /// Files already imported.
    seen: BTreeSet<PathBuf>,
}

impl Session {
    fn new(root: &Path, cfg: StructuralConfig) -> Self {
        let root = canonical(root);
        Session {
            sig: Signature::new(),
            cfg,
            stack: vec![root.clone()],
            seen: BTreeSet::from([root]),
        }
    }

    fn run(&mut self, item: &Item) -> Result<Done, Failure> {
        let cfg = self.cfg;
        match item {
            Item::Atom(p, s) => {
                let (sig, d) = self.sig.declare_atom_traced(p.clone(), s, &cfg).map_err(Failure::Sig)?;
                self.sig = sig;
                let head = &self.sig.atom(p).expect("just declared").head;
                let line = format!("{p} : {}", pretty::closed(head_type(head)));
                Ok(Done {
                    short: vec![format!("↦ {line}")],
                    full: vec![format!("kernel: {line}")],
                    derivations: vec![d],
                })
            }
            Item::Const(p, s) => {
                let (sig, d) = self.sig.declare_const_traced(p.clone(), s, &cfg).map_err(Failure::Sig)?;
                self.sig = sig;
                let ty = &self.sig.constant(p).expect("just declared").ty;
                let line = format!("{p} : {}", pretty::closed(&ty.body));
                Ok(Done {
                    short: vec![format!("↦ {line}")],
                    full: vec![format!("kernel: {line}")],
                    derivations: vec![d],
                })
            }
            Item::Import(rel) => self.import(rel),
            Item::Ctx(g) => {
                let (g, d) = checker::form_context_derivation(g, &self.sig, &cfg).map_err(Failure::Check)?;
                let line = pretty::context(&entries(&g));
                Ok(Done {
                    short: vec![format!("↦ {line}")],
                    full: vec![format!("kernel: {line}")],
                    derivations: vec![d],
                })
            }
            Item::Type(g, t) => {
                let g = checker::form_context(g, &self.sig, &cfg).map_err(Failure::Check)?;
                let (ty, d) = checker::form_type_derivation(&g, t, &self.sig, &cfg).map_err(Failure::Check)?;
                let line = pretty::term(&ty.body, &g.names());
                Ok(Done {
                    short: vec![format!("↦ {line}")],
                    full: vec![format!("kernel: {} ⊢ {line}", pretty::context(&entries(&g)))],
                    derivations: vec![d],
                })
            }
            Item::Check(g, dl, t, s) => {
                let (g, dl) = checker::form_judgment_context(g, dl, &self.sig, &cfg).map_err(Failure::Check)?;
                let ty = checker::form_type(&g, t, &self.sig, &cfg).map_err(Failure::Check)?;
                let (m, d) = checker::check_derivation(&g, &dl, &ty, s, &self.sig, &cfg).map_err(Failure::Check)?;
                let flat = checker::unpack(&g, &dl, &m).map_err(Failure::Check)?;
                let names = all_names(&g, &dl);
                let body = pretty::term(&flat, &names);
                Ok(Done {
                    short: vec![format!("↦ {body}")],
                    full: vec![
                        format!("denotation: {}", morphism(&g, &m)),
                        format!("flat: {} ⊢ {body} : {}", judgment_ctx(&g, &dl), pretty::term(&ty.body, &g.names())),
                    ],
                    derivations: vec![d],
                })
            }
            Item::Infer(g, dl, e) => {
                let (g, dl) = checker::form_judgment_context(g, dl, &self.sig, &cfg).map_err(Failure::Check)?;
                let (ty, m, d) = checker::infer_derivation(&g, &dl, e, &self.sig, &cfg).map_err(Failure::Check)?;
                let flat = checker::unpack(&g, &dl, &m).map_err(Failure::Check)?;
                let names = all_names(&g, &dl);
                let body = pretty::term(&flat, &names);
                let ty = pretty::term(&ty.body, &g.names());
                Ok(Done {
                    short: vec![format!("∈ {ty}"), format!("↦ {body}")],
                    full: vec![
                        format!("denotation: {}", morphism(&g, &m)),
                        format!("flat: {} ⊢ {body} : {ty}", judgment_ctx(&g, &dl)),
                    ],
                    derivations: vec![d],
                })
            }
            Item::Fail(tag, inner) => {
                let saved = self.sig.clone();
                let result = self.run(inner);
                self.sig = saved;
                match result {
                    Ok(_) => Err(Failure::Unexpected("expected a failure, but the item checks".into())),
                    Err(f @ Failure::Fatal(_)) => Err(f),
                    Err(f) => match tag {
                        Some(tag) if !f.matches(tag) => Err(Failure::Unexpected(format!(
                            "expected a failure of kind {tag}, but got {}:\n{f}",
                            f.kind()
                        ))),
                        _ => {
                            Ok(Done {
                                short: vec![format!("rejected: {}", f.root_line())],
                                full: vec![format!("rejected as expected:\n{f}")],
                                derivations: Vec::new(),
                            })
                        }
                    },
                }
            }
        }
    }

    /// Adds the declarations of another file, resolved against the
    /// directory of the importing one. Its queries are not run.
    fn import(&mut self, rel: &str) -> Result<Done, Failure> {
        let here = self.stack.last().expect("the root file is on the stack");
        let path = canonical(&here.parent().unwrap_or(Path::new(".")).join(rel));
        if self.stack.contains(&path) {
            return Err(Failure::Fatal(format!("import cycle through {}", path.display())));
        }
        if !self.seen.insert(path.clone()) {
            return Ok(Done {
                short: vec!["already imported".into()],
                full: vec!["already imported".into()],
                derivations: Vec::new(),
            });
        }
        let items = load(&path).map_err(Failure::Fatal)?;
        let before = self.sig.len();
        let mut derivations = Vec::new();
        self.stack.push(path.clone());
        for it in &items {
            if !matches!(it.item, Item::Atom(..) | Item::Const(..) | Item::Import(_)) {
                continue;
            }
            match self.run(&it.item) {
                Ok(done) => derivations.extend(done.derivations),
                Err(Failure::Fatal(msg)) => {
                    self.stack.pop();
                    return Err(Failure::Fatal(msg));
                }
                Err(f) => {
                    self.stack.pop();
                    return Err(Failure::Unexpected(format!(
                        "{}:{}:{}: {}\n{f}",
                        path.display(),
                        it.line,
                        it.col,
                        it.item
                    )));
                }
            }
        }
        self.stack.pop();
        let line = format!("{} declarations", self.sig.len() - before);
        Ok(Done {
            short: vec![line.clone()],
            full: vec![line],
            derivations,
        })
    }
}

fn canonical(p: &Path) -> PathBuf {
    fs::canonicalize(p).unwrap_or_else(|_| p.to_path_buf())
}

/// The type `Π _:S. U` of an atom's kernel constant.
fn head_type(head: &Term) -> &Term {
    match head {
        Term::Const(_, ty) => &ty.0,
        other => other,
    }
}

fn entries(g: &SemCtx) -> Vec<(Name, Term)> {
    g.entries.iter().map(|b| (b.name.clone(), b.ty.clone())).collect()
}

fn all_names(g: &SemCtx, d: &Telescope) -> Vec<Name> {
    checker::context_names(g, d)
}

/// `Γ ⫶ Δ` with the names the printer uses for the flat context.
fn judgment_ctx(g: &SemCtx, d: &Telescope) -> String {
    let names = pretty::distinct(&all_names(g, d));
    let show = |range: std::ops::Range<usize>| {
        if range.is_empty() {
            return "ε".to_string();
        }
        let types: Vec<&Term> = g.entries.iter().chain(&d.entries).map(|b| &b.ty).collect();
        range
            .map(|i| format!("{} : {}", names[i], pretty::term(types[i], &names[..i])))
            .collect::<Vec<_>>()
            .join(", ")
    };
    format!("{} ⫶ {}", show(0..g.len()), show(g.len()..g.len() + d.len()))
}

/// `λδ. body : dom → cod` over `Γ`.
fn morphism(g: &SemCtx, m: &Morphism) -> String {
    let names = g.names();
    let mut inner = names.clone();
    inner.push("δ".into());
    let inner = pretty::distinct(&inner);
    let delta = inner.last().expect("nonempty");
    let mut dom = pretty::term(&m.dom.body, &names);
    if dom.contains(' ') {
        dom = format!("({dom})");
    }
    format!(
        "λ{delta}. {} : {dom} → {}",
        pretty::term(&m.body, &inner),
        pretty::term(&m.cod.body, &names)
    )
}
