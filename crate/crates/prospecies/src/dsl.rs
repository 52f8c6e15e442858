//! A line-oriented text format for pro-species instances and presentations.
//!
//! An instance file has the shape
//!
//! ```text
//! field Q
//! quiver { vertex 1 2; arrow alpha: 1 -> 2; }
//! algebra 1 { quiver { vertex v; arrow x: v -> v; } relations { x*x; } }
//! bimodule alpha { kind: gls(2, 1, 1, 2, 1) }
//! ```
//!
//! Paths are written with arrows joined by `*` in composition order, so
//! `b*a` is `a` followed by `b`. A leading number followed by `*` is a
//! coefficient. Comments run from `//` to the end of the line.

use std::collections::HashSet;
use std::fmt::Write as _;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::algebra::{Algebra, BoundQuiver, PathCombo};
use crate::error::{Error, Result};
use crate::exactla::{Field, Scalar, Vector};
use crate::fixtures::truncated_poly;
use crate::modules::Bimodule;
use crate::presentation::{ArrowOrigin, Presentation, RelationOrigin};
use crate::prospecies::{gls_bimodule, presented_bimodule, ProSpecies};
use crate::quiver::{Path, Quiver};

const SYMBOLS: [&str; 14] = ["->", "{", "}", "(", ")", "[", "]", ":", ";", ",", "*", "+", "-", "/"];

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Ident(String),
    Sym(&'static str),
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    line: usize,
    col: usize,
}

fn is_ident_char(c: char) -> bool {
    c.is_alphanumeric() || matches!(c, '_' | '.' | '#' | '\'')
}

fn lex(text: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    for (ln, line) in text.lines().enumerate() {
        let chars: Vec<char> = line.chars().collect();
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            let col = i + 1;
            if c.is_whitespace() {
                i += 1;
            } else if c == '/' && chars.get(i + 1) == Some(&'/') {
                break;
            } else if is_ident_char(c) {
                let start = i;
                while i < chars.len() && is_ident_char(chars[i]) {
                    i += 1;
                }
                out.push(Token { tok: Tok::Ident(chars[start..i].iter().collect()), line: ln + 1, col });
            } else {
                let rest: String = chars[i..].iter().take(2).collect();
                let sym = SYMBOLS
                    .iter()
                    .find(|s| rest.starts_with(**s))
                    .ok_or_else(|| Error::Parse { line: ln + 1, col, msg: format!("unexpected character '{c}'") })?;
                out.push(Token { tok: Tok::Sym(sym), line: ln + 1, col });
                i += sym.len();
            }
        }
    }
    Ok(out)
}

fn is_number(s: &str) -> bool {
    !s.is_empty() && s.chars().all(|c| c.is_ascii_digit())
}

/// A name together with its position in the source.
#[derive(Clone, Debug)]
struct Name {
    text: String,
    line: usize,
    col: usize,
}

impl Name {
    fn semantic(&self, msg: impl std::fmt::Display) -> Error {
        Error::Semantic(format!("line {}, column {}: {msg}", self.line, self.col))
    }
}

#[derive(Clone, Debug)]
enum Factor {
    Name(Name),
    Summand(usize, Name),
}

#[derive(Clone, Debug)]
struct Term {
    coeff: BigRational,
    factors: Vec<Factor>,
}

type Combo = Vec<Term>;

#[derive(Clone, Debug)]
struct QuiverAst {
    vertices: Vec<Name>,
    arrows: Vec<(Name, Name, Name)>,
}

#[derive(Clone, Debug)]
struct BoundAst {
    quiver: QuiverAst,
    relations: Vec<(Option<Name>, Combo)>,
}

#[derive(Clone, Debug)]
enum KindAst {
    Regular,
    Gls([usize; 5]),
    Presented { summands: Vec<(Name, Name)>, kernel: Vec<Combo> },
}

/// Kind of summand listed in a `module` block.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SummandKind {
    Simple,
    Projective,
}

/// One summand of a `module` block: a simple or indecomposable projective
/// module at a vertex idempotent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleSummand {
    pub kind: SummandKind,
    pub vertex: String,
}

#[derive(Debug, Default)]
struct InstanceAst {
    field: Option<Field>,
    quiver: Option<QuiverAst>,
    algebras: Vec<(Name, BoundAst)>,
    bimodules: Vec<(Name, KindAst)>,
    module: Option<Vec<ModuleSummand>>,
    presentation: Option<BoundAst>,
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
    end: (usize, usize),
}

impl Parser {
    fn new(text: &str) -> Result<Parser> {
        let toks = lex(text)?;
        let lines = text.lines().count().max(1);
        let last = text.lines().last().map_or(0, |l| l.chars().count());
        Ok(Parser { toks, pos: 0, end: (lines, last + 1) })
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.tok)
    }

    fn peek_at(&self, k: usize) -> Option<&Tok> {
        self.toks.get(self.pos + k).map(|t| &t.tok)
    }

    fn here(&self) -> (usize, usize) {
        self.toks.get(self.pos).map_or(self.end, |t| (t.line, t.col))
    }

    fn err(&self, msg: impl Into<String>) -> Error {
        let (line, col) = self.here();
        Error::Parse { line, col, msg: msg.into() }
    }

    fn at_sym(&self, s: &str) -> bool {
        matches!(self.peek(), Some(Tok::Sym(x)) if *x == s)
    }

    fn eat_sym(&mut self, s: &str) -> bool {
        let hit = self.at_sym(s);
        if hit {
            self.pos += 1;
        }
        hit
    }

    fn expect_sym(&mut self, s: &str) -> Result<()> {
        if self.eat_sym(s) {
            Ok(())
        } else {
            Err(self.err(format!("expected '{s}'")))
        }
    }

    fn at_keyword(&self, k: &str) -> bool {
        matches!(self.peek(), Some(Tok::Ident(x)) if x == k)
    }

    fn expect_keyword(&mut self, k: &str) -> Result<()> {
        if self.at_keyword(k) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(format!("expected '{k}'")))
        }
    }

    fn ident(&mut self) -> Result<Name> {
        match self.toks.get(self.pos) {
            Some(Token { tok: Tok::Ident(s), line, col }) => {
                let n = Name { text: s.clone(), line: *line, col: *col };
                self.pos += 1;
                Ok(n)
            }
            _ => Err(self.err("expected an identifier")),
        }
    }

    fn number(&mut self) -> Result<usize> {
        let n = self.ident()?;
        n.text.parse().map_err(|_| Error::Parse { line: n.line, col: n.col, msg: "expected a number".into() })
    }

    fn document(&mut self) -> Result<InstanceAst> {
        let mut doc = InstanceAst::default();
        while self.peek().is_some() {
            let kw = self.ident()?;
            match kw.text.as_str() {
                "field" => {
                    let f = self.ident()?;
                    doc.field = Some(parse_field(&f)?);
                    self.eat_sym(";");
                }
                "quiver" => doc.quiver = Some(self.quiver_block()?),
                "algebra" => {
                    let v = self.ident()?;
                    self.expect_sym("{")?;
                    let b = self.bound_body()?;
                    self.expect_sym("}")?;
                    doc.algebras.push((v, b));
                }
                "bimodule" => {
                    let a = self.ident()?;
                    doc.bimodules.push((a, self.bimodule_block()?));
                }
                "module" => doc.module = Some(self.module_block()?),
                "presentation" => {
                    self.expect_sym("{")?;
                    doc.presentation = Some(self.bound_body()?);
                    self.expect_sym("}")?;
                }
                other => {
                    return Err(Error::Parse { line: kw.line, col: kw.col, msg: format!("unknown statement '{other}'") })
                }
            }
        }
        Ok(doc)
    }

    fn quiver_block(&mut self) -> Result<QuiverAst> {
        self.expect_sym("{")?;
        let mut q = QuiverAst { vertices: Vec::new(), arrows: Vec::new() };
        while !self.eat_sym("}") {
            let kw = self.ident()?;
            match kw.text.as_str() {
                "vertex" => {
                    while !self.eat_sym(";") {
                        q.vertices.push(self.ident()?);
                        self.eat_sym(",");
                    }
                }
                "arrow" => {
                    let a = self.ident()?;
                    if is_number(&a.text) {
                        return Err(Error::Parse { line: a.line, col: a.col, msg: "arrow labels must not be numbers".into() });
                    }
                    self.expect_sym(":")?;
                    let s = self.ident()?;
                    self.expect_sym("->")?;
                    let t = self.ident()?;
                    self.expect_sym(";")?;
                    q.arrows.push((a, s, t));
                }
                other => {
                    return Err(Error::Parse { line: kw.line, col: kw.col, msg: format!("expected 'vertex' or 'arrow', found '{other}'") })
                }
            }
        }
        Ok(q)
    }

    fn bound_body(&mut self) -> Result<BoundAst> {
        self.expect_keyword("quiver")?;
        let quiver = self.quiver_block()?;
        let mut relations = Vec::new();
        if self.at_keyword("relations") {
            self.pos += 1;
            self.expect_sym("{")?;
            while !self.eat_sym("}") {
                let tag = match (self.peek(), self.peek_at(1)) {
                    (Some(Tok::Ident(_)), Some(Tok::Sym(":"))) => {
                        let t = self.ident()?;
                        self.pos += 1;
                        Some(t)
                    }
                    _ => None,
                };
                relations.push((tag, self.combo()?));
                self.expect_sym(";")?;
            }
        }
        Ok(BoundAst { quiver, relations })
    }

    fn combo(&mut self) -> Result<Combo> {
        let mut terms = Vec::new();
        let mut neg = self.eat_sym("-");
        if !neg {
            self.eat_sym("+");
        }
        loop {
            let mut t = self.term()?;
            if neg {
                t.coeff = -t.coeff;
            }
            terms.push(t);
            if self.eat_sym("+") {
                neg = false;
            } else if self.eat_sym("-") {
                neg = true;
            } else {
                return Ok(terms);
            }
        }
    }

    fn factor(&mut self) -> Result<Factor> {
        if self.eat_sym("[") {
            let n = self.ident()?;
            let k = n.text.parse().map_err(|_| Error::Parse { line: n.line, col: n.col, msg: "expected a summand index".into() })?;
            self.expect_sym("]")?;
            Ok(Factor::Summand(k, n))
        } else {
            Ok(Factor::Name(self.ident()?))
        }
    }

    fn term(&mut self) -> Result<Term> {
        let mut coeff = BigRational::from_integer(1.into());
        let mut factors = vec![self.factor()?];
        if let Some(Factor::Name(n)) = factors.first().cloned() {
            if is_number(&n.text) && (self.at_sym("/") || self.at_sym("*")) {
                let num: BigInt = n.text.parse().expect("digits");
                let mut den = BigInt::from(1);
                if self.eat_sym("/") {
                    let d = self.ident()?;
                    if !is_number(&d.text) || d.text.chars().all(|c| c == '0') {
                        return Err(Error::Parse { line: d.line, col: d.col, msg: "expected a nonzero denominator".into() });
                    }
                    den = d.text.parse().expect("digits");
                }
                coeff = BigRational::new(num, den);
                self.expect_sym("*")?;
                factors = vec![self.factor()?];
            }
        }
        while self.eat_sym("*") {
            factors.push(self.factor()?);
        }
        Ok(Term { coeff, factors })
    }

    fn bimodule_block(&mut self) -> Result<KindAst> {
        self.expect_sym("{")?;
        self.expect_keyword("kind")?;
        self.expect_sym(":")?;
        let kw = self.ident()?;
        let kind = match kw.text.as_str() {
            "regular" => KindAst::Regular,
            "gls" => {
                self.expect_sym("(")?;
                let mut xs = [0; 5];
                for (k, x) in xs.iter_mut().enumerate() {
                    if k > 0 {
                        self.expect_sym(",")?;
                    }
                    *x = self.number()?;
                }
                self.expect_sym(")")?;
                KindAst::Gls(xs)
            }
            "presented" => self.presented_body()?,
            other => {
                return Err(Error::Parse {
                    line: kw.line,
                    col: kw.col,
                    msg: format!("expected 'regular', 'gls' or 'presented', found '{other}'"),
                })
            }
        };
        self.eat_sym(";");
        self.expect_sym("}")?;
        Ok(kind)
    }

    fn presented_body(&mut self) -> Result<KindAst> {
        self.expect_sym("{")?;
        let mut summands = Vec::new();
        let mut kernel = Vec::new();
        while !self.eat_sym("}") {
            let kw = self.ident()?;
            self.expect_sym(":")?;
            match kw.text.as_str() {
                "summands" => {
                    while !self.eat_sym(";") {
                        self.expect_sym("(")?;
                        let e = self.ident()?;
                        self.expect_sym(",")?;
                        let f = self.ident()?;
                        self.expect_sym(")")?;
                        self.eat_sym(",");
                        summands.push((e, f));
                    }
                }
                "kernel" => {
                    while !self.eat_sym(";") {
                        kernel.push(self.combo()?);
                        self.eat_sym(",");
                    }
                }
                other => {
                    return Err(Error::Parse { line: kw.line, col: kw.col, msg: format!("expected 'summands' or 'kernel', found '{other}'") })
                }
            }
        }
        Ok(KindAst::Presented { summands, kernel })
    }

    fn module_block(&mut self) -> Result<Vec<ModuleSummand>> {
        self.expect_sym("{")?;
        let mut items = Vec::new();
        while !self.eat_sym("}") {
            let kw = self.ident()?;
            let kind = match kw.text.as_str() {
                "simple" => SummandKind::Simple,
                "projective" => SummandKind::Projective,
                other => {
                    return Err(Error::Parse { line: kw.line, col: kw.col, msg: format!("expected 'simple' or 'projective', found '{other}'") })
                }
            };
            while !self.eat_sym(";") {
                items.push(ModuleSummand { kind, vertex: self.ident()?.text });
                self.eat_sym(",");
            }
        }
        Ok(items)
    }
}

fn parse_field(n: &Name) -> Result<Field> {
    let t = n.text.as_str();
    if t == "Q" {
        return Ok(Field::Rationals);
    }
    let p = t.strip_prefix('F').and_then(|p| p.trim_start_matches('_').parse::<u64>().ok());
    match p {
        Some(p) => Field::prime(p).map_err(|e| n.semantic(e)),
        None => Err(Error::Parse { line: n.line, col: n.col, msg: format!("expected 'Q' or 'F<p>', found '{t}'") }),
    }
}

fn build_quiver(ast: &QuiverAst) -> Result<Quiver> {
    let vs: Vec<&str> = ast.vertices.iter().map(|v| v.text.as_str()).collect();
    let arrows: Vec<(&str, &str, &str)> =
        ast.arrows.iter().map(|(a, s, t)| (a.text.as_str(), s.text.as_str(), t.text.as_str())).collect();
    let first = ast.vertices.first().or(ast.arrows.first().map(|a| &a.0));
    Quiver::new(&vs, &arrows).map_err(|e| match first {
        Some(n) => n.semantic(e),
        None => e,
    })
}

/// The path spelled by `names`; a single vertex label is its trivial path.
fn build_path(q: &Quiver, names: &[&Name]) -> Result<Path> {
    if let [n] = names {
        if q.arrow_index(&n.text).is_none() {
            if let Some(v) = q.vertex_index(&n.text) {
                return Ok(Path::trivial(v));
            }
        }
    }
    let arrows = names
        .iter()
        .map(|n| q.arrow_index(&n.text).ok_or_else(|| n.semantic(format!("unknown arrow '{}'", n.text))))
        .collect::<Result<Vec<_>>>()?;
    let first = names.first().expect("nonempty path");
    Path::from_arrows(q, &arrows).ok_or_else(|| first.semantic("arrows do not compose"))
}

fn scalar(f: Field, q: &BigRational, at: &Name) -> Result<Scalar> {
    f.from_rational(q).map_err(|_| at.semantic("coefficient is not defined in the field"))
}

fn term_name(t: &Term) -> &Name {
    match &t.factors[0] {
        Factor::Name(n) | Factor::Summand(_, n) => n,
    }
}

fn build_combo(f: Field, q: &Quiver, combo: &Combo) -> Result<PathCombo> {
    let mut out: PathCombo = Vec::new();
    for t in combo {
        let names = t
            .factors
            .iter()
            .map(|x| match x {
                Factor::Name(n) => Ok(n),
                Factor::Summand(_, n) => Err(n.semantic("summand markers are only allowed in kernels")),
            })
            .collect::<Result<Vec<_>>>()?;
        let p = build_path(q, &names)?;
        if let Some((_, p0)) = out.first() {
            if (p0.source, p0.target) != (p.source, p.target) {
                return Err(names[0].semantic("terms of a relation must be parallel paths"));
            }
        }
        out.push((scalar(f, &t.coeff, term_name(t))?, p));
    }
    Ok(out)
}

fn build_bound(f: Field, ast: &BoundAst) -> Result<BoundQuiver> {
    let q = build_quiver(&ast.quiver)?;
    let relations = ast.relations.iter().map(|(_, c)| build_combo(f, &q, c)).collect::<Result<Vec<_>>>()?;
    Ok(BoundQuiver::new(q, relations))
}

/// The element of a bound quiver algebra spelled by a path.
fn path_element(alg: &Algebra, names: &[&Name], at: &Name) -> Result<Vector> {
    let red = alg.reducer().ok_or_else(|| at.semantic("vertex algebra has no quiver presentation"))?;
    let p = build_path(red.quiver(), names)?;
    Ok(red.path_vector(&p))
}

fn idempotent_of(alg: &Algebra, n: &Name) -> Result<usize> {
    let bq = alg.bound_quiver().ok_or_else(|| n.semantic("vertex algebra has no quiver presentation"))?;
    bq.quiver.vertex_index(&n.text).ok_or_else(|| n.semantic(format!("unknown vertex '{}'", n.text)))
}

fn plain_names(xs: &[Factor]) -> Result<Vec<&Name>> {
    xs.iter()
        .map(|x| match x {
            Factor::Name(n) => Ok(n),
            Factor::Summand(_, n) => Err(n.semantic("only one summand marker per term")),
        })
        .collect()
}

fn build_presented(
    lt: &Arc<Algebra>,
    ls: &Arc<Algebra>,
    summands: &[(Name, Name)],
    kernel: &[Combo],
    at: &Name,
) -> Result<Bimodule> {
    let f = lt.field();
    let idx = summands
        .iter()
        .map(|(e, g)| Ok((idempotent_of(lt, e)?, idempotent_of(ls, g)?)))
        .collect::<Result<Vec<_>>>()?;
    let mut ker = Vec::new();
    for combo in kernel {
        let mut elems = Vec::new();
        for t in combo {
            let pos = t.factors.iter().position(|x| matches!(x, Factor::Summand(..)));
            let pos = pos.ok_or_else(|| term_name(t).semantic("kernel term needs a summand marker [k]"))?;
            let Factor::Summand(k, kn) = &t.factors[pos] else { unreachable!() };
            if *k >= idx.len() {
                return Err(kn.semantic(format!("summand {k} out of range")));
            }
            let (lnames, rnames) = (plain_names(&t.factors[..pos])?, plain_names(&t.factors[pos + 1..])?);
            let (e, g) = idx[*k];
            let left = if lnames.is_empty() { lt.idempotents()[e].clone() } else { path_element(lt, &lnames, kn)? };
            let right = if rnames.is_empty() { ls.idempotents()[g].clone() } else { path_element(ls, &rnames, kn)? };
            let in_summand = lt.mul(&left, &lt.idempotents()[e]) == left && ls.mul(&ls.idempotents()[g], &right) == right;
            if !in_summand || left.iter().all(Scalar::is_zero) || right.iter().all(Scalar::is_zero) {
                return Err(kn.semantic(format!("kernel term does not lie in summand {k}")));
            }
            let c = scalar(f, &t.coeff, kn)?;
            elems.push((*k, left.iter().map(|x| x * &c).collect(), right));
        }
        ker.push(elems);
    }
    presented_bimodule(lt, ls, &idx, &ker).map_err(|e| at.semantic(e))
}

/// A parsed instance file: the pro-species and the optional module block.
#[derive(Clone, Debug)]
pub struct Instance {
    pub prospecies: ProSpecies,
    pub module: Option<Vec<ModuleSummand>>,
}

fn build_instance(doc: &InstanceAst) -> Result<Instance> {
    let f = doc.field.unwrap_or(Field::Rationals);
    let qast = doc.quiver.as_ref().ok_or_else(|| Error::Semantic("missing quiver block".into()))?;
    let quiver = build_quiver(qast)?;
    let n = quiver.num_vertices();
    let mut blocks: Vec<Option<Arc<Algebra>>> = vec![None; n];
    for (v, b) in &doc.algebras {
        let i = quiver.vertex_index(&v.text).ok_or_else(|| v.semantic(format!("unknown vertex '{}'", v.text)))?;
        if blocks[i].is_some() {
            return Err(v.semantic(format!("second algebra block for vertex '{}'", v.text)));
        }
        let bq = build_bound(f, b)?;
        blocks[i] = Some(Arc::new(Algebra::from_bound_quiver(f, &bq).map_err(|e| v.semantic(e))?));
    }
    let mut kinds: Vec<Option<(&Name, &KindAst)>> = vec![None; quiver.num_arrows()];
    for (a, k) in &doc.bimodules {
        let j = quiver.arrow_index(&a.text).ok_or_else(|| a.semantic(format!("unknown arrow '{}'", a.text)))?;
        if kinds[j].is_some() {
            return Err(a.semantic(format!("second bimodule block for arrow '{}'", a.text)));
        }
        kinds[j] = Some((a, k));
    }
    let mut poly: Vec<Option<(usize, &Name)>> = vec![None; n];
    for (j, k) in kinds.iter().enumerate() {
        if let Some((a, KindAst::Gls([cs, ct, ..]))) = k {
            let ar = quiver.arrow(j);
            for (v, c) in [(ar.source, *cs), (ar.target, *ct)] {
                if c == 0 {
                    return Err(a.semantic("gls needs positive c_s and c_t"));
                }
                match poly[v] {
                    Some((c0, _)) if c0 != c => {
                        return Err(a.semantic(format!("conflicting gls degrees {c0} and {c} at vertex {}", quiver.vertices()[v])))
                    }
                    _ => poly[v] = Some((c, a)),
                }
            }
        }
    }
    let mut algebras = Vec::with_capacity(n);
    for v in 0..n {
        let alg = match (&blocks[v], poly[v]) {
            (Some(a), Some((c, at))) if a.dim() != c => {
                return Err(at.semantic(format!("gls degree {c} does not match the algebra at {}", quiver.vertices()[v])))
            }
            (Some(a), _) => a.clone(),
            (None, Some((c, _))) => truncated_poly(f, c),
            (None, None) => truncated_poly(f, 1),
        };
        algebras.push(alg);
    }
    let mut bimodules = Vec::with_capacity(quiver.num_arrows());
    for (j, k) in kinds.iter().enumerate() {
        let ar = quiver.arrow(j);
        let (lt, ls) = (&algebras[ar.target], &algebras[ar.source]);
        let Some((a, kind)) = k else {
            return Err(Error::Semantic(format!("missing bimodule block for arrow '{}'", ar.label)));
        };
        let b = match kind {
            KindAst::Regular => {
                if **lt != **ls {
                    return Err(a.semantic("regular bimodule needs equal algebras at both ends"));
                }
                Bimodule::regular(lt.clone()).with_algebras(lt.clone(), ls.clone())
            }
            KindAst::Gls([_, _, fst, fts, g]) => gls_bimodule(lt, ls, *fst, *fts, *g).map_err(|e| a.semantic(e))?,
            KindAst::Presented { summands, kernel } => build_presented(lt, ls, summands, kernel, a)?,
        };
        bimodules.push(b);
    }
    let prospecies = ProSpecies::new(quiver, algebras, bimodules)?;
    Ok(Instance { prospecies, module: doc.module.clone() })
}

/// Parses an instance file including its optional `module` block.
pub fn parse_document(text: &str) -> Result<Instance> {
    let doc = Parser::new(text)?.document()?;
    if doc.presentation.is_some() {
        return Err(Error::Semantic("a presentation is not an instance".into()));
    }
    build_instance(&doc)
}

/// Parses an instance file into a pro-species.
pub fn parse_instance(text: &str) -> Result<ProSpecies> {
    Ok(parse_document(text)?.prospecies)
}

/// Index of the vertex idempotent named `label` among the idempotents of the
/// tensor or preprojective algebra: `i` when the algebra at `i` is local, or
/// `i.v` for vertex `v` of the quiver of the algebra at `i`.
pub fn idempotent_index(ps: &ProSpecies, label: &str) -> Result<usize> {
    let q = ps.quiver();
    let (outer, inner) = match q.vertex_index(label) {
        Some(i) => (i, None),
        None => {
            let (o, i) = label.split_once('.').ok_or_else(|| Error::Semantic(format!("unknown vertex '{label}'")))?;
            (q.vertex_index(o).ok_or_else(|| Error::Semantic(format!("unknown vertex '{o}'")))?, Some(i))
        }
    };
    let offset: usize = (0..outer).map(|v| ps.algebra(v).idempotents().len()).sum();
    let alg = ps.algebra(outer);
    let k = match inner {
        None if alg.idempotents().len() == 1 => 0,
        None => return Err(Error::Semantic(format!("vertex '{label}' needs an inner vertex, as in '{label}.v'"))),
        Some(i) => alg
            .bound_quiver()
            .and_then(|bq| bq.quiver.vertex_index(i))
            .ok_or_else(|| Error::Semantic(format!("unknown vertex '{label}'")))?,
    };
    Ok(offset + k)
}

/// Labels of all vertex idempotents, in the order used by [`idempotent_index`].
pub fn idempotent_labels(ps: &ProSpecies) -> Vec<String> {
    let mut out = Vec::new();
    for (v, label) in ps.quiver().vertices().iter().enumerate() {
        let alg = ps.algebra(v);
        if alg.idempotents().len() == 1 {
            out.push(label.clone());
            continue;
        }
        for k in 0..alg.idempotents().len() {
            match alg.bound_quiver() {
                Some(bq) => out.push(format!("{label}.{}", bq.quiver.vertices()[k])),
                None => out.push(format!("{label}.{k}")),
            }
        }
    }
    out
}

fn write_combo(out: &mut String, q: &Quiver, combo: &PathCombo) {
    for (k, (c, p)) in combo.iter().enumerate() {
        let s = c.to_string();
        let (neg, abs) = match s.strip_prefix('-') {
            Some(a) => (true, a.to_string()),
            None => (false, s),
        };
        match (k, neg) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        if abs != "1" {
            let _ = write!(out, "{abs}*");
        }
        let _ = write!(out, "{}", p.display(q));
    }
}

fn write_quiver(out: &mut String, q: &Quiver, indent: &str) {
    let _ = writeln!(out, "{indent}quiver {{");
    let _ = writeln!(out, "{indent}  vertex {};", q.vertices().join(" "));
    for a in q.arrows() {
        let _ = writeln!(out, "{indent}  arrow {}: {} -> {};", a.label, q.vertices()[a.source], q.vertices()[a.target]);
    }
    let _ = writeln!(out, "{indent}}}");
}

/// Renders a presentation in the instance syntax. The inner `quiver` and
/// `relations` blocks are valid bodies of an `algebra` block.
pub fn print_presentation(p: &Presentation, field: Field) -> String {
    let mut out = format!("field {}\npresentation {{\n", field.name());
    write_quiver(&mut out, p.quiver(), "  ");
    out.push_str("  relations {\n");
    for (r, o) in p.relations().iter().zip(&p.relation_origins) {
        let _ = write!(out, "    {}: ", o.tag());
        write_combo(&mut out, p.quiver(), r);
        out.push_str(";\n");
    }
    out.push_str("  }\n}\n");
    out
}

fn arrow_origin(label: &str) -> Result<ArrowOrigin> {
    if let Some((a, k)) = label.rsplit_once('#') {
        let index = k.parse().map_err(|_| Error::Semantic(format!("bad cover index in '{label}'")))?;
        return Ok(ArrowOrigin::Cover { arrow: a.to_string(), index });
    }
    match label.split_once('.') {
        Some((v, a)) => Ok(ArrowOrigin::Vertex { vertex: v.to_string(), arrow: a.to_string() }),
        None => Err(Error::Semantic(format!("arrow '{label}' has no recognisable origin"))),
    }
}

/// Parses the output of [`print_presentation`], recovering arrow and relation
/// origins from labels and tags.
pub fn parse_presentation(text: &str) -> Result<Presentation> {
    let doc = Parser::new(text)?.document()?;
    let body = doc.presentation.as_ref().ok_or_else(|| Error::Semantic("missing presentation block".into()))?;
    let f = doc.field.unwrap_or(Field::Rationals);
    let bound = build_bound(f, body)?;
    let arrow_origins = bound.quiver.arrows().iter().map(|a| arrow_origin(&a.label)).collect::<Result<Vec<_>>>()?;
    let covered: HashSet<&str> = arrow_origins
        .iter()
        .filter_map(|o| match o {
            ArrowOrigin::Cover { arrow, .. } => Some(arrow.as_str()),
            ArrowOrigin::Vertex { .. } => None,
        })
        .collect();
    let mut relation_origins = Vec::new();
    for (tag, combo) in &body.relations {
        let tag = tag.as_ref().ok_or_else(|| {
            let at = term_name(&combo[0]);
            at.semantic("presentation relations need a tag")
        })?;
        let o = if let Some(v) = tag.text.strip_prefix("casimir_") {
            RelationOrigin::Casimir(v.to_string())
        } else if let Some(x) = tag.text.strip_prefix("R_") {
            if covered.contains(x) {
                RelationOrigin::Arrow(x.to_string())
            } else {
                RelationOrigin::Vertex(x.to_string())
            }
        } else {
            return Err(tag.semantic(format!("unknown relation tag '{}'", tag.text)));
        };
        relation_origins.push(o);
    }
    Ok(Presentation { bound, arrow_origins, relation_origins })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::presentation::{present_preprojective, present_tensor_algebra};
    use crate::prospecies::tensor_algebra;

    const FIX_A: &str = include_str!("../../../instances/fix_a.prosp");
    const FIX_B: &str = include_str!("../../../instances/fix_b.prosp");
    const FIX_C: &str = include_str!("../../../instances/fix_c.prosp");
    const FIX_C_PRESENTED: &str = include_str!("../../../instances/fix_c_presented.prosp");
    const FIX_A_SIMPLE: &str = include_str!("../../../instances/fix_a_simple.prosp");

    #[test]
    fn fixture_files_match_fixtures() {
        let f = Field::Rationals;
        for (text, fix) in [(FIX_A, fixtures::fix_a(f)), (FIX_B, fixtures::fix_b(f)), (FIX_C, fixtures::fix_c(f))] {
            let ps = parse_instance(text).unwrap();
            assert_eq!(ps.valuation().unwrap(), fix.valuation().unwrap());
            let (a, b) = (tensor_algebra(&Arc::new(ps)).unwrap(), tensor_algebra(&Arc::new(fix)).unwrap());
            assert_eq!(a.graded_dims(), b.graded_dims());
        }
    }

    #[test]
    fn gls_file_has_two_dimensional_bimodule() {
        let ps = parse_instance(FIX_C).unwrap();
        assert_eq!(ps.bimodule(0).dim(), 2);
        assert_eq!(ps.algebra(0).dim(), 2);
    }

    #[test]
    fn presented_bimodule_matches_gls() {
        let a = parse_instance(FIX_C_PRESENTED).unwrap();
        let b = parse_instance(FIX_C).unwrap();
        assert_eq!(a.bimodule(0).dim(), 2);
        assert_eq!(a.valuation().unwrap(), b.valuation().unwrap());
    }

    #[test]
    fn kernel_term_outside_its_summand_is_rejected() {
        let text = FIX_B.replace(
            "bimodule alpha { kind: regular }",
            "bimodule alpha { kind: presented { summands: (2, 1); kernel: a*[0]; } }",
        );
        match parse_instance(&text) {
            Err(Error::Semantic(m)) => assert!(m.contains("does not lie in summand 0"), "{m}"),
            other => panic!("expected a semantic error, got {other:?}"),
        }
    }

    #[test]
    fn syntax_errors_carry_positions() {
        let err = parse_instance("field Q\nquiver {\n  vertex 1 2;\n  arrow alpha 1 -> 2;\n}\n").unwrap_err();
        assert_eq!(err, Error::Parse { line: 4, col: 15, msg: "expected ':'".into() });
        let err = parse_instance("field Q\nquiver { vertex 1; } ?").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, col: 22, .. }));
        let err = parse_instance("field F6\nquiver { vertex 1; }").unwrap_err();
        assert!(matches!(err, Error::Semantic(_)));
    }

    #[test]
    fn missing_bimodule_and_unknown_names_are_semantic() {
        assert!(matches!(parse_instance("quiver { vertex 1 2; arrow a: 1 -> 2; }"), Err(Error::Semantic(_))));
        let text = "quiver { vertex 1; }\nalgebra 3 { quiver { vertex v; } }";
        assert!(matches!(parse_instance(text), Err(Error::Semantic(m)) if m.starts_with("line 2, column 9")));
    }

    #[test]
    fn prime_field_and_rational_coefficients() {
        let text = "field F5\nquiver { vertex 1; }\nalgebra 1 { quiver { vertex v; arrow x: v -> v; arrow y: v -> v; }\n  relations { x*x; y*y; x*y - 3/2*y*x; } }";
        let ps = parse_instance(text).unwrap();
        assert_eq!(ps.field(), Field::Prime(5));
        let bq = ps.algebra(0).bound_quiver().unwrap();
        assert_eq!(bq.relations[2][1].0, Field::Prime(5).from_ratio(-3, 2).unwrap());
        assert_eq!(ps.algebra(0).dim(), 4);
    }

    #[test]
    fn module_block_and_idempotent_labels() {
        let inst = parse_document(FIX_A_SIMPLE).unwrap();
        assert_eq!(inst.module, Some(vec![ModuleSummand { kind: SummandKind::Simple, vertex: "1".into() }]));
        let b = parse_instance(FIX_B).unwrap();
        assert_eq!(idempotent_index(&b, "2.1").unwrap(), 2);
        assert!(idempotent_index(&b, "2").is_err());
        assert_eq!(idempotent_index(&inst.prospecies, "2").unwrap(), 1);
        assert_eq!(idempotent_index(&inst.prospecies, "2.v").unwrap(), 1);
        let labels = idempotent_labels(&b);
        assert_eq!(labels, ["1.1", "1.2", "2.1", "2.2"]);
        for (k, l) in labels.iter().enumerate() {
            assert_eq!(idempotent_index(&b, l).unwrap(), k);
        }
    }

    fn presentations() -> Vec<Presentation> {
        let f = Field::Rationals;
        let mut out = Vec::new();
        for ps in [fixtures::fix_a(f), fixtures::fix_b(f), fixtures::fix_c(f), fixtures::gls(f, 2, 4, 2, 1, 1).unwrap()] {
            let ps = Arc::new(ps);
            out.push(present_tensor_algebra(&ps).unwrap());
            out.push(present_preprojective(&ps).unwrap());
        }
        out
    }

    #[test]
    fn printed_presentations_parse_back() {
        for p in presentations() {
            let text = print_presentation(&p, Field::Rationals);
            assert_eq!(parse_presentation(&text).unwrap(), p, "{text}");
        }
    }

    #[test]
    fn printed_presentation_is_an_algebra_block() {
        let f = Field::Rationals;
        for ps in [fixtures::fix_b(f), fixtures::fix_c(f)] {
            let p = present_tensor_algebra(&ps).unwrap();
            let text = print_presentation(&p, f);
            let body = text.split_once("presentation {").unwrap().1;
            let inst = format!("quiver {{ vertex 1; }}\nalgebra 1 {{{body}");
            let back = parse_instance(&inst).unwrap();
            assert_eq!(back.algebra(0).dim(), p.algebra(f).unwrap().dim());
        }
    }

    #[test]
    fn commutative_square_text() {
        let p = present_tensor_algebra(&parse_instance(FIX_B).unwrap()).unwrap();
        let text = print_presentation(&p, Field::Rationals);
        assert!(text.contains("vertex 1.1 1.2 2.1 2.2;"), "{text}");
        assert_eq!(text.matches("R_alpha:").count(), 1, "{text}");
    }
}
