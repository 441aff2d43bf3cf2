//! The line-oriented fixture format.
//!
//! ```text
//! # comment
//! monoid twin
//! elements 0 1 e c x1 x2
//! zero 0
//! one 1
//! e e
//! order 0 e c
//! row 0: 0 0 0 0 0 0
//! ...
//! relation merge: classes {x1 x2}
//! section s: c->x1
//! path: (x1 1 x2)
//! map twin -> twin as id: 0 1 e c x1 x2
//! semiring R
//! elements ...
//! add <id>: ...
//! row <id>: ...
//! val phi R -> twin: ...
//! ```
//!
//! Relations, sections and paths belong to the most recent monoid. Relation
//! lines list only the classes with two or more members.

use std::collections::BTreeSet;
use std::sync::Arc;

use thiserror::Error;

use crate::equalizers::{Label, SPath};
use crate::isolation::Case;
use crate::monoid::{validate_monoid, ElementId, MonoidRef, MonoidSpec, SupertropicalMonoid};
use crate::partition::Partition;
use crate::transmission::Transmission;
use crate::valuation::{FiniteSemiring, MSupervaluation};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("{line}:{column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct Token {
    text: String,
    col: usize,
}

fn is_punct(c: char) -> bool {
    matches!(c, '{' | '}' | '(' | ')' | ':')
}

fn lex(line: &str) -> Vec<Token> {
    let line = line.split('#').next().unwrap_or("");
    let chars: Vec<char> = line.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if is_punct(c) {
            out.push(Token { text: c.to_string(), col: i + 1 });
            i += 1;
        } else if c == '-' && chars.get(i + 1) == Some(&'>') {
            out.push(Token { text: "->".into(), col: i + 1 });
            i += 2;
        } else {
            let start = i;
            while i < chars.len()
                && !chars[i].is_whitespace()
                && !is_punct(chars[i])
                && !(chars[i] == '-' && chars.get(i + 1) == Some(&'>'))
            {
                i += 1;
            }
            out.push(Token { text: chars[start..i].iter().collect(), col: start + 1 });
        }
    }
    out
}

/// Whether a name survives a round trip through the lexer.
pub fn is_valid_name(name: &str) -> bool {
    !name.is_empty()
        && !name.contains("->")
        && !name.chars().any(|c| c.is_whitespace() || is_punct(c) || c == '#')
}

#[derive(Clone, Debug)]
pub struct NamedRelation {
    pub monoid: String,
    pub name: String,
    pub partition: Partition,
}

#[derive(Clone, Debug)]
pub struct NamedSection {
    pub monoid: String,
    pub name: String,
    /// `(ghost, value)` pairs as written.
    pub pairs: Vec<(ElementId, ElementId)>,
}

#[derive(Clone, Debug)]
pub struct NamedMap {
    pub name: String,
    pub source: MonoidRef,
    pub target: MonoidRef,
    pub images: Vec<ElementId>,
}

impl NamedMap {
    pub fn transmission(&self) -> Result<Transmission, crate::transmission::TransmissionError> {
        Transmission::new(self.source.clone(), self.target.clone(), self.images.clone())
    }
}

#[derive(Clone, Debug)]
pub struct NamedValuation {
    pub name: String,
    pub source: Arc<FiniteSemiring>,
    pub target: MonoidRef,
    pub images: Vec<ElementId>,
}

impl NamedValuation {
    pub fn supervaluation(&self) -> Result<MSupervaluation, crate::valuation::ValuationError> {
        MSupervaluation::new(self.source.clone(), self.target.clone(), self.images.clone())
    }
}

#[derive(Clone, Debug)]
pub struct NamedPath {
    pub monoid: String,
    pub path: SPath,
}

/// Everything loaded from fixture files.
#[derive(Clone, Debug, Default)]
pub struct Workspace {
    pub monoids: Vec<MonoidRef>,
    pub relations: Vec<NamedRelation>,
    pub sections: Vec<NamedSection>,
    pub maps: Vec<NamedMap>,
    pub semirings: Vec<Arc<FiniteSemiring>>,
    pub valuations: Vec<NamedValuation>,
    pub paths: Vec<NamedPath>,
}

impl Workspace {
    pub fn monoid(&self, name: &str) -> Option<&MonoidRef> {
        self.monoids.iter().find(|m| m.name() == name)
    }

    pub fn semiring(&self, name: &str) -> Option<&Arc<FiniteSemiring>> {
        self.semirings.iter().find(|r| r.name() == name)
    }

    pub fn map(&self, name: &str) -> Option<&NamedMap> {
        self.maps.iter().find(|m| m.name == name)
    }

    /// Parses `text` and adds its objects.
    pub fn load_str(&mut self, text: &str) -> Result<(), ParseError> {
        Parser { ws: self, current: None, block: None }.run(text)
    }
}

pub fn parse(text: &str) -> Result<Workspace, ParseError> {
    let mut ws = Workspace::default();
    ws.load_str(text)?;
    Ok(ws)
}

#[derive(Default)]
struct RawBlock {
    line: usize,
    name: String,
    elements: Vec<String>,
    zero: Option<String>,
    one: Option<String>,
    e: Option<String>,
    order: Option<Vec<String>>,
    rows: Vec<Option<Vec<String>>>,
    add: Vec<Option<Vec<String>>>,
}

enum Block {
    Monoid(RawBlock),
    Semiring(RawBlock),
}

struct Parser<'a> {
    ws: &'a mut Workspace,
    /// The monoid that relations, sections and paths refer to.
    current: Option<MonoidRef>,
    block: Option<Block>,
}

fn err(line: usize, column: usize, message: impl Into<String>) -> ParseError {
    ParseError { line, column, message: message.into() }
}

struct Line<'t> {
    no: usize,
    toks: &'t [Token],
    pos: usize,
    end_col: usize,
}

impl<'t> Line<'t> {
    fn col(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end_col, |t| t.col)
    }

    fn next(&mut self, what: &str) -> Result<&'t Token, ParseError> {
        let t = self.toks.get(self.pos).ok_or_else(|| err(self.no, self.end_col, format!("expected {what}")))?;
        self.pos += 1;
        Ok(t)
    }

    fn name(&mut self, what: &str) -> Result<&'t Token, ParseError> {
        let t = self.next(what)?;
        if !is_valid_name(&t.text) {
            return Err(err(self.no, t.col, format!("expected {what}, found `{}`", t.text)));
        }
        Ok(t)
    }

    fn expect(&mut self, text: &str) -> Result<(), ParseError> {
        let col = self.col();
        match self.toks.get(self.pos) {
            Some(t) if t.text == text => {
                self.pos += 1;
                Ok(())
            }
            Some(t) => Err(err(self.no, col, format!("expected `{text}`, found `{}`", t.text))),
            None => Err(err(self.no, col, format!("expected `{text}`"))),
        }
    }

    fn peek(&self) -> Option<&'t str> {
        self.toks.get(self.pos).map(|t| t.text.as_str())
    }

    fn rest_names(&mut self, what: &str) -> Result<Vec<&'t Token>, ParseError> {
        let mut out = Vec::new();
        while self.pos < self.toks.len() {
            out.push(self.name(what)?);
        }
        Ok(out)
    }

    fn done(&self) -> Result<(), ParseError> {
        match self.toks.get(self.pos) {
            Some(t) => Err(err(self.no, t.col, format!("unexpected `{}`", t.text))),
            None => Ok(()),
        }
    }
}

fn element(u: &SupertropicalMonoid, line: &Line, t: &Token) -> Result<ElementId, ParseError> {
    u.lookup(&t.text)
        .map_err(|_| err(line.no, t.col, format!("unknown element `{}` of {}", t.text, u.name())))
}

impl Parser<'_> {
    fn run(mut self, text: &str) -> Result<(), ParseError> {
        let mut last = 0;
        for (i, raw) in text.lines().enumerate() {
            let toks = lex(raw);
            last = i + 1;
            if toks.is_empty() {
                continue;
            }
            let mut line = Line { no: i + 1, toks: &toks, pos: 0, end_col: raw.chars().count() + 1 };
            self.line(&mut line)?;
        }
        self.finish_block(last)
    }

    fn line(&mut self, line: &mut Line) -> Result<(), ParseError> {
        let head = line.next("keyword")?;
        match head.text.as_str() {
            "monoid" | "semiring" => {
                self.finish_block(line.no)?;
                let name = line.name("a name")?;
                line.done()?;
                let raw = RawBlock { line: line.no, name: name.text.clone(), ..RawBlock::default() };
                self.block = Some(if head.text == "monoid" { Block::Monoid(raw) } else { Block::Semiring(raw) });
                Ok(())
            }
            "elements" | "zero" | "one" | "e" | "order" | "row" | "add" => self.block_line(&head.text, head.col, line),
            "relation" | "section" | "path" => {
                self.finish_block(line.no)?;
                let u = self
                    .current
                    .clone()
                    .ok_or_else(|| err(line.no, head.col, format!("`{}` outside a monoid", head.text)))?;
                match head.text.as_str() {
                    "relation" => self.relation(&u, line),
                    "section" => self.section(&u, line),
                    _ => self.path(&u, line),
                }
            }
            "map" => {
                self.finish_block(line.no)?;
                self.map(line)
            }
            "val" => {
                self.finish_block(line.no)?;
                self.valuation(line)
            }
            other => Err(err(line.no, head.col, format!("unknown keyword `{other}`"))),
        }
    }

    fn block_line(&mut self, key: &str, col: usize, line: &mut Line) -> Result<(), ParseError> {
        let (raw, is_monoid) = match self.block.as_mut() {
            Some(Block::Monoid(r)) => (r, true),
            Some(Block::Semiring(r)) => (r, false),
            None => return Err(err(line.no, col, format!("`{key}` outside a monoid or semiring block"))),
        };
        let single = |line: &mut Line| -> Result<String, ParseError> {
            let t = line.name("an element")?;
            line.done()?;
            Ok(t.text.clone())
        };
        match key {
            "elements" => {
                let names: Vec<String> = line.rest_names("an element name")?.iter().map(|t| t.text.clone()).collect();
                let distinct: BTreeSet<&String> = names.iter().collect();
                if names.is_empty() || distinct.len() != names.len() {
                    return Err(err(line.no, col, "element names must be nonempty and distinct"));
                }
                raw.rows = vec![None; names.len()];
                raw.add = vec![None; names.len()];
                raw.elements = names;
            }
            "zero" => raw.zero = Some(single(line)?),
            "one" => raw.one = Some(single(line)?),
            "e" if is_monoid => raw.e = Some(single(line)?),
            "order" if is_monoid => {
                raw.order = Some(line.rest_names("a ghost")?.iter().map(|t| t.text.clone()).collect());
            }
            "row" | "add" => {
                if key == "add" && is_monoid {
                    return Err(err(line.no, col, "`add` rows belong to semiring blocks"));
                }
                let id = line.name("an element")?;
                line.expect(":")?;
                let row_col = line.col();
                let entries: Vec<String> = line.rest_names("an element")?.iter().map(|t| t.text.clone()).collect();
                let idx = raw
                    .elements
                    .iter()
                    .position(|n| *n == id.text)
                    .ok_or_else(|| err(line.no, id.col, format!("unknown element `{}`", id.text)))?;
                if entries.len() != raw.elements.len() {
                    return Err(err(
                        line.no,
                        row_col,
                        format!("row has {} entries, expected {}", entries.len(), raw.elements.len()),
                    ));
                }
                let slot = if key == "row" { &mut raw.rows[idx] } else { &mut raw.add[idx] };
                if slot.is_some() {
                    return Err(err(line.no, id.col, format!("duplicate {key} for `{}`", id.text)));
                }
                *slot = Some(entries);
            }
            _ => return Err(err(line.no, col, format!("`{key}` is not allowed here"))),
        }
        Ok(())
    }

    fn finish_block(&mut self, line_no: usize) -> Result<(), ParseError> {
        let Some(block) = self.block.take() else { return Ok(()) };
        let (raw, is_monoid) = match block {
            Block::Monoid(r) => (r, true),
            Block::Semiring(r) => (r, false),
        };
        let at = |msg: String| err(raw.line, 1, msg);
        let n = raw.elements.len();
        if n == 0 {
            return Err(at(format!("block `{}` has no elements", raw.name)));
        }
        let id = |name: &str| -> Result<ElementId, ParseError> {
            raw.elements
                .iter()
                .position(|x| x == name)
                .map(ElementId)
                .ok_or_else(|| at(format!("unknown element `{name}`")))
        };
        let required = |v: &Option<String>, what: &str| -> Result<ElementId, ParseError> {
            id(v.as_deref().ok_or_else(|| at(format!("missing `{what}` line")))?)
        };
        let table = |rows: &[Option<Vec<String>>], what: &str| -> Result<Vec<ElementId>, ParseError> {
            let mut out = Vec::with_capacity(n * n);
            for (i, r) in rows.iter().enumerate() {
                let r = r.as_ref().ok_or_else(|| at(format!("missing {what} for `{}`", raw.elements[i])))?;
                for x in r {
                    out.push(id(x)?);
                }
            }
            Ok(out)
        };
        let zero = required(&raw.zero, "zero")?;
        let one = required(&raw.one, "one")?;
        let mul = table(&raw.rows, "row")?;
        if is_monoid {
            if self.ws.monoid(&raw.name).is_some() {
                return Err(at(format!("duplicate monoid `{}`", raw.name)));
            }
            let order = raw
                .order
                .as_ref()
                .ok_or_else(|| at("missing `order` line".into()))?
                .iter()
                .map(|x| id(x))
                .collect::<Result<Vec<_>, _>>()?;
            let spec = MonoidSpec {
                name: raw.name.clone(),
                names: raw.elements.clone(),
                table: mul,
                zero,
                one,
                e: required(&raw.e, "e")?,
                ghost_order: order,
            };
            let u = validate_monoid(spec).map_err(|e| at(format!("monoid `{}`: {e}", raw.name)))?;
            let u: MonoidRef = Arc::new(u);
            self.ws.monoids.push(u.clone());
            self.current = Some(u);
        } else {
            if self.ws.semiring(&raw.name).is_some() {
                return Err(at(format!("duplicate semiring `{}`", raw.name)));
            }
            let add = table(&raw.add, "add row")?;
            let r = FiniteSemiring::new(raw.name.clone(), raw.elements.clone(), add, mul, zero, one)
                .map_err(|e| at(format!("semiring `{}`: {e}", raw.name)))?;
            self.ws.semirings.push(Arc::new(r));
        }
        let _ = line_no;
        Ok(())
    }

    fn relation(&mut self, u: &MonoidRef, line: &mut Line) -> Result<(), ParseError> {
        let name = line.name("a relation name")?;
        line.expect(":")?;
        line.expect("classes")?;
        let mut classes: Vec<Vec<ElementId>> = Vec::new();
        let mut seen = BTreeSet::new();
        while line.peek().is_some() {
            line.expect("{")?;
            let mut class = Vec::new();
            while line.peek() != Some("}") {
                let t = line.name("an element")?;
                let x = element(u, line, t)?;
                if !seen.insert(x) {
                    return Err(err(line.no, t.col, format!("`{}` appears twice", t.text)));
                }
                class.push(x);
            }
            line.expect("}")?;
            classes.push(class);
        }
        let partition = Partition::from_classes(u.size(), &classes)
            .ok_or_else(|| err(line.no, name.col, "classes do not form a partition"))?;
        self.ws.relations.push(NamedRelation { monoid: u.name().into(), name: name.text.clone(), partition });
        Ok(())
    }

    fn section(&mut self, u: &MonoidRef, line: &mut Line) -> Result<(), ParseError> {
        let name = line.name("a section name")?;
        line.expect(":")?;
        let mut pairs = Vec::new();
        while line.peek().is_some() {
            let a = line.name("a ghost")?;
            line.expect("->")?;
            let x = line.name("an element")?;
            pairs.push((element(u, line, a)?, element(u, line, x)?));
        }
        self.ws.sections.push(NamedSection { monoid: u.name().into(), name: name.text.clone(), pairs });
        Ok(())
    }

    fn path(&mut self, u: &MonoidRef, line: &mut Line) -> Result<(), ParseError> {
        line.expect(":")?;
        let mut labels = Vec::new();
        while line.peek().is_some() {
            line.expect("(")?;
            let mut trio = [ElementId(0); 3];
            for slot in &mut trio {
                let t = line.name("an element")?;
                *slot = element(u, line, t)?;
            }
            line.expect(")")?;
            labels.push(Label { s: trio[0], u: trio[1], t: trio[2] });
        }
        self.ws.paths.push(NamedPath { monoid: u.name().into(), path: SPath::new(labels) });
        Ok(())
    }

    fn monoid_ref(&self, line: &Line, t: &Token) -> Result<MonoidRef, ParseError> {
        self.ws
            .monoid(&t.text)
            .cloned()
            .ok_or_else(|| err(line.no, t.col, format!("unknown monoid `{}`", t.text)))
    }

    fn images(line: &mut Line, u: &SupertropicalMonoid, expected: usize) -> Result<Vec<ElementId>, ParseError> {
        let col = line.col();
        let toks = line.rest_names("an element")?;
        if toks.len() != expected {
            return Err(err(line.no, col, format!("{} images given, expected {expected}", toks.len())));
        }
        toks.iter().map(|t| element(u, line, t)).collect()
    }

    fn map(&mut self, line: &mut Line) -> Result<(), ParseError> {
        let src = line.name("a source monoid")?;
        let source = self.monoid_ref(line, src)?;
        line.expect("->")?;
        let tgt = line.name("a target monoid")?;
        let target = self.monoid_ref(line, tgt)?;
        let name = if line.peek() == Some("as") {
            line.pos += 1;
            line.name("a map name")?.text.clone()
        } else {
            format!("{}>{}", src.text, tgt.text)
        };
        line.expect(":")?;
        let images = Self::images(line, &target, source.size())?;
        if self.ws.map(&name).is_some() {
            return Err(err(line.no, src.col, format!("duplicate map `{name}`")));
        }
        self.ws.maps.push(NamedMap { name, source, target, images });
        Ok(())
    }

    fn valuation(&mut self, line: &mut Line) -> Result<(), ParseError> {
        let name = line.name("a valuation name")?;
        let r = line.name("a semiring")?;
        let source = self
            .ws
            .semiring(&r.text)
            .cloned()
            .ok_or_else(|| err(line.no, r.col, format!("unknown semiring `{}`", r.text)))?;
        line.expect("->")?;
        let tgt = line.name("a target monoid")?;
        let target = self.monoid_ref(line, tgt)?;
        line.expect(":")?;
        let images = Self::images(line, &target, source.size())?;
        self.ws.valuations.push(NamedValuation { name: name.text.clone(), source, target, images });
        Ok(())
    }
}

fn join_names<'a>(names: impl IntoIterator<Item = &'a str>) -> String {
    names.into_iter().collect::<Vec<_>>().join(" ")
}

/// Canonical text of a monoid block.
pub fn write_monoid(u: &SupertropicalMonoid) -> String {
    let nm = |x: ElementId| u.element_name(x);
    let mut out = format!("monoid {}\n", u.name());
    out.push_str(&format!("elements {}\n", join_names(u.element_names().iter().map(String::as_str))));
    out.push_str(&format!("zero {}\none {}\ne {}\n", nm(u.zero()), nm(u.one()), nm(u.e())));
    out.push_str(&format!("order {}\n", join_names(u.ghost_order().iter().map(|&a| nm(a)))));
    for x in u.elements() {
        out.push_str(&format!("row {}: {}\n", nm(x), join_names(u.elements().map(|y| nm(u.mul(x, y))))));
    }
    out
}

pub fn write_semiring(r: &FiniteSemiring) -> String {
    let nm = |x: ElementId| r.element_name(x);
    let mut out = format!("semiring {}\n", r.name());
    out.push_str(&format!("elements {}\n", join_names(r.element_names().iter().map(String::as_str))));
    out.push_str(&format!("zero {}\none {}\n", nm(r.zero()), nm(r.one())));
    for x in r.elements() {
        out.push_str(&format!("add {}: {}\n", nm(x), join_names(r.elements().map(|y| nm(r.add(x, y))))));
    }
    for x in r.elements() {
        out.push_str(&format!("row {}: {}\n", nm(x), join_names(r.elements().map(|y| nm(r.mul(x, y))))));
    }
    out
}

/// `classes {a b} ...`, listing only classes with two or more members.
pub fn write_classes(u: &SupertropicalMonoid, p: &Partition) -> String {
    let mut out = String::from("classes");
    for class in p.classes().into_iter().filter(|c| c.len() > 1) {
        out.push_str(&format!(" {{{}}}", join_names(class.iter().map(|&x| u.element_name(x)))));
    }
    out
}

pub fn write_relation(u: &SupertropicalMonoid, name: &str, p: &Partition) -> String {
    format!("relation {name}: {}\n", write_classes(u, p))
}

pub fn write_section(u: &SupertropicalMonoid, name: &str, pairs: &[(ElementId, ElementId)]) -> String {
    let body: Vec<String> =
        pairs.iter().map(|&(a, x)| format!("{}->{}", u.element_name(a), u.element_name(x))).collect();
    if body.is_empty() {
        format!("section {name}:\n")
    } else {
        format!("section {name}: {}\n", body.join(" "))
    }
}

pub fn write_path(u: &SupertropicalMonoid, p: &SPath) -> String {
    let body: Vec<String> = p
        .labels
        .iter()
        .map(|l| format!("({} {} {})", u.element_name(l.s), u.element_name(l.u), u.element_name(l.t)))
        .collect();
    format!("path: {}\n", body.join(" "))
}

pub fn write_map(name: &str, t: &Transmission) -> String {
    let tgt = t.target();
    format!(
        "map {} -> {} as {name}: {}\n",
        t.source().name(),
        tgt.name(),
        join_names(t.map().iter().map(|&y| tgt.element_name(y)))
    )
}

pub fn write_valuation(name: &str, phi: &MSupervaluation) -> String {
    let tgt = &phi.target;
    format!(
        "val {name} {} -> {}: {}\n",
        phi.source.name(),
        tgt.name(),
        join_names(phi.map().iter().map(|&y| tgt.element_name(y)))
    )
}

/// Inverse of [`crate::isolation::IsolationReport::render`] for the case and witness.
pub fn parse_isolation(u: &SupertropicalMonoid, text: &str) -> Result<(ElementId, Case, Option<Vec<ElementId>>), ParseError> {
    let toks = lex(text);
    let mut line = Line { no: 1, toks: &toks, pos: 0, end_col: text.chars().count() + 1 };
    line.expect("isolation")?;
    let field = |line: &mut Line, key: &str| -> Result<String, ParseError> {
        let t = line.next(key)?;
        t.text
            .strip_prefix(&format!("{key}="))
            .map(str::to_string)
            .ok_or_else(|| err(1, t.col, format!("expected `{key}=`")))
    };
    let x_name = field(&mut line, "x")?;
    let x = u.lookup(&x_name).map_err(|_| err(1, 1, format!("unknown element `{x_name}`")))?;
    let case = match field(&mut line, "case")?.as_str() {
        "I" => Case::I,
        "II" => Case::II,
        other => return Err(err(1, 1, format!("unknown case `{other}`"))),
    };
    let w = line.next("witness")?;
    if w.text != "witness=" {
        return Err(err(1, w.col, "expected `witness=`"));
    }
    line.expect("(")?;
    let mut witness = Vec::new();
    while line.peek() != Some(")") {
        let t = line.name("an element")?;
        witness.push(element(u, &line, t)?);
    }
    line.expect(")")?;
    line.done()?;
    Ok((x, case, if witness.is_empty() { None } else { Some(witness) }))
}
