//! The `.hla` workspace format.
//!
//! ```text
//! // a 2-dimensional Hom-Lie algebra and a module over it
//! algebra L { basis e, f; bracket [e,f] = e; alpha e -> e; f -> e + f; }
//! module M over L { basis m; alpha id; action f . m = -m; }
//! map pi : L -> L { e -> e; f -> f; }
//! cochain w over M degree 2 { [e,f] -> 3/2*m; }
//! ```
//!
//! Statements end with `;`. The keywords `bracket`, `alpha` and `action` in front of a
//! statement are optional. Missing brackets, twist images, actions, map images and
//! cochain values are zero; `[y,x]` is filled in by skew-symmetry. Scalars are integers
//! or fractions `p/q`, optionally followed by `*`.

use std::collections::{BTreeMap, HashMap};
use std::fmt::{self, Write as _};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::action::HomAction;
use crate::algebra::HomLie;
use crate::cohomology::{wedge_basis, Cochain};
use crate::exactla::Matrix;
use crate::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Position {
    pub line: usize,
    pub column: usize,
}

impl fmt::Display for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.column)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("syntax error: {0}")]
    Syntax(String),
    #[error("floating-point literal `{0}` (use an integer or p/q)")]
    FloatLiteral(String),
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("duplicate basis name `{0}`")]
    DuplicateBasis(String),
    #[error("duplicate object name `{0}`")]
    DuplicateName(String),
    #[error("unknown identifier `{0}`")]
    UnknownIdentifier(String),
    #[error("conflicting assignment for {0}")]
    ConflictingAssignment(String),
    #[error("conflicting bracket assignment for [{0},{1}]")]
    ConflictingBracket(String, String),
    #[error("{0}")]
    Structure(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("{position}: {kind}")]
pub struct ParseError {
    pub position: Position,
    pub kind: ParseErrorKind,
}

fn err<T>(position: Position, kind: ParseErrorKind) -> Result<T, ParseError> {
    Err(ParseError { position, kind })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NamedAlgebra {
    pub name: String,
    pub basis: Vec<String>,
    pub algebra: HomLie<Rational>,
}

/// A module (or, when it declares brackets, an action on a Hom-Lie algebra).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NamedModule {
    pub name: String,
    pub over: String,
    pub basis: Vec<String>,
    pub action: HomAction<Rational>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NamedMap {
    pub name: String,
    pub source: String,
    pub target: String,
    pub matrix: Matrix<Rational>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NamedCochain {
    pub name: String,
    pub module: String,
    pub cochain: Cochain<Rational>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Workspace {
    pub algebras: Vec<NamedAlgebra>,
    pub modules: Vec<NamedModule>,
    pub maps: Vec<NamedMap>,
    pub cochains: Vec<NamedCochain>,
}

impl Workspace {
    pub fn algebra(&self, name: &str) -> Option<&NamedAlgebra> {
        self.algebras.iter().find(|a| a.name == name)
    }

    pub fn module(&self, name: &str) -> Option<&NamedModule> {
        self.modules.iter().find(|m| m.name == name)
    }

    pub fn map(&self, name: &str) -> Option<&NamedMap> {
        self.maps.iter().find(|m| m.name == name)
    }

    pub fn cochain(&self, name: &str) -> Option<&NamedCochain> {
        self.cochains.iter().find(|c| c.name == name)
    }

    /// Basis names of an algebra or of a module's underlying space.
    pub fn basis_of(&self, name: &str) -> Option<&[String]> {
        self.algebra(name)
            .map(|a| a.basis.as_slice())
            .or_else(|| self.module(name).map(|m| m.basis.as_slice()))
    }

    /// The Hom-Lie algebra named `name`, or the underlying algebra of a module.
    pub fn structure(&self, name: &str) -> Option<&HomLie<Rational>> {
        self.algebra(name)
            .map(|a| &a.algebra)
            .or_else(|| self.module(name).map(|m| m.action.space()))
    }
}

// ---------------------------------------------------------------------------
// Lexer

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(BigInt),
    Slash,
    Star,
    Plus,
    Minus,
    LBracket,
    RBracket,
    LBrace,
    RBrace,
    Comma,
    Semi,
    Colon,
    Arrow,
    Dot,
    Eq,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::Int(n) => write!(f, "`{n}`"),
            Tok::Slash => f.write_str("`/`"),
            Tok::Star => f.write_str("`*`"),
            Tok::Plus => f.write_str("`+`"),
            Tok::Minus => f.write_str("`-`"),
            Tok::LBracket => f.write_str("`[`"),
            Tok::RBracket => f.write_str("`]`"),
            Tok::LBrace => f.write_str("`{`"),
            Tok::RBrace => f.write_str("`}`"),
            Tok::Comma => f.write_str("`,`"),
            Tok::Semi => f.write_str("`;`"),
            Tok::Colon => f.write_str("`:`"),
            Tok::Arrow => f.write_str("`->`"),
            Tok::Dot => f.write_str("`.`"),
            Tok::Eq => f.write_str("`=`"),
        }
    }
}

fn lex(text: &str) -> Result<(Vec<(Tok, Position)>, Position), ParseError> {
    let mut out = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let (mut i, mut line, mut col) = (0, 1, 1);
    while i < chars.len() {
        let c = chars[i];
        let pos = Position { line, column: col };
        let advance = |n: usize, i: &mut usize, col: &mut usize| {
            *i += n;
            *col += n;
        };
        if c == '\n' {
            i += 1;
            line += 1;
            col = 1;
        } else if c.is_whitespace() {
            advance(1, &mut i, &mut col);
        } else if c == '/' && chars.get(i + 1) == Some(&'/') {
            while i < chars.len() && chars[i] != '\n' {
                i += 1;
            }
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            if i < chars.len() && chars[i] == '.' && chars.get(i + 1).is_some_and(|d| d.is_ascii_digit()) {
                let mut end = i + 1;
                while end < chars.len() && chars[end].is_ascii_digit() {
                    end += 1;
                }
                return err(pos, ParseErrorKind::FloatLiteral(chars[start..end].iter().collect()));
            }
            let digits: String = chars[start..i].iter().collect();
            col += i - start;
            out.push((Tok::Int(digits.parse().expect("ascii digits")), pos));
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_' || chars[i] == '\'') {
                i += 1;
            }
            col += i - start;
            out.push((Tok::Ident(chars[start..i].iter().collect()), pos));
        } else {
            let (tok, width) = match c {
                '-' if chars.get(i + 1) == Some(&'>') => (Tok::Arrow, 2),
                '/' => (Tok::Slash, 1),
                '*' => (Tok::Star, 1),
                '+' => (Tok::Plus, 1),
                '-' => (Tok::Minus, 1),
                '[' => (Tok::LBracket, 1),
                ']' => (Tok::RBracket, 1),
                '{' => (Tok::LBrace, 1),
                '}' => (Tok::RBrace, 1),
                ',' => (Tok::Comma, 1),
                ';' => (Tok::Semi, 1),
                ':' => (Tok::Colon, 1),
                '.' => (Tok::Dot, 1),
                '=' => (Tok::Eq, 1),
                other => return err(pos, ParseErrorKind::Syntax(format!("unexpected character `{other}`"))),
            };
            out.push((tok, pos));
            advance(width, &mut i, &mut col);
        }
    }
    Ok((out, Position { line, column: col }))
}

// ---------------------------------------------------------------------------
// Parser

const KEYWORDS: &[&str] = &[
    "algebra", "module", "map", "cochain", "basis", "bracket", "alpha", "action", "id", "over", "degree",
];

type Ident = (String, Position);
type Expr = Vec<(Rational, Ident)>;

#[derive(Debug)]
enum Stmt {
    Basis(Vec<Ident>),
    AlphaId,
    Assign(Ident, Expr),
    Bracket(Position, Vec<Ident>, Expr),
    Value(Position, Vec<Ident>, Expr),
    Action(Ident, Ident, Expr),
}

#[derive(Debug)]
enum Header {
    Algebra,
    Module(Ident),
    Map(Ident, Ident),
    Cochain(Ident, usize),
}

#[derive(Debug)]
struct Block {
    name: Ident,
    header: Header,
    stmts: Vec<(Position, Stmt)>,
}

struct Parser {
    toks: Vec<(Tok, Position)>,
    at: usize,
    end: Position,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|(t, _)| t)
    }

    fn peek_at(&self, k: usize) -> Option<&Tok> {
        self.toks.get(self.at + k).map(|(t, _)| t)
    }

    fn pos(&self) -> Position {
        self.toks.get(self.at).map_or(self.end, |(_, p)| *p)
    }

    fn unexpected<T>(&self, wanted: &str) -> Result<T, ParseError> {
        let found = self.peek().map_or("end of input".to_string(), |t| t.to_string());
        err(
            self.pos(),
            ParseErrorKind::Syntax(format!("expected {wanted}, found {found}")),
        )
    }

    fn expect(&mut self, tok: Tok) -> Result<Position, ParseError> {
        if self.peek() == Some(&tok) {
            let p = self.pos();
            self.at += 1;
            Ok(p)
        } else {
            self.unexpected(&tok.to_string())
        }
    }

    fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek() == Some(tok) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn is_keyword(&self, kw: &str) -> bool {
        matches!(self.peek(), Some(Tok::Ident(s)) if s == kw)
    }

    fn keyword(&mut self, kw: &str) -> Result<(), ParseError> {
        if self.is_keyword(kw) {
            self.at += 1;
            Ok(())
        } else {
            self.unexpected(&format!("`{kw}`"))
        }
    }

    fn ident(&mut self) -> Result<Ident, ParseError> {
        match self.peek() {
            Some(Tok::Ident(s)) if !KEYWORDS.contains(&s.as_str()) => {
                let out = (s.clone(), self.pos());
                self.at += 1;
                Ok(out)
            }
            _ => self.unexpected("an identifier"),
        }
    }

    fn ident_list(&mut self, close: Option<Tok>) -> Result<Vec<Ident>, ParseError> {
        let mut out = Vec::new();
        if close.is_some() && self.peek() == close.as_ref() {
            return Ok(out);
        }
        out.push(self.ident()?);
        while self.eat(&Tok::Comma) {
            out.push(self.ident()?);
        }
        Ok(out)
    }

    fn integer(&mut self) -> Result<BigInt, ParseError> {
        match self.peek() {
            Some(Tok::Int(n)) => {
                let n = n.clone();
                self.at += 1;
                Ok(n)
            }
            _ => self.unexpected("an integer"),
        }
    }

    fn scalar(&mut self) -> Result<Rational, ParseError> {
        let numer = self.integer()?;
        if self.eat(&Tok::Slash) {
            let pos = self.pos();
            let denom = self.integer()?;
            if denom.is_zero() {
                return err(pos, ParseErrorKind::ZeroDenominator);
            }
            Ok(Rational::new(numer, denom))
        } else {
            Ok(Rational::from_integer(numer))
        }
    }

    /// `0` or `[-] term (± term)*` with `term := [scalar [*]] ident`.
    fn expr(&mut self) -> Result<Expr, ParseError> {
        if matches!(self.peek(), Some(Tok::Int(n)) if n.is_zero())
            && matches!(self.peek_at(1), Some(Tok::Semi) | Some(Tok::RBrace))
        {
            self.at += 1;
            return Ok(Vec::new());
        }
        let mut out = Vec::new();
        let mut sign = if self.eat(&Tok::Minus) {
            -Rational::one()
        } else {
            Rational::one()
        };
        loop {
            let coeff = if matches!(self.peek(), Some(Tok::Int(_))) {
                let c = self.scalar()?;
                self.eat(&Tok::Star);
                c
            } else {
                Rational::one()
            };
            let id = self.ident()?;
            out.push((sign * coeff, id));
            sign = if self.eat(&Tok::Plus) {
                Rational::one()
            } else if self.eat(&Tok::Minus) {
                -Rational::one()
            } else {
                break;
            };
        }
        Ok(out)
    }

    fn stmt(&mut self) -> Result<(Position, Stmt), ParseError> {
        let pos = self.pos();
        let stmt = if self.is_keyword("basis") {
            self.at += 1;
            Stmt::Basis(self.ident_list(None)?)
        } else if self.is_keyword("alpha") && matches!(self.peek_at(1), Some(Tok::Ident(s)) if s == "id") {
            self.at += 2;
            Stmt::AlphaId
        } else {
            for kw in ["alpha", "bracket", "action"] {
                if self.is_keyword(kw) {
                    self.at += 1;
                    break;
                }
            }
            if self.eat(&Tok::LBracket) {
                let args = self.ident_list(Some(Tok::RBracket))?;
                self.expect(Tok::RBracket)?;
                if self.eat(&Tok::Eq) {
                    Stmt::Bracket(pos, args, self.expr()?)
                } else if self.eat(&Tok::Arrow) {
                    Stmt::Value(pos, args, self.expr()?)
                } else {
                    return self.unexpected("`=` or `->`");
                }
            } else {
                let lhs = self.ident()?;
                if self.eat(&Tok::Arrow) {
                    Stmt::Assign(lhs, self.expr()?)
                } else if self.eat(&Tok::Dot) {
                    let m = self.ident()?;
                    self.expect(Tok::Eq)?;
                    Stmt::Action(lhs, m, self.expr()?)
                } else {
                    return self.unexpected("`->` or `.`");
                }
            }
        };
        self.expect(Tok::Semi)?;
        Ok((pos, stmt))
    }

    fn block(&mut self) -> Result<Block, ParseError> {
        let kind = match self.peek() {
            Some(Tok::Ident(s)) if ["algebra", "module", "map", "cochain"].contains(&s.as_str()) => s.clone(),
            _ => return self.unexpected("`algebra`, `module`, `map` or `cochain`"),
        };
        self.at += 1;
        let name = self.ident()?;
        let header = match kind.as_str() {
            "algebra" => Header::Algebra,
            "module" => {
                self.keyword("over")?;
                Header::Module(self.ident()?)
            }
            "map" => {
                self.expect(Tok::Colon)?;
                let source = self.ident()?;
                self.expect(Tok::Arrow)?;
                Header::Map(source, self.ident()?)
            }
            _ => {
                self.keyword("over")?;
                let module = self.ident()?;
                self.keyword("degree")?;
                let pos = self.pos();
                let degree = self.integer()?;
                let degree = usize::try_from(degree).map_err(|_| ParseError {
                    position: pos,
                    kind: ParseErrorKind::Syntax("degree out of range".into()),
                })?;
                Header::Cochain(module, degree)
            }
        };
        self.expect(Tok::LBrace)?;
        let mut stmts = Vec::new();
        while !self.eat(&Tok::RBrace) {
            if self.peek().is_none() {
                return self.unexpected("`}`");
            }
            stmts.push(self.stmt()?);
        }
        Ok(Block { name, header, stmts })
    }
}

// ---------------------------------------------------------------------------
// Resolution

fn basis_index(basis: &[String], id: &Ident) -> Result<usize, ParseError> {
    basis.iter().position(|b| b == &id.0).ok_or_else(|| ParseError {
        position: id.1,
        kind: ParseErrorKind::UnknownIdentifier(id.0.clone()),
    })
}

fn vector(basis: &[String], expr: &Expr) -> Result<Vec<Rational>, ParseError> {
    let mut out = vec![Rational::zero(); basis.len()];
    for (c, id) in expr {
        let i = basis_index(basis, id)?;
        out[i] += c;
    }
    Ok(out)
}

fn structure_err(pos: Position, e: crate::Error) -> ParseError {
    ParseError {
        position: pos,
        kind: ParseErrorKind::Structure(e.to_string()),
    }
}

fn not_allowed<T>(pos: Position, what: &str, block: &str) -> Result<T, ParseError> {
    err(
        pos,
        ParseErrorKind::Syntax(format!("{what} is not allowed in a {block} block")),
    )
}

fn take_basis(block: &Block, kind: &str) -> Result<Vec<String>, ParseError> {
    let mut basis: Option<Vec<String>> = None;
    for (pos, stmt) in &block.stmts {
        if let Stmt::Basis(names) = stmt {
            if basis.is_some() {
                return err(
                    *pos,
                    ParseErrorKind::Syntax(format!("basis declared twice in {kind} `{}`", block.name.0)),
                );
            }
            let mut seen: Vec<String> = Vec::new();
            for (n, p) in names {
                if seen.contains(n) {
                    return err(*p, ParseErrorKind::DuplicateBasis(n.clone()));
                }
                seen.push(n.clone());
            }
            basis = Some(seen);
        }
    }
    Ok(basis.unwrap_or_default())
}

/// Twist and bracket statements shared by algebra and module blocks.
struct Structure {
    alpha: Matrix<Rational>,
    brackets: Vec<Vec<Rational>>,
}

fn structure(
    block: &Block,
    basis: &[String],
    mut other: impl FnMut(Position, &Stmt) -> Result<(), ParseError>,
) -> Result<Structure, ParseError> {
    let n = basis.len();
    let mut alpha: BTreeMap<usize, Vec<Rational>> = BTreeMap::new();
    let mut alpha_id = false;
    let mut brackets: HashMap<(usize, usize), Vec<Rational>> = HashMap::new();
    for (pos, stmt) in &block.stmts {
        match stmt {
            Stmt::Basis(_) => {}
            Stmt::AlphaId => {
                if !alpha.is_empty() {
                    return err(
                        *pos,
                        ParseErrorKind::ConflictingAssignment(format!("alpha in `{}`", block.name.0)),
                    );
                }
                alpha_id = true;
            }
            Stmt::Assign(x, expr) => {
                let i = basis_index(basis, x)?;
                let v = vector(basis, expr)?;
                let clash = alpha_id || alpha.get(&i).is_some_and(|old| old != &v);
                if clash {
                    return err(x.1, ParseErrorKind::ConflictingAssignment(format!("alpha({})", x.0)));
                }
                alpha.insert(i, v);
            }
            Stmt::Bracket(p, args, expr) => {
                let [x, y] = args.as_slice() else {
                    return err(*p, ParseErrorKind::Syntax("a bracket takes two arguments".into()));
                };
                let (i, j) = (basis_index(basis, x)?, basis_index(basis, y)?);
                let v = vector(basis, expr)?;
                let neg: Vec<Rational> = v.iter().map(|c| -c).collect();
                let conflict = (i == j && v.iter().any(|c| !c.is_zero()))
                    || brackets.get(&(i, j)).is_some_and(|old| old != &v)
                    || brackets.get(&(j, i)).is_some_and(|old| old != &neg);
                if conflict {
                    return err(*p, ParseErrorKind::ConflictingBracket(x.0.clone(), y.0.clone()));
                }
                brackets.insert((i, j), v);
                brackets.insert((j, i), neg);
            }
            s => other(*pos, s)?,
        }
    }
    let alpha = if alpha_id {
        Matrix::identity(n)
    } else {
        let cols: Vec<Vec<Rational>> = (0..n)
            .map(|i| alpha.remove(&i).unwrap_or_else(|| vec![Rational::zero(); n]))
            .collect();
        Matrix::from_columns(n, &cols).map_err(|e| structure_err(block.name.1, e))?
    };
    let table = (0..n * n)
        .map(|k| {
            brackets
                .remove(&(k / n, k % n))
                .unwrap_or_else(|| vec![Rational::zero(); n])
        })
        .collect();
    Ok(Structure { alpha, brackets: table })
}

fn resolve(blocks: Vec<Block>) -> Result<Workspace, ParseError> {
    let mut seen: Vec<&str> = Vec::new();
    for b in &blocks {
        if seen.contains(&b.name.0.as_str()) {
            return err(b.name.1, ParseErrorKind::DuplicateName(b.name.0.clone()));
        }
        seen.push(&b.name.0);
    }
    let mut ws = Workspace::default();
    for b in blocks.iter().filter(|b| matches!(b.header, Header::Algebra)) {
        let basis = take_basis(b, "algebra")?;
        let s = structure(b, &basis, |pos, stmt| match stmt {
            Stmt::Action(..) => not_allowed(pos, "an action", "algebra"),
            _ => not_allowed(pos, "this statement", "algebra"),
        })?;
        let algebra = HomLie::new(basis.len(), s.alpha, s.brackets).map_err(|e| structure_err(b.name.1, e))?;
        ws.algebras.push(NamedAlgebra {
            name: b.name.0.clone(),
            basis,
            algebra,
        });
    }
    for b in &blocks {
        let Header::Module(over) = &b.header else { continue };
        let base = ws
            .algebra(&over.0)
            .ok_or_else(|| ParseError {
                position: over.1,
                kind: ParseErrorKind::UnknownIdentifier(over.0.clone()),
            })?
            .clone();
        let basis = take_basis(b, "module")?;
        let mut acts: HashMap<(usize, usize), Vec<Rational>> = HashMap::new();
        let s = structure(b, &basis, |pos, stmt| match stmt {
            Stmt::Action(x, m, expr) => {
                let key = (basis_index(&base.basis, x)?, basis_index(&basis, m)?);
                let v = vector(&basis, expr)?;
                if acts.get(&key).is_some_and(|old| old != &v) {
                    return err(x.1, ParseErrorKind::ConflictingAssignment(format!("{} . {}", x.0, m.0)));
                }
                acts.insert(key, v);
                Ok(())
            }
            _ => not_allowed(pos, "this statement", "module"),
        })?;
        let dim = basis.len();
        let space = HomLie::new(dim, s.alpha, s.brackets).map_err(|e| structure_err(b.name.1, e))?;
        let table = (0..base.basis.len() * dim)
            .map(|k| {
                acts.remove(&(k / dim.max(1), k % dim.max(1)))
                    .unwrap_or_else(|| vec![Rational::zero(); dim])
            })
            .collect();
        let action = HomAction::new(base.algebra.clone(), space, table).map_err(|e| structure_err(b.name.1, e))?;
        ws.modules.push(NamedModule {
            name: b.name.0.clone(),
            over: over.0.clone(),
            basis,
            action,
        });
    }
    for b in &blocks {
        let Header::Map(source, target) = &b.header else {
            continue;
        };
        let lookup = |id: &Ident| {
            ws.basis_of(&id.0).map(<[String]>::to_vec).ok_or_else(|| ParseError {
                position: id.1,
                kind: ParseErrorKind::UnknownIdentifier(id.0.clone()),
            })
        };
        let (sb, tb) = (lookup(source)?, lookup(target)?);
        let mut cols: Vec<Option<Vec<Rational>>> = vec![None; sb.len()];
        for (pos, stmt) in &b.stmts {
            let Stmt::Assign(x, expr) = stmt else {
                return not_allowed(*pos, "this statement", "map");
            };
            let i = basis_index(&sb, x)?;
            let v = vector(&tb, expr)?;
            if cols[i].as_ref().is_some_and(|old| old != &v) {
                return err(
                    x.1,
                    ParseErrorKind::ConflictingAssignment(format!("{}({})", b.name.0, x.0)),
                );
            }
            cols[i] = Some(v);
        }
        let cols: Vec<Vec<Rational>> = cols
            .into_iter()
            .map(|c| c.unwrap_or_else(|| vec![Rational::zero(); tb.len()]))
            .collect();
        let matrix = Matrix::from_columns(tb.len(), &cols).map_err(|e| structure_err(b.name.1, e))?;
        ws.maps.push(NamedMap {
            name: b.name.0.clone(),
            source: source.0.clone(),
            target: target.0.clone(),
            matrix,
        });
    }
    for b in &blocks {
        let Header::Cochain(module, degree) = &b.header else {
            continue;
        };
        let md = ws.module(&module.0).ok_or_else(|| ParseError {
            position: module.1,
            kind: ParseErrorKind::UnknownIdentifier(module.0.clone()),
        })?;
        let lb = &ws.algebra(&md.over).expect("resolved").basis;
        let wedges = wedge_basis(lb.len(), *degree);
        let mut values: Vec<Option<Vec<Rational>>> = vec![None; wedges.len()];
        for (pos, stmt) in &b.stmts {
            let Stmt::Value(p, args, expr) = stmt else {
                return not_allowed(*pos, "this statement", "cochain");
            };
            if args.len() != *degree {
                return err(
                    *p,
                    ParseErrorKind::Syntax(format!("expected {degree} arguments, found {}", args.len())),
                );
            }
            let mut idx = args.iter().map(|a| basis_index(lb, a)).collect::<Result<Vec<_>, _>>()?;
            let mut v = vector(&md.basis, expr)?;
            // sort the arguments, tracking the sign of the permutation
            let mut odd = false;
            for i in 0..idx.len() {
                for j in 0..idx.len() - 1 - i {
                    if idx[j] > idx[j + 1] {
                        idx.swap(j, j + 1);
                        odd = !odd;
                    }
                }
            }
            if idx.windows(2).any(|w| w[0] == w[1]) {
                if v.iter().any(|c| !c.is_zero()) {
                    return err(
                        *p,
                        ParseErrorKind::ConflictingAssignment("value on a repeated argument".into()),
                    );
                }
                continue;
            }
            if odd {
                v.iter_mut().for_each(|c| *c = -c.clone());
            }
            let k = wedges.iter().position(|w| *w == idx).expect("sorted distinct indices");
            if values[k].as_ref().is_some_and(|old| old != &v) {
                return err(
                    *p,
                    ParseErrorKind::ConflictingAssignment(format!(
                        "{}{:?}",
                        b.name.0,
                        args.iter().map(|a| &a.0).collect::<Vec<_>>()
                    )),
                );
            }
            values[k] = Some(v);
        }
        let m = md.basis.len();
        let cols: Vec<Vec<Rational>> = values
            .into_iter()
            .map(|c| c.unwrap_or_else(|| vec![Rational::zero(); m]))
            .collect();
        let matrix = Matrix::from_columns(m, &cols).map_err(|e| structure_err(b.name.1, e))?;
        let cochain = Cochain::new(*degree, lb.len(), matrix).map_err(|e| structure_err(b.name.1, e))?;
        ws.cochains.push(NamedCochain {
            name: b.name.0.clone(),
            module: module.0.clone(),
            cochain,
        });
    }
    Ok(ws)
}

pub fn parse_workspace(text: &str) -> Result<Workspace, ParseError> {
    let (toks, end) = lex(text)?;
    let mut p = Parser { toks, at: 0, end };
    let mut blocks = Vec::new();
    while p.peek().is_some() {
        blocks.push(p.block()?);
    }
    resolve(blocks)
}

// ---------------------------------------------------------------------------
// Printer

fn scalar_text(c: &Rational) -> String {
    if c.denom().is_one() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

fn expr_text(v: &[Rational], basis: &[String]) -> String {
    let mut out = String::new();
    for (c, name) in v.iter().zip(basis) {
        if c.is_zero() {
            continue;
        }
        let mag = c.abs();
        if out.is_empty() {
            if c.is_negative() {
                out.push('-');
            }
        } else {
            out.push_str(if c.is_negative() { " - " } else { " + " });
        }
        if !mag.is_one() {
            let _ = write!(out, "{}*", scalar_text(&mag));
        }
        out.push_str(name);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

fn is_zero(v: &[Rational]) -> bool {
    v.iter().all(Zero::is_zero)
}

fn emit_structure(out: &mut String, basis: &[String], h: &HomLie<Rational>) {
    let n = basis.len();
    if n > 0 {
        let _ = writeln!(out, "  basis {};", basis.join(", "));
    }
    for i in 0..n {
        for j in i + 1..n {
            let v = h.basis_bracket(i, j);
            if !is_zero(v) {
                let _ = writeln!(out, "  bracket [{},{}] = {};", basis[i], basis[j], expr_text(v, basis));
            }
        }
    }
    if n > 0 && h.alpha().is_identity() {
        out.push_str("  alpha id;\n");
    } else {
        for (i, col) in h.alpha().columns().iter().enumerate() {
            if !is_zero(col) {
                let _ = writeln!(out, "  alpha {} -> {};", basis[i], expr_text(col, basis));
            }
        }
    }
}

pub fn emit_workspace(ws: &Workspace) -> String {
    let mut out = String::new();
    let sep = |out: &mut String| {
        if !out.is_empty() {
            out.push('\n');
        }
    };
    for a in &ws.algebras {
        sep(&mut out);
        let _ = writeln!(out, "algebra {} {{", a.name);
        emit_structure(&mut out, &a.basis, &a.algebra);
        out.push_str("}\n");
    }
    for m in &ws.modules {
        sep(&mut out);
        let _ = writeln!(out, "module {} over {} {{", m.name, m.over);
        emit_structure(&mut out, &m.basis, m.action.space());
        let lb = &ws.algebra(&m.over).expect("module base is declared").basis;
        for (i, x) in lb.iter().enumerate() {
            for (j, y) in m.basis.iter().enumerate() {
                let v = m.action.act_basis(i, j);
                if !is_zero(v) {
                    let _ = writeln!(out, "  action {x} . {y} = {};", expr_text(v, &m.basis));
                }
            }
        }
        out.push_str("}\n");
    }
    for m in &ws.maps {
        sep(&mut out);
        let _ = writeln!(out, "map {} : {} -> {} {{", m.name, m.source, m.target);
        let sb = ws.basis_of(&m.source).expect("map source is declared");
        let tb = ws.basis_of(&m.target).expect("map target is declared");
        for (i, col) in m.matrix.columns().iter().enumerate() {
            if !is_zero(col) {
                let _ = writeln!(out, "  {} -> {};", sb[i], expr_text(col, tb));
            }
        }
        out.push_str("}\n");
    }
    for c in &ws.cochains {
        sep(&mut out);
        let _ = writeln!(
            out,
            "cochain {} over {} degree {} {{",
            c.name,
            c.module,
            c.cochain.degree()
        );
        let md = ws.module(&c.module).expect("cochain module is declared");
        let lb = &ws.algebra(&md.over).expect("module base is declared").basis;
        for (k, w) in wedge_basis(lb.len(), c.cochain.degree()).iter().enumerate() {
            let v = c.cochain.values().column(k);
            if !is_zero(&v) {
                let args: Vec<&str> = w.iter().map(|&i| lb[i].as_str()).collect();
                let _ = writeln!(out, "  [{}] -> {};", args.join(","), expr_text(&v, &md.basis));
            }
        }
        out.push_str("}\n");
    }
    out
}
