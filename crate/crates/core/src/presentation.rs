//! Quiver-with-quadratic-relations presentations `kQ/I` and their
//! line-oriented text format.
//!
//! ```text
//! # exterior-type example
//! field Q
//! vertex 1
//! arrow x : 1 -> 1
//! arrow y : 1 -> 1
//! param q = -1
//! relation x.x
//! relation x.y - q*y.x
//! maxdeg 6
//! ```

use std::fmt;

use num_rational::BigRational;
use thiserror::Error;

use crate::quiver::{Path, Quiver, QuiverError};
use crate::scalar::{parse_rational, Field, FieldError, Scalar};
use crate::tensor::TensorElement;

/// Truncation degree used when a file has no `maxdeg` line.
pub const DEFAULT_MAXDEG: usize = 5;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("syntax error: {0}")]
    Syntax(String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("unknown arrow `{0}`")]
    UnknownArrow(String),
    #[error("path `{0}` is not composable")]
    NonComposable(String),
    #[error("term `{path}` has degree {degree}, expected {expected}")]
    Inhomogeneous {
        path: String,
        degree: usize,
        expected: usize,
    },
    #[error("unbound parameter `{0}`")]
    UnboundParameter(String),
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("duplicate name `{0}`")]
    DuplicateName(String),
    #[error("`{0}` given more than once")]
    DuplicateDirective(String),
    #[error("no vertices declared")]
    NoVertices,
    #[error(transparent)]
    Field(FieldError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub kind: ParseErrorKind,
}

/// A validated presentation `Λ = kQ/I` with `I` generated in degree 2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    pub quiver: Quiver,
    pub field: Field,
    /// Named scalars, already substituted into `relations`.
    pub params: Vec<(String, BigRational)>,
    pub relations: Vec<TensorElement>,
    pub maxdeg: usize,
}

impl Presentation {
    /// Builds a presentation from already-constructed parts, checking that
    /// every relation is a degree-2 combination of paths over `field`.
    pub fn new(
        quiver: Quiver,
        field: Field,
        relations: Vec<TensorElement>,
        maxdeg: usize,
    ) -> Result<Self, ParseErrorKind> {
        for r in &relations {
            if r.degree() != 2 {
                let path = r.terms().next().map(|(p, _)| quiver.format_path(p)).unwrap_or_default();
                return Err(ParseErrorKind::Inhomogeneous {
                    path,
                    degree: r.degree(),
                    expected: 2,
                });
            }
            for (_, c) in r.terms() {
                field.check(c).map_err(ParseErrorKind::Field)?;
            }
        }
        Ok(Presentation {
            quiver,
            field,
            params: Vec::new(),
            relations,
            maxdeg,
        })
    }

    pub fn with_maxdeg(mut self, maxdeg: usize) -> Self {
        self.maxdeg = maxdeg;
        self
    }

    /// Parses the text format; see the module documentation.
    pub fn parse(text: &str) -> Result<Self, ParseError> {
        Parser::default().run(text)
    }

    /// Parses a homogeneous combination such as `x.x.y - 2*y.x.x` over this
    /// quiver, field and parameters. Errors report line 1.
    pub fn parse_element(&self, text: &str) -> Result<TensorElement, ParseError> {
        parse_combination(&self.quiver, self.field, &self.params, 1, 1, text, None)
    }

    /// Text that [`Presentation::parse`] maps back to `self`.
    pub fn serialize(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "field {}", self.field)?;
        for v in self.quiver.vertices() {
            writeln!(f, "vertex {v}")?;
        }
        for a in self.quiver.arrows() {
            writeln!(
                f,
                "arrow {} : {} -> {}",
                a.name,
                self.quiver.vertex_name(a.source),
                self.quiver.vertex_name(a.target)
            )?;
        }
        for (name, value) in &self.params {
            writeln!(f, "param {name} = {value}")?;
        }
        for r in &self.relations {
            writeln!(f, "relation {}", r.format(&self.quiver))?;
        }
        writeln!(f, "maxdeg {}", self.maxdeg)
    }
}

fn err(line: usize, column: usize, kind: ParseErrorKind) -> ParseError {
    ParseError { line, column, kind }
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_alphabetic() || c == '_')
        && chars.all(|c| c.is_alphanumeric() || c == '_' || c == '\'')
}

struct ArrowDecl {
    name: String,
    ends: [(String, usize); 2],
    line: usize,
}

#[derive(Default)]
struct Parser {
    field: Option<Field>,
    maxdeg: Option<usize>,
    vertices: Vec<String>,
    arrows: Vec<ArrowDecl>,
    params: Vec<(String, BigRational)>,
    relation_lines: Vec<(usize, usize, String)>,
}

impl Parser {
    fn run(mut self, text: &str) -> Result<Presentation, ParseError> {
        for (lineno, raw) in text.lines().enumerate() {
            let line = lineno + 1;
            let content = raw.split('#').next().unwrap_or("");
            let trimmed = content.trim_start();
            if trimmed.trim().is_empty() {
                continue;
            }
            let indent = content.len() - trimmed.len();
            let (keyword, rest) = match trimmed.find(char::is_whitespace) {
                Some(pos) => (&trimmed[..pos], &trimmed[pos..]),
                None => (trimmed, ""),
            };
            let rest_col = indent + keyword.len() + 1;
            match keyword {
                "field" => self.field_line(line, indent + 1, rest)?,
                "vertex" => self.vertex_line(line, rest_col, rest)?,
                "arrow" => self.arrow_line(line, rest_col, rest)?,
                "param" => self.param_line(line, rest_col, rest)?,
                "relation" => self.relation_lines.push((line, rest_col, rest.to_string())),
                "maxdeg" => {
                    if self.maxdeg.is_some() {
                        return Err(err(
                            line,
                            indent + 1,
                            ParseErrorKind::DuplicateDirective("maxdeg".into()),
                        ));
                    }
                    let n = rest.trim().parse::<usize>().map_err(|_| {
                        err(
                            line,
                            rest_col,
                            ParseErrorKind::Syntax(format!("invalid maxdeg `{}`", rest.trim())),
                        )
                    })?;
                    self.maxdeg = Some(n);
                }
                other => {
                    return Err(err(
                        line,
                        indent + 1,
                        ParseErrorKind::Syntax(format!("unknown directive `{other}`")),
                    ))
                }
            }
        }
        if self.vertices.is_empty() {
            return Err(err(1, 1, ParseErrorKind::NoVertices));
        }
        let field = self.field.unwrap_or(Field::Rational);
        let quiver = self.build_quiver()?;
        let mut relations = Vec::new();
        for (line, col, text) in &self.relation_lines {
            relations.push(parse_relation(&quiver, field, &self.params, *line, *col, text)?);
        }
        Ok(Presentation {
            quiver,
            field,
            params: self.params,
            relations,
            maxdeg: self.maxdeg.unwrap_or(DEFAULT_MAXDEG),
        })
    }

    fn name_taken(&self, name: &str) -> bool {
        self.vertices.iter().any(|v| v == name)
            || self.arrows.iter().any(|a| a.name == name)
            || self.params.iter().any(|p| p.0 == name)
    }

    fn field_line(&mut self, line: usize, col: usize, rest: &str) -> Result<(), ParseError> {
        if self.field.is_some() {
            return Err(err(line, col, ParseErrorKind::DuplicateDirective("field".into())));
        }
        let words: Vec<&str> = rest.split_whitespace().collect();
        let field = match words.as_slice() {
            ["Q"] => Field::Rational,
            ["Fp", p] => {
                let p: u64 = p.parse().map_err(|_| {
                    err(
                        line,
                        col,
                        ParseErrorKind::Syntax(format!("invalid characteristic `{p}`")),
                    )
                })?;
                Field::prime(p).map_err(|_| err(line, col, ParseErrorKind::NotPrime(p)))?
            }
            _ => {
                return Err(err(
                    line,
                    col,
                    ParseErrorKind::Syntax("expected `field Q` or `field Fp <p>`".into()),
                ))
            }
        };
        self.field = Some(field);
        Ok(())
    }

    fn vertex_line(&mut self, line: usize, col: usize, rest: &str) -> Result<(), ParseError> {
        let words: Vec<&str> = rest.split_whitespace().collect();
        let [name] = words.as_slice() else {
            return Err(err(
                line,
                col,
                ParseErrorKind::Syntax("expected `vertex <name>`".into()),
            ));
        };
        if name.contains(['.', ':', '*', '+']) || *name == "->" {
            return Err(err(
                line,
                col,
                ParseErrorKind::Syntax(format!("invalid vertex name `{name}`")),
            ));
        }
        if self.name_taken(name) {
            return Err(err(line, col, ParseErrorKind::DuplicateName(name.to_string())));
        }
        self.vertices.push(name.to_string());
        Ok(())
    }

    fn arrow_line(&mut self, line: usize, col: usize, rest: &str) -> Result<(), ParseError> {
        let syntax = || {
            err(
                line,
                col,
                ParseErrorKind::Syntax("expected `arrow <name> : <src> -> <tgt>`".into()),
            )
        };
        let (name, ends) = rest.split_once(':').ok_or_else(syntax)?;
        let (src, tgt) = ends.split_once("->").ok_or_else(syntax)?;
        let (name, src, tgt) = (name.trim(), src.trim(), tgt.trim());
        if !is_identifier(name) || src.is_empty() || tgt.is_empty() {
            return Err(syntax());
        }
        if self.name_taken(name) {
            return Err(err(line, col, ParseErrorKind::DuplicateName(name.to_string())));
        }
        let colon = rest.find(':').unwrap_or(0);
        let arrow = colon + rest[colon..].find("->").unwrap_or(0);
        let src_col = col + colon + 1 + (rest[colon + 1..].len() - rest[colon + 1..].trim_start().len());
        let tgt_col = col + arrow + 2 + (rest[arrow + 2..].len() - rest[arrow + 2..].trim_start().len());
        self.arrows.push(ArrowDecl {
            name: name.to_string(),
            ends: [(src.to_string(), src_col), (tgt.to_string(), tgt_col)],
            line,
        });
        Ok(())
    }

    fn param_line(&mut self, line: usize, col: usize, rest: &str) -> Result<(), ParseError> {
        let (name, value) = rest.split_once('=').ok_or_else(|| {
            err(
                line,
                col,
                ParseErrorKind::Syntax("expected `param <name> = <rational>`".into()),
            )
        })?;
        let name = name.trim();
        if !is_identifier(name) {
            return Err(err(
                line,
                col,
                ParseErrorKind::Syntax(format!("invalid parameter name `{name}`")),
            ));
        }
        if self.name_taken(name) {
            return Err(err(line, col, ParseErrorKind::DuplicateName(name.to_string())));
        }
        let value_col = col + rest.find('=').unwrap_or(0) + 1;
        let q = parse_rational(value).map_err(|e| err(line, value_col, ParseErrorKind::Field(e)))?;
        self.params.push((name.to_string(), q));
        Ok(())
    }

    fn build_quiver(&self) -> Result<Quiver, ParseError> {
        for a in &self.arrows {
            for (v, col) in &a.ends {
                if !self.vertices.iter().any(|x| x == v) {
                    return Err(err(a.line, *col, ParseErrorKind::UnknownVertex(v.clone())));
                }
            }
        }
        let arrows: Vec<(&str, &str, &str)> = self
            .arrows
            .iter()
            .map(|a| (a.name.as_str(), a.ends[0].0.as_str(), a.ends[1].0.as_str()))
            .collect();
        let vertices: Vec<&str> = self.vertices.iter().map(String::as_str).collect();
        Quiver::new(&vertices, &arrows).map_err(|e| {
            let kind = match e {
                QuiverError::DuplicateName(n) => ParseErrorKind::DuplicateName(n),
                QuiverError::UnknownVertex(n) => ParseErrorKind::UnknownVertex(n),
                other => ParseErrorKind::Syntax(other.to_string()),
            };
            err(1, 1, kind)
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Ident(String),
    Number(String),
    Plus,
    Minus,
    Star,
    Dot,
}

fn tokenize(line: usize, col0: usize, text: &str) -> Result<Vec<(usize, Token)>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = col0 + i;
        if c.is_whitespace() {
            i += 1;
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_' || chars[i] == '\'') {
                i += 1;
            }
            out.push((col, Token::Ident(chars[start..i].iter().collect())));
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_digit() || chars[i] == '/') {
                i += 1;
            }
            out.push((col, Token::Number(chars[start..i].iter().collect())));
        } else {
            let tok = match c {
                '+' => Token::Plus,
                '-' => Token::Minus,
                '*' => Token::Star,
                '.' => Token::Dot,
                other => {
                    return Err(err(
                        line,
                        col,
                        ParseErrorKind::Syntax(format!("unexpected character `{other}`")),
                    ))
                }
            };
            out.push((col, tok));
            i += 1;
        }
    }
    Ok(out)
}

fn parse_relation(
    quiver: &Quiver,
    field: Field,
    params: &[(String, BigRational)],
    line: usize,
    col0: usize,
    text: &str,
) -> Result<TensorElement, ParseError> {
    parse_combination(quiver, field, params, line, col0, text, Some(2))
}

/// A signed sum of terms; all paths must share one length (`degree`, or
/// the length of the first path when `None`).
fn parse_combination(
    quiver: &Quiver,
    field: Field,
    params: &[(String, BigRational)],
    line: usize,
    col0: usize,
    text: &str,
    mut degree: Option<usize>,
) -> Result<TensorElement, ParseError> {
    let tokens = tokenize(line, col0, text)?;
    let end_col = col0 + text.chars().count();
    let mut pos = 0;
    let mut relation: Option<TensorElement> = None;
    let mut first = true;
    if tokens.is_empty() {
        return Err(err(line, col0, ParseErrorKind::Syntax("empty expression".into())));
    }
    while pos < tokens.len() {
        let mut sign = field.one();
        match &tokens[pos].1 {
            Token::Plus if !first => pos += 1,
            Token::Minus => {
                sign = -sign;
                pos += 1;
            }
            _ if first => {}
            _ => {
                return Err(err(
                    line,
                    tokens[pos].0,
                    ParseErrorKind::Syntax("expected `+` or `-`".into()),
                ));
            }
        }
        first = false;
        let (coeff, path) = parse_term(quiver, field, params, line, end_col, &tokens, &mut pos, degree)?;
        degree = Some(path.len());
        relation
            .get_or_insert_with(|| TensorElement::zero(path.len()))
            .add_term(path, &sign * &coeff);
    }
    Ok(relation.expect("at least one term"))
}

#[allow(clippy::too_many_arguments)]
fn parse_term(
    quiver: &Quiver,
    field: Field,
    params: &[(String, BigRational)],
    line: usize,
    end_col: usize,
    tokens: &[(usize, Token)],
    pos: &mut usize,
    degree: Option<usize>,
) -> Result<(Scalar, Path), ParseError> {
    let mut coeff = field.one();
    let mut path: Option<Path> = None;
    loop {
        let Some((col, tok)) = tokens.get(*pos) else {
            return Err(err(line, end_col, ParseErrorKind::Syntax("expected a term".into())));
        };
        let col = *col;
        match tok {
            Token::Number(lit) => {
                let q = parse_rational(lit).map_err(|e| err(line, col, ParseErrorKind::Field(e)))?;
                let s = field
                    .from_rational(&q)
                    .map_err(|e| err(line, col, ParseErrorKind::Field(e)))?;
                coeff = &coeff * &s;
                *pos += 1;
            }
            Token::Ident(name) => {
                let continues_path = matches!(tokens.get(*pos + 1), Some((_, Token::Dot)));
                if !continues_path {
                    if let Some((_, value)) = params.iter().find(|(p, _)| p == name) {
                        let s = field
                            .from_rational(value)
                            .map_err(|e| err(line, col, ParseErrorKind::Field(e)))?;
                        coeff = &coeff * &s;
                        *pos += 1;
                        if !eat_star(tokens, pos) {
                            return Err(err(
                                line,
                                col,
                                ParseErrorKind::Syntax(format!("parameter `{name}` must be followed by `*`")),
                            ));
                        }
                        continue;
                    }
                }
                if path.is_some() {
                    return Err(err(line, col, ParseErrorKind::Syntax("term has two paths".into())));
                }
                path = Some(parse_path_tokens(quiver, params, line, tokens, pos, degree)?);
            }
            _ => {
                return Err(err(
                    line,
                    col,
                    ParseErrorKind::Syntax("expected a coefficient or path".into()),
                ))
            }
        }
        if path.is_some() {
            if eat_star(tokens, pos) {
                continue;
            }
            break;
        }
        if !eat_star(tokens, pos) {
            let col = tokens.get(*pos).map_or(end_col, |t| t.0);
            return Err(err(
                line,
                col,
                ParseErrorKind::Syntax("expected `*` after coefficient".into()),
            ));
        }
    }
    Ok((coeff, path.expect("loop exits with a path")))
}

fn eat_star(tokens: &[(usize, Token)], pos: &mut usize) -> bool {
    if matches!(tokens.get(*pos), Some((_, Token::Star))) {
        *pos += 1;
        true
    } else {
        false
    }
}

fn parse_path_tokens(
    quiver: &Quiver,
    params: &[(String, BigRational)],
    line: usize,
    tokens: &[(usize, Token)],
    pos: &mut usize,
    degree: Option<usize>,
) -> Result<Path, ParseError> {
    let start_col = tokens[*pos].0;
    let mut arrows = Vec::new();
    let mut names = Vec::new();
    loop {
        match tokens.get(*pos) {
            Some((col, Token::Ident(name))) => {
                let Some(a) = quiver.arrow_index(name) else {
                    let kind = if quiver.vertex_index(name).is_some() {
                        ParseErrorKind::Inhomogeneous {
                            path: name.clone(),
                            degree: 0,
                            expected: degree.unwrap_or(1),
                        }
                    } else if params.iter().any(|(p, _)| p == name) {
                        ParseErrorKind::Syntax(format!("parameter `{name}` inside a path"))
                    } else if names.is_empty() && !matches!(tokens.get(*pos + 1), Some((_, Token::Dot))) {
                        ParseErrorKind::UnboundParameter(name.clone())
                    } else {
                        ParseErrorKind::UnknownArrow(name.clone())
                    };
                    return Err(err(line, *col, kind));
                };
                arrows.push(a);
                names.push(name.clone());
                *pos += 1;
            }
            Some((col, _)) => return Err(err(line, *col, ParseErrorKind::Syntax("expected an arrow name".into()))),
            None => return Err(err(line, start_col, ParseErrorKind::Syntax("dangling `.`".into()))),
        }
        if matches!(tokens.get(*pos), Some((_, Token::Dot))) {
            *pos += 1;
        } else {
            break;
        }
    }
    let text = names.join(".");
    let path = Path::from_arrows(quiver, arrows)
        .ok_or_else(|| err(line, start_col, ParseErrorKind::NonComposable(text.clone())))?;
    if let Some(expected) = degree.filter(|&d| d != path.len()) {
        return Err(err(
            line,
            start_col,
            ParseErrorKind::Inhomogeneous {
                path: text,
                degree: path.len(),
                expected,
            },
        ));
    }
    Ok(path)
}
