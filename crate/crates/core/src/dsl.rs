//! Line-oriented text format and JSON schema for presentations.
//!
//! ```text
//! field Q            # or: field fp:5
//! vertex 1 2 3
//! arrow a 1 2
//! arrow b 2 3
//! relation a*b
//! relation 2/3 * (a*b) - (a*b)
//! ```

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::{Presentation, Relation, Term};
use crate::error::{Error, ParseError};
use crate::field::{FieldDescriptor, Scalar};
use crate::quiver::Quiver;

type RawTerm = (BigRational, Vec<String>);

#[derive(Clone, Debug)]
struct RawRelation {
    terms: Vec<RawTerm>,
    line: usize,
    column: usize,
}

/// A parsed document before coefficients are mapped into a field.
#[derive(Clone, Debug)]
pub struct Document {
    pub field: Option<FieldDescriptor>,
    vertices: Vec<String>,
    arrows: Vec<(String, String, String, usize)>,
    relations: Vec<RawRelation>,
}

fn perr(line: usize, column: usize, message: impl Into<String>) -> ParseError {
    ParseError { line, column, message: message.into() }
}

impl Document {
    /// Builds the presentation, with `field` overriding the declared field.
    pub fn into_presentation(self, field: Option<FieldDescriptor>) -> Result<Presentation, Error> {
        let field = field.or(self.field).unwrap_or(FieldDescriptor::Rationals);
        let arrows: Vec<(String, String, String)> =
            self.arrows.iter().map(|(l, s, t, _)| (l.clone(), s.clone(), t.clone())).collect();
        let quiver = Quiver::new(&self.vertices, &arrows)?;
        let mut relations = Vec::new();
        for r in &self.relations {
            let mut terms = Vec::new();
            for (c, path) in &r.terms {
                let coef = field.from_ratio(c.numer(), c.denom()).map_err(|e| perr(r.line, r.column, e.to_string()))?;
                if !coef.is_zero() {
                    terms.push(Term { coef, path: path.clone() });
                }
            }
            if terms.is_empty() {
                return Err(perr(r.line, r.column, format!("relation vanishes over {field}")).into());
            }
            relations.push(Relation { terms });
        }
        Ok(Presentation::new(quiver, relations, field))
    }
}

/// Parses either the text format or, when the input starts with `{`, JSON.
pub fn parse(text: &str) -> Result<Document, ParseError> {
    if text.trim_start().starts_with('{') {
        parse_json(text)
    } else {
        parse_text(text)
    }
}

/// Parses and builds a presentation in one step.
pub fn parse_presentation(text: &str, field: Option<FieldDescriptor>) -> Result<Presentation, Error> {
    parse(text)?.into_presentation(field)
}

pub fn parse_text(text: &str) -> Result<Document, ParseError> {
    let mut doc = Document { field: None, vertices: Vec::new(), arrows: Vec::new(), relations: Vec::new() };
    for (ln, raw) in text.lines().enumerate() {
        let line = ln + 1;
        let content = raw.split('#').next().unwrap_or("");
        let trimmed = content.trim_start();
        if trimmed.is_empty() {
            continue;
        }
        let indent = content.len() - trimmed.len();
        let (kw, rest) = trimmed.split_once(char::is_whitespace).unwrap_or((trimmed, ""));
        let rest_col = indent + kw.len() + 2;
        let words: Vec<&str> = rest.split_whitespace().collect();
        match kw {
            "field" => {
                if words.len() != 1 {
                    return Err(perr(line, rest_col, "expected one field descriptor"));
                }
                if doc.field.is_some() {
                    return Err(perr(line, indent + 1, "field declared twice"));
                }
                doc.field =
                    Some(words[0].parse().map_err(|e: crate::error::FieldError| perr(line, rest_col, e.to_string()))?);
            }
            "vertex" => {
                if words.is_empty() {
                    return Err(perr(line, rest_col, "expected vertex labels"));
                }
                doc.vertices.extend(words.iter().map(|w| w.to_string()));
            }
            "arrow" => {
                if words.len() != 3 {
                    return Err(perr(line, rest_col, "expected `arrow <label> <source> <target>`"));
                }
                if !is_identifier(words[0]) {
                    return Err(perr(line, rest_col, format!("invalid arrow label `{}`", words[0])));
                }
                doc.arrows.push((words[0].to_string(), words[1].to_string(), words[2].to_string(), line));
            }
            "relation" => {
                let mut p = ExprParser { chars: rest.chars().collect(), pos: 0, line, offset: rest_col };
                let poly = p.parse_relation()?;
                doc.relations.push(RawRelation { terms: poly, line, column: rest_col });
            }
            other => return Err(perr(line, indent + 1, format!("unknown keyword `{other}`"))),
        }
    }
    Ok(doc)
}

fn is_identifier(s: &str) -> bool {
    let mut it = s.chars();
    matches!(it.next(), Some(c) if c.is_alphabetic() || c == '_')
        && it.all(|c| c.is_alphanumeric() || c == '_' || c == '\'')
}

/// Recursive-descent parser for relation expressions in the free path algebra.
struct ExprParser {
    chars: Vec<char>,
    pos: usize,
    line: usize,
    offset: usize,
}

fn add_raw(acc: &mut Vec<RawTerm>, c: BigRational, path: Vec<String>) {
    if let Some(t) = acc.iter_mut().find(|t| t.1 == path) {
        t.0 += c;
    } else {
        acc.push((c, path));
    }
}

fn mul_raw(x: &[RawTerm], y: &[RawTerm]) -> Vec<RawTerm> {
    let mut out = Vec::new();
    for (cx, px) in x {
        for (cy, py) in y {
            let mut p = px.clone();
            p.extend(py.iter().cloned());
            add_raw(&mut out, cx * cy, p);
        }
    }
    out
}

impl ExprParser {
    fn err(&self, msg: impl Into<String>) -> ParseError {
        perr(self.line, self.offset + self.pos, msg)
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn parse_relation(&mut self) -> Result<Vec<RawTerm>, ParseError> {
        if self.peek().is_none() {
            return Err(self.err("empty relation"));
        }
        let e = self.expr()?;
        if let Some(c) = self.peek() {
            return Err(self.err(format!("unexpected `{c}`")));
        }
        let e: Vec<RawTerm> = e.into_iter().filter(|t| !t.0.is_zero()).collect();
        if e.is_empty() {
            return Err(perr(self.line, self.offset, "relation is identically zero"));
        }
        Ok(e)
    }

    fn expr(&mut self) -> Result<Vec<RawTerm>, ParseError> {
        let mut acc = Vec::new();
        let mut sign = BigRational::one();
        if let Some(c @ ('+' | '-')) = self.peek() {
            self.pos += 1;
            if c == '-' {
                sign = -sign;
            }
        }
        loop {
            for (c, p) in self.term()? {
                add_raw(&mut acc, &sign * c, p);
            }
            match self.peek() {
                Some('+') => sign = BigRational::one(),
                Some('-') => sign = -BigRational::one(),
                _ => return Ok(acc),
            }
            self.pos += 1;
        }
    }

    fn term(&mut self) -> Result<Vec<RawTerm>, ParseError> {
        let mut acc = self.factor()?;
        while self.peek() == Some('*') {
            self.pos += 1;
            let f = self.factor()?;
            acc = mul_raw(&acc, &f);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Vec<RawTerm>, ParseError> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(')') {
                    return Err(self.err("expected `)`"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let num = self.integer()?;
                let mut value = BigRational::from_integer(num);
                if self.chars.get(self.pos) == Some(&'/') {
                    self.pos += 1;
                    let den = self.integer()?;
                    if den.is_zero() {
                        return Err(self.err("zero denominator"));
                    }
                    value /= BigRational::from_integer(den);
                }
                Ok(vec![(value, Vec::new())])
            }
            Some(c) if c.is_alphabetic() || c == '_' => {
                let start = self.pos;
                while self.pos < self.chars.len()
                    && (self.chars[self.pos].is_alphanumeric() || matches!(self.chars[self.pos], '_' | '\''))
                {
                    self.pos += 1;
                }
                let label: String = self.chars[start..self.pos].iter().collect();
                Ok(vec![(BigRational::one(), vec![label])])
            }
            Some(c) => Err(self.err(format!("unexpected `{c}`"))),
            None => Err(self.err("unexpected end of relation")),
        }
    }

    fn integer(&mut self) -> Result<BigInt, ParseError> {
        let start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected an integer"));
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        Ok(s.parse().expect("digits"))
    }
}

#[derive(Serialize, Deserialize)]
struct JsonArrow {
    label: String,
    src: JsonLabel,
    dst: JsonLabel,
}

#[derive(Serialize, Deserialize, Clone)]
#[serde(untagged)]
enum JsonLabel {
    Text(String),
    Number(i64),
}

impl JsonLabel {
    fn text(&self) -> String {
        match self {
            JsonLabel::Text(s) => s.clone(),
            JsonLabel::Number(n) => n.to_string(),
        }
    }
}

#[derive(Serialize, Deserialize, Clone)]
#[serde(untagged)]
enum JsonCoef {
    Text(String),
    Number(i64),
}

#[derive(Serialize, Deserialize)]
struct JsonTerm {
    coef: JsonCoef,
    path: Vec<String>,
}

#[derive(Serialize, Deserialize)]
struct JsonPresentation {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    field: Option<String>,
    vertices: Vec<JsonLabel>,
    arrows: Vec<JsonArrow>,
    #[serde(default)]
    relations: Vec<Vec<JsonTerm>>,
}

fn parse_ratio(s: &str) -> Option<BigRational> {
    let s = s.trim();
    let (n, d) = s.split_once('/').unwrap_or((s, "1"));
    let n: BigInt = n.trim().parse().ok()?;
    let d: BigInt = d.trim().parse().ok()?;
    (!d.is_zero()).then(|| BigRational::new(n, d))
}

pub fn parse_json(text: &str) -> Result<Document, ParseError> {
    let j: JsonPresentation = serde_json::from_str(text).map_err(|e| perr(e.line(), e.column(), e.to_string()))?;
    let field = match &j.field {
        Some(s) => Some(s.parse().map_err(|e: crate::error::FieldError| perr(1, 1, e.to_string()))?),
        None => None,
    };
    let mut relations = Vec::new();
    for (ri, r) in j.relations.iter().enumerate() {
        let mut terms = Vec::new();
        for t in r {
            let c = match &t.coef {
                JsonCoef::Number(n) => BigRational::from_integer(BigInt::from(*n)),
                JsonCoef::Text(s) => {
                    parse_ratio(s).ok_or_else(|| perr(1, 1, format!("relation {}: bad coefficient `{s}`", ri + 1)))?
                }
            };
            add_raw(&mut terms, c, t.path.clone());
        }
        terms.retain(|t: &RawTerm| !t.0.is_zero());
        if terms.is_empty() {
            return Err(perr(1, 1, format!("relation {} is identically zero", ri + 1)));
        }
        relations.push(RawRelation { terms, line: 1, column: 1 });
    }
    Ok(Document {
        field,
        vertices: j.vertices.iter().map(JsonLabel::text).collect(),
        arrows: j.arrows.iter().map(|a| (a.label.clone(), a.src.text(), a.dst.text(), 1)).collect(),
        relations,
    })
}

fn render_coef(c: &Scalar) -> String {
    c.to_string()
}

/// Renders a presentation in the text format; parsing the output gives back
/// an equal presentation.
pub fn render(p: &Presentation) -> String {
    let q = &p.quiver;
    let mut out = format!("field {}\nvertex {}\n", p.field, q.vertices().join(" "));
    for a in q.arrows() {
        out.push_str(&format!("arrow {} {} {}\n", a.label, q.vertices()[a.source], q.vertices()[a.target]));
    }
    for r in &p.relations {
        out.push_str("relation ");
        for (i, t) in r.terms.iter().enumerate() {
            let neg = t.coef.is_negative();
            let abs = if neg { -&t.coef } else { t.coef.clone() };
            match (i, neg) {
                (0, true) => out.push('-'),
                (0, false) => {}
                (_, true) => out.push_str(" - "),
                (_, false) => out.push_str(" + "),
            }
            if !abs.is_one() {
                out.push_str(&render_coef(&abs));
                out.push_str(" * ");
            }
            out.push_str(&t.path.join("*"));
        }
        out.push('\n');
    }
    out
}

/// Renders a presentation in the JSON schema.
pub fn render_json(p: &Presentation) -> String {
    let q = &p.quiver;
    let j = JsonPresentation {
        field: Some(p.field.to_string()),
        vertices: q.vertices().iter().map(|v| JsonLabel::Text(v.clone())).collect(),
        arrows: q
            .arrows()
            .iter()
            .map(|a| JsonArrow {
                label: a.label.clone(),
                src: JsonLabel::Text(q.vertices()[a.source].clone()),
                dst: JsonLabel::Text(q.vertices()[a.target].clone()),
            })
            .collect(),
        relations: p
            .relations
            .iter()
            .map(|r| {
                r.terms
                    .iter()
                    .map(|t| JsonTerm { coef: JsonCoef::Text(render_coef(&t.coef)), path: t.path.clone() })
                    .collect()
            })
            .collect(),
    };
    serde_json::to_string_pretty(&j).expect("serializable")
}

#[cfg(test)]
mod tests {
    use super::*;

    const CHAIN: &str = "field Q\nvertex 1 2 3 4\narrow a 1 2\narrow b 1 2\narrow c 2 3\narrow d 2 3\narrow e 3 4\n\
relation a*c\nrelation b*d\nrelation a*d + b*c\nrelation c*e\nrelation d*e\n";

    #[test]
    fn parses_text_format() {
        let p = parse_presentation(CHAIN, None).unwrap();
        assert_eq!(p.quiver.arrow_count(), 5);
        assert_eq!(p.relations.len(), 5);
        assert_eq!(p.relations[2].terms.len(), 2);
    }

    #[test]
    fn coefficients_and_parentheses() {
        let text = "vertex 1 2 3\narrow a 1 2\narrow b 2 3\narrow c 1 2\nrelation 2/3 * (a*b) - (c*b)  # comment\n";
        let p = parse_presentation(text, None).unwrap();
        let f = FieldDescriptor::Rationals;
        assert_eq!(p.relations[0].terms[0].coef, f.parse_scalar("2/3").unwrap());
        assert_eq!(p.relations[0].terms[1].coef, f.from_i64(-1));
        let p5 = parse_presentation(text, Some(FieldDescriptor::prime(5).unwrap())).unwrap();
        assert_eq!(p5.relations[0].terms[0].coef.to_string(), "4");
        let distributed = "vertex 1 2 3\narrow a 1 2\narrow b 2 3\narrow c 1 2\nrelation (a - 3*c) * b\n";
        let p = parse_presentation(distributed, None).unwrap();
        assert_eq!(p.relations[0].terms[1].coef, f.from_i64(-3));
    }

    #[test]
    fn reports_positions() {
        let e = parse_text("vertex 1\narrow x 1 1\nrelation x*x +\n").unwrap_err();
        assert_eq!(e.line, 3);
        let e = parse_text("vertex 1\nbogus\n").unwrap_err();
        assert_eq!((e.line, e.column), (2, 1));
        let e = parse_text("field Q\nvertex 1\narrow x 1 1\nrelation x*(x\n").unwrap_err();
        assert_eq!(e.line, 4);
    }

    #[test]
    fn vanishing_denominator_is_rejected() {
        let text = "field fp:3\nvertex 1\narrow x 1 1\nrelation 1/3 * x*x*x\n";
        assert!(parse_presentation(text, None).is_err());
    }

    #[test]
    fn round_trips() {
        let text =
            "field fp:7\nvertex 1 2 3\narrow a 1 2\narrow b 2 3\narrow c 1 2\nrelation 3 * a*b - c*b\nrelation -a*b\n";
        for src in [CHAIN, text] {
            let p = parse_presentation(src, None).unwrap();
            assert_eq!(parse_presentation(&render(&p), None).unwrap(), p);
            assert_eq!(parse_presentation(&render_json(&p), None).unwrap(), p);
        }
    }
}
