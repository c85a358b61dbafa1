//! Line-oriented text format for rings and modules.
//!
//! ```text
//! # comment
//! field 32003
//! ring R = k[x,y] / (x^2, x*y)
//! module M over R = coker deg(0,1) [[x, y^2], [0, x]]
//! ```
//!
//! `/ (...)` on a ring is optional; polynomials use `^` for powers and an
//! optional `*` for products. Every inner `[...]` of a module is one relation
//! vector with one entry per generator. Printed objects re-parse to equal
//! objects, so generated examples are reproducible from their reports.

use torsam_core::error::{Error, Result};
use torsam_core::field::FieldSpec;
use torsam_core::groebner::ModVec;
use torsam_core::monomial::Monomial;
use torsam_core::poly::Poly;
use torsam_core::ring::{ModulePresentation, Ring};

#[derive(Debug, Clone)]
pub struct Document {
    pub field: FieldSpec,
    pub rings: Vec<(String, Ring)>,
    pub modules: Vec<(String, String, ModulePresentation)>,
}

impl Document {
    pub fn ring(&self, name: &str) -> Option<&Ring> {
        self.rings.iter().find(|(n, _)| n == name).map(|(_, r)| r)
    }

    pub fn module(&self, name: &str) -> Option<&ModulePresentation> {
        self.modules
            .iter()
            .find(|(n, _, _)| n == name)
            .map(|(_, _, m)| m)
    }

    pub fn first_module(&self) -> Option<&ModulePresentation> {
        self.modules.first().map(|(_, _, m)| m)
    }

    pub fn first_ring(&self) -> Option<&Ring> {
        self.rings.first().map(|(_, r)| r)
    }
}

struct Cursor {
    chars: Vec<char>,
    pos: usize,
    line: usize,
}

impl Cursor {
    fn new(text: &str, line: usize) -> Self {
        Cursor {
            chars: text.chars().collect(),
            pos: 0,
            line,
        }
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            line: self.line,
            col: self.pos + 1,
            msg: msg.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self
            .chars
            .get(self.pos)
            .map(|c| c.is_whitespace())
            .unwrap_or(false)
        {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            self.err(format!("expected '{}'", c))
        }
    }

    fn ident(&mut self) -> Result<String> {
        self.skip_ws();
        let start = self.pos;
        while self
            .chars
            .get(self.pos)
            .map(|c| c.is_ascii_alphanumeric() || *c == '_')
            .unwrap_or(false)
        {
            self.pos += 1;
        }
        if self.pos == start || self.chars[start].is_ascii_digit() {
            self.pos = start;
            return self.err("expected an identifier");
        }
        Ok(self.chars[start..self.pos].iter().collect())
    }

    fn keyword(&mut self, kw: &str) -> Result<()> {
        let save = self.pos;
        let got = self.ident()?;
        if got == kw {
            Ok(())
        } else {
            self.pos = save;
            self.err(format!("expected '{}'", kw))
        }
    }

    fn integer(&mut self) -> Result<i64> {
        self.skip_ws();
        let start = self.pos;
        if self.chars.get(self.pos) == Some(&'-') {
            self.pos += 1;
        }
        while self
            .chars
            .get(self.pos)
            .map(|c| c.is_ascii_digit())
            .unwrap_or(false)
        {
            self.pos += 1;
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        if s.is_empty() || s == "-" {
            self.pos = start;
            return self.err("expected an integer");
        }
        s.parse::<i64>()
            .map_err(|_| Error::Parse {
                line: self.line,
                col: start + 1,
                msg: format!("integer '{}' out of range", s),
            })
    }

    fn at_end(&mut self) -> bool {
        self.peek().is_none()
    }

    fn rest_is_comment(&mut self) -> bool {
        self.peek() == Some('#')
    }
}

/// Parse one polynomial: sum of terms `[int] v1[^e1] * v2[^e2] ...` with the
/// `*` optional and variables drawn from `names`.
fn parse_poly(cur: &mut Cursor, field: FieldSpec, names: &[String]) -> Result<Poly> {
    let nvars = names.len();
    let mut terms: Vec<(Monomial, i64)> = Vec::new();
    let mut first = true;
    loop {
        let mut sign = 1i64;
        match cur.peek() {
            Some('+') => {
                cur.pos += 1;
            }
            Some('-') => {
                cur.pos += 1;
                sign = -1;
            }
            _ if first => {}
            _ => break,
        }
        first = false;
        // One term.
        let mut coeff: i64 = 1;
        let mut exps = vec![0u32; nvars];
        let mut saw_anything = false;
        if cur
            .peek()
            .map(|c| c.is_ascii_digit())
            .unwrap_or(false)
        {
            coeff = cur.integer()?;
            saw_anything = true;
        }
        loop {
            let save = cur.pos;
            if cur.eat('*') {
                // Mandatory factor after '*'.
            } else if !cur
                .peek()
                .map(|c| c.is_ascii_alphabetic() || c == '_')
                .unwrap_or(false)
            {
                break;
            }
            if !cur
                .peek()
                .map(|c| c.is_ascii_alphabetic() || c == '_')
                .unwrap_or(false)
            {
                cur.pos = save;
                return cur.err("expected a variable after '*'");
            }
            let name = cur.ident()?;
            let idx = match names.iter().position(|n| *n == name) {
                Some(i) => i,
                None => {
                    return cur.err(format!("unknown variable '{}'", name));
                }
            };
            let e = if cur.eat('^') {
                let e = cur.integer()?;
                if e < 0 {
                    return cur.err("negative exponent");
                }
                e as u32
            } else {
                1
            };
            exps[idx] += e;
            saw_anything = true;
        }
        if !saw_anything {
            return cur.err("expected a term");
        }
        terms.push((Monomial::new(exps), sign * coeff));
    }
    if terms.is_empty() {
        return cur.err("expected a polynomial");
    }
    Ok(Poly::from_terms(field, nvars, terms))
}

fn parse_ring_line(cur: &mut Cursor, field: FieldSpec) -> Result<(String, Ring)> {
    let name = cur.ident()?;
    cur.expect('=')?;
    cur.keyword("k")?;
    cur.expect('[')?;
    let mut vars = Vec::new();
    loop {
        vars.push(cur.ident()?);
        if !cur.eat(',') {
            break;
        }
    }
    cur.expect(']')?;
    let mut relations = Vec::new();
    if cur.eat('/') {
        cur.expect('(')?;
        if cur.peek() != Some(')') {
            loop {
                relations.push(parse_poly(cur, field, &vars)?);
                if !cur.eat(',') {
                    break;
                }
            }
        }
        cur.expect(')')?;
    }
    if !cur.at_end() && !cur.rest_is_comment() {
        return cur.err("unexpected trailing input");
    }
    let ring = Ring::new(field, vars, relations).map_err(|e| match e {
        Error::Parse { .. } => e,
        other => Error::Parse {
            line: cur.line,
            col: 1,
            msg: other.to_string(),
        },
    })?;
    Ok((name, ring))
}

fn parse_module_line(
    cur: &mut Cursor,
    doc: &Document,
) -> Result<(String, String, ModulePresentation)> {
    let name = cur.ident()?;
    cur.keyword("over")?;
    let ring_name = cur.ident()?;
    let ring = doc
        .ring(&ring_name)
        .ok_or(Error::Parse {
            line: cur.line,
            col: cur.pos,
            msg: format!("unknown ring '{}'", ring_name),
        })?
        .clone();
    cur.expect('=')?;
    cur.keyword("coker")?;
    cur.keyword("deg")?;
    cur.expect('(')?;
    let mut degs = Vec::new();
    if cur.peek() != Some(')') {
        loop {
            degs.push(cur.integer()?);
            if !cur.eat(',') {
                break;
            }
        }
    }
    cur.expect(')')?;
    let names = ring.var_names().to_vec();
    let field = ring.field();
    let mut relations: Vec<ModVec> = Vec::new();
    cur.expect('[')?;
    if cur.peek() != Some(']') {
        loop {
            cur.expect('[')?;
            let mut entries = Vec::new();
            if cur.peek() != Some(']') {
                loop {
                    entries.push(parse_poly(cur, field, &names)?);
                    if !cur.eat(',') {
                        break;
                    }
                }
            }
            cur.expect(']')?;
            if entries.len() != degs.len() {
                return cur.err(format!(
                    "relation has {} entries but the module has {} generators",
                    entries.len(),
                    degs.len()
                ));
            }
            relations.push(ModVec::new(entries));
            if !cur.eat(',') {
                break;
            }
        }
    }
    cur.expect(']')?;
    if !cur.at_end() && !cur.rest_is_comment() {
        return cur.err("unexpected trailing input");
    }
    let pres = ModulePresentation::new(ring, degs, relations).map_err(|e| Error::Parse {
        line: cur.line,
        col: 1,
        msg: e.to_string(),
    })?;
    Ok((name, ring_name, pres))
}

/// Parse a whole document. `default_field` applies until a `field` line.
pub fn parse_document(text: &str, default_field: FieldSpec) -> Result<Document> {
    let mut doc = Document {
        field: default_field,
        rings: Vec::new(),
        modules: Vec::new(),
    };
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let mut cur = Cursor::new(raw, line_no);
        let save = cur.pos;
        let head = cur.ident()?;
        match head.as_str() {
            "field" => {
                if !doc.rings.is_empty() {
                    return cur.err("'field' must precede ring declarations");
                }
                let p = cur.integer()?;
                if p <= 1 {
                    return cur.err("field characteristic must be a prime");
                }
                doc.field = FieldSpec::new(p as u64).map_err(|e| Error::Parse {
                    line: line_no,
                    col: cur.pos,
                    msg: e.to_string(),
                })?;
            }
            "ring" => {
                let (name, ring) = parse_ring_line(&mut cur, doc.field)?;
                if doc.ring(&name).is_some() {
                    return cur.err(format!("ring '{}' declared twice", name));
                }
                doc.rings.push((name, ring));
            }
            "module" => {
                let entry = parse_module_line(&mut cur, &doc)?;
                if doc.module(&entry.0).is_some() {
                    return cur.err(format!("module '{}' declared twice", entry.0));
                }
                doc.modules.push(entry);
            }
            _ => {
                cur.pos = save;
                return cur.err(format!(
                    "expected 'field', 'ring', or 'module', found '{}'",
                    head
                ));
            }
        }
    }
    Ok(doc)
}

/// Parse a standalone polynomial in the given variables.
pub fn parse_polynomial(text: &str, field: FieldSpec, names: &[String]) -> Result<Poly> {
    let mut cur = Cursor::new(text, 1);
    let p = parse_poly(&mut cur, field, names)?;
    if !cur.at_end() && !cur.rest_is_comment() {
        return cur.err("unexpected trailing input");
    }
    Ok(p)
}

pub fn print_poly(p: &Poly, names: &[String]) -> String {
    format!("{}", p.display(names))
}

pub fn print_ring(name: &str, ring: &Ring) -> String {
    let vars = ring.var_names().join(",");
    if ring.relations().is_empty() {
        format!("ring {} = k[{}]", name, vars)
    } else {
        let rels: Vec<String> = ring
            .relations()
            .iter()
            .map(|p| print_poly(p, ring.var_names()))
            .collect();
        format!("ring {} = k[{}] / ({})", name, vars, rels.join(", "))
    }
}

pub fn print_module(name: &str, ring_name: &str, pres: &ModulePresentation) -> String {
    let names = pres.ring().var_names();
    let degs: Vec<String> = pres.gen_degs().iter().map(|d| d.to_string()).collect();
    let rows: Vec<String> = pres
        .relations()
        .iter()
        .map(|v| {
            let entries: Vec<String> = v.comps().iter().map(|p| print_poly(p, names)).collect();
            format!("[{}]", entries.join(", "))
        })
        .collect();
    format!(
        "module {} over {} = coker deg({}) [{}]",
        name,
        ring_name,
        degs.join(","),
        rows.join(", ")
    )
}

/// A complete, reparsable description of one (ring, module) instance.
pub fn print_instance(ring: &Ring, pres: &ModulePresentation) -> String {
    format!(
        "field {}\n{}\n{}\n",
        ring.field().characteristic(),
        print_ring("R", ring),
        print_module("M", "R", pres)
    )
}
