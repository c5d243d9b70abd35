//! Input language: a block ring, named monomial ideals and named ideal
//! systems. Expressions are evaluated eagerly.
//!
//! ```text
//! ring blocks = [[x1, x2], [y1, y2]]
//! ideal I = intersect((x1, y1), (x2, y2))
//! ideal J = (x1^2, x2, y1, y2)
//! system S = (J; I)
//! ```

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::sync::Arc;

use mixmult_core::idealmm::{validate_system, IdealSystem};
use mixmult_core::kernel::{BlockRingSpec, Monomial, MonomialIdeal};

use crate::error::{CliError, CliResult};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SystemDecl {
    pub j: String,
    pub ideals: Vec<String>,
    pub system: IdealSystem,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Model {
    pub ring: Arc<BlockRingSpec>,
    /// Ideals in declaration order.
    pub ideals: Vec<(String, MonomialIdeal)>,
    pub systems: Vec<(String, SystemDecl)>,
}

impl Model {
    pub fn ideal(&self, name: &str) -> Option<&MonomialIdeal> {
        self.ideals.iter().find(|(n, _)| n == name).map(|(_, i)| i)
    }

    pub fn system(&self, name: &str) -> Option<&SystemDecl> {
        self.systems.iter().find(|(n, _)| n == name).map(|(_, s)| s)
    }

    /// Source text that parses back to an equivalent model.
    pub fn to_source(&self) -> String {
        let spec = &self.ring;
        let blocks: Vec<String> = (0..spec.num_blocks())
            .map(|b| {
                let names: Vec<&str> = spec.block_range(b).map(|v| spec.var_name(v)).collect();
                format!("[{}]", names.join(", "))
            })
            .collect();
        let mut out = format!("ring blocks = [{}]\n", blocks.join(", "));
        for (name, ideal) in &self.ideals {
            let _ = writeln!(out, "ideal {name} = {}", ideal.format(spec));
        }
        for (name, decl) in &self.systems {
            let _ = writeln!(out, "system {name} = ({}; {})", decl.j, decl.ideals.join(", "));
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(u64),
    Sym(char),
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    line: usize,
    column: usize,
}

fn lex(text: &str) -> CliResult<Vec<Token>> {
    let mut out = Vec::new();
    for (li, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("");
        let chars: Vec<char> = line.chars().collect();
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            let column = i + 1;
            if c.is_whitespace() {
                i += 1;
            } else if c.is_ascii_alphabetic() || c == '_' {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                out.push(Token {
                    tok: Tok::Ident(chars[start..i].iter().collect()),
                    line: li + 1,
                    column,
                });
            } else if c.is_ascii_digit() {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let digits: String = chars[start..i].iter().collect();
                let value = digits.parse().map_err(|_| CliError::Parse {
                    line: li + 1,
                    column,
                    message: format!("integer `{digits}` is too large"),
                })?;
                out.push(Token {
                    tok: Tok::Int(value),
                    line: li + 1,
                    column,
                });
            } else if "[](),=;*^".contains(c) {
                out.push(Token {
                    tok: Tok::Sym(c),
                    line: li + 1,
                    column,
                });
                i += 1;
            } else {
                return Err(CliError::Parse {
                    line: li + 1,
                    column,
                    message: format!("unexpected character `{c}`"),
                });
            }
        }
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
    end: (usize, usize),
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.tokens.get(self.pos).map(|t| &t.tok)
    }

    fn peek_at(&self, k: usize) -> Option<&Tok> {
        self.tokens.get(self.pos + k).map(|t| &t.tok)
    }

    fn here(&self) -> (usize, usize) {
        self.tokens
            .get(self.pos)
            .map_or(self.end, |t| (t.line, t.column))
    }

    fn error<T>(&self, message: impl Into<String>) -> CliResult<T> {
        let (line, column) = self.here();
        Err(CliError::Parse {
            line,
            column,
            message: message.into(),
        })
    }

    fn error_at<T>(&self, at: (usize, usize), message: impl Into<String>) -> CliResult<T> {
        Err(CliError::Parse {
            line: at.0,
            column: at.1,
            message: message.into(),
        })
    }

    fn describe(&self) -> String {
        match self.peek() {
            None => "end of input".into(),
            Some(Tok::Ident(s)) => format!("`{s}`"),
            Some(Tok::Int(n)) => format!("`{n}`"),
            Some(Tok::Sym(c)) => format!("`{c}`"),
        }
    }

    fn expect_sym(&mut self, c: char) -> CliResult<()> {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.pos += 1;
            Ok(())
        } else {
            self.error(format!("expected `{c}`, found {}", self.describe()))
        }
    }

    fn eat_sym(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect_keyword(&mut self, word: &str) -> CliResult<()> {
        if self.peek() == Some(&Tok::Ident(word.into())) {
            self.pos += 1;
            Ok(())
        } else {
            self.error(format!("expected `{word}`, found {}", self.describe()))
        }
    }

    fn name(&mut self) -> CliResult<(String, (usize, usize))> {
        let at = self.here();
        match self.peek().cloned() {
            Some(Tok::Ident(s)) => {
                self.pos += 1;
                Ok((s, at))
            }
            _ => self.error(format!("expected a name, found {}", self.describe())),
        }
    }

    fn integer(&mut self) -> CliResult<u64> {
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                self.pos += 1;
                Ok(n)
            }
            _ => self.error(format!("expected an integer, found {}", self.describe())),
        }
    }
}

struct Builder {
    ring: Arc<BlockRingSpec>,
    ideals: Vec<(String, MonomialIdeal)>,
    systems: Vec<(String, SystemDecl)>,
}

impl Builder {
    fn declared(&self, name: &str) -> bool {
        self.ideals.iter().any(|(n, _)| n == name) || self.systems.iter().any(|(n, _)| n == name)
    }
}

const OPERATORS: [&str; 4] = ["intersect", "sum", "product", "power"];

fn ring_decl(p: &mut Parser) -> CliResult<Arc<BlockRingSpec>> {
    let start = p.here();
    p.expect_keyword("ring")?;
    p.expect_keyword("blocks")?;
    p.expect_sym('=')?;
    p.expect_sym('[')?;
    let mut blocks = Vec::new();
    loop {
        p.expect_sym('[')?;
        let mut block = vec![p.name()?.0];
        while p.eat_sym(',') {
            block.push(p.name()?.0);
        }
        p.expect_sym(']')?;
        blocks.push(block);
        if !p.eat_sym(',') {
            break;
        }
    }
    p.expect_sym(']')?;
    BlockRingSpec::new(blocks)
        .map(Arc::new)
        .or_else(|e| p.error_at(start, e.to_string()))
}

fn monomial(p: &mut Parser, ring: &BlockRingSpec) -> CliResult<Monomial> {
    let mut exps = vec![0u32; ring.num_vars()];
    loop {
        let at = p.here();
        match p.peek().cloned() {
            Some(Tok::Int(1)) => p.pos += 1,
            Some(Tok::Ident(name)) => {
                p.pos += 1;
                let var = match ring.var(&name) {
                    Ok(v) => v,
                    Err(_) => return p.error_at(at, format!("unknown variable `{name}`")),
                };
                let power = if p.eat_sym('^') {
                    let k = p.integer()?;
                    if k == 0 {
                        return p.error_at(at, "exponents must be positive");
                    }
                    u32::try_from(k).or_else(|_| p.error_at(at, "exponent too large"))?
                } else {
                    1
                };
                exps[var] = exps[var]
                    .checked_add(power)
                    .map_or_else(|| p.error_at(at, "exponent too large"), Ok)?;
            }
            _ => return p.error(format!("expected a variable, found {}", p.describe())),
        }
        if !p.eat_sym('*') {
            return Ok(Monomial::from_exponents(exps));
        }
    }
}

fn expr(p: &mut Parser, b: &Builder) -> CliResult<MonomialIdeal> {
    let nvars = b.ring.num_vars();
    let at = p.here();
    match p.peek().cloned() {
        Some(Tok::Sym('(')) => {
            p.pos += 1;
            if p.peek() == Some(&Tok::Int(0)) && p.peek_at(1) == Some(&Tok::Sym(')')) {
                p.pos += 2;
                return Ok(MonomialIdeal::zero(nvars));
            }
            let mut gens = vec![monomial(p, &b.ring)?];
            while p.eat_sym(',') {
                gens.push(monomial(p, &b.ring)?);
            }
            p.expect_sym(')')?;
            Ok(MonomialIdeal::new(nvars, gens))
        }
        Some(Tok::Ident(word)) if OPERATORS.contains(&word.as_str()) && p.peek_at(1) == Some(&Tok::Sym('(')) => {
            p.pos += 2;
            let first = expr(p, b)?;
            if word == "power" {
                p.expect_sym(',')?;
                let k = p.integer()?;
                p.expect_sym(')')?;
                let k = u32::try_from(k).or_else(|_| p.error_at(at, "power too large"))?;
                return first.power(k).or_else(|e| p.error_at(at, e.to_string()));
            }
            let mut acc = first;
            while p.eat_sym(',') {
                let next = expr(p, b)?;
                acc = match word.as_str() {
                    "intersect" => acc.intersect(&next),
                    "sum" => acc.sum(&next),
                    _ => acc.product(&next).or_else(|e| p.error_at(at, e.to_string()))?,
                };
            }
            p.expect_sym(')')?;
            Ok(acc)
        }
        Some(Tok::Ident(name)) => {
            p.pos += 1;
            match b.ideals.iter().find(|(n, _)| *n == name) {
                Some((_, ideal)) => Ok(ideal.clone()),
                None => p.error_at(at, format!("unknown ideal `{name}`")),
            }
        }
        _ => p.error(format!("expected an ideal expression, found {}", p.describe())),
    }
}

fn resolve(p: &Parser, b: &Builder, name: &str, at: (usize, usize)) -> CliResult<MonomialIdeal> {
    match b.ideals.iter().find(|(n, _)| n == name) {
        Some((_, i)) => Ok(i.clone()),
        None => p.error_at(at, format!("unknown ideal `{name}`")),
    }
}

pub fn parse_model(text: &str) -> CliResult<Model> {
    let tokens = lex(text)?;
    let end = (text.lines().count().max(1), text.lines().last().map_or(1, |l| l.len() + 1));
    let mut p = Parser { tokens, pos: 0, end };
    let ring = ring_decl(&mut p)?;
    let mut b = Builder {
        ring,
        ideals: Vec::new(),
        systems: Vec::new(),
    };
    while p.peek().is_some() {
        let at = p.here();
        let (keyword, _) = p.name()?;
        match keyword.as_str() {
            "ideal" => {
                let (name, name_at) = p.name()?;
                if b.declared(&name) {
                    return p.error_at(name_at, format!("duplicate name `{name}`"));
                }
                p.expect_sym('=')?;
                let ideal = expr(&mut p, &b)?;
                b.ideals.push((name, ideal));
            }
            "system" => {
                let (name, name_at) = p.name()?;
                if b.declared(&name) {
                    return p.error_at(name_at, format!("duplicate name `{name}`"));
                }
                p.expect_sym('=')?;
                p.expect_sym('(')?;
                let (j, j_at) = p.name()?;
                let j_ideal = resolve(&p, &b, &j, j_at)?;
                p.expect_sym(';')?;
                let mut names = Vec::new();
                let mut ideals = Vec::new();
                loop {
                    let (n, n_at) = p.name()?;
                    ideals.push(resolve(&p, &b, &n, n_at)?);
                    names.push(n);
                    if !p.eat_sym(',') {
                        break;
                    }
                }
                p.expect_sym(')')?;
                let system = validate_system(b.ring.clone(), j_ideal, ideals)
                    .or_else(|e| p.error_at(name_at, e.to_string()))?;
                b.systems.push((
                    name,
                    SystemDecl {
                        j,
                        ideals: names,
                        system,
                    },
                ));
            }
            other => return p.error_at(at, format!("expected `ideal` or `system`, found `{other}`")),
        }
    }
    Ok(Model {
        ring: b.ring,
        ideals: b.ideals,
        systems: b.systems,
    })
}

/// Ideals keyed by name, for comparing models.
pub fn ideal_map(model: &Model) -> BTreeMap<&str, &MonomialIdeal> {
    model.ideals.iter().map(|(n, i)| (n.as_str(), i)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_basic_model() {
        let m = parse_model("ring blocks = [[x],[y]]  ideal I = (x*y)").unwrap();
        assert_eq!(m.ideal("I").unwrap().format(&m.ring), "(x*y)");
        assert_eq!(m.ring.num_blocks(), 2);
    }

    #[test]
    fn expressions_and_comments() {
        let text = "# two blocks\nring blocks = [[x1, x2], [y]]\n\
                    ideal A = power((x1, y), 2)  # squared\n\
                    ideal B = intersect(A, (x1))\n\
                    ideal C = sum((0), product((x2), (y)))\n\
                    ideal U = (1)\n";
        let m = parse_model(text).unwrap();
        assert_eq!(m.ideal("A").unwrap().format(&m.ring), "(x1^2, x1*y, y^2)");
        assert_eq!(m.ideal("B").unwrap().format(&m.ring), "(x1^2, x1*y)");
        assert_eq!(m.ideal("C").unwrap().format(&m.ring), "(x2*y)");
        assert!(m.ideal("U").unwrap().is_unit());
    }

    #[test]
    fn errors_carry_positions() {
        let err = parse_model("ring blocks = [[x],[y]]\nideal I = (x*q)").unwrap_err();
        match err {
            CliError::Parse { line, column, message } => {
                assert_eq!((line, column), (2, 14));
                assert!(message.contains("`q`"));
            }
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            parse_model("ring blocks = [[x]]\nideal I = (x)\nideal I = (x)"),
            Err(CliError::Parse { line: 3, .. })
        ));
        assert!(matches!(
            parse_model("ring blocks = [[x]]\nideal I = J"),
            Err(CliError::Parse { .. })
        ));
        assert!(matches!(parse_model("ring blocks = [[x],[x]]"), Err(CliError::Parse { .. })));
        assert!(matches!(parse_model("ring blocks = [[x]] ideal I = (x^0)"), Err(CliError::Parse { .. })));
    }

    #[test]
    fn systems_are_validated() {
        let m = parse_model("ring blocks = [[x, y]]\nideal J = (x, y)\nideal I = (x)\nsystem S = (J; I)").unwrap();
        assert_eq!(m.system("S").unwrap().system.q(), 2);
        assert!(parse_model("ring blocks = [[x, y]]\nideal J = (x)\nsystem S = (J; J)").is_err());
    }

    #[test]
    fn source_round_trip() {
        let text = "ring blocks = [[a, b], [c]]\nideal I = intersect((a, c), (b^2))\nideal Z = (0)\nideal J = (a, b, c)\nsystem S = (J; I)\n";
        let m = parse_model(text).unwrap();
        let again = parse_model(&m.to_source()).unwrap();
        assert_eq!(again, m);
        assert_eq!(ideal_map(&again), ideal_map(&m));
    }
}
