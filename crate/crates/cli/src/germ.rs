//! The line-oriented germ file format.
//!
//! ```text
//! # Hénon–Heiles
//! vars: q1 q2 p1 p2
//! symplectic: (q1,p1) (q2,p2)
//! component: p1^2 + p2^2 - 4*q2^3 - 2*q1^2*q2
//! component: q1^4 + 4*q1^2*q2^2 - 4*p1*(q1*p2 - q2*p1)
//! singular_dim: 1
//! assume: Tn-type simplifiable calibrated
//! ```

use std::fmt;
use std::path::Path;

use vanishing_core::polycore::{parse_polynomial, Ambient, PolyError, Polynomial};
use vanishing_core::singularity::Hypothesis;
use vanishing_core::symplectic::{MapGerm, SymplecticContext};

/// Parse failure with 1-based line and column.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GermError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl fmt::Display for GermError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.line, self.column, self.message)
    }
}

impl std::error::Error for GermError {}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GermFile {
    pub vars: Vec<String>,
    pub symplectic: Vec<(String, String)>,
    pub components: Vec<Polynomial>,
    pub singular_dim: Option<usize>,
    pub assume: Vec<Hypothesis>,
}

impl GermFile {
    pub fn ambient(&self) -> Ambient {
        Ambient::new(&self.vars).expect("validated while parsing")
    }

    pub fn symplectic_context(&self) -> Option<SymplecticContext> {
        if self.symplectic.is_empty() {
            return None;
        }
        let pairs: Vec<(&str, &str)> = self.symplectic.iter().map(|(q, p)| (q.as_str(), p.as_str())).collect();
        Some(SymplecticContext::new(&self.ambient(), &pairs).expect("validated while parsing"))
    }

    pub fn map_germ(&self) -> MapGerm {
        MapGerm::new(&self.ambient(), self.components.clone(), self.symplectic_context())
            .expect("validated while parsing")
    }

    pub fn read(path: &Path) -> Result<GermFile, String> {
        let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
        parse_germ(&text).map_err(|e| format!("{}:{e}", path.display()))
    }
}

fn err(line: usize, column: usize, message: impl Into<String>) -> GermError {
    GermError { line, column, message: message.into() }
}

/// Column (1-based, in chars) of byte offset `offset` within `line`.
fn column_of(line: &str, offset: usize) -> usize {
    line[..offset].chars().count() + 1
}

fn parse_pairs(body: &str, start: usize, lineno: usize, raw: &str) -> Result<Vec<(String, String)>, GermError> {
    let mut pairs = Vec::new();
    let mut rest = body;
    let mut offset = start;
    loop {
        let trimmed = rest.trim_start();
        offset += rest.len() - trimmed.len();
        rest = trimmed;
        if rest.is_empty() {
            break;
        }
        if !rest.starts_with('(') {
            return Err(err(lineno, column_of(raw, offset), "expected '(' to open a pair"));
        }
        let close = rest
            .find(')')
            .ok_or_else(|| err(lineno, column_of(raw, offset), "unclosed pair"))?;
        let inner = &rest[1..close];
        let parts: Vec<&str> = inner.split(',').map(str::trim).collect();
        if parts.len() != 2 || parts.iter().any(|p| p.is_empty()) {
            return Err(err(lineno, column_of(raw, offset), "a pair must be (q,p)"));
        }
        pairs.push((parts[0].to_string(), parts[1].to_string()));
        offset += close + 1;
        rest = &rest[close + 1..];
    }
    Ok(pairs)
}

pub fn parse_germ(text: &str) -> Result<GermFile, GermError> {
    let mut vars: Option<(Vec<String>, usize)> = None;
    let mut symplectic: Option<(Vec<(String, String)>, usize)> = None;
    let mut components = Vec::new();
    let mut singular_dim = None;
    let mut assume = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let content = raw.split('#').next().unwrap_or("");
        if content.trim().is_empty() {
            continue;
        }
        let lead = content.len() - content.trim_start().len();
        let colon = content
            .find(':')
            .ok_or_else(|| err(lineno, lead + 1, "expected '<key>: <value>'"))?;
        let key = content[..colon].trim();
        let body = &content[colon + 1..];
        let body_start = colon + 1;
        match key {
            "vars" => {
                if vars.is_some() {
                    return Err(err(lineno, lead + 1, "duplicate 'vars' line"));
                }
                let names: Vec<String> = body.split_whitespace().map(String::from).collect();
                if names.is_empty() {
                    return Err(err(lineno, column_of(raw, body_start), "no variables declared"));
                }
                if let Err(e) = Ambient::new(&names) {
                    return Err(err(lineno, column_of(raw, body_start), e.to_string()));
                }
                vars = Some((names, lineno));
            }
            "symplectic" => {
                if symplectic.is_some() {
                    return Err(err(lineno, lead + 1, "duplicate 'symplectic' line"));
                }
                symplectic = Some((parse_pairs(body, body_start, lineno, raw)?, lineno));
            }
            "component" => {
                let (names, _) = vars
                    .as_ref()
                    .ok_or_else(|| err(lineno, lead + 1, "'component' before 'vars'"))?;
                let ambient = Ambient::new(names).expect("checked above");
                let expr_start = body_start + (body.len() - body.trim_start().len());
                let expr = body.trim();
                match parse_polynomial(expr, &ambient) {
                    Ok(p) => components.push(p),
                    Err(PolyError::Parse { position, message }) => {
                        let byte = expr.char_indices().nth(position).map_or(expr.len(), |(b, _)| b);
                        return Err(err(lineno, column_of(raw, expr_start + byte), message));
                    }
                    Err(e) => return Err(err(lineno, column_of(raw, expr_start), e.to_string())),
                }
            }
            "singular_dim" => {
                let v = body.trim();
                let n = v
                    .parse::<usize>()
                    .map_err(|_| err(lineno, column_of(raw, body_start), format!("'{v}' is not a nonnegative integer")))?;
                singular_dim = Some(n);
            }
            "assume" => {
                let mut offset = body_start;
                for token in body.split_whitespace() {
                    let at = content[offset..].find(token).map_or(offset, |p| p + offset);
                    let h = token
                        .parse::<Hypothesis>()
                        .map_err(|e| err(lineno, column_of(raw, at), e.to_string()))?;
                    if !assume.contains(&h) {
                        assume.push(h);
                    }
                    offset = at + token.len();
                }
            }
            other => return Err(err(lineno, lead + 1, format!("unknown key '{other}'"))),
        }
    }

    let (vars, _) = vars.ok_or_else(|| err(1, 1, "missing 'vars' line"))?;
    if components.is_empty() {
        return Err(err(text.lines().count().max(1), 1, "no 'component' lines"));
    }
    let symplectic = match symplectic {
        None => Vec::new(),
        Some((pairs, lineno)) => {
            let ambient = Ambient::new(&vars).expect("checked");
            let refs: Vec<(&str, &str)> = pairs.iter().map(|(q, p)| (q.as_str(), p.as_str())).collect();
            if let Err(e) = SymplecticContext::new(&ambient, &refs) {
                return Err(err(lineno, 1, e.to_string()));
            }
            pairs
        }
    };
    Ok(GermFile { vars, symplectic, components, singular_dim, assume })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn full_file() {
        let g = parse_germ(
            "# comment\nvars: q1 p1 q2 p2\nsymplectic: (q1,p1) (q2, p2)\ncomponent: p1*q1  # product\ncomponent: p2\nsingular_dim: 1\nassume: Tn-type calibrated\n",
        )
        .unwrap();
        assert_eq!(g.vars, ["q1", "p1", "q2", "p2"]);
        assert_eq!(g.symplectic.len(), 2);
        assert_eq!(g.components[0].to_string(), "q1*p1");
        assert_eq!(g.singular_dim, Some(1));
        assert_eq!(g.assume, [Hypothesis::TnType, Hypothesis::Calibrated]);
        assert_eq!(g.map_germ().target_dimension(), 2);
    }

    #[test]
    fn errors_carry_positions() {
        let e = parse_germ("vars: x y\ncomponent: x + z\n").unwrap_err();
        assert_eq!((e.line, e.column), (2, 12));
        let e = parse_germ("vars: x y\ncomponent: x + * y\n").unwrap_err();
        assert_eq!((e.line, e.column), (2, 16));
        let e = parse_germ("vars: x\nfoo: 1\n").unwrap_err();
        assert_eq!((e.line, e.column), (2, 1));
        let e = parse_germ("vars: x y\ncomponent: x\nassume: Tn-type smooth\n").unwrap_err();
        assert_eq!((e.line, e.column), (3, 17));
        let e = parse_germ("component: x\n").unwrap_err();
        assert_eq!(e.line, 1);
        let e = parse_germ("vars: x y\nsymplectic: (x,y) (y,x)\ncomponent: x\n").unwrap_err();
        assert_eq!(e.line, 2);
        assert!(parse_germ("vars: x\n").is_err());
        assert!(parse_germ("vars: x x\ncomponent: x\n").is_err());
        assert!(parse_germ("vars: x y\nsymplectic: (x y)\ncomponent: x\n").is_err());
    }
}
