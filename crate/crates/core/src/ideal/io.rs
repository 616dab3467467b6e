//! Text and JSON formats for ideals.
//!
//! Text: an optional `vars: a b c` header, then one generator per line with
//! variables joined by `*`. `#` starts a comment. Blank lines are skipped.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::{MonomialIdeal, SquarefreeMonomial};
use crate::error::{Error, Result};

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct IdealJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vars: Option<Vec<String>>,
    pub gens: Vec<Vec<String>>,
}

fn valid_name(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '\'')
}

impl MonomialIdeal {
    pub fn parse_text(text: &str) -> Result<Self> {
        let mut vars: Vec<String> = Vec::new();
        let mut index: HashMap<String, usize> = HashMap::new();
        let mut fixed_vars = false;
        let mut gens = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line_no = lineno + 1;
            let line = raw.split('#').next().unwrap_or("");
            if line.trim().is_empty() {
                continue;
            }
            let offset = line.len() - line.trim_start().len();
            let body = line.trim();
            if let Some(rest) = body.strip_prefix("vars:") {
                if fixed_vars || !gens.is_empty() {
                    return Err(Error::parse(line_no, offset + 1, "vars header must come first and once"));
                }
                for name in rest.split_whitespace() {
                    if !valid_name(name) {
                        let col = line.find(name).unwrap_or(0) + 1;
                        return Err(Error::parse(line_no, col, format!("invalid variable name `{name}`")));
                    }
                    if index.insert(name.to_string(), vars.len()).is_some() {
                        let col = line.find(name).unwrap_or(0) + 1;
                        return Err(Error::parse(line_no, col, format!("duplicate variable `{name}`")));
                    }
                    vars.push(name.to_string());
                }
                fixed_vars = true;
                continue;
            }
            let mut m = SquarefreeMonomial::one();
            let mut col = offset;
            for piece in body.split('*') {
                let lead = piece.len() - piece.trim_start().len();
                let name = piece.trim();
                let at = col + lead + 1;
                col += piece.len() + 1;
                if name == "1" && body.trim() == "1" {
                    return Err(Error::UnitIdeal);
                }
                if !valid_name(name) {
                    return Err(Error::parse(line_no, at, format!("invalid variable `{name}`")));
                }
                let i = match index.get(name) {
                    Some(&i) => i,
                    None if fixed_vars => {
                        return Err(Error::parse(line_no, at, format!("undeclared variable `{name}`")))
                    }
                    None => {
                        index.insert(name.to_string(), vars.len());
                        vars.push(name.to_string());
                        vars.len() - 1
                    }
                };
                if m.contains(i) {
                    return Err(Error::parse(line_no, at, format!("repeated variable `{name}` (not squarefree)")));
                }
                m.insert(i);
            }
            gens.push(m);
        }
        MonomialIdeal::new(vars, gens)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("vars: {}\n", self.vars.join(" "));
        for g in &self.gens {
            out.push_str(&self.monomial_string(g));
            out.push('\n');
        }
        out
    }

    pub fn parse_json(text: &str) -> Result<Self> {
        let doc: IdealJson = serde_json::from_str(text)?;
        Self::from_json(&doc)
    }

    pub fn from_json(doc: &IdealJson) -> Result<Self> {
        match &doc.vars {
            None => Self::from_names(&doc.gens),
            Some(vars) => {
                let index: HashMap<&str, usize> =
                    vars.iter().enumerate().map(|(i, v)| (v.as_str(), i)).collect();
                let mut gens = Vec::with_capacity(doc.gens.len());
                for g in &doc.gens {
                    let mut m = SquarefreeMonomial::one();
                    for name in g {
                        let i = index.get(name.as_str()).ok_or_else(|| {
                            Error::Precondition(format!("undeclared variable `{name}`"))
                        })?;
                        m.insert(*i);
                    }
                    gens.push(m);
                }
                Self::new(vars.clone(), gens)
            }
        }
    }

    pub fn to_json(&self) -> IdealJson {
        IdealJson {
            vars: Some(self.vars.clone()),
            gens: self
                .gens
                .iter()
                .map(|g| g.iter().map(|i| self.vars[i].clone()).collect())
                .collect(),
        }
    }

    /// Parse either format, choosing JSON when the text starts with `{`.
    pub fn parse_any(text: &str) -> Result<Self> {
        if text.trim_start().starts_with('{') {
            Self::parse_json(text)
        } else {
            Self::parse_text(text)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_round_trip() {
        let i = MonomialIdeal::parse_text("# demo\nvars: a b c d\na*b\nb * c  # tail\n\nc*d\n").unwrap();
        assert_eq!(i.vars().len(), 4);
        assert_eq!(i.mu(), 3);
        let back = MonomialIdeal::parse_text(&i.to_text()).unwrap();
        assert_eq!(back, i);
    }

    #[test]
    fn json_round_trip() {
        let i = MonomialIdeal::parse_list("x1*x2, x2*x3").unwrap();
        let s = serde_json::to_string(&i.to_json()).unwrap();
        assert_eq!(MonomialIdeal::parse_any(&s).unwrap(), i);
    }

    #[test]
    fn parse_errors_carry_position() {
        match MonomialIdeal::parse_text("vars: a b\na*c\n") {
            Err(Error::Parse { line, column, .. }) => assert_eq!((line, column), (2, 3)),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(
            MonomialIdeal::parse_text("a*a\n"),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!(matches!(MonomialIdeal::parse_text("# nothing\n"), Err(Error::EmptyIdeal)));
    }
}
