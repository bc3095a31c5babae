//! Group files: `{"field": <descriptor>, "generators": [<matrix>, ...]}`,
//! with optional `"dim"` (required when there are no generators) and `"name"`.

use std::fmt;
use std::path::Path;

use nilmat::GroupSpec;
use serde_json::{json, Value};

use crate::codec::{field_json, matrices_json, parse_field, parse_matrices, At, ParseError};

#[derive(Debug)]
pub enum LoadError {
    Io(String),
    Parse(ParseError),
    Group(nilmat::Error),
}

impl fmt::Display for LoadError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LoadError::Io(m) => write!(f, "{m}"),
            LoadError::Parse(e) => write!(f, "parse error at {e}"),
            LoadError::Group(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for LoadError {}

impl From<ParseError> for LoadError {
    fn from(e: ParseError) -> Self {
        LoadError::Parse(e)
    }
}

pub fn parse_group_value(v: &Value, seed: u64) -> Result<GroupSpec, LoadError> {
    let root = At::root(v);
    let field = parse_field(&root.key("field")?, seed)?;
    let gens_at = root.key("generators")?;
    let gens = parse_matrices(&gens_at, &field)?;
    let dim = match root.opt("dim") {
        Some(d) => d.usize()?,
        None => match gens.first() {
            Some(m) => m.rows(),
            None => return gens_at.fail("no generators and no `dim`").map_err(Into::into),
        },
    };
    if let Some(i) = gens.iter().position(|m| m.rows() != dim) {
        let at = &gens_at.items()?[i];
        return at.fail(format!("matrix is {0}x{0}, expected {dim}x{dim}", gens[i].rows())).map_err(Into::into);
    }
    GroupSpec::new(field, dim, gens).map_err(LoadError::Group)
}

pub fn parse_group_str(text: &str, seed: u64) -> Result<GroupSpec, LoadError> {
    let v: Value = serde_json::from_str(text).map_err(ParseError::from)?;
    parse_group_value(&v, seed)
}

pub fn parse_group_file(path: &Path, seed: u64) -> Result<GroupSpec, LoadError> {
    let text = std::fs::read_to_string(path).map_err(|e| LoadError::Io(format!("{}: {e}", path.display())))?;
    parse_group_str(&text, seed)
}

pub fn group_json(g: &GroupSpec, name: Option<&str>) -> Value {
    let mut v = json!({
        "field": field_json(&g.field),
        "dim": g.dim,
        "generators": matrices_json(&g.gens),
    });
    if let Some(n) = name {
        v["name"] = Value::String(n.into());
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use nilmat::{Field, Matrix};

    #[test]
    fn unipotent_over_q() {
        let g = parse_group_str(r#"{"field":{"kind":"Q"},"generators":[[["1","1"],["0","1"]]]}"#, 1).unwrap();
        assert_eq!(g.dim, 2);
        assert_eq!(g.gens[0], Matrix::from_ints(&[&[1, 1], &[0, 1]], &Field::Rationals));
        assert_eq!(g.invs[0], Matrix::from_ints(&[&[1, -1], &[0, 1]], &Field::Rationals));
    }

    #[test]
    fn zero_denominator_is_rejected() {
        let e = parse_group_str(r#"{"field":{"kind":"Q"},"generators":[[["1/0","0"],["0","1"]]]}"#, 1);
        match e {
            Err(LoadError::Parse(p)) => assert_eq!(p.path, "$.generators[0][0][0]"),
            other => panic!("expected a parse error, got {other:?}"),
        }
    }

    #[test]
    fn non_square_is_rejected() {
        let e = parse_group_str(r#"{"field":{"kind":"Q"},"generators":[[["1","0","0"],["0","1","0"]]]}"#, 1);
        assert!(matches!(e, Err(LoadError::Parse(_))));
    }

    #[test]
    fn syntax_error_has_position() {
        match parse_group_str("{\"field\":\n  {\"kind\": }", 1) {
            Err(LoadError::Parse(p)) => assert_eq!(p.line, Some(2)),
            other => panic!("expected a parse error, got {other:?}"),
        }
    }

    #[test]
    fn singular_generator() {
        let e = parse_group_str(r#"{"field":{"kind":"GF","p":5},"generators":[[["1","2"],["2","4"]]]}"#, 1);
        assert!(matches!(e, Err(LoadError::Group(nilmat::Error::SingularGenerator(0)))));
    }

    #[test]
    fn round_trip_every_field_kind() {
        let texts = [
            r#"{"field":{"kind":"GF","p":3,"l":2},"generators":[[[["0","1"],"0"],["0","1"]]]}"#,
            r#"{"field":{"kind":"NF","minpoly":["-2","0","1"]},"generators":[[[["0","1"],"0"],["0",["1/2","3"]]]]}"#,
            r#"{"field":{"kind":"FF","base":{"kind":"Q"}},"generators":[[[{"num":["0","1"],"den":["1","1"]},"1"],["0","1"]]]}"#,
            r#"{"field":{"kind":"FF","base":{"kind":"GF","p":5}},"generators":[[[{"num":["0","2"]},"1"],["0","1"]]]}"#,
        ];
        for t in texts {
            let g = parse_group_str(t, 1).unwrap();
            let back = parse_group_value(&group_json(&g, None), 7).unwrap();
            assert_eq!(back.field, g.field);
            assert_eq!(back.gens, g.gens);
        }
    }
}
