//! Group descriptor grammar: `FAMILY ':' param (':' param)* ['.fieldaut:' k]`,
//! e.g. `PSL2:7`, `PSL:3:4`, `PSU:4:2`, `Sp:4:4`, `Sz:8`, `PGL2:9`, `Alt:6`,
//! `Sz:8.fieldaut:3`.

use std::fmt;
use thiserror::Error;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Family {
    Psl2,
    Pgl2,
    Sl2,
    Psl,
    Sl,
    Psu,
    Su,
    Sp,
    Sz,
    Alt,
    Sym,
    Cyclic,
    Dihedral,
    Agl1,
}

impl Family {
    pub fn token(&self) -> &'static str {
        match self {
            Family::Psl2 => "PSL2",
            Family::Pgl2 => "PGL2",
            Family::Sl2 => "SL2",
            Family::Psl => "PSL",
            Family::Sl => "SL",
            Family::Psu => "PSU",
            Family::Su => "SU",
            Family::Sp => "Sp",
            Family::Sz => "Sz",
            Family::Alt => "Alt",
            Family::Sym => "Sym",
            Family::Cyclic => "Cyclic",
            Family::Dihedral => "Dihedral",
            Family::Agl1 => "AGL1",
        }
    }

    fn from_token(t: &str) -> Option<Family> {
        Some(match t {
            "PSL2" => Family::Psl2,
            "PGL2" => Family::Pgl2,
            "SL2" => Family::Sl2,
            "PSL" => Family::Psl,
            "SL" => Family::Sl,
            "PSU" => Family::Psu,
            "SU" => Family::Su,
            "Sp" => Family::Sp,
            "Sz" => Family::Sz,
            "Alt" => Family::Alt,
            "Sym" => Family::Sym,
            "Cyclic" => Family::Cyclic,
            "Dihedral" => Family::Dihedral,
            "AGL1" => Family::Agl1,
            _ => return None,
        })
    }

    pub fn n_params(&self) -> usize {
        match self {
            Family::Psl | Family::Sl | Family::Psu | Family::Su | Family::Sp => 2,
            _ => 1,
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("empty descriptor")]
    Empty,
    #[error("unknown family `{0}`")]
    UnknownFamily(String),
    #[error("bad integer `{0}`")]
    BadInt(String),
    #[error("{family} takes {want} parameter(s), got {got}")]
    ParamCount {
        family: &'static str,
        want: usize,
        got: usize,
    },
    #[error("bad suffix `{0}` (expected `.fieldaut:k`)")]
    BadSuffix(String),
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GroupSpec {
    pub family: Family,
    pub params: Vec<u64>,
    pub fieldaut: Option<u32>,
}

impl GroupSpec {
    pub fn new(family: Family, params: Vec<u64>) -> GroupSpec {
        GroupSpec {
            family,
            params,
            fieldaut: None,
        }
    }

    pub fn parse(s: &str) -> Result<GroupSpec, ParseError> {
        if s.is_empty() {
            return Err(ParseError::Empty);
        }
        let (head, fieldaut) = match s.find('.') {
            Some(dot) => {
                let suffix = &s[dot + 1..];
                let k = suffix
                    .strip_prefix("fieldaut:")
                    .ok_or_else(|| ParseError::BadSuffix(suffix.to_string()))?;
                let k: u32 = parse_int(k)? as u32;
                if k == 0 {
                    return Err(ParseError::BadInt("0".into()));
                }
                (&s[..dot], Some(k))
            }
            None => (s, None),
        };
        let mut parts = head.split(':');
        let tok = parts.next().ok_or(ParseError::Empty)?;
        let family =
            Family::from_token(tok).ok_or_else(|| ParseError::UnknownFamily(tok.to_string()))?;
        let params: Vec<u64> = parts
            .map(parse_int)
            .collect::<Result<Vec<u64>, ParseError>>()?;
        if params.len() != family.n_params() {
            return Err(ParseError::ParamCount {
                family: family.token(),
                want: family.n_params(),
                got: params.len(),
            });
        }
        Ok(GroupSpec {
            family,
            params,
            fieldaut,
        })
    }
}

fn parse_int(s: &str) -> Result<u64, ParseError> {
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
        return Err(ParseError::BadInt(s.to_string()));
    }
    s.parse::<u64>().map_err(|_| ParseError::BadInt(s.to_string()))
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.family.token())?;
        for p in &self.params {
            write!(f, ":{p}")?;
        }
        if let Some(k) = self.fieldaut {
            write!(f, ".fieldaut:{k}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_examples() {
        for s in [
            "PSL2:7",
            "PSL:3:4",
            "PSU:4:2",
            "Sp:4:4",
            "Sz:8",
            "PGL2:9",
            "Alt:6",
            "Sz:8.fieldaut:3",
            "PSL2:9.fieldaut:2",
            "Dihedral:8",
            "AGL1:5",
        ] {
            let spec = GroupSpec::parse(s).unwrap();
            assert_eq!(spec.to_string(), s, "round trip");
        }
    }

    #[test]
    fn parse_rejects() {
        assert_eq!(GroupSpec::parse("").unwrap_err(), ParseError::Empty);
        assert!(matches!(
            GroupSpec::parse("XYZ:3").unwrap_err(),
            ParseError::UnknownFamily(_)
        ));
        assert!(matches!(
            GroupSpec::parse("PSL2:7:9").unwrap_err(),
            ParseError::ParamCount { .. }
        ));
        assert!(matches!(
            GroupSpec::parse("PSL2:x").unwrap_err(),
            ParseError::BadInt(_)
        ));
        assert!(matches!(
            GroupSpec::parse("Sz:8.frob:3").unwrap_err(),
            ParseError::BadSuffix(_)
        ));
        assert!(matches!(
            GroupSpec::parse("PSL2:-7").unwrap_err(),
            ParseError::BadInt(_)
        ));
    }
}
