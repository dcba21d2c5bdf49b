//! Text format for groups: a `degree d` line followed by one generator per
//! line, either as an image list `[i0,i1,...]` or in cycle notation. Points
//! are 0-based and `#` starts a comment.

use std::path::Path;

use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::perm::Perm;

/// Parses a group description.
pub fn parse_group(text: &str) -> Result<PermGroup> {
    let mut degree: Option<usize> = None;
    let mut gens = Vec::new();
    for (n, raw) in text.lines().enumerate() {
        let line_no = n + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let err = |msg: String| Error::Parse { line: line_no, msg };
        match degree {
            None => {
                let rest = line
                    .strip_prefix("degree")
                    .ok_or_else(|| err("expected `degree d`".into()))?;
                let d: usize = rest
                    .trim()
                    .parse()
                    .map_err(|_| err(format!("bad degree `{}`", rest.trim())))?;
                if d > crate::perm::MAX_DEGREE {
                    return Err(Error::DegreeTooLarge(d));
                }
                degree = Some(d);
            }
            Some(d) => {
                let g = Perm::parse(d, line).map_err(|e| err(e.to_string()))?;
                gens.push(g);
            }
        }
    }
    let degree = degree.ok_or(Error::Parse {
        line: 0,
        msg: "missing `degree d` line".into(),
    })?;
    if gens.is_empty() {
        return Err(Error::NoGenerators);
    }
    PermGroup::new(degree, gens)
}

pub fn load_group(path: impl AsRef<Path>) -> Result<PermGroup> {
    parse_group(&std::fs::read_to_string(path)?)
}

/// Writes a group in the format read by [`parse_group`].
pub fn format_group(group: &PermGroup) -> String {
    let mut out = format!("degree {}\n", group.degree());
    for g in group.generators() {
        out.push_str(&g.to_string());
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_both_notations() {
        let g = parse_group("# dihedral of order 8\ndegree 4\n[1,2,3,0]\n(1 3) # reflection\n").unwrap();
        assert_eq!(g.degree(), 4);
        assert_eq!(g.order(), 8);
    }

    #[test]
    fn empty_generator_list() {
        assert!(matches!(parse_group("degree 5\n# nothing\n"), Err(Error::NoGenerators)));
        assert_eq!(parse_group("degree 5\n").unwrap_err().to_string(), "no generators");
    }

    #[test]
    fn parse_errors_carry_lines() {
        match parse_group("degree 3\n(0 1)\n(0 5)\n") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(parse_group("(0 1)\n"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(parse_group("degree x\n"), Err(Error::Parse { .. })));
    }

    #[test]
    fn round_trip() {
        let g = parse_group("degree 5\n(0 1 2 3 4)\n(0 1)\n").unwrap();
        let h = parse_group(&format_group(&g)).unwrap();
        assert_eq!(g.generators(), h.generators());
    }
}
