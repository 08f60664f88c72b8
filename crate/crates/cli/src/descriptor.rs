//! Parsing element descriptors, the inverse of `Group::describe`.
//!
//! * `S:k`: cycle notation, `(1 2 3)(4 5)`, with `()` for the identity;
//! * metacyclic groups: coordinates `(i,j)` for `x^i y^j`;
//! * direct products: `[a; b]` with factor descriptors;
//! * any group: a bare element index.

use powercrit_core::group::Perm;
use powercrit_core::{Error, Group, Result};

pub fn parse_element(group: &Group, text: &str) -> Result<usize> {
    parse_at(group, text, 0)
}

fn parse_error(position: usize, token: &str, message: &str) -> Error {
    Error::Parse {
        position,
        token: token.to_string(),
        message: message.to_string(),
    }
}

// `offset` is the position of `text` inside the full descriptor.
fn parse_at(group: &Group, text: &str, offset: usize) -> Result<usize> {
    let lead = text.len() - text.trim_start().len();
    let body = text.trim();
    let offset = offset + lead;
    if !body.is_empty() && body.chars().all(|c| c.is_ascii_digit()) {
        let index: usize = body
            .parse()
            .map_err(|_| parse_error(offset, body, "index out of range"))?;
        if index >= group.order() {
            return Err(parse_error(
                offset,
                body,
                &format!("index must be below the group order {}", group.order()),
            ));
        }
        return Ok(index);
    }
    if let Some(degree) = group.perm_degree() {
        let cycles = parse_cycles(body, offset)?;
        let perm = Perm::from_cycles(degree, &cycles)?;
        return group.element_from_perm(&perm);
    }
    if group.metacyclic_params().is_some() {
        return parse_coords(group, body, offset);
    }
    if let Some((a, b)) = group.product_factors() {
        let inner = body
            .strip_prefix('[')
            .and_then(|s| s.strip_suffix(']'))
            .ok_or_else(|| parse_error(offset, body, "expected `[a; b]`"))?;
        let split = top_level_semicolon(inner)
            .ok_or_else(|| parse_error(offset, body, "expected `;` between the factors"))?;
        let g = parse_at(a, &inner[..split], offset + 1)?;
        let h = parse_at(b, &inner[split + 1..], offset + 2 + split)?;
        return group.element_from_pair(g, h);
    }
    Err(parse_error(offset, body, "expected an element index"))
}

fn top_level_semicolon(s: &str) -> Option<usize> {
    let mut depth = 0i32;
    for (i, c) in s.char_indices() {
        match c {
            '[' | '(' => depth += 1,
            ']' | ')' => depth -= 1,
            ';' if depth == 0 => return Some(i),
            _ => {}
        }
    }
    None
}

fn parse_cycles(body: &str, offset: usize) -> Result<Vec<Vec<usize>>> {
    let mut cycles = Vec::new();
    let mut rest = body;
    let mut pos = offset;
    loop {
        let trimmed = rest.trim_start();
        pos += rest.len() - trimmed.len();
        rest = trimmed;
        if rest.is_empty() {
            break;
        }
        if !rest.starts_with('(') {
            return Err(parse_error(pos, &rest[..1], "expected `(` starting a cycle"));
        }
        let close = rest
            .find(')')
            .ok_or_else(|| parse_error(pos, "(", "unclosed cycle"))?;
        let mut cycle = Vec::new();
        let inner = &rest[1..close];
        for token in inner.split(|c: char| c.is_whitespace() || c == ',').filter(|t| !t.is_empty()) {
            let at = pos + 1 + (token.as_ptr() as usize - inner.as_ptr() as usize);
            let point: usize = token
                .parse()
                .map_err(|_| parse_error(at, token, "expected a point"))?;
            cycle.push(point);
        }
        if !cycle.is_empty() {
            cycles.push(cycle);
        }
        pos += close + 1;
        rest = &rest[close + 1..];
    }
    if body.is_empty() {
        return Err(parse_error(offset, "<empty>", "expected an element"));
    }
    Ok(cycles)
}

fn parse_coords(group: &Group, body: &str, offset: usize) -> Result<usize> {
    let inner = body
        .strip_prefix('(')
        .and_then(|s| s.strip_suffix(')'))
        .ok_or_else(|| parse_error(offset, body, "expected `(i,j)`"))?;
    let parts: Vec<&str> = inner.split(',').map(str::trim).collect();
    let [i, j] = parts.as_slice() else {
        return Err(parse_error(offset, body, "expected two coordinates"));
    };
    let num = |s: &str| -> Result<usize> {
        s.parse()
            .map_err(|_| parse_error(offset, s, "expected a non-negative integer"))
    };
    group.element_from_coords(num(i)?, num(j)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trips_describe() {
        for spec in ["S:4", "S:1", "M:5,2,2,2,7", "C:2 x S:3", "D:5", "Q:3 x (C:2 x S:3)", "C:12"] {
            let g = Group::parse(spec).unwrap();
            for x in g.elements() {
                assert_eq!(parse_element(&g, &g.describe(x)).unwrap(), x, "{spec}");
            }
        }
    }

    #[test]
    fn accepts_loose_cycle_notation() {
        let g = Group::symmetric(8).unwrap();
        let a = parse_element(&g, "(1 2 3)(4 5 6 7 8)").unwrap();
        let b = parse_element(&g, " (4,5,6,7,8) (1,2,3) ").unwrap();
        assert_eq!(a, b);
        assert_eq!(g.element_order(a), 15);
    }

    #[test]
    fn errors_carry_positions() {
        let g = Group::symmetric(4).unwrap();
        match parse_element(&g, "(1 2)(3 x)") {
            Err(Error::Parse { position, token, .. }) => assert_eq!((position, token.as_str()), (8, "x")),
            other => panic!("{other:?}"),
        }
        assert!(parse_element(&g, "(1 2 9)").is_err());
        assert!(parse_element(&g, "(1 2)(2 3)").is_err());
        let m = Group::parse("M:5,2,2,2,7").unwrap();
        assert!(parse_element(&m, "(25,0)").is_err());
        assert!(parse_element(&m, "7, 1").is_err());
        assert!(parse_element(&Group::cyclic(5).unwrap(), "5").is_err());
    }
}
