//! Short graph names for random runs: `K<n>`, `P<n>`, `C<n>`, `star<k>`
//! (one hub and `k` leaves), optionally followed by `+loops` (a loop at every
//! vertex) or `+loop` (a loop at vertex 0; `+loop@v` picks the vertex).

use qwalk_core::{build_graph, Graph};

use crate::error::{CliError, CliResult};

pub fn parse_graph_spec(spec: &str) -> CliResult<Graph> {
    let bad = |why: &str| CliError::Input(format!("graph spec \"{spec}\": {why}"));
    let (base, suffix) = match spec.split_once('+') {
        Some((b, s)) => (b.trim(), Some(s.trim())),
        None => (spec.trim(), None),
    };
    let (kind, digits) = base
        .find(|c: char| c.is_ascii_digit())
        .map(|i| base.split_at(i))
        .ok_or_else(|| bad("expected a size, as in K4 or star3"))?;
    let k: usize = digits.parse().map_err(|_| bad("size is not an integer"))?;
    let (n, edges): (usize, Vec<(usize, usize)>) = match kind {
        "K" => {
            if k == 0 {
                return Err(bad("K needs at least one vertex"));
            }
            (k, (0..k).flat_map(|u| (u + 1..k).map(move |v| (u, v))).collect())
        }
        "P" => {
            if k == 0 {
                return Err(bad("P needs at least one vertex"));
            }
            (k, (1..k).map(|v| (v - 1, v)).collect())
        }
        "C" => {
            if k < 3 {
                return Err(bad("C needs at least three vertices"));
            }
            (k, (0..k).map(|v| (v, (v + 1) % k)).collect())
        }
        "star" => {
            if k == 0 {
                return Err(bad("star needs at least one leaf"));
            }
            (k + 1, (1..=k).map(|v| (0, v)).collect())
        }
        _ => return Err(bad("unknown family; use K, P, C or star")),
    };
    let loops: Vec<usize> = match suffix {
        None => Vec::new(),
        Some("loops") => (0..n).collect(),
        Some("loop") => vec![0],
        Some(s) if s.starts_with("loop@") => {
            let v: usize = s[5..].parse().map_err(|_| bad("loop@ needs a vertex id"))?;
            if v >= n {
                return Err(bad("loop vertex out of range"));
            }
            vec![v]
        }
        Some(_) => return Err(bad("unknown suffix; use +loops, +loop or +loop@v")),
    };
    Ok(build_graph(n, &edges, &loops)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn families() {
        let g = parse_graph_spec("K3+loops").unwrap();
        assert_eq!((g.n(), g.m0(), g.m1()), (3, 3, 3));
        let g = parse_graph_spec("K4").unwrap();
        assert_eq!((g.n(), g.m0(), g.m1()), (4, 6, 0));
        assert!(parse_graph_spec("P3").unwrap().is_tree_core());
        let g = parse_graph_spec("star3+loop@2").unwrap();
        assert_eq!((g.n(), g.m0(), g.loops()), (4, 3, &[2][..]));
        assert_eq!(parse_graph_spec("C5").unwrap().m0(), 5);
    }

    #[test]
    fn rejects_nonsense() {
        for s in ["X4", "K", "C2", "K3+wings", "star3+loop@9"] {
            let e = parse_graph_spec(s).unwrap_err();
            assert_eq!(e.exit_code(), 2, "{s}");
        }
    }
}
