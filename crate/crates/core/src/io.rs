//! File loading for the CLI: `.mat` matrices, `.col` colorings, and `.trunc`
//! truncation descriptions (a `.mat` block followed by `DIV` lines).

use std::path::Path;
use std::sync::Arc;

use crate::coloring::Coloring;
use crate::linear::LinearMatroid;
use crate::matroid::RankOracle;
use crate::subset::Subset;
use crate::truncation::k_fold_truncation;
use crate::{Error, Result};

/// A matroid read from disk: the coordinate base plus any truncation steps
/// applied on top of it. For a plain `.mat` file `steps` is empty and
/// `oracle` is the base itself.
pub struct LoadedMatroid {
    pub base: Arc<LinearMatroid>,
    /// (flat generators, fold count) in application order.
    pub steps: Vec<(Subset, usize)>,
    pub oracle: Arc<dyn RankOracle>,
}

impl LoadedMatroid {
    pub fn size(&self) -> usize {
        self.oracle.size()
    }
}

/// Parses a `.mat` or `.trunc` body: `#` comments, an `n d` header, `n`
/// coordinate rows, then optional `DIV i,j,k [folds]` lines applied in
/// order. A missing fold count means the complete truncation of the flat.
pub fn parse_matroid(text: &str) -> Result<LoadedMatroid> {
    let mut mat_part = String::new();
    let mut div_lines: Vec<&str> = Vec::new();
    for raw in text.lines() {
        let line = raw.split('#').next().unwrap().trim();
        if line.starts_with("DIV") {
            div_lines.push(line);
        } else {
            mat_part.push_str(raw);
            mat_part.push('\n');
        }
    }
    let base = Arc::new(LinearMatroid::parse_mat(&mat_part)?);
    let mut oracle: Arc<dyn RankOracle> = base.clone();
    let mut steps = Vec::new();
    for line in div_lines {
        let mut toks = line.split_whitespace();
        toks.next(); // DIV
        let flat = Subset::parse(
            toks.next().ok_or(Error::Parse("DIV line without a flat list".into()))?,
        )
        .map_err(Error::Parse)?;
        let folds = match toks.next() {
            None => oracle.rank(flat).saturating_sub(1),
            Some(t) => t
                .parse()
                .map_err(|_| Error::Parse(format!("bad fold count {t:?}")))?,
        };
        if toks.next().is_some() {
            return Err(Error::Parse("trailing tokens on a DIV line".into()));
        }
        oracle = k_fold_truncation(oracle, flat, folds)?;
        steps.push((flat, folds));
    }
    Ok(LoadedMatroid { base, steps, oracle })
}

/// Renders a `.trunc` body (or a plain `.mat` body when `steps` is empty).
pub fn write_matroid(base: &LinearMatroid, steps: &[(Subset, usize)]) -> String {
    let mut out = base.write_mat();
    for (flat, folds) in steps {
        out.push_str(&format!("DIV {flat} {folds}\n"));
    }
    out
}

pub fn load_matroid(path: &Path) -> Result<LoadedMatroid> {
    parse_matroid(&std::fs::read_to_string(path)?)
}

pub fn load_coloring(path: &Path, n: usize) -> Result<Coloring> {
    Coloring::parse(&std::fs::read_to_string(path)?, n)
}

#[cfg(test)]
mod tests {
    use super::*;

    const TWO_LINES: &str = "\
# two disjoint 3-point lines
6 4
1 0 0 0
0 1 0 0
1 1 0 0
0 0 1 0
0 0 0 1
0 0 1 1
";

    #[test]
    fn plain_mat_roundtrip() {
        let loaded = parse_matroid(TWO_LINES).unwrap();
        assert!(loaded.steps.is_empty());
        assert_eq!(loaded.oracle.full_rank(), 4);
        let rendered = write_matroid(&loaded.base, &loaded.steps);
        let again = parse_matroid(&rendered).unwrap();
        assert_eq!(again.base.write_mat(), loaded.base.write_mat());
    }

    #[test]
    fn div_lines_apply_in_order() {
        let text = format!("{TWO_LINES}DIV 0,1,2\nDIV 3,4,5 1\n");
        let loaded = parse_matroid(&text).unwrap();
        assert_eq!(loaded.steps, vec![(Subset::from_indices([0, 1, 2]), 1), (Subset::from_indices([3, 4, 5]), 1)]);
        assert_eq!(loaded.oracle.full_rank(), 2);
        let rendered = write_matroid(&loaded.base, &loaded.steps);
        let again = parse_matroid(&rendered).unwrap();
        assert_eq!(again.oracle.full_rank(), 2);
    }

    #[test]
    fn bad_div_lines_rejected() {
        assert!(parse_matroid(&format!("{TWO_LINES}DIV\n")).is_err());
        assert!(parse_matroid(&format!("{TWO_LINES}DIV 0,1,2 9\n")).is_err());
        assert!(parse_matroid(&format!("{TWO_LINES}DIV 0,1,2 1 1\n")).is_err());
        assert!(parse_matroid(&format!("{TWO_LINES}DIV 0\n")).is_err());
    }
}
