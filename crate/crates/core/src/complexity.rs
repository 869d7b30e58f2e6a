//! Upper and lower indices of thick levels and the oriented complexity.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::digraph::ThickDigraph;
use crate::error::{Error, Result};
use crate::model::{Complex, Side};

/// Thick levels reachable upward along flow lines, including `thick`.
pub fn reach_up(complex: &Complex, thick: &str) -> Result<BTreeSet<String>> {
    complex.thick_level(thick)?;
    Ok(ThickDigraph::new(complex).reach_up(thick))
}

/// Thick levels reachable downward along flow lines, including `thick`.
pub fn reach_down(complex: &Complex, thick: &str) -> Result<BTreeSet<String>> {
    complex.thick_level(thick)?;
    Ok(ThickDigraph::new(complex).reach_down(thick))
}

fn index_over(complex: &Complex, set: &BTreeSet<String>, side: Side) -> Result<i64> {
    let mut total = 6 - 6 * set.len() as i64;
    for j in set {
        total += complex.side_mu(j, side)?;
    }
    Ok(total)
}

/// `6 - 6|R| + sum of mu(J.up)` over the upward reach `R` of `thick`.
pub fn index_up(complex: &Complex, thick: &str) -> Result<i64> {
    index_over(complex, &reach_up(complex, thick)?, Side::Upper)
}

/// `6 - 6|R| + sum of mu(J.down)` over the downward reach `R` of `thick`.
pub fn index_down(complex: &Complex, thick: &str) -> Result<i64> {
    index_over(complex, &reach_down(complex, thick)?, Side::Lower)
}

/// Per-level row of a complexity report.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LevelIndices {
    pub id: String,
    pub mu_up: i64,
    pub mu_down: i64,
    pub index_up: i64,
    pub index_down: i64,
    pub index: i64,
}

/// Index data for every thick level, computed with a single digraph.
pub fn level_indices(complex: &Complex) -> Result<Vec<LevelIndices>> {
    let g = ThickDigraph::new(complex);
    complex
        .thick
        .iter()
        .map(|t| {
            let up = index_over(complex, &g.reach_up(&t.id), Side::Upper)?;
            let down = index_over(complex, &g.reach_down(&t.id), Side::Lower)?;
            Ok(LevelIndices {
                id: t.id.clone(),
                mu_up: complex.side_mu(&t.id, Side::Upper)?,
                mu_down: complex.side_mu(&t.id, Side::Lower)?,
                index_up: up,
                index_down: down,
                index: up + down,
            })
        })
        .collect()
}

/// Non-increasing sequence of the indices `I(H)`, compared lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ComplexityVector {
    pub terms: Vec<i64>,
}

impl ComplexityVector {
    pub fn new(mut terms: Vec<i64>) -> Self {
        terms.sort_unstable_by(|a, b| b.cmp(a));
        Self { terms }
    }

    pub fn sum(&self) -> i64 {
        self.terms.iter().sum()
    }
}

impl From<Vec<i64>> for ComplexityVector {
    fn from(v: Vec<i64>) -> Self {
        Self::new(v)
    }
}

impl PartialOrd for ComplexityVector {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ComplexityVector {
    fn cmp(&self, other: &Self) -> Ordering {
        compare(self, other)
    }
}

impl fmt::Display for ComplexityVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.terms.iter().map(i64::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Oriented complexity of a complex.
pub fn complexity(complex: &Complex) -> Result<ComplexityVector> {
    if complex.thick.is_empty() {
        return Err(Error::UnknownId("no thick level".into()));
    }
    Ok(ComplexityVector::new(level_indices(complex)?.into_iter().map(|l| l.index).collect()))
}

/// Lexicographic order with the shorter vector padded by `-1`.
pub fn compare(a: &ComplexityVector, b: &ComplexityVector) -> Ordering {
    let n = a.terms.len().max(b.terms.len());
    let at = |v: &ComplexityVector, i: usize| v.terms.get(i).copied().unwrap_or(-1);
    (0..n).map(|i| at(a, i).cmp(&at(b, i))).find(|o| o.is_ne()).unwrap_or(Ordering::Equal)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn v(t: &[i64]) -> ComplexityVector {
        ComplexityVector::new(t.to_vec())
    }

    #[test]
    fn padded_comparison() {
        assert_eq!(compare(&v(&[6]), &v(&[6, 4])), Ordering::Less);
        assert_eq!(compare(&v(&[6, 2]), &v(&[6, 4, 2])), Ordering::Less);
        assert_eq!(compare(&v(&[24]), &v(&[24])), Ordering::Equal);
        assert_eq!(compare(&v(&[0]), &v(&[])), Ordering::Greater);
    }

    #[test]
    fn known_vectors() {
        assert_eq!(complexity(&fixtures::one_bridge_sphere()).unwrap(), v(&[8]));
        assert_eq!(complexity(&fixtures::spherical_untelescoping()).unwrap(), v(&[24]));
        assert_eq!(complexity(&fixtures::independent_pair()).unwrap(), v(&[12, 8]));
    }

    #[test]
    fn chain_upper_index() {
        let c = fixtures::chain(2);
        assert_eq!(c.side_mu("H0", Side::Upper).unwrap(), 6);
        assert_eq!(c.side_mu("H1", Side::Upper).unwrap(), 6);
        assert_eq!(index_up(&c, "H0").unwrap(), 6);
    }

    #[test]
    fn single_level_index_is_mu() {
        let c = fixtures::heegaard(2);
        assert_eq!(index_up(&c, "H").unwrap(), 12);
        assert_eq!(index_down(&c, "H").unwrap(), 12);
    }
}
