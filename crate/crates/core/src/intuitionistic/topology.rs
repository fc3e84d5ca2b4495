use crate::classical::{full_mask, Mask};

use super::IntuitionisticError;

/// Points are `0..n`; opens are masks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteTopSpace {
    points: Vec<String>,
    opens: Vec<Mask>,
}

/// Largest space accepted; the opens family is kept as an explicit list.
pub const MAX_POINTS: usize = 16;

impl FiniteTopSpace {
    pub fn new(points: Vec<String>, mut opens: Vec<Mask>) -> Result<Self, IntuitionisticError> {
        let n = points.len();
        if n == 0 || n > MAX_POINTS {
            return Err(IntuitionisticError::SpaceSize(n));
        }
        let full = full_mask(n);
        opens.sort_unstable();
        opens.dedup();
        if let Some(o) = opens.iter().find(|o| **o & !full != 0) {
            return Err(IntuitionisticError::NotOpenFamily(format!("{o:#b} mentions a point outside the space")));
        }
        if opens.binary_search(&0).is_err() {
            return Err(IntuitionisticError::NotOpenFamily("the empty set is missing".into()));
        }
        if opens.binary_search(&full).is_err() {
            return Err(IntuitionisticError::NotOpenFamily("the whole space is missing".into()));
        }
        for &a in &opens {
            for &b in &opens {
                if opens.binary_search(&(a | b)).is_err() || opens.binary_search(&(a & b)).is_err() {
                    return Err(IntuitionisticError::NotOpenFamily(format!(
                        "{} and {} are not closed under union and intersection",
                        show(&points, a),
                        show(&points, b)
                    )));
                }
            }
        }
        Ok(FiniteTopSpace { points, opens })
    }

    /// Points named `0..n`.
    pub fn numbered(n: usize, opens: Vec<Mask>) -> Result<Self, IntuitionisticError> {
        Self::new((0..n).map(|i| i.to_string()).collect(), opens)
    }

    /// The up-set topology of a preorder: `le[i][j]` when `i ≤ j`.
    pub fn upsets(le: &[Vec<bool>]) -> Self {
        let n = le.len();
        let opens = (0..=full_mask(n))
            .filter(|&x| (0..n).all(|i| x >> i & 1 == 0 || (0..n).all(|j| !le[i][j] || x >> j & 1 == 1)))
            .collect();
        Self::numbered(n, opens).expect("up-sets form a topology")
    }

    pub fn size(&self) -> usize {
        self.points.len()
    }

    pub fn points(&self) -> &[String] {
        &self.points
    }

    pub fn opens(&self) -> &[Mask] {
        &self.opens
    }

    pub fn full(&self) -> Mask {
        full_mask(self.size())
    }

    pub fn is_open(&self, x: Mask) -> bool {
        self.opens.binary_search(&x).is_ok()
    }

    pub fn interior(&self, x: Mask) -> Mask {
        self.opens.iter().filter(|o| **o & !x == 0).fold(0, |acc, o| acc | o)
    }

    pub fn closure(&self, x: Mask) -> Mask {
        self.full() & !self.interior(self.full() & !x)
    }

    pub fn complement(&self, x: Mask) -> Mask {
        self.full() & !x
    }

    /// Pseudo-complement: interior of the complement.
    pub fn neg(&self, x: Mask) -> Mask {
        self.interior(self.complement(x))
    }

    /// Largest open `o` with `o ∩ x ⊆ y`.
    pub fn implies(&self, x: Mask, y: Mask) -> Mask {
        self.interior(self.complement(x) | y)
    }

    pub fn describe(&self, x: Mask) -> String {
        show(&self.points, x)
    }
}

fn show(points: &[String], x: Mask) -> String {
    let names: Vec<&str> = (0..points.len()).filter(|i| x >> i & 1 == 1).map(|i| points[i].as_str()).collect();
    format!("{{{}}}", names.join(","))
}

/// `(X, int(cl(X)))`: an open and its double negation.
pub fn double_negation_gap(sp: &FiniteTopSpace, x: Mask) -> (Mask, Mask) {
    (x, sp.interior(sp.closure(x)))
}

/// Every topology on `n` labelled points (n ≤ 4).
pub fn all_spaces(n: usize) -> Vec<FiniteTopSpace> {
    assert!((1..=4).contains(&n), "exhaustive topology enumeration covers 1 to 4 points");
    let full = full_mask(n);
    let middle: Vec<Mask> = (1..full).collect();
    let mut out = Vec::new();
    for pick in 0u64..1 << middle.len() {
        let mut opens = vec![0, full];
        opens.extend(middle.iter().enumerate().filter(|(i, _)| pick >> i & 1 == 1).map(|(_, m)| *m));
        if let Ok(sp) = FiniteTopSpace::numbered(n, opens) {
            out.push(sp);
        }
    }
    out
}

/// The three-point space `{a,b,c}` with opens `∅, {a}, U`.
pub fn three_point_witness() -> FiniteTopSpace {
    FiniteTopSpace::new(vec!["a".into(), "b".into(), "c".into()], vec![0, 0b001, 0b111]).expect("valid topology")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn topology_counts() {
        let counts: Vec<usize> = (1..=4).map(|n| all_spaces(n).len()).collect();
        assert_eq!(counts, vec![1, 4, 29, 355]);
    }

    #[test]
    fn witness_gap() {
        let sp = three_point_witness();
        assert_eq!(sp.neg(0b001), 0);
        assert_eq!(double_negation_gap(&sp, 0b001), (0b001, 0b111));
        assert_eq!(double_negation_gap(&sp, 0), (0, 0));
        assert_eq!(sp.neg(sp.full()), 0);
    }

    #[test]
    fn rejects_non_topologies() {
        assert!(FiniteTopSpace::numbered(2, vec![0b01, 0b11]).is_err());
        assert!(FiniteTopSpace::numbered(3, vec![0, 0b001, 0b010, 0b111]).is_err());
    }

    #[test]
    fn upset_topology() {
        let le = vec![vec![true, true], vec![false, true]];
        let sp = FiniteTopSpace::upsets(&le);
        assert_eq!(sp.opens(), &[0, 0b10, 0b11]);
    }
}
