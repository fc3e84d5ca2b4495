use super::model::{full_mask, Elem, Mask};
use super::ClassicalError;

/// Largest universe for which an explicit table over the powerset is kept.
pub const MAX_TABLE_UNIVERSE: usize = 16;

/// A universal choice function Φ with Φ(X) ∈ X for nonempty X and
/// Φ(∅) = Φ(𝒰).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ChoiceFunction {
    /// Least element in universe order.
    Min,
    /// `table[mask]` for every subset mask.
    Table(Vec<Elem>),
}

impl ChoiceFunction {
    pub fn choose(&self, x: Mask, n: usize) -> Elem {
        match self {
            ChoiceFunction::Min => {
                let x = if x == 0 { full_mask(n) } else { x };
                x.trailing_zeros() as Elem
            }
            ChoiceFunction::Table(t) => t[x as usize],
        }
    }

    /// Check the table against a universe of size `n`.
    pub fn validate(&self, n: usize) -> Result<(), ClassicalError> {
        let ChoiceFunction::Table(t) = self else { return Ok(()) };
        if n > MAX_TABLE_UNIVERSE || t.len() != 1 << n {
            return Err(ClassicalError::BadChoice(format!("table for a universe of {n} needs {} entries", 1u64 << n)));
        }
        for (x, &e) in t.iter().enumerate().skip(1) {
            if (x >> e) & 1 != 1 {
                return Err(ClassicalError::BadChoice(format!("choice {e} outside subset {x:#b}")));
            }
        }
        if t[0] != t[(1 << n) - 1] {
            return Err(ClassicalError::BadChoice("the empty set and the universe must share a choice".into()));
        }
        Ok(())
    }

    /// Explicit table equal to this function on a universe of size `n`.
    pub fn to_table(&self, n: usize) -> Vec<Elem> {
        (0..1u64 << n).map(|x| self.choose(x, n)).collect()
    }
}

/// Number of choice functions on `n` elements: the product of |X| over
/// nonempty subsets (the empty set follows the universe).
pub fn choice_function_count(n: usize) -> u64 {
    (1..1u64 << n).map(|x| x.count_ones() as u64).product()
}

/// Every admissible choice function on `n` elements, in a fixed order.
pub fn all_choice_functions(n: usize) -> impl Iterator<Item = ChoiceFunction> {
    assert!(n <= 5, "exhaustive enumeration is limited to five elements");
    let subsets: Vec<u64> = (1..1u64 << n).collect();
    let total = choice_function_count(n);
    (0..total).map(move |mut idx| {
        let mut table = vec![0; 1 << n];
        for &x in &subsets {
            let k = x.count_ones() as u64;
            let pick = (idx % k) as usize;
            idx /= k;
            table[x as usize] = (0..n).filter(|i| x >> i & 1 == 1).nth(pick).expect("pick < |X|");
        }
        table[0] = table[(1 << n) - 1];
        ChoiceFunction::Table(table)
    })
}

/// Decode the `idx`-th choice function without enumerating the others.
pub fn choice_function_at(n: usize, idx: u64) -> ChoiceFunction {
    all_choice_functions(n).nth(idx as usize).expect("index in range")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts() {
        assert_eq!(choice_function_count(1), 1);
        assert_eq!(choice_function_count(3), 24);
        assert_eq!(choice_function_count(4), 20736);
        assert_eq!(all_choice_functions(3).count(), 24);
    }

    #[test]
    fn all_enumerated_are_valid_and_distinct() {
        let all: Vec<ChoiceFunction> = all_choice_functions(3).collect();
        for c in &all {
            c.validate(3).unwrap();
        }
        for i in 0..all.len() {
            for j in 0..i {
                assert_ne!(all[i], all[j]);
            }
        }
    }

    #[test]
    fn min_follows_asser() {
        let c = ChoiceFunction::Min;
        assert_eq!(c.choose(0, 3), c.choose(0b111, 3));
        assert_eq!(c.choose(0b110, 3), 1);
        c.validate(3).unwrap();
        ChoiceFunction::Table(c.to_table(3)).validate(3).unwrap();
    }

    #[test]
    fn invalid_tables() {
        assert!(ChoiceFunction::Table(vec![0, 1, 1, 0]).validate(2).is_err());
        assert!(ChoiceFunction::Table(vec![1, 0, 1, 0]).validate(2).is_err());
        assert!(ChoiceFunction::Table(vec![0, 0, 1, 0]).validate(2).is_ok());
    }
}
