use std::collections::BTreeMap;

use crate::syntax::{Signature, Symbol};

use super::ClassicalError;

/// Elements are indices into the universe.
pub type Elem = usize;

/// Subsets of a universe of at most 64 elements.
pub type Mask = u64;

pub const MAX_UNIVERSE: usize = 64;

pub fn full_mask(n: usize) -> Mask {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

pub fn mask_elems(m: Mask) -> impl Iterator<Item = Elem> {
    (0..64).filter(move |i| m >> i & 1 == 1)
}

/// Total interpretation of an n-ary symbol, indexed in mixed radix with
/// the first argument most significant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FuncTable {
    pub arity: usize,
    pub table: Vec<Elem>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PredTable {
    pub arity: usize,
    pub table: Vec<bool>,
}

pub fn tuple_index(args: &[Elem], n: usize) -> usize {
    args.iter().fold(0, |acc, a| acc * n + a)
}

/// A finite first-order structure. Equality is identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteModel {
    names: Vec<String>,
    functions: BTreeMap<Symbol, FuncTable>,
    predicates: BTreeMap<Symbol, PredTable>,
}

impl FiniteModel {
    pub fn new(names: Vec<String>) -> Result<Self, ClassicalError> {
        if names.is_empty() {
            return Err(ClassicalError::EmptyUniverse);
        }
        if names.len() > MAX_UNIVERSE {
            return Err(ClassicalError::UniverseTooLarge(names.len()));
        }
        for (i, a) in names.iter().enumerate() {
            if names[..i].contains(a) {
                return Err(ClassicalError::DuplicateElement(a.clone()));
            }
        }
        Ok(FiniteModel { names, functions: BTreeMap::new(), predicates: BTreeMap::new() })
    }

    /// Universe `0..n` named by numerals, with `<` and `<=` the natural order.
    pub fn naturals(n: usize) -> Self {
        let mut m = FiniteModel::new((0..n).map(|i| i.to_string()).collect()).expect("valid size");
        m.set_predicate_fn("<", 2, |a| a[0] < a[1]);
        m.set_predicate_fn("<=", 2, |a| a[0] <= a[1]);
        m
    }

    pub fn size(&self) -> usize {
        self.names.len()
    }

    pub fn full(&self) -> Mask {
        full_mask(self.size())
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, e: Elem) -> &str {
        &self.names[e]
    }

    pub fn element(&self, name: &str) -> Option<Elem> {
        self.names.iter().position(|n| n == name)
    }

    pub fn set_function(&mut self, name: &str, arity: usize, table: Vec<Elem>) -> Result<(), ClassicalError> {
        let n = self.size();
        if table.len() != n.pow(arity as u32) || table.iter().any(|&e| e >= n) {
            return Err(ClassicalError::BadTable(name.to_string()));
        }
        self.functions.insert(Symbol::new(name), FuncTable { arity, table });
        Ok(())
    }

    pub fn set_constant(&mut self, name: &str, e: Elem) -> Result<(), ClassicalError> {
        self.set_function(name, 0, vec![e])
    }

    pub fn set_predicate(&mut self, name: &str, arity: usize, table: Vec<bool>) -> Result<(), ClassicalError> {
        if table.len() != self.size().pow(arity as u32) {
            return Err(ClassicalError::BadTable(name.to_string()));
        }
        self.predicates.insert(Symbol::new(name), PredTable { arity, table });
        Ok(())
    }

    /// Fill a predicate table from a rule.
    pub fn set_predicate_fn(&mut self, name: &str, arity: usize, rule: impl Fn(&[Elem]) -> bool) {
        let n = self.size();
        let table = tuples(n, arity).map(|t| rule(&t)).collect();
        self.predicates.insert(Symbol::new(name), PredTable { arity, table });
    }

    pub fn set_function_fn(&mut self, name: &str, arity: usize, rule: impl Fn(&[Elem]) -> Elem) {
        let n = self.size();
        let table = tuples(n, arity).map(|t| rule(&t)).collect();
        self.functions.insert(Symbol::new(name), FuncTable { arity, table });
    }

    /// A unary predicate from a mask.
    pub fn set_unary(&mut self, name: &str, ext: Mask) {
        let n = self.size();
        let table = (0..n).map(|i| ext >> i & 1 == 1).collect();
        self.predicates.insert(Symbol::new(name), PredTable { arity: 1, table });
    }

    pub fn function(&self, name: &str) -> Option<&FuncTable> {
        self.functions.get(name)
    }

    pub fn predicate(&self, name: &str) -> Option<&PredTable> {
        self.predicates.get(name)
    }

    pub fn functions(&self) -> impl Iterator<Item = (&Symbol, &FuncTable)> {
        self.functions.iter()
    }

    pub fn predicates(&self) -> impl Iterator<Item = (&Symbol, &PredTable)> {
        self.predicates.iter()
    }

    pub fn apply(&self, name: &Symbol, args: &[Elem]) -> Result<Elem, ClassicalError> {
        if let Some(f) = self.functions.get(name) {
            if f.arity != args.len() {
                return Err(ClassicalError::Arity(name.to_string()));
            }
            return Ok(f.table[tuple_index(args, self.size())]);
        }
        // numerals name elements directly when not interpreted otherwise
        if args.is_empty() {
            if let Some(e) = self.element(name.as_str()) {
                return Ok(e);
            }
        }
        Err(ClassicalError::Uninterpreted(name.to_string()))
    }

    pub fn holds(&self, name: &Symbol, args: &[Elem]) -> Result<bool, ClassicalError> {
        let p = self.predicates.get(name).ok_or_else(|| ClassicalError::Uninterpreted(name.to_string()))?;
        if p.arity != args.len() {
            return Err(ClassicalError::Arity(name.to_string()));
        }
        Ok(p.table[tuple_index(args, self.size())])
    }

    /// Extension of a unary predicate.
    pub fn unary_mask(&self, name: &str) -> Option<Mask> {
        let p = self.predicates.get(name)?;
        (p.arity == 1).then(|| p.table.iter().enumerate().fold(0, |m, (i, &b)| m | (b as u64) << i))
    }

    pub fn signature(&self) -> Signature {
        let mut s = Signature::new();
        for (f, t) in &self.functions {
            s.add_function(f.as_str(), t.arity).expect("model tables are consistent");
        }
        for (p, t) in &self.predicates {
            s.add_predicate(p.as_str(), t.arity).expect("model tables are consistent");
        }
        s
    }
}

/// All argument tuples in table order.
pub fn tuples(n: usize, arity: usize) -> impl Iterator<Item = Vec<Elem>> {
    let total = n.pow(arity as u32);
    (0..total).map(move |mut idx| {
        let mut t = vec![0; arity];
        for slot in t.iter_mut().rev() {
            *slot = idx % n;
            idx /= n;
        }
        t
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tables_and_lookup() {
        let mut m = FiniteModel::new(vec!["a".into(), "b".into()]).unwrap();
        m.set_function("f", 1, vec![1, 0]).unwrap();
        m.set_predicate("R", 2, vec![false, true, false, false]).unwrap();
        assert_eq!(m.apply(&Symbol::new("f"), &[0]), Ok(1));
        assert_eq!(m.holds(&Symbol::new("R"), &[0, 1]), Ok(true));
        assert_eq!(m.holds(&Symbol::new("R"), &[1, 0]), Ok(false));
        assert!(m.set_function("g", 1, vec![0]).is_err());
        assert!(FiniteModel::new(vec![]).is_err());
    }

    #[test]
    fn naturals_order() {
        let m = FiniteModel::naturals(3);
        assert_eq!(m.holds(&Symbol::new("<"), &[0, 2]), Ok(true));
        assert_eq!(m.apply(&Symbol::new("2"), &[]), Ok(2));
    }
}
