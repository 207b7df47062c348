//! Right coset tables `SL(2,Z) = ⊔ Γ γ_i` with words in `S`, `T`, `T⁻¹`.

use std::collections::VecDeque;
use std::fmt;

use serde::Serialize;

use super::subgroup::{inv, mul, CongruenceSubgroup, M2, ID, S, T, T_INV};
use crate::error::{Error, Result};

pub const DEFAULT_COSET_BUDGET: usize = 256;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Letter {
    S,
    T,
    TInv,
}

impl Letter {
    pub const ALL: [Letter; 3] = [Letter::S, Letter::T, Letter::TInv];

    pub fn matrix(self) -> M2 {
        match self {
            Letter::S => S,
            Letter::T => T,
            Letter::TInv => T_INV,
        }
    }
}

/// A word in the generators together with its matrix value.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Word {
    pub letters: Vec<Letter>,
    pub matrix: M2,
}

impl Word {
    pub fn identity() -> Self {
        Word { letters: Vec::new(), matrix: ID }
    }

    pub fn from_letters(letters: Vec<Letter>) -> Self {
        let matrix = letters.iter().fold(ID, |acc, l| mul(&acc, &l.matrix()));
        Word { letters, matrix }
    }

    pub fn extend(&self, l: Letter) -> Self {
        let mut letters = self.letters.clone();
        letters.push(l);
        Word { letters, matrix: mul(&self.matrix, &l.matrix()) }
    }

    /// Parses `Id`, `S`, `ST`, `TST^-1`, `TST⁻¹`, ...
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() || s.eq_ignore_ascii_case("id") || s == "I" {
            return Ok(Word::identity());
        }
        let mut letters = Vec::new();
        let mut rest = s;
        while !rest.is_empty() {
            if let Some(r) = rest.strip_prefix('S') {
                letters.push(Letter::S);
                rest = r;
            } else if let Some(r) = rest.strip_prefix('T') {
                if let Some(r2) = r.strip_prefix("^-1").or_else(|| r.strip_prefix("⁻¹")) {
                    letters.push(Letter::TInv);
                    rest = r2;
                } else {
                    letters.push(Letter::T);
                    rest = r;
                }
            } else {
                return Err(Error::Parse(format!("bad word `{s}`")));
            }
        }
        Ok(Word::from_letters(letters))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return f.write_str("Id");
        }
        for l in &self.letters {
            f.write_str(match l {
                Letter::S => "S",
                Letter::T => "T",
                Letter::TInv => "T^-1",
            })?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CosetTable {
    pub subgroup: CongruenceSubgroup,
    pub index: usize,
    pub representatives: Vec<Word>,
}

fn same_coset(g: &CongruenceSubgroup, x: &M2, y: &M2) -> bool {
    g.contains_entries(mul(x, &inv(y)))
}

fn require_group(g: &CongruenceSubgroup) -> Result<CongruenceSubgroup> {
    let g = g.positive();
    if !g.contains_identity() {
        return Err(Error::NotASubgroup(g.name().to_string()));
    }
    Ok(g)
}

/// Breadth-first coset enumeration over right multiplication by `S`, `T`, `T⁻¹`.
/// Works in the determinant +1 part of `g`.
pub fn coset_enumerate(g: &CongruenceSubgroup, budget: usize) -> Result<CosetTable> {
    let g = require_group(g)?;
    let mut reps = vec![Word::identity()];
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        for l in Letter::ALL {
            let h = reps[i].extend(l);
            if reps.iter().any(|r| same_coset(&g, &h.matrix, &r.matrix)) {
                continue;
            }
            if reps.len() == budget {
                return Err(Error::IndexBudgetExceeded(budget));
            }
            queue.push_back(reps.len());
            reps.push(h);
        }
    }
    Ok(CosetTable { subgroup: g, index: reps.len(), representatives: reps })
}

impl CosetTable {
    /// A table from explicitly given representative words, validated.
    pub fn from_words(g: &CongruenceSubgroup, words: &[&str]) -> Result<Self> {
        let g = require_group(g)?;
        let reps = words.iter().map(|w| Word::parse(w)).collect::<Result<Vec<_>>>()?;
        let t = CosetTable { subgroup: g, index: reps.len(), representatives: reps };
        t.validate()?;
        Ok(t)
    }

    /// Index of the coset containing `x`, if represented.
    pub fn coset_of(&self, x: &M2) -> Option<usize> {
        self.representatives.iter().position(|r| same_coset(&self.subgroup, x, &r.matrix))
    }

    /// Checks pairwise distinctness and closure under the generators.
    pub fn validate(&self) -> Result<()> {
        let reps = &self.representatives;
        for i in 0..reps.len() {
            for j in 0..i {
                if same_coset(&self.subgroup, &reps[i].matrix, &reps[j].matrix) {
                    return Err(Error::InvalidCosetTable(format!("{} and {} share a coset", reps[j], reps[i])));
                }
            }
            for l in Letter::ALL {
                if self.coset_of(&reps[i].extend(l).matrix).is_none() {
                    return Err(Error::InvalidCosetTable(format!("{} is not covered", reps[i].extend(l))));
                }
            }
        }
        Ok(())
    }

    /// The permutation of cosets induced by right multiplication by `x`.
    pub fn permutation(&self, x: &M2) -> Vec<usize> {
        self.representatives
            .iter()
            .map(|r| self.coset_of(&mul(&r.matrix, x)).expect("complete table"))
            .collect()
    }

    pub fn matrices(&self) -> Vec<M2> {
        self.representatives.iter().map(|w| w.matrix).collect()
    }
}

/// `[sup : sub]` computed from the table of `sub` as the number of its
/// representatives lying in `sup`; checks that the table's cosets are uniform.
pub fn relative_index(sub: &CosetTable, sup: &CongruenceSubgroup) -> Result<usize> {
    let sup = sup.positive();
    let inside: Vec<&Word> = sub.representatives.iter().filter(|w| sup.contains_entries(w.matrix)).collect();
    if inside.is_empty() || sub.index % inside.len() != 0 {
        return Err(Error::InvalidCosetTable(format!("{} is not contained in {}", sub.subgroup, sup)));
    }
    Ok(inside.len())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn named(n: &str) -> CongruenceSubgroup {
        CongruenceSubgroup::named(n).unwrap()
    }

    #[test]
    fn words_round_trip() {
        for w in ["Id", "S", "ST", "TST^-1", "T^-1T^-1S"] {
            assert_eq!(Word::parse(w).unwrap().to_string(), w);
        }
        assert_eq!(Word::parse("TST⁻¹").unwrap(), Word::parse("TST^-1").unwrap());
        assert!(Word::parse("SX").is_err());
    }

    #[test]
    fn small_indices() {
        assert_eq!(coset_enumerate(&named("SL(2,Z)"), 256).unwrap().index, 1);
        let t = coset_enumerate(&named("Gamma0(2)+"), 256).unwrap();
        assert_eq!(t.index, 3);
        let words: Vec<String> = t.representatives.iter().map(|w| w.to_string()).collect();
        assert_eq!(words, ["Id", "S", "ST"]);
        assert_eq!(coset_enumerate(&named("Gamma(2)+"), 256).unwrap().index, 6);
        assert_eq!(coset_enumerate(&named("Gamma(2)Y+"), 256).unwrap().index, 3);
    }

    #[test]
    fn listed_representatives_validate() {
        let t = CosetTable::from_words(&named("Gamma(2)+"), &["Id", "S", "ST", "T", "TS", "TST^-1"]).unwrap();
        assert_eq!(t.index, 6);
        assert!(CosetTable::from_words(&named("Gamma(2)+"), &["Id", "S", "T^2"]).is_err());
        assert!(CosetTable::from_words(&named("Gamma(2)+"), &["Id", "S"]).is_err());
    }

    #[test]
    fn budget_and_cosets() {
        assert!(matches!(coset_enumerate(&named("Gamma(3)+"), 5), Err(Error::IndexBudgetExceeded(5))));
        assert!(matches!(coset_enumerate(&named("Gamma0_2(3)"), 256), Err(Error::NotASubgroup(_))));
    }

    #[test]
    fn relative_index_of_gamma2() {
        let t = coset_enumerate(&named("Gamma(2)+"), 256).unwrap();
        assert_eq!(relative_index(&t, &named("Gamma0(2)")).unwrap(), 2);
    }
}
