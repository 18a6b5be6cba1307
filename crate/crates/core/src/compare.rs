//! Automaton verdicts checked against the oracle, word by word.

use std::fmt;

use crate::oracle::GroupSpec;
use crate::search::{SearchBudget, Searcher, Verdict};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WordCheck {
    pub word: Vec<String>,
    pub verdict: Verdict,
    pub expected: bool,
}

impl WordCheck {
    pub fn matches(&self) -> bool {
        matches!(
            (self.verdict, self.expected),
            (Verdict::Accepted, true) | (Verdict::Rejected, false)
        )
    }
}

/// Runs the automaton and the oracle on one word. A letter the automaton
/// does not know makes the word rejected.
pub fn check_word(
    m: &Searcher,
    spec: &GroupSpec,
    word: &[String],
    budget: &SearchBudget,
) -> WordCheck {
    let verdict = match m.automaton().word(word) {
        Ok(w) => m.accepts(&w, budget),
        Err(_) => Verdict::Rejected,
    };
    WordCheck {
        word: word.to_vec(),
        verdict,
        expected: spec.is_trivial(word),
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Summary {
    pub checked: usize,
    pub matched: usize,
    pub mismatched: usize,
    pub budget_exhausted: usize,
}

impl Summary {
    pub fn add(&mut self, c: &WordCheck) {
        self.checked += 1;
        if c.verdict == Verdict::BudgetExhausted {
            self.budget_exhausted += 1;
        } else if c.matches() {
            self.matched += 1;
        } else {
            self.mismatched += 1;
        }
    }

    pub fn is_clean(&self) -> bool {
        self.mismatched == 0 && self.budget_exhausted == 0
    }
}

impl fmt::Display for Summary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "checked: {}, matched: {}, mismatched: {}, budget-exhausted: {}",
            self.checked, self.matched, self.mismatched, self.budget_exhausted
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::z_word_problem_automaton;

    #[test]
    fn summary_counts() {
        let z = z_word_problem_automaton();
        let m = Searcher::new(&z, Default::default());
        let spec = GroupSpec::integers("t", "T");
        let mut s = Summary::default();
        for w in [vec![], vec!["t".to_string()]] {
            s.add(&check_word(&m, &spec, &w, &SearchBudget::default()));
        }
        assert_eq!((s.checked, s.matched), (2, 2));
        assert!(s.is_clean());
    }
}
